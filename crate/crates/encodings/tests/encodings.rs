use std::path::PathBuf;

use encodings::*;
use pauli_core::{
    eig_sym, max_abs_diff, read_pauli_file, restrict_to_subspace, to_matrix, Complex64,
    DenseMatrix, PauliString, PauliSum,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shell_basis::{
    build_fermionic_hamiltonian, build_sector_basis, fit_two_particle_sector, load_interaction,
    matrix_in_basis, FermHamiltonian, ModelSpace, SectorBasis,
};

fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
}

fn space(name: &str) -> ModelSpace {
    ModelSpace::load(data_path(&format!("model_spaces/{name}.space"))).unwrap()
}

fn shipped(nucleus: &str, sector: &str) -> EncodedHamiltonian {
    let space = space(if nucleus == "ar38" {
        "ar38_sd"
    } else {
        "li6_p"
    });
    let map = load_encoding_map(
        &space,
        data_path(&format!("mappings/{nucleus}_{sector}.map")),
    )
    .unwrap();
    let pauli = read_pauli_file(data_path(&format!(
        "hamiltonians/{nucleus}_{sector}_gc.pauli"
    )))
    .unwrap();
    EncodedHamiltonian::new(pauli, map, format!("{nucleus} {sector}")).unwrap()
}

const SHIPPED_GC: [(&str, &str); 7] = [
    ("ar38", "0p"),
    ("ar38", "1p"),
    ("ar38", "2p"),
    ("li6", "0p"),
    ("li6", "1p"),
    ("li6", "2p"),
    ("li6", "3p"),
];

fn five_orbital_map() -> EncodingMap {
    load_encoding_map(
        &space("five_orbital"),
        data_path("mappings/five_orbital_example.map"),
    )
    .unwrap()
}

fn single_element(m: &DenseMatrix, r: usize, c: usize) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(m.nrows(), m.ncols());
    out[(r, c)] = m[(r, c)];
    out
}

fn product(factors: &[PauliSum]) -> PauliSum {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.try_mul(f).unwrap())
}

#[test]
fn appendix_single_excitation_without_sign() {
    let map = five_orbital_map();
    let mut h = FermHamiltonian::new(5);
    h.add_one_body(0, 1, 1.0);
    let m = matrix_in_basis(&h, &map.basis);
    assert_eq!(m[(2, 3)], Complex64::new(1.0, 0.0));
    let encoded = encode_matrix(&single_element(&m, 2, 3), &map).unwrap();
    let expected = product(&[
        PauliSum::projector_zero(3, 2),
        PauliSum::projector_one(3, 1),
        PauliSum::sigma_minus(3, 0),
    ]);
    assert_eq!(encoded, expected);
}

#[test]
fn appendix_single_excitation_with_sign() {
    let map = five_orbital_map();
    let mut h = FermHamiltonian::new(5);
    h.add_one_body(1, 4, 1.0);
    let m = matrix_in_basis(&h, &map.basis);
    assert_eq!(m[(1, 7)], Complex64::new(-1.0, 0.0));
    let encoded = encode_matrix(&single_element(&m, 1, 7), &map).unwrap();
    let expected = product(&[
        PauliSum::sigma_plus(3, 2),
        PauliSum::sigma_plus(3, 1),
        PauliSum::projector_one(3, 0),
    ])
    .scale(-1.0);
    assert_eq!(encoded, expected);
}

#[test]
fn appendix_double_excitation() {
    let map = five_orbital_map();
    let mut h = FermHamiltonian::new(5);
    h.add_two_body(2, 3, 4, 1, 1.0);
    let m = matrix_in_basis(&h, &map.basis);
    assert_eq!(m[(2, 4)], Complex64::new(1.0, 0.0));
    let encoded = encode_matrix(&single_element(&m, 2, 4), &map).unwrap();
    let expected = product(&[
        PauliSum::sigma_plus(3, 2),
        PauliSum::projector_one(3, 1),
        PauliSum::sigma_minus(3, 0),
    ]);
    assert_eq!(encoded, expected);
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(n, n);
    for r in 0..n {
        m[(r, r)] = Complex64::new(rng.random_range(-10.0..10.0), 0.0);
        for c in 0..r {
            let x = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(r, c)] = x;
            m[(c, r)] = x.conj();
        }
    }
    m
}

fn prefix_map(nb: usize) -> EncodingMap {
    let full = build_sector_basis(&space("five_orbital"), 3, 3).unwrap();
    let basis =
        SectorBasis::from_states(full.model_space.clone(), 3, 3, full.states()[..nb].to_vec())
            .unwrap();
    build_encoding_map(basis, Scheme::Gray, None).unwrap()
}

#[test]
fn encode_decode_round_trip_on_random_hermitian_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (nb, q) in [(2, 1), (3, 2), (5, 3), (8, 3), (10, 4)] {
        let map = prefix_map(nb);
        assert_eq!(map.qubit_count(), q);
        for _ in 0..100 {
            let m = random_hermitian(&mut rng, nb);
            let pauli = encode_matrix(&m, &map).unwrap();
            assert!(pauli.max_imaginary() < 1e-10);
            let e = EncodedHamiltonian::new(pauli, map.clone(), "random").unwrap();
            let back = decode_gc_with_tolerance(&e, 1e-12).unwrap();
            assert!(max_abs_diff(&back, &m) < 1e-10, "Nb={nb}");
        }
    }
}

#[test]
fn jw_restriction_equals_sector_matrix() {
    for (space_name, file, particles) in [
        ("ar38_sd", "synthetic_sd.int", 2),
        ("ar38_sd", "synthetic_sd.int", 3),
        ("li6_p", "synthetic_p.int", 2),
    ] {
        let space = space(space_name);
        let data = load_interaction(data_path(&format!("interactions/{file}"))).unwrap();
        let h = build_fermionic_hamiltonian(&data, &space).unwrap();
        let jw = jw_transform(&h).unwrap();
        assert!(jw.is_hermitian());
        let mut sectors = 0;
        for tm in -12..=12 {
            let Ok(basis) = build_sector_basis(&space, particles, tm) else {
                continue;
            };
            let restricted = restrict_to_subspace(&jw, basis.states()).unwrap();
            let direct = matrix_in_basis(&h, &basis);
            assert!(
                max_abs_diff(&restricted, &direct) < 1e-9,
                "{space_name} 2M={tm}"
            );
            sectors += 1;
        }
        assert!(sectors >= 3);
    }
}

#[test]
fn jw_and_gc_spectra_agree_on_synthetic_hamiltonian() {
    let space = space("ar38_sd");
    let data = load_interaction(data_path("interactions/synthetic_sd.int")).unwrap();
    let h = build_fermionic_hamiltonian(&data, &space).unwrap();
    for tm in [0, 2, 4] {
        let basis = build_sector_basis(&space, 2, tm).unwrap();
        let jw = jw_encode(&h, basis.clone()).unwrap();
        let jw_levels = eig_sym(&restrict_to_subspace(&jw.pauli, basis.states()).unwrap()).unwrap();
        let map = build_encoding_map(basis, Scheme::Gray, None).unwrap();
        let gc = gc_transform(&h, &map).unwrap();
        assert!(gc.pauli.max_imaginary() < 1e-10);
        let gc_levels = eig_sym(&decode_gc(&gc).unwrap()).unwrap();
        for (a, b) in jw_levels.iter().zip(&gc_levels) {
            assert!((a - b).abs() < 1e-9, "2M={tm}: {a} vs {b}");
        }
    }
}

#[test]
fn gc_transform_rejects_one_hot_map() {
    let basis = build_sector_basis(&space("ar38_sd"), 2, 4).unwrap();
    let map = build_encoding_map(basis, Scheme::OneHot, None).unwrap();
    let h = FermHamiltonian::new(6);
    assert!(matches!(
        gc_transform(&h, &map),
        Err(EncodingError::SchemeMismatch { .. })
    ));
}

#[test]
fn shipped_gc_tables_use_minimal_qubit_counts() {
    let expected = [3, 2, 1, 4, 3, 2, 1];
    for ((nucleus, sector), q) in SHIPPED_GC.iter().zip(expected) {
        let e = shipped(nucleus, sector);
        assert_eq!(e.qubit_count(), q, "{nucleus} {sector}");
        assert_eq!(gray_qubits(e.map.len()), q);
    }
}

#[test]
fn shipped_gc_tables_reencode_to_themselves() {
    for (nucleus, sector) in SHIPPED_GC {
        let e = shipped(nucleus, sector);
        let m = decode_gc(&e).unwrap();
        let h = fit_two_particle_sector(&e.map.basis, &m).unwrap();
        let again = gc_transform(&h, &e.map).unwrap();
        let d = again.pauli.max_distance(&e.pauli);
        assert!(d < 1e-6, "{nucleus} {sector}: coefficient distance {d:.2e}");
    }
}

#[test]
fn argon_two_plus_coefficients() {
    let e = shipped("ar38", "2p");
    let h = fit_two_particle_sector(&e.map.basis, &decode_gc(&e).unwrap()).unwrap();
    let again = gc_transform(&h, &e.map).unwrap();
    let expected = [("I", -150.396728), ("X", 0.279234), ("Z", 0.638015)];
    assert_eq!(again.pauli.len(), 3);
    for (word, x) in expected {
        let c = again
            .pauli
            .coefficient(&word.parse::<PauliString>().unwrap());
        assert!((c.re - x).abs() < 1e-6 && c.im == 0.0, "{word}: {c}");
    }
}

#[test]
fn decoded_golden_spectra() {
    let li = decode_gc(&shipped("li6", "3p")).unwrap();
    assert_eq!(li.shape(), (1, 1));
    assert!((li[(0, 0)].re - -5.009).abs() < 1e-3);
    let ar = eig_sym(&decode_gc(&shipped("ar38", "0p")).unwrap()).unwrap();
    for target in [-152.677, -149.225] {
        assert!(
            ar.iter().any(|e| (e - target).abs() < 2e-3),
            "{target} missing from {ar:?}"
        );
    }
}

#[test]
fn shipped_padding_is_negligible() {
    for (nucleus, sector) in SHIPPED_GC {
        let e = shipped(nucleus, sector);
        let full = to_matrix(&e.pauli).unwrap();
        let codes = e.map.codewords();
        let mut padding: f64 = 0.0;
        for r in 0..full.nrows() {
            for c in 0..full.ncols() {
                if !codes.contains(&(r as u64)) || !codes.contains(&(c as u64)) {
                    padding = padding.max(full[(r, c)].norm());
                }
            }
        }
        assert!(
            padding < DECODE_TOLERANCE,
            "{nucleus} {sector}: padding {padding:.2e}"
        );
    }
}

#[test]
fn corrupted_table_is_detected() {
    let mut e = shipped("ar38", "1p");
    e.pauli.add_term("XI".parse::<PauliString>().unwrap(), 0.01);
    assert!(matches!(decode_gc(&e), Err(EncodingError::Leakage { .. })));
}

#[test]
fn printed_lithium_zero_plus_codes_form_a_valid_path() {
    let map = load_encoding_map(&space("li6_p"), data_path("mappings/li6_0p.map")).unwrap();
    let printed = [
        0b0000, 0b0001, 0b0011, 0b0010, 0b0110, 0b0100, 0b1100, 0b1000, 0b1001, 0b1101,
    ];
    let alt = build_encoding_map(map.basis.clone(), Scheme::Gray, Some(&printed)).unwrap();
    assert_eq!(alt.qubit_count(), 4);
    assert_ne!(alt.codewords(), map.codewords());
}

fn jw_gc_sector_distance(sector: &str) -> f64 {
    let gc = shipped("ar38", sector);
    let jw = read_pauli_file(data_path(&format!("hamiltonians/ar38_{sector}_jw.pauli"))).unwrap();
    let restricted = restrict_to_subspace(&jw, gc.map.basis.states()).unwrap();
    max_abs_diff(&restricted, &decode_gc(&gc).unwrap())
}

#[test]
fn argon_jw_and_gc_tables_agree_on_two_plus() {
    let d = jw_gc_sector_distance("2p");
    assert!(d < 2e-5, "distance {d:.2e}");
}

#[test]
fn argon_jw_and_gc_tables_agree_on_one_plus() {
    let d = jw_gc_sector_distance("1p");
    assert!(d < 2e-5, "distance {d:.2e}");
}

#[test]
#[ignore = "shipped JW 0+ table has couplings absent from the GC table"]
fn argon_jw_and_gc_tables_agree_on_zero_plus() {
    let d = jw_gc_sector_distance("0p");
    assert!(d < 2e-5, "distance {d:.2e}");
}
