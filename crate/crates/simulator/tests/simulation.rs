use std::path::PathBuf;

use pauli_core::{
    eigh, max_abs_diff, read_pauli_file, to_matrix, Complex64, DenseMatrix, PauliString, PauliSum,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simulator::*;

fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
}

fn random_circuit(rng: &mut ChaCha8Rng, qubits: usize, gates: usize) -> (Circuit, Vec<f64>) {
    let mut c = Circuit::new(qubits);
    let mut params = Vec::new();
    for _ in 0..gates {
        let mut qs: Vec<usize> = (0..qubits).collect();
        for i in (1..qs.len()).rev() {
            qs.swap(i, rng.random_range(0..=i));
        }
        match rng.random_range(0..10) {
            0 => c.x(qs[0]),
            1 => c.h(qs[0]),
            2 => c.s(qs[0]),
            3 => c.sdg(qs[0]),
            4 | 5 => {
                let p = c.new_parameter();
                params.push(rng.random_range(-3.0..3.0));
                if rng.random::<bool>() {
                    c.ry(qs[0], Angle::param(p))
                } else {
                    c.rz(qs[0], Angle::param(p))
                }
            }
            6 => c.cx(qs[1], qs[0]),
            7 => c.cry(qs[1], qs[0], Angle::Fixed(rng.random_range(-3.0..3.0))),
            8 => c.mcry(&qs[1..3], qs[0], Angle::Fixed(rng.random_range(-3.0..3.0))),
            _ => c.mcx(&qs[1..3], qs[0]),
        };
    }
    (c, params)
}

fn random_state(rng: &mut ChaCha8Rng, qubits: usize) -> Statevector {
    let mut amps: Vec<Complex64> = (0..1 << qubits)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    Statevector::from_amplitudes(amps).unwrap()
}

#[test]
fn norm_drift_over_long_circuit() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (c, params) = random_circuit(&mut rng, 5, 1000);
    let mut psi = random_state(&mut rng, 5);
    for g in c.gates() {
        psi.apply_gate(g, g.angle.map_or(0.0, |a| a.resolve(&params)));
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn circuit_action_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let (c, params) = random_circuit(&mut rng, 4, 40);
        let (a, b) = (random_state(&mut rng, 4), random_state(&mut rng, 4));
        let (alpha, beta) = (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let combo: Vec<Complex64> = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        let ua = apply(&c, &a, &params).unwrap();
        let ub = apply(&c, &b, &params).unwrap();
        let u = circuit_unitary(&c, &params).unwrap();
        for r in 0..16 {
            let direct: Complex64 = (0..16).map(|k| u[(r, k)] * combo[k]).sum();
            let split = alpha * ua.amplitude(r as u64) + beta * ub.amplitude(r as u64);
            assert!((direct - split).norm() < 1e-12);
        }
    }
}

#[test]
fn folding_preserves_the_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for qubits in [1, 3, 6] {
        let (c, params) = random_circuit(&mut rng, qubits.max(3), 30);
        let u = circuit_unitary(&c, &params).unwrap();
        for scale in 1..=5 {
            let f = c.fold(scale);
            if scale % 2 == 1 {
                assert_eq!(f.len(), scale * c.len());
            }
            let uf = circuit_unitary(&f, &params).unwrap();
            assert!(max_abs_diff(&u, &uf) < 1e-10, "scale {scale}");
        }
    }
}

#[test]
fn ground_state_energy_of_argon_two_plus() {
    let h = read_pauli_file(data_path("hamiltonians/ar38_2p_gc.pauli")).unwrap();
    let (values, vectors) = eigh(&to_matrix(&h).unwrap()).unwrap();
    let amps: Vec<Complex64> = vectors.column(0).iter().copied().collect();
    let psi = Statevector::from_amplitudes(amps).unwrap();
    let e = expectation_exact(&psi, &h).unwrap();
    assert!((e - values[0]).abs() < 1e-10);
    assert!((e - -151.0932).abs() < 1e-4);
    assert!(psi.expectation_complex(&h).unwrap().im.abs() < 1e-10);
}

#[test]
fn identity_expectation_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..10 {
        let psi = random_state(&mut rng, 3);
        let e = expectation_exact(&psi, &PauliSum::identity(3, 1.0)).unwrap();
        assert!((e - 1.0).abs() < 1e-12);
    }
}

fn plus_state() -> Statevector {
    let mut c = Circuit::new(1);
    c.h(0);
    run(&c, &[]).unwrap()
}

#[test]
fn z_on_plus_state_averages_to_zero() {
    let z = PauliSum::from_term("Z".parse::<PauliString>().unwrap(), 1.0);
    let e = expectation_shots(&plus_state(), &z, 100_000, 77).unwrap();
    assert!(e.value.abs() < 5.0 * e.stderr, "{e:?}");
    assert!((e.stderr - 1.0 / 100_000f64.sqrt()).abs() < 1e-4);
}

fn test_state_and_hamiltonian() -> (Statevector, PauliSum) {
    let mut c = Circuit::new(2);
    c.ry(0, Angle::Fixed(0.7))
        .ry(1, Angle::Fixed(-1.9))
        .cx(0, 1)
        .ry(1, Angle::Fixed(0.3));
    let h = read_pauli_file(data_path("hamiltonians/ar38_1p_gc.pauli")).unwrap();
    (run(&c, &[]).unwrap(), h)
}

#[test]
fn shot_error_scales_as_inverse_square_root() {
    let (psi, h) = test_state_and_hamiltonian();
    let exact = expectation_exact(&psi, &h).unwrap();
    let mean_error = |shots: u64| {
        (0..50)
            .map(|s| (expectation_shots(&psi, &h, shots, s).unwrap().value - exact).abs())
            .sum::<f64>()
            / 50.0
    };
    let (coarse, fine) = (mean_error(10_000), mean_error(1_000_000));
    assert!(coarse / fine > 4.0, "error ratio {}", coarse / fine);
}

#[test]
fn shot_estimates_are_unbiased() {
    let (psi, h) = test_state_and_hamiltonian();
    let exact = expectation_exact(&psi, &h).unwrap();
    let runs: Vec<Estimate> = (0..200)
        .map(|s| expectation_shots(&psi, &h, 1000, 1000 + s).unwrap())
        .collect();
    let mean = runs.iter().map(|e| e.value).sum::<f64>() / 200.0;
    let combined = (runs.iter().map(|e| e.stderr.powi(2)).sum::<f64>()).sqrt() / 200.0;
    assert!(
        (mean - exact).abs() < 3.0 * combined,
        "{mean} vs {exact} (stderr {combined})"
    );
}

#[test]
fn noiseless_trajectories_match_plain_sampling() {
    let (psi, h) = test_state_and_hamiltonian();
    let mut c = Circuit::new(2);
    c.ry(0, Angle::Fixed(0.7))
        .ry(1, Angle::Fixed(-1.9))
        .cx(0, 1)
        .ry(1, Angle::Fixed(0.3));
    let exact = expectation_exact(&psi, &h).unwrap();
    let noisy =
        noisy_expectation(&c, &[], &h, &NoiseModel::noiseless(), Shots::Exact, 3, 0).unwrap();
    assert!((noisy.value - exact).abs() < 1e-12);
    let sampled = noisy_expectation(
        &c,
        &[],
        &h,
        &NoiseModel::noiseless(),
        Shots::Finite(20_000),
        4,
        5,
    )
    .unwrap();
    let plain = expectation_shots(&psi, &h, 20_000, 5).unwrap();
    assert!((sampled.value - plain.value).abs() < 5.0 * plain.stderr.max(sampled.stderr));
}

/// Ry(θ) on |0⟩⟨0|, then the depolarizing channel, then symmetric readout
/// flips, evaluated with 2×2 density matrices.
fn density_matrix_oracle(theta: f64, p: f64, readout: f64) -> f64 {
    let pauli =
        |w: &str| to_matrix(&PauliSum::from_term(w.parse::<PauliString>().unwrap(), 1.0)).unwrap();
    let mut c = Circuit::new(1);
    c.ry(0, Angle::Fixed(theta));
    let u = circuit_unitary(&c, &[]).unwrap();
    let mut rho = DenseMatrix::zeros(2, 2);
    rho[(0, 0)] = Complex64::new(1.0, 0.0);
    let rho = &u * rho * u.adjoint();
    let mut out = rho.scale(1.0 - p);
    for w in ["X", "Y", "Z"] {
        let m = pauli(w);
        out += (&m * &rho * &m).scale(p / 3.0);
    }
    let p0 = (1.0 - readout) * out[(0, 0)].re + readout * out[(1, 1)].re;
    2.0 * p0 - 1.0
}

#[test]
fn depolarizing_channel_matches_density_matrix_oracle() {
    let mut c = Circuit::new(1);
    c.ry(0, Angle::Fixed(std::f64::consts::PI));
    let z = PauliSum::from_term("Z".parse::<PauliString>().unwrap(), 1.0);
    for (p, r) in [(0.05, 0.0), (0.2, 0.03), (0.6, 0.1)] {
        let want = density_matrix_oracle(std::f64::consts::PI, p, r);
        assert!((want - -(1.0 - 4.0 * p / 3.0) * (1.0 - 2.0 * r)).abs() < 1e-12);
        let noise = NoiseModel::new(p, 0.0, r).unwrap();
        let got = noisy_expectation(&c, &[], &z, &noise, Shots::Exact, 20_000, 42).unwrap();
        assert!(
            (got.value - want).abs() < 3.0 * got.stderr,
            "p={p}: {} vs {want} ± {}",
            got.value,
            got.stderr
        );
        let sampled =
            noisy_expectation(&c, &[], &z, &noise, Shots::Finite(200_000), 2000, 43).unwrap();
        assert!(
            (sampled.value - want).abs() < 3.0 * sampled.stderr,
            "p={p}: sampled {}",
            sampled.value
        );
    }
}

#[test]
fn noise_error_grows_with_fold_scale() {
    let (_, h) = test_state_and_hamiltonian();
    let mut c = Circuit::new(2);
    c.ry(0, Angle::Fixed(0.7))
        .ry(1, Angle::Fixed(-1.9))
        .cx(0, 1)
        .ry(1, Angle::Fixed(0.3));
    let exact = expectation_exact(&run(&c, &[]).unwrap(), &h).unwrap();
    let noise = NoiseModel::new(0.01, 0.05, 0.0).unwrap();
    let errors: Vec<f64> = [1, 2, 3]
        .iter()
        .map(|&s| {
            let e = noisy_expectation(&c.fold(s), &[], &h, &noise, Shots::Exact, 4000, 8).unwrap();
            (e.value - exact).abs()
        })
        .collect();
    assert!(errors[0] < errors[1] && errors[1] < errors[2], "{errors:?}");
}

#[test]
fn out_of_range_qubit_is_rejected() {
    let mut c = Circuit::new(2);
    let g = Gate::new(GateKind::X, 2, vec![], None).unwrap();
    assert!(matches!(
        c.push(g),
        Err(SimError::QubitOutOfRange {
            qubit: 2,
            qubits: 2
        })
    ));
    assert!(Gate::new(GateKind::Cnot, 1, vec![1], None).is_err());
    assert!(Gate::new(GateKind::Ry, 1, vec![], None).is_err());
}
