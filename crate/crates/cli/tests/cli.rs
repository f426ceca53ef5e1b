use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use encodings::{decode_gc, load_encoding_map, EncodedHamiltonian};
use nsm::{read_levels, RunRecord};
use pauli_core::{max_abs_diff, read_pauli_file, restrict_to_subspace};
use shell_basis::ModelSpace;
use tempfile::TempDir;

fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(rel)
}

fn nsm(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsm"))
        .args(args)
        .current_dir(dir)
        .env("NSM_DATA_DIR", data_path(""))
        .output()
        .expect("nsm runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn succeeds(dir: &Path, args: &[&str]) -> String {
    let o = nsm(dir, args);
    assert!(o.status.success(), "nsm {args:?} failed: {}", stderr(&o));
    stdout(&o)
}

fn eigenvalues(text: &str) -> Vec<f64> {
    text.lines()
        .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
        .collect()
}

fn record(dir: &Path, stem: &str) -> RunRecord {
    RunRecord::load(&dir.join("results").join(format!("{stem}.json"))).unwrap()
}

#[test]
fn exact_lithium_spectra() {
    let tmp = TempDir::new().unwrap();
    let zero = eigenvalues(&succeeds(
        tmp.path(),
        &["exact", "hamiltonians/li6_0p_gc.pauli"],
    ));
    assert!(zero.iter().any(|e| (e - -3.910).abs() < 2e-3), "{zero:?}");
    assert!((zero[0] - -5.433).abs() < 2e-3, "{zero:?}");
    let one = eigenvalues(&succeeds(
        tmp.path(),
        &["exact", "hamiltonians/li6_1p_gc.pauli"],
    ));
    for want in [-5.433, -1.273] {
        assert!(
            one.iter().any(|e| (e - want).abs() < 2e-3),
            "{want} missing from {one:?}"
        );
    }
    assert!(one.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn exact_identity_file() {
    let tmp = TempDir::new().unwrap();
    std::fs::write(tmp.path().join("id.pauli"), "2.5 II\n").unwrap();
    let values = eigenvalues(&succeeds(tmp.path(), &["exact", "id.pauli"]));
    assert_eq!(values, vec![2.5; 4]);
    succeeds(tmp.path(), &["exact", "id.pauli", "--out", "out"]);
    let rows = read_levels(&tmp.path().join("out/id_exact.csv")).unwrap();
    assert_eq!(rows.len(), 4);
}

#[test]
fn input_errors_exit_with_code_two() {
    let tmp = TempDir::new().unwrap();
    let cases: [&[&str]; 6] = [
        &[
            "encode",
            "--space",
            "model_spaces/ar38_sd.space",
            "--interaction",
            "missing.int",
            "--particles",
            "2",
            "--twice-m",
            "0",
            "--scheme",
            "gc",
        ],
        &[
            "encode",
            "--space",
            "model_spaces/ar38_sd.space",
            "--interaction",
            "interactions/synthetic_sd.int",
            "--particles",
            "2",
            "--twice-m",
            "40",
            "--scheme",
            "gc",
        ],
        &[
            "encode",
            "--space",
            "model_spaces/ar38_sd.space",
            "--interaction",
            "interactions/synthetic_sd.int",
            "--particles",
            "2",
            "--twice-m",
            "0",
            "--scheme",
            "parity",
        ],
        &["exact", "missing.pauli"],
        &[
            "vqe",
            "--hamiltonian",
            "hamiltonians/ar38_2p_gc.pauli",
            "--ansatz",
            "ansatze/ar38_2p_gc.ansatz",
        ],
        &["report"],
    ];
    for args in cases {
        let o = nsm(tmp.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).trim().is_empty());
    }
    let o = nsm(tmp.path(), cases[0]);
    assert!(stderr(&o).contains("missing.int"));
    assert!(stderr(&nsm(tmp.path(), cases[4])).contains("--seed"));
}

#[test]
fn encode_reproduces_the_shipped_argon_table() {
    let tmp = TempDir::new().unwrap();
    succeeds(
        tmp.path(),
        &[
            "encode",
            "--space",
            "model_spaces/ar38_sd.space",
            "--from-table",
            "hamiltonians/ar38_2p_gc.pauli",
            "--table-map",
            "mappings/ar38_2p.map",
            "--mapping",
            "mappings/ar38_2p.map",
            "--scheme",
            "gc",
            "--label",
            "ar38_2p",
            "--out",
            "enc",
        ],
    );
    let produced = read_pauli_file(tmp.path().join("enc/ar38_2p_gc.pauli")).unwrap();
    let shipped = read_pauli_file(data_path("hamiltonians/ar38_2p_gc.pauli")).unwrap();
    assert!(produced.max_distance(&shipped) < 1e-6);
    let map = std::fs::read_to_string(tmp.path().join("enc/ar38_2p_gc.map")).unwrap();
    let codes: Vec<&str> = map.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(codes, ["101000 0", "110000 1"]);
}

#[test]
fn encoded_schemes_agree_on_the_sector() {
    let tmp = TempDir::new().unwrap();
    for scheme in ["gc", "jw"] {
        succeeds(
            tmp.path(),
            &[
                "encode",
                "--space",
                "model_spaces/li6_p.space",
                "--interaction",
                "interactions/synthetic_p.int",
                "--particles",
                "2",
                "--twice-m",
                "2",
                "--scheme",
                scheme,
                "--label",
                "syn",
                "--out",
                "enc",
            ],
        );
    }
    let space = ModelSpace::load(data_path("model_spaces/li6_p.space")).unwrap();
    let map = load_encoding_map(&space, tmp.path().join("enc/syn_gc.map")).unwrap();
    let gc = EncodedHamiltonian::new(
        read_pauli_file(tmp.path().join("enc/syn_gc.pauli")).unwrap(),
        map,
        "gc",
    )
    .unwrap();
    let jw = read_pauli_file(tmp.path().join("enc/syn_jw.pauli")).unwrap();
    let restricted = restrict_to_subspace(&jw, gc.map.basis.states()).unwrap();
    assert!(max_abs_diff(&restricted, &decode_gc(&gc).unwrap()) < 1e-10);
}

#[test]
fn vqe_ensemble_on_argon_two_plus() {
    let tmp = TempDir::new().unwrap();
    let args = [
        "vqe",
        "--hamiltonian",
        "hamiltonians/ar38_2p_gc.pauli",
        "--ansatz",
        "ansatze/ar38_2p_gc.ansatz",
        "--seed",
        "11",
    ];
    succeeds(tmp.path(), &args);
    let r = record(tmp.path(), "ar38_2p_gc_vqe");
    assert_eq!(r.energies.len(), 100);
    assert_eq!(r.config.shots.to_string(), "10000");
    assert!(
        (r.median[0] - -151.093).abs() < 3.0 * r.mad[0],
        "{} ± {}",
        r.median[0],
        r.mad[0]
    );
    assert!(r.data_digests.values().all(|d| d.len() == 64));
    assert_eq!(
        r.data_digests["hamiltonians/ar38_2p_gc.pauli"],
        nsm::data::pinned_digest("hamiltonians/ar38_2p_gc.pauli").unwrap()
    );
}

#[test]
fn adapt_on_lithium_three_plus() {
    let tmp = TempDir::new().unwrap();
    succeeds(
        tmp.path(),
        &[
            "adapt",
            "--hamiltonian",
            "hamiltonians/li6_3p_gc.pauli",
            "--seed",
            "4",
            "--shots",
            "exact",
            "--runs",
            "3",
        ],
    );
    let r = record(tmp.path(), "li6_3p_gc_adapt");
    assert!((r.median[0] - -5.009).abs() < 1e-3, "{}", r.median[0]);
}

#[test]
fn noiseless_zne_intercept_matches_scale_one() {
    let tmp = TempDir::new().unwrap();
    succeeds(
        tmp.path(),
        &[
            "zne",
            "--hamiltonian",
            "hamiltonians/ar38_1p_gc.pauli",
            "--ansatz",
            "ansatze/ar38_1p_gc.ansatz",
            "--noise",
            "0,0,0",
            "--seed",
            "9",
            "--runs",
            "30",
            "--trajectories",
            "4",
        ],
    );
    let z = record(tmp.path(), "ar38_1p_gc_zne").zne.unwrap();
    let combined = (z.stderr.powi(2) + (1.2533 * 1.4826 * z.mads[0]).powi(2) / 30.0).sqrt();
    assert!(
        (z.intercept - z.medians[0]).abs() <= combined + 1e-9,
        "{z:?}"
    );
}

#[test]
fn identical_configurations_give_identical_level_tables() {
    let tmp = TempDir::new().unwrap();
    let base = [
        "vqe",
        "--hamiltonian",
        "hamiltonians/ar38_1p_gc.pauli",
        "--ansatz",
        "ansatze/ar38_1p_gc.ansatz",
        "--seed",
        "5",
        "--runs",
        "8",
        "--shots",
        "2000",
    ];
    for out in ["a", "b"] {
        let mut args = base.to_vec();
        args.extend(["--out", out]);
        succeeds(tmp.path(), &args);
    }
    let read = |d: &str| std::fs::read(tmp.path().join(d).join("ar38_1p_gc_vqe.csv")).unwrap();
    assert_eq!(read("a"), read("b"));
}

#[test]
fn records_replay_and_detect_tampering() {
    let tmp = TempDir::new().unwrap();
    succeeds(
        tmp.path(),
        &[
            "vqd",
            "--hamiltonian",
            "hamiltonians/ar38_2p_gc.pauli",
            "--ansatz",
            "ansatze/ar38_2p_gc.ansatz",
            "--k",
            "1",
            "--seed",
            "2",
            "--runs",
            "3",
            "--shots",
            "5000",
        ],
    );
    let path = tmp.path().join("results/ar38_2p_gc_vqd.json");
    let path = path.to_str().unwrap();
    assert!(
        succeeds(tmp.path(), &["vqd", "--config", path, "--replay"]).contains("reproduced 3 runs")
    );
    let mut r = RunRecord::load(Path::new(path)).unwrap();
    r.energies[1][0] += 1e-9;
    std::fs::write(path, serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(
        nsm(tmp.path(), &["vqd", "--config", path, "--replay"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        nsm(
            tmp.path(),
            &["vqd", "--config", path, "--replay", "--seed", "3"]
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn config_files_drive_runs() {
    let tmp = TempDir::new().unwrap();
    let config = r#"{
        "label": "li6_2p",
        "hamiltonian": "hamiltonians/li6_2p_gc.pauli",
        "seed": 8,
        "shots": "exact",
        "runs": 2,
        "optimizer": {"iterations": 100, "a": null, "c": 0.1, "alpha": 0.602, "gamma": 0.101, "stability": 30.0},
        "method": "vqe",
        "ansatz": "ansatze/li6_2p_gc.ansatz",
        "theta0": null
    }"#;
    std::fs::write(tmp.path().join("run.json"), config).unwrap();
    succeeds(tmp.path(), &["vqe", "--config", "run.json", "--runs", "3"]);
    let r = record(tmp.path(), "li6_2p_vqe");
    assert_eq!((r.config.runs, r.config.optimizer.iterations), (3, 100));
    assert!((r.median[0] - r.exact[0].unwrap()).abs() < 1e-6);
    assert_eq!(
        nsm(tmp.path(), &["adapt", "--config", "run.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn iteration_cap_is_reported_as_non_convergence() {
    let tmp = TempDir::new().unwrap();
    let o = nsm(
        tmp.path(),
        &[
            "adapt",
            "--hamiltonian",
            "hamiltonians/ar38_0p_gc.pauli",
            "--seed",
            "1",
            "--shots",
            "exact",
            "--runs",
            "1",
            "--max-iterations",
            "1",
            "--iterations",
            "20",
        ],
    );
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(tmp.path().join("results/ar38_0p_gc_adapt.json").exists());
}

#[test]
fn data_directory_override() {
    let tmp = TempDir::new().unwrap();
    let data = tmp.path().join("alt");
    std::fs::create_dir_all(data.join("hamiltonians")).unwrap();
    std::fs::write(data.join("hamiltonians/one.pauli"), "-1.5 I\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_nsm"))
        .args(["exact", "hamiltonians/one.pauli"])
        .current_dir(tmp.path())
        .env("NSM_DATA_DIR", &data)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(eigenvalues(&stdout(&o)), vec![-1.5, -1.5]);
}

fn exact_run(dir: &Path, method: &str, sector: &str, extra: &[&str]) {
    let h = format!("hamiltonians/ar38_{sector}_gc.pauli");
    let a = format!("ansatze/ar38_{sector}_gc.ansatz");
    let mut args = vec![
        method,
        "--hamiltonian",
        &h,
        "--seed",
        "21",
        "--shots",
        "exact",
        "--runs",
        "1",
    ];
    if method != "adapt" {
        args.extend(["--ansatz", &a]);
    }
    args.extend(extra);
    succeeds(dir, &args);
}

#[test]
fn report_draws_methods_and_exact_references() {
    let tmp = TempDir::new().unwrap();
    for method in ["vqe", "adapt"] {
        for sector in ["0p", "1p", "2p"] {
            exact_run(tmp.path(), method, sector, &[]);
        }
    }
    succeeds(tmp.path(), &["report", "results", "--out", "report"]);
    let svg = std::fs::read_to_string(tmp.path().join("report/levels.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="level""#).count(), 6);
    assert_eq!(svg.matches(r#"class="exact""#).count(), 3);
    assert_eq!(svg.matches("stroke-dasharray").count(), 3);
    assert_eq!(
        read_levels(&tmp.path().join("report/levels.csv"))
            .unwrap()
            .len(),
        6
    );
}

#[test]
fn argon_level_order_follows_the_exact_spectrum() {
    let tmp = TempDir::new().unwrap();
    exact_run(tmp.path(), "adapt", "0p", &[]);
    exact_run(tmp.path(), "vqe", "2p", &[]);
    exact_run(tmp.path(), "vqd", "2p", &["--k", "1"]);
    exact_run(tmp.path(), "vqd", "0p", &["--k", "3"]);
    exact_run(tmp.path(), "vqd", "1p", &["--k", "2"]);
    succeeds(tmp.path(), &["report", "results", "--out", "report"]);
    let rows = read_levels(&tmp.path().join("report/levels.csv")).unwrap();
    let pick = |label: &str, method: &str, level: usize| {
        rows.iter()
            .find(|r| r.label == label && r.method == method && r.level == level)
            .unwrap()
            .median
    };
    let levels = [
        pick("ar38_0p_gc", "adapt", 0),
        pick("ar38_2p_gc", "vqe", 0),
        pick("ar38_2p_gc", "vqd", 1),
        pick("ar38_0p_gc", "vqd", 3),
        pick("ar38_1p_gc", "vqd", 2),
    ];
    let exact = [-152.677, -151.093, -149.700, -149.225, -149.104];
    assert!(levels.windows(2).all(|w| w[0] < w[1]), "{levels:?}");
    for (got, want) in levels.iter().zip(exact) {
        assert!((got - want).abs() < 0.1, "{levels:?}");
    }
}
