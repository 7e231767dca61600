use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use triwave::cli;
use triwave::grid::io::read_field_on;
use triwave::grid::TriField;
use triwave::model::{sample_potential, ModelParams, PotentialKind};
use triwave::solver::{verify_theorem, SolveResult, VerifyTolerances};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["triwave"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_conf(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const SMALL_1D: &str = "grid.dimension = 1\ngrid.points = 128\npotential.kind = harmonic\nmodel.p = 3\n";

#[test]
fn solve_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let cfg = configs().join("harmonic_1d.conf");
    let (code, stdout, _) = run(&["solve", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    let result: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("result.json")).unwrap()).unwrap();
    assert!((result["result"]["energy"].as_f64().unwrap() - 1.5).abs() < 1e-8);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    let hist = fs::read_to_string(out.join("history.csv")).unwrap();
    assert!(hist.starts_with("iteration,energy,r1,r2,r3,lambda1,lambda2,lambda3\n"));
    for f in ["u.bin", "v.bin", "w.bin"] {
        assert!(out.join(f).exists());
    }
}

#[test]
fn config_errors_exit_one_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_conf(dir.path(), "p4.conf", "grid.dimension = 3\n\nmodel.p = 4\n");
    let (code, _, err) = run(&["solve", "--config", &p4]);
    assert_eq!(code, 1);
    assert!(err.contains("p4.conf:3:") && err.contains("2 < p < 10/3"), "{err}");

    let neg = write_conf(dir.path(), "neg.conf", "model.beta = -1\n");
    let (code, _, err) = run(&["solve", "--config", &neg]);
    assert_eq!(code, 1);
    assert!(err.contains("neg.conf:1:") && err.contains("beta"), "{err}");

    let typo = write_conf(dir.path(), "typo.conf", "# comment\ngrid.ponts = 16\n");
    let (code, _, err) = run(&["solve", "--config", &typo]);
    assert_eq!(code, 1);
    assert!(err.contains("typo.conf:2:") && err.contains("unknown key"), "{err}");

    let (code, _, _) = run(&["solve", "--config", "/nonexistent/x.conf"]);
    assert_eq!(code, 1);
}

#[test]
fn non_convergence_and_verification_failure_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let short = write_conf(dir.path(), "short.conf", &format!("{SMALL_1D}solver.max_iters = 5\n"));
    assert_eq!(run(&["solve", "--config", &short, "--out", out]).0, 2);
    let strict = write_conf(dir.path(), "strict.conf", &format!("{SMALL_1D}verify.residual = 1e-30\n"));
    let (code, stdout, _) = run(&["solve", "--config", &strict, "--out", out]);
    assert_eq!(code, 3);
    assert!(stdout.contains("residual") && stdout.contains("FAIL"));
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn beta_sweep_rows_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_conf(dir.path(), "s.conf", SMALL_1D);
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let (code, stdout, _) = run(&["sweep", "--config", &cfg, "--betas", "0,1", "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().next().unwrap(), cli::SWEEP_HEADER);
    let rows = csv_rows(&stdout);
    assert_eq!(rows.len(), 2);
    let m: Vec<f64> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    assert!(m[1] <= m[0]);
    assert_eq!(run(&["sweep", "--config", &cfg, "--betas", "0,1", "--out", b.to_str().unwrap(), "--jobs", "1"]).0, 0);
    assert_eq!(fs::read(a.join("sweep.csv")).unwrap(), fs::read(b.join("sweep.csv")).unwrap());

    // every row re-validates from its checkpointed fields
    let g = triwave::grid::GridSpec::new(1, 8.0, 128, triwave::grid::Discretization::FdDirichlet).build().unwrap();
    let pot = sample_potential(&PotentialKind::Harmonic, &g).unwrap();
    for (k, beta) in [0.0, 1.0].into_iter().enumerate() {
        let sub = a.join(format!("point_{k:03}"));
        let t = TriField::from_array(["u", "v", "w"].map(|n| read_field_on(sub.join(format!("{n}.bin")), &g).unwrap())).unwrap();
        let prm = ModelParams::new([1.0; 3], beta, 3.0, [1.0; 3], 1);
        let r = SolveResult::from_state(t, &pot, &prm, 0, true).unwrap();
        assert_eq!(r.energy, m[k]);
        assert!(verify_theorem(&r, &pot, &prm, &VerifyTolerances::default()).unwrap().passed);
    }
}

#[test]
fn empty_or_bad_sweep_lists_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_conf(dir.path(), "s.conf", SMALL_1D);
    let out = dir.path().to_str().unwrap();
    assert_eq!(run(&["sweep", "--config", &cfg, "--out", out]).0, 1);
    assert_eq!(run(&["sweep", "--config", &cfg, "--betas", "", "--out", out]).0, 1);
    assert_eq!(run(&["sweep", "--config", &cfg, "--betas", "1,0", "--out", out]).0, 1);
    assert_eq!(run(&["sweep", "--config", &cfg, "--masses", "1,1", "--out", out]).0, 1);
}

#[test]
fn mass_grid_sweep_matches_oscillator_energies() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("mass_sweep.conf");
    let (code, stdout, _) = run(&["sweep", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let rows = csv_rows(&stdout);
    let m: Vec<f64> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    assert!((m[0] - 4.5).abs() < 1e-3 && (m[1] - 6.0).abs() < 1e-3, "{m:?}");
}

#[test]
fn verify_suites() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout, _) = run(&["verify", "decomposition", "--out", out]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("decomposition: PASS"));
    let rep: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("decomposition.json")).unwrap()).unwrap();
    assert!(rep["sweeps"][0]["worst_margin"].as_f64().unwrap() <= 1e-12);
    assert_eq!(rep["sweeps"][0]["trials"], 100);

    assert_eq!(run(&["verify", "nonsense"]).0, 1);
}

#[test]
fn corrupted_constant_table_fails_gn() {
    let dir = tempfile::tempdir().unwrap();
    let bad = triwave::model::BUNDLED_TABLE
        .lines()
        .map(|l| {
            if let Some((k, rest)) = l.split_once(") = ") {
                let v: f64 = rest.split_whitespace().next().unwrap().parse().unwrap();
                format!("{k}) = {}", v * 0.3)
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let path = write_conf(dir.path(), "bad.txt", &bad);
    let (code, stdout, _) = run(&["verify", "all", "--constants", &path, "--trials", "50"]);
    assert_ne!(code, 0);
    assert!(stdout.lines().any(|l| l.starts_with("gn: FAIL")), "{stdout}");
    assert!(stdout.lines().any(|l| l.starts_with("decomposition: PASS")), "{stdout}");
}

#[test]
fn oracle_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let cfg = configs().join("harmonic_1d.conf");
    let (code, stdout, _) = run(&["oracle", "--config", cfg.to_str().unwrap(), "--out", out]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("PASS"));
    let nonlinear = configs().join("theorem.conf");
    let (code, _, err) = run(&["oracle", "--config", nonlinear.to_str().unwrap(), "--out", out]);
    assert_eq!(code, 1);
    assert!(err.contains("mu = beta = 0"), "{err}");
}

#[test]
fn binary_exit_codes_and_defaults_override() {
    let exe = env!("CARGO_BIN_EXE_triwave");
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(exe).args(["verify", "bogus"]).status().unwrap();
    assert_eq!(status.code(), Some(1));
    let status = Command::new(exe).arg("--help").output().unwrap();
    assert_eq!(status.status.code(), Some(0));

    // an alternative defaults file replaces the embedded one
    let defaults = cli::config::BUNDLED_DEFAULTS
        .replace("grid.dimension = 3", "grid.dimension = 1")
        .replace("grid.points = 32", "grid.points = 64")
        .replace("model.p = 2.5", "model.p = 3");
    let dpath = write_conf(dir.path(), "defaults.conf", &defaults);
    let out = dir.path().join("o");
    let res = Command::new(exe)
        .env("TRIWAVE_DEFAULTS", &dpath)
        .args(["solve", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let result: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("result.json")).unwrap()).unwrap();
    assert_eq!(result["config"]["grid"]["points_per_axis"], 64);
}

#[test]
fn seed_flag_changes_random_start_only_through_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_conf(dir.path(), "r.conf", &format!("{SMALL_1D}solver.init = random\nsolver.max_iters = 3\n"));
    let read_energy = |sub: &str, seed: &str| {
        let out = dir.path().join(sub);
        run(&["solve", "--config", &cfg, "--seed", seed, "--out", out.to_str().unwrap()]);
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("result.json")).unwrap()).unwrap();
        v["result"]["energy"].as_f64().unwrap()
    };
    let a = read_energy("a", "1");
    let b = read_energy("b", "1");
    let c = read_energy("c", "2");
    assert_eq!(a, b);
    assert_ne!(a, c);
}
