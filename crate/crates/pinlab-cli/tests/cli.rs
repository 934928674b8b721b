//! End-to-end tests of the `pinlab` binary: real process invocations on
//! temporary directories, checking file contents byte-for-byte where the
//! values have closed forms.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn pinlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinlab"))
        .args(args)
        .output()
        .expect("spawning pinlab")
}

fn assert_success(out: &Output) {
    assert!(
        out.status.success(),
        "pinlab failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("exp.conf");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

/// A degree point mass at 2 with three nodes can only realize the triangle.
#[test]
fn generate_point_mass_yields_the_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n = 3\nk_min = 2\nk_max = 2\nk_sat = 1\nk_cut = 10\nseeds = 1\np_max = 0.4\n",
    );
    let out_dir = dir.path().join("out");
    let out = pinlab(&["generate", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_success(&out);

    assert_eq!(read(&out_dir.join("seed-1.edges")), "0 1\n0 2\n1 2\n");
    assert_eq!(read(&out_dir.join("seed-1.degrees")), "2\n2\n2\n");
    let meta = read(&out_dir.join("seed-1.meta"));
    assert!(meta.contains("parity_fix = none"), "{meta}");
    assert!(meta.contains("nodes = 3") && meta.contains("edges = 3"), "{meta}");
    // The effective config rides along for provenance.
    assert!(read(&out_dir.join("config.used")).contains("k_min = 2"));
}

/// An odd-degree point mass on an odd node count forces a parity fix, and
/// the metadata names the adjusted node.
#[test]
fn generate_notes_the_parity_fix() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n = 5\nk_min = 3\nk_max = 3\nk_sat = 1\nk_cut = 10\nseeds = 4\n",
    );
    let out_dir = dir.path().join("out");
    assert_success(&pinlab(&["generate", "--config", &cfg, "--out", out_dir.to_str().unwrap()]));

    let meta = read(&out_dir.join("seed-4.meta"));
    let fix_line = meta
        .lines()
        .find(|l| l.starts_with("parity_fix = "))
        .expect("metadata has a parity_fix line");
    assert_ne!(fix_line, "parity_fix = none", "odd degree sum must be repaired");
    let degrees = read(&out_dir.join("seed-4.degrees"));
    let mut counts: Vec<usize> = degrees.lines().map(|l| l.parse().unwrap()).collect();
    counts.sort_unstable();
    assert_eq!(counts, vec![3, 3, 3, 3, 4]);
}

#[test]
fn generate_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n = 14\ngamma = 1.5\nk_sat = 2\nk_cut = 8\nseeds = 3,9\n",
    );
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_success(&pinlab(&["generate", "--config", &cfg, "--out", a.to_str().unwrap()]));
    assert_success(&pinlab(&["generate", "--config", &cfg, "--out", b.to_str().unwrap()]));
    for name in ["seed-3.edges", "seed-3.degrees", "seed-3.meta", "seed-9.edges"] {
        assert_eq!(read(&a.join(name)), read(&b.join(name)), "{name} differs between runs");
    }
    // Different seeds give different networks.
    assert_ne!(read(&a.join("seed-3.edges")), read(&a.join("seed-9.edges")));
}

/// Star K_{1,3}, annealed: pinning the hub leaves three degree-1 leaves
/// free, so λ₁ solves 3λ/(1-λ) = 3, i.e. λ₁ = 1/2 for both A2 and DC.
#[test]
fn select_on_a_star_hits_the_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("star.txt");
    fs::write(&net, "0 1\n0 2\n0 3\n").unwrap();
    let cfg = write_config(dir.path(), &format!("edge_list = {}\n", net.display()));
    let out_dir = dir.path().join("out");
    let out = pinlab(&[
        "select",
        "--config",
        &cfg,
        "--backend",
        "annealed",
        "--strategies",
        "A2,DC",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_success(&out);

    let results = read(&out_dir.join("results.csv"));
    let lines: Vec<&str> = results.lines().collect();
    assert_eq!(lines[0], "seed,strategy,backend,N,c,p,lambda1,inv_lambda1,k_star,d_hm,set");
    // c_max = floor(0.3 * 4) = 1, so one row per strategy; the seed field
    // is empty for edge-list sources, d_hm is empty at the first budget.
    assert_eq!(
        lines[1],
        ",A2,annealed,4,1,0.250000000000,0.500000000000,2.00000000000,0,,0"
    );
    assert_eq!(
        lines[2],
        ",DC,annealed,4,1,0.250000000000,0.500000000000,2.00000000000,,,0"
    );
    assert_eq!(lines.len(), 3);

    let summary = read(&out_dir.join("summary.csv"));
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "seed,strategy,backend,N,omega,delta,d_omega,d_delta");
    // Single-budget curve: ω = δ = 1/λ₁ = 2; Δ against DC is exactly 0.
    assert_eq!(lines[1], ",A2,annealed,4,2.00000000000,2.00000000000,0,0");
    assert_eq!(lines[2], ",DC,annealed,4,2.00000000000,2.00000000000,0,0");
}

#[test]
fn select_repeat_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n = 16\ngamma = 1.5\nk_sat = 2\nk_cut = 8\nseeds = 1,2\nstrategies = A1,A2,DC,CC\np_max = 0.25\n",
    );
    let out_dir = dir.path().join("out");
    assert_success(&pinlab(&["select", "--config", &cfg, "--out", out_dir.to_str().unwrap()]));
    let first_results = read(&out_dir.join("results.csv"));
    let first_summary = read(&out_dir.join("summary.csv"));
    let first_meta = read(&out_dir.join("run.meta"));

    assert_success(&pinlab(&["select", "--config", &cfg, "--out", out_dir.to_str().unwrap()]));
    assert_eq!(read(&out_dir.join("results.csv")), first_results);
    assert_eq!(read(&out_dir.join("summary.csv")), first_summary);
    assert_eq!(read(&out_dir.join("run.meta")), first_meta);

    // 2 seeds x 4 strategies x 4 budgets + header.
    assert_eq!(first_results.lines().count(), 1 + 2 * 4 * 4);
}

#[test]
fn select_isolates_a_failing_strategy() {
    let dir = tempfile::tempdir().unwrap();
    // Exhaustive enumeration at N = 60, c up to 18 blows the subset cap;
    // A2 must still be written.
    let cfg = write_config(
        dir.path(),
        "n = 60\ngamma = 1.5\nk_sat = 2\nk_cut = 20\nseeds = 1\nstrategies = A2,EXH\n",
    );
    let out_dir = dir.path().join("out");
    let out = pinlab(&["select", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_success(&out);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("EXH"), "stderr should name the failed strategy: {stderr}");
    let results = read(&out_dir.join("results.csv"));
    assert!(results.lines().skip(1).all(|l| l.contains(",A2,")));
    assert!(results.lines().count() > 1);
}

#[test]
fn sweep_writes_per_value_rows_and_trend_flags() {
    let dir = tempfile::tempdir().unwrap();
    // Point-mass degrees make the k_sat axis inert: both values must
    // produce identical averaged rows, and the trend is not monotone.
    let cfg = write_config(
        dir.path(),
        "n = 8\nk_min = 3\nk_max = 3\nk_sat = 1\nk_cut = 10\nseeds = 1,2\nstrategies = A2,DC\n",
    );
    let out_dir = dir.path().join("out");
    let out = pinlab(&[
        "sweep",
        "--config",
        &cfg,
        "--axis",
        "k_sat",
        "--values",
        "20,120",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_success(&out);

    let summary = read(&out_dir.join("sweep_summary.csv"));
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "axis,value,strategy,backend,N,omega,delta,d_omega,d_delta");
    assert_eq!(lines.len(), 1 + 2 * 2, "{summary}");
    assert!(lines[1].starts_with("k_sat,20,A2,annealed,8,"));
    assert!(lines[3].starts_with("k_sat,120,A2,annealed,8,"));
    // k_sat cannot matter on a point mass: identical numbers per strategy.
    let tail = |l: &str| l.splitn(3, ',').nth(2).unwrap().to_owned();
    assert_eq!(tail(lines[1]), tail(lines[3]));
    assert_eq!(tail(lines[2]), tail(lines[4]));

    let trends = read(&out_dir.join("sweep_trends.csv"));
    assert!(trends.contains("A2,not monotone"), "{trends}");

    // Per-value directories hold the full per-seed detail.
    for value in ["20", "120"] {
        let detail = out_dir.join(format!("k_sat-{value}"));
        assert!(detail.join("results.csv").is_file());
        assert!(detail.join("summary.csv").is_file());
        let per_seed = read(&detail.join("summary.csv"));
        assert_eq!(per_seed.lines().count(), 1 + 2 * 2); // 2 seeds x 2 strategies
    }
    assert!(read(&out_dir.join("sweep.meta")).contains("axis = k_sat"));
}

/// The validate subcommand's exit code must agree with the report computed
/// in-process from the same parameters.
#[test]
fn validate_exit_code_matches_the_report() {
    let cfg = pinlab_core::validation::ValidationConfig {
        trials: 40,
        n_max: 10,
        c_max: 3,
        seed: 5,
        tol: 1e-9,
    };
    let report = pinlab_core::validation::run_all(&cfg).unwrap();

    let out = pinlab(&[
        "validate", "--trials", "40", "--nmax", "10", "--cmax", "3", "--seed", "5",
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("checks"), "{stdout}");
    assert_eq!(
        out.status.code(),
        Some(if report.passed() { 0 } else { 1 }),
        "exit code disagrees with report:\n{report}"
    );
    for suite in &report.suites {
        assert!(stdout.contains(suite.name), "missing suite '{}' in:\n{stdout}", suite.name);
    }
}

#[test]
fn plot_renders_polylines_markers_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let header = "seed,strategy,backend,N,c,p,lambda1,inv_lambda1,k_star,d_hm,set";
    let csv = format!(
        "{header}\n\
         1,A2,annealed,10,1,0.1,0.5,2,1,,0\n\
         1,A2,annealed,10,2,0.2,0.8,1.25,1,2,0;1\n\
         1,DC,annealed,10,1,0.1,0.4,2.5,,,0\n\
         1,DC,annealed,10,2,0.2,0.6,1.666666666667,,0,0;1\n"
    );
    let input = dir.path().join("results.csv");
    fs::write(&input, &csv).unwrap();

    let out = pinlab(&["plot", input.to_str().unwrap()]);
    assert_success(&out);
    let svg_path = dir.path().join("results.svg");
    let svg = read(&svg_path);
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert!(svg.contains(">A2<") && svg.contains(">DC<"));
    assert!(svg.contains("1/λ₁"));

    // Re-render into another directory: byte-identical.
    let other = dir.path().join("other");
    assert_success(&pinlab(&["plot", input.to_str().unwrap(), "--out", other.to_str().unwrap()]));
    assert_eq!(read(&other.join("results.svg")), svg);

    // A single-point strategy renders as a marker, not a line.
    let single = dir.path().join("single.csv");
    fs::write(&single, format!("{header}\n1,EXH,annealed,10,1,0.1,0.5,2,,,0\n")).unwrap();
    assert_success(&pinlab(&["plot", single.to_str().unwrap()]));
    let svg = read(&dir.path().join("single.svg"));
    assert_eq!(svg.matches("<polyline").count(), 0);
    assert_eq!(svg.matches("<circle").count(), 1);
}

#[test]
fn plot_rejects_malformed_rows_with_their_number() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(
        &input,
        "seed,strategy,backend,N,c,p,lambda1,inv_lambda1,k_star,d_hm,set\n\
         1,A2,annealed,10,1,0.1,0.5,2,,,0\n\
         1,A2,annealed,10,not-a-number,0.2,0.8,1.25,,,0\n",
    )
    .unwrap();
    let out = pinlab(&["plot", input.to_str().unwrap()]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("row 3"), "{stderr}");
}

#[test]
fn thread_cap_is_applied_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "n = 10\ngamma = 1.5\nk_sat = 2\nk_cut = 6\nseeds = 1\nstrategies = A2\n",
    );
    let out_dir = dir.path().join("out");
    let ok = Command::new(env!("CARGO_BIN_EXE_pinlab"))
        .args(["select", "--config", &cfg, "--out", out_dir.to_str().unwrap()])
        .env("PINLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_success(&ok);

    let bad = Command::new(env!("CARGO_BIN_EXE_pinlab"))
        .args(["validate", "--trials", "1"])
        .env("PINLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("PINLAB_THREADS"));
}

#[test]
fn unknown_strategy_is_a_clean_error() {
    let out = pinlab(&["select", "--strategies", "A9", "--out", "/tmp/nowhere"]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unknown strategy"), "{stderr}");
}
