use std::process::{Command, Output};

fn kcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keynes-chaos-lab"))
        .args(args)
        .env_remove("KCL_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn chaos_check_case_study() {
    let o = kcl(&[
        "chaos-check",
        "nonlinear",
        "--beta",
        "0.1",
        "--delta",
        "3.7",
        "--k",
        "1.1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("OddCycle"));
    assert!(out.contains("odd_cycle_threshold = 3.5785735104"));
}

#[test]
fn class_violation_exits_2_and_names_the_bound() {
    let o = kcl(&[
        "chaos-check",
        "nonlinear",
        "--beta",
        "0.1",
        "--delta",
        "1.5",
        "--k",
        "1.1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("max{2-beta, beta}"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(kcl(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(
        kcl(&["orbit", "nonlinear", "--delta", "x"]).status.code(),
        Some(1)
    );
    assert_eq!(
        kcl(&["lyapunov", "nonlinear", "--precision", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        kcl(&["density", "nonlinear", "--format", "svg"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        kcl(&["orbit", "piecewise", "--delta", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(kcl(&["--help"]).status.code(), Some(0));
    assert_eq!(kcl(&["--version"]).status.code(), Some(0));
}

#[test]
fn bad_numbers_never_panic() {
    for args in [
        vec!["orbit", "nonlinear", "--start", "7"],
        vec!["lyapunov", "nonlinear", "--beta", "NaN"],
        vec!["ergodic-sum", "piecewise", "--mu", "inf"],
        vec!["density", "nonlinear", "--bins", "1"],
        vec!["sc-sum", "piecewise"],
        vec!["expansivity", "nonlinear"],
    ] {
        let o = kcl(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).contains("panicked"));
    }
}

#[test]
fn ergodic_sum_prints_the_average() {
    let o = kcl(&[
        "ergodic-sum",
        "nonlinear",
        "--beta",
        "0.1",
        "--delta",
        "3.7",
        "--k",
        "1.1",
        "--start",
        "critical",
        "--n",
        "100000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.6).abs() < 0.01, "{v}");
}

#[test]
fn structural_parameters_match_direct_ones() {
    let direct = kcl(&["lyapunov", "nonlinear", "--delta", "3.7"]);
    let structural = kcl(&[
        "lyapunov",
        "nonlinear",
        "--mu",
        "3.7",
        "--alpha",
        "0.5",
        "--lambda",
        "0.5",
    ]);
    assert_eq!(stdout(&direct), stdout(&structural));
}

#[test]
fn datasets_have_the_documented_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let cases: [(&[&str], &str, &str); 4] = [
        (
            &[
                "bifurcation",
                "nonlinear",
                "--lo",
                "2.0",
                "--hi",
                "3.0",
                "--steps",
                "5",
                "--keep",
                "3",
            ],
            "b.csv",
            "param,orbit_value,exited_domain",
        ),
        (
            &["density", "nonlinear"],
            "d.csv",
            "bin_left,bin_right,density",
        ),
        (
            &[
                "sweep",
                "nonlinear",
                "--stat",
                "sc",
                "--lo",
                "3.45",
                "--steps",
                "5",
            ],
            "s.csv",
            "param,sc_partial_sum,diverged,out_of_class,singular_orbit",
        ),
        (
            &["sweep", "piecewise", "--stat", "ergodic", "--steps", "4"],
            "e.csv",
            "param,birkhoff_mean,exited_domain",
        ),
    ];
    for (args, file, header) in cases {
        let out = path(file);
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", &out]);
        let o = kcl(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let text = std::fs::read_to_string(&out).unwrap();
        let mut lines = text.lines();
        let prov = lines.next().unwrap();
        assert!(
            prov.starts_with("# generated-by keynes-chaos-lab "),
            "{prov}"
        );
        assert!(prov.contains(args[0]) && !prov.contains(&out));
        assert_eq!(lines.next(), Some(header));
    }
    let rows = std::fs::read_to_string(path("b.csv"))
        .unwrap()
        .lines()
        .count();
    assert_eq!(rows, 2 + 5 * 3);
}

#[test]
fn svg_output_is_standalone_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let o = kcl(&[
            "density",
            "nonlinear",
            "--format",
            "svg",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(!svg.contains("href"));
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("t{threads}.csv"));
        let o = Command::new(env!("CARGO_BIN_EXE_keynes-chaos-lab"))
            .args([
                "sweep",
                "nonlinear",
                "--stat",
                "lyapunov",
                "--steps",
                "60",
                "--out",
            ])
            .arg(&out)
            .env("KCL_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        bodies.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    let bad = Command::new(env!("CARGO_BIN_EXE_keynes-chaos-lab"))
        .args(["lyapunov", "nonlinear"])
        .env("KCL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn reproduce_lists_and_rejects_unknown_figures() {
    let list = kcl(&["reproduce", "--list"]);
    assert_eq!(list.status.code(), Some(0));
    assert_eq!(stdout(&list).lines().count(), 15);
    assert_eq!(kcl(&["reproduce", "fig99"]).status.code(), Some(1));
}
