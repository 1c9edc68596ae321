use std::path::PathBuf;
use std::process::{Command, Output};

fn qboson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qboson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qboson-cli-{}-{name}", std::process::id()))
}

#[test]
fn list_shows_the_catalog() {
    let o = qboson(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["T", "T1", "T2", "T3", "Eq12", "XY", "OneBosonW"] {
        assert!(
            text.lines()
                .any(|l| l.split_whitespace().next() == Some(name)),
            "{name}"
        );
    }
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&qboson(&["list", "--json"]))).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 7);
}

#[test]
fn default_verify_exits_zero() {
    let o = qboson(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 unexpected-fail, 0 unexpected-pass"));
}

#[test]
fn eq12_symbolic_only() {
    let o = qboson(&[
        "verify",
        "--realization",
        "Eq12",
        "--backend",
        "symbolic",
        "--mode",
        "generic",
        "-v",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for r in [
        "ab=qba",
        "ac=qca",
        "bd=qdb",
        "cd=qdc",
        "bc=cb",
        "ad-da=lambda*bc",
    ] {
        assert!(
            text.lines().any(|l| l.contains("pass") && l.contains(r)),
            "{r}\n{text}"
        );
    }
    assert!(text.contains("gamma*delta"));
}

#[test]
fn q_power_two_passes_on_eq12() {
    let o = qboson(&[
        "verify",
        "--realization",
        "Eq12",
        "--q-power",
        "2",
        "--dim",
        "8",
        "--q",
        "3/2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn bad_config_exits_two_with_line_numbers() {
    let path = temp_path("bad.conf");
    std::fs::write(&path, "dim = 0\nmodes = generic\nq = ??\n").unwrap();
    let o = qboson(&["verify", "--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 1"), "{err}");
    assert!(err.contains("line 3"), "{err}");
    assert!(!err.contains("line 2"), "{err}");
}

#[test]
fn command_line_overrides_config_file() {
    let path = temp_path("ok.conf");
    std::fs::write(
        &path,
        "realizations = T\nbackends = symbolic\nmodes = generic\n",
    )
    .unwrap();
    let json = temp_path("ok.json");
    let o = qboson(&[
        "verify",
        "--config",
        path.to_str().unwrap(),
        "--mode",
        "fock",
        "--json",
        json.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    std::fs::remove_file(&json).ok();
    let cells = report["cells"].as_array().unwrap();
    assert!(!cells.is_empty());
    assert!(cells.iter().all(|c| c["mode"] == "fock"));
}

#[test]
fn json_report_is_deterministic() {
    let run = |tag: &str| {
        let path = temp_path(tag);
        let o = qboson(&[
            "verify",
            "--realization",
            "T3,OneBosonW",
            "--q",
            "random",
            "--dim",
            "6",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::remove_file(&path).ok();
        text
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn unknown_flag_values_exit_two() {
    assert_eq!(qboson(&["verify", "--dim", "1"]).status.code(), Some(2));
    assert_eq!(
        qboson(&["verify", "--param", "omega=1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qboson(&["verify", "--realization", "Nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn dump_matrix_gives_dense_pairs() {
    let o = qboson(&[
        "dump-matrix",
        "--realization",
        "T",
        "--entry",
        "d",
        "--dim",
        "3",
        "--q",
        "3/2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let m: Vec<Vec<[f64; 2]>> = serde_json::from_str(&stdout(&o)).unwrap();
    // d = a+ shifts |n> to |n+1>
    assert_eq!(m.len(), 3);
    assert_eq!(m[1][0], [1.0, 0.0]);
    assert_eq!(m[2][1], [1.0, 0.0]);
    assert_eq!(m[0][0], [0.0, 0.0]);
    let bad = qboson(&["dump-matrix", "--realization", "T", "--entry", "x"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn explain_prints_normal_forms() {
    let o = qboson(&["explain", "T", "--mode", "fock"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("qdet = (-q^-1*mu*nu)"), "{text}");
    assert!(qboson(&["explain", "Nope"]).status.code() == Some(2));
}
