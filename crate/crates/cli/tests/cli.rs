use std::fs;
use std::process::{Command, Output};

use cyclomds_io::certificate::{CertificateFile, VerifyReport};
use cyclomds_io::tables::{parse_claims_csv, CycloJson};

fn cyclomds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclomds"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn field_summaries() {
    let out = cyclomds(&["field", "13", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("theta = 2\n") && text.contains("phi(-1) = 0\n"),
        "{text}"
    );

    let out = cyclomds(&["field", "3", "2", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["q"], 9);
    assert_eq!(json["modulus"], serde_json::json!([1, 0, 1]));

    let out = cyclomds(&["field", "4", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a prime"));
}

#[test]
fn cyclo_sources_agree() {
    let brute = stdout(&cyclomds(&["cyclo", "13", "1", "2"]));
    let closed = stdout(&cyclomds(&["cyclo", "13", "1", "2", "--source=closed"]));
    assert_eq!(brute, "e,f,q,source\n2,6,13,brute_force\n2,3\n3,3\n");
    assert_eq!(closed.replace("closed_form_e2", "brute_force"), brute);

    let quartic: CycloJson = serde_json::from_slice(
        &cyclomds(&["cyclo", "13", "1", "4", "--source=closed", "--format=json"]).stdout,
    )
    .unwrap();
    let counted: CycloJson =
        serde_json::from_slice(&cyclomds(&["cyclo", "13", "1", "4", "--format=json"]).stdout)
            .unwrap();
    assert_eq!(quartic.values, counted.values);
    assert!(quartic.t_sign.is_some());

    let semi = stdout(&cyclomds(&[
        "cyclo",
        "7",
        "2",
        "4",
        "--source=semiprimitive",
    ]));
    assert_eq!(
        semi.lines().skip(2).collect::<Vec<_>>(),
        stdout(&cyclomds(&["cyclo", "7", "2", "4"]))
            .lines()
            .skip(2)
            .collect::<Vec<_>>()
    );

    assert_eq!(cyclomds(&["cyclo", "13", "1", "3"]).status.code(), Some(2));
    assert_eq!(
        cyclomds(&["cyclo", "13", "1", "4", "--source=semiprimitive"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn search_lists_named_lengths() {
    let has = |p: &str, n: usize, label: &str| {
        let rows = parse_claims_csv(&stdout(&cyclomds(&["search", p, "1"]))).unwrap();
        rows.iter()
            .any(|r| r.n == n && r.provenance.iter().any(|s| s.starts_with(label)))
    };
    assert!(has("13", 6, "Thm8(1)"));
    assert!(has("13", 14, "Thm11(1)"));
    assert!(has("7", 4, "Thm8(3)"));
    assert!(has("17", 10, "Thm11(1)"));
}

#[test]
fn caps_from_environment_and_flags() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_cyclomds"));
        cmd.args(["search", "13", "1"]).env_remove("CYCLOMDS_E_CAP");
        if let Some(v) = env {
            cmd.env("CYCLOMDS_E_CAP", v);
        }
        if let Some(v) = flag {
            cmd.args(["--e-cap", v]);
        }
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None, None), Some(0));
    // the default e_max follows the cap
    assert_eq!(run(Some("4"), None), Some(0));
    assert_eq!(run(None, Some("4")), Some(0));

    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cyclomds"));
    let out = cmd
        .args(["search", "13", "1", "--e-max", "12"])
        .env("CYCLOMDS_E_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cyclomds"));
    let out = cmd
        .args(["search", "13", "1", "--e-max", "12", "--e-cap", "12"])
        .env("CYCLOMDS_E_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cyclomds"));
    let out = cmd
        .args(["field", "3", "5"])
        .env("CYCLOMDS_Q_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();

    let out = cyclomds(&[
        "construct",
        "13",
        "1",
        "2",
        "0,1",
        "--zero",
        "--kind=egrs",
        "-o",
        p,
    ]);
    assert!(out.status.success());
    let file: CertificateFile = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((file.k, file.v.len(), file.kind.as_str()), (7, 13, "egrs"));
    assert!(file.checks.self_dual && file.checks.mds.result);

    let out = cyclomds(&["verify", p]);
    assert_eq!(out.status.code(), Some(0));
    let report: VerifyReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.pass);

    let mut bad = file.clone();
    bad.generator[2][5] = if bad.generator[2][5] == "0" {
        "1".into()
    } else {
        "0".into()
    };
    fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let out = cyclomds(&["verify", p, "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("row 2, column 5"), "{}", stdout(&out));

    let mut other = file.clone();
    other.theta = "6".into();
    fs::write(&path, serde_json::to_string(&other).unwrap()).unwrap();
    let out = cyclomds(&["verify", p, "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("context mismatch"));

    fs::write(&path, "{").unwrap();
    assert_eq!(cyclomds(&["verify", p]).status.code(), Some(2));
}

#[test]
fn infeasible_sets_exit_with_one() {
    let out = cyclomds(&["construct", "13", "1", "4", "0,2", "--zero"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion fails: phi values differ"));
    assert!(out.stdout.is_empty());

    assert_eq!(
        cyclomds(&["construct", "13", "1", "2", "0", "--kind=egrs"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cyclomds(&["construct", "13", "1", "2", "0,x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cyclomds(&["bogus"]).status.code(), Some(2));
}
