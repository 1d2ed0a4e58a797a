use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_currentlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_jacobi_mf_on_sl3_is_clean() {
    let out = run(&["verify-jacobi", "--algebra", "sl3", "--flavor", "mf", "--trials", "100", "--max-momentum", "3", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["violations"], 0);
    assert_eq!(r["trials"], 100);
    assert_eq!(r["witness"], Value::Null);
    assert_eq!(r["command"], "verify-jacobi");
}

#[test]
fn restrict_mf_has_no_extension() {
    let out = run(&["restrict", "--algebra", "sl3", "--flavor", "mf", "--e", "1,2,3", "--a", "E12", "--b", "E21", "--m", "2", "--n", "-5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["extension_zero"], true);
    assert_eq!(r["extension_part"], "0");
    assert_eq!(r["loop_mode"], -3);
    assert_eq!(r["loop_part"][0]["color"], "H1");
}

#[test]
fn restrict_kassel_gives_central_term() {
    let out = run(&[
        "restrict", "--algebra", "sl3", "--flavor", "kassel", "--level", "-1/2", "--e", "1,0,0", "--a", "E12", "--b", "E21",
        "--m", "1", "--n", "-1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["extension_zero"], false);
    assert_eq!(r["extension_part"], "-1/2·S[1](0,0,0)");
    assert_eq!(r["extension_part"], r["expected_extension"]);
}

#[test]
fn unitarity_scan_finds_negative_grade_one_norm() {
    let out = run(&["unitarity-scan", "--k", "0", "--h", "1", "--grade", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let row = &json(&out)["rows"][0];
    assert_eq!(row["verdict"], "NON_UNITARY");
    assert_eq!(row["witness"]["norm"], "-1");
    assert_eq!(row["witness"]["grade"], 1);
}

#[test]
fn gram_grade_one_blocks() {
    let out = run(&["gram", "--k", "3", "--h", "2", "--grade", "1", "--max-f0", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    let diag: Vec<String> = r["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["basis"].as_array().unwrap().len() == 1)
        .map(|b| b["matrix"][0][0].as_str().unwrap().to_string())
        .collect();
    // without F(0) letters: E(-1): k - h, H(-1): 2k, F(-1): k + h
    assert_eq!(diag, ["1", "6", "5"]);
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["algebra-info", "--algebra", "so7"],
        &["gram", "--k", "1.5", "--h", "0"],
        &["gram", "--k", "1/0", "--h", "0"],
        &["restrict", "--e", "0,0,0", "--a", "0", "--b", "1", "--m", "1", "--n", "1"],
        &["restrict", "--e", "1,2", "--a", "0", "--b", "1", "--m", "1", "--n", "1"],
        &["restrict", "--e", "1,0,0", "--a", "E99", "--b", "1", "--m", "1", "--n", "1"],
        &["verify-jacobi", "--flavor", "mf", "--level", "2"],
        &["cocycle-scan", "--trials", "0"],
        &["no-such-command"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(stderr(&out).contains("error"), "{args:?}");
    }
}

#[test]
fn corrupted_algebra_is_caught_with_witness() {
    let out = run(&["verify-jacobi", "--algebra", "sl3", "--flavor", "corrupt", "--trials", "50"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert!(r["violations"].as_u64().unwrap() > 0);
    let w = &r["witness"];
    assert!(w.is_object());
    assert_ne!(w["defect"], "0");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let commands: &[&[&str]] = &[
        &["verify-jacobi", "--flavor", "kassel", "--level", "1/3", "--trials", "40", "--seed", "9"],
        &["cocycle-scan", "--flavor", "mf", "--trials", "60", "--seed", "3"],
        &["unitarity-scan", "--k", "0,1/2,1", "--h", "0,1", "--grade", "2"],
    ];
    for args in commands {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = run(&["verify-jacobi", "--trials", "20", "--seed", "1", "--flavor", "corrupt"]);
    let b = run(&["verify-jacobi", "--trials", "20", "--seed", "2", "--flavor", "corrupt"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn algebra_file_with_identity_basis_loads_with_warning() {
    let dir = std::env::temp_dir().join(format!("currentlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("u1.json");
    std::fs::write(&path, r#"{"name":"u1","rep_size":2,"basis":[[[["1","0"],["0","0"]],[["0","0"],["1","0"]]]]}"#).unwrap();
    let out = run(&["algebra-info", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("abelian"));
    let r = json(&out);
    assert_eq!(r["dim"], 1);
    assert_eq!(r["d_tensor"][0]["value"][0], "4");

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"name\":\n").unwrap();
    let out = run(&["algebra-info", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));

    let dependent = dir.join("dep.json");
    std::fs::write(
        &dependent,
        r#"{"name":"dep","rep_size":1,"basis":[[[["1","0"]]],[[["2","0"]]]]}"#,
    )
    .unwrap();
    let out = run(&["algebra-info", "--algebra", dependent.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn table_output_for_scan() {
    let out = run(&["--output", "table", "unitarity-scan", "--k", "1", "--h", "0", "--grade", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("CANDIDATE_UNITARY"));
    assert!(text.lines().next().unwrap().contains("verdict"));
}
