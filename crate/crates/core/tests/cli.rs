use std::process::Command;

use serde_json::Value;

fn fractopo(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fractopo"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf8");
    let stderr = String::from_utf8(out.stderr).expect("utf8");
    let json = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).expect("stdout is JSON")
    };
    (out.status.code().unwrap_or(-1), json, stderr)
}

#[test]
fn shift_analyze_counts_components() {
    let (code, v, _) = fractopo(&["shift-analyze", "--p", "3", "--eps", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["components"], 9);
    assert_eq!(v["n"], 2);
    let (_, v, _) = fractopo(&["shift-analyze", "--p", "3", "--eps", "2.5"]);
    assert_eq!(v["eps"], "5/2");
    assert_eq!(v["components"], 1);
}

#[test]
fn diag_analyze_certificate() {
    let (code, v, _) = fractopo(&["diag-analyze", "--p", "3", "--eps", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "Connected");
    let (_, v, _) = fractopo(&["diag-analyze", "--p", "3", "--eps", "5"]);
    assert_eq!(v["verdict"], "Disconnected");
    assert!(v["separation"].is_array());
    let (_, v, _) = fractopo(&["diag-analyze", "--p", "3", "--eps", "-5"]);
    assert_eq!(v["mirrored"], true);
}

#[test]
fn qp_check_modes() {
    let (code, v, _) = fractopo(&["qp-check", "--p", "3", "--eps", "2/7"]);
    assert_eq!(code, 0);
    assert_eq!(v["quasi_periodic"], true);
    assert_eq!(v["certified"], true);
    let (_, v, _) = fractopo(&[
        "qp-check",
        "--p",
        "3",
        "--eps",
        "1.4142135623730951",
        "--demo-float",
    ]);
    assert_eq!(v["quasi_periodic"], false);
    assert_eq!(v["certified"], false);
}

#[test]
fn patch_and_render_files() {
    let dir = tempfile::tempdir().unwrap();
    let patch = dir.path().join("d2.txt");
    let (code, v, _) = fractopo(&[
        "qp-patch",
        "--p",
        "3",
        "--eps",
        "1/2",
        "--k",
        "2",
        "--out",
        patch.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["points"], 81);
    let text = std::fs::read_to_string(&patch).unwrap();
    assert_eq!(text.lines().count(), 81);

    let img = dir.path().join("t.ppm");
    let args = [
        "shift-render",
        "--p",
        "3",
        "--eps",
        "3",
        "--depth",
        "4",
        "--size",
        "81x27",
        "--out",
        img.to_str().unwrap(),
    ];
    let (code, v, _) = fractopo(&args);
    assert_eq!(code, 0);
    assert_eq!(v["flood_components"], 3);
    let first = std::fs::read(&img).unwrap();
    assert!(first.starts_with(b"P6\n81 27\n255\n"));
    fractopo(&args);
    assert_eq!(std::fs::read(&img).unwrap(), first);

    let img = dir.path().join("d.ppm");
    let (code, _, _) = fractopo(&[
        "diag-render",
        "--p",
        "3",
        "--eps",
        "4",
        "--depth",
        "4",
        "--size",
        "81x81",
        "--out",
        img.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read(&img).unwrap().len(),
        "P6\n81 81\n255\n".len() + 81 * 81 * 3
    );
    assert_eq!(
        std::fs::read_dir(dir.path()).unwrap().count(),
        3,
        "no temporary files left behind"
    );
}

#[test]
fn oracle_suites_pass() {
    for suite in ["strips", "diag", "census"] {
        let (code, v, _) = fractopo(&["oracle", "--suite", suite]);
        assert_eq!(code, 0, "{suite}: {v}");
        assert_eq!(v["failures"], 0);
    }
}

#[test]
fn errors_are_json_on_stderr() {
    for args in [
        &["shift-analyze", "--p", "2", "--eps", "1"][..],
        &["shift-analyze", "--p", "3", "--eps", "abc"],
        &["qp-check", "--p", "3", "--eps", "nan", "--demo-float"],
        &[
            "shift-render",
            "--p",
            "3",
            "--eps",
            "1",
            "--size",
            "12",
            "--out",
            "x.ppm",
        ],
        &["oracle", "--suite", "nothing"],
    ] {
        let (code, v, stderr) = fractopo(args);
        assert_ne!(code, 0, "{args:?}");
        assert!(v.is_null());
        let e: Value = serde_json::from_str(&stderr).expect("stderr is JSON");
        assert!(e["error"]["kind"].is_string() && e["error"]["message"].is_string());
    }
}

#[test]
fn exact_eps_rejects_exponent_notation() {
    let (code, _, stderr) = fractopo(&["qp-check", "--p", "3", "--eps", "1e-3"]);
    assert_ne!(code, 0);
    assert!(stderr.contains("error"));
}
