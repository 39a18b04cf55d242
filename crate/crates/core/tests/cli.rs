use std::process::{Command, Output};

fn pgonal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgonal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn passing_runs_exit_zero() {
    for args in [
        &["report", "--p", "3", "--beta", "4"][..],
        &["klein", "--beta-r", "2", "--beta-rs", "2"],
        &["characters", "--p", "5"],
        &["isogeny", "--p", "5"],
        &["genera", "--p", "7", "--beta", "3", "--format", "json"],
    ] {
        let out = pgonal(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn text_report_content() {
    let out = pgonal(&["report", "--p", "5", "--beta", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("m = 3"));
    assert!(text.contains("g(Z) = 17"));
    assert!(text.contains("Phi_i = 8"));
    assert!(text.contains("sum of squares 80"));
    assert!(text.ends_with("verdict: PASS\n"));
}

#[test]
fn usage_errors_exit_two() {
    let out = pgonal(&["report", "--p", "4", "--beta", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("p must be prime"));
    assert_eq!(code(&pgonal(&["report", "--p", "3", "--beta", "2"])), 2);
    assert_eq!(code(&pgonal(&["report", "--p", "17", "--beta", "3"])), 2);
    assert_eq!(code(&pgonal(&["report", "--p", "2", "--beta", "3"])), 2);
    assert_eq!(code(&pgonal(&["klein", "--beta-r", "0", "--beta-rs", "3"])), 2);
    assert_eq!(code(&pgonal(&["report", "--p", "3"])), 2);
    assert_eq!(code(&pgonal(&["report", "--beta", "3"])), 2);
    assert_eq!(code(&pgonal(&["report", "--p", "3", "--beta", "3", "--format", "xml"])), 2);
}

#[test]
fn monodromy_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("pgonal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(
        &good,
        "# p = 3, four branch points\np=3 beta=4\n(1,2,3)(4,5,6)\n(1,2,3)(4,5,6)\n(1,3,5)(2,4,6)\n(1,6,5)(2,4,3)\n",
    )
    .unwrap();
    let out = pgonal(&["genera", "--p", "3", "--monodromy", good.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["genera"]["g_z"], "5");

    // Product is not 1.
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "p=3 beta=3\n(1,2,3)(4,5,6)\n(1,2,3)(4,5,6)\n(1,3,5)(2,4,6)\n").unwrap();
    assert_eq!(code(&pgonal(&["genera", "--p", "3", "--monodromy", bad.to_str().unwrap()])), 2);
    let missing = dir.join("missing.txt");
    assert_eq!(code(&pgonal(&["genera", "--p", "3", "--monodromy", missing.to_str().unwrap()])), 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("pgonal-out-{}.json", std::process::id()));
    let out = pgonal(&["klein", "--beta-r", "1", "--beta-rs", "2", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["verdict"], "pass");
    assert_eq!(json["klein_genera"]["dim_prym"], "1");
    std::fs::remove_file(&path).ok();
}
