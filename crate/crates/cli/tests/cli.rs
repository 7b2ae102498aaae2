use std::process::{Command, Output};

fn overrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_overrank"))
        .args(args)
        .env_remove("OVERRANK_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_passing_identity_as_json() {
    let out = overrank(&["verify", "--id", "thm3.R01.d2", "--order", "40", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["id"], "thm3.R01.d2");
    assert_eq!(v["pass"], true);
    assert_eq!(v["checked_order"], 40);
    assert!(v["first_mismatch"].is_null());
    for key in ["runtime_ms", "notes"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_unknown_id_exits_two() {
    let out = overrank(&["verify", "--id", "bogus", "--order", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(overrank(&["verify", "--order", "10"]).status.code(), Some(2));
    assert_eq!(overrank(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(overrank(&["suite", "--json", "--csv"]).status.code(), Some(2));
    assert_eq!(
        overrank(&["series", "--name", "nope", "--order", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn series_rows() {
    let out = overrank(&["series", "--name", "pbar", "--order", "5", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "exponent,numerator,denominator");
    assert_eq!(&lines[1..], ["0,1,1", "1,2,1", "2,4,1", "3,8,1", "4,14,1"]);
}

#[test]
fn series_names_parse() {
    for name in [
        "nbar:1,5",
        "rankdiff-oracle:thm5.R02.d2",
        "rankdiff-formula:5:1:2:0",
        "sbar:1,5",
    ] {
        let out = overrank(&["series", "--name", name, "--order", "12", "--csv"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(stdout(&out).lines().count() >= 13, "{name}");
    }
    let zero = stdout(&overrank(&[
        "series",
        "--name",
        "rankdiff-oracle:thm5.R02.d2",
        "--order",
        "8",
        "--csv",
    ]));
    assert!(zero.lines().skip(1).all(|l| l.ends_with(",0,1")));
}

#[test]
fn count_table() {
    let out = overrank(&["count", "--n", "4", "--mod", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,s=0,s=1,s=2");
    assert_eq!(lines.len(), 6);
    let last: u64 = lines[5].split(',').skip(1).map(|c| c.parse::<u64>().unwrap()).sum();
    assert_eq!(last, 14);
}

#[test]
fn list_shows_anchors() {
    let text = stdout(&overrank(&["list"]));
    assert!(text.lines().count() >= 45);
    assert!(text.lines().any(|l| l.starts_with("thm5.R02.d2")));
    assert!(text.lines().any(|l| l.starts_with("lemma2.1@ell=3")));
}

#[test]
fn suite_json_is_byte_identical_without_timing() {
    let args = ["suite", "--order-scale", "0.25", "--json", "--no-timing"];
    let a = overrank(&args);
    let b = overrank(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.as_array().unwrap().len() >= 45);
}

#[test]
fn suite_csv() {
    let out = overrank(&["suite", "--order-scale", "0.25", "--csv", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("id,pass,checked_order"));
    assert!(text.contains("\n\"brackets@ell=3,m=1\",true,"));
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}

#[test]
fn seed_override_is_recorded() {
    let out = Command::new(env!("CARGO_BIN_EXE_overrank"))
        .args(["verify", "--id", "lemma3.6@samples", "--order", "60", "--json"])
        .env("OVERRANK_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("seed 7"));
}
