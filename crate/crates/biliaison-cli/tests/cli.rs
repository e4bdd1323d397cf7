use std::process::{Command, Output};

use biliaison_cli::{ChainFile, CurveFile, Report};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biliaison"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    let report: Report = serde_json::from_slice(&out.stdout).expect("json report");
    (report, out.status.code().unwrap())
}

fn tmp(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("biliaison-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate_exit_codes() {
    let (r, code) = json(&["validate", "twisted-cubic"]);
    assert_eq!(code, 0);
    assert_eq!((r.result["degree"].as_i64(), r.result["genus"].as_i64()), (Some(3), Some(0)));

    let line_and_point = tmp("lp.curve", "ring p=32003 base=field\ngens:\nX\nY*Z\nY*W\n");
    let (r, code) = json(&["validate", &line_and_point]);
    assert_eq!(code, 2);
    assert_eq!(r.result["error"], "NotPureDimensionOrNotLCM");

    let bad = tmp("bad.curve", "ring p=32003 base=field\ngens:\nX+*Y\n");
    let (r, code) = json(&["validate", &bad]);
    assert_eq!(code, 3);
    assert_eq!(r.result["error"], "Parse");

    assert_eq!(run(&["validate", "no-such-curve"]).status.code(), Some(2));
}

#[test]
fn invariants_examples() {
    let (r, _) = json(&["invariants", "skew-lines"]);
    assert_eq!(r.result["rao_dims"], serde_json::json!({ "0": 1 }));
    let (r, _) = json(&["invariants", "twisted-cubic"]);
    assert_eq!(r.result["rao_dims"], serde_json::json!({}));
    let (r, _) = json(&["invariants", "line"]);
    assert_eq!((r.result["degree"].as_i64(), r.result["genus"].as_i64()), (Some(1), Some(0)));
}

#[test]
fn link_and_bilink_emit_valid_curves() {
    let out = tmp("linked.curve", "");
    let code = run(&["link", "twisted-cubic", "--f", "XZ-Y^2", "--g", "YW-Z^2", "-o", &out]).status.code();
    assert_eq!(code, Some(0));
    let emitted = CurveFile::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(run(&["validate", &out]).status.code(), Some(0));
    assert!(emitted.ideal().unwrap().same_as(&CurveFile::parse("ring p=32003 base=field\ngens:\nY\nZ").unwrap().ideal().unwrap()));

    let out = tmp("quartic.curve", "");
    let code = run(&["bilink", "skew-lines", "--q", "XZ+YW", "--hpoly", "X", "--height", "1", "-o", &out]).status.code();
    assert_eq!(code, Some(0));
    let emitted = CurveFile::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let fixture = biliaison_cli::corpus::get("quartic-from-skew-bilink").unwrap();
    assert!(emitted.ideal().unwrap().same_as(&fixture.ideal().unwrap()));
    let (r, _) = json(&["invariants", &out]);
    assert_eq!(r.result["rao_dims"], serde_json::json!({ "1": 1 }));

    assert_eq!(run(&["link", "line", "--f", "Z^2", "--g", "X"]).status.code(), Some(2));
}

#[test]
fn resolutions() {
    let (r, code) = json(&["ntype", "twisted-cubic"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["n_twists"], serde_json::json!([-2, -2, -2]));
    assert_eq!(r.result["p_twists"], serde_json::json!([-3, -3]));
    assert_eq!(r.result["certified"], true);
    let (r, _) = json(&["etype", "line"]);
    assert_eq!(r.result["e_twists"], serde_json::json!([-2]));
    assert_eq!(r.result["f_twists"], serde_json::json!([-1, -1]));
    let lp = tmp("lp2.curve", "ring p=32003 base=field\ngens:\nX\nY*Z\nY*W\n");
    assert_eq!(run(&["ntype", &lp]).status.code(), Some(2));
}

#[test]
fn compare_and_parity() {
    let (r, code) = json(&["compare", "line", "twisted-cubic"]);
    assert_eq!((code, r.status.as_str()), (0, "yes"));
    let (_, code) = json(&["compare", "skew-lines", "twisted-cubic"]);
    assert_eq!(code, 1);
    let (r, code) = json(&["compare", "twisted-cubic", "twisted-cubic"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["decision"]["shift"], 0);
    let (r, _) = json(&["compare", "skew-lines", "quartic-from-skew-bilink"]);
    assert_eq!(r.result["decision"]["shift"], 1);
    let (r, code) = json(&["parity", "skew-lines", "skew-pair-alt"]);
    assert_eq!(code, 0);
    assert!(r.result["odd"]["answer"] == "Yes");
}

#[test]
fn connect_writes_a_replayable_chain() {
    let out = tmp("chain.json", "");
    assert_eq!(run(&["connect", "line", "twisted-cubic", "-o", &out]).status.code(), Some(0));
    let chain: ChainFile = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(!chain.steps.is_empty());
    let (r, code) = json(&["replay", &out]);
    assert_eq!(code, 0);
    assert_eq!(r.result["reached_target"], true);

    let mut broken = chain.clone();
    broken.target = vec!["X".into(), "Z".into()];
    let path = tmp("broken.json", &serde_json::to_string(&broken).unwrap());
    assert_eq!(run(&["replay", &path]).status.code(), Some(2));

    assert_eq!(run(&["connect", "skew-lines", "twisted-cubic"]).status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_for_one_seed() {
    for args in [
        &["connect", "skew-lines", "quartic-from-skew-bilink", "--json", "--seed", "9"][..],
        &["compare", "line", "conic", "--json", "--seed", "4"][..],
        &["corpus", "run", "--json"][..],
    ] {
        let a = run(args).stdout;
        let b = run(args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn dual_number_inputs() {
    let (r, code) = json(&["validate", "line", "--dual-numbers"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["degree"], 1);
    let (_, code) = json(&["compare", "line-dual", "twisted-cubic-dual"]);
    assert_eq!(code, 0);
}

#[test]
fn corpus_fixtures_revalidate() {
    let (r, code) = json(&["corpus", "run"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["failed"], 0);
    assert_eq!(r.result["fixtures"].as_array().unwrap().len(), 16);
    for name in biliaison_cli::corpus::names() {
        let f = biliaison_cli::corpus::get(&name).unwrap();
        assert_eq!(CurveFile::parse(&f.render()).unwrap(), f);
    }
}
