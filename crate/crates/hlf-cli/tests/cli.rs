//! End-to-end tests of the `hlf` binary: exit codes, report determinism,
//! and the canonical file formats crossing the process boundary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn hlf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_fixture(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

const INTEGER_RING: &str = r#"{"dim":1,"pieces":[{"box":[[null,-1]],"rule":{"kind":"const","value":"+inf"}},{"box":[[0,null]],"rule":{"kind":"const","value":0}}]}"#;
const UNIT_NET: &str =
    r#"{"dim":1,"pieces":[{"box":[[null,null]],"rule":{"kind":"const","value":0}}]}"#;
const TWO_TERM_ELEMENT: &str =
    r#"{"dim":1,"prime":2,"terms":[{"den":1,"index":[2],"num":1},{"den":1,"index":[5],"num":8}]}"#;

#[test]
fn classify_exit_codes_follow_the_verdict() {
    let net = write_fixture("ring.json", INTEGER_RING);
    let ok = hlf(&[
        "classify",
        "--net",
        net.to_str().unwrap(),
        "--n",
        "2",
        "--r",
        "0",
        "--kind",
        "compactoid",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("verdict: true"));

    let unit = write_fixture("unit.json", UNIT_NET);
    let false_verdict = hlf(&[
        "classify",
        "--net",
        unit.to_str().unwrap(),
        "--n",
        "2",
        "--r",
        "1",
        "--kind",
        "lattice",
    ]);
    assert_eq!(false_verdict.status.code(), Some(3));
    let text = stdout(&false_verdict);
    assert!(text.contains("verdict: false"));
    assert!(text.contains("witness:"));
    assert!(text.contains("corroboration:"));
}

#[test]
fn malformed_input_exits_one() {
    let broken = write_fixture("broken.json", "{\"dim\":1,");
    let out = hlf(&[
        "classify",
        "--net",
        broken.to_str().unwrap(),
        "--n",
        "2",
        "--r",
        "0",
        "--kind",
        "lattice",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let gap = write_fixture(
        "gap.json",
        r#"{"dim":1,"pieces":[{"box":[[0,null]],"rule":{"kind":"const","value":0}}]}"#,
    );
    let out = hlf(&[
        "classify",
        "--net",
        gap.to_str().unwrap(),
        "--n",
        "2",
        "--r",
        "0",
        "--kind",
        "lattice",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid partition"));
}

#[test]
fn seminorm_modes_agree_and_mismatch_exits_four() {
    let net = write_fixture(
        "twopoint.json",
        r#"{"dim":1,"pieces":[{"box":[[null,1]],"rule":{"kind":"const","value":"-inf"}},{"box":[[2,2]],"rule":{"kind":"const","value":1}},{"box":[[3,4]],"rule":{"kind":"const","value":"-inf"}},{"box":[[5,5]],"rule":{"kind":"const","value":0}},{"box":[[6,null]],"rule":{"kind":"const","value":"-inf"}}]}"#,
    );
    let element = write_fixture("elem.json", TWO_TERM_ELEMENT);
    let padic = hlf(&[
        "seminorm",
        "--net",
        net.to_str().unwrap(),
        "--element",
        element.to_str().unwrap(),
        "--mode",
        "padic",
    ]);
    let gauge = hlf(&[
        "seminorm",
        "--net",
        net.to_str().unwrap(),
        "--element",
        element.to_str().unwrap(),
        "--mode",
        "gauge",
    ]);
    assert_eq!(padic.status.code(), Some(0));
    assert!(stdout(&padic).contains("exponent: 1"));
    // padic and gauge must print the identical value lines
    assert_eq!(
        stdout(&padic).replace("mode: padic", ""),
        stdout(&gauge).replace("mode: gauge", "")
    );

    // +inf-valued nets cannot back a seminorm: mode mismatch
    let ring = write_fixture("ring2.json", INTEGER_RING);
    let mismatch = hlf(&[
        "seminorm",
        "--net",
        ring.to_str().unwrap(),
        "--element",
        element.to_str().unwrap(),
        "--mode",
        "padic",
    ]);
    assert_eq!(mismatch.status.code(), Some(4));
}

#[test]
fn zero_element_prints_zero_value() {
    let net = write_fixture("unit2.json", UNIT_NET);
    let zero = write_fixture("zero.json", r#"{"dim":1,"prime":2,"terms":[]}"#);
    let out = hlf(&[
        "seminorm",
        "--net",
        net.to_str().unwrap(),
        "--element",
        zero.to_str().unwrap(),
        "--mode",
        "padic",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("value: 0"));
    assert!(text.contains("exponent: -inf"));
}

#[test]
fn archimedean_mode_handles_infinite_radii() {
    let rho = write_fixture(
        "rho.json",
        r#"{"dim":1,"pieces":[{"box":[[null,null]],"rho":"inf"}]}"#,
    );
    let element = write_fixture("elem2.json", TWO_TERM_ELEMENT);
    let out = hlf(&[
        "seminorm",
        "--net",
        rho.to_str().unwrap(),
        "--element",
        element.to_str().unwrap(),
        "--mode",
        "archimedean",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("value: 0/1"));

    let bad = write_fixture(
        "rho_bad.json",
        r#"{"dim":1,"pieces":[{"box":[[null,null]],"rho":{"num":-1,"den":1}}]}"#,
    );
    let out = hlf(&[
        "seminorm",
        "--net",
        bad.to_str().unwrap(),
        "--element",
        element.to_str().unwrap(),
        "--mode",
        "archimedean",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn member_exit_codes() {
    let net = write_fixture("unit3.json", UNIT_NET);
    let inside = write_fixture("inside.json", TWO_TERM_ELEMENT);
    assert_eq!(
        hlf(&[
            "member",
            "--net",
            net.to_str().unwrap(),
            "--element",
            inside.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    let outside = write_fixture(
        "outside.json",
        r#"{"dim":1,"prime":2,"terms":[{"den":2,"index":[0],"num":1}]}"#,
    );
    assert_eq!(
        hlf(&[
            "member",
            "--net",
            net.to_str().unwrap(),
            "--element",
            outside.to_str().unwrap()
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn dual_pair_and_polar() {
    let x = write_fixture(
        "x.json",
        r#"{"dim":2,"prime":3,"terms":[{"den":1,"index":[1,0],"num":1}]}"#,
    );
    let y = write_fixture(
        "y.json",
        r#"{"dim":2,"prime":3,"terms":[{"den":1,"index":[-1,0],"num":1}]}"#,
    );
    let out = hlf(&[
        "dual",
        "pair",
        "--x",
        x.to_str().unwrap(),
        "--y",
        y.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("pair: 1/1"));

    let unit = write_fixture("unit4.json", UNIT_NET);
    let out = hlf(&["dual", "polar", "--net", unit.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(r#""value":1"#));
}

#[test]
fn dual_polar_file_round_trips_through_the_cli() {
    let ring = write_fixture("ring3.json", INTEGER_RING);
    let polar_path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("polar_out.json");
    let out = hlf(&[
        "dual",
        "polar",
        "--net",
        ring.to_str().unwrap(),
        "--out",
        polar_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // applying polar twice through files restores the original bytes
    let double_path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("polar_twice.json");
    let out = hlf(&[
        "dual",
        "polar",
        "--net",
        polar_path.to_str().unwrap(),
        "--out",
        double_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&double_path).unwrap().trim(),
        INTEGER_RING
    );
}

#[test]
fn dual_reconstruct_is_byte_identical() {
    let element = write_fixture("elem3.json", TWO_TERM_ELEMENT);
    let out = hlf(&[
        "dual",
        "reconstruct",
        "--representer",
        element.to_str().unwrap(),
        "--window",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), TWO_TERM_ELEMENT);
}

#[test]
fn convolve_prints_the_table() {
    let ring = write_fixture("ring4.json", INTEGER_RING);
    let out = hlf(&[
        "convolve",
        "--net1",
        ring.to_str().unwrap(),
        "--net2",
        ring.to_str().unwrap(),
        "--window",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(-1): +inf"));
    assert!(text.contains("(0): 0"));
    assert!(text.contains("(2): 0"));
}

const PROPS_CONFIG: &str = r#"{"seed":42,"cases":15,"window":8,"dims":[1,2],"primes":[2,3,5],"shapes":[[2,0],[2,1],[3,0],[3,1],[3,2]]}"#;

#[test]
fn props_reports_are_deterministic() {
    let config = write_fixture("props.json", PROPS_CONFIG);
    let first = hlf(&["props", "--config", config.to_str().unwrap()]);
    let second = hlf(&["props", "--config", config.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(
        first.stdout, second.stdout,
        "reports must be byte-identical"
    );
    let text = stdout(&first);
    assert!(text.contains("verdict: pass"));
    assert!(text.contains("rejection-rate: 0/"));
}

#[test]
fn sabotaged_oracle_fails_with_replay() {
    let config = write_fixture(
        "sabotage.json",
        r#"{"seed":42,"cases":15,"window":8,"dims":[1],"primes":[2],"shapes":[[2,0],[2,1]],"sabotage":"gauge-sup"}"#,
    );
    let out = hlf(&["props", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("counterexample:"));
    assert!(text.contains("replay: hlf props --config"));

    // the replay command reproduces the same counterexample
    let replay = hlf(&[
        "props",
        "--config",
        config.to_str().unwrap(),
        "--only",
        "gauge-sup",
    ]);
    assert_eq!(replay.status.code(), Some(2));
    let needle = text
        .lines()
        .find(|l| l.starts_with("counterexample:"))
        .unwrap()
        .to_string();
    assert!(stdout(&replay).contains(&needle));
}

#[test]
fn invalid_configs_exit_one() {
    let zero = write_fixture(
        "zero_cases.json",
        r#"{"seed":1,"cases":0,"window":8,"dims":[1],"primes":[2],"shapes":[[2,0]]}"#,
    );
    assert_eq!(
        hlf(&["props", "--config", zero.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );

    let unknown = write_fixture(
        "unknown_sabotage.json",
        r#"{"seed":1,"cases":5,"window":8,"dims":[1],"primes":[2],"shapes":[[2,0]],"sabotage":"nope"}"#,
    );
    assert_eq!(
        hlf(&["props", "--config", unknown.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}
