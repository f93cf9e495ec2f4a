use std::path::PathBuf;
use std::process::{Command, Output};

fn manifest(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel).display().to_string()
}

fn stammer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stammer")).args(args).output().expect("binary runs")
}

fn text(b: &[u8]) -> String {
    String::from_utf8(b.to_vec()).unwrap()
}

fn expect_error(args: &[&str], code: i32, stderr: &str) {
    let out = stammer(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert_eq!(text(&out.stderr), format!("error: {stderr}\n"), "{args:?}");
    assert!(out.stdout.is_empty(), "{args:?}");
}

#[test]
fn malformed_automaton() {
    let f = manifest("tests/data/malformed.aut");
    expect_error(
        &["gen", "--automaton", &f],
        1,
        &format!("ParseError: {f}:5: expected `delta <state> <digit> <state>`"),
    );
}

#[test]
fn partial_transition_function() {
    let f = manifest("tests/data/partial.aut");
    expect_error(&["gen", "--automaton", &f], 1, &format!("ParseError: {f}:7: transition (b, 0) is missing"));
}

#[test]
fn malformed_morphism() {
    let f = manifest("tests/data/bad-map.mor");
    expect_error(&["gen", "--morphism", &f], 1, &format!("ParseError: {f}:2: expected `map <letter> -> <word>`"));
}

#[test]
fn erasing_generator() {
    let f = manifest("tests/data/erasing.mor");
    expect_error(
        &["gen", "--morphism", &f],
        1,
        "NotProlongable: morphism is not prolongable: letter \"0\" does not start a non-trivial fixed point",
    );
}

#[test]
fn erasing_coding_with_finite_image() {
    let (f, c) = (manifest("data/fib.mor"), manifest("tests/data/erase-all.mor"));
    expect_error(
        &["gen", "--morphism", &f, "--coding", &c],
        1,
        &format!(
            "FiniteImage: {c}: morphic image is finite: no surviving letter of fixed-point(0) in positions 50000..100000"
        ),
    );
}

#[test]
fn ambiguous_floor() {
    expect_error(
        &[
            "gen",
            "--kind",
            "beta",
            "--beta-poly",
            "1,0,-1,-1",
            "--xi",
            "1/2",
            "--count",
            "200",
            "--precision-bits",
            "16",
        ],
        1,
        "AmbiguousFloor: floor of digit 37 stays ambiguous at 16 bits of precision",
    );
}

#[test]
fn missing_file_and_bad_flags() {
    let f = manifest("tests/data/nope.aut");
    let out = stammer(&["gen", "--automaton", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).starts_with(&format!("error: Io: {f}: ")));
    expect_error(
        &["gen", "--kind", "b_adic", "--xi", "3/2"],
        1,
        "OutOfRange: value out of range: 3/2 is not in (0, 1)",
    );
    expect_error(
        &["gen", "--kind", "b_adic", "--xi", "1/3", "--automaton", &manifest("data/thue-morse.aut")],
        1,
        "InvalidArgument: give exactly one of --automaton, --morphism, --kind",
    );
    expect_error(
        &["complexity", "--kind", "b_adic", "--xi", "1/3", "--nmax", "10", "--window", "5"],
        1,
        "InvalidArgument: --window must be at least 2·nmax = 20",
    );
    expect_error(
        &["witness", "--kind", "b_adic", "--xi", "1/3", "--method", "morphic"],
        1,
        "InvalidArgument: --method morphic needs --morphism without --coding",
    );
}

#[test]
fn documented_examples() {
    let out = stammer(&["gen", "--automaton", &manifest("data/thue-morse.aut"), "--count", "13"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), "0110100110010\n");

    let out = stammer(&["complexity", "--morphism", &manifest("data/fib.mor"), "--nmax", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<Vec<String>> =
        text(&out.stdout).lines().skip(1).map(|l| l.split('\t').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 30);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r, &[(i + 1).to_string(), (i + 2).to_string(), "true".to_string()]);
    }

    let out = stammer(&["witness", "--morphism", &manifest("data/ternary.mor")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).starts_with("error: NotApplicable: "));
}

#[test]
fn no_repeat_is_an_analytic_negative() {
    let out = stammer(&["stammer", "--automaton", &manifest("data/thue-morse.aut"), "--n", "1..6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).starts_with("error: NoRepeat: "));
    assert_eq!(text(&out.stdout).lines().count(), 5);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let fib = manifest("data/fib.mor");
    let jobs: Vec<Vec<&str>> = vec![
        vec!["witness", "--morphism", &fib, "--format", "json"],
        vec!["stammer", "--morphism", &fib, "--n", "5..40", "--format", "json"],
        vec!["report", "--morphism", &fib, "--count", "8"],
        vec!["report", "--kind", "hensel", "--xi", "1/3", "--prime", "2", "--count", "4", "--hunt-len", "200"],
        vec!["approx", "--kind", "beta", "--beta-poly", "1,0,-1,-1", "--xi", "1/2", "--r", "2", "--s", "5"],
        vec!["gen", "--kind", "pattern", "--k", "3", "--pattern", "1", "--count", "30", "--format", "json"],
    ];
    for args in jobs {
        let (a, b) = (stammer(&args), stammer(&args));
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", text(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn pattern_reports_carry_the_convention() {
    let out = stammer(&["complexity", "--kind", "pattern", "--k", "2", "--pattern", "11", "--nmax", "4"]);
    let s = text(&out.stdout);
    assert!(s.starts_with("# occurrences are overlapping"));
    assert_eq!(s.lines().nth(1), Some("n\tp\tstable"));
}

#[test]
fn report_on_a_periodic_source() {
    let out = stammer(&["report", "--kind", "b_adic", "--xi", "1/3", "--base", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["applicable"], false);
    assert_eq!(v["periodicity"]["period"]["period"], 1);
}

#[test]
fn classify_examples() {
    for (poly, kind) in [("1,-1,-1", "Pisot"), ("1,-2", "Pisot"), ("1,-1,-1,-1,1", "Salem"), ("1,0,-2", "Neither")] {
        let out = stammer(&["classify", "--poly", poly]);
        let s = text(&out.stdout);
        assert_eq!(s.lines().nth(1).unwrap().split('\t').nth(1), Some(kind), "{poly}: {s}");
    }
}
