use std::process::Command;

use ddeq::cli::{parse_eqfile, print_eqfile};
use serde_json::Value;

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_ddeq")).arg("--json").args(args).output().expect("spawn ddeq");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (out.status.code().unwrap(), json)
}

#[test]
fn solve_shifted_example() {
    let (code, json) = run(&["solve", &fixture_path("example31.eq")]);
    assert_eq!(code, 0);
    assert_eq!(json["status"], "TwoSolutions");
    assert_eq!(json["f0"], "-z");
    assert_eq!(json["solutions"], serde_json::json!(["exp(z)-z", "-exp(z)-z"]));
}

#[test]
fn solve_reports_failed_identity() {
    let (code, json) = run(&["solve", &fixture_path("closed_form_inconsistent.eq")]);
    assert_eq!(code, 2);
    assert_eq!(json["status"], "NoFiniteOrderSolution");
    assert_eq!(json["failed_identity"], "v_consistency");
    assert_eq!(json["residual"], "1");
}

#[test]
fn solve_with_polynomial_coefficients_only() {
    let (code, json) = run(&["solve", &fixture_path("closed_form_poly.eq")]);
    assert_eq!(code, 0);
    assert_eq!(json["solutions"], serde_json::json!(["exp(z)+z", "-exp(z)+z"]));
}

#[test]
fn symbolic_root_and_explicit_c() {
    let dir = std::env::temp_dir().join(format!("ddeq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b2.eq");
    // f0 = z, v fixed by consistency, b = 2 has no rational square root
    std::fs::write(&path, "shift = 1\nn = 2\nL = -2*z*f + z^2\nq = 2\np = 2*z\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, json) = run(&["solve", p]);
    assert_eq!(code, 0);
    assert_eq!(json["constraint"], "c^2=2");
    assert_eq!(json["solutions"][0], "c*exp(z)+z");
    let (code, json) = run(&["solve", p, "--c", "3"]);
    assert_eq!(code, 2);
    assert_eq!(json["failed_identity"], "c_squared_equals_b");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_fixtures() {
    for (file, verdict) in [
        ("lemma21.eq", "NoEntireSolution_Lemma21"),
        ("cubic.eq", "NoTranscendentalFiniteOrder_Lemma24"),
        ("quadratic_q.eq", "ConstrainedN2"),
    ] {
        let (code, json) = run(&["classify", &fixture_path(file)]);
        assert_eq!(code, 0);
        assert_eq!(json["verdict"], verdict, "{file}");
    }
}

#[test]
fn verify_exit_codes() {
    let (code, json) = run(&["verify", &fixture_path("example21.eq"), "--f", "z*exp(z)+z"]);
    assert_eq!(code, 2);
    assert_eq!(json["status"], "NotASolution");
    assert_eq!(json["residual"], "(z^2-1)*exp(2*z)+z^2*exp(z)");
    let (code, json) = run(&["verify", &fixture_path("quadratic_q.eq"), "--f", "-z*exp(z)-z"]);
    assert_eq!(code, 0);
    assert_eq!(json["status"], "Verified");
}

#[test]
fn binding_from_the_command_line() {
    let (code, json) = run(&["--bind", "eta=2*pi*i", "solve", &fixture_path("example31.eq")]);
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["f0"], "-z");
}

#[test]
fn synthesize_emits_a_solvable_equation() {
    let (code, json) = run(&["synthesize", &fixture_path("synth_shifted.eq"), "--emit", "equation"]);
    assert_eq!(code, 0);
    let text = json["equation_file"].as_str().unwrap();
    let file = parse_eqfile(text).unwrap();
    for f in ["exp(z) - z", "-exp(z) - z"] {
        let f = file.session.exppoly(&ddeq::cli::parse(f).unwrap()).unwrap();
        assert!(file.equation.residual(&f).unwrap().is_zero());
    }
}

#[test]
fn numeric_commands() {
    let (code, json) = run(&["zeros", "exp(z)-1", "--r", "7"]);
    assert_eq!(code, 0);
    assert_eq!(json["counts"][0]["count"], 3);
    let (code, json) = run(&["growth", "z*exp(z)", "--radii", "10,20,40,80,160"]);
    assert_eq!(code, 0);
    assert_eq!(json["path"], "TooFewZeros");
    assert_eq!(json["slope"], Value::Null);
    assert_eq!(json["sigma"], 1);
}

#[test]
fn error_codes_are_distinct() {
    let cases: [(&[&str], &str); 6] = [
        (&["zeros", "z^(1/2)", "--r", "1"], "NonIntegerExponent"),
        (&["zeros", "z +", "--r", "1"], "SyntaxError"),
        (&["zeros", "z*eta", "--r", "1"], "UndeclaredParameter"),
        (&["--params", "eta", "zeros", "z*eta", "--r", "1"], "UnboundParameter"),
        (&["growth", "z", "--radii", "1,2"], "TooFewRadii"),
        (&["classify", "/nonexistent.eq"], "IoError"),
    ];
    for (args, code) in cases {
        let (exit, json) = run(args);
        assert_eq!(exit, 1, "{args:?}");
        assert_eq!(json["status"], "error");
        assert_eq!(json["error"]["code"], code, "{args:?}: {json}");
    }
}

#[test]
fn fixtures_round_trip() {
    let dir = format!("{}/fixtures", env!("CARGO_MANIFEST_DIR"));
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let file = parse_eqfile(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let printed = print_eqfile(&file);
        let again = parse_eqfile(&printed).unwrap();
        assert_eq!(again.equation, file.equation, "{}", path.display());
        assert_eq!(print_eqfile(&again), printed);
    }
}
