use std::process::{Command, Output};

use stable_pairs::exactalg::QPoly;
use stable_pairs::wallcross::{pair_moduli, AlphaBound, ComputationTrace, Euler};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stable-pairs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

#[test]
fn wall_table_plain() {
    let text = ok(&["walls", "5", "1"]);
    let alphas: Vec<&str> = text.lines().skip(2).map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(alphas, ["14", "9", "4", "3/2"]);
    assert!(text.contains("3/2\t(1,(3,0)) + (0,(2,1))"));
    assert!(ok(&["walls", "1", "1"]).contains("no walls"));
}

#[test]
fn wall_table_latex() {
    let text = ok(&["walls", "4", "3", "--format", "latex"]);
    assert!(text.starts_with("\\begin{tabular}{|l|p{6cm}|}"));
    assert!(text.contains("9&\n$(1,(3,0))\\oplus (0,(1,3))$\\\\"));
    assert!(text.contains("1&\n$(1,(2,1))\\oplus (0,(1,1))\\oplus (0,(1,1))$\\\\"));
    assert_eq!(text.matches("\n1&\n").count(), 3);
    let half = ok(&["walls", "5", "1", "--format", "latex"]);
    assert!(half.contains("$\\frac{3}{2}$&\n$(1,(3,0))\\oplus (0,(2,1))$"));
}

#[test]
fn wall_table_json() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["walls", "5", "-1", "--format", "json"])).unwrap();
    let alphas: Vec<_> = v.as_array().unwrap().iter().map(|w| w["alpha"].as_str().unwrap()).collect();
    assert_eq!(alphas, ["6", "1"]);
}

#[test]
fn sheaf_polynomials_in_latex() {
    let m4 = ok(&["poincare", "4", "1", "sheaf", "--format", "latex"]);
    assert!(m4.contains("(1+q+4q^2+4q^3+4q^4+q^5+q^6)\\cdot \\frac{1-q^{12}}{1-q}"), "{m4}");
    let m5 = ok(&["poincare", "5", "1", "sheaf", "--format", "latex"]);
    assert!(
        m5.contains(
            "(1+q+4q^2+7q^3+13q^4+19q^5+23q^6+19q^7+13q^8+7q^9+4q^{10}+q^{11}+q^{12})\\cdot \\frac{1-q^{15}}{1-q}"
        ),
        "{m5}"
    );
}

#[test]
fn sheaf_polynomial_plain_and_json() {
    let text = ok(&["poincare", "4", "1", "sheaf"]);
    assert!(text.starts_with("P(M(4,1)) = (1 + q + 4q^2 + 4q^3 + 4q^4 + q^5 + q^6) * (1 - q^12)/(1 - q)"));
    assert!(text.ends_with("chi(M(4,1)) = 192\n"));
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["poincare", "4", "1", "sheaf", "--format", "json"])).unwrap();
    assert_eq!(v["factored"]["k"], 12);
    assert_eq!(v["euler"], 192);
    assert_eq!(v["poincare"].as_array().unwrap().len(), 18);
}

#[test]
fn euler_values() {
    assert_eq!(ok(&["euler", "4", "3", "0+"]).trim(), "576");
    assert_eq!(ok(&["euler", "4", "1", "sheaf"]).trim(), "192");
    assert_eq!(ok(&["euler", "5", "-1"]).trim(), "822");
    assert_eq!(ok(&["euler", "4", "3", "inf"]).trim(), "1080");
    assert_eq!(ok(&["euler", "4", "3", "7"]).trim(), "990");
}

#[test]
fn quoted_value_warning() {
    let out = run(&["euler", "5", "1", "sheaf"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1695");
    assert!(stderr(&out).contains("1675"), "{}", stderr(&out));
    let quiet = run(&["euler", "4", "1", "sheaf"]);
    assert!(stderr(&quiet).is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["euler", "5", "1", "sheaf", "--format", "json"])).unwrap();
    assert!(v["warning"].as_str().unwrap().contains("1675"));
}

#[test]
fn euler_trace_lists_strata() {
    let text = ok(&["euler", "4", "3", "--trace"]);
    for needle in ["B-A: 0", "C (distinct lines): -90", "C (same line): -36", "A-C (alpha > 1): 432", "A-C (alpha < 1): 306", "term -252"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn exit_statuses() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    let out = run(&["poincare", "6", "1", "sheaf"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("projective-bundle regime"));
    assert_eq!(code(&["poincare", "4", "3"]), 3);
    assert_eq!(code(&["euler", "6", "-5"]), 3);
    assert_eq!(code(&["walls", "0", "1"]), 2);
    assert_eq!(code(&["euler", "4", "3", "5"]), 2);
    assert_eq!(code(&["euler", "4", "3", "0.5"]), 2);
    assert_eq!(code(&["euler", "4", "3", "-1"]), 2);
    assert_eq!(code(&["walls", "4"]), 2);
}

#[test]
fn max_degree_override() {
    let out = run(&["--max-degree", "6", "euler", "6", "-5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1224");
    assert!(stderr(&out).contains("UNVERIFIED"));
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["--max-degree", "6", "euler", "6", "-5", "--format", "json"])).unwrap();
    assert_eq!(v["verified"], false);
}

#[test]
fn trace_json_round_trips() {
    let text = ok(&["trace", "5", "1"]);
    let parsed: ComputationTrace<QPoly> = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed, pair_moduli::<QPoly>(5, 1, &AlphaBound::ZeroPlus).unwrap());
    assert_eq!(parsed.resum(), parsed.result);

    let text = ok(&["trace", "4", "3", "0+", "--mode", "euler"]);
    let parsed: ComputationTrace<Euler> = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed.result.0, 576.into());
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text.trim_end());
}
