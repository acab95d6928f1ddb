use std::process::{Command, Output};

use serde_json::Value;
use weylpoly::{character_demazure, AlgebraId, FormalSum, RootSystem, Weight};

fn weylpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylpoly"))
        .args(args)
        .env_remove("WEYLPOLY_MAX_RANK")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

fn coeff_at(v: &Value, weight: &[i64]) -> Option<i64> {
    v["terms"].as_array()?.iter().find_map(|t| {
        let w: Vec<i64> = t["weight"]
            .as_array()?
            .iter()
            .map(|x| x.as_i64().unwrap())
            .collect();
        (w == weight).then(|| t["coeff"].as_i64().unwrap())
    })
}

#[test]
fn char_a1_level_two() {
    let o = weylpoly(&["char", "--algebra", "A1", "--weight", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("terms: 3"), "{out}");
    assert!(out.contains("dimension: 3"), "{out}");
}

#[test]
fn char_a2_adjoint_json() {
    let o = weylpoly(&[
        "char",
        "--algebra",
        "A2",
        "--weight",
        "1,1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(coeff_at(&v, &[0, 0]), Some(2));
    assert_eq!(coeff_at(&v, &[1, 1]), Some(1));
    assert_eq!(v["dimension"], 8);
    assert_eq!(v["support_size"], 7);
}

#[test]
fn char_methods_agree() {
    for alg in ["A3", "C2", "G2"] {
        let w = if alg == "A3" { "1,0,1" } else { "1,1" };
        let a = json(&weylpoly(&[
            "char",
            "--algebra",
            alg,
            "--weight",
            w,
            "--format",
            "json",
        ]));
        let b = json(&weylpoly(&[
            "char",
            "--algebra",
            alg,
            "--weight",
            w,
            "--method",
            "weyl",
            "--format",
            "json",
        ]));
        assert_eq!(a["terms"], b["terms"], "{alg}");
    }
}

#[test]
fn json_round_trips_through_library() {
    let o = weylpoly(&[
        "char",
        "--algebra",
        "A2",
        "--weight",
        "2,1",
        "--format",
        "json",
    ]);
    let parsed = FormalSum::from_json(2, &json(&o)).unwrap();
    let rs = RootSystem::new(AlgebraId::a(2));
    assert_eq!(
        parsed,
        character_demazure(&rs, &Weight::from([2, 1])).unwrap()
    );
}

#[test]
fn non_dominant_weight_is_usage_error() {
    let o = weylpoly(&["char", "--algebra", "A2", "--weight", "-1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--weight"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn bad_inputs_are_usage_errors() {
    let cases: &[&[&str]] = &[
        &["char", "--algebra", "B3", "--weight", "1,0,0"],
        &["char", "--algebra", "A2", "--weight", "1"],
        &["char", "--algebra", "A2", "--weight", "1,x"],
        &[
            "apply",
            "--algebra",
            "A2",
            "--expr",
            "D3",
            "--weight",
            "1,0",
        ],
        &[
            "apply",
            "--algebra",
            "A2",
            "--expr",
            "Dx",
            "--weight",
            "1,0",
        ],
        &["verify", "theorem", "--algebra", "G2"],
        &["verify", "theorem", "--max-rank", "9"],
        &[
            "polytope-sum",
            "--algebra",
            "A2",
            "--weight",
            "1,0",
            "--method",
            "nope",
        ],
        &["frobnicate"],
    ];
    for args in cases {
        let o = weylpoly(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn polytope_sum_examples() {
    let o = weylpoly(&[
        "polytope-sum",
        "--algebra",
        "A2",
        "--weight",
        "1,0",
        "--method",
        "demazure",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("terms: 3") && out.contains("AGREES"), "{out}");

    let o = weylpoly(&[
        "polytope-sum",
        "--algebra",
        "A2",
        "--weight",
        "1,1",
        "--method",
        "cones",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["terms"].as_array().unwrap().len(), 7);
    assert!(v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .all(|t| t["coeff"] == 1));

    let o = weylpoly(&[
        "polytope-sum",
        "--algebra",
        "C2",
        "--weight",
        "1,1",
        "--method",
        "demazure",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn g2_operator_reports_difference() {
    let o = weylpoly(&[
        "polytope-sum",
        "--algebra",
        "G2",
        "--weight",
        "1,0",
        "--method",
        "demazure",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("DIFFERS"));
}

#[test]
fn expand_a2_adjoint() {
    let o = weylpoly(&[
        "expand",
        "--algebra",
        "A2",
        "--weight",
        "1,1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 2);
    assert!(coeffs.iter().all(|c| c["coeff"] == 1));
}

#[test]
fn apply_operator_word() {
    let o = weylpoly(&[
        "apply",
        "--algebra",
        "A1",
        "--expr",
        "D1",
        "--weight",
        "-3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(coeff_at(&v, &[1]), Some(-1));
    assert_eq!(coeff_at(&v, &[-1]), Some(-1));
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);

    let o = weylpoly(&[
        "apply",
        "--algebra",
        "A1",
        "--expr",
        "D1",
        "--weight",
        "-1",
        "--format",
        "json",
    ]);
    assert!(json(&o)["terms"].as_array().unwrap().is_empty());
}

#[test]
fn verify_lemma_a4() {
    let o = weylpoly(&["verify", "lemma", "--algebra", "A4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("PASS lemma A4") && out.contains("terms=120"),
        "{out}"
    );
}

#[test]
fn verify_theorem_a3() {
    let o = weylpoly(&["verify", "theorem", "--algebra", "A3", "--max-level", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("summary: theorem 20/20 passed"), "{out}");
}

#[test]
fn verify_rank2() {
    let o = weylpoly(&["verify", "rank2", "--algebra", "C2", "--max-level", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = weylpoly(&["verify", "rank2", "--algebra", "G2", "--max-level", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL rank2 G2 (1,0)"), "{}", stdout(&o));
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "braid",
        "--max-rank",
        "3",
        "--max-level",
        "2",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    let a = weylpoly(&args);
    let b = weylpoly(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["status"], "PASS");
}

#[test]
fn max_rank_env_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_weylpoly"))
        .args(["verify", "lemma", "--max-rank", "3"])
        .env("WEYLPOLY_MAX_RANK", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn in_process_runner_matches_binary() {
    let args = ["weylpoly", "char", "--algebra", "A2", "--weight", "1,0"];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = weylpoly::cli::run(args, &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, weylpoly(&args[1..]).stdout);
}
