use cjac_cli::{parse_monomial, run, EXIT_OK, EXIT_USAGE};
use cjac_core::tautalg::Monomial;
use serde_json::Value;

fn cjac(args: &str) -> (i32, String) {
    run(std::iter::once("cjac").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let (code, out) = cjac(&format!("{args} --json"));
    assert_eq!(code, EXIT_OK, "{out}");
    serde_json::from_str(&out).expect("valid json")
}

#[test]
fn witten_one_point_genus_one() {
    assert_eq!(cjac("witten --g 1 --taus 1"), (EXIT_OK, "1/24\n".to_string()));
    assert_eq!(json("witten --g 2 --taus 2,3")["result"], "29/5760");
}

#[test]
fn witten_with_kappa() {
    // κ₁ on M̄_{1,1} lifts to ⟨τ₀τ₂⟩₁ = ⟨τ₁⟩₁.
    assert_eq!(json("witten --g 1 --taus 0 --kappa 1")["result"], "1/24");
}

#[test]
fn obstruction_json_shape() {
    let v = json("obstruction --g 5 --z 0 --zprime 2");
    assert_eq!(v["command"], "obstruction");
    assert_eq!(v["result"]["result"]["unsat"]["certificate"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["result"]["system"][0]["eq"], "-1/2*t = -1/2*t^2 - 8*b");
    assert_eq!(v["version"], cjac_core::VERSION);
}

#[test]
fn obstruction_genus_four_is_decided() {
    // With the computed δ-profile [0,1,2] for z = 2 the g = 4 system is
    // satisfiable; the command still exits 0 on either determination.
    let v = json("obstruction --g 4 --z 0 --zprime 2");
    assert_eq!(v["result"]["result"]["sat"]["t"], "1/3");
    assert_eq!(v["result"]["result"]["sat"]["b"], "1/72");
}

#[test]
fn obstruction_positive_control() {
    let v = json("obstruction --g 6 --z 0 --zprime 10");
    assert_eq!(v["result"]["result"]["sat"], serde_json::json!({"t": "1/1", "b": "1/4"}));
}

#[test]
fn stability_table() {
    let v = json("stability --g 4 --z 2");
    let deltas: Vec<i64> = v["result"].as_array().unwrap().iter().map(|r| r["delta"].as_i64().unwrap()).collect();
    assert_eq!(deltas, vec![0, 1, 2]);
    assert_eq!(v["result"][0]["phi_v"], "2/3+1/3*eps");
    assert_eq!(v["result"][0]["stable_multidegrees"], serde_json::json!([0, 1]));
    let (code, text) = cjac("stability --g 4 --z -2");
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("-4/3+2/3*eps"));
}

#[test]
fn pairing_report() {
    let v = json("pairing --g 2");
    assert_eq!(v["result"]["diagonal"], serde_json::json!(["1/24"]));
    assert_eq!(json("pairing --g 6")["result"]["rank"], 5);
}

#[test]
fn push_top_power_and_trace() {
    let v = json("push --g 3 --z 0 --monomial T^3 --trace");
    assert_eq!(v["result"]["terms"][0]["coeff"], "6/1");
    assert!(v["trace"].is_array());
    let v = json("push --g 3 --z 0 --monomial T^2");
    assert_eq!(v["result"]["terms"], serde_json::json!([]));
}

#[test]
fn fourier_single_goal() {
    let v = json("fourier --g 2 --axioms full --goal orthogonality --trace");
    assert_eq!(v["result"][0]["verdict"], "Verified");
    assert!(v["result"][0]["trace"].is_array());
    let v = json("fourier --g 2 --axioms half --goal orthogonality");
    assert_eq!(v["result"][0]["verdict"], "NotWithinDepth");
}

#[test]
fn usage_errors() {
    for args in ["", "frobnicate", "witten --g x", "fourier --g 2 --axioms quarter", "push --g 3 --z 0 --monomial Q^2"]
    {
        let (code, out) = cjac(args);
        assert_eq!(code, EXIT_USAGE, "{args}: {out}");
    }
    let (code, out) = cjac("fourier --g 2 --axioms full --goal nonsense");
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("usage:"));
}

#[test]
fn monomial_grammar() {
    assert_eq!(parse_monomial("T^3 K^2").unwrap(), Monomial::theta_kappa(3, 2));
    assert_eq!(parse_monomial("K").unwrap(), Monomial::theta_kappa(0, 1));
    assert_eq!(parse_monomial("T*T^2").unwrap(), Monomial::theta_kappa(3, 0));
    assert!(parse_monomial("T^x").is_err());
}

#[test]
fn output_is_reproducible() {
    for args in ["stability --g 7 --z 3", "obstruction --g 8 --z 0 --zprime 2", "fourier --g 2 --axioms half"] {
        assert_eq!(json(args), json(args));
        assert_eq!(cjac(args), cjac(args));
    }
}
