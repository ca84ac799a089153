use echar_cli::document::TensorDocument;
use echar_cli::{run, EXIT_OK, EXIT_PARSE, EXIT_UNSUPPORTED};
use echar_core::random::fuzz_tensor;
use echar_core::{echar, Rational};
use proptest::prelude::*;
use serde_json::Value;
use std::io::Write;
use std::process::Command;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["echar"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let v = if out.stdout.is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&out.stdout).unwrap()
    };
    (out.code, v)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn echar_quartic_diagonal() {
    let (code, v) = json(&["echar", &fixture("diagonal_m4.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(strings(&v["echar"]["coefficients"]), ["1", "-6", "13", "-12", "4"]);
    assert_eq!(v["echar"]["a0_matches"], true);
    assert_eq!(v["echar"]["leading_matches"], true);
    assert_eq!(v["echar"]["h_bound"], 4);
}

#[test]
fn echar_cubic_diagonal() {
    let (code, v) = json(&["echar", &fixture("diagonal_m3.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(strings(&v["echar"]["coefficients"]), ["1", "0", "-4", "0", "5", "0", "-2"]);
    assert_eq!(v["echar"]["route"], "macaulay");
}

#[test]
fn echar_zero_tensor() {
    let (code, v) = json(&["echar", &fixture("zero_m4.json")]);
    assert_eq!(code, EXIT_OK);
    assert!(strings(&v["echar"]["coefficients"]).is_empty());
    assert_eq!(v["echar"]["identically_zero"], true);
}

#[test]
fn coefficient_strings_round_trip() {
    for f in ["mixed_m3.json", "deficit_m3.json", "diagonal_m4.json"] {
        let path = fixture(f);
        let (_, v) = json(&["echar", &path]);
        let doc = TensorDocument::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let psi = echar::echar(&doc.to_tensor().unwrap()).unwrap().psi;
        let parsed: Vec<Rational> = strings(&v["echar"]["coefficients"])
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(parsed, psi.coeffs());
    }
}

#[test]
fn every_route_agrees_on_deficit_example() {
    let path = fixture("deficit_m3.json");
    for route in ["auto", "sylvester", "det", "macaulay"] {
        let (code, v) = json(&["echar", &path, "--route", route]);
        assert_eq!(code, EXIT_OK, "{route}");
        assert_eq!(strings(&v["echar"]["coefficients"]), ["625", "0", "-50"], "{route}");
    }
}

#[test]
fn eigen_tables() {
    let (code, v) = json(&["eigen", &fixture("diagonal_m4.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!((v["eigen"]["normalized"].as_u64(), v["eigen"]["deficit"].as_u64()), (Some(4), Some(0)));

    let (_, v) = json(&["eigen", &fixture("deficit_m3.json")]);
    assert_eq!((v["eigen"]["normalized"].as_u64(), v["eigen"]["deficit"].as_u64()), (Some(1), Some(2)));
    let rows = v["eigen"]["rows"].as_array().unwrap();
    assert_eq!(rows.iter().filter(|r| r["kind"] == "deficit").count(), 2);

    let (code, v) = json(&["eigen", &fixture("infinite_m3.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["eigen"]["infinitely_many"], true);
}

#[test]
fn quartic_diagonal_z_eigenvalues() {
    let (_, v) = json(&["eigen", &fixture("diagonal_m4.json")]);
    // real directions (1,0), (0,1), (1,+-1)/sqrt 2 all give Z-eigenpairs
    let rows = v["eigen"]["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["z_eigenvalue"] == true));
}

#[test]
fn eigen_rejects_three_dimensions() {
    let (code, _) = json(&["eigen", &fixture("diagonal_m3_n3.json")]);
    assert_eq!(code, EXIT_UNSUPPORTED);
}

#[test]
fn parse_errors_exit_one() {
    assert_eq!(json(&["echar", &fixture("bad_value.json")]).0, EXIT_PARSE);
    assert_eq!(json(&["echar", &fixture("missing.json")]).0, EXIT_PARSE);
    assert_eq!(json(&["echar"]).0, EXIT_PARSE);
    assert_eq!(json(&["echar", &fixture("diagonal_m4.json"), "--route", "fast"]).0, EXIT_PARSE);
    // fuzz needs an explicit seed
    assert_eq!(json(&["verify", "--fuzz", "3", "--m", "4"]).0, EXIT_PARSE);
    assert_eq!(json(&["verify"]).0, EXIT_PARSE);
}

#[test]
fn size_cap_exits_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"order":7,"dim":3,"entries":{{"1,1,1,1,1,1,1":"1"}}}}"#).unwrap();
    assert_eq!(json(&["echar", f.path().to_str().unwrap()]).0, EXIT_UNSUPPORTED);
}

#[test]
fn irregular_det_route_exits_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"order":4,"dim":2,"entries":{{"1,1,1,1":"1","1,1,2,2":"1"}}}}"#).unwrap();
    let path = f.path().to_str().unwrap();
    assert_eq!(json(&["echar", path, "--route", "det"]).0, EXIT_UNSUPPORTED);
    assert_eq!(json(&["echar", path]).0, EXIT_OK);
}

#[test]
fn verify_file_checks_rotation_invariance() {
    let (code, v) = json(&["verify", &fixture("mixed_m3.json")]);
    assert_eq!(code, EXIT_OK);
    let case = &v["verify"]["cases"][0];
    let rot = case["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "orthonormal_invariance")
        .unwrap();
    assert_eq!(rot["passed"], true);
    assert!(case["counterexample"].is_null());
}

#[test]
fn fuzz_quartic_passes() {
    let (code, v) = json(&["verify", "--fuzz", "100", "--seed", "42", "--m", "4", "--n", "2"]);
    assert_eq!(code, EXIT_OK, "{v:#}");
    assert_eq!(v["verify"]["count"], 100);
    assert_eq!(v["verify"]["passed"], true);
    assert_eq!(v["verify"]["checks"]["constant_term"]["passed"], 100);
}

#[test]
fn fuzz_quintic_leading_coefficient() {
    let (code, v) = json(&["verify", "--fuzz", "50", "--seed", "7", "--m", "5", "--n", "2"]);
    assert_eq!(code, EXIT_OK, "{v:#}");
    assert_eq!(v["verify"]["checks"]["leading_coefficient"]["passed"], 50);
    // independent replay: -(P^2 + Q^2)^3 from the slice sums
    for i in 0..50 {
        let a = fuzz_tensor(7, i, 5, 2);
        let (p, q) = a.binary_slices().unwrap().pq_sums();
        let s = &p * &p + &q * &q;
        let r = echar::echar(&a).unwrap();
        assert_eq!(r.psi.coeff(10), -(&s * &s * &s));
    }
}

#[test]
fn fuzz_with_three_dimensions() {
    let (code, v) = json(&["verify", "--fuzz", "2", "--seed", "3", "--m", "3", "--n", "3"]);
    assert_eq!(code, EXIT_OK, "{v:#}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["echar", "verify", "--fuzz", "20", "--seed", "11", "--m", "3"];
    assert_eq!(run(args), run(args));
    let e = ["echar", "eigen", &fixture("mixed_m3.json")];
    assert_eq!(run(e), run(e));
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_echar");
    let ok = Command::new(bin).args(["echar", &fixture("diagonal_m4.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["command"][0], "echar");
    assert!(String::from_utf8_lossy(&ok.stderr).contains("PASS"));

    let bad = Command::new(bin).args(["echar", &fixture("bad_value.json")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_PARSE));
    assert!(bad.stdout.is_empty());
}

#[test]
fn verification_failure_prints_counterexample() {
    use echar_core::verify::Verdict;
    use echar_cli::report::VerifySection;
    let a = fuzz_tensor(1, 0, 3, 2);
    let verdicts = vec![Verdict { check: "constant_term", passed: false, detail: "forced".into() }];
    let s = VerifySection::from_file(&a, &verdicts);
    assert!(!s.passed);
    let doc = s.cases[0].counterexample.clone().unwrap();
    assert_eq!(doc.to_tensor().unwrap(), a);
}

fn arb_document() -> impl Strategy<Value = TensorDocument> {
    (2usize..=4, 1usize..=3).prop_flat_map(|(m, n)| {
        let index = proptest::collection::vec(1..=n, m);
        let value = (-20i64..=20, 1i64..=12);
        proptest::collection::vec((index, value), 0..8).prop_map(move |es| {
            let mut a = echar_core::Tensor::zeros(m, n).unwrap();
            for (idx, (p, q)) in es {
                let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
                a.set(&zero_based, Rational::new(p.into(), q.into())).unwrap();
            }
            TensorDocument::from_tensor(&a)
        })
    })
}

proptest! {
    #[test]
    fn documents_round_trip(doc in arb_document()) {
        let text = doc.print();
        let back = TensorDocument::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(TensorDocument::from_tensor(&back.to_tensor().unwrap()), doc);
    }
}
