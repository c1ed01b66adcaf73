//! Golden corpus for the command-line interface. Every documented example
//! that maps onto a subcommand is run and compared byte-for-byte against
//! `tests/golden/cli.json`. Regenerate with `UPDATE_GOLDEN=1 cargo test
//! --test cli_golden`; without that variable the file is only read.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

use ramify::cli;

#[rustfmt::skip]
const CASES: &[(&str, &[&str])] = &[
    // witt
    ("witt_add_p2", &["witt", "--p", "2", "--m", "2", "--op", "add", "--a", "[1,0]", "--b", "[1,0]"]),
    ("witt_add_zero", &["witt", "--p", "3", "--m", "2", "--op", "add", "--a", "[x,1/x]", "--b", "[0,0]"]),
    ("witt_teichmuller_mul", &["witt", "--p", "5", "--m", "2", "--op", "mul", "--a", "[2,0]", "--b", "[3,0]"]),
    ("witt_frobenius_f9", &["witt", "--p", "3", "--d", "2", "--m", "2", "--op", "frobenius", "--a", "[t,x]"]),
    ("witt_verschiebung", &["witt", "--p", "5", "--m", "2", "--op", "verschiebung", "--a", "[1,0]"]),
    ("witt_ghost_int", &["witt", "--p", "2", "--m", "2", "--ring", "int", "--op", "ghost", "--a", "[0,1]"]),
    ("witt_ghost_teichmuller", &["witt", "--p", "3", "--m", "3", "--ring", "int", "--op", "ghost", "--a", "[2,0,0]"]),
    ("witt_unghost_int", &["witt", "--p", "2", "--m", "2", "--ring", "int", "--op", "unghost", "--a", "[2,2]"]),
    // unit-decompose
    ("unit_trivial", &["unit-decompose", "--p", "3", "--n", "5", "--unit", "1"]),
    ("unit_one_minus_u", &["unit-decompose", "--p", "2", "--n", "2", "--unit", "1-u"]),
    ("unit_p2_n4", &["unit-decompose", "--p", "2", "--n", "4", "--unit", "1+u+u^2+u^3"]),
    // symbol / fil-level
    ("symbol_residue_p2", &["symbol", "--p", "2", "--m", "1", "--f", "[1/u]", "--g", "1-u"]),
    ("symbol_constant_u", &["symbol", "--p", "5", "--m", "1", "--f", "[3]", "--g", "u"]),
    ("symbol_geometric_p3", &["symbol", "--p", "3", "--m", "1", "--f", "[1/u]", "--g", "1-2*u"]),
    ("symbol_higher_j", &["symbol", "--p", "3", "--m", "1", "--f", "[1/u]", "--g", "1-2*u^2"]),
    ("symbol_teichmuller_u", &["symbol", "--p", "3", "--m", "2", "--f", "[2,0]", "--g", "u"]),
    ("symbol_verschiebung_p2", &["symbol", "--p", "2", "--m", "2", "--f", "[0,1/u]", "--g", "1-u"]),
    ("symbol_integral", &["symbol", "--p", "2", "--m", "2", "--f", "[u,1+u]", "--g", "1-u"]),
    ("symbol_at_infinity", &["symbol", "--p", "3", "--m", "1", "--f", "[x]", "--g", "x", "--at", "inf"]),
    ("fil_level_integral", &["fil-level", "--p", "3", "--m", "2", "--f", "[u,1]"]),
    ("fil_level_u_inv", &["fil-level", "--p", "3", "--m", "1", "--f", "[1/u]"]),
    ("fil_level_frobenius_image", &["fil-level", "--p", "2", "--m", "1", "--f", "[1/u^4]"]),
    // conductor
    ("conductor_alpha_p_frobenius_image", &["conductor", "--p", "2", "--group", "alpha_p", "--class", "[1/u^2]"]),
    ("conductor_asw_reduction", &["conductor", "--p", "2", "--group", "Z/p", "--class", "[1/u^2]"]),
    ("conductor_alpha_p_odd_pole", &["conductor", "--p", "2", "--group", "alpha_p", "--class", "[1/u^3]"]),
    ("conductor_alpha_p_u_inv", &["conductor", "--p", "5", "--group", "alpha_p", "--class", "[1/u]"]),
    ("conductor_asw_u_inv", &["conductor", "--p", "3", "--group", "Z/p", "--class", "[1/u]"]),
    ("conductor_integral", &["conductor", "--p", "3", "--group", "W2[F^1]", "--class", "[u,1+u]"]),
    ("conductor_kummer", &["conductor", "--p", "3", "--group", "mu_2", "--class", "u"]),
    ("conductor_product", &["conductor", "--p", "2", "--group", "alpha_p * Z/p", "--class", "[1/u^3];[1/u^2]"]),
    // modulus
    ("modulus_alpha_p_x2_p3", &["modulus", "--p", "3", "--type", "alpha_p", "--data", "x^2", "--S", "inf"]),
    ("modulus_alpha_p_x", &["modulus", "--p", "5", "--type", "alpha_p", "--data", "x", "--S", "inf"]),
    ("modulus_alpha_p_frobenius", &["modulus", "--p", "5", "--type", "alpha_p", "--data", "x^5", "--S", "inf"]),
    ("modulus_local_local_x", &["modulus", "--p", "5", "--type", "local-local", "--data", "x", "--S", "inf"]),
    ("modulus_local_local_regular_at_inf", &["modulus", "--p", "3", "--type", "local-local", "--data", "1/x", "--S", "inf,0"]),
    ("modulus_alpha_p2_x3", &["modulus", "--p", "2", "--type", "local-local", "--group", "W1[F^2]", "--data", "x^3", "--S", "inf"]),
    ("modulus_kummer_x", &["modulus", "--p", "3", "--type", "kummer", "--n", "2", "--data", "x", "--S", "0,inf"]),
    ("modulus_kummer_square", &["modulus", "--p", "3", "--type", "kummer", "--n", "2", "--data", "x^2", "--S", "0,inf"]),
    ("modulus_kummer_cubic", &["modulus", "--p", "2", "--type", "kummer", "--n", "3", "--data", "x^2*(x-1)", "--S", "0,1,inf"]),
    ("modulus_asw_x", &["modulus", "--p", "7", "--type", "asw", "--data", "x", "--S", "inf"]),
    ("modulus_asw_x2", &["modulus", "--p", "2", "--type", "asw", "--data", "x^2", "--S", "inf"]),
    ("modulus_asw_regular", &["modulus", "--p", "2", "--type", "asw", "--data", "1", "--S", "inf"]),
    ("modulus_mixed", &["modulus", "--p", "3", "--type", "mixed", "--group", "alpha_p * mu_2", "--data", "x;x", "--S", "0,inf"]),
    // structure
    ("jacobian_p2_example", &["jacobian", "--p", "2", "--genus", "0", "--prank", "0", "--modulus", "0:4,inf:7"]),
    ("jacobian_frobenius_kernel", &["jacobian", "--p", "2", "--genus", "0", "--prank", "0", "--modulus", "0:4,inf:7", "--n", "2"]),
    ("jacobian_elliptic", &["jacobian", "--p", "3", "--genus", "1", "--prank", "1", "--modulus", "0", "--n", "1"]),
    ("jacobian_single_point", &["jacobian", "--p", "3", "--genus", "2", "--prank", "0", "--modulus", "1:1"]),
    ("jacobian_three_points", &["jacobian", "--p", "5", "--genus", "0", "--prank", "0", "--modulus", "0:1,1:1,inf:1"]),
    ("uni_ab_p2", &["uni-ab", "--p", "2", "--modulus", "0:4,1:1"]),
    ("uni_ab_p3", &["uni-ab", "--p", "3", "--modulus", "0:4"]),
    ("uni_ab_reduced", &["uni-ab", "--p", "5", "--modulus", "0:1,1:1,inf:1"]),
    ("pro_p_level", &["pro-p", "--p", "2", "--modulus", "inf:2", "--n", "3"]),
    ("pro_p_reduced", &["pro-p", "--p", "3", "--modulus", "0:1,inf:1", "--n", "2"]),
    ("pro_p_empty_support", &["pro-p", "--p", "5", "--modulus", "", "--n", "2", "--prank", "2"]),
    // output mode, verify
    ("pretty_output", &["--pretty", "uni-ab", "--p", "2", "--modulus", "0:4,1:1"]),
    ("verify_seed_7", &["verify", "--seed", "7", "--cases", "5"]),
    // errors
    ("usage_non_prime", &["symbol", "--p", "4", "--m", "1", "--f", "[1/u]", "--g", "1-u"]),
    ("usage_bad_expression", &["symbol", "--p", "2", "--m", "1", "--f", "[1/u", "--g", "1-u"]),
    ("usage_missing_flag", &["modulus", "--p", "3", "--type", "alpha_p", "--S", "inf"]),
    ("usage_unknown_group", &["conductor", "--p", "3", "--group", "SL_2", "--class", "[1/u]"]),
    ("domain_not_regular", &["modulus", "--p", "3", "--type", "alpha_p", "--data", "1/x", "--S", "inf"]),
    ("domain_unghost_not_divisible", &["witt", "--p", "2", "--m", "2", "--ring", "int", "--op", "unghost", "--a", "[2,3]"]),
];

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/cli.json")
}

fn invoke(args: &[&str]) -> cli::Outcome {
    let argv = std::iter::once("ramify").chain(args.iter().copied());
    cli::run(argv)
}

fn record(args: &[&str]) -> Value {
    let out = invoke(args);
    json!({ "args": args, "exit": out.code, "stdout": out.stdout, "stderr": out.stderr })
}

#[test]
fn golden_corpus() {
    let actual: BTreeMap<String, Value> = CASES
        .iter()
        .map(|(name, args)| (name.to_string(), record(args)))
        .collect();
    let path = golden_path();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        let text = serde_json::to_string_pretty(&actual).unwrap() + "\n";
        std::fs::write(&path, text).unwrap();
        return;
    }
    let text = std::fs::read_to_string(&path).expect("golden file missing; run with UPDATE_GOLDEN=1");
    let expected: BTreeMap<String, Value> = serde_json::from_str(&text).unwrap();
    let stale: Vec<&String> = expected.keys().filter(|k| !actual.contains_key(*k)).collect();
    assert!(stale.is_empty(), "golden entries without a case: {:?}", stale);
    for (name, got) in &actual {
        let want = expected
            .get(name)
            .unwrap_or_else(|| panic!("no golden entry for {}; run with UPDATE_GOLDEN=1", name));
        assert_eq!(got, want, "golden mismatch for {}", name);
    }
}

fn json_of(args: &[&str]) -> Value {
    let out = invoke(args);
    assert_eq!(out.code, 0, "{:?}: {}", args, out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], "1");
    v
}

#[test]
fn documented_values() {
    let v = json_of(&[
        "modulus", "--p", "3", "--type", "alpha_p", "--data", "x^2", "--S", "inf",
    ]);
    assert_eq!(v["modulus"], json!([{"point": "inf", "multiplicity": 3}]));
    assert_eq!(v["trivial"], json!(false));

    let v = json_of(&[
        "jacobian",
        "--p",
        "2",
        "--genus",
        "0",
        "--prank",
        "0",
        "--modulus",
        "0:4,inf:7",
    ]);
    assert_eq!(v["dim_total"], 10);
    assert_eq!(v["torus_rank"], 1);

    let v = json_of(&["symbol", "--p", "2", "--m", "1", "--f", "[1/u]", "--g", "1-u"]);
    assert_eq!(v["value"], json!(["1"]));

    let v = json_of(&[
        "witt", "--p", "2", "--m", "2", "--op", "add", "--a", "[1,0]", "--b", "[1,0]",
    ]);
    assert_eq!(v["result"], json!(["0", "1"]));

    let v = json_of(&[
        "witt", "--p", "2", "--m", "2", "--ring", "int", "--op", "unghost", "--a", "[2,2]",
    ]);
    assert_eq!(v["result"], json!(["2", "-1"]));

    let v = json_of(&["symbol", "--p", "2", "--m", "2", "--f", "[0,1/u]", "--g", "1-u"]);
    assert_eq!(v["value"], json!(["0", "1"]));

    let v = json_of(&["conductor", "--p", "2", "--group", "alpha_p", "--class", "[1/u^3]"]);
    assert_eq!(v["conductor"], 4);

    let v = json_of(&[
        "modulus",
        "--p",
        "2",
        "--type",
        "kummer",
        "--n",
        "3",
        "--data",
        "x^2*(x-1)",
        "--S",
        "0,1,inf",
    ]);
    assert_eq!(
        v["modulus"],
        json!([{"point": "0", "multiplicity": 1}, {"point": "1", "multiplicity": 1}])
    );

    let v = json_of(&["uni-ab", "--p", "2", "--modulus", "0:4,1:1"]);
    assert_eq!(v["factors"], json!(["Z_p^1", "W[F^2]", "W[F^1]"]));

    let v = json_of(&[
        "jacobian",
        "--p",
        "2",
        "--genus",
        "0",
        "--prank",
        "0",
        "--modulus",
        "0:4,inf:7",
        "--n",
        "2",
    ]);
    assert_eq!(v["frobenius_kernel_exponent"], 20);
}

#[test]
fn exit_codes() {
    assert_eq!(
        invoke(&["symbol", "--p", "4", "--m", "1", "--f", "[1/u]", "--g", "1-u"]).code,
        2
    );
    assert_eq!(invoke(&["no-such-command"]).code, 2);
    assert_eq!(
        invoke(&["modulus", "--p", "3", "--type", "alpha_p", "--data", "1/x", "--S", "inf"]).code,
        1
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--seed", "3", "--cases", "3"];
    assert_eq!(invoke(&args).stdout, invoke(&args).stdout);
}

#[test]
fn binary_matches_library() {
    for (name, args) in CASES
        .iter()
        .filter(|(n, _)| n.starts_with("modulus_") || n.starts_with("usage_"))
    {
        let out = Command::new(env!("CARGO_BIN_EXE_ramify")).args(*args).output().unwrap();
        let lib = invoke(args);
        assert_eq!(out.status.code(), Some(lib.code), "{}", name);
        assert_eq!(String::from_utf8(out.stdout).unwrap(), lib.stdout, "{}", name);
    }
}
