use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn eqdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqdeg"))
        .args(args)
        .current_dir(repo_root())
        .output()
        .expect("run eqdeg")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("not JSON ({e}): {}", stdout(out)))
}

fn temp_ideal(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eqdeg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path)
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    path
}

#[test]
fn degree_of_counterexample() {
    let out = eqdeg(&[
        "degree",
        "corpus/cex.ideal",
        "--dim",
        "1",
        "--trials",
        "5",
        "--seed",
        "42",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["trials"].as_array().unwrap().len(), 5);
}

#[test]
fn degree_of_counterexample_plus_x2() {
    let out = eqdeg(&["degree", "corpus/cex_plus_x2.ideal", "--dim", "0", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["degree"], 3);
}

#[test]
fn lex_basis_of_linear_system() {
    let out = eqdeg(&["gb", "corpus/linear.ideal", "--order", "lex"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{x1 - 1, x2 - 1}\n");
}

#[test]
fn degree_report_matches_schema() {
    for args in [
        vec!["degree", "corpus/circle.ideal", "--json"],
        vec![
            "degree",
            "corpus/circle.ideal",
            "--json",
            "--prime",
            "1048583",
        ],
    ] {
        let v = json(&eqdeg(&args));
        let obj = v.as_object().unwrap();
        let keys: Vec<_> = obj.keys().map(String::as_str).collect();
        for key in [
            "degree",
            "seed",
            "coefficient_bound",
            "field",
            "prime",
            "trials",
            "agreement_ratio",
        ] {
            assert!(keys.contains(&key), "missing {key}");
        }
        assert_eq!(keys.len(), 7);
        assert!(v["degree"].is_u64() && v["seed"].is_u64() && v["coefficient_bound"].is_u64());
        assert!(matches!(v["field"].as_str(), Some("QQ" | "Fp")));
        assert_eq!(v["prime"].is_null(), v["field"] == "QQ");
        for t in v["trials"].as_array().unwrap() {
            match t["result"].as_str().unwrap() {
                "count" => assert!(t["count"].is_u64()),
                "not_zero_dimensional" => assert!(t["count"].is_null()),
                other => panic!("unexpected result {other}"),
            }
        }
        let ratio = v["agreement_ratio"].as_str().unwrap();
        assert!(ratio == "1" || ratio.split('/').all(|p| p.parse::<u64>().is_ok()));
    }
}

#[test]
fn same_arguments_give_identical_output() {
    let args = [
        "degree",
        "corpus/twisted_cubic.ideal",
        "--seed",
        "7",
        "--json",
    ];
    assert_eq!(eqdeg(&args).stdout, eqdeg(&args).stdout);
    let args = ["bezout-check", "--random", "3", "--seed", "5"];
    assert_eq!(eqdeg(&args).stdout, eqdeg(&args).stdout);
}

#[test]
fn every_subcommand_has_json_output() {
    let runs: Vec<Vec<&str>> = vec![
        vec!["gb", "corpus/cex.ideal", "--json"],
        vec!["dim", "corpus/cex.ideal", "--json"],
        vec!["degree", "corpus/cex.ideal", "--json"],
        vec!["quotient", "corpus/cex.ideal", "--by", "x2", "--json"],
        vec![
            "regular-check",
            "corpus/double_line.ideal",
            "--seq",
            "x2 - 1",
            "--json",
        ],
        vec!["secant-check", "corpus/cex.ideal", "--seq", "x2", "--json"],
        vec![
            "bezout-check",
            "corpus/double_line.ideal",
            "--seq",
            "x2 - 1",
            "--json",
        ],
        vec![
            "mw-bound",
            "corpus/cex.ideal",
            "--component",
            "1:2",
            "--json",
        ],
        vec!["hilbert-degree", "corpus/cex.ideal", "--json"],
        vec!["corpus", "--json"],
    ];
    for args in runs {
        let out = eqdeg(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(json(&out).is_object(), "{args:?}");
    }
    let out = eqdeg(&["bezout-check", "--random", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        for key in ["ideal", "sequence", "lhs", "rhs", "holds", "regularity"] {
            assert!(v.get(key).is_some());
        }
    }
}

#[test]
fn subcommand_results() {
    assert_eq!(
        stdout(&eqdeg(&["quotient", "corpus/cex.ideal", "--by", "x2"])),
        "{x1^2}\n"
    );
    assert_eq!(
        json(&eqdeg(&["dim", "corpus/four_points.ideal", "--json"]))["standard_monomials"],
        4
    );
    assert_eq!(
        json(&eqdeg(&["dim", "corpus/sphere.ideal", "--json"]))["dimension"],
        2
    );
    let h = json(&eqdeg(&[
        "hilbert-degree",
        "corpus/twisted_cubic.ideal",
        "--json",
    ]));
    assert_eq!(
        (h["degree"].as_u64(), h["dimension"].as_u64()),
        (Some(3), Some(1))
    );
    let b = json(&eqdeg(&[
        "bezout-check",
        "corpus/double_line.ideal",
        "--seq",
        "x2 - 1",
        "--json",
    ]));
    assert_eq!(
        (b["lhs"].as_u64(), b["rhs"].as_u64(), b["holds"].as_bool()),
        (Some(2), Some(2), Some(true))
    );
    let mw = json(&eqdeg(&[
        "mw-bound",
        "corpus/plane_and_line.ideal",
        "--component",
        "1:1",
        "--component",
        "2:1",
        "--json",
    ]));
    assert_eq!(
        (mw["total_degree"].as_u64(), mw["total_bound"].as_u64()),
        (Some(2), Some(6))
    );
    let mw = json(&eqdeg(&["mw-bound", "corpus/cex.ideal", "--json"]));
    assert_eq!(mw["heights"][0]["degree"], 2);
    assert_eq!(mw["heights"][0]["bound"], 3);
}

#[test]
fn negative_coefficients_in_sequence_arguments() {
    let out = eqdeg(&[
        "regular-check",
        "corpus/double_line.ideal",
        "--seq",
        "-x2 + 1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn refusals_exit_with_one() {
    let out = eqdeg(&[
        "bezout-check",
        "corpus/line_k3.ideal",
        "--seq",
        "x2",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["refusal"], "not_regular");
    assert_eq!(v["regularity"]["steps"][0]["zero_divisor"], true);

    let out = eqdeg(&["degree", "corpus/cex.ideal", "--dim", "0", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["refusal"], "dimension_mismatch");

    let out = eqdeg(&["regular-check", "corpus/cex.ideal", "--seq", "x2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("regular: no"));

    let out = eqdeg(&["secant-check", "corpus/cex.ideal", "--seq", "x1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(
        eqdeg(&["degree", "corpus/cex.ideal", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eqdeg(&["degree", "corpus/no_such.ideal", "--dim", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(eqdeg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        eqdeg(&["degree", "corpus/cex.ideal", "--prime", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eqdeg(&["degree", "corpus/plane_and_line.ideal"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eqdeg(&["quotient", "corpus/cex.ideal", "--by", "x3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        eqdeg(&["mw-bound", "corpus/cex.ideal", "--component", "one:2"])
            .status
            .code(),
        Some(2)
    );

    let bad = temp_ideal("bad.ideal", "vars: x1, x2\nx1^2 + \n");
    let out = eqdeg(&["gb", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let dup = temp_ideal("dup.ideal", "vars: x1, x1\nx1\n");
    assert_eq!(eqdeg(&["gb", dup.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn comments_and_dim_header_in_ideal_files() {
    let path = temp_ideal(
        "commented.ideal",
        "# a parabola\nvars: x, y\ndim: 1\n# generator below\ny - x^2  # trailing\n",
    );
    let out = eqdeg(&["degree", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["degree"], 2);
}

#[test]
fn corpus_subcommand_passes() {
    let out = eqdeg(&["corpus"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("corpus: PASS\n"));
}
