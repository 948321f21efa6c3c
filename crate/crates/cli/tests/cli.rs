use std::process::Command;

use exponent_cli::{run, Outcome, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

fn exponent(args: &str) -> Outcome {
    run(std::iter::once("exponent").chain(args.split_whitespace()))
}

fn ok(args: &str) -> String {
    let out = exponent(args);
    assert_eq!(out.code, EXIT_OK, "{args}: {}", out.stderr);
    out.stdout
}

#[test]
fn coker_json_golden() {
    assert_eq!(ok("coker 2 3 --format json"), "{\"p\":2,\"n\":3,\"structure\":{\"1\":3,\"2\":3,\"4\":1}}\n");
    assert_eq!(ok("coker 3 2 --format json"), "{\"p\":3,\"n\":2,\"structure\":{\"1\":5,\"3\":3}}\n");
    assert_eq!(ok("coker 2 4"), "Q_{2,4} = Z/8 + (Z/4)^4 + (Z/2)^6 + (Z/1)^4\n");
}

#[test]
fn coker_table_golden() {
    let expected = "\
n     |  1  2  3  4  5  6  7  8
------+------------------------
Z/2^k |
Z/1   |  1  2  3  4  5  6  7  8
Z/2   |     1  3  6 10 15 21 28
Z/4   |        1  4 10 20 35 56
Z/8   |           1  5 15 35 70
Z/16  |              1  6 21 56
Z/32  |                 1  7 28
Z/64  |                    1  8
Z/128 |                       1
";
    assert_eq!(ok("coker-table 2 8"), expected);
    let tsv = "order\t1\t2\t3\n1\t4\t14\t34\n5\t\t10\t70\n25\t\t\t20\n";
    assert_eq!(ok("coker-table 5 3 --format tsv"), tsv);
}

#[test]
fn output_is_stable_across_thread_counts() {
    let one = ok("coker-table 3 4 --format json --threads 1");
    let many = ok("coker-table 3 4 --format json --threads 4");
    assert_eq!(one, many);
}

#[test]
fn qnomial_and_kbounds() {
    assert_eq!(ok("qnomial 3 3"), "1 3 6 7 6 3 1\n");
    assert_eq!(ok("qnomial 4 2 --format json"), "{\"x\":4,\"q\":2,\"coefficients\":[1,4,6,4,1]}\n");
    assert_eq!(ok("kbounds 3"), "n\tcomplex\treal\n1\t1\t2\n2\t3\t3\n3\t3\t3\n");
}

#[test]
fn prediction_and_conjecture() {
    assert_eq!(
        ok("predict 3 3 --format json"),
        "{\"p\":3,\"n\":3,\"literal_range\":false,\"structure\":{\"1\":9,\"3\":13,\"9\":4}}\n"
    );
    assert_eq!(ok("predict 3 3 --literal-range"), "predicted Q_{3,3} = (Z/9)^10 + (Z/3)^19 + (Z/1)^10\n");
    assert!(ok("conjecture 5 2").ends_with("PASS (j = 0..p-2)\n"));
    let literal = exponent("conjecture 3 2 --literal-range");
    assert_eq!(literal.code, EXIT_FAILED);
    assert!(literal.stdout.contains("MISMATCH"));
}

#[test]
fn alternate_normalization_gives_the_same_group() {
    assert_eq!(ok("coker 5 2 --normalization rightmost"), ok("coker 5 2"));
}

#[test]
fn fixtures_through_the_cli() {
    let rows = ok("e2rows sd16_action --smax 1 --tmax 4 --format tsv");
    assert_eq!(rows, "s\tt\tdim\n0\t0\t1\n0\t1\t1\n0\t2\t2\n0\t3\t2\n0\t4\t3\n1\t0\t1\n1\t1\t0\n1\t2\t1\n1\t3\t0\n1\t4\t1\n");
    assert!(ok("e2verify m16_swap").ends_with("checks passed\n"));
    let iso = ok("isotropy sd16_rep");
    assert!(iso.contains("{e, s, s*r^4, r^4} {e, s*r^2, s*r^6, r^4} {e, r^4}"), "{iso}");
    assert!(ok("poincare-suite").ends_with("14/14 checks passed\n"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        "coker 4 2",
        "coker 2 0",
        "coker 2",
        "kbounds 0",
        "frobnicate",
        "coker 2 3 --format xml",
        "coker 2 3 --threads 0",
        "e2verify sd16_rep",
        "isotropy m16_swap",
        "e2rows /nonexistent.json",
    ] {
        let out = exponent(args);
        assert_eq!(out.code, EXIT_USAGE, "{args}");
        assert!(out.stderr.contains("error"), "{args}: {}", out.stderr);
    }
    let ceiling = exponent("coker 3 4 --size-ceiling 10");
    assert_eq!(ceiling.code, EXIT_USAGE);
    assert!(ceiling.stderr.contains("10"), "{}", ceiling.stderr);
    let flag = exponent("coker 4 2");
    assert!(flag.stderr.contains("<P>") && flag.stderr.contains("not prime"), "{}", flag.stderr);
}

#[test]
fn malformed_fixture_reports_line() {
    let dir = std::env::temp_dir().join(format!("exponent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"kind\": \"action\",\n  \"name\": [1]\n}\n").unwrap();
    let out = exponent(&format!("e2verify {}", path.display()));
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failing_fixture_exits_one() {
    let dir = std::env::temp_dir().join(format!("exponent-cli-fail-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wrong_rows.json");
    // Trivial action on F2[x]: every row is 1/(1-t), not 1/(1-t)^2.
    let text = r#"{
  "kind": "action",
  "name": "wrong_rows",
  "generators": [{"name": "x", "degree": 1}],
  "action": {},
  "group_order": 2,
  "t_max": 6,
  "rows": [{"rows": [0, 1], "numerator": "1", "denominator": "(1-t)^2"}]
}"#;
    std::fs::write(&path, text).unwrap();
    let out = exponent(&format!("e2verify {}", path.display()));
    assert_eq!(out.code, EXIT_FAILED, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("FAIL"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_exponent");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let out = status(&["coker", "2", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"p\":2,\"n\":3,\"structure\":{\"1\":3,\"2\":3,\"4\":1}}\n"
    );
    assert_eq!(status(&["conjecture", "3", "2", "--literal-range"]).status.code(), Some(1));
    assert_eq!(status(&["coker", "6", "1"]).status.code(), Some(2));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_all_passes() {
    let out = exponent("verify-all");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.ends_with("10/10 criteria passed\n"));
    let json = exponent("verify-all --format json");
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);
}
