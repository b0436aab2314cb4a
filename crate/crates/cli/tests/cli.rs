use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_skewlaurent")).args(args).output().expect("binary runs");
    Out {
        code: o.status.code().expect("exit code"),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn temp_json(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn verify_reports_the_three_rings() {
    let o = run(&["verify", &data("m2f4_e12.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("poly: yes, series: yes (m=2), laurent: yes (m′=2)"), "{}", o.stdout);

    let o = run(&["verify", &data("m2f4_diag.json")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("series: no"));
    assert!(o.stdout.contains("witness: delta(a*E22) = a*E22"), "{}", o.stdout);
    assert!(o.stdout.contains("witness: delta'(a*E22) = a*E22"));

    let o = run(&["verify", &data("fyz_quotient.json")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("series: yes (m=2), laurent: no"));
    assert!(o.stdout.contains("witness: delta'(y) = y"));

    let o = run(&["verify", &data("f4c5_group.json")]);
    assert!(o.stdout.contains("laurent: yes (m′=4)"));
    assert!(o.stdout.contains("module: rank 5, valid"));
}

#[test]
fn products_in_each_ring() {
    let o = run(&["mul", &data("m2f4_e12.json"), "poly", "X", "E21"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "E21*X + 1\n"));
    // operands from the file
    assert_eq!(run(&["mul", &data("m2f4_e12.json"), "poly"]).stdout, "E21*X + 1\n");
    let o = run(&["mul", &data("f4c5_group.json"), "series", "1 + O(X^8)", "g + X + O(X^2)"]);
    assert_eq!(o.stdout, "X + g + O(X^2)\n");
    let o = run(&["mul", &data("f4c5_group.json"), "laurent", "X^-1", "X"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("1 + O(X^"), "{}", o.stdout);
    let o = run(&["mul", &data("m2f4_e12.json"), "laurent", "X", "X^-1"]);
    assert!(o.stdout.starts_with("1 + O(X^"), "{}", o.stdout);
}

#[test]
fn printed_products_parse_back() {
    let f = data("m2f4_e12.json");
    for (l, r) in [("X^3 + a*E11", "E21 + (a+1)*E12*X"), ("E12*X^2 + X", "a*E22 + E21*X^3")] {
        let p = run(&["mul", &f, "poly", l, r]).stdout;
        let again = run(&["mul", &f, "poly", p.trim(), "1"]).stdout;
        assert_eq!(p, again);
    }
}

#[test]
fn refused_rings_exit_one() {
    let o = run(&["mul", &data("m2f4_diag.json"), "series", "1", "E22"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("delta is not nilpotent"));
    assert_eq!(run(&["mul", &data("fyz_quotient.json"), "laurent"]).code, 1);
    assert_eq!(run(&["ore", &data("m2f4_diag.json"), "E21"]).code, 1);
    assert_eq!(run(&["code", "closure", &data("fyz_quotient.json"), "--generators", r#"[["1","0","0"]]"#]).code, 1);
    // the polynomial ring always exists
    assert_eq!(run(&["mul", &data("m2f4_diag.json"), "poly"]).code, 0);
}

#[test]
fn n_operators_and_ore_witnesses() {
    let o = run(&["nop", &data("f4c5_group.json"), "0", "1"]);
    assert_eq!(o.code, 0);
    // N_0^1 = δ and δ(g) = g + g^2
    assert!(o.stdout.contains("  g -> g+g^2\n"), "{}", o.stdout);
    assert_eq!(run(&["nop", &data("f4c5_group.json"), "3", "2"]).code, 2);
    let o = run(&["ore", &data("f4c5_group.json"), "g + X"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("check X^n f = g X^k: pass"));
    let o = run(&["ore", &data("m2f4_e12.json"), "E21 + X", "--k", "3"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("k: 3"));
}

#[test]
fn closure_of_x_zero_is_first_unit_row() {
    let o = run(&["code", "closure", &data("trivial_f2.json")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("basis: [(1, 0)]"));
    assert!(o.stdout.contains("rate: 1/2"));
    let o = run(&["code", "check", &data("trivial_f2.json")]);
    assert_eq!(o.code, 1, "(X, 0) spans a module that is not pure");
    assert!(o.stdout.contains("pure: no"));
}

fn basis_rows(report: &str) -> String {
    let line = report.lines().find_map(|l| l.strip_prefix("basis: ")).expect("basis line");
    let inner = line.trim_start_matches("[(").trim_end_matches(")]");
    let rows: Vec<String> = inner
        .split("), (")
        .map(|r| {
            let cells: Vec<String> = r.split(", ").map(|c| format!("{c:?}")).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

#[test]
fn closure_output_passes_check() {
    for (file, seed) in [
        ("m2f4_e12.json", r#"[["1","0","0","0","0","0","0","0"]]"#),
        ("f4c5_group.json", r#"[["X","a","0","0","1"]]"#),
        ("f4c5_group.json", r#"[["1","1","0","0","0"]]"#),
    ] {
        let cl = run(&["code", "closure", &data(file), "--generators", seed]);
        assert_eq!(cl.code, 0, "{}", cl.stderr);
        let rows = basis_rows(&cl.stdout);
        let check = run(&["code", "check", &data(file), "--generators", &rows]);
        assert_eq!(check.code, 0, "{rows}\n{}", check.stdout);
        let rt = run(&["code", "roundtrip", &data(file), "--generators", &rows]);
        assert!(rt.stdout.contains("roundtrip: pass"));
    }
}

#[test]
fn ideal_code_roundtrip_and_encoding() {
    let f = data("f4c5_group.json");
    let o = run(&["code", "roundtrip", &f]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("roundtrip: pass"));
    let o = run(&["code", "encode", &f]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("decode: pass"));
    // wrong message length is an input error
    assert_eq!(run(&["code", "encode", &f, "--message", r#"["1"]"#]).code, 2);
}

#[test]
fn worked_examples_pass() {
    for name in ["m2f4-inner", "f4c5-group", "m2f4-diag", "fyz-quotient"] {
        let o = run(&["example", name]);
        assert_eq!(o.code, 0, "{name}: {}", o.stdout);
        assert!(o.stdout.ends_with(&format!("example {name}: PASS\n")));
        assert!(!o.stdout.contains("FAIL"));
    }
    assert!(run(&["example", "f4c5-group"]).stdout.contains("PASS delta^3(g) = g + g^2 + g^3 + g^4"));
    assert_eq!(run(&["example", "nope"]).code, 2);
}

#[test]
fn input_errors_exit_two() {
    let bad = temp_json("{\n  \"field\": {\"p\": 2},\n  \"algebra\": {\"kind\": \"matrix\", \"n\": 2,\n}\n");
    let o = run(&["verify", bad.path().to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 4"), "{}", o.stderr);

    let unknown = temp_json(r#"{"field": {"p": 2}, "algebra": {"kind": "octonions"}, "sigma": {"kind": "identity"}, "delta": {"kind": "zero"}}"#);
    assert_eq!(run(&["verify", unknown.path().to_str().unwrap()]).code, 2);

    let nonprime = temp_json(r#"{"field": {"p": 4}, "algebra": {"kind": "quotient_yz"}, "sigma": {"kind": "identity"}, "delta": {"kind": "zero"}}"#);
    assert_eq!(run(&["verify", nonprime.path().to_str().unwrap()]).code, 2);

    let frob = temp_json(r#"{"field": {"p": 2, "k": 2}, "algebra": {"kind": "matrix", "n": 2}, "sigma": {"kind": "frobenius"}, "delta": {"kind": "zero"}}"#);
    assert_eq!(run(&["verify", frob.path().to_str().unwrap()]).code, 2);

    assert_eq!(run(&["verify", "/definitely/missing.json"]).code, 2);
    assert_eq!(run(&["mul", &data("m2f4_e12.json"), "poly", "X*E21", "1"]).code, 2);
    assert_eq!(run(&["mul", &data("m2f4_e12.json"), "poly", "Q", "1"]).code, 2);
    assert_eq!(run(&["mul", &data("m2f4_e12.json"), "series", "X^9", "1"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn failed_axioms_exit_one() {
    // σ(1) = y
    let not_unital = temp_json(
        r#"{"field": {"p": 2}, "algebra": {"kind": "quotient_yz"},
            "sigma": {"kind": "images", "images": ["y", "y", "z"]}, "delta": {"kind": "zero"}}"#,
    );
    let o = run(&["verify", not_unital.path().to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("skew derivation axioms: fail"));

    let not_derivation = temp_json(
        r#"{"field": {"p": 2}, "algebra": {"kind": "group_cyclic", "n": 2},
            "sigma": {"kind": "identity"}, "delta": {"kind": "images", "images": ["1", "0"]}}"#,
    );
    assert_eq!(run(&["verify", not_derivation.path().to_str().unwrap()]).code, 1);
    assert_eq!(run(&["mul", not_derivation.path().to_str().unwrap(), "poly", "X", "1"]).code, 1);

    // the declared unit e has e u = 0
    let nonassoc = temp_json(
        r#"{"field": {"p": 2}, "algebra": {"kind": "structure", "labels": ["e", "u"],
              "table": [[[1, 0], [0, 0]], [[0, 1], [1, 0]]], "unit": [1, 0]},
            "sigma": {"kind": "identity"}, "delta": {"kind": "zero"}}"#,
    );
    let o = run(&["verify", nonassoc.path().to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(!o.stdout.contains("algebra axioms: valid"));
}

#[test]
fn reports_are_deterministic() {
    let cases: [&[&str]; 4] = [
        &["verify", &data("m2f4_diag.json")],
        &["code", "closure", &data("m2f4_e12.json")],
        &["code", "encode", &data("f4c5_group.json")],
        &["nop", &data("m2f4_e12.json"), "1", "3"],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert_eq!((a.code, a.stdout), (b.code, b.stdout));
    }
}

#[test]
fn precision_flag_overrides_the_file() {
    let o = run(&["--prec", "20", "mul", &data("f4c5_group.json"), "series", "1", "g + X"]);
    assert_eq!(o.stdout, "X + g + O(X^5)\n");
    assert_eq!(run(&["--prec", "-1", "verify", &data("f4c5_group.json")]).code, 2);
}
