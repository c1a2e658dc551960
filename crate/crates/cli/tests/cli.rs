//! End-to-end tests of the `isotriple` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use isotriple::exactla::char_poly;
use isotriple::subspace::standard_symplectic;
use isotriple::symplectic::random_symplectic;
use isotriple::{Error, FieldCtx, IsotropicTriple, Mat, Subspace};
use isotriple_cli::app::{Failure, EXIT_BUDGET, EXIT_INCONCLUSIVE, EXIT_INVALID, EXIT_OK};
use isotriple_cli::stf::StfDocument;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isotriple")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_tmp(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn ok_stdout(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(EXIT_OK), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn a4_doc() -> String {
    ok_stdout(&["construct", "--type", "A31", "--k", "1", "--field", "Q", "--params", "1"])
}

#[test]
fn construct_a31_carries_h1() {
    let doc = StfDocument::parse(&a4_doc()).unwrap();
    assert_eq!(doc.ambient, 4);
    let h1 = Mat::from_i64(
        FieldCtx::Rational,
        &[vec![0, 1, 0, 0], vec![-1, 0, -1, 0], vec![0, 1, 0, 1], vec![0, 0, -1, 0]],
    );
    assert_eq!(doc.omega, Some(h1));
}

#[test]
fn construct_framed_is_six_dimensional() {
    let text = ok_stdout(&[
        "construct", "--type", "framed", "--minpoly", "x^2-x+1/2", "--m", "1", "--field", "Q", "--parity", "skew",
    ]);
    let doc = StfDocument::parse(&text).unwrap();
    assert_eq!(doc.ambient, 6);
    assert!(doc.to_triple().is_ok());
}

#[test]
fn construct_symplectify_a13_gives_three_equal_lines() {
    let doc = StfDocument::parse(&ok_stdout(&["construct", "--type", "symplectify", "--of", "A13"])).unwrap();
    assert_eq!(doc.ambient, 2);
    let [a, b, c] = doc.iso.unwrap();
    assert_eq!(a.dim(), 1);
    assert!(a == b && b == c);
}

#[test]
fn construct_usage_errors_name_the_flag() {
    let o = run(&["construct", "--type", "A31"]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stderr(&o).contains("--k"));
    let o = run(&["construct", "--type", "symplectify", "--of", "B7"]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stderr(&o).contains("--of"));
}

#[test]
fn classify_constructed_a4() {
    let p = write_tmp("a4.stf", &a4_doc());
    let text = ok_stdout(&["classify", p.to_str().unwrap()]);
    assert!(text.contains("1 summand(s)"));
    assert!(text.contains("NonSplitDiscrete[A(3k+1,0), k=1]"));

    let json: serde_json::Value = serde_json::from_str(&ok_stdout(&["classify", "--json", p.to_str().unwrap()])).unwrap();
    assert_eq!(json["ambient"], 4);
    let summands = json["summands"].as_array().unwrap();
    assert_eq!(summands.len(), 1);
    for key in ["dim", "kind", "label", "dimension_vector", "invariants", "certificates"] {
        assert!(summands[0].get(key).is_some(), "missing key {key}");
    }
}

#[test]
fn classify_scrambled_sum_finds_two_summands() {
    let ctx = FieldCtx::prime(7).unwrap();
    let a4 = StfDocument::parse(&ok_stdout(&["construct", "--type", "A31", "--k", "1", "--field", "F7"]))
        .unwrap()
        .to_triple()
        .unwrap();
    let line = |v: Vec<i64>| Subspace::from_i64(ctx, 2, &[v]);
    let lines =
        IsotropicTriple::new(standard_symplectic(ctx, 1), [line(vec![1, 0]), line(vec![0, 1]), line(vec![1, 3])]).unwrap();
    let phi = a4.direct_sum(&lines);
    let g = random_symplectic(&phi.omega, &mut ChaCha8Rng::seed_from_u64(5));
    let p = write_tmp("sum.stf", &StfDocument::from_triple(&phi.transform(&g).unwrap()).print());
    let text = ok_stdout(&["classify", p.to_str().unwrap(), "--seed", "3"]);
    assert!(text.contains("2 summand(s)"), "{text}");
}

#[test]
fn classify_zero_triple_in_plane() {
    let p = write_tmp(
        "zero.stf",
        "field rational\nambient 2\nomega\n0 1\n-1 0\nisotropic 1 dim 0\nisotropic 2 dim 0\nisotropic 3 dim 0\n",
    );
    let text = ok_stdout(&["classify", p.to_str().unwrap()]);
    assert!(text.contains("Split[A(1,0)"), "{text}");
}

#[test]
fn verify_form_reports_each_equation() {
    let good = write_tmp("a4-verify.stf", &a4_doc());
    let text = ok_stdout(&["verify-form", good.to_str().unwrap()]);
    assert_eq!(text.lines().filter(|l| l.ends_with(": ok")).count(), 8);
    assert_eq!(text.lines().last(), Some("ok"));

    // Perturbing one pair of entries of omega breaks some (I_j, C_j) pair.
    let mut doc = StfDocument::parse(&a4_doc()).unwrap();
    let om = doc.omega.as_mut().unwrap();
    om[(0, 3)] = FieldCtx::Rational.one();
    om[(3, 0)] = -FieldCtx::Rational.one();
    let bad = write_tmp("a4-perturbed.stf", &doc.print());
    let o = run(&["verify-form", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("B(I") && l.ends_with("FAIL")), "{text}");

    // The eigenvalue-1/2 construction with k = 1 carries a symmetric form.
    let sym = write_tmp("eig1.stf", &ok_stdout(&["construct", "--type", "eig", "--k", "1"]));
    let o = run(&["verify-form", sym.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stdout(&o).contains("skew-symmetric: FAIL"));
    ok_stdout(&["verify-form", "--expect", "sym", sym.to_str().unwrap()]);
}

#[test]
fn census_over_f3() {
    assert!(ok_stdout(&["census-dim2", "--field", "F3"]).starts_with("16 classes"));
    let o = run(&["census-dim2", "--field", "Q"]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
}

#[test]
fn dual_twice_is_the_identity() {
    let text = a4_doc();
    let canonical = StfDocument::from_sextuple(&StfDocument::parse(&text).unwrap().to_sextuple().unwrap()).print();
    let d1 = ok_stdout(&["dual", write_tmp("d0.stf", &text).to_str().unwrap()]);
    let d2 = ok_stdout(&["dual", write_tmp("d1.stf", &d1).to_str().unwrap()]);
    assert_eq!(d2, canonical);
    assert_ne!(d1, canonical);
}

#[test]
fn symplectify_command_doubles_the_dimension() {
    let text = a4_doc();
    let p = write_tmp("sym-in.stf", &text);
    let doc = StfDocument::parse(&ok_stdout(&["symplectify", p.to_str().unwrap()])).unwrap();
    assert_eq!(doc.ambient, 8);
    assert!(doc.to_triple().is_ok());
}

#[test]
fn ham_roundtrip_preserves_char_poly() {
    let ctx = FieldCtx::Rational;
    let om = standard_symplectic(ctx, 2);
    let s = Mat::from_i64(ctx, &[vec![2, 1, 0, 0], vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![0, 1, 0, -1]]);
    let x = &om.inverse().unwrap() * &s;
    let mut doc = StfDocument::empty(ctx, 4);
    doc.omega = Some(om);
    doc.matrices.push(("X".into(), x.clone()));
    let p = write_tmp("field.stf", &doc.print());
    let triple = ok_stdout(&["ham", "to", p.to_str().unwrap()]);
    assert_eq!(StfDocument::parse(&triple).unwrap().ambient, 12);
    let back = ok_stdout(&["ham", "from", write_tmp("field-triple.stf", &triple).to_str().unwrap()]);
    let back = StfDocument::parse_unchecked(&back).unwrap();
    assert_eq!(char_poly(back.matrix("X").unwrap()), char_poly(&x));
}

#[test]
fn stf_parse_print_identity() {
    let docs = [
        a4_doc(),
        ok_stdout(&["construct", "--type", "symplectify", "--of", "A1-3"]),
        ok_stdout(&["construct", "--type", "eig", "--k", "2"]),
        ok_stdout(&["construct", "--type", "A32", "--k", "1", "--field", "F5", "--params", "2"]),
        ok_stdout(&["census-dim2", "--field", "F3", "--reps"])
            .split("# representative 2")
            .next()
            .unwrap()
            .split_once('\n')
            .unwrap()
            .1
            .split_once('\n')
            .unwrap()
            .1
            .to_string(),
    ];
    for text in docs {
        let doc = StfDocument::parse(&text).unwrap();
        assert_eq!(doc.print(), text);
        assert_eq!(StfDocument::parse(&doc.print()).unwrap().print(), text);
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let bad = "field rational\nambient 2\nomega\n0 1\n-1 zz\n";
    let e = StfDocument::parse(bad).unwrap_err().to_string();
    assert!(e.contains("line 5"), "{e}");
    let p = write_tmp("bad.stf", bad);
    let o = run(&["classify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
    assert!(stderr(&o).contains("line 5"));
    // A non-isotropic basis is rejected on load.
    let e = StfDocument::parse(
        "field rational\nambient 2\nomega\n0 1\n-1 0\nisotropic 1 dim 2\n1 0\n0 1\nisotropic 2 dim 0\nisotropic 3 dim 0\n",
    );
    assert!(e.is_err());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["census-dim2", "--field", "F5"]).status.code(), Some(EXIT_OK));
    assert_eq!(run(&["classify", "/nonexistent/file.stf"]).status.code(), Some(EXIT_INVALID));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(EXIT_INVALID));
    assert_eq!(Failure::from(Error::SearchInconclusive("x".into())).code, EXIT_INCONCLUSIVE);
    assert_eq!(Failure::from(Error::DecompositionBudgetExceeded("x".into())).code, EXIT_BUDGET);
    assert_eq!(Failure::from(Error::NoSolution).code, EXIT_INVALID);
}
