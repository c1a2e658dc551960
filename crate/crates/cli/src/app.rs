//! Command dispatch for the `isotriple` binary.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use isotriple::classify::{census_dim2, classify_triple, ClassificationReport, FormClassDatum, Solvability, SummandLabel};
use isotriple::hamiltonian::{from_triple, to_triple, LinHamField};
use isotriple::normalforms::{build_discrete, build_framed, build_hk, build_hk_prime, compatible_form_eig, compatible_form_hom, DiscreteFamily, FormProvenance};
use isotriple::symplectic::symplectify;
use isotriple::{Error, FieldCtx, Mat, Poly, Scalar, Sextuple, Subspace};

use crate::stf::{mat_rows, parse_field, StfDocument};

/// Exit status: success.
pub const EXIT_OK: i32 = 0;
/// Exit status: invalid input or a failed verification.
pub const EXIT_INVALID: i32 = 1;
/// Exit status: an undecided or inconclusive result.
pub const EXIT_INCONCLUSIVE: i32 = 2;
/// Exit status: an internal search or decomposition budget ran out.
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "isotriple", version, about = "Exact classification of isotropic triples in symplectic vector spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructType {
    /// A(3k+1,0) with the compatible form H_k.
    A31,
    /// A(3k+2,0) with the compatible form H′_{k+1}.
    A32,
    /// Framed sextuple of a generalized Jordan block with no eigenvalue in the field.
    Framed,
    /// Framed sextuple of the Jordan block J_k(1/2).
    Eig,
    /// Symplectification of a named indecomposable.
    Symplectify,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Parity {
    Skew,
    Sym,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum HamDirection {
    /// Field (omega + matrix X) to triple.
    To,
    /// Triple to field.
    From,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a normal-form triple (or sextuple with a symmetric form) and print it as STF.
    Construct {
        #[arg(long = "type", value_enum, ignore_case = true)]
        kind: ConstructType,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Comma-separated scalars.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long)]
        minpoly: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        /// Parity of the matrix T in the framed construction.
        #[arg(long, value_enum)]
        parity: Option<Parity>,
        /// Indecomposable to symplectify: A1-3 (dimension vector (1;0,0;0,0;0,0)) or A13.
        #[arg(long)]
        of: Option<String>,
    },
    /// Decompose a triple and label its summands.
    Classify {
        file: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a form against the sextuple of a document.
    VerifyForm {
        file: String,
        /// Expected parity of the form.
        #[arg(long, value_enum, default_value = "skew")]
        expect: Parity,
    },
    /// Count isometry classes of triples in the symplectic plane over F_p.
    CensusDim2 {
        #[arg(long)]
        field: String,
        /// Also print one representative per class.
        #[arg(long)]
        reps: bool,
    },
    /// The dual sextuple.
    Dual { file: String },
    /// The symplectification of the sextuple of a document.
    Symplectify { file: String },
    /// Translate between linear hamiltonian fields and triples.
    Ham {
        #[arg(value_enum)]
        direction: HamDirection,
        file: String,
    },
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DecompositionBudgetExceeded(_) => EXIT_BUDGET,
            Error::SearchInconclusive(_) | Error::UnsupportedDegree(_) | Error::SquareFreeUncertified(_) => {
                EXIT_INCONCLUSIVE
            }
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: msg.into(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn read_doc(path: &str) -> std::result::Result<StfDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    StfDocument::parse(&text).map_err(|e| usage(format!("{path}: {e}")))
}

fn parse_params(ctx: FieldCtx, s: Option<&str>) -> std::result::Result<Vec<Scalar>, Failure> {
    match s {
        None => Ok(Vec::new()),
        Some(s) => s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| ctx.parse(t).map_err(|e| usage(format!("--params: {e}"))))
            .collect(),
    }
}

/// Run the CLI on `args` (including the program name), writing results to
/// `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INVALID;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Construct {
            kind,
            k,
            field,
            params,
            minpoly,
            m,
            parity,
            of,
        } => {
            let ctx = parse_field(&field).map_err(|e| usage(format!("--field: {e}")))?;
            let doc = construct(ctx, kind, k, params.as_deref(), minpoly.as_deref(), m, parity, of.as_deref())?;
            write_out(out, &doc.print())?;
            Ok(EXIT_OK)
        }
        Command::Classify { file, json, seed } => {
            let doc = read_doc(&file)?;
            let t = doc.to_triple()?;
            let rep = classify_triple(&t, seed)?;
            let text = if json {
                serde_json::to_string_pretty(&report_json(&rep)).expect("serializable") + "\n"
            } else {
                report_text(&rep)
            };
            write_out(out, &text)?;
            Ok(if rep.is_inconclusive() { EXIT_INCONCLUSIVE } else { EXIT_OK })
        }
        Command::VerifyForm { file, expect } => {
            let text = std::fs::read_to_string(&file).map_err(|e| usage(format!("{file}: {e}")))?;
            let doc = StfDocument::parse_unchecked(&text).map_err(|e| usage(format!("{file}: {e}")))?;
            let (text, ok) = verify_form(&doc, expect)?;
            write_out(out, &text)?;
            Ok(if ok { EXIT_OK } else { EXIT_INVALID })
        }
        Command::CensusDim2 { field, reps } => {
            let ctx = parse_field(&field).map_err(|e| usage(format!("--field: {e}")))?;
            if ctx == FieldCtx::Rational {
                return Err(usage("--field: the census needs a prime field"));
            }
            let c = census_dim2(ctx)?;
            let mut text = format!("{} classes among {} triples over {}\n", c.count, c.total, ctx);
            if reps {
                for (i, r) in c.representatives.iter().enumerate() {
                    text.push_str(&format!("# representative {}\n", i + 1));
                    text.push_str(&StfDocument::from_triple(r).print());
                }
            }
            write_out(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Dual { file } => {
            let doc = read_doc(&file)?;
            let s = doc.to_sextuple()?;
            write_out(out, &StfDocument::from_sextuple(&s.dual()).print())?;
            Ok(EXIT_OK)
        }
        Command::Symplectify { file } => {
            let doc = read_doc(&file)?;
            let s = doc.to_sextuple()?;
            write_out(out, &StfDocument::from_triple(&symplectify(&s)).print())?;
            Ok(EXIT_OK)
        }
        Command::Ham { direction, file } => {
            let doc = read_doc(&file)?;
            let text = match direction {
                HamDirection::To => {
                    let om = doc.omega.clone().ok_or_else(|| usage("ham to: document has no 'omega' section"))?;
                    let x = doc.matrix("X").ok_or_else(|| usage("ham to: document has no 'matrix X' section"))?;
                    let h = LinHamField::new(om, x.clone())?;
                    StfDocument::from_triple(&to_triple(&h)?).print()
                }
                HamDirection::From => {
                    let h = from_triple(&doc.to_triple()?)?;
                    let mut d = StfDocument::empty(h.omega.ctx, h.dim());
                    d.omega = Some(h.omega);
                    d.matrices.push(("X".into(), h.x));
                    d.print()
                }
            };
            write_out(out, &text)?;
            Ok(EXIT_OK)
        }
    }
}

fn write_out(out: &mut dyn Write, s: &str) -> std::result::Result<(), Failure> {
    out.write_all(s.as_bytes()).map_err(|e| usage(format!("write failed: {e}")))
}

fn sextuple_doc_with_form(s: &Sextuple, h: Mat, eps: i8) -> std::result::Result<StfDocument, Failure> {
    if eps < 0 {
        let t = isotriple::IsotropicTriple::new(h, [s.i(1).clone(), s.i(2).clone(), s.i(3).clone()])?;
        let mut d = StfDocument::from_triple(&t);
        d.coiso = Some([s.c(1).clone(), s.c(2).clone(), s.c(3).clone()]);
        Ok(d)
    } else {
        let mut d = StfDocument::from_sextuple(s);
        d.form = Some(h);
        Ok(d)
    }
}

#[allow(clippy::too_many_arguments)]
fn construct(
    ctx: FieldCtx,
    kind: ConstructType,
    k: Option<usize>,
    params: Option<&str>,
    minpoly: Option<&str>,
    m: Option<usize>,
    parity: Option<Parity>,
    of: Option<&str>,
) -> std::result::Result<StfDocument, Failure> {
    let need_k = || k.ok_or_else(|| usage("--k is required for this type"));
    match kind {
        ConstructType::A31 | ConstructType::A32 => {
            let k = need_k()?;
            let (fam, idx) = if kind == ConstructType::A31 {
                (DiscreteFamily::Plus1, k)
            } else {
                (DiscreteFamily::Minus1, k + 1)
            };
            let mut p = parse_params(ctx, params)?;
            let need = isotriple::normalforms::a_matrix_param_count(idx);
            if p.is_empty() {
                p.push(ctx.one());
            }
            p.resize(need, ctx.zero());
            let s = build_discrete(ctx, idx, fam)?;
            let r = match fam {
                DiscreteFamily::Plus1 => build_hk(ctx, idx, &p),
                DiscreteFamily::Minus1 => build_hk_prime(ctx, idx, &p),
            }
            .map_err(|e| usage(format!("--params: {e}")))?;
            sextuple_doc_with_form(&s, r.h, r.epsilon)
        }
        ConstructType::Eig => {
            let k = need_k()?;
            let mut p = parse_params(ctx, params)?;
            if p.is_empty() {
                p.push(ctx.one());
            }
            let eps = if k % 2 == 0 { -1 } else { 1 };
            let r = compatible_form_eig(ctx, k, &p, eps).map_err(|e| usage(format!("--k/--params: {e}")))?;
            let half = ctx.frac(1, 2)?;
            let s = build_framed(&Mat::jordan(k, &half))?;
            sextuple_doc_with_form(&s, r.h, r.epsilon)
        }
        ConstructType::Framed => {
            let q = Poly::parse(ctx, minpoly.ok_or_else(|| usage("--minpoly is required for --type framed"))?)
                .map_err(|e| usage(format!("--minpoly: {e}")))?;
            let m = m.unwrap_or(1);
            let sign_m: i8 = if m % 2 == 1 { 1 } else { -1 };
            // ε(H) = (−1)^{m+1} ε(T); the default makes H symplectic.
            let t_eps = match parity {
                Some(Parity::Skew) => -1,
                Some(Parity::Sym) => 1,
                None => -sign_m,
            };
            let r = compatible_form_hom(&q, m, t_eps * sign_m).map_err(|e| usage(format!("--minpoly/--m: {e}")))?;
            let FormProvenance::Hom { eta, .. } = &r.provenance else {
                return Err(usage("unexpected form provenance"));
            };
            let s = build_framed(eta)?;
            sextuple_doc_with_form(&s, r.h.clone(), r.epsilon)
        }
        ConstructType::Symplectify => {
            let name = of.ok_or_else(|| usage("--of is required for --type symplectify"))?;
            let (c, i) = match name {
                "A13" => (Subspace::full(ctx, 1), Subspace::full(ctx, 1)),
                "A1-3" => (Subspace::zero(ctx, 1), Subspace::zero(ctx, 1)),
                "A10" => (Subspace::full(ctx, 1), Subspace::zero(ctx, 1)),
                other => return Err(usage(format!("--of: unknown indecomposable '{other}' (expected A13, A1-3 or A10)"))),
            };
            let s = Sextuple::new([c.clone(), i.clone(), c.clone(), i.clone(), c, i])?;
            Ok(StfDocument::from_triple(&symplectify(&s)))
        }
    }
}

fn verify_form(doc: &StfDocument, expect: Parity) -> std::result::Result<(String, bool), Failure> {
    let s = match (&doc.coiso, &doc.iso, &doc.omega) {
        (Some(_), Some(_), _) => doc.to_sextuple()?,
        (None, Some(iso), Some(om)) => {
            let mut subs = Vec::with_capacity(6);
            for i in iso {
                subs.push(i.perp_unchecked(om));
                subs.push(i.clone());
            }
            Sextuple::new(subs.try_into().expect("six subspaces"))?
        }
        _ => return Err(usage("verify-form: document has no sextuple")),
    };
    let h = doc
        .form
        .clone()
        .or_else(|| doc.omega.clone())
        .ok_or_else(|| usage("verify-form: document has neither 'form' nor 'omega'"))?;
    let mut text = String::new();
    let mut ok = true;
    for j in 1..=3 {
        let (c, i) = (&s.c(j).basis, &s.i(j).basis);
        for (x, y, name) in [(i, c, format!("(I{j}, C{j})")), (c, i, format!("(C{j}, I{j})"))] {
            let good = (&(x * &h) * &y.transpose()).is_zero();
            ok &= good;
            text.push_str(&format!("B{name} = 0: {}\n", if good { "ok" } else { "FAIL" }));
        }
    }
    let nondeg = h.is_invertible();
    ok &= nondeg;
    text.push_str(&format!("nondegenerate: {}\n", if nondeg { "ok" } else { "FAIL" }));
    let (want, wname) = match expect {
        Parity::Skew => (-&h, "skew-symmetric"),
        Parity::Sym => (h.clone(), "symmetric"),
    };
    let par = h.transpose() == want;
    ok &= par;
    text.push_str(&format!("{wname}: {}\n", if par { "ok" } else { "FAIL" }));
    text.push_str(if ok { "ok\n" } else { "fail\n" });
    Ok((text, ok))
}

/// Plain-text rendering of a classification report.
pub fn report_text(rep: &ClassificationReport) -> String {
    let mut s = format!(
        "field {}, ambient {}, {} summand(s)\n",
        rep.field,
        rep.ambient,
        rep.summands.len()
    );
    for (i, sm) in rep.summands.iter().enumerate() {
        s.push_str(&format!(
            "summand {}: dim {}, dimension vector {}\n  {}\n",
            i + 1,
            sm.basis.rows,
            sm.dimension_vector,
            sm.label
        ));
    }
    s
}

fn form_class_json(fc: &FormClassDatum) -> Value {
    match fc {
        FormClassDatum::ScalarClass(c) => json!({"scalar_class": c.to_string()}),
        FormClassDatum::FClass { k, verdict } => {
            let v = match verdict {
                Solvability::Solvable { x, y } => json!({"verdict": "solvable", "x": mat_rows(x), "y": mat_rows(y)}),
                Solvability::Unsolvable => json!({"verdict": "unsolvable"}),
                Solvability::Undecided => json!({"verdict": "undecided"}),
            };
            json!({"k": mat_rows(k), "solvability": v})
        }
    }
}

/// JSON rendering with schema `{field, ambient, summands: [...]}`.
pub fn report_json(rep: &ClassificationReport) -> Value {
    let summands: Vec<Value> = rep
        .summands
        .iter()
        .map(|sm| {
            let d = sm.dimension_vector;
            let mut inv = json!({"tits_form": d.tits_form(), "defect": d.defect()});
            match &sm.label {
                SummandLabel::Split { pair, names, continuous, .. } => {
                    inv["pair"] = json!([pair[0].to_string(), pair[1].to_string()]);
                    inv["names"] = json!(names);
                    inv["type"] = json!(if *continuous { "continuous" } else { "discrete" });
                }
                SummandLabel::NonSplitDiscrete { k, form_class, .. } => {
                    inv["k"] = json!(k);
                    inv["form_class"] = form_class_json(form_class);
                }
                SummandLabel::NonSplitContinuous { r, m, form_class } => {
                    inv["r"] = json!(r.to_string());
                    inv["m"] = json!(m);
                    inv["form_class"] = form_class_json(form_class);
                }
            }
            let certs: serde_json::Map<String, Value> = sm
                .certificates
                .iter()
                .map(|(n, m)| (n.clone(), json!(mat_rows(m))))
                .collect();
            json!({
                "dim": sm.basis.rows,
                "kind": sm.label.kind_name(),
                "label": sm.label.to_string(),
                "dimension_vector": d.0,
                "invariants": inv,
                "certificates": certs,
            })
        })
        .collect();
    json!({
        "field": rep.field.to_string(),
        "ambient": rep.ambient,
        "summands": summands,
    })
}
