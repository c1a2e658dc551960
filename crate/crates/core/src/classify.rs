//! Classification of isotropic triples: orthogonal splitting, summand labels,
//! form classes and the census of the symplectic plane.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{generalized_jordan, irreducible_factors, min_poly, semisimple_part, Mat, Poly};
use crate::field::{FieldCtx, Scalar};
use crate::normalforms::{
    build_discrete, build_framed, build_hk, build_hk_prime, compatible_form_eig, compatible_form_hom,
    extract_frame, identify_continuous, DiscreteFamily, FormProvenance,
};
use crate::sextuple::{is_isomorphic, DimensionVector, Sextuple};
use crate::subspace::{standard_symplectic, Subspace};
use crate::symplectic::{is_isometric, orthogonal_decompose, IsotropicTriple, SummandKind};

/// The two self-dual discrete families, indexed as in their dimension vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SelfDualFamily {
    /// `(3k+1; 2k+1,k; 2k+1,k; 2k+1,k)`.
    A3kPlus1,
    /// `(3k+2; 2k+1,k+1; 2k+1,k+1; 2k+1,k+1)`.
    A3kPlus2,
}

impl SelfDualFamily {
    pub fn ambient(&self, k: usize) -> usize {
        match self {
            SelfDualFamily::A3kPlus1 => 3 * k + 1,
            SelfDualFamily::A3kPlus2 => 3 * k + 2,
        }
    }

    /// The same member in the indexing of [`build_discrete`].
    pub fn to_discrete(&self, k: usize) -> (DiscreteFamily, usize) {
        match self {
            SelfDualFamily::A3kPlus1 => (DiscreteFamily::Plus1, k),
            SelfDualFamily::A3kPlus2 => (DiscreteFamily::Minus1, k + 1),
        }
    }

    /// True iff the member with index `k` carries compatible symplectic forms.
    pub fn is_symplectic(&self, k: usize) -> bool {
        self.ambient(k) % 2 == 0
    }
}

/// Outcome of the search for `K = X² − Y²` with `X ∈ F⁺`, `Y ∈ F⁻`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solvability {
    Solvable { x: Mat, y: Mat },
    Unsolvable,
    Undecided,
}

/// Class of a compatible form relative to a canonical one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormClassDatum {
    /// Square-class representative of the scalar `c` with `ω ≅ c·H`.
    ScalarClass(Scalar),
    /// The residue `K ∈ F` of `H⁻¹ω` and the verdict on `K = X² − Y²`.
    FClass { k: Mat, verdict: Solvability },
}

impl FormClassDatum {
    pub fn is_undecided(&self) -> bool {
        matches!(self, FormClassDatum::FClass { verdict: Solvability::Undecided, .. })
    }
}

impl fmt::Display for FormClassDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormClassDatum::ScalarClass(c) => write!(f, "square class {c}"),
            FormClassDatum::FClass { verdict, .. } => match verdict {
                Solvability::Solvable { .. } => write!(f, "K = X^2 - Y^2 solvable"),
                Solvability::Unsolvable => write!(f, "K = X^2 - Y^2 unsolvable"),
                Solvability::Undecided => write!(f, "K = X^2 - Y^2 undecided"),
            },
        }
    }
}

/// Label of a symplectically indecomposable summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SummandLabel {
    /// Symplectification of a dual pair of indecomposables. The two vectors
    /// and names are ordered so that the label does not depend on which
    /// member of the pair was found.
    Split {
        pair: [DimensionVector; 2],
        names: [Option<String>; 2],
        continuous: bool,
        defect: i64,
    },
    NonSplitDiscrete {
        family: SelfDualFamily,
        k: usize,
        form_class: FormClassDatum,
    },
    /// `ζ = η − ½` has minimal polynomial `r^m` with `r(x) = p(x²)`.
    NonSplitContinuous { r: Poly, m: usize, form_class: FormClassDatum },
}

impl SummandLabel {
    pub fn kind_name(&self) -> &'static str {
        match self {
            SummandLabel::Split { .. } => "split",
            SummandLabel::NonSplitDiscrete { .. } => "non-split discrete",
            SummandLabel::NonSplitContinuous { .. } => "non-split continuous",
        }
    }

    /// The form-class datum of a non-split label.
    pub fn form_class(&self) -> Option<&FormClassDatum> {
        match self {
            SummandLabel::Split { .. } => None,
            SummandLabel::NonSplitDiscrete { form_class, .. } | SummandLabel::NonSplitContinuous { form_class, .. } => {
                Some(form_class)
            }
        }
    }

    /// The label without its form-class datum.
    pub fn linear_type(&self) -> String {
        match self {
            SummandLabel::Split { .. } => self.to_string(),
            SummandLabel::NonSplitDiscrete { family, k, .. } => {
                let name = match family {
                    SelfDualFamily::A3kPlus1 => "A(3k+1,0)",
                    SelfDualFamily::A3kPlus2 => "A(3k+2,0)",
                };
                format!("NonSplitDiscrete[{name}, k={k}]")
            }
            SummandLabel::NonSplitContinuous { r, m, .. } => format!("NonSplitContinuous[r={r}, m={m}]"),
        }
    }

    pub fn is_undecided(&self) -> bool {
        match self {
            SummandLabel::Split { .. } => false,
            SummandLabel::NonSplitDiscrete { form_class, .. } | SummandLabel::NonSplitContinuous { form_class, .. } => {
                form_class.is_undecided()
            }
        }
    }
}

impl fmt::Display for SummandLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandLabel::Split {
                pair,
                names,
                continuous,
                defect,
            } => {
                let show = |i: usize| match &names[i] {
                    Some(n) => format!("{n} {}", pair[i]),
                    None => pair[i].to_string(),
                };
                write!(
                    f,
                    "Split[{} | {}] {} defect {}",
                    show(0),
                    show(1),
                    if *continuous { "continuous" } else { "discrete" },
                    defect
                )
            }
            SummandLabel::NonSplitDiscrete { family, k, form_class } => {
                let name = match family {
                    SelfDualFamily::A3kPlus1 => "A(3k+1,0)",
                    SelfDualFamily::A3kPlus2 => "A(3k+2,0)",
                };
                write!(f, "NonSplitDiscrete[{name}, k={k}] {form_class}")
            }
            SummandLabel::NonSplitContinuous { r, m, form_class } => {
                write!(f, "NonSplitContinuous[r={r}, m={m}] {form_class}")
            }
        }
    }
}

/// One summand of a classification report.
#[derive(Debug, Clone)]
pub struct ClassifiedSummand {
    /// Rows span the summand in ambient coordinates.
    pub basis: Mat,
    pub label: SummandLabel,
    pub dimension_vector: DimensionVector,
    /// Named matrices certifying the label.
    pub certificates: Vec<(String, Mat)>,
}

/// The full classification of a triple.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub field: FieldCtx,
    pub ambient: usize,
    pub summands: Vec<ClassifiedSummand>,
}

impl ClassificationReport {
    /// Sorted label strings, the isometry invariant of the report.
    ///
    /// Scalar classes of single summands are not invariant inside a group of
    /// summands sharing a linear type, since `c ⊕ c` may be isometric to
    /// `c' ⊕ c'`. Such a group is tagged with the square class of the product
    /// of its scalars, which is the discriminant of the diagonal form it
    /// carries. Groups with `K = X² − Y²` data of size above one are tagged by
    /// their size only.
    pub fn label_multiset(&self) -> Vec<String> {
        let mut groups: std::collections::BTreeMap<String, Vec<&SummandLabel>> = Default::default();
        for s in &self.summands {
            groups.entry(s.label.linear_type()).or_default().push(&s.label);
        }
        let mut v = Vec::new();
        for (ty, labels) in groups {
            let tag = match (labels.len(), labels[0].form_class()) {
                (_, None) => None,
                (1, Some(c)) => Some(c.to_string()),
                (_, Some(_)) => {
                    let mut prod = Some(self.field.one());
                    for l in &labels {
                        prod = match (prod, l.form_class()) {
                            (Some(p), Some(FormClassDatum::ScalarClass(c))) => Some(&p * c),
                            _ => None,
                        };
                    }
                    Some(match prod.and_then(|p| self.field.square_class_rep(&p).ok()) {
                        Some(d) => format!("discriminant {d}"),
                        None => "form class not compared".to_string(),
                    })
                }
            };
            for _ in 0..labels.len() {
                v.push(match &tag {
                    Some(t) => format!("{ty} {t}"),
                    None => ty.clone(),
                });
            }
        }
        v.sort();
        v
    }

    pub fn is_inconclusive(&self) -> bool {
        self.summands.iter().any(|s| s.label.is_undecided())
    }
}

/// Match a dimension vector against the two self-dual discrete shapes.
pub fn discrete_selfdual_family(d: &DimensionVector) -> Option<(SelfDualFamily, usize)> {
    let v = d.v();
    let arms_equal = (2..=3).all(|j| d.c(j) == d.c(1) && d.i(j) == d.i(1));
    if !arms_equal || v == 0 {
        return None;
    }
    let k = (v - 1) / 3;
    match v % 3 {
        1 if d.c(1) == 2 * k + 1 && d.i(1) == k => Some((SelfDualFamily::A3kPlus1, k)),
        2 if d.c(1) == 2 * k + 1 && d.i(1) == k + 1 => Some((SelfDualFamily::A3kPlus2, k)),
        _ => None,
    }
}

/// Name of a discrete indecomposable whose three arms agree: `A(v, defect)`.
fn discrete_name(d: &DimensionVector) -> Option<String> {
    let arms_equal = (2..=3).all(|j| d.c(j) == d.c(1) && d.i(j) == d.i(1));
    if arms_equal && d.tits_form() == 1 {
        Some(format!("A({},{})", d.v(), d.defect()))
    } else {
        None
    }
}

fn indecomposable_name(psi: &Sextuple) -> Option<String> {
    let d = psi.dimension_vector();
    if d.tits_form() == 0 {
        identify_continuous(psi).ok().map(|l| l.to_string())
    } else {
        discrete_name(&d)
    }
}

fn split_label(psi: &Sextuple) -> SummandLabel {
    let d = psi.dimension_vector();
    let dual = psi.dual();
    let mut entries = [(d, indecomposable_name(psi)), (dual.dimension_vector(), indecomposable_name(&dual))];
    entries.sort();
    let [(d0, n0), (d1, n1)] = entries;
    SummandLabel::Split {
        pair: [d0, d1],
        names: [n0, n1],
        continuous: d.tits_form() == 0,
        defect: d.defect(),
    }
}

/// A canonical self-dual sextuple together with a compatible symplectic form.
struct Canonical {
    sextuple: Sextuple,
    h: Mat,
    /// Generator of the residue field when it is larger than the ground field.
    generator: Option<Mat>,
}

fn canonical_discrete(ctx: FieldCtx, family: SelfDualFamily, k: usize) -> Result<Canonical> {
    let (fam, idx) = family.to_discrete(k);
    let sextuple = build_discrete(ctx, idx, fam)?;
    let params = vec![ctx.one(); crate::normalforms::a_matrix_param_count(idx)];
    let recipe = match fam {
        DiscreteFamily::Plus1 => build_hk(ctx, idx, &params)?,
        DiscreteFamily::Minus1 => build_hk_prime(ctx, idx, &params)?,
    };
    if recipe.epsilon != -1 {
        return Err(Error::InvalidK(format!("A({},0) carries no compatible symplectic form", family.ambient(k))));
    }
    Ok(Canonical {
        sextuple,
        h: recipe.h,
        generator: None,
    })
}

fn canonical_continuous(ctx: FieldCtx, r: &Poly, m: usize) -> Result<Canonical> {
    let half = ctx.frac(1, 2)?;
    if *r == Poly::monomial(&ctx.one(), 2) {
        let k = 2 * m;
        let recipe = compatible_form_eig(ctx, k, &[ctx.one()], -1)?;
        let sextuple = build_framed(&Mat::jordan(k, &half))?;
        return Ok(Canonical {
            sextuple,
            h: recipe.h,
            generator: None,
        });
    }
    let q = r.shift(&-&half);
    let recipe = compatible_form_hom(&q, m, -1)?;
    let FormProvenance::Hom { eta, .. } = &recipe.provenance else {
        return Err(Error::InvalidParams("unexpected form provenance".into()));
    };
    let sextuple = build_framed(eta)?;
    let d = eta.rows;
    let zeta = &(eta - &Mat::scalar_matrix(d, &half));
    let zs = semisimple_part(zeta, r)?;
    let z3 = Mat::block_diag(&[&zs, &zs, &zs]);
    Ok(Canonical {
        sextuple,
        h: recipe.h,
        generator: Some(z3),
    })
}

/// The unique eigenvalue of a matrix whose characteristic polynomial is a
/// power of a linear factor.
fn single_eigenvalue(a: &Mat) -> Result<Scalar> {
    let fs = irreducible_factors(&min_poly(a))?;
    match fs.as_slice() {
        [(f, _)] if f.deg() == 1 => Ok(-&f.monic().coeff(0)),
        _ => Err(Error::HypothesesFail("the form ratio is not a scalar modulo nilpotents".into())),
    }
}

fn adjoint(x: &Mat, h: &Mat, hinv: &Mat) -> Mat {
    &(hinv * &x.transpose()) * h
}

/// Coefficient vectors (over `basis`) of the elements `x` with `x* = sign·x`.
fn eigen_subspace(basis: &[Mat], h: &Mat, hinv: &Mat, sign: i64) -> Vec<Mat> {
    let ctx = h.ctx;
    if basis.is_empty() {
        return Vec::new();
    }
    let s = ctx.from_i64(sign);
    let rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| (&adjoint(b, h, hinv) - &b.scale(&s)).data.clone())
        .collect();
    let sol = Mat::from_rows(ctx, rows).left_kernel_basis();
    let (n, c) = (basis[0].rows, basis[0].cols);
    (0..sol.rows).map(|i| Mat::lincomb(ctx, n, c, &sol.row(i), basis)).collect()
}

fn combos(ctx: FieldCtx, len: usize, values: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * values.len());
        for v in &out {
            for a in values {
                let mut w = v.clone();
                w.push(a.clone());
                next.push(w);
            }
        }
        out = next;
    }
    if out.is_empty() {
        out.push(vec![ctx.zero(); len]);
    }
    out
}

/// Search for `K = X² − Y²` with `X` in the span of `plus` and `Y` in the
/// span of `minus`. Exhaustive over a prime field; over `Q` the search runs
/// through coefficients of height at most 3 and is `Undecided` when it fails.
pub fn solve_x2_minus_y2(k: &Mat, plus: &[Mat], minus: &[Mat]) -> Solvability {
    let ctx = k.ctx;
    let (values, exhaustive) = match ctx.elements() {
        Some(els) => (els, true),
        None => {
            let mut v = vec![ctx.zero()];
            for num in 1..=3i64 {
                for den in 1..=3i64 {
                    let s = ctx.frac(num, den).expect("nonzero denominator");
                    if !v.contains(&s) {
                        v.push(s.clone());
                        v.push(-&s);
                    }
                }
            }
            (v, false)
        }
    };
    let limit = 200_000usize;
    let total = (values.len() as f64).powi((plus.len() + minus.len()) as i32);
    if total > limit as f64 {
        return Solvability::Undecided;
    }
    let (n, c) = (k.rows, k.cols);
    let ys: Vec<Mat> = combos(ctx, minus.len(), &values)
        .iter()
        .map(|cf| Mat::lincomb(ctx, n, c, cf, minus))
        .collect();
    let y2: Vec<Mat> = ys.iter().map(|y| y * y).collect();
    for cf in combos(ctx, plus.len(), &values) {
        let x = Mat::lincomb(ctx, n, c, &cf, plus);
        let x2 = &x * &x;
        for (y, yy) in ys.iter().zip(&y2) {
            if &(&x2 - yy) == k {
                return Solvability::Solvable { x, y: y.clone() };
            }
        }
    }
    if exhaustive {
        Solvability::Unsolvable
    } else {
        Solvability::Undecided
    }
}

/// Form class of `φ` relative to the canonical form `h` on `canonical`, whose
/// residue field is `k[generator]` (the ground field when `generator` is `None`).
///
/// The ratio `a = H⁻¹ g ᵀΩ g` is an endomorphism of the canonical sextuple,
/// where `g` is a sextuple isomorphism onto the underlying sextuple of `φ`.
pub fn form_scalar_class(
    phi: &IsotropicTriple,
    canonical: &Sextuple,
    h: &Mat,
    generator: Option<&Mat>,
    seed: u64,
) -> Result<(FormClassDatum, Mat)> {
    let ctx = phi.ctx;
    let target = phi.underlying_sextuple();
    let g = is_isomorphic(canonical, &target, seed)?
        .ok_or_else(|| Error::HypothesesFail("the triple is not isomorphic to the canonical sextuple".into()))?;
    let pulled = &(&g.transpose() * &phi.omega) * &g;
    let hinv = h.inverse()?;
    let a = &hinv * &pulled;
    let datum = match generator {
        None => FormClassDatum::ScalarClass(ctx.square_class_rep(&single_eigenvalue(&a)?)?),
        Some(z) => {
            let fs = irreducible_factors(&min_poly(&a))?;
            let [(qa, _)] = fs.as_slice() else {
                return Err(Error::HypothesesFail("the form ratio is not local".into()));
            };
            let k = semisimple_part(&a, qa)?;
            let l = irreducible_factors(&min_poly(z))?.first().map(|(f, _)| f.deg()).unwrap_or(1);
            let mut basis = vec![Mat::identity(ctx, z.rows)];
            for i in 1..l {
                basis.push(&basis[i - 1] * z);
            }
            let plus = eigen_subspace(&basis, h, &hinv, 1);
            let minus = eigen_subspace(&basis, h, &hinv, -1);
            FormClassDatum::FClass {
                verdict: solve_x2_minus_y2(&k, &plus, &minus),
                k,
            }
        }
    };
    Ok((datum, g))
}

fn with_summand(e: Error, idx: usize) -> Error {
    let tag = |s: String| format!("summand {idx}: {s}");
    match e {
        Error::DecompositionBudgetExceeded(s) => Error::DecompositionBudgetExceeded(tag(s)),
        Error::SearchInconclusive(s) => Error::SearchInconclusive(tag(s)),
        Error::HypothesesFail(s) => Error::HypothesesFail(tag(s)),
        Error::NotIndecomposable(s) => Error::NotIndecomposable(tag(s)),
        Error::NotFramed(s) => Error::NotFramed(tag(s)),
        Error::InvalidK(s) => Error::InvalidK(tag(s)),
        Error::SquareFreeUncertified(s) => Error::SquareFreeUncertified(tag(s)),
        other => other,
    }
}

fn classify_nonsplit(phi: &IsotropicTriple, seed: u64) -> Result<(SummandLabel, Vec<(String, Mat)>)> {
    let ctx = phi.ctx;
    let sext = phi.underlying_sextuple();
    let d = sext.dimension_vector();
    if let Some((family, k)) = discrete_selfdual_family(&d) {
        let can = canonical_discrete(ctx, family, k)?;
        let (form_class, g) = form_scalar_class(phi, &can.sextuple, &can.h, None, seed)?;
        let label = SummandLabel::NonSplitDiscrete { family, k, form_class };
        return Ok((label, vec![("isomorphism".into(), g), ("canonical_form".into(), can.h)]));
    }
    if d.tits_form() != 0 {
        return Err(Error::HypothesesFail(format!("non-split summand with non-self-dual discrete vector {d}")));
    }
    let frame = extract_frame(&sext)?;
    let half = ctx.frac(1, 2)?;
    let zeta = &frame.eta - &Mat::scalar_matrix(frame.eta.rows, &half);
    let gj = generalized_jordan(&zeta)?;
    let (r, m) = if gj.q == Poly::x(ctx) {
        if gj.m % 2 != 0 {
            return Err(Error::HypothesesFail("nilpotent ζ in odd dimension".into()));
        }
        (Poly::monomial(&ctx.one(), 2), gj.m / 2)
    } else {
        (gj.q.clone(), gj.m)
    };
    let can = canonical_continuous(ctx, &r, m)?;
    let (form_class, g) = form_scalar_class(phi, &can.sextuple, &can.h, can.generator.as_ref(), seed)?;
    let label = SummandLabel::NonSplitContinuous { r, m, form_class };
    Ok((
        label,
        vec![
            ("frame_basis".into(), frame.basis),
            ("eta".into(), frame.eta),
            ("isomorphism".into(), g),
            ("canonical_form".into(), can.h),
        ],
    ))
}

/// Decompose `φ` orthogonally and label every summand.
pub fn classify_triple(phi: &IsotropicTriple, seed: u64) -> Result<ClassificationReport> {
    let parts = orthogonal_decompose(phi, seed)?;
    let mut summands = Vec::with_capacity(parts.len());
    for (idx, part) in parts.into_iter().enumerate() {
        let dimension_vector = part.triple.underlying_sextuple().dimension_vector();
        let (label, mut certificates) = match &part.kind {
            SummandKind::SplitPair { psi, pi } => (split_label(psi), vec![("projector".to_string(), pi.clone())]),
            SummandKind::NonSplit => classify_nonsplit(&part.triple, seed).map_err(|e| with_summand(e, idx))?,
        };
        certificates.insert(0, ("basis".into(), part.basis.clone()));
        summands.push(ClassifiedSummand {
            basis: part.basis,
            label,
            dimension_vector,
            certificates,
        });
    }
    Ok(ClassificationReport {
        field: phi.ctx,
        ambient: phi.ambient(),
        summands,
    })
}

/// Result of the census of triples in the symplectic plane.
#[derive(Debug, Clone)]
pub struct Census {
    pub count: usize,
    pub representatives: Vec<IsotropicTriple>,
    /// Number of triples enumerated.
    pub total: usize,
}

/// All isotropic subspaces of the standard symplectic plane over `F_p`.
fn plane_isotropics(ctx: FieldCtx) -> Result<Vec<Subspace>> {
    let els = ctx
        .elements()
        .ok_or_else(|| Error::InvalidParams("the census needs a prime field".into()))?;
    let mut out = vec![Subspace::zero(ctx, 2)];
    out.push(Subspace::from_vectors(ctx, 2, &[vec![ctx.zero(), ctx.one()]]));
    for t in els {
        out.push(Subspace::from_vectors(ctx, 2, &[vec![ctx.one(), t]]));
    }
    Ok(out)
}

/// Isometry classes of triples of isotropic subspaces of the standard
/// symplectic plane over a prime field, by exhaustive pairwise testing.
pub fn census_dim2(ctx: FieldCtx) -> Result<Census> {
    let omega = standard_symplectic(ctx, 1);
    let subs = plane_isotropics(ctx)?;
    let mut reps: Vec<IsotropicTriple> = Vec::new();
    let mut total = 0;
    for a in &subs {
        for b in &subs {
            for c in &subs {
                total += 1;
                let t = IsotropicTriple::new(omega.clone(), [a.clone(), b.clone(), c.clone()])?;
                let dv = t.underlying_sextuple().dimension_vector();
                let mut found = false;
                for r in &reps {
                    if r.underlying_sextuple().dimension_vector() == dv && is_isometric(&t, r, 0)?.is_some() {
                        found = true;
                        break;
                    }
                }
                if !found {
                    reps.push(t);
                }
            }
        }
    }
    Ok(Census {
        count: reps.len(),
        representatives: reps,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::symplectify;

    fn q() -> FieldCtx {
        FieldCtx::Rational
    }

    fn triple_from(sext: &Sextuple, h: Mat) -> IsotropicTriple {
        IsotropicTriple::new(h, [sext.i(1).clone(), sext.i(2).clone(), sext.i(3).clone()]).unwrap()
    }

    #[test]
    fn selfdual_family_matching() {
        let d = DimensionVector::new(4, 3, 1, 3, 1, 3, 1);
        assert_eq!(discrete_selfdual_family(&d), Some((SelfDualFamily::A3kPlus1, 1)));
        let d = DimensionVector::new(8, 5, 3, 5, 3, 5, 3);
        assert_eq!(discrete_selfdual_family(&d), Some((SelfDualFamily::A3kPlus2, 2)));
        let d = DimensionVector::new(2, 2, 0, 2, 0, 2, 0);
        assert_eq!(discrete_selfdual_family(&d), None);
    }

    #[test]
    fn symplectified_line_is_split() {
        let z = Subspace::zero(q(), 1);
        let psi = Sextuple::new([z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z]).unwrap();
        let rep = classify_triple(&symplectify(&psi), 1).unwrap();
        assert_eq!(rep.summands.len(), 1);
        let SummandLabel::Split { pair, names, continuous, .. } = &rep.summands[0].label else {
            panic!("expected a split summand");
        };
        assert_eq!(pair[0], DimensionVector::new(1, 0, 0, 0, 0, 0, 0));
        assert_eq!(pair[1], DimensionVector::new(1, 1, 1, 1, 1, 1, 1));
        assert_eq!(names[0].as_deref(), Some("A(1,-3)"));
        assert_eq!(names[1].as_deref(), Some("A(1,3)"));
        assert!(!continuous);
    }

    #[test]
    fn a4_with_h1_is_nonsplit_discrete() {
        let s = build_discrete(q(), 1, DiscreteFamily::Plus1).unwrap();
        let h = build_hk(q(), 1, &[q().one()]).unwrap().h;
        let rep = classify_triple(&triple_from(&s, h), 3).unwrap();
        assert_eq!(rep.summands.len(), 1);
        assert!(matches!(
            rep.summands[0].label,
            SummandLabel::NonSplitDiscrete { family: SelfDualFamily::A3kPlus1, k: 1, form_class: FormClassDatum::ScalarClass(ref c) } if c.is_one()
        ));
    }

    #[test]
    fn framed_hom_triple_is_nonsplit_continuous() {
        let qq = Poly::parse(q(), "x^2-x+1/2").unwrap();
        let r = compatible_form_hom(&qq, 1, -1).unwrap();
        let FormProvenance::Hom { eta, .. } = &r.provenance else { unreachable!() };
        let s = build_framed(eta).unwrap();
        let rep = classify_triple(&triple_from(&s, r.h.clone()), 5).unwrap();
        assert_eq!(rep.summands.len(), 1);
        let SummandLabel::NonSplitContinuous { r: rr, m, form_class } = &rep.summands[0].label else {
            panic!("expected a non-split continuous summand, got {}", rep.summands[0].label);
        };
        assert_eq!(*rr, qq.shift(&q().frac(1, 2).unwrap()));
        assert_eq!(*rr, Poly::parse(q(), "x^2+1/4").unwrap());
        assert!(rr.is_even());
        assert_eq!(*m, 1);
        assert!(matches!(form_class, FormClassDatum::FClass { verdict: Solvability::Solvable { .. }, .. }));
    }

    #[test]
    fn eig_triple_is_nonsplit_continuous() {
        let half = q().frac(1, 2).unwrap();
        let r = compatible_form_eig(q(), 2, &[q().from_i64(3)], -1).unwrap();
        let s = build_framed(&Mat::jordan(2, &half)).unwrap();
        let rep = classify_triple(&triple_from(&s, r.h), 2).unwrap();
        assert_eq!(rep.summands.len(), 1);
        let SummandLabel::NonSplitContinuous { r, m, form_class } = &rep.summands[0].label else {
            panic!("expected a non-split continuous summand");
        };
        assert_eq!(*r, Poly::monomial(&q().one(), 2));
        assert_eq!(*m, 1);
        assert_eq!(*form_class, FormClassDatum::ScalarClass(q().from_i64(3)));
    }

    #[test]
    fn zero_triple_in_plane_is_self_dual_split() {
        let z = Subspace::zero(q(), 2);
        let t = IsotropicTriple::new(standard_symplectic(q(), 1), [z.clone(), z.clone(), z]).unwrap();
        let rep = classify_triple(&t, 0).unwrap();
        assert_eq!(rep.summands.len(), 1);
        let SummandLabel::Split { pair, names, .. } = &rep.summands[0].label else {
            panic!("expected split");
        };
        let a10 = DimensionVector::new(1, 1, 0, 1, 0, 1, 0);
        assert_eq!(pair, &[a10, a10]);
        assert_eq!(names[0].as_deref(), Some("A(1,0)"));
    }

    #[test]
    fn three_lines_square_class() {
        let f3 = FieldCtx::prime(3).unwrap();
        let s = build_discrete(f3, 1, DiscreteFamily::Minus1).unwrap();
        let h_can = build_hk_prime(f3, 1, &[f3.one()]).unwrap().h;
        let t2 = IsotropicTriple::new(h_can.scale(&f3.from_i64(2)), [s.i(1).clone(), s.i(2).clone(), s.i(3).clone()]).unwrap();
        let (c, _) = form_scalar_class(&t2, &s, &h_can, None, 0).unwrap();
        assert_eq!(c, FormClassDatum::ScalarClass(f3.from_i64(2)));
        let t1 = IsotropicTriple::new(h_can.clone(), [s.i(1).clone(), s.i(2).clone(), s.i(3).clone()]).unwrap();
        let (c, _) = form_scalar_class(&t1, &s, &h_can, None, 0).unwrap();
        assert_eq!(c, FormClassDatum::ScalarClass(f3.one()));
    }

    #[test]
    fn k_equals_four_is_solvable_over_f5() {
        let f5 = FieldCtx::prime(5).unwrap();
        let k = Mat::from_i64(f5, &[vec![4]]);
        let v = solve_x2_minus_y2(&k, &[Mat::identity(f5, 1)], &[]);
        assert_eq!(
            v,
            Solvability::Solvable {
                x: Mat::from_i64(f5, &[vec![2]]),
                y: Mat::zeros(f5, 1, 1)
            }
        );
        let k = Mat::from_i64(f5, &[vec![2]]);
        assert_eq!(solve_x2_minus_y2(&k, &[Mat::identity(f5, 1)], &[]), Solvability::Unsolvable);
    }

    #[test]
    fn census_small_primes() {
        for p in [3u64, 5] {
            let c = census_dim2(FieldCtx::prime(p).unwrap()).unwrap();
            assert_eq!(c.total, ((p + 2) as usize).pow(3));
            assert_eq!(c.count, 16);
        }
    }
}
