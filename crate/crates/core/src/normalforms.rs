//! Normal forms: the discrete self-dual sextuples `A(3k±1,0)` with their
//! compatible forms, frames and framed sextuples `S_η`, the continuous types
//! `Δ`, and the compatible-form constructions for self-dual framed sextuples.

use crate::error::{Error, Result};
use crate::exactla::{factor_poly, invariant_factors, is_irreducible, is_similar, Mat, Poly};
use crate::field::{FieldCtx, Scalar};
use crate::sextuple::Sextuple;
use crate::subspace::Subspace;

/// The two discrete self-dual families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscreteFamily {
    /// `A(3k+1,0)`, ambient dimension `3k+1`, `k ≥ 0`.
    Plus1,
    /// `A(3k−1,0)`, ambient dimension `3k−1`, `k ≥ 1`.
    Minus1,
}

impl DiscreteFamily {
    /// Ambient dimension of the member with index `k`.
    pub fn ambient(&self, k: usize) -> usize {
        match self {
            DiscreteFamily::Plus1 => 3 * k + 1,
            DiscreteFamily::Minus1 => 3 * k - 1,
        }
    }
}

/// Where a compatible form came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormProvenance {
    /// Block form built from the matrix `A_k`.
    Discrete(Mat),
    /// `H_{MQ}` for a Jordan block with eigenvalue `1/2`.
    Eig { m: Mat, q: Mat },
    /// `H_M` with `M` assembled from `T`; `eta` is the underlying endomorphism.
    Hom { t: Mat, m: Mat, eta: Mat },
}

/// An explicit compatible ε-symmetric form together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleFormRecipe {
    pub h: Mat,
    pub epsilon: i8,
    pub parameters: Vec<Scalar>,
    pub provenance: FormProvenance,
}

/// A frame `A1, A2, A3, A12, A23, A31` with its transition maps.
///
/// Each `h_ij` is the coordinate matrix (acting on column coordinates) of the
/// isomorphism `A_i → A_j` whose negative graph is `A_ij`, with respect to the
/// stored RREF bases of `A_i` and `A_j`.
#[derive(Debug, Clone)]
pub struct Frame {
    pub a1: Subspace,
    pub a2: Subspace,
    pub a3: Subspace,
    pub a12: Subspace,
    pub a23: Subspace,
    pub a31: Subspace,
    pub h12: Mat,
    pub h23: Mat,
    pub h31: Mat,
}

/// A frame together with a complement `C` of `A1` in `A1 + A2`.
#[derive(Debug, Clone)]
pub struct AugmentedFrame {
    pub frame: Frame,
    pub c: Subspace,
    /// Underlying endomorphism `h12 ∘ h` of `A2`, in the basis of `A2`.
    pub eta: Mat,
    /// Frame basis `u_1..u_d, v_1..v_d, w_1..w_d` as rows.
    pub basis: Mat,
}

/// Isomorphism types of indecomposable continuous-type sextuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContinuousLabel {
    /// `Δ(k;γ)` with `γ` indecomposable and without eigenvalues 0 or 1.
    Delta { k: usize, gamma: Mat },
    /// `Δ₁(k;1)`.
    Delta1_1(usize),
    /// `Δ₂(k;1)`.
    Delta2_1(usize),
    /// `Δ_i(k;0)`, `i ∈ {1,2,3}`.
    DeltaZero { i: usize, k: usize },
    /// `Δ_i(k;∞)`, `i ∈ {1,2,3}`.
    DeltaInf { i: usize, k: usize },
}

impl ContinuousLabel {
    pub fn k(&self) -> usize {
        match self {
            ContinuousLabel::Delta { k, .. } => *k,
            ContinuousLabel::Delta1_1(k) | ContinuousLabel::Delta2_1(k) => *k,
            ContinuousLabel::DeltaZero { k, .. } | ContinuousLabel::DeltaInf { k, .. } => *k,
        }
    }

    /// Equality of labels, comparing `γ` up to similarity.
    pub fn same_class(&self, o: &ContinuousLabel) -> bool {
        match (self, o) {
            (ContinuousLabel::Delta { k: a, gamma: g }, ContinuousLabel::Delta { k: b, gamma: h }) => {
                a == b && is_similar(g, h)
            }
            _ => self == o,
        }
    }
}

impl std::fmt::Display for ContinuousLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ContinuousLabel::Delta { k, gamma } => {
                let inv: Vec<String> = invariant_factors(gamma).iter().map(|p| p.to_string()).collect();
                write!(f, "Delta({}; {})", k, inv.join(", "))
            }
            ContinuousLabel::Delta1_1(k) => write!(f, "Delta_1({}; 1)", k),
            ContinuousLabel::Delta2_1(k) => write!(f, "Delta_2({}; 1)", k),
            ContinuousLabel::DeltaZero { i, k } => write!(f, "Delta_{}({}; 0)", i, k),
            ContinuousLabel::DeltaInf { i, k } => write!(f, "Delta_{}({}; inf)", i, k),
        }
    }
}

fn span_rows(ctx: FieldCtx, n: usize, m: &Mat) -> Subspace {
    if m.rows == 0 {
        Subspace::zero(ctx, n)
    } else {
        Subspace::span(m)
    }
}

/// Row vector with a single one at position `i`.
fn unit(ctx: FieldCtx, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![ctx.zero(); n];
    v[i] = ctx.one();
    v
}

/// `e_i − e_j` as a row vector.
fn diff(ctx: FieldCtx, n: usize, i: usize, j: usize) -> Vec<Scalar> {
    let mut v = vec![ctx.zero(); n];
    v[i] = ctx.one();
    v[j] = -ctx.one();
    v
}

fn span_vecs(ctx: FieldCtx, n: usize, vecs: Vec<Vec<Scalar>>) -> Subspace {
    Subspace::from_vectors(ctx, n, &vecs)
}

/// The discrete self-dual sextuple with index `k` over its standard basis.
///
/// `Plus1` uses the basis `e_1..e_{k+1}, f_1..f_k, g_1..g_k`; `Minus1` uses
/// `e_2..e_k, f_1..f_k, g_1..g_k`.
pub fn build_discrete(ctx: FieldCtx, k: usize, family: DiscreteFamily) -> Result<Sextuple> {
    match family {
        DiscreteFamily::Plus1 => {
            let n = 3 * k + 1;
            let e = |i: usize| i - 1;
            let f = |i: usize| k + i;
            let g = |i: usize| 2 * k + i;
            let i1 = (1..=k).map(|i| diff(ctx, n, e(i), f(i))).collect();
            let i2 = (1..=k).map(|i| unit(ctx, n, g(i))).collect();
            let i3: Vec<_> = (1..=k).map(|i| diff(ctx, n, f(i), g(i))).collect();
            let es: Vec<_> = (1..=k + 1).map(|i| unit(ctx, n, e(i))).collect();
            let mut c1 = es.clone();
            c1.extend((1..=k).map(|i| unit(ctx, n, f(i))));
            let mut c2 = es;
            c2.extend((1..=k).map(|i| unit(ctx, n, g(i))));
            let mut c3 = vec![unit(ctx, n, e(1))];
            c3.extend((1..=k).map(|i| diff(ctx, n, e(i + 1), f(i))));
            c3.extend(i3.iter().cloned());
            Sextuple::new([
                span_vecs(ctx, n, c1),
                span_vecs(ctx, n, i1),
                span_vecs(ctx, n, c2),
                span_vecs(ctx, n, i2),
                span_vecs(ctx, n, c3),
                span_vecs(ctx, n, i3),
            ])
        }
        DiscreteFamily::Minus1 => {
            if k == 0 {
                return Err(Error::InvalidK("the A(3k-1,0) family starts at k = 1".into()));
            }
            let n = 3 * k - 1;
            // e_2..e_k occupy positions 0..k-2.
            let e = |i: usize| i - 2;
            let f = |i: usize| k - 1 + i - 1;
            let g = |i: usize| 2 * k - 1 + i - 1;
            let mut i1 = vec![unit(ctx, n, f(1))];
            i1.extend((2..=k).map(|i| diff(ctx, n, f(i), e(i))));
            let i2 = (1..=k).map(|i| unit(ctx, n, g(i))).collect();
            let i3: Vec<_> = (1..=k).map(|i| diff(ctx, n, f(i), g(i))).collect();
            let es: Vec<_> = (2..=k).map(|i| unit(ctx, n, e(i))).collect();
            let mut c1 = es.clone();
            c1.extend((1..=k).map(|i| unit(ctx, n, f(i))));
            let mut c2 = es;
            c2.extend((1..=k).map(|i| unit(ctx, n, g(i))));
            let mut c3: Vec<_> = (1..k).map(|i| diff(ctx, n, f(i), e(i + 1))).collect();
            c3.extend(i3.iter().cloned());
            Sextuple::new([
                span_vecs(ctx, n, c1),
                span_vecs(ctx, n, i1),
                span_vecs(ctx, n, c2),
                span_vecs(ctx, n, i2),
                span_vecs(ctx, n, c3),
                span_vecs(ctx, n, i3),
            ])
        }
    }
}

/// Number of free parameters of `A_k`.
pub fn a_matrix_param_count(k: usize) -> usize {
    k / 2 + 1
}

/// The matrix `A_k` of size `(k+1) x (k+1)` from the recursive construction.
///
/// `params[0] = c_1 = a_{1,k+1}` must be nonzero; the remaining entries are the
/// free values chosen at each recursion level, innermost first.
pub fn a_matrix(ctx: FieldCtx, k: usize, params: &[Scalar]) -> Result<Mat> {
    let need = a_matrix_param_count(k);
    if params.len() != need {
        return Err(Error::InvalidParams(format!(
            "A_{} needs {} parameters, got {}",
            k,
            need,
            params.len()
        )));
    }
    if params[0].is_zero() {
        return Err(Error::InvalidParams("the first parameter must be nonzero".into()));
    }
    Ok(a_matrix_rec(ctx, k, params))
}

fn a_matrix_rec(ctx: FieldCtx, k: usize, p: &[Scalar]) -> Mat {
    if k == 0 {
        return Mat::from_rows(ctx, vec![vec![p[0].clone()]]);
    }
    if k == 1 {
        return Mat::from_rows(ctx, vec![vec![ctx.zero(), p[0].clone()], vec![-&p[0], ctx.zero()]]);
    }
    let mut inner_p = vec![-&p[0]];
    inner_p.extend_from_slice(&p[1..p.len() - 1]);
    let inner = a_matrix_rec(ctx, k - 2, &inner_p);
    let free = p[p.len() - 1].clone();
    let mut a = Mat::zeros(ctx, k + 1, k + 1);
    a.set_block(1, 1, &inner);
    a[(0, k)] = -&a[(1, k - 1)];
    for i in 1..k - 1 {
        a[(i, k)] = &a[(i, k - 1)] - &a[(i + 1, k - 1)];
    }
    if k % 2 == 0 {
        a[(k - 1, k)] = &a[(k - 1, k - 1)] * &ctx.frac(1, 2).expect("odd characteristic");
        a[(k, k)] = free;
    } else {
        a[(k - 1, k)] = free;
        a[(k, k)] = ctx.zero();
    }
    let eps = if k % 2 == 0 { ctx.one() } else { -ctx.one() };
    for i in 0..k {
        a[(k, i)] = &eps * &a[(i, k)];
    }
    a
}

/// The compatible form `H_k` on `A(3k+1,0)` in its standard basis.
pub fn build_hk(ctx: FieldCtx, k: usize, params: &[Scalar]) -> Result<CompatibleFormRecipe> {
    let a = a_matrix(ctx, k, params)?;
    let n = 3 * k + 1;
    let mut h = Mat::zeros(ctx, n, n);
    // Row/column offsets of the e, f and g blocks.
    let (oe, of, og) = (0, k + 1, 2 * k + 1);
    h.set_block(oe, oe, &a);
    if k > 0 {
        h.set_block(oe, of, &a.block(0, k + 1, 0, k));
        h.set_block(of, oe, &a.block(0, k, 0, k + 1));
        h.set_block(of, of, &a.block(0, k, 0, k));
        h.set_block(of, og, &a.block(0, k, 1, k + 1));
        h.set_block(og, of, &a.block(1, k + 1, 0, k));
    }
    Ok(CompatibleFormRecipe {
        h,
        epsilon: if k % 2 == 0 { 1 } else { -1 },
        parameters: params.to_vec(),
        provenance: FormProvenance::Discrete(a),
    })
}

/// The compatible form `H_k′` on `A(3k−1,0)`: `H_k` without the rows and
/// columns of `e_1` and `e_{k+1}`.
pub fn build_hk_prime(ctx: FieldCtx, k: usize, params: &[Scalar]) -> Result<CompatibleFormRecipe> {
    if k == 0 {
        return Err(Error::InvalidK("the A(3k-1,0) family starts at k = 1".into()));
    }
    let full = build_hk(ctx, k, params)?;
    let keep: Vec<usize> = (0..3 * k + 1).filter(|&i| i != 0 && i != k).collect();
    Ok(CompatibleFormRecipe {
        h: full.h.select(&keep, &keep),
        ..full
    })
}

/// `[a | b | c]` with `None` standing for a zero block of width `d`.
fn row3(ctx: FieldCtx, d: usize, blocks: [Option<Mat>; 3]) -> Mat {
    let z = Mat::zeros(ctx, d, d);
    let [a, b, c] = blocks;
    a.unwrap_or_else(|| z.clone())
        .hstack(&b.unwrap_or_else(|| z.clone()))
        .hstack(&c.unwrap_or(z))
}

fn sextuple_from_rows(ctx: FieldCtx, n: usize, rows: [Mat; 6]) -> Result<Sextuple> {
    Sextuple::new(rows.map(|m| span_rows(ctx, n, &m)))
}

/// The framed sextuple `S_η` on `U x U x U` in its frame basis:
/// `I1 = U×0×0`, `I2 = 0×0×U`, `I3 = {(−ηx, x, −x)}`, `C1 = U×U×0`,
/// `C2 = 0×U×U`, `C3 = {(x, −x, 0)} + I3`.
pub fn build_framed(eta: &Mat) -> Result<Sextuple> {
    if !eta.is_square() {
        return Err(Error::ShapeMismatch("eta must be square".into()));
    }
    let ctx = eta.ctx;
    let d = eta.rows;
    let id = Mat::identity(ctx, d);
    let neg = id.scale(&-ctx.one());
    let i3 = row3(ctx, d, [Some(eta.transpose().scale(&-ctx.one())), Some(id.clone()), Some(neg.clone())]);
    let c3 = row3(ctx, d, [Some(id.clone()), Some(neg), None]).vstack(&i3);
    sextuple_from_rows(
        ctx,
        3 * d,
        [
            row3(ctx, d, [Some(id.clone()), None, None]).vstack(&row3(ctx, d, [None, Some(id.clone()), None])),
            row3(ctx, d, [Some(id.clone()), None, None]),
            row3(ctx, d, [None, Some(id.clone()), None]).vstack(&row3(ctx, d, [None, None, Some(id.clone())])),
            row3(ctx, d, [None, None, Some(id)]),
            c3,
            i3,
        ],
    )
}

/// True iff `a ⊕ b = total`.
fn is_direct_sum(a: &Subspace, b: &Subspace, total: &Subspace) -> Result<bool> {
    Ok(a.dim() + b.dim() == total.dim() && a.sum(b)? == *total)
}

/// Coordinate matrix of the map `h: A_i → A_j` whose negative graph is `g`.
fn graph_map(g: &Subspace, bi: &Mat, bj: &Mat, name: &str) -> Result<Mat> {
    let d = bi.rows;
    let both = bi.vstack(bj);
    let coords = both
        .solve_left(&g.basis)
        .map_err(|_| Error::NotFramed(format!("{} is not inside the expected sum", name)))?;
    let p = coords.block(0, d, 0, d);
    let q = coords.block(0, d, d, 2 * d);
    let pinv = p
        .inverse()
        .map_err(|_| Error::NotFramed(format!("{} is not a graph over its source", name)))?;
    Ok((&pinv * &q).scale(&-g.ctx.one()).transpose())
}

/// Recover the augmented frame underlying a framed sextuple.
pub fn extract_frame(psi: &Sextuple) -> Result<AugmentedFrame> {
    let n = psi.ambient;
    if n % 3 != 0 || n == 0 {
        return Err(Error::NotFramed(format!("ambient dimension {} is not a positive multiple of 3", n)));
    }
    let d = n / 3;
    let a1 = psi.i(1).clone();
    let a2 = psi.c(1).intersect(psi.c(2))?;
    let a3 = psi.i(2).clone();
    let a12 = psi.c(1).intersect(psi.c(3))?;
    let a23 = psi.i(3).sum(psi.i(1))?.intersect(psi.c(2))?;
    let a31 = a1.sum(&a3)?.intersect(&a12.sum(&a23)?)?;
    let c = psi.i(2).sum(psi.i(3))?.intersect(psi.c(1))?;
    for (name, s) in [("A1", &a1), ("A2", &a2), ("A3", &a3), ("A12", &a12), ("A23", &a23), ("A31", &a31), ("C", &c)] {
        if s.dim() != d {
            return Err(Error::NotFramed(format!("{} has dimension {} instead of {}", name, s.dim(), d)));
        }
    }
    let full = Subspace::full(psi.ctx, n);
    if a1.sum(&a2)?.sum(&a3)? != full {
        return Err(Error::NotFramed("A1 + A2 + A3 is not the whole space".into()));
    }
    let s12 = a1.sum(&a2)?;
    let s23 = a2.sum(&a3)?;
    let s31 = a3.sum(&a1)?;
    let checks = [
        (&a1, &a12, &s12),
        (&a2, &a12, &s12),
        (&a2, &a23, &s23),
        (&a3, &a23, &s23),
        (&a3, &a31, &s31),
        (&a1, &a31, &s31),
        (&a1, &c, &s12),
    ];
    for (x, y, t) in checks {
        if !is_direct_sum(x, y, t)? {
            return Err(Error::NotFramed("a frame direct-sum relation fails".into()));
        }
    }
    let (b1, b2, b3) = (&a1.basis, &a2.basis, &a3.basis);
    let h12 = graph_map(&a12, b1, b2, "A12")?;
    let h23 = graph_map(&a23, b2, b3, "A23")?;
    let h31 = graph_map(&a31, b3, b1, "A31")?;
    let h = graph_map(&c, b2, b1, "C")?;
    if !(&(&h31 * &h23) * &h12).is_identity() {
        return Err(Error::NotFramed("transition maps do not compose to the identity".into()));
    }
    let eta = &h12 * &h;
    let h21 = h12.inverse()?;
    let u = &h21.transpose() * b1;
    let w = &h23.transpose() * b3;
    let basis = u.vstack(b2).vstack(&w);
    Ok(AugmentedFrame {
        frame: Frame {
            a1,
            a2,
            a3,
            a12,
            a23,
            a31,
            h12,
            h23,
            h31,
        },
        c,
        eta,
        basis,
    })
}

/// `γ ↦ γ(γ − I)⁻¹`; this map is an involution and converts between the
/// `γ` of `Δ(k;γ)` and the underlying endomorphism `η` of its frame.
pub fn gamma_to_eta(gamma: &Mat) -> Result<Mat> {
    let id = Mat::identity(gamma.ctx, gamma.rows);
    let inv = (gamma - &id)
        .inverse()
        .map_err(|_| Error::InvalidGamma("matrix has eigenvalue 1".into()))?;
    Ok(gamma * &inv)
}

/// The same involution read in the other direction.
pub fn eta_to_gamma(eta: &Mat) -> Result<Mat> {
    gamma_to_eta(eta)
}

/// True iff `m` has a single elementary divisor, a power of one irreducible.
pub fn is_indecomposable_endo(m: &Mat) -> bool {
    if m.rows == 0 {
        return false;
    }
    let inv = invariant_factors(m);
    inv.len() == 1 && factor_poly(&inv[0]).len() == 1
}

fn has_eigenvalue(m: &Mat, lam: &Scalar) -> bool {
    !(m - &Mat::scalar_matrix(m.rows, lam)).is_invertible()
}

/// Normal form of a continuous-type sextuple on `X x X x X`.
pub fn build_continuous(ctx: FieldCtx, label: &ContinuousLabel) -> Result<Sextuple> {
    let k = label.k();
    if k == 0 {
        return Err(Error::InvalidK("continuous types need k >= 1".into()));
    }
    let id = Mat::identity(ctx, k);
    let neg = id.scale(&-ctx.one());
    let x = |a: Option<Mat>, b: Option<Mat>, c: Option<Mat>| row3(ctx, k, [a, b, c]);
    let c1 = x(Some(id.clone()), None, None).vstack(&x(None, Some(id.clone()), None));
    let c2 = x(None, Some(id.clone()), None).vstack(&x(None, None, Some(id.clone())));
    let c3 = x(Some(id.clone()), None, None).vstack(&x(None, None, Some(id.clone())));
    let i2_std = x(None, Some(id.clone()), Some(id.clone()));
    let i3_std = x(Some(id.clone()), None, Some(id.clone()));
    let i1_std = x(Some(id.clone()), Some(id.clone()), None);
    let nil = Mat::jordan(k, &ctx.zero());
    let nt = nil.transpose();
    let rows = match label {
        ContinuousLabel::Delta { gamma, .. } => {
            if gamma.rows != k || !gamma.is_square() {
                return Err(Error::InvalidGamma("gamma has the wrong size".into()));
            }
            if has_eigenvalue(gamma, &ctx.zero()) || has_eigenvalue(gamma, &ctx.one()) {
                return Err(Error::InvalidGamma("gamma has eigenvalue 0 or 1".into()));
            }
            if !is_indecomposable_endo(gamma) {
                return Err(Error::InvalidGamma("gamma is decomposable".into()));
            }
            let i1 = x(Some(id.clone()), Some(gamma.transpose().scale(&-ctx.one())), None);
            [c1, i1, c2, i2_std, c3, i3_std]
        }
        ContinuousLabel::Delta1_1(_) => {
            let g = Mat::jordan(k, &ctx.one());
            let i1 = x(Some(id.clone()), Some(g.transpose().scale(&-ctx.one())), None);
            [c1, i1, c2, i2_std, c3, i3_std]
        }
        ContinuousLabel::Delta2_1(_) => {
            let g = Mat::jordan(k, &ctx.one());
            let c1 = x(None, None, Some(id.clone())).vstack(&x(Some(id.clone()), Some(g.transpose()), None));
            let c2 = x(Some(id.clone()), None, None).vstack(&x(None, Some(id.clone()), Some(neg.clone())));
            let c3 = x(None, Some(id.clone()), None).vstack(&x(Some(neg.clone()), None, Some(id.clone())));
            [
                c1,
                x(None, None, Some(id.clone())),
                c2,
                x(Some(id.clone()), None, None),
                c3,
                x(None, Some(id.clone()), None),
            ]
        }
        ContinuousLabel::DeltaZero { i, .. } | ContinuousLabel::DeltaInf { i, .. } => {
            let zero = matches!(label, ContinuousLabel::DeltaZero { .. });
            let (i1, i2, i3) = match (i, zero) {
                (1, true) => (x(Some(id.clone()), Some(nt.clone()), None), i2_std, i3_std),
                (1, false) => (x(Some(nt.clone()), Some(id.clone()), None), i2_std, i3_std),
                (2, true) => (i1_std, x(None, Some(id.clone()), Some(nt.clone())), i3_std),
                (2, false) => (i1_std, x(None, Some(nt.clone()), Some(id.clone())), i3_std),
                (3, true) => (i1_std, i2_std, x(Some(nt.clone()), None, Some(id.clone()))),
                (3, false) => (i1_std, i2_std, x(Some(id.clone()), None, Some(nt.clone()))),
                _ => return Err(Error::InvalidParams(format!("position {} is not in 1..=3", i))),
            };
            [c1, i1, c2, i2, c3, i3]
        }
    };
    sextuple_from_rows(ctx, 3 * k, rows)
}

/// The eight dimensions distinguishing the continuous types:
/// `I1+I2+I3`, `C1∩C2∩C3`, `I1∩C3`, `I3∩C1`, `I2∩C1`, `I1∩C2`, `I3∩C2`, `I2∩C3`.
pub fn continuous_dim_vector(psi: &Sextuple) -> Result<[usize; 8]> {
    let (i1, i2, i3) = (psi.i(1), psi.i(2), psi.i(3));
    let (c1, c2, c3) = (psi.c(1), psi.c(2), psi.c(3));
    Ok([
        i1.sum(i2)?.sum(i3)?.dim(),
        c1.intersect(c2)?.intersect(c3)?.dim(),
        i1.intersect(c3)?.dim(),
        i3.intersect(c1)?.dim(),
        i2.intersect(c1)?.dim(),
        i1.intersect(c2)?.dim(),
        i3.intersect(c2)?.dim(),
        i2.intersect(c3)?.dim(),
    ])
}

/// Name the type of an indecomposable continuous-type sextuple.
pub fn identify_continuous(psi: &Sextuple) -> Result<ContinuousLabel> {
    let n = psi.ambient;
    let dv = psi.dimension_vector();
    if n == 0 || n % 3 != 0 {
        return Err(Error::NotContinuous(format!("ambient dimension {} is not a positive multiple of 3", n)));
    }
    let k = n / 3;
    if (1..=3).any(|j| dv.c(j) != 2 * k || dv.i(j) != k) {
        return Err(Error::NotContinuous(format!("dimension vector {} is not continuous", dv)));
    }
    let e = continuous_dim_vector(psi)?;
    let rest = &e[1..];
    let ones: Vec<usize> = rest.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect();
    let label = if e[0] == n - 1 && ones.is_empty() {
        ContinuousLabel::Delta1_1(k)
    } else if e[0] == n && ones.is_empty() {
        let frame = extract_frame(psi).map_err(|err| Error::NotContinuous(err.to_string()))?;
        let gamma = eta_to_gamma(&frame.eta)?;
        if !is_indecomposable_endo(&gamma) {
            return Err(Error::NotContinuous("the underlying endomorphism is decomposable".into()));
        }
        ContinuousLabel::Delta { k, gamma }
    } else if e[0] == n && ones.len() == 1 && rest[ones[0]] == 1 {
        match ones[0] + 1 {
            1 => ContinuousLabel::Delta2_1(k),
            2 => ContinuousLabel::DeltaZero { i: 1, k },
            3 => ContinuousLabel::DeltaInf { i: 3, k },
            4 => ContinuousLabel::DeltaZero { i: 2, k },
            5 => ContinuousLabel::DeltaInf { i: 1, k },
            6 => ContinuousLabel::DeltaZero { i: 3, k },
            _ => ContinuousLabel::DeltaInf { i: 2, k },
        }
    } else {
        return Err(Error::NotContinuous(format!("unexpected intersection dimensions {:?}", e)));
    };
    Ok(label)
}

/// Underlying endomorphism of the dual of `S_η`: `(I − η)ᵀ`.
pub fn dual_framed(eta: &Mat) -> Mat {
    (&Mat::identity(eta.ctx, eta.rows) - eta).transpose()
}

/// `H_M = [[0,0,−M],[0,M,0],[−M,0,0]]`.
pub fn h_of_m(m: &Mat) -> Mat {
    let ctx = m.ctx;
    let z = Mat::zeros(ctx, m.rows, m.cols);
    let neg = m.scale(&-ctx.one());
    Mat::from_blocks(&[
        vec![z.clone(), z.clone(), neg.clone()],
        vec![z.clone(), m.clone(), z.clone()],
        vec![neg, z.clone(), z],
    ])
}

/// The alternating anti-diagonal matrix with `m_{k−j+1,j} = (−1)^{j+1}`.
pub fn alternating_antidiagonal(ctx: FieldCtx, k: usize) -> Mat {
    let mut m = Mat::zeros(ctx, k, k);
    for j in 0..k {
        m[(k - 1 - j, j)] = if j % 2 == 0 { ctx.one() } else { -ctx.one() };
    }
    m
}

/// Compatible forms `H_{MQ}` on `S_η` with `η = J_k(1/2)` in its Jordan
/// frame basis, where `Q = Σ a_i N^i` over even `i`.
///
/// `coeffs` lists `a_0, a_2, a_4, ...`; missing entries are zero. The form is
/// symplectic for even `k` and symmetric for odd `k`; requesting the other
/// parity is an `InvalidK` error.
pub fn compatible_form_eig(ctx: FieldCtx, k: usize, coeffs: &[Scalar], eps: i8) -> Result<CompatibleFormRecipe> {
    if k == 0 {
        return Err(Error::InvalidK("k must be positive".into()));
    }
    let natural = if k % 2 == 0 { -1 } else { 1 };
    if eps != natural {
        return Err(Error::InvalidK(format!(
            "a Jordan block of size {} only carries {} compatible forms",
            k,
            if natural < 0 { "symplectic" } else { "symmetric" }
        )));
    }
    let slots = k.div_ceil(2);
    if coeffs.is_empty() || coeffs.len() > slots {
        return Err(Error::InvalidParams(format!("expected between 1 and {} coefficients", slots)));
    }
    if coeffs[0].is_zero() {
        return Err(Error::InvalidParams("a_0 must be nonzero".into()));
    }
    let n = Mat::jordan(k, &ctx.zero());
    let mut q = Mat::zeros(ctx, k, k);
    let n2 = &n * &n;
    let mut pw = Mat::identity(ctx, k);
    for a in coeffs {
        q = &q + &pw.scale(a);
        pw = &pw * &n2;
    }
    let m = alternating_antidiagonal(ctx, k);
    let mq = &m * &q;
    Ok(CompatibleFormRecipe {
        h: h_of_m(&mq),
        epsilon: eps,
        parameters: coeffs.to_vec(),
        provenance: FormProvenance::Eig { m, q },
    })
}

/// `x^e mod r` as a coefficient vector of length `deg r`.
fn power_mod_coeffs(r: &Poly, e: usize) -> Vec<Scalar> {
    let l = r.deg();
    let p = Poly::monomial(&r.ctx.one(), e).rem(r);
    (0..l).map(|i| p.coeff(i)).collect()
}

/// Invertible `T` with `T A T⁻¹ = −Aᵀ` for `A = companion(r)`: a skew-symmetric
/// one built as `S·D` from the functional picking the coefficient of `μ^{l−1}`,
/// and a symmetric one built from the coefficient of `μ^{l−2}`.
pub fn skew_sym_t(r: &Poly) -> Result<(Mat, Mat)> {
    let ctx = r.ctx;
    let r = r.monic();
    if !r.is_even() || r.deg() == 0 {
        return Err(Error::NotEvenPolynomial);
    }
    if !is_irreducible(&r)? {
        return Err(Error::NotIrreducible);
    }
    let l = r.deg();
    let tau = |e: usize, slot: usize| power_mod_coeffs(&r, e)[slot].clone();
    let mut skew = Mat::zeros(ctx, l, l);
    let mut sym = Mat::zeros(ctx, l, l);
    for i in 0..l {
        for j in 0..l {
            let s = tau(i + j, l - 1);
            skew[(i, j)] = if j % 2 == 0 { s } else { -s };
            let t = tau(i + j, l - 2);
            sym[(i, j)] = if i % 2 == 1 { t } else { -t };
        }
    }
    Ok((skew, sym))
}

/// Compatible form `H_M` on `S_η` where `η = (½I + Z̃)I + N^l` is in
/// generalized Jordan form with `Z̃ = companion(r)`, `r(x) = q(x + ½)`, and
/// `m` Jordan blocks. The parity `eps` of the result is chosen by taking `T`
/// with `ε(T) = (−1)^{m+1}·eps`.
pub fn compatible_form_hom(q: &Poly, m: usize, eps: i8) -> Result<CompatibleFormRecipe> {
    let ctx = q.ctx;
    if m == 0 {
        return Err(Error::InvalidK("m must be positive".into()));
    }
    let q = q.monic();
    if !is_irreducible(&q)? {
        return Err(Error::NotIrreducible);
    }
    let half = ctx.frac(1, 2)?;
    let r = q.shift(&half);
    if r.deg() < 2 || !r.is_even() {
        return Err(Error::NotSelfDualPolynomial);
    }
    let (t_skew, t_sym) = skew_sym_t(&r)?;
    let sign_m: i8 = if m % 2 == 1 { 1 } else { -1 };
    let t = if eps * sign_m > 0 { t_sym } else { t_skew };
    let l = r.deg();
    let z = &Mat::scalar_matrix(l, &half) + &r.companion();
    let eta = crate::exactla::jordan_normal_form(&z, m);
    let mut big = Mat::zeros(ctx, m * l, m * l);
    for i in 0..m {
        let j = m - 1 - i;
        // Block (i, m+1−i) in one-based indexing carries (−1)^{m−i} T.
        let blk = if (m - 1 - i) % 2 == 0 { t.clone() } else { t.scale(&-ctx.one()) };
        big.set_block(i * l, j * l, &blk);
    }
    Ok(CompatibleFormRecipe {
        h: h_of_m(&big),
        epsilon: eps,
        parameters: vec![],
        provenance: FormProvenance::Hom { t, m: big, eta },
    })
}
