//! Representations of the poset 2+2+2: sextuples `I_j ⊆ C_j` in one space.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{factor_poly, fitting, min_poly, Mat, Poly};
use crate::field::{FieldCtx, Scalar};
use crate::subspace::Subspace;

/// Dimension vector `(v; c1, i1; c2, i2; c3, i3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(pub [usize; 7]);

impl DimensionVector {
    pub fn new(v: usize, c1: usize, i1: usize, c2: usize, i2: usize, c3: usize, i3: usize) -> Self {
        DimensionVector([v, c1, i1, c2, i2, c3, i3])
    }

    pub fn v(&self) -> usize {
        self.0[0]
    }

    /// `c_j` for `j` in 1..=3.
    pub fn c(&self, j: usize) -> usize {
        self.0[2 * j - 1]
    }

    /// `i_j` for `j` in 1..=3.
    pub fn i(&self, j: usize) -> usize {
        self.0[2 * j]
    }

    /// Value of the Tits quadratic form.
    pub fn tits_form(&self) -> i64 {
        let v = self.v() as i64;
        let mut twice = -v * v;
        for j in 1..=3 {
            let (c, i) = (self.c(j) as i64, self.i(j) as i64);
            twice += (v - c).pow(2) + (c - i).pow(2) + i * i;
        }
        twice / 2
    }

    /// Defect `sum c_j + sum i_j - 3v`.
    pub fn defect(&self) -> i64 {
        (1..=3).map(|j| (self.c(j) + self.i(j)) as i64).sum::<i64>() - 3 * self.v() as i64
    }

    /// Dimension vector of the dual representation.
    pub fn dual(&self) -> DimensionVector {
        let v = self.v();
        let mut d = [v, 0, 0, 0, 0, 0, 0];
        for j in 1..=3 {
            d[2 * j - 1] = v - self.i(j);
            d[2 * j] = v - self.c(j);
        }
        DimensionVector(d)
    }

    pub fn is_self_dual(&self) -> bool {
        (1..=3).all(|j| self.c(j) + self.i(j) == self.v())
    }

    pub fn add(&self, o: &DimensionVector) -> DimensionVector {
        let mut d = self.0;
        for (x, y) in d.iter_mut().zip(o.0) {
            *x += y;
        }
        DimensionVector(d)
    }

    /// The generator `(3;2,1;2,1;2,1)` of the null ray.
    pub fn nu() -> DimensionVector {
        DimensionVector::new(3, 2, 1, 2, 1, 2, 1)
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.0;
        write!(f, "({};{},{};{},{};{},{})", d[0], d[1], d[2], d[3], d[4], d[5], d[6])
    }
}

/// Six subspaces `C1, I1, C2, I2, C3, I3` of one ambient space with `I_j ⊆ C_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sextuple {
    pub ctx: FieldCtx,
    pub ambient: usize,
    /// Ordered as `[C1, I1, C2, I2, C3, I3]`.
    pub subs: [Subspace; 6],
}

impl Sextuple {
    /// Build from `[C1, I1, C2, I2, C3, I3]`, checking `I_j ⊆ C_j`.
    pub fn new(subs: [Subspace; 6]) -> Result<Sextuple> {
        let n = subs[0].ambient;
        let ctx = subs[0].ctx;
        for s in &subs {
            if s.ambient != n {
                return Err(Error::AmbientMismatch(n, s.ambient));
            }
        }
        for j in 0..3 {
            if !subs[2 * j].contains(&subs[2 * j + 1]) {
                return Err(Error::InvalidParams(format!("I{} is not contained in C{}", j + 1, j + 1)));
            }
        }
        Ok(Sextuple { ctx, ambient: n, subs })
    }

    /// `C_j` for `j` in 1..=3.
    pub fn c(&self, j: usize) -> &Subspace {
        &self.subs[2 * j - 2]
    }

    /// `I_j` for `j` in 1..=3.
    pub fn i(&self, j: usize) -> &Subspace {
        &self.subs[2 * j - 1]
    }

    pub fn dimension_vector(&self) -> DimensionVector {
        let mut d = [self.ambient, 0, 0, 0, 0, 0, 0];
        for (k, s) in self.subs.iter().enumerate() {
            d[k + 1] = s.dim();
        }
        DimensionVector(d)
    }

    /// The dual representation on `V*`: `I_j* = C_j°`, `C_j* = I_j°`.
    pub fn dual(&self) -> Sextuple {
        let mut subs = Vec::with_capacity(6);
        for j in 1..=3 {
            subs.push(self.i(j).annihilator());
            subs.push(self.c(j).annihilator());
        }
        Sextuple {
            ctx: self.ctx,
            ambient: self.ambient,
            subs: subs.try_into().unwrap(),
        }
    }

    /// Transport along an invertible map `g`: each subspace `X` becomes `gX`.
    pub fn transform(&self, g: &Mat) -> Sextuple {
        Sextuple {
            ctx: self.ctx,
            ambient: self.ambient,
            subs: self.subs.clone().map(|s| s.image(g)),
        }
    }

    /// External direct sum on `V ⊕ V'`.
    pub fn direct_sum(&self, o: &Sextuple) -> Sextuple {
        let n = self.ambient + o.ambient;
        let subs: Vec<Subspace> = self
            .subs
            .iter()
            .zip(&o.subs)
            .map(|(a, b)| {
                let m = Mat::block_diag(&[&a.basis, &b.basis]);
                let mut s = Subspace::span(&m);
                s.ambient = n;
                if s.basis.rows == 0 {
                    s.basis = Mat::zeros(self.ctx, 0, n);
                }
                s
            })
            .collect();
        Sextuple {
            ctx: self.ctx,
            ambient: n,
            subs: subs.try_into().unwrap(),
        }
    }

    /// Restriction to a subspace `W` with basis rows `b`: each `X` becomes
    /// `X ∩ W` in the coordinates of `b`.
    pub fn restrict(&self, b: &Mat) -> Result<Sextuple> {
        let w = Subspace::span(b);
        let d = b.rows;
        let mut subs = Vec::with_capacity(6);
        for s in &self.subs {
            let x = s.intersect(&w)?;
            if x.is_zero() {
                subs.push(Subspace::zero(self.ctx, d));
            } else {
                subs.push(Subspace::span(&Subspace::coordinates(b, &x.basis)?));
            }
        }
        Ok(Sextuple {
            ctx: self.ctx,
            ambient: d,
            subs: subs.try_into().unwrap(),
        })
    }

    /// True iff the map `f` (acting on columns) sends each subspace into its counterpart.
    pub fn is_morphism(&self, f: &Mat, target: &Sextuple) -> bool {
        self.subs
            .iter()
            .zip(&target.subs)
            .all(|(x, y)| y.contains(&x.image(f)))
    }
}

/// Basis of `Hom(ψ, ψ')`: matrices `f` (of size `n' x n`) with `f ψ(p) ⊆ ψ'(p)` for all `p`.
pub fn hom_space(a: &Sextuple, b: &Sextuple) -> Vec<Mat> {
    let (n, m) = (a.ambient, b.ambient);
    let ctx = a.ctx;
    if n == 0 || m == 0 {
        return Vec::new();
    }
    // In bases adapted to the first two flags those flags impose a zero
    // pattern, so only the third flag needs linear equations.
    let (Some((pa, la)), Some((pb, lb))) = (adapted_basis(a), adapted_basis(b)) else {
        return hom_space_dense(a, b);
    };
    let pa_inv = pa.inverse().expect("adapted basis is invertible");
    let pb_inv = pb.inverse().expect("adapted basis is invertible");
    let free: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| lb[i].0 <= la[j].0 && lb[i].1 <= la[j].1)
        .collect();
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for idx in 4..6 {
        let (x, y) = (&a.subs[idx], &b.subs[idx]);
        if x.is_zero() || y.is_full() {
            continue;
        }
        let xb = &x.basis * &pa_inv;
        let ann = Subspace::span(&(&y.basis * &pb_inv)).with_ambient(m).annihilator();
        for r in 0..ann.dim() {
            for s in 0..xb.rows {
                let row: Vec<Scalar> = free.iter().map(|&(i, j)| &ann.basis[(r, i)] * &xb[(s, j)]).collect();
                if row.iter().any(|v| !v.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    let sol = if eqs.is_empty() {
        Mat::identity(ctx, free.len())
    } else {
        Mat::from_rows(ctx, eqs).kernel_basis()
    };
    // Columns of the transposed bases are the adapted basis vectors.
    let (ta, tb) = (pa_inv.transpose(), pb.transpose());
    (0..sol.rows)
        .map(|k| {
            let mut f = Mat::zeros(ctx, m, n);
            for (c, &(i, j)) in free.iter().enumerate() {
                f[(i, j)] = sol[(k, c)].clone();
            }
            &(&tb * &f) * &ta
        })
        .collect()
}

/// A basis (as rows) adapted to the flags `I1 ⊆ C1` and `I2 ⊆ C2`, with the
/// pair of flag levels of each basis vector.
fn adapted_basis(s: &Sextuple) -> Option<(Mat, Vec<(u8, u8)>)> {
    let n = s.ambient;
    let full = Subspace::full(s.ctx, n);
    let chain = |j: usize| [Subspace::zero(s.ctx, n), s.subs[2 * j + 1].clone(), s.subs[2 * j].clone(), full.clone()];
    let (f1, f2) = (chain(0), chain(1));
    let mut rows = Mat::zeros(s.ctx, 0, n);
    let mut levels = Vec::new();
    for x in 1..4 {
        for y in 1..4 {
            let piece = f1[x].intersect(&f2[y]).ok()?;
            let below = f1[x - 1].intersect(&f2[y]).ok()?.sum(&f1[x].intersect(&f2[y - 1]).ok()?).ok()?;
            let w = below.complement_in(&piece).ok()?;
            rows = rows.vstack(&w.basis);
            levels.extend(std::iter::repeat((x as u8, y as u8)).take(w.dim()));
        }
    }
    (rows.rows == n && rows.rank() == n).then_some((rows, levels))
}

fn hom_space_dense(a: &Sextuple, b: &Sextuple) -> Vec<Mat> {
    let (n, m) = (a.ambient, b.ambient);
    let ctx = a.ctx;
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for (x, y) in a.subs.iter().zip(&b.subs) {
        if x.is_zero() || y.is_full() {
            continue;
        }
        let ann = y.annihilator();
        for r in 0..ann.dim() {
            for s in 0..x.dim() {
                // ann_r · f · u_s = sum_{i,j} ann_r[i] f[i][j] u_s[j]
                let mut row = vec![ctx.zero(); m * n];
                for i in 0..m {
                    let ai = &ann.basis[(r, i)];
                    if ai.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        row[i * n + j] = ai * &x.basis[(s, j)];
                    }
                }
                eqs.push(row);
            }
        }
    }
    let sol = if eqs.is_empty() {
        Mat::identity(ctx, m * n)
    } else {
        Mat::from_rows(ctx, eqs).kernel_basis()
    };
    (0..sol.rows)
        .map(|k| Mat {
            ctx,
            rows: m,
            cols: n,
            data: sol.row(k),
        })
        .collect()
}

/// The endomorphism algebra as a list of basis matrices.
#[derive(Debug, Clone)]
pub struct EndAlgebra {
    pub basis: Vec<Mat>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn end_algebra(a: &Sextuple) -> EndAlgebra {
    EndAlgebra {
        basis: hom_space(a, a),
    }
}

/// Why a summand was declared indecomposable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalCertificate {
    /// The endomorphism algebra is one-dimensional.
    Scalars,
    /// The quotient by the radical is a field of the given degree, witnessed
    /// by an element whose minimal polynomial has an irreducible squarefree part.
    FieldQuotient(usize),
    /// The idempotent search found nothing within its budget.
    SearchExhausted,
}

/// One indecomposable summand of a decomposition.
#[derive(Debug, Clone)]
pub struct Summand {
    /// Rows are a basis of the summand in ambient coordinates.
    pub basis: Mat,
    /// The restricted sextuple in the coordinates of `basis`.
    pub sextuple: Sextuple,
    pub certificate: LocalCertificate,
}

impl Summand {
    pub fn space(&self) -> Subspace {
        Subspace::span(&self.basis)
    }
}

/// Basis of the Jacobson radical, computed as the kernel of the trace form
/// on `V`. Only valid in characteristic 0 or above `n`.
fn radical_basis(e: &EndAlgebra, n: usize) -> Option<Vec<Mat>> {
    let first = e.basis.first()?;
    let ctx = first.ctx;
    if let FieldCtx::Prime(p) = ctx {
        if p as usize <= n {
            return None;
        }
    }
    let d = e.dim();
    let mut t = Mat::zeros(ctx, d, d);
    for i in 0..d {
        for j in i..d {
            let (x, y) = (&e.basis[i], &e.basis[j]);
            let mut v = ctx.zero();
            for r in 0..n {
                for c in 0..n {
                    if !x[(r, c)].is_zero() && !y[(c, r)].is_zero() {
                        v = &v + &(&x[(r, c)] * &y[(c, r)]);
                    }
                }
            }
            t[(i, j)] = v.clone();
            t[(j, i)] = v;
        }
    }
    let k = t.kernel_basis();
    Some(
        (0..k.rows)
            .map(|r| Mat::lincomb(ctx, first.rows, first.cols, &k.row(r), &e.basis))
            .collect(),
    )
}

/// Vectors worth annihilating: basis vectors of each `ψ(p)` and of their
/// pairwise intersections, cut down to the common kernel of the radical.
/// These subspaces are stable under every endomorphism, so a vector in a
/// small one is killed by a large left ideal.
fn probe_vectors(a: &Sextuple, radical: Option<&[Mat]>) -> Vec<Vec<Scalar>> {
    let n = a.ambient;
    let socle = match radical {
        Some(r) if !r.is_empty() => {
            let refs: Vec<&Mat> = r.iter().collect();
            let mut stacked = refs[0].clone();
            for m in &refs[1..] {
                stacked = stacked.vstack(m);
            }
            let k = stacked.kernel_basis();
            if k.rows == 0 {
                Subspace::zero(a.ctx, n)
            } else {
                Subspace::span(&k)
            }
        }
        _ => Subspace::full(a.ctx, n),
    };
    let mut spaces: Vec<Subspace> = Vec::new();
    for i in 0..6 {
        spaces.push(a.subs[i].clone());
        for j in i + 1..6 {
            if let Ok(x) = a.subs[i].intersect(&a.subs[j]) {
                spaces.push(x);
            }
        }
    }
    let mut pieces: Vec<Subspace> = spaces
        .into_iter()
        .filter_map(|w| w.intersect(&socle).ok())
        .filter(|w| !w.is_zero())
        .collect();
    pieces.push(socle);
    pieces.sort_by_key(|w| w.dim());
    pieces.dedup();
    let mut out = Vec::new();
    for w in pieces {
        for r in 0..w.basis.rows.min(2) {
            out.push(w.basis.row(r));
        }
    }
    out
}

/// A non-nilpotent endomorphism with nonzero kernel, found among the
/// endomorphisms killing one of the probe vectors.
fn annihilating_nonunit(a: &Sextuple, e: &EndAlgebra, radical: Option<&[Mat]>, seed: u64) -> Option<Mat> {
    let n = a.ambient;
    let ctx = a.ctx;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in probe_vectors(a, radical) {
        let vcol = Mat::from_rows(ctx, vec![v]).transpose();
        let mut images = Mat::zeros(ctx, n, e.dim());
        for (i, b) in e.basis.iter().enumerate() {
            images.set_block(0, i, &(b * &vcol));
        }
        let k = images.kernel_basis();
        if k.rows == 0 {
            continue;
        }
        let ideal: Vec<Mat> = (0..k.rows).map(|r| Mat::lincomb(ctx, n, n, &k.row(r), &e.basis)).collect();
        let mut cands = ideal.clone();
        for _ in 0..4 {
            let coeffs: Vec<Scalar> = ideal.iter().map(|_| ctx.random(&mut rng, 3)).collect();
            cands.push(Mat::lincomb(ctx, n, n, &coeffs, &ideal));
        }
        if let Some(f) = cands.into_iter().find(|f| !f.pow(n as u64).is_zero()) {
            return Some(f);
        }
    }
    None
}

/// Candidate elements for the idempotent search, in a fixed order.
struct Candidates<'a> {
    basis: &'a [Mat],
    ctx: FieldCtx,
    stage: usize,
    idx: usize,
    rng: ChaCha8Rng,
    random_budget: usize,
}

impl Iterator for Candidates<'_> {
    type Item = Mat;
    fn next(&mut self) -> Option<Mat> {
        let d = self.basis.len();
        loop {
            match self.stage {
                0 => {
                    if self.idx < d {
                        self.idx += 1;
                        return Some(self.basis[self.idx - 1].clone());
                    }
                    self.stage = 1;
                    self.idx = 0;
                }
                1 => {
                    // x_a + c x_b for small c
                    let pairs = d * d.saturating_sub(1) / 2;
                    if self.idx < pairs * 3 && d <= 24 {
                        let (k, ci) = (self.idx / 3, self.idx % 3);
                        self.idx += 1;
                        let (mut a, mut rest) = (0, k);
                        while rest >= d - 1 - a {
                            rest -= d - 1 - a;
                            a += 1;
                        }
                        let b = a + 1 + rest;
                        let c = self.ctx.from_i64([1, -1, 2][ci]);
                        return Some(&self.basis[a] + &self.basis[b].scale(&c));
                    }
                    self.stage = 2;
                    self.idx = 0;
                }
                _ => {
                    if self.idx >= self.random_budget {
                        return None;
                    }
                    self.idx += 1;
                    let bound = if self.idx <= self.random_budget / 2 { 3 } else { 1000 };
                    let coeffs: Vec<Scalar> = (0..d).map(|_| self.ctx.random(&mut self.rng, bound)).collect();
                    let (r, c) = (self.basis[0].rows, self.basis[0].cols);
                    return Some(Mat::lincomb(self.ctx, r, c, &coeffs, self.basis));
                }
            }
        }
    }
}

/// An idempotent polynomial in `x` splitting off one primary component of its
/// minimal polynomial, if the minimal polynomial has two coprime factors.
pub(crate) fn crt_idempotent(x: &Mat) -> Option<Mat> {
    let mp = min_poly(x);
    let fs = factor_poly(&mp);
    if fs.len() < 2 {
        return None;
    }
    let f1 = fs[0].poly.pow(fs[0].multiplicity);
    let mut rest = Poly::one(x.ctx);
    for f in &fs[1..] {
        rest = &rest * &f.poly.pow(f.multiplicity);
    }
    let (g, _s, t) = f1.ext_gcd(&rest);
    debug_assert!(g.is_one());
    // t·rest ≡ 1 mod f1 and ≡ 0 mod rest
    let e = (&t * &rest).rem(&mp).eval_mat(x);
    Some(e)
}

/// Squarefree part of the minimal polynomial is irreducible of degree `s`.
fn generates_field_of_degree(x: &Mat, s: usize) -> bool {
    let fs = factor_poly(&min_poly(x));
    fs.len() == 1 && fs[0].irreducible && fs[0].poly.deg() == s
}

const RANDOM_CANDIDATES: usize = 64;

/// Krull-Remak-Schmidt decomposition into indecomposable summands.
pub fn decompose_krs(a: &Sextuple, seed: u64) -> Result<Vec<Summand>> {
    let mut out = Vec::new();
    let basis = Mat::identity(a.ctx, a.ambient);
    split_rec(a, &basis, seed, &mut out)?;
    out.sort_by(|x, y| {
        (x.sextuple.ambient, x.sextuple.dimension_vector()).cmp(&(y.sextuple.ambient, y.sextuple.dimension_vector()))
    });
    Ok(out)
}

fn split_rec(a: &Sextuple, basis: &Mat, seed: u64, out: &mut Vec<Summand>) -> Result<()> {
    let n = a.ambient;
    if n == 0 {
        return Ok(());
    }
    let e = end_algebra(a);
    if e.dim() == 1 {
        out.push(Summand {
            basis: basis.clone(),
            sextuple: a.clone(),
            certificate: LocalCertificate::Scalars,
        });
        return Ok(());
    }
    let radical = radical_basis(&e, n);
    let s = radical.as_ref().map(|r| e.dim() - r.len());
    if s == Some(1) {
        out.push(Summand {
            basis: basis.clone(),
            sextuple: a.clone(),
            certificate: LocalCertificate::FieldQuotient(1),
        });
        return Ok(());
    }
    if let Some(f) = annihilating_nonunit(a, &e, radical.as_deref(), seed) {
        let fit = fitting(&f);
        for part in [fit.image_basis, fit.kernel_basis] {
            let sub = a.restrict(&part)?;
            split_rec(&sub, &(&part * basis), seed.wrapping_add(1), out)?;
        }
        return Ok(());
    }
    let cands = Candidates {
        basis: &e.basis,
        ctx: a.ctx,
        stage: 0,
        idx: 0,
        rng: ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9)),
        random_budget: RANDOM_CANDIDATES,
    };
    for x in cands {
        if let Some(idem) = crt_idempotent(&x) {
            let im = idem.transpose().row_space();
            let ker = idem.kernel_basis().row_space();
            if im.rows == 0 || ker.rows == 0 {
                continue;
            }
            for part in [im, ker] {
                let sub = a.restrict(&part)?;
                split_rec(&sub, &(&part * basis), seed.wrapping_add(1), out)?;
            }
            return Ok(());
        }
        if let Some(s) = s {
            if generates_field_of_degree(&x, s) {
                out.push(Summand {
                    basis: basis.clone(),
                    sextuple: a.clone(),
                    certificate: LocalCertificate::FieldQuotient(s),
                });
                return Ok(());
            }
        }
    }
    out.push(Summand {
        basis: basis.clone(),
        sextuple: a.clone(),
        certificate: LocalCertificate::SearchExhausted,
    });
    Ok(())
}

/// Bound on `|k|^dim` for exhaustive enumeration of a coefficient space.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000;

/// Size of the coefficient space `p^d` if it is small enough to enumerate.
pub(crate) fn enumerable(ctx: FieldCtx, d: usize) -> Option<u64> {
    let p = ctx.order()?;
    let mut t: u64 = 1;
    for _ in 0..d {
        t = t.checked_mul(p)?;
        if t > EXHAUSTIVE_LIMIT {
            return None;
        }
    }
    Some(t)
}

/// Coefficient vector number `idx` in base `p`.
pub(crate) fn coeffs_from_index(ctx: FieldCtx, d: usize, mut idx: u64) -> Vec<Scalar> {
    let p = ctx.order().unwrap();
    (0..d)
        .map(|_| {
            let v = idx % p;
            idx /= p;
            ctx.from_i64(v as i64)
        })
        .collect()
}

/// Search a linear space of matrices for a member satisfying `pred`: basis
/// elements, then random combinations, then (over small prime fields)
/// exhaustive enumeration. Returns `Ok(None)` only when the search is
/// conclusive.
pub(crate) fn search_space<F>(basis: &[Mat], seed: u64, n: usize, mut pred: F) -> Result<Option<Mat>>
where
    F: FnMut(&Mat) -> bool,
{
    let Some(first) = basis.first() else {
        return Ok(None);
    };
    let ctx = first.ctx;
    let (r, c) = (first.rows, first.cols);
    for b in basis {
        if pred(b) {
            return Ok(Some(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..200 {
        let bound = if t < 100 { 5 } else { 1000 };
        let coeffs: Vec<Scalar> = basis.iter().map(|_| ctx.random(&mut rng, bound)).collect();
        let m = Mat::lincomb(ctx, r, c, &coeffs, basis);
        if pred(&m) {
            return Ok(Some(m));
        }
    }
    if let Some(total) = enumerable(ctx, basis.len()) {
        for idx in 1..total {
            let coeffs = coeffs_from_index(ctx, basis.len(), idx);
            let m = Mat::lincomb(ctx, r, c, &coeffs, basis);
            if pred(&m) {
                return Ok(Some(m));
            }
        }
        return Ok(None);
    }
    match ctx {
        // a nonzero determinant polynomial of degree n vanishes at a random
        // integer point with probability at most n / 2001 per trial
        FieldCtx::Rational => Ok(None),
        FieldCtx::Prime(p) if p as usize > 2 * n => Ok(None),
        FieldCtx::Prime(p) => Err(Error::SearchInconclusive(format!(
            "no witness among random samples of a {}-dimensional space over F_{p}",
            basis.len()
        ))),
    }
}

/// Isomorphism test; on success returns an invertible intertwiner `g` with
/// `g ψ(p) = ψ'(p)` for every `p`.
pub fn is_isomorphic(a: &Sextuple, b: &Sextuple, seed: u64) -> Result<Option<Mat>> {
    if a.ctx != b.ctx {
        return Err(Error::FieldMismatch);
    }
    if a.dimension_vector() != b.dimension_vector() {
        return Ok(None);
    }
    if a.ambient == 0 {
        return Ok(Some(Mat::zeros(a.ctx, 0, 0)));
    }
    let h = hom_space(a, b);
    search_space(&h, seed, a.ambient, |m| m.is_invertible())
}
