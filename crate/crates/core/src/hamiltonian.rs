//! Linear hamiltonian vector fields and the isotropic triples they determine.

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::subspace::Subspace;
use crate::symplectic::{check_symplectic, IsotropicTriple};

/// A linear hamiltonian vector field `X` on `(k^n, Ω)`: `XᵀΩ + ΩX = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinHamField {
    pub omega: Mat,
    pub x: Mat,
}

impl LinHamField {
    pub fn new(omega: Mat, x: Mat) -> Result<LinHamField> {
        check_symplectic(&omega)?;
        if x.rows != omega.rows || !x.is_square() {
            return Err(Error::ShapeMismatch("X and Ω must have the same size".into()));
        }
        if !(&(&x.transpose() * &omega) + &(&omega * &x)).is_zero() {
            return Err(Error::InvalidParams("X is not hamiltonian for Ω".into()));
        }
        Ok(LinHamField { omega, x })
    }

    pub fn dim(&self) -> usize {
        self.omega.rows
    }
}

/// The map `f_X = ω̃X + ω̃ : V → V*` as a matrix acting on columns, where
/// `ω̃ = Ωᵀ` sends `u` to `ω(u, ·)`.
pub fn graph_form(h: &LinHamField) -> Mat {
    let id = Mat::identity(h.omega.ctx, h.dim());
    &h.omega.transpose() * &(&h.x + &id)
}

/// The isotropic triple of a hamiltonian field on `(V × V*) × S̄`, where `S̄`
/// is the graph of `f = f_X` with the negated restricted form, parametrized by `V`.
///
/// Coordinates are `(v, ξ, s)`. The carrier `V × 0` is placed in the `I2`
/// slot and `0 × V*` in the `I1` slot, so that [`from_triple`], which reads
/// the field off `I2`, inverts this construction exactly.
pub fn to_triple(h: &LinHamField) -> Result<IsotropicTriple> {
    let ctx = h.omega.ctx;
    let n = h.dim();
    let f = graph_form(h);
    let id = Mat::identity(ctx, n);
    let z = Mat::zeros(ctx, n, n);
    let omega_w = Mat::from_blocks(&[vec![z.clone(), id.scale(&-ctx.one())], vec![id.clone(), z.clone()]]);
    let omega = Mat::block_diag(&[&omega_w, &(&f - &f.transpose())]);
    let i1 = z.hstack(&id).hstack(&z);
    let i2 = id.hstack(&z).hstack(&z);
    // Row s of I3 is (s, f s, s).
    let i3 = id.hstack(&f.transpose()).hstack(&id);
    let span = |m: &Mat| {
        if n == 0 {
            Subspace::zero(ctx, 0)
        } else {
            Subspace::span(m)
        }
    };
    IsotropicTriple::new(omega, [span(&i1), span(&i2), span(&i3)])
}

fn gram(a: &Mat, omega: &Mat, b: &Mat) -> Mat {
    &(a * omega) * &b.transpose()
}

/// Recover the hamiltonian field on `I2` from a triple with
/// `V = I1 ⊕ I2 ⊕ I3` and every `I_i + I_j` symplectic.
///
/// `I3` projects along `(I1 ⊕ I2)^⊥` onto the graph of a map `A: I2 → I1`;
/// with `T` the matrix of `I1 → I2*, u ↦ ω(u, ·)`, the map `f = TA` splits as
/// `f_a + f_s` and `X = f_a⁻¹ f_s` is hamiltonian for the form with matrix `−f_a`.
pub fn from_triple(phi: &IsotropicTriple) -> Result<LinHamField> {
    let ctx = phi.ctx;
    let n = phi.ambient();
    if n % 3 != 0 {
        return Err(Error::HypothesesFail("ambient dimension is not a multiple of 3".into()));
    }
    let d = n / 3;
    let [i1, i2, i3] = &phi.iso;
    if i1.dim() != d || i2.dim() != d || i3.dim() != d {
        return Err(Error::HypothesesFail("the isotropics do not all have dimension n/3".into()));
    }
    if !i1.sum(i2)?.sum(i3)?.is_full() {
        return Err(Error::HypothesesFail("I1 + I2 + I3 is not the whole space".into()));
    }
    let (b1, b2, b3) = (&i1.basis, &i2.basis, &i3.basis);
    for (x, y, name) in [(b1, b2, "I1 + I2"), (b2, b3, "I2 + I3"), (b3, b1, "I3 + I1")] {
        let s = x.vstack(y);
        if !gram(&s, &phi.omega, &s).is_invertible() {
            return Err(Error::HypothesesFail(format!("{} is not symplectic", name)));
        }
    }
    let s = i1.sum(i2)?;
    let s_perp = s.perp(&phi.omega)?;
    let coords = b1.vstack(b2).vstack(&s_perp.basis).solve_left(b3)?;
    let p1 = coords.block(0, d, 0, d);
    let p2 = coords.block(0, d, d, 2 * d);
    let p2inv = p2
        .inverse()
        .map_err(|_| Error::HypothesesFail("the projection of I3 is not a graph over I2".into()))?;
    let a = (&p2inv * &p1).transpose();
    let t = gram(b1, &phi.omega, b2).transpose();
    let f = &t * &a;
    let half = ctx.frac(1, 2)?;
    let fa = (&f - &f.transpose()).scale(&half);
    let fs = (&f + &f.transpose()).scale(&half);
    let fa_inv = fa
        .inverse()
        .map_err(|_| Error::HypothesesFail("the antisymmetric part is degenerate".into()))?;
    LinHamField::new(fa.scale(&-ctx.one()), &fa_inv * &fs)
}
