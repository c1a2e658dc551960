//! Generalized Jordan normal form `ZI + N^l` over perfect fields.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::canon::{invariant_factors, vector_min_poly};
use crate::exactla::factor::irreducible_factors;
use crate::exactla::mat::Mat;
use crate::exactla::poly::Poly;

/// Generalized Jordan form of an indecomposable endomorphism.
#[derive(Debug, Clone)]
pub struct GeneralizedJordan {
    /// Companion matrix of `q`.
    pub z: Mat,
    /// Degree of `q`.
    pub l: usize,
    /// Multiplicity: the characteristic polynomial is `q^m`.
    pub m: usize,
    /// Change of basis with `P A P^-1 = ZI + N^l`.
    pub p: Mat,
    pub q: Poly,
}

impl GeneralizedJordan {
    /// The normal form `ZI + N^l` itself.
    pub fn normal_form(&self) -> Mat {
        jordan_normal_form(&self.z, self.m)
    }
}

/// Block matrix with `z` on the diagonal blocks and identities on the block superdiagonal.
pub fn jordan_normal_form(z: &Mat, m: usize) -> Mat {
    let l = z.rows;
    let n = l * m;
    let mut a = Mat::zeros(z.ctx, n, n);
    for j in 0..m {
        a.set_block(j * l, j * l, z);
        if j + 1 < m {
            a.set_block(j * l, (j + 1) * l, &Mat::identity(z.ctx, l));
        }
    }
    a
}

/// Jordan-Chevalley semisimple part of `a` given the squarefree part `q` of its
/// minimal polynomial, by Newton iteration `S <- S - q(S) q'(S)^-1`.
pub fn semisimple_part(a: &Mat, q: &Poly) -> Result<Mat> {
    let dq = q.deriv();
    let mut s = a.clone();
    for _ in 0..64 {
        let qs = q.eval_mat(&s);
        if qs.is_zero() {
            return Ok(s);
        }
        let d = dq.eval_mat(&s).inverse().map_err(|_| Error::NotIrreducible)?;
        s = &s - &(&qs * &d);
    }
    Err(Error::NotIrreducible)
}

pub fn generalized_jordan(a: &Mat) -> Result<GeneralizedJordan> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("generalized_jordan of non-square matrix".into()));
    }
    let ctx = a.ctx;
    let n = a.rows;
    let invs = invariant_factors(a);
    if invs.len() != 1 {
        return Err(Error::NotIndecomposable(format!("{} invariant factors", invs.len())));
    }
    let f = &invs[0];
    let fs = irreducible_factors(f)?;
    if fs.len() != 1 {
        return Err(Error::NotIndecomposable(format!("{} distinct irreducible factors", fs.len())));
    }
    let (q, m) = fs[0].clone();
    let l = q.deg();
    let s = semisimple_part(a, &q)?;
    let nn = a - &s;
    // a cyclic vector has minimal polynomial f
    let mut g = None;
    for i in 0..n {
        let mut e = vec![ctx.zero(); n];
        e[i] = ctx.one();
        if vector_min_poly(a, &e).deg() == n {
            g = Some(e);
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ead);
    while g.is_none() {
        let v: Vec<_> = (0..n).map(|_| ctx.random(&mut rng, 3)).collect();
        if vector_min_poly(a, &v).deg() == n {
            g = Some(v);
        }
    }
    let g = Mat::from_rows(ctx, g.unwrap().into_iter().map(|x| vec![x]).collect());
    let mut b = Mat::zeros(ctx, n, n);
    let mut col = 0;
    for j in 1..=m {
        let mut w = &nn.pow((m - j) as u64) * &g;
        for _ in 0..l {
            b.set_block(0, col, &w);
            col += 1;
            w = &s * &w;
        }
    }
    let p = b.inverse().map_err(|_| Error::NotIndecomposable("basis construction failed".into()))?;
    let z = q.companion();
    let out = GeneralizedJordan { z, l, m, p, q };
    debug_assert_eq!(&(&out.p * a) * &b, out.normal_form());
    Ok(out)
}
