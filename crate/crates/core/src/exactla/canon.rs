//! Characteristic and minimal polynomials, invariant factors and the Fitting
//! decomposition.

use crate::exactla::mat::Mat;
use crate::exactla::poly::Poly;
use crate::field::Scalar;

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
pub fn char_poly(a: &Mat) -> Poly {
    assert!(a.is_square(), "char_poly of non-square matrix");
    let ctx = a.ctx;
    let n = a.rows;
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap_rows(piv, j + 1);
            for r in 0..n {
                let t = h[(r, piv)].clone();
                h[(r, piv)] = h[(r, j + 1)].clone();
                h[(r, j + 1)] = t;
            }
        }
        let pinv = h[(j + 1, j)].inv().unwrap();
        for k in j + 2..n {
            if h[(k, j)].is_zero() {
                continue;
            }
            let f = &h[(k, j)] * &pinv;
            for c in 0..n {
                let t = &f * &h[(j + 1, c)];
                h[(k, c)] -= &t;
            }
            for r in 0..n {
                let t = &f * &h[(r, k)];
                h[(r, j + 1)] += &t;
            }
        }
    }
    // p[m] is the characteristic polynomial of the leading m x m block
    let mut p: Vec<Poly> = vec![Poly::one(ctx)];
    for m in 1..=n {
        let hm = &h[(m - 1, m - 1)];
        let mut pm = &Poly::linear(hm) * &p[m - 1];
        let mut prod = ctx.one();
        for i in (1..m).rev() {
            prod = &prod * &h[(i, i - 1)];
            let c = &h[(i - 1, m - 1)] * &prod;
            if !c.is_zero() {
                pm = &pm - &p[i - 1].scale(&c);
            }
        }
        p.push(pm);
    }
    p.pop().unwrap()
}

/// Monic minimal polynomial of the vector `v` (a column, as a slice) under `a`.
pub fn vector_min_poly(a: &Mat, v: &[Scalar]) -> Poly {
    let ctx = a.ctx;
    let n = a.rows;
    let mut krylov: Vec<Vec<Scalar>> = vec![v.to_vec()];
    loop {
        let last = krylov.last().unwrap();
        let col = Mat::from_rows(ctx, last.iter().map(|x| vec![x.clone()]).collect());
        let next = (a * &col).col(0);
        let d = krylov.len();
        // columns are the Krylov vectors
        let mut m = Mat::zeros(ctx, n, d);
        for (j, kv) in krylov.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = kv[i].clone();
            }
        }
        let rhs = Mat::from_rows(ctx, next.iter().map(|x| vec![x.clone()]).collect());
        if let Ok(c) = m.solve(&rhs) {
            let mut coeffs: Vec<Scalar> = (0..d).map(|i| -&c[(i, 0)]).collect();
            coeffs.push(ctx.one());
            return Poly::new(ctx, coeffs);
        }
        krylov.push(next);
    }
}

/// Monic minimal polynomial, the least common multiple of the minimal
/// polynomials of the standard basis vectors.
pub fn min_poly(a: &Mat) -> Poly {
    assert!(a.is_square(), "min_poly of non-square matrix");
    let ctx = a.ctx;
    let n = a.rows;
    let mut m = Poly::one(ctx);
    for i in 0..n {
        let mut e = vec![ctx.zero(); n];
        e[i] = ctx.one();
        // skip vectors already killed by the current candidate
        let mut probe = m.eval_mat(a);
        probe = &probe * &Mat::from_rows(ctx, e.iter().map(|x| vec![x.clone()]).collect());
        if probe.is_zero() {
            continue;
        }
        let vm = vector_min_poly(a, &e);
        let g = m.gcd(&vm);
        m = (&m * &vm).exact_div(&g).monic();
    }
    m
}

/// Nonunit invariant factors `d_1 | d_2 | ...` of `xI - A`, all monic, via a
/// Smith reduction over the polynomial ring.
pub fn invariant_factors(a: &Mat) -> Vec<Poly> {
    assert!(a.is_square(), "invariant_factors of non-square matrix");
    let ctx = a.ctx;
    let n = a.rows;
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = Poly::constant(&(-&a[(i, j)]));
                    if i == j {
                        p = &p + &Poly::x(ctx);
                    }
                    p
                })
                .collect()
        })
        .collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            // pivot of least degree
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if let Some(d) = m[i][j].degree() {
                        if best.is_none_or(|b| d < b.2) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                // the remaining block is zero
                for _ in k..n {
                    diag.push(Poly::zero(ctx));
                }
                return finish(diag);
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, r) = m[i][k].divrem(&m[k][k]);
                for j in k..n {
                    let t = &q * &m[k][j];
                    m[i][j] = &m[i][j] - &t;
                }
                debug_assert_eq!(m[i][k], r);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..n {
                if m[k][j].is_zero() {
                    continue;
                }
                let (q, r) = m[k][j].divrem(&m[k][k]);
                for i in k..n {
                    let t = &q * &m[i][k];
                    m[i][j] = &m[i][j] - &t;
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide every remaining entry
            let mut bad_row = None;
            'scan: for i in k + 1..n {
                for j in k + 1..n {
                    if !m[i][j].rem(&m[k][k]).is_zero() {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    for j in k..n {
                        let t = m[i][j].clone();
                        m[k][j] = &m[k][j] + &t;
                    }
                }
                None => break,
            }
        }
        diag.push(m[k][k].monic());
    }
    finish(diag)
}

fn finish(diag: Vec<Poly>) -> Vec<Poly> {
    diag.into_iter()
        .filter(|p| p.degree().is_none_or(|d| d > 0))
        .map(|p| p.monic())
        .collect()
}

/// Similarity test by comparison of invariant factors.
pub fn is_similar(a: &Mat, b: &Mat) -> bool {
    a.is_square() && b.is_square() && a.rows == b.rows && invariant_factors(a) == invariant_factors(b)
}

/// Fitting decomposition of an endomorphism.
#[derive(Debug, Clone)]
pub struct FittingSplit {
    /// Idempotent projector onto `Im f^n` along `Ker f^n`.
    pub projector: Mat,
    /// Rows span `Im f^n`.
    pub image_basis: Mat,
    /// Rows span `Ker f^n`.
    pub kernel_basis: Mat,
}

pub fn fitting(f: &Mat) -> FittingSplit {
    assert!(f.is_square(), "fitting of non-square matrix");
    let n = f.rows;
    let fd = f.pow(n as u64);
    let image_basis = fd.transpose().row_space();
    let kernel_basis = fd.kernel_basis().row_space();
    let r = image_basis.rows;
    let b = image_basis.vstack(&kernel_basis).transpose();
    let mut d = Mat::zeros(f.ctx, n, n);
    for i in 0..r {
        d[(i, i)] = f.ctx.one();
    }
    let projector = if r == 0 {
        Mat::zeros(f.ctx, n, n)
    } else if r == n {
        Mat::identity(f.ctx, n)
    } else {
        &(&b * &d) * &b.inverse().expect("Fitting decomposition is direct")
    };
    FittingSplit {
        projector,
        image_basis,
        kernel_basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn q() -> FieldCtx {
        FieldCtx::Rational
    }

    #[test]
    fn min_and_char_examples() {
        let n = Mat::from_i64(q(), &[vec![0, 1], vec![0, 0]]);
        assert_eq!(min_poly(&n), Poly::from_i64(q(), &[0, 0, 1]));
        let p = Poly::parse(q(), "x^2 - x + 1/2").unwrap();
        assert_eq!(min_poly(&p.companion()), p);
        assert_eq!(char_poly(&p.companion()), p);
        let i3 = Mat::identity(q(), 3);
        assert_eq!(min_poly(&i3), Poly::from_i64(q(), &[-1, 1]));
        assert_eq!(char_poly(&i3), Poly::from_i64(q(), &[-1, 1]).pow(3));
    }

    #[test]
    fn invariant_factor_examples() {
        let d = Mat::from_i64(q(), &[vec![0, 0], vec![0, 1]]);
        assert_eq!(invariant_factors(&d), vec![Poly::from_i64(q(), &[0, -1, 1])]);
        let j = Mat::from_i64(q(), &[vec![0, 1], vec![0, 0]]);
        assert_eq!(invariant_factors(&j), vec![Poly::from_i64(q(), &[0, 0, 1])]);
        let z = Mat::zeros(q(), 2, 2);
        let x = Poly::x(q());
        assert_eq!(invariant_factors(&z), vec![x.clone(), x]);
    }

    #[test]
    fn similarity_examples() {
        let a = Mat::from_i64(q(), &[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 2]]);
        assert!(is_similar(&a, &a.transpose()));
        let j = Mat::from_i64(q(), &[vec![0, 1], vec![0, 0]]);
        assert!(!is_similar(&j, &Mat::zeros(q(), 2, 2)));
        let p = Mat::from_i64(q(), &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 2]]);
        let b = &(&p * &a) * &p.inverse().unwrap();
        assert!(is_similar(&a, &b));
    }

    #[test]
    fn fitting_examples() {
        let inv = Mat::from_i64(q(), &[vec![1, 1], vec![0, 1]]);
        assert!(fitting(&inv).projector.is_identity());
        let nil = Mat::from_i64(q(), &[vec![0, 1], vec![0, 0]]);
        assert!(fitting(&nil).projector.is_zero());
        let d = Mat::from_i64(q(), &[vec![1, 0], vec![0, 0]]);
        assert_eq!(fitting(&d).projector, d);
    }
}
