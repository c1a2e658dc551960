//! The lattice of subspaces of a coordinate space.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::field::{FieldCtx, Scalar};

/// A linear subspace of `k^n`, stored by its canonical RREF basis (rows).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub ctx: FieldCtx,
    pub ambient: usize,
    pub basis: Mat,
}

impl Subspace {
    /// The span of the rows of `m`.
    pub fn span(m: &Mat) -> Subspace {
        Subspace {
            ctx: m.ctx,
            ambient: m.cols,
            basis: m.row_space(),
        }
    }

    pub fn from_vectors(ctx: FieldCtx, ambient: usize, vecs: &[Vec<Scalar>]) -> Subspace {
        let mut m = Mat::zeros(ctx, vecs.len(), ambient);
        for (i, v) in vecs.iter().enumerate() {
            assert_eq!(v.len(), ambient, "vector length");
            for (j, x) in v.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Subspace::span(&m)
    }

    pub fn from_i64(ctx: FieldCtx, ambient: usize, vecs: &[Vec<i64>]) -> Subspace {
        Subspace::span(&Mat::from_i64_cols(ctx, ambient, vecs))
    }

    pub fn zero(ctx: FieldCtx, n: usize) -> Subspace {
        Subspace {
            ctx,
            ambient: n,
            basis: Mat::zeros(ctx, 0, n),
        }
    }

    pub fn full(ctx: FieldCtx, n: usize) -> Subspace {
        Subspace {
            ctx,
            ambient: n,
            basis: Mat::identity(ctx, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check(&self, o: &Subspace) -> Result<()> {
        if self.ambient != o.ambient {
            return Err(Error::AmbientMismatch(self.ambient, o.ambient));
        }
        Ok(())
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        let row = Mat::from_rows(self.ctx, vec![v.to_vec()]);
        self.basis.vstack(&row).rank() == self.dim()
    }

    pub fn contains(&self, o: &Subspace) -> bool {
        self.ambient == o.ambient && self.basis.vstack(&o.basis).rank() == self.dim()
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        Ok(Subspace::span(&self.basis.vstack(&o.basis)))
    }

    /// Intersection by the Zassenhaus scheme: reduce `[[A, A], [B, 0]]`; rows
    /// whose left half vanishes span the intersection in the right half.
    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let n = self.ambient;
        if self.is_zero() || o.is_zero() {
            return Ok(Subspace::zero(self.ctx, n));
        }
        let top = self.basis.hstack(&self.basis);
        let bot = o.basis.hstack(&Mat::zeros(self.ctx, o.dim(), n));
        let r = top.vstack(&bot).rref();
        let rows: Vec<usize> = (0..r.rank).filter(|&i| r.pivots[i] >= n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(Subspace::span(&r.mat.select(&rows, &cols)))
    }

    /// Annihilator in the dual space, in dual-basis coordinates.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ctx, self.ambient);
        }
        Subspace::span(&self.basis.kernel_basis()).with_ambient(self.ambient)
    }

    pub(crate) fn with_ambient(mut self, n: usize) -> Subspace {
        self.ambient = n;
        if self.basis.rows == 0 {
            self.basis = Mat::zeros(self.ctx, 0, n);
        }
        self
    }

    /// `{ v : v^T G w = 0 for all w in self }`.
    pub fn perp(&self, g: &Mat) -> Result<Subspace> {
        if g.rows != self.ambient || g.cols != self.ambient {
            return Err(Error::ShapeMismatch("perp: form size".into()));
        }
        if !g.is_invertible() {
            return Err(Error::DegenerateForm);
        }
        Ok(self.perp_unchecked(g))
    }

    /// Orthogonal with respect to a possibly degenerate form.
    pub fn perp_unchecked(&self, g: &Mat) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ctx, self.ambient);
        }
        let cond = &self.basis * &g.transpose();
        Subspace::span(&cond.kernel_basis()).with_ambient(self.ambient)
    }

    /// True iff `G` vanishes on `self x self`.
    pub fn is_isotropic(&self, g: &Mat) -> bool {
        (&(&self.basis * g) * &self.basis.transpose()).is_zero()
    }

    /// Image under the linear map with matrix `f` (acting on columns).
    pub fn image(&self, f: &Mat) -> Subspace {
        if self.is_zero() {
            return Subspace::zero(self.ctx, f.rows);
        }
        Subspace::span(&(&self.basis * &f.transpose())).with_ambient(f.rows)
    }

    /// Preimage under `f` of the subspace `w`.
    pub fn preimage(f: &Mat, w: &Subspace) -> Subspace {
        // v with f v in w  <=>  ann(w) f v = 0
        let ann = w.annihilator();
        if ann.is_zero() {
            return Subspace::full(f.ctx, f.cols);
        }
        Subspace::span(&(&ann.basis * f).kernel_basis()).with_ambient(f.cols)
    }

    /// A complement of `self` inside `outer`, spanned by rows of `outer`'s basis.
    pub fn complement_in(&self, outer: &Subspace) -> Result<Subspace> {
        self.check(outer)?;
        let mut acc = self.basis.clone();
        let mut rank = acc.rank();
        let mut picked = Mat::zeros(self.ctx, 0, self.ambient);
        for i in 0..outer.dim() {
            let row = outer.basis.row_mat(i);
            let trial = acc.vstack(&row);
            let r = trial.rank();
            if r > rank {
                acc = trial;
                rank = r;
                picked = picked.vstack(&row);
            }
        }
        Ok(Subspace::span(&picked).with_ambient(self.ambient))
    }

    /// A complement in the whole ambient space.
    pub fn complement(&self) -> Subspace {
        self.complement_in(&Subspace::full(self.ctx, self.ambient)).unwrap()
    }

    /// Coordinates of the rows of `vecs` in the basis given by the rows of `b`.
    pub fn coordinates(b: &Mat, vecs: &Mat) -> Result<Mat> {
        b.solve_left(vecs)
    }
}

/// Output of a coisotropic reduction.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Gram matrix of the induced form on `C / C^perp` in the chosen basis.
    pub gram: Mat,
    /// Rows form the chosen lift of a basis of `C / C^perp`.
    pub lift: Mat,
    /// Images of the targets in quotient coordinates.
    pub targets: Vec<Subspace>,
}

/// Reduce by a coisotropic subspace `C`: the induced form on `C / C^perp` and
/// the images `(X ∩ C + C^perp) / C^perp` of the targets.
pub fn coisotropic_reduce(c: &Subspace, g: &Mat, targets: &[Subspace]) -> Result<Reduction> {
    let cp = c.perp(g)?;
    if !c.contains(&cp) {
        return Err(Error::NotCoisotropic);
    }
    let q = cp.complement_in(c)?;
    let lift = q.basis.clone();
    let gram = &(&lift * g) * &lift.transpose();
    let full = lift.vstack(&cp.basis);
    let k = lift.rows;
    let mut out = Vec::new();
    for x in targets {
        let y = x.intersect(c)?;
        if y.is_zero() {
            out.push(Subspace::zero(c.ctx, k));
            continue;
        }
        let coords = Subspace::coordinates(&full, &y.basis)?;
        let cols: Vec<usize> = (0..k).collect();
        let rows: Vec<usize> = (0..coords.rows).collect();
        out.push(Subspace::span(&coords.select(&rows, &cols)).with_ambient(k));
    }
    Ok(Reduction {
        gram,
        lift,
        targets: out,
    })
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<dim {} in {}>", self.dim(), self.ambient)?;
        for i in 0..self.dim() {
            let row: Vec<String> = self.basis.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, " ({})", row.join(", "))?;
        }
        Ok(())
    }
}

/// The standard symplectic Gram matrix `[[0, I], [-I, 0]]` on `k^(2m)`.
pub fn standard_symplectic(ctx: FieldCtx, m: usize) -> Mat {
    let mut g = Mat::zeros(ctx, 2 * m, 2 * m);
    for i in 0..m {
        g[(i, m + i)] = ctx.one();
        g[(m + i, i)] = -ctx.one();
    }
    g
}
