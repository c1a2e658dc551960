//! Dense exact matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{inv_mod, FieldCtx, Scalar};

/// A dense row-major matrix over a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub ctx: FieldCtx,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

/// Result of row reduction.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Mat {
        Mat {
            ctx,
            rows,
            cols,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Mat {
        let mut m = Mat::zeros(ctx, n, n);
        for i in 0..n {
            m[(i, i)] = ctx.one();
        }
        m
    }

    pub fn scalar_matrix(n: usize, c: &Scalar) -> Mat {
        let mut m = Mat::zeros(c.ctx(), n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(ctx: FieldCtx, rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat {
            ctx,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Build from integer rows. An empty list gives a `0 x 0` matrix.
    pub fn from_i64(ctx: FieldCtx, rows: &[Vec<i64>]) -> Mat {
        Mat::from_rows(
            ctx,
            rows.iter()
                .map(|r| r.iter().map(|&x| ctx.from_i64(x)).collect())
                .collect(),
        )
    }

    /// Build from integer rows with an explicit column count (useful for zero rows).
    pub fn from_i64_cols(ctx: FieldCtx, cols: usize, rows: &[Vec<i64>]) -> Mat {
        let mut m = Mat::zeros(ctx, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = ctx.from_i64(x);
            }
        }
        m
    }

    pub fn diag(ctx: FieldCtx, d: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(ctx, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// Jordan block with eigenvalue `lam`: `lam` on the diagonal, ones on the superdiagonal.
    pub fn jordan(n: usize, lam: &Scalar) -> Mat {
        let mut m = Mat::scalar_matrix(n, lam);
        for i in 0..n.saturating_sub(1) {
            m[(i, i + 1)] = lam.ctx().one();
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_mat(&self, i: usize) -> Mat {
        Mat::from_rows(self.ctx, vec![self.row(i)]).with_cols(self.cols)
    }

    fn with_cols(mut self, c: usize) -> Mat {
        if self.rows == 0 {
            self.cols = c;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.ctx, self.rows)
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.ctx.zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut r = Mat::identity(self.ctx, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut m = Mat::zeros(self.ctx, r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m[(i - r0, j - c0)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Select the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.ctx, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows, "hstack row mismatch");
        let mut m = Mat::zeros(self.ctx, self.rows, self.cols + o.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, o);
        m
    }

    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat {
            ctx: self.ctx,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let ctx = blocks[0].ctx;
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(ctx, r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    /// Assemble a matrix from a grid of equally sized square blocks.
    pub fn from_blocks(grid: &[Vec<Mat>]) -> Mat {
        let ctx = grid[0][0].ctx;
        let hs: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let ws: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        let mut m = Mat::zeros(ctx, hs.iter().sum(), ws.iter().sum());
        let mut i = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut j = 0;
            for (bj, b) in row.iter().enumerate() {
                assert_eq!((b.rows, b.cols), (hs[bi], ws[bj]), "block shape");
                m.set_block(i, j, b);
                j += ws[bj];
            }
            i += hs[bi];
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Mat) -> Mat {
        let mut m = Mat::zeros(self.ctx, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)].is_zero() {
                    continue;
                }
                m.set_block(i * o.rows, j * o.cols, &o.scale(&self[(i, j)]));
            }
        }
        m
    }

    /// Flatten row-major into a single row vector.
    pub fn vec_row(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn random<R: Rng + ?Sized>(ctx: FieldCtx, rows: usize, cols: usize, rng: &mut R, bound: i64) -> Mat {
        Mat {
            ctx,
            rows,
            cols,
            data: (0..rows * cols).map(|_| ctx.random(rng, bound)).collect(),
        }
    }

    /// A random invertible matrix.
    pub fn random_invertible<R: Rng + ?Sized>(ctx: FieldCtx, n: usize, rng: &mut R, bound: i64) -> Mat {
        loop {
            let m = Mat::random(ctx, n, n, rng, bound);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        match self.ctx {
            FieldCtx::Prime(p) => rref_mod(self, p),
            FieldCtx::Rational => rref_q(self),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the RREF, a canonical basis of the row space.
    pub fn row_space(&self) -> Mat {
        let r = self.rref();
        r.mat.block(0, r.rank, 0, self.cols)
    }

    /// Basis (as rows) of `{ v : A v = 0 }`.
    pub fn kernel_basis(&self) -> Mat {
        let r = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|j| !r.pivots.contains(j)).collect();
        let mut k = Mat::zeros(self.ctx, free.len(), n);
        for (t, &f) in free.iter().enumerate() {
            k[(t, f)] = self.ctx.one();
            for (i, &pc) in r.pivots.iter().enumerate() {
                k[(t, pc)] = -&r.mat[(i, f)];
            }
        }
        k
    }

    /// Basis (as rows) of `{ w : w A = 0 }`.
    pub fn left_kernel_basis(&self) -> Mat {
        self.transpose().kernel_basis()
    }

    /// One solution `X` of `A X = B`.
    pub fn solve(&self, b: &Mat) -> Result<Mat> {
        if self.rows != b.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: {}x{} against {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let aug = self.hstack(b);
        let r = aug.rref();
        if r.pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Mat::zeros(self.ctx, self.cols, b.cols);
        for (i, &pc) in r.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = r.mat[(i, self.cols + j)].clone();
            }
        }
        Ok(x)
    }

    /// One solution `X` of `X A = B`.
    pub fn solve_left(&self, b: &Mat) -> Result<Mat> {
        Ok(self.transpose().solve(&b.transpose())?.transpose())
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let r = self.hstack(&Mat::identity(self.ctx, n)).rref();
        if r.rank < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(r.mat.block(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.ctx.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return self.ctx.zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            let pinv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] * &pinv;
                for j in c..n {
                    let t = &f * &a[(c, j)];
                    a[(i, j)] -= &t;
                }
            }
        }
        det
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Apply `f` entrywise.
    pub fn map<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> Mat {
        Mat {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// The linear combination `sum c_i M_i`.
    pub fn lincomb(ctx: FieldCtx, rows: usize, cols: usize, coeffs: &[Scalar], mats: &[Mat]) -> Mat {
        let mut m = Mat::zeros(ctx, rows, cols);
        for (c, x) in coeffs.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            for (d, e) in m.data.iter_mut().zip(&x.data) {
                *d += &(c * e);
            }
        }
        m
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        if let FieldCtx::Prime(p) = self.ctx {
            return mul_mod(self, o, p);
        }
        let mut m = Mat::zeros(self.ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    m[(i, j)] += &(a * b);
                }
            }
        }
        m
    }
}

fn mul_mod(a: &Mat, b: &Mat, p: u64) -> Mat {
    let av: Vec<u64> = a.data.iter().map(|x| x.residue().unwrap()).collect();
    let bv: Vec<u64> = b.data.iter().map(|x| x.residue().unwrap()).collect();
    let mut out = vec![0u128; a.rows * b.cols];
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = av[i * a.cols + k];
            if x == 0 {
                continue;
            }
            for j in 0..b.cols {
                let y = bv[k * b.cols + j];
                let o = &mut out[i * b.cols + j];
                *o = (*o + x as u128 * y as u128) % p as u128;
            }
        }
    }
    Mat {
        ctx: a.ctx,
        rows: a.rows,
        cols: b.cols,
        data: out.into_iter().map(|v| Scalar::Fp { v: v as u64, p }).collect(),
    }
}

impl Mul for Mat {
    type Output = Mat;
    fn mul(self, o: Mat) -> Mat {
        &self * &o
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape mismatch");
        Mat {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shape mismatch");
        Mat {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Add for Mat {
    type Output = Mat;
    fn add(self, o: Mat) -> Mat {
        &self + &o
    }
}

impl Sub for Mat {
    type Output = Mat;
    fn sub(self, o: Mat) -> Mat {
        &self - &o
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.map(|x| -x)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn rref_mod(a: &Mat, p: u64) -> Rref {
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<u64> = a.data.iter().map(|x| x.residue().unwrap()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(m[r * cols + c], p);
        for j in c..cols {
            m[r * cols + j] = (m[r * cols + j] as u128 * inv as u128 % p as u128) as u64;
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m[i * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let t = (f as u128 * m[r * cols + j] as u128 % p as u128) as u64;
                let x = m[i * cols + j];
                m[i * cols + j] = if x >= t { x - t } else { x + p - t };
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        mat: Mat {
            ctx: a.ctx,
            rows,
            cols,
            data: m.into_iter().map(|v| Scalar::Fp { v, p }).collect(),
        },
        rank: r,
        pivots,
    }
}

fn remove_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x /= &g;
    }
}

/// Fraction-free Gauss-Jordan over the integers with content removal after
/// each row operation, normalized to rationals at the end.
fn rref_q(a: &Mat) -> Rref {
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row: Vec<BigRational> = (0..cols).map(|j| a[(i, j)].to_rational()).collect();
            let mut l = BigInt::one();
            for x in &row {
                l = l.lcm(x.denom());
            }
            let mut ints: Vec<BigInt> = row.iter().map(|x| (x * &l).to_integer()).collect();
            remove_content(&mut ints);
            ints
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // prefer the pivot of smallest magnitude to limit growth
        let Some(pr) = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by(|&x, &y| m[x][c].abs().cmp(&m[y][c].abs()))
        else {
            continue;
        };
        m.swap(pr, r);
        let prow = m[r].clone();
        let pv = prow[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let fa = &pv / &g;
            let fb = &row[c] / &g;
            for j in 0..cols {
                if prow[j].is_zero() {
                    if !row[j].is_zero() {
                        row[j] = &row[j] * &fa;
                    }
                } else {
                    row[j] = &row[j] * &fa - &prow[j] * &fb;
                }
            }
            remove_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Mat::zeros(a.ctx, rows, cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let pv = m[i][pc].clone();
        for j in 0..cols {
            if !m[i][j].is_zero() {
                out[(i, j)] = Scalar::Q(BigRational::new(m[i][j].clone(), pv.clone()));
            }
        }
    }
    Rref {
        mat: out,
        rank: r,
        pivots,
    }
}
