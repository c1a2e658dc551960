//! Dense univariate polynomials over a field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactla::mat::Mat;
use crate::field::{FieldCtx, Scalar};

/// A polynomial `c[0] + c[1] x + ...` with no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub ctx: FieldCtx,
    pub c: Vec<Scalar>,
}

impl Poly {
    pub fn new(ctx: FieldCtx, mut c: Vec<Scalar>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { ctx, c }
    }

    pub fn from_i64(ctx: FieldCtx, c: &[i64]) -> Poly {
        Poly::new(ctx, c.iter().map(|&x| ctx.from_i64(x)).collect())
    }

    pub fn zero(ctx: FieldCtx) -> Poly {
        Poly { ctx, c: vec![] }
    }

    pub fn one(ctx: FieldCtx) -> Poly {
        Poly::constant(&ctx.one())
    }

    pub fn constant(a: &Scalar) -> Poly {
        Poly::new(a.ctx(), vec![a.clone()])
    }

    pub fn x(ctx: FieldCtx) -> Poly {
        Poly::monomial(&ctx.one(), 1)
    }

    /// `a x^d`.
    pub fn monomial(a: &Scalar, d: usize) -> Poly {
        let ctx = a.ctx();
        let mut c = vec![ctx.zero(); d + 1];
        c[d] = a.clone();
        Poly::new(ctx, c)
    }

    /// `x - a`.
    pub fn linear(a: &Scalar) -> Poly {
        Poly::new(a.ctx(), vec![-a, a.ctx().one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.c.get(i).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn lead(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().inv().expect("nonzero lead");
        self.scale(&l)
    }

    pub fn scale(&self, a: &Scalar) -> Poly {
        Poly::new(self.ctx, self.c.iter().map(|x| x * a).collect())
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.c.len() < d.c.len() {
            return (Poly::zero(self.ctx), self.clone());
        }
        let linv = d.lead().inv().unwrap();
        let mut r = self.c.clone();
        let mut q = vec![self.ctx.zero(); self.c.len() - dd];
        for i in (0..q.len()).rev() {
            let f = &r[i + dd] * &linv;
            if f.is_zero() {
                continue;
            }
            for j in 0..=dd {
                let t = &f * &d.c[j];
                r[i + j] -= &t;
            }
            q[i] = f;
        }
        r.truncate(dd);
        (Poly::new(self.ctx, q), Poly::new(self.ctx, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s a + t b = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let ctx = self.ctx;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(ctx), Poly::zero(ctx));
        let (mut t0, mut t1) = (Poly::zero(ctx), Poly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.lead().inv().unwrap();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    pub fn deriv(&self) -> Poly {
        Poly::new(
            self.ctx,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * &self.ctx.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, a: &Scalar) -> Scalar {
        let mut r = self.ctx.zero();
        for x in self.c.iter().rev() {
            r = &(&r * a) + x;
        }
        r
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_mat(&self, a: &Mat) -> Mat {
        let n = a.rows;
        let mut r = Mat::zeros(self.ctx, n, n);
        for x in self.c.iter().rev() {
            r = &(&r * a) + &Mat::scalar_matrix(n, x);
        }
        r
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut r = Poly::zero(self.ctx);
        for x in self.c.iter().rev() {
            r = &(&r * g) + &Poly::constant(x);
        }
        r
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: &Scalar) -> Poly {
        self.compose(&Poly::new(self.ctx, vec![a.clone(), self.ctx.one()]))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Poly {
        let mut r = Poly::one(self.ctx).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = (&r * &b).rem(m);
            }
            e >>= 1;
            if e > 0 {
                b = (&b * &b).rem(m);
            }
        }
        r
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut r = Poly::one(self.ctx);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// True iff only even powers of x occur.
    pub fn is_even(&self) -> bool {
        self.c.iter().enumerate().all(|(i, x)| i % 2 == 0 || x.is_zero())
    }

    /// Companion matrix: ones on the subdiagonal, last column `-c_0, ..., -c_{d-1}`.
    /// Its characteristic polynomial is the monic associate of `self`.
    pub fn companion(&self) -> Mat {
        let p = self.monic();
        let d = p.deg();
        let mut m = Mat::zeros(self.ctx, d, d);
        for i in 1..d {
            m[(i, i - 1)] = self.ctx.one();
        }
        for i in 0..d {
            m[(i, d - 1)] = -&p.c[i];
        }
        m
    }

    /// Parse expressions such as `x^2-x+1/2` or `3*x^3 + 2x - 5`.
    pub fn parse(ctx: FieldCtx, s: &str) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut out = Poly::zero(ctx);
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let bad = || Error::Parse(format!("invalid polynomial term '{t}'"));
            let (coef, deg) = match body.find('x') {
                None => (ctx.parse(body)?, 0usize),
                Some(pos) => {
                    let cs = body[..pos].trim_end_matches('*');
                    let coef = if cs.is_empty() { ctx.one() } else { ctx.parse(cs)? };
                    let rest = &body[pos + 1..];
                    let deg = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (coef, deg)
                }
            };
            let coef = if neg { -coef } else { coef };
            out = &out + &Poly::monomial(&coef, deg);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new(self.ctx, (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new(self.ctx, (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.ctx);
        }
        let mut c = vec![self.ctx.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Poly::new(self.ctx, c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.ctx, self.c.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.c.len()).rev() {
            let a = &self.c[i];
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative_rational();
            let mag = if neg { -a } else { a.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coef = !mag.is_one() || i == 0;
            if show_coef {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
