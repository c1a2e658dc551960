//! Polynomial factorization: complete over prime fields, and over the
//! rationals up to certified irreducibility in degree four.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::poly::Poly;
use crate::field::{FieldCtx, Scalar};

/// One factor of a factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    /// Monic factor.
    pub poly: Poly,
    pub multiplicity: usize,
    /// False when the factor could not be certified irreducible.
    pub irreducible: bool,
}

/// Factor a nonzero polynomial into monic pieces. The leading coefficient is dropped.
pub fn factor_poly(f: &Poly) -> Vec<Factor> {
    assert!(!f.is_zero(), "factor_poly of zero");
    let f = f.monic();
    if f.deg() == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    match f.ctx {
        FieldCtx::Prime(p) => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for (g, m) in squarefree_fp(&f, p) {
                for (h, d) in distinct_degree(&g, p) {
                    for irr in equal_degree(&h, d, p, &mut rng) {
                        out.push(Factor {
                            poly: irr,
                            multiplicity: m,
                            irreducible: true,
                        });
                    }
                }
            }
        }
        FieldCtx::Rational => {
            for (g, m) in squarefree_q(&f) {
                for (h, irr) in split_rational(&g) {
                    out.push(Factor {
                        poly: h,
                        multiplicity: m,
                        irreducible: irr,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.poly.deg(), a.multiplicity, a.poly.to_string()).cmp(&(b.poly.deg(), b.multiplicity, b.poly.to_string()))
    });
    out
}

/// Factorization into certified irreducibles with multiplicities.
pub fn irreducible_factors(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let fs = factor_poly(f);
    if let Some(bad) = fs.iter().find(|x| !x.irreducible) {
        return Err(Error::UnsupportedDegree(bad.poly.deg()));
    }
    Ok(fs.into_iter().map(|x| (x.poly, x.multiplicity)).collect())
}

/// Certified irreducibility test.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.deg() == 0 {
        return Ok(false);
    }
    let fs = factor_poly(f);
    if fs.len() == 1 && fs[0].multiplicity == 1 {
        if fs[0].irreducible {
            return Ok(true);
        }
        return Err(Error::UnsupportedDegree(f.deg()));
    }
    Ok(false)
}

/// Squarefree decomposition in characteristic zero (Yun).
fn squarefree_q(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let d = f.deriv();
    let a = f.gcd(&d);
    let mut b = f.exact_div(&a).monic();
    let mut c = d.exact_div(&a);
    let mut i = 1;
    loop {
        let db = b.deriv();
        let cc = &c - &db;
        let g = b.gcd(&cc);
        if !g.is_one() {
            out.push((g.clone(), i));
        }
        b = b.exact_div(&g).monic();
        if b.deg() == 0 {
            break;
        }
        c = cc.exact_div(&g);
        i += 1;
    }
    out
}

/// Squarefree decomposition over F_p, handling p-th powers.
fn squarefree_fp(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let d = f.deriv();
    if d.is_zero() {
        // f is a p-th power
        let root = pth_root(f, p);
        for (g, m) in squarefree_fp(&root, p) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c).monic();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).monic();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if c.deg() > 0 {
        let root = pth_root(&c.monic(), p);
        for (g, m) in squarefree_fp(&root, p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn pth_root(f: &Poly, p: u64) -> Poly {
    let p = p as usize;
    let c: Vec<Scalar> = f.c.iter().step_by(p).cloned().collect();
    Poly::new(f.ctx, c)
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let ctx = f.ctx;
    let x = Poly::x(ctx);
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.rem(&f);
    let mut i = 1;
    while f.deg() >= 2 * i {
        h = h.powmod(p as u128, &f);
        let g = (&h - &x).gcd(&f);
        if !g.is_one() {
            out.push((g.clone(), i));
            f = f.exact_div(&g).monic();
            h = h.rem(&f);
        }
        i += 1;
    }
    if f.deg() > 0 {
        let d = f.deg();
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus) for odd p.
fn equal_degree(f: &Poly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    if f.deg() == d {
        return vec![f.monic()];
    }
    let ctx = f.ctx;
    let n = f.deg();
    loop {
        let a = Poly::new(ctx, (0..n).map(|_| ctx.random(rng, 0)).collect());
        if a.deg() == 0 {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut t = a.rem(f);
        let mut cur = t.clone();
        for _ in 1..d {
            cur = cur.powmod(p as u128, f);
            t = (&t * &cur).rem(f);
        }
        let b = &t.powmod(((p - 1) / 2) as u128, f) - &Poly::one(ctx);
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&f.exact_div(&g).monic(), d, p, rng));
            return out;
        }
    }
}

/// Integer coefficients of a primitive associate of `f`.
fn integer_coeffs(f: &Poly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in &f.c {
        l = l.lcm(c.to_rational().denom());
    }
    let mut v: Vec<BigInt> = f.c.iter().map(|c| (c.to_rational() * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if !g.is_zero() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Positive divisors of `n`, or `None` when `n` is too large to factor here.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return None;
    }
    let mut m = n.to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e > 0 {
            primes.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (q, e) in primes {
        let mut next = Vec::new();
        for &x in &divs {
            let mut y = x;
            for _ in 0..=e {
                next.push(y);
                y *= q;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs.into_iter().map(BigInt::from).collect())
}

/// Split a squarefree rational polynomial into rational linear factors and a
/// remainder, certifying irreducibility of the remainder in degree at most 4.
fn split_rational(f: &Poly) -> Vec<(Poly, bool)> {
    let ctx = f.ctx;
    let mut out = Vec::new();
    let mut g = f.monic();
    if g.coeff(0).is_zero() {
        out.push((Poly::x(ctx), true));
        g = g.exact_div(&Poly::x(ctx));
    }
    if g.deg() >= 1 {
        let ints = integer_coeffs(&g);
        let a0 = ints[0].clone();
        let an = ints.last().unwrap().clone();
        match (divisors(&a0), divisors(&an)) {
            (Some(num), Some(den)) => {
                let mut cands: Vec<BigRational> = Vec::new();
                for a in &num {
                    for b in &den {
                        let r = BigRational::new(a.clone(), b.clone());
                        if !cands.contains(&r) {
                            cands.push(r.clone());
                            cands.push(-r);
                        }
                    }
                }
                for r in cands {
                    let s = Scalar::Q(r);
                    if g.deg() >= 1 && g.eval(&s).is_zero() {
                        let lin = Poly::linear(&s);
                        g = g.exact_div(&lin).monic();
                        out.push((lin, true));
                    }
                }
            }
            _ => {
                out.push((g, false));
                return out;
            }
        }
    }
    match g.deg() {
        0 => {}
        1 => out.push((g, true)),
        2 | 3 => out.push((g, true)),
        4 => match quartic_quadratic_split(&g) {
            Some((a, b)) => {
                out.push((a, true));
                out.push((b, true));
            }
            None => out.push((g, true)),
        },
        _ => out.push((g, false)),
    }
    out
}

/// Look for a factorization of a monic rational quartic without rational
/// roots into two rational quadratics.
fn quartic_quadratic_split(f: &Poly) -> Option<(Poly, Poly)> {
    let ctx = f.ctx;
    let mut l = BigInt::one();
    for c in &f.c {
        l = l.lcm(c.to_rational().denom());
    }
    // g(y) = l^4 f(y / l) is monic with integer coefficients
    let coef = |i: usize| -> BigInt {
        let s = f.coeff(i).to_rational() * BigRational::from_integer(l.pow(4 - i as u32));
        s.to_integer()
    };
    let (bb, cc, dd, ee) = (coef(3), coef(2), coef(1), coef(0));
    let divs = divisors(&ee)?;
    let mut found: Option<(BigInt, BigInt, BigInt, BigInt)> = None;
    'outer: for pos in &divs {
        for b in [pos.clone(), -pos.clone()] {
            let d = &ee / &b;
            if b != d {
                let num = &dd - &b * &bb;
                let den = &d - &b;
                if !(&num % &den).is_zero() {
                    continue;
                }
                let a = &num / &den;
                let c = &bb - &a;
                if &b + &d + &a * &c == cc {
                    found = Some((a, b, c, d));
                    break 'outer;
                }
            } else {
                if dd != &bb * &b {
                    continue;
                }
                let disc = &bb * &bb - BigInt::from(4) * (&cc - BigInt::from(2) * &b);
                if disc.is_negative() {
                    continue;
                }
                let s = disc.sqrt();
                if &s * &s != disc || !(&bb + &s).is_even() {
                    continue;
                }
                let a = (&bb + &s) / 2;
                let c = &bb - &a;
                found = Some((a, b, c, d));
                break 'outer;
            }
        }
    }
    let (a, b, c, d) = found?;
    // undo the scaling y = l x
    let lq = BigRational::from_integer(l.clone());
    let mk = |a: &BigInt, b: &BigInt| {
        let a = BigRational::from_integer(a.clone()) / &lq;
        let b = BigRational::from_integer(b.clone()) / (&lq * &lq);
        Poly::new(ctx, vec![Scalar::Q(b), Scalar::Q(a), ctx.one()])
    };
    Some((mk(&a, &b), mk(&c, &d)))
}
