//! Exact scalar arithmetic over the rationals and odd prime fields.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The coefficient field: the rationals or a prime field of odd characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    Rational,
    Prime(u64),
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator; residues are kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so Fermat gives the inverse
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FieldCtx {
    /// The prime field of order `p`; `p` must be an odd prime.
    pub fn prime(p: u64) -> Result<FieldCtx> {
        if p == 2 || !is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FieldCtx::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Rational => 0,
            FieldCtx::Prime(p) => *p,
        }
    }

    /// Number of elements, or `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldCtx::Rational => None,
            FieldCtx::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldCtx::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldCtx::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldCtx::Rational => Scalar::Q(BigRational::from_integer(n.clone())),
            FieldCtx::Prime(p) => {
                let m = BigInt::from(*p);
                let r = n.mod_floor(&m);
                Scalar::Fp {
                    v: r.to_u64().expect("residue fits"),
                    p: *p,
                }
            }
        }
    }

    /// The element `n / d`; fails if `d` vanishes in the field.
    pub fn frac(&self, n: i64, d: i64) -> Result<Scalar> {
        let den = self.from_i64(d);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.from_i64(n) * den.inv()?)
    }

    /// Map a rational number into the field.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            FieldCtx::Rational => Ok(Scalar::Q(q.clone())),
            FieldCtx::Prime(_) => {
                let d = self.from_bigint(q.denom());
                Ok(self.from_bigint(q.numer()) * d.inv()?)
            }
        }
    }

    /// Parse an integer or `a/b` literal.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar '{s}'"));
        let (n, d) = match s.split_once('/') {
            Some((a, b)) => (
                a.trim().parse::<BigInt>().map_err(|_| bad())?,
                b.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(n, d))
    }

    /// All field elements, for prime fields only.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldCtx::Rational => None,
            FieldCtx::Prime(p) => Some((0..*p).map(|v| Scalar::Fp { v, p: *p }).collect()),
        }
    }

    /// A random element. Over Q the value is an integer in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        match self {
            FieldCtx::Rational => self.from_i64(rng.gen_range(-bound..=bound)),
            FieldCtx::Prime(p) => Scalar::Fp {
                v: rng.gen_range(0..*p),
                p: *p,
            },
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        a.inv()
    }

    /// True iff `a` is the square of a field element.
    pub fn is_square(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Q(q) => {
                if q.is_negative() {
                    return false;
                }
                is_perfect_square(q.numer()) && is_perfect_square(q.denom())
            }
            Scalar::Fp { v, p } => *v == 0 || pow_mod(*v, (p - 1) / 2, *p) == 1,
        }
    }

    /// A square root of `a` if one exists in the field.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Q(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Q(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Fp { v, p } => tonelli_shanks(*v, *p).map(|r| Scalar::Fp { v: r, p: *p }),
        }
    }

    /// Canonical representative of the square class of a nonzero element.
    pub fn square_class_rep(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match a {
            Scalar::Q(q) => {
                let prod = (q.numer() * q.denom()).abs();
                let sf = squarefree_part(&prod)?;
                let sf = if q.is_negative() { -sf } else { sf };
                Ok(Scalar::Q(BigRational::from_integer(sf)))
            }
            Scalar::Fp { v, p } => {
                if pow_mod(*v, (p - 1) / 2, *p) == 1 {
                    Ok(self.one())
                } else {
                    Ok(self.least_nonresidue().expect("prime field"))
                }
            }
        }
    }

    /// The least quadratic non-residue of a prime field.
    pub fn least_nonresidue(&self) -> Option<Scalar> {
        match self {
            FieldCtx::Rational => None,
            FieldCtx::Prime(p) => (2..*p)
                .find(|&v| pow_mod(v, (p - 1) / 2, *p) == p - 1)
                .map(|v| Scalar::Fp { v, p: *p }),
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rational => write!(f, "Q"),
            FieldCtx::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Squarefree part of a positive integer by trial division. Any cofactor left
/// after dividing out primes below 10^6 must itself be below 10^12 (hence
/// prime) or a perfect square, otherwise no certificate is available.
fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let mut n = n.clone();
    let mut out = BigInt::one();
    let mut d: u64 = 2;
    while d <= TRIAL_BOUND {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0u32;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Ok(out);
    }
    let bound = BigInt::from(TRIAL_BOUND);
    if &bound * &bound > n || d <= TRIAL_BOUND {
        // the remaining cofactor has no divisor below its square root
        return Ok(out * n);
    }
    if is_perfect_square(&n) {
        return Ok(out);
    }
    Err(Error::SquareFreeUncertified(n.to_string()))
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

impl Scalar {
    pub fn ctx(&self) -> FieldCtx {
        match self {
            Scalar::Q(_) => FieldCtx::Rational,
            Scalar::Fp { p, .. } => FieldCtx::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Q(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Q(q.recip()))
                }
            }
            Scalar::Fp { v, p } => {
                if *v == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Fp {
                        v: inv_mod(*v, *p),
                        p: *p,
                    })
                }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut r = self.ctx().one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }

    /// The value as a rational number (over F_p, the residue as an integer).
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Q(q) => q.clone(),
            Scalar::Fp { v, .. } => BigRational::from_integer(BigInt::from(*v)),
        }
    }

    /// Residue for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    /// Size measure used to prefer simple candidates in searches.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Q(q) => {
                let n = q.numer().magnitude().bits();
                let d = q.denom().magnitude().bits();
                n.max(d)
            }
            Scalar::Fp { v, p } => (*v).min(p - v),
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.numer().sign() == Sign::Minus)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn binop<F, G>(a: &Scalar, b: &Scalar, fq: F, fp: G) -> Scalar
where
    F: Fn(&BigRational, &BigRational) -> BigRational,
    G: Fn(u64, u64, u64) -> u64,
{
    match (a, b) {
        (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(fq(x, y)),
        (Scalar::Fp { v: x, p }, Scalar::Fp { v: y, p: q }) if p == q => Scalar::Fp {
            v: fp(*x, *y, *p),
            p: *p,
        },
        _ => panic!("scalar field mismatch: {a:?} vs {b:?}"),
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        binop(self, o, |x, y| x + y, |x, y, p| {
            let s = x + y;
            if s >= p {
                s - p
            } else {
                s
            }
        })
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        binop(self, o, |x, y| x - y, |x, y, p| if x >= y { x - y } else { x + p - y })
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        binop(self, o, |x, y| x * y, mul_mod)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}
