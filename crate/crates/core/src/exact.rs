//! Exact scalars: rationals and real quadratic field elements a + b√d.
//!
//! A [`Scalar`] is either a rational number (d = 0) or an element of Q(√d)
//! for a square-free integer d ≥ 2. The discriminant is part of the value;
//! rationals combine with any discriminant, but mixing two distinct
//! irrational discriminants is a programming error and panics.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number with arbitrary-precision integer parts.
pub type Rational = BigRational;

pub use num_bigint::BigInt as Integer;

/// Builds `p/q` as a [`Rational`]. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Splits `n ≥ 0` as `m² · d` with d square-free; returns `(d, m)`.
///
/// `0` splits as `(0, 0)` and perfect squares as `(1, √n)`.
pub fn square_free_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut d = 1u64;
    let mut m = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        m *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    // whatever is left is prime (or 1)
    d *= rest;
    (d, m)
}

/// `√r` for a non-negative rational, if it is itself rational.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

/// An exact number of the form `a + b√d`.
///
/// Invariants: `d` is 0 or square-free ≥ 2, and `b = 0 ⟺ d = 0`. All
/// constructors canonicalize, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    d: u64,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(rat(p, q))
    }

    /// `a + b√d` for any integer `d ≥ 0`; the radicand is reduced to its
    /// square-free part, and rational radicals fold into the rational part.
    pub fn quadratic(a: Rational, b: Rational, d: u64) -> Self {
        let (sf, m) = square_free_split(d);
        let b = b * rat_int(m as i64);
        if sf <= 1 || b.is_zero() {
            // √0 = 0, √1 = 1: the value is rational.
            let a = if sf == 1 { a + b } else { a };
            return Self::from_rational(a);
        }
        Scalar { a, b, d: sf }
    }

    /// `√n` for an integer n ≥ 0, as `m√d` with d square-free.
    pub fn sqrt_of_integer(n: u64) -> Self {
        Self::quadratic(Rational::zero(), Rational::one(), n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_coeff(&self) -> &Rational {
        &self.b
    }

    /// Square-free discriminant; 0 for rational values.
    pub fn discriminant(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    /// The rational value, if this scalar is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.d == 0 {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Galois conjugate a − b√d.
    pub fn conjugate(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm (a + b√d)(a − b√d) = a² − b²d.
    pub fn field_norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat_int(self.d as i64)
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        let n = self.field_norm();
        // a + b√d = 0 with b ≠ 0 would make √d rational, so n ≠ 0.
        Scalar {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: if self.b.is_zero() { 0 } else { self.d },
        }
        .normalized()
    }

    /// Sign of the real value: −1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.b.is_zero() {
            return sign_of(&self.a);
        }
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == sb || sa == 0 {
            return sb;
        }
        if sb == 0 {
            return sa;
        }
        // a and b√d have opposite signs: compare a² with b²d.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * rat_int(self.d as i64);
        match lhs.cmp(&rhs) {
            core::cmp::Ordering::Greater => sa,
            core::cmp::Ordering::Less => sb,
            core::cmp::Ordering::Equal => 0,
        }
    }

    /// Approximate f64 value, for display only.
    pub fn approx(&self) -> f64 {
        ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * crate::exact::f64_sqrt(self.d as f64)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    fn unify_disc(&self, rhs: &Self) -> u64 {
        match (self.d, rhs.d) {
            (0, d) | (d, 0) => d,
            (d1, d2) if d1 == d2 => d1,
            (d1, d2) => panic!("mixed quadratic fields: Q(\u{221a}{d1}) vs Q(\u{221a}{d2})"),
        }
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn ratio_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

// core has no f64::sqrt; Newton iteration is plenty for display values.
pub(crate) fn f64_sqrt(x: f64) -> f64 {
    if x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return 0.0;
    }
    let mut g = if x > 1.0 { x } else { 1.0 };
    for _ in 0..80 {
        g = 0.5 * (g + x / g);
    }
    g
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.unify_disc(rhs);
        Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d,
        }
        .normalized()
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.unify_disc(rhs);
        Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d,
        }
        .normalized()
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let d = self.unify_disc(rhs);
        let dd = rat_int(d as i64);
        Scalar {
            a: &self.a * &rhs.a + &(&self.b * &rhs.b) * &dd,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
        .normalized()
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is mul by inverse
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inverse()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $m:ident),*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $trait::$m(&self, &rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}*sqrt({})", self.a, sign, self.b.abs(), self.d)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders a rational as `p` or `p/q` (used by report formats).
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` into a rational. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let p: BigInt = num.parse().map_err(|_| ParseRationalError::bad(s))?;
    let q: BigInt = match den {
        Some(d) => d.parse().map_err(|_| ParseRationalError::bad(s))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(ParseRationalError::bad(s));
    }
    Ok(Rational::new(p, q))
}

/// Error for [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected a rational in the form p or p/q, got {input:?}")]
pub struct ParseRationalError {
    pub input: String,
}

impl ParseRationalError {
    fn bad(s: &str) -> Self {
        ParseRationalError { input: s.into() }
    }
}
