//! Closed-form eigenvalue relations for manifolds with Killing spinors:
//! Dirac eigenvalues from Laplace data on functions and coclosed 1-forms,
//! the associated upper/lower bounds, and the second-eigenvalue formulas in
//! dimension seven, dispatched on an explicit geometry class.
//!
//! All values are kept in exact radical form p + s√q end to end; comparison
//! is decided symbolically (at most two squarings with sign tracking), so no
//! tolerance enters anywhere.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::{exact_sqrt, rat_int, rational_string, Rational};

/// Errors from the formula layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("eigenvalue must be positive, got {0}")]
    NonPositiveEigenvalue(String),
    #[error("result is not rational: {0}")]
    NonRationalResult(String),
    #[error("degenerate branch: the df-coefficient denominator m + (2 - n)a vanishes")]
    DegenerateBranch,
    #[error("m = -na is the Killing branch: f is constant and the df-formula does not apply")]
    KillingBranch,
    #[error("operation requires dimension {expected}, got {got}")]
    WrongDimension { expected: u32, got: u32 },
    #[error("missing required spectral input: {0}")]
    MissingInput(&'static str),
    #[error("{name} violated: requires {requirement}, got {got}")]
    FloorViolation {
        name: &'static str,
        requirement: String,
        got: String,
    },
    #[error("geometry class {class} requires Killing number {expected}, got {got}")]
    WrongKillingNumber {
        class: &'static str,
        expected: String,
        got: String,
    },
    #[error("spectrum list {0} must be strictly ascending")]
    UnsortedSpectrum(&'static str),
    #[error("incompatible radicals: sqrt({0}) vs sqrt({1})")]
    IncompatibleRadicals(String, String),
    #[error("division by zero eigenvalue")]
    ZeroDivision,
}

fn fmt_rat(r: &Rational) -> String {
    rational_string(r)
}

/// An exact number of the form p + s·√q with p, q rational, q ≥ 0 and
/// s ∈ {−1, 0, +1}.
///
/// Canonical form: q = 0 ⟺ s = 0, and q is never a perfect rational square
/// (those fold into p). Comparison is exact and total.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactEigenvalue {
    p: Rational,
    s: i8,
    q: Rational,
}

impl ExactEigenvalue {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn from_rational(p: Rational) -> Self {
        ExactEigenvalue {
            p,
            s: 0,
            q: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// √q for a rational q ≥ 0.
    pub fn sqrt(q: Rational) -> Result<Self, SpectralError> {
        if q.is_negative() {
            return Err(SpectralError::NegativeRadicand(fmt_rat(&q)));
        }
        Ok(Self::canonical(Rational::zero(), 1, q))
    }

    fn canonical(p: Rational, s: i8, q: Rational) -> Self {
        debug_assert!(!q.is_negative());
        if s == 0 || q.is_zero() {
            return Self::from_rational(p);
        }
        if let Some(r) = exact_sqrt(&q) {
            let shift = if s > 0 { r } else { -r };
            return Self::from_rational(p + shift);
        }
        ExactEigenvalue { p, s, q }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn s(&self) -> i8 {
        self.s
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn is_rational(&self) -> bool {
        self.s == 0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.s == 0).then_some(&self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.s == 0 && self.p.is_zero()
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        ExactEigenvalue {
            p: &self.p + r,
            s: self.s,
            q: self.q.clone(),
        }
    }

    pub fn mul_rational(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let s = if c.is_negative() { -self.s } else { self.s };
        Self::canonical(&self.p * c, s, &self.q * c * c)
    }

    pub fn neg(&self) -> Self {
        ExactEigenvalue {
            p: -self.p.clone(),
            s: -self.s,
            q: self.q.clone(),
        }
    }

    /// Squaring stays in single-radical form:
    /// (p + s√q)² = (p² + q) + sign(2ps)·√(4p²q).
    pub fn square(&self) -> Self {
        let p2 = &self.p * &self.p;
        let s = if self.p.is_negative() {
            -self.s
        } else if self.p.is_zero() {
            0
        } else {
            self.s
        };
        Self::canonical(&p2 + &self.q, s, rat_int(4) * &p2 * &self.q)
    }

    /// Sum, when the radicals lie in the same square class.
    pub fn try_add(&self, rhs: &Self) -> Result<Self, SpectralError> {
        if rhs.s == 0 {
            return Ok(self.add_rational(&rhs.p));
        }
        if self.s == 0 {
            return Ok(rhs.add_rational(&self.p));
        }
        // s₁√q₁ + s₂√q₂ combines iff q₂/q₁ is a rational square r²
        let ratio = &rhs.q / &self.q;
        let Some(r) = exact_sqrt(&ratio) else {
            return Err(SpectralError::IncompatibleRadicals(
                fmt_rat(&self.q),
                fmt_rat(&rhs.q),
            ));
        };
        let t = rat_int(self.s as i64) + rat_int(rhs.s as i64) * r;
        let p = &self.p + &rhs.p;
        if t.is_zero() {
            return Ok(Self::from_rational(p));
        }
        let s = if t.is_negative() { -1 } else { 1 };
        Ok(Self::canonical(p, s, &t * &t * &self.q))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, SpectralError> {
        self.try_add(&rhs.neg())
    }

    /// 1/(p + s√q), via the conjugate. Errors on zero.
    pub fn inverse(&self) -> Result<Self, SpectralError> {
        if self.is_zero() {
            return Err(SpectralError::ZeroDivision);
        }
        if self.s == 0 {
            return Ok(Self::from_rational(self.p.recip()));
        }
        // canonical irrational value is nonzero, so p² − q ≠ 0
        let den = &self.p * &self.p - &self.q;
        Ok(Self::canonical(
            &self.p / &den,
            if den.is_negative() { self.s } else { -self.s },
            &self.q / (&den * &den),
        ))
    }

    /// Exact sign: −1, 0 or +1.
    pub fn signum(&self) -> i32 {
        sign_linear(&self.p, &rat_int(self.s as i64), &self.q)
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact comparison; a total order on real values.
    pub fn cmp_exact(&self, rhs: &Self) -> Ordering {
        let sign = if rhs.s == 0 {
            sign_linear(&(&self.p - &rhs.p), &rat_int(self.s as i64), &self.q)
        } else if self.s == 0 {
            -sign_linear(&(&rhs.p - &self.p), &rat_int(rhs.s as i64), &rhs.q)
        } else {
            let ratio = &rhs.q / &self.q;
            if let Some(r) = exact_sqrt(&ratio) {
                let t = rat_int(self.s as i64) - rat_int(rhs.s as i64) * r;
                sign_linear(&(&self.p - &rhs.p), &t, &self.q)
            } else {
                // x − y with x = P + s₁√q₁ and y = s₂√q₂ in distinct classes:
                // settle by comparing signs, then squares.
                let p_diff = &self.p - &rhs.p;
                let sx = sign_linear(&p_diff, &rat_int(self.s as i64), &self.q);
                let sy = rhs.s as i32;
                if sx != sy {
                    if sx > sy {
                        1
                    } else {
                        -1
                    }
                } else {
                    // sign(x² − y²), then flipped when both sides negative
                    let x2_p = &p_diff * &p_diff + &self.q - &rhs.q;
                    let x2_t = rat_int(2 * self.s as i64) * &p_diff;
                    let h = sign_linear(&x2_p, &x2_t, &self.q);
                    if sx > 0 {
                        h
                    } else {
                        -h
                    }
                }
            }
        };
        sign.cmp(&0)
    }

    /// Floor of the value scaled by 10^digits, within ±2 of the true floor.
    /// A decimal cross-check utility; never used on verification paths.
    pub fn scaled_floor(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        let rational_part = (self.p.numer() * &scale).div_floor(self.p.denom());
        if self.s == 0 {
            return rational_part;
        }
        // floor(√(c/d)·10^k) ≈ floor(isqrt(c·d·10^2k)/d)
        let scaled = self.q.numer() * self.q.denom() * &scale * &scale;
        let root = scaled.sqrt().div_floor(self.q.denom());
        if self.s > 0 {
            rational_part + root
        } else {
            rational_part - root
        }
    }

    /// Approximate f64 value, for display only.
    pub fn approx(&self) -> f64 {
        crate::exact::ratio_to_f64(&self.p)
            + (self.s as f64) * crate::exact::f64_sqrt(crate::exact::ratio_to_f64(&self.q))
    }
}

/// Sign of u + t√r for rationals u, t and r ≥ 0.
fn sign_linear(u: &Rational, t: &Rational, r: &Rational) -> i32 {
    let su = rat_sign(u);
    if t.is_zero() || r.is_zero() {
        return su;
    }
    let st = rat_sign(t);
    if su == 0 {
        return st;
    }
    if su == st {
        return su;
    }
    // u and t√r have opposite signs: compare u² against t²r
    let u2 = u * u;
    let t2r = t * t * r;
    match u2.cmp(&t2r) {
        Ordering::Greater => su,
        Ordering::Less => st,
        Ordering::Equal => 0,
    }
}

fn rat_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for ExactEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s == 0 {
            return write!(f, "{}", fmt_rat(&self.p));
        }
        let radical = alloc::format!("sqrt({})", fmt_rat(&self.q));
        if self.p.is_zero() {
            if self.s > 0 {
                write!(f, "{radical}")
            } else {
                write!(f, "-{radical}")
            }
        } else {
            write!(
                f,
                "{} {} {radical}",
                fmt_rat(&self.p),
                if self.s > 0 { "+" } else { "-" }
            )
        }
    }
}

impl fmt::Debug for ExactEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialOrd for ExactEigenvalue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactEigenvalue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

/// Which family of the spectrum theorem produced a Dirac eigenvalue.
/// Indices are 1-based positions in the corresponding input list.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SourceTag {
    Killing,
    Function(usize),
    FormPlus(usize),
    FormMinus(usize),
}

impl fmt::Display for SourceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceTag::Killing => write!(f, "killing"),
            SourceTag::Function(i) => write!(f, "function_{i}"),
            SourceTag::FormPlus(i) => write!(f, "form_plus_{i}"),
            SourceTag::FormMinus(i) => write!(f, "form_minus_{i}"),
        }
    }
}

/// Geometry class of the 7-manifold, following the count of Killing
/// spinors and the refinements available in the Sasaki–Einstein setting.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeometryClass {
    /// Parallel structure, a = 0.
    Parallel,
    /// Exactly one Killing spinor.
    ProperNearlyParallel,
    /// Exactly one Killing spinor and a nontrivial Killing vector field.
    ProperWithKillingField,
    /// At least two Killing spinors (Sasaki–Einstein), a = 1/2.
    SasakiEinstein,
    /// Sasaki–Einstein with isometry group of dimension ≥ 2, a = 1/2.
    SasakiEinsteinIsomGe2,
    /// Sasaki–Einstein with a smooth regular quotient, a = 1/2.
    SasakiEinsteinRegularQuotient,
    /// Three Killing spinors, a = 1/2.
    ThreeSasakian,
    /// No class-specific substitutions; theorem-level bounds only.
    Generic,
}

impl GeometryClass {
    pub const ALL: [GeometryClass; 8] = [
        GeometryClass::Parallel,
        GeometryClass::ProperNearlyParallel,
        GeometryClass::ProperWithKillingField,
        GeometryClass::SasakiEinstein,
        GeometryClass::SasakiEinsteinIsomGe2,
        GeometryClass::SasakiEinsteinRegularQuotient,
        GeometryClass::ThreeSasakian,
        GeometryClass::Generic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeometryClass::Parallel => "parallel",
            GeometryClass::ProperNearlyParallel => "proper_nearly_parallel",
            GeometryClass::ProperWithKillingField => "proper_with_killing_field",
            GeometryClass::SasakiEinstein => "sasaki_einstein",
            GeometryClass::SasakiEinsteinIsomGe2 => "sasaki_einstein_isom_ge2",
            GeometryClass::SasakiEinsteinRegularQuotient => "sasaki_einstein_regular_quotient",
            GeometryClass::ThreeSasakian => "three_sasakian",
            GeometryClass::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Number of Killing spinors the class guarantees (None for Generic).
    pub fn killing_spinor_count(self) -> Option<u8> {
        match self {
            GeometryClass::Parallel => Some(1),
            GeometryClass::ProperNearlyParallel | GeometryClass::ProperWithKillingField => Some(1),
            GeometryClass::SasakiEinstein
            | GeometryClass::SasakiEinsteinIsomGe2
            | GeometryClass::SasakiEinsteinRegularQuotient => Some(2),
            GeometryClass::ThreeSasakian => Some(3),
            GeometryClass::Generic => None,
        }
    }

    /// Sasaki–Einstein style classes are normalized to a = 1/2.
    pub fn requires_a_half(self) -> bool {
        matches!(
            self,
            GeometryClass::SasakiEinstein
                | GeometryClass::SasakiEinsteinIsomGe2
                | GeometryClass::SasakiEinsteinRegularQuotient
                | GeometryClass::ThreeSasakian
        )
    }
}

/// Input data for the spectrum transfer: the geometry class, the Killing
/// number, and whatever initial Laplace spectra are known.
#[derive(Clone, Debug)]
pub struct SpectralInput {
    pub n: u32,
    pub a: Rational,
    pub class: GeometryClass,
    /// Ascending positive eigenvalues of the Laplacian on functions.
    pub lambda0: Vec<Rational>,
    /// Ascending λ¹_{i,+} data (coclosed 1-forms, plus branch).
    pub lambda1_plus: Vec<Rational>,
    /// Ascending λ¹_{i,−} data (coclosed 1-forms, minus branch).
    pub lambda1_minus: Vec<Rational>,
    /// First coclosed 1-form Laplace eigenvalue Λ₁ (optional).
    pub big_lambda1: Option<Rational>,
}

impl SpectralInput {
    pub fn new(n: u32, a: Rational, class: GeometryClass) -> Self {
        SpectralInput {
            n,
            a,
            class,
            lambda0: Vec::new(),
            lambda1_plus: Vec::new(),
            lambda1_minus: Vec::new(),
            big_lambda1: None,
        }
    }

    /// Scalar curvature derived from the Killing number: R = 4n(n−1)a².
    pub fn scalar_curvature(&self) -> Rational {
        rat_int(4 * self.n as i64 * (self.n as i64 - 1)) * &self.a * &self.a
    }

    pub fn validate(&self) -> Result<(), SpectralError> {
        if self.n < 3 {
            return Err(SpectralError::WrongDimension {
                expected: 3,
                got: self.n,
            });
        }
        if self.class == GeometryClass::Parallel && !self.a.is_zero() {
            return Err(SpectralError::WrongKillingNumber {
                class: self.class.name(),
                expected: "0".into(),
                got: fmt_rat(&self.a),
            });
        }
        if self.class.requires_a_half() && self.a != crate::exact::rat(1, 2) {
            return Err(SpectralError::WrongKillingNumber {
                class: self.class.name(),
                expected: "1/2".into(),
                got: fmt_rat(&self.a),
            });
        }
        for (name, list) in [
            ("lambda0", &self.lambda0),
            ("lambda1_plus", &self.lambda1_plus),
            ("lambda1_minus", &self.lambda1_minus),
        ] {
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(SpectralError::UnsortedSpectrum(name));
                }
            }
            if let Some(first) = list.first() {
                if !first.is_positive() {
                    return Err(SpectralError::NonPositiveEigenvalue(fmt_rat(first)));
                }
            }
        }
        let floors = floors(self.n, &self.a);
        // Strict Lichnerowicz–Obata floor whenever the class excludes S^n.
        if self.class != GeometryClass::Generic {
            if let Some(l0) = self.lambda0.first() {
                if l0 <= &floors.lichnerowicz_obata {
                    return Err(SpectralError::FloorViolation {
                        name: "Lichnerowicz-Obata",
                        requirement: alloc::format!("> {}", fmt_rat(&floors.lichnerowicz_obata)),
                        got: fmt_rat(l0),
                    });
                }
            }
        }
        if let Some(l1) = &self.big_lambda1 {
            if l1 < &floors.gallot_meyer {
                return Err(SpectralError::FloorViolation {
                    name: "Gallot-Meyer",
                    requirement: alloc::format!(">= {}", fmt_rat(&floors.gallot_meyer)),
                    got: fmt_rat(l1),
                });
            }
            for (name, list) in [
                ("lambda1_plus", &self.lambda1_plus),
                ("lambda1_minus", &self.lambda1_minus),
            ] {
                if let Some(first) = list.first() {
                    if first < l1 {
                        return Err(SpectralError::FloorViolation {
                            name: "Lambda1 <= lambda1_{1,+-}",
                            requirement: alloc::format!("{name}[0] >= {}", fmt_rat(l1)),
                            got: fmt_rat(first),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// μ₁(D²) = n²a², the square of the Killing eigenvalue −na... (n|a|)².
pub fn mu1_d2(n: u32, a: &Rational) -> Rational {
    rat_int((n * n) as i64) * a * a
}

/// λ⁰ = m² + 2am + a²(2n − n²). Errors when the result fails to be
/// rational, which signals an m outside the function family.
pub fn function_eigenvalue_relation(
    n: u32,
    a: &Rational,
    m: &ExactEigenvalue,
) -> Result<Rational, SpectralError> {
    let two_a_m = m.mul_rational(&(rat_int(2) * a));
    let constant = a * a * rat_int(2 * n as i64 - (n * n) as i64);
    let total = m.square().try_add(&two_a_m)?.add_rational(&constant);
    total
        .as_rational()
        .cloned()
        .ok_or_else(|| SpectralError::NonRationalResult(alloc::format!("{total}")))
}

/// Both Dirac eigenvalues produced by a function eigenvalue:
/// m = −a ± √(λ⁰ + a²(1 − n)²).
pub fn dirac_from_function(
    n: u32,
    a: &Rational,
    lambda0_i: &Rational,
) -> Result<(ExactEigenvalue, ExactEigenvalue), SpectralError> {
    if !lambda0_i.is_positive() {
        return Err(SpectralError::NonPositiveEigenvalue(fmt_rat(lambda0_i)));
    }
    let shift = rat_int(1 - n as i64);
    let radicand = lambda0_i + a * a * &shift * &shift;
    let root = ExactEigenvalue::sqrt(radicand)?;
    let minus_a = -a.clone();
    Ok((
        root.add_rational(&minus_a),
        root.neg().add_rational(&minus_a),
    ))
}

/// Coefficient 1/(m + 2a − na) of the df-term in the function eigenspinor
/// (1/(m − 5a) for n = 7).
///
/// Refused for m = −na: that is the Killing eigenvalue, where f is constant
/// and the whole eigenspace is described separately. The denominator itself
/// vanishes only at m = (n−2)a, which m² ≥ n²a² already rules out for a ≠ 0.
pub fn eigenspinor_coefficient(
    n: u32,
    a: &Rational,
    m: &ExactEigenvalue,
) -> Result<ExactEigenvalue, SpectralError> {
    if m == &ExactEigenvalue::from_rational(rat_int(-(n as i64)) * a) && !a.is_zero() {
        return Err(SpectralError::KillingBranch);
    }
    let den = m.add_rational(&(a * rat_int(2 - n as i64)));
    if den.is_zero() {
        return Err(SpectralError::DegenerateBranch);
    }
    den.inverse()
}

/// Eigenvalue (n + 2)a of the spinor built from a Killing 1-form that
/// preserves the Killing spinor.
pub fn killing_form_eigenvalue(n: u32, a: &Rational) -> Rational {
    rat_int(n as i64 + 2) * a
}

pub fn killing_form_eigenvalue_squared(n: u32, a: &Rational) -> Rational {
    let m = killing_form_eigenvalue(n, a);
    &m * &m
}

/// Laplace eigenvalue c(c − (2n − 6)a) of the coclosed 1-form attached to
/// the transfer factor c.
pub fn laplace_from_transfer_factor(n: u32, a: &Rational, c: &Rational) -> Rational {
    c * (c - rat_int(2 * n as i64 - 6) * a)
}

/// The two analytic floors for Laplace eigenvalues on an Einstein space
/// with a Killing spinor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Floors {
    /// Λ₁ ≥ 8(n−1)a² for coclosed 1-form eigenvalues.
    pub gallot_meyer: Rational,
    /// λ⁰₁ > 4a²n on functions (strict unless the manifold is the sphere).
    pub lichnerowicz_obata: Rational,
}

pub fn floors(n: u32, a: &Rational) -> Floors {
    let a2 = a * a;
    Floors {
        gallot_meyer: rat_int(8 * (n as i64 - 1)) * &a2,
        lichnerowicz_obata: rat_int(4 * n as i64) * &a2,
    }
}

/// Upper bound (√(λ⁰₁ + a²(1−n)²) − |a|)² for μ₂(D²); any eigenvalue of D²
/// strictly between μ₁(D²) and this bound has ⟨ψ, ψ*⟩ ≡ 0, i.e. comes from
/// a pure 1-form spinor.
pub fn function_upper_bound(
    n: u32,
    a: &Rational,
    lambda0_1: &Rational,
) -> Result<ExactEigenvalue, SpectralError> {
    if !lambda0_1.is_positive() {
        return Err(SpectralError::NonPositiveEigenvalue(fmt_rat(lambda0_1)));
    }
    let shift = rat_int(1 - n as i64);
    let root = ExactEigenvalue::sqrt(lambda0_1 + a * a * &shift * &shift)?;
    Ok(root.add_rational(&-a.abs()).square())
}

/// Position of a D²-eigenvalue relative to μ₁(D²) and the function upper
/// bound of [`function_upper_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallEigenvalueClass {
    /// μ = μ₁(D²): the Killing eigenvalue itself.
    AtMu1,
    /// μ₁(D²) < μ < bound: the eigenspinor has ⟨ψ, ψ*⟩ ≡ 0, i.e. it is a
    /// pure 1-form spinor (f ≡ 0).
    PureFormSpinor,
    /// μ ≥ bound: no conclusion from the function bound.
    AtOrBeyondBound,
    /// μ < μ₁(D²): impossible for a genuine eigenvalue of D².
    BelowMu1,
}

/// Classifies a D²-eigenvalue against the window (μ₁(D²), theorem bound):
/// everything strictly inside comes from a spinor orthogonal to ψ with
/// vanishing function part.
pub fn classify_against_function_bound(
    n: u32,
    a: &Rational,
    lambda0_1: &Rational,
    mu: &ExactEigenvalue,
) -> Result<SmallEigenvalueClass, SpectralError> {
    let bound = function_upper_bound(n, a, lambda0_1)?;
    let mu1 = ExactEigenvalue::from_rational(mu1_d2(n, a));
    Ok(match mu.cmp_exact(&mu1) {
        Ordering::Less => SmallEigenvalueClass::BelowMu1,
        Ordering::Equal => SmallEigenvalueClass::AtMu1,
        Ordering::Greater => {
            if mu.cmp_exact(&bound) == Ordering::Less {
                SmallEigenvalueClass::PureFormSpinor
            } else {
                SmallEigenvalueClass::AtOrBeyondBound
            }
        }
    })
}

/// Lower bound √(Λ₁ + a²(n−3)²) − |a| ≤ |m| for 1-form eigenspinors.
/// Rejects Λ₁ below the Gallot–Meyer floor.
pub fn form_spinor_lower_bound(
    n: u32,
    a: &Rational,
    big_lambda1: &Rational,
) -> Result<ExactEigenvalue, SpectralError> {
    let floor = floors(n, a).gallot_meyer;
    if big_lambda1 < &floor {
        return Err(SpectralError::FloorViolation {
            name: "Gallot-Meyer",
            requirement: alloc::format!(">= {}", fmt_rat(&floor)),
            got: fmt_rat(big_lambda1),
        });
    }
    let shift = rat_int(n as i64 - 3);
    let root = ExactEigenvalue::sqrt(big_lambda1 + a * a * &shift * &shift)?;
    Ok(root.add_rational(&-a.abs()))
}

/// Intermediate step of the form bound: √(Λ₁ + a²(n−3)²) − (n−3)|a| ≤ |c|.
pub fn form_bound_c_chain(
    n: u32,
    a: &Rational,
    big_lambda1: &Rational,
) -> Result<ExactEigenvalue, SpectralError> {
    let shift = rat_int(n as i64 - 3);
    let root = ExactEigenvalue::sqrt(big_lambda1 + a * a * &shift * &shift)?;
    Ok(root.add_rational(&-(&shift * &a.abs())))
}

/// A named bound with its direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedBound {
    pub name: String,
    pub value: ExactEigenvalue,
    pub kind: BoundKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Upper,
    Lower,
    Equality,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Upper => "upper",
            BoundKind::Lower => "lower",
            BoundKind::Equality => "equality",
        }
    }
}

/// μ₂(D²) together with the slot that achieved it and validated side
/// conditions.
#[derive(Clone, Debug)]
pub struct Mu2Result {
    pub value: ExactEigenvalue,
    pub kind: BoundKind,
    /// Name of the slot achieving the minimum.
    pub provenance: String,
    pub side_conditions: Vec<SideCondition>,
}

#[derive(Clone, Debug)]
pub struct SideCondition {
    pub name: String,
    pub satisfied: bool,
}

/// The assembled Dirac spectrum and bound data for one input.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub dirac_values: Vec<(ExactEigenvalue, SourceTag)>,
    pub mu1_d2: Rational,
    pub mu2_d2: Option<Mu2Result>,
    pub bounds: Vec<NamedBound>,
    /// The spectrum list is certified complete for |m| up to this value;
    /// larger eigenvalues may be missing because the input spectra are
    /// finite prefixes.
    pub completeness_horizon: Option<ExactEigenvalue>,
    pub notes: Vec<String>,
}

fn sqrt16a2(a: &Rational, lam: &Rational) -> Result<ExactEigenvalue, SpectralError> {
    ExactEigenvalue::sqrt(rat_int(16) * a * a + lam)
}

fn sqrt36a2(a: &Rational, lam: &Rational) -> Result<ExactEigenvalue, SpectralError> {
    ExactEigenvalue::sqrt(rat_int(36) * a * a + lam)
}

/// The full Dirac spectrum of a 7-manifold with a Killing spinor, from its
/// Laplace data: the Killing value −7a plus the three transfer families
/// −a ± √(36a² + λ⁰ᵢ), a − √(16a² + λ¹ᵢ,₊), a + √(16a² + λ¹ᵢ,₋),
/// sorted by |m| with exact comparisons.
pub fn dirac_spectrum_n7(input: &SpectralInput) -> Result<SpectrumReport, SpectralError> {
    if input.n != 7 {
        return Err(SpectralError::WrongDimension {
            expected: 7,
            got: input.n,
        });
    }
    input.validate()?;
    let a = &input.a;
    let mut values: Vec<(ExactEigenvalue, SourceTag)> = Vec::new();
    values.push((
        ExactEigenvalue::from_rational(rat_int(-7) * a),
        SourceTag::Killing,
    ));
    for (i, lam) in input.lambda0.iter().enumerate() {
        let (m_plus, m_minus) = dirac_from_function(7, a, lam)?;
        values.push((m_plus, SourceTag::Function(i + 1)));
        values.push((m_minus, SourceTag::Function(i + 1)));
    }
    for (i, lam) in input.lambda1_plus.iter().enumerate() {
        if !lam.is_positive() {
            return Err(SpectralError::NonPositiveEigenvalue(fmt_rat(lam)));
        }
        let m = sqrt16a2(a, lam)?.neg().add_rational(a);
        values.push((m, SourceTag::FormPlus(i + 1)));
    }
    for (i, lam) in input.lambda1_minus.iter().enumerate() {
        if !lam.is_positive() {
            return Err(SpectralError::NonPositiveEigenvalue(fmt_rat(lam)));
        }
        let m = sqrt16a2(a, lam)?.add_rational(a);
        values.push((m, SourceTag::FormMinus(i + 1)));
    }
    values.sort_by(|(x, _), (y, _)| x.abs().cmp_exact(&y.abs()).then(x.cmp_exact(y)));

    // Completeness horizon: each family is exhausted up to the |m| its last
    // provided eigenvalue generates; the spectrum below the smallest such
    // cutoff is complete.
    let zero = Rational::zero();
    let f_cut = {
        let lam = input.lambda0.last().unwrap_or(&zero);
        // the smaller |m| of the two roots is √(36a²+λ) − |a|
        sqrt36a2(a, lam)?.add_rational(&-a.abs())
    };
    let p_cut = {
        let lam = input.lambda1_plus.last().unwrap_or(&zero);
        sqrt16a2(a, lam)?.add_rational(&-a.abs())
    };
    let m_cut = {
        let lam = input.lambda1_minus.last().unwrap_or(&zero);
        sqrt16a2(a, lam)?.add_rational(&-a.abs())
    };
    let horizon = [f_cut, p_cut, m_cut].into_iter().min().unwrap();

    let mu2 = mu2_n7(input).ok();
    let mut bounds = vec![NamedBound {
        name: "mu1_D2".into(),
        value: ExactEigenvalue::from_rational(mu1_d2(7, a)),
        kind: BoundKind::Equality,
    }];
    if let Some(l0) = input.lambda0.first() {
        bounds.push(NamedBound {
            name: "mu2_D2_function_upper".into(),
            value: function_upper_bound(7, a, l0)?,
            kind: BoundKind::Upper,
        });
    }
    if let Some(l1) = &input.big_lambda1 {
        bounds.push(NamedBound {
            name: "form_eigenvalue_lower_abs_m".into(),
            value: form_spinor_lower_bound(7, a, l1)?,
            kind: BoundKind::Lower,
        });
    }
    Ok(SpectrumReport {
        dirac_values: values,
        mu1_d2: mu1_d2(7, a),
        mu2_d2: mu2,
        bounds,
        completeness_horizon: Some(horizon),
        notes: Vec::new(),
    })
}

fn nth(list: &[Rational], idx: usize, what: &'static str) -> Result<Rational, SpectralError> {
    list.get(idx)
        .cloned()
        .ok_or(SpectralError::MissingInput(what))
}

fn require_pinned(
    list: &[Rational],
    expected: &Rational,
    name: &'static str,
) -> Result<(), SpectralError> {
    if let Some(first) = list.first() {
        if first != expected {
            return Err(SpectralError::FloorViolation {
                name,
                requirement: alloc::format!("= {}", fmt_rat(expected)),
                got: fmt_rat(first),
            });
        }
    }
    Ok(())
}

fn require_strict_floor(
    value: &Rational,
    floor: &Rational,
    name: &'static str,
) -> Result<(), SpectralError> {
    if value <= floor {
        return Err(SpectralError::FloorViolation {
            name,
            requirement: alloc::format!("> {}", fmt_rat(floor)),
            got: fmt_rat(value),
        });
    }
    Ok(())
}

fn min_slot(slots: Vec<(String, ExactEigenvalue)>) -> (String, ExactEigenvalue) {
    slots
        .into_iter()
        .min_by(|(_, x), (_, y)| x.cmp_exact(y))
        .expect("at least one slot")
}

/// μ₂(D²) for dimension 7, dispatching on the geometry class. Returns the
/// value, the slot achieving the minimum, and the validated side
/// conditions of the class.
pub fn mu2_n7(input: &SpectralInput) -> Result<Mu2Result, SpectralError> {
    if input.n != 7 {
        return Err(SpectralError::WrongDimension {
            expected: 7,
            got: input.n,
        });
    }
    input.validate()?;
    let a = &input.a;
    let a2 = a * a;
    let fl = floors(7, a);
    let mut side = Vec::new();

    let function_slot = |l0: &Rational| -> Result<ExactEigenvalue, SpectralError> {
        Ok(sqrt36a2(a, l0)?.add_rational(&-a.clone()).square())
    };
    let plus_slot = |l: &Rational| -> Result<ExactEigenvalue, SpectralError> {
        Ok(sqrt16a2(a, l)?.add_rational(&-a.clone()).square())
    };
    let minus_slot = |l: &Rational| -> Result<ExactEigenvalue, SpectralError> {
        Ok(sqrt16a2(a, l)?.add_rational(a).square())
    };

    match input.class {
        GeometryClass::Parallel => {
            let l0 = nth(&input.lambda0, 0, "lambda0[0]")?;
            let lp = nth(&input.lambda1_plus, 0, "lambda1_plus[0]")?;
            let lm = nth(&input.lambda1_minus, 0, "lambda1_minus[0]")?;
            let (slot, value) = min_slot(vec![
                ("lambda0_1".into(), ExactEigenvalue::from_rational(l0)),
                ("lambda1_1_plus".into(), ExactEigenvalue::from_rational(lp)),
                ("lambda1_1_minus".into(), ExactEigenvalue::from_rational(lm)),
            ]);
            Ok(Mu2Result {
                value,
                kind: BoundKind::Equality,
                provenance: slot,
                side_conditions: side,
            })
        }
        GeometryClass::ProperNearlyParallel => {
            let l0 = nth(&input.lambda0, 0, "lambda0[0]")?;
            let lp = nth(&input.lambda1_plus, 0, "lambda1_plus[0]")?;
            let lm = nth(&input.lambda1_minus, 0, "lambda1_minus[0]")?;
            require_strict_floor(&l0, &fl.lichnerowicz_obata, "lambda0_1 > 28a^2")?;
            require_strict_floor(&lp, &fl.gallot_meyer, "lambda1_1_plus > 48a^2")?;
            if lm < fl.gallot_meyer {
                return Err(SpectralError::FloorViolation {
                    name: "lambda1_1_minus >= 48a^2",
                    requirement: alloc::format!(">= {}", fmt_rat(&fl.gallot_meyer)),
                    got: fmt_rat(&lm),
                });
            }
            // (√(16a² + λ¹₁,₋) + a) ≥ 9a and (−a − √(36a² + λ⁰₁)) ≤ −9a
            let nine_a = ExactEigenvalue::from_rational(rat_int(9) * a);
            let minus_root = sqrt16a2(a, &lm)?.add_rational(a);
            side.push(SideCondition {
                name: "sqrt(16a^2+lambda1_1_minus) + a >= 9a".into(),
                satisfied: minus_root.cmp_exact(&nine_a) != Ordering::Less,
            });
            let low_fn_root = sqrt36a2(a, &l0)?.neg().add_rational(&-a.clone());
            side.push(SideCondition {
                name: "-a - sqrt(36a^2+lambda0_1) <= -9a".into(),
                satisfied: low_fn_root.cmp_exact(&nine_a.neg()) != Ordering::Greater,
            });
            let (slot, value) = min_slot(vec![
                ("function".into(), function_slot(&l0)?),
                ("form_plus".into(), plus_slot(&lp)?),
                ("form_minus".into(), minus_slot(&lm)?),
            ]);
            Ok(Mu2Result {
                value,
                kind: BoundKind::Equality,
                provenance: slot,
                side_conditions: side,
            })
        }
        GeometryClass::ProperWithKillingField => {
            let l0 = nth(&input.lambda0, 0, "lambda0[0]")?;
            let lp = nth(&input.lambda1_plus, 0, "lambda1_plus[0]")?;
            require_strict_floor(&l0, &fl.lichnerowicz_obata, "lambda0_1 > 28a^2")?;
            require_strict_floor(&lp, &fl.gallot_meyer, "lambda1_1_plus > 48a^2")?;
            // the Killing field pins λ¹₁,₋ = 48a², so the minus slot is 81a²
            require_pinned(
                &input.lambda1_minus,
                &fl.gallot_meyer,
                "lambda1_1_minus = 48a^2",
            )?;
            let killing_square = ExactEigenvalue::from_rational(rat_int(81) * &a2);
            let (slot, value) = min_slot(vec![
                ("function".into(), function_slot(&l0)?),
                ("form_plus".into(), plus_slot(&lp)?),
                ("killing_field_81a2".into(), killing_square),
            ]);
            Ok(Mu2Result {
                value,
                kind: BoundKind::Equality,
                provenance: slot,
                side_conditions: side,
            })
        }
        GeometryClass::SasakiEinstein => {
            let l0 = nth(&input.lambda0, 0, "lambda0[0]")?;
            require_strict_floor(&l0, &fl.lichnerowicz_obata, "lambda0_1 > 28a^2")?;
            // two Killing spinors pin λ¹₁,₊ = 48a²; the second entry enters
            require_pinned(
                &input.lambda1_plus,
                &fl.gallot_meyer,
                "lambda1_1_plus = 48a^2",
            )?;
            if input.lambda1_plus.is_empty() {
                return Err(SpectralError::MissingInput("lambda1_plus[0] (= 48a^2)"));
            }
            let lp2 = nth(&input.lambda1_plus, 1, "lambda1_plus[1]")?;
            let lm = nth(&input.lambda1_minus, 0, "lambda1_minus[0]")?;
            let (slot, value) = min_slot(vec![
                ("function".into(), function_slot(&l0)?),
                ("form_plus_2".into(), plus_slot(&lp2)?),
                ("form_minus".into(), minus_slot(&lm)?),
            ]);
            Ok(Mu2Result {
                value,
                kind: BoundKind::Equality,
                provenance: slot,
                side_conditions: side,
            })
        }
        GeometryClass::SasakiEinsteinIsomGe2 | GeometryClass::ThreeSasakian => {
            let twelve = rat_int(12);
            let l0 = nth(&input.lambda0, 0, "lambda0[0]")?;
            require_strict_floor(&l0, &fl.lichnerowicz_obata, "lambda0_1 > 7")?;
            require_pinned(&input.lambda1_plus, &twelve, "lambda1_1_plus = 12")?;
            require_pinned(&input.lambda1_minus, &twelve, "lambda1_1_minus = 12")?;
            if input.lambda1_plus.is_empty() {
                return Err(SpectralError::MissingInput("lambda1_plus[0] (= 12)"));
            }
            let lp2 = nth(&input.lambda1_plus, 1, "lambda1_plus[1]")?;
            let cap = ExactEigenvalue::from_rational(crate::exact::rat(81, 4));
            let (slot, value) = min_slot(vec![
                ("function".into(), function_slot(&l0)?),
                ("form_plus_2".into(), plus_slot(&lp2)?),
                ("killing_field_81_4".into(), cap),
            ]);
            Ok(Mu2Result {
                value,
                kind: BoundKind::Equality,
                provenance: slot,
                side_conditions: side,
            })
        }
        GeometryClass::SasakiEinsteinRegularQuotient => {
            // an invariant first eigenfunction forces λ⁰₁ ≥ 16, so the
            // function slot is at least (√25 − ½)² = 81/4 and drops out
            if let Some(l0) = input.lambda0.first() {
                if l0 < &rat_int(16) {
                    return Err(SpectralError::FloorViolation {
                        name: "lambda0_1 >= 16 (quotient Lichnerowicz)",
                        requirement: ">= 16".into(),
                        got: fmt_rat(l0),
                    });
                }
            }
            let twelve = rat_int(12);
            require_pinned(&input.lambda1_plus, &twelve, "lambda1_1_plus = 12")?;
            if input.lambda1_plus.is_empty() {
                return Err(SpectralError::MissingInput("lambda1_plus[0] (= 12)"));
            }
            let lp2 = nth(&input.lambda1_plus, 1, "lambda1_plus[1]")?;
            let cap = ExactEigenvalue::from_rational(crate::exact::rat(81, 4));
            let (slot, value) = min_slot(vec![
                ("form_plus_2".into(), plus_slot(&lp2)?),
                ("killing_field_81_4".into(), cap),
            ]);
            Ok(Mu2Result {
                value,
                kind: BoundKind::Equality,
                provenance: slot,
                side_conditions: side,
            })
        }
        GeometryClass::Generic => {
            let l0 = nth(&input.lambda0, 0, "lambda0[0]")?;
            let value = function_upper_bound(7, a, &l0)?;
            Ok(Mu2Result {
                value,
                kind: BoundKind::Upper,
                provenance: "function_upper_bound_only".into(),
                side_conditions: side,
            })
        }
    }
}

pub mod presets {
    //! Worked inputs with fully pinned expected outputs.

    use super::*;
    use crate::exact::rat;

    /// The five-dimensional Sasaki–Einstein example: n = 5, a = 1/2,
    /// λ⁰₁ = 33/4. Produces μ₁(D²) = 25/4, the function upper bound 9 and
    /// the Killing-field bound 49/4.
    pub fn sasaki5_bounds() -> (u32, Rational, Rational, Vec<NamedBound>, Vec<String>) {
        let n = 5;
        let a = rat(1, 2);
        let lambda0_1 = rat(33, 4);
        let bounds = vec![
            NamedBound {
                name: "mu1_D2".into(),
                value: ExactEigenvalue::from_rational(mu1_d2(n, &a)),
                kind: BoundKind::Equality,
            },
            NamedBound {
                name: "mu2_D2_function_upper".into(),
                value: function_upper_bound(n, &a, &lambda0_1).expect("positive eigenvalue"),
                kind: BoundKind::Upper,
            },
            NamedBound {
                name: "mu2_D2_killing_field_upper".into(),
                value: ExactEigenvalue::from_rational(killing_form_eigenvalue_squared(n, &a)),
                kind: BoundKind::Upper,
            },
        ];
        let notes = vec![
            String::from(
                "lambda0_1 = 33/4 realized by examples with a 2-dimensional isometry group",
            ),
            String::from("lambda0_1 >= 5 holds for the known special families"),
        ];
        (n, a, lambda0_1, bounds, notes)
    }

    /// Flat-torus input: parallel structure, a = 0, with the first few
    /// integer Laplace eigenvalues on functions and coclosed 1-forms.
    pub fn torus_input() -> SpectralInput {
        let lams: Vec<Rational> = (1..=4).map(rat_int).collect();
        SpectralInput {
            n: 7,
            a: Rational::zero(),
            class: GeometryClass::Parallel,
            lambda0: lams.clone(),
            lambda1_plus: lams.clone(),
            lambda1_minus: lams,
            big_lambda1: Some(rat_int(1)),
        }
    }
}
