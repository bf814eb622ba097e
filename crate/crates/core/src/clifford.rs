//! The real Clifford algebra Cl(7) on the 8-dimensional real spin
//! representation, with the Clifford action of arbitrary forms on spinors.
//!
//! Conventions. Generators satisfy γᵢγⱼ + γⱼγᵢ = −2δᵢⱼ·Id (the Riemannian
//! e·e = −1 convention; it is the one under which the frame contraction
//! identity Σᵢ eᵢ·η·eᵢ = (n−2)η holds for 1-forms). The γᵢ are realized as
//! left multiplication by the i-th imaginary octonion unit on R⁸, so all
//! entries are in {−1, 0, +1}. The Clifford relations are *verified* when a
//! [`Cl7`] is constructed, never assumed.

use alloc::vec::Vec;
use core::fmt;

use crate::exact::Scalar;
use crate::exterior::Multivector;
use crate::linalg::{self, Matrix, ScalarField};

/// Errors from the Clifford layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("frame index {0} out of range 1..=7")]
    IndexOutOfRange(usize),
    #[error("Clifford relation failed for generator pair ({i}, {j})")]
    RelationFailure { i: usize, j: usize },
    #[error("generator {0} is not skew-symmetric")]
    NotSkew(usize),
    #[error("multivector has ambient dimension {0}, the spin representation needs 7")]
    DimensionMismatch(u8),
    #[error("Σᵢ γᵢ ρ(u) γᵢ is not a scalar multiple of ρ(u)")]
    NoScalarFactor,
}

/// Cyclic multiplication triples of the imaginary octonion units:
/// (a, b, c) means e_a·e_b = e_c, e_b·e_c = e_a, e_c·e_a = e_b.
///
/// Each unordered pair of distinct units appears in exactly one triple
/// (a Fano-plane orientation), which makes the left-multiplication
/// operators below anticommute.
pub const OCTONION_TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 5, 4],
    [1, 7, 6],
    [2, 4, 6],
    [2, 7, 5],
    [3, 4, 7],
    [3, 5, 6],
];

/// Octonion multiplication table on the basis (1, e₁, …, e₇):
/// `table[i][j] = (k, s)` with eᵢ·eⱼ = s·e_k (index 0 is the real unit).
pub fn octonion_table() -> [[(usize, i8); 8]; 8] {
    let mut t = [[(0usize, 0i8); 8]; 8];
    for i in 0..8 {
        t[0][i] = (i, 1);
        t[i][0] = (i, 1);
    }
    for i in 1..8 {
        t[i][i] = (0, -1);
    }
    for [a, b, c] in OCTONION_TRIPLES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            t[x][y] = (z, 1);
            t[y][x] = (z, -1);
        }
    }
    t
}

/// Element of the 8-dimensional real spin representation.
#[derive(Clone, PartialEq, Eq)]
pub struct Spinor {
    c: [Scalar; 8],
}

impl Spinor {
    pub fn zero() -> Self {
        Spinor {
            c: core::array::from_fn(|_| Scalar::zero()),
        }
    }

    pub fn basis(i: usize) -> Self {
        assert!(i < 8, "spinor basis index out of range");
        let mut s = Self::zero();
        s.c[i] = Scalar::one();
        s
    }

    pub fn from_components(c: [Scalar; 8]) -> Self {
        Spinor { c }
    }

    pub fn from_slice(v: &[Scalar]) -> Self {
        assert_eq!(v.len(), 8, "spinor needs 8 components");
        Spinor {
            c: core::array::from_fn(|i| v[i].clone()),
        }
    }

    pub fn components(&self) -> &[Scalar; 8] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn inner(&self, rhs: &Self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..8 {
            acc = &acc + &(&self.c[i] * &rhs.c[i]);
        }
        acc
    }

    /// |ψ|² = Σ components²; zero only for the zero spinor.
    pub fn norm_sq(&self) -> Scalar {
        self.inner(self)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Spinor {
            c: core::array::from_fn(|i| &self.c[i] * s),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Spinor {
            c: core::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Spinor {
            c: core::array::from_fn(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl fmt::Debug for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Endomorphism of the spin representation: an 8×8 exact matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpinEndomorphism {
    m: Matrix<Scalar>,
}

impl SpinEndomorphism {
    pub fn zero() -> Self {
        SpinEndomorphism {
            m: Matrix::from_fn(8, 8, |_, _| Scalar::zero()),
        }
    }

    pub fn identity() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        SpinEndomorphism {
            m: Matrix::from_fn(8, 8, |i, j| if i == j { s.clone() } else { Scalar::zero() }),
        }
    }

    pub fn from_fn(f: impl FnMut(usize, usize) -> Scalar) -> Self {
        SpinEndomorphism {
            m: Matrix::from_fn(8, 8, f),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        self.m.at(i, j)
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.m
    }

    /// Composition self ∘ rhs.
    pub fn compose(&self, rhs: &Self) -> Self {
        SpinEndomorphism {
            m: linalg::mat_mul(&ScalarField, &self.m, &rhs.m),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.entry(i, j) + rhs.entry(i, j))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| self.entry(i, j) - rhs.entry(i, j))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_fn(|i, j| self.entry(i, j) * s)
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        Spinor::from_slice(&linalg::apply(
            &ScalarField,
            &self.m,
            v.components().as_slice(),
        ))
    }

    pub fn transpose(&self) -> Self {
        SpinEndomorphism {
            m: self.m.transpose(),
        }
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..8 {
            acc = &acc + self.entry(i, i);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        (0..8).all(|i| (0..8).all(|j| self.entry(i, j).is_zero()))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..8).all(|i| (0..8).all(|j| (self.entry(i, j) + self.entry(j, i)).is_zero()))
    }

    /// Exact kernel basis of this endomorphism.
    pub fn kernel(&self) -> Vec<Spinor> {
        linalg::kernel_basis(&ScalarField, &self.m)
            .into_iter()
            .map(|v| Spinor::from_slice(&v))
            .collect()
    }

    /// Exact basis of the λ-eigenspace, i.e. kernel of (self − λ·Id).
    pub fn eigenspace(&self, lambda: &Scalar) -> Vec<Spinor> {
        self.sub(&Self::scalar(lambda.clone())).kernel()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&ScalarField, &self.m)
    }
}

/// The verified Clifford algebra context: the seven γ-matrices.
///
/// Immutable once built; every operation on it is pure, so a single
/// instance can be shared freely.
pub struct Cl7 {
    gammas: [SpinEndomorphism; 7],
}

impl Cl7 {
    /// Builds the standard representation from the octonion table and
    /// verifies the full 49-pair relation table plus skew-symmetry.
    pub fn new() -> Self {
        Self::from_matrices(gamma_matrices_from_octonions())
            .expect("octonion-built generators satisfy the Clifford relations")
    }

    /// Wraps caller-provided generator candidates, verifying
    /// γᵢγⱼ + γⱼγᵢ = −2δᵢⱼ·Id for all 49 pairs and skew-symmetry of each γᵢ.
    pub fn from_matrices(gammas: [SpinEndomorphism; 7]) -> Result<Self, CliffordError> {
        if let Some((i, j)) = relation_table_failure(&gammas) {
            return Err(CliffordError::RelationFailure { i, j });
        }
        for (i, g) in gammas.iter().enumerate() {
            if !g.is_skew_symmetric() {
                return Err(CliffordError::NotSkew(i + 1));
            }
        }
        Ok(Cl7 { gammas })
    }

    /// The generator γᵢ for a frame index 1..=7.
    pub fn gamma(&self, i: usize) -> Result<&SpinEndomorphism, CliffordError> {
        if (1..=7).contains(&i) {
            Ok(&self.gammas[i - 1])
        } else {
            Err(CliffordError::IndexOutOfRange(i))
        }
    }

    pub fn gammas(&self) -> &[SpinEndomorphism; 7] {
        &self.gammas
    }

    /// Clifford action ρ(u) of a form: ρ(e_{i₁…i_k}) = γ_{i₁}⋯γ_{i_k} on
    /// strictly increasing tuples, extended linearly.
    pub fn action(&self, u: &Multivector) -> Result<SpinEndomorphism, CliffordError> {
        if u.dim() != 7 {
            return Err(CliffordError::DimensionMismatch(u.dim()));
        }
        let mut out = SpinEndomorphism::zero();
        for (mask, c) in u.terms() {
            let mut prod = SpinEndomorphism::identity();
            // right-to-left so γ_{i₁} is applied last
            for i in (0..7).rev() {
                if mask & (1 << i) != 0 {
                    prod = self.gammas[i].compose(&prod);
                }
            }
            out = out.add(&prod.scale(c));
        }
        Ok(out)
    }

    /// Verifies Σᵢ γᵢ ρ(u) γᵢ = c·ρ(u) for a homogeneous u of grade 1 or 2
    /// and returns the factor c (c = n−2 = 5 on 1-forms, 4−n = −3 on
    /// 2-forms). Fails loudly if no scalar factor exists.
    pub fn frame_contraction_factor(&self, u: &Multivector) -> Result<Scalar, CliffordError> {
        match u.homogeneous_grade() {
            Some(1) | Some(2) => {}
            g => {
                return Err(CliffordError::DimensionMismatch(g.unwrap_or(0)));
            }
        }
        let rho = self.action(u)?;
        let mut sum = SpinEndomorphism::zero();
        for g in &self.gammas {
            sum = sum.add(&g.compose(&rho).compose(g));
        }
        // find the factor from the first nonzero entry of ρ(u)
        let mut factor = None;
        'outer: for i in 0..8 {
            for j in 0..8 {
                if !rho.entry(i, j).is_zero() {
                    factor = Some(sum.entry(i, j) / rho.entry(i, j));
                    break 'outer;
                }
            }
        }
        let c = factor.ok_or(CliffordError::NoScalarFactor)?;
        if sum == rho.scale(&c) {
            Ok(c)
        } else {
            Err(CliffordError::NoScalarFactor)
        }
    }
}

impl Default for Cl7 {
    fn default() -> Self {
        Self::new()
    }
}

/// The γ-matrices as left multiplication by imaginary octonion units.
pub fn gamma_matrices_from_octonions() -> [SpinEndomorphism; 7] {
    let table = octonion_table();
    core::array::from_fn(|idx| {
        let i = idx + 1;
        SpinEndomorphism::from_fn(|r, c| {
            let (k, s) = table[i][c];
            if k == r {
                Scalar::from_int(s as i64)
            } else {
                Scalar::zero()
            }
        })
    })
}

/// First generator pair violating γᵢγⱼ + γⱼγᵢ = −2δᵢⱼ·Id, if any
/// (indices are 1-based).
pub fn relation_table_failure(gammas: &[SpinEndomorphism; 7]) -> Option<(usize, usize)> {
    for i in 0..7 {
        for j in 0..7 {
            let anti = gammas[i]
                .compose(&gammas[j])
                .add(&gammas[j].compose(&gammas[i]));
            let expected = if i == j {
                SpinEndomorphism::scalar(Scalar::from_int(-2))
            } else {
                SpinEndomorphism::zero()
            };
            if anti != expected {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// Exact kernel basis of a general rectangular matrix of scalars.
///
/// rank + nullity = column count, by exact Gaussian elimination.
pub fn exact_kernel(m: &Matrix<Scalar>) -> Vec<Vec<Scalar>> {
    linalg::kernel_basis(&ScalarField, m)
}
