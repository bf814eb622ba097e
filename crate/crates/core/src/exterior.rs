//! Exact exterior algebra of R^n (n ≤ 8) in a fixed orthonormal frame.
//!
//! Basis k-forms are encoded as bitmasks over the frame indices 1..=n; the
//! coefficient map only ever stores nonzero entries, so equality is
//! structural. The orientation is e₁∧…∧e_n positive; [`Multivector::hodge`]
//! follows that convention and `hodge_oriented(-1)` gives the opposite one.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::exact::Scalar;

/// Errors from exterior algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u8, u8),
    #[error("expected a homogeneous element of grade {expected}, found {found:?}")]
    GradeViolation { expected: u8, found: Option<u8> },
    #[error("frame index {0} out of range 1..={1}")]
    IndexOutOfRange(u8, u8),
}

/// Graded element of the exterior algebra with exact coefficients.
///
/// Keys are strictly increasing index tuples encoded as bitmasks; an absent
/// key is a zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector {
    dim: u8,
    terms: BTreeMap<u8, Scalar>,
}

pub(crate) fn mask_grade(mask: u8) -> u8 {
    mask.count_ones() as u8
}

/// Sign picked up when concatenating the increasing tuples of `i` and `j`
/// and re-sorting: (−1)^{#crossings}. Zero overlap is the caller's business.
pub(crate) fn merge_sign(i: u8, j: u8) -> i8 {
    let mut crossings = 0u32;
    let mut jj = j;
    while jj != 0 {
        let bit = jj.trailing_zeros();
        // bits of `i` strictly above `bit` must move past it
        crossings += (i >> (bit + 1)).count_ones();
        jj &= jj - 1;
    }
    if crossings.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Multivector {
    pub fn zero(dim: u8) -> Self {
        assert!((1..=8).contains(&dim), "dimension must be 1..=8");
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: u8, value: Scalar) -> Self {
        let mut m = Self::zero(dim);
        m.add_term(0, value);
        m
    }

    pub fn one(dim: u8) -> Self {
        Self::scalar(dim, Scalar::one())
    }

    /// The basis 1-form e_i (1-based index).
    pub fn basis_vector(dim: u8, i: u8) -> Result<Self, ExteriorError> {
        if i == 0 || i > dim {
            return Err(ExteriorError::IndexOutOfRange(i, dim));
        }
        let mut m = Self::zero(dim);
        m.add_term(1 << (i - 1), Scalar::one());
        Ok(m)
    }

    /// The basis form e_{i₁…i_k}; repeated indices yield zero and
    /// out-of-order indices pick up the sort sign.
    pub fn basis_form(dim: u8, indices: &[u8]) -> Result<Self, ExteriorError> {
        let mut m = Self::one(dim);
        for &i in indices {
            m = m.wedge(&Self::basis_vector(dim, i)?)?;
        }
        Ok(m)
    }

    /// A 1-form from its frame components.
    pub fn one_form(dim: u8, comps: &[Scalar]) -> Self {
        assert_eq!(comps.len(), dim as usize, "component count must equal dim");
        let mut m = Self::zero(dim);
        for (idx, c) in comps.iter().enumerate() {
            m.add_term(1 << idx, c.clone());
        }
        m
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u8) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient on the basis form with the given (1-based) indices.
    pub fn coeff_on(&self, indices: &[u8]) -> Scalar {
        let mut mask = 0u8;
        for &i in indices {
            mask |= 1 << (i - 1);
        }
        self.coeff(mask)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &Scalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, mask: u8, value: Scalar) {
        if value.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(mask) {
            Entry::Vacant(e) => {
                e.insert(value);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Grade-k part; the sum of all graded parts is the element itself.
    pub fn grade_part(&self, k: u8) -> Self {
        let mut m = Self::zero(self.dim);
        for (&mask, c) in &self.terms {
            if mask_grade(mask) == k {
                m.add_term(mask, c.clone());
            }
        }
        m
    }

    /// The grade if the element is homogeneous; `None` for mixed grades.
    pub fn homogeneous_grade(&self) -> Option<u8> {
        let mut grades = self.terms.keys().map(|&m| mask_grade(m));
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut m = Self::zero(self.dim);
        for (&mask, c) in &self.terms {
            m.add_term(mask, c * s);
        }
        m
    }

    /// Exterior product. Bilinear, associative and graded-anticommutative.
    pub fn wedge(&self, rhs: &Self) -> Result<Self, ExteriorError> {
        if self.dim != rhs.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut out = Self::zero(self.dim);
        for (&mi, ci) in &self.terms {
            for (&mj, cj) in &rhs.terms {
                if mi & mj != 0 {
                    continue;
                }
                let sign = merge_sign(mi, mj);
                let prod = ci * cj;
                out.add_term(mi | mj, if sign < 0 { -prod } else { prod });
            }
        }
        Ok(out)
    }

    /// Hodge star for the orientation e₁∧…∧e_n positive.
    ///
    /// *(e_I) = ±e_{I^c} with the sign of the permutation (I, I^c); in the
    /// Euclidean odd-dimensional case ** is the identity on every grade.
    pub fn hodge(&self) -> Self {
        self.hodge_oriented(1)
    }

    /// Hodge star with an explicit orientation sign (+1 or −1).
    pub fn hodge_oriented(&self, orientation: i8) -> Self {
        assert!(
            orientation == 1 || orientation == -1,
            "orientation must be ±1"
        );
        let full: u8 = if self.dim == 8 {
            0xff
        } else {
            (1u8 << self.dim) - 1
        };
        let mut out = Self::zero(self.dim);
        for (&mask, c) in &self.terms {
            let comp = full & !mask;
            let sign = merge_sign(mask, comp) * orientation;
            out.add_term(comp, if sign < 0 { -c } else { c.clone() });
        }
        out
    }

    /// Orthonormal inner product: the basis forms e_I are orthonormal.
    pub fn inner(&self, rhs: &Self) -> Result<Scalar, ExteriorError> {
        if self.dim != rhs.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut acc = Scalar::zero();
        for (&mask, c) in &self.terms {
            if let Some(o) = rhs.terms.get(&mask) {
                acc = &acc + &(c * o);
            }
        }
        Ok(acc)
    }

    /// Squared norm ⟨u, u⟩.
    pub fn norm_sq(&self) -> Scalar {
        self.inner(self).expect("same element")
    }

    /// The volume form e₁∧…∧e_n.
    pub fn volume(dim: u8) -> Self {
        Multivector::one(dim).hodge()
    }
}

/// Interior product x ⌟ u of a 1-form into a multivector: the metric
/// adjoint of wedging with x, an anti-derivation of degree −1.
pub fn contract(x: &Multivector, u: &Multivector) -> Result<Multivector, ExteriorError> {
    if x.dim != u.dim {
        return Err(ExteriorError::DimensionMismatch(x.dim, u.dim));
    }
    if x.homogeneous_grade() != Some(1) {
        return Err(ExteriorError::GradeViolation {
            expected: 1,
            found: x.homogeneous_grade(),
        });
    }
    let mut out = Multivector::zero(u.dim);
    for (&mx, cx) in &x.terms {
        for (&mu, cu) in &u.terms {
            if mu & mx == 0 {
                continue;
            }
            // e_i ⌟ e_J = (−1)^{position of i in J} e_{J \ i}
            let below = (mu & (mx - 1)).count_ones();
            let coeff = cx * cu;
            out.add_term(mu & !mx, if below % 2 == 1 { -coeff } else { coeff });
        }
    }
    Ok(out)
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.dim, rhs.dim, "ambient dimension mismatch");
        let mut out = self.clone();
        for (&mask, c) in &rhs.terms {
            out.add_term(mask, c.clone());
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self + &(-rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        for (&mask, c) in &self.terms {
            out.add_term(mask, -c);
        }
        out
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&mask, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "({c})")?;
            } else {
                let mut label = String::from("e");
                for i in 0..8 {
                    if mask & (1 << i) != 0 {
                        label.push(char::from(b'1' + i));
                    }
                }
                write!(f, "({c}){label}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn e(indices: &[u8]) -> Multivector {
        Multivector::basis_form(7, indices).unwrap()
    }

    #[test]
    fn wedge_basis_cases() {
        // e₁ ∧ e₂ = e₁₂
        assert_eq!(e(&[1]).wedge(&e(&[2])).unwrap(), e(&[1, 2]));
        // e₁ ∧ e₁ = 0
        assert!(e(&[1]).wedge(&e(&[1])).unwrap().is_zero());
        // e₂ ∧ e₁ = −e₁₂
        assert_eq!(e(&[2]).wedge(&e(&[1])).unwrap(), -&e(&[1, 2]));
        // e₁₃ ∧ e₂ = −e₁₂₃
        assert_eq!(e(&[1, 3]).wedge(&e(&[2])).unwrap(), -&e(&[1, 2, 3]));
    }

    #[test]
    fn wedge_dimension_mismatch() {
        let u = Multivector::basis_vector(7, 1).unwrap();
        let v = Multivector::basis_vector(5, 1).unwrap();
        assert_eq!(u.wedge(&v), Err(ExteriorError::DimensionMismatch(7, 5)));
    }

    #[test]
    fn half_eta1_wedge_deta1() {
        // ½ e₁ ∧ (−2)(e₂₃ + e₄₅ + e₆₇) = −(e₁₂₃ + e₁₄₅ + e₁₆₇)
        let d_eta1 = (&(&e(&[2, 3]) + &e(&[4, 5])) + &e(&[6, 7])).scale(&Scalar::from_int(-2));
        let prod = e(&[1])
            .wedge(&d_eta1)
            .unwrap()
            .scale(&Scalar::from_ratio(1, 2));
        let expected = -&(&(&e(&[1, 2, 3]) + &e(&[1, 4, 5])) + &e(&[1, 6, 7]));
        assert_eq!(prod, expected);
    }

    #[test]
    fn hodge_volume_and_involution() {
        assert_eq!(Multivector::one(7).hodge(), e(&[1, 2, 3, 4, 5, 6, 7]));
        // ** = id on every basis form in dimension 7
        for mask in 0u8..128 {
            let mut m = Multivector::zero(7);
            m.add_term(mask, Scalar::one());
            assert_eq!(m.hodge().hodge(), m, "mask {mask:#b}");
        }
    }

    #[test]
    fn hodge_star_signs() {
        assert_eq!(e(&[1, 2, 3]).hodge(), e(&[4, 5, 6, 7]));
        assert_eq!(e(&[2, 4, 6]).hodge(), e(&[1, 3, 5, 7]));
        // opposite orientation flips every sign
        assert_eq!(e(&[1, 2, 3]).hodge_oriented(-1), -&e(&[4, 5, 6, 7]));
    }

    #[test]
    fn hodge_in_dimension_five() {
        let u = Multivector::basis_form(5, &[1, 2]).unwrap();
        assert_eq!(u.hodge(), Multivector::basis_form(5, &[3, 4, 5]).unwrap());
        assert_eq!(u.hodge().hodge(), u);
        assert_eq!(
            Multivector::one(5).hodge(),
            Multivector::basis_form(5, &[1, 2, 3, 4, 5]).unwrap()
        );
    }

    #[test]
    fn contract_basics() {
        assert_eq!(contract(&e(&[1]), &e(&[1, 2])).unwrap(), e(&[2]));
        assert!(contract(&e(&[3]), &e(&[1, 2])).unwrap().is_zero());
        assert_eq!(contract(&e(&[2]), &e(&[1, 2])).unwrap(), -&e(&[1]));
        // grade violation
        assert!(matches!(
            contract(&e(&[1, 2]), &e(&[1, 2, 3])),
            Err(ExteriorError::GradeViolation { .. })
        ));
    }

    #[test]
    fn contract_is_antiderivation() {
        // e₁ ⌟ (u ∧ v) = (e₁⌟u) ∧ v + (−1)^{|u|} u ∧ (e₁⌟v) on homogeneous u
        let x = e(&[1]);
        let u = &e(&[1, 4]) + &e(&[2, 3]).scale(&Scalar::from_ratio(5, 3));
        let v = &e(&[5]) + &e(&[1]).scale(&Scalar::from_int(-2));
        let lhs = contract(&x, &u.wedge(&v).unwrap()).unwrap();
        let rhs = &contract(&x, &u).unwrap().wedge(&v).unwrap()
            + &u.wedge(&contract(&x, &v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inner_orthonormal() {
        assert_eq!(e(&[1, 2]).inner(&e(&[1, 2])).unwrap(), Scalar::one());
        assert_eq!(e(&[1, 2]).inner(&e(&[1, 3])).unwrap(), Scalar::zero());
        let u = e(&[1, 2]).scale(&Scalar::from_rational(rat(3, 2)));
        assert_eq!(u.inner(&u).unwrap(), Scalar::from_ratio(9, 4));
    }

    #[test]
    fn graded_parts_are_lossless() {
        let m = &(&e(&[1]) + &e(&[2, 3]).scale(&Scalar::from_int(4))) + &Multivector::one(7);
        let mut sum = Multivector::zero(7);
        for k in 0..=7 {
            sum = &sum + &m.grade_part(k);
        }
        assert_eq!(sum, m);
        assert_eq!(m.homogeneous_grade(), None);
        assert_eq!(e(&[2, 3]).homogeneous_grade(), Some(2));
    }
}
