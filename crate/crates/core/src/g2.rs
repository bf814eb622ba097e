//! The G2-structure layer: the 3-form ω³ built from the 3-Sasakian coframe,
//! its Hodge dual, the distinguished unit spinor ψ with ω³·ψ = −7ψ, and the
//! transfer operator L(σ) = −*(σ∧*ω³) that carries 2-forms to 1-forms.
//!
//! ω³ is defined by expanding ½(η₁∧dη₁ − η₂∧dη₂ − η₃∧dη₃) with the standard
//! coframe data, never hard-coded; every structural identity (the −7
//! eigenvalue, the dual expansion, the transfer factors) is verified from
//! that expansion.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{Cl7, CliffordError, SpinEndomorphism, Spinor};
use crate::exact::{exact_sqrt, Scalar};
use crate::exterior::{ExteriorError, Multivector};
use crate::linalg::{self, Matrix, ScalarField};

/// Errors from the G2 layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum G2Error {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("no orientation produces the eigenvalue -7 with a 1-dimensional eigenspace")]
    NoKillingEigenvalue,
    #[error("the distinguished spinor cannot be normalized in rational arithmetic")]
    NonUnitSpinor,
    #[error("expected a {expected}-form, found grade {found:?}")]
    GradeViolation { expected: u8, found: Option<u8> },
}

/// The contact coframe data of the 3-Sasakian picture: three contact
/// 1-forms with their exterior derivatives, restricted to a point.
#[derive(Clone, Debug)]
pub struct CoframeData {
    pub eta: [Multivector; 3],
    pub d_eta: [Multivector; 3],
}

impl CoframeData {
    /// The standard table:
    /// dη₁ = −2(e₂₃ + e₄₅ + e₆₇),
    /// dη₂ = +2(e₁₃ − e₄₆ + e₅₇),
    /// dη₃ = −2(e₁₂ + e₄₇ + e₅₆), with ηᵢ = eᵢ.
    pub fn standard() -> Self {
        let e = |idx: &[u8]| Multivector::basis_form(7, idx).expect("valid basis indices");
        let two = Scalar::from_int(2);
        let d_eta1 = (&(&e(&[2, 3]) + &e(&[4, 5])) + &e(&[6, 7])).scale(&-&two);
        let d_eta2 = (&(&e(&[1, 3]) - &e(&[4, 6])) + &e(&[5, 7])).scale(&two);
        let d_eta3 = (&(&e(&[1, 2]) + &e(&[4, 7])) + &e(&[5, 6])).scale(&-&two);
        CoframeData {
            eta: [e(&[1]), e(&[2]), e(&[3])],
            d_eta: [d_eta1, d_eta2, d_eta3],
        }
    }

    /// ½(η₁∧dη₁ − η₂∧dη₂ − η₃∧dη₃).
    pub fn omega3(&self) -> Result<Multivector, ExteriorError> {
        let t1 = self.eta[0].wedge(&self.d_eta[0])?;
        let t2 = self.eta[1].wedge(&self.d_eta[1])?;
        let t3 = self.eta[2].wedge(&self.d_eta[2])?;
        Ok((&(&t1 - &t2) - &t3).scale(&Scalar::from_ratio(1, 2)))
    }

    /// −⅛(dη₁∧dη₁ − dη₂∧dη₂ − dη₃∧dη₃): an expansion of *ω³ that never
    /// touches the Hodge star, used to pin the orientation.
    pub fn star_omega3_from_squares(&self) -> Result<Multivector, ExteriorError> {
        let s1 = self.d_eta[0].wedge(&self.d_eta[0])?;
        let s2 = self.d_eta[1].wedge(&self.d_eta[1])?;
        let s3 = self.d_eta[2].wedge(&self.d_eta[2])?;
        Ok((&(&s1 - &s2) - &s3).scale(&Scalar::from_ratio(-1, 8)))
    }
}

/// Result of the rank/kernel verification of the spinor action map: the map
/// Φ(η, σ, c) = (η + σ + c)·ψ from the 29-dimensional space of
/// (1-form, 2-form, constant) triples onto the 8 spinor components.
#[derive(Clone, Debug)]
pub struct ActionKernelReport {
    pub rank: usize,
    pub kernel_dim: usize,
    pub predicted_kernel_verified: bool,
    pub pass: bool,
    /// A violating triple, flattened to its 29 coefficients, if any.
    pub witness: Option<Vec<Scalar>>,
}

/// The nearly parallel G2 structure at a point: ω³, its dual, the
/// distinguished unit spinor and the orientation that produced the dual.
///
/// Immutable after construction; all methods are pure.
pub struct G2Structure {
    omega3: Multivector,
    star_omega3: Multivector,
    psi: Spinor,
    orientation: i8,
    rho_omega3: SpinEndomorphism,
}

impl G2Structure {
    /// Builds the standard structure from the coframe table and verifies
    /// ρ(ω³)ψ = −7ψ on a 1-dimensional eigenspace. If the default
    /// orientation failed to produce the eigenvalue, the Hodge sign would
    /// be flipped and the build retried; failing both ways indicates a
    /// representation bug and is unrecoverable.
    pub fn build_standard(cl: &Cl7) -> Result<Self, G2Error> {
        let coframe = CoframeData::standard();
        let omega3 = coframe.omega3()?;
        let rho = cl.action(&omega3)?;
        let minus7 = rho.eigenspace(&Scalar::from_int(-7));
        if minus7.len() != 1 {
            return Err(G2Error::NoKillingEigenvalue);
        }
        let psi = normalize_unit(&minus7[0])?;
        for orientation in [1i8, -1] {
            let star_omega3 = omega3.hodge_oriented(orientation);
            let candidate = G2Structure {
                omega3: omega3.clone(),
                star_omega3,
                psi: psi.clone(),
                orientation,
                rho_omega3: rho.clone(),
            };
            // The orientation is pinned by the coframe expansion of the
            // dual; the spinor eigenvalue is orientation-free.
            if candidate.star_omega3 == coframe.star_omega3_from_squares()? {
                return Ok(candidate);
            }
        }
        Err(G2Error::NoKillingEigenvalue)
    }

    pub fn omega3(&self) -> &Multivector {
        &self.omega3
    }

    pub fn star_omega3(&self) -> &Multivector {
        &self.star_omega3
    }

    /// The distinguished unit spinor with ρ(ω³)ψ = −7ψ, normalized so its
    /// first nonzero component is positive.
    pub fn psi(&self) -> &Spinor {
        &self.psi
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn rho_omega3(&self) -> &SpinEndomorphism {
        &self.rho_omega3
    }

    /// The transfer operator L(σ) = −*(σ∧*ω³) carrying 2-forms to 1-forms.
    pub fn transfer(&self, sigma: &Multivector) -> Result<Multivector, G2Error> {
        if sigma.homogeneous_grade() != Some(2) && !sigma.is_zero() {
            return Err(G2Error::GradeViolation {
                expected: 2,
                found: sigma.homogeneous_grade(),
            });
        }
        let wedge = sigma.wedge(&self.star_omega3)?;
        Ok(-&wedge.hodge_oriented(self.orientation))
    }

    /// The 7×7 matrix of η ↦ L(x∧η) on 1-forms, for a 1-form x: the
    /// G2 cross product with x. Skew, kills x, and squares to −|x|² on x⊥.
    pub fn cross_operator(&self, x: &Multivector) -> Result<Matrix<Scalar>, G2Error> {
        if x.homogeneous_grade() != Some(1) && !x.is_zero() {
            return Err(G2Error::GradeViolation {
                expected: 1,
                found: x.homogeneous_grade(),
            });
        }
        let mut columns = Vec::with_capacity(7);
        for j in 1..=7u8 {
            let ej = Multivector::basis_vector(7, j)?;
            let image = self.transfer(&x.wedge(&ej)?)?;
            columns.push((1..=7u8).map(|i| image.coeff_on(&[i])).collect::<Vec<_>>());
        }
        Ok(Matrix::from_columns(columns))
    }

    /// Verifies, by exact elimination, that Φ(η, σ, c) = (η + σ + c)·ψ has
    /// rank exactly 8 and kernel exactly {(L(σ), σ, 0)} of dimension 21.
    ///
    /// Column order of the 29-dimensional domain: e₁..e₇, the 21 basis
    /// 2-forms in mask order, then the constant.
    pub fn verify_action_kernel(&self, cl: &Cl7) -> Result<ActionKernelReport, G2Error> {
        let phi = self.action_matrix(cl)?;
        let rank = linalg::rank(&ScalarField, &phi);
        let kernel = linalg::kernel_basis(&ScalarField, &phi);
        let mut predicted_ok = true;
        let mut witness = None;
        // every (L(σ_J), σ_J, 0) must be annihilated by Φ
        for (pos, mask) in two_form_masks().into_iter().enumerate() {
            let sigma = basis_from_mask(mask);
            let eta = self.transfer(&sigma)?;
            let mut vec29 = vec![Scalar::zero(); 29];
            for i in 1..=7u8 {
                vec29[(i - 1) as usize] = eta.coeff_on(&[i]);
            }
            vec29[7 + pos] = Scalar::one();
            let image = linalg::apply(&ScalarField, &phi, &vec29);
            if !image.iter().all(Scalar::is_zero) {
                predicted_ok = false;
                witness = Some(vec29);
                break;
            }
        }
        let pass = rank == 8 && kernel.len() == 21 && predicted_ok;
        Ok(ActionKernelReport {
            rank,
            kernel_dim: kernel.len(),
            predicted_kernel_verified: predicted_ok,
            pass,
            witness,
        })
    }

    /// One random-style instance of the kernel description: for any 2-form σ,
    /// (L(σ) + σ)·ψ = 0.
    pub fn transfer_annihilates_psi(&self, cl: &Cl7, sigma: &Multivector) -> Result<bool, G2Error> {
        let eta = self.transfer(sigma)?;
        let total = &eta + sigma;
        let rho = cl.action(&total)?;
        Ok(rho.apply(&self.psi).is_zero())
    }

    /// The 8×29 matrix of Φ in the basis described at
    /// [`Self::verify_action_kernel`].
    pub fn action_matrix(&self, cl: &Cl7) -> Result<Matrix<Scalar>, G2Error> {
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(29);
        for i in 1..=7u8 {
            let form = Multivector::basis_vector(7, i)?;
            columns.push(cl.action(&form)?.apply(&self.psi).components().to_vec());
        }
        for mask in two_form_masks() {
            columns.push(
                cl.action(&basis_from_mask(mask))?
                    .apply(&self.psi)
                    .components()
                    .to_vec(),
            );
        }
        columns.push(self.psi.components().to_vec());
        Ok(Matrix::from_columns(columns))
    }
}

/// Masks of the 21 basis 2-forms in increasing mask order.
pub fn two_form_masks() -> Vec<u8> {
    (0u8..128).filter(|m| m.count_ones() == 2).collect()
}

fn basis_from_mask(mask: u8) -> Multivector {
    let indices: Vec<u8> = (0..7)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| b + 1)
        .collect();
    Multivector::basis_form(7, &indices).expect("valid mask")
}

/// Scales a kernel generator to unit norm with positive leading component.
fn normalize_unit(v: &Spinor) -> Result<Spinor, G2Error> {
    let lead = v
        .components()
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(G2Error::NonUnitSpinor)?
        .clone();
    let scaled = v.scale(&lead.inverse());
    let norm = scaled.norm_sq();
    let norm_rat = norm.as_rational().ok_or(G2Error::NonUnitSpinor)?;
    let root = exact_sqrt(norm_rat).ok_or(G2Error::NonUnitSpinor)?;
    Ok(scaled.scale(&Scalar::from_rational(root).inverse()))
}

/// Human-readable labels of the nonzero ω³ coefficients, for reports.
pub fn coefficient_table(form: &Multivector) -> Vec<(String, Scalar)> {
    form.terms()
        .map(|(mask, c)| {
            let mut label = String::from("e");
            for b in 0..8 {
                if mask & (1 << b) != 0 {
                    label.push(char::from(b'1' + b));
                }
            }
            (label, c.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn setup() -> (Cl7, G2Structure) {
        let cl = Cl7::new();
        let g2 = G2Structure::build_standard(&cl).unwrap();
        (cl, g2)
    }

    fn e(idx: &[u8]) -> Multivector {
        Multivector::basis_form(7, idx).unwrap()
    }

    #[test]
    fn omega3_expansion_matches_reference() {
        // hand expansion of ½(η₁∧dη₁ − η₂∧dη₂ − η₃∧dη₃):
        //   e₁₂₃ − e₁₄₅ − e₁₆₇ + e₂₄₆ − e₂₅₇ + e₃₄₇ + e₃₅₆
        let (_, g2) = setup();
        let reference = &(&(&(&(&(&e(&[1, 2, 3]) - &e(&[1, 4, 5])) - &e(&[1, 6, 7]))
            + &e(&[2, 4, 6]))
            - &e(&[2, 5, 7]))
            + &e(&[3, 4, 7]))
            + &e(&[3, 5, 6]);
        assert_eq!(g2.omega3(), &reference);
        assert_eq!(g2.omega3().coeff_on(&[1, 2, 3]), Scalar::one());
        assert_eq!(g2.omega3().num_terms(), 7);
    }

    #[test]
    fn omega3_norm_is_seven() {
        let (_, g2) = setup();
        assert_eq!(g2.omega3().norm_sq(), Scalar::from_int(7));
        // all seven coefficients are ±1
        for (_, c) in g2.omega3().terms() {
            assert_eq!(&(c * c), &Scalar::one());
        }
    }

    #[test]
    fn star_omega3_agrees_with_square_expansion() {
        let (_, g2) = setup();
        let coframe = CoframeData::standard();
        assert_eq!(
            g2.star_omega3(),
            &coframe.star_omega3_from_squares().unwrap()
        );
        // and with the plain Hodge dual under the chosen orientation
        assert_eq!(
            g2.star_omega3(),
            &g2.omega3().hodge_oriented(g2.orientation())
        );
        assert_eq!(g2.orientation(), 1);
    }

    #[test]
    fn psi_is_killing_eigenvector() {
        let (_, g2) = setup();
        assert_eq!(g2.psi().norm_sq(), Scalar::one());
        let image = g2.rho_omega3().apply(g2.psi());
        let expected = g2.psi().scale(&Scalar::from_int(-7));
        assert_eq!(image, expected);
        // first nonzero component positive
        let lead = g2.psi().components().iter().find(|c| !c.is_zero()).unwrap();
        assert!(lead.signum() > 0);
    }

    #[test]
    fn rho_omega3_spectrum() {
        let (_, g2) = setup();
        let rho = g2.rho_omega3();
        assert_eq!(rho.eigenspace(&Scalar::from_int(-7)).len(), 1);
        assert_eq!(rho.eigenspace(&Scalar::from_int(1)).len(), 7);
        assert!(rho.trace().is_zero());
    }

    #[test]
    fn transfer_on_coframe_derivatives() {
        // L(dη₁) = −2η₁, L(dη₂) = 6η₂, L(dη₃) = 6η₃
        let (_, g2) = setup();
        let coframe = CoframeData::standard();
        let factors = [
            Scalar::from_int(-2),
            Scalar::from_int(6),
            Scalar::from_int(6),
        ];
        for i in 0..3 {
            let image = g2.transfer(&coframe.d_eta[i]).unwrap();
            assert_eq!(
                image,
                coframe.eta[i].scale(&factors[i]),
                "relation {}",
                i + 1
            );
        }
        // L(0) = 0 and grade violations are rejected
        assert!(g2.transfer(&Multivector::zero(7)).unwrap().is_zero());
        assert!(g2.transfer(&e(&[1])).is_err());
    }

    #[test]
    fn transfer_matches_kernel_instances() {
        let (cl, g2) = setup();
        let coframe = CoframeData::standard();
        for d in &coframe.d_eta {
            assert!(g2.transfer_annihilates_psi(&cl, d).unwrap());
        }
        let mixed = &e(&[1, 2]).scale(&Scalar::from_rational(rat(3, 5)))
            - &e(&[4, 7]).scale(&Scalar::from_int(2));
        assert!(g2.transfer_annihilates_psi(&cl, &mixed).unwrap());
    }

    #[test]
    fn action_kernel_rank_and_dimension() {
        let (cl, g2) = setup();
        let report = g2.verify_action_kernel(&cl).unwrap();
        assert_eq!(report.rank, 8);
        assert_eq!(report.kernel_dim, 21);
        assert!(report.predicted_kernel_verified);
        assert!(report.pass);
        assert!(report.witness.is_none());
    }

    #[test]
    fn constant_component_must_vanish() {
        // Φ(0, 0, 1) = ψ ≠ 0
        let (cl, g2) = setup();
        let phi = g2.action_matrix(&cl).unwrap();
        let mut v = vec![Scalar::zero(); 29];
        v[28] = Scalar::one();
        let image = linalg::apply(&ScalarField, &phi, &v);
        assert!(!image.iter().all(Scalar::is_zero));
    }

    #[test]
    fn contraction_of_omega3_matches_coefficient_table() {
        // ⟨e₁⌟ω³, e_j∧e_k⟩ = ⟨ω³, e₁∧e_j∧e_k⟩ for all j < k
        let (_, g2) = setup();
        let e1 = e(&[1]);
        let contracted = crate::exterior::contract(&e1, g2.omega3()).unwrap();
        assert_eq!(contracted.homogeneous_grade(), Some(2));
        for j in 1..=7u8 {
            for k in (j + 1)..=7 {
                let two_form = e(&[j, k]);
                let lhs = contracted.inner(&two_form).unwrap();
                let triple = e1.wedge(&two_form).unwrap();
                let rhs = g2.omega3().inner(&triple).unwrap();
                assert_eq!(lhs, rhs, "({j},{k})");
            }
        }
        // from the table: e₁⌟ω³ = e₂₃ − e₄₅ − e₆₇
        let expected = &(&e(&[2, 3]) - &e(&[4, 5])) - &e(&[6, 7]);
        assert_eq!(contracted, expected);
    }

    #[test]
    fn cross_operator_identities() {
        let (_, g2) = setup();
        let x = &e(&[1]).scale(&Scalar::from_int(2)) - &e(&[3]);
        let lam = g2.cross_operator(&x).unwrap();
        let f = ScalarField;
        // skew-symmetry
        for i in 0..7 {
            for j in 0..7 {
                assert!((lam.at(i, j) + lam.at(j, i)).is_zero());
            }
        }
        // Λ_x(x) = 0
        let x_comps: Vec<Scalar> = (1..=7).map(|i| x.coeff_on(&[i])).collect();
        assert!(linalg::apply(&f, &lam, &x_comps)
            .iter()
            .all(Scalar::is_zero));
        // Λ_x² = x·xᵀ − |x|²·Id as an exact matrix identity
        let sq = linalg::mat_mul(&f, &lam, &lam);
        let norm = x.norm_sq();
        for i in 0..7 {
            for j in 0..7 {
                let mut expected = &x_comps[i] * &x_comps[j];
                if i == j {
                    expected = &expected - &norm;
                }
                assert_eq!(sq.at(i, j), &expected, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn cross_operator_on_basis_vector() {
        // Λ_{e₁}² = −Id on span(e₂..e₇) and Λ_{e₁}(e₁) = 0
        let (_, g2) = setup();
        let lam = g2.cross_operator(&e(&[1])).unwrap();
        let sq = linalg::mat_mul(&ScalarField, &lam, &lam);
        for i in 0..7 {
            for j in 0..7 {
                let expected = if i == j && i > 0 {
                    Scalar::from_int(-1)
                } else {
                    Scalar::zero()
                };
                assert_eq!(sq.at(i, j), &expected);
            }
        }
        // trace zero by skewness
        let mut tr = Scalar::zero();
        for i in 0..7 {
            tr = &tr + lam.at(i, i);
        }
        assert!(tr.is_zero());
    }

    #[test]
    fn cross_pairing_matches_omega3_evaluation() {
        // ⟨Λ_x(u), v⟩ = −⟨ω³, x∧u∧v⟩: one global sign across the whole
        // basis, e.g. Λ_{e₁}(e₂) = −e₃ while ⟨ω³, e₁∧e₂∧e₃⟩ = +1
        let (_, g2) = setup();
        let mut global_sign: Option<i32> = None;
        for xi in 1..=7u8 {
            let lam = g2.cross_operator(&e(&[xi])).unwrap();
            for u in 1..=7u8 {
                for v in 1..=7u8 {
                    let pairing = lam.at((v - 1) as usize, (u - 1) as usize).clone();
                    let triple = e(&[xi]).wedge(&e(&[u])).unwrap().wedge(&e(&[v])).unwrap();
                    let eval = g2.omega3().inner(&triple).unwrap();
                    if eval.is_zero() {
                        assert!(pairing.is_zero());
                        continue;
                    }
                    let ratio = &pairing / &eval;
                    let sign = ratio.signum();
                    assert_eq!(&ratio * &ratio, Scalar::one(), "ratio must be ±1");
                    match global_sign {
                        None => global_sign = Some(sign),
                        Some(s) => assert_eq!(s, sign, "sign flipped at ({xi},{u},{v})"),
                    }
                }
            }
        }
        assert_eq!(global_sign, Some(-1));
    }
}
