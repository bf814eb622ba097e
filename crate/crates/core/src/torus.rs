//! Exact Fourier-mode spectral theory of the flat 7-torus R⁷/(2πZ)⁷ with
//! its parallel G2-structure (Killing number a = 0).
//!
//! On the plane-wave pair (cos k·x, sin k·x) the Dirac operator is the
//! 16×16 matrix [[0, ρ(k)], [−ρ(k), 0]] with ρ(k) = Σ kᵢγᵢ; its spectrum is
//! ±|k| with multiplicity 8 each. The same 16-dimensional space decomposes
//! into function-transfer eigenspinors (multiplicity 2 per sign) and
//! coclosed 1-form eigenspinors (multiplicity 6 per sign), and
//! [`ModeContext::analyze`] certifies the multiset equality mode by mode
//! with exact elimination over Q(√d), d the square-free part of |k|².
//!
//! No floating point appears anywhere in this module.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::clifford::{Cl7, Spinor};
use crate::exact::{rat_int, square_free_split, Rational, Scalar};
use crate::exterior::{contract, Multivector};
use crate::g2::{G2Error, G2Structure};
use crate::linalg::qword::{QCtx, Q2, R128};
use crate::linalg::zsqrt::{ZMat, Z2};
use crate::linalg::{self, FieldContext, Matrix, ScalarField};
use crate::spectral::ExactEigenvalue;

/// Errors from the torus layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorusError {
    #[error("the zero mode carries no plane wave; use the kernel description")]
    ZeroMode,
    #[error(transparent)]
    G2(#[from] G2Error),
    #[error("context data is not integral: {0}")]
    NonIntegerData(String),
    #[error("mode check failed for k = {k:?}: {what}")]
    ModeCheck { k: [i64; 7], what: String },
}

/// An integer frequency vector k ∈ Z⁷, identified with −k; the canonical
/// representative has its first nonzero entry positive. Ordered by
/// (|k|², lexicographic components) — the canonical mode order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FourierMode {
    k: [i64; 7],
}

impl PartialOrd for FourierMode {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FourierMode {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.norm_sq(), self.k).cmp(&(other.norm_sq(), other.k))
    }
}

impl FourierMode {
    pub fn new(k: [i64; 7]) -> Self {
        let flip = k.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0);
        let k = if flip { k.map(|v| -v) } else { k };
        FourierMode { k }
    }

    pub fn components(&self) -> &[i64; 7] {
        &self.k
    }

    pub fn is_zero(&self) -> bool {
        self.k.iter().all(|&v| v == 0)
    }

    /// |k|² = Σ kᵢ².
    pub fn norm_sq(&self) -> u64 {
        self.k.iter().map(|&v| (v * v) as u64).sum()
    }

    /// |k|² = m²·d with d square-free: the field discriminant `d` and the
    /// integer factor `m`, so |k| = m√d.
    pub fn sqrt_parts(&self) -> (u64, u64) {
        square_free_split(self.norm_sq())
    }

    /// The covector Σ kᵢ eᵢ as an exact 1-form.
    pub fn covector(&self) -> Multivector {
        let comps: Vec<Scalar> = self.k.iter().map(|&v| Scalar::from_int(v)).collect();
        Multivector::one_form(7, &comps)
    }
}

/// All canonical modes with 1 ≤ |k|² ≤ `max_norm_sq`, ordered by
/// (|k|², lexicographic components).
pub fn enumerate_modes(max_norm_sq: u64) -> Vec<FourierMode> {
    let mut out = Vec::new();
    let mut k = [0i64; 7];
    // First nonzero coordinate positive picks one of {k, −k}.
    fn rec(
        out: &mut Vec<FourierMode>,
        k: &mut [i64; 7],
        pos: usize,
        budget: i64,
        nonzero_seen: bool,
    ) {
        if pos == 7 {
            if nonzero_seen {
                out.push(FourierMode { k: *k });
            }
            return;
        }
        let bound = crate::torus::isqrt_i64(budget);
        let low = if nonzero_seen { -bound } else { 0 };
        for v in low..=bound {
            k[pos] = v;
            rec(out, k, pos + 1, budget - v * v, nonzero_seen || v != 0);
        }
        k[pos] = 0;
    }
    rec(&mut out, &mut k, 0, max_norm_sq as i64, false);
    out.sort();
    out
}

pub(crate) fn isqrt_i64(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = 0i64;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Per-mode structural checks backing [`ModeSpectrum::verify`].
#[derive(Clone, Debug, Default)]
pub struct ModeChecks {
    pub rho_squares_to_minus_norm: bool,
    pub dirac_symmetric: bool,
    pub dirac_squares_to_norm: bool,
    pub dirac_trace_zero: bool,
    pub function_eigenspinors_verified: bool,
    pub form_eigenspinors_verified: bool,
    pub coclosed_kernel_is_span_k: bool,
    pub predicted_span_plus: bool,
    pub predicted_span_minus: bool,
    pub transfer_factor_relation: bool,
}

impl ModeChecks {
    fn first_failure(&self) -> Option<&'static str> {
        [
            (self.rho_squares_to_minus_norm, "rho(k)^2 != -|k|^2 Id"),
            (self.dirac_symmetric, "mode matrix not symmetric"),
            (self.dirac_squares_to_norm, "mode matrix square != |k|^2 Id"),
            (self.dirac_trace_zero, "mode matrix trace != 0"),
            (
                self.function_eigenspinors_verified,
                "function eigenspinor equation failed",
            ),
            (
                self.form_eigenspinors_verified,
                "form eigenspinor equation failed",
            ),
            (
                self.coclosed_kernel_is_span_k,
                "cross operator kernel is not span{k}",
            ),
            (
                self.predicted_span_plus,
                "predicted vectors do not span the +|k| eigenspace",
            ),
            (
                self.predicted_span_minus,
                "predicted vectors do not span the -|k| eigenspace",
            ),
            (self.transfer_factor_relation, "c(c - 8a)|_{a=0} != lambda^1"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, what)| what)
    }
}

/// The exact spectral data of one mode: the direct Dirac spectrum on the
/// 16-dimensional mode space next to the two predicted families.
#[derive(Clone, Debug)]
pub struct ModeSpectrum {
    pub mode: FourierMode,
    /// (eigenvalue, multiplicity) from exact rank computation.
    pub direct: Vec<(ExactEigenvalue, usize)>,
    /// Function-transfer prediction: (±|k|, 2).
    pub predicted_functions: Vec<(ExactEigenvalue, usize)>,
    /// Coclosed 1-form prediction: (±|k|, 6).
    pub predicted_forms: Vec<(ExactEigenvalue, usize)>,
    pub checks: ModeChecks,
}

impl ModeSpectrum {
    /// The predicted multiset functions ⊎ forms, merged by eigenvalue.
    pub fn predicted_total(&self) -> Vec<(ExactEigenvalue, usize)> {
        let mut merged: Vec<(ExactEigenvalue, usize)> = Vec::new();
        for (v, m) in self
            .predicted_functions
            .iter()
            .chain(self.predicted_forms.iter())
        {
            match merged.iter_mut().find(|(w, _)| w == v) {
                Some((_, count)) => *count += m,
                None => merged.push((v.clone(), *m)),
            }
        }
        merged.sort_by(|(x, _), (y, _)| x.cmp_exact(y));
        merged
    }

    /// Exact multiset equality of direct and predicted spectra plus all
    /// structural checks.
    pub fn verify(&self) -> Result<(), TorusError> {
        let k = *self.mode.components();
        if let Some(what) = self.checks.first_failure() {
            return Err(TorusError::ModeCheck {
                k,
                what: what.into(),
            });
        }
        let total: usize = self.direct.iter().map(|(_, m)| m).sum();
        if total != 16 {
            return Err(TorusError::ModeCheck {
                k,
                what: format!("direct multiplicities sum to {total}, expected 16"),
            });
        }
        for (v, m) in &self.direct {
            let neg = v.neg();
            let paired = self.direct.iter().find(|(w, _)| w == &neg).map(|(_, m)| *m);
            if paired != Some(*m) {
                return Err(TorusError::ModeCheck {
                    k,
                    what: format!("eigenvalue {v} has no matching -{v} multiplicity"),
                });
            }
        }
        let mut direct = self.direct.clone();
        direct.sort_by(|(x, _), (y, _)| x.cmp_exact(y));
        if direct != self.predicted_total() {
            return Err(TorusError::ModeCheck {
                k,
                what: format!(
                    "multiset mismatch: direct {:?} vs predicted {:?}",
                    direct,
                    self.predicted_total()
                ),
            });
        }
        Ok(())
    }
}

/// Report for the 8-dimensional zero mode: D vanishes on constant spinors
/// and the kernel splits as R·ψ ⊕ {η·ψ : η constant}.
#[derive(Clone, Debug)]
pub struct KernelReport {
    pub dimension: usize,
    pub killing_line_dim: usize,
    pub constant_form_dim: usize,
    pub decomposition_spans: bool,
    pub forms_orthogonal_to_psi: bool,
    pub pass: bool,
}

/// Outcome of the coclosed 1-form checks of one mode.
#[derive(Clone, Debug)]
pub struct CoclosedFormReport {
    pub mode: FourierMode,
    /// (c, c·(c − 8a) at a = 0, Δ₁-eigenvalue |k|²) per transfer branch.
    pub branches: Vec<(ExactEigenvalue, ExactEigenvalue, Rational)>,
    pub laplace_identity_on_basis: bool,
    /// No nonzero coclosed mode satisfies dη·ψ = 0.
    pub no_flat_coclosed_solution: bool,
    pub pass: bool,
}

/// Per-mode scratch data shared by the analysis paths.
struct ModeData {
    n: u64,
    ctx: QCtx,
    rho: [[i64; 8]; 8],
    dmat: [[i64; 16]; 16],
    sqrt_z2: Z2,
    sqrt_q2: Q2,
    eig_plus: ExactEigenvalue,
    eig_minus: ExactEigenvalue,
}

/// Outcome of the coclosed-form assembly for one mode.
struct FormFamily {
    plus_count: usize,
    minus_count: usize,
    spinors_plus: Vec<Vec<Q2>>,
    spinors_minus: Vec<Vec<Q2>>,
    cross_identities: bool,
    coclosed_kernel_is_span_k: bool,
    eigen_equations_hold: bool,
}

impl FormFamily {
    fn first_failure(&self) -> Option<&'static str> {
        if !self.cross_identities {
            Some("cross operator identities failed")
        } else if !self.coclosed_kernel_is_span_k {
            Some("cross operator kernel is not span{k}")
        } else if !self.eigen_equations_hold {
            Some("form eigenspinor equation failed")
        } else {
            None
        }
    }
}

/// Precomputed integer tables for the mode computations: the γ-matrices,
/// the cross-product slices Λ_{eᵢ}, and an integer rescaling of ψ.
pub struct ModeContext<'a> {
    cl: &'a Cl7,
    g2: &'a G2Structure,
    gamma: [[[i64; 8]; 8]; 7],
    cross: [[[i64; 7]; 7]; 7],
    psi: [i64; 8],
}

impl<'a> ModeContext<'a> {
    pub fn new(cl: &'a Cl7, g2: &'a G2Structure) -> Result<Self, TorusError> {
        let mut gamma = [[[0i64; 8]; 8]; 7];
        for i in 0..7 {
            let g = cl.gamma(i + 1).expect("index in range");
            for r in 0..8 {
                for c in 0..8 {
                    gamma[i][r][c] = scalar_to_i64(g.entry(r, c)).ok_or_else(|| {
                        TorusError::NonIntegerData(format!("gamma_{} entry ({r},{c})", i + 1))
                    })?;
                }
            }
        }
        let mut cross = [[[0i64; 7]; 7]; 7];
        for i in 0..7 {
            let e_i = Multivector::basis_vector(7, (i + 1) as u8).expect("valid index");
            let lam = g2.cross_operator(&e_i)?;
            for r in 0..7 {
                for c in 0..7 {
                    cross[i][r][c] = scalar_to_i64(lam.at(r, c)).ok_or_else(|| {
                        TorusError::NonIntegerData(format!("cross_{} entry ({r},{c})", i + 1))
                    })?;
                }
            }
        }
        let psi = integer_rescale(g2.psi())
            .ok_or_else(|| TorusError::NonIntegerData("psi rescaling".into()))?;
        Ok(ModeContext {
            cl,
            g2,
            gamma,
            cross,
            psi,
        })
    }

    pub fn clifford(&self) -> &Cl7 {
        self.cl
    }

    pub fn structure(&self) -> &G2Structure {
        self.g2
    }

    /// ρ(k) = Σ kᵢγᵢ as an integer 8×8 matrix.
    fn rho_int(&self, mode: &FourierMode) -> [[i64; 8]; 8] {
        let mut rho = [[0i64; 8]; 8];
        for (i, &ki) in mode.components().iter().enumerate() {
            if ki == 0 {
                continue;
            }
            for r in 0..8 {
                for c in 0..8 {
                    rho[r][c] += ki * self.gamma[i][r][c];
                }
            }
        }
        rho
    }

    /// Λ_k = Σ kᵢ Λ_{eᵢ} as an integer 7×7 matrix.
    fn cross_int(&self, mode: &FourierMode) -> [[i64; 7]; 7] {
        let mut lam = [[0i64; 7]; 7];
        for (i, &ki) in mode.components().iter().enumerate() {
            if ki == 0 {
                continue;
            }
            for r in 0..7 {
                for c in 0..7 {
                    lam[r][c] += ki * self.cross[i][r][c];
                }
            }
        }
        lam
    }

    /// The 16×16 integer mode matrix [[0, ρ(k)], [−ρ(k), 0]] acting on the
    /// (cos, sin) components of a plane-wave spinor.
    fn dirac_int(&self, mode: &FourierMode) -> Result<[[i64; 16]; 16], TorusError> {
        if mode.is_zero() {
            return Err(TorusError::ZeroMode);
        }
        let rho = self.rho_int(mode);
        let mut d = [[0i64; 16]; 16];
        for r in 0..8 {
            for c in 0..8 {
                d[r][8 + c] = rho[r][c];
                d[8 + r][c] = -rho[r][c];
            }
        }
        Ok(d)
    }

    /// The mode matrix with exact scalar entries. Symmetric (ρ(k) is
    /// skew-symmetric) with square |k|²·Id₁₆.
    pub fn dirac_mode_matrix(&self, mode: &FourierMode) -> Result<Matrix<Scalar>, TorusError> {
        let d = self.dirac_int(mode)?;
        Ok(Matrix::from_fn(16, 16, |r, c| Scalar::from_int(d[r][c])))
    }

    fn mode_data(&self, mode: &FourierMode) -> Result<ModeData, TorusError> {
        if mode.is_zero() {
            return Err(TorusError::ZeroMode);
        }
        let n = mode.norm_sq();
        let (d_sf, m_root) = mode.sqrt_parts();
        // for perfect squares the eigenvalues are the rationals ±m_root
        let rational_case = d_sf == 1;
        let ctx = QCtx {
            d: if rational_case { 1 } else { d_sf as i128 },
        };
        let sqrt_z2 = if rational_case {
            Z2::int(m_root as i128)
        } else {
            Z2::sqrt_term(m_root as i128)
        };
        let sqrt_q2 = if rational_case {
            Q2::from_int(m_root as i128)
        } else {
            Q2::sqrt_term(R128::from_integer(m_root as i128))
        };
        let eig_plus = ExactEigenvalue::sqrt(rat_int(n as i64)).expect("n >= 0");
        Ok(ModeData {
            n,
            ctx,
            rho: self.rho_int(mode),
            dmat: self.dirac_int(mode)?,
            sqrt_z2,
            sqrt_q2,
            eig_minus: eig_plus.neg(),
            eig_plus,
        })
    }

    /// The literal function eigenspinors (f, 1/(m−5a)·df) at a = 0 for
    /// f ∈ {cos, sin} and both signs m = ±|k|, paired with their
    /// eigenvalues and verified against the mode matrix.
    fn function_vectors(&self, data: &ModeData) -> (Vec<(Q2, Vec<Q2>)>, bool) {
        let ctx = &data.ctx;
        let psi_q2: Vec<Q2> = self.psi.iter().map(|&v| Q2::from_int(v as i128)).collect();
        let rho_psi: Vec<Q2> = (0..8)
            .map(
                |r| Q2::from_int((0..8).map(|c| data.rho[r][c] * self.psi[c]).sum::<i64>() as i128),
            )
            .collect();
        let mut vectors: Vec<(Q2, Vec<Q2>)> = Vec::with_capacity(4);
        for sign in [1i32, -1] {
            let m = if sign > 0 {
                data.sqrt_q2
            } else {
                ctx.neg(&data.sqrt_q2)
            };
            let inv_m = ctx.div(&Q2::one(), &m);
            // f = cos: (ψ, −(1/m)·ρ(k)ψ); f = sin: ((1/m)·ρ(k)ψ, ψ)
            let mut cos_vec = Vec::with_capacity(16);
            cos_vec.extend(psi_q2.iter().copied());
            cos_vec.extend(rho_psi.iter().map(|v| ctx.neg(&ctx.mul(&inv_m, v))));
            let mut sin_vec = Vec::with_capacity(16);
            sin_vec.extend(rho_psi.iter().map(|v| ctx.mul(&inv_m, v)));
            sin_vec.extend(psi_q2.iter().copied());
            vectors.push((m, cos_vec));
            vectors.push((m, sin_vec));
        }
        let verified = vectors
            .iter()
            .all(|(m, v)| is_eigenvector_int(ctx, &data.dmat, v, m));
        (vectors, verified)
    }

    /// The coupled coclosed-form operator [[0, −Λ_k], [Λ_k, 0]] with its
    /// eigenvectors per sign, their spinor images, and the structural
    /// checks on Λ_k.
    fn form_family(&self, mode: &FourierMode, data: &ModeData) -> FormFamily {
        let ctx = &data.ctx;
        let lam = self.cross_int(mode);
        let k = mode.components();
        // Λ_k is skew, kills k, and satisfies Λ_k² = k·kᵀ − |k|²·Id
        let mut lam_ok = (0..7).all(|r| (0..7).all(|c| lam[r][c] == -lam[c][r]));
        lam_ok &= (0..7).all(|r| (0..7).map(|c| lam[r][c] * k[c]).sum::<i64>() == 0);
        for r in 0..7 {
            for c in 0..7 {
                let sq: i64 = (0..7).map(|t| lam[r][t] * lam[t][c]).sum();
                let expected = k[r] * k[c] - if r == c { data.n as i64 } else { 0 };
                lam_ok &= sq == expected;
            }
        }
        let mut fmat = [[0i64; 14]; 14];
        for r in 0..7 {
            for c in 0..7 {
                fmat[r][7 + c] = -lam[r][c];
                fmat[7 + r][c] = lam[r][c];
            }
        }
        // kernel of the coupled operator = span{(k,0), (0,k)}: exactly the
        // non-coclosed directions
        let lam_rank = int_rank(&lam.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), ctx.d);
        let f_rank = int_rank(&fmat.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), ctx.d);
        let coclosed_ok = lam_rank == 6 && f_rank == 12;

        let mut spinors = [Vec::new(), Vec::new()];
        let mut eigen_ok = true;
        let mut counts = [0usize; 2];
        for (slot, shift) in [(0usize, data.sqrt_z2), (1, data.sqrt_z2.neg())] {
            let m = if slot == 0 {
                data.sqrt_q2
            } else {
                ctx.neg(&data.sqrt_q2)
            };
            let eigvecs = form_eigenvectors(&fmat, shift, ctx.d);
            counts[slot] = eigvecs.len();
            for ab in &eigvecs {
                let spinor16 = self.form_pair_to_spinor(ctx, ab);
                eigen_ok &= is_eigenvector_int(ctx, &data.dmat, &spinor16, &m);
                spinors[slot].push(spinor16);
            }
        }
        FormFamily {
            plus_count: counts[0],
            minus_count: counts[1],
            spinors_plus: spinors[0].clone(),
            spinors_minus: spinors[1].clone(),
            cross_identities: lam_ok,
            coclosed_kernel_is_span_k: lam_ok && coclosed_ok,
            eigen_equations_hold: eigen_ok,
        }
    }

    /// Function-family prediction for one mode: eigenvalues ±|k| with
    /// multiplicity 2 each (cos and sin), after constructing the
    /// eigenspinors explicitly and checking them on the mode matrix.
    pub fn predicted_from_functions(
        &self,
        mode: &FourierMode,
    ) -> Result<Vec<(ExactEigenvalue, usize)>, TorusError> {
        let data = self.mode_data(mode)?;
        let (_, verified) = self.function_vectors(&data);
        if !verified {
            return Err(TorusError::ModeCheck {
                k: *mode.components(),
                what: "function eigenspinor equation failed".into(),
            });
        }
        Ok(vec![(data.eig_plus, 2), (data.eig_minus, 2)])
    }

    /// Coclosed 1-form prediction for one mode: eigenvalues ±|k| with the
    /// multiplicities of the coupled operator (6 each), verified at the
    /// spinor level and with the non-coclosed kernel pinned to span{k}.
    /// Also confirms λ¹₊ = λ¹₋ = |k|², once through the mode Laplacian and
    /// once through the transfer-factor relation c² = λ at a = 0.
    pub fn predicted_from_forms(
        &self,
        mode: &FourierMode,
    ) -> Result<Vec<(ExactEigenvalue, usize)>, TorusError> {
        let data = self.mode_data(mode)?;
        let family = self.form_family(mode, &data);
        if let Some(what) = family.first_failure() {
            return Err(TorusError::ModeCheck {
                k: *mode.components(),
                what: what.into(),
            });
        }
        if !self.mode_laplace_identity(mode) {
            return Err(TorusError::ModeCheck {
                k: *mode.components(),
                what: "mode Laplacian is not |k|^2 Id on 1-forms".into(),
            });
        }
        if data.eig_plus.square().as_rational() != Some(&rat_int(data.n as i64)) {
            return Err(TorusError::ModeCheck {
                k: *mode.components(),
                what: "transfer factor c does not satisfy c^2 = |k|^2".into(),
            });
        }
        Ok(vec![
            (data.eig_plus, family.plus_count),
            (data.eig_minus, family.minus_count),
        ])
    }

    /// Δ₁ acts on the plane-wave 1-forms of this mode as
    /// k⌟(k∧α) + ⟨k, α⟩·k = |k|²·α, checked on every frame covector
    /// through the exterior module.
    fn mode_laplace_identity(&self, mode: &FourierMode) -> bool {
        let n_rat = rat_int(mode.norm_sq() as i64);
        let k_form = mode.covector();
        (1..=7u8).all(|j| {
            let alpha = Multivector::basis_vector(7, j).expect("valid index");
            let wedge = k_form.wedge(&alpha).expect("same dim");
            let first = contract(&k_form, &wedge).expect("grade 1");
            let pairing = k_form.inner(&alpha).expect("same dim");
            let total = &first + &k_form.scale(&pairing);
            total == alpha.scale(&Scalar::from_rational(n_rat.clone()))
        })
    }

    /// Full per-mode certificate: direct spectrum via exact elimination
    /// over Q(√d), both predicted families with verified eigenspinors, and
    /// the span checks tying them together.
    pub fn analyze(&self, mode: &FourierMode) -> Result<ModeSpectrum, TorusError> {
        let data = self.mode_data(mode)?;
        let n = data.n;
        let ctx = &data.ctx;
        let rho = &data.rho;
        let dmat = &data.dmat;

        let rho_squares_to_minus_norm = {
            let mut ok = true;
            for r in 0..8 {
                for c in 0..8 {
                    let acc: i64 = (0..8).map(|t| rho[r][t] * rho[t][c]).sum();
                    ok &= acc == if r == c { -(n as i64) } else { 0 };
                }
            }
            ok
        };
        let dirac_symmetric = (0..16).all(|r| (0..16).all(|c| dmat[r][c] == dmat[c][r]));
        let dirac_trace_zero = (0..16).map(|r| dmat[r][r]).sum::<i64>() == 0;
        let dirac_squares_to_norm = {
            let mut ok = true;
            for r in 0..16 {
                for c in 0..16 {
                    let acc: i64 = (0..16).map(|t| dmat[r][t] * dmat[t][c]).sum();
                    ok &= acc == if r == c { n as i64 } else { 0 };
                }
            }
            ok
        };

        // direct spectrum: nullities of D ∓ √N·Id over Q(√d)
        let mult_plus = 16 - shifted_rank(dmat, data.sqrt_z2, ctx.d);
        let mult_minus = 16 - shifted_rank(dmat, data.sqrt_z2.neg(), ctx.d);
        let direct = vec![
            (data.eig_plus.clone(), mult_plus),
            (data.eig_minus.clone(), mult_minus),
        ];

        let (function_vectors, functions_ok) = self.function_vectors(&data);
        let predicted_functions = vec![(data.eig_plus.clone(), 2), (data.eig_minus.clone(), 2)];

        let family = self.form_family(mode, &data);
        let predicted_forms = vec![
            (data.eig_plus.clone(), family.plus_count),
            (data.eig_minus.clone(), family.minus_count),
        ];

        // span certificates: 2 function + 6 form vectors per sign must span
        // the full eigenspace, whose dimension the direct ranks computed
        let span_of = |sign: i32, form_spinors: &[Vec<Q2>], expected: usize| {
            let cols: Vec<Vec<Q2>> = function_vectors
                .iter()
                .filter(|(m, _)| sign_q2(m) == sign)
                .map(|(_, v)| v.clone())
                .chain(form_spinors.iter().cloned())
                .collect();
            q2_rank_columns(ctx, &cols, 16) == expected
        };

        let checks = ModeChecks {
            rho_squares_to_minus_norm,
            dirac_symmetric,
            dirac_trace_zero,
            dirac_squares_to_norm,
            function_eigenspinors_verified: functions_ok,
            form_eigenspinors_verified: family.cross_identities && family.eigen_equations_hold,
            coclosed_kernel_is_span_k: family.coclosed_kernel_is_span_k,
            predicted_span_plus: span_of(1, &family.spinors_plus, mult_plus),
            predicted_span_minus: span_of(-1, &family.spinors_minus, mult_minus),
            // transfer-factor relation at a = 0: the transfer factor c = ∓|k|
            // satisfies c·(c − 8a) = c² = |k|², the Δ₁-eigenvalue
            transfer_factor_relation: data.eig_plus.square().as_rational() == Some(&rat_int(n as i64)),
        };

        Ok(ModeSpectrum {
            mode: *mode,
            direct,
            predicted_functions,
            predicted_forms,
            checks,
        })
    }

    fn form_pair_to_spinor(&self, ctx: &QCtx, ab: &[Q2]) -> Vec<Q2> {
        debug_assert_eq!(ab.len(), 14);
        let mut out = vec![Q2::ZERO; 16];
        for (half, offset) in [(0usize, 0usize), (7, 8)] {
            for i in 0..7 {
                let coeff = ab[half + i];
                if coeff.is_zero() {
                    continue;
                }
                for r in 0..8 {
                    let g_psi: i64 = (0..8).map(|c| self.gamma[i][r][c] * self.psi[c]).sum();
                    if g_psi != 0 {
                        let term = ctx.mul(&coeff, &Q2::from_int(g_psi as i128));
                        out[offset + r] = ctx.add(&out[offset + r], &term);
                    }
                }
            }
        }
        out
    }

    /// The k = 0 story: D vanishes on the 8-dimensional constant-spinor
    /// space, which splits as R·ψ ⊕ {η·ψ : η a constant 1-form}.
    pub fn kernel_description(&self) -> KernelReport {
        let psi = self.g2.psi();
        let mut columns: Vec<Vec<Scalar>> = vec![psi.components().to_vec()];
        let mut orthogonal = true;
        for i in 1..=7 {
            let gi = self.cl.gamma(i).expect("index in range");
            let v = gi.apply(psi);
            orthogonal &= v.inner(psi).is_zero();
            columns.push(v.components().to_vec());
        }
        let rank = linalg::rank(&ScalarField, &Matrix::from_columns(columns));
        KernelReport {
            dimension: 8,
            killing_line_dim: 1,
            constant_form_dim: 7,
            decomposition_spans: rank == 8,
            forms_orthogonal_to_psi: orthogonal,
            pass: rank == 8 && orthogonal,
        }
    }

    /// Coclosed 1-form checks for one mode, or the constant case when
    /// `mode` is zero.
    pub fn coclosed_form_check(&self, mode: &FourierMode) -> Result<CoclosedFormReport, TorusError> {
        if mode.is_zero() {
            // constant η: dη = 0, so dη·ψ = 0 and Δ₁η = 0: the c = 0 case
            return Ok(CoclosedFormReport {
                mode: *mode,
                branches: vec![(
                    ExactEigenvalue::zero(),
                    ExactEigenvalue::zero(),
                    Rational::zero(),
                )],
                laplace_identity_on_basis: true,
                no_flat_coclosed_solution: true,
                pass: true,
            });
        }
        let n = mode.norm_sq();
        let n_rat = rat_int(n as i64);
        let laplace_ok = self.mode_laplace_identity(mode);
        // both transfer branches carry c = ±|k| and Δ₁-eigenvalue c²
        let c_plus = ExactEigenvalue::sqrt(n_rat.clone()).expect("n >= 0");
        let branches = vec![
            (c_plus.clone(), c_plus.square(), n_rat.clone()),
            (c_plus.neg(), c_plus.neg().square(), n_rat.clone()),
        ];
        let branch_ok = branches
            .iter()
            .all(|(_, csq, lam)| csq.as_rational() == Some(lam));
        // dη·ψ = 0 forces Λ_k α = 0, impossible for coclosed α ≠ 0
        let lam = self.cross_int(mode);
        let (d_sf, _) = mode.sqrt_parts();
        let disc = if d_sf <= 1 { 1 } else { d_sf as i128 };
        let lam_rank = int_rank(&lam.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), disc);
        let no_solution = lam_rank == 6;
        Ok(CoclosedFormReport {
            mode: *mode,
            branches,
            laplace_identity_on_basis: laplace_ok,
            no_flat_coclosed_solution: no_solution,
            pass: laplace_ok && branch_ok && no_solution,
        })
    }

    /// Analyzes and verifies every canonical mode with 1 ≤ |k|² ≤
    /// `max_norm_sq` and folds the results into the sweep summary.
    pub fn sweep(&self, max_norm_sq: u64) -> SweepResult {
        let modes = enumerate_modes(max_norm_sq);
        let mut results = Vec::with_capacity(modes.len());
        let mut failures = Vec::new();
        for mode in &modes {
            match self.analyze(mode) {
                Ok(spec) => {
                    if let Err(e) = spec.verify() {
                        failures.push((*mode, format!("{e}")));
                    }
                    results.push(spec);
                }
                Err(e) => failures.push((*mode, format!("{e}"))),
            }
        }
        let kernel = self.kernel_description();
        let summary = summarize(&results, &kernel, &failures);
        SweepResult {
            modes: results,
            kernel,
            summary,
            failures,
        }
    }
}

/// Sweep output: per-mode spectra, the zero-mode kernel report and the
/// aggregate summary.
pub struct SweepResult {
    pub modes: Vec<ModeSpectrum>,
    pub kernel: KernelReport,
    pub summary: SweepSummary,
    pub failures: Vec<(FourierMode, String)>,
}

/// Aggregate of a sweep: the smallest Laplace eigenvalues realized by each
/// family and the resulting μ₂(D²), which the parallel-case corollary
/// equates with their minimum.
#[derive(Clone, Debug)]
pub struct SweepSummary {
    pub modes_checked: usize,
    pub mu1_d2: ExactEigenvalue,
    pub mu2_d2: Option<ExactEigenvalue>,
    pub lambda0_1: Option<u64>,
    pub lambda1_plus_1: Option<u64>,
    pub lambda1_minus_1: Option<u64>,
    pub corollary_holds: bool,
    pub all_pass: bool,
}

fn summarize(
    results: &[ModeSpectrum],
    kernel: &KernelReport,
    failures: &[(FourierMode, String)],
) -> SweepSummary {
    let mut lambda0_1 = None;
    let mut lambda1_plus_1 = None;
    let mut lambda1_minus_1 = None;
    let mut mu2: Option<ExactEigenvalue> = None;
    for spec in results {
        let n = spec.mode.norm_sq();
        if spec.predicted_functions.iter().any(|(_, m)| *m > 0) && lambda0_1.is_none() {
            lambda0_1 = Some(n);
        }
        let plus_positive = spec
            .predicted_forms
            .iter()
            .any(|(v, m)| *m > 0 && v.signum() > 0);
        let minus_positive = spec
            .predicted_forms
            .iter()
            .any(|(v, m)| *m > 0 && v.signum() < 0);
        if plus_positive && lambda1_plus_1.is_none() {
            lambda1_plus_1 = Some(n);
        }
        if minus_positive && lambda1_minus_1.is_none() {
            lambda1_minus_1 = Some(n);
        }
        for (v, m) in &spec.direct {
            if *m == 0 || v.is_zero() {
                continue;
            }
            let sq = v.square();
            mu2 = match mu2.take() {
                None => Some(sq),
                Some(old) => Some(if sq.cmp_exact(&old).is_lt() { sq } else { old }),
            };
        }
    }
    let corollary_holds = match (&mu2, lambda0_1, lambda1_plus_1, lambda1_minus_1) {
        (Some(mu2), Some(l0), Some(lp), Some(lm)) => {
            let min = l0.min(lp).min(lm);
            mu2.as_rational() == Some(&rat_int(min as i64))
        }
        _ => false,
    };
    SweepSummary {
        modes_checked: results.len(),
        mu1_d2: ExactEigenvalue::zero(),
        mu2_d2: mu2,
        lambda0_1,
        lambda1_plus_1,
        lambda1_minus_1,
        corollary_holds,
        all_pass: failures.is_empty() && kernel.pass && corollary_holds,
    }
}

fn scalar_to_i64(s: &Scalar) -> Option<i64> {
    let r = s.as_rational()?;
    if !r.denom().is_one() {
        return None;
    }
    r.numer().to_i64()
}

use num_traits::One;

fn integer_rescale(psi: &Spinor) -> Option<[i64; 8]> {
    let mut denom_lcm = num_bigint::BigInt::one();
    for c in psi.components() {
        let r = c.as_rational()?;
        denom_lcm = num_integer::lcm(denom_lcm, r.denom().clone());
    }
    let mut out = [0i64; 8];
    for (i, c) in psi.components().iter().enumerate() {
        let r = c.as_rational()?;
        let scaled = r * Rational::from_integer(denom_lcm.clone());
        if !scaled.denom().is_one() {
            return None;
        }
        out[i] = scaled.numer().to_i64()?;
    }
    Some(out)
}

/// Rank of (M − shift·Id) over Q(√d) for an integer square matrix M, by
/// fraction-free elimination in Z[√d].
fn shifted_rank(m: &[[i64; 16]; 16], shift: Z2, d: i128) -> usize {
    let mut z = ZMat::zero(d, 16, 16);
    for r in 0..16 {
        for c in 0..16 {
            let mut v = Z2::int(m[r][c] as i128);
            if r == c {
                v = v.sub(shift);
            }
            z.set(r, c, v);
        }
    }
    z.rank()
}

fn int_rank(rows: &[Vec<i64>], d: i128) -> usize {
    let rc = rows.len();
    let cc = rows.first().map_or(0, Vec::len);
    let mut z = ZMat::zero(d, rc, cc);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            z.set(r, c, Z2::int(v as i128));
        }
    }
    z.rank()
}

/// Kernel basis of (F − shift·Id) over Q(√d) for the 14×14 coupled form
/// operator.
fn form_eigenvectors(f: &[[i64; 14]; 14], shift: Z2, d: i128) -> Vec<Vec<Q2>> {
    let mut z = ZMat::zero(d, 14, 14);
    for r in 0..14 {
        for c in 0..14 {
            let mut v = Z2::int(f[r][c] as i128);
            if r == c {
                v = v.sub(shift);
            }
            z.set(r, c, v);
        }
    }
    z.kernel_basis()
}

fn is_eigenvector_int(ctx: &QCtx, m: &[[i64; 16]; 16], v: &[Q2], eig: &Q2) -> bool {
    if v.iter().all(Q2::is_zero) {
        return false;
    }
    for r in 0..16 {
        let mut acc = Q2::ZERO;
        for c in 0..16 {
            if m[r][c] != 0 && !v[c].is_zero() {
                acc = ctx.add(&acc, &ctx.mul(&Q2::from_int(m[r][c] as i128), &v[c]));
            }
        }
        if acc != ctx.mul(eig, &v[r]) {
            return false;
        }
    }
    true
}

fn sign_q2(v: &Q2) -> i32 {
    // mode eigenvalues are pure ±√N or ±integers: the sign is readable
    if !v.y.is_zero() {
        if v.y.is_positive() {
            1
        } else {
            -1
        }
    } else if v.x.is_positive() {
        1
    } else if v.x.is_negative() {
        -1
    } else {
        0
    }
}

fn q2_rank_columns(ctx: &QCtx, cols: &[Vec<Q2>], rows: usize) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let m = Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r]);
    linalg::rank(ctx, &m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Cl7, G2Structure) {
        let cl = Cl7::new();
        let g2 = G2Structure::build_standard(&cl).unwrap();
        (cl, g2)
    }

    fn mode(k: [i64; 7]) -> FourierMode {
        FourierMode::new(k)
    }

    #[test]
    fn canonicalization_and_parts() {
        let m = mode([0, -2, 1, 0, 0, 0, 0]);
        assert_eq!(m.components(), &[0, 2, -1, 0, 0, 0, 0]);
        assert_eq!(m.norm_sq(), 5);
        assert_eq!(m.sqrt_parts(), (5, 1));
        assert_eq!(mode([3, 4, 0, 0, 0, 0, 0]).sqrt_parts(), (1, 5));
        assert_eq!(mode([2, 2, 0, 0, 0, 0, 0]).sqrt_parts(), (2, 2));
    }

    #[test]
    fn enumeration_counts() {
        // 7 canonical modes of norm 1, then C(7,2)·2 = 42 of norm 2
        let level1 = enumerate_modes(1);
        assert_eq!(level1.len(), 7);
        assert!(level1.iter().all(|m| m.norm_sq() == 1));
        let level2 = enumerate_modes(2);
        assert_eq!(level2.len(), 7 + 42);
        // ordering: by norm then lexicographic, no duplicates
        for w in level2.windows(2) {
            assert!(w[0] < w[1]);
        }
        // all canonical: first nonzero entry positive
        for m in &level2 {
            assert!(m.components().iter().find(|&&v| v != 0).unwrap() > &0);
        }
    }

    #[test]
    fn mode_matrix_requires_nonzero() {
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        assert!(matches!(
            ctx.dirac_mode_matrix(&mode([0; 7])),
            Err(TorusError::ZeroMode)
        ));
    }

    #[test]
    fn unit_mode_spectrum() {
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let m = mode([1, 0, 0, 0, 0, 0, 0]);
        let spec = ctx.analyze(&m).unwrap();
        spec.verify().unwrap();
        assert_eq!(
            spec.direct,
            vec![
                (ExactEigenvalue::from_int(1), 8),
                (ExactEigenvalue::from_int(-1), 8),
            ]
        );
        assert_eq!(
            spec.predicted_functions,
            vec![
                (ExactEigenvalue::from_int(1), 2),
                (ExactEigenvalue::from_int(-1), 2),
            ]
        );
        assert_eq!(
            spec.predicted_forms,
            vec![
                (ExactEigenvalue::from_int(1), 6),
                (ExactEigenvalue::from_int(-1), 6),
            ]
        );
    }

    #[test]
    fn predicted_families_as_standalone_operations() {
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let m = mode([1, 1, 0, 0, 0, 0, 0]);
        let r2 = ExactEigenvalue::sqrt(rat_int(2)).unwrap();
        assert_eq!(
            ctx.predicted_from_functions(&m).unwrap(),
            vec![(r2.clone(), 2), (r2.neg(), 2)]
        );
        assert_eq!(
            ctx.predicted_from_forms(&m).unwrap(),
            vec![(r2.clone(), 6), (r2.neg(), 6)]
        );
        assert!(matches!(
            ctx.predicted_from_functions(&mode([0; 7])),
            Err(TorusError::ZeroMode)
        ));
        assert!(matches!(
            ctx.predicted_from_forms(&mode([0; 7])),
            Err(TorusError::ZeroMode)
        ));
    }

    #[test]
    fn sqrt2_mode_spectrum() {
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let m = mode([1, 1, 0, 0, 0, 0, 0]);
        let spec = ctx.analyze(&m).unwrap();
        spec.verify().unwrap();
        let r2 = ExactEigenvalue::sqrt(rat_int(2)).unwrap();
        assert_eq!(spec.direct[0], (r2.clone(), 8));
        assert_eq!(spec.direct[1], (r2.neg(), 8));
    }

    #[test]
    fn pythagorean_mode_is_rational() {
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let m = mode([3, 4, 0, 0, 0, 0, 0]);
        let spec = ctx.analyze(&m).unwrap();
        spec.verify().unwrap();
        assert_eq!(spec.direct[0], (ExactEigenvalue::from_int(5), 8));
        assert_eq!(spec.direct[1], (ExactEigenvalue::from_int(-5), 8));
    }

    #[test]
    fn dirac_mode_matrix_exact_properties() {
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let m = mode([2, -1, 0, 3, 0, 0, 1]);
        let d = ctx.dirac_mode_matrix(&m).unwrap();
        let f = ScalarField;
        let sq = linalg::mat_mul(&f, &d, &d);
        let n = Scalar::from_int(m.norm_sq() as i64);
        for r in 0..16 {
            for c in 0..16 {
                let expected = if r == c { n.clone() } else { Scalar::zero() };
                assert_eq!(sq.at(r, c), &expected);
                assert_eq!(d.at(r, c), d.at(c, r));
            }
        }
    }

    #[test]
    fn kernel_description_dimensions() {
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let report = ctx.kernel_description();
        assert!(report.pass);
        assert_eq!(report.dimension, 8);
        assert_eq!(report.killing_line_dim + report.constant_form_dim, 8);
        assert!(report.decomposition_spans);
        assert!(report.forms_orthogonal_to_psi);
    }

    #[test]
    fn coclosed_flat_reports() {
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let report = ctx.coclosed_form_check(&mode([1, 0, 0, 0, 0, 0, 0])).unwrap();
        assert!(report.pass);
        assert!(report.laplace_identity_on_basis);
        assert!(report.no_flat_coclosed_solution);
        // c = ±1 with c² = 1 = λ¹
        assert_eq!(report.branches.len(), 2);
        for (c, csq, lam) in &report.branches {
            assert_eq!(&c.square(), csq);
            assert_eq!(csq.as_rational(), Some(lam));
        }
        // constant case
        let constant = ctx.coclosed_form_check(&mode([0; 7])).unwrap();
        assert!(constant.pass);
    }

    #[test]
    fn small_sweep_passes() {
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let result = ctx.sweep(2);
        assert!(
            result.failures.is_empty(),
            "failures: {:?}",
            result.failures
        );
        assert!(result.summary.all_pass);
        assert_eq!(result.summary.modes_checked, 49);
        assert_eq!(result.summary.lambda0_1, Some(1));
        assert_eq!(result.summary.lambda1_plus_1, Some(1));
        assert_eq!(result.summary.lambda1_minus_1, Some(1));
        assert_eq!(result.summary.mu2_d2, Some(ExactEigenvalue::from_int(1)));
        assert!(result.summary.corollary_holds);
    }

    #[test]
    fn eigenspinor_formula_over_scalar_field() {
        // the literal (f, 1/(m−5a)·df) construction over Scalar arithmetic
        // for k = (1,1,0,…), m = √2: D·v = m·v exactly over Q(√2)
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let m = mode([1, 1, 0, 0, 0, 0, 0]);
        let d = ctx.dirac_mode_matrix(&m).unwrap();
        let sqrt2 = Scalar::sqrt_of_integer(2);
        let inv_m = Scalar::one() / sqrt2.clone();
        let psi = g2.psi();
        let rho_k = cl.action(&m.covector()).unwrap().apply(psi);
        let mut v: Vec<Scalar> = Vec::with_capacity(16);
        v.extend(psi.components().iter().cloned());
        v.extend(rho_k.components().iter().map(|c| -&(c * &inv_m)));
        let image = linalg::apply(&ScalarField, &d, &v);
        for (img, orig) in image.iter().zip(&v) {
            assert_eq!(img, &(orig * &sqrt2));
        }
    }

    #[test]
    fn non_coclosed_direction_maps_to_zero() {
        // Λ_k(k) = 0: the non-coclosed direction is annihilated
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let m = mode([2, 1, 0, 0, 3, 0, 0]);
        let lam = ctx.cross_int(&m);
        let k = m.components();
        for r in 0..7 {
            assert_eq!((0..7).map(|c| lam[r][c] * k[c]).sum::<i64>(), 0);
        }
    }

    #[test]
    fn spinor_level_form_equation() {
        // ρ((5a−m)η + dη)ψ = 0 at a = 0 for each coupled eigenvector:
        // cos part −m·α + k∧β, sin part −m·β − k∧α, both annihilate ψ.
        // Checked on a rational-eigenvalue mode so Scalar stays in Q.
        let (cl, g2) = setup();
        let ctx = ModeContext::new(&cl, &g2).unwrap();
        let m = mode([3, 4, 0, 0, 0, 0, 0]);
        let (d_sf, m_root) = m.sqrt_parts();
        assert_eq!(d_sf, 1);
        let lam = ctx.cross_int(&m);
        let mut fmat = [[0i64; 14]; 14];
        for r in 0..7 {
            for c in 0..7 {
                fmat[r][7 + c] = -lam[r][c];
                fmat[7 + r][c] = lam[r][c];
            }
        }
        let eigvecs = form_eigenvectors(&fmat, Z2::int(m_root as i128), 1);
        assert_eq!(eigvecs.len(), 6);
        let k_form = m.covector();
        let m_scalar = Scalar::from_int(m_root as i64);
        for ab in &eigvecs {
            let alpha = q2_to_one_form(&ab[0..7]);
            let beta = q2_to_one_form(&ab[7..14]);
            let cos_part = &(-&alpha.scale(&m_scalar)) + &k_form.wedge(&beta).unwrap();
            let sin_part = &(-&beta.scale(&m_scalar)) - &k_form.wedge(&alpha).unwrap();
            for part in [cos_part, sin_part] {
                let rho = cl.action(&part).unwrap();
                assert!(rho.apply(g2.psi()).is_zero());
            }
        }
    }

    fn q2_to_one_form(comps: &[Q2]) -> Multivector {
        let scalars: Vec<Scalar> = comps
            .iter()
            .map(|v| {
                assert!(v.y.is_zero(), "rational test mode expected");
                Scalar::from_rational(Rational::new((*v.x.numer()).into(), (*v.x.denom()).into()))
            })
            .collect();
        Multivector::one_form(7, &scalars)
    }
}
