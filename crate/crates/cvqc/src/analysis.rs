//! Entanglement qualification and quantification of the two clones, and
//! Gaussian fidelity of a clone against the input state.
//!
//! The two-clone covariance matrix has the symmetric pattern
//!
//! ```text
//!     | s 0 t 0 |
//!     | 0 u 0 v |          ordering (x1, p1, x2, p2)
//!     | t 0 s 0 |
//!     | 0 v 0 u |
//! ```
//!
//! with closed forms for (s, t, u, v) in the squeezing parameters of the
//! cloning network (ancilla traced out, r_z = 0):
//!
//! ```text
//!     s = (e^(-2 r0) + e^(-2 r1)/2 + 1/2) / 4      t = same with - e^(-2 r1)/2
//!     u = (e^( 2 r0) + e^( 2 r1)/2 + 1/2) / 4      v = same with - e^( 2 r1)/2
//! ```

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::gaussian::CovMatrix;

/// Absolute tolerance for structural pattern checks.
const PATTERN_TOL: f64 = 1e-12;

/// Two-mode covariance matrix in the symmetric (s, t, u, v) pattern,
/// together with the assembled 4x4 matrix for generic computations.
///
/// The four eigenvalues `s + t`, `s - t`, `u + v`, `u - v` are stored next
/// to the entries: every symplectic quantity downstream is a product of
/// them, and [`TwoModeCM::from_squeezing`] can evaluate them in closed form
/// where the naive differences would cancel catastrophically (`u - v` is
/// `e^(2 r1)/4` even when `u` and `v` themselves have grown to `e^(2 r0)`
/// scale).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeCM {
    s: f64,
    t: f64,
    u: f64,
    v: f64,
    /// `[s + t, s - t, u + v, u - v]`.
    lambda: [f64; 4],
    matrix: CovMatrix,
}

impl TwoModeCM {
    fn build(s: f64, t: f64, u: f64, v: f64, lambda: [f64; 4]) -> Result<Self> {
        let positive = s > 0.0 && u > 0.0 && lambda.iter().all(|l| *l >= 0.0);
        if !positive {
            return Err(Error::InvalidCovariance(format!(
                "pattern entries (s={s}, t={t}, u={u}, v={v}) violate positivity"
            )));
        }
        let matrix = CovMatrix::new(
            4,
            vec![
                s, 0.0, t, 0.0, //
                0.0, u, 0.0, v, //
                t, 0.0, s, 0.0, //
                0.0, v, 0.0, u,
            ],
        )?;
        Ok(Self {
            s,
            t,
            u,
            v,
            lambda,
            matrix,
        })
    }

    /// Build from the four pattern entries. Positivity of the four
    /// eigenvalues `s ± t`, `u ± v` is required.
    pub fn from_stuv(s: f64, t: f64, u: f64, v: f64) -> Result<Self> {
        Self::build(s, t, u, v, [s + t, s - t, u + v, u - v])
    }

    /// Closed-form clone covariance matrix for input squeezing `r0` and
    /// blank squeezing `r1` (ancilla traced out, its squeezing set to 0).
    pub fn from_squeezing(r0: f64, r1: f64) -> Result<Self> {
        for r in [r0, r1] {
            if !r.is_finite() || r < 0.0 {
                return Err(Error::InvalidSqueezing(r));
            }
        }
        let (em0, ep0) = ((-2.0 * r0).exp(), (2.0 * r0).exp());
        let (em1, ep1) = ((-2.0 * r1).exp(), (2.0 * r1).exp());
        let lambda = [
            0.25 * (2.0 * em0 + 1.0),
            0.25 * em1,
            0.25 * (2.0 * ep0 + 1.0),
            0.25 * ep1,
        ];
        Self::build(
            0.25 * (em0 + em1 / 2.0 + 0.5),
            0.25 * (em0 - em1 / 2.0 + 0.5),
            0.25 * (ep0 + ep1 / 2.0 + 0.5),
            0.25 * (ep0 - ep1 / 2.0 + 0.5),
            lambda,
        )
    }

    /// Extract the pattern from a generic 4x4 covariance matrix, rejecting
    /// matrices that do not fit it.
    pub fn from_matrix(cm: &CovMatrix) -> Result<Self> {
        if cm.dim() != 4 {
            return Err(Error::InvalidCovariance(format!(
                "expected a 4x4 matrix, got {}x{}",
                cm.dim(),
                cm.dim()
            )));
        }
        let (s, t, u, v) = (cm.get(0, 0), cm.get(0, 2), cm.get(1, 1), cm.get(1, 3));
        let check = |i: usize, j: usize, want: f64| -> Result<()> {
            if (cm.get(i, j) - want).abs() > PATTERN_TOL {
                return Err(Error::InvalidCovariance(format!(
                    "entry ({i},{j}) = {} breaks the two-mode pattern",
                    cm.get(i, j)
                )));
            }
            Ok(())
        };
        check(2, 2, s)?;
        check(3, 3, u)?;
        for (i, j) in [(0, 1), (0, 3), (1, 2), (2, 3)] {
            check(i, j, 0.0)?;
        }
        Self::from_stuv(s, t, u, v)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn matrix(&self) -> &CovMatrix {
        &self.matrix
    }

    /// Eigenvalues of the covariance matrix: `s + t`, `s - t`, `u + v`,
    /// `u - v`, sorted descending (ties keep the order just listed).
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut lambda = self.lambda;
        lambda.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        lambda
    }

    fn to_matrix4(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.matrix.get(i, j))
    }
}

/// Eigenvalues of the full 4x4 matrix by a dense symmetric eigensolver,
/// sorted descending. Generic cross-check for [`TwoModeCM::eigenvalues`].
pub fn cm_eigenvalues_generic(cm: &TwoModeCM) -> [f64; 4] {
    let eig = nalgebra::linalg::SymmetricEigen::new(cm.to_matrix4());
    let mut lambda = [0.0; 4];
    for (out, l) in lambda.iter_mut().zip(eig.eigenvalues.iter()) {
        *out = *l;
    }
    lambda.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    lambda
}

/// Outcome of the partial-transpose symplectic analysis of a two-mode
/// covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticResult {
    /// Seralian of the partially transposed matrix, `2 (s u - t v)`.
    pub delta_tilde: f64,
    /// Determinant of the covariance matrix, `(s^2 - t^2)(u^2 - v^2)`.
    pub det: f64,
    /// Tracked symplectic eigenvalue of the partially transposed state,
    /// `sqrt((s + t)(u - v))`.
    pub nu_minus: f64,
    /// `max(0, -log2(nu_minus))`.
    pub e_n: f64,
    /// `nu_minus < 1`.
    pub entangled_paper_convention: bool,
    /// `nu_minus < 1/4` (the PPT bound in 1/4-variance units).
    pub entangled_standard_convention: bool,
}

/// Symplectic analysis of the partially transposed state.
///
/// `nu_minus` is evaluated through the closed form `sqrt((s + t)(u - v))`.
/// That value is always a symplectic eigenvalue of the partially transposed
/// matrix, and the one every threshold and entanglement number downstream
/// of this crate is defined against; see [`pt_symplectic_spectrum`] for the
/// full generic spectrum (whose minimum is the other branch,
/// `sqrt((s - t)(u + v))`, whenever `s v < t u`).
pub fn ppt_nu_minus(cm: &TwoModeCM) -> Result<SymplecticResult> {
    let [lxp, lxm, lpp, lpm] = cm.lambda;
    // Products of eigenvalue pairs: the tracked branch squared and the
    // other branch squared. In these terms the symplectic invariants are
    // exact: delta~ = pa + pb, Det = pa pb, and the discriminant
    // delta~^2 - 4 Det collapses to (pa - pb)^2, which cannot go negative
    // through cancellation.
    let pa = lxp * lpm;
    let pb = lxm * lpp;
    let delta_tilde = pa + pb;
    let det = pa * pb;
    let nu_minus = pa.sqrt();
    let e_n = log_negativity(nu_minus)?;
    Ok(SymplecticResult {
        delta_tilde,
        det,
        nu_minus,
        e_n,
        entangled_paper_convention: nu_minus < ThresholdConvention::Paper.threshold(),
        entangled_standard_convention: nu_minus < ThresholdConvention::Standard.threshold(),
    })
}

/// Both symplectic eigenvalues of the partially transposed matrix,
/// `(smallest, largest)`, computed generically from the eigenvalues of
/// `Omega sigma~` with the partial transposition applied to the matrix.
pub fn pt_symplectic_spectrum(cm: &TwoModeCM) -> (f64, f64) {
    let flip = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
    let omega = Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    );
    let pt = flip * cm.to_matrix4() * flip;
    let mut mods: Vec<f64> = (omega * pt)
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .collect();
    mods.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    (mods[0], mods[3])
}

/// Entanglement threshold convention: where the symplectic eigenvalue of
/// the partially transposed state starts signalling entanglement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdConvention {
    /// Entangled iff `nu_minus < 1`.
    Paper,
    /// Entangled iff `nu_minus < 1/4`, the PPT bound when the vacuum
    /// quadrature variance is 1/4.
    Standard,
}

impl ThresholdConvention {
    pub fn threshold(self) -> f64 {
        match self {
            ThresholdConvention::Paper => 1.0,
            ThresholdConvention::Standard => 0.25,
        }
    }

    /// Logarithmic negativity measured against this convention's threshold:
    /// `max(0, -log2(nu / threshold))`, so it is positive exactly when the
    /// verdict is "entangled".
    pub fn log_negativity(self, nu: f64) -> Result<f64> {
        log_negativity(nu / self.threshold())
    }
}

/// Logarithmic negativity `max(0, -log2(nu))` for `nu > 0`.
pub fn log_negativity(nu: f64) -> Result<f64> {
    if nu.is_nan() || nu <= 0.0 {
        return Err(Error::NonPositiveEigenvalue(nu));
    }
    Ok((-nu.log2()).max(0.0))
}

/// Squeezing at which the equal-squeezing clones stop being entangled under
/// the paper-convention threshold: solves `sqrt(2 + e^(2r))/4 = 1`, i.e.
/// `r* = ln(14)/2`.
pub fn entanglement_threshold() -> f64 {
    0.5 * 14.0_f64.ln()
}

/// Pieces of the two-state Gaussian fidelity evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityBreakdown {
    /// Purity defect term, clamped to be non-negative.
    pub delta: f64,
    /// Determinant of the sum of the rescaled matrices.
    pub det_sum: f64,
    /// Fidelity in [0, 1].
    pub fidelity: f64,
}

fn as_matrix2(cm: &CovMatrix) -> Result<Matrix2<f64>> {
    if cm.dim() != 2 {
        return Err(Error::InvalidCovariance(format!(
            "fidelity takes single-mode (2x2) matrices, got dim {}",
            cm.dim()
        )));
    }
    let m = Matrix2::new(cm.get(0, 0), cm.get(0, 1), cm.get(1, 0), cm.get(1, 1));
    if !(m[(0, 0)] > 0.0 && m.determinant() > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(m)
}

/// Fidelity between two zero-mean single-mode Gaussian states given their
/// covariance matrices in 1/4-variance units.
///
/// The formula is evaluated in the convention where a pure state has
/// determinant 1/4, so both matrices are rescaled by 2 first. Then
/// `delta = 4 (Det A - 1/4)(Det B - 1/4)` (clamped at zero against
/// roundoff) and `F = 1 / (sqrt(Det[A + B] + delta) - sqrt(delta))`.
pub fn gaussian_fidelity(sigma_in: &CovMatrix, sigma_out: &CovMatrix) -> Result<FidelityBreakdown> {
    let a = as_matrix2(sigma_in)? * 2.0;
    let b = as_matrix2(sigma_out)? * 2.0;
    let det_sum = (a + b).determinant();
    let delta = (4.0 * (a.determinant() - 0.25) * (b.determinant() - 0.25)).max(0.0);
    let fidelity = (1.0 / ((det_sum + delta).sqrt() - delta.sqrt())).min(1.0);
    Ok(FidelityBreakdown {
        delta,
        det_sum,
        fidelity,
    })
}

/// Covariance matrix of a single x-squeezed input mode,
/// `diag(e^(-2r)/4, e^(2r)/4)`.
pub fn squeezed_input_cm(r: f64) -> Result<CovMatrix> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidSqueezing(r));
    }
    CovMatrix::single_mode(0.25 * (-2.0 * r).exp(), 0.25 * (2.0 * r).exp())
}

/// Fidelity of one clone against the input state at equal input and blank
/// squeezing `r`, through the rescaled-determinant pipeline. Closed form:
/// `4 / sqrt(26 + 5 (e^(2r) + e^(-2r)))`.
pub fn clone_fidelity(r: f64) -> Result<FidelityBreakdown> {
    let cm = TwoModeCM::from_squeezing(r, r)?;
    let marginal = CovMatrix::single_mode(cm.s(), cm.u())?;
    gaussian_fidelity(&squeezed_input_cm(r)?, &marginal)
}

/// The clone-fidelity expression evaluated verbatim:
/// `16 / (sqrt(434 + 71 c) - sqrt(18 - 9 c))` with `c = e^(2r) + e^(-2r)`.
///
/// The second radicand is negative for every `r > 0`, so the formula is
/// only defined at `r = 0` (where it gives 2/3); elsewhere this returns a
/// domain error instead of a fabricated value.
pub fn clone_fidelity_paper_literal(r: f64) -> Result<f64> {
    if !r.is_finite() {
        return Err(Error::InvalidSqueezing(r));
    }
    let c = (2.0 * r).exp() + (-2.0 * r).exp();
    let radicand = 18.0 - 9.0 * c;
    if radicand < 0.0 {
        return Err(Error::FidelityDomain(radicand));
    }
    Ok(16.0 / ((434.0 + 71.0 * c).sqrt() - radicand.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::clone_1to2;
    use crate::gaussian::{covariance_matrix, InitialModeSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-12;

    #[test]
    fn unsqueezed_pattern_is_half_and_quarter() {
        let cm = TwoModeCM::from_squeezing(0.0, 0.0).unwrap();
        assert!((cm.s() - 0.5).abs() < TOL);
        assert!((cm.t() - 0.25).abs() < TOL);
        assert!((cm.u() - 0.5).abs() < TOL);
        assert!((cm.v() - 0.25).abs() < TOL);
        assert!((cm.matrix().get(0, 2) - 0.25).abs() < TOL);
        assert!((cm.matrix().get(1, 3) - 0.25).abs() < TOL);
    }

    #[test]
    fn closed_form_matches_the_circuit_for_random_squeezing() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let vacuum = [InitialModeSpec::vacuum(); 3];
        for _ in 0..100 {
            let r0: f64 = rng.random_range(0.0..2.0);
            let r1: f64 = rng.random_range(0.0..2.0);
            let out = clone_1to2(
                &InitialModeSpec::x_squeezed(r0).unwrap(),
                &InitialModeSpec::x_squeezed(r1).unwrap(),
                &InitialModeSpec::vacuum(),
            )
            .unwrap();
            let circuit_cm = covariance_matrix(&[out.clone0, out.clone1], &vacuum).unwrap();
            let closed = TwoModeCM::from_squeezing(r0, r1).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert!((circuit_cm.get(i, j) - closed.matrix().get(i, j)).abs() < TOL);
                }
            }
            // pattern extraction accepts the circuit output
            let extracted = TwoModeCM::from_matrix(&circuit_cm).unwrap();
            assert!((extracted.s() - closed.s()).abs() < TOL);
            assert!((extracted.v() - closed.v()).abs() < TOL);
        }
    }

    #[test]
    fn large_input_squeezing_saturates_the_case_one_limit() {
        let cm = TwoModeCM::from_squeezing(20.0, 0.0).unwrap();
        assert!((cm.s() + cm.t() - 0.25).abs() < 1e-8);
        let result = ppt_nu_minus(&cm).unwrap();
        assert!((result.nu_minus - 0.25).abs() < 1e-8);
        assert!((result.e_n - 2.0).abs() < 1e-7);
    }

    #[test]
    fn pattern_eigenvalues_sorted_descending() {
        let cm = TwoModeCM::from_squeezing(0.0, 0.0).unwrap();
        let lambda = cm.eigenvalues();
        assert_eq!(lambda, [0.75, 0.75, 0.25, 0.25]);
    }

    #[test]
    fn eigenvalues_positive_and_matching_the_dense_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..200 {
            let r0: f64 = rng.random_range(0.0..2.5);
            let r1: f64 = rng.random_range(0.0..2.5);
            let cm = TwoModeCM::from_squeezing(r0, r1).unwrap();
            let closed = cm.eigenvalues();
            let generic = cm_eigenvalues_generic(&cm);
            for (c, g) in closed.iter().zip(&generic) {
                assert!(*c > 0.0, "eigenvalue {c} not positive");
                assert!((c - g).abs() < 1e-10, "closed {c} vs dense {g}");
            }
        }
    }

    #[test]
    fn unsqueezed_clones_have_nu_sqrt_three_quarters() {
        let cm = TwoModeCM::from_squeezing(0.0, 0.0).unwrap();
        let result = ppt_nu_minus(&cm).unwrap();
        assert!((result.nu_minus - 3.0_f64.sqrt() / 4.0).abs() < TOL);
        assert!((result.e_n - 1.207_518_749_639_422).abs() < 1e-12);
        assert!(result.entangled_paper_convention);
        assert!(!result.entangled_standard_convention);
        assert!((result.delta_tilde - 2.0 * (0.25 - 0.0625)).abs() < TOL);
    }

    #[test]
    fn equal_squeezing_follows_the_case_two_closed_form() {
        for r in [0.0, 0.3, 0.8, 1.5] {
            let cm = TwoModeCM::from_squeezing(r, r).unwrap();
            let nu = ppt_nu_minus(&cm).unwrap().nu_minus;
            assert!((nu - (2.0 + (2.0 * r).exp()).sqrt() / 4.0).abs() < TOL);
        }
    }

    #[test]
    fn tracked_branch_lies_in_the_generic_pt_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..200 {
            let r0: f64 = rng.random_range(0.0..2.5);
            let r1: f64 = rng.random_range(0.0..2.5);
            let cm = TwoModeCM::from_squeezing(r0, r1).unwrap();
            let nu = ppt_nu_minus(&cm).unwrap().nu_minus;
            let (lo, hi) = pt_symplectic_spectrum(&cm);
            let dist = (nu - lo).abs().min((nu - hi).abs());
            assert!(
                dist < 1e-10,
                "closed form {nu} not in spectrum ({lo}, {hi})"
            );
            // the other analytic branch is the spectrum minimum
            let other = ((cm.s() - cm.t()) * (cm.u() + cm.v())).sqrt();
            assert!(nu.min(other) - lo < 1e-10);
        }
    }

    #[test]
    fn nu_is_monotone_in_blank_squeezing() {
        for &r0 in &[0.0, 0.5, 1.3] {
            let mut last = -1.0;
            for i in 0..=40 {
                let r1 = 0.05 * i as f64;
                let nu = ppt_nu_minus(&TwoModeCM::from_squeezing(r0, r1).unwrap())
                    .unwrap()
                    .nu_minus;
                assert!(nu > last, "nu not increasing at r0={r0}, r1={r1}");
                last = nu;
            }
        }
    }

    #[test]
    fn log_negativity_clamps_and_rejects() {
        assert!((log_negativity(0.25).unwrap() - 2.0).abs() < TOL);
        assert_eq!(log_negativity(1.0).unwrap(), 0.0);
        assert_eq!(log_negativity(2.0).unwrap(), 0.0);
        assert!(matches!(
            log_negativity(0.0),
            Err(Error::NonPositiveEigenvalue(_))
        ));
        assert!(matches!(
            log_negativity(-0.5),
            Err(Error::NonPositiveEigenvalue(_))
        ));
    }

    #[test]
    fn product_of_two_vacua_sits_on_the_standard_threshold() {
        let cm = TwoModeCM::from_stuv(0.25, 0.0, 0.25, 0.0).unwrap();
        let result = ppt_nu_minus(&cm).unwrap();
        assert!((result.nu_minus - 0.25).abs() < TOL);
        assert_eq!(
            ThresholdConvention::Standard
                .log_negativity(result.nu_minus)
                .unwrap(),
            0.0
        );
        assert!(!result.entangled_standard_convention);
    }

    #[test]
    fn threshold_solves_the_case_two_boundary() {
        let r_star = entanglement_threshold();
        assert!((r_star - 1.319_528_664_807_629_2).abs() < TOL);
        let e_n = |r: f64| {
            ppt_nu_minus(&TwoModeCM::from_squeezing(r, r).unwrap())
                .unwrap()
                .e_n
        };
        assert!(e_n(r_star - 0.01) > 0.0);
        assert_eq!(e_n(r_star + 0.01), 0.0);
    }

    #[test]
    fn identical_pure_states_have_unit_fidelity() {
        for r in [0.0, 0.4, 1.7] {
            let cm = squeezed_input_cm(r).unwrap();
            let f = gaussian_fidelity(&cm, &cm).unwrap();
            assert!((f.fidelity - 1.0).abs() < TOL);
            assert!(f.delta >= 0.0);
        }
    }

    #[test]
    fn vacuum_input_clone_fidelity_is_two_thirds() {
        let f = clone_fidelity(0.0).unwrap();
        assert!((f.fidelity - 2.0 / 3.0).abs() < TOL);
    }

    #[test]
    fn clone_fidelity_matches_its_closed_form() {
        for r in [0.0, 0.25, 0.5, 1.0, 2.0] {
            let f = clone_fidelity(r).unwrap();
            let closed = 4.0 / (26.0 + 5.0 * ((2.0 * r).exp() + (-2.0 * r).exp())).sqrt();
            assert!((f.fidelity - closed).abs() < TOL);
        }
        assert!((clone_fidelity(0.5).unwrap().fidelity - 0.621_438_704_321_75).abs() < 1e-12);
    }

    #[test]
    fn clone_fidelity_decreases_with_squeezing() {
        let mut last = f64::INFINITY;
        for i in 0..=30 {
            let f = clone_fidelity(0.1 * i as f64).unwrap().fidelity;
            assert!(f < last);
            last = f;
        }
    }

    #[test]
    fn fidelity_is_symmetric_and_below_one_for_distinct_states() {
        let a = squeezed_input_cm(0.3).unwrap();
        let b = CovMatrix::single_mode(0.4, 0.9).unwrap();
        let fab = gaussian_fidelity(&a, &b).unwrap();
        let fba = gaussian_fidelity(&b, &a).unwrap();
        assert!((fab.fidelity - fba.fidelity).abs() < TOL);
        let c = squeezed_input_cm(0.9).unwrap();
        assert!(gaussian_fidelity(&a, &c).unwrap().fidelity < 1.0);
    }

    #[test]
    fn fidelity_rejects_bad_inputs() {
        let good = squeezed_input_cm(0.0).unwrap();
        let indefinite = CovMatrix::new(2, vec![0.25, 0.3, 0.3, 0.25]).unwrap();
        assert!(matches!(
            gaussian_fidelity(&good, &indefinite),
            Err(Error::NotPositiveDefinite)
        ));
        let four_by_four = TwoModeCM::from_squeezing(0.0, 0.0).unwrap();
        assert!(gaussian_fidelity(&good, four_by_four.matrix()).is_err());
    }

    #[test]
    fn literal_formula_is_two_thirds_at_zero_and_undefined_elsewhere() {
        let f0 = clone_fidelity_paper_literal(0.0).unwrap();
        assert!((f0 - 2.0 / 3.0).abs() < TOL);
        assert!((f0 - clone_fidelity(0.0).unwrap().fidelity).abs() < TOL);
        assert!(matches!(
            clone_fidelity_paper_literal(0.1),
            Err(Error::FidelityDomain(_))
        ));
        assert!(matches!(
            clone_fidelity_paper_literal(2.0),
            Err(Error::FidelityDomain(_))
        ));
    }

    #[test]
    fn pattern_extraction_rejects_off_pattern_matrices() {
        let mut entries = vec![0.0; 16];
        for i in 0..4 {
            entries[i * 4 + i] = 0.5;
        }
        entries[1] = 0.1;
        entries[4] = 0.1;
        let cm = CovMatrix::new(4, entries).unwrap();
        assert!(matches!(
            TwoModeCM::from_matrix(&cm),
            Err(Error::InvalidCovariance(_))
        ));
    }
}
