//! Clone-channel teleportation, analytically: the Bell-type combination of
//! the input with one clone, the measurement/displacement bookkeeping, the
//! Q-function variances of the teleported mode, and the resulting fidelity
//! with its gain optimisation, next to the tritter-based baseline fidelity.
//!
//! Protocol over a four-mode basis (0 = input, 1 = cloner input, 2 = blank,
//! 3 = ancilla): clone mode 1, keep clone0 and the ancilla output on the
//! sending side, hand clone1 to the receiver. The sender homodynes
//! `x_m = (x_in - x_c0)/sqrt(2)`, `p_n = (p_in + p_c0)/sqrt(2)` and the
//! ancilla `p_z'`; the receiver displaces clone1 by `sqrt(2) x_m` in x and
//! `sqrt(2) p_n + g3 p_z'` in p. That displacement rule collapses the
//! teleported mode to
//!
//! ```text
//!     x_tel = x_in - sqrt(2) e^(-r1) x_2
//!     p_tel = p_in + (2 - g3) e^(r0) p_1 + sqrt(2) (g3 - 1) e^(-rz) p_3
//! ```

use crate::analysis::{ppt_nu_minus, TwoModeCM};
use crate::circuit::clone_network;
use crate::error::{Error, Result};
use crate::gaussian::{variance, InitialModeSpec, ModeOperator, QuadExpr};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Coherent-state Q-function variance floor in 1/4-variance units:
/// 1/4 of state noise plus 1/4 of Q smoothing.
const Q_FLOOR: f64 = 0.5;

/// Gains of the protocol: the receiver's displacement gain `g` and the
/// ancilla-mixing feedforward gain `g3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainSpec {
    pub g: f64,
    pub g3: f64,
}

impl GainSpec {
    pub fn new(g: f64, g3: f64) -> Result<Self> {
        for gain in [g, g3] {
            if !gain.is_finite() {
                return Err(Error::InvalidFeedforwardGain(gain));
            }
        }
        Ok(Self { g, g3 })
    }

    /// Unit displacement gain (the regime of the closed-form fidelity).
    pub fn unit(g3: f64) -> Result<Self> {
        Self::new(1.0, g3)
    }
}

/// Everything a protocol run produces: the teleported-mode expressions, the
/// Q-function variances, and the fidelity.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportOutcome {
    pub x_tel: QuadExpr,
    pub p_tel: QuadExpr,
    pub sigma_x: f64,
    pub sigma_p: f64,
    pub fidelity: f64,
}

/// Teleported-mode quadratures over the four-mode basis (input, cloner
/// input, blank, ancilla), in closed form:
///
/// ```text
///     x_tel = x_in - sqrt(2) e^(-r1) x_2
///     p_tel = p_in + (2 - g3) e^(r0) p_1 + sqrt(2) (g3 - 1) e^(-rz) p_3
/// ```
///
/// [`composed_teleported_mode`] derives the same expressions by actually
/// running the protocol; the closed form keeps the exact cancellations
/// (at `g3 = 2` the `p_1` term is identically zero) that the composed
/// arithmetic can only reach up to amplified roundoff.
pub fn teleported_mode(r0: f64, r1: f64, rz: f64, g3: f64) -> Result<(QuadExpr, QuadExpr)> {
    for r in [r0, r1, rz] {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidSqueezing(r));
        }
    }
    if !g3.is_finite() {
        return Err(Error::InvalidFeedforwardGain(g3));
    }
    let x_tel = &QuadExpr::x(0, 4) - &(&QuadExpr::x(2, 4) * (SQRT2 * (-r1).exp()));
    let p_tel = &(&QuadExpr::p(0, 4) + &(&QuadExpr::p(1, 4) * ((2.0 - g3) * r0.exp())))
        + &(&QuadExpr::p(3, 4) * (SQRT2 * (g3 - 1.0) * (-rz).exp()));
    Ok((x_tel, p_tel))
}

/// The teleported mode derived by composing the protocol: clone mode 1,
/// combine the input with clone0 into the measured pair
/// `x_m = (x_in - x_c0)/sqrt(2)`, `p_n = (p_in + p_c0)/sqrt(2)`, homodyne
/// the ancilla's p, and displace clone1 by `sqrt(2) x_m` in x and
/// `sqrt(2) p_n + g3 p_z'` in p.
pub fn composed_teleported_mode(
    r0: f64,
    r1: f64,
    rz: f64,
    g3: f64,
) -> Result<(QuadExpr, QuadExpr)> {
    if !g3.is_finite() {
        return Err(Error::InvalidFeedforwardGain(g3));
    }
    let input = ModeOperator::initial(0, 4);
    let source = ModeOperator::prepared(1, 4, &InitialModeSpec::x_squeezed(r0)?);
    let blank = ModeOperator::prepared(2, 4, &InitialModeSpec::x_squeezed(r1)?);
    let ancilla = ModeOperator::prepared(3, 4, &InitialModeSpec::p_squeezed(rz)?);
    let (clone0, clone1, ancilla_out) = clone_network(&source, &blank, &ancilla)?;

    let x_m = &(&input.x - &clone0.x) * (1.0 / SQRT2);
    let p_n = &(&input.p + &clone0.p) * (1.0 / SQRT2);

    let x_tel = &clone1.x + &(&x_m * SQRT2);
    let p_tel = &(&clone1.p + &(&p_n * SQRT2)) + &(&ancilla_out.p * g3);
    Ok((x_tel, p_tel))
}

/// Q-function variances `(sigma_x, sigma_p)` of a teleported mode whose
/// input occupies basis slot 0.
///
/// Each variance is the coherent-state floor 1/2 plus the excess-noise
/// variance of the expression with the input-mode coefficients removed.
/// The input mode must be coherent: the floor encodes its vacuum noise.
pub fn q_variances(
    x_tel: &QuadExpr,
    p_tel: &QuadExpr,
    specs: &[InitialModeSpec],
) -> Result<(f64, f64)> {
    for expr in [x_tel, p_tel] {
        if expr.modes() != specs.len() {
            return Err(Error::DimensionMismatch {
                expr_modes: expr.modes(),
                spec_modes: specs.len(),
            });
        }
    }
    let input = specs.first().ok_or(Error::DimensionMismatch {
        expr_modes: x_tel.modes(),
        spec_modes: 0,
    })?;
    if input.squeezing() > 0.0 {
        return Err(Error::SqueezedInput(input.squeezing()));
    }
    let vx = variance(&x_tel.without_mode(0), specs)?;
    let vp = variance(&p_tel.without_mode(0), specs)?;
    Ok((Q_FLOOR + vx, Q_FLOOR + vp))
}

/// Teleportation fidelity of a coherent input of amplitude `(x_in, p_in)`
/// through a channel with Q variances `(sigma_x, sigma_p)` and displacement
/// gain `g`:
///
/// ```text
///     F = exp[-(1 - g)^2 (x_in^2 / (2 sigma_x) + p_in^2 / (2 sigma_p))]
///         / (2 sqrt(sigma_x sigma_p))
/// ```
///
/// At `g = 1` the amplitude drops out entirely.
pub fn teleport_fidelity(sigma_x: f64, sigma_p: f64, g: f64, x_in: f64, p_in: f64) -> Result<f64> {
    for sigma in [sigma_x, sigma_p] {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::NonPositiveVariance(sigma));
        }
    }
    if !g.is_finite() {
        return Err(Error::InvalidFeedforwardGain(g));
    }
    let mismatch = (1.0 - g) * (1.0 - g);
    let exponent = -mismatch * (x_in * x_in / (2.0 * sigma_x) + p_in * p_in / (2.0 * sigma_p));
    Ok(exponent.exp() / (2.0 * (sigma_x * sigma_p).sqrt()))
}

/// Feedforward gain minimising the p-quadrature Q variance at equal
/// squeezing `r` on all three cloner modes:
/// `g3* = 2 (e^(2r) + e^(-2r)) / (e^(2r) + 2 e^(-2r))`.
pub fn optimal_gain(r: f64) -> f64 {
    let (ep, em) = ((2.0 * r).exp(), (-2.0 * r).exp());
    2.0 * (ep + em) / (ep + 2.0 * em)
}

/// Optimum teleportation fidelity at equal squeezing `r`:
///
/// ```text
///     F_opt = [(1 + 3 e^(-4r) + 2 e^(-6r) + 2 e^(-2r)) / (1 + 2 e^(-4r))]^(-1/2)
/// ```
pub fn optimal_fidelity(r: f64) -> f64 {
    let (e2, e4, e6) = ((-2.0 * r).exp(), (-4.0 * r).exp(), (-6.0 * r).exp());
    ((1.0 + 3.0 * e4 + 2.0 * e6 + 2.0 * e2) / (1.0 + 2.0 * e4)).powf(-0.5)
}

/// Optimum fidelity of the tritter-based baseline protocol:
/// `F'_opt = [(1 + e^(-2r))(1 + 3 / (2 e^(2r) + e^(-2r)))]^(-1/2)`.
pub fn loock_fidelity(r: f64) -> f64 {
    let (ep, em) = ((2.0 * r).exp(), (-2.0 * r).exp());
    ((1.0 + em) * (1.0 + 3.0 / (2.0 * ep + em))).powf(-0.5)
}

/// Q variance of the teleported p quadrature at equal squeezing `r` and
/// feedforward gain `g3`, through the full pipeline.
pub fn pipeline_sigma_p(r: f64, g3: f64) -> Result<f64> {
    let (x_tel, p_tel) = teleported_mode(r, r, r, g3)?;
    let specs = [InitialModeSpec::vacuum(); 4];
    Ok(q_variances(&x_tel, &p_tel, &specs)?.1)
}

/// Bracketed minimiser of the pipeline `sigma_p` over `g3 in [0, 4]`;
/// numeric cross-check for [`optimal_gain`].
///
/// Golden-section narrows the bracket; a parabolic-vertex step finishes,
/// since the variance is quadratic in the gain and pure golden-section
/// stalls on value-level roundoff once the bracket is flat.
pub fn numeric_optimal_gain(r: f64) -> Result<f64> {
    let eval = |g3: f64| pipeline_sigma_p(r, g3);
    let ratio = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, 4.0);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    while hi - lo > 1e-4 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = eval(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = eval(d)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    let (f_lo, f_mid, f_hi) = (eval(lo)?, eval(mid)?, eval(hi)?);
    let (dl, dh) = (mid - lo, mid - hi);
    let numer = dl * dl * (f_mid - f_hi) - dh * dh * (f_mid - f_lo);
    let denom = dl * (f_mid - f_hi) - dh * (f_mid - f_lo);
    if denom.abs() < f64::MIN_POSITIVE {
        return Ok(mid);
    }
    Ok((mid - 0.5 * numer / denom).clamp(lo, hi))
}

/// One grid point of the fidelity comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub r: f64,
    pub f_opt: f64,
    pub f_loock: f64,
    pub e_n: f64,
}

/// Fidelities of both protocols and the clone entanglement over an
/// inclusive grid `r = r_min, r_min + step, ...` up to `r_max`.
pub fn comparison_curve(r_min: f64, r_max: f64, step: f64) -> Result<Vec<ComparisonRow>> {
    if !r_min.is_finite() || !r_max.is_finite() || !step.is_finite() {
        return Err(Error::InvalidGrid);
    }
    if r_min < 0.0 || r_min >= r_max || step <= 0.0 {
        return Err(Error::InvalidGrid);
    }
    let count = ((r_max - r_min) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let r = r_min + i as f64 * step;
            let e_n = ppt_nu_minus(&TwoModeCM::from_squeezing(r, r)?)?.e_n;
            Ok(ComparisonRow {
                r,
                f_opt: optimal_fidelity(r),
                f_loock: loock_fidelity(r),
                e_n,
            })
        })
        .collect()
}

/// Run the whole protocol at squeezing `(r0, r1, rz)` for a coherent input
/// of the given amplitude.
pub fn protocol_outcome(
    r0: f64,
    r1: f64,
    rz: f64,
    gain: &GainSpec,
    amplitude: (f64, f64),
) -> Result<TeleportOutcome> {
    let (x_tel, p_tel) = teleported_mode(r0, r1, rz, gain.g3)?;
    let specs = [
        InitialModeSpec::coherent(amplitude.0, amplitude.1),
        InitialModeSpec::vacuum(),
        InitialModeSpec::vacuum(),
        InitialModeSpec::vacuum(),
    ];
    let (sigma_x, sigma_p) = q_variances(&x_tel, &p_tel, &specs)?;
    let fidelity = teleport_fidelity(sigma_x, sigma_p, gain.g, amplitude.0, amplitude.1)?;
    Ok(TeleportOutcome {
        x_tel,
        p_tel,
        sigma_x,
        sigma_p,
        fidelity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-12;

    /// Closed-form coefficient rows of the teleported mode over the basis
    /// (x_in, p_in, x_1, p_1, x_2, p_2, x_z, p_z).
    fn expected_coeffs(r0: f64, r1: f64, rz: f64, g3: f64) -> ([f64; 8], [f64; 8]) {
        let mut x = [0.0; 8];
        let mut p = [0.0; 8];
        x[0] = 1.0;
        x[4] = -SQRT2 * (-r1).exp();
        p[1] = 1.0;
        p[3] = (2.0 - g3) * r0.exp();
        p[7] = SQRT2 * (g3 - 1.0) * (-rz).exp();
        (x, p)
    }

    #[test]
    fn coefficients_match_the_closed_form_for_random_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..50 {
            let r: f64 = rng.random_range(0.0..2.0);
            let g3: f64 = rng.random_range(0.0..4.0);
            let (x_tel, p_tel) = teleported_mode(r, r, r, g3).unwrap();
            let (ex, ep) = expected_coeffs(r, r, r, g3);
            for (got, want) in x_tel.coeffs().iter().zip(&ex) {
                assert!((got - want).abs() < TOL);
            }
            for (got, want) in p_tel.coeffs().iter().zip(&ep) {
                assert!((got - want).abs() < TOL);
            }
        }
    }

    #[test]
    fn protocol_composition_derives_the_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(68);
        for _ in 0..50 {
            let r0: f64 = rng.random_range(0.0..2.0);
            let r1: f64 = rng.random_range(0.0..2.0);
            let rz: f64 = rng.random_range(0.0..2.0);
            let g3: f64 = rng.random_range(0.0..4.0);
            let (cx, cp) = composed_teleported_mode(r0, r1, rz, g3).unwrap();
            let (dx, dp) = teleported_mode(r0, r1, rz, g3).unwrap();
            // composed coefficients carry roundoff amplified by the largest
            // intermediate magnitude e^r
            let tol = 1e-12 * r0.max(r1).max(rz).exp().max(1.0);
            for (got, want) in cx.coeffs().iter().zip(dx.coeffs()) {
                assert!((got - want).abs() < tol, "{got} vs {want}");
            }
            for (got, want) in cp.coeffs().iter().zip(dp.coeffs()) {
                assert!((got - want).abs() < tol, "{got} vs {want}");
            }
        }
    }

    #[test]
    fn infinite_squeezing_at_gain_two_is_the_identity_channel() {
        let (x_tel, p_tel) = teleported_mode(20.0, 20.0, 20.0, 2.0).unwrap();
        assert!((x_tel.x_coeff(0) - 1.0).abs() < TOL);
        assert!((p_tel.p_coeff(0) - 1.0).abs() < TOL);
        for k in 1..4 {
            assert!(x_tel.x_coeff(k).abs() < 1e-8);
            assert!(p_tel.p_coeff(k).abs() < 1e-8);
        }
    }

    #[test]
    fn unit_feedforward_leaves_a_single_p_noise_term() {
        let (_, p_tel) = teleported_mode(0.7, 0.7, 0.7, 1.0).unwrap();
        assert!((p_tel.p_coeff(1) - 0.7_f64.exp()).abs() < TOL);
        assert!(p_tel.p_coeff(3).abs() < TOL);
    }

    #[test]
    fn q_variances_reproduce_the_unsqueezed_optimum_point() {
        let (x_tel, p_tel) = teleported_mode(0.0, 0.0, 0.0, 4.0 / 3.0).unwrap();
        let specs = [InitialModeSpec::vacuum(); 4];
        let (sx, sp) = q_variances(&x_tel, &p_tel, &specs).unwrap();
        assert!((sx - 1.0).abs() < TOL);
        assert!((sp - 2.0 / 3.0).abs() < TOL);
    }

    #[test]
    fn q_variances_approach_the_floor_for_large_squeezing() {
        let (x_tel, p_tel) = teleported_mode(20.0, 20.0, 20.0, 2.0).unwrap();
        let specs = [InitialModeSpec::vacuum(); 4];
        let (sx, sp) = q_variances(&x_tel, &p_tel, &specs).unwrap();
        assert!((sx - 0.5).abs() < 1e-10);
        assert!((sp - 0.5).abs() < 1e-10);
    }

    #[test]
    fn sigma_x_does_not_depend_on_the_feedforward_gain() {
        let specs = [InitialModeSpec::vacuum(); 4];
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let reference = {
            let (x_tel, p_tel) = teleported_mode(0.4, 0.4, 0.4, 0.0).unwrap();
            q_variances(&x_tel, &p_tel, &specs).unwrap().0
        };
        for _ in 0..20 {
            let g3: f64 = rng.random_range(0.0..4.0);
            let (x_tel, p_tel) = teleported_mode(0.4, 0.4, 0.4, g3).unwrap();
            let (sx, _) = q_variances(&x_tel, &p_tel, &specs).unwrap();
            assert!((sx - reference).abs() < TOL);
        }
    }

    #[test]
    fn q_variances_reject_a_squeezed_input_mode() {
        let (x_tel, p_tel) = teleported_mode(0.0, 0.0, 0.0, 1.0).unwrap();
        let mut specs = [InitialModeSpec::vacuum(); 4];
        specs[0] = InitialModeSpec::x_squeezed(0.5).unwrap();
        assert!(matches!(
            q_variances(&x_tel, &p_tel, &specs),
            Err(Error::SqueezedInput(_))
        ));
    }

    #[test]
    fn unit_gain_fidelity_ignores_the_input_amplitude() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let base = teleport_fidelity(1.0, 2.0 / 3.0, 1.0, 0.0, 0.0).unwrap();
        for _ in 0..20 {
            let x: f64 = rng.random_range(-10.0..10.0);
            let p: f64 = rng.random_range(-10.0..10.0);
            let f = teleport_fidelity(1.0, 2.0 / 3.0, 1.0, x, p).unwrap();
            assert_eq!(f, base);
        }
        assert!((base - 1.0 / (2.0 * (2.0 / 3.0_f64).sqrt())).abs() < TOL);
    }

    #[test]
    fn perfect_channel_and_vanishing_amplitude_edge_cases() {
        assert!((teleport_fidelity(0.5, 0.5, 1.0, 3.0, -2.0).unwrap() - 1.0).abs() < TOL);
        let at_origin = teleport_fidelity(1.0, 2.0 / 3.0, 0.9, 0.0, 0.0).unwrap();
        let at_unit_gain = teleport_fidelity(1.0, 2.0 / 3.0, 1.0, 0.0, 0.0).unwrap();
        assert!((at_origin - at_unit_gain).abs() < TOL);
        assert!(matches!(
            teleport_fidelity(0.0, 0.5, 1.0, 0.0, 0.0),
            Err(Error::NonPositiveVariance(_))
        ));
    }

    #[test]
    fn optimal_gain_fixed_points() {
        assert_eq!(optimal_gain(0.0), 4.0 / 3.0);
        assert!((optimal_gain(20.0) - 2.0).abs() < 1e-8);
        assert!((optimal_gain(0.5) - 1.786_986_042_161_598_4).abs() < 1e-12);
    }

    #[test]
    fn closed_form_gain_agrees_with_the_numeric_minimiser() {
        for r in [0.0, 0.3, 0.5, 1.0, 2.0] {
            let closed = optimal_gain(r);
            let numeric = numeric_optimal_gain(r).unwrap();
            assert!(
                (closed - numeric).abs() < 1e-8,
                "r={r}: closed {closed} vs numeric {numeric}"
            );
        }
    }

    #[test]
    fn optimal_gain_is_the_argmin_of_sigma_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        for r in [0.0, 0.5, 1.0, 2.0] {
            let best = pipeline_sigma_p(r, optimal_gain(r)).unwrap();
            for _ in 0..1000 {
                let g3: f64 = rng.random_range(0.0..4.0);
                assert!(best <= pipeline_sigma_p(r, g3).unwrap() + TOL);
            }
        }
    }

    #[test]
    fn optimal_fidelity_fixed_points() {
        assert!((optimal_fidelity(0.0) - 3.0_f64.sqrt() / (2.0 * 2.0_f64.sqrt())).abs() < TOL);
        assert!((optimal_fidelity(1.0) - 0.882_658_030_125_437_3).abs() < 1e-12);
        assert!((optimal_fidelity(20.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn baseline_fidelity_fixed_points() {
        assert!((loock_fidelity(0.0) - 0.5).abs() < TOL);
        assert!((loock_fidelity(1.0) - 0.856_322_528_510_492_1).abs() < 1e-12);
        assert!((loock_fidelity(20.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn closed_form_fidelity_equals_the_full_pipeline_at_optimal_gain() {
        let specs = [InitialModeSpec::vacuum(); 4];
        for i in 0..=20 {
            let r = 0.25 * i as f64;
            let g3 = optimal_gain(r);
            let (x_tel, p_tel) = composed_teleported_mode(r, r, r, g3).unwrap();
            let (sx, sp) = q_variances(&x_tel, &p_tel, &specs).unwrap();
            let pipeline = teleport_fidelity(sx, sp, 1.0, 0.0, 0.0).unwrap();
            assert!(
                (pipeline - optimal_fidelity(r)).abs() < 1e-12,
                "r={r}: pipeline {pipeline} vs closed {}",
                optimal_fidelity(r)
            );
        }
    }

    #[test]
    fn both_fidelities_increase_with_squeezing_and_stay_bounded() {
        let rows = comparison_curve(0.0, 3.0, 0.01).unwrap();
        assert_eq!(rows.len(), 301);
        for pair in rows.windows(2) {
            assert!(pair[1].f_opt > pair[0].f_opt);
            assert!(pair[1].f_loock > pair[0].f_loock);
        }
        for row in &rows {
            assert!(row.f_opt <= 1.0 && row.f_loock <= 1.0);
            assert!(row.f_opt >= row.f_loock);
        }
        assert!((rows[0].f_opt - 0.612_372_435_695_794_6).abs() < 1e-12);
        assert!((rows[0].f_loock - 0.5).abs() < TOL);
        assert!((rows[0].f_opt - rows[0].f_loock - 0.112_372_435_695_794_6).abs() < 1e-12);
    }

    #[test]
    fn comparison_curve_rejects_bad_grids() {
        assert!(matches!(
            comparison_curve(1.0, 1.0, 0.1),
            Err(Error::InvalidGrid)
        ));
        assert!(matches!(
            comparison_curve(0.0, 1.0, 0.0),
            Err(Error::InvalidGrid)
        ));
        assert!(matches!(
            comparison_curve(-0.5, 1.0, 0.1),
            Err(Error::InvalidGrid)
        ));
    }

    #[test]
    fn protocol_outcome_satisfies_its_bounds() {
        let gain = GainSpec::unit(optimal_gain(0.3)).unwrap();
        let out = protocol_outcome(0.3, 0.3, 0.3, &gain, (1.5, -0.5)).unwrap();
        assert!(out.sigma_x >= 0.5 && out.sigma_p >= 0.5);
        assert!(out.fidelity > 0.0 && out.fidelity <= 1.0);
        assert!((out.fidelity - optimal_fidelity(0.3)).abs() < 1e-12);
    }

    #[test]
    fn gain_spec_rejects_non_finite_values() {
        assert!(GainSpec::new(1.0, f64::NAN).is_err());
        assert!(GainSpec::new(f64::INFINITY, 1.0).is_err());
        assert!(teleported_mode(0.0, 0.0, 0.0, f64::NAN).is_err());
    }
}
