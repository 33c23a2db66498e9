//! Stochastic phase-space oracle: samples the Gaussian distribution of the
//! initial quadratures, walks the measure-and-displace protocol shot by
//! shot, and re-estimates covariances and the teleportation fidelity
//! empirically.
//!
//! For Gaussian circuits with homodyne measurement and classical
//! feedforward, sampling the Wigner distribution of the initial modes and
//! pushing the samples through the transformation is exact, which is what
//! makes these estimators a ground truth for the analytic path.
//!
//! Determinism contract: every estimator splits its shots over
//! `shards` counter-based RNG streams derived from `(seed, shard index)`
//! and merges the per-shard accumulators in shard order, so results are
//! bit-identical for identical `(shots, seed, shards)` no matter how the
//! shards are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{InitialModeSpec, QuadExpr};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Shot budget, seed, and shard count of a Monte-Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub shots: u64,
    pub seed: u64,
    pub shards: u32,
}

impl McConfig {
    pub fn new(shots: u64, seed: u64, shards: u32) -> Result<Self> {
        if shots < 1 {
            return Err(Error::TooFewShots { min: 1, got: shots });
        }
        if shards < 1 {
            return Err(Error::NoShards);
        }
        Ok(Self {
            shots,
            seed,
            shards,
        })
    }
}

/// Summary of one estimated quantity. The producing function documents
/// which field carries the point estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub variance: f64,
    pub standard_error: f64,
    pub shots: u64,
}

/// One-pass (Welford) accumulator for the first and second joint moments of
/// a pair of streams, with an exact deterministic pairwise merge.
#[derive(Debug, Clone, Copy, Default)]
struct BivariateAccumulator {
    n: u64,
    mean_a: f64,
    mean_b: f64,
    m2_a: f64,
    m2_b: f64,
    c_ab: f64,
}

impl BivariateAccumulator {
    fn push(&mut self, a: f64, b: f64) {
        self.n += 1;
        let n = self.n as f64;
        let da = a - self.mean_a;
        self.mean_a += da / n;
        let db = b - self.mean_b;
        self.mean_b += db / n;
        self.m2_a += da * (a - self.mean_a);
        self.m2_b += db * (b - self.mean_b);
        self.c_ab += da * (b - self.mean_b);
    }

    fn merge(self, other: Self) -> Self {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        let da = other.mean_a - self.mean_a;
        let db = other.mean_b - self.mean_b;
        let w = na * nb / n;
        Self {
            n: self.n + other.n,
            mean_a: self.mean_a + da * nb / n,
            mean_b: self.mean_b + db * nb / n,
            m2_a: self.m2_a + other.m2_a + da * da * w,
            m2_b: self.m2_b + other.m2_b + db * db * w,
            c_ab: self.c_ab + other.c_ab + da * db * w,
        }
    }

    /// Unbiased sample variance of the first stream.
    fn var_a(&self) -> f64 {
        self.m2_a / (self.n - 1) as f64
    }

    fn var_b(&self) -> f64 {
        self.m2_b / (self.n - 1) as f64
    }

    /// Unbiased sample covariance.
    fn covariance(&self) -> f64 {
        self.c_ab / (self.n - 1) as f64
    }
}

/// RNG stream for one shard: a fixed-seed ChaCha generator on its own
/// counter stream, so shards are independent and reproducible.
fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// Shots per shard: as even a split as possible, first shards take the
/// remainder.
fn shard_counts(shots: u64, shards: u32) -> Vec<u64> {
    let base = shots / shards as u64;
    let rem = shots % shards as u64;
    (0..shards as u64)
        .map(|i| base + u64::from(i < rem))
        .collect()
}

/// Run `shot` on every shard and merge the accumulators in shard order.
fn accumulate_sharded<F>(cfg: &McConfig, shot: F) -> BivariateAccumulator
where
    F: Fn(&mut ChaCha8Rng) -> (f64, f64) + Sync,
{
    let counts = shard_counts(cfg.shots, cfg.shards);
    let accs: Vec<BivariateAccumulator> = (0..cfg.shards as u64)
        .into_par_iter()
        .map(|shard| {
            let mut rng = shard_rng(cfg.seed, shard);
            let mut acc = BivariateAccumulator::default();
            for _ in 0..counts[shard as usize] {
                let (a, b) = shot(&mut rng);
                acc.push(a, b);
            }
            acc
        })
        .collect();
    accs.into_iter()
        .fold(BivariateAccumulator::default(), BivariateAccumulator::merge)
}

/// Draw one sample of all initial quadratures, ordered
/// `(x_0, p_0, x_1, p_1, ...)`: independent Gaussians with the variance and
/// mean declared by each mode spec.
pub fn sample_shot<R: Rng + ?Sized>(specs: &[InitialModeSpec], rng: &mut R) -> Vec<f64> {
    let mut sample = Vec::with_capacity(2 * specs.len());
    for spec in specs {
        let (mx, mp) = spec.displacement();
        let zx: f64 = rng.sample(StandardNormal);
        let zp: f64 = rng.sample(StandardNormal);
        sample.push(mx + spec.x_variance().sqrt() * zx);
        sample.push(mp + spec.p_variance().sqrt() * zp);
    }
    sample
}

/// Empirical covariance of two quadrature expressions over modes prepared
/// per `specs`.
///
/// In the returned estimate, `mean` is the sample mean of `expr1`,
/// `variance` is the unbiased sample covariance of the pair (the estimated
/// quantity), and `standard_error` is the Gaussian-model standard error of
/// that covariance, `sqrt((v1 v2 + c^2) / (n - 1))` — which reduces to
/// `variance * sqrt(2 / (n - 1))` when both expressions coincide.
pub fn estimate_covariance(
    expr1: &QuadExpr,
    expr2: &QuadExpr,
    specs: &[InitialModeSpec],
    cfg: &McConfig,
) -> Result<McEstimate> {
    for expr in [expr1, expr2] {
        if expr.modes() != specs.len() {
            return Err(Error::DimensionMismatch {
                expr_modes: expr.modes(),
                spec_modes: specs.len(),
            });
        }
    }
    if cfg.shots < 2 {
        return Err(Error::TooFewShots {
            min: 2,
            got: cfg.shots,
        });
    }
    let acc = accumulate_sharded(cfg, |rng| {
        let sample = sample_shot(specs, rng);
        (expr1.eval(&sample), expr2.eval(&sample))
    });
    let covariance = acc.covariance();
    let standard_error =
        ((acc.var_a() * acc.var_b() + covariance * covariance) / (acc.n - 1) as f64).sqrt();
    Ok(McEstimate {
        mean: acc.mean_a,
        variance: covariance,
        standard_error,
        shots: acc.n,
    })
}

/// One shot of the measure-and-displace protocol at equal squeezing `r >= 0`
/// on the three cloner modes, feedforward gain `g3`, and a coherent input of
/// the given amplitude. Returns the receiver's final `(x, p)`.
///
/// The walk is numeric end to end — sample the initial vacuum quadratures,
/// form the clone-output values from the closed-form rows, compute the
/// measurement outcomes, apply the displacement — and shares no code with
/// the symbolic pipeline it cross-checks.
pub fn run_teleport_shot<R: Rng + ?Sized>(
    r: f64,
    g3: f64,
    amplitude: (f64, f64),
    rng: &mut R,
) -> (f64, f64) {
    let mut z = [0.0; 8];
    for slot in &mut z {
        *slot = 0.5 * rng.sample::<f64, _>(StandardNormal);
    }
    let (x_in, p_in) = (amplitude.0 + z[0], amplitude.1 + z[1]);
    let (x0, p0, x1, p1, xz, pz) = (z[2], z[3], z[4], z[5], z[6], z[7]);
    let (em, ep) = ((-r).exp(), r.exp());

    // clone outputs and ancilla output, with the input/blank squeezed in x
    // and the ancilla in p
    let x_c0 = x0 * em + x1 * em / SQRT2 + xz * ep / SQRT2;
    let p_c0 = p0 * ep + p1 * ep / SQRT2 - pz * em / SQRT2;
    let x_c1 = x0 * em - x1 * em / SQRT2 + xz * ep / SQRT2;
    let p_c1 = p0 * ep - p1 * ep / SQRT2 - pz * em / SQRT2;
    let p_anc = -p0 * ep + SQRT2 * pz * em;

    // sender's homodyne outcomes
    let x_m = (x_in - x_c0) / SQRT2;
    let p_n = (p_in + p_c0) / SQRT2;

    // receiver's displacement
    let x_tel = x_c1 + SQRT2 * x_m;
    let p_tel = p_c1 + SQRT2 * p_n + g3 * p_anc;
    (x_tel, p_tel)
}

/// Empirical teleportation fidelity at equal squeezing `r` and feedforward
/// gain `g3`, from the sample variances of the teleported quadratures.
///
/// Each Q variance is the coherent floor plus the empirical excess noise,
/// i.e. `1/4 + Var(q_tel)`; the fidelity is `1 / (2 sqrt(sigma_x sigma_p))`
/// and its standard error is propagated by the delta method. In the
/// returned estimate, `mean` is the fidelity and `variance` its squared
/// standard error.
pub fn estimate_teleport_fidelity(r: f64, g3: f64, cfg: &McConfig) -> Result<McEstimate> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::InvalidSqueezing(r));
    }
    if cfg.shots < 100 {
        return Err(Error::TooFewShots {
            min: 100,
            got: cfg.shots,
        });
    }
    let acc = accumulate_sharded(cfg, |rng| run_teleport_shot(r, g3, (0.0, 0.0), rng));
    let (vx, vp) = (acc.var_a(), acc.var_b());
    let (sigma_x, sigma_p) = (0.25 + vx, 0.25 + vp);
    let fidelity = 1.0 / (2.0 * (sigma_x * sigma_p).sqrt());
    let ratio = (vx / sigma_x).powi(2) + (vp / sigma_p).powi(2);
    let se_sq = fidelity * fidelity * ratio / (2.0 * (acc.n - 1) as f64);
    Ok(McEstimate {
        mean: fidelity,
        variance: se_sq,
        standard_error: se_sq.sqrt(),
        shots: acc.n,
    })
}
