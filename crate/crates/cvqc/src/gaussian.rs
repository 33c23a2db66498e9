//! Quadrature observables as linear forms over independent initial Gaussian
//! modes, plus the moment engine that turns them into covariance matrices.
//!
//! Every circuit output in this crate is a [`QuadExpr`]: a linear combination
//! of the initial quadratures `x_k, p_k` of a fixed set of modes, plus a
//! scalar offset. First moments live in the offsets and in the mode specs;
//! second moments are central and depend only on the coefficients and on the
//! per-mode variances declared in [`InitialModeSpec`].
//!
//! Units: a vacuum quadrature has variance 1/4, so an x-squeezed mode has
//! x-variance `e^(-2r)/4` and p-variance `e^(2r)/4`.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Which quadrature of a mode carries the reduced variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqueezeAxis {
    X,
    P,
}

/// Preparation of one initial mode: squeezing magnitude, squeezed axis, and
/// coherent displacement `(x̄, p̄)` in quadrature units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialModeSpec {
    squeezing: f64,
    axis: SqueezeAxis,
    displacement: (f64, f64),
}

impl InitialModeSpec {
    pub fn new(squeezing: f64, axis: SqueezeAxis, displacement: (f64, f64)) -> Result<Self> {
        if !squeezing.is_finite() || squeezing < 0.0 {
            return Err(Error::InvalidSqueezing(squeezing));
        }
        Ok(Self {
            squeezing,
            axis,
            displacement,
        })
    }

    /// Undisplaced vacuum (r = 0).
    pub fn vacuum() -> Self {
        Self {
            squeezing: 0.0,
            axis: SqueezeAxis::X,
            displacement: (0.0, 0.0),
        }
    }

    /// Coherent state: vacuum noise displaced to `(x̄, p̄)`.
    pub fn coherent(x: f64, p: f64) -> Self {
        Self {
            displacement: (x, p),
            ..Self::vacuum()
        }
    }

    /// Vacuum squeezed in x with parameter `r >= 0`.
    pub fn x_squeezed(r: f64) -> Result<Self> {
        Self::new(r, SqueezeAxis::X, (0.0, 0.0))
    }

    /// Vacuum squeezed in p with parameter `r >= 0`.
    pub fn p_squeezed(r: f64) -> Result<Self> {
        Self::new(r, SqueezeAxis::P, (0.0, 0.0))
    }

    pub fn with_displacement(mut self, x: f64, p: f64) -> Self {
        self.displacement = (x, p);
        self
    }

    pub fn squeezing(&self) -> f64 {
        self.squeezing
    }

    pub fn axis(&self) -> SqueezeAxis {
        self.axis
    }

    pub fn displacement(&self) -> (f64, f64) {
        self.displacement
    }

    /// Variance of the x quadrature of this mode as prepared.
    pub fn x_variance(&self) -> f64 {
        match self.axis {
            SqueezeAxis::X => 0.25 * (-2.0 * self.squeezing).exp(),
            SqueezeAxis::P => 0.25 * (2.0 * self.squeezing).exp(),
        }
    }

    /// Variance of the p quadrature of this mode as prepared.
    pub fn p_variance(&self) -> f64 {
        match self.axis {
            SqueezeAxis::X => 0.25 * (2.0 * self.squeezing).exp(),
            SqueezeAxis::P => 0.25 * (-2.0 * self.squeezing).exp(),
        }
    }
}

/// A quadrature observable written as a linear form over the initial
/// quadratures of `N` modes, plus a scalar offset.
///
/// Coefficient slot `2k` multiplies `x_k`, slot `2k + 1` multiplies `p_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadExpr {
    coeffs: Vec<f64>,
    offset: f64,
}

impl QuadExpr {
    /// The zero observable over an `modes`-mode basis.
    pub fn zero(modes: usize) -> Self {
        Self {
            coeffs: vec![0.0; 2 * modes],
            offset: 0.0,
        }
    }

    /// The bare initial quadrature `x_mode`.
    pub fn x(mode: usize, modes: usize) -> Self {
        let mut e = Self::zero(modes);
        e.coeffs[2 * mode] = 1.0;
        e
    }

    /// The bare initial quadrature `p_mode`.
    pub fn p(mode: usize, modes: usize) -> Self {
        let mut e = Self::zero(modes);
        e.coeffs[2 * mode + 1] = 1.0;
        e
    }

    pub fn modes(&self) -> usize {
        self.coeffs.len() / 2
    }

    /// Coefficient slots in `(x_0, p_0, x_1, p_1, ...)` order.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    /// Coefficient of `x_mode`.
    pub fn x_coeff(&self, mode: usize) -> f64 {
        self.coeffs[2 * mode]
    }

    /// Coefficient of `p_mode`.
    pub fn p_coeff(&self, mode: usize) -> f64 {
        self.coeffs[2 * mode + 1]
    }

    /// Evaluate against sampled basis values (offset included).
    pub fn eval(&self, sample: &[f64]) -> f64 {
        assert_eq!(
            sample.len(),
            self.coeffs.len(),
            "sample length must match coefficient count"
        );
        self.offset
            + self
                .coeffs
                .iter()
                .zip(sample)
                .map(|(c, s)| c * s)
                .sum::<f64>()
    }

    /// Copy with the coefficients of one mode (both quadratures) zeroed.
    pub fn without_mode(&self, mode: usize) -> Self {
        let mut e = self.clone();
        e.coeffs[2 * mode] = 0.0;
        e.coeffs[2 * mode + 1] = 0.0;
        e
    }

    fn check_same_basis(&self, other: &Self) {
        assert_eq!(
            self.coeffs.len(),
            other.coeffs.len(),
            "quadrature expressions span different bases"
        );
    }
}

impl Add for &QuadExpr {
    type Output = QuadExpr;

    fn add(self, rhs: &QuadExpr) -> QuadExpr {
        self.check_same_basis(rhs);
        QuadExpr {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            offset: self.offset + rhs.offset,
        }
    }
}

impl Sub for &QuadExpr {
    type Output = QuadExpr;

    fn sub(self, rhs: &QuadExpr) -> QuadExpr {
        self.check_same_basis(rhs);
        QuadExpr {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            offset: self.offset - rhs.offset,
        }
    }
}

impl Mul<f64> for &QuadExpr {
    type Output = QuadExpr;

    fn mul(self, k: f64) -> QuadExpr {
        QuadExpr {
            coeffs: self.coeffs.iter().map(|c| k * c).collect(),
            offset: k * self.offset,
        }
    }
}

impl Mul<f64> for QuadExpr {
    type Output = QuadExpr;

    fn mul(self, k: f64) -> QuadExpr {
        &self * k
    }
}

/// A mode carried through a circuit: its x and p quadratures as linear forms
/// over the initial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    pub x: QuadExpr,
    pub p: QuadExpr,
}

impl ModeOperator {
    /// The untouched initial mode `mode` of an `modes`-mode basis, with unit
    /// coefficients on its own quadratures. Use together with the matching
    /// [`InitialModeSpec`] list so squeezing enters through the basis
    /// variances.
    pub fn initial(mode: usize, modes: usize) -> Self {
        Self {
            x: QuadExpr::x(mode, modes),
            p: QuadExpr::p(mode, modes),
        }
    }

    /// The prepared mode with squeezing folded into the coefficients and the
    /// displacement carried in the offsets. Moments of the result are taken
    /// against a vacuum basis: the squeezing must not be counted again
    /// through the spec list.
    pub fn prepared(mode: usize, modes: usize, spec: &InitialModeSpec) -> Self {
        let (xs, ps) = match spec.axis() {
            SqueezeAxis::X => ((-spec.squeezing()).exp(), spec.squeezing().exp()),
            SqueezeAxis::P => (spec.squeezing().exp(), (-spec.squeezing()).exp()),
        };
        let (dx, dp) = spec.displacement();
        Self {
            x: (QuadExpr::x(mode, modes) * xs).with_offset(dx),
            p: (QuadExpr::p(mode, modes) * ps).with_offset(dp),
        }
    }

    pub fn modes(&self) -> usize {
        self.x.modes()
    }
}

/// Symplectic product of the x and p coefficient rows of `op`.
///
/// A value of 1 means the output pair preserves the canonical commutator of
/// the basis modes; every unitary circuit element must keep this at 1.
pub fn canonical_check(op: &ModeOperator) -> f64 {
    let (xc, pc) = (op.x.coeffs(), op.p.coeffs());
    debug_assert_eq!(xc.len(), pc.len());
    (0..xc.len() / 2)
        .map(|k| xc[2 * k] * pc[2 * k + 1] - xc[2 * k + 1] * pc[2 * k])
        .sum()
}

fn check_dims(expr: &QuadExpr, specs: &[InitialModeSpec]) -> Result<()> {
    if expr.modes() != specs.len() {
        return Err(Error::DimensionMismatch {
            expr_modes: expr.modes(),
            spec_modes: specs.len(),
        });
    }
    Ok(())
}

fn basis_variance(slot: usize, specs: &[InitialModeSpec]) -> f64 {
    let spec = &specs[slot / 2];
    if slot.is_multiple_of(2) {
        spec.x_variance()
    } else {
        spec.p_variance()
    }
}

/// Variance of `q` for modes prepared per `specs`. Offsets are ignored
/// (central moment); basis quadratures are independent by preparation.
pub fn variance(q: &QuadExpr, specs: &[InitialModeSpec]) -> Result<f64> {
    check_dims(q, specs)?;
    Ok(q.coeffs()
        .iter()
        .enumerate()
        .map(|(slot, c)| c * c * basis_variance(slot, specs))
        .sum())
}

/// Symmetrized second moment of `q1` and `q2`. The basis modes are
/// independent and each mode's x and p are uncorrelated at preparation, so
/// this reduces to a weighted dot product of the coefficient rows.
pub fn covariance(q1: &QuadExpr, q2: &QuadExpr, specs: &[InitialModeSpec]) -> Result<f64> {
    check_dims(q1, specs)?;
    check_dims(q2, specs)?;
    Ok(q1
        .coeffs()
        .iter()
        .zip(q2.coeffs())
        .enumerate()
        .map(|(slot, (a, b))| a * b * basis_variance(slot, specs))
        .sum())
}

/// Symmetric matrix of second moments of a set of mode operators, ordered
/// `(x_1, p_1, x_2, p_2, ...)`. Vacuum single mode gives `diag(1/4, 1/4)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl CovMatrix {
    /// Build from row-major entries, enforcing symmetry and positive
    /// diagonal.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidCovariance(format!(
                "expected {} entries for dim {}, got {}",
                dim * dim,
                dim,
                entries.len()
            )));
        }
        let cm = Self { dim, entries };
        for i in 0..dim {
            let diag = cm.get(i, i);
            if diag.is_nan() || diag <= 0.0 {
                return Err(Error::InvalidCovariance(format!(
                    "diagonal entry ({i},{i}) = {} is not positive",
                    cm.get(i, i)
                )));
            }
            for j in 0..i {
                if cm.get(i, j) != cm.get(j, i) {
                    return Err(Error::InvalidCovariance(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(cm)
    }

    /// Single-mode diagonal matrix `diag(xx, pp)`.
    pub fn single_mode(xx: f64, pp: f64) -> Result<Self> {
        Self::new(2, vec![xx, 0.0, 0.0, pp])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// Determinant (implemented for the 2x2 blocks this crate works with).
    pub fn det2(&self) -> Result<f64> {
        if self.dim != 2 {
            return Err(Error::InvalidCovariance(format!(
                "det2 called on a dim-{} matrix",
                self.dim
            )));
        }
        Ok(self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0))
    }

    /// Reduced state over the listed modes: keep their rows and columns,
    /// dropping everything else. Order of `modes` fixes the output ordering.
    pub fn reduced(&self, modes: &[usize]) -> Self {
        let slots: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let dim = slots.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for &i in &slots {
            for &j in &slots {
                entries.push(self.get(i, j));
            }
        }
        Self { dim, entries }
    }
}

/// Covariance matrix of `ops` with modes prepared per `specs`.
pub fn covariance_matrix(ops: &[ModeOperator], specs: &[InitialModeSpec]) -> Result<CovMatrix> {
    if ops.is_empty() {
        return Err(Error::EmptyOperators);
    }
    let modes = ops[0].modes();
    for op in ops {
        if op.modes() != modes {
            return Err(Error::BasisMismatch(modes, op.modes()));
        }
    }
    let exprs: Vec<&QuadExpr> = ops.iter().flat_map(|op| [&op.x, &op.p]).collect();
    let dim = exprs.len();
    let mut entries = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..=i {
            let c = covariance(exprs[i], exprs[j], specs)?;
            entries[i * dim + j] = c;
            entries[j * dim + i] = c;
        }
    }
    CovMatrix::new(dim, entries)
}
