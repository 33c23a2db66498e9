//! Linear-optical elements in the Heisenberg picture: beam splitter,
//! phase-insensitive amplifier, tritter, and the 1-to-2 cloning network
//! they compose into.
//!
//! The beam splitter acts identically on x and p (phase-free convention)
//! with the sign fixed so that `theta = pi/4` sends a pair to its balanced
//! sum and difference. Because of that choice `B(theta)` is an involution,
//! not a rotation: `B(0)` flips the sign of the second mode, and the
//! product of two splitters is a rotation by the angle difference.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::gaussian::{InitialModeSpec, ModeOperator, SqueezeAxis};

/// Tritter mixing angle for the first splitter, `arccos(1/sqrt(3))`.
fn tritter_first_angle() -> f64 {
    (1.0 / 3.0_f64.sqrt()).acos()
}

/// One linear-optical element together with the modes it targets.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitElement {
    kind: ElementKind,
    targets: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementKind {
    /// Phase-free beam splitter with mixing angle in radians.
    BeamSplitter(f64),
    /// Phase-insensitive amplifier with gain `G >= 1` on (signal, ancilla).
    Amplifier(f64),
    /// Two-splitter network producing three-mode entanglement.
    Tritter,
}

impl CircuitElement {
    pub fn new(kind: ElementKind, targets: Vec<usize>) -> Result<Self> {
        let expected = match kind {
            ElementKind::BeamSplitter(theta) => {
                if !theta.is_finite() {
                    return Err(Error::InvalidAngle(theta));
                }
                2
            }
            ElementKind::Amplifier(gain) => {
                if !gain.is_finite() || gain < 1.0 {
                    return Err(Error::InvalidGain(gain));
                }
                2
            }
            ElementKind::Tritter => 3,
        };
        if targets.len() != expected {
            return Err(Error::WrongTargetCount {
                element: match kind {
                    ElementKind::BeamSplitter(_) => "beam splitter",
                    ElementKind::Amplifier(_) => "amplifier",
                    ElementKind::Tritter => "tritter",
                },
                expected,
                got: targets.len(),
            });
        }
        Ok(Self { kind, targets })
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Apply the element in place to the targeted entries of `modes`.
    pub fn apply(&self, modes: &mut [ModeOperator]) -> Result<()> {
        for &t in &self.targets {
            if t >= modes.len() {
                return Err(Error::TargetOutOfRange {
                    index: t,
                    len: modes.len(),
                });
            }
        }
        match self.kind {
            ElementKind::BeamSplitter(theta) => {
                let (a, b) =
                    beam_splitter(&modes[self.targets[0]], &modes[self.targets[1]], theta)?;
                modes[self.targets[0]] = a;
                modes[self.targets[1]] = b;
            }
            ElementKind::Amplifier(gain) => {
                let (s, z) = amplifier(&modes[self.targets[0]], &modes[self.targets[1]], gain)?;
                modes[self.targets[0]] = s;
                modes[self.targets[1]] = z;
            }
            ElementKind::Tritter => {
                let (m1, m2, m3) = tritter(
                    &modes[self.targets[0]],
                    &modes[self.targets[1]],
                    &modes[self.targets[2]],
                )?;
                modes[self.targets[0]] = m1;
                modes[self.targets[1]] = m2;
                modes[self.targets[2]] = m3;
            }
        }
        Ok(())
    }
}

fn check_basis(a: &ModeOperator, b: &ModeOperator) -> Result<()> {
    if a.modes() != b.modes() {
        return Err(Error::BasisMismatch(a.modes(), b.modes()));
    }
    Ok(())
}

/// Phase-free beam splitter on a mode pair.
///
/// `x_a' = cos(theta) x_a + sin(theta) x_b`,
/// `x_b' = sin(theta) x_a - cos(theta) x_b`, and identically for p. At
/// `theta = pi/4` this is the balanced sum/difference splitter.
pub fn beam_splitter(
    a: &ModeOperator,
    b: &ModeOperator,
    theta: f64,
) -> Result<(ModeOperator, ModeOperator)> {
    if !theta.is_finite() {
        return Err(Error::InvalidAngle(theta));
    }
    check_basis(a, b)?;
    let (c, s) = (theta.cos(), theta.sin());
    let out_a = ModeOperator {
        x: &(&a.x * c) + &(&b.x * s),
        p: &(&a.p * c) + &(&b.p * s),
    };
    let out_b = ModeOperator {
        x: &(&a.x * s) - &(&b.x * c),
        p: &(&a.p * s) - &(&b.p * c),
    };
    Ok((out_a, out_b))
}

/// Phase-insensitive amplifier (two-mode Bogoliubov transformation) with
/// gain `G >= 1` on (signal, ancilla).
///
/// Signal: `x' = sqrt(G) x + sqrt(G-1) x_z`, `p' = sqrt(G) p - sqrt(G-1) p_z`.
/// Idler: `x_z' = sqrt(G-1) x + sqrt(G) x_z`, `p_z' = -sqrt(G-1) p + sqrt(G) p_z`.
/// `G = 1` is the identity; the cloning network uses `G = 2`.
pub fn amplifier(
    signal: &ModeOperator,
    ancilla: &ModeOperator,
    gain: f64,
) -> Result<(ModeOperator, ModeOperator)> {
    if !gain.is_finite() || gain < 1.0 {
        return Err(Error::InvalidGain(gain));
    }
    check_basis(signal, ancilla)?;
    let g = gain.sqrt();
    let h = (gain - 1.0).sqrt();
    let out_signal = ModeOperator {
        x: &(&signal.x * g) + &(&ancilla.x * h),
        p: &(&signal.p * g) - &(&ancilla.p * h),
    };
    let out_idler = ModeOperator {
        x: &(&signal.x * h) + &(&ancilla.x * g),
        p: &(&signal.p * -h) + &(&ancilla.p * g),
    };
    Ok((out_signal, out_idler))
}

/// Tritter: `B(arccos(1/sqrt(3)))` on modes (1, 2), then `B(pi/4)` on
/// modes (2, 3).
pub fn tritter(
    m1: &ModeOperator,
    m2: &ModeOperator,
    m3: &ModeOperator,
) -> Result<(ModeOperator, ModeOperator, ModeOperator)> {
    check_basis(m1, m2)?;
    check_basis(m2, m3)?;
    let (o1, t2) = beam_splitter(m1, m2, tritter_first_angle())?;
    let (o2, o3) = beam_splitter(&t2, m3, FRAC_PI_4)?;
    Ok((o1, o2, o3))
}

/// The two clones and the ancilla output of the 1-to-2 cloning network.
#[derive(Debug, Clone, PartialEq)]
pub struct CloneOutput {
    pub clone0: ModeOperator,
    pub clone1: ModeOperator,
    pub ancilla: ModeOperator,
}

/// Cloning network on already-prepared operators: amplifier with gain 2 on
/// (input, ancilla), then a balanced beam splitter on (signal, blank).
/// Returns (clone0, clone1, ancilla output).
pub fn clone_network(
    input: &ModeOperator,
    blank: &ModeOperator,
    ancilla: &ModeOperator,
) -> Result<(ModeOperator, ModeOperator, ModeOperator)> {
    let (signal, idler) = amplifier(input, ancilla, 2.0)?;
    let (clone0, clone1) = beam_splitter(&signal, blank, FRAC_PI_4)?;
    Ok((clone0, clone1, idler))
}

/// 1-to-2 cloning of a squeezed input over a fresh three-mode basis
/// (0 = input, 1 = blank, 2 = ancilla).
///
/// The input and blank must be squeezed in x and the ancilla in p; since the
/// axis is physically meaningless at r = 0, unsqueezed specs are accepted
/// with either axis. Squeezing is folded into the returned coefficients, so
/// moments of the output are taken against a vacuum basis.
pub fn clone_1to2(
    input: &InitialModeSpec,
    blank: &InitialModeSpec,
    ancilla: &InitialModeSpec,
) -> Result<CloneOutput> {
    for (index, spec, expected) in [
        (0usize, input, SqueezeAxis::X),
        (1, blank, SqueezeAxis::X),
        (2, ancilla, SqueezeAxis::P),
    ] {
        if spec.squeezing() > 0.0 && spec.axis() != expected {
            return Err(Error::WrongSqueezeAxis {
                index,
                expected: if expected == SqueezeAxis::X { 'x' } else { 'p' },
            });
        }
    }
    let ops: Vec<ModeOperator> = [input, blank, ancilla]
        .iter()
        .enumerate()
        .map(|(k, spec)| ModeOperator::prepared(k, 3, spec))
        .collect();
    let (clone0, clone1, ancilla) = clone_network(&ops[0], &ops[1], &ops[2])?;
    Ok(CloneOutput {
        clone0,
        clone1,
        ancilla,
    })
}
