//! Timed pulse programs and their compilation to unitaries.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hamiltonian::{build_hamiltonian, ChainSpec, ControlParams};
use crate::linalg::{pauli_rotation, ComplexMatrix, HermitianEigen, PauliAxis, Unitary};

/// One step of a pulse program.
#[derive(Clone, Debug, PartialEq)]
pub enum Segment {
    /// Free evolution `exp(-i H(ctrl) duration / hbar)` under the full line
    /// Hamiltonian for one control setting.
    Evolve { ctrl: ControlParams, duration: f64 },
    /// Instantaneous rotation `exp(i angle sum_{s in sites} sigma_axis(s))`.
    IdealPulse {
        sites: Vec<usize>,
        axis: PauliAxis,
        angle: f64,
    },
}

impl Segment {
    pub fn evolve(ctrl: ControlParams, duration: f64) -> Self {
        Segment::Evolve { ctrl, duration }
    }

    pub fn pulse(sites: Vec<usize>, axis: PauliAxis, angle: f64) -> Self {
        Segment::IdealPulse { sites, axis, angle }
    }

    fn validate(&self, index: usize, n: usize) -> Result<()> {
        let fail = |reason: String| Err(Error::InvalidSegment { index, reason });
        match self {
            Segment::Evolve { ctrl, duration } => {
                if ctrl.len() != n {
                    return fail(format!("controls cover {} cells, chain has {n}", ctrl.len()));
                }
                if !(duration.is_finite() && *duration >= 0.0) {
                    return fail(format!("duration {duration} must be finite and >= 0"));
                }
            }
            Segment::IdealPulse { sites, angle, .. } => {
                if sites.is_empty() {
                    return fail("pulse has no sites".into());
                }
                if let Some(s) = sites.iter().find(|s| **s == 0 || **s > n) {
                    return fail(format!("site {s} outside 1..={n}"));
                }
                if sites.iter().collect::<BTreeSet<_>>().len() != sites.len() {
                    return fail("pulse lists a site twice".into());
                }
                if !angle.is_finite() {
                    return fail(format!("angle {angle} is not finite"));
                }
            }
        }
        Ok(())
    }
}

/// How the pi rotations and x rotations of a sequence are realized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PulseMode {
    /// Instantaneous rotations with no accompanying evolution.
    Ideal,
    /// Square tunneling pulses of amplitude `gamma_max`; the couplings keep
    /// acting during the pulse.
    Physical { gamma_max: f64 },
}

/// Physical pulses weaker than this multiple of `E_0` are rejected.
pub const MIN_GAMMA_MAX_RATIO: f64 = 1.0;

impl PulseMode {
    pub(crate) fn check(&self, chain: &ChainSpec) -> Result<()> {
        if let PulseMode::Physical { gamma_max } = *self {
            let min = MIN_GAMMA_MAX_RATIO * chain.e0();
            if !(gamma_max.is_finite() && gamma_max >= min) {
                return Err(Error::PulseTooWeak { gamma_max, min });
            }
        }
        Ok(())
    }
}

/// An ordered pulse program on one chain. Segment 0 is applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    chain: ChainSpec,
    segments: Vec<Segment>,
}

impl Schedule {
    pub fn new(chain: ChainSpec, segments: Vec<Segment>) -> Result<Self> {
        let n = chain.n();
        for (i, seg) in segments.iter().enumerate() {
            seg.validate(i, n)?;
        }
        Ok(Self { chain, segments })
    }

    pub fn empty(chain: ChainSpec) -> Self {
        Self {
            chain,
            segments: Vec::new(),
        }
    }

    pub fn push(&mut self, segment: Segment) -> Result<()> {
        segment.validate(self.segments.len(), self.chain.n())?;
        self.segments.push(segment);
        Ok(())
    }

    /// `self` followed in time by `next`.
    pub fn then(mut self, next: Schedule) -> Result<Self> {
        if next.chain != self.chain {
            return Err(Error::InvalidArgument(
                "cannot concatenate schedules on different chains".into(),
            ));
        }
        self.segments.extend(next.segments);
        Ok(self)
    }

    pub fn chain(&self) -> &ChainSpec {
        &self.chain
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn into_segments(self) -> Vec<Segment> {
        self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn compile(&self) -> Result<Unitary> {
        compile(self)
    }

    pub fn total_duration(&self) -> f64 {
        total_duration(self)
    }
}

/// `U_k ... U_2 U_1` for segments `1..k` in time order.
pub fn compile(s: &Schedule) -> Result<Unitary> {
    let chain = s.chain();
    let n = chain.n();
    let mut acc = ComplexMatrix::identity(chain.dim());
    // Sequences reuse a handful of control settings many times.
    let mut cache: Vec<(ControlParams, HermitianEigen)> = Vec::new();
    for (index, seg) in s.segments().iter().enumerate() {
        seg.validate(index, n)?;
        let step = match seg {
            Segment::Evolve { duration, .. } if *duration == 0.0 => continue,
            Segment::Evolve { ctrl, duration } => {
                let pos = match cache.iter().position(|(c, _)| c == ctrl) {
                    Some(p) => p,
                    None => {
                        let h = build_hamiltonian(chain, ctrl)?;
                        cache.push((ctrl.clone(), HermitianEigen::new(&h)?));
                        cache.len() - 1
                    }
                };
                cache[pos].1.exp_unitary(duration / chain.hbar())?
            }
            Segment::IdealPulse { sites, axis, angle } => pauli_rotation(*axis, sites, *angle, n)?,
        };
        acc = step.matrix().matmul(&acc);
    }
    Unitary::new(acc)
}

/// Wall-clock length of a schedule. Ideal pulses take no time.
///
/// Idle evolutions and driven (tunneling) evolutions are each summed with
/// exact rounding and then added, so a hold split in halves plus `k` equal
/// pulses reproduces `t + k * dt` to the last bit.
pub fn total_duration(s: &Schedule) -> f64 {
    let mut idle = Vec::new();
    let mut driven = Vec::new();
    for seg in s.segments() {
        if let Segment::Evolve { ctrl, duration } = seg {
            if ctrl.is_idle() {
                idle.push(*duration);
            } else {
                driven.push(*duration);
            }
        }
    }
    exact_sum(&idle) + exact_sum(&driven)
}

/// Correctly rounded floating-point sum (Shewchuk's algorithm).
fn exact_sum(values: &[f64]) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for &v in values {
        let mut x = v;
        let mut kept = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        partials.truncate(kept);
        partials.push(x);
    }
    // Combine from the top, with the half-way correction.
    let mut total = 0.0;
    if let Some(mut i) = partials.len().checked_sub(1) {
        total = partials[i];
        while i > 0 {
            i -= 1;
            let x = total;
            let y = partials[i];
            total = x + y;
            let lo = y - (total - x);
            if lo != 0.0 {
                if i > 0 && ((lo < 0.0 && partials[i - 1] < 0.0) || (lo > 0.0 && partials[i - 1] > 0.0)) {
                    let y2 = lo * 2.0;
                    let x2 = total + y2;
                    if y2 == x2 - total {
                        total = x2;
                    }
                }
                break;
            }
        }
    }
    total
}
