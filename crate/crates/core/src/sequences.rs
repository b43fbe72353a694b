//! Builders for refocused pulse sequences.
//!
//! Every builder returns a plain [`Schedule`]. Free evolution always runs
//! under the full line Hamiltonian with its fixed couplings; unwanted terms
//! are removed by sandwiching two equal evolutions between pi pulses about x
//! on a refocusing set of cells. A pi pulse on cell `p` flips the sign of
//! every `Z_p` term, so a coupling `Z_i Z_{i+1}` cancels over the two halves
//! exactly when one of its two cells is pulsed, and a bias on `p` cancels when
//! `p` is pulsed.
//!
//! All ideal-pulse sequences built here are exact because the terms that
//! remain and the terms that are refocused away are all diagonal and hence
//! commute.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::gates::{cnot_factors, Cell, Generator, RotationFactor};
use crate::hamiltonian::{ChainSpec, ControlParams};
use crate::linalg::{embed_block, reduce_angle, PauliAxis, Unitary};
use crate::schedule::{PulseMode, Schedule, Segment};

/// Order in which the cells of a pi-pulse layer are driven.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PulseOrder {
    Simultaneous,
    Ascending,
    Descending,
}

/// Pi rotations `exp(i pi/2 X_s)` on every cell in `sites`.
pub fn pi_pulse_segments(
    chain: &ChainSpec,
    sites: &[usize],
    pulses: PulseMode,
    order: PulseOrder,
) -> Result<Vec<Segment>> {
    pulses.check(chain)?;
    for &s in sites {
        chain.check_site(s)?;
    }
    if sites.is_empty() {
        return Ok(Vec::new());
    }
    let groups: Vec<Vec<usize>> = match order {
        PulseOrder::Simultaneous => vec![sites.to_vec()],
        PulseOrder::Ascending => sites.iter().map(|s| vec![*s]).collect(),
        PulseOrder::Descending => sites.iter().rev().map(|s| vec![*s]).collect(),
    };
    groups
        .into_iter()
        .map(|group| match pulses {
            PulseMode::Ideal => Ok(Segment::pulse(group, PauliAxis::X, FRAC_PI_2)),
            PulseMode::Physical { gamma_max } => Ok(Segment::evolve(
                ControlParams::tunneling(chain.n(), &group, gamma_max)?,
                PI * chain.hbar() / (2.0 * gamma_max),
            )),
        })
        .collect()
}

/// `exp(i angle X_site)`, as an instantaneous rotation or a square tunneling
/// pulse of duration `angle hbar / gamma_max` (angle reduced into `[0, 4pi)`).
fn x_rotation_segment(chain: &ChainSpec, site: usize, angle: f64, pulses: PulseMode) -> Result<Segment> {
    pulses.check(chain)?;
    chain.check_site(site)?;
    Ok(match pulses {
        PulseMode::Ideal => Segment::pulse(vec![site], PauliAxis::X, angle),
        PulseMode::Physical { gamma_max } => Segment::evolve(
            ControlParams::tunneling(chain.n(), &[site], gamma_max)?,
            reduce_angle(angle) * chain.hbar() / gamma_max,
        ),
    })
}

/// Bare x rotation on one cell with no refocusing.
pub fn x_rotation_schedule(chain: &ChainSpec, site: usize, angle: f64, pulses: PulseMode) -> Result<Schedule> {
    Schedule::new(chain.clone(), vec![x_rotation_segment(chain, site, angle, pulses)?])
}

fn require_two_cells(chain: &ChainSpec, what: &str) -> Result<()> {
    if chain.n() != 2 {
        return Err(Error::InvalidArgument(format!(
            "{what} is defined on two cells; use the decoupled builders for {} cells",
            chain.n()
        )));
    }
    Ok(())
}

/// `exp(i angle Z_1 Z_2)` on a two-cell line by idling with every control off.
///
/// Idling for `t` gives `exp(i E_1 t Z_1 Z_2 / hbar)`; the angle is taken into
/// `[0, 4pi)` so negative rotations are realized as long forward evolutions.
pub fn zz_rotation_schedule(chain: &ChainSpec, bond: usize, angle: f64) -> Result<Schedule> {
    require_two_cells(chain, "the bare ZZ rotation")?;
    let e = chain.coupling(bond)?;
    if e == 0.0 {
        return Err(Error::NotExpressible("ZZ rotation on an uncoupled bond".into()));
    }
    let duration = reduce_angle(angle) * chain.hbar() / e;
    Schedule::new(chain.clone(), vec![Segment::evolve(ControlParams::idle(2), duration)])
}

/// `exp(i angle Z_site)` on a two-cell line, with the other cell refocused.
pub fn refocused_z_rotation_schedule(
    chain: &ChainSpec,
    site: usize,
    angle: f64,
    pulses: PulseMode,
) -> Result<Schedule> {
    require_two_cells(chain, "the refocused z rotation")?;
    decoupled_schedule(chain, &TargetSpec::z_rotation(site, angle)?, pulses)
}

/// Two-cell CNOT (control on cell 1) assembled from the eleven x/z factors
/// of [`cnot_factors`].
pub fn cnot_schedule(chain: &ChainSpec, control: usize, pulses: PulseMode) -> Result<Schedule> {
    require_two_cells(chain, "the two-cell CNOT")?;
    if control != 1 {
        return Err(Error::InvalidArgument(format!(
            "two-cell CNOT has control 1, got {control}"
        )));
    }
    pulses.check(chain)?;
    let mut schedule = Schedule::empty(chain.clone());
    for factor in cnot_factors().iter().rev() {
        let site = |cell| if cell == Cell::Control { 1 } else { 2 };
        let step = match factor.generator {
            Generator::ZZ => zz_rotation_schedule(chain, 1, factor.angle)?,
            Generator::Single(PauliAxis::Z, cell) => {
                refocused_z_rotation_schedule(chain, site(cell), factor.angle, pulses)?
            }
            Generator::Single(PauliAxis::X, cell) => x_rotation_schedule(chain, site(cell), factor.angle, pulses)?,
            Generator::Single(PauliAxis::Y, _) => {
                return Err(Error::NotExpressible("y rotations have no direct control".into()))
            }
        };
        schedule = schedule.then(step)?;
    }
    Ok(schedule)
}

/// Cells pulsed to hold a whole line: every even-numbered cell.
///
/// Each coupling then has exactly one pulsed end. Pulsing every cell would
/// leave all `Z_i Z_{i+1}` products invariant and the couplings would not
/// refocus.
pub fn memory_refocus_set(n: usize) -> Vec<usize> {
    (2..=n).step_by(2).collect()
}

/// A hold of length `t_memory` whose net unitary is the identity up to a
/// global phase.
///
/// Layout in time: pi pulses, idle for `t_memory / 2`, pi pulses, idle for
/// `t_memory / 2`. With `simultaneous == false` the cells of each layer are
/// pulsed one after another, ascending in the first layer and descending in
/// the second.
pub fn memory_schedule(chain: &ChainSpec, t_memory: f64, pulses: PulseMode, simultaneous: bool) -> Result<Schedule> {
    if !(t_memory.is_finite() && t_memory >= 0.0) {
        return Err(Error::InvalidArgument(format!("hold time {t_memory} must be >= 0")));
    }
    let sites = memory_refocus_set(chain.n());
    let (first, second) = if simultaneous {
        (PulseOrder::Simultaneous, PulseOrder::Simultaneous)
    } else {
        (PulseOrder::Ascending, PulseOrder::Descending)
    };
    let idle = Segment::evolve(ControlParams::idle(chain.n()), t_memory / 2.0);
    let mut segments = pi_pulse_segments(chain, &sites, pulses, first)?;
    segments.push(idle.clone());
    segments.extend(pi_pulse_segments(chain, &sites, pulses, second)?);
    segments.push(idle);
    Schedule::new(chain.clone(), segments)
}

/// Rotation requested on the active cells of a decoupled operation.
/// Each variant is `exp(i angle G)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ActiveRotation {
    X { site: usize, angle: f64 },
    Z { site: usize, angle: f64 },
    /// On the bond `(bond, bond + 1)`.
    ZZ { bond: usize, angle: f64 },
}

/// An operation on a contiguous block of active cells, identity on the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetSpec {
    rotation: ActiveRotation,
    active_unitary: Unitary,
}

/// Largest residual accepted when recognizing a rotation from its matrix.
const RECOGNITION_TOL: f64 = 1e-9;

impl TargetSpec {
    pub fn x_rotation(site: usize, angle: f64) -> Result<Self> {
        Self::from_rotation(ActiveRotation::X { site, angle })
    }

    pub fn z_rotation(site: usize, angle: f64) -> Result<Self> {
        Self::from_rotation(ActiveRotation::Z { site, angle })
    }

    pub fn zz_rotation(bond: usize, angle: f64) -> Result<Self> {
        Self::from_rotation(ActiveRotation::ZZ { bond, angle })
    }

    pub fn from_rotation(rotation: ActiveRotation) -> Result<Self> {
        let (first, angle) = match rotation {
            ActiveRotation::X { site, angle } | ActiveRotation::Z { site, angle } => (site, angle),
            ActiveRotation::ZZ { bond, angle } => (bond, angle),
        };
        if first == 0 {
            return Err(Error::InvalidArgument("sites are 1-based".into()));
        }
        if !angle.is_finite() {
            return Err(Error::InvalidArgument(format!("angle {angle} is not finite")));
        }
        let active_unitary = match rotation {
            ActiveRotation::X { .. } => crate::gates::single_rotation(PauliAxis::X, angle),
            ActiveRotation::Z { .. } => crate::gates::single_rotation(PauliAxis::Z, angle),
            ActiveRotation::ZZ { .. } => crate::gates::zz_rotation(angle),
        };
        Ok(Self {
            rotation,
            active_unitary,
        })
    }

    /// Recognizes `unitary` as a rotation the controls can produce on the
    /// given active cells: an x or z rotation on one cell, or a ZZ rotation
    /// on two adjacent cells. Global phase is ignored.
    pub fn from_unitary(active_sites: &[usize], unitary: Unitary) -> Result<Self> {
        let first = *active_sites
            .iter()
            .min()
            .ok_or_else(|| Error::InvalidArgument("no active sites".into()))?;
        let mut sorted = active_sites.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != active_sites.len() || sorted.iter().enumerate().any(|(k, s)| *s != first + k) {
            return Err(Error::NonContiguous);
        }
        let expected_dim = 1usize << sorted.len();
        if unitary.dim() != expected_dim {
            return Err(Error::DimensionMismatch {
                left: unitary.dim(),
                right: expected_dim,
            });
        }
        let m = unitary.matrix();
        let rotation = match sorted.len() {
            1 if m[(0, 1)].norm() < RECOGNITION_TOL && m[(1, 0)].norm() < RECOGNITION_TOL => {
                // diag(e^{i a}, e^{-i a}) up to phase
                ActiveRotation::Z {
                    site: first,
                    angle: (m[(0, 0)] / m[(1, 1)]).arg() / 2.0,
                }
            }
            1 => {
                // cos a I + i sin a X has eigenvalues e^{+-i a} on |+>, |->
                let plus = m[(0, 0)] + m[(0, 1)];
                let minus = m[(0, 0)] - m[(0, 1)];
                ActiveRotation::X {
                    site: first,
                    angle: (plus / minus).arg() / 2.0,
                }
            }
            2 if m.is_diagonal() || m.max_abs_diff(&crate::linalg::ComplexMatrix::from_diagonal(&m.diagonal())) < RECOGNITION_TOL => {
                let d = m.diagonal();
                ActiveRotation::ZZ {
                    bond: first,
                    angle: (d[0] / d[1]).arg() / 2.0,
                }
            }
            _ => {
                return Err(Error::NotExpressible(format!(
                    "{}-cell operation is not a single x, z or ZZ rotation",
                    sorted.len()
                )))
            }
        };
        let spec = Self::from_rotation(rotation)?;
        let residual = crate::linalg::phase_distance(&spec.active_unitary, &unitary)?;
        if residual > RECOGNITION_TOL {
            return Err(Error::NotExpressible(format!(
                "closest {rotation:?} is off by {residual:e}"
            )));
        }
        Ok(spec)
    }

    pub fn rotation(&self) -> ActiveRotation {
        self.rotation
    }

    pub fn active_sites(&self) -> RangeInclusive<usize> {
        match self.rotation {
            ActiveRotation::X { site, .. } | ActiveRotation::Z { site, .. } => site..=site,
            ActiveRotation::ZZ { bond, .. } => bond..=bond + 1,
        }
    }

    pub fn active_unitary(&self) -> &Unitary {
        &self.active_unitary
    }

    /// `I ⊗ U_active ⊗ I` on an `n`-cell line.
    pub fn embedded(&self, n: usize) -> Result<Unitary> {
        Unitary::new(embed_block(self.active_unitary.matrix(), *self.active_sites().start(), n)?)
    }
}

/// Passive cells that must be pulsed to decouple the block `active` from the
/// rest of the line: the neighbours of the block and then every other cell
/// moving outwards, so that every coupling with a passive end has exactly
/// one pulsed end.
pub fn passive_refocus_set(n: usize, active: RangeInclusive<usize>) -> Vec<usize> {
    let (first, last) = (*active.start(), *active.end());
    let mut sites: Vec<usize> = (1..first).rev().step_by(2).collect();
    sites.reverse();
    sites.extend((last + 1..=n).step_by(2));
    sites
}

/// One half of the active evolution.
fn half_rotation(chain: &ChainSpec, rotation: ActiveRotation, pulses: PulseMode) -> Result<Segment> {
    let n = chain.n();
    let hbar = chain.hbar();
    match rotation {
        ActiveRotation::Z { site, angle } => {
            // exp(-i E0 P Z t / hbar): P = -1 rotates forward, P = +1 backward.
            let polarization = if angle >= 0.0 { -1.0 } else { 1.0 };
            let magnitude = reduce_angle(angle.abs());
            Ok(Segment::evolve(
                ControlParams::bias(n, site, polarization)?,
                magnitude * hbar / (2.0 * chain.e0()),
            ))
        }
        ActiveRotation::ZZ { bond, angle } => {
            let e = chain.coupling(bond)?;
            if e == 0.0 {
                return Err(Error::NotExpressible(format!("bond {bond} is uncoupled")));
            }
            Ok(Segment::evolve(
                ControlParams::idle(n),
                reduce_angle(angle) * hbar / (2.0 * e),
            ))
        }
        ActiveRotation::X { site, angle } => match pulses {
            PulseMode::Ideal => x_rotation_segment(chain, site, angle / 2.0, pulses),
            PulseMode::Physical { gamma_max } => Ok(Segment::evolve(
                ControlParams::tunneling(n, &[site], gamma_max)?,
                reduce_angle(angle) * hbar / (2.0 * gamma_max),
            )),
        },
    }
}

/// Doubles a half evolution when no refocusing is needed.
fn merge_halves(half: Segment) -> Segment {
    match half {
        Segment::Evolve { ctrl, duration } => Segment::Evolve {
            ctrl,
            duration: 2.0 * duration,
        },
        Segment::IdealPulse { sites, axis, angle } => Segment::IdealPulse {
            sites,
            axis,
            angle: 2.0 * angle,
        },
    }
}

/// Applies `target` to its active cells while holding every other cell.
///
/// Layout in time: half of the active evolution, pi pulses on the passive
/// refocusing set, the second half, pi pulses again. With no passive cells
/// this is the bare rotation.
pub fn decoupled_schedule(chain: &ChainSpec, target: &TargetSpec, pulses: PulseMode) -> Result<Schedule> {
    pulses.check(chain)?;
    let active = target.active_sites();
    chain.check_site(*active.start())?;
    chain.check_site(*active.end())?;
    let half = half_rotation(chain, target.rotation(), pulses)?;
    if *active.start() == 1 && *active.end() == chain.n() {
        return Schedule::new(chain.clone(), vec![merge_halves(half)]);
    }
    let refocus = pi_pulse_segments(
        chain,
        &passive_refocus_set(chain.n(), active),
        pulses,
        PulseOrder::Simultaneous,
    )?;
    let mut segments = vec![half.clone()];
    segments.extend(refocus.iter().cloned());
    segments.push(half);
    segments.extend(refocus);
    Schedule::new(chain.clone(), segments)
}

fn factor_target(factor: &RotationFactor, control: usize) -> Result<TargetSpec> {
    let site = |cell| if cell == Cell::Control { control } else { control + 1 };
    match factor.generator {
        Generator::ZZ => TargetSpec::zz_rotation(control, factor.angle),
        Generator::Single(PauliAxis::Z, cell) => TargetSpec::z_rotation(site(cell), factor.angle),
        Generator::Single(PauliAxis::X, cell) => TargetSpec::x_rotation(site(cell), factor.angle),
        Generator::Single(PauliAxis::Y, _) => Err(Error::NotExpressible("y rotations have no direct control".into())),
    }
}

/// CNOT on cells `(control, control + 1)` of any line, every factor of
/// [`cnot_factors`] applied as a decoupled operation.
pub fn icnot_schedule(chain: &ChainSpec, control: usize, pulses: PulseMode) -> Result<Schedule> {
    if control == 0 || control >= chain.n() {
        return Err(Error::SiteOutOfRange {
            site: control,
            n: chain.n() - 1,
        });
    }
    let mut schedule = Schedule::empty(chain.clone());
    for factor in cnot_factors().iter().rev() {
        let target = factor_target(factor, control)?;
        schedule = schedule.then(decoupled_schedule(chain, &target, pulses)?)?;
    }
    Ok(schedule)
}
