use std::f64::consts::FRAC_PI_4;
use std::path::Path;

use qcapulse::analysis::{gamma_sweep, linspace, SweepResult};
use qcapulse::gates::{cnot_matrix, embedded_cnot};
use qcapulse::sequences::{
    cnot_schedule, decoupled_schedule, icnot_schedule, memory_schedule, refocused_z_rotation_schedule,
    zz_rotation_schedule, ActiveRotation,
};
use qcapulse::{phase_distance, ChainSpec, PulseMode, Schedule, TargetSpec, Unitary};
use serde::Serialize;

use crate::output::{sweep_csv, sweep_svg, unitary_csv, write_atomic};
use crate::schedule_file::ScheduleFile;
use crate::{check_cells, CliError};

pub fn compile(input: &Path, out: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(input).map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?;
    let file = ScheduleFile::parse(&text)?;
    check_cells(file.cells())?;
    let u = file.to_schedule()?.compile()?;
    write_atomic(out, &unitary_csv(u.matrix()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builder {
    Cnot,
    Icnot,
    Memory,
    Zrot,
    Zzrot,
    Decoupled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationKind {
    X,
    Z,
    Zz,
}

#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub builder: Builder,
    pub cells: usize,
    pub coupling: f64,
    pub control: usize,
    pub t_memory: f64,
    pub pulses: PulseMode,
    pub sequential: bool,
    pub site: usize,
    pub bond: usize,
    pub angle: f64,
    pub rotation: RotationKind,
    pub tolerance: f64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            builder: Builder::Memory,
            cells: 2,
            coupling: 1.0,
            control: 1,
            t_memory: 1.0,
            pulses: PulseMode::Ideal,
            sequential: false,
            site: 1,
            bond: 1,
            angle: FRAC_PI_4,
            rotation: RotationKind::Zz,
            tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub target: String,
    pub phase_distance: f64,
    pub pass: bool,
    pub tolerance: f64,
    pub total_duration: f64,
}

fn build(p: &VerifyParams, chain: &ChainSpec) -> Result<(String, Schedule, Unitary), CliError> {
    let n = chain.n();
    Ok(match p.builder {
        Builder::Cnot => (
            "CNOT".into(),
            cnot_schedule(chain, p.control, p.pulses)?,
            cnot_matrix(),
        ),
        Builder::Icnot => (
            format!("CNOT on cells {},{} of {n}", p.control, p.control + 1),
            icnot_schedule(chain, p.control, p.pulses)?,
            embedded_cnot(n, p.control)?,
        ),
        Builder::Memory => (
            format!("identity on {n} cells"),
            memory_schedule(chain, p.t_memory, p.pulses, !p.sequential)?,
            Unitary::identity(chain.dim()),
        ),
        Builder::Zrot => (
            format!("exp(i {} Z_{})", p.angle, p.site),
            refocused_z_rotation_schedule(chain, p.site, p.angle, p.pulses)?,
            TargetSpec::z_rotation(p.site, p.angle)?.embedded(n)?,
        ),
        Builder::Zzrot => (
            format!("exp(i {} Z_{} Z_{})", p.angle, p.bond, p.bond + 1),
            zz_rotation_schedule(chain, p.bond, p.angle)?,
            TargetSpec::zz_rotation(p.bond, p.angle)?.embedded(n)?,
        ),
        Builder::Decoupled => {
            let rotation = match p.rotation {
                RotationKind::X => ActiveRotation::X { site: p.site, angle: p.angle },
                RotationKind::Z => ActiveRotation::Z { site: p.site, angle: p.angle },
                RotationKind::Zz => ActiveRotation::ZZ { bond: p.site, angle: p.angle },
            };
            let target = TargetSpec::from_rotation(rotation)?;
            let sites = target.active_sites();
            (
                format!("{rotation:?} on cells {}..={} of {n}, identity elsewhere", sites.start(), sites.end()),
                decoupled_schedule(chain, &target, p.pulses)?,
                target.embedded(n)?,
            )
        }
    })
}

pub fn verify(p: &VerifyParams) -> Result<VerifyReport, CliError> {
    if !(p.tolerance.is_finite() && p.tolerance >= 0.0) {
        return Err(CliError::Invalid(format!("tolerance {} must be >= 0", p.tolerance)));
    }
    check_cells(p.cells)?;
    let chain = ChainSpec::uniform(p.cells, p.coupling)?;
    let (target, schedule, expected) = build(p, &chain)?;
    let distance = phase_distance(&schedule.compile()?, &expected)?;
    Ok(VerifyReport {
        target,
        phase_distance: distance,
        pass: distance <= p.tolerance,
        tolerance: p.tolerance,
        total_duration: schedule.total_duration(),
    })
}

/// `lo:hi:count` with `0 < lo <= hi`, and `lo < hi` unless `count == 1`.
pub fn parse_gamma_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Invalid(format!("gamma range {text:?}: {why}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, count] = parts[..] else {
        return Err(bad("expected lo:hi:count"));
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad("lower end is not a number"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad("upper end is not a number"))?;
    let count: usize = count.trim().parse().map_err(|_| bad("count is not a positive integer"))?;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0) {
        return Err(bad("ends must be finite and positive"));
    }
    if count == 0 {
        return Err(bad("count must be at least 1"));
    }
    if hi < lo || (hi == lo && count > 1) {
        return Err(bad("range must be ascending"));
    }
    Ok(linspace(lo, hi, count))
}

#[derive(Clone, Debug)]
pub struct SweepParams {
    pub cells: usize,
    pub epsilon: f64,
    pub gammas: Vec<f64>,
    /// One value for a uniform line or one per bond.
    pub couplings: Vec<f64>,
    pub target: usize,
}

pub fn sweep(p: &SweepParams) -> Result<SweepResult, CliError> {
    check_cells(p.cells)?;
    let couplings = match p.couplings.len() {
        1 => vec![p.couplings[0]; p.cells.saturating_sub(1)],
        _ => p.couplings.clone(),
    };
    if couplings.len() + 1 != p.cells {
        return Err(CliError::Invalid(format!(
            "{} cells need 1 or {} couplings, got {}",
            p.cells,
            p.cells.saturating_sub(1),
            p.couplings.len()
        )));
    }
    let chain = ChainSpec::new(couplings, 1.0)?;
    Ok(gamma_sweep(&chain, p.epsilon, p.target, &p.gammas)?)
}

pub fn write_sweep(r: &SweepResult, out: &Path, plot: Option<&Path>) -> Result<(), CliError> {
    write_atomic(out, &sweep_csv(r))?;
    if let Some(path) = plot {
        write_atomic(path, sweep_svg(r).as_bytes())?;
    }
    Ok(())
}
