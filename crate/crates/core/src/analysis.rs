//! Error of finite-amplitude pulses and characteristic operation times.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonian::{build_imperfect_pulse_hamiltonian, ChainSpec, ControlParams, ImperfectionModel};
use crate::linalg::{pauli_rotation, spectral_norm, HermitianEigen, PauliAxis, Unitary};

/// `hbar` in electron-volt seconds.
pub const HBAR_EV_S: f64 = 6.582e-16;

/// Unitaries of the imperfect and the ideal pi pulse, both for the ideal
/// pulse duration, with the `exp(+i t H / hbar)` orientation of the bound.
fn pulse_pair(chain: &ChainSpec, model: &ImperfectionModel) -> Result<(Unitary, Unitary, f64, f64)> {
    let h = build_imperfect_pulse_hamiltonian(chain, model)?;
    let dt = model.pulse_duration(chain)?;
    let eig = HermitianEigen::new(&h)?;
    let actual = eig.exp_unitary(-dt / chain.hbar())?;
    // exp(i dt (-gamma E_j X_j) / hbar)
    let angle = -model.pulse_amplitude(chain)? * dt / chain.hbar();
    let ideal = pauli_rotation(PauliAxis::X, &[model.target()], angle, chain.n())?;
    let norm = eig.spectral_radius() / chain.hbar();
    Ok((actual, ideal, dt, norm))
}

/// Spectral norm of the difference between the imperfect and ideal pulse
/// unitaries. The ideal one has unit norm, so this is also the relative error.
pub fn pulse_error_norm(chain: &ChainSpec, model: &ImperfectionModel) -> Result<f64> {
    let (actual, ideal, _, _) = pulse_pair(chain, model)?;
    Ok(spectral_norm(&(actual.matrix() - ideal.matrix())))
}

/// `x e^x` with `x = dt ||H / hbar||` (raw) or `x = pi (N - 1) / (2 gamma)`
/// (simplified, uniform lines only).
pub fn error_bound(chain: &ChainSpec, model: &ImperfectionModel, simplified: bool) -> Result<f64> {
    if simplified {
        if !chain.is_uniform() {
            return Err(Error::NonUniformChain);
        }
        return Ok(simplified_bound(chain.n(), model.gamma_rel()));
    }
    chain.check_site(model.target())?;
    let h = build_imperfect_pulse_hamiltonian(chain, model)?;
    let x = model.pulse_duration(chain)? * spectral_norm(&h) / chain.hbar();
    Ok(x * x.exp())
}

/// `x e^x` with `x = pi (cells - 1) / (2 gamma)`; zero for a single cell.
pub fn simplified_bound(cells: usize, gamma_rel: f64) -> f64 {
    let x = PI * cells.saturating_sub(1) as f64 / (2.0 * gamma_rel);
    x * x.exp()
}

/// Error norms and bounds along a sweep of pulse amplitudes, ordered by
/// ascending `gamma`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub gamma_values: Vec<f64>,
    pub error_norms: Vec<f64>,
    pub bound_values: Vec<f64>,
    pub raw_bound_values: Vec<f64>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.gamma_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma_values.is_empty()
    }
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| if k + 1 == count { hi } else { lo + (hi - lo) * k as f64 / (count - 1) as f64 })
            .collect(),
    }
}

/// Sweeps the pulse amplitude on cell `target` of a uniform line.
pub fn gamma_sweep(chain: &ChainSpec, epsilon: f64, target: usize, gammas: &[f64]) -> Result<SweepResult> {
    if !chain.is_uniform() {
        return Err(Error::NonUniformChain);
    }
    chain.check_site(target)?;
    let mut sorted = gammas.to_vec();
    if let Some(bad) = sorted.iter().find(|g| !g.is_finite()) {
        return Err(Error::InvalidArgument(format!("gamma {bad} is not finite")));
    }
    sorted.sort_by(f64::total_cmp);
    let rows: Vec<(f64, f64, f64)> = sorted
        .par_iter()
        .map(|&gamma| {
            let model = ImperfectionModel::new(gamma, epsilon, target)?;
            let (actual, ideal, dt, norm) = pulse_pair(chain, &model)?;
            let err = spectral_norm(&(actual.matrix() - ideal.matrix()));
            let x = dt * norm;
            Ok((err, simplified_bound(chain.n(), gamma), x * x.exp()))
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult {
        gamma_values: sorted,
        error_norms: rows.iter().map(|r| r.0).collect(),
        bound_values: rows.iter().map(|r| r.1).collect(),
        raw_bound_values: rows.iter().map(|r| r.2).collect(),
    })
}

/// Duration `pi hbar / (2 gamma)` of a pi rotation at tunneling amplitude `gamma`.
pub fn pulse_duration(gamma: f64, hbar: f64) -> Result<f64> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::ZeroDenominator("tunneling amplitude"));
    }
    Ok(PI * hbar / (2.0 * gamma))
}

/// Characteristic operation times in units of `hbar / energy`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingEstimate {
    /// `hbar / (E_0 |P_bias|)` for the strongest bias.
    pub single_qubit_time: f64,
    /// `hbar / E_i` for the weakest coupling.
    pub two_qubit_time: f64,
    /// Two pi-pulse layers, `2 dT_gamma`, at the strongest tunneling amplitude.
    pub memory_overhead: f64,
    /// `2 dT_gamma + 2 dT` with `dT` taken as the two-qubit time.
    pub decoupled_rotation_time: f64,
}

impl TimingEstimate {
    /// The same times in seconds when one natural energy unit is
    /// `energy_scale_ev` electron volts (requires `hbar = 1`).
    pub fn in_seconds(&self, energy_scale_ev: f64) -> Result<TimingEstimate> {
        if !(energy_scale_ev.is_finite() && energy_scale_ev > 0.0) {
            return Err(Error::ZeroDenominator("energy scale"));
        }
        let k = HBAR_EV_S / energy_scale_ev;
        Ok(TimingEstimate {
            single_qubit_time: self.single_qubit_time * k,
            two_qubit_time: self.two_qubit_time * k,
            memory_overhead: self.memory_overhead * k,
            decoupled_rotation_time: self.decoupled_rotation_time * k,
        })
    }
}

pub fn timing_estimates(chain: &ChainSpec, ctrl: &ControlParams) -> Result<TimingEstimate> {
    if ctrl.len() != chain.n() {
        return Err(Error::DimensionMismatch {
            left: ctrl.len(),
            right: chain.n(),
        });
    }
    let hbar = chain.hbar();
    let bias = ctrl.biases().iter().map(|p| p.abs()).fold(0.0, f64::max);
    if bias == 0.0 {
        return Err(Error::ZeroDenominator("bias polarization"));
    }
    let coupling = chain.couplings().iter().copied().fold(f64::INFINITY, f64::min);
    if coupling == 0.0 {
        return Err(Error::ZeroDenominator("coupling energy"));
    }
    let gamma = ctrl.gammas().iter().copied().fold(0.0, f64::max);
    let memory_overhead = 2.0 * pulse_duration(gamma, hbar)?;
    let two_qubit_time = hbar / coupling;
    Ok(TimingEstimate {
        single_qubit_time: hbar / (chain.e0() * bias),
        two_qubit_time,
        memory_overhead,
        decoupled_rotation_time: memory_overhead + 2.0 * two_qubit_time,
    })
}
