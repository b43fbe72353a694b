//! Pulse-level simulation of refocused gate sequences on a line of coupled
//! two-state cells.
//!
//! A line of `n` cells evolves under
//! `H = -sum gamma_i X_i - sum E_i Z_i Z_{i+1} + sum E_0 P_i Z_i`
//! with fixed couplings `E_i` and controllable tunneling `gamma_i` and bias
//! `P_i`. [`Schedule`]s of timed control settings compile to exact unitaries,
//! and the builders in [`sequences`] produce CNOT, memory and decoupled
//! rotation schedules. [`analysis`] quantifies the error of finite pulses.
//!
//! Cell 1 is the leftmost tensor factor, i.e. the most significant bit of a
//! basis index.

pub mod analysis;
pub mod error;
pub mod gates;
pub mod hamiltonian;
pub mod linalg;
pub mod schedule;
pub mod sequences;

pub use error::{Error, Result};
pub use hamiltonian::{ChainSpec, ControlParams, ImperfectionModel, MAX_CELLS};
pub use linalg::{phase_distance, spectral_norm, Complex64, ComplexMatrix, PauliAxis, Unitary};
pub use schedule::{compile, total_duration, PulseMode, Schedule, Segment};
pub use sequences::TargetSpec;
