//! JSON schedule files.
//!
//! ```json
//! {"chain": {"n": 2, "couplings": [1.0], "e0": 1.0},
//!  "segments": [{"type": "pulse", "sites": [2], "axis": "x", "angle": 1.5707963267948966},
//!               {"type": "evolve", "gammas": [0, 0], "biases": [0, 0], "duration": 0.5}]}
//! ```

use qcapulse::{ChainSpec, ControlParams, PauliAxis, Schedule, Segment};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub chain: ChainEntry,
    pub segments: Vec<SegmentEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainEntry {
    pub n: usize,
    pub couplings: Vec<f64>,
    pub e0: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SegmentEntry {
    Evolve {
        gammas: Vec<f64>,
        biases: Vec<f64>,
        duration: f64,
    },
    Pulse {
        sites: Vec<usize>,
        axis: Axis,
        angle: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl From<Axis> for PauliAxis {
    fn from(a: Axis) -> Self {
        match a {
            Axis::X => PauliAxis::X,
            Axis::Y => PauliAxis::Y,
            Axis::Z => PauliAxis::Z,
        }
    }
}

impl From<PauliAxis> for Axis {
    fn from(a: PauliAxis) -> Self {
        match a {
            PauliAxis::X => Axis::X,
            PauliAxis::Y => Axis::Y,
            PauliAxis::Z => Axis::Z,
        }
    }
}

impl ScheduleFile {
    /// Parses a document. Syntax and schema errors carry the line and column.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule files contain only finite numbers")
    }

    pub fn from_schedule(s: &Schedule) -> Self {
        let chain = s.chain();
        ScheduleFile {
            chain: ChainEntry {
                n: chain.n(),
                couplings: chain.couplings().to_vec(),
                e0: chain.e0(),
            },
            segments: s
                .segments()
                .iter()
                .map(|seg| match seg {
                    Segment::Evolve { ctrl, duration } => SegmentEntry::Evolve {
                        gammas: ctrl.gammas().to_vec(),
                        biases: ctrl.biases().to_vec(),
                        duration: *duration,
                    },
                    Segment::IdealPulse { sites, axis, angle } => SegmentEntry::Pulse {
                        sites: sites.clone(),
                        axis: (*axis).into(),
                        angle: *angle,
                    },
                })
                .collect(),
        }
    }

    /// Cell count declared by the file, before any other validation.
    pub fn cells(&self) -> usize {
        self.chain.n
    }

    pub fn to_schedule(&self) -> Result<Schedule, CliError> {
        let invalid = |e: qcapulse::Error| CliError::Invalid(e.to_string());
        if self.chain.couplings.len() + 1 != self.chain.n {
            return Err(CliError::Invalid(format!(
                "chain declares {} cells but lists {} couplings",
                self.chain.n,
                self.chain.couplings.len()
            )));
        }
        let chain = ChainSpec::new(self.chain.couplings.clone(), self.chain.e0).map_err(invalid)?;
        let mut segments = Vec::with_capacity(self.segments.len());
        for (index, entry) in self.segments.iter().enumerate() {
            segments.push(match entry {
                SegmentEntry::Evolve {
                    gammas,
                    biases,
                    duration,
                } => Segment::evolve(
                    ControlParams::new(gammas.clone(), biases.clone())
                        .map_err(|e| CliError::Invalid(format!("segment {index}: {e}")))?,
                    *duration,
                ),
                SegmentEntry::Pulse { sites, axis, angle } => Segment::pulse(sites.clone(), (*axis).into(), *angle),
            });
        }
        Schedule::new(chain, segments).map_err(invalid)
    }
}
