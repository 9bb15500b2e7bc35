//! Parsed, serializable run configuration. Every command is a pure function
//! of a [`RunConfig`]. Enums are externally tagged: internal tagging buffers
//! numbers, which breaks exact float round trips under arbitrary precision.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use selfspec::verification::Fault;
use selfspec::{make_boundary, named, BoundaryParams, NamedBc, Result as CoreResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

/// A boundary condition as typed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BcSpec {
    Dirichlet,
    Neumann,
    Periodic,
    Antiperiodic,
    Robin { alpha: f64 },
    /// The Von Neumann-Krein extension of the run's interval length.
    Vnk,
    Raw { alpha: f64, beta: f64, n1: f64 },
}

impl BcSpec {
    /// Raw `n1` fixes `n = (n1, sqrt(1 - n1^2), 0)`; the spectrum depends on `n` only through `n1`.
    pub fn resolve(&self, length: f64) -> CoreResult<BoundaryParams> {
        match *self {
            BcSpec::Dirichlet => named(NamedBc::Dirichlet),
            BcSpec::Neumann => named(NamedBc::Neumann),
            BcSpec::Periodic => named(NamedBc::Periodic),
            BcSpec::Antiperiodic => named(NamedBc::Antiperiodic),
            BcSpec::Robin { alpha } => named(NamedBc::Robin(alpha)),
            BcSpec::Vnk => named(NamedBc::Vnk(length)),
            BcSpec::Raw { alpha, beta, n1 } => make_boundary(alpha, beta, raw_direction(n1)?),
        }
    }
}

pub fn raw_direction(n1: f64) -> CoreResult<[f64; 3]> {
    if !(-1.0..=1.0).contains(&n1) {
        return Err(selfspec::Error::InvalidParameter(format!("n1 must lie in [-1, 1], got {n1}")));
    }
    Ok([n1, (1.0 - n1 * n1).sqrt(), 0.0])
}

impl FromStr for BcSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        Ok(match lower.as_str() {
            "dirichlet" => BcSpec::Dirichlet,
            "neumann" => BcSpec::Neumann,
            "periodic" => BcSpec::Periodic,
            "antiperiodic" => BcSpec::Antiperiodic,
            "vnk" => BcSpec::Vnk,
            other => match other.strip_prefix("robin:") {
                Some(a) => BcSpec::Robin {
                    alpha: a.parse().map_err(|_| format!("robin angle `{a}` is not a number"))?,
                },
                None => {
                    return Err(format!(
                        "unknown boundary condition `{s}`; expected dirichlet, neumann, periodic, antiperiodic, robin:<alpha>, or vnk"
                    ))
                }
            },
        })
    }
}

impl fmt::Display for BcSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BcSpec::Dirichlet => write!(f, "dirichlet"),
            BcSpec::Neumann => write!(f, "neumann"),
            BcSpec::Periodic => write!(f, "periodic"),
            BcSpec::Antiperiodic => write!(f, "antiperiodic"),
            BcSpec::Robin { alpha } => write!(f, "robin:{alpha}"),
            BcSpec::Vnk => write!(f, "vnk"),
            BcSpec::Raw { alpha, beta, n1 } => write!(f, "alpha={alpha},beta={beta},n1={n1}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Classify {
        bc: BcSpec,
        length: f64,
    },
    Spectrum {
        bc: BcSpec,
        length: f64,
        k_max: f64,
        /// Also search for bound states `-kappa^2` with `kappa <= kappa_max`.
        kappa_max: Option<f64>,
    },
    Heat {
        bc: BcSpec,
        length: f64,
        max_order: f64,
    },
    Zeta {
        bc: BcSpec,
        length: f64,
        max_order: usize,
        numeric: bool,
        /// Extra points for the numerical continuation.
        s: Vec<f64>,
    },
    Det {
        bc: BcSpec,
        length: f64,
        numeric: bool,
    },
    Sweep {
        length: f64,
        n1: f64,
        alpha_points: usize,
        beta_points: usize,
    },
    Verify {
        only: Option<String>,
        fault: Option<Fault>,
        seed: Option<u64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Spectrum { .. } => "spectrum",
            Command::Heat { .. } => "heat",
            Command::Zeta { .. } => "zeta",
            Command::Det { .. } => "det",
            Command::Sweep { .. } => "sweep",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
}
