use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use selfspec::verification::Fault;

use crate::config::{BcSpec, Command, Format, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "selfspec",
    version,
    about = "Spectra, heat-trace coefficients, zeta functions and determinants of the Laplacian on [0, L] under selfadjoint boundary conditions",
    after_help = "Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 numerical failure (audit or quadrature).\n\
                  JSON is canonical; CSV prints the JSON header as a leading `# ` line, then the columns listed under each command."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct BcArgs {
    /// dirichlet | neumann | periodic | antiperiodic | robin:<alpha-radians> | vnk
    #[arg(long, required_unless_present = "alpha", conflicts_with_all = ["alpha", "beta", "n1"])]
    pub bc: Option<BcSpec>,
    /// Raw chart coordinate alpha in [-pi, pi]; needs --beta and --n1.
    #[arg(long, requires_all = ["beta", "n1"], allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Raw chart coordinate beta in [-pi/2, pi/2]; needs --alpha and --n1.
    #[arg(long, requires_all = ["alpha", "n1"], allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// First component of the unit vector n; needs --alpha and --beta.
    #[arg(long, requires_all = ["alpha", "beta"], allow_hyphen_values = true)]
    pub n1: Option<f64>,
    /// Interval length L.
    #[arg(long, default_value_t = 1.0)]
    pub length: f64,
}

impl BcArgs {
    fn spec(&self) -> BcSpec {
        match (self.bc, self.alpha, self.beta, self.n1) {
            (Some(bc), ..) => bc,
            (None, Some(alpha), Some(beta), Some(n1)) => BcSpec::Raw { alpha, beta, n1 },
            _ => unreachable!("clap enforces a complete boundary specification"),
        }
    }
}

#[derive(Debug, Args)]
pub struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Class, strongly-consistent membership, zero-mode count and det D_U.
    #[command(after_help = "CSV columns: class,strongly_consistent,zero_modes,det_d_re,det_d_im")]
    Classify {
        #[command(flatten)]
        bc: BcArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Eigenvalues k^2 with k <= kmax, with multiplicities.
    #[command(after_help = "CSV columns: index,kind,lambda,k,multiplicity (kind: bound | zero | positive)")]
    Spectrum {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 20.0)]
        kmax: f64,
        /// Also list bound states -kappa^2 with kappa <= this value.
        #[arg(long)]
        kappa_max: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Small-t heat-trace coefficients a_0 .. a_{max-order}.
    #[command(after_help = "CSV columns: order,m,coefficient (order is m written as a fraction)")]
    Heat {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 5.0)]
        max_order: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Zeta residues at 1/2 - n, values at -n, zeta'(0), and optional continuation points.
    #[command(after_help = "CSV columns: kind,s,value (kind: residue | value | zeta_prime_0 | continuation)")]
    Zeta {
        #[command(flatten)]
        bc: BcArgs,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        /// Use the numerical continuation instead of the closed forms.
        #[arg(long)]
        numeric: bool,
        /// Evaluate the continuation at these points (comma separated).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s: Vec<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// zeta'(0) and the functional determinant exp(-zeta'(0)).
    #[command(after_help = "CSV columns: method,zeta_prime_0,determinant")]
    Det {
        #[command(flatten)]
        bc: BcArgs,
        /// Add the numerical continuation value.
        #[arg(long)]
        numeric: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Grid over alpha in [0, pi], beta in [-pi/2, pi/2] at fixed n1.
    #[command(after_help = "CSV columns: alpha,beta,strongly_consistent,class,zero_modes,zeta_prime_0\n\
                            SELFSPEC_THREADS caps the worker threads; row order does not depend on it.")]
    Sweep {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        n1: f64,
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        /// Grid points per axis; overridden by --alpha-points / --beta-points.
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        #[arg(long)]
        alpha_points: Option<usize>,
        #[arg(long)]
        beta_points: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the acceptance criteria.
    #[command(after_help = "CSV columns: id,group,passed,measured,tolerance,description\n\
                            Timings and diagnostics are written to stderr.")]
    Verify {
        /// Only criteria whose id or group starts with this.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, value_parser = parse_fault)]
        inject_fault: Option<Fault>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| format!("unknown fault `{s}`; available: flip-a1-sign"))
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let (command, out) = match self.command {
            Sub::Classify { bc, out } => (
                Command::Classify {
                    bc: bc.spec(),
                    length: bc.length,
                },
                out,
            ),
            Sub::Spectrum { bc, kmax, kappa_max, out } => (
                Command::Spectrum {
                    bc: bc.spec(),
                    length: bc.length,
                    k_max: kmax,
                    kappa_max,
                },
                out,
            ),
            Sub::Heat { bc, max_order, out } => (
                Command::Heat {
                    bc: bc.spec(),
                    length: bc.length,
                    max_order,
                },
                out,
            ),
            Sub::Zeta {
                bc,
                max_order,
                numeric,
                s,
                out,
            } => (
                Command::Zeta {
                    bc: bc.spec(),
                    length: bc.length,
                    max_order,
                    numeric,
                    s,
                },
                out,
            ),
            Sub::Det { bc, numeric, out } => (
                Command::Det {
                    bc: bc.spec(),
                    length: bc.length,
                    numeric,
                },
                out,
            ),
            Sub::Sweep {
                n1,
                length,
                resolution,
                alpha_points,
                beta_points,
                out,
            } => (
                Command::Sweep {
                    length,
                    n1,
                    alpha_points: alpha_points.unwrap_or(resolution),
                    beta_points: beta_points.unwrap_or(resolution),
                },
                out,
            ),
            Sub::Verify {
                only,
                inject_fault,
                seed,
                out,
            } => (
                Command::Verify {
                    only,
                    fault: inject_fault,
                    seed,
                },
                out,
            ),
        };
        RunConfig {
            command,
            format: out.format,
            out: out.out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, clap::Error> {
        Cli::try_parse_from(std::iter::once("selfspec").chain(args.iter().copied())).map(Cli::into_config)
    }

    #[test]
    fn raw_and_named_forms() {
        let c = parse(&["classify", "--alpha", "0.3", "--beta", "-0.3", "--n1", "1"]).unwrap();
        assert_eq!(
            c.command,
            Command::Classify {
                bc: BcSpec::Raw { alpha: 0.3, beta: -0.3, n1: 1.0 },
                length: 1.0
            }
        );
        let c = parse(&["heat", "--bc", "robin:1.0472", "--length", "2", "--format", "csv"]).unwrap();
        assert_eq!(c.format, Format::Csv);
        assert!(matches!(c.command, Command::Heat { bc: BcSpec::Robin { .. }, length, .. } if length == 2.0));
    }

    #[test]
    fn incomplete_or_conflicting_bc_is_rejected() {
        assert!(parse(&["classify", "--alpha", "0.3", "--beta", "0.1"]).is_err());
        assert!(parse(&["classify"]).is_err());
        assert!(parse(&["classify", "--bc", "dirichlet", "--alpha", "0.3", "--beta", "0.1", "--n1", "1"]).is_err());
        assert!(parse(&["classify", "--bc", "mixed"]).is_err());
    }

    #[test]
    fn verify_flags() {
        let c = parse(&["verify", "--only", "det", "--inject-fault", "flip-a1-sign"]).unwrap();
        assert_eq!(
            c.command,
            Command::Verify {
                only: Some("det".into()),
                fault: Some(Fault::FlipA1Sign),
                seed: None
            }
        );
        assert!(parse(&["verify", "--inject-fault", "nope"]).is_err());
    }

    #[test]
    fn zeta_points_list() {
        let c = parse(&["zeta", "--bc", "dirichlet", "--s", "0.8,-0.25"]).unwrap();
        assert!(matches!(c.command, Command::Zeta { ref s, .. } if s == &[0.8, -0.25]));
    }
}
