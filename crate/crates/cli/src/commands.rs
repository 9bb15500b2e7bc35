use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use selfspec::verification::{self, VerifyOptions};
use selfspec::zeta::{numeric_residues_and_values, DEFAULT_SUBTRACT};
use selfspec::{
    bound_states, classify, coefficients, eigenvalues, is_strongly_consistent, make_boundary,
    numeric_zeta, numeric_zeta_prime_zero, residues_and_values, zero_modes, zeta_prime_at_zero,
    BoundaryParams, Complex64, Error, ExtensionClass,
};

use crate::config::{raw_direction, BcSpec, Command};
use crate::table::{Cell, Header, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }
}

/// A rendered-ready table and the exit code it implies.
pub struct Outcome {
    pub table: Table,
    pub exit_code: i32,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome { table, exit_code: EXIT_OK }
    }
}

fn header(spec: &BcSpec, bc: &BoundaryParams, length: f64) -> Header {
    let n = bc.n();
    Header {
        bc: Some(spec.to_string()),
        params: Some([bc.alpha(), bc.beta(), n[0], n[1], n[2]]),
        length: Some(length),
        class: Some(classify(bc, length).name().to_string()),
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Classify { bc, length } => classify_cmd(bc, *length).map(Outcome::from),
        Command::Spectrum {
            bc,
            length,
            k_max,
            kappa_max,
        } => spectrum_cmd(bc, *length, *k_max, *kappa_max).map(Outcome::from),
        Command::Heat { bc, length, max_order } => heat_cmd(bc, *length, *max_order).map(Outcome::from),
        Command::Zeta {
            bc,
            length,
            max_order,
            numeric,
            s,
        } => zeta_cmd(bc, *length, *max_order, *numeric, s).map(Outcome::from),
        Command::Det { bc, length, numeric } => det_cmd(bc, *length, *numeric).map(Outcome::from),
        Command::Sweep {
            length,
            n1,
            alpha_points,
            beta_points,
        } => sweep_cmd(*length, *n1, *alpha_points, *beta_points).map(Outcome::from),
        Command::Verify { only, fault, seed } => verify_cmd(VerifyOptions {
            only: only.clone(),
            fault: *fault,
            seed: *seed,
        }),
    }
}

fn resolve(spec: &BcSpec, length: f64) -> Result<BoundaryParams, CliError> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidLength(length).into());
    }
    Ok(spec.resolve(length)?)
}

fn classify_cmd(spec: &BcSpec, length: f64) -> Result<Table, CliError> {
    let bc = resolve(spec, length)?;
    let zm = zero_modes(&bc, length);
    let mut t = Table::new(
        "classify",
        header(spec, &bc, length),
        vec!["class", "strongly_consistent", "zero_modes", "det_d_re", "det_d_im"],
    );
    t.push(vec![
        classify(&bc, length).name().into(),
        is_strongly_consistent(&bc).into(),
        zm.count.into(),
        zm.det_d.re.into(),
        zm.det_d.im.into(),
    ]);
    Ok(t)
}

fn spectrum_cmd(spec: &BcSpec, length: f64, k_max: f64, kappa_max: Option<f64>) -> Result<Table, CliError> {
    let bc = resolve(spec, length)?;
    let spectrum = eigenvalues(&bc, length, k_max)?;
    let mut t = Table::new(
        "spectrum",
        header(spec, &bc, length),
        vec!["index", "kind", "lambda", "k", "multiplicity"],
    );
    t.meta.push(("k_max", k_max.into()));
    t.meta.push(("zero_modes", spectrum.zero_mode_count.into()));
    let mut index = 0usize;
    let mut row = |t: &mut Table, kind: &str, lambda: f64, k: f64, mult: u32| {
        t.push(vec![index.into(), kind.into(), lambda.into(), k.into(), mult.into()]);
        index += 1;
    };
    if let Some(kappa) = kappa_max {
        t.meta.push(("kappa_max", kappa.into()));
        let mut bound = bound_states(&bc, length, kappa)?;
        bound.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        for b in bound {
            row(&mut t, "bound", b.lambda, b.k, b.multiplicity);
        }
    }
    if spectrum.zero_mode_count > 0 {
        row(&mut t, "zero", 0.0, 0.0, spectrum.zero_mode_count);
    }
    for e in &spectrum.eigenvalues {
        row(&mut t, "positive", e.lambda, e.k, e.multiplicity);
    }
    Ok(t)
}

fn heat_cmd(spec: &BcSpec, length: f64, max_order: f64) -> Result<Table, CliError> {
    let bc = resolve(spec, length)?;
    let coeffs = coefficients(&bc, length, max_order)?;
    let mut t = Table::new("heat", header(spec, &bc, length), vec!["order", "m", "coefficient"]);
    t.meta.push(("zero_modes", coeffs.zero_mode_count.into()));
    for (m, a) in &coeffs.values {
        t.push(vec![m.to_string().into(), m.value().into(), (*a).into()]);
    }
    Ok(t)
}

fn zeta_cmd(spec: &BcSpec, length: f64, max_order: usize, numeric: bool, points: &[f64]) -> Result<Table, CliError> {
    let bc = resolve(spec, length)?;
    let (report, prime) = if numeric {
        (
            numeric_residues_and_values(&bc, length, max_order)?,
            Some(numeric_zeta_prime_zero(&bc, length)?),
        )
    } else {
        (residues_and_values(&bc, length, max_order)?, optional_prime(&bc, length)?)
    };
    let mut t = Table::new("zeta", header(spec, &bc, length), vec!["kind", "s", "value"]);
    t.meta.push(("method", if numeric { "numeric_continuation" } else { "closed_form" }.into()));
    for r in &report.residues {
        t.push(vec!["residue".into(), r.s.into(), r.value.into()]);
    }
    for v in &report.values {
        t.push(vec!["value".into(), v.s.into(), v.value.into()]);
    }
    t.push(vec!["zeta_prime_0".into(), 0.0.into(), prime.into()]);
    for &s in points {
        let z = numeric_zeta(&bc, length, Complex64::new(s, 0.0), DEFAULT_SUBTRACT)?;
        t.push(vec!["continuation".into(), s.into(), z.re.into()]);
    }
    Ok(t)
}

/// `zeta'(0)` in closed form, `None` where the determinant vanishes.
fn optional_prime(bc: &BoundaryParams, length: f64) -> Result<Option<f64>, CliError> {
    match zeta_prime_at_zero(bc, length) {
        Ok(v) => Ok(Some(v)),
        Err(Error::DegenerateDeterminant) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn det_cmd(spec: &BcSpec, length: f64, numeric: bool) -> Result<Table, CliError> {
    let bc = resolve(spec, length)?;
    let mut t = Table::new(
        "det",
        header(spec, &bc, length),
        vec!["method", "zeta_prime_0", "determinant"],
    );
    let closed = zeta_prime_at_zero(&bc, length)?;
    t.push(vec!["closed_form".into(), closed.into(), (-closed).exp().into()]);
    if numeric {
        let z = numeric_zeta_prime_zero(&bc, length)?;
        t.push(vec!["numeric_continuation".into(), z.into(), (-z).exp().into()]);
    }
    Ok(t)
}

/// Thread count for sweeps: `SELFSPEC_THREADS` if set to a positive integer.
fn sweep_threads() -> Result<Option<usize>, CliError> {
    match std::env::var("SELFSPEC_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("SELFSPEC_THREADS must be a positive integer, got `{v}`"))),
        },
    }
}

struct SweepCell {
    alpha: f64,
    beta: f64,
    consistent: bool,
    class: ExtensionClass,
    zero_modes: u32,
    zeta_prime_0: Option<f64>,
}

fn sweep_cell(alpha: f64, beta: f64, n: [f64; 3], length: f64) -> Result<SweepCell, Error> {
    let bc = make_boundary(alpha, beta, n)?;
    let class = classify(&bc, length);
    let zeta_prime_0 = if class == ExtensionClass::Unsupported {
        None
    } else {
        zeta_prime_at_zero(&bc, length).ok()
    };
    Ok(SweepCell {
        alpha,
        beta,
        consistent: is_strongly_consistent(&bc),
        class,
        zero_modes: zero_modes(&bc, length).count,
        zeta_prime_0,
    })
}

fn sweep_cmd(length: f64, n1: f64, alpha_points: usize, beta_points: usize) -> Result<Table, CliError> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidLength(length).into());
    }
    if alpha_points < 2 || beta_points < 2 {
        return Err(CliError::Usage("sweep needs at least 2 grid points per axis".into()));
    }
    let n = raw_direction(n1)?;
    let grid: Vec<(f64, f64)> = (0..alpha_points)
        .flat_map(|i| {
            let alpha = PI * i as f64 / (alpha_points - 1) as f64;
            (0..beta_points).map(move |j| (alpha, -FRAC_PI_2 + PI * j as f64 / (beta_points - 1) as f64))
        })
        .collect();
    let compute = || -> Result<Vec<SweepCell>, Error> {
        grid.par_iter().map(|&(a, b)| sweep_cell(a, b, n, length)).collect()
    };
    let cells = match sweep_threads()? {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(compute)?,
        None => compute()?,
    };
    let mut t = Table::new(
        "sweep",
        Header {
            bc: Some(format!("sweep:n1={n1}")),
            params: None,
            length: Some(length),
            class: None,
        },
        vec!["alpha", "beta", "strongly_consistent", "class", "zero_modes", "zeta_prime_0"],
    );
    t.meta.push(("n1", n1.into()));
    t.meta.push(("alpha_points", alpha_points.into()));
    t.meta.push(("beta_points", beta_points.into()));
    for c in cells {
        t.push(vec![
            c.alpha.into(),
            c.beta.into(),
            c.consistent.into(),
            c.class.name().into(),
            c.zero_modes.into(),
            c.zeta_prime_0.into(),
        ]);
    }
    Ok(t)
}

fn verify_cmd(options: VerifyOptions) -> Result<Outcome, CliError> {
    let results = verification::run(&options);
    if results.is_empty() {
        return Err(CliError::Usage(format!(
            "no criterion matches `{}`",
            options.only.as_deref().unwrap_or("")
        )));
    }
    let mut t = Table::new(
        "verify",
        Header {
            bc: None,
            params: None,
            length: None,
            class: None,
        },
        vec!["id", "group", "passed", "measured", "tolerance", "description"],
    );
    t.meta.push(("seed", Cell::Int(options.seed.unwrap_or(verification::DEFAULT_SEED) as i64)));
    t.meta.push((
        "fault",
        options.fault.map_or(Cell::Null, |f| {
            Cell::Text(serde_json::to_value(f).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default())
        }),
    ));
    let mut all_passed = true;
    for r in &results {
        // timings and diagnostics go to stderr so the table stays byte-stable
        eprintln!("{}", r.line());
        for d in &r.details {
            eprintln!("    {d}");
        }
        all_passed &= r.passed;
        t.push(vec![
            r.id.clone().into(),
            r.group.clone().into(),
            r.passed.into(),
            r.measured.into(),
            r.tolerance.into(),
            r.description.clone().into(),
        ]);
    }
    Ok(Outcome {
        table: t,
        exit_code: if all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_mapping() {
        let audit = CliError::Core(Error::AuditFailed {
            expected: 3,
            found: 2,
            detail: "test".into(),
        });
        assert_eq!(audit.exit_code(), EXIT_NUMERICAL);
        let quad = CliError::Core(Error::QuadratureFailure {
            estimate: 1.0,
            tolerance: 0.1,
        });
        assert_eq!(quad.exit_code(), EXIT_NUMERICAL);
        assert_eq!(CliError::Core(Error::InvalidLength(-1.0)).exit_code(), EXIT_USAGE);
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
    }

    #[test]
    fn spectrum_rows_are_ordered() {
        let out = execute(&Command::Spectrum {
            bc: BcSpec::Raw {
                alpha: -FRAC_PI_2,
                beta: 0.0,
                n1: 1.0,
            },
            length: 10.0,
            k_max: 2.0,
            kappa_max: Some(10.0),
        })
        .unwrap();
        let lambdas: Vec<f64> = out
            .table
            .rows
            .iter()
            .map(|r| match r[2] {
                Cell::Num(x) => x,
                _ => panic!("lambda is numeric"),
            })
            .collect();
        assert!(lambdas[0] < 0.0);
        assert!(lambdas.windows(2).all(|w| w[0] <= w[1]));
    }
}
