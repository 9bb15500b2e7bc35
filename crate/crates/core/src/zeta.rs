//! Spectral zeta function `zeta(s) = sum lambda^{-s}` over the positive
//! spectrum: residues, values at non-positive integers, `zeta'(0)`, and an
//! independent numerical continuation.
//!
//! The continuation starts from
//! `zeta(s) = sin(pi s)/pi * int_0^inf k^{-2s} d/dk log f(ik) dk`
//! and splits the integral at `K`. Below `K` the Taylor terms of
//! `log f(ik)` that spoil convergence are subtracted; above `K` the
//! large-`k` expansion `L + c/k + sum_m d_m k^{-m-1}` is subtracted. The
//! subtracted pieces are integrated exactly and produce the pole terms.
//! The large-`k` data come from the roots of the algebraic part of `f(ix)`,
//! not from the closed-form coefficient tables.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::{check_length, classify, BoundaryParams, ExtensionClass};
use crate::heatkernel::{b_coeffs, c_coeffs, HalfOrder, HeatCoefficients};
use crate::quadrature::{integrate_many, QuadSettings};
use crate::spectrum::{SecularFunction, SERIES_RADIUS};

/// Largest `n_max` accepted by [`residues_and_values`].
pub const REPORT_ORDER_CAP: usize = 29;
/// Default number of large-`k` terms subtracted by [`numeric_zeta`].
pub const DEFAULT_SUBTRACT: usize = 6;
/// Exclusion radius around poles and the window edge.
const POLE_GUARD: f64 = 1e-3;
/// Extra asymptotic terms used for the tail beyond the last quadrature node.
const TAIL_TERMS: usize = 20;
/// Taylor terms of `log f(ix)` used near the origin.
const LOG_TERMS: usize = 24;
/// Step for the `zeta'(0)` central differences.
const DIFF_STEP: f64 = 1e-4;
/// Offsets for residue extraction.
const RESIDUE_OFFSET: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaMethod {
    ClosedForm,
    NumericContinuation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaPoint {
    pub s: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaReport {
    /// Residues at `s = 1/2, -1/2, -3/2, ...`.
    pub residues: Vec<ZetaPoint>,
    /// Values at `s = 0, -1, -2, ...`.
    pub values: Vec<ZetaPoint>,
    pub zeta_prime_0: Option<f64>,
    pub method: ZetaMethod,
    pub class: ExtensionClass,
    pub length: f64,
}

fn supported_class(bc: &BoundaryParams, length: f64) -> Result<ExtensionClass> {
    check_length(length)?;
    let class = classify(bc, length);
    if class == ExtensionClass::Unsupported {
        return Err(Error::Unsupported);
    }
    Ok(class)
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Coefficient of a given order as a function of its index.
type Term = Box<dyn Fn(usize) -> f64>;

/// Closed-form residues at `1/2 - n` and values at `-n` for `n = 0..=n_max`.
pub fn residues_and_values(bc: &BoundaryParams, length: f64, n_max: usize) -> Result<ZetaReport> {
    let class = supported_class(bc, length)?;
    if n_max > REPORT_ORDER_CAP {
        return Err(Error::OrderTooLarge {
            requested: n_max as f64,
            cap: REPORT_ORDER_CAP as f64,
        });
    }
    let series_len = (2 * n_max).max(1);
    // residue at -(2n+1)/2 for n = 0..n_max-1, value at -n for n >= 1
    let (residue, value, zeta0): (Term, Term, f64) = match class {
        ExtensionClass::Generic | ExtensionClass::GenericB => {
            let b = if class == ExtensionClass::Generic {
                b_coeffs(bc, series_len)?
            } else {
                c_coeffs(bc, series_len)?
            };
            let b2 = b.clone();
            (
                Box::new(move |n| sign(n) * (2 * n + 1) as f64 * b[2 * n] / (2.0 * PI)),
                Box::new(move |n| -sign(n) * n as f64 * b2[2 * n - 1]),
                if class == ExtensionClass::Generic { 0.5 } else { 0.0 },
            )
        }
        ExtensionClass::DirichletPoint => (Box::new(|_| 0.0), Box::new(|_| 0.0), -0.5),
        ExtensionClass::PeriodicPoint => (Box::new(|_| 0.0), Box::new(|_| 0.0), -1.0),
        ExtensionClass::ZeroModeLine => {
            let t = bc.alpha().tan();
            (
                Box::new(move |n| sign(n) * t.powi(2 * n as i32 + 1) / (2.0 * PI)),
                Box::new(move |n| sign(n) * t.powi(2 * n as i32) / 2.0),
                -0.5,
            )
        }
        ExtensionClass::VNK => {
            let r = 2.0 / length;
            (
                Box::new(move |n| -sign(n) * r.powi(2 * n as i32 + 1) / (2.0 * PI)),
                Box::new(move |n| sign(n) * r.powi(2 * n as i32) / 2.0),
                -1.5,
            )
        }
        ExtensionClass::Unsupported => unreachable!("rejected above"),
    };
    let mut residues = vec![ZetaPoint {
        s: 0.5,
        value: length / (2.0 * PI),
    }];
    residues.extend((1..=n_max).map(|n| ZetaPoint {
        s: 0.5 - n as f64,
        value: residue(n - 1),
    }));
    let mut values = vec![ZetaPoint { s: 0.0, value: zeta0 }];
    values.extend((1..=n_max).map(|n| ZetaPoint {
        s: -(n as f64),
        value: value(n),
    }));
    Ok(ZetaReport {
        residues,
        values,
        zeta_prime_0: None,
        method: ZetaMethod::ClosedForm,
        class,
        length,
    })
}

/// `Gamma(1/2 - n)`.
fn gamma_half_negative(n: usize) -> f64 {
    let mut g = PI.sqrt();
    for j in 1..=n {
        g /= 0.5 - j as f64;
    }
    g
}

/// Heat coefficients from zeta data: `a_{1/2 - z} = Gamma(z) Res(z)` and
/// `a_{1/2 + q} = (-1)^q zeta(-q) / q! + [q = 0] N_Z`.
pub fn heat_coeffs_from_zeta(report: &ZetaReport, zero_mode_count: u32) -> HeatCoefficients {
    let mut values = std::collections::BTreeMap::new();
    for r in &report.residues {
        let n = (0.5 - r.s).round() as usize;
        values.insert(HalfOrder(2 * n as u32), gamma_half_negative(n) * r.value);
    }
    for v in &report.values {
        let q = (-v.s).round() as usize;
        let fact: f64 = (1..=q).map(|i| i as f64).product();
        let mut a = sign(q) * v.value / fact;
        if q == 0 {
            a += zero_mode_count as f64;
        }
        values.insert(HalfOrder(2 * q as u32 + 1), a);
    }
    HeatCoefficients {
        values,
        class: report.class,
        zero_mode_count,
    }
}

fn log_abs(x: f64) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::DegenerateDeterminant);
    }
    Ok(x.abs().ln())
}

/// `zeta'(0)` in closed form; `exp(-zeta'(0))` is the functional determinant.
pub fn zeta_prime_at_zero(bc: &BoundaryParams, length: f64) -> Result<f64> {
    let class = supported_class(bc, length)?;
    let l = length;
    let (sa, ca) = bc.alpha().sin_cos();
    let (sb, cb) = bc.beta().sin_cos();
    let n1sb = bc.n1() * sb;
    let arg = match class {
        ExtensionClass::Generic => (2.0 * l * (ca - cb) - 4.0 * (sa + n1sb)) / (ca + cb),
        ExtensionClass::GenericB => (l * (ca - cb) - 2.0 * (sa + n1sb)) / sa,
        ExtensionClass::DirichletPoint => 2.0 * l,
        ExtensionClass::ZeroModeLine => l * (2.0 * ca + l * sa) / ca,
        ExtensionClass::PeriodicPoint => l * l,
        ExtensionClass::VNK => l * l * l / 6.0,
        ExtensionClass::Unsupported => unreachable!("rejected above"),
    };
    Ok(-log_abs(arg)?)
}

/// Large-`k` behaviour `d/dk log f(ik) ~ L + c/k + sum_m d_m k^{-m-1}`.
struct Asymptotics {
    c: f64,
    d: Vec<f64>,
    /// Largest root magnitude; `d_m` grows like `scale^m`.
    scale: f64,
    roots: Vec<Complex64>,
}

impl Asymptotics {
    /// Algebraic log-derivative minus `c/x` and `d_1..d_n`:
    /// `sum_r r^{n+1} / (x^{n+1} (x - r))`.
    fn algebraic_remainder(&self, x: f64, n: usize) -> f64 {
        self.roots
            .iter()
            .map(|&r| (r / x).powi(n as i32 + 1) / (x - r))
            .sum::<Complex64>()
            .re
    }
}

/// Up to exponentially small terms `2 e^{-xL} f(ix) x^p = Q(x)` with
/// `Q(x) = -(cos a + cos b) x^2 - 2 sin a x + (cos a - cos b)`, so
/// `c = deg Q - p` and `d_m` is the `m`-th power sum of the roots of `Q`.
fn asymptotics(bc: &BoundaryParams, class: ExtensionClass, order: i32, terms: usize) -> Asymptotics {
    let (sa, ca) = bc.alpha().sin_cos();
    let cb = bc.beta().cos();
    let q2 = -(ca + cb);
    let q1 = -2.0 * sa;
    let q0 = ca - cb;
    let roots: Vec<Complex64> = match class {
        ExtensionClass::Generic | ExtensionClass::ZeroModeLine | ExtensionClass::VNK => {
            let disc = Complex64::new(q1 * q1 - 4.0 * q2 * q0, 0.0).sqrt();
            // stable pairing: the larger root avoids cancellation
            let big = if q1 >= 0.0 {
                (-q1 - disc) / (2.0 * q2)
            } else {
                (-q1 + disc) / (2.0 * q2)
            };
            let small = if big.norm() > 0.0 {
                Complex64::new(q0 / q2, 0.0) / big
            } else {
                Complex64::new(0.0, 0.0)
            };
            vec![big, small]
        }
        ExtensionClass::GenericB | ExtensionClass::PeriodicPoint => vec![Complex64::new(-q0 / q1, 0.0)],
        ExtensionClass::DirichletPoint | ExtensionClass::Unsupported => Vec::new(),
    };
    let d = (1..=terms)
        .map(|m| roots.iter().map(|r| r.powi(m as i32)).sum::<Complex64>().re)
        .collect();
    Asymptotics {
        c: roots.len() as f64 - order as f64,
        d,
        scale: roots.iter().map(|r| r.norm()).fold(0.0, f64::max),
        roots,
    }
}

/// `coef * sin(pi s) / (pi (s - s0))` for integer or half-integer `s0`.
fn pole_term(coef: Complex64, s: Complex64, s0: f64, negligible: bool) -> Result<Complex64> {
    let w = s - s0;
    if s0.fract() == 0.0 {
        // sin(pi s) = (-1)^{s0} sin(pi w)
        let sinc = if w.norm() < 1e-4 {
            let pw2 = (PI * w) * (PI * w);
            1.0 - pw2 / 6.0 + pw2 * pw2 / 120.0
        } else {
            (PI * w).sin() / (PI * w)
        };
        let par = if (s0 as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        return Ok(coef * par * sinc);
    }
    if negligible {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if w.norm() < POLE_GUARD {
        return Err(Error::PoleProximity {
            pole: s0,
            distance: w.norm(),
        });
    }
    Ok(coef * (PI * s).sin() / (PI * w))
}

/// `K^{-2s}` style powers.
fn kpow(k: f64, exponent: Complex64) -> Complex64 {
    (exponent * k.ln()).exp()
}

fn quad_settings() -> QuadSettings {
    QuadSettings {
        abs_tol: 1e-13,
        rel_tol: 1e-13,
        max_intervals: 20000,
    }
}

/// Numerical continuation of `zeta(s)` for several `s` sharing quadrature nodes.
pub fn numeric_zeta_many(
    bc: &BoundaryParams,
    length: f64,
    points: &[Complex64],
    n_subtract: usize,
) -> Result<Vec<Complex64>> {
    let class = supported_class(bc, length)?;
    let bound = -(n_subtract as f64) / 2.0 + POLE_GUARD;
    for s in points {
        if !s.re.is_finite() || !s.im.is_finite() {
            return Err(Error::NonFinite("s"));
        }
        if s.re <= bound {
            return Err(Error::OutsideWindow { re: s.re, bound });
        }
    }
    let zm = class.zero_mode_count().expect("supported class");
    let sec = SecularFunction::new(bc, length, zm);
    let asym = asymptotics(bc, class, sec.order(), n_subtract + TAIL_TERMS);
    let l = length;

    // Taylor data of log f(ix) near 0: D(x) = sum_j 2 j ell_j x^{2j-1}.
    let ell = sec.log_series_imag(LOG_TERMS);
    let radius = ell
        .iter()
        .enumerate()
        .skip(LOG_TERMS / 2)
        .filter(|(_, v)| v.abs() > 0.0)
        .map(|(j, v)| v.abs().powf(-1.0 / (2.0 * (j + 1) as f64)))
        .fold(f64::INFINITY, f64::min);
    let split = 1f64.max(2.0 * asym.scale);
    let series_edge = split.min(radius / 3.0).min(SERIES_EDGE_CAP / l);
    let far = (45.0 / l).max(4.0 * asym.scale).max(10.0).max(2.0 * split);

    let subtract: Vec<usize> = points.iter().map(|s| s.re.round().max(0.0) as usize).collect();
    let n = points.len();
    let exps: Vec<Complex64> = points.iter().map(|s| -2.0 * s).collect();

    let inner = |k: f64, out: &mut [Complex64]| {
        let near = k <= series_edge;
        let d_full = if near { 0.0 } else { sec.imag_axis(k).log_deriv };
        for i in 0..n {
            let j_sub = subtract[i];
            let mut d = 0.0;
            if near {
                for (j, v) in ell.iter().enumerate().skip(j_sub).rev() {
                    let jj = (j + 1) as f64;
                    d += 2.0 * jj * v * k.powi(2 * j as i32 + 1);
                }
            } else {
                d = d_full;
                for (j, v) in ell.iter().enumerate().take(j_sub) {
                    d -= 2.0 * (j + 1) as f64 * v * k.powi(2 * j as i32 + 1);
                }
            }
            out[i] = if k == 0.0 { Complex64::new(0.0, 0.0) } else { kpow(k, exps[i]) * d };
        }
    };
    let outer = |k: f64, out: &mut [Complex64]| {
        let r = if k * l > SERIES_RADIUS {
            sec.imag_axis_exponential_part(k) + asym.algebraic_remainder(k, n_subtract)
        } else {
            let mut r = sec.imag_axis(k).log_deriv - l - asym.c / k;
            let inv = 1.0 / k;
            let mut p = inv * inv;
            for dm in asym.d.iter().take(n_subtract) {
                r -= dm * p;
                p *= inv;
            }
            r
        };
        for i in 0..n {
            out[i] = kpow(k, exps[i]) * r;
        }
    };

    let mut total = vec![Complex64::new(0.0, 0.0); n];
    let mut accumulate = |f: &dyn Fn(f64, &mut [Complex64]), a: f64, b: f64| -> Result<()> {
        if b <= a {
            return Ok(());
        }
        let (v, _) = integrate_many(f, a, b, n, quad_settings())?;
        for i in 0..n {
            total[i] += v[i];
        }
        Ok(())
    };
    accumulate(&inner, 0.0, series_edge)?;
    for (a, b) in geometric_panels(series_edge, split) {
        accumulate(&inner, a, b)?;
    }
    for (a, b) in geometric_panels(split, far) {
        accumulate(&outer, a, b)?;
    }

    let mut out = Vec::with_capacity(n);
    for (i, &s) in points.iter().enumerate() {
        let mut bracket = total[i];
        for m in n_subtract + 1..=n_subtract + TAIL_TERMS {
            bracket += asym.d[m - 1] * kpow(far, -2.0 * s - m as f64) / (2.0 * s + m as f64);
        }
        let mut z = (PI * s).sin() / PI * bracket;
        for (j, v) in ell.iter().enumerate().take(subtract[i]) {
            let jj = (j + 1) as f64;
            z += pole_term(-jj * v * kpow(split, 2.0 * (jj - s)), s, jj, false)?;
        }
        z += pole_term(0.5 * l * kpow(split, 1.0 - 2.0 * s), s, 0.5, false)?;
        z += pole_term(0.5 * asym.c * kpow(split, -2.0 * s), s, 0.0, false)?;
        for (m, dm) in asym.d.iter().enumerate().take(n_subtract) {
            let m = (m + 1) as f64;
            let negligible = dm.abs() <= 1e-14 * asym.scale.max(1.0).powf(m);
            z += pole_term(0.5 * dm * kpow(split, -2.0 * s - m), s, -m / 2.0, negligible)?;
        }
        out.push(z);
    }
    Ok(out)
}

/// Series evaluation is limited to `k L` below this value.
const SERIES_EDGE_CAP: f64 = 2.0;

/// Panels `[a, 2a], [2a, 4a], ...` ending at `b`.
fn geometric_panels(a: f64, b: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut lo = a;
    while lo < b {
        let hi = (2.0 * lo).min(b);
        out.push((lo, hi));
        lo = hi;
    }
    out
}

/// Numerical continuation of `zeta(s)`, valid for `Re s > -n_subtract/2`.
pub fn numeric_zeta(bc: &BoundaryParams, length: f64, s: Complex64, n_subtract: usize) -> Result<Complex64> {
    Ok(numeric_zeta_many(bc, length, &[s], n_subtract)?[0])
}

/// `zeta'(0)` from central differences of [`numeric_zeta`] at `+-h` and
/// `+-h/2`, `h = 1e-4`, Richardson-extrapolated.
pub fn numeric_zeta_prime_zero(bc: &BoundaryParams, length: f64) -> Result<f64> {
    let h = DIFF_STEP;
    let pts = [h, -h, h / 2.0, -h / 2.0].map(|x| Complex64::new(x, 0.0));
    let z = numeric_zeta_many(bc, length, &pts, DEFAULT_SUBTRACT)?;
    let d1 = (z[0] - z[1]).re / (2.0 * h);
    let d2 = (z[2] - z[3]).re / h;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Residue of `zeta` at `s0` from `(s - s0) zeta(s)` at `s0 +- w`, `w = 0.01, 0.02`.
pub fn numeric_residue(bc: &BoundaryParams, length: f64, s0: f64, n_subtract: usize) -> Result<f64> {
    let w = RESIDUE_OFFSET;
    let pts = [s0 + w, s0 - w, s0 + 2.0 * w, s0 - 2.0 * w].map(|x| Complex64::new(x, 0.0));
    let z = numeric_zeta_many(bc, length, &pts, n_subtract)?;
    let r1 = 0.5 * (w * z[0].re - w * z[1].re);
    let r2 = 0.5 * (2.0 * w * z[2].re - 2.0 * w * z[3].re);
    Ok((4.0 * r1 - r2) / 3.0)
}

/// Residues and values computed by the numerical continuation instead of
/// the closed forms.
pub fn numeric_residues_and_values(bc: &BoundaryParams, length: f64, n_max: usize) -> Result<ZetaReport> {
    let class = supported_class(bc, length)?;
    let n_subtract = 2 * n_max + 2;
    let mut residues = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let s = 0.5 - n as f64;
        residues.push(ZetaPoint {
            s,
            value: numeric_residue(bc, length, s, n_subtract)?,
        });
    }
    let pts: Vec<Complex64> = (0..=n_max).map(|n| Complex64::new(-(n as f64), 0.0)).collect();
    let values = numeric_zeta_many(bc, length, &pts, n_subtract)?
        .iter()
        .zip(&pts)
        .map(|(z, s)| ZetaPoint { s: s.re, value: z.re })
        .collect();
    Ok(ZetaReport {
        residues,
        values,
        zeta_prime_0: Some(numeric_zeta_prime_zero(bc, length)?),
        method: ZetaMethod::NumericContinuation,
        class,
        length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{make_boundary, named, NamedBc};
    use crate::heatkernel::coefficients;
    use std::f64::consts::FRAC_PI_3;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn closed_form_values() {
        let g = make_boundary(0.4, 0.3, [0.0, 1.0, 0.0]).unwrap();
        assert_eq!(classify(&g, 1.0), ExtensionClass::Generic);
        let r = residues_and_values(&g, 1.0, 3).unwrap();
        assert_eq!(r.values[0].value, 0.5);
        assert_eq!(r.residues[0], ZetaPoint { s: 0.5, value: 1.0 / (2.0 * PI) });
        let z = make_boundary(0.3, -0.3, [1.0, 0.0, 0.0]).unwrap();
        assert_eq!(residues_and_values(&z, 1.0, 0).unwrap().values[0].value, -0.5);
        let p = named(NamedBc::Periodic).unwrap();
        assert_eq!(residues_and_values(&p, 1.0, 0).unwrap().values[0].value, -1.0);
        assert!(matches!(residues_and_values(&p, 1.0, 30), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn inversion_examples() {
        let d = named(NamedBc::Dirichlet).unwrap();
        let r = residues_and_values(&d, 2.0, 1).unwrap();
        let a = heat_coeffs_from_zeta(&r, 0);
        assert!((a.get(0.0).unwrap() - 2.0 / (2.0 * PI.sqrt())).abs() < 1e-15);
        let z = make_boundary(0.3, -0.3, [1.0, 0.0, 0.0]).unwrap();
        let a = heat_coeffs_from_zeta(&residues_and_values(&z, 1.0, 0).unwrap(), 1);
        assert_eq!(a.get(0.5).unwrap(), 0.5);
        let p = named(NamedBc::Periodic).unwrap();
        let a = heat_coeffs_from_zeta(&residues_and_values(&p, 1.0, 0).unwrap(), 1);
        assert_eq!(a.get(0.5).unwrap(), 0.0);
    }

    #[test]
    fn round_trip_small() {
        let g = make_boundary(0.4, 0.3, [0.0, 1.0, 0.0]).unwrap();
        let direct = coefficients(&g, 1.3, 6.5).unwrap();
        let back = heat_coeffs_from_zeta(&residues_and_values(&g, 1.3, 6).unwrap(), 0);
        for (m, a) in &direct.values {
            assert!((back.values[m] - a).abs() <= 1e-12 * a.abs().max(1.0), "a_{m}");
        }
    }

    #[test]
    fn determinant_closed_forms() {
        for l in [0.5, 1.0, 2.0] {
            let dir = zeta_prime_at_zero(&named(NamedBc::Dirichlet).unwrap(), l).unwrap();
            assert!((dir + (2.0 * l).ln()).abs() < 1e-15);
            let neu = zeta_prime_at_zero(&named(NamedBc::Neumann).unwrap(), l).unwrap();
            assert!((neu + (2.0 * l).ln()).abs() < 1e-14);
            let per = zeta_prime_at_zero(&named(NamedBc::Periodic).unwrap(), l).unwrap();
            assert!((per + 2.0 * l.ln()).abs() < 1e-14);
            let vnk = zeta_prime_at_zero(&named(NamedBc::Vnk(l)).unwrap(), l).unwrap();
            assert!((vnk + (l.powi(3) / 6.0).ln()).abs() < 1e-14);
        }
        let bad = make_boundary(-1.0, 0.0, [0.0, 0.0, 1.0]).unwrap();
        assert_eq!(zeta_prime_at_zero(&bad, 1.0), Err(Error::Unsupported));
    }

    #[test]
    fn numeric_dirichlet_matches_riemann() {
        let d = named(NamedBc::Dirichlet).unwrap();
        let z = numeric_zeta(&d, PI, c(1.0), DEFAULT_SUBTRACT).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-9, "{z}");
        assert!(z.im.abs() < 1e-12);
    }

    #[test]
    fn numeric_generic_at_origin() {
        let g = make_boundary(0.4, 0.3, [0.0, 1.0, 0.0]).unwrap();
        let z = numeric_zeta(&g, 1.0, c(0.0), DEFAULT_SUBTRACT).unwrap();
        assert!((z.re - 0.5).abs() < 1e-8);
    }

    #[test]
    fn pole_and_window_errors() {
        let g = named(NamedBc::Robin(FRAC_PI_3)).unwrap();
        assert!(matches!(
            numeric_zeta(&g, 1.0, c(0.5), DEFAULT_SUBTRACT),
            Err(Error::PoleProximity { .. })
        ));
        assert!(matches!(
            numeric_zeta(&g, 1.0, c(-0.5 + 1e-4), DEFAULT_SUBTRACT),
            Err(Error::PoleProximity { .. })
        ));
        assert!(matches!(
            numeric_zeta(&g, 1.0, c(-3.2), DEFAULT_SUBTRACT),
            Err(Error::OutsideWindow { .. })
        ));
        // Dirichlet has no pole at -1/2
        let d = named(NamedBc::Dirichlet).unwrap();
        assert!(numeric_zeta(&d, 1.0, c(-0.5), DEFAULT_SUBTRACT).is_ok());
    }

    #[test]
    fn numeric_values_match_closed_forms() {
        let cases = [
            make_boundary(0.4, 0.3, [0.0, 1.0, 0.0]).unwrap(),
            named(NamedBc::Robin(2.0)).unwrap(),
            make_boundary(2.0 * PI / 3.0, PI / 3.0, [0.6, 0.8, 0.0]).unwrap(),
            make_boundary(0.5, -0.5, [1.0, 0.0, 0.0]).unwrap(),
            named(NamedBc::Vnk(1.5)).unwrap(),
        ];
        for bc in cases {
            let l = if classify(&bc, 1.5) == ExtensionClass::VNK { 1.5 } else { 1.0 };
            let closed = residues_and_values(&bc, l, 2).unwrap();
            let pts: Vec<Complex64> = closed.values.iter().map(|v| c(v.s)).collect();
            let num = numeric_zeta_many(&bc, l, &pts, DEFAULT_SUBTRACT).unwrap();
            for (v, z) in closed.values.iter().zip(&num) {
                assert!((v.value - z.re).abs() < 1e-8, "{bc} s={}: {} vs {}", v.s, v.value, z.re);
            }
        }
    }
}
