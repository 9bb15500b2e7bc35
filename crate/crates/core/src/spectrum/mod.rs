//! Eigenvalues of `Delta_U` on `[0, L]` as zeros of the secular function
//! `h_U(k)`, with brute-force heat-trace and zeta-sum oracles.
//!
//! Positive eigenvalues `k^2` are found on the real `k` axis, bound states
//! `-kappa^2` on the positive imaginary axis. Every scan ends with an
//! argument-principle audit: the winding of `h_U` around a rectangle enclosing
//! the scanned segment must equal the number of located zeros counted with
//! multiplicity. The origin is excluded; zero modes come from
//! [`crate::extensions::zero_modes`].

mod roots;
pub(crate) mod secular;

use std::f64::consts::PI;

use log::warn;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::extensions::{check_length, classify, zero_modes, BoundaryParams, ExtensionClass};
pub(crate) use secular::{SecularFunction, SERIES_RADIUS};

/// Largest multiplicity a second-order ODE on an interval admits.
const MAX_MULTIPLICITY: i64 = 2;
/// Finer rescans tried before an audit mismatch becomes an error.
const REFINE_DEPTH: u32 = 3;
/// Absolute truncation error allowed in [`heat_trace`].
const HEAT_TAIL_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    /// `k^2` for positive eigenvalues, `-kappa^2` for bound states.
    pub lambda: f64,
    /// `sqrt(|lambda|)`, kept at full precision.
    pub k: f64,
    /// 1 or 2.
    pub multiplicity: u32,
}

/// Positive spectrum up to `k_max^2`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
    pub zero_mode_count: u32,
    pub k_max: f64,
    pub length: f64,
    pub bc: BoundaryParams,
}

impl Spectrum {
    /// Number of eigenvalues with `sqrt(lambda) <= k`, with multiplicity.
    pub fn counting(&self, k: f64) -> u32 {
        self.eigenvalues
            .iter()
            .take_while(|e| e.k <= k)
            .map(|e| e.multiplicity)
            .sum()
    }
}

/// `h_U(k)`.
pub fn secular(bc: &BoundaryParams, length: f64, k: Complex64) -> Result<Complex64> {
    check_length(length)?;
    Ok(SecularFunction::new(bc, length, 0).h(k))
}

/// `h_U(k) / (2 i k^p e^{i alpha})` with `p = 1, 3, 5` for 0, 1, 2 zero modes;
/// finite and nonzero at `k = 0`.
pub fn regularized_secular(bc: &BoundaryParams, length: f64, k: Complex64) -> Result<Complex64> {
    check_length(length)?;
    let class = classify(bc, length);
    let count = class.zero_mode_count().ok_or(Error::Unsupported)?;
    Ok(SecularFunction::new(bc, length, count).regularized(k))
}

fn check_cutoff(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite(name));
    }
    if value <= 0.0 {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {value}")));
    }
    Ok(())
}

/// Grid step for the real-axis scan.
fn real_step(length: f64) -> f64 {
    PI / (8.0 * length)
}

/// Grid step for the imaginary-axis scan.
fn imag_step(length: f64, kappa_max: f64) -> f64 {
    (1.0 / (8.0 * length)).min(0.125).min(kappa_max / 64.0)
}

/// A point in `[lo, lo + span]` as far as possible from every root.
fn clear_edge(roots: &[f64], lo: f64, span: f64) -> f64 {
    (1..=16)
        .map(|j| lo + span * j as f64 / 16.0)
        .max_by(|a, b| {
            let da = roots.iter().map(|r| (r - a).abs()).fold(f64::INFINITY, f64::min);
            let db = roots.iter().map(|r| (r - b).abs()).fold(f64::INFINITY, f64::min);
            da.total_cmp(&db)
        })
        .expect("nonempty candidate list")
}

/// Candidates this close are one zero seen twice; rounding near a double
/// zero can produce a spurious sign-change pair about `sqrt(eps)` apart.
const MERGE_REL: f64 = 1e-7;

fn merge_close(sorted: Vec<f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(sorted.len());
    let mut run = 1.0;
    for x in sorted {
        match out.last_mut() {
            Some(last) if x - *last <= MERGE_REL * x.max(1.0) => {
                // running mean of the cluster
                run += 1.0;
                *last += (x - *last) / run;
            }
            _ => {
                out.push(x);
                run = 1.0;
            }
        }
    }
    out
}

/// Which axis a scan runs along.
#[derive(Clone, Copy)]
enum Axis {
    Real,
    Imaginary,
}

struct Located {
    /// (position along the axis, multiplicity)
    zeros: Vec<(f64, u32)>,
    /// left edge of the audited region
    inner: f64,
}

/// Multiplicity of the zero of `h` at `z`, found by winding on a small circle.
fn multiplicity<F>(h: &F, z: Complex64, gap: f64) -> Result<i64>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut radius = 1e-4f64.min(gap / 4.0);
    for _ in 0..6 {
        if let Some(w) = roots::circle_winding(h, z, radius) {
            if w > MAX_MULTIPLICITY {
                return Err(Error::MultiplicityExceeded {
                    k: z.norm(),
                    multiplicity: w,
                });
            }
            return Ok(w);
        }
        radius /= 3.0;
    }
    Err(Error::AuditFailed {
        expected: -1,
        found: -1,
        detail: format!("cannot resolve the phase of h_U around k = {z}"),
    })
}

fn locate(sec: &SecularFunction, axis: Axis, upper: f64, base_step: f64) -> Result<Located> {
    let to_complex = |x: f64| match axis {
        Axis::Real => Complex64::new(x, 0.0),
        Axis::Imaginary => Complex64::new(0.0, x),
    };
    // Bounded evaluation of h_U near the relevant axis.
    let h = |z: Complex64| match axis {
        Axis::Real => sec.h(z),
        Axis::Imaginary => sec.h_upper_scaled(z),
    };
    let real_fn = |x: f64| sec.regularized_real(x);
    let imag_fn = |x: f64| {
        let v = sec.imag_axis(x);
        (v.scaled, v.scaled_deriv)
    };

    let mut step = base_step;
    let mut last_mismatch = (0i64, 0i64, String::new());
    for depth in 0..=REFINE_DEPTH {
        let reach = upper + base_step;
        let candidates = match axis {
            Axis::Real => roots::scan(&real_fn, 0.0, reach, step),
            Axis::Imaginary => roots::scan(&imag_fn, 0.0, reach, step),
        };
        let candidates = merge_close(candidates.into_iter().filter(|&x| x > 0.0).collect());

        let mut zeros = Vec::with_capacity(candidates.len());
        for (i, &x) in candidates.iter().enumerate() {
            let mut gap = x;
            if i > 0 {
                gap = gap.min(x - candidates[i - 1]);
            }
            if i + 1 < candidates.len() {
                gap = gap.min(candidates[i + 1] - x);
            }
            let m = multiplicity(&h, to_complex(x), gap)?;
            if m == 2 {
                // a double zero is a simple zero of the derivative
                let r = 1e-4f64.min(gap / 4.0);
                let deriv = |y: f64| match axis {
                    Axis::Real => real_fn(y).1,
                    Axis::Imaginary => imag_fn(y).1,
                };
                let (lo, hi) = (x - r, x + r);
                let refined = if (deriv(lo) < 0.0) != (deriv(hi) < 0.0) {
                    roots::bisect(deriv, lo, hi)
                } else {
                    x
                };
                zeros.push((refined, 2));
            } else if m > 0 {
                zeros.push((x, m as u32));
            }
        }

        let positions: Vec<f64> = zeros.iter().map(|z| z.0).collect();
        let outer = clear_edge(&positions, upper, base_step);
        let first = positions.first().copied().unwrap_or(f64::INFINITY);
        let inner = (base_step / 2.0).min(first / 2.0);
        let eta = base_step;
        let vertices = match axis {
            Axis::Real => [
                Complex64::new(inner, -eta),
                Complex64::new(outer, -eta),
                Complex64::new(outer, eta),
                Complex64::new(inner, eta),
            ],
            Axis::Imaginary => [
                Complex64::new(-eta, inner),
                Complex64::new(eta, inner),
                Complex64::new(eta, outer),
                Complex64::new(-eta, outer),
            ],
        };
        let expected = roots::polygon_winding(&h, &vertices, step / 4.0);
        let found: i64 = zeros
            .iter()
            .filter(|z| z.0 > inner && z.0 < outer)
            .map(|z| z.1 as i64)
            .sum();
        match expected {
            Some(w) if w == found => {
                zeros.retain(|z| z.0 <= upper);
                return Ok(Located { zeros, inner });
            }
            Some(w) => last_mismatch = (w, found, format!("scan step {step:e}, depth {depth}")),
            None => last_mismatch = (-1, found, "h_U vanishes on the audit contour".into()),
        }
        step /= 8.0;
    }
    Err(Error::AuditFailed {
        expected: last_mismatch.0,
        found: last_mismatch.1,
        detail: last_mismatch.2,
    })
}

/// Bound-state zeros `kappa` in `(0, upper]`.
fn imaginary_zeros(sec: &SecularFunction, upper: f64) -> Result<Vec<(f64, u32)>> {
    Ok(locate(sec, Axis::Imaginary, upper, imag_step(sec.length(), upper))?.zeros)
}

/// Checks that the only zeros of `h_U` inside `|k| < radius` sit at the origin
/// (with order `p`) or on the imaginary axis.
fn audit_origin(sec: &SecularFunction, radius: f64) -> Result<()> {
    let order = sec.order() as i64;
    // k^p f(k) avoids the cancellation in the direct formula near k = 0.
    let h = |z: Complex64| z.powi(sec.order()) * sec.regularized(z);
    let mut r = radius;
    for _ in 0..6 {
        if let Some(w) = roots::circle_winding(&h, Complex64::new(0.0, 0.0), r) {
            if w == order {
                return Ok(());
            }
            let inside: i64 = imaginary_zeros(sec, r)?
                .iter()
                .filter(|z| z.0 < r)
                .map(|z| 2 * z.1 as i64)
                .sum();
            if w == order + inside {
                return Ok(());
            }
            return Err(Error::AuditFailed {
                expected: w,
                found: order + inside,
                detail: format!("zeros near the origin inside |k| < {r:e}"),
            });
        }
        r *= 0.7;
    }
    Err(Error::AuditFailed {
        expected: -1,
        found: order,
        detail: "h_U vanishes on the circle around the origin".into(),
    })
}

/// All eigenvalues `0 < lambda <= k_max^2`, certified complete by the
/// argument principle.
pub fn eigenvalues(bc: &BoundaryParams, length: f64, k_max: f64) -> Result<Spectrum> {
    check_length(length)?;
    check_cutoff("k_max", k_max)?;
    let class = classify(bc, length);
    if class == ExtensionClass::Unsupported {
        warn!("{bc} at L = {length} is outside the strongly consistent set; bound states may exist");
    }
    let zero_mode_count = zero_modes(bc, length).count;
    let sec = SecularFunction::new(bc, length, zero_mode_count);
    let located = locate(&sec, Axis::Real, k_max, real_step(length))?;
    audit_origin(&sec, located.inner)?;
    let eigenvalues = located
        .zeros
        .into_iter()
        .map(|(k, m)| Eigenvalue {
            lambda: k * k,
            k,
            multiplicity: m,
        })
        .collect();
    Ok(Spectrum {
        eigenvalues,
        zero_mode_count,
        k_max,
        length,
        bc: *bc,
    })
}

/// Negative eigenvalues `-kappa^2` with `0 < kappa <= kappa_max`, sorted by
/// increasing `kappa`.
pub fn bound_states(bc: &BoundaryParams, length: f64, kappa_max: f64) -> Result<Vec<Eigenvalue>> {
    check_length(length)?;
    check_cutoff("kappa_max", kappa_max)?;
    let sec = SecularFunction::new(bc, length, zero_modes(bc, length).count);
    Ok(imaginary_zeros(&sec, kappa_max)?
        .into_iter()
        .map(|(kappa, m)| Eigenvalue {
            lambda: -kappa * kappa,
            k: kappa,
            multiplicity: m,
        })
        .collect())
}

/// Smallest `k` with `e^{-t k^2} (k L / pi + 3) < HEAT_TAIL_TOL`.
fn required_cutoff(t: f64, length: f64) -> f64 {
    let mut k = (-HEAT_TAIL_TOL.ln() / t).sqrt();
    for _ in 0..50 {
        k = ((k * length / PI + 3.0).ln() - HEAT_TAIL_TOL.ln()).max(0.0).sqrt() / t.sqrt();
    }
    k * (1.0 + 1e-9)
}

/// `Tr e^{-t Delta_U}` from the stored spectrum plus the Weyl tail beyond
/// `k_max`. Zero modes contribute 1 each.
pub fn heat_trace(spec: &Spectrum, t: f64) -> Result<f64> {
    check_cutoff("t", t)?;
    let bound = (-t * spec.k_max * spec.k_max).exp() * (spec.k_max * spec.length / PI + 3.0);
    if bound.is_nan() || bound >= HEAT_TAIL_TOL {
        return Err(Error::TruncationTooShort {
            t,
            required_k_max: required_cutoff(t, spec.length),
        });
    }
    let tail = spec.length / PI * PI.sqrt() / (2.0 * t.sqrt()) * erfc(spec.k_max * t.sqrt());
    let body: f64 = spec
        .eigenvalues
        .iter()
        .rev()
        .map(|e| e.multiplicity as f64 * (-t * e.lambda).exp())
        .sum();
    Ok(spec.zero_mode_count as f64 + body + tail)
}

/// `sum lambda^{-s}` over the stored positive spectrum plus the Weyl tail
/// `(L/pi) k*^{1-2s} / (2s - 1)`, where `k*` sits half a mean spacing above the
/// last stored root (or at `k_max` for an empty spectrum).
pub fn zeta_sum(spec: &Spectrum, s: Complex64) -> Result<Complex64> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::NonFinite("s"));
    }
    if s.re <= 0.5 + 1e-3 {
        return Err(Error::DivergentSum { re: s.re, im: s.im });
    }
    let anchor = spec
        .eigenvalues
        .last()
        .map(|e| e.k + e.multiplicity as f64 * PI / (2.0 * spec.length))
        .unwrap_or(spec.k_max);
    let tail = spec.length / PI * (-(2.0 * s - 1.0) * anchor.ln()).exp() / (2.0 * s - 1.0);
    let body: Complex64 = spec
        .eigenvalues
        .iter()
        .rev()
        .map(|e| e.multiplicity as f64 * (-s * e.lambda.ln()).exp())
        .sum();
    Ok(body + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{make_boundary, named, NamedBc};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn lambdas(spec: &Spectrum) -> Vec<(f64, u32)> {
        spec.eigenvalues.iter().map(|e| (e.lambda, e.multiplicity)).collect()
    }

    #[test]
    fn secular_examples() {
        let d = named(NamedBc::Dirichlet).unwrap();
        let n = named(NamedBc::Neumann).unwrap();
        let pi = Complex64::new(PI, 0.0);
        assert!(secular(&d, 1.0, pi).unwrap().norm() < 1e-14);
        assert!(secular(&n, 1.0, pi).unwrap().norm() < 1e-13);
        let tiny = Complex64::new(1e-9, 0.0);
        assert!(secular(&make_boundary(0.4, 0.2, [0.0, 1.0, 0.0]).unwrap(), 2.0, tiny).unwrap().norm() < 1e-8);
    }

    #[test]
    fn regularized_limits() {
        let bc = make_boundary(0.4, 0.2, [0.6, 0.8, 0.0]).unwrap();
        let f0 = regularized_secular(&bc, 2.0, Complex64::new(0.0, 0.0)).unwrap();
        let det = crate::extensions::det_d(&bc, 2.0) / (2.0 * Complex64::from_polar(1.0, 0.4));
        assert!((f0 - det).norm() < 1e-13);
        let zm = make_boundary(0.5, -0.5, [1.0, 0.0, 0.0]).unwrap();
        let g0 = regularized_secular(&zm, 1.0, Complex64::new(1e-6, 0.0)).unwrap();
        assert!(g0.norm() > 1e-3 && g0.norm().is_finite());
        let bad = make_boundary(-1.0, 0.0, [0.0, 0.0, 1.0]).unwrap();
        assert_eq!(regularized_secular(&bad, 1.0, Complex64::new(1.0, 0.0)), Err(Error::Unsupported));
    }

    #[test]
    fn dirichlet_spectrum() {
        let spec = eigenvalues(&named(NamedBc::Dirichlet).unwrap(), PI, 10.5).unwrap();
        assert_eq!(spec.eigenvalues.len(), 10);
        for (i, (l, m)) in lambdas(&spec).into_iter().enumerate() {
            assert_relative_eq!(l, ((i + 1) * (i + 1)) as f64, max_relative = 1e-12);
            assert_eq!(m, 1);
        }
        assert_eq!(spec.zero_mode_count, 0);
    }

    #[test]
    fn periodic_spectrum_is_doubled() {
        let spec = eigenvalues(&named(NamedBc::Periodic).unwrap(), 1.0, 20.0).unwrap();
        assert_eq!(spec.zero_mode_count, 1);
        assert_eq!(spec.eigenvalues.len(), 3);
        for (i, (l, m)) in lambdas(&spec).into_iter().enumerate() {
            let k = 2.0 * PI * (i + 1) as f64;
            assert_relative_eq!(l, k * k, max_relative = 1e-10);
            assert_eq!(m, 2);
        }
    }

    #[test]
    fn robin_first_root_solves_secular_equation() {
        let bc = named(NamedBc::Robin(PI / 2.0)).unwrap();
        let spec = eigenvalues(&bc, 1.0, 4.0).unwrap();
        let k = spec.eigenvalues[0].k;
        // Robin with tan(alpha/2) = 1: tan(k) = 2k / (k^2 - 1)
        assert!((k.tan() - 2.0 * k / (k * k - 1.0)).abs() < 1e-10);
        assert!(secular(&bc, 1.0, Complex64::new(k, 0.0)).unwrap().norm() < 1e-11);
    }

    #[test]
    fn bound_state_examples() {
        let weak = named(NamedBc::Robin(0.0)).unwrap();
        assert!(bound_states(&weak, 3.0, 20.0).unwrap().is_empty());
        let outside = make_boundary(-PI / 2.0, 0.0, [0.0, 0.0, 1.0]).unwrap();
        let b = bound_states(&outside, 10.0, 5.0).unwrap();
        assert!(!b.is_empty());
        for e in &b {
            assert!(e.lambda < 0.0);
            let h = secular(&outside, 10.0, Complex64::new(0.0, e.k)).unwrap();
            let scale = (10.0 * e.k).exp() * (1.0 + e.k * e.k);
            assert!(h.norm() < 1e-10 * scale);
        }
        assert!(bound_states(&named(NamedBc::Dirichlet).unwrap(), 2.0, 30.0).unwrap().is_empty());
    }

    #[test]
    fn heat_trace_examples() {
        let t = 0.01;
        let d = eigenvalues(&named(NamedBc::Dirichlet).unwrap(), 1.0, 80.0).unwrap();
        let n = eigenvalues(&named(NamedBc::Neumann).unwrap(), 1.0, 80.0).unwrap();
        let hd = heat_trace(&d, t).unwrap();
        assert!((hd - (1.0 / (2.0 * (PI * t).sqrt()) - 0.5)).abs() < 1e-9);
        assert!((heat_trace(&n, t).unwrap() - hd - 1.0).abs() < 1e-9);
        assert!((heat_trace(&n, 1e4).unwrap() - 1.0).abs() < 1e-12);
        match heat_trace(&d, 1e-4) {
            Err(Error::TruncationTooShort { required_k_max, .. }) => {
                let b = (-1e-4 * required_k_max * required_k_max).exp() * (required_k_max / PI + 3.0);
                assert!(b <= HEAT_TAIL_TOL * 1.0001 && required_k_max > 80.0);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn zeta_sum_examples() {
        let one = Complex64::new(1.0, 0.0);
        let d = eigenvalues(&named(NamedBc::Dirichlet).unwrap(), PI, 2000.5).unwrap();
        assert!((zeta_sum(&d, one).unwrap().re - PI * PI / 6.0).abs() < 1e-8);
        let l = 2.5;
        let d2 = eigenvalues(&named(NamedBc::Dirichlet).unwrap(), l, 2000.0).unwrap();
        assert!((zeta_sum(&d2, one).unwrap().re - (l / PI).powi(2) * PI * PI / 6.0).abs() < 1e-8);
        let p = eigenvalues(&named(NamedBc::Periodic).unwrap(), 1.0, 6000.0).unwrap();
        assert!((zeta_sum(&p, one).unwrap().re - 1.0 / 12.0).abs() < 1e-8);
        assert!(matches!(zeta_sum(&d, Complex64::new(0.5, 0.0)), Err(Error::DivergentSum { .. })));
    }

    #[test]
    fn input_validation() {
        let d = named(NamedBc::Dirichlet).unwrap();
        assert!(eigenvalues(&d, 0.0, 1.0).is_err());
        assert!(eigenvalues(&d, 1.0, -1.0).is_err());
        assert!(eigenvalues(&d, 1.0, f64::NAN).is_err());
        assert!(bound_states(&d, 1.0, 0.0).is_err());
    }

    #[test]
    fn dirichlet_gaps_are_exact() {
        let l = 1.7;
        let spec = eigenvalues(&named(NamedBc::Dirichlet).unwrap(), l, 60.0).unwrap();
        let unit = (PI / l).powi(2);
        for (n, w) in spec.eigenvalues.windows(2).enumerate() {
            let n = (n + 1) as f64;
            assert_relative_eq!(w[1].lambda - w[0].lambda, (2.0 * n + 1.0) * unit, max_relative = 1e-10);
        }
    }

    fn strongly_consistent() -> impl Strategy<Value = BoundaryParams> {
        (0.0..PI, -FRAC_PI_2..FRAC_PI_2, 0.0..(2.0 * PI), -1.0f64..1.0)
            .prop_filter_map("in M_F", |(a, b, phi, z)| {
                let r = (1.0 - z * z).sqrt();
                let bc = make_boundary(a, b, [r * phi.cos(), r * phi.sin(), z]).ok()?;
                crate::extensions::is_strongly_consistent(&bc).then_some(bc)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn audit_and_weyl_bound(bc in strongly_consistent(), li in 0usize..3) {
            let l = [0.5, 1.0, 3.0][li];
            let spec = eigenvalues(&bc, l, 40.0).unwrap();
            for e in &spec.eigenvalues {
                prop_assert!(e.lambda > 0.0 && e.k <= 40.0);
                prop_assert!(e.multiplicity == 1 || e.multiplicity == 2);
            }
            for w in spec.eigenvalues.windows(2) {
                prop_assert!(w[0].k < w[1].k);
            }
            for j in 0..400 {
                let k = 40.0 * j as f64 / 400.0;
                let n = spec.counting(k) as f64;
                prop_assert!((n - k * l / PI).abs() <= 3.0, "N({k}) = {n}");
            }
        }

        #[test]
        fn no_bound_states_in_mf(bc in strongly_consistent(), l in 0.01f64..50.0) {
            prop_assert!(bound_states(&bc, l, 50.0).unwrap().is_empty());
        }

        #[test]
        fn secular_is_odd(a in -PI..PI, b in -FRAC_PI_2..FRAC_PI_2, re in -20.0f64..20.0, im in -3.0f64..3.0) {
            let bc = make_boundary(a, b, [0.6, 0.0, 0.8]).unwrap();
            let k = Complex64::new(re, im);
            let hp = secular(&bc, 1.3, k).unwrap();
            let hm = secular(&bc, 1.3, -k).unwrap();
            prop_assert!((hp + hm).norm() <= 1e-12 * hp.norm().max(1.0));
        }

        #[test]
        fn heat_trace_decreases(bc in strongly_consistent()) {
            let spec = eigenvalues(&bc, 1.0, 60.0).unwrap();
            let mut prev = f64::INFINITY;
            for j in 0..12 {
                let t = 0.02 * 1.8f64.powi(j);
                let v = heat_trace(&spec, t).unwrap();
                prop_assert!(v < prev);
                prev = v;
            }
            prop_assert!((heat_trace(&spec, 1e5).unwrap() - spec.zero_mode_count as f64).abs() < 1e-9);
        }
    }
}
