//! Globally adaptive Gauss-Kronrod (10/21) quadrature for several complex
//! integrands sharing one set of nodes.
//!
//! Sharing nodes keeps the discretization error of neighbouring integrands
//! correlated, which matters when they are later differenced.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-13,
            max_intervals: 4000,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Vec<Complex64>,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rule<F>(f: &F, a: f64, b: f64, dim: usize, buf: &mut [Complex64]) -> Panel
where
    F: Fn(f64, &mut [Complex64]),
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let zero = Complex64::new(0.0, 0.0);
    let mut kron = vec![zero; dim];
    let mut gauss = vec![zero; dim];

    f(center, buf);
    for c in 0..dim {
        kron[c] += buf[c] * WGK[10];
    }
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).take(10).enumerate() {
        let dx = half * x;
        for point in [center - dx, center + dx] {
            f(point, buf);
            for c in 0..dim {
                kron[c] += buf[c] * wk;
                if j % 2 == 1 {
                    gauss[c] += buf[c] * WG[j / 2];
                }
            }
        }
    }
    let mut error = 0.0f64;
    for c in 0..dim {
        kron[c] *= half;
        gauss[c] *= half;
        error = error.max((kron[c] - gauss[c]).norm());
    }
    Panel {
        a,
        b,
        value: kron,
        error,
    }
}

/// Integrates `dim` complex functions over `[a, b]`. The integrand writes its
/// `dim` values at `x` into the provided slice. Returns the integrals and the
/// final error estimate (max over components).
pub fn integrate_many<F>(
    f: F,
    a: f64,
    b: f64,
    dim: usize,
    settings: QuadSettings,
) -> Result<(Vec<Complex64>, f64)>
where
    F: Fn(f64, &mut [Complex64]),
{
    let mut buf = vec![Complex64::new(0.0, 0.0); dim];
    let first = rule(&f, a, b, dim, &mut buf);
    let mut total = first.value.clone();
    let mut err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut since_resum = 0usize;
    loop {
        let scale = total.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tol = settings.abs_tol.max(settings.rel_tol * scale);
        if err <= tol {
            // running sums drift; recompute before accepting
            total = vec![Complex64::new(0.0, 0.0); dim];
            err = 0.0;
            for p in heap.iter() {
                for (t, v) in total.iter_mut().zip(&p.value) {
                    *t += v;
                }
                err += p.error;
            }
            if err <= tol {
                return Ok((total, err));
            }
        }
        if heap.len() >= settings.max_intervals {
            return Err(Error::QuadratureFailure {
                estimate: err,
                tolerance: tol,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::QuadratureFailure {
                estimate: err,
                tolerance: tol,
            });
        }
        let left = rule(&f, worst.a, mid, dim, &mut buf);
        let right = rule(&f, mid, worst.b, dim, &mut buf);
        for (c, t) in total.iter_mut().enumerate() {
            *t += left.value[c] + right.value[c] - worst.value[c];
        }
        err += left.error + right.error - worst.error;
        since_resum += 1;
        if since_resum >= 256 {
            since_resum = 0;
            err = heap.iter().map(|p| p.error).sum::<f64>() + left.error + right.error;
        }
        heap.push(left);
        heap.push(right);
    }
}

/// Scalar real convenience wrapper.
pub fn integrate<F>(f: F, a: f64, b: f64, settings: QuadSettings) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (v, _) = integrate_many(
        |x, out: &mut [Complex64]| out[0] = Complex64::new(f(x), 0.0),
        a,
        b,
        1,
        settings,
    )?;
    Ok(v[0].re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = integrate(|x| x.powi(7) - 3.0 * x * x, 0.0, 2.0, QuadSettings::default()).unwrap();
        assert!((v - (32.0 - 8.0)).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        // int_0^1 x^{-1/2} = 2
        let s = QuadSettings {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_intervals: 4000,
        };
        let v = integrate(|x| x.powf(-0.5), 0.0, 1.0, s).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn oscillatory_complex() {
        // int_0^pi e^{i x} = 2i
        let (v, _) = integrate_many(
            |x, out: &mut [Complex64]| {
                out[0] = Complex64::from_polar(1.0, x);
                out[1] = Complex64::new(x.sin(), 0.0);
            },
            0.0,
            std::f64::consts::PI,
            2,
            QuadSettings::default(),
        )
        .unwrap();
        assert!((v[0] - Complex64::new(0.0, 2.0)).norm() < 1e-13);
        assert!((v[1].re - 2.0).abs() < 1e-13);
    }

    #[test]
    fn reports_failure() {
        let s = QuadSettings {
            abs_tol: 1e-15,
            rel_tol: 0.0,
            max_intervals: 10,
        };
        assert!(matches!(
            integrate(|x| (1.0 / x).sin(), 1e-6, 1.0, s),
            Err(Error::QuadratureFailure { .. })
        ));
    }
}
