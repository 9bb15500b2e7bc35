//! Small-`t` coefficients of the heat trace,
//! `Tr e^{-t Delta_U} ~ sum_m a_m t^{m - 1/2}`, `m = 0, 1/2, 1, ...`,
//! in closed form for each [`ExtensionClass`].
//!
//! For the generic class the large-`x` expansion
//! `log f(ix) = xL + log x + log((cos a + cos b)/2) + sum_m b_m x^{-m}`
//! feeds the coefficients; on `cos a + cos b = 0` the analogous expansion
//! has coefficients `c_m`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::{check_length, classify, BoundaryParams, ExtensionClass, EDGE_TOL};

/// Largest `m` accepted by [`b_coeffs`] and [`c_coeffs`].
pub const SERIES_ORDER_CAP: usize = 60;
/// Largest `m` accepted by [`coefficients`]; needs `b_{2m}`.
pub const HEAT_ORDER_CAP: f64 = 30.0;
/// Coefficients above this magnitude trigger a conditioning warning.
const CONDITIONING_WARN: f64 = 1e12;

/// A non-negative multiple of 1/2, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfOrder(pub u32);

impl HalfOrder {
    /// Accepts non-negative multiples of 1/2.
    pub fn from_value(m: f64) -> Result<Self> {
        let twice = 2.0 * m;
        if !m.is_finite() || m < 0.0 || (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "order must be a non-negative multiple of 1/2, got {m}"
            )));
        }
        Ok(HalfOrder(twice.round() as u32))
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl fmt::Display for HalfOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatCoefficients {
    /// `a_m` for every `m <= m_max`, including zeros.
    pub values: BTreeMap<HalfOrder, f64>,
    pub class: ExtensionClass,
    pub zero_mode_count: u32,
}

impl HeatCoefficients {
    pub fn get(&self, m: f64) -> Option<f64> {
        HalfOrder::from_value(m).ok().and_then(|h| self.values.get(&h).copied())
    }

    /// Largest order present.
    pub fn max_order(&self) -> HalfOrder {
        self.values.keys().next_back().copied().unwrap_or(HalfOrder(0))
    }

    /// `sum_{m <= up_to} a_m t^{m - 1/2}`.
    pub fn partial_sum(&self, t: f64, up_to: HalfOrder) -> f64 {
        self.values
            .iter()
            .filter(|(m, _)| **m <= up_to)
            .map(|(m, a)| a * t.powf(m.value() - 0.5))
            .sum()
    }
}

fn check_series_order(m_max: usize) -> Result<()> {
    if m_max > SERIES_ORDER_CAP {
        return Err(Error::OrderTooLarge {
            requested: m_max as f64,
            cap: SERIES_ORDER_CAP as f64,
        });
    }
    Ok(())
}

/// `b_1 .. b_{m_max}` for `cos a + cos b != 0`.
pub fn b_coeffs(bc: &BoundaryParams, m_max: usize) -> Result<Vec<f64>> {
    check_series_order(m_max)?;
    let (sa, ca) = bc.alpha().sin_cos();
    let cb = bc.beta().cos();
    let denom = ca + cb;
    if denom.abs() <= EDGE_TOL {
        return Err(Error::WrongFamily {
            op: "b_coeffs",
            hint: "cos(alpha) + cos(beta) = 0; use c_coeffs",
        });
    }
    let sin_ratio = sa / denom;
    let cos_ratio = (cb - ca) / denom;
    // the alternating double sum cancels heavily near a double root of the
    // underlying quadratic, so it is accumulated in double-double precision
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut sum = Dd::ZERO;
        for j in 0..=m / 2 {
            let p = m - 2 * j;
            // Gamma(m-j) / (Gamma(j+1) Gamma(p+1)) = C(m-j, j) / (m-j)
            let weight = Dd::from_u128(binomial(m - j, j)).div_f64((m - j) as f64).scale(2f64.powi(p as i32));
            let term = weight.mul(Dd::from(sin_ratio).powi(p)).mul(Dd::from(cos_ratio).powi(j));
            sum = if (m - j + 1) % 2 == 0 { sum.add(term) } else { sum.add(term.neg()) };
        }
        out.push(sum.hi + sum.lo);
    }
    Ok(out)
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn from_u128(n: u128) -> Dd {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Dd::renorm(hi, lo)
    }

    fn renorm(a: f64, b: f64) -> Dd {
        let hi = a + b;
        Dd { hi, lo: b - (hi - a) }
    }

    fn add(self, o: Dd) -> Dd {
        let s = self.hi + o.hi;
        let v = s - self.hi;
        let e = (self.hi - (s - v)) + (o.hi - v);
        Dd::renorm(s, e + self.lo + o.lo)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p) + (self.hi * o.lo + self.lo * o.hi);
        Dd::renorm(p, e)
    }

    fn div_f64(self, d: f64) -> Dd {
        let q = self.hi / d;
        let rem = (-q).mul_add(d, self.hi) + self.lo;
        Dd::renorm(q, rem / d)
    }

    /// Exact for powers of two.
    fn scale(self, f: f64) -> Dd {
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    fn powi(self, n: usize) -> Dd {
        (0..n).fold(Dd::from(1.0), |acc, _| acc.mul(self))
    }
}

/// Exact binomial coefficient; fits in `u128` for every argument below the cap.
fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `c_m = -cot^m(a) / m` for `cos a + cos b = 0`, `a` not a multiple of `pi`.
pub fn c_coeffs(bc: &BoundaryParams, m_max: usize) -> Result<Vec<f64>> {
    check_series_order(m_max)?;
    let (sa, ca) = bc.alpha().sin_cos();
    if (ca + bc.beta().cos()).abs() > EDGE_TOL {
        return Err(Error::WrongFamily {
            op: "c_coeffs",
            hint: "cos(alpha) + cos(beta) != 0; use b_coeffs",
        });
    }
    if sa.abs() <= EDGE_TOL {
        return Err(Error::WrongFamily {
            op: "c_coeffs",
            hint: "alpha = pi is the Dirichlet point, whose table has no series part",
        });
    }
    let cot = ca / sa;
    Ok((1..=m_max).map(|m| -cot.powi(m as i32) / m as f64).collect())
}

/// `n!` as a float.
fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Coefficient of a given order as a function of its index.
type Term = Box<dyn Fn(usize) -> f64>;

/// Full coefficient table for `m = 0, 1/2, ..., m_max`, with the zero-mode
/// count included in `a_{1/2}`.
pub fn coefficients(bc: &BoundaryParams, length: f64, m_max: f64) -> Result<HeatCoefficients> {
    check_length(length)?;
    let top = HalfOrder::from_value(m_max)?;
    if m_max > HEAT_ORDER_CAP {
        return Err(Error::OrderTooLarge {
            requested: m_max,
            cap: HEAT_ORDER_CAP,
        });
    }
    let class = classify(bc, length);
    let zero_mode_count = class.zero_mode_count().ok_or(Error::Unsupported)?;
    let sqrt_pi = PI.sqrt();
    let n_top = top.0 as usize;

    // a_{n+1} for integer orders and a_{n+1/2} (n >= 1) for half-integer ones.
    let (integer, half, a_half): (Term, Term, f64) = match class {
        ExtensionClass::Generic | ExtensionClass::GenericB => {
            let series = if class == ExtensionClass::Generic {
                b_coeffs(bc, n_top.max(1))?
            } else {
                c_coeffs(bc, n_top.max(1))?
            };
            let s1 = series.clone();
            (
                Box::new(move |n| -(4f64.powi(n as i32)) * factorial(n) * s1[2 * n] / (factorial(2 * n) * sqrt_pi)),
                Box::new(move |n| -series[2 * n - 1] / factorial(n - 1)),
                if class == ExtensionClass::Generic { 0.5 } else { 0.0 },
            )
        }
        ExtensionClass::DirichletPoint => (Box::new(|_| 0.0), Box::new(|_| 0.0), -0.5),
        ExtensionClass::PeriodicPoint => (Box::new(|_| 0.0), Box::new(|_| 0.0), 0.0),
        ExtensionClass::ZeroModeLine => {
            let tan = bc.alpha().tan();
            (
                Box::new(move |n| {
                    -(4f64.powi(n as i32)) * factorial(n) * tan.powi(2 * n as i32 + 1) / (factorial(2 * n + 1) * sqrt_pi)
                }),
                Box::new(move |n| tan.powi(2 * n as i32) / (2.0 * factorial(n))),
                0.5,
            )
        }
        ExtensionClass::VNK => {
            let r = 2.0 / length;
            (
                Box::new(move |n| {
                    factorial(n) * (2.0 * r).powi(2 * n as i32 + 1) / (factorial(2 * n + 1) * 2.0 * sqrt_pi)
                }),
                Box::new(move |n| r.powi(2 * n as i32) / (2.0 * factorial(n))),
                0.5,
            )
        }
        ExtensionClass::Unsupported => unreachable!("rejected above"),
    };

    let mut values = BTreeMap::new();
    for twice in 0..=top.0 {
        let v = match twice {
            0 => length / (2.0 * sqrt_pi),
            1 => a_half,
            t if t % 2 == 0 => integer(t as usize / 2 - 1),
            t => half((t as usize - 1) / 2),
        };
        if v.abs() > CONDITIONING_WARN {
            warn!("heat coefficient a_{} = {v:e} is ill-conditioned", HalfOrder(twice));
        }
        values.insert(HalfOrder(twice), v);
    }
    Ok(HeatCoefficients {
        values,
        class,
        zero_mode_count,
    })
}
