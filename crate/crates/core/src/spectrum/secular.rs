//! Evaluation of `h_U(k)` and of its regularization `f(k) = h_U(k) / (2 i k^p e^{i alpha})`,
//! where `p = 2 N_Z + 1` removes the zero of `h_U` at the origin.
//!
//! The bracket `S(k) = h_U(k) / (2 i e^{i alpha})` is odd and real on the real
//! axis. Its Taylor coefficients are kept so that the regularized function can
//! be evaluated without cancellation for `|k| L <= SERIES_RADIUS`.

use num_complex::Complex64;

use crate::extensions::BoundaryParams;

const SERIES_TERMS: usize = 48;
/// Series evaluation is used for `|k| L` up to this value.
pub(crate) const SERIES_RADIUS: f64 = 1.0;

#[derive(Debug, Clone)]
pub(crate) struct SecularFunction {
    ca: f64,
    sa: f64,
    cb: f64,
    n1sb: f64,
    length: f64,
    order: i32,
    lead: usize,
    phase: Complex64,
    /// `S(k) = sum_j series[j] k^{2j+1}`; entries below `lead` are dropped.
    series: Vec<f64>,
}

/// Values on the positive imaginary axis, `k = i x`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ImagAxis {
    /// `f(ix) e^{-xL}`
    pub scaled: f64,
    /// derivative of `scaled` in `x`
    pub scaled_deriv: f64,
    /// `d/dx log f(ix)`
    pub log_deriv: f64,
}

impl SecularFunction {
    /// `zero_modes` selects the power of `k` divided out (0, 1, 2 -> 1, 3, 5).
    pub(crate) fn new(bc: &BoundaryParams, length: f64, zero_modes: u32) -> Self {
        let (sa, ca) = bc.alpha().sin_cos();
        let (sb, cb) = bc.beta().sin_cos();
        let n1sb = bc.n1() * sb;
        let lead = zero_modes as usize;
        // t[n] = L^n / n!
        let mut t = vec![1.0f64; 2 * SERIES_TERMS + 2];
        for n in 1..t.len() {
            t[n] = t[n - 1] * length / n as f64;
        }
        let mut series = vec![0.0; SERIES_TERMS];
        for (j, s) in series.iter_mut().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let mut v = (ca - cb) * sign * t[2 * j + 1] - 2.0 * sa * sign * t[2 * j];
            if j >= 1 {
                v -= (ca + cb) * sign * t[2 * j - 1];
            } else {
                v -= 2.0 * n1sb;
            }
            *s = if j < lead { 0.0 } else { v };
        }
        Self {
            ca,
            sa,
            cb,
            n1sb,
            length,
            order: 2 * zero_modes as i32 + 1,
            lead,
            phase: 2.0 * Complex64::i() * Complex64::from_polar(1.0, bc.alpha()),
            series,
        }
    }

    pub(crate) fn length(&self) -> f64 {
        self.length
    }

    /// Power of `k` removed by the regularization.
    pub(crate) fn order(&self) -> i32 {
        self.order
    }

    fn quadratic(&self, k: Complex64) -> Complex64 {
        let k2 = k * k;
        (k2 - 1.0) * self.cb + (k2 + 1.0) * self.ca
    }

    /// `S(k) = sin(kL)((k^2-1) cos b + (k^2+1) cos a) - 2k sin a cos(kL) - 2k n1 sin b`.
    pub(crate) fn bracket(&self, k: Complex64) -> Complex64 {
        let kl = k * self.length;
        kl.sin() * self.quadratic(k) - 2.0 * k * (self.sa * kl.cos() + self.n1sb)
    }

    pub(crate) fn h(&self, k: Complex64) -> Complex64 {
        self.phase * self.bracket(k)
    }

    /// `h(k) e^{ikL}`, bounded in the upper half plane.
    pub(crate) fn h_upper_scaled(&self, k: Complex64) -> Complex64 {
        let i = Complex64::i();
        let e1 = (i * k * self.length).exp();
        let e2 = e1 * e1;
        let sin_e = (e2 - 1.0) / (2.0 * i);
        let cos_e = (e2 + 1.0) / 2.0;
        self.phase * (sin_e * self.quadratic(k) - 2.0 * k * (self.sa * cos_e + self.n1sb * e1))
    }

    /// `f(k) = S(k) / k^p` for complex `k`.
    pub(crate) fn regularized(&self, k: Complex64) -> Complex64 {
        if k.norm() * self.length <= SERIES_RADIUS {
            let k2 = k * k;
            let mut acc = Complex64::new(0.0, 0.0);
            for &c in self.series[self.lead..].iter().rev() {
                acc = acc * k2 + c;
            }
            acc
        } else {
            self.bracket(k) / k.powi(self.order)
        }
    }

    /// Value at `k = 0` of the regularized function.
    #[cfg(test)]
    pub(crate) fn regularized_at_zero(&self) -> f64 {
        self.series[self.lead]
    }

    /// Real `S(k)` and `S'(k)`.
    fn bracket_real(&self, k: f64) -> (f64, f64) {
        let l = self.length;
        let (s, c) = (k * l).sin_cos();
        let q = (k * k - 1.0) * self.cb + (k * k + 1.0) * self.ca;
        let value = s * q - 2.0 * k * (self.sa * c + self.n1sb);
        let deriv = l * c * q + s * 2.0 * k * (self.ca + self.cb) - 2.0 * self.sa * c
            + 2.0 * k * self.sa * l * s
            - 2.0 * self.n1sb;
        (value, deriv)
    }

    /// Series `sum_j c_j y^j` and its `y`-derivative, `c_j = series[lead + j] * sign^j`.
    fn even_series(&self, x: f64, alternate: bool) -> (f64, f64) {
        let y = x * x;
        let mut val = 0.0;
        // d/dx sum c_j x^{2j} = x sum_{j>=1} 2j c_j y^{j-1}
        let mut dsum = 0.0;
        let coeffs = &self.series[self.lead..];
        for (j, &c) in coeffs.iter().enumerate().rev() {
            let c = if alternate && j % 2 == 1 { -c } else { c };
            val = val * y + c;
            if j >= 1 {
                dsum = dsum * y + 2.0 * j as f64 * c;
            }
        }
        (val, dsum * x)
    }

    /// Regularized function on the real axis and its derivative.
    pub(crate) fn regularized_real(&self, k: f64) -> (f64, f64) {
        if k.abs() * self.length <= SERIES_RADIUS {
            self.even_series(k, false)
        } else {
            let (s, ds) = self.bracket_real(k);
            let kp = k.powi(self.order);
            (s / kp, (ds - self.order as f64 * s / k) / kp)
        }
    }

    /// Regularized function on the positive imaginary axis. The overall sign
    /// convention is `f(ix)` exactly; the scaled value carries `e^{-xL}`.
    pub(crate) fn imag_axis(&self, x: f64) -> ImagAxis {
        let l = self.length;
        if x * l <= SERIES_RADIUS {
            let (g, dg) = self.even_series(x, true);
            let e = (-x * l).exp();
            return ImagAxis {
                scaled: g * e,
                scaled_deriv: (dg - l * g) * e,
                log_deriv: dg / g,
            };
        }
        let e = (-x * l).exp();
        let e2 = e * e;
        let p = (1.0 - x * x) * self.ca - (1.0 + x * x) * self.cb;
        let dp = -2.0 * x * (self.ca + self.cb);
        let psi = 0.5 * (1.0 - e2) * p - x * self.sa * (1.0 + e2) - 2.0 * x * self.n1sb * e;
        let dpsi = l * e2 * p + 0.5 * (1.0 - e2) * dp - self.sa * (1.0 + e2)
            + 2.0 * x * self.sa * l * e2
            - 2.0 * self.n1sb * e
            + 2.0 * x * self.n1sb * l * e;
        // f(ix) = (-1)^{(p-1)/2} Phi(x) / x^p with Phi = S(ix)/i
        let sign = if self.lead.is_multiple_of(2) { 1.0 } else { -1.0 };
        let ord = self.order as f64;
        let xp = x.powi(self.order);
        ImagAxis {
            scaled: sign * psi / xp,
            scaled_deriv: sign * (dpsi - ord * psi / x) / xp,
            log_deriv: l + dpsi / psi - ord / x,
        }
    }

    /// `d/dx log(Psi / A)` where `Psi = A + E` splits the scaled function into
    /// its algebraic part `A = Q(x) / 2` and the exponentially small rest `E`.
    /// Computed without cancellation against the algebraic log-derivative.
    pub(crate) fn imag_axis_exponential_part(&self, x: f64) -> f64 {
        let l = self.length;
        let e = (-x * l).exp();
        let e2 = e * e;
        let p = (1.0 - x * x) * self.ca - (1.0 + x * x) * self.cb;
        let dp = -2.0 * x * (self.ca + self.cb);
        let alg = 0.5 * p - x * self.sa;
        let dalg = 0.5 * dp - self.sa;
        let rest = -0.5 * e2 * p - x * self.sa * e2 - 2.0 * x * self.n1sb * e;
        let drest = l * e2 * p - 0.5 * e2 * dp - self.sa * e2 + 2.0 * x * self.sa * l * e2 - 2.0 * self.n1sb * e
            + 2.0 * x * self.n1sb * l * e;
        (drest * alg - rest * dalg) / ((alg + rest) * alg)
    }

    /// Taylor coefficients `l_j` (`j >= 1`) of `log f(ix) = log f(0) + sum_j l_j x^{2j}`.
    pub(crate) fn log_series_imag(&self, terms: usize) -> Vec<f64> {
        let coeffs: Vec<f64> = self.series[self.lead..]
            .iter()
            .enumerate()
            .map(|(j, &c)| if j % 2 == 1 { -c } else { c })
            .collect();
        let a0 = coeffs[0];
        let a: Vec<f64> = coeffs.iter().map(|c| c / a0).collect();
        // log(1 + sum_{n>=1} a_n y^n) = sum l_n y^n, n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
        let mut l = vec![0.0; terms + 1];
        for n in 1..=terms {
            let mut acc = n as f64 * a.get(n).copied().unwrap_or(0.0);
            for (k, lk) in l.iter().enumerate().take(n).skip(1) {
                acc -= k as f64 * lk * a.get(n - k).copied().unwrap_or(0.0);
            }
            l[n] = acc / n as f64;
        }
        l.remove(0);
        l
    }
}
