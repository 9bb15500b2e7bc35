//! Boundary conditions in the `(alpha, beta, n)` chart of `U(2)`.
//!
//! Only `n_1` enters the secular function, so `n_2` and `n_3` are carried
//! for completeness but play no role in classification or downstream
//! spectral data.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack on the chart boundaries and on the analytic family conditions.
pub const EDGE_TOL: f64 = 1e-12;
/// Tolerance for renormalizing the direction vector.
pub const NORM_TOL: f64 = 1e-9;
/// Parameter-match tolerance for recognizing the Von Neumann-Krein extension.
pub const VNK_TOL: f64 = 1e-10;

/// Absolute threshold below which `det D_U` counts as zero.
pub fn zero_mode_tolerance(length: f64) -> f64 {
    1e-10 * (1.0 + length)
}

/// A validated point of the `(alpha, beta, n)` chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryParams {
    alpha: f64,
    beta: f64,
    n: [f64; 3],
}

impl BoundaryParams {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n(&self) -> [f64; 3] {
        self.n
    }

    pub fn n1(&self) -> f64 {
        self.n[0]
    }
}

impl fmt::Display for BoundaryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(alpha={}, beta={}, n=({}, {}, {}))",
            self.alpha, self.beta, self.n[0], self.n[1], self.n[2]
        )
    }
}

/// Builds a boundary condition, rejecting out-of-chart angles instead of
/// wrapping them.
pub fn make_boundary(alpha: f64, beta: f64, n: [f64; 3]) -> Result<BoundaryParams> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite("alpha"));
    }
    if !beta.is_finite() {
        return Err(Error::NonFinite("beta"));
    }
    if n.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite("n"));
    }
    if !(-PI..=PI).contains(&alpha) {
        return Err(Error::AngleOutOfRange {
            name: "alpha",
            value: alpha,
            lo: -PI,
            hi: PI,
        });
    }
    if !(-FRAC_PI_2..=FRAC_PI_2).contains(&beta) {
        return Err(Error::AngleOutOfRange {
            name: "beta",
            value: beta,
            lo: -FRAC_PI_2,
            hi: FRAC_PI_2,
        });
    }
    let norm = n.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NonUnitDirection { norm });
    }
    Ok(BoundaryParams {
        alpha,
        beta,
        n: [n[0] / norm, n[1] / norm, n[2] / norm],
    })
}

/// The standard boundary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NamedBc {
    Dirichlet,
    Neumann,
    Periodic,
    Antiperiodic,
    /// Robin with `U = e^{i alpha} I`, `alpha` in `[0, pi]`.
    Robin(f64),
    /// Von Neumann-Krein extension for the given interval length.
    Vnk(f64),
}

pub fn named(kind: NamedBc) -> Result<BoundaryParams> {
    let e1 = [1.0, 0.0, 0.0];
    match kind {
        NamedBc::Dirichlet => make_boundary(PI, 0.0, e1),
        NamedBc::Neumann => make_boundary(0.0, 0.0, e1),
        NamedBc::Periodic => make_boundary(FRAC_PI_2, FRAC_PI_2, [-1.0, 0.0, 0.0]),
        NamedBc::Antiperiodic => make_boundary(FRAC_PI_2, FRAC_PI_2, e1),
        NamedBc::Robin(alpha) => {
            if !(0.0..=PI).contains(&alpha) {
                return Err(Error::InvalidParameter(format!(
                    "robin alpha must lie in [0, pi], got {alpha}"
                )));
            }
            make_boundary(alpha, 0.0, e1)
        }
        NamedBc::Vnk(length) => {
            check_length(length)?;
            let beta = (2.0 / length).atan();
            make_boundary(-beta, beta, e1)
        }
    }
}

pub(crate) fn check_length(length: f64) -> Result<()> {
    if length.is_finite() && length > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidLength(length))
    }
}

/// A 2x2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitaryMatrix2 {
    pub entries: [[Complex64; 2]; 2],
}

impl UnitaryMatrix2 {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            entries: [[one, zero], [zero, one]],
        }
    }

    pub fn adjoint(&self) -> Self {
        let e = &self.entries;
        Self {
            entries: [[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            entries: mat_mul(&self.entries, &other.entries),
        }
    }

    pub fn det(&self) -> Complex64 {
        det2(&self.entries)
    }

    /// Largest entry of `|U U^dagger - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.mul(&self.adjoint());
        let id = Self::identity();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((p.entries[i][j] - id.entries[i][j]).norm());
            }
        }
        worst
    }
}

pub(crate) fn mat_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub(crate) fn det2(m: &[[Complex64; 2]; 2]) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// `U = e^{i alpha} [cos(beta) I + i sin(beta) n.sigma]`.
pub fn unitary_matrix(bc: &BoundaryParams) -> UnitaryMatrix2 {
    let i = Complex64::i();
    let phase = Complex64::from_polar(1.0, bc.alpha);
    let (sb, cb) = bc.beta.sin_cos();
    let [n1, n2, n3] = bc.n;
    // n.sigma = [[n3, n1 - i n2], [n1 + i n2, -n3]]
    let ns = [
        [Complex64::new(n3, 0.0), Complex64::new(n1, -n2)],
        [Complex64::new(n1, n2), Complex64::new(-n3, 0.0)],
    ];
    let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let diag = if r == c { cb } else { 0.0 };
            entries[r][c] = phase * (Complex64::new(diag, 0.0) + i * sb * ns[r][c]);
        }
    }
    UnitaryMatrix2 { entries }
}

/// `0 <= alpha + beta <= pi` and `0 <= alpha - beta <= pi`.
pub fn is_strongly_consistent(bc: &BoundaryParams) -> bool {
    let sum = bc.alpha + bc.beta;
    let diff = bc.alpha - bc.beta;
    let inside = |x: f64| (-EDGE_TOL..=PI + EDGE_TOL).contains(&x);
    inside(sum) && inside(diff)
}

/// The matrix of the linear system a zero mode `a + b x` must satisfy.
pub fn d_matrix(bc: &BoundaryParams, length: f64) -> [[Complex64; 2]; 2] {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let l = Complex64::new(length, 0.0);
    let minus = [[one, i], [one, l - i]];
    let plus = [[one, -i], [one, l + i]];
    let up = mat_mul(&unitary_matrix(bc).entries, &plus);
    let mut d = [[Complex64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            d[r][c] = minus[r][c] - up[r][c];
        }
    }
    d
}

/// Closed form `2 e^{i alpha} [L (cos alpha - cos beta) - 2 (sin alpha + n1 sin beta)]`.
pub fn det_d(bc: &BoundaryParams, length: f64) -> Complex64 {
    2.0 * Complex64::from_polar(1.0, bc.alpha) * reduced_det(bc, length)
}

/// `det D_U` with the never-vanishing factor `2 e^{i alpha}` removed. This is
/// also the `k -> 0` limit of the regularized secular function away from the
/// zero-mode set.
pub(crate) fn reduced_det(bc: &BoundaryParams, length: f64) -> f64 {
    let (sa, ca) = bc.alpha.sin_cos();
    let (sb, cb) = bc.beta.sin_cos();
    length * (ca - cb) - 2.0 * (sa + bc.n[0] * sb)
}

/// Which closed-form family supplies the spectral data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtensionClass {
    /// Strongly consistent, no zero mode, `cos alpha + cos beta != 0`.
    Generic,
    /// Strongly consistent, `cos alpha + cos beta = 0`, `alpha != pi`.
    GenericB,
    /// `alpha = pi`, `beta = 0`.
    DirichletPoint,
    /// One constant zero mode, `alpha != pi/2`.
    ZeroModeLine,
    /// One constant zero mode at `alpha = pi/2` (periodic).
    PeriodicPoint,
    /// Von Neumann-Krein: two zero modes.
    VNK,
    Unsupported,
}

impl ExtensionClass {
    pub fn name(&self) -> &'static str {
        match self {
            ExtensionClass::Generic => "Generic",
            ExtensionClass::GenericB => "GenericB",
            ExtensionClass::DirichletPoint => "DirichletPoint",
            ExtensionClass::ZeroModeLine => "ZeroModeLine",
            ExtensionClass::PeriodicPoint => "PeriodicPoint",
            ExtensionClass::VNK => "VNK",
            ExtensionClass::Unsupported => "Unsupported",
        }
    }

    pub fn zero_mode_count(&self) -> Option<u32> {
        match self {
            ExtensionClass::Generic | ExtensionClass::GenericB | ExtensionClass::DirichletPoint => {
                Some(0)
            }
            ExtensionClass::ZeroModeLine | ExtensionClass::PeriodicPoint => Some(1),
            ExtensionClass::VNK => Some(2),
            ExtensionClass::Unsupported => None,
        }
    }

    pub const ALL: [ExtensionClass; 7] = [
        ExtensionClass::Generic,
        ExtensionClass::GenericB,
        ExtensionClass::DirichletPoint,
        ExtensionClass::ZeroModeLine,
        ExtensionClass::PeriodicPoint,
        ExtensionClass::VNK,
        ExtensionClass::Unsupported,
    ];
}

impl fmt::Display for ExtensionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroModeReport {
    pub count: u32,
    pub det_d: Complex64,
    pub d_matrix: [[Complex64; 2]; 2],
}

/// Exact membership of the zero-mode line `n1 = +-1`, `beta = -n1 alpha`,
/// `alpha in [0, pi/2]`.
fn on_zero_mode_line(bc: &BoundaryParams) -> bool {
    let n1 = bc.n[0];
    (n1.abs() - 1.0).abs() <= EDGE_TOL
        && (bc.beta + n1.signum() * bc.alpha).abs() <= EDGE_TOL
        && bc.alpha >= -EDGE_TOL
        && bc.alpha <= FRAC_PI_2 + EDGE_TOL
}

pub fn zero_modes(bc: &BoundaryParams, length: f64) -> ZeroModeReport {
    let d = d_matrix(bc, length);
    let det = det_d(bc, length);
    let tol = zero_mode_tolerance(length);
    let count = if is_strongly_consistent(bc) && on_zero_mode_line(bc) {
        1
    } else if d.iter().flatten().all(|e| e.norm() <= tol) {
        2
    } else if det.norm() <= tol {
        1
    } else {
        0
    };
    ZeroModeReport {
        count,
        det_d: det,
        d_matrix: d,
    }
}

fn is_vnk(bc: &BoundaryParams, length: f64) -> bool {
    let beta_v = (2.0 / length).atan();
    let n1 = bc.n[0];
    if (bc.alpha + beta_v).abs() > VNK_TOL {
        return false;
    }
    // U(alpha, beta, n) = U(alpha, -beta, -n)
    ((bc.beta - beta_v).abs() <= VNK_TOL && (n1 - 1.0).abs() <= VNK_TOL)
        || ((bc.beta + beta_v).abs() <= VNK_TOL && (n1 + 1.0).abs() <= VNK_TOL)
}

pub fn classify(bc: &BoundaryParams, length: f64) -> ExtensionClass {
    if is_vnk(bc, length) {
        return ExtensionClass::VNK;
    }
    if !is_strongly_consistent(bc) {
        return ExtensionClass::Unsupported;
    }
    if (bc.alpha - PI).abs() <= EDGE_TOL && bc.beta.abs() <= EDGE_TOL {
        return ExtensionClass::DirichletPoint;
    }
    let has_zero_mode = on_zero_mode_line(bc) || det_d(bc, length).norm() <= zero_mode_tolerance(length);
    if has_zero_mode {
        return if (bc.alpha - FRAC_PI_2).abs() <= EDGE_TOL {
            ExtensionClass::PeriodicPoint
        } else {
            ExtensionClass::ZeroModeLine
        };
    }
    if (bc.alpha.cos() + bc.beta.cos()).abs() <= EDGE_TOL {
        return ExtensionClass::GenericB;
    }
    ExtensionClass::Generic
}
