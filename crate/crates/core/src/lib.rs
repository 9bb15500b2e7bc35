//! Spectral functions of the Laplacian on `[0, L]` under every selfadjoint
//! boundary condition in the `U(2)` family.
//!
//! Boundary conditions are written `phi - i dphi = U (phi + i dphi)` on the
//! boundary data `phi = (psi(0), psi(L))`, `dphi = (-psi'(0), psi'(L))`, with
//! `U = e^{i alpha} [cos(beta) I + i sin(beta) n.sigma]`.
//!
//! * [`extensions`] validates and classifies boundary conditions and counts
//!   zero modes.
//! * [`spectrum`] evaluates the secular function, locates eigenvalues with
//!   certified completeness, and provides brute-force heat-trace and
//!   zeta-sum oracles.
//! * [`heatkernel`] gives closed-form small-`t` heat-trace coefficients.
//! * [`zeta`] gives residues, values, `zeta'(0)` and a numerical analytic
//!   continuation of the spectral zeta function.
//! * [`verification`] runs the end-to-end acceptance checks.

pub mod error;
pub mod extensions;
pub mod heatkernel;
pub mod quadrature;
pub mod spectrum;
pub mod verification;
pub mod zeta;

pub use error::{Error, Result};
pub use extensions::{
    classify, d_matrix, det_d, is_strongly_consistent, make_boundary, named, unitary_matrix,
    zero_modes, BoundaryParams, ExtensionClass, NamedBc, UnitaryMatrix2, ZeroModeReport,
};
pub use heatkernel::{b_coeffs, c_coeffs, coefficients, HalfOrder, HeatCoefficients};
pub use spectrum::{
    bound_states, eigenvalues, heat_trace, regularized_secular, secular, zeta_sum, Eigenvalue,
    Spectrum,
};
pub use zeta::{
    heat_coeffs_from_zeta, numeric_zeta, numeric_zeta_prime_zero, residues_and_values,
    zeta_prime_at_zero, ZetaMethod, ZetaReport,
};

pub use num_complex::Complex64;
