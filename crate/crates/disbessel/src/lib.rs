//! Discrete Bessel functions on odd circle grids.
//!
//! For a grid of N = 2j+1 equidistant angles φ_k = 2πk/N, k = −j..j, the
//! discrete Bessel function B_n^N(x) is the N-point quadrature of the
//! Fourier projection of the plane wave e^{ix sin φ}. It inherits the
//! symmetries of J_n, satisfies a family of finite summation identities
//! exactly (in exact arithmetic), agrees with J_n(m) to near machine
//! precision for n + m well inside the grid, and defines an N×N transform
//! whose inverse becomes severely ill-conditioned as N grows.
//!
//! The crate provides:
//!
//! - evaluation of B_n^N(x) for any integer order and real argument,
//!   with a bit-deterministic summation scheme ([`eval`]);
//! - a continuous Bessel oracle J_n(x) and the discrete-vs-continuous
//!   error study ([`reference`]);
//! - every summation identity as an executable check returning a
//!   structured residual, plus the four trigonometric reconstruction
//!   approximations ([`identities`]);
//! - the discrete Bessel transform, its pivoted inverse, and honest
//!   conditioning diagnostics ([`transform`]);
//! - a command-line front end (`disbessel`) that tabulates, verifies,
//!   compares, transforms, and plots ([`cli`]).
//!
//! All numerical code is generic over [`real::Real`], which has two
//! implementations: hardware `f64` (working precision) and a 256-bit
//! software float (extended precision, ~77 significant digits) used to
//! resolve determinants and inverses beyond the reach of `f64`.

pub mod cli;
pub mod eval;
pub mod grid;
pub mod identities;
pub mod orders;
pub mod real;
pub mod reference;
pub mod transform;

pub(crate) mod svg;

pub use eval::{eval_discrete_bessel, eval_discrete_bessel_complex_ref};
pub use grid::{make_grid, CircleGrid};
pub use orders::{canonicalize_order, neumann_factor, parity_mask, ParityMask};
pub use real::{Ext, Real};

/// Errors shared across the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("argument must be finite, got {0}")]
    NonFiniteArgument(f64),

    /// The literal complex quadrature produced an imaginary residue above
    /// tolerance; on a valid symmetric grid it cancels to roundoff, so
    /// this indicates a broken grid.
    #[error("imaginary residue {imag:.3e} exceeds tolerance {tol:.3e}; grid symmetry is broken")]
    ImaginaryResidue { imag: f64, tol: f64 },

    #[error("order n={n} outside [0, {max}]")]
    OrderOutOfRange { n: i64, max: i64 },

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Elimination met a pivot too small to trust at the current
    /// precision. Carries the smallest pivot magnitude reached; retrying
    /// at extended precision usually succeeds.
    #[error("matrix numerically singular at this precision (min |pivot| = {min_pivot:.3e}); retry with extended precision")]
    Singular { min_pivot: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
