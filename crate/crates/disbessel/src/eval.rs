//! Evaluation of B_n^N(x) by the real-arithmetic reduction, plus the
//! literal complex quadrature kept as a cross-check oracle.
//!
//! The reduction folds the symmetric node range k = −j..j onto k = 0..j:
//! even orders sum cos(x sin φ_k)·cos(nφ_k), odd orders sum
//! sin(x sin φ_k)·sin(nφ_k), with weight 2 on k ≥ 1. Order angles come
//! from the grid's mirrored tables through the integer reduction
//! (n·k) mod N, and negative arguments are mapped to |x| up front with
//! the parity sign applied at the end. Together these make the symmetry
//! relations B_n(−x) = (−1)^n B_n(x), B_{−n} = (−1)^n B_n and the
//! aliasing period B_{n+2N} = B_n hold bit-for-bit.
//!
//! All sums use a fixed midpoint-split pairwise tree, so every result is
//! reproducible to the bit regardless of thread count or call order.

use num_complex::Complex;

use crate::grid::CircleGrid;
use crate::orders::parity_mask;
use crate::real::Real;
use crate::{Error, Result};

/// Fixed-shape pairwise summation. The split point depends only on the
/// slice length, never on the values, which is what makes results
/// bit-deterministic.
pub(crate) fn tree_sum<R: Real>(t: &[R]) -> R {
    match t.len() {
        0 => R::zero(),
        1 => t[0].clone(),
        len => {
            let mid = len / 2;
            tree_sum(&t[..mid]) + tree_sum(&t[mid..])
        }
    }
}

fn tree_sum_complex(t: &[Complex<f64>]) -> Complex<f64> {
    match t.len() {
        0 => Complex::new(0.0, 0.0),
        1 => t[0],
        len => {
            let mid = len / 2;
            tree_sum_complex(&t[..mid]) + tree_sum_complex(&t[mid..])
        }
    }
}

/// cos(x sin φ_k) and sin(x sin φ_k) for k = 0..j at one fixed argument,
/// reused across orders. Identity checks and the matrix builder evaluate
/// many orders per argument; this caches the only expensive part.
///
/// Callers that rely on exact symmetry must build factors at |x| and
/// apply the parity sign themselves (see [`b_signed`]).
pub(crate) struct ArgFactors<R: Real> {
    cos_xs: Vec<R>,
    sin_xs: Vec<R>,
}

impl<R: Real> ArgFactors<R> {
    pub(crate) fn new(grid: &CircleGrid<R>, x: &R) -> Self {
        let j = grid.j() as usize;
        let mut cos_xs = Vec::with_capacity(j + 1);
        let mut sin_xs = Vec::with_capacity(j + 1);
        for k in 0..=j {
            let arg = x.clone() * grid.sin_phi_nonneg(k).clone();
            cos_xs.push(arg.cos());
            sin_xs.push(arg.sin());
        }
        ArgFactors { cos_xs, sin_xs }
    }
}

/// B_n at the argument the factors were built for (assumed ≥ 0), for any
/// integer order n. Aliasing and order negation are exact here: the
/// table index (n·k) mod N lands on mirrored entries, so no separate
/// canonicalization is needed.
pub(crate) fn eval_reduced<R: Real>(grid: &CircleGrid<R>, f: &ArgFactors<R>, n: i64) -> R {
    let nn = grid.n_points();
    let j = grid.j() as usize;
    let r = n.rem_euclid(nn as i64) as usize;
    let two = R::from_i64(2);

    let mut terms = Vec::with_capacity(j + 1);
    if n & 1 == 0 {
        // k = 0: cos(x·0)·cos(0) = 1 exactly (the factor itself is 1).
        terms.push(f.cos_xs[0].clone());
        for k in 1..=j {
            let idx = (r * k) % nn;
            terms.push(two.clone() * f.cos_xs[k].clone() * grid.cos_order(idx).clone());
        }
    } else {
        // k = 0 contributes sin(0)·sin(0) = 0 exactly.
        terms.push(R::zero());
        for k in 1..=j {
            let idx = (r * k) % nn;
            terms.push(two.clone() * f.sin_xs[k].clone() * grid.sin_order(idx).clone());
        }
    }
    tree_sum(&terms) / R::from_i64(nn as i64)
}

/// [`eval_reduced`] with the argument-negation parity sign applied:
/// pass `arg_negative = true` when the original argument was < 0 and the
/// factors were built at its absolute value.
pub(crate) fn b_signed<R: Real>(
    grid: &CircleGrid<R>,
    f: &ArgFactors<R>,
    arg_negative: bool,
    n: i64,
) -> R {
    let v = eval_reduced(grid, f, n);
    if arg_negative && n & 1 == 1 {
        -v
    } else {
        v
    }
}

/// Evaluates B_n^N(x) for any integer order n and finite real x.
///
/// Rejects non-finite x. On the one-point grid (j = 0) this is 1 for
/// even orders and 0 for odd, at every x.
pub fn eval_discrete_bessel<R: Real>(grid: &CircleGrid<R>, n: i64, x: R) -> Result<R> {
    if !x.is_finite() {
        return Err(Error::NonFiniteArgument(x.to_f64()));
    }
    let arg_negative = x < R::zero();
    let xa = x.abs();
    let f = ArgFactors::new(grid, &xa);
    Ok(b_signed(grid, &f, arg_negative, n))
}

/// The defining quadrature evaluated literally as a complex sum over the
/// full node range, with the parity masks in place. Retained as a
/// validation oracle for the folded real path: the two must agree to a
/// few units of N-term accumulation roundoff.
///
/// The imaginary part cancels pairwise on a symmetric grid; a residue
/// above 1e−12·(1+|Re|) is reported as an error since it can only come
/// from a broken grid.
pub fn eval_discrete_bessel_complex_ref(grid: &CircleGrid<f64>, n: i64, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFiniteArgument(x));
    }
    let nn = grid.n_points() as i64;
    let jj = grid.j() as i64;
    let mask = parity_mask(n);
    let (c, s) = (mask.c as f64, mask.s as f64);
    let two_pi = 2.0 * std::f64::consts::PI;

    let mut terms = Vec::with_capacity(grid.n_points());
    for k in -jj..=jj {
        let phi_k = grid.phi()[(k + jj) as usize];
        let phase = x * phi_k.sin();
        let plane = Complex::new(phase.cos(), phase.sin());
        // Angle of the order factor, reduced to one period before any
        // floating multiply so large n·k cannot smear the comparison.
        let r = (n as i128 * k as i128).rem_euclid(nn as i128) as usize;
        let theta = two_pi * (r as f64) / (nn as f64);
        let weight = Complex::new(c * theta.cos(), -s * theta.sin());
        terms.push(plane * weight);
    }

    let total = tree_sum_complex(&terms) / (nn as f64);
    let tol = 1e-12 * (1.0 + total.re.abs());
    if total.im.abs() > tol {
        return Err(Error::ImaginaryResidue {
            imag: total.im.abs(),
            tol,
        });
    }
    Ok(total.re)
}
