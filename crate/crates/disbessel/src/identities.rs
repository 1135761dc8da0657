//! Executable identity checks and trigonometric surrogates.
//!
//! The five `check_*` functions verify exact summation identities of the
//! discrete Bessel family; their residuals are pure roundoff, so each
//! tolerance scales with the term count (N, or N² for the double sum) and
//! rerunning at extended precision shrinks the residual by many orders of
//! magnitude. The `approx_*` functions are finite trigonometric
//! surrogates with a genuine method error: their deviation shrinks as j
//! grows and is indifferent to working precision.

use std::fmt;

use crate::eval::{b_signed, tree_sum, ArgFactors};
use crate::grid::CircleGrid;
use crate::orders::neumann_factor;
use crate::real::Real;

/// Outcome of one identity check: the residual actually measured, the
/// tolerance it was held to, and the parameters that produced it.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub j: u32,
    pub params: Vec<(&'static str, i64)>,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(
        name: &'static str,
        j: u32,
        params: Vec<(&'static str, i64)>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        let passed = residual <= tolerance;
        CheckResult {
            name,
            j,
            params,
            residual,
            tolerance,
            passed,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} j={}", self.name, self.j)?;
        for (key, val) in &self.params {
            write!(f, " {key}={val}")?;
        }
        write!(
            f,
            ": residual {:.3e} tolerance {:.3e} {}",
            self.residual,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// B_0(m) + 2 Σ_{n=1}^{j} B_{2n}(m) = 1 for every integer m.
pub fn check_even_order_sum<R: Real>(grid: &CircleGrid<R>, m: i64) -> CheckResult {
    let f = ArgFactors::new(grid, &R::from_i64(m.abs()));
    let neg = m < 0;
    let j = grid.j() as i64;
    let mut terms = Vec::with_capacity(j as usize + 1);
    for n in 0..=j {
        let w = R::from_i64(neumann_factor(n));
        terms.push(w * b_signed(grid, &f, neg, 2 * n));
    }
    let residual = (tree_sum(&terms) - R::one()).abs().to_f64();
    CheckResult::new(
        "even_order_sum",
        grid.j(),
        vec![("m", m)],
        residual,
        1e-13 * grid.n_points() as f64,
    )
}

/// Σ_{n=0}^{j} ε_n B_{2n}(m) cos(2n φ_k) = cos(m sin φ_k) at node k.
pub fn check_linear_cos<R: Real>(grid: &CircleGrid<R>, m: i64, k: i64) -> CheckResult {
    let j = grid.j() as i64;
    assert!((-j..=j).contains(&k), "node index {k} outside [-{j}, {j}]");
    let f = ArgFactors::new(grid, &R::from_i64(m.abs()));
    let neg = m < 0;
    let phi_k = grid.phi()[(k + j) as usize].clone();

    let mut terms = Vec::with_capacity(j as usize + 1);
    for n in 0..=j {
        let w = R::from_i64(neumann_factor(n));
        let c = (R::from_i64(2 * n) * phi_k.clone()).cos();
        terms.push(w * b_signed(grid, &f, neg, 2 * n) * c);
    }
    let target = (R::from_i64(m) * grid.sin_phi(k)).cos();
    let residual = (tree_sum(&terms) - target).abs().to_f64();
    CheckResult::new(
        "linear_cos",
        grid.j(),
        vec![("m", m), ("k", k)],
        residual,
        1e-12 * grid.n_points() as f64,
    )
}

/// Σ_{n=0}^{j} B_{2n+1}(m) sin((2n+1) φ_k) = ½ sin(m sin φ_k) at node k.
pub fn check_linear_sin<R: Real>(grid: &CircleGrid<R>, m: i64, k: i64) -> CheckResult {
    let j = grid.j() as i64;
    assert!((-j..=j).contains(&k), "node index {k} outside [-{j}, {j}]");
    let f = ArgFactors::new(grid, &R::from_i64(m.abs()));
    let neg = m < 0;
    let phi_k = grid.phi()[(k + j) as usize].clone();

    let mut terms = Vec::with_capacity(j as usize + 1);
    for n in 0..=j {
        let s = (R::from_i64(2 * n + 1) * phi_k.clone()).sin();
        terms.push(b_signed(grid, &f, neg, 2 * n + 1) * s);
    }
    let target = (R::from_i64(m) * grid.sin_phi(k)).sin() / R::from_i64(2);
    let residual = (tree_sum(&terms) - target).abs().to_f64();
    CheckResult::new(
        "linear_sin",
        grid.j(),
        vec![("m", m), ("k", k)],
        residual,
        1e-12 * grid.n_points() as f64,
    )
}

/// Addition theorem Σ_{n=−2j}^{2j} B_n(m) B_{n′−n}(m′) = B_{n′}(m + m′),
/// the discrete counterpart of Graf's theorem. The sum runs over all
/// 4j + 1 terms literally; orders that leave [−2j, 2j] alias back through
/// the evaluator's own reduction.
pub fn check_graf<R: Real>(grid: &CircleGrid<R>, n_prime: i64, m: i64, m_prime: i64) -> CheckResult {
    let fa = ArgFactors::new(grid, &R::from_i64(m.abs()));
    let fb = ArgFactors::new(grid, &R::from_i64(m_prime.abs()));
    let na = m < 0;
    let nb = m_prime < 0;
    let top = 2 * grid.j() as i64;

    let mut terms = Vec::with_capacity(4 * grid.j() as usize + 1);
    for n in -top..=top {
        terms.push(b_signed(grid, &fa, na, n) * b_signed(grid, &fb, nb, n_prime - n));
    }
    let lhs = tree_sum(&terms);

    let s = m + m_prime;
    let fs = ArgFactors::new(grid, &R::from_i64(s.abs()));
    let rhs = b_signed(grid, &fs, s < 0, n_prime);
    let residual = (lhs - rhs).abs().to_f64();

    let nn = grid.n_points() as f64;
    CheckResult::new(
        "graf_addition",
        grid.j(),
        vec![("n'", n_prime), ("m", m), ("m'", m_prime)],
        residual,
        1e-11 * nn * nn,
    )
}

/// [B_0(m)]² + 2 Σ_{n=1}^{2j} [B_n(m)]² = 1 for every integer m.
///
/// Summed symmetrically over n = −2j..2j so the floating-point value is
/// bit-identical to `check_graf(grid, 0, m, −m)`, which computes the same
/// quantity through the addition theorem.
pub fn check_quadratic_norm<R: Real>(grid: &CircleGrid<R>, m: i64) -> CheckResult {
    let f = ArgFactors::new(grid, &R::from_i64(m.abs()));
    let top = 2 * grid.j() as i64;
    let mut terms = Vec::with_capacity(4 * grid.j() as usize + 1);
    for n in -top..=top {
        let v = crate::eval::eval_reduced(grid, &f, n);
        terms.push(v.clone() * v);
    }
    let residual = (tree_sum(&terms) - R::one()).abs().to_f64();
    CheckResult::new(
        "quadratic_norm",
        grid.j(),
        vec![("m", m)],
        residual,
        1e-13 * grid.n_points() as f64,
    )
}

/// 2 Σ_{n=0}^{j} (−1)^n B_{2n+1}(m), the grid's surrogate for sin m.
pub fn approx_sin<R: Real>(grid: &CircleGrid<R>, m: i64) -> R {
    let f = ArgFactors::new(grid, &R::from_i64(m.abs()));
    let neg = m < 0;
    let j = grid.j() as i64;
    let mut terms = Vec::with_capacity(j as usize + 1);
    for n in 0..=j {
        let t = b_signed(grid, &f, neg, 2 * n + 1);
        terms.push(if n & 1 == 1 { -t } else { t });
    }
    tree_sum(&terms) * R::from_i64(2)
}

/// B_0(m) + 2 Σ_{n=1}^{j−1} (−1)^n B_{2n}(m) + (−1)^j B_{2j}(m), the
/// grid's surrogate for cos m.
///
/// The boundary order 2j = N − 1 carries half weight: continuing the
/// alternating even-order expansion past the fold, the next term aliases
/// back onto B_{2j} with the opposite sign and cancels it, so on average
/// the boundary order contributes once, not twice. Giving it full weight
/// inflates the j = 50 mean square error by two orders of magnitude.
pub fn approx_cos<R: Real>(grid: &CircleGrid<R>, m: i64) -> R {
    let f = ArgFactors::new(grid, &R::from_i64(m.abs()));
    let neg = m < 0;
    let j = grid.j() as i64;
    if j == 0 {
        return b_signed(grid, &f, neg, 0);
    }
    let mut terms = Vec::with_capacity(j as usize + 1);
    terms.push(b_signed(grid, &f, neg, 0));
    for n in 1..j {
        let t = R::from_i64(2) * b_signed(grid, &f, neg, 2 * n);
        terms.push(if n & 1 == 1 { -t } else { t });
    }
    let t = b_signed(grid, &f, neg, 2 * j);
    terms.push(if j & 1 == 1 { -t } else { t });
    tree_sum(&terms)
}

/// (π/N) Σ_{k=0}^{j} B_0(m sin φ_k) sin φ_k, the grid's surrogate for
/// sin(m)/m: the node sum is the half-circle quadrature of the classical
/// integral sin(m)/m = ½ ∫_0^π J_0(m sin t) sin t dt with J replaced by B.
pub fn approx_sinc<R: Real>(grid: &CircleGrid<R>, m: i64) -> R {
    let j = grid.j() as usize;
    let mx = R::from_i64(m);
    let mut terms = Vec::with_capacity(j + 1);
    for k in 0..=j {
        let s = grid.sin_phi_nonneg(k).clone();
        let x = mx.clone() * s.clone();
        let neg = x < R::zero();
        let f = ArgFactors::new(grid, &x.abs());
        terms.push(b_signed(grid, &f, neg, 0) * s);
    }
    tree_sum(&terms) * R::pi() / R::from_i64(grid.n_points() as i64)
}

/// (π/N) Σ_{k=0}^{j} B_1(m sin φ_k), the grid's surrogate for
/// (1 − cos m)/m, via (1 − cos m)/m = ½ ∫_0^π J_1(m sin t) dt.
pub fn approx_cosc<R: Real>(grid: &CircleGrid<R>, m: i64) -> R {
    let j = grid.j() as usize;
    let mx = R::from_i64(m);
    let mut terms = Vec::with_capacity(j + 1);
    for k in 0..=j {
        let x = mx.clone() * grid.sin_phi_nonneg(k).clone();
        let neg = x < R::zero();
        let f = ArgFactors::new(grid, &x.abs());
        terms.push(b_signed(grid, &f, neg, 1));
    }
    tree_sum(&terms) * R::pi() / R::from_i64(grid.n_points() as i64)
}

/// Mean square deviations of the four surrogates from their targets over
/// their contract sweeps: sin and cos over m ∈ [0, 2j], sinc and cosc
/// over m ∈ [−j, j] \ {0}.
#[derive(Clone, Copy, Debug)]
pub struct TrigMse {
    pub sin: f64,
    pub cos: f64,
    pub sinc: f64,
    pub cosc: f64,
}

pub fn trig_mse<R: Real>(grid: &CircleGrid<R>) -> TrigMse {
    let j = grid.j() as i64;

    let mut se_sin = Vec::with_capacity(2 * j as usize + 1);
    let mut se_cos = Vec::with_capacity(2 * j as usize + 1);
    for m in 0..=2 * j {
        let target = R::from_i64(m);
        let d = approx_sin(grid, m) - target.clone().sin();
        se_sin.push(d.clone() * d);
        let d = approx_cos(grid, m) - target.cos();
        se_cos.push(d.clone() * d);
    }
    let count = R::from_i64(2 * j + 1);
    let sin = (tree_sum(&se_sin) / count.clone()).to_f64();
    let cos = (tree_sum(&se_cos) / count).to_f64();

    let mut se_sinc = Vec::with_capacity(2 * j as usize);
    let mut se_cosc = Vec::with_capacity(2 * j as usize);
    for m in -j..=j {
        if m == 0 {
            continue;
        }
        let mm = R::from_i64(m);
        let d = approx_sinc(grid, m) - mm.clone().sin() / mm.clone();
        se_sinc.push(d.clone() * d);
        let d = approx_cosc(grid, m) - (R::one() - mm.clone().cos()) / mm;
        se_cosc.push(d.clone() * d);
    }
    let count = R::from_i64(2 * j);
    let sinc = (tree_sum(&se_sinc) / count.clone()).to_f64();
    let cosc = (tree_sum(&se_cosc) / count).to_f64();

    TrigMse {
        sin,
        cos,
        sinc,
        cosc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    // 50-digit evaluations of the same finite sums, frozen from an
    // independent route.
    const SIN_J10_M3: &str = "0.1411200080598670474427839708114284809204581474033525554";
    const COS_J10_M3: &str = "-0.9899924966004466668604302481340711025805892776061285457";
    const SINC_J10_M1: &str = "0.8396042344069501870368780109105828583538424633452684496";
    const COSC_J10_M1: &str = "0.4587645814331873754978573264286853220295937998391194722";

    #[test]
    fn even_order_sum_at_origin() {
        let r = check_even_order_sum(&make_grid(5), 0);
        assert!(r.passed);
        assert!(r.residual <= 1e-15, "residual {:e}", r.residual);
    }

    #[test]
    fn even_order_sum_inside_and_beyond_range() {
        assert!(check_even_order_sum(&make_grid(10), 3).passed);
        assert!(check_even_order_sum(&make_grid(50), 77).passed);
        assert!(check_even_order_sum(&make_grid(8), -12).passed);
    }

    #[test]
    fn linear_cos_examples() {
        assert!(check_linear_cos(&make_grid(7), 4, 0).passed);
        let r = check_linear_cos(&make_grid(5), 0, 2);
        assert!(r.passed);
        assert!(r.residual <= 1e-13);
        assert!(check_linear_cos(&make_grid(30), 11, -7).passed);
    }

    #[test]
    fn linear_sin_examples() {
        let r = check_linear_sin(&make_grid(5), 0, 3);
        assert_eq!(r.residual, 0.0);
        let r = check_linear_sin(&make_grid(5), 9, 0);
        assert_eq!(r.residual, 0.0);
        assert!(check_linear_sin(&make_grid(30), 9, 4).passed);
        assert!(check_linear_sin(&make_grid(12), -6, -5).passed);
    }

    #[test]
    #[should_panic(expected = "outside")]
    fn linear_checks_reject_bad_node() {
        check_linear_cos(&make_grid(3), 1, 4);
    }

    #[test]
    fn graf_at_origin_is_kronecker() {
        for np in [0i64, 2, 5] {
            let r = check_graf(&make_grid(4), np, 0, 0);
            assert!(r.residual <= 1e-15, "n'={np}: residual {:e}", r.residual);
        }
    }

    #[test]
    fn graf_generic_case_passes() {
        let r = check_graf(&make_grid(5), 3, 2, 4);
        assert!(r.passed, "{r}");
        assert!(check_graf(&make_grid(20), -4, 7, -9).passed);
    }

    #[test]
    fn graf_matches_quadratic_norm_bitwise() {
        for (j, m) in [(7u32, 5i64), (10, 0), (13, -8)] {
            let g = make_grid(j);
            let a = check_graf(&g, 0, m, -m);
            let b = check_quadratic_norm(&g, m);
            assert_eq!(a.residual, b.residual, "j={j} m={m}");
            assert!(a.passed && b.passed);
        }
    }

    #[test]
    fn graf_symmetric_in_arguments() {
        let g = make_grid(6);
        let a = check_graf(&g, 2, 3, 7);
        let b = check_graf(&g, 2, 7, 3);
        assert!(a.passed && b.passed);
        assert!((a.residual - b.residual).abs() <= a.tolerance);
    }

    #[test]
    fn quadratic_norm_examples() {
        let r = check_quadratic_norm(&make_grid(7), 0);
        assert!(r.residual <= 1e-15);
        assert!(check_quadratic_norm(&make_grid(10), 5).passed);
        assert!(check_quadratic_norm(&make_grid(50), -33).passed);
    }

    #[test]
    fn checks_fail_on_corrupted_grid() {
        let g = CircleGrid::<f64>::corrupted(5, 1e-3);
        assert!(!check_even_order_sum(&g, 3).passed);
        assert!(!check_linear_cos(&g, 2, 1).passed);
        assert!(!check_linear_sin(&g, 2, 1).passed);
        assert!(!check_graf(&g, 1, 2, 3).passed);
        assert!(!check_quadratic_norm(&g, 3).passed);
    }

    #[test]
    fn check_result_reports_state_consistently() {
        let good = check_even_order_sum(&make_grid(6), 2);
        assert_eq!(good.passed, good.residual <= good.tolerance);
        let text = good.to_string();
        assert!(text.contains("even_order_sum") && text.contains("PASS"));
        let bad = check_even_order_sum(&CircleGrid::<f64>::corrupted(6, 1e-3), 2);
        assert!(bad.to_string().contains("FAIL"));
    }

    #[test]
    fn approx_trivial_values() {
        let g = make_grid(8);
        assert_eq!(approx_sin(&g, 0), 0.0);
        assert!((approx_cos(&g, 0) - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn approx_single_point_grid() {
        let g = make_grid(0);
        assert!((approx_cos(&g, 0) - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn approx_sin_cos_match_frozen_sums() {
        let g = make_grid(10);
        let want: f64 = SIN_J10_M3.parse().unwrap();
        assert!((approx_sin(&g, 3) - want).abs() <= 1e-13);
        let want: f64 = COS_J10_M3.parse().unwrap();
        assert!((approx_cos(&g, 3) - want).abs() <= 1e-13);
    }

    #[test]
    fn approx_sinc_cosc_match_frozen_sums() {
        let g = make_grid(10);
        let want: f64 = SINC_J10_M1.parse().unwrap();
        let got = approx_sinc(&g, 1);
        assert!((got - want).abs() <= 1e-13, "sinc: got {got:e} want {want:e}");
        let want: f64 = COSC_J10_M1.parse().unwrap();
        let got = approx_cosc(&g, 1);
        assert!((got - want).abs() <= 1e-13, "cosc: got {got:e} want {want:e}");
    }

    #[test]
    fn sinc_even_cosc_odd_bitwise() {
        let g = make_grid(5);
        assert_eq!(approx_sinc(&g, 4), approx_sinc(&g, -4));
        assert_eq!(approx_cosc(&g, 4), -approx_cosc(&g, -4));
    }

    #[test]
    fn mse_contract_at_j50() {
        let m = trig_mse(&make_grid(50));
        assert!(m.sin < 1e-4, "sin mse {:e}", m.sin);
        assert!(m.cos < 1e-4, "cos mse {:e}", m.cos);
        assert!(m.sinc < 1e-4, "sinc mse {:e}", m.sinc);
        assert!(m.cosc < 1e-4, "cosc mse {:e}", m.cosc);
    }
}
