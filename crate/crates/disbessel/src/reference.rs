//! Continuous Bessel oracle J_n(x) and the discrete-vs-continuous error
//! study.
//!
//! `j_bessel` combines two classical regimes: the ascending power series
//! (Neumaier-compensated) where it is cancellation-safe, and backward
//! recurrence normalized by the even-order sum J_0 + 2 Σ J_{2k} = 1
//! elsewhere. The switch sits at |x| = max(8, 2√(n+1)). The series terms
//! grow by the factor (x/2)²/(k(n+k)), so they are monotone decreasing —
//! and the alternating sum cancellation-free — exactly when x ≤ 2√(n+1);
//! past that the largest term exceeds the result by roughly
//! exp(x·g(n/x)) and relative accuracy collapses (at n = 2x it is ~1e9×
//! amplification already). The x ≤ 8 base keeps the series, at a bounded
//! ~3-digit cancellation cost, where backward recurrence would be
//! wasteful. The absolute error contract is ≤ 1e−13 for n ≤ 200,
//! |x| ≤ 400.

use crate::eval::{eval_reduced, tree_sum, ArgFactors};
use crate::grid::CircleGrid;
use crate::{Error, Result};

/// J_n(x) to ≤ 1e−13 absolute error for 0 ≤ n ≤ 200, |x| ≤ 400.
///
/// Negative arguments use J_n(−x) = (−1)^n J_n(x); callers needing
/// negative orders apply J_{−n} = (−1)^n J_n themselves.
pub fn j_bessel(n: u32, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFiniteArgument(x));
    }
    let ax = x.abs();
    let v = if ax <= (2.0 * ((n + 1) as f64).sqrt()).max(8.0) {
        j_bessel_series(n, ax)
    } else {
        j_bessel_recurrence(n, ax)
    };
    Ok(if x < 0.0 && n & 1 == 1 { -v } else { v })
}

/// Ascending-series regime, exposed so the overlap-band agreement part of
/// the oracle's contract is testable from outside. Requires x ≥ 0.
#[doc(hidden)]
pub fn j_bessel_series(n: u32, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    let h = 0.5 * x;

    // Leading coefficient (x/2)^n / n!, built as a running product so
    // neither the power nor the factorial is formed alone.
    let mut term = 1.0f64;
    for i in 1..=n {
        term *= h / i as f64;
    }

    // Alternating series with Neumaier compensation; ratio of consecutive
    // terms is −h²/(k(n+k)), eventually geometric.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut k: u64 = 0;
    loop {
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;

        k += 1;
        if k > 1000 {
            break;
        }
        term *= -(h * h) / ((k * (n as u64 + k)) as f64);
        let negligible = term.abs() <= sum.abs().max(1e-300) * 1e-18;
        if (k as f64 > h && negligible) || term.abs() < 1e-320 {
            break;
        }
    }
    sum + comp
}

/// Backward-recurrence regime (downward three-term recurrence from a
/// start order past the turning point, normalized by the even-order sum),
/// exposed for the overlap-band agreement test. Requires x > 0.
#[doc(hidden)]
pub fn j_bessel_recurrence(n: u32, x: f64) -> f64 {
    debug_assert!(x > 0.0);
    // The decay that makes downward recurrence self-correcting only sets
    // in ~x^{1/3} orders past the turning point, so the start order pads
    // by that scale rather than a constant.
    let start0 = (n as f64).max(x.ceil()) as i64 + 16 + (14.0 * x.cbrt()).ceil() as i64;
    let start = if start0 & 1 == 1 { start0 + 1 } else { start0 };

    let mut above = 0.0f64; // J_{r+1}, unnormalized
    let mut here = 1e-300f64; // J_r, unnormalized trial
    let mut target = 0.0f64; // J_n in the same scaling
    let mut norm = 0.0f64; // J_0 + 2 Σ J_{2k}, Neumaier-compensated
    let mut comp = 0.0f64;

    let mut r = start;
    loop {
        if r == n as i64 {
            target = here;
        }
        if r & 1 == 0 {
            let contrib = if r == 0 { here } else { 2.0 * here };
            let t = norm + contrib;
            if norm.abs() >= contrib.abs() {
                comp += (norm - t) + contrib;
            } else {
                comp += (contrib - t) + norm;
            }
            norm = t;
        }
        if r == 0 {
            break;
        }
        let below = (2.0 * r as f64 / x) * here - above;
        above = here;
        here = below;
        r -= 1;

        if here.abs() > 1e250 {
            above *= 1e-250;
            here *= 1e-250;
            target *= 1e-250;
            norm *= 1e-250;
            comp *= 1e-250;
        }
    }
    target / (norm + comp)
}

/// Mean squared difference Δ_n^N = (1/N) Σ_{m=0}^{N−1} (J_n(m) − B_n(m))².
pub fn error_delta(grid: &CircleGrid<f64>, n: i64) -> Result<f64> {
    let max = 2 * grid.j() as i64;
    if n < 0 || n > max {
        return Err(Error::OrderOutOfRange { n, max });
    }
    let nn = grid.n_points();
    let mut terms = Vec::with_capacity(nn);
    for m in 0..nn {
        let f = ArgFactors::new(grid, &(m as f64));
        let b = eval_reduced(grid, &f, n);
        let jv = j_bessel(n as u32, m as f64)?;
        let d = jv - b;
        terms.push(d * d);
    }
    Ok(tree_sum(&terms) / nn as f64)
}

/// Pointwise differences J_n(m) − B_n(m) for every (n, m) in
/// {0..2j} × {0..4j} selected by `region`, in row-major (n, m) order.
pub fn pointwise_diff_region<F>(grid: &CircleGrid<f64>, region: F) -> Result<Vec<(i64, i64, f64)>>
where
    F: Fn(i64, i64) -> bool,
{
    let n_top = 2 * grid.j() as i64;
    let m_top = 4 * grid.j() as i64;
    let mut rows: Vec<Vec<(i64, i64, f64)>> = vec![Vec::new(); n_top as usize + 1];
    for m in 0..=m_top {
        let f = ArgFactors::new(grid, &(m as f64));
        for n in 0..=n_top {
            if region(n, m) {
                let b = eval_reduced(grid, &f, n);
                let jv = j_bessel(n as u32, m as f64)?;
                rows[n as usize].push((n, m, jv - b));
            }
        }
    }
    Ok(rows.into_iter().flatten().collect())
}

/// Per-order mean squared differences over the full m = 0..N−1 range,
/// plus the largest pointwise |J − B| encountered while computing them.
#[derive(Clone, Debug)]
pub struct ErrorReport {
    pub j: u32,
    pub per_order: Vec<(i64, f64)>,
    pub max_abs_diff: f64,
    pub region: String,
}

pub fn error_report(grid: &CircleGrid<f64>, orders: &[i64]) -> Result<ErrorReport> {
    let nn = grid.n_points();
    let max_order = 2 * grid.j() as i64;
    let mut per_order = Vec::with_capacity(orders.len());
    let mut max_abs_diff = 0.0f64;
    for &n in orders {
        if n < 0 || n > max_order {
            return Err(Error::OrderOutOfRange { n, max: max_order });
        }
        let mut terms = Vec::with_capacity(nn);
        for m in 0..nn {
            let f = ArgFactors::new(grid, &(m as f64));
            let b = eval_reduced(grid, &f, n);
            let jv = j_bessel(n as u32, m as f64)?;
            let d = jv - b;
            if d.abs() > max_abs_diff {
                max_abs_diff = d.abs();
            }
            terms.push(d * d);
        }
        per_order.push((n, tree_sum(&terms) / nn as f64));
    }
    Ok(ErrorReport {
        j: grid.j(),
        per_order,
        max_abs_diff,
        region: format!("m in [0, {}]", nn - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    // Frozen oracles: 50+ digit values from two independent routes
    // (compensated ascending series and integral representation).
    const J0_1: &str = "0.7651976865579665514497175261026632209092742897553252419";
    const J7_0P5: &str = "0.00000001201586732776302287611055278799778926526181791892140979";
    const J5_12P3: &str = "-0.008405035965524959898896487718350637531078890863045671394";
    const J20_3: &str = "0.000000000000001227594673799298649572727859826874033748415483029988758";
    const J150_140: &str = "0.004311099945672877482054792786120259583028482429616048683";
    const J150_200: &str = "-0.03159355927345841796381404868368299778100672238321553377";
    const J2_11P9: &str = "-0.06353402147470285293523709518193622791767336154568757118";
    const J100_400: &str = "-0.03945721189852648492889694092500331564345365087286467931";
    const DELTA_J10_N0: &str = "8.251640737798906971476878724934371102282023282528826528e-22";

    #[test]
    fn trivial_values() {
        assert_eq!(j_bessel(0, 0.0).unwrap(), 1.0);
        assert_eq!(j_bessel(5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn oracle_values_within_contract() {
        let cases: [(u32, f64, &str); 8] = [
            (0, 1.0, J0_1),
            (7, 0.5, J7_0P5),
            (5, 12.3, J5_12P3),
            (20, 3.0, J20_3),
            (150, 140.0, J150_140),
            (150, 200.0, J150_200),
            (2, 11.9, J2_11P9),
            (100, 400.0, J100_400),
        ];
        for (n, x, oracle) in cases {
            let want: f64 = oracle.parse().unwrap();
            let got = j_bessel(n, x).unwrap();
            assert!(
                (got - want).abs() <= 1e-13,
                "J_{n}({x}): got {got:e}, want {want:e}"
            );
        }
        // Deep in the series regime there is no cancellation at all, so
        // the tiny value is also relatively accurate.
        let want: f64 = J20_3.parse().unwrap();
        let got = j_bessel(20, 3.0).unwrap();
        assert!(((got - want) / want).abs() <= 1e-12);
    }

    #[test]
    fn negative_argument_reflection() {
        let p = j_bessel(3, 7.25).unwrap();
        let m = j_bessel(3, -7.25).unwrap();
        assert_eq!(p, -m);
        let p = j_bessel(4, 7.25).unwrap();
        let m = j_bessel(4, -7.25).unwrap();
        assert_eq!(p, m);
    }

    #[test]
    fn nonfinite_rejected() {
        assert!(j_bessel(0, f64::NAN).is_err());
        assert!(j_bessel(3, f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn three_term_recurrence_spot() {
        for &(n, x) in &[(1u32, 0.5f64), (7, 9.0), (30, 55.5), (99, 380.0)] {
            let a = j_bessel(n - 1, x).unwrap();
            let b = j_bessel(n, x).unwrap();
            let c = j_bessel(n + 1, x).unwrap();
            let lhs = a + c;
            let rhs = 2.0 * n as f64 / x * b;
            let scale = lhs.abs().max(rhs.abs()).max(1e-300);
            assert!(
                ((lhs - rhs) / scale).abs() <= 1e-11,
                "recurrence at n={n} x={x}: {lhs:e} vs {rhs:e}"
            );
        }
    }

    #[test]
    fn even_order_normalization_spot() {
        for &x in &[0.5f64, 8.0, 33.3, 120.0, 400.0] {
            let mut acc = j_bessel(0, x).unwrap();
            let mut k = 1u32;
            loop {
                let t = j_bessel(2 * k, x).unwrap();
                acc += 2.0 * t;
                if t.abs() < 1e-18 && 2.0 * k as f64 > x {
                    break;
                }
                k += 1;
            }
            assert!((acc - 1.0).abs() <= 1e-12, "normalization at x={x}: {acc}");
        }
    }

    #[test]
    fn regime_overlap_band() {
        // Both regimes are valid for x in [8, 11] at small n, and for the
        // larger orders the values are far below the agreement threshold.
        for n in (0u32..=20).chain([50, 100, 200]) {
            let mut x = 8.0;
            while x <= 11.0 {
                let a = j_bessel_series(n, x);
                let b = j_bessel_recurrence(n, x);
                assert!(
                    (a - b).abs() <= 1e-12,
                    "overlap at n={n} x={x}: series {a:e}, recurrence {b:e}"
                );
                x += 0.5;
            }
        }
    }

    #[test]
    fn error_delta_single_point_grid() {
        let g = make_grid(0);
        assert_eq!(error_delta(&g, 0).unwrap(), 0.0);
    }

    #[test]
    fn error_delta_large_grid_is_tiny() {
        let g = make_grid(80);
        for n in 0..=2i64 {
            let d = error_delta(&g, n).unwrap();
            assert!(d < 1e-16, "delta at n={n}: {d:e}");
        }
    }

    #[test]
    fn error_delta_matches_frozen_oracle() {
        let g = make_grid(10);
        let want: f64 = DELTA_J10_N0.parse().unwrap();
        let got = error_delta(&g, 0).unwrap();
        assert!(
            ((got - want) / want).abs() <= 1e-3,
            "delta j=10 n=0: got {got:e}, want {want:e}"
        );
    }

    #[test]
    fn error_delta_rejects_out_of_range_order() {
        let g = make_grid(5);
        assert!(matches!(
            error_delta(&g, 11),
            Err(Error::OrderOutOfRange { .. })
        ));
        assert!(error_delta(&g, -1).is_err());
    }

    #[test]
    fn pointwise_diff_origin() {
        let g = make_grid(5);
        let d = pointwise_diff_region(&g, |n, m| n == 0 && m == 0).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[0].2.abs() <= 1e-15);
    }

    #[test]
    fn pointwise_diff_match_region() {
        let g = make_grid(50);
        let d = pointwise_diff_region(&g, |n, m| n + m <= 50).unwrap();
        assert!(!d.is_empty());
        for (n, m, diff) in d {
            assert!(diff.abs() < 1e-8, "({n},{m}): {diff:e}");
        }
    }

    #[test]
    fn pointwise_diff_outer_edge_is_order_one() {
        let g = make_grid(10);
        let d = pointwise_diff_region(&g, |_, m| m == 40).unwrap();
        let max = d.iter().map(|r| r.2.abs()).fold(0.0f64, f64::max);
        assert!(max > 1e-3 && max < 10.0, "edge differences: max {max:e}");
    }

    #[test]
    fn match_quality_improves_away_from_edge() {
        for j in [10u32, 30, 50] {
            let g = make_grid(j);
            let cuts = [2 * j as i64, 3 * j as i64 / 2, j as i64, j as i64 / 2];
            let mut last = f64::INFINITY;
            for c in cuts {
                let d = pointwise_diff_region(&g, |n, m| n + m <= c).unwrap();
                let max = d.iter().map(|r| r.2.abs()).fold(0.0f64, f64::max);
                assert!(
                    max <= last,
                    "j={j}: max diff grew from {last:e} to {max:e} at cut {c}"
                );
                last = max;
            }
        }
    }

    #[test]
    fn error_report_assembles() {
        let g = make_grid(10);
        let r = error_report(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(r.j, 10);
        assert_eq!(r.per_order.len(), 4);
        assert_eq!(r.region, "m in [0, 20]");
        for &(_, d) in &r.per_order {
            assert!(d >= 0.0);
        }
        assert!(r.max_abs_diff > 0.0);
        assert!(error_report(&g, &[21]).is_err());
    }
}
