//! The odd circle quadrature grid and its exact trigonometric tables.
//!
//! A grid of half-size j holds the N = 2j+1 angles φ_k = 2πk/N for
//! k = −j..j. Everything downstream reduces trigonometry of the grid to
//! two tables, cos(2πr/N) and sin(2πr/N) for r = 0..N, built once from
//! the exact rational multiples of 2π and mirrored algebraically across
//! r = N/2 (cos_{N−r} = cos_r, sin_{N−r} = −sin_r). Order/node products
//! are reduced with integer arithmetic before lookup, so the evaluator
//! sees exactly consistent values for aliased orders and mirrored nodes;
//! the symmetry and periodicity relations then hold bit-for-bit, not
//! merely to roundoff.

use crate::real::Real;

#[derive(Clone, Debug)]
pub struct CircleGrid<R: Real = f64> {
    j: u32,
    n_points: usize,
    /// φ_k for k = −j..j, stored at index k + j. φ_{−k} is the exact
    /// negation of φ_k.
    phi: Vec<R>,
    /// cos(2πr/N), r = 0..N.
    cos_tab: Vec<R>,
    /// sin(2πr/N), r = 0..N.
    sin_tab: Vec<R>,
}

/// Builds the working-precision grid of half-size j (N = 2j+1 nodes).
///
/// Negative j is unrepresentable in the parameter type; the CLI maps a
/// negative `--j` to a usage error before reaching here.
pub fn make_grid(j: u32) -> CircleGrid<f64> {
    CircleGrid::new(j)
}

impl<R: Real> CircleGrid<R> {
    pub fn new(j: u32) -> Self {
        let n = 2 * j as usize + 1;
        let two_pi = R::pi() * R::from_i64(2);

        let mut cos_tab = Vec::with_capacity(n);
        let mut sin_tab = Vec::with_capacity(n);
        for r in 0..=j as usize {
            let ang = two_pi.clone() * R::from_i64(r as i64) / R::from_i64(n as i64);
            cos_tab.push(ang.cos());
            sin_tab.push(ang.sin());
        }
        for r in j as usize + 1..n {
            cos_tab.push(cos_tab[n - r].clone());
            sin_tab.push(-sin_tab[n - r].clone());
        }

        let mut phi = Vec::with_capacity(n);
        for k in -(j as i64)..=j as i64 {
            let ang = two_pi.clone() * R::from_i64(k.abs()) / R::from_i64(n as i64);
            phi.push(if k < 0 { -ang } else { ang });
        }

        CircleGrid {
            j,
            n_points: n,
            phi,
            cos_tab,
            sin_tab,
        }
    }

    /// Deliberately invalid grid for negative-control testing: the |k| = 1
    /// node pair is displaced by `eps` and the tables are rebuilt from the
    /// displaced angle, so the evaluator is self-consistently wrong. The
    /// grid keeps its ± symmetry (the complex cross-check still cancels)
    /// but loses uniform spacing, which every summation identity detects.
    /// Nothing outside the verification paths constructs this.
    pub fn corrupted(j: u32, eps: f64) -> Self {
        assert!(j >= 1, "corrupted grid needs at least three nodes");
        let mut g = Self::new(j);
        let n = g.n_points;
        let two_pi = R::pi() * R::from_i64(2);
        let ang = two_pi / R::from_i64(n as i64) + R::from_f64(eps);
        g.cos_tab[1] = ang.cos();
        g.sin_tab[1] = ang.sin();
        g.cos_tab[n - 1] = g.cos_tab[1].clone();
        g.sin_tab[n - 1] = -g.sin_tab[1].clone();
        g.phi[j as usize + 1] = ang.clone();
        g.phi[j as usize - 1] = -ang;
        g
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// All N angles in node order k = −j..j.
    pub fn phi(&self) -> &[R] {
        &self.phi
    }

    /// sin φ_k for any node index k ∈ [−j, j]; the k < 0 value is the
    /// exact negation of the k > 0 value.
    pub(crate) fn sin_phi(&self, k: i64) -> R {
        debug_assert!(k.unsigned_abs() <= self.j as u64);
        if k < 0 {
            -self.sin_tab[(-k) as usize].clone()
        } else {
            self.sin_tab[k as usize].clone()
        }
    }

    /// sin φ_k for k ∈ [0, j], borrowed from the table.
    pub(crate) fn sin_phi_nonneg(&self, k: usize) -> &R {
        &self.sin_tab[k]
    }

    /// cos(2πr/N) with r already reduced to [0, N).
    pub(crate) fn cos_order(&self, r: usize) -> &R {
        &self.cos_tab[r]
    }

    /// sin(2πr/N) with r already reduced to [0, N).
    pub(crate) fn sin_order(&self, r: usize) -> &R {
        &self.sin_tab[r]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_grid() {
        let g = make_grid(0);
        assert_eq!(g.n_points(), 1);
        assert_eq!(g.phi(), &[0.0]);
    }

    #[test]
    fn three_point_grid() {
        let g = make_grid(1);
        let third = 2.0 * std::f64::consts::PI / 3.0;
        assert_eq!(g.n_points(), 3);
        assert_eq!(g.phi()[1], 0.0);
        assert!((g.phi()[2] - third).abs() < 1e-15);
        assert_eq!(g.phi()[0], -g.phi()[2]);
    }

    #[test]
    fn spacing_is_uniform() {
        let g = make_grid(10);
        let h = 2.0 * std::f64::consts::PI / 21.0;
        assert!((h - 0.299_199_3).abs() < 1e-7);
        for w in g.phi().windows(2) {
            assert!((w[1] - w[0] - h).abs() < 4.0 * f64::EPSILON * 21.0);
        }
    }

    #[test]
    fn grid_is_symmetric_about_zero() {
        let g = make_grid(7);
        let n = g.n_points();
        for i in 0..n {
            assert_eq!(g.phi()[i], -g.phi()[n - 1 - i]);
        }
    }

    #[test]
    fn tables_mirror_exactly() {
        let g = make_grid(13);
        let n = g.n_points();
        for r in 1..n {
            assert_eq!(g.cos_order(r), g.cos_order(n - r));
            assert_eq!(*g.sin_order(r), -g.sin_order(n - r).clone());
        }
        assert_eq!(*g.cos_order(0), 1.0);
        assert_eq!(*g.sin_order(0), 0.0);
    }

    #[test]
    fn sin_phi_signs() {
        let g = make_grid(4);
        for k in 1..=4i64 {
            assert_eq!(g.sin_phi(-k), -g.sin_phi(k));
        }
        assert_eq!(g.sin_phi(0), 0.0);
    }

    #[test]
    fn corrupted_grid_differs_but_stays_symmetric() {
        let g = CircleGrid::<f64>::corrupted(5, 1e-7);
        let clean = make_grid(5);
        assert_ne!(g.cos_order(1), clean.cos_order(1));
        let n = g.n_points();
        assert_eq!(g.cos_order(1), g.cos_order(n - 1));
        assert_eq!(*g.sin_order(1), -g.sin_order(n - 1).clone());
        assert_eq!(g.phi()[4], -g.phi()[6]);
    }
}
