//! Radial bound-state eigensolver.
//!
//! The polar-coordinate operator `-(1/r)(r psi')'/(2 m_eff) + l^2/(2 m_eff
//! r^2) + V(r)` is discretized in flux form on cells centered at `(i + 1/2)
//! h`: the face flux `r psi'` vanishes naturally at `r = 0` (no inner
//! boundary condition is imposed) and a Dirichlet wall sits at `r_max`.
//! Symmetrizing with `sqrt(r_i)` weights gives a symmetric tridiagonal
//! matrix whose eigenvalues come from Sturm-sequence bisection. The flux
//! form is used instead of the `sqrt(r)`-reduced second-derivative form
//! because the latter needs `u ~ sqrt(r)` behavior at the origin that a
//! Dirichlet cutoff misrepresents badly for `l = 0` states.

use super::NumlabError;

/// One effective radial eigenproblem. The potential is stored as a closure
/// so the solver can resample it on refined grids; [`potential_samples`]
/// exposes the cell-center values at the configured resolution.
///
/// [`potential_samples`]: RadialProblem::potential_samples
pub struct RadialProblem {
    pub m_eff: f64,
    /// Angular quantum number of the factor `e^{i l theta}`.
    pub l: i32,
    pub r_max: f64,
    pub m_points: usize,
    potential: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl RadialProblem {
    pub fn new(
        m_eff: f64,
        l: i32,
        r_max: f64,
        m_points: usize,
        potential: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> RadialProblem {
        RadialProblem {
            m_eff,
            l,
            r_max,
            m_points,
            potential: Box::new(potential),
        }
    }

    /// Cell centers at a given resolution.
    fn centers(&self, m: usize) -> impl Iterator<Item = f64> + '_ {
        let h = self.r_max / m as f64;
        (0..m).map(move |i| (i as f64 + 0.5) * h)
    }

    /// `V` at the cell centers of the configured grid.
    pub fn potential_samples(&self) -> Vec<f64> {
        self.centers(self.m_points)
            .map(|r| (self.potential)(r))
            .collect()
    }

    /// Symmetrized tridiagonal at resolution `m`: diagonal and subdiagonal.
    fn tridiagonal(&self, m: usize) -> (Vec<f64>, Vec<f64>) {
        let h = self.r_max / m as f64;
        let inv2m = 1.0 / (2.0 * self.m_eff);
        let l2 = (self.l as f64) * (self.l as f64);
        let mut diag = Vec::with_capacity(m);
        let mut off = Vec::with_capacity(m - 1);
        for i in 0..m {
            let r = (i as f64 + 0.5) * h;
            let r_lo = i as f64 * h;
            let r_hi = (i as f64 + 1.0) * h;
            diag.push(
                inv2m * (r_lo + r_hi) / (h * h * r) + inv2m * l2 / (r * r) + (self.potential)(r),
            );
            if i + 1 < m {
                let r_next = (i as f64 + 1.5) * h;
                off.push(-inv2m * r_hi / (h * h * (r * r_next).sqrt()));
            }
        }
        (diag, off)
    }
}

/// Eigenvalues of the symmetric tridiagonal `(diag, off)` strictly below
/// `x`, by the Sturm sequence of leading-minor pivots.
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut prev = 1.0f64;
    for i in 0..diag.len() {
        let sub = if i == 0 {
            0.0
        } else {
            off[i - 1] * off[i - 1] / prev
        };
        let mut val = diag[i] - x - sub;
        if val == 0.0 {
            val = -f64::MIN_POSITIVE;
        }
        if val < 0.0 {
            count += 1;
        }
        prev = val;
    }
    count
}

/// The `k`-th (0-based, ascending) eigenvalue by bisection between
/// Gershgorin bounds.
fn kth_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> f64 {
    let m = diag.len();
    let radius = |i: usize| {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < m { off[i].abs() } else { 0.0 };
        left + right
    };
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, &d) in diag.iter().enumerate() {
        lo = lo.min(d - radius(i));
        hi = hi.max(d + radius(i));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if count_below(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi.abs().max(lo.abs()).max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn levels_at(problem: &RadialProblem, m: usize, count: usize) -> Vec<f64> {
    let (diag, off) = problem.tridiagonal(m);
    (0..count).map(|k| kth_eigenvalue(&diag, &off, k)).collect()
}

/// Lowest `count` eigenvalues at the configured resolution (ascending).
pub fn radial_eigenlevels(problem: &RadialProblem, count: usize) -> Result<Vec<f64>, NumlabError> {
    if problem.m_points < 16 {
        return Err(NumlabError::EigenFailure(format!(
            "grid of {} cells is too coarse",
            problem.m_points
        )));
    }
    Ok(levels_at(problem, problem.m_points, count))
}

/// Richardson-extrapolated levels: combine the configured grid with one
/// refinement, `(4 E_2M - E_M) / 3`, cancelling the leading `h^2` error.
/// Errors out when the two grids disagree too much for the extrapolation to
/// be trusted, reporting the estimate.
pub fn radial_eigenlevels_refined(
    problem: &RadialProblem,
    count: usize,
) -> Result<Vec<f64>, NumlabError> {
    let coarse = radial_eigenlevels(problem, count)?;
    let fine = levels_at(problem, 2 * problem.m_points, count);
    let mut out = Vec::with_capacity(count);
    for (k, (e1, e2)) in coarse.iter().zip(&fine).enumerate() {
        let rich = (4.0 * e2 - e1) / 3.0;
        let drift = (e2 - e1).abs();
        if drift > 0.05 * rich.abs().max(1.0) {
            return Err(NumlabError::EigenFailure(format!(
                "level {k} not converged: {e1} vs {e2} on refined grid (Richardson estimate {rich})"
            )));
        }
        out.push(rich);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coulomb_problem(m_eff: f64, k: f64, l: i32) -> RadialProblem {
        let r_max = 60.0 / (m_eff * k);
        RadialProblem::new(m_eff, l, r_max, 4000, move |r| -k / r)
    }

    fn oscillator_problem(m_eff: f64, w_eff: f64, l: i32) -> RadialProblem {
        let r_max = 12.0 / (m_eff * w_eff).sqrt();
        let c = m_eff * w_eff * w_eff;
        RadialProblem::new(m_eff, l, r_max, 4000, move |r| 0.5 * c * r * r)
    }

    #[test]
    fn coulomb_ground_state() {
        // E = -2 k^2 m / n^2 with n = 2(n_r + |l|) + 1; ground n = 1: -2.
        let levels = radial_eigenlevels_refined(&coulomb_problem(1.0, 1.0, 0), 2).unwrap();
        assert!((levels[0] + 2.0).abs() < 1e-5, "ground {}", levels[0]);
        // First excited at l = 0: n = 3, E = -2/9.
        assert!(
            (levels[1] + 2.0 / 9.0).abs() < 1e-6,
            "excited {}",
            levels[1]
        );
    }

    #[test]
    fn coulomb_multiplet_degeneracy() {
        // n = 3 level reached as (l, n_r) = (0, 1), (1, 0), (-1, 0).
        let e_a = radial_eigenlevels_refined(&coulomb_problem(1.0, 1.0, 0), 2).unwrap()[1];
        let e_b = radial_eigenlevels_refined(&coulomb_problem(1.0, 1.0, 1), 1).unwrap()[0];
        let e_c = radial_eigenlevels_refined(&coulomb_problem(1.0, 1.0, -1), 1).unwrap()[0];
        assert!((e_a - e_b).abs() < 1e-5 * e_a.abs());
        assert_eq!(e_b, e_c, "opposite l signs give the same operator");
    }

    #[test]
    fn oscillator_ladder() {
        // E = (2 n_r + |l| + 1) w.
        let levels = radial_eigenlevels_refined(&oscillator_problem(1.0, 1.0, 0), 3).unwrap();
        for (i, want) in [1.0, 3.0, 5.0].iter().enumerate() {
            assert!((levels[i] - want).abs() < 1e-6, "level {i}: {}", levels[i]);
        }
        let l1 = radial_eigenlevels_refined(&oscillator_problem(1.0, 1.0, 1), 2).unwrap();
        assert!((l1[0] - 2.0).abs() < 1e-6);
        assert!((l1[1] - 4.0).abs() < 1e-6);
    }

    #[test]
    fn plain_levels_converge_second_order() {
        let p = RadialProblem::new(1.0, 0, 60.0, 500, |r| -1.0 / r);
        let e_coarse = radial_eigenlevels(&p, 1).unwrap()[0];
        let p2 = RadialProblem::new(1.0, 0, 60.0, 1000, |r| -1.0 / r);
        let e_fine = radial_eigenlevels(&p2, 1).unwrap()[0];
        let err_c = (e_coarse + 2.0).abs();
        let err_f = (e_fine + 2.0).abs();
        let ratio = err_c / err_f;
        assert!(
            (3.0..5.5).contains(&ratio),
            "expected ~4x error reduction, got {ratio} ({err_c} -> {err_f})"
        );
    }

    #[test]
    fn sturm_count_matches_brackets() {
        let p = oscillator_problem(1.0, 1.0, 0);
        let (d, e) = p.tridiagonal(1000);
        // Levels 1, 3, 5, ... so thresholds between them count exactly.
        assert_eq!(count_below(&d, &e, 0.0), 0);
        assert_eq!(count_below(&d, &e, 2.0), 1);
        assert_eq!(count_below(&d, &e, 4.0), 2);
        assert_eq!(count_below(&d, &e, 6.0), 3);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let p = RadialProblem::new(1.0, 0, 10.0, 8, |_| 0.0);
        assert!(matches!(
            radial_eigenlevels(&p, 1),
            Err(NumlabError::EigenFailure(_))
        ));
    }

    #[test]
    fn potential_samples_match_cells() {
        let p = RadialProblem::new(1.0, 0, 10.0, 20, |r| r * r);
        let samples = p.potential_samples();
        assert_eq!(samples.len(), 20);
        let h = 10.0 / 20.0;
        assert!((samples[0] - (0.5 * h) * (0.5 * h)).abs() < 1e-15);
        assert!((samples[19] - (19.5 * h) * (19.5 * h)).abs() < 1e-12);
    }
}
