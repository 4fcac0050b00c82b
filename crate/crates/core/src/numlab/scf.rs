//! Self-consistent relativistic spectrum from the radial oracle.
//!
//! The effective mass depends on the energy being solved for, so the radial
//! eigenvalue problem is iterated: start from the nonrelativistic estimate,
//! solve at the current effective mass, feed `eps = E + m` back. The map is
//! a contraction at moderate coupling; a half-step damping engages when the
//! update direction alternates. This never consults the analytic spectrum
//! formulas, which is what makes the agreement check meaningful.

use super::radial1d::{radial_eigenlevels_refined, RadialProblem};
use super::NumlabError;
use crate::model::{Potential, QuantumNumbers, SpectrumLine, SystemSpec};
use crate::spectra::catalog;

const MAX_ITER: usize = 200;
const TOL: f64 = 1e-10;
const GRID_POINTS: usize = 4000;

/// Solve one flat-geometry level self-consistently. `l` is the angular
/// quantum number, `radial_index` counts nodes of the radial factor.
pub fn self_consistent_spectrum(
    spec: &SystemSpec,
    l: i32,
    radial_index: usize,
) -> Result<SpectrumLine, NumlabError> {
    if spec.curvature().is_some() {
        return Err(NumlabError::FlatOnly);
    }
    let m = spec.mass();
    let l_abs = l.unsigned_abs();
    let (qn, start): (QuantumNumbers, f64) = match spec.potential() {
        Potential::Coulomb { strength } => {
            let qn = QuantumNumbers::CoulombJ {
                j: radial_index as u32 + l_abs,
            };
            (qn, catalog::plane_coulomb(strength)(m, qn))
        }
        Potential::Oscillator { frequency } => {
            let qn = QuantumNumbers::OscillatorS {
                twice_s: 2 * radial_index as u32 + l_abs,
            };
            (
                qn,
                catalog::plane_oscillator(m * frequency * frequency)(m, qn),
            )
        }
    };
    // Nonrelativistic start; clamp onto the admitted branch for strong
    // coupling, where the estimate can undershoot -m.
    let mut eps = (m + start).max(-0.95 * m);
    let mut prev_delta = 0.0f64;
    for _ in 0..MAX_ITER {
        let m_eff = 0.5 * (eps + m);
        let problem = match spec.potential() {
            Potential::Coulomb { strength } => {
                let k = strength;
                RadialProblem::new(m_eff, l, 60.0 / (m_eff * k), GRID_POINTS, move |r| -k / r)
            }
            Potential::Oscillator { frequency } => {
                let c = m * frequency * frequency;
                let w_eff = (c / m_eff).sqrt();
                RadialProblem::new(
                    m_eff,
                    l,
                    12.0 / (m_eff * w_eff).sqrt(),
                    GRID_POINTS,
                    move |r| 0.5 * c * r * r,
                )
            }
        };
        let levels = radial_eigenlevels_refined(&problem, radial_index + 1)?;
        let target = m + levels[radial_index];
        let delta = target - eps;
        if delta.abs() < TOL {
            return Ok(SpectrumLine {
                qn,
                degeneracy: qn.degeneracy(),
                epsilon: target,
                e_eff: target - m,
                residual: delta.abs(),
                suspect: target <= 0.0,
            });
        }
        eps = if delta * prev_delta < 0.0 {
            // Oscillating: half step.
            eps + 0.5 * delta
        } else {
            target
        };
        eps = eps.max(-0.95 * m);
        prev_delta = delta;
    }
    Err(NumlabError::ScfStalled {
        iterations: MAX_ITER,
        delta: prev_delta.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::level_energy;

    #[test]
    fn coulomb_ground_matches_closed_form() {
        let spec = SystemSpec::flat_coulomb(0.5, 1.0).unwrap();
        let line = self_consistent_spectrum(&spec, 0, 0).unwrap();
        assert!((line.epsilon - 0.6).abs() < 1e-6, "got {}", line.epsilon);
        assert_eq!(line.degeneracy, 1);
        assert!(!line.suspect);
    }

    #[test]
    fn oscillator_ground_matches_cubic_root() {
        let spec = SystemSpec::flat_oscillator(1.0, 1.0).unwrap();
        let line = self_consistent_spectrum(&spec, 0, 0).unwrap();
        let analytic = level_energy(&spec, QuantumNumbers::OscillatorS { twice_s: 0 }).unwrap();
        // Root of (eps-1)^2 (eps+1) = 2, i.e. eps^3 = eps^2 + eps + 1.
        let cubic_root = 1.839_286_755_214_161_2;
        assert!(
            (line.epsilon - cubic_root).abs() < 1e-6,
            "got {}",
            line.epsilon
        );
        assert!((line.epsilon - analytic.epsilon).abs() < 1e-4 * analytic.epsilon);
    }

    #[test]
    fn stronger_coupling_still_matches_analytic() {
        let spec = SystemSpec::flat_coulomb(0.9, 1.0).unwrap();
        for (l, ri, j) in [(0i32, 1usize, 1u32), (1, 0, 1), (-1, 0, 1)] {
            let line = self_consistent_spectrum(&spec, l, ri).unwrap();
            let analytic = level_energy(&spec, QuantumNumbers::CoulombJ { j }).unwrap();
            let rel = ((line.epsilon - analytic.epsilon) / analytic.epsilon).abs();
            assert!(
                rel < 1e-6,
                "(l={l}, nr={ri}): {} vs {}",
                line.epsilon,
                analytic.epsilon
            );
        }
    }

    #[test]
    fn oscillator_multiplet_realizations_agree() {
        // n = 2 as (l, n_r) = (0, 1), (2, 0), (-2, 0).
        let spec = SystemSpec::flat_oscillator(1.0, 1.0).unwrap();
        let a = self_consistent_spectrum(&spec, 0, 1).unwrap().epsilon;
        let b = self_consistent_spectrum(&spec, 2, 0).unwrap().epsilon;
        let c = self_consistent_spectrum(&spec, -2, 0).unwrap().epsilon;
        assert!((a - b).abs() < 1e-6 * a);
        assert!((b - c).abs() < 1e-6 * b);
    }

    #[test]
    fn sphere_is_refused() {
        let spec = SystemSpec::sphere_coulomb(0.2, 1.0, 1.0).unwrap();
        assert!(matches!(
            self_consistent_spectrum(&spec, 0, 0),
            Err(NumlabError::FlatOnly)
        ));
    }
}
