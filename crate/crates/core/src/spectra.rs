//! Relativistic level energies.
//!
//! Each system's spectrum is defined implicitly: the energy `eps` must solve
//! `eps - m = E_nr(eps)` where `E_nr` is the effective nonrelativistic level
//! at effective mass `(eps + m)/2` (and, for oscillators, effective
//! frequency `sqrt(2 m w^2 / (eps + m))`). All four defining functions are
//! strictly increasing in `eps` on the admitted branch `eps > -m`, so a sign
//! scan plus safeguarded bisection finds the unique root.

use crate::model::{
    effective_params, Potential, QuantumNumbers, SpectrumLine, SystemClass, SystemSpec,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error("no sign change between {lo} and {hi}")]
    NoBracket { lo: f64, hi: f64 },
    #[error("root polish stalled; best residual {residual}")]
    NoConvergence { residual: f64 },
    #[error("quantum numbers {qn:?} do not belong to the {class:?} family")]
    WrongFamily {
        qn: QuantumNumbers,
        class: SystemClass,
    },
}

/// An interval with a sign change of the target function, plus the stopping
/// rule for the search inside it.
#[derive(Clone, Copy, Debug)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    /// Relative width at which the search stops.
    pub tolerance: f64,
    pub max_iter: usize,
}

impl RootBracket {
    /// Machine-precision defaults.
    pub fn new(lo: f64, hi: f64) -> RootBracket {
        RootBracket {
            lo,
            hi,
            tolerance: 4.0 * f64::EPSILON,
            max_iter: 400,
        }
    }
}

/// Find the root inside a bracket: bisection interleaved with secant steps,
/// the secant proposal accepted only when it stays inside the current
/// interval (so an escaping polish step falls back to plain bisection).
pub fn bracketed_root<F>(f: F, bracket: RootBracket) -> Result<f64, SpectraError>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(SpectraError::NoBracket { lo: a, hi: b });
    }
    let mut take_secant = false;
    for _ in 0..bracket.max_iter {
        let mid = 0.5 * (a + b);
        let mut x = mid;
        if take_secant && fb != fa {
            let s = b - fb * (b - a) / (fb - fa);
            if s > a && s < b {
                x = s;
            }
        }
        take_secant = !take_secant;
        let fx = f(x);
        if fx == 0.0 || (b - a) <= bracket.tolerance * x.abs().max(1.0) {
            return Ok(x);
        }
        if fa.signum() * fx.signum() < 0.0 {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
    }
    Ok(0.5 * (a + b))
}

/// Expand upward from `lo` until the function changes sign; each doubling
/// step is subdivided so a narrow crossing is not stepped over.
fn scan_bracket<F>(f: &F, lo: f64, scale: f64) -> Result<RootBracket, SpectraError>
where
    F: Fn(f64) -> f64,
{
    let mut a = lo;
    let mut fa = f(a);
    if fa == 0.0 {
        return Ok(RootBracket::new(a, a));
    }
    let mut step = scale.max(1e-9) / 8.0;
    let mut hi = lo;
    for _ in 0..70 {
        for _ in 0..8 {
            let b = hi + step;
            let fb = f(b);
            if fb == 0.0 || fa.signum() != fb.signum() {
                return Ok(RootBracket::new(a, b));
            }
            a = b;
            fa = fb;
            hi = b;
        }
        step *= 2.0;
    }
    Err(SpectraError::NoBracket { lo, hi })
}

/// `eps - m - E_nr(eps)` for the defining equation of a level. Zero at the
/// physical energy.
fn defining_residual(spec: &SystemSpec, qn: QuantumNumbers, eps: f64) -> f64 {
    let m = spec.mass();
    let u = eps + m;
    let n = qn.n() as f64;
    let lam = spec.curvature().unwrap_or(0.0);
    match spec.potential() {
        Potential::Coulomb { strength } => {
            let j = match qn {
                QuantumNumbers::CoulombJ { j } => j as f64,
                QuantumNumbers::OscillatorS { .. } => unreachable!("family checked by caller"),
            };
            (eps - m) + strength * strength * u / (n * n) - lam * j * (j + 1.0) / u
        }
        Potential::Oscillator { frequency } => {
            let c = 2.0 * m * frequency * frequency;
            (eps - m)
                - lam * (n + 1.0) * (n + 1.0) / u
                - (n + 1.0) * (c / u + lam * lam / (u * u)).sqrt()
        }
    }
}

fn family_matches(spec: &SystemSpec, qn: QuantumNumbers) -> bool {
    matches!(
        (spec.potential(), qn),
        (Potential::Coulomb { .. }, QuantumNumbers::CoulombJ { .. })
            | (
                Potential::Oscillator { .. },
                QuantumNumbers::OscillatorS { .. }
            )
    )
}

/// Solve the defining equation of one level. The returned line carries the
/// absolute residual of the defining equation at the root and flags
/// `eps <= 0` as suspect: the branch below zero satisfies the same algebra
/// but sits outside the regime where the effective problem is trustworthy.
pub fn level_energy(spec: &SystemSpec, qn: QuantumNumbers) -> Result<SpectrumLine, SpectraError> {
    if !family_matches(spec, qn) {
        return Err(SpectraError::WrongFamily {
            qn,
            class: spec.class(),
        });
    }
    let m = spec.mass();
    let f = |eps: f64| defining_residual(spec, qn, eps);
    let lo = -m + 1e-12 * m.max(1.0);
    let bracket = scan_bracket(&f, lo, m.max(1.0))?;
    let eps = bracketed_root(f, bracket)?;
    let residual = f(eps).abs();
    let ep = effective_params(eps, spec).expect("root lies above -m by construction");
    Ok(SpectrumLine {
        qn,
        degeneracy: qn.degeneracy(),
        epsilon: eps,
        e_eff: ep.e_eff,
        residual,
        suspect: eps <= 0.0,
    })
}

/// The first `count` levels of a system, ordered by the principal label.
pub fn levels(spec: &SystemSpec, count: u32) -> Result<Vec<SpectrumLine>, SpectraError> {
    (0..count)
        .map(|i| {
            let qn = match spec.potential() {
                Potential::Coulomb { .. } => QuantumNumbers::CoulombJ { j: i },
                Potential::Oscillator { .. } => QuantumNumbers::OscillatorS { twice_s: i },
            };
            level_energy(spec, qn)
        })
        .collect()
}

/// Output of the uniform relativistic map.
#[derive(Clone, Copy, Debug)]
pub struct MapPoint {
    pub epsilon: f64,
    pub e_eff: f64,
    pub residual: f64,
}

/// Turn any nonrelativistic level function `(mass, qn) -> E_nr` into the
/// relativistic energy: solve `eps - m = E_nr((eps + m)/2, qn)` by expanding
/// scan from just above `-m`, then safeguarded bisection.
pub fn uniform_map<F>(
    nonrel_spectrum: F,
    mass: f64,
    qn: QuantumNumbers,
) -> Result<MapPoint, SpectraError>
where
    F: Fn(f64, QuantumNumbers) -> f64,
{
    let f = |eps: f64| (eps - mass) - nonrel_spectrum(0.5 * (eps + mass), qn);
    let lo = -mass + 1e-12 * mass.max(1.0);
    let bracket = scan_bracket(&f, lo, mass.max(1.0))?;
    let eps = bracketed_root(f, bracket)?;
    Ok(MapPoint {
        epsilon: eps,
        e_eff: eps - mass,
        residual: f(eps).abs(),
    })
}

/// Nonrelativistic level functions of the four systems, in the form the
/// uniform map consumes. The oscillator entries take the invariant strength
/// `c = m w^2`, which does not change under the effective-mass substitution.
pub mod catalog {
    use crate::model::QuantumNumbers;

    fn j_of(qn: QuantumNumbers) -> f64 {
        (qn.n() as f64 - 1.0) / 2.0
    }

    /// `-2 k^2 mass / n^2`.
    pub fn plane_coulomb(strength: f64) -> impl Fn(f64, QuantumNumbers) -> f64 {
        move |mass, qn| {
            let n = qn.n() as f64;
            -2.0 * strength * strength * mass / (n * n)
        }
    }

    /// `(n + 1) sqrt(c / mass)`.
    pub fn plane_oscillator(c: f64) -> impl Fn(f64, QuantumNumbers) -> f64 {
        move |mass, qn| (qn.n() as f64 + 1.0) * (c / mass).sqrt()
    }

    /// Plane Coulomb plus the curvature shift `lam j(j+1) / (2 mass)`.
    pub fn sphere_coulomb(strength: f64, curvature: f64) -> impl Fn(f64, QuantumNumbers) -> f64 {
        move |mass, qn| {
            let n = qn.n() as f64;
            let j = j_of(qn);
            -2.0 * strength * strength * mass / (n * n) + curvature * j * (j + 1.0) / (2.0 * mass)
        }
    }

    /// `lam (n+1)^2 / (2 mass) + (n+1) sqrt(c / mass + lam^2 / (4 mass^2))`.
    pub fn sphere_oscillator(c: f64, curvature: f64) -> impl Fn(f64, QuantumNumbers) -> f64 {
        move |mass, qn| {
            let np1 = qn.n() as f64 + 1.0;
            curvature * np1 * np1 / (2.0 * mass)
                + np1 * (c / mass + curvature * curvature / (4.0 * mass * mass)).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coulomb_line(spec: &SystemSpec, j: u32) -> SpectrumLine {
        level_energy(spec, QuantumNumbers::CoulombJ { j }).unwrap()
    }

    fn osc_line(spec: &SystemSpec, twice_s: u32) -> SpectrumLine {
        level_energy(spec, QuantumNumbers::OscillatorS { twice_s }).unwrap()
    }

    #[test]
    fn bracketed_root_finds_sqrt2() {
        let r = bracketed_root(|x| x * x - 2.0, RootBracket::new(0.0, 2.0)).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        assert!(matches!(
            bracketed_root(|x| x * x - 2.0, RootBracket::new(3.0, 4.0)),
            Err(SpectraError::NoBracket { .. })
        ));
    }

    #[test]
    fn plane_coulomb_closed_form() {
        // eps = m (n^2 - k^2) / (n^2 + k^2)
        let spec = SystemSpec::flat_coulomb(0.5, 1.0).unwrap();
        for (j, want) in [(0u32, 0.6), (1, 8.75 / 9.25), (2, 24.75 / 25.25)] {
            let line = coulomb_line(&spec, j);
            assert!(
                (line.epsilon - want).abs() < 1e-13,
                "j={j}: {} vs {want}",
                line.epsilon
            );
            assert!(line.residual < 1e-12);
            assert!(!line.suspect);
        }
    }

    #[test]
    fn plane_oscillator_satisfies_cubic_and_is_unique() {
        let spec = SystemSpec::flat_oscillator(1.3, 1.0).unwrap();
        for n in 0..4u32 {
            let line = osc_line(&spec, n);
            let eps = line.epsilon;
            // (eps - m)^2 (eps + m) = 2 m w^2 (n+1)^2
            let lhs = (eps - 1.0) * (eps - 1.0) * (eps + 1.0);
            let rhs = 2.0 * 1.3 * 1.3 * ((n + 1) as f64) * ((n + 1) as f64);
            assert!((lhs - rhs).abs() < 1e-10 * rhs, "n={n}");
            // E = wt (n + 1) with the self-consistent effective frequency.
            let ep = effective_params(eps, &spec).unwrap();
            let wt = ep.omega_eff.unwrap();
            assert!((ep.e_eff - wt * (n as f64 + 1.0)).abs() < 1e-12 * wt);
            // One sign change on the admitted branch.
            let f =
                |e: f64| defining_residual(&spec, QuantumNumbers::OscillatorS { twice_s: n }, e);
            let mut changes = 0;
            let mut prev = f(-0.999);
            let mut e = -0.999 + 1e-3;
            while e < 60.0 {
                let cur = f(e);
                if prev.signum() != cur.signum() {
                    changes += 1;
                }
                prev = cur;
                e += 1e-3;
            }
            assert_eq!(changes, 1, "n={n}");
        }
    }

    #[test]
    fn sphere_coulomb_matches_quadratic_branch() {
        // u^2 (1 + k^2/n^2) - 2 m u - lam j(j+1) = 0, larger root, eps = u - m.
        let (m, k, lam) = (1.0, 1.0, 0.2);
        let spec = SystemSpec::sphere_coulomb(lam, k, m).unwrap();
        for j in 0..4u32 {
            let n = (2 * j + 1) as f64;
            let jj1 = j as f64 * (j as f64 + 1.0);
            let a = 1.0 + k * k / (n * n);
            let u = (m + (m * m + a * lam * jj1).sqrt()) / a;
            let line = coulomb_line(&spec, j);
            assert!((line.epsilon - (u - m)).abs() < 1e-12, "j={j}");
        }
    }

    #[test]
    fn sphere_reduces_to_plane_at_small_curvature() {
        let eps_flat = osc_line(&SystemSpec::flat_oscillator(1.5, 1.0).unwrap(), 2).epsilon;
        let eps_sph = osc_line(&SystemSpec::sphere_oscillator(1e-10, 1.5, 1.0).unwrap(), 2).epsilon;
        assert!((eps_flat - eps_sph).abs() < 1e-8);
        let ec_flat = coulomb_line(&SystemSpec::flat_coulomb(1.0, 1.0).unwrap(), 1).epsilon;
        let ec_sph = coulomb_line(&SystemSpec::sphere_coulomb(1e-10, 1.0, 1.0).unwrap(), 1).epsilon;
        assert!((ec_flat - ec_sph).abs() < 1e-8);
    }

    #[test]
    fn heavy_mass_recovers_schroedinger_levels() {
        let m = 1e6;
        // Oscillator: E -> w (n + 1).
        let spec = SystemSpec::flat_oscillator(1.0, m).unwrap();
        for n in 0..3u32 {
            let line = osc_line(&spec, n);
            let want = (n + 1) as f64;
            assert!(
                (line.e_eff / want - 1.0).abs() < 1e-5,
                "n={n}: {}",
                line.e_eff
            );
        }
        // Coulomb at weak coupling: E -> -2 m k^2 / n^2.
        let k = 1e-3;
        let spec = SystemSpec::flat_coulomb(k, m).unwrap();
        for j in 0..3u32 {
            let n = (2 * j + 1) as f64;
            let line = coulomb_line(&spec, j);
            let want = -2.0 * m * k * k / (n * n);
            assert!((line.e_eff / want - 1.0).abs() < 1e-5, "j={j}");
        }
    }

    #[test]
    fn strong_coupling_branch_is_flagged_suspect() {
        // k > n drives the ground level below zero; it still solves the
        // defining equation but is marked.
        let spec = SystemSpec::flat_coulomb(2.0, 1.0).unwrap();
        let line = coulomb_line(&spec, 0);
        assert!((line.epsilon - (1.0 - 4.0) / (1.0 + 4.0)).abs() < 1e-13);
        assert!(line.suspect);
        assert!(!coulomb_line(&spec, 1).suspect);
    }

    #[test]
    fn uniform_map_agrees_with_level_energy() {
        let m = 1.0;
        type LevelFn = Box<dyn Fn(f64, QuantumNumbers) -> f64>;
        let cases: Vec<(SystemSpec, QuantumNumbers, LevelFn)> = vec![
            (
                SystemSpec::flat_coulomb(0.9, m).unwrap(),
                QuantumNumbers::CoulombJ { j: 1 },
                Box::new(catalog::plane_coulomb(0.9)),
            ),
            (
                SystemSpec::flat_oscillator(1.3, m).unwrap(),
                QuantumNumbers::OscillatorS { twice_s: 2 },
                Box::new(catalog::plane_oscillator(m * 1.3 * 1.3)),
            ),
            (
                SystemSpec::sphere_coulomb(0.2, 1.0, m).unwrap(),
                QuantumNumbers::CoulombJ { j: 2 },
                Box::new(catalog::sphere_coulomb(1.0, 0.2)),
            ),
            (
                SystemSpec::sphere_oscillator(0.3, 1.5, m).unwrap(),
                QuantumNumbers::OscillatorS { twice_s: 3 },
                Box::new(catalog::sphere_oscillator(m * 1.5 * 1.5, 0.3)),
            ),
        ];
        for (spec, qn, f) in cases {
            let line = level_energy(&spec, qn).unwrap();
            let mapped = uniform_map(f, m, qn).unwrap();
            assert!(
                (line.epsilon - mapped.epsilon).abs() < 1e-10,
                "{:?}: {} vs {}",
                spec.class(),
                line.epsilon,
                mapped.epsilon
            );
            assert!(mapped.residual < 1e-10);
        }
    }

    #[test]
    fn vanishing_interaction_maps_to_rest_energy() {
        let mapped = uniform_map(|_, _| 0.0, 2.5, QuantumNumbers::CoulombJ { j: 0 }).unwrap();
        assert!((mapped.epsilon - 2.5).abs() < 1e-12);
    }

    #[test]
    fn coulomb_defining_equation_holds_tightly() {
        // E = -2 k^2 m_eff / n^2 at the returned root, to 1e-12 relative.
        let spec = SystemSpec::flat_coulomb(0.7, 1.0).unwrap();
        for j in 0..4u32 {
            let line = coulomb_line(&spec, j);
            let ep = effective_params(line.epsilon, &spec).unwrap();
            let n = (2 * j + 1) as f64;
            let want = -2.0 * 0.7 * 0.7 * ep.m_eff / (n * n);
            assert!((ep.e_eff - want).abs() <= 1e-12 * want.abs(), "j={j}");
        }
    }

    #[test]
    fn sphere_coulomb_monotone_in_curvature() {
        // The lam j(j+1)/(eps+m) term is positive for j >= 1, so the level
        // rises with curvature.
        for j in 1..3u32 {
            let mut prev = f64::NEG_INFINITY;
            for lam in [0.05, 0.1, 0.2, 0.4, 0.8] {
                let spec = SystemSpec::sphere_coulomb(lam, 1.0, 1.0).unwrap();
                let eps = coulomb_line(&spec, j).epsilon;
                assert!(eps > prev, "j={j}, lam={lam}");
                prev = eps;
            }
        }
    }

    #[test]
    fn wrong_family_is_rejected() {
        let spec = SystemSpec::flat_coulomb(1.0, 1.0).unwrap();
        assert!(matches!(
            level_energy(&spec, QuantumNumbers::OscillatorS { twice_s: 0 }),
            Err(SpectraError::WrongFamily { .. })
        ));
    }

    #[test]
    fn levels_are_ordered_and_complete() {
        let spec = SystemSpec::flat_coulomb(0.5, 1.0).unwrap();
        let ls = levels(&spec, 5).unwrap();
        assert_eq!(ls.len(), 5);
        for w in ls.windows(2) {
            assert!(w[0].epsilon < w[1].epsilon);
        }
        assert_eq!(ls[3].degeneracy, 7);
    }
}
