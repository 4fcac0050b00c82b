//! System descriptions and the effective-parameter substitution that turns
//! the Klein-Gordon problem with equal scalar and vector potentials into a
//! Schrödinger-like one: `m_eff = (eps + m) / 2`, `E_eff = eps - m`, and for
//! oscillators `omega_eff = sqrt(m w^2 / m_eff)`.

use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Geometry {
    Flat,
    /// Positive curvature; the flat case is the `curvature -> 0` limit.
    Sphere {
        curvature: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Potential {
    /// Attractive `V(r) = -k / r`, `k > 0`.
    Coulomb { strength: f64 },
    /// `V(r) = m w^2 r^2 / 2`, `w > 0`.
    Oscillator { frequency: f64 },
}

/// The four closed-algebra families the toolkit knows how to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SystemClass {
    PlaneCoulomb,
    PlaneOscillator,
    SphereCoulomb,
    SphereOscillator,
}

impl SystemClass {
    pub const ALL: [SystemClass; 4] = [
        SystemClass::PlaneCoulomb,
        SystemClass::PlaneOscillator,
        SystemClass::SphereCoulomb,
        SystemClass::SphereOscillator,
    ];

    pub fn token(self) -> &'static str {
        match self {
            SystemClass::PlaneCoulomb => "plane-coulomb",
            SystemClass::PlaneOscillator => "plane-oscillator",
            SystemClass::SphereCoulomb => "sphere-coulomb",
            SystemClass::SphereOscillator => "sphere-oscillator",
        }
    }

    pub fn from_token(s: &str) -> Option<SystemClass> {
        SystemClass::ALL.into_iter().find(|c| c.token() == s)
    }

    pub fn is_flat(self) -> bool {
        matches!(
            self,
            SystemClass::PlaneCoulomb | SystemClass::PlaneOscillator
        )
    }

    pub fn is_coulomb(self) -> bool {
        matches!(self, SystemClass::PlaneCoulomb | SystemClass::SphereCoulomb)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("mass must be positive, got {0}")]
    BadMass(f64),
    #[error("Coulomb strength must be positive, got {0}")]
    BadCoulombStrength(f64),
    #[error("oscillator frequency must be positive, got {0}")]
    BadFrequency(f64),
    #[error("sphere curvature must be positive, got {0}")]
    BadCurvature(f64),
    #[error("energy {epsilon} not above -m = {neg_m}; effective mass would not be positive")]
    EpsilonNotAboveNegMass { epsilon: f64, neg_m: f64 },
}

/// A concrete physical system: geometry, potential family, particle mass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SystemSpec {
    geometry: Geometry,
    potential: Potential,
    mass: f64,
}

impl SystemSpec {
    pub fn new(geometry: Geometry, potential: Potential, mass: f64) -> Result<Self, ModelError> {
        if mass <= 0.0 || !mass.is_finite() {
            return Err(ModelError::BadMass(mass));
        }
        match potential {
            Potential::Coulomb { strength } if strength <= 0.0 || !strength.is_finite() => {
                return Err(ModelError::BadCoulombStrength(strength));
            }
            Potential::Oscillator { frequency } if frequency <= 0.0 || !frequency.is_finite() => {
                return Err(ModelError::BadFrequency(frequency));
            }
            _ => {}
        }
        if let Geometry::Sphere { curvature } = geometry {
            if curvature <= 0.0 || !curvature.is_finite() {
                return Err(ModelError::BadCurvature(curvature));
            }
        }
        Ok(SystemSpec {
            geometry,
            potential,
            mass,
        })
    }

    pub fn flat_coulomb(strength: f64, mass: f64) -> Result<Self, ModelError> {
        SystemSpec::new(Geometry::Flat, Potential::Coulomb { strength }, mass)
    }

    pub fn flat_oscillator(frequency: f64, mass: f64) -> Result<Self, ModelError> {
        SystemSpec::new(Geometry::Flat, Potential::Oscillator { frequency }, mass)
    }

    pub fn sphere_coulomb(curvature: f64, strength: f64, mass: f64) -> Result<Self, ModelError> {
        SystemSpec::new(
            Geometry::Sphere { curvature },
            Potential::Coulomb { strength },
            mass,
        )
    }

    pub fn sphere_oscillator(
        curvature: f64,
        frequency: f64,
        mass: f64,
    ) -> Result<Self, ModelError> {
        SystemSpec::new(
            Geometry::Sphere { curvature },
            Potential::Oscillator { frequency },
            mass,
        )
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn potential(&self) -> Potential {
        self.potential
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn curvature(&self) -> Option<f64> {
        match self.geometry {
            Geometry::Flat => None,
            Geometry::Sphere { curvature } => Some(curvature),
        }
    }

    pub fn class(&self) -> SystemClass {
        match (self.geometry, self.potential) {
            (Geometry::Flat, Potential::Coulomb { .. }) => SystemClass::PlaneCoulomb,
            (Geometry::Flat, Potential::Oscillator { .. }) => SystemClass::PlaneOscillator,
            (Geometry::Sphere { .. }, Potential::Coulomb { .. }) => SystemClass::SphereCoulomb,
            (Geometry::Sphere { .. }, Potential::Oscillator { .. }) => {
                SystemClass::SphereOscillator
            }
        }
    }
}

/// The substitution output: everything downstream solvers need.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EffectiveParams {
    /// `(eps + m) / 2`, positive on the admitted branch.
    pub m_eff: f64,
    /// `eps - m`.
    pub e_eff: f64,
    /// `sqrt(m w^2 / m_eff)`; only for oscillator systems.
    pub omega_eff: Option<f64>,
}

/// Map a relativistic energy to the effective Schrödinger parameters.
/// Rejects `epsilon <= -m`: only the branch with positive effective mass is
/// meaningful to the solvers.
pub fn effective_params(epsilon: f64, spec: &SystemSpec) -> Result<EffectiveParams, ModelError> {
    let m = spec.mass();
    if epsilon <= -m || epsilon.is_nan() {
        return Err(ModelError::EpsilonNotAboveNegMass { epsilon, neg_m: -m });
    }
    let m_eff = 0.5 * (epsilon + m);
    let omega_eff = match spec.potential() {
        Potential::Oscillator { frequency } => Some((m * frequency * frequency / m_eff).sqrt()),
        Potential::Coulomb { .. } => None,
    };
    Ok(EffectiveParams {
        m_eff,
        e_eff: epsilon - m,
        omega_eff,
    })
}

/// Quantum numbers of the two families. `n` is the principal label used in
/// the spectrum formulas: `n = 2j + 1` (odd) for Coulomb, `n = 2s` for the
/// oscillator with `s` half-integer (stored doubled).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuantumNumbers {
    CoulombJ { j: u32 },
    OscillatorS { twice_s: u32 },
}

impl QuantumNumbers {
    pub fn n(&self) -> u32 {
        match self {
            QuantumNumbers::CoulombJ { j } => 2 * j + 1,
            QuantumNumbers::OscillatorS { twice_s } => *twice_s,
        }
    }

    /// Multiplet dimension: `2j + 1` (Coulomb) or `2s + 1 = n + 1`
    /// (oscillator).
    pub fn degeneracy(&self) -> u32 {
        match self {
            QuantumNumbers::CoulombJ { j } => 2 * j + 1,
            QuantumNumbers::OscillatorS { twice_s } => twice_s + 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            QuantumNumbers::CoulombJ { j } => format!("j={j}"),
            QuantumNumbers::OscillatorS { twice_s } => {
                if twice_s % 2 == 0 {
                    format!("s={}", twice_s / 2)
                } else {
                    format!("s={twice_s}/2")
                }
            }
        }
    }
}

/// One spectrum row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumLine {
    pub qn: QuantumNumbers,
    pub degeneracy: u32,
    /// Relativistic energy.
    pub epsilon: f64,
    /// Effective energy `epsilon - m`.
    pub e_eff: f64,
    /// Absolute value of the defining equation at the returned root.
    pub residual: f64,
    /// Set when the root is algebraically valid but physically dubious
    /// (`epsilon <= 0`, strong-coupling Coulomb collapse).
    pub suspect: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rest_energy_maps_to_zero() {
        let spec = SystemSpec::flat_coulomb(0.5, 1.0).unwrap();
        let ep = effective_params(1.0, &spec).unwrap();
        assert_eq!(ep.m_eff, 1.0);
        assert_eq!(ep.e_eff, 0.0);
        assert!(ep.omega_eff.is_none());
    }

    #[test]
    fn coulomb_ground_state_params() {
        let spec = SystemSpec::flat_coulomb(0.5, 1.0).unwrap();
        let ep = effective_params(0.6, &spec).unwrap();
        assert!((ep.m_eff - 0.8).abs() < 1e-15);
        assert!((ep.e_eff + 0.4).abs() < 1e-15);
    }

    #[test]
    fn oscillator_effective_frequency() {
        let spec = SystemSpec::flat_oscillator(1.0, 1.0).unwrap();
        let ep = effective_params(1.8389, &spec).unwrap();
        assert!((ep.m_eff - 1.41945).abs() < 1e-12);
        let wt = ep.omega_eff.unwrap();
        assert!((wt - (1.0f64 / 1.41945).sqrt()).abs() < 1e-12);
        assert!((wt - 0.839).abs() < 1e-3);
    }

    #[test]
    fn round_trip_energy() {
        let spec = SystemSpec::flat_oscillator(2.0, 1.5).unwrap();
        for eps in [-1.2, 0.0, 0.4, 3.7] {
            let ep = effective_params(eps, &spec).unwrap();
            assert!((ep.e_eff + spec.mass() - eps).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_epsilon_at_or_below_neg_mass() {
        let spec = SystemSpec::flat_coulomb(0.5, 1.0).unwrap();
        assert!(matches!(
            effective_params(-1.0, &spec),
            Err(ModelError::EpsilonNotAboveNegMass { .. })
        ));
        assert!(effective_params(-1.5, &spec).is_err());
        assert!(effective_params(-0.999, &spec).is_ok());
    }

    #[test]
    fn nonrelativistic_limit_of_params() {
        let m = 1.0e6;
        let spec = SystemSpec::flat_oscillator(1.0, m).unwrap();
        for de in [-1.0, -0.3, 0.5, 1.0] {
            let ep = effective_params(m + de, &spec).unwrap();
            assert!((ep.m_eff / m - 1.0).abs() < 1e-5);
            assert!((ep.omega_eff.unwrap() / 1.0 - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn constructor_guards() {
        assert!(SystemSpec::flat_coulomb(0.0, 1.0).is_err());
        assert!(SystemSpec::flat_coulomb(-0.5, 1.0).is_err());
        assert!(SystemSpec::flat_oscillator(0.0, 1.0).is_err());
        assert!(SystemSpec::flat_coulomb(0.5, 0.0).is_err());
        assert!(SystemSpec::sphere_coulomb(0.0, 0.5, 1.0).is_err());
        assert!(SystemSpec::sphere_coulomb(0.1, 0.5, 1.0).is_ok());
    }

    #[test]
    fn quantum_number_labels() {
        let qn = QuantumNumbers::CoulombJ { j: 2 };
        assert_eq!(qn.n(), 5);
        assert_eq!(qn.degeneracy(), 5);
        let half = QuantumNumbers::OscillatorS { twice_s: 3 };
        assert_eq!(half.n(), 3);
        assert_eq!(half.degeneracy(), 4);
        assert_eq!(half.label(), "s=3/2");
        assert_eq!(QuantumNumbers::OscillatorS { twice_s: 4 }.label(), "s=2");
    }

    #[test]
    fn class_mapping() {
        assert_eq!(
            SystemSpec::flat_coulomb(1.0, 1.0).unwrap().class(),
            SystemClass::PlaneCoulomb
        );
        assert_eq!(
            SystemSpec::sphere_oscillator(0.1, 1.0, 1.0)
                .unwrap()
                .class(),
            SystemClass::SphereOscillator
        );
        assert_eq!(
            SystemClass::from_token("sphere-coulomb"),
            Some(SystemClass::SphereCoulomb)
        );
        assert_eq!(SystemClass::from_token("bogus"), None);
    }
}
