//! Symmetry algebra and spectra of the 2D Klein-Gordon equation with equal
//! scalar and vector potentials, on the plane and on the sphere.
//!
//! The crate has four layers:
//!
//! * [`model`]: system descriptions and the reduction to an effective
//!   Schrödinger problem (effective mass and frequency).
//! * [`opalg`]: an exact operator algebra over positions, momenta and the
//!   radius `r = sqrt(x1^2 + x2^2)`, with rational-function coefficients in
//!   the model parameters. Generators, commutators, adjoints and the
//!   identity suite live here.
//! * [`spectra`]: closed-form and root-found energy levels for the four
//!   systems, plus the map from nonrelativistic spectra to relativistic ones.
//! * [`numlab`]: floating-point cross-checks independent of the symbolic
//!   engine: finite-difference operators on 2D grids, a radial eigensolver,
//!   and a self-consistent solver for the energy-dependent effective problem.

pub mod model;
pub mod numlab;
pub mod opalg;
pub mod par;
pub mod spectra;
pub mod suite;
