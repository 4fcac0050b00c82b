//! Floating-point cross-checks, independent of the exact engine.
//!
//! Two oracles live here. The grid lab applies operators to wave packets by
//! finite differences and measures identity residuals in the L2 norm; it
//! never multiplies expressions symbolically, so it catches errors in the
//! canonicalizer as well as in the transcribed generators. The radial lab
//! discretizes the effective radial problem, extracts eigenvalues, and
//! closes the self-consistency loop in the energy-dependent mass.

pub mod grid;
pub mod radial1d;
pub mod scf;

pub use grid::{
    apply_on_grid, apply_word, bracket_residual_numeric, default_packets, gaussian_packet,
    word_residual_numeric, BracketKind, Field2D, Grid2D, GridCfg, Packet,
};
pub use radial1d::{radial_eigenlevels, radial_eigenlevels_refined, RadialProblem};
pub use scf::self_consistent_spectrum;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumlabError {
    #[error(
        "mass fraction {fraction:.3e} within {margin} cells of the grid edge exceeds {limit:.0e}; \
         enlarge the grid or move the packet"
    )]
    BoundaryMass {
        fraction: f64,
        margin: usize,
        limit: f64,
    },
    #[error("field has {found} samples but the grid holds {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("grid needs at least {min} points per side, got {got}")]
    GridTooSmall { min: usize, got: usize },
    #[error("eigenvalue search failed: {0}")]
    EigenFailure(String),
    #[error(
        "the radial oracle only treats flat geometry; sphere spectra are checked symbolically"
    )]
    FlatOnly,
    #[error("self-consistency loop did not settle after {iterations} iterations (last delta {delta:.3e})")]
    ScfStalled { iterations: usize, delta: f64 },
}
