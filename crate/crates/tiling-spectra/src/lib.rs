//! Spectral toolkit for weighted discrete Laplacians on Archimedean tilings.
//!
//! The library models ℤ²-periodic weighted graphs (all eleven Archimedean
//! tilings ship as built-ins), assembles their Floquet matrices at any
//! quasi-momentum, and computes band structures by sweeping the Brillouin
//! torus. On top of that sit the lattice-specific results for the Kagome
//! (3.6)² and Super-Kagome (3.12²) tilings:
//!
//! * flat-band detection and the algebraic flat-band conditions,
//! * the six one-parameter families of non-monomeric constant-vertex-weight
//!   Super-Kagome weights carrying exactly one flat band,
//! * closed-form dispersion relations, band edges and gap widths for
//!   monomeric weights, and the band-gap phase diagrams,
//! * compactly supported eigenstates at flat-band energies,
//! * an independent finite-torus diagonalization used to cross-check the
//!   Floquet computations.
//!
//! Everything is deterministic: random sampling takes explicit seeds, and
//! all exports (CSV/SVG) are byte-stable for fixed inputs.

pub mod closed_form;
pub mod eigen;
pub mod export;
pub mod flatband;
pub mod floquet;
pub mod periodic_graph;
pub mod torus;

mod error;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// α grid with `steps` interior points of (0, μ/2) for phase-diagram sweeps.
///
/// The denominator is rounded up so that the lattice's gap-closing point is
/// exactly on the grid: α = μ/4 for the Kagome lattice and α = 2μ/7 for the
/// Super-Kagome lattice.
pub fn sweep_alpha_grid(lattice: periodic_graph::Tiling, mu: f64, steps: usize) -> Result<Vec<f64>> {
    use periodic_graph::Tiling;
    let base = 2 * (steps + 1);
    let multiple = match lattice {
        Tiling::Kagome => 4,
        Tiling::SuperKagome => 14,
        other => return Err(Error::UnsupportedLattice(other.name().to_string())),
    };
    let divisor = base.div_ceil(multiple) * multiple;
    Ok((1..=steps).map(|k| mu * k as f64 / divisor as f64).collect())
}
