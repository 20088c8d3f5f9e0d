//! Independent verification on a finite M×M torus of fundamental cells.
//!
//! Wrapping the edge-class offsets modulo M turns the periodic operator into
//! a real symmetric matrix of dimension n·M² that can be diagonalized
//! directly. The discrete Bloch decomposition is exact here: the torus
//! spectrum equals the multiset union of Floquet spectra over the M×M grid
//! θ ∈ (2π/M)·{0, …, M−1}², which makes the torus an independent oracle for
//! the Floquet path (the two sides also use different eigensolvers: the
//! torus goes through nalgebra's symmetric QR, the Floquet matrices through
//! the in-crate Jacobi).

use nalgebra::DMatrix;

use crate::floquet::constant_mu;
use crate::periodic_graph::{PeriodicGraph, WeightAssignment};
use crate::{Error, Result};

/// Real symmetric Laplacian on the M×M torus; dof (c₁, c₂, v) is indexed
/// (c₁·M + c₂)·n + v.
#[derive(Clone, Debug)]
pub struct TorusOperator {
    m: usize,
    n_cell_vertices: usize,
    mu: f64,
    matrix: DMatrix<f64>,
}

/// Build the torus Laplacian `Id − Π/μ` with offsets wrapped modulo M.
/// M ≥ 3 keeps distinct edge classes from collapsing onto the same torus
/// edge; constant vertex weight is required as for the Floquet Laplacian.
pub fn build_torus(graph: &PeriodicGraph, weights: &WeightAssignment, m: usize) -> Result<TorusOperator> {
    if m < 3 {
        return Err(Error::TorusTooSmall(m));
    }
    let mu = constant_mu(graph, weights)?;
    let n = graph.n_vertices();
    let dim = n * m * m;
    let mut matrix = DMatrix::<f64>::identity(dim, dim);
    let index = |c1: usize, c2: usize, v: usize| (c1 * m + c2) * n + v;
    for c1 in 0..m {
        for c2 in 0..m {
            for e in graph.edges() {
                let d1 = (c1 as i64 + e.offset.b1 as i64).rem_euclid(m as i64) as usize;
                let d2 = (c2 as i64 + e.offset.b2 as i64).rem_euclid(m as i64) as usize;
                let i = index(c1, c2, e.tail);
                let j = index(d1, d2, e.head);
                let coupling = weights.value(e.class) / mu;
                matrix[(i, j)] -= coupling;
                matrix[(j, i)] -= coupling;
            }
        }
    }
    Ok(TorusOperator { m, n_cell_vertices: n, mu, matrix })
}

impl TorusOperator {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n_cell_vertices * self.m * self.m
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Row sum of the adjacency part Π = μ(Id − Δ); equals μ for every row
    /// under constant vertex weight.
    pub fn pi_row_sum(&self, row: usize) -> f64 {
        let diag = self.matrix[(row, row)];
        let off: f64 = (0..self.dim()).filter(|&j| j != row).map(|j| self.matrix[(row, j)]).sum();
        self.mu * ((1.0 - diag) - off)
    }

    /// Full dense symmetric diagonalization, eigenvalues ascending.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut eigs: Vec<f64> = self.matrix.clone().symmetric_eigenvalues().iter().copied().collect();
        eigs.sort_by(f64::total_cmp);
        eigs
    }
}

/// Number of eigenvalues within `tol` of `energy`. For a flat band this
/// grows like M² (one copy per grid θ), plus up to two extra hits when a
/// dispersive branch touches the flat value at on-grid θ points (which
/// happens when 3 divides M).
pub fn flat_multiplicity(spectrum: &[f64], energy: f64, tol: f64) -> usize {
    spectrum.iter().filter(|x| (**x - energy).abs() <= tol).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floquet::{band_structure, laplacian, FloquetPoint};
    use crate::periodic_graph::{
        kagome_breathing_weights, super_kagome_monomeric_weights, Tiling,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    #[test]
    fn torus_dimensions() {
        let g = Tiling::Kagome.build();
        let w = WeightAssignment::uniform(&g, 1.0).unwrap();
        assert_eq!(build_torus(&g, &w, 4).unwrap().dim(), 48);
        let sk = Tiling::SuperKagome.build();
        let w = WeightAssignment::uniform(&sk, 1.0).unwrap();
        assert_eq!(build_torus(&sk, &w, 3).unwrap().dim(), 54);
        assert!(matches!(build_torus(&sk, &w, 2), Err(Error::TorusTooSmall(2))));
    }

    #[test]
    fn pi_row_sums_equal_mu() {
        let g = Tiling::Kagome.build();
        let w = kagome_breathing_weights(&g, 0.3, 0.2).unwrap();
        let op = build_torus(&g, &w, 4).unwrap();
        for row in 0..op.dim() {
            assert!((op.pi_row_sum(row) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn torus_spectrum_equals_floquet_union() {
        // exact discrete Bloch decomposition, random weights, both lattices
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for tiling in [Tiling::Kagome, Tiling::SuperKagome] {
            let g = tiling.build();
            let space = g.constant_weight_parametrization(1.0).unwrap();
            for m in 3..=5 {
                let point = space.sample_positive(&mut rng, 0.2, 500).unwrap();
                let w = WeightAssignment::from_values(&g, point).unwrap();
                let torus = build_torus(&g, &w, m).unwrap().spectrum();
                let mut union: Vec<f64> = Vec::with_capacity(torus.len());
                for i in 0..m {
                    for j in 0..m {
                        let theta = FloquetPoint::new(
                            TAU * i as f64 / m as f64,
                            TAU * j as f64 / m as f64,
                        );
                        union.extend(laplacian(&g, &w, theta).unwrap().eigenvalues());
                    }
                }
                union.sort_by(f64::total_cmp);
                assert_eq!(torus.len(), union.len());
                for (a, b) in torus.iter().zip(&union) {
                    assert!((a - b).abs() <= 1e-9, "{} M={m}: {a} vs {b}", g.name());
                }
            }
        }
    }

    #[test]
    fn uniform_kagome_flat_multiplicities() {
        // the middle branch touches the flat value 3/2 exactly at the Γ
        // point (where the spectrum is {0, 3/2, 3/2}), and Γ lies on every
        // grid, so the count is M² + 1
        let g = Tiling::Kagome.build();
        let w = WeightAssignment::uniform(&g, 1.0).unwrap();

        let spec = build_torus(&g, &w, 4).unwrap().spectrum();
        assert_eq!(flat_multiplicity(&spec, 1.5, 1e-9), 17);

        let spec = build_torus(&g, &w, 6).unwrap().spectrum();
        assert_eq!(flat_multiplicity(&spec, 1.5, 1e-9), 37);
    }

    #[test]
    fn super_kagome_flat_multiplicities_grow_like_m_squared() {
        let g = Tiling::SuperKagome.build();
        let (alpha, mu) = (0.3, 1.0);
        let w = super_kagome_monomeric_weights(&g, alpha, mu - 2.0 * alpha).unwrap();
        for m in [3usize, 5] {
            let spec = build_torus(&g, &w, m).unwrap().spectrum();
            for energy in [3.0 * alpha / mu, 2.0 - alpha / mu] {
                let count = flat_multiplicity(&spec, energy, 1e-9);
                assert!(count >= m * m && count <= m * m + 2, "M={m} E={energy}: {count}");
            }
        }
    }

    #[test]
    fn non_flat_energies_have_bounded_multiplicity() {
        // constant vertex weight but non-monomeric: no flat band, so no
        // energy collects more than a handful of eigenvalues as M grows
        let g = Tiling::Kagome.build();
        let w = WeightAssignment::from_values(&g, vec![0.3, 0.25, 0.2, 0.2, 0.25, 0.3]).unwrap();
        for m in [4usize, 6] {
            let spec = build_torus(&g, &w, m).unwrap().spectrum();
            let mut worst = 0;
            for &e in &spec {
                worst = worst.max(flat_multiplicity(&spec, e, 1e-9));
            }
            assert!(worst <= 6, "M={m}: multiplicity {worst}");
        }
    }

    #[test]
    fn torus_spectrum_within_zero_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let g = Tiling::SuperKagome.build();
        let space = g.constant_weight_parametrization(1.0).unwrap();
        let point = space.sample_positive(&mut rng, 0.2, 500).unwrap();
        let w = WeightAssignment::from_values(&g, point).unwrap();
        let spec = build_torus(&g, &w, 4).unwrap().spectrum();
        assert!(spec.iter().all(|&x| (-1e-9..=2.0 + 1e-9).contains(&x)));
        // torus and band-structure sweeps see the same spectrum bounds
        let bs = band_structure(&g, &w, 4).unwrap();
        assert!((bs.band_ranges()[0].0 - spec[0]).abs() < 1e-9);
    }

    #[test]
    fn repeated_builds_are_identical() {
        let g = Tiling::Kagome.build();
        let w = kagome_breathing_weights(&g, 0.35, 0.15).unwrap();
        let a = build_torus(&g, &w, 5).unwrap().spectrum();
        let b = build_torus(&g, &w, 5).unwrap().spectrum();
        assert_eq!(a, b);
    }
}
