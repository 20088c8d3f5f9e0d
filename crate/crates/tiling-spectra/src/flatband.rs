//! Flat-band machinery: numerical detection, the algebraic flat-band
//! conditions for the Kagome and Super-Kagome lattices, the six
//! one-flat-band weight families, classification sampling, and compactly
//! supported eigenstates.
//!
//! A flat band is an eigenvalue of the Floquet matrix that does not depend
//! on θ; equivalently a value appearing in the spectrum for a positive
//! measure of quasi-momenta, which is what the detector tests: a value
//! counts as flat when it shows up (within tolerance) in the spectrum at
//! every sample of a fixed pseudo-random θ set plus three structured points.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::floquet::{adjacency_matrix, constant_mu, laplacian, FloquetPoint};
use crate::periodic_graph::{PeriodicGraph, Tiling, WeightAssignment};
use crate::{Error, Result};

/// Default number of pseudo-random θ samples used by the detector.
pub const DEFAULT_DETECTION_SAMPLES: usize = 8;
/// Default absolute tolerance on Laplacian energies (the operators have
/// norm ≤ 2 and the eigensolver is good to ~1e-11, so 1e-9 keeps a 100×
/// margin).
pub const DEFAULT_DETECTION_TOL: f64 = 1e-9;
/// Default seed for the detector's θ samples.
pub const DEFAULT_DETECTION_SEED: u64 = 7;

/// Energy detected at every θ sample.
#[derive(Copy, Clone, Debug, Serialize)]
pub struct DetectedFlatBand {
    pub energy: f64,
    /// Minimum multiplicity across samples.
    pub multiplicity: usize,
    /// Largest distance from `energy` to the nearest eigenvalue over all
    /// samples; at most the detection tolerance.
    pub max_deviation: f64,
}

/// Outcome of flat-band detection: the θ-independent energies, ascending.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FlatBandReport {
    pub bands: Vec<DetectedFlatBand>,
}

impl FlatBandReport {
    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.bands.iter().map(|b| b.energy).collect()
    }
}

/// Detect θ-independent Laplacian eigenvalues. Requires constant vertex
/// weight. `samples ≥ 8` pseudo-random θ (drawn from `seed`) are examined
/// together with the structured points (0,0), (π,π) and (2π/3, 4π/3);
/// candidates are read off the first random sample and must reappear within
/// `tol` at every other sample.
pub fn detect_flat_bands(
    graph: &PeriodicGraph,
    weights: &WeightAssignment,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<FlatBandReport> {
    constant_mu(graph, weights)?;
    detect_theta_independent(samples, tol, seed, |theta| {
        Ok(laplacian(graph, weights, theta)?.eigenvalues())
    })
}

/// Detect θ-independent eigenvalues of the weighted adjacency matrix Π.
/// No constant-vertex-weight assumption; this is the right notion for
/// arbitrary periodic weights.
pub fn detect_flat_bands_adjacency(
    graph: &PeriodicGraph,
    weights: &WeightAssignment,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<FlatBandReport> {
    detect_theta_independent(samples, tol, seed, |theta| {
        Ok(adjacency_matrix(graph, weights, theta)?.eigenvalues())
    })
}

fn detect_theta_independent(
    samples: usize,
    tol: f64,
    seed: u64,
    eigenvalues_at: impl Fn(FloquetPoint) -> Result<Vec<f64>>,
) -> Result<FlatBandReport> {
    if samples < 8 {
        return Err(Error::InvalidArgument(format!(
            "flat-band detection needs at least 8 samples, got {samples}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<FloquetPoint> = (0..samples)
        .map(|_| FloquetPoint::new(rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)))
        .collect();
    // structured points catch band extrema; candidates come from the first
    // random sample where symmetric degeneracies are absent
    points.push(FloquetPoint::GAMMA);
    points.push(FloquetPoint::new(PI, PI));
    points.push(FloquetPoint::new(2.0 * PI / 3.0, 4.0 * PI / 3.0));

    let spectra: Vec<Vec<f64>> = points
        .iter()
        .map(|&theta| eigenvalues_at(theta))
        .collect::<Result<_>>()?;

    let mut candidates: Vec<f64> = Vec::new();
    for &e in &spectra[0] {
        if !candidates.iter().any(|c| (c - e).abs() <= tol) {
            candidates.push(e);
        }
    }

    let mut bands = Vec::new();
    'candidate: for &energy in &candidates {
        let mut multiplicity = usize::MAX;
        let mut max_deviation = 0.0f64;
        for spectrum in &spectra {
            let count = spectrum.iter().filter(|x| (**x - energy).abs() <= tol).count();
            if count == 0 {
                continue 'candidate;
            }
            let nearest = spectrum
                .iter()
                .map(|x| (x - energy).abs())
                .fold(f64::INFINITY, f64::min);
            max_deviation = max_deviation.max(nearest);
            multiplicity = multiplicity.min(count);
        }
        bands.push(DetectedFlatBand { energy, multiplicity, max_deviation });
    }
    bands.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(FlatBandReport { bands })
}

// ---------------------------------------------------------------------------
// algebraic conditions
// ---------------------------------------------------------------------------

/// Energy on the adjacency scale: λ̃ = μ(1 − λ) for a Laplacian energy λ.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ScaledEnergy(pub f64);

impl ScaledEnergy {
    pub fn from_laplacian(energy: f64, mu: f64) -> Self {
        Self(mu * (1.0 - energy))
    }

    pub fn laplacian_energy(self, mu: f64) -> f64 {
        1.0 - self.0 / mu
    }
}

/// Kagome flat-band residuals at a general adjacency eigenvalue λ: the
/// coefficients of the three independent phase functions and the constant
/// term of det(λ·Id − Π). All four vanish exactly when λ is a θ-independent
/// eigenvalue of Π for the weights γ₁…γ₆.
pub fn kagome_condition_residuals_at(gamma: &[f64; 6], lambda: f64) -> ([f64; 3], f64) {
    let [g1, g2, g3, g4, g5, g6] = *gamma;
    let products = [
        lambda * g3 * g6 + g2 * g3 * g4 + g1 * g5 * g6,
        lambda * g2 * g5 + g4 * g5 * g6 + g1 * g2 * g3,
        lambda * g1 * g4 + g3 * g4 * g5 + g1 * g2 * g6,
    ];
    let sum_sq = g1 * g1 + g2 * g2 + g3 * g3 + g4 * g4 + g5 * g5 + g6 * g6;
    let scalar = -lambda.powi(3) + lambda * sum_sq + 2.0 * (g2 * g4 * g6 + g1 * g3 * g5);
    (products, scalar)
}

/// Kagome flat-band residuals in the normalized form: the caller pre-scales
/// the weights so that Λ := γ₂ + γ₅ = 1, which pins the candidate adjacency
/// eigenvalue to −1.
pub fn kagome_condition_residuals(gamma: &[f64; 6]) -> ([f64; 3], f64) {
    kagome_condition_residuals_at(gamma, -1.0)
}

/// Residuals of the Super-Kagome flat-band conditions at λ̃ with a sign
/// pattern (s₇, s₈, s₉) ∈ {±1}³.
#[derive(Copy, Clone, Debug)]
pub struct SuperKagomeConditionResiduals {
    /// λ̃ − (−γ₁γ₃/γ₂ + s₉γ₉)
    pub eq_gamma9: f64,
    /// λ̃ − (−γ₁γ₂/γ₃ + s₈γ₈)
    pub eq_gamma8: f64,
    /// λ̃ − (−γ₂γ₃/γ₁ + s₇γ₇)
    pub eq_gamma7: f64,
    /// The degree-6 scalar condition (the θ-independent part of
    /// det(λ̃·Id − Π) must vanish as well).
    pub scalar: f64,
}

impl SuperKagomeConditionResiduals {
    pub fn max_abs(&self) -> f64 {
        self.eq_gamma9
            .abs()
            .max(self.eq_gamma8.abs())
            .max(self.eq_gamma7.abs())
            .max(self.scalar.abs())
    }
}

/// Evaluate the Super-Kagome flat-band conditions for reduced weights
/// (γ₁, γ₂, γ₃, γ₇, γ₈, γ₉) — the constant-vertex-weight identities
/// γ₄ = γ₁, γ₅ = γ₂, γ₆ = γ₃ are assumed — at the adjacency-scale energy λ̃
/// and sign pattern `signs` = (s₇, s₈, s₉).
pub fn superkagome_condition_residuals(
    reduced: &[f64; 6],
    lambda_tilde: ScaledEnergy,
    signs: [f64; 3],
) -> SuperKagomeConditionResiduals {
    let [g1, g2, g3, g7, g8, g9] = *reduced;
    let [s7, s8, s9] = signs;
    let l = lambda_tilde.0;
    SuperKagomeConditionResiduals {
        eq_gamma9: l - (-g1 * g3 / g2 + s9 * g9),
        eq_gamma8: l - (-g1 * g2 / g3 + s8 * g8),
        eq_gamma7: l - (-g2 * g3 / g1 + s7 * g7),
        scalar: superkagome_scalar_condition(reduced, l),
    }
}

/// θ-independent part of det(λ·Id − Π) for reduced Super-Kagome weights.
pub fn superkagome_scalar_condition(reduced: &[f64; 6], lambda: f64) -> f64 {
    let [g1, g2, g3, g7, g8, g9] = *reduced;
    let (q1, q2, q3) = (g1 * g1, g2 * g2, g3 * g3);
    let (q7, q8, q9) = (g7 * g7, g8 * g8, g9 * g9);
    lambda.powi(6)
        - lambda.powi(4) * (2.0 * q1 + 2.0 * q2 + 2.0 * q3 + q7 + q8 + q9)
        - 4.0 * lambda.powi(3) * g1 * g2 * g3
        + lambda.powi(2)
            * (q1 * q1
                + q2 * q2
                + q3 * q3
                + 2.0 * q1 * q2
                + 2.0 * q2 * q3
                + 2.0 * q3 * q1
                + 2.0 * q1 * q7
                + 2.0 * q2 * q9
                + 2.0 * q3 * q8
                + q7 * q8
                + q8 * q9
                + q9 * q7)
        + 4.0 * lambda * g1 * g2 * g3 * (q1 + q2 + q3)
        - q1 * q1 * q7
        - q2 * q2 * q9
        - q3 * q3 * q8
        - q7 * q8 * q9
        + 4.0 * q1 * q2 * q3
}

// ---------------------------------------------------------------------------
// one-flat-band families
// ---------------------------------------------------------------------------

/// The two base cases of the one-flat-band classification, named by the sign
/// pattern in front of (γ₉, γ₈, γ₇); the (+ − −) case splits into two
/// sub-branches that intersect in a single point.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyCase {
    /// Sign pattern (−, +, +) on (γ₉, γ₈, γ₇): γ₂ = α′ ∈ (μ/2, μ).
    Mpp,
    /// Sign pattern (+, −, −), branch with γ₁ = γ₃: α′ ∈ (0, μ/2).
    PmmA,
    /// Sign pattern (+, −, −), branch with γ₁γ₃ = γ₂(γ₁ + γ₃): α″ ∈ (0, μ).
    PmmB,
}

impl FamilyCase {
    pub const ALL: [FamilyCase; 3] = [FamilyCase::Mpp, FamilyCase::PmmA, FamilyCase::PmmB];

    pub fn parse(name: &str) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "mpp" => Ok(FamilyCase::Mpp),
            "pmm_a" | "pmma" => Ok(FamilyCase::PmmA),
            "pmm_b" | "pmmb" => Ok(FamilyCase::PmmB),
            other => Err(Error::InvalidArgument(format!("unknown family case `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyCase::Mpp => "mpp",
            FamilyCase::PmmA => "pmm_a",
            FamilyCase::PmmB => "pmm_b",
        }
    }
}

/// One of the one-flat-band families: a base case plus a lattice rotation
/// (0, 1 or 2 steps of 2π/3).
#[derive(Copy, Clone, Debug)]
pub struct OneFlatBandFamily {
    pub case: FamilyCase,
    pub rotation: u8,
    pub mu: f64,
}

/// A point on a one-flat-band family: reduced weights, the flat energy and
/// its adjacency-scale value.
#[derive(Copy, Clone, Debug)]
pub struct FamilyPoint {
    /// (γ₁, γ₂, γ₃, γ₇, γ₈, γ₉)
    pub reduced: [f64; 6],
    pub lambda_tilde: ScaledEnergy,
    /// Predicted Laplacian flat energy 1 − λ̃/μ.
    pub energy: f64,
}

impl FamilyPoint {
    /// Expand to the nine weight classes of the Super-Kagome built-in.
    pub fn weight_assignment(&self, graph: &PeriodicGraph) -> Result<WeightAssignment> {
        crate::periodic_graph::super_kagome_weights_from_reduced(graph, self.reduced)
    }
}

/// One step of the 2π/3 lattice rotation on reduced weights: the triangle
/// classes cycle γ₁ → γ₂ → γ₃ → γ₁ while the attached bridges follow their
/// opposite vertices, γ₇ → γ₉ → γ₈ → γ₇.
pub fn rotate_reduced_weights(reduced: [f64; 6]) -> [f64; 6] {
    let [g1, g2, g3, g7, g8, g9] = reduced;
    [g3, g1, g2, g8, g9, g7]
}

impl OneFlatBandFamily {
    pub fn new(case: FamilyCase, rotation: u8, mu: f64) -> Result<Self> {
        if rotation > 2 {
            return Err(Error::InvalidArgument(format!("rotation must be 0, 1 or 2, got {rotation}")));
        }
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::InvalidArgument(format!("vertex weight must be positive, got {mu}")));
        }
        Ok(Self { case, rotation, mu })
    }

    /// The three rotations of each base case at vertex weight μ. The PmmA
    /// and PmmB entries of one rotation are two branches of the same
    /// connected component, so the list covers the six components with the
    /// (+ − −) ones represented twice.
    pub fn all(mu: f64) -> Result<Vec<OneFlatBandFamily>> {
        let mut out = Vec::with_capacity(9);
        for case in FamilyCase::ALL {
            for rotation in 0..3 {
                out.push(OneFlatBandFamily::new(case, rotation, mu)?);
            }
        }
        Ok(out)
    }

    /// Open parameter interval of the family.
    pub fn parameter_range(&self) -> (f64, f64) {
        match self.case {
            FamilyCase::Mpp => (self.mu / 2.0, self.mu),
            FamilyCase::PmmA => (0.0, self.mu / 2.0),
            FamilyCase::PmmB => (0.0, self.mu),
        }
    }

    /// Sign pattern (s₇, s₈, s₉) satisfied by the family's points.
    pub fn sign_pattern(&self) -> [f64; 3] {
        let base = match self.case {
            FamilyCase::Mpp => [1.0, 1.0, -1.0],
            FamilyCase::PmmA | FamilyCase::PmmB => [-1.0, -1.0, 1.0],
        };
        // the rotation (γ₁γ₂γ₃)(γ₇γ₉γ₈) permutes the condition equations
        // through their bridge classes: (s₇, s₈, s₉) → (s₈, s₉, s₇)
        let mut signs = base;
        for _ in 0..self.rotation {
            signs = [signs[1], signs[2], signs[0]];
        }
        signs
    }

    /// Evaluate the family at parameter `t`, strictly inside the open range.
    /// The produced weights are strictly positive, satisfy constant vertex
    /// weight μ, and carry exactly one flat band at the returned energy.
    pub fn weights(&self, t: f64) -> Result<FamilyPoint> {
        let (lo, hi) = self.parameter_range();
        if !(t > lo && t < hi) {
            return Err(Error::ParameterOutOfRange { name: "t", value: t, lo, hi });
        }
        let mu = self.mu;
        let (mut reduced, lambda_tilde) = match self.case {
            FamilyCase::Mpp => {
                let ap = t;
                let bp = mu - 3.0 * ap + (17.0 * ap * ap - 8.0 * ap * mu).sqrt();
                let g1 = (mu - bp) / 2.0;
                let g7 = (mu + bp) / 2.0 - ap;
                ([g1, ap, g1, g7, g7, bp], -2.0 * ap + (mu + bp) / 2.0)
            }
            FamilyCase::PmmA => {
                let ap = t;
                let bp = mu + 3.0 * ap - (9.0 * ap * ap + 8.0 * ap * mu).sqrt();
                let g1 = (mu - bp) / 2.0;
                let g7 = (mu + bp) / 2.0 - ap;
                ([g1, ap, g1, g7, g7, bp], -(mu + bp) / 2.0)
            }
            FamilyCase::PmmB => {
                let app = t;
                let bpp = (mu - 3.0 * app + (mu * mu - 2.0 * app * mu + 5.0 * app * app).sqrt()) / 2.0;
                let g2 = app * bpp / (app + bpp);
                let g7 = mu - (2.0 * app * bpp + bpp * bpp) / (app + bpp);
                let g8 = mu - (app * app + 2.0 * app * bpp) / (app + bpp);
                let g9 = mu - app - bpp;
                ([app, g2, bpp, g7, g8, g9], mu - 2.0 * app - 2.0 * bpp)
            }
        };
        for _ in 0..self.rotation {
            reduced = rotate_reduced_weights(reduced);
        }
        if reduced.iter().any(|&g| g.is_nan() || g <= 0.0) {
            return Err(Error::ParameterOutOfRange { name: "t", value: t, lo, hi });
        }
        let lambda_tilde = ScaledEnergy(lambda_tilde);
        Ok(FamilyPoint { reduced, lambda_tilde, energy: lambda_tilde.laplacian_energy(mu) })
    }
}

// ---------------------------------------------------------------------------
// classification sampling
// ---------------------------------------------------------------------------

/// Outcome of sampling the flat-band classification on one lattice.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub lattice: String,
    /// Random constant-vertex-weight draws and how many showed flat bands.
    pub random_trials: usize,
    pub random_with_flat_bands: usize,
    /// Monomeric draws and how many produced exactly the predicted flats.
    pub monomeric_trials: usize,
    pub monomeric_ok: usize,
    /// Worst deviation of a detected monomeric flat energy from prediction.
    pub worst_energy_deviation: f64,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.random_with_flat_bands == 0 && self.monomeric_ok == self.monomeric_trials
    }
}

/// Sample the classification theorems: random constant-vertex-weight draws
/// must show no flat bands (the monomeric set and, on the Super-Kagome
/// lattice, the one-flat-band families have measure zero), while monomeric
/// draws must show exactly one flat band at 3/2 (Kagome) or exactly two at
/// 3α/μ and 2 − α/μ (Super-Kagome).
pub fn verify_flat_band_classification(
    tiling: Tiling,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<ClassificationReport> {
    if !tiling.has_flat_band_weights() {
        return Err(Error::UnsupportedLattice(tiling.name().to_string()));
    }
    let graph = tiling.build();
    let mu = 1.0;
    let space = graph.constant_weight_parametrization(mu)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut random_with_flat_bands = 0;
    for _ in 0..trials {
        let point = space
            .sample_positive(&mut rng, 0.25, 1000)
            .ok_or_else(|| Error::InvalidArgument("positivity rejection sampling failed".into()))?;
        let w = WeightAssignment::from_values(&graph, point)?;
        if graph.is_monomeric(&w)? {
            continue; // measure-zero; do not count either way
        }
        let report = detect_flat_bands(&graph, &w, DEFAULT_DETECTION_SAMPLES, tol, seed ^ 0x9e37)?;
        if !report.is_empty() {
            random_with_flat_bands += 1;
        }
    }

    let mut monomeric_ok = 0;
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let alpha = rng.random_range(0.02..0.48) * mu;
        let (w, predicted): (WeightAssignment, Vec<f64>) = match tiling {
            Tiling::Kagome => (
                crate::periodic_graph::kagome_breathing_weights(&graph, alpha, mu / 2.0 - alpha)?,
                vec![1.5],
            ),
            Tiling::SuperKagome => (
                crate::periodic_graph::super_kagome_monomeric_weights(&graph, alpha, mu - 2.0 * alpha)?,
                vec![3.0 * alpha / mu, 2.0 - alpha / mu],
            ),
            _ => unreachable!(),
        };
        let report = detect_flat_bands(&graph, &w, DEFAULT_DETECTION_SAMPLES, tol, seed ^ 0x51f1)?;
        if report.len() == predicted.len() {
            let dev = report
                .bands
                .iter()
                .zip(&predicted)
                .map(|(b, p)| (b.energy - p).abs())
                .fold(0.0f64, f64::max);
            worst = worst.max(dev);
            if dev <= tol {
                monomeric_ok += 1;
            }
        }
    }

    Ok(ClassificationReport {
        lattice: tiling.name().to_string(),
        random_trials: trials,
        random_with_flat_bands,
        monomeric_trials: trials,
        monomeric_ok,
        worst_energy_deviation: worst,
    })
}

/// Sampled check that a tiling admits no flat bands: `trials` random
/// positive periodic weight assignments (uniform in [0.2, 2] per class,
/// unconstrained), detection on the weighted adjacency matrix Π. Returns
/// true when no draw produced a θ-independent eigenvalue. Only meaningful
/// for the nine tilings other than Kagome and Super-Kagome; those two are
/// rejected.
pub fn no_flat_band_sampler(tiling: Tiling, trials: usize, seed: u64, tol: f64) -> Result<bool> {
    if tiling.has_flat_band_weights() {
        return Err(Error::UnsupportedLattice(tiling.name().to_string()));
    }
    let graph = tiling.build();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let values: Vec<f64> = (0..graph.weight_classes().len())
            .map(|_| rng.random_range(0.2..2.0))
            .collect();
        let w = WeightAssignment::from_values(&graph, values)?;
        let report =
            detect_flat_bands_adjacency(&graph, &w, DEFAULT_DETECTION_SAMPLES, tol, seed.wrapping_add(trial as u64))?;
        if !report.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// compactly supported eigenstates
// ---------------------------------------------------------------------------

/// A finitely supported eigenvector of the infinite-lattice Laplacian.
#[derive(Clone, Debug, Serialize)]
pub struct CompactState {
    /// Nonzero amplitudes as (cell_b1, cell_b2, vertex, value), sorted.
    pub amplitudes: Vec<(i32, i32, usize, f64)>,
    /// ‖(Δ − E)v‖∞ over every operator row meeting the support.
    pub residual: f64,
}

impl CompactState {
    pub fn support_size(&self) -> usize {
        self.amplitudes.len()
    }
}

/// Relative singular-value cutoff for the constrained null space.
const NULLSPACE_SV_CUTOFF: f64 = 1e-10;
/// Residual bound a candidate state must meet on every row.
const COMPACT_STATE_RESIDUAL: f64 = 1e-10;

/// Find a compactly supported eigenstate at energy `E`, restricted to cells
/// within Chebyshev radius `radius` of the origin; the vector must vanish on
/// the boundary layer, so its support lies within radius − 1. Rectangular
/// cell windows are scanned in order of increasing size, which returns a
/// minimal-window representative (for a flat band the full interior hosts
/// many shifted copies of the same state). Returns `None` when no window —
/// including the whole interior — carries a null vector.
pub fn find_compact_eigenstate(
    graph: &PeriodicGraph,
    weights: &WeightAssignment,
    energy: f64,
    radius: usize,
) -> Result<Option<CompactState>> {
    if radius < 1 {
        return Err(Error::InvalidArgument("radius must be at least 1".into()));
    }
    if !energy.is_finite() {
        return Err(Error::InvalidArgument(format!("energy must be finite, got {energy}")));
    }
    let mu = constant_mu(graph, weights)?;
    let interior = radius as i32 - 1;
    let max_window = 2 * radius as i32 - 1;

    let mut windows: Vec<(i32, i32)> = Vec::new();
    for h in 1..=max_window {
        for w in 1..=max_window {
            windows.push((h, w));
        }
    }
    windows.sort_by_key(|&(h, w)| (h * w, h, w));

    for (h, w) in windows {
        for b1_lo in -interior..=(interior - h + 1) {
            for b2_lo in -interior..=(interior - w + 1) {
                let cells: Vec<(i32, i32)> = (b1_lo..b1_lo + h)
                    .flat_map(|b1| (b2_lo..b2_lo + w).map(move |b2| (b1, b2)))
                    .collect();
                if let Some(state) = window_null_vector(graph, weights, mu, energy, &cells) {
                    return Ok(Some(state));
                }
            }
        }
    }
    Ok(None)
}

fn window_null_vector(
    graph: &PeriodicGraph,
    weights: &WeightAssignment,
    mu: f64,
    energy: f64,
    cells: &[(i32, i32)],
) -> Option<CompactState> {
    use std::collections::{BTreeMap, BTreeSet};

    let n = graph.n_vertices();
    let mut col_index: BTreeMap<(i32, i32, usize), usize> = BTreeMap::new();
    for &(b1, b2) in cells {
        for v in 0..n {
            let next = col_index.len();
            col_index.insert((b1, b2, v), next);
        }
    }

    // all rows meeting the support: the support itself plus one edge hop
    let mut row_keys: BTreeSet<(i32, i32, usize)> = col_index.keys().copied().collect();
    for &(b1, b2, v) in col_index.keys() {
        for e in graph.edges() {
            if e.tail == v {
                row_keys.insert((b1 + e.offset.b1, b2 + e.offset.b2, e.head));
            }
            if e.head == v {
                row_keys.insert((b1 - e.offset.b1, b2 - e.offset.b2, e.tail));
            }
        }
    }
    let row_index: BTreeMap<(i32, i32, usize), usize> =
        row_keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();

    let n_rows = row_index.len();
    let n_cols = col_index.len();
    let mut a = DMatrix::<f64>::zeros(n_rows, n_cols);
    for (&(b1, b2, v), &col) in &col_index {
        a[(row_index[&(b1, b2, v)], col)] += 1.0 - energy;
        for e in graph.edges() {
            let gamma = weights.value(e.class);
            if e.tail == v {
                let key = (b1 + e.offset.b1, b2 + e.offset.b2, e.head);
                a[(row_index[&key], col)] += -gamma / mu;
            }
            if e.head == v {
                let key = (b1 - e.offset.b1, b2 - e.offset.b2, e.tail);
                a[(row_index[&key], col)] += -gamma / mu;
            }
        }
    }

    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested right singular vectors");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    if sigma_max == 0.0 {
        return None;
    }
    let (argmin, &sigma_min) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("nonempty");
    if sigma_min > NULLSPACE_SV_CUTOFF * sigma_max {
        return None;
    }

    let mut v: Vec<f64> = v_t.row(argmin).iter().copied().collect();
    // deterministic normalization: the largest-magnitude entry becomes +1
    let pivot = v
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .map(|(i, _)| i)
        .expect("nonempty");
    let pivot_value = v[pivot];
    v.iter_mut().for_each(|x| *x /= pivot_value);

    let residual = (&a * DMatrix::from_column_slice(n_cols, 1, &v)).amax();
    if residual > COMPACT_STATE_RESIDUAL {
        return None;
    }

    let amplitudes: Vec<(i32, i32, usize, f64)> = col_index
        .iter()
        .filter(|(_, &col)| v[col].abs() > 1e-9)
        .map(|(&(b1, b2, vert), &col)| (b1, b2, vert, v[col]))
        .collect();
    Some(CompactState { amplitudes, residual })
}
