//! Exact dispersion relations, band edges, gap widths and phase diagrams for
//! the monomeric Kagome and Super-Kagome lattices.
//!
//! Both lattices are parametrized by (α, μ) with the second weight derived:
//! β = μ/2 − α on the Kagome lattice (weights α on down-triangles, β on
//! up-triangles, vertex weight 2α + 2β = μ) and β = μ − 2α on the
//! Super-Kagome lattice (α on triangles, β on dodecagon bridges,
//! 2α + β = μ). The admissible range is the open interval α ∈ (0, μ/2) in
//! both cases.
//!
//! All spectra are reported for the normalized Laplacian, so they live in
//! [0, 2]. Dispersions are returned ascending; flat values are λ = 3/2
//! (Kagome) and λ = 3α/μ, 2 − α/μ (Super-Kagome).

use serde::Serialize;

use crate::floquet::{f_kagome, f_superkagome, FloquetPoint};
use crate::periodic_graph::Tiling;
use crate::{Error, Result};

/// Monomeric ("breathing") Kagome weights: α ∈ (0, μ/2), β = μ/2 − α.
#[derive(Copy, Clone, Debug)]
pub struct MonomericKagome {
    alpha: f64,
    mu: f64,
}

impl MonomericKagome {
    pub fn new(alpha: f64, mu: f64) -> Result<Self> {
        check_alpha(alpha, mu)?;
        Ok(Self { alpha, mu })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn beta(&self) -> f64 {
        self.mu / 2.0 - self.alpha
    }

    /// The three Laplacian eigenvalues at θ, ascending. The flat value 3/2
    /// always occupies the last slot (the middle branch reaches it only at
    /// the Γ point, where the two coincide).
    pub fn dispersion(&self, theta: FloquetPoint) -> [f64; 3] {
        let t = self.alpha / self.mu;
        let f = f_kagome(theta);
        let radicand = 1.0 + 8.0 * (1.0 + (f - 3.0) * (2.0 * t - 4.0 * t * t));
        debug_assert!(radicand > -1e-12, "negative radicand {radicand}");
        let root = radicand.max(0.0).sqrt();
        [0.75 - 0.25 * root, 0.75 + 0.25 * root, 1.5]
    }

    /// Band intervals, flat band and gap width.
    pub fn spectrum(&self) -> SpectrumReport {
        let dev = (3.0 * self.alpha / self.mu - 0.75).abs();
        let i1 = (0.0, 0.75 - dev);
        let i2 = (0.75 + dev, 1.5);
        SpectrumReport {
            bands: [i1, i2],
            flat_bands: vec![FlatBandLine { energy: 1.5, attachment: Attachment::UpperEdgeOfBand(1) }],
            gap_width: (6.0 * self.alpha / self.mu - 1.5).abs(),
        }
    }
}

/// Monomeric Super-Kagome weights: α ∈ (0, μ/2), β = μ − 2α.
#[derive(Copy, Clone, Debug)]
pub struct MonomericSuperKagome {
    alpha: f64,
    mu: f64,
}

/// Six sorted Laplacian eigenvalues at one θ, with the sorted slots of the
/// two flat values.
#[derive(Copy, Clone, Debug)]
pub struct SuperKagomeDispersion {
    pub levels: [f64; 6],
    /// Sorted slot holding 3α/μ.
    pub flat_low_slot: usize,
    /// Sorted slot holding 2 − α/μ.
    pub flat_high_slot: usize,
}

impl MonomericSuperKagome {
    pub fn new(alpha: f64, mu: f64) -> Result<Self> {
        check_alpha(alpha, mu)?;
        Ok(Self { alpha, mu })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn beta(&self) -> f64 {
        self.mu - 2.0 * self.alpha
    }

    /// The six Laplacian eigenvalues at θ, ascending. Two of them are
    /// θ-independent: 3α/μ and 2 − α/μ; the four dispersive branches are
    /// 1 − (α ± √(9α² + 4β² ± 4αβ√(3 + 2F)))/(2μ) with F = [`f_superkagome`].
    pub fn dispersion(&self, theta: FloquetPoint) -> SuperKagomeDispersion {
        let (a, mu) = (self.alpha, self.mu);
        let b = self.beta();
        let f = f_superkagome(theta);
        let inner = 3.0 + 2.0 * f;
        debug_assert!(inner > -1e-12, "negative inner radicand {inner}");
        let s = inner.max(0.0).sqrt();
        let base = 9.0 * a * a + 4.0 * b * b;
        let rad_plus = base + 4.0 * a * b * s;
        let rad_minus = base - 4.0 * a * b * s;
        debug_assert!(rad_minus > -1e-12, "negative outer radicand {rad_minus}");
        let r_plus = rad_plus.max(0.0).sqrt();
        let r_minus = rad_minus.max(0.0).sqrt();

        let branches = [
            1.0 - (a + r_plus) / (2.0 * mu),
            1.0 - (a + r_minus) / (2.0 * mu),
            3.0 * a / mu,
            1.0 - (a - r_minus) / (2.0 * mu),
            1.0 - (a - r_plus) / (2.0 * mu),
            2.0 - a / mu,
        ];
        let mut order: [usize; 6] = [0, 1, 2, 3, 4, 5];
        order.sort_by(|&i, &j| branches[i].total_cmp(&branches[j]).then(i.cmp(&j)));
        let mut levels = [0.0; 6];
        let mut flat_low_slot = 0;
        let mut flat_high_slot = 0;
        for (slot, &src) in order.iter().enumerate() {
            levels[slot] = branches[src];
            if src == 2 {
                flat_low_slot = slot;
            }
            if src == 5 {
                flat_high_slot = slot;
            }
        }
        SuperKagomeDispersion { levels, flat_low_slot, flat_high_slot }
    }

    /// Band intervals, the two flat bands with their attachment, and the gap
    /// width |7α − 2μ|/μ. The lower flat band 3α/μ sits at the top of the
    /// lower band for α < 2μ/7 and at the bottom of the upper band for
    /// α > 2μ/7; at α = 2μ/7 the two bands touch there.
    pub fn spectrum(&self) -> SpectrumReport {
        let (a, mu) = (self.alpha, self.mu);
        let b = self.beta();
        let mid = 1.0 - a / (2.0 * mu);
        let half_gap = (3.0 * a - 2.0 * b).abs() / (2.0 * mu);
        let i1 = (0.0, mid - half_gap);
        let i2 = (mid + half_gap, 2.0 - a / mu);
        let discriminant = 7.0 * a - 2.0 * mu;
        let attachment_low = if discriminant.abs() <= 1e-12 * mu {
            Attachment::BandTouchingPoint
        } else if discriminant < 0.0 {
            Attachment::UpperEdgeOfBand(0)
        } else {
            Attachment::LowerEdgeOfBand(1)
        };
        SpectrumReport {
            bands: [i1, i2],
            flat_bands: vec![
                FlatBandLine { energy: 3.0 * a / mu, attachment: attachment_low },
                FlatBandLine { energy: 2.0 - a / mu, attachment: Attachment::UpperEdgeOfBand(1) },
            ],
            gap_width: (7.0 * a - 2.0 * mu).abs() / mu,
        }
    }
}

fn check_alpha(alpha: f64, mu: f64) -> Result<()> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::InvalidArgument(format!("vertex weight must be positive, got {mu}")));
    }
    if !alpha.is_finite() || alpha <= 0.0 || alpha >= mu / 2.0 {
        return Err(Error::ParameterOutOfRange { name: "alpha", value: alpha, lo: 0.0, hi: mu / 2.0 });
    }
    Ok(())
}

/// Where a flat band sits relative to the two band intervals.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attachment {
    /// Equals the upper endpoint of the given band (0-based).
    UpperEdgeOfBand(usize),
    /// Equals the lower endpoint of the given band.
    LowerEdgeOfBand(usize),
    /// Sits exactly where the two bands touch.
    BandTouchingPoint,
}

#[derive(Copy, Clone, Debug, Serialize)]
pub struct FlatBandLine {
    pub energy: f64,
    pub attachment: Attachment,
}

/// Closed-form spectrum of a monomeric lattice: two (possibly touching)
/// band intervals, the flat bands, and the width of the gap between the
/// intervals.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub bands: [(f64, f64); 2],
    pub flat_bands: Vec<FlatBandLine>,
    pub gap_width: f64,
}

/// Dispatch on the two flat-band lattices.
pub fn spectrum_report(lattice: Tiling, alpha: f64, mu: f64) -> Result<SpectrumReport> {
    match lattice {
        Tiling::Kagome => Ok(MonomericKagome::new(alpha, mu)?.spectrum()),
        Tiling::SuperKagome => Ok(MonomericSuperKagome::new(alpha, mu)?.spectrum()),
        other => Err(Error::UnsupportedLattice(other.name().to_string())),
    }
}

/// One α row of a band-gap phase diagram.
#[derive(Clone, Debug, Serialize)]
pub struct PhaseDiagramRow {
    pub alpha: f64,
    pub i1: (f64, f64),
    pub i2: (f64, f64),
    /// One flat energy for the Kagome lattice, two for the Super-Kagome.
    pub flats: Vec<f64>,
    pub gap: f64,
}

/// Evaluate the closed-form spectrum on a grid of α values. Every α must lie
/// strictly inside (0, μ/2).
pub fn phase_diagram(lattice: Tiling, mu: f64, alphas: &[f64]) -> Result<Vec<PhaseDiagramRow>> {
    alphas
        .iter()
        .map(|&alpha| {
            let report = spectrum_report(lattice, alpha, mu)?;
            Ok(PhaseDiagramRow {
                alpha,
                i1: report.bands[0],
                i2: report.bands[1],
                flats: report.flat_bands.iter().map(|f| f.energy).collect(),
                gap: report.gap_width,
            })
        })
        .collect()
}

/// Uniform α grid of `steps` interior points of (0, μ/2): α_k = k·μ/(2(steps+1)).
pub fn interior_alpha_grid(mu: f64, steps: usize) -> Vec<f64> {
    (1..=steps).map(|k| mu * k as f64 / (2 * (steps + 1)) as f64).collect()
}

/// det(λ·Id − Π(θ)) of the Kagome weighted adjacency matrix, evaluated from
/// its expansion into the constant part and the three independent phase
/// functions:
///
/// ```text
/// det = λ³ − λ·Σγᵢ² − 2(γ₂γ₄γ₆ + γ₁γ₃γ₅)
///     − 2cos θ₁      · (λγ₃γ₆ + γ₂γ₃γ₄ + γ₁γ₅γ₆)
///     − 2cos θ₂      · (λγ₂γ₅ + γ₄γ₅γ₆ + γ₁γ₂γ₃)
///     − 2cos(θ₁ − θ₂) · (λγ₁γ₄ + γ₃γ₄γ₅ + γ₁γ₂γ₆)
/// ```
///
/// A θ-independent eigenvalue exists exactly when all four groups vanish;
/// the expansion is cross-validated against the numerically assembled
/// determinant.
pub fn kagome_charpoly(gamma: &[f64; 6], lambda: f64, theta: FloquetPoint) -> f64 {
    let [g1, g2, g3, g4, g5, g6] = *gamma;
    let sum_sq = g1 * g1 + g2 * g2 + g3 * g3 + g4 * g4 + g5 * g5 + g6 * g6;
    let constant = lambda.powi(3) - lambda * sum_sq - 2.0 * (g2 * g4 * g6 + g1 * g3 * g5);
    let c1 = lambda * g3 * g6 + g2 * g3 * g4 + g1 * g5 * g6;
    let c2 = lambda * g2 * g5 + g4 * g5 * g6 + g1 * g2 * g3;
    let c12 = lambda * g1 * g4 + g3 * g4 * g5 + g1 * g2 * g6;
    constant
        - 2.0 * theta.theta1().cos() * c1
        - 2.0 * theta.theta2().cos() * c2
        - 2.0 * (theta.theta1() - theta.theta2()).cos() * c12
}

/// det(λ·Id − Π(θ)) of the monomeric Super-Kagome adjacency matrix in its
/// factored form
///
/// ```text
/// ((α + λ)² − β²) · (λ⁴ − 2αλ³ − (3α² + 2β²)λ² + (4α³ + 2αβ²)λ
///                    + 4α⁴ + α²β² + β⁴ − 2α²β²·F(θ))
/// ```
///
/// with F = [`f_superkagome`]. The first factor vanishes at the two flat
/// values λ = −α ± β.
pub fn superkagome_charpoly_factored(alpha: f64, beta: f64, lambda: f64, theta: FloquetPoint) -> f64 {
    let f = f_superkagome(theta);
    let quadratic = (alpha + lambda).powi(2) - beta * beta;
    let quartic = lambda.powi(4) - 2.0 * alpha * lambda.powi(3)
        - (3.0 * alpha * alpha + 2.0 * beta * beta) * lambda * lambda
        + (4.0 * alpha.powi(3) + 2.0 * alpha * beta * beta) * lambda
        + 4.0 * alpha.powi(4)
        + alpha * alpha * beta * beta
        + beta.powi(4)
        - 2.0 * alpha * alpha * beta * beta * f;
    quadratic * quartic
}
