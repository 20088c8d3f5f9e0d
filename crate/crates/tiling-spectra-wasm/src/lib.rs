//! Browser bindings for the tiling-spectra demo page.
//!
//! Three operations back the interactive page in `www/`: the band-gap phase
//! diagram as an SVG string (with a cursor line at the current α), the
//! closed-form spectrum report as JSON, and the dispersion along a θ path
//! through the band extrema as JSON.
//!
//! The `*_impl` functions are plain Rust (unit-tested natively); the
//! `#[wasm_bindgen]` wrappers only translate errors for JavaScript.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tiling_spectra::closed_form::spectrum_report;
use tiling_spectra::export;
use tiling_spectra::floquet::{laplacian, FloquetPoint};
use tiling_spectra::periodic_graph::{
    kagome_breathing_weights, super_kagome_monomeric_weights, Tiling,
};
use tiling_spectra::sweep_alpha_grid;

fn parse_lattice(name: &str) -> Result<Tiling, String> {
    let tiling = Tiling::from_name(name).map_err(|e| e.to_string())?;
    if !tiling.has_flat_band_weights() {
        return Err(format!("demo supports kagome and super_kagome, got {name}"));
    }
    Ok(tiling)
}

/// Phase diagram as an SVG string; `marker_alpha` draws the cursor line.
pub fn phase_diagram_svg_impl(
    lattice: &str,
    mu: f64,
    steps: u32,
    marker_alpha: f64,
) -> Result<String, String> {
    let tiling = parse_lattice(lattice)?;
    let alphas = sweep_alpha_grid(tiling, mu, steps.max(8) as usize).map_err(|e| e.to_string())?;
    let rows = tiling_spectra::closed_form::phase_diagram(tiling, mu, &alphas)
        .map_err(|e| e.to_string())?;
    Ok(export::phase_diagram_svg(&rows, mu, Some(marker_alpha)))
}

#[derive(Serialize)]
struct SpectrumOut {
    lattice: String,
    alpha: f64,
    mu: f64,
    bands: [(f64, f64); 2],
    flats: Vec<f64>,
    gap: f64,
}

/// Closed-form spectrum of the monomeric lattice at (α, μ) as JSON.
pub fn spectrum_json_impl(lattice: &str, alpha: f64, mu: f64) -> Result<String, String> {
    let tiling = parse_lattice(lattice)?;
    let report = spectrum_report(tiling, alpha, mu).map_err(|e| e.to_string())?;
    let out = SpectrumOut {
        lattice: tiling.name().to_string(),
        alpha,
        mu,
        bands: report.bands,
        flats: report.flat_bands.iter().map(|f| f.energy).collect(),
        gap: report.gap_width,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct DispersionOut {
    /// Path parameter in [0, 1] per sample.
    t: Vec<f64>,
    /// Corner positions of the path in t units.
    corners: Vec<f64>,
    /// levels[band][sample], sorted ascending per sample.
    levels: Vec<Vec<f64>>,
    flats: Vec<f64>,
}

/// Laplacian eigenvalues along a closed θ path through the band extrema
/// (Γ → F-minimum → (π, π) → Γ), as JSON.
pub fn dispersion_json_impl(
    lattice: &str,
    alpha: f64,
    mu: f64,
    samples: u32,
) -> Result<String, String> {
    use std::f64::consts::PI;
    let tiling = parse_lattice(lattice)?;
    let graph = tiling.build();
    let weights = match tiling {
        Tiling::Kagome => kagome_breathing_weights(&graph, alpha, mu / 2.0 - alpha),
        Tiling::SuperKagome => super_kagome_monomeric_weights(&graph, alpha, mu - 2.0 * alpha),
        _ => unreachable!(),
    }
    .map_err(|e| e.to_string())?;

    let f_min = match tiling {
        Tiling::Kagome => (2.0 * PI / 3.0, 4.0 * PI / 3.0),
        _ => (2.0 * PI / 3.0, 2.0 * PI / 3.0),
    };
    let corners = [(0.0, 0.0), f_min, (PI, PI), (0.0, 0.0)];
    let per_segment = samples.clamp(30, 2000) as usize / 3;

    let n = graph.n_vertices();
    let mut t_values = Vec::new();
    let mut levels = vec![Vec::new(); n];
    for segment in 0..3 {
        let (a, b) = (corners[segment], corners[segment + 1]);
        for i in 0..=per_segment {
            if segment > 0 && i == 0 {
                continue; // corner already emitted by the previous segment
            }
            let s = i as f64 / per_segment as f64;
            let theta = FloquetPoint::new(a.0 + s * (b.0 - a.0), a.1 + s * (b.1 - a.1));
            let eigs = laplacian(&graph, &weights, theta)
                .map_err(|e| e.to_string())?
                .eigenvalues();
            t_values.push((segment as f64 + s) / 3.0);
            for (band, &e) in eigs.iter().enumerate() {
                levels[band].push(e);
            }
        }
    }

    let flats = match tiling {
        Tiling::Kagome => vec![1.5],
        _ => vec![3.0 * alpha / mu, 2.0 - alpha / mu],
    };
    let out = DispersionOut {
        t: t_values,
        corners: vec![0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0],
        levels,
        flats,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn phase_diagram_svg(lattice: &str, mu: f64, steps: u32, marker_alpha: f64) -> Result<String, JsError> {
    phase_diagram_svg_impl(lattice, mu, steps, marker_alpha).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn spectrum_json(lattice: &str, alpha: f64, mu: f64) -> Result<String, JsError> {
    spectrum_json_impl(lattice, alpha, mu).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn dispersion_json(lattice: &str, alpha: f64, mu: f64, samples: u32) -> Result<String, JsError> {
    dispersion_json_impl(lattice, alpha, mu, samples).map_err(|e| JsError::new(&e))
}
