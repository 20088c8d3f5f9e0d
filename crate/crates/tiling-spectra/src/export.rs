//! Deterministic CSV and SVG emission.
//!
//! Every number is printed with 12 significant digits in scientific
//! notation, so repeated runs produce byte-identical files.

use std::fmt::Write as _;

use crate::closed_form::PhaseDiagramRow;
use crate::flatband::{CompactState, FlatBandReport};
use crate::floquet::BandStructure;

/// 12 significant digits, scientific notation.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// `theta1,theta2,level_index,eigenvalue`, rows lexicographic in
/// (grid index, level).
pub fn band_structure_csv(bs: &BandStructure) -> String {
    let mut out = String::from("theta1,theta2,level_index,eigenvalue\n");
    for (grid_index, levels) in bs.levels().iter().enumerate() {
        let theta = bs.theta(grid_index);
        for (level, &value) in levels.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt12(theta.theta1()),
                fmt12(theta.theta2()),
                level,
                fmt12(value)
            );
        }
    }
    out
}

/// `energy,multiplicity,max_deviation`
pub fn flat_band_csv(report: &FlatBandReport) -> String {
    let mut out = String::from("energy,multiplicity,max_deviation\n");
    for band in &report.bands {
        let _ = writeln!(out, "{},{},{}", fmt12(band.energy), band.multiplicity, fmt12(band.max_deviation));
    }
    out
}

/// `cell_b1,cell_b2,vertex,amplitude_re,amplitude_im` (the operator is real
/// in the vertex basis, so the imaginary part is always zero).
pub fn compact_state_csv(state: &CompactState) -> String {
    let mut out = String::from("cell_b1,cell_b2,vertex,amplitude_re,amplitude_im\n");
    for &(b1, b2, vertex, value) in &state.amplitudes {
        let _ = writeln!(out, "{},{},{},{},{}", b1, b2, vertex, fmt12(value), fmt12(0.0));
    }
    out
}

/// `alpha,i1_lo,i1_hi,i2_lo,i2_hi,flat1,flat2,gap`; `flat2` stays empty for
/// the Kagome lattice.
pub fn phase_diagram_csv(rows: &[PhaseDiagramRow]) -> String {
    let mut out = String::from("alpha,i1_lo,i1_hi,i2_lo,i2_hi,flat1,flat2,gap\n");
    for row in rows {
        let flat2 = row.flats.get(1).map(|&f| fmt12(f)).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt12(row.alpha),
            fmt12(row.i1.0),
            fmt12(row.i1.1),
            fmt12(row.i2.0),
            fmt12(row.i2.1),
            fmt12(row.flats[0]),
            flat2,
            fmt12(row.gap)
        );
    }
    out
}

/// `index,eigenvalue`
pub fn spectrum_csv(eigenvalues: &[f64]) -> String {
    let mut out = String::from("index,eigenvalue\n");
    for (i, &e) in eigenvalues.iter().enumerate() {
        let _ = writeln!(out, "{},{}", i, fmt12(e));
    }
    out
}

/// Phase-diagram figure: energy on the x-axis, α rising along the y-axis,
/// the two bands as filled regions and the flat bands as dashed polylines.
/// Fixed 800×500 canvas; bytes are deterministic for fixed input.
/// `marker_alpha` draws a horizontal cursor line, used by the browser demo.
pub fn phase_diagram_svg(rows: &[PhaseDiagramRow], mu: f64, marker_alpha: Option<f64>) -> String {
    const WIDTH: f64 = 800.0;
    const HEIGHT: f64 = 500.0;
    const MARGIN_LEFT: f64 = 60.0;
    const MARGIN_RIGHT: f64 = 20.0;
    const MARGIN_TOP: f64 = 20.0;
    const MARGIN_BOTTOM: f64 = 40.0;

    let e_max = rows
        .iter()
        .map(|r| r.i2.1)
        .fold(0.0f64, f64::max)
        .max(1e-9);
    let a_max = mu / 2.0;
    let x = |energy: f64| MARGIN_LEFT + (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) * energy / e_max;
    let y = |alpha: f64| HEIGHT - MARGIN_BOTTOM - (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM) * alpha / a_max;

    let polygon = |points: &[(f64, f64)]| {
        points
            .iter()
            .map(|&(px, py)| format!("{:.2},{:.2}", px, py))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");

    // band regions: walk up one edge and down the other
    for band in 0..2 {
        let mut points: Vec<(f64, f64)> = Vec::with_capacity(2 * rows.len());
        for row in rows {
            let (lo, _) = if band == 0 { row.i1 } else { row.i2 };
            points.push((x(lo), y(row.alpha)));
        }
        for row in rows.iter().rev() {
            let (_, hi) = if band == 0 { row.i1 } else { row.i2 };
            points.push((x(hi), y(row.alpha)));
        }
        let _ = writeln!(svg, "<polygon points=\"{}\" fill=\"#f6b8b8\" stroke=\"none\"/>", polygon(&points));
    }

    // flat bands as dashed lines
    let n_flats = rows.first().map(|r| r.flats.len()).unwrap_or(0);
    for flat in 0..n_flats {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (x(r.flats[flat]), y(r.alpha))).collect();
        let _ = writeln!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#c62828\" stroke-width=\"2\" stroke-dasharray=\"7,5\"/>",
            polygon(&pts)
        );
    }

    // axes
    let _ = writeln!(
        svg,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1.5\"/>",
        MARGIN_LEFT,
        y(0.0),
        WIDTH - MARGIN_RIGHT,
        y(0.0)
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1.5\"/>",
        MARGIN_LEFT,
        y(0.0),
        MARGIN_LEFT,
        y(a_max)
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\">energy</text>",
        (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / 2.0 + MARGIN_LEFT - 20.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"8\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"14\">α</text>",
        (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM) / 2.0 + MARGIN_TOP
    );
    for (energy, label) in [(0.0, "0"), (e_max / 2.0, "mid"), (e_max, "max")] {
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            x(energy),
            HEIGHT - MARGIN_BOTTOM + 18.0,
            if label == "mid" { fmt_axis(e_max / 2.0) } else if label == "max" { fmt_axis(e_max) } else { "0".to_string() }
        );
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">μ/2</text>",
        MARGIN_LEFT - 6.0,
        y(a_max) + 4.0
    );

    if let Some(alpha) = marker_alpha {
        if alpha > 0.0 && alpha < a_max {
            let _ = writeln!(
                svg,
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#1565c0\" stroke-width=\"1.5\" stroke-dasharray=\"3,3\"/>",
                MARGIN_LEFT,
                y(alpha),
                WIDTH - MARGIN_RIGHT,
                y(alpha)
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}

fn fmt_axis(x: f64) -> String {
    format!("{x:.3}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{interior_alpha_grid, phase_diagram};
    use crate::periodic_graph::{Tiling, WeightAssignment};

    #[test]
    fn fmt12_has_twelve_significant_digits() {
        assert_eq!(fmt12(1.5), "1.50000000000e0");
        assert_eq!(fmt12(0.0), "0.00000000000e0");
        assert_eq!(fmt12(-0.125), "-1.25000000000e-1");
    }

    #[test]
    fn csv_headers_and_row_counts() {
        let g = Tiling::Kagome.build();
        let w = WeightAssignment::uniform(&g, 1.0).unwrap();
        let bs = crate::floquet::band_structure(&g, &w, 3).unwrap();
        let csv = band_structure_csv(&bs);
        assert!(csv.starts_with("theta1,theta2,level_index,eigenvalue\n"));
        assert_eq!(csv.lines().count(), 1 + 9 * 3);

        let rows = phase_diagram(Tiling::Kagome, 1.0, &interior_alpha_grid(1.0, 9)).unwrap();
        let csv = phase_diagram_csv(&rows);
        assert_eq!(csv.lines().count(), 10);
        // kagome rows leave flat2 empty
        assert!(csv.lines().nth(1).unwrap().contains(",,"));

        let csv = spectrum_csv(&[0.0, 0.25, 1.5]);
        assert_eq!(csv, "index,eigenvalue\n0,0.00000000000e0\n1,2.50000000000e-1\n2,1.50000000000e0\n");

        let state = crate::flatband::find_compact_eigenstate(&g, &w, 1.5, 2).unwrap().unwrap();
        let csv = compact_state_csv(&state);
        assert!(csv.starts_with("cell_b1,cell_b2,vertex,amplitude_re,amplitude_im\n"));
        assert_eq!(csv.lines().count(), 1 + state.support_size());
    }

    #[test]
    fn svg_output_is_deterministic() {
        let rows = phase_diagram(Tiling::SuperKagome, 1.0, &interior_alpha_grid(1.0, 50)).unwrap();
        let a = phase_diagram_svg(&rows, 1.0, Some(0.3));
        let b = phase_diagram_svg(&rows, 1.0, Some(0.3));
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
    }
}
