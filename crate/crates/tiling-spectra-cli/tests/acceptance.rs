//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured worst-case numbers (run with `--nocapture` to see them).
//!
//! Tolerances are pinned in the constants below; the time limits are asserted
//! on the wall clock of the criterion body.

use std::f64::consts::TAU;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiling_spectra::closed_form::{MonomericKagome, MonomericSuperKagome};
use tiling_spectra::flatband::{
    detect_flat_bands, find_compact_eigenstate, no_flat_band_sampler, FamilyCase,
    OneFlatBandFamily, DEFAULT_DETECTION_SAMPLES, DEFAULT_DETECTION_SEED, DEFAULT_DETECTION_TOL,
};
use tiling_spectra::floquet::{band_structure, laplacian, FloquetPoint};
use tiling_spectra::periodic_graph::{
    kagome_breathing_weights, super_kagome_monomeric_weights, Tiling, WeightAssignment,
};
use tiling_spectra::sweep_alpha_grid;
use tiling_spectra::torus::{build_torus, flat_multiplicity};

fn elapsed_under(start: Instant, limit_s: f64, what: &str) {
    let dt = start.elapsed().as_secs_f64();
    assert!(dt < limit_s, "{what} took {dt:.1}s, limit {limit_s}s");
}

/// 1. Uniform Kagome: spectrum [0, 3/2] with the flat band at 3/2; the K=48
///    numeric sweep reproduces the closed-form edges to 1e-9.
#[test]
fn criterion_01_kagome_uniform_spectrum() {
    let start = Instant::now();
    let g = Tiling::Kagome.build();
    let w = WeightAssignment::uniform(&g, 1.0).unwrap();
    let bs = band_structure(&g, &w, 48).unwrap();

    let report = MonomericKagome::new(0.25, 1.0).unwrap().spectrum();
    assert_eq!(report.bands[0], (0.0, 0.75));
    assert_eq!(report.bands[1], (0.75, 1.5));
    assert_eq!(report.gap_width, 0.0);

    let ranges = bs.band_ranges();
    let numeric = [ranges[0].0, ranges[0].1, ranges[1].0, ranges[1].1, ranges[2].0, ranges[2].1];
    let closed = [0.0, 0.75, 0.75, 1.5, 1.5, 1.5];
    let dev = numeric
        .iter()
        .zip(&closed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(dev <= 1e-9, "band sweep deviation {dev}");

    elapsed_under(start, 1.0, "criterion 1");
    println!("criterion 01 PASS: uniform kagome spectrum [0, 3/2], flat at 3/2, sweep dev {dev:.2e}");
}

/// 2. Kagome gap law: numeric gap equals |6α/μ − 3/2| to 1e-8 across 199
///    α values, with the unique zero at α = μ/4.
#[test]
fn criterion_02_kagome_gap_law() {
    let start = Instant::now();
    let g = Tiling::Kagome.build();
    let alphas = sweep_alpha_grid(Tiling::Kagome, 1.0, 199).unwrap();
    assert_eq!(alphas.len(), 199);

    let mut worst = 0.0f64;
    let mut zeros = Vec::new();
    for &alpha in &alphas {
        let w = kagome_breathing_weights(&g, alpha, 0.5 - alpha).unwrap();
        let bs = band_structure(&g, &w, 12).unwrap();
        let numeric_gap = (0..2).map(|b| bs.gap_above(b)).fold(0.0f64, f64::max);
        let law = (6.0 * alpha - 1.5).abs();
        worst = worst.max((numeric_gap - law).abs());
        if numeric_gap <= 1e-10 {
            zeros.push(alpha);
        }
    }
    assert!(worst <= 1e-8, "gap law deviation {worst}");
    assert_eq!(zeros, vec![0.25], "unique gap zero at mu/4");

    elapsed_under(start, 10.0, "criterion 2");
    println!("criterion 02 PASS: kagome gap law over 199 alphas, worst dev {worst:.2e}, unique zero at 1/4");
}

/// 3. Kagome classification: 200 random constant-vertex-weight non-monomeric
///    draws show no flat band; 200 monomeric draws show exactly one at
///    3/2 ± 1e-9.
#[test]
fn criterion_03_kagome_classification() {
    let start = Instant::now();
    let g = Tiling::Kagome.build();
    let trials = 200;

    let space = g.constant_weight_parametrization(1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC3);
    for _ in 0..trials {
        let point = space.sample_positive(&mut rng, 0.25, 1000).unwrap();
        let w = WeightAssignment::from_values(&g, point).unwrap();
        if g.is_monomeric(&w).unwrap() {
            continue;
        }
        let report =
            detect_flat_bands(&g, &w, DEFAULT_DETECTION_SAMPLES, DEFAULT_DETECTION_TOL, DEFAULT_DETECTION_SEED)
                .unwrap();
        assert!(report.is_empty(), "flat band on non-monomeric draw: {:?}", report.bands);
    }

    let mut worst = 0.0f64;
    for _ in 0..trials {
        let alpha = rng.random_range(0.02..0.48);
        let w = kagome_breathing_weights(&g, alpha, 0.5 - alpha).unwrap();
        let report =
            detect_flat_bands(&g, &w, DEFAULT_DETECTION_SAMPLES, DEFAULT_DETECTION_TOL, DEFAULT_DETECTION_SEED)
                .unwrap();
        assert_eq!(report.len(), 1);
        worst = worst.max((report.bands[0].energy - 1.5).abs());
    }
    assert!(worst <= 1e-9);

    elapsed_under(start, 30.0, "criterion 3");
    println!("criterion 03 PASS: kagome classification on 2x{trials} draws, worst flat energy dev {worst:.2e}");
}

/// 4. Super-Kagome spectrum across 199 α values (including α = 2μ/7): band
///    edges match the closed form to 1e-8, flat bands detected to 1e-9, and
///    the numeric gap vanishes (≤ 1e-10) exactly at the on-grid 2μ/7.
#[test]
fn criterion_04_super_kagome_spectrum_sweep() {
    let start = Instant::now();
    let g = Tiling::SuperKagome.build();
    let alphas = sweep_alpha_grid(Tiling::SuperKagome, 1.0, 199).unwrap();
    assert_eq!(alphas.len(), 199);
    assert!(alphas.iter().any(|&a| (a - 2.0 / 7.0).abs() < 1e-15));

    let mut worst_edge = 0.0f64;
    let mut worst_flat = 0.0f64;
    let mut zeros = Vec::new();
    for &alpha in &alphas {
        let s = MonomericSuperKagome::new(alpha, 1.0).unwrap();
        let report = s.spectrum();
        let w = super_kagome_monomeric_weights(&g, alpha, s.beta()).unwrap();
        let bs = band_structure(&g, &w, 12).unwrap();
        let ranges = bs.band_ranges();

        // sorted slots: [λ₁, λ₂, flat_low, λ₄, λ₅, flat_high]
        let numeric = [ranges[0].0, ranges[1].1, ranges[3].0, ranges[5].1];
        let closed = [report.bands[0].0, report.bands[0].1, report.bands[1].0, report.bands[1].1];
        let dev = numeric
            .iter()
            .zip(&closed)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        worst_edge = worst_edge.max(dev);

        let flats = detect_flat_bands(
            &g,
            &w,
            DEFAULT_DETECTION_SAMPLES,
            DEFAULT_DETECTION_TOL,
            DEFAULT_DETECTION_SEED,
        )
        .unwrap();
        assert_eq!(flats.len(), 2, "alpha {alpha}");
        worst_flat = worst_flat
            .max((flats.bands[0].energy - 3.0 * alpha).abs())
            .max((flats.bands[1].energy - (2.0 - alpha)).abs());

        let numeric_gap = (0..5).map(|b| bs.gap_above(b)).fold(0.0f64, f64::max);
        if numeric_gap <= 1e-10 {
            zeros.push(alpha);
        }
    }
    assert!(worst_edge <= 1e-8, "band edge deviation {worst_edge}");
    assert!(worst_flat <= 1e-9, "flat energy deviation {worst_flat}");
    assert_eq!(zeros.len(), 1);
    assert!((zeros[0] - 2.0 / 7.0).abs() < 1e-15, "gap zero at {}", zeros[0]);

    elapsed_under(start, 20.0, "criterion 4");
    println!(
        "criterion 04 PASS: super-kagome sweep, worst edge dev {worst_edge:.2e}, worst flat dev {worst_flat:.2e}, gap zero at 2/7"
    );
}

/// 5. Super-Kagome endpoint law: 3α/μ = max I₁ for α < 2μ/7 and min I₂ for
///    α > 2μ/7 (to 1e-10); 2 − α/μ = max I₂ always.
#[test]
fn criterion_05_super_kagome_endpoint_law() {
    let start = Instant::now();
    let alphas = sweep_alpha_grid(Tiling::SuperKagome, 1.0, 199).unwrap();
    let mut worst = 0.0f64;
    for &alpha in &alphas {
        let report = MonomericSuperKagome::new(alpha, 1.0).unwrap().spectrum();
        let low = 3.0 * alpha;
        if alpha < 2.0 / 7.0 - 1e-15 {
            worst = worst.max((low - report.bands[0].1).abs());
        } else if alpha > 2.0 / 7.0 + 1e-15 {
            worst = worst.max((low - report.bands[1].0).abs());
        } else {
            worst = worst.max((low - report.bands[0].1).abs()).max((low - report.bands[1].0).abs());
        }
        worst = worst.max((2.0 - alpha - report.bands[1].1).abs());
    }
    assert!(worst <= 1e-10, "endpoint law deviation {worst}");

    elapsed_under(start, 5.0, "criterion 5");
    println!("criterion 05 PASS: flat-band endpoint laws across the sweep, worst dev {worst:.2e}");
}

/// 6. One-flat-band families: 25 points on each of the six components give
///    positive constant-vertex-weight assignments with exactly one flat band
///    at the family energy; the frozen MPP point reproduces its energy; the
///    two (+ − −) branches meet only at the known intersection.
#[test]
fn criterion_06_one_flat_band_families() {
    let start = Instant::now();
    let g = Tiling::SuperKagome.build();
    let mu = 1.0;

    let mut worst_energy = 0.0f64;
    let mut worst_mu = 0.0f64;
    for family in OneFlatBandFamily::all(mu).unwrap() {
        let (lo, hi) = family.parameter_range();
        for i in 1..=25 {
            let t = lo + (hi - lo) * i as f64 / 26.0;
            let point = family.weights(t).unwrap();
            assert!(point.reduced.iter().all(|&x| x > 0.0));
            let w = point.weight_assignment(&g).unwrap();
            let mu_found = g.constant_vertex_weight(&w).unwrap().expect("constant vertex weight");
            worst_mu = worst_mu.max((mu_found - mu).abs());
            let report = detect_flat_bands(
                &g,
                &w,
                DEFAULT_DETECTION_SAMPLES,
                DEFAULT_DETECTION_TOL,
                DEFAULT_DETECTION_SEED,
            )
            .unwrap();
            assert_eq!(report.len(), 1, "{:?} rot {} t={t}", family.case, family.rotation);
            worst_energy = worst_energy.max((report.bands[0].energy - point.energy).abs());
        }
    }
    assert!(worst_mu <= 1e-12, "vertex weight residual {worst_mu}");
    assert!(worst_energy <= 1e-9, "flat energy deviation {worst_energy}");

    // frozen oracle value at μ=1, α′=0.75
    let mpp = OneFlatBandFamily::new(FamilyCase::Mpp, 0, mu).unwrap();
    let frozen = mpp.weights(0.75).unwrap();
    assert!((frozen.energy - 1.68127069).abs() <= 1e-8);

    // the PmmA and PmmB branches agree at (α′, α″) = (μ/5, 2μ/5) and nowhere
    // else on a 200-point grid of each branch
    let pmm_a = OneFlatBandFamily::new(FamilyCase::PmmA, 0, mu).unwrap();
    let pmm_b = OneFlatBandFamily::new(FamilyCase::PmmB, 0, mu).unwrap();
    let pa = pmm_a.weights(0.2).unwrap();
    let pb = pmm_b.weights(0.4).unwrap();
    let exact: f64 = pa
        .reduced
        .iter()
        .zip(&pb.reduced)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    assert!(exact <= 1e-12, "branches meet at the intersection point");

    let grid_a: Vec<f64> = (1..=200).map(|i| 0.5 * i as f64 / 201.0).collect();
    let grid_b: Vec<f64> = (1..=200).map(|i| i as f64 / 201.0).collect();
    let points_a: Vec<[f64; 6]> = grid_a.iter().map(|&t| pmm_a.weights(t).unwrap().reduced).collect();
    let points_b: Vec<[f64; 6]> = grid_b.iter().map(|&t| pmm_b.weights(t).unwrap().reduced).collect();
    for (&ta, a) in grid_a.iter().zip(&points_a) {
        for (&tb, b) in grid_b.iter().zip(&points_b) {
            let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
            if d < 0.01 {
                assert!(
                    (ta - 0.2).abs() < 0.05 && (tb - 0.4).abs() < 0.05,
                    "near-coincidence away from the intersection: t_a={ta} t_b={tb} d={d}"
                );
            }
        }
    }

    elapsed_under(start, 60.0, "criterion 6");
    println!(
        "criterion 06 PASS: 9 family branches x 25 points, worst energy dev {worst_energy:.2e}, single branch intersection"
    );
}

/// 7. Floquet–torus oracle: for random constant-vertex-weight draws on both
///    lattices and M ∈ {3,4,5,6}, the sorted torus spectrum equals the sorted
///    union of grid Floquet spectra to 1e-9; flat multiplicities lie in
///    [M², M² + 2].
#[test]
fn criterion_07_floquet_torus_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC7);
    let mut worst = 0.0f64;
    for tiling in [Tiling::Kagome, Tiling::SuperKagome] {
        let g = tiling.build();
        let space = g.constant_weight_parametrization(1.0).unwrap();
        for m in 3..=6 {
            let point = space.sample_positive(&mut rng, 0.25, 1000).unwrap();
            let w = WeightAssignment::from_values(&g, point).unwrap();
            let torus = build_torus(&g, &w, m).unwrap().spectrum();
            let mut union = Vec::with_capacity(torus.len());
            for i in 0..m {
                for j in 0..m {
                    let theta =
                        FloquetPoint::new(TAU * i as f64 / m as f64, TAU * j as f64 / m as f64);
                    union.extend(laplacian(&g, &w, theta).unwrap().eigenvalues());
                }
            }
            union.sort_by(f64::total_cmp);
            assert_eq!(torus.len(), union.len());
            let dev = torus
                .iter()
                .zip(&union)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            worst = worst.max(dev);

            // flat multiplicities on monomeric weights
            let alpha = rng.random_range(0.05..0.45);
            let (w, flats): (WeightAssignment, Vec<f64>) = match tiling {
                Tiling::Kagome => {
                    (kagome_breathing_weights(&g, alpha, 0.5 - alpha).unwrap(), vec![1.5])
                }
                Tiling::SuperKagome => (
                    super_kagome_monomeric_weights(&g, alpha, 1.0 - 2.0 * alpha).unwrap(),
                    vec![3.0 * alpha, 2.0 - alpha],
                ),
                _ => unreachable!(),
            };
            let spectrum = build_torus(&g, &w, m).unwrap().spectrum();
            for energy in flats {
                let count = flat_multiplicity(&spectrum, energy, 1e-9);
                assert!(
                    count >= m * m && count <= m * m + 2,
                    "{} M={m} E={energy}: multiplicity {count}",
                    g.name()
                );
            }
        }
    }
    assert!(worst <= 1e-9, "torus vs Floquet deviation {worst}");

    elapsed_under(start, 60.0, "criterion 7");
    println!("criterion 07 PASS: torus/Floquet equivalence, worst dev {worst:.2e}, multiplicities in range");
}

/// 8. Compact eigenstates: the uniform Kagome flat band carries a support-6
///    state with residual ≤ 1e-12; monomeric Super-Kagome carries finite
///    states at both flat energies with residual ≤ 1e-10.
#[test]
fn criterion_08_compact_eigenstates() {
    let start = Instant::now();
    let g = Tiling::Kagome.build();
    let w = WeightAssignment::uniform(&g, 1.0).unwrap();
    let state = find_compact_eigenstate(&g, &w, 1.5, 2).unwrap().expect("hexagon state");
    assert_eq!(state.support_size(), 6);
    assert!(state.residual <= 1e-12, "residual {}", state.residual);

    let g = Tiling::SuperKagome.build();
    let (alpha, mu) = (0.3, 1.0);
    let w = super_kagome_monomeric_weights(&g, alpha, mu - 2.0 * alpha).unwrap();
    let mut supports = Vec::new();
    for energy in [3.0 * alpha / mu, 2.0 - alpha / mu] {
        let state = find_compact_eigenstate(&g, &w, energy, 2)
            .unwrap()
            .unwrap_or_else(|| panic!("no state at {energy}"));
        assert!(state.residual <= 1e-10);
        assert!(state.support_size() > 0);
        supports.push(state.support_size());
    }

    elapsed_under(start, 30.0, "criterion 8");
    println!(
        "criterion 08 PASS: kagome support-6 hexagon state; super-kagome supports {:?} at both flat energies",
        supports
    );
}

/// 9. No-flat-band sampling: 100 random positive weight draws on each of the
///    other nine tilings produce no θ-independent adjacency eigenvalue.
#[test]
fn criterion_09_no_flat_bands_elsewhere() {
    let start = Instant::now();
    for tiling in Tiling::WITHOUT_FLAT_BANDS {
        let clean = no_flat_band_sampler(tiling, 100, 0xACC9, 1e-9).unwrap();
        assert!(clean, "{} produced a flat band", tiling.name());
    }
    elapsed_under(start, 120.0, "criterion 9");
    println!("criterion 09 PASS: 9 tilings x 100 draws, no flat bands");
}

/// 10. Determinism: repeated CLI runs with fixed seeds produce byte-identical
///     output (stdout and emitted SVG files).
#[test]
fn criterion_10_cli_determinism() {
    let start = Instant::now();
    let exe = env!("CARGO_BIN_EXE_tiling-spectra");
    let dir = std::env::temp_dir().join("tiling-spectra-acceptance");
    std::fs::create_dir_all(&dir).unwrap();

    let svg_a = dir.join("pd_a.svg");
    let svg_b = dir.join("pd_b.svg");
    type SvgPair<'a> = Option<(&'a std::path::Path, &'a std::path::Path)>;
    let runs: [(&[&str], SvgPair); 4] = [
        (&["spectrum", "--lattice", "kagome", "--alpha", "0.125", "--mu", "1"], None),
        (
            &["flat-bands", "--lattice", "super_kagome", "--alpha", "0.3", "--mu", "1", "--seed", "7"],
            None,
        ),
        (
            &["compact-state", "--lattice", "kagome", "--alpha", "0.25", "--mu", "1", "--energy", "1.5"],
            None,
        ),
        (
            &["phase-diagram", "--lattice", "super_kagome", "--steps", "40"],
            Some((&svg_a, &svg_b)),
        ),
    ];

    for (args, svg) in runs {
        let run = |svg_path: Option<&std::path::Path>| {
            let mut cmd = Command::new(exe);
            cmd.args(args);
            if let Some(path) = svg_path {
                cmd.arg("--svg").arg(path);
            }
            let out = cmd.output().expect("run CLI");
            assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
            out.stdout
        };
        match svg {
            None => {
                let a = run(None);
                let b = run(None);
                assert_eq!(a, b, "stdout differs for {args:?}");
            }
            Some((path_a, path_b)) => {
                let a = run(Some(path_a));
                let b = run(Some(path_b));
                assert_eq!(a, b, "stdout differs for {args:?}");
                let file_a = std::fs::read(path_a).unwrap();
                let file_b = std::fs::read(path_b).unwrap();
                assert!(!file_a.is_empty());
                assert_eq!(file_a, file_b, "SVG bytes differ");
            }
        }
    }

    elapsed_under(start, 60.0, "criterion 10");
    println!("criterion 10 PASS: byte-identical CLI output across repeated runs");
}
