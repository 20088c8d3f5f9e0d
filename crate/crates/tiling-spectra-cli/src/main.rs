//! Command-line front end for the tiling-spectra toolkit.
//!
//! Exit codes are a stable contract:
//!   0 success, 2 configuration error, 3 closed-form/numeric cross-check
//!   failure, 4 `--expect` mismatch, 5 verification-suite failure,
//!   6 no compact state found with `--expect-found`.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tiling_spectra::closed_form::{self, spectrum_report};
use tiling_spectra::export;
use tiling_spectra::flatband::{
    self, detect_flat_bands, find_compact_eigenstate, no_flat_band_sampler,
    superkagome_condition_residuals, verify_flat_band_classification, FamilyCase,
    OneFlatBandFamily,
};
use tiling_spectra::floquet::band_structure;
use tiling_spectra::periodic_graph::{
    self, builtin, kagome_breathing_weights, load_graph, load_weights, save_graph,
    super_kagome_monomeric_weights, PeriodicGraph, Tiling, WeightAssignment,
};
use tiling_spectra::sweep_alpha_grid;
use tiling_spectra::torus::{build_torus, flat_multiplicity};

const EXIT_CONFIG: u8 = 2;
const EXIT_CROSSCHECK: u8 = 3;
const EXIT_EXPECTATION: u8 = 4;
const EXIT_VERIFY: u8 = 5;
const EXIT_COMPACT: u8 = 6;

#[derive(Parser)]
#[command(
    name = "tiling-spectra",
    version,
    about = "Band structures, flat bands and gap phase diagrams of weighted Laplacians on Archimedean tilings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form spectrum of a monomeric lattice, cross-checked against a
    /// numeric Brillouin sweep; or the numeric spectrum of arbitrary weights
    Spectrum(SpectrumArgs),
    /// Detect θ-independent eigenvalues (flat bands)
    FlatBands(FlatBandsArgs),
    /// Sweep α and emit the band-gap phase diagram as CSV (and optionally SVG)
    PhaseDiagram(PhaseDiagramArgs),
    /// Run the verification suites (classification, families, torus, no-flat-band)
    Verify(VerifyArgs),
    /// Search for a compactly supported eigenstate at a given energy
    CompactState(CompactStateArgs),
    /// Write a built-in lattice to a graph file
    ExportGraph(ExportGraphArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct GraphSource {
    /// Built-in lattice name (kagome, super_kagome, square, triangular,
    /// hexagonal, 3344, 33434, 488, 3464, 4612, 3336)
    #[arg(long)]
    lattice: Option<String>,
    /// Graph file (JSON) instead of a built-in lattice
    #[arg(long, conflicts_with = "lattice")]
    graph_file: Option<PathBuf>,
}

impl GraphSource {
    fn load(&self) -> Result<PeriodicGraph, CliError> {
        match (&self.lattice, &self.graph_file) {
            (Some(name), None) => builtin(name).config(),
            (None, Some(path)) => load_graph(path).config(),
            _ => Err(CliError::config("exactly one of --lattice or --graph-file is required")),
        }
    }
}

#[derive(Args)]
struct WeightSource {
    /// Monomeric parameter α (with --mu; only for kagome / super_kagome)
    #[arg(long)]
    alpha: Option<f64>,
    /// Constant vertex weight μ
    #[arg(long)]
    mu: Option<f64>,
    /// Weight file: JSON object mapping class label to positive value
    #[arg(long)]
    weights_file: Option<PathBuf>,
    /// One-flat-band family (super_kagome): mpp, pmm_a or pmm_b
    #[arg(long)]
    family: Option<String>,
    /// Family rotation (0, 1 or 2)
    #[arg(long, default_value_t = 0)]
    rotation: u8,
    /// Family parameter, strictly inside the family's open interval
    #[arg(long)]
    t: Option<f64>,
}

impl WeightSource {
    /// Resolve weights on `graph`. Returns the monomeric α when that route
    /// was taken (enabling the closed-form path).
    fn resolve(&self, graph: &PeriodicGraph) -> Result<(WeightAssignment, Option<f64>), CliError> {
        let sources = [self.alpha.is_some(), self.weights_file.is_some(), self.family.is_some()];
        if sources.iter().filter(|&&s| s).count() != 1 {
            return Err(CliError::config(
                "exactly one weight source is required: --alpha/--mu, --weights-file, or --family/--t/--mu",
            ));
        }
        if let Some(alpha) = self.alpha {
            let mu = self.mu.unwrap_or(1.0);
            if !(alpha > 0.0 && alpha < mu / 2.0) {
                return Err(CliError::config(format!(
                    "alpha = {alpha} outside the open interval (0, {})",
                    mu / 2.0
                )));
            }
            // the positional class assignment below only makes sense on the
            // unmodified built-in, not on a file that merely reuses its name
            let tiling = Tiling::from_name(graph.name());
            let weights = match tiling {
                Ok(t @ (Tiling::Kagome | Tiling::SuperKagome)) if *graph == t.build() => match t {
                    Tiling::Kagome => kagome_breathing_weights(graph, alpha, mu / 2.0 - alpha),
                    _ => super_kagome_monomeric_weights(graph, alpha, mu - 2.0 * alpha),
                },
                _ => {
                    return Err(CliError::config(
                        "--alpha/--mu weights exist only for the kagome and super_kagome built-ins",
                    ))
                }
            };
            return Ok((weights.config()?, Some(alpha)));
        }
        if let Some(path) = &self.weights_file {
            return Ok((load_weights(graph, path).config()?, None));
        }
        let case = FamilyCase::parse(self.family.as_ref().expect("checked above")).config()?;
        let t = self
            .t
            .ok_or_else(|| CliError::config("--family requires the parameter --t"))?;
        let mu = self.mu.unwrap_or(1.0);
        if !matches!(Tiling::from_name(graph.name()), Ok(Tiling::SuperKagome)) {
            return Err(CliError::config("--family weights exist only on super_kagome"));
        }
        let family = OneFlatBandFamily::new(case, self.rotation, mu).config()?;
        let point = family.weights(t).config()?;
        Ok((point.weight_assignment(graph).config()?, None))
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    graph: GraphSource,
    #[command(flatten)]
    weights: WeightSource,
    /// Brillouin grid size for the numeric sweep (multiples of 3 sample the
    /// band extrema exactly)
    #[arg(long, default_value_t = 48)]
    grid: usize,
    /// Cross-check tolerance between closed form and numeric sweep
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Skip the closed-form/numeric cross-check
    #[arg(long)]
    no_crosscheck: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FlatBandsArgs {
    #[command(flatten)]
    graph: GraphSource,
    #[command(flatten)]
    weights: WeightSource,
    /// Number of pseudo-random θ samples
    #[arg(long, default_value_t = flatband::DEFAULT_DETECTION_SAMPLES)]
    samples: usize,
    /// Detection tolerance on Laplacian energies
    #[arg(long, default_value_t = flatband::DEFAULT_DETECTION_TOL)]
    tol: f64,
    #[arg(long, default_value_t = flatband::DEFAULT_DETECTION_SEED)]
    seed: u64,
    /// Assert the number of detected flat bands
    #[arg(long)]
    expect: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PhaseDiagramArgs {
    /// kagome or super_kagome
    #[arg(long)]
    lattice: String,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Number of interior α samples
    #[arg(long, default_value_t = 199)]
    steps: usize,
    /// Also write the figure-style SVG to this path
    #[arg(long)]
    svg: Option<PathBuf>,
    /// CSV output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// all, classification, families, torus or no-flat-band
    #[arg(long, default_value = "all")]
    suite: String,
    /// Trials per sampled check (suite-specific defaults when absent)
    #[arg(long)]
    trials: Option<usize>,
    /// Torus size; the torus suite runs M ∈ {3,…,6} when absent
    #[arg(long = "M")]
    m: Option<usize>,
    #[arg(long, default_value_t = flatband::DEFAULT_DETECTION_SEED)]
    seed: u64,
    #[arg(long, default_value_t = flatband::DEFAULT_DETECTION_TOL)]
    tol: f64,
}

#[derive(Args)]
struct CompactStateArgs {
    #[command(flatten)]
    graph: GraphSource,
    #[command(flatten)]
    weights: WeightSource,
    /// Target energy
    #[arg(long)]
    energy: f64,
    /// Chebyshev cell radius of the restriction (support fits in radius − 1)
    #[arg(long, default_value_t = 2)]
    radius: usize,
    /// Exit with code 6 when no state is found
    #[arg(long)]
    expect_found: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportGraphArgs {
    #[arg(long)]
    lattice: String,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self { code: EXIT_CONFIG, message: message.into() }
    }

    fn with_code(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

trait IntoConfigError<T> {
    fn config(self) -> Result<T, CliError>;
}

impl<T> IntoConfigError<T> for tiling_spectra::Result<T> {
    fn config(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::config(e.to_string()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::FlatBands(args) => cmd_flat_bands(args),
        Command::PhaseDiagram(args) => cmd_phase_diagram(args),
        Command::Verify(args) => cmd_verify(args),
        Command::CompactState(args) => cmd_compact_state(args),
        Command::ExportGraph(args) => cmd_export_graph(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fmt12(x: f64) -> String {
    export::fmt12(x)
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), CliError> {
    let graph = args.graph.load()?;
    let (weights, monomeric_alpha) = args.weights.resolve(&graph)?;
    let tiling = Tiling::from_name(graph.name()).ok();

    // closed-form route for monomeric built-ins
    if let (Some(alpha), Some(tiling)) = (monomeric_alpha, tiling) {
        let mu = graph.constant_vertex_weight(&weights).config()?.expect("monomeric weights");
        let report = spectrum_report(tiling, alpha, mu).config()?;

        let mut crosscheck_dev = f64::NAN;
        if !args.no_crosscheck {
            let bs = band_structure(&graph, &weights, args.grid).config()?;
            let n = graph.n_vertices();
            // numeric counterparts of the four band edges: min/max of the
            // sorted levels bounding each interval (flat levels included)
            let numeric = match tiling {
                Tiling::Kagome => [
                    bs.band_ranges()[0].0,
                    bs.band_ranges()[1].0,
                    bs.band_ranges()[n - 1].1,
                    bs.band_ranges()[0].1,
                ],
                // sorted slots: [λ₁, λ₂, flat_low, λ₄, λ₅, flat_high]; λ₂
                // attains max I₁ and λ₄ attains min I₂ (both at the Γ point)
                Tiling::SuperKagome => [
                    bs.band_ranges()[0].0,
                    bs.band_ranges()[3].0,
                    bs.band_ranges()[n - 1].1,
                    bs.band_ranges()[1].1,
                ],
                _ => unreachable!(),
            };
            let closed = [
                report.bands[0].0,
                report.bands[1].0,
                report.bands[1].1,
                report.bands[0].1,
            ];
            crosscheck_dev = numeric
                .iter()
                .zip(&closed)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            if crosscheck_dev > args.tol {
                return Err(CliError::with_code(
                    EXIT_CROSSCHECK,
                    format!(
                        "closed-form vs numeric band edges deviate by {} (tolerance {})",
                        fmt12(crosscheck_dev),
                        fmt12(args.tol)
                    ),
                ));
            }
        }

        let text = match args.format {
            Format::Csv => {
                let mut s = String::from(
                    "lattice,alpha,mu,i1_lo,i1_hi,i2_lo,i2_hi,flat1,flat2,gap,crosscheck_max_dev\n",
                );
                let flat2 = report.flat_bands.get(1).map(|f| fmt12(f.energy)).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    graph.name(),
                    fmt12(alpha),
                    fmt12(mu),
                    fmt12(report.bands[0].0),
                    fmt12(report.bands[0].1),
                    fmt12(report.bands[1].0),
                    fmt12(report.bands[1].1),
                    fmt12(report.flat_bands[0].energy),
                    flat2,
                    fmt12(report.gap_width),
                    if args.no_crosscheck { String::new() } else { fmt12(crosscheck_dev) },
                );
                s
            }
            Format::Json => {
                let value = serde_json::json!({
                    "lattice": graph.name(),
                    "alpha": alpha,
                    "mu": mu,
                    "report": report,
                    "crosscheck_max_dev": if args.no_crosscheck { None } else { Some(crosscheck_dev) },
                });
                format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
            }
        };
        return emit(&args.out, &text);
    }

    // numeric route for arbitrary weights
    let bs = band_structure(&graph, &weights, args.grid).config()?;
    let flats = detect_flat_bands(
        &graph,
        &weights,
        flatband::DEFAULT_DETECTION_SAMPLES,
        flatband::DEFAULT_DETECTION_TOL,
        flatband::DEFAULT_DETECTION_SEED,
    )
    .config()?;
    let intervals = merge_ranges(bs.band_ranges());
    let gap = (0..graph.n_vertices() - 1)
        .map(|b| bs.gap_above(b))
        .fold(0.0f64, f64::max);

    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("kind,value1,value2\n");
            for (lo, hi) in &intervals {
                let _ = writeln!(s, "band,{},{}", fmt12(*lo), fmt12(*hi));
            }
            for band in &flats.bands {
                let _ = writeln!(s, "flat,{},{}", fmt12(band.energy), band.multiplicity);
            }
            let _ = writeln!(s, "gap,{},", fmt12(gap));
            s
        }
        Format::Json => {
            let value = serde_json::json!({
                "lattice": graph.name(),
                "bands": intervals,
                "flat_bands": flats,
                "gap_width": gap,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable"))
        }
    };
    emit(&args.out, &text)
}

fn merge_ranges(ranges: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for &(lo, hi) in ranges {
        match out.last_mut() {
            Some(last) if lo <= last.1 + 1e-12 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// flat bands
// ---------------------------------------------------------------------------

fn cmd_flat_bands(args: FlatBandsArgs) -> Result<(), CliError> {
    let graph = args.graph.load()?;
    let (weights, _) = args.weights.resolve(&graph)?;
    let report = detect_flat_bands(&graph, &weights, args.samples, args.tol, args.seed).config()?;

    let text = match args.format {
        Format::Csv => export::flat_band_csv(&report),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable")),
    };
    emit(&args.out, &text)?;

    if let Some(expect) = args.expect {
        if report.len() != expect {
            return Err(CliError::with_code(
                EXIT_EXPECTATION,
                format!("expected {expect} flat bands, detected {}", report.len()),
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// phase diagram
// ---------------------------------------------------------------------------

fn cmd_phase_diagram(args: PhaseDiagramArgs) -> Result<(), CliError> {
    let tiling = Tiling::from_name(&args.lattice).config()?;
    if args.steps == 0 {
        return Err(CliError::config("--steps must be positive"));
    }
    let alphas = sweep_alpha_grid(tiling, args.mu, args.steps).config()?;
    let rows = closed_form::phase_diagram(tiling, args.mu, &alphas).config()?;
    emit(&args.out, &export::phase_diagram_csv(&rows))?;
    if let Some(path) = &args.svg {
        let svg = export::phase_diagram_svg(&rows, args.mu, None);
        std::fs::write(path, svg)
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let run_all = args.suite == "all";
    let mut failures = 0usize;
    let mut ran = 0usize;

    if run_all || args.suite == "classification" {
        ran += 1;
        let trials = args.trials.unwrap_or(200);
        for tiling in [Tiling::Kagome, Tiling::SuperKagome] {
            let report = verify_flat_band_classification(tiling, trials, args.seed, args.tol).config()?;
            let ok = report.passed();
            if !ok {
                failures += 1;
            }
            println!(
                "suite classification [{}]: {} ({} random draws with flat bands, {}/{} monomeric ok, worst energy dev {})",
                report.lattice,
                pass_fail(ok),
                report.random_with_flat_bands,
                report.monomeric_ok,
                report.monomeric_trials,
                fmt12(report.worst_energy_deviation),
            );
        }
    }

    if run_all || args.suite == "families" {
        ran += 1;
        let points = args.trials.unwrap_or(25);
        let graph = Tiling::SuperKagome.build();
        let mu = 1.0;
        let mut ok = true;
        let mut worst_energy = 0.0f64;
        let mut worst_condition = 0.0f64;
        let mut worst_vertex = 0.0f64;
        for family in OneFlatBandFamily::all(mu).config()? {
            let (lo, hi) = family.parameter_range();
            for i in 1..=points {
                let t = lo + (hi - lo) * i as f64 / (points + 1) as f64;
                let point = family.weights(t).config()?;
                let w = point.weight_assignment(&graph).config()?;
                match graph.constant_vertex_weight(&w).config()? {
                    Some(m) => worst_vertex = worst_vertex.max((m - mu).abs()),
                    None => ok = false,
                }
                let res = superkagome_condition_residuals(&point.reduced, point.lambda_tilde, family.sign_pattern());
                worst_condition = worst_condition.max(res.max_abs());
                let report =
                    detect_flat_bands(&graph, &w, flatband::DEFAULT_DETECTION_SAMPLES, args.tol, args.seed)
                        .config()?;
                if report.len() != 1 {
                    ok = false;
                } else {
                    worst_energy = worst_energy.max((report.bands[0].energy - point.energy).abs());
                }
            }
        }
        ok = ok && worst_energy <= args.tol && worst_condition <= 1e-10 && worst_vertex <= 1e-12;
        if !ok {
            failures += 1;
        }
        println!(
            "suite families: {} ({} points per family, worst energy dev {}, worst condition residual {}, worst vertex-weight residual {})",
            pass_fail(ok),
            points,
            fmt12(worst_energy),
            fmt12(worst_condition),
            fmt12(worst_vertex),
        );
    }

    if run_all || args.suite == "torus" {
        ran += 1;
        let ms: Vec<usize> = match args.m {
            Some(m) => vec![m],
            None => vec![3, 4, 5, 6],
        };
        let mut worst = 0.0f64;
        let mut multiplicity_ok = true;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
        for tiling in [Tiling::Kagome, Tiling::SuperKagome] {
            let graph = tiling.build();
            let space = graph.constant_weight_parametrization(1.0).config()?;
            for &m in &ms {
                let point = space
                    .sample_positive(&mut rng, 0.2, 1000)
                    .ok_or_else(|| CliError::config("positivity rejection sampling failed"))?;
                let w = WeightAssignment::from_values(&graph, point).config()?;
                worst = worst.max(torus_vs_floquet_deviation(&graph, &w, m)?);

                // flat multiplicities on monomeric weights
                let alpha = rng.random_range(0.05..0.45);
                let (w, flats): (WeightAssignment, Vec<f64>) = match tiling {
                    Tiling::Kagome => (
                        kagome_breathing_weights(&graph, alpha, 0.5 - alpha).config()?,
                        vec![1.5],
                    ),
                    Tiling::SuperKagome => (
                        super_kagome_monomeric_weights(&graph, alpha, 1.0 - 2.0 * alpha).config()?,
                        vec![3.0 * alpha, 2.0 - alpha],
                    ),
                    _ => unreachable!(),
                };
                let spectrum = build_torus(&graph, &w, m).config()?.spectrum();
                for energy in flats {
                    let count = flat_multiplicity(&spectrum, energy, args.tol);
                    if count < m * m || count > m * m + 2 {
                        multiplicity_ok = false;
                    }
                }
            }
        }
        let ok = worst <= 1e-9 && multiplicity_ok;
        if !ok {
            failures += 1;
        }
        println!(
            "suite torus: {} (max torus/Floquet deviation {}, flat multiplicities {})",
            pass_fail(ok),
            fmt12(worst),
            if multiplicity_ok { "in range" } else { "OUT OF RANGE" },
        );
    }

    if run_all || args.suite == "no-flat-band" {
        ran += 1;
        let trials = args.trials.unwrap_or(100);
        let mut ok = true;
        for tiling in Tiling::WITHOUT_FLAT_BANDS {
            let clean = no_flat_band_sampler(tiling, trials, args.seed, args.tol).config()?;
            if !clean {
                ok = false;
                println!("suite no-flat-band [{}]: FAIL", tiling.name());
            }
        }
        if !ok {
            failures += 1;
        }
        println!(
            "suite no-flat-band: {} ({} tilings x {} draws)",
            pass_fail(ok),
            Tiling::WITHOUT_FLAT_BANDS.len(),
            trials,
        );
    }

    if ran == 0 {
        return Err(CliError::config(format!(
            "unknown suite `{}` (expected all, classification, families, torus or no-flat-band)",
            args.suite
        )));
    }
    if failures > 0 {
        return Err(CliError::with_code(EXIT_VERIFY, format!("{failures} suite(s) failed")));
    }
    Ok(())
}

fn torus_vs_floquet_deviation(
    graph: &PeriodicGraph,
    weights: &WeightAssignment,
    m: usize,
) -> Result<f64, CliError> {
    use std::f64::consts::TAU;
    let torus = build_torus(graph, weights, m).config()?.spectrum();
    let mut union: Vec<f64> = Vec::with_capacity(torus.len());
    for i in 0..m {
        for j in 0..m {
            let theta = tiling_spectra::floquet::FloquetPoint::new(
                TAU * i as f64 / m as f64,
                TAU * j as f64 / m as f64,
            );
            union.extend(
                tiling_spectra::floquet::laplacian(graph, weights, theta)
                    .config()?
                    .eigenvalues(),
            );
        }
    }
    union.sort_by(f64::total_cmp);
    Ok(torus
        .iter()
        .zip(&union)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max))
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

// ---------------------------------------------------------------------------
// compact state
// ---------------------------------------------------------------------------

fn cmd_compact_state(args: CompactStateArgs) -> Result<(), CliError> {
    let graph = args.graph.load()?;
    let (weights, _) = args.weights.resolve(&graph)?;
    let state = find_compact_eigenstate(&graph, &weights, args.energy, args.radius).config()?;
    match state {
        Some(state) => {
            println!(
                "compact state: support {} residual {}",
                state.support_size(),
                fmt12(state.residual)
            );
            emit(&args.out, &export::compact_state_csv(&state))
        }
        None => {
            println!("compact state: none found");
            if args.expect_found {
                return Err(CliError::with_code(
                    EXIT_COMPACT,
                    format!("no compactly supported state at energy {}", fmt12(args.energy)),
                ));
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// export graph
// ---------------------------------------------------------------------------

fn cmd_export_graph(args: ExportGraphArgs) -> Result<(), CliError> {
    let graph = builtin(&args.lattice).config()?;
    match &args.out {
        Some(path) => save_graph(&graph, path).config(),
        None => {
            println!("{}", periodic_graph::graph_to_json(&graph));
            Ok(())
        }
    }
}
