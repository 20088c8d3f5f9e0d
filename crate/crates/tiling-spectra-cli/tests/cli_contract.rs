//! Exit-code contract and output-shape checks for the command-line tool.

use std::process::Command;

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tiling-spectra"))
        .args(args)
        .output()
        .expect("spawn CLI");
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn success_paths_exit_zero() {
    let (code, stdout, _) = run(&["spectrum", "--lattice", "kagome", "--alpha", "0.125", "--mu", "1"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("3.75000000000e-1"));
    assert!(stdout.contains("7.50000000000e-1")); // gap 3/4

    let (code, stdout, _) = run(&[
        "flat-bands",
        "--lattice",
        "super_kagome",
        "--alpha",
        "0.25",
        "--mu",
        "1",
        "--expect",
        "2",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.lines().count() == 3); // header + two flats
}

#[test]
fn config_errors_exit_two() {
    let (code, _, stderr) = run(&["spectrum", "--lattice", "nonsense", "--alpha", "0.2"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("unknown lattice"));

    let (code, _, _) = run(&["spectrum", "--lattice", "kagome"]); // no weight source
    assert_eq!(code, Some(2));

    let (code, _, _) = run(&["verify", "--suite", "bogus"]);
    assert_eq!(code, Some(2));

    // clap parse errors share the code
    let (code, _, _) = run(&["spectrum", "--no-such-flag"]);
    assert_eq!(code, Some(2));
}

#[test]
fn crosscheck_failure_exits_three() {
    // a grid that misses the band extremizers leaves O(1/K²) edge error,
    // far beyond the 1e-8 cross-check tolerance
    let (code, _, stderr) = run(&[
        "spectrum", "--lattice", "kagome", "--alpha", "0.125", "--mu", "1", "--grid", "4",
    ]);
    assert_eq!(code, Some(3));
    assert!(stderr.contains("deviate"));

    // the same run passes with the check disabled
    let (code, _, _) = run(&[
        "spectrum", "--lattice", "kagome", "--alpha", "0.125", "--mu", "1", "--grid", "4",
        "--no-crosscheck",
    ]);
    assert_eq!(code, Some(0));
}

#[test]
fn expectation_mismatch_exits_four() {
    let (code, _, stderr) = run(&[
        "flat-bands", "--lattice", "kagome", "--alpha", "0.2", "--mu", "1", "--expect", "3",
    ]);
    assert_eq!(code, Some(4));
    assert!(stderr.contains("expected 3"));
}

#[test]
fn missing_compact_state_exits_six() {
    // 0.7 sits inside a dispersive band: no finitely supported state
    let (code, stdout, _) = run(&[
        "compact-state", "--lattice", "kagome", "--alpha", "0.25", "--mu", "1", "--energy", "0.7",
        "--radius", "2", "--expect-found",
    ]);
    assert_eq!(code, Some(6));
    assert!(stdout.contains("none found"));

    // without the flag the same search exits cleanly
    let (code, _, _) = run(&[
        "compact-state", "--lattice", "kagome", "--alpha", "0.25", "--mu", "1", "--energy", "0.7",
        "--radius", "2",
    ]);
    assert_eq!(code, Some(0));
}

#[test]
fn graph_files_round_trip_through_the_cli() {
    let dir = std::env::temp_dir().join("tiling-spectra-cli-contract");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("kagome.json");
    let path_str = path.to_str().unwrap();

    let (code, _, _) = run(&["export-graph", "--lattice", "kagome", "--out", path_str]);
    assert_eq!(code, Some(0));

    // the exported built-in still accepts monomeric parameters
    let (code, stdout, _) = run(&[
        "spectrum", "--graph-file", path_str, "--alpha", "0.125", "--mu", "1",
    ]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("kagome"));
}
