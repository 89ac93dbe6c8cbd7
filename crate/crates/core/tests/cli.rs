use std::path::Path;
use std::process::{Command, Output};

use vicsim::cli::Table;

fn vicsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vicsim"))
        .args(args)
        .env("VICSIM_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn table_at(path: &Path) -> Table {
    Table::read_csv(std::fs::File::open(path).unwrap()).unwrap()
}

fn run_to_table(args: &[&str]) -> Table {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let mut full: Vec<&str> = args.to_vec();
    let out_str = out.to_str().unwrap();
    full.extend(["--out", out_str]);
    let o = vicsim(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    table_at(&out)
}

#[test]
fn fig5_writes_complex_coherence_columns() {
    let t = run_to_table(&["preset", "fig5"]);
    assert_eq!(t.header, ["t", "Re(rho12A)", "Im(rho12A)"]);
    assert_eq!(t.rows.len(), 501);
    let re = t.column("Re(rho12A)").unwrap();
    let im = t.column("Im(rho12A)").unwrap();
    assert!(re.iter().chain(&im).any(|x| x.abs() > 1e-3));
}

#[test]
fn fig7_starts_fully_excited() {
    let t = run_to_table(&["preset", "fig7"]);
    assert_eq!(t.header, ["t", "p_13"]);
    assert_eq!(t.rows[0], [0.0, 1.0]);
    assert!((t.rows.last().unwrap()[0] - 5.0).abs() < 1e-12);
}

#[test]
fn run_defaults_to_stdout() {
    let o = vicsim(&["run", "--tmax", "0.02", "--observables", "p_13,p_32"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,p_13,p_32"));
    assert_eq!(lines.next(), Some("0.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn separation_along_x_gives_no_coherence() {
    let t = run_to_table(&["run", "--phi", "0.5", "--r", "0.25", "--delta", "1", "--tmax", "2", "--observables", "rho12A"]);
    for name in ["Re(rho12A)", "Im(rho12A)"] {
        assert!(t.column(name).unwrap().iter().all(|x| x.abs() < 1e-12));
    }
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.cfg");
    std::fs::write(&cfg, "# short run\ntheta = 0.5\nphi = 0.25\nr = 0.2\ntmax = 0.1\nobservables = p_13\n").unwrap();
    let out = dir.path().join("o.csv");
    let o = vicsim(&["run", "--config", cfg.to_str().unwrap(), "--tmax", "0.05", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = table_at(&out);
    assert_eq!(t.header, ["t", "p_13"]);
    assert_eq!(t.rows.len(), 6);
}

#[test]
fn configuration_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    let unwritable = dir.path().join("missing").join("out.csv");
    let cases: Vec<Vec<&str>> = vec![
        vec!["run", "--config", bad.to_str().unwrap()],
        vec!["run", "--config", "/nonexistent/sim.cfg"],
        vec!["run", "--r", "0"],
        vec!["run", "--r", "-1"],
        vec!["run", "--dt", "0"],
        vec!["run", "--model", "scalar"],
        vec!["run", "--observables", "p_44"],
        vec!["run", "--tmax", "0.01", "--out", unwritable.to_str().unwrap()],
        vec!["sweep", "--param", "phi", "--from", "1", "--to", "0", "--count", "3", "--reduce", "coefficients"],
        vec!["sweep", "--param", "mass", "--from", "0", "--to", "1", "--count", "3", "--reduce", "coefficients"],
        vec!["preset", "fig9"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = vicsim(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn invariant_breach_exits_with_two() {
    let o = vicsim(&["run", "--r", "0.001", "--dt", "0.1", "--tmax", "0.2", "--sample-every", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn help_exits_cleanly() {
    assert!(vicsim(&["--help"]).status.success());
    assert!(vicsim(&["run", "--help"]).status.success());
}

#[test]
fn azimuth_sweep_hits_geometric_nulls() {
    let t = run_to_table(&["sweep", "--param", "phi", "--from", "0", "--to", "1", "--count", "5", "--reduce", "coefficients"]);
    let phi = t.column("phi_over_pi").unwrap();
    assert_eq!(phi, [0.0, 0.25, 0.5, 0.75, 1.0]);
    for name in ["Re(GammaVc)", "Im(GammaVc)", "Re(OmegaVc)", "Im(OmegaVc)"] {
        let col = t.column(name).unwrap();
        for k in [0, 2, 4] {
            assert!(col[k].abs() < 1e-12, "{name} at φ = {}π: {}", phi[k], col[k]);
        }
    }
    assert!(t.column("Re(OmegaVc)").unwrap()[1].abs() > 1e-3);
}

#[test]
fn polar_sweep_vanishes_on_the_axis() {
    let t = run_to_table(&["sweep", "--param", "theta", "--from", "0", "--to", "0.5", "--count", "3", "--reduce", "coefficients"]);
    for name in ["Re(GammaVc)", "Re(OmegaVc)"] {
        assert!(t.column(name).unwrap()[0].abs() < 1e-12);
    }
}

#[test]
fn fig3_collective_decay_approaches_single_atom_rate() {
    let t = run_to_table(&["preset", "fig3"]);
    assert_eq!(t.rows.len(), 196);
    let r = t.column("r_over_lambda").unwrap();
    assert!((r[0] - 0.05).abs() < 1e-15 && (r[195] - 2.0).abs() < 1e-15);
    let g1 = t.column("Re(Gamma1)").unwrap();
    assert!((g1[0] - 1.0).abs() < 0.05);
    assert!(g1[195].abs() < 0.2);
}

#[test]
fn peak_sweep_over_splitting_decreases() {
    let t = run_to_table(&[
        "sweep", "--param", "delta", "--from", "1", "--to", "100", "--count", "3", "--log", "--reduce", "peak_value",
        "--r", "0.15915494309189535", "--tmax", "2", "--workers", "3",
    ]);
    assert_eq!(t.header, ["delta", "peak_p_32", "t_peak"]);
    let peaks = t.column("peak_p_32").unwrap();
    assert!(peaks[0] > peaks[1] && peaks[1] > peaks[2], "{peaks:?}");
}

#[test]
fn sweep_results_do_not_depend_on_worker_count() {
    let base = ["sweep", "--param", "r", "--from", "0.1", "--to", "0.5", "--count", "4", "--reduce", "peak_value", "--tmax", "1"];
    let one = run_to_table(&[&base[..], &["--workers", "1"]].concat());
    let four = run_to_table(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one, four);
}

#[test]
fn preset_bundles_match_golden_file() {
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/presets.txt")).unwrap();
    let mut shown = String::new();
    for name in ["fig3", "fig4", "fig5", "fig6a", "fig6b", "fig7", "fig8"] {
        let o = vicsim(&["preset", name, "--show"]);
        assert!(o.status.success());
        shown.push_str(&String::from_utf8(o.stdout).unwrap());
    }
    assert_eq!(shown, golden);
}

#[test]
fn written_csv_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.csv");
    let o = vicsim(&["run", "--tmax", "0.5", "--observables", "p_13,p_32,rho12A,coeffs", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = table_at(&out);
    let again = dir.path().join("b.csv");
    t.write_to(Some(&again)).unwrap();
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
    assert_eq!(table_at(&again), t);
}
