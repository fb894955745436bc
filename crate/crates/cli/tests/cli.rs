use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ptrabi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptrabi")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ptrabi(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows as string fields, after the two comment lines and the header.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema=1"));
    assert!(lines.next().unwrap().starts_with("# command="));
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    (header, lines.map(|l| l.split(',').map(str::to_string).collect()).collect())
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn phase_diagram_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let run = |path: &Path, threads: &str| {
        let out = ptrabi(&[
            "phase-diagram",
            "--omega",
            "0.9:1.1:5",
            "--lambda",
            "0:0.2:4",
            "--threads",
            threads,
            "--output",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    };
    run(&a, "1");
    run(&b, "4");
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.contains("\r\n"));
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["omega", "lambda", "im_eps", "phase"]);
    assert_eq!(rows.len(), 20);
    for row in &rows {
        let im = num(&row[2]);
        assert_eq!(row[3], if im > 1e-8 { "broken" } else { "symmetric" });
        if num(&row[1]) == 0.0 {
            assert_eq!(row[3], "symmetric");
        }
    }
    // ω-major order.
    assert_eq!((num(&rows[0][0]), num(&rows[0][1])), (0.9, 0.0));
    assert_eq!((num(&rows[1][0]), num(&rows[1][1])), (0.9, 0.2 / 3.0));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["phase-diagram", "--omega", "1:1:10", "--lambda", "0:0.2:4"][..],
        &["phase-diagram", "--omega", "0.5:1:1", "--lambda", "0:0.2:4"],
        &["boundary", "--method", "exact", "--omega", "1:2:3"],
        &["trajectory", "--omega", "1", "--lambda", "0.1", "--t-max", "0"],
        &["window", "--n", "1", "--lambda", "0.5"],
        &["spectrum", "--omega", "1", "--lambda", "0.1", "--rel-tol", "-1"],
    ] {
        assert_eq!(ptrabi(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn numerical_failures_exit_with_one() {
    let out = ptrabi(&["spectrum", "--omega", "0.2", "--lambda", "2", "--truncation", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not converged"));
}

#[test]
fn closed_form_boundaries() {
    let (_, rows) = csv_rows(&stdout(&["boundary", "--method", "nlo", "--omega", "0.8:1.2:3"]));
    let l: Vec<f64> = rows.iter().map(|r| num(&r[1])).collect();
    assert!((l[0] - 0.095).abs() < 1e-12 && l[1] == 0.0 && (l[2] - 0.105).abs() < 1e-12);
    assert!(rows.iter().all(|r| r[2] == "nlo"));

    let (_, rows) = csv_rows(&stdout(&["boundary", "--method", "multiphoton:2", "--omega", "0.15:0.19:5"]));
    let last = rows.last().unwrap();
    assert!((num(&last[1]) - (1.2f64 * 0.01).sqrt()).abs() < 1e-9);

    let (_, rows) = csv_rows(&stdout(&["boundary", "--method", "highfreq", "--omega", "1.5:12:4"]));
    let l: Vec<f64> = rows.iter().map(|r| num(&r[1])).collect();
    assert!(l.windows(2).all(|w| w[1] > w[0]));

    let (_, rows) = csv_rows(&stdout(&["boundary", "--method", "threephoton", "--omega", "0.31:0.34:4"]));
    assert_eq!(rows.len(), 6, "two edges at each of the three omegas below 1/3");
}

#[test]
fn numeric_boundary_has_bracket_width() {
    let (header, rows) =
        csv_rows(&stdout(&["boundary", "--method", "numeric", "--omega", "1.2:1.3:2", "--tol", "1e-4"]));
    assert_eq!(header, ["omega", "lambda_star", "method", "bracket_width"]);
    assert_eq!(rows.len(), 2);
    assert!((num(&rows[0][1]) - 0.105).abs() < 0.005);
    assert!(num(&rows[0][3]) <= 1e-4);
}

#[test]
fn window_records() {
    let v: Value = serde_json::from_str(&stdout(&["window", "--n", "1", "--lambda", "0.1"])).unwrap();
    assert_eq!(v["schema"], 1);
    let r = &v["records"][0];
    assert_eq!(r["status"], "found");
    let ratio = r["width_ratio"].as_f64().unwrap();
    assert!((0.5..=2.0).contains(&ratio), "{ratio}");
    assert!(r["omega_lo"].as_f64() < r["omega_res"].as_f64());

    let v: Value = serde_json::from_str(&stdout(&["window", "--n", "1", "--lambda", "0"])).unwrap();
    assert_eq!(v["records"][0]["status"], "no_window");

    let v: Value = serde_json::from_str(&stdout(&["window", "--n", "2", "--lambda", "0.1", "--tol", "1e-4"])).unwrap();
    assert_eq!(v["records"][0]["status"], "resolution_too_coarse");
}

#[test]
fn trajectory_without_drive_is_constant() {
    let (header, rows) =
        csv_rows(&stdout(&["trajectory", "--omega", "0.7", "--lambda", "0", "--t-max", "30", "--samples", "31"]));
    assert_eq!(header, ["t", "occ_up", "occ_down"]);
    assert_eq!(rows.len(), 31);
    assert!(rows.iter().all(|r| (num(&r[1]) - 1.0).abs() < 1e-8 && num(&r[2]) == 0.0));
}

#[test]
fn spectrum_sources_agree() {
    let (header, rows) = csv_rows(&stdout(&["spectrum", "--omega", "0.4:1.2:3", "--lambda", "0.15"]));
    assert_eq!(header, ["omega", "lambda", "re", "im", "source"]);
    assert_eq!(rows.len(), 12);
    for chunk in rows.chunks(4) {
        let w = num(&chunk[0][0]);
        let pick = |src: &str| -> Vec<(f64, f64)> {
            chunk.iter().filter(|r| r[4] == src).map(|r| (num(&r[2]), num(&r[3]))).collect()
        };
        let (m, f) = (pick("monodromy"), pick("floquet:30"));
        for a in &m {
            let best = f
                .iter()
                .map(|b| {
                    let d = (a.0 - b.0).rem_euclid(w);
                    d.min(w - d).hypot(a.1 - b.1)
                })
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-6, "omega {w}: {m:?} vs {f:?}");
        }
    }
    let (_, rows) = csv_rows(&stdout(&["spectrum", "--omega", "0.8", "--lambda", "0"]));
    assert!(rows.iter().all(|r| num(&r[3]) == 0.0));
}

#[test]
fn gnuplot_companion_script() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("traj.csv");
    let script = dir.path().join("traj.gp");
    let out = ptrabi(&[
        "trajectory",
        "--omega",
        "1",
        "--lambda",
        "0.1",
        "--t-max",
        "5",
        "-o",
        data.to_str().unwrap(),
        "--gnuplot",
        script.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let gp = std::fs::read_to_string(script).unwrap();
    assert!(gp.contains(data.to_str().unwrap()) && gp.contains("using 1:2") && gp.contains("using 1:3"));
    assert_eq!(ptrabi(&["window", "--n", "1", "--lambda", "0.1", "--gnuplot", "x.gp"]).status.code(), Some(2));
}

#[test]
fn frequencies_scale_with_omega0() {
    let (_, rows) = csv_rows(&stdout(&["boundary", "--method", "nlo", "--omega", "2.4:2.8:2", "--omega0", "2"]));
    assert!((num(&rows[0][1]) - 0.21).abs() < 1e-12);
    let text = stdout(&["boundary", "--method", "lowfreq", "--omega", "0.1:0.2:2", "--omega0", "2"]);
    assert!(text.lines().nth(1).unwrap().contains("omega0=2 units=absolute"));
}
