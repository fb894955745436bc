use ptrabi_core::floquet::{central_quasienergies, select_central, spectrum};
use ptrabi_core::perturbation::{
    high_freq_boundary, low_freq_threshold, multiphoton_line, multiphoton_resonance, single_photon_boundary,
    three_photon_boundary, window_rough, ThreePhotonWindow,
};
use ptrabi_core::{
    build_floquet, evolve_series, monodromy, quasienergies, Drive, Error, IntegratorConfig, ModelParams, Order,
    ResonanceOrder, ScanConfig, Scanner, TwoLevelState, WindowSearch,
};

use crate::args::{Command, Common, InitialState, Method};
use crate::output::{Cell, Table};

/// Exit status 2 for bad input, 1 for everything that fails during the run.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) | Error::DomainError(_) | Error::DomainExceeded(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub fn scan_config(c: &Common) -> Result<ScanConfig, CliError> {
    Ok(ScanConfig {
        omega0: c.omega0,
        drive: c.drive.into(),
        integrator: IntegratorConfig::new(c.rel_tol, c.abs_tol, c.max_step)?,
        threshold: c.threshold,
        threads: c.threads,
    })
}

pub fn run(command: &Command, common: &Common) -> Result<Table, CliError> {
    let cfg = scan_config(common)?;
    match command {
        Command::PhaseDiagram { omega, lambda } => {
            let grid = Scanner::new(cfg)?.phase_grid(omega, lambda)?;
            let mut t = Table::new("phase-diagram", &["omega", "lambda", "im_eps", "phase"]);
            for (w, l, im, label) in grid.rows() {
                t.push(vec![w.into(), l.into(), im.into(), label.to_string().into()]);
            }
            Ok(t)
        }
        Command::Boundary { method, omega, lambda_max, grid_points, tol } => {
            boundary(&cfg, *method, &omega.values(), lambda_max.unwrap_or(0.3 * cfg.omega0), *grid_points, *tol)
        }
        Command::Window { n, lambda, tol } => window(&cfg, n, *lambda, *tol),
        Command::Trajectory { omega, lambda, t_max, samples, psi0 } => {
            let p = ModelParams::new(cfg.omega0, *omega, *lambda, cfg.drive)?;
            let start = match psi0 {
                InitialState::Up => TwoLevelState::up(),
                InitialState::Down => TwoLevelState::down(),
            };
            let series = evolve_series(&p, start, *t_max, *samples, &cfg.integrator)?;
            let mut t = Table::new("trajectory", &["t", "occ_up", "occ_down"]);
            for (time, up, down) in series.rows() {
                t.push(vec![time.into(), up.into(), down.into()]);
            }
            Ok(t)
        }
        Command::Spectrum { omega, lambda, truncation } => {
            let mut t = Table::new("spectrum", &["omega", "lambda", "re", "im", "source"]);
            for w in omega.values() {
                let p = ModelParams::new(cfg.omega0, w, *lambda, cfg.drive)?;
                let m = quasienergies(&monodromy(&p, &cfg.integrator)?);
                let f = match central_quasienergies(&p, *truncation) {
                    Ok(f) => f,
                    Err(Error::InvalidParameter(_)) => select_central(&spectrum(&build_floquet(&p, *truncation)?)?, w),
                    Err(e) => return Err(e.into()),
                };
                let source = format!("floquet:{truncation}");
                for (pair, src) in [(m, "monodromy"), (f, source.as_str())] {
                    for e in pair.eps {
                        t.push(vec![w.into(), (*lambda).into(), e.re.into(), e.im.into(), src.into()]);
                    }
                }
            }
            Ok(t)
        }
    }
}

fn boundary(
    cfg: &ScanConfig,
    method: Method,
    omegas: &[f64],
    lambda_max: f64,
    grid_points: usize,
    tol: f64,
) -> Result<Table, CliError> {
    let name = method.name();
    let w0 = cfg.omega0;
    if method == Method::Numeric {
        let mut t = Table::new("boundary", &["omega", "lambda_star", "method", "bracket_width"]);
        for p in Scanner::new(*cfg)?.boundary_curve(omegas, lambda_max, grid_points, tol)? {
            t.push(vec![p.omega.into(), p.lambda_star.into(), name.as_str().into(), p.bracket_width.into()]);
        }
        return Ok(t);
    }
    if cfg.drive == Drive::Hermitian {
        return Err(CliError::Usage("closed-form boundaries exist only for the anti-hermitian drive".into()));
    }
    let mut t = Table::new("boundary", &["omega", "lambda_star", "method"]);
    let mut push = |w: f64, l: f64| t.push(vec![w.into(), l.into(), name.as_str().into()]);
    for &w in omegas {
        match method {
            Method::Numeric => unreachable!(),
            Method::Rwa => push(w, single_photon_boundary(w, w0, Order::LowestOrder)),
            Method::Nlo => push(w, single_photon_boundary(w, w0, Order::NextOrder)),
            Method::Multiphoton(n) => {
                if let Ok(l) = multiphoton_line(ResonanceOrder::new(n), w, w0) {
                    push(w, l);
                }
            }
            Method::ThreePhoton => {
                if let ThreePhotonWindow::Window { lambda_lo, lambda_hi } = three_photon_boundary(w, w0)? {
                    push(w, lambda_lo);
                    push(w, lambda_hi);
                }
            }
            Method::HighFreq => {
                if w >= w0 {
                    push(w, high_freq_boundary(w, w0)?);
                }
            }
            Method::LowFreq => push(w, low_freq_threshold(w0)),
        }
    }
    Ok(t)
}

const WINDOW_COLUMNS: &[&str] = &[
    "n",
    "lambda",
    "status",
    "omega_lo",
    "omega_hi",
    "omega_res",
    "width",
    "max_im_eps",
    "predicted_omega_res",
    "predicted_omega_lo",
    "predicted_omega_hi",
    "predicted_width",
    "predicted_max_im_eps",
    "width_ratio",
];

fn window(cfg: &ScanConfig, orders: &[u32], lambda: f64, tol: Option<f64>) -> Result<Table, CliError> {
    if cfg.drive == Drive::Hermitian {
        return Err(CliError::Usage("resonance windows exist only for the anti-hermitian drive".into()));
    }
    let scanner = Scanner::new(*cfg)?;
    let mut t = Table::new("window", WINDOW_COLUMNS);
    for &n in orders {
        let order = ResonanceOrder::new(n);
        if n == 0 {
            return Err(CliError::Usage("window orders start at n = 1".into()));
        }
        let rough = window_rough(order, lambda, cfg.omega0)?;
        let predicted = [
            Cell::Num(multiphoton_resonance(order, lambda, cfg.omega0)),
            Cell::Num(rough.edges.0),
            Cell::Num(rough.edges.1),
            Cell::Num(rough.width),
            Cell::Num(rough.max_im_eps),
        ];
        let resolution = tol.unwrap_or(rough.width / 10.0);
        let (status, measured, ratio): (&str, Vec<Cell>, Cell) =
            match scanner.find_window(order, lambda, resolution.max(f64::MIN_POSITIVE)) {
                Ok(WindowSearch::Found(w)) => (
                    "found",
                    vec![
                        w.omega_lo.into(),
                        w.omega_hi.into(),
                        w.omega_res.into(),
                        w.width().into(),
                        w.max_im_eps.into(),
                    ],
                    Cell::Num(rough.width / w.width()),
                ),
                Ok(WindowSearch::NoWindow) => ("no_window", vec![Cell::Empty; 5], Cell::Empty),
                Err(Error::ResolutionTooCoarse { .. }) => ("resolution_too_coarse", vec![Cell::Empty; 5], Cell::Empty),
                Err(e) => return Err(e.into()),
            };
        let mut row = vec![Cell::Int(n as i64), lambda.into(), status.into()];
        row.extend(measured);
        row.extend(predicted);
        row.push(ratio);
        t.push(row);
    }
    Ok(t)
}

/// Columns a companion gnuplot script should plot, as (x, [y...]).
pub fn plot_columns(command: &Command) -> (&'static str, Vec<&'static str>) {
    match command {
        Command::PhaseDiagram { .. } => ("omega", vec!["lambda"]),
        Command::Boundary { .. } => ("omega", vec!["lambda_star"]),
        Command::Window { .. } => ("n", vec!["width", "predicted_width"]),
        Command::Trajectory { .. } => ("t", vec!["occ_up", "occ_down"]),
        Command::Spectrum { .. } => ("omega", vec!["im"]),
    }
}
