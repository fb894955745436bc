//! Phase-boundary tracing, resonance-window measurement, and dense parameter
//! grids, all driven by the monodromy quasienergies.

use std::fmt;
use std::str::FromStr;

use rayon::ThreadPool;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Drive, ModelParams, PhaseLabel};
use crate::ode::IntegratorConfig;
use crate::parallel::{build_pool, try_par_map};
use crate::perturbation::{window_rough, ResonanceOrder};
use crate::propagator::{max_im_eps, DEFAULT_THRESHOLD};

/// Inclusive range `start:stop:count` with at least two points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridAxis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(Error::InvalidParameter("range ends must be finite".into()));
        }
        if count < 2 {
            return Err(Error::InvalidParameter(format!("range needs at least 2 points, got {count}")));
        }
        if stop <= start {
            return Err(Error::InvalidParameter(format!("empty range {start}:{stop}")));
        }
        Ok(GridAxis { start, stop, count })
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.stop
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }

    pub fn spacing(&self) -> f64 {
        (self.stop - self.start) / (self.count - 1) as f64
    }
}

impl FromStr for GridAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(Error::InvalidParameter(format!("expected start:stop:count, got '{s}'")));
        };
        let num = |x: &str| {
            x.trim().parse::<f64>().map_err(|_| Error::InvalidParameter(format!("bad number '{x}' in '{s}'")))
        };
        let count =
            n.trim().parse::<usize>().map_err(|_| Error::InvalidParameter(format!("bad count '{n}' in '{s}'")))?;
        GridAxis::new(num(a)?, num(b)?, count)
    }
}

impl fmt::Display for GridAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}

/// Shared settings for every scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub omega0: f64,
    pub drive: Drive,
    pub integrator: IntegratorConfig,
    /// Im ε above this counts as broken.
    pub threshold: f64,
    /// Worker threads; 0 picks the rayon default.
    pub threads: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            omega0: 1.0,
            drive: Drive::AntiHermitian,
            integrator: IntegratorConfig::default(),
            threshold: DEFAULT_THRESHOLD,
            threads: 0,
        }
    }
}

/// A point on the transition curve, located to within `bracket_width`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub omega: f64,
    pub lambda_star: f64,
    pub bracket_width: f64,
    /// True when the phase is symmetric below `lambda_star` and broken above.
    pub breaks_upward: bool,
}

/// A measured multiphoton window at fixed λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonanceWindow {
    pub n: ResonanceOrder,
    pub lambda: f64,
    pub omega_lo: f64,
    pub omega_hi: f64,
    pub omega_res: f64,
    pub max_im_eps: f64,
}

impl ResonanceWindow {
    pub fn width(&self) -> f64 {
        self.omega_hi - self.omega_lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WindowSearch {
    Found(ResonanceWindow),
    NoWindow,
}

/// Max Im ε on an (ω, λ) grid, stored ω-major: `im_eps[i][j]` is at
/// (omegas[i], lambdas[j]).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridResult {
    pub omegas: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub im_eps: Vec<Vec<f64>>,
    pub labels: Vec<Vec<PhaseLabel>>,
    pub threshold: f64,
}

impl GridResult {
    /// Number of labels that disagree with `im_eps` and `threshold`.
    pub fn label_mismatches(&self) -> usize {
        self.im_eps
            .iter()
            .flatten()
            .zip(self.labels.iter().flatten())
            .filter(|(&im, &label)| PhaseLabel::from_growth(im, self.threshold) != label)
            .count()
    }

    /// (ω, λ, Im ε, label) in ω-major order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64, PhaseLabel)> + '_ {
        self.omegas.iter().enumerate().flat_map(move |(i, &w)| {
            self.lambdas.iter().enumerate().map(move |(j, &l)| (w, l, self.im_eps[i][j], self.labels[i][j]))
        })
    }
}

/// Runs scans on a private thread pool. Results never depend on the number
/// of threads.
pub struct Scanner {
    cfg: ScanConfig,
    pool: ThreadPool,
}

impl fmt::Debug for Scanner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scanner").field("cfg", &self.cfg).finish_non_exhaustive()
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Maximizes a unimodal `f` on [a, b] to bracket width `tol`.
/// Returns the abscissa and value of the best point evaluated.
pub fn golden_max<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(b > a && tol > 0.0) {
        return Err(Error::InvalidParameter(format!("bad golden-section bracket [{a}, {b}] with tol {tol}")));
    }
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

impl Scanner {
    pub fn new(cfg: ScanConfig) -> Result<Self> {
        cfg.integrator.validate()?;
        if !(cfg.omega0.is_finite() && cfg.omega0 > 0.0) {
            return Err(Error::InvalidParameter(format!("omega0 must be positive, got {}", cfg.omega0)));
        }
        if cfg.threshold.is_nan() || cfg.threshold <= 0.0 {
            return Err(Error::InvalidParameter(format!("threshold must be positive, got {}", cfg.threshold)));
        }
        Ok(Scanner { cfg, pool: build_pool(cfg.threads)? })
    }

    pub fn config(&self) -> &ScanConfig {
        &self.cfg
    }

    pub fn params(&self, omega: f64, lambda: f64) -> Result<ModelParams> {
        ModelParams::new(self.cfg.omega0, omega, lambda, self.cfg.drive)
    }

    pub fn max_im(&self, omega: f64, lambda: f64) -> Result<f64> {
        max_im_eps(&self.params(omega, lambda)?, &self.cfg.integrator)
    }

    fn max_im_with(&self, omega: f64, lambda: f64, integrator: &IntegratorConfig) -> Result<f64> {
        max_im_eps(&self.params(omega, lambda)?, integrator)
    }

    fn broken(&self, omega: f64, lambda: f64) -> Result<bool> {
        Ok(self.max_im(omega, lambda)? > self.cfg.threshold)
    }

    /// All phase transitions along λ ∈ [0, `lambda_max`] at fixed ω.
    ///
    /// A grid of `grid_points` ≥ 50 values is classified and every label change
    /// is bisected until its bracket is at most `tol`. Re-entrant boundaries
    /// give several points, in increasing λ.
    pub fn boundary_in_lambda(
        &self,
        omega: f64,
        lambda_max: f64,
        grid_points: usize,
        tol: f64,
    ) -> Result<Vec<BoundaryPoint>> {
        if grid_points < 50 {
            return Err(Error::InvalidParameter(format!(
                "boundary search needs at least 50 grid points, got {grid_points}"
            )));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        let axis = GridAxis::new(0.0, lambda_max, grid_points)?;
        let lambdas = axis.values();
        let labels = try_par_map(&self.pool, &lambdas, |&l| self.broken(omega, l))?;
        let brackets: Vec<(f64, f64, bool)> = (1..lambdas.len())
            .filter(|&j| labels[j] != labels[j - 1])
            .map(|j| (lambdas[j - 1], lambdas[j], labels[j]))
            .collect();
        try_par_map(&self.pool, &brackets, |&(mut lo, mut hi, upward)| {
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if self.broken(omega, mid)? == upward {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(BoundaryPoint { omega, lambda_star: 0.5 * (lo + hi), bracket_width: hi - lo, breaks_upward: upward })
        })
    }

    /// [`Scanner::boundary_in_lambda`] at every ω of `omegas`.
    pub fn boundary_curve(
        &self,
        omegas: &[f64],
        lambda_max: f64,
        grid_points: usize,
        tol: f64,
    ) -> Result<Vec<BoundaryPoint>> {
        let per_omega = try_par_map(&self.pool, omegas, |&w| self.boundary_in_lambda(w, lambda_max, grid_points, tol))?;
        Ok(per_omega.into_iter().flatten().collect())
    }

    /// Measures the n-photon window at fixed λ with coarse ω resolution `tol`.
    ///
    /// The search bracket is centred on the perturbative resonance with
    /// half-width max(3 w, shift/10), where w is the predicted width and shift
    /// the predicted displacement from ω₀/(2n+1). Edges are bisected to tol/100
    /// and ω_res is found by golden section. For n ≥ 3 the tight integrator
    /// setting and a threshold of at most 1e−9 are used.
    pub fn find_window(&self, n: ResonanceOrder, lambda: f64, tol: f64) -> Result<WindowSearch> {
        if n.n() == 0 {
            return Err(Error::InvalidParameter("window search needs n >= 1".into()));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        if lambda == 0.0 {
            return Ok(WindowSearch::NoWindow);
        }
        let omega0 = self.cfg.omega0;
        let rough = window_rough(n, lambda, omega0)?;
        if rough.width < 3.0 * tol {
            return Err(Error::ResolutionTooCoarse { predicted_width: rough.width, spacing: tol });
        }
        let (integrator, threshold) = if n.n() >= 3 {
            (
                IntegratorConfig { max_step: self.cfg.integrator.max_step, ..IntegratorConfig::tight() },
                self.cfg.threshold.min(1e-9),
            )
        } else {
            (self.cfg.integrator, self.cfg.threshold)
        };
        let im = |w: f64| self.max_im_with(w, lambda, &integrator);

        let centre = rough.centre();
        let shift = (n.bare_frequency(omega0) - centre).abs();
        let half = (3.0 * rough.width).max(0.1 * shift);
        let count = (2.0 * half / tol).ceil() as usize + 1;
        let axis = GridAxis::new(centre - half, centre + half, count.max(3))?;
        let omegas = axis.values();
        let values = try_par_map(&self.pool, &omegas, |&w| im(w))?;

        let Some(peak) =
            (0..values.len()).filter(|&i| values[i] > threshold).max_by(|&a, &b| values[a].total_cmp(&values[b]))
        else {
            return Ok(WindowSearch::NoWindow);
        };
        let mut first = peak;
        while first > 0 && values[first - 1] > threshold {
            first -= 1;
        }
        let mut last = peak;
        while last + 1 < values.len() && values[last + 1] > threshold {
            last += 1;
        }
        if first == 0 || last + 1 == values.len() {
            return Err(Error::NumericalFailure(format!(
                "the {}-photon window at lambda = {lambda} extends past the search bracket",
                n.photons()
            )));
        }

        let edge_tol = tol / 100.0;
        let edge = |mut outside: f64, mut inside: f64| -> Result<f64> {
            while (inside - outside).abs() > edge_tol {
                let mid = 0.5 * (outside + inside);
                if im(mid)? > threshold {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            Ok(0.5 * (outside + inside))
        };
        let edges = [(omegas[first - 1], omegas[first]), (omegas[last + 1], omegas[last])];
        let found = try_par_map(&self.pool, &edges, |&(o, i)| edge(o, i))?;
        let (omega_lo, omega_hi) = (found[0], found[1]);

        let a = omegas[peak - 1].max(omega_lo);
        let b = omegas[peak + 1].min(omega_hi);
        let (omega_res, max_im_eps) = golden_max(im, a, b, edge_tol)?;
        Ok(WindowSearch::Found(ResonanceWindow { n, lambda, omega_lo, omega_hi, omega_res, max_im_eps }))
    }

    /// Location and height of the largest Im ε for ω in [a, b], assuming a
    /// single peak there.
    pub fn peak_in(&self, lambda: f64, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
        golden_max(|w| self.max_im(w, lambda), a, b, tol)
    }

    /// Max Im ε and phase label over the full grid.
    pub fn phase_grid(&self, omega: &GridAxis, lambda: &GridAxis) -> Result<GridResult> {
        if omega.start <= 0.0 || lambda.start < 0.0 {
            return Err(Error::InvalidParameter("omega must be positive and lambda non-negative".into()));
        }
        let omegas = omega.values();
        let lambdas = lambda.values();
        let points: Vec<(f64, f64)> = omegas.iter().flat_map(|&w| lambdas.iter().map(move |&l| (w, l))).collect();
        let flat = try_par_map(&self.pool, &points, |&(w, l)| self.max_im(w, l))?;
        let im_eps: Vec<Vec<f64>> = flat.chunks(lambdas.len()).map(<[f64]>::to_vec).collect();
        let labels = im_eps
            .iter()
            .map(|row| row.iter().map(|&x| PhaseLabel::from_growth(x, self.cfg.threshold)).collect())
            .collect();
        Ok(GridResult { omegas, lambdas, im_eps, labels, threshold: self.cfg.threshold })
    }

    /// (ω, max Im ε) at fixed λ.
    pub fn im_eps_curve(&self, lambda: f64, omega: &GridAxis) -> Result<Vec<(f64, f64)>> {
        let omegas = omega.values();
        let im = try_par_map(&self.pool, &omegas, |&w| self.max_im(w, lambda))?;
        Ok(omegas.into_iter().zip(im).collect())
    }
}
