//! Dormand–Prince 5(4) integrator for a complex two-component state.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type State = [Complex64; 2];

/// Error-control settings for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Largest step as a fraction of the drive period. At most 1/20.
    pub max_step: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig { rel_tol: 1e-10, abs_tol: 1e-12, max_step: 0.05 }
    }
}

impl IntegratorConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_step: f64) -> Result<Self> {
        let cfg = IntegratorConfig { rel_tol, abs_tol, max_step };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter("integrator tolerances must be positive".into()));
        }
        if !(self.max_step > 0.0 && self.max_step <= 0.05) {
            return Err(Error::InvalidParameter(format!(
                "max_step must lie in (0, 1/20] of the period, got {}",
                self.max_step
            )));
        }
        Ok(())
    }

    /// Both tolerances multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        IntegratorConfig { rel_tol: self.rel_tol * factor, abs_tol: self.abs_tol * factor, max_step: self.max_step }
    }

    /// Setting used for the narrow high-order resonance windows.
    pub fn tight() -> Self {
        IntegratorConfig { rel_tol: 1e-13, abs_tol: 1e-15, max_step: 0.05 }
    }
}

const MAX_STEPS: usize = 50_000_000;
const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 5.0;

// Butcher tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Fifth- minus fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[inline]
fn axpy(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = *y;
    for (coef, k) in terms {
        let s = h * coef;
        out[0] += k[0] * s;
        out[1] += k[1] * s;
    }
    out
}

/// Integrates `dy/dt = f(t, y)` from `t0` through every time in `targets`
/// (non-decreasing, all ≥ `t0`), calling `sample(i, y(targets[i]))`.
///
/// Steps are clipped to land on each target; the controller's step proposal
/// carries across targets so sampling does not reset the step size.
pub fn integrate<F, S>(
    f: F,
    y0: State,
    t0: f64,
    targets: &[f64],
    cfg: &IntegratorConfig,
    max_step: f64,
    mut sample: S,
) -> Result<State>
where
    F: Fn(f64, &State) -> State,
    S: FnMut(usize, &State),
{
    cfg.validate()?;
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = initial_step(&y, &k1, cfg, max_step);
    let mut steps = 0usize;

    for (i, &target) in targets.iter().enumerate() {
        if target < t {
            return Err(Error::InvalidParameter(format!(
                "integration targets must be non-decreasing (got {target} after {t})"
            )));
        }
        while t < target {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::MaxStepsExceeded(MAX_STEPS));
            }
            let remaining = target - t;
            let clipped = h >= remaining;
            let h_try = if clipped { remaining } else { h };
            if h_try <= 16.0 * f64::EPSILON * t.abs().max(1.0) && !clipped {
                return Err(Error::StepSizeUnderflow { t, h: h_try });
            }

            let (y_new, k7, err) = dopri_step(&f, t, &y, &k1, h_try, cfg);
            if !err.is_finite() {
                h = 0.1 * h_try;
                continue;
            }
            let factor = if err == 0.0 { FAC_MAX } else { (SAFETY * err.powf(-0.2)).clamp(FAC_MIN, FAC_MAX) };
            if err <= 1.0 {
                t = if clipped { target } else { t + h_try };
                y = y_new;
                k1 = k7;
                // A clipped step says nothing about the natural step size.
                if !clipped {
                    h = (h_try * factor).min(max_step);
                }
            } else {
                h = h_try * factor.min(1.0);
            }
        }
        sample(i, &y);
    }
    Ok(y)
}

fn dopri_step<F>(f: &F, t: f64, y: &State, k1: &State, h: f64, cfg: &IntegratorConfig) -> (State, State, f64)
where
    F: Fn(f64, &State) -> State,
{
    let k2 = f(t + C2 * h, &axpy(y, &[(A21, k1)], h));
    let k3 = f(t + C3 * h, &axpy(y, &[(A31, k1), (A32, &k2)], h));
    let k4 = f(t + C4 * h, &axpy(y, &[(A41, k1), (A42, &k2), (A43, &k3)], h));
    let k5 = f(t + C5 * h, &axpy(y, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)], h));
    let k6 = f(t + h, &axpy(y, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h));
    let y_new = axpy(y, &[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], h);
    let k7 = f(t + h, &y_new);

    let mut sum = 0.0;
    for i in 0..2 {
        let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * h;
        let scale = cfg.abs_tol + cfg.rel_tol * y[i].norm().max(y_new[i].norm());
        sum += (e.norm() / scale).powi(2);
    }
    (y_new, k7, (sum / 2.0).sqrt())
}

fn initial_step(y: &State, f0: &State, cfg: &IntegratorConfig, max_step: f64) -> f64 {
    let scale = |i: usize| cfg.abs_tol + cfg.rel_tol * y[i].norm();
    let d0 = ((0..2).map(|i| (y[i].norm() / scale(i)).powi(2)).sum::<f64>() / 2.0).sqrt();
    let d1 = ((0..2).map(|i| (f0[i].norm() / scale(i)).powi(2)).sum::<f64>() / 2.0).sqrt();
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.min(max_step)
}
