//! Time evolution, one-period monodromy matrices, and the quasienergies they
//! encode. This is the numerically exact reference for every other module.

use num_complex::Complex64;

use crate::error::Result;
use crate::mat2::Mat2C;
use crate::model::{ModelParams, PhaseLabel, Quasienergy, QuasienergyPair, TwoLevelState};
use crate::ode::{integrate, IntegratorConfig, State};

/// Growth rates below this are integrator noise (units of ω₀ = 1).
pub const DEFAULT_THRESHOLD: f64 = 1e-8;

/// Multipliers closer than this are reported as an exceptional point.
pub const DEGENERACY_TOL: f64 = 1e-12;

const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);

fn schrodinger_rhs(h: Mat2C, psi: &State) -> State {
    let v = h.mul_vec(*psi);
    [v[0] * MINUS_I, v[1] * MINUS_I]
}

/// Evolves `psi0` from `t0` to `t1` under the model Hamiltonian.
pub fn propagate(
    p: &ModelParams,
    psi0: TwoLevelState,
    t0: f64,
    t1: f64,
    cfg: &IntegratorConfig,
) -> Result<TwoLevelState> {
    let max_step = cfg.max_step * p.period();
    propagate_with(|t| p.hamiltonian_at(t), psi0, t0, t1, cfg, max_step)
}

/// Evolves `psi0` under an arbitrary 2×2 Hamiltonian `h(t)`.
pub fn propagate_with<H>(
    h: H,
    psi0: TwoLevelState,
    t0: f64,
    t1: f64,
    cfg: &IntegratorConfig,
    max_step: f64,
) -> Result<TwoLevelState>
where
    H: Fn(f64) -> Mat2C,
{
    let y = integrate(|t, psi| schrodinger_rhs(h(t), psi), psi0.as_array(), t0, &[t1], cfg, max_step, |_, _| {})?;
    Ok(TwoLevelState::from_array(y))
}

/// Evolves `psi0` from t = 0 and records the state at each of `times`.
pub fn propagate_sampled(
    p: &ModelParams,
    psi0: TwoLevelState,
    times: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Vec<TwoLevelState>> {
    let mut out = Vec::with_capacity(times.len());
    integrate(
        |t, psi| schrodinger_rhs(p.hamiltonian_at(t), psi),
        psi0.as_array(),
        0.0,
        times,
        cfg,
        cfg.max_step * p.period(),
        |_, y| out.push(TwoLevelState::from_array(*y)),
    )?;
    Ok(out)
}

/// One-period propagator U(T) from t₀ = 0 and its eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonodromyResult {
    pub u: Mat2C,
    /// Floquet multipliers, larger modulus first.
    pub mu: [Complex64; 2],
    pub period: f64,
}

impl MonodromyResult {
    pub fn from_matrix(u: Mat2C, period: f64) -> Self {
        MonodromyResult { u, mu: u.eigenvalues(), period }
    }

    pub fn det_defect(&self) -> f64 {
        (self.u.det() - 1.0).norm()
    }

    pub fn trace_imag(&self) -> f64 {
        self.u.trace().im
    }

    pub fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.period
    }
}

/// U(T) built column by column from propagating |↑⟩ and |↓⟩ over one period.
pub fn monodromy(p: &ModelParams, cfg: &IntegratorConfig) -> Result<MonodromyResult> {
    let period = p.period();
    monodromy_with(|t| p.hamiltonian_at(t), period, cfg)
}

pub fn monodromy_with<H>(h: H, period: f64, cfg: &IntegratorConfig) -> Result<MonodromyResult>
where
    H: Fn(f64) -> Mat2C,
{
    let max_step = cfg.max_step * period;
    let up = propagate_with(&h, TwoLevelState::up(), 0.0, period, cfg, max_step)?;
    let down = propagate_with(&h, TwoLevelState::down(), 0.0, period, cfg, max_step)?;
    let u = Mat2C::from_columns(up.as_array(), down.as_array());
    Ok(MonodromyResult::from_matrix(u, period))
}

/// ε = (i/T) Log μ for both multipliers, real parts reduced into [0, ω).
///
/// The growth rate is split symmetrically, γ = (ln|μ₁| − ln|μ₂|)/2T, so the
/// two imaginary parts are exact negatives of each other.
pub fn quasienergies(m: &MonodromyResult) -> QuasienergyPair {
    let omega = m.omega();
    let [mu1, mu2] = m.mu;
    let gamma = 0.5 * (mu1.norm().ln() - mu2.norm().ln()) / m.period;
    let re = |mu: Complex64| -mu.arg() / m.period;
    let e1 = Quasienergy::reduced(Complex64::new(re(mu1), gamma), omega);
    let e2 = Quasienergy::reduced(Complex64::new(re(mu2), -gamma), omega);
    QuasienergyPair { eps: [e1, e2], degenerate: (mu1 - mu2).norm() < DEGENERACY_TOL }
}

/// Largest Im ε at `p`.
pub fn max_im_eps(p: &ModelParams, cfg: &IntegratorConfig) -> Result<f64> {
    Ok(quasienergies(&monodromy(p, cfg)?).max_im())
}

/// Broken iff the largest Im ε exceeds `threshold`.
pub fn classify(p: &ModelParams, cfg: &IntegratorConfig, threshold: f64) -> Result<PhaseLabel> {
    Ok(PhaseLabel::from_growth(max_im_eps(p, cfg)?, threshold))
}
