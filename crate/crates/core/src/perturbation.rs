//! Closed-form perturbative predictions: effective Rabi frequencies, resonance
//! shifts, multiphoton lines and windows, and the low- and high-frequency
//! limits of the phase boundary.
//!
//! Every quadratic-in-λ term carries the factor g² = ±1 of the drive, so the
//! Hermitian and anti-Hermitian results differ by the sign of those terms.
//! Validity ranges are documented on each function and not enforced.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Drive, ModelParams};
use crate::specialfn::{bessel_i, factorial};

/// Perturbative order of the single-photon formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    /// Rotating-wave result.
    LowestOrder,
    /// Includes the counter-rotating λ² correction.
    NextOrder,
}

/// The resonance ω₀ ≈ (2n+1)ω. n = 0 is the single-photon resonance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResonanceOrder(u32);

impl ResonanceOrder {
    pub fn new(n: u32) -> Self {
        ResonanceOrder(n)
    }

    pub fn n(self) -> u32 {
        self.0
    }

    /// Number of photons absorbed, 2n+1.
    pub fn photons(self) -> u32 {
        2 * self.0 + 1
    }

    /// ω₀/(2n+1).
    pub fn bare_frequency(self, omega0: f64) -> f64 {
        omega0 / self.photons() as f64
    }
}

/// Level shift δ, effective coupling u, and the effective Rabi frequency
/// squared for an n-photon resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams {
    pub delta: f64,
    pub u: Complex64,
    /// ((2n+1)ω − ω₀ − 2δ)² + 4u². Negative in the broken phase.
    pub omega_eff_sq: f64,
}

/// Appendix-style rescaled coordinates with bookkeeping parameter α.
/// With α = 1 they coincide with λ and ω − ω₀/3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledCoords {
    pub alpha: f64,
    pub lambda_p: f64,
    pub delta: f64,
    pub eps_p: f64,
}

impl ScaledCoords {
    /// λ′ = λ/α, Δ = (ω − ω₀/3)/α², ε′ = (ε − ω₀/2)/α².
    pub fn new(alpha: f64, omega: f64, lambda: f64, omega0: f64, eps: f64) -> Self {
        ScaledCoords {
            alpha,
            lambda_p: lambda / alpha,
            delta: (omega - omega0 / 3.0) / (alpha * alpha),
            eps_p: (eps - omega0 / 2.0) / (alpha * alpha),
        }
    }

    pub fn unit(omega: f64, lambda: f64, omega0: f64) -> Self {
        Self::new(1.0, omega, lambda, omega0, omega0 / 2.0)
    }
}

/// Ω² (lowest order) or Ω̃² (next order) of the single-photon resonance.
///
/// Ω² = (ω−ω₀)² + 4g²λ², Ω̃² = Ω² − 2g²(ω−ω₀)λ²/ω₀. Valid for |ω−ω₀| ≲ ω₀/2.
pub fn rabi_freq_sq(p: &ModelParams, order: Order) -> f64 {
    let detuning = p.omega() - p.omega0();
    let s = p.drive().sign();
    let l2 = p.lambda() * p.lambda();
    let lowest = detuning * detuning + s * 4.0 * l2;
    match order {
        Order::LowestOrder => lowest,
        Order::NextOrder => lowest - s * 2.0 * detuning * l2 / p.omega0(),
    }
}

/// λ at which the anti-Hermitian Ω² (or Ω̃²) vanishes near ω = ω₀.
/// Valid for 0.5ω₀ < ω < 1.6ω₀.
pub fn single_photon_boundary(omega: f64, omega0: f64, order: Order) -> f64 {
    let detuning = omega - omega0;
    let lowest = detuning.abs() / 2.0;
    match order {
        Order::LowestOrder => lowest,
        Order::NextOrder => lowest * (1.0 + detuning / (4.0 * omega0)),
    }
}

/// Shifted single-photon resonance ω₀ + g²λ²/ω₀. Valid for λ ≤ 0.3ω₀.
pub fn bloch_siegert(lambda: f64, omega0: f64, drive: Drive) -> f64 {
    omega0 + drive.sign() * lambda * lambda / omega0
}

/// δ, u and Ω̃² for the resonance ω₀ ≈ (2n+1)ω, n ≥ 1, evaluated at `p.omega()`.
///
/// Hermitian: δ = (2n+1)λ²/(2n(n+1)ω), u = (−1)ⁿ λ^{2n+1}/(4ⁿ(n!)²ω^{2n}).
/// Anti-Hermitian: δ changes sign and u = i λ^{2n+1}/(4ⁿ(n!)²ω^{2n}).
pub fn multiphoton_delta_u(n: ResonanceOrder, p: &ModelParams) -> Result<EffectiveParams> {
    if n.n() == 0 {
        return Err(Error::InvalidParameter("multiphoton formulas need n >= 1".into()));
    }
    let (delta, u) = delta_u_at(n, p.omega(), p.lambda(), p.drive());
    let detuning = n.photons() as f64 * p.omega() - p.omega0() - 2.0 * delta;
    Ok(EffectiveParams { delta, u, omega_eff_sq: detuning * detuning + 4.0 * (u * u).re })
}

fn delta_u_at(n: ResonanceOrder, omega: f64, lambda: f64, drive: Drive) -> (f64, Complex64) {
    let k = n.n();
    let nf = k as f64;
    let delta = drive.sign() * (2.0 * nf + 1.0) * lambda * lambda / (2.0 * nf * (nf + 1.0) * omega);
    let magnitude =
        lambda.powi(n.photons() as i32) / (4f64.powi(k as i32) * factorial(k).powi(2) * omega.powi(2 * k as i32));
    let u = match drive {
        Drive::Hermitian => Complex64::new(if k % 2 == 0 { magnitude } else { -magnitude }, 0.0),
        Drive::AntiHermitian => Complex64::new(0.0, magnitude),
    };
    (delta, u)
}

/// The λ of the n-photon line at frequency ω:
/// λ = sqrt(−(n(n+1)ω₀/(2n+1))(ω − ω₀/(2n+1))).
pub fn multiphoton_line(n: ResonanceOrder, omega: f64, omega0: f64) -> Result<f64> {
    if n.n() == 0 {
        return Err(Error::InvalidParameter("multiphoton formulas need n >= 1".into()));
    }
    let nf = n.n() as f64;
    let centre = n.bare_frequency(omega0);
    if omega > centre {
        return Err(Error::DomainError(format!(
            "omega = {omega} lies above the bare {}-photon frequency {centre}",
            n.photons()
        )));
    }
    Ok((-(nf * (nf + 1.0) * omega0 / (2.0 * nf + 1.0)) * (omega - centre)).sqrt())
}

/// Inverse of [`multiphoton_line`]: the resonance frequency at a given λ.
pub fn multiphoton_resonance(n: ResonanceOrder, lambda: f64, omega0: f64) -> f64 {
    let nf = n.n() as f64;
    n.bare_frequency(omega0) - (2.0 * nf + 1.0) * lambda * lambda / (nf * (nf + 1.0) * omega0)
}

/// Rough size and position of an anti-Hermitian n-photon window at fixed λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowEstimate {
    pub n: ResonanceOrder,
    /// Stirling-approximated width in ω.
    pub width: f64,
    /// Stirling-approximated peak Im ε.
    pub max_im_eps: f64,
    /// Window edges in ω from exact factorials.
    pub edges: (f64, f64),
    /// |u| with exact factorials, the peak Im ε of the two-level model.
    pub u_abs: f64,
}

impl WindowEstimate {
    pub fn centre(&self) -> f64 {
        0.5 * (self.edges.0 + self.edges.1)
    }

    pub fn edge_width(&self) -> f64 {
        self.edges.1 - self.edges.0
    }
}

/// Width, peak growth rate and edges of the n-photon window.
///
/// The edges solve (2n+1)ω − ω₀ − 2δ = ±2iu with δ and u evaluated at the
/// bare frequency ω₀/(2n+1), which makes the equation linear in ω. Requires
/// λ < ω₀/e.
pub fn window_rough(n: ResonanceOrder, lambda: f64, omega0: f64) -> Result<WindowEstimate> {
    if n.n() == 0 {
        return Err(Error::InvalidParameter("multiphoton formulas need n >= 1".into()));
    }
    if lambda >= omega0 / E {
        return Err(Error::DomainError(format!("lambda = {lambda} is not below omega0/e")));
    }
    let nf = n.n() as f64;
    let photons = n.photons() as f64;
    let (delta, u) = delta_u_at(n, n.bare_frequency(omega0), lambda, Drive::AntiHermitian);
    let u_abs = u.norm();
    let edges = ((omega0 + 2.0 * delta - 2.0 * u_abs) / photons, (omega0 + 2.0 * delta + 2.0 * u_abs) / photons);
    let el = (E * lambda).powf(photons);
    let scale = omega0.powi(2 * n.n() as i32);
    Ok(WindowEstimate {
        n,
        width: 2.0 * el / (PI * nf * photons * scale),
        max_im_eps: el / (2.0 * PI * nf * scale),
        edges,
        u_abs,
    })
}

/// Three-photon window edges in λ at fixed ω, or no window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThreePhotonWindow {
    Window { lambda_lo: f64, lambda_hi: f64 },
    NoWindow,
}

/// Residual of the quartic-order three-photon condition in x = λ², D = ω − ω₀/3:
/// (3x + 2Dω₀)² + 9x(5x + 4Dω₀)(11x + 2Dω₀)/(8ω₀²).
pub fn three_photon_residual(lambda: f64, omega: f64, omega0: f64) -> f64 {
    let x = lambda * lambda;
    let d = (omega - omega0 / 3.0) * omega0;
    (3.0 * x + 2.0 * d).powi(2) + 9.0 * x * (5.0 * x + 4.0 * d) * (11.0 * x + 2.0 * d) / (8.0 * omega0 * omega0)
}

/// Roots λ > 0 of [`three_photon_residual`] at fixed ω, bracketed around the
/// lowest-order line 3λ² + 2Δω₀ = 0 where the residual is negative.
/// Valid for −0.05ω₀ ≤ Δ < 0.
pub fn three_photon_boundary(omega: f64, omega0: f64) -> Result<ThreePhotonWindow> {
    let d = (omega - omega0 / 3.0) * omega0;
    if d >= 0.0 {
        return Ok(ThreePhotonWindow::NoWindow);
    }
    let f = |l: f64| three_photon_residual(l, omega, omega0);
    let on_line = (-2.0 * d / 3.0).sqrt();
    if f(on_line) >= 0.0 {
        return Ok(ThreePhotonWindow::NoWindow);
    }
    let mut hi = 2.0 * on_line;
    let mut expansions = 0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 60 {
            return Err(Error::NumericalFailure("cannot bracket the upper three-photon edge".into()));
        }
    }
    Ok(ThreePhotonWindow::Window { lambda_lo: bisect(f, 0.0, on_line), lambda_hi: bisect(f, on_line, hi) })
}

/// The same condition viewed as a quadratic in Δ at fixed λ; returns the
/// window edges in ω (ascending).
pub fn three_photon_window_in_omega(lambda: f64, omega0: f64) -> Result<(f64, f64)> {
    if lambda <= 0.0 {
        return Err(Error::DomainError("no three-photon window at lambda = 0".into()));
    }
    let x = lambda * lambda;
    let w2 = omega0 * omega0;
    // In terms of D = Δω₀.
    let a = 4.0 + 9.0 * x / w2;
    let b = 12.0 * x + 486.0 * x * x / (8.0 * w2);
    let c = 9.0 * x * x + 495.0 * x.powi(3) / (8.0 * w2);
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Err(Error::NumericalFailure(format!("three-photon quadratic has no real roots at lambda = {lambda}")));
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = (q / a, c / q);
    let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    Ok((omega0 / 3.0 + lo / omega0, omega0 / 3.0 + hi / omega0))
}

/// Boundary of the static limit ω → 0: the instantaneous Hamiltonian at the
/// drive maximum is broken for λ > ω₀/4.
pub fn low_freq_threshold(omega0: f64) -> f64 {
    omega0 / 4.0
}

/// λ* solving ω/ω₀ = I₀(4λ*/ω), the high-frequency boundary. Valid for ω ≥ 1.2ω₀.
pub fn high_freq_boundary(omega: f64, omega0: f64) -> Result<f64> {
    let target = omega / omega0;
    if target < 1.0 {
        return Err(Error::DomainError(format!("no high-frequency boundary for omega = {omega} < omega0")));
    }
    let f = |x: f64| bessel_i(0, x).map(|i0| i0 - target);
    let mut hi = 1.0;
    while f(hi)? < 0.0 {
        hi *= 2.0;
        if hi > crate::specialfn::MAX_ARG {
            return Err(Error::DomainExceeded(format!("I0 root for omega/omega0 = {target} lies beyond x = 50")));
        }
    }
    let mut lo = 0.0;
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.25 * omega * 0.5 * (lo + hi))
}

/// Ω or Ω̃ with the Hermitian sign, the predicted splitting of the real
/// quasienergies. The drive stored in `p` is ignored.
pub fn hermitian_resonance_oracle(p: &ModelParams, order: Order) -> f64 {
    rabi_freq_sq(&p.with_drive(Drive::Hermitian), order).sqrt()
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
