//! Model parameters, states and quasienergies of the driven two-level system
//!
//! H(t) = (ω₀/2) σ_z + 2 g λ σ_x cos ωt, with g = 1 for a real drive and
//! g = i for the alternating gain/loss drive. Units have ℏ = 1 and the
//! Schrödinger equation reads i dψ/dt = H ψ.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2::Mat2C;

/// Whether the drive amplitude is real or imaginary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Drive {
    /// 2λ σ_x cos ωt; the quasienergies are always real.
    Hermitian,
    /// 2iλ σ_x cos ωt; PT-symmetric, with broken and unbroken phases.
    AntiHermitian,
}

impl Drive {
    /// The factor g multiplying λ in the drive term.
    pub fn coupling_factor(self) -> Complex64 {
        match self {
            Drive::Hermitian => Complex64::new(1.0, 0.0),
            Drive::AntiHermitian => Complex64::new(0.0, 1.0),
        }
    }

    /// g², the sign picked up by every term quadratic in λ.
    pub fn sign(self) -> f64 {
        match self {
            Drive::Hermitian => 1.0,
            Drive::AntiHermitian => -1.0,
        }
    }
}

impl fmt::Display for Drive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Drive::Hermitian => f.write_str("hermitian"),
            Drive::AntiHermitian => f.write_str("anti-hermitian"),
        }
    }
}

/// The physical parameters (ω₀, ω, λ) and the drive type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    omega0: f64,
    omega: f64,
    lambda: f64,
    drive: Drive,
}

impl ModelParams {
    /// Validates ω₀ > 0, ω > 0 and λ ≥ 0 (all finite).
    pub fn new(omega0: f64, omega: f64, lambda: f64, drive: Drive) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::InvalidParameter(format!("omega0 must be positive, got {omega0}")));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidParameter(format!("omega must be positive, got {omega}")));
        }
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidParameter(format!("lambda must be non-negative, got {lambda}")));
        }
        Ok(ModelParams { omega0, omega, lambda, drive })
    }

    /// Anti-Hermitian drive in units where ω₀ = 1.
    pub fn pt(omega: f64, lambda: f64) -> Result<Self> {
        Self::new(1.0, omega, lambda, Drive::AntiHermitian)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn drive(&self) -> Drive {
        self.drive
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.omega0, omega, self.lambda, self.drive)
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.omega0, self.omega, lambda, self.drive)
    }

    pub fn with_drive(&self, drive: Drive) -> Self {
        ModelParams { drive, ..*self }
    }

    /// Multiplies every energy by `s`; quasienergies scale by `s` and times by `1/s`.
    pub fn rescaled(&self, s: f64) -> Result<Self> {
        Self::new(s * self.omega0, s * self.omega, s * self.lambda, self.drive)
    }

    /// Drive period T = 2π/ω.
    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// g·λ, the hopping between neighbouring Floquet blocks.
    pub fn coupling(&self) -> Complex64 {
        self.drive.coupling_factor() * self.lambda
    }

    /// H(t) = (ω₀/2)σ_z + 2gλ cos(ωt) σ_x.
    pub fn hamiltonian_at(&self, t: f64) -> Mat2C {
        let half = Complex64::new(0.5 * self.omega0, 0.0);
        let off = self.coupling() * (2.0 * (self.omega * t).cos());
        Mat2C::new(half, off, off, -half)
    }
}

/// Amplitudes (⟨↑|ψ⟩, ⟨↓|ψ⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelState {
    pub c_up: Complex64,
    pub c_down: Complex64,
}

impl TwoLevelState {
    pub fn new(c_up: Complex64, c_down: Complex64) -> Self {
        TwoLevelState { c_up, c_down }
    }

    pub fn up() -> Self {
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn down() -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn as_array(&self) -> [Complex64; 2] {
        [self.c_up, self.c_down]
    }

    pub fn from_array(v: [Complex64; 2]) -> Self {
        Self::new(v[0], v[1])
    }

    pub fn occ_up(&self) -> f64 {
        self.c_up.norm_sqr()
    }

    pub fn occ_down(&self) -> f64 {
        self.c_down.norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.occ_up() + self.occ_down()
    }
}

/// A Floquet quasienergy with the real part reduced into [0, ω).
///
/// `im` is the growth rate: amplitudes evolve as e^{(Im ε) t}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quasienergy {
    pub re: f64,
    pub im: f64,
}

impl Quasienergy {
    /// Reduces `eps` into the zone [0, ω).
    pub fn reduced(eps: Complex64, omega: f64) -> Self {
        Quasienergy { re: reduce_to_zone(eps.re, omega), im: eps.im }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// Distance to `other` on the circle of circumference ω (real parts) combined
    /// with the plain difference of imaginary parts.
    pub fn zone_distance(&self, other: &Quasienergy, omega: f64) -> f64 {
        let d = circular_distance(self.re, other.re, omega);
        d.hypot(self.im - other.im)
    }
}

/// The two quasienergies of the model, larger growth rate first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasienergyPair {
    pub eps: [Quasienergy; 2],
    /// Set when the two Floquet multipliers coincide (an exceptional point).
    pub degenerate: bool,
}

impl QuasienergyPair {
    pub fn max_im(&self) -> f64 {
        self.eps[0].im.max(self.eps[1].im)
    }

    /// Distance between two pairs as unordered sets on the quasienergy zone.
    pub fn set_distance(&self, other: &QuasienergyPair, omega: f64) -> f64 {
        let [a, b] = self.eps;
        let [c, d] = other.eps;
        let straight = a.zone_distance(&c, omega).max(b.zone_distance(&d, omega));
        let crossed = a.zone_distance(&d, omega).max(b.zone_distance(&c, omega));
        straight.min(crossed)
    }

    /// |ε₁ + ε₂| modulo ω for the real parts.
    pub fn pairing_defect(&self, omega: f64) -> f64 {
        let s = self.eps[0].re + self.eps[1].re;
        circular_distance(s, 0.0, omega)
    }
}

/// Whether the PT symmetry of the Floquet states is intact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseLabel {
    Symmetric,
    Broken,
}

impl PhaseLabel {
    pub fn from_growth(max_im_eps: f64, threshold: f64) -> Self {
        if max_im_eps > threshold {
            PhaseLabel::Broken
        } else {
            PhaseLabel::Symmetric
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseLabel::Symmetric => f.write_str("symmetric"),
            PhaseLabel::Broken => f.write_str("broken"),
        }
    }
}

pub(crate) fn reduce_to_zone(x: f64, omega: f64) -> f64 {
    let r = x.rem_euclid(omega);
    // rem_euclid can round up to exactly ω for tiny negative inputs.
    if r >= omega {
        0.0
    } else {
        r
    }
}

pub(crate) fn circular_distance(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}
