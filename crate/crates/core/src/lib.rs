//! Floquet analysis of the periodically driven two-level system with a real
//! or imaginary drive,
//!
//! ```text
//! H(t) = (ω₀/2) σ_z + 2 g λ σ_x cos ωt,    g ∈ {1, i}.
//! ```
//!
//! With g = i the drive alternates gain and loss, the Floquet Hamiltonian is
//! PT-symmetric, and the quasienergies turn complex inside resonance windows.
//! The crate computes those quasienergies two independent ways (one-period
//! monodromy matrices and the truncated Floquet matrix), traces the phase
//! boundary numerically, and evaluates the closed-form perturbative
//! predictions for the boundaries, shifts, widths, and growth rates.
//!
//! ```
//! use ptrabi_core::{monodromy, quasienergies, IntegratorConfig, ModelParams};
//!
//! let p = ModelParams::pt(1.0, 0.1).unwrap(); // ω = ω₀, λ = 0.1 ω₀
//! let q = quasienergies(&monodromy(&p, &IntegratorConfig::default()).unwrap());
//! assert!((q.max_im() - 0.1).abs() < 5e-3);
//! ```

pub mod eigen;
pub mod error;
pub mod floquet;
pub mod linalg;
pub mod mat2;
pub mod model;
pub mod ode;
pub mod parallel;
pub mod perturbation;
pub mod propagator;
pub mod scan;
pub mod specialfn;
pub mod trajectory;

pub use error::{Error, Result};
pub use floquet::{
    build_floquet, central_quasienergies, salwen_effective, spectrum, EffectiveTwoLevel, FloquetMatrix, ParityChain,
    Spin,
};
pub use mat2::Mat2C;
pub use model::{Drive, ModelParams, PhaseLabel, Quasienergy, QuasienergyPair, TwoLevelState};
pub use num_complex::Complex64;
pub use ode::IntegratorConfig;
pub use perturbation::{EffectiveParams, Order, ResonanceOrder, ScaledCoords, ThreePhotonWindow, WindowEstimate};
pub use propagator::{classify, max_im_eps, monodromy, propagate, quasienergies, MonodromyResult};
pub use scan::{BoundaryPoint, GridAxis, GridResult, ResonanceWindow, ScanConfig, Scanner, WindowSearch};
pub use trajectory::{evolve_series, growth_rate, TimeSeries};
