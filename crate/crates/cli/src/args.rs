use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ptrabi_core::{Drive, GridAxis};

/// Phase diagrams, boundaries, resonance windows, trajectories and spectra of
/// the driven two-level system with a real or imaginary drive.
#[derive(Debug, Clone, Parser)]
#[command(name = "ptrabi", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Level splitting; every frequency, coupling and rate is in its units.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, global = true, value_enum, default_value_t = DriveArg::AntiHermitian)]
    pub drive: DriveArg,
    /// Max Im ε above which a point counts as PT-broken.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub threshold: f64,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub abs_tol: f64,
    /// Largest integration step as a fraction of the drive period.
    #[arg(long, global = true, default_value_t = 0.05)]
    pub max_step: f64,
    /// Worker threads (0 = all cores). Output does not depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Output file; standard output if omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Also write a gnuplot script for the output to this file.
    #[arg(long, global = true)]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DriveArg {
    Hermitian,
    AntiHermitian,
}

impl From<DriveArg> for Drive {
    fn from(d: DriveArg) -> Drive {
        match d {
            DriveArg::Hermitian => Drive::Hermitian,
            DriveArg::AntiHermitian => Drive::AntiHermitian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Max Im ε and phase label on an (ω, λ) grid.
    PhaseDiagram {
        /// start:stop:count, inclusive.
        #[arg(long)]
        omega: GridAxis,
        #[arg(long)]
        lambda: GridAxis,
    },
    /// Transition curve λ*(ω), numerical or from a closed-form estimate.
    Boundary {
        /// numeric, rwa, nlo, multiphoton:N, threephoton, highfreq or lowfreq.
        #[arg(long)]
        method: Method,
        #[arg(long)]
        omega: GridAxis,
        /// Upper end of the λ search for the numeric method (default 0.3 ω₀).
        #[arg(long)]
        lambda_max: Option<f64>,
        #[arg(long, default_value_t = 60)]
        grid_points: usize,
        /// Bisection tolerance in λ for the numeric method.
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
    },
    /// Measured multiphoton windows next to the perturbative estimates.
    Window {
        /// Comma-separated resonance orders, e.g. 1,2,3.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long)]
        lambda: f64,
        /// Coarse ω resolution; defaults to a tenth of the predicted width.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Occupations |c↑|², |c↓|² versus time.
    Trajectory {
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 1001)]
        samples: usize,
        /// Initial state.
        #[arg(long, value_enum, default_value_t = InitialState::Up)]
        psi0: InitialState,
    },
    /// Quasienergies from the monodromy matrix and from the truncated Floquet matrix.
    Spectrum {
        /// A single value or start:stop:count.
        #[arg(long)]
        omega: Sweep,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 30)]
        truncation: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitialState {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Numeric,
    Rwa,
    Nlo,
    Multiphoton(u32),
    ThreePhoton,
    HighFreq,
    LowFreq,
}

impl Method {
    pub fn name(&self) -> String {
        match self {
            Method::Numeric => "numeric".into(),
            Method::Rwa => "rwa".into(),
            Method::Nlo => "nlo".into(),
            Method::Multiphoton(n) => format!("multiphoton:{n}"),
            Method::ThreePhoton => "threephoton".into(),
            Method::HighFreq => "highfreq".into(),
            Method::LowFreq => "lowfreq".into(),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "numeric" => Method::Numeric,
            "rwa" => Method::Rwa,
            "nlo" => Method::Nlo,
            "threephoton" => Method::ThreePhoton,
            "highfreq" => Method::HighFreq,
            "lowfreq" => Method::LowFreq,
            _ => match s.strip_prefix("multiphoton:").map(str::parse::<u32>) {
                Some(Ok(n)) if n >= 1 => Method::Multiphoton(n),
                _ => return Err(format!("unknown method '{s}'")),
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sweep {
    Single(f64),
    Range(GridAxis),
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Sweep::Single(x) => vec![*x],
            Sweep::Range(axis) => axis.values(),
        }
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.contains(':') {
            s.parse::<GridAxis>().map(Sweep::Range).map_err(|e| e.to_string())
        } else {
            s.parse::<f64>().map(Sweep::Single).map_err(|e| format!("bad number '{s}': {e}"))
        }
    }
}
