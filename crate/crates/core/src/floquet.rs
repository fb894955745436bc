//! The truncated Floquet Hamiltonian, its spectrum, its decomposition into two
//! uncoupled chains, and effective 2×2 Hamiltonians for near-degenerate pairs.
//!
//! Basis |α n⟩ for n = −N…N, ordered (|↑n⟩, |↓n⟩) by ascending n, so
//! `index(α, n) = 2(n + N) + [α = ↓]`. The diagonal is +ω₀/2 + nω on |↑n⟩ and
//! −ω₀/2 + nω on |↓n⟩; |α n⟩ couples to |β n±1⟩ (α ≠ β) with strength gλ.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::eigen;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::mat2::Mat2C;
use crate::model::{circular_distance, ModelParams, Quasienergy, QuasienergyPair};

/// Default truncation half-width.
pub const DEFAULT_TRUNCATION: usize = 30;

/// N and N−4 central pairs must agree to this (units of ω₀).
pub const CONVERGENCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    fn offset(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Dense truncated Floquet matrix of dimension 2(2N+1).
#[derive(Debug, Clone, PartialEq)]
pub struct FloquetMatrix {
    params: ModelParams,
    n_max: usize,
    matrix: CMatrix,
}

/// Builds the Floquet matrix with Fourier blocks n = −N…N.
pub fn build_floquet(p: &ModelParams, n_max: usize) -> Result<FloquetMatrix> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("truncation N must be at least 2, got {n_max}")));
    }
    let dim = 2 * (2 * n_max + 1);
    let mut matrix = CMatrix::zeros(dim, dim);
    let g = p.coupling();
    let n_max_i = n_max as i64;
    for n in -n_max_i..=n_max_i {
        for spin in [Spin::Up, Spin::Down] {
            let i = basis_index(n_max, spin, n);
            matrix[(i, i)] = Complex64::new(spin.sign() * 0.5 * p.omega0() + n as f64 * p.omega(), 0.0);
            if n < n_max_i {
                let j = basis_index(n_max, spin.flipped(), n + 1);
                matrix[(i, j)] = g;
                matrix[(j, i)] = g;
            }
        }
    }
    Ok(FloquetMatrix { params: *p, n_max, matrix })
}

fn basis_index(n_max: usize, spin: Spin, n: i64) -> usize {
    2 * (n + n_max as i64) as usize + spin.offset()
}

impl FloquetMatrix {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn truncation(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Position of |α n⟩, or `None` outside the truncation.
    pub fn index(&self, spin: Spin, n: i64) -> Option<usize> {
        (n.unsigned_abs() as usize <= self.n_max).then(|| basis_index(self.n_max, spin, n))
    }

    /// The basis label of position `i`.
    pub fn label(&self, i: usize) -> (Spin, i64) {
        let spin = if i % 2 == 0 { Spin::Up } else { Spin::Down };
        (spin, (i / 2) as i64 - self.n_max as i64)
    }

    /// max |P conj(H) P − H| with P = σ_z ⊗ I.
    pub fn pt_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let si = self.label(i).0.sign();
                let sj = self.label(j).0.sign();
                let image = self.matrix[(i, j)].conj() * (si * sj);
                worst = worst.max((image - self.matrix[(i, j)]).norm());
            }
        }
        worst
    }

    /// The two uncoupled sub-lattices: {|↑ even⟩, |↓ odd⟩} and {|↓ even⟩, |↑ odd⟩}.
    pub fn parity_chains(&self) -> [ParityChain; 2] {
        let n_max = self.n_max as i64;
        let make = |even_spin: Spin| {
            let sites: Vec<(Spin, i64)> = (-n_max..=n_max)
                .map(|n| (if n.rem_euclid(2) == 0 { even_spin } else { even_spin.flipped() }, n))
                .collect();
            let onsite = sites
                .iter()
                .map(|&(s, n)| s.sign() * 0.5 * self.params.omega0() + n as f64 * self.params.omega())
                .collect();
            ParityChain { sites, onsite, hopping: self.params.coupling() }
        };
        [make(Spin::Up), make(Spin::Down)]
    }

    /// Rows of `re,im` pairs separated by single spaces, one matrix row per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim() {
            let row: Vec<String> = self.matrix.row(i).iter().map(|z| format!("{},{}", z.re, z.im)).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// Parses the output of [`FloquetMatrix::dump`].
pub fn parse_dump(text: &str) -> Result<CMatrix> {
    let rows: Vec<Vec<Complex64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            line.split_whitespace()
                .map(|pair| {
                    let (re, im) = pair
                        .split_once(',')
                        .ok_or_else(|| Error::InvalidParameter(format!("bad matrix entry '{pair}'")))?;
                    let parse = |s: &str| {
                        s.parse::<f64>().map_err(|e| Error::InvalidParameter(format!("bad number '{s}': {e}")))
                    };
                    Ok(Complex64::new(parse(re)?, parse(im)?))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameter("matrix dump is not square".into()));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// One of the two uncoupled chains of the Floquet matrix: a tight-binding
/// chain with on-site energies ±ω₀/2 + mω and uniform hopping gλ.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityChain {
    pub sites: Vec<(Spin, i64)>,
    pub onsite: Vec<f64>,
    pub hopping: Complex64,
}

impl ParityChain {
    pub fn to_matrix(&self) -> CMatrix {
        let n = self.onsite.len();
        CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(self.onsite[i], 0.0)
            } else if i.abs_diff(j) == 1 {
                self.hopping
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn spectrum(&self) -> Result<Vec<Complex64>> {
        eigen::eigenvalues(&self.to_matrix())
    }
}

/// All eigenvalues of the truncated Floquet matrix.
pub fn spectrum(m: &FloquetMatrix) -> Result<Vec<Complex64>> {
    eigen::eigenvalues(&m.matrix)
}

/// Picks the physical pair out of a truncated spectrum.
///
/// The infinite spectrum is {±ε + kω}. Each of the two classes has exactly one
/// member with real part within ω/2 of the reference point 0.3ω; those two are
/// returned, reduced into [0, ω). The off-centre reference keeps the broken-phase
/// conjugate pairs (real part 0 or ω/2 mod ω) from tying.
pub fn select_central(eigs: &[Complex64], omega: f64) -> QuasienergyPair {
    let reference = 0.3 * omega;
    let mut sorted: Vec<Complex64> = eigs.to_vec();
    sorted.sort_by(|a, b| (a.re - reference).abs().total_cmp(&(b.re - reference).abs()));
    let mut pair = [Quasienergy::reduced(sorted[0], omega), Quasienergy::reduced(sorted[1], omega)];
    if pair[1].im > pair[0].im {
        pair.swap(0, 1);
    }
    let degenerate = circular_distance(pair[0].re, pair[1].re, omega).hypot(pair[0].im - pair[1].im) < 1e-10;
    QuasienergyPair { eps: pair, degenerate }
}

/// The physical quasienergy pair from truncations N and N−4, which must agree.
pub fn central_quasienergies(p: &ModelParams, n_max: usize) -> Result<QuasienergyPair> {
    if n_max < 6 {
        return Err(Error::InvalidParameter(format!("convergence check needs N >= 6, got {n_max}")));
    }
    let full = select_central(&spectrum(&build_floquet(p, n_max)?)?, p.omega());
    let reduced = select_central(&spectrum(&build_floquet(p, n_max - 4)?)?, p.omega());
    let discrepancy = full.set_distance(&reduced, p.omega());
    if discrepancy > CONVERGENCE_TOL {
        return Err(Error::NotConverged { discrepancy });
    }
    Ok(full)
}

/// Effective Hamiltonian H′(ε) = H_PP + H_PQ (ε − H_QQ)⁻¹ H_QP on the pair
/// P = {a, b}, at its self-consistent eigenvalue ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveTwoLevel {
    pub h: Mat2C,
    pub eps: Complex64,
    /// Unperturbed diagonal entries ⟨a|H|a⟩ and ⟨b|H|b⟩.
    pub bare: [f64; 2],
    pub iterations: usize,
}

impl EffectiveTwoLevel {
    /// Level shift of |a⟩.
    pub fn delta_a(&self) -> Complex64 {
        self.h.m[0][0] - self.bare[0]
    }

    /// Level shift of |b⟩.
    pub fn delta_b(&self) -> Complex64 {
        self.h.m[1][1] - self.bare[1]
    }

    /// Effective coupling ⟨a|H′|b⟩.
    pub fn coupling(&self) -> Complex64 {
        self.h.m[0][1]
    }
}

const SALWEN_MAX_ITER: usize = 100;

/// Exact partitioning onto {a, b}, iterated to self-consistency in ε.
///
/// Each iteration replaces ε by the eigenvalue of H′(ε) nearest `eps0`.
pub fn salwen_effective(m: &FloquetMatrix, a: usize, b: usize, eps0: Complex64) -> Result<EffectiveTwoLevel> {
    let n = m.dim();
    if a >= n || b >= n || a == b {
        return Err(Error::InvalidParameter(format!("invalid subspace indices ({a}, {b}) for dimension {n}")));
    }
    let h = &m.matrix;
    let p_idx = [a, b];
    let q_idx: Vec<usize> = (0..n).filter(|&i| i != a && i != b).collect();
    let h_pq = h.select(&p_idx, &q_idx);
    let h_qp = h.select(&q_idx, &p_idx);
    let min_gap = m.params.omega() / 100.0;

    let mut eps = eps0;
    for iteration in 1..=SALWEN_MAX_ITER {
        let mut resolvent = CMatrix::zeros(q_idx.len(), q_idx.len());
        for (r, &qi) in q_idx.iter().enumerate() {
            let gap = (eps - h[(qi, qi)]).norm();
            if gap < min_gap {
                return Err(Error::SmallDenominator { index: qi, gap });
            }
            for (s, &qj) in q_idx.iter().enumerate() {
                resolvent[(r, s)] = -h[(qi, qj)];
            }
            resolvent[(r, r)] += eps;
        }
        let x = resolvent.solve(&h_qp)?;
        let dressed = h_pq.matmul(&x);
        let eff = Mat2C::new(
            h[(a, a)] + dressed[(0, 0)],
            h[(a, b)] + dressed[(0, 1)],
            h[(b, a)] + dressed[(1, 0)],
            h[(b, b)] + dressed[(1, 1)],
        );
        let [e1, e2] = eff.eigenvalues();
        let next = if (e1 - eps0).norm() <= (e2 - eps0).norm() { e1 } else { e2 };
        let change = (next - eps).norm();
        eps = next;
        if change < 1e-12 {
            return Ok(EffectiveTwoLevel { h: eff, eps, bare: [h[(a, a)].re, h[(b, b)].re], iterations: iteration });
        }
    }
    Err(Error::NoConvergence { what: "self-consistent effective Hamiltonian", iterations: SALWEN_MAX_ITER })
}
