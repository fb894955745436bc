//! Eigenvalues of dense complex non-Hermitian matrices: Householder reduction
//! to upper Hessenberg form followed by single-shift complex QR with
//! Wilkinson shifts and deflation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of the square matrix `a`, in no particular order.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    assert!(a.is_square(), "eigenvalues of a non-square matrix");
    let mut h = a.clone();
    hessenberg(&mut h);
    hessenberg_qr(&mut h)
}

/// In-place Householder reduction; entries below the first subdiagonal are zeroed.
pub fn hessenberg(a: &mut CMatrix) {
    let n = a.rows();
    for k in 0..n.saturating_sub(2) {
        let alpha: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        // v = x + e^{i arg x0} ‖x‖ e₁, reflector P = I − 2 v v^H / (v^H v).
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;

        // A ← P A (rows k+1..n)
        for j in k..n {
            let s: Complex64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * a[(k + 1 + r, j)]).sum();
            let s = s * beta;
            for (r, vr) in v.iter().enumerate() {
                a[(k + 1 + r, j)] -= vr * s;
            }
        }
        // A ← A P (columns k+1..n)
        for i in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(r, vr)| a[(i, k + 1 + r)] * vr).sum();
            let s = s * beta;
            for (r, vr) in v.iter().enumerate() {
                a[(i, k + 1 + r)] -= s * vr.conj();
            }
        }
        for i in k + 2..n {
            a[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Eigenvalues of an upper Hessenberg matrix (destroyed in the process).
pub fn hessenberg_qr(h: &mut CMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let norm = (0..n).flat_map(|i| h.row(i).iter().copied()).map(abs1).fold(0.0, f64::max);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;

    loop {
        // Find the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = abs1(h[(lo, lo - 1)]);
            let mut diag = abs1(h[(lo - 1, lo - 1)]) + abs1(h[(lo, lo)]);
            if diag == 0.0 {
                diag = norm;
            }
            if sub <= f64::EPSILON * diag {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            eig[hi] = h[(hi, hi)];
            if hi == 0 {
                break;
            }
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        total += 1;
        if iter > MAX_SWEEPS_PER_EIGENVALUE || total > MAX_SWEEPS_PER_EIGENVALUE * n {
            return Err(Error::NoConvergence { what: "Hessenberg QR", iterations: total });
        }

        let shift = if iter % 11 == 10 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Complex64::new(abs1(h[(hi, hi - 1)]), 0.0) * 0.75
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_sweep(h, lo, hi, shift);
    }
    Ok(eig)
}

/// Eigenvalue of [[a, b], [c, d]] closest to d.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let mean = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let (r1, r2) = (mean + disc, mean - disc);
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// One explicit-shift QR step H − σI = QR, H ← RQ + σI on rows/cols lo..=hi.
fn qr_sweep(h: &mut CMatrix, lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }
    let mut rots: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let r = a.norm().hypot(b.norm());
        let (c, s) = if r == 0.0 { (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)) } else { (a / r, b / r) };
        // G = [[c̄, s̄], [−s, c]] applied to rows k, k+1.
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = c.conj() * x + s.conj() * y;
            h[(k + 1, j)] = -s * x + c * y;
        }
        h[(k + 1, k)] = Complex64::new(0.0, 0.0);
        rots.push((c, s));
    }
    for (idx, (c, s)) in rots.into_iter().enumerate() {
        let k = lo + idx;
        // Right-multiply by G^H = [[c, −s̄], [s, c̄]] on columns k, k+1.
        for i in lo..=(k + 1).min(hi) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s;
            h[(i, k + 1)] = -x * s.conj() + y * c.conj();
        }
    }
    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Small deterministic generator so tests need no RNG dependency.
    fn lcg(seed: &mut u64) -> f64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    fn random_matrix(n: usize, seed: u64) -> CMatrix {
        let mut s = seed;
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = c(lcg(&mut s), lcg(&mut s));
            }
        }
        m
    }

    fn match_sets(a: &[Complex64], b: &[Complex64]) -> f64 {
        let mut used = vec![false; b.len()];
        let mut worst: f64 = 0.0;
        for x in a {
            let (k, d) = b
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, y)| (k, (x - y).norm()))
                .fold((usize::MAX, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
            used[k] = true;
            worst = worst.max(d);
        }
        worst
    }

    #[test]
    fn hessenberg_preserves_similarity_invariants() {
        let a = random_matrix(9, 3);
        let mut h = a.clone();
        hessenberg(&mut h);
        for i in 2..9 {
            for j in 0..i - 1 {
                assert_eq!(h[(i, j)], c(0.0, 0.0));
            }
        }
        let tr = |m: &CMatrix| (0..9).map(|i| m[(i, i)]).sum::<Complex64>();
        assert!((tr(&a) - tr(&h)).norm() < 1e-12);
        let fro = |m: &CMatrix| m.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>();
        assert!((fro(&a) - fro(&h)).abs() < 1e-11);
    }

    #[test]
    fn triangular_matrix_eigenvalues_are_its_diagonal() {
        let mut a = random_matrix(6, 11);
        for i in 0..6 {
            for j in 0..i {
                a[(i, j)] = c(0.0, 0.0);
            }
        }
        let diag: Vec<_> = (0..6).map(|i| a[(i, i)]).collect();
        let eig = eigenvalues(&a).unwrap();
        assert!(match_sets(&eig, &diag) < 1e-12);
    }

    #[test]
    fn agrees_with_nalgebra_schur() {
        for (n, seed) in [(4, 1), (17, 2), (60, 5)] {
            let a = random_matrix(n, seed);
            let ours = eigenvalues(&a).unwrap();
            let na = nalgebra::DMatrix::from_fn(n, n, |i, j| a[(i, j)]);
            let theirs: Vec<Complex64> = nalgebra::Schur::new(na).eigenvalues().unwrap().iter().copied().collect();
            assert!(match_sets(&ours, &theirs) < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn sum_and_product_of_eigenvalues() {
        let a = random_matrix(8, 42);
        let eig = eigenvalues(&a).unwrap();
        let tr: Complex64 = (0..8).map(|i| a[(i, i)]).sum();
        assert!((eig.iter().sum::<Complex64>() - tr).norm() < 1e-11);
    }

    #[test]
    fn real_symmetric_tridiagonal_has_real_spectrum() {
        let n = 30;
        let a = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                c(i as f64 * 0.3 - 4.0, 0.0)
            } else if i.abs_diff(j) == 1 {
                c(0.7, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        for z in eigenvalues(&a).unwrap() {
            assert!(z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn cyclic_permutation_needs_exceptional_shifts() {
        // Eigenvalues are the fourth roots of unity; plain Wilkinson shifts stall.
        let n = 4;
        let a = CMatrix::from_fn(n, n, |i, j| if (j + 1) % n == i { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let eig = eigenvalues(&a).unwrap();
        let roots = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
        assert!(match_sets(&eig, &roots) < 1e-12);
    }
}
