//! Integer-order Bessel functions J_n and I_n of real argument, and factorials.
//!
//! Power series below |x| = 12, normalized Miller (downward) recurrence above.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_ORDER: i32 = 200;
pub const MAX_ARG: f64 = 50.0;

const SERIES_LIMIT: f64 = 12.0;
const RESCALE_AT: f64 = 1e200;

fn check_domain(n: i32, x: f64) -> Result<()> {
    if n.abs() > MAX_ORDER || !x.is_finite() || x.abs() > MAX_ARG {
        return Err(Error::DomainExceeded(format!(
            "Bessel order {n} / argument {x} outside |n| <= {MAX_ORDER}, |x| <= {MAX_ARG}"
        )));
    }
    Ok(())
}

fn parity(n: i32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// n! — exact through 20!, a floating product beyond.
pub fn factorial(n: u32) -> f64 {
    if n <= 20 {
        (1..=n as u64).product::<u64>() as f64
    } else {
        (21..=n).fold((1..=20u64).product::<u64>() as f64, |acc, k| acc * k as f64)
    }
}

/// Bessel function of the first kind J_n(x).
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    check_domain(n, x)?;
    let order = n.unsigned_abs();
    let mut sign = if n < 0 { parity(n) } else { 1.0 };
    if x < 0.0 {
        sign *= parity(n);
    }
    Ok(sign * j_nonneg(order, x.abs()))
}

/// Modified Bessel function of the first kind I_n(x).
pub fn bessel_i(n: i32, x: f64) -> Result<f64> {
    check_domain(n, x)?;
    let order = n.unsigned_abs();
    let sign = if x < 0.0 { parity(n) } else { 1.0 };
    Ok(sign * i_nonneg(order, x.abs()))
}

/// J_n(ix) = iⁿ I_n(x).
pub fn bessel_j_imag(n: i32, x: f64) -> Result<Complex64> {
    let i_n = bessel_i(n, x)?;
    let phase = match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    Ok(phase * i_n)
}

fn j_nonneg(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_LIMIT {
        series(n, x, -1.0)
    } else {
        miller_j(n, x)
    }
}

fn i_nonneg(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_LIMIT {
        series(n, x, 1.0)
    } else {
        miller_i(n, x)
    }
}

/// Σ_k s^k (x/2)^{2k+n} / (k! (n+k)!), with s = −1 for J and +1 for I.
fn series(n: u32, x: f64, s: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = (1..=n).fold(1.0, |acc, j| acc * half / j as f64);
    if term == 0.0 {
        return 0.0;
    }
    let q = half * half;
    let mut sum = term;
    for k in 1..500u32 {
        term *= s * q / (k as f64 * (n + k) as f64);
        sum += term;
        if term.abs() <= f64::EPSILON * 1e-3 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller_start(n: u32, x: f64) -> u32 {
    let top = (n as f64).max(x);
    let m = (top + 10.0 * top.sqrt() + 30.0) as u32;
    m + (m % 2)
}

/// Downward recurrence J_{k−1} = (2k/x) J_k − J_{k+1}, normalized by
/// J_0 + 2 Σ J_{2k} = 1.
fn miller_j(n: u32, x: f64) -> f64 {
    let m = miller_start(n, x);
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-300; // J_k
    let mut norm = 0.0;
    let mut value = 0.0;
    for k in (1..=m).rev() {
        if k == n {
            value = cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_AT {
            cur /= RESCALE_AT;
            next /= RESCALE_AT;
            norm /= RESCALE_AT;
            value /= RESCALE_AT;
        }
    }
    if n == 0 {
        value = cur;
    }
    norm += cur;
    value / norm
}

/// Downward recurrence I_{k−1} = (2k/x) I_k + I_{k+1}, normalized by
/// I_0 + 2 Σ_{k≥1} I_k = eˣ.
fn miller_i(n: u32, x: f64) -> f64 {
    let m = miller_start(n, x);
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    let mut value = 0.0;
    for k in (1..=m).rev() {
        if k == n {
            value = cur;
        }
        norm += 2.0 * cur;
        let prev = 2.0 * k as f64 / x * cur + next;
        next = cur;
        cur = prev;
        if cur > RESCALE_AT {
            cur /= RESCALE_AT;
            next /= RESCALE_AT;
            norm /= RESCALE_AT;
            value /= RESCALE_AT;
        }
    }
    if n == 0 {
        value = cur;
    }
    norm += cur;
    // value / norm · eˣ, rearranged to avoid overflowing eˣ.
    (value / norm) * x.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // Periodic trapezoid rule on the integral representations; spectrally
    // accurate and independent of both series and recurrence.
    fn j_quadrature(n: i32, x: f64) -> f64 {
        let m = 400;
        let h = 2.0 * PI / m as f64;
        (0..m)
            .map(|k| {
                let tau = k as f64 * h;
                (n as f64 * tau - x * tau.sin()).cos()
            })
            .sum::<f64>()
            * h
            / (2.0 * PI)
    }

    fn i_quadrature(n: i32, x: f64) -> f64 {
        let m = 400;
        let h = 2.0 * PI / m as f64;
        (0..m)
            .map(|k| {
                let tau = k as f64 * h;
                (x * tau.cos()).exp() * (n as f64 * tau).cos()
            })
            .sum::<f64>()
            * h
            / (2.0 * PI)
    }

    #[test]
    fn known_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
        assert!((bessel_j(1, 1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_i(0, 2.0).unwrap() - 2.279_585_302_336_067).abs() < 1e-14);
        assert!((bessel_j(5, 30.0).unwrap() + 0.143_240_295_512_077_1).abs() < 1e-13);
        assert!((bessel_j(0, 50.0).unwrap() - 0.055_812_327_669_251_815).abs() < 1e-13);
        let i3 = bessel_i(3, 40.0).unwrap();
        assert!((i3 / 1.329_145_566_473_366e16 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn agrees_with_quadrature_oracle() {
        for n in [0, 1, 2, 5, 13, 30] {
            for x in [0.3, 1.0, 4.7, 11.9, 12.0, 17.5, 29.0, 44.0] {
                let q = j_quadrature(n, x);
                let j = bessel_j(n, x).unwrap();
                assert!((j - q).abs() < 1e-12, "J_{n}({x}) = {j} vs {q}");
            }
        }
        for n in [0, 1, 4, 9] {
            for x in [0.5, 2.0, 7.0, 11.0] {
                let q = i_quadrature(n, x);
                let i = bessel_i(n, x).unwrap();
                assert!((i - q).abs() < 1e-12 * q.max(1.0), "I_{n}({x}) = {i} vs {q}");
            }
        }
    }

    #[test]
    fn series_and_recurrence_agree_across_switchover() {
        for n in [0u32, 1, 3, 8, 25] {
            for x in [8.0, 12.0, 15.0] {
                // The alternating series loses about log10(e^x) digits.
                let (s, m) = (series(n, x, -1.0), miller_j(n, x));
                assert!((s - m).abs() < 1e-16 * x.exp(), "J_{n}({x}): {s} vs {m}");
                let (a, b) = (series(n, x, 1.0), miller_i(n, x));
                assert!((a - b).abs() < 1e-13 * a, "I_{n}({x}): {a} vs {b}");
            }
        }
    }

    #[test]
    fn reflection_is_exact() {
        for n in 0..12 {
            for x in [0.7, 13.0, -3.0] {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(bessel_j(-n, x).unwrap(), sign * bessel_j(n, x).unwrap());
                assert_eq!(bessel_i(-n, x).unwrap(), bessel_i(n, x).unwrap());
            }
        }
    }

    #[test]
    fn recurrence_consistency() {
        for n in -40..=40 {
            for x in [0.1, 0.9, 3.3, 9.9, 12.5, 20.0, 37.0, 50.0] {
                let lhs = bessel_j(n - 1, x).unwrap() + bessel_j(n + 1, x).unwrap();
                let rhs = 2.0 * n as f64 / x * bessel_j(n, x).unwrap();
                assert!((lhs - rhs).abs() < 1e-10, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn neumann_addition_identity() {
        // Σ_m (−1)^m J_m(z)² = J_0(2z)
        for z in [0.25, 1.0, 2.2, 3.7, 5.0] {
            let sum: f64 = (-60..=60).map(|m| parity(m) * bessel_j(m, z).unwrap().powi(2)).sum();
            assert!((sum - bessel_j(0, 2.0 * z).unwrap()).abs() < 1e-10, "z={z}");
        }
    }

    #[test]
    fn i0_is_increasing_and_at_least_one() {
        let mut prev = bessel_i(0, 0.0).unwrap();
        for k in 1..=500 {
            let v = bessel_i(0, k as f64 * 0.1).unwrap();
            assert!(v > prev && v >= 1.0);
            prev = v;
        }
    }

    #[test]
    fn imaginary_argument() {
        let z = bessel_j_imag(3, 1.5).unwrap();
        let i3 = bessel_i(3, 1.5).unwrap();
        assert!((z - Complex64::new(0.0, -i3)).norm() < 1e-16);
        let z = bessel_j_imag(-2, 1.5).unwrap();
        assert!((z + bessel_i(2, 1.5).unwrap()).norm() < 1e-16);
    }

    #[test]
    fn domain_is_enforced() {
        assert!(bessel_j(201, 1.0).is_err());
        assert!(bessel_j(0, 50.5).is_err());
        assert!(bessel_i(-201, 1.0).is_err());
        assert!(bessel_i(0, f64::INFINITY).is_err());
        assert!(bessel_j(200, 50.0).is_ok());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_eq!(factorial(20), 2_432_902_008_176_640_000.0);
        assert!((factorial(25) / 1.551_121_004_333_098_6e25 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn wannier_stark_eigenvectors() {
        // H₀ = Σ_m iλ(|m⟩⟨m+1| + |m+1⟩⟨m|) + mω|m⟩⟨m| has eigenvector
        // φ_m = J_{n−m}(2iλ/ω) with eigenvalue nω.
        let big_m = 40i32;
        for (lambda, omega) in [(0.1, 1.0), (0.5, 0.7), (2.0, 2.0), (3.0, 4.0)] {
            let x = 2.0 * lambda / omega;
            for n in [-3, 0, 1, 5] {
                let phi: Vec<Complex64> = (-big_m..=big_m).map(|m| bessel_j_imag(n - m, x).unwrap()).collect();
                let hop = Complex64::new(0.0, lambda);
                let mut res = 0.0;
                for (k, m) in (-big_m + 1..big_m).enumerate() {
                    let i = k + 1;
                    let r = hop * (phi[i + 1] + phi[i - 1]) + phi[i] * ((m - n) as f64 * omega);
                    res += r.norm_sqr();
                }
                let norm: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
                assert!((res / norm).sqrt() < 1e-8, "lambda={lambda} omega={omega} n={n}");
            }
        }
    }
}
