//! Complex 2×2 matrices.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A complex 2×2 matrix stored row-major: `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2C {
    pub m: [[Complex64; 2]; 2],
}

impl Mat2C {
    pub const IDENTITY: Mat2C = Mat2C { m: [[ONE, ZERO], [ZERO, ONE]] };
    pub const SIGMA_X: Mat2C = Mat2C { m: [[ZERO, ONE], [ONE, ZERO]] };
    pub const SIGMA_Z: Mat2C = Mat2C { m: [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]] };

    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2C { m: [[a, b], [c, d]] }
    }

    /// Matrix whose columns are `c0` and `c1`.
    pub fn from_columns(c0: [Complex64; 2], c1: [Complex64; 2]) -> Self {
        Mat2C::new(c0[0], c1[0], c0[1], c1[1])
    }

    pub fn zero() -> Self {
        Mat2C { m: [[ZERO; 2]; 2] }
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|z| *z *= s);
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|z| *z = z.conj());
        out
    }

    pub fn adjoint(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Mat2C::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [self.m[0][0] * v[0] + self.m[0][1] * v[1], self.m[1][0] * v[0] + self.m[1][1] * v[1]]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Both eigenvalues, larger modulus first.
    ///
    /// The larger root comes from the quadratic formula with the sign chosen to
    /// avoid cancellation; the smaller one is `det / μ₁`.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let half_tr = self.trace() * 0.5;
        let det = self.det();
        let disc = (half_tr * half_tr - det).sqrt();
        let plus = half_tr + disc;
        let minus = half_tr - disc;
        let big = if plus.norm() >= minus.norm() { plus } else { minus };
        if big.norm() == 0.0 {
            return [ZERO, ZERO];
        }
        [big, det / big]
    }
}

impl Add for Mat2C {
    type Output = Mat2C;
    fn add(self, rhs: Mat2C) -> Mat2C {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] += rhs.m[i][j];
            }
        }
        out
    }
}

impl Sub for Mat2C {
    type Output = Mat2C;
    fn sub(self, rhs: Mat2C) -> Mat2C {
        self + rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;
    fn mul(self, rhs: Mat2C) -> Mat2C {
        let mut out = Mat2C::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        out
    }
}
