//! Fixed-size complex 4-vectors, 4×4 complex matrices and 8×8 real matrices.
//!
//! Everything here is `Copy` and stack allocated; the sizes never change.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Element of C⁴.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct CVec4(pub [Complex64; 4]);

impl CVec4 {
    pub const fn zero() -> Self {
        CVec4([ZERO; 4])
    }

    /// Cartesian ort d_α, with `alpha` counted from 1.
    pub fn ort(alpha: usize) -> Self {
        assert!((1..=4).contains(&alpha), "ort index must be 1..=4");
        let mut v = Self::zero();
        v.0[alpha - 1] = ONE;
        v
    }

    pub fn new(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Self {
        CVec4([a, b, cc, d])
    }

    pub fn conj(&self) -> Self {
        CVec4(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CVec4(self.0.map(|z| z * s))
    }

    /// Hermitian inner product ⟨self, other⟩ = Σ conj(selfᵢ)·otherᵢ.
    pub fn dot(&self, other: &CVec4) -> Complex64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for CVec4 {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for CVec4 {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

impl Add for CVec4 {
    type Output = CVec4;
    fn add(self, o: CVec4) -> CVec4 {
        CVec4(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl AddAssign for CVec4 {
    fn add_assign(&mut self, o: CVec4) {
        for i in 0..4 {
            self.0[i] += o.0[i];
        }
    }
}

impl Sub for CVec4 {
    type Output = CVec4;
    fn sub(self, o: CVec4) -> CVec4 {
        CVec4(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for CVec4 {
    type Output = CVec4;
    fn neg(self) -> CVec4 {
        CVec4(self.0.map(|z| -z))
    }
}

impl Mul<CVec4> for Complex64 {
    type Output = CVec4;
    fn mul(self, v: CVec4) -> CVec4 {
        v.scale(self)
    }
}

impl Mul<CVec4> for f64 {
    type Output = CVec4;
    fn mul(self, v: CVec4) -> CVec4 {
        v.scale(Complex64::new(self, 0.0))
    }
}

/// 4×4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct CMat4(pub [[Complex64; 4]; 4]);

impl CMat4 {
    pub const fn zero() -> Self {
        CMat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diag([ONE; 4])
    }

    pub fn diag(d: [Complex64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, z) in d.into_iter().enumerate() {
            m.0[i][i] = z;
        }
        m
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        CMat4(rows.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    /// Block matrix [[a, b], [cc, d]] from 2×2 blocks.
    pub fn from_blocks(
        a: [[Complex64; 2]; 2],
        b: [[Complex64; 2]; 2],
        cc: [[Complex64; 2]; 2],
        d: [[Complex64; 2]; 2],
    ) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a[i][j];
                m.0[i][j + 2] = b[i][j];
                m.0[i + 2][j] = cc[i][j];
                m.0[i + 2][j + 2] = d[i][j];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        CMat4(self.0.map(|r| r.map(|z| z.conj())))
    }

    pub fn transpose(&self) -> Self {
        CMat4(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMat4(self.0.map(|r| r.map(|z| z * s)))
    }

    pub fn scale_re(&self, s: f64) -> Self {
        CMat4(self.0.map(|r| r.map(|z| z * s)))
    }

    pub fn mul_vec(&self, v: &CVec4) -> CVec4 {
        CVec4(std::array::from_fn(|i| {
            (0..4).map(|j| self.0[i][j] * v.0[j]).sum()
        }))
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMat4) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn column(&self, j: usize) -> CVec4 {
        CVec4(std::array::from_fn(|i| self.0[i][j]))
    }

    pub fn from_columns(cols: [CVec4; 4]) -> Self {
        CMat4(std::array::from_fn(|i| std::array::from_fn(|j| cols[j].0[i])))
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for CMat4 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for CMat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Add for CMat4 {
    type Output = CMat4;
    fn add(self, o: CMat4) -> CMat4 {
        CMat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j] + o.0[i][j])
        }))
    }
}

impl Sub for CMat4 {
    type Output = CMat4;
    fn sub(self, o: CMat4) -> CMat4 {
        CMat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j] - o.0[i][j])
        }))
    }
}

impl Neg for CMat4 {
    type Output = CMat4;
    fn neg(self) -> CMat4 {
        self.scale_re(-1.0)
    }
}

impl Mul for CMat4 {
    type Output = CMat4;
    fn mul(self, o: CMat4) -> CMat4 {
        CMat4(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|k| self.0[i][k] * o.0[k][j]).sum())
        }))
    }
}

impl Mul<CVec4> for CMat4 {
    type Output = CVec4;
    fn mul(self, v: CVec4) -> CVec4 {
        self.mul_vec(&v)
    }
}

/// 8×8 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RMat8(pub [[f64; 8]; 8]);

impl RMat8 {
    pub const fn zero() -> Self {
        RMat8([[0.0; 8]; 8])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..8 {
            m.0[i][i] = 1.0;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        RMat8(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i])))
    }

    pub fn max_abs_diff(&self, other: &RMat8) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Row-major flattening into R⁶⁴.
    pub fn flatten(&self) -> [f64; 64] {
        std::array::from_fn(|k| self.0[k / 8][k % 8])
    }

    pub fn mul_vec(&self, v: &[f64; 8]) -> [f64; 8] {
        std::array::from_fn(|i| (0..8).map(|j| self.0[i][j] * v[j]).sum())
    }
}

impl Mul for RMat8 {
    type Output = RMat8;
    fn mul(self, o: RMat8) -> RMat8 {
        RMat8(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..8).map(|k| self.0[i][k] * o.0[k][j]).sum())
        }))
    }
}

/// Pauli matrices σ¹, σ², σ³.
pub fn pauli(k: usize) -> [[Complex64; 2]; 2] {
    match k {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("Pauli index must be 1..=3"),
    }
}

pub fn scale2(m: [[Complex64; 2]; 2], s: Complex64) -> [[Complex64; 2]; 2] {
    m.map(|r| r.map(|z| z * s))
}

pub const ZERO2: [[Complex64; 2]; 2] = [[ZERO; 2]; 2];
pub const ID2: [[Complex64; 2]; 2] = [[ONE, ZERO], [ZERO, ONE]];
