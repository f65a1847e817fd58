//! R-linear operators on C⁴.
//!
//! Every map that is linear over the reals splits uniquely as
//! `v ↦ L·v + A·conj(v)`. The pair `(L, A)` is the canonical representation;
//! the 8×8 real matrix acting on `(Re v; Im v)` is kept as an independent
//! oracle and is used for all equality checks.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::linalg::{CMat4, CVec4, RMat8};

/// Relation tolerance for identities among exactly representable matrices.
pub const TAU_ALG: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RLinOp {
    pub linear: CMat4,
    pub antilinear: CMat4,
}

impl RLinOp {
    pub const fn new(linear: CMat4, antilinear: CMat4) -> Self {
        RLinOp { linear, antilinear }
    }

    pub fn linear(m: CMat4) -> Self {
        RLinOp::new(m, CMat4::zero())
    }

    /// `v ↦ m·conj(v)`.
    pub fn antilinear(m: CMat4) -> Self {
        RLinOp::new(CMat4::zero(), m)
    }

    pub fn identity() -> Self {
        Self::linear(CMat4::identity())
    }

    pub fn zero() -> Self {
        Self::linear(CMat4::zero())
    }

    /// Complex conjugation Ĉ.
    pub fn conjugation() -> Self {
        Self::antilinear(CMat4::identity())
    }

    /// Multiplication by the imaginary unit.
    pub fn imag_unit() -> Self {
        Self::linear(CMat4::identity().scale(crate::linalg::I))
    }

    pub fn is_linear(&self) -> bool {
        self.antilinear.max_abs() == 0.0
    }

    pub fn apply(&self, v: &CVec4) -> CVec4 {
        self.linear.mul_vec(v) + self.antilinear.mul_vec(&v.conj())
    }

    /// `self ∘ other`, i.e. `other` acts first.
    pub fn compose(&self, other: &RLinOp) -> RLinOp {
        let (l1, a1) = (self.linear, self.antilinear);
        let (l2, a2) = (other.linear, other.antilinear);
        RLinOp::new(l1 * l2 + a1 * a2.conj(), l1 * a2 + a1 * l2.conj())
    }

    pub fn commutator(&self, other: &RLinOp) -> RLinOp {
        self.compose(other) - other.compose(self)
    }

    pub fn anticommutator(&self, other: &RLinOp) -> RLinOp {
        self.compose(other) + other.compose(self)
    }

    /// Scale by a real number. Real scalars commute with every R-linear map.
    pub fn scale(&self, s: f64) -> RLinOp {
        RLinOp::new(self.linear.scale_re(s), self.antilinear.scale_re(s))
    }

    /// `(z·I) ∘ self`.
    pub fn left_scale(&self, z: Complex64) -> RLinOp {
        RLinOp::new(self.linear.scale(z), self.antilinear.scale(z))
    }

    /// Oracle embedding into 8×8 real matrices acting on `(Re v; Im v)`.
    pub fn to_real8(&self) -> RMat8 {
        let mut m = RMat8::zero();
        for i in 0..4 {
            for j in 0..4 {
                let l = self.linear.0[i][j];
                let a = self.antilinear.0[i][j];
                m.0[i][j] = l.re + a.re;
                m.0[i][j + 4] = a.im - l.im;
                m.0[i + 4][j] = l.im + a.im;
                m.0[i + 4][j + 4] = l.re - a.re;
            }
        }
        m
    }

    /// Unique decomposition of an arbitrary 8×8 real matrix into `(L, A)`.
    pub fn from_real8(m: &RMat8) -> RLinOp {
        let mut linear = CMat4::zero();
        let mut antilinear = CMat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let a = m.0[i][j];
                let b = m.0[i][j + 4];
                let cc = m.0[i + 4][j];
                let d = m.0[i + 4][j + 4];
                linear.0[i][j] = Complex64::new(0.5 * (a + d), 0.5 * (cc - b));
                antilinear.0[i][j] = Complex64::new(0.5 * (a - d), 0.5 * (cc + b));
            }
        }
        RLinOp::new(linear, antilinear)
    }

    pub fn is_finite(&self) -> bool {
        self.linear.is_finite() && self.antilinear.is_finite()
    }
}

/// Max-abs entry difference of the 8×8 oracles.
pub fn op_norm_diff(a: &RLinOp, b: &RLinOp) -> f64 {
    a.to_real8().max_abs_diff(&b.to_real8())
}

impl Mul for RLinOp {
    type Output = RLinOp;
    fn mul(self, o: RLinOp) -> RLinOp {
        self.compose(&o)
    }
}

impl Mul<&RLinOp> for &RLinOp {
    type Output = RLinOp;
    fn mul(self, o: &RLinOp) -> RLinOp {
        self.compose(o)
    }
}

impl Add for RLinOp {
    type Output = RLinOp;
    fn add(self, o: RLinOp) -> RLinOp {
        RLinOp::new(self.linear + o.linear, self.antilinear + o.antilinear)
    }
}

impl Sub for RLinOp {
    type Output = RLinOp;
    fn sub(self, o: RLinOp) -> RLinOp {
        RLinOp::new(self.linear - o.linear, self.antilinear - o.antilinear)
    }
}

impl Neg for RLinOp {
    type Output = RLinOp;
    fn neg(self) -> RLinOp {
        self.scale(-1.0)
    }
}

impl Mul<RLinOp> for f64 {
    type Output = RLinOp;
    fn mul(self, o: RLinOp) -> RLinOp {
        o.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, I, ONE, ZERO};

    #[test]
    fn conjugation_is_involution() {
        let cc = RLinOp::conjugation();
        assert_eq!(op_norm_diff(&(cc * cc), &RLinOp::identity()), 0.0);
    }

    #[test]
    fn conjugation_anticommutes_with_i() {
        let cc = RLinOp::conjugation();
        let i = RLinOp::imag_unit();
        let ic = i * cc;
        let ci = cc * i;
        assert_eq!(ic, RLinOp::antilinear(CMat4::identity().scale(I)));
        assert_eq!(ci, RLinOp::antilinear(CMat4::identity().scale(-I)));
    }

    #[test]
    fn apply_conjugation() {
        let v = CVec4::new(I, ZERO, ZERO, ZERO);
        let out = RLinOp::conjugation().apply(&v);
        assert_eq!(out, CVec4::new(-I, ZERO, ZERO, ZERO));
        let id = RLinOp::identity();
        let w = CVec4::new(c(1.0, 2.0), c(-3.0, 0.5), ONE, I);
        assert_eq!(id.apply(&w), w);
    }

    #[test]
    fn real8_of_identity_and_i() {
        assert_eq!(RLinOp::identity().to_real8(), RMat8::identity());
        let m = RLinOp::imag_unit().to_real8();
        let mut expected = RMat8::zero();
        for k in 0..4 {
            expected.0[k][k + 4] = -1.0;
            expected.0[k + 4][k] = 1.0;
        }
        assert_eq!(m, expected);
    }

    #[test]
    fn norm_diff_basics() {
        let o = RLinOp::conjugation();
        assert_eq!(op_norm_diff(&o, &o), 0.0);
        assert_eq!(op_norm_diff(&RLinOp::identity(), &RLinOp::zero()), 1.0);
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let o = RLinOp::new(
            CMat4::diag([ONE, I, -ONE, c(0.5, 0.5)]),
            CMat4::identity().scale(c(0.0, 2.0)),
        );
        assert_eq!(op_norm_diff(&o.commutator(&o), &RLinOp::zero()), 0.0);
    }
}
