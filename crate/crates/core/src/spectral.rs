//! Momentum-space dynamics: ω, the Dirac Hamiltonian, the FW transform V±,
//! exact per-node propagators, an RK4 cross-check, and the Dirac plane-wave
//! spinors.
//!
//! All momentum symbols take the physical momentum of the mode. For the
//! negative-frequency branch the physical momentum of node k is −k; use
//! [`Branch::momentum`] to resolve it.

use std::sync::LazyLock;

use num_complex::Complex64;

use crate::error::{ErcdError, Result};
use crate::field::{Branch, SpinorFieldK};
use crate::grid::MomentumSample;
use crate::linalg::{pauli, scale2, CMat4, CVec4, ID2, I, ONE, ZERO, ZERO2};
use crate::rlinear::RLinOp;

/// Linear matrices γ⁰, γ¹, γ², γ³ (Pauli-Dirac representation).
pub static GAMMA: LazyLock<[CMat4; 4]> = LazyLock::new(|| {
    let minus = |m| scale2(m, (-1.0).into());
    let spatial = |k| CMat4::from_blocks(ZERO2, pauli(k), minus(pauli(k)), ZERO2);
    [
        CMat4::from_blocks(ID2, ZERO2, ZERO2, minus(ID2)),
        spatial(1),
        spatial(2),
        spatial(3),
    ]
});

fn check_mass(s: &MomentumSample) -> Result<()> {
    if s.m > 0.0 && s.m.is_finite() {
        Ok(())
    } else {
        Err(ErcdError::NonPositiveMass(s.m))
    }
}

pub fn omega(s: &MomentumSample) -> f64 {
    s.omega()
}

/// γ⃗·k⃗ = Σ γⁿ kⁿ.
pub fn gamma_dot(k: &[f64; 3]) -> CMat4 {
    (1..=3).fold(CMat4::zero(), |acc, n| acc + GAMMA[n].scale_re(k[n - 1]))
}

/// H(k) = α⃗·k⃗ + βm with α⃗ = γ⁰γ⃗, β = γ⁰.
pub fn dirac_hamiltonian(s: &MomentumSample) -> CMat4 {
    GAMMA[0] * (gamma_dot(&s.k) + CMat4::identity().scale_re(s.m))
}

fn fw_norm(s: &MomentumSample) -> f64 {
    let w = s.omega();
    1.0 / (2.0 * w * (w + s.m)).sqrt()
}

/// Momentum symbol of V⁺ for a mode of physical momentum k:
/// (ω + m − γ⃗·k⃗)/√(2ω(ω+m)).
pub fn v_plus(s: &MomentumSample) -> Result<CMat4> {
    check_mass(s)?;
    let w = s.omega();
    Ok((CMat4::identity().scale_re(w + s.m) - gamma_dot(&s.k)).scale_re(fw_norm(s)))
}

/// Momentum symbol of V⁻: (ω + m + γ⃗·k⃗)/√(2ω(ω+m)).
pub fn v_minus(s: &MomentumSample) -> Result<CMat4> {
    check_mass(s)?;
    let w = s.omega();
    Ok((CMat4::identity().scale_re(w + s.m) + gamma_dot(&s.k)).scale_re(fw_norm(s)))
}

/// The involution v = diag(I₂, Ĉ·I₂).
pub fn v_operator() -> RLinOp {
    RLinOp::new(
        CMat4::diag([ONE, ONE, ZERO, ZERO]),
        CMat4::diag([ZERO, ZERO, ONE, ONE]),
    )
}

/// exp(−iγ⁰ω t) = cos(ωt)·I − i sin(ωt)·γ⁰.
pub fn fw_propagator(s: &MomentumSample, t: f64) -> CMat4 {
    let (sin, cos) = (s.omega() * t).sin_cos();
    let minus = Complex64::new(cos, -sin);
    let plus = Complex64::new(cos, sin);
    CMat4::diag([minus, minus, plus, plus])
}

/// exp(−iH t) = cos(ωt)·I − i sin(ωt)·H/ω.
pub fn dirac_propagator(s: &MomentumSample, t: f64) -> CMat4 {
    let w = s.omega();
    let (sin, cos) = (w * t).sin_cos();
    CMat4::identity().scale_re(cos) - dirac_hamiltonian(s).scale(I * (sin / w))
}

/// Which free equation drives the evolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Equation {
    /// (∂₀ + iγ⁰ω̂)φ = 0
    Fw,
    /// (∂₀ + iH)ψ = 0
    Dirac,
}

/// Generator M of dφ/dt = −iMφ at a node of the given branch.
pub fn generator(eq: Equation, s: &MomentumSample, b: Branch) -> CMat4 {
    match eq {
        Equation::Fw => GAMMA[0].scale_re(s.omega()),
        Equation::Dirac => dirac_hamiltonian(&b.momentum(s)),
    }
}

pub fn propagator(eq: Equation, s: &MomentumSample, b: Branch, t: f64) -> CMat4 {
    match eq {
        Equation::Fw => fw_propagator(s, t),
        Equation::Dirac => dirac_propagator(&b.momentum(s), t),
    }
}

pub fn propagate(eq: Equation, f: &SpinorFieldK, t: f64) -> SpinorFieldK {
    let mut out = f.map_matrix(|s, b| propagator(eq, s, b, t));
    out.t = f.t + t;
    out
}

pub fn fw_propagate(f: &SpinorFieldK, t: f64) -> SpinorFieldK {
    propagate(Equation::Fw, f, t)
}

pub fn dirac_propagate(f: &SpinorFieldK, t: f64) -> SpinorFieldK {
    propagate(Equation::Dirac, f, t)
}

/// Classical RK4 for dφ/dt = −iMφ with `steps` equal steps.
pub fn rk4_propagate(eq: Equation, f: &SpinorFieldK, t: f64, steps: usize) -> Result<SpinorFieldK> {
    if steps == 0 {
        return Err(ErcdError::InvalidArgument("rk4 needs at least one step".into()));
    }
    let h = t / steps as f64;
    let mut out = f.map_matrix(|s, b| rk4_matrix(&generator(eq, s, b), h, steps));
    out.t = f.t + t;
    Ok(out)
}

/// RK4 stepping of a constant linear system is a fixed matrix polynomial per step.
fn rk4_matrix(m: &CMat4, h: f64, steps: usize) -> CMat4 {
    // A = −i h M; one step is I + A + A²/2 + A³/6 + A⁴/24
    let a = m.scale(Complex64::new(0.0, -h));
    let a2 = a * a;
    let a3 = a2 * a;
    let a4 = a3 * a;
    let step = CMat4::identity() + a + a2.scale_re(0.5) + a3.scale_re(1.0 / 6.0) + a4.scale_re(1.0 / 24.0);
    let mut acc = CMat4::identity();
    for _ in 0..steps {
        acc = step * acc;
    }
    acc
}

/// The four plane-wave spinors v₁⁻, v₂⁻, v₁⁺, v₂⁺ at momentum k.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracSpinors {
    pub v1_minus: CVec4,
    pub v2_minus: CVec4,
    pub v1_plus: CVec4,
    pub v2_plus: CVec4,
}

impl DiracSpinors {
    pub fn as_array(&self) -> [CVec4; 4] {
        [self.v1_minus, self.v2_minus, self.v1_plus, self.v2_plus]
    }

    /// Columns (v₁⁻, v₂⁻, v₁⁺, v₂⁺).
    pub fn matrix(&self) -> CMat4 {
        CMat4::from_columns(self.as_array())
    }
}

/// v_r⁻ = N((ω+m)d_r; (σ⃗·k⃗)d_r), v_r⁺ = N((σ⃗·k⃗)d_r; (ω+m)d_r), N = 1/√(2ω(ω+m)).
///
/// v_r⁻ solves H(k)v = ωv; v_r⁺ solves H(−k)v = −ωv, which is the pairing
/// with the e^{+ikx} branch.
pub fn dirac_spinors(s: &MomentumSample) -> Result<DiracSpinors> {
    check_mass(s)?;
    let n = fw_norm(s);
    let wm = s.omega() + s.m;
    let [kx, ky, kz] = s.k;
    // σ⃗·k⃗
    let sk = [
        [Complex64::new(kz, 0.0), Complex64::new(kx, -ky)],
        [Complex64::new(kx, ky), Complex64::new(-kz, 0.0)],
    ];
    let upper = |r: usize| {
        CVec4([
            Complex64::from(wm * n) * ID2[0][r],
            Complex64::from(wm * n) * ID2[1][r],
            sk[0][r] * n,
            sk[1][r] * n,
        ])
    };
    let lower = |r: usize| {
        CVec4([
            sk[0][r] * n,
            sk[1][r] * n,
            Complex64::from(wm * n) * ID2[0][r],
            Complex64::from(wm * n) * ID2[1][r],
        ])
    };
    Ok(DiracSpinors {
        v1_minus: upper(0),
        v2_minus: upper(1),
        v1_plus: lower(0),
        v2_plus: lower(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rlinear::{op_norm_diff, TAU_ALG};

    fn sample(k: [f64; 3]) -> MomentumSample {
        MomentumSample::new(k, 1.0).unwrap()
    }

    #[test]
    fn hamiltonian_at_rest() {
        let h = dirac_hamiltonian(&sample([0.0; 3]));
        assert_eq!(h, GAMMA[0]);
        assert_eq!(h.trace(), ZERO);
    }

    #[test]
    fn hamiltonian_squares_to_omega_sqr() {
        let s = sample([0.3, -1.1, 0.7]);
        let h = dirac_hamiltonian(&s);
        let w2 = s.omega().powi(2);
        assert!((h * h).max_abs_diff(&CMat4::identity().scale_re(w2)) <= TAU_ALG);
        assert!(h.max_abs_diff(&h.adjoint()) == 0.0);
        assert!(h.trace().norm() <= TAU_ALG);
    }

    #[test]
    fn fw_transform_at_rest_is_identity() {
        let s = sample([0.0; 3]);
        assert_eq!(v_plus(&s).unwrap(), CMat4::identity());
        assert_eq!(v_minus(&s).unwrap(), CMat4::identity());
    }

    #[test]
    fn fw_link_on_x_axis() {
        let s = sample([1.0, 0.0, 0.0]);
        let vp = v_plus(&s).unwrap();
        let vm = v_minus(&s).unwrap();
        assert!((vp * vm).max_abs_diff(&CMat4::identity()) <= TAU_ALG);
        let lhs = vp * GAMMA[0].scale_re(s.omega()) * vm;
        assert!(lhs.max_abs_diff(&dirac_hamiltonian(&s)) <= TAU_ALG);
    }

    #[test]
    fn fw_transform_rejects_massless() {
        let s = MomentumSample { k: [1.0, 0.0, 0.0], m: 0.0 };
        assert!(v_plus(&s).is_err());
        assert!(v_minus(&s).is_err());
        assert!(dirac_spinors(&s).is_err());
    }

    #[test]
    fn spinors_at_rest_are_cartesian() {
        let sp = dirac_spinors(&sample([0.0; 3])).unwrap();
        assert_eq!(sp.as_array(), [CVec4::ort(1), CVec4::ort(2), CVec4::ort(3), CVec4::ort(4)]);
    }

    #[test]
    fn v_plus_maps_orts_to_spinors() {
        let s = sample([0.4, -0.9, 1.3]);
        let sp = dirac_spinors(&s).unwrap();
        let vp = v_plus(&s).unwrap();
        assert!((vp * CVec4::ort(1) - sp.v1_minus).max_abs() <= TAU_ALG);
        assert!((vp * CVec4::ort(2) - sp.v2_minus).max_abs() <= TAU_ALG);
        let vpn = v_plus(&s.negated()).unwrap();
        assert!((vpn * CVec4::ort(3) - sp.v1_plus).max_abs() <= TAU_ALG);
        assert!((vpn * CVec4::ort(4) - sp.v2_plus).max_abs() <= TAU_ALG);
    }

    #[test]
    fn fw_propagator_phase_on_d1() {
        let s = sample([0.5, 0.5, 0.0]);
        let t = 0.8;
        let out = fw_propagator(&s, t) * CVec4::ort(1);
        let expect = CVec4::ort(1).scale(Complex64::from_polar(1.0, -s.omega() * t));
        assert!((out - expect).max_abs() <= 1e-15);
    }

    #[test]
    fn dirac_propagator_at_rest() {
        let s = sample([0.0; 3]);
        let t: f64 = 1.7;
        let expect = CMat4::identity().scale_re(t.cos()) - GAMMA[0].scale(I * t.sin());
        assert!(dirac_propagator(&s, t).max_abs_diff(&expect) <= 1e-15);
    }

    #[test]
    fn v_involution() {
        let v = v_operator();
        assert_eq!(op_norm_diff(&(v * v), &RLinOp::identity()), 0.0);
    }
}
