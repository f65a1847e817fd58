//! Fermionic and bosonic amplitude sets, the maps between them, and the
//! synthesis/analysis of the corresponding solution families.
//!
//! Amplitudes are stored unconjugated. The conjugations on the
//! negative-frequency slots are applied at synthesis and analysis time.
//! Continuum modes become unit-weight lattice modes: the (2π)^{−3/2}
//! normalization of plane waves is absorbed into the quadrature weight.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{ErcdError, Result};
use crate::field::{from_pairs, pairs, Branch, SpinorFieldK};
use crate::grid::{GridSpec, MomentumGrid};
use crate::linalg::{CMat4, CVec4, I, ONE, ZERO};
use crate::spectral::{dirac_spinors, propagate, Equation};

const H: f64 = FRAC_1_SQRT_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AmplitudeKind {
    /// (a⁻₊, a⁻₋, a⁺₋, a⁺₊)
    #[serde(rename = "fermionic")]
    Fermionic,
    /// (b⁺, b⁻, b⁰, b⁰̲) ≡ (b¹, b², b³, b⁴)
    #[serde(rename = "bosonic-b")]
    BosonicB,
    /// (ξ¹, ξ², ξ³, ξ⁴)
    #[serde(rename = "bosonic-xi")]
    BosonicXi,
}

impl AmplitudeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AmplitudeKind::Fermionic => "fermionic",
            AmplitudeKind::BosonicB => "bosonic-b",
            AmplitudeKind::BosonicXi => "bosonic-xi",
        }
    }
}

impl fmt::Display for AmplitudeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AmplitudeKind {
    type Err = ErcdError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fermionic" => Ok(AmplitudeKind::Fermionic),
            "bosonic-b" => Ok(AmplitudeKind::BosonicB),
            "bosonic-xi" => Ok(AmplitudeKind::BosonicXi),
            other => Err(ErcdError::UnknownKind(other.to_string())),
        }
    }
}

/// Four complex amplitudes per lattice node.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeSet {
    pub kind: AmplitudeKind,
    grid: Arc<MomentumGrid>,
    pub amps: Vec<CVec4>,
}

impl AmplitudeSet {
    pub fn new(kind: AmplitudeKind, grid: Arc<MomentumGrid>, amps: Vec<CVec4>) -> Result<Self> {
        if amps.len() != grid.len() {
            return Err(ErcdError::GridMismatch);
        }
        Ok(AmplitudeSet { kind, grid, amps })
    }

    pub fn zeros(kind: AmplitudeKind, grid: Arc<MomentumGrid>) -> Self {
        let n = grid.len();
        AmplitudeSet {
            kind,
            grid,
            amps: vec![CVec4::zero(); n],
        }
    }

    /// A single mode: `amp` at node `idx`, zero elsewhere.
    pub fn single(kind: AmplitudeKind, grid: Arc<MomentumGrid>, idx: usize, amp: CVec4) -> Self {
        let mut s = Self::zeros(kind, grid);
        s.amps[idx] = amp;
        s
    }

    /// Complex standard normals in every slot.
    pub fn random<R: Rng + ?Sized>(kind: AmplitudeKind, grid: Arc<MomentumGrid>, rng: &mut R) -> Self {
        let amps = (0..grid.len())
            .map(|_| {
                CVec4(std::array::from_fn(|_| {
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                }))
            })
            .collect();
        AmplitudeSet { kind, grid, amps }
    }

    pub fn grid(&self) -> &Arc<MomentumGrid> {
        &self.grid
    }

    pub fn expect_kind(&self, kind: AmplitudeKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(ErcdError::KindMismatch {
                expected: kind,
                found: self.kind,
            })
        }
    }

    fn mapped(&self, kind: AmplitudeKind, m: &CMat4) -> AmplitudeSet {
        AmplitudeSet {
            kind,
            grid: self.grid.clone(),
            amps: self.amps.iter().map(|a| m.mul_vec(a)).collect(),
        }
    }

    /// Δk³ Σ ‖amp‖².
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(CVec4::norm_sqr).sum::<f64>() * self.grid.weight()
    }

    pub fn max_abs_diff(&self, other: &AmplitudeSet) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (*a - *b).max_abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = AmplitudeDoc {
            grid: self.grid.spec(),
            kind: self.kind,
            nodes: self
                .grid
                .nodes()
                .iter()
                .zip(&self.amps)
                .map(|(s, a)| AmplitudeNodeDoc { k: s.k, amp: pairs(a) })
                .collect(),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: AmplitudeDoc = serde_json::from_str(s)?;
        let grid = Arc::new(MomentumGrid::new(doc.grid)?);
        if doc.nodes.len() != grid.len() || doc.nodes.iter().zip(grid.nodes()).any(|(n, s)| n.k != s.k) {
            return Err(ErcdError::GridMismatch);
        }
        let amps = doc.nodes.iter().map(|n| from_pairs(&n.amp)).collect();
        AmplitudeSet::new(doc.kind, grid, amps)
    }
}

#[derive(Serialize, Deserialize)]
struct AmplitudeNodeDoc {
    k: [f64; 3],
    amp: [[f64; 2]; 4],
}

#[derive(Serialize, Deserialize)]
struct AmplitudeDoc {
    grid: GridSpec,
    kind: AmplitudeKind,
    nodes: Vec<AmplitudeNodeDoc>,
}

/// The two constant matrices relating fermionic and bosonic amplitudes of
/// one and the same state.
#[derive(Clone, Copy, Debug)]
pub struct UMat {
    pub a_from_b: CMat4,
    pub b_from_a: CMat4,
}

impl UMat {
    pub fn new() -> Self {
        let (o, z) = (ONE, ZERO);
        let h = Complex64::new(H, 0.0);
        let a_from_b = CMat4([
            [o, z, z, z],
            [z, z, -h, -h],
            [z, -I, z, z],
            [z, z, h, -h],
        ]);
        let b_from_a = CMat4([
            [o, z, z, z],
            [z, z, I, z],
            [z, -h, z, h],
            [z, -h, z, -h],
        ]);
        UMat { a_from_b, b_from_a }
    }
}

impl Default for UMat {
    fn default() -> Self {
        Self::new()
    }
}

/// ξ from b: ξ¹ = b¹, ξ² = −(b³+b⁴)/√2, ξ³ = −i b², ξ⁴ = (b³−b⁴)/√2.
pub fn xi_from_b_matrix() -> CMat4 {
    let (o, z) = (ONE, ZERO);
    let h = Complex64::new(H, 0.0);
    CMat4([
        [o, z, z, z],
        [z, z, -h, -h],
        [z, -I, z, z],
        [z, z, h, -h],
    ])
}

/// Inverse of [`xi_from_b_matrix`].
pub fn b_from_xi_matrix() -> CMat4 {
    xi_from_b_matrix().adjoint()
}

pub fn xi_from_b(b: &AmplitudeSet) -> Result<AmplitudeSet> {
    b.expect_kind(AmplitudeKind::BosonicB)?;
    Ok(b.mapped(AmplitudeKind::BosonicXi, &xi_from_b_matrix()))
}

pub fn b_from_xi(xi: &AmplitudeSet) -> Result<AmplitudeSet> {
    xi.expect_kind(AmplitudeKind::BosonicXi)?;
    Ok(xi.mapped(AmplitudeKind::BosonicB, &b_from_xi_matrix()))
}

pub fn a_from_b(b: &AmplitudeSet) -> Result<AmplitudeSet> {
    b.expect_kind(AmplitudeKind::BosonicB)?;
    Ok(b.mapped(AmplitudeKind::Fermionic, &UMat::new().a_from_b))
}

pub fn b_from_a(a: &AmplitudeSet) -> Result<AmplitudeSet> {
    a.expect_kind(AmplitudeKind::Fermionic)?;
    Ok(a.mapped(AmplitudeKind::BosonicB, &UMat::new().b_from_a))
}

/// Cartesian-ort expansion shared by the fermionic and ξ-bosonic FW families:
/// c¹d₁ + c²d₂ on e^{−ikx}, conj(c³)d₃ + conj(c⁴)d₄ on e^{+ikx}.
fn synth_fw_cartesian(coeffs: &AmplitudeSet) -> SpinorFieldK {
    let positive = coeffs
        .amps
        .iter()
        .map(|a| CVec4([a[0], a[1], ZERO, ZERO]))
        .collect();
    let negative = coeffs
        .amps
        .iter()
        .map(|a| CVec4([ZERO, ZERO, a[2].conj(), a[3].conj()]))
        .collect();
    SpinorFieldK::from_branches(coeffs.grid.clone(), 0.0, positive, negative)
        .expect("amplitude set and grid agree")
}

pub fn synth_fw_fermionic(a: &AmplitudeSet) -> Result<SpinorFieldK> {
    a.expect_kind(AmplitudeKind::Fermionic)?;
    Ok(synth_fw_cartesian(a))
}

/// a⁻₊v₁⁻ + a⁻₋v₂⁻ on e^{−ikx}; conj(a⁺₋)v₁⁺ + conj(a⁺₊)v₂⁺ on e^{+ikx}.
pub fn synth_dirac_fermionic(a: &AmplitudeSet) -> Result<SpinorFieldK> {
    a.expect_kind(AmplitudeKind::Fermionic)?;
    let grid = a.grid.clone();
    let mut positive = Vec::with_capacity(grid.len());
    let mut negative = Vec::with_capacity(grid.len());
    for (s, amp) in grid.nodes().iter().zip(&a.amps) {
        let sp = dirac_spinors(s)?;
        positive.push(amp[0] * sp.v1_minus + amp[1] * sp.v2_minus);
        negative.push(amp[2].conj() * sp.v1_plus + amp[3].conj() * sp.v2_plus);
    }
    SpinorFieldK::from_branches(grid, 0.0, positive, negative)
}

pub fn synth_fw_bosonic(b: &AmplitudeSet) -> Result<SpinorFieldK> {
    Ok(synth_fw_cartesian(&xi_from_b(b)?))
}

/// e^{−ikx}[b¹v₁⁻ − (b³+b⁴)v₂⁻/√2] + e^{+ikx}[i·conj(b²)v₁⁺ + (conj(b³) − conj(b⁴))v₂⁺/√2].
pub fn synth_dirac_bosonic(b: &AmplitudeSet) -> Result<SpinorFieldK> {
    b.expect_kind(AmplitudeKind::BosonicB)?;
    let grid = b.grid.clone();
    let h = Complex64::new(H, 0.0);
    let mut positive = Vec::with_capacity(grid.len());
    let mut negative = Vec::with_capacity(grid.len());
    for (s, amp) in grid.nodes().iter().zip(&b.amps) {
        let sp = dirac_spinors(s)?;
        let [b1, b2, b3, b4] = amp.0;
        positive.push(b1 * sp.v1_minus - (h * (b3 + b4)) * sp.v2_minus);
        negative.push((I * b2.conj()) * sp.v1_plus + (h * (b3.conj() - b4.conj())) * sp.v2_plus);
    }
    SpinorFieldK::from_branches(grid, 0.0, positive, negative)
}

/// Which basis a field is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Picture {
    /// Cartesian orts d_α (FW representation).
    Fw,
    /// Dirac spinors v_r∓ (Pauli-Dirac representation).
    Dirac,
}

impl From<Picture> for Equation {
    fn from(p: Picture) -> Equation {
        match p {
            Picture::Fw => Equation::Fw,
            Picture::Dirac => Equation::Dirac,
        }
    }
}

/// Instantaneous amplitudes of a field: orthogonal projection of each branch
/// onto its two solution directions, then the requested amplitude map.
pub fn analyze(field: &SpinorFieldK, kind: AmplitudeKind, picture: Picture) -> Result<AmplitudeSet> {
    let grid = field.grid().clone();
    let mut coeffs = Vec::with_capacity(grid.len());
    for (i, s) in grid.nodes().iter().enumerate() {
        let basis = match picture {
            Picture::Fw => [CVec4::ort(1), CVec4::ort(2), CVec4::ort(3), CVec4::ort(4)],
            Picture::Dirac => dirac_spinors(s)?.as_array(),
        };
        let p = &field.positive[i];
        let n = &field.negative[i];
        coeffs.push(CVec4([
            basis[0].dot(p),
            basis[1].dot(p),
            basis[2].dot(n).conj(),
            basis[3].dot(n).conj(),
        ]));
    }
    let cartesian = AmplitudeSet::new(AmplitudeKind::Fermionic, grid, coeffs)?;
    match kind {
        AmplitudeKind::Fermionic => Ok(cartesian),
        AmplitudeKind::BosonicXi => Ok(AmplitudeSet {
            kind,
            ..cartesian
        }),
        AmplitudeKind::BosonicB => b_from_a(&cartesian),
    }
}

/// Max over nodes of the difference between the closed-form propagation of
/// `field` by `t` and the same field carrying the plane-wave phases
/// e^{∓iωt} on its two branches.
pub fn equation_residual(field: &SpinorFieldK, which: Equation, t: f64) -> f64 {
    let evolved = propagate(which, field, t);
    let phased = field.map_scalar(|s, b| {
        let w = s.omega();
        match b {
            Branch::Positive => Complex64::from_polar(1.0, -w * t),
            Branch::Negative => Complex64::from_polar(1.0, w * t),
        }
    });
    evolved.max_abs_diff(&phased)
}
