//! Bosonic Poincaré generators on momentum-grid fields.
//!
//! Index placement follows the metric diag(+,−,−,−). Grid momenta are the
//! contravariant components kⁿ; lower-index coordinates are x_l = −xˡ. On a
//! branch of sign σ (+1 for e^{+ik·x}, −1 for e^{−ik·x}):
//!
//! * ∂_n = ∂/∂xⁿ acts as multiplication by iσkⁿ,
//! * xˡ acts as iσ ∂/∂kˡ, evaluated by 4th-order centered differences with
//!   zero padding outside the grid.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bosonic::{casimir_target, explicit_breve_spin};
use crate::charges::pairwise_sum;
use crate::error::{ErcdError, Result};
use crate::field::{Branch, SpinorFieldK};
use crate::grid::MomentumGrid;
use crate::linalg::{CMat4, CVec4, I};
use crate::report::RelationReport;
use crate::rlinear::{op_norm_diff, RLinOp};
use crate::spectral::{fw_propagate, GAMMA};

/// Tolerance for derivative-bearing checks on the default grid.
pub const TAU_SPEC: f64 = 1e-6;
/// Tolerance for checks that involve no differentiation.
pub const TAU_EXACT: f64 = 1e-10;
/// Fields with boundary entries above this are not differentiable on the grid.
pub const SMOOTH_CUTOFF: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorId {
    P0,
    /// p_n, n in 1..=3.
    P(usize),
    /// j_{ln}, 1 ≤ l, n ≤ 3, l ≠ n.
    J(usize, usize),
    /// j_{0k}, k in 1..=3.
    Boost(usize),
}

impl GeneratorId {
    /// p0, p1, p2, p3, j23, j31, j12, j01, j02, j03.
    pub const BASIS: [GeneratorId; 10] = [
        GeneratorId::P0,
        GeneratorId::P(1),
        GeneratorId::P(2),
        GeneratorId::P(3),
        GeneratorId::J(2, 3),
        GeneratorId::J(3, 1),
        GeneratorId::J(1, 2),
        GeneratorId::Boost(1),
        GeneratorId::Boost(2),
        GeneratorId::Boost(3),
    ];

    pub fn needs_derivative(self) -> bool {
        matches!(self, GeneratorId::J(..) | GeneratorId::Boost(_))
    }

    fn validate(self) -> Result<()> {
        let ok = match self {
            GeneratorId::P0 => true,
            GeneratorId::P(n) | GeneratorId::Boost(n) => (1..=3).contains(&n),
            GeneratorId::J(l, n) => (1..=3).contains(&l) && (1..=3).contains(&n) && l != n,
        };
        if ok {
            Ok(())
        } else {
            Err(ErcdError::InvalidArgument(format!("no generator {self}")))
        }
    }

    /// Covariant index pair (μ, ν) of M_{μν}, or the index of P_μ.
    fn covariant(self) -> Cov {
        match self {
            GeneratorId::P0 => Cov::P(0),
            GeneratorId::P(n) => Cov::P(n),
            GeneratorId::J(l, n) => Cov::M(l, n),
            GeneratorId::Boost(k) => Cov::M(0, k),
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::P0 => write!(f, "p0"),
            GeneratorId::P(n) => write!(f, "p{n}"),
            GeneratorId::J(l, n) => write!(f, "j{l}{n}"),
            GeneratorId::Boost(k) => write!(f, "j0{k}"),
        }
    }
}

impl FromStr for GeneratorId {
    type Err = ErcdError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || ErcdError::InvalidArgument(format!("unknown generator '{s}'"));
        let digits: Vec<usize> = s
            .get(1..)
            .ok_or_else(bad)?
            .chars()
            .map(|ch| ch.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_>>()?;
        let g = match (s.chars().next(), digits.as_slice()) {
            (Some('p'), [0]) => GeneratorId::P0,
            (Some('p'), [n]) => GeneratorId::P(*n),
            (Some('j'), [0, k]) => GeneratorId::Boost(*k),
            (Some('j'), [l, n]) => GeneratorId::J(*l, *n),
            _ => return Err(bad()),
        };
        g.validate().map_err(|_| bad())?;
        Ok(g)
    }
}

/// Operator ordering of the x_k·ω̂ product inside the boost.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    /// x_k∘ω̂: ω̂ acts first.
    Left,
    /// ω̂∘x_k.
    Right,
    /// Average of the two.
    #[default]
    Symmetric,
}

impl FromStr for Ordering {
    type Err = ErcdError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Ordering::Left),
            "right" => Ok(Ordering::Right),
            "symmetric" => Ok(Ordering::Symmetric),
            _ => Err(ErcdError::InvalidArgument(format!("unknown ordering '{s}'"))),
        }
    }
}

/// Gaussian-times-polynomial profile, re-sampleable on any grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub center: [f64; 3],
    pub width: f64,
    /// Linear polynomial coefficients c₀ + c·k.
    pub poly: [f64; 4],
    pub positive: CVec4,
    pub negative: CVec4,
}

impl Profile {
    /// Fixed default profile: anisotropic content on both branches.
    pub fn standard() -> Self {
        use crate::linalg::c;
        Profile {
            center: [0.2, -0.1, 0.15],
            width: 1.1,
            poly: [1.0, 0.3, -0.2, 0.1],
            positive: CVec4([c(0.7, 0.1), c(-0.2, 0.4), c(0.3, -0.5), c(0.1, 0.2)]),
            negative: CVec4([c(-0.1, 0.3), c(0.5, 0.0), c(0.2, 0.2), c(-0.4, 0.1)]),
        }
    }

    /// Random spinor content and polynomial, fixed envelope.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut z = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let positive = CVec4([z(), z(), z(), z()]);
        let negative = CVec4([z(), z(), z(), z()]);
        let mut p = Profile::standard();
        p.positive = positive;
        p.negative = negative;
        p.poly = [1.0, rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3)];
        p
    }

    pub fn radial(width: f64, positive: CVec4, negative: CVec4) -> Self {
        Profile {
            center: [0.0; 3],
            width,
            poly: [1.0, 0.0, 0.0, 0.0],
            positive,
            negative,
        }
    }

    fn envelope(&self, k: &[f64; 3]) -> f64 {
        let r2: f64 = (0..3).map(|a| (k[a] - self.center[a]).powi(2)).sum();
        let poly = self.poly[0] + (0..3).map(|a| self.poly[a + 1] * k[a]).sum::<f64>();
        poly * (-r2 / (2.0 * self.width * self.width)).exp()
    }

    pub fn sample(&self, grid: Arc<MomentumGrid>) -> SpinorFieldK {
        SpinorFieldK::from_fn(grid, 0.0, |s| {
            let e = self.envelope(&s.k);
            (self.positive.scale(e.into()), self.negative.scale(e.into()))
        })
    }
}

/// A field certified to decay at the grid boundary.
#[derive(Clone, Debug)]
pub struct TestField(SpinorFieldK);

impl TestField {
    pub fn new(f: SpinorFieldK) -> Result<Self> {
        let b = f.boundary_max_abs();
        if b > SMOOTH_CUTOFF || !f.is_finite() {
            return Err(ErcdError::NotSmooth(b));
        }
        Ok(TestField(f))
    }

    pub fn from_profile(p: &Profile, grid: Arc<MomentumGrid>) -> Result<Self> {
        Self::new(p.sample(grid))
    }

    pub fn field(&self) -> &SpinorFieldK {
        &self.0
    }

    pub fn into_field(self) -> SpinorFieldK {
        self.0
    }
}

/// Default grid for the generator suites: 33³ nodes at Δk = 0.5, m = 1.
pub fn default_grid() -> MomentumGrid {
    MomentumGrid::cubic(33, 0.5, 1.0).expect("valid default grid")
}

/// ∂/∂kᵃ by 4th-order centered differences, zero outside the grid.
pub fn k_derivative(f: &SpinorFieldK, axis: usize) -> SpinorFieldK {
    let g = f.grid().clone();
    let counts = g.counts();
    let stride = match axis {
        0 => counts[1] * counts[2],
        1 => counts[2],
        _ => 1,
    };
    let n = counts[axis];
    let h = g.dk();
    let diff = |v: &[CVec4]| -> Vec<CVec4> {
        (0..v.len())
            .into_par_iter()
            .map(|idx| {
                let c = g.coords(idx)[axis] as isize;
                let at = |o: isize| {
                    let j = c + o;
                    if j < 0 || j >= n as isize {
                        CVec4::zero()
                    } else {
                        v[(idx as isize + o * stride as isize) as usize]
                    }
                };
                let s = (at(-2) - at(2)) + (at(1) - at(-1)).scale((8.0).into());
                s.scale((1.0 / (12.0 * h)).into())
            })
            .collect()
    };
    SpinorFieldK::from_branches(g.clone(), f.t, diff(&f.positive), diff(&f.negative))
        .expect("same grid")
}

fn par_map_scalar(f: &SpinorFieldK, s: impl Fn(&[f64; 3], f64, Branch) -> Complex64 + Sync) -> SpinorFieldK {
    let g = f.grid().clone();
    let m = g.mass();
    let run = |v: &[CVec4], b: Branch| -> Vec<CVec4> {
        v.par_iter()
            .zip(g.nodes().par_iter())
            .map(|(x, node)| x.scale(s(&node.k, m, b)))
            .collect()
    };
    SpinorFieldK::from_branches(g.clone(), f.t, run(&f.positive, Branch::Positive), run(&f.negative, Branch::Negative))
        .expect("same grid")
}

fn par_apply_linear(f: &SpinorFieldK, m: &CMat4) -> SpinorFieldK {
    let run = |v: &[CVec4]| -> Vec<CVec4> { v.par_iter().map(|x| m.mul_vec(x)).collect() };
    SpinorFieldK::from_branches(f.grid().clone(), f.t, run(&f.positive), run(&f.negative)).expect("same grid")
}

fn omega_of(k: &[f64; 3], m: f64) -> f64 {
    (k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + m * m).sqrt()
}

/// ∂_n: multiplication by iσkⁿ.
pub fn d_x(f: &SpinorFieldK, n: usize) -> SpinorFieldK {
    par_map_scalar(f, |k, _, b| I * (b.sign() * k[n - 1]))
}

/// x^l: iσ ∂/∂kˡ.
pub fn x_upper(f: &SpinorFieldK, l: usize) -> SpinorFieldK {
    let d = k_derivative(f, l - 1);
    par_map_scalar(&d, |_, _, b| I * b.sign())
}

/// x_l = −x^l.
pub fn x_lower(f: &SpinorFieldK, l: usize) -> SpinorFieldK {
    let d = k_derivative(f, l - 1);
    par_map_scalar(&d, |_, _, b| -I * b.sign())
}

fn omega_times(f: &SpinorFieldK) -> SpinorFieldK {
    par_map_scalar(f, |k, m, _| omega_of(k, m).into())
}

fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => -1.0,
        _ => 0.0,
    }
}

/// Generator realization with the shared spin constants.
#[derive(Clone, Debug)]
pub struct Generators {
    spin: [RLinOp; 3],
    pub ordering: Ordering,
}

impl Default for Generators {
    fn default() -> Self {
        Self::new(Ordering::default())
    }
}

impl Generators {
    pub fn new(ordering: Ordering) -> Self {
        Generators {
            spin: explicit_breve_spin(),
            ordering,
        }
    }

    /// s̆_{ln} with s̆_{23} = s̆¹, s̆_{31} = s̆², s̆_{12} = s̆³.
    fn spin_tensor(&self, l: usize, n: usize) -> RLinOp {
        (1..=3)
            .map(|a| self.spin[a - 1].scale(levi_civita(l, n, a)))
            .fold(RLinOp::zero(), |acc, x| acc + x)
    }

    /// Apply without the smoothness precondition.
    pub fn apply_unchecked(&self, gid: GeneratorId, f: &SpinorFieldK) -> SpinorFieldK {
        match gid {
            GeneratorId::P0 => {
                let g0 = GAMMA[0];
                let run = |v: &[CVec4]| -> Vec<CVec4> {
                    v.par_iter()
                        .zip(f.grid().nodes().par_iter())
                        .map(|(x, s)| g0.mul_vec(x).scale(-I * s.omega()))
                        .collect()
                };
                SpinorFieldK::from_branches(f.grid().clone(), f.t, run(&f.positive), run(&f.negative))
                    .expect("same grid")
            }
            GeneratorId::P(n) => d_x(f, n),
            GeneratorId::J(l, n) => {
                let orbital = x_lower(&d_x(f, n), l).sub(&x_lower(&d_x(f, l), n));
                orbital.add(&f.apply_rlin(&self.spin_tensor(l, n)))
            }
            GeneratorId::Boost(k) => {
                let time = d_x(f, k).scale(f.t.into());
                let xw = match self.ordering {
                    Ordering::Left => x_lower(&omega_times(f), k),
                    Ordering::Right => omega_times(&x_lower(f, k)),
                    Ordering::Symmetric => x_lower(&omega_times(f), k)
                        .add(&omega_times(&x_lower(f, k)))
                        .scale(0.5.into()),
                };
                let half = par_map_scalar(&d_x(f, k), |q, m, _| (0.5 / omega_of(q, m)).into());
                let mut spin = SpinorFieldK::zeros(f.grid().clone());
                spin.t = f.t;
                for a in 1..=3 {
                    for b in 1..=3 {
                        let e = levi_civita(k, a, b);
                        if e == 0.0 {
                            continue;
                        }
                        let db = par_map_scalar(&d_x(f, b), |q, m, _| (e / (omega_of(q, m) + m)).into());
                        spin = spin.add(&db.apply_rlin(&self.spin[a - 1]));
                    }
                }
                let inner = xw.add(&half).add(&spin);
                time.add(&par_apply_linear(&inner, &(GAMMA[0].scale(I))))
            }
        }
    }

    pub fn apply(&self, gid: GeneratorId, f: &SpinorFieldK) -> Result<SpinorFieldK> {
        gid.validate()?;
        if gid.needs_derivative() {
            TestField::new(f.clone())?;
        }
        Ok(self.apply_unchecked(gid, f))
    }

    /// ‖g(U(t)f) − U(t)(g f)‖ / ‖f‖.
    pub fn fw_commutation(&self, gid: GeneratorId, f: &TestField, t: f64) -> Result<f64> {
        gid.validate()?;
        let f = f.field();
        let lhs = self.apply_unchecked(gid, &fw_propagate(f, t));
        let rhs = fw_propagate(&self.apply_unchecked(gid, f), t);
        Ok(lhs.sub(&rhs).norm() / f.norm())
    }

    /// ⟨f, g f⟩ on the grid.
    pub fn charge(&self, gid: GeneratorId, f: &SpinorFieldK) -> Result<Complex64> {
        let gf = self.apply(gid, f)?;
        let terms: Vec<Complex64> = f
            .positive
            .iter()
            .zip(&gf.positive)
            .chain(f.negative.iter().zip(&gf.negative))
            .map(|(a, b)| a.dot(b))
            .collect();
        Ok(pairwise_sum(&terms) * f.grid().weight())
    }
}

/// |⟨f, g h⟩ + ⟨g f, h⟩| / (‖f‖‖h‖): zero for a generator anti-Hermitian
/// in the quadrature inner product.
pub fn anti_hermiticity_defect(g: &Generators, gid: GeneratorId, f: &TestField, h: &TestField) -> f64 {
    let (f, h) = (f.field(), h.field());
    let inner = |a: &SpinorFieldK, b: &SpinorFieldK| {
        let terms: Vec<Complex64> = a
            .positive
            .iter()
            .zip(&b.positive)
            .chain(a.negative.iter().zip(&b.negative))
            .map(|(x, y)| x.dot(y))
            .collect();
        pairwise_sum(&terms) * a.grid().weight()
    };
    let s = inner(f, &g.apply_unchecked(gid, h)) + inner(&g.apply_unchecked(gid, f), h);
    s.norm() / (f.norm() * h.norm())
}

pub fn apply_generator(gid: GeneratorId, f: &SpinorFieldK) -> Result<SpinorFieldK> {
    Generators::default().apply(gid, f)
}

pub fn check_fw_commutation(gid: GeneratorId, f: &TestField, t: f64) -> Result<f64> {
    Generators::default().fw_commutation(gid, f, t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cov {
    P(usize),
    M(usize, usize),
}

fn metric(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 0) => 1.0,
        (a, b) if a == b => -1.0,
        _ => 0.0,
    }
}

/// Express P_μ or M_{μν} in the ten-element basis as (index, coefficient).
fn to_basis(c: Cov) -> Option<(usize, f64)> {
    let basis = GeneratorId::BASIS.map(GeneratorId::covariant);
    for (i, b) in basis.iter().enumerate() {
        match (c, *b) {
            (Cov::P(x), Cov::P(y)) if x == y => return Some((i, 1.0)),
            (Cov::M(a, b1), Cov::M(c1, d)) if a == c1 && b1 == d => return Some((i, 1.0)),
            (Cov::M(a, b1), Cov::M(c1, d)) if a == d && b1 == c1 => return Some((i, -1.0)),
            _ => {}
        }
    }
    None
}

/// Structure constants f[a][b][c] with [g_a, g_b] = Σ_c f[a][b][c] g_c:
///
/// [P_μ, P_ν] = 0,
/// [P_μ, M_{νρ}] = g_{μν}P_ρ − g_{μρ}P_ν,
/// [M_{μν}, M_{ρσ}] = g_{νρ}M_{μσ} + g_{μσ}M_{νρ} − g_{νσ}M_{μρ} − g_{μρ}M_{νσ}.
pub fn structure_constants() -> [[[f64; 10]; 10]; 10] {
    let mut out = [[[0.0; 10]; 10]; 10];
    let add = |row: &mut [f64; 10], c: Cov, coef: f64| {
        if coef != 0.0 {
            if let Some((i, s)) = to_basis(c) {
                row[i] += s * coef;
            }
        }
    };
    for (a, ga) in GeneratorId::BASIS.iter().enumerate() {
        for (b, gb) in GeneratorId::BASIS.iter().enumerate() {
            let row = &mut out[a][b];
            match (ga.covariant(), gb.covariant()) {
                (Cov::P(_), Cov::P(_)) => {}
                (Cov::P(mu), Cov::M(nu, rho)) => {
                    add(row, Cov::P(rho), metric(mu, nu));
                    add(row, Cov::P(nu), -metric(mu, rho));
                }
                (Cov::M(nu, rho), Cov::P(mu)) => {
                    add(row, Cov::P(rho), -metric(mu, nu));
                    add(row, Cov::P(nu), metric(mu, rho));
                }
                (Cov::M(mu, nu), Cov::M(rho, sg)) => {
                    add(row, Cov::M(mu, sg), metric(nu, rho));
                    add(row, Cov::M(nu, rho), metric(mu, sg));
                    add(row, Cov::M(mu, rho), -metric(nu, sg));
                    add(row, Cov::M(nu, sg), -metric(mu, rho));
                }
            }
        }
    }
    out
}

/// One nonzero entry of the recorded structure-constant table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureEntry {
    pub lhs: String,
    pub rhs: Vec<(String, f64)>,
}

pub fn structure_table() -> Vec<StructureEntry> {
    let f = structure_constants();
    let names = GeneratorId::BASIS.map(|g| g.to_string());
    let mut out = Vec::new();
    for a in 0..10 {
        for b in a + 1..10 {
            let rhs: Vec<(String, f64)> = (0..10)
                .filter(|&c| f[a][b][c] != 0.0)
                .map(|c| (names[c].clone(), f[a][b][c]))
                .collect();
            out.push(StructureEntry {
                lhs: format!("[{},{}]", names[a], names[b]),
                rhs,
            });
        }
    }
    out
}

/// Antisymmetry and Jacobi identity of the recorded table.
pub fn check_structure_table(tol: f64) -> Vec<RelationReport> {
    let f = structure_constants();
    let mut anti: f64 = 0.0;
    for (a, fa) in f.iter().enumerate() {
        for (b, fab) in fa.iter().enumerate() {
            for (c, x) in fab.iter().enumerate() {
                anti = anti.max((x + f[b][a][c]).abs());
            }
        }
    }
    let mut jac: f64 = 0.0;
    for a in 0..10 {
        for b in 0..10 {
            for c in 0..10 {
                for e in 0..10 {
                    let s: f64 = (0..10)
                        .map(|d| f[a][b][d] * f[d][c][e] + f[b][c][d] * f[d][a][e] + f[c][a][d] * f[d][b][e])
                        .sum();
                    jac = jac.max(s.abs());
                }
            }
        }
    }
    vec![
        RelationReport::new("structure_antisymmetry", anti, tol),
        RelationReport::new("structure_jacobi", jac, tol),
    ]
}

fn commutator_residual(g: &Generators, f: &SpinorFieldK, a: usize, b: usize, table: &[[[f64; 10]; 10]; 10]) -> f64 {
    let ga = GeneratorId::BASIS[a];
    let gb = GeneratorId::BASIS[b];
    let lhs = g
        .apply_unchecked(ga, &g.apply_unchecked(gb, f))
        .sub(&g.apply_unchecked(gb, &g.apply_unchecked(ga, f)));
    let mut rhs = SpinorFieldK::zeros(f.grid().clone());
    rhs.t = f.t;
    for (c, &coef) in table[a][b].iter().enumerate() {
        if coef != 0.0 {
            rhs = rhs.add(&g.apply_unchecked(GeneratorId::BASIS[c], f).scale(coef.into()));
        }
    }
    lhs.sub(&rhs).norm() / f.norm()
}

/// Tolerance for a commutator: exact unless a derivative enters.
fn pair_tolerance(a: GeneratorId, b: GeneratorId, tau_spec: f64, tau_exact: f64) -> f64 {
    if a.needs_derivative() || b.needs_derivative() {
        tau_spec
    } else {
        tau_exact
    }
}

/// All 45 commutators against the recorded structure constants.
pub fn check_poincare_algebra(
    g: &Generators,
    f: &TestField,
    tau_spec: f64,
    tau_exact: f64,
) -> Vec<RelationReport> {
    let table = structure_constants();
    let pairs: Vec<(usize, usize)> = (0..10).flat_map(|a| (a + 1..10).map(move |b| (a, b))).collect();
    pairs
        .into_iter()
        .map(|(a, b)| {
            let (ga, gb) = (GeneratorId::BASIS[a], GeneratorId::BASIS[b]);
            RelationReport::new(
                format!("[{ga},{gb}]"),
                commutator_residual(g, f.field(), a, b, &table),
                pair_tolerance(ga, gb, tau_spec, tau_exact),
            )
        })
        .collect()
}

/// FW commutation of all ten generators at time t.
pub fn check_fw_commutation_all(
    g: &Generators,
    f: &TestField,
    t: f64,
    tau_spec: f64,
    tau_exact: f64,
) -> Result<Vec<RelationReport>> {
    GeneratorId::BASIS
        .iter()
        .map(|&gid| {
            let tol = if gid.needs_derivative() { tau_spec } else { tau_exact };
            Ok(RelationReport::new(format!("fw_commute({gid},t={t})"), g.fw_commutation(gid, f, t)?, tol))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingVariant {
    pub ordering: Ordering,
    /// Largest algebra residual over commutators involving a boost.
    pub max_boost_residual: f64,
    /// Largest boost anti-Hermiticity defect.
    pub max_anti_hermiticity_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderingComparison {
    pub variants: Vec<OrderingVariant>,
    /// Ordering with the smallest boost residual.
    pub closes_better: Ordering,
}

/// Algebra residuals of boost-bearing commutators for each ordering.
pub fn compare_orderings(orderings: &[Ordering], f: &TestField, h: &TestField) -> OrderingComparison {
    let table = structure_constants();
    let boosts = [7usize, 8, 9];
    let variants: Vec<OrderingVariant> = orderings
        .iter()
        .map(|&o| {
            let g = Generators::new(o);
            let mut worst: f64 = 0.0;
            for a in 0..10 {
                for b in a + 1..10 {
                    if boosts.contains(&a) || boosts.contains(&b) {
                        worst = worst.max(commutator_residual(&g, f.field(), a, b, &table));
                    }
                }
            }
            let defect = boosts
                .iter()
                .map(|&i| anti_hermiticity_defect(&g, GeneratorId::BASIS[i], f, h))
                .fold(0.0, f64::max);
            OrderingVariant {
                ordering: o,
                max_boost_residual: worst,
                max_anti_hermiticity_defect: defect,
            }
        })
        .collect();
    let closes_better = variants
        .iter()
        .min_by(|x, y| x.max_boost_residual.total_cmp(&y.max_boost_residual))
        .map(|v| v.ordering)
        .unwrap_or_default();
    OrderingComparison {
        variants,
        closes_better,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CasimirResult {
    pub c1_residual: f64,
    pub c2_residual: f64,
}

/// c1: (p₀∘p₀ − Σ p_n∘p_n) f = −m² f, since p₀² = −ω² and p_n² = −(kⁿ)².
/// c2: m²·s̆² = −2m²·diag(I₃, 0) at the operator level.
pub fn casimir_check(f: &TestField) -> Result<CasimirResult> {
    let g = Generators::default();
    let f = f.field();
    let m = f.grid().mass();
    if m.is_nan() || m <= 0.0 {
        return Err(ErcdError::NonPositiveMass(m));
    }
    let mut lhs = g.apply_unchecked(GeneratorId::P0, &g.apply_unchecked(GeneratorId::P0, f));
    for n in 1..=3 {
        let p = GeneratorId::P(n);
        lhs = lhs.sub(&g.apply_unchecked(p, &g.apply_unchecked(p, f)));
    }
    let c1 = lhs.add(&f.scale((m * m).into())).norm() / f.norm();
    let s2 = g.spin.iter().fold(RLinOp::zero(), |acc, s| acc + *s * *s);
    let c2 = op_norm_diff(&s2.scale(m * m), &casimir_target(m));
    Ok(CasimirResult {
        c1_residual: c1,
        c2_residual: c2,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefinementRow {
    pub generator: String,
    pub coarse: f64,
    pub fine: f64,
    pub ratio: f64,
    pub order: f64,
}

/// FW-commutation residuals of the derivative-bearing generators on a grid
/// and on `levels` successive refinements of it.
pub fn refinement_study(
    g: &Generators,
    p: &Profile,
    grid: &MomentumGrid,
    t: f64,
    levels: usize,
) -> Result<Vec<Vec<RefinementRow>>> {
    let mut grids = vec![Arc::new(grid.clone())];
    for _ in 0..levels {
        let next = grids.last().expect("nonempty").refined()?;
        grids.push(Arc::new(next));
    }
    let derivative: Vec<GeneratorId> = GeneratorId::BASIS.into_iter().filter(|g| g.needs_derivative()).collect();
    let mut residuals = Vec::with_capacity(grids.len());
    for gr in &grids {
        let f = TestField::from_profile(p, gr.clone())?;
        let r: Vec<f64> = derivative
            .iter()
            .map(|&gid| g.fw_commutation(gid, &f, t))
            .collect::<Result<_>>()?;
        residuals.push(r);
    }
    Ok(residuals
        .windows(2)
        .map(|w| {
            derivative
                .iter()
                .enumerate()
                .map(|(i, gid)| {
                    let ratio = w[0][i] / w[1][i];
                    RefinementRow {
                        generator: gid.to_string(),
                        coarse: w[0][i],
                        fine: w[1][i],
                        ratio,
                        order: ratio.log2(),
                    }
                })
                .collect()
        })
        .collect())
}
