//! The gamma orts, the 28 SO(8) generators of the proper extended real
//! Clifford-Dirac algebra, and their relation checks.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{ErcdError, Result};
use crate::grid::MomentumSample;
use crate::linalg::{pauli, scale2, CMat4, ID2, ZERO2};
use crate::report::RelationReport;
use crate::rlinear::{op_norm_diff, RLinOp};
use crate::spectral::fw_propagator;

/// Singular-value cutoff used when counting independent orts.
pub const RANK_CUTOFF: f64 = 1e-8;

/// γ⁰ and the seven orts γ¹..γ⁷ in the Pauli-Dirac representation,
/// together with Ĉ and i·I₄.
#[derive(Clone, Debug)]
pub struct GammaBasis {
    /// `orts[0]` is γ⁰, `orts[a]` is γᵃ for a in 1..=7.
    orts: [RLinOp; 8],
    pub conj: RLinOp,
    pub imag: RLinOp,
}

impl GammaBasis {
    pub fn gamma0(&self) -> &RLinOp {
        &self.orts[0]
    }

    /// γᵃ for `a` in 0..=7.
    pub fn gamma(&self, a: usize) -> &RLinOp {
        &self.orts[a]
    }

    pub fn orts(&self) -> &[RLinOp; 8] {
        &self.orts
    }
}

pub fn build_gammas() -> GammaBasis {
    let gamma0 = RLinOp::linear(CMat4::from_blocks(ID2, ZERO2, ZERO2, scale2(ID2, (-1.0).into())));
    let spatial = |k: usize| {
        let s = pauli(k);
        RLinOp::linear(CMat4::from_blocks(ZERO2, s, scale2(s, (-1.0).into()), ZERO2))
    };
    let (g1, g2, g3) = (spatial(1), spatial(2), spatial(3));
    let conj = RLinOp::conjugation();
    let imag = RLinOp::imag_unit();

    let g4 = gamma0 * g1 * g2 * g3;
    let g5 = g1 * g3 * conj;
    let g6 = imag * g1 * g3 * conj;
    let g7 = imag * gamma0;

    GammaBasis {
        orts: [gamma0, g1, g2, g3, g4, g5, g6, g7],
        conj,
        imag,
    }
}

/// {γᴬ, γᴮ} = −2δᴬᴮ for all 28 unordered pairs 1 ≤ A ≤ B ≤ 7.
pub fn check_anticommutation(g: &GammaBasis, tol: f64) -> Vec<RelationReport> {
    let mut out = Vec::with_capacity(28);
    for a in 1..=7 {
        for b in a..=7 {
            let lhs = g.gamma(a).anticommutator(g.gamma(b));
            let rhs = if a == b {
                RLinOp::identity().scale(-2.0)
            } else {
                RLinOp::zero()
            };
            out.push(RelationReport::new(
                format!("anticomm({a},{b})"),
                op_norm_diff(&lhs, &rhs),
                tol,
            ));
        }
    }
    out
}

/// The 28 generators sᴬᴮ of SO(8), indexed by 1..=8 in each slot.
#[derive(Clone, Debug)]
pub struct SpinTensor {
    s: [[RLinOp; 8]; 8],
    pub unit: RLinOp,
}

impl SpinTensor {
    /// s^{ab} with 1-based indices.
    pub fn get(&self, a: usize, b: usize) -> &RLinOp {
        &self.s[a - 1][b - 1]
    }

    /// I₄ followed by sᴬᴮ for A < B, in lexicographic order: 29 orts.
    pub fn orts(&self) -> Vec<RLinOp> {
        let mut out = vec![self.unit];
        for a in 1..=8 {
            for b in (a + 1)..=8 {
                out.push(*self.get(a, b));
            }
        }
        out
    }
}

pub fn build_spin_tensor(g: &GammaBasis) -> SpinTensor {
    let mut s = [[RLinOp::zero(); 8]; 8];
    for a in 1..=7 {
        for b in 1..=7 {
            if a != b {
                s[a - 1][b - 1] = g.gamma(a).commutator(g.gamma(b)).scale(0.25);
            }
        }
        s[a - 1][7] = g.gamma(a).scale(0.5);
        s[7][a - 1] = g.gamma(a).scale(-0.5);
    }
    SpinTensor {
        s,
        unit: RLinOp::identity(),
    }
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Residual of one SO(8) commutation relation
/// `[s^{ab}, s^{cd}] = δ^{ac}s^{bd} + δ^{cb}s^{da} + δ^{bd}s^{ac} + δ^{da}s^{cb}`.
pub fn so8_residual(t: &SpinTensor, a: usize, b: usize, c: usize, d: usize) -> f64 {
    let lhs = t.get(a, b).commutator(t.get(c, d));
    let rhs = t.get(b, d).scale(delta(a, c))
        + t.get(d, a).scale(delta(c, b))
        + t.get(a, c).scale(delta(b, d))
        + t.get(c, b).scale(delta(d, a));
    op_norm_diff(&lhs, &rhs)
}

/// All 8⁴ index quadruples, degenerate ones included.
pub fn check_so8(t: &SpinTensor, tol: f64) -> Vec<RelationReport> {
    (0..4096usize)
        .into_par_iter()
        .map(|n| {
            let (a, b, c, d) = (n / 512 + 1, (n / 64) % 8 + 1, (n / 8) % 8 + 1, n % 8 + 1);
            RelationReport::new(
                format!("so8({a},{b},{c},{d})"),
                so8_residual(t, a, b, c, d),
                tol,
            )
        })
        .collect()
}

/// An operator tagged with a display label.
#[derive(Clone, Debug)]
pub struct NamedOp {
    pub name: String,
    pub op: RLinOp,
}

/// The 15 generators s^{ab}, a < b in 1..=6, followed by I₄.
pub fn so6_generators(t: &SpinTensor) -> Vec<NamedOp> {
    let mut out = Vec::with_capacity(16);
    for a in 1..=6 {
        for b in (a + 1)..=6 {
            out.push(NamedOp {
                name: format!("s{a}{b}"),
                op: *t.get(a, b),
            });
        }
    }
    out.push(NamedOp {
        name: "I4".into(),
        op: t.unit,
    });
    out
}

/// Commutation of each operator with the FW propagator exp(−iγ⁰ω(k)t).
pub fn check_fw_invariance(
    ops: &[NamedOp],
    samples: &[MomentumSample],
    times: &[f64],
    tol: f64,
) -> Result<Vec<RelationReport>> {
    if let Some(bad) = samples.iter().find(|s| s.m <= 0.0) {
        return Err(ErcdError::NonPositiveMass(bad.m));
    }
    let mut out = Vec::new();
    for q in ops {
        for s in samples {
            for &t in times {
                let u = RLinOp::linear(fw_propagator(s, t));
                let residual = op_norm_diff(&(q.op * u), &(u * q.op));
                out.push(RelationReport::new(
                    format!("fw_inv({},k=[{},{},{}],t={})", q.name, s.k[0], s.k[1], s.k[2], t),
                    residual,
                    tol,
                ));
            }
        }
    }
    Ok(out)
}

/// Numerical rank of a set of operators flattened to R⁶⁴ through the real oracle.
pub fn numerical_rank(ops: &[RLinOp], cutoff: f64) -> usize {
    let cols: Vec<f64> = ops.iter().flat_map(|o| o.to_real8().flatten()).collect();
    let m = DMatrix::from_column_slice(64, ops.len(), &cols);
    m.singular_values().iter().filter(|&&s| s > cutoff).count()
}

/// Rank of the 29 proper orts (I₄ and the 28 sᴬᴮ).
pub fn ort_rank(t: &SpinTensor) -> usize {
    numerical_rank(&t.orts(), RANK_CUTOFF)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{CVec4, I};
    use crate::rlinear::TAU_ALG;

    #[test]
    fn gamma7_is_i_gamma0() {
        let g = build_gammas();
        let d1 = CVec4::ort(1);
        assert_eq!(g.gamma(7).apply(&d1), d1.scale(I));
        let d3 = CVec4::ort(3);
        assert_eq!(g.gamma0().apply(&d3), -d3);
        assert_eq!(g.gamma0().apply(&d1), d1);
    }

    #[test]
    fn gamma4_squares_to_minus_one() {
        let g = build_gammas();
        let sq = *g.gamma(4) * *g.gamma(4);
        assert!(op_norm_diff(&sq, &RLinOp::identity().scale(-1.0)) <= TAU_ALG);
    }

    #[test]
    fn gamma5_on_real_vector_matches_gamma1_gamma3() {
        let g = build_gammas();
        let v = CVec4::ort(1);
        let g13 = *g.gamma(1) * *g.gamma(3);
        assert_eq!(g.gamma(5).apply(&v), g13.apply(&v));
    }

    #[test]
    fn gamma5_squared_matches_oracle() {
        let g = build_gammas();
        let m = g.gamma(5).to_real8();
        let oracle = m * m;
        let mut minus_one = crate::linalg::RMat8::identity();
        for i in 0..8 {
            minus_one.0[i][i] = -1.0;
        }
        assert!(oracle.max_abs_diff(&minus_one) <= TAU_ALG);
        assert!(op_norm_diff(&(*g.gamma(5) * *g.gamma(5)), &(-RLinOp::identity())) <= TAU_ALG);
    }

    #[test]
    fn anticommutation_examples() {
        let g = build_gammas();
        let reports = check_anticommutation(&g, TAU_ALG);
        assert_eq!(reports.len(), 28);
        let find = |id: &str| reports.iter().find(|r| r.id == id).unwrap().residual;
        assert_eq!(find("anticomm(1,1)"), 0.0);
        assert!(find("anticomm(5,6)") <= TAU_ALG);
        assert!(find("anticomm(2,7)") <= TAU_ALG);
        let six = g.gamma(6).anticommutator(g.gamma(6));
        assert!(op_norm_diff(&six, &RLinOp::identity().scale(-2.0)) <= TAU_ALG);
        let twelve = g.gamma(1).anticommutator(g.gamma(2));
        assert_eq!(op_norm_diff(&twelve, &RLinOp::zero()), 0.0);
    }

    #[test]
    fn spin_tensor_entries() {
        let g = build_gammas();
        let t = build_spin_tensor(&g);
        let half_g1g2 = (*g.gamma(1) * *g.gamma(2)).scale(0.5);
        assert!(op_norm_diff(t.get(1, 2), &half_g1g2) <= TAU_ALG);
        assert_eq!(*t.get(3, 8), g.gamma(3).scale(0.5));
        assert_eq!(*t.get(8, 3), g.gamma(3).scale(-0.5));
        for a in 1..=8 {
            for b in 1..=8 {
                assert_eq!(op_norm_diff(t.get(a, b), &(-*t.get(b, a))), 0.0);
            }
        }
        assert_eq!(t.orts().len(), 29);
    }

    #[test]
    fn so8_named_cases() {
        let t = build_spin_tensor(&build_gammas());
        assert!(so8_residual(&t, 1, 2, 3, 4) <= TAU_ALG);
        assert!(so8_residual(&t, 1, 2, 2, 3) <= TAU_ALG);
        assert!(so8_residual(&t, 5, 8, 5, 8) <= TAU_ALG);
        // [s12, s23] = δ22 s31
        let lhs = t.get(1, 2).commutator(t.get(2, 3));
        assert!(op_norm_diff(&lhs, t.get(3, 1)) <= TAU_ALG);
    }

    #[test]
    fn so6_count_and_membership() {
        let t = build_spin_tensor(&build_gammas());
        let ops = so6_generators(&t);
        assert_eq!(ops.len(), 16);
        assert!(ops.iter().any(|o| o.name == "s12" && o.op == *t.get(1, 2)));
    }

    #[test]
    fn fw_invariance_rejects_massless() {
        let t = build_spin_tensor(&build_gammas());
        let ops = so6_generators(&t);
        let s = MomentumSample { k: [0.0; 3], m: 0.0 };
        assert!(check_fw_invariance(&ops, &[s], &[1.0], TAU_ALG).is_err());
    }

    #[test]
    fn gamma5_alone_is_not_fw_invariant() {
        // γ⁵ is antilinear and commutes with γ⁰, so it conjugates the phase.
        let g = build_gammas();
        let ops = [NamedOp {
            name: "g5".into(),
            op: *g.gamma(5),
        }];
        let s = MomentumSample::new([0.5, 0.0, 0.0], 1.0).unwrap();
        let r = check_fw_invariance(&ops, &[s], &[1.0], TAU_ALG).unwrap();
        assert!(!r[0].pass);
    }
}
