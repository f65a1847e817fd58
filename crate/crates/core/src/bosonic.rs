//! Bosonic representation of the algebra: the transition operator W, the
//! breve orts, and the spin-(1,0) SU(2) generators.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::algebra::GammaBasis;
use crate::linalg::{c, pauli, scale2, CMat4, ID2, I, ONE, ZERO, ZERO2};
use crate::report::RelationReport;
use crate::rlinear::{op_norm_diff, RLinOp};

const H: f64 = FRAC_1_SQRT_2;

/// W and W⁻¹ as R-linear operators.
#[derive(Clone, Copy, Debug)]
pub struct WPair {
    pub w: RLinOp,
    pub w_inv: RLinOp,
}

pub fn build_w() -> WPair {
    let mut wl = CMat4::zero();
    let mut wa = CMat4::zero();
    wl[(0, 0)] = ONE;
    wa[(1, 2)] = I;
    wa[(2, 1)] = c(-H, 0.0);
    wl[(2, 3)] = c(H, 0.0);
    wa[(3, 1)] = c(-H, 0.0);
    wl[(3, 3)] = c(-H, 0.0);

    // W⁻¹ carries the same 1/√2 prefactor as W.
    let mut vl = CMat4::zero();
    let mut va = CMat4::zero();
    vl[(0, 0)] = ONE;
    va[(1, 2)] = c(-H, 0.0);
    va[(1, 3)] = c(-H, 0.0);
    va[(2, 1)] = I;
    vl[(3, 2)] = c(H, 0.0);
    vl[(3, 3)] = c(-H, 0.0);

    WPair {
        w: RLinOp::new(wl, wa),
        w_inv: RLinOp::new(vl, va),
    }
}

/// W⁻¹ with entries exactly as tabulated in the source table, without the
/// 1/√2 prefactor. Kept to document that it is not the inverse of W.
pub fn tabulated_w_inverse() -> RLinOp {
    build_w().w_inv.scale(std::f64::consts::SQRT_2)
}

pub fn check_w_identities(w: &WPair, tol: f64) -> Vec<RelationReport> {
    let id = RLinOp::identity();
    let r = w.w.to_real8();
    vec![
        RelationReport::new("w*w_inv=I", op_norm_diff(&(w.w * w.w_inv), &id), tol),
        RelationReport::new("w_inv*w=I", op_norm_diff(&(w.w_inv * w.w), &id), tol),
        RelationReport::new(
            "w_orthogonal",
            (r.transpose() * r).max_abs_diff(&crate::linalg::RMat8::identity()),
            tol,
        ),
    ]
}

/// The orts γ̆⁰..γ̆⁷, ĭ and C̆ of the bosonic representation.
#[derive(Clone, Debug)]
pub struct BreveBasis {
    pub gamma: [RLinOp; 8],
    pub imag: RLinOp,
    pub conj: RLinOp,
}

fn rows(m: [[Complex64; 4]; 4], s: f64) -> CMat4 {
    CMat4(m).scale_re(s)
}

pub fn build_breve_basis() -> BreveBasis {
    let (o, z) = (ONE, ZERO);
    let m = -ONE;
    let i = I;
    let mi = -I;
    let neg = |b| scale2(b, (-1.0).into());

    let g0 = RLinOp::linear(CMat4::from_blocks(pauli(3), ZERO2, ZERO2, pauli(1)));
    let g1 = RLinOp::linear(rows(
        [[z, z, o, m], [z, z, i, i], [m, i, z, z], [o, i, z, z]],
        H,
    ));
    let g2 = RLinOp::linear(rows(
        [[z, z, mi, i], [z, z, m, m], [mi, o, z, z], [i, o, z, z]],
        H,
    ));
    let g3 = RLinOp::antilinear(-CMat4::from_blocks(
        pauli(2),
        ZERO2,
        ZERO2,
        scale2(pauli(2), I),
    ));
    let g4 = RLinOp::antilinear(CMat4::from_blocks(
        scale2(pauli(2), I),
        ZERO2,
        ZERO2,
        neg(pauli(2)),
    ));
    let g5 = RLinOp::linear(rows(
        [[z, z, m, m], [z, z, i, mi], [o, i, z, z], [o, mi, z, z]],
        H,
    ));
    let g6 = RLinOp::linear(rows(
        [[z, z, mi, mi], [z, z, o, m], [mi, m, z, z], [mi, o, z, z]],
        H,
    ));
    let gamma0 = CMat4::from_blocks(ID2, ZERO2, ZERO2, neg(ID2));
    let g7 = RLinOp::linear(gamma0.scale(I));
    let imag = RLinOp::linear(CMat4::from_blocks(
        scale2(pauli(3), I),
        ZERO2,
        ZERO2,
        scale2(pauli(1), -I),
    ));
    let conj = RLinOp::antilinear(CMat4::from_blocks(pauli(3), ZERO2, ZERO2, ID2));

    BreveBasis {
        gamma: [g0, g1, g2, g3, g4, g5, g6, g7],
        imag,
        conj,
    }
}

/// Residuals of W·X·W⁻¹ − X̆ for γ⁰..γ⁷, i, Ĉ and I₄.
pub fn check_conjugation(
    w: &WPair,
    g: &GammaBasis,
    b: &BreveBasis,
    tol: f64,
) -> Vec<RelationReport> {
    let conj = |x: &RLinOp| w.w * *x * w.w_inv;
    let mut out: Vec<RelationReport> = (0..8)
        .map(|a| {
            RelationReport::new(
                format!("w_gamma{a}_winv=breve_gamma{a}"),
                op_norm_diff(&conj(g.gamma(a)), &b.gamma[a]),
                tol,
            )
        })
        .collect();
    out.push(RelationReport::new(
        "w_i_winv=breve_i",
        op_norm_diff(&conj(&g.imag), &b.imag),
        tol,
    ));
    out.push(RelationReport::new(
        "w_C_winv=breve_C",
        op_norm_diff(&conj(&g.conj), &b.conj),
        tol,
    ));
    out.push(RelationReport::new(
        "w_I_winv=I",
        op_norm_diff(&conj(&RLinOp::identity()), &RLinOp::identity()),
        tol,
    ));
    out
}

/// Spin-(1,0) generators s̆¹, s̆², s̆³ in both available forms.
#[derive(Clone, Debug)]
pub struct BreveSpin {
    /// Explicit matrices; these are the operators used downstream.
    pub s: [RLinOp; 3],
    /// The same operators composed from the breve orts.
    pub compositional: [RLinOp; 3],
}

impl BreveSpin {
    /// s̆ʲ for j in 1..=3.
    pub fn component(&self, j: usize) -> &RLinOp {
        &self.s[j - 1]
    }

    /// s̆_{ln} for the antisymmetric index pair, with s̆_{23} = s̆¹,
    /// s̆_{31} = s̆², s̆_{12} = s̆³. Diagonal pairs give zero.
    pub fn tensor(&self, l: usize, n: usize) -> RLinOp {
        match (l, n) {
            (2, 3) => self.s[0],
            (3, 2) => -self.s[0],
            (3, 1) => self.s[1],
            (1, 3) => -self.s[1],
            (1, 2) => self.s[2],
            (2, 1) => -self.s[2],
            _ => RLinOp::zero(),
        }
    }

    /// Σⱼ s̆ʲ∘s̆ʲ.
    pub fn casimir(&self) -> RLinOp {
        self.s.iter().fold(RLinOp::zero(), |acc, x| acc + *x * *x)
    }
}

/// Explicit spin matrices of the (1,0) multiplet.
pub fn explicit_breve_spin() -> [RLinOp; 3] {
    let (o, z, i) = (ONE, ZERO, I);
    let s1 = RLinOp::antilinear(rows(
        [[z, z, i, z], [z, z, -o, z], [-i, o, z, z], [z, z, z, z]],
        H,
    ));
    let s2 = RLinOp::antilinear(rows(
        [[z, z, o, z], [z, z, -i, z], [-o, i, z, z], [z, z, z, z]],
        H,
    ));
    let s3 = RLinOp::linear(CMat4::diag([-i, i, z, z]));
    [s1, s2, s3]
}

/// ½(γ̆²γ̆³ − γ̆⁰γ̆²C̆, γ̆³γ̆¹ + ĭγ̆⁰γ̆²C̆, γ̆¹γ̆² − ĭ), composed left to right.
pub fn compositional_breve_spin(b: &BreveBasis) -> [RLinOp; 3] {
    let g = &b.gamma;
    [
        (g[2] * g[3] - g[0] * g[2] * b.conj).scale(0.5),
        (g[3] * g[1] + b.imag * g[0] * g[2] * b.conj).scale(0.5),
        (g[1] * g[2] - b.imag).scale(0.5),
    ]
}

pub fn build_breve_spin(b: &BreveBasis) -> BreveSpin {
    BreveSpin {
        s: explicit_breve_spin(),
        compositional: compositional_breve_spin(b),
    }
}

/// Entrywise agreement of the compositional and explicit spin forms.
pub fn check_spin_forms(s: &BreveSpin, tol: f64) -> Vec<RelationReport> {
    (0..3)
        .map(|j| {
            RelationReport::new(
                format!("composed_s{}=explicit_s{}", j + 1, j + 1),
                op_norm_diff(&s.compositional[j], &s.s[j]),
                tol,
            )
        })
        .collect()
}

/// Structure-constant sign of the (1,0) SU(2) algebra, [s̆¹, s̆²] = SU2_SIGN·s̆³.
///
/// Fixed from the oracle evaluation and asserted as a regression invariant.
pub const SU2_SIGN: f64 = 1.0;

/// [s̆ʲ, s̆ᵏ] − s̆ˡ for cyclic (j,k,l), and the Casimir −2·diag(I₃, 0).
pub fn check_su2_closure(s: &BreveSpin, tol: f64) -> Vec<RelationReport> {
    let mut out: Vec<RelationReport> = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
        .into_iter()
        .map(|(a, b, l)| {
            let lhs = s.component(a).commutator(s.component(b));
            RelationReport::new(
                format!("[s{a},s{b}]={:+}s{l}", SU2_SIGN),
                op_norm_diff(&lhs, &s.component(l).scale(SU2_SIGN)),
                tol,
            )
        })
        .collect();
    out.push(RelationReport::new(
        "casimir=-2diag(I3,0)",
        op_norm_diff(&s.casimir(), &casimir_target(1.0)),
        tol,
    ));
    out
}

/// −1(1+1)·m²·diag(I₃, 0).
pub fn casimir_target(m: f64) -> RLinOp {
    let v = Complex64::new(-2.0 * m * m, 0.0);
    RLinOp::linear(CMat4::diag([v, v, v, ZERO]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_gammas;
    use crate::linalg::CVec4;
    use crate::report::all_pass;
    use crate::rlinear::TAU_ALG;

    #[test]
    fn w_inverse_and_orthogonality() {
        let w = build_w();
        assert!(all_pass(&check_w_identities(&w, TAU_ALG)));
        assert_eq!(w.w.apply(&CVec4::ort(1)), CVec4::ort(1));
    }

    #[test]
    fn tabulated_inverse_is_off_by_sqrt2() {
        let w = build_w();
        let r = op_norm_diff(&(w.w * tabulated_w_inverse()), &RLinOp::identity());
        assert!((r - (std::f64::consts::SQRT_2 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn breve_basis_examples() {
        let b = build_breve_basis();
        let g = build_gammas();
        assert_eq!(b.gamma[7], *g.gamma(7));
        let expected0 = CMat4::from_blocks(pauli(3), ZERO2, ZERO2, pauli(1));
        assert_eq!(b.gamma[0].linear, expected0);
        assert!(op_norm_diff(&(b.imag * b.imag), &(-RLinOp::identity())) <= TAU_ALG);
        assert!(op_norm_diff(&(b.conj * b.conj), &RLinOp::identity()) <= TAU_ALG);
    }

    #[test]
    fn breve_orts_satisfy_clifford_relations() {
        let b = build_breve_basis();
        for a in 1..=7 {
            for c in 1..=7 {
                let lhs = b.gamma[a].anticommutator(&b.gamma[c]);
                let rhs = if a == c {
                    RLinOp::identity().scale(-2.0)
                } else {
                    RLinOp::zero()
                };
                assert!(op_norm_diff(&lhs, &rhs) <= TAU_ALG, "({a},{c})");
            }
        }
    }

    #[test]
    fn conjugation_reproduces_breve_orts() {
        let reports = check_conjugation(&build_w(), &build_gammas(), &build_breve_basis(), TAU_ALG);
        assert_eq!(reports.len(), 11);
        assert!(all_pass(&reports), "{reports:#?}");
    }

    #[test]
    fn spin_forms_agree() {
        let s = build_breve_spin(&build_breve_basis());
        assert!(all_pass(&check_spin_forms(&s, TAU_ALG)));
    }

    #[test]
    fn spin_examples() {
        let s = build_breve_spin(&build_breve_basis());
        assert_eq!(s.component(3).linear, CMat4::diag([-I, I, ZERO, ZERO]));
        assert_eq!(s.component(3).apply(&CVec4::ort(1)), CVec4::ort(1).scale(-I));
        for j in 1..=3 {
            assert_eq!(s.component(j).apply(&CVec4::ort(4)), CVec4::zero());
        }
        // i·s̆³ has eigenvalues (+1, −1, 0, 0) on d₁..d₄
        let is3 = RLinOp::imag_unit() * *s.component(3);
        let eig = [1.0, -1.0, 0.0, 0.0];
        for (a, e) in eig.iter().enumerate() {
            let d = CVec4::ort(a + 1);
            assert_eq!(is3.apply(&d), d.scale((*e).into()));
        }
    }

    #[test]
    fn su2_closure_and_casimir() {
        let s = build_breve_spin(&build_breve_basis());
        let r = check_su2_closure(&s, TAU_ALG);
        assert!(all_pass(&r), "{r:#?}");
        // opposite sign must fail
        let wrong = s.component(1).commutator(s.component(2)) + *s.component(3);
        assert!(op_norm_diff(&wrong, &RLinOp::zero()) > 1.0);
        let cas = s.casimir();
        // rank 3 over C, i.e. rank 6 as a real 8×8 map
        let r8 = cas.to_real8();
        let m = nalgebra::DMatrix::from_fn(8, 8, |i, j| r8.0[i][j]);
        assert_eq!(m.singular_values().iter().filter(|&&x| x > 1e-8).count(), 6);
        let lin = cas.linear;
        assert!(cas.antilinear.max_abs() < TAU_ALG);
        assert!(lin.max_abs_diff(&CMat4::diag([c(-2.0, 0.0), c(-2.0, 0.0), c(-2.0, 0.0), ZERO])) < TAU_ALG);
    }

    #[test]
    fn spin_tensor_is_antisymmetric() {
        let s = build_breve_spin(&build_breve_basis());
        for l in 1..=3 {
            for n in 1..=3 {
                assert_eq!(op_norm_diff(&s.tensor(l, n), &(-s.tensor(n, l))), 0.0);
            }
        }
    }
}
