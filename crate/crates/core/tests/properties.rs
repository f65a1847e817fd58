use std::sync::Arc;

use ercd_core::amplitudes::{analyze, synth_fw_fermionic, AmplitudeKind, AmplitudeSet, Picture};
use ercd_core::charges::{charge, SpinChoice, SpinLabel};
use ercd_core::grid::MomentumGrid;
use ercd_core::linalg::{CMat4, CVec4};
use ercd_core::rlinear::{op_norm_diff, RLinOp};
use ercd_core::spectral::{fw_propagate, propagate, v_minus, v_plus, Equation};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn cvec() -> impl Strategy<Value = CVec4> {
    prop::array::uniform4(complex()).prop_map(CVec4)
}

fn cmat() -> impl Strategy<Value = CMat4> {
    prop::array::uniform4(prop::array::uniform4(complex())).prop_map(CMat4)
}

fn rlin() -> impl Strategy<Value = RLinOp> {
    (cmat(), cmat()).prop_map(|(l, a)| RLinOp::new(l, a))
}

proptest! {
    #[test]
    fn composition_is_associative(a in rlin(), b in rlin(), c in rlin()) {
        prop_assert!(op_norm_diff(&((a * b) * c), &(a * (b * c))) < 1e-12);
    }

    #[test]
    fn real_oracle_is_a_homomorphism(a in rlin(), b in rlin()) {
        let lhs = (a * b).to_real8();
        let rhs = a.to_real8() * b.to_real8();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn real_oracle_round_trips(a in rlin()) {
        prop_assert!(op_norm_diff(&RLinOp::from_real8(&a.to_real8()), &a) < 1e-14);
    }

    #[test]
    fn apply_respects_composition(a in rlin(), b in rlin(), v in cvec()) {
        let lhs = (a * b).apply(&v);
        let rhs = a.apply(&b.apply(&v));
        prop_assert!((lhs - rhs).max_abs() < 1e-12);
    }

    #[test]
    fn operators_are_real_linear(a in rlin(), u in cvec(), v in cvec(), x in -3.0..3.0f64) {
        let lhs = a.apply(&(u + v.scale(x.into())));
        let rhs = a.apply(&u) + a.apply(&v).scale(x.into());
        prop_assert!((lhs - rhs).max_abs() < 1e-12);
    }

    #[test]
    fn antilinear_part_conjugates_scalars(a in cmat(), v in cvec(), z in complex()) {
        let op = RLinOp::new(CMat4::zero(), a);
        let lhs = op.apply(&v.scale(z));
        let rhs = op.apply(&v).scale(z.conj());
        prop_assert!((lhs - rhs).max_abs() < 1e-12);
    }

    #[test]
    fn fw_transform_is_unitary(k in prop::array::uniform3(-5.0..5.0f64), m in 0.1..3.0f64) {
        let s = ercd_core::MomentumSample::new(k, m).unwrap();
        let vp = v_plus(&s).unwrap();
        prop_assert!((vp.adjoint() * vp).max_abs_diff(&CMat4::identity()) < 1e-12);
        prop_assert!((vp * v_minus(&s).unwrap()).max_abs_diff(&CMat4::identity()) < 1e-12);
    }
}

fn small_grid() -> Arc<MomentumGrid> {
    Arc::new(MomentumGrid::cubic(3, 0.5, 1.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn amplitude_json_round_trip_is_exact(amps in prop::collection::vec(cvec(), 27)) {
        let a = AmplitudeSet::new(AmplitudeKind::BosonicXi, small_grid(), amps).unwrap();
        prop_assert_eq!(AmplitudeSet::from_json(&a.to_json().unwrap()).unwrap(), a);
    }

    #[test]
    fn charge_is_additive_over_disjoint_nodes(u in cvec(), v in cvec(), i in 0usize..27, j in 0usize..27) {
        prop_assume!(i != j);
        let g = small_grid();
        let a = AmplitudeSet::single(AmplitudeKind::Fermionic, g.clone(), i, u);
        let b = AmplitudeSet::single(AmplitudeKind::Fermionic, g.clone(), j, v);
        let mut both = a.clone();
        both.amps[j] = v;
        for label in [SpinLabel::FermiField, SpinLabel::FermiQm] {
            let s = SpinChoice::new(label);
            for c in 1..=3 {
                let sum = charge(&a, &s, c).unwrap() + charge(&b, &s, c).unwrap();
                prop_assert!((charge(&both, &s, c).unwrap() - sum).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn synthesis_then_analysis_is_identity(amps in prop::collection::vec(cvec(), 27), t in 0.0..5.0f64) {
        let a = AmplitudeSet::new(AmplitudeKind::Fermionic, small_grid(), amps).unwrap();
        let f = synth_fw_fermionic(&a).unwrap();
        prop_assert!(analyze(&f, AmplitudeKind::Fermionic, Picture::Fw).unwrap().max_abs_diff(&a) < 1e-14);
        let back = fw_propagate(&fw_propagate(&f, t), -t);
        prop_assert!(back.max_abs_diff(&f) < 1e-12);
    }
}

#[test]
fn dirac_propagation_is_fw_propagation_conjugated_by_v() {
    let g = Arc::new(MomentumGrid::desk());
    let f = ercd_core::SpinorFieldK::from_fn(g, 0.0, |s| {
        let z = Complex64::new(s.k[0] - 0.3, s.k[1] * s.k[2] + 0.1);
        (CVec4([z, z.conj(), -z, Complex64::new(0.2, 1.0)]), CVec4([z * z, z, Complex64::new(1.0, 0.0), z.conj()]))
    });
    let t = 1.3;
    let direct = propagate(Equation::Dirac, &f, t);
    let via_fw = propagate(
        Equation::Fw,
        &f.map_matrix(|s, b| v_minus(&b.momentum(s)).unwrap()),
        t,
    )
    .map_matrix(|s, b| v_plus(&b.momentum(s)).unwrap());
    assert!(direct.max_abs_diff(&via_fw) <= 1e-11 * f.max_abs());
    assert!((direct.norm() - f.norm()).abs() <= 1e-12 * f.norm());
}
