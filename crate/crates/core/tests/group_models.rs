use proptest::prelude::*;
use vertix::coeff::{q, Var};
use vertix::group::{gl1, heisenberg3, sl2, GroupText, LieGroupModel, Representation};
use vertix::matrix::{nilpotent_exp, Matrix};
use vertix::{Error, RationalFunction as RF, Subst};

fn v(i: u32) -> RF {
    RF::var(Var(i))
}

#[test]
fn shipped_models_and_representations_are_valid() {
    for g in [heisenberg3(), sl2(), gl1()] {
        assert!(g.invariant_checks().iter().all(|c| c.passed), "{}", g.name());
        for rep in [Representation::defining(&g), Representation::adjoint(&g)] {
            assert!(rep.invariant_checks().iter().all(|c| c.passed), "{} {}", g.name(), rep.name());
        }
    }
}

#[test]
fn heisenberg_bracket_matches_matrix_commutator() {
    let g = heisenberg3();
    let t = g.bracket(&g.basis_elem(0), &g.basis_elem(1)).unwrap();
    assert_eq!(t, g.basis_elem(2));
    let e12 = Matrix::unit(3, 0, 1);
    let e23 = Matrix::unit(3, 1, 2);
    assert_eq!(g.to_matrix(t.comps()), &(&e12 * &e23) - &(&e23 * &e12));
}

#[test]
fn heisenberg_adjoint_by_conjugation() {
    let g = heisenberg3();
    let p = vec![v(0), v(1), v(2)];
    let ad = g.adjoint(&p, &g.basis_elem(0)).unwrap();
    // direct conjugation with the explicit inverse matrix
    let h = g.h(&p).unwrap();
    let conj = &(&h * &Matrix::unit(3, 0, 1)) * &h.inverse().unwrap();
    assert_eq!(g.to_matrix(ad.comps()), conj);
    assert_eq!(ad.comps(), &[RF::one(), RF::zero(), -v(1)]);
    assert_eq!(g.adjoint(&g.identity_params(), &g.basis_elem(1)).unwrap(), g.basis_elem(1));
}

#[test]
fn heisenberg_fundamental_field_from_exponential_curve() {
    let g = heisenberg3();
    let p = vec![v(0), v(1), v(2)];
    let t = Var(9);
    for a in 0..3 {
        let curve = &g.h(&p).unwrap() * &nilpotent_exp(&g.basis()[a].scale(&RF::var(t))).unwrap();
        let params = [curve.get(0, 1), curve.get(1, 2), curve.get(0, 2)];
        let at0 = Subst::new().with(t, RF::zero());
        let expect: Vec<RF> = params.iter().map(|x| x.derive(t).substitute(&at0).unwrap()).collect();
        assert_eq!(g.tangent(a, &p).unwrap(), expect);
    }
    assert_eq!(g.tangent(0, &p).unwrap(), vec![RF::one(), RF::zero(), RF::zero()]);
    assert_eq!(g.tangent(1, &p).unwrap(), vec![RF::zero(), RF::one(), v(0)]);
}

#[test]
fn broken_multiplication_is_rejected() {
    let text = GroupText {
        name: "bad".into(),
        params: vec!["a".into(), "b".into(), "c".into()],
        params2: vec!["a2".into(), "b2".into(), "c2".into()],
        matrix: vec![
            vec!["1".into(), "a".into(), "c".into()],
            vec!["0".into(), "1".into(), "b".into()],
            vec!["0".into(), "0".into(), "1".into()],
        ],
        mul: vec!["a + a2".into(), "b + b2".into(), "c + c2 + a2*b".into()],
        inv: vec!["-a".into(), "-b".into(), "a*b - c".into()],
        identity: vec!["0".into(), "0".into(), "0".into()],
        basis: vec![
            vec![vec!["0".into(), "1".into(), "0".into()], vec!["0".into(); 3], vec!["0".into(); 3]],
            vec![vec!["0".into(); 3], vec!["0".into(), "0".into(), "1".into()], vec!["0".into(); 3]],
            vec![vec!["0".into(), "0".into(), "1".into()], vec!["0".into(); 3], vec!["0".into(); 3]],
        ],
    };
    match LieGroupModel::from_text(&text) {
        Err(Error::InvariantViolation(msg)) => assert!(msg.contains("multiplication"), "{msg}"),
        other => panic!("expected invariant violation, got {other:?}"),
    }
    let mut good = text;
    good.mul[2] = "c + c2 + a*b2".into();
    let g = LieGroupModel::from_text(&good).unwrap();
    assert_eq!(g.structure_constants()[0][1][2], q(1, 1));
}

#[test]
fn sl2_structure_and_inverse() {
    let g = sl2();
    let p = vec![v(0), v(1), v(2)];
    let prod = g.mul(&p, &g.inv(&p).unwrap()).unwrap();
    assert_eq!(prod, g.identity_params());
    let he = g.bracket(&g.basis_elem(0), &g.basis_elem(1)).unwrap();
    assert_eq!(he, g.basis_elem(1).scale(&RF::from_int(2)));
}

fn small_poly() -> impl Strategy<Value = RF> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=1), 1..3).prop_map(|terms| {
        terms.into_iter().fold(RF::zero(), |acc, (c, e0, e1)| {
            &acc + &(&RF::from_int(c) * &(&v(0).pow(e0 as i32).unwrap() * &v(1).pow(e1 as i32).unwrap()))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jacobi_and_adjoint_automorphism(
        x in prop::collection::vec(small_poly(), 3),
        y in prop::collection::vec(small_poly(), 3),
        z in prop::collection::vec(small_poly(), 3),
        p in prop::collection::vec(small_poly(), 3),
    ) {
        for g in [heisenberg3(), sl2()] {
            let (x, y, z) = (g.elem(x.clone()).unwrap(), g.elem(y.clone()).unwrap(), g.elem(z.clone()).unwrap());
            let j = g.bracket(&x, &g.bracket(&y, &z).unwrap()).unwrap()
                .add(&g.bracket(&y, &g.bracket(&z, &x).unwrap()).unwrap()).unwrap()
                .add(&g.bracket(&z, &g.bracket(&x, &y).unwrap()).unwrap()).unwrap();
            prop_assert!(j.is_zero());
            // matrix commutator oracle
            let mx = g.to_matrix(x.comps());
            let my = g.to_matrix(y.comps());
            prop_assert_eq!(g.to_matrix(g.bracket(&x, &y).unwrap().comps()), mx.commutator(&my));
            prop_assert!(g.bracket(&x, &x).unwrap().is_zero());
        }
        let g = heisenberg3();
        let (x, y) = (g.elem(x).unwrap(), g.elem(y).unwrap());
        let lhs = g.adjoint(&p, &g.bracket(&x, &y).unwrap()).unwrap();
        let rhs = g.bracket(&g.adjoint(&p, &x).unwrap(), &g.adjoint(&p, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = g.adjoint(&p, &g.adjoint(&g.inv(&p).unwrap(), &x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn model_mismatch_is_reported() {
    let h = heisenberg3();
    let s = sl2();
    assert!(matches!(h.bracket(&h.basis_elem(0), &s.basis_elem(0)), Err(Error::ModelMismatch(..))));
}
