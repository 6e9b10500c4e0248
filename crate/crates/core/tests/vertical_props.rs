use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vertix::fn_calculus::extended_bracket;
use vertix::forms::{Chart, DifferentialForm, RationalChartMap, ValueSpace};
use vertix::group::{heisenberg3, sl2, Group, Representation};
use vertix::sample::{chart_vars, random_field, random_group_params, random_lie_map, SampleConfig};
use vertix::vertical::*;
use vertix::{Error, RationalFunction as RF};

fn heis() -> Chart {
    Chart::standard(heisenberg3(), 2).unwrap()
}

fn cfg() -> SampleConfig {
    SampleConfig { max_degree: 1, max_terms: 2 }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn general<R: Rng>(r: &mut R, c: &Chart) -> VerticalMap {
    VerticalMap::general(c, random_group_params(r, c, &chart_vars(c), cfg())).unwrap()
}

fn base_only<R: Rng>(r: &mut R, c: &Chart) -> VerticalMap {
    VerticalMap::base_only(c, random_group_params(r, c, &c.base_vars(), cfg())).unwrap()
}

fn equivariant<R: Rng>(r: &mut R, c: &Chart) -> VerticalMap {
    let seed = random_group_params(r, c, &c.base_vars(), cfg());
    VerticalMap::equivariant_from_seed(c, &seed).unwrap()
}

fn dressing<R: Rng>(r: &mut R, c: &Chart) -> VerticalMap {
    let seed = random_group_params(r, c, &c.base_vars(), cfg());
    VerticalMap::dressing_from_seed(c, &seed).unwrap()
}

/// Random potential on the base and its connection.
fn connection<R: Rng>(r: &mut R, c: &Chart) -> Connection {
    Connection::from_potential(c, &base_form(r, c, 1, c.lie())).unwrap()
}

fn tensorial<R: Rng>(r: &mut R, c: &Chart, rep: &Representation, degree: usize) -> TensorialForm {
    let seed = base_form(r, c, degree, ValueSpace::Rep(rep.dim()));
    TensorialForm::from_seed(c, rep, &seed).unwrap()
}

/// Random valued form using base coordinates and base differentials only.
fn base_form<R: Rng>(r: &mut R, c: &Chart, degree: usize, space: ValueSpace) -> DifferentialForm {
    let n = c.n_base();
    let mut out = c.zero_form(degree, space);
    for m in (0u32..(1 << n)).filter(|m| m.count_ones() as usize == degree) {
        let v = (0..space.len()).map(|_| vertix::sample::random_poly(r, &c.base_vars(), cfg())).collect();
        out.add_term(m, v);
    }
    out
}

fn identity_section(c: &Chart) -> RationalChartMap {
    let mut images: Vec<RF> = (0..c.n_base()).map(|i| c.x(i)).collect();
    images.extend(c.group().identity_params());
    RationalChartMap::new(images)
}

#[test]
fn induced_diffeo_examples() {
    let c = heis();
    let id = VerticalMap::identity(&c);
    assert_eq!(id.induced_diffeo(&c).unwrap(), RationalChartMap::identity(c.dim()));
    let g = VerticalMap::base_only(&c, vec![c.x(0), RF::zero(), RF::zero()]).unwrap();
    let m = g.induced_diffeo(&c).unwrap();
    let expected = [c.x(0), c.x(1), &c.theta(0) + &c.x(0), c.theta(1), c.theta(2)];
    assert_eq!(m.images(), &expected[..]);
    let f = c.function(&c.x(0) * &c.x(1));
    assert_eq!(f.pullback(&m).unwrap(), f);
}

#[test]
fn kinds_are_checked_at_construction() {
    let c = heis();
    let theta_dep = vec![c.theta(0), RF::zero(), RF::zero()];
    assert!(matches!(VerticalMap::base_only(&c, theta_dep.clone()), Err(Error::InvariantViolation(_))));
    assert!(matches!(VerticalMap::new(&c, VerticalKind::Equivariant, theta_dep), Err(Error::InvariantViolation(_))));
    let mut r = rng(1);
    for group in [heisenberg3(), sl2()] {
        let c = Chart::standard(group, 1).unwrap();
        let e = equivariant(&mut r, &c);
        assert!(e.satisfies(&c, VerticalKind::Equivariant).unwrap());
        let u = dressing(&mut r, &c);
        assert!(u.satisfies(&c, VerticalKind::Dressing).unwrap());
        assert!(!u.satisfies(&c, VerticalKind::Equivariant).unwrap());
    }
    let other = Chart::standard(sl2(), 2).unwrap();
    let g = VerticalMap::identity(&other);
    assert!(matches!(compose_vertical(&c, &g, &g), Err(Error::ModelMismatch(..))));
}

#[test]
fn inversion_examples() {
    let c = heis();
    let g = VerticalMap::base_only(&c, vec![c.x(0), c.x(1), RF::zero()]).unwrap();
    let cand = VerticalMap::base_only(&c, vec![-&c.x(0), -&c.x(1), &c.x(0) * &c.x(1)]).unwrap();
    assert!(verify_inverse(&c, &g, &cand).unwrap());
    assert_eq!(invert_vertical(&c, &g).unwrap(), cand);
    let id = VerticalMap::identity(&c);
    assert_eq!(invert_vertical(&c, &id).unwrap(), id);
    let gen = VerticalMap::general(&c, vec![&c.theta(1) * &c.x(0), RF::zero(), RF::zero()]).unwrap();
    assert!(matches!(invert_vertical(&c, &gen), Err(Error::NoClosedForm(_))));
    let wrong = VerticalMap::base_only(&c, vec![-&c.x(0), -&c.x(1), RF::zero()]).unwrap();
    assert!(!verify_inverse(&c, &g, &wrong).unwrap());
}

#[test]
fn heisenberg_curvature_example() {
    let c = heis();
    let g = c.group();
    let mut a = c.zero_form(1, c.lie());
    a.add_term(1 << 0, vec![c.x(1), RF::zero(), RF::zero()]);
    a.add_term(1 << 1, vec![RF::zero(), c.x(0), RF::zero()]);
    let w = Connection::from_potential(&c, &a).unwrap();
    assert_eq!(w.form().pullback(&identity_section(&c)).unwrap(), a);
    let omega = w.curvature(&c).unwrap();
    let base = omega.pullback(&identity_section(&c)).unwrap();
    let mut expected = c.zero_form(2, c.lie());
    expected.add_term(0b11, vec![RF::from_int(-1), RF::one(), &c.x(0) * &c.x(1)]);
    assert_eq!(base, expected);
    assert!(is_tensorial(&c, &Representation::adjoint(g), &omega).unwrap());
    let flat = Connection::from_potential(&c, &c.zero_form(1, c.lie())).unwrap();
    assert!(flat.curvature(&c).unwrap().is_zero());
    assert_eq!(flat.form(), &c.maurer_cartan_form());
}

#[test]
fn dress_requires_dressing_kind() {
    let c = heis();
    let g = VerticalMap::identity(&c);
    assert!(matches!(dress(&c, &c.function(RF::one()), &g), Err(Error::KindMismatch { .. })));
}

#[test]
fn zero_generator_transforms_trivially() {
    let c = heis();
    let mut r = rng(5);
    let w = connection(&mut r, &c);
    let zero = c.group().zero_elem();
    assert!(nl_vertical_connection(&c, &zero, w.form()).unwrap().is_zero());
    let id = VerticalMap::identity(&c);
    assert_eq!(&transform_connection(&c, w.form(), &id).unwrap(), w.form());
    let rep = Representation::defining(c.group());
    let t = tensorial(&mut r, &c, &rep, 1);
    assert_eq!(&transform_tensorial(&c, &rep, t.form(), &id).unwrap(), t.form());
    assert!(covariant_derivative(&c, &rep, w.form(), &c.zero_form(1, ValueSpace::Rep(3))).unwrap().is_zero());
}

fn either_group(seed: u64) -> Group {
    if seed.is_multiple_of(3) {
        sl2()
    } else {
        heisenberg3()
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, ..ProptestConfig::default() })]

    #[test]
    fn composition_matches_chart_maps(seed in any::<u64>(), k in 2usize..5) {
        let c = Chart::standard(either_group(seed), 1).unwrap();
        let k = if c.group().name() == "sl2" { k.min(3) } else { k };
        let mut r = rng(seed);
        let maps: Vec<VerticalMap> = (0..k).map(|_| if r.gen_bool(0.5) { general(&mut r, &c) } else { base_only(&mut r, &c) }).collect();
        let composed = iterate_compose(&c, &maps).unwrap();
        let mut chart_map = maps[0].induced_diffeo(&c).unwrap();
        for m in &maps[1..] {
            chart_map = m.induced_diffeo(&c).unwrap().after(&chart_map).unwrap();
        }
        prop_assert_eq!(composed.induced_diffeo(&c).unwrap(), chart_map);
        prop_assert_eq!(iterate_compose(&c, &maps[..1]).unwrap(), maps[0].clone());
        let id = VerticalMap::identity(&c);
        let right_id = compose_vertical(&c, &maps[0], &id).unwrap();
        prop_assert_eq!(right_id.params(), maps[0].params());
    }

    #[test]
    fn equivariant_composition_is_pointwise(seed in any::<u64>()) {
        let c = Chart::standard(either_group(seed), 1).unwrap();
        let g = c.group().clone();
        let mut r = rng(seed);
        let (e1, e2, e3) = (equivariant(&mut r, &c), equivariant(&mut r, &c), equivariant(&mut r, &c));
        let two = compose_vertical(&c, &e1, &e2).unwrap();
        prop_assert_eq!(two.params(), &g.mul(e2.params(), e1.params()).unwrap()[..]);
        prop_assert_eq!(two.kind(), VerticalKind::Equivariant);
        let three = iterate_compose(&c, &[e1.clone(), e2.clone(), e3.clone()]).unwrap();
        let expected = g.mul(&g.mul(e3.params(), e2.params()).unwrap(), e1.params()).unwrap();
        prop_assert_eq!(three.params(), &expected[..]);
        let inv = invert_vertical(&c, &e1).unwrap();
        prop_assert!(verify_inverse(&c, &e1, &inv).unwrap());
        let b = base_only(&mut r, &c);
        prop_assert!(verify_inverse(&c, &b, &invert_vertical(&c, &b).unwrap()).unwrap());
    }

    #[test]
    fn pushforward_matches_jacobian(seed in any::<u64>()) {
        let c = Chart::standard(either_group(seed), 1).unwrap();
        let mut r = rng(seed);
        let gamma = general(&mut r, &c);
        let x = random_field(&mut r, &c, &chart_vars(&c), cfg());
        prop_assert_eq!(pushforward(&c, &gamma, &x).unwrap(), pushforward_jacobian(&c, &gamma, &x).unwrap());
        let xi = random_lie_map(&mut r, &c, &chart_vars(&c), cfg());
        let xv = c.fundamental_field(&xi).unwrap();
        let pushed = pushforward_jacobian(&c, &gamma, &xv).unwrap();
        prop_assert_eq!(pushed, vertical_at_image(&c, &gamma, &pushed_generator(&c, &gamma, &xi).unwrap()).unwrap());
    }

    #[test]
    fn pushforward_special_cases(seed in any::<u64>()) {
        let c = Chart::standard(either_group(seed), 1).unwrap();
        let mut r = rng(seed);
        let xi = vertix::sample::random_constant_lie(&mut r, &c);
        let xv = c.fundamental_field(&xi).unwrap();
        let e = equivariant(&mut r, &c);
        prop_assert_eq!(pushforward(&c, &e, &xv).unwrap(), vertical_at_image(&c, &e, xi.comps()).unwrap());
        let u = dressing(&mut r, &c);
        prop_assert!(pushforward(&c, &u, &xv).unwrap().is_zero());
    }

    #[test]
    fn connection_transformations(seed in any::<u64>()) {
        let c = heis();
        let mut r = rng(seed);
        let w = connection(&mut r, &c);
        let (gamma, eta) = (general(&mut r, &c), general(&mut r, &c));
        let wg = transform_connection(&c, w.form(), &gamma).unwrap();
        prop_assert_eq!(&wg, &pullback_along(&c, &gamma, w.form()).unwrap());
        // ψ_γ^* ψ_η^* ω = Ad_{(η∘R_γ)⁻¹} ω^γ + (η∘R_γ)⁻¹ d(η∘R_γ)
        let eta_rg = VerticalMap::general(&c, eta.precompose(&gamma.induced_diffeo(&c).unwrap()).unwrap()).unwrap();
        let twice = pullback_along(&c, &gamma, &pullback_along(&c, &eta, w.form()).unwrap()).unwrap();
        prop_assert_eq!(&twice, &transform_connection(&c, &wg, &eta_rg).unwrap());
        prop_assert_eq!(&twice, &transform_connection(&c, w.form(), &compose_vertical(&c, &gamma, &eta).unwrap()).unwrap());
        let (e1, e2) = (equivariant(&mut r, &c), equivariant(&mut r, &c));
        let step = transform_connection(&c, &transform_connection(&c, w.form(), &e1).unwrap(), &e2).unwrap();
        let product = VerticalMap::general(&c, c.group().mul(e1.params(), e2.params()).unwrap()).unwrap();
        prop_assert_eq!(&step, &transform_connection(&c, w.form(), &product).unwrap());
        prop_assert!(is_connection(&c, &step).unwrap());
    }

    #[test]
    fn tensorial_transformations(seed in any::<u64>(), degree in 0usize..3) {
        let c = heis();
        let mut r = rng(seed);
        let rep = Representation::defining(c.group());
        let a = tensorial(&mut r, &c, &rep, degree);
        let (gamma, eta) = (general(&mut r, &c), general(&mut r, &c));
        let ag = transform_tensorial(&c, &rep, a.form(), &gamma).unwrap();
        prop_assert_eq!(&ag, &pullback_along(&c, &gamma, a.form()).unwrap());
        prop_assert!(tensorial_membership(&c, &rep, &ag).unwrap().vertical_ok());
        let twice = pullback_along(&c, &gamma, &pullback_along(&c, &eta, a.form()).unwrap()).unwrap();
        let prod = compose_vertical(&c, &gamma, &eta).unwrap();
        prop_assert_eq!(&twice, &transform_tensorial(&c, &rep, a.form(), &prod).unwrap());
        let e = equivariant(&mut r, &c);
        prop_assert!(is_tensorial(&c, &rep, &transform_tensorial(&c, &rep, a.form(), &e).unwrap()).unwrap());
    }

    #[test]
    fn covariant_derivative_laws(seed in any::<u64>()) {
        let c = heis();
        let mut r = rng(seed);
        let rep = Representation::defining(c.group());
        let w = connection(&mut r, &c);
        let a = tensorial(&mut r, &c, &rep, 1);
        let da = covariant_derivative(&c, &rep, w.form(), a.form()).unwrap();
        prop_assert!(is_tensorial(&c, &rep, &da).unwrap());
        let gamma = general(&mut r, &c);
        let lhs = pullback_along(&c, &gamma, &da).unwrap();
        prop_assert_eq!(&lhs, &transform_tensorial(&c, &rep, &da, &gamma).unwrap());
        let wg = transform_connection(&c, w.form(), &gamma).unwrap();
        let ag = transform_tensorial(&c, &rep, a.form(), &gamma).unwrap();
        prop_assert_eq!(&lhs, &covariant_derivative(&c, &rep, &wg, &ag).unwrap());
    }

    #[test]
    fn curvature_vanishes_on_vertical_pairs(seed in any::<u64>()) {
        let c = Chart::standard(either_group(seed), 1).unwrap();
        let mut r = rng(seed);
        let w = connection(&mut r, &c);
        let omega = w.curvature(&c).unwrap();
        let x = random_lie_map(&mut r, &c, &chart_vars(&c), cfg());
        let y = random_lie_map(&mut r, &c, &chart_vars(&c), cfg());
        let (xv, yv) = (c.fundamental_field(&x).unwrap(), c.fundamental_field(&y).unwrap());
        prop_assert!(omega.interior(&yv).interior(&xv).is_zero());
    }

    #[test]
    fn dressing_produces_invariant_basic_forms(seed in any::<u64>()) {
        let c = heis();
        let mut r = rng(seed);
        let w = connection(&mut r, &c);
        let u = dressing(&mut r, &c);
        let wu = dress(&c, w.form(), &u).unwrap();
        prop_assert_eq!(&wu, &transform_connection(&c, w.form(), &u).unwrap());
        prop_assert!(is_basic(&c, &wu).unwrap());
        let gamma = general(&mut r, &c);
        prop_assert_eq!(&pullback_along(&c, &gamma, &wu).unwrap(), &wu);
        let omega = w.curvature(&c).unwrap();
        let ou = dress(&c, &omega, &u).unwrap();
        prop_assert_eq!(&ou, &curvature(&c, &wu).unwrap());
        prop_assert_eq!(&ou, &c.adjoint_form(&u.pointwise_inverse(&c).unwrap(), &omega).unwrap());
        prop_assert!(is_basic(&c, &ou).unwrap());
    }

    #[test]
    fn infinitesimal_vertical_transformations(seed in any::<u64>()) {
        let c = heis();
        let mut r = rng(seed);
        let w = connection(&mut r, &c);
        let rep = Representation::defining(c.group());
        let a = tensorial(&mut r, &c, &rep, 1);
        let x = random_lie_map(&mut r, &c, &chart_vars(&c), cfg());
        let y = random_lie_map(&mut r, &c, &chart_vars(&c), cfg());
        prop_assert_eq!(nl_vertical_connection(&c, &x, w.form()).unwrap(), nl_vertical_direct(&c, &x, w.form()).unwrap());
        prop_assert_eq!(nl_vertical_tensorial(&c, &rep, &x, a.form()).unwrap(), nl_vertical_direct(&c, &x, a.form()).unwrap());
        let xy = extended_bracket(&c, &x, &y).unwrap();
        let comm = |b: &DifferentialForm| {
            let xyb = nl_vertical_direct(&c, &x, &nl_vertical_direct(&c, &y, b).unwrap()).unwrap();
            let yxb = nl_vertical_direct(&c, &y, &nl_vertical_direct(&c, &x, b).unwrap()).unwrap();
            xyb.sub(&yxb).unwrap()
        };
        prop_assert_eq!(comm(w.form()), nl_vertical_connection(&c, &xy, w.form()).unwrap());
        prop_assert_eq!(comm(a.form()), nl_vertical_tensorial(&c, &rep, &xy, a.form()).unwrap());
    }

    #[test]
    fn membership_is_lost_for_generic_maps(seed in any::<u64>()) {
        let c = heis();
        let mut r = rng(seed);
        let w = connection(&mut r, &c);
        let e = equivariant(&mut r, &c);
        prop_assert!(is_connection(&c, &transform_connection(&c, w.form(), &e).unwrap()).unwrap());
        // a map mixing fiber and base dependence is never equivariant
        let gamma = VerticalMap::general(&c, vec![&c.theta(1) * &c.x(0), c.x(1), RF::zero()]).unwrap();
        prop_assert!(!gamma.satisfies(&c, VerticalKind::Equivariant).unwrap());
        let m = connection_membership(&c, &transform_connection(&c, w.form(), &gamma).unwrap()).unwrap();
        prop_assert!(!m.equivariance_ok());
    }
}
