use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vertix::fn_calculus::extended_bracket;
use vertix::forms::{Chart, DifferentialForm, ValueSpace};
use vertix::group::{gl1, heisenberg3, sl2, Group, LieAlgValuedMap, Representation};
use vertix::local::*;
use vertix::sample::{chart_vars, random_base_form, random_group_params, random_lie_map, random_poly, SampleConfig};
use vertix::vertical::{Connection, TensorialForm, VerticalMap};
use vertix::{Error, RationalFunction as RF};

fn cfg() -> SampleConfig {
    SampleConfig { max_degree: 1, max_terms: 2 }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn either_group(seed: u64) -> Group {
    if seed.is_multiple_of(3) {
        sl2()
    } else {
        heisenberg3()
    }
}

fn chart_for(seed: u64) -> Chart {
    let g = either_group(seed);
    let n = if g.name() == "sl2" { 1 } else { 2 };
    Chart::standard(g, n).unwrap()
}

fn potential<R: Rng>(r: &mut R, c: &Chart) -> LocalField {
    LocalField::potential(c, random_base_form(r, c, 1, c.lie(), cfg())).unwrap()
}

fn matter<R: Rng>(r: &mut R, c: &Chart, rep: &Representation) -> LocalField {
    LocalField::matter(c, rep, random_base_form(r, c, 0, ValueSpace::Rep(rep.dim()), cfg())).unwrap()
}

fn gluing<R: Rng>(r: &mut R, c: &Chart) -> VerticalMap {
    VerticalMap::base_only(c, random_group_params(r, c, &c.base_vars(), cfg())).unwrap()
}

fn base_param<R: Rng>(r: &mut R, c: &Chart) -> LieAlgValuedMap {
    random_lie_map(r, c, &c.base_vars(), cfg())
}

/// Potential, matter field, its minimal coupling, and the field strength.
fn field_panel<R: Rng>(r: &mut R, c: &Chart) -> Vec<LocalField> {
    let rep = Representation::defining(c.group());
    let a = potential(r, c);
    let phi = matter(r, c, &rep);
    let dphi = minimal_coupling(c, &a, &phi).unwrap();
    let f = field_strength(c, &a).unwrap();
    vec![a, phi, dphi, f]
}

fn heisenberg_chart() -> Chart {
    Chart::standard(heisenberg3(), 2).unwrap()
}

fn params(c: &Chart, src: &[&str]) -> Vec<RF> {
    src.iter().map(|s| c.parse(s).unwrap()).collect()
}

#[test]
fn section_validation() {
    let c = heisenberg_chart();
    assert!(LocalSection::new(&c, params(&c, &["x1", "x2", "x1*x2"])).is_ok());
    assert!(matches!(LocalSection::new(&c, params(&c, &["t1", "0", "0"])), Err(Error::Invalid(_))));
    let s = Chart::standard(sl2(), 1).unwrap();
    assert_eq!(LocalSection::new(&s, params(&s, &["0", "x1", "1"])), Err(Error::SingularSubstitution));
}

#[test]
fn fields_live_on_the_base() {
    let c = heisenberg_chart();
    let up = DifferentialForm::valued_function(c.dim(), c.lie(), vec![c.theta(0), RF::zero(), RF::zero()]).ext_d();
    assert!(LocalField::potential(&c, up).is_err());
    let scalar = c.d_coord(0);
    assert!(matches!(LocalField::potential(&c, scalar), Err(Error::ValueSpaceMismatch(_))));
}

#[test]
fn glue_requires_base_only_maps() {
    let c = heisenberg_chart();
    let a = potential(&mut rng(1), &c);
    let g = VerticalMap::general(&c, params(&c, &["t2", "0", "0"])).unwrap();
    assert!(matches!(glue(&c, &a, &g), Err(Error::KindMismatch { .. })));
    assert_eq!(glue(&c, &a, &VerticalMap::identity(&c)).unwrap(), a);
    assert_eq!(local_transform(&c, &a, &VerticalMap::identity(&c)).unwrap(), a);
}

#[test]
fn iteration_needs_a_rule() {
    let c = heisenberg_chart();
    let mut r = rng(2);
    let a = potential(&mut r, &c);
    let maps = [gluing(&mut r, &c), gluing(&mut r, &c)];
    assert!(matches!(iterate_transform(&c, &a, &maps, None), Err(Error::MissingRule(_))));
    assert_eq!(iterate_transform(&c, &a, &maps[..1], None).unwrap(), local_transform(&c, &a, &maps[0]).unwrap());
}

#[test]
fn trivial_rule_diverges_from_gluing() {
    let c = heisenberg_chart();
    let a = LocalField::potential(&c, c.zero_form(1, c.lie())).unwrap();
    let eta = VerticalMap::base_only(&c, params(&c, &["x1", "0", "0"])).unwrap();
    let gamma = VerticalMap::base_only(&c, params(&c, &["0", "x2", "0"])).unwrap();
    let maps = [eta.clone(), gamma.clone()];
    let trivial = iterate_transform(&c, &a, &maps, Some(&TransformRule::Trivial)).unwrap();
    let gauge = iterate_transform(&c, &a, &maps, Some(&TransformRule::GaugeGroup)).unwrap();
    let eta_gamma = VerticalMap::base_only(&c, c.group().mul(eta.params(), gamma.params()).unwrap()).unwrap();
    assert_eq!(gauge, glue(&c, &a, &eta_gamma).unwrap());
    assert_ne!(trivial, gauge);
    // (γη)⁻¹d(γη) = dx1 τ1 + dx2 τ2 − x1 dx2 τ3, while (ηγ)⁻¹d(ηγ) has x2 dx1 τ3.
    let expected = DifferentialForm::from_entries(
        c.dim(),
        1,
        c.lie(),
        vec![(vec![0], params(&c, &["1", "0", "0"])), (vec![1], params(&c, &["0", "1", "-x1"]))],
    )
    .unwrap();
    assert_eq!(trivial.form(), &expected);
    let glued = DifferentialForm::from_entries(
        c.dim(),
        1,
        c.lie(),
        vec![(vec![0], params(&c, &["1", "0", "x2"])), (vec![1], params(&c, &["0", "1", "0"]))],
    )
    .unwrap();
    assert_eq!(gauge.form(), &glued);
}

#[test]
fn abelian_constant_parameter_does_not_move_the_potential() {
    let c = Chart::standard(gl1(), 2).unwrap();
    let mut r = rng(3);
    let a = potential(&mut r, &c);
    let xi = c.group().elem(params(&c, &["3/2"])).unwrap();
    assert!(delta_xi(&c, &a, &xi).unwrap().form().is_zero());
    let zeta = base_param(&mut r, &c);
    let check = commutator_check(&c, &xi, &zeta, &a, Some(&ActionRule::Zero)).unwrap();
    assert!(check.commutator.is_zero() && check.bracket_variation.is_zero());
}

#[test]
fn extended_bracket_rules() {
    let c = heisenberg_chart();
    let g = c.group().clone();
    let mut r = rng(4);
    let (xi, zeta) = (base_param(&mut r, &c), base_param(&mut r, &c));
    let br = g.bracket(&xi, &zeta).unwrap();
    assert_eq!(local_extended_bracket(&c, &xi, &zeta, Some(&ActionRule::Zero)).unwrap(), br);
    let neg = br.scale(&RF::from_int(-1));
    assert_eq!(local_extended_bracket(&c, &xi, &zeta, Some(&ActionRule::GaugeAlgebra)).unwrap(), neg);
    assert!(matches!(local_extended_bracket(&c, &xi, &zeta, None), Err(Error::MissingRule(_))));
    assert!(matches!(commutator_check(&c, &xi, &zeta, &potential(&mut r, &c), None), Err(Error::MissingRule(_))));
}

#[test]
fn ghost_monomials_are_reordered() {
    let c = heisenberg_chart();
    let f = DifferentialForm::valued_function(c.dim(), c.lie(), params(&c, &["x1", "1", "0"]));
    let a = GhostElement::from_monomial(&[2, 0], f.clone());
    let b = GhostElement::from_monomial(&[0, 2], f.clone());
    assert_eq!(a, b.neg());
    assert_eq!(a.bidegree(), (0, 2));
    assert!(GhostElement::from_monomial(&[1, 1], f).is_zero());
}

#[test]
fn generators_by_name() {
    assert_eq!(Expr::named("dc").unwrap(), Expr::gen(Generator::DGhost));
    assert_eq!(Expr::named("F").unwrap(), Expr::curvature());
    assert_eq!(Expr::named("B"), Err(Error::UnknownGenerator("B".into())));
    let a = Expr::gen(Generator::Potential);
    let phi = Expr::gen(Generator::Matter);
    assert!(matches!(a.clone().bracket(phi.clone()), Err(Error::ValueSpaceMismatch(_))));
    assert!(a.clone().act(phi).is_ok());
    assert!(matches!(a.add(Expr::gen(Generator::Ghost)), Err(Error::ValueSpaceMismatch(_))));
}

fn brst_model<R: Rng>(r: &mut R, c: &Chart) -> BrstModel {
    let rep = Representation::defining(c.group());
    let a = potential(r, c);
    let phi = matter(r, c, &rep);
    let d = c.n_group();
    let k: Vec<Vec<RF>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let p = random_poly(r, &c.base_vars(), cfg());
                    if i == j {
                        &p + &RF::one()
                    } else {
                        p
                    }
                })
                .collect()
        })
        .collect();
    BrstModel::new(c, &a, &phi, &k).unwrap()
}

#[test]
fn abelian_ghost_is_closed() {
    let c = Chart::standard(gl1(), 2).unwrap();
    let m = brst_model(&mut rng(5), &c);
    assert!(m.brst(&c, &Expr::gen(Generator::Ghost)).unwrap().is_zero());
}

#[test]
fn brst_of_the_curvature_is_its_bracket_with_the_ghost() {
    let c = heisenberg_chart();
    let m = brst_model(&mut rng(6), &c);
    let f = Expr::curvature();
    let rhs = f.clone().bracket(Expr::gen(Generator::Ghost)).unwrap();
    assert_eq!(m.brst(&c, &f).unwrap(), m.eval(&c, &rhs).unwrap());
    assert_eq!(m.brst(&c, &f).unwrap().bidegree(), (2, 1));
}

/// With `sc = κ[c, c]`, `s(sA) = (1 + 2κ)([dc, c] + [[A, c], c])`.
#[test]
fn only_the_negative_ghost_sign_is_nilpotent() {
    let c = heisenberg_chart();
    let m = brst_model(&mut rng(8), &c);
    let (a, gh, dgh) = (Expr::gen(Generator::Potential), Expr::gen(Generator::Ghost), Expr::gen(Generator::DGhost));
    let defect = dgh.bracket(gh.clone()).unwrap().add(a.bracket(gh.clone()).unwrap().bracket(gh).unwrap()).unwrap();
    assert!(!m.eval(&c, &defect).unwrap().is_zero());
    assert!(m.nilpotency_residual(&c, &Expr::gen(Generator::Potential)).unwrap().is_zero());
}

#[test]
fn unit_ghost_model_is_nilpotent() {
    let c = Chart::standard(sl2(), 1).unwrap();
    let mut r = rng(7);
    let rep = Representation::defining(c.group());
    let m = BrstModel::with_unit_ghost(&c, &potential(&mut r, &c), &matter(&mut r, &c, &rep)).unwrap();
    for e in brst_panel() {
        assert!(m.nilpotency_residual(&c, &e).unwrap().is_zero(), "s² on {e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, ..ProptestConfig::default() })]

    #[test]
    fn section_pullback_laws(seed in any::<u64>()) {
        let c = chart_for(seed);
        let mut r = rng(seed);
        let a = potential(&mut r, &c);
        let omega = Connection::from_potential(&c, a.form()).unwrap();
        let id = LocalSection::identity(&c);
        prop_assert_eq!(&section_pullback(&c, &id, omega.form()).unwrap(), a.form());
        let sigma = LocalSection::new(&c, random_group_params(&mut r, &c, &c.base_vars(), cfg())).unwrap();
        let pulled = LocalField::potential(&c, section_pullback(&c, &sigma, omega.form()).unwrap()).unwrap();
        let g = VerticalMap::base_only(&c, sigma.params().to_vec()).unwrap();
        prop_assert_eq!(&pulled, &glue(&c, &a, &g).unwrap());
        let curv = section_pullback(&c, &sigma, &omega.curvature(&c).unwrap()).unwrap();
        let f = field_strength(&c, &pulled).unwrap();
        prop_assert_eq!(&curv, f.form());
        let b = vertix::sample::random_form(&mut r, &c, 1, ValueSpace::Scalar, &chart_vars(&c), cfg());
        prop_assert_eq!(section_pullback(&c, &sigma, &b.ext_d()).unwrap(), section_pullback(&c, &sigma, &b).unwrap().ext_d());
    }

    #[test]
    fn tensorial_fields_pull_back_to_their_seed(seed in any::<u64>()) {
        let c = chart_for(seed);
        let mut r = rng(seed);
        let rep = Representation::defining(c.group());
        let seed_form = random_base_form(&mut r, &c, 1, ValueSpace::Rep(rep.dim()), cfg());
        let alpha = TensorialForm::from_seed(&c, &rep, &seed_form).unwrap();
        prop_assert_eq!(section_pullback(&c, &LocalSection::identity(&c), alpha.form()).unwrap(), seed_form);
    }

    #[test]
    fn gluings_compose(seed in any::<u64>()) {
        let c = chart_for(seed);
        let mut r = rng(seed);
        let (g1, g2) = (gluing(&mut r, &c), gluing(&mut r, &c));
        let g12 = VerticalMap::base_only(&c, c.group().mul(g1.params(), g2.params()).unwrap()).unwrap();
        for b in field_panel(&mut r, &c) {
            let twice = glue(&c, &glue(&c, &b, &g1).unwrap(), &g2).unwrap();
            prop_assert_eq!(&twice, &glue(&c, &b, &g12).unwrap(), "{}", b.kind());
        }
    }

    #[test]
    fn active_and_passive_agree_once(seed in any::<u64>()) {
        let c = chart_for(seed);
        let mut r = rng(seed);
        let g = gluing(&mut r, &c);
        for b in field_panel(&mut r, &c) {
            prop_assert_eq!(&local_transform(&c, &b, &g).unwrap(), &glue(&c, &b, &g).unwrap(), "{}", b.kind());
        }
    }

    #[test]
    fn minimal_coupling_is_covariant(seed in any::<u64>()) {
        let c = chart_for(seed);
        let mut r = rng(seed);
        let rep = Representation::defining(c.group());
        let a = potential(&mut r, &c);
        let phi = matter(&mut r, &c, &rep);
        let d_phi = minimal_coupling(&c, &a, &phi).unwrap();
        let g = gluing(&mut r, &c);
        let expected = glue(&c, &d_phi, &g).unwrap();
        let glued = minimal_coupling(&c, &glue(&c, &a, &g).unwrap(), &glue(&c, &phi, &g).unwrap()).unwrap();
        prop_assert_eq!(&glued, &expected);
        let moved = minimal_coupling(&c, &local_transform(&c, &a, &g).unwrap(), &local_transform(&c, &phi, &g).unwrap()).unwrap();
        prop_assert_eq!(&moved, &expected);
        let inv = c.group().inv(g.params()).unwrap();
        prop_assert_eq!(expected.form(), &d_phi.form().apply_matrix(&rep.rho(&inv).unwrap(), d_phi.form().space()));
    }

    #[test]
    fn iterated_transforms_follow_their_rule(seed in any::<u64>()) {
        let c = chart_for(seed);
        let g = c.group().clone();
        let mut r = rng(seed);
        let (eta, gamma) = (gluing(&mut r, &c), gluing(&mut r, &c));
        let maps = [eta.clone(), gamma.clone()];
        let eta_gamma = VerticalMap::base_only(&c, g.mul(eta.params(), gamma.params()).unwrap()).unwrap();
        let gamma_eta = VerticalMap::base_only(&c, g.mul(gamma.params(), eta.params()).unwrap()).unwrap();
        let conj = g.clone();
        let explicit = TransformRule::explicit(move |e, y| conj.mul(&conj.mul(&conj.inv(y)?, e)?, y));
        for b in field_panel(&mut r, &c) {
            let gauge = iterate_transform(&c, &b, &maps, Some(&TransformRule::GaugeGroup)).unwrap();
            prop_assert_eq!(&gauge, &glue(&c, &b, &eta_gamma).unwrap());
            prop_assert_eq!(&gauge, &iterate_transform(&c, &b, &maps, Some(&explicit)).unwrap());
            let trivial = iterate_transform(&c, &b, &maps, Some(&TransformRule::Trivial)).unwrap();
            prop_assert_eq!(&trivial, &glue(&c, &b, &gamma_eta).unwrap());
        }
    }

    #[test]
    fn variations_linearize_gluings(seed in any::<u64>()) {
        let g = either_group(seed);
        let c = Chart::new(g.clone(), &["x1", "x2"], &["t1", "t2", "t3"], &["s"]).unwrap();
        let s = c.parse("s").unwrap();
        let sv = *s.vars().iter().next().unwrap();
        let mut r = rng(seed);
        let lambda = base_param(&mut r, &c);
        let curve: Vec<RF> = g.identity_params().iter().zip(lambda.comps()).map(|(e, l)| e + &(&s * l)).collect();
        let gs = VerticalMap::base_only(&c, curve).unwrap();
        let at_zero = vertix::Subst::from_pairs([(sv, RF::zero())]);
        for b in field_panel(&mut r, &c) {
            let moved = glue(&c, &b, &gs).unwrap();
            let tangent = moved.form().try_map_coeffs(|f| f.derive(sv).substitute(&at_zero)).unwrap();
            let varied = delta_xi(&c, &b, &lambda).unwrap();
            prop_assert_eq!(&tangent, varied.form(), "{}", b.kind());
        }
    }

    #[test]
    fn variation_of_minimal_coupling(seed in any::<u64>()) {
        let c = chart_for(seed);
        let mut r = rng(seed);
        let rep = Representation::defining(c.group());
        let a = potential(&mut r, &c);
        let phi = matter(&mut r, &c, &rep);
        let xi = base_param(&mut r, &c);
        let expanded = delta_minimal_coupling(&c, &a, &phi, &xi).unwrap();
        let direct = delta_xi(&c, &minimal_coupling(&c, &a, &phi).unwrap(), &xi).unwrap();
        prop_assert_eq!(expanded, direct);
    }

    #[test]
    fn variations_close_on_the_extended_bracket(seed in any::<u64>()) {
        let c = chart_for(seed);
        let g = c.group().clone();
        let mut r = rng(seed);
        let (xi, zeta) = (base_param(&mut r, &c), base_param(&mut r, &c));
        let k = base_param(&mut r, &c);
        let gk = g.clone();
        let explicit = ActionRule::explicit(move |x, y| {
            let prod = x.comps().iter().zip(y.comps()).fold(RF::zero(), |acc, (a, b)| &acc + &(a * b));
            gk.bracket(&k.scale(&prod), y)
        });
        for b in field_panel(&mut r, &c) {
            for rule in [ActionRule::Zero, ActionRule::GaugeAlgebra, explicit.clone()] {
                let check = commutator_check(&c, &xi, &zeta, &b, Some(&rule)).unwrap();
                prop_assert!(check.holds(), "{} under {:?}", b.kind(), rule);
            }
            let passive = commutator_check(&c, &xi, &zeta, &b, Some(&ActionRule::Zero)).unwrap();
            let bracket = g.bracket(&xi, &zeta).unwrap();
            let varied = delta_xi(&c, &b, &bracket).unwrap();
            prop_assert_eq!(&passive.commutator, varied.form());
        }
        let a = potential(&mut r, &c);
        let check = commutator_check(&c, &xi, &zeta, &a, Some(&ActionRule::GaugeAlgebra)).unwrap();
        let bracket = local_extended_bracket(&c, &xi, &zeta, Some(&ActionRule::GaugeAlgebra)).unwrap();
        let d_a = bracket.comps().to_vec();
        let covariant = DifferentialForm::valued_function(c.dim(), c.lie(), d_a);
        let expected = covariant.ext_d().add(&c.bracket_wedge(a.form(), &covariant).unwrap()).unwrap();
        prop_assert_eq!(&check.commutator, &expected);
    }

    #[test]
    fn bundle_pullback_rule_matches_global_bracket(seed in any::<u64>()) {
        let c = chart_for(seed);
        let mut r = rng(seed);
        let vars = chart_vars(&c);
        let (x, y) = (random_lie_map(&mut r, &c, &vars, cfg()), random_lie_map(&mut r, &c, &vars, cfg()));
        let sigma = LocalSection::new(&c, random_group_params(&mut r, &c, &c.base_vars(), cfg())).unwrap();
        let rule = ActionRule::BundlePullback(sigma.clone());
        let local = local_extended_bracket(&c, &x, &y, Some(&rule)).unwrap();
        let global = sigma.pull_lie(&c, &extended_bracket(&c, &x, &y).unwrap()).unwrap();
        prop_assert_eq!(&local, &global);
        let a = potential(&mut r, &c);
        prop_assert!(commutator_check(&c, &x, &y, &a, Some(&rule)).unwrap().holds());
    }

    #[test]
    fn brst_is_nilpotent_and_anticommutes_with_d(seed in any::<u64>()) {
        let c = chart_for(seed);
        let mut r = rng(seed);
        let m = brst_model(&mut r, &c);
        for e in brst_panel() {
            prop_assert!(m.nilpotency_residual(&c, &e).unwrap().is_zero(), "s² on {}", e);
            prop_assert!(m.anticommutation_residual(&c, &e).unwrap().is_zero(), "sd + ds on {}", e);
            prop_assert_eq!(m.eval(&c, &e.d()).unwrap(), m.eval(&c, &e).unwrap().ext_d(), "d on {}", e);
            let (p, q) = e.bidegree();
            prop_assert_eq!(m.brst(&c, &e).unwrap().bidegree(), (p, q + 1));
        }
    }

    #[test]
    fn brst_is_an_odd_derivation(seed in any::<u64>(), i in 0usize..17, j in 0usize..17) {
        let c = chart_for(seed);
        let mut r = rng(seed);
        let m = brst_model(&mut r, &c);
        let panel = brst_panel();
        let (x, y) = (panel[i].clone(), panel[j].clone());
        prop_assume!(x.is_lie() && x.bidegree().1 + y.bidegree().1 <= 2);
        let prod = if y.is_lie() { x.clone().bracket(y.clone()) } else { x.clone().act(y.clone()) }.unwrap();
        let sx = m.brst(&c, &x).unwrap();
        let sy = m.brst(&c, &y).unwrap();
        let (ex, ey) = (m.eval(&c, &x).unwrap(), m.eval(&c, &y).unwrap());
        let rep = Representation::defining(c.group());
        let combine = |a: &GhostElement, b: &GhostElement| if y.is_lie() { a.bracket(&c, b) } else { a.act(&c, &rep, b) };
        let mut expected = combine(&sx, &ey).unwrap();
        let second = combine(&ex, &sy).unwrap();
        expected = if x.total_degree() % 2 == 1 { expected.sub(&second) } else { expected.add(&second) }.unwrap();
        prop_assert_eq!(m.brst(&c, &prod).unwrap(), expected);
        prop_assert!(m.nilpotency_residual(&c, &prod).unwrap().is_zero());
    }
}
