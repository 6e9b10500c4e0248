use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vertix::forms::{mask_indices, Chart, DifferentialForm, RationalChartMap, ValueSpace, VectorField};
use vertix::group::heisenberg3;
use vertix::sample::{chart_vars, form_panel, random_field, random_form, random_poly, SampleConfig};
use vertix::RationalFunction as RF;

fn chart() -> Chart {
    Chart::standard(heisenberg3(), 2).unwrap()
}

fn cfg() -> SampleConfig {
    SampleConfig { max_degree: 2, max_terms: 2 }
}

/// Evaluates a scalar form on a tuple of vector fields by the determinant
/// (permutation) expansion, independent of the sparse-mask machinery.
fn eval(f: &DifferentialForm, vs: &[VectorField]) -> RF {
    assert_eq!(vs.len(), f.degree());
    let mut acc = RF::zero();
    for (mask, vals) in f.terms() {
        let idx: Vec<usize> = mask_indices(mask).collect();
        acc = &acc + &(&vals[0] * &det(&idx, vs));
    }
    acc
}

fn det(idx: &[usize], vs: &[VectorField]) -> RF {
    let k = idx.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut acc = RF::zero();
    loop {
        let mut term = RF::one();
        for (s, &p) in perm.iter().enumerate() {
            term = &term * &vs[p].comps()[idx[s]];
        }
        let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        if !next_permutation(&mut perm) {
            return acc;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn sum(a: &DifferentialForm, b: &DifferentialForm) -> DifferentialForm {
    a.add(b).unwrap()
}

fn diff(a: &DifferentialForm, b: &DifferentialForm) -> DifferentialForm {
    a.sub(b).unwrap()
}

#[test]
fn bracket_square_of_heisenberg_potential() {
    let c = Chart::standard(heisenberg3(), 2).unwrap();
    let g = c.group().clone();
    let (x1, x2) = (c.x(0), c.x(1));
    let a = DifferentialForm::from_entries(
        c.dim(),
        1,
        c.lie(),
        vec![(vec![0], vec![x2.clone(), RF::zero(), RF::zero()]), (vec![1], vec![RF::zero(), x1.clone(), RF::zero()])],
    )
    .unwrap();
    let half = c.bracket_wedge(&a, &a).unwrap().scale(&RF::constant(vertix::coeff::q(1, 2)));
    // [A(u),A(v)] − [A(v),A(u)] on the coordinate pair (∂1, ∂2)
    let au = g.elem(a.component(0b01).unwrap().clone()).unwrap();
    let av = g.elem(a.component(0b10).unwrap().clone()).unwrap();
    let expect = g.bracket(&au, &av).unwrap().sub(&g.bracket(&av, &au).unwrap()).unwrap().scale(&RF::constant(vertix::coeff::q(1, 2)));
    assert_eq!(half.component(0b11).unwrap(), expect.comps());
    assert_eq!(expect.comps(), &[RF::zero(), RF::zero(), &x1 * &x2]);
    assert_eq!(half.terms().count(), 1);
}

#[test]
fn plain_wedge_rejects_two_valued_factors() {
    let c = chart();
    let a = c.zero_form(1, c.lie());
    assert!(a.wedge(&a).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn exterior_algebra_laws(seed in any::<u64>()) {
        let c = chart();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = chart_vars(&c);
        let panel = form_panel(&mut rng, &c, cfg());
        let f = random_poly(&mut rng, &vars, cfg());
        let x = random_field(&mut rng, &c, &vars, cfg());
        let y = random_field(&mut rng, &c, &vars, cfg());
        for b in &panel {
            prop_assert!(b.ext_d().ext_d().is_zero());
            let fb = b.scale(&f);
            prop_assert_eq!(fb.ext_d(), sum(&c.function(f.clone()).ext_d().wedge(b).unwrap(), &b.ext_d().scale(&f)));
            prop_assert!(b.interior(&x).interior(&x).is_zero());
            // [L_X, d] = 0
            prop_assert_eq!(b.ext_d().lie_derivative(&x), b.lie_derivative(&x).ext_d());
            // [L_X, ι_Y] = ι_[X,Y]
            let lhs = diff(&b.interior(&y).lie_derivative(&x), &b.lie_derivative(&x).interior(&y));
            prop_assert_eq!(lhs, b.interior(&x.commutator(&y)));
            // [L_X, L_Y] = L_[X,Y]
            let lhs = diff(&b.lie_derivative(&y).lie_derivative(&x), &b.lie_derivative(&x).lie_derivative(&y));
            prop_assert_eq!(lhs, b.lie_derivative(&x.commutator(&y)));
            if b.degree() >= 1 {
                // contraction agrees with evaluation in the first slot
                let rest: Vec<VectorField> = (1..b.degree()).map(|_| random_field(&mut rng, &c, &vars, cfg())).collect();
                let mut all = vec![x.clone()];
                all.extend(rest.iter().cloned());
                prop_assert_eq!(eval(&b.interior(&x), &rest), eval(b, &all));
            }
        }
        let z = c.function(f.clone());
        prop_assert_eq!(z.lie_derivative(&x).value()[0].clone(), x.apply(&f));
        prop_assert!(panel[2].lie_derivative(&c.zero_field()).is_zero());
    }

    #[test]
    fn wedge_laws(seed in any::<u64>(), ka in 0usize..3, kb in 0usize..3, kc in 0usize..2) {
        let c = chart();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = chart_vars(&c);
        let a = random_form(&mut rng, &c, ka, ValueSpace::Scalar, &vars, cfg());
        let b = random_form(&mut rng, &c, kb, ValueSpace::Scalar, &vars, cfg());
        let e = random_form(&mut rng, &c, kc, ValueSpace::Scalar, &vars, cfg());
        let x = random_field(&mut rng, &c, &vars, cfg());
        prop_assert_eq!(a.wedge(&b.wedge(&e).unwrap()).unwrap(), a.wedge(&b).unwrap().wedge(&e).unwrap());
        let sign = if (ka * kb) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale_int(sign));
        // graded Leibniz of the contraction
        let lhs = a.wedge(&b).unwrap().interior(&x);
        let s = if ka % 2 == 1 { -1 } else { 1 };
        let rhs = sum(&a.interior(&x).wedge(&b).unwrap(), &a.wedge(&b.interior(&x)).unwrap().scale_int(s));
        prop_assert_eq!(lhs, rhs);
        // shuffle formula on coordinate vectors for a 1-form times a 1-form
        if ka == 1 && kb == 1 {
            let u = random_field(&mut rng, &c, &vars, cfg());
            let v = random_field(&mut rng, &c, &vars, cfg());
            let w = eval(&a.wedge(&b).unwrap(), &[u.clone(), v.clone()]);
            let expect = &(&eval(&a, std::slice::from_ref(&u)) * &eval(&b, std::slice::from_ref(&v))) - &(&eval(&a, &[v]) * &eval(&b, &[u]));
            prop_assert_eq!(w, expect);
        }
    }

    #[test]
    fn pullback_laws(seed in any::<u64>(), ka in 0usize..3, kb in 0usize..2) {
        let c = chart();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = chart_vars(&c);
        let small = SampleConfig { max_degree: 2, max_terms: 2 };
        let map = |rng: &mut ChaCha8Rng| {
            RationalChartMap::new((0..c.dim()).map(|i| &RF::var(vertix::coeff::Var(i as u32)) + &random_poly(rng, &vars, small)).collect())
        };
        let m1 = map(&mut rng);
        let m2 = map(&mut rng);
        let a = random_form(&mut rng, &c, ka, ValueSpace::Scalar, &vars, small);
        let b = random_form(&mut rng, &c, kb, ValueSpace::Lie(3), &vars, small);
        prop_assert_eq!(a.pullback(&RationalChartMap::identity(c.dim())).unwrap(), a.clone());
        prop_assert_eq!(a.ext_d().pullback(&m1).unwrap(), a.pullback(&m1).unwrap().ext_d());
        prop_assert_eq!(a.wedge(&b).unwrap().pullback(&m1).unwrap(), a.pullback(&m1).unwrap().wedge(&b.pullback(&m1).unwrap()).unwrap());
        let composite = m2.after(&m1).unwrap();
        prop_assert_eq!(a.pullback(&composite).unwrap(), a.pullback(&m2).unwrap().pullback(&m1).unwrap());
    }
}

#[test]
fn spec_examples() {
    let c = chart();
    let f = c.function(&c.x(0) * &c.x(1)).ext_d();
    let expect = sum(&c.d_coord(0).scale(&c.x(1)), &c.d_coord(1).scale(&c.x(0)));
    assert_eq!(f, expect);
    let vol = c.d_coord(0).wedge(&c.d_coord(1)).unwrap();
    assert_eq!(vol.interior(&VectorField::coordinate(c.dim(), 0)), c.d_coord(1));
    assert!(c.function(RF::one()).interior(&VectorField::coordinate(c.dim(), 0)).is_zero());
}
