use proptest::prelude::*;
use vertix::coeff::{Monomial, Var};
use vertix::{Polynomial, RationalFunction, Subst, Q};

const NVARS: u32 = 3;

fn small_q() -> impl Strategy<Value = Q> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| vertix::coeff::q(n, d))
}

fn poly(max_deg: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, NVARS as usize), small_q()), 0..4).prop_map(move |terms| {
        Polynomial::from_terms(terms.into_iter().filter_map(|(exps, c)| {
            if exps.iter().sum::<u32>() > max_deg {
                return None;
            }
            let m = Monomial::from_pairs(exps.into_iter().enumerate().map(|(i, e)| (Var(i as u32), e)).collect());
            Some((m, c))
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly(2).prop_filter("nonzero", |p| !p.is_zero())
}

/// Unreduced fraction pair, the independent oracle.
fn frac() -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (poly(2), nonzero_poly())
}

fn rf((n, d): &(Polynomial, Polynomial)) -> RationalFunction {
    RationalFunction::new(n.clone(), d.clone()).unwrap()
}

/// Cross-multiplication equality between a normalized value and a raw pair.
fn same(f: &RationalFunction, (n, d): &(Polynomial, Polynomial)) -> bool {
    f.numer() * d == n * f.denom()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arithmetic_agrees_with_unreduced_fractions(a in frac(), b in frac()) {
        let (fa, fb) = (rf(&a), rf(&b));
        let sum = (&(&a.0 * &b.1) + &(&b.0 * &a.1), &a.1 * &b.1);
        let diff = (&(&a.0 * &b.1) - &(&b.0 * &a.1), &a.1 * &b.1);
        let prod = (&a.0 * &b.0, &a.1 * &b.1);
        prop_assert!(same(&(&fa + &fb), &sum));
        prop_assert!(same(&(&fa - &fb), &diff));
        prop_assert!(same(&(&fa * &fb), &prod));
        if !b.0.is_zero() {
            let quot = (&a.0 * &b.1, &a.1 * &b.0);
            prop_assert!(same(&fa.checked_div(&fb).unwrap(), &quot));
        }
    }

    #[test]
    fn normal_form_is_reduced_and_monic(a in frac()) {
        let f = rf(&a);
        prop_assert_eq!(f.denom().leading_coeff(), vertix::coeff::q(1, 1));
        prop_assert!(vertix::coeff::gcd(f.numer(), f.denom()).is_one() || f.is_zero());
        // equal values built from different representatives coincide syntactically
        let k = (&a.0 * &a.1, &a.1 * &a.1);
        prop_assert_eq!(rf(&k), f);
    }

    #[test]
    fn field_axioms(a in frac(), b in frac(), c in frac()) {
        let (a, b, c) = (rf(&a), rf(&b), rf(&c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn derivatives_commute_and_obey_leibniz(a in frac(), b in frac(), u in 0..NVARS, v in 0..NVARS) {
        let (f, g) = (rf(&a), rf(&b));
        let (u, v) = (Var(u), Var(v));
        prop_assert_eq!(f.derive(u).derive(v), f.derive(v).derive(u));
        prop_assert_eq!((&f * &g).derive(u), &(&f.derive(u) * &g) + &(&f * &g.derive(u)));
    }

    #[test]
    fn substitution_is_a_homomorphism_and_composes(
        a in frac(), b in frac(),
        m1 in prop::collection::vec(frac(), NVARS as usize),
        m2 in prop::collection::vec(poly(2), NVARS as usize),
    ) {
        let (f, g) = (rf(&a), rf(&b));
        let s1 = Subst::from_pairs(m1.iter().enumerate().map(|(i, p)| (Var(i as u32), rf(p))));
        let s2 = Subst::from_pairs(m2.iter().enumerate().map(|(i, p)| (Var(i as u32), RationalFunction::from_poly(p.clone()))));
        // images may vanish a denominator; such cases are legitimately singular
        if let (Ok(sf), Ok(sg), Ok(sfg)) = (f.substitute(&s1), g.substitute(&s1), (&f * &g).substitute(&s1)) {
            prop_assert_eq!(sfg, &sf * &sg);
        }
        if let (Ok(step), Ok(composed)) = (f.substitute(&s1).and_then(|h| h.substitute(&s2)), s2.after(&s1)) {
            if let Ok(direct) = f.substitute(&composed) {
                prop_assert_eq!(step, direct);
            }
        }
    }
}

#[test]
fn spec_examples() {
    let x = RationalFunction::var(Var(0));
    let t = RationalFunction::var(Var(1));
    assert!((&x - &x).is_zero());
    assert_eq!(&(&x / &t) * &t, x);
    let x1 = &x + &RationalFunction::one();
    let sq = &x1 * &x1;
    let quotient = sq.checked_div(&x1).unwrap();
    // polynomial-product oracle
    assert_eq!(quotient.numer() * x1.numer(), sq.numer().clone());
    assert_eq!(quotient, x1);
    assert_eq!((&x * &t).derive(Var(0)), t);
    let inv_t = &RationalFunction::one() / &t;
    assert_eq!(inv_t.derive(Var(1)), -(&RationalFunction::one() / &(&t * &t)));
    let f = &x + &t;
    let s = Subst::new().with(Var(0), RationalFunction::zero()).with(Var(1), t.clone());
    assert_eq!(f.substitute(&s).unwrap(), t);
    assert_eq!(f.substitute(&Subst::new()).unwrap(), f);
}
