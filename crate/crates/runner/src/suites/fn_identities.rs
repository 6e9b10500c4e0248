use rand::Rng as _;
use vertix::fn_calculus::{fn_bracket, fn_bracket_terms, graded_commutator, nr_bracket, VectorValuedForm};
use vertix::forms::{mask_indices, DifferentialForm, ValueSpace, VectorField};
use vertix::RationalFunction as RF;

use super::{expect, expect_eq, Identity};
use crate::scenario::Scenario;

type Op<'a> = (i64, Box<dyn Fn(&DifferentialForm) -> DifferentialForm + 'a>);

fn ins(k: &VectorValuedForm) -> Op<'_> {
    (k.degree() as i64 - 1, Box::new(move |b| k.insert(b)))
}

fn lie(k: &VectorValuedForm) -> Op<'_> {
    (k.degree() as i64, Box::new(move |b| k.nl_derivative(b)))
}

fn ext_d<'a>() -> Op<'a> {
    (1, Box::new(DifferentialForm::ext_d))
}

fn commutator(a: &Op, b: &Op, f: &DifferentialForm) -> DifferentialForm {
    graded_commutator((a.0, &*a.1), (b.0, &*b.1), f)
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Scalar form evaluated on vector fields by cofactor expansion.
fn eval(f: &DifferentialForm, vs: &[VectorField]) -> RF {
    let mut acc = RF::zero();
    for (mask, vals) in f.terms() {
        let idx: Vec<usize> = mask_indices(mask).collect();
        acc = &acc + &(&vals[0] * &det(&idx, vs));
    }
    acc
}

fn det(idx: &[usize], vs: &[VectorField]) -> RF {
    let mut acc = RF::zero();
    if idx.is_empty() {
        return RF::one();
    }
    for (r, &i) in idx.iter().enumerate() {
        let mut rest = idx.to_vec();
        rest.remove(r);
        let minor = &vs[0].comps()[i] * &det(&rest, &vs[1..]);
        acc = if r % 2 == 0 { &acc + &minor } else { &acc - &minor };
    }
    acc
}

/// Degree-one `K` as an endomorphism of vector fields.
fn endo(k: &VectorValuedForm, x: &VectorField) -> VectorField {
    VectorField::new(k.comps().iter().map(|f| eval(f, std::slice::from_ref(x))).collect())
}

pub fn catalog(_: &Scenario) -> Vec<Identity> {
    vec![
        Identity::random("nr-antisymmetry", "[K,L]_NR = -(-1)^{(k-1)(l-1)} [L,K]_NR", |ctx, r| {
            let s = ctx.sampler();
            let (kd, ld) = (r.gen_range(1..3), r.gen_range(0..3));
            let (k, l) = (s.vvf(r, kd), s.vvf(r, ld));
            let flipped = nr_bracket(&l, &k).scale_int(-sign((kd + 1) * (ld + 1)));
            expect_eq(ctx.chart, "[K,L]_NR", &nr_bracket(&k, &l), &flipped)
        }),
        Identity::random("nr-insertion-commutator", "[i_K, i_L] = i_{[K,L]_NR} on a form of every degree", |ctx, r| {
            let s = ctx.sampler();
            let (kd, ld) = (r.gen_range(0..3), r.gen_range(0..3));
            let (k, l) = (s.vvf(r, kd), s.vvf(r, ld));
            let nr = nr_bracket(&k, &l);
            let (ik, il, inr) = (ins(&k), ins(&l), ins(&nr));
            for b in s.panel(r) {
                expect_eq(ctx.chart, &format!("degree {}", b.degree()), &commutator(&ik, &il, &b), &(inr.1)(&b))?;
            }
            Ok(())
        }),
        Identity::random("lie-derivative-commutes-with-d", "[L_K, d] = 0 on a form of every degree", |ctx, r| {
            let s = ctx.sampler();
            let kd = r.gen_range(0..3);
            let k = s.vvf(r, kd);
            let (lk, d) = (lie(&k), ext_d());
            for b in s.panel(r) {
                let c = commutator(&lk, &d, &b);
                expect(c.is_zero(), || format!("degree {}: [L_K, d] b = {}", b.degree(), ctx.chart.fmt_form(&c)))?;
            }
            Ok(())
        }),
        Identity::random("lie-derivative-morphism", "[L_K, L_J] = L_{[K,J]_FN} on a form of every degree", |ctx, r| {
            let s = ctx.sampler();
            let (kd, jd) = (r.gen_range(0..2), r.gen_range(0..2));
            let (k, j) = (s.vvf(r, kd), s.vvf(r, jd));
            let fnb = fn_bracket(&k, &j);
            let (lk, lj, lfn) = (lie(&k), lie(&j), lie(&fnb));
            for b in s.panel(r) {
                expect_eq(ctx.chart, &format!("degree {}", b.degree()), &commutator(&lk, &lj, &b), &(lfn.1)(&b))?;
            }
            Ok(())
        }),
        Identity::random(
            "lie-insertion-relation",
            "[L_K, i_J] = i_{[K,J]_FN} - (-1)^{k(j-1)} L_{i_J K} on a form of every degree",
            |ctx, r| {
                let s = ctx.sampler();
                let (kd, jd) = (r.gen_range(0..2), r.gen_range(0..2));
                let (k, j) = (s.vvf(r, kd), s.vvf(r, jd));
                let fnb = fn_bracket(&k, &j);
                let ijk = j.insert_vvf(&k);
                let (lk, ij, ifn, lijk) = (lie(&k), ins(&j), ins(&fnb), lie(&ijk));
                for b in s.panel(r) {
                    let rhs = (ifn.1)(&b).sub(&(lijk.1)(&b).scale_int(sign(kd * (jd + 1))))?;
                    expect_eq(ctx.chart, &format!("degree {}", b.degree()), &commutator(&lk, &ij, &b), &rhs)?;
                }
                Ok(())
            },
        ),
        Identity::random("fn-antisymmetry", "[K,J]_FN = -(-1)^{kj} [J,K]_FN", |ctx, r| {
            let s = ctx.sampler();
            let (kd, jd) = (r.gen_range(0..3), r.gen_range(0..3));
            let (k, j) = (s.vvf(r, kd), s.vvf(r, jd));
            expect_eq(ctx.chart, "[K,J]_FN", &fn_bracket(&k, &j), &fn_bracket(&j, &k).scale_int(-sign(kd * jd)))
        }),
        Identity::random("fn-jacobi", "[K,[L,M]] = [[K,L],M] + (-1)^{kl} [L,[K,M]] for the FN bracket", |ctx, r| {
            let s = ctx.sampler();
            let (kd, ld, md) = (r.gen_range(0..2), r.gen_range(0..2), 0);
            let (k, l, m) = (s.vvf(r, kd), s.vvf(r, ld), s.vvf(r, md));
            let lhs = fn_bracket(&k, &fn_bracket(&l, &m));
            let rhs = fn_bracket(&fn_bracket(&k, &l), &m).add(&fn_bracket(&l, &fn_bracket(&k, &m)).scale_int(sign(kd * ld)))?;
            expect_eq(ctx.chart, "graded Jacobi", &lhs, &rhs)
        }),
        Identity::random(
            "fn-decomposed-formula",
            "[K,J]_FN = K^J[X,Y] + K^L_X J Y - L_Y K^J X + (-1)^k (dK^i_X J Y + i_Y K^dJ X), summed over any decomposition",
            |ctx, r| {
                let s = ctx.sampler();
                let c = ctx.chart;
                let (kd, jd) = (r.gen_range(0..3), r.gen_range(0..2));
                let n = r.gen_range(1..=2);
                let kt: Vec<_> = (0..n).map(|_| (s.form(r, kd), s.field(r))).collect();
                let jt: Vec<_> = (0..n).map(|_| (s.form(r, jd), s.field(r))).collect();
                let k = VectorValuedForm::from_terms(c.dim(), kd, &kt)?;
                let j = VectorValuedForm::from_terms(c.dim(), jd, &jt)?;
                expect_eq(c, "[K,J]_FN", &fn_bracket_terms(c.dim(), kd, &kt, jd, &jt)?, &fn_bracket(&k, &j))
            },
        ),
        Identity::random("fn-bracket-of-fields", "[X,Y]_FN = [X,Y] for vector fields", |ctx, r| {
            let s = ctx.sampler();
            let (x, y) = (s.field(r), s.field(r));
            let got = fn_bracket(&VectorValuedForm::from_field(&x), &VectorValuedForm::from_field(&y));
            expect_eq(ctx.chart, "[X,Y]_FN", &got, &VectorValuedForm::from_field(&x.commutator(&y)))
        }),
        Identity::random("fn-bracket-of-functions", "[f X, g Y]_FN = fg [X,Y] + [f X, dg Y]_NR - [g Y, df X]_NR", |ctx, r| {
            let s = ctx.sampler();
            let c = ctx.chart;
            let (ff, gg) = (s.form(r, 0), s.form(r, 0));
            let (x, y) = (s.field(r), s.field(r));
            let f = VectorValuedForm::from_terms(c.dim(), 0, &[(ff.clone(), x.clone())])?;
            let g = VectorValuedForm::from_terms(c.dim(), 0, &[(gg.clone(), y.clone())])?;
            let df = VectorValuedForm::from_terms(c.dim(), 1, &[(ff.ext_d(), x.clone())])?;
            let dg = VectorValuedForm::from_terms(c.dim(), 1, &[(gg.ext_d(), y.clone())])?;
            let fg = VectorValuedForm::from_terms(c.dim(), 0, &[(ff.wedge(&gg)?, x.commutator(&y))])?;
            let rhs = fg.add(&nr_bracket(&f, &dg))?.sub(&nr_bracket(&g, &df))?;
            expect_eq(c, "[fX, gY]_FN", &fn_bracket(&f, &g), &rhs)
        }),
        Identity::random("nr-bracket-of-function-and-differential", "[f X, dg Y]_NR = f L_X g Y", |ctx, r| {
            let s = ctx.sampler();
            let c = ctx.chart;
            let (ff, gg) = (s.form(r, 0), s.form(r, 0));
            let (x, y) = (s.field(r), s.field(r));
            let f = VectorValuedForm::from_terms(c.dim(), 0, &[(ff.clone(), x.clone())])?;
            let dg = VectorValuedForm::from_terms(c.dim(), 1, &[(gg.ext_d(), y.clone())])?;
            let expected = VectorValuedForm::from_terms(c.dim(), 0, &[(ff.wedge(&gg.lie_derivative(&x))?, y)])?;
            expect_eq(c, "[fX, dg Y]_NR", &nr_bracket(&f, &dg), &expected)
        }),
        Identity::random("insertion-evaluation", "(i_K b)(X_1..X_l) = sum_i b(X_1..K X_i..X_l) for degree-one K", |ctx, r| {
            let s = ctx.sampler();
            let l = r.gen_range(1..=ctx.chart.dim().min(3));
            let k = s.vvf(r, 1);
            let b = vertix::sample::random_form(r, ctx.chart, l, ValueSpace::Scalar, &vertix::sample::chart_vars(ctx.chart), s.cfg);
            let xs: Vec<VectorField> = (0..l).map(|_| s.field(r)).collect();
            let mut expected = RF::zero();
            for i in 0..l {
                let mut ys = xs.clone();
                ys[i] = endo(&k, &xs[i]);
                expected = &expected + &eval(&b, &ys);
            }
            expect_eq(ctx.chart, "(i_K b)(X..)", &eval(&k.insert(&b), &xs), &expected)
        }),
    ]
}
