use vertix::fn_calculus::{extended_bracket, fn_bracket, fn_bracket_terms, graded_commutator, verticality_lift, verticality_terms};
use vertix::forms::Chart;
use vertix::group::LieAlgValuedMap;
use vertix::matrix::Matrix;
use vertix::RationalFunction as RF;

use super::{expect, expect_eq, Identity, Rng, Sampler};
use crate::scenario::Scenario;

/// `h(θ)⁻¹ X̂(x) h(θ)` for a base-only `X̂`.
fn equivariant_param(c: &Chart, s: &Sampler, r: &mut Rng) -> vertix::Result<LieAlgValuedMap> {
    let g = c.group();
    let hat = s.base_param(r);
    let h = g.h(&c.thetas())?;
    let m = &(&h.inverse()? * &g.to_matrix(hat.comps())) * &h;
    g.elem(g.expand(&m)?)
}

pub fn catalog(_: &Scenario) -> Vec<Identity> {
    vec![
        Identity::random("antisymmetry", "{X,Y} = -{Y,X}", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let (x, y) = (s.lie_map(r), s.lie_map(r));
            expect_eq(c, "{X,Y}", &extended_bracket(c, &x, &y)?, &extended_bracket(c, &y, &x)?.scale(&RF::from_int(-1)))
        }),
        Identity::random("jacobi", "{X,{Y,Z}} + {Y,{Z,X}} + {Z,{X,Y}} = 0", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let (x, y, z) = (s.lie_map(r), s.lie_map(r), s.lie_map(r));
            let j = extended_bracket(c, &x, &extended_bracket(c, &y, &z)?)?
                .add(&extended_bracket(c, &y, &extended_bracket(c, &z, &x)?)?)?
                .add(&extended_bracket(c, &z, &extended_bracket(c, &x, &y)?)?)?;
            expect(j.is_zero(), || format!("Jacobi sum {}", super::Show::show(&j, c)))
        }),
        Identity::random("constant-reduction", "{X,Y} = [X,Y] for constant X, Y", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let (x, y) = (s.constant_lie(r), s.constant_lie(r));
            expect_eq(c, "{X,Y}", &extended_bracket(c, &x, &y)?, &c.group().bracket(&x, &y)?)
        }),
        Identity::random("equivariant-reduction", "{X,Y} = -[X,Y] for equivariant X, Y", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let (x, y) = (equivariant_param(c, &s, r)?, equivariant_param(c, &s, r)?);
            expect_eq(c, "{X,Y}", &extended_bracket(c, &x, &y)?, &c.group().bracket(&x, &y)?.scale(&RF::from_int(-1)))
        }),
        Identity::random("lift-morphism", "[X^v, Y^v]_FN = {X,Y}^v", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let (x, y) = (s.lie_map(r), s.lie_map(r));
            let xy = verticality_lift(c, &extended_bracket(c, &x, &y)?)?;
            expect_eq(c, "canonical terms", &fn_bracket(&verticality_lift(c, &x)?, &verticality_lift(c, &y)?), &xy)?;
            let by_terms = fn_bracket_terms(c.dim(), 0, &verticality_terms(c, &x)?, 0, &verticality_terms(c, &y)?)?;
            expect_eq(c, "lift terms", &by_terms, &xy)
        }),
        Identity::random(
            "lift-operator-identities",
            "[L_{X^v}, i_{Y^v}] = i_{{X,Y}^v} and [L_{X^v}, L_{Y^v}] = L_{{X,Y}^v} on a form of every degree",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let (x, y) = (s.lie_map(r), s.lie_map(r));
                let (xv, yv) = (verticality_lift(c, &x)?, verticality_lift(c, &y)?);
                let xy = verticality_lift(c, &extended_bracket(c, &x, &y)?)?;
                let lx = |b: &_| xv.nl_derivative(b);
                let ly = |b: &_| yv.nl_derivative(b);
                let iy = |b: &_| yv.insert(b);
                for b in s.panel(r) {
                    let what = format!("degree {}", b.degree());
                    expect_eq(c, &format!("{what} [L,i]"), &graded_commutator((0, &lx), (-1, &iy), &b), &xy.insert(&b))?;
                    expect_eq(c, &format!("{what} [L,L]"), &graded_commutator((0, &lx), (0, &ly), &b), &xy.nl_derivative(&b))?;
                }
                Ok(())
            },
        ),
        Identity::random("lift-collapse", "X^v as a vector field solves sum_i v^i dh/dtheta^i = h X, with no base part", |ctx, r| {
            let c = ctx.chart;
            let g = c.group();
            let x = ctx.sampler().lie_map(r);
            let field = verticality_lift(c, &x)?.to_field()?;
            expect_eq(c, "collapsed lift", &field, &c.fundamental_field(&x)?)?;
            let h = g.h(&c.thetas())?;
            let mut lhs = Matrix::zero(h.rows(), h.cols());
            for (i, v) in c.group_vars().into_iter().enumerate() {
                lhs = &lhs + &h.derive(v).scale(&field.comps()[c.n_base() + i]);
            }
            expect_eq(c, "h-equation", &lhs, &(&h * &g.to_matrix(x.comps())))?;
            expect(field.comps()[..c.n_base()].iter().all(RF::is_zero), || "lift has a base component".into())
        }),
    ]
}
