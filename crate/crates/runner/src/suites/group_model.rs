use vertix::group::{gl1, heisenberg3, sl2, Group, LieGroupModel, Representation};
use vertix::matrix::Matrix;
use vertix::RationalFunction as RF;

use super::{expect, expect_eq, Identity, Outcome, Rng, Sampler};
use crate::scenario::Scenario;

fn invariants(g: &Group) -> Outcome {
    let mut failing: Vec<String> = g.invariant_checks().iter().filter(|c| !c.passed).map(|c| c.name.to_string()).collect();
    for rep in [Representation::defining(g), Representation::adjoint(g)] {
        failing.extend(rep.invariant_checks().iter().filter(|c| !c.passed).map(|c| format!("{} {}", rep.name(), c.name)));
    }
    expect(failing.is_empty(), || format!("{}: violated {}", g.name(), failing.join(", ")))
}

/// Random elements with coefficients in the base coordinates.
fn elements(s: &Sampler, r: &mut Rng, n: usize) -> Vec<vertix::group::LieAlgValuedMap> {
    (0..n).map(|_| s.base_param(r)).collect()
}

/// Whether the product of the given elements, and every partial product
/// from the left, lies in the chart.
fn in_chart(g: &LieGroupModel, factors: &[&Vec<RF>]) -> bool {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        match g.mul(&acc, f).and_then(|m| g.h(&m).map(|_| m)) {
            Ok(m) => acc = m,
            Err(_) => return false,
        }
    }
    true
}

pub fn catalog(_: &Scenario) -> Vec<Identity> {
    vec![
        Identity::once(
            "shipped-model-invariants",
            "heisenberg3, sl2, gl1 and their defining/adjoint representations satisfy all model invariants",
            |_, _| {
                for g in [heisenberg3(), sl2(), gl1()] {
                    invariants(&g)?;
                }
                Ok(())
            },
        ),
        Identity::once("scenario-model-invariants", "the scenario group satisfies all model invariants", |ctx, _| {
            invariants(ctx.chart.group())
        }),
        Identity::once("fundamental-field-equation", "sum_i (tau_a^v)^i dh/dtheta^i = h tau_a for every basis element", |ctx, _| {
            let c = ctx.chart;
            let g = c.group();
            let h = g.h(&c.thetas())?;
            for a in 0..g.dim() {
                let t = g.tangent(a, &c.thetas())?;
                let mut lhs = Matrix::zero(h.rows(), h.cols());
                for (v, ti) in c.group_vars().into_iter().zip(&t) {
                    lhs = &lhs + &h.derive(v).scale(ti);
                }
                expect_eq(c, &format!("tau_{}", a + 1), &lhs, &(&h * &g.basis()[a]))?;
            }
            Ok(())
        }),
        Identity::random("bracket-jacobi", "[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0", |ctx, r| {
            let g = ctx.chart.group();
            let v = elements(&ctx.sampler(), r, 3);
            let (x, y, z) = (&v[0], &v[1], &v[2]);
            let j = g.bracket(x, &g.bracket(y, z)?)?.add(&g.bracket(y, &g.bracket(z, x)?)?)?.add(&g.bracket(z, &g.bracket(x, y)?)?)?;
            expect(j.is_zero(), || "Jacobi sum is nonzero".into())
        }),
        Identity::random("bracket-is-commutator", "M([X,Y]) = M(X)M(Y) - M(Y)M(X), [X,X] = 0", |ctx, r| {
            let g = ctx.chart.group();
            let v = elements(&ctx.sampler(), r, 2);
            let br = g.bracket(&v[0], &v[1])?;
            expect_eq(ctx.chart, "[X,Y]", &g.to_matrix(br.comps()), &g.to_matrix(v[0].comps()).commutator(&g.to_matrix(v[1].comps())))?;
            expect(g.bracket(&v[0], &v[0])?.is_zero(), || "[X,X] is nonzero".into())
        }),
        Identity::random("adjoint-is-conjugation", "M(Ad_p X) = h(p) M(X) h(p)^-1", |ctx, r| {
            let g = ctx.chart.group();
            let s = ctx.sampler();
            let p = s.base_group_params(r);
            let x = s.base_param(r);
            let h = g.h(&p)?;
            let conj = &(&h * &g.to_matrix(x.comps())) * &h.inverse()?;
            expect_eq(ctx.chart, "Ad_p X", &g.to_matrix(g.adjoint(&p, &x)?.comps()), &conj)
        }),
        Identity::random("adjoint-is-automorphism", "Ad_p [X,Y] = [Ad_p X, Ad_p Y], Ad_p Ad_{p^-1} X = X", |ctx, r| {
            let g = ctx.chart.group();
            let s = ctx.sampler();
            let p = s.base_group_params(r);
            let v = elements(&s, r, 2);
            let lhs = g.adjoint(&p, &g.bracket(&v[0], &v[1])?)?;
            let rhs = g.bracket(&g.adjoint(&p, &v[0])?, &g.adjoint(&p, &v[1])?)?;
            expect_eq(ctx.chart, "Ad_p [X,Y]", &lhs, &rhs)?;
            let back = g.adjoint(&p, &g.adjoint(&g.inv(&p)?, &v[0])?)?;
            expect_eq(ctx.chart, "Ad_p Ad_{p^-1} X", &back, &v[0])
        }),
        Identity::random("group-law", "(pq)r = p(qr), p p^-1 = e, h(pq) = h(p)h(q)", |ctx, r| {
            let g = ctx.chart.group();
            let s = ctx.sampler();
            let (p, q, t) = loop {
                let (p, q, t) = (s.base_group_params(r), s.base_group_params(r), s.base_group_params(r));
                if in_chart(g, &[&p, &q]) && in_chart(g, &[&q, &t]) && in_chart(g, &[&p, &q, &t]) {
                    break (p, q, t);
                }
            };
            let left = g.mul(&g.mul(&p, &q)?, &t)?;
            let right = g.mul(&p, &g.mul(&q, &t)?)?;
            expect_eq(ctx.chart, "associativity", &left, &right)?;
            expect_eq(ctx.chart, "p p^-1", &g.mul(&p, &g.inv(&p)?)?, &g.identity_params())?;
            expect_eq(ctx.chart, "h(pq)", &g.h(&g.mul(&p, &q)?)?, &(&g.h(&p)? * &g.h(&q)?))
        }),
        Identity::random(
            "representation-homomorphism",
            "rho(pq) = rho(p)rho(q), rho_*[X,Y] = [rho_*X, rho_*Y] for the defining and adjoint representations",
            |ctx, r| {
                let g = ctx.chart.group();
                let s = ctx.sampler();
                let (p, q) = loop {
                    let (p, q) = (s.base_group_params(r), s.base_group_params(r));
                    if in_chart(g, &[&p, &q]) {
                        break (p, q);
                    }
                };
                let v = elements(&s, r, 2);
                for rep in [Representation::defining(g), Representation::adjoint(g)] {
                    let prod = &rep.rho(&p)? * &rep.rho(&q)?;
                    expect_eq(ctx.chart, &format!("{} rho(pq)", rep.name()), &rep.rho(&g.mul(&p, &q)?)?, &prod)?;
                    let br = rep.rho_star(g.bracket(&v[0], &v[1])?.comps());
                    let comm = rep.rho_star(v[0].comps()).commutator(&rep.rho_star(v[1].comps()));
                    expect_eq(ctx.chart, &format!("{} rho_*[X,Y]", rep.name()), &br, &comm)?;
                }
                Ok(())
            },
        ),
    ]
}
