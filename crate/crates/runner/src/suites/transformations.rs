use rand::Rng as _;
use vertix::fn_calculus::extended_bracket;
use vertix::forms::DifferentialForm;
use vertix::group::Representation;
use vertix::vertical::*;

use super::{expect, expect_eq, expect_zero_form, Identity};
use crate::scenario::Scenario;

pub fn catalog(_: &Scenario) -> Vec<Identity> {
    vec![
        Identity::random("pushforward-jacobian", "psi_gamma* X equals the Jacobian of psi_gamma applied to X", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let gamma = s.general(r)?;
            let x = s.field(r);
            expect_eq(c, "psi_* X", &pushforward(c, &gamma, &x)?, &pushforward_jacobian(c, &gamma, &x)?)
        }),
        Identity::random("pushed-generator", "psi_gamma* X^v = (Ad_{gamma^-1} X + gamma^-1 X^v(gamma))^v at the image point", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let gamma = s.general(r)?;
            let xi = s.lie_map(r);
            let pushed = pushforward_jacobian(c, &gamma, &c.fundamental_field(&xi)?)?;
            expect_eq(c, "psi_* X^v", &pushed, &vertical_at_image(c, &gamma, &pushed_generator(c, &gamma, &xi)?)?)
        }),
        Identity::random(
            "pushforward-gauge-and-dressing",
            "psi_* X^v = X^v at the image for equivariant gamma, 0 for dressing u",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let xi = s.constant_lie(r);
                let xv = c.fundamental_field(&xi)?;
                let e = s.equivariant(r)?;
                expect_eq(c, "equivariant", &pushforward(c, &e, &xv)?, &vertical_at_image(c, &e, xi.comps())?)?;
                let u = s.dressing(r)?;
                let pushed = pushforward(c, &u, &xv)?;
                expect(pushed.is_zero(), || format!("dressing pushes X^v to {}", c.fmt_field(&pushed)))
            },
        ),
        Identity::random("connection-pullback", "psi_gamma^* omega = Ad_{gamma^-1} omega + gamma^-1 d gamma", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let w = s.connection(r)?;
            let gamma = s.general(r)?;
            expect_eq(c, "omega^gamma", &transform_connection(c, w.form(), &gamma)?, &pullback_along(c, &gamma, w.form())?)
        }),
        Identity::random(
            "connection-double-pullback",
            "psi_gamma^* psi_eta^* omega = (omega^gamma)^{eta o R_gamma} = omega^{gamma * eta}",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let w = s.connection(r)?;
                let (gamma, eta) = (s.general(r)?, s.general(r)?);
                let wg = transform_connection(c, w.form(), &gamma)?;
                let eta_rg = VerticalMap::general(c, eta.precompose(&gamma.induced_diffeo(c)?)?)?;
                let twice = pullback_along(c, &gamma, &pullback_along(c, &eta, w.form())?)?;
                expect_eq(c, "via eta o R_gamma", &twice, &transform_connection(c, &wg, &eta_rg)?)?;
                expect_eq(c, "via gamma * eta", &twice, &transform_connection(c, w.form(), &compose_vertical(c, &gamma, &eta)?)?)
            },
        ),
        Identity::random("tensorial-pullback", "psi_gamma^* alpha = rho(gamma^-1) alpha, still horizontal", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let rep = Representation::defining(c.group());
            let deg = r.gen_range(0..3);
            let a = s.tensorial(r, &rep, deg)?;
            let gamma = s.general(r)?;
            let ag = transform_tensorial(c, &rep, a.form(), &gamma)?;
            expect_eq(c, "alpha^gamma", &ag, &pullback_along(c, &gamma, a.form())?)?;
            expect(tensorial_membership(c, &rep, &ag)?.vertical_ok(), || "alpha^gamma is not horizontal".into())
        }),
        Identity::random("tensorial-double-pullback", "psi_gamma^* psi_eta^* alpha = alpha^{gamma * eta}", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let rep = Representation::defining(c.group());
            let deg = r.gen_range(0..3);
            let a = s.tensorial(r, &rep, deg)?;
            let (gamma, eta) = (s.general(r)?, s.general(r)?);
            let twice = pullback_along(c, &gamma, &pullback_along(c, &eta, a.form())?)?;
            expect_eq(c, "alpha^{gamma*eta}", &twice, &transform_tensorial(c, &rep, a.form(), &compose_vertical(c, &gamma, &eta)?)?)
        }),
        Identity::random(
            "gauge-case",
            "for equivariant gamma, omega^gamma is a connection and alpha^gamma is tensorial; two steps equal one by the product",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let rep = Representation::defining(c.group());
                let w = s.connection(r)?;
                let a = s.tensorial(r, &rep, 1)?;
                let (e1, e2) = (s.equivariant(r)?, s.equivariant(r)?);
                let step = transform_connection(c, &transform_connection(c, w.form(), &e1)?, &e2)?;
                let product = VerticalMap::general(c, c.group().mul(e1.params(), e2.params())?)?;
                expect_eq(c, "two steps", &step, &transform_connection(c, w.form(), &product)?)?;
                expect(is_connection(c, &step)?, || "omega^gamma is not a connection".into())?;
                expect(is_tensorial(c, &rep, &transform_tensorial(c, &rep, a.form(), &e1)?)?, || "alpha^gamma is not tensorial".into())
            },
        ),
        Identity::random(
            "dressing-case",
            "for a dressing u, omega^u = u^-1 omega u + u^-1 du is basic and alpha^u = rho(u^-1) alpha is basic",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let rep = Representation::defining(c.group());
                let w = s.connection(r)?;
                let a = s.tensorial(r, &rep, 1)?;
                let u = s.dressing(r)?;
                let wu = transform_connection(c, w.form(), &u)?;
                expect_eq(c, "omega^u", &wu, &dress(c, w.form(), &u)?)?;
                expect(is_basic(c, &wu)?, || "omega^u is not basic".into())?;
                let au = transform_tensorial(c, &rep, a.form(), &u)?;
                let direct = c.rep_form(&rep, &u.pointwise_inverse(c)?, a.form())?;
                expect_eq(c, "alpha^u", &au, &direct)?;
                expect(is_basic(c, &au)?, || "alpha^u is not basic".into())
            },
        ),
        Identity::random("curvature-vertical-pairs", "Omega(X^v, Y^v) = 0", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let omega = s.connection(r)?.curvature(c)?;
            let (x, y) = (s.lie_map(r), s.lie_map(r));
            let (xv, yv) = (c.fundamental_field(&x)?, c.fundamental_field(&y)?);
            expect_zero_form(c, "Omega(X^v, Y^v)", &omega.interior(&yv).interior(&xv))
        }),
        Identity::random(
            "covariant-derivative-covariance",
            "psi_gamma^*(D alpha) = D^{omega^gamma} alpha^gamma = (D alpha)^gamma",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let rep = Representation::defining(c.group());
                let w = s.connection(r)?;
                let a = s.tensorial(r, &rep, 1)?;
                let da = covariant_derivative(c, &rep, w.form(), a.form())?;
                expect(is_tensorial(c, &rep, &da)?, || "D alpha is not tensorial".into())?;
                let gamma = s.general(r)?;
                let lhs = pullback_along(c, &gamma, &da)?;
                expect_eq(c, "(D alpha)^gamma", &lhs, &transform_tensorial(c, &rep, &da, &gamma)?)?;
                let wg = transform_connection(c, w.form(), &gamma)?;
                let ag = transform_tensorial(c, &rep, a.form(), &gamma)?;
                expect_eq(c, "D^{omega^gamma} alpha^gamma", &lhs, &covariant_derivative(c, &rep, &wg, &ag)?)
            },
        ),
        Identity::random(
            "infinitesimal-direct",
            "L_{X^v} omega = dX + [omega, X] and L_{X^v} alpha = -rho_*(X) alpha agree with the lifted Lie derivative",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let rep = Representation::defining(c.group());
                let w = s.connection(r)?;
                let a = s.tensorial(r, &rep, 1)?;
                let x = s.lie_map(r);
                expect_eq(c, "omega", &nl_vertical_connection(c, &x, w.form())?, &nl_vertical_direct(c, &x, w.form())?)?;
                expect_eq(c, "alpha", &nl_vertical_tensorial(c, &rep, &x, a.form())?, &nl_vertical_direct(c, &x, a.form())?)
            },
        ),
        Identity::random("connection-commutator", "[L_{X^v}, L_{Y^v}] omega = L_{{X,Y}^v} omega", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let w = s.connection(r)?;
            let (x, y) = (s.lie_map(r), s.lie_map(r));
            let comm = commutator(c, &x, &y, w.form())?;
            expect_eq(c, "commutator", &comm, &nl_vertical_connection(c, &extended_bracket(c, &x, &y)?, w.form())?)
        }),
        Identity::random("tensorial-commutator", "[L_{X^v}, L_{Y^v}] alpha = -rho_*({X,Y}) alpha", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let rep = Representation::defining(c.group());
            let a = s.tensorial(r, &rep, 1)?;
            let (x, y) = (s.lie_map(r), s.lie_map(r));
            let comm = commutator(c, &x, &y, a.form())?;
            expect_eq(c, "commutator", &comm, &nl_vertical_tensorial(c, &rep, &extended_bracket(c, &x, &y)?, a.form())?)
        }),
    ]
}

fn commutator(
    c: &vertix::forms::Chart,
    x: &vertix::group::LieAlgValuedMap,
    y: &vertix::group::LieAlgValuedMap,
    b: &DifferentialForm,
) -> vertix::Result<DifferentialForm> {
    let xyb = nl_vertical_direct(c, x, &nl_vertical_direct(c, y, b)?)?;
    let yxb = nl_vertical_direct(c, y, &nl_vertical_direct(c, x, b)?)?;
    xyb.sub(&yxb)
}
