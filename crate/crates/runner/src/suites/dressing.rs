use rand::Rng as _;
use vertix::forms::{Chart, DifferentialForm};
use vertix::group::Representation;
use vertix::vertical::*;

use super::{expect, expect_eq, Identity, Outcome};
use crate::scenario::Scenario;

/// Both basicity conditions and invariance under a general vertical map.
fn basic_and_invariant(c: &Chart, what: &str, b: &DifferentialForm, gamma: &VerticalMap) -> Outcome {
    let m = basic_membership(c, b)?;
    expect(m.vertical_ok(), || format!("{what} is not horizontal"))?;
    expect(m.equivariance_ok(), || format!("{what} is not invariant: residual {}", c.fmt_form(&m.equivariance)))?;
    expect_eq(c, &format!("psi_gamma^* {what}"), &pullback_along(c, gamma, b)?, b)
}

pub fn catalog(_: &Scenario) -> Vec<Identity> {
    vec![
        Identity::random(
            "dressed-connection",
            "omega^u = u^-1 omega u + u^-1 du is basic and psi_gamma^* omega^u = omega^u for general gamma",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let w = s.connection(r)?;
                let u = s.dressing(r)?;
                let wu = dress(c, w.form(), &u)?;
                expect_eq(c, "omega^u", &wu, &transform_connection(c, w.form(), &u)?)?;
                basic_and_invariant(c, "omega^u", &wu, &s.general(r)?)
            },
        ),
        Identity::random(
            "dressed-curvature",
            "Omega^u = u^-1 Omega u = d omega^u + 1/2 [omega^u, omega^u] is basic and invariant under general gamma",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let w = s.connection(r)?;
                let u = s.dressing(r)?;
                let ou = dress(c, &w.curvature(c)?, &u)?;
                expect_eq(c, "Omega^u", &ou, &curvature(c, &dress(c, w.form(), &u)?)?)?;
                expect_eq(c, "u^-1 Omega u", &ou, &c.adjoint_form(&u.pointwise_inverse(c)?, &w.curvature(c)?)?)?;
                basic_and_invariant(c, "Omega^u", &ou, &s.general(r)?)
            },
        ),
        Identity::random("dressed-tensorial", "alpha^u = rho(u^-1) alpha is basic and invariant under general gamma", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let rep = Representation::defining(c.group());
            let deg = r.gen_range(0..3);
            let a = s.tensorial(r, &rep, deg)?;
            let u = s.dressing(r)?;
            let au = dress(c, a.form(), &u)?;
            expect_eq(c, "alpha^u", &au, &c.rep_form(&rep, &u.pointwise_inverse(c)?, a.form())?)?;
            basic_and_invariant(c, "alpha^u", &au, &s.general(r)?)
        }),
    ]
}
