use vertix::forms::{Chart, DifferentialForm};
use vertix::group::Representation;
use vertix::vertical::*;
use vertix::RationalFunction as RF;

use super::{expect, Ctx, Identity, Outcome, Rng};
use crate::scenario::Scenario;

/// Connection and tensorial form to transform: the declared witnesses
/// lifted to the bundle, or random ones.
fn subjects(ctx: &Ctx, r: &mut Rng) -> vertix::Result<(DifferentialForm, Representation, DifferentialForm)> {
    let c = ctx.chart;
    let s = ctx.sampler();
    let w = &ctx.scenario.witnesses;
    let omega = match &w.connection {
        Some(a) => Connection::from_potential(c, a.form())?,
        None => s.connection(r)?,
    };
    let (rep, alpha) = match &w.tensorial {
        Some(t) => (t.rep().clone(), TensorialForm::from_seed(c, t.rep(), t.form())?),
        None => {
            let rep = Representation::defining(c.group());
            let a = s.tensorial(r, &rep, 1)?;
            (rep, a)
        }
    };
    Ok((omega.into_form(), rep, alpha.form().clone()))
}

fn memberships(
    c: &Chart,
    gamma: &VerticalMap,
    omega: &DifferentialForm,
    rep: &Representation,
    alpha: &DifferentialForm,
) -> vertix::Result<(Membership, Membership)> {
    let w = connection_membership(c, &transform_connection(c, omega, gamma)?)?;
    let a = tensorial_membership(c, rep, &transform_tensorial(c, rep, alpha, gamma)?)?;
    Ok((w, a))
}

fn breaks(ctx: &Ctx, r: &mut Rng, gamma: &VerticalMap) -> Outcome {
    let c = ctx.chart;
    expect(!gamma.satisfies(c, VerticalKind::Equivariant)?, || "map is equivariant".into())?;
    let (omega, rep, alpha) = subjects(ctx, r)?;
    let (w, a) = memberships(c, gamma, &omega, &rep, &alpha)?;
    expect(!w.equivariance_ok(), || "omega^gamma is still equivariant".into())?;
    expect(!a.equivariance_ok(), || "alpha^gamma is still equivariant".into())
}

fn preserves(ctx: &Ctx, r: &mut Rng, gamma: &VerticalMap) -> Outcome {
    let c = ctx.chart;
    let (omega, rep, alpha) = subjects(ctx, r)?;
    let (w, a) = memberships(c, gamma, &omega, &rep, &alpha)?;
    expect(w.holds(), || format!("omega^gamma equivariance residual {}", c.fmt_form(&w.equivariance)))?;
    expect(a.holds(), || format!("alpha^gamma equivariance residual {}", c.fmt_form(&a.equivariance)))
}

/// `e + θ_d · p(x)` in the first parameter slot.
fn fiber_mixing(c: &Chart, p: &RF) -> vertix::Result<VerticalMap> {
    let mut params = c.group().identity_params();
    params[0] = &params[0] + &(&c.theta(c.n_group() - 1) * p);
    VerticalMap::general(c, params)
}

fn declared_cases(scn: &Scenario) -> bool {
    scn.witnesses.connection.is_some() && scn.witnesses.tensorial.is_some()
}

fn identity(fixed: bool, id: String, law: String, check: impl Fn(&Ctx, &mut Rng) -> Outcome + Send + Sync + 'static) -> Identity {
    if fixed {
        Identity::once(id, law, check)
    } else {
        Identity::random(id, law, check)
    }
}

pub fn catalog(scn: &Scenario) -> Vec<Identity> {
    let fixed = declared_cases(scn);
    let mut out = Vec::new();
    let mut breaking = scn.witnesses.breaking.clone();
    if breaking.is_empty() {
        let x1 = scn.chart.x(0);
        if let Ok(m) = fiber_mixing(&scn.chart, &x1) {
            breaking.push(("fiber-mixing".into(), m));
        }
    }
    for (name, gamma) in breaking {
        out.push(identity(
            fixed,
            format!("breaks-{name}"),
            format!("omega^gamma is not a connection and alpha^gamma is not tensorial for gamma = {name}"),
            move |ctx, r| breaks(ctx, r, &gamma),
        ));
    }
    for (name, gamma) in scn.witnesses.preserving.clone() {
        out.push(identity(
            fixed,
            format!("preserves-{name}"),
            format!("omega^gamma is a connection and alpha^gamma is tensorial for gamma = {name}"),
            move |ctx, r| preserves(ctx, r, &gamma),
        ));
    }
    out.push(Identity::random(
        "random-equivariant-preserves",
        "omega^gamma is a connection and alpha^gamma is tensorial for random equivariant gamma",
        |ctx, r| {
            let gamma = ctx.sampler().equivariant(r)?;
            preserves(ctx, r, &gamma)
        },
    ));
    out.push(Identity::random(
        "random-fiber-mixing-breaks",
        "omega^gamma and alpha^gamma lose equivariance for gamma = e + theta p(x) with p nonzero",
        |ctx, r| {
            let s = ctx.sampler();
            let p = vertix::sample::random_nonzero_poly(r, &ctx.chart.base_vars(), s.cfg);
            let gamma = fiber_mixing(ctx.chart, &p)?;
            breaks(ctx, r, &gamma)
        },
    ));
    out
}
