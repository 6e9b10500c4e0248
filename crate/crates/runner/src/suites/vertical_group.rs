use rand::Rng as _;
use vertix::forms::Chart;
use vertix::vertical::{compose_vertical, invert_vertical, iterate_compose, verify_inverse, VerticalKind, VerticalMap};

use super::{expect, expect_eq, Ctx, Identity, Outcome, Rng};
use crate::scenario::Scenario;

/// Whether the group inverse is polynomial in the parameters. Long chains
/// of fiber-dependent maps are only affordable in that case.
fn polynomial_inverse(c: &Chart) -> bool {
    c.group().inv(&c.thetas()).map(|p| p.iter().all(|f| f.is_polynomial())).unwrap_or(false)
}

fn random_chain(ctx: &Ctx, r: &mut Rng, k: usize) -> vertix::Result<Vec<VerticalMap>> {
    let polynomial = polynomial_inverse(ctx.chart);
    let s = if polynomial { ctx.sampler() } else { ctx.small_sampler() };
    let fiber_dependent = k < 4 || polynomial;
    (0..k)
        .map(|_| match (fiber_dependent, r.gen_range(0..3)) {
            (true, 0) => s.general(r),
            (_, 1) => s.equivariant(r),
            _ => s.base_only(r),
        })
        .collect()
}

/// Composite of the chain compared with the composite of its chart maps.
fn composition(ctx: &Ctx, r: &mut Rng, k: usize) -> Outcome {
    let c = ctx.chart;
    let maps = random_chain(ctx, r, k)?;
    let composed = iterate_compose(c, &maps)?;
    let mut chart_map = maps[0].induced_diffeo(c)?;
    for m in &maps[1..] {
        chart_map = m.induced_diffeo(c)?.after(&chart_map)?;
    }
    expect_eq(c, &format!("depth {k}"), &composed.induced_diffeo(c)?, &chart_map)
}

pub fn catalog(_: &Scenario) -> Vec<Identity> {
    let mut out: Vec<Identity> = (2..=4)
        .map(|k| {
            Identity::random(
                format!("composition-depth-{k}"),
                format!("psi of gamma_1 * ... * gamma_{k} equals the composite of the chart maps psi_gamma_i"),
                move |ctx, r| composition(ctx, r, k),
            )
        })
        .collect();
    out.extend([
        Identity::random("composition-identity", "gamma * e = e * gamma = gamma", |ctx, r| {
            let c = ctx.chart;
            let g = ctx.sampler().general(r)?;
            let id = VerticalMap::identity(c);
            expect_eq(c, "gamma * e", compose_vertical(c, &g, &id)?.params(), g.params())?;
            expect_eq(c, "e * gamma", compose_vertical(c, &id, &g)?.params(), g.params())
        }),
        Identity::random("inverse-base-only", "gamma * gamma^-1 = e for base-only gamma", |ctx, r| {
            let c = ctx.chart;
            let g = ctx.sampler().base_only(r)?;
            let inv = invert_vertical(c, &g)?;
            expect(verify_inverse(c, &g, &inv)?, || "candidate inverse rejected".into())?;
            expect_eq(c, "gamma * gamma^-1", compose_vertical(c, &g, &inv)?.params(), &c.group().identity_params())
        }),
        Identity::random("inverse-equivariant", "gamma * gamma^-1 = e for equivariant gamma", |ctx, r| {
            let c = ctx.chart;
            let g = ctx.sampler().equivariant(r)?;
            let inv = invert_vertical(c, &g)?;
            expect(verify_inverse(c, &g, &inv)?, || "candidate inverse rejected".into())?;
            expect_eq(c, "gamma * gamma^-1", compose_vertical(c, &g, &inv)?.params(), &c.group().identity_params())?;
            expect(inv.satisfies(c, VerticalKind::Equivariant)?, || "inverse is not equivariant".into())
        }),
        Identity::random(
            "equivariant-pointwise",
            "for equivariant maps gamma_1 * gamma_2 = gamma_2 gamma_1 pointwise, and likewise for three",
            |ctx, r| {
                let c = ctx.chart;
                let g = c.group();
                let s = ctx.sampler();
                let (e1, e2, e3) = (s.equivariant(r)?, s.equivariant(r)?, s.equivariant(r)?);
                let two = compose_vertical(c, &e1, &e2)?;
                expect_eq(c, "two", two.params(), &g.mul(e2.params(), e1.params())?[..])?;
                expect(two.kind() == VerticalKind::Equivariant, || "composite lost its kind".into())?;
                let three = iterate_compose(c, &[e1.clone(), e2.clone(), e3.clone()])?;
                let expected = g.mul(&g.mul(e3.params(), e2.params())?, e1.params())?;
                expect_eq(c, "three", three.params(), &expected[..])
            },
        ),
    ]);
    out
}
