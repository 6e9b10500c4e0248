use rand::Rng as _;
use vertix::forms::Chart;
use vertix::group::{gl1, Representation};
use vertix::local::{brst_panel, BrstModel, Expr, Generator, GhostElement};
use vertix::RationalFunction as RF;

use super::{clip, expect, expect_eq, Ctx, Failure, Identity, Outcome, Rng, Sampler, Show};
use crate::scenario::Scenario;

/// Random potential, matter field and ghost `c = Σ τ_a K_ab c^b` with
/// `K = 1 + (random base functions)`.
fn model(s: &Sampler, r: &mut Rng) -> vertix::Result<BrstModel> {
    let c = s.chart;
    let rep = Representation::defining(c.group());
    let a = s.potential(r)?;
    let phi = s.matter(r, &rep)?;
    let d = c.n_group();
    let k: Vec<Vec<RF>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { &s.base_poly(r) + &RF::one() } else { s.base_poly(r) }).collect()).collect();
    BrstModel::new(c, &a, &phi, &k)
}

fn expect_zero(c: &Chart, what: &str, g: &GhostElement) -> Outcome {
    if g.is_zero() {
        Ok(())
    } else {
        Err(Failure::Mismatch(clip(format!("{what}: {}", g.show(c)))))
    }
}

fn nilpotent_and_anticommuting(ctx: &Ctx, r: &mut Rng, exprs: &[(String, Expr)]) -> Outcome {
    let c = ctx.chart;
    let m = model(&ctx.sampler(), r)?;
    for (name, e) in exprs {
        expect_zero(c, &format!("s^2 {name}"), &m.nilpotency_residual(c, e)?)?;
        expect_zero(c, &format!("sd + ds on {name}"), &m.anticommutation_residual(c, e)?)?;
    }
    Ok(())
}

fn panel() -> Vec<(String, Expr)> {
    brst_panel().into_iter().map(|e| (e.to_string(), e)).collect()
}

pub fn catalog(scn: &Scenario) -> Vec<Identity> {
    let mut out: Vec<Identity> = scn
        .generators
        .iter()
        .map(|(name, e)| {
            let exprs = vec![(name.clone(), e.clone())];
            Identity::random(format!("nilpotent-{name}"), format!("s(s {name}) = 0 and s d {name} = -d s {name}"), move |ctx, r| {
                nilpotent_and_anticommuting(ctx, r, &exprs)
            })
        })
        .collect();
    out.extend([
        Identity::random(
            "nilpotent-composites",
            "s^2 = 0 and sd = -ds on generators, F and their brackets and actions of ghost degree <= 2",
            |ctx, r| nilpotent_and_anticommuting(ctx, r, &panel()),
        ),
        Identity::random("odd-derivation", "s[x,y] = [s x, y] + (-1)^|x| [x, s y], likewise for the representation action", |ctx, r| {
            let c = ctx.chart;
            let m = model(&ctx.sampler(), r)?;
            let panel = brst_panel();
            let (x, y) = loop {
                let (x, y) = (&panel[r.gen_range(0..panel.len())], &panel[r.gen_range(0..panel.len())]);
                if x.is_lie() && x.bidegree().1 + y.bidegree().1 <= 2 {
                    break (x.clone(), y.clone());
                }
            };
            let prod = if y.is_lie() { x.clone().bracket(y.clone()) } else { x.clone().act(y.clone()) }?;
            let rep = Representation::defining(c.group());
            let combine = |a: &GhostElement, b: &GhostElement| if y.is_lie() { a.bracket(c, b) } else { a.act(c, &rep, b) };
            let (sx, sy) = (m.brst(c, &x)?, m.brst(c, &y)?);
            let (ex, ey) = (m.eval(c, &x)?, m.eval(c, &y)?);
            let first = combine(&sx, &ey)?;
            let second = combine(&ex, &sy)?;
            let expected = if x.total_degree() % 2 == 1 { first.sub(&second) } else { first.add(&second) }?;
            expect_eq(c, &format!("s({prod})"), &m.brst(c, &prod)?, &expected)
        }),
        Identity::random("curvature-variation", "s F = [F, c]", |ctx, r| {
            let c = ctx.chart;
            let m = model(&ctx.sampler(), r)?;
            let f = Expr::curvature();
            let rhs = f.clone().bracket(Expr::gen(Generator::Ghost))?;
            expect_eq(c, "s F", &m.brst(c, &f)?, &m.eval(c, &rhs)?)
        }),
        Identity::random("bidegree", "s raises ghost degree by one and keeps form degree", |ctx, r| {
            let c = ctx.chart;
            let m = model(&ctx.sampler(), r)?;
            for e in brst_panel() {
                let (p, q) = e.bidegree();
                let got = m.brst(c, &e)?.bidegree();
                expect(got == (p, q + 1), || format!("s({e}) has bidegree {got:?}"))?;
            }
            Ok(())
        }),
        Identity::random("abelian-ghost-closed", "s c = 0 for the abelian group GL(1)", |ctx, r| {
            let names: Vec<String> = (0..ctx.chart.n_base()).map(|i| ctx.chart.coord_name(i)).collect();
            let c = Chart::new(gl1(), &names, &["t".to_string()], &[])?;
            let m = model(&Sampler::new(&c, ctx.random.degree), r)?;
            expect_zero(&c, "s c", &m.brst(&c, &Expr::gen(Generator::Ghost))?)
        }),
    ]);
    out
}
