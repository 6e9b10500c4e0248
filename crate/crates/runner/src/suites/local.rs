use vertix::fn_calculus::extended_bracket;
use vertix::forms::{Chart, DifferentialForm};
use vertix::group::Representation;
use vertix::local::*;
use vertix::sample::chart_vars;
use vertix::vertical::VerticalMap;
use vertix::{RationalFunction as RF, Subst};

use super::{expect, expect_eq, expect_zero_form, Identity, Rng, Sampler};
use crate::scenario::Scenario;

/// Potential, matter field, its minimal coupling, and the field strength.
fn field_panel(s: &Sampler, r: &mut Rng) -> vertix::Result<Vec<LocalField>> {
    let c = s.chart;
    let rep = Representation::defining(c.group());
    let a = s.potential(r)?;
    let phi = s.matter(r, &rep)?;
    let dphi = minimal_coupling(c, &a, &phi)?;
    let f = field_strength(c, &a)?;
    Ok(vec![a, phi, dphi, f])
}

fn product_map(c: &Chart, p: &VerticalMap, q: &VerticalMap) -> vertix::Result<VerticalMap> {
    VerticalMap::base_only(c, c.group().mul(p.params(), q.params())?)
}

/// The scenario chart with one extra curve parameter.
fn curve_chart(c: &Chart) -> vertix::Result<(Chart, RF)> {
    let names: Vec<String> = (0..c.dim()).map(|i| c.coord_name(i)).collect();
    let mut s = "s".to_string();
    while names.contains(&s) {
        s.push('_');
    }
    let ext = Chart::new(c.group().clone(), &names[..c.n_base()], &names[c.n_base()..], &[s.clone()])?;
    let var = ext.parse(&s)?;
    Ok((ext, var))
}

/// Default pair of gluings for the divergence witness.
fn default_divergence(c: &Chart) -> vertix::Result<(VerticalMap, VerticalMap)> {
    let e = c.group().identity_params();
    let (mut p, mut q) = (e.clone(), e);
    p[0] = &p[0] + &c.x(0);
    let slot = 1.min(q.len() - 1);
    q[slot] = &q[slot] + &c.x(c.n_base() - 1);
    Ok((VerticalMap::base_only(c, p)?, VerticalMap::base_only(c, q)?))
}

pub fn catalog(scn: &Scenario) -> Vec<Identity> {
    let mut out = vec![
        Identity::random("gluing-composition", "(b^g)^g' = b^{g g'} for A, phi, D^A phi and F", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let (g1, g2) = (s.base_only(r)?, s.base_only(r)?);
            let g12 = product_map(c, &g1, &g2)?;
            for b in field_panel(&s, r)? {
                expect_eq(c, &b.kind().to_string(), &glue(c, &glue(c, &b, &g1)?, &g2)?, &glue(c, &b, &g12)?)?;
            }
            Ok(())
        }),
        Identity::random(
            "minimal-coupling-covariance",
            "D^{A^g} phi^g = rho(g^-1) D^A phi, by gluing and by the active local transformation",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let rep = Representation::defining(c.group());
                let a = s.potential(r)?;
                let phi = s.matter(r, &rep)?;
                let d_phi = minimal_coupling(c, &a, &phi)?;
                let g = s.base_only(r)?;
                let expected = glue(c, &d_phi, &g)?;
                let inv = c.group().inv(g.params())?;
                expect_eq(c, "rho(g^-1) D^A phi", expected.form(), &d_phi.form().apply_matrix(&rep.rho(&inv)?, d_phi.form().space()))?;
                let glued = minimal_coupling(c, &glue(c, &a, &g)?, &glue(c, &phi, &g)?)?;
                expect_eq(c, "glued", &glued, &expected)?;
                let moved = minimal_coupling(c, &local_transform(c, &a, &g)?, &local_transform(c, &phi, &g)?)?;
                expect_eq(c, "transformed", &moved, &expected)
            },
        ),
        Identity::random("active-passive-once", "b^gamma (active) = b^g (gluing) for a single base-only gamma = g", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let g = s.base_only(r)?;
            for b in field_panel(&s, r)? {
                expect_eq(c, &b.kind().to_string(), &local_transform(c, &b, &g)?, &glue(c, &b, &g)?)?;
            }
            Ok(())
        }),
        Identity::random("gauge-rule-iteration", "(b^eta)^gamma = b^{eta gamma} when eta^gamma = gamma^-1 eta gamma", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let (eta, gamma) = (s.base_only(r)?, s.base_only(r)?);
            let maps = [eta.clone(), gamma.clone()];
            let eg = product_map(c, &eta, &gamma)?;
            let g = c.group().clone();
            let conj = TransformRule::explicit(move |e, y| g.mul(&g.mul(&g.inv(y)?, e)?, y));
            for b in field_panel(&s, r)? {
                let gauge = iterate_transform(c, &b, &maps, Some(&TransformRule::GaugeGroup))?;
                expect_eq(c, &b.kind().to_string(), &gauge, &glue(c, &b, &eg)?)?;
                expect_eq(c, "explicit conjugation", &iterate_transform(c, &b, &maps, Some(&conj))?, &gauge)?;
            }
            Ok(())
        }),
        Identity::random("declared-rule-iteration", "(b^eta)^gamma = b^{gamma eta^gamma} under the scenario's transform rule", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let rule = &ctx.scenario.transform_rule;
            let (eta, gamma) = (s.base_only(r)?, s.base_only(r)?);
            let acc = c.group().mul(gamma.params(), &rule.apply(c, eta.params(), gamma.params())?)?;
            let acc = VerticalMap::base_only(c, acc)?;
            for b in field_panel(&s, r)? {
                let it = iterate_transform(c, &b, &[eta.clone(), gamma.clone()], Some(rule))?;
                expect_eq(c, &b.kind().to_string(), &it, &glue(c, &b, &acc)?)?;
            }
            Ok(())
        }),
    ];

    if !scn.chart.group().is_abelian() {
        out.push(Identity::once(
            "trivial-rule-divergence",
            "with eta^gamma = eta, (b^eta)^gamma differs from the gluing b^{eta gamma}",
            |ctx, _| {
                let c = ctx.chart;
                let w = &ctx.scenario.witnesses;
                let (eta, gamma) = match &w.divergence {
                    Some(pair) => pair.clone(),
                    None => default_divergence(c)?,
                };
                let a = match &w.connection {
                    Some(a) => a.clone(),
                    None => LocalField::potential(c, c.zero_form(1, c.lie()))?,
                };
                let trivial = iterate_transform(c, &a, &[eta.clone(), gamma.clone()], Some(&TransformRule::Trivial))?;
                let glued = glue(c, &a, &product_map(c, &eta, &gamma)?)?;
                expect(trivial != glued, || format!("both give {}", c.fmt_form(glued.form())))?;
                expect_eq(c, "trivial rule", &trivial, &glue(c, &a, &product_map(c, &gamma, &eta)?)?)
            },
        ));
    }

    if let Ok((ext, s_var)) = curve_chart(&scn.chart) {
        out.push(Identity::random(
            "variation-linearizes-gluing",
            "d/ds b^{e + s lambda} at s = 0 equals delta_lambda b: dl + [A,l], -rho_*(l) phi, [F,l]",
            move |ctx, r| {
                let c = &ext;
                let g = c.group();
                let sv = *s_var.vars().iter().next().expect("curve variable");
                let s = Sampler::new(c, ctx.random.degree);
                let lambda = s.base_param(r);
                let curve: Vec<RF> = g.identity_params().iter().zip(lambda.comps()).map(|(e, l)| e + &(&s_var * l)).collect();
                let gs = VerticalMap::base_only(c, curve)?;
                let at_zero = Subst::from_pairs([(sv, RF::zero())]);
                for b in field_panel(&s, r)? {
                    let moved = glue(c, &b, &gs)?;
                    let tangent = moved.form().try_map_coeffs(|f| f.derive(sv).substitute(&at_zero))?;
                    expect_eq(c, &b.kind().to_string(), &tangent, delta_xi(c, &b, &lambda)?.form())?;
                }
                Ok(())
            },
        ));
    }

    for (name, rule) in scn.action_rules.clone() {
        out.push(Identity::random(
            format!("variation-commutator-{name}"),
            format!("[delta_xi, delta_zeta] b = delta_{{xi,zeta}} b under the {name} rule, for A, phi, D^A phi and F"),
            move |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let (xi, zeta) = (s.base_param(r), s.base_param(r));
                for b in field_panel(&s, r)? {
                    let check = commutator_check(c, &xi, &zeta, &b, Some(&rule))?;
                    expect_zero_form(c, &b.kind().to_string(), &check.residual()?)?;
                }
                Ok(())
            },
        ));
    }

    out.extend([
        Identity::random("passive-commutator", "[delta_l, delta_l'] b = delta_{[l,l']} b for field-independent parameters", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let (xi, zeta) = (s.base_param(r), s.base_param(r));
            let br = c.group().bracket(&xi, &zeta)?;
            for b in field_panel(&s, r)? {
                let check = commutator_check(c, &xi, &zeta, &b, Some(&ActionRule::Zero))?;
                expect_eq(c, &b.kind().to_string(), &check.commutator, delta_xi(c, &b, &br)?.form())?;
            }
            Ok(())
        }),
        Identity::random(
            "gauge-algebra-sign",
            "with delta_xi zeta = [zeta, xi], {xi,zeta} = -[xi,zeta] and [delta_xi, delta_zeta] A = D^A {xi,zeta}",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let (xi, zeta) = (s.base_param(r), s.base_param(r));
                let rule = ActionRule::GaugeAlgebra;
                let br = local_extended_bracket(c, &xi, &zeta, Some(&rule))?;
                expect_eq(c, "{xi,zeta}", &br, &c.group().bracket(&xi, &zeta)?.scale(&RF::from_int(-1)))?;
                let a = s.potential(r)?;
                let check = commutator_check(c, &xi, &zeta, &a, Some(&rule))?;
                let lam = DifferentialForm::valued_function(c.dim(), c.lie(), br.comps().to_vec());
                let d_a = lam.ext_d().add(&c.bracket_wedge(a.form(), &lam)?)?;
                expect_eq(c, "D^A {xi,zeta}", &check.commutator, &d_a)
            },
        ),
        Identity::random(
            "minimal-coupling-variation",
            "delta_xi(D^A phi) = d delta phi + rho_*(delta A) phi + rho_*(A) delta phi = -rho_*(xi) D^A phi",
            |ctx, r| {
                let c = ctx.chart;
                let s = ctx.sampler();
                let rep = Representation::defining(c.group());
                let a = s.potential(r)?;
                let phi = s.matter(r, &rep)?;
                let xi = s.base_param(r);
                let d_phi = minimal_coupling(c, &a, &phi)?;
                let expanded = delta_minimal_coupling(c, &a, &phi, &xi)?;
                expect_eq(c, "derivation rule", &expanded, &delta_xi(c, &d_phi, &xi)?)?;
                let direct = d_phi.form().apply_matrix(&rep.rho_star(xi.comps()).scale(&RF::from_int(-1)), d_phi.form().space());
                expect_eq(c, "-rho_*(xi) D^A phi", expanded.form(), &direct)
            },
        ),
        Identity::random("bundle-pullback-bracket", "[sigma*X, sigma*Y] + sigma*(X^v Y) - sigma*(Y^v X) = sigma*{X,Y}", |ctx, r| {
            let c = ctx.chart;
            let s = ctx.sampler();
            let vars = chart_vars(c);
            let (x, y) = (vertix::sample::random_lie_map(r, c, &vars, s.cfg), vertix::sample::random_lie_map(r, c, &vars, s.cfg));
            let sigma = LocalSection::new(c, s.base_group_params(r))?;
            let rule = ActionRule::BundlePullback(sigma.clone());
            let local = local_extended_bracket(c, &x, &y, Some(&rule))?;
            expect_eq(c, "sigma*{X,Y}", &local, &sigma.pull_lie(c, &extended_bracket(c, &x, &y)?)?)
        }),
    ]);
    out
}
