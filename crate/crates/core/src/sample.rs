//! Random instance generation: sparse polynomials with small rational
//! coefficients (numerators in `[-3, 3]`, denominators in `{1, 2}`).

use rand::Rng;

use crate::coeff::{q, Monomial, Var};
use crate::forms::{Chart, DifferentialForm, ValueSpace, VectorField};
use crate::group::LieAlgValuedMap;
use crate::{Polynomial, RationalFunction as RF};

#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { max_degree: 2, max_terms: 3 }
    }
}

pub fn small_rational<R: Rng>(rng: &mut R) -> crate::Q {
    let n = rng.gen_range(-3i64..=3);
    let d = rng.gen_range(1i64..=2);
    q(n, d)
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> crate::Q {
    loop {
        let c = small_rational(rng);
        if c != q(0, 1) {
            return c;
        }
    }
}

pub fn random_monomial<R: Rng>(rng: &mut R, vars: &[Var], max_degree: u32) -> Monomial {
    if vars.is_empty() {
        return Monomial::one();
    }
    let deg = rng.gen_range(0..=max_degree);
    let pairs = (0..deg).map(|_| (vars[rng.gen_range(0..vars.len())], 1)).collect();
    Monomial::from_pairs(pairs)
}

pub fn random_poly<R: Rng>(rng: &mut R, vars: &[Var], cfg: SampleConfig) -> RF {
    let terms = rng.gen_range(1..=cfg.max_terms.max(1));
    let p = Polynomial::from_terms((0..terms).map(|_| (random_monomial(rng, vars, cfg.max_degree), small_rational(rng))));
    RF::from_poly(p)
}

pub fn random_nonzero_poly<R: Rng>(rng: &mut R, vars: &[Var], cfg: SampleConfig) -> RF {
    loop {
        let p = random_poly(rng, vars, cfg);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Polynomial whose leading monomial carries a nonzero coefficient; used for
/// denominators and maps that must not degenerate.
pub fn random_unit_shift<R: Rng>(rng: &mut R, vars: &[Var], cfg: SampleConfig) -> RF {
    let p = random_poly(rng, vars, cfg);
    &p + &RF::constant(nonzero_rational(rng))
}

/// Chart functions in all coordinates.
pub fn chart_vars(chart: &Chart) -> Vec<Var> {
    let mut v = chart.base_vars();
    v.extend(chart.group_vars());
    v
}

/// Sparse form: each index subset is occupied with probability `density`.
pub fn random_form<R: Rng>(
    rng: &mut R,
    chart: &Chart,
    degree: usize,
    space: ValueSpace,
    vars: &[Var],
    cfg: SampleConfig,
) -> DifferentialForm {
    let dim = chart.dim();
    let mut out = DifferentialForm::zero(dim, degree, space);
    let masks: Vec<u32> = (0u32..(1 << dim)).filter(|m| m.count_ones() as usize == degree).collect();
    let picks = rng.gen_range(1..=masks.len().clamp(1, 3));
    for _ in 0..picks {
        let m = masks[rng.gen_range(0..masks.len())];
        let v = (0..space.len()).map(|_| if rng.gen_bool(0.6) { random_poly(rng, vars, cfg) } else { RF::zero() }).collect();
        out.add_term(m, v);
    }
    out
}

fn nonzero_form<R: Rng>(rng: &mut R, chart: &Chart, degree: usize, vars: &[Var], cfg: SampleConfig) -> DifferentialForm {
    loop {
        let f = random_form(rng, chart, degree, ValueSpace::Scalar, vars, cfg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// One random scalar form of each degree `0..=dim`.
pub fn form_panel<R: Rng>(rng: &mut R, chart: &Chart, cfg: SampleConfig) -> Vec<DifferentialForm> {
    let vars = chart_vars(chart);
    (0..=chart.dim()).map(|k| random_form(rng, chart, k, ValueSpace::Scalar, &vars, cfg)).collect()
}

pub fn random_field<R: Rng>(rng: &mut R, chart: &Chart, vars: &[Var], cfg: SampleConfig) -> VectorField {
    VectorField::new((0..chart.dim()).map(|_| if rng.gen_bool(0.7) { random_poly(rng, vars, cfg) } else { RF::zero() }).collect())
}

pub fn random_lie_map<R: Rng>(rng: &mut R, chart: &Chart, vars: &[Var], cfg: SampleConfig) -> LieAlgValuedMap {
    let g = chart.group();
    g.elem((0..g.dim()).map(|_| random_poly(rng, vars, cfg)).collect()).expect("matching dimension")
}

pub fn random_constant_lie<R: Rng>(rng: &mut R, chart: &Chart) -> LieAlgValuedMap {
    let g = chart.group();
    g.elem((0..g.dim()).map(|_| RF::constant(small_rational(rng))).collect()).expect("matching dimension")
}

/// Vector-valued form whose components are each occupied with probability
/// 0.6; one of them is always nonzero.
pub fn random_vvf<R: Rng>(
    rng: &mut R,
    chart: &Chart,
    degree: usize,
    vars: &[Var],
    cfg: SampleConfig,
) -> crate::fn_calculus::VectorValuedForm {
    let dim = chart.dim();
    let forced = rng.gen_range(0..dim);
    let comps = (0..dim)
        .map(|i| {
            if i == forced {
                nonzero_form(rng, chart, degree, vars, cfg)
            } else if rng.gen_bool(0.6) {
                random_form(rng, chart, degree, ValueSpace::Scalar, vars, cfg)
            } else {
                DifferentialForm::zero(dim, degree, ValueSpace::Scalar)
            }
        })
        .collect();
    crate::fn_calculus::VectorValuedForm::from_comps(degree, comps)
}

/// Identity parameters plus a random perturbation, retried until both the
/// element and its inverse lie in the chart.
pub fn random_group_params<R: Rng>(rng: &mut R, chart: &Chart, vars: &[Var], cfg: SampleConfig) -> Vec<RF> {
    let g = chart.group();
    loop {
        let p: Vec<RF> = g.identity_params().iter().map(|e| e + &random_poly(rng, vars, cfg)).collect();
        if g.h(&p).is_ok() && g.inv(&p).and_then(|i| g.h(&i)).is_ok() {
            return p;
        }
    }
}

/// Sparse valued form in the base differentials with base-only coefficients.
pub fn random_base_form<R: Rng>(rng: &mut R, chart: &Chart, degree: usize, space: ValueSpace, cfg: SampleConfig) -> DifferentialForm {
    let vars = chart.base_vars();
    let n = chart.n_base();
    let mut out = DifferentialForm::zero(chart.dim(), degree, space);
    let masks: Vec<u32> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == degree).collect();
    if masks.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(1..=masks.len().min(3)) {
        let m = masks[rng.gen_range(0..masks.len())];
        let v = (0..space.len()).map(|_| if rng.gen_bool(0.7) { random_poly(rng, &vars, cfg) } else { RF::zero() }).collect();
        out.add_term(m, v);
    }
    out
}
