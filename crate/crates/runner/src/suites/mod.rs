//! Identity suites and the runner that executes them.
//!
//! Every suite is a list of identities. An identity runs a fixed number of
//! cases, each with its own seed drawn from a per-suite stream, so results
//! do not depend on scheduling.

mod brst;
mod dressing;
mod extended_bracket;
mod fn_identities;
mod group_model;
mod local;
mod nonpreservation;
mod transformations;
mod vertical_group;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;
use vertix::fn_calculus::VectorValuedForm;
use vertix::forms::{mask_indices, Chart, DifferentialForm, RationalChartMap, ValueSpace, VectorField};
use vertix::group::{LieAlgValuedMap, Representation};
use vertix::local::{GhostElement, LocalField};
use vertix::matrix::Matrix;
use vertix::sample::{self, chart_vars, SampleConfig};
use vertix::vertical::{Connection, TensorialForm, VerticalMap};
use vertix::RationalFunction as RF;

use crate::report::{CheckRecord, SuiteReport};
use crate::scenario::{RandomConfig, Scenario};

pub const SUITE_NAMES: [&str; 9] = [
    "group-model",
    "fn-identities",
    "extended-bracket",
    "vertical-group",
    "transformations",
    "nonpreservation",
    "dressing",
    "local",
    "brst",
];

pub type Rng = ChaCha8Rng;

#[derive(Clone, Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Mismatch(String),
    #[error("error: {0}")]
    Error(#[from] vertix::Error),
    #[error("panic: {0}")]
    Panic(String),
}

pub type Outcome = Result<(), Failure>;

type Check = Box<dyn Fn(&Ctx, &mut Rng) -> Outcome + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cases {
    /// As many cases as the randomization config asks for.
    Random,
    /// A deterministic check run once.
    Once,
}

pub struct Identity {
    pub id: String,
    pub law: String,
    pub cases: Cases,
    check: Check,
}

impl Identity {
    pub fn random(
        id: impl Into<String>,
        law: impl Into<String>,
        check: impl Fn(&Ctx, &mut Rng) -> Outcome + Send + Sync + 'static,
    ) -> Self {
        Identity { id: id.into(), law: law.into(), cases: Cases::Random, check: Box::new(check) }
    }

    pub fn once(id: impl Into<String>, law: impl Into<String>, check: impl Fn(&Ctx, &mut Rng) -> Outcome + Send + Sync + 'static) -> Self {
        Identity { id: id.into(), law: law.into(), cases: Cases::Once, check: Box::new(check) }
    }
}

/// What a check sees: the scenario, its chart and the effective
/// randomization settings.
pub struct Ctx<'a> {
    pub scenario: &'a Scenario,
    pub chart: &'a Chart,
    pub random: RandomConfig,
}

impl<'a> Ctx<'a> {
    pub fn new(scenario: &'a Scenario, random: RandomConfig) -> Self {
        Ctx { scenario, chart: &scenario.chart, random }
    }

    pub fn sampler(&self) -> Sampler<'_> {
        Sampler::new(self.chart, self.random.degree)
    }

    /// Sampler capped at degree one, for chains whose exact expansions grow
    /// quickly with the input degree.
    pub fn small_sampler(&self) -> Sampler<'_> {
        Sampler::new(self.chart, self.random.degree.min(1))
    }
}

pub fn catalog(suite: &str, scenario: &Scenario) -> Vec<Identity> {
    match suite {
        "group-model" => group_model::catalog(scenario),
        "fn-identities" => fn_identities::catalog(scenario),
        "extended-bracket" => extended_bracket::catalog(scenario),
        "vertical-group" => vertical_group::catalog(scenario),
        "transformations" => transformations::catalog(scenario),
        "nonpreservation" => nonpreservation::catalog(scenario),
        "dressing" => dressing::catalog(scenario),
        "local" => local::catalog(scenario),
        "brst" => brst::catalog(scenario),
        other => panic!("unknown suite `{other}`"),
    }
}

pub fn run_suite(name: &str, ctx: &Ctx) -> SuiteReport {
    let index = SUITE_NAMES.iter().position(|s| *s == name).expect("known suite");
    let identities = catalog(name, ctx.scenario);
    let mut stream = ChaCha8Rng::seed_from_u64(ctx.random.seed);
    stream.set_stream(index as u64);
    let mut jobs = Vec::new();
    for (i, id) in identities.iter().enumerate() {
        let n = match id.cases {
            Cases::Random => ctx.random.cases,
            Cases::Once => 1,
        };
        for case in 0..n {
            jobs.push((i, case, stream.next_u64()));
        }
    }
    let start = Instant::now();
    let outcomes: Vec<Outcome> = jobs
        .par_iter()
        .map(|&(i, _, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match catch_unwind(AssertUnwindSafe(|| (identities[i].check)(ctx, &mut rng))) {
                Ok(outcome) => outcome,
                Err(payload) => Err(Failure::Panic(panic_message(payload.as_ref()))),
            }
        })
        .collect();
    let wall_ms = start.elapsed().as_millis();
    let checks = jobs
        .iter()
        .zip(outcomes)
        .map(|(&(i, case, seed), outcome)| CheckRecord {
            suite: name.to_string(),
            identity: identities[i].id.clone(),
            law: identities[i].law.clone(),
            case,
            seed,
            passed: outcome.is_ok(),
            witness: outcome.err().map(|f| f.to_string()),
        })
        .collect();
    SuiteReport { name: name.to_string(), checks, wall_ms }
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

const WITNESS_LIMIT: usize = 600;

pub(crate) fn clip(mut s: String) -> String {
    if s.len() > WITNESS_LIMIT {
        let mut cut = WITNESS_LIMIT;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str(" ...");
    }
    s
}

/// Canonical rendering of a value in the chart's variable names.
pub trait Show {
    fn show(&self, chart: &Chart) -> String;
}

impl Show for RF {
    fn show(&self, chart: &Chart) -> String {
        chart.registry().fmt(self)
    }
}

impl Show for [RF] {
    fn show(&self, chart: &Chart) -> String {
        let parts: Vec<String> = self.iter().map(|x| x.show(chart)).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl Show for Vec<RF> {
    fn show(&self, chart: &Chart) -> String {
        self.as_slice().show(chart)
    }
}

impl Show for DifferentialForm {
    fn show(&self, chart: &Chart) -> String {
        chart.fmt_form(self)
    }
}

impl Show for VectorField {
    fn show(&self, chart: &Chart) -> String {
        chart.fmt_field(self)
    }
}

impl Show for LieAlgValuedMap {
    fn show(&self, chart: &Chart) -> String {
        self.comps().show(chart)
    }
}

impl Show for VectorValuedForm {
    fn show(&self, chart: &Chart) -> String {
        let parts: Vec<String> = self
            .comps()
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| format!("({}) d/d{}", f.show(chart), chart.coord_name(i)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl Show for LocalField {
    fn show(&self, chart: &Chart) -> String {
        format!("{} {}", self.kind(), self.form().show(chart))
    }
}

impl Show for GhostElement {
    fn show(&self, chart: &Chart) -> String {
        let parts: Vec<String> = self
            .terms()
            .map(|(mask, f)| {
                let ghosts: Vec<String> = mask_indices(mask).map(|i| format!("c{}", i + 1)).collect();
                format!("({}) {}", f.show(chart), ghosts.join(" "))
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl Show for Matrix {
    fn show(&self, chart: &Chart) -> String {
        let rows: Vec<String> =
            (0..self.rows()).map(|i| (0..self.cols()).map(|j| self.get(i, j).clone()).collect::<Vec<_>>().show(chart)).collect();
        format!("[{}]", rows.join(", "))
    }
}

impl Show for RationalChartMap {
    fn show(&self, chart: &Chart) -> String {
        self.images().show(chart)
    }
}

impl Show for VerticalMap {
    fn show(&self, chart: &Chart) -> String {
        format!("{} {}", self.kind().name(), self.params().show(chart))
    }
}

pub fn expect_eq<T: PartialEq + Show + ?Sized>(chart: &Chart, what: &str, lhs: &T, rhs: &T) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Failure::Mismatch(clip(format!("{what}: {} != {}", lhs.show(chart), rhs.show(chart)))))
    }
}

pub fn expect_zero_form(chart: &Chart, what: &str, f: &DifferentialForm) -> Outcome {
    if f.is_zero() {
        Ok(())
    } else {
        Err(Failure::Mismatch(clip(format!("{what}: residual {}", f.show(chart)))))
    }
}

pub fn expect(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(Failure::Mismatch(clip(what())))
    }
}

/// Random inputs over a chart.
pub struct Sampler<'a> {
    pub chart: &'a Chart,
    pub cfg: SampleConfig,
}

impl<'a> Sampler<'a> {
    pub fn new(chart: &'a Chart, max_degree: u32) -> Self {
        Sampler { chart, cfg: SampleConfig { max_degree, max_terms: 2 } }
    }

    pub fn poly(&self, r: &mut Rng) -> RF {
        sample::random_poly(r, &chart_vars(self.chart), self.cfg)
    }

    pub fn base_poly(&self, r: &mut Rng) -> RF {
        sample::random_poly(r, &self.chart.base_vars(), self.cfg)
    }

    pub fn form(&self, r: &mut Rng, degree: usize) -> DifferentialForm {
        sample::random_form(r, self.chart, degree, ValueSpace::Scalar, &chart_vars(self.chart), self.cfg)
    }

    /// One scalar form of every degree.
    pub fn panel(&self, r: &mut Rng) -> Vec<DifferentialForm> {
        sample::form_panel(r, self.chart, self.cfg)
    }

    pub fn field(&self, r: &mut Rng) -> VectorField {
        sample::random_field(r, self.chart, &chart_vars(self.chart), self.cfg)
    }

    pub fn vvf(&self, r: &mut Rng, degree: usize) -> VectorValuedForm {
        sample::random_vvf(r, self.chart, degree, &chart_vars(self.chart), self.cfg)
    }

    pub fn lie_map(&self, r: &mut Rng) -> LieAlgValuedMap {
        sample::random_lie_map(r, self.chart, &chart_vars(self.chart), self.cfg)
    }

    pub fn base_param(&self, r: &mut Rng) -> LieAlgValuedMap {
        sample::random_lie_map(r, self.chart, &self.chart.base_vars(), self.cfg)
    }

    pub fn constant_lie(&self, r: &mut Rng) -> LieAlgValuedMap {
        sample::random_constant_lie(r, self.chart)
    }

    pub fn group_params(&self, r: &mut Rng) -> Vec<RF> {
        sample::random_group_params(r, self.chart, &chart_vars(self.chart), self.cfg)
    }

    pub fn base_group_params(&self, r: &mut Rng) -> Vec<RF> {
        sample::random_group_params(r, self.chart, &self.chart.base_vars(), self.cfg)
    }

    pub fn general(&self, r: &mut Rng) -> vertix::Result<VerticalMap> {
        VerticalMap::general(self.chart, self.group_params(r))
    }

    pub fn base_only(&self, r: &mut Rng) -> vertix::Result<VerticalMap> {
        VerticalMap::base_only(self.chart, self.base_group_params(r))
    }

    pub fn equivariant(&self, r: &mut Rng) -> vertix::Result<VerticalMap> {
        VerticalMap::equivariant_from_seed(self.chart, &self.base_group_params(r))
    }

    pub fn dressing(&self, r: &mut Rng) -> vertix::Result<VerticalMap> {
        VerticalMap::dressing_from_seed(self.chart, &self.base_group_params(r))
    }

    pub fn base_form(&self, r: &mut Rng, degree: usize, space: ValueSpace) -> DifferentialForm {
        sample::random_base_form(r, self.chart, degree, space, self.cfg)
    }

    pub fn potential(&self, r: &mut Rng) -> vertix::Result<LocalField> {
        LocalField::potential(self.chart, self.base_form(r, 1, self.chart.lie()))
    }

    pub fn matter(&self, r: &mut Rng, rep: &Representation) -> vertix::Result<LocalField> {
        LocalField::matter(self.chart, rep, self.base_form(r, 0, ValueSpace::Rep(rep.dim())))
    }

    pub fn connection(&self, r: &mut Rng) -> vertix::Result<Connection> {
        Connection::from_potential(self.chart, &self.base_form(r, 1, self.chart.lie()))
    }

    /// Base form that is not identically zero, when the degree allows one.
    pub fn nonzero_base_form(&self, r: &mut Rng, degree: usize, space: ValueSpace) -> DifferentialForm {
        loop {
            let f = self.base_form(r, degree, space);
            if !f.is_zero() || degree > self.chart.n_base() {
                return f;
            }
        }
    }

    pub fn tensorial(&self, r: &mut Rng, rep: &Representation, degree: usize) -> vertix::Result<TensorialForm> {
        TensorialForm::from_seed(self.chart, rep, &self.nonzero_base_form(r, degree, ValueSpace::Rep(rep.dim())))
    }
}
