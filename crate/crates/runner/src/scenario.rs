//! Scenario files: TOML documents naming a group, the chart variables,
//! declared fields and maps, witness instances, rules and suites.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use vertix::forms::{Chart, DifferentialForm, ValueSpace};
use vertix::group::{by_name, GroupText, LieGroupModel, Representation};
use vertix::local::{ActionRule, Expr, FieldKind, LocalField, LocalSection, TransformRule};
use vertix::vertical::{VerticalKind, VerticalMap};
use vertix::RationalFunction as RF;

use crate::error::{ConfigError, ConfigResult};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    suites: Vec<String>,
    group: RawGroup,
    #[serde(default)]
    variables: RawVariables,
    #[serde(default)]
    random: RawRandom,
    #[serde(default)]
    fields: BTreeMap<String, RawField>,
    #[serde(default)]
    maps: BTreeMap<String, RawMap>,
    #[serde(default)]
    witnesses: RawWitnesses,
    #[serde(default)]
    rules: RawRules,
    #[serde(default)]
    brst: RawBrst,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    model: Option<String>,
    name: Option<String>,
    #[serde(default)]
    params: Vec<String>,
    #[serde(default)]
    params2: Vec<String>,
    #[serde(default)]
    matrix: Vec<Vec<String>>,
    #[serde(default)]
    mul: Vec<String>,
    #[serde(default)]
    inv: Vec<String>,
    #[serde(default)]
    identity: Vec<String>,
    #[serde(default)]
    basis: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariables {
    #[serde(default = "default_base")]
    base: Vec<String>,
    #[serde(default)]
    params: Vec<String>,
}

impl Default for RawVariables {
    fn default() -> Self {
        RawVariables { base: default_base(), params: Vec::new() }
    }
}

fn default_base() -> Vec<String> {
    vec!["x1".into(), "x2".into()]
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRandom {
    seed: Option<u64>,
    degree: Option<u32>,
    cases: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    kind: String,
    #[serde(default = "default_rep")]
    rep: String,
    components: BTreeMap<String, Vec<String>>,
}

fn default_rep() -> String {
    "defining".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    kind: String,
    params: Option<Vec<String>>,
    seed: Option<Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWitnesses {
    connection: Option<String>,
    tensorial: Option<String>,
    matter: Option<String>,
    #[serde(default)]
    breaking: Vec<String>,
    #[serde(default)]
    preserving: Vec<String>,
    #[serde(default)]
    divergence: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRules {
    transform: Option<String>,
    #[serde(default)]
    action: Vec<String>,
    section: Option<Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBrst {
    #[serde(default)]
    generators: Vec<String>,
}

/// Seed, polynomial degree and cases per identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub seed: u64,
    pub degree: u32,
    pub cases: usize,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { seed: 0, degree: 2, cases: 20 }
    }
}

/// Instances declared for the membership and local suites.
#[derive(Clone, Debug, Default)]
pub struct Witnesses {
    pub connection: Option<LocalField>,
    pub tensorial: Option<LocalField>,
    pub matter: Option<LocalField>,
    pub breaking: Vec<(String, VerticalMap)>,
    pub preserving: Vec<(String, VerticalMap)>,
    pub divergence: Option<(VerticalMap, VerticalMap)>,
}

/// A loaded and validated scenario.
#[derive(Debug)]
pub struct Scenario {
    pub name: String,
    pub chart: Chart,
    pub random: RandomConfig,
    pub suites: Vec<String>,
    pub fields: BTreeMap<String, LocalField>,
    pub maps: BTreeMap<String, VerticalMap>,
    pub witnesses: Witnesses,
    pub transform_rule: TransformRule,
    pub action_rules: Vec<(String, ActionRule)>,
    pub generators: Vec<(String, Expr)>,
}

impl Scenario {
    pub fn load(path: &Path) -> ConfigResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.display().to_string(), e.to_string()))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "scenario".into());
        Self::parse(&name, &text)
    }

    pub fn parse(name: &str, text: &str) -> ConfigResult<Self> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        build(name, raw)
    }
}

fn build(name: &str, raw: RawScenario) -> ConfigResult<Scenario> {
    let group = build_group(&raw.group)?;
    let params: Vec<String> =
        if raw.variables.params.is_empty() { (1..=group.dim()).map(|i| format!("t{i}")).collect() } else { raw.variables.params.clone() };
    let chart = Chart::new(group, &raw.variables.base, &params, &[]).map_err(|e| ConfigError::at("variables", e))?;
    let defaults = RandomConfig::default();
    let random = RandomConfig {
        seed: raw.random.seed.unwrap_or(defaults.seed),
        degree: raw.random.degree.unwrap_or(defaults.degree),
        cases: raw.random.cases.unwrap_or(defaults.cases),
    };

    let mut fields = BTreeMap::new();
    for (key, f) in &raw.fields {
        fields.insert(key.clone(), build_field(&chart, key, f)?);
    }
    let mut maps = BTreeMap::new();
    for (key, m) in &raw.maps {
        maps.insert(key.clone(), build_map(&chart, key, m)?);
    }

    let field_of = |role: &str, key: &Option<String>, kinds: &[FieldKind]| -> ConfigResult<Option<LocalField>> {
        let Some(key) = key else { return Ok(None) };
        let f = fields.get(key).ok_or_else(|| ConfigError::Unresolved(format!("witnesses.{role}"), key.clone()))?;
        if !kinds.contains(&f.kind()) {
            return Err(ConfigError::Invalid(format!("witnesses.{role}: field `{key}` is a {}", f.kind())));
        }
        Ok(Some(f.clone()))
    };
    let map_list = |role: &str, keys: &[String]| -> ConfigResult<Vec<(String, VerticalMap)>> {
        keys.iter()
            .map(|k| {
                maps.get(k).cloned().map(|m| (k.clone(), m)).ok_or_else(|| ConfigError::Unresolved(format!("witnesses.{role}"), k.clone()))
            })
            .collect()
    };
    let w = &raw.witnesses;
    let divergence = match map_list("divergence", &w.divergence)?.as_slice() {
        [] => None,
        [(_, eta), (_, gamma)] => {
            if eta.kind() != VerticalKind::BaseOnly || gamma.kind() != VerticalKind::BaseOnly {
                return Err(ConfigError::Invalid("witnesses.divergence: both maps must be base_only".into()));
            }
            Some((eta.clone(), gamma.clone()))
        }
        _ => return Err(ConfigError::Invalid("witnesses.divergence lists exactly two maps".into())),
    };
    let witnesses = Witnesses {
        connection: field_of("connection", &w.connection, &[FieldKind::Potential])?,
        tensorial: field_of("tensorial", &w.tensorial, &[FieldKind::Tensorial, FieldKind::Matter])?,
        matter: field_of("matter", &w.matter, &[FieldKind::Matter])?,
        breaking: map_list("breaking", &w.breaking)?,
        preserving: map_list("preserving", &w.preserving)?,
        divergence,
    };

    let transform_rule = match raw.rules.transform.as_deref() {
        None | Some("trivial") => TransformRule::Trivial,
        Some("gauge-group") => TransformRule::GaugeGroup,
        Some(other) => return Err(ConfigError::Invalid(format!("rules.transform: unknown rule `{other}`"))),
    };
    let section = match &raw.rules.section {
        Some(src) => {
            let params = parse_list(&chart, "rules.section", src)?;
            LocalSection::new(&chart, params).map_err(|e| ConfigError::at("rules.section", e))?
        }
        None => LocalSection::identity(&chart),
    };
    let action_names: Vec<String> = if raw.rules.action.is_empty() {
        ["zero", "gauge-algebra", "bundle-pullback", "polynomial"].iter().map(|s| s.to_string()).collect()
    } else {
        raw.rules.action.clone()
    };
    let action_rules =
        action_names.iter().map(|n| action_rule(&chart, n, &section).map(|r| (n.clone(), r))).collect::<ConfigResult<_>>()?;

    let gen_names: Vec<String> = if raw.brst.generators.is_empty() {
        ["A", "c", "phi", "F"].iter().map(|s| s.to_string()).collect()
    } else {
        raw.brst.generators.clone()
    };
    let generators = gen_names
        .iter()
        .map(|n| Expr::named(n).map(|e| (n.clone(), e)).map_err(|e| ConfigError::at("brst.generators", e)))
        .collect::<ConfigResult<_>>()?;

    for s in &raw.suites {
        if !crate::suites::SUITE_NAMES.contains(&s.as_str()) {
            return Err(ConfigError::UnknownSuite(s.clone()));
        }
    }

    Ok(Scenario {
        name: name.to_string(),
        chart,
        random,
        suites: raw.suites,
        fields,
        maps,
        witnesses,
        transform_rule,
        action_rules,
        generators,
    })
}

fn build_group(g: &RawGroup) -> ConfigResult<vertix::group::Group> {
    match &g.model {
        Some(model) => {
            if g.name.is_some() || !g.params.is_empty() || !g.mul.is_empty() {
                return Err(ConfigError::Invalid("group: give either `model` or a full definition".into()));
            }
            by_name(model).map_err(|e| ConfigError::at("group.model", e))
        }
        None => {
            let text = GroupText {
                name: g.name.clone().ok_or_else(|| ConfigError::Invalid("group: missing `model` or `name`".into()))?,
                params: g.params.clone(),
                params2: g.params2.clone(),
                matrix: g.matrix.clone(),
                mul: g.mul.clone(),
                inv: g.inv.clone(),
                identity: g.identity.clone(),
                basis: g.basis.clone(),
            };
            let model = LieGroupModel::from_text(&text).map_err(|e| ConfigError::at("group", e))?;
            Ok(std::sync::Arc::new(model))
        }
    }
}

fn parse_list(chart: &Chart, at: &str, src: &[String]) -> ConfigResult<Vec<RF>> {
    src.iter().map(|s| chart.parse(s).map_err(|e| ConfigError::at(at, e))).collect()
}

/// `"1"` is the empty index set; otherwise differentials such as
/// `"dx1^dx2"` over base coordinates.
fn parse_mask(chart: &Chart, at: &str, key: &str) -> ConfigResult<Vec<usize>> {
    if key.trim() == "1" {
        return Ok(Vec::new());
    }
    let names: Vec<String> = (0..chart.n_base()).map(|i| chart.coord_name(i)).collect();
    key.split(['^', ' '])
        .filter(|s| !s.is_empty())
        .map(|part| {
            part.strip_prefix('d')
                .and_then(|v| names.iter().position(|n| n == v))
                .ok_or_else(|| ConfigError::Invalid(format!("{at}: `{part}` is not a base differential")))
        })
        .collect()
}

fn build_field(chart: &Chart, key: &str, f: &RawField) -> ConfigResult<LocalField> {
    let at = format!("fields.{key}");
    let kind = FieldKind::parse(&f.kind).ok_or_else(|| ConfigError::Invalid(format!("{at}: unknown kind `{}`", f.kind)))?;
    let group = chart.group();
    let rep = match (kind, f.rep.as_str()) {
        (FieldKind::Potential | FieldKind::FieldStrength, _) | (_, "adjoint") => Representation::adjoint(group),
        (_, "defining") => Representation::defining(group),
        (_, other) => return Err(ConfigError::Invalid(format!("{at}: unknown representation `{other}`"))),
    };
    let space = match kind {
        FieldKind::Potential | FieldKind::FieldStrength => chart.lie(),
        _ => ValueSpace::Rep(rep.dim()),
    };
    let mut entries = Vec::new();
    let mut degree = None;
    for (k, vals) in &f.components {
        let idx = parse_mask(chart, &at, k)?;
        if *degree.get_or_insert(idx.len()) != idx.len() {
            return Err(ConfigError::Invalid(format!("{at}: components of different degrees")));
        }
        entries.push((idx, parse_list(chart, &at, vals)?));
    }
    let degree = degree.unwrap_or(match kind {
        FieldKind::Potential => 1,
        FieldKind::FieldStrength => 2,
        _ => 0,
    });
    let form = DifferentialForm::from_entries(chart.dim(), degree, space, entries).map_err(|e| ConfigError::at(&at, e))?;
    let built = match kind {
        FieldKind::Potential => LocalField::potential(chart, form),
        FieldKind::FieldStrength => LocalField::field_strength(chart, form),
        FieldKind::Tensorial => LocalField::tensorial(chart, &rep, form),
        FieldKind::Matter => LocalField::matter(chart, &rep, form),
    };
    built.map_err(|e| ConfigError::at(&at, e))
}

fn build_map(chart: &Chart, key: &str, m: &RawMap) -> ConfigResult<VerticalMap> {
    let at = format!("maps.{key}");
    let kind = VerticalKind::parse(&m.kind).ok_or_else(|| ConfigError::Invalid(format!("{at}: unknown kind `{}`", m.kind)))?;
    let built = match (&m.params, &m.seed, kind) {
        (Some(p), None, _) => VerticalMap::new(chart, kind, parse_list(chart, &at, p)?),
        (None, Some(s), VerticalKind::Equivariant) => VerticalMap::equivariant_from_seed(chart, &parse_list(chart, &at, s)?),
        (None, Some(s), VerticalKind::Dressing) => VerticalMap::dressing_from_seed(chart, &parse_list(chart, &at, s)?),
        (None, Some(_), _) => return Err(ConfigError::Invalid(format!("{at}: `seed` applies to equivariant and dressing maps"))),
        _ => return Err(ConfigError::Invalid(format!("{at}: give exactly one of `params` or `seed`"))),
    };
    built.map_err(|e| ConfigError::at(&at, e))
}

fn action_rule(chart: &Chart, name: &str, section: &LocalSection) -> ConfigResult<ActionRule> {
    match name {
        "zero" => Ok(ActionRule::Zero),
        "gauge-algebra" => Ok(ActionRule::GaugeAlgebra),
        "bundle-pullback" => Ok(ActionRule::BundlePullback(section.clone())),
        "polynomial" => Ok(polynomial_rule(chart)),
        other => Err(ConfigError::Invalid(format!("rules.action: unknown rule `{other}`"))),
    }
}

/// `δ_ξ ζ = (Σ_a ξ^a ζ^a)·[τ₁, ζ]`, a stand-in for a polynomial field
/// dependence of the parameters.
pub fn polynomial_rule(chart: &Chart) -> ActionRule {
    let g = chart.group().clone();
    ActionRule::explicit(move |xi, zeta| {
        let pairing = xi.comps().iter().zip(zeta.comps()).fold(RF::zero(), |acc, (a, b)| &acc + &(a * b));
        g.bracket(&g.basis_elem(0).scale(&pairing), zeta)
    })
}
