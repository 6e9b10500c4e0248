//! The base-chart picture.
//!
//! Fields on `U` arise as pullbacks along a local section. They are glued by
//! base-only group maps, transformed actively, varied infinitesimally by
//! gauge parameters, and carried into the bigraded algebra of forms and
//! ghosts where the BRST differential acts.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::{merge_sign, Chart, DifferentialForm, Mask, RationalChartMap, ValueSpace};
use crate::group::{LieAlgValuedMap, Representation};
use crate::vertical::{
    covariant_derivative, curvature, nl_vertical_connection, nl_vertical_tensorial, pullback_along, VerticalKind, VerticalMap,
};
use crate::{RationalFunction as RF, Subst, Q};

fn on_base(chart: &Chart, f: &RF) -> bool {
    let base = chart.base_vars();
    f.vars().iter().all(|v| base.contains(v))
}

fn base_mask(chart: &Chart) -> Mask {
    (1 << chart.n_base()) - 1
}

/// True when only base differentials and base coordinates occur.
pub fn is_base_form(chart: &Chart, f: &DifferentialForm) -> bool {
    let mask = base_mask(chart);
    f.terms().all(|(m, v)| m & !mask == 0 && v.iter().all(|x| on_base(chart, x)))
}

fn lie_function(chart: &Chart, x: &LieAlgValuedMap) -> DifferentialForm {
    DifferentialForm::valued_function(chart.dim(), chart.lie(), x.comps().to_vec())
}

fn check_base_param(chart: &Chart, x: &LieAlgValuedMap) -> Result<()> {
    chart.group().check_elem(x)?;
    if x.comps().iter().all(|c| on_base(chart, c)) {
        Ok(())
    } else {
        Err(Error::Invalid("gauge parameters live on the base".into()))
    }
}

/// `σ(x) = (x, θ₀(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSection {
    params: Vec<RF>,
}

impl LocalSection {
    pub fn new(chart: &Chart, theta_of_x: Vec<RF>) -> Result<Self> {
        let g = chart.group();
        if theta_of_x.len() != g.dim() {
            return Err(Error::Invalid(format!("a section of `{}` needs {} parameters", g.name(), g.dim())));
        }
        if !theta_of_x.iter().all(|f| on_base(chart, f)) {
            return Err(Error::Invalid("a section depends on the base coordinates only".into()));
        }
        g.inv(&theta_of_x).map_err(|_| Error::SingularSubstitution)?;
        Ok(LocalSection { params: theta_of_x })
    }

    pub fn identity(chart: &Chart) -> Self {
        LocalSection { params: chart.group().identity_params() }
    }

    pub fn params(&self) -> &[RF] {
        &self.params
    }

    pub fn chart_map(&self, chart: &Chart) -> RationalChartMap {
        let mut images: Vec<RF> = (0..chart.n_base()).map(|i| chart.x(i)).collect();
        images.extend(self.params.iter().cloned());
        RationalChartMap::new(images)
    }

    fn subst(&self, chart: &Chart) -> Subst {
        Subst::from_pairs(chart.group_vars().into_iter().zip(self.params.iter().cloned()))
    }

    /// `σ*f` for a function on the chart.
    pub fn pull_function(&self, chart: &Chart, f: &RF) -> Result<RF> {
        f.substitute(&self.subst(chart))
    }

    pub fn pull_lie(&self, chart: &Chart, x: &LieAlgValuedMap) -> Result<LieAlgValuedMap> {
        x.try_map(|c| self.pull_function(chart, c))
    }
}

/// `θ ↦ θ₀(x)` and `dθ ↦ dθ₀(x)`.
pub fn section_pullback(chart: &Chart, sigma: &LocalSection, b: &DifferentialForm) -> Result<DifferentialForm> {
    b.pullback(&sigma.chart_map(chart))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Potential,
    Tensorial,
    Matter,
    FieldStrength,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Potential => "potential",
            FieldKind::Tensorial => "tensorial",
            FieldKind::Matter => "matter",
            FieldKind::FieldStrength => "field-strength",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "potential" => Some(FieldKind::Potential),
            "tensorial" => Some(FieldKind::Tensorial),
            "matter" => Some(FieldKind::Matter),
            "field-strength" => Some(FieldKind::FieldStrength),
            _ => None,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A valued form on the base, tagged with how it transforms.
#[derive(Clone, Debug)]
pub struct LocalField {
    kind: FieldKind,
    form: DifferentialForm,
    rep: Representation,
}

impl PartialEq for LocalField {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.rep.name() == other.rep.name() && self.form == other.form
    }
}

impl LocalField {
    fn build(chart: &Chart, kind: FieldKind, rep: Representation, form: DifferentialForm) -> Result<Self> {
        if !is_base_form(chart, &form) {
            return Err(Error::Invalid(format!("a local {kind} lives on the base")));
        }
        let dim_ok = matches!(form.space(), ValueSpace::Rep(n) | ValueSpace::Lie(n) if n == rep.dim());
        if !dim_ok {
            return Err(Error::ValueSpaceMismatch(format!("{:?} for a {kind} in `{}`", form.space(), rep.name())));
        }
        Ok(LocalField { kind, form, rep })
    }

    /// A Lie-valued 1-form `A`.
    pub fn potential(chart: &Chart, form: DifferentialForm) -> Result<Self> {
        if form.space() != chart.lie() || (form.degree() != 1 && !form.is_zero()) {
            return Err(Error::ValueSpaceMismatch("a potential is a Lie-valued 1-form".into()));
        }
        Self::build(chart, FieldKind::Potential, Representation::adjoint(chart.group()), form)
    }

    /// A Lie-valued 2-form transforming in the adjoint representation.
    pub fn field_strength(chart: &Chart, form: DifferentialForm) -> Result<Self> {
        if form.space() != chart.lie() {
            return Err(Error::ValueSpaceMismatch("a field strength is Lie-valued".into()));
        }
        Self::build(chart, FieldKind::FieldStrength, Representation::adjoint(chart.group()), form)
    }

    pub fn tensorial(chart: &Chart, rep: &Representation, form: DifferentialForm) -> Result<Self> {
        Self::build(chart, FieldKind::Tensorial, rep.clone(), form)
    }

    /// A representation-valued function `φ`.
    pub fn matter(chart: &Chart, rep: &Representation, form: DifferentialForm) -> Result<Self> {
        if form.degree() != 0 && !form.is_zero() {
            return Err(Error::ValueSpaceMismatch("a matter field is a 0-form".into()));
        }
        Self::build(chart, FieldKind::Matter, rep.clone(), form)
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn form(&self) -> &DifferentialForm {
        &self.form
    }

    pub fn into_form(self) -> DifferentialForm {
        self.form
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    fn with_form(&self, form: DifferentialForm) -> Self {
        LocalField { kind: self.kind, form, rep: self.rep.clone() }
    }

    fn expect(&self, kind: FieldKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::KindMismatch { expected: kind.name().into(), found: self.kind.name().into() })
        }
    }
}

/// `F = dA + ½[A ∧ A]`.
pub fn field_strength(chart: &Chart, a: &LocalField) -> Result<LocalField> {
    a.expect(FieldKind::Potential)?;
    LocalField::field_strength(chart, curvature(chart, &a.form)?)
}

/// `D^A φ = dφ + ρ_*(A) ∧ φ`.
pub fn minimal_coupling(chart: &Chart, a: &LocalField, phi: &LocalField) -> Result<LocalField> {
    a.expect(FieldKind::Potential)?;
    if phi.kind == FieldKind::Potential {
        return Err(Error::KindMismatch { expected: "tensorial".into(), found: phi.kind.name().into() });
    }
    let form = covariant_derivative(chart, &phi.rep, &a.form, &phi.form)?;
    LocalField::tensorial(chart, &phi.rep, form)
}

fn require_base_only(chart: &Chart, g: &VerticalMap) -> Result<()> {
    if g.satisfies(chart, VerticalKind::BaseOnly)? {
        Ok(())
    } else {
        Err(Error::KindMismatch { expected: VerticalKind::BaseOnly.name().into(), found: g.kind().name().into() })
    }
}

/// `A^g = Ad_{g⁻¹}A + g⁻¹dg`, `a^g = ρ(g⁻¹)a`.
pub fn glue(chart: &Chart, b: &LocalField, g: &VerticalMap) -> Result<LocalField> {
    require_base_only(chart, g)?;
    let inv = g.pointwise_inverse(chart)?;
    let form = match b.kind {
        FieldKind::Potential => chart.adjoint_form(&inv, &b.form)?.add(&chart.log_derivative(g.params())?)?,
        _ => b.form.apply_matrix(&b.rep.rho(&inv)?, b.form.space()),
    };
    Ok(b.with_form(form))
}

/// The equivariant form on `U × H` whose pullback along the identity section
/// is `b`.
fn lift(chart: &Chart, b: &LocalField) -> Result<DifferentialForm> {
    let g = chart.group();
    let inv = g.inv(&chart.thetas())?;
    match b.kind {
        FieldKind::Potential => chart.adjoint_form(&inv, &b.form)?.add(&chart.maurer_cartan_form()),
        _ => Ok(b.form.apply_matrix(&b.rep.rho(&inv)?, b.form.space())),
    }
}

/// Active transformation by a base-only `γ`, computed upstairs: the field is
/// lifted to an equivariant form, pulled back along the vertical map of
/// `θ⁻¹γ(x)θ`, and brought down by the identity section.
pub fn local_transform(chart: &Chart, b: &LocalField, gamma: &VerticalMap) -> Result<LocalField> {
    require_base_only(chart, gamma)?;
    let up = VerticalMap::equivariant_from_seed(chart, gamma.params())?;
    let moved = pullback_along(chart, &up, &lift(chart, b)?)?;
    Ok(b.with_form(section_pullback(chart, &LocalSection::identity(chart), &moved)?))
}

type ParamRule = dyn Fn(&[RF], &[RF]) -> Result<Vec<RF>> + Send + Sync;

/// How a field-dependent group parameter `η` responds to a transformation
/// `γ`, i.e. the map `(η, γ) ↦ η^γ`.
#[derive(Clone)]
pub enum TransformRule {
    /// `η^γ = γ⁻¹ηγ`.
    GaugeGroup,
    /// `η^γ = η`.
    Trivial,
    Explicit(Arc<ParamRule>),
}

impl fmt::Debug for TransformRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformRule::GaugeGroup => f.write_str("GaugeGroup"),
            TransformRule::Trivial => f.write_str("Trivial"),
            TransformRule::Explicit(_) => f.write_str("Explicit(..)"),
        }
    }
}

impl TransformRule {
    pub fn explicit(rule: impl Fn(&[RF], &[RF]) -> Result<Vec<RF>> + Send + Sync + 'static) -> Self {
        TransformRule::Explicit(Arc::new(rule))
    }

    pub fn apply(&self, chart: &Chart, eta: &[RF], gamma: &[RF]) -> Result<Vec<RF>> {
        let g = chart.group();
        match self {
            TransformRule::GaugeGroup => g.mul(&g.mul(&g.inv(gamma)?, eta)?, gamma),
            TransformRule::Trivial => Ok(eta.to_vec()),
            TransformRule::Explicit(f) => {
                let out = f(eta, gamma)?;
                if out.len() != g.dim() {
                    return Err(Error::Invalid("explicit rule returned the wrong number of parameters".into()));
                }
                Ok(out)
            }
        }
    }
}

/// `(…(b^{γ₁})^{γ₂}…)^{γₖ}`, where each step acts by `γ·e^γ` on the
/// accumulated element `e`.
pub fn iterate_transform(chart: &Chart, b: &LocalField, maps: &[VerticalMap], rule: Option<&TransformRule>) -> Result<LocalField> {
    match maps {
        [] => Ok(b.clone()),
        [one] => local_transform(chart, b, one),
        [first, rest @ ..] => {
            let rule = rule.ok_or_else(|| Error::MissingRule("iterated local transformations".into()))?;
            require_base_only(chart, first)?;
            let g = chart.group();
            let mut acc = first.params().to_vec();
            for m in rest {
                require_base_only(chart, m)?;
                acc = g.mul(m.params(), &rule.apply(chart, &acc, m.params())?)?;
            }
            local_transform(chart, b, &VerticalMap::base_only(chart, acc)?)
        }
    }
}

/// `δ_ξ`: `A ↦ dξ + [A, ξ]`, `a ↦ −ρ_*(ξ)a`, `F ↦ [F, ξ]`.
pub fn delta_xi(chart: &Chart, b: &LocalField, xi: &LieAlgValuedMap) -> Result<LocalField> {
    check_base_param(chart, xi)?;
    let form = match b.kind {
        FieldKind::Potential => nl_vertical_connection(chart, xi, &b.form)?,
        _ => linear_variation(chart, b, &b.form, xi)?,
    };
    Ok(b.with_form(form))
}

/// The part of `δ_ξ b` linear in `b`, applied to a variation of `b`.
fn linear_variation(chart: &Chart, b: &LocalField, var: &DifferentialForm, xi: &LieAlgValuedMap) -> Result<DifferentialForm> {
    match b.kind {
        FieldKind::Potential | FieldKind::FieldStrength => chart.bracket_wedge(var, &lie_function(chart, xi)),
        FieldKind::Tensorial | FieldKind::Matter => nl_vertical_tensorial(chart, &b.rep, xi, var),
    }
}

/// `δ_ξ(D^A φ)` expanded by the derivation rule
/// `d(δ_ξ φ) + ρ_*(δ_ξ A) ∧ φ + ρ_*(A) ∧ δ_ξ φ`.
pub fn delta_minimal_coupling(chart: &Chart, a: &LocalField, phi: &LocalField, xi: &LieAlgValuedMap) -> Result<LocalField> {
    let da = delta_xi(chart, a, xi)?;
    let dphi = delta_xi(chart, phi, xi)?;
    let rep = phi.rep();
    let as_rep = |f: &DifferentialForm| f.map_values_into(ValueSpace::Rep(rep.dim()), <[RF]>::to_vec);
    let space = phi.form.space();
    let t1 = dphi.form.ext_d();
    let t2 = chart.act_wedge(rep, &da.form, &as_rep(&phi.form))?.map_values_into(space, <[RF]>::to_vec);
    let t3 = chart.act_wedge(rep, &a.form, &as_rep(&dphi.form))?.map_values_into(space, <[RF]>::to_vec);
    LocalField::tensorial(chart, rep, t1.add(&t2)?.add(&t3)?)
}

type VariationRule = dyn Fn(&LieAlgValuedMap, &LieAlgValuedMap) -> Result<LieAlgValuedMap> + Send + Sync;

/// How one gauge parameter varies under another: the map `(ξ, ζ) ↦ δ_ξ ζ`.
#[derive(Clone)]
pub enum ActionRule {
    /// Parameters without field dependence.
    Zero,
    /// `δ_ξ ζ = [ζ, ξ]`.
    GaugeAlgebra,
    /// Parameters are maps on `U × H`; `δ_ξ ζ = σ*(X^v(Y))` and the local
    /// parameters are their pullbacks.
    BundlePullback(LocalSection),
    Explicit(Arc<VariationRule>),
}

impl fmt::Debug for ActionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionRule::Zero => f.write_str("Zero"),
            ActionRule::GaugeAlgebra => f.write_str("GaugeAlgebra"),
            ActionRule::BundlePullback(s) => f.debug_tuple("BundlePullback").field(s).finish(),
            ActionRule::Explicit(_) => f.write_str("Explicit(..)"),
        }
    }
}

impl ActionRule {
    pub fn explicit(rule: impl Fn(&LieAlgValuedMap, &LieAlgValuedMap) -> Result<LieAlgValuedMap> + Send + Sync + 'static) -> Self {
        ActionRule::Explicit(Arc::new(rule))
    }

    /// The base parameter a declared parameter stands for.
    pub fn localize(&self, chart: &Chart, xi: &LieAlgValuedMap) -> Result<LieAlgValuedMap> {
        match self {
            ActionRule::BundlePullback(s) => s.pull_lie(chart, xi),
            _ => Ok(xi.clone()),
        }
    }

    /// `δ_ξ ζ`.
    pub fn variation(&self, chart: &Chart, xi: &LieAlgValuedMap, zeta: &LieAlgValuedMap) -> Result<LieAlgValuedMap> {
        let g = chart.group();
        let out = match self {
            ActionRule::Zero => g.zero_elem(),
            ActionRule::GaugeAlgebra => g.bracket(zeta, xi)?,
            ActionRule::BundlePullback(s) => {
                let xv = chart.fundamental_field(xi)?;
                s.pull_lie(chart, &zeta.map(|c| xv.apply(c)))?
            }
            ActionRule::Explicit(f) => f(xi, zeta)?,
        };
        g.check_elem(&out)?;
        Ok(out)
    }
}

/// `{ξ, ζ} = [ξ, ζ] + δ_ξ ζ − δ_ζ ξ` on the base.
pub fn local_extended_bracket(
    chart: &Chart,
    xi: &LieAlgValuedMap,
    zeta: &LieAlgValuedMap,
    rule: Option<&ActionRule>,
) -> Result<LieAlgValuedMap> {
    let rule = rule.ok_or_else(|| Error::MissingRule("the variation of gauge parameters".into()))?;
    let g = chart.group();
    let br = g.bracket(&rule.localize(chart, xi)?, &rule.localize(chart, zeta)?)?;
    br.add(&rule.variation(chart, xi, zeta)?)?.sub(&rule.variation(chart, zeta, xi)?)
}

/// Both sides of `[δ_ξ, δ_ζ] b = δ_{{ξ,ζ}} b`.
#[derive(Clone, Debug)]
pub struct CommutatorCheck {
    pub commutator: DifferentialForm,
    pub bracket_variation: DifferentialForm,
}

impl CommutatorCheck {
    pub fn holds(&self) -> bool {
        self.commutator == self.bracket_variation
    }

    pub fn residual(&self) -> Result<DifferentialForm> {
        self.commutator.sub(&self.bracket_variation)
    }
}

/// `δ_ξ(δ_ζ b)` varies both `b` and the parameter `ζ`:
/// `L_ζ(δ_ξ b) + δ_{δ_ξ ζ} b`, with `L_ζ` the part of `δ_ζ` linear in `b`.
pub fn commutator_check(
    chart: &Chart,
    xi: &LieAlgValuedMap,
    zeta: &LieAlgValuedMap,
    b: &LocalField,
    rule: Option<&ActionRule>,
) -> Result<CommutatorCheck> {
    let rule = rule.ok_or_else(|| Error::MissingRule("the variation of gauge parameters".into()))?;
    let (lx, lz) = (rule.localize(chart, xi)?, rule.localize(chart, zeta)?);
    let second = |p: &LieAlgValuedMap, q: &LieAlgValuedMap, lp: &LieAlgValuedMap, lq: &LieAlgValuedMap| -> Result<DifferentialForm> {
        let first = delta_xi(chart, b, lp)?;
        let frozen = linear_variation(chart, b, &first.form, lq)?;
        let moved = delta_xi(chart, b, &rule.variation(chart, p, q)?)?;
        frozen.add(&moved.form)
    };
    let commutator = second(xi, zeta, &lx, &lz)?.sub(&second(zeta, xi, &lz, &lx)?)?;
    let bracket = local_extended_bracket(chart, xi, zeta, Some(rule))?;
    Ok(CommutatorCheck { commutator, bracket_variation: delta_xi(chart, b, &bracket)?.form })
}

/// An element of `Ω(U) ⊗ V ⊗ ∧c`: valued forms multiplying exterior ghost
/// monomials `c^{a₁}⋯c^{a_q}`, written form first.
#[derive(Clone, Debug)]
pub struct GhostElement {
    dim: usize,
    bidegree: (usize, usize),
    space: ValueSpace,
    terms: BTreeMap<Mask, DifferentialForm>,
}

impl PartialEq for GhostElement {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.space == other.space && self.bidegree == other.bidegree && self.terms == other.terms
    }
}

impl GhostElement {
    pub fn zero(dim: usize, bidegree: (usize, usize), space: ValueSpace) -> Self {
        GhostElement { dim, bidegree, space, terms: BTreeMap::new() }
    }

    pub fn from_form(form: DifferentialForm) -> Self {
        let mut out = Self::zero(form.dim(), (form.degree(), 0), form.space());
        out.add_term(0, form);
        out
    }

    /// `form · c^{i₁}⋯c^{i_q}`; the indices are sorted with the matching sign.
    pub fn from_monomial(indices: &[usize], form: DifferentialForm) -> Self {
        let mut out = Self::zero(form.dim(), (form.degree(), indices.len()), form.space());
        let mut mask: Mask = 0;
        let mut odd = false;
        for &i in indices {
            let bit = 1 << i;
            if mask & bit != 0 {
                return out;
            }
            odd ^= merge_sign(mask, bit);
            mask |= bit;
        }
        out.add_term(mask, if odd { form.neg() } else { form });
        out
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.bidegree
    }

    pub fn total_degree(&self) -> usize {
        self.bidegree.0 + self.bidegree.1
    }

    pub fn space(&self) -> ValueSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &DifferentialForm)> {
        self.terms.iter().map(|(&m, f)| (m, f))
    }

    fn add_term(&mut self, mask: Mask, form: DifferentialForm) {
        let sum = match self.terms.remove(&mask) {
            Some(f) => f.add(&form).expect("matching shape"),
            None => form,
        };
        if !sum.is_zero() {
            self.terms.insert(mask, sum);
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.is_zero() || other.is_zero() || (self.bidegree == other.bidegree && self.space == other.space) {
            Ok(())
        } else {
            Err(Error::ValueSpaceMismatch(format!(
                "adding bidegree {:?} {:?} to {:?} {:?}",
                other.bidegree, other.space, self.bidegree, self.space
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let (mut out, src) = if self.is_zero() { (other.clone(), self) } else { (self.clone(), other) };
        for (&m, f) in &src.terms {
            out.add_term(m, f.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for f in out.terms.values_mut() {
            *f = f.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RF) -> Self {
        let mut out = Self::zero(self.dim, self.bidegree, self.space);
        for (&m, f) in &self.terms {
            out.add_term(m, f.scale(c));
        }
        out
    }

    /// `d(ω c^I) = dω c^I`.
    pub fn ext_d(&self) -> Self {
        let mut out = Self::zero(self.dim, (self.bidegree.0 + 1, self.bidegree.1), self.space);
        for (&m, f) in &self.terms {
            out.add_term(m, f.ext_d());
        }
        out
    }

    /// `(ω c^I)(η c^J) = (−1)^{|I||η|} (ω ∧ η) c^I c^J` with the given pairing.
    pub fn product(&self, other: &Self, space: ValueSpace, pair: impl Fn(&[RF], &[RF]) -> Vec<RF> + Copy) -> Self {
        let bidegree = (self.bidegree.0 + other.bidegree.0, self.bidegree.1 + other.bidegree.1);
        let mut out = Self::zero(self.dim, bidegree, space);
        for (&mi, f) in &self.terms {
            for (&mj, g) in &other.terms {
                if mi & mj != 0 {
                    continue;
                }
                let odd = merge_sign(mi, mj) ^ (mi.count_ones() as usize * other.bidegree.0 % 2 == 1);
                let w = f.wedge_with(g, space, pair);
                out.add_term(mi | mj, if odd { w.neg() } else { w });
            }
        }
        out
    }

    /// Graded bracket of Lie-valued elements.
    pub fn bracket(&self, chart: &Chart, other: &Self) -> Result<Self> {
        if self.space != chart.lie() || other.space != chart.lie() {
            return Err(Error::ValueSpaceMismatch("bracket needs Lie-valued elements".into()));
        }
        let g = chart.group();
        Ok(self.product(other, chart.lie(), |x, y| g.bracket_comps(x, y)))
    }

    /// `ρ_*(X) Y` for a Lie-valued `X` and representation-valued `Y`.
    pub fn act(&self, chart: &Chart, rep: &Representation, other: &Self) -> Result<Self> {
        if self.space != chart.lie() || other.space.len() != rep.dim() || other.space == ValueSpace::Scalar {
            return Err(Error::ValueSpaceMismatch("action needs Lie- and representation-valued elements".into()));
        }
        Ok(self.product(other, other.space, |x, y| rep.rho_star(x).apply(y)))
    }
}

/// Free generators of the BRST algebra: the fields and their differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Potential,
    DPotential,
    Ghost,
    DGhost,
    Matter,
    DMatter,
}

impl Generator {
    pub const ALL: [Generator; 6] =
        [Generator::Potential, Generator::DPotential, Generator::Ghost, Generator::DGhost, Generator::Matter, Generator::DMatter];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Potential => "A",
            Generator::DPotential => "dA",
            Generator::Ghost => "c",
            Generator::DGhost => "dc",
            Generator::Matter => "phi",
            Generator::DMatter => "dphi",
        }
    }

    /// (form degree, ghost degree).
    pub fn bidegree(self) -> (usize, usize) {
        match self {
            Generator::Potential => (1, 0),
            Generator::DPotential => (2, 0),
            Generator::Ghost => (0, 1),
            Generator::DGhost => (1, 1),
            Generator::Matter => (0, 0),
            Generator::DMatter => (1, 0),
        }
    }

    pub fn is_lie(self) -> bool {
        !matches!(self, Generator::Matter | Generator::DMatter)
    }
}

/// A polynomial in the generators built from sums, rational multiples,
/// brackets and the representation action.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(Generator),
    Zero { bidegree: (usize, usize), lie: bool },
    Sum(Box<Expr>, Box<Expr>),
    Scale(Q, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
    Act(Box<Expr>, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g) => f.write_str(g.name()),
            Expr::Zero { .. } => f.write_str("0"),
            Expr::Sum(a, b) => write!(f, "({a} + {b})"),
            Expr::Scale(c, a) => write!(f, "{c}*{a}"),
            Expr::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            Expr::Act(a, b) => write!(f, "{a}.{b}"),
        }
    }
}

fn sign_q(odd: bool) -> Q {
    if odd {
        -crate::coeff::q(1, 1)
    } else {
        crate::coeff::q(1, 1)
    }
}

impl Expr {
    pub fn gen(g: Generator) -> Self {
        Expr::Gen(g)
    }

    /// Generators by name; `F` names the curvature `dA + ½[A, A]`.
    pub fn named(name: &str) -> Result<Self> {
        if name == "F" {
            return Ok(Self::curvature());
        }
        Generator::ALL.iter().find(|g| g.name() == name).map(|&g| Expr::Gen(g)).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn curvature() -> Self {
        let a = Expr::Gen(Generator::Potential);
        Expr::Gen(Generator::DPotential).plus(Expr::br(a.clone(), a).times(crate::coeff::q(1, 2)))
    }

    pub fn bidegree(&self) -> (usize, usize) {
        match self {
            Expr::Gen(g) => g.bidegree(),
            Expr::Zero { bidegree, .. } => *bidegree,
            Expr::Sum(a, _) | Expr::Scale(_, a) => a.bidegree(),
            Expr::Bracket(a, b) | Expr::Act(a, b) => {
                let (x, y) = (a.bidegree(), b.bidegree());
                (x.0 + y.0, x.1 + y.1)
            }
        }
    }

    pub fn total_degree(&self) -> usize {
        let (p, q) = self.bidegree();
        p + q
    }

    pub fn is_lie(&self) -> bool {
        match self {
            Expr::Gen(g) => g.is_lie(),
            Expr::Zero { lie, .. } => *lie,
            Expr::Sum(a, _) | Expr::Scale(_, a) | Expr::Bracket(a, _) => a.is_lie(),
            Expr::Act(_, b) => b.is_lie(),
        }
    }

    pub fn is_zero_node(&self) -> bool {
        matches!(self, Expr::Zero { .. })
    }

    fn zero_like(bidegree: (usize, usize), lie: bool) -> Self {
        Expr::Zero { bidegree, lie }
    }

    fn plus(self, other: Expr) -> Self {
        match (self.is_zero_node(), other.is_zero_node()) {
            (true, _) => other,
            (_, true) => self,
            _ => Expr::Sum(Box::new(self), Box::new(other)),
        }
    }

    fn times(self, c: Q) -> Self {
        if self.is_zero_node() {
            return self;
        }
        if num_traits::Zero::is_zero(&c) {
            return Self::zero_like(self.bidegree(), self.is_lie());
        }
        Expr::Scale(c, Box::new(self))
    }

    fn br(a: Expr, b: Expr) -> Self {
        let (x, y) = (a.bidegree(), b.bidegree());
        if a.is_zero_node() || b.is_zero_node() {
            return Self::zero_like((x.0 + y.0, x.1 + y.1), true);
        }
        Expr::Bracket(Box::new(a), Box::new(b))
    }

    fn ac(a: Expr, b: Expr) -> Self {
        let (x, y) = (a.bidegree(), b.bidegree());
        if a.is_zero_node() || b.is_zero_node() {
            return Self::zero_like((x.0 + y.0, x.1 + y.1), false);
        }
        Expr::Act(Box::new(a), Box::new(b))
    }

    fn check_same(&self, other: &Expr) -> Result<()> {
        if self.bidegree() == other.bidegree() && self.is_lie() == other.is_lie() {
            Ok(())
        } else {
            Err(Error::ValueSpaceMismatch(format!("cannot add `{self}` and `{other}`")))
        }
    }

    pub fn add(self, other: Expr) -> Result<Self> {
        self.check_same(&other)?;
        Ok(self.plus(other))
    }

    pub fn sub(self, other: Expr) -> Result<Self> {
        self.check_same(&other)?;
        Ok(self.plus(other.times(sign_q(true))))
    }

    pub fn scale(self, c: Q) -> Self {
        self.times(c)
    }

    pub fn bracket(self, other: Expr) -> Result<Self> {
        if !self.is_lie() || !other.is_lie() {
            return Err(Error::ValueSpaceMismatch(format!("bracket of `{self}` and `{other}`")));
        }
        Ok(Self::br(self, other))
    }

    pub fn act(self, other: Expr) -> Result<Self> {
        if !self.is_lie() || other.is_lie() {
            return Err(Error::ValueSpaceMismatch(format!("action of `{self}` on `{other}`")));
        }
        Ok(Self::ac(self, other))
    }

    fn derivation(&self, on_gen: &impl Fn(Generator) -> Expr, shift: (usize, usize)) -> Expr {
        match self {
            Expr::Gen(g) => on_gen(*g),
            Expr::Zero { bidegree, lie } => Self::zero_like((bidegree.0 + shift.0, bidegree.1 + shift.1), *lie),
            Expr::Sum(a, b) => a.derivation(on_gen, shift).plus(b.derivation(on_gen, shift)),
            Expr::Scale(c, a) => a.derivation(on_gen, shift).times(c.clone()),
            Expr::Bracket(a, b) | Expr::Act(a, b) => {
                let odd = a.total_degree() % 2 == 1;
                let left = a.derivation(on_gen, shift);
                let right = b.derivation(on_gen, shift);
                let (l, r) = if matches!(self, Expr::Bracket(..)) {
                    (Self::br(left, (**b).clone()), Self::br((**a).clone(), right))
                } else {
                    (Self::ac(left, (**b).clone()), Self::ac((**a).clone(), right))
                };
                l.plus(r.times(sign_q(odd)))
            }
        }
    }

    /// The exterior derivative as an odd derivation on the generators.
    pub fn d(&self) -> Expr {
        self.derivation(
            &|g| match g {
                Generator::Potential => Expr::Gen(Generator::DPotential),
                Generator::Ghost => Expr::Gen(Generator::DGhost),
                Generator::Matter => Expr::Gen(Generator::DMatter),
                other => {
                    let (p, q) = other.bidegree();
                    Self::zero_like((p + 1, q), other.is_lie())
                }
            },
            (1, 0),
        )
    }

    /// The BRST differential: `sA = −dc − [A, c]`, `sc = −½[c, c]`,
    /// `sφ = −ρ_*(c)φ`, and on differentials `s d = −d s`.
    pub fn s(&self) -> Expr {
        self.derivation(&brst_generator, (0, 1))
    }
}

fn brst_generator(g: Generator) -> Expr {
    use Generator::*;
    let e = Expr::Gen;
    let neg = |x: Expr| x.times(sign_q(true));
    match g {
        Potential => neg(e(DGhost)).plus(neg(Expr::br(e(Potential), e(Ghost)))),
        Ghost => Expr::br(e(Ghost), e(Ghost)).times(crate::coeff::q(-1, 2)),
        Matter => neg(Expr::ac(e(Ghost), e(Matter))),
        DPotential => Expr::br(e(DPotential), e(Ghost)).plus(neg(Expr::br(e(Potential), e(DGhost)))),
        DGhost => Expr::br(e(DGhost), e(Ghost)),
        DMatter => Expr::ac(e(DGhost), e(Matter)).plus(neg(Expr::ac(e(Ghost), e(DMatter)))),
    }
}

/// Concrete values of the generators: a potential, a matter field, and a
/// ghost `c = Σ_a τ_a Σ_b K_ab(x) c^b` over abstract odd `c^b`.
#[derive(Clone, Debug)]
pub struct BrstModel {
    rep: Representation,
    values: BTreeMap<Generator, GhostElement>,
}

impl BrstModel {
    pub fn new(chart: &Chart, potential: &LocalField, matter: &LocalField, ghost: &[Vec<RF>]) -> Result<Self> {
        potential.expect(FieldKind::Potential)?;
        matter.expect(FieldKind::Matter)?;
        let d = chart.n_group();
        if ghost.len() != d || ghost.iter().any(|row| row.len() != d || !row.iter().all(|k| on_base(chart, k))) {
            return Err(Error::Invalid(format!("ghost coefficients must form a {d}×{d} matrix of base functions")));
        }
        let mut c = GhostElement::zero(chart.dim(), (0, 1), chart.lie());
        for b in 0..d {
            let comps: Vec<RF> = (0..d).map(|a| ghost[a][b].clone()).collect();
            let f = DifferentialForm::valued_function(chart.dim(), chart.lie(), comps);
            c = c.add(&GhostElement::from_monomial(&[b], f))?;
        }
        let a = GhostElement::from_form(potential.form.clone());
        let phi = GhostElement::from_form(matter.form.clone());
        let mut values = BTreeMap::new();
        values.insert(Generator::DPotential, a.ext_d());
        values.insert(Generator::Potential, a);
        values.insert(Generator::DGhost, c.ext_d());
        values.insert(Generator::Ghost, c);
        values.insert(Generator::DMatter, phi.ext_d());
        values.insert(Generator::Matter, phi);
        Ok(BrstModel { rep: matter.rep.clone(), values })
    }

    /// Ghost components equal to the abstract generators themselves.
    pub fn with_unit_ghost(chart: &Chart, potential: &LocalField, matter: &LocalField) -> Result<Self> {
        let d = chart.n_group();
        let k: Vec<Vec<RF>> = (0..d).map(|a| (0..d).map(|b| if a == b { RF::one() } else { RF::zero() }).collect()).collect();
        Self::new(chart, potential, matter, &k)
    }

    pub fn value(&self, g: Generator) -> &GhostElement {
        &self.values[&g]
    }

    pub fn eval(&self, chart: &Chart, e: &Expr) -> Result<GhostElement> {
        match e {
            Expr::Gen(g) => Ok(self.values[g].clone()),
            Expr::Zero { bidegree, lie } => {
                let space = if *lie { chart.lie() } else { self.values[&Generator::Matter].space() };
                Ok(GhostElement::zero(chart.dim(), *bidegree, space))
            }
            Expr::Sum(a, b) => self.eval(chart, a)?.add(&self.eval(chart, b)?),
            Expr::Scale(c, a) => Ok(self.eval(chart, a)?.scale(&RF::constant(c.clone()))),
            Expr::Bracket(a, b) => self.eval(chart, a)?.bracket(chart, &self.eval(chart, b)?),
            Expr::Act(a, b) => self.eval(chart, a)?.act(chart, &self.rep, &self.eval(chart, b)?),
        }
    }

    /// `s(e)` evaluated.
    pub fn brst(&self, chart: &Chart, e: &Expr) -> Result<GhostElement> {
        self.eval(chart, &e.s())
    }

    /// `s(s(e))` evaluated; zero when the differential is nilpotent on `e`.
    pub fn nilpotency_residual(&self, chart: &Chart, e: &Expr) -> Result<GhostElement> {
        self.eval(chart, &e.s().s())
    }

    /// `s(d e) + d(s e)` evaluated.
    pub fn anticommutation_residual(&self, chart: &Chart, e: &Expr) -> Result<GhostElement> {
        self.eval(chart, &e.d().s())?.add(&self.eval(chart, &e.s().d())?)
    }
}

/// Generators, the curvature, and ghost-degree ≤ 2 composites.
pub fn brst_panel() -> Vec<Expr> {
    use Generator::*;
    let e = Expr::Gen;
    let f = Expr::curvature();
    vec![
        e(Potential),
        e(Ghost),
        e(Matter),
        f.clone(),
        e(DPotential),
        e(DGhost),
        e(DMatter),
        Expr::br(e(Potential), e(Ghost)),
        Expr::br(e(Ghost), e(Ghost)),
        Expr::ac(e(Ghost), e(Matter)),
        Expr::ac(e(Potential), e(Matter)),
        Expr::br(f.clone(), e(Ghost)),
        Expr::br(e(DGhost), e(Ghost)),
        Expr::br(e(Potential), Expr::br(e(Ghost), e(Ghost))),
        Expr::ac(Expr::br(e(Ghost), e(Ghost)), e(Matter)),
        Expr::ac(e(DGhost), e(DMatter)),
        Expr::ac(e(Potential), e(DMatter)).plus(Expr::ac(f, e(Matter))),
    ]
}
