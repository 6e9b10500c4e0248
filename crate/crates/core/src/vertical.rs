//! Group-valued maps `γ(x, θ)` and the vertical diffeomorphisms
//! `ψ(x, θ) = (x, θ·γ(x, θ))` they induce, together with the finite and
//! infinitesimal transformations of connections and tensorial forms.
//!
//! Nothing here enumerates points: every statement is an identity of
//! rational functions in the chart coordinates and the auxiliary block `g`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fn_calculus::verticality_lift;
use crate::forms::{Chart, DifferentialForm, RationalChartMap, ValueSpace, VectorField};
use crate::group::{LieAlgValuedMap, Representation};
use crate::{RationalFunction as RF, Subst};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerticalKind {
    General,
    /// Independent of the fiber coordinates.
    BaseOnly,
    /// `R_g^* γ = g⁻¹γg`.
    Equivariant,
    /// `R_g^* u = g⁻¹u`.
    Dressing,
}

impl VerticalKind {
    pub fn name(self) -> &'static str {
        match self {
            VerticalKind::General => "general",
            VerticalKind::BaseOnly => "base_only",
            VerticalKind::Equivariant => "equivariant",
            VerticalKind::Dressing => "dressing",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [VerticalKind::General, VerticalKind::BaseOnly, VerticalKind::Equivariant, VerticalKind::Dressing]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

impl fmt::Display for VerticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A group-valued map on the chart, in the group's parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalMap {
    model: String,
    kind: VerticalKind,
    params: Vec<RF>,
}

fn theta_subst(chart: &Chart, images: &[RF]) -> Subst {
    Subst::from_pairs(chart.group_vars().into_iter().zip(images.iter().cloned()))
}

fn g_subst(chart: &Chart, images: &[RF]) -> Subst {
    Subst::from_pairs(chart.g_vars().into_iter().zip(images.iter().cloned()))
}

fn substitute_all(params: &[RF], s: &Subst) -> Result<Vec<RF>> {
    params.iter().map(|p| p.substitute(s)).collect()
}

impl VerticalMap {
    /// Builds a map of the declared kind, verifying the kind identically.
    pub fn new(chart: &Chart, kind: VerticalKind, params: Vec<RF>) -> Result<Self> {
        let g = chart.group();
        if params.len() != g.dim() {
            return Err(Error::Invalid(format!("group `{}` needs {} parameters, got {}", g.name(), g.dim(), params.len())));
        }
        let gv = chart.g_vars();
        if params.iter().any(|p| gv.iter().any(|&v| p.contains_var(v))) {
            return Err(Error::Invalid("vertical map parameters may not use the auxiliary block".into()));
        }
        let m = VerticalMap { model: g.name().to_string(), kind: VerticalKind::General, params };
        if !m.satisfies(chart, kind)? {
            return Err(Error::InvariantViolation(format!("map is not of kind `{kind}`")));
        }
        Ok(VerticalMap { kind, ..m })
    }

    /// Map whose kind holds by construction; skips the symbolic check.
    fn constructed(chart: &Chart, kind: VerticalKind, params: Vec<RF>) -> Self {
        VerticalMap { model: chart.group().name().to_string(), kind, params }
    }

    pub fn general(chart: &Chart, params: Vec<RF>) -> Result<Self> {
        Self::new(chart, VerticalKind::General, params)
    }

    pub fn base_only(chart: &Chart, params: Vec<RF>) -> Result<Self> {
        Self::new(chart, VerticalKind::BaseOnly, params)
    }

    pub fn identity(chart: &Chart) -> Self {
        VerticalMap { model: chart.group().name().to_string(), kind: VerticalKind::BaseOnly, params: chart.group().identity_params() }
    }

    /// `h(θ)⁻¹ ĝ(x) h(θ)` from a base-only seed.
    pub fn equivariant_from_seed(chart: &Chart, seed: &[RF]) -> Result<Self> {
        check_seed(chart, seed)?;
        let g = chart.group();
        let th = chart.thetas();
        let p = g.mul(&g.mul(&g.inv(&th)?, seed)?, &th)?;
        Ok(Self::constructed(chart, VerticalKind::Equivariant, p))
    }

    /// `h(θ)⁻¹ û(x)` from a base-only seed.
    pub fn dressing_from_seed(chart: &Chart, seed: &[RF]) -> Result<Self> {
        check_seed(chart, seed)?;
        let g = chart.group();
        let p = g.mul(&g.inv(&chart.thetas())?, seed)?;
        Ok(Self::constructed(chart, VerticalKind::Dressing, p))
    }

    pub fn kind(&self) -> VerticalKind {
        self.kind
    }

    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn params(&self) -> &[RF] {
        &self.params
    }

    fn check_model(&self, chart: &Chart) -> Result<()> {
        if self.model != chart.group().name() {
            return Err(Error::ModelMismatch(self.model.clone(), chart.group().name().to_string()));
        }
        Ok(())
    }

    /// Decides the kind condition identically in the chart and aux block.
    pub fn satisfies(&self, chart: &Chart, kind: VerticalKind) -> Result<bool> {
        self.check_model(chart)?;
        let g = chart.group();
        match kind {
            VerticalKind::General => Ok(true),
            VerticalKind::BaseOnly => Ok(self.params.iter().all(|p| chart.is_base_only(p))),
            VerticalKind::Equivariant | VerticalKind::Dressing => {
                let gp = chart.g_params();
                let rt = theta_subst(chart, &chart.right_translation()?.images()[chart.n_base()..]);
                let lhs = substitute_all(&self.params, &rt)?;
                let left = g.mul(&g.inv(&gp)?, &self.params)?;
                let rhs = if kind == VerticalKind::Equivariant { g.mul(&left, &gp)? } else { left };
                Ok(lhs == rhs)
            }
        }
    }

    /// `(x, θ) ↦ (x, θ·γ(x, θ))`.
    pub fn induced_diffeo(&self, chart: &Chart) -> Result<RationalChartMap> {
        self.check_model(chart)?;
        chart.right_translation_by(&self.params)
    }

    /// `γ ∘ φ` for a chart map `φ`.
    pub fn precompose(&self, map: &RationalChartMap) -> Result<Vec<RF>> {
        substitute_all(&self.params, &map.subst())
    }

    /// Pointwise inverse `γ(x, θ)⁻¹`.
    pub fn pointwise_inverse(&self, chart: &Chart) -> Result<Vec<RF>> {
        chart.group().inv(&self.params)
    }
}

fn check_seed(chart: &Chart, seed: &[RF]) -> Result<()> {
    if seed.len() != chart.group().dim() || !seed.iter().all(|p| chart.is_base_only(p)) {
        return Err(Error::Invalid("seed must list base-only parameters".into()));
    }
    Ok(())
}

/// `γ·(η ∘ R_γ)`: the map inducing `ψ_η ∘ ψ_γ`.
pub fn compose_vertical(chart: &Chart, gamma: &VerticalMap, eta: &VerticalMap) -> Result<VerticalMap> {
    gamma.check_model(chart)?;
    eta.check_model(chart)?;
    let psi = gamma.induced_diffeo(chart)?;
    let params = chart.group().mul(&gamma.params, &eta.precompose(&psi)?)?;
    let kind = match (gamma.kind, eta.kind) {
        (VerticalKind::BaseOnly, VerticalKind::BaseOnly) => VerticalKind::BaseOnly,
        (VerticalKind::Equivariant, VerticalKind::Equivariant) => VerticalKind::Equivariant,
        _ => VerticalKind::General,
    };
    Ok(VerticalMap { model: gamma.model.clone(), kind, params })
}

/// Left fold of [`compose_vertical`]: `γ₁` acts first.
pub fn iterate_compose(chart: &Chart, maps: &[VerticalMap]) -> Result<VerticalMap> {
    let (first, rest) = maps.split_first().ok_or_else(|| Error::Invalid("empty composition".into()))?;
    first.check_model(chart)?;
    rest.iter().try_fold(first.clone(), |acc, m| compose_vertical(chart, &acc, m))
}

/// Closed-form inverse for base-only and equivariant maps.
pub fn invert_vertical(chart: &Chart, gamma: &VerticalMap) -> Result<VerticalMap> {
    match gamma.kind {
        VerticalKind::BaseOnly | VerticalKind::Equivariant => {
            Ok(VerticalMap { model: gamma.model.clone(), kind: gamma.kind, params: gamma.pointwise_inverse(chart)? })
        }
        k => Err(Error::NoClosedForm(k.name().into())),
    }
}

/// Checks both composition orders against the identity.
pub fn verify_inverse(chart: &Chart, gamma: &VerticalMap, candidate: &VerticalMap) -> Result<bool> {
    let id = chart.group().identity_params();
    Ok(compose_vertical(chart, gamma, candidate)?.params == id && compose_vertical(chart, candidate, gamma)?.params == id)
}

/// `Σ_a ξ^a (τ_a)^v` with the fundamental fields evaluated at `ψ_γ(p)`.
pub fn vertical_at_image(chart: &Chart, gamma: &VerticalMap, xi: &[RF]) -> Result<VectorField> {
    let s = theta_subst(chart, &gamma.induced_diffeo(chart)?.images()[chart.n_base()..]);
    let mut out = chart.zero_field();
    for (a, x) in xi.iter().enumerate() {
        if !x.is_zero() {
            out = out.add(&chart.basis_field(a).substitute(&s)?.scale(x));
        }
    }
    Ok(out)
}

/// `dγ(X)·γ⁻¹` as algebra components.
fn right_log_derivative(chart: &Chart, gamma: &VerticalMap, x: &VectorField) -> Result<Vec<RF>> {
    let g = chart.group();
    let h = g.h(&gamma.params)?;
    let dh = h.map(|e| x.apply(e));
    g.expand(&(&dh * &h.inverse()?))
}

/// `γ⁻¹·dγ(X)` as algebra components.
pub fn left_log_derivative(chart: &Chart, gamma: &VerticalMap, x: &VectorField) -> Result<Vec<RF>> {
    let g = chart.group();
    let h = g.h(&gamma.params)?;
    let dh = h.map(|e| x.apply(e));
    g.expand(&(&h.inverse()? * &dh))
}

/// `ψ_*X = R_{γ(p)*}(X + [dγ(X)γ⁻¹]^v)`, as components along `ψ` written in
/// source coordinates.
pub fn pushforward(chart: &Chart, gamma: &VerticalMap, x: &VectorField) -> Result<VectorField> {
    let xi = right_log_derivative(chart, gamma, x)?;
    let y = x.add(&chart.fundamental_field_comps(&xi));
    let rt = chart.right_translation()?;
    let frozen = g_subst(chart, &gamma.params);
    rt.push_along(&y).substitute(&frozen)
}

/// The Jacobian of the induced diffeomorphism applied to `X`.
pub fn pushforward_jacobian(chart: &Chart, gamma: &VerticalMap, x: &VectorField) -> Result<VectorField> {
    Ok(gamma.induced_diffeo(chart)?.push_along(x))
}

/// `Ad_{γ⁻¹}X + γ⁻¹X^v(γ)`: the algebra element whose fundamental field at
/// `ψ(p)` is the pushforward of `X^v`.
pub fn pushed_generator(chart: &Chart, gamma: &VerticalMap, x: &LieAlgValuedMap) -> Result<Vec<RF>> {
    let g = chart.group();
    let xv = chart.fundamental_field(x)?;
    let ad = g.adjoint_comps(&gamma.pointwise_inverse(chart)?, x.comps())?;
    let lg = left_log_derivative(chart, gamma, &xv)?;
    Ok(ad.iter().zip(&lg).map(|(a, b)| a + b).collect())
}

pub fn pullback_along(chart: &Chart, gamma: &VerticalMap, b: &DifferentialForm) -> Result<DifferentialForm> {
    b.pullback(&gamma.induced_diffeo(chart)?)
}

/// `Ad_{γ⁻¹}ω + γ⁻¹dγ`.
pub fn transform_connection(chart: &Chart, omega: &DifferentialForm, gamma: &VerticalMap) -> Result<DifferentialForm> {
    gamma.check_model(chart)?;
    let ad = chart.adjoint_form(&gamma.pointwise_inverse(chart)?, omega)?;
    ad.add(&chart.log_derivative(&gamma.params)?)
}

/// `ρ(γ⁻¹)α`.
pub fn transform_tensorial(chart: &Chart, rep: &Representation, alpha: &DifferentialForm, gamma: &VerticalMap) -> Result<DifferentialForm> {
    gamma.check_model(chart)?;
    check_rep_space(rep, alpha)?;
    chart.rep_form(rep, &gamma.pointwise_inverse(chart)?, alpha)
}

fn check_rep_space(rep: &Representation, alpha: &DifferentialForm) -> Result<()> {
    match alpha.space() {
        ValueSpace::Rep(n) | ValueSpace::Lie(n) if n == rep.dim() => Ok(()),
        s => Err(Error::ValueSpaceMismatch(format!("{s:?} for a representation of dimension {}", rep.dim()))),
    }
}

/// Residuals of the membership conditions for a valued form.
#[derive(Clone, Debug)]
pub struct Membership {
    /// One residual per algebra basis element: `ω(τ_a^v) − τ_a` for
    /// connections, `ι_{τ_a^v} α` for tensorial and basic forms.
    pub vertical: Vec<DifferentialForm>,
    /// `R_g^* b` minus its required image.
    pub equivariance: DifferentialForm,
}

impl Membership {
    pub fn vertical_ok(&self) -> bool {
        self.vertical.iter().all(DifferentialForm::is_zero)
    }

    pub fn equivariance_ok(&self) -> bool {
        self.equivariance.is_zero()
    }

    pub fn holds(&self) -> bool {
        self.vertical_ok() && self.equivariance_ok()
    }
}

fn horizontality(chart: &Chart, b: &DifferentialForm) -> Vec<DifferentialForm> {
    (0..chart.n_group()).map(|a| b.interior(&chart.basis_field(a))).collect()
}

pub fn connection_membership(chart: &Chart, omega: &DifferentialForm) -> Result<Membership> {
    if omega.space() != chart.lie() || omega.degree() != 1 {
        return Err(Error::ValueSpaceMismatch("a connection is a Lie-valued 1-form".into()));
    }
    let g = chart.group();
    let vertical = (0..g.dim())
        .map(|a| {
            let basis = DifferentialForm::valued_function(chart.dim(), chart.lie(), g.basis_elem(a).into_comps());
            omega.interior(&chart.basis_field(a)).sub(&basis)
        })
        .collect::<Result<_>>()?;
    let gp = chart.g_params();
    let lhs = omega.pullback(&chart.right_translation()?)?;
    let rhs = chart.adjoint_form(&g.inv(&gp)?, omega)?;
    Ok(Membership { vertical, equivariance: lhs.sub(&rhs)? })
}

pub fn tensorial_membership(chart: &Chart, rep: &Representation, alpha: &DifferentialForm) -> Result<Membership> {
    check_rep_space(rep, alpha)?;
    let gp = chart.g_params();
    let lhs = alpha.pullback(&chart.right_translation()?)?;
    let rhs = chart.rep_form(rep, &chart.group().inv(&gp)?, alpha)?;
    Ok(Membership { vertical: horizontality(chart, alpha), equivariance: lhs.sub(&rhs)? })
}

/// Horizontal and invariant under every right translation.
pub fn basic_membership(chart: &Chart, b: &DifferentialForm) -> Result<Membership> {
    let lhs = b.pullback(&chart.right_translation()?)?;
    Ok(Membership { vertical: horizontality(chart, b), equivariance: lhs.sub(b)? })
}

pub fn is_connection(chart: &Chart, omega: &DifferentialForm) -> Result<bool> {
    Ok(connection_membership(chart, omega)?.holds())
}

pub fn is_tensorial(chart: &Chart, rep: &Representation, alpha: &DifferentialForm) -> Result<bool> {
    Ok(tensorial_membership(chart, rep, alpha)?.holds())
}

pub fn is_basic(chart: &Chart, b: &DifferentialForm) -> Result<bool> {
    Ok(basic_membership(chart, b)?.holds())
}

/// A verified connection 1-form.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    form: DifferentialForm,
}

impl Connection {
    pub fn new(chart: &Chart, form: DifferentialForm) -> Result<Self> {
        let m = connection_membership(chart, &form)?;
        if !m.vertical_ok() {
            return Err(Error::InvariantViolation("connection does not reproduce the generators".into()));
        }
        if !m.equivariance_ok() {
            return Err(Error::InvariantViolation("connection is not Ad-equivariant".into()));
        }
        Ok(Connection { form })
    }

    /// `Ad_{h(θ)⁻¹}A + h(θ)⁻¹dh(θ)` for a potential `A` on the base.
    pub fn from_potential(chart: &Chart, a: &DifferentialForm) -> Result<Self> {
        if a.space() != chart.lie() || a.degree() != 1 || !a.avoids(&chart.group_vars()) {
            return Err(Error::Invalid("a potential is a Lie-valued 1-form on the base".into()));
        }
        let g = chart.group();
        let ad = chart.adjoint_form(&g.inv(&chart.thetas())?, a)?;
        Self::new(chart, ad.add(&chart.maurer_cartan_form())?)
    }

    pub fn form(&self) -> &DifferentialForm {
        &self.form
    }

    pub fn into_form(self) -> DifferentialForm {
        self.form
    }

    pub fn curvature(&self, chart: &Chart) -> Result<DifferentialForm> {
        curvature(chart, &self.form)
    }
}

/// A verified tensorial form for a representation.
#[derive(Clone, Debug)]
pub struct TensorialForm {
    form: DifferentialForm,
    rep: Representation,
}

impl TensorialForm {
    pub fn new(chart: &Chart, rep: &Representation, form: DifferentialForm) -> Result<Self> {
        let m = tensorial_membership(chart, rep, &form)?;
        if !m.vertical_ok() {
            return Err(Error::InvariantViolation("tensorial form is not horizontal".into()));
        }
        if !m.equivariance_ok() {
            return Err(Error::InvariantViolation(format!("tensorial form is not {}-equivariant", rep.name())));
        }
        Ok(TensorialForm { form, rep: rep.clone() })
    }

    /// `ρ(h(θ))⁻¹ α̂` for a representation-valued form `α̂` on the base.
    pub fn from_seed(chart: &Chart, rep: &Representation, seed: &DifferentialForm) -> Result<Self> {
        check_rep_space(rep, seed)?;
        if !seed.avoids(&chart.group_vars()) {
            return Err(Error::Invalid("a tensorial seed lives on the base".into()));
        }
        let form = chart.rep_form(rep, &chart.group().inv(&chart.thetas())?, seed)?;
        Self::new(chart, rep, form)
    }

    pub fn form(&self) -> &DifferentialForm {
        &self.form
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }
}

/// `dω + ½[ω ∧ ω]`.
pub fn curvature(chart: &Chart, omega: &DifferentialForm) -> Result<DifferentialForm> {
    let sq = chart.bracket_wedge(omega, omega)?;
    omega.ext_d().add(&sq.scale(&RF::constant(crate::coeff::q(1, 2))))
}

/// `dα + ρ_*(ω) ∧ α`, for any Lie-valued 1-form `ω`.
pub fn covariant_derivative(
    chart: &Chart,
    rep: &Representation,
    omega: &DifferentialForm,
    alpha: &DifferentialForm,
) -> Result<DifferentialForm> {
    check_rep_space(rep, alpha)?;
    let space = alpha.space();
    let as_rep = alpha.map_values_into(ValueSpace::Rep(rep.dim()), <[RF]>::to_vec);
    let act = chart.act_wedge(rep, omega, &as_rep)?.map_values_into(space, <[RF]>::to_vec);
    alpha.ext_d().add(&act)
}

/// Pullback along `p ↦ p·u(p)` for a dressing map `u`.
pub fn dress(chart: &Chart, b: &DifferentialForm, u: &VerticalMap) -> Result<DifferentialForm> {
    if u.kind != VerticalKind::Dressing {
        return Err(Error::KindMismatch { expected: "dressing".into(), found: u.kind.name().into() });
    }
    pullback_along(chart, u, b)
}

fn lie_function(chart: &Chart, x: &LieAlgValuedMap) -> DifferentialForm {
    DifferentialForm::valued_function(chart.dim(), chart.lie(), x.comps().to_vec())
}

/// `L_{X^v}ω = dX + [ω, X]`.
pub fn nl_vertical_connection(chart: &Chart, x: &LieAlgValuedMap, omega: &DifferentialForm) -> Result<DifferentialForm> {
    chart.group().check_elem(x)?;
    let xf = lie_function(chart, x);
    xf.ext_d().add(&chart.bracket_wedge(omega, &xf)?)
}

/// `L_{X^v}α = −ρ_*(X)α`.
pub fn nl_vertical_tensorial(
    chart: &Chart,
    rep: &Representation,
    x: &LieAlgValuedMap,
    alpha: &DifferentialForm,
) -> Result<DifferentialForm> {
    chart.group().check_elem(x)?;
    check_rep_space(rep, alpha)?;
    let m = rep.rho_star(x.comps()).scale(&RF::from_int(-1));
    Ok(alpha.apply_matrix(&m, alpha.space()))
}

/// `L_{X^v}` applied to the form directly through the verticality lift.
pub fn nl_vertical_direct(chart: &Chart, x: &LieAlgValuedMap, b: &DifferentialForm) -> Result<DifferentialForm> {
    Ok(verticality_lift(chart, x)?.nl_derivative(b))
}
