use std::fmt::Write;

use super::field::{RationalChartMap, VectorField};
use super::form::{mask_indices, DifferentialForm, ValueSpace};
use crate::coeff::{parse_expr, Var, VariableRegistry};
use crate::error::{Error, Result};
use crate::group::{Group, LieAlgValuedMap, Representation};
use crate::{RationalFunction as RF, Q};

/// The trivialized chart `U × H` with coordinates `x¹..xⁿ, θ¹..θᵈ`, plus an
/// auxiliary parameter block `g` standing for an arbitrary group element.
#[derive(Debug)]
pub struct Chart {
    reg: VariableRegistry,
    group: Group,
    n: usize,
    d: usize,
    tangents: Vec<Vec<RF>>,
    mc: Vec<Vec<RF>>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(group: Group, base: &[S], params: &[S], aux: &[S]) -> Result<Self> {
        let d = group.dim();
        if params.len() != d {
            return Err(Error::Invalid(format!("group `{}` needs {d} parameter names", group.name())));
        }
        let n = base.len();
        if n + d > 32 {
            return Err(Error::Invalid("chart dimension above 32".into()));
        }
        let taken: Vec<&str> = base.iter().chain(params).chain(aux).map(AsRef::as_ref).collect();
        let mut prefix = String::from("g");
        while (1..=d).any(|i| taken.contains(&format!("{prefix}{i}").as_str())) {
            prefix.push('_');
        }
        let mut aux_names: Vec<String> = (1..=d).map(|i| format!("{prefix}{i}")).collect();
        aux_names.extend(aux.iter().map(|s| s.as_ref().to_string()));
        let base: Vec<String> = base.iter().map(|s| s.as_ref().to_string()).collect();
        let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        let reg = VariableRegistry::new(&base, &params, &aux_names)?;
        let theta: Vec<RF> = reg.group_vars().into_iter().map(RF::var).collect();
        let tangents = (0..d).map(|a| group.tangent(a, &theta)).collect::<Result<_>>()?;
        let mc = group.maurer_cartan(&theta)?;
        Ok(Chart { reg, group, n, d, tangents, mc })
    }

    /// Chart with base coordinates `x1..xn` and parameters `t1..td`.
    pub fn standard(group: Group, n: usize) -> Result<Self> {
        let base: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let params: Vec<String> = (1..=group.dim()).map(|i| format!("t{i}")).collect();
        Self::new(group, &base, &params, &[])
    }

    pub fn registry(&self) -> &VariableRegistry {
        &self.reg
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Total number of coordinates `n + d`.
    pub fn dim(&self) -> usize {
        self.n + self.d
    }

    pub fn n_base(&self) -> usize {
        self.n
    }

    pub fn n_group(&self) -> usize {
        self.d
    }

    pub fn lie(&self) -> ValueSpace {
        ValueSpace::Lie(self.d)
    }

    pub fn x(&self, i: usize) -> RF {
        RF::var(self.reg.base_var(i))
    }

    pub fn theta(&self, i: usize) -> RF {
        RF::var(self.reg.group_var(i))
    }

    pub fn thetas(&self) -> Vec<RF> {
        (0..self.d).map(|i| self.theta(i)).collect()
    }

    pub fn base_vars(&self) -> Vec<Var> {
        self.reg.base_vars()
    }

    pub fn group_vars(&self) -> Vec<Var> {
        self.reg.group_vars()
    }

    /// The symbolic right-translation element.
    pub fn g_params(&self) -> Vec<RF> {
        (0..self.d).map(|i| RF::var(self.reg.aux_var(i))).collect()
    }

    pub fn g_vars(&self) -> Vec<Var> {
        (0..self.d).map(|i| self.reg.aux_var(i)).collect()
    }

    pub fn parse(&self, src: &str) -> Result<RF> {
        parse_expr::<Q>(src, &self.reg)
    }

    pub fn function(&self, f: RF) -> DifferentialForm {
        DifferentialForm::function(self.dim(), f)
    }

    pub fn zero_form(&self, degree: usize, space: ValueSpace) -> DifferentialForm {
        DifferentialForm::zero(self.dim(), degree, space)
    }

    pub fn d_coord(&self, i: usize) -> DifferentialForm {
        DifferentialForm::coordinate_differential(self.dim(), i)
    }

    pub fn is_base_only(&self, f: &RF) -> bool {
        self.group_vars().iter().all(|&v| !f.contains_var(v))
    }

    pub fn zero_field(&self) -> VectorField {
        VectorField::zero(self.dim())
    }

    /// `X^v` with `X^v_p = d/dt p·exp(tX(p))`.
    pub fn fundamental_field(&self, x: &LieAlgValuedMap) -> Result<VectorField> {
        self.group.check_elem(x)?;
        Ok(self.fundamental_field_comps(x.comps()))
    }

    pub fn fundamental_field_comps(&self, x: &[RF]) -> VectorField {
        let mut comps = vec![RF::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (i, t) in self.tangents[a].iter().enumerate() {
                if !t.is_zero() {
                    comps[self.n + i] = &comps[self.n + i] + &(xa * t);
                }
            }
        }
        VectorField::new(comps)
    }

    pub fn basis_field(&self, a: usize) -> VectorField {
        let mut comps = vec![RF::zero(); self.dim()];
        for (i, t) in self.tangents[a].iter().enumerate() {
            comps[self.n + i] = t.clone();
        }
        VectorField::new(comps)
    }

    /// `γ⁻¹dγ` for a parameter-valued map `γ`.
    pub fn log_derivative(&self, gamma: &[RF]) -> Result<DifferentialForm> {
        let mc = self.group.maurer_cartan(gamma)?;
        let mut out = self.zero_form(1, self.lie());
        for j in 0..self.dim() {
            let v = Var(j as u32);
            let mut acc = vec![RF::zero(); self.d];
            for (i, g) in gamma.iter().enumerate() {
                let dg = g.derive(v);
                if dg.is_zero() {
                    continue;
                }
                for (a, m) in mc[i].iter().enumerate() {
                    if !m.is_zero() {
                        acc[a] = &acc[a] + &(&dg * m);
                    }
                }
            }
            out.add_term(1 << j, acc);
        }
        Ok(out)
    }

    /// Maurer-Cartan form `h(θ)⁻¹dh(θ)` of the chart coordinates.
    pub fn maurer_cartan_form(&self) -> DifferentialForm {
        let mut out = self.zero_form(1, self.lie());
        for i in 0..self.d {
            out.add_term(1 << (self.n + i), self.mc[i].clone());
        }
        out
    }

    /// `(x, θ) ↦ (x, θ·g)` with `g` the auxiliary block.
    pub fn right_translation(&self) -> Result<RationalChartMap> {
        self.right_translation_by(&self.g_params())
    }

    pub fn right_translation_by(&self, g: &[RF]) -> Result<RationalChartMap> {
        let mut images: Vec<RF> = (0..self.n).map(|i| self.x(i)).collect();
        images.extend(self.group.mul(&self.thetas(), g)?);
        Ok(RationalChartMap::new(images))
    }

    /// `[a ∧ b]` for Lie-valued forms, combining values by the bracket.
    pub fn bracket_wedge(&self, a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm> {
        if a.space() != self.lie() || b.space() != self.lie() {
            return Err(Error::ValueSpaceMismatch("bracket product needs Lie-valued forms".into()));
        }
        let g = &self.group;
        Ok(a.wedge_with(b, self.lie(), |x, y| g.bracket_comps(x, y)))
    }

    /// `ρ_*(ω) ∧ α`.
    pub fn act_wedge(&self, rep: &Representation, omega: &DifferentialForm, alpha: &DifferentialForm) -> Result<DifferentialForm> {
        if omega.space() != self.lie() || alpha.space() != ValueSpace::Rep(rep.dim()) {
            return Err(Error::ValueSpaceMismatch("action product needs Lie- and representation-valued forms".into()));
        }
        Ok(omega.wedge_with(alpha, alpha.space(), |w, v| rep.rho_star(w).apply(v)))
    }

    /// `Ad_{h(p)} ω` on a Lie-valued form.
    pub fn adjoint_form(&self, p: &[RF], omega: &DifferentialForm) -> Result<DifferentialForm> {
        let ad = self.group.ad_matrix(p)?;
        Ok(omega.apply_matrix(&ad, self.lie()))
    }

    /// `ρ(h(p)) α`.
    pub fn rep_form(&self, rep: &Representation, p: &[RF], alpha: &DifferentialForm) -> Result<DifferentialForm> {
        let m = rep.rho(p)?;
        Ok(alpha.apply_matrix(&m, alpha.space()))
    }

    pub fn coord_name(&self, i: usize) -> String {
        self.reg.name(Var(i as u32))
    }

    /// Canonical text rendering, one term per index set in sorted order.
    pub fn fmt_form(&self, f: &DifferentialForm) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (mask, vals)) in f.terms().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let vals: Vec<String> = vals.iter().map(|x| self.reg.fmt(x)).collect();
            if vals.len() == 1 {
                write!(s, "({})", vals[0]).unwrap();
            } else {
                write!(s, "[{}]", vals.join(", ")).unwrap();
            }
            for i in mask_indices(mask) {
                write!(s, " d{}", self.coord_name(i)).unwrap();
            }
        }
        s
    }

    pub fn fmt_field(&self, x: &VectorField) -> String {
        let parts: Vec<String> = x.comps().iter().map(|c| self.reg.fmt(c)).collect();
        format!("({})", parts.join(", "))
    }
}
