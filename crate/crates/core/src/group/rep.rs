use super::model::{slot_params, InvariantCheck};
use super::Group;
use crate::coeff::Var;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{RationalFunction as RF, Subst};

/// Finite-dimensional representation `ρ` of a group model together with its
/// differential `ρ_*` on the algebra basis.
#[derive(Clone, Debug)]
pub struct Representation {
    name: String,
    group: Group,
    rho: Matrix,
    rho_star: Vec<Matrix>,
    checks: Vec<InvariantCheck>,
}

impl Representation {
    /// `rho` is written in the group's slot variables.
    pub fn new(name: &str, group: Group, rho: Matrix, rho_star: Vec<Matrix>) -> Result<Self> {
        let n = rho.rows();
        if rho.cols() != n || rho_star.len() != group.dim() || rho_star.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Invalid(format!("representation `{name}` has inconsistent shapes")));
        }
        let mut r = Representation { name: name.to_string(), group, rho, rho_star, checks: Vec::new() };
        r.checks = r.verify()?;
        if let Some(c) = r.checks.iter().find(|c| !c.passed) {
            return Err(Error::InvariantViolation(format!("representation `{name}`: {} fails", c.name)));
        }
        Ok(r)
    }

    /// The matrices of the group acting on column vectors.
    pub fn defining(group: &Group) -> Self {
        let rho = group.parametrization().clone();
        let star = group.basis().to_vec();
        Self::new("defining", group.clone(), rho, star).expect("defining representation is valid")
    }

    /// `Ad` on component vectors, with `ρ_*(τ_a) = ad_{τ_a}`.
    pub fn adjoint(group: &Group) -> Self {
        let d = group.dim();
        let rho = group.ad_matrix(&slot_params(d, 0)).expect("slot parameters");
        let star = (0..d).map(|a| group.ad_generator(a)).collect();
        Self::new("adjoint", group.clone(), rho, star).expect("adjoint representation is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn invariant_checks(&self) -> &[InvariantCheck] {
        &self.checks
    }

    pub fn rho(&self, p: &[RF]) -> Result<Matrix> {
        let s = Subst::from_pairs(p.iter().enumerate().map(|(i, v)| (Var::slot(i as u32), v.clone())));
        self.rho.substitute(&s)
    }

    pub fn rho_star_basis(&self) -> &[Matrix] {
        &self.rho_star
    }

    /// `ρ_*(Σ ξ^a τ_a)`.
    pub fn rho_star(&self, xi: &[RF]) -> Matrix {
        let n = self.dim();
        let mut acc = Matrix::zero(n, n);
        for (x, m) in xi.iter().zip(&self.rho_star) {
            if !x.is_zero() {
                acc = &acc + &m.scale(x);
            }
        }
        acc
    }

    fn verify(&self) -> Result<Vec<InvariantCheck>> {
        let g = &self.group;
        let d = g.dim();
        let theta = slot_params(d, 0);
        let theta2 = slot_params(d, d);
        let mut checks = Vec::new();
        checks.push(InvariantCheck { name: "identity", passed: self.rho(&g.identity_params())?.is_identity() });
        let lhs = self.rho(&g.mul(&theta, &theta2)?)?;
        let rhs = &self.rho(&theta)? * &self.rho(&theta2)?;
        checks.push(InvariantCheck { name: "homomorphism", passed: lhs == rhs });
        let f = g.structure_constants();
        let mut closes = true;
        for a in 0..d {
            for b in 0..d {
                let comm = self.rho_star[a].commutator(&self.rho_star[b]);
                let mut expect = Matrix::zero(self.dim(), self.dim());
                for (c, m) in self.rho_star.iter().enumerate() {
                    expect = &expect + &m.scale(&RF::constant(f[a][b][c].clone()));
                }
                closes &= comm == expect;
            }
        }
        checks.push(InvariantCheck { name: "algebra-morphism", passed: closes });
        // ρ_*(τ_a) is the derivative of ρ along the fundamental field at the identity
        let id = g.identity_params();
        let at_id = Subst::from_pairs(id.iter().enumerate().map(|(k, x)| (Var::slot(k as u32), x.clone())));
        let mut differential = true;
        for a in 0..d {
            let v = g.tangent(a, &id)?;
            let mut acc = Matrix::zero(self.dim(), self.dim());
            for (i, vi) in v.iter().enumerate() {
                if !vi.is_zero() {
                    let dr = self.rho.derive(Var::slot(i as u32)).substitute(&at_id)?;
                    acc = &acc + &dr.scale(vi);
                }
            }
            differential &= acc == self.rho_star[a];
        }
        checks.push(InvariantCheck { name: "differential", passed: differential });
        Ok(checks)
    }
}
