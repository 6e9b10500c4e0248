use std::sync::Arc;

use crate::coeff::{parse_expr, Var, VariableRegistry};
use crate::error::{Error, Result};
use crate::matrix::{solve_many, Matrix};
use crate::{RationalFunction as RF, Subst, Q};

/// Raw data of a group model, all maps written in slot variables:
/// `Var::slot(i)` for the first parameter block and `Var::slot(d + i)` for
/// the second.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub parametrization: Matrix,
    pub mul_map: Vec<RF>,
    pub inv_map: Vec<RF>,
    pub identity: Vec<Q>,
    pub basis: Vec<Matrix>,
    /// `f[a][b][c]`; derived from the basis when absent.
    pub structure_constants: Option<Vec<Vec<Vec<Q>>>>,
}

/// Group definition as expression strings over two named parameter blocks.
#[derive(Clone, Debug, Default)]
pub struct GroupText {
    pub name: String,
    pub params: Vec<String>,
    pub params2: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub mul: Vec<String>,
    pub inv: Vec<String>,
    pub identity: Vec<String>,
    pub basis: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// A Lie-algebra-valued function, components in the basis of a named model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgValuedMap {
    model: Arc<str>,
    comps: Vec<RF>,
}

impl LieAlgValuedMap {
    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn comps(&self) -> &[RF] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<RF> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RF::is_zero)
    }

    pub fn map(&self, f: impl Fn(&RF) -> RF) -> Self {
        LieAlgValuedMap { model: self.model.clone(), comps: self.comps.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&RF) -> Result<RF>) -> Result<Self> {
        Ok(LieAlgValuedMap { model: self.model.clone(), comps: self.comps.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn with_comps(&self, comps: Vec<RF>) -> Self {
        assert_eq!(comps.len(), self.comps.len());
        LieAlgValuedMap { model: self.model.clone(), comps }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        Ok(self.with_comps(self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        Ok(self.with_comps(self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &RF) -> Self {
        self.map(|x| x * c)
    }

    fn same_model(&self, other: &Self) -> Result<()> {
        if self.model == other.model {
            Ok(())
        } else {
            Err(Error::ModelMismatch(self.model.to_string(), other.model.to_string()))
        }
    }
}

/// Matrix group with a rational chart `θ ↦ h(θ)`, its multiplication and
/// inversion in parameters, and a basis of its Lie algebra.
#[derive(Debug)]
pub struct LieGroupModel {
    name: Arc<str>,
    m: usize,
    d: usize,
    h: Matrix,
    mul: Vec<RF>,
    inv: Vec<RF>,
    identity: Vec<Q>,
    basis: Vec<Matrix>,
    f: Vec<Vec<Vec<Q>>>,
    pivots: Vec<(usize, usize)>,
    pivot_inv: Matrix,
    tangents: Vec<Vec<RF>>,
    mc: Vec<Vec<RF>>,
    ad: Matrix,
    checks: Vec<InvariantCheck>,
}

pub(crate) fn slot_params(d: usize, offset: usize) -> Vec<RF> {
    (0..d).map(|i| RF::var(Var::slot((offset + i) as u32))).collect()
}

fn slot_subst(values: &[RF], offset: usize) -> Subst {
    Subst::from_pairs(values.iter().enumerate().map(|(i, v)| (Var::slot((offset + i) as u32), v.clone())))
}

impl LieGroupModel {
    /// Builds the model and verifies every invariant exactly.
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let d = spec.mul_map.len();
        let m = spec.parametrization.rows();
        if d == 0 || m == 0 || spec.parametrization.cols() != m {
            return Err(Error::Invalid("parametrization must be a nonempty square matrix".into()));
        }
        if spec.inv_map.len() != d || spec.identity.len() != d || spec.basis.len() != d {
            return Err(Error::Invalid(format!("group `{}`: mul, inv, identity and basis must all have {d} entries", spec.name)));
        }
        if spec.basis.iter().any(|b| b.rows() != m || b.cols() != m || b.entries().iter().any(|x| x.constant_value().is_none())) {
            return Err(Error::Invalid("basis matrices must be constant and of matrix size".into()));
        }
        let allowed = |f: &RF| f.vars().iter().all(|v| v.slot_index().is_some_and(|i| (i as usize) < 2 * d));
        if !spec.mul_map.iter().all(allowed) {
            return Err(Error::Invalid("mul map uses unknown variables".into()));
        }
        let one_block = |f: &RF| f.vars().iter().all(|v| v.slot_index().is_some_and(|i| (i as usize) < d));
        if !spec.inv_map.iter().all(one_block) || !spec.parametrization.entries().iter().all(one_block) {
            return Err(Error::Invalid("parametrization and inv map must use the first parameter block only".into()));
        }

        let (pivots, pivot_inv) = basis_pivots(&spec.basis, m)
            .ok_or_else(|| Error::InvariantViolation(format!("group `{}`: algebra basis is linearly dependent", spec.name)))?;
        let mut model = LieGroupModel {
            name: Arc::from(spec.name.as_str()),
            m,
            d,
            h: spec.parametrization,
            mul: spec.mul_map,
            inv: spec.inv_map,
            identity: spec.identity,
            basis: spec.basis,
            f: Vec::new(),
            pivots,
            pivot_inv,
            tangents: Vec::new(),
            mc: Vec::new(),
            ad: Matrix::zero(d, d),
            checks: Vec::new(),
        };
        let derived = model.derive_structure_constants()?;
        let mut checks = Vec::new();
        let given_ok = match &spec.structure_constants {
            Some(f) => *f == derived,
            None => true,
        };
        model.f = derived;
        let theta = slot_params(d, 0);
        let theta2 = slot_params(d, d);

        let ident = model.identity_params();
        checks.push(InvariantCheck { name: "identity", passed: model.h(&ident)?.is_identity() });
        let hm = model.h(&model.mul(&theta, &theta2)?)?;
        let prod = &model.h(&theta)? * &model.h(&theta2)?;
        checks.push(InvariantCheck { name: "multiplication", passed: hm == prod });
        let hinv = model.h(&model.inv(&theta)?)?;
        checks.push(InvariantCheck { name: "inversion", passed: (&hinv * &model.h(&theta)?).is_identity() });
        checks.push(InvariantCheck { name: "structure-constants", passed: given_ok });
        checks.push(InvariantCheck { name: "antisymmetry", passed: model.antisymmetric() });
        checks.push(InvariantCheck { name: "jacobi", passed: model.jacobi() });
        if let Some(c) = checks.iter().find(|c| !c.passed) {
            return Err(Error::InvariantViolation(format!("group `{}`: {} law fails", model.name, c.name)));
        }

        model.tangents = model.solve_tangents()?;
        model.mc = (0..d).map(|i| model.expand(&(&hinv * &model.h.derive(Var::slot(i as u32))))).collect::<Result<_>>()?;
        let dual = (0..d).all(|a| {
            (0..d).all(|b| {
                let s: RF = (0..d).map(|i| &model.tangents[a][i] * &model.mc[i][b]).sum();
                s == if a == b { RF::one() } else { RF::zero() }
            })
        });
        checks.push(InvariantCheck { name: "tangent-duality", passed: dual });
        let mut ad = Matrix::zero(d, d);
        for b in 0..d {
            let conj = &(&model.h * &model.basis[b]) * &hinv;
            for (c, x) in model.expand(&conj)?.into_iter().enumerate() {
                ad.set(c, b, x);
            }
        }
        model.ad = ad;
        checks.push(InvariantCheck { name: "adjoint-automorphism", passed: model.ad_is_automorphism()? });
        if let Some(c) = checks.iter().find(|c| !c.passed) {
            return Err(Error::InvariantViolation(format!("group `{}`: {} fails", model.name, c.name)));
        }
        model.checks = checks;
        Ok(model)
    }

    /// Parses a definition given as expressions and builds the model.
    pub fn from_text(t: &GroupText) -> Result<Self> {
        let d = t.params.len();
        if t.params2.len() != d {
            return Err(Error::Invalid("second parameter block must match the first".into()));
        }
        let names: Vec<&str> = t.params.iter().chain(&t.params2).map(String::as_str).collect();
        let reg = VariableRegistry::new(&[] as &[&str], &names, &[])?;
        let to_slots = Subst::from_pairs((0..2 * d).map(|i| (reg.group_var(i), RF::var(Var::slot(i as u32)))));
        let expr = |s: &str| -> Result<RF> { parse_expr::<Q>(s, &reg)?.substitute(&to_slots) };
        let exprs = |v: &[String]| -> Result<Vec<RF>> { v.iter().map(|s| expr(s)).collect() };
        let matrix = |rows: &[Vec<String>]| -> Result<Matrix> {
            let rows = rows.iter().map(|r| exprs(r)).collect::<Result<Vec<_>>>()?;
            if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
                return Err(Error::Invalid("matrices must be square".into()));
            }
            Ok(Matrix::from_rows(rows))
        };
        let identity = exprs(&t.identity)?
            .into_iter()
            .map(|f| f.constant_value().ok_or_else(|| Error::Invalid("identity parameters must be constants".into())))
            .collect::<Result<Vec<_>>>()?;
        LieGroupModel::new(GroupSpec {
            name: t.name.clone(),
            parametrization: matrix(&t.matrix)?,
            mul_map: exprs(&t.mul)?,
            inv_map: exprs(&t.inv)?,
            identity,
            basis: t.basis.iter().map(|b| matrix(b)).collect::<Result<_>>()?,
            structure_constants: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix_size(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Q>>] {
        &self.f
    }

    pub fn invariant_checks(&self) -> &[InvariantCheck] {
        &self.checks
    }

    pub fn is_abelian(&self) -> bool {
        self.f.iter().flatten().flatten().all(num_traits::Zero::is_zero)
    }

    pub fn parametrization(&self) -> &Matrix {
        &self.h
    }

    pub fn identity_params(&self) -> Vec<RF> {
        self.identity.iter().cloned().map(RF::constant).collect()
    }

    fn check_len(&self, p: &[RF]) -> Result<()> {
        if p.len() == self.d {
            Ok(())
        } else {
            Err(Error::Invalid(format!("group `{}` expects {} parameters, got {}", self.name, self.d, p.len())))
        }
    }

    pub fn h(&self, p: &[RF]) -> Result<Matrix> {
        self.check_len(p)?;
        self.h.substitute(&slot_subst(p, 0))
    }

    pub fn mul(&self, p: &[RF], q: &[RF]) -> Result<Vec<RF>> {
        self.check_len(p)?;
        self.check_len(q)?;
        let mut s = slot_subst(p, 0);
        for (i, v) in q.iter().enumerate() {
            s.insert(Var::slot((self.d + i) as u32), v.clone());
        }
        self.mul.iter().map(|f| f.substitute(&s)).collect()
    }

    pub fn inv(&self, p: &[RF]) -> Result<Vec<RF>> {
        self.check_len(p)?;
        let s = slot_subst(p, 0);
        self.inv.iter().map(|f| f.substitute(&s)).collect()
    }

    pub fn elem(&self, comps: Vec<RF>) -> Result<LieAlgValuedMap> {
        if comps.len() != self.d {
            return Err(Error::ModelMismatch(self.name.to_string(), format!("{}-component element", comps.len())));
        }
        Ok(LieAlgValuedMap { model: self.name.clone(), comps })
    }

    pub fn zero_elem(&self) -> LieAlgValuedMap {
        LieAlgValuedMap { model: self.name.clone(), comps: vec![RF::zero(); self.d] }
    }

    pub fn basis_elem(&self, a: usize) -> LieAlgValuedMap {
        let mut comps = vec![RF::zero(); self.d];
        comps[a] = RF::one();
        LieAlgValuedMap { model: self.name.clone(), comps }
    }

    pub fn check_elem(&self, x: &LieAlgValuedMap) -> Result<()> {
        if *x.model == *self.name {
            Ok(())
        } else {
            Err(Error::ModelMismatch(self.name.to_string(), x.model.to_string()))
        }
    }

    /// `Σ ξ^a τ_a`.
    pub fn to_matrix(&self, xi: &[RF]) -> Matrix {
        let mut acc = Matrix::zero(self.m, self.m);
        for (x, t) in xi.iter().zip(&self.basis) {
            if !x.is_zero() {
                acc = &acc + &t.scale(x);
            }
        }
        acc
    }

    /// Coordinates of `m` in the algebra basis; any residue is an error.
    pub fn expand(&self, m: &Matrix) -> Result<Vec<RF>> {
        let picked: Vec<RF> = self.pivots.iter().map(|&(i, j)| m.get(i, j).clone()).collect();
        let xi = self.pivot_inv.apply(&picked);
        if &self.to_matrix(&xi) != m {
            return Err(Error::NotInSpan);
        }
        Ok(xi)
    }

    /// Bracket in components, `[ξ,η]^c = Σ f_ab^c ξ^a η^b`.
    pub fn bracket_comps(&self, x: &[RF], y: &[RF]) -> Vec<RF> {
        let mut out = vec![RF::zero(); self.d];
        for a in 0..self.d {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..self.d {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for (c, o) in out.iter_mut().enumerate() {
                    let f = &self.f[a][b][c];
                    if !num_traits::Zero::is_zero(f) {
                        *o = &*o + &xy.scale(f);
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &LieAlgValuedMap, y: &LieAlgValuedMap) -> Result<LieAlgValuedMap> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(x.with_comps(self.bracket_comps(&x.comps, &y.comps)))
    }

    /// Matrix of `Ad_{h(p)}` acting on component vectors.
    pub fn ad_matrix(&self, p: &[RF]) -> Result<Matrix> {
        self.check_len(p)?;
        self.ad.substitute(&slot_subst(p, 0))
    }

    /// `h(p) ξ h(p)⁻¹` in components.
    pub fn adjoint_comps(&self, p: &[RF], xi: &[RF]) -> Result<Vec<RF>> {
        Ok(self.ad_matrix(p)?.apply(xi))
    }

    pub fn adjoint(&self, p: &[RF], xi: &LieAlgValuedMap) -> Result<LieAlgValuedMap> {
        self.check_elem(xi)?;
        Ok(xi.with_comps(self.adjoint_comps(p, &xi.comps)?))
    }

    /// Matrix of `ad_{τ_a}`: entry `(c, b)` is `f_ab^c`.
    pub fn ad_generator(&self, a: usize) -> Matrix {
        let mut out = Matrix::zero(self.d, self.d);
        for b in 0..self.d {
            for c in 0..self.d {
                out.set(c, b, RF::constant(self.f[a][b][c].clone()));
            }
        }
        out
    }

    /// Parameter components of the fundamental field of `τ_a` at `p`.
    pub fn tangent(&self, a: usize, p: &[RF]) -> Result<Vec<RF>> {
        let s = slot_subst(p, 0);
        self.tangents[a].iter().map(|f| f.substitute(&s)).collect()
    }

    /// Components of `h⁻¹ ∂h/∂θ^i` at `p`, indexed `[i][a]`.
    pub fn maurer_cartan(&self, p: &[RF]) -> Result<Vec<Vec<RF>>> {
        let s = slot_subst(p, 0);
        self.mc.iter().map(|row| row.iter().map(|f| f.substitute(&s)).collect()).collect()
    }

    fn derive_structure_constants(&self) -> Result<Vec<Vec<Vec<Q>>>> {
        let d = self.d;
        let mut f = vec![vec![vec![Q::from_integer(0.into()); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                let c = self
                    .expand(&self.basis[a].commutator(&self.basis[b]))
                    .map_err(|_| Error::InvariantViolation(format!("group `{}`: basis does not close under commutators", self.name)))?;
                for (k, x) in c.into_iter().enumerate() {
                    f[a][b][k] = x.constant_value().expect("constant basis");
                }
            }
        }
        Ok(f)
    }

    fn antisymmetric(&self) -> bool {
        (0..self.d).all(|a| (0..self.d).all(|b| (0..self.d).all(|c| self.f[a][b][c] == -self.f[b][a][c].clone())))
    }

    fn jacobi(&self) -> bool {
        let d = self.d;
        let e = |a: usize| -> Vec<RF> { (0..d).map(|i| if i == a { RF::one() } else { RF::zero() }).collect() };
        (0..d).all(|a| {
            (0..d).all(|b| {
                (0..d).all(|c| {
                    let t1 = self.bracket_comps(&e(a), &self.bracket_comps(&e(b), &e(c)));
                    let t2 = self.bracket_comps(&e(b), &self.bracket_comps(&e(c), &e(a)));
                    let t3 = self.bracket_comps(&e(c), &self.bracket_comps(&e(a), &e(b)));
                    (0..d).all(|k| (&(&t1[k] + &t2[k]) + &t3[k]).is_zero())
                })
            })
        })
    }

    fn ad_is_automorphism(&self) -> Result<bool> {
        let theta = slot_params(self.d, 0);
        let ad = self.ad_matrix(&theta)?;
        for a in 0..self.d {
            for b in (a + 1)..self.d {
                let ea = self.basis_elem(a).comps;
                let eb = self.basis_elem(b).comps;
                let lhs = ad.apply(&self.bracket_comps(&ea, &eb));
                let rhs = self.bracket_comps(&ad.apply(&ea), &ad.apply(&eb));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn solve_tangents(&self) -> Result<Vec<Vec<RF>>> {
        let d = self.d;
        let m2 = self.m * self.m;
        let mut jac = Matrix::zero(m2, d);
        for i in 0..d {
            let dh = self.h.derive(Var::slot(i as u32));
            for (k, x) in dh.entries().iter().enumerate() {
                jac.set(k, i, x.clone());
            }
        }
        let rhs: Vec<Vec<RF>> = self.basis.iter().map(|t| (&self.h * t).into_entries()).collect();
        solve_many(&jac, &rhs).ok_or(Error::InconsistentTangent)
    }
}

/// Picks `d` matrix positions on which the basis is independent, together
/// with the inverse of the restricted coefficient matrix.
fn basis_pivots(basis: &[Matrix], m: usize) -> Option<(Vec<(usize, usize)>, Matrix)> {
    let d = basis.len();
    let mut rows: Vec<Vec<RF>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m * m {
        if r == d {
            break;
        }
        let Some(p) = (r..d).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().ok()?;
        let prow: Vec<RF> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rows[r] = prow;
        pivots.push((col / m, col % m));
        r += 1;
    }
    if pivots.len() < d {
        return None;
    }
    let mut sub = Matrix::zero(d, d);
    for (k, &(i, j)) in pivots.iter().enumerate() {
        for (a, b) in basis.iter().enumerate() {
            sub.set(k, a, b.get(i, j).clone());
        }
    }
    Some((pivots, sub.inverse().ok()?))
}
