//! Vector-valued forms `Ω^k(P, TP)` and their brackets: algebraic insertion,
//! Nijenhuis-Richardson and Frölicher-Nijenhuis brackets, the Nijenhuis-Lie
//! derivative, the verticality lift and the extended bracket.

use crate::error::{Error, Result};
use crate::forms::{Chart, DifferentialForm, ValueSpace, VectorField};
use crate::group::LieAlgValuedMap;
use crate::RationalFunction as RF;

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Σ_i K^i ⊗ ∂_i`, canonical over the coordinate vector fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorValuedForm {
    degree: usize,
    comps: Vec<DifferentialForm>,
}

impl VectorValuedForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        VectorValuedForm { degree, comps: vec![DifferentialForm::zero(dim, degree, ValueSpace::Scalar); dim] }
    }

    /// Sums `Σ form ⊗ field` into canonical components.
    pub fn from_terms(dim: usize, degree: usize, terms: &[(DifferentialForm, VectorField)]) -> Result<Self> {
        let mut out = Self::zero(dim, degree);
        for (f, x) in terms {
            if f.space() != ValueSpace::Scalar || (f.degree() != degree && !f.is_zero()) {
                return Err(Error::Invalid("vector-valued form terms need scalar forms of the declared degree".into()));
            }
            for (i, xi) in x.comps().iter().enumerate() {
                if !xi.is_zero() {
                    out.comps[i] = out.comps[i].add(&f.scale(xi))?;
                }
            }
        }
        Ok(out)
    }

    pub fn from_field(x: &VectorField) -> Self {
        let dim = x.dim();
        VectorValuedForm { degree: 0, comps: x.comps().iter().map(|c| DifferentialForm::function(dim, c.clone())).collect() }
    }

    pub fn from_comps(degree: usize, comps: Vec<DifferentialForm>) -> Self {
        VectorValuedForm { degree, comps }
    }

    /// The identity endomorphism `Σ dξ^i ⊗ ∂_i`.
    pub fn identity(dim: usize) -> Self {
        VectorValuedForm { degree: 1, comps: (0..dim).map(|i| DifferentialForm::coordinate_differential(dim, i)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[DifferentialForm] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(DifferentialForm::is_zero)
    }

    /// Canonical terms `(K^i, ∂_i)` with nonzero form factor.
    pub fn terms(&self) -> Vec<(DifferentialForm, VectorField)> {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| (f.clone(), VectorField::coordinate(self.dim(), i)))
            .collect()
    }

    /// A degree-zero element read as a vector field.
    pub fn to_field(&self) -> Result<VectorField> {
        if self.degree != 0 {
            return Err(Error::Invalid("only degree-zero elements are vector fields".into()));
        }
        Ok(VectorField::new(self.comps.iter().map(|f| f.value()[0].clone()).collect()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Invalid(format!("cannot add degrees {} and {}", self.degree, other.degree)));
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(VectorValuedForm { degree: self.degree, comps })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_int(-1))
    }

    pub fn scale(&self, c: &RF) -> Self {
        VectorValuedForm { degree: self.degree, comps: self.comps.iter().map(|f| f.scale(c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&RF::from_int(c))
    }

    /// `ι_K b = Σ_i K^i ∧ ι_{∂_i} b`; zero on functions.
    pub fn insert(&self, b: &DifferentialForm) -> DifferentialForm {
        let dim = self.dim();
        let out_degree = (b.degree() + self.degree).saturating_sub(1);
        let mut out = DifferentialForm::zero(dim, out_degree, b.space());
        if b.degree() == 0 {
            return out;
        }
        for (i, k) in self.comps.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            let c = b.interior(&VectorField::coordinate(dim, i));
            if c.is_zero() {
                continue;
            }
            out = out.add(&k.wedge(&c).expect("scalar factor")).expect("same shape");
        }
        out
    }

    /// `ι_K L`, applied to the form factor of each component of `L`.
    pub fn insert_vvf(&self, l: &VectorValuedForm) -> VectorValuedForm {
        let degree = (l.degree + self.degree).saturating_sub(1);
        if l.degree == 0 {
            return VectorValuedForm::zero(self.dim(), degree);
        }
        VectorValuedForm { degree, comps: l.comps.iter().map(|f| self.insert(f)).collect() }
    }

    /// Nijenhuis-Lie derivative `L_K = ι_K d − (−1)^{k−1} d ι_K`.
    pub fn nl_derivative(&self, b: &DifferentialForm) -> DifferentialForm {
        let a = self.insert(&b.ext_d());
        let c = self.insert(b).ext_d();
        // (−1)^{k−1} = −(−1)^k
        let c = c.scale_int(sign(self.degree));
        a.add(&c).expect("same shape")
    }
}

/// `[K, L]_NR = ι_K L − (−1)^{(k−1)(l−1)} ι_L K`.
pub fn nr_bracket(k: &VectorValuedForm, l: &VectorValuedForm) -> VectorValuedForm {
    let a = k.insert_vvf(l);
    let b = l.insert_vvf(k);
    let e = (k.degree as i64 - 1) * (l.degree as i64 - 1);
    let s = if e.rem_euclid(2) == 0 { -1 } else { 1 };
    a.add(&b.scale_int(s)).expect("same degree")
}

/// Frölicher-Nijenhuis bracket of two decomposed elements, summed term pair
/// by term pair:
/// `𝖪∧𝖩⊗[X,Y] + 𝖪∧L_X𝖩⊗Y − L_Y𝖪∧𝖩⊗X + (−1)^k (d𝖪∧ι_X𝖩⊗Y + ι_Y𝖪∧d𝖩⊗X)`.
pub fn fn_bracket_terms(
    dim: usize,
    k_degree: usize,
    k_terms: &[(DifferentialForm, VectorField)],
    j_degree: usize,
    j_terms: &[(DifferentialForm, VectorField)],
) -> Result<VectorValuedForm> {
    let degree = k_degree + j_degree;
    let s = sign(k_degree);
    let mut terms = Vec::new();
    for (kf, x) in k_terms {
        let dk = kf.ext_d();
        for (jf, y) in j_terms {
            let xy = x.commutator(y);
            if !xy.is_zero() {
                terms.push((kf.wedge(jf)?, xy));
            }
            terms.push((kf.wedge(&jf.lie_derivative(x))?, y.clone()));
            terms.push((kf.lie_derivative(y).wedge(jf)?.scale_int(-1), x.clone()));
            terms.push((dk.wedge(&jf.interior(x))?.scale_int(s), y.clone()));
            terms.push((kf.interior(y).wedge(&jf.ext_d())?.scale_int(s), x.clone()));
        }
    }
    let terms: Vec<_> = terms.into_iter().filter(|(f, _)| !f.is_zero()).collect();
    VectorValuedForm::from_terms(dim, degree, &terms)
}

/// Frölicher-Nijenhuis bracket on the canonical decompositions.
pub fn fn_bracket(k: &VectorValuedForm, j: &VectorValuedForm) -> VectorValuedForm {
    fn_bracket_terms(k.dim(), k.degree, &k.terms(), j.degree, &j.terms()).expect("canonical terms are well formed")
}

/// Graded commutator `[D1, D2] = D1 D2 − (−1)^{d1 d2} D2 D1` of two form
/// operators of the given degrees, applied to `b`.
pub fn graded_commutator(
    d1: (i64, &dyn Fn(&DifferentialForm) -> DifferentialForm),
    d2: (i64, &dyn Fn(&DifferentialForm) -> DifferentialForm),
    b: &DifferentialForm,
) -> DifferentialForm {
    let a = d1.1(&d2.1(b));
    let c = d2.1(&d1.1(b));
    let s = if (d1.0 * d2.0).rem_euclid(2) == 0 { -1 } else { 1 };
    a.add(&c.scale_int(s)).expect("same shape")
}

/// `X^v = Σ_a X^a ⊗ (τ_a)^v` as its list of terms.
pub fn verticality_terms(chart: &Chart, x: &LieAlgValuedMap) -> Result<Vec<(DifferentialForm, VectorField)>> {
    chart.group().check_elem(x)?;
    Ok(x.comps().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(a, c)| (chart.function(c.clone()), chart.basis_field(a))).collect())
}

pub fn verticality_lift(chart: &Chart, x: &LieAlgValuedMap) -> Result<VectorValuedForm> {
    VectorValuedForm::from_terms(chart.dim(), 0, &verticality_terms(chart, x)?)
}

/// `{X, Y} = [X, Y] + X^v(Y) − Y^v(X)`.
pub fn extended_bracket(chart: &Chart, x: &LieAlgValuedMap, y: &LieAlgValuedMap) -> Result<LieAlgValuedMap> {
    let g = chart.group();
    let br = g.bracket(x, y)?;
    let xv = chart.fundamental_field(x)?;
    let yv = chart.fundamental_field(y)?;
    let comps = br.comps().iter().zip(x.comps().iter().zip(y.comps())).map(|(b, (xc, yc))| &(b + &xv.apply(yc)) - &yv.apply(xc)).collect();
    Ok(br.with_comps(comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::heisenberg3;

    #[test]
    fn heisenberg_extended_bracket_example() {
        let c = Chart::standard(heisenberg3(), 2).unwrap();
        let g = c.group().clone();
        let x = g.elem(vec![c.x(0), RF::zero(), RF::zero()]).unwrap();
        let y = g.basis_elem(1);
        let e = extended_bracket(&c, &x, &y).unwrap();
        assert_eq!(e.comps(), &[RF::zero(), RF::zero(), c.x(0)]);
    }

    #[test]
    fn insertion_into_functions_vanishes() {
        let c = Chart::standard(heisenberg3(), 1).unwrap();
        let k = verticality_lift(&c, &c.group().basis_elem(0)).unwrap();
        assert!(k.insert(&c.function(c.x(0))).is_zero());
    }
}
