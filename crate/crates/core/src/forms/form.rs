use std::collections::BTreeMap;

use super::field::{RationalChartMap, VectorField};
use crate::coeff::Var;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{RationalFunction as RF, Subst};

/// Where the coefficient vectors of a form live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValueSpace {
    Scalar,
    /// Lie algebra of the given dimension.
    Lie(usize),
    /// Representation space of the given dimension.
    Rep(usize),
}

impl ValueSpace {
    pub fn len(self) -> usize {
        match self {
            ValueSpace::Scalar => 1,
            ValueSpace::Lie(n) | ValueSpace::Rep(n) => n,
        }
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }
}

/// Coordinate-index subsets are bit masks over the chart coordinates.
pub type Mask = u32;

pub fn mask_indices(mask: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Sign of sorting the concatenation of two disjoint index sets.
pub fn merge_sign(a: Mask, b: Mask) -> bool {
    let mut inversions = 0u32;
    for j in mask_indices(b) {
        inversions += (a >> (j + 1)).count_ones();
    }
    inversions % 2 == 1
}

/// A differential form on the chart, with vector-valued coefficients.
/// Zero forms compare equal regardless of their nominal degree.
#[derive(Clone, Debug)]
pub struct DifferentialForm {
    dim: usize,
    degree: usize,
    space: ValueSpace,
    comps: BTreeMap<Mask, Vec<RF>>,
}

impl PartialEq for DifferentialForm {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.dim == other.dim
            && self.comps == other.comps
            && (self.degree == other.degree || self.comps.is_empty())
    }
}

impl Eq for DifferentialForm {}

fn is_zero_vec(v: &[RF]) -> bool {
    v.iter().all(RF::is_zero)
}

impl DifferentialForm {
    pub fn zero(dim: usize, degree: usize, space: ValueSpace) -> Self {
        assert!(dim <= 32, "at most 32 chart coordinates");
        DifferentialForm { dim, degree, space, comps: BTreeMap::new() }
    }

    pub fn function(dim: usize, f: RF) -> Self {
        Self::valued_function(dim, ValueSpace::Scalar, vec![f])
    }

    pub fn valued_function(dim: usize, space: ValueSpace, v: Vec<RF>) -> Self {
        let mut out = Self::zero(dim, 0, space);
        out.add_term(0, v);
        out
    }

    /// `dξ^i` as a scalar 1-form.
    pub fn coordinate_differential(dim: usize, i: usize) -> Self {
        let mut out = Self::zero(dim, 1, ValueSpace::Scalar);
        out.add_term(1 << i, vec![RF::one()]);
        out
    }

    /// Builds from `(indices, values)` entries; indices may be unsorted and
    /// are reordered with the corresponding sign.
    pub fn from_entries(dim: usize, degree: usize, space: ValueSpace, entries: Vec<(Vec<usize>, Vec<RF>)>) -> Result<Self> {
        let mut out = Self::zero(dim, degree, space);
        for (idx, vals) in entries {
            if idx.len() != degree || vals.len() != space.len() || idx.iter().any(|&i| i >= dim) {
                return Err(Error::Invalid("form entry does not match degree, value space or chart".into()));
            }
            let mut mask = 0;
            let mut sign = false;
            for &i in &idx {
                if mask & (1 << i) != 0 {
                    mask = u32::MAX;
                    break;
                }
                sign ^= merge_sign(mask, 1 << i);
                mask |= 1 << i;
            }
            if mask == u32::MAX {
                continue;
            }
            let vals = if sign { vals.iter().map(|x| -x).collect() } else { vals };
            out.add_term(mask, vals);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> ValueSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &Vec<RF>)> {
        self.comps.iter().map(|(&m, v)| (m, v))
    }

    pub fn component(&self, mask: Mask) -> Option<&Vec<RF>> {
        self.comps.get(&mask)
    }

    /// Scalar coefficient of a scalar form.
    pub fn scalar_component(&self, mask: Mask) -> RF {
        self.comps.get(&mask).map_or_else(RF::zero, |v| v[0].clone())
    }

    /// Value of a degree-zero form.
    pub fn value(&self) -> Vec<RF> {
        assert_eq!(self.degree, 0);
        self.comps.get(&0).cloned().unwrap_or_else(|| vec![RF::zero(); self.space.len()])
    }

    pub fn add_term(&mut self, mask: Mask, v: Vec<RF>) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        debug_assert_eq!(v.len(), self.space.len());
        if is_zero_vec(&v) {
            return;
        }
        match self.comps.get_mut(&mask) {
            Some(e) => {
                for (x, y) in e.iter_mut().zip(v) {
                    *x = &*x + &y;
                }
                if is_zero_vec(e) {
                    self.comps.remove(&mask);
                }
            }
            None => {
                self.comps.insert(mask, v);
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::ValueSpaceMismatch(format!("{:?} vs {:?}", self.space, other.space)));
        }
        if self.degree != other.degree || self.dim != other.dim {
            return Err(Error::Invalid(format!("cannot add forms of degree {} and {}", self.degree, other.degree)));
        }
        Ok(())
    }

    /// Sum; a zero operand is accepted at any degree (the zero of a
    /// derivation lowering degree 0 has no degree of its own).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::ValueSpaceMismatch(format!("{:?} vs {:?}", self.space, other.space)));
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        self.compatible(other)?;
        let mut out = self.clone();
        for (&m, v) in &other.comps {
            out.add_term(m, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_values(|v| v.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, c: &RF) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.degree, self.space);
        }
        self.map_values(|v| v.iter().map(|x| x * c).collect())
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&RF::from_int(c))
    }

    /// Applies a linear map to every coefficient vector.
    pub fn map_values(&self, f: impl Fn(&[RF]) -> Vec<RF>) -> Self {
        self.map_values_into(self.space, f)
    }

    pub fn map_values_into(&self, space: ValueSpace, f: impl Fn(&[RF]) -> Vec<RF>) -> Self {
        let mut out = Self::zero(self.dim, self.degree, space);
        for (&m, v) in &self.comps {
            out.add_term(m, f(v));
        }
        out
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&RF) -> Result<RF>) -> Result<Self> {
        let mut out = Self::zero(self.dim, self.degree, self.space);
        for (&m, v) in &self.comps {
            out.add_term(m, v.iter().map(&f).collect::<Result<_>>()?);
        }
        Ok(out)
    }

    /// Matrix action `M·v` on coefficient vectors.
    pub fn apply_matrix(&self, m: &Matrix, space: ValueSpace) -> Self {
        assert_eq!(m.cols(), self.space.len());
        self.map_values_into(space, |v| m.apply(v))
    }

    /// Single component of a valued form, as a scalar form.
    pub fn component_form(&self, a: usize) -> Self {
        self.map_values_into(ValueSpace::Scalar, |v| vec![v[a].clone()])
    }

    /// Assembles a valued form from scalar component forms.
    pub fn from_components(space: ValueSpace, parts: &[DifferentialForm]) -> Result<Self> {
        assert_eq!(parts.len(), space.len());
        let first = parts.first().ok_or_else(|| Error::Invalid("empty component list".into()))?;
        let mut out = Self::zero(first.dim, first.degree, space);
        for (a, p) in parts.iter().enumerate() {
            if p.space != ValueSpace::Scalar || p.degree != first.degree {
                return Err(Error::ValueSpaceMismatch("components must be scalar forms of one degree".into()));
            }
            for (&m, v) in &p.comps {
                let mut vec = vec![RF::zero(); space.len()];
                vec[a] = v[0].clone();
                out.add_term(m, vec);
            }
        }
        Ok(out)
    }

    /// Graded product with an arbitrary bilinear pairing of coefficient vectors.
    pub fn wedge_with(&self, other: &Self, space: ValueSpace, pair: impl Fn(&[RF], &[RF]) -> Vec<RF>) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim, self.degree + other.degree, space);
        if self.degree + other.degree > self.dim {
            return out;
        }
        for (&ma, va) in &self.comps {
            for (&mb, vb) in &other.comps {
                if ma & mb != 0 {
                    continue;
                }
                let mut v = pair(va, vb);
                if merge_sign(ma, mb) {
                    v = v.iter().map(|x| -x).collect();
                }
                out.add_term(ma | mb, v);
            }
        }
        out
    }

    /// Exterior product; at least one factor must be scalar-valued.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        match (self.space, other.space) {
            (ValueSpace::Scalar, s) => Ok(self.wedge_with(other, s, |a, b| b.iter().map(|x| &a[0] * x).collect())),
            (s, ValueSpace::Scalar) => Ok(self.wedge_with(other, s, |a, b| a.iter().map(|x| x * &b[0]).collect())),
            (a, b) => Err(Error::ValueSpaceMismatch(format!("plain wedge of {a:?} and {b:?}; use the bracket or action product"))),
        }
    }

    /// Product of a function and a form.
    pub fn mul_function(&self, f: &RF) -> Self {
        self.scale(f)
    }

    pub fn ext_d(&self) -> Self {
        let mut out = Self::zero(self.dim, self.degree + 1, self.space);
        for (&m, v) in &self.comps {
            for j in 0..self.dim {
                if m & (1 << j) != 0 {
                    continue;
                }
                let dv: Vec<RF> = v.iter().map(|x| x.derive(Var(j as u32))).collect();
                if is_zero_vec(&dv) {
                    continue;
                }
                let below = (m & ((1u32 << j) - 1)).count_ones();
                let dv = if below % 2 == 1 { dv.iter().map(|x| -x).collect() } else { dv };
                out.add_term(m | (1 << j), dv);
            }
        }
        out
    }

    /// Contraction with a vector field in the first slot.
    pub fn interior(&self, x: &VectorField) -> Self {
        if self.degree == 0 {
            return Self::zero(self.dim, 0, self.space);
        }
        let mut out = Self::zero(self.dim, self.degree - 1, self.space);
        for (&m, v) in &self.comps {
            for (s, i) in mask_indices(m).enumerate() {
                let xi = &x.comps()[i];
                if xi.is_zero() {
                    continue;
                }
                let c = if s % 2 == 1 { -xi } else { xi.clone() };
                out.add_term(m & !(1 << i), v.iter().map(|y| y * &c).collect());
            }
        }
        out
    }

    /// Cartan formula `ι_X d + d ι_X`.
    pub fn lie_derivative(&self, x: &VectorField) -> Self {
        let a = self.ext_d().interior(x);
        let b = self.interior(x).ext_d();
        a.add(&b).expect("same shape")
    }

    /// Substitutes into coefficients only, leaving differentials untouched.
    pub fn substitute_coeffs(&self, s: &Subst) -> Result<Self> {
        self.try_map_coeffs(|x| x.substitute(s))
    }

    pub fn pullback(&self, map: &RationalChartMap) -> Result<Self> {
        assert_eq!(map.dim(), self.dim);
        let s = map.subst();
        let mut jac: Vec<Option<DifferentialForm>> = vec![None; self.dim];
        let mut out = Self::zero(self.dim, self.degree, self.space);
        for (&m, v) in &self.comps {
            let coeffs: Vec<RF> = v.iter().map(|x| x.substitute(&s)).collect::<Result<_>>()?;
            let mut basis = Self::function(self.dim, RF::one());
            for i in mask_indices(m) {
                if jac[i].is_none() {
                    jac[i] = Some(Self::function(self.dim, map.images()[i].clone()).ext_d());
                }
                basis = basis.wedge(jac[i].as_ref().expect("filled")).expect("scalar");
                if basis.is_zero() {
                    break;
                }
            }
            for (&bm, bv) in &basis.comps {
                out.add_term(bm, coeffs.iter().map(|c| c * &bv[0]).collect());
            }
        }
        Ok(out)
    }

    /// True when no coefficient mentions any of the given variables and no
    /// differential of the corresponding coordinates appears.
    pub fn avoids(&self, vars: &[Var]) -> bool {
        let mask: Mask = vars.iter().filter(|v| (v.0 as usize) < self.dim).fold(0, |m, v| m | (1 << v.0));
        self.comps.iter().all(|(&m, v)| m & mask == 0 && v.iter().all(|x| vars.iter().all(|&w| !x.contains_var(w))))
    }
}
