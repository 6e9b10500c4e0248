use crate::coeff::Var;
use crate::error::Result;
use crate::{RationalFunction as RF, Subst};

/// Vector field in coordinate components, x-block then θ-block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    comps: Vec<RF>,
}

impl VectorField {
    pub fn new(comps: Vec<RF>) -> Self {
        VectorField { comps }
    }

    pub fn zero(dim: usize) -> Self {
        VectorField { comps: vec![RF::zero(); dim] }
    }

    /// `∂/∂ξ^i`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.comps[i] = RF::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[RF] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RF::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        VectorField { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        VectorField { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &RF) -> Self {
        VectorField { comps: self.comps.iter().map(|x| x * c).collect() }
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &RF) -> RF {
        let mut acc = RF::zero();
        for (i, x) in self.comps.iter().enumerate() {
            if !x.is_zero() {
                let df = f.derive(Var(i as u32));
                if !df.is_zero() {
                    acc = &acc + &(x * &df);
                }
            }
        }
        acc
    }

    /// `[X,Y]^i = X(Y^i) − Y(X^i)`.
    pub fn commutator(&self, other: &Self) -> Self {
        VectorField { comps: self.comps.iter().zip(&other.comps).map(|(x, y)| &self.apply(y) - &other.apply(x)).collect() }
    }

    pub fn substitute(&self, s: &Subst) -> Result<Self> {
        Ok(VectorField { comps: self.comps.iter().map(|x| x.substitute(s)).collect::<Result<_>>()? })
    }
}

/// A rational self-map of the chart, given by the image of each coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalChartMap {
    images: Vec<RF>,
}

impl RationalChartMap {
    pub fn new(images: Vec<RF>) -> Self {
        RationalChartMap { images }
    }

    pub fn identity(dim: usize) -> Self {
        RationalChartMap { images: (0..dim).map(|i| RF::var(Var(i as u32))).collect() }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[RF] {
        &self.images
    }

    pub fn subst(&self) -> Subst {
        Subst::from_pairs(self.images.iter().enumerate().map(|(i, f)| (Var(i as u32), f.clone())))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &RationalChartMap) -> Result<Self> {
        let s = first.subst();
        Ok(RationalChartMap { images: self.images.iter().map(|f| f.substitute(&s)).collect::<Result<_>>()? })
    }

    /// Pulls a function back: `f ∘ self`.
    pub fn pull_function(&self, f: &RF) -> Result<RF> {
        f.substitute(&self.subst())
    }

    /// Pushes a vector field at `p` forward to a field along the map:
    /// components `Σ_j ∂_j m^i X^j`, still written in source coordinates.
    pub fn push_along(&self, x: &VectorField) -> VectorField {
        VectorField::new(self.images.iter().map(|m| x.apply(m)).collect())
    }
}
