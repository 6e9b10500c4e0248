use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::monomial::Var;
use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Reduced fraction of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc<F: Scalar> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Scalar> RatFunc<F> {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(F::from_i64(n).expect("integer embeds"))
    }

    pub fn var(v: Var) -> Self {
        RatFunc { num: Poly::var(v), den: Poly::one() }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            let num = if c.is_one() { num } else { num.scale(&(F::one() / c)) };
            return RatFunc { num, den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides")) };
        Self::monic_den(num, den)
    }

    fn monic_den(num: Poly<F>, den: Poly<F>) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = F::one() / lc;
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<F> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(RatFunc { num: self.num.pow(e), den: self.den.pow(e) })
    }

    pub fn derive(&self, v: Var) -> Self {
        if self.den.is_one() {
            return RatFunc { num: self.num.derive(v), den: Poly::one() };
        }
        let dn = self.num.derive(v);
        let dd = self.den.derive(v);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(num, &self.den * &self.den)
    }

    /// Simultaneous substitution; variables absent from `sub` are kept.
    pub fn substitute(&self, sub: &Substitution<F>) -> Result<Self> {
        if self.den.is_one() {
            return sub.apply_poly(&self.num);
        }
        let mut bounds: BTreeMap<Var, u32> = BTreeMap::new();
        for p in [&self.num, &self.den] {
            for (m, _) in p.terms() {
                for &(v, e) in m.pairs() {
                    let b = bounds.entry(v).or_insert(0);
                    *b = (*b).max(e);
                }
            }
        }
        let mut cache = PowerCache::new(sub);
        let n = cache.homogenized(&self.num, &bounds);
        let d = cache.homogenized(&self.den, &bounds);
        if d.is_zero() {
            return Err(Error::SingularSubstitution);
        }
        Ok(Self::normalized(n, d))
    }

    fn add_sub(&self, rhs: &Self, negate: bool) -> Self {
        let n2 = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.den == rhs.den {
            let n = &self.num + &n2;
            if self.den.is_one() {
                return RatFunc { num: n, den: Poly::one() };
            }
            return Self::normalized(n, self.den.clone());
        }
        if rhs.den.is_one() {
            let n = &self.num + &(&n2 * &self.den);
            return Self::normalized(n, self.den.clone());
        }
        if self.den.is_one() {
            let n = &(&self.num * &rhs.den) + &n2;
            return Self::normalized(n, rhs.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let (a, b) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.div_exact(&g).expect("gcd divides"), rhs.den.div_exact(&g).expect("gcd divides"))
        };
        let n = &(&self.num * &b) + &(&n2 * &a);
        Self::normalized(n, &self.den * &b)
    }

    fn product(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: Poly::one() };
        }
        let g1 = if rhs.den.is_one() { Poly::one() } else { gcd(&self.num, &rhs.den) };
        let g2 = if self.den.is_one() { Poly::one() } else { gcd(&rhs.num, &self.den) };
        let q = |p: &Poly<F>, g: &Poly<F>| if g.is_one() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        let num = &q(&self.num, &g1) * &q(&rhs.num, &g2);
        let den = &q(&self.den, &g2) * &q(&rhs.den, &g1);
        if let Some(c) = den.constant_value() {
            return RatFunc { num: num.scale(&(F::one() / c)), den: Poly::one() };
        }
        Self::monic_den(num, den)
    }
}

/// Simultaneous assignment of rational functions to variables.
#[derive(Clone, Debug)]
pub struct Substitution<F: Scalar> {
    map: HashMap<Var, RatFunc<F>>,
}

impl<F: Scalar> Default for Substitution<F> {
    fn default() -> Self {
        Substitution { map: HashMap::new() }
    }
}

impl<F: Scalar> Substitution<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, RatFunc<F>)>) -> Self {
        Substitution { map: pairs.into_iter().collect() }
    }

    pub fn insert(&mut self, v: Var, f: RatFunc<F>) {
        self.map.insert(v, f);
    }

    pub fn with(mut self, v: Var, f: RatFunc<F>) -> Self {
        self.insert(v, f);
        self
    }

    pub fn get(&self, v: Var) -> Option<&RatFunc<F>> {
        self.map.get(&v)
    }

    pub fn image(&self, v: Var) -> RatFunc<F> {
        self.map.get(&v).cloned().unwrap_or_else(|| RatFunc::var(v))
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.map.keys().copied()
    }

    /// The substitution `x ↦ self(other(x))`, i.e. `other` applied first.
    pub fn after(&self, other: &Substitution<F>) -> Result<Substitution<F>> {
        let mut out = Substitution::new();
        for (&v, f) in &other.map {
            out.insert(v, f.substitute(self)?);
        }
        for (&v, f) in &self.map {
            out.map.entry(v).or_insert_with(|| f.clone());
        }
        Ok(out)
    }

    fn apply_poly(&self, p: &Poly<F>) -> Result<RatFunc<F>> {
        if p.terms().iter().all(|(m, _)| m.vars().all(|v| !self.map.contains_key(&v))) {
            return Ok(RatFunc::from_poly(p.clone()));
        }
        let polynomial_images = p.terms().iter().flat_map(|(m, _)| m.vars()).all(|v| self.map.get(&v).is_none_or(|f| f.is_polynomial()));
        let mut cache = PowerCache::new(self);
        if polynomial_images {
            return Ok(RatFunc::from_poly(cache.poly_image(p)));
        }
        let mut bounds: BTreeMap<Var, u32> = BTreeMap::new();
        for (m, _) in p.terms() {
            for &(v, e) in m.pairs() {
                let b = bounds.entry(v).or_insert(0);
                *b = (*b).max(e);
            }
        }
        let n = cache.homogenized(p, &bounds);
        let mut d = Poly::one();
        for (&v, &e) in &bounds {
            d = &d * &cache.den_pow(v, e);
        }
        Ok(RatFunc::normalized(n, d))
    }
}

/// Memoized powers of numerators and denominators of substitution images.
struct PowerCache<'a, F: Scalar> {
    sub: &'a Substitution<F>,
    num: HashMap<(Var, u32), Poly<F>>,
    den: HashMap<(Var, u32), Poly<F>>,
}

impl<'a, F: Scalar> PowerCache<'a, F> {
    fn new(sub: &'a Substitution<F>) -> Self {
        PowerCache { sub, num: HashMap::new(), den: HashMap::new() }
    }

    fn num_pow(&mut self, v: Var, e: u32) -> Poly<F> {
        if e == 0 {
            return Poly::one();
        }
        if let Some(p) = self.num.get(&(v, e)) {
            return p.clone();
        }
        let p = match self.sub.map.get(&v) {
            None => Poly::var(v).pow(e),
            Some(f) => {
                let prev = self.num_pow(v, e - 1);
                &prev * &f.num
            }
        };
        self.num.insert((v, e), p.clone());
        p
    }

    fn den_pow(&mut self, v: Var, e: u32) -> Poly<F> {
        if e == 0 {
            return Poly::one();
        }
        let Some(f) = self.sub.map.get(&v) else { return Poly::one() };
        if f.den.is_one() {
            return Poly::one();
        }
        if let Some(p) = self.den.get(&(v, e)) {
            return p.clone();
        }
        let prev = self.den_pow(v, e - 1);
        let p = &prev * &f.den;
        self.den.insert((v, e), p.clone());
        p
    }

    fn poly_image(&mut self, p: &Poly<F>) -> Poly<F> {
        let mut acc = Poly::zero();
        for (m, c) in p.terms() {
            let mut t = Poly::constant(c.clone());
            for &(v, e) in m.pairs() {
                t = &t * &self.num_pow(v, e);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Image of `p` multiplied through by `Π den(v)^bound(v)`.
    fn homogenized(&mut self, p: &Poly<F>, bounds: &BTreeMap<Var, u32>) -> Poly<F> {
        let mut acc = Poly::zero();
        for (m, c) in p.terms() {
            let mut t = Poly::constant(c.clone());
            for (&v, &b) in bounds {
                let e = m.exponent(v);
                t = &t * &self.num_pow(v, e);
                t = &t * &self.den_pow(v, b - e);
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl<F: Scalar> Zero for RatFunc<F> {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Scalar> One for RatFunc<F> {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl<F: Scalar> Add for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.add_sub(rhs, false)
    }
}

impl<F: Scalar> Sub for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.add_sub(rhs, true)
    }
}

impl<F: Scalar> Mul for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.product(rhs)
    }
}

/// Panics on a zero divisor; use [`RatFunc::checked_div`] to get an error.
impl<F: Scalar> Div for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn div(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl<F: Scalar> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<F: Scalar> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<F: Scalar> $tr for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $f(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<F: Scalar> std::iter::Sum for RatFunc<F> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::scalar::q;
    use num_rational::BigRational;

    type R = RatFunc<BigRational>;

    fn v(i: u32) -> R {
        R::var(Var(i))
    }

    #[test]
    fn cancellation_and_monic_denominator() {
        let x = v(0);
        let t = v(1);
        assert_eq!(&(&x / &t) * &t, x);
        let half = R::constant(q(1, 2));
        let f = &R::one() / &(&(&t * &half) + &half);
        assert!(f.denom().leading_coeff() == q(1, 1));
        assert_eq!(f.numer().constant_value(), Some(q(2, 1)));
    }

    #[test]
    fn quotient_rule() {
        let t = v(1);
        let f = &R::one() / &t;
        assert_eq!(f.derive(Var(1)), -&(&R::one() / &(&t * &t)));
    }

    #[test]
    fn substitution_keeps_unmapped_and_detects_singularity() {
        let x = v(0);
        let t = v(1);
        let f = &x + &t;
        let s = Substitution::new().with(Var(0), R::zero());
        assert_eq!(f.substitute(&s).unwrap(), t);
        let g = &R::one() / &(&x - &t);
        let s = Substitution::new().with(Var(0), t.clone());
        assert_eq!(g.substitute(&s), Err(Error::SingularSubstitution));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(v(0).checked_div(&R::zero()), Err(Error::DivisionByZero));
    }
}
