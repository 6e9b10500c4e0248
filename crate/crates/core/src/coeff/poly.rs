use std::collections::{BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{Monomial, Var};
use super::scalar::Scalar;

/// Sparse multivariate polynomial. Terms are kept sorted in strictly
/// decreasing graded-lex order with no zero coefficients, so structural
/// equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Scalar> {
    terms: Vec<(Monomial, F)>,
}

impl<F: Scalar> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Poly { terms: vec![(Monomial::var(v), F::one())] }
    }

    pub fn term(m: Monomial, c: F) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e = e.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, F>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> F {
        self.terms.first().map_or_else(F::zero, |t| t.1.clone())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.iter().flat_map(|(m, _)| m.vars()).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly { terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    /// Divides every term by `m`; caller guarantees divisibility.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        Poly { terms: self.terms.iter().map(|(t, c)| (t.div(m).expect("monomial divides every term"), c.clone())).collect() }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Monomial::one() };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Scaled so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => {
                let inv = F::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derive(&self, v: Var) -> Self {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e == 0 {
                continue;
            }
            let dm = rest.mul(&Monomial::pow(v, e - 1));
            out.push((dm, c.clone() * F::from_u32(e).expect("small integer")));
        }
        Self::from_terms(out)
    }

    /// Coefficients of `self` viewed as a polynomial in `v`, indexed by power.
    pub fn to_univariate(&self, v: Var) -> Vec<Poly<F>> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                // removing a variable keeps relative grlex order only within a
                // fixed power, which is what each bucket holds
                t.sort_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect()
    }

    pub fn from_univariate(coeffs: &[Poly<F>], v: Var) -> Self {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            let vm = Monomial::pow(v, e as u32);
            for (m, a) in &c.terms {
                terms.push((m.mul(&vm), a.clone()));
            }
        }
        let mut p = Poly { terms };
        p.terms.sort_by(|a, b| b.0.cmp(&a.0));
        p
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly<F>) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&(F::one() / c)));
        }
        if d.is_monomial() {
            let (dm, dc) = &d.terms[0];
            let inv = F::one() / dc.clone();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c.clone() * inv.clone()));
            }
            return Some(Poly { terms });
        }
        let (lm, lc) = d.terms[0].clone();
        let lc_inv = F::one() / lc;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, F)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let qm = rm.div(&lm)?;
            let qc = rc * lc_inv.clone();
            rem = &rem - &d.mul_monomial(&qm).scale(&qc);
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    fn merge(&self, other: &Poly<F>, negate_other: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &F| if negate_other { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.clone() + sign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Poly { terms: out }
    }

    fn product(&self, other: &Poly<F>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(e) => *e = e.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }
}

impl<F: Scalar> Zero for Poly<F> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Scalar> One for Poly<F> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<F: Scalar> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        self.merge(rhs, false)
    }
}

impl<F: Scalar> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self.merge(rhs, true)
    }
}

impl<F: Scalar> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        self.product(rhs)
    }
}

impl<F: Scalar> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<F: Scalar> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $f(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Scalar> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::scalar::q;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    fn x() -> P {
        P::var(Var(0))
    }
    fn y() -> P {
        P::var(Var(1))
    }

    #[test]
    fn arithmetic_cancels() {
        let a = &x() + &y();
        let b = &x() - &y();
        let prod = &a * &b;
        let expect = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(prod, expect);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = &(&x() + &P::one()) * &(&y() - &x());
        let b = &y() - &x();
        assert_eq!(a.div_exact(&b), Some(&x() + &P::one()));
        assert_eq!(a.div_exact(&(&y() + &x())), None);
    }

    #[test]
    fn univariate_roundtrip() {
        let p = &(&x().pow(3) * &y()) + &(&y().pow(2).scale(&q(3, 2)) + &x());
        let u = p.to_univariate(Var(0));
        assert_eq!(u.len(), 4);
        assert_eq!(P::from_univariate(&u, Var(0)), p);
    }

    #[test]
    fn derivative_monomial_rule() {
        let p = &x() * &y();
        assert_eq!(p.derive(Var(0)), y());
        assert_eq!(x().pow(3).derive(Var(0)), x().pow(2).scale(&q(3, 1)));
    }
}
