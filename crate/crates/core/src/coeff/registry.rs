use std::collections::HashMap;
use std::fmt::Write;

use num_traits::Signed;

use super::monomial::{Monomial, Var};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Fixed, ordered set of variable names: base coordinates, then group
/// parameters, then auxiliary symbolic constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableRegistry {
    names: Vec<String>,
    index: HashMap<String, Var>,
    n_base: usize,
    n_group: usize,
}

impl VariableRegistry {
    pub fn new<S: AsRef<str>>(base: &[S], group: &[S], aux: &[S]) -> Result<Self> {
        let names: Vec<String> = base.iter().chain(group).chain(aux).map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Invalid(format!("bad variable name `{n}`")));
            }
            if n.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(Error::Invalid(format!("variable name `{n}` starts with a digit")));
            }
            if index.insert(n.clone(), Var(i as u32)).is_some() {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VariableRegistry { names, index, n_base: base.len(), n_group: group.len() })
    }

    pub fn n_base(&self) -> usize {
        self.n_base
    }

    pub fn n_group(&self) -> usize {
        self.n_group
    }

    pub fn n_aux(&self) -> usize {
        self.names.len() - self.n_base - self.n_group
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn base_var(&self, i: usize) -> Var {
        assert!(i < self.n_base);
        Var(i as u32)
    }

    pub fn group_var(&self, i: usize) -> Var {
        assert!(i < self.n_group);
        Var((self.n_base + i) as u32)
    }

    pub fn aux_var(&self, i: usize) -> Var {
        assert!(i < self.n_aux());
        Var((self.n_base + self.n_group + i) as u32)
    }

    pub fn base_vars(&self) -> Vec<Var> {
        (0..self.n_base).map(|i| self.base_var(i)).collect()
    }

    pub fn group_vars(&self) -> Vec<Var> {
        (0..self.n_group).map(|i| self.group_var(i)).collect()
    }

    pub fn aux_vars(&self) -> Vec<Var> {
        (0..self.n_aux()).map(|i| self.aux_var(i)).collect()
    }

    pub fn is_base(&self, v: Var) -> bool {
        (v.0 as usize) < self.n_base
    }

    pub fn is_group(&self, v: Var) -> bool {
        let i = v.0 as usize;
        i >= self.n_base && i < self.n_base + self.n_group
    }

    pub fn lookup(&self, name: &str) -> Result<Var> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn name(&self, v: Var) -> String {
        match v.slot_index() {
            Some(i) => format!("_s{i}"),
            None => self.names.get(v.0 as usize).cloned().unwrap_or_else(|| format!("_v{}", v.0)),
        }
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (k, &(v, e)) in m.pairs().iter().enumerate() {
            if k > 0 {
                s.push('*');
            }
            s.push_str(&self.name(v));
            if e > 1 {
                write!(s, "^{e}").unwrap();
            }
        }
        s
    }

    /// Canonical text form; terms appear in decreasing monomial order.
    pub fn fmt_poly<F: Scalar + Signed>(&self, p: &Poly<F>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                write!(s, "{a}").unwrap();
            } else if a.is_one() {
                s.push_str(&self.fmt_monomial(m));
            } else {
                write!(s, "{a}*{}", self.fmt_monomial(m)).unwrap();
            }
        }
        s
    }

    pub fn fmt<F: Scalar + Signed>(&self, f: &RatFunc<F>) -> String {
        if f.is_polynomial() {
            return self.fmt_poly(f.numer());
        }
        let wrap = |p: &Poly<F>| {
            let t = self.fmt_poly(p);
            if p.terms().len() > 1 || t.starts_with('-') {
                format!("({t})")
            } else {
                t
            }
        };
        if f.numer().is_zero() {
            return "0".into();
        }
        format!("{}/{}", wrap(f.numer()), wrap(f.denom()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::scalar::q;
    use num_rational::BigRational;

    #[test]
    fn rejects_duplicates_and_orders_blocks() {
        assert!(VariableRegistry::new(&["x"], &["x"], &[] as &[&str]).is_err());
        let r = VariableRegistry::new(&["x1", "x2"], &["a", "b"], &["g1"]).unwrap();
        assert_eq!(r.lookup("a").unwrap(), r.group_var(0));
        assert_eq!(r.lookup("g1").unwrap(), r.aux_var(0));
        assert!(matches!(r.lookup("zz"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn canonical_printing() {
        let r = VariableRegistry::new(&["x"], &["a"], &[] as &[&str]).unwrap();
        let x = RatFunc::<BigRational>::var(r.base_var(0));
        let a = RatFunc::var(r.group_var(0));
        let f = &(&(&x * &x) - &a.scale(&q(3, 2))) / &(&a + &RatFunc::one());
        assert_eq!(r.fmt(&f), "(x^2 - 3/2*a)/(a + 1)");
        assert_eq!(r.fmt(&(-&x).scale(&q(1, 1))), "-x");
    }
}
