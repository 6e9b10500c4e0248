//! Multivariate polynomial gcd by recursive primitive remainder sequences,
//! preceded by a modular coprimality certificate and a modular gcd whose
//! result is verified by exact division.

use super::modular::{certainly_coprime, modular_gcd};
use super::monomial::Var;
use super::poly::Poly;
use super::scalar::Scalar;

/// Monic greatest common divisor. `gcd(0, 0)` is zero.
pub fn gcd<F: Scalar>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a1 = if ma.is_one() { a.clone() } else { a.div_monomial(&ma) };
    let b1 = if mb.is_one() { b.clone() } else { b.div_monomial(&mb) };
    gcd_stripped(&a1, &b1).mul_monomial(&mg).monic()
}

fn gcd_stripped<F: Scalar>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    if certainly_coprime(a, b) {
        return Poly::one();
    }
    if let Some(g) = modular_gcd(a, b) {
        return g;
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(&v) = va.difference(&vb).next() {
        return gcd(&content(&a.to_univariate(v)), b);
    }
    if let Some(&v) = vb.difference(&va).next() {
        return gcd(a, &content(&b.to_univariate(v)));
    }
    let v = *va.iter().min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v))).expect("non-constant polynomial has a variable");
    univariate_gcd(a, b, v)
}

fn univariate_gcd<F: Scalar>(a: &Poly<F>, b: &Poly<F>, v: Var) -> Poly<F> {
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content(&ua);
    let cb = content(&ub);
    let cg = gcd(&ca, &cb);
    let mut p = primitive(ua, &ca);
    let mut q = primitive(ub, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.len() == 1 {
            // nonzero remainder of degree zero in v: coprime primitive parts
            return cg;
        }
        let r = pseudo_rem(&p, &q);
        if r.is_empty() {
            let g = Poly::from_univariate(&q, v);
            return (&g * &cg).monic();
        }
        let cr = content(&r);
        p = q;
        q = primitive(r, &cr);
    }
}

/// Gcd of all coefficients of a univariate view.
fn content<F: Scalar>(u: &[Poly<F>]) -> Poly<F> {
    let mut g = Poly::zero();
    for c in u {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive<F: Scalar>(u: Vec<Poly<F>>, c: &Poly<F>) -> Vec<Poly<F>> {
    if c.is_one() {
        return u;
    }
    u.into_iter().map(|x| x.div_exact(c).expect("content divides every coefficient")).collect()
}

fn trim<F: Scalar>(u: &mut Vec<Poly<F>>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

/// Pseudo-remainder of `p` by `q` (both with nonzero leading coefficient).
fn pseudo_rem<F: Scalar>(p: &[Poly<F>], q: &[Poly<F>]) -> Vec<Poly<F>> {
    let dq = q.len() - 1;
    let lq = &q[dq];
    let mut r: Vec<Poly<F>> = p.to_vec();
    trim(&mut r);
    while r.len() > dq {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dq;
        for c in r.iter_mut() {
            *c = &*c * lq;
        }
        for (i, qc) in q.iter().enumerate() {
            let t = &lr * qc;
            r[i + shift] = &r[i + shift] - &t;
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::scalar::q;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    fn v(i: u32) -> P {
        P::var(Var(i))
    }

    #[test]
    fn recovers_common_factor() {
        let x = v(0);
        let y = v(1);
        let z = v(2);
        let g = &(&x * &y) + &(&z - &P::constant(q(2, 1)));
        let a = &g * &(&x + &y.pow(2));
        let b = &g * &(&(&x * &z) - &y);
        assert_eq!(gcd(&a, &b), g.monic());
    }

    #[test]
    fn coprime_and_monomial_cases() {
        let x = v(0);
        let y = v(1);
        assert!(gcd(&(&x + &y), &(&x - &y)).is_one());
        let a = &x.pow(3) * &y;
        let b = &x.pow(2) * &y.pow(4);
        assert_eq!(gcd(&a, &b), &x.pow(2) * &y);
        assert_eq!(gcd(&a.scale(&q(3, 1)), &P::zero()), a);
    }

    #[test]
    fn variable_only_on_one_side() {
        let x = v(0);
        let y = v(1);
        let a = &(&x + &P::one()) * &(&y + &x);
        let b = (&x + &P::one()).pow(2);
        assert_eq!(gcd(&a, &b), &x + &P::one());
    }
}
