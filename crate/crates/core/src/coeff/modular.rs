//! Arithmetic modulo a word-sized prime, used to certify that two
//! polynomials are coprime before running an exact remainder sequence.
//!
//! If, for every shared variable `v`, specializing all other variables to
//! some point keeps both leading coefficients in `v` nonzero and leaves the
//! univariate images coprime mod `p`, then the true gcd has degree zero in
//! `v`. The certificate never reports a false positive; an unlucky point or
//! prime only sends the caller to the exact algorithm.

use std::collections::BTreeMap;

use super::monomial::{Monomial, Var};
use super::poly::Poly;
use super::scalar::Scalar;

/// `2^61 − 1`.
pub const PRIME: u64 = (1 << 61) - 1;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    add_mod(a, p - b % p, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue, `p` prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// SplitMix64 step; deterministic evaluation points.
fn next(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Dense univariate image in `v`, low degree first.
fn specialize<F: Scalar>(a: &Poly<F>, v: Var, point: &dyn Fn(Var) -> u64) -> Option<Vec<u64>> {
    let mut out = vec![0u64; a.degree_in(v) as usize + 1];
    for (m, c) in a.terms() {
        let mut t = c.reduce_mod(PRIME)?;
        let mut e = 0;
        for &(w, k) in m.pairs() {
            if w == v {
                e = k as usize;
            } else {
                t = mul_mod(t, pow_mod(point(w), k as u64, PRIME), PRIME);
            }
        }
        out[e] = add_mod(out[e], t, PRIME);
    }
    Some(out)
}

fn trim(u: &mut Vec<u64>) {
    while u.last() == Some(&0) {
        u.pop();
    }
}

/// Degree of the univariate gcd mod `p`; inputs nonzero.
fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = inv_mod(*b.last().expect("nonempty"), PRIME);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().expect("nonempty"), inv, PRIME);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[i + shift] = sub_mod(a[i + shift], mul_mod(f, bc, PRIME), PRIME);
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True only when `a` and `b` certainly have a constant gcd.
pub fn certainly_coprime<F: Scalar>(a: &Poly<F>, b: &Poly<F>) -> bool {
    let va = a.vars();
    let vb = b.vars();
    let shared: Vec<Var> = va.intersection(&vb).copied().collect();
    let mut state = 0x5EED_u64;
    'vars: for &v in &shared {
        for _ in 0..2 {
            let vals: Vec<(Var, u64)> = va.union(&vb).map(|&w| (w, next(&mut state) % PRIME)).collect();
            let point = |w: Var| vals.iter().find(|(x, _)| *x == w).map_or(0, |(_, c)| *c);
            let (Some(ia), Some(ib)) = (specialize(a, v, &point), specialize(b, v, &point)) else {
                return false;
            };
            if ia.last() == Some(&0) || ib.last() == Some(&0) {
                continue;
            }
            if gcd_degree(ia, ib) == 0 {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    true
}

/// Dense univariate polynomials mod `p`, low degree first, trimmed.
mod uni {
    use super::{add_mod, inv_mod, mul_mod, sub_mod, trim, PRIME as P};

    pub fn eval(a: &[u64], x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, P), c, P))
    }

    pub fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, P), P);
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &[u64], c: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a.iter().map(|&x| mul_mod(x, c, P)).collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` nonzero.
    pub fn divrem(a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = inv_mod(*b.last().expect("nonzero divisor"), P);
        let mut q = vec![0; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let f = mul_mod(*r.last().expect("nonempty"), inv, P);
            q[shift] = f;
            for (i, &bc) in b.iter().enumerate() {
                r[i + shift] = sub_mod(r[i + shift], mul_mod(f, bc, P), P);
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn monic(a: &[u64]) -> Vec<u64> {
        match a.last() {
            Some(&l) => scale(a, inv_mod(l, P)),
            None => Vec::new(),
        }
    }

    pub fn gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b);
            a = b;
            b = r;
        }
        monic(&a)
    }
}

/// Sparse multivariate polynomial mod `p`, keyed by exponent vectors in lex
/// order (earlier variables dominate).
type Mp = BTreeMap<Vec<u32>, u64>;

/// Terms grouped by all but the last exponent, as dense polynomials in the
/// last variable.
type Groups = BTreeMap<Vec<u32>, Vec<u64>>;

fn groups(a: &Mp) -> Groups {
    let mut g: Groups = BTreeMap::new();
    for (e, &c) in a {
        let (last, main) = e.split_last().expect("at least one variable");
        let u = g.entry(main.to_vec()).or_default();
        if u.len() <= *last as usize {
            u.resize(*last as usize + 1, 0);
        }
        u[*last as usize] = c;
    }
    g
}

fn ungroup(g: &Groups) -> Mp {
    let mut out = Mp::new();
    for (main, u) in g {
        for (i, &c) in u.iter().enumerate() {
            if c != 0 {
                let mut e = main.clone();
                e.push(i as u32);
                out.insert(e, c);
            }
        }
    }
    out
}

fn content_last(g: &Groups) -> Vec<u64> {
    g.values().fold(Vec::new(), |acc, u| uni::gcd(&acc, u))
}

fn div_last(g: &Groups, c: &[u64]) -> Groups {
    g.iter().map(|(k, u)| (k.clone(), uni::divrem(u, c).0)).collect()
}

fn mul_last(g: &Groups, c: &[u64]) -> Groups {
    g.iter().map(|(k, u)| (k.clone(), uni::mul(u, c))).filter(|(_, u)| !u.is_empty()).collect()
}

fn eval_last(a: &Mp, x: u64) -> Mp {
    let mut out = Mp::new();
    for (main, u) in groups(a) {
        let v = uni::eval(&u, x);
        if v != 0 {
            out.insert(main, v);
        }
    }
    out
}

fn scale_mp(a: &Mp, c: u64) -> Mp {
    a.iter().map(|(k, &v)| (k.clone(), mul_mod(v, c, PRIME))).filter(|(_, v)| *v != 0).collect()
}

fn monic_mp(a: &Mp) -> Mp {
    match a.values().next_back() {
        Some(&l) => scale_mp(a, inv_mod(l, PRIME)),
        None => Mp::new(),
    }
}

/// Exact divisibility `b | a` by lex-leading-term division.
fn divides(a: &Mp, b: &Mp) -> bool {
    let Some((lb, &lc)) = b.iter().next_back() else {
        return a.is_empty();
    };
    let inv = inv_mod(lc, PRIME);
    let mut r = a.clone();
    while let Some((lr, &rc)) = r.iter().next_back() {
        if lr.iter().zip(lb).any(|(x, y)| x < y) {
            return false;
        }
        let shift: Vec<u32> = lr.iter().zip(lb).map(|(x, y)| x - y).collect();
        let f = mul_mod(rc, inv, PRIME);
        for (e, &c) in b {
            let key: Vec<u32> = e.iter().zip(&shift).map(|(x, y)| x + y).collect();
            let t = mul_mod(f, c, PRIME);
            let entry = r.entry(key.clone()).or_insert(0);
            *entry = sub_mod(*entry, t, PRIME);
            if *entry == 0 {
                r.remove(&key);
            }
        }
    }
    true
}

fn lead_exp(a: &Mp) -> Vec<u32> {
    a.keys().next_back().cloned().unwrap_or_default()
}

/// Lex-monic gcd of two nonzero polynomials in `k` variables mod `p`, by
/// evaluation and interpolation in the last variable. `None` when the
/// interpolated candidate fails trial division.
fn pgcd(a: &Mp, b: &Mp, k: usize) -> Option<Mp> {
    if k == 1 {
        let ua = groups(a).remove(&Vec::new()).unwrap_or_default();
        let ub = groups(b).remove(&Vec::new()).unwrap_or_default();
        return Some(ungroup(&Groups::from([(Vec::new(), uni::gcd(&ua, &ub))])));
    }
    let (ga, gb) = (groups(a), groups(b));
    let (ca, cb) = (content_last(&ga), content_last(&gb));
    let c = uni::gcd(&ca, &cb);
    let (ga, gb) = (div_last(&ga, &ca), div_last(&gb, &cb));
    let constant_main = |g: &Groups| g.len() == 1 && g.keys().next().is_some_and(|k| k.iter().all(|&e| e == 0));
    if constant_main(&ga) || constant_main(&gb) {
        return Some(monic_mp(&ungroup(&Groups::from([(vec![0; k - 1], c)]))));
    }
    let (la, lb) = (ga.values().next_back().expect("nonzero").clone(), gb.values().next_back().expect("nonzero").clone());
    let g = uni::gcd(&la, &lb);
    let deg_last = |gr: &Groups| gr.values().map(|u| u.len().saturating_sub(1)).max().unwrap_or(0);
    let bound = deg_last(&ga).min(deg_last(&gb)) + g.len().saturating_sub(1);
    let (a1, b1) = (ungroup(&ga), ungroup(&gb));
    let mut h: Option<(Groups, Vec<u32>)> = None;
    let mut q: Vec<u64> = vec![1];
    let mut points = 0usize;
    for x in 1..(4 * bound as u64 + 64) {
        let gx = uni::eval(&g, x);
        if gx == 0 || uni::eval(&la, x) == 0 || uni::eval(&lb, x) == 0 {
            continue;
        }
        let img = pgcd(&eval_last(&a1, x), &eval_last(&b1, x), k - 1)?;
        let m = lead_exp(&img);
        if m.iter().all(|&e| e == 0) {
            return Some(monic_mp(&ungroup(&Groups::from([(vec![0; k - 1], c)]))));
        }
        let img = scale_mp(&img, gx);
        match &mut h {
            Some((_, hm)) if m > *hm => continue,
            Some((hg, hm)) if m == *hm => {
                // Newton step: H += (img − H(x)) · q / q(x)
                let qx_inv = inv_mod(uni::eval(&q, x), PRIME);
                let factor = uni::scale(&q, qx_inv);
                let mut keys: Vec<Vec<u32>> = hg.keys().cloned().collect();
                keys.extend(img.keys().cloned());
                keys.sort();
                keys.dedup();
                for key in keys {
                    let cur = hg.get(&key).map_or(0, |u| uni::eval(u, x));
                    let diff = sub_mod(img.get(&key).copied().unwrap_or(0), cur, PRIME);
                    if diff == 0 {
                        continue;
                    }
                    let add = uni::scale(&factor, diff);
                    let u = hg.entry(key).or_default();
                    if u.len() < add.len() {
                        u.resize(add.len(), 0);
                    }
                    for (i, v) in add.into_iter().enumerate() {
                        u[i] = add_mod(u[i], v, PRIME);
                    }
                    trim(u);
                }
                hg.retain(|_, u| !u.is_empty());
                q = uni::mul(&q, &[PRIME - x, 1]);
                points += 1;
            }
            _ => {
                let hg: Groups = img.iter().map(|(k, &v)| (k.clone(), vec![v])).collect();
                h = Some((hg, m));
                q = vec![PRIME - x, 1];
                points = 1;
            }
        }
        if points > bound {
            let (hg, _) = h.as_ref().expect("set above");
            let cand = ungroup(&div_last(hg, &content_last(hg)));
            if divides(&a1, &cand) && divides(&b1, &cand) {
                let full: Groups = groups(&cand);
                return Some(monic_mp(&ungroup(&mul_last(&full, &c))));
            }
            return None;
        }
    }
    None
}

/// Rational number `n/d ≡ c (mod p)` with `|n|, d ≤ √(p/2)`.
fn rational_reconstruction(c: u64) -> Option<(i128, i128)> {
    let m = PRIME as i128;
    let bound = ((PRIME / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (m, c as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound || num_integer::Integer::gcd(&r1, &t1) != 1 {
        return None;
    }
    Some(if t1 < 0 { (-r1, -t1) } else { (r1, t1) })
}

/// Monic gcd via a modular image and rational reconstruction, certified by
/// exact trial division. `None` means "undecided": the caller falls back to
/// the exact remainder sequence.
pub fn modular_gcd<F: Scalar>(a: &Poly<F>, b: &Poly<F>) -> Option<Poly<F>> {
    let vars: Vec<Var> = a.vars().union(&b.vars()).copied().collect();
    if vars.is_empty() {
        return Some(Poly::one());
    }
    let image = |p: &Poly<F>| -> Option<Mp> {
        let mut out = Mp::new();
        for (m, c) in p.terms() {
            let c = c.reduce_mod(PRIME).filter(|&c| c != 0)?;
            out.insert(vars.iter().map(|&v| m.exponent(v)).collect(), c);
        }
        Some(out)
    };
    let g = pgcd(&image(a)?, &image(b)?, vars.len())?;
    let mut terms = Vec::with_capacity(g.len());
    for (e, &c) in &g {
        let (n, d) = rational_reconstruction(c)?;
        let m = Monomial::from_pairs(vars.iter().zip(e).filter(|(_, &k)| k > 0).map(|(&v, &k)| (v, k)).collect());
        terms.push((m, F::from_i128_ratio(n, d)?));
    }
    let cand = Poly::from_terms(terms);
    if cand.is_constant() {
        return Some(Poly::one());
    }
    (a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some()).then(|| cand.monic())
}
