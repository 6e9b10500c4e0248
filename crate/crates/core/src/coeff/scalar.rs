use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// An exact coefficient field.
///
/// Every operation in the kernel relies on exact division, so floating point
/// types are deliberately not admitted (they do not implement `Eq`).
pub trait Scalar: Num + Clone + Eq + std::ops::Neg<Output = Self> + FromPrimitive + Debug + Display + Send + Sync + 'static {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("integer embeds") / Self::from_i64(den).expect("integer embeds")
    }

    /// Image in `Z/pZ`, or `None` when the denominator vanishes there.
    fn reduce_mod(&self, p: u64) -> Option<u64>;

    /// `n/d`, or `None` when it does not fit.
    fn from_i128_ratio(n: i128, d: i128) -> Option<Self>;
}

fn ratio_mod<T: Clone + Into<BigInt>>(r: &Ratio<T>, p: u64) -> Option<u64> {
    let p_big = BigInt::from(p);
    let n = (r.numer().clone().into() % &p_big + &p_big) % &p_big;
    let d = (r.denom().clone().into() % &p_big + &p_big) % &p_big;
    let n = n.to_u64()?;
    let d = d.to_u64()?;
    if d == 0 {
        return None;
    }
    Some(crate::coeff::modular::mul_mod(n, crate::coeff::modular::inv_mod(d, p), p))
}

impl Scalar for BigRational {
    fn reduce_mod(&self, p: u64) -> Option<u64> {
        ratio_mod(self, p)
    }

    fn from_i128_ratio(n: i128, d: i128) -> Option<Self> {
        (d != 0).then(|| BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
}

impl Scalar for Ratio<i64> {
    fn reduce_mod(&self, p: u64) -> Option<u64> {
        ratio_mod(self, p)
    }

    fn from_i128_ratio(n: i128, d: i128) -> Option<Self> {
        (d != 0).then(|| Some(Ratio::new(i64::try_from(n).ok()?, i64::try_from(d).ok()?))).flatten()
    }
}

impl Scalar for Ratio<i128> {
    fn reduce_mod(&self, p: u64) -> Option<u64> {
        ratio_mod(self, p)
    }

    fn from_i128_ratio(n: i128, d: i128) -> Option<Self> {
        (d != 0).then(|| Ratio::new(n, d))
    }
}

/// Shorthand for building a big rational from small integers.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
