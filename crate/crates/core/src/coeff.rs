//! Coefficient domains for truncated series.
//!
//! A [`Coeff`] is a commutative ring element with instance-based constructors:
//! `zero`/`one` are taken *from* an existing element so that domains carrying
//! context (bit precision for complex numbers, variable arity for
//! polynomials) stay consistent without global state. Mixing domains is a
//! type error for the generic code and a runtime error at the JSON boundary.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cx::Cx;

/// Ring operations required of a series coefficient domain.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_c(&self, other: &Self) -> Self;
    fn sub_c(&self, other: &Self) -> Self;
    fn neg_c(&self) -> Self;
    fn mul_c(&self, other: &Self) -> Self;
    /// Exact multiplication by a machine integer.
    fn mul_int(&self, k: i64) -> Self;
    /// Exact (or correctly rounded) division by a nonzero machine integer.
    fn div_int(&self, k: i64) -> Self;
    /// Multiplicative inverse when the element is a unit of the domain.
    fn try_inv(&self) -> Option<Self>;
    /// Embedding of a machine integer.
    fn from_int_like(&self, k: i64) -> Self;
}

impl Coeff for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_c(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn mul_c(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, k: i64) -> Self {
        self * BigRational::from_integer(k.into())
    }
    fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero integer");
        self / BigRational::from_integer(k.into())
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int_like(&self, k: i64) -> Self {
        BigRational::from_integer(k.into())
    }
}

impl Coeff for Cx {
    fn zero_like(&self) -> Self {
        Cx::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        Cx::one(self.prec())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_c(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn mul_c(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, k: i64) -> Self {
        Cx::mul_int(self, k)
    }
    fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero integer");
        Cx::div_int(self, k)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int_like(&self, k: i64) -> Self {
        Cx::from_int(k, self.prec())
    }
}

/// Format a rational as the `"p/q"` wire form (integers render without `/q`).
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `"p"`, `"p/q"` or a plain decimal like `"-1.25"` into an exact rational.
pub fn rational_from_string(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: num_bigint::BigInt = num.trim().parse().ok()?;
        let d: num_bigint::BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let i: num_bigint::BigInt = if int_part.is_empty() || int_part == "-" {
            0.into()
        } else {
            int_part.parse().ok()?
        };
        let digits = frac_part.trim();
        if digits.is_empty() {
            return Some(BigRational::from_integer(i));
        }
        let f: num_bigint::BigInt = digits.parse().ok()?;
        if f.is_negative() {
            return None;
        }
        let scale = num_bigint::BigInt::from(10u32).pow(digits.len() as u32);
        let frac = BigRational::new(f, scale);
        let int = BigRational::from_integer(i);
        return Some(if negative { int - frac } else { int + frac });
    }
    let n: num_bigint::BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_string_roundtrip() {
        for s in ["3", "-7/4", "0", "22/7"] {
            let q = rational_from_string(s).unwrap();
            assert_eq!(rational_to_string(&q), s);
        }
        assert_eq!(
            rational_from_string("-1.25").unwrap(),
            BigRational::new((-5).into(), 4.into())
        );
        assert_eq!(
            rational_from_string("0.5").unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert!(rational_from_string("1/0").is_none());
    }
}
