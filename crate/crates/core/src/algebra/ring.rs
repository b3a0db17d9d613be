//! The commutative-ring interface shared by every coefficient type.
//!
//! Elements carry whatever context they need (a finite field, a variable set),
//! so constructors that need a "ring" take an existing element as a sample.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::budget::{Budget, BudgetExceeded};

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// Multiplicative inverse when `self` is a unit.
    fn inverse(&self) -> Option<Self>;

    /// 0 for ℤ and ℚ.
    fn characteristic(&self) -> u64;

    /// `self / d` when `d` divides `self` exactly.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inverse().map(|inv| self.clone() * &inv)
    }

    /// Multiplication charged against a term budget. Scalars cost one unit.
    fn mul_budgeted(&self, rhs: &Self, budget: &Budget) -> Result<Self, BudgetExceeded> {
        budget.charge(1)?;
        Ok(self.clone() * rhs)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// Euclidean division `self = q·d + r` with `euclid_size(r) < euclid_size(d)`;
    /// `None` outside Euclidean rings. Fields divide exactly.
    fn euclid_divrem(&self, d: &Self) -> Option<(Self, Self)> {
        d.inverse().map(|inv| (self.clone() * &inv, self.zero_like()))
    }

    /// Euclidean size: 0 for zero, 1 for units in a field.
    fn euclid_size(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_unit() {
            Some(BigInt::one())
        } else {
            None
        }
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn inverse(&self) -> Option<Self> {
        if One::is_one(&self.abs()) {
            Some(self.clone())
        } else {
            None
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
    fn euclid_divrem(&self, d: &Self) -> Option<(Self, Self)> {
        (!Zero::is_zero(d)).then(|| self.div_rem(d))
    }
    fn euclid_size(&self) -> Option<BigInt> {
        Some(self.abs())
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Integer `n` as an element of the ring of `sample`.
pub fn from_bigint<R: Ring>(sample: &R, n: &BigInt) -> R {
    let base = BigInt::from(1u64 << 62);
    let mut acc = sample.zero_like();
    let mut rest = n.abs();
    let mut scale = sample.one_like();
    let base_r = sample.int_like(1i64 << 62);
    while !Zero::is_zero(&rest) {
        let (q, r) = rest.div_rem(&base);
        let r: i64 = r.try_into().expect("digit below 2^62");
        acc = acc + &(scale.clone() * &sample.int_like(r));
        scale = scale * &base_r;
        rest = q;
    }
    if n.is_negative() {
        -acc
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_units_are_plus_minus_one() {
        assert!(BigInt::from(-1).is_unit());
        assert!(!BigInt::from(2).is_unit());
        assert_eq!(BigInt::from(12).div_exact(&BigInt::from(-4)), Some(BigInt::from(-3)));
        assert_eq!(BigInt::from(12).div_exact(&BigInt::from(5)), None);
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(BigInt::from(3).pow(5), BigInt::from(243));
        assert_eq!(BigInt::from(7).pow(0), BigInt::from(1));
    }

    #[test]
    fn bigint_lands_in_other_rings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let q = BigRational::from_integer(BigInt::from(0));
        assert_eq!(from_bigint(&q, &big), BigRational::from_integer(big.clone()));
        assert_eq!(from_bigint(&q, &-big.clone()), BigRational::from_integer(-big));
    }
}
