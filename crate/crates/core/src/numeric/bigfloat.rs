//! Binary floating point with a big-integer mantissa.
//!
//! Precision is stated in decimal digits and carried by every value;
//! arithmetic between values of different precision is refused.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// `mantissa * 2^exp`, with `|mantissa| < 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mantissa: BigInt,
    exp: i64,
    digits: u32,
}

fn bits_for(digits: u32) -> u64 {
    // log2(10) ~ 3.3219, plus guard bits
    (digits as u64 * 3322).div_ceil(1000) + 16
}

impl BigFloat {
    pub fn zero(digits: u32) -> Self {
        BigFloat { mantissa: BigInt::zero(), exp: 0, digits }
    }

    pub fn from_int(v: impl Into<BigInt>, digits: u32) -> Self {
        BigFloat { mantissa: v.into(), exp: 0, digits }.normalized()
    }

    pub fn from_f64(v: f64, digits: u32) -> Self {
        let r = BigRational::from_float(v).expect("finite value");
        Self::from_rational(&r, digits)
    }

    pub fn from_rational(r: &BigRational, digits: u32) -> Self {
        if r.is_zero() {
            return Self::zero(digits);
        }
        let bits = bits_for(digits) as i64;
        let shift = bits - (r.numer().bits() as i64 - r.denom().bits() as i64);
        let m = if shift >= 0 {
            (r.numer() << shift as u64) / r.denom()
        } else {
            r.numer() / (r.denom() << (-shift) as u64)
        };
        BigFloat { mantissa: m, exp: -shift, digits }.normalized()
    }

    /// `mantissa * 2^exp`.
    pub fn from_parts(mantissa: BigInt, exp: i64, digits: u32) -> Self {
        BigFloat { mantissa, exp, digits }.normalized()
    }

    pub fn parts(&self) -> (&BigInt, i64) {
        (&self.mantissa, self.exp)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        BigFloat { mantissa: self.mantissa.clone(), exp: self.exp, digits }.normalized()
    }

    fn normalized(mut self) -> Self {
        let bits = bits_for(self.digits);
        let have = self.mantissa.bits();
        if have > bits {
            let drop = have - bits;
            // round to nearest
            let half = BigInt::one() << (drop - 1);
            let m = if self.mantissa.is_negative() { &self.mantissa - &half } else { &self.mantissa + &half };
            self.mantissa = m / (BigInt::one() << drop);
            self.exp += drop as i64;
        }
        if self.mantissa.is_zero() {
            self.exp = 0;
        } else if let Some(tz) = self.mantissa.trailing_zeros().filter(|&t| t > 0) {
            // one representation per value
            self.mantissa >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    fn check(&self, o: &BigFloat) {
        assert_eq!(self.digits, o.digits, "BigFloat precision mismatch");
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mantissa: self.mantissa.abs(), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mantissa: -&self.mantissa, ..self.clone() }
    }

    pub fn add(&self, o: &BigFloat) -> Self {
        self.check(o);
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        // avoid building huge shifts when one operand is negligible
        let top = (self.exp + self.mantissa.bits() as i64).max(o.exp + o.mantissa.bits() as i64);
        let floor = top - 2 * bits_for(self.digits) as i64;
        let (a, b) = (self.truncate_below(floor), o.truncate_below(floor));
        let e = a.exp.min(b.exp);
        let m = (&a.mantissa << (a.exp - e) as u64) + (&b.mantissa << (b.exp - e) as u64);
        BigFloat { mantissa: m, exp: e, digits: self.digits }.normalized()
    }

    fn truncate_below(&self, floor: i64) -> BigFloat {
        if self.exp >= floor {
            return self.clone();
        }
        let drop = (floor - self.exp) as u64;
        BigFloat { mantissa: &self.mantissa >> drop, exp: floor, digits: self.digits }
    }

    pub fn sub(&self, o: &BigFloat) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BigFloat) -> Self {
        self.check(o);
        BigFloat { mantissa: &self.mantissa * &o.mantissa, exp: self.exp + o.exp, digits: self.digits }.normalized()
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        BigFloat { mantissa: &self.mantissa * c, exp: self.exp, digits: self.digits }.normalized()
    }

    pub fn div(&self, o: &BigFloat) -> Self {
        self.check(o);
        assert!(!o.is_zero(), "division by zero");
        let bits = bits_for(self.digits) as i64;
        let shift = (bits + o.mantissa.bits() as i64 - self.mantissa.bits() as i64 + 2).max(0);
        let m = (&self.mantissa << shift as u64) / &o.mantissa;
        BigFloat { mantissa: m, exp: self.exp - o.exp - shift, digits: self.digits }.normalized()
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let bits = bits_for(self.digits) as i64;
        // make the exponent even and the mantissa wide enough
        let mut shift = (2 * bits - self.mantissa.bits() as i64 + 2).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = (&self.mantissa << shift as u64).sqrt();
        BigFloat { mantissa: m, exp: (self.exp - shift) / 2, digits: self.digits }.normalized()
    }

    pub fn to_f64(&self) -> f64 {
        let b = self.mantissa.bits() as i64;
        let drop = (b - 60).max(0);
        let m = (&self.mantissa >> drop as u64).to_f64().unwrap_or(0.0);
        m * 2f64.powi((self.exp + drop) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mantissa << self.exp as u64)
        } else {
            BigRational::new(self.mantissa.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Decimal rendering with `places` digits after the point, truncated.
    pub fn to_decimal(&self, places: usize) -> String {
        let r = self.to_rational();
        let scaled = (r.abs() * BigRational::from_integer(BigInt::from(10).pow(places as u32))).floor().to_integer();
        let s = scaled.to_string();
        let s = if s.len() <= places { format!("{}{}", "0".repeat(places + 1 - s.len()), s) } else { s };
        let (int, frac) = s.split_at(s.len() - places);
        let sign = if self.mantissa.sign() == Sign::Minus { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    /// `10^-k` at this precision.
    pub fn ten_pow_neg(k: u32, digits: u32) -> Self {
        Self::from_rational(&BigRational::new(BigInt::one(), BigInt::from(10).pow(k)), digits)
    }
}

impl PartialOrd for BigFloat {
    /// `None` when the precisions differ.
    fn partial_cmp(&self, o: &BigFloat) -> Option<Ordering> {
        if self.digits != o.digits {
            return None;
        }
        let d = self.sub(o);
        Some(d.mantissa.sign().cmp(&Sign::NoSign))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f.precision().unwrap_or(self.digits as usize);
        f.write_str(&self.to_decimal(places))
    }
}

impl Serialize for BigFloat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal(self.digits as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_to_many_digits() {
        let two = BigFloat::from_int(2, 60);
        let r = two.sqrt();
        assert_eq!(r.to_decimal(50), "1.41421356237309504880168872420969807856967187537694");
        let back = r.mul(&r).sub(&two).abs();
        assert!(back < BigFloat::ten_pow_neg(58, 60));
    }

    #[test]
    fn field_operations() {
        let d = 40;
        let a = BigFloat::from_f64(1.5, d);
        let b = BigFloat::from_int(3, d);
        assert_eq!(a.mul(&b).to_f64(), 4.5);
        assert_eq!(b.div(&a).to_f64(), 2.0);
        assert_eq!(a.sub(&b).to_f64(), -1.5);
        let third = BigFloat::from_int(1, d).div(&b);
        assert_eq!(third.to_decimal(30), "0.333333333333333333333333333333");
        assert!(BigFloat::from_int(1, d).partial_cmp(&BigFloat::from_int(1, d + 1)).is_none());
        assert!(a < b);
    }

    #[test]
    fn tiny_addend_is_absorbed() {
        let d = 20;
        let big = BigFloat::from_int(1, d);
        let tiny = BigFloat::from_rational(&BigRational::new(1.into(), BigInt::one() << 4000u32), d);
        assert_eq!(big.add(&tiny), big);
        assert_eq!(tiny.add(&tiny).to_rational(), BigRational::new(1.into(), BigInt::one() << 3999u32));
    }
}
