//! Polynomials over the rationals, stored as an integer numerator over a
//! positive common denominator.

use super::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    num: IntPoly,
    den: BigInt,
}

impl RatPoly {
    pub fn new(num: IntPoly, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut g = num.content().gcd(&den);
        if g.is_zero() {
            return RatPoly::zero();
        }
        if den.is_negative() {
            g = -g;
        }
        RatPoly { num: IntPoly::new(num.coeffs().iter().map(|c| c / &g).collect()), den: den / g }
    }

    pub fn zero() -> Self {
        RatPoly { num: IntPoly::zero(), den: BigInt::one() }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly::new(p.clone(), BigInt::one())
    }

    pub fn from_coeffs(c: &[BigRational]) -> Self {
        let den = c.iter().fold(BigInt::one(), |d, r| d.lcm(r.denom()));
        let num = c.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        RatPoly::new(IntPoly::new(num), den)
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .coeffs()
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn degree(&self) -> usize {
        self.num.degree()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num.coeff(i), self.den.clone())
    }

    pub fn add(&self, o: &RatPoly) -> RatPoly {
        let den = self.den.lcm(&o.den);
        let a = self.num.scale(&(&den / &self.den));
        let b = o.num.scale(&(&den / &o.den));
        RatPoly::new(&a + &b, den)
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        RatPoly::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.num.scale(c.numer()), &self.den * c.denom())
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs();
        let dc = d.coeffs();
        let dn = d.degree();
        if self.is_zero() || r.len() < dc.len() {
            return (RatPoly::zero(), self.clone());
        }
        let inv = BigRational::one() / &dc[dn];
        let mut q = vec![BigRational::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let c = &r[i + dn] * &inv;
            if c.is_zero() {
                continue;
            }
            for (k, dk) in dc.iter().enumerate() {
                r[i + k] -= &c * dk;
            }
            q[i] = c;
        }
        r.truncate(dn);
        (RatPoly::from_coeffs(&q), RatPoly::from_coeffs(&r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// `(g, s, t)` with `g = s a + t b` monic.
    pub fn ext_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let one = RatPoly::from_int(&IntPoly::one());
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc = BigRational::one() / r0.coeff(r0.degree());
        (r0.scale(&lc), s0.scale(&lc), t0.scale(&lc))
    }

    /// Primitive integer polynomial with positive leading coefficient.
    pub fn to_primitive(&self) -> IntPoly {
        self.num.primitive_part()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.num.eval_rational(x) / BigRational::from_integer(self.den.clone())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str, d: i64) -> RatPoly {
        RatPoly::new(s.parse().unwrap(), BigInt::from(d))
    }

    #[test]
    fn lowest_terms() {
        let p = r("2x+4", 6);
        assert_eq!(p.numerator(), &"x+2".parse().unwrap());
        assert_eq!(p.denominator(), &BigInt::from(3));
        let p = r("x", -2);
        assert_eq!(p.numerator(), &"-x".parse().unwrap());
        assert_eq!(p.denominator(), &BigInt::from(2));
    }

    #[test]
    fn euclid() {
        let a = r("x^3-2x", 1);
        let b = r("2x^2-1", 1);
        let (q, rem) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&rem), a);
        let (g, s, t) = RatPoly::ext_gcd(&r("x^2-1", 1), &r("x^2+2x+1", 1));
        assert_eq!(g, r("x+1", 1));
        assert_eq!(s.mul(&r("x^2-1", 1)).add(&t.mul(&r("x^2+2x+1", 1))), g);
    }
}
