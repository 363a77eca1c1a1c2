//! Laurent polynomials `t^low * body(t)`.

use super::IntPoly;
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `t^low * body(t)` where `body` has a nonzero constant term (or is zero).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    low: i64,
    body: IntPoly,
}

impl LaurentPoly {
    pub fn new(low: i64, body: IntPoly) -> Self {
        if body.is_zero() {
            return LaurentPoly { low: 0, body };
        }
        let v = body.x_valuation();
        LaurentPoly { low: low + v as i64, body: body.shift_down(v) }
    }

    pub fn zero() -> Self {
        LaurentPoly { low: 0, body: IntPoly::zero() }
    }

    pub fn monomial(c: BigInt, k: i64) -> Self {
        LaurentPoly::new(k, IntPoly::constant(c))
    }

    /// `t + 1/t`.
    pub fn t_plus_inv() -> Self {
        LaurentPoly::new(-1, IntPoly::from_i64s(&[1, 0, 1]))
    }

    /// `t - 1/t`.
    pub fn t_minus_inv() -> Self {
        LaurentPoly::new(-1, IntPoly::from_i64s(&[-1, 0, 1]))
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.body.degree() as i64
    }

    pub fn body(&self) -> &IntPoly {
        &self.body
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        if k < self.low {
            return BigInt::zero();
        }
        self.body.coeff((k - self.low) as usize)
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { low: self.low + k, body: self.body.clone() }
    }

    /// `f(1/t)`.
    pub fn invert(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: -self.high(), body: self.body.reversed() }
    }

    pub fn is_palindromic(&self) -> bool {
        self.low == -self.high() && self.body.is_palindromic()
    }

    /// Part with strictly positive exponents.
    pub fn positive_part(&self) -> Self {
        let mut c = Vec::new();
        for k in 1..=self.high().max(0) {
            c.push(self.coeff(k));
        }
        LaurentPoly::new(1, IntPoly::new(c))
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Result<Self, Error> {
        let q = self.body.exact_div(&d.body)?;
        Ok(LaurentPoly::new(self.low - d.low, q))
    }

    /// `p(t + 1/t)`.
    pub fn from_x_poly(p: &IntPoly) -> Self {
        let tp = LaurentPoly::t_plus_inv();
        let mut acc = LaurentPoly::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * &tp) + &LaurentPoly::monomial(c.clone(), 0);
        }
        acc
    }

    /// Inverse of [`LaurentPoly::from_x_poly`] for palindromic input.
    pub fn to_x_poly(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if !self.is_palindromic() {
            return None;
        }
        let e = self.high();
        let mut rest = self.clone();
        let mut powers = vec![LaurentPoly::monomial(BigInt::one(), 0)];
        for k in 1..=e as usize {
            let next = &powers[k - 1] * &LaurentPoly::t_plus_inv();
            powers.push(next);
        }
        let mut g = vec![BigInt::zero(); e as usize + 1];
        for k in (0..=e).rev() {
            let c = rest.coeff(k);
            if !c.is_zero() {
                rest = &rest - &(&powers[k as usize] * &LaurentPoly::monomial(c.clone(), 0));
                g[k as usize] = c;
            }
        }
        rest.is_zero().then(|| IntPoly::new(g))
    }

    /// Number of sign alternations of the coefficients, zeros skipped.
    pub fn sign_changes(&self) -> usize {
        super::sign_changes_of(self.body.coeffs())
    }

    /// Sum of the `k`-th powers of the roots of `body`, with multiplicity.
    pub fn power_sum(&self, k: usize) -> Result<BigInt, Error> {
        power_sum(&self.body, k)
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c < &BigInt::zero();
            let a = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if e == 0 || !a.is_one() {
                out.push_str(&a.to_string());
            }
            match e {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{e}")),
            }
        }
        out
    }
}

/// Newton's identities: `sum rho^k` over the roots of `p`.
pub fn power_sum(p: &IntPoly, k: usize) -> Result<BigInt, Error> {
    if p.is_zero() {
        return Err(Error::Internal("power sum of the zero polynomial".into()));
    }
    let n = p.degree();
    let lead = BigRational::from_integer(p.lc());
    // e_i-style coefficients a_i / a_0 in descending order
    let a: Vec<BigRational> = (0..=k)
        .map(|i| {
            if i > n {
                BigRational::zero()
            } else {
                BigRational::from_integer(p.coeff(n - i)) / &lead
            }
        })
        .collect();
    let mut s: Vec<BigRational> = Vec::with_capacity(k);
    for m in 1..=k {
        let mut v = -&a[m] * BigRational::from_integer(BigInt::from(m));
        for i in 1..m {
            v -= &a[i] * &s[m - i - 1];
        }
        s.push(v);
    }
    let r = s.pop().unwrap_or_else(|| BigRational::from_integer(BigInt::from(n)));
    if !r.is_integer() {
        return Err(Error::Internal(format!("power sum {r} is not an integer")));
    }
    Ok(r.to_integer())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<'a> Add for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let a = self.body.shift_up((self.low - low) as usize);
        let b = o.body.shift_up((o.low - low) as usize);
        LaurentPoly::new(low, &a + &b)
    }
}

impl<'a> Sub for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &'a LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl<'a> Mul for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &'a LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(self.low + o.low, &self.body * &o.body)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, body: -&self.body }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::new(low, IntPoly::from_i64s(c))
    }

    #[test]
    fn normalizes_offset() {
        let a = l(-3, &[0, 0, 1, 0, 1]);
        assert_eq!(a.low(), -1);
        assert_eq!(a.high(), 1);
        assert_eq!(a, LaurentPoly::t_plus_inv());
    }

    #[test]
    fn x_substitution() {
        assert_eq!(LaurentPoly::from_x_poly(&IntPoly::x()), LaurentPoly::t_plus_inv());
        let f = LaurentPoly::from_x_poly(&"x^2-1".parse().unwrap());
        assert_eq!(f, l(-2, &[1, 0, 1, 0, 1]));
        assert_eq!(f.high() - f.low(), 4);
        assert_eq!(f.to_x_poly().unwrap(), "x^2-1".parse().unwrap());
        assert!(l(0, &[1, 1]).to_x_poly().is_none());
    }

    #[test]
    fn sign_change_counts() {
        assert_eq!(l(-5, &[-1, 0, -1, 0, 0, 0, 1]).sign_changes(), 1);
        let a = l(-15, &[-1, 0, -2, 0, -4, 0, -6, 0, -7, 0, -6, 0, -3, 0, 0, 0, 1]);
        assert_eq!(a.sign_changes(), 1);
        assert_eq!(l(0, &[7]).sign_changes(), 0);
    }

    #[test]
    fn power_sums() {
        assert_eq!(power_sum(&IntPoly::from_i64s(&[-1, 0, 1]), 4).unwrap(), BigInt::from(2));
        assert_eq!(power_sum(&IntPoly::from_i64s(&[2, -3, 1]), 4).unwrap(), BigInt::from(17));
        assert!(power_sum(&IntPoly::from_i64s(&[1, 2]), 1).is_err());
    }

    #[test]
    fn division_and_inversion() {
        let g = &LaurentPoly::t_minus_inv() * &LaurentPoly::t_plus_inv();
        assert_eq!(g.exact_div(&LaurentPoly::t_minus_inv()).unwrap(), LaurentPoly::t_plus_inv());
        assert_eq!(l(1, &[1]).invert(), l(-1, &[1]));
        assert_eq!(l(-2, &[5, 0, 0, 1]).positive_part(), l(1, &[1]));
    }
}
