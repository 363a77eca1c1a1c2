//! Dense polynomials with arbitrary-precision integer coefficients.

pub mod charpoly;
pub mod cyclotomic;
pub mod factor;
pub mod gcd;
pub mod laurent;
pub mod modp;
pub mod rational;
pub mod resultant;

pub use laurent::LaurentPoly;
pub use rational::RatPoly;

use crate::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Integer polynomial, coefficients in ascending degree.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 here, check [`IntPoly::is_zero`].
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monomial_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Largest absolute value of a coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Result<IntPoly, Error> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for v in &self.coeffs {
            let (q, r) = v.div_rem(c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            out.push(q);
        }
        Ok(IntPoly::new(out))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `t^deg p(1/t)`.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// `p(-x)`.
    pub fn negate_var(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x^k)`.
    pub fn inflate(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        IntPoly::new(v)
    }

    /// `q` with `p(x) = q(x^2)`, if `p` is even.
    pub fn deflate2(&self) -> Option<IntPoly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// Number of factors `x` dividing `p`.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> IntPoly {
        IntPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly::new(v)
    }

    /// `p(t) == t^deg p(1/t)`.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// `p(t) == -t^deg p(1/t)`.
    pub fn is_antipalindromic(&self) -> bool {
        let n = self.coeffs.len();
        n > 0 && (0..n).all(|i| self.coeffs[i] == -&self.coeffs[n - 1 - i])
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.is_palindromic() || self.is_antipalindromic()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(n/d)` for `d > 0`, without forming the rational.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &dpow;
            dpow *= den;
        }
        // acc = d^deg p(n/d)
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.is_monic(), "divisor must be monic");
        if self.coeffs.len() < d.coeffs.len() {
            return (IntPoly::zero(), self.clone());
        }
        let dn = d.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let c = std::mem::take(&mut r[i + dn]);
            if c.is_zero() {
                continue;
            }
            for (k, dk) in d.coeffs[..dn].iter().enumerate() {
                if !dk.is_zero() {
                    r[i + k] -= &c * dk;
                }
            }
            q[i] = c;
        }
        r.truncate(dn);
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// Exact quotient `self / d`; errors if `d` does not divide `self` in `Z[x]`.
    pub fn exact_div(&self, d: &IntPoly) -> Result<IntPoly, Error> {
        if d.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return Err(Error::InexactDivision);
        }
        let dn = d.degree();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let top = std::mem::take(&mut r[i + dn]);
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (k, dk) in d.coeffs[..dn].iter().enumerate() {
                if !dk.is_zero() {
                    r[i + k] -= &c * dk;
                }
            }
            q[i] = c;
        }
        if r[..dn].iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(IntPoly::new(q))
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) a mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero());
        if self.degree() < d.degree() || self.is_zero() {
            return self.clone();
        }
        let dn = d.degree();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        let steps = r.len() - dn;
        for i in (0..steps).rev() {
            let top = std::mem::take(&mut r[i + dn]);
            for c in r[..i + dn].iter_mut() {
                *c *= &lc;
            }
            if top.is_zero() {
                continue;
            }
            for (k, dk) in d.coeffs[..dn].iter().enumerate() {
                r[i + k] -= &top * dk;
            }
        }
        r.truncate(dn);
        IntPoly::new(r)
    }

    /// Removes every factor of `d` from `self`, returning the multiplicity.
    pub fn strip_factor(&mut self, d: &IntPoly) -> usize {
        let mut e = 0;
        if d.degree() == 0 {
            return 0;
        }
        while self.degree() >= d.degree() && !self.is_zero() {
            match self.exact_div(d) {
                Ok(q) => {
                    *self = q;
                    e += 1;
                }
                Err(_) => break,
            }
        }
        e
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &IntPoly::constant(c.clone());
        }
        acc
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !a.is_one() {
                out.push_str(&a.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses sums of terms such as `5x^3-143x^2+676x-845` (spaces and `*`
    /// allowed, any single-letter variable).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::PolyParse(s.to_string());
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            let split = body.find(|c: char| c.is_ascii_alphabetic());
            let (num, exp) = match split {
                None => (body, 0usize),
                Some(k) => {
                    let rest = &body[k + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (&body[..k], e)
                }
            };
            let mut c: BigInt = if num.is_empty() { BigInt::one() } else { num.parse().map_err(|_| bad())? };
            if sign < 0 {
                c = -c;
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl From<IntPoly> for Vec<String> {
    fn from(p: IntPoly) -> Self {
        p.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPoly {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self, Error> {
        let c: Result<Vec<BigInt>, _> = v.iter().map(|s| s.parse::<BigInt>()).collect();
        c.map(IntPoly::new).map_err(|_| Error::PolyParse(v.join(",")))
    }
}

impl<'a> Add for &'a IntPoly {
    type Output = IntPoly;
    fn add(self, o: &'a IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::new(v)
    }
}

impl<'a> Sub for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &'a IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = self.coeffs.clone();
        v.resize(n, BigInt::zero());
        for (a, b) in v.iter_mut().zip(&o.coeffs) {
            *a -= b;
        }
        IntPoly::new(v)
    }
}

impl<'a> Mul for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &'a IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, o: IntPoly) -> IntPoly {
        &self + &o
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, o: IntPoly) -> IntPoly {
        &self - &o
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, o: IntPoly) -> IntPoly {
        &self * &o
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Number of sign alternations in a coefficient list, zeros skipped.
pub fn sign_changes_of(coeffs: &[BigInt]) -> usize {
    let mut last: Option<bool> = None;
    let mut n = 0;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let pos = c.is_positive();
        if last.is_some_and(|l| l != pos) {
            n += 1;
        }
        last = Some(pos);
    }
    n
}
