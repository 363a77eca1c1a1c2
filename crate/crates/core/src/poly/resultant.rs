//! Resultants and discriminants by fraction-free elimination.

use super::IntPoly;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `Res(a, b)` as the determinant of the Sylvester matrix.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (m, n) = (a.degree(), b.degree());
    if m + n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    bareiss_det(rows)
}

/// `(-1)^(n(n-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPoly) -> BigInt {
    let n = p.degree();
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::one();
    }
    let r = resultant(p, &p.derivative()) / p.lc();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_discriminants() {
        assert_eq!(discriminant(&p("x^2-4x+2")), BigInt::from(8));
        assert_eq!(discriminant(&p("x^2-32x+56")), BigInt::from(800));
        assert_eq!(discriminant(&p("x^2-2x+1")), BigInt::zero());
        assert_eq!(discriminant(&p("3x^2+x-1")), BigInt::from(13));
    }

    #[test]
    fn cubic_discriminant() {
        // x^3 + a x + b has discriminant -4a^3 - 27b^2
        assert_eq!(discriminant(&p("x^3-2x+1")), BigInt::from(32 - 27));
    }

    #[test]
    fn resultant_of_linear_factors() {
        assert_eq!(resultant(&p("x-2"), &p("x^2+1")), BigInt::from(5));
        assert_eq!(resultant(&p("x-1"), &p("x^2-1")), BigInt::zero());
    }

    #[test]
    fn determinant() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)],
            vec![BigInt::from(3), BigInt::from(1), BigInt::from(4)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-7));
    }
}
