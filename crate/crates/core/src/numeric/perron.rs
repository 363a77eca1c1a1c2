//! Perron-Frobenius eigenvalue and eigenvector of a connected graph.

use super::bigfloat::BigFloat;
use super::roots::largest_real_root;
use crate::bigraph::AdjacencyMatrix;
use crate::poly::charpoly::char_poly;
use crate::poly::gcd::square_free_part;
use crate::poly::IntPoly;
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

/// Largest eigenvalue in double precision: bisection on positive
/// definiteness of `xI - M`, tested by banded Cholesky.
pub fn perron_value_f64(m: &AdjacencyMatrix) -> f64 {
    let n = m.size;
    let bw = m.bandwidth();
    let mut hi = (0..n).map(|i| m.row(i).iter().map(|&v| v as f64).sum::<f64>()).fold(0.0, f64::max);
    let mut lo = 0.0;
    if hi == 0.0 {
        return 0.0;
    }
    hi *= 1.0 + 1e-12;
    let mut l = vec![0.0; n * (bw + 1)];
    while hi - lo > 4.0 * f64::EPSILON * hi {
        let x = 0.5 * (lo + hi);
        if positive_definite(m, x, bw, &mut l) {
            hi = x;
        } else {
            lo = x;
        }
    }
    0.5 * (lo + hi)
}

/// Cholesky of `xI - M` restricted to the band; `l[i * (bw + 1) + k]` is
/// the entry `(i, i - bw + k)` of the factor.
fn positive_definite(m: &AdjacencyMatrix, x: f64, bw: usize, l: &mut [f64]) -> bool {
    let w = bw + 1;
    for i in 0..m.size {
        let j0 = i.saturating_sub(bw);
        for j in j0..=i {
            let a = if i == j { x - m.get(i, i) as f64 } else { -(m.get(i, j) as f64) };
            let mut s = a;
            let k0 = i.saturating_sub(bw).max(j.saturating_sub(bw));
            for k in k0..j {
                s -= l[i * w + (k + bw - i)] * l[j * w + (k + bw - j)];
            }
            if i == j {
                if s <= 0.0 {
                    return false;
                }
                l[i * w + bw] = s.sqrt();
            } else {
                l[i * w + (j + bw - i)] = s / l[j * w + bw];
            }
        }
    }
    true
}

/// `λ²` in double precision.
pub fn norm_squared_f64(m: &AdjacencyMatrix) -> f64 {
    perron_value_f64(m).powi(2)
}

#[derive(Debug, Clone, Serialize)]
pub struct PerronPair {
    pub lambda: BigFloat,
    /// Entries in canonical vertex order; the distinguished vertex has 1.
    pub vector: Vec<BigFloat>,
    /// `max |(Mv - λv)_i|`.
    pub residual: BigFloat,
}

impl PerronPair {
    pub fn norm_squared(&self) -> BigFloat {
        self.lambda.mul(&self.lambda)
    }
}

/// Eigenpair at `digits` decimal digits, with `‖Mv - λv‖∞ < 10^(10 - digits)`.
pub fn perron_eigenpair(m: &AdjacencyMatrix, digits: u32) -> Result<PerronPair, Error> {
    perron_eigenpair_with(m, &char_poly(m), digits)
}

/// As [`perron_eigenpair`], reusing a known characteristic polynomial.
pub fn perron_eigenpair_with(m: &AdjacencyMatrix, charpoly: &IntPoly, digits: u32) -> Result<PerronPair, Error> {
    let n = m.size;
    if n == 1 {
        return Err(Error::Rejected("a single vertex has no Perron eigenvector".into()));
    }
    // entries grow geometrically away from vertex 0; carry enough digits
    // to keep the absolute residual small
    let growth = (n as f64 * perron_value_f64(m).max(1.0).log10()).ceil() as u32;
    let work = digits + 20 + growth;
    let lambda = largest_root(charpoly, work)?;

    // (λI - M') w = M[1.., 0] with M' the matrix without vertex 0
    let bw = m.bandwidth().max(1);
    let size = n - 1;
    let zero = BigFloat::zero(work);
    let mut a: Vec<Vec<BigFloat>> = (0..size)
        .map(|i| {
            let hi = (i + bw + 1).min(size);
            let lo = i.saturating_sub(bw);
            (lo..hi)
                .map(|j| {
                    let v = BigFloat::from_int(-(m.get(i + 1, j + 1) as i64), work);
                    if i == j {
                        v.add(&lambda)
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let at = |a: &Vec<Vec<BigFloat>>, i: usize, j: usize| -> BigFloat {
        let lo = i.saturating_sub(bw);
        if j < lo || j >= lo + a[i].len() {
            zero.clone()
        } else {
            a[i][j - lo].clone()
        }
    };
    let mut rhs: Vec<BigFloat> = (0..size).map(|i| BigFloat::from_int(m.get(i + 1, 0) as i64, work)).collect();
    for k in 0..size {
        let piv = at(&a, k, k);
        if piv.is_zero() || piv.is_negative() {
            return Err(Error::NoConvergence("eigenvector system not positive definite".into()));
        }
        for i in k + 1..(k + bw + 1).min(size) {
            let f = at(&a, i, k);
            if f.is_zero() {
                continue;
            }
            let f = f.div(&piv);
            for j in k..(k + bw + 1).min(size) {
                let v = at(&a, i, j).sub(&f.mul(&at(&a, k, j)));
                let lo = i.saturating_sub(bw);
                a[i][j - lo] = v;
            }
            rhs[i] = rhs[i].sub(&f.mul(&rhs[k]));
        }
    }
    let mut w = vec![zero.clone(); size];
    for k in (0..size).rev() {
        let mut acc = rhs[k].clone();
        for j in k + 1..(k + bw + 1).min(size) {
            acc = acc.sub(&at(&a, k, j).mul(&w[j]));
        }
        w[k] = acc.div(&at(&a, k, k));
    }
    let mut v = vec![BigFloat::from_int(1, work)];
    v.extend(w);

    let mut residual = zero.clone();
    for i in 0..n {
        let mut acc = lambda.mul(&v[i]).neg();
        for j in i.saturating_sub(bw)..(i + bw + 1).min(n) {
            let e = m.get(i, j);
            if e != 0 {
                acc = acc.add(&v[j].mul_int(&BigInt::from(e)));
            }
        }
        let acc = acc.abs();
        if acc > residual {
            residual = acc;
        }
    }
    let pair = PerronPair {
        lambda: lambda.with_digits(digits),
        vector: v.iter().map(|x| x.with_digits(digits)).collect(),
        residual: residual.with_digits(digits),
    };
    let tol = BigFloat::ten_pow_neg(digits.saturating_sub(10), digits);
    if pair.residual >= tol || pair.vector.iter().any(BigFloat::is_negative) {
        return Err(Error::NoConvergence(format!("Perron residual {:.3e}", pair.residual.to_f64())));
    }
    Ok(pair)
}

/// Largest real root of `p` to `digits` digits: exact isolation, then
/// Newton's method kept inside the isolating interval.
pub fn largest_root(p: &IntPoly, digits: u32) -> Result<BigFloat, Error> {
    let sf = square_free_part(p);
    let eps = BigRational::new(1.into(), BigInt::from(10).pow(15));
    let iv = largest_real_root(&sf, &eps).ok_or_else(|| Error::Rejected("no real root".into()))?;
    if iv.lo == iv.hi {
        return Ok(BigFloat::from_rational(&iv.lo, digits));
    }
    let lo = BigFloat::from_rational(&iv.lo, digits);
    let hi = BigFloat::from_rational(&iv.hi, digits);
    let d = sf.derivative();
    let mut x = BigFloat::from_rational(&iv.mid(), digits);
    let tol = BigFloat::ten_pow_neg(digits, digits);
    for _ in 0..200 {
        // exact values at the dyadic iterate; floating Horner cancels badly
        let dx = eval_dyadic(&d, &x);
        if dx.is_zero() {
            break;
        }
        let step = eval_dyadic(&sf, &x).div(&dx);
        let next = x.sub(&step);
        if next < lo || next > hi {
            return Err(Error::NoConvergence("Newton step left the isolating interval".into()));
        }
        x = next;
        if step.abs() < tol {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence("Newton iteration budget exhausted".into()))
}

/// `p(x)` computed exactly and rounded once.
fn eval_dyadic(p: &IntPoly, x: &BigFloat) -> BigFloat {
    let (m, e) = x.parts();
    if p.is_zero() {
        return BigFloat::zero(x.digits());
    }
    let deg = p.degree();
    if e >= 0 {
        let xi = m << e as u64;
        return BigFloat::from_parts(p.eval(&xi), 0, x.digits());
    }
    // p(m / 2^f) = sum c_i m^i 2^(f (deg - i)) / 2^(f deg)
    let f = (-e) as u64;
    let mut acc = BigInt::zero();
    for (k, c) in p.coeffs().iter().rev().enumerate() {
        acc = if k == 0 { c.clone() } else { acc * m + (c << (f * k as u64)) };
    }
    BigFloat::from_parts(acc, -((f * deg as u64) as i64), x.digits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::Bigraph;

    fn dense_largest(m: &AdjacencyMatrix) -> f64 {
        let a = nalgebra::DMatrix::from_fn(m.size, m.size, |i, j| m.get(i, j) as f64);
        nalgebra::SymmetricEigen::new(a).eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn bisection_matches_dense_eigensolver() {
        for s in ["gbg1v1v1p1p1", "gbg1v1v1v1p1v1x0p1x0", "gbg1v1v1v1v1p1p1v1x0x0p0x1x0v1x0v1v1"] {
            let g = Bigraph::parse(s).unwrap();
            for j in [0, 1, 7, 40] {
                let m = g.translate(j).adjacency_matrix();
                let (a, b) = (perron_value_f64(&m), dense_largest(&m));
                assert!((a - b).abs() < 1e-12 * b, "{s} j={j}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn path_two_and_four() {
        let p = perron_eigenpair(&Bigraph::path(2).adjacency_matrix(), 50).unwrap();
        assert_eq!(p.lambda.to_decimal(20), "1.00000000000000000000");
        assert_eq!(p.vector[1].to_decimal(10), "1.0000000000");
        let p = perron_eigenpair(&Bigraph::path(4).adjacency_matrix(), 50).unwrap();
        assert_eq!(p.lambda.to_decimal(10), "1.6180339887");
    }

    #[test]
    fn haagerup_norm_at_128_digits() {
        let m = Bigraph::parse("gbg1v1v1v1p1v1x0p1x0").unwrap().adjacency_matrix();
        let p = perron_eigenpair(&m, 128).unwrap();
        // λ² = (5 + √13)/2
        let d = 128;
        let expect = BigFloat::from_int(13, d).sqrt().add(&BigFloat::from_int(5, d)).div(&BigFloat::from_int(2, d));
        assert!(p.norm_squared().sub(&expect).abs() < BigFloat::ten_pow_neg(115, d));
        assert!(p.residual < BigFloat::ten_pow_neg(118, d));
        assert!((norm_squared_f64(&m) - 4.302_775_637_7).abs() < 1e-9);
    }

    #[test]
    fn long_tail_converges() {
        let g = Bigraph::parse("gbg1v1v1p1p1").unwrap().translate(120);
        let p = perron_eigenpair(&g.adjacency_matrix(), 128).unwrap();
        assert!(p.residual < BigFloat::ten_pow_neg(118, 128));
        let f = norm_squared_f64(&g.adjacency_matrix());
        assert!((p.norm_squared().to_f64() - f).abs() < 1e-9);
    }
}
