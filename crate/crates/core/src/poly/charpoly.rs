//! Characteristic polynomials of integer matrices.
//!
//! The fast path reduces the matrix to Hessenberg form modulo several word
//! sized primes and recombines the coefficients by the Chinese remainder
//! theorem, with enough primes to cover a Hadamard-type bound on the
//! coefficients.

use super::IntPoly;
use crate::bigraph::AdjacencyMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Characteristic polynomial mod `p` via Hessenberg reduction.
fn char_poly_mod(m: &[Vec<i64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let red = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let mut h: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&v| red(v)).collect()).collect();
    let mulm = |a: u64, b: u64| a * b % p;
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, b);
            }
            b = mulm(b, b);
            e >>= 1;
        }
        r
    };
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else { continue };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let iv = inv(h[k + 1][k]);
        for i in k + 2..n {
            if h[i][k] == 0 {
                continue;
            }
            let u = mulm(h[i][k], iv);
            // row_i -= u row_{k+1}
            for j in 0..n {
                let t = mulm(u, h[k + 1][j]);
                h[i][j] = (h[i][j] + p - t) % p;
            }
            // col_{k+1} += u col_i
            for row in h.iter_mut() {
                let t = mulm(u, row[i]);
                row[k + 1] = (row[k + 1] + t) % p;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mi in 0..n {
        let prev = &polys[mi];
        let mut next = vec![0u64; mi + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mulm(h[mi][mi], c)) % p;
        }
        let mut prod = 1u64;
        for i in (0..mi).rev() {
            prod = mulm(prod, h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let coef = mulm(h[i][mi], prod);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + p - mulm(coef, c)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Exact `det(xI - M)` for an integer matrix given by rows.
pub fn char_poly_rows(m: &[Vec<i64>]) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let bits: f64 = m
        .iter()
        .map(|r| (1.0 + r.iter().map(|&v| (v as f64) * (v as f64)).sum::<f64>().sqrt()).log2())
        .sum::<f64>()
        + 2.0;
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    let mut p: u64 = (1 << 31) - 1;
    let mut have_bits = 0.0;
    while have_bits < bits {
        while !is_prime_u64(p) {
            p -= 2;
        }
        let r = char_poly_mod(m, p);
        // Garner step: acc += modulus * ((r - acc) * modulus^-1 mod p)
        let pb = BigInt::from(p);
        let minv = {
            let mm = (&modulus % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
            let (mut res, mut b, mut e) = (1u64, mm, p - 2);
            while e > 0 {
                if e & 1 == 1 {
                    res = res * b % p;
                }
                b = b * b % p;
                e >>= 1;
            }
            res
        };
        for (i, a) in acc.iter_mut().enumerate() {
            let ri = r.get(i).copied().unwrap_or(0);
            let am = {
                let v = &*a % &pb;
                let v = if v < BigInt::zero() { v + &pb } else { v };
                v.to_u64_digits().1.first().copied().unwrap_or(0)
            };
            let diff = (ri + p - am) % p * minv % p;
            *a += &modulus * BigInt::from(diff);
        }
        modulus *= &pb;
        have_bits += (p as f64).log2();
        p -= 2;
    }
    let half = &modulus / 2;
    let coeffs = acc.into_iter().map(|a| if a > half { a - &modulus } else { a }).collect();
    IntPoly::new(coeffs)
}

/// Characteristic polynomial of a graph's adjacency matrix.
pub fn char_poly(m: &AdjacencyMatrix) -> IntPoly {
    let rows: Vec<Vec<i64>> = (0..m.size).map(|i| m.row(i).iter().map(|&v| v as i64).collect()).collect();
    char_poly_rows(&rows)
}

/// Reference implementation: `det(xI - M)` expanded over all permutations.
/// Exponential time; meant for checking small cases.
pub fn char_poly_by_permutations(m: &[Vec<i64>]) -> IntPoly {
    let n = m.len();
    let entry = |i: usize, j: usize| -> IntPoly {
        if i == j {
            IntPoly::from_i64s(&[-m[i][i], 1])
        } else {
            IntPoly::from_i64s(&[-m[i][j]])
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = IntPoly::zero();
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let term = |perm: &[usize], sign: i64| -> IntPoly {
        let mut t = IntPoly::from_i64s(&[sign]);
        for (i, &j) in perm.iter().enumerate() {
            t = &t * &entry(i, j);
            if t.is_zero() {
                break;
            }
        }
        t
    };
    total = &total + &term(&perm, sign);
    // Heap's algorithm
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            total = &total + &term(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::Bigraph;
    use proptest::prelude::*;

    #[test]
    fn paths() {
        assert_eq!(char_poly(&Bigraph::path(2).adjacency_matrix()), "x^2-1".parse().unwrap());
        assert_eq!(char_poly(&Bigraph::path(3).adjacency_matrix()), "x^3-2x".parse().unwrap());
    }

    #[test]
    fn vine_one() {
        let m = Bigraph::parse("gbg1v1v1p1p1").unwrap().adjacency_matrix();
        // five edges, three pairs of disjoint edges, no three disjoint edges
        assert_eq!(char_poly(&m), "x^6-5x^4+3x^2".parse().unwrap());
    }

    #[test]
    fn matches_permutation_expansion() {
        let m = vec![vec![2, -1, 0, 3], vec![1, 0, 5, -2], vec![0, 4, -3, 1], vec![7, 0, 1, 1]];
        assert_eq!(char_poly_rows(&m), char_poly_by_permutations(&m));
    }

    #[test]
    fn large_path_uses_several_primes() {
        let m = Bigraph::path(120).adjacency_matrix();
        let f = char_poly(&m);
        // U_n(x/2) recurrence
        let mut a = IntPoly::one();
        let mut b = IntPoly::x();
        for _ in 1..120 {
            let c = &(&IntPoly::x() * &b) - &a;
            a = b;
            b = c;
        }
        assert_eq!(f, b);
    }

    proptest! {
        #[test]
        fn random_small_matrices(v in proptest::collection::vec(-9i64..10, 25)) {
            let m: Vec<Vec<i64>> = v.chunks(5).map(|c| c.to_vec()).collect();
            prop_assert_eq!(char_poly_rows(&m), char_poly_by_permutations(&m));
        }
    }
}
