//! Cyclotomic polynomials, their images under `x = t + 1/t`, and small
//! integer number theory used around them.

use super::{IntPoly, LaurentPoly};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Primes `<= n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of the number with the given factorization, unsorted.
pub fn divisors_from(factors: &[(u128, u32)]) -> Vec<u128> {
    let mut divs = vec![1u128];
    for &(p, e) in factors {
        let len = divs.len();
        let mut pk = 1u128;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs
}

pub fn totient(n: u64) -> u64 {
    factorize(n as u128)
        .iter()
        .map(|&(p, e)| ((p - 1) * p.pow(e - 1)) as u64)
        .product()
}

fn cache() -> &'static Mutex<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `k`-th cyclotomic polynomial.
pub fn cyclotomic_poly(k: u64) -> Arc<IntPoly> {
    assert!(k >= 1);
    if let Some(p) = cache().lock().unwrap().get(&k) {
        return p.clone();
    }
    let mut f = &IntPoly::monomial(BigInt::one(), k as usize) - &IntPoly::one();
    for d in 1..k {
        if k % d == 0 {
            f = f.div_rem_monic(&cyclotomic_poly(d)).0;
        }
    }
    let f = Arc::new(f);
    cache().lock().unwrap().insert(k, f.clone());
    f
}

/// Minimal polynomial of `2 cos(2 pi / m)`.
pub fn psi(m: u64) -> IntPoly {
    match m {
        1 => IntPoly::from_i64s(&[-2, 1]),
        2 => IntPoly::from_i64s(&[2, 1]),
        _ => {
            let phi = cyclotomic_poly(m);
            let half = (phi.degree() / 2) as i64;
            LaurentPoly::new(-half, (*phi).clone()).to_x_poly().expect("cyclotomic polynomials are palindromic")
        }
    }
}

/// Order `m'` with `psi(m')(x) = ±psi(m)(-x)`: the order of `-zeta_m`.
pub fn negated_order(m: u64) -> u64 {
    match m % 4 {
        0 => m,
        2 => m / 2,
        _ => 2 * m,
    }
}

/// Cyclotomic factors of `f` as `(order, multiplicity)`, by trial division.
pub fn cyclotomic_content(f: &IntPoly) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let deg = f.degree() as u64;
    let bound = 2 * deg * deg + 2;
    for m in 1..=bound {
        if rest.degree() == 0 {
            break;
        }
        if totient(m) > rest.degree() as u64 {
            continue;
        }
        let e = rest.strip_factor(&cyclotomic_poly(m));
        if e > 0 {
            out.push((m, e));
        }
    }
    out
}
