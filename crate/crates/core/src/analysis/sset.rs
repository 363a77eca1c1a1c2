//! Roots of unity on which `H_n = t^β C - ε t^c C(1/t)` can vanish.
//!
//! For each candidate order `k` the exponent `β mod k` is pinned down
//! numerically and then confirmed by an exact test that a sparse integer
//! combination of `k`-th roots of unity sums to zero.

use crate::poly::cyclotomic::{divisors_from, factorize, primes_up_to, totient};
use crate::poly::IntPoly;
use crate::Error;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

fn smallest_prime_factor(k: u128) -> u128 {
    if k % 2 == 0 {
        return 2;
    }
    let mut p = 3;
    while p * p <= k {
        if k % p == 0 {
            return p;
        }
        p += 2;
    }
    k
}

fn collect(terms: impl IntoIterator<Item = (u128, i128)>, k: u128) -> BTreeMap<u128, i128> {
    let mut d = BTreeMap::new();
    for (e, c) in terms {
        *d.entry(e % k).or_insert(0) += c;
    }
    d.retain(|_, c| *c != 0);
    d
}

/// Whether `sum c * zeta_k^e` is exactly zero.
///
/// With `p` the smallest prime of `k`: if `p^2 | k`, the sum splits by
/// exponent residue mod `p` into independent sums at order `k/p`.
/// Otherwise `Q(zeta_k) = Q(zeta_{k/p})(zeta_p)` with basis
/// `1, zeta_p, ..., zeta_p^{p-2}` and `zeta_p^{p-1} = -(1 + ... )`, so the sum
/// vanishes iff all `p` components at order `k/p` coincide.
pub fn vanishes(terms: &[(u128, i128)], k: u128) -> bool {
    vanishes_map(collect(terms.iter().copied(), k), k)
}

fn vanishes_map(d: BTreeMap<u128, i128>, k: u128) -> bool {
    if d.is_empty() {
        return true;
    }
    if k == 1 {
        return false;
    }
    let p = smallest_prime_factor(k);
    let kk = k / p;
    if kk % p == 0 {
        let mut groups: BTreeMap<u128, Vec<(u128, i128)>> = BTreeMap::new();
        for (e, c) in d {
            groups.entry(e % p).or_default().push((e / p, c));
        }
        return groups.into_values().all(|g| vanishes_map(collect(g, kk), kk));
    }
    // e = r (mod p) component and y = e (mod kk) component, via u kk + v p = 1
    let u = (kk % p).to_i128().unwrap().extended_gcd(&(p as i128)).x.rem_euclid(p as i128) as u128;
    let v_num = 1i128 - (u as i128) * (kk as i128);
    let v = (v_num / p as i128).rem_euclid(kk as i128) as u128;
    let mut groups: Vec<BTreeMap<u128, i128>> = vec![BTreeMap::new(); p as usize];
    for (e, c) in d {
        let r = mulmod(e, u, p);
        let y = mulmod(e, v, kk);
        *groups[r as usize].entry(y).or_insert(0) += c;
    }
    let base = groups[0].clone();
    groups.into_iter().skip(1).all(|g| {
        let mut diff = g;
        for (y, c) in &base {
            *diff.entry(*y).or_insert(0) -= c;
        }
        diff.retain(|_, c| *c != 0);
        vanishes_map(diff, kk)
    })
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if m == 0 {
        return 0;
    }
    let (a, b) = (a % m, b % m);
    match a.checked_mul(b) {
        Some(x) => x % m,
        None => {
            let (mut r, mut a, mut b) = (0u128, a, b);
            while b > 0 {
                if b & 1 == 1 {
                    r = (r + a) % m;
                }
                a = (a << 1) % m;
                b >>= 1;
            }
            r
        }
    }
}

/// One order `k` at which `H_n` vanishes for the residue class of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOrder {
    /// Multiplicative order of the root of unity.
    pub k: u64,
    /// `β mod k` with `ζ_k^β C(ζ_k) = ε C_rev(ζ_k)`.
    pub beta: u64,
    /// Period in `n`: `k` for odd `k`, `k/2` for even `k`.
    pub period: u64,
    /// `n mod period` for which `ζ_k` is a root of `H_n`.
    pub residue: u64,
}

impl RootOrder {
    /// Number of conjugate pairs this order contributes.
    pub fn pairs(&self) -> u64 {
        totient(self.k) / 2
    }

    pub fn applies_to(&self, n: u64) -> bool {
        n % self.period == self.residue
    }
}

/// The primorial of primes up to twice the number of monomials of `c`.
pub fn primorial_bound(c: &IntPoly) -> u128 {
    primes_up_to(2 * c.monomial_count() as u64).into_iter().map(u128::from).product()
}

/// `C(ζ)` in floating point and a bound on its absolute error.
fn eval_on_circle(c: &[i128], k: u128, shift: u128) -> ((f64, f64), f64) {
    let (mut re, mut im, mut l1) = (0.0, 0.0, 0.0);
    for (i, &v) in c.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let e = (i as u128 + shift) % k;
        let ang = TAU * (e as f64 / k as f64);
        re += v as f64 * ang.cos();
        im += v as f64 * ang.sin();
        l1 += (v as f64).abs();
    }
    ((re, im), l1 * 1e-12 + 1e-300)
}

/// Computes the orders in `S` for the given `C`, `b = deg B` and `ε`.
///
/// `n_shift` is the exponent `shift` so that the class of `n` is read off
/// `β = 2(n - shift) + b + c`.
pub fn compute_orders(c: &IntPoly, b: usize, eps: i8, n_shift: i64) -> Result<(u128, Vec<RootOrder>), Error> {
    let deg = c.degree();
    let coeffs: Vec<i128> = c
        .coeffs()
        .iter()
        .map(|v| v.to_i128().ok_or_else(|| Error::Internal("coefficient of C exceeds i128".into())))
        .collect::<Result<_, _>>()?;
    let rev: Vec<i128> = coeffs.iter().rev().copied().collect();
    let lp = primorial_bound(c);
    let mut cands = BTreeSet::new();
    for m in 1..=(4 * deg.max(1)) as u128 {
        let n = lp.checked_mul(m).ok_or_else(|| Error::Internal("candidate modulus overflows".into()))?;
        cands.extend(divisors_from(&factorize(n)));
    }
    let bc = (b + deg) as i128;
    let mut out = Vec::new();
    for k in cands.into_iter().filter(|&k| k > 2) {
        let Some(beta) = find_beta(&coeffs, &rev, eps, k)? else { continue };
        let diff = beta as i128 - bc;
        let (period, residue) = if k % 2 == 0 {
            if diff.rem_euclid(2) != 0 {
                continue;
            }
            let kh = (k / 2) as i128;
            (kh, (diff / 2 + n_shift as i128).rem_euclid(kh))
        } else {
            let kk = k as i128;
            let inv2 = (kk + 1) / 2;
            let half = mulmod(diff.rem_euclid(kk) as u128, inv2 as u128, k) as i128;
            (kk, (half + n_shift as i128).rem_euclid(kk))
        };
        out.push(RootOrder {
            k: u64::try_from(k).map_err(|_| Error::Internal("order exceeds u64".into()))?,
            beta: beta as u64,
            period: period as u64,
            residue: residue as u64,
        });
    }
    Ok((lp, out))
}

fn exact_check(coeffs: &[i128], rev: &[i128], eps: i8, k: u128, beta: u128) -> bool {
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| (i as u128 + beta, v))
        .chain(rev.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i as u128, -(eps as i128) * v)));
    vanishes_map(collect(terms, k), k)
}

/// The unique `β mod k` with `ζ_k^β C(ζ_k) = ε C_rev(ζ_k)`, if any.
fn find_beta(coeffs: &[i128], rev: &[i128], eps: i8, k: u128) -> Result<Option<u128>, Error> {
    let ((cr, ci), err) = eval_on_circle(coeffs, k, 0);
    let ((rr, ri), _) = eval_on_circle(rev, k, 0);
    let modulus = cr.hypot(ci);
    let window: Vec<u128> = if modulus > 4.0 * err {
        let (wr, wi) = (eps as f64 * rr, eps as f64 * ri);
        // arg(ε C_rev / C)
        let phase = (wi * cr - wr * ci).atan2(wr * cr + wi * ci);
        let est = (phase / TAU * k as f64).round();
        let slack = 2.0 * (err / (modulus - err)).min(1.0).asin() / TAU * k as f64;
        let half = slack.ceil() as i128 + 1;
        let kk = k as i128;
        let est = est as i128;
        let mut w: Vec<u128> = (est - half..=est + half).map(|b| b.rem_euclid(kk) as u128).collect();
        w.sort_unstable();
        w.dedup();
        w
    } else if k <= 1 << 16 {
        (0..k).collect()
    } else {
        return Err(Error::Inconclusive(format!("|C(ζ_{k})| too small to locate β")));
    };
    for beta in window {
        // cheap numeric rejection before the exact test
        let ((dr, di), e1) = eval_on_circle(coeffs, k, beta);
        let (dr, di) = (dr - eps as f64 * rr, di - eps as f64 * ri);
        if dr.hypot(di) > 4.0 * e1 {
            continue;
        }
        if exact_check(coeffs, rev, eps, k, beta) {
            return Ok(Some(beta));
        }
    }
    Ok(None)
}

/// `lcm` of the periods.
pub fn period_lcm(orders: &[RootOrder]) -> u64 {
    orders.iter().fold(1u64, |acc, o| acc.lcm(&o.period))
}

/// Largest number of unit-root pairs of `H_n` over all residues of `n`.
pub fn max_pairs(orders: &[RootOrder]) -> Result<(u64, u64), Error> {
    let ell = period_lcm(orders);
    if ell > 50_000_000 {
        return Err(Error::Inconclusive(format!("period {ell} too large to scan")));
    }
    let mut best = 0;
    for n in 0..ell {
        let v: u64 = orders.iter().filter(|o| o.applies_to(n)).map(RootOrder::pairs).sum();
        best = best.max(v);
    }
    Ok((ell, best))
}
