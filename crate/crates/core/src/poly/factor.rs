//! Factorization over `Z[x]`: modular factorization, Hensel lifting and
//! recombination, plus cheap irreducibility certificates from degree
//! patterns mod several primes.

use super::cyclotomic::primes_up_to;
use super::gcd::square_free_decomposition;
use super::modp::{self, Field, Poly};
use super::IntPoly;
use crate::numeric::roots::{count_roots_in, Interval};
use crate::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `f = content * prod factor^mult`, factors primitive with positive leading
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

pub fn factor(f: &IntPoly) -> Factorization {
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let mut factors = Vec::new();
    for (g, e) in square_free_decomposition(f) {
        for h in factor_square_free(&g) {
            factors.push((h, e));
        }
    }
    factors.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    Factorization { content, factors }
}

/// Subset sums of a degree pattern, as a bitmask over `0..=n`.
fn subset_sums(pattern: &[usize], n: usize) -> Vec<bool> {
    let mut can = vec![false; n + 1];
    can[0] = true;
    for &d in pattern {
        for s in (d..=n).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

/// Accumulates degree patterns mod good primes; certifies irreducibility
/// when no proper factor degree is compatible with all of them.
#[derive(Debug, Clone)]
pub struct IrreducibilityWitness {
    n: usize,
    possible: Vec<bool>,
}

impl IrreducibilityWitness {
    pub fn new(n: usize) -> Self {
        IrreducibilityWitness { n, possible: vec![true; n + 1] }
    }

    pub fn add_pattern(&mut self, pattern: &[usize]) {
        let sums = subset_sums(pattern, self.n);
        for (p, s) in self.possible.iter_mut().zip(sums) {
            *p &= s;
        }
    }

    pub fn certified(&self) -> bool {
        self.n <= 1 || (1..self.n).all(|d| !self.possible[d])
    }
}

/// Degree pattern of `f` mod `p`, if `p` is a prime of good reduction.
fn good_pattern(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let k = Field::new(p);
    let fp = k.reduce(f);
    if fp.len() != f.coeffs().len() || !k.is_square_free(&fp) {
        return None;
    }
    Some(modp::degree_pattern(&k, &fp))
}

/// Tries to prove a square-free primitive `f` irreducible from degree
/// patterns at up to `max_primes` good primes.
pub fn certify_irreducible(f: &IntPoly, max_primes: usize) -> bool {
    let n = f.degree();
    let mut w = IrreducibilityWitness::new(n);
    let mut used = 0;
    for p in primes_up_to(2000) {
        if used >= max_primes || w.certified() {
            break;
        }
        if let Some(pat) = good_pattern(f, p) {
            w.add_pattern(&pat);
            used += 1;
        }
    }
    w.certified()
}

pub fn is_irreducible(f: &IntPoly) -> bool {
    if f.degree() == 0 {
        return false;
    }
    let sf = square_free_decomposition(f);
    if sf.len() != 1 || sf[0].1 != 1 {
        return false;
    }
    certify_irreducible(f, 12) || factor_square_free(f).len() == 1
}

fn ext_gcd_mod(k: &Field, a: &[u64], b: &[u64]) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Poly, Poly) = (vec![1], vec![]);
    let (mut t0, mut t1): (Poly, Poly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = k.div_rem(&r0, &r1);
        let s2 = k.sub(&s0, &k.mul(&q, &s1));
        let t2 = k.sub(&t0, &k.mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = k.inv_scalar(*r0.last().expect("nonzero gcd"));
    (k.scale(&r0, inv), k.scale(&s0, inv), k.scale(&t0, inv))
}

fn to_int(a: &[u64]) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn mod_big(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c % m;
                if r.is_negative() {
                    r + m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        mod_big(f, m)
            .coeffs()
            .iter()
            .map(|c| if c > &half { c - m } else { c.clone() })
            .collect(),
    )
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = num_integer::Integer::extended_gcd(&((a % m + m) % m), m);
    assert!(e.gcd.is_one(), "not invertible");
    (e.x % m + m) % m
}

/// Lifts `f = g h` (with `f` monic mod `p^k`, `g0 h0` its factorization
/// mod `p`) to monic `g`, `h` mod `p^k`.
fn lift_pair(f: &IntPoly, g0: &[u64], h0: &[u64], p: u64, k: u32) -> (IntPoly, IntPoly) {
    let field = Field::new(p);
    let (_, s0, t0) = ext_gcd_mod(&field, g0, h0);
    let mut g = to_int(g0);
    let mut h = to_int(h0);
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let pj1 = &pj * &pb;
        let e = mod_big(&(f - &(&g * &h)), &pj1);
        let e = e.div_scalar_exact(&pj).expect("lifting invariant");
        let ep = field.reduce(&e);
        let dg = field.rem(&field.mul(&ep, &t0), g0);
        let dh = field.rem(&field.mul(&ep, &s0), h0);
        g = mod_big(&(&g + &to_int(&dg).scale(&pj)), &pj1);
        h = mod_big(&(&h + &to_int(&dh).scale(&pj)), &pj1);
        pj = pj1;
    }
    (g, h)
}

/// Monic lifts mod `p^k` of the monic factors of `f` mod `p`.
fn hensel_lift(f: &IntPoly, factors: &[Poly], p: u64, k: u32, pk: &BigInt) -> Vec<IntPoly> {
    let monic = mod_big(&f.scale(&mod_inverse(&f.lc(), pk)), pk);
    if factors.len() == 1 {
        return vec![monic];
    }
    let field = Field::new(p);
    let mid = factors.len() / 2;
    let prod = |fs: &[Poly]| fs.iter().fold(vec![1u64], |acc, g| field.mul(&acc, g));
    let g0 = prod(&factors[..mid]);
    let h0 = prod(&factors[mid..]);
    let (g, h) = lift_pair(&monic, &g0, &h0, p, k);
    let mut out = hensel_lift(&g, &factors[..mid], p, k, pk);
    out.extend(hensel_lift(&h, &factors[mid..], p, k, pk));
    out
}

/// Irreducible factors of a square-free polynomial, primitive.
pub fn factor_square_free(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive_part();
    let n = f.degree();
    if n <= 1 {
        return if n == 1 { vec![f] } else { Vec::new() };
    }
    if f.coeff(0).is_zero() {
        let mut out = vec![IntPoly::x()];
        out.extend(factor_square_free(&f.shift_down(1)));
        return out;
    }
    // pick the good prime with the fewest modular factors among a handful
    let mut best: Option<(u64, usize)> = None;
    let mut tried = 0;
    for p in primes_up_to(5000).into_iter().skip(1) {
        if tried >= 6 {
            break;
        }
        if let Some(pat) = good_pattern(&f, p) {
            tried += 1;
            if pat.len() == 1 {
                return vec![f];
            }
            if best.map_or(true, |(_, c)| pat.len() < c) {
                best = Some((p, pat.len()));
            }
        }
    }
    let (p, _) = best.expect("a good prime exists for a square-free polynomial");
    let field = Field::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fp = field.monic(&field.reduce(&f));
    let mod_factors = modp::factor_square_free(&field, &fp, &mut rng);

    // coefficient bound for factors times the leading coefficient
    let norm2 = f.coeffs().iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + BigInt::one();
    let bound = (BigInt::one() << n) * norm2 * f.lc().abs() * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let mut lifted = hensel_lift(&f, &mod_factors, p, k, &pk);

    let mut result = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let lc = rest.lc();
            let mut g = IntPoly::constant(lc.clone());
            for &i in &combo {
                g = mod_big(&(&g * &lifted[i]), &pk);
            }
            let g = symmetric(&g, &pk).primitive_part();
            if g.degree() > 0 {
                if let Ok(q) = rest.exact_div(&g) {
                    result.push(g);
                    rest = q;
                    for &i in combo.iter().rev() {
                        lifted.remove(i);
                    }
                    found = true;
                    break;
                }
            }
            if !next_combination(&mut combo, lifted.len()) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if rest.degree() > 0 {
        result.push(rest.primitive_part());
    }
    result
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The irreducible factor of `p` with a root in `locator`, which must
/// isolate exactly one real root of the square-free part of `p`.
pub fn min_poly_of_root(p: &IntPoly, locator: &Interval) -> Result<IntPoly, Error> {
    let sf = super::gcd::square_free_part(p);
    if count_roots_in(&sf, locator) != 1 {
        return Err(Error::RootNotIsolated);
    }
    if certify_irreducible(&sf, 12) {
        return Ok(sf);
    }
    for g in factor_square_free(&sf) {
        if count_roots_in(&g, locator) == 1 {
            return Ok(g);
        }
    }
    Err(Error::RootNotIsolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn check(f: &IntPoly) {
        let fac = factor(f);
        let mut prod = IntPoly::constant(fac.content.clone());
        for (g, e) in &fac.factors {
            assert!(certify_irreducible(g, 30) || factor_square_free(g).len() == 1, "{g}");
            prod = &prod * &g.pow(*e as u32);
        }
        assert_eq!(&prod, f);
    }

    #[test]
    fn factors_small_products() {
        let f = &(&p("x^2-2") * &p("x^3-x-1")) * &p("2x+3");
        let fac = factor(&f);
        assert_eq!(fac.factors.len(), 3);
        check(&f);
        check(&(&p("x^4+1") * &p("x^4-10x^2+1")));
        check(&p("x^12-1"));
        check(&(&p("x-1").pow(3) * &p("3x^2+1")).scale(&BigInt::from(-6)));
    }

    #[test]
    fn swinnerton_dyer_is_irreducible() {
        // irreducible over Z but splits into quadratics mod every prime
        let f = p("x^4-10x^2+1");
        assert!(!certify_irreducible(&f, 20));
        assert_eq!(factor_square_free(&f), vec![f.clone()]);
        assert!(is_irreducible(&f));
    }

    #[test]
    fn witness_logic() {
        let mut w = IrreducibilityWitness::new(4);
        w.add_pattern(&[1, 3]);
        assert!(!w.certified());
        w.add_pattern(&[2, 2]);
        assert!(w.certified());
    }

    #[test]
    fn root_locator() {
        let f = p("x^3-2x");
        let loc = Interval::new(BigRational::new(14.into(), 10.into()), BigRational::new(15.into(), 10.into()));
        assert_eq!(min_poly_of_root(&f, &loc).unwrap(), p("x^2-2"));
        let g = &p("x-1") * &p("x^2-2");
        let loc = Interval::new(BigRational::new(9.into(), 10.into()), BigRational::new(11.into(), 10.into()));
        assert_eq!(min_poly_of_root(&g, &loc).unwrap(), p("x-1"));
        let far = Interval::new(BigRational::from_integer(5.into()), BigRational::from_integer(6.into()));
        assert!(min_poly_of_root(&g, &far).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn random_products_reassemble(a in proptest::collection::vec(-6i64..7, 2..5),
                                      b in proptest::collection::vec(-6i64..7, 2..5),
                                      c in proptest::collection::vec(-6i64..7, 1..4)) {
            let f = &(&IntPoly::from_i64s(&a) * &IntPoly::from_i64s(&b)) * &IntPoly::from_i64s(&c);
            prop_assume!(f.degree() > 0);
            check(&f);
        }
    }
}
