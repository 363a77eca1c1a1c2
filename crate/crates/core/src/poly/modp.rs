//! Polynomials over `F_p` for primes `p < 2^32`, with distinct-degree and
//! equal-degree factorization.
//!
//! Polynomials are `Vec<u64>` in ascending degree with no trailing zeros.

use super::IntPoly;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub type Poly = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    pub p: u64,
}

/// Outcome of the uniform-degree check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniformity {
    /// All irreducible factors share this degree.
    Uniform(usize),
    Mixed,
}

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

impl Field {
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 32).contains(&p), "modulus out of range");
        Field { p }
    }

    #[inline]
    fn mulm(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow_scalar(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv_scalar(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow_scalar(a, self.p - 2)
    }

    pub fn reduce(&self, f: &IntPoly) -> Poly {
        let pb = BigInt::from(self.p);
        trim(
            f.coeffs()
                .iter()
                .map(|c| {
                    let r = c % &pb;
                    let r = if r < BigInt::zero() { r + &pb } else { r };
                    r.to_u64().expect("reduced below p")
                })
                .collect(),
        )
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let mut r = vec![0; n];
        for (i, v) in r.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
            *v = x % self.p;
        }
        trim(r)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let mut r = vec![0; n];
        for (i, v) in r.iter_mut().enumerate() {
            *v = self.subm(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
        }
        trim(r)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        let p = self.p as u128;
        trim(acc.into_iter().map(|v| (v % p) as u64).collect())
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Poly {
        trim(a.iter().map(|&v| self.mulm(v, c)).collect())
    }

    pub fn monic(&self, a: &[u64]) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv_scalar(l)),
        }
    }

    pub fn derivative(&self, a: &[u64]) -> Poly {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| self.mulm(c, i as u64 % self.p)).collect())
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv_scalar(*b.last().unwrap());
        let db = b.len() - 1;
        let mut r = a.to_vec();
        let mut q = vec![0; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mulm(r[i + db], inv);
            r[i + db] = 0;
            if c == 0 {
                continue;
            }
            for k in 0..db {
                r[i + k] = self.subm(r[i + k], self.mulm(c, b[k]));
            }
            q[i] = c;
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Poly {
        if a.len() < b.len() {
            return a.to_vec();
        }
        if b.last() == Some(&1) {
            return self.rem_monic(a, b);
        }
        self.div_rem(a, b).1
    }

    fn rem_monic(&self, a: &[u64], b: &[u64]) -> Poly {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        let p = self.p;
        for i in (db..r.len()).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let base = i - db;
            for k in 0..db {
                let t = c * b[k] % p;
                let v = r[base + k];
                r[base + k] = if v >= t { v - t } else { v + p - t };
            }
            r[i] = 0;
        }
        r.truncate(db);
        trim(r)
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Poly {
        let (mut u, mut v) = (a.to_vec(), b.to_vec());
        while !v.is_empty() {
            let r = self.rem(&u, &v);
            u = v;
            v = r;
        }
        self.monic(&u)
    }

    pub fn mulmod(&self, a: &[u64], b: &[u64], f: &[u64]) -> Poly {
        self.rem(&self.mul(a, b), f)
    }

    pub fn powmod(&self, a: &[u64], e: &BigUint, f: &[u64]) -> Poly {
        let mut result: Poly = vec![1];
        let base = self.rem(a, f);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.mulmod(&result, &result, f);
            if e.bit(i) {
                result = self.mulmod(&result, &base, f);
            }
        }
        self.rem(&result, f)
    }

    pub fn is_square_free(&self, f: &[u64]) -> bool {
        if f.len() <= 2 {
            return true;
        }
        let d = self.derivative(f);
        if d.is_empty() {
            return false;
        }
        self.gcd(f, &d).len() == 1
    }
}

/// Matrix of the Frobenius map `a -> a^p` on `F_p[x]/(f)`.
struct Frobenius {
    rows: Vec<Poly>,
}

impl Frobenius {
    fn new(k: &Field, f: &[u64], xp: &[u64]) -> Self {
        let d = f.len() - 1;
        let mut rows = Vec::with_capacity(d);
        rows.push(vec![1]);
        for i in 1..d {
            let next = k.mulmod(&rows[i - 1], xp, f);
            rows.push(next);
        }
        Frobenius { rows }
    }

    fn apply(&self, k: &Field, a: &[u64]) -> Poly {
        let d = self.rows.len();
        let mut acc = vec![0u128; d];
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &r) in self.rows[i].iter().enumerate() {
                acc[j] += (c * r) as u128;
            }
        }
        let p = k.p as u128;
        trim(acc.into_iter().map(|v| (v % p) as u64).collect())
    }
}

/// Iterates `x^(p^i) mod f`, switching to the Frobenius matrix once the
/// iteration runs long enough to pay for it.
struct FrobeniusWalk<'a> {
    k: &'a Field,
    f: &'a [u64],
    xp: Poly,
    current: Poly,
    steps: usize,
    matrix: Option<Frobenius>,
    p_big: BigUint,
}

impl<'a> FrobeniusWalk<'a> {
    fn new(k: &'a Field, f: &'a [u64]) -> Self {
        let p_big = BigUint::from(k.p);
        let xp = k.powmod(&[0, 1], &p_big, f);
        FrobeniusWalk { k, f, xp, current: vec![0, 1], steps: 0, matrix: None, p_big }
    }

    fn next(&mut self) -> &Poly {
        self.steps += 1;
        if self.steps == 1 {
            self.current = self.xp.clone();
        } else if self.steps <= 3 {
            self.current = self.k.powmod(&self.current, &self.p_big, self.f);
        } else {
            if self.matrix.is_none() {
                self.matrix = Some(Frobenius::new(self.k, self.f, &self.xp));
            }
            self.current = self.matrix.as_ref().unwrap().apply(self.k, &self.current);
        }
        &self.current
    }
}

/// Distinct-degree factorization of a monic square-free `f`: pairs of
/// degree and the product of all irreducible factors of that degree.
pub fn distinct_degree(k: &Field, f: &[u64]) -> Vec<(usize, Poly)> {
    let f = k.monic(f);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let mut rest = f.clone();
    let mut walk = FrobeniusWalk::new(k, &f);
    let mut i = 0;
    while rest.len() > 1 {
        i += 1;
        if 2 * i > rest.len() - 1 {
            out.push((rest.len() - 1, rest.clone()));
            break;
        }
        let h = walk.next().clone();
        let hx = k.sub(&k.rem(&h, &rest), &[0, 1]);
        let g = k.gcd(&rest, &hx);
        if g.len() > 1 {
            rest = k.div_rem(&rest, &g).0;
            out.push((i, g));
        }
    }
    out
}

/// Degrees of the irreducible factors of a square-free `f`, ascending.
pub fn degree_pattern(k: &Field, f: &[u64]) -> Vec<usize> {
    let mut degs = Vec::new();
    for (d, g) in distinct_degree(k, f) {
        for _ in 0..(g.len() - 1) / d {
            degs.push(d);
        }
    }
    degs
}

/// Whether all irreducible factors of a square-free `f` share one degree,
/// stopping at the first evidence either way.
pub fn uniformity(k: &Field, f: &[u64]) -> Uniformity {
    let f = k.monic(f);
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return Uniformity::Uniform(n);
    }
    let mut walk = FrobeniusWalk::new(k, &f);
    for i in 1..=n / 2 {
        let h = walk.next().clone();
        let g = k.gcd(&f, &k.sub(&h, &[0, 1]));
        if g.len() > 1 {
            return if g.len() == f.len() { Uniformity::Uniform(i) } else { Uniformity::Mixed };
        }
    }
    Uniformity::Uniform(n)
}

/// Splits a monic square-free product of degree-`d` irreducibles.
pub fn equal_degree<R: Rng>(k: &Field, f: &[u64], d: usize, rng: &mut R) -> Vec<Poly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let exp = if k.p == 2 {
        BigUint::zero()
    } else {
        (BigUint::from(k.p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32)
    };
    loop {
        let a: Poly = trim((0..n).map(|_| rng.gen_range(0..k.p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let b = if k.p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..d {
                t = k.mulmod(&t, &t, f);
                s = k.add(&s, &t);
            }
            s
        } else {
            k.sub(&k.powmod(&a, &exp, f), &[1])
        };
        let g = k.gcd(f, &b);
        if g.len() > 1 && g.len() < f.len() {
            let h = k.div_rem(f, &g).0;
            let mut out = equal_degree(k, &g, d, rng);
            out.extend(equal_degree(k, &k.monic(&h), d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a square-free `f`.
pub fn factor_square_free<R: Rng>(k: &Field, f: &[u64], rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    for (d, g) in distinct_degree(k, f) {
        out.extend(equal_degree(k, &g, d, rng));
    }
    out.sort();
    out
}

/// Degrees of the irreducible factors of `f` mod `p`, with multiplicity.
///
/// Returns `None` when `p` divides the leading coefficient.
pub fn factor_degrees_mod_p(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let k = Field::new(p);
    let fp = k.reduce(f);
    if fp.len() != f.coeffs().len() {
        return None;
    }
    let mut degs = Vec::new();
    // square-free factorization over F_p
    let mut stack = vec![(k.monic(&fp), 1usize)];
    while let Some((g, mult)) = stack.pop() {
        if g.len() <= 1 {
            continue;
        }
        let dg = k.derivative(&g);
        if dg.is_empty() {
            // g = h(x^p)
            let h: Poly = g.iter().step_by(p as usize).copied().collect();
            stack.push((h, mult * p as usize));
            continue;
        }
        let c = k.gcd(&g, &dg);
        if c.len() == 1 {
            for d in degree_pattern(&k, &g) {
                degs.extend(std::iter::repeat(d).take(mult));
            }
            continue;
        }
        let sq = k.div_rem(&g, &c).0;
        stack.push((sq, mult));
        stack.push((c, mult));
    }
    degs.sort();
    Some(degs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn degree_patterns() {
        assert_eq!(factor_degrees_mod_p(&p("x^2+1"), 5), Some(vec![1, 1]));
        assert_eq!(factor_degrees_mod_p(&p("x^2+1"), 3), Some(vec![2]));
        assert_eq!(factor_degrees_mod_p(&p("x^2-4x+2"), 3), Some(vec![2]));
        assert_eq!(factor_degrees_mod_p(&p("3x^2+1"), 3), None);
        assert_eq!(factor_degrees_mod_p(&p("x^4+x^2+1"), 2), Some(vec![2, 2]));
        assert_eq!(factor_degrees_mod_p(&p("x^2+1").pow(2), 3), Some(vec![2, 2]));
        assert_eq!(factor_degrees_mod_p(&p("x^3-x"), 3), Some(vec![1, 1, 1]));
    }

    #[test]
    fn uniform_check() {
        let k = Field::new(7);
        // x^3 - 2 is irreducible mod 7
        assert_eq!(uniformity(&k, &k.reduce(&p("x^3-2"))), Uniformity::Uniform(3));
        assert_eq!(uniformity(&k, &k.reduce(&(&p("x^3-2") * &p("x^3-3")))), Uniformity::Uniform(3));
        assert_eq!(uniformity(&k, &k.reduce(&(&p("x^3-2") * &p("x-1")))), Uniformity::Mixed);
        assert_eq!(uniformity(&k, &k.reduce(&p("x^2-1"))), Uniformity::Uniform(1));
    }

    #[test]
    fn splits_completely() {
        let k = Field::new(13);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = k.reduce(&p("x^12-1"));
        let fs = factor_square_free(&k, &f, &mut rng);
        assert_eq!(fs.len(), 12);
        let k2 = Field::new(2);
        let f = k2.reduce(&p("x^6+x^5+x^4+x^3+x^2+x+1"));
        let fs = factor_square_free(&k2, &f, &mut rng);
        assert_eq!(fs.iter().map(|g| g.len() - 1).collect::<Vec<_>>(), vec![3, 3]);
    }

    proptest! {
        #[test]
        fn pattern_invariants(c in proptest::collection::vec(-20i64..20, 2..9), shift in 0i64..11) {
            let mut c = c;
            *c.last_mut().unwrap() = 1;
            let f = IntPoly::from_i64s(&c);
            let pat = factor_degrees_mod_p(&f, 11).unwrap();
            prop_assert_eq!(pat.iter().sum::<usize>(), f.degree());
            let g = f.compose(&IntPoly::from_i64s(&[shift, 1]));
            prop_assert_eq!(factor_degrees_mod_p(&g, 11).unwrap(), pat);
        }
    }
}
