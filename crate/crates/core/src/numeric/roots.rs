//! Real root isolation with Sturm sequences over exact rationals.

use crate::poly::gcd::square_free_part;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Half-open interval `(lo, hi]`; degenerate when `lo == hi`, meaning the
/// exact point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_f64(lo: f64, hi: f64) -> Self {
        let c = |v: f64| BigRational::from_float(v).expect("finite");
        Interval::new(c(lo), c(hi))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn mid_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.mid().to_f64().unwrap_or(f64::NAN)
    }
}

fn sign_at(p: &IntPoly, x: &BigRational) -> i8 {
    p.sign_at(x.numer(), x.denom())
}

/// Sturm chain of `p`: `p, p', -rem(...)`, kept primitive.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = vec![p.clone()];
        if p.degree() == 0 {
            return SturmChain { chain };
        }
        chain.push(p.derivative());
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.degree() == 0 {
                break;
            }
            // lc(b)^k a = q b + r, with an even power so the sign survives
            let r = a.pseudo_rem(b);
            let k = a.degree() - b.degree() + 1;
            let r = if b.lc().is_negative() && k % 2 == 1 { -r } else { r };
            if r.is_zero() {
                break;
            }
            let r = -&r;
            let c = r.content();
            chain.push(r.div_scalar_exact(&c).expect("content divides"));
        }
        SturmChain { chain }
    }

    /// Sign variations of the chain at `x`.
    pub fn variations(&self, x: &BigRational) -> usize {
        count_variations(self.chain.iter().map(|q| sign_at(q, x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_variations(self.chain.iter().map(|q| {
            let s: i8 = if q.lc().is_positive() { 1 } else { -1 };
            if positive || q.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, iv: &Interval) -> usize {
        if iv.lo == iv.hi {
            return usize::from(sign_at(&self.chain[0], &iv.lo) == 0);
        }
        self.variations(&iv.lo) - self.variations(&iv.hi)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Distinct real roots of `p` in `(lo, hi]` (or at the point, if degenerate).
pub fn count_roots_in(p: &IntPoly, iv: &Interval) -> usize {
    SturmChain::new(&square_free_part(p)).count(iv)
}

/// Cauchy bound: every root has absolute value below the result.
pub fn root_bound(p: &IntPoly) -> BigRational {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.degree()].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    BigRational::new(m, lc) + BigRational::one()
}

/// Disjoint isolating intervals for the distinct real roots, ascending.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<Interval> {
    let sf = square_free_part(p);
    if sf.degree() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(&sf);
    let b = root_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![Interval::new(-b.clone(), b)];
    while let Some(iv) = stack.pop() {
        let n = chain.count(&iv);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(iv);
            continue;
        }
        let m = iv.mid();
        stack.push(Interval::new(iv.lo.clone(), m.clone()));
        stack.push(Interval::new(m, iv.hi));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Shrinks an isolating interval of a square-free `p` to width below `eps`.
pub fn refine(p: &IntPoly, iv: &Interval, eps: &BigRational) -> Interval {
    let mut iv = iv.clone();
    if sign_at(p, &iv.hi) == 0 {
        return Interval::point(iv.hi);
    }
    let shi = sign_at(p, &iv.hi);
    while &iv.width() > eps {
        let m = iv.mid();
        let sm = sign_at(p, &m);
        if sm == 0 {
            return Interval::point(m);
        }
        // the root lies where the sign differs from the one at hi
        if sm == shi {
            iv.hi = m;
        } else {
            iv.lo = m;
        }
    }
    iv
}

/// Largest real root, isolated and refined to width below `eps`.
pub fn largest_real_root(p: &IntPoly, eps: &BigRational) -> Option<Interval> {
    let sf = square_free_part(p);
    let iv = isolate_real_roots(&sf).pop()?;
    Some(refine(&sf, &iv, eps))
}

/// Number of real roots strictly greater than `x`.
pub fn roots_above(p: &IntPoly, x: &BigRational) -> usize {
    let sf = square_free_part(p);
    if sf.degree() == 0 {
        return 0;
    }
    let chain = SturmChain::new(&sf);
    chain.variations(x) - chain.variations_at_infinity(true)
}
