//! Greatest common divisors and square-free decomposition over `Z[x]`.

use super::modp::Field;
use super::IntPoly;
use num_integer::Integer;

/// A certificate of square-freeness: `p` stays square-free of the same
/// degree mod some prime. Cheap, and usually conclusive.
fn square_free_mod_prime(p: &IntPoly) -> bool {
    const PRIMES: [u64; 4] = [1_000_003, 1_000_033, 1_000_037, 1_000_039];
    PRIMES.iter().any(|&q| {
        let k = Field::new(q);
        let fp = k.reduce(p);
        fp.len() == p.coeffs().len() && k.is_square_free(&fp)
    })
}

/// Primitive-remainder-sequence gcd, normalized to a positive leading
/// coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let c = a.content().gcd(&b.content());
    let (mut u, mut v) = if a.degree() >= b.degree() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    while !v.is_zero() {
        if v.degree() == 0 {
            return IntPoly::constant(c);
        }
        let r = u.pseudo_rem(&v);
        u = v;
        v = r.primitive_part();
    }
    u.scale(&c)
}

/// Product of the distinct irreducible factors, primitive.
pub fn square_free_part(p: &IntPoly) -> IntPoly {
    if p.degree() == 0 {
        return IntPoly::one();
    }
    if square_free_mod_prime(p) {
        return p.primitive_part();
    }
    let g = gcd(p, &p.derivative());
    p.primitive_part().exact_div(&g.primitive_part()).expect("gcd divides").primitive_part()
}

/// Yun's algorithm: `p = c * prod f_i^i` with each `f_i` square-free and the
/// `f_i` pairwise coprime. Returns the nonconstant `(f_i, i)`.
pub fn square_free_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let f = p.primitive_part();
    if square_free_mod_prime(&f) {
        return vec![(f, 1)];
    }
    let df = f.derivative();
    // quotients by primitive divisors stay integral by Gauss's lemma
    let a = gcd(&f, &df).primitive_part();
    let mut b = f.exact_div(&a).expect("gcd divides");
    let c = df.exact_div(&a).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree() > 0 {
        let g = gcd(&b, &d).primitive_part();
        if g.degree() > 0 {
            out.push((g.clone(), i));
        }
        b = b.exact_div(&g).expect("gcd divides");
        let c = d.exact_div(&g).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Whether `p` has no repeated factor.
pub fn is_square_free(p: &IntPoly) -> bool {
    square_free_mod_prime(p) || gcd(p, &p.derivative()).degree() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn basic_gcd() {
        assert_eq!(gcd(&p("x^2-1"), &p("x-1")), p("x-1"));
        assert_eq!(gcd(&p("2x^2-2"), &p("4x-4")), p("2x-2"));
        assert_eq!(gcd(&p("x^2+1"), &p("x-1")), p("1"));
    }

    #[test]
    fn square_free() {
        let f = &(&p("x-1") * &p("x-1")) * &p("x+2");
        assert_eq!(square_free_part(&f), p("x^2+x-2"));
        assert!(!is_square_free(&f));
        assert!(is_square_free(&p("x^2-2")));
    }

    #[test]
    fn yun() {
        let f = &(&p("x-1").pow(3) * &p("x+2").pow(2)) * &p("x^2+1");
        let mut d = square_free_decomposition(&f);
        d.sort_by_key(|x| x.1);
        assert_eq!(d, vec![(p("x^2+1"), 1), (p("x+2"), 2), (p("x-1"), 3)]);
        assert_eq!(square_free_decomposition(&p("3x^2-3")), vec![(p("x^2-1"), 1)]);
    }

    proptest! {
        #[test]
        fn yun_reassembles(a in proptest::collection::vec(-4i64..5, 2..4),
                           b in proptest::collection::vec(-4i64..5, 2..4),
                           e in 1u32..4) {
            let fa = IntPoly::from_i64s(&a);
            let fb = IntPoly::from_i64s(&b);
            prop_assume!(fa.degree() > 0 && fb.degree() > 0);
            let f = &fa.pow(e) * &fb;
            let mut prod = IntPoly::one();
            for (g, i) in square_free_decomposition(&f) {
                prop_assert!(is_square_free(&g));
                prod = &prod * &g.pow(i as u32);
            }
            prop_assert_eq!(prod, f.primitive_part());
        }
    }
}
