//! Characteristic polynomials along the translates of a vine and their
//! eventual two-term description `G_n = t^n A(t) - t^-n A(1/t)`.

use crate::bigraph::Bigraph;
use crate::poly::charpoly::char_poly;
use crate::poly::{IntPoly, LaurentPoly};
use crate::Error;

/// `P_n`, the characteristic polynomial of the translate with `n` vertices,
/// for `n >= |Γ|`, via `P_{n+1} = x P_n - P_{n-1}`.
#[derive(Debug, Clone)]
pub struct CharPolySequence {
    base: usize,
    polys: Vec<IntPoly>,
}

impl CharPolySequence {
    pub fn new(g: &Bigraph) -> Self {
        let p0 = char_poly(&g.adjacency_matrix());
        let p1 = char_poly(&g.translate(1).adjacency_matrix());
        CharPolySequence { base: g.vertex_count(), polys: vec![p0, p1] }
    }

    /// Number of vertices of the untranslated graph.
    pub fn base(&self) -> usize {
        self.base
    }

    /// `P_n`; panics for `n < base`.
    pub fn get(&mut self, n: usize) -> &IntPoly {
        assert!(n >= self.base, "P_{n} below the graph size {}", self.base);
        let i = n - self.base;
        while self.polys.len() <= i {
            let k = self.polys.len();
            let next = &(&IntPoly::x() * &self.polys[k - 1]) - &self.polys[k - 2];
            self.polys.push(next);
        }
        &self.polys[i]
    }

    /// Characteristic polynomial of the `j`-th translate.
    pub fn translate(&mut self, j: usize) -> &IntPoly {
        let b = self.base;
        self.get(b + j)
    }
}

/// `G_n(t) = (t - 1/t) P_n(t + 1/t)`.
pub fn g_of(p: &IntPoly) -> LaurentPoly {
    &LaurentPoly::t_minus_inv() * &LaurentPoly::from_x_poly(p)
}

/// `t^n A(t) - t^-n A(1/t)`.
pub fn two_term(a: &LaurentPoly, n: i64) -> LaurentPoly {
    &a.shift(n) - &a.invert().shift(-n)
}

/// `F_n = (t^n A - t^-n A(1/t)) / (t - 1/t)`, equal to `P_n(t + 1/t)` once
/// the description is valid.
pub fn f_from_a(a: &LaurentPoly, n: i64) -> Result<LaurentPoly, Error> {
    two_term(a, n).exact_div(&LaurentPoly::t_minus_inv())
}

/// The stable Laurent polynomial `A` and the first `n` from which
/// `G_n = t^n A - t^-n A(1/t)` holds for all larger `n`.
///
/// Both sides obey the same three-term recurrence, so agreement at two
/// consecutive `n` propagates.
pub fn stable_a(seq: &mut CharPolySequence) -> Result<(LaurentPoly, usize), Error> {
    let start = seq.base();
    let limit = start + 4 * start + 64;
    let mut g_prev = g_of(seq.get(start));
    for n in start..limit {
        let g_next = g_of(seq.get(n + 1));
        let a = g_prev.positive_part().shift(-(n as i64));
        if two_term(&a, n as i64) == g_prev && two_term(&a, n as i64 + 1) == g_next {
            return Ok((a, n));
        }
        g_prev = g_next;
    }
    Err(Error::Internal(format!("no two-term description below n = {limit}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_matches_direct_charpoly() {
        let g = Bigraph::parse("gbg1v1v1p1p1").unwrap();
        let mut seq = CharPolySequence::new(&g);
        for j in [0, 1, 2, 5, 9] {
            assert_eq!(seq.translate(j), &char_poly(&g.translate(j).adjacency_matrix()));
        }
    }

    #[test]
    fn vine_one_a() {
        let g = Bigraph::parse("gbg1v1v1p1p1").unwrap();
        let mut seq = CharPolySequence::new(&g);
        let (a, n0) = stable_a(&mut seq).unwrap();
        assert_eq!(a.low(), -5);
        assert_eq!(a.high(), 1);
        assert!(n0 >= 6);
        for n in n0..n0 + 10 {
            let f = f_from_a(&a, n as i64).unwrap();
            assert_eq!(f, LaurentPoly::from_x_poly(seq.get(n)));
        }
    }

    #[test]
    fn path_has_trivial_a() {
        let mut seq = CharPolySequence::new(&Bigraph::path(3));
        let (a, _) = stable_a(&mut seq).unwrap();
        assert_eq!(a, LaurentPoly::t_plus_inv().positive_part());
    }
}
