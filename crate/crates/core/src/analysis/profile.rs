//! Effective constants of a vine.

use super::sequence::{f_from_a, stable_a, CharPolySequence};
use super::sset::{compute_orders, max_pairs, RootOrder};
use crate::bigraph::Bigraph;
use crate::numeric::circle::{derivative_bound_holds, min_modulus_lower_bound, minimal_certified_n, DerivativeCertificate};
use crate::numeric::roots::{count_roots_in, largest_real_root, roots_above, Interval};
use crate::poly::cyclotomic::{cyclotomic_content, totient};
use crate::poly::factor::factor;
use crate::poly::laurent::power_sum;
use crate::poly::{IntPoly, LaurentPoly};
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

/// `n` at which the derivative bound is certified for non-Salem vines.
pub const TABLE_C_N: i64 = 200;
/// Upper end of the escalation when certification at [`TABLE_C_N`] fails.
pub const TABLE_C_ESCALATION: i64 = 400;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VineProfile {
    pub graph: String,
    pub label: Option<String>,
    pub vertices: usize,
    /// The fixed Laurent polynomial with `G_n = t^n A(t) - t^-n A(1/t)`.
    pub a: LaurentPoly,
    /// `-(lowest exponent of A)`.
    pub shift: i64,
    /// Separation constant, `shift + 1`.
    pub s: i64,
    /// First `n` from which the two-term description of `G_n` holds.
    pub stable_from: usize,
    /// Sum of fourth powers of the roots of `F_{s+1}`.
    pub k: i64,
    /// Product of the self-reciprocal irreducible factors of `t^shift A`.
    pub b: IntPoly,
    /// Cofactor of `b`.
    pub c: IntPoly,
    /// `+1` if `b` is palindromic, `-1` if antipalindromic.
    pub eps: i8,
    /// Smallest certified `n` for the derivative bound.
    pub d_min: i64,
    /// `n` used as the derivative bound: [`TABLE_C_N`] (or its escalation)
    /// for non-Salem vines, `d_min` otherwise.
    pub d_bound: i64,
    pub d_certificate: DerivativeCertificate,
    /// Primorial of primes up to twice the monomial count of `c`.
    pub l: u128,
    pub orders: Vec<RootOrder>,
    pub ell: u64,
    pub r1: u64,
    pub r2: u64,
    pub r3: u64,
    pub r4: u64,
    pub r_bound: u64,
    pub n_bound: i64,
    pub salem: bool,
    /// `(t + 1/t)^2` at the largest real root of `t^shift A`.
    pub limit_norm_squared: f64,
    pub r3_guard: bool,
}

impl VineProfile {
    /// Orders `k` in `S`, ascending.
    pub fn s_set(&self) -> Vec<u64> {
        self.orders.iter().map(|o| o.k).collect()
    }

    /// Last translate to screen: `j = 0..=N - |Γ|`.
    pub fn max_translate(&self) -> usize {
        (self.n_bound - self.vertices as i64).max(0) as usize
    }

    pub fn b_deg(&self) -> usize {
        self.b.degree()
    }
}

/// `A = t - D(1/t)` with `D` having nonnegative coefficients.
pub fn is_salem(a: &LaurentPoly) -> bool {
    a.high() == 1
        && a.coeff(1).is_one()
        && a.terms().all(|(e, c)| e == 1 || !c.is_positive())
}

/// Self-reciprocal / reciprocal-free split of `q = t^shift A`.
pub fn split_self_reciprocal(q: &IntPoly) -> (IntPoly, IntPoly, i8) {
    let fac = factor(q);
    let mut b = IntPoly::one();
    let mut c = IntPoly::constant(fac.content.clone());
    for (f, e) in &fac.factors {
        let pe = f.pow(*e as u32);
        if f.is_self_reciprocal() {
            b = &b * &pe;
        } else {
            c = &c * &pe;
        }
    }
    let eps = if b.is_palindromic() { 1 } else { -1 };
    (b, c, eps)
}

/// Conjugate pairs of unit-circle roots of a palindromic polynomial,
/// via real roots of its trace polynomial in `(-2, 2)`.
fn unit_circle_pairs(f: &IntPoly) -> u64 {
    if f.degree() % 2 == 1 || !f.is_palindromic() {
        return 0;
    }
    let half = (f.degree() / 2) as i64;
    let Some(g) = LaurentPoly::new(-half, f.clone()).to_x_poly() else { return 0 };
    let two = BigRational::from_integer(2.into());
    // (-2, 2]: a root at 2 means t = 1, which is cyclotomic and excluded here
    let n = count_roots_in(&g, &Interval::new(-two.clone(), two.clone()));
    let at_two = count_roots_in(&g, &Interval::point(two));
    (n - at_two) as u64
}

/// `r1`: pairs of roots of unity among the roots of `b`, with multiplicity,
/// counting `t = ±1` once each.
pub fn r1_of(b: &IntPoly) -> u64 {
    cyclotomic_content(b)
        .into_iter()
        .map(|(m, e)| e as u64 * if m <= 2 { 1 } else { totient(m) / 2 })
        .sum()
}

/// `r2`: extra copies of repeated unit-circle pairs of the non-cyclotomic
/// part of `b`.
pub fn r2_of(b: &IntPoly) -> u64 {
    factor(b)
        .factors
        .iter()
        .filter(|(f, e)| *e > 1 && cyclotomic_content(f).is_empty())
        .map(|(f, e)| (*e as u64 - 1) * unit_circle_pairs(f))
        .sum()
}

pub fn profile(g: &Bigraph) -> Result<VineProfile, Error> {
    let mut seq = CharPolySequence::new(g);
    profile_with(g, &mut seq)
}

pub fn profile_with(g: &Bigraph, seq: &mut CharPolySequence) -> Result<VineProfile, Error> {
    let (a, stable_from) = stable_a(seq)?;
    let shift = -a.low();
    let q = a.body().clone();
    if roots_above(&q, &BigRational::one()) == 0 {
        return Err(Error::Rejected(format!(
            "A(t) = {} has no real root above 1; translates are of type A or D",
            a.to_string_var("t")
        )));
    }
    let s = shift + 1;
    let k = power_sum(f_from_a(&a, s + 1)?.body(), 4)?
        .to_i64()
        .ok_or_else(|| Error::Internal("K does not fit in i64".into()))?;

    let (b, c, eps) = split_self_reciprocal(&q);
    if c.degree() > 0 && min_modulus_lower_bound(&c).is_none() {
        return Err(Error::Internal("C has a root on or near the unit circle".into()));
    }
    let (l, orders) = compute_orders(&c, b.degree(), eps, shift)?;
    let (ell, r3) = max_pairs(&orders)?;
    let r1 = r1_of(&b);
    let r2 = r2_of(&b);
    let r4 = 2 * a.sign_changes() as u64 + 1;
    let salem = is_salem(&a);
    let r_bound = if salem { r1 + r3 } else { r1 + r2 + r3 + r4 };
    let n_bound = 4 * k + 9 * r_bound as i64;

    let eps_root = BigRational::new(BigInt::one(), BigInt::from(10).pow(12));
    let t_inf = largest_real_root(&q, &eps_root).map(|iv| iv.mid_f64()).unwrap_or(f64::NAN);
    let limit_norm_squared = (t_inf + 1.0 / t_inf).powi(2);

    let min_cert = minimal_certified_n(b.degree(), &c, shift)?;
    let d_min = min_cert.n;
    let (d_bound, d_certificate) = if salem {
        (d_min, min_cert)
    } else {
        let cert = derivative_bound_holds(b.degree(), &c, shift, TABLE_C_N)?;
        if cert.holds {
            (TABLE_C_N, cert)
        } else {
            let top = n_bound.min(TABLE_C_ESCALATION);
            let cert = derivative_bound_holds(b.degree(), &c, shift, top)?;
            if !cert.holds {
                return Err(Error::Inconclusive(format!("derivative bound fails at n = {TABLE_C_N} and n = {top}")));
            }
            (top, cert)
        }
    };

    Ok(VineProfile {
        graph: g.to_encoding(),
        label: g.label().map(str::to_owned),
        vertices: g.vertex_count(),
        a,
        shift,
        s,
        stable_from,
        k,
        b,
        c,
        eps,
        d_min,
        d_bound,
        d_certificate,
        l,
        orders,
        ell,
        r1,
        r2,
        r3,
        r4,
        r_bound,
        n_bound,
        salem,
        limit_norm_squared,
        r3_guard: limit_norm_squared < 9.0,
    })
}
