//! Per-translate obstructions: the cyclotomic test on `‖Γ‖²`, the d-number
//! test on the global even dimension and the algebraic-integer test on
//! vertex dimensions.

use crate::analysis::sequence::CharPolySequence;
use crate::analysis::VineProfile;
use crate::bigraph::{AdjacencyMatrix, Bigraph};
use crate::numeric::perron::norm_squared_f64;
use crate::numeric::roots::largest_real_root;
use crate::numfield::{solve_banded, FieldElement, NumberField};
use crate::poly::charpoly::char_poly;
use crate::poly::cyclotomic::{cyclotomic_content, negated_order, primes_up_to, psi, totient};
use crate::poly::factor::{certify_irreducible, factor, min_poly_of_root, IrreducibilityWitness};
use crate::poly::gcd::square_free_part;
use crate::poly::modp::{self, Field};
use crate::poly::{IntPoly, LaurentPoly};
use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeSet;

pub const DEFAULT_PRIME_BOUND: u64 = 200;
/// Primes tried beyond the bound when certifying irreducibility.
const CERTIFY_EXTRA_PRIMES: usize = 12;
/// Polynomials up to this degree are written out in reports.
const INLINE_DEGREE: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CyclotomicVerdict {
    /// No obstruction at any good prime up to `bound`.
    Pass { bound: u64 },
    Fail { prime: u64 },
}

impl CyclotomicVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, CyclotomicVerdict::Pass { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DNumberVerdict {
    Pass,
    /// `a_n^i` does not divide `a_i^n`.
    Fail { index: usize },
    NotAlgebraicInteger,
}

impl DNumberVerdict {
    pub fn passed(&self) -> bool {
        *self == DNumberVerdict::Pass
    }
}

/// A polynomial as stored in reports: written out when short, otherwise
/// only its degree and a digest of its coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySummary {
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub poly: Option<IntPoly>,
    pub sha256: String,
}

impl PolySummary {
    pub fn of(p: &IntPoly) -> Self {
        let mut h = Sha256::new();
        for c in p.coeffs() {
            h.update(c.to_string().as_bytes());
            h.update(b",");
        }
        let sha256 = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        PolySummary { degree: p.degree(), poly: (p.degree() <= INLINE_DEGREE).then(|| p.clone()), sha256 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DNumberReport {
    pub verdict: DNumberVerdict,
    /// Minimal polynomial of the global even dimension.
    pub min_poly: IntPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicIntegerReport {
    pub passed: bool,
    /// Vertex index in canonical order, with its depth.
    pub vertex: usize,
    pub depth: usize,
    pub min_poly: IntPoly,
    /// Vertices checked, the reported one last.
    pub checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ScreenVerdict {
    Survivor,
    Eliminated { test: EliminatedBy },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EliminatedBy {
    Cyclotomic,
    DNumber,
    AlgebraicInteger,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub graph: String,
    pub j: usize,
    pub vertices: usize,
    pub norm_squared: f64,
    pub norm_squared_min_poly: PolySummary,
    pub cyclotomic: CyclotomicVerdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d_number: Option<DNumberReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub algebraic_integer: Option<AlgebraicIntegerReport>,
    pub verdict: ScreenVerdict,
}

impl ObstructionReport {
    pub fn survived(&self) -> bool {
        self.verdict == ScreenVerdict::Survivor
    }
}

fn is_good_prime(k: &Field, f: &IntPoly, fp: &[u64]) -> bool {
    fp.len() == f.coeffs().len() && k.is_square_free(fp)
}

/// First good prime `p <= bound` at which the irreducible factors of
/// `minpoly` mod `p` have different degrees.
pub fn cyclotomic_test(minpoly: &IntPoly, bound: u64) -> CyclotomicVerdict {
    for p in primes_up_to(bound) {
        let k = Field::new(p);
        let fp = k.reduce(minpoly);
        if !is_good_prime(&k, minpoly, &fp) {
            continue;
        }
        if modp::uniformity(&k, &fp) == modp::Uniformity::Mixed {
            return CyclotomicVerdict::Fail { prime: p };
        }
    }
    CyclotomicVerdict::Pass { bound }
}

/// Whether `minpoly` has non-uniform factor degrees mod `p`; `None` when
/// `p` is a bad prime for it.
pub fn fails_at(minpoly: &IntPoly, p: u64) -> Option<bool> {
    let k = Field::new(p);
    let fp = k.reduce(minpoly);
    if !is_good_prime(&k, minpoly, &fp) {
        return None;
    }
    Some(modp::uniformity(&k, &fp) == modp::Uniformity::Mixed)
}

/// `minpoly = x^n + a_1 x^(n-1) + ... + a_n` passes iff `a_n^i | a_i^n` for
/// every `i`, where zero divides only zero.
pub fn d_number_test(minpoly: &IntPoly) -> DNumberVerdict {
    let lc = minpoly.lc();
    if !lc.abs().is_one() {
        return DNumberVerdict::NotAlgebraicInteger;
    }
    let f = if lc.is_negative() { -minpoly } else { minpoly.clone() };
    let n = f.degree();
    let a = |i: usize| f.coeff(n - i);
    let an = a(n);
    for i in 1..=n {
        let lhs = an.pow(i as u32);
        let rhs = a(i).pow(n as u32);
        let divides = if lhs.is_zero() { rhs.is_zero() } else { (&rhs % &lhs).is_zero() };
        if !divides {
            return DNumberVerdict::Fail { index: i };
        }
    }
    DNumberVerdict::Pass
}

/// An algebraic number is an integer iff its primitive minimal polynomial
/// is monic.
pub fn is_algebraic_integer(minpoly: &IntPoly) -> bool {
    minpoly.primitive_part().lc().abs().is_one()
}

/// Minimal polynomial of `‖Γ‖²` for any connected bipartite graph.
pub fn norm_squared_min_poly(g: &Bigraph) -> Result<IntPoly, Error> {
    let m = g.adjacency_matrix();
    let p = char_poly(&m);
    lambda2_min_poly(&p, &[], norm_squared_f64(&m), DEFAULT_PRIME_BOUND).map(|(h, _)| h)
}

/// `h(y)` with `P(x) = x^e h(x^2)` for the bipartite characteristic
/// polynomial `P`.
fn even_part(p: &IntPoly) -> Result<IntPoly, Error> {
    let r = p.shift_down(p.x_valuation());
    r.deflate2().ok_or_else(|| Error::Internal("characteristic polynomial of a bipartite graph is not even".into()))
}

/// Whether `h` changes sign across a small interval around `y`.
fn brackets(h: &IntPoly, y: f64) -> bool {
    let d = 1e-9 * y.abs().max(1.0);
    let (lo, hi) = (BigRational::from_float(y - d), BigRational::from_float(y + d));
    let (Some(lo), Some(hi)) = (lo, hi) else { return false };
    let a = h.sign_at(lo.numer(), lo.denom());
    let b = h.sign_at(hi.numer(), hi.denom());
    a * b < 0
}

/// Minimal polynomial of `λ²` from `P_n`, together with the cyclotomic
/// verdict at `bound`. Factors in `strip` are removed from the even part
/// first; they must not vanish at `λ`.
///
/// Degree patterns at good primes serve both purposes: they decide the
/// test and they certify that the stripped polynomial is irreducible.
pub fn lambda2_min_poly(
    p: &IntPoly,
    strip: &[IntPoly],
    lambda2: f64,
    bound: u64,
) -> Result<(IntPoly, CyclotomicVerdict), Error> {
    let full = even_part(p)?;
    let mut r = p.shift_down(p.x_valuation());
    for f in strip {
        r.strip_factor(f);
    }
    let stripped = even_part(&r).ok().map(|h| square_free_part(&h).primitive_part());
    let mut h = match stripped {
        Some(h) if h.degree() > 0 && brackets(&h, lambda2) => h,
        // stripped too much; fall back to the whole even part
        _ => square_free_part(&full).primitive_part(),
    };
    if !brackets(&h, lambda2) {
        return Err(Error::Internal("norm squared is not a root of the characteristic polynomial".into()));
    }
    if h.lc().is_negative() {
        h = -&h;
    }
    let n = h.degree();
    let mut witness = IrreducibilityWitness::new(n);
    let mut first_fail = None;
    let mut extra = 0;
    for p in primes_up_to(2000) {
        if witness.certified() && (first_fail.is_some() || p > bound) {
            break;
        }
        if p > bound {
            extra += 1;
            if extra > CERTIFY_EXTRA_PRIMES {
                break;
            }
        }
        let k = Field::new(p);
        let hp = k.reduce(&h);
        if !is_good_prime(&k, &h, &hp) {
            continue;
        }
        let pattern = modp::degree_pattern(&k, &hp);
        witness.add_pattern(&pattern);
        if p <= bound && first_fail.is_none() && pattern.iter().any(|&d| d != pattern[0]) {
            first_fail = Some(p);
        }
    }
    if witness.certified() {
        let verdict = first_fail.map_or(CyclotomicVerdict::Pass { bound }, |prime| CyclotomicVerdict::Fail { prime });
        return Ok((h, verdict));
    }
    let iv = largest_real_root(&h, &BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12))))
        .ok_or_else(|| Error::Internal("no real root for the norm squared".into()))?;
    let m = min_poly_of_root(&h, &iv)?;
    let verdict = cyclotomic_test(&m, bound);
    Ok((m, verdict))
}

/// Minimal polynomial of `λ` from that of `λ²`.
pub fn lambda_min_poly(lambda2_min_poly: &IntPoly) -> Result<IntPoly, Error> {
    let big = lambda2_min_poly.inflate(2);
    if certify_irreducible(&big, CERTIFY_EXTRA_PRIMES) {
        return Ok(big);
    }
    let iv = largest_real_root(&big, &BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12))))
        .ok_or_else(|| Error::Internal("no real root for the norm".into()))?;
    min_poly_of_root(&big, &iv)
}

/// Frobenius-Perron dimensions in `ℚ(λ)`, the distinguished vertex having
/// dimension 1. Returns the field generator (which is `λ`) alongside.
pub fn fp_dimensions_exact(
    m: &AdjacencyMatrix,
    lambda_min_poly: &IntPoly,
) -> Result<(FieldElement, Vec<FieldElement>), Error> {
    let field = NumberField::new(lambda_min_poly.clone())?;
    let lambda = field.generator();
    let n = m.size;
    if n == 1 {
        return Ok((lambda, vec![field.from_int(1)]));
    }
    // (λI - M') w = M[1.., 0], M' being M without the distinguished vertex
    let bw = m.bandwidth().max(1);
    let size = n - 1;
    let rows: Vec<Vec<FieldElement>> = (0..size)
        .map(|i| {
            let lo = i.saturating_sub(bw);
            let hi = (i + bw + 1).min(size);
            (lo..hi)
                .map(|j| {
                    let e = field.from_int(-(m.get(i + 1, j + 1) as i64));
                    if i == j {
                        e.add(&lambda)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let rhs = (0..size).map(|i| field.from_int(m.get(i + 1, 0) as i64)).collect();
    let w = solve_banded(rows, rhs, bw)?;
    let mut dims = vec![field.from_int(1)];
    dims.extend(w);
    Ok((lambda, dims))
}

/// `Σ dim(v)²` over vertices at even distance from the distinguished one.
pub fn global_even_dimension(m: &AdjacencyMatrix, dims: &[FieldElement]) -> FieldElement {
    let mut acc = dims[0].field().from_int(0);
    for (v, d) in dims.iter().enumerate() {
        if m.parity[v] == 0 {
            acc = acc.add(&d.mul(d));
        }
    }
    acc
}

/// Minimal polynomial of the global even dimension.
pub fn global_even_dimension_min_poly(g: &Bigraph) -> Result<IntPoly, Error> {
    let m = g.adjacency_matrix();
    let l2 = norm_squared_min_poly(g)?;
    let (_, dims) = fp_dimensions_exact(&m, &lambda_min_poly(&l2)?)?;
    Ok(global_even_dimension(&m, &dims).min_poly())
}

/// Index of the vertex checked first by the algebraic-integer test: the
/// last vertex three levels below the original vine's base.
pub fn designated_vertex(g: &Bigraph, j: usize) -> Option<usize> {
    let d = 3 + j;
    let layer = g.layers().get(d - 1)?;
    g.vertex_index(d, layer.len() - 1)
}

/// Checks the designated vertex, then every other vertex; stops at the
/// first dimension that is not an algebraic integer.
pub fn algebraic_integer_test(
    m: &AdjacencyMatrix,
    dims: &[FieldElement],
    designated: Option<usize>,
) -> AlgebraicIntegerReport {
    let order: Vec<usize> = designated.into_iter().chain((0..dims.len()).filter(|&v| Some(v) != designated)).collect();
    let mut last = None;
    for (i, &v) in order.iter().enumerate() {
        let mp = dims[v].min_poly();
        let passed = is_algebraic_integer(&mp);
        let report = AlgebraicIntegerReport { passed, vertex: v, depth: m.depth[v], min_poly: mp, checked: i + 1 };
        if !passed {
            return report;
        }
        if Some(v) == designated || last.is_none() {
            last = Some(report);
        } else if let Some(r) = last.as_mut() {
            r.checked = i + 1;
        }
    }
    last.expect("graph has vertices")
}

/// Cyclotomic test, then the d-number test, then the algebraic-integer
/// test, each run only if the previous one passed.
pub fn screen(
    g: &Bigraph,
    j: usize,
    charpoly: &IntPoly,
    strip: &[IntPoly],
    bound: u64,
) -> Result<ObstructionReport, Error> {
    let lambda2 = norm_squared_f64(&g.adjacency_matrix());
    let (l2, cyclotomic) = lambda2_min_poly(charpoly, strip, lambda2, bound)?;
    screen_after_norm(g, j, lambda2, &l2, cyclotomic)
}

fn screen_after_norm(
    g: &Bigraph,
    j: usize,
    lambda2: f64,
    l2: &IntPoly,
    cyclotomic: CyclotomicVerdict,
) -> Result<ObstructionReport, Error> {
    let m = g.adjacency_matrix();
    let mut report = ObstructionReport {
        graph: g.to_encoding(),
        j,
        vertices: m.size,
        norm_squared: lambda2,
        norm_squared_min_poly: PolySummary::of(l2),
        cyclotomic,
        d_number: None,
        algebraic_integer: None,
        verdict: ScreenVerdict::Eliminated { test: EliminatedBy::Cyclotomic },
    };
    if !report.cyclotomic.passed() {
        return Ok(report);
    }
    let (_, dims) = fp_dimensions_exact(&m, &lambda_min_poly(l2)?)?;
    let gl = global_even_dimension(&m, &dims).min_poly();
    let verdict = d_number_test(&gl);
    let passed = verdict.passed();
    report.d_number = Some(DNumberReport { verdict, min_poly: gl });
    if !passed {
        report.verdict = ScreenVerdict::Eliminated { test: EliminatedBy::DNumber };
        return Ok(report);
    }
    let ai = algebraic_integer_test(&m, &dims, designated_vertex(g, j));
    report.verdict = if ai.passed {
        ScreenVerdict::Survivor
    } else {
        ScreenVerdict::Eliminated { test: EliminatedBy::AlgebraicInteger }
    };
    report.algebraic_integer = Some(ai);
    Ok(report)
}

/// Screens the `j`-th translate of `g` with no knowledge of its vine
/// profile.
pub fn screen_translate(g: &Bigraph, j: usize, bound: u64) -> Result<ObstructionReport, Error> {
    let t = g.translate(j);
    let p = char_poly(&t.adjacency_matrix());
    screen(&t, j, &p, &[], bound)
}

/// Screens all translates of a profiled vine, reusing the characteristic
/// polynomial recurrence and stripping factors known to come from roots
/// of unity or from `B`.
pub struct VineScreener {
    graph: Bigraph,
    seq: CharPolySequence,
    stable: Vec<IntPoly>,
    early_orders: BTreeSet<u64>,
    early_until: usize,
    bound: u64,
}

impl VineScreener {
    pub fn new(g: &Bigraph, profile: &VineProfile, bound: u64) -> Self {
        let mut orders: BTreeSet<u64> = profile.s_set().into_iter().collect();
        orders.extend([1, 2]);
        let mut stable = Vec::new();
        for (f, _) in factor(&profile.b).factors {
            let cyc = cyclotomic_content(&f);
            if let Some(&(m, _)) = cyc.first() {
                orders.insert(m);
            } else if let Some(t) = trace_poly(&f) {
                stable.push(t.negate_var().primitive_part());
                stable.push(t);
            }
        }
        let closed: BTreeSet<u64> = orders.iter().flat_map(|&m| [m, negated_order(m)]).collect();
        stable.extend(closed.iter().map(|&m| psi(m)));
        VineScreener {
            graph: g.clone(),
            seq: CharPolySequence::new(g),
            stable,
            early_orders: BTreeSet::new(),
            early_until: profile.stable_from.max(profile.s.max(0) as usize),
            bound,
        }
    }

    fn strip_list(&mut self, n: usize) -> Vec<IntPoly> {
        if n > self.early_until {
            return self.stable.clone();
        }
        // before the two-term description holds any root of unity can occur
        if self.early_orders.is_empty() {
            let top = self.early_until as u64;
            let small: Vec<u64> = (1..=4 * top * top + 6).filter(|&m| m <= 2 || totient(m) / 2 <= top).collect();
            self.early_orders = small.iter().flat_map(|&m| [m, negated_order(m)]).collect();
        }
        let mut out = self.stable.clone();
        out.extend(self.early_orders.iter().map(|&m| psi(m)));
        out
    }

    /// Minimal polynomial of `λ²` for the `j`-th translate, with its
    /// cyclotomic verdict.
    pub fn norm_squared(&mut self, j: usize) -> Result<(IntPoly, CyclotomicVerdict), Error> {
        let lambda2 = norm_squared_f64(&self.graph.translate(j).adjacency_matrix());
        self.norm_squared_near(j, lambda2)
    }

    fn norm_squared_near(&mut self, j: usize, lambda2: f64) -> Result<(IntPoly, CyclotomicVerdict), Error> {
        let strip = self.strip_list(self.seq.base() + j);
        lambda2_min_poly(self.seq.translate(j), &strip, lambda2, self.bound)
    }

    pub fn screen(&mut self, j: usize) -> Result<ObstructionReport, Error> {
        let t = self.graph.translate(j);
        let lambda2 = norm_squared_f64(&t.adjacency_matrix());
        let (l2, verdict) = self.norm_squared_near(j, lambda2)?;
        screen_after_norm(&t, j, lambda2, &l2, verdict)
    }
}

/// `g` with `f(t) = t^(deg f / 2) g(t + 1/t)` for a palindromic `f` of
/// even degree.
fn trace_poly(f: &IntPoly) -> Option<IntPoly> {
    if f.degree() % 2 == 1 || !f.is_palindromic() {
        return None;
    }
    LaurentPoly::new(-((f.degree() / 2) as i64), f.clone()).to_x_poly()
}

/// Real embedding check used in tests: value of `e` at `x = root`.
pub fn embed(e: &FieldElement, root: f64) -> f64 {
    e.eval_f64(root)
}

/// Elements of a field as rationals, for exact comparisons in tests.
pub fn as_rational(e: &FieldElement) -> Option<BigRational> {
    (e.value().degree() == 0 && !e.value().is_zero())
        .then(|| e.value().coeff(0))
        .or_else(|| e.is_zero().then(BigRational::zero))
}
