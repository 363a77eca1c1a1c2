//! Certified positivity of functions of `C(e^{iθ})` on the unit circle.
//!
//! A function is evaluated at cell midpoints; a cell is settled once the
//! midpoint value minus a Lipschitz margin and a rounding allowance stays
//! positive. Cells that cannot be settled are split. A midpoint value below
//! minus the rounding allowance is a witness that positivity fails.

use crate::poly::IntPoly;
use crate::Error;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const MAX_EVALUATIONS: usize = 4_000_000;

struct CircleData {
    c: Vec<f64>,
    /// `sum |c_i|`, `sum i|c_i|`, `sum i(i-1)|c_i|`
    l0: f64,
    l1: f64,
    l2: f64,
}

impl CircleData {
    fn new(c: &IntPoly) -> Self {
        let c: Vec<f64> = c.coeffs().iter().map(|v| v.to_f64().unwrap_or(f64::INFINITY)).collect();
        let mut l = (0.0, 0.0, 0.0);
        for (i, v) in c.iter().enumerate() {
            let (i, a) = (i as f64, v.abs());
            l.0 += a;
            l.1 += i * a;
            l.2 += i * (i - 1.0) * a;
        }
        CircleData { c, l0: l.0, l1: l.1, l2: l.2 }
    }

    /// `(|C(e^{iθ})|, |C'(e^{iθ})|)`.
    fn moduli(&self, theta: f64) -> (f64, f64) {
        let (s, co) = theta.sin_cos();
        let (mut pr, mut pi) = (0.0, 0.0);
        let (mut dr, mut di) = (0.0, 0.0);
        for (i, &a) in self.c.iter().enumerate().rev() {
            // derivative first, it uses the old value of p
            let ndr = dr * co - di * s + pr;
            let ndi = dr * s + di * co + pi;
            dr = ndr;
            di = ndi;
            let npr = pr * co - pi * s + a;
            let npi = pr * s + pi * co;
            pr = npr;
            pi = npi;
            let _ = i;
        }
        (pr.hypot(pi), dr.hypot(di))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Verdict {
    Positive,
    Fails,
}

/// Settles `f > 0` on `[0, π]` for an `f` with Lipschitz constant `lip`.
fn certify_positive(
    f: impl Fn(f64) -> f64,
    lip: f64,
    rounding: f64,
    initial_cells: usize,
) -> Result<(Verdict, f64, usize), Error> {
    let h = PI / initial_cells as f64;
    let mut stack: Vec<(f64, f64)> = (0..initial_cells).map(|i| (i as f64 * h, (i + 1) as f64 * h)).collect();
    let mut evaluations = 0;
    let mut min_value = f64::INFINITY;
    while let Some((a, b)) = stack.pop() {
        evaluations += 1;
        if evaluations > MAX_EVALUATIONS {
            return Err(Error::Inconclusive("positivity margin below grid resolution".into()));
        }
        let mid = 0.5 * (a + b);
        let v = f(mid);
        min_value = min_value.min(v);
        if v < -rounding {
            return Ok((Verdict::Fails, v, evaluations));
        }
        if v - lip * 0.5 * (b - a) - rounding > 0.0 {
            continue;
        }
        if b - a < 1e-13 {
            return Err(Error::Inconclusive("positivity margin below grid resolution".into()));
        }
        stack.push((a, mid));
        stack.push((mid, b));
    }
    Ok((Verdict::Positive, min_value, evaluations))
}

/// Outcome of checking `(2(n - shift) + deg B)|C| - |C'(t)| - |C'(1/t)| > 0`
/// on `|t| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeCertificate {
    pub n: i64,
    pub holds: bool,
    /// Smallest sampled value of the expression.
    pub min_sampled: f64,
    pub lipschitz: f64,
    pub evaluations: usize,
}

/// For real coefficients `|C'(1/t)| = |C'(t)|` on the circle, so the
/// expression is `k|C| - 2|C'|` with `k = 2(n - shift) + deg B`, and it is
/// symmetric under `θ -> -θ`.
pub fn derivative_bound_holds(b_deg: usize, c: &IntPoly, shift: i64, n: i64) -> Result<DerivativeCertificate, Error> {
    let data = CircleData::new(c);
    let k = (2 * (n - shift) + b_deg as i64) as f64;
    if k <= 0.0 {
        return Ok(DerivativeCertificate { n, holds: false, min_sampled: f64::NAN, lipschitz: 0.0, evaluations: 0 });
    }
    let lip = k * data.l1 + 2.0 * data.l2;
    let rounding = 1e-12 * (k * data.l0 + 2.0 * data.l1 + 1.0);
    let f = |t: f64| {
        let (m, d) = data.moduli(t);
        k * m - 2.0 * d
    };
    let cells = 64.max(8 * data.c.len());
    let (verdict, min_sampled, evaluations) = certify_positive(f, lip, rounding, cells)?;
    Ok(DerivativeCertificate { n, holds: verdict == Verdict::Positive, min_sampled, lipschitz: lip, evaluations })
}

/// Estimate of `max |C'| / |C|` on the unit circle.
pub fn max_log_derivative(c: &IntPoly) -> f64 {
    let data = CircleData::new(c);
    let ratio = |t: f64| {
        let (m, d) = data.moduli(t);
        d / m
    };
    let samples = 20_000.max(200 * data.c.len());
    let h = PI / samples as f64;
    let (mut best_t, mut best) = (0.0, ratio(0.0));
    for i in 1..=samples {
        let t = i as f64 * h;
        let r = ratio(t);
        if r > best {
            best = r;
            best_t = t;
        }
    }
    // golden-section refinement around the best sample
    let (mut a, mut b) = ((best_t - h).max(0.0), (best_t + h).min(PI));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let x1 = b - g * (b - a);
        let x2 = a + g * (b - a);
        if ratio(x1) > ratio(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    best.max(ratio(0.5 * (a + b)))
}

/// Smallest `n > shift` at which the derivative bound is certified, with
/// its certificate.
pub fn minimal_certified_n(b_deg: usize, c: &IntPoly, shift: i64) -> Result<DerivativeCertificate, Error> {
    let r = max_log_derivative(c);
    // 2(n - shift) + b > 2r
    let mut n = ((r - b_deg as f64 / 2.0 + shift as f64).floor() as i64 + 1).max(shift + 1);
    // the estimate is from below, so a failure at n means the answer is above
    for _ in 0..64 {
        let cert = derivative_bound_holds(b_deg, c, shift, n)?;
        if cert.holds {
            return Ok(cert);
        }
        n += 1;
    }
    Err(Error::Inconclusive("derivative bound not certified near its estimate".into()))
}

/// Certified lower bound for `|C(e^{iθ})|`, or `None` if none could be
/// established (for instance when `C` has a root on the circle).
pub fn min_modulus_lower_bound(c: &IntPoly) -> Option<f64> {
    let data = CircleData::new(c);
    let rounding = 1e-12 * (data.l0 + 1.0);
    let f = |t: f64| data.moduli(t).0;
    // settle f > margin where margin is half the sampled minimum
    let mut min = f64::INFINITY;
    let samples = 64.max(64 * data.c.len());
    for i in 0..=samples {
        min = min.min(f(i as f64 * PI / samples as f64));
    }
    let margin = 0.5 * min;
    if margin <= rounding {
        return None;
    }
    match certify_positive(|t| f(t) - margin, data.l1, rounding, samples) {
        Ok((Verdict::Positive, _, _)) => Some(margin),
        _ => None,
    }
}
