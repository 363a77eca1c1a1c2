//! Exact arithmetic in `ℚ[x]/(m)` for a monic irreducible integer `m`.

use crate::poly::factor::is_irreducible;
use crate::poly::gcd::square_free_part;
use crate::poly::{IntPoly, RatPoly};
use crate::Error;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: IntPoly,
    modulus_rat: RatPoly,
}

impl NumberField {
    /// Fails unless `m` is monic and irreducible of positive degree.
    pub fn new(m: IntPoly) -> Result<Arc<Self>, Error> {
        if m.degree() == 0 || !m.is_monic() {
            return Err(Error::Internal(format!("field modulus {m} is not monic of positive degree")));
        }
        if !is_irreducible(&m) {
            return Err(Error::Internal(format!("field modulus {m} is reducible")));
        }
        Ok(Arc::new(Self::new_unchecked(m)))
    }

    fn new_unchecked(m: IntPoly) -> Self {
        NumberField { modulus_rat: RatPoly::from_int(&m), modulus: m }
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn element(self: &Arc<Self>, value: RatPoly) -> FieldElement {
        let value = if value.is_zero() || value.degree() < self.degree() {
            value
        } else {
            value.rem(&self.modulus_rat)
        };
        FieldElement { field: Arc::clone(self), value }
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> FieldElement {
        self.element(RatPoly::from_int(&IntPoly::from_i64s(&[v])))
    }

    /// The class of `x`.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.element(RatPoly::from_int(&IntPoly::x()))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<NumberField>,
    value: RatPoly,
}

impl FieldElement {
    fn same_field(&self, o: &FieldElement) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field.modulus == o.field.modulus,
            "number field elements with different moduli"
        );
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Representative of degree below the field degree.
    pub fn value(&self) -> &RatPoly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, o: &FieldElement) -> FieldElement {
        self.same_field(o);
        FieldElement { field: Arc::clone(&self.field), value: self.value.add(&o.value) }
    }

    pub fn sub(&self, o: &FieldElement) -> FieldElement {
        self.same_field(o);
        FieldElement { field: Arc::clone(&self.field), value: self.value.sub(&o.value) }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { field: Arc::clone(&self.field), value: self.value.neg() }
    }

    pub fn mul(&self, o: &FieldElement) -> FieldElement {
        self.same_field(o);
        self.field.element(self.value.mul(&o.value))
    }

    pub fn inv(&self) -> Result<FieldElement, Error> {
        if self.is_zero() {
            return Err(Error::Internal("inverse of zero in a number field".into()));
        }
        let (g, s, _) = RatPoly::ext_gcd(&self.value, &self.field.modulus_rat);
        if g.degree() != 0 {
            return Err(Error::Internal("field modulus is not irreducible".into()));
        }
        Ok(self.field.element(s))
    }

    pub fn div(&self, o: &FieldElement) -> Result<FieldElement, Error> {
        Ok(self.mul(&o.inv()?))
    }

    /// Value under the real embedding sending `x` to `root`.
    pub fn eval_f64(&self, root: f64) -> f64 {
        let den = self.value.denominator();
        let num = self.value.numerator().eval_f64(root);
        num / num_traits::ToPrimitive::to_f64(den).unwrap_or(f64::INFINITY)
    }

    /// Matrix of multiplication by `self` on the basis `1, x, ..., x^(d-1)`;
    /// column `j` holds the image of `x^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigRational>> {
        let d = self.field.degree();
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        let x = self.field.generator();
        for _ in 0..d {
            let c = cur.value.coeffs();
            cols.push((0..d).map(|i| c.get(i).cloned().unwrap_or_else(BigRational::zero)).collect::<Vec<_>>());
            cur = cur.mul(&x);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Characteristic polynomial of the multiplication map, made primitive.
    pub fn char_poly(&self) -> IntPoly {
        RatPoly::from_coeffs(&rational_char_poly(self.multiplication_matrix())).to_primitive()
    }

    /// Minimal polynomial over `ℚ`: coprime integer coefficients, positive
    /// leading coefficient. The characteristic polynomial of the
    /// multiplication map is a power of it.
    pub fn min_poly(&self) -> IntPoly {
        let sf = square_free_part(&self.char_poly()).primitive_part();
        if sf.lc().is_negative() {
            -&sf
        } else {
            sf
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.value, self.field.modulus)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

/// `det(xI - M)` over the rationals, by reduction to Hessenberg form.
/// Coefficients are returned lowest degree first.
pub fn rational_char_poly(mut h: Vec<Vec<BigRational>>) -> Vec<BigRational> {
    let n = h.len();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        for i in m + 1..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] / &h[m][m - 1];
            for j in 0..n {
                let t = &u * &h[m][j];
                h[i][j] -= t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[i];
                row[m] += t;
            }
        }
    }
    let mut p: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for m in 1..=n {
        // (x - h[m-1][m-1]) p[m-1]
        let prev = &p[m - 1];
        let mut next = vec![BigRational::zero(); m + 1];
        for (k, c) in prev.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &h[m - 1][m - 1];
        }
        let mut t = BigRational::one();
        for i in 1..m {
            t *= &h[m - i][m - i - 1];
            if t.is_zero() {
                break;
            }
            let f = &t * &h[m - i - 1][m - 1];
            for (k, c) in p[m - i - 1].iter().enumerate() {
                next[k] -= &f * c;
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

/// Solves the banded system `a w = b` over a number field without
/// pivoting. `a[i]` stores columns `i - bw ..= i + bw` (clipped to the
/// matrix).
pub fn solve_banded(mut a: Vec<Vec<FieldElement>>, mut b: Vec<FieldElement>, bw: usize) -> Result<Vec<FieldElement>, Error> {
    let n = b.len();
    let lo = |i: usize| i.saturating_sub(bw);
    for k in 0..n {
        let piv = a[k][k - lo(k)].clone();
        let inv = piv.inv().map_err(|_| Error::Internal("zero pivot in exact eigenvector solve".into()))?;
        for i in k + 1..(k + bw + 1).min(n) {
            let f = a[i][k - lo(i)].clone();
            if f.is_zero() {
                continue;
            }
            let f = f.mul(&inv);
            for j in k..(k + bw + 1).min(n) {
                let v = a[i][j - lo(i)].sub(&f.mul(&a[k][j - lo(k)]));
                a[i][j - lo(i)] = v;
            }
            b[i] = b[i].sub(&f.mul(&b[k]));
        }
    }
    let mut w: Vec<Option<FieldElement>> = vec![None; n];
    for k in (0..n).rev() {
        let mut acc = b[k].clone();
        for j in k + 1..(k + bw + 1).min(n) {
            acc = acc.sub(&a[k][j - lo(k)].mul(w[j].as_ref().expect("solved")));
        }
        w[k] = Some(acc.div(&a[k][k - lo(k)])?);
    }
    Ok(w.into_iter().map(Option::unwrap).collect())
}
