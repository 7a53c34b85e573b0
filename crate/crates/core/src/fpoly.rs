use num_rational::BigRational;

use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::ring::RingSpec;

/// Dense polynomial over a field, low to high, no trailing zeros.
#[derive(Debug, Clone)]
pub struct FPoly<F: Field> {
    pub(crate) coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for FPoly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl<F: Field> FPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        FPoly { coeffs }
    }

    pub fn zero() -> Self {
        FPoly { coeffs: Vec::new() }
    }

    pub fn one(field: &F) -> Self {
        FPoly { coeffs: vec![field.one()] }
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn valuation(&self, field: &F) -> usize {
        self.coeffs.iter().position(|c| !field.is_zero(c)).unwrap_or(0)
    }

    /// Removes the largest power of t dividing self.
    pub fn strip_t(&self, field: &F) -> Self {
        FPoly { coeffs: self.coeffs[self.valuation(field)..].to_vec() }
    }

    pub fn add(&self, field: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = field.zero();
        Self::new(
            field,
            (0..n)
                .map(|k| field.add(self.coeffs.get(k).unwrap_or(&z), o.coeffs.get(k).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = field.zero();
        Self::new(
            field,
            (0..n)
                .map(|k| field.sub(self.coeffs.get(k).unwrap_or(&z), o.coeffs.get(k).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul(&self, field: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = field.add(&v[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, v)
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        Self::new(field, self.coeffs.iter().map(|x| field.mul(x, c)).collect())
    }

    pub fn monic(&self, field: &F) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => self.scale(field, &field.inv(lc)),
        }
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, field: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = field.inv(d.coeffs.last().unwrap());
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![field.zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = field.mul(&r[k + dd], &inv);
            if field.is_zero(&c) {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] = field.sub(&r[k + i], &field.mul(&c, di));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(field, q), Self::new(field, r))
    }

    /// Monic gcd.
    pub fn gcd(&self, field: &F, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn is_one(&self, field: &F) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == field.one()
    }
}

/// Splits a one-variable Laurent polynomial as `t^shift * p(t)` with `p(0) != 0`,
/// mapping coefficients into `field`. `None` if a coefficient has no image.
pub fn from_laurent<F: Field>(field: &F, p: &LaurentPoly) -> Option<(i64, FPoly<F>)> {
    let (shift, dense) = p.to_dense().ok()?;
    let coeffs = dense.iter().map(|c| field.from_rational(c)).collect::<Option<Vec<_>>>()?;
    let fp = FPoly::new(field, coeffs);
    let v = fp.valuation(field);
    Some((shift + v as i64, fp.strip_t(field)))
}

/// Inverse of [`from_laurent`] for fields whose elements have rational representatives.
pub fn to_laurent<F: Field>(field: &F, ring: RingSpec, shift: i64, p: &FPoly<F>) -> LaurentPoly {
    let terms = p.coeffs.iter().enumerate().filter(|(_, c)| !field.is_zero(c)).map(|(k, c)| {
        let q: BigRational = field.to_rational(c).expect("element outside the prime field");
        (vec![shift + k as i64], q)
    });
    LaurentPoly::from_terms(ring, terms).expect("valid univariate terms")
}
