//! Dense univariate polynomials over Z, the workhorse behind the one-variable
//! algorithms (gcd, cyclotomic tests, strong Gröbner bases).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ring::{CoeffRing, RingSpec};

/// Coefficients from low to high degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c.into();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Lowest nonzero coefficient.
    pub fn tc(&self) -> Option<&BigInt> {
        self.0.iter().find(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Largest power of t dividing self (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Divides by the largest power of t dividing self.
    pub fn strip_t(&self) -> Self {
        ZPoly(self.0[self.valuation()..].to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        ZPoly(v)
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().unwrap().is_negative() {
            c = -c;
        }
        ZPoly(self.0.iter().map(|x| x / &c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in Z[t].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem_z(d)?;
        r.is_zero().then_some(q)
    }

    /// Division with remainder, possible only while the leading coefficient of
    /// `d` divides the running leading coefficient. Returns `None` otherwise.
    fn divrem_z(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lcd = d.lc().unwrap();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let (quo, rem) = r.lc().unwrap().div_rem(lcd);
            if !rem.is_zero() {
                return None;
            }
            let k = dr - dd;
            r = r.sub(&d.scale(&quo).shift(k));
            q[k] = quo;
        }
        Some((Self::new(q), r))
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("prem by zero");
        let lcb = b.lc().unwrap().clone();
        let Some(da) = self.degree() else { return Self::zero() };
        if da < db {
            return self.clone();
        }
        let mut e = da - db + 1;
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lc().unwrap().clone();
            r = r.scale(&lcb).sub(&b.scale(&lr).shift(dr - db));
            e -= 1;
        }
        let mut f = BigInt::one();
        for _ in 0..e {
            f *= &lcb;
        }
        r.scale(&f)
    }

    /// Primitive gcd by the subresultant remainder sequence; positive leading
    /// coefficient, content equal to the gcd of the contents.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return normalize_sign(other.clone());
        }
        if other.is_zero() {
            return normalize_sign(self.clone());
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        let c = a.content().gcd(&b.content());
        a = a.primitive();
        b = b.primitive();
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.prem(&b);
            if r.is_zero() {
                break;
            }
            if r.degree() == Some(0) {
                b = ZPoly::constant(1);
                break;
            }
            let denom = &g * pow(&h, delta);
            a = b;
            b = ZPoly(r.0.iter().map(|x| x / &denom).collect());
            g = a.lc().unwrap().clone();
            h = if delta == 0 { h } else { pow(&g, delta) / pow(&h, delta - 1) };
        }
        b.primitive().scale(&c)
    }

    pub fn to_laurent(&self, shift: i64) -> LaurentPoly {
        LaurentPoly::from_dense(RingSpec::integers(1), shift, &self.0)
    }

    /// Splits a one-variable integer Laurent polynomial as `t^shift * p` with `p(0) != 0`.
    pub fn from_laurent(p: &LaurentPoly) -> Result<(i64, Self)> {
        if p.ring().coeffs != CoeffRing::Integers {
            return Err(Error::InvalidRing(format!("expected Z coefficients, got {}", p.ring().coeffs)));
        }
        let (shift, dense) = p.to_dense()?;
        Ok((shift, Self::new(dense.iter().map(|c| c.to_integer()).collect())))
    }

    /// Rational coefficient vector (for field conversions).
    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.0.iter().cloned().map(BigRational::from_integer).collect()
    }
}

fn normalize_sign(p: ZPoly) -> ZPoly {
    if p.lc().is_some_and(|c| c.is_negative()) {
        p.neg()
    } else {
        p
    }
}

fn pow(b: &BigInt, e: usize) -> BigInt {
    let mut r = BigInt::one();
    for _ in 0..e {
        r *= b;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_small_cases() {
        let a = ZPoly::from_i64(&[-1, 0, 1]);
        let b = ZPoly::from_i64(&[0, -1, 1]);
        assert_eq!(a.gcd(&b), ZPoly::from_i64(&[-1, 1]));
        let f = ZPoly::from_i64(&[2, -3, 2]);
        assert_eq!(f.gcd(&f.scale(&BigInt::from(3))), f);
        assert_eq!(ZPoly::from_i64(&[4, 6]).gcd(&ZPoly::from_i64(&[6, 9])), ZPoly::from_i64(&[2, 3]));
        assert_eq!(ZPoly::from_i64(&[1, 1]).gcd(&ZPoly::from_i64(&[-1, 1])), ZPoly::from_i64(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = ZPoly::from_i64(&[-1, 0, 0, 1]);
        let b = ZPoly::from_i64(&[-1, 1]);
        assert_eq!(a.div_exact(&b), Some(ZPoly::from_i64(&[1, 1, 1])));
        assert_eq!(ZPoly::from_i64(&[1, 1]).div_exact(&ZPoly::from_i64(&[1, 2])), None);
    }

    fn arb_zpoly() -> impl Strategy<Value = ZPoly> {
        proptest::collection::vec(-6i64..=6, 0..5).prop_map(|v| ZPoly::from_i64(&v))
    }

    proptest! {
        #[test]
        fn gcd_divides_and_is_maximal(a in arb_zpoly(), b in arb_zpoly(), c in arb_zpoly()) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let (ac, bc) = (a.mul(&c), b.mul(&c));
            let g = ac.gcd(&bc);
            prop_assert!(ac.div_exact(&g).is_some());
            prop_assert!(bc.div_exact(&g).is_some());
            // any common factor c divides the gcd up to content
            let prim_c = c.primitive();
            prop_assert!(g.div_exact(&prim_c).is_some());
        }
    }
}
