//! Sparse multivariate Laurent polynomials over Z, Q and F_p.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{CoeffRing, RingSpec};

pub type Exponent = Vec<i64>;

/// A monomial `t_1^{e_1} ... t_r^{e_r}`, used to record unit multipliers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Exponent);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn inverse(&self) -> Self {
        Monomial(self.0.iter().map(|e| -e).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        write!(f, "{}", crate::poly_text::format_monomial(&self.0))
    }
}

/// Element of `k[t_1^±, ..., t_r^±]`. Terms are keyed by exponent vector and
/// never store a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: RingSpec,
    terms: BTreeMap<Exponent, BigRational>,
}

pub(crate) fn reduce_coeff(ring: CoeffRing, c: BigRational) -> BigRational {
    match ring {
        CoeffRing::PrimeField(p) => {
            let p = BigInt::from(p);
            let num = c.numer().mod_floor(&p);
            let den = c.denom().mod_floor(&p);
            let inv = mod_inverse(&den, &p).expect("denominator divisible by the characteristic");
            BigRational::from_integer((num * inv).mod_floor(&p))
        }
        _ => c,
    }
}

pub(crate) fn mod_inverse(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(p);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(p))
    } else if (-&e.gcd).is_one() {
        Some((-e.x).mod_floor(p))
    } else {
        None
    }
}

/// Multiplicative inverse of a coefficient, if it is a unit of the coefficient ring.
pub fn coeff_inverse(ring: CoeffRing, c: &BigRational) -> Option<BigRational> {
    if c.is_zero() {
        return None;
    }
    match ring {
        CoeffRing::Integers => {
            if c.abs().is_one() {
                Some(c.clone())
            } else {
                None
            }
        }
        CoeffRing::Rationals => Some(c.recip()),
        CoeffRing::PrimeField(p) => {
            let p = BigInt::from(p);
            mod_inverse(&c.to_integer(), &p).map(BigRational::from_integer)
        }
    }
}

impl LaurentPoly {
    pub fn zero(ring: RingSpec) -> Self {
        LaurentPoly { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: RingSpec, c: impl Into<BigInt>) -> Self {
        Self::monomial(ring, vec![0; ring.nvars], BigRational::from_integer(c.into()))
    }

    /// The variable `t_{i+1}` (zero-based index).
    pub fn var(ring: RingSpec, i: usize) -> Self {
        let mut e = vec![0; ring.nvars];
        e[i] = 1;
        Self::monomial(ring, e, BigRational::one())
    }

    pub fn monomial(ring: RingSpec, exp: Exponent, coeff: BigRational) -> Self {
        assert_eq!(exp.len(), ring.nvars, "exponent length must equal the number of variables");
        let mut p = Self::zero(ring);
        p.add_term(exp, coeff);
        p
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(ring: RingSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars {
                return Err(Error::Shape(format!(
                    "exponent {e:?} has length {}, ring has {} variables",
                    e.len(),
                    ring.nvars
                )));
            }
            if ring.coeffs == CoeffRing::Integers && !c.is_integer() {
                return Err(Error::InvalidRing(format!("non-integer coefficient {c} over Z")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Univariate polynomial `t^shift * sum coeffs[k] t^k`.
    pub fn from_dense(ring: RingSpec, shift: i64, coeffs: &[BigInt]) -> Self {
        assert_eq!(ring.nvars, 1);
        let mut p = Self::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![shift + k as i64], BigRational::from_integer(c.clone()));
        }
        p
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let coeffs = self.ring.coeffs;
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = reduce_coeff(coeffs, coeff);
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let c = reduce_coeff(coeffs, o.get() + coeff);
                if c.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing_term(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// True for `c * t^m` with `c` a unit of the coefficient ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
            && coeff_inverse(self.ring.coeffs, self.terms.values().next().unwrap()).is_some()
    }

    /// Componentwise minimum exponent, `None` for zero.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    pub fn max_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()))
    }

    /// Largest total degree among the terms.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), reduce_coeff(self.ring.coeffs, -c))).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let mut out = Self::zero(self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.ring);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &[i64]) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The ring involution `t_i -> t_i^{-1}`.
    pub fn involute(&self) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone())).collect(),
        }
    }

    /// Multiplies by the unique monomial making every variable's minimum
    /// exponent zero; returns the product and the monomial used.
    pub fn normalize_min_degree(&self) -> Result<(Self, Monomial)> {
        let min = self.min_exponents().ok_or(Error::ZeroInput("normalize_min_degree"))?;
        let m = Monomial(min.iter().map(|x| -x).collect());
        Ok((self.mul_monomial(&m.0), m))
    }

    /// Content (positive gcd of the coefficients) and primitive part, over Z.
    pub fn content_and_primitive(&self) -> Result<(BigInt, Self)> {
        if self.ring.coeffs != CoeffRing::Integers {
            return Err(Error::InvalidRing(format!("content requires Z coefficients, got {}", self.ring.coeffs)));
        }
        if self.is_zero() {
            return Err(Error::ZeroInput("content_and_primitive"));
        }
        let content = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let prim = LaurentPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), BigRational::from_integer(c.numer() / &content)))
                .collect(),
        };
        Ok((content, prim))
    }

    /// Ring map `t_i -> t^{alpha_i}` into the one-variable ring.
    pub fn specialize(&self, alpha: &[i64]) -> Result<Self> {
        if alpha.len() != self.ring.nvars {
            return Err(Error::RhoLength { expected: self.ring.nvars, got: alpha.len() });
        }
        let mut out = Self::zero(self.ring.with_nvars(1));
        for (e, c) in &self.terms {
            let d: i64 = e.iter().zip(alpha).map(|(a, b)| a * b).sum();
            out.add_term(vec![d], c.clone());
        }
        Ok(out)
    }

    /// Coefficientwise map into another coefficient ring (Z -> anything, or identity).
    pub fn base_change(&self, target: CoeffRing) -> Result<Self> {
        match (self.ring.coeffs, target) {
            (a, b) if a == b => return Ok(self.clone()),
            (CoeffRing::Integers, _) => {}
            (CoeffRing::Rationals, CoeffRing::PrimeField(p)) => {
                let pb = BigInt::from(p);
                if self.terms.values().any(|c| c.denom().is_multiple_of(&pb)) {
                    return Err(Error::InvalidRing(format!("denominator divisible by {p}")));
                }
            }
            (a, b) => return Err(Error::InvalidRing(format!("no coefficient map {a} -> {b}"))),
        }
        let mut out = Self::zero(self.ring.with_coeffs(target));
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Scales so that the leading coefficient is normalized: positive over Z,
    /// one over a field. Does not touch the monomial part.
    pub fn normalize_leading(&self) -> Self {
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        match self.ring.coeffs {
            CoeffRing::Integers => {
                if lc.is_negative() {
                    self.neg()
                } else {
                    self.clone()
                }
            }
            ring => self.scale(&coeff_inverse(ring, lc).unwrap()),
        }
    }

    /// Normal form up to units: min-degree normalized with normalized leading coefficient.
    pub fn unit_normal(&self) -> Self {
        match self.normalize_min_degree() {
            Ok((p, _)) => p.normalize_leading(),
            Err(_) => self.clone(),
        }
    }

    /// For one variable: `(shift, dense coefficients)` with `self = t^shift * sum c_k t^k`.
    pub fn to_dense(&self) -> Result<(i64, Vec<BigRational>)> {
        if self.ring.nvars != 1 {
            return Err(Error::NotUnivariate(self.ring.nvars));
        }
        let Some(lo) = self.terms.keys().next().map(|e| e[0]) else {
            return Ok((0, Vec::new()));
        };
        let hi = self.terms.keys().next_back().unwrap()[0];
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e[0] - lo) as usize] = c.clone();
        }
        Ok((lo, v))
    }

    /// Lowest and highest exponent of a one-variable polynomial.
    pub fn degree_span(&self) -> Option<(i64, i64)> {
        if self.ring.nvars != 1 {
            return None;
        }
        let lo = self.terms.keys().next()?[0];
        let hi = self.terms.keys().next_back()?[0];
        Some((lo, hi))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::poly_text::format_poly(self))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({} over {})", self, self.ring)
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics if the rings differ; use the `try_` variant to get an error instead.
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).expect("ring mismatch in Laurent polynomial arithmetic")
            }
        }
        impl std::ops::$tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}
