//! Seeded random validated complexes: direct sums of free, cone and Koszul
//! pieces, conjugated by random elementary changes of basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::complex::FreeComplex;
use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;
use crate::ring::RingSpec;

#[derive(Debug, Clone, Copy)]
pub struct RandomSpec {
    pub ring: RingSpec,
    pub lo: i64,
    pub hi: i64,
    pub max_rank: usize,
    pub max_terms: usize,
    pub exp_bound: i64,
    pub coeff_bound: i64,
    /// Elementary operations per degree in the change of basis.
    pub mix: usize,
}

impl RandomSpec {
    pub fn new(ring: RingSpec) -> Self {
        RandomSpec { ring, lo: 0, hi: 2, max_rank: 3, max_terms: 2, exp_bound: 1, coeff_bound: 2, mix: 2 }
    }
}

fn random_coeff<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-bound..=bound);
    }
    BigRational::from_integer(BigInt::from(c))
}

fn random_exponent<R: Rng>(rng: &mut R, nvars: usize, bound: i64) -> Vec<i64> {
    (0..nvars).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// At most `max_terms` terms, exponents in `[-exp_bound, exp_bound]`, nonzero
/// integer coefficients in `[-coeff_bound, coeff_bound]` (before reduction).
pub fn random_poly<R: Rng>(rng: &mut R, ring: RingSpec, max_terms: usize, exp_bound: i64, coeff_bound: i64) -> LaurentPoly {
    let n = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<_> = (0..n).map(|_| (random_exponent(rng, ring.nvars, exp_bound), random_coeff(rng, coeff_bound))).collect();
    LaurentPoly::from_terms(ring, terms).expect("integer coefficients")
}

pub fn random_matrix<R: Rng>(rng: &mut R, ring: RingSpec, rows: usize, cols: usize, max_terms: usize, exp_bound: i64, coeff_bound: i64) -> PolyMatrix {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| random_poly(rng, ring, max_terms, exp_bound, coeff_bound)).collect())
        .collect();
    PolyMatrix::from_rows(ring, entries, cols).expect("shape")
}

/// A random invertible matrix with its inverse: unit monomial scalings and
/// elementary row additions by monomials.
pub fn random_unimodular<R: Rng>(rng: &mut R, ring: RingSpec, n: usize, ops: usize, exp_bound: i64) -> (PolyMatrix, PolyMatrix) {
    let mut p = PolyMatrix::identity(ring, n);
    let mut pinv = PolyMatrix::identity(ring, n);
    if n == 0 {
        return (p, pinv);
    }
    for _ in 0..ops {
        let j = rng.gen_range(0..n);
        let k = rng.gen_range(0..n);
        let mut e = PolyMatrix::identity(ring, n);
        let mut einv = PolyMatrix::identity(ring, n);
        let exp = random_exponent(rng, ring.nvars, exp_bound);
        if j == k {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let u = LaurentPoly::monomial(ring, exp, BigRational::from_integer(sign.into()));
            einv.set(j, j, u.inverse_unit());
            e.set(j, j, u);
        } else {
            let x = LaurentPoly::monomial(ring, exp, random_coeff(rng, 1));
            einv.set(j, k, x.neg());
            e.set(j, k, x);
        }
        p = p.mul(&e).expect("square");
        pinv = einv.mul(&pinv).expect("square");
    }
    (p, pinv)
}

impl LaurentPoly {
    /// Inverse of a signed monomial.
    fn inverse_unit(&self) -> LaurentPoly {
        let (e, c) = self.leading_term().expect("nonzero");
        let inv: Vec<i64> = e.iter().map(|x| -x).collect();
        LaurentPoly::monomial(self.ring(), inv, c.recip())
    }
}

fn piece(ring: RingSpec, lo: i64, ranks: Vec<usize>, bd: BTreeMap<i64, PolyMatrix>) -> Result<FreeComplex> {
    let hi = lo + ranks.len() as i64 - 1;
    FreeComplex::new(ring, lo, hi, ranks, bd)
}

/// A random complex satisfying `dd = 0` by construction, with every rank at most `max_rank`.
pub fn random_complex<R: Rng>(rng: &mut R, spec: &RandomSpec) -> Result<FreeComplex> {
    let ring = spec.ring;
    let len = (spec.hi - spec.lo + 1) as usize;
    let mut c = FreeComplex::new(ring, spec.lo, spec.hi, vec![0; len], BTreeMap::new())?;
    let poly = |rng: &mut R| random_poly(rng, ring, spec.max_terms, spec.exp_bound, spec.coeff_bound);
    let attempts = rng.gen_range(1..=2 * len + 1);
    for _ in 0..attempts {
        let top = rng.gen_range(spec.lo..=spec.hi);
        let kind = rng.gen_range(0..3);
        let p = match kind {
            1 if top > spec.lo => {
                let f = poly(rng);
                piece(ring, top - 1, vec![1, 1], BTreeMap::from([(top, PolyMatrix::from_rows(ring, vec![vec![f]], 1)?)]))?
            }
            2 if top > spec.lo + 1 => {
                let (a, b) = (poly(rng), poly(rng));
                let d1 = PolyMatrix::from_rows(ring, vec![vec![a.clone(), b.clone()]], 2)?;
                let d2 = PolyMatrix::from_rows(ring, vec![vec![b.neg()], vec![a]], 1)?;
                piece(ring, top - 2, vec![1, 2, 1], BTreeMap::from([(top - 1, d1), (top, d2)]))?
            }
            _ => piece(ring, top, vec![1], BTreeMap::new())?,
        };
        if p.degrees().any(|i| c.rank(i) + p.rank(i) > spec.max_rank) {
            continue;
        }
        c = c.direct_sum(&p)?;
    }
    let bases = c
        .degrees()
        .map(|i| (i, random_unimodular(rng, ring, c.rank(i), spec.mix, spec.exp_bound)))
        .collect::<BTreeMap<_, _>>();
    c.change_basis(&bases)
}
