//! Bounded free chain complexes over Laurent rings.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;
use crate::ring::{CoeffRing, RingSpec};

/// Homomorphism `Z^r -> Z` given by `e_i -> alpha_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct RhoSpec {
    pub alpha: Vec<i64>,
}

impl RhoSpec {
    pub fn new(alpha: Vec<i64>) -> Result<Self> {
        if alpha.iter().all(|&a| a == 0) {
            return Err(Error::ZeroRho);
        }
        Ok(RhoSpec { alpha })
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn gcd(&self) -> i64 {
        self.alpha.iter().fold(0i64, |g, &a| g.gcd(&a))
    }

    /// Warning text when rho is not onto Z.
    pub fn warning(&self) -> Option<String> {
        let g = self.gcd();
        (g != 1).then(|| format!("gcd of rho entries is {g}; rho is not onto Z"))
    }

    pub fn check_len(&self, r: usize) -> Result<()> {
        if self.alpha.len() != r {
            return Err(Error::RhoLength { expected: r, got: self.alpha.len() });
        }
        Ok(())
    }
}

/// `F_hi -> ... -> F_lo`, with `boundary(i): F_i -> F_{i-1}` of shape `ranks[i-1] x ranks[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeComplex {
    ring: RingSpec,
    lo: i64,
    hi: i64,
    ranks: Vec<usize>,
    /// `boundaries[k]` is the boundary out of degree `lo + 1 + k`.
    boundaries: Vec<PolyMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// `d_{degree} o d_{degree+1}` is nonzero.
    pub degree: i64,
    /// 1-based position in the composite.
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violation: Option<Violation>,
}

impl FreeComplex {
    /// Missing boundaries are zero. Shapes and rings are checked here; `validate` checks `dd = 0`.
    pub fn new(ring: RingSpec, lo: i64, hi: i64, ranks: Vec<usize>, mut boundaries: BTreeMap<i64, PolyMatrix>) -> Result<Self> {
        if hi < lo {
            return Err(Error::Shape(format!("empty degree range [{lo}, {hi}]")));
        }
        if ranks.len() as i64 != hi - lo + 1 {
            return Err(Error::Shape(format!("{} ranks for degree range [{lo}, {hi}]", ranks.len())));
        }
        if let Some(&d) = boundaries.keys().find(|&&d| d <= lo || d > hi) {
            return Err(Error::DegreeOutOfRange { degree: d, lo: lo + 1, hi });
        }
        let mut mats = Vec::new();
        for i in lo + 1..=hi {
            let (r, c) = (ranks[(i - 1 - lo) as usize], ranks[(i - lo) as usize]);
            let m = boundaries.remove(&i).unwrap_or_else(|| PolyMatrix::zeros(ring, r, c));
            ring.check_same(&m.ring())?;
            if m.shape() != (r, c) {
                return Err(Error::Shape(format!(
                    "boundary {i} is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )));
            }
            mats.push(m);
        }
        Ok(FreeComplex { ring, lo, hi, ranks, boundaries: mats })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank in degree `i`, zero outside the range.
    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// Boundary out of degree `i`; the zero map of the right shape at the ends and beyond.
    pub fn boundary(&self, i: i64) -> PolyMatrix {
        if i > self.lo && i <= self.hi {
            self.boundaries[(i - self.lo - 1) as usize].clone()
        } else {
            PolyMatrix::zeros(self.ring, self.rank(i - 1), self.rank(i))
        }
    }

    pub fn boundary_ref(&self, i: i64) -> Option<&PolyMatrix> {
        (i > self.lo && i <= self.hi).then(|| &self.boundaries[(i - self.lo - 1) as usize])
    }

    /// Nonzero boundaries keyed by degree.
    pub fn boundary_map(&self) -> BTreeMap<i64, PolyMatrix> {
        (self.lo + 1..=self.hi).map(|i| (i, self.boundary(i))).collect()
    }

    pub fn check_degree(&self, i: i64) -> Result<()> {
        if i < self.lo || i > self.hi {
            return Err(Error::DegreeOutOfRange { degree: i, lo: self.lo, hi: self.hi });
        }
        Ok(())
    }

    pub fn validate(&self) -> ValidationReport {
        for i in self.lo + 1..self.hi {
            let prod = self.boundary(i).mul(&self.boundary(i + 1)).expect("shapes checked on construction");
            for r in 0..prod.rows() {
                for c in 0..prod.cols() {
                    let v = prod.get(r, c);
                    if !v.is_zero() {
                        return ValidationReport {
                            ok: false,
                            violation: Some(Violation { degree: i, row: r + 1, col: c + 1, value: v.to_string() }),
                        };
                    }
                }
            }
        }
        ValidationReport { ok: true, violation: None }
    }

    fn map_boundaries<F>(&self, ring: RingSpec, f: F) -> Result<Self>
    where
        F: Fn(&PolyMatrix) -> Result<PolyMatrix>,
    {
        let boundaries = self.boundaries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(FreeComplex { ring, lo: self.lo, hi: self.hi, ranks: self.ranks.clone(), boundaries })
    }

    pub fn base_change(&self, target: CoeffRing) -> Result<Self> {
        self.map_boundaries(self.ring.with_coeffs(target), |m| m.base_change(target))
    }

    pub fn specialize(&self, rho: &RhoSpec) -> Result<Self> {
        rho.check_len(self.ring.nvars)?;
        self.map_boundaries(self.ring.with_nvars(1), |m| m.specialize(&rho.alpha))
    }

    /// Dual complex re-indexed as a chain complex on the same degree range:
    /// degree `j` holds `F_{lo+hi-j}` and the boundary out of degree `j` is
    /// the involuted transpose of `d_{lo+hi-j+1}`.
    pub fn dualize(&self) -> Self {
        let (lo, hi) = (self.lo, self.hi);
        let ranks = self.ranks.iter().rev().copied().collect();
        let boundaries = (lo + 1..=hi).map(|j| self.boundary(lo + hi - j + 1).transpose().involute()).collect();
        FreeComplex { ring: self.ring, lo, hi, ranks, boundaries }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|i| if i.rem_euclid(2) == 0 { self.rank(i) as i64 } else { -(self.rank(i) as i64) }).sum()
    }

    /// Degreewise direct sum; degree ranges are merged.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let (lo, hi) = (self.lo.min(other.lo), self.hi.max(other.hi));
        let ranks = (lo..=hi).map(|i| self.rank(i) + other.rank(i)).collect();
        let mut bd = BTreeMap::new();
        for i in lo + 1..=hi {
            bd.insert(i, self.boundary(i).direct_sum(&other.boundary(i))?);
        }
        FreeComplex::new(self.ring, lo, hi, ranks, bd)
    }

    /// Replaces each boundary `d_i` by `P_{i-1}^{-1} d_i P_i` for invertible
    /// change-of-basis matrices `P_i` given with their inverses.
    pub fn change_basis(&self, bases: &BTreeMap<i64, (PolyMatrix, PolyMatrix)>) -> Result<Self> {
        let mut bd = BTreeMap::new();
        for i in self.lo + 1..=self.hi {
            let mut m = self.boundary(i);
            if let Some((p, _)) = bases.get(&i) {
                m = m.mul(p)?;
            }
            if let Some((_, pinv)) = bases.get(&(i - 1)) {
                m = pinv.mul(&m)?;
            }
            bd.insert(i, m);
        }
        FreeComplex::new(self.ring, self.lo, self.hi, self.ranks.clone(), bd)
    }

    /// All boundary entries.
    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.boundaries.iter().flat_map(|m| m.entries().iter())
    }
}
