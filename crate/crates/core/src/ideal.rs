//! Finitely generated ideals of Laurent rings, and decision procedures for
//! ideals of `Z[t, t^-1]` via strong Gröbner bases of their contraction to `Z[t]`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ring::{CoeffRing, RingSpec};
use crate::zpoly::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGenerators {
    ring: RingSpec,
    gens: Vec<LaurentPoly>,
}

impl Serialize for IdealGenerators {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.gens.serialize(s)
    }
}

/// Sort key: total degree, then term lists from the top, larger monomials first.
fn generator_order(a: &LaurentPoly, b: &LaurentPoly) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        let ta: Vec<_> = a.terms().rev().collect();
        let tb: Vec<_> = b.terms().rev().collect();
        tb.cmp(&ta)
    })
}

impl IdealGenerators {
    pub fn new(ring: RingSpec, gens: Vec<LaurentPoly>) -> Result<Self> {
        for g in &gens {
            ring.check_same(&g.ring())?;
        }
        Ok(IdealGenerators { ring, gens })
    }

    pub fn zero(ring: RingSpec) -> Self {
        IdealGenerators { ring, gens: Vec::new() }
    }

    pub fn unit(ring: RingSpec) -> Self {
        IdealGenerators { ring, gens: vec![LaurentPoly::one(ring)] }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn gens(&self) -> &[LaurentPoly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// True if every generator is zero.
    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    /// Canonical generating set: zeros pruned, each generator min-degree
    /// normalized with normalized leading coefficient, duplicates removed,
    /// sorted by degree then coefficients. A unit generator collapses the set to `{1}`.
    pub fn canonical(&self) -> Self {
        let mut gens: Vec<LaurentPoly> = self.gens.iter().filter(|g| !g.is_zero()).map(|g| g.unit_normal()).collect();
        if gens.iter().any(|g| g.is_unit()) {
            return Self::unit(self.ring);
        }
        gens.sort_by(generator_order);
        gens.dedup();
        IdealGenerators { ring: self.ring, gens }
    }

    /// Product ideal, generated by pairwise products.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ok(IdealGenerators { ring: self.ring, gens }.canonical())
    }

    pub fn involute(&self) -> Self {
        IdealGenerators { ring: self.ring, gens: self.gens.iter().map(|g| g.involute()).collect() }
    }

    pub fn specialize(&self, alpha: &[i64]) -> Result<Self> {
        let gens = self.gens.iter().map(|g| g.specialize(alpha)).collect::<Result<Vec<_>>>()?;
        Ok(IdealGenerators { ring: self.ring.with_nvars(1), gens })
    }

    pub fn base_change(&self, target: CoeffRing) -> Result<Self> {
        let gens = self.gens.iter().map(|g| g.base_change(target)).collect::<Result<Vec<_>>>()?;
        Ok(IdealGenerators { ring: self.ring.with_coeffs(target), gens })
    }

    fn require_zt(&self) -> Result<()> {
        if self.ring.coeffs != CoeffRing::Integers {
            return Err(Error::InvalidRing(format!("expected Z coefficients, got {}", self.ring.coeffs)));
        }
        if self.ring.nvars != 1 {
            return Err(Error::NotUnivariate(self.ring.nvars));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Strong Gröbner bases in Z[t]

fn lt_divides(g: &ZPoly, f: &ZPoly) -> bool {
    g.degree() <= f.degree() && f.lc().unwrap().is_multiple_of(g.lc().unwrap())
}

/// Top-reduces `f` until its leading term is not divisible by any basis leading term.
fn top_reduce(mut f: ZPoly, basis: &[ZPoly]) -> ZPoly {
    'outer: while !f.is_zero() {
        for g in basis {
            if lt_divides(g, &f) {
                let q = f.lc().unwrap() / g.lc().unwrap();
                let k = f.degree().unwrap() - g.degree().unwrap();
                f = f.sub(&g.scale(&q).shift(k));
                continue 'outer;
            }
        }
        break;
    }
    f
}

fn normalize_lc(p: ZPoly) -> ZPoly {
    if p.lc().is_some_and(|c| c.is_negative()) {
        p.neg()
    } else {
        p
    }
}

/// Top reduction followed by reduction of every lower coefficient into
/// `[0, c)`, `c` the smallest leading coefficient available in that degree.
fn full_reduce(f: ZPoly, basis: &[&ZPoly]) -> ZPoly {
    let owned: Vec<ZPoly> = basis.iter().map(|g| (*g).clone()).collect();
    let mut f = top_reduce(f, &owned);
    let Some(d) = f.degree() else { return f };
    for k in (0..d).rev() {
        let h = basis.iter().filter(|h| h.degree().unwrap() <= k).min_by(|x, y| x.lc().unwrap().abs().cmp(&y.lc().unwrap().abs()));
        if let Some(h) = h {
            let q = f.coeff(k).div_floor(h.lc().unwrap());
            if !q.is_zero() {
                f = f.sub(&h.scale(&q).shift(k - h.degree().unwrap()));
            }
        }
    }
    f
}

/// Buchberger's algorithm over the Euclidean ring Z with S- and G-polynomials,
/// smallest pairs first. Elements whose leading term becomes divisible by a
/// new leading term are taken out and reduced again.
fn buchberger(gens: Vec<ZPoly>) -> Vec<ZPoly> {
    let mut slots: Vec<Option<ZPoly>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut todo: Vec<ZPoly> = gens;
    loop {
        while let Some(f) = todo.pop() {
            let live: Vec<&ZPoly> = slots.iter().flatten().collect();
            let r = full_reduce(f, &live);
            if r.is_zero() {
                continue;
            }
            let r = normalize_lc(r);
            for k in 0..slots.len() {
                if slots[k].as_ref().is_some_and(|h| lt_divides(&r, h)) {
                    todo.push(slots[k].take().unwrap());
                }
            }
            let n = slots.len();
            pairs.extend((0..n).filter(|&k| slots[k].is_some()).map(|k| (k, n)));
            slots.push(Some(r));
        }
        pairs.retain(|&(i, j)| slots[i].is_some() && slots[j].is_some());
        let Some(pos) = (0..pairs.len()).min_by_key(|&p| {
            let (i, j) = pairs[p];
            (slots[i].as_ref().unwrap().degree().max(slots[j].as_ref().unwrap().degree()), i, j)
        }) else {
            break;
        };
        let (i, j) = pairs.swap_remove(pos);
        let (f, g) = (slots[i].as_ref().unwrap(), slots[j].as_ref().unwrap());
        let (a, b) = (f.lc().unwrap().clone(), g.lc().unwrap().clone());
        let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
        let m = df.max(dg);
        let (fs, gs) = (f.shift(m - df), g.shift(m - dg));
        let l = a.lcm(&b);
        todo.push(fs.scale(&(&l / &a)).sub(&gs.scale(&(&l / &b))));
        if !a.is_multiple_of(&b) && !b.is_multiple_of(&a) {
            let e = a.extended_gcd(&b);
            todo.push(fs.scale(&e.x).add(&gs.scale(&e.y)));
        }
    }
    slots.into_iter().flatten().collect()
}

/// Basis of the integer kernel `{c : sum c_j v_j = 0}` by unimodular column operations.
fn integer_kernel(v: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = v.len();
    let mut w = v.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    // u[col] is a column vector; w[col] = v . u[col]
    for j in 1..n {
        if w[j].is_zero() {
            continue;
        }
        if w[0].is_zero() {
            u.swap(0, j);
            w.swap(0, j);
            continue;
        }
        let e = w[0].extended_gcd(&w[j]);
        let (a, b) = (&w[0] / &e.gcd, &w[j] / &e.gcd);
        let c0: Vec<BigInt> = u[0].iter().zip(&u[j]).map(|(x, y)| &e.x * x + &e.y * y).collect();
        let cj: Vec<BigInt> = u[0].iter().zip(&u[j]).map(|(x, y)| &b * x - &a * y).collect();
        u[0] = c0;
        u[j] = cj;
        w[0] = e.gcd.clone();
        w[j] = BigInt::zero();
    }
    if w[0].is_zero() {
        u
    } else {
        u.into_iter().skip(1).collect()
    }
}

/// Fully reduces tails so the minimal strong basis becomes canonical: each
/// coefficient below the leading term is reduced into `[0, c)` where `c` is
/// the smallest leading coefficient available in that degree.
fn interreduce(basis: Vec<ZPoly>) -> Vec<ZPoly> {
    let mut b: Vec<ZPoly> = basis.into_iter().filter(|p| !p.is_zero()).map(normalize_lc).collect();
    b.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| y.lc().cmp(&x.lc())));
    let mut minimal: Vec<ZPoly> = Vec::new();
    for (i, g) in b.iter().enumerate() {
        let redundant = b.iter().enumerate().any(|(j, h)| {
            j != i && lt_divides(h, g) && !(lt_divides(g, h) && j > i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by_key(|g| g.degree());
    let snapshot = minimal.clone();
    for g in minimal.iter_mut() {
        let d = g.degree().unwrap();
        for k in (0..d).rev() {
            let Some(h) = snapshot.iter().rev().find(|h| h.degree().unwrap() <= k) else { break };
            let c = g.coeff(k);
            let q = c.div_floor(h.lc().unwrap());
            if !q.is_zero() {
                *g = g.sub(&h.scale(&q).shift(k - h.degree().unwrap()));
            }
        }
    }
    minimal
}

/// Reduced strong Gröbner basis of `J : t^∞` in `Z[t]`, where `J` is
/// generated by `gens`. This is the contraction of the Laurent ideal.
fn saturated_basis(gens: Vec<ZPoly>) -> Vec<ZPoly> {
    let mut gens: Vec<ZPoly> = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.strip_t()).collect();
    loop {
        let basis = buchberger(gens.clone());
        if basis.is_empty() {
            return basis;
        }
        // J ∩ tZ[t] = t J + {integer combinations with vanishing constant term}
        let constants: Vec<BigInt> = basis.iter().map(|g| g.coeff(0)).collect();
        let mut added = false;
        for c in integer_kernel(&constants) {
            let combo = basis.iter().zip(&c).fold(ZPoly::zero(), |acc, (g, ci)| acc.add(&g.scale(ci)));
            if combo.is_zero() {
                continue;
            }
            let stripped = combo.strip_t();
            let r = top_reduce(stripped.clone(), &basis);
            if !r.is_zero() {
                gens.push(stripped);
                added = true;
            }
        }
        if !added {
            return interreduce(basis);
        }
        gens = basis.into_iter().chain(gens).collect();
        gens.sort_by_key(|a| a.degree());
        gens.dedup();
    }
}

fn to_zpolys(ideal: &IdealGenerators) -> Vec<ZPoly> {
    ideal
        .gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ZPoly::from_laurent(g).expect("Z coefficients").1.strip_t())
        .collect()
}

fn from_zpolys(basis: &[ZPoly]) -> IdealGenerators {
    IdealGenerators { ring: RingSpec::integers(1), gens: basis.iter().map(|g| g.to_laurent(0)).collect() }
}

/// Reduced strong Gröbner basis of the contraction of the Laurent ideal to
/// `Z[t]`: every generator is min-degree normalized, the ideal is saturated
/// with respect to `t`, and the basis is minimal with reduced tails.
pub fn strong_groebner(ideal: &IdealGenerators) -> Result<IdealGenerators> {
    ideal.require_zt()?;
    Ok(from_zpolys(&saturated_basis(to_zpolys(ideal))))
}

/// Membership by reduction to zero against the strong basis.
pub fn ideal_member(f: &LaurentPoly, ideal: &IdealGenerators) -> Result<bool> {
    ideal.require_zt()?;
    ideal.ring.check_same(&f.ring())?;
    if f.is_zero() {
        return Ok(true);
    }
    let basis = saturated_basis(to_zpolys(ideal));
    Ok(member_of_basis(f, &basis))
}

fn member_of_basis(f: &LaurentPoly, basis: &[ZPoly]) -> bool {
    let (_, z) = ZPoly::from_laurent(f).expect("Z coefficients");
    top_reduce(z.strip_t(), basis).is_zero()
}

/// Mutual containment of two ideals of `Z[t, t^-1]`.
pub fn ideals_equal(a: &IdealGenerators, b: &IdealGenerators) -> Result<bool> {
    a.require_zt()?;
    b.require_zt()?;
    let (ga, gb) = (saturated_basis(to_zpolys(a)), saturated_basis(to_zpolys(b)));
    Ok(a.gens.iter().all(|f| f.is_zero() || member_of_basis(f, &gb))
        && b.gens.iter().all(|f| f.is_zero() || member_of_basis(f, &ga)))
}

/// Outcome of the unit-ends analysis, with witnesses.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitEnds {
    pub basis: IdealGenerators,
    pub involuted_basis: IdealGenerators,
    /// Element with leading coefficient ±1, if one exists.
    pub unit_leading: Option<LaurentPoly>,
    /// Element with trailing coefficient ±1, if one exists.
    pub unit_trailing: Option<LaurentPoly>,
    /// Element with both end coefficients ±1.
    pub witness: Option<LaurentPoly>,
}

impl UnitEnds {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
    }

    /// Leading coefficients of the strong basis, the certificate when no unit-leading element exists.
    pub fn leading_coefficients(&self) -> Vec<BigRational> {
        self.basis.gens.iter().map(|g| g.leading_term().unwrap().1.clone()).collect()
    }

    pub fn trailing_coefficients(&self) -> Vec<BigRational> {
        self.involuted_basis.gens.iter().map(|g| g.leading_term().unwrap().1.clone()).collect()
    }
}

/// Searches for an element of the Laurent ideal whose leading and trailing coefficients are ±1.
pub fn unit_ends_analysis(ideal: &IdealGenerators) -> Result<UnitEnds> {
    ideal.require_zt()?;
    let basis = saturated_basis(to_zpolys(ideal));
    let inv_basis = saturated_basis(to_zpolys(&ideal.involute()));
    let unit_lc = |b: &[ZPoly]| b.iter().find(|g| g.lc().unwrap().abs().is_one()).cloned();
    let leading = unit_lc(&basis).map(|g| g.to_laurent(0));
    let trailing = unit_lc(&inv_basis).map(|g| g.to_laurent(0).involute().unit_normal());
    let witness = match (&leading, &trailing) {
        (Some(f1), Some(f2)) => {
            let (lo1, _) = f1.degree_span().unwrap();
            let (_, hi2) = f2.degree_span().unwrap();
            let a = hi2 - lo1 + 1;
            Some(&f1.mul_monomial(&[a]) + f2)
        }
        _ => None,
    };
    Ok(UnitEnds {
        basis: from_zpolys(&basis),
        involuted_basis: from_zpolys(&inv_basis),
        unit_leading: leading,
        unit_trailing: trailing,
        witness,
    })
}

pub fn contains_unit_ends_element(ideal: &IdealGenerators) -> Result<bool> {
    Ok(unit_ends_analysis(ideal)?.holds())
}

/// Decides whether `Z[t, t^-1] / I` is a finitely generated abelian group.
pub fn quotient_fg_over_z(ideal: &IdealGenerators) -> Result<bool> {
    ideal.require_zt()?;
    if ideal.is_zero() {
        return Err(Error::RankInfinite);
    }
    contains_unit_ends_element(ideal)
}

/// Gcd of all coefficients of all generators.
pub fn content_gcd_of_set(ideal: &IdealGenerators) -> Result<BigInt> {
    if ideal.ring.coeffs != CoeffRing::Integers {
        return Err(Error::InvalidRing(format!("expected Z coefficients, got {}", ideal.ring.coeffs)));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroInput("content_gcd_of_set"));
    }
    Ok(ideal.gens.iter().flat_map(|g| g.terms().map(|(_, c)| c.numer().clone())).fold(BigInt::zero(), |a, c| a.gcd(&c)))
}
