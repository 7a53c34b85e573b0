//! Determinantal jumping ideals and their zero loci at characters.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::field::{ExtField, Field, Rationals};
use crate::ideal::IdealGenerators;
use crate::laurent::LaurentPoly;
use crate::linalg;
use crate::matrix::{determinantal_ideal, PolyMatrix};
use crate::ring::CoeffRing;

/// `J_i = I_{rank F_i}(d_{i+1} ⊕ d_i)`, generated by products of an
/// `a`-minor of `d_{i+1}` and a `b`-minor of `d_i` with `a + b = rank F_i`.
pub fn jumping_ideal(c: &FreeComplex, i: i64) -> Result<IdealGenerators> {
    c.check_degree(i)?;
    let n = c.rank(i);
    let (up, down) = (c.boundary(i + 1), c.boundary(i));
    let mut gens = Vec::new();
    for a in 0..=n {
        let ia = determinantal_ideal(&up, a);
        if ia.is_empty() {
            continue;
        }
        let ib = determinantal_ideal(&down, n - a);
        gens.extend(ia.product(&ib)?.gens().iter().cloned());
    }
    Ok(IdealGenerators::new(c.ring(), gens)?.canonical())
}

/// Same ideal from the literal block-diagonal matrix; exponential, for cross-checks.
pub fn jumping_ideal_block(c: &FreeComplex, i: i64) -> Result<IdealGenerators> {
    c.check_degree(i)?;
    let block = c.boundary(i + 1).direct_sum(&c.boundary(i))?;
    Ok(determinantal_ideal(&block, c.rank(i)))
}

/// A point of the character torus `(K^*)^r` for `K = Q` or `F_{p^e}`.
#[derive(Clone, PartialEq)]
pub enum CharacterPoint {
    Rational(Vec<BigRational>),
    /// Values encoded as in [`ExtField`].
    Finite { field: Arc<ExtField>, values: Vec<u32> },
}

impl fmt::Debug for CharacterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CharacterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterPoint::Rational(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "Q({})", s.join(", "))
            }
            CharacterPoint::Finite { field, values } => {
                let s: Vec<String> = values.iter().map(|x| x.to_string()).collect();
                write!(f, "F_{}({})", field.order(), s.join(", "))
            }
        }
    }
}

impl Serialize for CharacterPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CharacterPoint", 2)?;
        match self {
            CharacterPoint::Rational(v) => {
                st.serialize_field("field", "Q")?;
                st.serialize_field("values", &v.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
            }
            CharacterPoint::Finite { field, values } => {
                st.serialize_field("field", &format!("F_{}^{}", field.prime(), field.degree()))?;
                st.serialize_field("values", values)?;
            }
        }
        st.end()
    }
}

impl CharacterPoint {
    pub fn rational(values: Vec<BigRational>) -> Result<Self> {
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::Usage("character values must be nonzero".into()));
        }
        Ok(CharacterPoint::Rational(values))
    }

    pub fn finite(field: Arc<ExtField>, values: Vec<u32>) -> Result<Self> {
        if values.iter().any(|&v| v == 0 || v as u64 >= field.order()) {
            return Err(Error::Usage(format!("character values must be nonzero elements of F_{}", field.order())));
        }
        Ok(CharacterPoint::Finite { field, values })
    }

    pub fn len(&self) -> usize {
        match self {
            CharacterPoint::Rational(v) => v.len(),
            CharacterPoint::Finite { values, .. } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CharacterPoint::Rational(_) => 0,
            CharacterPoint::Finite { field, .. } => field.prime(),
        }
    }

    fn check(&self, coeffs: CoeffRing, nvars: usize) -> Result<()> {
        if self.len() != nvars {
            return Err(Error::Shape(format!("character has {} coordinates, ring has {nvars} variables", self.len())));
        }
        let ok = match coeffs {
            CoeffRing::Integers => true,
            CoeffRing::Rationals => self.characteristic() == 0,
            CoeffRing::PrimeField(p) => self.characteristic() == p,
        };
        if !ok {
            return Err(Error::CharacteristicMismatch { ring: coeffs.characteristic(), field: self.characteristic() });
        }
        Ok(())
    }
}

fn eval_in<F: Field>(field: &F, p: &LaurentPoly, values: &[F::Elem]) -> F::Elem {
    let mut acc = field.zero();
    for (e, c) in p.terms() {
        let mut t = field.from_rational(c).expect("coefficient maps into the field");
        for (v, &k) in values.iter().zip(e) {
            if k != 0 {
                t = field.mul(&t, &field.pow(v, k));
            }
        }
        acc = field.add(&acc, &t);
    }
    acc
}

fn eval_matrix_in<F: Field>(field: &F, m: &PolyMatrix, values: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|e| eval_in(field, e, values)).collect()).collect()
}

/// True iff every generator vanishes at `chi`.
pub fn evaluate_at_character(ideal: &IdealGenerators, chi: &CharacterPoint) -> Result<bool> {
    chi.check(ideal.ring().coeffs, ideal.ring().nvars)?;
    Ok(match chi {
        CharacterPoint::Rational(v) => ideal.gens().iter().all(|g| eval_in(&Rationals, g, v).is_zero()),
        CharacterPoint::Finite { field, values } => {
            let f = field.as_ref();
            ideal.gens().iter().all(|g| f.is_zero(&eval_in(f, g, values)))
        }
    })
}

/// `dim_K H_j(C ⊗ K_chi)` for every degree `j`.
pub fn homology_dims_at(c: &FreeComplex, chi: &CharacterPoint) -> Result<Vec<usize>> {
    chi.check(c.ring().coeffs, c.ring().nvars)?;
    let ranks: Vec<usize> = match chi {
        CharacterPoint::Rational(v) => {
            (c.lo()..=c.hi() + 1).map(|i| linalg::rank(&Rationals, eval_matrix_in(&Rationals, &c.boundary(i), v))).collect()
        }
        CharacterPoint::Finite { field, values } => {
            let f = field.as_ref();
            (c.lo()..=c.hi() + 1).map(|i| linalg::rank(f, eval_matrix_in(f, &c.boundary(i), values))).collect()
        }
    };
    Ok(c.degrees().enumerate().map(|(k, i)| c.rank(i) - ranks[k] - ranks[k + 1]).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpLocusEntry {
    pub character: CharacterPoint,
    pub in_locus: bool,
    pub homology_dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpLocusSample {
    pub degree: i64,
    pub entries: Vec<JumpLocusEntry>,
}

impl JumpLocusSample {
    pub fn in_locus_count(&self) -> usize {
        self.entries.iter().filter(|e| e.in_locus).count()
    }
}

/// Compares `J_i` membership with nonvanishing of `H_i(C ⊗ K_chi)` at each character.
pub fn crosscheck_bw(c: &FreeComplex, i: i64, sample: &[CharacterPoint]) -> Result<JumpLocusSample> {
    let rep = c.validate();
    if !rep.ok {
        return Err(Error::Inconsistent(format!("complex fails dd = 0: {:?}", rep.violation)));
    }
    let j = jumping_ideal(c, i)?;
    crosscheck_with_ideal(c, i, &j, sample)
}

/// As [`crosscheck_bw`] with a precomputed `J_i`.
pub fn crosscheck_with_ideal(c: &FreeComplex, i: i64, j: &IdealGenerators, sample: &[CharacterPoint]) -> Result<JumpLocusSample> {
    c.check_degree(i)?;
    let k = (i - c.lo()) as usize;
    let entries = sample
        .par_iter()
        .map(|chi| {
            let dims = homology_dims_at(c, chi)?;
            let in_locus = evaluate_at_character(j, chi)?;
            if in_locus != (dims[k] > 0) {
                return Err(Error::Inconsistent(format!(
                    "degree {i}, character {chi}: J_i membership {in_locus} but homology dimensions {dims:?}; J_i = {:?}",
                    j.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>()
                )));
            }
            Ok(JumpLocusEntry { character: chi.clone(), in_locus, homology_dims: dims })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JumpLocusSample { degree: i, entries })
}

/// Every point of `(F_q^*)^r`, in lexicographic discrete-log order.
pub fn all_characters(field: &Arc<ExtField>, r: usize) -> Vec<CharacterPoint> {
    let units: Vec<u32> = field.units().collect();
    let total = units.len().pow(r as u32);
    (0..total)
        .map(|mut code| {
            let mut v = vec![0u32; r];
            for slot in v.iter_mut().rev() {
                *slot = units[code % units.len()];
                code /= units.len();
            }
            CharacterPoint::Finite { field: field.clone(), values: v }
        })
        .collect()
}

/// `count` uniformly random points of `(F_q^*)^r`.
pub fn sample_characters<R: Rng>(rng: &mut R, field: &Arc<ExtField>, r: usize, count: usize) -> Vec<CharacterPoint> {
    let units: Vec<u32> = field.units().collect();
    (0..count)
        .map(|_| CharacterPoint::Finite {
            field: field.clone(),
            values: (0..r).map(|_| units[rng.gen_range(0..units.len())]).collect(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntersectionObservables {
    pub window: (i64, i64),
    /// Generators of the product of the `J_i` over the window (possibly truncated).
    pub product: IdealGenerators,
    pub factors: Vec<IdealGenerators>,
    /// Set when generators were dropped to respect the budget; the product is then a sub-ideal.
    pub truncated: bool,
    pub budget: usize,
}

/// Product of `J_a, ..., J_b`; it has the same radical as the intersection of the
/// radicals. At most `budget` generators are kept after each step, smallest degree first.
pub fn intersection_observables(c: &FreeComplex, window: (i64, i64), budget: usize) -> Result<IntersectionObservables> {
    let (a, b) = window;
    if a > b {
        return Err(Error::Usage(format!("empty window [{a}, {b}]")));
    }
    c.check_degree(a)?;
    c.check_degree(b)?;
    let factors = (a..=b).map(|i| jumping_ideal(c, i)).collect::<Result<Vec<_>>>()?;
    let mut product = IdealGenerators::unit(c.ring());
    let mut truncated = false;
    for f in &factors {
        product = product.product(f)?;
        if product.len() > budget {
            let mut g = product.gens().to_vec();
            g.truncate(budget);
            product = IdealGenerators::new(c.ring(), g)?;
            truncated = true;
        }
    }
    Ok(IntersectionObservables { window, product, factors, truncated, budget })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::poly_text::parse_poly;
    use crate::ring::RingSpec;

    fn p(s: &str, n: usize) -> LaurentPoly {
        parse_poly(s, RingSpec::integers(n)).unwrap()
    }

    fn m(rows: &[&[&str]], n: usize, cols: usize) -> PolyMatrix {
        PolyMatrix::from_rows(RingSpec::integers(n), rows.iter().map(|r| r.iter().map(|s| p(s, n)).collect()).collect(), cols).unwrap()
    }

    fn circle() -> FreeComplex {
        FreeComplex::new(RingSpec::integers(1), 0, 1, vec![1, 1], BTreeMap::from([(1, m(&[&["t - 1"]], 1, 1))])).unwrap()
    }

    fn torus() -> FreeComplex {
        let d2 = m(&[&["t2 - 1"], &["1 - t1"]], 2, 1);
        let d1 = m(&[&["t1 - 1", "t2 - 1"]], 2, 2);
        FreeComplex::new(RingSpec::integers(2), 0, 2, vec![1, 2, 1], BTreeMap::from([(1, d1), (2, d2)])).unwrap()
    }

    fn f(p: u64, e: u32) -> Arc<ExtField> {
        Arc::new(ExtField::new(p, e).unwrap())
    }

    #[test]
    fn circle_and_torus_ideals() {
        let c = circle();
        assert_eq!(jumping_ideal(&c, 0).unwrap().gens(), &[p("t - 1", 1)]);
        assert_eq!(jumping_ideal(&c, 1).unwrap().gens(), &[p("t - 1", 1)]);
        let t = torus();
        assert_eq!(jumping_ideal(&t, 0).unwrap().gens(), &[p("t1 - 1", 2), p("t2 - 1", 2)]);
        for i in 0..=2 {
            assert_eq!(jumping_ideal(&t, i).unwrap(), jumping_ideal_block(&t, i).unwrap());
        }
        assert!(matches!(jumping_ideal(&c, 2), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn evaluation_examples() {
        let f5 = f(5, 1);
        let i = IdealGenerators::new(RingSpec::integers(1), vec![p("t - 1", 1)]).unwrap();
        assert!(evaluate_at_character(&i, &CharacterPoint::finite(f5.clone(), vec![1]).unwrap()).unwrap());
        assert!(!evaluate_at_character(&i, &CharacterPoint::finite(f5.clone(), vec![2]).unwrap()).unwrap());
        let t = jumping_ideal(&torus(), 0).unwrap();
        for g in 2..5 {
            assert!(!evaluate_at_character(&t, &CharacterPoint::finite(f5.clone(), vec![1, g]).unwrap()).unwrap());
        }
        let fp = IdealGenerators::new(RingSpec::new(CoeffRing::PrimeField(3), 1).unwrap(), vec![]).unwrap();
        assert!(matches!(
            evaluate_at_character(&fp, &CharacterPoint::finite(f5, vec![1]).unwrap()),
            Err(Error::CharacteristicMismatch { ring: 3, field: 5 })
        ));
    }

    #[test]
    fn crosscheck_circle() {
        let f7 = f(7, 1);
        let pts = vec![CharacterPoint::finite(f7.clone(), vec![1]).unwrap(), CharacterPoint::finite(f7, vec![3]).unwrap()];
        let s = crosscheck_bw(&circle(), 0, &pts).unwrap();
        assert!(s.entries[0].in_locus && s.entries[0].homology_dims[0] == 1);
        assert!(!s.entries[1].in_locus && s.entries[1].homology_dims[0] == 0);
    }

    #[test]
    fn crosscheck_torus_all_characters() {
        let f4 = f(2, 2);
        let pts = all_characters(&f4, 2);
        assert_eq!(pts.len(), 9);
        for i in 0..=2 {
            let s = crosscheck_bw(&torus(), i, &pts).unwrap();
            assert_eq!(s.in_locus_count(), 1);
        }
    }

    #[test]
    fn products_over_windows() {
        let o = intersection_observables(&circle(), (0, 1), 64).unwrap();
        assert_eq!(o.product.gens(), &[p("t^2 - 2*t + 1", 1)]);
        assert!(!o.truncated);
        let o = intersection_observables(&torus(), (0, 0), 64).unwrap();
        assert_eq!(o.product.gens(), &[p("t1 - 1", 2), p("t2 - 1", 2)]);
        let o = intersection_observables(&torus(), (0, 2), 2).unwrap();
        assert!(o.truncated && o.product.len() == 2);
    }
}
