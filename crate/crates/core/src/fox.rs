//! Free group words, finite presentations with a homomorphism `nu` to `Z^r`,
//! and the abelianized Fox calculus.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::complex::{FreeComplex, RhoSpec};
use crate::error::{Error, Result};
use crate::ideal::IdealGenerators;
use crate::laurent::LaurentPoly;
use crate::matrix::{determinantal_ideal, PolyMatrix};
use crate::ring::RingSpec;

/// Freely reduced word; letters are `(generator, ±1)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeWord(Vec<(usize, i8)>);

impl FreeWord {
    pub fn new<I: IntoIterator<Item = (usize, i8)>>(letters: I) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "letter exponent must be ±1");
            if out.last() == Some(&(g, -e)) {
                out.pop();
            } else {
                out.push((g, e));
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, o: &Self) -> Self {
        FreeWord::new(self.0.iter().chain(o.0.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        FreeWord::new((0..n.unsigned_abs()).flat_map(|_| base.0.iter().copied()))
    }

    pub fn commutator(u: &Self, v: &Self) -> Self {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Image under `nu` (exponent sum weighted by `nu`).
    pub fn abelianize(&self, nu: &[Vec<i64>], r: usize) -> Vec<i64> {
        let mut v = vec![0i64; r];
        for &(g, e) in &self.0 {
            for (k, x) in nu[g].iter().enumerate() {
                v[k] += e as i64 * x;
            }
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&(g, _)| g).max()
    }
}

/// `<x_0, ..., x_{g-1} | relators>` with `nu(x_j) in Z^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    names: Vec<String>,
    relators: Vec<FreeWord>,
    nu: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn new(names: Vec<String>, relators: Vec<FreeWord>, nu: Vec<Vec<i64>>) -> Result<Self> {
        if names.len() != nu.len() {
            return Err(Error::Shape(format!("{} generators but {} nu vectors", names.len(), nu.len())));
        }
        let r = nu.first().map_or(0, |v| v.len());
        if r == 0 {
            return Err(Error::Shape("nu must take values in Z^r with r >= 1".into()));
        }
        if let Some(v) = nu.iter().find(|v| v.len() != r) {
            return Err(Error::Shape(format!("nu vectors of lengths {r} and {}", v.len())));
        }
        for (k, w) in relators.iter().enumerate() {
            if let Some(g) = w.max_generator().filter(|&g| g >= names.len()) {
                return Err(Error::GeneratorIndex { index: g, count: names.len() });
            }
            let image = w.abelianize(&nu, r);
            if image.iter().any(|&x| x != 0) {
                return Err(Error::NuNotBalanced { index: k, image });
            }
        }
        Ok(GroupPresentation { names, relators, nu })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn nu(&self) -> &[Vec<i64>] {
        &self.nu
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn rank(&self) -> usize {
        self.nu[0].len()
    }

    pub fn ring(&self) -> RingSpec {
        RingSpec::integers(self.rank())
    }

    /// Same presentation with `nu` replaced by `rho o nu`.
    pub fn compose(&self, rho: &RhoSpec) -> Result<Self> {
        rho.check_len(self.rank())?;
        let nu = self.nu.iter().map(|v| vec![v.iter().zip(&rho.alpha).map(|(a, b)| a * b).sum()]).collect();
        GroupPresentation::new(self.names.clone(), self.relators.clone(), nu)
    }
}

/// `∂w/∂x_j` pushed to `Z[Z^r]` along `nu`.
pub fn fox_derivative(w: &FreeWord, j: usize, nu: &[Vec<i64>]) -> Result<LaurentPoly> {
    if j >= nu.len() {
        return Err(Error::GeneratorIndex { index: j, count: nu.len() });
    }
    let r = nu[0].len();
    let ring = RingSpec::integers(r);
    let mut prefix = vec![0i64; r];
    let mut out = LaurentPoly::zero(ring);
    for &(g, e) in w.letters() {
        if e == 1 {
            if g == j {
                out.add_term(prefix.clone(), BigRational::one());
            }
            prefix.iter_mut().zip(&nu[g]).for_each(|(p, x)| *p += x);
        } else {
            prefix.iter_mut().zip(&nu[g]).for_each(|(p, x)| *p -= x);
            if g == j {
                out.add_term(prefix.clone(), -BigRational::one());
            }
        }
    }
    Ok(out)
}

/// Cellular chain complex of the cover of the presentation 2-complex.
pub fn presentation_complex(p: &GroupPresentation) -> FreeComplex {
    let ring = p.ring();
    let g = p.generator_count();
    let d1 = PolyMatrix::from_rows(
        ring,
        vec![p.nu.iter().map(|v| &LaurentPoly::monomial(ring, v.clone(), BigRational::one()) - &LaurentPoly::one(ring)).collect()],
        g,
    )
    .expect("shape");
    let mut bd = BTreeMap::from([(1, d1)]);
    let k = p.relators.len();
    if k == 0 {
        return FreeComplex::new(ring, 0, 1, vec![1, g], bd).expect("shapes");
    }
    let rows = (0..g)
        .map(|j| p.relators.iter().map(|w| fox_derivative(w, j, &p.nu).expect("index checked")).collect())
        .collect();
    bd.insert(2, PolyMatrix::from_rows(ring, rows, k).expect("shape"));
    FreeComplex::new(ring, 0, 2, vec![1, g, k], bd).expect("shapes")
}

/// Presentation of `H_1` of the infinite cyclic cover as a `Z[t^±]`-module.
#[derive(Debug, Clone, PartialEq)]
pub struct H1Presentation {
    /// Generator whose row of the Fox Jacobian was deleted.
    pub deleted_generator: usize,
    /// Rows: remaining generators; columns: relators.
    pub matrix: PolyMatrix,
    /// `Fitt_0`, the ideal of maximal row-size minors.
    pub fitting_ideal: IdealGenerators,
}

/// Deletes the row of a generator `x_j` with `rho(nu(x_j)) = ±1`; then the
/// remaining rows of the Fox Jacobian present `H_1`.
pub fn h1_presentation(p: &GroupPresentation, rho: &RhoSpec) -> Result<H1Presentation> {
    let q = p.compose(rho)?;
    let Some(j) = q.nu.iter().position(|v| v[0].abs() == 1) else {
        return Err(Error::NoShortcut("no generator maps to ±1 under rho o nu".into()));
    };
    let c = presentation_complex(&q);
    let full = c.boundary(2);
    let ring = q.ring();
    let rows: Vec<Vec<LaurentPoly>> = (0..q.generator_count()).filter(|&i| i != j).map(|i| full.row(i).to_vec()).collect();
    let matrix = PolyMatrix::from_rows(ring, rows, full.cols())?;
    let fitting_ideal = determinantal_ideal(&matrix, matrix.rows());
    Ok(H1Presentation { deleted_generator: j, matrix, fitting_ideal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_text::parse_poly;

    fn w(letters: &[(usize, i8)]) -> FreeWord {
        FreeWord::new(letters.iter().copied())
    }

    fn p(s: &str, n: usize) -> LaurentPoly {
        parse_poly(s, RingSpec::integers(n)).unwrap()
    }

    #[test]
    fn free_reduction() {
        assert!(w(&[(0, 1), (1, 1), (1, -1), (0, -1)]).is_empty());
        assert_eq!(w(&[(0, 1), (0, 1)]).len(), 2);
        let u = w(&[(0, 1), (1, -1)]);
        assert!(u.concat(&u.inverse()).is_empty());
        assert_eq!(FreeWord::commutator(&w(&[(0, 1)]), &w(&[(1, 1)])).letters(), &[(0, 1), (1, 1), (0, -1), (1, -1)]);
    }

    #[test]
    fn derivative_examples() {
        let nu = vec![vec![1], vec![0]];
        assert_eq!(fox_derivative(&w(&[(0, 1), (1, 1)]), 0, &nu).unwrap(), p("1", 1));
        assert_eq!(fox_derivative(&w(&[(0, -1)]), 0, &nu).unwrap(), p("-t^-1", 1));
        let nu2 = vec![vec![1, 0], vec![0, 1]];
        let comm = w(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        assert_eq!(fox_derivative(&comm, 0, &nu2).unwrap(), p("1 - t2", 2));
        assert_eq!(fox_derivative(&comm, 1, &nu2).unwrap(), p("t1 - 1", 2));
        assert!(matches!(fox_derivative(&comm, 2, &nu2), Err(Error::GeneratorIndex { .. })));
    }

    #[test]
    fn unbalanced_nu_rejected() {
        let names = vec!["x".to_string()];
        let r = GroupPresentation::new(names, vec![w(&[(0, 1)])], vec![vec![1]]);
        assert!(matches!(r, Err(Error::NuNotBalanced { index: 0, .. })));
    }

    #[test]
    fn circle_and_torus() {
        let circle = GroupPresentation::new(vec!["x".into()], vec![], vec![vec![1]]).unwrap();
        let c = presentation_complex(&circle);
        assert_eq!((c.lo(), c.hi()), (0, 1));
        assert_eq!(c.boundary(1).get(0, 0), &p("t - 1", 1));
        let torus = GroupPresentation::new(
            vec!["x".into(), "y".into()],
            vec![w(&[(0, 1), (1, 1), (0, -1), (1, -1)])],
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        let c = presentation_complex(&torus);
        assert!(c.validate().ok);
        assert_eq!(c.boundary(2).get(0, 0), &p("1 - t2", 2));
        assert_eq!(c.boundary(2).get(1, 0), &p("t1 - 1", 2));
    }

    #[test]
    fn trefoil_h1() {
        // aba = bab
        let rel = w(&[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]);
        let pres = GroupPresentation::new(vec!["a".into(), "b".into()], vec![rel], vec![vec![1], vec![1]]).unwrap();
        let h = h1_presentation(&pres, &RhoSpec::new(vec![1]).unwrap()).unwrap();
        assert_eq!(h.matrix.shape(), (1, 1));
        assert_eq!(h.fitting_ideal.gens(), &[p("t^2 - t + 1", 1)]);
    }

    #[test]
    fn shortcut_refused() {
        let pres = GroupPresentation::new(vec!["x".into()], vec![], vec![vec![2]]).unwrap();
        assert!(matches!(h1_presentation(&pres, &RhoSpec::new(vec![1]).unwrap()), Err(Error::NoShortcut(_))));
    }
}
