//! Dense matrices over Laurent rings and their determinantal ideals.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::IdealGenerators;
use crate::laurent::LaurentPoly;
use crate::ring::{CoeffRing, RingSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| self.row(i).iter().map(|p| p.to_string()).collect()).collect();
        write!(f, "{}x{} {:?}", self.rows, self.cols, rows)
    }
}

impl PolyMatrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring, rows, cols, entries: vec![LaurentPoly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(ring));
        }
        m
    }

    /// Builds from rows; `cols` is needed to give shape to a matrix without rows.
    pub fn from_rows(ring: RingSpec, rows: Vec<Vec<LaurentPoly>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for e in row {
                ring.check_same(&e.ring())?;
                entries.push(e);
            }
        }
        Ok(PolyMatrix { ring, rows: n, cols, entries })
    }

    pub fn diagonal(ring: RingSpec, diag: Vec<LaurentPoly>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(ring, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Applies a ring map entrywise.
    pub fn try_map<F>(&self, ring: RingSpec, f: F) -> Result<Self>
    where
        F: Fn(&LaurentPoly) -> Result<LaurentPoly>,
    {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring, rows: self.rows, cols: self.cols, entries })
    }

    pub fn involute(&self) -> Self {
        self.try_map(self.ring, |e| Ok(e.involute())).unwrap()
    }

    pub fn base_change(&self, target: CoeffRing) -> Result<Self> {
        self.try_map(self.ring.with_coeffs(target), |e| e.base_change(target))
    }

    pub fn specialize(&self, alpha: &[i64]) -> Result<Self> {
        self.try_map(self.ring.with_nvars(1), |e| e.specialize(alpha))
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let mut m = Self::zeros(self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// All nonzero `k x k` minors, by row subset then column subset, both in lex order.
    pub fn minors(&self, k: usize) -> Vec<LaurentPoly> {
        if k == 0 {
            return vec![LaurentPoly::one(self.ring)];
        }
        if k > self.rows || k > self.cols {
            return Vec::new();
        }
        let row_sets = combinations(self.rows, k);
        row_sets
            .par_iter()
            .map(|rs| self.minors_for_rows(rs))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }

    /// Minors on the given rows for every `k`-subset of columns, by Laplace
    /// expansion along the last row over growing column subsets.
    fn minors_for_rows(&self, rows: &[usize]) -> Vec<LaurentPoly> {
        use std::collections::HashMap;
        let k = rows.len();
        // level j: determinants of rows[..j] against every j-subset of columns
        let mut level: HashMap<Vec<usize>, LaurentPoly> = HashMap::new();
        level.insert(Vec::new(), LaurentPoly::one(self.ring));
        for (j, &r) in rows.iter().enumerate() {
            let mut next: HashMap<Vec<usize>, LaurentPoly> = HashMap::new();
            for cs in combinations(self.cols, j + 1) {
                let mut acc = LaurentPoly::zero(self.ring);
                for (idx, &c) in cs.iter().enumerate() {
                    let a = self.get(r, c);
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cs.iter().copied().filter(|&x| x != c).collect();
                    let Some(sub) = level.get(&rest) else { continue };
                    if sub.is_zero() {
                        continue;
                    }
                    let term = a * sub;
                    acc = if (j + idx) % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                if !acc.is_zero() {
                    next.insert(cs, acc);
                }
            }
            level = next;
            if level.is_empty() {
                return Vec::new();
            }
        }
        combinations(self.cols, k).into_iter().filter_map(|cs| level.remove(&cs)).collect()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("determinant of {}x{} matrix", self.rows, self.cols)));
        }
        Ok(self.minors(self.rows).into_iter().next().unwrap_or_else(|| LaurentPoly::zero(self.ring)))
    }
}

/// `k`-subsets of `0..n` in lex order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        if cur[i] >= n - k + i {
            return out;
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Ideal of `k x k` minors in canonical form.
pub fn determinantal_ideal(m: &PolyMatrix, k: usize) -> IdealGenerators {
    IdealGenerators::new(m.ring, m.minors(k)).expect("same ring").canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_text::parse_poly;

    fn p(s: &str, n: usize) -> LaurentPoly {
        parse_poly(s, RingSpec::integers(n)).unwrap()
    }

    fn mat(rows: &[&[&str]], n: usize) -> PolyMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        PolyMatrix::from_rows(RingSpec::integers(n), rows.iter().map(|r| r.iter().map(|s| p(s, n)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn combinations_lex() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn determinantal_examples() {
        let m = mat(&[&["t - 1", "0"], &["0", "t - 1"]], 1);
        assert_eq!(determinantal_ideal(&m, 1).gens(), &[p("t - 1", 1)]);
        assert_eq!(determinantal_ideal(&m, 2).gens(), &[p("t^2 - 2*t + 1", 1)]);
        assert_eq!(determinantal_ideal(&m, 0).gens(), &[p("1", 1)]);
        assert!(determinantal_ideal(&m, 3).is_empty());
        let row = mat(&[&["t1 - 1", "t2 - 1"]], 2);
        assert_eq!(determinantal_ideal(&row, 1).gens(), &[p("t1 - 1", 2), p("t2 - 1", 2)]);
    }

    #[test]
    fn determinant_against_cofactor_formula() {
        let m = mat(&[&["t", "2", "1"], &["1", "t - 1", "3"], &["t^2", "0", "t^-1"]], 1);
        let g = |i: usize, j: usize| m.get(i, j).clone();
        let det = &(&(&g(0, 0) * &(&(&g(1, 1) * &g(2, 2)) - &(&g(1, 2) * &g(2, 1))))
            - &(&g(0, 1) * &(&(&g(1, 0) * &g(2, 2)) - &(&g(1, 2) * &g(2, 0)))))
            + &(&g(0, 2) * &(&(&g(1, 0) * &g(2, 1)) - &(&g(1, 1) * &g(2, 0))));
        assert_eq!(m.determinant().unwrap(), det);
        assert_eq!(m.transpose().determinant().unwrap(), det);
    }

    #[test]
    fn minor_signs_on_permutation() {
        let m = mat(&[&["0", "1"], &["1", "0"]], 1);
        assert_eq!(m.determinant().unwrap(), p("-1", 1));
    }

    #[test]
    fn product_and_transpose() {
        let a = mat(&[&["t1 - 1", "t2 - 1"]], 2);
        let b = mat(&[&["t2 - 1"], &["1 - t1"]], 2);
        assert!(a.mul(&b).unwrap().is_zero());
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.mul(&a).is_err());
    }
}
