//! Homology of one-variable complexes over a field `k`, as modules over the
//! principal ideal domain `k[t, t^-1]`.

use num_traits::Zero;
use serde::Serialize;

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::fpoly::{self, FPoly};
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;
use crate::ring::{CoeffRing, RingSpec};

/// Homology in one degree: `k[t^±]^free_rank ⊕ ⊕ k[t^±]/(f)` over the torsion factors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantFactors {
    pub degree: i64,
    pub free_rank: usize,
    /// Monic, nonunit, constant term nonzero, each dividing the next.
    pub torsion: Vec<LaurentPoly>,
}

/// Matrix over `k[t]` obtained by multiplying each row by a power of `t`.
fn to_polynomial_rows<F: Field>(field: &F, m: &PolyMatrix) -> Vec<Vec<FPoly<F>>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let parts: Vec<Option<(i64, FPoly<F>)>> = row
                .iter()
                .map(|e| if e.is_zero() { None } else { Some(fpoly::from_laurent(field, e).expect("field coefficients")) })
                .collect();
            let min = parts.iter().flatten().map(|(s, _)| *s).min().unwrap_or(0);
            parts
                .into_iter()
                .map(|p| match p {
                    None => FPoly::zero(),
                    Some((s, q)) => {
                        let mut c = vec![field.zero(); (s - min) as usize];
                        c.extend(q.coeffs().iter().cloned());
                        FPoly::new(field, c)
                    }
                })
                .collect()
        })
        .collect()
}

/// Nonzero diagonal of the Smith form over `k[t]`, as a divisibility chain of monic polynomials.
pub fn smith_diagonal<F: Field>(field: &F, mut a: Vec<Vec<FPoly<F>>>) -> Vec<FPoly<F>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        // pivot of minimal degree in the trailing block
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if let Some(d) = e.degree() {
                    if best.is_none_or(|(_, _, bd)| d < bd) {
                        best = Some((i, j, d));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].divrem(field, &a[k][k]);
                for j in k..cols {
                    let v = q.mul(field, &a[k][j]);
                    a[i][j] = a[i][j].sub(field, &v);
                }
                debug_assert_eq!(a[i][k], r);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].divrem(field, &a[k][k]);
                for row in a.iter_mut().skip(k) {
                    let v = q.mul(field, &row[k]);
                    row[j] = row[j].sub(field, &v);
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // a remainder of smaller degree becomes the new pivot
            let mut best = (k, k, a[k][k].degree().unwrap());
            for i in k + 1..rows {
                if let Some(d) = a[i][k].degree() {
                    if d < best.2 {
                        best = (i, k, d);
                    }
                }
            }
            for j in k + 1..cols {
                if let Some(d) = a[k][j].degree() {
                    if d < best.2 {
                        best = (k, j, d);
                    }
                }
            }
            a.swap(k, best.0);
            for row in a.iter_mut() {
                row.swap(k, best.1);
            }
        }
        diag.push(a[k][k].monic(field));
        k += 1;
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(field, &diag[j]);
            if g == diag[i] {
                continue;
            }
            let (l, _) = diag[i].mul(field, &diag[j]).divrem(field, &g);
            diag[i] = g;
            diag[j] = l.monic(field);
        }
    }
    diag
}

/// Invariant factors of a one-variable Laurent matrix over a field: units
/// of `k[t^±]` stripped, unit factors dropped. Returns `(rank, torsion)`.
pub fn invariant_factors(m: &PolyMatrix) -> Result<(usize, Vec<LaurentPoly>)> {
    let ring = check_field_univariate(m.ring())?;
    match ring.coeffs {
        CoeffRing::Rationals => Ok(invariant_factors_in(&Rationals, ring, m)),
        CoeffRing::PrimeField(p) => Ok(invariant_factors_in(&PrimeField::new(p)?, ring, m)),
        CoeffRing::Integers => unreachable!(),
    }
}

fn invariant_factors_in<F: Field>(field: &F, ring: RingSpec, m: &PolyMatrix) -> (usize, Vec<LaurentPoly>) {
    let diag = smith_diagonal(field, to_polynomial_rows(field, m));
    let rank = diag.len();
    let torsion = diag
        .iter()
        .map(|d| d.strip_t(field))
        .filter(|d| d.degree().is_some_and(|k| k > 0))
        .map(|d| fpoly::to_laurent(field, ring, 0, &d))
        .collect();
    (rank, torsion)
}

fn check_field_univariate(ring: RingSpec) -> Result<RingSpec> {
    if !ring.coeffs.is_field() {
        return Err(Error::NotAField(ring.coeffs.to_string()));
    }
    if ring.nvars != 1 {
        return Err(Error::NotUnivariate(ring.nvars));
    }
    Ok(ring)
}

/// Invariant-factor decomposition of every homology module.
pub fn homology_field(c: &FreeComplex) -> Result<Vec<InvariantFactors>> {
    check_field_univariate(c.ring())?;
    use rayon::prelude::*;
    let per: Vec<(usize, Vec<LaurentPoly>)> = (c.lo()..=c.hi() + 1)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&i| invariant_factors(&c.boundary(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(c
        .degrees()
        .enumerate()
        .map(|(k, i)| {
            let (rank_out, _) = &per[k];
            let (rank_in, torsion) = &per[k + 1];
            InvariantFactors { degree: i, free_rank: c.rank(i) - rank_out - rank_in, torsion: torsion.clone() }
        })
        .collect())
}

/// Rank over `k(t)` by fraction-free elimination over `k[t]`.
pub fn matrix_rank_fraction_field(m: &PolyMatrix) -> Result<usize> {
    let ring = check_field_univariate(m.ring())?;
    Ok(match ring.coeffs {
        CoeffRing::Rationals => fraction_free_rank(&Rationals, to_polynomial_rows(&Rationals, m)),
        CoeffRing::PrimeField(p) => {
            let f = PrimeField::new(p)?;
            let rows = to_polynomial_rows(&f, m);
            fraction_free_rank(&f, rows)
        }
        CoeffRing::Integers => unreachable!(),
    })
}

fn fraction_free_rank<F: Field>(field: &F, mut a: Vec<Vec<FPoly<F>>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let (piv, lead) = (a[rank][c].clone(), a[r][c].clone());
            let mut g = FPoly::zero();
            for k in c..cols {
                let v = a[r][k].mul(field, &piv).sub(field, &lead.mul(field, &a[rank][k]));
                g = g.gcd(field, &v);
                a[r][k] = v;
            }
            if !g.is_zero() && g.degree() != Some(0) {
                for k in c..cols {
                    a[r][k] = a[r][k].divrem(field, &g).0;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim_{k(t)} H_i(C ⊗ k(t))`.
pub fn rank_fraction_field(c: &FreeComplex, i: i64) -> Result<usize> {
    check_field_univariate(c.ring())?;
    c.check_degree(i)?;
    let out = matrix_rank_fraction_field(&c.boundary(i))?;
    let inc = matrix_rank_fraction_field(&c.boundary(i + 1))?;
    Ok(c.rank(i) - out - inc)
}

/// Product of the torsion factors in degree `i`, the order of the torsion submodule.
pub fn torsion_order(h: &InvariantFactors, ring: RingSpec) -> LaurentPoly {
    h.torsion.iter().fold(LaurentPoly::one(ring), |acc, f| &acc * f)
}

/// True when the zero polynomial is the only constant.
pub fn is_nonzero_constant(p: &LaurentPoly) -> bool {
    p.is_constant() && !p.coeff(&vec![0; p.nvars()]).is_zero()
}
