//! Dense linear algebra over a [`Field`].

use crate::field::Field;

/// Rank by Gaussian elimination.
pub fn rank<F: Field>(field: &F, mut m: Vec<Vec<F::Elem>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !field.is_zero(&m[r][c])) else { continue };
        m.swap(rank, p);
        let inv = field.inv(&m[rank][c]);
        for r in rank + 1..rows {
            if field.is_zero(&m[r][c]) {
                continue;
            }
            let f = field.mul(&m[r][c], &inv);
            for k in c..cols {
                let v = field.mul(&f, &m[rank][k]);
                m[r][k] = field.sub(&m[r][k], &v);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
