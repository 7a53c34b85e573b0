#![allow(dead_code)]

use std::collections::BTreeMap;

use alexmod::complex::FreeComplex;
use alexmod::corpus;
use alexmod::fox::presentation_complex;
use alexmod::io::Input;
use alexmod::poly_text::parse_poly;
use alexmod::{LaurentPoly, RingSpec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn zt(s: &str) -> LaurentPoly {
    parse_poly(s, RingSpec::integers(1)).unwrap()
}

pub fn example(name: &str) -> FreeComplex {
    match corpus::load(name).unwrap() {
        Input::Complex(c) => c,
        Input::Presentation(p) => presentation_complex(&p),
    }
}

/// Integer lattice in echelon form, one basis row per pivot column.
#[derive(Default)]
pub struct Lattice {
    dim: usize,
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, rows: BTreeMap::new() }
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim);
        for c in 0..self.dim {
            if v[c].is_zero() {
                continue;
            }
            let Some(b) = self.rows.get(&c).cloned() else {
                self.rows.insert(c, v);
                return;
            };
            let e = b[c].extended_gcd(&v[c]);
            let (bq, vq) = (&b[c] / &e.gcd, &v[c] / &e.gcd);
            let pivot: Vec<BigInt> = b.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
            let rest: Vec<BigInt> = b.iter().zip(&v).map(|(x, y)| &vq * x - &bq * y).collect();
            self.rows.insert(c, pivot);
            v = rest;
        }
    }

    pub fn contains(&self, target: &[BigInt]) -> bool {
        let mut t = target.to_vec();
        for c in 0..self.dim {
            if t[c].is_zero() {
                continue;
            }
            let Some(b) = self.rows.get(&c) else { return false };
            let (q, r) = t[c].div_rem(&b[c]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in t.iter_mut().zip(b) {
                *x -= &q * y;
            }
        }
        true
    }
}

/// Integer coefficients of a one-variable polynomial, by exponent.
pub fn dense(p: &LaurentPoly) -> BTreeMap<i64, BigInt> {
    p.terms().map(|(e, c)| (e[0], c.to_integer())).collect()
}

fn span_of(p: &LaurentPoly) -> (i64, i64) {
    let d = dense(p);
    (*d.keys().next().unwrap(), *d.keys().last().unwrap())
}

/// Whether `t^{±(n+1)} e_g` lies in `Z<t^j e_g : |j| <= n> + span of shifted relations`,
/// using relation shifts supported in `[-(n+1+slack), n+1+slack]`. Relations are
/// vectors of length `m` over `Z[t^±1]`.
pub fn window_onto(m: usize, relations: &[Vec<LaurentPoly>], n: i64, slack: i64) -> bool {
    let k = n + 1 + slack;
    // coordinates outside the window: exponents n < |e| <= k, per generator
    let outside: Vec<i64> = (-k..=k).filter(|e| e.abs() > n).collect();
    let width = outside.len();
    let index = |g: usize, e: i64| outside.iter().position(|&x| x == e).map(|p| g * width + p);
    let mut lat = Lattice::new(m * width);
    for r in relations {
        let nonzero: Vec<_> = r.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            continue;
        }
        let lo = nonzero.iter().map(|p| span_of(p).0).min().unwrap();
        let hi = nonzero.iter().map(|p| span_of(p).1).max().unwrap();
        for s in (-k - lo)..=(k - hi) {
            let mut v = vec![BigInt::zero(); m * width];
            for (g, p) in r.iter().enumerate() {
                for (e, c) in dense(p) {
                    if let Some(i) = index(g, e + s) {
                        v[i] += c;
                    }
                }
            }
            lat.insert(v);
        }
    }
    (0..m).all(|g| {
        [n + 1, -n - 1].iter().all(|&e| {
            let mut t = vec![BigInt::zero(); m * width];
            t[index(g, e).unwrap()] = BigInt::from(1);
            lat.contains(&t)
        })
    })
}

/// Truncation oracle: the window map `Z^{[-N, N]}^m -> M` is onto for some `N` in `[10, 30]`.
pub fn truncation_fg(m: usize, relations: &[Vec<LaurentPoly>]) -> bool {
    let onto: Vec<bool> = [10, 20, 30].iter().map(|&n| window_onto(m, relations, n, 12)).collect();
    // ontoness is monotone in N
    assert!(onto.windows(2).all(|w| !w[0] || w[1]), "window map onto at N but not at larger N");
    onto[2]
}

/// Brute-force membership: `f` is a Z-combination of shifts of the generators
/// supported within `slack` of the joint support.
pub fn brute_member(f: &LaurentPoly, gens: &[LaurentPoly], slack: i64) -> bool {
    if f.is_zero() {
        return true;
    }
    let (mut lo, mut hi) = span_of(f);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let (a, b) = span_of(g);
        lo = lo.min(a);
        hi = hi.max(b);
    }
    let (lo, hi) = (lo - slack, hi + slack);
    let dim = (hi - lo + 1) as usize;
    let mut lat = Lattice::new(dim);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let (a, b) = span_of(g);
        for s in (lo - a)..=(hi - b) {
            let mut v = vec![BigInt::zero(); dim];
            for (e, c) in dense(g) {
                v[(e + s - lo) as usize] = c;
            }
            lat.insert(v);
        }
    }
    let mut t = vec![BigInt::zero(); dim];
    for (e, c) in dense(f) {
        t[(e - lo) as usize] = c;
    }
    lat.contains(&t)
}

/// Both end coefficients are ±1.
pub fn unit_ends(p: &LaurentPoly) -> bool {
    let d = dense(p);
    d.values().next().unwrap().abs() == BigInt::from(1) && d.values().last().unwrap().abs() == BigInt::from(1)
}
