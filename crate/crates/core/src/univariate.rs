//! One-variable gcds and cyclotomic polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::fpoly::{self, FPoly};
use crate::laurent::LaurentPoly;
use crate::ring::{CoeffRing, RingSpec};
use crate::zpoly::ZPoly;

#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateGcd {
    /// Monic gcd over the field, min-degree normalized.
    pub monic: LaurentPoly,
    /// Primitive integer representative (gcd over Q only).
    pub primitive: Option<LaurentPoly>,
}

/// Primitive integer polynomial in `Z[t]` with nonzero constant term that is an
/// associate of `p` over `Q[t, t^-1]`.
pub fn primitive_integer_rep(p: &LaurentPoly) -> Result<ZPoly> {
    let (_, dense) = p.to_dense()?;
    let lcm = dense.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let z = ZPoly::new(dense.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect());
    Ok(z.strip_t().primitive())
}

/// Gcd of one-variable polynomials over `Q` or `F_p`.
pub fn univariate_gcd(polys: &[LaurentPoly], field: CoeffRing) -> Result<UnivariateGcd> {
    if let Some(p) = polys.iter().find(|p| p.nvars() != 1) {
        return Err(Error::NotUnivariate(p.nvars()));
    }
    if polys.iter().all(|p| p.is_zero()) {
        return Err(Error::ZeroInput("univariate_gcd"));
    }
    match field {
        CoeffRing::Integers => Err(Error::NotAField("Z".into())),
        CoeffRing::Rationals => {
            let mut g = ZPoly::zero();
            for p in polys {
                let q = p.base_change(CoeffRing::Rationals)?;
                if q.is_zero() {
                    continue;
                }
                g = g.gcd(&primitive_integer_rep(&q)?);
            }
            let primitive = g.to_laurent(0);
            let lc = BigRational::from_integer(g.lc().unwrap().clone());
            let monic = primitive.base_change(CoeffRing::Rationals)?.scale(&lc.recip());
            Ok(UnivariateGcd { monic, primitive: Some(primitive) })
        }
        CoeffRing::PrimeField(p) => {
            let f = PrimeField::new(p)?;
            let mut g = FPoly::zero();
            for q in polys {
                let q = q.base_change(field)?;
                let (_, fp) = fpoly::from_laurent(&f, &q).expect("prime field coefficients");
                g = g.gcd(&f, &fp);
            }
            let ring = RingSpec::new(field, 1)?;
            let g = g.strip_t(&f);
            Ok(UnivariateGcd { monic: fpoly::to_laurent(&f, ring, 0, &g), primitive: None })
        }
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn proper_divisors(m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            if d != m / d {
                out.push(m / d);
            }
        }
        d += 1;
    }
    out.retain(|&d| d != m);
    out.sort_unstable();
    out
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, ZPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, ZPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_m` as a dense integer polynomial, by dividing `t^m - 1` by `Φ_d` for the proper divisors `d`.
pub fn cyclotomic_zpoly(m: u64) -> ZPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = ZPoly::monomial(1, m as usize).sub(&ZPoly::constant(1));
    for d in proper_divisors(m) {
        num = num.div_exact(&cyclotomic_zpoly(d)).expect("cyclotomic factors divide t^m - 1");
    }
    cyclotomic_cache().lock().unwrap().insert(m, num.clone());
    num
}

/// Indices `m <= bound` with `φ(m) <= max_phi`, from a sieve grown on demand.
fn small_phi_indices(bound: u64, max_phi: u64) -> Vec<u64> {
    static TABLE: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    let mut table = TABLE.get_or_init(|| Mutex::new(vec![0])).lock().unwrap();
    let n = bound as usize;
    if table.len() <= n {
        let size = (n + 1).max(2 * table.len());
        let mut phi: Vec<u64> = (0..size as u64).collect();
        for p in 2..size {
            if phi[p] == p as u64 {
                for k in (p..size).step_by(p) {
                    phi[k] -= phi[k] / p as u64;
                }
            }
        }
        *table = phi;
    }
    (1..=n).filter(|&m| table[m] <= max_phi).map(|m| m as u64).collect()
}

/// The cyclotomic polynomial `Φ_m` in `Z[t, t^-1]`.
pub fn cyclotomic(m: u64) -> LaurentPoly {
    cyclotomic_zpoly(m).to_laurent(0)
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CyclotomicFactorization {
    pub is_product: bool,
    /// Orders `m` of the cyclotomic factors, with multiplicity, ascending.
    pub orders: Vec<u64>,
    /// Why the test failed, if it did.
    pub reason: Option<String>,
}

/// Decides whether `h = ± t^a ∏ Φ_{m_j}`.
pub fn is_cyclotomic_product(h: &LaurentPoly) -> Result<CyclotomicFactorization> {
    if h.is_zero() {
        return Err(Error::ZeroInput("is_cyclotomic_product"));
    }
    let (_, z) = ZPoly::from_laurent(h)?;
    let z = z.strip_t();
    let fail = |reason: String| Ok(CyclotomicFactorization { is_product: false, orders: vec![], reason: Some(reason) });
    if !z.content().is_one() {
        return fail(format!("content {} is not 1", z.content()));
    }
    if !z.lc().unwrap().abs().is_one() || !z.tc().unwrap().abs().is_one() {
        return fail(format!("end coefficients {} and {} are not both ±1", z.lc().unwrap(), z.tc().unwrap()));
    }
    let deg = z.degree().unwrap() as u64;
    let mut rest = z;
    let mut orders = Vec::new();
    // φ(m) >= sqrt(m/2), so every factor of degree <= deg has m <= 2 deg^2
    for m in small_phi_indices(2 * deg * deg + 1, deg) {
        if rest.degree() == Some(0) {
            break;
        }
        if euler_phi(m) > rest.degree().unwrap() as u64 {
            continue;
        }
        let phi = cyclotomic_zpoly(m);
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            orders.push(m);
        }
    }
    if rest.degree() == Some(0) && rest.coeff(0).abs().is_one() {
        Ok(CyclotomicFactorization { is_product: true, orders, reason: None })
    } else {
        let leftover = rest.to_laurent(0);
        fail(format!("non-cyclotomic cofactor {leftover}"))
    }
}

/// Squarefree part over Q of a primitive integer polynomial: `h / gcd(h, h')`.
pub fn squarefree_part(h: &ZPoly) -> ZPoly {
    if h.degree().unwrap_or(0) == 0 {
        return h.clone();
    }
    let g = h.gcd(&h.derivative()).primitive();
    // Gauss: a primitive factor over Q divides over Z
    h.primitive().div_exact(&g).expect("gcd divides").primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_text::parse_poly;

    fn z(s: &str) -> LaurentPoly {
        parse_poly(s, RingSpec::integers(1)).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let g = univariate_gcd(&[z("t^2 - 1"), z("t^2 - t")], CoeffRing::Rationals).unwrap();
        assert_eq!(g.primitive.unwrap(), z("t - 1"));
        let g = univariate_gcd(&[z("2*t^2 - 3*t + 2")], CoeffRing::Rationals).unwrap();
        assert_eq!(g.monic, parse_poly("t^2 - 3/2*t + 1", RingSpec::rationals(1)).unwrap());
        assert_eq!(g.primitive.unwrap(), z("2*t^2 - 3*t + 2"));
        let f2 = CoeffRing::PrimeField(2);
        let g = univariate_gcd(&[z("t^2 + 1"), z("t + 1")], f2).unwrap();
        assert_eq!(g.monic, parse_poly("t + 1", RingSpec::new(f2, 1).unwrap()).unwrap());
        assert!(univariate_gcd(&[LaurentPoly::zero(RingSpec::integers(1))], CoeffRing::Rationals).is_err());
        assert!(univariate_gcd(&[z("t")], CoeffRing::Integers).is_err());
    }

    #[test]
    fn gcd_is_normalized_laurent() {
        let g = univariate_gcd(&[z("t^-3 - t^-2"), z("t^5 - t^4")], CoeffRing::Rationals).unwrap();
        assert_eq!(g.primitive.unwrap(), z("t - 1"));
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1), z("t - 1"));
        assert_eq!(cyclotomic(6), z("t^2 - t + 1"));
        assert_eq!(cyclotomic(8), z("t^4 + 1"));
    }

    #[test]
    fn cyclotomic_recognition() {
        let r = is_cyclotomic_product(&z("t - 1")).unwrap();
        assert!(r.is_product);
        assert_eq!(r.orders, vec![1]);
        assert!(!is_cyclotomic_product(&z("2*t^2 - 3*t + 2")).unwrap().is_product);
        let r = is_cyclotomic_product(&(z("t^2 - t + 1") * z("t + 1"))).unwrap();
        assert!(r.is_product);
        assert_eq!(r.orders, vec![2, 6]);
        assert!(is_cyclotomic_product(&z("-t^3")).unwrap().is_product);
        assert!(!is_cyclotomic_product(&z("t^2 - 3*t + 1")).unwrap().is_product);
        assert!(is_cyclotomic_product(&LaurentPoly::zero(RingSpec::integers(1))).is_err());
    }
}
