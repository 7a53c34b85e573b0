//! Concrete fields used for evaluation and one-variable linear algebra:
//! Q, F_p and F_{p^e}.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::is_prime;

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Image of a rational number, `None` if its denominator vanishes in the field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    /// Canonical rational representative, when the element lies in the prime field.
    fn to_rational(&self, a: &Self::Elem) -> Option<BigRational>;

    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            n >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::from_integer(1.into())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
}

/// `F_p` with machine-word arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn reduce_rational(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64().unwrap();
    Some(num * pow_mod(den, p - 2, p) % p)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        reduce_rational(q, self.p)
    }
    fn to_rational(&self, a: &u64) -> Option<BigRational> {
        Some(BigRational::from_integer((*a).into()))
    }
}

/// `F_{p^e}` as `F_p[x]/(m(x))` for the first monic irreducible `m` of degree
/// `e` in lexicographic order of its coefficient vector. Elements are encoded
/// as integers whose base-`p` digits are the coefficients; multiplication goes
/// through discrete log tables.
#[derive(Debug, Clone)]
pub struct ExtField {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

const MAX_EXT_FIELD: u64 = 1 << 20;

impl PartialEq for ExtField {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.e == o.e
    }
}

impl ExtField {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidRing("extension degree must be positive".into()));
        }
        let q = p.checked_pow(e).filter(|&q| q <= MAX_EXT_FIELD).ok_or(Error::FieldTooLarge(u64::MAX))?;
        let modulus = first_irreducible(p, e as usize);
        let mut field = ExtField { p, e, q, modulus, exp: Vec::new(), log: Vec::new() };
        field.build_tables();
        Ok(field)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Coefficients of the defining polynomial, low to high (monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn digits(&self, a: u32) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut a = a as u64;
        for _ in 0..self.e {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    fn encode(&self, d: &[u64]) -> u32 {
        d.iter().rev().fold(0u64, |acc, &x| acc * self.p + x) as u32
    }

    /// Schoolbook product modulo the defining polynomial; used to build tables.
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        for k in (e..2 * e).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..e {
                prod[k - e + i] = (prod[k - e + i] + self.p * self.p - c * self.modulus[i] % self.p) % self.p;
            }
            prod[k] = 0;
        }
        self.encode(&prod[..e])
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        for g in 2..self.q as u32 {
            let mut exp = Vec::with_capacity(n);
            let mut x = 1u32;
            let mut ok = true;
            for k in 0..n {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = self.mul_slow(x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0u32; self.q as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[v as usize] = k as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        // q = 2: the only unit is 1
        self.exp = vec![1];
        self.log = vec![0; self.q as usize];
    }

    /// Every nonzero element, in discrete-log order starting from 1.
    pub fn units(&self) -> impl Iterator<Item = u32> + '_ {
        self.exp.iter().copied()
    }

    pub fn embed(&self, c: u64) -> u32 {
        (c % self.p) as u32
    }
}

fn first_irreducible(p: u64, e: usize) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = p.pow(e as u32);
    for code in 0..count {
        let mut m = Vec::with_capacity(e + 1);
        let mut c = code;
        for _ in 0..e {
            m.push(c % p);
            c /= p;
        }
        m.push(1);
        if is_irreducible_mod_p(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree at most deg/2.
fn is_irreducible_mod_p(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if m[0] == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        for code in 0..p.pow(d as u32) {
            let mut f = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                f.push(c % p);
                c /= p;
            }
            f.push(1);
            if rem_mod_p(m, &f, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn rem_mod_p(a: &[u64], monic: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let d = monic.len() - 1;
    while r.len() > d {
        let c = r.pop().unwrap();
        let k = r.len() - d;
        for i in 0..d {
            r[k + i] = (r[k + i] + p - c * monic[i] % p) % p;
        }
    }
    r
}

impl Field for ExtField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.e == 1 {
            return ((*a as u64 + *b as u64) % self.p) as u32;
        }
        let (mut a, mut b) = (*a as u64, *b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        let mut a = *a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let k = (self.log[*a as usize] as u64 + self.log[*b as usize] as u64) % n;
        self.exp[k as usize]
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        let n = self.q - 1;
        let k = (n - self.log[*a as usize] as u64) % n;
        self.exp[k as usize]
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn from_rational(&self, q: &BigRational) -> Option<u32> {
        reduce_rational(q, self.p).map(|x| x as u32)
    }
    fn to_rational(&self, a: &u32) -> Option<BigRational> {
        ((*a as u64) < self.p).then(|| BigRational::from_integer((*a).into()))
    }
    fn pow(&self, a: &u32, e: i64) -> u32 {
        if *a == 0 {
            assert!(e >= 0, "negative power of zero");
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as i64;
        let k = (self.log[*a as usize] as i64 * e).rem_euclid(n);
        self.exp[k as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f25_is_a_field() {
        let f = ExtField::new(5, 2).unwrap();
        assert_eq!(f.order(), 25);
        assert_eq!(f.units().count(), 24);
        for a in 1..25u32 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
            for b in 0..25u32 {
                assert_eq!(f.mul(&a, &b), f.mul_slow(a, b));
                assert_eq!(f.sub(&f.add(&a, &b), &b), a);
            }
        }
        // the prime subfield is closed: 2 * 3 = 1 in F_5
        assert_eq!(f.mul(&2, &3), 1);
    }

    #[test]
    fn small_fields() {
        let f2 = ExtField::new(2, 1).unwrap();
        assert_eq!(f2.units().collect::<Vec<_>>(), vec![1]);
        let f8 = ExtField::new(2, 3).unwrap();
        assert_eq!(f8.units().count(), 7);
        assert_eq!(f8.pow(&f8.units().nth(1).unwrap(), 7), 1);
        assert!(ExtField::new(4, 1).is_err());
    }

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.from_rational(&BigRational::new((-1).into(), 2.into())), Some(3));
        assert_eq!(f.from_rational(&BigRational::new(1.into(), 7.into())), None);
        assert_eq!(f.pow(&3, -1), 5);
    }
}
