//! Text grammar for Laurent polynomials.
//!
//! ```text
//! poly     := [sign] term (sign term)*
//! term     := number ['*'] monomial | number | monomial
//! number   := digits ['/' digits]
//! monomial := factor ('*' factor)*
//! factor   := 't' [index] ['^' ['-'] digits]
//! ```
//!
//! `t` without an index is only accepted in one-variable rings. Formatting
//! lists terms in descending lexicographic order of exponents.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ring::{CoeffRing, RingSpec};

pub fn format_monomial(exp: &[i64]) -> String {
    let univariate = exp.len() == 1;
    let mut parts = Vec::new();
    for (i, &e) in exp.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if univariate { "t".to_string() } else { format!("t{}", i + 1) };
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

pub fn format_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (exp, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = format_monomial(exp);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: RingSpec,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: 1, column: at + 1, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<Option<BigRational>> {
        let start = self.pos;
        let Some(num) = self.digits() else { return Ok(None) };
        let num: BigInt = num.parse().unwrap();
        if self.peek() == Some('/') {
            self.pos += 1;
            let Some(den) = self.digits() else {
                return self.err(self.pos, "expected denominator after '/'");
            };
            let den: BigInt = den.parse().unwrap();
            if den.is_zero() {
                return self.err(start, "zero denominator");
            }
            if self.ring.coeffs == CoeffRing::Integers && !(&num % &den).is_zero() {
                return self.err(start, "non-integer coefficient over Z");
            }
            if let CoeffRing::PrimeField(p) = self.ring.coeffs {
                if (&den % BigInt::from(p)).is_zero() {
                    return self.err(start, format!("denominator not invertible mod {p}"));
                }
            }
            return Ok(Some(BigRational::new(num, den)));
        }
        Ok(Some(BigRational::from_integer(num)))
    }

    fn factor(&mut self, exp: &mut [i64]) -> Result<()> {
        let start = self.pos;
        if self.peek() != Some('t') {
            return self.err(start, "expected variable 't'");
        }
        self.pos += 1;
        let idx = match self.digits() {
            Some(d) => {
                let k: usize = d.parse().map_err(|_| Error::Parse {
                    line: 1,
                    column: start + 2,
                    message: "variable index too large".into(),
                })?;
                if k == 0 || k > self.ring.nvars {
                    return self.err(start, format!("variable t{k} out of range 1..={}", self.ring.nvars));
                }
                k - 1
            }
            None => {
                if self.ring.nvars != 1 {
                    return self.err(start, "bare 't' requires a one-variable ring; use t1, t2, ...");
                }
                0
            }
        };
        self.skip_ws();
        let mut e = 1i64;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let estart = self.pos;
            let neg = match self.peek() {
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some('+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let Some(d) = self.digits() else {
                return self.err(estart, "malformed exponent");
            };
            let v: i64 = match d.parse() {
                Ok(v) => v,
                Err(_) => return self.err(estart, "exponent out of range"),
            };
            e = if neg { -v } else { v };
        }
        exp[idx] += e;
        Ok(())
    }

    fn monomial(&mut self, exp: &mut [i64]) -> Result<()> {
        self.factor(exp)?;
        loop {
            self.skip_ws();
            let save = self.pos;
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some('t') {
                    self.factor(exp)?;
                    continue;
                }
                return self.err(save + 1, "expected variable after '*'");
            }
            return Ok(());
        }
    }

    fn term(&mut self) -> Result<(Vec<i64>, BigRational)> {
        let start = self.pos;
        let mut exp = vec![0i64; self.ring.nvars];
        let coeff = self.number()?;
        self.skip_ws();
        match coeff {
            Some(c) => {
                if self.peek() == Some('*') {
                    self.pos += 1;
                    self.skip_ws();
                    self.monomial(&mut exp)?;
                } else if self.peek() == Some('t') {
                    self.monomial(&mut exp)?;
                }
                Ok((exp, c))
            }
            None => {
                if self.peek() != Some('t') {
                    return self.err(start, "expected a coefficient or a variable");
                }
                self.monomial(&mut exp)?;
                Ok((exp, BigRational::one()))
            }
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.ring);
        self.skip_ws();
        if self.peek().is_none() {
            return self.err(0, "empty polynomial");
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = 1;
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -1;
                    self.pos += 1;
                }
                None => return Ok(out),
                _ if first => {}
                Some(c) => return self.err(self.pos, format!("unexpected '{c}', expected '+' or '-'")),
            }
            first = false;
            self.skip_ws();
            let (exp, c) = self.term()?;
            let c = if sign < 0 { -c } else { c };
            out = out.try_add(&LaurentPoly::monomial(self.ring, exp, c))?;
        }
    }
}

/// Parses a polynomial in the canonical grammar. Errors carry a 1-based column.
pub fn parse_poly(src: &str, ring: RingSpec) -> Result<LaurentPoly> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, ring, _src: src };
    p.poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formats_canonically() {
        let z1 = RingSpec::integers(1);
        let p = parse_poly("2 - 3t + 2*t^2", z1).unwrap();
        assert_eq!(p.to_string(), "2*t^2 - 3*t + 2");
        let z2 = RingSpec::integers(2);
        let q = parse_poly("-1 + t1 * t2^-1", z2).unwrap();
        assert_eq!(q.to_string(), "t1*t2^-1 - 1");
        let q = parse_poly("3/2*t", RingSpec::rationals(1)).unwrap();
        assert_eq!(q.to_string(), "3/2*t");
        assert_eq!(parse_poly("t - t", z1).unwrap().to_string(), "0");
        assert_eq!(parse_poly("-t^-1", z1).unwrap().to_string(), "-t^-1");
    }

    #[test]
    fn rejects_malformed_input_with_positions() {
        let z1 = RingSpec::integers(1);
        let z2 = RingSpec::integers(2);
        let col = |r: Result<LaurentPoly>| match r {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(col(parse_poly("t^x", z1)), 3);
        assert_eq!(col(parse_poly("t^-", z1)), 3);
        assert_eq!(col(parse_poly("t1 + t3", z2)), 6);
        assert_eq!(col(parse_poly("t + 1", z2)), 1);
        assert_eq!(col(parse_poly("1/2*t", z1)), 1);
        assert_eq!(col(parse_poly("2 t 3", z1)), 5);
        assert!(parse_poly("", z1).is_err());
        assert!(parse_poly("t0", z1).is_err());
        assert!(parse_poly("t*", z1).is_err());
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
        let ring = RingSpec::integers(nvars);
        proptest::collection::vec((proptest::collection::vec(-3i64..=3, nvars), -20i64..=20), 0..6).prop_map(
            move |terms| {
                LaurentPoly::from_terms(
                    ring,
                    terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(p in arb_poly(2)) {
            let text = p.to_string();
            let back = parse_poly(&text, p.ring()).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
