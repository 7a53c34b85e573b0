use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring of a Laurent polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoeffRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoeffRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoeffRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoeffRing::Integers)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            CoeffRing::PrimeField(p) => p,
            _ => 0,
        }
    }

    /// Parses `Z`, `Q` or `Fp:<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(CoeffRing::Integers),
            "Q" => Ok(CoeffRing::Rationals),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .and_then(|p| p.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidRing(format!("unknown coefficient ring {other:?}")))?;
                CoeffRing::prime_field(p)
            }
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// The Laurent polynomial ring `k[t_1^±, ..., t_r^±]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    pub coeffs: CoeffRing,
    pub nvars: usize,
}

impl RingSpec {
    pub fn new(coeffs: CoeffRing, nvars: usize) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if let CoeffRing::PrimeField(p) = coeffs {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(RingSpec { coeffs, nvars })
    }

    pub fn integers(nvars: usize) -> Self {
        RingSpec { coeffs: CoeffRing::Integers, nvars }
    }

    pub fn rationals(nvars: usize) -> Self {
        RingSpec { coeffs: CoeffRing::Rationals, nvars }
    }

    pub fn with_coeffs(self, coeffs: CoeffRing) -> Self {
        RingSpec { coeffs, ..self }
    }

    pub fn with_nvars(self, nvars: usize) -> Self {
        RingSpec { nvars, ..self }
    }

    pub(crate) fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{} vars]", self.coeffs, self.nvars)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rings() {
        assert_eq!(CoeffRing::parse("Z").unwrap(), CoeffRing::Integers);
        assert_eq!(CoeffRing::parse("Fp:7").unwrap(), CoeffRing::PrimeField(7));
        assert_eq!(CoeffRing::parse("Fp:8"), Err(Error::NotPrime(8)));
        assert!(CoeffRing::parse("R").is_err());
        assert!(RingSpec::new(CoeffRing::Integers, 0).is_err());
    }

    #[test]
    fn display_round_trips() {
        for c in [CoeffRing::Integers, CoeffRing::Rationals, CoeffRing::PrimeField(13)] {
            assert_eq!(CoeffRing::parse(&c.to_string()).unwrap(), c);
        }
    }
}
