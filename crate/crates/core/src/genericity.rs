//! Genericity of a specialization `t_i -> t^{alpha_i}` relative to a generator set.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::RhoSpec;
use crate::error::{Error, Result};
use crate::ideal::IdealGenerators;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionA {
    pub pass: bool,
    /// First generator whose specialization is nonzero.
    pub witness_generator: Option<usize>,
    /// On failure: every generator (all specialize to zero).
    pub vanishing_generators: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionWitness {
    pub generator: usize,
    pub b: Vec<i64>,
    pub b_prime: Vec<i64>,
    pub dot: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionB {
    pub pass: bool,
    pub collision: Option<CollisionWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericityReport {
    pub alpha: RhoSpec,
    pub condition_a: ConditionA,
    pub condition_b: ConditionB,
}

impl GenericityReport {
    pub fn passes(&self) -> bool {
        self.condition_a.pass && self.condition_b.pass
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if !self.condition_a.pass {
            parts.push("every generator specializes to zero".to_string());
        }
        if let Some(w) = &self.condition_b.collision {
            parts.push(format!("generator {} has exponents {:?} and {:?} with equal pairing {}", w.generator, w.b, w.b_prime, w.dot));
        }
        parts.join("; ")
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Condition (a): some generator survives the specialization. Condition (b):
/// within each generator, all exponent vectors pair to distinct values with alpha.
pub fn check_genericity(ideal: &IdealGenerators, alpha: &RhoSpec) -> Result<GenericityReport> {
    alpha.check_len(ideal.ring().nvars)?;
    let canon = ideal.canonical();
    let gens = canon.gens();
    let mut witness_generator = None;
    for (j, g) in gens.iter().enumerate() {
        if !g.specialize(&alpha.alpha)?.is_zero() {
            witness_generator = Some(j);
            break;
        }
    }
    let condition_a = ConditionA {
        pass: witness_generator.is_some(),
        witness_generator,
        vanishing_generators: if witness_generator.is_some() { Vec::new() } else { (0..gens.len()).collect() },
    };
    let mut collision = None;
    'outer: for (j, g) in gens.iter().enumerate() {
        let exps: Vec<&Vec<i64>> = g.terms().map(|(e, _)| e).collect();
        let mut seen: Vec<(i64, &Vec<i64>)> = Vec::with_capacity(exps.len());
        for e in exps {
            let d = dot(&alpha.alpha, e);
            if let Some((_, prev)) = seen.iter().find(|(x, _)| *x == d) {
                collision = Some(CollisionWitness { generator: j, b: (*prev).clone(), b_prime: e.clone(), dot: d });
                break 'outer;
            }
            seen.push((d, e));
        }
    }
    Ok(GenericityReport {
        alpha: alpha.clone(),
        condition_a,
        condition_b: ConditionB { pass: collision.is_none(), collision },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhoSearch {
    pub rho: RhoSpec,
    pub report: GenericityReport,
    pub box_bound: i64,
    pub seed: u64,
    pub tried: usize,
    pub failed: usize,
    pub failure_fraction: f64,
}

/// Primitive vectors of max-norm exactly `s` whose first nonzero entry is positive, in lex order.
fn shell(r: usize, s: i64) -> Vec<Vec<i64>> {
    let side = (2 * s + 1) as usize;
    let mut out = Vec::new();
    let total = side.pow(r as u32);
    for mut code in 0..total {
        let mut v = vec![0i64; r];
        for slot in v.iter_mut().rev() {
            *slot = (code % side) as i64 - s;
            code /= side;
        }
        if v.iter().map(|x| x.abs()).max() != Some(s) {
            continue;
        }
        if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            continue;
        }
        if v.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            continue;
        }
        out.push(v);
    }
    out
}

/// Seeded scan of `[-B, B]^r` by increasing max-norm, shuffled within each shell.
pub fn find_generic_rho(ideal: &IdealGenerators, box_bound: i64, seed: u64) -> Result<RhoSearch> {
    if ideal.is_zero() {
        return Err(Error::ZeroInput("find_generic_rho"));
    }
    if box_bound < 1 {
        return Err(Error::Usage("box bound must be positive".into()));
    }
    let r = ideal.ring().nvars;
    let canon = ideal.canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut tried, mut failed) = (0usize, 0usize);
    for s in 1..=box_bound {
        let mut cands = shell(r, s);
        cands.shuffle(&mut rng);
        for alpha in cands {
            tried += 1;
            let rho = RhoSpec::new(alpha)?;
            let report = check_genericity(&canon, &rho)?;
            if report.passes() {
                return Ok(RhoSearch {
                    rho,
                    report,
                    box_bound,
                    seed,
                    tried,
                    failed,
                    failure_fraction: failed as f64 / tried as f64,
                });
            }
            failed += 1;
        }
    }
    Err(Error::GenericSearchExhausted(box_bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::poly_text::parse_poly;
    use crate::ring::RingSpec;

    fn ideal(gens: &[&str]) -> IdealGenerators {
        let ring = RingSpec::integers(2);
        IdealGenerators::new(ring, gens.iter().map(|s| parse_poly(s, ring).unwrap()).collect::<Vec<LaurentPoly>>()).unwrap()
    }

    fn rho(a: &[i64]) -> RhoSpec {
        RhoSpec::new(a.to_vec()).unwrap()
    }

    #[test]
    fn genericity_examples() {
        let r = check_genericity(&ideal(&["t1 - 1", "t2 - 1"]), &rho(&[1, 2])).unwrap();
        assert!(r.passes());
        let r = check_genericity(&ideal(&["t1 - t2"]), &rho(&[1, 1])).unwrap();
        assert!(!r.condition_b.pass);
        let w = r.condition_b.collision.unwrap();
        assert_eq!((w.b, w.b_prime, w.dot), (vec![0, 1], vec![1, 0], 1));
        let r = check_genericity(&ideal(&["t1*t2 - t1 - t2"]), &rho(&[1, 2])).unwrap();
        assert!(r.passes());
    }

    #[test]
    fn condition_a_failure_has_witness() {
        // t1 - t2 vanishes along alpha = (1, 1)
        let r = check_genericity(&ideal(&["t1 - t2"]), &rho(&[1, 1])).unwrap();
        assert!(!r.condition_a.pass);
    }

    #[test]
    fn search_examples() {
        let s = find_generic_rho(&ideal(&["t1 - 1", "t2 - 1"]), 3, 7).unwrap();
        assert!(s.report.passes());
        let s = find_generic_rho(&ideal(&["t1 - t2"]), 3, 7).unwrap();
        assert_ne!(s.rho.alpha[0], s.rho.alpha[1]);
        assert!(matches!(find_generic_rho(&ideal(&["0"]), 3, 7), Err(Error::ZeroInput(_))));
        assert_eq!(find_generic_rho(&ideal(&["t1 - 1"]), 3, 1).unwrap(), find_generic_rho(&ideal(&["t1 - 1"]), 3, 1).unwrap());
    }

    #[test]
    fn shells_are_primitive_and_normalized() {
        let s2 = shell(2, 2);
        assert!(s2.contains(&vec![1, 2]) && s2.contains(&vec![2, -1]) && !s2.contains(&vec![2, 2]) && !s2.contains(&vec![-1, 2]));
        assert_eq!(shell(2, 1).len(), 4);
    }
}
