mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use alexmod::complex::{FreeComplex, RhoSpec};
use alexmod::field::ExtField;
use alexmod::homology::{homology_field, rank_fraction_field};
use alexmod::ideal::ideals_equal;
use alexmod::jumping::{all_characters, evaluate_at_character, homology_dims_at, intersection_observables, jumping_ideal, jumping_ideal_block, CharacterPoint};
use alexmod::matrix::PolyMatrix;
use alexmod::random::{random_complex, random_matrix, random_unimodular, RandomSpec};
use alexmod::ring::CoeffRing;
use alexmod::RingSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rho<R: Rng>(rng: &mut R, r: usize) -> RhoSpec {
    loop {
        let a: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=3)).collect();
        if let Ok(rho) = RhoSpec::new(a) {
            return rho;
        }
    }
}

fn f25() -> Vec<CharacterPoint> {
    all_characters(&Arc::new(ExtField::new(5, 2).unwrap()), 2)
}

#[test]
fn euler_characteristic_over_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in [CoeffRing::Rationals, CoeffRing::PrimeField(2), CoeffRing::PrimeField(7)] {
        let spec = RandomSpec { hi: 3, ..RandomSpec::new(RingSpec::new(k, 1).unwrap()) };
        for _ in 0..25 {
            let c = random_complex(&mut rng, &spec).unwrap();
            let h = homology_field(&c).unwrap();
            let chi: i64 = h.iter().map(|x| if x.degree % 2 == 0 { x.free_rank as i64 } else { -(x.free_rank as i64) }).sum();
            assert_eq!(chi, c.euler_characteristic());
            for x in &h {
                assert_eq!(x.free_rank, rank_fraction_field(&c, x.degree).unwrap());
            }
        }
    }
}

#[test]
fn base_change_and_specialization_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ring = RingSpec::integers(2);
    for _ in 0..30 {
        let c = random_complex(&mut rng, &RandomSpec::new(ring)).unwrap();
        let rho = random_rho(&mut rng, 2);
        for k in [CoeffRing::Rationals, CoeffRing::PrimeField(3)] {
            let a = c.base_change(k).unwrap().specialize(&rho).unwrap();
            let b = c.specialize(&rho).unwrap().base_change(k).unwrap();
            assert_eq!(a, b);
        }
        let m = random_matrix(&mut rng, ring, 2, 3, 2, 1, 3);
        let n = random_matrix(&mut rng, ring, 3, 2, 2, 1, 3);
        let prod = m.mul(&n).unwrap();
        assert_eq!(prod.specialize(&rho.alpha).unwrap(), m.specialize(&rho.alpha).unwrap().mul(&n.specialize(&rho.alpha).unwrap()).unwrap());
        assert_eq!(
            prod.base_change(CoeffRing::PrimeField(5)).unwrap(),
            m.base_change(CoeffRing::PrimeField(5)).unwrap().mul(&n.base_change(CoeffRing::PrimeField(5)).unwrap()).unwrap()
        );
    }
}

#[test]
fn dualize_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let c = random_complex(&mut rng, &RandomSpec { hi: 3, ..RandomSpec::new(RingSpec::integers(2)) }).unwrap();
        let d = c.dualize();
        assert!(d.validate().ok);
        assert_eq!(d.dualize(), c);
        let m = random_matrix(&mut rng, RingSpec::integers(1), 2, 3, 3, 2, 3);
        assert_eq!(m.transpose().involute().transpose().involute(), m);
    }
}

#[test]
fn product_and_block_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let spec = RandomSpec::new(RingSpec::integers(1));
    for _ in 0..30 {
        let c = random_complex(&mut rng, &spec).unwrap();
        for i in c.degrees() {
            let a = jumping_ideal(&c, i).unwrap();
            let b = jumping_ideal_block(&c, i).unwrap();
            if a.is_zero() || b.is_zero() {
                assert_eq!(a.is_zero(), b.is_zero());
            } else {
                assert!(ideals_equal(&a, &b).unwrap(), "degree {i}");
            }
        }
    }
    let chars = f25();
    let spec = RandomSpec::new(RingSpec::new(CoeffRing::PrimeField(5), 2).unwrap());
    for _ in 0..15 {
        let c = random_complex(&mut rng, &spec).unwrap();
        for i in c.degrees() {
            let (a, b) = (jumping_ideal(&c, i).unwrap(), jumping_ideal_block(&c, i).unwrap());
            for chi in &chars {
                assert_eq!(evaluate_at_character(&a, chi).unwrap(), evaluate_at_character(&b, chi).unwrap());
            }
        }
    }
}

/// Adds `R --1--> R` in degrees `i, i-1`, then scrambles bases.
fn add_acyclic<R: Rng>(rng: &mut R, c: &FreeComplex, i: i64) -> FreeComplex {
    let ring = c.ring();
    let one = PolyMatrix::identity(ring, 1);
    let piece = FreeComplex::new(ring, i - 1, i, vec![1, 1], BTreeMap::from([(i, one)])).unwrap();
    let s = c.direct_sum(&piece).unwrap();
    let bases = s.degrees().map(|d| (d, random_unimodular(rng, ring, s.rank(d), 3, 1))).collect();
    s.change_basis(&bases).unwrap()
}

#[test]
fn jumping_loci_are_homotopy_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let chars = f25();
    let spec = RandomSpec::new(RingSpec::new(CoeffRing::PrimeField(5), 2).unwrap());
    for _ in 0..10 {
        let c = random_complex(&mut rng, &spec).unwrap();
        let top = rng.gen_range(c.lo() + 1..=c.hi());
        let e = add_acyclic(&mut rng, &c, top);
        assert!(e.validate().ok);
        for i in c.degrees() {
            let (a, b) = (jumping_ideal(&c, i).unwrap(), jumping_ideal(&e, i).unwrap());
            for chi in &chars {
                assert_eq!(evaluate_at_character(&a, chi).unwrap(), evaluate_at_character(&b, chi).unwrap());
            }
        }
    }
}

#[test]
fn product_locus_is_union_and_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let chars = f25();
    let spec = RandomSpec { hi: 3, ..RandomSpec::new(RingSpec::new(CoeffRing::PrimeField(5), 2).unwrap()) };
    for _ in 0..10 {
        let c = random_complex(&mut rng, &spec).unwrap();
        let small = intersection_observables(&c, (0, 1), 10_000).unwrap();
        let big = intersection_observables(&c, (0, 2), 10_000).unwrap();
        assert!(!small.truncated && !big.truncated);
        for chi in &chars {
            let dims = homology_dims_at(&c, chi).unwrap();
            let in_small = evaluate_at_character(&small.product, chi).unwrap();
            let union = small.factors.iter().any(|f| evaluate_at_character(f, chi).unwrap());
            assert_eq!(in_small, union);
            assert_eq!(in_small, dims[0] > 0 || dims[1] > 0);
            assert!(!in_small || evaluate_at_character(&big.product, chi).unwrap());
        }
    }
}
