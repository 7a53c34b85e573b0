mod common;

use alexmod::ideal::{ideal_member, ideals_equal, quotient_fg_over_z, strong_groebner, unit_ends_analysis, IdealGenerators};
use alexmod::matrix::PolyMatrix;
use alexmod::pipeline::module_fg_over_z;
use alexmod::random::random_poly;
use alexmod::{Error, LaurentPoly, RingSpec};
use num_bigint::BigInt;
use common::{brute_member, truncation_fg, unit_ends, zt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ideal(gens: &[&str]) -> IdealGenerators {
    IdealGenerators::new(RingSpec::integers(1), gens.iter().map(|s| zt(s)).collect()).unwrap()
}

/// Univariate integer polynomial of degree at most `deg`, coefficients in `[-c, c]`.
fn random_zt<R: Rng>(rng: &mut R, deg: i64, c: i64) -> LaurentPoly {
    let coeffs: Vec<BigInt> = (0..=deg).map(|_| BigInt::from(rng.gen_range(-c..=c))).collect();
    LaurentPoly::from_dense(RingSpec::integers(1), 0, &coeffs)
}

#[test]
fn saturation_is_not_automatic() {
    // 4 and t(t + 2) generate an ideal containing t + 2 only after dividing out t
    let i = ideal(&["4", "t^2 + 2*t"]);
    assert!(ideal_member(&zt("t + 2"), &i).unwrap());
    assert!(ideal_member(&zt("t + 2"), &ideal(&["4", "t + 6"])).unwrap());
    assert!(ideal_member(&zt("t^-2 + 2*t^-3"), &i).unwrap());
    // t is a unit, so -2 = t mod I makes I the unit ideal
    assert!(ideal_member(&zt("1"), &i).unwrap());
    assert!(brute_member(&zt("1"), i.gens(), 6));
    let j = ideal(&["4", "t^2 + 2*t + 2"]);
    assert_eq!(ideal_member(&zt("1"), &j).unwrap(), brute_member(&zt("1"), j.gens(), 10));
}

#[test]
fn membership_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let ring = RingSpec::integers(1);
    let mut members = 0;
    for _ in 0..150 {
        let k = rng.gen_range(1..=2);
        let gens: Vec<LaurentPoly> = (0..k).map(|_| random_zt(&mut rng, 2, 3)).collect();
        let i = IdealGenerators::new(ring, gens.clone()).unwrap();
        // a member by construction, a perturbed member and a random element
        let mut f = LaurentPoly::zero(ring);
        for g in &gens {
            f = f.try_add(&g.try_mul(&random_poly(&mut rng, ring, 2, 2, 2)).unwrap()).unwrap();
        }
        let cands = [f.clone(), f.try_add(&LaurentPoly::one(ring)).unwrap(), random_zt(&mut rng, 3, 3)];
        for c in &cands {
            let fast = ideal_member(c, &i).unwrap();
            let slow = brute_member(c, &gens, 8);
            assert_eq!(fast, slow, "{c} in {:?}", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>());
            members += fast as usize;
        }
        assert!(ideal_member(&f, &i).unwrap());
    }
    assert!(members >= 150);
}

#[test]
fn strong_basis_generates_the_same_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let gens: Vec<LaurentPoly> = (0..3).map(|_| random_zt(&mut rng, 3, 4)).collect();
        let i = IdealGenerators::new(RingSpec::integers(1), gens.clone()).unwrap();
        let b = strong_groebner(&i).unwrap();
        for g in b.gens() {
            assert!(brute_member(g, &gens, 10), "{g}");
        }
        assert!(ideals_equal(&i, &b).unwrap());
    }
}

#[test]
fn cyclic_quotients_follow_end_coefficients() {
    for f in ["2*t^2 - 3*t + 2", "t^2 - 3*t + 1", "t - 2", "2*t - 1", "t^3 + 5*t - 1", "3"] {
        let p = zt(f);
        assert_eq!(quotient_fg_over_z(&ideal(&[f])).unwrap(), unit_ends(&p), "{f}");
    }
    assert_eq!(quotient_fg_over_z(&IdealGenerators::zero(RingSpec::integers(1))), Err(Error::RankInfinite));
}

#[test]
fn decider_matches_truncation_oracle_on_random_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut fg, mut total) = (0, 0);
    while total < 50 {
        let k = rng.gen_range(1..=3);
        let deg = rng.gen_range(0..=4);
        let gens: Vec<LaurentPoly> = (0..k).map(|_| random_zt(&mut rng, deg, 5)).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        total += 1;
        let i = IdealGenerators::new(RingSpec::integers(1), gens.clone()).unwrap();
        let verdict = quotient_fg_over_z(&i).unwrap();
        let rel: Vec<Vec<LaurentPoly>> = gens.iter().map(|g| vec![g.clone()]).collect();
        assert_eq!(verdict, truncation_fg(1, &rel), "{:?}", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>());
        fg += verdict as usize;
    }
    assert!(fg > 0 && fg < 50);
}

#[test]
fn unit_ends_witness_lies_in_ideal() {
    let i = ideal(&["2*t + 1", "t^2 + 3"]);
    let a = unit_ends_analysis(&i).unwrap();
    if let Some(w) = &a.witness {
        assert!(unit_ends(w));
        assert!(brute_member(w, i.gens(), 10));
    }
    assert_eq!(a.holds(), a.witness.is_some());
}

#[test]
fn module_decider_on_cyclic_and_diagonal_presentations() {
    let ring = RingSpec::integers(1);
    let m = PolyMatrix::diagonal(ring, vec![zt("t - 1"), zt("2")]);
    assert!(!module_fg_over_z(&m).unwrap().fg_over_z);
    let m = PolyMatrix::diagonal(ring, vec![zt("t - 1"), zt("t^2 + t + 1")]);
    assert!(module_fg_over_z(&m).unwrap().fg_over_z);
}
