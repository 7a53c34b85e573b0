mod common;

use std::collections::BTreeMap;

use alexmod::complex::{FreeComplex, RhoSpec};
use alexmod::corpus;
use alexmod::fox::h1_presentation;
use alexmod::ideal::{quotient_fg_over_z, IdealGenerators};
use alexmod::io::Input;
use alexmod::matrix::PolyMatrix;
use alexmod::pipeline::{fg_pipeline, module_fg_over_z, FgOptions, Verdict};
use alexmod::random::{random_complex, RandomSpec};
use alexmod::{Error, LaurentPoly, RingSpec};
use common::{example, truncation_fg};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn id() -> RhoSpec {
    RhoSpec::new(vec![1]).unwrap()
}

fn cyclic(f: LaurentPoly) -> FreeComplex {
    let ring = f.ring();
    let m = PolyMatrix::from_rows(ring, vec![vec![f]], 1).unwrap();
    FreeComplex::new(ring, 0, 1, vec![1, 1], BTreeMap::from([(1, m)])).unwrap()
}

#[test]
fn cyclic_verdicts_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let ring = RingSpec::integers(1);
    let mut seen = BTreeMap::new();
    for _ in 0..60 {
        let deg = rng.gen_range(0..=3);
        let c: Vec<BigInt> = (0..=deg).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
        let f = LaurentPoly::from_dense(ring, 0, &c);
        if f.is_zero() {
            continue;
        }
        let r = fg_pipeline(&cyclic(f.clone()), (0, 0), &id(), &FgOptions::default()).unwrap();
        let exact = quotient_fg_over_z(&IdealGenerators::new(ring, vec![f.clone()]).unwrap()).unwrap();
        let oracle = truncation_fg(1, &[vec![f.clone()]]);
        assert_eq!(exact, oracle, "{f}");
        match r.verdict {
            Verdict::FgOverZ => assert!(exact, "{f}"),
            Verdict::NotFg => assert!(!exact, "{f}"),
            Verdict::Inconclusive => assert!(r.diagnosis.is_some()),
        }
        *seen.entry(format!("{:?}", r.verdict)).or_insert(0) += 1;
    }
    assert!(seen.len() >= 2, "{seen:?}");
}

#[test]
fn presentation_verdicts_match_h1_cokernels() {
    for (name, fg) in [("trefoil", true), ("figure_eight", true), ("knot_5_2", false), ("circle", true)] {
        let c = example(name);
        let r = fg_pipeline(&c, (0, 1), &id(), &FgOptions::default()).unwrap();
        if r.verdict == Verdict::FgOverZ {
            assert!(fg, "{name}");
        }
        if r.verdict == Verdict::NotFg {
            assert!(!fg, "{name}");
        }
        let Input::Presentation(p) = corpus::load(name).unwrap() else { panic!() };
        let h = h1_presentation(&p, &id()).unwrap();
        if h.matrix.rows() == 0 {
            continue;
        }
        assert_eq!(module_fg_over_z(&h.matrix).unwrap().fg_over_z, fg, "{name}");
        let relations: Vec<Vec<LaurentPoly>> = (0..h.matrix.cols()).map(|j| (0..h.matrix.rows()).map(|i| h.matrix.get(i, j).clone()).collect()).collect();
        assert_eq!(truncation_fg(h.matrix.rows(), &relations), fg, "{name}");
    }
}

#[test]
fn three_way_content_check_holds_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let spec = RandomSpec { coeff_bound: 4, ..RandomSpec::new(RingSpec::integers(1)) };
    let mut runs = 0;
    for _ in 0..200 {
        let c = random_complex(&mut rng, &spec).unwrap();
        match fg_pipeline(&c, (0, 1), &id(), &FgOptions { primes: vec![2, 3, 5, 7, 11], ..FgOptions::default() }) {
            Ok(r) => {
                runs += 1;
                for a in &r.prime_agreement {
                    assert_eq!(a.divides_content, a.generators_vanish_mod_p);
                    assert_eq!(a.generators_vanish_mod_p, !a.torsion_over_fp);
                }
            }
            Err(Error::NonGenericRho(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(runs > 20);
}

#[test]
fn dual_run_uses_involuted_ideals() {
    let opts = FgOptions { dual: true, ..FgOptions::default() };
    let r = fg_pipeline(&example("knot_5_2"), (1, 1), &id(), &opts).unwrap();
    assert!(r.dual);
    assert_eq!(r.verdict, Verdict::NotFg);
    let r = fg_pipeline(&example("trefoil"), (1, 1), &id(), &opts).unwrap();
    assert_eq!(r.verdict, Verdict::FgOverZ);
    // H^2 of a Wirtinger complex has positive rank, so the product ideal vanishes
    assert!(matches!(fg_pipeline(&example("knot_5_2"), (1, 2), &id(), &opts), Err(Error::NonGenericRho(_))));
}
