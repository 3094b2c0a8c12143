use proptest::prelude::*;

use ramsey_rings::builder::{self, BuildBounds};
use ramsey_rings::configs;
use ramsey_rings::{GaussianInt, LipschitzQuat, Ring, SequenceSource, SetDescription};

type G = GaussianInt;
type Q = LipschitzQuat;

fn gauss_seq() -> impl Strategy<Value = Vec<G>> {
    prop::collection::vec((-50i64..=50, -50i64..=50).prop_map(|(a, b)| G::new(a, b)), 300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // Rational moduli make the ideal absorb products, so the builder must
    // always find a subsystem.
    #[test]
    fn rational_ideals_always_build(terms in gauss_seq(), z in 2i64..=4) {
        let x = SequenceSource::Explicit(terms);
        let a = SetDescription::ideal(G::from(z)).unwrap();
        let sys = builder::build_fs_fp(&x, &a, 4, &BuildBounds::default()).unwrap();
        prop_assert!(builder::check_block_system(&x, &sys).unwrap());
        for d in 1..=4 {
            prop_assert!(builder::verify_fs_fp(&sys.truncate(d).terms, &a).unwrap().passes());
        }
    }

    #[test]
    fn unions_of_ideals_build(terms in gauss_seq()) {
        let x = SequenceSource::Explicit(terms);
        let a: SetDescription<G> = "ideal(2) | ideal(3)".parse().unwrap();
        let sys = builder::build_fs_fp(&x, &a, 3, &BuildBounds::default()).unwrap();
        prop_assert!(builder::verify_fs_fp(&sys.terms, &a).unwrap().passes());
    }

    #[test]
    fn quaternion_left_products(
        terms in prop::collection::vec((-9i64..=9, -9i64..=9, -9i64..=9, -9i64..=9)
            .prop_map(|(a, b, c, d)| Q::new(a, b, c, d)), 200)
    ) {
        let y = SequenceSource::Explicit(terms);
        let a = SetDescription::ideal(Q::from(2)).unwrap();
        let sys = builder::build_fs_leftprod(&y, &a, 4, &BuildBounds::default()).unwrap();
        prop_assert!(builder::check_block_system(&y, &sys).unwrap());
        prop_assert!(builder::verify_fs_leftprod(&sys.terms, &a).unwrap().passes());
        // Left products are among all ordered products, and these stay in
        // the ideal too because it is two-sided.
        prop_assert!(builder::verify_fs_ap(&sys.terms, &a).unwrap().passes());
    }
}

#[test]
fn verifier_is_independent_of_builder_choice() {
    // Hand-picked terms: 2 and 3 sum to 5, which 'ideal(2) | ideal(3)' lacks.
    let a: SetDescription<G> = "ideal(2) | ideal(3)".parse().unwrap();
    let report = builder::verify_fs_fp(&[G::from(2), G::from(3)], &a).unwrap();
    assert_eq!(report.violations.len(), 1);
    assert_eq!(report.violations[0].value, G::from(5));
    assert_eq!(report.violations[0].expression, "y1+y2");
}

#[test]
fn gaussian_interleave_builds_in_ideal() {
    let x: SequenceSource<G> = configs::embed(&(1..=200).collect::<Vec<_>>());
    let w = configs::interleave_gaussian(&x);
    let a = SetDescription::ideal(G::new(1, 1)).unwrap();
    let sys = builder::build_fs_fp(&w, &a, 5, &BuildBounds::default()).unwrap();
    assert!(builder::check_block_system(&w, &sys).unwrap());
    assert!(sys.terms.iter().all(|t| G::new(1, 1).divides(t).unwrap()));
    assert!(!sys.terms.iter().any(Ring::is_zero));
}
