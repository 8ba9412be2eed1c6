//! Property tests for the polynomial layer: ring laws on random triples and
//! the parser round-trip.

use efverify_core::field::Fp;
use efverify_core::monomial::Monomial;
use efverify_core::parse::parse_poly;
use efverify_core::poly::{Polynomial, Ring};
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    let term = (
        proptest::collection::vec(0u8..4, 4),
        1u64..efverify_core::DEFAULT_PRIME,
    );
    proptest::collection::vec(term, 0..12).prop_map(|terms| {
        let fp = Fp::default();
        let ring = Ring::indexed("s", 4);
        Polynomial::from_terms(
            &ring,
            &fp,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exps(&e), c))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_commutative(f in arb_poly(), g in arb_poly()) {
        let fp = Fp::default();
        prop_assert_eq!(f.mul(&fp, &g).unwrap(), g.mul(&fp, &f).unwrap());
    }

    #[test]
    fn multiplication_associative(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        let fp = Fp::default();
        let a = f.mul(&fp, &g).unwrap().mul(&fp, &h).unwrap();
        let b = f.mul(&fp, &g.mul(&fp, &h).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn multiplication_distributive(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        let fp = Fp::default();
        let a = f.mul(&fp, &g.add(&fp, &h).unwrap()).unwrap();
        let b = f.mul(&fp, &g).unwrap().add(&fp, &f.mul(&fp, &h).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn print_parse_roundtrip(f in arb_poly()) {
        let fp = Fp::default();
        let ring = Ring::indexed("s", 4);
        let text = f.print();
        let g = parse_poly(&fp, &ring, &text).unwrap();
        prop_assert_eq!(f, g);
    }
}
