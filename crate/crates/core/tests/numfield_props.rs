use proptest::prelude::*;
use rand::Rng;

use sl2char::numfield::{FieldElem, DIM};
use sl2char::random::{random_field_elem, seeded_rng};

fn elem() -> impl Strategy<Value = FieldElem> {
    (any::<u64>(), 0..=DIM)
        .prop_map(|(seed, terms)| random_field_elem(&mut seeded_rng(seed), terms))
}

fn nonzero() -> impl Strategy<Value = FieldElem> {
    elem().prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, FieldElem::zero());
        prop_assert_eq!(&a * &FieldElem::one(), a.clone());
    }

    #[test]
    fn inverses(a in nonzero(), b in elem()) {
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(&(&b / &a) * &a, b);
    }

    #[test]
    fn galois_maps_are_automorphisms(a in elem(), b in elem(), k in 0..DIM) {
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
        prop_assert_eq!(a.galois(k).galois(k), a);
    }

    #[test]
    fn embedding_is_a_homomorphism(a in elem(), b in elem()) {
        let (ea, eb) = (a.embed(53), b.embed(53));
        let prod = (&a * &b).embed(53);
        let sum = (&a + &b).embed(53);
        let scale = 1.0 + ea.norm() * eb.norm() + ea.norm() + eb.norm();
        prop_assert!((prod - ea * eb).norm() <= 1e-12 * scale);
        prop_assert!((sum - (ea + eb)).norm() <= 1e-12 * scale);
    }

    #[test]
    fn text_and_json_round_trip(a in elem()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<FieldElem>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<FieldElem>(&json).unwrap(), a);
    }

    #[test]
    fn squares_have_square_roots(a in elem()) {
        let r = a.square().sqrt();
        prop_assert!(r.is_some());
        prop_assert_eq!(r.unwrap().square(), a.square());
    }

    #[test]
    fn real_order_matches_embedding(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let a = random_field_elem(&mut rng, 4).re();
        let b = FieldElem::frac(rng.gen_range(-20..20), rng.gen_range(1..5));
        let ord = a.cmp_real(&b).unwrap();
        let (x, y) = (a.embed(53).re, b.embed(53).re);
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(ord, x.partial_cmp(&y).unwrap());
        }
    }
}
