use proptest::prelude::*;

use sl2char::charvariety::Representation;
use sl2char::numfield::FieldElem;
use sl2char::random::{random_field_elem, random_sl2, seeded_rng};
use sl2char::surface::{
    cyclic_order_simple_words, cyclic_order_word_count, monodromy_survey, optimal_generators,
    special_dihedral_rep, SurfaceSig,
};

fn sig() -> impl Strategy<Value = SurfaceSig> {
    (1usize..3, 0usize..3).prop_map(|(g, n)| SurfaceSig::new(g, n).unwrap())
}

fn punctured() -> impl Strategy<Value = SurfaceSig> {
    (1usize..3, 1usize..3).prop_map(|(g, n)| SurfaceSig::new(g, n).unwrap())
}

fn nonzero(seed: u64) -> FieldElem {
    let x = random_field_elem(&mut seeded_rng(seed), 2);
    if x.is_zero() {
        FieldElem::from_int(3)
    } else {
        x
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relation_holds(s in punctured(), seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let images = (0..s.free_rank()).map(|_| random_sl2(&mut rng)).collect();
        let rep = Representation::surface(s, images).unwrap();
        let rel = optimal_generators(s).relation_word;
        prop_assert!(rep.evaluate(&rel).unwrap().is_identity());
    }

    #[test]
    fn word_count_formula(s in sig(), k in 1usize..6) {
        let words = cyclic_order_simple_words(s, k);
        prop_assert_eq!(words.len(), cyclic_order_word_count(s, k));
        prop_assert!(words.iter().all(|w| w.len() <= k));
    }

    #[test]
    fn signature_text_round_trip(s in sig()) {
        prop_assert_eq!(s.to_string().parse::<SurfaceSig>().unwrap(), s);
    }

    #[test]
    fn special_dihedral_images_lie_in_d_infinity(
        n in 0usize..3,
        seeds in prop::collection::vec(any::<u64>(), 3),
    ) {
        let lambda = nonzero(seeds[0]);
        let mus: Vec<FieldElem> = (0..n).map(|k| nonzero(seeds[1] ^ k as u64)).collect();
        let rep = special_dihedral_rep(n, &lambda, &mus).unwrap();
        let s = rep.signature().unwrap();
        for g in rep.generator_images() {
            prop_assert!(g.is_diagonal() || g.is_antidiagonal());
        }
        let survey = monodromy_survey(&rep, s, 3, 24).unwrap();
        let traces = survey.trace_set();
        prop_assert!(traces.len() <= survey.entries.len());
        for w in cyclic_order_simple_words(s, 3) {
            let m = rep.evaluate(&w).unwrap();
            prop_assert!(m.is_diagonal() || m.is_antidiagonal());
            if m.is_antidiagonal() {
                prop_assert!(m.trace().is_zero());
            }
        }
    }
}
