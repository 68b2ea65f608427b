use std::collections::BTreeSet;

use proptest::prelude::*;

use sl2char::charvariety::Triple;
use sl2char::mcgdyn::{dm_triples, is_admissible, orbit_bfs, GeneratingSet, TripleTransform};
use sl2char::random::{random_triple, seeded_rng};

fn triple() -> impl Strategy<Value = Triple> {
    any::<u64>().prop_map(|s| random_triple(&mut seeded_rng(s)))
}

fn transform() -> impl Strategy<Value = TripleTransform> {
    prop::sample::select(TripleTransform::ALL.to_vec())
}

fn dm_seed() -> impl Strategy<Value = Triple> {
    prop::sample::select(dm_triples().to_vec())
}

fn orbit_set(seed: &Triple, transforms: &[TripleTransform]) -> BTreeSet<Triple> {
    let r = orbit_bfs(seed, transforms, 10_000);
    assert!(r.is_finite());
    r.orbit.unwrap().into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kappa_is_invariant(x in triple(), t in transform()) {
        prop_assert_eq!(t.apply(&x).kappa(), x.kappa());
    }

    #[test]
    fn inverses_compose_to_identity(x in triple(), t in transform()) {
        prop_assert_eq!(t.inverse().apply(&t.apply(&x)), x.clone());
        prop_assert_eq!(t.apply(&t.inverse().apply(&x)), x);
    }

    #[test]
    fn beta_factorizations_hold(x in triple()) {
        for b in [TripleTransform::Beta1, TripleTransform::Beta2] {
            let f = b.beta_factorization().unwrap();
            prop_assert_eq!(TripleTransform::compose(&f, &x), b.apply(&x));
        }
    }

    #[test]
    fn orbit_ignores_generator_order_and_seed(
        seed in dm_seed(),
        order in Just(GeneratingSet::Beta.transforms()).prop_shuffle(),
        pick in any::<prop::sample::Index>(),
    ) {
        let base = orbit_set(&seed, &GeneratingSet::Beta.transforms());
        prop_assert_eq!(&orbit_set(&seed, &order), &base);
        let other = base.iter().nth(pick.index(base.len())).unwrap().clone();
        prop_assert_eq!(&orbit_set(&other, &order), &base);
    }

    #[test]
    fn finite_orbits_are_admissible(seed in dm_seed()) {
        for x in orbit_set(&seed, &GeneratingSet::Beta.transforms()) {
            prop_assert!(is_admissible(&x));
        }
    }

    #[test]
    fn transform_names_round_trip(t in transform()) {
        prop_assert_eq!(t.name().parse::<TripleTransform>().unwrap(), t);
    }
}
