use ltc_core::rootsys::{positive_roots, root_index, Root, Weight};
use ltc_core::symrep::{generic_rank_with, Sampler, SymFamily};
use ltc_core::weyl::{RootSet, SignedPermutation};
use proptest::prelude::*;
use rand::Rng;

fn signed_perm(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(prop::bool::ANY, n))
        .prop_map(|(perm, flips)| {
            let signs = flips.into_iter().map(|f| if f { -1 } else { 1 }).collect();
            SignedPermutation::new(perm, signs).unwrap()
        })
}

fn triple() -> impl Strategy<Value = (SignedPermutation, SignedPermutation, SignedPermutation)> {
    (1usize..=6).prop_flat_map(|n| (signed_perm(n), signed_perm(n), signed_perm(n)))
}

proptest! {
    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_identity((a, _, _) in triple()) {
        let id = SignedPermutation::identity(a.rank());
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), id.clone());
        prop_assert_eq!(a.inverse().compose(&a).unwrap(), id.clone());
        prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
    }

    #[test]
    fn action_is_a_homomorphism(
        (a, b, _) in triple(),
        seed in any::<u64>(),
    ) {
        let n = a.rank();
        let mut rng = Sampler::new(seed).rng(0);
        let lambda = Weight::new((0..n).map(|_| rng.gen_range(-9..=9)).collect());
        let lhs = a.compose(&b).unwrap().act(&lambda).unwrap();
        let rhs = a.act(&b.act(&lambda).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_form_round_trips((a, _, _) in triple()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<SignedPermutation>().unwrap(), a);
    }

    #[test]
    fn weyl_group_permutes_roots((a, _, _) in triple()) {
        for r in positive_roots(a.rank()).unwrap() {
            let image = a.act(r.weight()).unwrap();
            prop_assert!(Root::from_weight(image).is_ok());
        }
    }
}

#[test]
fn root_order_survives_serialization() {
    for n in 1..=8 {
        let roots = positive_roots(n).unwrap();
        let weights: Vec<&Weight> = roots.iter().map(Root::weight).collect();
        let json = serde_json::to_string(&weights).unwrap();
        let back: Vec<Weight> = serde_json::from_str(&json).unwrap();
        for (i, w) in back.into_iter().enumerate() {
            let root = Root::from_weight(w).unwrap();
            assert_eq!(root_index(n, &root), Some(i));
        }
    }
}

#[test]
fn generic_rank_is_seed_stable_on_random_subfamilies() {
    let picker = Sampler::new(2024);
    let mut rng = picker.rng(0);
    for case in 0..1000u64 {
        let n = rng.gen_range(1..=5);
        let pplus = RootSet::pplus(n).unwrap();
        let subset: Vec<usize> = pplus.indices().filter(|_| rng.gen_bool(0.4)).collect();
        let fam = SymFamily::span_of(&RootSet::from_indices(n, subset).unwrap()).unwrap();
        let a = generic_rank_with(&fam, 4, &mut Sampler::new(1).rng(case));
        let b = generic_rank_with(&fam, 4, &mut Sampler::new(99).rng(case));
        assert_eq!(a, b, "case {case}");
    }
}
