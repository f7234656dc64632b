use std::collections::BTreeSet;

use blockcheck_core::blocktheory::block_distribution;
use blockcheck_core::chartable::dixon_schneider;
use blockcheck_core::permgroup::{
    derived_subgroup, quotient_group, real_core, real_elements_under, schreier_sims, PermGroup, Permutation,
};
use blockcheck_core::realconj::{check_perm_lemma, verify_group, VerifyOptions};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// Subgroups of S_n, n ≤ 6, generated by one to three random permutations.
fn group() -> impl Strategy<Value = PermGroup> {
    (2usize..=6)
        .prop_flat_map(|n| proptest::collection::vec(permutation(n), 1..=3))
        .prop_map(|gens| schreier_sims(&gens).unwrap())
}

fn group_with_pair() -> impl Strategy<Value = (PermGroup, usize, usize)> {
    group().prop_flat_map(|g| {
        let k = g.size() as usize;
        (Just(g), 0..k, 0..k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_partition(g in group()) {
        let t = dixon_schneider(&g).unwrap();
        let c = &t.classes;
        prop_assert_eq!(c.sizes.iter().sum::<u64>(), g.size());
        prop_assert!(c.element_orders.iter().all(|o| g.size() % o == 0));
        prop_assert!(c.representatives[0].is_identity());
        let fixed = (0..c.len()).filter(|&i| c.inverse_map[i] == i).count();
        prop_assert_eq!(fixed, c.real_class_indices().len());
    }

    #[test]
    fn table_invariants(g in group()) {
        let t = dixon_schneider(&g).unwrap();
        prop_assert!(t.verify().unwrap().is_empty());
        prop_assert_eq!(t.degrees.iter().map(|d| d * d).sum::<u64>(), g.size());
        prop_assert_eq!(t.len(), t.classes.len());
        prop_assert!(check_perm_lemma(&[("g".into(), &t)]).holds);
    }

    #[test]
    fn reality_is_monotone_in_the_acting_group(g in group()) {
        // For H ≤ G acting on X = H: H-real ⊆ G-real, involutions always real.
        let h = g.subgroup(g.generators().iter().take(1).cloned().collect());
        let by_h: BTreeSet<Permutation> = real_elements_under(&h, &h).unwrap().elements.into_iter().collect();
        let by_g: BTreeSet<Permutation> = real_elements_under(&g, &h).unwrap().elements.into_iter().collect();
        prop_assert!(by_h.is_subset(&by_g));
        for x in h.elements().unwrap().elements() {
            if x.order() <= 2 {
                prop_assert!(by_h.contains(x));
            }
        }
    }

    #[test]
    fn quotient_is_a_homomorphism((g, i, j) in group_with_pair()) {
        let d = derived_subgroup(&g);
        let q = quotient_group(&g, &d).unwrap();
        prop_assert_eq!(q.group.size() * d.size(), g.size());
        let elements = g.elements().unwrap();
        let (x, y) = (&elements.elements()[i], &elements.elements()[j]);
        prop_assert_eq!(q.image(&x.compose(y)).unwrap(), q.image(x).unwrap().compose(&q.image(y).unwrap()));
        prop_assert_eq!(q.image(x).unwrap().is_identity(), d.contains(x));
    }

    #[test]
    fn real_core_lies_in_derived_subgroup(g in group()) {
        let r = real_core(&g).unwrap();
        prop_assert!(r.is_subgroup_of(&derived_subgroup(&g)));
        prop_assert!(r.is_normal_in(&g));
    }

    #[test]
    fn blocks_partition_the_characters(g in group(), p in proptest::sample::select(vec![2u64, 3, 5])) {
        let t = dixon_schneider(&g).unwrap();
        let blocks = block_distribution(&t, p).unwrap();
        let mut all: Vec<usize> = blocks.iter().flat_map(|b| b.character_indices.iter().copied()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..t.len()).collect::<Vec<_>>());
        prop_assert!(blocks[0].is_principal && blocks[0].contains(0));
        for b in &blocks {
            prop_assert_eq!(b.defect_group.size(), p.pow(b.defect));
            prop_assert!(b.defect_group.is_subgroup_of(&g));
        }
    }

    #[test]
    fn verification_is_clean_at_two(g in group()) {
        let r = verify_group("g", &g, 2, &VerifyOptions::default()).unwrap();
        prop_assert_eq!(r.violations().count(), 0);
        let failed: Vec<String> = r.failed_checks().map(|c| format!("{}: {}", c.id, c.details)).collect();
        prop_assert!(failed.is_empty(), "{:?}", failed);
    }
}
