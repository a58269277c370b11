mod common;

use std::sync::OnceLock;

use auslander_core::algebra::{ext_dim, hom_dim, is_isomorphic, is_isomorphic_with_seed, RightModule};
use auslander_core::braid::{descent_pairs, interval_w2};
use auslander_core::sym::{weak_lattice_op, weak_le};
use auslander_core::tilt::{predicted_dims, Mutation, TiltingModules};
use auslander_core::{LatticeOp, Permutation, PositiveBraid, Side};
use proptest::prelude::*;

fn modules(n: usize) -> &'static TiltingModules {
    static CACHE: [OnceLock<TiltingModules>; 5] = [const { OnceLock::new() }; 5];
    CACHE[n].get_or_init(|| TiltingModules::build(n).unwrap())
}

fn pool(n: usize) -> Vec<RightModule> {
    let mods = modules(n);
    let alg = mods.objects[0].algebra().clone();
    let mut out: Vec<RightModule> = (1..=n).map(|i| RightModule::simple(alg.clone(), i).unwrap()).collect();
    for t in &mods.objects {
        out.extend(t.slots().iter().cloned());
    }
    out
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|w| Permutation::new(w).unwrap())
}

fn pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let p = Just((1..=n).collect::<Vec<_>>()).prop_shuffle();
        (p.clone(), p).prop_map(|(a, b)| (Permutation::new(a).unwrap(), Permutation::new(b).unwrap()))
    })
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..n, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduced_words_are_reduced(p in permutation(7)) {
        let w = p.reduced_word();
        prop_assert_eq!(w.len(), p.length());
        prop_assert_eq!(Permutation::from_word(p.n(), &w).unwrap(), p.clone());
        for other in p.all_reduced_words().iter().take(20) {
            prop_assert_eq!(&Permutation::from_word(p.n(), other).unwrap(), &p);
        }
    }

    #[test]
    fn inversion_swaps_the_weak_orders((v, w) in pair(6)) {
        prop_assert_eq!(v.length(), v.inverse().length());
        prop_assert_eq!(
            weak_le(&v, &w, Side::Left).unwrap(),
            weak_le(&v.inverse(), &w.inverse(), Side::Right).unwrap()
        );
    }

    #[test]
    fn lattice_axioms((v, w) in pair(6), left in any::<bool>()) {
        let side = if left { Side::Left } else { Side::Right };
        let join = weak_lattice_op(&v, &w, side, LatticeOp::Join).unwrap();
        let meet = weak_lattice_op(&v, &w, side, LatticeOp::Meet).unwrap();
        prop_assert!(weak_le(&v, &join, side).unwrap() && weak_le(&w, &join, side).unwrap());
        prop_assert!(weak_le(&meet, &v, side).unwrap() && weak_le(&meet, &w, side).unwrap());
        prop_assert_eq!(&join, &weak_lattice_op(&w, &v, side, LatticeOp::Join).unwrap());
        prop_assert_eq!(weak_lattice_op(&v, &join, side, LatticeOp::Meet).unwrap(), v.clone());
        prop_assert_eq!(weak_lattice_op(&v, &meet, side, LatticeOp::Join).unwrap(), v);
    }

    #[test]
    fn normal_form_is_a_monoid_map(n in 2usize..=5, a in word(5, 8), b in word(5, 8)) {
        let a: Vec<usize> = a.into_iter().filter(|&i| i < n).collect();
        let b: Vec<usize> = b.into_iter().filter(|&i| i < n).collect();
        let na = PositiveBraid::normalize(&a, n).unwrap();
        let nb = PositiveBraid::normalize(&b, n).unwrap();
        let joined: Vec<usize> = a.iter().chain(&b).copied().collect();
        let nab = PositiveBraid::normalize(&joined, n).unwrap();
        prop_assert_eq!(&na.product(&nb).unwrap(), &nab);
        prop_assert_eq!(nab.length(), a.len() + b.len());
        prop_assert_eq!(PositiveBraid::normalize(&nab.word(), n).unwrap(), nab.clone());
        prop_assert_eq!(nab.reverse().reverse(), nab);
    }

    #[test]
    fn normal_form_respects_braid_moves(n in 3usize..=5, w in word(5, 8), seed in any::<u64>()) {
        let w: Vec<usize> = w.into_iter().filter(|&i| i < n).collect();
        let class = common::braid_class(&w);
        let pick = class.iter().nth((seed % class.len() as u64) as usize).unwrap();
        prop_assert_eq!(PositiveBraid::normalize(pick, n).unwrap(), PositiveBraid::normalize(&w, n).unwrap());
    }

    #[test]
    fn descent_pairs_land_in_the_interval(n in 1usize..=4, k in any::<prop::sample::Index>()) {
        let pairs = descent_pairs(n);
        let (v, w) = &pairs[k.index(pairs.len())];
        prop_assert!(PositiveBraid::from_pair(v, w).unwrap().in_interval());
    }

    #[test]
    fn interval_is_closed_under_right_division(n in 2usize..=4, k in any::<prop::sample::Index>()) {
        let nodes = interval_w2(n);
        let x = &nodes[k.index(nodes.len())];
        // dropping the first letter of a word keeps a right divisor
        let w = x.word();
        if let Some((_, rest)) = w.split_first() {
            prop_assert!(PositiveBraid::normalize(rest, n).unwrap().in_interval());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension_formula(n in 2usize..=4, k in any::<prop::sample::Index>()) {
        let mods = modules(n);
        let j = k.index(mods.objects.len());
        prop_assert_eq!(mods.objects[j].dim_vectors(), predicted_dims(&mods.poset.nodes()[j]));
    }

    #[test]
    fn ext_two_is_ext_one_of_the_syzygy(n in 2usize..=4, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let pool = pool(n);
        let (m, k) = (&pool[a.index(pool.len())], &pool[b.index(pool.len())]);
        let omega = m.resolution().unwrap().syzygy.clone();
        prop_assert_eq!(ext_dim(m, k, 2).unwrap(), ext_dim(&omega, k, 1).unwrap());
    }

    #[test]
    fn duality_reverses_hom(n in 2usize..=4, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let pool = pool(n);
        let (m, k) = (&pool[a.index(pool.len())], &pool[b.index(pool.len())]);
        let (dm, dk) = (m.dual().twist(), k.dual().twist());
        prop_assert_eq!(hom_dim(m, k), hom_dim(&dk, &dm));
        prop_assert_eq!(m.dual().dual(), m.clone());
    }

    #[test]
    fn isomorphism_answers_ignore_the_seed(a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let pool = pool(3);
        let (m, k) = (&pool[a.index(pool.len())], &pool[b.index(pool.len())]);
        prop_assert_eq!(is_isomorphic_with_seed(m, k, seed).unwrap(), is_isomorphic(m, k).unwrap());
    }

    #[test]
    fn mutation_moves_along_arrows(n in 2usize..=4, k in any::<prop::sample::Index>(), slot in 1usize..4) {
        prop_assume!(slot < n);
        let mods = modules(n);
        let j = k.index(mods.objects.len());
        let x = &mods.poset.nodes()[j];
        let target = x.left_mul_generator(slot).unwrap();
        match mods.objects[j].mutate(slot).unwrap() {
            Mutation::NotModule => prop_assert!(!target.in_interval()),
            Mutation::Module(t) => {
                prop_assert!(target.in_interval());
                prop_assert_eq!(t.index(), &target);
                let expected = mods.object(&target).unwrap();
                for i in 1..=n {
                    prop_assert!(is_isomorphic(t.slot(i), expected.slot(i)).unwrap());
                    if i != slot {
                        prop_assert_eq!(t.slot(i), mods.objects[j].slot(i));
                    }
                }
            }
        }
    }
}
