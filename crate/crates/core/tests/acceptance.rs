//! The acceptance suite. Runs every criterion, prints one line per criterion
//! and exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use auslander_core::algebra::{is_isomorphic, is_local, RightModule};
use auslander_core::braid::{interval_w2, is_right_divisor};
use auslander_core::complex::{vertex_module_classes, SigmaComplex};
use auslander_core::counting::{t_by_pairs, t_recursive};
use auslander_core::exc::{
    enumerate_exceptional_modules, exceptional_member_by_tensor, exceptional_sequence, is_full_exceptional_sequence,
    left_mutation_check, standard_simple_ext,
};
use auslander_core::export::poset_dot;
use auslander_core::tilt::{
    ideal_from_word, ideal_i_w, injective_cogenerator, is_tilting, predicted_dims, slotwise_isomorphic,
    tilting_by_tensor, tilting_le, Mutation, TiltingModules, TiltingPoset,
};
use auslander_core::{build_algebra, Permutation, PositiveBraid};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const T: [u64; 8] = [1, 1, 3, 19, 211, 3651, 90921, 3081513];
const P: [&[u64]; 5] = [&[1], &[3, 1], &[7, 7, 1], &[15, 33, 15, 1], &[31, 131, 131, 31, 1]];

fn w_plus_squared(n: usize) -> PositiveBraid {
    let w = PositiveBraid::w_plus(n);
    w.product(&w).unwrap()
}

fn iso(a: &RightModule, b: &RightModule) -> Result<bool, String> {
    is_isomorphic(a, b).map_err(|e| e.to_string())
}

fn counting_identity() -> Outcome {
    for (n, &t) in T.iter().enumerate() {
        ensure!(t_recursive(n) == BigUint::from(t), "t_recursive({n}) = {}", t_recursive(n));
    }
    for n in 0..=6 {
        ensure!(t_by_pairs(n) == BigUint::from(T[n]), "t_by_pairs({n}) = {}", t_by_pairs(n));
    }
    ensure!(common::count_descent_free_pairs(5) == T[5], "direct pair scan disagrees at n = 5");
    Ok(())
}

fn interval_count() -> Outcome {
    for n in 1..=5 {
        let size = interval_w2(n).len() as u64;
        ensure!(size == T[n], "|interval_w2({n})| = {size}");
    }
    Ok(())
}

fn poset_golden() -> Outcome {
    let poset = TiltingPoset::build(3);
    ensure!(poset.nodes().len() == 19, "{} nodes", poset.nodes().len());
    ensure!(poset.arrows().len() == 24, "{} arrows", poset.arrows().len());
    let (sources, sinks) = (poset.sources(), poset.sinks());
    ensure!(sources.len() == 1 && poset.nodes()[sources[0]].is_identity(), "sources {sources:?}");
    ensure!(sinks.len() == 1 && poset.nodes()[sinks[0]] == w_plus_squared(3), "sinks {sinks:?}");
    let mut labels = BTreeMap::new();
    for a in poset.arrows() {
        let expected = poset.nodes()[a.from].left_mul_generator(a.slot).unwrap();
        ensure!(poset.nodes()[a.to] == expected, "arrow {a:?} is not 𝔰_i x");
        *labels.entry(a.slot).or_insert(0) += 1;
    }
    ensure!(labels == BTreeMap::from([(1, 12), (2, 12)]), "labels {labels:?}");
    let golden = include_str!("golden/poset3.dot");
    ensure!(poset_dot(&poset) == golden, "DOT output differs from the golden file");
    Ok(())
}

fn classify(mods: &TiltingModules, alg_n: usize, indices: &[usize]) -> Outcome {
    let alg = build_algebra(alg_n).unwrap();
    for &k in indices {
        let (x, t) = (&mods.poset.nodes()[k], &mods.objects[k]);
        ensure!(is_tilting(t).map_err(|e| e.to_string())?, "T_{x} is not tilting");
        for i in 1..=alg_n {
            ensure!(is_local(t.slot(i)), "slot {i} of T_{x} is decomposable");
        }
        let tensor = tilting_by_tensor(&alg, x).map_err(|e| e.to_string())?;
        ensure!(
            slotwise_isomorphic(t.slots(), tensor.slots()).map_err(|e| e.to_string())?,
            "tensor and mutation routes differ at {x}"
        );
    }
    Ok(())
}

fn homological_classification() -> Outcome {
    let m3 = TiltingModules::build(3).map_err(|e| e.to_string())?;
    classify(&m3, 3, &(0..m3.objects.len()).collect::<Vec<_>>())?;
    let m4 = TiltingModules::build(4).map_err(|e| e.to_string())?;
    let mut sample: Vec<usize> = (0..m4.objects.len()).collect();
    sample.shuffle(&mut ChaCha8Rng::seed_from_u64(4));
    sample.truncate(40);
    classify(&m4, 4, &sample)
}

fn order_equivalence() -> Outcome {
    let mods = TiltingModules::build(3).map_err(|e| e.to_string())?;
    let nodes = mods.poset.nodes();
    for (a, x) in nodes.iter().enumerate() {
        for (b, y) in nodes.iter().enumerate() {
            let ext = tilting_le(&mods.objects[b], &mods.objects[a]).map_err(|e| e.to_string())?;
            let div = is_right_divisor(x, y).map_err(|e| e.to_string())?;
            ensure!(ext == div, "T_{x} >= T_{y} is {ext} by Ext, {div} by divisibility");
        }
    }
    Ok(())
}

fn sink_identification() -> Outcome {
    for n in 1..=3 {
        let alg = build_algebra(n).unwrap();
        let mods = TiltingModules::build(n).map_err(|e| e.to_string())?;
        let sink = mods.object(&w_plus_squared(n)).ok_or("sink missing")?;
        ensure!(
            slotwise_isomorphic(sink.slots(), &injective_cogenerator(&alg)).map_err(|e| e.to_string())?,
            "T_(w_+^2) differs from D(Λ) at n = {n}"
        );
    }
    Ok(())
}

fn dimension_vectors() -> Outcome {
    for n in 1..=4 {
        let mods = TiltingModules::build(n).map_err(|e| e.to_string())?;
        for (x, t) in mods.poset.nodes().iter().zip(&mods.objects) {
            ensure!(t.dim_vectors() == predicted_dims(x), "d(T_{x}) = {:?}", t.dim_vectors());
        }
        let distinct: BTreeSet<Vec<Vec<i64>>> = mods.objects.iter().map(|t| t.dim_vectors()).collect();
        let alg = build_algebra(n).unwrap();
        let ideals: BTreeSet<Vec<Vec<i64>>> = Permutation::all(n)
            .iter()
            .map(|w| {
                let ideal = ideal_i_w(&alg, w).unwrap();
                (1..=n).map(|i| (1..=n).map(|j| ideal.block_dim(i, j) as i64).collect()).collect()
            })
            .collect();
        ensure!(distinct == ideals, "dimension vector tuples differ from those of the I_w at n = {n}");
    }
    Ok(())
}

fn simplicial_complex() -> Outcome {
    for n in 1..=5 {
        let sigma = SigmaComplex::build(n);
        ensure!(sigma.p_counts() == P[n - 1], "p at n = {n}: {:?}", sigma.p_counts());
        ensure!(sigma.facets().len() as u64 == T[n], "{} facets at n = {n}", sigma.facets().len());
        ensure!(
            sigma.vertices().len() as u64 == P[n - 1].iter().sum::<u64>(),
            "{} vertices at n = {n}",
            sigma.vertices().len()
        );
        if n <= 4 {
            ensure!(sigma.is_cone_over_boundary(), "cone decomposition fails at n = {n}");
        }
    }
    let boundary = SigmaComplex::build(3).boundary();
    ensure!(boundary.vertices.len() == 14, "∂Σ(Λ_3) has {} vertices", boundary.vertices.len());
    ensure!(boundary.facets.len() == 19, "∂Σ(Λ_3) has {} facets", boundary.facets.len());
    Ok(())
}

fn vertex_module_bijection() -> Outcome {
    let mods = TiltingModules::build(3).map_err(|e| e.to_string())?;
    let sigma = SigmaComplex::build(3);
    let classes = vertex_module_classes(&sigma, &mods).map_err(|e| e.to_string())?;
    ensure!(classes.is_bijection(), "vertex and module classes differ: {:?}", classes.mismatch);
    ensure!(classes.iso_classes_per_slot == [7, 7, 1], "iso classes {:?}", classes.iso_classes_per_slot);
    Ok(())
}

fn exceptional_layer() -> Outcome {
    for n in 1..=3 {
        let alg = build_algebra(n).unwrap();
        for w in Permutation::all(n) {
            let seq = exceptional_sequence(&alg, &w).map_err(|e| e.to_string())?;
            ensure!(is_full_exceptional_sequence(&seq.modules).unwrap(), "E_{w} fails");
            for k in 1..=n {
                let tensor = exceptional_member_by_tensor(&alg, &w, k).map_err(|e| e.to_string())?;
                ensure!(iso(&seq.modules[k - 1], &tensor)?, "E_({w},{k}) routes differ");
            }
        }
        let mods = TiltingModules::build(n).map_err(|e| e.to_string())?;
        let classes = enumerate_exceptional_modules(&mods).map_err(|e| e.to_string())?;
        ensure!(classes.len() == (1 << n) - 1, "{} exceptional classes at n = {n}", classes.len());
        for i in 1..n {
            ensure!(standard_simple_ext(&alg, i).unwrap() == 1, "Ext^1(Δ, S_{i}) at n = {n}");
            ensure!(left_mutation_check(&alg, i).map_err(|e| e.to_string())?, "left mutation {i} at n = {n}");
        }
    }
    Ok(())
}

fn property_suites() -> Outcome {
    // normal forms against braid-relation closure
    for n in 2..=3 {
        for len in 0..=6 {
            let all = common::words(n, len);
            for w in &all {
                let class = common::braid_class(w);
                let nf = PositiveBraid::normalize(w, n).unwrap();
                for u in &all {
                    let same = PositiveBraid::normalize(u, n).unwrap() == nf;
                    ensure!(same == class.contains(u), "normal forms of {w:?} and {u:?}");
                }
            }
        }
    }
    // mutation leaves the interval exactly when ι is not injective
    for n in 1..=3 {
        let mods = TiltingModules::build(n).map_err(|e| e.to_string())?;
        for (x, t) in mods.poset.nodes().iter().zip(&mods.objects) {
            for i in 1..n {
                let inside = x.left_mul_generator(i).unwrap().in_interval();
                let module = matches!(t.mutate(i).map_err(|e| e.to_string())?, Mutation::Module(_));
                ensure!(inside == module, "mutation of {x} at {i}");
            }
        }
    }
    // I_w does not depend on the reduced word
    let alg = build_algebra(3).unwrap();
    for w in Permutation::all(3) {
        let ideals: BTreeSet<Vec<String>> = w
            .all_reduced_words()
            .iter()
            .map(|word| {
                let ideal = ideal_from_word(&alg, word).unwrap();
                ideal.basis().iter().map(|v| format!("{v:?}")).collect()
            })
            .collect();
        ensure!(ideals.len() == 1, "I_{w} depends on the reduced word");
    }
    // union-find classes do not depend on the processing order
    for n in 2..=4 {
        let poset = TiltingPoset::build(n);
        let reference = SigmaComplex::from_arrows(n, poset.nodes(), poset.arrows());
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..3 {
            let mut arrows = poset.arrows().to_vec();
            arrows.shuffle(&mut rng);
            ensure!(
                SigmaComplex::from_arrows(n, poset.nodes(), &arrows) == reference,
                "vertex classes depend on the order at n = {n}"
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("counting identity", counting_identity, Duration::from_secs(30)),
        ("interval equals tilting count", interval_count, Duration::from_secs(60)),
        ("n = 3 poset golden test", poset_golden, Duration::from_secs(60)),
        ("homological classification", homological_classification, Duration::from_secs(600)),
        ("order equivalence", order_equivalence, Duration::from_secs(60)),
        ("sink identification", sink_identification, Duration::from_secs(60)),
        ("dimension vectors", dimension_vectors, Duration::from_secs(60)),
        ("simplicial complex", simplicial_complex, Duration::from_secs(120)),
        ("vertex classes match module classes", vertex_module_bijection, Duration::from_secs(60)),
        ("exceptional layer", exceptional_layer, Duration::from_secs(60)),
        ("property suites", property_suites, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= *budget {
                Ok(())
            } else {
                Err(format!("took {elapsed:.1?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} pass ({name}, {elapsed:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL ({name}): {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
