//! The verification suite behind `auslander verify`.

use std::fmt::Write;

use auslander_core::algebra::{ext_dim, is_isomorphic, is_local, RightModule};
use auslander_core::braid::{interval_w2, is_right_divisor};
use auslander_core::complex::{vertex_module_classes, SigmaComplex, P_TABLE};
use auslander_core::counting::{t_by_pairs, t_recursive, MAX_N_INTERVAL, MAX_N_PAIRS};
use auslander_core::exc::{
    enumerate_exceptional_modules, exceptional_member_by_tensor, exceptional_sequence, left_mutation,
    standard_simple_ext,
};
use auslander_core::export::node_label;
use auslander_core::tilt::{
    injective_cogenerator, predicted_dims, self_ext_violation, slotwise_isomorphic, tilting_by_tensor, tilting_le,
    TiltingModules, TiltingPoset,
};
use auslander_core::{build_algebra, Permutation, PositiveBraid, Result};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Ranks up to which the face-level cone check runs.
const MAX_N_CONE: usize = 5;
/// Ranks up to which the Ext order is compared on every pair of nodes.
const MAX_N_ALL_PAIRS: usize = 3;
/// Random node pairs compared above that rank.
const SAMPLED_PAIRS: usize = 400;

pub struct Outcome {
    pub name: &'static str,
    /// `Ok(summary)` or `Err(first counterexample)`.
    pub result: std::result::Result<String, String>,
}

impl Outcome {
    fn new(name: &'static str, result: std::result::Result<String, String>) -> Self {
        Outcome { name, result }
    }
}

pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.result.is_ok())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            match &o.result {
                Ok(summary) => writeln!(out, "ok   {}: {summary}", o.name).unwrap(),
                Err(counterexample) => writeln!(out, "FAIL {}: {counterexample}", o.name).unwrap(),
            }
        }
        out
    }
}

fn check(cond: bool, ok: String, fail: impl FnOnce() -> String) -> std::result::Result<String, String> {
    if cond {
        Ok(ok)
    } else {
        Err(fail())
    }
}

pub fn w_plus_squared(n: usize) -> PositiveBraid {
    let w = PositiveBraid::w_plus(n);
    w.product(&w).expect("same rank")
}

/// Checks that need no modules.
pub fn combinatorial(n: usize) -> Report {
    let mut outcomes = Vec::new();
    let t = t_recursive(n);
    if n <= MAX_N_PAIRS {
        let pairs = t_by_pairs(n);
        outcomes.push(Outcome::new(
            "pairs",
            check(pairs == t, format!("t_{n} = {t} descent-free pairs"), || format!("{pairs} pairs, t_{n} = {t}")),
        ));
    }
    if n > MAX_N_INTERVAL {
        return Report { outcomes };
    }
    let size = interval_w2(n).len();
    outcomes.push(Outcome::new(
        "interval",
        check(size.to_string() == t.to_string(), format!("{size} normal forms"), || {
            format!("{size} normal forms, t_{n} = {t}")
        }),
    ));

    let poset = TiltingPoset::build(n);
    let (sources, sinks) = (poset.sources(), poset.sinks());
    let top = PositiveBraid::identity(n);
    let bottom = w_plus_squared(n);
    let ends_ok = sources.len() == 1
        && sinks.len() == 1
        && poset.nodes()[sources[0]] == top
        && poset.nodes()[sinks[0]] == bottom;
    outcomes.push(Outcome::new(
        "poset",
        check(ends_ok, format!("{} nodes, {} arrows, source 1, sink w_+^2", poset.nodes().len(), poset.arrows().len()), || {
            let names = |v: &[usize]| v.iter().map(|&k| poset.nodes()[k].to_string()).collect::<Vec<_>>().join(" ");
            format!("sources [{}], sinks [{}]", names(&sources), names(&sinks))
        }),
    ));

    let sigma = SigmaComplex::build(n);
    let p = sigma.p_counts();
    let table_ok = P_TABLE.get(n - 1).is_none_or(|row| p.as_slice() == *row);
    outcomes.push(Outcome::new(
        "complex",
        check(table_ok && sigma.facets().len() == size, format!("p = {p:?}, {} facets", sigma.facets().len()), || {
            format!("p = {p:?}, {} facets", sigma.facets().len())
        }),
    ));
    if n <= MAX_N_CONE {
        outcomes.push(Outcome::new(
            "cone",
            check(sigma.is_cone_over_boundary(), format!("{} boundary facets", sigma.boundary().facets.len()), || {
                "faces of Σ differ from the cone over ∂Σ".to_string()
            }),
        ));
    }
    Report { outcomes }
}

fn slot_dims(m: &RightModule) -> String {
    format!("{:?}", m.dims())
}

/// Checks that build modules and compute Ext groups.
pub fn homological(n: usize, seed: u64) -> Result<Report> {
    let mut outcomes = Vec::new();
    let alg = build_algebra(n)?;
    let mods = TiltingModules::build(n)?;
    let nodes = mods.poset.nodes();

    let mut failure = None;
    'nodes: for (x, t) in nodes.iter().zip(&mods.objects) {
        for (k, slot) in t.slots().iter().enumerate() {
            if !is_local(slot) {
                failure = Some(format!("{}: slot {} dims {} is decomposable", node_label(x), k + 1, slot_dims(slot)));
                break 'nodes;
            }
            for (l, other) in t.slots().iter().enumerate().skip(k + 1) {
                if is_isomorphic(slot, other)? {
                    failure = Some(format!("{}: slots {} and {} are isomorphic", node_label(x), k + 1, l + 1));
                    break 'nodes;
                }
            }
        }
        if let Some(v) = self_ext_violation(t)? {
            failure = Some(format!(
                "{}: dim Ext^{}(slot {}, slot {}) = {}",
                node_label(x),
                v.degree,
                v.from_slot,
                v.to_slot,
                v.dim
            ));
            break;
        }
    }
    outcomes.push(Outcome::new(
        "tilting",
        failure.map_or_else(|| Ok(format!("{} objects", nodes.len())), Err),
    ));

    let mut failure = None;
    for (x, t) in nodes.iter().zip(&mods.objects) {
        let tensor = tilting_by_tensor(&alg, x)?;
        if !slotwise_isomorphic(t.slots(), tensor.slots())? {
            let slot = (1..=n).find(|&i| !is_isomorphic(t.slot(i), tensor.slot(i)).unwrap_or(false)).unwrap_or(0);
            failure = Some(format!(
                "{}: slot {slot} mutation {} vs tensor {}",
                node_label(x),
                slot_dims(t.slot(slot.max(1))),
                slot_dims(tensor.slot(slot.max(1)))
            ));
            break;
        }
    }
    outcomes.push(Outcome::new("routes", failure.map_or_else(|| Ok("tensor and mutation agree".into()), Err)));

    let bad = nodes.iter().zip(&mods.objects).find(|(x, t)| t.dim_vectors() != predicted_dims(x));
    outcomes.push(Outcome::new(
        "dimensions",
        bad.map_or_else(
            || Ok("d(T_x) = x̄·d(Λ)".into()),
            |(x, t)| Err(format!("{}: {:?} vs {:?}", node_label(x), t.dim_vectors(), predicted_dims(x))),
        ),
    ));

    let sink = mods.object(&w_plus_squared(n)).expect("sink in interval");
    let sink_ok = slotwise_isomorphic(sink.slots(), &injective_cogenerator(&alg))?;
    outcomes.push(Outcome::new(
        "sink",
        check(sink_ok, "T_{w_+^2} ≅ D(Λ)".into(), || "T_{w_+^2} differs from D(Λ)".into()),
    ));

    let len = nodes.len();
    let pairs: Vec<(usize, usize)> = if n <= MAX_N_ALL_PAIRS {
        (0..len).flat_map(|a| (0..len).map(move |b| (a, b))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked: Vec<(usize, usize)> = sample(&mut rng, len * len, SAMPLED_PAIRS.min(len * len))
            .into_iter()
            .map(|k| (k / len, k % len))
            .collect();
        picked.extend(mods.poset.arrows().iter().map(|a| (a.from, a.to)));
        picked
    };
    let mut failure = None;
    for &(a, b) in &pairs {
        let by_ext = tilting_le(&mods.objects[b], &mods.objects[a])?;
        let by_braid = is_right_divisor(&nodes[a], &nodes[b])?;
        if by_ext != by_braid || by_ext != mods.poset.ge(a, b) {
            let ext: Vec<usize> = (1..=2)
                .map(|q| {
                    let mut total = 0;
                    for u in mods.objects[a].slots() {
                        for l in mods.objects[b].slots() {
                            total += ext_dim(u, l, q).unwrap_or(usize::MAX);
                        }
                    }
                    total
                })
                .collect();
            failure = Some(format!(
                "T_{} vs T_{}: Ext^1 = {}, Ext^2 = {}, right divisor {by_braid}",
                node_label(&nodes[a]),
                node_label(&nodes[b]),
                ext[0],
                ext[1]
            ));
            break;
        }
    }
    outcomes.push(Outcome::new("order", failure.map_or_else(|| Ok(format!("{} pairs", pairs.len())), Err)));

    let sigma = SigmaComplex::build(n);
    let classes = vertex_module_classes(&sigma, &mods)?;
    outcomes.push(Outcome::new(
        "vertices",
        match classes.mismatch {
            None => Ok(format!("iso classes per slot {:?}", classes.iso_classes_per_slot)),
            Some(((a, i), (b, _))) => Err(format!(
                "slot {i}: {} and {} disagree between vertex and iso classes",
                node_label(&nodes[a]),
                node_label(&nodes[b])
            )),
        },
    ));

    outcomes.push(Outcome::new("exceptional", exceptional(n, &mods)?));
    Ok(Report { outcomes })
}

fn exceptional(n: usize, mods: &TiltingModules) -> Result<std::result::Result<String, String>> {
    let alg = build_algebra(n)?;
    for w in Permutation::all(n) {
        let seq = match exceptional_sequence(&alg, &w) {
            Ok(seq) => seq,
            Err(e) => return Ok(Err(e.to_string())),
        };
        for k in 1..=n {
            if !is_isomorphic(&seq.modules[k - 1], &exceptional_member_by_tensor(&alg, &w, k)?)? {
                return Ok(Err(format!("E_{{{w},{k}}}: cokernel and tensor routes differ")));
            }
        }
    }
    let classes = enumerate_exceptional_modules(mods)?.len();
    if classes != (1 << n) - 1 {
        return Ok(Err(format!("{classes} exceptional modules")));
    }
    for i in 1..n {
        let ext = standard_simple_ext(&alg, i)?;
        if ext != 1 {
            return Ok(Err(format!("dim Ext^1(Δ_{}, S_{i}) = {ext}", n - i)));
        }
        if !left_mutation(&alg, i)?.holds()? {
            return Ok(Err(format!("L_{}(E_1) differs from E_{{s_{i}}}", n - i)));
        }
    }
    Ok(Ok(format!("{} sequences, {classes} exceptional modules", Permutation::all(n).len())))
}
