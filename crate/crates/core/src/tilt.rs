//! Tilting modules `T_x` indexed by the interval `[1, w_+^2]_L`.
//!
//! There are two constructions. The tensor route builds `I_v ⊗ I_w` from
//! ideals. The mutation route starts at `Λ` and replaces summands one at a
//! time; it needs the left `Λ`-action on `T`, which it carries along as maps
//! `e_t T -> e_s T` for every arrow `a: s -> t`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    ext_dim, ideal_summand_module, is_isomorphic, is_local, tensor_with_ideal, Algebra, Arrow, Ideal, ModuleMap,
    RightModule,
};
use crate::braid::{interval_w2, PositiveBraid};
use crate::error::{Error, Result};
use crate::sym::Permutation;

/// Largest rank for which homological checks run without being forced.
pub const DEFAULT_MAX_N_HOMOLOGY: usize = 4;

/// Refuses homological work above `limit` unless `force` is set.
pub fn homology_gate(n: usize, limit: usize, force: bool) -> Result<()> {
    if n > limit && !force {
        return Err(Error::HomologyGated { n, limit });
    }
    Ok(())
}

/// The ideal `I_{i_1} ⋯ I_{i_k}` for a word in the generators.
pub fn ideal_from_word(algebra: &Arc<Algebra>, word: &[usize]) -> Result<Ideal> {
    let mut ideal = Ideal::whole(algebra);
    for &i in word {
        if i == 0 || i >= algebra.n() {
            return Err(Error::GeneratorOutOfRange { index: i, n: algebra.n() });
        }
        ideal = ideal.product(&Ideal::complement_of_vertex(algebra, i)?)?;
    }
    Ok(ideal)
}

/// `I_w` along the canonical reduced word of `w`.
pub fn ideal_i_w(algebra: &Arc<Algebra>, w: &Permutation) -> Result<Ideal> {
    if w.n() != algebra.n() {
        return Err(Error::RankMismatch { left: algebra.n(), right: w.n() });
    }
    ideal_from_word(algebra, &w.reduced_word())
}

#[derive(Clone, Debug)]
pub struct TiltingObject {
    index: PositiveBraid,
    slots: Vec<RightModule>,
    /// Indexed like `Algebra::arrows`; `a: s -> t` acts as `e_t T -> e_s T`.
    actions: Option<Vec<ModuleMap>>,
}

/// Result of mutating a summand.
#[derive(Clone, Debug)]
pub enum Mutation {
    Module(TiltingObject),
    /// The approximation is not injective, so the mutated complex is not a
    /// module: the index has left the interval.
    NotModule,
}

impl TiltingObject {
    /// `Λ` itself, with the left action by multiplication.
    pub fn regular(algebra: &Arc<Algebra>) -> Self {
        let n = algebra.n();
        let slots = (1..=n).map(|i| RightModule::projective(algebra.clone(), i).expect("valid vertex")).collect();
        let actions = algebra
            .arrows()
            .iter()
            .map(|&a| {
                let x = algebra.arrow_element(a);
                ModuleMap::new((1..=n).map(|j| algebra.left_mult_block(&x, a.source(), a.target(), j)).collect())
            })
            .collect();
        TiltingObject { index: PositiveBraid::identity(n), slots, actions: Some(actions) }
    }

    /// An object without left-action data; it can be checked but not mutated.
    pub fn from_slots(index: PositiveBraid, slots: Vec<RightModule>) -> Result<Self> {
        if slots.len() != index.n() {
            return Err(Error::ComponentCount { expected: index.n(), got: slots.len() });
        }
        Ok(TiltingObject { index, slots, actions: None })
    }

    pub fn index(&self) -> &PositiveBraid {
        &self.index
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[RightModule] {
        &self.slots
    }

    /// `e_i T` (1-based).
    pub fn slot(&self, i: usize) -> &RightModule {
        &self.slots[i - 1]
    }

    pub fn has_bimodule_data(&self) -> bool {
        self.actions.is_some()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.slots[0].algebra()
    }

    pub fn total(&self) -> RightModule {
        RightModule::direct_sum(self.algebra(), &self.slots.iter().collect::<Vec<_>>())
    }

    pub fn dim_vectors(&self) -> Vec<Vec<i64>> {
        self.slots.iter().map(RightModule::dim_vector).collect()
    }

    /// Left action of an arrow `a: s -> t` as `e_t T -> e_s T`.
    pub fn action(&self, a: Arrow) -> Option<&ModuleMap> {
        let pos = self.algebra().arrow_position(a);
        self.actions.as_ref().map(|acts| &acts[pos])
    }

    /// Whether the stored left action satisfies the relations of `Λ` and
    /// consists of module maps.
    pub fn left_action_is_consistent(&self) -> bool {
        let Some(actions) = &self.actions else { return true };
        let alg = self.algebra();
        let homs = alg.arrows().iter().zip(actions).all(|(&a, l)| l.is_homomorphism(self.slot(a.target()), self.slot(a.source())));
        let l = |a: Arrow| &actions[alg.arrow_position(a)];
        alg.relations().iter().all(|rel| {
            let mut sum: Option<ModuleMap> = None;
            for &(c, first, second) in &rel.terms {
                // (first then second) acts on the left as L_first ∘ L_second
                let term = l(first).compose(l(second)).scale(&c.into());
                sum = Some(match sum {
                    None => term,
                    Some(s) => s.add(&term),
                });
            }
            sum.is_none_or(|s| s.is_zero())
        }) && homs
    }

    /// Replaces `e_i T` by the cokernel of
    /// `ι = (α_{i-1}·, β_{i+1}·): e_i T -> e_{i-1} T ⊕ e_{i+1} T`.
    pub fn mutate(&self, i: usize) -> Result<Mutation> {
        let n = self.n();
        if i == 0 || i >= n {
            return Err(Error::ImmutableSlot { slot: i, n });
        }
        let actions = self.actions.as_ref().ok_or(Error::MissingBimoduleData)?;
        let alg = self.algebra().clone();
        let l = |a: Arrow| &actions[alg.arrow_position(a)];

        let mut targets: Vec<&RightModule> = Vec::new();
        let mut iota_parts: Vec<Vec<ModuleMap>> = Vec::new();
        if i > 1 {
            targets.push(self.slot(i - 1));
            iota_parts.push(vec![l(Arrow::alpha(i - 1)).clone()]);
        }
        targets.push(self.slot(i + 1));
        iota_parts.push(vec![l(Arrow::beta(i + 1)).clone()]);
        let iota = ModuleMap::from_parts(&[self.slot(i)], &targets, &iota_parts);
        if !iota.is_injective() {
            return Ok(Mutation::NotModule);
        }
        let sum = RightModule::direct_sum(&alg, &targets);
        let (cone, p) = iota.cokernel(&sum);

        // inclusions of the neighbours into the sum
        let inclusion = |k: usize| {
            let parts: Vec<Vec<ModuleMap>> = targets
                .iter()
                .enumerate()
                .map(|(r, t)| {
                    vec![if r == k { ModuleMap::identity(t) } else { ModuleMap::zero(targets[k], t) }]
                })
                .collect();
            ModuleMap::from_parts(&[targets[k]], &targets, &parts)
        };
        let upper = targets.len() - 1;
        let mut next = actions.clone();
        next[alg.arrow_position(Arrow::alpha(i))] = p.compose(&inclusion(upper));
        if i > 1 {
            let minus_one = crate::rational::Rational::from_integer(-1);
            next[alg.arrow_position(Arrow::beta(i))] = p.compose(&inclusion(0)).scale(&minus_one);
            // α_{i-1}· on the new summand, induced from the sum
            let g = ModuleMap::from_parts(
                &targets,
                &[self.slot(i - 1)],
                &[vec![
                    l(Arrow::alpha(i - 1)).compose(l(Arrow::beta(i))).scale(&minus_one),
                    l(Arrow::alpha(i - 1)).compose(l(Arrow::alpha(i))),
                ]],
            );
            next[alg.arrow_position(Arrow::alpha(i - 1))] = g.factor_through(&p);
        }
        let minus_one = crate::rational::Rational::from_integer(-1);
        let mut row = Vec::new();
        if i > 1 {
            row.push(l(Arrow::beta(i + 1)).compose(l(Arrow::beta(i))).scale(&minus_one));
        }
        row.push(l(Arrow::beta(i + 1)).compose(l(Arrow::alpha(i))));
        let g = ModuleMap::from_parts(&targets, &[self.slot(i + 1)], &[row]);
        next[alg.arrow_position(Arrow::beta(i + 1))] = g.factor_through(&p);

        let mut slots = self.slots.clone();
        slots[i - 1] = cone;
        let index = self.index.left_mul_generator(i)?;
        let out = TiltingObject { index, slots, actions: Some(next) };
        debug_assert!(out.left_action_is_consistent());
        Ok(Mutation::Module(out))
    }
}

/// `T_x` for `x` in the interval, by mutating `Λ` along a word of `x`.
pub fn tilting_by_mutation(algebra: &Arc<Algebra>, x: &PositiveBraid) -> Result<TiltingObject> {
    if !x.in_interval() {
        return Err(Error::NotInInterval { factors: x.factors().len() });
    }
    let mut t = TiltingObject::regular(algebra);
    for &i in x.word().iter().rev() {
        t = match t.mutate(i)? {
            Mutation::Module(next) => next,
            Mutation::NotModule => {
                return Err(Error::Construction(format!("mutation at slot {i} left the module interval")));
            }
        };
    }
    debug_assert_eq!(t.index(), x);
    Ok(t)
}

/// `I_v ⊗_Λ I_w`, indexed by the normal form of `v̲ w̲`.
pub fn tilting_from_pair(algebra: &Arc<Algebra>, v: &Permutation, w: &Permutation) -> Result<TiltingObject> {
    let index = PositiveBraid::from_pair(v, w)?;
    let iv = ideal_i_w(algebra, v)?;
    let iw = ideal_i_w(algebra, w)?;
    let slots = (1..=algebra.n())
        .map(|i| tensor_with_ideal(&ideal_summand_module(&iv, i)?, &iw))
        .collect::<Result<Vec<_>>>()?;
    TiltingObject::from_slots(index, slots)
}

/// `T_x` through the tensor route, reading `x` in its two-factor form.
pub fn tilting_by_tensor(algebra: &Arc<Algebra>, x: &PositiveBraid) -> Result<TiltingObject> {
    let (v, w) = x.pair_form()?;
    tilting_from_pair(algebra, &v, &w)
}

/// `D(Λ) = ⊕ D(Λ e_i)`, slot by slot.
pub fn injective_cogenerator(algebra: &Arc<Algebra>) -> Vec<RightModule> {
    (1..=algebra.n()).map(|i| RightModule::injective(algebra.clone(), i).expect("valid vertex")).collect()
}

/// `Σ_{i,j} dim Ext^q(e_j U, e_i L)`.
pub fn ext_between(upper: &TiltingObject, lower: &TiltingObject, q: usize) -> Result<usize> {
    let mut total = 0;
    for u in upper.slots() {
        for l in lower.slots() {
            total += ext_dim(u, l, q)?;
        }
    }
    Ok(total)
}

/// `lower <= upper` in the tilting order, i.e. `Ext^{1,2}(upper, lower) = 0`.
pub fn tilting_le(lower: &TiltingObject, upper: &TiltingObject) -> Result<bool> {
    if lower.n() != upper.n() {
        return Err(Error::RankMismatch { left: lower.n(), right: upper.n() });
    }
    for u in upper.slots() {
        for l in lower.slots() {
            if ext_dim(u, l, 1)? != 0 || ext_dim(u, l, 2)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The first failing self-orthogonality condition `Ext^q(e_j T, e_i T) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtViolation {
    pub from_slot: usize,
    pub to_slot: usize,
    pub degree: usize,
    pub dim: usize,
}

pub fn self_ext_violation(t: &TiltingObject) -> Result<Option<ExtViolation>> {
    for (j, u) in t.slots().iter().enumerate() {
        for (i, l) in t.slots().iter().enumerate() {
            for q in 1..=2 {
                let dim = ext_dim(u, l, q)?;
                if dim != 0 {
                    return Ok(Some(ExtViolation { from_slot: j + 1, to_slot: i + 1, degree: q, dim }));
                }
            }
        }
    }
    Ok(None)
}

/// Self-orthogonal with `n` indecomposable, pairwise non-isomorphic summands.
pub fn is_tilting(t: &TiltingObject) -> Result<bool> {
    if t.n() != t.algebra().n() || t.slots().iter().any(|s| !is_local(s)) {
        return Ok(false);
    }
    for a in 0..t.n() {
        for b in a + 1..t.n() {
            if is_isomorphic(&t.slots()[a], &t.slots()[b])? {
                return Ok(false);
            }
        }
    }
    Ok(self_ext_violation(t)?.is_none())
}

/// Whether the slots agree pairwise up to isomorphism.
pub fn slotwise_isomorphic(a: &[RightModule], b: &[RightModule]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for (x, y) in a.iter().zip(b) {
        if !is_isomorphic(x, y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The action `s_i · (.., v_{i-1}, v_i, v_{i+1}, ..) = (.., v_{i-1}, v_{i-1} - v_i + v_{i+1}, v_{i+1}, ..)`
/// with `v_0 = 0`, extended along a reduced word of `p`.
pub fn dim_action(p: &Permutation, d: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = p.n();
    if d.len() != n {
        return Err(Error::ComponentCount { expected: n, got: d.len() });
    }
    let mut out = d.to_vec();
    for &i in p.reduced_word().iter().rev() {
        let prev = if i > 1 { out[i - 2].clone() } else { vec![0; out[i - 1].len()] };
        let next = &out[i];
        out[i - 1] = (0..out[i - 1].len()).map(|k| prev[k] - out[i - 1][k] + next[k]).collect();
    }
    Ok(out)
}

/// `d(Λ)`: slot `i` has `dim e_i Λ e_j = min(i, j)`.
pub fn regular_dims(n: usize) -> Vec<Vec<i64>> {
    (1..=n).map(|i| (1..=n).map(|j| i.min(j) as i64).collect()).collect()
}

/// `d(T_x) = x̄ · d(Λ)`, without building any module.
pub fn predicted_dims(x: &PositiveBraid) -> Vec<Vec<i64>> {
    dim_action(&x.image(), &regular_dims(x.n())).expect("component count matches rank")
}

/// An arrow `x -> 𝔰_i x` of the Hasse quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HasseArrow {
    pub from: usize,
    pub to: usize,
    pub slot: usize,
}

/// The Hasse quiver of the tilting poset, with nodes the interval elements.
#[derive(Clone, Debug)]
pub struct TiltingPoset {
    n: usize,
    nodes: Vec<PositiveBraid>,
    lookup: HashMap<PositiveBraid, usize>,
    arrows: Vec<HasseArrow>,
    /// `below[x]` holds every `y` with `T_x >= T_y`, as a bitset.
    below: Vec<Vec<u64>>,
}

impl TiltingPoset {
    /// The combinatorial quiver: arrows `x -> 𝔰_i x` whenever both ends lie
    /// in the interval.
    pub fn build(n: usize) -> Self {
        let nodes = interval_w2(n);
        let lookup: HashMap<PositiveBraid, usize> = nodes.iter().cloned().enumerate().map(|(k, x)| (x, k)).collect();
        let mut arrows: Vec<HasseArrow> = nodes
            .par_iter()
            .enumerate()
            .flat_map_iter(|(from, x)| {
                let lookup = &lookup;
                (1..n).filter_map(move |i| {
                    let y = x.left_mul_generator(i).expect("valid generator");
                    lookup.get(&y).map(|&to| HasseArrow { from, to, slot: i })
                })
            })
            .collect();
        arrows.sort_unstable();
        let below = reachability(nodes.len(), &arrows, &nodes);
        TiltingPoset { n, nodes, lookup, arrows, below }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[PositiveBraid] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[HasseArrow] {
        &self.arrows
    }

    pub fn position(&self, x: &PositiveBraid) -> Option<usize> {
        self.lookup.get(x).copied()
    }

    /// Nodes without incoming arrows.
    pub fn sources(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.nodes.len()];
        for a in &self.arrows {
            has_in[a.to] = true;
        }
        (0..self.nodes.len()).filter(|&k| !has_in[k]).collect()
    }

    /// Nodes without outgoing arrows.
    pub fn sinks(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.nodes.len()];
        for a in &self.arrows {
            has_out[a.from] = true;
        }
        (0..self.nodes.len()).filter(|&k| !has_out[k]).collect()
    }

    /// `T_x >= T_y`, i.e. a directed path from `x` to `y`.
    pub fn ge(&self, x: usize, y: usize) -> bool {
        self.below[x][y / 64] & (1 << (y % 64)) != 0
    }

    /// Greatest lower bound of `T_x` and `T_y`.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let common: Vec<usize> = (0..self.nodes.len()).filter(|&z| self.ge(x, z) && self.ge(y, z)).collect();
        common.iter().copied().find(|&z| common.iter().all(|&w| self.ge(z, w)))
    }

    /// Least upper bound of `T_x` and `T_y`.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let common: Vec<usize> = (0..self.nodes.len()).filter(|&z| self.ge(z, x) && self.ge(z, y)).collect();
        common.iter().copied().find(|&z| common.iter().all(|&w| self.ge(w, z)))
    }

    /// Covering relations of an order given as a predicate `ge(x, y)`.
    pub fn covers_of(len: usize, ge: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..len {
            for y in 0..len {
                if x == y || !ge(x, y) {
                    continue;
                }
                let covered = (0..len).any(|z| z != x && z != y && ge(x, z) && ge(z, y));
                if !covered {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

fn reachability(len: usize, arrows: &[HasseArrow], nodes: &[PositiveBraid]) -> Vec<Vec<u64>> {
    let words = len.div_ceil(64);
    let mut below = vec![vec![0u64; words]; len];
    let mut succ = vec![Vec::new(); len];
    for a in arrows {
        succ[a.from].push(a.to);
    }
    // arrows raise the braid length, so longest-first is a valid order
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(nodes[k].length()));
    for &x in &order {
        let mut bits = vec![0u64; words];
        bits[x / 64] |= 1 << (x % 64);
        for &y in &succ[x] {
            for (b, c) in bits.iter_mut().zip(&below[y]) {
                *b |= c;
            }
        }
        below[x] = bits;
    }
    below
}

/// The poset together with a module for every node, built by mutation.
#[derive(Clone, Debug)]
pub struct TiltingModules {
    pub poset: TiltingPoset,
    pub objects: Vec<TiltingObject>,
}

impl TiltingModules {
    /// Breadth-first mutation from `Λ`, one braid length at a time. Each node
    /// is reached from its smallest parent, so the result is deterministic.
    pub fn build(n: usize) -> Result<Self> {
        let poset = TiltingPoset::build(n);
        let alg = crate::algebra::build_algebra(n)?;
        let mut objects: Vec<Option<TiltingObject>> = vec![None; poset.nodes.len()];
        let root = poset.position(&PositiveBraid::identity(n)).expect("identity in interval");
        objects[root] = Some(TiltingObject::regular(&alg));
        let mut frontier = vec![root];
        while !frontier.is_empty() {
            let mut edges: Vec<(usize, usize, usize)> = poset
                .arrows
                .iter()
                .filter(|a| frontier.contains(&a.from) && objects[a.to].is_none())
                .map(|a| (a.to, a.from, a.slot))
                .collect();
            edges.sort_unstable();
            edges.dedup_by_key(|e| e.0);
            let built: Vec<(usize, Result<Mutation>)> = edges
                .par_iter()
                .map(|&(to, from, slot)| (to, objects[from].as_ref().expect("parent built").mutate(slot)))
                .collect();
            frontier.clear();
            for (to, result) in built {
                match result? {
                    Mutation::Module(t) => objects[to] = Some(t),
                    Mutation::NotModule => {
                        return Err(Error::Construction(format!("arrow into {} is not a module mutation", poset.nodes[to])));
                    }
                }
                frontier.push(to);
            }
        }
        let objects = objects.into_iter().map(|t| t.expect("interval is connected")).collect();
        Ok(TiltingModules { poset, objects })
    }

    pub fn object(&self, x: &PositiveBraid) -> Option<&TiltingObject> {
        self.poset.position(x).map(|k| &self.objects[k])
    }

    /// The meet of two objects of this poset in the tilting order.
    pub fn meet(&self, a: &TiltingObject, b: &TiltingObject) -> Option<&TiltingObject> {
        let (x, y) = (self.poset.position(a.index())?, self.poset.position(b.index())?);
        self.poset.meet(x, y).map(|z| &self.objects[z])
    }
}
