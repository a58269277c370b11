//! The simplicial complex `Σ_n` of tilting summands, modelled on pairs
//! `(x, i)` of an interval element and a slot.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::{is_isomorphic, RightModule};
use crate::braid::PositiveBraid;
use crate::error::Result;
use crate::tilt::{HasseArrow, TiltingModules, TiltingPoset};

/// The number of vertices of `Σ_n` per slot, for `n = 1..=5`.
pub const P_TABLE: [&[u64]; 5] = [&[1], &[3, 1], &[7, 7, 1], &[15, 33, 15, 1], &[31, 131, 131, 31, 1]];

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind { parent: (0..len).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // the smaller root wins, so roots do not depend on the union order
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub id: usize,
    pub slot: usize,
    /// Number of pairs `(x, i)` in the class.
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaComplex {
    n: usize,
    nodes: Vec<PositiveBraid>,
    /// `class[k * n + (i - 1)]` is the vertex of `(nodes[k], i)`.
    class: Vec<usize>,
    vertices: Vec<Vertex>,
    /// One facet per node, listed by slot.
    facets: Vec<Vec<usize>>,
}

impl SigmaComplex {
    pub fn build(n: usize) -> Self {
        let poset = TiltingPoset::build(n);
        Self::from_arrows(n, poset.nodes(), poset.arrows())
    }

    /// Closes `(𝔰_j x, i) ~ (x, i)` for `j != i` over the given arrows, in the
    /// order given.
    pub fn from_arrows(n: usize, nodes: &[PositiveBraid], arrows: &[HasseArrow]) -> Self {
        let mut uf = UnionFind::new(nodes.len() * n);
        for a in arrows {
            for i in (1..=n).filter(|&i| i != a.slot) {
                uf.union(a.from * n + i - 1, a.to * n + i - 1);
            }
        }
        // number classes by their smallest member
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut vertices: Vec<Vertex> = Vec::new();
        let mut class = Vec::with_capacity(nodes.len() * n);
        for pair in 0..nodes.len() * n {
            let root = uf.find(pair);
            let id = *ids.entry(root).or_insert_with(|| {
                vertices.push(Vertex { id: vertices.len(), slot: pair % n + 1, size: 0 });
                vertices.len() - 1
            });
            vertices[id].size += 1;
            class.push(id);
        }
        let facets = (0..nodes.len()).map(|k| class[k * n..(k + 1) * n].to_vec()).collect();
        SigmaComplex { n, nodes: nodes.to_vec(), class, vertices, facets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[PositiveBraid] {
        &self.nodes
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// The vertex of `(nodes[node], slot)`.
    pub fn vertex_of(&self, node: usize, slot: usize) -> usize {
        self.class[node * self.n + slot - 1]
    }

    /// `(p_{n,1}, …, p_{n,n})`.
    pub fn p_counts(&self) -> Vec<u64> {
        let mut out = vec![0; self.n];
        for v in &self.vertices {
            out[v.slot - 1] += 1;
        }
        out
    }

    /// Each codimension-one face with the number of facets containing it.
    pub fn ridge_multiplicities(&self) -> HashMap<Vec<usize>, usize> {
        let mut count: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in &self.facets {
            for skip in 0..f.len() {
                let mut ridge: Vec<usize> = f.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                ridge.sort_unstable();
                *count.entry(ridge).or_default() += 1;
            }
        }
        count
    }

    /// Every ridge lies in one or two facets. This fails from `n = 2` on: the
    /// ridge `{(1, n)}` of `Σ_2` lies in all three facets.
    pub fn is_pseudomanifold(&self) -> bool {
        self.ridge_multiplicities().values().all(|&c| c == 1 || c == 2)
    }

    /// The subcomplex spanned by ridges lying in exactly one facet.
    pub fn boundary(&self) -> Boundary {
        let mut facets: Vec<Vec<usize>> = self
            .ridge_multiplicities()
            .into_iter()
            .filter(|(ridge, c)| *c == 1 && !ridge.is_empty())
            .map(|(ridge, _)| ridge)
            .collect();
        facets.sort();
        let vertices: BTreeSet<usize> = facets.iter().flatten().copied().collect();
        Boundary { facets, vertices: vertices.into_iter().collect() }
    }

    /// All nonempty faces, as sorted vertex lists.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        faces_of(&self.facets)
    }

    /// Checks `Σ = ∂Σ ⊔ {c} ⊔ {F ∪ {c} : F ∈ ∂Σ}` for the cone point `c`, the
    /// common last slot.
    pub fn is_cone_over_boundary(&self) -> bool {
        let Some(apex) = self.apex() else { return false };
        let boundary = self.boundary();
        let rim = faces_of(&boundary.facets);
        if rim.iter().any(|f| f.contains(&apex)) {
            return false;
        }
        let mut expected: BTreeSet<Vec<usize>> = rim.clone();
        expected.insert(vec![apex]);
        for f in &rim {
            let mut g = f.clone();
            g.push(apex);
            g.sort_unstable();
            expected.insert(g);
        }
        expected.len() == 2 * rim.len() + 1 && expected == self.faces()
    }

    /// The vertex shared by every facet in slot `n`, if there is one.
    pub fn apex(&self) -> Option<usize> {
        let first = self.facets.first()?[self.n - 1];
        self.facets.iter().all(|f| f[self.n - 1] == first).then_some(first)
    }
}

fn faces_of(facets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for f in facets {
        let mut sorted = f.clone();
        sorted.sort_unstable();
        for mask in 1u64..(1 << sorted.len()) {
            out.insert(sorted.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub facets: Vec<Vec<usize>>,
    pub vertices: Vec<usize>,
}

/// The comparison of vertex classes with isomorphism classes of `e_i T_x`.
#[derive(Clone, Debug)]
pub struct VertexModules {
    /// `e_i T_x` for a representative `(x, i)` of each vertex.
    pub modules: Vec<RightModule>,
    /// Isomorphism classes of slot modules, per slot.
    pub iso_classes_per_slot: Vec<usize>,
    /// The first pair of `(node, slot)` entries where the two partitions
    /// disagree.
    pub mismatch: Option<((usize, usize), (usize, usize))>,
}

impl VertexModules {
    pub fn is_bijection(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Groups the modules `e_i T_x` into isomorphism classes slot by slot and
/// compares with the combinatorial vertex classes.
pub fn vertex_module_classes(sigma: &SigmaComplex, modules: &TiltingModules) -> Result<VertexModules> {
    let n = sigma.n;
    let mut iso_classes_per_slot = vec![0; n];
    let mut mismatch = None;
    let mut representative: Vec<Option<RightModule>> = vec![None; sigma.vertices.len()];
    for slot in 1..=n {
        // (representative module, node) per class found so far
        let mut classes: Vec<(RightModule, usize)> = Vec::new();
        let mut iso_of: Vec<usize> = Vec::with_capacity(sigma.nodes.len());
        for (k, t) in modules.objects.iter().enumerate() {
            let m = t.slot(slot);
            let mut found = None;
            for (c, (rep, _)) in classes.iter().enumerate() {
                if rep.dims() == m.dims() && is_isomorphic(rep, m)? {
                    found = Some(c);
                    break;
                }
            }
            let c = found.unwrap_or_else(|| {
                classes.push((m.clone(), k));
                classes.len() - 1
            });
            iso_of.push(c);
            let v = sigma.vertex_of(k, slot);
            representative[v].get_or_insert_with(|| m.clone());
        }
        iso_classes_per_slot[slot - 1] = classes.len();
        if mismatch.is_none() {
            'outer: for a in 0..iso_of.len() {
                for b in a + 1..iso_of.len() {
                    let same_vertex = sigma.vertex_of(a, slot) == sigma.vertex_of(b, slot);
                    if same_vertex != (iso_of[a] == iso_of[b]) {
                        mismatch = Some(((a, slot), (b, slot)));
                        break 'outer;
                    }
                }
            }
        }
    }
    let modules = representative.into_iter().map(|m| m.expect("every vertex has a pair")).collect();
    Ok(VertexModules { modules, iso_classes_per_slot, mismatch })
}
