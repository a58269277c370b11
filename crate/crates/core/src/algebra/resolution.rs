//! Minimal projective resolutions, Ext groups and explicit extensions.
//!
//! A map between sums of indecomposable projectives
//! `⊕_t e_{v_t} Λ -> ⊕_s e_{u_s} Λ` is determined by where it sends the
//! generators `e_{v_t}`, namely `Σ_s λ_{s,t}` with `λ_{s,t} ∈ e_{u_s} Λ e_{v_t}`.

use std::sync::Arc;

use num_traits::Zero;

use super::hom::hom_space;
use super::module::{ModuleMap, RightModule};
use super::{Algebra, BasisPath, Element};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveMap {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// `entries[s][t] = λ_{s,t}`.
    pub entries: Vec<Vec<Element>>,
}

/// `0 -> P_2 -> P_1 -> P_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// Vertices of the indecomposable summands of `P_0, P_1, P_2`.
    pub terms: [Vec<usize>; 3],
    /// `d_1: P_1 -> P_0` and `d_2: P_2 -> P_1`.
    pub differentials: [ProjectiveMap; 2],
    pub p0: RightModule,
    pub augmentation: ModuleMap,
    /// The first syzygy `Ω M = ker(P_0 -> M)` and its inclusion into `P_0`.
    pub syzygy: RightModule,
    pub syzygy_inclusion: ModuleMap,
}

struct Cover {
    vertices: Vec<usize>,
    module: RightModule,
    map: ModuleMap,
}

/// Lifts a basis of the top of `m` to a surjection from a sum of projectives.
fn cover(m: &RightModule) -> (Cover, Vec<Matrix>) {
    let alg = m.algebra().clone();
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for (j, rad) in (1..=m.n()).zip(m.radical_bases()) {
        let top = Matrix::complement(&rad);
        for k in 0..top.cols() {
            vertices.push(j);
            generators.push(top.select_columns(&[k]));
        }
    }
    let module = RightModule::projective_sum(&alg, &vertices);
    let blocks = (1..=m.n())
        .map(|t| {
            let mut columns: Vec<Matrix> = Vec::new();
            for (&u, g) in vertices.iter().zip(&generators) {
                for k in 1..=u.min(t) {
                    columns.push(m.path_matrix(BasisPath { source: u, valley: k, target: t }).mul(g));
                }
            }
            Matrix::hstack(m.dim_at(t), &columns.iter().collect::<Vec<_>>())
        })
        .collect();
    let map = ModuleMap::new(blocks);
    debug_assert!(map.is_homomorphism(&module, m) && map.is_surjective());
    (Cover { vertices, module, map }, generators)
}

/// Reads a vector of `(⊕_s e_{u_s} Λ) e_v` as the tuple `(λ_s)_s`.
fn split_coordinates(alg: &Algebra, sum_vertices: &[usize], v: usize, x: &Matrix) -> Vec<Element> {
    let mut offset = 0;
    sum_vertices
        .iter()
        .map(|&u| {
            let mut lambda = alg.zero();
            for k in 1..=u.min(v) {
                lambda[alg.index_of(BasisPath { source: u, valley: k, target: v })] = x[(offset + k - 1, 0)].clone();
            }
            offset += u.min(v);
            lambda
        })
        .collect()
}

/// The differential induced by covering the kernel `ker` (included in the
/// projective sum with summands `target`) by the generators `gens`.
fn differential(
    alg: &Algebra,
    target: &[usize],
    source: &[usize],
    inclusion: &ModuleMap,
    gens: &[Matrix],
) -> ProjectiveMap {
    let mut entries = vec![Vec::with_capacity(source.len()); target.len()];
    for (&v, g) in source.iter().zip(gens) {
        let x = inclusion.block(v).mul(g);
        for (s, lambda) in split_coordinates(alg, target, v, &x).into_iter().enumerate() {
            entries[s].push(lambda);
        }
    }
    ProjectiveMap { source: source.to_vec(), target: target.to_vec(), entries }
}

impl Resolution {
    pub(crate) fn compute(m: &RightModule) -> Result<Self> {
        let alg = m.algebra().clone();
        let (c0, _) = cover(m);
        let (k1, inc1) = c0.map.kernel(&c0.module);
        let (c1, g1) = cover(&k1);
        let d1 = differential(&alg, &c0.vertices, &c1.vertices, &inc1, &g1);
        let (k2, inc2) = c1.map.kernel(&c1.module);
        let (c2, g2) = cover(&k2);
        let d2 = differential(&alg, &c1.vertices, &c2.vertices, &inc2, &g2);
        let (k3, _) = c2.map.kernel(&c2.module);
        if !k3.is_zero() {
            return Err(Error::Construction("projective resolution longer than the global dimension".into()));
        }
        Ok(Resolution {
            terms: [c0.vertices, c1.vertices, c2.vertices],
            differentials: [d1, d2],
            p0: c0.module,
            augmentation: c0.map,
            syzygy: k1,
            syzygy_inclusion: inc1,
        })
    }

    /// Projective dimension.
    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|t| !t.is_empty()).unwrap_or(0)
    }

    /// The coboundary `Hom(P_k, N) -> Hom(P_{k+1}, N)` for `k` in `0..2`.
    fn coboundary(&self, k: usize, n: &RightModule) -> Matrix {
        let d = &self.differentials[k];
        let rows: usize = d.source.iter().map(|&v| n.dim_at(v)).sum();
        let cols: usize = d.target.iter().map(|&u| n.dim_at(u)).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r = 0;
        for (t, &v) in d.source.iter().enumerate() {
            let mut c = 0;
            for (s, &u) in d.target.iter().enumerate() {
                out.set_block(r, c, &n.element_matrix(&d.entries[s][t], u, v));
                c += n.dim_at(u);
            }
            r += n.dim_at(v);
        }
        out
    }
}

/// Minimal projective cover `P -> M`.
pub fn projective_cover(m: &RightModule) -> (RightModule, ModuleMap) {
    let (c, _) = cover(m);
    (c.module, c.map)
}

pub fn projective_resolution(m: &RightModule) -> Result<Arc<Resolution>> {
    m.resolution()
}

/// `dim Ext^q(M, N)` for `q` in `0..=2`.
pub fn ext_dim(m: &RightModule, n: &RightModule, q: usize) -> Result<usize> {
    if q > 2 {
        return Err(Error::InvalidExtDegree(q));
    }
    if m.n() != n.n() {
        return Err(Error::RankMismatch { left: m.n(), right: n.n() });
    }
    let res = m.resolution()?;
    let cochains: usize = res.terms[q].iter().map(|&v| n.dim_at(v)).sum();
    let outgoing = if q < 2 { res.coboundary(q, n).rank() } else { 0 };
    let incoming = if q > 0 { res.coboundary(q - 1, n).rank() } else { 0 };
    Ok(cochains - outgoing - incoming)
}

/// Cocycles and coboundaries describing `Ext^1(M, N)` as extensions.
///
/// A cocycle is a family `c_a: M_s -> N_t` such that the block matrices
/// `[[N_a, c_a], [0, M_a]]` satisfy the relations; coboundaries are the
/// families `N_a h_s - h_t M_a`.
#[derive(Clone, Debug)]
pub struct Cocycles {
    /// Cocycle basis, one per column.
    pub cocycles: Matrix,
    /// Spanning set of the coboundaries, one per column.
    pub coboundaries: Matrix,
}

impl Cocycles {
    pub fn ext_dim(&self) -> usize {
        self.cocycles.cols() - self.coboundaries.rank()
    }

    /// A cocycle whose class is nonzero, if any.
    pub fn nonsplit(&self) -> Option<Vec<Rational>> {
        let base = self.coboundaries.rank();
        (0..self.cocycles.cols()).find_map(|k| {
            let col = self.cocycles.select_columns(&[k]);
            let joined = Matrix::hstack(self.coboundaries.rows(), &[&self.coboundaries, &col]);
            (joined.rank() > base).then(|| col.col(0))
        })
    }
}

fn arrow_offsets(m: &RightModule, n: &RightModule) -> Vec<usize> {
    let mut out = vec![0];
    for &a in m.algebra().arrows() {
        let last = *out.last().unwrap();
        out.push(last + n.dim_at(a.target()) * m.dim_at(a.source()));
    }
    out
}

pub fn extension_cocycles(m: &RightModule, n: &RightModule) -> Cocycles {
    let alg = m.algebra().clone();
    let off = arrow_offsets(m, n);
    let vars = *off.last().unwrap();
    let pos = |a| alg.arrow_position(a);

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for rel in alg.relations() {
        let i = rel.vertex;
        for r in 0..n.dim_at(i) {
            for c in 0..m.dim_at(i) {
                let mut row = vec![Rational::zero(); vars];
                for &(coef, a, b) in &rel.terms {
                    let coef = Rational::from_integer(coef);
                    let mid = a.target();
                    // (N_b c_a)[r, c]
                    let (nb, ma_cols) = (n.arrow(b), m.dim_at(a.source()));
                    for k in 0..n.dim_at(mid) {
                        if !nb[(r, k)].is_zero() {
                            row[off[pos(a)] + k * ma_cols + c] += &(&coef * &nb[(r, k)]);
                        }
                    }
                    // (c_b M_a)[r, c]
                    let (ma, cb_cols) = (m.arrow(a), m.dim_at(mid));
                    for k in 0..m.dim_at(mid) {
                        if !ma[(k, c)].is_zero() {
                            row[off[pos(b)] + r * cb_cols + k] += &(&coef * &ma[(k, c)]);
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_fn(rows.len(), vars, |i, j| rows[i][j].clone());
    let cocycles = if system.rows() == 0 { Matrix::identity(vars) } else { system.kernel() };

    let mut h_off = vec![0];
    for j in 1..=m.n() {
        h_off.push(h_off[j - 1] + n.dim_at(j) * m.dim_at(j));
    }
    let mut coboundaries = Matrix::zeros(vars, h_off[m.n()]);
    for &a in alg.arrows() {
        let (s, t) = (a.source(), a.target());
        let (na, ma) = (n.arrow(a), m.arrow(a));
        for r in 0..n.dim_at(t) {
            for c in 0..m.dim_at(s) {
                let row = off[pos(a)] + r * m.dim_at(s) + c;
                for k in 0..n.dim_at(s) {
                    if !na[(r, k)].is_zero() {
                        coboundaries[(row, h_off[s - 1] + k * m.dim_at(s) + c)] += &na[(r, k)];
                    }
                }
                for k in 0..m.dim_at(t) {
                    if !ma[(k, c)].is_zero() {
                        coboundaries[(row, h_off[t - 1] + r * m.dim_at(t) + k)] -= &ma[(k, c)];
                    }
                }
            }
        }
    }
    Cocycles { cocycles, coboundaries }
}

/// `dim Ext^1(M, N)` through extension cocycles, independent of resolutions.
pub fn ext1_by_cocycles(m: &RightModule, n: &RightModule) -> usize {
    extension_cocycles(m, n).ext_dim()
}

/// The middle term `X` of `0 -> N -> X -> M -> 0` given by the cocycle `c`.
pub fn extension_by_cocycle(m: &RightModule, n: &RightModule, c: &[Rational]) -> Result<RightModule> {
    let alg = m.algebra().clone();
    let off = arrow_offsets(m, n);
    let dims: Vec<usize> = (1..=m.n()).map(|j| n.dim_at(j) + m.dim_at(j)).collect();
    let arrows = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let (s, t) = (a.source(), a.target());
            let (rows, cols) = (n.dim_at(t), m.dim_at(s));
            let ca = Matrix::from_fn(rows, cols, |r, col| c[off[k] + r * cols + col].clone());
            let mut x = Matrix::zeros(dims[t - 1], dims[s - 1]);
            x.set_block(0, 0, n.arrow(a));
            x.set_block(0, n.dim_at(s), &ca);
            x.set_block(rows, n.dim_at(s), m.arrow(a));
            x
        })
        .collect();
    RightModule::new(alg, dims, arrows)
}

/// The middle term of the unique nonsplit extension `0 -> N -> X -> M -> 0`
/// when `Ext^1(M, N)` is one-dimensional, built as the pushout of
/// `0 -> Ω M -> P_0 -> M -> 0` along a map `Ω M -> N` that does not extend
/// to `P_0`.
pub fn nonsplit_pushout(m: &RightModule, n: &RightModule) -> Result<RightModule> {
    let res = m.resolution()?;
    let omega = &res.syzygy;
    let inc = &res.syzygy_inclusion;
    let maps = hom_space(omega, n);
    let restrictions: Vec<Vec<Rational>> =
        hom_space(&res.p0, n).iter().map(|psi| psi.compose(inc).flatten()).collect();
    let width = maps.first().map_or(0, |f| f.flatten().len());
    let restricted = Matrix::from_fn(width, restrictions.len(), |i, j| restrictions[j][i].clone());
    let base = restricted.rank();
    let dim = maps.len() - base;
    if dim != 1 {
        return Err(Error::ExtensionDimension(dim));
    }
    let phi = maps
        .iter()
        .find(|f| {
            let col = Matrix::column(f.flatten());
            Matrix::hstack(width, &[&restricted, &col]).rank() > base
        })
        .expect("one class survives");
    let sum = RightModule::direct_sum(m.algebra(), &[&res.p0, n]);
    let blocks = (1..=m.n())
        .map(|j| Matrix::vstack(omega.dim_at(j), &[inc.block(j), &phi.block(j).neg()]))
        .collect();
    let (x, _) = ModuleMap::new(blocks).cokernel(&sum);
    Ok(x)
}
