//! Right and left `Λ_n`-modules as quiver representations, and module maps.
//!
//! For a right module `M` the space at vertex `j` is `M e_j`, and an arrow
//! `a: s -> t` is stored as the matrix of `m -> m·a`, a `d_t x d_s` matrix.
//! The action of a path is then the product of its arrow matrices taken
//! right to left.
//!
//! For a left module `N` the space at `j` is `e_j N` and `a: s -> t` is stored
//! as `x -> a·x`, a `d_s x d_t` matrix.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::resolution::Resolution;
use super::{Algebra, Arrow, BasisPath};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

#[derive(Clone)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    arrows: Vec<Matrix>,
    resolution: OnceLock<Arc<Resolution>>,
}

impl PartialEq for RightModule {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.n() == other.algebra.n() && self.dims == other.dims && self.arrows == other.arrows
    }
}

impl Eq for RightModule {}

impl fmt::Debug for RightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RightModule").field("dims", &self.dims).field("arrows", &self.arrows).finish()
    }
}

impl RightModule {
    /// Builds a representation after checking shapes and relations.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Self> {
        let m = RightModule { algebra, dims, arrows, resolution: OnceLock::new() };
        m.validate()?;
        Ok(m)
    }

    /// Like [`RightModule::new`] for internal constructions that are correct by
    /// design; the relation check only runs in debug builds.
    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Self {
        let m = RightModule { algebra, dims, arrows, resolution: OnceLock::new() };
        debug_assert_eq!(m.validate(), Ok(()));
        m
    }

    fn validate(&self) -> Result<()> {
        let n = self.algebra.n();
        if self.dims.len() != n || self.arrows.len() != self.algebra.arrows().len() {
            return Err(Error::Construction(format!(
                "expected {n} vertex spaces and {} arrows",
                self.algebra.arrows().len()
            )));
        }
        for (&a, m) in self.algebra.arrows().iter().zip(&self.arrows) {
            if m.rows() != self.dim_at(a.target()) || m.cols() != self.dim_at(a.source()) {
                return Err(Error::Construction(format!("arrow {} has shape {}x{}", a.name(), m.rows(), m.cols())));
            }
        }
        for rel in self.algebra.relations() {
            let d = self.dim_at(rel.vertex);
            let mut sum = Matrix::zeros(d, d);
            for &(c, first, second) in &rel.terms {
                let term = self.arrow(second).mul(self.arrow(first));
                sum = sum.add(&term.scale(&Rational::from_integer(c)));
            }
            if !sum.is_zero() {
                return Err(Error::Construction(format!("relation at vertex {} fails", rel.vertex)));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let n = algebra.n();
        let arrows = algebra.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        RightModule { algebra, dims: vec![0; n], arrows, resolution: OnceLock::new() }
    }

    /// The simple module `S_i`.
    pub fn simple(algebra: Arc<Algebra>, i: usize) -> Result<Self> {
        algebra.check_vertex(i)?;
        let dims: Vec<usize> = (1..=algebra.n()).map(|j| usize::from(j == i)).collect();
        let arrows = algebra.arrows().iter().map(|a| Matrix::zeros(dims[a.target() - 1], dims[a.source() - 1])).collect();
        Ok(RightModule::new_unchecked(algebra, dims, arrows))
    }

    /// The indecomposable projective `e_i Λ`, with the valley paths starting
    /// at `i` as basis.
    pub fn projective(algebra: Arc<Algebra>, i: usize) -> Result<Self> {
        algebra.check_vertex(i)?;
        let dims = (1..=algebra.n()).map(|j| i.min(j)).collect();
        let arrows = algebra
            .arrows()
            .iter()
            .map(|&a| algebra.right_mult_block(i, a.source(), a.target(), &algebra.arrow_element(a)))
            .collect();
        Ok(RightModule::new_unchecked(algebra, dims, arrows))
    }

    /// `⊕_s e_{u_s} Λ` in the given order.
    pub fn projective_sum(algebra: &Arc<Algebra>, vertices: &[usize]) -> Self {
        let parts: Vec<RightModule> =
            vertices.iter().map(|&u| RightModule::projective(algebra.clone(), u).expect("valid vertex")).collect();
        RightModule::direct_sum(algebra, &parts.iter().collect::<Vec<_>>())
    }

    /// The injective `D(Λ e_i)`.
    pub fn injective(algebra: Arc<Algebra>, i: usize) -> Result<Self> {
        Ok(LeftModule::projective(algebra, i)?.dual())
    }

    pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[&RightModule]) -> Self {
        let n = algebra.n();
        let dims: Vec<usize> = (0..n).map(|j| parts.iter().map(|p| p.dims[j]).sum()).collect();
        let arrows = algebra
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                let mut m = Matrix::zeros(dims[a.target() - 1], dims[a.source() - 1]);
                let (mut r, mut c) = (0, 0);
                for p in parts {
                    m.set_block(r, c, &p.arrows[k]);
                    r += p.dim_at(a.target());
                    c += p.dim_at(a.source());
                }
                m
            })
            .collect();
        RightModule::new_unchecked(algebra.clone(), dims, arrows)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    /// Dimensions `(d_1, ..., d_n)`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    /// Dimension at vertex `j` (1-based).
    pub fn dim_at(&self, j: usize) -> usize {
        self.dims[j - 1]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow(&self, a: Arrow) -> &Matrix {
        &self.arrows[self.algebra.arrow_position(a)]
    }

    pub fn arrow_matrices(&self) -> &[Matrix] {
        &self.arrows
    }

    /// Action of a basis path, `d_target x d_source`.
    pub fn path_matrix(&self, p: BasisPath) -> Matrix {
        let mut m = Matrix::identity(self.dim_at(p.source));
        for a in p.arrows() {
            m = self.arrow(a).mul(&m);
        }
        m
    }

    /// Action of `e_u x e_v` as a map `M e_u -> M e_v`.
    pub fn element_matrix(&self, x: &[Rational], u: usize, v: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim_at(v), self.dim_at(u));
        for p in self.algebra.block(u, v) {
            if !x[p].is_zero() {
                m = m.add(&self.path_matrix(self.algebra.basis()[p]).scale(&x[p]));
            }
        }
        m
    }

    /// The submodule spanned at each vertex by the columns of `bases`, with
    /// its inclusion. Fails if the spans are not closed under the arrows.
    pub fn submodule(&self, bases: &[Matrix]) -> Result<(RightModule, ModuleMap)> {
        let bases: Vec<Matrix> = bases.iter().map(Matrix::column_basis).collect();
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (&a, m) in self.algebra.arrows().iter().zip(&self.arrows) {
            let image = m.mul(&bases[a.source() - 1]);
            let x = bases[a.target() - 1]
                .solve(&image)
                .ok_or_else(|| Error::Construction(format!("subspace not closed under {}", a.name())))?;
            arrows.push(x);
        }
        let dims = bases.iter().map(Matrix::cols).collect();
        let sub = RightModule::new_unchecked(self.algebra.clone(), dims, arrows);
        Ok((sub, ModuleMap::new(bases)))
    }

    /// The quotient by the submodule spanned by `bases`, with the projection.
    /// The quotient basis at each vertex is the standard complement.
    pub fn quotient(&self, bases: &[Matrix]) -> (RightModule, ModuleMap) {
        let n = self.n();
        let mut complements = Vec::with_capacity(n);
        let mut projections = Vec::with_capacity(n);
        for j in 0..n {
            let sub = bases[j].column_basis();
            let comp = Matrix::complement(&sub);
            let change = Matrix::hstack(self.dims[j], &[&sub, &comp]).inverse().expect("basis");
            projections.push(change.block(sub.cols(), 0, comp.cols(), self.dims[j]));
            complements.push(comp);
        }
        let arrows = self
            .algebra
            .arrows()
            .iter()
            .zip(&self.arrows)
            .map(|(&a, m)| projections[a.target() - 1].mul(m).mul(&complements[a.source() - 1]))
            .collect();
        let dims = complements.iter().map(Matrix::cols).collect();
        (RightModule::new_unchecked(self.algebra.clone(), dims, arrows), ModuleMap::new(projections))
    }

    /// The radical `M · rad Λ`, spanned by the images of the arrows.
    pub fn radical_bases(&self) -> Vec<Matrix> {
        (1..=self.n())
            .map(|j| {
                let images: Vec<&Matrix> = self
                    .algebra
                    .arrows()
                    .iter()
                    .zip(&self.arrows)
                    .filter(|(a, _)| a.target() == j)
                    .map(|(_, m)| m)
                    .collect();
                Matrix::hstack(self.dim_at(j), &images).column_basis()
            })
            .collect()
    }

    /// Dimensions of the top `M / M rad Λ`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_bases().iter().zip(&self.dims).map(|(r, d)| d - r.cols()).collect()
    }

    /// The dual `D M = Hom_K(M, K)`, a left module.
    pub fn dual(&self) -> LeftModule {
        LeftModule {
            algebra: self.algebra.clone(),
            dims: self.dims.clone(),
            arrows: self.arrows.iter().map(Matrix::transpose).collect(),
        }
    }

    /// The minimal projective resolution, computed once and cached.
    pub fn resolution(&self) -> Result<Arc<Resolution>> {
        if let Some(r) = self.resolution.get() {
            return Ok(r.clone());
        }
        let r = Arc::new(Resolution::compute(self)?);
        Ok(self.resolution.get_or_init(|| r).clone())
    }
}

impl Serialize for RightModule {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Arrows<'a>(&'a RightModule);
        impl Serialize for Arrows<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let m = self.0;
                let mut map = serializer.serialize_map(Some(m.arrows.len()))?;
                for (&a, mat) in m.algebra.arrows().iter().zip(&m.arrows) {
                    let rows: Vec<Vec<String>> =
                        (0..mat.rows()).map(|i| mat.row(i).iter().map(Rational::to_string).collect()).collect();
                    map.serialize_entry(&a.name(), &rows)?;
                }
                map.end()
            }
        }
        let mut s = serializer.serialize_struct("RightModule", 2)?;
        s.serialize_field("dims", &self.dims)?;
        s.serialize_field("arrows", &Arrows(self))?;
        s.end()
    }
}

/// A left module; arrow `a: s -> t` acts as `e_t N -> e_s N`.
#[derive(Clone, PartialEq, Eq)]
pub struct LeftModule {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    arrows: Vec<Matrix>,
}

impl fmt::Debug for LeftModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LeftModule").field("dims", &self.dims).field("arrows", &self.arrows).finish()
    }
}

impl LeftModule {
    /// The indecomposable projective left module `Λ e_i`.
    pub fn projective(algebra: Arc<Algebra>, i: usize) -> Result<Self> {
        algebra.check_vertex(i)?;
        let dims = (1..=algebra.n()).map(|j| i.min(j)).collect();
        let arrows = algebra
            .arrows()
            .iter()
            .map(|&a| algebra.left_mult_block(&algebra.arrow_element(a), a.source(), a.target(), i))
            .collect();
        Ok(LeftModule { algebra, dims, arrows })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The dual `D N`, a right module.
    pub fn dual(&self) -> RightModule {
        RightModule::new_unchecked(
            self.algebra.clone(),
            self.dims.clone(),
            self.arrows.iter().map(Matrix::transpose).collect(),
        )
    }

    /// The right module obtained through the anti-involution `α_i <-> β_{i+1}`.
    pub fn twist(&self) -> RightModule {
        let alg = &self.algebra;
        let arrows = alg.arrows().iter().map(|&a| self.arrows[alg.arrow_position(a.opposite())].clone()).collect();
        RightModule::new_unchecked(alg.clone(), self.dims.clone(), arrows)
    }
}

impl RightModule {
    /// The left module obtained through the anti-involution `α_i <-> β_{i+1}`.
    pub fn twist(&self) -> LeftModule {
        let alg = &self.algebra;
        let arrows = alg.arrows().iter().map(|&a| self.arrows[alg.arrow_position(a.opposite())].clone()).collect();
        LeftModule { algebra: alg.clone(), dims: self.dims.clone(), arrows }
    }
}

/// A homomorphism of right modules, one block `d'_j x d_j` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn new(blocks: Vec<Matrix>) -> Self {
        ModuleMap { blocks }
    }

    pub fn zero(source: &RightModule, target: &RightModule) -> Self {
        ModuleMap::new((1..=source.n()).map(|j| Matrix::zeros(target.dim_at(j), source.dim_at(j))).collect())
    }

    pub fn identity(m: &RightModule) -> Self {
        ModuleMap::new(m.dims.iter().map(|&d| Matrix::identity(d)).collect())
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    /// Block at vertex `j` (1-based).
    pub fn block(&self, j: usize) -> &Matrix {
        &self.blocks[j - 1]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> ModuleMap {
        ModuleMap::new(self.blocks.iter().zip(&inner.blocks).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap::new(self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, c: &Rational) -> ModuleMap {
        ModuleMap::new(self.blocks.iter().map(|a| a.scale(c)).collect())
    }

    pub fn linear_combination(maps: &[ModuleMap], coeffs: &[Rational]) -> ModuleMap {
        assert_eq!(maps.len(), coeffs.len());
        let mut acc = maps[0].scale(&coeffs[0]);
        for (m, c) in maps.iter().zip(coeffs).skip(1) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// All entries, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<Rational> {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_homomorphism(&self, source: &RightModule, target: &RightModule) -> bool {
        source.algebra.arrows().iter().all(|&a| {
            let (s, t) = (a.source(), a.target());
            target.arrow(a).mul(self.block(s)) == self.block(t).mul(source.arrow(a))
        })
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    /// `Σ_j tr(block_j)`, the trace of an endomorphism.
    pub fn trace(&self) -> Rational {
        let mut t = Rational::zero();
        for b in &self.blocks {
            t += &b.trace();
        }
        t
    }

    pub fn kernel(&self, source: &RightModule) -> (RightModule, ModuleMap) {
        let bases: Vec<Matrix> = self.blocks.iter().map(Matrix::kernel).collect();
        source.submodule(&bases).expect("kernels are submodules")
    }

    pub fn cokernel(&self, target: &RightModule) -> (RightModule, ModuleMap) {
        target.quotient(&self.blocks)
    }

    /// The map `h` with `h ∘ p = self`, for a surjection `p` whose kernel
    /// `self` annihilates.
    pub fn factor_through(&self, p: &ModuleMap) -> ModuleMap {
        let blocks = self
            .blocks
            .iter()
            .zip(&p.blocks)
            .map(|(g, p)| g.mul(&p.solve(&Matrix::identity(p.rows())).expect("surjective")))
            .collect();
        ModuleMap::new(blocks)
    }

    /// Image as a submodule of the target, with its inclusion.
    pub fn image(&self, target: &RightModule) -> (RightModule, ModuleMap) {
        target.submodule(&self.blocks).expect("images are submodules")
    }
}

impl ModuleMap {
    /// The map `⊕ sources -> ⊕ targets` with the given blocks;
    /// `parts[r][c]` maps `sources[c]` to `targets[r]`.
    pub fn from_parts(sources: &[&RightModule], targets: &[&RightModule], parts: &[Vec<ModuleMap>]) -> ModuleMap {
        let n = sources.first().or(targets.first()).map_or(0, |m| m.n());
        let blocks = (1..=n)
            .map(|j| {
                let rows: usize = targets.iter().map(|m| m.dim_at(j)).sum();
                let cols: usize = sources.iter().map(|m| m.dim_at(j)).sum();
                let mut out = Matrix::zeros(rows, cols);
                let mut r = 0;
                for (ri, t) in targets.iter().enumerate() {
                    let mut c = 0;
                    for (ci, s) in sources.iter().enumerate() {
                        out.set_block(r, c, parts[ri][ci].block(j));
                        c += s.dim_at(j);
                    }
                    r += t.dim_at(j);
                }
                out
            })
            .collect();
        ModuleMap::new(blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;

    #[test]
    fn projectives_have_expected_dims() {
        let alg = build_algebra(3).unwrap();
        for i in 1..=3 {
            let p = RightModule::projective(alg.clone(), i).unwrap();
            assert_eq!(p.dims(), (1..=3).map(|j| i.min(j)).collect::<Vec<_>>());
            assert_eq!(p.top_dims(), (1..=3).map(|j| usize::from(i == j)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn injectives_and_duality() {
        let alg = build_algebra(3).unwrap();
        for i in 1..=3 {
            let inj = RightModule::injective(alg.clone(), i).unwrap();
            assert_eq!(inj.total_dim(), (1..=3).map(|j| i.min(j)).sum::<usize>());
            assert_eq!(inj.dual().dual(), inj);
        }
        let simple = RightModule::simple(alg.clone(), 2).unwrap();
        assert_eq!(simple.dual().dual(), simple);
    }

    #[test]
    fn rejects_broken_relations() {
        let alg = build_algebra(2).unwrap();
        let one = Matrix::identity(1);
        let bad = RightModule::new(alg.clone(), vec![1, 1], vec![one.clone(), one]);
        assert!(bad.is_err());
        let shape = RightModule::new(alg, vec![1, 1], vec![Matrix::zeros(2, 1), Matrix::zeros(1, 1)]);
        assert!(shape.is_err());
    }

    #[test]
    fn kernel_and_cokernel_of_arrow_map() {
        // right multiplication by β_2 is the map e_1Λ -> e_2Λ, x -> β_2 x
        let alg = build_algebra(2).unwrap();
        let p1 = RightModule::projective(alg.clone(), 1).unwrap();
        let p2 = RightModule::projective(alg.clone(), 2).unwrap();
        let beta = alg.arrow_element(Arrow::beta(2));
        let blocks = (1..=2).map(|j| alg.left_mult_block(&beta, 2, 1, j)).collect();
        let f = ModuleMap::new(blocks);
        assert!(f.is_homomorphism(&p1, &p2));
        assert!(f.is_injective());
        let (coker, proj) = f.cokernel(&p2);
        assert_eq!(coker.dims(), &[0, 1]);
        assert!(proj.is_homomorphism(&p2, &coker));
        assert!(proj.is_surjective());
        let (ker, _) = f.kernel(&p1);
        assert!(ker.is_zero());
    }

    #[test]
    fn serializes_arrows_by_name() {
        let alg = build_algebra(2).unwrap();
        let p = RightModule::projective(alg, 1).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"dims":[1,1],"arrows":{"a1":[["1/1"]],"b2":[["0/1"]]}}"#);
    }
}
