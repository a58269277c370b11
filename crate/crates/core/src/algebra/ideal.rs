//! Two-sided ideals of `Λ_n`, their vertex summands `e_i I` as right modules,
//! and tensoring modules with ideals.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use super::module::{ModuleMap, RightModule};
use super::{Algebra, Element};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

/// A two-sided ideal, stored as the reduced row echelon basis of its span so
/// that equal ideals compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    algebra: Arc<Algebra>,
    rows: Matrix,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(dim {})", self.dim())
    }
}

fn echelon(dim: usize, vectors: &[Element]) -> Matrix {
    let m = Matrix::from_fn(vectors.len(), dim, |i, j| vectors[i][j].clone());
    let (r, pivots) = m.rref();
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

impl Ideal {
    /// The smallest ideal containing `gens`, found by saturating the span
    /// with products by arrows and idempotents on both sides.
    pub fn closure(algebra: &Arc<Algebra>, gens: &[Element]) -> Ideal {
        let dim = algebra.dim();
        let multipliers: Vec<Element> = (1..=algebra.n())
            .map(|i| algebra.idempotent(i))
            .chain(algebra.arrows().iter().map(|&a| algebra.arrow_element(a)))
            .collect();
        let mut rows = echelon(dim, gens);
        loop {
            let current: Vec<Element> = (0..rows.rows()).map(|i| rows.row(i).to_vec()).collect();
            let mut candidates = current.clone();
            for x in &current {
                for g in &multipliers {
                    candidates.push(algebra.mul(x, g));
                    candidates.push(algebra.mul(g, x));
                }
            }
            let next = echelon(dim, &candidates);
            if next.rows() == rows.rows() {
                break;
            }
            rows = next;
        }
        Ideal { algebra: algebra.clone(), rows }
    }

    pub fn whole(algebra: &Arc<Algebra>) -> Ideal {
        Ideal::closure(algebra, &[algebra.one()])
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Ideal {
        Ideal::closure(algebra, &[])
    }

    /// `I_i = Λ (1 - e_i) Λ`.
    pub fn complement_of_vertex(algebra: &Arc<Algebra>, i: usize) -> Result<Ideal> {
        algebra.check_vertex(i)?;
        let mut g = algebra.one();
        g[algebra.idempotent_index(i)] = Rational::zero();
        Ok(Ideal::closure(algebra, &[g]))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn basis(&self) -> Vec<Element> {
        (0..self.rows.rows()).map(|i| self.rows.row(i).to_vec()).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let joined = echelon(self.algebra.dim(), &[self.basis(), vec![x.to_vec()]].concat());
        joined.rows() == self.dim()
    }

    /// `I · J`, the span of all products.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.algebra.n() != other.algebra.n() {
            return Err(Error::RankMismatch { left: self.algebra.n(), right: other.algebra.n() });
        }
        let (a, b) = (self.basis(), other.basis());
        let products: Vec<Element> = a.iter().flat_map(|x| b.iter().map(|y| self.algebra.mul(x, y))).collect();
        Ok(Ideal::closure(&self.algebra, &products))
    }

    /// Basis of `e_i I e_j` as columns in the path coordinates of `e_i Λ e_j`.
    pub fn block_basis(&self, i: usize, j: usize) -> Matrix {
        let range = self.algebra.block(i, j);
        let projected =
            Matrix::from_fn(range.len(), self.dim(), |r, c| self.rows[(c, range.start + r)].clone());
        projected.column_basis()
    }

    /// `dim e_i I e_j`.
    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.block_basis(i, j).cols()
    }
}

/// The right module `e_i I`, with the vertex space at `j` spanned by
/// [`Ideal::block_basis`]`(i, j)`.
pub fn ideal_summand_module(ideal: &Ideal, i: usize) -> Result<RightModule> {
    let alg = ideal.algebra.clone();
    alg.check_vertex(i)?;
    let bases: Vec<Matrix> = (1..=alg.n()).map(|j| ideal.block_basis(i, j)).collect();
    let arrows = alg
        .arrows()
        .iter()
        .map(|&a| {
            let (s, t) = (a.source(), a.target());
            let image = alg.right_mult_block(i, s, t, &alg.arrow_element(a)).mul(&bases[s - 1]);
            bases[t - 1].solve(&image).expect("ideals are right ideals")
        })
        .collect();
    let dims = bases.iter().map(Matrix::cols).collect();
    RightModule::new(alg, dims, arrows)
}

/// Left multiplication by `λ ∈ e_u Λ e_v` as a map `e_v I -> e_u I`, in the
/// bases of [`ideal_summand_module`].
pub(crate) fn left_mult_on_summands(ideal: &Ideal, lambda: &[Rational], u: usize, v: usize) -> ModuleMap {
    let alg = &ideal.algebra;
    let blocks = (1..=alg.n())
        .map(|j| {
            let (bu, bv) = (ideal.block_basis(u, j), ideal.block_basis(v, j));
            let image = alg.left_mult_block(lambda, u, v, j).mul(&bv);
            bu.solve(&image).expect("ideals are left ideals")
        })
        .collect();
    ModuleMap::new(blocks)
}

/// `M ⊗_Λ I` for `M` of projective dimension at most one, computed from the
/// presentation `P_1 -> P_0 -> M -> 0` by replacing each `e_u Λ` with `e_u I`.
pub fn tensor_with_ideal(m: &RightModule, ideal: &Ideal) -> Result<RightModule> {
    let res = m.resolution()?;
    if res.length() > 1 {
        return Err(Error::ProjectiveDimensionTooLarge(res.length()));
    }
    let d1 = &res.differentials[0];
    let summands = |vertices: &[usize]| -> Result<Vec<RightModule>> {
        vertices.iter().map(|&u| ideal_summand_module(ideal, u)).collect()
    };
    let targets = summands(&d1.target)?;
    let sources = summands(&d1.source)?;
    let target_refs: Vec<&RightModule> = targets.iter().collect();
    let source_refs: Vec<&RightModule> = sources.iter().collect();
    let parts: Vec<Vec<ModuleMap>> = d1
        .target
        .iter()
        .enumerate()
        .map(|(s, &u)| {
            d1.source.iter().enumerate().map(|(t, &v)| left_mult_on_summands(ideal, &d1.entries[s][t], u, v)).collect()
        })
        .collect();
    let map = ModuleMap::from_parts(&source_refs, &target_refs, &parts);
    let sum = RightModule::direct_sum(m.algebra(), &target_refs);
    let (coker, _) = map.cokernel(&sum);
    Ok(coker)
}
