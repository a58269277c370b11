//! Standard modules `Δ_k` and the exceptional sequences `E_w`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{
    ext1_by_cocycles, ext_dim, extension_by_cocycle, extension_cocycles, hom_dim, ideal_summand_module,
    is_isomorphic, left_mult_on_summands, nonsplit_pushout, tensor_with_ideal, Algebra, Arrow, Ideal, ModuleMap, RightModule,
};
use crate::error::{Error, Result};
use crate::sym::Permutation;
use crate::tilt::{ideal_i_w, TiltingModules};

/// `coker(e_i I -> e_{i+1} I)` for left multiplication by `β_{i+1}`, with
/// `e_0 I = 0`.
fn beta_cokernel(ideal: &Ideal, i: usize) -> Result<RightModule> {
    let alg = ideal.algebra();
    let top = ideal_summand_module(ideal, i + 1)?;
    if i == 0 {
        return Ok(top);
    }
    let bottom = ideal_summand_module(ideal, i)?;
    let beta = alg.arrow_element(Arrow::beta(i + 1));
    let map: ModuleMap = left_mult_on_summands(ideal, &beta, i + 1, i);
    debug_assert!(map.is_homomorphism(&bottom, &top));
    Ok(map.cokernel(&top).0)
}

fn check_position(alg: &Algebra, k: usize) -> Result<()> {
    if k == 0 || k > alg.n() {
        return Err(Error::VertexOutOfRange { vertex: k, n: alg.n() });
    }
    Ok(())
}

/// `Δ_k = coker(β_{i+1}·: e_i Λ -> e_{i+1} Λ)` with `i = n - k`.
pub fn standard_module(algebra: &Arc<Algebra>, k: usize) -> Result<RightModule> {
    check_position(algebra, k)?;
    beta_cokernel(&Ideal::whole(algebra), algebra.n() - k)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ExceptionalSequence {
    pub modules: Vec<RightModule>,
}

/// `E_{w,k} = coker(e_i I_w -> e_{i+1} I_w)`, `k = n - i`.
pub fn exceptional_member(algebra: &Arc<Algebra>, w: &Permutation, k: usize) -> Result<RightModule> {
    check_position(algebra, k)?;
    beta_cokernel(&ideal_i_w(algebra, w)?, algebra.n() - k)
}

/// `E_{w,k}` as `Δ_k ⊗ I_w`.
pub fn exceptional_member_by_tensor(algebra: &Arc<Algebra>, w: &Permutation, k: usize) -> Result<RightModule> {
    tensor_with_ideal(&standard_module(algebra, k)?, &ideal_i_w(algebra, w)?)
}

/// `E_w = (E_{w,1}, …, E_{w,n})`, checked to be a full exceptional sequence.
pub fn exceptional_sequence(algebra: &Arc<Algebra>, w: &Permutation) -> Result<ExceptionalSequence> {
    let ideal = ideal_i_w(algebra, w)?;
    let n = algebra.n();
    let modules = (1..=n).map(|k| beta_cokernel(&ideal, n - k)).collect::<Result<Vec<_>>>()?;
    if let Some(v) = exceptional_violation(&modules)? {
        return Err(Error::Construction(format!("E_{w} is not exceptional: {v}")));
    }
    Ok(ExceptionalSequence { modules })
}

/// A failed condition of a full exceptional sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExceptionalViolation {
    Length { expected: usize, got: usize },
    /// `End(E_k) != K` or `Ext^q(E_k, E_k) != 0`.
    NotExceptional { position: usize, degree: usize, dim: usize },
    /// `Ext^q(E_j, E_i) != 0` for `i < j`.
    WrongDirection { from: usize, to: usize, degree: usize, dim: usize },
}

impl std::fmt::Display for ExceptionalViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Length { expected, got } => write!(f, "{got} modules, expected {expected}"),
            Self::NotExceptional { position, degree, dim } => {
                write!(f, "dim Ext^{degree}(E_{position}, E_{position}) = {dim}")
            }
            Self::WrongDirection { from, to, degree, dim } => write!(f, "dim Ext^{degree}(E_{from}, E_{to}) = {dim}"),
        }
    }
}

fn ext_or_hom(m: &RightModule, n: &RightModule, q: usize) -> Result<usize> {
    if q == 0 {
        Ok(hom_dim(m, n))
    } else {
        ext_dim(m, n, q)
    }
}

/// The first violated condition, or `None` for a full exceptional sequence.
pub fn exceptional_violation(modules: &[RightModule]) -> Result<Option<ExceptionalViolation>> {
    let Some(first) = modules.first() else {
        return Ok(Some(ExceptionalViolation::Length { expected: 1, got: 0 }));
    };
    let n = first.n();
    if modules.len() != n {
        return Ok(Some(ExceptionalViolation::Length { expected: n, got: modules.len() }));
    }
    for (k, e) in modules.iter().enumerate() {
        for q in 0..=2 {
            let dim = ext_or_hom(e, e, q)?;
            if dim != usize::from(q == 0) {
                return Ok(Some(ExceptionalViolation::NotExceptional { position: k + 1, degree: q, dim }));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for q in 0..=2 {
                let dim = ext_or_hom(&modules[j], &modules[i], q)?;
                if dim != 0 {
                    return Ok(Some(ExceptionalViolation::WrongDirection { from: j + 1, to: i + 1, degree: q, dim }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_full_exceptional_sequence(modules: &[RightModule]) -> Result<bool> {
    Ok(exceptional_violation(modules)?.is_none())
}

/// Isomorphism classes of the first slots `e_1 T_x` over all interval nodes.
pub fn enumerate_exceptional_modules(modules: &TiltingModules) -> Result<Vec<RightModule>> {
    let mut classes: Vec<RightModule> = Vec::new();
    for t in &modules.objects {
        let m = t.slot(1);
        let mut known = false;
        for c in &classes {
            if c.dims() == m.dims() && is_isomorphic(c, m)? {
                known = true;
                break;
            }
        }
        if !known {
            classes.push(m.clone());
        }
    }
    Ok(classes)
}

/// The data behind [`left_mutation_check`].
#[derive(Clone, Debug)]
pub struct LeftMutation {
    /// The middle term of `0 -> S_i -> X -> Δ_{i*} -> 0`.
    pub middle: RightModule,
    /// `L_{i*}(E_1)`.
    pub mutated: Vec<RightModule>,
    /// `E_{s_i}`.
    pub expected: Vec<RightModule>,
    /// Whether the pushout and cocycle constructions of `X` agree.
    pub extension_routes_agree: bool,
}

impl LeftMutation {
    pub fn holds(&self) -> Result<bool> {
        if !self.extension_routes_agree || self.mutated.len() != self.expected.len() {
            return Ok(false);
        }
        for (a, b) in self.mutated.iter().zip(&self.expected) {
            if !is_isomorphic(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Replaces `(Δ_{i*}, Δ_{i*+1})` in `E_1` by `(X, Δ_{i*})`, where `X` is the
/// nonsplit extension of `Δ_{i*}` by `S_i`.
pub fn left_mutation(algebra: &Arc<Algebra>, i: usize) -> Result<LeftMutation> {
    let n = algebra.n();
    if i == 0 || i >= n {
        return Err(Error::GeneratorOutOfRange { index: i, n });
    }
    let k = n - i;
    let delta = standard_module(algebra, k)?;
    let simple = RightModule::simple(algebra.clone(), i)?;
    let middle = nonsplit_pushout(&delta, &simple)?;
    let cocycle = extension_cocycles(&delta, &simple).nonsplit().ok_or(Error::ExtensionDimension(0))?;
    let by_cocycle = extension_by_cocycle(&delta, &simple, &cocycle)?;
    let extension_routes_agree = is_isomorphic(&middle, &by_cocycle)?;

    let mut mutated = exceptional_sequence(algebra, &Permutation::identity(n))?.modules;
    mutated[k - 1] = middle.clone();
    mutated[k] = delta;
    let expected = exceptional_sequence(algebra, &Permutation::simple(n, i)?)?.modules;
    Ok(LeftMutation { middle, mutated, expected, extension_routes_agree })
}

/// `L_{i*}(E_1) ≅ E_{s_i}` position by position.
pub fn left_mutation_check(algebra: &Arc<Algebra>, i: usize) -> Result<bool> {
    left_mutation(algebra, i)?.holds()
}

/// `dim Ext^1(Δ_{i*}, S_i)`, through cocycles.
pub fn standard_simple_ext(algebra: &Arc<Algebra>, i: usize) -> Result<usize> {
    let delta = standard_module(algebra, algebra.n() - i)?;
    Ok(ext1_by_cocycles(&delta, &RightModule::simple(algebra.clone(), i)?))
}
