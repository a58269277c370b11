//! Tilting modules over the Auslander algebra of `K[x]/(x^n)`, indexed by
//! positive braids, together with the combinatorics that counts them.

pub mod algebra;
pub mod braid;
pub mod complex;
pub mod counting;
pub mod error;
pub mod exc;
pub mod export;
pub mod matrix;
pub mod rational;
pub mod sym;
pub mod tilt;

pub use algebra::{build_algebra, Algebra, Arrow, Ideal, LeftModule, ModuleMap, RightModule};
pub use braid::PositiveBraid;
pub use complex::SigmaComplex;
pub use counting::CountReport;
pub use error::{Error, Result};
pub use exc::ExceptionalSequence;
pub use matrix::Matrix;
pub use rational::Rational;
pub use sym::{LatticeOp, Permutation, Side};
pub use tilt::{Mutation, TiltingModules, TiltingObject, TiltingPoset};
