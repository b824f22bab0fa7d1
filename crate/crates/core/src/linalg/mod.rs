//! Vectors over `Z_r`, translation permutations, subspaces and dense
//! linear solves over a finite field.

mod matrix;
mod perm;
mod subspace;
mod vector;

pub use matrix::{mat_vec, solve_linear, LeftInverse, Unsolvable};
pub use perm::{hyperplane_rows, vec_perm, Permutation};
pub use subspace::Subspace;
pub use vector::{add_scaled_int, dot_int, RVector};
