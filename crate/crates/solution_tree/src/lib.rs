//! Positive integer solutions of `(x+y)^2 + (y+z)^2 + (z+x)^2 = 12xyz`, and of
//! the Markov equation `x^2 + y^2 + z^2 = 3xyz` for comparison, organised as a
//! binary tree of Vieta-style mutations.

mod census;
mod error;
mod format;
mod tree;
mod triple;

pub use census::{a101368_extend, divisibility_check, max_multiplicity_census};
pub use error::TreeError;
pub use format::{nodes_to_dot, nodes_to_json_lines, nodes_to_table, NodeRecord};
pub use tree::{children, descend, enumerate, Descent, Enumeration, TreeNode};
pub use triple::{
    is_singular, mutate, mutate_by_division, pairwise_coprime, verify, EquationKind, Position,
    Triple,
};
