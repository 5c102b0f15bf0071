//! Deletion-contraction trees and the Tutte coverings they witness.

mod covering;
mod refine;
mod tree;

pub use covering::{
    covering_from_tree, indecomposable_covering, indecomposable_covering_with, leaf_class_multiset,
    ClassMultiset, TutteCovering,
};
pub use refine::{
    common_refinement, refine_to_indecomposable, refine_to_indecomposable_with, CommonRefinement,
    CrossFactor, Factor, Refinement,
};
pub use tree::{BranchOrder, DCTree, Link, Node, NodeId, Relabeling, TreeDefect};

/// The one-node tree on `m`.
pub fn trivial_tree(m: std::sync::Arc<crate::Matroid>) -> DCTree {
    DCTree::trivial(m)
}
