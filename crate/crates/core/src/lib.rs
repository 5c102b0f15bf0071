//! Matroids on small labeled ground sets, their Tutte polynomials,
//! deletion-contraction trees, Tutte coverings, and the class of a matroid in
//! the free abelian group on (loops, coloops) pairs.
//!
//! ```
//! use matk0::{tutte_direct, k0_class, tutte_from_class, Matroid};
//!
//! let u23 = Matroid::uniform(2, 3).unwrap();
//! let t = tutte_direct(&u23).unwrap();
//! assert_eq!(t.to_string(), "x^2 + x + y");
//! assert_eq!(tutte_from_class(&k0_class(&u23)).unwrap(), t);
//! ```
//!
//! Data-parallel loops use rayon when the `parallel` feature is on (the
//! default). Every entry point also has a `_with` form taking an
//! [`Execution`] so both paths can be run side by side.

pub mod bits;
pub mod dc;
pub mod error;
pub mod graph;
pub mod io;
pub mod iso;
pub mod kzero;
pub mod matroid;
pub mod morphism;
mod par;
pub mod poly;
pub mod samples;
pub mod strategy;
pub mod tutte;

pub use dc::{
    common_refinement, covering_from_tree, indecomposable_covering, leaf_class_multiset,
    refine_to_indecomposable, BranchOrder, CommonRefinement, DCTree, Link, NodeId, TutteCovering,
};
pub use error::{Error, Result};
pub use graph::{Edge, Multigraph};
pub use iso::{are_isomorphic, automorphism_count};
pub use kzero::{duality_involution, k0_add, k0_class, k0_negate, tutte_from_class, KZeroElement};
pub use matroid::{ElementClass, GroundSet, IndecomposableClass, Matroid};
pub use morphism::{is_morphism, MatroidMorphism};
pub use par::Execution;
pub use poly::{poly_add, poly_mul, TuttePolynomial};
pub use strategy::PivotStrategy;
pub use tutte::{tutte_dc, tutte_direct, MemoPolicy};
