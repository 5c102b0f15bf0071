use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matroid::{IndecomposableClass, Matroid};
use crate::morphism::MatroidMorphism;
use crate::par::Execution;
use crate::strategy::PivotStrategy;

use super::tree::{BranchOrder, DCTree, NodeId};

/// Multiplicity of each indecomposable class among a covering's sources.
pub type ClassMultiset = BTreeMap<IndecomposableClass, usize>;

/// The leaf inclusions of a valid deletion-contraction tree, one leg per
/// leaf in leaf order. The tree is kept as the certificate.
///
/// Two coverings compare equal when they have the same target and the same
/// legs; the witnessing trees are not compared.
#[derive(Debug, Clone)]
pub struct TutteCovering {
    target: Arc<Matroid>,
    legs: Vec<MatroidMorphism>,
    leaves: Vec<NodeId>,
    witness: DCTree,
}

impl TutteCovering {
    pub fn from_tree(tree: DCTree) -> Result<Self> {
        if let Err(defects) = tree.validate() {
            let msg = defects
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::InvalidTree(msg));
        }
        let leaves = tree.leaves();
        let legs = leaves
            .iter()
            .map(|l| tree.inclusion_to(*l, DCTree::ROOT))
            .collect::<Result<Vec<_>>>()?;
        Ok(TutteCovering {
            target: tree.root().matroid().clone(),
            legs,
            leaves,
            witness: tree,
        })
    }

    /// The singleton covering by the identity.
    pub fn identity(m: Arc<Matroid>) -> Self {
        TutteCovering::from_tree(DCTree::trivial(m)).expect("a one-node tree is valid")
    }

    pub fn target(&self) -> &Arc<Matroid> {
        &self.target
    }

    pub fn legs(&self) -> &[MatroidMorphism] {
        &self.legs
    }

    pub fn witness(&self) -> &DCTree {
        &self.witness
    }

    /// Witness node for each leg.
    pub fn leaf_nodes(&self) -> &[NodeId] {
        &self.leaves
    }

    pub fn is_indecomposable(&self) -> bool {
        self.legs.iter().all(|l| l.source().is_indecomposable())
    }

    /// Re-checks the witness and that each leg is its leaf-to-root composite.
    pub fn validate(&self) -> Result<()> {
        let fresh = TutteCovering::from_tree(self.witness.clone())
            .map_err(|e| Error::InvalidCover(e.to_string()))?;
        if *fresh.target != *self.target || fresh.legs != self.legs {
            return Err(Error::InvalidCover(
                "legs differ from the witness's leaf inclusions".into(),
            ));
        }
        Ok(())
    }
}

impl PartialEq for TutteCovering {
    fn eq(&self, other: &Self) -> bool {
        *self.target == *other.target && self.legs == other.legs
    }
}

impl Eq for TutteCovering {}

pub fn covering_from_tree(tree: DCTree) -> Result<TutteCovering> {
    TutteCovering::from_tree(tree)
}

/// A covering of `m` by indecomposable matroids, obtained by splitting every
/// leaf that still has a non-degenerate element.
pub fn indecomposable_covering(m: Arc<Matroid>, strategy: PivotStrategy) -> TutteCovering {
    indecomposable_covering_with(m, strategy, BranchOrder::DeleteFirst, Execution::default())
}

pub fn indecomposable_covering_with(
    m: Arc<Matroid>,
    strategy: PivotStrategy,
    order: BranchOrder,
    exec: Execution,
) -> TutteCovering {
    let mut tree = DCTree::trivial(m);
    tree.expand_fully(DCTree::ROOT, strategy, order, exec)
        .expect("the root of a fresh tree is a leaf");
    TutteCovering::from_tree(tree).expect("expansion yields a valid tree")
}

pub fn leaf_class_multiset(c: &TutteCovering) -> Result<ClassMultiset> {
    let mut out = ClassMultiset::new();
    for (i, leg) in c.legs().iter().enumerate() {
        let class = leg
            .source()
            .indecomposable_class()
            .map_err(|_| Error::NotIndecomposableCover(i))?;
        *out.entry(class).or_default() += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::is_morphism;

    fn u(k: usize, n: usize) -> Arc<Matroid> {
        Arc::new(Matroid::uniform(k, n).unwrap())
    }

    fn ms(pairs: &[((usize, usize), usize)]) -> ClassMultiset {
        pairs
            .iter()
            .map(|((l, c), k)| (IndecomposableClass::new(*l, *c), *k))
            .collect()
    }

    #[test]
    fn trivial_cover_is_identity() {
        let m = u(1, 2);
        let c = covering_from_tree(DCTree::trivial(m.clone())).unwrap();
        assert_eq!(c.legs(), &[MatroidMorphism::identity(m)]);
        let e = TutteCovering::identity(Arc::new(Matroid::empty()));
        assert_eq!(leaf_class_multiset(&e).unwrap(), ms(&[((0, 0), 1)]));
    }

    #[test]
    fn u12_cover() {
        let c = indecomposable_covering(u(1, 2), PivotStrategy::MinIndex);
        assert_eq!(c.legs().len(), 2);
        assert_eq!(
            leaf_class_multiset(&c).unwrap(),
            ms(&[((0, 1), 1), ((1, 0), 1)])
        );
        assert!(c.legs().iter().all(is_morphism));
        c.validate().unwrap();
    }

    #[test]
    fn u23_cover() {
        for s in [
            PivotStrategy::MinIndex,
            PivotStrategy::MaxIndex,
            PivotStrategy::Seeded(9),
        ] {
            let c = indecomposable_covering(u(2, 3), s);
            assert_eq!(
                leaf_class_multiset(&c).unwrap(),
                ms(&[((0, 2), 1), ((0, 1), 1), ((1, 0), 1)])
            );
        }
        let c = indecomposable_covering(u(2, 3), PivotStrategy::MinIndex);
        let seq: Vec<IndecomposableClass> = c
            .legs()
            .iter()
            .map(|l| l.source().indecomposable_class().unwrap())
            .collect();
        assert_eq!(
            seq,
            vec![
                IndecomposableClass::new(0, 2),
                IndecomposableClass::new(0, 1),
                IndecomposableClass::new(1, 0)
            ]
        );
    }

    #[test]
    fn indecomposable_input_gives_singleton() {
        let m = Arc::new(u(0, 1).direct_sum(&u(1, 1)).unwrap());
        let c = indecomposable_covering(m.clone(), PivotStrategy::MinIndex);
        assert_eq!(c, TutteCovering::identity(m));
    }

    #[test]
    fn decomposable_multiset_rejected() {
        let c = TutteCovering::identity(u(1, 2));
        assert!(matches!(
            leaf_class_multiset(&c),
            Err(Error::NotIndecomposableCover(0))
        ));
    }

    #[test]
    fn invalid_tree_rejected() {
        let mut t = DCTree::trivial(u(1, 2));
        t.push_child_unchecked(DCTree::ROOT, super::super::Link::Pass, u(0, 2))
            .unwrap();
        assert!(matches!(covering_from_tree(t), Err(Error::InvalidTree(_))));
    }
}
