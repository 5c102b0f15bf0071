use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::iso::are_isomorphic;
use crate::matroid::{ElementClass, Matroid};
use crate::morphism::MatroidMorphism;
use crate::par::{self, Execution};
use crate::strategy::PivotStrategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Annotation on a parent-to-child link.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Link {
    Delete(String),
    Contract(String),
    /// The child carries the parent's matroid unchanged.
    Pass,
}

impl Link {
    pub fn element(&self) -> Option<&str> {
        match self {
            Link::Delete(e) | Link::Contract(e) => Some(e),
            Link::Pass => None,
        }
    }

    /// The minor this link produces from `parent`.
    pub fn apply(&self, parent: &Matroid) -> Result<Matroid> {
        match self {
            Link::Delete(e) => parent.delete_element(e),
            Link::Contract(e) => parent.contract_element(e),
            Link::Pass => Ok(parent.clone()),
        }
    }
}

/// Which branch of a split comes first in leaf order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BranchOrder {
    #[default]
    DeleteFirst,
    ContractFirst,
}

#[derive(Debug, Clone)]
pub struct Node {
    matroid: Arc<Matroid>,
    parent: Option<NodeId>,
    children: Vec<(Link, NodeId)>,
}

impl Node {
    pub fn matroid(&self) -> &Arc<Matroid> {
        &self.matroid
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn children(&self) -> &[(Link, NodeId)] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// A problem found by [`DCTree::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDefect {
    pub node: NodeId,
    pub problem: String,
}

impl fmt::Display for TreeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: {}", self.node, self.problem)
    }
}

/// A rooted binary tree of matroids. Node 0 is the root. A node either is a
/// leaf, has a single `Pass` child carrying the same matroid, or splits on a
/// non-degenerate element `e` into `M \ e` and `M / e` (in either order).
#[derive(Debug, Clone)]
pub struct DCTree {
    nodes: Vec<Node>,
}

/// Node-by-node label translation produced by [`DCTree::normalize`]:
/// `map` sends labels of the supplied matroid at `node` to labels of the
/// literal minor that replaced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    pub node: NodeId,
    pub map: Vec<(String, String)>,
}

impl DCTree {
    pub const ROOT: NodeId = NodeId(0);

    /// The single-node tree on `m`.
    pub fn trivial(m: Arc<Matroid>) -> DCTree {
        DCTree {
            nodes: vec![Node {
                matroid: m,
                parent: None,
                children: Vec::new(),
            }],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> Result<&Node> {
        self.nodes.get(id.0).ok_or(Error::UnknownNode(id.0))
    }

    pub fn matroid(&self, id: NodeId) -> &Arc<Matroid> {
        &self.nodes[id.0].matroid
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> {
        self.nodes.iter().enumerate().map(|(i, n)| (NodeId(i), n))
    }

    /// Leaves in depth-first, left-to-right order.
    pub fn leaves(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![Self::ROOT];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id.0];
            if node.is_leaf() {
                out.push(id);
            }
            stack.extend(node.children.iter().rev().map(|(_, c)| *c));
        }
        out
    }

    /// Nodes from `id` up to the root, inclusive.
    pub fn path_to_root(&self, id: NodeId) -> Vec<NodeId> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur.0].parent {
            path.push(p);
            cur = p;
        }
        path
    }

    /// Appends a child without checking it against the parent. Used for
    /// `Pass` links and for loading trees, which are then validated.
    pub fn push_child_unchecked(
        &mut self,
        parent: NodeId,
        link: Link,
        matroid: Arc<Matroid>,
    ) -> Result<NodeId> {
        self.node(parent)?;
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node {
            matroid,
            parent: Some(parent),
            children: Vec::new(),
        });
        self.nodes[parent.0].children.push((link, id));
        Ok(id)
    }

    /// Splits `leaf` on element `e`, returning the new tree.
    pub fn expand_leaf(&self, leaf: NodeId, e: &str, order: BranchOrder) -> Result<DCTree> {
        let mut t = self.clone();
        t.expand_leaf_in_place(leaf, e, order)?;
        Ok(t)
    }

    /// Splits `leaf` on element `e`; returns the deletion and contraction
    /// children, in that order.
    pub fn expand_leaf_in_place(
        &mut self,
        leaf: NodeId,
        e: &str,
        order: BranchOrder,
    ) -> Result<(NodeId, NodeId)> {
        let node = self.node(leaf)?;
        if !node.is_leaf() {
            return Err(Error::NotALeaf(leaf.0));
        }
        let m = node.matroid.clone();
        if m.classify_element(e)? != ElementClass::NonDegenerate {
            return Err(Error::DegenerateElement(e.to_string()));
        }
        let del = Arc::new(m.delete_element(e)?);
        let con = Arc::new(m.contract_element(e)?);
        Ok(self.attach_split(leaf, e, order, del, con))
    }

    fn attach_split(
        &mut self,
        at: NodeId,
        e: &str,
        order: BranchOrder,
        del: Arc<Matroid>,
        con: Arc<Matroid>,
    ) -> (NodeId, NodeId) {
        let d = (Link::Delete(e.to_string()), del);
        let c = (Link::Contract(e.to_string()), con);
        let (first, second) = match order {
            BranchOrder::DeleteFirst => (d, c),
            BranchOrder::ContractFirst => (c, d),
        };
        let a = self.push_child_unchecked(at, first.0, first.1).unwrap();
        let b = self.push_child_unchecked(at, second.0, second.1).unwrap();
        match order {
            BranchOrder::DeleteFirst => (a, b),
            BranchOrder::ContractFirst => (b, a),
        }
    }

    /// Splits the subtree at `leaf` until every leaf below it is
    /// indecomposable. Independent branches are built in parallel and
    /// attached in a fixed order, so the result does not depend on `exec`.
    pub fn expand_fully(
        &mut self,
        leaf: NodeId,
        strategy: PivotStrategy,
        order: BranchOrder,
        exec: Execution,
    ) -> Result<()> {
        if !self.node(leaf)?.is_leaf() {
            return Err(Error::NotALeaf(leaf.0));
        }
        let plan = Plan::build(&self.nodes[leaf.0].matroid, strategy, exec);
        self.attach_plan(leaf, plan, order);
        Ok(())
    }

    fn attach_plan(&mut self, at: NodeId, plan: Plan, order: BranchOrder) {
        if let Some(split) = plan.split {
            let (d, c) = self.attach_split(
                at,
                &split.element,
                order,
                split.delete.matroid.clone(),
                split.contract.matroid.clone(),
            );
            self.attach_plan(d, split.delete, order);
            self.attach_plan(c, split.contract, order);
        }
    }

    /// Replaces the leaf `leaf` with the tree `sub`, whose root must carry a
    /// matroid equal to the leaf's.
    pub fn graft(&self, leaf: NodeId, sub: &DCTree) -> Result<DCTree> {
        let node = self.node(leaf)?;
        if !node.is_leaf() {
            return Err(Error::NotALeaf(leaf.0));
        }
        if **node.matroid() != **sub.root().matroid() {
            return Err(Error::InvalidTree(
                "grafted tree's root differs from the leaf".into(),
            ));
        }
        let mut t = self.clone();
        let mut ids = vec![leaf];
        for (i, n) in sub.nodes.iter().enumerate().skip(1) {
            let parent = ids[n.parent.unwrap().0];
            let link = sub.nodes[n.parent.unwrap().0]
                .children
                .iter()
                .find(|(_, c)| c.0 == i)
                .unwrap()
                .0
                .clone();
            ids.push(t.push_child_unchecked(parent, link, n.matroid.clone())?);
        }
        Ok(t)
    }

    /// Checks every structural condition, re-deriving each child matroid
    /// from its parent.
    pub fn validate(&self) -> std::result::Result<(), Vec<TreeDefect>> {
        let mut defects = Vec::new();
        let mut bad = |node: NodeId, problem: String| defects.push(TreeDefect { node, problem });
        if self.nodes[0].parent.is_some() {
            bad(Self::ROOT, "root has a parent".into());
        }
        for (id, node) in self.nodes() {
            for (_, c) in &node.children {
                if self.nodes.get(c.0).and_then(|n| n.parent) != Some(id) {
                    bad(id, format!("child {c} does not point back to its parent"));
                }
            }
            let m = &node.matroid;
            match node.children.as_slice() {
                [] => {}
                [(link, c)] => {
                    if *link != Link::Pass {
                        bad(id, "a single child must be linked by pass".into());
                    } else if *self.nodes[c.0].matroid != **m {
                        bad(id, format!("pass child {c} carries a different matroid"));
                    }
                }
                [(l1, c1), (l2, c2)] => {
                    let e = match (l1, l2) {
                        (Link::Delete(a), Link::Contract(b))
                        | (Link::Contract(a), Link::Delete(b))
                            if a == b =>
                        {
                            a
                        }
                        _ => {
                            bad(id, "a split needs one delete and one contract link on the same element".into());
                            continue;
                        }
                    };
                    match m.classify_element(e) {
                        Ok(ElementClass::NonDegenerate) => {}
                        Ok(class) => bad(id, format!("split element `{e}` is a {class:?}")),
                        Err(err) => {
                            bad(id, err.to_string());
                            continue;
                        }
                    }
                    for (link, c) in [(l1, c1), (l2, c2)] {
                        let want = link.apply(m).expect("element checked above");
                        if *self.nodes[c.0].matroid != want {
                            bad(id, format!("child {c} is not the minor {link:?}"));
                        }
                    }
                }
                more => bad(id, format!("{} children", more.len())),
            }
        }
        if defects.is_empty() {
            Ok(())
        } else {
            Err(defects)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// The composite ground-set inclusion from `node` into its ancestor
    /// `ancestor`, built by composing the single-link inclusions.
    pub fn inclusion_to(&self, node: NodeId, ancestor: NodeId) -> Result<MatroidMorphism> {
        let mut acc = MatroidMorphism::identity(self.matroid(node).clone());
        let mut cur = node;
        while cur != ancestor {
            let parent = self.nodes[cur.0].parent.ok_or_else(|| {
                Error::InvalidTree(format!("node {ancestor} is not an ancestor of {node}"))
            })?;
            let step = MatroidMorphism::inclusion(
                self.matroid(cur).clone(),
                self.matroid(parent).clone(),
            )?;
            acc = step.compose(&acc)?;
            cur = parent;
        }
        Ok(acc)
    }

    /// Rewrites a tree whose nodes carry matroids isomorphic, rather than
    /// equal, to the minors of their parents: every node gets the literal
    /// minor, and each substitution is reported with its label map. Link
    /// elements are read in the labels of the supplied parent matroid.
    pub fn normalize(&self) -> Result<(DCTree, Vec<Relabeling>)> {
        let mut out = DCTree::trivial(self.nodes[0].matroid.clone());
        let mut relabelings = Vec::new();
        // (node in self, node in out, supplied label -> literal label)
        let identity: HashMap<String, String> = self.nodes[0]
            .matroid
            .labels()
            .iter()
            .map(|l| (l.clone(), l.clone()))
            .collect();
        let mut stack = vec![(Self::ROOT, Self::ROOT, identity)];
        while let Some((src, dst, rename)) = stack.pop() {
            for (link, child) in &self.nodes[src.0].children {
                let translate = |e: &String| {
                    rename
                        .get(e)
                        .cloned()
                        .ok_or_else(|| Error::UnknownElement(e.clone()))
                };
                let link = match link {
                    Link::Delete(e) => Link::Delete(translate(e)?),
                    Link::Contract(e) => Link::Contract(translate(e)?),
                    Link::Pass => Link::Pass,
                };
                let literal = Arc::new(
                    link.apply(out.matroid(dst))
                        .map_err(|e| Error::InvalidTree(format!("node {child}: {e}")))?,
                );
                let given = &self.nodes[child.0].matroid;
                let direct = given.relabel(&rename).ok().filter(|m| *m == *literal);
                let child_rename: HashMap<String, String> = if direct.is_some() {
                    given
                        .labels()
                        .iter()
                        .map(|l| (l.clone(), rename.get(l).unwrap_or(l).clone()))
                        .collect()
                } else {
                    let map = are_isomorphic(given, &literal).ok_or_else(|| {
                        Error::InvalidTree(format!(
                            "node {child} is not isomorphic to the minor {link:?} of its parent"
                        ))
                    })?;
                    let pairs: Vec<(String, String)> = map
                        .iter()
                        .enumerate()
                        .map(|(i, j)| {
                            (
                                given.ground().label(i).to_string(),
                                literal.ground().label(*j).to_string(),
                            )
                        })
                        .collect();
                    relabelings.push(Relabeling {
                        node: *child,
                        map: pairs.clone(),
                    });
                    pairs.into_iter().collect()
                };
                let new = out.push_child_unchecked(dst, link, literal)?;
                stack.push((*child, new, child_rename));
            }
        }
        Ok((out, relabelings))
    }
}

/// A fully expanded subtree, built before being attached to a tree.
struct Plan {
    matroid: Arc<Matroid>,
    split: Option<Box<Split>>,
}

struct Split {
    element: String,
    delete: Plan,
    contract: Plan,
}

impl Plan {
    fn build(m: &Arc<Matroid>, strategy: PivotStrategy, exec: Execution) -> Plan {
        let Some(e) = strategy.pick(m) else {
            return Plan {
                matroid: m.clone(),
                split: None,
            };
        };
        let exec = if m.len() >= 8 {
            exec
        } else {
            Execution::Sequential
        };
        let (delete, contract) = par::join(
            exec,
            || Plan::build(&Arc::new(m.delete_mask(1 << e)), strategy, exec),
            || Plan::build(&Arc::new(m.contract_mask(1 << e)), strategy, exec),
        );
        Plan {
            matroid: m.clone(),
            split: Some(Box::new(Split {
                element: m.ground().label(e).to_string(),
                delete,
                contract,
            })),
        }
    }
}
