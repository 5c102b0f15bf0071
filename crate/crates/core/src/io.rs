//! JSON and DOT serialization for matroids, trees, coverings and
//! refinements.
//!
//! Matroid files look like
//! `{"ground": ["a","b"], "bases": [["a"],["b"]]}`; `"independent"` may be
//! given instead of `"bases"`. Trees are stored as
//! `{"root": 0, "matroids": [...], "nodes": [{"id", "matroid", "children":
//! [{"op", "element", "node"}]}]}` where `"matroid"` indexes `"matroids"`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::dc::{CommonRefinement, DCTree, Factor, Link, NodeId, Refinement, TutteCovering};
use crate::error::{Error, Result};
use crate::matroid::{GroundSet, Matroid};
use crate::morphism::MatroidMorphism;

pub fn matroid_to_json(m: &Matroid) -> Value {
    json!({
        "ground": m.labels(),
        "bases": m.basis_labels(),
    })
}

pub fn matroid_from_json(value: &Value) -> Result<Matroid> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse("matroid", "expected a JSON object"))?;
    let ground = string_array(obj.get("ground"), "ground")?;
    let ground = GroundSet::new(ground).map_err(|e| match e {
        Error::CapacityExceeded { .. } => e,
        other => Error::parse("ground", other),
    })?;
    match (obj.get("bases"), obj.get("independent")) {
        (Some(_), Some(_)) => Err(Error::parse(
            "independent",
            "give exactly one of `bases` and `independent`",
        )),
        (None, None) => Err(Error::parse(
            "bases",
            "missing; one of `bases` and `independent` is required",
        )),
        (Some(b), None) => Matroid::from_basis_masks(ground.clone(), family(&ground, b, "bases")?),
        (None, Some(i)) => {
            Matroid::from_independent_masks(ground.clone(), family(&ground, i, "independent")?)
        }
    }
}

pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::parse("matroid", e))?;
    matroid_from_json(&value)
}

fn string_array(v: Option<&Value>, key: &str) -> Result<Vec<String>> {
    v.ok_or_else(|| Error::parse(key, "missing"))?
        .as_array()
        .ok_or_else(|| Error::parse(key, "expected an array of strings"))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::parse(key, format!("expected a string, found {s}")))
        })
        .collect()
}

fn family(ground: &GroundSet, v: &Value, key: &str) -> Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| Error::parse(key, "expected an array of arrays"))?
        .iter()
        .map(|set| {
            let labels = string_array(Some(set), key)?;
            ground.mask_of(&labels).map_err(|e| Error::parse(key, e))
        })
        .collect()
}

fn op_name(link: &Link) -> &'static str {
    match link {
        Link::Delete(_) => "delete",
        Link::Contract(_) => "contract",
        Link::Pass => "pass",
    }
}

pub fn tree_to_json(t: &DCTree) -> Value {
    let mut table: HashMap<(Vec<String>, Vec<u64>), usize> = HashMap::new();
    let mut matroids = Vec::new();
    let mut nodes = Vec::new();
    for (id, node) in t.nodes() {
        let m = node.matroid();
        let key = (m.labels().to_vec(), m.bases().to_vec());
        let idx = *table.entry(key).or_insert_with(|| {
            matroids.push(matroid_to_json(m));
            matroids.len() - 1
        });
        let children: Vec<Value> = node
            .children()
            .iter()
            .map(|(link, child)| {
                let mut c = Map::new();
                c.insert("op".into(), op_name(link).into());
                if let Some(e) = link.element() {
                    c.insert("element".into(), e.into());
                }
                c.insert("node".into(), child.0.into());
                Value::Object(c)
            })
            .collect();
        nodes.push(json!({"id": id.0, "matroid": idx, "children": children}));
    }
    json!({"root": DCTree::ROOT.0, "matroids": matroids, "nodes": nodes})
}

/// Reads a tree, normalizes nodes that are only isomorphic to the literal
/// minors of their parents, and validates the result.
pub fn tree_from_json(value: &Value) -> Result<DCTree> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse("tree", "expected a JSON object"))?;
    let matroids = obj
        .get("matroids")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("matroids", "expected an array"))?
        .iter()
        .map(|m| matroid_from_json(m).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let root = obj
        .get("root")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("root", "expected a node id"))?;

    struct Raw {
        matroid: usize,
        children: Vec<(Link, u64)>,
    }
    let mut raw: BTreeMap<u64, Raw> = BTreeMap::new();
    let nodes = obj
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("nodes", "expected an array"))?;
    for n in nodes {
        let id = n
            .get("id")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse("nodes.id", "expected a node id"))?;
        let matroid = n
            .get("matroid")
            .and_then(Value::as_u64)
            .map(|i| i as usize)
            .filter(|i| *i < matroids.len())
            .ok_or_else(|| {
                Error::parse("nodes.matroid", format!("node {id}: bad matroid reference"))
            })?;
        let mut children = Vec::new();
        for c in n
            .get("children")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let element = c.get("element").and_then(Value::as_str).map(str::to_string);
            let link = match (c.get("op").and_then(Value::as_str), element) {
                (Some("delete"), Some(e)) => Link::Delete(e),
                (Some("contract"), Some(e)) => Link::Contract(e),
                (Some("pass"), _) => Link::Pass,
                (op, _) => {
                    return Err(Error::parse(
                        "nodes.children.op",
                        format!("node {id}: unsupported child {op:?}"),
                    ))
                }
            };
            let child = c
                .get("node")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::parse("nodes.children.node", format!("node {id}")))?;
            children.push((link, child));
        }
        if raw.insert(id, Raw { matroid, children }).is_some() {
            return Err(Error::parse("nodes.id", format!("duplicate node id {id}")));
        }
    }

    let root_raw = raw
        .get(&root)
        .ok_or_else(|| Error::parse("root", format!("no node with id {root}")))?;
    let mut tree = DCTree::trivial(matroids[root_raw.matroid].clone());
    let mut seen = HashMap::from([(root, DCTree::ROOT)]);
    let mut queue = VecDeque::from([root]);
    while let Some(id) = queue.pop_front() {
        let parent = seen[&id];
        for (link, child) in &raw[&id].children {
            let node = raw.get(child).ok_or_else(|| {
                Error::parse("nodes.children.node", format!("no node with id {child}"))
            })?;
            if seen.contains_key(child) {
                return Err(Error::InvalidTree(format!("node {child} is reached twice")));
            }
            let new =
                tree.push_child_unchecked(parent, link.clone(), matroids[node.matroid].clone())?;
            seen.insert(*child, new);
            queue.push_back(*child);
        }
    }
    if seen.len() != raw.len() {
        return Err(Error::InvalidTree(
            "some nodes are unreachable from the root".into(),
        ));
    }
    let (tree, _) = tree.normalize()?;
    tree.validate().map_err(|defects| {
        Error::InvalidTree(
            defects
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        )
    })?;
    Ok(tree)
}

pub fn parse_tree(text: &str) -> Result<DCTree> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::parse("tree", e))?;
    tree_from_json(&value)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz source. Edges read `\e` for deletion and `/e` for contraction.
pub fn tree_to_dot(t: &DCTree) -> String {
    let mut out = String::from("digraph dctree {\n  node [shape=box];\n");
    for (id, node) in t.nodes() {
        let m = node.matroid();
        let mut label = format!("{{{}}} r={}", m.labels().join(","), m.rank());
        if let (true, Ok(c)) = (node.is_leaf(), m.indecomposable_class()) {
            let _ = write!(label, " {c}");
        }
        let _ = writeln!(out, "  n{} [label=\"{}\"];", id.0, dot_escape(&label));
    }
    for (id, node) in t.nodes() {
        for (link, child) in node.children() {
            let label = match link {
                Link::Delete(e) => format!("\\{e}"),
                Link::Contract(e) => format!("/{e}"),
                Link::Pass => String::new(),
            };
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                id.0,
                child.0,
                dot_escape(&label)
            );
        }
    }
    out.push_str("}\n");
    out
}

pub fn morphism_to_json(f: &MatroidMorphism) -> Value {
    Value::Array(
        f.label_pairs()
            .into_iter()
            .map(|(a, b)| json!([a, b]))
            .collect(),
    )
}

fn leg_to_json(leg: &MatroidMorphism, node: NodeId) -> Value {
    json!({
        "node": node.0,
        "source": matroid_to_json(leg.source()),
        "map": morphism_to_json(leg),
    })
}

pub fn covering_to_json(c: &TutteCovering) -> Value {
    json!({
        "target": matroid_to_json(c.target()),
        "tree": tree_to_json(c.witness()),
        "legs": c
            .legs()
            .iter()
            .zip(c.leaf_nodes())
            .map(|(l, n)| leg_to_json(l, *n))
            .collect::<Vec<_>>(),
    })
}

/// Accepts a covering document or a bare tree; legs are always recomputed
/// from the tree.
pub fn covering_from_json(value: &Value) -> Result<TutteCovering> {
    let tree = match value.get("tree") {
        Some(t) => tree_from_json(t)?,
        None => tree_from_json(value)?,
    };
    TutteCovering::from_tree(tree)
}

pub fn parse_covering(text: &str) -> Result<TutteCovering> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::parse("covering", e))?;
    covering_from_json(&value)
}

fn factors_to_json(fs: &[Factor]) -> Value {
    fs.iter()
        .map(|f| json!({"leg": f.leg, "map": morphism_to_json(&f.map)}))
        .collect()
}

pub fn refinement_to_json(r: &Refinement) -> Value {
    json!({
        "covering": covering_to_json(&r.covering),
        "factors": factors_to_json(&r.factors),
    })
}

pub fn common_refinement_to_json(r: &CommonRefinement) -> Value {
    json!({
        "covering": covering_to_json(&r.covering),
        "into_a": factors_to_json(&r.into_a),
        "into_b": r
            .into_b
            .iter()
            .map(|x| json!({
                "leg": x.leg,
                "via": x.via,
                "iso": morphism_to_json(&x.iso),
                "map": morphism_to_json(&x.map),
            }))
            .collect::<Vec<_>>(),
        "b_refinement": refinement_to_json(&r.other),
    })
}
