//! Refining coverings to indecomposable ones, and common refinements.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::morphism::{is_morphism, MatroidMorphism};
use crate::par::Execution;
use crate::strategy::PivotStrategy;

use super::covering::TutteCovering;
use super::tree::BranchOrder;

/// Leg `k` of a refinement factors through leg `leg` of the refined
/// covering: `original.legs()[leg] ∘ map == refined.legs()[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub leg: usize,
    pub map: MatroidMorphism,
}

#[derive(Debug, Clone)]
pub struct Refinement {
    pub covering: TutteCovering,
    /// One entry per leg of `covering`.
    pub factors: Vec<Factor>,
}

impl Refinement {
    /// Checks that every factor is a morphism and that composing it with the
    /// original leg gives back the refined leg exactly.
    pub fn verify(&self, original: &TutteCovering) -> Result<()> {
        self.covering.validate()?;
        if self.factors.len() != self.covering.legs().len() {
            return Err(Error::InvalidCover("one factor per leg is required".into()));
        }
        for (k, (f, leg)) in self.factors.iter().zip(self.covering.legs()).enumerate() {
            let outer = original.legs().get(f.leg).ok_or_else(|| {
                Error::InvalidCover(format!("leg {k} names missing leg {}", f.leg))
            })?;
            if !is_morphism(&f.map) {
                return Err(Error::InvalidCover(format!(
                    "factor of leg {k} is not a morphism"
                )));
            }
            if outer.compose(&f.map)? != *leg {
                return Err(Error::InvalidCover(format!(
                    "leg {k} is not the composite through leg {}",
                    f.leg
                )));
            }
        }
        Ok(())
    }
}

/// Splits every decomposable leaf of the witness until all legs are
/// indecomposable, recording for each new leg the old leg it factors
/// through.
pub fn refine_to_indecomposable(c: &TutteCovering) -> Result<Refinement> {
    refine_to_indecomposable_with(c, PivotStrategy::MinIndex, Execution::default())
}

pub fn refine_to_indecomposable_with(
    c: &TutteCovering,
    strategy: PivotStrategy,
    exec: Execution,
) -> Result<Refinement> {
    c.validate()
        .map_err(|e| Error::InvalidCover(e.to_string()))?;
    let mut tree = c.witness().clone();
    let origin: HashMap<_, usize> = c
        .leaf_nodes()
        .iter()
        .zip(0..)
        .map(|(n, i)| (*n, i))
        .collect();
    for leaf in c.leaf_nodes() {
        tree.expand_fully(*leaf, strategy, BranchOrder::DeleteFirst, exec)?;
    }
    let covering = TutteCovering::from_tree(tree)?;
    let tree = covering.witness();
    let factors = covering
        .leaf_nodes()
        .iter()
        .map(|leaf| {
            let (anc, leg) = tree
                .path_to_root(*leaf)
                .into_iter()
                .find_map(|n| origin.get(&n).map(|i| (n, *i)))
                .expect("every new leaf lies below an old leaf");
            Ok(Factor {
                leg,
                map: tree.inclusion_to(*leaf, anc)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Refinement { covering, factors })
}

/// Leg `k` of the common refinement, matched to leg `via` of the
/// indecomposable refinement of the second covering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossFactor {
    /// Leg of the second covering reached.
    pub leg: usize,
    /// Leg of the second covering's indecomposable refinement matched to
    /// this leg by class.
    pub via: usize,
    /// Isomorphism from this leg's source onto the source of leg `via`.
    pub iso: MatroidMorphism,
    /// `factor(via) ∘ iso`, a morphism into the source of leg `leg`.
    pub map: MatroidMorphism,
}

/// An indecomposable covering refining two coverings of the same matroid.
///
/// Factorization through the first covering is exact. Through the second it
/// goes via a class-preserving bijection onto the second covering's own
/// indecomposable refinement, whose legs factor exactly.
#[derive(Debug, Clone)]
pub struct CommonRefinement {
    pub covering: TutteCovering,
    pub into_a: Vec<Factor>,
    pub other: Refinement,
    pub into_b: Vec<CrossFactor>,
}

impl CommonRefinement {
    pub fn verify(&self, a: &TutteCovering, b: &TutteCovering) -> Result<()> {
        Refinement {
            covering: self.covering.clone(),
            factors: self.into_a.clone(),
        }
        .verify(a)?;
        self.other.verify(b)?;
        if !self.covering.is_indecomposable() {
            return Err(Error::InvalidCover(
                "refinement is not indecomposable".into(),
            ));
        }
        let mut used = vec![false; self.other.covering.legs().len()];
        if self.into_b.len() != self.covering.legs().len() || used.len() != self.into_b.len() {
            return Err(Error::InvalidCover("leg counts do not match".into()));
        }
        for (k, x) in self.into_b.iter().enumerate() {
            if std::mem::replace(&mut used[x.via], true) {
                return Err(Error::InvalidCover(format!("leg {} matched twice", x.via)));
            }
            let f = &self.other.factors[x.via];
            if !x.iso.is_isomorphism()
                || *x.iso.source() != *self.covering.legs()[k].source()
                || *x.iso.target() != *self.other.covering.legs()[x.via].source()
            {
                return Err(Error::InvalidCover(format!(
                    "leg {k}: matching is not an isomorphism"
                )));
            }
            if x.leg != f.leg || x.map != f.map.compose(&x.iso)? || !is_morphism(&x.map) {
                return Err(Error::InvalidCover(format!(
                    "leg {k}: bad map into second covering"
                )));
            }
        }
        Ok(())
    }
}

/// Refines both coverings to indecomposable ones and matches their legs by
/// (loops, coloops) class; the multisets agree for any two indecomposable
/// coverings of the same matroid.
pub fn common_refinement(a: &TutteCovering, b: &TutteCovering) -> Result<CommonRefinement> {
    if **a.target() != **b.target() {
        return Err(Error::TargetMismatch);
    }
    let ra = refine_to_indecomposable(a)?;
    let rb = refine_to_indecomposable(b)?;
    let b_legs = rb.covering.legs();
    let b_classes = b_legs
        .iter()
        .map(|l| l.source().indecomposable_class())
        .collect::<Result<Vec<_>>>()?;
    let mut used = vec![false; b_legs.len()];
    let mut into_b = Vec::with_capacity(ra.covering.legs().len());
    for (k, leg) in ra.covering.legs().iter().enumerate() {
        let class = leg.source().indecomposable_class()?;
        let same = |i: usize| !used[i] && b_classes[i] == class;
        let via = if k < used.len() && same(k) {
            k
        } else {
            (0..used.len()).find(|i| same(*i)).ok_or_else(|| {
                Error::InvalidCover(format!(
                    "no unmatched leg of class {class} in the second covering"
                ))
            })?
        };
        used[via] = true;
        let iso = indecomposable_iso(leg.source(), b_legs[via].source())?;
        let f = &rb.factors[via];
        into_b.push(CrossFactor {
            leg: f.leg,
            via,
            map: f.map.compose(&iso)?,
            iso,
        });
    }
    if used.iter().any(|u| !u) {
        return Err(Error::InvalidCover(
            "indecomposable refinements have different leg counts".into(),
        ));
    }
    Ok(CommonRefinement {
        into_a: ra.factors,
        covering: ra.covering,
        other: rb,
        into_b,
    })
}

/// Identity on labels when the two matroids are literally equal; otherwise
/// loops are paired with loops and coloops with coloops in index order.
fn indecomposable_iso(src: &Arc<Matroid>, dst: &Arc<Matroid>) -> Result<MatroidMorphism> {
    if **src == **dst {
        return MatroidMorphism::inclusion(src.clone(), dst.clone());
    }
    if src.indecomposable_class()? != dst.indecomposable_class()? {
        return Err(Error::InvalidCover("classes differ".into()));
    }
    let mut map = vec![0; src.len()];
    let pairs = [
        (src.loops_mask(), dst.loops_mask()),
        (src.coloops_mask(), dst.coloops_mask()),
    ];
    for (from, to) in pairs {
        for (i, j) in bits::ones(from).zip(bits::ones(to)) {
            map[i] = j;
        }
    }
    MatroidMorphism::new(src.clone(), dst.clone(), map)
}
