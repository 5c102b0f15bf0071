use std::fmt;
use std::sync::Arc;

use crate::bits;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// An injective map between ground sets, with its source and target.
///
/// `map[i]` is the target index of source element `i`. Whether independent
/// sets are carried to independent sets is checked by [`is_morphism`], not on
/// construction, so invalid maps can be represented and rejected.
#[derive(Clone)]
pub struct MatroidMorphism {
    source: Arc<Matroid>,
    target: Arc<Matroid>,
    map: Vec<usize>,
}

impl MatroidMorphism {
    pub fn new(source: Arc<Matroid>, target: Arc<Matroid>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::InvalidParameters(format!(
                "map has {} entries for a source of {} elements",
                map.len(),
                source.len()
            )));
        }
        if let Some(i) = map.iter().find(|i| **i >= target.len()) {
            return Err(Error::InvalidParameters(format!(
                "index {i} is outside the target ground set"
            )));
        }
        Ok(MatroidMorphism {
            source,
            target,
            map,
        })
    }

    /// Builds a map from `(source label, target label)` pairs covering the
    /// whole source ground set.
    pub fn from_label_pairs<'a, I>(
        source: Arc<Matroid>,
        target: Arc<Matroid>,
        pairs: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut map = vec![usize::MAX; source.len()];
        for (s, t) in pairs {
            map[source.ground().index_of(s)?] = target.ground().index_of(t)?;
        }
        if let Some(i) = map.iter().position(|t| *t == usize::MAX) {
            return Err(Error::InvalidParameters(format!(
                "no image given for `{}`",
                source.ground().label(i)
            )));
        }
        MatroidMorphism::new(source, target, map)
    }

    /// The map sending each source label to the same label in the target.
    pub fn inclusion(source: Arc<Matroid>, target: Arc<Matroid>) -> Result<Self> {
        let map = source
            .labels()
            .iter()
            .map(|l| target.ground().index_of(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatroidMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(m: Arc<Matroid>) -> Self {
        let map = (0..m.len()).collect();
        MatroidMorphism {
            source: m.clone(),
            target: m,
            map,
        }
    }

    pub fn source(&self) -> &Arc<Matroid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Matroid> {
        &self.target
    }

    pub fn index_map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, label: &str) -> Result<&str> {
        let i = self.source.ground().index_of(label)?;
        Ok(self.target.ground().label(self.map[i]))
    }

    /// `(source label, target label)` pairs in source order.
    pub fn label_pairs(&self) -> Vec<(&str, &str)> {
        self.map
            .iter()
            .enumerate()
            .map(|(i, t)| {
                (
                    self.source.ground().label(i),
                    self.target.ground().label(*t),
                )
            })
            .collect()
    }

    /// `self ∘ inner`. The target of `inner` must equal the source of `self`.
    pub fn compose(&self, inner: &MatroidMorphism) -> Result<MatroidMorphism> {
        let bridge = inner
            .target
            .label_map_into(&self.source)
            .filter(|_| *inner.target == *self.source)
            .ok_or_else(|| {
                Error::InvalidParameters("composed maps do not share a matroid".into())
            })?;
        let map = inner.map.iter().map(|i| self.map[bridge[*i]]).collect();
        Ok(MatroidMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            map,
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = 0u64;
        self.map.iter().all(|t| {
            let fresh = seen >> t & 1 == 0;
            seen |= 1 << t;
            fresh
        })
    }

    /// Bijective, and a set is independent in the source exactly when its
    /// image is independent in the target.
    pub fn is_isomorphism(&self) -> bool {
        if self.source.len() != self.target.len()
            || !self.is_injective()
            || self.source.basis_count() != self.target.basis_count()
        {
            return false;
        }
        self.source
            .bases()
            .iter()
            .all(|b| self.target.is_basis_mask(bits::permute(*b, &self.map)))
    }
}

/// True iff the map is injective and sends every independent set of the
/// source to an independent set of the target.
pub fn is_morphism(m: &MatroidMorphism) -> bool {
    m.is_injective()
        && m.source
            .bases()
            .iter()
            .all(|b| m.target.is_independent_mask(bits::permute(*b, &m.map)))
}

impl PartialEq for MatroidMorphism {
    fn eq(&self, other: &Self) -> bool {
        if *self.source != *other.source || *self.target != *other.target {
            return false;
        }
        let mut a = self.label_pairs();
        let mut b = other.label_pairs();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl Eq for MatroidMorphism {}

impl fmt::Debug for MatroidMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.label_pairs()).finish()
    }
}
