//! Matroids on labeled ground sets of at most 64 elements.
//!
//! A matroid is stored as its family of bases, each basis a bitmask over the
//! indices of the ground set, kept sorted and deduplicated. A set is
//! independent exactly when it is contained in some basis.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{self, MAX_GROUND};
use crate::error::{Axiom, Error, Result};
use crate::par::{self, Execution};

/// Largest ground set on which [`Matroid::validate_axioms`] enumerates the
/// whole independence family.
pub const AXIOM_CHECK_LIMIT: usize = 20;

/// An ordered list of distinct element labels.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::CapacityExceeded {
                what: "ground set size",
                actual: labels.len(),
                limit: MAX_GROUND,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels, index })
    }

    /// The canonical `n`-element ground set: `a`, `b`, ... for `n <= 26`,
    /// otherwise `e0`, `e1`, ...
    pub fn canonical(n: usize) -> Result<Self> {
        if n <= 26 {
            GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
        } else {
            GroundSet::new((0..n).map(|i| format!("e{i}")))
        }
    }

    pub fn empty() -> Self {
        GroundSet {
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn mask_of<I, S>(&self, labels: I) -> Result<u64>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels
            .into_iter()
            .try_fold(0u64, |acc, l| Ok(acc | 1 << self.index_of(l.as_ref())?))
    }

    pub fn labels_of(&self, mask: u64) -> Vec<&str> {
        bits::ones(mask).map(|i| self.label(i)).collect()
    }

    pub fn full_mask(&self) -> u64 {
        bits::full(self.len())
    }

    fn restrict(&self, keep: u64) -> GroundSet {
        let labels: Vec<String> = bits::ones(keep).map(|i| self.labels[i].clone()).collect();
        let index = labels.iter().cloned().zip(0..).collect();
        GroundSet { labels, index }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

/// How an element sits in a matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementClass {
    /// Its singleton is dependent.
    Loop,
    /// It lies in every basis.
    Coloop,
    NonDegenerate,
}

impl ElementClass {
    /// The class of the same element in the dual matroid.
    pub fn dual(self) -> Self {
        match self {
            ElementClass::Loop => ElementClass::Coloop,
            ElementClass::Coloop => ElementClass::Loop,
            ElementClass::NonDegenerate => ElementClass::NonDegenerate,
        }
    }
}

/// Isomorphism type of an indecomposable matroid: `loops` copies of the
/// loop plus `coloops` copies of the coloop.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct IndecomposableClass {
    pub loops: usize,
    pub coloops: usize,
}

impl IndecomposableClass {
    pub fn new(loops: usize, coloops: usize) -> Self {
        IndecomposableClass { loops, coloops }
    }

    pub fn dual(self) -> Self {
        IndecomposableClass::new(self.coloops, self.loops)
    }

    pub fn size(self) -> usize {
        self.loops + self.coloops
    }
}

impl fmt::Display for IndecomposableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.loops, self.coloops)
    }
}

/// Exact structural key of a matroid, ignoring labels: ground size plus the
/// sorted basis masks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatroidKey {
    pub size: u8,
    pub bases: Box<[u64]>,
}

#[derive(Clone)]
pub struct Matroid {
    ground: GroundSet,
    bases: Vec<u64>,
    rank: usize,
}

impl Matroid {
    /// Trusted constructor for basis families produced by matroid operations.
    pub(crate) fn from_bases_unchecked(ground: GroundSet, mut bases: Vec<u64>) -> Matroid {
        bases.sort_unstable();
        bases.dedup();
        debug_assert!(!bases.is_empty());
        let rank = bits::popcount(bases[0]);
        Matroid {
            ground,
            bases,
            rank,
        }
    }

    /// The matroid on the empty ground set. Its only basis is the empty set.
    pub fn empty() -> Matroid {
        Matroid {
            ground: GroundSet::empty(),
            bases: vec![0],
            rank: 0,
        }
    }

    /// Builds a matroid from its bases given as label sets, checking the
    /// basis-exchange property exhaustively.
    pub fn from_bases<I, B, S>(ground: GroundSet, bases: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let masks = bases
            .into_iter()
            .map(|b| ground.mask_of(b))
            .collect::<Result<Vec<_>>>()?;
        Matroid::from_basis_masks(ground, masks)
    }

    pub fn from_basis_masks(ground: GroundSet, bases: Vec<u64>) -> Result<Matroid> {
        Matroid::from_basis_masks_with(ground, bases, Execution::default())
    }

    pub fn from_basis_masks_with(
        ground: GroundSet,
        mut bases: Vec<u64>,
        exec: Execution,
    ) -> Result<Matroid> {
        if bases.is_empty() {
            return Err(Error::InvalidMatroid("the basis family is empty".into()));
        }
        let full = ground.full_mask();
        if let Some(b) = bases.iter().find(|b| *b & !full != 0) {
            return Err(Error::InvalidMatroid(format!(
                "basis mask {b:#x} is not a subset of the ground set"
            )));
        }
        bases.sort_unstable();
        bases.dedup();
        let r = bits::popcount(bases[0]);
        if let Some(b) = bases.iter().find(|b| bits::popcount(**b) != r) {
            return Err(Error::InvalidMatroid(format!(
                "bases have different cardinalities: {:?} has {} elements, {:?} has {}",
                ground.labels_of(bases[0]),
                r,
                ground.labels_of(*b),
                bits::popcount(*b)
            )));
        }
        if let Some((b1, b2, x)) = exchange_violation(&bases, exec) {
            return Err(Error::InvalidMatroid(format!(
                "basis exchange fails: removing `{}` from {:?} admits no replacement from {:?}",
                ground.label(x),
                ground.labels_of(b1),
                ground.labels_of(b2)
            )));
        }
        Ok(Matroid {
            ground,
            bases,
            rank: r,
        })
    }

    /// Builds a matroid from its full family of independent sets, checking
    /// the three independence axioms exhaustively.
    pub fn from_independent_sets<I, B, S>(ground: GroundSet, family: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let masks = family
            .into_iter()
            .map(|b| ground.mask_of(b))
            .collect::<Result<Vec<_>>>()?;
        Matroid::from_independent_masks(ground, masks)
    }

    pub fn from_independent_masks(ground: GroundSet, mut family: Vec<u64>) -> Result<Matroid> {
        let full = ground.full_mask();
        if let Some(s) = family.iter().find(|s| *s & !full != 0) {
            return Err(Error::InvalidMatroid(format!(
                "set mask {s:#x} is not a subset of the ground set"
            )));
        }
        family.sort_unstable();
        family.dedup();
        check_independence_axioms(&family, &ground, Execution::default())?;
        let r = family.iter().map(|s| bits::popcount(*s)).max().unwrap_or(0);
        let bases = family
            .into_iter()
            .filter(|s| bits::popcount(*s) == r)
            .collect();
        Ok(Matroid::from_bases_unchecked(ground, bases))
    }

    /// The uniform matroid `U(k, n)` on the canonical ground set.
    pub fn uniform(k: usize, n: usize) -> Result<Matroid> {
        if n > MAX_GROUND {
            return Err(Error::CapacityExceeded {
                what: "ground set size",
                actual: n,
                limit: MAX_GROUND,
            });
        }
        if k > n {
            return Err(Error::InvalidParameters(format!(
                "uniform matroid needs k <= n, got k={k}, n={n}"
            )));
        }
        let ground = GroundSet::canonical(n)?;
        Ok(Matroid::from_bases_unchecked(
            ground,
            bits::k_subsets(n, k).collect(),
        ))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn labels(&self) -> &[String] {
        self.ground.labels()
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Rank of the whole matroid.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    pub fn basis_count(&self) -> usize {
        self.bases.len()
    }

    /// Bases as label lists, in mask order.
    pub fn basis_labels(&self) -> Vec<Vec<&str>> {
        self.bases
            .iter()
            .map(|b| self.ground.labels_of(*b))
            .collect()
    }

    pub fn key(&self) -> MatroidKey {
        MatroidKey {
            size: self.len() as u8,
            bases: self.bases.clone().into_boxed_slice(),
        }
    }

    pub fn is_independent_mask(&self, s: u64) -> bool {
        self.bases.iter().any(|b| s & !b == 0)
    }

    pub fn is_independent<I, S>(&self, set: I) -> Result<bool>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Ok(self.is_independent_mask(self.ground.mask_of(set)?))
    }

    pub fn is_basis_mask(&self, s: u64) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    /// Size of a largest independent subset of `s`.
    pub fn rank_mask(&self, s: u64) -> usize {
        let mut best = 0;
        for b in &self.bases {
            let c = bits::popcount(b & s);
            if c > best {
                best = c;
                if best == self.rank {
                    break;
                }
            }
        }
        best
    }

    pub fn rank_of<I, S>(&self, set: I) -> Result<usize>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Ok(self.rank_mask(self.ground.mask_of(set)?))
    }

    /// Elements lying in no basis.
    pub fn loops_mask(&self) -> u64 {
        self.ground.full_mask() & !self.bases.iter().fold(0, |acc, b| acc | b)
    }

    /// Elements lying in every basis.
    pub fn coloops_mask(&self) -> u64 {
        self.bases
            .iter()
            .fold(self.ground.full_mask(), |acc, b| acc & b)
    }

    pub fn nondegenerate_mask(&self) -> u64 {
        self.ground.full_mask() & !(self.loops_mask() | self.coloops_mask())
    }

    pub fn classify_index(&self, i: usize) -> ElementClass {
        let bit = 1u64 << i;
        if self.loops_mask() & bit != 0 {
            ElementClass::Loop
        } else if self.coloops_mask() & bit != 0 {
            ElementClass::Coloop
        } else {
            ElementClass::NonDegenerate
        }
    }

    pub fn classify_element(&self, label: &str) -> Result<ElementClass> {
        Ok(self.classify_index(self.ground.index_of(label)?))
    }

    /// True when no element is non-degenerate. The empty matroid qualifies.
    pub fn is_indecomposable(&self) -> bool {
        self.nondegenerate_mask() == 0
    }

    pub fn indecomposable_class(&self) -> Result<IndecomposableClass> {
        let nd = self.nondegenerate_mask();
        if nd != 0 {
            let i = nd.trailing_zeros() as usize;
            return Err(Error::NotIndecomposable(self.ground.label(i).to_string()));
        }
        Ok(IndecomposableClass::new(
            bits::popcount(self.loops_mask()),
            bits::popcount(self.coloops_mask()),
        ))
    }

    /// Matroid whose bases are the complements of the bases of `self`.
    pub fn dual(&self) -> Matroid {
        let full = self.ground.full_mask();
        Matroid::from_bases_unchecked(
            self.ground.clone(),
            self.bases.iter().map(|b| full & !b).collect(),
        )
    }

    /// Removes the elements of `t`. Remaining elements keep their labels and
    /// relative order.
    pub fn delete_mask(&self, t: u64) -> Matroid {
        let keep = self.ground.full_mask() & !t;
        let r = self
            .bases
            .iter()
            .map(|b| bits::popcount(b & keep))
            .max()
            .unwrap_or(0);
        let bases = self
            .bases
            .iter()
            .filter(|b| bits::popcount(*b & keep) == r)
            .map(|b| bits::compress(*b, keep))
            .collect();
        Matroid::from_bases_unchecked(self.ground.restrict(keep), bases)
    }

    /// Contracts the elements of `t`: the bases of the result are the sets
    /// `B \ t` over bases `B` meeting `t` in as many elements as possible.
    pub fn contract_mask(&self, t: u64) -> Matroid {
        let t = t & self.ground.full_mask();
        let keep = self.ground.full_mask() & !t;
        let inside = self
            .bases
            .iter()
            .map(|b| bits::popcount(b & t))
            .max()
            .unwrap_or(0);
        let bases = self
            .bases
            .iter()
            .filter(|b| bits::popcount(*b & t) == inside)
            .map(|b| bits::compress(*b, keep))
            .collect();
        Matroid::from_bases_unchecked(self.ground.restrict(keep), bases)
    }

    pub fn delete<I, S>(&self, t: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Ok(self.delete_mask(self.ground.mask_of(t)?))
    }

    pub fn contract<I, S>(&self, t: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Ok(self.contract_mask(self.ground.mask_of(t)?))
    }

    pub fn delete_element(&self, e: &str) -> Result<Matroid> {
        self.delete([e])
    }

    pub fn contract_element(&self, e: &str) -> Result<Matroid> {
        self.contract([e])
    }

    /// Direct sum. Labels are kept when the two ground sets are disjoint;
    /// otherwise every left label gets the suffix `.L` and every right label
    /// the suffix `.R`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n1 = self.len();
        let total = n1 + other.len();
        if total > MAX_GROUND {
            return Err(Error::CapacityExceeded {
                what: "ground set size",
                actual: total,
                limit: MAX_GROUND,
            });
        }
        let clash = other.labels().iter().any(|l| self.ground.contains(l));
        let labels: Vec<String> = if clash {
            self.labels()
                .iter()
                .map(|l| format!("{l}.L"))
                .chain(other.labels().iter().map(|l| format!("{l}.R")))
                .collect()
        } else {
            self.labels()
                .iter()
                .chain(other.labels())
                .cloned()
                .collect()
        };
        let ground = GroundSet::new(labels)?;
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for b1 in &self.bases {
            for b2 in &other.bases {
                bases.push(b1 | b2 << n1);
            }
        }
        Ok(Matroid::from_bases_unchecked(ground, bases))
    }

    /// Returns a copy with labels replaced according to `rename`; labels not
    /// in the map are kept.
    pub fn relabel(&self, rename: &HashMap<String, String>) -> Result<Matroid> {
        let labels: Vec<String> = self
            .labels()
            .iter()
            .map(|l| rename.get(l).unwrap_or(l).clone())
            .collect();
        Ok(Matroid {
            ground: GroundSet::new(labels)?,
            bases: self.bases.clone(),
            rank: self.rank,
        })
    }

    /// Every independent set, as masks in increasing order.
    pub fn independent_sets(&self) -> Result<Vec<u64>> {
        let n = self.len();
        if n > AXIOM_CHECK_LIMIT {
            return Err(Error::CapacityExceeded {
                what: "ground set size for independence enumeration",
                actual: n,
                limit: AXIOM_CHECK_LIMIT,
            });
        }
        let mut indep = vec![false; 1 << n];
        for b in &self.bases {
            indep[*b as usize] = true;
        }
        for s in (0..1usize << n).rev() {
            if indep[s] {
                for i in bits::ones(s as u64) {
                    indep[s & !(1 << i)] = true;
                }
            }
        }
        Ok((0..1u64 << n).filter(|s| indep[*s as usize]).collect())
    }

    /// Re-checks (I1)-(I3) on the induced independence family.
    pub fn validate_axioms(&self) -> Result<()> {
        let family = self.independent_sets()?;
        check_independence_axioms(&family, &self.ground, Execution::default())?;
        let r = family.iter().map(|s| bits::popcount(*s)).max().unwrap_or(0);
        let maximal: Vec<u64> = family
            .into_iter()
            .filter(|s| bits::popcount(*s) == r)
            .collect();
        if maximal != self.bases {
            return Err(Error::InvalidMatroid(
                "stored bases differ from the maximal independent sets".into(),
            ));
        }
        Ok(())
    }

    /// Maps ground indices of `self` to ground indices of `other` by label.
    pub(crate) fn label_map_into(&self, other: &Matroid) -> Option<Vec<usize>> {
        self.labels()
            .iter()
            .map(|l| other.ground.index_of(l).ok())
            .collect()
    }
}

/// Finds `(b1, b2, x)` with `x` in `b1 \ b2` such that no `y` in `b2 \ b1`
/// makes `b1 - x + y` a basis.
fn exchange_violation(bases: &[u64], exec: Execution) -> Option<(u64, u64, usize)> {
    if bases.len() == 1 {
        return None;
    }
    let set: HashSet<u64> = bases.iter().copied().collect();
    let hits = par::map_slice(exec, bases, |&b1| {
        let outside: Vec<usize> = bits::ones(!b1 & bases.iter().fold(0, |a, b| a | b)).collect();
        // replacements[x] = elements y outside b1 such that b1 - x + y is a basis
        let replacements: Vec<(usize, u64)> = bits::ones(b1)
            .map(|x| {
                let rest = b1 & !(1 << x);
                let ys = outside
                    .iter()
                    .filter(|&&y| set.contains(&(rest | 1 << y)))
                    .fold(0u64, |a, &y| a | 1 << y);
                (x, ys)
            })
            .collect();
        bases.iter().find_map(|&b2| {
            let gain = b2 & !b1;
            replacements
                .iter()
                .find(|(x, ys)| b2 >> x & 1 == 0 && ys & gain == 0)
                .map(|(x, _)| (b1, b2, *x))
        })
    });
    hits.into_iter().flatten().next()
}

fn check_independence_axioms(family: &[u64], ground: &GroundSet, exec: Execution) -> Result<()> {
    let set: HashSet<u64> = family.iter().copied().collect();
    if !set.contains(&0) {
        return Err(Error::AxiomViolated {
            axiom: Axiom::EmptySet,
            detail: "the empty set is not in the family".into(),
        });
    }
    for s in family {
        for i in bits::ones(*s) {
            if !set.contains(&(s & !(1 << i))) {
                return Err(Error::AxiomViolated {
                    axiom: Axiom::Hereditary,
                    detail: format!(
                        "{:?} is independent but {:?} is not",
                        ground.labels_of(*s),
                        ground.labels_of(s & !(1 << i))
                    ),
                });
            }
        }
    }
    let bad = par::map_slice(exec, family, |&a| {
        family.iter().find_map(|&b| {
            if bits::popcount(a) <= bits::popcount(b) {
                return None;
            }
            let ok = bits::ones(a & !b).any(|x| set.contains(&(b | 1 << x)));
            (!ok).then_some((a, b))
        })
    });
    if let Some((a, b)) = bad.into_iter().flatten().next() {
        return Err(Error::AxiomViolated {
            axiom: Axiom::Augmentation,
            detail: format!(
                "no element of {:?} extends {:?}",
                ground.labels_of(a),
                ground.labels_of(b)
            ),
        });
    }
    Ok(())
}

impl PartialEq for Matroid {
    /// Equal label sets and equal basis families in terms of labels.
    fn eq(&self, other: &Matroid) -> bool {
        if self.len() != other.len()
            || self.rank != other.rank
            || self.bases.len() != other.bases.len()
        {
            return false;
        }
        if self.labels() == other.labels() {
            return self.bases == other.bases;
        }
        let Some(map) = self.label_map_into(other) else {
            return false;
        };
        let mut mapped: Vec<u64> = self.bases.iter().map(|b| bits::permute(*b, &map)).collect();
        mapped.sort_unstable();
        mapped == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("ground", &self.ground)
            .field("rank", &self.rank)
            .field("bases", &self.basis_labels())
            .finish()
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "matroid on {} elements, rank {}, {} bases",
            self.len(),
            self.rank,
            self.bases.len()
        )
    }
}
