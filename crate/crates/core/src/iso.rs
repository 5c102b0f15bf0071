//! Isomorphism testing and automorphism counting.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::bits;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::par::{self, Execution};

/// Default ground-set bound for [`automorphism_count`].
pub const AUTOMORPHISM_LIMIT: usize = 8;

struct Signature {
    degree: Vec<usize>,
    pair: Vec<Vec<usize>>,
}

impl Signature {
    fn of(m: &Matroid) -> Self {
        let n = m.len();
        let mut degree = vec![0; n];
        let mut pair = vec![vec![0; n]; n];
        for b in m.bases() {
            let members: Vec<usize> = bits::ones(*b).collect();
            for &i in &members {
                degree[i] += 1;
                for &j in &members {
                    pair[i][j] += 1;
                }
            }
        }
        Signature { degree, pair }
    }

    fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degree.clone();
        d.sort_unstable();
        d
    }
}

/// Returns `map` with `map[i]` the element of `m2` matched to element `i` of
/// `m1`, or `None` when the matroids are not isomorphic.
///
/// Candidates are pruned by rank, basis count and per-element basis degree,
/// then by pairwise co-occurrence counts during the search.
pub fn are_isomorphic(m1: &Matroid, m2: &Matroid) -> Option<Vec<usize>> {
    if m1.len() != m2.len() || m1.rank() != m2.rank() || m1.basis_count() != m2.basis_count() {
        return None;
    }
    let (s1, s2) = (Signature::of(m1), Signature::of(m2));
    if s1.degree_multiset() != s2.degree_multiset() {
        return None;
    }
    let n = m1.len();
    let mut order: Vec<usize> = (0..n).collect();
    // rarest degree first
    order.sort_by_key(|&i| (s1.degree.iter().filter(|d| **d == s1.degree[i]).count(), i));

    let mut search = Search {
        s1: &s1,
        s2: &s2,
        target: m2.bases().iter().copied().collect(),
        source: m1.bases(),
        order,
        map: vec![usize::MAX; n],
        used: 0,
    };
    search.extend(0).then_some(search.map)
}

struct Search<'a> {
    s1: &'a Signature,
    s2: &'a Signature,
    target: HashSet<u64>,
    source: &'a [u64],
    order: Vec<usize>,
    map: Vec<usize>,
    used: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self
                .source
                .iter()
                .all(|b| self.target.contains(&bits::permute(*b, &self.map)));
        }
        let i = self.order[depth];
        for cand in 0..self.map.len() {
            if self.used >> cand & 1 == 1 || self.s1.degree[i] != self.s2.degree[cand] {
                continue;
            }
            if self.s1.pair[i][i] != self.s2.pair[cand][cand] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&j| self.s1.pair[i][j] == self.s2.pair[cand][self.map[j]]);
            if !consistent {
                continue;
            }
            self.map[i] = cand;
            self.used |= 1 << cand;
            if self.extend(depth + 1) {
                return true;
            }
            self.used &= !(1 << cand);
            self.map[i] = usize::MAX;
        }
        false
    }
}

/// Number of permutations of the ground set that preserve independence in
/// both directions, by enumerating every permutation.
pub fn automorphism_count(m: &Matroid) -> Result<BigUint> {
    automorphism_count_with(m, AUTOMORPHISM_LIMIT, Execution::default())
}

pub fn automorphism_count_with(m: &Matroid, limit: usize, exec: Execution) -> Result<BigUint> {
    let n = m.len();
    if n > limit {
        return Err(Error::CapacityExceeded {
            what: "ground set size for automorphism enumeration",
            actual: n,
            limit,
        });
    }
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    let firsts: Vec<usize> = (0..n).collect();
    let counts = par::map_slice(exec, &firsts, |&first| {
        let mut rest: Vec<usize> = (0..n).filter(|i| *i != first).collect();
        let mut count = 0u64;
        loop {
            let mut perm = Vec::with_capacity(n);
            perm.push(first);
            perm.extend_from_slice(&rest);
            if m.bases()
                .iter()
                .all(|b| m.is_basis_mask(bits::permute(*b, &perm)))
            {
                count += 1;
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
        count
    });
    Ok(counts.into_iter().map(BigUint::from).sum())
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
