//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls the rank, minor or Tutte code under test: the oracles
//! work from the raw basis list or from the graph itself.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use matk0::graph::Multigraph;
use matk0::samples::{random_matroid, random_multigraph, rng};
use matk0::{Matroid, TuttePolynomial};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

pub type Poly = BTreeMap<(u32, u32), i128>;

pub fn to_poly(p: &Poly) -> TuttePolynomial {
    let mut t = TuttePolynomial::zero();
    for ((i, j), c) in p {
        t.add_term(*i, *j, BigInt::from(*c));
    }
    t
}

fn binom(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Adds `c (x-1)^a (y-1)^b` to `p`.
fn add_shifted(p: &mut Poly, c: i128, a: u32, b: u32) {
    for i in 0..=a {
        for j in 0..=b {
            let sign = if (a - i + b - j).is_multiple_of(2) {
                1
            } else {
                -1
            };
            *p.entry((i, j)).or_default() += sign * c * binom(a, i) * binom(b, j);
        }
    }
    p.retain(|_, c| *c != 0);
}

/// Rank of `set`: the largest intersection with a basis.
pub fn rank_from_bases(bases: &[u64], set: u64) -> u32 {
    bases
        .iter()
        .map(|b| (b & set).count_ones())
        .max()
        .unwrap_or(0)
}

/// Subset expansion straight from the basis list.
pub fn tutte_oracle(m: &Matroid) -> TuttePolynomial {
    let n = m.len();
    let bases = m.bases();
    let r = rank_from_bases(bases, if n == 64 { u64::MAX } else { (1 << n) - 1 });
    let mut p = Poly::new();
    let mut counts: HashMap<(u32, u32), i128> = HashMap::new();
    for a in 0u64..1 << n {
        let ra = rank_from_bases(bases, a);
        *counts.entry((r - ra, a.count_ones() - ra)).or_default() += 1;
    }
    for ((z, k), c) in counts {
        add_shifted(&mut p, c, z, k);
    }
    to_poly(&p)
}

/// `Σ_j C(n,j) (x-1)^(k - min(j,k)) (y-1)^(j - min(j,k))`.
pub fn tutte_uniform(k: u32, n: u32) -> TuttePolynomial {
    let mut p = Poly::new();
    for j in 0..=n {
        let r = j.min(k);
        add_shifted(&mut p, binom(n, j), k - r, j - r);
    }
    to_poly(&p)
}

/// Number of connected components of the spanning subgraph with edge set
/// `a` (bit i is the i-th edge of `g`).
pub fn components(g: &Multigraph, a: u64) -> u32 {
    let names: Vec<&str> = g.vertices().collect();
    let idx: HashMap<&str, usize> = names.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut adj = vec![Vec::new(); names.len()];
    for (i, e) in g.edges().iter().enumerate() {
        if a >> i & 1 == 1 {
            let (u, v) = (idx[e.u.as_str()], idx[e.v.as_str()]);
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; names.len()];
    let mut count = 0;
    for s in 0..names.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

/// `Σ_A (x-1)^(k(A) - k(E)) (y-1)^(k(A) + |A| - |V|)`.
pub fn tutte_graph(g: &Multigraph) -> TuttePolynomial {
    let n = g.edges().len();
    let v = g.vertex_count() as u32;
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let ke = components(g, full);
    let mut p = Poly::new();
    for a in 0u64..1 << n {
        let ka = components(g, a);
        add_shifted(&mut p, 1, ka - ke, ka + a.count_ones() - v);
    }
    to_poly(&p)
}

/// Edge set `a` is dependent iff some non-empty subset has every vertex of
/// even degree (a loop adds two to its vertex).
pub fn graph_independent(g: &Multigraph, a: u64) -> bool {
    let idx: HashMap<&str, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let ends: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (idx[e.u.as_str()], idx[e.v.as_str()]))
        .collect();
    let mut sub = a;
    while sub != 0 {
        let mut parity = vec![false; idx.len()];
        for (i, (u, v)) in ends.iter().enumerate() {
            if sub >> i & 1 == 1 {
                parity[*u] ^= true;
                parity[*v] ^= true;
            }
        }
        if parity.iter().all(|p| !p) {
            return false;
        }
        sub = (sub - 1) & a;
    }
    true
}

/// All permutations of `0..n` as index maps.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn permute_mask(s: u64, perm: &[usize]) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|(i, _)| s >> i & 1 == 1)
        .fold(0, |acc, (_, j)| acc | 1 << j)
}

/// Whether the index map `perm` carries the bases of `a` onto those of `b`.
pub fn maps_bases(a: &Matroid, b: &Matroid, perm: &[usize]) -> bool {
    let mut img: Vec<u64> = a.bases().iter().map(|s| permute_mask(*s, perm)).collect();
    img.sort_unstable();
    img == b.bases()
}

pub fn brute_isomorphic(a: &Matroid, b: &Matroid) -> bool {
    a.len() == b.len() && permutations(a.len()).iter().any(|p| maps_bases(a, b, p))
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Deterministic corpus of random column matroids.
pub fn matroid_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Matroid> {
    let mut r = rng(seed);
    (0..count).map(|_| random_matroid(&mut r, max_n)).collect()
}

/// Deterministic corpus of random multigraphs with up to `max_edges` edges.
pub fn graph_corpus(seed: u64, count: usize, max_edges: usize) -> Vec<Multigraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let v = r.random_range(1..=6);
            let e = r.random_range(0..=max_edges);
            random_multigraph(&mut r, v, e)
        })
        .collect()
}

pub fn arb_matroid(max_n: usize) -> impl Strategy<Value = Matroid> {
    any::<u64>().prop_map(move |s| random_matroid(&mut rng(s), max_n))
}

pub fn arb_graph(max_edges: usize) -> impl Strategy<Value = Multigraph> {
    (any::<u64>(), 1usize..=6, 0..=max_edges)
        .prop_map(|(s, v, e)| random_multigraph(&mut rng(s), v, e))
}
