//! Seeded random generators for matroids, multigraphs and partial
//! deletion-contraction trees.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::dc::{BranchOrder, DCTree};
use crate::graph::Multigraph;
use crate::matroid::{GroundSet, Matroid};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Column matroid of a random `rows × n` matrix over GF(`p`), labelled
/// `a, b, c, ...`. Zero columns become loops and repeated columns parallel
/// elements, so every loop/coloop pattern occurs.
pub fn gf_matroid<R: Rng>(rng: &mut R, n: usize, rows: usize, p: u32) -> Matroid {
    assert!(n <= 16 && p >= 2, "sample sizes are small");
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|_| (0..rows).map(|_| rng.random_range(0..p)).collect())
        .collect();
    let rank = column_rank(&cols, bits::full(n), p);
    let bases: Vec<u64> = bits::k_subsets(n, rank)
        .filter(|s| column_rank(&cols, *s, p) == rank)
        .collect();
    Matroid::from_basis_masks(GroundSet::canonical(n).unwrap(), bases)
        .expect("column matroids satisfy the basis axioms")
}

/// A column matroid with `n` drawn from `1..=max_n`, rank from `0..=n`,
/// over GF(2), GF(3) or GF(5).
pub fn random_matroid<R: Rng>(rng: &mut R, max_n: usize) -> Matroid {
    let n = rng.random_range(1..=max_n);
    let rows = rng.random_range(0..=n);
    let p = *[2, 3, 5].choose(rng).unwrap();
    gf_matroid(rng, n, rows, p)
}

fn column_rank(cols: &[Vec<u32>], set: u64, p: u32) -> usize {
    let mut rows: Vec<Vec<u32>> = bits::ones(set).map(|i| cols[i].clone()).collect();
    let width = cols.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|r| rows[*r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][c], p);
        let lead: Vec<u32> = rows[rank].iter().map(|v| v * inv % p).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, l) in row.iter_mut().zip(&lead) {
                    *x = (*x + p * p - f * l % p) % p;
                }
            }
        }
        rows[rank] = lead;
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    (1..p).find(|b| a * b % p == 1).expect("p is prime")
}

/// `edges` edges on `vertices` vertices named `v0, v1, ...`, endpoints drawn
/// uniformly, so loops and parallel edges appear. Edge labels are
/// `a, b, c, ...`.
pub fn random_multigraph<R: Rng>(rng: &mut R, vertices: usize, edges: usize) -> Multigraph {
    assert!(vertices > 0);
    let names: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
    let ground = GroundSet::canonical(edges).unwrap();
    let triples: Vec<(String, String, String)> = (0..edges)
        .map(|i| {
            (
                ground.label(i).to_string(),
                names[rng.random_range(0..vertices)].clone(),
                names[rng.random_range(0..vertices)].clone(),
            )
        })
        .collect();
    let mut g = Multigraph::from_edges(
        triples
            .iter()
            .map(|(l, u, v)| (l.as_str(), u.as_str(), v.as_str())),
    )
    .expect("labels are distinct");
    if g.vertex_count() < vertices {
        g = Multigraph::new(names, g.edges().to_vec()).expect("endpoints are known");
    }
    g
}

/// Expands random leaves on random non-degenerate elements, each leaf with
/// probability `p_split`, up to `rounds` passes.
pub fn random_partial_tree<R: Rng>(
    rng: &mut R,
    m: Arc<Matroid>,
    p_split: f64,
    rounds: usize,
) -> DCTree {
    let mut t = DCTree::trivial(m);
    for _ in 0..rounds {
        for leaf in t.leaves() {
            let m = t.matroid(leaf).clone();
            let pivots: Vec<usize> = bits::ones(m.nondegenerate_mask()).collect();
            if pivots.is_empty() || !rng.random_bool(p_split) {
                continue;
            }
            let e = *pivots.choose(rng).unwrap();
            let order = if rng.random_bool(0.5) {
                BranchOrder::DeleteFirst
            } else {
                BranchOrder::ContractFirst
            };
            t.expand_leaf_in_place(leaf, m.ground().label(e), order)
                .expect("pivot is non-degenerate");
        }
    }
    t
}
