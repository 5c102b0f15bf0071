//! Tutte polynomials, computed two independent ways.
//!
//! [`tutte_direct`] expands the corank-nullity subset sum and is the oracle.
//! [`tutte_dc`] runs the deletion-contraction recursion with loops and
//! coloops stripped multiplicatively, optionally memoized on the exact basis
//! family of each minor.

use dashmap::DashMap;
use num_bigint::BigInt;

use crate::bits;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MatroidKey};
use crate::par::{self, Execution};
use crate::poly::TuttePolynomial;
use crate::strategy::PivotStrategy;

/// Largest ground set accepted by the subset-sum engine.
pub const DIRECT_LIMIT: usize = 24;

/// Minors smaller than this are evaluated on the calling thread.
const PARALLEL_CUTOFF: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CorankNullity {
    pub corank: usize,
    pub nullity: usize,
}

pub fn corank_nullity_mask(m: &Matroid, a: u64) -> CorankNullity {
    let r = m.rank_mask(a);
    CorankNullity {
        corank: m.rank() - r,
        nullity: bits::popcount(a) - r,
    }
}

pub fn corank_nullity<I, S>(m: &Matroid, a: I) -> Result<CorankNullity>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    Ok(corank_nullity_mask(m, m.ground().mask_of(a)?))
}

/// Sum of `(x-1)^corank(A) (y-1)^nullity(A)` over every subset `A`.
pub fn tutte_direct(m: &Matroid) -> Result<TuttePolynomial> {
    tutte_direct_with(m, Execution::default())
}

pub fn tutte_direct_with(m: &Matroid, exec: Execution) -> Result<TuttePolynomial> {
    let n = m.len();
    if n > DIRECT_LIMIT {
        return Err(Error::CapacityExceeded {
            what: "ground set size for subset expansion",
            actual: n,
            limit: DIRECT_LIMIT,
        });
    }
    let width = n + 1;
    // counts[corank * width + nullity] = number of subsets with that pair
    let counts = par::fold_range(
        exec,
        1u64 << n,
        Vec::new,
        |acc: &mut Vec<u64>, a| {
            if acc.is_empty() {
                acc.resize(width * width, 0);
            }
            let cn = corank_nullity_mask(m, a);
            acc[cn.corank * width + cn.nullity] += 1;
        },
        |mut a, b| {
            if a.is_empty() {
                return b;
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    let mut t = TuttePolynomial::zero();
    for (slot, count) in counts.into_iter().enumerate() {
        if count > 0 {
            let (z, nl) = ((slot / width) as u32, (slot % width) as u32);
            let mut term = TuttePolynomial::shifted_power(z, nl);
            if count > 1 {
                term = &term * &TuttePolynomial::monomial(BigInt::from(count), 0, 0);
            }
            t = t + term;
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MemoPolicy {
    None,
    /// Cache results keyed on the exact (label-free) basis family.
    #[default]
    Exact,
}

/// Deletion-contraction evaluation of the Tutte polynomial.
pub fn tutte_dc(m: &Matroid, strategy: PivotStrategy, memo: MemoPolicy) -> Result<TuttePolynomial> {
    tutte_dc_with(m, strategy, memo, Execution::default())
}

pub fn tutte_dc_with(
    m: &Matroid,
    strategy: PivotStrategy,
    memo: MemoPolicy,
    exec: Execution,
) -> Result<TuttePolynomial> {
    let engine = DcEngine {
        strategy,
        memo: (memo == MemoPolicy::Exact).then(DashMap::new),
        exec,
    };
    Ok(engine.eval(m))
}

struct DcEngine {
    strategy: PivotStrategy,
    memo: Option<DashMap<MatroidKey, TuttePolynomial>>,
    exec: Execution,
}

impl DcEngine {
    fn eval(&self, m: &Matroid) -> TuttePolynomial {
        let loops = m.loops_mask();
        let coloops = m.coloops_mask();
        let (nl, nc) = (bits::popcount(loops) as u32, bits::popcount(coloops) as u32);
        let stripped;
        let core = if loops | coloops == 0 {
            m
        } else {
            // deleting a coloop gives the same matroid as contracting it
            stripped = m.delete_mask(loops | coloops);
            &stripped
        };
        if core.is_empty() {
            return TuttePolynomial::monomial(1, nc, nl);
        }
        self.eval_core(core).shift(nc, nl)
    }

    /// `m` has no loops or coloops and is non-empty.
    fn eval_core(&self, m: &Matroid) -> TuttePolynomial {
        let key = self.memo.as_ref().map(|_| m.key());
        if let (Some(memo), Some(key)) = (&self.memo, &key) {
            if let Some(hit) = memo.get(key) {
                return hit.clone();
            }
        }
        let e = self
            .strategy
            .pick(m)
            .expect("a matroid without loops or coloops has a pivot");
        let exec = if m.len() >= PARALLEL_CUTOFF {
            self.exec
        } else {
            Execution::Sequential
        };
        let (del, con) = par::join(
            exec,
            || self.eval(&m.delete_mask(1 << e)),
            || self.eval(&m.contract_mask(1 << e)),
        );
        let t = del + con;
        if let (Some(memo), Some(key)) = (&self.memo, key) {
            memo.insert(key, t.clone());
        }
        t
    }
}
