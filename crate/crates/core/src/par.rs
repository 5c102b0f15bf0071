//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature (the default) the parallel paths use rayon;
//! without it every policy runs sequentially and produces identical results.

/// How a computation may spread across threads. Results never depend on it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub(crate) fn join<A, B, RA, RB>(exec: Execution, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return rayon::join(a, b);
    }
    let _ = exec;
    (a(), b())
}

/// Folds `f` over `0..len` split into chunks, then merges chunk results in
/// index order with `merge`.
pub(crate) fn fold_range<T, F, M>(exec: Execution, len: u64, init: fn() -> T, f: F, merge: M) -> T
where
    T: Send,
    F: Fn(&mut T, u64) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && len > 4096 {
        use rayon::prelude::*;
        let chunk = 1u64 << 12;
        let chunks = len.div_ceil(chunk);
        return (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = init();
                for i in c * chunk..((c + 1) * chunk).min(len) {
                    f(&mut acc, i);
                }
                acc
            })
            .reduce(init, &merge);
    }
    let _ = (exec, &merge);
    let mut acc = init();
    for i in 0..len {
        f(&mut acc, i);
    }
    acc
}

/// Maps `f` over a slice, keeping order.
pub(crate) fn map_slice<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
