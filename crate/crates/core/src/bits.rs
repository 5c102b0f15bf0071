//! Helpers for subsets of a ground set encoded as `u64` masks.

pub(crate) const MAX_GROUND: usize = 64;

#[inline]
pub fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn popcount(x: u64) -> usize {
    x.count_ones() as usize
}

/// Iterates the indices of set bits in ascending order.
pub fn ones(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

/// Packs the bits of `x` selected by `keep` into the low bits, preserving order.
#[inline]
pub fn compress(x: u64, keep: u64) -> u64 {
    let mut out = 0u64;
    for (k, i) in ones(keep).enumerate() {
        if x >> i & 1 == 1 {
            out |= 1 << k;
        }
    }
    out
}

/// Applies an index map to a mask: bit `i` of `x` moves to bit `map[i]`.
#[inline]
pub fn permute(x: u64, map: &[usize]) -> u64 {
    ones(x).fold(0u64, |acc, i| acc | 1 << map[i])
}

/// All `k`-subsets of `0..n` in increasing numeric order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let (mut cur, last) = if k > n {
        (None, 0)
    } else if k == 0 {
        (Some(0u64), 0)
    } else {
        (Some(full(k)), full(k) << (n - k))
    };
    std::iter::from_fn(move || {
        let c = cur?;
        cur = (c != last).then(|| {
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            (((ripple ^ c) >> 2) / low) | ripple
        });
        Some(c)
    })
}
