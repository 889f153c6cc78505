//! Word-parallel helpers over `u64` bitsets stored as plain slices.

use alloc::vec;
use alloc::vec::Vec;

#[inline]
pub const fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Mask with the low `bits` bits set.
pub fn full(bits: usize) -> Vec<u64> {
    let mut w = vec![u64::MAX; words_for(bits)];
    if bits % 64 != 0 {
        if let Some(last) = w.last_mut() {
            *last = (1u64 << (bits % 64)) - 1;
        }
    }
    w
}

pub fn from_indices(bits: usize, idx: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut w = vec![0u64; words_for(bits)];
    for i in idx {
        set(&mut w, i);
    }
    w
}

#[inline]
pub fn set(w: &mut [u64], i: usize) {
    w[i / 64] |= 1u64 << (i % 64);
}

#[inline]
pub fn get(w: &[u64], i: usize) -> bool {
    w[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub fn count(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

#[inline]
pub fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

#[inline]
pub fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
pub fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Indices of set bits, ascending.
pub fn ones(w: &[u64]) -> impl Iterator<Item = usize> + '_ {
    w.iter().enumerate().flat_map(|(k, &word)| {
        let mut x = word;
        core::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let t = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(k * 64 + t)
        })
    })
}
