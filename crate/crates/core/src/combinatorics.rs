//! Binomials and co-lexicographic ranking of k-subsets.
//!
//! A k-subset `c_0 < c_1 < .. < c_{k-1}` has co-lex rank
//! `sum_i C(c_i, i + 1)`; successive ranks differ mostly in the low
//! positions, which keeps the running unions in the scan kernels cheap.

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays exact because acc = C(n, i) here.
        let num = (n - i) as u128;
        acc = match acc.checked_mul(num) {
            Some(x) => x / (i as u128 + 1),
            None => {
                let g = gcd(acc, i as u128 + 1);
                match (acc / g).checked_mul(num / ((i as u128 + 1) / g)) {
                    Some(x) => x,
                    None => return u128::MAX,
                }
            }
        };
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Co-lex rank of a strictly increasing index list.
pub fn colex_rank(c: &[usize]) -> u128 {
    c.iter()
        .enumerate()
        .map(|(i, &x)| binomial(x as u64, i as u64 + 1))
        .sum()
}

/// Writes the k-subset of co-lex rank `rank` into `out` (length k).
pub fn colex_unrank(mut rank: u128, out: &mut [usize]) {
    let k = out.len();
    for i in (0..k).rev() {
        let r = i as u64 + 1;
        // largest c with C(c, r) <= rank; c >= i
        let mut lo = i as u64;
        let mut hi = lo + 1;
        while binomial(hi, r) <= rank {
            lo = hi;
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if binomial(mid, r) <= rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out[i] = lo as usize;
        rank -= binomial(lo, r);
    }
}

/// Advances `c` to its co-lex successor among subsets of `0..n`. Returns the
/// highest position that changed, or `None` when `c` was the last subset.
/// Positions below the returned one are reset to `0, 1, ..`.
#[inline]
pub fn colex_next(c: &mut [usize], n: usize) -> Option<usize> {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { n };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, x) in c[..i].iter_mut().enumerate() {
                *x = j;
            }
            return Some(i);
        }
    }
    None
}
