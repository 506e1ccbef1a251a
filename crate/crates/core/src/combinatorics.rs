/// Binomial coefficient, saturating at `u128::MAX`.
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Calls `f` on every non-empty subset of `set` (as a sorted vector when
/// `set` is sorted), smallest bitmask first.
pub(crate) fn for_each_nonempty_subset(set: &[usize], mut f: impl FnMut(&[usize])) {
    let n = set.len();
    debug_assert!(n < 32);
    let mut buf = Vec::with_capacity(n);
    for mask in 1u32..(1u32 << n) {
        buf.clear();
        buf.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| set[i]));
        f(&buf);
    }
}
