//! Binomial coefficients, k-subset iteration and lexicographic ranking.

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Iterator over the `k`-subsets of `0..n` as sorted index vectors, in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// 1-based lexicographic rank of a strictly increasing subset of `1..=m`.
///
/// Returns `None` if the subset is not strictly increasing or leaves the
/// range.
pub fn rank_subset(subset: &[u32], m: u32) -> Option<u64> {
    let k = subset.len() as u64;
    let mut rank = 0u64;
    let mut prev = 0u32;
    for (i, &c) in subset.iter().enumerate() {
        if c <= prev || c > m {
            return None;
        }
        for j in prev + 1..c {
            rank += binomial((m - j) as u64, k - i as u64 - 1);
        }
        prev = c;
    }
    Some(rank + 1)
}

/// Inverse of [`rank_subset`].
pub fn unrank_subset(rank: u64, k: usize, m: u32) -> Option<Vec<u32>> {
    let total = binomial(m as u64, k as u64);
    if rank == 0 || rank > total {
        return None;
    }
    let mut r = rank - 1;
    let mut out = Vec::with_capacity(k);
    let mut c = 1u32;
    for i in 0..k {
        loop {
            let count = binomial((m - c) as u64, (k - i - 1) as u64);
            if r < count {
                out.push(c);
                c += 1;
                break;
            }
            r -= count;
            c += 1;
        }
    }
    Some(out)
}
