//! Dense ranking of cop multisets.
//!
//! A sorted tuple `c_0 <= ... <= c_{k-1}` over `0..n` maps to the strictly
//! increasing tuple `d_i = c_i + i` over `0..n+k-1`, ranked in colex order:
//! `rank = sum_i C(d_i, i + 1)`. Ranks are exactly `0..C(n+k-1, k)`.

#[derive(Clone, Debug)]
pub struct MultisetIndex {
    n: usize,
    k: usize,
    binom: Vec<Vec<u64>>,
    tuples: Vec<u32>,
}

/// `C(n + k - 1, k)`, or `None` on overflow.
pub fn multiset_count(n: usize, k: usize) -> Option<u64> {
    if n == 0 {
        return Some(u64::from(k == 0));
    }
    let top = (n + k - 1) as u64;
    let mut acc: u128 = 1;
    for i in 0..k as u64 {
        acc = acc * u128::from(top - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

impl MultisetIndex {
    pub fn new(n: usize, k: usize) -> Self {
        let rows = n + k;
        let mut binom = vec![vec![0u64; k + 2]; rows + 1];
        for row in &mut binom {
            row[0] = 1;
        }
        for m in 1..=rows {
            for j in 1..=k + 1 {
                binom[m][j] = binom[m - 1][j - 1].saturating_add(binom[m - 1][j]);
            }
        }
        let count = multiset_count(n, k).expect("caller checked capacity") as usize;
        let mut tuples = vec![0u32; count * k];
        let mut cur = vec![0usize; k];
        let mut index = MultisetIndex { n, k, binom, tuples: Vec::new() };
        if count > 0 {
            loop {
                let r = index.rank(&cur);
                for (slot, &c) in tuples[r * k..(r + 1) * k].iter_mut().zip(&cur) {
                    *slot = c as u32;
                }
                // next non-decreasing tuple in lexicographic order
                let Some(pos) = (0..k).rev().find(|&i| cur[i] + 1 < n) else { break };
                let v = cur[pos] + 1;
                for c in &mut cur[pos..] {
                    *c = v;
                }
            }
        }
        index.tuples = tuples;
        index
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.tuples.len().checked_div(self.k).unwrap_or(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of a sorted tuple.
    #[inline]
    pub fn rank(&self, sorted: &[usize]) -> usize {
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        let mut r = 0u64;
        for (i, &c) in sorted.iter().enumerate() {
            r += self.binom[c + i][i + 1];
        }
        r as usize
    }

    #[inline]
    pub fn tuple(&self, rank: usize) -> &[u32] {
        &self.tuples[rank * self.k..(rank + 1) * self.k]
    }
}
