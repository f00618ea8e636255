//! Generalized suffix array construction.
//!
//! Reads are concatenated into one integer text where read `j` ends with its
//! own sentinel symbol `j`, and bases are mapped above all sentinels. Distinct
//! sentinels make every suffix unique and order equal suffixes of different
//! reads by read id.

use crate::alphabet::Base;

/// Sorts all suffixes of an integer text whose suffixes are pairwise distinct.
pub trait SuffixSorter {
    /// `text` symbols are below `sigma`. Returns text positions in suffix order.
    fn sort(&self, text: &[u32], sigma: usize) -> Vec<u32>;
}

/// Prefix doubling with two counting-sort passes per round, O(N log N).
#[derive(Debug, Clone, Copy, Default)]
pub struct PrefixDoubling;

impl SuffixSorter for PrefixDoubling {
    fn sort(&self, text: &[u32], sigma: usize) -> Vec<u32> {
        let n = text.len();
        if n == 0 {
            return Vec::new();
        }
        // rank 0 is reserved for "past the end"
        let mut rank: Vec<u32> = text.iter().map(|&c| c + 1).collect();
        let mut sa: Vec<u32> = (0..n as u32).collect();
        let mut tmp = vec![0u32; n];
        let mut bucket = vec![0usize; n.max(sigma) + 2];

        counting_sort(&sa, &mut tmp, &mut bucket, |i| rank[i as usize] as usize);
        std::mem::swap(&mut sa, &mut tmp);
        let mut classes = rerank(&sa, &mut rank, &mut tmp, |a, b, r| {
            r[a as usize] == r[b as usize]
        });

        let mut k = 1usize;
        while classes < n {
            // order by second key: suffixes whose second half is past the end come first
            let mut second = Vec::with_capacity(n);
            second.extend((n - k.min(n)..n).map(|i| i as u32));
            second.extend(
                sa.iter()
                    .filter(|&&p| p as usize >= k)
                    .map(|&p| p - k as u32),
            );
            counting_sort(&second, &mut sa, &mut bucket, |i| rank[i as usize] as usize);

            let key2 = |r: &[u32], p: u32| -> u32 {
                let q = p as usize + k;
                if q < n {
                    r[q]
                } else {
                    0
                }
            };
            classes = rerank(&sa, &mut rank, &mut tmp, |a, b, r| {
                r[a as usize] == r[b as usize] && key2(r, a) == key2(r, b)
            });
            k *= 2;
        }
        sa
    }
}

fn counting_sort(
    input: &[u32],
    out: &mut [u32],
    bucket: &mut Vec<usize>,
    key: impl Fn(u32) -> usize,
) {
    let max_key = input.iter().map(|&i| key(i)).max().unwrap_or(0);
    if bucket.len() < max_key + 2 {
        bucket.resize(max_key + 2, 0);
    }
    bucket[..max_key + 2].iter_mut().for_each(|b| *b = 0);
    for &i in input {
        bucket[key(i) + 1] += 1;
    }
    for k in 1..max_key + 2 {
        bucket[k] += bucket[k - 1];
    }
    for &i in input {
        let k = key(i);
        out[bucket[k]] = i;
        bucket[k] += 1;
    }
}

/// Assigns dense 1-based ranks following `sa`; returns the number of classes.
fn rerank(
    sa: &[u32],
    rank: &mut [u32],
    tmp: &mut [u32],
    same: impl Fn(u32, u32, &[u32]) -> bool,
) -> usize {
    let mut r = 1u32;
    tmp[sa[0] as usize] = 1;
    for w in sa.windows(2) {
        if !same(w[0], w[1], rank) {
            r += 1;
        }
        tmp[w[1] as usize] = r;
    }
    rank.copy_from_slice(tmp);
    r as usize
}

/// Output of BWT construction.
pub struct BwtParts {
    /// Symbol codes, `0` for the sentinel.
    pub bwt: Vec<u8>,
    /// Read id for each sentinel in `bwt`, in row order.
    pub dollar_map: Vec<u32>,
}

/// Builds the BWT of a read collection.
pub fn build_bwt(reads: &[&[u8]], sorter: &dyn SuffixSorter) -> BwtParts {
    let n = reads.len();
    let total: usize = reads.iter().map(|r| r.len() + 1).sum();
    assert!(total < u32::MAX as usize, "collection too large");

    let mut text = Vec::with_capacity(total);
    let mut owner = Vec::with_capacity(total);
    let mut starts = vec![false; total];
    for (j, r) in reads.iter().enumerate() {
        starts[text.len()] = true;
        for &b in r.iter() {
            let base = Base::from_ascii(b).expect("read outside the alphabet");
            text.push(n as u32 + base.code() as u32 - 1);
            owner.push(j as u32);
        }
        text.push(j as u32);
        owner.push(j as u32);
    }

    let sa = sorter.sort(&text, n + 4);
    let mut bwt = Vec::with_capacity(total);
    let mut dollar_map = Vec::with_capacity(n);
    for &p in &sa {
        let p = p as usize;
        if starts[p] {
            bwt.push(0);
            dollar_map.push(owner[p]);
        } else {
            let prev = text[p - 1];
            debug_assert!(prev >= n as u32);
            bwt.push((prev - n as u32 + 1) as u8);
        }
    }
    BwtParts { bwt, dollar_map }
}
