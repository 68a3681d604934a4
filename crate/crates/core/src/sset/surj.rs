//! Degeneracy words as bitmasks of repeated positions.
//!
//! A degenerate simplex `s_w x` of dimension `m` over an `d`-cell corresponds
//! to a surjection `σ: [m] → [d]`; bit `j` of the mask is set when
//! `σ(j) = σ(j+1)`. The word `s_{i₁}⋯s_{i_r}` with `i₁ > ⋯ > i_r` has mask
//! `{i₁, …, i_r}`.

/// Values `σ(0), …, σ(m)`.
pub fn seq_from_mask(mask: u32, m: usize) -> Vec<u32> {
    let mut seq = Vec::with_capacity(m + 1);
    let mut v = 0;
    seq.push(0);
    for j in 0..m {
        if mask >> j & 1 == 0 {
            v += 1;
        }
        seq.push(v);
    }
    seq
}

pub fn mask_from_seq(seq: &[u32]) -> u32 {
    seq.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] == w[1])
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// The value a monotone sequence onto `[0..=d]` skips, if any.
pub fn missing(seq: &[u32], d: u32) -> Option<u32> {
    let mut expect = 0;
    for &v in seq {
        if v > expect {
            return Some(expect);
        }
        if v == expect {
            expect += 1;
        }
    }
    (expect <= d).then_some(expect)
}

/// Drops the skipped value `u` from a sequence that misses it.
pub fn close_gap(seq: &mut [u32], u: u32) {
    for v in seq.iter_mut() {
        if *v > u {
            *v -= 1;
        }
    }
}

/// Composite `outer ∘ inner` of sequences.
pub fn compose(outer: &[u32], inner: &[u32]) -> Vec<u32> {
    inner.iter().map(|&v| outer[v as usize]).collect()
}

/// Degeneracy indices of a mask, strictly decreasing.
pub fn word(mask: u32) -> Vec<u32> {
    (0..32).rev().filter(|j| mask >> j & 1 == 1).collect()
}

/// `s_i` applied to a simplex with mask `mask`.
pub fn degenerate_mask(mask: u32, i: usize) -> u32 {
    let low = mask & ((1u32 << i) - 1);
    low | 1 << i | (mask >> i) << (i + 1)
}

/// Keeps the bits of `mask` outside `common`, packed downwards.
pub fn compress(mask: u32, common: u32, m: usize) -> u32 {
    let mut out = 0;
    let mut k = 0;
    for j in 0..m {
        if common >> j & 1 == 0 {
            out |= (mask >> j & 1) << k;
            k += 1;
        }
    }
    out
}

/// All masks over `m` positions with `r` bits set.
pub fn masks_with(m: usize, r: usize) -> Vec<u32> {
    if r > m {
        return vec![];
    }
    (0u32..1 << m).filter(|x| x.count_ones() as usize == r).collect()
}
