//! Closed-form counts used to cross-check the brute-force computations.

/// `[n choose k]_q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// `|GL_n(F_q)|`.
pub fn gl_order(n: u32, q: u128) -> u128 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

/// Rank of the Steinberg module, `q^{n(n−1)/2}`.
pub fn steinberg_rank(n: u32, q: u128) -> u128 {
    q.pow(n * n.saturating_sub(1) / 2)
}

/// Coefficients of `∏_{i=1}^{n−1} (1 + i·t^{k−1})`, indexed by degree.
pub fn conf_poincare(n: usize, k: usize) -> Vec<u64> {
    assert!(n >= 1 && k >= 2);
    let step = k - 1;
    let mut poly = vec![1u64];
    for i in 1..n as u64 {
        let mut next = vec![0u64; poly.len() + step];
        for (d, &c) in poly.iter().enumerate() {
            next[d] += c;
            next[d + step] += i * c;
        }
        poly = next;
    }
    while poly.len() > 1 && poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}

/// Reduced homology ranks of the fat diagonal in `S^{nk}` predicted by
/// Alexander duality, `H̃_q ≅ H̃^{nk−q−1}(Conf_n(ℝ^k))`, as (degree, rank).
pub fn fat_diagonal_ranks(n: usize, k: usize) -> Vec<(isize, u64)> {
    let mut out: Vec<(isize, u64)> = conf_poincare(n, k)
        .into_iter()
        .enumerate()
        .map(|(d, c)| (d, if d == 0 { c - 1 } else { c }))
        .filter(|&(_, c)| c > 0)
        .map(|(d, c)| ((n * k) as isize - d as isize - 1, c))
        .collect();
    out.sort_unstable();
    out
}

/// Ordered set partitions of an `n`-set.
pub fn fubini(n: usize) -> u128 {
    let mut a = vec![1u128];
    for m in 1..=n {
        let v = (1..=m).map(|k| binomial(m, k) * a[m - k]).sum();
        a.push(v);
    }
    a[n]
}

/// Set partitions of an `n`-set.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(steinberg_rank(3, 3), 27);
        assert_eq!(conf_poincare(1, 2), vec![1]);
        assert_eq!(conf_poincare(2, 2), vec![1, 1]);
        assert_eq!(conf_poincare(3, 3), vec![1, 0, 3, 0, 2]);
        assert_eq!(fat_diagonal_ranks(3, 2), vec![(3, 2), (4, 3)]);
        assert_eq!(fat_diagonal_ranks(2, 2), vec![(2, 1)]);
        assert_eq!(fat_diagonal_ranks(2, 3), vec![(3, 1)]);
        assert_eq!((1..=5).map(fubini).collect::<Vec<_>>(), vec![1, 3, 13, 75, 541]);
        assert_eq!((0..=5).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15, 52]);
    }
}
