//! Ranks over `F_p` by column reduction, independent of the integer code path.

use std::collections::HashMap;

use super::SparseMatrix;

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rank of `m` reduced mod the prime `p`.
pub fn rank_mod_p(m: &SparseMatrix, p: u32) -> usize {
    let p = p as u64;
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    let mut rank = 0;
    for col in m.columns() {
        let mut v: Vec<(u32, u64)> = col
            .iter()
            .map(|&(r, x)| (r, x.rem_euclid(p as i64) as u64))
            .filter(|e| e.1 != 0)
            .collect();
        while let Some(&(low, a)) = v.last() {
            let Some(pc) = pivots.get(&low) else {
                pivots.insert(low, v);
                rank += 1;
                break;
            };
            let b = pc.last().unwrap().1;
            let f = a * inv_mod(b, p) % p;
            let mut out = Vec::with_capacity(v.len() + pc.len());
            let (mut i, mut j) = (0, 0);
            while i < v.len() || j < pc.len() {
                let ri = v.get(i).map_or(u32::MAX, |e| e.0);
                let rj = pc.get(j).map_or(u32::MAX, |e| e.0);
                if ri < rj {
                    out.push(v[i]);
                    i += 1;
                } else if rj < ri {
                    out.push((rj, (p - f * pc[j].1 % p) % p));
                    j += 1;
                } else {
                    let x = (v[i].1 + p - f * pc[j].1 % p) % p;
                    if x != 0 {
                        out.push((ri, x));
                    }
                    i += 1;
                    j += 1;
                }
            }
            v = out;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_depends_on_characteristic() {
        let m = SparseMatrix::from_dense(2, 2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
    }
}
