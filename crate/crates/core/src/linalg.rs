//! Exact linear algebra over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Vector = Vec<BigRational>;

pub fn from_ints(rows: &[Vec<i64>]) -> Vec<Vector> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}` for an `nrows × ncols` matrix given by rows.
pub fn kernel(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// `dim V_G = dim V − rank{(g − 1)v}` for generators `g` given as square
/// matrices acting on column vectors.
pub fn coinvariants_dim(dim: usize, generators: &[Vec<Vector>]) -> usize {
    let mut relations = Vec::new();
    for g in generators {
        for (i, row) in g.iter().enumerate() {
            let mut r = row.clone();
            r[i] -= BigRational::one();
            relations.push(r);
        }
    }
    dim - rank(&relations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let m = from_ints(&[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], from_ints(&[vec![1, -1, 1]])[0]);
    }

    #[test]
    fn coinvariants_of_permutation_modules() {
        // cyclic shift on Q^3: coinvariants are one-dimensional
        let shift = from_ints(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(coinvariants_dim(3, &[shift]), 1);
        assert_eq!(coinvariants_dim(4, &[]), 4);
        // sign representation of Z/2
        assert_eq!(coinvariants_dim(1, &[from_ints(&[vec![-1]])]), 0);
    }
}
