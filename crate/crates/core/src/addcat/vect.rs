//! Subspaces of `F_q^n` in reduced row echelon form.

use crate::field::{Elem, FiniteField};

/// A subspace of `F_q^n`, stored as its canonical RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub n: usize,
    pub q: u32,
    pub rows: Vec<Vec<Elem>>,
}

impl Subspace {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn label(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| std::char::from_digit(x as u32, 16).unwrap()).collect())
            .collect();
        format!("q{}n{}:[{}]", self.q, self.n, rows.join(";"))
    }

    pub fn is_rref(&self) -> bool {
        let mut last: Option<usize> = None;
        for (i, r) in self.rows.iter().enumerate() {
            let Some(p) = r.iter().position(|&x| x != 0) else { return false };
            if r[p] != 1 || last.is_some_and(|l| p <= l) {
                return false;
            }
            if self.rows.iter().enumerate().any(|(j, o)| j != i && o[p] != 0) {
                return false;
            }
            last = Some(p);
        }
        true
    }
}

/// Row reduces `rows` in place and drops zero rows.
pub fn rref(f: &FiniteField, mut rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let k = rows[i][c];
                for j in 0..n {
                    let v = f.sub(rows[i][j], f.mul(k, rows[r][j]));
                    rows[i][j] = v;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn span(f: &FiniteField, n: usize, rows: Vec<Vec<Elem>>) -> Subspace {
    Subspace { n, q: f.order(), rows: rref(f, rows) }
}

/// Every subspace of `F_q^n`, grouped by pivot pattern.
pub fn all_subspaces(f: &FiniteField, n: usize) -> Vec<Subspace> {
    let q = f.order() as usize;
    let mut out = Vec::new();
    for pivots_mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|i| pivots_mask >> i & 1 == 1).collect();
        // free slots: row i, column c > pivots[i], c not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let pivots = &pivots;
                (p + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let count = q.pow(free.len() as u32);
        for code in 0..count {
            let mut rows = vec![vec![0 as Elem; n]; pivots.len()];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut c = code;
            for &(i, col) in &free {
                rows[i][col] = (c % q) as Elem;
                c /= q;
            }
            out.push(Subspace { n, q: q as u32, rows });
        }
    }
    out
}

/// Vectors of `F_q^n` indexed by base-`q` digits, least significant first.
pub fn vector_from_index(q: usize, n: usize, mut idx: usize) -> Vec<Elem> {
    (0..n)
        .map(|_| {
            let d = (idx % q) as Elem;
            idx /= q;
            d
        })
        .collect()
}

pub fn vector_index(q: usize, v: &[Elem]) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * q + x as usize)
}

/// Indices of every vector in the subspace.
pub fn members(f: &FiniteField, s: &Subspace) -> Vec<usize> {
    let q = f.order() as usize;
    let r = s.rows.len();
    (0..q.pow(r as u32))
        .map(|code| {
            let coeffs = vector_from_index(q, r, code);
            let mut v = vec![0 as Elem; s.n];
            for (c, row) in coeffs.iter().zip(&s.rows) {
                for j in 0..s.n {
                    v[j] = f.add(v[j], f.mul(*c, row[j]));
                }
            }
            vector_index(q, &v)
        })
        .collect()
}

/// Row vector times matrix.
pub fn apply(f: &FiniteField, v: &[Elem], g: &[Vec<Elem>]) -> Vec<Elem> {
    let n = g.first().map_or(0, Vec::len);
    let mut out = vec![0 as Elem; n];
    for (i, &x) in v.iter().enumerate() {
        if x != 0 {
            for j in 0..n {
                out[j] = f.add(out[j], f.mul(x, g[i][j]));
            }
        }
    }
    out
}

pub fn image(f: &FiniteField, s: &Subspace, g: &[Vec<Elem>]) -> Subspace {
    span(f, s.n, s.rows.iter().map(|r| apply(f, r, g)).collect())
}

pub fn matrix_rank(f: &FiniteField, m: &[Vec<Elem>]) -> usize {
    rref(f, m.to_vec()).len()
}
