//! Smith normal form over `Z`.
//!
//! Sparse elimination on `±1` pivots first, then a dense reduction of what is
//! left. Arithmetic runs in checked `i64` and is redone with big integers if
//! any step overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseMatrix;
use crate::error::{Error, Result};

/// Largest dense remainder (rows × columns) the reducer accepts.
const DENSE_CAP: usize = 16_000_000;

pub(crate) trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn nil() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `self - b * c`, `None` on overflow.
    fn sub_mul(&self, b: &Self, c: &Self) -> Option<Self>;
    fn mul(&self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn abs_lt(&self, other: &Self) -> bool;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, b: &Self, c: &Self) -> Option<Self> {
        self.checked_sub(b.checked_mul(*c)?)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        self.checked_mul(*b)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, b: &Self, c: &Self) -> Option<Self> {
        Some(self - b * c)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        Some(self * b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Rank and elementary divisors `d₁ | d₂ | ⋯` of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Number of divisors equal to 1.
    pub ones: usize,
    /// Divisors greater than 1, in divisibility order.
    pub others: Vec<BigInt>,
}

impl SmithForm {
    pub fn divisors(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one(); self.ones];
        out.extend(self.others.iter().cloned());
        out
    }
}

enum Abort {
    Overflow,
    Cap(usize, usize),
}

type Row<T> = Vec<(u32, T)>;

fn entry<T>(row: &Row<T>, c: u32) -> Option<&T> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|i| &row[i].1)
}

/// `target - f * pivot`, reporting columns that were newly created.
fn axpy<T: Scalar>(
    target: &Row<T>,
    f: &T,
    pivot: &Row<T>,
    created: &mut Vec<u32>,
) -> Result<Row<T>, Abort> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            let v = T::nil().sub_mul(f, &pivot[j].1).ok_or(Abort::Overflow)?;
            created.push(cj);
            out.push((cj, v));
            j += 1;
        } else {
            let v = target[i].1.sub_mul(f, &pivot[j].1).ok_or(Abort::Overflow)?;
            if !v.is_nil() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Eliminates unit pivots; returns their number and the dense remainder.
fn eliminate_units<T: Scalar>(m: &SparseMatrix) -> Result<(usize, Vec<Vec<T>>), Abort> {
    // rows of the transpose: one per column of `m`
    let mut rows: Vec<Row<T>> = m
        .columns()
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, T::from_i64(v))).collect())
        .collect();
    let ncols = m.nrows();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c as usize].push(r as u32);
        }
    }
    let mut row_alive = vec![true; rows.len()];
    let mut col_alive = vec![true; ncols];
    let mut rank = 0;
    let mut progress = true;
    while progress {
        progress = false;
        let mut order: Vec<usize> = (0..ncols).filter(|&c| col_alive[c]).collect();
        order.sort_by_key(|&c| col_rows[c].len());
        for c in order {
            if !col_alive[c] {
                continue;
            }
            let mut rs: Vec<u32> = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| row_alive[r as usize] && entry(&rows[r as usize], c as u32).is_some())
                .collect();
            rs.sort_unstable();
            rs.dedup();
            if rs.is_empty() {
                col_alive[c] = false;
                col_rows[c] = rs;
                continue;
            }
            let pivot = rs
                .iter()
                .copied()
                .filter(|&r| entry(&rows[r as usize], c as u32).unwrap().is_unit())
                .min_by_key(|&r| rows[r as usize].len());
            let Some(p) = pivot else {
                col_rows[c] = rs;
                continue;
            };
            let prow = std::mem::take(&mut rows[p as usize]);
            let pval = entry(&prow, c as u32).unwrap().clone();
            for &r in &rs {
                if r == p {
                    continue;
                }
                let a = entry(&rows[r as usize], c as u32).unwrap().clone();
                // pivot is ±1, so a / pval = a * pval
                let f = a.mul(&pval).ok_or(Abort::Overflow)?;
                let mut created = Vec::new();
                let new_row = axpy(&rows[r as usize], &f, &prow, &mut created)?;
                rows[r as usize] = new_row;
                for nc in created {
                    col_rows[nc as usize].push(r);
                }
            }
            row_alive[p as usize] = false;
            col_alive[c] = false;
            col_rows[c].clear();
            rank += 1;
            progress = true;
        }
    }
    let live_rows: Vec<usize> =
        (0..rows.len()).filter(|&r| row_alive[r] && !rows[r].is_empty()).collect();
    let mut live_cols: Vec<u32> =
        live_rows.iter().flat_map(|&r| rows[r].iter().map(|e| e.0)).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    if live_rows.len().saturating_mul(live_cols.len()) > DENSE_CAP {
        return Err(Abort::Cap(live_rows.len(), live_cols.len()));
    }
    let mut dense = vec![vec![T::nil(); live_cols.len()]; live_rows.len()];
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            let j = live_cols.binary_search(c).unwrap();
            dense[i][j] = v.clone();
        }
    }
    Ok((rank, dense))
}

/// Diagonalizes a dense matrix; returns the divisor chain (absolute values)
/// and, when `track` is set, the unimodular transforms `U` and `V`.
#[allow(clippy::type_complexity)]
fn dense_snf<T: Scalar>(
    mut m: Vec<Vec<T>>,
    track: bool,
) -> Result<(Vec<T>, Option<(Vec<Vec<T>>, Vec<Vec<T>>)>), Abort> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let ident = |n: usize| -> Vec<Vec<T>> {
        (0..n)
            .map(|i| (0..n).map(|j| T::from_i64((i == j) as i64)).collect())
            .collect()
    };
    let (mut u, mut v) = if track { (ident(rows), ident(cols)) } else { (vec![], vec![]) };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_nil() && best.is_none_or(|(a, b)| m[i][j].abs_lt(&m[a][b])) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        if track {
            u.swap(t, bi);
        }
        swap_cols(&mut m, t, bj);
        if track {
            swap_cols(&mut v, t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_nil() {
                    continue;
                }
                let q = m[i][t].quot(&m[t][t]);
                row_sub(&mut m, i, t, &q, t)?;
                if track {
                    row_sub(&mut u, i, t, &q, 0)?;
                }
                dirty |= !m[i][t].is_nil();
            }
            for j in t + 1..cols {
                if m[t][j].is_nil() {
                    continue;
                }
                let q = m[t][j].quot(&m[t][t]);
                col_sub(&mut m, j, t, &q, t)?;
                if track {
                    col_sub(&mut v, j, t, &q, 0)?;
                }
                dirty |= !m[t][j].is_nil();
            }
            if dirty {
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !m[i][t].is_nil() && m[i][t].abs_lt(&m[best.0][best.1]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !m[t][j].is_nil() && m[t][j].abs_lt(&m[best.0][best.1]) {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    m.swap(t, best.0);
                    if track {
                        u.swap(t, best.0);
                    }
                } else if best.1 != t {
                    swap_cols(&mut m, t, best.1);
                    if track {
                        swap_cols(&mut v, t, best.1);
                    }
                }
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !m[t][t].divides(&m[i][j])));
            match bad {
                Some(i) => {
                    let minus_one = T::from_i64(-1);
                    row_sub(&mut m, t, i, &minus_one, t)?;
                    if track {
                        row_sub(&mut u, t, i, &minus_one, 0)?;
                    }
                }
                None => break,
            }
        }
        if is_negative(&m[t][t]) {
            let n = m[t][t].neg().ok_or(Abort::Overflow)?;
            m[t][t] = n;
            if track {
                for x in u[t].iter_mut() {
                    *x = x.neg().ok_or(Abort::Overflow)?;
                }
            }
        }
        diag.push(m[t][t].clone());
        t += 1;
    }
    Ok((diag, track.then_some((u, v))))
}

fn is_negative<T: Scalar>(x: &T) -> bool {
    x.to_big().is_negative()
}

fn swap_cols<T>(m: &mut [Vec<T>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// `row_i -= q * row_t` on columns `from..`.
fn row_sub<T: Scalar>(m: &mut [Vec<T>], i: usize, t: usize, q: &T, from: usize) -> Result<(), Abort> {
    for j in from..m[i].len() {
        if !m[t][j].is_nil() {
            let v = m[i][j].sub_mul(q, &m[t][j]).ok_or(Abort::Overflow)?;
            m[i][j] = v;
        }
    }
    Ok(())
}

/// `col_j -= q * col_t` on rows `from..`.
fn col_sub<T: Scalar>(m: &mut [Vec<T>], j: usize, t: usize, q: &T, from: usize) -> Result<(), Abort> {
    for row in m.iter_mut().skip(from) {
        if !row[t].is_nil() {
            let v = row[j].sub_mul(q, &row[t]).ok_or(Abort::Overflow)?;
            row[j] = v;
        }
    }
    Ok(())
}

fn run<T: Scalar>(m: &SparseMatrix) -> Result<SmithForm, Abort> {
    let (units, dense) = eliminate_units::<T>(m)?;
    let (diag, _) = dense_snf(dense, false)?;
    let mut ones = units;
    let mut others = Vec::new();
    for d in diag {
        let b = d.to_big();
        if b.is_one() {
            ones += 1;
        } else {
            others.push(b);
        }
    }
    Ok(SmithForm { rank: ones + others.len(), ones, others })
}

fn cap_error(r: usize, c: usize) -> Error {
    Error::ResourceCap(format!("dense Smith remainder {r}x{c} exceeds cap"))
}

/// Rank and elementary divisors of `m`.
pub fn smith_normal_form(m: &SparseMatrix) -> Result<SmithForm> {
    match run::<i64>(m) {
        Ok(f) => Ok(f),
        Err(Abort::Cap(r, c)) => Err(cap_error(r, c)),
        Err(Abort::Overflow) => match run::<BigInt>(m) {
            Ok(f) => Ok(f),
            Err(Abort::Cap(r, c)) => Err(cap_error(r, c)),
            Err(Abort::Overflow) => unreachable!("big integers do not overflow"),
        },
    }
}

/// `U · M · V = D` with `U`, `V` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub diagonal: Vec<BigInt>,
}

/// Largest side accepted for certificate emission.
pub const CERTIFICATE_CAP: usize = 200;

pub fn smith_certificate(m: &SparseMatrix) -> Result<Certificate> {
    if m.nrows() > CERTIFICATE_CAP || m.ncols() > CERTIFICATE_CAP {
        return Err(Error::ResourceCap(format!(
            "certificate requested for {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let dense: Vec<Vec<BigInt>> =
        m.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let rows = dense.len();
    let cols = m.ncols();
    if rows == 0 || cols == 0 {
        let ident = |n: usize| -> Vec<Vec<BigInt>> {
            (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
        };
        return Ok(Certificate { u: ident(rows), v: ident(cols), diagonal: vec![] });
    }
    match dense_snf(dense, true) {
        Ok((diagonal, Some((u, v)))) => Ok(Certificate { u, v, diagonal }),
        _ => unreachable!("big integers do not overflow"),
    }
}

/// Checks `det U = ±1`, `det V = ±1` and `U M V = diag`, and the divisor chain.
pub fn verify_certificate(m: &SparseMatrix, cert: &Certificate) -> bool {
    let dense: Vec<Vec<BigInt>> =
        m.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let um = mat_mul(&cert.u, &dense, m.ncols());
    let umv = mat_mul(&um, &cert.v, m.ncols());
    for (i, row) in umv.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { cert.diagonal.get(i).cloned().unwrap_or_default() } else { BigInt::zero() };
            if *x != want {
                return false;
            }
        }
    }
    let chain_ok = cert.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
    let positive = cert.diagonal.iter().all(|d| d.is_positive());
    chain_ok && positive && determinant(&cert.u).abs().is_one() && determinant(&cert.v).abs().is_one()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], b_cols_hint: usize) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(b_cols_hint, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, brow)| x * &brow[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub(crate) fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]).div_floor(&prev);
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Entry lookup helper for tests and small diagnostics.
#[cfg(test)]
pub(crate) fn to_i64(b: &BigInt) -> Option<i64> {
    num_traits::ToPrimitive::to_i64(b)
}
