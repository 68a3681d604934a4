//! Bisimplicial sets, their diagonals, and the simplicial replacement of a
//! poset-indexed diagram of simplicial subsets.

use std::collections::HashMap;

use rayon::prelude::*;

use super::model::{BuiltSSet, SimplicialModel};
use super::{surj, SSet};
use crate::error::{Error, Result};
use crate::poset::Poset;

/// `s^h_{hmask} s^v_{vmask} z` for a bi-nondegenerate cell `z` of bidegree `(h, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiSimplex {
    pub h: u32,
    pub v: u32,
    pub cell: u32,
    pub hmask: u32,
    pub vmask: u32,
}

impl BiSimplex {
    pub fn cell(h: usize, v: usize, cell: u32) -> Self {
        Self { h: h as u32, v: v as u32, cell, hmask: 0, vmask: 0 }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (
            self.h as usize + self.hmask.count_ones() as usize,
            self.v as usize + self.vmask.count_ones() as usize,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    H,
    V,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimplicialSet {
    counts: Vec<Vec<usize>>,
    /// `hfaces[h][v][c * (h + 1) + i]` is `d^h_i` of cell `c`.
    hfaces: Vec<Vec<Vec<BiSimplex>>>,
    /// `vfaces[h][v][c * (v + 1) + j]` is `d^v_j` of cell `c`.
    vfaces: Vec<Vec<Vec<BiSimplex>>>,
    basepoint: Option<u32>,
    truncation: Option<usize>,
}

impl BisimplicialSet {
    /// `counts[h][v]` bi-nondegenerate cells; the tables are validated and
    /// all simplicial identities checked.
    pub fn new(
        counts: Vec<Vec<usize>>,
        hfaces: Vec<Vec<Vec<BiSimplex>>>,
        vfaces: Vec<Vec<Vec<BiSimplex>>>,
        basepoint: Option<u32>,
        truncation: Option<usize>,
    ) -> Result<Self> {
        let b = Self { counts, hfaces, vfaces, basepoint, truncation };
        b.validate()?;
        b.check_identities()?;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        let width = self.counts.first().map_or(0, Vec::len);
        if self.counts.iter().any(|r| r.len() != width)
            || self.hfaces.len() != self.counts.len()
            || self.vfaces.len() != self.counts.len()
        {
            return bad("bidegree tables must be rectangular".into());
        }
        for h in 0..self.counts.len() {
            for v in 0..width {
                let n = self.counts[h][v];
                let eh = if h == 0 { 0 } else { n * (h + 1) };
                let ev = if v == 0 { 0 } else { n * (v + 1) };
                if self.hfaces[h][v].len() != eh || self.vfaces[h][v].len() != ev {
                    return bad(format!("bidegree ({h},{v}): wrong number of faces"));
                }
                let targets = self.hfaces[h][v].iter().map(|f| (f, h - 1, v));
                let vt = self.vfaces[h][v].iter().map(|f| (f, h, v.wrapping_sub(1)));
                for (f, eh, ev) in targets.chain(vt) {
                    if f.bidegree() != (eh, ev)
                        || f.cell as usize >= self.count(f.h as usize, f.v as usize)
                    {
                        return bad(format!("bidegree ({h},{v}): bad face {f:?}"));
                    }
                }
            }
        }
        if let Some(b) = self.basepoint {
            if b as usize >= self.count(0, 0) {
                return bad("basepoint is not a (0,0)-cell".into());
            }
        }
        Ok(())
    }

    pub fn count(&self, h: usize, v: usize) -> usize {
        self.counts.get(h).and_then(|r| r.get(v)).copied().unwrap_or(0)
    }

    pub fn basepoint(&self) -> Option<u32> {
        self.basepoint
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    fn is_base(&self, s: &BiSimplex) -> bool {
        s.h == 0 && s.v == 0 && Some(s.cell) == self.basepoint
    }

    fn stored(&self, dir: Dir, h: usize, v: usize, c: u32, i: usize) -> BiSimplex {
        match dir {
            Dir::H => self.hfaces[h][v][c as usize * (h + 1) + i],
            Dir::V => self.vfaces[h][v][c as usize * (v + 1) + i],
        }
    }

    /// The `i`-th face in direction `dir` of an arbitrary normalized simplex.
    fn face_in(&self, s: BiSimplex, dir: Dir, i: usize) -> BiSimplex {
        let (hh, vv) = s.bidegree();
        let mut hs = surj::seq_from_mask(s.hmask, hh);
        let mut vs = surj::seq_from_mask(s.vmask, vv);
        let (seq, top) = match dir {
            Dir::H => (&mut hs, s.h),
            Dir::V => (&mut vs, s.v),
        };
        seq.remove(i);
        let Some(u) = surj::missing(seq, top) else {
            return BiSimplex { hmask: surj::mask_from_seq(&hs), vmask: surj::mask_from_seq(&vs), ..s };
        };
        surj::close_gap(seq, u);
        let f = self.stored(dir, s.h as usize, s.v as usize, s.cell, u as usize);
        let (fh, fv) = f.bidegree();
        let hs = surj::compose(&surj::seq_from_mask(f.hmask, fh), &hs);
        let vs = surj::compose(&surj::seq_from_mask(f.vmask, fv), &vs);
        BiSimplex { hmask: surj::mask_from_seq(&hs), vmask: surj::mask_from_seq(&vs), ..f }
    }

    pub fn hface(&self, s: BiSimplex, i: usize) -> BiSimplex {
        self.face_in(s, Dir::H, i)
    }

    pub fn vface(&self, s: BiSimplex, j: usize) -> BiSimplex {
        self.face_in(s, Dir::V, j)
    }

    /// Horizontal and vertical simplicial identities and their commutation.
    pub fn check_identities(&self) -> Result<()> {
        let cells: Vec<BiSimplex> = (0..self.counts.len())
            .flat_map(|h| {
                (0..self.counts[h].len()).flat_map(move |v| {
                    (0..self.counts[h][v] as u32).map(move |c| BiSimplex::cell(h, v, c))
                })
            })
            .collect();
        let bad = cells.par_iter().find_map_any(|&x| {
            let (h, v) = (x.h as usize, x.v as usize);
            for j in (1..=h).filter(|_| h >= 2) {
                for i in 0..j {
                    if self.hface(self.hface(x, j), i) != self.hface(self.hface(x, i), j - 1) {
                        return Some(format!("{x:?}: d^h_{i}d^h_{j}"));
                    }
                }
            }
            for j in (1..=v).filter(|_| v >= 2) {
                for i in 0..j {
                    if self.vface(self.vface(x, j), i) != self.vface(self.vface(x, i), j - 1) {
                        return Some(format!("{x:?}: d^v_{i}d^v_{j}"));
                    }
                }
            }
            for i in 0..=h {
                for j in 0..=v {
                    if h > 0 && v > 0 && self.hface(self.vface(x, j), i) != self.vface(self.hface(x, i), j) {
                        return Some(format!("{x:?}: d^h_{i}d^v_{j} ≠ d^v_{j}d^h_{i}"));
                    }
                }
            }
            None
        });
        match bad {
            Some(m) => Err(Error::SimplicialIdentity(m)),
            None => Ok(()),
        }
    }

    /// The diagonal `m ↦ B_{m,m}`, built through dimension `D + 1` for
    /// truncation `D`.
    pub fn diagonal(&self, truncation: Option<usize>) -> Result<BuiltSSet<BiSimplex>> {
        if let (Some(t), want) = (self.truncation, truncation) {
            if want.is_none_or(|d| d > t) {
                return Err(Error::TruncationExceeded(format!(
                    "bisimplicial set is valid through degree {t}"
                )));
            }
        }
        BuiltSSet::build(&Diagonal(self), truncation)
    }
}

struct Diagonal<'a>(&'a BisimplicialSet);

impl SimplicialModel for Diagonal<'_> {
    type Simplex = BiSimplex;

    fn nondegenerate(&self, m: usize) -> Vec<BiSimplex> {
        let b = self.0;
        let mut out = Vec::new();
        for h in 0..=m.min(b.counts.len().saturating_sub(1)) {
            for v in 0..=m.min(b.counts[h].len().saturating_sub(1)) {
                let n = b.counts[h][v] as u32;
                if n == 0 {
                    continue;
                }
                let vmasks = surj::masks_with(m, m - v);
                for hmask in surj::masks_with(m, m - h) {
                    for &vmask in vmasks.iter().filter(|&&vm| vm & hmask == 0) {
                        out.extend((0..n).map(|cell| BiSimplex {
                            h: h as u32,
                            v: v as u32,
                            cell,
                            hmask,
                            vmask,
                        }));
                    }
                }
            }
        }
        out
    }

    fn face(&self, x: &BiSimplex, _m: usize, i: usize) -> BiSimplex {
        let y = self.0.hface(self.0.vface(*x, i), i);
        if self.0.is_base(&y) {
            let (m, _) = y.bidegree();
            return BiSimplex { hmask: (1 << m) - 1, vmask: (1 << m) - 1, ..y };
        }
        y
    }

    fn normalize(&self, x: &BiSimplex, m: usize) -> (BiSimplex, u32) {
        let common = x.hmask & x.vmask;
        let y = BiSimplex {
            hmask: surj::compress(x.hmask, common, m),
            vmask: surj::compress(x.vmask, common, m),
            ..*x
        };
        (y, common)
    }

    fn basepoint(&self) -> Option<BiSimplex> {
        self.0.basepoint.map(|b| BiSimplex::cell(0, 0, b))
    }

    fn dimension_bound(&self) -> Option<usize> {
        if self.0.truncation.is_some() {
            return None;
        }
        let mut top = 0;
        for (h, row) in self.0.counts.iter().enumerate() {
            for (v, &n) in row.iter().enumerate() {
                if n > 0 {
                    top = top.max(h + v);
                }
            }
        }
        Some(top)
    }
}

/// `X ⊠ Y` with `(X ⊠ Y)_{a,b} = X_a × Y_b`, unpointed.
pub fn external_product(x: &SSet, y: &SSet) -> Result<BisimplicialSet> {
    let (hx, vy) = (x.counts().len(), y.counts().len());
    let counts: Vec<Vec<usize>> =
        (0..hx).map(|a| (0..vy).map(|b| x.count(a) * y.count(b)).collect()).collect();
    let mut hfaces = vec![vec![vec![]; vy]; hx];
    let mut vfaces = vec![vec![vec![]; vy]; hx];
    for a in 0..hx {
        for b in 0..vy {
            let ny = y.count(b) as u32;
            for xc in 0..x.count(a) as u32 {
                for yc in 0..ny {
                    if a > 0 {
                        hfaces[a][b].extend(x.faces_of(a, xc).iter().map(|f| BiSimplex {
                            h: f.dim,
                            v: b as u32,
                            cell: f.cell * ny + yc,
                            hmask: f.mask,
                            vmask: 0,
                        }));
                    }
                    if b > 0 {
                        vfaces[a][b].extend(y.faces_of(b, yc).iter().map(|f| BiSimplex {
                            h: a as u32,
                            v: f.dim,
                            cell: xc * y.count(f.dim as usize) as u32 + f.cell,
                            hmask: 0,
                            vmask: f.mask,
                        }));
                    }
                }
            }
        }
    }
    let truncation = match (x.truncation(), y.truncation()) {
        (None, None) => None,
        (a, b) => Some(a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX))),
    };
    BisimplicialSet::new(counts, hfaces, vfaces, None, truncation)
}

/// The replacement `[m] ↦ ⋁_{p₀ < ⋯ < p_m} F_{p₀}X` of a diagram `p ↦ F_pX`
/// of pointed simplicial subsets, given by membership `member(p, dim, cell)`.
/// Bidegree `(m, n)` holds the pairs (strict chain of length `m`,
/// non-basepoint nondegenerate `n`-cell of `F_{p₀}X`); the shared basepoint
/// is cell 0 in bidegree `(0, 0)`.
pub fn simplicial_replacement<F>(p: &Poset, x: &SSet, member: F) -> Result<BisimplicialSet>
where
    F: Fn(usize, usize, u32) -> bool + Sync,
{
    let base = x
        .basepoint()
        .ok_or_else(|| Error::InvalidInput("diagram values must be pointed".into()))?;
    if p.is_empty() {
        return Err(Error::InvalidInput("diagram over the empty poset".into()));
    }
    let width = x.counts().len();
    for q in 0..p.len() {
        if !member(q, 0, base) {
            return Err(Error::NotASubobject(format!("F_{} misses the basepoint", p.label(q))));
        }
        for d in 1..width {
            for c in 0..x.count(d) as u32 {
                if member(q, d, c) {
                    if let Some(f) = x.faces_of(d, c).iter().find(|f| !member(q, f.dim as usize, f.cell)) {
                        return Err(Error::NotASubobject(format!(
                            "F_{} contains cell {c} in dimension {d} but not its face {f:?}",
                            p.label(q)
                        )));
                    }
                }
            }
        }
    }
    for a in 0..p.len() {
        for b in p.up_set(a).filter(|&b| b != a) {
            for d in 0..width {
                if let Some(c) = (0..x.count(d) as u32).find(|&c| member(a, d, c) && !member(b, d, c)) {
                    return Err(Error::NonMonotoneDiagram(format!(
                        "cell {c} in dimension {d} lies in F_{} but not in F_{}",
                        p.label(a),
                        p.label(b)
                    )));
                }
            }
        }
    }

    let chains = p.chains();
    let hx = chains.len().max(1);
    let chain_index: Vec<HashMap<&[usize], usize>> = chains
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect())
        .collect();
    // cells[m][n]: (chain id, X cell) in id order
    let mut cells: Vec<Vec<Vec<(usize, u32)>>> = vec![vec![vec![]; width]; hx];
    let mut lookup: Vec<Vec<HashMap<(usize, u32), u32>>> = vec![vec![HashMap::new(); width]; hx];
    for (m, level) in chains.iter().enumerate() {
        for n in 0..width {
            let mut list = Vec::new();
            if m == 0 && n == 0 {
                list.push((usize::MAX, base));
            }
            for (ci, c) in level.iter().enumerate() {
                for xc in 0..x.count(n) as u32 {
                    if !(n == 0 && xc == base) && member(c[0], n, xc) {
                        list.push((ci, xc));
                    }
                }
            }
            lookup[m][n] = list.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
            cells[m][n] = list;
        }
    }
    let base_at = |m: usize, n: usize| BiSimplex {
        h: 0,
        v: 0,
        cell: 0,
        hmask: (1u32 << m) - 1,
        vmask: (1u32 << n) - 1,
    };
    let mut hfaces = vec![vec![vec![]; width]; hx];
    let mut vfaces = vec![vec![vec![]; width]; hx];
    for m in 0..chains.len() {
        for n in 0..width {
            for &(ci, xc) in &cells[m][n] {
                if ci == usize::MAX {
                    continue;
                }
                let c = &chains[m][ci];
                if m > 0 {
                    for i in 0..=m {
                        let mut dc = c.clone();
                        dc.remove(i);
                        let di = chain_index[m - 1][dc.as_slice()];
                        let cell = lookup[m - 1][n][&(di, xc)];
                        hfaces[m][n].push(BiSimplex { h: (m - 1) as u32, v: n as u32, cell, hmask: 0, vmask: 0 });
                    }
                }
                if n > 0 {
                    for f in x.faces_of(n, xc) {
                        if x.is_base(f) {
                            vfaces[m][n].push(base_at(m, n - 1));
                        } else {
                            let cell = lookup[m][f.dim as usize][&(ci, f.cell)];
                            vfaces[m][n].push(BiSimplex { h: m as u32, v: f.dim, cell, hmask: 0, vmask: f.mask });
                        }
                    }
                }
            }
        }
    }
    let counts = cells.iter().map(|r| r.iter().map(Vec::len).collect()).collect();
    BisimplicialSet::new(counts, hfaces, vfaces, Some(0), x.truncation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{homology, Coeff};
    use crate::sset::{circle, sphere};

    fn betti(x: &SSet, reduced: bool) -> Vec<(isize, usize, Vec<u64>)> {
        homology(&x.normalized_chains(reduced).unwrap(), Coeff::Z).unwrap().nonzero()
    }

    #[test]
    fn torus_from_external_square() {
        let s1 = circle().with_basepoint(None).unwrap();
        let b = external_product(&s1, &s1).unwrap();
        let d = b.diagonal(None).unwrap().sset;
        assert_eq!(betti(&d, false), vec![(0, 1, vec![]), (1, 2, vec![]), (2, 1, vec![])]);
    }

    #[test]
    fn constant_direction_recovers_factor() {
        let pt = SSet::point().with_basepoint(None).unwrap();
        let s2 = sphere(2).with_basepoint(None).unwrap();
        let d = external_product(&pt, &s2).unwrap().diagonal(None).unwrap().sset;
        assert_eq!(d.counts(), s2.counts());
        assert_eq!(betti(&d, false), betti(&s2, false));
    }

    #[test]
    fn single_point_diagram() {
        let p = Poset::from_pairs::<&str>(&["p"], &[]).unwrap();
        let s2 = sphere(2);
        let b = simplicial_replacement(&p, &s2, |_, _, _| true).unwrap();
        let d = b.diagonal(None).unwrap().sset;
        assert_eq!(d.counts(), s2.counts());
        assert_eq!(betti(&d, true), vec![(2, 1, vec![])]);
    }

    #[test]
    fn non_monotone_diagram_is_rejected() {
        let p = Poset::from_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        let s1 = circle();
        let err = simplicial_replacement(&p, &s1, |q, d, _| d == 0 || q == 0).unwrap_err();
        assert!(matches!(err, Error::NonMonotoneDiagram(_)));
    }
}
