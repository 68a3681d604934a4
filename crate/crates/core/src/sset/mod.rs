//! Finite-type pointed simplicial sets in Eilenberg–Zilber normal form.
//!
//! Only nondegenerate cells are stored. Every simplex is written `s_w x`
//! with `x` a nondegenerate cell and `w` a degeneracy word, kept as the
//! bitmask of repeated positions (see [`surj`]).

mod bisimplicial;
mod join;
mod model;
mod spheres;
pub mod surj;
mod valuation;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::{ChainComplex, SparseMatrix};
use crate::SimplicialComplex;

pub use bisimplicial::{external_product, simplicial_replacement, BiSimplex, BisimplicialSet};
pub use join::{cone, join_sset, star_join, suspension_prime};
pub use model::{BuiltSSet, SimplicialModel};
pub use spheres::{
    circle, fat_diagonal_model, minimal_sphere, points, smash_power, smash_power_injective,
    sphere, sphere_zero, SmashMode, SmashPower,
};
pub use valuation::{filtration_level, mv_blowup, BlowupCheck, Valuation};

/// `s_mask(cell)` where `cell` is a nondegenerate `dim`-cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub dim: u32,
    pub cell: u32,
    pub mask: u32,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, cell: u32) -> Self {
        Self { dim: dim as u32, cell, mask: 0 }
    }

    /// Dimension of the simplex itself.
    pub fn ambient(&self) -> usize {
        self.dim as usize + self.mask.count_ones() as usize
    }

    pub fn is_degenerate(&self) -> bool {
        self.mask != 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSet {
    counts: Vec<usize>,
    /// `faces[d][c * (d + 1) + i]` is `d_i` of cell `c` in dimension `d ≥ 1`.
    faces: Vec<Vec<Simplex>>,
    basepoint: Option<u32>,
    truncation: Option<usize>,
}

impl SSet {
    /// Builds and validates a simplicial set. `faces[d]` holds `d + 1`
    /// entries per cell; `faces[0]` must be empty.
    pub fn new(
        counts: Vec<usize>,
        faces: Vec<Vec<Simplex>>,
        basepoint: Option<u32>,
        truncation: Option<usize>,
    ) -> Result<Self> {
        let x = Self::new_unchecked(counts, faces, basepoint, truncation)?;
        x.check_identities()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(
        mut counts: Vec<usize>,
        mut faces: Vec<Vec<Simplex>>,
        basepoint: Option<u32>,
        truncation: Option<usize>,
    ) -> Result<Self> {
        if counts.len() != faces.len() {
            return Err(Error::InvalidInput("one face table per dimension expected".into()));
        }
        while counts.len() > 1 && counts.last() == Some(&0) && truncation.is_none() {
            counts.pop();
            faces.pop();
        }
        if let Some(b) = basepoint {
            if counts.first().copied().unwrap_or(0) <= b as usize {
                return Err(Error::InvalidInput(format!("basepoint {b} is not a vertex")));
            }
        }
        if let Some(d) = truncation {
            if counts.len() < d + 2 {
                counts.resize(d + 2, 0);
                faces.resize(d + 2, Vec::new());
            }
        }
        for (d, table) in faces.iter().enumerate() {
            let expected = if d == 0 { 0 } else { counts[d] * (d + 1) };
            if table.len() != expected {
                return Err(Error::InvalidInput(format!(
                    "dimension {d}: {} faces listed, {expected} expected",
                    table.len()
                )));
            }
            for f in table {
                let fd = f.dim as usize;
                if fd >= d || f.ambient() != d - 1 || f.cell as usize >= counts[fd] {
                    return Err(Error::InvalidInput(format!("dimension {d}: bad face {f:?}")));
                }
                if fd == 0 && f.mask.count_ones() as usize != d - 1 {
                    return Err(Error::InvalidInput(format!("dimension {d}: bad face {f:?}")));
                }
            }
        }
        Ok(Self { counts, faces, basepoint, truncation })
    }

    /// The simplicial set with no simplices.
    pub fn empty() -> Self {
        Self { counts: vec![0], faces: vec![vec![]], basepoint: None, truncation: None }
    }

    /// A single pointed vertex.
    pub fn point() -> Self {
        Self { counts: vec![1], faces: vec![vec![]], basepoint: Some(0), truncation: None }
    }

    /// The nerve of a simplicial complex with its vertices ordered canonically.
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        let simplices = k.simplices();
        let counts: Vec<usize> = simplices.iter().map(Vec::len).collect();
        if counts.is_empty() {
            return Self::empty();
        }
        let faces = simplices
            .iter()
            .enumerate()
            .map(|(d, level)| {
                if d == 0 {
                    return vec![];
                }
                level
                    .iter()
                    .flat_map(|s| {
                        (0..s.len()).map(move |i| {
                            let mut f = s.clone();
                            f.remove(i);
                            let c = simplices[d - 1].binary_search(&f).expect("face present");
                            Simplex::nondegenerate(d - 1, c as u32)
                        })
                    })
                    .collect()
            })
            .collect();
        Self { counts, faces, basepoint: None, truncation: None }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn count(&self, d: usize) -> usize {
        self.counts.get(d).copied().unwrap_or(0)
    }

    /// Highest dimension with stored data.
    pub fn top_dim(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn basepoint(&self) -> Option<u32> {
        self.basepoint
    }

    pub fn is_pointed(&self) -> bool {
        self.basepoint.is_some()
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn with_basepoint(mut self, basepoint: Option<u32>) -> Result<Self> {
        if let Some(b) = basepoint {
            if b as usize >= self.count(0) {
                return Err(Error::InvalidInput(format!("basepoint {b} is not a vertex")));
            }
        }
        self.basepoint = basepoint;
        Ok(self)
    }

    /// Total number of nondegenerate cells.
    pub fn size(&self) -> usize {
        self.counts.iter().sum()
    }

    /// `d_i` of the nondegenerate cell `(d, c)`.
    pub fn face(&self, d: usize, c: u32, i: usize) -> Simplex {
        self.faces[d][c as usize * (d + 1) + i]
    }

    pub fn faces_of(&self, d: usize, c: u32) -> &[Simplex] {
        let k = c as usize * (d + 1);
        &self.faces[d][k..k + d + 1]
    }

    /// The fully degenerate basepoint in dimension `m`.
    pub fn base_simplex(&self, m: usize) -> Option<Simplex> {
        self.basepoint.map(|b| Simplex { dim: 0, cell: b, mask: (1u32 << m) - 1 })
    }

    pub fn is_base(&self, s: &Simplex) -> bool {
        s.dim == 0 && Some(s.cell) == self.basepoint
    }

    /// `d_i` of an arbitrary normalized simplex.
    pub fn face_of(&self, s: Simplex, i: usize) -> Simplex {
        let m = s.ambient();
        assert!(m > 0 && i <= m, "face index {i} out of range in dimension {m}");
        let mut seq = surj::seq_from_mask(s.mask, m);
        seq.remove(i);
        match surj::missing(&seq, s.dim) {
            None => Simplex { mask: surj::mask_from_seq(&seq), ..s },
            Some(u) => {
                surj::close_gap(&mut seq, u);
                let f = self.face(s.dim as usize, s.cell, u as usize);
                let w = surj::seq_from_mask(f.mask, s.dim as usize - 1);
                Simplex { dim: f.dim, cell: f.cell, mask: surj::mask_from_seq(&surj::compose(&w, &seq)) }
            }
        }
    }

    /// `s_i` of an arbitrary normalized simplex.
    pub fn degeneracy_of(&self, s: Simplex, i: usize) -> Simplex {
        assert!(i <= s.ambient());
        Simplex { mask: surj::degenerate_mask(s.mask, i), ..s }
    }

    /// Checks `d_i d_j = d_{j−1} d_i` for `i < j` on every stored cell, and
    /// that the basepoint is a vertex.
    pub fn check_identities(&self) -> Result<()> {
        for d in 2..self.counts.len() {
            let bad = (0..self.counts[d] as u32).into_par_iter().find_map_any(|c| {
                let x = Simplex::nondegenerate(d, c);
                for j in 1..=d {
                    let dj = self.face_of(x, j);
                    for i in 0..j {
                        let lhs = self.face_of(dj, i);
                        let rhs = self.face_of(self.face_of(x, i), j - 1);
                        if lhs != rhs {
                            return Some(format!(
                                "cell {c} in dimension {d}: d_{i}d_{j} = {lhs:?} but d_{}d_{i} = {rhs:?}",
                                j - 1
                            ));
                        }
                    }
                }
                None
            });
            if let Some(msg) = bad {
                return Err(Error::SimplicialIdentity(msg));
            }
        }
        Ok(())
    }

    /// Normalized chains: one generator per nondegenerate cell, degenerate
    /// faces dropped. Reduced chains of a pointed set drop the basepoint;
    /// reduced chains of an unpointed set are augmented.
    pub fn normalized_chains(&self, reduced: bool) -> Result<ChainComplex> {
        let drop_base = reduced && self.basepoint.is_some();
        let augment = reduced && self.basepoint.is_none();
        let gen_id = |s: &Simplex| -> Option<u32> {
            if s.mask != 0 {
                return None;
            }
            match self.basepoint {
                Some(b) if drop_base && s.dim == 0 => match s.cell.cmp(&b) {
                    std::cmp::Ordering::Less => Some(s.cell),
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Greater => Some(s.cell - 1),
                },
                _ => Some(s.cell),
            }
        };
        let mut ranks = vec![usize::from(augment)];
        for (d, &n) in self.counts.iter().enumerate() {
            ranks.push(if d == 0 && drop_base { n - 1 } else { n });
        }
        let mut boundaries = vec![SparseMatrix::zero(0, ranks[0])];
        for d in 0..self.counts.len() {
            let cols: Vec<Vec<(u32, i64)>> = (0..self.counts[d] as u32)
                .into_par_iter()
                .filter(|&c| !(d == 0 && drop_base && Some(c) == self.basepoint))
                .map(|c| {
                    if d == 0 {
                        return if augment { vec![(0, 1)] } else { vec![] };
                    }
                    self.faces_of(d, c)
                        .iter()
                        .enumerate()
                        .filter_map(|(i, f)| {
                            gen_id(f).map(|r| (r, if i % 2 == 0 { 1 } else { -1 }))
                        })
                        .collect()
                })
                .collect();
            boundaries.push(SparseMatrix::new(ranks[d], cols));
        }
        let trunc = self.truncation.map(|t| t as isize);
        ChainComplex::new(ranks, boundaries, reduced, trunc)
    }

    /// Keeps the marked cells. Fails if they are not closed under faces.
    /// Returns the subobject and, per dimension, the old id of each new cell.
    pub fn restrict(&self, keep: &[Vec<bool>]) -> Result<(SSet, Vec<Vec<u32>>)> {
        let (old_ids, new_ids) = self.renumber(keep);
        let mut faces = vec![vec![]];
        for d in 1..self.counts.len() {
            let mut table = Vec::with_capacity(old_ids[d].len() * (d + 1));
            for &c in &old_ids[d] {
                for &f in self.faces_of(d, c) {
                    let Some(nc) = new_ids[f.dim as usize][f.cell as usize] else {
                        return Err(Error::NotASubobject(format!(
                            "face of cell {c} in dimension {d} is not kept"
                        )));
                    };
                    table.push(Simplex { cell: nc, ..f });
                }
            }
            faces.push(table);
        }
        let counts = old_ids.iter().map(Vec::len).collect();
        let basepoint = match self.basepoint {
            Some(b) => Some(new_ids[0][b as usize].ok_or_else(|| {
                Error::NotASubobject("subobject misses the basepoint".into())
            })?),
            None => None,
        };
        let sub = SSet::new_unchecked(counts, faces, basepoint, self.truncation)?;
        Ok((sub, old_ids))
    }

    fn renumber(&self, keep: &[Vec<bool>]) -> (Vec<Vec<u32>>, Vec<Vec<Option<u32>>>) {
        let mut old_ids = Vec::new();
        let mut new_ids = Vec::new();
        for d in 0..self.counts.len() {
            let flags = keep.get(d);
            let mut olds = Vec::new();
            let mut news = vec![None; self.counts[d]];
            for c in 0..self.counts[d] {
                if flags.is_some_and(|f| f[c]) {
                    news[c] = Some(olds.len() as u32);
                    olds.push(c as u32);
                }
            }
            old_ids.push(olds);
            new_ids.push(news);
        }
        (old_ids, new_ids)
    }

    /// Whether the marked cells are closed under faces.
    pub fn is_subobject(&self, marked: &[Vec<bool>]) -> bool {
        (1..self.counts.len()).all(|d| {
            (0..self.counts[d]).all(|c| {
                !marked[d][c]
                    || self.faces_of(d, c as u32).iter().all(|f| marked[f.dim as usize][f.cell as usize])
            })
        })
    }

    /// `X / A`: the marked subobject is collapsed to the new basepoint. The
    /// first vertex of `A` represents the collapsed class; when `A` is empty
    /// a disjoint basepoint is appended.
    pub fn quotient(&self, a: &[Vec<bool>]) -> Result<SSet> {
        if !self.is_subobject(a) {
            return Err(Error::NotASubobject("collapsed cells are not closed under faces".into()));
        }
        let keep: Vec<Vec<bool>> = (0..self.counts.len())
            .map(|d| (0..self.counts[d]).map(|c| !a[d][c]).collect())
            .collect();
        let (mut old_ids, mut new_ids) = self.renumber(&keep);
        let rep = (0..self.counts[0]).find(|&c| a[0][c]);
        let base = match rep {
            Some(r) => {
                let pos = old_ids[0].partition_point(|&c| (c as usize) < r);
                old_ids[0].insert(pos, r as u32);
                for (c, slot) in new_ids[0].iter_mut().enumerate() {
                    *slot = if a[0][c] {
                        Some(pos as u32)
                    } else {
                        slot.map(|n| if n as usize >= pos { n + 1 } else { n })
                    };
                }
                pos as u32
            }
            None => old_ids[0].len() as u32,
        };
        let mut faces = vec![vec![]];
        for d in 1..self.counts.len() {
            let mut table = Vec::with_capacity(old_ids[d].len() * (d + 1));
            for &c in &old_ids[d] {
                for &f in self.faces_of(d, c) {
                    if a[f.dim as usize][f.cell as usize] {
                        table.push(Simplex { dim: 0, cell: base, mask: (1u32 << (d - 1)) - 1 });
                    } else {
                        let nc = new_ids[f.dim as usize][f.cell as usize].expect("kept");
                        table.push(Simplex { cell: nc, ..f });
                    }
                }
            }
            faces.push(table);
        }
        let mut counts: Vec<usize> = old_ids.iter().map(Vec::len).collect();
        if rep.is_none() {
            counts[0] += 1;
        }
        SSet::new_unchecked(counts, faces, Some(base), self.truncation)
    }

    /// Marks every cell of the subobject generated by the given cells.
    pub fn closure(&self, seeds: &[(usize, u32)]) -> Vec<Vec<bool>> {
        let mut marked: Vec<Vec<bool>> = self.counts.iter().map(|&n| vec![false; n]).collect();
        let mut stack: Vec<(usize, u32)> = seeds.to_vec();
        while let Some((d, c)) = stack.pop() {
            if std::mem::replace(&mut marked[d][c as usize], true) {
                continue;
            }
            if d > 0 {
                stack.extend(self.faces_of(d, c).iter().map(|f| (f.dim as usize, f.cell)));
            }
        }
        marked
    }

    pub fn to_json(&self) -> Value {
        let dims: Vec<Value> = (0..self.counts.len())
            .map(|d| {
                let cells: Vec<usize> = (0..self.counts[d]).collect();
                let mut faces = BTreeMap::new();
                if d > 0 {
                    for c in 0..self.counts[d] {
                        let fs: Vec<Value> = self
                            .faces_of(d, c as u32)
                            .iter()
                            .map(|f| json!([f.cell, surj::word(f.mask)]))
                            .collect();
                        faces.insert(c.to_string(), Value::Array(fs));
                    }
                }
                json!({"cells": cells, "faces": faces})
            })
            .collect();
        json!({"dims": dims, "basepoint": self.basepoint, "truncation": self.truncation})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(format!("simplicial set JSON: {m}"));
        let dims = value.get("dims").and_then(Value::as_array).ok_or_else(|| bad("missing dims"))?;
        let mut counts = Vec::new();
        let mut faces = Vec::new();
        for (d, entry) in dims.iter().enumerate() {
            let cells = entry.get("cells").and_then(Value::as_array).ok_or_else(|| bad("cells"))?;
            for (i, c) in cells.iter().enumerate() {
                if c.as_u64() != Some(i as u64) {
                    return Err(bad("cell ids must be 0, 1, 2, ... in each dimension"));
                }
            }
            counts.push(cells.len());
            let mut table = Vec::new();
            if d > 0 {
                let fmap = entry.get("faces").and_then(Value::as_object).ok_or_else(|| bad("faces"))?;
                for c in 0..cells.len() {
                    let list = fmap
                        .get(&c.to_string())
                        .and_then(Value::as_array)
                        .filter(|l| l.len() == d + 1)
                        .ok_or_else(|| bad("each cell needs d+1 faces"))?;
                    for f in list {
                        let pair = f.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("face"))?;
                        let target = pair[0].as_u64().ok_or_else(|| bad("face target"))? as u32;
                        let word: Vec<u64> = pair[1]
                            .as_array()
                            .ok_or_else(|| bad("degeneracy word"))?
                            .iter()
                            .map(|v| v.as_u64().ok_or_else(|| bad("degeneracy index")))
                            .collect::<Result<_>>()?;
                        if word.windows(2).any(|w| w[0] <= w[1]) || word.iter().any(|&j| j as usize >= d - 1) {
                            return Err(bad("degeneracy words must be strictly decreasing and in range"));
                        }
                        if word.len() > d - 1 {
                            return Err(bad("degeneracy word too long"));
                        }
                        let mask = word.iter().fold(0u32, |m, &j| m | 1 << j);
                        table.push(Simplex { dim: (d - 1 - word.len()) as u32, cell: target, mask });
                    }
                }
            }
            faces.push(table);
        }
        let basepoint = match value.get("basepoint") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| bad("basepoint"))? as u32),
        };
        let truncation = match value.get("truncation") {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| bad("truncation"))? as usize),
        };
        if counts.is_empty() {
            return Ok(Self::empty());
        }
        Self::new(counts, faces, basepoint, truncation)
    }
}
