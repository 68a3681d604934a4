//! Spheres, smash powers and fat diagonals.

use super::model::{BuiltSSet, SimplicialModel};
use super::{surj, SSet, Simplex};
use crate::error::{Error, Result};

/// Two vertices, the first one the basepoint.
pub fn sphere_zero() -> SSet {
    SSet::new(vec![2], vec![vec![]], Some(0), None).expect("valid")
}

/// `Δ[1]/∂Δ[1]`, whose `n`-simplices are `n + 1` points.
pub fn circle() -> SSet {
    let v = Simplex::nondegenerate(0, 0);
    SSet::new(vec![1, 1], vec![vec![], vec![v, v]], Some(0), None).expect("valid")
}

/// `S^k = (S¹)^{∧k}`.
pub fn sphere(k: usize) -> SSet {
    match k {
        0 => sphere_zero(),
        1 => circle(),
        _ => smash_power(&circle(), k, SmashMode::Ordinary, None).expect("finite").sset,
    }
}

/// `Δ[k]/∂Δ[k]`: the basepoint and a single `k`-cell.
pub fn minimal_sphere(k: usize) -> SSet {
    if k == 0 {
        return sphere_zero();
    }
    let mut counts = vec![0; k + 1];
    counts[0] = 1;
    counts[k] = 1;
    let mut faces = vec![vec![]; k + 1];
    faces[k] = vec![Simplex { dim: 0, cell: 0, mask: (1u32 << (k - 1)) - 1 }; k + 1];
    SSet::new(counts, faces, Some(0), None).expect("valid")
}

/// Every normalized `m`-simplex of `l`, degenerate ones included.
pub fn points(l: &SSet, m: usize) -> Vec<Simplex> {
    let mut out = Vec::new();
    for d in 0..=m.min(l.top_dim()) {
        for mask in surj::masks_with(m, m - d) {
            out.extend((0..l.count(d) as u32).map(|cell| Simplex { dim: d as u32, cell, mask }));
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmashMode {
    /// `L ∧ ⋯ ∧ L`.
    Ordinary,
    /// Tuples with a repeated coordinate are sent to the basepoint.
    Injective,
    /// The subobject of tuples with a repeated coordinate.
    FatDiagonal,
}

/// `L^{∧n}` in one of its variants. A simplex is a tuple of non-basepoint
/// simplices of `L` of one dimension; the empty tuple is the basepoint.
pub struct SmashPower<'a> {
    l: &'a SSet,
    n: usize,
    mode: SmashMode,
    points: Vec<Vec<Simplex>>,
}

impl<'a> SmashPower<'a> {
    pub fn new(l: &'a SSet, n: usize, mode: SmashMode, top: usize) -> Self {
        let points = (0..=top)
            .map(|m| points(l, m).into_iter().filter(|p| !l.is_base(p)).collect())
            .collect();
        Self { l, n, mode, points }
    }

    fn has_repeat(t: &[Simplex]) -> bool {
        (0..t.len()).any(|i| t[i + 1..].contains(&t[i]))
    }

    fn admissible(&self, t: &[Simplex]) -> bool {
        match self.mode {
            SmashMode::Ordinary => true,
            SmashMode::Injective => !Self::has_repeat(t),
            SmashMode::FatDiagonal => Self::has_repeat(t),
        }
    }

    fn extend(&self, m: usize, prefix: &mut Vec<Simplex>, acc: u32, out: &mut Vec<Vec<Simplex>>) {
        if prefix.len() == self.n {
            if acc == 0 && self.admissible(prefix) {
                out.push(prefix.clone());
            }
            return;
        }
        for p in &self.points[m] {
            if self.mode == SmashMode::Injective && prefix.contains(p) {
                continue;
            }
            prefix.push(*p);
            self.extend(m, prefix, acc & p.mask, out);
            prefix.pop();
        }
    }
}

impl SimplicialModel for SmashPower<'_> {
    type Simplex = Vec<Simplex>;

    fn nondegenerate(&self, m: usize) -> Vec<Vec<Simplex>> {
        let mut out = Vec::new();
        if m == 0 {
            out.push(vec![]);
        }
        if self.n > 0 && m < self.points.len() {
            self.extend(m, &mut Vec::with_capacity(self.n), (1u32 << m) - 1, &mut out);
        }
        out
    }

    fn face(&self, x: &Vec<Simplex>, _m: usize, i: usize) -> Vec<Simplex> {
        if x.is_empty() {
            return vec![];
        }
        let t: Vec<Simplex> = x.iter().map(|&p| self.l.face_of(p, i)).collect();
        if t.iter().any(|p| self.l.is_base(p)) || !self.admissible(&t) {
            return vec![];
        }
        t
    }

    fn normalize(&self, x: &Vec<Simplex>, m: usize) -> (Vec<Simplex>, u32) {
        let full = (1u32 << m) - 1;
        if x.is_empty() {
            return (vec![], full);
        }
        let common = x.iter().fold(full, |a, p| a & p.mask);
        let y = x.iter().map(|p| Simplex { mask: surj::compress(p.mask, common, m), ..*p }).collect();
        (y, common)
    }

    fn basepoint(&self) -> Option<Vec<Simplex>> {
        Some(vec![])
    }

    fn dimension_bound(&self) -> Option<usize> {
        if self.l.truncation().is_some() {
            None
        } else {
            Some(self.n * self.l.top_dim())
        }
    }
}

fn check_window(l: &SSet, n: usize, truncation: Option<usize>) -> Result<usize> {
    let need = match (truncation, l.truncation()) {
        (Some(d), _) => d + 1,
        (None, None) => n * l.top_dim(),
        (None, Some(_)) => {
            return Err(Error::TruncationExceeded(
                "a truncated factor needs a truncation degree for its smash power".into(),
            ))
        }
    };
    if let Some(t) = l.truncation() {
        if need > t + 1 {
            return Err(Error::TruncationExceeded(format!(
                "factor is valid through dimension {}, smash power needs {need}",
                t + 1
            )));
        }
    }
    if l.basepoint().is_none() {
        return Err(Error::InvalidInput("smash powers need a pointed factor".into()));
    }
    Ok(need)
}

/// `L^{∧n}` in the given variant, through dimension `D + 1` for truncation `D`.
pub fn smash_power(
    l: &SSet,
    n: usize,
    mode: SmashMode,
    truncation: Option<usize>,
) -> Result<BuiltSSet<Vec<Simplex>>> {
    let need = check_window(l, n, truncation)?;
    let model = SmashPower::new(l, n, mode, need);
    BuiltSSet::build(&model, truncation)
}

/// Pointed functions `T → L_m` that are constant at the basepoint or
/// injective, with `|T°| = n`.
pub fn smash_power_injective(
    l: &SSet,
    n: usize,
    truncation: Option<usize>,
) -> Result<BuiltSSet<Vec<Simplex>>> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one non-basepoint element".into()));
    }
    smash_power(l, n, SmashMode::Injective, truncation)
}

/// Tuples in `L^{∧n}` with some repeated coordinate.
pub fn fat_diagonal_model(l: &SSet, n: usize, truncation: Option<usize>) -> Result<BuiltSSet<Vec<Simplex>>> {
    smash_power(l, n, SmashMode::FatDiagonal, truncation)
}
