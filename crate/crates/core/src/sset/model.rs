//! Simplicial sets given by a combinatorial model of their simplices.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;

use super::{SSet, Simplex};
use crate::error::{Error, Result};

pub trait SimplicialModel: Sync {
    type Simplex: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    /// Nondegenerate `m`-simplices, including the basepoint when `m = 0`.
    fn nondegenerate(&self, m: usize) -> Vec<Self::Simplex>;

    /// `d_i` of an `m`-simplex, not necessarily normalized.
    fn face(&self, x: &Self::Simplex, m: usize, i: usize) -> Self::Simplex;

    /// Writes an `m`-simplex as `s_mask(y)` with `y` nondegenerate.
    fn normalize(&self, x: &Self::Simplex, m: usize) -> (Self::Simplex, u32);

    fn basepoint(&self) -> Option<Self::Simplex>;

    /// No nondegenerate simplices exist above this dimension.
    fn dimension_bound(&self) -> Option<usize> {
        None
    }
}

/// An explicit simplicial set together with the model simplex behind each cell.
#[derive(Debug, Clone)]
pub struct BuiltSSet<S> {
    pub sset: SSet,
    pub cells: Vec<Vec<S>>,
    index: Vec<HashMap<S, u32>>,
}

impl<S: Clone + Eq + Hash + Ord + Debug + Send + Sync> BuiltSSet<S> {
    /// Builds through dimension `D + 1` for truncation `D`, or completely
    /// when the model's dimension bound is reached.
    pub fn build<M>(model: &M, truncation: Option<usize>) -> Result<Self>
    where
        M: SimplicialModel<Simplex = S>,
    {
        let bound = model.dimension_bound();
        let (top, trunc) = match (truncation, bound) {
            (Some(d), Some(b)) if b <= d + 1 => (b, None),
            (Some(d), _) => (d + 1, Some(d)),
            (None, Some(b)) => (b, None),
            (None, None) => {
                return Err(Error::InvalidInput(
                    "model has no dimension bound; a truncation degree is required".into(),
                ))
            }
        };
        let mut cells: Vec<Vec<S>> = (0..=top)
            .into_par_iter()
            .map(|m| {
                let mut v = model.nondegenerate(m);
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        if trunc.is_none() {
            while cells.len() > 1 && cells.last().is_some_and(Vec::is_empty) {
                cells.pop();
            }
        }
        let index: Vec<HashMap<S, u32>> = cells
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
            .collect();
        let mut faces = vec![vec![]];
        for m in 1..cells.len() {
            let table: Result<Vec<Vec<Simplex>>> = cells[m]
                .par_iter()
                .map(|x| {
                    (0..=m)
                        .map(|i| {
                            let (y, mask) = model.normalize(&model.face(x, m, i), m - 1);
                            let d = m - 1 - mask.count_ones() as usize;
                            let cell = index[d].get(&y).copied().ok_or_else(|| {
                                Error::SimplicialIdentity(format!(
                                    "d_{i} of {x:?} normalizes to {y:?}, which is not a \
                                     nondegenerate {d}-simplex of the model"
                                ))
                            })?;
                            Ok(Simplex { dim: d as u32, cell, mask })
                        })
                        .collect()
                })
                .collect();
            faces.push(table?.into_iter().flatten().collect());
        }
        let basepoint = match model.basepoint() {
            Some(b) => Some(index[0].get(&b).copied().ok_or_else(|| {
                Error::InvalidInput("model basepoint is not among its vertices".into())
            })?),
            None => None,
        };
        let counts = cells.iter().map(Vec::len).collect();
        let sset = SSet::new(counts, faces, basepoint, trunc)?;
        Ok(Self { sset, cells, index })
    }

    pub fn lookup(&self, dim: usize, s: &S) -> Option<u32> {
        self.index.get(dim)?.get(s).copied()
    }

    pub fn cell(&self, dim: usize, c: u32) -> &S {
        &self.cells[dim][c as usize]
    }

    /// The explicit simplex for a model `m`-simplex.
    pub fn simplex_of<M>(&self, model: &M, x: &S, m: usize) -> Option<Simplex>
    where
        M: SimplicialModel<Simplex = S>,
    {
        let (y, mask) = model.normalize(x, m);
        let d = m - mask.count_ones() as usize;
        self.lookup(d, &y).map(|cell| Simplex { dim: d as u32, cell, mask })
    }
}
