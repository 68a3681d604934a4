//! Joins of simplicial sets and the pointed join `X ⋆ Y = (X * Y)/(X * y₀)`.

use super::{SSet, Simplex};
use crate::error::{Error, Result};
use crate::SimplicialComplex;

struct Layout {
    nx: Vec<usize>,
    ny: Vec<usize>,
    /// `pair_offset[m][i]`: first id of the `X_i × Y_{m−1−i}` block in dimension `m`.
    pair_offset: Vec<Vec<usize>>,
    counts: Vec<usize>,
}

impl Layout {
    fn new(x: &SSet, y: &SSet) -> Self {
        let top = x.top_dim() + y.top_dim() + 1;
        let nx: Vec<usize> = (0..=top).map(|d| x.count(d)).collect();
        let ny: Vec<usize> = (0..=top).map(|d| y.count(d)).collect();
        let mut pair_offset = Vec::with_capacity(top + 1);
        let mut counts = Vec::with_capacity(top + 1);
        for m in 0..=top {
            let mut off = nx[m] + ny[m];
            let mut row = Vec::with_capacity(m);
            for i in 0..m {
                row.push(off);
                off += nx[i] * ny[m - 1 - i];
            }
            pair_offset.push(row);
            counts.push(off);
        }
        Self { nx, ny, pair_offset, counts }
    }

    fn left(&self, s: Simplex) -> Simplex {
        s
    }

    fn right(&self, s: Simplex) -> Simplex {
        Simplex { cell: (self.nx[s.dim as usize] as u32) + s.cell, ..s }
    }

    fn pair(&self, a: Simplex, b: Simplex) -> Simplex {
        let (i, j) = (a.dim as usize, b.dim as usize);
        let m = i + j + 1;
        let id = self.pair_offset[m][i] + a.cell as usize * self.ny[j] + b.cell as usize;
        let mask = a.mask | b.mask << (a.ambient() + 1);
        Simplex { dim: m as u32, cell: id as u32, mask }
    }
}

/// `X * Y`. Cells of dimension `m` are listed as `X_m`, then `Y_m`, then
/// the blocks `X_i × Y_{m−1−i}` by increasing `i`. The basepoint is that of
/// `X`, else that of `Y`, if any.
pub fn join_sset(x: &SSet, y: &SSet) -> SSet {
    let lay = Layout::new(x, y);
    let mut faces = vec![vec![]];
    for m in 1..lay.counts.len() {
        let mut table = Vec::with_capacity(lay.counts[m] * (m + 1));
        for c in 0..lay.nx[m] as u32 {
            table.extend(x.faces_of(m, c).iter().map(|&f| lay.left(f)));
        }
        for c in 0..lay.ny[m] as u32 {
            table.extend(y.faces_of(m, c).iter().map(|&f| lay.right(f)));
        }
        for i in 0..m {
            let j = m - 1 - i;
            for a in 0..lay.nx[i] as u32 {
                for b in 0..lay.ny[j] as u32 {
                    let (sa, sb) = (Simplex::nondegenerate(i, a), Simplex::nondegenerate(j, b));
                    for k in 0..=m {
                        let f = if k <= i {
                            if i == 0 {
                                lay.right(sb)
                            } else {
                                lay.pair(x.face(i, a, k), sb)
                            }
                        } else if j == 0 {
                            lay.left(sa)
                        } else {
                            lay.pair(sa, y.face(j, b, k - i - 1))
                        };
                        table.push(f);
                    }
                }
            }
        }
        faces.push(table);
    }
    let basepoint = x.basepoint().or(y.basepoint().map(|b| lay.right(Simplex::nondegenerate(0, b)).cell));
    SSet::new_unchecked(lay.counts, faces, basepoint, None).expect("join data is well formed")
}

/// `X * pt`, pointed at the basepoint of `X`.
pub fn cone(x: &SSet) -> SSet {
    let pt = SSet::point().with_basepoint(None).expect("valid");
    join_sset(x, &pt)
}

/// `X ⋆ Y` for an unpointed complex `X` and a pointed `Y`.
pub fn star_join(x: &SimplicialComplex, y: &SSet) -> Result<SSet> {
    let y0 = y
        .basepoint()
        .ok_or_else(|| Error::InvalidInput("second factor of ⋆ must be pointed".into()))?;
    let xs = SSet::from_complex(x);
    let lay = Layout::new(&xs, y);
    let j = join_sset(&xs, y);
    let mut collapse: Vec<Vec<bool>> = j.counts().iter().map(|&n| vec![false; n]).collect();
    for (m, row) in collapse.iter_mut().enumerate() {
        row[..lay.nx[m]].iter_mut().for_each(|f| *f = true);
        if m == 0 {
            row[lay.right(Simplex::nondegenerate(0, y0)).cell as usize] = true;
        } else {
            for a in 0..lay.nx[m - 1] as u32 {
                let p = lay.pair(Simplex::nondegenerate(m - 1, a), Simplex::nondegenerate(0, y0));
                row[p.cell as usize] = true;
            }
        }
    }
    j.quotient(&collapse)
}

/// `Σ′K = S⁰ ⋆ K`; `S⁰` when `K` is empty.
pub fn suspension_prime(k: &SimplicialComplex) -> SSet {
    star_join(k, &super::sphere_zero()).expect("S⁰ is pointed")
}
