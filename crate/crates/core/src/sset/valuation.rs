//! Poset-valued valuations on simplicial sets and their filtrations.

use serde::Serialize;

use super::{simplicial_replacement, SSet, Simplex};
use crate::error::{Error, Result};
use crate::homology::{homology, Coeff, HomologyReport};
use crate::poset::Poset;

/// A map from nondegenerate cells to `P_+`; `None` is the adjoined bottom
/// `+`. Degenerate simplices take the value of their nondegenerate core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    poset: Poset,
    values: Vec<Vec<Option<u32>>>,
}

fn below(p: &Poset, a: Option<u32>, b: Option<u32>) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => p.leq(a as usize, b as usize),
    }
}

impl Valuation {
    /// Audits face monotonicity and that only the basepoint maps to `+`.
    pub fn new(x: &SSet, poset: Poset, values: Vec<Vec<Option<u32>>>) -> Result<Self> {
        let nu = Self { poset, values };
        nu.audit(x)?;
        Ok(nu)
    }

    pub fn audit(&self, x: &SSet) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidValuation(m));
        if self.values.len() != x.counts().len()
            || self.values.iter().zip(x.counts()).any(|(v, &n)| v.len() != n)
        {
            return bad("one value per nondegenerate cell expected".into());
        }
        for (d, level) in self.values.iter().enumerate() {
            for (c, &v) in level.iter().enumerate() {
                let is_base = d == 0 && x.basepoint() == Some(c as u32);
                if v.is_none() != is_base {
                    return bad(format!("cell {c} in dimension {d}: only the basepoint maps to +"));
                }
                if v.is_some_and(|v| v as usize >= self.poset.len()) {
                    return bad(format!("cell {c} in dimension {d}: value out of range"));
                }
                if d == 0 {
                    continue;
                }
                for (i, f) in x.faces_of(d, c as u32).iter().enumerate() {
                    if !below(&self.poset, self.of(f), v) {
                        return bad(format!("cell {c} in dimension {d}: face {i} has larger value"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn value(&self, d: usize, c: u32) -> Option<u32> {
        self.values[d][c as usize]
    }

    pub fn of(&self, s: &Simplex) -> Option<u32> {
        self.value(s.dim as usize, s.cell)
    }

    pub fn values(&self) -> &[Vec<Option<u32>>] {
        &self.values
    }

    /// Cells of `F_pX` (or `F_{<p}X` when `strict`), basepoint included.
    pub fn level_cells(&self, p: usize, strict: bool) -> Vec<Vec<bool>> {
        self.values
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|v| match v {
                        None => true,
                        Some(v) => {
                            let v = *v as usize;
                            if strict {
                                self.poset.lt(v, p)
                            } else {
                                self.poset.leq(v, p)
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// `F_pX`, or `F_{<p}X` when `strict`, with the old id of each cell.
pub fn filtration_level(
    x: &SSet,
    nu: &Valuation,
    p: usize,
    strict: bool,
) -> Result<(SSet, Vec<Vec<u32>>)> {
    if p >= nu.poset.len() {
        return Err(Error::UnknownElement(format!("poset index {p}")));
    }
    x.restrict(&nu.level_cells(p, strict)).map_err(|e| match e {
        Error::NotASubobject(m) => Error::InvalidValuation(m),
        e => e,
    })
}

/// Homology of `X` against the diagonal of the replacement of `p ↦ F_pX`.
#[derive(Debug, Clone, Serialize)]
pub struct BlowupCheck {
    pub space: HomologyReport,
    pub diagonal: HomologyReport,
    pub diagonal_counts: Vec<usize>,
    #[serde(skip)]
    pub diagonal_sset: SSet,
    /// Degrees compared, trusted on both sides.
    pub compared_through: isize,
    pub matched: bool,
}

pub fn mv_blowup(x: &SSet, nu: &Valuation, truncation: Option<usize>) -> Result<BlowupCheck> {
    nu.audit(x)?;
    let levels: Vec<Vec<Vec<bool>>> = (0..nu.poset.len()).map(|p| nu.level_cells(p, false)).collect();
    let b = simplicial_replacement(&nu.poset, x, |p, d, c| levels[p][d][c as usize])?;
    let diag = b.diagonal(truncation.or(x.truncation()))?;
    let space = homology(&x.normalized_chains(true)?, Coeff::Z)?;
    let diagonal = homology(&diag.sset.normalized_chains(true)?, Coeff::Z)?;
    let through = space.trusted_through.min(diagonal.trusted_through);
    let matched = (0..=through).all(|d| {
        space.betti(d) == diagonal.betti(d) && space.torsion(d) == diagonal.torsion(d)
    });
    Ok(BlowupCheck {
        space,
        diagonal,
        diagonal_counts: diag.sset.counts().to_vec(),
        compared_through: through,
        matched,
        diagonal_sset: diag.sset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::sphere;

    #[test]
    fn valuation_on_circle() {
        let s1 = sphere(1);
        let p = Poset::from_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        let nu = Valuation::new(&s1, p.clone(), vec![vec![None], vec![Some(0)]]).unwrap();
        let (top, _) = filtration_level(&s1, &nu, 1, false).unwrap();
        assert_eq!(top, s1);
        let (strict, _) = filtration_level(&s1, &nu, 0, true).unwrap();
        assert_eq!(strict.counts(), &[1]);
        assert!(Valuation::new(&s1, p.clone(), vec![vec![Some(0)], vec![Some(0)]]).is_err());
        assert!(Valuation::new(&s1, p, vec![vec![None], vec![None]]).is_err());
    }

    #[test]
    fn face_monotonicity_is_audited() {
        // the edge of Δ[1] below one of its vertices
        let k = crate::SimplicialComplex::new(vec!["u".into(), "v".into(), "w".into()], vec![vec![0, 1], vec![2]])
            .unwrap();
        let x = SSet::from_complex(&k).with_basepoint(Some(2)).unwrap();
        let p = Poset::from_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        let err = Valuation::new(&x, p, vec![vec![Some(1), Some(0), None], vec![Some(0)]]).unwrap_err();
        assert!(matches!(err, Error::InvalidValuation(_)));
    }
}
