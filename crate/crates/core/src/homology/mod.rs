//! Integer chain complexes and their homology over `Z`, `Q` and `F_p`.

pub mod modp;
pub mod snf;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub use modp::rank_mod_p;
pub use snf::{smith_certificate, smith_normal_form, verify_certificate, Certificate, SmithForm};

/// Column-major sparse integer matrix; row indices in each column are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, mut cols: Vec<Vec<(u32, i64)>>) -> Self {
        for c in &mut cols {
            c.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(c.len());
            for &(r, v) in c.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *c = merged;
        }
        Self { nrows, cols }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn from_dense(nrows: usize, ncols: usize, rows: &[Vec<i64>]) -> Self {
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i as u32, rows[i][j]))
                    .collect()
            })
            .collect();
        Self { nrows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols()]; self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(i, v) in c {
                out[i as usize][j] = v;
            }
        }
        out
    }

    /// Whether `self ∘ rhs` vanishes, computed exactly.
    pub fn composes_to_zero(&self, rhs: &SparseMatrix) -> bool {
        rhs.cols.par_iter().all(|col| {
            let mut acc: std::collections::HashMap<u32, i128> = std::collections::HashMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k as usize] {
                    *acc.entry(i).or_default() += a as i128 * b as i128;
                }
            }
            acc.values().all(|v| *v == 0)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coeff {
    Z,
    Q,
    Fp(u32),
}

impl Coeff {
    pub fn tag(&self) -> String {
        match self {
            Coeff::Z => "Z".into(),
            Coeff::Q => "Q".into(),
            Coeff::Fp(p) => format!("F{p}"),
        }
    }
}

impl std::str::FromStr for Coeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(Coeff::Z),
            "q" => Ok(Coeff::Q),
            other => {
                let p: u32 = other
                    .strip_prefix('f')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown coefficients `{s}`")))?;
                if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
                    return Err(Error::InvalidInput(format!("F{p} is not a prime field")));
                }
                Ok(Coeff::Fp(p))
            }
        }
    }
}

/// Free chain complex starting in degree −1.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    /// `ranks[i]` is the rank in degree `i − 1`.
    ranks: Vec<usize>,
    /// `boundaries[i]` maps degree `i − 1` to degree `i − 2`; entry 0 is empty.
    boundaries: Vec<SparseMatrix>,
    reduced: bool,
    /// Homology is exact through this degree; `None` when the complex is complete.
    truncated_at: Option<isize>,
}

impl ChainComplex {
    /// `ranks` and `boundaries` both start in degree −1 (`boundaries[0]`
    /// is ignored). `d ∘ d = 0` is checked.
    pub fn new(
        ranks: Vec<usize>,
        mut boundaries: Vec<SparseMatrix>,
        reduced: bool,
        truncated_at: Option<isize>,
    ) -> Result<Self> {
        if boundaries.len() != ranks.len() {
            return Err(Error::InvalidInput("one boundary matrix per degree expected".into()));
        }
        boundaries[0] = SparseMatrix::zero(0, ranks[0]);
        for i in 1..ranks.len() {
            let b = &boundaries[i];
            if b.nrows() != ranks[i - 1] || b.ncols() != ranks[i] {
                return Err(Error::InvalidInput(format!(
                    "boundary in degree {} has shape {}x{}, expected {}x{}",
                    i as isize - 1,
                    b.nrows(),
                    b.ncols(),
                    ranks[i - 1],
                    ranks[i]
                )));
            }
        }
        let cc = Self { ranks, boundaries, reduced, truncated_at };
        if let Some(d) = cc.first_dd_failure() {
            return Err(Error::AssertionFailure(format!("d∘d ≠ 0 in degree {d}")));
        }
        Ok(cc)
    }

    fn first_dd_failure(&self) -> Option<isize> {
        (2..self.ranks.len())
            .find(|&i| !self.boundaries[i - 1].composes_to_zero(&self.boundaries[i]))
            .map(|i| i as isize - 1)
    }

    pub fn dd_is_zero(&self) -> bool {
        self.first_dd_failure().is_none()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn truncated_at(&self) -> Option<isize> {
        self.truncated_at
    }

    /// Highest degree with a chain group slot.
    pub fn top_degree(&self) -> isize {
        self.ranks.len() as isize - 2
    }

    pub fn rank(&self, d: isize) -> usize {
        usize::try_from(d + 1).ok().and_then(|i| self.ranks.get(i)).copied().unwrap_or(0)
    }

    /// `∂_d : C_d → C_{d−1}` for `d ≥ 0`.
    pub fn boundary(&self, d: isize) -> Option<&SparseMatrix> {
        usize::try_from(d + 1).ok().filter(|&i| i > 0).and_then(|i| self.boundaries.get(i))
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.ranks.len())
            .map(|i| if i % 2 == 1 { self.ranks[i] as i64 } else { -(self.ranks[i] as i64) })
            .sum()
    }
}

/// Simplicial chains with vertices in canonical order and alternating signs.
pub fn chains_of_complex(k: &SimplicialComplex, reduced: bool) -> ChainComplex {
    let simplices = k.simplices();
    let mut ranks = vec![usize::from(reduced && !k.is_void())];
    ranks.extend(simplices.iter().map(Vec::len));
    let mut boundaries = vec![SparseMatrix::zero(0, ranks[0])];
    for (d, level) in simplices.iter().enumerate() {
        let cols: Vec<Vec<(u32, i64)>> = level
            .par_iter()
            .map(|s| {
                if d == 0 {
                    return if reduced { vec![(0, 1)] } else { vec![] };
                }
                (0..s.len())
                    .map(|i| {
                        let mut face = s.clone();
                        face.remove(i);
                        let row = simplices[d - 1].binary_search(&face).expect("face present");
                        (row as u32, if i % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        boundaries.push(SparseMatrix::new(ranks[d], cols));
    }
    ChainComplex::new(ranks, boundaries, reduced, None).expect("simplicial d∘d = 0")
}

/// Reduced integral homology of a complex.
pub fn complex_homology(k: &SimplicialComplex) -> Result<HomologyReport> {
    homology(&chains_of_complex(k, true), Coeff::Z)
}

/// Reduced integral homology of the order complex of a poset.
pub fn poset_homology(p: &crate::poset::Poset) -> Result<HomologyReport> {
    complex_homology(&p.nerve())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub deg: isize,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub reduced: bool,
    pub coeff: String,
    pub degrees: Vec<DegreeHomology>,
    /// Degrees up to here are exact; for complete complexes the top degree.
    pub trusted_through: isize,
    /// Whether the underlying chains were truncated.
    pub truncated: bool,
    pub euler_ok: bool,
}

impl HomologyReport {
    pub fn degree(&self, d: isize) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|x| x.deg == d)
    }

    pub fn betti(&self, d: isize) -> usize {
        self.degree(d).map_or(0, |x| x.rank)
    }

    pub fn torsion(&self, d: isize) -> &[u64] {
        self.degree(d).map_or(&[], |x| &x.torsion)
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(|x| x.rank == 0 && x.torsion.is_empty())
    }

    /// Nonzero degrees as `(deg, rank, torsion)`.
    pub fn nonzero(&self) -> Vec<(isize, usize, Vec<u64>)> {
        self.degrees
            .iter()
            .filter(|x| x.rank > 0 || !x.torsion.is_empty())
            .map(|x| (x.deg, x.rank, x.torsion.clone()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "reduced": self.reduced,
            "coeff": self.coeff,
            "degrees": self.degrees,
            "trusted_through": self.trusted_through,
            "euler_ok": self.euler_ok,
        })
    }
}

fn smith_all(c: &ChainComplex) -> Result<Vec<SmithForm>> {
    c.boundaries.par_iter().map(smith_normal_form).collect()
}

/// Homology of `c` with the given coefficients.
pub fn homology(c: &ChainComplex, coeff: Coeff) -> Result<HomologyReport> {
    let n = c.ranks.len();
    let (ranks, torsion): (Vec<usize>, Vec<Vec<u64>>) = match coeff {
        Coeff::Z | Coeff::Q => {
            let forms = smith_all(c)?;
            let ranks = forms.iter().map(|f| f.rank).collect();
            let torsion = (0..n)
                .map(|i| {
                    if coeff == Coeff::Q {
                        return Ok(vec![]);
                    }
                    forms.get(i + 1).map_or(Ok(vec![]), |f| {
                        f.others.iter().map(big_to_u64).collect::<Result<Vec<u64>>>()
                    })
                })
                .collect::<Result<_>>()?;
            (ranks, torsion)
        }
        Coeff::Fp(p) => (
            c.boundaries.par_iter().map(|b| rank_mod_p(b, p)).collect(),
            vec![vec![]; n],
        ),
    };
    let mut degrees = Vec::new();
    let mut betti_sum = 0i64;
    for i in 0..n {
        let incoming = ranks.get(i + 1).copied().unwrap_or(0);
        let b = c.ranks[i] - ranks[i] - incoming;
        betti_sum += if i % 2 == 1 { b as i64 } else { -(b as i64) };
        degrees.push(DegreeHomology { deg: i as isize - 1, rank: b, torsion: torsion[i].clone() });
    }
    let euler_ok = betti_sum == c.euler_characteristic();
    let top = c.top_degree();
    let trusted = c.truncated_at.map_or(top, |t| t.min(top));
    degrees.retain(|x| x.deg <= trusted && (x.deg >= 0 || x.rank > 0 || !x.torsion.is_empty()));
    Ok(HomologyReport {
        reduced: c.reduced,
        coeff: coeff.tag(),
        degrees,
        trusted_through: trusted,
        truncated: c.truncated_at.is_some(),
        euler_ok,
    })
}

fn big_to_u64(b: &BigInt) -> Result<u64> {
    b.to_u64().ok_or_else(|| Error::ResourceCap(format!("torsion coefficient {b} exceeds u64")))
}

/// Universal coefficients: `dim H_d(F_p) = b_d + #{t ∈ T_d : p | t} + #{t ∈ T_{d−1} : p | t}`.
pub fn uct_consistent(z: &HomologyReport, fp: &HomologyReport, p: u32) -> bool {
    let hits = |d: isize| z.torsion(d).iter().filter(|t| *t % p as u64 == 0).count();
    fp.degrees.iter().all(|x| x.rank == z.betti(x.deg) + hits(x.deg) + hits(x.deg - 1))
        && z.degrees.iter().all(|x| fp.degree(x.deg).is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Profile {
    Contractible,
    Wedge { dim: isize, count: usize },
    NotWedgeLike,
}

/// Homology-level wedge-of-spheres certificate: free and concentrated in one degree.
pub fn wedge_of_spheres_profile(r: &HomologyReport) -> Result<Profile> {
    if r.truncated {
        return Err(Error::Untrusted(format!(
            "homology only known through degree {}",
            r.trusted_through
        )));
    }
    let nz = r.nonzero();
    Ok(match nz.as_slice() {
        [] => Profile::Contractible,
        [(d, rank, t)] if t.is_empty() => Profile::Wedge { dim: *d, count: *rank },
        _ => Profile::NotWedgeLike,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Connectivity {
    /// All reduced homology vanishes.
    Infinite,
    /// Largest `c` with `H̃_i = 0` for all `i ≤ c`.
    Finite(isize),
    /// Vanishing through the trusted degree of a truncated report.
    AtLeast(isize),
}

pub fn homology_connectivity(r: &HomologyReport) -> Connectivity {
    match r.nonzero().first() {
        Some((d, _, _)) => Connectivity::Finite(d - 1),
        None if r.truncated => Connectivity::AtLeast(r.trusted_through),
        None => Connectivity::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(
            (0..n).map(|i| format!("{i}")).collect(),
            facets.iter().map(|f| f.to_vec()).collect(),
        )
        .unwrap()
    }

    fn rp2() -> SimplicialComplex {
        complex(
            6,
            &[
                &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 1, 5],
                &[1, 2, 4], &[2, 3, 5], &[1, 3, 4], &[2, 4, 5], &[1, 3, 5],
            ],
        )
    }

    #[test]
    fn triangle_boundary() {
        let k = complex(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let r = homology(&chains_of_complex(&k, true), Coeff::Z).unwrap();
        assert_eq!(r.nonzero(), vec![(1, 1, vec![])]);
        assert!(r.euler_ok);
    }

    #[test]
    fn point_and_empty_simplex() {
        let r = homology(&chains_of_complex(&complex(1, &[&[0]]), true), Coeff::Z).unwrap();
        assert!(r.is_zero());
        assert_eq!(homology_connectivity(&r), Connectivity::Infinite);
        let e = SimplicialComplex::empty_simplex();
        let r = homology(&chains_of_complex(&e, true), Coeff::Z).unwrap();
        assert_eq!(r.nonzero(), vec![(-1, 1, vec![])]);
        let v = SimplicialComplex::void();
        assert!(homology(&chains_of_complex(&v, true), Coeff::Z).unwrap().is_zero());
    }

    #[test]
    fn projective_plane_torsion() {
        let c = chains_of_complex(&rp2(), true);
        let r = homology(&c, Coeff::Z).unwrap();
        assert_eq!(r.nonzero(), vec![(1, 0, vec![2])]);
        assert_eq!(wedge_of_spheres_profile(&r).unwrap(), Profile::NotWedgeLike);
        let f2 = homology(&c, Coeff::Fp(2)).unwrap();
        assert_eq!(f2.betti(1), 1);
        assert_eq!(f2.betti(2), 1);
        assert!(uct_consistent(&r, &f2, 2));
        let f3 = homology(&c, Coeff::Fp(3)).unwrap();
        assert!(f3.is_zero());
        assert!(uct_consistent(&r, &f3, 3));
    }

    #[test]
    fn s0_connectivity() {
        let r = homology(&chains_of_complex(&complex(2, &[&[0], &[1]]), true), Coeff::Z).unwrap();
        assert_eq!(homology_connectivity(&r), Connectivity::Finite(-1));
        assert_eq!(wedge_of_spheres_profile(&r).unwrap(), Profile::Wedge { dim: 0, count: 1 });
    }

    #[test]
    fn coeff_parsing() {
        assert_eq!("f3".parse::<Coeff>().unwrap(), Coeff::Fp(3));
        assert!("f4".parse::<Coeff>().is_err());
    }
}
