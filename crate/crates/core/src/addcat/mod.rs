//! Convenient addition categories at desk scale: finite sets with injections
//! and vector spaces over `F_q`, plus an ordered monoid that violates CA3.
//!
//! Each instance is flattened into a [`SubobjectStructure`]: the canonical
//! subobjects of a fixed ambient object `A` together with containment, ranks,
//! the partial sum `⊞`, lattice meets and joins, and the `Aut(A)` action.

mod aut;
pub mod vect;

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::BitRow;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::poset::Poset;

pub use aut::{AutElement, AutGroup};
pub use vect::Subspace;

/// Largest subobject count for which the pairwise tables are built.
pub const TABLE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Instance {
    /// Pointed finite sets and injections; `A` has `n` elements.
    FinSet { n: usize },
    /// `F_q^n` with injective linear maps.
    Vect { n: usize, q: u32 },
    /// `Z≥0` as a poset under addition, ambient object `m`.
    Naturals { m: usize },
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::FinSet { n } => write!(f, "finset(n={n})"),
            Instance::Vect { n, q } => write!(f, "vect(n={n},q={q})"),
            Instance::Naturals { m } => write!(f, "naturals(m={m})"),
        }
    }
}

impl Instance {
    pub fn rank_of_ambient(&self) -> usize {
        match *self {
            Instance::FinSet { n } | Instance::Vect { n, .. } => n,
            Instance::Naturals { m } => m,
        }
    }

    fn check_size(&self) -> Result<()> {
        let count: f64 = match *self {
            Instance::FinSet { n } => 2f64.powi(n as i32),
            Instance::Vect { n, q } => (q as f64).powi(n as i32),
            Instance::Naturals { m } => m as f64 + 1.0,
        };
        let limit = match self {
            Instance::Vect { .. } => 1e6,
            _ => 65536.0,
        };
        if count > limit {
            return Err(Error::ResourceCap(format!("{self} is beyond enumeration caps")));
        }
        Ok(())
    }
}

/// Canonical labels of all subobjects of `A`, sorted.
pub fn enumerate_sub(inst: Instance) -> Result<Vec<String>> {
    inst.check_size()?;
    let mut labels: Vec<String> = match inst {
        Instance::FinSet { n } => (0u32..1 << n).map(|m| finset_label(m, n)).collect(),
        Instance::Vect { n, q } => {
            let f = FiniteField::new(q)?;
            vect::all_subspaces(&f, n).iter().map(Subspace::label).collect()
        }
        Instance::Naturals { m } => (0..=m).map(|k| format!("z{k}")).collect(),
    };
    labels.sort();
    Ok(labels)
}

fn finset_label(mask: u32, n: usize) -> String {
    let parts: Vec<String> =
        (0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("s{{{}}}", parts.join(","))
}

/// The subobject lattice of `A` with `⊞` and the automorphism action.
#[derive(Debug, Clone)]
pub struct SubobjectStructure {
    instance: Instance,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    ranks: Vec<usize>,
    leq: Vec<BitRow>,
    meet: Vec<Vec<u32>>,
    join: Vec<Vec<u32>>,
    plus: Vec<Vec<Option<u32>>>,
    zero: usize,
    top: usize,
    /// Hom-sets have at most one element, so CA2 holds trivially.
    thin: bool,
    aut: AutGroup,
    subspaces: Option<Vec<Subspace>>,
}

impl SubobjectStructure {
    pub fn new(inst: Instance) -> Result<Self> {
        inst.check_size()?;
        match inst {
            Instance::FinSet { n } => Self::finset(n),
            Instance::Vect { n, q } => Self::vect(n, q),
            Instance::Naturals { m } => Self::naturals(m),
        }
    }

    fn finset(n: usize) -> Result<Self> {
        if 1usize << n > TABLE_CAP {
            return Err(Error::ResourceCap(format!("2^{n} subsets exceed the table cap")));
        }
        let mut masks: Vec<u32> = (0u32..1 << n).collect();
        masks.sort_by_key(|&m| finset_label(m, n));
        let labels: Vec<String> = masks.iter().map(|&m| finset_label(m, n)).collect();
        let mut pos = vec![0u32; 1 << n];
        for (i, &m) in masks.iter().enumerate() {
            pos[m as usize] = i as u32;
        }
        let len = masks.len();
        let ranks = masks.iter().map(|m| m.count_ones() as usize).collect();
        let leq = masks
            .iter()
            .map(|&a| {
                let mut row = BitRow::new(len);
                for (j, &b) in masks.iter().enumerate() {
                    if a & !b == 0 {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        let table = |op: fn(u32, u32) -> u32| -> Vec<Vec<u32>> {
            masks.iter().map(|&a| masks.iter().map(|&b| pos[op(a, b) as usize]).collect()).collect()
        };
        let meet = table(|a, b| a & b);
        let join = table(|a, b| a | b);
        let plus = masks
            .iter()
            .map(|&a| {
                masks.iter().map(|&b| (a & b == 0).then(|| pos[(a | b) as usize])).collect()
            })
            .collect();
        let gens = aut::symmetric_generators(n);
        let actions = gens
            .iter()
            .map(|g| {
                let AutElement::Perm(p) = g else { unreachable!() };
                masks
                    .iter()
                    .map(|&m| {
                        let img = (0..n).filter(|&i| m >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << p[i]);
                        pos[img as usize]
                    })
                    .collect()
            })
            .collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(Self {
            instance: Instance::FinSet { n },
            labels,
            index,
            ranks,
            leq,
            meet,
            join,
            plus,
            zero: pos[0] as usize,
            top: pos[(1usize << n) - 1] as usize,
            thin: false,
            aut: AutGroup { generators: gens, actions, field: None },
            subspaces: None,
        })
    }

    fn vect(n: usize, q: u32) -> Result<Self> {
        let f = FiniteField::new(q)?;
        let mut subs = vect::all_subspaces(&f, n);
        if subs.len() > TABLE_CAP {
            return Err(Error::ResourceCap(format!(
                "{} subspaces of F_{q}^{n} exceed the table cap",
                subs.len()
            )));
        }
        subs.sort_by_key(Subspace::label);
        let labels: Vec<String> = subs.iter().map(Subspace::label).collect();
        let len = subs.len();
        let universe = (q as usize).pow(n as u32);
        let members: Vec<BitRow> = subs
            .iter()
            .map(|s| {
                let mut row = BitRow::new(universe);
                for v in vect::members(&f, s) {
                    row.set(v);
                }
                row
            })
            .collect();
        let by_members: HashMap<&BitRow, u32> =
            members.iter().enumerate().map(|(i, m)| (m, i as u32)).collect();
        let index: HashMap<String, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let lookup = |s: &Subspace| index[&s.label()] as u32;
        let ranks = subs.iter().map(Subspace::rank).collect();
        let leq = members
            .iter()
            .map(|a| {
                let mut row = BitRow::new(len);
                for (j, b) in members.iter().enumerate() {
                    if a.is_subset(b) {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        let meet: Vec<Vec<u32>> = members
            .iter()
            .map(|a| {
                members
                    .iter()
                    .map(|b| {
                        let mut c = a.clone();
                        c.intersect_with(b);
                        by_members[&c]
                    })
                    .collect()
            })
            .collect();
        let join: Vec<Vec<u32>> = subs
            .iter()
            .map(|a| {
                subs.iter()
                    .map(|b| {
                        let mut rows = a.rows.clone();
                        rows.extend(b.rows.iter().cloned());
                        lookup(&vect::span(&f, n, rows))
                    })
                    .collect()
            })
            .collect();
        let zero = index[&vect::span(&f, n, vec![]).label()];
        let plus = (0..len)
            .map(|i| (0..len).map(|j| (meet[i][j] as usize == zero).then_some(join[i][j])).collect())
            .collect();
        let gens = aut::gl_generators(&f, n);
        let actions = gens
            .iter()
            .map(|g| {
                let AutElement::Matrix(m) = g else { unreachable!() };
                subs.iter().map(|s| lookup(&vect::image(&f, s, m))).collect()
            })
            .collect();
        let top = index[&vect::span(
            &f,
            n,
            (0..n).map(|i| (0..n).map(|j| (i == j) as u8).collect()).collect(),
        )
        .label()];
        Ok(Self {
            instance: Instance::Vect { n, q },
            labels,
            index,
            ranks,
            leq,
            meet,
            join,
            plus,
            zero,
            top,
            thin: false,
            aut: AutGroup { generators: gens, actions, field: Some(f) },
            subspaces: Some(subs),
        })
    }

    fn naturals(m: usize) -> Result<Self> {
        let mut values: Vec<usize> = (0..=m).collect();
        values.sort_by_key(|k| format!("z{k}"));
        let labels: Vec<String> = values.iter().map(|k| format!("z{k}")).collect();
        let mut pos = vec![0u32; m + 1];
        for (i, &v) in values.iter().enumerate() {
            pos[v] = i as u32;
        }
        let len = values.len();
        let leq = values
            .iter()
            .map(|&a| {
                let mut row = BitRow::new(len);
                for (j, &b) in values.iter().enumerate() {
                    if a <= b {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        let meet = values.iter().map(|&a| values.iter().map(|&b| pos[a.min(b)]).collect()).collect();
        let join = values.iter().map(|&a| values.iter().map(|&b| pos[a.max(b)]).collect()).collect();
        let plus = values
            .iter()
            .map(|&a| values.iter().map(|&b| (a + b <= m).then(|| pos[a + b])).collect())
            .collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(Self {
            instance: Instance::Naturals { m },
            labels,
            index,
            ranks: values.clone(),
            leq,
            meet,
            join,
            plus,
            zero: pos[0] as usize,
            top: pos[m] as usize,
            thin: true,
            aut: AutGroup { generators: vec![], actions: vec![], field: None },
            subspaces: None,
        })
    }

    pub fn instance(&self) -> Instance {
        self.instance
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownElement(label.to_owned()))
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a].get(b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b] as usize
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b] as usize
    }

    /// `a ⊞ b`, or `None` where the partial sum is undefined.
    pub fn relplus(&self, a: usize, b: usize) -> Option<usize> {
        self.plus[a][b].map(|x| x as usize)
    }

    /// Iterated `⊞` of a family; `None` if some partial sum is undefined.
    pub fn relplus_all<I: IntoIterator<Item = usize>>(&self, parts: I) -> Option<usize> {
        parts.into_iter().try_fold(self.zero, |acc, x| self.relplus(acc, x))
    }

    pub fn nonzero(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| i != self.zero).collect()
    }

    pub fn aut(&self) -> &AutGroup {
        &self.aut
    }

    /// Image of subobject `x` under generator `g`.
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.aut.actions[g][x] as usize
    }

    pub fn subspace(&self, i: usize) -> Option<&Subspace> {
        self.subspaces.as_ref().map(|s| &s[i])
    }

    /// `Sub_A` ordered by containment.
    pub fn poset(&self) -> Poset {
        Poset::from_relation(self.labels.clone(), |a, b| self.leq(a, b))
            .expect("containment is a partial order")
    }

    /// Checks CA1–CA3 and rank additivity on all pairs, or on `budget` random
    /// pairs when there are more than that.
    pub fn check_axioms(&self, budget: usize, seed: u64) -> Result<AxiomAudit> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(self.zero, i) {
                return Err(self.violation("CA1", format!("0 is not below {}", self.labels[i])));
            }
            if i != self.zero && self.ranks[i] == 0 {
                return Err(self.violation("CA1", format!("{} has rank 0", self.labels[i])));
            }
        }
        let pairs: Vec<(usize, usize)> = if n * n <= budget {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..budget).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
        };
        for &(a, b) in &pairs {
            let Some(c) = self.relplus(a, b) else { continue };
            if self.relplus(b, a) != Some(c) {
                return Err(self.violation("⊞ commutativity", self.pair(a, b)));
            }
            if self.ranks[c] != self.ranks[a] + self.ranks[b] {
                return Err(self.violation("rank additivity", self.pair(a, b)));
            }
            if !self.thin && c != self.join(a, b) {
                return Err(self.violation("CA2", self.pair(a, b)));
            }
            if self.meet(a, b) != self.zero {
                return Err(self.violation("CA3", self.pair(a, b)));
            }
        }
        Ok(AxiomAudit { instance: self.instance.to_string(), pairs_checked: pairs.len() })
    }

    fn pair(&self, a: usize, b: usize) -> String {
        format!("B={}, B'={}", self.labels[a], self.labels[b])
    }

    fn violation(&self, axiom: &str, witness: String) -> Error {
        Error::AxiomViolation { axiom: axiom.to_owned(), witness: format!("{}: {witness}", self.instance) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomAudit {
    pub instance: String,
    pub pairs_checked: usize,
}
