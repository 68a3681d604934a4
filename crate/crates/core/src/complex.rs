//! Abstract simplicial complexes given by labeled vertices and facets.
//!
//! The void complex (no simplices at all) and the complex `{∅}` whose only
//! simplex is empty are different values: the second has the reduced homology
//! of `S^{-1}`.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Debug)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// Sorted vertex-index lists, sorted lexicographically. `[[]]` is `{∅}`.
    facets: Vec<Vec<usize>>,
    simplices: OnceLock<Vec<Vec<Vec<usize>>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        let simplices = OnceLock::new();
        if let Some(s) = self.simplices.get() {
            let _ = simplices.set(s.clone());
        }
        Self { vertices: self.vertices.clone(), facets: self.facets.clone(), simplices }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

fn maximal_only(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for s in &mut sets {
        s.sort_unstable();
        s.dedup();
    }
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        let contained = kept
            .iter()
            .any(|k| s.iter().all(|v| k.binary_search(v).is_ok()));
        if !contained {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// The complex with no simplices.
    pub fn void() -> Self {
        Self { vertices: vec![], facets: vec![], simplices: OnceLock::new() }
    }

    /// The complex `{∅}`.
    pub fn empty_simplex() -> Self {
        Self { vertices: vec![], facets: vec![vec![]], simplices: OnceLock::new() }
    }

    /// Builds a complex from any generating family of simplices. Vertices are
    /// reordered canonically by label; every vertex must lie in some simplex.
    pub fn new(vertices: Vec<String>, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        for w in order.windows(2) {
            if vertices[w[0]] == vertices[w[1]] {
                return Err(Error::DuplicateLabel(vertices[w[0]].clone()));
            }
        }
        let mut rank = vec![0; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut used = vec![false; vertices.len()];
        let mut mapped = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut t = Vec::with_capacity(s.len());
            for v in s {
                let r = *rank
                    .get(v)
                    .ok_or_else(|| Error::UnknownElement(format!("vertex #{v}")))?;
                used[v] = true;
                t.push(r);
            }
            mapped.push(t);
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(Error::InvalidInput(format!(
                "vertex {} lies in no simplex",
                vertices[v]
            )));
        }
        let labels = order.iter().map(|&i| vertices[i].clone()).collect();
        Ok(Self { vertices: labels, facets: maximal_only(mapped), simplices: OnceLock::new() })
    }

    /// Trusted constructor for callers that already hold sorted labels and
    /// maximal sorted facets.
    pub(crate) fn from_sorted_parts(
        vertices: Vec<String>,
        mut facets: Vec<Vec<usize>>,
        simplices: Option<Vec<Vec<Vec<usize>>>>,
    ) -> Self {
        facets.sort();
        let cache = OnceLock::new();
        if let Some(s) = simplices {
            let _ = cache.set(s);
        }
        Self { vertices, facets, simplices: cache }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_simplex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    /// `None` for the void complex, `Some(-1)` for `{∅}`.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// Nonempty simplices grouped by dimension, each list sorted.
    pub fn simplices(&self) -> &[Vec<Vec<usize>>] {
        self.simplices.get_or_init(|| {
            let top = self.facets.iter().map(Vec::len).max().unwrap_or(0);
            let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); top];
            for f in &self.facets {
                let n = f.len();
                for mask in 1u64..(1u64 << n) {
                    let s: Vec<usize> =
                        (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                    by_dim[s.len() - 1].insert(s);
                }
            }
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
        })
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices().iter().map(Vec::len).collect()
    }

    /// Nerve of the face poset; the new vertex labels list the old ones.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        if self.is_void() {
            return Self::void();
        }
        if self.is_empty_simplex() {
            return Self::empty_simplex();
        }
        let all: Vec<Vec<usize>> = self.simplices().iter().flatten().cloned().collect();
        let labels: Vec<String> = all.iter().map(|s| self.simplex_label(s)).collect();
        let faces = Poset::from_relation(labels, |a, b| {
            all[a].iter().all(|v| all[b].binary_search(v).is_ok())
        })
        .expect("face poset is a partial order");
        faces.nerve()
    }

    pub fn simplex_label(&self, s: &[usize]) -> String {
        let parts: Vec<&str> = s.iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("[{}]", parts.join(" "))
    }

    /// Join: simplices are unions of a simplex of each side (either may be empty).
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut labels: Vec<String> = self.vertices.iter().map(|v| format!("0:{v}")).collect();
        labels.extend(other.vertices.iter().map(|v| format!("1:{v}")));
        let shift = self.vertices.len();
        let mut facets = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                let mut f = a.clone();
                f.extend(b.iter().map(|v| v + shift));
                facets.push(f);
            }
        }
        // prefixes keep the label order block-wise, so indices stay canonical
        Self::from_sorted_parts(labels, facets, None)
    }

    /// Renames vertices; the result is canonicalized again.
    pub fn relabel<F: Fn(&str) -> String>(&self, f: F) -> Result<SimplicialComplex> {
        if self.is_void() || self.is_empty_simplex() {
            return Ok(self.clone());
        }
        let labels = self.vertices.iter().map(|v| f(v)).collect();
        Self::new(labels, self.facets.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexJson {
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
        })
        .expect("complex json")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        if raw.facets.len() == 1 && raw.facets[0].is_empty() {
            return Ok(Self::empty_simplex());
        }
        Self::new(raw.vertices, raw.facets)
    }

    /// Looks up simplices by their vertex labels.
    pub fn vertex_index(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
    }
}
