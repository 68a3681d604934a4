//! Finite posets with a dense `≤` relation, intervals, cosieves, chains and
//! order complexes.
//!
//! Elements are kept in canonical order: lexicographic on their labels. Every
//! index handed out by a [`Poset`] refers to that order. The adjoined bottom
//! element `+` used by valuations is not stored here; valuations encode it as
//! `None`.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::BitRow;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
}

#[derive(Debug)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// `up[i]` holds every `j` with `i ≤ j`.
    up: Vec<BitRow>,
    covers: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for Poset {
    fn clone(&self) -> Self {
        Self {
            labels: self.labels.clone(),
            index: self.index.clone(),
            up: self.up.clone(),
            covers: OnceLock::new(),
        }
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

/// A strictly increasing sequence of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(Vec<usize>);

impl Chain {
    pub fn new(poset: &Poset, elements: Vec<usize>) -> Result<Self> {
        for w in elements.windows(2) {
            if !poset.lt(w[0], w[1]) {
                return Err(Error::InvalidInput(format!(
                    "{} < {} does not hold",
                    poset.label(w[0]),
                    poset.label(w[1])
                )));
            }
        }
        Ok(Self(elements))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    /// Number of strict steps, `n` for `p_0 < ⋯ < p_n`.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    elements: Vec<String>,
    leq: Vec<[usize; 2]>,
}

fn canonical_order(labels: &[String]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    for w in order.windows(2) {
        if labels[w[0]] == labels[w[1]] {
            return Err(Error::DuplicateLabel(labels[w[0]].clone()));
        }
    }
    Ok(order)
}

impl Poset {
    pub fn empty() -> Self {
        Self { labels: vec![], index: HashMap::new(), up: vec![], covers: OnceLock::new() }
    }

    /// Builds the poset generated by `pairs` (each `(a, b)` meaning `a ≤ b`).
    pub fn from_pairs<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let order = canonical_order(&labels)?;
        let sorted: Vec<String> = order.iter().map(|&i| labels[i].clone()).collect();
        let index: HashMap<String, usize> =
            sorted.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let n = sorted.len();
        let mut succ = vec![Vec::new(); n];
        for (a, b) in pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_owned()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_owned()))?;
            if ia != ib {
                succ[ia].push(ib);
            }
        }
        // Kahn's algorithm; anything left over sits on a cycle.
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &j in s {
                indeg[j] += 1;
            }
        }
        let mut topo: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut head = 0;
        while head < topo.len() {
            let i = topo[head];
            head += 1;
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    topo.push(j);
                }
            }
        }
        if topo.len() < n {
            let stuck: Vec<usize> = (0..n).filter(|&i| indeg[i] > 0).collect();
            let a = stuck[0];
            let b = succ[a].iter().copied().find(|j| indeg[*j] > 0).unwrap_or(a);
            return Err(Error::CycleDetected(sorted[a].clone(), sorted[b].clone()));
        }
        let mut up = vec![BitRow::new(n); n];
        for &i in topo.iter().rev() {
            let mut row = BitRow::new(n);
            row.set(i);
            for &j in &succ[i] {
                row.union_with(&up[j]);
            }
            up[i] = row;
        }
        Ok(Self { labels: sorted, index, up, covers: OnceLock::new() })
    }

    /// Builds a poset from a full relation predicate over `labels` (given in
    /// any order). The predicate must already be a partial order; reflexivity,
    /// antisymmetry and transitivity are checked.
    pub fn from_relation<F>(labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let order = canonical_order(&labels)?;
        let n = labels.len();
        let mut up = vec![BitRow::new(n); n];
        for (ni, &oi) in order.iter().enumerate() {
            for (nj, &oj) in order.iter().enumerate() {
                if ni == nj || leq(oi, oj) {
                    up[ni].set(nj);
                }
            }
        }
        let sorted: Vec<String> = order.iter().map(|&i| labels[i].clone()).collect();
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].get(i) {
                    return Err(Error::CycleDetected(sorted[i].clone(), sorted[j].clone()));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::InvalidInput(format!(
                        "relation is not transitive at {}",
                        sorted[j]
                    )));
                }
            }
        }
        let index = sorted.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(Self { labels: sorted, index, up, covers: OnceLock::new() })
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

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.up[i].get(j)
    }

    /// Indices of elements `≥ i`, including `i`.
    pub fn up_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[i].iter()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| (0..self.len()).all(|i| !self.lt(i, j))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].count() == 1).collect()
    }

    /// Upper covers of every element (the Hasse diagram), computed once.
    pub fn covers(&self) -> &[Vec<usize>] {
        self.covers.get_or_init(|| {
            (0..self.len())
                .map(|i| {
                    let above: Vec<usize> = self.up[i].iter().filter(|&j| j != i).collect();
                    above
                        .iter()
                        .copied()
                        .filter(|&j| !above.iter().any(|&k| k != j && self.lt(k, j)))
                        .collect()
                })
                .collect()
        })
    }

    /// Full subposet on `elements` (indices of `self`).
    pub fn subposet(&self, elements: &[usize]) -> Poset {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let n = elements.len();
        let mut up = vec![BitRow::new(n); n];
        for (a, &i) in elements.iter().enumerate() {
            for (b, &j) in elements.iter().enumerate() {
                if self.leq(i, j) {
                    up[a].set(b);
                }
            }
        }
        let labels: Vec<String> = elements.iter().map(|&i| self.labels[i].clone()).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Poset { labels, index, up, covers: OnceLock::new() }
    }

    /// `P_{≤p}`, `P_{<p}`, `P_{≥p}` or `P_{>p}`.
    pub fn interval(&self, p: usize, strict: bool, side: Side) -> Result<Poset> {
        if p >= self.len() {
            return Err(Error::UnknownElement(format!("#{p}")));
        }
        let keep: Vec<usize> = (0..self.len())
            .filter(|&x| {
                let related = match side {
                    Side::Below => self.leq(x, p),
                    Side::Above => self.leq(p, x),
                };
                related && !(strict && x == p)
            })
            .collect();
        Ok(self.subposet(&keep))
    }

    pub fn interval_by_label(&self, p: &str, strict: bool, side: Side) -> Result<Poset> {
        self.interval(self.index_of(p)?, strict, side)
    }

    /// Whether `set` is upward closed.
    pub fn is_cosieve(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &s in set {
            member[s] = true;
        }
        set.iter().all(|&x| self.up[x].iter().all(|y| member[y]))
    }

    /// Length of a longest chain, `None` for the empty poset.
    pub fn longest_chain_length(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        // longest chain starting at each element, in reverse topological order
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.up[i].count()));
        let mut best = vec![0usize; self.len()];
        for &i in order.iter().rev() {
            best[i] = self.covers()[i].iter().map(|&j| best[j] + 1).max().unwrap_or(0);
        }
        best.into_iter().max()
    }

    /// Every nonempty chain, grouped by length (index 0 holds single elements).
    pub fn chains(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut stack = Vec::new();
        fn extend(p: &Poset, stack: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
            let d = stack.len() - 1;
            if out.len() <= d {
                out.resize(d + 1, Vec::new());
            }
            out[d].push(stack.clone());
            let last = *stack.last().unwrap();
            for j in p.up[last].iter() {
                if j != last {
                    stack.push(j);
                    extend(p, stack, out);
                    stack.pop();
                }
            }
        }
        for i in 0..self.len() {
            stack.push(i);
            extend(self, &mut stack, &mut out);
            stack.pop();
        }
        for level in &mut out {
            level.sort();
        }
        out
    }

    /// Maximal chains, found by depth-first search over the Hasse diagram.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        let covers = self.covers();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn walk(covers: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Chain>) {
            let last = *stack.last().unwrap();
            if covers[last].is_empty() {
                out.push(Chain(stack.clone()));
                return;
            }
            for &j in &covers[last] {
                stack.push(j);
                walk(covers, stack, out);
                stack.pop();
            }
        }
        for m in self.minimal_elements() {
            stack.push(m);
            walk(covers, &mut stack, &mut out);
            stack.pop();
        }
        out.sort();
        out
    }

    /// Order complex: vertices are elements, simplices are chains.
    pub fn nerve(&self) -> SimplicialComplex {
        if self.is_empty() {
            return SimplicialComplex::empty_simplex();
        }
        let sorted = |mut c: Vec<usize>| {
            c.sort_unstable();
            c
        };
        let facets: Vec<Vec<usize>> =
            self.maximal_chains().into_iter().map(|c| sorted(c.0)).collect();
        let mut chains = self.chains();
        for level in &mut chains {
            *level = std::mem::take(level).into_iter().map(sorted).collect();
            level.sort();
        }
        SimplicialComplex::from_sorted_parts(self.labels.clone(), facets, Some(chains))
    }

    pub fn opposite(&self) -> Poset {
        let n = self.len();
        let mut up = vec![BitRow::new(n); n];
        for (i, row) in self.up.iter().enumerate() {
            for j in row.iter() {
                up[j].set(i);
            }
        }
        Poset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            up,
            covers: OnceLock::new(),
        }
    }

    /// Whether `map` (indexed by elements of `self`) is order preserving into `target`.
    pub fn is_monotone_into(&self, target: &Poset, map: &[usize]) -> bool {
        (0..self.len()).all(|i| self.up[i].iter().all(|j| target.leq(map[i], map[j])))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                leq.push([i, j]);
            }
        }
        serde_json::to_value(PosetJson { elements: self.labels.clone(), leq })
            .expect("poset json")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: PosetJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        let pairs: Vec<(String, String)> = raw
            .leq
            .iter()
            .map(|[i, j]| -> Result<(String, String)> {
                let get = |k: usize| {
                    raw.elements
                        .get(k)
                        .cloned()
                        .ok_or_else(|| Error::UnknownElement(format!("#{k}")))
                };
                Ok((get(*i)?, get(*j)?))
            })
            .collect::<Result<_>>()?;
        Poset::from_pairs(&raw.elements, &pairs)
    }
}
