//! Automorphism groups acting on subobject tables.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AutElement {
    /// Permutation of `0..n`.
    Perm(Vec<usize>),
    /// Invertible matrix acting on row vectors from the right.
    Matrix(Vec<Vec<Elem>>),
}

#[derive(Debug, Clone)]
pub struct AutGroup {
    pub(crate) generators: Vec<AutElement>,
    /// Induced permutation of subobject indices, one per generator.
    pub(crate) actions: Vec<Vec<u32>>,
    pub(crate) field: Option<FiniteField>,
}

impl AutGroup {
    pub fn generators(&self) -> &[AutElement] {
        &self.generators
    }

    /// Permutations of `Sub_A` induced by the generators.
    pub fn actions(&self) -> &[Vec<u32>] {
        &self.actions
    }

    /// Order of the generated group, by breadth-first closure. Fails once more
    /// than `cap` elements have been seen.
    pub fn enumerate_order(&self, cap: usize) -> Result<u128> {
        let too_big = || Error::ResourceCap(format!("automorphism group exceeds {cap} elements"));
        match self.generators.first() {
            None => Ok(1),
            Some(AutElement::Perm(p)) => {
                let n = p.len();
                let gens: Vec<Vec<usize>> = self
                    .generators
                    .iter()
                    .map(|g| match g {
                        AutElement::Perm(p) => p.clone(),
                        AutElement::Matrix(_) => unreachable!("mixed generator kinds"),
                    })
                    .collect();
                let id: Vec<usize> = (0..n).collect();
                closure(id, cap, |x| {
                    gens.iter().map(|g| x.iter().map(|&i| g[i]).collect()).collect()
                })
                .ok_or_else(too_big)
            }
            Some(AutElement::Matrix(m)) => {
                let f = self.field.as_ref().expect("matrix generators carry a field");
                let n = m.len();
                let gens: Vec<Vec<Vec<Elem>>> = self
                    .generators
                    .iter()
                    .map(|g| match g {
                        AutElement::Matrix(m) => m.clone(),
                        AutElement::Perm(_) => unreachable!("mixed generator kinds"),
                    })
                    .collect();
                let id: Vec<Vec<Elem>> =
                    (0..n).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect();
                closure(id, cap, |x| gens.iter().map(|g| mat_mul(f, x, g)).collect())
                    .ok_or_else(too_big)
            }
        }
    }
}

fn closure<T, F>(start: T, cap: usize, step: F) -> Option<u128>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T) -> Vec<T>,
{
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for y in step(&x) {
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen.len() as u128)
}

pub(crate) fn mat_mul(f: &FiniteField, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(0, |acc, (x, brow)| f.add(acc, f.mul(*x, brow[j]))))
                .collect()
        })
        .collect()
}

/// Transvections `E_ij(ω^k)` and `diag(ω, 1, …, 1)`.
pub(crate) fn gl_generators(f: &FiniteField, n: usize) -> Vec<AutElement> {
    let id = |n: usize| -> Vec<Vec<Elem>> {
        (0..n).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect()
    };
    let w = f.primitive();
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    let mut d = id(n);
    d[0][0] = w;
    if w != 1 {
        gens.push(AutElement::Matrix(d));
    }
    let mut basis = vec![1 as Elem];
    for _ in 1..f.degree() {
        let last = *basis.last().unwrap();
        basis.push(f.mul(last, w));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &c in &basis {
                    let mut e = id(n);
                    e[i][j] = c;
                    gens.push(AutElement::Matrix(e));
                }
            }
        }
    }
    gens
}

/// A transposition and a long cycle.
pub(crate) fn symmetric_generators(n: usize) -> Vec<AutElement> {
    if n < 2 {
        return vec![];
    }
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(0, 1);
    let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    vec![AutElement::Perm(t), AutElement::Perm(c)]
}
