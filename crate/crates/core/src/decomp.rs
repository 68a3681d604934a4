//! Decomposition posets `Decomp_A`, their ordered variants, permutahedron
//! posets, and the checks behind the de-ordering theorem.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::addcat::SubobjectStructure;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{
    complex_homology, homology_connectivity, poset_homology, wedge_of_spheres_profile,
    Connectivity, HomologyReport, Profile,
};
use crate::poset::{Poset, Side};

/// Upper bound on the number of decompositions built into one poset.
pub const DECOMP_CAP: usize = 60_000;

/// A (possibly ordered) decomposition poset of one subobject `target`.
#[derive(Debug, Clone)]
pub struct DecompPoset {
    pub target: usize,
    pub ordered: bool,
    pub proper_only: bool,
    /// Parts of each element, indexed like the poset. Unordered parts are sorted.
    pub parts: Vec<Vec<usize>>,
    pub poset: Poset,
}

impl DecompPoset {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn index_of_parts(&self, parts: &[usize]) -> Option<usize> {
        self.parts.iter().position(|p| p == parts)
    }

    pub fn lookup(&self) -> HashMap<Vec<usize>, usize> {
        self.parts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect()
    }
}

/// Unordered decompositions of `target`, parts sorted by index.
pub fn enumerate_decompositions(sub: &SubobjectStructure, target: usize) -> Result<Vec<Vec<usize>>> {
    let candidates: Vec<usize> =
        sub.nonzero().into_iter().filter(|&x| sub.leq(x, target)).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(
        sub: &SubobjectStructure,
        target: usize,
        candidates: &[usize],
        from: usize,
        acc: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if acc == target {
            out.push(stack.clone());
            if out.len() > DECOMP_CAP {
                return Err(Error::ResourceCap(format!("more than {DECOMP_CAP} decompositions")));
            }
            return Ok(());
        }
        for (k, &x) in candidates.iter().enumerate().skip(from) {
            if let Some(next) = sub.relplus(acc, x) {
                stack.push(x);
                rec(sub, target, candidates, k + 1, next, stack, out)?;
                stack.pop();
            }
        }
        Ok(())
    }
    rec(sub, target, &candidates, 0, sub.zero(), &mut stack, &mut out)?;
    Ok(out)
}

fn decomposition_label(sub: &SubobjectStructure, parts: &[usize], ordered: bool) -> String {
    let body = parts.iter().map(|&p| sub.label(p)).join("|");
    if ordered {
        format!("({body})")
    } else {
        format!("{{{body}}}")
    }
}

/// Refinement map for `coarse ≤ fine`: for each fine part, the coarse part it
/// lies in. Uniqueness of that part is asserted.
pub fn refinement_map(sub: &SubobjectStructure, coarse: &[usize], fine: &[usize]) -> Result<Option<Vec<usize>>> {
    let mut f = Vec::with_capacity(fine.len());
    for &a in fine {
        let hits: Vec<usize> = (0..coarse.len()).filter(|&j| sub.leq(a, coarse[j])).collect();
        match hits.len() {
            0 => return Ok(None),
            1 => f.push(hits[0]),
            _ => {
                return Err(Error::AssertionFailure(format!(
                    "part {} lies in several coarse parts",
                    sub.label(a)
                )))
            }
        }
    }
    for (j, &b) in coarse.iter().enumerate() {
        let fiber = (0..fine.len()).filter(|&i| f[i] == j).map(|i| fine[i]);
        if sub.relplus_all(fiber) != Some(b) {
            return Ok(None);
        }
    }
    Ok(Some(f))
}

/// Whether `coarse ≤ fine` in the ordered poset: a monotone surjection with
/// consecutive fibres summing to the coarse parts.
pub fn ordered_refines(sub: &SubobjectStructure, coarse: &[usize], fine: &[usize]) -> bool {
    let mut i = 0;
    for &b in coarse {
        let mut acc = sub.zero();
        let start = i;
        while acc != b {
            let Some(&a) = fine.get(i) else { return false };
            if !sub.leq(a, b) {
                return false;
            }
            match sub.relplus(acc, a) {
                Some(next) => acc = next,
                None => return false,
            }
            i += 1;
        }
        if i == start {
            return false;
        }
    }
    i == fine.len()
}

/// `Decomp` of `target` (ordered or not), optionally without the element `{target}`.
pub fn decomposition_poset_of(
    sub: &SubobjectStructure,
    target: usize,
    ordered: bool,
    proper_only: bool,
) -> Result<DecompPoset> {
    let mut parts = enumerate_decompositions(sub, target)?;
    if ordered {
        let mut all = Vec::new();
        for p in parts {
            for perm in p.iter().copied().permutations(p.len()) {
                all.push(perm);
            }
            if all.len() > DECOMP_CAP {
                return Err(Error::ResourceCap(format!("more than {DECOMP_CAP} ordered decompositions")));
            }
        }
        parts = all;
    }
    if proper_only {
        parts.retain(|p| p.len() >= 2);
    }
    let labels: Vec<String> = parts.iter().map(|p| decomposition_label(sub, p, ordered)).collect();
    let uniqueness_error = std::cell::RefCell::new(None);
    let poset = Poset::from_relation(labels, |a, b| {
        if ordered {
            ordered_refines(sub, &parts[a], &parts[b])
        } else {
            match refinement_map(sub, &parts[a], &parts[b]) {
                Ok(f) => f.is_some(),
                Err(e) => {
                    uniqueness_error.borrow_mut().get_or_insert(e);
                    false
                }
            }
        }
    })?;
    if let Some(e) = uniqueness_error.into_inner() {
        return Err(e);
    }
    // reorder parts to the poset's canonical element order
    let by_label: HashMap<String, Vec<usize>> = parts
        .into_iter()
        .map(|p| (decomposition_label(sub, &p, ordered), p))
        .collect();
    let parts = poset.labels().iter().map(|l| by_label[l].clone()).collect();
    Ok(DecompPoset { target, ordered, proper_only, parts, poset })
}

/// `Decomp_A` or `Decomp^ord_A` for the ambient object.
pub fn decomposition_poset(sub: &SubobjectStructure, ordered: bool, proper_only: bool) -> Result<DecompPoset> {
    decomposition_poset_of(sub, sub.top(), ordered, proper_only)
}

/// Forgets the order; verified to be order preserving.
pub fn forgetful_map(ord: &DecompPoset, unord: &DecompPoset) -> Result<Vec<usize>> {
    let lookup = unord.lookup();
    let map: Vec<usize> = ord
        .parts
        .iter()
        .map(|p| {
            let mut s = p.clone();
            s.sort_unstable();
            lookup.get(&s).copied().ok_or_else(|| Error::UnknownElement(format!("{s:?}")))
        })
        .collect::<Result<_>>()?;
    if !ord.poset.is_monotone_into(&unord.poset, &map) {
        return Err(Error::NotMonotone("forgetful map".into()));
    }
    Ok(map)
}

/// Every maximal chain of the unordered poset lifts along the forgetful map.
pub fn maximal_chains_lift(ord: &DecompPoset, unord: &DecompPoset, map: &[usize]) -> bool {
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); unord.len()];
    for (a, &b) in map.iter().enumerate() {
        fibers[b].push(a);
    }
    let lifts = |chain: &[usize]| -> bool {
        fn search(ord: &DecompPoset, fibers: &[Vec<usize>], chain: &[usize], above: Option<usize>) -> bool {
            let Some((&last, rest)) = chain.split_last() else { return true };
            fibers[last]
                .iter()
                .filter(|&&a| above.is_none_or(|x| ord.poset.lt(a, x)))
                .any(|&a| search(ord, fibers, rest, Some(a)))
        }
        search(ord, &fibers, chain, None)
    };
    unord.poset.maximal_chains().iter().all(|c| lifts(c.elements()))
}

/// Ordered partitions of `{1..m}` into at least two blocks, ordered by
/// merging consecutive blocks.
pub fn permutahedron_poset(m: usize) -> Result<Poset> {
    let (poset, _) = permutahedron_with_blocks(m)?;
    Ok(poset)
}

fn permutahedron_with_blocks(m: usize) -> Result<(Poset, Vec<Vec<u32>>)> {
    if !(2..=6).contains(&m) {
        return Err(if m > 6 {
            Error::ResourceCap(format!("permutahedron poset of order {m}"))
        } else {
            Error::InvalidInput("order must be at least 2".into())
        });
    }
    let mut all: Vec<Vec<u32>> = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: u32, cur: &mut Vec<u32>, all: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            if cur.len() >= 2 {
                all.push(cur.clone());
            }
            return;
        }
        // nonempty submasks of `rest`
        let mut s = rest;
        while s > 0 {
            cur.push(s);
            rec(rest & !s, cur, all);
            cur.pop();
            s = (s - 1) & rest;
        }
    }
    rec((1u32 << m) - 1, &mut cur, &mut all);
    let label = |blocks: &[u32]| -> String {
        blocks
            .iter()
            .map(|b| (0..m).filter(|i| b >> i & 1 == 1).map(|i| (i + 1).to_string()).join(""))
            .join("|")
    };
    let labels: Vec<String> = all.iter().map(|b| label(b)).collect();
    let poset = Poset::from_relation(labels, |a, b| blocks_coarsen(&all[a], &all[b]))?;
    let by_label: HashMap<String, Vec<u32>> = all.into_iter().map(|b| (label(&b), b)).collect();
    let blocks = poset.labels().iter().map(|l| by_label[l].clone()).collect();
    Ok((poset, blocks))
}

/// Whether `coarse` arises from `fine` by merging consecutive blocks.
fn blocks_coarsen(coarse: &[u32], fine: &[u32]) -> bool {
    let mut i = 0;
    for &b in coarse {
        let mut acc = 0;
        let start = i;
        while acc != b {
            match fine.get(i) {
                Some(&f) if f & !b == 0 => acc |= f,
                _ => return false,
            }
            i += 1;
        }
        if i == start {
            return false;
        }
    }
    i == fine.len()
}

/// `{a ∈ (Decomp^ord)° : F(a) ≤ F(p)}` compared with the permutahedron poset
/// of order `|p|` under block merging.
pub fn ordered_interval_below_check(
    sub: &SubobjectStructure,
    ord: &DecompPoset,
    unord: &DecompPoset,
    map: &[usize],
    p: usize,
) -> Result<bool> {
    let fine = &ord.parts[p];
    let m = fine.len();
    if m < 2 {
        return Err(Error::InvalidInput("p must have at least two parts".into()));
    }
    let fp = map[p];
    let members: Vec<usize> =
        (0..ord.len()).filter(|&a| ord.proper_only || ord.parts[a].len() >= 2).filter(|&a| unord.poset.leq(map[a], fp)).collect();
    let (perm, blocks) = permutahedron_with_blocks(m)?;
    let block_index: HashMap<Vec<u32>, usize> =
        blocks.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let mut image = Vec::with_capacity(members.len());
    for &a in &members {
        let bl: Vec<u32> = ord.parts[a]
            .iter()
            .map(|&part| (0..m).filter(|&i| sub.leq(fine[i], part)).fold(0u32, |acc, i| acc | 1 << i))
            .collect();
        match block_index.get(&bl) {
            Some(&i) => image.push(i),
            None => return Ok(false),
        }
    }
    let mut seen = image.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != image.len() || seen.len() != perm.len() {
        return Ok(false);
    }
    for (x, &a) in members.iter().enumerate() {
        for (y, &b) in members.iter().enumerate() {
            if ord.poset.leq(a, b) != perm.leq(image[x], image[y]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinCheck {
    /// Poset isomorphism with the product of the parts' `Decomp` minus its bottom.
    pub product_iso: bool,
    /// Homology of the interval equals that of the join of the parts' `Decomp°`.
    pub homology_equal: bool,
    /// Checked only when at most one part has nonempty `Decomp°`.
    pub complex_iso: Option<bool>,
}

impl JoinCheck {
    pub fn passed(&self) -> bool {
        self.product_iso && self.homology_equal && self.complex_iso.unwrap_or(true)
    }
}

/// Compares `(Decomp°_A)_{>p}` with the join `Decomp°_{A_1} * ⋯ * Decomp°_{A_n}`.
pub fn upper_interval_join_check(sub: &SubobjectStructure, unord: &DecompPoset, p: usize) -> Result<JoinCheck> {
    let parts = &unord.parts[p];
    let upper = unord.poset.interval(p, true, Side::Above)?;
    let upper_idx: Vec<usize> = upper.labels().iter().map(|l| unord.poset.index_of(l)).collect::<Result<_>>()?;
    let factors: Vec<DecompPoset> = parts
        .iter()
        .map(|&a| decomposition_poset_of(sub, a, false, false))
        .collect::<Result<_>>()?;
    let lookups: Vec<HashMap<Vec<usize>, usize>> = factors.iter().map(DecompPoset::lookup).collect();
    // coordinates of each refinement in the product
    let mut coords = Vec::with_capacity(upper_idx.len());
    for &q in &upper_idx {
        let fine = &unord.parts[q];
        let Some(f) = refinement_map(sub, parts, fine)? else { return Ok(JoinCheck { product_iso: false, homology_equal: false, complex_iso: None }) };
        let c: Option<Vec<usize>> = (0..parts.len())
            .map(|j| {
                let piece: Vec<usize> = (0..fine.len()).filter(|&i| f[i] == j).map(|i| fine[i]).collect();
                lookups[j].get(&piece).copied()
            })
            .collect();
        match c {
            Some(c) => coords.push(c),
            None => return Ok(JoinCheck { product_iso: false, homology_equal: false, complex_iso: None }),
        }
    }
    let bottom: Vec<usize> = factors
        .iter()
        .zip(parts)
        .map(|(fp, &a)| fp.index_of_parts(&[a]).expect("improper element"))
        .collect();
    let product_size: usize = factors.iter().map(DecompPoset::len).product::<usize>() - 1;
    let mut distinct = coords.clone();
    distinct.sort();
    distinct.dedup();
    let mut product_iso = distinct.len() == coords.len()
        && coords.len() == product_size
        && !coords.contains(&bottom);
    if product_iso {
        'outer: for (x, cx) in coords.iter().enumerate() {
            for (y, cy) in coords.iter().enumerate() {
                let prod_leq = (0..parts.len()).all(|j| factors[j].poset.leq(cx[j], cy[j]));
                if prod_leq != upper.leq(x, y) {
                    product_iso = false;
                    break 'outer;
                }
            }
        }
    }
    let proper: Vec<Poset> = factors
        .iter()
        .map(|fp| {
            let keep: Vec<usize> = (0..fp.len()).filter(|&i| fp.parts[i].len() >= 2).collect();
            fp.poset.subposet(&keep)
        })
        .collect();
    let join = proper
        .iter()
        .fold(SimplicialComplex::empty_simplex(), |acc, q| acc.join(&q.nerve()));
    let lhs = poset_homology(&upper)?;
    let rhs = complex_homology(&join)?;
    let homology_equal = lhs.nonzero() == rhs.nonzero();
    let nontrivial: Vec<usize> = (0..proper.len()).filter(|&j| !proper[j].is_empty()).collect();
    let complex_iso = (nontrivial.len() <= 1).then(|| match nontrivial.first() {
        None => upper.is_empty(),
        Some(&j) => {
            // the interval is order isomorphic to Decomp°_{A_j} via the j-th coordinate
            let proper_lookup: HashMap<&str, usize> =
                proper[j].labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
            let img: Vec<Option<usize>> = coords
                .iter()
                .map(|c| proper_lookup.get(factors[j].poset.label(c[j])).copied())
                .collect();
            img.iter().all(Option::is_some)
                && img.len() == proper[j].len()
                && (0..img.len()).all(|x| {
                    (0..img.len()).all(|y| upper.leq(x, y) == proper[j].leq(img[x].unwrap(), img[y].unwrap()))
                })
                && upper.nerve().f_vector() == proper[j].nerve().f_vector()
        }
    });
    Ok(JoinCheck { product_iso, homology_equal, complex_iso })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WedgeVerdict {
    Wedge,
    Contractible,
    NotWedge,
}

impl WedgeVerdict {
    fn from_profile(p: &Profile, dim: isize) -> Self {
        match p {
            Profile::Contractible => WedgeVerdict::Contractible,
            Profile::Wedge { dim: d, .. } if *d == dim => WedgeVerdict::Wedge,
            _ => WedgeVerdict::NotWedge,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetSummary {
    pub elements: usize,
    pub longest_chain: Option<usize>,
    pub homology: HomologyReport,
    pub profile: Profile,
    pub verdict: WedgeVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeorderReport {
    pub instance: String,
    pub rank: usize,
    pub unordered: PosetSummary,
    pub ordered: PosetSummary,
    /// Longest chains in `Decomp` and `Decomp^ord` both equal `rk − 1`.
    pub chain_lengths_ok: bool,
    pub chains_lift: bool,
    /// Verdicts agree when a contractible poset counts as a wedge of no spheres.
    pub verdicts_agree_inclusive: bool,
    /// Verdicts agree when contractible is kept apart from wedges.
    pub verdicts_agree_strict: bool,
    /// `t(p) = rk − |p|` strictly decreases along `<`.
    pub t_function_ok: bool,
    /// `(Decomp°)_{>p}` has homology vanishing through degree `t(p) − 2`.
    pub upper_connectivity_ok: bool,
    /// The forgetful fibre over `p` has homology vanishing through degree `|p| − 3`.
    pub fiber_connectivity_ok: bool,
}

impl DeorderReport {
    pub fn passed(&self) -> bool {
        self.chain_lengths_ok
            && self.chains_lift
            && self.verdicts_agree_inclusive
            && self.t_function_ok
            && self.upper_connectivity_ok
            && self.fiber_connectivity_ok
    }
}

fn vanishes_through(r: &HomologyReport, c: isize) -> bool {
    match homology_connectivity(r) {
        Connectivity::Infinite => true,
        Connectivity::Finite(k) | Connectivity::AtLeast(k) => k >= c,
    }
}

fn summarize(d: &DecompPoset, full: &DecompPoset, rank: usize) -> Result<PosetSummary> {
    let homology = poset_homology(&d.poset)?;
    let profile = wedge_of_spheres_profile(&homology)?;
    let verdict = WedgeVerdict::from_profile(&profile, rank as isize - 2);
    Ok(PosetSummary {
        elements: d.len(),
        longest_chain: full.poset.longest_chain_length(),
        homology,
        profile,
        verdict,
    })
}

pub fn deorder_report(sub: &SubobjectStructure) -> Result<DeorderReport> {
    let rank = sub.rank(sub.top());
    let unord_full = decomposition_poset(sub, false, false)?;
    let ord_full = decomposition_poset(sub, true, false)?;
    let unord = decomposition_poset(sub, false, true)?;
    let ord = decomposition_poset(sub, true, true)?;
    let us = summarize(&unord, &unord_full, rank)?;
    let os = summarize(&ord, &ord_full, rank)?;
    if us.longest_chain != os.longest_chain {
        return Err(Error::AssertionFailure(format!(
            "longest chains differ: unordered {:?}, ordered {:?}",
            us.longest_chain, os.longest_chain
        )));
    }
    let expected = rank.checked_sub(1);
    let chain_lengths_ok = us.longest_chain == expected && os.longest_chain == expected;
    let full_map = forgetful_map(&ord_full, &unord_full)?;
    let chains_lift = maximal_chains_lift(&ord_full, &unord_full, &full_map);
    let inclusive = |v: WedgeVerdict| v != WedgeVerdict::NotWedge;
    let verdicts_agree_inclusive = inclusive(us.verdict) == inclusive(os.verdict);
    let verdicts_agree_strict = us.verdict == os.verdict;
    let t = |p: usize| rank as isize - unord.parts[p].len() as isize;
    let t_function_ok = (0..unord.len())
        .all(|a| (0..unord.len()).all(|b| !unord.poset.lt(a, b) || t(a) > t(b)));
    let mut upper_connectivity_ok = true;
    for p in 0..unord.len() {
        let upper = unord.poset.interval(p, true, Side::Above)?;
        upper_connectivity_ok &= vanishes_through(&poset_homology(&upper)?, t(p) - 2);
    }
    let map = forgetful_map(&ord, &unord)?;
    let mut fiber_connectivity_ok = true;
    for p in 0..unord.len() {
        let fiber: Vec<usize> = (0..ord.len()).filter(|&a| unord.poset.leq(map[a], p)).collect();
        let h = poset_homology(&ord.poset.subposet(&fiber))?;
        fiber_connectivity_ok &= vanishes_through(&h, unord.parts[p].len() as isize - 3);
    }
    Ok(DeorderReport {
        instance: sub.instance().to_string(),
        rank,
        unordered: us,
        ordered: os,
        chain_lengths_ok,
        chains_lift,
        verdicts_agree_inclusive,
        verdicts_agree_strict,
        t_function_ok,
        upper_connectivity_ok,
        fiber_connectivity_ok,
    })
}

/// Applies automorphism generator `g` to every element; checks that this is a
/// poset automorphism.
pub fn aut_acts_by_automorphisms(sub: &SubobjectStructure, d: &DecompPoset, g: usize) -> bool {
    let lookup = d.lookup();
    let image: Option<Vec<usize>> = d
        .parts
        .iter()
        .map(|p| {
            let mut q: Vec<usize> = p.iter().map(|&x| sub.act(g, x)).collect();
            if !d.ordered {
                q.sort_unstable();
            }
            lookup.get(&q).copied()
        })
        .collect();
    let Some(image) = image else { return false };
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == d.len()
        && (0..d.len()).all(|a| (0..d.len()).all(|b| d.poset.leq(a, b) == d.poset.leq(image[a], image[b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addcat::Instance;

    fn sub(inst: Instance) -> SubobjectStructure {
        SubobjectStructure::new(inst).unwrap()
    }

    #[test]
    fn finset3_proper() {
        let s = sub(Instance::FinSet { n: 3 });
        let d = decomposition_poset(&s, false, true).unwrap();
        assert_eq!(d.len(), 4);
        assert!(poset_homology(&d.poset).unwrap().is_zero());
    }

    #[test]
    fn vect22_antichain() {
        let s = sub(Instance::Vect { n: 2, q: 2 });
        let d = decomposition_poset(&s, false, true).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.poset.longest_chain_length(), Some(0));
        let full = decomposition_poset(&s, false, false).unwrap();
        assert_eq!(full.poset.longest_chain_length(), Some(1));
        let ord = decomposition_poset(&s, true, true).unwrap();
        assert_eq!(ord.len(), 6);
        let map = forgetful_map(&ord, &d).unwrap();
        let mut counts = vec![0; 3];
        for m in map {
            counts[m] += 1;
        }
        assert_eq!(counts, vec![2, 2, 2]);
    }

    #[test]
    fn rank_one_has_empty_proper_poset() {
        for inst in [Instance::FinSet { n: 1 }, Instance::Vect { n: 1, q: 3 }] {
            assert!(decomposition_poset(&sub(inst), false, true).unwrap().is_empty());
        }
    }

    #[test]
    fn permutahedron_sizes() {
        assert_eq!(permutahedron_poset(2).unwrap().len(), 2);
        assert_eq!(permutahedron_poset(3).unwrap().len(), 12);
        assert_eq!(permutahedron_poset(4).unwrap().len(), 74);
        assert!(permutahedron_poset(8).is_err());
    }

    #[test]
    fn finset4_partition_lattice_chain() {
        let s = sub(Instance::FinSet { n: 4 });
        let d = decomposition_poset(&s, false, false).unwrap();
        assert_eq!(d.len(), 15);
        assert_eq!(d.poset.longest_chain_length(), Some(3));
    }
}
