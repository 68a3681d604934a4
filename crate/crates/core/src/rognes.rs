//! Tits and split Tits buildings over `F_q`, spanning posets in the subspace
//! lattice of `F_q^k`, the poset `P°` of nontrivial minimal spanning posets,
//! and the common basis complex.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::addcat::{Instance, SubobjectStructure};
use crate::complex::SimplicialComplex;
use crate::decomp::decomposition_poset;
use crate::error::{Error, Result};
use crate::homology::{
    complex_homology, homology, wedge_of_spheres_profile, Coeff, HomologyReport, Profile,
};
use crate::poset::Poset;
use crate::sset::suspension_prime;

/// Largest number of nonzero subspaces the spanning-poset search accepts.
pub const SPANNING_CAP: usize = 20;
/// Largest number of simplices built for a building or its subdivision check.
pub const BUILDING_CAP: usize = 3_000_000;

fn vect(n: usize, q: u32) -> Result<SubobjectStructure> {
    if n == 0 {
        return Err(Error::InvalidInput("ambient dimension must be positive".into()));
    }
    SubobjectStructure::new(Instance::Vect { n, q })
}

fn proper_nonzero(sub: &SubobjectStructure) -> Vec<usize> {
    sub.nonzero().into_iter().filter(|&x| x != sub.top()).collect()
}

fn check_chains(p: &Poset) -> Result<()> {
    let total: usize = p.chains().iter().map(Vec::len).sum();
    if total > BUILDING_CAP {
        return Err(Error::ResourceCap(format!("{total} chains exceed the building cap")));
    }
    Ok(())
}

/// Flags of proper nonzero subspaces of `F_q^n`.
pub fn tits_building(n: usize, q: u32) -> Result<SimplicialComplex> {
    let sub = vect(n, q)?;
    let p = sub.poset().subposet(&proper_nonzero(&sub));
    check_chains(&p)?;
    Ok(p.nerve())
}

/// An ordered pair of complementary subspaces, by subobject index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Splitting {
    pub p: usize,
    pub q: usize,
}

impl Splitting {
    pub fn new(sub: &SubobjectStructure, p: usize, q: usize) -> Result<Self> {
        if sub.relplus(p, q) != Some(sub.top()) {
            return Err(Error::InvalidInput(format!(
                "{} and {} are not complementary",
                sub.label(p),
                sub.label(q)
            )));
        }
        Ok(Self { p, q })
    }

    pub fn leq(&self, other: &Splitting, sub: &SubobjectStructure) -> bool {
        sub.leq(self.p, other.p) && sub.leq(other.q, self.q)
    }

    pub fn label(&self, sub: &SubobjectStructure) -> String {
        format!("({}|{})", sub.label(self.p), sub.label(self.q))
    }
}

/// The split Tits building as a poset together with its vertex splittings.
#[derive(Debug, Clone)]
pub struct SplitBuilding {
    pub sub: SubobjectStructure,
    /// Indexed like `poset`.
    pub splittings: Vec<Splitting>,
    pub poset: Poset,
}

impl SplitBuilding {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        let sub = vect(n, q)?;
        let mut splittings = Vec::new();
        for p in proper_nonzero(&sub) {
            for c in proper_nonzero(&sub) {
                if sub.relplus(p, c) == Some(sub.top()) {
                    splittings.push(Splitting { p, q: c });
                }
            }
        }
        let labels: Vec<String> = splittings.iter().map(|s| s.label(&sub)).collect();
        let poset = Poset::from_relation(labels.clone(), |a, b| splittings[a].leq(&splittings[b], &sub))?;
        let by_label: HashMap<&str, Splitting> =
            labels.iter().map(String::as_str).zip(splittings.iter().copied()).collect();
        let splittings = poset.labels().iter().map(|l| by_label[l.as_str()]).collect();
        check_chains(&poset)?;
        Ok(Self { sub, splittings, poset })
    }

    pub fn complex(&self) -> SimplicialComplex {
        self.poset.nerve()
    }
}

pub fn split_tits_building(n: usize, q: u32) -> Result<SimplicialComplex> {
    Ok(SplitBuilding::new(n, q)?.complex())
}

/// `(P₀,Q₀) < ⋯ < (P_n,Q_n)` ↦ `(P₀, P₁∩Q₀, …, P_n∩Q_{n−1}, Q_n)`.
pub fn split_to_ordered_decomp(sub: &SubobjectStructure, chain: &[Splitting]) -> Result<Vec<usize>> {
    let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
        return Err(Error::NotAChain("empty chain".into()));
    };
    for s in chain {
        if sub.relplus(s.p, s.q) != Some(sub.top()) || s.p == sub.zero() || s.q == sub.zero() {
            return Err(Error::NotAChain(format!("{} is not a proper splitting", s.label(sub))));
        }
    }
    for w in chain.windows(2) {
        if w[0] == w[1] || !w[0].leq(&w[1], sub) {
            return Err(Error::NotAChain(format!(
                "{} is not below {}",
                w[0].label(sub),
                w[1].label(sub)
            )));
        }
    }
    let mut parts = vec![first.p];
    parts.extend(chain.windows(2).map(|w| sub.meet(w[1].p, w[0].q)));
    parts.push(last.q);
    if parts.contains(&sub.zero()) || sub.relplus_all(parts.iter().copied()) != Some(sub.top()) {
        return Err(Error::AssertionFailure(format!(
            "parts of a split chain do not decompose the ambient space: {parts:?}"
        )));
    }
    Ok(parts)
}

#[derive(Debug, Clone, Serialize)]
pub struct SubdivisionCheck {
    pub n: usize,
    pub q: u32,
    /// Simplices of the split building, that is vertices of its subdivision.
    pub split_simplices: usize,
    pub ordered_decompositions: usize,
    pub bijective: bool,
    pub order_preserving: bool,
    pub f_vector_subdivision: Vec<usize>,
    pub f_vector_nerve: Vec<usize>,
}

impl SubdivisionCheck {
    pub fn passed(&self) -> bool {
        self.bijective && self.order_preserving && self.f_vector_subdivision == self.f_vector_nerve
    }
}

/// Compares the face poset of the split building with `(Decomp^ord)°` through
/// [`split_to_ordered_decomp`]. Face inclusion must match refinement.
pub fn subdivision_iso_check(n: usize, q: u32) -> Result<SubdivisionCheck> {
    let b = SplitBuilding::new(n, q)?;
    let dord = decomposition_poset(&b.sub, true, true)?;
    let lookup = dord.lookup();
    let chains: Vec<Vec<usize>> = b.poset.chains().into_iter().flatten().collect();
    let mut image = Vec::with_capacity(chains.len());
    for c in &chains {
        let split: Vec<Splitting> = c.iter().map(|&v| b.splittings[v]).collect();
        let parts = split_to_ordered_decomp(&b.sub, &split)?;
        image.push(lookup.get(&parts).copied());
    }
    let hit: BTreeSet<usize> = image.iter().flatten().copied().collect();
    let bijective = image.iter().all(Option::is_some) && hit.len() == chains.len() && hit.len() == dord.len();
    let order_preserving = bijective && {
        let image: Vec<usize> = image.iter().map(|x| x.unwrap()).collect();
        let face = |a: usize, b: usize| chains[a].iter().all(|v| chains[b].contains(v));
        let agrees = |up: bool| {
            (0..chains.len()).into_par_iter().all(|a| {
                (0..chains.len()).all(|c| {
                    let rel = if up {
                        dord.poset.leq(image[a], image[c])
                    } else {
                        dord.poset.leq(image[c], image[a])
                    };
                    face(a, c) == rel
                })
            })
        };
        agrees(true) || agrees(false)
    };
    Ok(SubdivisionCheck {
        n,
        q,
        split_simplices: chains.len(),
        ordered_decompositions: dord.len(),
        bijective,
        order_preserving,
        f_vector_subdivision: b.complex().barycentric_subdivision().f_vector(),
        f_vector_nerve: dord.poset.nerve().f_vector(),
    })
}

/// How minimality of a spanning poset is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Minimality {
    /// No proper downward-closed subposet spans.
    DownwardClosed,
    /// No proper subposet at all spans.
    Subset,
}

impl Minimality {
    pub fn tag(&self) -> &'static str {
        match self {
            Minimality::DownwardClosed => "downward-closed",
            Minimality::Subset => "subset",
        }
    }
}

impl std::str::FromStr for Minimality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "downward-closed" => Ok(Minimality::DownwardClosed),
            "subset" => Ok(Minimality::Subset),
            _ => Err(Error::InvalidInput(format!("unknown minimality convention `{s}`"))),
        }
    }
}

/// A full subposet of `Sub(F_q^k)`, stored as sorted subobject indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpanningPoset {
    pub elements: Vec<usize>,
}

impl SpanningPoset {
    pub fn new(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self { elements }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self, sub: &SubobjectStructure) -> bool {
        let mut t = vec![sub.zero(), sub.top()];
        t.sort_unstable();
        self.elements == t
    }

    pub fn nonzero<'a>(&'a self, sub: &'a SubobjectStructure) -> impl Iterator<Item = usize> + 'a {
        self.elements.iter().copied().filter(move |&x| x != sub.zero())
    }

    /// `2·|nonzero objects| − |strict relations among nonzero objects|`.
    pub fn size(&self, sub: &SubobjectStructure) -> isize {
        let nz: Vec<usize> = self.nonzero(sub).collect();
        let rel = nz.iter().tuple_combinations().filter(|(&a, &b)| sub.leq(a, b) || sub.leq(b, a)).count();
        2 * nz.len() as isize - rel as isize
    }

    pub fn label(&self, sub: &SubobjectStructure) -> String {
        format!("{{{}}}", self.nonzero(sub).map(|x| sub.label(x)).join(","))
    }

    pub fn to_json(&self, sub: &SubobjectStructure) -> serde_json::Value {
        serde_json::json!({
            "elements": self.elements.iter().map(|&x| sub.label(x)).collect::<Vec<_>>(),
            "trivial": self.is_trivial(sub),
            "size": self.size(sub),
        })
    }
}

fn join_of<I: IntoIterator<Item = usize>>(sub: &SubobjectStructure, it: I) -> usize {
    it.into_iter().fold(sub.zero(), |a, b| sub.join(a, b))
}

/// SP1 and SP2.
pub fn is_spanning(sub: &SubobjectStructure, s: &SpanningPoset) -> bool {
    s.contains(sub.zero())
        && s.elements.iter().tuple_combinations().all(|(&a, &b)| s.contains(sub.meet(a, b)))
        && join_of(sub, s.elements.iter().copied()) == sub.top()
}

/// Assumes `s` is spanning.
pub fn is_minimal(sub: &SubobjectStructure, s: &SpanningPoset, mode: Minimality) -> bool {
    match mode {
        // Every proper down-set misses some maximal element, and dropping one
        // maximal element keeps SP1.
        Minimality::DownwardClosed => s
            .elements
            .iter()
            .filter(|&&m| !s.elements.iter().any(|&x| x != m && sub.leq(m, x)))
            .all(|&m| {
                m == sub.zero() || join_of(sub, s.elements.iter().copied().filter(|&x| x != m)) != sub.top()
            }),
        Minimality::Subset => {
            let n = s.elements.len();
            (0u64..(1 << n) - 1).all(|mask| {
                let t = SpanningPoset::new(
                    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s.elements[i]).collect(),
                );
                !is_spanning(sub, &t)
            })
        }
    }
}

/// All spanning posets of `sub`, or only the minimal ones under `minimal`.
pub fn enumerate_spanning_posets(
    sub: &SubobjectStructure,
    minimal: Option<Minimality>,
) -> Result<Vec<SpanningPoset>> {
    let mut order = sub.nonzero();
    if order.len() > SPANNING_CAP {
        return Err(Error::ResourceCap(format!(
            "{} nonzero subspaces exceed the spanning-poset cap {SPANNING_CAP}",
            order.len()
        )));
    }
    order.sort_by_key(|&x| (sub.rank(x), x));
    let mut suffix = vec![sub.zero(); order.len() + 1];
    for i in (0..order.len()).rev() {
        suffix[i] = sub.join(suffix[i + 1], order[i]);
    }
    struct Search<'a> {
        sub: &'a SubobjectStructure,
        order: Vec<usize>,
        suffix: Vec<usize>,
        chosen: Vec<usize>,
        out: Vec<SpanningPoset>,
    }
    fn rec(s: &mut Search, pos: usize, acc: usize) {
        if s.sub.join(acc, s.suffix[pos]) != s.sub.top() {
            return;
        }
        if pos == s.order.len() {
            let mut e = s.chosen.clone();
            e.push(s.sub.zero());
            s.out.push(SpanningPoset::new(e));
            return;
        }
        let x = s.order[pos];
        // Meets with earlier choices have lower rank, so they are already decided.
        let closed = s.chosen.iter().all(|&y| {
            let m = s.sub.meet(x, y);
            m == s.sub.zero() || m == x || s.chosen.contains(&m)
        });
        if closed {
            s.chosen.push(x);
            rec(s, pos + 1, s.sub.join(acc, x));
            s.chosen.pop();
        }
        rec(s, pos + 1, acc);
    }
    let mut search = Search { sub, order, suffix, chosen: vec![], out: vec![] };
    rec(&mut search, 0, sub.zero());
    let mut all = search.out;
    all.sort();
    Ok(match minimal {
        None => all,
        Some(Minimality::DownwardClosed) => {
            all.into_iter().filter(|s| is_minimal(sub, s, Minimality::DownwardClosed)).collect()
        }
        Some(Minimality::Subset) => {
            let all_ref = &all;
            all.par_iter()
                .filter(|s| {
                    !all_ref.iter().any(|t| {
                        t.elements.len() < s.elements.len() && t.elements.iter().all(|&x| s.contains(x))
                    })
                })
                .cloned()
                .collect()
        }
    })
}

/// `S ≤ S′`: a surjective monotone `F: S′ → S` with `M ⊆ F(M)` for every `M ∈ S′`.
pub fn spanning_poset_leq(sub: &SubobjectStructure, s: &SpanningPoset, s_prime: &SpanningPoset) -> bool {
    let mut src = s_prime.elements.clone();
    src.sort_by_key(|&x| (sub.rank(x), x));
    let tgt = &s.elements;
    if src.len() < tgt.len() {
        return false;
    }
    fn rec(
        sub: &SubobjectStructure,
        src: &[usize],
        tgt: &[usize],
        assigned: &mut Vec<usize>,
        hits: &mut Vec<u32>,
        uncovered: usize,
    ) -> bool {
        let pos = assigned.len();
        if src.len() - pos < uncovered {
            return false;
        }
        if pos == src.len() {
            return true;
        }
        let m = src[pos];
        for (t, &n) in tgt.iter().enumerate() {
            if !sub.leq(m, n) {
                continue;
            }
            // Sources below `m` come earlier in rank order.
            let monotone = (0..pos).all(|i| !sub.leq(src[i], m) || sub.leq(tgt[assigned[i]], n));
            if !monotone {
                continue;
            }
            hits[t] += 1;
            assigned.push(t);
            let fresh = usize::from(hits[t] == 1);
            if rec(sub, src, tgt, assigned, hits, uncovered - fresh) {
                return true;
            }
            assigned.pop();
            hits[t] -= 1;
        }
        false
    }
    rec(sub, &src, tgt, &mut Vec::new(), &mut vec![0; tgt.len()], tgt.len())
}

/// The poset `P°` with its elements and sizes.
#[derive(Debug, Clone)]
pub struct SpanningPosetP {
    pub k: usize,
    pub q: u32,
    pub minimality: Minimality,
    pub sub: SubobjectStructure,
    /// Indexed like `poset`.
    pub elements: Vec<SpanningPoset>,
    pub sizes: Vec<isize>,
    pub poset: Poset,
}

impl SpanningPosetP {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "q": self.q,
            "minimality_convention": self.minimality.tag(),
            "elements": self.elements.iter().map(|s| s.to_json(&self.sub)).collect::<Vec<_>>(),
            "poset": self.poset.to_json(),
        })
    }
}

impl SpanningPosetP {
    /// Builds `P°` without checking the size laws.
    pub fn build(k: usize, q: u32, minimality: Minimality) -> Result<Self> {
        let sub = vect(k, q)?;
        let minimal = enumerate_spanning_posets(&sub, Some(minimality))?;
        let Some(t) = minimal.iter().position(|s| s.is_trivial(&sub)) else {
            return Err(Error::AssertionFailure("the trivial spanning poset is not minimal".into()));
        };
        let all_leq: Vec<Vec<bool>> = minimal
            .par_iter()
            .map(|a| minimal.iter().map(|b| spanning_poset_leq(&sub, a, b)).collect())
            .collect();
        if let Some(b) = (0..minimal.len()).find(|&b| !all_leq[t][b]) {
            return Err(Error::AssertionFailure(format!(
                "trivial poset is not below {}",
                minimal[b].label(&sub)
            )));
        }
        let idx: Vec<usize> = (0..minimal.len()).filter(|&i| i != t).collect();
        let labels: Vec<String> = idx.iter().map(|&i| minimal[i].label(&sub)).collect();
        let poset = Poset::from_relation(labels.clone(), |a, b| all_leq[idx[a]][idx[b]])?;
        let by_label: HashMap<&str, usize> = labels.iter().map(String::as_str).zip(idx).collect();
        let elements: Vec<SpanningPoset> =
            poset.labels().iter().map(|l| minimal[by_label[l.as_str()]].clone()).collect();
        let sizes = elements.iter().map(|s| s.size(&sub)).collect();
        Ok(Self { k, q, minimality, sub, elements, sizes, poset })
    }

    /// Failures of the size range `[2, 2k]`, of strict size monotonicity and
    /// of the nerve dimension bound `2k − 3`, one witness per line.
    pub fn size_violations(&self) -> Vec<String> {
        let k = self.k as isize;
        let mut out = Vec::new();
        for (s, &size) in self.elements.iter().zip(&self.sizes) {
            if !(2..=2 * k).contains(&size) {
                out.push(format!("size {size} of {} lies outside [2, {}]", s.label(&self.sub), 2 * k));
            }
        }
        for a in 0..self.elements.len() {
            for b in self.poset.up_set(a).filter(|&b| b != a) {
                if self.sizes[a] >= self.sizes[b] {
                    out.push(format!(
                        "{} < {} but sizes are {} and {}",
                        self.poset.label(a),
                        self.poset.label(b),
                        self.sizes[a],
                        self.sizes[b]
                    ));
                }
            }
        }
        if let Some(len) = self.poset.longest_chain_length() {
            if len as isize > 2 * k - 3 {
                out.push(format!("nerve has dimension {len} > {}", 2 * k - 3));
            }
        }
        out
    }
}

/// Builds `P°` and asserts the size bounds and strict size monotonicity.
pub fn spanning_poset_p(k: usize, q: u32, minimality: Minimality) -> Result<SpanningPosetP> {
    let p = SpanningPosetP::build(k, q, minimality)?;
    match p.size_violations().into_iter().next() {
        Some(w) => Err(Error::AssertionFailure(w)),
        None => Ok(p),
    }
}

/// Output of the submodule configuration extractor.
#[derive(Debug, Clone, Serialize)]
pub struct Configuration {
    pub pick_sites: Vec<Vec<usize>>,
    pub poset: SpanningPoset,
    pub spanning: bool,
    pub minimal: bool,
}

/// `values` lists `F` on the grid `{0,…,side−1}^dims` in row-major order.
pub fn submodule_configuration(
    sub: &SubobjectStructure,
    side: usize,
    dims: usize,
    values: &[usize],
) -> Result<Configuration> {
    if side == 0 || side * dims > 12 {
        return Err(Error::ResourceCap(format!("grid {side}^{dims} is outside the supported range")));
    }
    let total = side.pow(dims as u32);
    if values.len() != total || values.iter().any(|&v| v >= sub.len()) {
        return Err(Error::InvalidInput(format!("expected {total} subspace indices")));
    }
    let coords = |mut i: usize| {
        let mut c = vec![0; dims];
        for d in (0..dims).rev() {
            c[d] = i % side;
            i /= side;
        }
        c
    };
    let stride = |d: usize| side.pow((dims - 1 - d) as u32);
    for i in 0..total {
        let c = coords(i);
        for d in 0..dims {
            if c[d] + 1 < side && !sub.leq(values[i], values[i + stride(d)]) {
                return Err(Error::NotMonotone(format!(
                    "F{:?} = {} is not contained in the next value along axis {d}",
                    c,
                    sub.label(values[i])
                )));
            }
        }
    }
    let mut picks = Vec::new();
    let mut image = vec![sub.zero()];
    for i in 0..total {
        let c = coords(i);
        // Monotonicity reduces the colimit over `j < i` to the immediate predecessors.
        let below = join_of(sub, (0..dims).filter(|&d| c[d] > 0).map(|d| values[i - stride(d)]));
        if below != values[i] {
            picks.push(c);
            image.push(values[i]);
        }
    }
    let mut elements: BTreeSet<usize> = image.into_iter().collect();
    loop {
        let extra: Vec<usize> = elements
            .iter()
            .tuple_combinations()
            .map(|(&a, &b)| sub.meet(a, b))
            .filter(|m| !elements.contains(m))
            .collect();
        if extra.is_empty() {
            break;
        }
        elements.extend(extra);
    }
    let poset = SpanningPoset::new(elements.into_iter().collect());
    let spanning = is_spanning(sub, &poset);
    let minimal = spanning && is_minimal(sub, &poset, Minimality::DownwardClosed);
    Ok(Configuration { pick_sites: picks, poset, spanning, minimal })
}

/// The common basis complex with one witnessing basis per facet.
#[derive(Debug, Clone)]
pub struct CommonBasisComplex {
    pub sub: SubobjectStructure,
    pub complex: SimplicialComplex,
    /// `(facet as subobject indices, basis lines)`.
    pub witnesses: Vec<(Vec<usize>, Vec<usize>)>,
}

pub fn common_basis_complex(k: usize, q: u32) -> Result<CommonBasisComplex> {
    let sub = vect(k, q)?;
    let lines: Vec<usize> = sub.nonzero().into_iter().filter(|&x| sub.rank(x) == 1).collect();
    if (lines.len() as f64).powi(k as i32) > 1e7 {
        return Err(Error::ResourceCap(format!("{} lines in dimension {k}", lines.len())));
    }
    let mut facets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for basis in lines.iter().copied().combinations(k) {
        if join_of(&sub, basis.iter().copied()) != sub.top() {
            continue;
        }
        let mut facet: Vec<usize> = (1u32..(1 << k) - 1)
            .map(|mask| join_of(&sub, (0..k).filter(|i| mask >> i & 1 == 1).map(|i| basis[i])))
            .collect();
        facet.sort_unstable();
        facets.entry(facet).or_insert(basis);
    }
    let mut witnesses: Vec<(Vec<usize>, Vec<usize>)> = facets.into_iter().collect();
    witnesses.sort();
    let verts = proper_nonzero(&sub);
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let complex = if verts.is_empty() {
        SimplicialComplex::void()
    } else {
        SimplicialComplex::new(
            verts.iter().map(|&v| sub.label(v).to_owned()).collect(),
            witnesses.iter().map(|(f, _)| f.iter().map(|v| pos[v]).collect()).collect(),
        )?
    };
    if let Some(d) = complex.dim() {
        if d > (1isize << k) - 3 {
            return Err(Error::AssertionFailure(format!("dimension {d} exceeds 2^{k} − 3")));
        }
    }
    Ok(CommonBasisComplex { sub, complex, witnesses })
}

/// Reduced homology of `Σ′C` and `Σ′NP°`, and whether `NP°` looks like a
/// wedge of `(2k−3)`-spheres.
#[derive(Debug, Clone, Serialize)]
pub struct CbcComparison {
    pub k: usize,
    pub q: u32,
    pub minimality: Minimality,
    pub cbc: HomologyReport,
    pub spanning: HomologyReport,
    pub suspended_cbc: HomologyReport,
    pub suspended_spanning: HomologyReport,
    pub matched: bool,
    pub p_size: usize,
    pub nerve_dim: Option<usize>,
    pub size_violations: Vec<String>,
    /// Reduced homology of `C` vanishes outside degrees `[k−1, 2k−2]`.
    pub cbc_window_ok: bool,
    pub np_profile: Profile,
    pub wedge_in_top_degree: bool,
    #[serde(skip)]
    pub cbc_complex: SimplicialComplex,
    #[serde(skip)]
    pub nerve: SimplicialComplex,
    #[serde(skip)]
    pub p: SpanningPosetP,
}

impl CbcComparison {
    pub fn passed(&self) -> bool {
        self.matched && self.size_violations.is_empty() && self.cbc_window_ok
    }
}

fn suspended(k: &SimplicialComplex) -> Result<HomologyReport> {
    homology(&suspension_prime(k).normalized_chains(true)?, Coeff::Z)
}

pub fn cbc_vs_spanning_check(k: usize, q: u32, minimality: Minimality) -> Result<CbcComparison> {
    let c = common_basis_complex(k, q)?.complex;
    let p = SpanningPosetP::build(k, q, minimality)?;
    let np = p.poset.nerve();
    let cbc = complex_homology(&c)?;
    let suspended_cbc = suspended(&c)?;
    let suspended_spanning = suspended(&np)?;
    let spanning = complex_homology(&np)?;
    let np_profile = wedge_of_spheres_profile(&spanning)?;
    let (lo, hi) = (k as isize - 1, 2 * k as isize - 2);
    Ok(CbcComparison {
        k,
        q,
        minimality,
        matched: suspended_cbc.nonzero() == suspended_spanning.nonzero(),
        p_size: p.elements.len(),
        nerve_dim: p.poset.longest_chain_length(),
        size_violations: p.size_violations(),
        cbc_window_ok: cbc.nonzero().iter().all(|(d, _, _)| (lo..=hi).contains(d)),
        cbc,
        spanning,
        suspended_cbc,
        suspended_spanning,
        wedge_in_top_degree: matches!(np_profile, Profile::Wedge { dim, .. } if dim == 2 * k as isize - 3),
        np_profile,
        cbc_complex: c,
        nerve: np,
        p,
    })
}
