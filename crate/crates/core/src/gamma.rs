//! The Γ-set `S_A` of compatible subobject tuples, its decomposition
//! valuation `δ`, and evaluations on simplicial spheres.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::addcat::SubobjectStructure;
use crate::decomp::{decomposition_poset, DecompPoset};
use crate::error::{Error, Result};
use crate::homology::{homology, Coeff, HomologyReport};
use crate::sset::{
    fat_diagonal_model, minimal_sphere, points, smash_power, sphere, suspension_prime, BuiltSSet,
    SSet, Simplex, SimplicialModel, SmashMode, Valuation,
};
use crate::linalg;

/// Default upper bound on enumerated simplices before giving up.
pub const CELL_CAP: u128 = 40_000_000;

static CELL_CAP_OVERRIDE: AtomicU64 = AtomicU64::new(0);

/// Lowers (or restores, with `None`) the process-wide simplex budget.
pub fn set_cell_cap(cap: Option<u64>) {
    CELL_CAP_OVERRIDE.store(cap.unwrap_or(0), Ordering::Relaxed);
}

pub fn cell_cap() -> u128 {
    match CELL_CAP_OVERRIDE.load(Ordering::Relaxed) {
        0 => CELL_CAP,
        n => n as u128,
    }
}

/// Where a tuple of `S_{≤A}(S)` lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SaClass {
    /// Total sum strictly below `A`.
    Below,
    /// Total sum equal to `A`.
    At,
}

/// `S_{≤A}(S)` for `|S°| = s`: tuples of subobjects all of whose subset
/// sums are defined.
pub fn sa_elements_le(sub: &SubobjectStructure, s: usize) -> Result<Vec<Vec<u32>>> {
    let total = (sub.len() as u128).checked_pow(s as u32).unwrap_or(u128::MAX);
    if total > cell_cap() {
        return Err(Error::ResourceCap(format!("{total} candidate tuples")));
    }
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::with_capacity(s);
    fn rec(sub: &SubobjectStructure, s: usize, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if stack.len() == s {
            out.push(stack.clone());
            return;
        }
        for x in 0..sub.len() as u32 {
            stack.push(x);
            // every subset containing the new entry must have a defined sum
            let k = stack.len() - 1;
            let ok = (0u32..1 << k).all(|bits| {
                let it = (0..k).filter(|j| bits >> j & 1 == 1).map(|j| stack[j] as usize);
                sub.relplus_all(it.chain([x as usize])).is_some()
            });
            if ok {
                rec(sub, s, stack, out);
            }
            stack.pop();
        }
    }
    rec(sub, s, &mut stack, &mut out);
    Ok(out)
}

pub fn sa_class(sub: &SubobjectStructure, t: &[u32]) -> SaClass {
    match sub.relplus_all(t.iter().map(|&x| x as usize)) {
        Some(x) if x == sub.top() => SaClass::At,
        _ => SaClass::Below,
    }
}

/// `S_A(S) = S_{≤A}(S)/S_{<A}(S)`; `None` is the basepoint.
pub fn sa_elements(sub: &SubobjectStructure, s: usize) -> Result<Vec<Option<Vec<u32>>>> {
    let mut out = vec![None];
    out.extend(
        sa_elements_le(sub, s)?
            .into_iter()
            .filter(|t| sa_class(sub, t) == SaClass::At)
            .map(Some),
    );
    Ok(out)
}

/// The Γ-action of a pointed map `f: S → T` (`None` is the basepoint):
/// `B_t = ⊞_{f(s) = t} A_s`.
pub fn gamma_map(sub: &SubobjectStructure, a: &[u32], f: &[Option<usize>], t: usize) -> Option<Vec<u32>> {
    (0..t)
        .map(|j| {
            let fiber = (0..a.len()).filter(|&s| f[s] == Some(j)).map(|s| a[s] as usize);
            sub.relplus_all(fiber).map(|x| x as u32)
        })
        .collect()
}

/// A simplex of `S_A(L)`: non-basepoint simplices of `L` labelled by the
/// parts of a decomposition of `A`, sorted by simplex. Empty is the basepoint.
pub type SaSimplex = Vec<(Simplex, u32)>;

pub struct SaModel<'a> {
    sub: &'a SubobjectStructure,
    l: &'a SSet,
    decomps: &'a [Vec<usize>],
    points: Vec<Vec<Simplex>>,
}

impl<'a> SaModel<'a> {
    pub fn new(sub: &'a SubobjectStructure, l: &'a SSet, decomps: &'a [Vec<usize>], top: usize) -> Self {
        let points = (0..=top)
            .map(|m| points(l, m).into_iter().filter(|p| !l.is_base(p)).collect())
            .collect();
        Self { sub, l, decomps, points }
    }

    /// Ordered tuples of distinct points, an upper bound for the cell count.
    fn estimate(&self) -> u128 {
        let mut total = 0u128;
        for pts in &self.points {
            for d in self.decomps {
                let n = pts.len() as u128;
                let r = d.len() as u128;
                if r <= n {
                    total = total.saturating_add(((n - r + 1)..=n).product());
                }
            }
        }
        total
    }
}

impl SimplicialModel for SaModel<'_> {
    type Simplex = SaSimplex;

    fn nondegenerate(&self, m: usize) -> Vec<SaSimplex> {
        let mut out = Vec::new();
        if m == 0 {
            out.push(vec![]);
        }
        let Some(pts) = self.points.get(m) else { return out };
        for parts in self.decomps {
            let mut chosen: Vec<Simplex> = Vec::with_capacity(parts.len());
            fn rec(
                pts: &[Simplex],
                parts: &[usize],
                chosen: &mut Vec<Simplex>,
                acc: u32,
                out: &mut Vec<SaSimplex>,
            ) {
                if chosen.len() == parts.len() {
                    if acc == 0 {
                        let mut x: SaSimplex =
                            chosen.iter().zip(parts).map(|(&p, &a)| (p, a as u32)).collect();
                        x.sort_unstable();
                        out.push(x);
                    }
                    return;
                }
                for p in pts {
                    if chosen.contains(p) {
                        continue;
                    }
                    chosen.push(*p);
                    rec(pts, parts, chosen, acc & p.mask, out);
                    chosen.pop();
                }
            }
            rec(pts, parts, &mut chosen, (1u32 << m) - 1, &mut out);
        }
        out
    }

    fn face(&self, x: &SaSimplex, _m: usize, i: usize) -> SaSimplex {
        let mut moved: Vec<(Simplex, u32)> = Vec::with_capacity(x.len());
        for &(p, a) in x {
            let q = self.l.face_of(p, i);
            if self.l.is_base(&q) {
                return vec![];
            }
            moved.push((q, a));
        }
        moved.sort_unstable();
        let mut out: SaSimplex = Vec::with_capacity(moved.len());
        for (q, a) in moved {
            match out.last_mut() {
                Some(last) if last.0 == q => {
                    let s = self.sub.relplus(last.1 as usize, a as usize).expect("parts of a decomposition add");
                    last.1 = s as u32;
                }
                _ => out.push((q, a)),
            }
        }
        out
    }

    fn normalize(&self, x: &SaSimplex, m: usize) -> (SaSimplex, u32) {
        let full = (1u32 << m) - 1;
        if x.is_empty() {
            return (vec![], full);
        }
        let common = x.iter().fold(full, |acc, (p, _)| acc & p.mask);
        let y = x
            .iter()
            .map(|&(p, a)| (Simplex { mask: crate::sset::surj::compress(p.mask, common, m), ..p }, a))
            .collect();
        (y, common)
    }

    fn basepoint(&self) -> Option<SaSimplex> {
        Some(vec![])
    }

    fn dimension_bound(&self) -> Option<usize> {
        if self.l.truncation().is_some() {
            return None;
        }
        let parts = self.decomps.iter().map(Vec::len).max().unwrap_or(0);
        Some(parts * self.l.top_dim())
    }
}

/// `S_A(L)` with its decomposition valuation.
#[derive(Debug, Clone)]
pub struct SaEvaluation {
    pub decomp: DecompPoset,
    pub built: BuiltSSet<SaSimplex>,
    pub valuation: Valuation,
    lookup: HashMap<Vec<usize>, usize>,
}

impl SaEvaluation {
    pub fn sset(&self) -> &SSet {
        &self.built.sset
    }

    /// `δ(x)`: the decomposition formed by the nonzero entries.
    pub fn delta(&self, x: &SaSimplex) -> Option<usize> {
        delta_in(&self.lookup, x)
    }

    pub fn homology(&self) -> Result<HomologyReport> {
        homology(&self.built.sset.normalized_chains(true)?, Coeff::Z)
    }
}

fn delta_in(lookup: &HashMap<Vec<usize>, usize>, x: &SaSimplex) -> Option<usize> {
    if x.is_empty() {
        return None;
    }
    let mut parts: Vec<usize> = x.iter().map(|&(_, a)| a as usize).collect();
    parts.sort_unstable();
    Some(lookup[&parts])
}

/// Builds `S_A(L)` through dimension `D + 1`, or completely.
pub fn sa_of(sub: &SubobjectStructure, l: &SSet, truncation: Option<usize>) -> Result<SaEvaluation> {
    if l.basepoint().is_none() {
        return Err(Error::InvalidInput("S_A is evaluated on pointed simplicial sets".into()));
    }
    let decomp = decomposition_poset(sub, false, false)?;
    let top = {
        let probe = SaModel::new(sub, l, &decomp.parts, 0);
        match (truncation, probe.dimension_bound()) {
            (Some(d), Some(b)) => (d + 1).min(b),
            (Some(d), None) => d + 1,
            (None, Some(b)) => b,
            (None, None) => {
                return Err(Error::InvalidInput("truncation required for a truncated input".into()))
            }
        }
    };
    if let Some(t) = l.truncation() {
        if top > t + 1 {
            return Err(Error::TruncationExceeded(format!(
                "input valid through dimension {}, {top} needed",
                t + 1
            )));
        }
    }
    let model = SaModel::new(sub, l, &decomp.parts, top);
    let estimate = model.estimate();
    if estimate > cell_cap() {
        return Err(Error::ResourceCap(format!("about {estimate} candidate simplices")));
    }
    let built = BuiltSSet::build(&model, truncation)?;
    let lookup = decomp.lookup();
    let values = built
        .cells
        .iter()
        .map(|level| level.iter().map(|x| delta_in(&lookup, x).map(|v| v as u32)).collect())
        .collect();
    let valuation = Valuation::new(&built.sset, decomp.poset.clone(), values)?;
    Ok(SaEvaluation { decomp, built, valuation, lookup })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SphereModel {
    /// `(S¹)^{∧k}`.
    Smash,
    /// `Δ[k]/∂Δ[k]`.
    Minimal,
}

pub fn sphere_model(k: usize, model: SphereModel) -> SSet {
    match model {
        SphereModel::Smash => sphere(k),
        SphereModel::Minimal => minimal_sphere(k),
    }
}

/// `S_A(S^k)` through dimension `D + 1`.
pub fn evaluate_at_sphere(
    sub: &SubobjectStructure,
    k: usize,
    model: SphereModel,
    truncation: Option<usize>,
) -> Result<SaEvaluation> {
    sa_of(sub, &sphere_model(k, model), truncation)
}

/// Checks `δ(d_i x) ≤ δ(x)` and `δ(s_j x) = δ(x)` on every nondegenerate
/// simplex, directly on model simplices; returns the number of checks.
pub fn audit_delta(sub: &SubobjectStructure, l: &SSet, eval: &SaEvaluation) -> Result<usize> {
    let model = SaModel::new(sub, l, &eval.decomp.parts, eval.built.cells.len());
    let poset = &eval.decomp.poset;
    let le = |a: Option<usize>, b: Option<usize>| match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => poset.leq(a, b),
    };
    let checks: Result<Vec<usize>> = eval
        .built
        .cells
        .par_iter()
        .enumerate()
        .flat_map_iter(|(m, level)| level.iter().map(move |x| (m, x)))
        .map(|(m, x)| {
            let v = eval.delta(x);
            if v.is_none() != x.is_empty() {
                return Err(Error::InvalidValuation(format!("{x:?}: only the basepoint maps to +")));
            }
            let mut n = 0;
            if m > 0 {
                for i in 0..=m {
                    let f = model.face(x, m, i);
                    if !le(eval.delta(&f), v) {
                        return Err(Error::InvalidValuation(format!("d_{i} raises δ at {x:?}")));
                    }
                    n += 1;
                }
            }
            for j in 0..=m {
                let s: SaSimplex = x.iter().map(|&(p, a)| (l.degeneracy_of(p, j), a)).collect();
                if eval.delta(&s) != v {
                    return Err(Error::InvalidValuation(format!("s_{j} changes δ at {x:?}")));
                }
                let (core, mask) = model.normalize(&s, m + 1);
                if &core != x || mask != 1 << j {
                    return Err(Error::SimplicialIdentity(format!("s_{j} of {x:?} does not normalize back")));
                }
                n += 1;
            }
            Ok(n)
        })
        .collect();
    Ok(checks?.into_iter().sum())
}

/// `F_topS_A(L) = S_A(L)` and `F_{<p} = ⋃_{q<p} F_q` for every `p`.
pub fn union_property(eval: &SaEvaluation) -> bool {
    let nu = &eval.valuation;
    let poset = nu.poset();
    let tops = poset.maximal_elements();
    let all_top = nu.values().iter().flatten().all(|v| v.is_none_or(|v| tops.iter().any(|&t| poset.leq(v as usize, t))));
    let unions = (0..poset.len()).all(|p| {
        let strict = nu.level_cells(p, true);
        let below: Vec<Vec<Vec<bool>>> =
            (0..poset.len()).filter(|&q| poset.lt(q, p)).map(|q| nu.level_cells(q, false)).collect();
        strict.iter().enumerate().all(|(d, row)| {
            row.iter().enumerate().all(|(c, &inside)| {
                let in_union = d == 0 && eval.sset().basepoint() == Some(c as u32)
                    || below.iter().any(|lvl| lvl[d][c]);
                inside == in_union
            })
        })
    });
    all_top && unions
}

/// `Aut(A)` generator `g` maps simplices to simplices and `δ(gx) = gδ(x)`.
pub fn delta_equivariant(sub: &SubobjectStructure, eval: &SaEvaluation, g: usize) -> bool {
    let lookup = &eval.lookup;
    eval.built.cells.par_iter().enumerate().all(|(m, level)| {
        level.iter().all(|x| {
            let mut y: SaSimplex = x.iter().map(|&(p, a)| (p, sub.act(g, a as usize) as u32)).collect();
            y.sort_unstable();
            if eval.built.lookup(m, &y).is_none() {
                return false;
            }
            match eval.delta(x) {
                None => y.is_empty(),
                Some(d) => {
                    let mut gd: Vec<usize> = eval.decomp.parts[d].iter().map(|&a| sub.act(g, a)).collect();
                    gd.sort_unstable();
                    lookup.get(&gd) == eval.delta(&y).as_ref()
                }
            }
        })
    })
}

/// Result of comparing `F_pS_A(L)` with `L^{∧p}`.
#[derive(Debug, Clone, Serialize)]
pub struct LevelCheck {
    pub decomposition: String,
    pub parts: usize,
    pub counts: Vec<usize>,
    /// Cellwise bijection commuting with all faces.
    pub isomorphism: bool,
    /// `δ` pulled back to `L^{∧p}` is a valuation with values `≤ p`.
    pub valuation_transport: bool,
    pub first_mismatch: Option<String>,
}

impl LevelCheck {
    pub fn passed(&self) -> bool {
        self.isomorphism && self.valuation_transport
    }
}

/// Builds `L^{∧p}` and `F_pS_A(L)` and checks the map
/// `(ℓ_i)_i ↦ {(ℓ, ⊞_{ℓ_i = ℓ} A_i)}` is an isomorphism of simplicial sets.
pub fn level_analysis_check(
    sub: &SubobjectStructure,
    eval: &SaEvaluation,
    l: &SSet,
    p: usize,
    truncation: Option<usize>,
) -> Result<LevelCheck> {
    let parts = &eval.decomp.parts[p];
    let label = eval.decomp.poset.label(p).to_string();
    let (fp, old_ids) = crate::sset::filtration_level(eval.sset(), &eval.valuation, p, false)?;
    let mut new_id: Vec<HashMap<u32, u32>> = Vec::new();
    for ids in &old_ids {
        new_id.push(ids.iter().enumerate().map(|(n, &o)| (o, n as u32)).collect());
    }
    let lp = smash_power(l, parts.len(), SmashMode::Ordinary, truncation)?;
    let mismatch = |msg: String| LevelCheck {
        decomposition: label.clone(),
        parts: parts.len(),
        counts: lp.sset.counts().to_vec(),
        isomorphism: false,
        valuation_transport: false,
        first_mismatch: Some(msg),
    };
    let trim = |c: &[usize]| {
        let n = c.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
        c[..n].to_vec()
    };
    if trim(lp.sset.counts()) != trim(fp.counts()) {
        return Ok(mismatch(format!(
            "cell counts differ: L^∧p has {:?}, F_p has {:?}",
            lp.sset.counts(),
            fp.counts()
        )));
    }
    // φ on nondegenerate cells
    let mut phi: Vec<Vec<u32>> = Vec::with_capacity(lp.cells.len());
    for (m, level) in lp.cells.iter().enumerate() {
        let mut row = Vec::with_capacity(level.len());
        let mut seen = vec![false; fp.count(m)];
        for t in level {
            let mut x: SaSimplex = t.iter().zip(parts).map(|(&q, &a)| (q, a as u32)).collect();
            x.sort_unstable();
            let mut merged: SaSimplex = Vec::with_capacity(x.len());
            for (q, a) in x {
                match merged.last_mut() {
                    Some(last) if last.0 == q => {
                        last.1 = sub.relplus(last.1 as usize, a as usize).expect("parts add") as u32;
                    }
                    _ => merged.push((q, a)),
                }
            }
            let Some(old) = eval.built.lookup(m, &merged) else {
                return Ok(mismatch(format!("{t:?} has no nondegenerate image")));
            };
            let Some(&n) = new_id[m].get(&old) else {
                return Ok(mismatch(format!("image of {t:?} lies outside F_p")));
            };
            if std::mem::replace(&mut seen[n as usize], true) {
                return Ok(mismatch(format!("two cells map to {merged:?}")));
            }
            row.push(n);
        }
        phi.push(row);
    }
    for m in 1..lp.cells.len() {
        for c in 0..lp.cells[m].len() as u32 {
            for i in 0..=m {
                let f = lp.sset.face(m, c, i);
                let image = Simplex { cell: phi[f.dim as usize][f.cell as usize], ..f };
                let target = fp.face(m, phi[m][c as usize], i);
                if image != target {
                    return Ok(mismatch(format!("d_{i} of {:?} does not commute", lp.cells[m][c as usize])));
                }
            }
        }
    }
    let values: Vec<Vec<Option<u32>>> = phi
        .iter()
        .enumerate()
        .map(|(m, row)| row.iter().map(|&n| eval.valuation.value(m, old_ids[m][n as usize])).collect())
        .collect();
    let below_p = values.iter().flatten().all(|v| v.is_none_or(|v| eval.decomp.poset.leq(v as usize, p)));
    let transport = below_p && Valuation::new(&lp.sset, eval.decomp.poset.clone(), values).is_ok();
    Ok(LevelCheck {
        decomposition: label,
        parts: parts.len(),
        counts: lp.sset.counts().to_vec(),
        isomorphism: true,
        valuation_transport: transport,
        first_mismatch: (!transport).then(|| "transported δ is not a valuation below p".to_string()),
    })
}

/// Fat diagonal in `(S^k)^{∧n}`, built completely.
pub fn fat_diagonal(n: usize, k: usize, truncation: Option<usize>) -> Result<BuiltSSet<Vec<Simplex>>> {
    if n * k > 9 {
        return Err(Error::ResourceCap(format!("nk = {} exceeds 9", n * k)));
    }
    fat_diagonal_model(&sphere(k), n, truncation)
}

/// Reduced homology of `Σ′N Decomp°_A`.
pub fn ksa_prediction(sub: &SubobjectStructure) -> Result<HomologyReport> {
    let d = decomposition_poset(sub, false, true)?;
    let s = suspension_prime(&d.poset.nerve());
    homology(&s.normalized_chains(true)?, Coeff::Z)
}

#[derive(Debug, Clone, Serialize)]
pub struct KsaDegree {
    pub degree: isize,
    pub computed: (usize, Vec<u64>),
    pub predicted: (usize, Vec<u64>),
}

#[derive(Debug, Clone, Serialize)]
pub struct KsaCheck {
    pub instance: String,
    pub k: usize,
    pub trusted_through: isize,
    pub homology: HomologyReport,
    pub window: Vec<KsaDegree>,
    pub matched: bool,
}

/// Compares `H̃_{i+k}(S_A(S^k))` with `H̃_i(Σ′N Decomp°_A)` for `i ≤ k − 1`
/// within the trusted degrees.
pub fn ksa_check(
    sub: &SubobjectStructure,
    k: usize,
    model: SphereModel,
    truncation: Option<usize>,
) -> Result<KsaCheck> {
    let eval = evaluate_at_sphere(sub, k, model, truncation)?;
    ksa_window(sub, k, eval.homology()?)
}

/// The window comparison for an already computed `H̃_*(S_A(S^k))`.
pub fn ksa_window(sub: &SubobjectStructure, k: usize, h: HomologyReport) -> Result<KsaCheck> {
    let pred = ksa_prediction(sub)?;
    let window: Vec<KsaDegree> = (0..k as isize)
        .filter(|&i| i + k as isize <= h.trusted_through)
        .map(|i| KsaDegree {
            degree: i + k as isize,
            computed: (h.betti(i + k as isize), h.torsion(i + k as isize).to_vec()),
            predicted: (pred.betti(i), pred.torsion(i).to_vec()),
        })
        .collect();
    let matched = window.iter().all(|d| d.computed == d.predicted);
    Ok(KsaCheck {
        instance: sub.instance().to_string(),
        k,
        trusted_through: h.trusted_through,
        homology: h,
        window,
        matched,
    })
}

/// `Dec_n = H̃_{n−2}(N Decomp°_A; Q)` with the dimension of its
/// `Aut(A)`-coinvariants.
#[derive(Debug, Clone, Serialize)]
pub struct DecColumn {
    pub instance: String,
    pub n: usize,
    pub dim_dec: usize,
    pub dim_coinvariants: usize,
    pub note: &'static str,
}

pub const COINVARIANTS_NOTE: &str =
    "rational H_0 proxy; higher group homology vanishes rationally for finite groups";

pub fn dec_column(sub: &SubobjectStructure) -> Result<DecColumn> {
    let n = sub.instance().rank_of_ambient();
    let d = decomposition_poset(sub, false, true)?;
    let column = |dim_dec, dim_coinvariants| DecColumn {
        instance: sub.instance().to_string(),
        n,
        dim_dec,
        dim_coinvariants,
        note: COINVARIANTS_NOTE,
    };
    if d.is_empty() {
        // H̃_{−1} of the empty nerve, with trivial action
        return Ok(column(1, 1));
    }
    let top = n.checked_sub(2).ok_or_else(|| Error::InvalidInput("rank 0".into()))?;
    let chains = d.poset.chains();
    if chains.len() != top + 1 {
        return Err(Error::AssertionFailure(format!(
            "Decomp° nerve has dimension {}, expected {top}",
            chains.len() - 1
        )));
    }
    // chains oriented by the order, so automorphisms act without signs
    let simplices = &chains[top];
    let rows: Vec<linalg::Vector> = if top == 0 {
        vec![vec![num_rational::BigRational::from_integer(1.into()); simplices.len()]]
    } else {
        let faces: HashMap<&[usize], usize> =
            chains[top - 1].iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
        let mut dense = vec![vec![0i64; simplices.len()]; faces.len()];
        for (j, c) in simplices.iter().enumerate() {
            for i in 0..c.len() {
                let mut f = c.clone();
                f.remove(i);
                dense[faces[f.as_slice()]][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        linalg::from_ints(&dense)
    };
    let cycles = linalg::kernel(&rows, simplices.len());
    let index: HashMap<&[usize], usize> = simplices.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let lookup = d.lookup();
    let mut relations = Vec::new();
    for g in 0..sub.aut().actions().len() {
        let elem: Vec<usize> = d
            .parts
            .iter()
            .map(|p| {
                let mut q: Vec<usize> = p.iter().map(|&a| sub.act(g, a)).collect();
                q.sort_unstable();
                lookup[&q]
            })
            .collect();
        let perm: Vec<usize> = simplices
            .iter()
            .map(|c| {
                let image: Vec<usize> = c.iter().map(|&x| elem[x]).collect();
                index[image.as_slice()]
            })
            .collect();
        for z in &cycles {
            let mut gz = vec![num_rational::BigRational::from_integer(0.into()); z.len()];
            for (j, x) in z.iter().enumerate() {
                gz[perm[j]] += x;
            }
            relations.push(gz.iter().zip(z).map(|(a, b)| a - b).collect());
        }
    }
    let dim = cycles.len();
    Ok(column(dim, dim - linalg::rank(&relations)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addcat::Instance;

    fn vect(n: usize, q: u32) -> SubobjectStructure {
        SubobjectStructure::new(Instance::Vect { n, q }).unwrap()
    }

    fn finset(n: usize) -> SubobjectStructure {
        SubobjectStructure::new(Instance::FinSet { n }).unwrap()
    }

    #[test]
    fn element_counts() {
        let v = vect(2, 2);
        assert_eq!(sa_elements_le(&v, 2).unwrap().len(), 15);
        assert_eq!(sa_elements_le(&v, 0).unwrap(), vec![Vec::<u32>::new()]);
        assert_eq!(sa_elements(&v, 0).unwrap(), vec![None]);
        assert_eq!(sa_elements(&v, 2).unwrap().len(), 9);
    }

    #[test]
    fn fold_map_adds() {
        let v = vect(2, 2);
        let lines: Vec<u32> = v.nonzero().into_iter().filter(|&x| v.rank(x) == 1).map(|x| x as u32).collect();
        let folded = gamma_map(&v, &[lines[0], lines[1]], &[Some(0), Some(0)], 1).unwrap();
        assert_eq!(folded, vec![v.top() as u32]);
    }

    #[test]
    fn rank_one_gives_sphere() {
        let v = vect(1, 2);
        let e = evaluate_at_sphere(&v, 2, SphereModel::Smash, None).unwrap();
        assert_eq!(e.sset().counts(), sphere(2).counts());
    }

    #[test]
    fn finite_sets_predict_nothing() {
        assert!(ksa_prediction(&finset(3)).unwrap().is_zero());
    }
}
