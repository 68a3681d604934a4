//! Verification suites. Each returns one record per checked claim; chain
//! complexes built along the way are audited into the `infra` suite.

use std::time::Instant;

use clap::ValueEnum;
use decomplab_core::addcat::{Instance, SubobjectStructure};
use decomplab_core::decomp::{decomposition_poset, deorder_report, permutahedron_poset};
use decomplab_core::gamma::{
    audit_delta, dec_column, evaluate_at_sphere, fat_diagonal, ksa_window, level_analysis_check, sa_of,
    union_property, SphereModel,
};
use decomplab_core::homology::snf::{smith_certificate, verify_certificate, CERTIFICATE_CAP};
use decomplab_core::homology::{
    chains_of_complex, homology, uct_consistent, ChainComplex, Coeff, HomologyReport,
};
use decomplab_core::oracles::{bell, fat_diagonal_ranks, gaussian_binomial, steinberg_rank};
use decomplab_core::rognes::{cbc_vs_spanning_check, split_tits_building, subdivision_iso_check, tits_building, Minimality};
use decomplab_core::sset::{circle, mv_blowup, sphere};
use decomplab_core::SimplicialComplex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::report::{stamp, Provenance, Record};

use Provenance::{Derived, Published, Trivial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Partition posets are contractible.
    Bpq,
    /// Fat diagonals against configuration-space cohomology.
    Fatdiag,
    /// Decomp° over finite fields is a wedge of (n−2)-spheres.
    Welker,
    /// Ordered and unordered decomposition posets; permutahedra.
    Deorder,
    /// Split buildings against ordered decompositions; Steinberg ranks.
    Buildings,
    /// F_pS_A(L) ≅ L^∧p.
    Level,
    /// Stable window of S_A(S^k).
    Ksa,
    /// Homotopy colimit of the δ-filtration.
    Blowup,
    /// Common basis complex against spanning posets.
    Rognes,
    /// Rational coinvariant columns.
    Columns,
    /// Chain-level audits on a seeded corpus.
    Infra,
    All,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::Bpq,
        Suite::Fatdiag,
        Suite::Welker,
        Suite::Deorder,
        Suite::Buildings,
        Suite::Level,
        Suite::Ksa,
        Suite::Blowup,
        Suite::Rognes,
        Suite::Columns,
        Suite::Infra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bpq => "bpq",
            Suite::Fatdiag => "fatdiag",
            Suite::Welker => "welker",
            Suite::Deorder => "deorder",
            Suite::Buildings => "buildings",
            Suite::Level => "level",
            Suite::Ksa => "ksa",
            Suite::Blowup => "blowup",
            Suite::Rognes => "rognes",
            Suite::Columns => "columns",
            Suite::Infra => "infra",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteOptions {
    pub stretch: bool,
    pub timing: bool,
    pub seed: u64,
}

pub fn run_suite(suite: Suite, opts: SuiteOptions) -> Result<Vec<Record>> {
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run_suite(s, opts)?);
            }
            Ok(out)
        }
        Suite::Bpq => bpq(opts),
        Suite::Fatdiag => fatdiag(opts),
        Suite::Welker => welker(opts),
        Suite::Deorder => deorder(opts),
        Suite::Buildings => buildings(opts),
        Suite::Level => level(opts),
        Suite::Ksa => ksa(opts),
        Suite::Blowup => blowup(opts),
        Suite::Rognes => rognes(opts),
        Suite::Columns => columns(opts),
        Suite::Infra => infra(opts),
    }
}

/// Runs independent units in parallel, keeping their order.
fn units<T, F>(items: Vec<T>, opts: SuiteOptions, f: F) -> Result<Vec<Record>>
where
    T: Send,
    F: Fn(T) -> Result<Vec<Record>> + Sync,
{
    let chunks: Result<Vec<Vec<Record>>> = items
        .into_par_iter()
        .map(|x| {
            let start = Instant::now();
            let mut out = f(x)?;
            stamp(&mut out, start, opts.timing);
            Ok(out)
        })
        .collect();
    Ok(chunks?.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
struct Audit {
    dd_zero: bool,
    euler: bool,
    uct_f2: bool,
    uct_f3: bool,
    q_ranks: bool,
    certified_boundaries: usize,
    certificates: bool,
}

/// Integral homology of `c`, with the chain-level audit record.
pub fn audited(label: &str, c: &ChainComplex) -> Result<(HomologyReport, Record)> {
    let z = homology(c, Coeff::Z)?;
    let q = homology(c, Coeff::Q)?;
    let uct = |p: u32| -> Result<bool> { Ok(uct_consistent(&z, &homology(c, Coeff::Fp(p))?, p)) };
    let mut certified = 0;
    let mut certificates = true;
    for deg in -1..=c.top_degree() {
        let Some(b) = c.boundary(deg) else { continue };
        if b.nrows() == 0 || b.ncols() == 0 || b.nrows() > CERTIFICATE_CAP || b.ncols() > CERTIFICATE_CAP {
            continue;
        }
        certified += 1;
        certificates &= verify_certificate(b, &smith_certificate(b)?);
    }
    let computed = Audit {
        dd_zero: c.dd_is_zero(),
        euler: z.euler_ok,
        uct_f2: uct(2)?,
        uct_f3: uct(3)?,
        q_ranks: z.degrees.iter().all(|d| q.betti(d.deg) == d.rank),
        certified_boundaries: certified,
        certificates,
    };
    let expected = Audit {
        dd_zero: true,
        euler: true,
        uct_f2: true,
        uct_f3: true,
        q_ranks: true,
        certified_boundaries: certified,
        certificates: true,
    };
    let rec = Record::check("infra", format!("chain-level audit of {label}"), computed, expected, Derived);
    Ok((z, rec))
}

fn complex_audited(label: &str, k: &SimplicialComplex) -> Result<(HomologyReport, Record)> {
    audited(label, &chains_of_complex(k, true))
}

fn sub(inst: Instance) -> Result<SubobjectStructure> {
    Ok(SubobjectStructure::new(inst)?)
}

fn vect(n: usize, q: u32) -> Instance {
    Instance::Vect { n, q }
}

type Betti = Vec<(isize, usize, Vec<u64>)>;

fn bpq(opts: SuiteOptions) -> Result<Vec<Record>> {
    const S: &str = "bpq";
    units((1..=5usize).collect(), opts, |n| {
        let d = decomposition_poset(&sub(Instance::FinSet { n })?, false, true)?;
        let mut out = vec![Record::check(
            S,
            format!("Decomp°({n}-set) has Bell({n}) − 1 elements"),
            d.len() as u128,
            bell(n) - 1,
            Derived,
        )];
        if n == 1 {
            out.push(Record::check(S, "Decomp°(1-set) is empty", d.is_empty(), true, Trivial));
        } else {
            let (h, audit) = complex_audited(&format!("N Decomp°({n}-set)"), &d.poset.nerve())?;
            out.push(Record::check(
                S,
                format!("N Decomp°({n}-set) has vanishing reduced homology"),
                h.nonzero(),
                Betti::new(),
                Published,
            ));
            out.push(audit);
        }
        Ok(out)
    })
}

fn fatdiag(opts: SuiteOptions) -> Result<Vec<Record>> {
    const S: &str = "fatdiag";
    units(vec![(2usize, 2usize), (2, 3), (3, 2)], opts, |(n, k)| {
        let fd = fat_diagonal(n, k, None)?;
        let label = format!("fat diagonal in (S^{k})^∧{n}");
        let (h, audit) = audited(&label, &fd.sset.normalized_chains(true)?)?;
        let ranks: Vec<(isize, u64)> = h.nonzero().iter().map(|(d, r, _)| (*d, *r as u64)).collect();
        let lowest = h.nonzero().first().map(|x| x.0);
        Ok(vec![
            Record::check(
                S,
                format!("H̃_*({label}) is Alexander dual to H̃^*(Conf_{n}(R^{k}))"),
                ranks,
                fat_diagonal_ranks(n, k),
                Derived,
            ),
            Record::check(S, format!("H̃_*({label}) is free"), h.nonzero().iter().all(|x| x.2.is_empty()), true, Published),
            Record::check(S, format!("lowest nonzero degree of {label} is n + k − 2"), lowest, Some((n + k - 2) as isize), Published),
            audit,
        ])
    })
}

fn welker(opts: SuiteOptions) -> Result<Vec<Record>> {
    const S: &str = "welker";
    units(vec![(2usize, 2u32), (2, 3), (2, 5), (3, 2), (3, 3)], opts, |(n, q)| {
        let d = decomposition_poset(&sub(vect(n, q))?, false, true)?;
        let label = format!("N Decomp°(F_{q}^{n})");
        let (h, audit) = complex_audited(&label, &d.poset.nerve())?;
        let support: Vec<(isize, Vec<u64>)> = h.nonzero().into_iter().map(|(d, _, t)| (d, t)).collect();
        let mut out = vec![Record::check(
            S,
            format!("{label} is free and concentrated in degree n − 2"),
            support,
            vec![(n as isize - 2, Vec::new())],
            Published,
        )];
        if n == 2 {
            // unordered complementary line pairs
            let pairs = gaussian_binomial(2, 1, q as u128) * q as u128 / 2;
            out.push(Record::check(
                S,
                format!("rank H̃_0({label}) = complementary line pairs − 1"),
                h.betti(0) as u128,
                pairs - 1,
                Derived,
            ));
        }
        out.push(audit);
        Ok(out)
    })
}

fn deorder(opts: SuiteOptions) -> Result<Vec<Record>> {
    const S: &str = "deorder";
    let mut out = units(vec![(2usize, 2u32), (2, 3), (2, 5), (3, 2), (3, 3)], opts, |(n, q)| {
        let s = sub(vect(n, q))?;
        let r = deorder_report(&s)?;
        let ord = decomposition_poset(&s, true, true)?;
        let (_, audit) = complex_audited(&format!("N Decomp^ord°(F_{q}^{n})"), &ord.poset.nerve())?;
        Ok(vec![
            Record::check(
                S,
                format!("longest chains in Decomp and Decomp^ord of F_{q}^{n} have length n − 1"),
                (r.unordered.longest_chain, r.ordered.longest_chain),
                (Some(n - 1), Some(n - 1)),
                Published,
            ),
            Record::check(
                S,
                format!("ordered and unordered wedge verdicts agree in degree n − 2 for F_{q}^{n}"),
                r.ordered.verdict,
                r.unordered.verdict,
                Published,
            ),
            Record::check(
                S,
                format!("chain lifting, t-function and connectivity ingredients hold for F_{q}^{n}"),
                r.passed(),
                true,
                Derived,
            ),
            audit,
        ])
    })?;
    out.extend(units(vec![2usize, 3, 4], opts, |m| {
        let p = permutahedron_poset(m)?;
        let label = format!("permutahedron poset, m = {m}");
        let (h, audit) = complex_audited(&label, &p.nerve())?;
        Ok(vec![
            Record::check(S, format!("{label} has the homology of S^{}", m - 2), h.nonzero(), vec![(m as isize - 2, 1, vec![])], Published),
            audit,
        ])
    })?);
    Ok(out)
}

fn buildings(opts: SuiteOptions) -> Result<Vec<Record>> {
    const S: &str = "buildings";
    let mut out = units(vec![(2usize, 2u32), (2, 3), (3, 2)], opts, |(n, q)| {
        let c = subdivision_iso_check(n, q)?;
        let (_, audit) = complex_audited(&format!("split building of F_{q}^{n}"), &split_tits_building(n, q)?)?;
        Ok(vec![
            Record::check(
                S,
                format!("sd(split building of F_{q}^{n}) ≅ N (Decomp^ord)° simplexwise"),
                c.passed(),
                true,
                Published,
            ),
            Record::check(
                S,
                format!("f-vectors of sd(split building) and N (Decomp^ord)° for F_{q}^{n}"),
                c.f_vector_subdivision,
                c.f_vector_nerve,
                Derived,
            ),
            audit,
        ])
    })?;
    out.extend(units(vec![(3usize, 2u32), (3, 3)], opts, |(n, q)| {
        let label = format!("Tits building of F_{q}^{n}");
        let (h, audit) = complex_audited(&label, &tits_building(n, q)?)?;
        let want = steinberg_rank(n as u32, q as u128) as usize;
        Ok(vec![
            Record::check(S, format!("H̃_*({label}) is Z^(q^(n(n−1)/2)) in degree n − 2"), h.nonzero(), vec![(n as isize - 2, want, vec![])], Published),
            audit,
        ])
    })?);
    Ok(out)
}

fn level(opts: SuiteOptions) -> Result<Vec<Record>> {
    const S: &str = "level";
    let cases: Vec<(Instance, usize)> = [vect(2, 2), Instance::FinSet { n: 3 }]
        .into_iter()
        .flat_map(|a| [(a, 1), (a, 2)])
        .collect();
    units(cases, opts, |(inst, k)| {
        let s = sub(inst)?;
        let (l, trunc) = if k == 1 { (circle(), None) } else { (sphere(2), Some(5)) };
        let lname = if k == 1 { "S¹".to_string() } else { "S² (trunc 5)".to_string() };
        let e = sa_of(&s, &l, trunc)?;
        let mut out = Vec::new();
        for p in 0..e.decomp.len() {
            let c = level_analysis_check(&s, &e, &l, p, trunc)?;
            out.push(Record::judged(
                S,
                format!("F_pS_A(L) ≅ L^∧p for A = {inst}, L = {lname}, p = {}", c.decomposition),
                &c.passed(),
                &true,
                Published,
                c.passed(),
            ));
        }
        out.push(Record::check(S, format!("union property of the δ-filtration of S_A({lname}), A = {inst}"), union_property(&e), true, Published));
        let checks = audit_delta(&s, &l, &e)?;
        out.push(Record::judged("infra", format!("δ face/degeneracy laws on S_A({lname}), A = {inst}"), &checks, &"> 0", Derived, checks > 0));
        let (_, audit) = audited(&format!("S_A({lname}), A = {inst}"), &e.sset().normalized_chains(true)?)?;
        out.push(audit);
        Ok(out)
    })
}

fn ksa(opts: SuiteOptions) -> Result<Vec<Record>> {
    const S: &str = "ksa";
    let cases: Vec<(Instance, usize)> = [vect(2, 2), Instance::FinSet { n: 3 }, Instance::FinSet { n: 4 }]
        .into_iter()
        .flat_map(|a| (1..=3).map(move |k| (a, k)))
        .collect();
    units(cases, opts, |(inst, k)| {
        let s = sub(inst)?;
        let model = SphereModel::Minimal;
        let e = evaluate_at_sphere(&s, k, model, Some(2 * k))?;
        let label = format!("S_A(S^{k}), A = {inst}");
        let (h, audit) = audited(&label, &e.sset().normalized_chains(true)?)?;
        let c = ksa_window(&s, k, h)?;
        let computed: Vec<_> = c.window.iter().map(|d| (d.degree, d.computed.clone())).collect();
        let predicted: Vec<_> = c.window.iter().map(|d| (d.degree, d.predicted.clone())).collect();
        let sphere_l = decomplab_core::gamma::sphere_model(k, model);
        let checks = audit_delta(&s, &sphere_l, &e)?;
        Ok(vec![
            Record::check(S, format!("H̃_(i+k)({label}) = H̃_i(Σ′N Decomp°_A) for i ≤ k − 1"), computed, predicted, Published),
            Record::check(S, format!("stable window of {label} is nonempty within trusted degrees"), c.window.len(), k, Trivial),
            Record::judged("infra", format!("δ face/degeneracy laws on {label}"), &checks, &"> 0", Derived, checks > 0),
            audit,
        ])
    })
}

fn blowup(opts: SuiteOptions) -> Result<Vec<Record>> {
    const S: &str = "blowup";
    units(vec![vect(2, 2), Instance::FinSet { n: 3 }], opts, |inst| {
        let s = sub(inst)?;
        let e = sa_of(&s, &circle(), None)?;
        let b = mv_blowup(e.sset(), &e.valuation, None)?;
        let (_, a1) = audited(&format!("S_A(S¹), A = {inst}"), &e.sset().normalized_chains(true)?)?;
        let (_, a2) = audited(
            &format!("diagonal of the replacement over Decomp_A, A = {inst}"),
            &b.diagonal_sset.normalized_chains(true)?,
        )?;
        Ok(vec![
            Record::check(
                S,
                format!("hocolim of the δ-filtration has the homology of S_A(S¹), A = {inst}"),
                b.diagonal.nonzero(),
                b.space.nonzero(),
                Published,
            ),
            a1,
            a2,
        ])
    })
}

fn rognes(opts: SuiteOptions) -> Result<Vec<Record>> {
    let mut cases = vec![(1usize, 2u32, "rognes"), (2, 2, "rognes"), (2, 3, "rognes")];
    if opts.stretch {
        cases.push((3, 2, "rognes-stretch"));
    }
    units(cases, opts, |(k, q, suite)| {
        let c = cbc_vs_spanning_check(k, q, Minimality::DownwardClosed)?;
        let tag = format!("k = {k}, q = {q}");
        let top = 2 * k as isize - 3;
        let dim = c.nerve_dim.map_or(-1, |d| d as isize);
        let degrees: Vec<isize> = c.cbc.nonzero().iter().map(|x| x.0).collect();
        let (_, a1) = complex_audited(&format!("common basis complex, {tag}"), &c.cbc_complex)?;
        let (_, a2) = complex_audited(&format!("N P°, {tag}"), &c.nerve)?;
        Ok(vec![
            Record::check(
                suite,
                format!("H̃_*(Σ′C_k) = H̃_*(Σ′N P°), {tag}"),
                c.suspended_spanning.nonzero(),
                c.suspended_cbc.nonzero(),
                Published,
            ),
            Record::judged(suite, format!("dim N P° ≤ 2k − 3, {tag}"), &dim, &format!("<= {top}"), Published, dim <= top),
            Record::judged(
                suite,
                format!("H̃_*(C_k) lies in degrees [k − 1, 2k − 2], {tag}"),
                &degrees,
                &(k as isize - 1, 2 * k as isize - 2),
                Published,
                c.cbc_window_ok,
            ),
            Record::check(
                suite,
                format!("size function strictly monotone on P°, {tag}"),
                c.size_violations.len(),
                0,
                Published,
            ),
            Record::report(
                suite,
                format!("N P° is a wedge of (2k − 3)-spheres, {tag} (reported)"),
                &(c.wedge_in_top_degree, &c.np_profile),
                Published,
            ),
            a1,
            a2,
        ])
    })
}

fn columns(opts: SuiteOptions) -> Result<Vec<Record>> {
    const S: &str = "columns";
    let mut out = units(vec![2u32, 3], opts, |q| {
        let c = dec_column(&sub(vect(2, q))?)?;
        let pairs = gaussian_binomial(2, 1, q as u128) * q as u128 / 2;
        Ok(vec![
            Record::check(S, format!("dim Dec_2 over F_{q}"), c.dim_dec as u128, pairs - 1, Derived),
            Record::check(
                S,
                format!("GL_2(F_{q})-coinvariants of Dec_2 vanish (consistent with K_*(F_{q}) ⊗ Q = 0 in positive degrees)"),
                c.dim_coinvariants,
                0,
                Published,
            ),
        ])
    })?;
    out.extend(units(vec![(3usize, 2u32)], opts, |(n, q)| {
        let c = dec_column(&sub(vect(n, q))?)?;
        Ok(vec![Record::report(S, format!("dim Dec_{n} and coinvariants over F_{q}"), &(c.dim_dec, c.dim_coinvariants), Derived)])
    })?);
    Ok(out)
}

/// A random complex on at most 7 vertices.
fn random_complex(rng: &mut ChaCha8Rng) -> Result<SimplicialComplex> {
    let n = rng.gen_range(3..=7usize);
    let facets: Vec<Vec<usize>> = (0..rng.gen_range(2..=6))
        .map(|_| {
            let mask: u32 = rng.gen_range(1..1u32 << n);
            (0..n).filter(|i| mask >> i & 1 == 1).collect()
        })
        .collect();
    let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let facets = facets
        .iter()
        .map(|f| f.iter().map(|v| used.binary_search(v).expect("used")).collect())
        .collect();
    Ok(SimplicialComplex::new(used.iter().map(|v| format!("v{v}")).collect(), facets)?)
}

fn infra(opts: SuiteOptions) -> Result<Vec<Record>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let complexes: Vec<(String, SimplicialComplex)> = (0..16)
        .map(|i| Ok((format!("random complex #{i} (seed {})", opts.seed), random_complex(&mut rng)?)))
        .collect::<Result<_>>()?;
    let mut out = units(complexes, opts, |(label, k)| Ok(vec![complex_audited(&label, &k)?.1]))?;
    out.extend(units(vec![1usize, 2, 3, 4], opts, |k| {
        let (_, a) = audited(&format!("S^{k}"), &sphere(k).normalized_chains(true)?)?;
        Ok(vec![a])
    })?);
    out.extend(units(vec![vect(2, 2), vect(2, 3), Instance::FinSet { n: 3 }], opts, |inst| {
        let s = sub(inst)?;
        let e = sa_of(&s, &circle(), None)?;
        let checks = audit_delta(&s, &circle(), &e)?;
        Ok(vec![Record::judged("infra", format!("δ face/degeneracy laws on S_A(S¹), A = {inst}"), &checks, &"> 0", Derived, checks > 0)])
    })?);
    Ok(out)
}
