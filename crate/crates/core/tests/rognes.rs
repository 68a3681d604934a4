use decomplab_core::addcat::{Instance, SubobjectStructure};
use decomplab_core::homology::complex_homology;
use decomplab_core::oracles::steinberg_rank;
use decomplab_core::rognes::*;
use decomplab_core::Error;
use proptest::prelude::*;

fn vect(k: usize, q: u32) -> SubobjectStructure {
    SubobjectStructure::new(Instance::Vect { n: k, q }).unwrap()
}

fn betti(k: &decomplab_core::SimplicialComplex) -> Vec<(isize, usize, Vec<u64>)> {
    complex_homology(k).unwrap().nonzero()
}

fn lines(sub: &SubobjectStructure) -> Vec<usize> {
    sub.nonzero().into_iter().filter(|&x| sub.rank(x) == 1).collect()
}

fn sp(sub: &SubobjectStructure, xs: &[usize]) -> SpanningPoset {
    let mut v = xs.to_vec();
    v.push(sub.zero());
    SpanningPoset::new(v)
}

/// Brute-force oracle: every proper subset containing 0, optionally only down-sets.
fn minimal_by_brute_force(sub: &SubobjectStructure, s: &SpanningPoset, down: bool) -> bool {
    let n = s.elements.len();
    (0u32..(1 << n) - 1).all(|mask| {
        let t: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s.elements[i]).collect();
        let is_down = t.iter().all(|&x| s.elements.iter().all(|&y| !sub.leq(y, x) || t.contains(&y)));
        (down && !is_down) || !is_spanning(sub, &SpanningPoset::new(t))
    })
}

#[test]
fn tits_building_matches_steinberg() {
    for (n, q) in [(3usize, 2u32), (3, 3)] {
        let want = steinberg_rank(n as u32, q as u128) as usize;
        assert_eq!(betti(&tits_building(n, q).unwrap()), vec![(n as isize - 2, want, vec![])]);
    }
    let t = tits_building(2, 2).unwrap();
    assert_eq!(t.f_vector(), vec![3]);
    assert_eq!(betti(&t), vec![(0, 2, vec![])]);
}

#[test]
fn split_building_vertex_counts() {
    // Ordered pairs of complementary lines: (q+1) choices, then q complements.
    for q in [2u32, 3] {
        let s = split_tits_building(2, q).unwrap();
        let v = ((q + 1) * q) as usize;
        assert_eq!(s.f_vector(), vec![v]);
        assert_eq!(betti(&s), vec![(0, v - 1, vec![])]);
    }
    let h = betti(&split_tits_building(3, 2).unwrap());
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].0, 1);
    assert!(h[0].2.is_empty());
}

#[test]
fn subdivision_isomorphism() {
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        let c = subdivision_iso_check(n, q).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn split_chain_errors() {
    let b = SplitBuilding::new(3, 2).unwrap();
    assert!(matches!(split_to_ordered_decomp(&b.sub, &[]), Err(Error::NotAChain(_))));
    let lo = b.splittings.iter().find(|s| b.sub.rank(s.p) == 1).unwrap();
    let hi = b.splittings.iter().find(|s| b.sub.rank(s.p) == 2 && !lo.leq(s, &b.sub)).unwrap();
    assert!(matches!(split_to_ordered_decomp(&b.sub, &[*lo, *hi]), Err(Error::NotAChain(_))));
    let up = b.splittings.iter().find(|s| lo.leq(s, &b.sub) && *s != lo).unwrap();
    let parts = split_to_ordered_decomp(&b.sub, &[*lo, *up]).unwrap();
    assert_eq!(parts.len(), 3);
    assert_eq!(parts[0], lo.p);
    assert_eq!(parts[2], up.q);
}

#[test]
fn minimal_spanning_counts_k2() {
    // Lines of F_q^2: q+1. Chains {0,L,R²} and pairs {0,L,L′}.
    for q in [2u32, 3] {
        let sub = vect(2, q);
        let min = enumerate_spanning_posets(&sub, Some(Minimality::DownwardClosed)).unwrap();
        let nontrivial: Vec<_> = min.iter().filter(|s| !s.is_trivial(&sub)).collect();
        let l = (q + 1) as usize;
        let chains = nontrivial.iter().filter(|s| s.contains(sub.top())).count();
        assert_eq!(chains, l);
        assert_eq!(nontrivial.len() - chains, l * (l - 1) / 2);
    }
}

#[test]
fn minimality_agrees_with_brute_force() {
    for (k, q) in [(2, 2), (2, 3), (3, 2)] {
        let sub = vect(k, q);
        let all = enumerate_spanning_posets(&sub, None).unwrap();
        let down = enumerate_spanning_posets(&sub, Some(Minimality::DownwardClosed)).unwrap();
        let want: Vec<_> = all.iter().filter(|s| minimal_by_brute_force(&sub, s, true)).cloned().collect();
        assert_eq!(down, want);
        if k == 2 {
            let subset = enumerate_spanning_posets(&sub, Some(Minimality::Subset)).unwrap();
            let want: Vec<_> =
                all.iter().filter(|s| minimal_by_brute_force(&sub, s, false)).cloned().collect();
            assert_eq!(subset, want);
        }
        for s in &all {
            assert!(is_spanning(&sub, s));
        }
    }
}

#[test]
fn spanning_enumeration_is_exhaustive() {
    // Oracle: test every subset of nonzero subspaces directly.
    let sub = vect(2, 3);
    let nz = sub.nonzero();
    let mut want = Vec::new();
    for mask in 0u32..1 << nz.len() {
        let s = sp(&sub, &(0..nz.len()).filter(|i| mask >> i & 1 == 1).map(|i| nz[i]).collect::<Vec<_>>());
        if is_spanning(&sub, &s) {
            want.push(s);
        }
    }
    want.sort();
    assert_eq!(enumerate_spanning_posets(&sub, None).unwrap(), want);
}

#[test]
fn k1_is_trivial_only() {
    let sub = vect(1, 2);
    let min = enumerate_spanning_posets(&sub, Some(Minimality::DownwardClosed)).unwrap();
    assert_eq!(min.len(), 1);
    assert!(min[0].is_trivial(&sub));
    assert!(spanning_poset_p(1, 2, Minimality::DownwardClosed).unwrap().elements.is_empty());
}

#[test]
fn order_examples() {
    let sub = vect(2, 2);
    let l = lines(&sub);
    let trivial = sp(&sub, &[sub.top()]);
    let chain = sp(&sub, &[l[0], sub.top()]);
    let pair01 = sp(&sub, &[l[0], l[1]]);
    let pair02 = sp(&sub, &[l[0], l[2]]);
    let pair12 = sp(&sub, &[l[1], l[2]]);
    for s in [&trivial, &chain, &pair01, &pair12] {
        assert!(spanning_poset_leq(&sub, &trivial, s));
    }
    assert!(spanning_poset_leq(&sub, &chain, &pair01));
    assert!(!spanning_poset_leq(&sub, &pair01, &chain));
    assert!(!spanning_poset_leq(&sub, &pair01, &pair02));
    assert!(!spanning_poset_leq(&sub, &pair02, &pair01));
    assert!(!spanning_poset_leq(&sub, &chain, &pair12));
}

#[test]
fn p_at_k2() {
    let p = spanning_poset_p(2, 2, Minimality::DownwardClosed).unwrap();
    let n = p.poset.nerve();
    assert_eq!(n.f_vector(), vec![6, 6]);
    // A hexagon: every vertex has degree 2 and the graph is connected.
    assert_eq!(betti(&n), vec![(1, 1, vec![])]);
    let mut sizes = p.sizes.clone();
    sizes.sort();
    assert_eq!(sizes, vec![3, 3, 3, 4, 4, 4]);

    let p3 = spanning_poset_p(2, 3, Minimality::DownwardClosed).unwrap();
    assert_eq!(p3.elements.len(), 10);
    // Bipartite incidence of 4 lines and 6 pairs: 12 edges, connected.
    assert_eq!(p3.poset.nerve().f_vector(), vec![10, 12]);
    assert_eq!(betti(&p3.poset.nerve()), vec![(1, 12 - 10 + 1, vec![])]);
}

#[test]
fn size_monotone_on_k2() {
    for q in [2u32, 3, 4] {
        let p = SpanningPosetP::build(2, q, Minimality::DownwardClosed).unwrap();
        assert!(p.size_violations().is_empty());
    }
}

#[test]
fn common_basis_complex_k2() {
    // Any two distinct lines share a basis, no three do: the complete graph.
    for q in [2u32, 3] {
        let c = common_basis_complex(2, q).unwrap();
        let l = (q + 1) as usize;
        assert_eq!(c.complex.f_vector(), vec![l, l * (l - 1) / 2]);
        let cycles = l * (l - 1) / 2 - l + 1;
        assert_eq!(betti(&c.complex), vec![(1, cycles, vec![])]);
    }
}

#[test]
fn common_basis_witnesses() {
    let c = common_basis_complex(3, 2).unwrap();
    let sub = &c.sub;
    assert_eq!(c.complex.dim(), Some(5));
    for (facet, basis) in &c.witnesses {
        assert_eq!(basis.len(), 3);
        for &v in facet {
            let inside: Vec<usize> = basis.iter().copied().filter(|&b| sub.leq(b, v)).collect();
            let span = inside.iter().fold(sub.zero(), |a, &b| sub.join(a, b));
            assert_eq!(span, v);
        }
    }
    let h = betti(&c.complex);
    assert!(h.iter().all(|(d, _, _)| (2..=4).contains(d)), "{h:?}");
}

#[test]
fn cbc_comparison_corpus() {
    for (k, q) in [(1, 2), (2, 2), (2, 3)] {
        let r = cbc_vs_spanning_check(k, q, Minimality::DownwardClosed).unwrap();
        assert!(r.passed(), "{k} {q}: {r:?}");
        assert!(r.nerve_dim.is_none_or(|d| d as isize <= 2 * k as isize - 3));
    }
    let r = cbc_vs_spanning_check(1, 2, Minimality::DownwardClosed).unwrap();
    assert_eq!(r.suspended_cbc.nonzero(), vec![(0, 1, vec![])]);
}

#[test]
fn subset_reading_breaks_k2() {
    let r = cbc_vs_spanning_check(2, 2, Minimality::Subset).unwrap();
    assert_eq!(r.p_size, 3);
    assert!(!r.matched);
}

#[test]
fn configuration_examples() {
    let sub = vect(2, 2);
    let l = lines(&sub);
    let c = submodule_configuration(&sub, 2, 1, &[sub.zero(), sub.top()]).unwrap();
    assert!(c.poset.is_trivial(&sub));
    assert!(c.minimal);

    let c = submodule_configuration(&sub, 3, 1, &[sub.zero(), l[0], sub.top()]).unwrap();
    assert_eq!(c.poset, sp(&sub, &[l[0], sub.top()]));
    assert_eq!(c.pick_sites, vec![vec![1], vec![2]]);
    assert!(c.minimal);

    let c = submodule_configuration(&sub, 2, 2, &[sub.zero(), l[1], l[0], sub.top()]).unwrap();
    assert_eq!(c.poset, sp(&sub, &[l[0], l[1]]));
    assert!(c.minimal);

    let bad = submodule_configuration(&sub, 2, 1, &[l[0], l[1]]);
    assert!(matches!(bad, Err(Error::NotMonotone(_))));
}

#[test]
fn p_order_is_antisymmetric_on_k3() {
    // `from_relation` rejects cycles, so a successful build certifies a partial order.
    let p = SpanningPosetP::build(3, 2, Minimality::DownwardClosed).unwrap();
    assert!(!p.elements.is_empty());
    for s in &p.elements {
        assert!(is_spanning(&p.sub, s));
        assert!(!s.is_trivial(&p.sub));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flags_give_minimal_configurations(perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
        // A random full flag of F_2^3 placed along a 1-d grid.
        let sub = vect(3, 2);
        let l = lines(&sub)[perm[0]];
        let plane = sub.nonzero().into_iter()
            .filter(|&x| sub.rank(x) == 2 && sub.leq(l, x))
            .nth(perm[1] % 3).unwrap();
        let c = submodule_configuration(&sub, 4, 1, &[sub.zero(), l, plane, sub.top()]).unwrap();
        prop_assert!(c.spanning && c.minimal);
        prop_assert_eq!(c.pick_sites.len(), 3);
    }

    #[test]
    fn independent_axes_give_minimal_configurations(i in 0usize..7, j in 0usize..7, k in 0usize..7) {
        let sub = vect(3, 2);
        let ls = lines(&sub);
        let (a, b, c) = (ls[i], ls[j], ls[k]);
        prop_assume!(sub.join(sub.join(a, b), c) == sub.top());
        // Grid {0,1}^3 with F(x) the span of the axes set in x.
        let values: Vec<usize> = (0..8u32)
            .map(|m| [c, b, a].iter().enumerate()
                .filter(|(d, _)| m >> d & 1 == 1)
                .fold(sub.zero(), |acc, (_, &x)| sub.join(acc, x)))
            .collect();
        let conf = submodule_configuration(&sub, 2, 3, &values).unwrap();
        prop_assert_eq!(conf.poset.clone(), sp(&sub, &[a, b, c]));
        prop_assert!(conf.minimal);
    }

    #[test]
    fn order_is_equivariant(g in 0usize..2, a in 0usize..10, b in 0usize..10) {
        let p = SpanningPosetP::build(2, 3, Minimality::DownwardClosed).unwrap();
        let sub = &p.sub;
        let g = g % sub.aut().generators().len();
        let act = |s: &SpanningPoset| SpanningPoset::new(s.elements.iter().map(|&x| sub.act(g, x)).collect());
        let (x, y) = (&p.elements[a], &p.elements[b]);
        prop_assert_eq!(spanning_poset_leq(sub, x, y), spanning_poset_leq(sub, &act(x), &act(y)));
        prop_assert!(p.elements.contains(&act(x)));
    }
}
