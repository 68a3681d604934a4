use decomplab_core::addcat::{Instance, SubobjectStructure};
use decomplab_core::decomp::*;
use decomplab_core::homology::{poset_homology, wedge_of_spheres_profile, Profile};
use decomplab_core::oracles::{bell, fubini};
use decomplab_core::Side;
use proptest::prelude::*;

fn sub(inst: Instance) -> SubobjectStructure {
    SubobjectStructure::new(inst).unwrap()
}

fn betti(p: &decomplab_core::Poset) -> Vec<(isize, usize, Vec<u64>)> {
    poset_homology(p).unwrap().nonzero()
}

/// Decompositions by brute force over sets of nonzero subobjects.
fn decomposition_count_oracle(s: &SubobjectStructure) -> usize {
    let nz = s.nonzero();
    let mut count = 0;
    fn rec(s: &SubobjectStructure, nz: &[usize], from: usize, acc: usize, count: &mut usize) {
        if acc == s.top() {
            *count += 1;
            return;
        }
        for i in from..nz.len() {
            if let Some(next) = s.relplus(acc, nz[i]) {
                rec(s, nz, i + 1, next, count);
            }
        }
    }
    rec(s, &nz, 0, s.zero(), &mut count);
    count
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn examples() {
    let f3 = sub(Instance::FinSet { n: 3 });
    let d = decomposition_poset(&f3, false, true).unwrap();
    assert_eq!(d.len(), 4);
    assert!(betti(&d.poset).is_empty());

    let v = sub(Instance::Vect { n: 2, q: 2 });
    let d = decomposition_poset(&v, false, true).unwrap();
    assert_eq!(d.len(), 3);
    assert_eq!(d.poset.nerve().f_vector(), vec![3]);

    for inst in [Instance::FinSet { n: 1 }, Instance::Vect { n: 1, q: 3 }] {
        assert!(decomposition_poset(&sub(inst), false, true).unwrap().is_empty());
        assert!(decomposition_poset(&sub(inst), true, true).unwrap().is_empty());
    }
}

#[test]
fn finset_counts_match_bell_and_fubini() {
    for n in 1..=5usize {
        let s = sub(Instance::FinSet { n });
        assert_eq!(decomposition_poset(&s, false, false).unwrap().len() as u128, bell(n));
        assert_eq!(decomposition_poset(&s, true, false).unwrap().len() as u128, fubini(n));
    }
}

#[test]
fn vect_counts_match_brute_force() {
    for (n, q) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)] {
        let s = sub(Instance::Vect { n, q });
        let unord = decomposition_poset(&s, false, false).unwrap();
        assert_eq!(unord.len(), decomposition_count_oracle(&s), "n={n} q={q}");
        let ord = decomposition_poset(&s, true, false).unwrap();
        let want: usize = unord.parts.iter().map(|p| factorial(p.len())).sum();
        assert_eq!(ord.len(), want);
    }
}

#[test]
fn partition_posets_are_contractible() {
    for n in 2..=5 {
        let d = decomposition_poset(&sub(Instance::FinSet { n }), false, true).unwrap();
        assert!(poset_homology(&d.poset).unwrap().is_zero(), "n={n}");
    }
}

#[test]
fn welker_profile() {
    for (n, q) in [(2usize, 2u32), (2, 3), (2, 5), (3, 2), (3, 3)] {
        let d = decomposition_poset(&sub(Instance::Vect { n, q }), false, true).unwrap();
        let profile = wedge_of_spheres_profile(&poset_homology(&d.poset).unwrap()).unwrap();
        match profile {
            Profile::Wedge { dim, count } => {
                assert_eq!(dim, n as isize - 2);
                if n == 2 {
                    // complementary line pairs minus one
                    assert_eq!(count, ((q + 1) * q / 2 - 1) as usize);
                }
            }
            other => panic!("n={n} q={q}: {other:?}"),
        }
    }
}

#[test]
fn forgetful_map_examples() {
    let v = sub(Instance::Vect { n: 2, q: 2 });
    let ord = decomposition_poset(&v, true, true).unwrap();
    let unord = decomposition_poset(&v, false, true).unwrap();
    let map = forgetful_map(&ord, &unord).unwrap();
    assert_eq!(ord.len(), 6);
    for u in 0..unord.len() {
        assert_eq!(map.iter().filter(|&&m| m == u).count(), 2);
    }
    let f1 = sub(Instance::FinSet { n: 1 });
    let (o, u) = (decomposition_poset(&f1, true, false).unwrap(), decomposition_poset(&f1, false, false).unwrap());
    assert_eq!(forgetful_map(&o, &u).unwrap(), vec![0]);
    for inst in [Instance::FinSet { n: 4 }, Instance::Vect { n: 3, q: 2 }] {
        let s = sub(inst);
        let (o, u) = (decomposition_poset(&s, true, false).unwrap(), decomposition_poset(&s, false, false).unwrap());
        let map = forgetful_map(&o, &u).unwrap();
        assert!(maximal_chains_lift(&o, &u, &map));
    }
}

#[test]
fn deorder_examples() {
    let r = deorder_report(&sub(Instance::Vect { n: 2, q: 2 })).unwrap();
    assert!(r.passed());
    assert_eq!(r.unordered.profile, Profile::Wedge { dim: 0, count: 2 });
    assert_eq!(r.ordered.profile, Profile::Wedge { dim: 0, count: 5 });

    let r = deorder_report(&sub(Instance::Vect { n: 3, q: 2 })).unwrap();
    assert!(r.passed());
    assert!(matches!(r.unordered.profile, Profile::Wedge { dim: 1, .. }));
    assert!(matches!(r.ordered.profile, Profile::Wedge { dim: 1, .. }));

    let r = deorder_report(&sub(Instance::FinSet { n: 3 })).unwrap();
    assert_eq!(r.unordered.profile, Profile::Contractible);
    assert_eq!(r.ordered.profile, Profile::Wedge { dim: 1, count: 1 });
    assert!(!r.verdicts_agree_strict);
    assert!(r.chain_lengths_ok && r.t_function_ok);
}

#[test]
fn permutahedra_are_spheres() {
    for m in 2..=5usize {
        let p = permutahedron_poset(m).unwrap();
        assert_eq!(p.len() as u128, fubini(m) - 1);
        assert_eq!(betti(&p), vec![(m as isize - 2, 1, vec![])]);
    }
}

#[test]
fn upper_intervals_are_joins() {
    for inst in [Instance::Vect { n: 3, q: 2 }, Instance::FinSet { n: 4 }] {
        let s = sub(inst);
        let d = decomposition_poset(&s, false, true).unwrap();
        for p in 0..d.len() {
            let c = upper_interval_join_check(&s, &d, p).unwrap();
            assert!(c.passed(), "{inst} {:?}: {c:?}", d.parts[p]);
        }
    }
}

#[test]
fn ordered_intervals_are_permutahedra() {
    for inst in [Instance::Vect { n: 2, q: 2 }, Instance::Vect { n: 3, q: 2 }, Instance::FinSet { n: 4 }] {
        let s = sub(inst);
        let ord = decomposition_poset(&s, true, true).unwrap();
        let unord = decomposition_poset(&s, false, true).unwrap();
        let map = forgetful_map(&ord, &unord).unwrap();
        for p in 0..ord.len() {
            assert!(ordered_interval_below_check(&s, &ord, &unord, &map, p).unwrap(), "{inst}");
        }
    }
}

#[test]
fn structural_invariants() {
    for inst in [Instance::FinSet { n: 4 }, Instance::Vect { n: 2, q: 3 }, Instance::Vect { n: 3, q: 2 }] {
        let s = sub(inst);
        let full = decomposition_poset(&s, false, false).unwrap();
        let rank = s.rank(s.top());
        let top = full.index_of_parts(&[s.top()]).unwrap();
        for p in 0..full.len() {
            assert!(full.poset.leq(top, p));
            assert_eq!(full.parts[p].iter().map(|&x| s.rank(x)).sum::<usize>(), rank);
            for q in full.poset.up_set(p).filter(|&q| q != p) {
                assert!(rank - full.parts[p].len() > rank - full.parts[q].len());
                assert!(refinement_map(&s, &full.parts[p], &full.parts[q]).unwrap().is_some());
            }
        }
        let d = decomposition_poset(&s, false, true).unwrap();
        for p in 0..d.len() {
            let strict_below = d.poset.interval(p, true, Side::Below).unwrap();
            assert!(strict_below.len() < d.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn automorphisms_preserve_the_poset(which in 0usize..3, g in 0usize..8, ordered in any::<bool>()) {
        let inst = [Instance::FinSet { n: 4 }, Instance::Vect { n: 2, q: 3 }, Instance::Vect { n: 3, q: 2 }][which];
        let s = sub(inst);
        let g = g % s.aut().actions().len();
        let d = decomposition_poset(&s, ordered, true).unwrap();
        prop_assert!(aut_acts_by_automorphisms(&s, &d, g));
    }
}
