use decomplab_core::addcat::{Instance, SubobjectStructure};
use decomplab_core::decomp::decomposition_poset;
use decomplab_core::gamma::*;
use decomplab_core::homology::{homology, poset_homology, Coeff};
use decomplab_core::oracles::{conf_poincare, fat_diagonal_ranks};
use decomplab_core::sset::{circle, sphere};
use decomplab_core::Error;
use proptest::prelude::*;

fn sub(inst: Instance) -> SubobjectStructure {
    SubobjectStructure::new(inst).unwrap()
}

/// Tuples whose entries are independent: the rank of the join is the sum
/// of the ranks.
fn independent_tuples(s: &SubobjectStructure, len: usize) -> usize {
    let n = s.len();
    (0..n.pow(len as u32))
        .filter(|&code| {
            let t: Vec<usize> = (0..len).map(|i| code / n.pow(i as u32) % n).collect();
            let join = t.iter().fold(s.zero(), |acc, &x| s.join(acc, x));
            s.rank(join) == t.iter().map(|&x| s.rank(x)).sum::<usize>()
        })
        .count()
}

#[test]
fn element_examples() {
    let v = sub(Instance::Vect { n: 2, q: 2 });
    assert_eq!(sa_elements(&v, 0).unwrap(), vec![None]);
    assert_eq!(sa_elements_le(&v, 2).unwrap().len(), 1 + 3 + 3 + 6 + 2);
    for inst in [Instance::Vect { n: 2, q: 2 }, Instance::Vect { n: 2, q: 3 }, Instance::Vect { n: 3, q: 2 }, Instance::FinSet { n: 3 }] {
        let s = sub(inst);
        for len in 1..=3 {
            assert_eq!(sa_elements_le(&s, len).unwrap().len(), independent_tuples(&s, len), "{inst} {len}");
        }
    }
    let lines: Vec<u32> = v.nonzero().into_iter().filter(|&x| v.rank(x) == 1).map(|x| x as u32).collect();
    assert_eq!(gamma_map(&v, &[lines[0], lines[1]], &[Some(0), Some(0)], 1), Some(vec![v.top() as u32]));
    assert_eq!(gamma_map(&v, &[lines[0], lines[1]], &[None, Some(0)], 1), Some(vec![lines[1]]));
}

#[test]
fn rank_one_is_the_sphere() {
    for inst in [Instance::Vect { n: 1, q: 3 }, Instance::FinSet { n: 1 }] {
        for k in 1..=3 {
            let e = evaluate_at_sphere(&sub(inst), k, SphereModel::Smash, None).unwrap();
            assert_eq!(e.homology().unwrap().nonzero(), vec![(k as isize, 1, vec![])]);
        }
    }
}

#[test]
fn sphere_evaluation_examples() {
    // Σ′ of three points is a wedge of two circles, suspended once more
    let v = sub(Instance::Vect { n: 2, q: 2 });
    let pred = ksa_prediction(&v).unwrap();
    assert_eq!(pred.nonzero(), vec![(1, 2, vec![])]);
    for k in [1, 2] {
        let c = ksa_check(&v, k, SphereModel::Minimal, Some(2 * k)).unwrap();
        assert!(c.matched, "k={k}: {:?}", c.window);
    }
    let c = ksa_check(&v, 2, SphereModel::Minimal, Some(4)).unwrap();
    assert_eq!(c.homology.betti(3), 2);
}

#[test]
fn valuation_laws() {
    for inst in [Instance::Vect { n: 2, q: 2 }, Instance::FinSet { n: 3 }, Instance::Vect { n: 2, q: 3 }] {
        let s = sub(inst);
        for (l, trunc) in [(circle(), None), (sphere(2), Some(3))] {
            let e = sa_of(&s, &l, trunc).unwrap();
            assert!(audit_delta(&s, &l, &e).unwrap() > 0);
            assert!(union_property(&e));
            for g in 0..s.aut().actions().len() {
                assert!(delta_equivariant(&s, &e, g), "{inst} g={g}");
            }
            let c = e.sset().normalized_chains(true).unwrap();
            assert!(c.dd_is_zero());
            assert!(homology(&c, Coeff::Z).unwrap().euler_ok);
        }
    }
}

#[test]
fn level_analysis() {
    for inst in [Instance::Vect { n: 2, q: 2 }, Instance::FinSet { n: 3 }] {
        let s = sub(inst);
        for (l, trunc) in [(circle(), None), (sphere(2), Some(5))] {
            let e = sa_of(&s, &l, trunc).unwrap();
            for p in 0..e.decomp.len() {
                let c = level_analysis_check(&s, &e, &l, p, trunc).unwrap();
                assert!(c.passed(), "{inst} {}: {:?}", c.decomposition, c.first_mismatch);
            }
        }
    }
}

#[test]
fn fat_diagonal_matches_configuration_oracle() {
    for (n, k) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let fd = fat_diagonal(n, k, None).unwrap();
        let h = homology(&fd.sset.normalized_chains(true).unwrap(), Coeff::Z).unwrap();
        // H̃_q(fat diagonal) = H̃^{nk−q−1}(Conf_n(R^k)), all free
        let poly = conf_poincare(n, k);
        let mut want: Vec<(isize, usize, Vec<u64>)> = poly
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| ((n * k - i - 1) as isize, c as usize, vec![]))
            .collect();
        want.reverse();
        assert_eq!(h.nonzero(), want, "n={n} k={k}");
        assert_eq!(h.nonzero()[0].0, (n + k - 2) as isize);
        let ranks: Vec<(isize, u64)> = want.iter().map(|(d, r, _)| (*d, *r as u64)).collect();
        assert_eq!(fat_diagonal_ranks(n, k), ranks);
    }
    assert_eq!(conf_poincare(3, 2), vec![1, 3, 2]);
    assert_eq!(conf_poincare(3, 3), vec![1, 0, 3, 0, 2]);
    assert_eq!(conf_poincare(1, 4), vec![1]);
    assert!(matches!(fat_diagonal(4, 3, None), Err(Error::ResourceCap(_))));
}

#[test]
fn stable_window() {
    for inst in [Instance::Vect { n: 2, q: 2 }, Instance::FinSet { n: 3 }, Instance::FinSet { n: 4 }] {
        let s = sub(inst);
        let mut by_i: Vec<Vec<(usize, Vec<u64>)>> = vec![vec![]; 3];
        for k in 1..=3 {
            let c = ksa_check(&s, k, SphereModel::Minimal, Some(2 * k)).unwrap();
            assert!(c.matched, "{inst} k={k}: {:?}", c.window);
            assert!(!c.window.is_empty());
            for d in &c.window {
                by_i[(d.degree - k as isize) as usize].push(d.computed.clone());
            }
        }
        for row in by_i {
            assert!(row.windows(2).all(|w| w[0] == w[1]), "{inst}: {row:?}");
        }
    }
}

#[test]
fn partition_instances_predict_zero() {
    for n in 2..=4 {
        assert!(ksa_prediction(&sub(Instance::FinSet { n })).unwrap().is_zero());
    }
}

#[test]
fn dec_columns() {
    let one = dec_column(&sub(Instance::Vect { n: 1, q: 2 })).unwrap();
    assert_eq!((one.dim_dec, one.dim_coinvariants), (1, 1));
    for (q, dim) in [(2u32, 2usize), (3, 5)] {
        let c = dec_column(&sub(Instance::Vect { n: 2, q })).unwrap();
        assert_eq!((c.n, c.dim_dec, c.dim_coinvariants), (2, dim, 0));
    }
    let s = sub(Instance::Vect { n: 3, q: 2 });
    let c = dec_column(&s).unwrap();
    let h = poset_homology(&decomposition_poset(&s, false, true).unwrap().poset).unwrap();
    assert_eq!(c.dim_dec, h.betti(1));
    assert!(c.dim_coinvariants <= c.dim_dec);
    assert_eq!(c.note, COINVARIANTS_NOTE);
}

#[test]
fn truncation_is_enforced() {
    let s = sub(Instance::Vect { n: 2, q: 2 });
    let cut = decomplab_core::sset::smash_power(&circle(), 3, decomplab_core::sset::SmashMode::Ordinary, Some(1))
        .unwrap()
        .sset;
    assert!(matches!(sa_of(&s, &cut, Some(4)), Err(Error::TruncationExceeded(_))));
    assert!(matches!(sa_of(&s, &circle().with_basepoint(None).unwrap(), None), Err(Error::InvalidInput(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gamma_maps_compose(a in 0usize..64, f in proptest::collection::vec(0usize..3, 3), g in proptest::collection::vec(0usize..3, 2)) {
        // (g ∘ f)_* = g_* ∘ f_* on S_{≤A}({*,1,2,3})
        let s = sub(Instance::FinSet { n: 3 });
        let elems = sa_elements_le(&s, 3).unwrap();
        let x = &elems[a % elems.len()];
        let pointed = |v: usize| if v == 2 { None } else { Some(v) };
        let f: Vec<Option<usize>> = f.into_iter().map(pointed).collect();
        let g: Vec<Option<usize>> = g.into_iter().map(pointed).collect();
        let gf: Vec<Option<usize>> = f.iter().map(|&y| y.and_then(|y| g[y])).collect();
        let step = gamma_map(&s, x, &f, 2).unwrap();
        prop_assert_eq!(gamma_map(&s, &step, &g, 2), gamma_map(&s, x, &gf, 2));
    }
}
