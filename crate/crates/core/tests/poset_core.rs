use decomplab_core::addcat::{Instance, SubobjectStructure};
use decomplab_core::decomp::{decomposition_poset, permutahedron_poset};
use decomplab_core::homology::complex_homology;
use decomplab_core::{Error, Poset, Side, SimplicialComplex};
use proptest::prelude::*;

fn chain3() -> Poset {
    Poset::from_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
}

fn betti(k: &SimplicialComplex) -> Vec<(isize, usize, Vec<u64>)> {
    complex_homology(k).unwrap().nonzero()
}

fn complex(n: usize, facets: &[Vec<usize>]) -> SimplicialComplex {
    SimplicialComplex::new((0..n).map(|i| format!("v{i}")).collect(), facets.to_vec()).unwrap()
}

fn random_poset() -> impl Strategy<Value = Poset> {
    (1usize..8).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        pairs.push((labels[i].clone(), labels[j].clone()));
                    }
                    k += 1;
                }
            }
            Poset::from_pairs(&labels, &pairs).unwrap()
        })
    })
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..7).prop_flat_map(|n| {
        proptest::collection::vec(1u32..(1 << n), 1..6).prop_map(move |masks| {
            let facets: Vec<Vec<usize>> =
                masks.iter().map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
            let used: Vec<usize> = (0..n).filter(|&v| facets.iter().any(|f| f.contains(&v))).collect();
            let rename = |v: usize| used.iter().position(|&u| u == v).unwrap();
            let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|&v| rename(v)).collect()).collect();
            complex(used.len(), &facets)
        })
    })
}

/// Longest chain by brute force over the strict order.
fn longest_chain_oracle(p: &Poset) -> usize {
    let n = p.len();
    let mut best = vec![0usize; n];
    // elements sorted so that anything above comes later in a linear extension
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (0..n).filter(|&j| p.lt(j, i)).count());
    for &i in order.iter().rev() {
        best[i] = (0..n).filter(|&j| p.lt(i, j)).map(|j| best[j] + 1).max().unwrap_or(0);
    }
    best.into_iter().max().unwrap()
}

fn euler_from_f_vector(k: &SimplicialComplex) -> i64 {
    // reduced: the empty simplex counts −1
    k.f_vector().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum::<i64>() - 1
}

fn reduced_euler_from_homology(k: &SimplicialComplex) -> i64 {
    betti(k).iter().map(|(d, r, _)| if d % 2 == 0 { *r as i64 } else { -(*r as i64) }).sum()
}

#[test]
fn make_poset_examples() {
    assert_eq!(Poset::from_pairs(&["a"], &[]).unwrap().len(), 1);
    let c = chain3();
    let (a, cc) = (c.index_of("a").unwrap(), c.index_of("c").unwrap());
    assert!(c.leq(a, cc));
    let cyc = Poset::from_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "a")]);
    assert!(matches!(cyc, Err(Error::CycleDetected(_, _))));
    assert!(matches!(Poset::from_pairs(&["a"], &[("a", "z")]), Err(Error::UnknownElement(_))));
}

#[test]
fn nerve_examples() {
    assert_eq!(chain3().nerve().f_vector(), vec![3, 3, 1]);
    let anti = Poset::from_pairs(&["a", "b", "c"], &[]).unwrap();
    assert_eq!(anti.nerve().f_vector(), vec![3]);
    let perm = permutahedron_poset(3).unwrap();
    let n = perm.nerve();
    assert_eq!(n.f_vector(), vec![12, 12]);
    assert_eq!(betti(&n), vec![(1, 1, vec![])]);
}

#[test]
fn interval_examples() {
    let c = chain3();
    let b = c.index_of("b").unwrap();
    assert_eq!(c.interval(b, true, Side::Below).unwrap().labels(), &["a".to_string()]);
    let a = c.index_of("a").unwrap();
    assert!(c.interval(a, true, Side::Below).unwrap().is_empty());
    assert!(matches!(c.interval(7, false, Side::Below), Err(Error::UnknownElement(_))));
    let d = decomposition_poset(&SubobjectStructure::new(Instance::Vect { n: 2, q: 2 }).unwrap(), false, true)
        .unwrap();
    assert_eq!(d.len(), 3);
    for p in 0..d.len() {
        assert!(d.poset.interval(p, true, Side::Above).unwrap().is_empty());
    }
}

#[test]
fn cosieve_examples() {
    let c = chain3();
    let (b, cc) = (c.index_of("b").unwrap(), c.index_of("c").unwrap());
    assert!(c.is_cosieve(&[b, cc]));
    assert!(!c.is_cosieve(&[b]));
    for inst in [
        Instance::FinSet { n: 3 },
        Instance::FinSet { n: 4 },
        Instance::Vect { n: 2, q: 2 },
        Instance::Vect { n: 3, q: 2 },
    ] {
        let sub = SubobjectStructure::new(inst).unwrap();
        let full = decomposition_poset(&sub, false, false).unwrap();
        let proper: Vec<usize> = (0..full.len()).filter(|&i| full.parts[i].len() >= 2).collect();
        assert!(full.poset.is_cosieve(&proper), "{inst}");
    }
}

#[test]
fn longest_chain_examples() {
    assert_eq!(Poset::empty().longest_chain_length(), None);
    assert_eq!(chain3().longest_chain_length(), Some(2));
    let v = SubobjectStructure::new(Instance::Vect { n: 2, q: 2 }).unwrap();
    assert_eq!(decomposition_poset(&v, false, false).unwrap().poset.longest_chain_length(), Some(1));
    let s = SubobjectStructure::new(Instance::FinSet { n: 4 }).unwrap();
    assert_eq!(decomposition_poset(&s, false, false).unwrap().poset.longest_chain_length(), Some(3));
}

#[test]
fn subdivision_examples() {
    let edge = complex(2, &[vec![0, 1]]);
    assert_eq!(edge.barycentric_subdivision().f_vector(), vec![3, 2]);
    let tri = complex(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
    let sd = tri.barycentric_subdivision();
    assert_eq!(sd.f_vector(), vec![6, 6]);
    assert_eq!(betti(&sd), vec![(1, 1, vec![])]);
}

#[test]
fn join_examples() {
    let point = complex(1, &[vec![0]]);
    let s0 = complex(2, &[vec![0], vec![1]]);
    let tri = complex(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
    assert!(betti(&point.join(&tri)).is_empty());
    let square = s0.join(&s0);
    assert_eq!(square.f_vector(), vec![4, 4]);
    assert_eq!(betti(&square), vec![(1, 1, vec![])]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nerve_dimension_is_longest_chain(p in random_poset()) {
        let want = longest_chain_oracle(&p);
        prop_assert_eq!(p.longest_chain_length(), Some(want));
        prop_assert_eq!(p.nerve().dim(), Some(want as isize));
    }

    #[test]
    fn intervals_contain_their_point(p in random_poset(), pick in any::<prop::sample::Index>(), above in any::<bool>()) {
        let x = pick.index(p.len());
        let side = if above { Side::Above } else { Side::Below };
        let label = p.label(x).to_string();
        prop_assert!(p.interval(x, false, side).unwrap().index_of(&label).is_ok());
        prop_assert!(p.interval(x, true, side).unwrap().index_of(&label).is_err());
    }

    #[test]
    fn cosieves_closed_under_union(p in random_poset(), a in any::<u8>(), b in any::<u8>()) {
        // up-closures of two random seed sets are cosieves; so is their union
        let up = |seed: u8| -> Vec<usize> {
            (0..p.len()).filter(|&y| (0..p.len()).any(|x| seed >> (x % 8) & 1 == 1 && p.leq(x, y))).collect()
        };
        let (u, v) = (up(a), up(b));
        prop_assert!(p.is_cosieve(&u) && p.is_cosieve(&v));
        let mut w = u.clone();
        w.extend(v.iter().copied().filter(|x| !u.contains(x)));
        prop_assert!(p.is_cosieve(&w));
    }

    #[test]
    fn subdivision_preserves_homology(k in random_complex()) {
        let sd = k.barycentric_subdivision();
        prop_assert_eq!(betti(&sd), betti(&k));
        prop_assert_eq!(reduced_euler_from_homology(&k), euler_from_f_vector(&k));
    }

    #[test]
    fn join_laws(k in random_complex(), l in random_complex()) {
        prop_assert_eq!(k.join(&SimplicialComplex::empty_simplex()).f_vector(), k.f_vector());
        prop_assert_eq!(k.join(&l).f_vector(), l.join(&k).f_vector());
        prop_assert_eq!(betti(&k.join(&l)), betti(&l.join(&k)));
        // χ̃(K * L) = −χ̃(K)·χ̃(L)
        let (a, b) = (euler_from_f_vector(&k), euler_from_f_vector(&l));
        prop_assert_eq!(euler_from_f_vector(&k.join(&l)), -a * b);
    }

    #[test]
    fn join_is_associative(k in random_complex(), l in random_complex(), m in random_complex()) {
        let left = k.join(&l).join(&m);
        let right = k.join(&l.join(&m));
        prop_assert_eq!(left.f_vector(), right.f_vector());
    }
}
