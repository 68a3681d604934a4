use decomplab_core::addcat::{enumerate_sub, Instance, SubobjectStructure};
use decomplab_core::oracles::{gaussian_binomial, gl_order};
use decomplab_core::Error;
use proptest::prelude::*;

fn sub(inst: Instance) -> SubobjectStructure {
    SubobjectStructure::new(inst).unwrap()
}

fn instances() -> Vec<Instance> {
    vec![
        Instance::FinSet { n: 3 },
        Instance::FinSet { n: 4 },
        Instance::Vect { n: 2, q: 2 },
        Instance::Vect { n: 2, q: 3 },
        Instance::Vect { n: 3, q: 2 },
        Instance::Vect { n: 2, q: 4 },
    ]
}

#[test]
fn subobject_counts_match_oracles() {
    for n in 1..=6usize {
        assert_eq!(enumerate_sub(Instance::FinSet { n }).unwrap().len(), 1 << n);
    }
    for (n, q) in [(2usize, 2u32), (3, 2), (2, 3), (3, 3), (2, 4), (4, 2)] {
        let want: u128 = (0..=n as u32).map(|k| gaussian_binomial(n as u32, k, q as u128)).sum();
        assert_eq!(enumerate_sub(Instance::Vect { n, q }).unwrap().len() as u128, want, "n={n} q={q}");
    }
    assert_eq!(enumerate_sub(Instance::Vect { n: 2, q: 2 }).unwrap().len(), 5);
    assert_eq!(enumerate_sub(Instance::Vect { n: 3, q: 2 }).unwrap().len(), 16);
}

#[test]
fn enumeration_caps() {
    assert!(matches!(enumerate_sub(Instance::Vect { n: 8, q: 7 }), Err(Error::ResourceCap(_))));
    assert!(matches!(SubobjectStructure::new(Instance::FinSet { n: 20 }), Err(Error::ResourceCap(_))));
}

#[test]
fn relplus_examples() {
    let v = sub(Instance::Vect { n: 2, q: 2 });
    let lines: Vec<usize> = v.nonzero().into_iter().filter(|&x| v.rank(x) == 1).collect();
    for &b in &v.nonzero() {
        assert_eq!(v.relplus(v.zero(), b), Some(b));
        assert_eq!(v.relplus(b, b), None);
    }
    assert_eq!(v.relplus(lines[0], lines[1]), Some(v.top()));
}

#[test]
fn automorphism_group_orders() {
    // Σ₃ and GL₂(F_q) orders from independent formulas.
    let s = sub(Instance::FinSet { n: 3 });
    assert_eq!(s.aut().enumerate_order(1_000_000).unwrap(), 6);
    for q in [2u32, 3] {
        let v = sub(Instance::Vect { n: 2, q });
        assert_eq!(v.aut().enumerate_order(1_000_000).unwrap(), gl_order(2, q as u128));
    }
    assert_eq!(gl_order(2, 2), 6);
    assert_eq!(gl_order(2, 3), 48);
}

#[test]
fn axioms() {
    for n in 1..=5 {
        sub(Instance::FinSet { n }).check_axioms(usize::MAX, 0).unwrap();
    }
    for n in 1..=3 {
        sub(Instance::Vect { n, q: 2 }).check_axioms(usize::MAX, 0).unwrap();
    }
    let bad = sub(Instance::Naturals { m: 4 }).check_axioms(usize::MAX, 0);
    match bad {
        Err(Error::AxiomViolation { axiom, .. }) => assert_eq!(axiom, "CA3"),
        other => panic!("expected a CA3 violation, got {other:?}"),
    }
}

#[test]
fn partial_sum_laws() {
    for inst in instances() {
        let s = sub(inst);
        for a in 0..s.len() {
            for b in 0..s.len() {
                let ab = s.relplus(a, b);
                assert_eq!(ab, s.relplus(b, a));
                if let Some(c) = ab {
                    assert_eq!(s.rank(c), s.rank(a) + s.rank(b));
                    assert_eq!(c, s.join(a, b));
                }
                // defined iff the ranks add, iff the meet is zero
                let additive = s.rank(s.join(a, b)) == s.rank(a) + s.rank(b);
                assert_eq!(ab.is_some(), additive);
                assert_eq!(ab.is_some(), s.meet(a, b) == s.zero());
                for c in 0..s.len() {
                    let left = ab.and_then(|x| s.relplus(x, c));
                    let right = s.relplus(b, c).and_then(|x| s.relplus(a, x));
                    assert_eq!(left, right);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_respects_partial_sums(which in 0usize..6, g in 0usize..8, a in 0usize..64, b in 0usize..64) {
        let s = sub(instances()[which]);
        let gens = s.aut().actions().len();
        prop_assume!(gens > 0);
        let g = g % gens;
        let (a, b) = (a % s.len(), b % s.len());
        prop_assert_eq!(s.rank(s.act(g, a)), s.rank(a));
        prop_assert_eq!(s.relplus(a, b).map(|c| s.act(g, c)), s.relplus(s.act(g, a), s.act(g, b)));
        prop_assert_eq!(s.leq(a, b), s.leq(s.act(g, a), s.act(g, b)));
    }
}
