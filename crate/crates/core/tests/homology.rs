use decomplab_core::addcat::{Instance, SubobjectStructure};
use decomplab_core::decomp::decomposition_poset;
use decomplab_core::homology::modp::rank_mod_p;
use decomplab_core::homology::snf::{smith_certificate, smith_normal_form, verify_certificate};
use decomplab_core::homology::*;
use decomplab_core::sset::{external_product, sphere};
use decomplab_core::{Error, SimplicialComplex};
use num_bigint::BigInt;
use proptest::prelude::*;

fn complex(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::new((0..n).map(|i| format!("v{i}")).collect(), facets.iter().map(|f| f.to_vec()).collect())
        .unwrap()
}

fn rp2() -> SimplicialComplex {
    let f: [[usize; 3]; 10] = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ];
    complex(6, &f.iter().map(|x| x.as_slice()).collect::<Vec<_>>())
}

fn torus() -> SimplicialComplex {
    let mut f = Vec::new();
    for i in 0..7 {
        f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    complex(7, &f.iter().map(Vec::as_slice).collect::<Vec<_>>())
}

fn hexagon() -> SimplicialComplex {
    complex(6, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]])
}

fn corpus() -> Vec<SimplicialComplex> {
    vec![
        rp2(),
        torus(),
        hexagon(),
        complex(3, &[&[0, 1], &[1, 2], &[0, 2]]),
        complex(1, &[&[0]]),
        complex(4, &[&[0, 1, 2, 3]]),
        SimplicialComplex::empty_simplex(),
    ]
}

/// Elementary divisors from gcds of k×k minors; independent of elimination.
fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i64> {
    fn det(m: &[Vec<i64>]) -> i64 {
        match m.len() {
            0 => 1,
            1 => m[0][0],
            n => (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> =
                        m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect()).collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * det(&minor)
                })
                .sum(),
        }
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
    }
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut prev = 1;
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Rank over F_p by dense elimination.
fn rank_mod_p_oracle(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn chain_examples() {
    let tri = complex(3, &[&[0, 1], &[1, 2], &[0, 2]]);
    let c = chains_of_complex(&tri, true);
    assert_eq!((c.rank(0), c.rank(1)), (3, 3));
    assert_eq!(homology(&c, Coeff::Z).unwrap().nonzero(), vec![(1, 1, vec![])]);
    assert!(complex_homology(&complex(1, &[&[0]])).unwrap().is_zero());
    assert_eq!(complex_homology(&hexagon()).unwrap().nonzero(), vec![(1, 1, vec![])]);
}

#[test]
fn normalized_chain_examples() {
    let h = homology(&sphere(2).normalized_chains(true).unwrap(), Coeff::Z).unwrap();
    assert_eq!(h.nonzero(), vec![(2, 1, vec![])]);
    // Künneth: S¹ × S¹
    let diag = external_product(&sphere(1), &sphere(1)).unwrap().diagonal(None).unwrap();
    let h = homology(&diag.sset.normalized_chains(false).unwrap(), Coeff::Z).unwrap();
    assert_eq!((h.betti(0), h.betti(1), h.betti(2)), (1, 2, 1));
}

#[test]
fn snf_examples() {
    let id = SparseMatrix::from_dense(3, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let s = smith_normal_form(&id).unwrap();
    assert_eq!((s.rank, s.divisors()), (3, vec![BigInt::from(1); 3]));
    let d = SparseMatrix::from_dense(2, 2, &[vec![2, 0], vec![0, 4]]);
    let s = smith_normal_form(&d).unwrap();
    assert_eq!(s.divisors(), vec![BigInt::from(2), BigInt::from(4)]);
    let h = complex_homology(&rp2()).unwrap();
    assert_eq!(h.nonzero(), vec![(1, 0, vec![2])]);
}

#[test]
fn profile_examples() {
    let s2 = homology(&sphere(2).normalized_chains(true).unwrap(), Coeff::Z).unwrap();
    assert_eq!(wedge_of_spheres_profile(&s2).unwrap(), Profile::Wedge { dim: 2, count: 1 });
    let v = SubobjectStructure::new(Instance::Vect { n: 2, q: 3 }).unwrap();
    let d = decomposition_poset(&v, false, true).unwrap();
    let h = poset_homology(&d.poset).unwrap();
    assert_eq!(wedge_of_spheres_profile(&h).unwrap(), Profile::Wedge { dim: 0, count: 5 });
    let rp = complex_homology(&rp2()).unwrap();
    assert_eq!(wedge_of_spheres_profile(&rp).unwrap(), Profile::NotWedgeLike);
}

#[test]
fn connectivity_examples() {
    let point = complex_homology(&complex(1, &[&[0]])).unwrap();
    assert_eq!(homology_connectivity(&point), Connectivity::Infinite);
    let s0 = complex_homology(&complex(2, &[&[0], &[1]])).unwrap();
    assert_eq!(homology_connectivity(&s0), Connectivity::Finite(-1));
}

#[test]
fn truncated_reports_are_untrusted() {
    let c = sphere(3).normalized_chains(true).unwrap();
    let h = homology(&c, Coeff::Z).unwrap();
    assert!(!h.truncated);
    let cut = ChainComplex::new(vec![0, 1], vec![SparseMatrix::zero(0, 0), SparseMatrix::zero(0, 1)], true, Some(0))
        .unwrap();
    let r = homology(&cut, Coeff::Z).unwrap();
    assert!(matches!(wedge_of_spheres_profile(&r), Err(Error::Untrusted(_))));
}

#[test]
fn invariants_on_corpus() {
    for k in corpus() {
        let c = chains_of_complex(&k, true);
        assert!(c.dd_is_zero());
        let z = homology(&c, Coeff::Z).unwrap();
        assert!(z.euler_ok);
        let chi: i64 = z.degrees.iter().map(|d| if d.deg % 2 == 0 { d.rank as i64 } else { -(d.rank as i64) }).sum();
        assert_eq!(chi, c.euler_characteristic());
        let q = homology(&c, Coeff::Q).unwrap();
        for d in &z.degrees {
            assert_eq!(q.betti(d.deg), d.rank);
        }
        for p in [2, 3] {
            let fp = homology(&c, Coeff::Fp(p)).unwrap();
            assert!(uct_consistent(&z, &fp, p));
        }
        for deg in 1..=c.top_degree() {
            let Some(b) = c.boundary(deg) else { continue };
            if b.nrows() > 0 && b.ncols() > 0 {
                let cert = smith_certificate(b).unwrap();
                assert!(verify_certificate(b, &cert));
            }
        }
    }
}

#[test]
fn rp2_mod_two_sees_torsion() {
    let c = chains_of_complex(&rp2(), true);
    let f2 = homology(&c, Coeff::Fp(2)).unwrap();
    assert_eq!((f2.betti(1), f2.betti(2)), (1, 1));
    let f3 = homology(&c, Coeff::Fp(3)).unwrap();
    assert!(f3.is_zero());
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_matches_determinantal_divisors(m in small_matrix()) {
        let (r, c) = (m.len(), m[0].len());
        let s = smith_normal_form(&SparseMatrix::from_dense(r, c, &m)).unwrap();
        let want: Vec<BigInt> = determinantal_divisors(&m).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(s.rank, want.len());
        prop_assert_eq!(s.divisors(), want);
    }

    #[test]
    fn certificates_verify(m in small_matrix()) {
        let (r, c) = (m.len(), m[0].len());
        let sm = SparseMatrix::from_dense(r, c, &m);
        prop_assert!(verify_certificate(&sm, &smith_certificate(&sm).unwrap()));
    }

    #[test]
    fn ranks_mod_p(m in small_matrix(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let (r, c) = (m.len(), m[0].len());
        let sm = SparseMatrix::from_dense(r, c, &m);
        prop_assert_eq!(rank_mod_p(&sm, p), rank_mod_p_oracle(&m, p as i64));
        prop_assert!(rank_mod_p(&sm, p) <= smith_normal_form(&sm).unwrap().rank);
    }
}
