use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use topepair_core::linalg::{rat, RationalMatrix};
use topepair_core::om::{self, verify_covector_axioms};
use topepair_core::topology::{self, ChainComplex, SparseMatrix};
use topepair_core::verify::{self, VerifyOptions};
use topepair_core::{FinitePoset, GroundSet, OrientedMatroid, Sign, SignVector};

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Zero), Just(Sign::Plus), Just(Sign::Minus)]
}

fn vectors(count: usize) -> impl Strategy<Value = Vec<SignVector>> {
    (1usize..=16).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(sign(), n), count)
            .prop_map(|vs| vs.iter().map(|v| SignVector::from_signs(v).unwrap()).collect())
    })
}

/// A random strict order on `0..n` closed under transitivity.
fn poset() -> impl Strategy<Value = FinitePoset<usize>> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut lt = vec![vec![false; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    lt[i][j] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if lt[i][k] && lt[k][j] {
                            lt[i][j] = true;
                        }
                    }
                }
            }
            FinitePoset::from_index_relation((0..n).collect(), |i, j| i == j || lt[i][j]).unwrap()
        })
    })
}

/// Full-row-rank integer matrices without zero columns, rank 2 or 3.
fn realizable() -> impl Strategy<Value = OrientedMatroid> {
    (2usize..=3, 0usize..=2)
        .prop_flat_map(|(r, extra)| {
            proptest::collection::vec(-3i64..=3, r * (r + extra)).prop_map(move |v| (r, r + extra, v))
        })
        .prop_filter_map("rank-deficient or with a zero column", |(r, n, v)| {
            let rows: Vec<Vec<_>> = (0..r).map(|i| v[i * n..(i + 1) * n].iter().map(|&x| rat(x)).collect()).collect();
            let m = RationalMatrix::from_rows(rows);
            if m.rank() != r || (0..n).any(|j| m.column(j).iter().all(Zero::is_zero)) {
                return None;
            }
            OrientedMatroid::from_matrix(GroundSet::numbered(n).unwrap(), &m).ok()
        })
}

fn dense_rank(m: &SparseMatrix) -> usize {
    let rows: Vec<Vec<_>> = m.to_dense().iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    RationalMatrix::from_rows(rows).rank()
}

fn minors(m: &[Vec<i64>], k: usize) -> BigInt {
    let (r, c) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rows in topepair_core::subsets::combinations(r, k) {
        for cols in topepair_core::subsets::combinations(c, k) {
            let sub: Vec<Vec<_>> = rows.iter().map(|&i| cols.iter().map(|&j| rat(m[i][j])).collect()).collect();
            let det = RationalMatrix::from_rows(sub).determinant();
            g = g.gcd(det.numer());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_vector_laws(v in vectors(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let xy = x.compose(y).unwrap();
        prop_assert_eq!(xy.compose(z).unwrap(), x.compose(&y.compose(z).unwrap()).unwrap());
        prop_assert!(x.sv_leq(&xy).unwrap());
        prop_assert_eq!(x.compose(x).unwrap(), *x);
        prop_assert_eq!(SignVector::zero(x.len()).compose(y).unwrap(), *y);
        prop_assert_eq!(x.separation_set(y).unwrap(), y.separation_set(x).unwrap());
        prop_assert_eq!(x.negate().separation_set(&y.negate()).unwrap(), x.separation_set(y).unwrap());
        prop_assert_eq!(x.separation_set(&x.negate()).unwrap(), x.support());
        prop_assert!(SignVector::zero(x.len()).sv_leq(y).unwrap());
    }

    #[test]
    fn smith_invariants_match_determinantal_divisors(
        (r, c, v) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-6i64..=6, r * c)))
    ) {
        let rows: Vec<Vec<i64>> = (0..r).map(|i| v[i * c..(i + 1) * c].to_vec()).collect();
        let snf = topology::smith_invariants(&SparseMatrix::from_dense(&rows));
        let mut factors = Vec::new();
        let mut prev = BigInt::from(1);
        let mut rank = 0;
        for k in 1..=r.min(c) {
            let d = minors(&rows, k);
            if d.is_zero() {
                break;
            }
            rank = k;
            factors.push((&d / &prev).abs().to_biguint().unwrap());
            prev = d;
        }
        factors.retain(|f| *f > BigUint::from(1u8));
        prop_assert_eq!(snf.rank, rank);
        prop_assert_eq!(snf.torsion, factors);
    }

    #[test]
    fn order_complex_laws(p in poset()) {
        let k = p.order_complex();
        prop_assert!(k.same_simplices(&p.opposite().order_complex()));
        let cc = ChainComplex::from_simplicial(&k, None, false);
        prop_assert_eq!(cc.boundary_squared_violation(), None);
        let h = topology::homology(&k, None);
        prop_assert_eq!(h.euler_characteristic(), k.euler_characteristic());
        let ranks: Vec<usize> = (0..cc.levels()).map(|l| if l == 0 { 0 } else { dense_rank(cc.boundary(l)) }).collect();
        for l in 0..cc.levels() {
            let next = ranks.get(l + 1).copied().unwrap_or(0);
            prop_assert_eq!(h.betti_numbers().get(l).copied().unwrap_or(0), cc.dims()[l] - ranks[l] - next);
        }
        let point = FinitePoset::from_index_relation(vec![()], |_, _| true).unwrap();
        prop_assert_eq!(p.product(&point).len(), p.len());
        if h.betti_numbers()[0] == 1 {
            let g = topology::fundamental_group(&k, 0).unwrap();
            prop_assert_eq!(topology::abelianization(&g), h.degree(1).unwrap_or_default());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn realizable_oriented_matroids(m in realizable()) {
        let n = m.ground().len();
        let cocircuits = m.cocircuits().to_vec();
        let closed = om::covectors_from_cocircuits(n, &cocircuits).unwrap();
        prop_assert!(verify_covector_axioms(n, &closed).passed());
        let g = m.tope_graph();
        let dist = g.distances();
        let topes = m.topes();
        // parallel elements are crossed together, so distance counts classes
        let classes = m.parallel_classes();
        for i in 0..topes.len() {
            for j in 0..topes.len() {
                let sep = topes[i].separation_set(&topes[j]).unwrap();
                let crossed = classes.iter().filter(|&&c| c & sep != 0).count();
                prop_assert_eq!(dist[i][j] as usize, crossed);
                if m.is_simple() {
                    prop_assert_eq!(dist[i][j], sep.count_ones());
                }
            }
        }
        let opts = VerifyOptions { tuple_samples: 2000, ..VerifyOptions::default() };
        for r in [
            verify::verify_q_axioms(&m).unwrap(),
            verify::verify_free_action(&m).unwrap(),
            verify::verify_s_to_q(&m, &opts).unwrap(),
            verify::verify_three_lemma(&m, &opts),
        ] {
            prop_assert!(r.passed(), "{:?}", r);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn deconing_matches_kunneth(m in realizable(), pick in 0usize..5) {
        let e = pick % m.ground().len();
        let r = verify::verify_deconing(&m, &[e], &VerifyOptions::default()).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }
}
