//! Worked examples on the bundled fixtures.

use topepair_core::algebra;
use topepair_core::fixtures;
use topepair_core::models::{self, TopePair, TopePairPoset};
use topepair_core::topology::{self, AbelianGroup, HomologyProfile};
use topepair_core::verify;
use topepair_core::FinitePoset;

fn betti(p: &FinitePoset<impl Clone>) -> Vec<usize> {
    topology::homology(&p.order_complex(), None).betti_numbers()
}

#[test]
fn hex_faces_pairs_and_cells() {
    let m = fixtures::hex();
    assert_eq!(m.covectors().len(), 13);
    assert_eq!(m.topes().len(), 6);
    assert_eq!(m.cocircuits().len(), 6);
    let g = m.tope_graph();
    assert_eq!(g.edge_count(), 6);
    assert!((0..6).all(|i| g.neighbors(i).len() == 2));
    let s = models::salvetti_poset(&m).unwrap();
    assert_eq!(s.len(), 24);
    let q = TopePairPoset::new(&m).unwrap();
    assert_eq!(q.len(), 36);
    let image = q.salvetti_image(&s).unwrap();
    let dist = g.distances();
    let mut hit: Vec<usize> = image.clone();
    hit.sort();
    hit.dedup();
    let expected: Vec<usize> = (0..36)
        .filter(|&k| {
            let p = q.pair(k);
            let d = dist[m.tope_index(&p.first).unwrap()][m.tope_index(&p.second).unwrap()];
            matches!(d, 0 | 1 | 3)
        })
        .collect();
    assert_eq!(hit, expected);
    assert_eq!(hit.len(), 24);
    assert_eq!(betti(q.poset()), vec![1, 3, 2]);
    assert_eq!(topology::euler_characteristic(&q.poset().order_complex()), 0);
}

#[test]
fn rank_one_circle() {
    let m = fixtures::rank_one();
    let q = TopePairPoset::new(&m).unwrap();
    assert_eq!(q.len(), 4);
    assert_eq!(q.poset().cover_pairs().len(), 4);
    let k = q.poset().order_complex();
    assert_eq!(k.f_vector(), vec![4, 4]);
    assert_eq!(betti(q.poset()), vec![1, 1]);
    let sub = q.poset().chain_poset();
    assert_eq!(sub.order_complex().f_vector(), vec![8, 8]);
    let g = topology::fundamental_group(&k, 0).unwrap();
    assert_eq!((g.generators, g.relators.len()), (1, 0));
    assert_eq!(topology::abelianization(&g), AbelianGroup::free(1));
    let dq = models::decone_q(&m, &q, 0).unwrap();
    assert_eq!(dq.poset.len(), 1);
    let s = models::salvetti_poset(&m).unwrap();
    assert_eq!(s.len(), 4);
    assert_eq!(betti(&s), vec![1, 1]);
}

#[test]
fn hex_rotation_orbit() {
    let m = fixtures::hex();
    let [a, ..] = fixtures::hex_topes();
    let f = a.negate();
    let x = TopePair::new(a, a);
    let orbit = [x.rotate(), x.rotate().rotate(), x.rotate().rotate().rotate(), x.rotate().rotate().rotate().rotate()];
    assert_eq!(orbit, [TopePair::new(a, f), TopePair::new(f, f), TopePair::new(f, a), x]);
    let q = TopePairPoset::new(&m).unwrap();
    assert_eq!(q.orbits().len(), 9);
}

#[test]
fn hex_deconing() {
    let m = fixtures::hex();
    let q = TopePairPoset::new(&m).unwrap();
    for e in 0..3 {
        let dq = models::decone_q(&m, &q, e).unwrap();
        assert_eq!(dq.poset.len(), 9);
        let h = topology::homology(&dq.poset.order_complex(), None);
        assert_eq!(h.betti_numbers(), vec![1, 2]);
        assert_eq!(h.euler_characteristic(), -1);
        assert_eq!(topology::kunneth_circle(&h), HomologyProfile::from_betti(&[1, 3, 2], true));
        let g = topology::fundamental_group(&q.poset().order_complex(), 0).unwrap();
        assert_eq!(topology::abelianization(&g), AbelianGroup::free(3));
    }
}

#[test]
fn cone_is_acyclic() {
    let p = FinitePoset::from_index_relation((0..4).collect::<Vec<usize>>(), |i, j| i == j || j == 3).unwrap();
    let h = topology::homology(&p.order_complex(), None);
    assert!(h.is_acyclic());
    let g = topology::fundamental_group(&p.order_complex(), 0).unwrap();
    assert!(topology::abelianization(&g).is_trivial());
}

#[test]
fn chain_lemmas_on_small_fixtures() {
    for m in [fixtures::rank_one(), fixtures::boolean_b2(), fixtures::hex()] {
        let r = verify::verify_chain_lemmas(&m).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn matroid_invariants() {
    let b2 = algebra::underlying_matroid(&fixtures::boolean_b2()).unwrap();
    assert_eq!(algebra::whitney_numbers(&b2), vec![1, 2, 1]);
    assert!(b2.lines().is_empty());
    assert_eq!(algebra::os_truncation(&b2).dim2(), 1);
    assert!(algebra::local_components(&b2).is_empty());
    let u23 = algebra::underlying_matroid(&fixtures::hex()).unwrap();
    assert_eq!(u23.rank(), 2);
    assert_eq!(u23.lines().len(), 1);
    assert_eq!(algebra::whitney_numbers(&u23).iter().sum::<u64>(), 6);
    let comps = algebra::local_components(&u23);
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].dimension(), 2);
    let scan = algebra::resonance_scan_finite_field(&u23, 3).unwrap();
    assert_eq!((scan.points, scan.resonant, scan.outliers), (27, 8, 0));
    assert_eq!(scan.local_not_resonant, 0);
}
