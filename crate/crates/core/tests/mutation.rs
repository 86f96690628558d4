use topepair_core::fixtures;
use topepair_core::models::{self, TopePairPoset};
use topepair_core::om::verify_covector_axioms;
use topepair_core::poset;
use topepair_core::verify::covector_mutants;

#[test]
fn covector_mutants_are_all_killed() {
    for (name, m) in [("hex", fixtures::hex()), ("b2", fixtures::boolean_b2()), ("non-pappus", fixtures::non_pappus())]
    {
        let n = m.ground().len();
        assert!(verify_covector_axioms(n, m.covectors()).passed());
        let mutants = covector_mutants(&m, 20, 0);
        let killed = mutants.iter().filter(|v| !verify_covector_axioms(n, v).passed()).count();
        assert_eq!(killed, 20, "{name}");
    }
}

#[test]
fn swapped_images_break_the_salvetti_map() {
    let m = fixtures::hex();
    let q = TopePairPoset::new(&m).unwrap();
    let s = models::salvetti_poset(&m).unwrap();
    let f = q.salvetti_image(&s).unwrap();
    assert!(poset::is_poset_map(&f, &s, q.poset()));
    let (a, b) = (0..s.len())
        .flat_map(|a| (0..s.len()).map(move |b| (a, b)))
        .find(|&(a, b)| s.lt(a, b) && f[a] != f[b])
        .unwrap();
    let mut g = f.clone();
    g.swap(a, b);
    assert!(poset::poset_map_violation(&g, &s, q.poset()).is_some());
}
