//! Mechanical checks of the structural claims about `S`, `Q`, the rotation,
//! deconing and the cycle map, each returned as a [`Report`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::models::{self, TopePair, TopePairPoset};
use crate::om::OrientedMatroid;
use crate::poset::{self, FinitePoset};
use crate::report::Report;
use crate::signvec::{Sign, SignVector};
use crate::topology::{self, HomologyProfile};

/// Knobs shared by the verifications.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Sampled fibers when the exhaustive scan is too large.
    pub fiber_samples: usize,
    /// Sampled tuples for tope-order identities on large matroids.
    pub tuple_samples: usize,
    /// Homology degree cap for `Δ(Q)`; `None` uses [`default_max_degree`].
    pub max_degree: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions { seed: 0, fiber_samples: 50, tuple_samples: 10_000, max_degree: None }
    }
}

/// Pair posets up to this size get exhaustive fiber and chain scans.
pub const EXHAUSTIVE_PAIRS: usize = 400;

/// Largest deconed pair poset whose cycle map is materialized.
pub const PSI_DECONE_LIMIT: usize = 100;

/// All degrees for small pair posets, degree 1 for large ones.
pub fn default_max_degree(q_len: usize) -> Option<usize> {
    if q_len > 1000 {
        Some(1)
    } else {
        None
    }
}

fn first_or(found: Option<String>, ok: String) -> String {
    found.unwrap_or(ok)
}

/// Order audit of `Q` plus agreement with the tope-graph geodesic description.
pub fn verify_q_axioms(m: &OrientedMatroid) -> Result<Report> {
    let mut report = Report::new();
    let q = match TopePairPoset::new(m) {
        Ok(q) => q,
        Err(e) => {
            report.push("partial-order", false, format!("{e}"));
            return Ok(report);
        }
    };
    let t = q.topes().len();
    report.push(
        "partial-order",
        true,
        format!("{} pairs, {} strict relations", q.len(), q.poset().strict_pair_count()),
    );
    report.push("pair-count", q.len() == t * t, format!("|Q| = {} = {t}^2", q.len()));
    let minimal = q.poset().minimal_elements();
    let diagonal = minimal.len() == t && minimal.iter().all(|&k| k / t == k % t);
    report.push("minimal-diagonal", diagonal, format!("{} minimal elements", minimal.len()));
    let dist = m.tope_graph().distances();
    let mut bad = None;
    'scan: for x in 0..q.len() {
        for y in 0..q.len() {
            if models::q_order_geodesic_oracle(&dist, (x / t, x % t), (y / t, y % t)) != q.poset().leq(x, y) {
                bad = Some(format!("{} vs {}", q.pair(x), q.pair(y)));
                break 'scan;
            }
        }
    }
    report.push("geodesic-oracle", bad.is_none(), first_or(bad, format!("{} comparisons", q.len() * q.len())));
    Ok(report)
}

/// `ρ` is an order-reversing bijection, `ρ²` is negation and `ρ⁴ = id`.
pub fn verify_rho(m: &OrientedMatroid) -> Result<Report> {
    let q = TopePairPoset::new(m)?;
    Ok(rho_report(&q))
}

pub fn rho_report(q: &TopePairPoset) -> Report {
    let mut report = Report::new();
    let rho = q.rotation();
    let n = q.len();
    let mut seen = vec![false; n];
    for &r in &rho {
        seen[r] = true;
    }
    report.push("bijection", seen.iter().all(|&s| s), format!("{n} pairs"));
    let pow = |k: usize, x: usize| (0..k).fold(x, |y, _| rho[y]);
    let negation = (0..n).all(|x| q.pair(pow(2, x)) == q.pair(x).negate());
    report.push("square-is-negation", negation, "rho^2 (T,R) = (-T,-R)");
    report.push("order-four", (0..n).all(|x| pow(4, x) == x), "rho^4 = id");
    let p = q.poset();
    let mut bad = None;
    'scan: for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) != p.leq(rho[y], rho[x]) {
                bad = Some(format!("{} <= {}", q.pair(x), q.pair(y)));
                break 'scan;
            }
        }
    }
    report.push("order-reversing", bad.is_none(), first_or(bad, format!("{} comparisons", n * n)));
    let orbits = q.orbits();
    report.push(
        "orbit-sizes",
        orbits.iter().all(|o| o.len() == 4),
        format!("{} orbits of size 4", orbits.iter().filter(|o| o.len() == 4).count()),
    );
    report
}

/// No chain of `Δ(Q)` is setwise fixed by `ρ`, `ρ²` or `ρ³`.
///
/// A setwise-fixed chain is fixed pointwise by `ρ²` (an order-preserving
/// bijection of a finite chain), and `ρ`, `ρ³` swap its ends, so `ρ²` fixes
/// its minimum. Hence freeness follows from `ρ²` having no fixed points. Small
/// posets also get an exhaustive chain scan; large ones a scan of chains with
/// at most three elements.
pub fn verify_free_action(m: &OrientedMatroid) -> Result<Report> {
    let q = TopePairPoset::new(m)?;
    Ok(free_action_report(&q))
}

pub fn free_action_report(q: &TopePairPoset) -> Report {
    let mut report = rho_report(q);
    let rho = q.rotation();
    let n = q.len();
    let sq: Vec<usize> = (0..n).map(|x| rho[rho[x]]).collect();
    let fixed = poset::fixed_points(&sq);
    report.push("square-fixed-points", fixed.is_empty(), format!("{} fixed pairs", fixed.len()));
    let powers: [Vec<usize>; 3] = [rho.clone(), sq.clone(), (0..n).map(|x| rho[sq[x]]).collect()];
    let cap = if n <= EXHAUSTIVE_PAIRS { None } else { Some(3) };
    let mut chains = 0usize;
    let mut bad = None;
    let mut image = Vec::new();
    q.poset().for_each_chain(cap, |c| {
        chains += 1;
        if bad.is_some() {
            return;
        }
        for (k, g) in powers.iter().enumerate() {
            image.clear();
            image.extend(c.iter().map(|&x| g[x as usize] as u32));
            image.sort_unstable();
            let mut sorted = c.to_vec();
            sorted.sort_unstable();
            if image == sorted {
                bad = Some(format!("chain {c:?} fixed by rho^{}", k + 1));
            }
        }
    });
    let scope = match cap {
        None => format!("all {chains} chains"),
        Some(k) => format!("{chains} chains with at most {k} elements"),
    };
    report.push("no-fixed-chain", bad.is_none(), first_or(bad, scope));
    report
}

fn acyclic(p: &FinitePoset<impl Clone>) -> bool {
    !p.is_empty() && topology::homology(&p.order_complex(), None).is_acyclic()
}

/// Indices of the fibers to check: all of them when `n` is small, otherwise
/// `samples` distinct ones drawn with the seed.
fn fiber_targets(n: usize, samples: usize, seed: u64) -> (Vec<usize>, bool) {
    if n <= EXHAUSTIVE_PAIRS || samples >= n {
        return ((0..n).collect(), true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = Vec::with_capacity(samples);
    while picked.len() < samples {
        let k = rng.gen_range(0..n);
        if !picked.contains(&k) {
            picked.push(k);
        }
    }
    (picked, false)
}

/// `(F,C) ↦ (C, F∘(−C))` is order-preserving and its lower fibers are acyclic.
pub fn verify_s_to_q(m: &OrientedMatroid, opts: &VerifyOptions) -> Result<Report> {
    let mut report = Report::new();
    let s = models::salvetti_poset(m)?;
    let q = TopePairPoset::new(m)?;
    let f = q.salvetti_image(&s)?;
    let violation = poset::poset_map_violation(&f, &s, q.poset());
    report.push(
        "order-preserving",
        violation.is_none(),
        match violation {
            None => format!("{} cells", s.len()),
            Some((a, b)) => format!("{} <= {} not preserved", s.element(a), s.element(b)),
        },
    );
    let special = s.elements().iter().zip(&f).all(|(c, &k)| {
        let p = q.pair(k);
        (c.face != c.tope || p == TopePair::new(c.tope, c.tope))
            && (!c.face.is_zero() || p == TopePair::new(c.tope, c.tope.negate()))
    });
    report.push("vertex-and-origin-cells", special, "(C,C) -> (C,C), (0,C) -> (C,-C)");
    let (targets, exhaustive) = fiber_targets(q.len(), opts.fiber_samples, opts.seed);
    let mut bad = None;
    for &k in &targets {
        let fiber = poset::fiber_below(&f, &s, q.poset(), k);
        if !acyclic(&fiber) {
            bad = Some(format!("fiber below {} ({} cells)", q.pair(k), fiber.len()));
            break;
        }
    }
    let scope = if exhaustive {
        format!("all {} fibers", targets.len())
    } else {
        format!("{} sampled fibers (seed {})", targets.len(), opts.seed)
    };
    report.push("fibers-acyclic", bad.is_none(), first_or(bad, scope));
    Ok(report)
}

/// Homology of `Δ(Q)` in degrees up to `max_degree`.
pub fn pair_poset_homology(q: &TopePairPoset, max_degree: Option<usize>) -> HomologyProfile {
    let k = q.poset().order_complex_capped(max_degree.map(|d| d + 1));
    topology::homology(&k, max_degree)
}

/// `H(Q) = H(S¹ × dQ)` and `H(S) = H(S¹ × dS)` for each listed element.
pub fn verify_deconing(m: &OrientedMatroid, elements: &[usize], opts: &VerifyOptions) -> Result<Report> {
    let mut report = Report::new();
    let q = TopePairPoset::new(m)?;
    let s = models::salvetti_poset(m)?;
    let cap = opts.max_degree.or(default_max_degree(q.len()));
    let hq = pair_poset_homology(&q, cap);
    let hs = topology::homology(&s.order_complex(), None);
    report.push("pairs-vs-cells", hq.agrees_with(&hs), format!("H(Q) = {hq}, H(S) = {hs}"));
    for &e in elements {
        let label = m.ground().label(e);
        let dq = models::decone_q(m, &q, e)?;
        let hdq = topology::homology(&dq.poset.order_complex_capped(cap.map(|d| d + 1)), cap);
        let kq = topology::kunneth_circle(&hdq);
        report.push(
            format!("pairs-{label}"),
            hq.agrees_with(&kq),
            format!("H(Q) = {hq}, S1 x H(dQ) = {kq} with H(dQ) = {hdq}"),
        );
        let ds = models::decone_salvetti(m, &s, e)?;
        let hds = topology::homology(&ds.poset.order_complex(), None);
        let ks = topology::kunneth_circle(&hds);
        report.push(format!("cells-{label}"), hs == ks, format!("H(S) = {hs}, S1 x H(dS) = {ks}"));
        let f = q.salvetti_image(&s)?;
        let restricted: Option<Vec<usize>> =
            ds.parent_indices.iter().map(|&c| dq.parent_indices.binary_search(&f[c]).ok()).collect();
        let lands = restricted.as_ref().is_some_and(|r| poset::is_poset_map(r, &ds.poset, &dq.poset));
        report.push(format!("restricted-map-{label}"), lands, "dS -> dQ is a poset map");
    }
    Ok(report)
}

/// The cycle map: order preservation, a homology isomorphism, acyclic upper
/// fibers, its symmetry under the rotation, and the joins it is built from.
pub fn verify_psi(m: &OrientedMatroid, e: usize) -> Result<Report> {
    let mut report = Report::new();
    let q = TopePairPoset::new(m)?;
    let dq = models::decone_q(m, &q, e)?;
    if dq.poset.len() > PSI_DECONE_LIMIT {
        report.skip(
            "budget",
            format!(
                "deconed pair poset has {} elements; the cycle map is built up to {PSI_DECONE_LIMIT}",
                dq.poset.len()
            ),
        );
        return Ok(report);
    }
    let map = models::psi(&q, &dq)?;
    let violation = poset::poset_map_violation(&map.images, &map.domain, q.poset());
    report.push(
        "order-preserving",
        violation.is_none(),
        match violation {
            None => format!("{} domain elements", map.domain.len()),
            Some((a, b)) => format!("domain elements {a} <= {b} not preserved"),
        },
    );
    if violation.is_some() {
        return Ok(report);
    }
    report.extend(models::psi_equivariance(&q, &dq));
    let mut join_bad = None;
    let mut joins = 0usize;
    let mut unique = 0usize;
    let p = q.poset();
    for c in dq.poset.chains(None) {
        let pairs: Vec<TopePair> = c.iter().map(|&k| *dq.poset.element(k as usize)).collect();
        use models::CycleCell::*;
        for (lo, hi, edge) in [(V0, V1, E01), (V1, V2, E12), (V2, V3, E23), (V3, V0, E03)] {
            joins += 1;
            let (a, b) = (models::psi_value(lo, &pairs), models::psi_value(hi, &pairs));
            let expected = models::psi_value(edge, &pairs);
            let (ia, ib, ie) = (q.index_of(&a)?, q.index_of(&b)?, q.index_of(&expected)?);
            let bounds: Vec<usize> = (0..q.len()).filter(|&u| p.leq(ia, u) && p.leq(ib, u)).collect();
            let minimal: Vec<usize> =
                bounds.iter().copied().filter(|&u| !bounds.iter().any(|&v| v != u && p.leq(v, u))).collect();
            let ok = models::q_join(&q, &a, &b).is_ok_and(|j| j == expected) && minimal.contains(&ie);
            if minimal.len() == 1 {
                unique += 1;
            }
            if !ok && join_bad.is_none() {
                join_bad = Some(format!("{}|{} on chain {c:?}", lo.label(), hi.label()));
            }
        }
    }
    report.push(
        "edge-joins",
        join_bad.is_none(),
        first_or(join_bad, format!("{joins} minimal upper bounds, {unique} of them the only one")),
    );
    let domain_complex = map.domain.order_complex();
    let target = q.poset().order_complex();
    let f: Vec<u32> = map.images.iter().map(|&k| k as u32).collect();
    let induced = topology::induced_homology_map(&f, &domain_complex, &target)?;
    report.push("homology-isomorphism", induced.isomorphism, format!("mapping cone homology {}", induced.cone));
    let mut bad = None;
    for k in 0..q.len() {
        let fiber = poset::fiber_above(&map.images, &map.domain, q.poset(), k);
        if !acyclic(&fiber) {
            bad = Some(format!("fiber above {} ({} elements)", q.pair(k), fiber.len()));
            break;
        }
    }
    report.push("fibers-acyclic", bad.is_none(), first_or(bad, format!("all {} fibers", q.len())));
    Ok(report)
}

/// `H₁` form of the product decomposition: the abelianized edge-path group of
/// `Δ(Q)` is `Z` plus that of `Δ(dQ)`.
pub fn verify_cordovil(m: &OrientedMatroid, e: usize) -> Result<Report> {
    let mut report = Report::new();
    let q = TopePairPoset::new(m)?;
    let dq = models::decone_q(m, &q, e)?;
    let kq = q.poset().order_complex_capped(Some(2));
    let kd = dq.poset.order_complex_capped(Some(2));
    let gq = topology::abelianization(&topology::fundamental_group(&kq, 0)?);
    let gd = topology::abelianization(&topology::fundamental_group(&kd, 0)?);
    let expected = topology::AbelianGroup::free(1).direct_sum(&gd);
    report.push("abelianized-groups", gq == expected, format!("pi1(Q)^ab = {gq}, Z + pi1(dQ)^ab = {expected}"));
    let h1 = topology::homology(&kq, Some(1)).degree(1).unwrap_or_default();
    report.push("hurewicz", h1 == gq, format!("H1(Q) = {h1}"));
    Ok(report)
}

fn leq(sep: &[u64], t: usize, b: usize, x: usize, y: usize) -> bool {
    sep[b * t + x] & !sep[b * t + y] == 0
}

/// The three tope-order identities, plus base independence of intervals.
pub fn verify_three_lemma(m: &OrientedMatroid, opts: &VerifyOptions) -> Report {
    let topes = m.topes();
    let t = topes.len();
    let sep: Vec<u64> = (0..t * t).map(|k| topes[k / t].separation_unchecked(&topes[k % t])).collect();
    let neg: Vec<usize> = topes.iter().map(|x| topes.binary_search(&x.negate()).expect("negation is a tope")).collect();
    let a_rule = |a: usize, b: usize, c: usize| !leq(&sep, t, b, a, c) || leq(&sep, t, neg[b], neg[a], neg[c]);
    let b_rule = |a: usize, b: usize, c: usize, d: usize| {
        !(leq(&sep, t, b, a, c) && leq(&sep, t, b, c, d)) || leq(&sep, t, a, c, d)
    };
    let c_rule = |a: usize, b: usize, c: usize| !leq(&sep, t, b, a, c) || leq(&sep, t, neg[c], b, a);
    let mut report = Report::new();
    let exhaustive = t <= 6;
    let mut fails = [None::<String>, None, None];
    let mut count = 0usize;
    let mut check = |a: usize, b: usize, c: usize, d: usize, fails: &mut [Option<String>; 3]| {
        count += 1;
        let show = |v: &[usize]| v.iter().map(|&i| format!("{}", topes[i])).collect::<Vec<_>>().join(",");
        if !a_rule(a, b, c) && fails[0].is_none() {
            fails[0] = Some(show(&[a, b, c]));
        }
        if !b_rule(a, b, c, d) && fails[1].is_none() {
            fails[1] = Some(show(&[a, b, c, d]));
        }
        if !c_rule(a, b, c) && fails[2].is_none() {
            fails[2] = Some(show(&[a, b, c]));
        }
    };
    if exhaustive {
        for k in 0..t * t * t * t {
            check(k % t, k / t % t, k / (t * t) % t, k / (t * t * t), &mut fails);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.tuple_samples {
            let v: [usize; 4] = core::array::from_fn(|_| rng.gen_range(0..t));
            check(v[0], v[1], v[2], v[3], &mut fails);
            // a random triple rarely satisfies the hypotheses; also test a comparable one
            let (a, b) = (v[0], v[1]);
            let above: Vec<usize> = (0..t).filter(|&c| leq(&sep, t, b, a, c)).collect();
            let c = above[rng.gen_range(0..above.len())];
            let further: Vec<usize> = (0..t).filter(|&d| leq(&sep, t, b, c, d)).collect();
            let d = further[rng.gen_range(0..further.len())];
            check(a, b, c, d, &mut fails);
        }
    }
    let scope = if exhaustive {
        format!("all {count} quadruples")
    } else {
        format!("{count} sampled quadruples (seed {})", opts.seed)
    };
    let [fa, fb, fc] = fails;
    report.push("negation", fa.is_none(), first_or(fa, scope.clone()));
    report.push("rebase", fb.is_none(), first_or(fb, scope.clone()));
    report.push("swap", fc.is_none(), first_or(fc, scope));
    if t <= 16 {
        let mut bad = None;
        let interval = |b: usize, r: usize, x: usize| -> Vec<usize> {
            (0..t).filter(|&y| leq(&sep, t, b, r, y) && leq(&sep, t, b, y, x)).collect()
        };
        for r in 0..t {
            for x in 0..t {
                let bases: Vec<usize> =
                    (0..t).filter(|&b| leq(&sep, t, b, r, x) && sep[x * t + r] & sep[b * t + r] == 0).collect();
                if let Some(&first) = bases.first() {
                    let reference = interval(first, r, x);
                    if bases.iter().any(|&b| interval(b, r, x) != reference) && bad.is_none() {
                        bad = Some(format!("[{}, {}]", topes[r], topes[x]));
                    }
                }
            }
        }
        report.push("interval-base", bad.is_none(), first_or(bad, format!("all {} tope pairs", t * t)));
    } else {
        report.skip("interval-base", format!("{t} topes; exhaustive scan limited to 16"));
    }
    report
}

/// Corrupted copies of the covector set: one covector dropped, one sign
/// flipped, one coordinate zeroed, or one foreign sign vector added.
pub fn covector_mutants(m: &OrientedMatroid, count: usize, seed: u64) -> Vec<Vec<SignVector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = m.covectors();
    let n = m.ground().len();
    let nonzero: Vec<usize> = (0..base.len()).filter(|&i| !base[i].is_zero()).collect();
    (0..count)
        .map(|k| {
            let mut v = base.to_vec();
            let i = nonzero[rng.gen_range(0..nonzero.len())];
            let support: Vec<usize> = (0..n).filter(|&j| base[i].support() >> j & 1 == 1).collect();
            let j = support[rng.gen_range(0..support.len())];
            match k % 4 {
                0 => {
                    v.remove(i);
                }
                1 => {
                    let flipped = -v[i].get(j);
                    v[i].set(j, flipped);
                }
                2 => v[i].set(j, Sign::Zero),
                _ => {
                    // every sign vector is a covector of a Boolean matroid
                    let foreign = (0..64).find_map(|_| {
                        let mut x = SignVector::zero(n);
                        for e in 0..n {
                            x.set(e, [Sign::Zero, Sign::Plus, Sign::Minus][rng.gen_range(0..3)]);
                        }
                        (!m.is_covector(&x)).then_some(x)
                    });
                    match foreign {
                        Some(x) => v.push(x),
                        None => {
                            v.remove(i);
                        }
                    }
                }
            }
            v
        })
        .collect()
}

/// Chain-complex lemmas on the face poset `F` (ordered with `0̂` on top):
/// `Δ† ≃ Δ`, the chain-extension map fixes exactly `Δ†`, and `Δ††` of tope
/// intervals is acyclic.
pub fn verify_chain_lemmas(m: &OrientedMatroid) -> Result<Report> {
    let mut report = Report::new();
    let p = models::face_poset(m).opposite();
    let h = topology::homology(&p.order_complex(), None);
    let dagger = p.dagger_complex()?;
    let hd = topology::homology(&dagger.order_complex(), None);
    report.push("dagger", h == hd, format!("H(F) = {h}, H(F dagger) = {hd}"));
    let chains = p.chain_poset();
    let top = p.unique_maximum().expect("dagger_complex succeeded") as u32;
    let extend: Vec<usize> = chains
        .elements()
        .iter()
        .map(|c| {
            let mut d = c.clone();
            if d.last() != Some(&top) {
                d.push(top);
            }
            chains.elements().iter().position(|x| *x == d).expect("chain through the top")
        })
        .collect();
    let increasing = poset::is_poset_map(&extend, &chains, &chains) && poset::is_increasing(&extend, &chains);
    let fixed = poset::fixed_points(&extend);
    let fixed_poset = chains.induced(&fixed);
    let hc = topology::homology(&chains.order_complex(), None);
    let hf = topology::homology(&fixed_poset.order_complex(), None);
    report.push(
        "monotone-retraction",
        increasing && fixed.len() == dagger.len() && hc == hf,
        format!("{} chains, {} fixed, H = {hc} vs {hf}", chains.len(), fixed.len()),
    );
    let topes = m.topes();
    let t = topes.len();
    if t <= 16 {
        let sep: Vec<u64> = (0..t * t).map(|k| topes[k / t].separation_unchecked(&topes[k % t])).collect();
        let mut bad = None;
        let mut count = 0usize;
        for b in 0..t {
            for r in 0..t {
                for x in (0..t).filter(|&x| leq(&sep, t, b, r, x)) {
                    let members: Vec<usize> =
                        (0..t).filter(|&y| leq(&sep, t, b, r, y) && leq(&sep, t, b, y, x)).collect();
                    let interval = FinitePoset::from_index_relation(members.clone(), |i, j| {
                        leq(&sep, t, b, members[i], members[j])
                    })?;
                    count += 1;
                    if !acyclic(&interval.double_dagger_complex()?) && bad.is_none() {
                        bad = Some(format!("[{}, {}] based at {}", topes[r], topes[x], topes[b]));
                    }
                }
            }
        }
        report.push("interval-double-dagger", bad.is_none(), first_or(bad, format!("{count} intervals")));
    } else {
        report.skip("interval-double-dagger", format!("{t} topes; exhaustive scan limited to 16"));
    }
    Ok(report)
}
