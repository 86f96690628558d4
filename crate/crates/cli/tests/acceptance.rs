//! Acceptance criteria, one line each. Run with
//! `cargo test -p topepair --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;
use topepair_core::algebra::{self, ComponentKind};
use topepair_core::fixtures;
use topepair_core::models::{self, TopePairPoset};
use topepair_core::om::verify_covector_axioms;
use topepair_core::topology::{self, ChainComplex, HomologyProfile};
use topepair_core::verify::{self, VerifyOptions};
use topepair_core::{FinitePoset, OrientedMatroid, Report, SignVector};

type Outcome = Result<String, String>;

/// Name, time budget in seconds, and the check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn bundled() -> Vec<(&'static str, OrientedMatroid)> {
    fixtures::FIXTURE_NAMES.iter().map(|&n| (n, fixtures::by_name(n).unwrap())).collect()
}

fn small() -> Vec<(&'static str, OrientedMatroid)> {
    bundled().into_iter().filter(|(n, _)| *n != "non-pappus").collect()
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn passed(name: &str, r: core::result::Result<Report, topepair_core::Error>) -> Result<Report, String> {
    let r = r.map_err(|e| format!("{name}: {e}"))?;
    if let Some(f) = r.first_failure() {
        return Err(format!("{name}: {} ({})", f.name, f.detail));
    }
    if let Some(s) = r.checks.iter().find(|c| c.status == topepair_core::Status::Skipped) {
        return Err(format!("{name}: {} skipped ({})", s.name, s.detail));
    }
    Ok(r)
}

fn cli(args: &[&str]) -> Vec<u8> {
    Command::new(env!("CARGO_BIN_EXE_topepair")).args(args).output().expect("binary runs").stdout
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn hex_reproduction() -> Outcome {
    let m = fixtures::hex();
    let s = models::salvetti_poset(&m).map_err(|e| e.to_string())?;
    let q = TopePairPoset::new(&m).map_err(|e| e.to_string())?;
    let sizes = (m.covectors().len(), m.topes().len(), s.len(), q.len());
    ensure(sizes == (13, 6, 24, 36), format!("sizes {sizes:?}"))?;
    let dist = m.tope_graph().distances();
    let mut image = q.salvetti_image(&s).map_err(|e| e.to_string())?;
    image.sort();
    image.dedup();
    let expected: Vec<usize> = (0..q.len())
        .filter(|&k| {
            let p = q.pair(k);
            matches!(dist[m.tope_index(&p.first).unwrap()][m.tope_index(&p.second).unwrap()], 0 | 1 | 3)
        })
        .collect();
    ensure(image == expected && image.len() == 24, format!("image has {} pairs", image.len()))?;
    Ok("13 covectors, 6 topes, |S| = 24, |Q| = 36, image = the 24 pairs at distance 0, 1, 3".into())
}

fn rotation_action() -> Outcome {
    for (name, m) in bundled() {
        passed(name, verify::verify_free_action(&m))?;
    }
    Ok("order-reversing bijection of order 4 acting freely on rank1, b2, hex, non-pappus".into())
}

fn salvetti_fibers() -> Outcome {
    let opts = VerifyOptions::default();
    let mut parts = Vec::new();
    for (name, m) in bundled() {
        let r = passed(name, verify::verify_s_to_q(&m, &opts))?;
        let fibers = r.checks.iter().find(|c| c.name == "fibers-acyclic").map(|c| c.detail.clone()).unwrap_or_default();
        parts.push(format!("{name}: {fibers}"));
    }
    Ok(parts.join("; "))
}

fn deconing() -> Outcome {
    let opts = VerifyOptions::default();
    let start = Instant::now();
    for (name, m) in small() {
        let all: Vec<usize> = (0..m.ground().len()).collect();
        passed(name, verify::verify_deconing(&m, &all, &opts))?;
    }
    let small_time = start.elapsed();
    ensure(small_time < Duration::from_secs(5), format!("small fixtures took {small_time:?}"))?;
    let m = fixtures::non_pappus();
    let all: Vec<usize> = (0..9).collect();
    passed("non-pappus", verify::verify_deconing(&m, &all, &opts))?;
    let q = TopePairPoset::new(&m).map_err(|e| e.to_string())?;
    let hq = verify::pair_poset_homology(&q, Some(1));
    let dq = models::decone_q(&m, &q, 0).map_err(|e| e.to_string())?;
    let hd = topology::homology(&dq.poset.order_complex_capped(Some(2)), Some(1));
    let (bq, bd) = (hq.betti_numbers(), hd.betti_numbers());
    ensure(bq == [1, 9] && bd == [1, 8], format!("b(Q) = {bq:?}, b(dQ) = {bd:?}"))?;
    ensure(!hq.has_torsion() && !hd.has_torsion(), "torsion in degree <= 1")?;
    Ok(format!(
        "all elements of all fixtures; non-pappus b1(Q) = 9 = 1 + b1(dQ) = 1 + 8; small fixtures in {small_time:.1?}"
    ))
}

fn psi() -> Outcome {
    for (name, m) in [("rank1", fixtures::rank_one()), ("hex", fixtures::hex())] {
        for e in 0..m.ground().len() {
            passed(name, verify::verify_psi(&m, e))?;
        }
    }
    Ok("order-preserving, homology isomorphism, acyclic fibers on rank1 and hex, every element".into())
}

fn cordovil() -> Outcome {
    for (name, m) in small() {
        for e in 0..m.ground().len() {
            passed(name, verify::verify_cordovil(&m, e))?;
        }
    }
    Ok("pi1(Q)^ab = Z + pi1(dQ)^ab on rank1, b2, hex, every element".into())
}

fn resonance_reproduction() -> Outcome {
    let om = fixtures::non_pappus();
    let m = algebra::underlying_matroid(&om).map_err(|e| e.to_string())?;
    let mut lines: Vec<String> = m.lines().iter().map(|&l| m.show(l)).collect();
    lines.sort();
    ensure(lines == fixtures::NON_PAPPUS_LINES, format!("lines {lines:?}"))?;
    let a = algebra::os_truncation(&m);
    ensure(a.dim2() == 28, format!("dim A2 = {}", a.dim2()))?;
    let w = algebra::whitney_numbers(&m);
    ensure(w == [1, 9, 28, 20] && om.topes().len() == 58, format!("whitney {w:?}, {} topes", om.topes().len()))?;
    let comps = algebra::local_components(&m);
    ensure(
        comps.len() == 8 && comps.iter().all(|c| c.dimension() == 2 && c.kind == ComponentKind::Local),
        "expected 8 local components of dimension 2",
    )?;
    let report = algebra::components_report(&a, &comps).map_err(|e| e.to_string())?;
    ensure(report.passed(), format!("{:?}", report.first_failure()))?;
    let table = algebra::dimension_table(&comps).map_err(|e| e.to_string())?;
    let index = |s: &str| comps.iter().position(|c| m.show(c.support) == s).unwrap();
    let triple = [index("123"), index("157"), index("359")].iter().fold(0u64, |acc, &i| acc | 1 << i);
    ensure(table[triple as usize] == 5, format!("d(l123, l157, l359) = {}", table[triple as usize]))?;
    let five = (0u64..256).filter(|s| s.count_ones() == 5 && table[*s as usize] == 5).count();
    ensure(five == 0, format!("{five} five-subsets with d = 5"))?;
    for s in ["123579", "245679", "145678", "123478"] {
        let mask = m.ground().mask_of((0..6).map(|k| &s[k..k + 1])).map_err(|e| e.to_string())?;
        ensure(algebra::is_whirl(&m, mask).map_err(|e| e.to_string())?, format!("{s} is not a whirl"))?;
    }
    let hits = algebra::multinet_support_scan(&m).map_err(|e| e.to_string())?;
    ensure(hits.is_empty(), format!("multinet supports {hits:?}"))?;
    Ok("8 lines, 8 local components of dim 2 meeting in 0, d = 5 at l123 l157 l359, no 5-subset with d = 5, 4 whirls, no multinet support, dim A2 = 28, (1,9,28,20), 58 topes".into())
}

fn field_oracle() -> Outcome {
    let out = cli(&["resonance", &fixture("non_pappus_lines.json"), "--scan-field", "3", "--json"]);
    let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let scan = &v["data"]["field_scan"];
    ensure(scan["points"] == 19683, format!("{} points", scan["points"]))?;
    ensure(scan["outliers"] == 0 && scan["local_not_resonant"] == 0, format!("{scan}"))?;
    ensure(scan["caveat"].as_str().is_some_and(|c| !c.is_empty()), "missing caveat")?;
    Ok(format!(
        "F_3: 19683 points, {} nonzero resonant, all in local components; caveat recorded",
        scan["resonant_nonzero"]
    ))
}

fn property_suites() -> Outcome {
    // sign-vector laws, exhaustive on |E| = 4
    let all: Vec<SignVector> = (0..81u32)
        .map(|mut k| {
            let mut s = String::new();
            for _ in 0..4 {
                s.push(['0', '+', '-'][(k % 3) as usize]);
                k /= 3;
            }
            s.parse().unwrap()
        })
        .collect();
    for x in &all {
        for y in &all {
            let xy = x.compose(y).unwrap();
            ensure(x.sv_leq(&xy).unwrap(), "X <= X o Y")?;
            ensure(x.separation_set(y).unwrap() == y.separation_set(x).unwrap(), "separation symmetry")?;
            ensure(
                x.negate().separation_set(&y.negate()).unwrap() == x.separation_set(y).unwrap(),
                "separation negation",
            )?;
            for z in &all {
                ensure(xy.compose(z).unwrap() == x.compose(&y.compose(z).unwrap()).unwrap(), "associativity")?;
            }
        }
    }
    // covector mutants
    let mut killed = 0;
    let mut total = 0;
    for (_, m) in bundled() {
        for v in verify::covector_mutants(&m, 20, 0) {
            total += 1;
            killed += usize::from(!verify_covector_axioms(m.ground().len(), &v).passed());
        }
    }
    ensure(killed == total, format!("{killed}/{total} mutants killed"))?;
    // tope-order identities
    for (name, m) in bundled() {
        let r = verify::verify_three_lemma(&m, &VerifyOptions::default());
        ensure(r.passed(), format!("{name}: {:?}", r.first_failure()))?;
    }
    // order complexes of the bundled posets
    let mut complexes = 0;
    for (_, m) in small() {
        let faces = models::face_poset(&m).map(|_| ());
        let cells = models::salvetti_poset(&m).map_err(|e| e.to_string())?.map(|_| ());
        let q = TopePairPoset::new(&m).map_err(|e| e.to_string())?.poset().map(|_| ());
        for p in [faces, cells, q] {
            order_complex_laws(&p)?;
            complexes += 1;
        }
    }
    // determinism across runs and pool sizes
    let args = ["verify", &fixture("hex.json"), "all", "--json"];
    let first = cli(&args);
    let second = cli(&args);
    let single = Command::new(env!("CARGO_BIN_EXE_topepair"))
        .args(args)
        .env("TOPEPAIR_THREADS", "1")
        .output()
        .map_err(|e| e.to_string())?
        .stdout;
    ensure(!first.is_empty() && first == second && first == single, "reports differ between runs")?;
    Ok(format!(
        "sign laws on 81^3 triples, {killed}/{total} mutants killed, tope-order identities on 4 fixtures, {complexes} order complexes, identical reports"
    ))
}

fn order_complex_laws(p: &FinitePoset<()>) -> Result<(), String> {
    let k = p.order_complex();
    ensure(k.same_simplices(&p.opposite().order_complex()), "order complex differs from the opposite's")?;
    ensure(ChainComplex::from_simplicial(&k, None, true).boundary_squared_violation().is_none(), "d^2 != 0")?;
    let h: HomologyProfile = topology::homology(&k, None);
    ensure(h.euler_characteristic() == k.euler_characteristic(), "euler characteristic")
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("hex reproduction", 1, hex_reproduction),
        ("rotation acts freely", 30, rotation_action),
        ("salvetti map fibers", 60, salvetti_fibers),
        ("deconing homology", 600, deconing),
        ("cycle map", 60, psi),
        ("abelianized fundamental groups", 10, cordovil),
        ("non-pappus resonance", 60, resonance_reproduction),
        ("finite-field oracle", 300, field_oracle),
        ("property suites", 120, property_suites),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed <= Duration::from_secs(*budget) {
                Ok(d)
            } else {
                Err(format!("{d}; over the {budget} s budget"))
            }
        });
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {status} [{name}] {elapsed:.2?} {detail}", i + 1);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
