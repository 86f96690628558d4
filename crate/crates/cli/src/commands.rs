use rayon::prelude::*;
use serde_json::{json, Value};
use topepair_core::algebra::{self, FieldScan, SimpleMatroid};
use topepair_core::linalg::Rational;
use topepair_core::models::{self, TopePairPoset};
use topepair_core::topology::{self, HomologyProfile};
use topepair_core::verify::{self, VerifyOptions};
use topepair_core::{FinitePoset, OrientedMatroid, Report};

use crate::input::{InputError, Loaded};
use crate::output::prefixed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Structure {
    Faces,
    Salvetti,
    TopePairs,
    DeconeQ,
    DeconeS,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// Order axioms of the pair poset and the geodesic description.
    QAxioms,
    /// The rotation (T,R) -> (R,-T): order-reversing, order four.
    Rho,
    /// Rotation checks plus freeness on chains.
    FreeAction,
    /// The cell-to-pair map and its fibers.
    SToQ,
    /// Homology of the pairs and cells against the circle times the deconed part.
    Deconing,
    /// The cycle map into the pairs (needs an element).
    Psi,
    /// Abelianized fundamental groups (needs an element).
    Cordovil,
    /// Identities of the based tope orders.
    #[value(name = "3lem")]
    TopeOrder,
    /// Every target above, with deconing over all elements and the cycle map
    /// and group check at the first element.
    All,
}

pub struct Outcome {
    pub report: Report,
    pub data: Value,
}

/// A poset with display labels as elements.
pub struct Built {
    pub name: String,
    pub poset: FinitePoset<String>,
}

fn relabel<T: Clone>(p: &FinitePoset<T>, label: impl Fn(&T) -> String) -> FinitePoset<String> {
    p.map(label)
}

fn need_element(loaded: &Loaded, e: Option<&str>, what: &str) -> Result<usize, InputError> {
    let label = e.ok_or_else(|| InputError(format!("{what} needs an element label")))?;
    loaded.element(label)
}

pub fn build(loaded: &Loaded, which: Structure, e: Option<&str>) -> Result<Built, InputError> {
    let m = loaded.oriented()?;
    let (name, poset) = match which {
        Structure::Faces => ("faces".to_string(), relabel(&models::face_poset(&m), |x| x.to_string())),
        Structure::Salvetti => ("salvetti".to_string(), relabel(&models::salvetti_poset(&m)?, |c| c.to_string())),
        Structure::TopePairs => ("tope-pairs".to_string(), relabel(TopePairPoset::new(&m)?.poset(), |p| p.to_string())),
        Structure::DeconeQ => {
            let k = need_element(loaded, e, "decone-q")?;
            let q = TopePairPoset::new(&m)?;
            let d = models::decone_q(&m, &q, k)?;
            (format!("decone-q-{}", m.ground().label(k)), relabel(&d.poset, |p| p.to_string()))
        }
        Structure::DeconeS => {
            let k = need_element(loaded, e, "decone-s")?;
            let s = models::salvetti_poset(&m)?;
            let d = models::decone_salvetti(&m, &s, k)?;
            (format!("decone-s-{}", m.ground().label(k)), relabel(&d.poset, |c| c.to_string()))
        }
    };
    Ok(Built { name, poset })
}

impl Built {
    pub fn dot(&self) -> String {
        self.poset.hasse_dot(&self.name, |s| s.clone())
    }

    pub fn json(&self) -> Value {
        let covers: Vec<[usize; 2]> = self.poset.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect();
        json!({
            "schema": crate::output::SCHEMA,
            "kind": self.name,
            "elements": self.poset.elements(),
            "covers": covers,
        })
    }

    pub fn summary(&self) -> Value {
        json!({
            "kind": self.name,
            "elements": self.poset.len(),
            "covers": self.poset.cover_pairs().len(),
            "minimal": self.poset.minimal_elements().len(),
            "maximal": self.poset.maximal_elements().len(),
        })
    }
}

fn groups(h: &HomologyProfile) -> Vec<String> {
    let mut out: Vec<String> = h.groups().iter().map(|g| g.to_string()).collect();
    if !h.is_complete() {
        out.push("…".into());
    }
    out
}

pub fn homology(built: &Built, max_degree: Option<usize>) -> Outcome {
    let cap = max_degree.or(verify::default_max_degree(built.poset.len()));
    let k = built.poset.order_complex_capped(cap.map(|d| d + 1));
    let h = topology::homology(&k, cap);
    let mut report = Report::new();
    report.push(
        "boundary-squared",
        topology::ChainComplex::from_simplicial(&k, None, true).boundary_squared_violation().is_none(),
        "d^2 = 0",
    );
    if h.is_complete() {
        let chi = k.euler_characteristic();
        report.push("euler", chi == h.euler_characteristic(), format!("chi = {chi}"));
    }
    let data = json!({
        "kind": built.name,
        "f_vector": k.f_vector(),
        "homology": groups(&h),
        "complete": h.is_complete(),
    });
    Outcome { report, data }
}

pub fn verify_target(
    m: &OrientedMatroid,
    target: Target,
    e: Option<usize>,
    opts: &VerifyOptions,
) -> Result<Outcome, InputError> {
    let need = |what: &str| e.ok_or_else(|| InputError(format!("{what} needs an element label")));
    let report = match target {
        Target::QAxioms => verify::verify_q_axioms(m)?,
        Target::Rho => {
            let q = TopePairPoset::new(m)?;
            let orbits: Vec<Value> = q
                .orbits()
                .iter()
                .enumerate()
                .map(|(k, o)| {
                    let members: Vec<String> = o.iter().map(|&i| q.pair(i).to_string()).collect();
                    json!({ "orbit_id": k, "members": members })
                })
                .collect();
            return Ok(Outcome { report: verify::rho_report(&q), data: json!({ "orbits": orbits }) });
        }
        Target::FreeAction => verify::verify_free_action(m)?,
        Target::SToQ => verify::verify_s_to_q(m, opts)?,
        Target::Deconing => {
            let elements: Vec<usize> = match e {
                Some(k) => vec![k],
                None => (0..m.ground().len()).filter(|&k| !m.is_loop(k)).collect(),
            };
            verify::verify_deconing(m, &elements, opts)?
        }
        Target::Psi => verify::verify_psi(m, need("psi")?)?,
        Target::Cordovil => verify::verify_cordovil(m, need("cordovil")?)?,
        Target::TopeOrder => verify::verify_three_lemma(m, opts),
        Target::All => return verify_all(m, e, opts),
    };
    Ok(Outcome { report, data: Value::Null })
}

fn verify_all(m: &OrientedMatroid, e: Option<usize>, opts: &VerifyOptions) -> Result<Outcome, InputError> {
    let first = e.or_else(|| (0..m.ground().len()).find(|&k| !m.is_loop(k)));
    let targets = [
        ("q-axioms", Target::QAxioms, None),
        ("free-action", Target::FreeAction, None),
        ("s-to-q", Target::SToQ, None),
        ("deconing", Target::Deconing, e),
        ("psi", Target::Psi, first),
        ("cordovil", Target::Cordovil, first),
        ("3lem", Target::TopeOrder, None),
    ];
    let parts: Vec<Result<Report, InputError>> = targets
        .par_iter()
        .map(|&(name, t, k)| verify_target(m, t, k, opts).map(|o| prefixed(name, o.report)))
        .collect();
    let mut report = Report::new();
    for p in parts {
        report.extend(p?);
    }
    Ok(Outcome { report, data: Value::Null })
}

fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Splits the scan into chunks and merges them in order.
pub fn field_scan(m: &SimpleMatroid, q: u64) -> Result<FieldScan, InputError> {
    let total = algebra::field_scan_size(m, q)?;
    let a = algebra::os_truncation(m);
    let chunk = (total / 256).max(1024);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let parts: Vec<FieldScan> =
        starts.par_iter().map(|&s| algebra::resonance_scan_range(&a, m, q, s, (s + chunk).min(total))).collect();
    Ok(parts.into_iter().fold(FieldScan { q, ..FieldScan::default() }, FieldScan::merge))
}

pub fn resonance(m: &SimpleMatroid, scan_field: Option<u64>) -> Result<Outcome, InputError> {
    let mut report = Report::new();
    let a = algebra::os_truncation(m);
    report.extend(algebra::os_relations_report(&a, m));
    let comps = algebra::local_components(m);
    report.extend(algebra::components_report(&a, &comps)?);
    let k = comps.len();
    let names: Vec<String> = comps.iter().map(|c| format!("l{}", m.show(c.support))).collect();
    let subset_names =
        |s: u64| -> Vec<String> { (0..k).filter(|&c| s >> c & 1 == 1).map(|c| names[c].clone()).collect() };
    let mut data = serde_json::Map::new();
    data.insert("lines".into(), json!(m.lines().iter().map(|&l| m.show(l)).collect::<Vec<_>>()));
    data.insert("rank".into(), json!(m.rank()));
    data.insert("whitney_numbers".into(), json!(algebra::whitney_numbers(m)));
    data.insert("dim_a2".into(), json!(a.dim2()));
    data.insert(
        "components".into(),
        Value::Array(
            comps
                .iter()
                .zip(&names)
                .map(|(c, n)| {
                    let basis: Vec<Vec<String>> = (0..c.basis.rows()).map(|r| vector_strings(c.basis.row(r))).collect();
                    json!({
                        "name": n,
                        "kind": c.kind.as_str(),
                        "support": m.show(c.support),
                        "dimension": c.dimension(),
                        "basis": basis,
                    })
                })
                .collect(),
        ),
    );
    if (1..=20).contains(&k) {
        let table = algebra::dimension_table(&comps)?;
        report.extend(algebra::dimension_function_report(k, &table));
        let closed = algebra::closed_sets_from_table(k, &table);
        let triangles = algebra::triangle_closed_sets(&comps, &table);
        let mut whirls = Vec::new();
        let mut all_whirls = true;
        for &(s, supp) in &triangles {
            let w = supp.count_ones() == 6 && algebra::is_whirl(m, supp)?;
            all_whirls &= w;
            whirls.push(json!({ "components": subset_names(s), "support": m.show(supp), "whirl": w }));
        }
        report.push(
            "triangle-supports-are-whirls",
            all_whirls,
            format!("{} closed triples with d = 5", triangles.len()),
        );
        let mut full_rank_by_size = vec![0usize; k + 1];
        for s in 1u64..(1 << k) {
            if table[s as usize] == s.count_ones() as usize {
                full_rank_by_size[s.count_ones() as usize] += 1;
            }
        }
        data.insert(
            "dimension_function".into(),
            Value::Array(
                (1u64..(1 << k)).map(|s| json!({ "components": subset_names(s), "d": table[s as usize] })).collect(),
            ),
        );
        data.insert("subsets_with_d_equal_to_size".into(), json!(full_rank_by_size));
        data.insert(
            "closed_sets".into(),
            Value::Array(
                closed.iter().map(|&s| json!({ "components": subset_names(s), "d": table[s as usize] })).collect(),
            ),
        );
        data.insert("whirl_triangles".into(), Value::Array(whirls));
    } else if k > 20 {
        report.skip("dimension-function", format!("{k} components; subset scans allow at most 20"));
    }
    if m.len() <= 9 {
        let hits = algebra::multinet_support_scan(m)?;
        data.insert("multinet_supports".into(), json!(hits.iter().map(|&h| m.show(h)).collect::<Vec<_>>()));
    } else {
        report.skip("multinet-scan", format!("{} elements; the scan is limited to 9", m.len()));
    }
    if let Some(q) = scan_field {
        let scan = field_scan(m, q)?;
        report.push(
            "field-scan",
            scan.matches_local_census(),
            format!(
                "F_{q}: {} points, {} nonzero resonant, {} outliers, {} local points not resonant",
                scan.points, scan.resonant, scan.outliers, scan.local_not_resonant
            ),
        );
        data.insert(
            "field_scan".into(),
            json!({
                "q": q,
                "points": scan.points,
                "resonant_nonzero": scan.resonant,
                "resonant_in_local": scan.resonant_in_local,
                "local_points": scan.local_points,
                "local_not_resonant": scan.local_not_resonant,
                "outliers": scan.outliers,
                "outlier_examples": scan.outlier_examples,
                "caveat": "resonance over a finite field can exceed resonance over C; outliers need separate analysis and never override the rational computation",
            }),
        );
    }
    Ok(Outcome { report, data: Value::Object(data) })
}

pub fn check(loaded: &Loaded) -> Outcome {
    let report = loaded.axiom_report();
    let data = if report.passed() {
        match loaded.oriented() {
            Ok(m) => json!({
                "elements": m.ground().len(),
                "rank": m.rank(),
                "covectors": m.covectors().len(),
                "topes": m.topes().len(),
                "cocircuits": m.cocircuits().len(),
                "simple": m.is_simple(),
            }),
            Err(_) => Value::Null,
        }
    } else {
        Value::Null
    };
    Outcome { report, data }
}
