//! Matroid input files.
//!
//! An oriented matroid file has a `ground_set` and a `representation` whose
//! `kind` is `covectors` (`vectors`: sign strings), `chirotope` (`rank` and
//! `values`, a map from bases such as `"123"` to `"+"`, `"-"` or `"0"`;
//! missing bases are zero) or `matrix` (`rows` and `columns`, one column per
//! element; entries are integers, `[p, q]` pairs or decimal strings).
//! A lines file has `ground_set`, `rank` and `lines` instead.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use topepair_core::algebra::SimpleMatroid;
use topepair_core::linalg::{rat, Rational, RationalMatrix};
use topepair_core::om::{verify_chirotope_axioms, verify_covector_axioms};
use topepair_core::signvec::parse_over;
use topepair_core::{Chirotope, GroundSet, OrientedMatroid, Report, Sign, SignVector};

/// Reading or parsing failed; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<topepair_core::Error> for InputError {
    fn from(e: topepair_core::Error) -> InputError {
        InputError(e.to_string())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    ground_set: Vec<String>,
    representation: Option<Representation>,
    rank: Option<usize>,
    lines: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum Representation {
    Covectors { vectors: Vec<String> },
    Chirotope { rank: usize, values: BTreeMap<String, String> },
    Matrix { rows: usize, columns: Vec<Vec<Value>> },
}

/// A parsed input, before axiom validation.
pub enum Parsed {
    Covectors(GroundSet, Vec<SignVector>),
    Chirotope(Chirotope),
    Lines(SimpleMatroid),
}

pub struct Loaded {
    pub parsed: Parsed,
    pub sha256: String,
    pub path: String,
}

impl Loaded {
    pub fn format(&self) -> &'static str {
        match self.parsed {
            Parsed::Covectors(..) => "covectors",
            Parsed::Chirotope(_) => "chirotope",
            Parsed::Lines(_) => "lines",
        }
    }

    pub fn ground(&self) -> &GroundSet {
        match &self.parsed {
            Parsed::Covectors(g, _) => g,
            Parsed::Chirotope(c) => c.ground(),
            Parsed::Lines(m) => m.ground(),
        }
    }

    /// Axiom report for the file as given.
    pub fn axiom_report(&self) -> Report {
        match &self.parsed {
            Parsed::Covectors(g, v) => verify_covector_axioms(g.len(), v),
            Parsed::Chirotope(c) => verify_chirotope_axioms(c),
            Parsed::Lines(m) => {
                let mut r = Report::new();
                r.push("lines", true, format!("{} lines on {} points, rank {}", m.lines().len(), m.len(), m.rank()));
                r
            }
        }
    }

    /// The oriented matroid, failing on axiom violations.
    pub fn oriented(&self) -> Result<OrientedMatroid, InputError> {
        match &self.parsed {
            Parsed::Covectors(g, v) => Ok(OrientedMatroid::from_covectors(g.clone(), v)?),
            Parsed::Chirotope(c) => {
                if let Some(f) = verify_chirotope_axioms(c).first_failure() {
                    return Err(InputError(format!("chirotope axioms: {}: {}", f.name, f.detail)));
                }
                Ok(OrientedMatroid::from_chirotope(c)?)
            }
            Parsed::Lines(_) => {
                Err(InputError("a lines file has no orientation; give covectors, a chirotope or a matrix".into()))
            }
        }
    }

    /// The underlying simple matroid.
    pub fn matroid(&self) -> Result<SimpleMatroid, InputError> {
        match &self.parsed {
            Parsed::Lines(m) => Ok(m.clone()),
            _ => Ok(topepair_core::algebra::underlying_matroid(&self.oriented()?)?),
        }
    }

    /// Index of an element given by its label.
    pub fn element(&self, label: &str) -> Result<usize, InputError> {
        Ok(self.ground().index_of(label)?)
    }
}

pub fn load(path: &Path) -> Result<Loaded, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let sha256 = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    let text = std::str::from_utf8(&bytes).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let parsed = parse(text).map_err(|e| InputError(format!("{}: {}", path.display(), e.0)))?;
    Ok(Loaded { parsed, sha256, path: path.display().to_string() })
}

pub fn parse(text: &str) -> Result<Parsed, InputError> {
    let raw: RawInput =
        serde_json::from_str(text).map_err(|e| InputError(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let ground = GroundSet::new(raw.ground_set)?;
    match (raw.representation, raw.lines) {
        (Some(rep), None) => {
            if raw.rank.is_some() {
                return Err(InputError(
                    "top-level rank belongs to lines files; put it inside the representation".into(),
                ));
            }
            representation(ground, rep)
        }
        (None, Some(lines)) => {
            let rank = raw.rank.ok_or_else(|| InputError("lines need a rank".into()))?;
            let masks =
                lines.iter().map(|l| ground.mask_of(l.iter().map(String::as_str))).collect::<Result<Vec<_>, _>>()?;
            Ok(Parsed::Lines(SimpleMatroid::from_lines(ground, rank, &masks)?))
        }
        _ => Err(InputError("expected exactly one of representation, lines".into())),
    }
}

fn representation(ground: GroundSet, rep: Representation) -> Result<Parsed, InputError> {
    match rep {
        Representation::Covectors { vectors } => {
            let vectors = vectors.iter().map(|s| parse_over(&ground, s)).collect::<Result<Vec<_>, _>>()?;
            Ok(Parsed::Covectors(ground, vectors))
        }
        Representation::Chirotope { rank, values } => {
            let entries = values
                .iter()
                .map(|(basis, sign)| {
                    let tuple = basis_indices(&ground, basis)?;
                    let mut chars = sign.chars();
                    let s = match (chars.next(), chars.next()) {
                        (Some(c), None) => Sign::from_char(c)?,
                        _ => return Err(InputError(format!("basis {basis}: sign {sign:?} is not one of +, -, 0"))),
                    };
                    Ok((tuple, s))
                })
                .collect::<Result<Vec<_>, InputError>>()?;
            Ok(Parsed::Chirotope(Chirotope::from_entries(ground, rank, entries)?))
        }
        Representation::Matrix { rows, columns } => {
            if columns.len() != ground.len() {
                return Err(InputError(format!("{} columns for {} elements", columns.len(), ground.len())));
            }
            let columns = columns
                .iter()
                .map(|c| {
                    if c.len() != rows {
                        return Err(InputError(format!("every column needs {rows} entries")));
                    }
                    c.iter().map(rational).collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let m = RationalMatrix::from_columns(&columns);
            Ok(Parsed::Chirotope(topepair_core::om::chirotope_from_matrix(ground, &m)?))
        }
    }
}

/// Splits a basis key into element indices: comma or space separated labels,
/// or one character per element when every label is a single character.
fn basis_indices(ground: &GroundSet, key: &str) -> Result<Vec<usize>, InputError> {
    let labels: Vec<String> = if key.contains([',', ' ']) {
        key.split([',', ' ']).filter(|s| !s.is_empty()).map(str::to_string).collect()
    } else if ground.labels().iter().all(|l| l.chars().count() == 1) {
        key.chars().map(String::from).collect()
    } else {
        return Err(InputError(format!("basis {key:?}: separate multi-character labels with commas")));
    };
    Ok(labels.iter().map(|l| ground.index_of(l)).collect::<Result<Vec<_>, _>>()?)
}

fn rational(v: &Value) -> Result<Rational, InputError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| InputError(format!("matrix entry {n} is not an integer; use [p, q] or a decimal string"))),
        Value::Array(pair) => match pair.as_slice() {
            [Value::Number(p), Value::Number(q)] => match (p.as_i64(), q.as_i64()) {
                (Some(p), Some(q)) if q != 0 => Ok(rat(p) / rat(q)),
                _ => Err(InputError(format!("matrix entry [{p}, {q}] is not a fraction of integers"))),
            },
            _ => Err(InputError(format!("matrix entry {v} is not a [p, q] pair"))),
        },
        Value::String(s) => decimal(s.trim()).ok_or_else(|| InputError(format!("matrix entry {s:?} is not a decimal"))),
        other => Err(InputError(format!("matrix entry {other} is not a number"))),
    }
}

fn decimal(s: &str) -> Option<Rational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    let unsigned = int.strip_prefix(['-', '+']).unwrap_or(int);
    if (unsigned.is_empty() && frac.is_empty()) || !digits(unsigned) || !digits(frac) {
        return None;
    }
    format!("{int}{frac}/1{}", "0".repeat(frac.len())).parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let cov = r#"{"ground_set":["a"],"representation":{"kind":"covectors","vectors":["0","+","-"]}}"#;
        assert!(matches!(parse(cov).unwrap(), Parsed::Covectors(..)));
        let mat = r#"{"ground_set":["1","2","3"],
            "representation":{"kind":"matrix","rows":2,"columns":[[1,0],[0,1],["0.5",[-1,1]]]}}"#;
        let Parsed::Chirotope(c) = parse(mat).unwrap() else { panic!() };
        assert_eq!(c.table(), "+--");
        let chi = r#"{"ground_set":["1","2","3"],
            "representation":{"kind":"chirotope","rank":2,"values":{"12":"+","13":"-","32":"+"}}}"#;
        let Parsed::Chirotope(d) = parse(chi).unwrap() else { panic!() };
        assert_eq!(d.table(), c.table());
        let lines = r#"{"ground_set":["1","2","3"],"rank":2,"lines":[["1","2","3"]]}"#;
        assert!(matches!(parse(lines).unwrap(), Parsed::Lines(_)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("{\"ground_set\": [\"1\",").err().unwrap();
        assert!(e.0.starts_with("line 1, column"), "{}", e.0);
        let both = r#"{"ground_set":["1"],"representation":{"kind":"covectors","vectors":["0"]},"lines":[]}"#;
        assert!(parse(both).is_err());
        assert!(parse(r#"{"ground_set":["1"],"representation":{"kind":"covectors","vectors":["x"]}}"#).is_err());
        assert!(parse(r#"{"ground_set":["1"],"representation":{"kind":"tiles"}}"#).is_err());
        assert!(
            decimal("1.").is_some() && decimal("-.5").is_some() && decimal(".").is_none() && decimal("1e3").is_none()
        );
    }
}
