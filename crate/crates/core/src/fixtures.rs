//! Bundled oriented matroids.

use alloc::vec::Vec;

use crate::linalg::{rat, Rational};
use crate::om::{Chirotope, OrientedMatroid};
use crate::signvec::{GroundSet, SignVector};

fn parse_all(list: &[&str]) -> Vec<SignVector> {
    list.iter().map(|s| s.parse().expect("fixture sign vector")).collect()
}

/// Rank-one oriented matroid on a single element `e`: covectors `0, +, -`.
pub fn rank_one() -> OrientedMatroid {
    let g = GroundSet::new(["e"]).expect("ground set");
    OrientedMatroid::from_covectors(g, &parse_all(&["0", "+", "-"])).expect("rank-one fixture")
}

/// Two coordinate lines in the plane (Boolean rank 2): all nine sign vectors.
pub fn boolean_b2() -> OrientedMatroid {
    let g = GroundSet::numbered(2).expect("ground set");
    let all = ["00", "0+", "0-", "+0", "-0", "++", "+-", "-+", "--"];
    OrientedMatroid::from_covectors(g, &parse_all(&all)).expect("B2 fixture")
}

/// Three concurrent lines in the plane: 13 covectors, 6 topes.
pub fn hex() -> OrientedMatroid {
    let g = GroundSet::numbered(3).expect("ground set");
    let cov = [
        "000", //
        "-0+", "0++", "++0", "+0-", "0--", "--0", //
        "--+", "-++", "+++", "++-", "+--", "---",
    ];
    OrientedMatroid::from_covectors(g, &parse_all(&cov)).expect("hex fixture")
}

/// The six topes of [`hex`] in the order `A, B, C, D, E, F` of the
/// three-line picture: going around, `A–B–D–F–E–C–A`, with `F = -A`.
pub fn hex_topes() -> [SignVector; 6] {
    let v = parse_all(&["--+", "-++", "---", "+++", "+--", "++-"]);
    [v[0], v[1], v[2], v[3], v[4], v[5]]
}

/// Homogeneous coordinates of a rational Pappus configuration on points
/// `1..=9`, with lines 123, 157, 168, 247, 269, 348, 359, 456 and 789.
pub fn pappus_columns() -> Vec<Vec<Rational>> {
    let pts: [[i64; 3]; 9] =
        [[0, 0, 1], [1, 0, 1], [2, 0, 1], [0, 1, 1], [1, 1, 1], [3, 1, 1], [1, 1, 2], [6, 2, 5], [5, 1, 3]];
    pts.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
}

/// Chirotope of [`pappus_columns`] with the basis 789 set to `+`, in
/// lexicographic order of the 84 triples.
pub const NON_PAPPUS_CHIROTOPE: &str =
    "0++++++++++++------0--+0----++++++--0---+--++0-----+0--++0+++---0------+++---+++++++";

/// The eight three-point lines of the non-Pappus matroid.
pub const NON_PAPPUS_LINES: [&str; 8] = ["123", "157", "168", "247", "269", "348", "359", "456"];

pub fn non_pappus_chirotope() -> Chirotope {
    Chirotope::from_table(GroundSet::numbered(9).expect("ground set"), 3, NON_PAPPUS_CHIROTOPE)
        .expect("non-Pappus table")
}

/// Rank-3 oriented matroid on `1..=9` whose underlying matroid is the
/// non-Pappus matroid (`{7,8,9}` independent).
pub fn non_pappus() -> OrientedMatroid {
    OrientedMatroid::from_chirotope(&non_pappus_chirotope()).expect("non-Pappus fixture")
}

/// Bundled fixtures by name.
pub fn by_name(name: &str) -> Option<OrientedMatroid> {
    match name {
        "rank1" | "rank-one" => Some(rank_one()),
        "b2" | "boolean-b2" => Some(boolean_b2()),
        "hex" => Some(hex()),
        "non-pappus" | "non_pappus" => Some(non_pappus()),
        _ => None,
    }
}

pub const FIXTURE_NAMES: [&str; 4] = ["rank1", "b2", "hex", "non-pappus"];
