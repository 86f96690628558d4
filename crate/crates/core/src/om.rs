//! Oriented matroids given by their covectors.
//!
//! Covector sets can be supplied directly, or derived from a chirotope (basis
//! orientation) or a rational realization matrix. Topes, cocircuits and the
//! rank are computed from the covector poset, never trusted from input.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{signum, RationalMatrix};
use crate::report::Report;
use crate::signvec::{GroundSet, Sign, SignVector};
use crate::subsets::{binomial, combinations, mask_members, sort_with_parity, subset_rank};

/// Checks the covector axioms on a candidate set of sign vectors of length `len`:
/// zero vector, symmetry, closure under composition, and elimination.
pub fn verify_covector_axioms(len: usize, candidate: &[SignVector]) -> Report {
    let mut report = Report::new();
    if let Some(bad) = candidate.iter().find(|v| v.len() != len) {
        report.push("length", false, format!("{bad} has length {}, expected {len}", bad.len()));
        return report;
    }
    let mut set: Vec<SignVector> = candidate.to_vec();
    set.sort();
    set.dedup();
    let contains = |v: &SignVector| set.binary_search(v).is_ok();

    let zero = SignVector::zero(len);
    report.push(
        "zero",
        contains(&zero),
        if contains(&zero) { String::new() } else { String::from("missing zero vector") },
    );

    let asym = set.iter().find(|v| !contains(&v.negate()));
    report.push(
        "symmetry",
        asym.is_none(),
        asym.map(|v| format!("{v} present but {} missing", v.negate())).unwrap_or_default(),
    );

    let mut comp_witness = None;
    'comp: for x in &set {
        for y in &set {
            let xy = x.compose_unchecked(y);
            if !contains(&xy) {
                comp_witness = Some(format!("{x} o {y} = {xy} missing"));
                break 'comp;
            }
        }
    }
    report.push("composition", comp_witness.is_none(), comp_witness.unwrap_or_default());

    let mut elim_witness = None;
    'elim: for (i, x) in set.iter().enumerate() {
        for y in &set[i + 1..] {
            let sep = x.separation_unchecked(y);
            if sep == 0 {
                continue;
            }
            let xy = x.compose_unchecked(y);
            let keep = !sep;
            for e in mask_members(sep) {
                let bit = 1u64 << e;
                let found = set.iter().any(|z| {
                    z.support() & bit == 0
                        && z.plus_mask() & keep == xy.plus_mask() & keep
                        && z.minus_mask() & keep == xy.minus_mask() & keep
                });
                if !found {
                    elim_witness = Some(format!("no elimination of {x} and {y} at coordinate {}", e + 1));
                    break 'elim;
                }
            }
        }
    }
    report.push("elimination", elim_witness.is_none(), elim_witness.unwrap_or_default());
    report
}

/// Basis orientation: a sign for every ordered `rank`-tuple, stored on sorted tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chirotope {
    ground: GroundSet,
    rank: usize,
    values: Vec<Sign>,
}

impl Chirotope {
    /// `values` lists the signs of the sorted `rank`-subsets in lexicographic order.
    pub fn new(ground: GroundSet, rank: usize, values: Vec<Sign>) -> Result<Chirotope> {
        let n = ground.len();
        if rank == 0 || rank > n {
            return Err(Error::Axiom(format!("rank {rank} outside 1..={n}")));
        }
        let expected = binomial(n, rank);
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: values.len() });
        }
        Ok(Chirotope { ground, rank, values })
    }

    /// Parses a table written as one sign character per sorted subset.
    pub fn from_table(ground: GroundSet, rank: usize, table: &str) -> Result<Chirotope> {
        let values = table.chars().map(Sign::from_char).collect::<Result<Vec<_>>>()?;
        Chirotope::new(ground, rank, values)
    }

    /// Builds from explicit `(tuple, sign)` entries; unspecified bases are zero.
    /// Tuples may be in any order; the sign is adjusted by the sorting parity.
    pub fn from_entries<I>(ground: GroundSet, rank: usize, entries: I) -> Result<Chirotope>
    where
        I: IntoIterator<Item = (Vec<usize>, Sign)>,
    {
        let n = ground.len();
        let mut chi = Chirotope::new(ground, rank, vec![Sign::Zero; binomial(n, rank)])?;
        for (mut tuple, sign) in entries {
            if tuple.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: tuple.len() });
            }
            if let Some(&bad) = tuple.iter().find(|&&i| i >= n) {
                return Err(Error::UnknownLabel(format!("index {bad}")));
            }
            let odd = sort_with_parity(&mut tuple);
            if tuple.windows(2).any(|w| w[0] == w[1]) {
                if sign != Sign::Zero {
                    return Err(Error::Axiom(format!("repeated element in basis {tuple:?}")));
                }
                continue;
            }
            let idx = subset_rank(n, &tuple);
            chi.values[idx] = if odd { -sign } else { sign };
        }
        Ok(chi)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[Sign] {
        &self.values
    }

    /// Table string in lexicographic subset order.
    pub fn table(&self) -> String {
        self.values.iter().map(|s| s.as_char()).collect()
    }

    /// Value on an arbitrary ordered tuple (alternating; repeated entries give 0).
    pub fn get(&self, tuple: &[usize]) -> Sign {
        debug_assert_eq!(tuple.len(), self.rank);
        let mut t = [0usize; 64];
        let t = &mut t[..tuple.len()];
        t.copy_from_slice(tuple);
        let odd = sort_with_parity(t);
        if t.windows(2).any(|w| w[0] == w[1]) {
            return Sign::Zero;
        }
        let s = self.values[subset_rank(self.ground.len(), t)];
        if odd {
            -s
        } else {
            s
        }
    }

    /// Sets the value of a sorted tuple.
    pub fn set_sorted(&mut self, sorted: &[usize], s: Sign) {
        let idx = subset_rank(self.ground.len(), sorted);
        self.values[idx] = s;
    }

    /// Sorted bases (subsets with nonzero value).
    pub fn bases(&self) -> Vec<Vec<usize>> {
        combinations(self.ground.len(), self.rank)
            .zip(&self.values)
            .filter(|(_, s)| **s != Sign::Zero)
            .map(|(c, _)| c)
            .collect()
    }
}

/// Signs of maximal minors of an `r × n` rational matrix of full row rank.
pub fn chirotope_from_matrix(ground: GroundSet, matrix: &RationalMatrix) -> Result<Chirotope> {
    let r = matrix.rows();
    let n = matrix.cols();
    if n != ground.len() {
        return Err(Error::DimensionMismatch { expected: ground.len(), found: n });
    }
    let rank = matrix.rank();
    if rank != r || r == 0 {
        return Err(Error::RankDeficient { rows: r, rank });
    }
    let values =
        combinations(n, r).map(|cols| Sign::of_i64(signum(&matrix.select_columns(&cols).determinant()))).collect();
    Chirotope::new(ground, r, values)
}

/// Checks that `chi` is a chirotope: not identically zero, alternating, its
/// support satisfies basis exchange, and all 3-term Grassmann–Plücker
/// relations are sign-consistent.
pub fn verify_chirotope_axioms(chi: &Chirotope) -> Report {
    let mut report = Report::new();
    let n = chi.ground.len();
    let r = chi.rank;

    let nonzero = chi.values.iter().any(|s| *s != Sign::Zero);
    report.push("nonzero", nonzero, if nonzero { "" } else { "chirotope is identically zero" });

    // Values live on sorted tuples and `get` applies the permutation sign, so
    // alternation holds by construction; audit it on transpositions anyway.
    let mut alt_witness = None;
    'alt: for c in combinations(n, r) {
        let base = chi.get(&c);
        for i in 0..r {
            for j in i + 1..r {
                let mut t = c.clone();
                t.swap(i, j);
                if chi.get(&t) != -base {
                    alt_witness = Some(format!("swap {i},{j} of {c:?}"));
                    break 'alt;
                }
            }
        }
    }
    report.push("alternating", alt_witness.is_none(), alt_witness.unwrap_or_default());

    let bases = chi.bases();
    let is_basis = |b: &[usize]| chi.get(b) != Sign::Zero;
    let mut exch_witness = None;
    'exch: for b1 in &bases {
        for b2 in &bases {
            for &x in b1.iter().filter(|x| !b2.contains(x)) {
                let ok = b2.iter().filter(|y| !b1.contains(y)).any(|&y| {
                    let t: Vec<usize> = b1.iter().map(|&z| if z == x { y } else { z }).collect();
                    is_basis(&t)
                });
                if !ok {
                    exch_witness = Some(format!("basis exchange fails for {b1:?}, {b2:?} at {x}"));
                    break 'exch;
                }
            }
        }
    }
    report.push("basis-exchange", exch_witness.is_none(), exch_witness.unwrap_or_default());

    let mut gp_witness = None;
    if r >= 2 && n >= r + 2 {
        let mut tuple = vec![0usize; r];
        'gp: for x in combinations(n, r - 2) {
            let rest: Vec<usize> = (0..n).filter(|i| !x.contains(i)).collect();
            tuple[..r - 2].copy_from_slice(&x);
            let mut val = |a: usize, b: usize| {
                tuple[r - 2] = a;
                tuple[r - 1] = b;
                chi.get(&tuple)
            };
            for &a in &rest {
                for &b in &rest {
                    for &c in &rest {
                        for &d in &rest {
                            if a == b || a == c || a == d || b == c || b == d || c == d {
                                continue;
                            }
                            let s1 = val(a, b) * val(c, d);
                            let s2 = -(val(a, c) * val(b, d));
                            let s3 = val(a, d) * val(b, c);
                            let terms = [s1, s2, s3];
                            let has_plus = terms.contains(&Sign::Plus);
                            let has_minus = terms.contains(&Sign::Minus);
                            let all_zero = terms.iter().all(|s| *s == Sign::Zero);
                            if !(all_zero || has_plus && has_minus) {
                                let lab = |i: usize| chi.ground.label(i);
                                let xs: Vec<&str> = x.iter().map(|&i| lab(i)).collect();
                                gp_witness = Some(format!(
                                    "x={xs:?} a={} b={} c={} d={}: signs {}{}{}",
                                    lab(a),
                                    lab(b),
                                    lab(c),
                                    lab(d),
                                    s1.as_char(),
                                    s2.as_char(),
                                    s3.as_char()
                                ));
                                break 'gp;
                            }
                        }
                    }
                }
            }
        }
    }
    report.push("grassmann-plucker", gp_witness.is_none(), gp_witness.unwrap_or_default());
    report
}

/// Cocircuits of the oriented matroid of `chi`, both signs, sorted.
///
/// For each independent `(r-1)`-subset `A`, `c_e = χ(A, e)`; each pair `±c`
/// is normalized so that its first nonzero coordinate is `+`.
pub fn cocircuits_from_chirotope(chi: &Chirotope) -> Result<Vec<SignVector>> {
    let report = verify_chirotope_axioms(chi);
    if let Some(f) = report.first_failure() {
        return Err(Error::Axiom(format!("{}: {}", f.name, f.detail)));
    }
    let n = chi.ground.len();
    let r = chi.rank;
    let mut out = Vec::new();
    let mut tuple = vec![0usize; r];
    for a in combinations(n, r - 1) {
        tuple[..r - 1].copy_from_slice(&a);
        let mut c = SignVector::zero(n);
        for e in 0..n {
            tuple[r - 1] = e;
            c.set(e, chi.get(&tuple));
        }
        if c.is_zero() {
            continue;
        }
        let first = c.support().trailing_zeros() as usize;
        if c.get(first) == Sign::Minus {
            c = c.negate();
        }
        out.push(c);
        out.push(c.negate());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Closure of `{0} ∪ cocircuits` under composition. Fails if the closure does
/// not satisfy the covector axioms.
pub fn covectors_from_cocircuits(len: usize, cocircuits: &[SignVector]) -> Result<Vec<SignVector>> {
    let mut sorted: Vec<SignVector> = cocircuits.to_vec();
    sorted.sort();
    sorted.dedup();
    if let Some(bad) = sorted.iter().find(|c| c.len() != len) {
        return Err(Error::DimensionMismatch { expected: len, found: bad.len() });
    }
    if let Some(c) = sorted.iter().find(|c| sorted.binary_search(&c.negate()).is_err()) {
        return Err(Error::Axiom(format!("cocircuit set not symmetric: {} lacks its negative", c)));
    }
    let mut set: Vec<SignVector> = vec![SignVector::zero(len)];
    set.extend(sorted.iter().copied());
    set.sort();
    set.dedup();
    let mut frontier: Vec<SignVector> = set.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for x in &frontier {
            for c in &sorted {
                let y = x.compose_unchecked(c);
                if set.binary_search(&y).is_err() && !fresh.contains(&y) {
                    fresh.push(y);
                }
            }
        }
        set.extend(fresh.iter().copied());
        set.sort();
        frontier = fresh;
    }
    let report = verify_covector_axioms(len, &set);
    if let Some(f) = report.first_failure() {
        return Err(Error::Axiom(format!("{}: {}", f.name, f.detail)));
    }
    Ok(set)
}

/// An oriented matroid, stored as its (sorted) covector set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedMatroid {
    ground: GroundSet,
    covectors: Vec<SignVector>,
    topes: Vec<SignVector>,
    cocircuits: Vec<SignVector>,
    rank: usize,
}

impl OrientedMatroid {
    /// Validates the covector axioms and derives topes, cocircuits and rank.
    pub fn from_covectors(ground: GroundSet, vectors: &[SignVector]) -> Result<OrientedMatroid> {
        let report = verify_covector_axioms(ground.len(), vectors);
        if let Some(f) = report.first_failure() {
            return Err(Error::Axiom(format!("{}: {}", f.name, f.detail)));
        }
        let mut covectors = vectors.to_vec();
        covectors.sort();
        covectors.dedup();
        Ok(OrientedMatroid::assemble(ground, covectors))
    }

    pub fn from_chirotope(chi: &Chirotope) -> Result<OrientedMatroid> {
        let cocircuits = cocircuits_from_chirotope(chi)?;
        let covectors = covectors_from_cocircuits(chi.ground.len(), &cocircuits)?;
        Ok(OrientedMatroid::assemble(chi.ground.clone(), covectors))
    }

    pub fn from_matrix(ground: GroundSet, matrix: &RationalMatrix) -> Result<OrientedMatroid> {
        OrientedMatroid::from_chirotope(&chirotope_from_matrix(ground, matrix)?)
    }

    fn assemble(ground: GroundSet, covectors: Vec<SignVector>) -> OrientedMatroid {
        let topes: Vec<SignVector> =
            covectors.iter().filter(|x| !covectors.iter().any(|y| y != *x && x.leq_unchecked(y))).copied().collect();
        let cocircuits: Vec<SignVector> = covectors
            .iter()
            .filter(|x| !x.is_zero() && !covectors.iter().any(|y| !y.is_zero() && y != *x && y.leq_unchecked(x)))
            .copied()
            .collect();
        // longest chain 0 < ... < X, by increasing support size
        let mut order: Vec<usize> = (0..covectors.len()).collect();
        order.sort_by_key(|&i| covectors[i].support().count_ones());
        let mut height = vec![0usize; covectors.len()];
        for (pos, &i) in order.iter().enumerate() {
            let x = covectors[i];
            height[i] = order[..pos]
                .iter()
                .filter(|&&j| covectors[j] != x && covectors[j].leq_unchecked(&x))
                .map(|&j| height[j] + 1)
                .max()
                .unwrap_or(0);
        }
        let rank = height.iter().copied().max().unwrap_or(0);
        OrientedMatroid { ground, covectors, topes, cocircuits, rank }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn covectors(&self) -> &[SignVector] {
        &self.covectors
    }

    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    pub fn cocircuits(&self) -> &[SignVector] {
        &self.cocircuits
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_covector(&self, x: &SignVector) -> bool {
        self.covectors.binary_search(x).is_ok()
    }

    pub fn is_tope(&self, x: &SignVector) -> bool {
        self.topes.binary_search(x).is_ok()
    }

    /// Index of a tope in [`topes`](Self::topes).
    pub fn tope_index(&self, x: &SignVector) -> Result<usize> {
        self.topes.binary_search(x).map_err(|_| Error::NotATope(format!("{x}")))
    }

    /// Elements that are zero in every covector.
    pub fn loops(&self) -> u64 {
        let all = self.covectors.iter().fold(0u64, |m, x| m | x.support());
        !all & mask_all(self.ground.len())
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.loops() >> e & 1 == 1
    }

    /// Classes of (anti)parallel non-loop elements, as bitmasks.
    pub fn parallel_classes(&self) -> Vec<u64> {
        let n = self.ground.len();
        let loops = self.loops();
        let mut classes: Vec<u64> = Vec::new();
        for e in (0..n).filter(|e| loops >> e & 1 == 0) {
            let same = |f: usize| self.cocircuits.iter().all(|c| (c.support() >> e & 1) == (c.support() >> f & 1));
            match classes.iter_mut().find(|cl| same(cl.trailing_zeros() as usize)) {
                Some(cl) => *cl |= 1 << e,
                None => classes.push(1 << e),
            }
        }
        classes
    }

    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        self.loops() == 0 && self.parallel_classes().iter().all(|c| c.count_ones() == 1)
    }

    /// `T ≤_B R` iff `S(B,T) ⊆ S(B,R)`.
    pub fn tope_leq(&self, b: &SignVector, t: &SignVector, r: &SignVector) -> Result<bool> {
        for x in [b, t, r] {
            if !self.is_tope(x) {
                return Err(Error::NotATope(format!("{x}")));
            }
        }
        let sbt = b.separation_unchecked(t);
        let sbr = b.separation_unchecked(r);
        Ok(sbt & !sbr == 0)
    }

    /// Adjacency: the separation set is exactly one parallel class.
    pub fn tope_graph(&self) -> TopeGraph {
        let classes = self.parallel_classes();
        let t = &self.topes;
        let mut adj = vec![Vec::new(); t.len()];
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let s = t[i].separation_unchecked(&t[j]);
                if classes.contains(&s) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        TopeGraph { topes: t.clone(), adj }
    }

    /// Flips the coordinates in `mask` across all covectors.
    pub fn reorient(&self, mask: u64) -> OrientedMatroid {
        let mut covectors: Vec<SignVector> = self.covectors.iter().map(|x| x.reorient(mask)).collect();
        covectors.sort();
        OrientedMatroid::assemble(self.ground.clone(), covectors)
    }

    /// Covectors with a `+` at `e`.
    pub fn positive_covectors(&self, e: usize) -> Vec<SignVector> {
        self.covectors.iter().filter(|x| x.get(e) == Sign::Plus).copied().collect()
    }
}

fn mask_all(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Graph on topes with edges between adjacent topes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopeGraph {
    topes: Vec<SignVector>,
    adj: Vec<Vec<usize>>,
}

impl TopeGraph {
    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted edge list `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    /// BFS distances from `source`; unreachable vertices get `u32::MAX`.
    pub fn distances_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.topes.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs distance matrix.
    pub fn distances(&self) -> Vec<Vec<u32>> {
        (0..self.topes.len()).map(|i| self.distances_from(i)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.topes.is_empty() || self.distances_from(0).iter().all(|&d| d != u32::MAX)
    }

    /// True iff some bijection of vertices preserves adjacency (brute force over
    /// degree-compatible assignments; intended for small graphs).
    pub fn is_isomorphic(&self, other: &TopeGraph) -> bool {
        let n = self.topes.len();
        if n != other.topes.len() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_iso(other, 0, &mut map, &mut used)
    }

    fn extend_iso(&self, other: &TopeGraph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if v == map.len() {
            return true;
        }
        for w in 0..map.len() {
            if used[w] || self.adj[v].len() != other.adj[w].len() {
                continue;
            }
            let consistent = (0..v).all(|u| self.adj[v].contains(&u) == other.adj[w].contains(&map[u]));
            if consistent {
                map[v] = w;
                used[w] = true;
                if self.extend_iso(other, v + 1, map, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        map[v] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::RationalMatrix;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn axioms_rank_one_pass() {
        let r = verify_covector_axioms(1, &[sv("0"), sv("+"), sv("-")]);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn axioms_empty_fails_with_missing_zero() {
        let r = verify_covector_axioms(2, &[]);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().detail, "missing zero vector");
    }

    #[test]
    fn axioms_parallel_pair_passes() {
        // S(++, --) = {1, 2}, so the zero vector eliminates every coordinate:
        // this is the rank-one matroid with two parallel elements.
        let r = verify_covector_axioms(2, &[sv("00"), sv("++"), sv("--")]);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn axioms_elimination_failure() {
        // eliminating e2 between ++ and +- needs +0
        let r = verify_covector_axioms(2, &[sv("00"), sv("++"), sv("--"), sv("+-"), sv("-+")]);
        let f = r.first_failure().unwrap();
        assert_eq!(f.name, "elimination");
        assert!(f.detail.contains("coordinate 2"), "{}", f.detail);
    }

    #[test]
    fn hex_covectors_pass() {
        let m = fixtures::hex();
        assert_eq!(m.covectors().len(), 13);
        assert!(verify_covector_axioms(3, m.covectors()).passed());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn chirotope_from_small_matrix() {
        let g = GroundSet::numbered(3).unwrap();
        let m = RationalMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1]]);
        let chi = chirotope_from_matrix(g, &m).unwrap();
        assert_eq!(chi.get(&[0, 1]), Sign::Plus);
        assert_eq!(chi.get(&[0, 2]), Sign::Plus);
        // det [[0,1],[1,1]] = -1
        assert_eq!(chi.get(&[1, 2]), Sign::Minus);
        assert_eq!(chi.get(&[1, 1]), Sign::Zero);
        assert_eq!(chi.get(&[2, 0]), Sign::Minus);
        assert!(verify_chirotope_axioms(&chi).passed());
    }

    #[test]
    fn rank_deficient_matrix_rejected() {
        let g = GroundSet::numbered(3).unwrap();
        let m = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        assert!(matches!(chirotope_from_matrix(g, &m), Err(Error::RankDeficient { rows: 2, rank: 1 })));
    }

    #[test]
    fn hex_realization_matches_fixture() {
        let g = GroundSet::numbered(3).unwrap();
        let m = RationalMatrix::from_i64_rows(&[&[0, -1, -1], &[1, 1, -1]]);
        let om = OrientedMatroid::from_matrix(g, &m).unwrap();
        assert_eq!(om, fixtures::hex());
        assert_eq!(om.cocircuits().len(), 6);
    }

    #[test]
    fn rank_one_cocircuits() {
        let chi = Chirotope::from_table(GroundSet::new(["e"]).unwrap(), 1, "+").unwrap();
        assert_eq!(cocircuits_from_chirotope(&chi).unwrap(), vec![sv("-"), sv("+")]);
        let cov = covectors_from_cocircuits(1, &[sv("+"), sv("-")]).unwrap();
        assert_eq!(cov, vec![sv("-"), sv("0"), sv("+")]);
    }

    #[test]
    fn asymmetric_cocircuits_rejected() {
        assert!(covectors_from_cocircuits(2, &[sv("+0")]).is_err());
    }

    #[test]
    fn corrupted_chirotope_fails_axioms() {
        // uniform rank 2 on 4 points with one sign flipped breaks GP
        let g = GroundSet::numbered(4).unwrap();
        let m = RationalMatrix::from_i64_rows(&[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
        let mut chi = chirotope_from_matrix(g, &m).unwrap();
        assert!(verify_chirotope_axioms(&chi).passed());
        let s = chi.get(&[0, 3]);
        chi.set_sorted(&[0, 3], -s);
        let r = verify_chirotope_axioms(&chi);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().name, "grassmann-plucker");
    }

    #[test]
    fn tope_graph_shapes() {
        let r1 = fixtures::rank_one();
        let g = r1.tope_graph();
        assert_eq!(g.topes().len(), 2);
        assert_eq!(g.edge_count(), 1);

        let hex = fixtures::hex();
        let g = hex.tope_graph();
        assert_eq!(g.topes().len(), 6);
        assert_eq!(g.edge_count(), 6);
        assert!((0..6).all(|i| g.neighbors(i).len() == 2));
        assert!(g.is_connected());
    }

    #[test]
    fn distance_equals_separation() {
        for m in [fixtures::rank_one(), fixtures::boolean_b2(), fixtures::hex()] {
            let g = m.tope_graph();
            let d = g.distances();
            for (i, t) in m.topes().iter().enumerate() {
                for (j, r) in m.topes().iter().enumerate() {
                    assert_eq!(d[i][j], t.separation_unchecked(r).count_ones());
                }
            }
        }
    }

    #[test]
    fn tope_leq_rules() {
        let hex = fixtures::hex();
        let [a, b, _c, d, _e, f] = fixtures::hex_topes();
        for r in hex.topes() {
            assert!(hex.tope_leq(&a, &a, r).unwrap());
        }
        assert!(hex.tope_leq(&a, &a, &b).unwrap());
        assert!(hex.tope_leq(&a, &b, &d).unwrap());
        assert!(hex.tope_leq(&a, &d, &f).unwrap());
        assert!(!hex.tope_leq(&a, &d, &b).unwrap());
        assert!(matches!(hex.tope_leq(&a, &sv("000"), &b), Err(Error::NotATope(_))));
    }

    #[test]
    fn reorientation() {
        let hex = fixtures::hex();
        assert_eq!(hex.reorient(0), hex);
        assert_eq!(hex.reorient(0b101).reorient(0b101), hex);
        let flipped = hex.reorient(0b001);
        assert!(verify_covector_axioms(3, flipped.covectors()).passed());
        assert!(flipped.tope_graph().is_isomorphic(&hex.tope_graph()));
    }

    #[test]
    fn parallel_classes_and_adjacency() {
        // element 3 duplicates element 1: S(T,R) can be {1,3}
        let g = GroundSet::numbered(3).unwrap();
        let m = RationalMatrix::from_i64_rows(&[&[1, 0, 2], &[0, 1, 0]]);
        let om = OrientedMatroid::from_matrix(g, &m).unwrap();
        assert!(!om.is_simple());
        assert_eq!(om.parallel_classes(), vec![0b101, 0b010]);
        let tg = om.tope_graph();
        assert_eq!(tg.topes().len(), 4);
        assert_eq!(tg.edge_count(), 4);
    }
}
