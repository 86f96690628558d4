//! Cell posets attached to an oriented matroid: the Salvetti poset, the
//! tope-pair poset with its order-reversing Z/4 symmetry, their deconings at an
//! element, and the map from the product of a subdivided square cycle with the
//! chains of the deconed tope-pair poset back into the tope-pair poset.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::om::OrientedMatroid;
use crate::poset::FinitePoset;
use crate::report::Report;
use crate::signvec::{Sign, SignVector};

/// A face together with a tope it is a face of (`face ∘ tope = tope`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SalvettiCell {
    pub face: SignVector,
    pub tope: SignVector,
}

impl fmt::Display for SalvettiCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.face, self.tope)
    }
}

/// An ordered pair of topes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TopePair {
    pub first: SignVector,
    pub second: SignVector,
}

impl TopePair {
    pub fn new(first: SignVector, second: SignVector) -> TopePair {
        TopePair { first, second }
    }

    /// `(T, R) ↦ (R, −T)`.
    pub fn rotate(&self) -> TopePair {
        TopePair { first: self.second, second: self.first.negate() }
    }

    pub fn negate(&self) -> TopePair {
        TopePair { first: self.first.negate(), second: self.second.negate() }
    }
}

impl fmt::Display for TopePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

fn require_loop_free(m: &OrientedMatroid) -> Result<()> {
    let loops = m.loops();
    if loops != 0 {
        let e = loops.trailing_zeros() as usize;
        return Err(Error::Loop(String::from(m.ground().label(e))));
    }
    Ok(())
}

/// All cells `(F, C)` ordered by `(F,C) ≤ (F',C')` iff `F ≥ F'` and `F ∘ C' = C`.
pub fn salvetti_poset(m: &OrientedMatroid) -> Result<FinitePoset<SalvettiCell>> {
    require_loop_free(m)?;
    let mut cells = Vec::new();
    for &face in m.covectors() {
        for &tope in m.topes() {
            if face.compose_unchecked(&tope) == tope {
                cells.push(SalvettiCell { face, tope });
            }
        }
    }
    FinitePoset::from_relation(cells, |a, b| {
        b.face.leq_unchecked(&a.face) && a.face.compose_unchecked(&b.tope) == a.tope
    })
}

/// Covectors ordered by `X ≤ Y` iff `X∘Y = Y`; `0̂` is the minimum.
pub fn face_poset(m: &OrientedMatroid) -> FinitePoset<SignVector> {
    FinitePoset::from_relation(m.covectors().to_vec(), |x, y| x.leq_unchecked(y)).expect("sign-vector order")
}

/// The poset of all ordered tope pairs, with `(T,R) ≤ (T',R')` iff
/// `S(T',T) ⊆ S(T',R) ⊆ S(T',R')`. Pair `(i, j)` of tope indices sits at
/// index `i * t + j`.
#[derive(Clone, Debug)]
pub struct TopePairPoset {
    topes: Vec<SignVector>,
    poset: FinitePoset<TopePair>,
}

impl TopePairPoset {
    pub fn new(m: &OrientedMatroid) -> Result<TopePairPoset> {
        require_loop_free(m)?;
        let topes = m.topes().to_vec();
        let t = topes.len();
        let sep: Vec<u64> = (0..t * t).map(|k| topes[k / t].separation_unchecked(&topes[k % t])).collect();
        let mut pairs = Vec::with_capacity(t * t);
        for &a in &topes {
            for &b in &topes {
                pairs.push(TopePair::new(a, b));
            }
        }
        let poset = FinitePoset::from_index_relation(pairs, |x, y| {
            let (ti, ri) = (x / t, x % t);
            let (tj, rj) = (y / t, y % t);
            let s_t = sep[tj * t + ti];
            let s_r = sep[tj * t + ri];
            let s_rr = sep[tj * t + rj];
            s_t & !s_r == 0 && s_r & !s_rr == 0
        })
        .map_err(|e| Error::NotAPoset(format!("tope-pair order: {e}")))?;
        Ok(TopePairPoset { topes, poset })
    }

    pub fn poset(&self) -> &FinitePoset<TopePair> {
        &self.poset
    }

    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    fn tope_idx(&self, x: &SignVector) -> Result<usize> {
        self.topes.binary_search(x).map_err(|_| Error::NotATope(format!("{x}")))
    }

    /// Index of a pair of topes.
    pub fn index_of(&self, pair: &TopePair) -> Result<usize> {
        Ok(self.tope_idx(&pair.first)? * self.topes.len() + self.tope_idx(&pair.second)?)
    }

    pub fn pair(&self, index: usize) -> TopePair {
        *self.poset.element(index)
    }

    /// The rotation `(T,R) ↦ (R,−T)` as an index permutation.
    pub fn rotation(&self) -> Vec<usize> {
        (0..self.len())
            .map(|k| self.index_of(&self.pair(k).rotate()).expect("topes are closed under negation"))
            .collect()
    }

    /// Orbits of the rotation, each listed as `x, ρx, ρ²x, ρ³x` starting at
    /// its least index; orbits ordered by that index.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let rho = self.rotation();
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = rho[x];
            }
            out.push(orbit);
        }
        out
    }

    /// Image of each Salvetti cell under `(F, C) ↦ (C, F ∘ (−C))`.
    pub fn salvetti_image(&self, s: &FinitePoset<SalvettiCell>) -> Result<Vec<usize>> {
        s.elements()
            .iter()
            .map(|c| self.index_of(&TopePair::new(c.tope, c.face.compose_unchecked(&c.tope.negate()))))
            .collect()
    }

    /// Indices of pairs whose topes are both positive at `e`.
    pub fn decone_indices(&self, e: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| {
                let p = self.pair(k);
                p.first.get(e) == Sign::Plus && p.second.get(e) == Sign::Plus
            })
            .collect()
    }
}

/// Builds the tope-pair poset.
pub fn tope_pair_poset(m: &OrientedMatroid) -> Result<TopePairPoset> {
    TopePairPoset::new(m)
}

/// The order on pairs read off tope-graph distances: `(T,R) ≤ (T',R')` iff
/// `d(T',T) + d(T,R) + d(R,R') = d(T',R')`. `dist` is the all-pairs distance
/// table indexed like `m.topes()`.
pub fn q_order_geodesic_oracle(dist: &[Vec<u32>], lower: (usize, usize), upper: (usize, usize)) -> bool {
    let (t, r) = lower;
    let (t2, r2) = upper;
    dist[t2][t] + dist[t][r] + dist[r][r2] == dist[t2][r2]
}

/// A subposet remembering where its elements came from.
#[derive(Clone, Debug)]
pub struct Subposet<T> {
    pub poset: FinitePoset<T>,
    pub parent_indices: Vec<usize>,
}

fn check_element(m: &OrientedMatroid, e: usize) -> Result<()> {
    if e >= m.ground().len() {
        return Err(Error::UnknownLabel(format!("index {e}")));
    }
    if m.is_loop(e) {
        return Err(Error::Loop(String::from(m.ground().label(e))));
    }
    Ok(())
}

/// Covectors positive at `e`.
pub fn decone_covectors(m: &OrientedMatroid, e: usize) -> Result<Vec<SignVector>> {
    check_element(m, e)?;
    Ok(m.positive_covectors(e))
}

/// Salvetti cells whose face (hence also tope) is positive at `e`.
pub fn decone_salvetti(m: &OrientedMatroid, s: &FinitePoset<SalvettiCell>, e: usize) -> Result<Subposet<SalvettiCell>> {
    check_element(m, e)?;
    let idx: Vec<usize> = (0..s.len())
        .filter(|&k| {
            let c = s.element(k);
            c.face.get(e) == Sign::Plus && c.tope.get(e) == Sign::Plus
        })
        .collect();
    Ok(Subposet { poset: s.induced(&idx), parent_indices: idx })
}

/// Tope pairs with both topes positive at `e`.
pub fn decone_q(m: &OrientedMatroid, q: &TopePairPoset, e: usize) -> Result<Subposet<TopePair>> {
    check_element(m, e)?;
    let idx = q.decone_indices(e);
    Ok(Subposet { poset: q.poset().induced(&idx), parent_indices: idx })
}

/// `(A,B) ∨ (−D,C) = (−D,B)`, defined when `(A,B) ≤ (C,D)`.
pub fn q_join(q: &TopePairPoset, ab: &TopePair, neg_d_c: &TopePair) -> Result<TopePair> {
    let cd = TopePair::new(neg_d_c.second, neg_d_c.first.negate());
    let (i, j) = (q.index_of(ab)?, q.index_of(&cd)?);
    if !q.poset().leq(i, j) {
        return Err(Error::JoinUndefined);
    }
    Ok(TopePair::new(neg_d_c.first, ab.second))
}

/// Checks that `join` is an upper bound of `x` and `y` lying below every
/// other upper bound.
pub fn join_is_least_upper_bound(q: &TopePairPoset, x: usize, y: usize, join: usize) -> bool {
    let p = q.poset();
    p.leq(x, join) && p.leq(y, join) && (0..p.len()).all(|u| !(p.leq(x, u) && p.leq(y, u)) || p.leq(join, u))
}

/// Cells of the barycentric subdivision of a square cycle: four vertices and
/// the four edges between consecutive ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CycleCell {
    V0,
    V1,
    V2,
    V3,
    E01,
    E12,
    E23,
    E03,
}

impl CycleCell {
    pub const ALL: [CycleCell; 8] = [
        CycleCell::V0,
        CycleCell::V1,
        CycleCell::V2,
        CycleCell::V3,
        CycleCell::E01,
        CycleCell::E12,
        CycleCell::E23,
        CycleCell::E03,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CycleCell::V0 => "0",
            CycleCell::V1 => "1",
            CycleCell::V2 => "2",
            CycleCell::V3 => "3",
            CycleCell::E01 => "01",
            CycleCell::E12 => "12",
            CycleCell::E23 => "23",
            CycleCell::E03 => "03",
        }
    }

    /// Vertex ids of the cell (one for a vertex, two for an edge).
    pub fn vertices(self) -> &'static [u8] {
        match self {
            CycleCell::V0 => &[0],
            CycleCell::V1 => &[1],
            CycleCell::V2 => &[2],
            CycleCell::V3 => &[3],
            CycleCell::E01 => &[0, 1],
            CycleCell::E12 => &[1, 2],
            CycleCell::E23 => &[2, 3],
            CycleCell::E03 => &[0, 3],
        }
    }

    /// Face order: a vertex lies below the edges containing it.
    pub fn leq(self, other: CycleCell) -> bool {
        let (a, b) = (self.vertices(), other.vertices());
        a.iter().all(|v| b.contains(v))
    }
}

/// The eight-element poset of cells of the subdivided square cycle.
pub fn subdivided_cycle() -> FinitePoset<CycleCell> {
    FinitePoset::from_relation(CycleCell::ALL.to_vec(), |a, b| a.leq(*b)).expect("face order")
}

/// Value of the cycle map on one cell and one chain
/// `(A₁,B₁) < … < (A_k,B_k)` of the deconed pair poset.
pub fn psi_value(cell: CycleCell, chain: &[TopePair]) -> TopePair {
    let lo = chain.first().expect("nonempty chain");
    let hi = chain.last().expect("nonempty chain");
    let (a1, b1, ak, bk) = (lo.first, lo.second, hi.first, hi.second);
    let p = TopePair::new;
    match cell {
        CycleCell::V0 => p(a1, b1),
        CycleCell::E01 => p(bk.negate(), b1),
        CycleCell::V1 => p(bk.negate(), ak),
        CycleCell::E12 => p(a1.negate(), ak),
        CycleCell::V2 => p(a1.negate(), b1.negate()),
        CycleCell::E23 => p(bk, b1.negate()),
        CycleCell::V3 => p(bk, ak.negate()),
        CycleCell::E03 => p(a1, ak.negate()),
    }
}

/// The map from (cycle cells) × (chains of the deconed pair poset, reversed)
/// into the pair poset.
#[derive(Clone, Debug)]
pub struct PsiMap {
    /// Domain elements: a cycle cell and a chain of deconed-poset indices (bottom to top).
    pub domain: FinitePoset<(CycleCell, Vec<u32>)>,
    /// Image of each domain element as an index into the pair poset.
    pub images: Vec<usize>,
}

/// Builds the product domain and evaluates the map on every element.
pub fn psi(q: &TopePairPoset, dq: &Subposet<TopePair>) -> Result<PsiMap> {
    if dq.poset.is_empty() {
        return Err(Error::EmptyInput("deconed pair poset"));
    }
    let cycle = subdivided_cycle();
    let chains = dq.poset.chain_poset().opposite();
    let domain = cycle.product(&chains);
    let images = domain
        .elements()
        .iter()
        .map(|(cell, chain)| {
            let pairs: Vec<TopePair> = chain.iter().map(|&k| *dq.poset.element(k as usize)).collect();
            q.index_of(&psi_value(*cell, &pairs))
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(PsiMap { domain, images })
}

/// Checks how the cycle map interacts with the rotation: shifting a vertex
/// label by two negates the value, and the vertex values are the iterated
/// inverse rotations of the bottom pair (even labels) or the top pair (odd labels).
pub fn psi_equivariance(q: &TopePairPoset, dq: &Subposet<TopePair>) -> Report {
    let mut report = Report::new();
    let chains = dq.poset.chains(None);
    let verts = [CycleCell::V0, CycleCell::V1, CycleCell::V2, CycleCell::V3];
    let edges = [CycleCell::E01, CycleCell::E12, CycleCell::E23, CycleCell::E03];
    let mut half_turn = None;
    let mut quarter = None;
    for c in &chains {
        let pairs: Vec<TopePair> = c.iter().map(|&k| *dq.poset.element(k as usize)).collect();
        for cells in [verts, edges] {
            for i in 0..4 {
                let a = psi_value(cells[i], &pairs);
                let b = psi_value(cells[(i + 2) % 4], &pairs);
                if half_turn.is_none() && a.negate() != b {
                    half_turn =
                        Some(format!("{} vs {} on chain {:?}", cells[i].label(), cells[(i + 2) % 4].label(), c));
                }
            }
        }
        let lo = pairs[0];
        let hi = pairs[pairs.len() - 1];
        for (i, cell) in verts.iter().enumerate() {
            // ρ^{4-i} = ρ^{-i}
            let mut x = if i % 2 == 0 { lo } else { hi };
            for _ in 0..(4 - i) % 4 {
                x = x.rotate();
            }
            if quarter.is_none() && psi_value(*cell, &pairs) != x {
                quarter = Some(format!("vertex {} on chain {:?}", cell.label(), c));
            }
        }
    }
    let _ = q;
    report.push("half-turn", half_turn.is_none(), half_turn.unwrap_or_default());
    report.push("vertex-rotation", quarter.is_none(), quarter.unwrap_or_default());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one_posets() {
        let m = fixtures::rank_one();
        let s = salvetti_poset(&m).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.order_complex().f_vector(), vec![4, 4]);
        let q = tope_pair_poset(&m).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.poset().cover_pairs().len(), 4);
        let dq = decone_q(&m, &q, 0).unwrap();
        assert_eq!(dq.poset.len(), 1);
        assert_eq!(*dq.poset.element(0), TopePair::new(sv("+"), sv("+")));
    }

    #[test]
    fn hex_sizes_and_image() {
        let m = fixtures::hex();
        let s = salvetti_poset(&m).unwrap();
        assert_eq!(s.len(), 24);
        let q = tope_pair_poset(&m).unwrap();
        assert_eq!(q.len(), 36);
        let img = q.salvetti_image(&s).unwrap();
        assert!(crate::poset::is_poset_map(&img, &s, q.poset()));
        let dist = m.tope_graph().distances();
        let t = q.topes().len();
        let mut hit: Vec<usize> = img.clone();
        hit.sort();
        hit.dedup();
        let expected: Vec<usize> = (0..36).filter(|k| matches!(dist[k / t][k % t], 0 | 1 | 3)).collect();
        assert_eq!(hit, expected);
        let minimal = q.poset().minimal_elements();
        assert!(minimal.iter().all(|&k| k / t == k % t));
        assert_eq!(minimal.len(), 6);
    }

    #[test]
    fn geodesic_oracle_agrees_on_hex() {
        let m = fixtures::hex();
        let q = tope_pair_poset(&m).unwrap();
        let dist = m.tope_graph().distances();
        let t = q.topes().len();
        for x in 0..36 {
            for y in 0..36 {
                assert_eq!(q.poset().leq(x, y), q_order_geodesic_oracle(&dist, (x / t, x % t), (y / t, y % t)));
            }
        }
    }

    #[test]
    fn rotation_orbit_of_hex() {
        let m = fixtures::hex();
        let q = tope_pair_poset(&m).unwrap();
        let [a, ..] = fixtures::hex_topes();
        let f = a.negate();
        let x = TopePair::new(a, a);
        assert_eq!(x.rotate(), TopePair::new(a, f));
        assert_eq!(x.rotate().rotate(), TopePair::new(f, f));
        assert_eq!(x.rotate().rotate().rotate(), TopePair::new(f, a));
        assert_eq!(x.rotate().rotate().rotate().rotate(), x);
        assert_eq!(q.orbits().len(), 9);
        assert!(q.orbits().iter().all(|o| o.len() == 4));
    }

    #[test]
    fn join_cases() {
        let m = fixtures::hex();
        let q = tope_pair_poset(&m).unwrap();
        let t = q.topes()[0];
        let j = q_join(&q, &TopePair::new(t, t), &TopePair::new(t.negate(), t)).unwrap();
        assert_eq!(j, TopePair::new(t.negate(), t));
        // (A,B) = (T,−T) is not below (C,D) = (T,T)
        let err = q_join(&q, &TopePair::new(t, t.negate()), &TopePair::new(t.negate(), t));
        assert_eq!(err, Err(Error::JoinUndefined));
    }

    #[test]
    fn decone_rejects_loops() {
        let g = crate::signvec::GroundSet::numbered(2).unwrap();
        let cov: Vec<SignVector> = ["00", "+0", "-0"].iter().map(|s| sv(s)).collect();
        let m = OrientedMatroid::from_covectors(g, &cov).unwrap();
        assert!(matches!(decone_covectors(&m, 1), Err(Error::Loop(_))));
        assert!(matches!(tope_pair_poset(&m), Err(Error::Loop(_))));
        assert!(decone_covectors(&m, 0).is_ok());
    }

    #[test]
    fn psi_rank_one_values() {
        let m = fixtures::rank_one();
        let q = tope_pair_poset(&m).unwrap();
        let dq = decone_q(&m, &q, 0).unwrap();
        let map = psi(&q, &dq).unwrap();
        assert_eq!(map.domain.len(), 8);
        assert!(crate::poset::is_poset_map(&map.images, &map.domain, q.poset()));
        let v = |cell: CycleCell| {
            let k = map.domain.elements().iter().position(|(c, _)| *c == cell).unwrap();
            q.pair(map.images[k])
        };
        assert_eq!(v(CycleCell::V0), TopePair::new(sv("+"), sv("+")));
        assert_eq!(v(CycleCell::V2), TopePair::new(sv("-"), sv("-")));
        assert!(psi_equivariance(&q, &dq).passed());
    }
}
