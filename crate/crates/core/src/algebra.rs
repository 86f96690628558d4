//! Underlying matroids, the degree-two truncation of the Orlik–Solomon
//! algebra, and degree-one resonance.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank_mod_p, rat, Rational, RationalMatrix};
use crate::om::OrientedMatroid;
use crate::report::Report;
use crate::signvec::GroundSet;
use crate::subsets::{combinations, mask_from, mask_members};

/// A simple matroid described by its flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleMatroid {
    ground: GroundSet,
    rank: usize,
    /// Every flat with its rank, sorted by (rank, mask).
    flats: Vec<(u64, usize)>,
}

impl SimpleMatroid {
    /// Rank-at-most-3 matroid from its nontrivial lines (rank-2 flats with at
    /// least three points). Pairs not covered by a line are 2-point flats.
    pub fn from_lines(ground: GroundSet, rank: usize, lines: &[u64]) -> Result<SimpleMatroid> {
        let n = ground.len();
        let all = full_mask(n);
        if !(1..=3).contains(&rank) || rank > n {
            return Err(Error::Unsupported(format!("lines format needs rank 1..=3 and at most |E|, got {rank}")));
        }
        let mut lines: Vec<u64> = lines.to_vec();
        lines.sort_unstable();
        lines.dedup();
        for &l in &lines {
            if l & !all != 0 {
                return Err(Error::UnknownLabel(format!("line mask {l:#x}")));
            }
            if l.count_ones() < 3 {
                return Err(Error::Axiom(format!("line {} has fewer than three points", show(&ground, l))));
            }
        }
        for (i, &a) in lines.iter().enumerate() {
            for &b in &lines[i + 1..] {
                if (a & b).count_ones() > 1 {
                    return Err(Error::Axiom(format!(
                        "lines {} and {} share two points",
                        show(&ground, a),
                        show(&ground, b)
                    )));
                }
            }
        }
        let mut flats: Vec<(u64, usize)> = vec![(0, 0)];
        flats.extend((0..n).map(|e| (1u64 << e, 1)));
        match rank {
            1 => {
                if n != 1 {
                    return Err(Error::Axiom("a simple rank-1 matroid has one element".into()));
                }
            }
            2 => {
                if n > 2 && lines != [all] {
                    return Err(Error::Axiom("rank 2 with three or more points needs the single line E".into()));
                }
                flats.push((all, 2));
            }
            _ => {
                if lines.contains(&all) {
                    return Err(Error::Axiom("rank 3 but every point lies on one line".into()));
                }
                let mut rank2 = lines.clone();
                for i in 0..n {
                    for j in i + 1..n {
                        let p = 1u64 << i | 1u64 << j;
                        if !lines.iter().any(|&l| l & p == p) {
                            rank2.push(p);
                        }
                    }
                }
                flats.extend(rank2.into_iter().map(|f| (f, 2)));
                flats.push((all, 3));
            }
        }
        flats.sort_unstable_by_key(|&(m, r)| (r, m));
        Ok(SimpleMatroid { ground, rank, flats })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn flats(&self) -> &[(u64, usize)] {
        &self.flats
    }

    /// Rank-2 flats, including those with two points.
    pub fn rank2_flats(&self) -> Vec<u64> {
        self.flats.iter().filter(|f| f.1 == 2).map(|f| f.0).collect()
    }

    /// Rank-2 flats with at least three points.
    pub fn lines(&self) -> Vec<u64> {
        self.flats.iter().filter(|f| f.1 == 2 && f.0.count_ones() >= 3).map(|f| f.0).collect()
    }

    /// Smallest flat containing `set`.
    pub fn closure(&self, set: u64) -> u64 {
        self.flats.iter().find(|f| f.0 & set == set).map_or(full_mask(self.len()), |f| f.0)
    }

    pub fn rank_of(&self, set: u64) -> usize {
        self.flats.iter().find(|f| f.0 & set == set).map_or(self.rank, |f| f.1)
    }

    /// Nontrivial lines of the restriction to `subset`.
    pub fn restricted_lines(&self, subset: u64) -> Vec<u64> {
        let mut out: Vec<u64> =
            self.flats.iter().filter(|f| f.1 == 2 && (f.0 & subset).count_ones() >= 3).map(|f| f.0 & subset).collect();
        out.sort_unstable();
        out
    }

    /// Labels of a set, concatenated when every label is one character.
    pub fn show(&self, set: u64) -> String {
        show(&self.ground, set)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn show(ground: &GroundSet, set: u64) -> String {
    let labels = ground.labels_of(set);
    if labels.iter().all(|l| l.chars().count() == 1) {
        labels.concat()
    } else {
        format!("{{{}}}", labels.join(","))
    }
}

/// The matroid of zero sets of covectors. The input must be simple.
pub fn underlying_matroid(m: &OrientedMatroid) -> Result<SimpleMatroid> {
    if !m.is_simple() {
        return Err(Error::Unsupported("underlying matroid of a non-simple oriented matroid".into()));
    }
    let mut masks: Vec<u64> = m.covectors().iter().map(|x| x.zero_set()).collect();
    masks.sort_unstable_by_key(|&f| (f.count_ones(), f));
    masks.dedup();
    // graded lattice: rank is the longest chain down to the empty flat
    let mut flats: Vec<(u64, usize)> = Vec::with_capacity(masks.len());
    for &f in &masks {
        let r = flats.iter().filter(|g| g.0 != f && g.0 & f == g.0).map(|g| g.1 + 1).max().unwrap_or(0);
        flats.push((f, r));
    }
    flats.sort_unstable_by_key(|&(f, r)| (r, f));
    Ok(SimpleMatroid { ground: m.ground().clone(), rank: m.rank(), flats })
}

/// Unsigned Whitney numbers of the first kind, `|Σ_{rk F = k} μ(∅, F)|`.
pub fn whitney_numbers(m: &SimpleMatroid) -> Vec<u64> {
    let flats = &m.flats;
    let mut mu: Vec<i64> = vec![0; flats.len()];
    for (i, &(f, _)) in flats.iter().enumerate() {
        mu[i] = if i == 0 {
            1
        } else {
            -(0..i).filter(|&j| flats[j].0 & f == flats[j].0 && flats[j].0 != f).map(|j| mu[j]).sum::<i64>()
        };
    }
    let mut w = vec![0i64; m.rank + 1];
    for (i, &(_, r)) in flats.iter().enumerate() {
        w[r] += mu[i];
    }
    w.into_iter().map(|x| x.unsigned_abs()).collect()
}

/// `A¹ ⊕ A²` of the Orlik–Solomon algebra. Degree two has a basis of pair
/// monomials `e_i e_j` (`i < j`), omitting for every line the pairs that miss
/// its least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedOSAlgebra {
    dim1: usize,
    basis: Vec<(usize, usize)>,
    /// `product[(i * n + j) * dim2 + k]`: coordinate `k` of `e_i e_j`.
    product: Vec<i64>,
}

pub fn os_truncation(m: &SimpleMatroid) -> TruncatedOSAlgebra {
    let n = m.len();
    let lines = m.lines();
    let line_of = |p: u64| lines.iter().copied().find(|&l| l & p == p);
    let eliminated = |i: usize, j: usize| line_of(1 << i | 1 << j).is_some_and(|l| l.trailing_zeros() as usize != i);
    let basis: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| !eliminated(i, j)).collect();
    let dim2 = basis.len();
    let mut product = vec![0i64; n * n * dim2];
    let coord = |i: usize, j: usize| basis.binary_search(&(i, j)).ok();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![0i64; dim2];
            match coord(i, j) {
                Some(k) => v[k] = 1,
                None => {
                    // e_i e_j = e_0 e_j - e_0 e_i for the least point e_0 of the line
                    let l = line_of(1 << i | 1 << j).expect("eliminated pair lies on a line");
                    let z = l.trailing_zeros() as usize;
                    v[coord(z, j).expect("basis pair")] += 1;
                    v[coord(z, i).expect("basis pair")] -= 1;
                }
            }
            for k in 0..dim2 {
                product[(i * n + j) * dim2 + k] = v[k];
                product[(j * n + i) * dim2 + k] = -v[k];
            }
        }
    }
    TruncatedOSAlgebra { dim1: n, basis, product }
}

impl TruncatedOSAlgebra {
    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn dim2(&self) -> usize {
        self.basis.len()
    }

    pub fn basis2(&self) -> &[(usize, usize)] {
        &self.basis
    }

    /// Coordinates of `e_i e_j` in the degree-two basis.
    pub fn monomial(&self, i: usize, j: usize) -> &[i64] {
        let d = self.dim2();
        let at = (i * self.dim1 + j) * d;
        &self.product[at..at + d]
    }

    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let mut out = vec![Rational::zero(); self.dim2()];
        for i in (0..self.dim1).filter(|&i| !a[i].is_zero()) {
            for j in (0..self.dim1).filter(|&j| !b[j].is_zero()) {
                let ab = &a[i] * &b[j];
                for (k, &c) in self.monomial(i, j).iter().enumerate() {
                    if c != 0 {
                        out[k] += &ab * rat(c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `b ↦ a·b`, with `dim2` rows and `dim1` columns.
    pub fn multiplication_matrix(&self, a: &[Rational]) -> Result<RationalMatrix> {
        self.check_len(a.len())?;
        let mut m = RationalMatrix::zeros(self.dim2(), self.dim1);
        for i in (0..self.dim1).filter(|&i| !a[i].is_zero()) {
            for j in 0..self.dim1 {
                for (k, &c) in self.monomial(i, j).iter().enumerate() {
                    if c != 0 {
                        let v = &m[(k, j)] + &a[i] * rat(c);
                        m[(k, j)] = v;
                    }
                }
            }
        }
        Ok(m)
    }

    fn multiplication_rows_mod(&self, a: &[i64], q: i64) -> Vec<Vec<i64>> {
        let d = self.dim2();
        let mut rows = vec![vec![0i64; d]; self.dim1];
        for (j, row) in rows.iter_mut().enumerate() {
            for (i, &ai) in a.iter().enumerate() {
                if ai != 0 {
                    for (k, &c) in self.monomial(i, j).iter().enumerate() {
                        row[k] = (row[k] + ai * c).rem_euclid(q);
                    }
                }
            }
        }
        rows
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim1 {
            return Err(Error::DimensionMismatch { expected: self.dim1, found: len });
        }
        Ok(())
    }
}

/// Audits antisymmetry and the circuit-boundary relation on every
/// dependent triple.
pub fn os_relations_report(a: &TruncatedOSAlgebra, m: &SimpleMatroid) -> Report {
    let n = a.dim1();
    let mut report = Report::new();
    let mut bad = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let anti = a.monomial(i, j).iter().zip(a.monomial(j, i)).all(|(x, y)| x + y == 0);
            if !anti || (i == j && a.monomial(i, i).iter().any(|&x| x != 0)) {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    report.push(
        "anticommutativity",
        bad.is_none(),
        match bad {
            None => format!("{} generator pairs", n * n),
            Some((i, j)) => format!("e{} e{} fails", m.ground().label(i), m.ground().label(j)),
        },
    );
    let mut triples = 0usize;
    let mut bad = None;
    for l in m.lines() {
        for t in combinations(l.count_ones() as usize, 3) {
            let pts = mask_members(l);
            let (i, j, k) = (pts[t[0]], pts[t[1]], pts[t[2]]);
            triples += 1;
            let ok = (0..a.dim2()).all(|c| a.monomial(j, k)[c] - a.monomial(i, k)[c] + a.monomial(i, j)[c] == 0);
            if !ok && bad.is_none() {
                bad = Some(m.show(1 << i | 1 << j | 1 << k));
            }
        }
    }
    report.push(
        "circuit-boundaries",
        bad.is_none(),
        match bad {
            None => format!("{triples} dependent triples vanish"),
            Some(t) => format!("boundary of {t} is nonzero"),
        },
    );
    let w = whitney_numbers(m);
    let w2 = w.get(2).copied().unwrap_or(0);
    report.push("dim-a2-whitney", a.dim2() as u64 == w2, format!("dim A2 = {}, w2 = {w2}", a.dim2()));
    report
}

/// Verdict of the resonance test for one degree-one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub resonant: bool,
    /// `a = 0`, resonant only by convention.
    pub degenerate: bool,
    pub kernel_dim: usize,
}

/// `a` is resonant iff `b ↦ a·b` has a kernel of dimension at least two.
pub fn resonance_membership(a: &TruncatedOSAlgebra, x: &[Rational]) -> Result<Membership> {
    let m = a.multiplication_matrix(x)?;
    let kernel_dim = a.dim1() - m.rank();
    Ok(Membership { resonant: kernel_dim >= 2, degenerate: x.iter().all(Zero::is_zero), kernel_dim })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Local,
    NonLocal,
}

impl ComponentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ComponentKind::Local => "local",
            ComponentKind::NonLocal => "non-local",
        }
    }
}

/// A linear subspace of the diagonal hyperplane `Σ x_e = 0`, given by a basis
/// (one row per basis vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceComponent {
    pub kind: ComponentKind,
    pub support: u64,
    pub basis: RationalMatrix,
}

impl ResonanceComponent {
    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }
}

/// One component per line `X`: the vectors supported on `X` with zero
/// coordinate sum, spanned by `e_x − e_{x₀}`.
pub fn local_components(m: &SimpleMatroid) -> Vec<ResonanceComponent> {
    let n = m.len();
    m.lines()
        .into_iter()
        .map(|l| {
            let pts = mask_members(l);
            let rows = pts[1..]
                .iter()
                .map(|&x| {
                    let mut v = vec![Rational::zero(); n];
                    v[x] = Rational::one();
                    v[pts[0]] = -Rational::one();
                    v
                })
                .collect();
            ResonanceComponent { kind: ComponentKind::Local, support: l, basis: RationalMatrix::from_rows(rows) }
        })
        .collect()
}

/// Subspaces in `H₀`, basis vectors resonant, and pairwise trivial intersections.
pub fn components_report(a: &TruncatedOSAlgebra, components: &[ResonanceComponent]) -> Result<Report> {
    let mut report = Report::new();
    let in_h0 = components
        .iter()
        .all(|c| (0..c.basis.rows()).all(|r| c.basis.row(r).iter().fold(Rational::zero(), |s, x| s + x).is_zero()));
    report.push("diagonal-hyperplane", in_h0, format!("{} components", components.len()));
    let mut tested = 0usize;
    let mut failure = None;
    for (ci, c) in components.iter().enumerate() {
        let mut vectors: Vec<Vec<Rational>> = (0..c.basis.rows()).map(|r| c.basis.row(r).to_vec()).collect();
        let mut sum = vec![Rational::zero(); a.dim1()];
        for v in &vectors {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x;
            }
        }
        vectors.push(sum);
        for v in &vectors {
            tested += 1;
            let mem = resonance_membership(a, v)?;
            if !mem.resonant && failure.is_none() {
                failure = Some(ci);
            }
        }
    }
    report.push(
        "components-resonant",
        failure.is_none(),
        match failure {
            None => format!("{tested} vectors with kernel dimension >= 2"),
            Some(ci) => format!("component {ci} has a non-resonant vector"),
        },
    );
    let mut nontrivial = None;
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            let d = dimension_function(components, 1 << i | 1 << j)?;
            if d != components[i].dimension() + components[j].dimension() && nontrivial.is_none() {
                nontrivial = Some((i, j));
            }
        }
    }
    report.push(
        "pairwise-intersections",
        nontrivial.is_none(),
        match nontrivial {
            None => "all pairwise intersections are 0".into(),
            Some((i, j)) => format!("components {i} and {j} intersect nontrivially"),
        },
    );
    Ok(report)
}

/// `d(S)`: dimension of the span of the components indexed by the mask `s`.
pub fn dimension_function(components: &[ResonanceComponent], s: u64) -> Result<usize> {
    let idx = component_indices(components, s)?;
    let rows: Vec<Vec<Rational>> = idx
        .iter()
        .flat_map(|&i| {
            let b = &components[i].basis;
            (0..b.rows()).map(move |r| b.row(r).to_vec())
        })
        .collect();
    Ok(RationalMatrix::from_rows(rows).rank())
}

fn component_indices(components: &[ResonanceComponent], s: u64) -> Result<Vec<usize>> {
    if s == 0 {
        return Err(Error::EmptyInput("component subset"));
    }
    if components.len() < 64 && s >> components.len() != 0 {
        return Err(Error::UnknownLabel(format!("component mask {s:#x}")));
    }
    Ok(mask_members(s))
}

/// `supp(S)`: elements where some vector of the span is nonzero.
pub fn support(components: &[ResonanceComponent], s: u64) -> Result<u64> {
    let idx = component_indices(components, s)?;
    let mut out = 0u64;
    for i in idx {
        let b = &components[i].basis;
        for r in 0..b.rows() {
            for (e, x) in b.row(r).iter().enumerate() {
                if !x.is_zero() {
                    out |= 1 << e;
                }
            }
        }
    }
    Ok(out)
}

const MAX_SUBSET_SCAN: usize = 20;

/// `d` on every nonempty subset of components, indexed by mask (entry 0 unused).
pub fn dimension_table(components: &[ResonanceComponent]) -> Result<Vec<usize>> {
    let k = components.len();
    if k > MAX_SUBSET_SCAN {
        return Err(Error::Unsupported(format!("{k} components; subset scans allow at most {MAX_SUBSET_SCAN}")));
    }
    let mut table = vec![0usize; 1 << k];
    for s in 1u64..(1 << k) {
        table[s as usize] = dimension_function(components, s)?;
    }
    Ok(table)
}

/// Nonempty `S` with `d(S) < d(T)` for every `T ⊋ S`.
pub fn closed_sets(components: &[ResonanceComponent]) -> Result<Vec<u64>> {
    let table = dimension_table(components)?;
    Ok(closed_sets_from_table(components.len(), &table))
}

/// Since `d` is monotone, checking one-element extensions suffices.
pub fn closed_sets_from_table(k: usize, table: &[usize]) -> Vec<u64> {
    (1u64..(1 << k))
        .filter(|&s| (0..k).filter(|&c| s >> c & 1 == 0).all(|c| table[(s | 1 << c) as usize] > table[s as usize]))
        .collect()
}

/// Monotonicity and submodularity of `d` over every pair of subsets.
pub fn dimension_function_report(k: usize, table: &[usize]) -> Report {
    let mut report = Report::new();
    let full = (1u64 << k) - 1;
    let mut mono = None;
    let mut submod = None;
    for s in 1..=full {
        for c in (0..k).filter(|&c| s >> c & 1 == 0) {
            if table[(s | 1 << c) as usize] < table[s as usize] && mono.is_none() {
                mono = Some(s);
            }
        }
        for t in 1..=full {
            let meet = s & t;
            let lhs = table[(s | t) as usize] + if meet == 0 { 0 } else { table[meet as usize] };
            if lhs > table[s as usize] + table[t as usize] && submod.is_none() {
                submod = Some((s, t));
            }
        }
    }
    report.push("d-monotone", mono.is_none(), format!("{full} subsets"));
    report.push(
        "d-submodular",
        submod.is_none(),
        match submod {
            None => format!("{} pairs", full * full),
            Some((s, t)) => format!("fails at {s:#b}, {t:#b}"),
        },
    );
    report
}

/// The restriction to `subset` (six points, rank 3) is a whirl: exactly
/// three 3-point lines, pairwise meeting in distinct points, covering `subset`.
pub fn is_whirl(m: &SimpleMatroid, subset: u64) -> Result<bool> {
    if subset.count_ones() != 6 {
        return Err(Error::Unsupported(format!("whirl test needs 6 elements, got {}", subset.count_ones())));
    }
    if subset & !full_mask(m.len()) != 0 {
        return Err(Error::UnknownLabel(format!("element mask {subset:#x}")));
    }
    if m.rank_of(subset) != 3 {
        return Ok(false);
    }
    let lines = m.restricted_lines(subset);
    if lines.len() != 3 || lines.iter().any(|l| l.count_ones() != 3) {
        return Ok(false);
    }
    let meets = [lines[0] & lines[1], lines[0] & lines[2], lines[1] & lines[2]];
    let triangle = meets.iter().all(|p| p.count_ones() == 1)
        && meets[0] != meets[1]
        && meets[0] != meets[2]
        && meets[1] != meets[2];
    Ok(triangle && lines[0] | lines[1] | lines[2] == subset)
}

/// Six-point restrictions with four 3-point lines, and the whole ground set
/// when it has nine points on nine 3-point lines.
pub fn multinet_support_scan(m: &SimpleMatroid) -> Result<Vec<u64>> {
    let n = m.len();
    if n > 9 {
        return Err(Error::Unsupported(format!("multinet support scan is limited to 9 elements, got {n}")));
    }
    let mut hits: Vec<u64> = combinations(n, 6)
        .map(|c| mask_from(&c))
        .filter(|&s| m.restricted_lines(s).iter().filter(|l| l.count_ones() == 3).count() >= 4)
        .collect();
    if n == 9 && m.lines().iter().filter(|l| l.count_ones() == 3).count() == 9 {
        hits.push(full_mask(n));
    }
    Ok(hits)
}

/// Closed three-element sets of rank-2 components spanning dimension 5,
/// with their supports.
pub fn triangle_closed_sets(components: &[ResonanceComponent], table: &[usize]) -> Vec<(u64, u64)> {
    closed_sets_from_table(components.len(), table)
        .into_iter()
        .filter(|&s| {
            s.count_ones() == 3 && table[s as usize] == 5 && mask_members(s).iter().all(|&c| table[1 << c] == 2)
        })
        .map(|s| (s, support(components, s).expect("nonempty subset")))
        .collect()
}

/// Result of enumerating `F_q^E` for resonance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldScan {
    pub q: u64,
    pub points: u64,
    /// Nonzero `a` with kernel dimension at least two over `F_q`.
    pub resonant: u64,
    pub resonant_in_local: u64,
    /// Nonzero points of the union of local components reduced mod `q`.
    pub local_points: u64,
    pub local_not_resonant: u64,
    pub outliers: u64,
    pub outlier_examples: Vec<Vec<u64>>,
}

const MAX_FIELD_POINTS: u64 = 100_000_000;
const MAX_OUTLIER_EXAMPLES: usize = 16;

impl FieldScan {
    /// Combines scans of disjoint ranges, in range order.
    pub fn merge(mut self, other: FieldScan) -> FieldScan {
        self.points += other.points;
        self.resonant += other.resonant;
        self.resonant_in_local += other.resonant_in_local;
        self.local_points += other.local_points;
        self.local_not_resonant += other.local_not_resonant;
        self.outliers += other.outliers;
        self.outlier_examples.extend(other.outlier_examples);
        self.outlier_examples.truncate(MAX_OUTLIER_EXAMPLES);
        self
    }

    /// Every nonzero resonant point lies in a local component and vice versa.
    pub fn matches_local_census(&self) -> bool {
        self.outliers == 0 && self.local_not_resonant == 0
    }
}

/// Number of points `q^|E|`, checking the size bound.
pub fn field_scan_size(m: &SimpleMatroid, q: u64) -> Result<u64> {
    if ![3, 5, 7].contains(&q) {
        return Err(Error::Unsupported(format!("field scan needs q in {{3, 5, 7}}, got {q}")));
    }
    let total = q
        .checked_pow(m.len() as u32)
        .filter(|&t| t <= MAX_FIELD_POINTS)
        .ok_or_else(|| Error::Unsupported(format!("{q}^{} points exceed the scan bound", m.len())))?;
    Ok(total)
}

/// Scans the points with base-`q` indices in `start..end`.
pub fn resonance_scan_range(a: &TruncatedOSAlgebra, m: &SimpleMatroid, q: u64, start: u64, end: u64) -> FieldScan {
    let n = m.len();
    let lines = m.lines();
    let qi = q as i64;
    let mut scan = FieldScan { q, ..FieldScan::default() };
    let mut digits = vec![0i64; n];
    for idx in start..end {
        let mut x = idx;
        for d in digits.iter_mut() {
            *d = (x % q) as i64;
            x /= q;
        }
        scan.points += 1;
        if idx == 0 {
            continue;
        }
        let supp = digits.iter().enumerate().filter(|d| *d.1 != 0).fold(0u64, |s, (e, _)| s | 1 << e);
        let local = digits.iter().sum::<i64>() % qi == 0 && lines.iter().any(|&l| supp & l == supp);
        let rank = rank_mod_p(&a.multiplication_rows_mod(&digits, qi), qi);
        let resonant = n - rank >= 2;
        if local {
            scan.local_points += 1;
        }
        match (resonant, local) {
            (true, true) => {
                scan.resonant += 1;
                scan.resonant_in_local += 1;
            }
            (true, false) => {
                scan.resonant += 1;
                scan.outliers += 1;
                if scan.outlier_examples.len() < MAX_OUTLIER_EXAMPLES {
                    scan.outlier_examples.push(digits.iter().map(|&d| d as u64).collect());
                }
            }
            (false, true) => scan.local_not_resonant += 1,
            (false, false) => {}
        }
    }
    scan
}

pub fn resonance_scan_finite_field(m: &SimpleMatroid, q: u64) -> Result<FieldScan> {
    let total = field_scan_size(m, q)?;
    Ok(resonance_scan_range(&os_truncation(m), m, q, 0, total))
}
