//! Integer homology of simplicial and chain complexes.
//!
//! Homology is computed exactly. A complex is first shrunk by removing
//! reduction pairs (a cell together with its only remaining face, or with its
//! only remaining coface, joined by a unit coefficient); removing such a pair
//! leaves the boundary of the surviving cells equal to the restriction of the
//! original boundary, so no fill-in arises. Smith normal form of the leftover
//! boundary matrices then gives ranks and torsion.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::subsets::sort_with_parity;

/// Compressed sparse column integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
    vals: Vec<i64>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, col_ptr: vec![0; cols + 1], row_idx: Vec::new(), vals: Vec::new() }
    }

    /// Builds from columns of `(row, value)` entries; entries in a column are
    /// summed by row and zeros dropped.
    pub fn from_columns<I, C>(rows: usize, columns: I) -> SparseMatrix
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = (u32, i64)>,
    {
        let mut m = SparseMatrix::zero(rows, 0);
        m.col_ptr.clear();
        m.col_ptr.push(0);
        let mut buf: Vec<(u32, i64)> = Vec::new();
        for col in columns {
            buf.clear();
            buf.extend(col);
            buf.sort_unstable_by_key(|e| e.0);
            let mut k = 0;
            while k < buf.len() {
                let r = buf[k].0;
                let mut v = 0i64;
                while k < buf.len() && buf[k].0 == r {
                    v += buf[k].1;
                    k += 1;
                }
                if v != 0 {
                    assert!((r as usize) < rows, "row index out of range");
                    m.row_idx.push(r);
                    m.vals.push(v);
                }
            }
            m.col_ptr.push(m.row_idx.len());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> SparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        SparseMatrix::from_columns(r, (0..c).map(|j| (0..r).map(move |i| (i as u32, rows[i][j]))))
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.col_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = (u32, i64)> + '_ {
        let (a, b) = (self.col_ptr[j], self.col_ptr[j + 1]);
        self.row_idx[a..b].iter().copied().zip(self.vals[a..b].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.column(j).find(|&(r, _)| r as usize == i).map_or(0, |e| e.1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.n_cols()]; self.rows];
        (0..self.n_cols()).for_each(|j| self.column(j).for_each(|(i, v)| d[i as usize][j] = v));
        d
    }

    /// `self · other`, or `None` on overflow.
    pub fn checked_mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.n_cols(), other.rows, "shape mismatch");
        let mut acc = vec![0i64; self.rows];
        let mut touched: Vec<u32> = Vec::new();
        let mut cols = Vec::with_capacity(other.n_cols());
        for j in 0..other.n_cols() {
            for (k, b) in other.column(j) {
                for (i, a) in self.column(k as usize) {
                    let slot = &mut acc[i as usize];
                    if *slot == 0 {
                        touched.push(i);
                    }
                    *slot = slot.checked_add(a.checked_mul(b)?)?;
                }
            }
            let col: Vec<(u32, i64)> = touched.iter().map(|&i| (i, acc[i as usize])).collect();
            for &i in &touched {
                acc[i as usize] = 0;
            }
            touched.clear();
            cols.push(col);
        }
        Some(SparseMatrix::from_columns(self.rows, cols))
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }
}

/// A finite abelian group `Z^rank ⊕ ⊕ Z/t` with invariant factors `t > 1`,
/// each dividing the next.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Builds a group from arbitrary cyclic orders (0 and 1 are dropped) and
    /// puts them into invariant-factor form.
    pub fn with_torsion(rank: usize, orders: Vec<BigUint>) -> AbelianGroup {
        let mut d: Vec<BigUint> = orders.into_iter().filter(|x| *x > BigUint::one()).collect();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j]);
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
        d.retain(|x| *x > BigUint::one());
        d.sort();
        AbelianGroup { rank, torsion: d }
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        AbelianGroup::with_torsion(self.rank + other.rank, t)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Rank and nontrivial invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithInvariants {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

/// Generators identified up to sign: `x_i = sign[i] · x_parent[i]`. The last
/// slot stands for the zero element.
struct SignedUnionFind {
    parent: Vec<u32>,
    sign: Vec<i8>,
    size: Vec<u32>,
}

impl SignedUnionFind {
    fn new(n: usize) -> SignedUnionFind {
        SignedUnionFind { parent: (0..n as u32).collect(), sign: vec![1; n], size: vec![1; n] }
    }

    fn zero(&self) -> u32 {
        (self.parent.len() - 1) as u32
    }

    fn find(&mut self, i: u32) -> (u32, i8) {
        let mut root = i;
        let mut s = 1i8;
        while self.parent[root as usize] != root {
            s *= self.sign[root as usize];
            root = self.parent[root as usize];
        }
        // compress
        let mut cur = i;
        let mut cs = s;
        while self.parent[cur as usize] != root && cur != root {
            let next = self.parent[cur as usize];
            let next_s = cs * self.sign[cur as usize];
            self.parent[cur as usize] = root;
            self.sign[cur as usize] = cs;
            cur = next;
            cs = next_s;
        }
        (root, s)
    }

    /// Records `x_a = s · x_b` for roots `a ≠ b`.
    fn union(&mut self, a: u32, b: u32, s: i8) {
        let z = self.zero();
        let (child, root) = if a == z {
            (b, a)
        } else if b == z || self.size[a as usize] <= self.size[b as usize] {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[child as usize] = root;
        self.sign[child as usize] = s;
        self.size[root as usize] += self.size[child as usize];
    }
}

/// Smith normal form invariants (rank and nontrivial invariant factors).
///
/// The cokernel presentation is first simplified: a relation `±x = 0` deletes
/// `x`, and a relation `±x ± y = 0` identifies `x` with `∓y`. Both are
/// unimodular, so rank and torsion are unchanged. The leftover relations go
/// through sparse elimination on unit pivots and a dense arbitrary-precision
/// pass.
pub fn smith_invariants(m: &SparseMatrix) -> SmithInvariants {
    let n_rows = m.n_rows();
    let mut uf = SignedUnionFind::new(n_rows + 1);
    let zero = uf.zero();
    let mut active: Vec<usize> = (0..m.n_cols()).collect();
    let mut terms: Vec<(u32, i64)> = Vec::new();
    let rewrite = |uf: &mut SignedUnionFind, j: usize, terms: &mut Vec<(u32, i64)>| -> bool {
        terms.clear();
        for (i, v) in m.column(j) {
            let (r, s) = uf.find(i);
            if r != zero {
                terms.push((r, v * s as i64));
            }
        }
        terms.sort_unstable_by_key(|t| t.0);
        let mut out = 0;
        for k in 0..terms.len() {
            if out > 0 && terms[out - 1].0 == terms[k].0 {
                match terms[out - 1].1.checked_add(terms[k].1) {
                    Some(v) => terms[out - 1].1 = v,
                    None => return false,
                }
            } else {
                terms[out] = terms[k];
                out += 1;
            }
        }
        terms.truncate(out);
        terms.retain(|t| t.1 != 0);
        true
    };
    let mut consumed = 0usize;
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(active.len());
        for &j in &active {
            if !rewrite(&mut uf, j, &mut terms) {
                next.push(j);
                continue;
            }
            match terms.as_slice() {
                [] => {}
                [(r, v)] if v.abs() == 1 => {
                    uf.union(*r, zero, 1);
                    consumed += 1;
                    changed = true;
                }
                [(a, va), (b, vb)] if va.abs() == 1 && vb.abs() == 1 => {
                    // va·x_a + vb·x_b = 0  ⇒  x_a = −va·vb·x_b
                    let s = -(va * vb) as i8;
                    uf.union(*a, *b, s);
                    consumed += 1;
                    changed = true;
                }
                _ => next.push(j),
            }
        }
        active = next;
        if !changed {
            break;
        }
    }
    // generators left: live roots
    let mut live_index = vec![u32::MAX; n_rows];
    let mut live = 0u32;
    for i in 0..n_rows as u32 {
        let (r, _) = uf.find(i);
        if r == i {
            live_index[i as usize] = live;
            live += 1;
        }
    }
    let mut cols = Vec::with_capacity(active.len());
    let mut exact = true;
    for &j in &active {
        if !rewrite(&mut uf, j, &mut terms) {
            exact = false;
            break;
        }
        cols.push(terms.iter().map(|&(r, v)| (live_index[r as usize], v)).collect::<Vec<_>>());
    }
    if !exact {
        return eliminate(m);
    }
    let rest = SparseMatrix::from_columns(live as usize, cols);
    let inner = eliminate(&rest);
    debug_assert_eq!(n_rows - live as usize, consumed);
    SmithInvariants { rank: consumed + inner.rank, torsion: inner.torsion }
}

/// Sparse elimination on unit pivots, then a dense arbitrary-precision pass.
fn eliminate(m: &SparseMatrix) -> SmithInvariants {
    let n_rows = m.n_rows();
    let n_cols = m.n_cols();
    let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); n_rows];
    for j in 0..n_cols {
        for (i, v) in m.column(j) {
            rows[i as usize].push((j as u32, v));
        }
    }
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n_cols];
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r {
            col_rows[j as usize].push(i as u32);
        }
    }
    let mut row_alive = vec![true; n_rows];
    let mut col_alive = vec![true; n_cols];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..n_cols).filter(|&j| !col_rows[j].is_empty()).map(|j| Reverse((col_rows[j].len(), j as u32))).collect();
    let mut rank = 0usize;
    let mut overflow = false;
    let mut merged: Vec<(u32, i64)> = Vec::new();

    let entry = |row: &Vec<(u32, i64)>, c: u32| row.binary_search_by_key(&c, |e| e.0).ok().map(|k| row[k].1);

    while let Some(Reverse((len, c))) = heap.pop() {
        let cu = c as usize;
        if !col_alive[cu] {
            continue;
        }
        let mut current: Vec<u32> = col_rows[cu]
            .iter()
            .copied()
            .filter(|&r| row_alive[r as usize] && entry(&rows[r as usize], c).is_some())
            .collect();
        current.sort_unstable();
        current.dedup();
        col_rows[cu] = current.clone();
        if current.is_empty() {
            col_alive[cu] = false;
            continue;
        }
        if current.len() != len {
            heap.push(Reverse((current.len(), c)));
            continue;
        }
        let pivot_row = current
            .iter()
            .copied()
            .filter(|&r| entry(&rows[r as usize], c).is_some_and(|v| v.abs() == 1))
            .min_by_key(|&r| (rows[r as usize].len(), r));
        let Some(pr) = pivot_row else { continue };
        let u = entry(&rows[pr as usize], c).expect("pivot entry");
        let pivot = core::mem::take(&mut rows[pr as usize]);
        for &r in &current {
            if r == pr {
                continue;
            }
            let a = entry(&rows[r as usize], c).expect("column entry");
            // row_r -= a*u * pivot (u = ±1, so u⁻¹ = u)
            let factor = match a.checked_mul(u) {
                Some(f) => f,
                None => {
                    overflow = true;
                    break;
                }
            };
            merged.clear();
            let target = &rows[r as usize];
            let (mut x, mut y) = (0, 0);
            while x < target.len() || y < pivot.len() {
                let take_t = y >= pivot.len() || (x < target.len() && target[x].0 < pivot[y].0);
                let take_p = x >= target.len() || (y < pivot.len() && pivot[y].0 < target[x].0);
                if take_t {
                    merged.push(target[x]);
                    x += 1;
                } else if take_p {
                    let Some(v) = pivot[y].1.checked_mul(factor).and_then(i64::checked_neg) else {
                        overflow = true;
                        break;
                    };
                    merged.push((pivot[y].0, v));
                    y += 1;
                } else {
                    let Some(v) = pivot[y].1.checked_mul(factor).and_then(|p| target[x].1.checked_sub(p)) else {
                        overflow = true;
                        break;
                    };
                    if v != 0 {
                        merged.push((target[x].0, v));
                    }
                    x += 1;
                    y += 1;
                }
            }
            if overflow {
                break;
            }
            for &(j, _) in &merged {
                if entry(&rows[r as usize], j).is_none() {
                    col_rows[j as usize].push(r);
                }
            }
            rows[r as usize] = merged.clone();
        }
        if overflow {
            rows[pr as usize] = pivot;
            break;
        }
        row_alive[pr as usize] = false;
        col_alive[cu] = false;
        rank += 1;
        for &(j, _) in &pivot {
            if col_alive[j as usize] {
                let l = col_rows[j as usize].len();
                heap.push(Reverse((l, j)));
            }
        }
    }

    // dense pass on whatever is left
    let live_rows: Vec<usize> = (0..n_rows).filter(|&i| row_alive[i] && !rows[i].is_empty()).collect();
    let mut live_cols: Vec<u32> =
        live_rows.iter().flat_map(|&i| rows[i].iter().map(|e| e.0)).filter(|&j| col_alive[j as usize]).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    if live_rows.is_empty() || live_cols.is_empty() {
        return SmithInvariants { rank, torsion: Vec::new() };
    }
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (a, &i) in live_rows.iter().enumerate() {
        for &(j, v) in &rows[i] {
            if let Ok(b) = live_cols.binary_search(&j) {
                dense[a][b] = BigInt::from(v);
            }
        }
    }
    let diag = dense_smith_diagonal(dense);
    rank += diag.len();
    let g = AbelianGroup::with_torsion(0, diag);
    SmithInvariants { rank, torsion: g.torsion }
}

/// Nonzero diagonal entries (absolute values) of a diagonalization by
/// unimodular row and column operations.
fn dense_smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0][t..n].iter_mut().zip(&top[t][t..n]) {
                        *x -= &q * y;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    for row in a.iter_mut().skip(t) {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                }
            }
            let col_rest = (t + 1..m).filter(|&i| !a[i][t].is_zero()).min_by_key(|&i| a[i][t].abs());
            let row_rest = (t + 1..n).filter(|&j| !a[t][j].is_zero()).min_by_key(|&j| a[t][j].abs());
            match (col_rest, row_rest) {
                (None, None) => break,
                (Some(i), _) => a.swap(t, i),
                (None, Some(j)) => {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                }
            }
        }
        out.push(a[t][t].abs().to_biguint().expect("absolute value"));
        t += 1;
    }
    out
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.as_ref().map_or(true, |b| x.abs() < b.2) {
                best = Some((i, j, x.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// A chain complex of free abelian groups with fixed bases. Level `l` sits in
/// degree `min_degree + l`; `boundaries[l]` maps level `l` to level `l - 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    min_degree: i64,
    dims: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
    truncated: bool,
}

impl ChainComplex {
    /// `boundaries[l]` must be `dims[l-1] × dims[l]`; `boundaries[0]` is ignored
    /// and replaced by the zero map. `truncated` marks that higher levels exist
    /// but were not included, so the top level's homology is unknown.
    pub fn new(min_degree: i64, boundaries: Vec<SparseMatrix>, truncated: bool) -> Result<ChainComplex> {
        let dims: Vec<usize> = boundaries.iter().map(SparseMatrix::n_cols).collect();
        let mut boundaries = boundaries;
        if let Some(b0) = boundaries.first_mut() {
            *b0 = SparseMatrix::zero(0, dims[0]);
        }
        for l in 1..boundaries.len() {
            if boundaries[l].n_rows() != dims[l - 1] {
                return Err(Error::DimensionMismatch { expected: dims[l - 1], found: boundaries[l].n_rows() });
            }
        }
        Ok(ChainComplex { min_degree, dims, boundaries, truncated })
    }

    /// Simplicial chains of `k` in degrees `0..=max_dim`, with the
    /// augmentation to `Z` in degree −1 when `augmented`.
    pub fn from_simplicial(k: &SimplicialComplex, max_dim: Option<usize>, augmented: bool) -> ChainComplex {
        let top = k.dimension().unwrap_or(0);
        let cap = max_dim.map_or(top, |d| d.min(top));
        let mut boundaries = Vec::new();
        if augmented {
            boundaries.push(SparseMatrix::zero(0, 1));
            boundaries.push(SparseMatrix::from_columns(1, (0..k.count(0)).map(|_| [(0u32, 1i64)])));
        } else {
            boundaries.push(SparseMatrix::zero(0, k.count(0)));
        }
        let mut face = Vec::new();
        for d in 1..=cap {
            if k.count(d) == 0 {
                break;
            }
            let cols = k.simplices(d).map(|s| {
                (0..=d)
                    .map(|skip| {
                        face.clear();
                        face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                        let idx = k.index_of(&face).expect("complex is closed under faces");
                        (idx as u32, if skip % 2 == 0 { 1 } else { -1 })
                    })
                    .collect::<Vec<_>>()
            });
            boundaries.push(SparseMatrix::from_columns(k.count(d - 1), cols));
        }
        let truncated = cap < top;
        let min_degree = if augmented { -1 } else { 0 };
        ChainComplex::new(min_degree, boundaries, truncated).expect("simplicial boundaries have matching shapes")
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn levels(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, level: usize) -> &SparseMatrix {
        &self.boundaries[level]
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// First level `l` and column where `∂_{l-1} ∘ ∂_l ≠ 0`.
    pub fn boundary_squared_violation(&self) -> Option<(usize, usize)> {
        for l in 2..self.levels() {
            match self.boundaries[l - 1].checked_mul(&self.boundaries[l]) {
                Some(p) if p.is_zero() => {}
                Some(p) => {
                    let j = (0..p.n_cols()).find(|&j| p.column(j).next().is_some()).unwrap_or(0);
                    return Some((l, j));
                }
                None => return Some((l, 0)),
            }
        }
        None
    }

    /// Homology at each level whose homology is determined (all levels, or all
    /// but the top one when truncated).
    pub fn homology_levels(&self) -> Vec<AbelianGroup> {
        let reduced = reduce_pairs(self);
        let levels = self.levels();
        let known = if self.truncated { levels.saturating_sub(1) } else { levels };
        let smith: Vec<SmithInvariants> =
            (0..levels)
                .map(|l| {
                    if l == 0 {
                        SmithInvariants { rank: 0, torsion: Vec::new() }
                    } else {
                        smith_invariants(&reduced[l])
                    }
                })
                .collect();
        (0..known)
            .map(|l| {
                let alive = reduced[l].n_cols();
                let out_rank = smith[l].rank;
                let (in_rank, torsion) =
                    if l + 1 < levels { (smith[l + 1].rank, smith[l + 1].torsion.clone()) } else { (0, Vec::new()) };
                AbelianGroup::with_torsion(alive - out_rank - in_rank, torsion)
            })
            .collect()
    }
}

/// Removes reduction pairs and returns the restricted boundary matrices of
/// the surviving cells (level `l` matrix: survivors of `l-1` × survivors of `l`).
fn reduce_pairs(cc: &ChainComplex) -> Vec<SparseMatrix> {
    let levels = cc.levels();
    // coboundary lists by transposing each boundary
    let cob: Vec<Option<SparseMatrix>> = (0..levels)
        .map(|l| {
            (l + 1 < levels).then(|| {
                let b = &cc.boundaries[l + 1];
                let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); cc.dims[l]];
                for j in 0..b.n_cols() {
                    for (i, v) in b.column(j) {
                        cols[i as usize].push((j as u32, v));
                    }
                }
                SparseMatrix::from_columns(cc.dims[l + 1], cols)
            })
        })
        .collect();
    let mut alive: Vec<Vec<bool>> = cc.dims.iter().map(|&d| vec![true; d]).collect();
    let mut bcount: Vec<Vec<u32>> = (0..levels)
        .map(|l| (0..cc.dims[l]).map(|j| if l == 0 { 0 } else { cc.boundaries[l].column(j).count() as u32 }).collect())
        .collect();
    let mut ccount: Vec<Vec<u32>> = (0..levels)
        .map(|l| (0..cc.dims[l]).map(|j| cob[l].as_ref().map_or(0, |c| c.column(j).count() as u32)).collect())
        .collect();

    let mut queue: VecDeque<(u32, u32)> = VecDeque::new();
    for (l, &d) in cc.dims.iter().enumerate() {
        queue.extend((0..d as u32).map(|j| (l as u32, j)));
    }

    #[allow(clippy::too_many_arguments)]
    fn remove(
        l: usize,
        j: usize,
        cc: &ChainComplex,
        cob: &[Option<SparseMatrix>],
        alive: &mut [Vec<bool>],
        bcount: &mut [Vec<u32>],
        ccount: &mut [Vec<u32>],
        queue: &mut VecDeque<(u32, u32)>,
    ) {
        alive[l][j] = false;
        if l > 0 {
            for (f, _) in cc.boundaries[l].column(j) {
                if alive[l - 1][f as usize] {
                    ccount[l - 1][f as usize] -= 1;
                    queue.push_back(((l - 1) as u32, f));
                }
            }
        }
        if let Some(c) = &cob[l] {
            for (g, _) in c.column(j) {
                if alive[l + 1][g as usize] {
                    bcount[l + 1][g as usize] -= 1;
                    queue.push_back(((l + 1) as u32, g));
                }
            }
        }
    }

    while let Some((l, j)) = queue.pop_front() {
        let (l, j) = (l as usize, j as usize);
        if !alive[l][j] {
            continue;
        }
        if l > 0 && bcount[l][j] == 1 {
            let face = cc.boundaries[l].column(j).find(|&(f, _)| alive[l - 1][f as usize]);
            if let Some((f, v)) = face {
                if v.abs() == 1 {
                    remove(l, j, cc, &cob, &mut alive, &mut bcount, &mut ccount, &mut queue);
                    remove(l - 1, f as usize, cc, &cob, &mut alive, &mut bcount, &mut ccount, &mut queue);
                    continue;
                }
            }
        }
        if ccount[l][j] == 1 {
            let coface = cob[l].as_ref().and_then(|c| c.column(j).find(|&(g, _)| alive[l + 1][g as usize]));
            if let Some((g, v)) = coface {
                if v.abs() == 1 {
                    remove(l, j, cc, &cob, &mut alive, &mut bcount, &mut ccount, &mut queue);
                    remove(l + 1, g as usize, cc, &cob, &mut alive, &mut bcount, &mut ccount, &mut queue);
                }
            }
        }
    }

    // reindex survivors
    let new_index: Vec<Vec<u32>> = alive
        .iter()
        .map(|a| {
            let mut next = 0u32;
            a.iter()
                .map(|&x| {
                    if x {
                        next += 1;
                        next - 1
                    } else {
                        u32::MAX
                    }
                })
                .collect()
        })
        .collect();
    (0..levels)
        .map(|l| {
            let survivors: Vec<usize> = (0..cc.dims[l]).filter(|&j| alive[l][j]).collect();
            if l == 0 {
                return SparseMatrix::zero(0, survivors.len());
            }
            let rows = alive[l - 1].iter().filter(|&&x| x).count();
            SparseMatrix::from_columns(
                rows,
                survivors.iter().map(|&j| {
                    cc.boundaries[l]
                        .column(j)
                        .filter(|&(f, _)| alive[l - 1][f as usize])
                        .map(|(f, v)| (new_index[l - 1][f as usize], v))
                        .collect::<Vec<_>>()
                }),
            )
        })
        .collect()
}

/// Homology groups by degree, starting at degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    groups: Vec<AbelianGroup>,
    complete: bool,
}

impl HomologyProfile {
    /// `complete` means every degree past the listed ones is zero.
    pub fn new(groups: Vec<AbelianGroup>, complete: bool) -> HomologyProfile {
        let mut p = HomologyProfile { groups, complete };
        if complete {
            while p.groups.len() > 1 && p.groups.last().is_some_and(AbelianGroup::is_trivial) {
                p.groups.pop();
            }
        }
        p
    }

    pub fn from_betti(betti: &[usize], complete: bool) -> HomologyProfile {
        HomologyProfile::new(betti.iter().map(|&b| AbelianGroup::free(b)).collect(), complete)
    }

    pub fn groups(&self) -> &[AbelianGroup] {
        &self.groups
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Highest degree with a known group, when not complete.
    pub fn known_degrees(&self) -> usize {
        self.groups.len()
    }

    /// The group in degree `k`, if known.
    pub fn degree(&self, k: usize) -> Option<AbelianGroup> {
        match self.groups.get(k) {
            Some(g) => Some(g.clone()),
            None if self.complete => Some(AbelianGroup::default()),
            None => None,
        }
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.iter().any(|g| !g.torsion.is_empty())
    }

    /// Alternating sum of Betti numbers (only meaningful when complete).
    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().enumerate().map(|(k, g)| if k % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum()
    }

    /// Homology of a point: `Z` in degree 0 and nothing else that is known.
    pub fn is_acyclic(&self) -> bool {
        self.groups.first() == Some(&AbelianGroup::free(1)) && self.groups[1..].iter().all(AbelianGroup::is_trivial)
    }

    /// Equal in every degree known to both.
    pub fn agrees_with(&self, other: &HomologyProfile) -> bool {
        let n = self.groups.len().max(other.groups.len());
        (0..n).all(|k| match (self.degree(k), other.degree(k)) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        })
    }

    /// Degrees compared by [`agrees_with`](Self::agrees_with).
    pub fn common_degrees(&self, other: &HomologyProfile) -> usize {
        let n = self.groups.len().max(other.groups.len());
        (0..n).take_while(|&k| self.degree(k).is_some() && other.degree(k).is_some()).count()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.groups.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            if g.torsion.is_empty() {
                write!(f, "{}", g.rank)?;
            } else {
                write!(f, "{g}")?;
            }
        }
        f.write_str(if self.complete { ")" } else { ", …)" })
    }
}

/// Integer homology of `k` in degrees `0..=max_degree` (all degrees when `None`).
pub fn homology(k: &SimplicialComplex, max_degree: Option<usize>) -> HomologyProfile {
    let Some(top) = k.dimension() else {
        return HomologyProfile::new(Vec::new(), true);
    };
    let complete = max_degree.map_or(true, |d| d >= top);
    let cc = ChainComplex::from_simplicial(k, max_degree.map(|d| d + 1), true);
    let levels = cc.homology_levels();
    // level 0 is degree −1 (zero for a nonempty complex); reduced H₀ gains one copy of Z
    let mut groups: Vec<AbelianGroup> = levels.into_iter().skip(1).collect();
    if let Some(max) = max_degree {
        groups.truncate(max + 1);
    }
    if let Some(g0) = groups.first_mut() {
        g0.rank += 1;
    }
    HomologyProfile::new(groups, complete)
}

/// Alternating count of simplices.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.euler_characteristic()
}

/// `H_k(S¹ × X) = H_k(X) ⊕ H_{k−1}(X)`.
pub fn kunneth_circle(h: &HomologyProfile) -> HomologyProfile {
    let n = h.groups.len();
    let len = if h.complete { n + 1 } else { n };
    let groups = (0..len)
        .map(|k| {
            let here = h.groups.get(k).cloned().unwrap_or_default();
            let below = if k > 0 { h.groups[k - 1].clone() } else { AbelianGroup::default() };
            here.direct_sum(&below)
        })
        .collect();
    HomologyProfile::new(groups, h.complete)
}

/// The chain map induced by a vertex map, and whether it is a homology isomorphism.
#[derive(Clone, Debug)]
pub struct InducedMap {
    /// Per degree `d`: matrix from `d`-simplices of the source to those of the target.
    pub chain_maps: Vec<SparseMatrix>,
    /// Homology of the mapping cone of the augmented chain map, by degree of the target.
    pub cone: HomologyProfile,
    /// `isomorphic_through[d]`: the map is certified to be an isomorphism in all degrees `≤ d`.
    pub isomorphic_through: Vec<bool>,
    /// Isomorphism in every degree.
    pub isomorphism: bool,
}

/// Chain map of a simplicial vertex map `f: K → L` and the homology verdict
/// read from its mapping cone.
pub fn induced_homology_map(f: &[u32], k: &SimplicialComplex, l: &SimplicialComplex) -> Result<InducedMap> {
    if f.len() != k.n_vertices() {
        return Err(Error::DimensionMismatch { expected: k.n_vertices(), found: f.len() });
    }
    let top_k = k.dimension().unwrap_or(0);
    let top_l = l.dimension().unwrap_or(0);
    let mut chain_maps = Vec::new();
    let mut img = Vec::new();
    for d in 0..=top_k {
        let mut cols = Vec::with_capacity(k.count(d));
        for s in k.simplices(d) {
            img.clear();
            img.extend(s.iter().map(|&v| f[v as usize] as usize));
            let odd = sort_with_parity(&mut img);
            let degenerate = img.windows(2).any(|w| w[0] == w[1]);
            let image: Vec<u32> = {
                let mut u: Vec<u32> = img.iter().map(|&x| x as u32).collect();
                u.dedup();
                u
            };
            if !l.contains(&image) {
                return Err(Error::NotSimplicial(format!("{s:?} maps to {image:?}")));
            }
            if degenerate {
                cols.push(Vec::new());
            } else {
                let idx = l.index_of(&image).expect("checked above") as u32;
                cols.push(vec![(idx, if odd { -1 } else { 1 })]);
            }
        }
        chain_maps.push(SparseMatrix::from_columns(l.count(d), cols));
    }

    let ck = ChainComplex::from_simplicial(k, None, true);
    let cl = ChainComplex::from_simplicial(l, None, true);
    // augmented levels: level 0 = degree −1; map ε ↦ ε
    let lv_k = ck.levels();
    let lv_l = cl.levels();
    let cone_levels = lv_l.max(lv_k + 1);
    let dim_k = |lv: usize| if lv < lv_k { ck.dims[lv] } else { 0 };
    let dim_l = |lv: usize| if lv < lv_l { cl.dims[lv] } else { 0 };
    let map_at = |lv: usize, j: usize| -> Vec<(u32, i64)> {
        if lv == 0 {
            vec![(0, 1)]
        } else {
            chain_maps[lv - 1].column(j).collect()
        }
    };
    // cone level c = K level c−1 ⊕ L level c
    let mut boundaries = Vec::with_capacity(cone_levels);
    for c in 0..cone_levels {
        let nk = if c >= 1 { dim_k(c - 1) } else { 0 };
        let nl = dim_l(c);
        if c == 0 {
            boundaries.push(SparseMatrix::zero(0, nk + nl));
            continue;
        }
        let rows_k = if c >= 2 { dim_k(c - 2) } else { 0 };
        let rows = rows_k + dim_l(c - 1);
        let mut cols: Vec<Vec<(u32, i64)>> = Vec::with_capacity(nk + nl);
        for j in 0..nk {
            let mut col: Vec<(u32, i64)> = Vec::new();
            if c >= 2 {
                col.extend(ck.boundaries[c - 1].column(j).map(|(i, v)| (i, -v)));
            }
            col.extend(map_at(c - 1, j).into_iter().map(|(i, v)| (i + rows_k as u32, v)));
            cols.push(col);
        }
        for j in 0..nl {
            cols.push(cl.boundaries[c].column(j).map(|(i, v)| (i + rows_k as u32, v)).collect());
        }
        boundaries.push(SparseMatrix::from_columns(rows, cols));
    }
    let cone_cc = ChainComplex::new(-1, boundaries, false)?;
    let cone_levels_h = cone_cc.homology_levels();
    let cone = HomologyProfile::new(cone_levels_h.iter().skip(1).cloned().collect(), true);
    let below_zero_ok = cone_levels_h.first().map_or(true, AbelianGroup::is_trivial);
    let top = top_k.max(top_l);
    let isomorphic_through: Vec<bool> = (0..=top)
        .map(|d| below_zero_ok && (0..=d + 1).all(|j| cone.degree(j).is_some_and(|g| g.is_trivial())))
        .collect();
    let isomorphism = below_zero_ok && cone.groups().iter().all(AbelianGroup::is_trivial);
    Ok(InducedMap { chain_maps, cone, isomorphic_through, isomorphism })
}

/// Finitely presented group: generators `0..generators`; a relator is a word
/// of letters `±(g + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<i64>>,
}

/// Edge-path presentation of the fundamental group based at `base`: a
/// breadth-first spanning tree from `base`, one generator per remaining edge
/// (oriented from smaller to larger vertex), one relator per triangle.
pub fn fundamental_group(k: &SimplicialComplex, base: usize) -> Result<GroupPresentation> {
    let n = k.n_vertices();
    if base >= n {
        return Err(Error::EmptyInput("complex has no such base vertex"));
    }
    let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); n];
    for (e, s) in k.simplices(1).enumerate() {
        adj[s[0] as usize].push((s[1], e));
        adj[s[1] as usize].push((s[0], e));
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    let mut in_tree = vec![false; k.count(1)];
    let mut seen = vec![false; n];
    seen[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                in_tree[e] = true;
                queue.push_back(w as usize);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Disconnected);
    }
    let mut gen_of = vec![usize::MAX; k.count(1)];
    let mut generators = 0;
    for (e, &t) in in_tree.iter().enumerate() {
        if !t {
            gen_of[e] = generators;
            generators += 1;
        }
    }
    let letter = |a: u32, b: u32, forward: bool| -> Option<i64> {
        let e = k.index_of(&[a, b]).expect("edge of triangle");
        (gen_of[e] != usize::MAX).then(|| if forward { gen_of[e] as i64 + 1 } else { -(gen_of[e] as i64 + 1) })
    };
    let mut relators = Vec::new();
    for s in k.simplices(2) {
        let (a, b, c) = (s[0], s[1], s[2]);
        // a → b → c → a
        let word: Vec<i64> =
            [letter(a, b, true), letter(b, c, true), letter(a, c, false)].into_iter().flatten().collect();
        if !word.is_empty() {
            relators.push(word);
        }
    }
    Ok(GroupPresentation { generators, relators })
}

/// Abelianization from the exponent-sum matrix of the relators.
pub fn abelianization(g: &GroupPresentation) -> AbelianGroup {
    let cols =
        g.relators.iter().map(|w| w.iter().map(|&x| ((x.unsigned_abs() - 1) as u32, x.signum())).collect::<Vec<_>>());
    let m = SparseMatrix::from_columns(g.generators, cols);
    let s = smith_invariants(&m);
    AbelianGroup::with_torsion(g.generators - s.rank, s.torsion)
}

/// Small helper for reports: torsion orders as decimal strings.
pub fn torsion_strings(g: &AbelianGroup) -> Vec<alloc::string::String> {
    g.torsion.iter().map(|t| format!("{t}")).collect()
}

/// Torsion orders that fit in a `u64`.
pub fn torsion_u64(g: &AbelianGroup) -> Vec<u64> {
    g.torsion.iter().filter_map(ToPrimitive::to_u64).collect()
}
