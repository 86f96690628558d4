//! Finite posets with a transitively closed bit relation, their order
//! complexes, and the standard constructions on them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{sort_layer, SimplicialComplex};
use crate::error::{Error, Result};

/// Row-major square bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRelation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitRelation {
    fn new(n: usize) -> BitRelation {
        let words = n.div_ceil(64).max(1);
        BitRelation { n, words, bits: vec![0; n * words] }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn transpose(&self) -> BitRelation {
        let mut t = BitRelation::new(self.n);
        for i in 0..self.n {
            for j in ones(self.row(i)) {
                t.set(j, i);
            }
        }
        t
    }
}

/// Indices of set bits, ascending.
fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut m = word;
        core::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(w * 64 + b)
            }
        })
    })
}

/// A finite partially ordered set. Elements are addressed by index.
#[derive(Clone, Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    up: BitRelation,
    down: BitRelation,
    upper_covers: Vec<Vec<u32>>,
    lower_covers: Vec<Vec<u32>>,
}

impl<T: Clone> FinitePoset<T> {
    /// Builds a poset from a relation given on indices and audits reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_index_relation(elements: Vec<T>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = elements.len();
        let mut up = BitRelation::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up.set(i, j);
                }
            }
        }
        FinitePoset::from_relation_bits(elements, up)
    }

    /// Builds a poset from a relation on element values; see [`FinitePoset::from_index_relation`].
    pub fn from_relation(elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let els = elements.clone();
        FinitePoset::from_index_relation(elements, |i, j| leq(&els[i], &els[j]))
    }

    /// Builds a poset as the reflexive-transitive closure of the given strict
    /// relations `(i, j)` meaning `i < j`. Fails on cycles.
    pub fn from_cover_pairs(elements: Vec<T>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::NotAPoset(format!("pair ({i},{j}) out of range")));
            }
            succ[i].push(j);
            indeg[j] += 1;
        }
        // reverse topological order, then closure by OR-ing successors' rows
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(i) = stack.pop() {
            order.push(i);
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        if order.len() != n {
            return Err(Error::NotAPoset(String::from("cover relation has a cycle")));
        }
        let mut up = BitRelation::new(n);
        for &i in order.iter().rev() {
            up.set(i, i);
            for &j in &succ[i] {
                let w = up.words;
                for k in 0..w {
                    let v = up.bits[j * w + k];
                    up.bits[i * w + k] |= v;
                }
            }
        }
        FinitePoset::from_relation_bits(elements, up)
    }

    fn from_relation_bits(elements: Vec<T>, up: BitRelation) -> Result<Self> {
        let n = elements.len();
        let down = up.transpose();
        for i in 0..n {
            if !up.get(i, i) {
                return Err(Error::NotAPoset(format!("not reflexive at {i}")));
            }
        }
        for i in 0..n {
            for j in ones(up.row(i)) {
                if j != i && up.get(j, i) {
                    return Err(Error::NotAPoset(format!("not antisymmetric: {i} and {j}")));
                }
                if up.row(j).iter().zip(up.row(i)).any(|(&b, &a)| b & !a != 0) {
                    let k = ones(up.row(j)).find(|&k| !up.get(i, k)).unwrap_or(j);
                    return Err(Error::NotAPoset(format!("not transitive: {i} <= {j} <= {k}")));
                }
            }
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        let mut scratch = vec![0u64; up.words];
        let mut above = vec![0u64; up.words];
        for i in 0..n {
            // strict up-set minus everything strictly above a strict successor
            scratch.copy_from_slice(up.row(i));
            scratch[i / 64] &= !(1 << (i % 64));
            above.iter_mut().for_each(|w| *w = 0);
            for j in ones(&scratch) {
                for (w, (a, &r)) in above.iter_mut().zip(up.row(j)).enumerate() {
                    *a |= if w == j / 64 { r & !(1 << (j % 64)) } else { r };
                }
            }
            for (s, &a) in scratch.iter_mut().zip(&above) {
                *s &= !a;
            }
            for j in ones(&scratch) {
                upper_covers[i].push(j as u32);
                lower_covers[j].push(i as u32);
            }
        }
        Ok(FinitePoset { elements, up, down, upper_covers, lower_covers })
    }
}

impl<T> FinitePoset<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up.get(i, j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.up.get(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Elements `≥ i`, ascending by index (includes `i`).
    pub fn up_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.up.row(i))
    }

    /// Elements `≤ i`, ascending by index (includes `i`).
    pub fn down_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.down.row(i))
    }

    pub fn upper_covers(&self, i: usize) -> &[u32] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[u32] {
        &self.lower_covers[i]
    }

    /// Covering pairs `(i, j)` with `i ⋖ j`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, c) in self.upper_covers.iter().enumerate() {
            out.extend(c.iter().map(|&j| (i, j as usize)));
        }
        out
    }

    /// Number of pairs `i < j`.
    pub fn strict_pair_count(&self) -> usize {
        self.up.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() - self.len()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower_covers[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper_covers[i].is_empty()).collect()
    }

    pub fn unique_maximum(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn unique_minimum(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// All nonempty chains, each listed bottom to top, in depth-first order.
    /// `max_len` caps the number of elements per chain.
    pub fn chains(&self, max_len: Option<usize>) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.for_each_chain(max_len, |c| out.push(c.to_vec()));
        out
    }

    /// Calls `visit` on every nonempty chain (bottom to top).
    pub fn for_each_chain(&self, max_len: Option<usize>, mut visit: impl FnMut(&[u32])) {
        let cap = max_len.unwrap_or(usize::MAX);
        if cap == 0 {
            return;
        }
        let strict_up: Vec<Vec<u32>> =
            (0..self.len()).map(|i| self.up_set(i).filter(|&j| j != i).map(|j| j as u32).collect()).collect();
        let mut chain: Vec<u32> = Vec::new();
        let mut stack: Vec<(u32, usize)> = Vec::new();
        for start in 0..self.len() as u32 {
            chain.push(start);
            visit(&chain);
            stack.push((start, 0));
            while let Some(&mut (top, ref mut pos)) = stack.last_mut() {
                let succ = &strict_up[top as usize];
                if chain.len() >= cap || *pos >= succ.len() {
                    stack.pop();
                    chain.pop();
                    continue;
                }
                let next = succ[*pos];
                *pos += 1;
                chain.push(next);
                visit(&chain);
                stack.push((next, 0));
            }
        }
    }

    /// The order complex: simplices are the nonempty chains, on vertices `0..len`.
    pub fn order_complex(&self) -> SimplicialComplex {
        self.order_complex_capped(None)
    }

    /// Order complex restricted to simplices of dimension at most `max_dim`.
    pub fn order_complex_capped(&self, max_dim: Option<usize>) -> SimplicialComplex {
        let mut layers: Vec<Vec<u32>> = Vec::new();
        let mut sorted = Vec::new();
        self.for_each_chain(max_dim.map(|d| d + 1), |c| {
            let d = c.len() - 1;
            if layers.len() <= d {
                layers.resize(d + 1, Vec::new());
            }
            sorted.clear();
            sorted.extend_from_slice(c);
            sorted.sort_unstable();
            layers[d].extend_from_slice(&sorted);
        });
        let layers = layers.into_iter().enumerate().map(|(d, l)| sort_layer(l, d + 1)).collect();
        SimplicialComplex::from_sorted_layers(self.len(), layers)
    }

    /// Whether the given vertex subset is a chain.
    pub fn is_chain(&self, items: &[usize]) -> bool {
        items.iter().enumerate().all(|(a, &i)| items[a + 1..].iter().all(|&j| self.comparable(i, j)))
    }

    /// Graphviz rendering of the Hasse diagram, bottom to top.
    pub fn hasse_dot(&self, name: &str, label: impl Fn(&T) -> String) -> String {
        let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=plaintext];\n", escape(name));
        for (i, e) in self.elements.iter().enumerate() {
            s.push_str(&format!("  n{} [label=\"{}\"];\n", i, escape(&label(e))));
        }
        for (i, j) in self.cover_pairs() {
            s.push_str(&format!("  n{i} -> n{j};\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl<T: Clone> FinitePoset<T> {
    /// Same elements, reversed order.
    pub fn opposite(&self) -> FinitePoset<T> {
        FinitePoset {
            elements: self.elements.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            upper_covers: self.lower_covers.clone(),
            lower_covers: self.upper_covers.clone(),
        }
    }

    /// Same order, elements replaced by `f`.
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> FinitePoset<U> {
        FinitePoset {
            elements: self.elements.iter().map(f).collect(),
            up: self.up.clone(),
            down: self.down.clone(),
            upper_covers: self.upper_covers.clone(),
            lower_covers: self.lower_covers.clone(),
        }
    }

    /// Subposet induced on `indices` (kept in the given order).
    pub fn induced(&self, indices: &[usize]) -> FinitePoset<T> {
        let elements = indices.iter().map(|&i| self.elements[i].clone()).collect();
        FinitePoset::from_index_relation(elements, |a, b| self.leq(indices[a], indices[b]))
            .expect("induced order of a poset is a poset")
    }

    /// Componentwise product; element `(i, j)` sits at index `i * other.len() + j`.
    pub fn product<U: Clone>(&self, other: &FinitePoset<U>) -> FinitePoset<(T, U)> {
        let m = other.len();
        let mut elements = Vec::with_capacity(self.len() * m);
        for a in &self.elements {
            for b in &other.elements {
                elements.push((a.clone(), b.clone()));
            }
        }
        FinitePoset::from_index_relation(elements, |x, y| self.leq(x / m, y / m) && other.leq(x % m, y % m))
            .expect("product of posets is a poset")
    }

    /// The chains of `self` ordered by inclusion. Each element lists the
    /// chain's members bottom to top.
    pub fn chain_poset(&self) -> FinitePoset<Vec<u32>> {
        chain_poset_of(self.chains(None))
    }

    /// Chains through the unique maximum, ordered by inclusion.
    pub fn dagger_complex(&self) -> Result<FinitePoset<Vec<u32>>> {
        let top = self.unique_maximum().ok_or(Error::NoUniqueMaximum)? as u32;
        Ok(chain_poset_of(self.chains(None).into_iter().filter(|c| c.last() == Some(&top)).collect()))
    }

    /// Chains through both the unique maximum and the unique minimum.
    pub fn double_dagger_complex(&self) -> Result<FinitePoset<Vec<u32>>> {
        let top = self.unique_maximum().ok_or(Error::NoUniqueMaximum)? as u32;
        let bottom = self.unique_minimum().ok_or(Error::NoUniqueMinimum)? as u32;
        let keep = |c: &Vec<u32>| c.last() == Some(&top) && c.first() == Some(&bottom);
        Ok(chain_poset_of(self.chains(None).into_iter().filter(keep).collect()))
    }
}

fn is_subchain(a: &[u32], b: &[u32]) -> bool {
    // both sorted the same way (bottom to top), so a merge-style scan suffices
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

fn chain_poset_of(chains: Vec<Vec<u32>>) -> FinitePoset<Vec<u32>> {
    let ch = chains.clone();
    FinitePoset::from_index_relation(chains, |i, j| ch[i].len() <= ch[j].len() && is_subchain(&ch[i], &ch[j]))
        .expect("inclusion is a partial order")
}

/// First comparable pair `p₁ ≤ p₂` with `f(p₁) ≰ f(p₂)`, if any.
pub fn poset_map_violation<T, U>(f: &[usize], p: &FinitePoset<T>, q: &FinitePoset<U>) -> Option<(usize, usize)> {
    assert_eq!(f.len(), p.len(), "map must be total on the domain");
    (0..p.len()).find_map(|i| p.up_set(i).find(|&j| !q.leq(f[i], f[j])).map(|j| (i, j)))
}

/// Whether `f` (given on indices) is order-preserving.
pub fn is_poset_map<T, U>(f: &[usize], p: &FinitePoset<T>, q: &FinitePoset<U>) -> bool {
    poset_map_violation(f, p, q).is_none()
}

/// Indices of `p` with `f(p) ≤ q_index`.
pub fn fiber_below_indices<T, U>(f: &[usize], q: &FinitePoset<U>, q_index: usize, p: &FinitePoset<T>) -> Vec<usize> {
    (0..p.len()).filter(|&i| q.leq(f[i], q_index)).collect()
}

/// Indices of `p` with `f(p) ≥ q_index`.
pub fn fiber_above_indices<T, U>(f: &[usize], q: &FinitePoset<U>, q_index: usize, p: &FinitePoset<T>) -> Vec<usize> {
    (0..p.len()).filter(|&i| q.leq(q_index, f[i])).collect()
}

/// The subposet `f⁻¹(Q_{≤q})`.
pub fn fiber_below<T: Clone, U>(f: &[usize], p: &FinitePoset<T>, q: &FinitePoset<U>, q_index: usize) -> FinitePoset<T> {
    p.induced(&fiber_below_indices(f, q, q_index, p))
}

/// The subposet `f⁻¹(Q_{≥q})`.
pub fn fiber_above<T: Clone, U>(f: &[usize], p: &FinitePoset<T>, q: &FinitePoset<U>, q_index: usize) -> FinitePoset<T> {
    p.induced(&fiber_above_indices(f, q, q_index, p))
}

/// Whether a self-map satisfies `f(x) ≥ x` for all `x`.
pub fn is_increasing<T>(f: &[usize], p: &FinitePoset<T>) -> bool {
    f.iter().enumerate().all(|(i, &fi)| p.leq(i, fi))
}

pub fn fixed_points(f: &[usize]) -> Vec<usize> {
    f.iter().enumerate().filter(|&(i, &fi)| i == fi).map(|(i, _)| i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset<usize> {
        FinitePoset::from_relation((0..n).collect(), |a, b| a <= b).unwrap()
    }

    /// The four-element poset with two minima below two maxima.
    pub(crate) fn circle4() -> FinitePoset<&'static str> {
        FinitePoset::from_cover_pairs(vec!["a", "b", "c", "d"], &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn three_chain_is_triangle() {
        let k = chain(3).order_complex();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn circle_and_subdivision() {
        let p = circle4();
        assert_eq!(p.order_complex().f_vector(), vec![4, 4]);
        let sd = p.chain_poset();
        assert_eq!(sd.len(), 8);
        assert_eq!(sd.order_complex().f_vector(), vec![8, 8]);
    }

    #[test]
    fn audit_rejects_non_transitive() {
        let r = FinitePoset::from_index_relation(vec![0, 1, 2], |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2));
        assert!(matches!(r, Err(Error::NotAPoset(_))));
        let r = FinitePoset::from_index_relation(vec![0, 1], |_, _| true);
        assert!(matches!(r, Err(Error::NotAPoset(_))));
        let r = FinitePoset::from_cover_pairs(vec![0, 1], &[(0, 1), (1, 0)]);
        assert!(r.is_err());
    }

    #[test]
    fn covers_and_extremes() {
        let p = chain(4);
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(p.unique_maximum(), Some(3));
        assert_eq!(p.unique_minimum(), Some(0));
        assert_eq!(p.strict_pair_count(), 6);
        let op = p.opposite();
        assert_eq!(op.maximal_elements(), p.minimal_elements());
        assert!(op.opposite().cover_pairs() == p.cover_pairs());
    }

    #[test]
    fn dagger_of_two_chain() {
        let p = FinitePoset::from_cover_pairs(vec!['a', 'b'], &[(0, 1)]).unwrap();
        let d = p.dagger_complex().unwrap();
        let mut chains: Vec<Vec<u32>> = d.elements().to_vec();
        chains.sort();
        assert_eq!(chains, vec![vec![0, 1], vec![1]]);
        assert_eq!(p.double_dagger_complex().unwrap().len(), 1);
        assert!(matches!(circle4().dagger_complex(), Err(Error::NoUniqueMaximum)));
    }

    #[test]
    fn product_sizes_and_map_checks() {
        let p = circle4();
        let pp = p.product(&p);
        assert_eq!(pp.len(), 16);
        let one = chain(1);
        let q = p.product(&one);
        assert_eq!(q.cover_pairs(), p.cover_pairs());
        let id: Vec<usize> = (0..4).collect();
        assert!(is_poset_map(&id, &p, &p));
        // swap the images of a and c (a < c)
        let bad = vec![2, 1, 0, 3];
        assert_eq!(poset_map_violation(&bad, &p, &p), Some((0, 2)));
        assert_eq!(fiber_below(&id, &p, &p, 2).len(), 3);
        assert_eq!(fiber_above(&id, &p, &p, 0).len(), 3);
    }

    #[test]
    fn dot_export() {
        let dot = chain(2).hasse_dot("c", |x| format!("{x}"));
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.starts_with("digraph \"c\""));
    }
}
