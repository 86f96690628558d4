//! Abstract simplicial complexes stored layer by layer.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Simplices of dimension `d` are stored flat in `layers[d]` with stride `d + 1`,
/// each sorted ascending, and the layer sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    layers: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Closes the given simplices under taking faces. Vertices are `0..n_vertices`;
    /// isolated vertices are included.
    pub fn from_simplices<I>(n_vertices: usize, simplices: I) -> SimplicialComplex
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut layers: Vec<Vec<Vec<u32>>> = vec![(0..n_vertices as u32).map(|v| vec![v]).collect()];
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            let k = s.len();
            // every nonempty subset
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                let d = face.len() - 1;
                if layers.len() <= d {
                    layers.resize(d + 1, Vec::new());
                }
                layers[d].push(face);
            }
        }
        let layers = layers
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l.into_iter().flatten().collect()
            })
            .collect();
        let mut c = SimplicialComplex { n_vertices, layers };
        c.trim();
        c
    }

    /// Builds from layers that are already closed under faces, sorted and
    /// deduplicated (layer `d` flat with stride `d + 1`).
    pub(crate) fn from_sorted_layers(n_vertices: usize, layers: Vec<Vec<u32>>) -> SimplicialComplex {
        let mut c = SimplicialComplex { n_vertices, layers };
        c.trim();
        debug_assert!(c.is_closed());
        c
    }

    fn trim(&mut self) {
        while self.layers.len() > 1 && self.layers.last().is_some_and(Vec::is_empty) {
            self.layers.pop();
        }
        if self.layers.is_empty() {
            self.layers.push(Vec::new());
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        if self.n_vertices == 0 {
            None
        } else {
            Some(self.layers.len() - 1)
        }
    }

    pub fn count(&self, d: usize) -> usize {
        self.layers.get(d).map_or(0, |l| l.len() / (d + 1))
    }

    /// `f`-vector `(f_0, f_1, …)`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.layers.len()).map(|d| self.count(d)).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.f_vector().iter().sum()
    }

    pub fn simplex(&self, d: usize, i: usize) -> &[u32] {
        &self.layers[d][i * (d + 1)..(i + 1) * (d + 1)]
    }

    pub fn simplices(&self, d: usize) -> impl Iterator<Item = &[u32]> {
        self.layers.get(d).map(|l| l.chunks_exact(d + 1)).into_iter().flatten()
    }

    /// Index of a sorted simplex within its layer.
    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let d = simplex.len().checked_sub(1)?;
        let layer = self.layers.get(d)?;
        let stride = d + 1;
        let (mut lo, mut hi) = (0usize, layer.len() / stride);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match layer[mid * stride..(mid + 1) * stride].cmp(simplex) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        self.index_of(simplex).is_some()
    }

    /// Alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Every codimension-one face of every stored simplex is stored.
    pub fn is_closed(&self) -> bool {
        let mut face = Vec::new();
        for d in 1..self.layers.len() {
            for s in self.simplices(d) {
                for skip in 0..=d {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    if !self.contains(&face) {
                        return false;
                    }
                }
            }
        }
        self.simplices(0).all(|v| (v[0] as usize) < self.n_vertices)
    }

    /// Subcomplex of simplices of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        let layers = self.layers.iter().take(k + 1).cloned().collect();
        SimplicialComplex::from_sorted_layers(self.n_vertices, layers)
    }

    /// Whether all simplices of `self` appear in `other` (same vertex numbering).
    pub fn same_simplices(&self, other: &SimplicialComplex) -> bool {
        self.n_vertices == other.n_vertices && self.layers == other.layers
    }
}

/// Sorts a flat layer of fixed-width records lexicographically and removes duplicates.
pub(crate) fn sort_layer(flat: Vec<u32>, stride: usize) -> Vec<u32> {
    let n = flat.len() / stride;
    let mut idx: Vec<u32> = (0..n as u32).collect();
    idx.sort_unstable_by(|&a, &b| {
        let a = a as usize * stride;
        let b = b as usize * stride;
        flat[a..a + stride].cmp(&flat[b..b + stride])
    });
    let mut out: Vec<u32> = Vec::with_capacity(flat.len());
    for i in idx {
        let s = &flat[i as usize * stride..(i as usize + 1) * stride];
        if out.len() >= stride && &out[out.len() - stride..] == s {
            continue;
        }
        out.extend_from_slice(s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_closure() {
        let k = SimplicialComplex::from_simplices(3, [vec![2, 0, 1]]);
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert_eq!(k.total_simplices(), 7);
        assert_eq!(k.euler_characteristic(), 1);
        assert!(k.is_closed());
        assert_eq!(k.index_of(&[0, 2]), Some(1));
        assert_eq!(k.index_of(&[1, 5]), None);
    }

    #[test]
    fn four_cycle() {
        let k = SimplicialComplex::from_simplices(4, [vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]);
        assert_eq!(k.f_vector(), vec![4, 4]);
        assert_eq!(k.euler_characteristic(), 0);
        assert_eq!(k.dimension(), Some(1));
        assert_eq!(k.skeleton(0).f_vector(), vec![4]);
    }
}
