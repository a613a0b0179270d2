//! The auxiliary graph on singletons `X` and merged doubletons `Z`, with
//! odd/even edge labels, swaps, and odd-triangle layers.

use super::chains::{ChainFamily, PairType};

/// Layer of an edge: removed with the first or the second triangle family,
/// or still present in the innermost layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    Absent,
    First,
    Second,
    Inner,
}

/// Vertices `0..alpha` are `X`; `alpha + j` is `z_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGraph {
    pub alpha: usize,
    pub beta: usize,
    /// Oddness under the original `y`/`y'` labels.
    base: Vec<Vec<bool>>,
    layer: Vec<Vec<Layer>>,
    /// Swap state per `z_j`.
    pub flip: Vec<bool>,
    pub first: Vec<[usize; 3]>,
    pub second: Vec<[usize; 3]>,
}

impl ParityGraph {
    /// Empty graph on `alpha + beta` vertices.
    pub fn new(alpha: usize, beta: usize) -> Self {
        let n = alpha + beta;
        ParityGraph {
            alpha,
            beta,
            base: vec![vec![false; n]; n],
            layer: vec![vec![Layer::Absent; n]; n],
            flip: vec![false; beta],
            first: Vec::new(),
            second: Vec::new(),
        }
    }

    /// `H` from a chain family: all `X–Z` pairs, and `Z–Z` pairs that are
    /// not tangled. `x_i z_j` is odd when the chain from `x_i` ends at
    /// `y_j'`; `z_i z_j` is odd when its chains cross.
    pub fn from_chains(alpha: usize, beta: usize, fam: &ChainFamily, primed_end: impl Fn(usize, usize) -> bool) -> Self {
        let mut h = ParityGraph::new(alpha, beta);
        for i in 0..alpha {
            for j in 0..beta {
                h.insert(i, alpha + j, primed_end(i, j));
            }
        }
        for (&(i, j), d) in &fam.doubles {
            if d.kind != PairType::Tangled {
                h.insert(alpha + i, alpha + j, d.kind == PairType::Crossed);
            }
        }
        h
    }

    pub fn insert(&mut self, u: usize, v: usize, odd: bool) {
        let odd = odd ^ self.flipped(u) ^ self.flipped(v);
        self.base[u][v] = odd;
        self.base[v][u] = odd;
        self.layer[u][v] = Layer::Inner;
        self.layer[v][u] = Layer::Inner;
    }

    pub fn order(&self) -> usize {
        self.alpha + self.beta
    }

    pub fn is_z(&self, v: usize) -> bool {
        v >= self.alpha
    }

    pub fn zs(&self) -> std::ops::Range<usize> {
        self.alpha..self.order()
    }

    fn flipped(&self, v: usize) -> bool {
        self.is_z(v) && self.flip[v - self.alpha]
    }

    pub fn layer(&self, u: usize, v: usize) -> Layer {
        self.layer[u][v]
    }

    /// Present in the layer `at` or deeper.
    pub fn within(&self, u: usize, v: usize, at: Layer) -> bool {
        self.layer[u][v] != Layer::Absent && self.layer[u][v] >= at
    }

    pub fn odd(&self, u: usize, v: usize) -> bool {
        self.base[u][v] ^ self.flipped(u) ^ self.flipped(v)
    }

    /// Swaps every `z` in `set` (vertex indices).
    pub fn swap(&mut self, set: &[usize]) {
        for &v in set {
            assert!(self.is_z(v), "only Z vertices can be swapped");
            self.flip[v - self.alpha] ^= true;
        }
    }

    pub fn triangle_odd(&self, tri: [usize; 3]) -> bool {
        let [a, b, c] = tri;
        self.odd(a, b) ^ self.odd(b, c) ^ self.odd(a, c)
    }

    fn triangle_within(&self, tri: [usize; 3], at: Layer) -> bool {
        let [a, b, c] = tri;
        self.within(a, b, at) && self.within(b, c, at) && self.within(a, c, at)
    }

    fn demote(&mut self, tri: [usize; 3], to: Layer) {
        let [a, b, c] = tri;
        for (u, v) in [(a, b), (b, c), (a, c)] {
            self.layer[u][v] = to;
            self.layer[v][u] = to;
        }
    }

    /// Odd triangles with all vertices in `Z`, within layer `at`, in
    /// lexicographic order.
    pub fn odd_z_triangles(&self, at: Layer) -> Vec<[usize; 3]> {
        let zs: Vec<usize> = self.zs().collect();
        let mut out = Vec::new();
        for (p, &a) in zs.iter().enumerate() {
            for (q, &b) in zs.iter().enumerate().skip(p + 1) {
                for &c in &zs[q + 1..] {
                    let tri = [a, b, c];
                    if self.triangle_within(tri, at) && self.triangle_odd(tri) {
                        out.push(tri);
                    }
                }
            }
        }
        out
    }

    /// Odd triangles `x z_j z_k` within layer `at`, in lexicographic order.
    pub fn odd_xz_triangles(&self, at: Layer) -> Vec<[usize; 3]> {
        let zs: Vec<usize> = self.zs().collect();
        let mut out = Vec::new();
        for x in 0..self.alpha {
            for (p, &a) in zs.iter().enumerate() {
                for &b in &zs[p + 1..] {
                    let tri = [x, a, b];
                    if self.triangle_within(tri, at) && self.triangle_odd(tri) {
                        out.push(tri);
                    }
                }
            }
        }
        out
    }

    /// Degree of `v` among edges of layer `at` or deeper, counting only
    /// neighbours in `Z` when `z_only`.
    pub fn degree_within(&self, v: usize, at: Layer, z_only: bool) -> usize {
        (0..self.order())
            .filter(|&w| w != v && (!z_only || self.is_z(w)) && self.within(v, w, at))
            .count()
    }

    pub fn edges_within(&self, at: Layer) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order() {
            for v in u + 1..self.order() {
                if self.within(u, v, at) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Greedy lexicographic extraction of the two triangle families.
    /// Maximality is re-verified by a full scan.
    pub fn extract_triangles(&mut self) -> Result<(), String> {
        for tri in self.odd_z_triangles(Layer::Inner) {
            if self.triangle_within(tri, Layer::Inner) {
                self.demote(tri, Layer::First);
                self.first.push(tri);
            }
        }
        if let Some(tri) = self.odd_z_triangles(Layer::Second).first() {
            return Err(format!("odd triangle {tri:?} left in the first layer"));
        }
        for tri in self.odd_xz_triangles(Layer::Inner) {
            if self.triangle_within(tri, Layer::Inner) {
                self.demote(tri, Layer::Second);
                self.second.push(tri);
            }
        }
        if let Some(tri) = self.odd_xz_triangles(Layer::Inner).first() {
            return Err(format!("odd triangle {tri:?} left in the inner layer"));
        }
        Ok(())
    }

    /// Counts (even, odd) edges of the inner layer between the given sides.
    fn inner_counts(&self, filter: impl Fn(usize, usize) -> bool) -> (usize, usize) {
        let (mut even, mut odd) = (0, 0);
        for (u, v) in self.edges_within(Layer::Inner) {
            if filter(u, v) {
                if self.odd(u, v) {
                    odd += 1;
                } else {
                    even += 1;
                }
            }
        }
        (even, odd)
    }

    pub fn inner_zz_counts(&self) -> (usize, usize) {
        self.inner_counts(|u, v| self.is_z(u) && self.is_z(v))
    }

    pub fn inner_xz_counts(&self) -> (usize, usize) {
        self.inner_counts(|u, v| self.is_z(u) != self.is_z(v))
    }

    /// Swaps single `z` with more odd than even inner `Z`-edges until none
    /// is left, then all of `Z` if odd `X–Z` edges outnumber even ones.
    /// Returns the set of vertices whose swap state changed.
    pub fn balance_swaps(&mut self) -> Vec<usize> {
        let mut changed = vec![false; self.beta];
        loop {
            let worse = self.zs().find(|&z| {
                let (mut even, mut odd) = (0, 0);
                for w in self.zs() {
                    if w != z && self.within(z, w, Layer::Inner) {
                        if self.odd(z, w) {
                            odd += 1;
                        } else {
                            even += 1;
                        }
                    }
                }
                odd > even
            });
            let Some(z) = worse else {
                break;
            };
            self.swap(&[z]);
            changed[z - self.alpha] ^= true;
        }
        let (even, odd) = self.inner_xz_counts();
        if odd > even {
            let all: Vec<usize> = self.zs().collect();
            self.swap(&all);
            for c in &mut changed {
                *c ^= true;
            }
        }
        (0..self.beta).filter(|&j| changed[j]).map(|j| self.alpha + j).collect()
    }
}
