//! Signified graphs: simple graphs whose edges carry a sign in {+1, −1}.
//!
//! Adjacency is stored twice: a dense sign matrix for O(1) lookups, and one
//! positive and one negative neighbor bitset per vertex for the searches.

mod io;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{arg, Result};

pub use io::GraphJson;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    /// `(−1)^k`
    pub fn parity(k: usize) -> Sign {
        if k.is_multiple_of(2) {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_value(v).ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// A total vertex map V(G) → V(H).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mapping(pub Vec<usize>);

impl Mapping {
    pub fn identity(n: usize) -> Self {
        Mapping((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &Mapping) -> Mapping {
        Mapping(self.0.iter().map(|&v| other.0[v]).collect())
    }

    pub fn is_permutation_of(&self, n: usize) -> bool {
        if self.0.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        self.0.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    }

    pub fn inverse(&self) -> Option<Mapping> {
        let n = self.0.len();
        if !self.is_permutation_of(n) {
            return None;
        }
        let mut inv = vec![0; n];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Some(Mapping(inv))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignifiedGraph {
    n: usize,
    words: usize,
    // row-major n×n, 0 = no edge
    adj: Vec<i8>,
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl fmt::Debug for SignifiedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignifiedGraph(n={}, edges=[", self.n)?;
        for (i, (u, v, s)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}{s}{v}")?;
        }
        f.write_str("])")
    }
}

impl SignifiedGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = bits::words_for(n);
        SignifiedGraph { n, words, adj: vec![0; n * n], pos: vec![0; n * words], neg: vec![0; n * words] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, Sign)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v, s) in edges {
            g.add_edge(u, v, s)?;
        }
        Ok(g)
    }

    /// Adds a new edge; fails on loops, out-of-range endpoints or an existing edge.
    pub fn add_edge(&mut self, u: usize, v: usize, s: Sign) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return arg(format!("self-loop at {u}"));
        }
        if self.sign(u, v).is_some() {
            return arg(format!("duplicate edge {u}-{v}"));
        }
        self.put(u, v, Some(s));
        Ok(())
    }

    /// Overwrites the sign of an existing edge or inserts it.
    pub fn set_edge(&mut self, u: usize, v: usize, s: Option<Sign>) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return arg(format!("self-loop at {u}"));
        }
        self.put(u, v, s);
        Ok(())
    }

    fn put(&mut self, u: usize, v: usize, s: Option<Sign>) {
        let val = s.map_or(0, Sign::value);
        self.adj[u * self.n + v] = val;
        self.adj[v * self.n + u] = val;
        for (a, b) in [(u, v), (v, u)] {
            let w = self.words;
            bits::clear(&mut self.pos[a * w..(a + 1) * w], b);
            bits::clear(&mut self.neg[a * w..(a + 1) * w], b);
            match s {
                Some(Sign::Pos) => bits::set(&mut self.pos[a * w..(a + 1) * w], b),
                Some(Sign::Neg) => bits::set(&mut self.neg[a * w..(a + 1) * w], b),
                None => {}
            }
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return arg(format!("vertex {v} out of range for n = {}", self.n));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per bitset row.
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        match self.adj[u * self.n + v] {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    #[inline]
    pub fn sign_value(&self, u: usize, v: usize) -> i8 {
        self.adj[u * self.n + v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v] != 0
    }

    #[inline]
    pub fn pos_row(&self, u: usize) -> &[u64] {
        &self.pos[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn neg_row(&self, u: usize) -> &[u64] {
        &self.neg[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn row(&self, u: usize, s: Sign) -> &[u64] {
        match s {
            Sign::Pos => self.pos_row(u),
            Sign::Neg => self.neg_row(u),
        }
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, Sign)> + '_ {
        (0..self.n).filter_map(move |v| self.sign(u, v).map(|s| (v, s)))
    }

    pub fn pos_neighbors(&self, u: usize) -> Vec<usize> {
        bits::to_vec(self.pos_row(u))
    }

    pub fn neg_neighbors(&self, u: usize) -> Vec<usize> {
        bits::to_vec(self.neg_row(u))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.pos_degree(u) + self.neg_degree(u)
    }

    pub fn pos_degree(&self, u: usize) -> usize {
        bits::count(self.pos_row(u))
    }

    pub fn neg_degree(&self, u: usize) -> usize {
        bits::count(self.neg_row(u))
    }

    /// Edges as `(u, v, sign)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).filter_map(move |v| self.sign(u, v).map(|s| (u, v, s))))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn negative_edge_count(&self) -> usize {
        (0..self.n).map(|u| self.neg_degree(u)).sum::<usize>() / 2
    }

    /// True if both graphs have the same vertex count and the same unsigned edges.
    pub fn same_underlying(&self, other: &SignifiedGraph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| (*a == 0) == (*b == 0))
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|u| self.degree(u) == self.n - 1)
    }

    /// The same underlying graph with every edge positive.
    pub fn all_positive(&self) -> SignifiedGraph {
        let mut g = SignifiedGraph::empty(self.n);
        for (u, v, _) in self.edges() {
            g.put(u, v, Some(Sign::Pos));
        }
        g
    }

    /// Every sign flipped.
    pub fn negated(&self) -> SignifiedGraph {
        let mut g = SignifiedGraph::empty(self.n);
        for (u, v, s) in self.edges() {
            g.put(u, v, Some(-s));
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`; `perm` must be a permutation.
    pub fn relabel(&self, perm: &Mapping) -> Result<SignifiedGraph> {
        if !perm.is_permutation_of(self.n) {
            return arg("relabel needs a permutation of the vertex set");
        }
        let mut g = SignifiedGraph::empty(self.n);
        for (u, v, s) in self.edges() {
            g.put(perm.image(u), perm.image(v), Some(s));
        }
        Ok(g)
    }

    /// Induced subgraph on `verts`; vertex `verts[i]` becomes `i`.
    pub fn induced(&self, verts: &[usize]) -> SignifiedGraph {
        let mut g = SignifiedGraph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if let Some(s) = self.sign(u, v) {
                    g.put(i, j, Some(s));
                }
            }
        }
        g
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &SignifiedGraph) -> SignifiedGraph {
        let mut g = SignifiedGraph::empty(self.n + other.n);
        for (u, v, s) in self.edges() {
            g.put(u, v, Some(s));
        }
        for (u, v, s) in other.edges() {
            g.put(u + self.n, v + self.n, Some(s));
        }
        g
    }

    /// Flips the sign of every edge in the cut (X, V∖X).
    pub fn resign(&self, set: &[usize]) -> Result<SignifiedGraph> {
        let mut mark = vec![false; self.n];
        for &v in set {
            self.check_vertex(v)?;
            mark[v] = true;
        }
        Ok(self.resign_marked(&mark))
    }

    pub(crate) fn resign_marked(&self, mark: &[bool]) -> SignifiedGraph {
        let mut g = SignifiedGraph::empty(self.n);
        for (u, v, s) in self.edges() {
            let s = if mark[u] != mark[v] { -s } else { s };
            g.put(u, v, Some(s));
        }
        g
    }

    /// Product of edge signs along a closed walk `v0 v1 … vk` (closing edge `vk v0`).
    pub fn cycle_sign(&self, cycle: &[usize]) -> Result<Sign> {
        if cycle.len() < 2 {
            return arg("a closed walk needs at least two vertices");
        }
        let mut acc = Sign::Pos;
        for i in 0..cycle.len() {
            let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            match self.sign(u, v) {
                Some(s) => acc = acc * s,
                None => return arg(format!("walk uses missing edge {u}-{v}")),
            }
        }
        Ok(acc)
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for r in 0..self.n {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let mut comp = vec![r];
            let mut queue = VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbor_indices(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn neighbor_indices(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.pos_row(u)).chain(bits::ones(self.neg_row(u)))
    }

    /// BFS spanning forest: each component rooted at its least vertex, neighbors
    /// explored in index order. Returns `parent[v]` (`None` at roots).
    pub fn bfs_forest(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.n];
        let mut seen = vec![false; self.n];
        for r in 0..self.n {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let mut queue = VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                for v in 0..self.n {
                    if !seen[v] && self.adjacent(u, v) {
                        seen[v] = true;
                        parent[v] = Some(u);
                        queue.push_back(v);
                    }
                }
            }
        }
        parent
    }

    /// Edges not in [`bfs_forest`](Self::bfs_forest), in lexicographic order.
    pub fn cotree_edges(&self) -> Vec<(usize, usize)> {
        let parent = self.bfs_forest();
        self.edges().filter(|&(u, v, _)| parent[v] != Some(u) && parent[u] != Some(v)).map(|(u, v, _)| (u, v)).collect()
    }

    /// The resign set that makes every BFS-forest edge positive.
    fn normalizing_set(&self) -> Vec<bool> {
        let parent = self.bfs_forest();
        // BFS order guarantees parents are settled first when walking by discovery
        let mut potential: Vec<Option<Sign>> = vec![None; self.n];
        let mut order: Vec<usize> = Vec::with_capacity(self.n);
        let mut seen = vec![false; self.n];
        for r in 0..self.n {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let mut queue = VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for v in 0..self.n {
                    if !seen[v] && parent[v] == Some(u) {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        for &v in &order {
            potential[v] = Some(match parent[v] {
                None => Sign::Pos,
                Some(p) => potential[p].expect("parent settled") * self.sign(p, v).expect("tree edge"),
            });
        }
        potential.into_iter().map(|s| s == Some(Sign::Neg)).collect()
    }

    /// The equivalent signature whose BFS-forest edges are all positive.
    pub fn canonical_signature(&self) -> SignifiedGraph {
        self.resign_marked(&self.normalizing_set())
    }

    /// If `other` is a resigning of `self`, returns a set X with
    /// `self.resign(X) == other`.
    pub fn equivalent(&self, other: &SignifiedGraph) -> Result<Option<Vec<usize>>> {
        if !self.same_underlying(other) {
            return arg("equivalence needs identical underlying graphs");
        }
        let (a, b) = (self.normalizing_set(), other.normalizing_set());
        if self.resign_marked(&a) != other.resign_marked(&b) {
            return Ok(None);
        }
        Ok(Some((0..self.n).filter(|&v| a[v] != b[v]).collect()))
    }

    /// The anti-twin involution, if every vertex can be paired with a distinct
    /// vertex whose positive and negative neighborhoods are swapped.
    pub fn anti_twin_pairing(&self) -> Option<Mapping> {
        // group vertices by signed neighborhood; u pairs with a vertex from the
        // group keyed by (N⁻(u), N⁺(u))
        let mut groups: HashMap<(&[u64], &[u64]), Vec<usize>> = HashMap::new();
        for u in 0..self.n {
            groups.entry((self.pos_row(u), self.neg_row(u))).or_default().push(u);
        }
        let mut atw = vec![usize::MAX; self.n];
        for (&(p, m), members) in &groups {
            let partners = groups.get(&(m, p))?;
            if partners.len() != members.len() {
                return None;
            }
            if p == m {
                // only isolated vertices can be their own anti-twin group
                if members.len() % 2 == 1 {
                    return None;
                }
                for pair in members.chunks(2) {
                    atw[pair[0]] = pair[1];
                    atw[pair[1]] = pair[0];
                }
            } else {
                for (&u, &v) in members.iter().zip(partners) {
                    atw[u] = v;
                }
            }
        }
        Some(Mapping(atw))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for r in 0..self.n {
            dist.fill(usize::MAX);
            dist[r] = 0;
            parent[r] = usize::MAX;
            let mut queue = VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for v in self.neighbor_indices(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// True iff every edge of `g` maps onto an edge of `h` with the same sign.
pub fn is_valid_hom(g: &SignifiedGraph, h: &SignifiedGraph, phi: &Mapping) -> bool {
    if phi.len() != g.n() || phi.0.iter().any(|&x| x >= h.n()) {
        return false;
    }
    g.edges().all(|(u, v, s)| h.sign(phi.image(u), phi.image(v)) == Some(s))
}

#[cfg(test)]
mod tests;
