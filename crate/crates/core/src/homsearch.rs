//! Backtracking search for signified and signed homomorphisms, and exact
//! signified / signed chromatic numbers.
//!
//! Host vertices are placed in a connected order (every vertex after the first
//! of its component has an already-placed neighbor). The candidate set of a
//! vertex is the intersection of the target's positive or negative neighbor
//! rows of its placed neighbors, so each constraint costs one AND per word.

use std::time::{Duration, Instant};

use serde_json::json;

use crate::bits;
use crate::sgraph::{is_valid_hom, Mapping, Sign, SignifiedGraph};
use crate::targets::{build_at, LabelledTarget, TargetSymmetry};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VarOrder {
    /// Highest core number first, extended through placed neighbors.
    #[default]
    Degeneracy,
    /// Vertex index order.
    Natural,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of search nodes; 0 means unlimited.
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
    pub order: VarOrder,
    /// Pin first images using the target's declared symmetry.
    pub symmetry: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_limit: 0, time_limit: None, order: VarOrder::Degeneracy, symmetry: true }
    }
}

impl SearchConfig {
    pub fn with_node_limit(mut self, nodes: u64) -> Self {
        self.node_limit = nodes;
        self
    }

    pub fn with_time_limit(mut self, t: Duration) -> Self {
        self.time_limit = Some(t);
        self
    }

    pub fn with_order(mut self, order: VarOrder) -> Self {
        self.order = order;
        self
    }

    pub fn without_symmetry(mut self) -> Self {
        self.symmetry = false;
        self
    }
}

/// Result of a bounded search. Running out of budget is a value, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search completed and no solution exists.
    Absent,
    /// A node or time limit was hit first.
    Indeterminate,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, SearchOutcome::Indeterminate)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::Absent => SearchOutcome::Absent,
            SearchOutcome::Indeterminate => SearchOutcome::Indeterminate,
        }
    }
}

/// Shared node/time budget across several searches.
#[derive(Debug)]
pub struct Budget {
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn new(cfg: &SearchConfig) -> Self {
        Budget { nodes: 0, limit: cfg.node_limit, deadline: cfg.time_limit.map(|t| Instant::now() + t) }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Counts one node; false once the budget is spent.
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.limit != 0 && self.nodes > self.limit {
            return false;
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return false;
                }
            }
        }
        true
    }
}

/// Core numbers by repeated removal of a minimum-degree vertex.
fn core_numbers(g: &SignifiedGraph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut core = vec![0; n];
    let mut k = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).expect("vertices remain");
        k = k.max(deg[v]);
        core[v] = k;
        removed[v] = true;
        for (u, _) in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    core
}

/// Placement order; every vertex after the first of its component has a
/// neighbor earlier in the order.
pub fn search_order(g: &SignifiedGraph, policy: VarOrder) -> Vec<usize> {
    let n = g.n();
    let core = match policy {
        VarOrder::Degeneracy => core_numbers(g),
        VarOrder::Natural => vec![0; n],
    };
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let key = |v: usize| match policy {
            VarOrder::Degeneracy => (links[v] > 0, links[v], core[v], g.degree(v), usize::MAX - v),
            VarOrder::Natural => (links[v] > 0, 0, 0, 0, usize::MAX - v),
        };
        let v = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| key(v)).expect("vertices remain");
        placed[v] = true;
        order.push(v);
        for (u, _) in g.neighbors(v) {
            links[u] += 1;
        }
    }
    order
}

/// Earlier neighbors of each position, as `(position, sign)`.
fn back_edges(g: &SignifiedGraph, order: &[usize]) -> Vec<Vec<(usize, Sign)>> {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut back: Vec<(usize, Sign)> = g.neighbors(v).filter(|&(u, _)| pos[u] < i).map(|(u, s)| (pos[u], s)).collect();
            back.sort_unstable();
            back
        })
        .collect()
}

/// Single-component homomorphism search over a fixed order.
struct HomSearch<'a> {
    h: &'a SignifiedGraph,
    back: Vec<Vec<(usize, Sign)>>,
    // optional fixed candidate for positions 0 and 1
    pins: [Option<usize>; 2],
}

impl HomSearch<'_> {
    fn run(&self, budget: &mut Budget) -> SearchOutcome<Vec<usize>> {
        let n = self.back.len();
        let w = self.h.words();
        if n == 0 {
            return SearchOutcome::Found(Vec::new());
        }
        if self.h.n() == 0 {
            return SearchOutcome::Absent;
        }
        let mut cands = vec![0u64; n * w];
        let mut img = vec![usize::MAX; n];
        self.fill(0, &mut cands[..w], &img);
        let mut d = 0usize;
        loop {
            let row = &mut cands[d * w..(d + 1) * w];
            let next = row.iter().position(|&x| x != 0).map(|wi| {
                let b = row[wi].trailing_zeros() as usize;
                row[wi] &= row[wi] - 1;
                wi * 64 + b
            });
            match next {
                Some(c) => {
                    if !budget.tick() {
                        return SearchOutcome::Indeterminate;
                    }
                    img[d] = c;
                    if d + 1 == n {
                        return SearchOutcome::Found(img);
                    }
                    d += 1;
                    let (_, rest) = cands.split_at_mut(d * w);
                    self.fill(d, &mut rest[..w], &img);
                }
                None => {
                    if d == 0 {
                        return SearchOutcome::Absent;
                    }
                    d -= 1;
                }
            }
        }
    }

    #[inline]
    fn fill(&self, d: usize, row: &mut [u64], img: &[usize]) {
        if d < 2 {
            if let Some(p) = self.pins[d] {
                row.fill(0);
                // the pin must still agree with earlier placements
                if self.back[d].iter().all(|&(q, s)| self.h.sign(img[q], p) == Some(s)) {
                    bits::set(row, p);
                }
                return;
            }
        }
        let back = &self.back[d];
        if back.is_empty() {
            bits::fill(row, self.h.n());
            return;
        }
        let (q0, s0) = back[0];
        row.copy_from_slice(self.h.row(img[q0], s0));
        for &(q, s) in &back[1..] {
            bits::and_assign(row, self.h.row(img[q], s));
        }
    }
}

fn hom_search(g: &SignifiedGraph, h: &SignifiedGraph, symmetry: &TargetSymmetry, cfg: &SearchConfig) -> SearchOutcome<Mapping> {
    let mut budget = Budget::new(cfg);
    let mut image = vec![usize::MAX; g.n()];
    let full = search_order(g, cfg.order);
    // components are independent; solve them one at a time
    let comps = g.components();
    let mut comp_of = vec![0; g.n()];
    for (ci, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = ci;
        }
    }
    for ci in 0..comps.len() {
        let order: Vec<usize> = full.iter().copied().filter(|&v| comp_of[v] == ci).collect();
        let back = back_edges(g, &order);
        let mut pins = [None, None];
        if cfg.symmetry {
            match symmetry {
                TargetSymmetry::None => {}
                TargetSymmetry::VertexTransitive => pins[0] = Some(0),
                TargetSymmetry::EdgeTransitive { pos, neg } => {
                    if order.len() >= 2 {
                        if let Some(s) = g.sign(order[0], order[1]) {
                            let (a, b) = if s == Sign::Pos { *pos } else { *neg };
                            pins = [Some(a), Some(b)];
                        }
                    }
                    if pins[0].is_none() {
                        pins[0] = Some(pos.0);
                    }
                }
            }
        }
        let search = HomSearch { h, back, pins };
        match search.run(&mut budget) {
            SearchOutcome::Found(img) => {
                for (i, &v) in order.iter().enumerate() {
                    image[v] = img[i];
                }
            }
            SearchOutcome::Absent => return SearchOutcome::Absent,
            SearchOutcome::Indeterminate => return SearchOutcome::Indeterminate,
        }
    }
    SearchOutcome::Found(Mapping(image))
}

/// Signified homomorphism G → H, with no symmetry assumptions on H.
pub fn find_signified_hom(g: &SignifiedGraph, h: &SignifiedGraph, cfg: &SearchConfig) -> SearchOutcome<Mapping> {
    hom_search(g, h, &TargetSymmetry::None, cfg)
}

/// Signified homomorphism G → T, pinning images by T's declared symmetry
/// when `cfg.symmetry` is set.
pub fn find_hom_to_target(g: &SignifiedGraph, t: &LabelledTarget, cfg: &SearchConfig) -> SearchOutcome<Mapping> {
    hom_search(g, &t.graph, &t.symmetry, cfg)
}

/// A signed homomorphism: resigning `resign_set` in G makes `mapping` a
/// signified homomorphism into H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedHom {
    pub resign_set: Vec<usize>,
    pub mapping: Mapping,
}

/// Folds a signified homomorphism into AT(H) (with H on `h_n` vertices, copy
/// 1 at offset `h_n`) into a signed homomorphism into H.
pub fn fold_at_hom(phi: &Mapping, h_n: usize) -> SignedHom {
    let resign_set = (0..phi.len()).filter(|&v| phi.image(v) >= h_n).collect();
    let mapping = Mapping(phi.0.iter().map(|&x| x % h_n).collect());
    SignedHom { resign_set, mapping }
}

/// Signed homomorphism G → H, found as a signified homomorphism G → AT(H).
pub fn find_signed_hom(g: &SignifiedGraph, h: &SignifiedGraph, cfg: &SearchConfig) -> SearchOutcome<SignedHom> {
    let at = build_at(h);
    find_signified_hom(g, &at, cfg).map(|phi| {
        let out = fold_at_hom(&phi, h.n());
        debug_assert!(is_valid_hom(&g.resign(&out.resign_set).expect("in range"), h, &out.mapping));
        out
    })
}

/// An exact (or best-known) chromatic value with its witness.
#[derive(Clone, Debug)]
pub struct ChromaticResult {
    pub value: usize,
    /// Quotient graph on `value` vertices.
    pub witness_target: SignifiedGraph,
    pub witness_map: Mapping,
    /// Vertices resigned before coloring (empty for χ₂).
    pub resign_set: Vec<usize>,
    /// Every smaller color count was refuted by a completed search.
    pub exhausted: bool,
    pub nodes: u64,
}

impl ChromaticResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "value": self.value,
            "exhausted": self.exhausted,
            "witness_map": self.witness_map,
            "resign_set": self.resign_set,
            "witness_target": crate::sgraph::GraphJson::from(&self.witness_target),
            "nodes": self.nodes,
        })
    }
}

#[derive(Clone, Debug)]
pub enum ChromaticOutcome {
    Decided(ChromaticResult),
    /// Budget ran out; the value lies in `lower_bound..=upper_bound`.
    Indeterminate {
        lower_bound: usize,
        upper_bound: usize,
        nodes: u64,
    },
}

impl ChromaticOutcome {
    pub fn decided(self) -> Option<ChromaticResult> {
        match self {
            ChromaticOutcome::Decided(r) => Some(r),
            ChromaticOutcome::Indeterminate { .. } => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ChromaticOutcome::Decided(r) => r.to_json(),
            ChromaticOutcome::Indeterminate { lower_bound, upper_bound, nodes } => json!({
                "value": null,
                "exhausted": false,
                "indeterminate": true,
                "lower_bound": lower_bound,
                "upper_bound": upper_bound,
                "nodes": nodes,
            }),
        }
    }
}

/// Coloring search with class-pair sign latching. When `signed` is set, each
/// vertex also chooses whether it is resigned; the first vertex of every class
/// is never resigned (resigning a whole class preserves validity).
struct ColoringSearch {
    order: Vec<usize>,
    back: Vec<Vec<(usize, Sign)>>,
    k: usize,
    signed: bool,
}

struct Coloring {
    class: Vec<usize>,
    flip: Vec<bool>,
}

impl ColoringSearch {
    fn new(g: &SignifiedGraph, k: usize, signed: bool, policy: VarOrder) -> ColoringSearch {
        let order = search_order(g, policy);
        let back = back_edges(g, &order);
        ColoringSearch { order, back, k, signed }
    }

    fn unlatch(&self, d: usize, applied: usize, c: usize, class: &[usize], latch: &mut [i8], count: &mut [u32]) {
        let k = self.k;
        for &(q, _) in &self.back[d][..applied] {
            let cq = class[q];
            for idx in [c * k + cq, cq * k + c] {
                count[idx] -= 1;
                if count[idx] == 0 {
                    latch[idx] = 0;
                }
            }
        }
    }

    fn run(&self, budget: &mut Budget) -> SearchOutcome<Coloring> {
        let n = self.order.len();
        let k = self.k;
        if n == 0 {
            return SearchOutcome::Found(Coloring { class: vec![], flip: vec![] });
        }
        if k == 0 {
            return SearchOutcome::Absent;
        }
        let choices = if self.signed { 2 } else { 1 };
        // latched sign (+1/−1/0) and multiplicity for each ordered class pair
        let mut latch = vec![0i8; k * k];
        let mut count = vec![0u32; k * k];
        let mut class = vec![usize::MAX; n];
        let mut flip = vec![false; n];
        // next choice index to try at each position: class * choices + flip
        let mut next = vec![0usize; n];
        // max class used among positions < i, plus one (number of classes in use)
        let mut used = vec![0usize; n + 1];
        let mut d = 0usize;
        loop {
            let limit = (used[d] + 1).min(k) * choices;
            let mut placed = false;
            while next[d] < limit {
                let choice = next[d];
                next[d] += 1;
                let c = choice / choices;
                let f = choice % choices == 1;
                // a class's first vertex is never resigned
                if f && c == used[d] {
                    continue;
                }
                // latch edge by edge so two back-edges into one class must agree
                let mut applied = 0;
                let mut ok = true;
                for &(q, s) in &self.back[d] {
                    let cq = class[q];
                    let eff = if f != flip[q] { -s } else { s };
                    let l = latch[c * k + cq];
                    if cq == c || (l != 0 && l != eff.value()) {
                        ok = false;
                        break;
                    }
                    for idx in [c * k + cq, cq * k + c] {
                        if count[idx] == 0 {
                            latch[idx] = eff.value();
                        }
                        count[idx] += 1;
                    }
                    applied += 1;
                }
                if !ok {
                    self.unlatch(d, applied, c, &class, &mut latch, &mut count);
                    continue;
                }
                if !budget.tick() {
                    return SearchOutcome::Indeterminate;
                }
                class[d] = c;
                flip[d] = f;
                used[d + 1] = used[d].max(c + 1);
                placed = true;
                break;
            }
            if placed {
                if d + 1 == n {
                    let mut out_class = vec![0; n];
                    let mut out_flip = vec![false; n];
                    for (i, &v) in self.order.iter().enumerate() {
                        out_class[v] = class[i];
                        out_flip[v] = flip[i];
                    }
                    return SearchOutcome::Found(Coloring { class: out_class, flip: out_flip });
                }
                d += 1;
                next[d] = 0;
            } else {
                if d == 0 {
                    return SearchOutcome::Absent;
                }
                d -= 1;
                // undo placement at d
                let c = class[d];
                self.unlatch(d, self.back[d].len(), c, &class, &mut latch, &mut count);
                class[d] = usize::MAX;
            }
        }
    }
}

fn quotient(g: &SignifiedGraph, class: &[usize], k: usize) -> SignifiedGraph {
    let mut q = SignifiedGraph::empty(k);
    for (u, v, s) in g.edges() {
        q.set_edge(class[u], class[v], Some(s)).expect("coloring is proper");
    }
    q
}

/// Signified k-coloring of G, as a class vector, if one exists.
pub fn signified_coloring(g: &SignifiedGraph, k: usize, cfg: &SearchConfig) -> SearchOutcome<Vec<usize>> {
    let mut budget = Budget::new(cfg);
    ColoringSearch::new(g, k, false, cfg.order).run(&mut budget).map(|c| c.class)
}

fn chromatic(g: &SignifiedGraph, cfg: &SearchConfig, signed: bool) -> ChromaticOutcome {
    let mut budget = Budget::new(cfg);
    let n = g.n();
    for k in 0..=n {
        if k == 0 && n > 0 {
            continue;
        }
        match ColoringSearch::new(g, k, signed, cfg.order).run(&mut budget) {
            SearchOutcome::Found(col) => {
                let resign_set: Vec<usize> = (0..n).filter(|&v| col.flip[v]).collect();
                let resigned = g.resign(&resign_set).expect("in range");
                let witness_target = quotient(&resigned, &col.class, k);
                let witness_map = Mapping(col.class);
                debug_assert!(is_valid_hom(&resigned, &witness_target, &witness_map));
                return ChromaticOutcome::Decided(ChromaticResult {
                    value: k,
                    witness_target,
                    witness_map,
                    resign_set,
                    exhausted: true,
                    nodes: budget.nodes(),
                });
            }
            SearchOutcome::Absent => continue,
            SearchOutcome::Indeterminate => {
                return ChromaticOutcome::Indeterminate { lower_bound: k, upper_bound: n, nodes: budget.nodes() }
            }
        }
    }
    unreachable!("n colors always suffice")
}

/// χ₂(G): smallest k with a signified k-coloring, every smaller k refuted.
pub fn chi2_exact(g: &SignifiedGraph, cfg: &SearchConfig) -> ChromaticOutcome {
    chromatic(g, cfg, false)
}

/// χ_s(G): smallest χ₂ over all resignings of G. The search chooses a class
/// and a resign bit per vertex, so the 2^(n−1) equivalent signatures are never
/// enumerated one by one.
pub fn chis_exact(g: &SignifiedGraph, cfg: &SearchConfig) -> ChromaticOutcome {
    chromatic(g, cfg, true)
}
