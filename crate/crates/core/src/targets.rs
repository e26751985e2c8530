//! Target-graph families: AT(G), G⁺, ZS_k, SP_q, Tr(SP_q) and K₄*.
//!
//! Vertex order conventions:
//!
//! * `AT(G)`: copy 0 of G, then copy 1, so `u_i = u + i·n`.
//! * `G⁺`: the universal vertex is appended as vertex `n`.
//! * `Tr(SP_q)`: `0₀ … (q−1)₀, ∞₀, 0₁ … (q−1)₁, ∞₁`, field elements in index
//!   order; this is exactly `AT(SP_q⁺)`.

use std::fmt;
use std::ops::Deref;

use crate::error::{arg, Result};
use crate::gf::{FieldElem, FieldSpec};
use crate::sgraph::{Sign, SignifiedGraph};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Index(usize),
    Field(FieldElem),
    Infinity,
    /// `(class; α₁ … α_k)` with `α_class = 0`.
    Zielonka {
        class: usize,
        signs: Vec<i8>,
    },
    Copy {
        base: Box<VertexLabel>,
        copy: u8,
    },
}

/// Symmetry facts a search may exploit to pin images.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum TargetSymmetry {
    #[default]
    None,
    /// Every vertex can be mapped to every other by an automorphism.
    VertexTransitive,
    /// Automorphisms act transitively on ordered positive edges and on
    /// ordered negative edges; the pairs are representatives.
    EdgeTransitive { pos: (usize, usize), neg: (usize, usize) },
}

#[derive(Clone, Debug)]
pub struct LabelledTarget {
    pub graph: SignifiedGraph,
    pub labels: Vec<VertexLabel>,
    pub field: Option<FieldSpec>,
    pub symmetry: TargetSymmetry,
}

impl Deref for LabelledTarget {
    type Target = SignifiedGraph;
    fn deref(&self) -> &SignifiedGraph {
        &self.graph
    }
}

impl LabelledTarget {
    fn plain(graph: SignifiedGraph) -> Self {
        let labels = (0..graph.n()).map(VertexLabel::Index).collect();
        LabelledTarget { graph, labels, field: None, symmetry: TargetSymmetry::None }
    }

    pub fn vertex_of(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Vertex `x_copy` of a field-labelled doubled target.
    pub fn field_vertex(&self, x: FieldElem, copy: u8) -> Option<usize> {
        self.vertex_of(&VertexLabel::Copy { base: Box::new(VertexLabel::Field(x)), copy })
    }

    pub fn label_string(&self, v: usize) -> String {
        LabelDisplay { label: &self.labels[v], field: self.field.as_ref() }.to_string()
    }

    pub fn label_strings(&self) -> Vec<String> {
        (0..self.graph.n()).map(|v| self.label_string(v)).collect()
    }

    /// `AT` of this target, carrying labels over as copies.
    pub fn anti_twinned(&self) -> LabelledTarget {
        let mut labels = Vec::with_capacity(2 * self.labels.len());
        for copy in 0..2u8 {
            labels.extend(self.labels.iter().map(|l| VertexLabel::Copy { base: Box::new(l.clone()), copy }));
        }
        LabelledTarget { graph: at_graph(&self.graph), labels, field: self.field.clone(), symmetry: TargetSymmetry::None }
    }

    /// `G⁺`, carrying labels; the new vertex is labelled ∞.
    pub fn plus(&self) -> LabelledTarget {
        let mut labels = self.labels.clone();
        labels.push(VertexLabel::Infinity);
        LabelledTarget { graph: build_plus(&self.graph), labels, field: self.field.clone(), symmetry: TargetSymmetry::None }
    }
}

struct LabelDisplay<'a> {
    label: &'a VertexLabel,
    field: Option<&'a FieldSpec>,
}

impl fmt::Display for LabelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            VertexLabel::Index(i) => write!(f, "{i}"),
            VertexLabel::Field(x) => match self.field {
                Some(spec) => f.write_str(&spec.label(*x)),
                None => write!(f, "({},{})", x.a, x.b),
            },
            VertexLabel::Infinity => f.write_str("∞"),
            VertexLabel::Zielonka { class, signs } => {
                write!(f, "({};", class + 1)?;
                for (i, s) in signs.iter().enumerate() {
                    let sep = if i == 0 { "" } else { "," };
                    match s {
                        1 => write!(f, "{sep}+")?,
                        -1 => write!(f, "{sep}-")?,
                        _ => write!(f, "{sep}0")?,
                    }
                }
                f.write_str(")")
            }
            VertexLabel::Copy { base, copy } => {
                let inner = LabelDisplay { label: base, field: self.field }.to_string();
                if (inner.contains('+') || inner.contains('√')) && !inner.starts_with('(') {
                    write!(f, "({inner})_{copy}")
                } else {
                    write!(f, "{inner}_{copy}")
                }
            }
        }
    }
}

fn at_graph(g: &SignifiedGraph) -> SignifiedGraph {
    let n = g.n();
    let mut h = SignifiedGraph::empty(2 * n);
    for (u, v, s) in g.edges() {
        for i in 0..2 {
            let j = 1 - i;
            h.set_edge(u + i * n, v + i * n, Some(s)).expect("in range");
            // cross edges u_i v_{1−i} carry the opposite sign
            h.set_edge(u + i * n, v + j * n, Some(-s)).expect("in range");
        }
    }
    h
}

/// The anti-twinned graph AT(G) on 2|V(G)| vertices.
pub fn build_at(g: &SignifiedGraph) -> LabelledTarget {
    LabelledTarget::plain(g.clone()).anti_twinned()
}

/// G⁺: G plus a universal vertex joined positively to every vertex.
pub fn build_plus(g: &SignifiedGraph) -> SignifiedGraph {
    let n = g.n();
    let mut h = SignifiedGraph::empty(n + 1);
    for (u, v, s) in g.edges() {
        h.set_edge(u, v, Some(s)).expect("in range");
    }
    for u in 0..n {
        h.set_edge(u, n, Some(Sign::Pos)).expect("in range");
    }
    h
}

/// The signified Zielonka graph ZS_k on k·2^(k−1) vertices.
///
/// Vertices are ordered by class, then by the sign pattern read as a binary
/// number over the other coordinates (`+` before `−`).
pub fn build_zs(k: usize) -> Result<LabelledTarget> {
    if k < 2 {
        return arg(format!("ZS_k needs k >= 2, got {k}"));
    }
    if k > 12 {
        return arg(format!("ZS_{k} is too large"));
    }
    let mut labels = Vec::new();
    for class in 0..k {
        for mask in 0u32..1 << (k - 1) {
            let mut signs = vec![0i8; k];
            let mut bit = 0;
            for (j, s) in signs.iter_mut().enumerate() {
                if j == class {
                    continue;
                }
                *s = if mask >> (k - 2 - bit) & 1 == 0 { 1 } else { -1 };
                bit += 1;
            }
            labels.push(VertexLabel::Zielonka { class, signs });
        }
    }
    let n = labels.len();
    let mut g = SignifiedGraph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let (VertexLabel::Zielonka { class: i, signs: a }, VertexLabel::Zielonka { class: j, signs: b }) = (&labels[u], &labels[v])
            else {
                unreachable!()
            };
            if i != j {
                let s = if a[*j] * b[*i] == 1 { Sign::Pos } else { Sign::Neg };
                g.set_edge(u, v, Some(s))?;
            }
        }
    }
    Ok(LabelledTarget { graph: g, labels, field: None, symmetry: TargetSymmetry::None })
}

pub const SUPPORTED_Q: [u32; 4] = [5, 9, 13, 25];

fn paley_field(q: u32) -> Result<FieldSpec> {
    if !SUPPORTED_Q.contains(&q) {
        return arg(format!("unsupported q = {q}; expected one of {SUPPORTED_Q:?}"));
    }
    FieldSpec::with_order(q)
}

/// The signified Paley graph SP_q: K_q on GF(q), xy positive iff y − x is a square.
pub fn build_sp(q: u32) -> Result<LabelledTarget> {
    let field = paley_field(q)?;
    let n = q as usize;
    let mut g = SignifiedGraph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            let d = field.sub(field.from_index(v), field.from_index(u));
            g.set_edge(u, v, Some(field.square_sign(d)?))?;
        }
    }
    let labels = field.elements().map(VertexLabel::Field).collect();
    let symmetry = TargetSymmetry::EdgeTransitive { pos: (0, 1), neg: (0, field.index(field.first_nonsquare())) };
    Ok(LabelledTarget { graph: g, labels, field: Some(field), symmetry })
}

/// Tr(SP_q) on 2q + 2 vertices, from the closed-form sign rules:
/// `u_i v_j ↦ sq(u − v)·(−1)^(i+j)` and `∞_i v_j ↦ (−1)^(i+j)`.
pub fn build_tromp(q: u32) -> Result<LabelledTarget> {
    let field = paley_field(q)?;
    let qn = q as usize;
    let stride = qn + 1;
    let mut g = SignifiedGraph::empty(2 * stride);
    for i in 0..2 {
        for j in 0..2 {
            let parity = Sign::parity(i + j);
            for u in 0..qn {
                for v in 0..qn {
                    if u != v {
                        let d = field.sub(field.from_index(u), field.from_index(v));
                        g.set_edge(u + i * stride, v + j * stride, Some(field.square_sign(d)? * parity))?;
                    }
                }
                g.set_edge(qn + i * stride, u + j * stride, Some(parity))?;
            }
        }
    }
    let sp = build_sp(q)?;
    let composed = sp.plus().anti_twinned();
    debug_assert_eq!(composed.graph, g, "closed form disagrees with AT(SP_q⁺)");
    Ok(LabelledTarget {
        graph: g,
        labels: composed.labels,
        field: Some(field),
        // (0₀, 1₀) is positive and (0₀, 1₁) negative
        symmetry: TargetSymmetry::EdgeTransitive { pos: (0, 1), neg: (0, stride + 1) },
    })
}

/// K₄ with the single negative edge {0, 1}.
pub fn build_k4star() -> SignifiedGraph {
    let mut g = SignifiedGraph::empty(4);
    for u in 0..4 {
        for v in (u + 1)..4 {
            let s = if (u, v) == (0, 1) { Sign::Neg } else { Sign::Pos };
            g.set_edge(u, v, Some(s)).expect("in range");
        }
    }
    g
}

/// Resolves a CLI target name: `at-k4star`, `k4star`, `zs-K`, `sp-Q`,
/// `sp-Q-plus`, `tromp-Q`, `at-sp-Q`.
pub fn by_name(name: &str) -> Result<LabelledTarget> {
    let num = |s: &str| -> Result<u32> { s.parse().map_err(|_| crate::Error::Argument(format!("bad number in target name {name:?}"))) };
    if name == "k4star" {
        return Ok(LabelledTarget::plain(build_k4star()));
    }
    if name == "at-k4star" {
        return Ok(build_at(&build_k4star()));
    }
    if let Some(k) = name.strip_prefix("zs-") {
        return build_zs(num(k)? as usize);
    }
    if let Some(q) = name.strip_prefix("at-sp-") {
        return Ok(build_sp(num(q)?)?.anti_twinned());
    }
    if let Some(q) = name.strip_prefix("tromp-") {
        return build_tromp(num(q)?);
    }
    if let Some(q) = name.strip_prefix("tromp") {
        return build_tromp(num(q)?);
    }
    if let Some(rest) = name.strip_prefix("sp-") {
        if let Some(q) = rest.strip_suffix("-plus") {
            return Ok(build_sp(num(q)?)?.plus());
        }
        return build_sp(num(rest)?);
    }
    arg(format!("unknown target {name:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn at_of_single_edge_is_alternating_square() {
        let e = SignifiedGraph::from_edges(2, &[(0, 1, Sign::Pos)]).unwrap();
        let at = build_at(&e);
        assert_eq!(at.n(), 4);
        // u0 v0 u1 v1 = 0 1 2 3
        let walk = [(0, 1), (1, 2), (2, 3), (3, 0)];
        let signs: Vec<Sign> = walk.iter().map(|&(a, b)| at.sign(a, b).unwrap()).collect();
        assert_eq!(signs, vec![Sign::Pos, Sign::Neg, Sign::Pos, Sign::Neg]);
        assert!(!at.adjacent(0, 2) && !at.adjacent(1, 3));
    }

    #[test]
    fn at_pairs_copies() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        for n in 1..=7 {
            for _ in 0..5 {
                let g = oracle::random_graph(&mut rng, n, 0.5);
                let at = build_at(&g);
                assert_eq!(at.n(), 2 * n);
                let atw = at.anti_twin_pairing().expect("AT graphs are anti-twinned");
                for u in 0..2 * n {
                    let v = atw.image(u);
                    assert_ne!(u, v);
                    assert_eq!(atw.image(v), u);
                    for w in 0..2 * n {
                        assert_eq!(at.sign(u, w).map(|s| -s), at.sign(v, w));
                    }
                }
                // where the anti-twin is unique it must be the other copy
                for u in 0..n {
                    let unique = (0..2 * n).filter(|&v| at.pos_row(v) == at.neg_row(u) && at.neg_row(v) == at.pos_row(u)).count() == 1;
                    if unique {
                        assert_eq!(atw.image(u), u + n);
                    }
                }
            }
        }
    }

    #[test]
    fn plus_examples() {
        assert_eq!(build_plus(&SignifiedGraph::empty(0)).n(), 1);
        let sp9 = build_sp(9).unwrap();
        let p = build_plus(&sp9);
        assert_eq!(p.n(), 10);
        assert!(p.is_complete());
        assert_eq!(p.pos_degree(9), 9);
        assert_eq!(p.neg_degree(9), 0);
    }

    #[test]
    fn zielonka() {
        assert!(build_zs(1).is_err());
        let zs2 = build_zs(2).unwrap();
        assert_eq!(zs2.n(), 4);
        // class 1 = {0, 1}, class 2 = {2, 3}: complete bipartite between classes
        for u in 0..2 {
            for v in 2..4 {
                assert!(zs2.adjacent(u, v));
            }
        }
        assert!(!zs2.adjacent(0, 1) && !zs2.adjacent(2, 3));
        assert_eq!(build_zs(5).unwrap().n(), 80);
        let zs3 = build_zs(3).unwrap();
        for u in 0..zs3.n() {
            for v in 0..zs3.n() {
                if let (VertexLabel::Zielonka { class: i, .. }, VertexLabel::Zielonka { class: j, .. }) = (&zs3.labels[u], &zs3.labels[v]) {
                    if i == j {
                        assert!(!zs3.adjacent(u, v));
                    }
                }
            }
        }
        assert_eq!(zs3.label_string(0), "(1;0,+,+)");
    }

    #[test]
    fn paley_five() {
        let sp5 = build_sp(5).unwrap();
        let pos: Vec<(usize, usize)> = sp5.edges().filter(|e| e.2 == Sign::Pos).map(|e| (e.0, e.1)).collect();
        assert_eq!(pos, vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(sp5.negative_edge_count(), 5);
        assert!(build_sp(7).is_err());
        assert!(build_sp(17).is_err());
    }

    #[test]
    fn paley_degrees_and_symmetric_signs() {
        for q in SUPPORTED_Q {
            let sp = build_sp(q).unwrap();
            let f = sp.field.as_ref().unwrap();
            for u in 0..q as usize {
                assert_eq!(sp.pos_degree(u), (q as usize - 1) / 2);
                for v in 0..q as usize {
                    if u != v {
                        let (x, y) = (f.from_index(u), f.from_index(v));
                        assert_eq!(f.chi(f.sub(x, y)), f.chi(f.sub(y, x)));
                    }
                }
            }
        }
    }

    #[test]
    fn tromp_shape() {
        assert_eq!(build_tromp(9).unwrap().n(), 20);
        for q in [5, 9, 25] {
            let tr = build_tromp(q).unwrap();
            let composed = build_at(&build_plus(&build_sp(q).unwrap()));
            assert_eq!(tr.graph, composed.graph);
            let stride = q as usize + 1;
            for u in 0..tr.n() {
                assert_eq!(tr.pos_degree(u), q as usize);
                assert_eq!(tr.neg_degree(u), q as usize);
                let twin = (u + stride) % (2 * stride);
                assert!(!tr.adjacent(u, twin));
                for v in 0..tr.n() {
                    let tv = (v + stride) % (2 * stride);
                    assert_eq!(tr.sign(u, v), tr.sign(twin, tv));
                }
            }
            assert_eq!(tr.label_string(q as usize), "∞_0");
            assert_eq!(tr.label_string(2 * stride - 1), "∞_1");
        }
    }

    #[test]
    fn k4star() {
        let k = build_k4star();
        assert_eq!((k.n(), k.edge_count(), k.negative_edge_count()), (4, 6, 1));
        let pairs: Vec<(usize, usize)> = k.edges().map(|e| (e.0, e.1)).collect();
        for &(a, b) in &pairs {
            let mut alt = k.all_positive();
            alt.set_edge(a, b, Some(Sign::Neg)).unwrap();
            assert!(oracle::brute_force_iso(&k, &alt).is_some());
        }
        let at = build_at(&k);
        assert_eq!(at.n(), 8);
        assert!((0..8).all(|u| at.degree(u) == 6));
        assert_eq!(at.anti_twin_pairing().unwrap().0, vec![4, 5, 6, 7, 0, 1, 2, 3]);
    }

    #[test]
    fn labels_and_names() {
        let at25 = build_sp(25).unwrap().anti_twinned();
        let f = at25.field.clone().unwrap();
        let v = at25.field_vertex(f.elem(1, 2).unwrap(), 1).unwrap();
        assert_eq!(v, 25 + 11);
        assert_eq!(at25.label_string(v), "(1+2√2)_1");
        assert_eq!(at25.label_string(2), "2_0");
        assert_eq!(at25.label_string(10), "(2√2)_0");
        assert_eq!(by_name("at-sp-25").unwrap().n(), 50);
        assert_eq!(by_name("tromp-9").unwrap().n(), 20);
        assert_eq!(by_name("zs-3").unwrap().n(), 12);
        assert_eq!(by_name("at-k4star").unwrap().n(), 8);
        assert_eq!(by_name("sp-9-plus").unwrap().n(), 10);
        assert!(by_name("nope").is_err());
    }
}
