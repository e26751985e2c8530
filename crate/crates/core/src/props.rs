//! Structural verifiers: α-successors and the properties P(n, k),
//! automorphism certificates and orbits for Tr(SP_q), strong regularity,
//! the four-successor triple scan on AT(SP₂₅) and signed path patterns.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits;
use crate::error::{arg, Error, Result};
use crate::exec::Exec;
use crate::gf::FieldElem;
use crate::sgraph::{Mapping, Sign, SignifiedGraph};
use crate::targets::{build_sp, LabelledTarget};

/// A signed vector α ∈ {+1, −1}^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// ᾱ: every entry negated.
    pub fn conjugate(&self) -> SignVector {
        SignVector(self.0.iter().map(|&s| -s).collect())
    }

    /// Entry i is `−` iff bit i of `mask` is set.
    pub fn from_mask(len: usize, mask: u64) -> SignVector {
        SignVector((0..len).map(|i| if mask >> i & 1 == 1 { Sign::Neg } else { Sign::Pos }).collect())
    }

    /// All 2^len vectors, in mask order.
    pub fn all(len: usize) -> impl Iterator<Item = SignVector> {
        (0u64..1 << len).map(move |m| SignVector::from_mask(len, m))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if *s == Sign::Pos { "+1" } else { "-1" })?;
        }
        f.write_str(")")
    }
}

/// Accepts `+-+`, `+,-,+` or `(+1,-1,+1)`.
impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut out = Vec::new();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "+" | "+1" | "1" => out.push(Sign::Pos),
                "-" | "-1" => out.push(Sign::Neg),
                _ if tok.chars().all(|c| c == '+' || c == '-') => {
                    out.extend(tok.chars().map(|c| if c == '+' { Sign::Pos } else { Sign::Neg }))
                }
                _ => return arg(format!("bad sign vector {s:?}")),
            }
        }
        if out.is_empty() {
            return arg("empty sign vector");
        }
        Ok(SignVector(out))
    }
}

fn check_clique(h: &SignifiedGraph, x: &[usize]) -> Result<()> {
    for (i, &u) in x.iter().enumerate() {
        h.check_vertex(u)?;
        for &v in &x[..i] {
            if !h.adjacent(u, v) {
                return arg(format!("sequence {x:?} is not a clique ({v} and {u} are not adjacent)"));
            }
        }
    }
    Ok(())
}

/// S^α(X): vertices outside X joined to each `x_i` with sign `α_i`.
pub fn alpha_successors(h: &SignifiedGraph, x: &[usize], alpha: &SignVector) -> Result<Vec<usize>> {
    if x.len() != alpha.len() {
        return arg(format!("sequence has {} vertices but α has {} entries", x.len(), alpha.len()));
    }
    check_clique(h, x)?;
    let mut row = vec![0u64; h.words()];
    bits::fill(&mut row, h.n());
    for (&v, &s) in x.iter().zip(&alpha.0) {
        bits::and_assign(&mut row, h.row(v, s));
    }
    Ok(bits::to_vec(&row))
}

/// A clique sequence and sign vector with too few successors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyWitness {
    pub sequence: Vec<usize>,
    pub alpha: SignVector,
    pub successors: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub n: usize,
    pub k: usize,
    pub holds: bool,
    /// The first deficient (sequence, α) in enumeration order.
    pub witness: Option<PropertyWitness>,
    /// Smallest successor count over all sequences and vectors; `None` when
    /// there is no clique sequence of length n.
    pub min_successors: Option<usize>,
    /// Number of ordered clique sequences examined.
    pub sequences: u64,
}

#[derive(Default)]
struct Scan {
    min: Option<usize>,
    witness: Option<PropertyWitness>,
    sequences: u64,
}

impl Scan {
    fn merge(&mut self, other: Scan) {
        self.sequences += other.sequences;
        self.min = match (self.min, other.min) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }
}

struct PropertyScan<'a> {
    h: &'a SignifiedGraph,
    n: usize,
    k: usize,
}

impl PropertyScan<'_> {
    /// `rows[m]` is the intersection for α-prefix mask `m`; `common` holds
    /// the vertices adjacent to the whole prefix.
    fn extend(&self, seq: &mut Vec<usize>, rows: &[Vec<u64>], common: &[u64], out: &mut Scan) {
        if seq.len() == self.n {
            out.sequences += 1;
            for (mask, row) in rows.iter().enumerate() {
                let c = bits::count(row);
                out.min = Some(out.min.map_or(c, |m| m.min(c)));
                if c < self.k && out.witness.is_none() {
                    out.witness = Some(PropertyWitness {
                        sequence: seq.clone(),
                        alpha: SignVector::from_mask(self.n, mask as u64),
                        successors: bits::to_vec(row),
                    });
                }
            }
            return;
        }
        for v in bits::ones(common).collect::<Vec<_>>() {
            self.push(seq, rows, common, v, out);
        }
    }

    fn push(&self, seq: &mut Vec<usize>, rows: &[Vec<u64>], common: &[u64], v: usize, out: &mut Scan) {
        let d = seq.len();
        let mut next = vec![Vec::new(); rows.len() * 2];
        for (mask, row) in rows.iter().enumerate() {
            for s in [Sign::Pos, Sign::Neg] {
                let mut r = row.clone();
                bits::and_assign(&mut r, self.h.row(v, s));
                let bit = if s == Sign::Neg { 1 << d } else { 0 };
                next[mask | bit] = r;
            }
        }
        let mut c = common.to_vec();
        let mut adj = self.h.pos_row(v).to_vec();
        for (a, b) in adj.iter_mut().zip(self.h.neg_row(v)) {
            *a |= b;
        }
        bits::and_assign(&mut c, &adj);
        seq.push(v);
        self.extend(seq, &next, &c, out);
        seq.pop();
    }
}

/// Decides P(n, k) exhaustively: every ordered clique sequence of n distinct
/// vertices and every α ∈ {±1}^n has at least k α-successors.
pub fn check_property(h: &SignifiedGraph, n: usize, k: usize, exec: Exec) -> PropertyReport {
    let scan = PropertyScan { h, n, k };
    let mut full = vec![0u64; h.words()];
    bits::fill(&mut full, h.n());
    let total = if n == 0 {
        let mut s = Scan::default();
        scan.extend(&mut Vec::new(), &[full], &[], &mut s);
        s
    } else {
        let verts: Vec<usize> = (0..h.n()).collect();
        let parts = exec.map(&verts, |&v| {
            let mut s = Scan::default();
            scan.push(&mut Vec::with_capacity(n), std::slice::from_ref(&full), &full, v, &mut s);
            s
        });
        parts.into_iter().fold(Scan::default(), |mut acc, s| {
            acc.merge(s);
            acc
        })
    };
    PropertyReport { n, k, holds: total.witness.is_none(), witness: total.witness, min_successors: total.min, sequences: total.sequences }
}

fn check_bijection(h: &SignifiedGraph, sigma: &Mapping) -> Result<()> {
    if !sigma.is_permutation_of(h.n()) {
        return arg(format!("mapping is not a permutation of {} vertices", h.n()));
    }
    Ok(())
}

/// True iff σ preserves adjacency and signs.
pub fn verify_automorphism(h: &SignifiedGraph, sigma: &Mapping) -> Result<bool> {
    check_bijection(h, sigma)?;
    Ok(h.edges().all(|(u, v, s)| h.sign(sigma.image(u), sigma.image(v)) == Some(s)))
}

/// True iff ρ maps every edge onto an edge of the opposite sign.
pub fn verify_anti_automorphism(h: &SignifiedGraph, rho: &Mapping) -> Result<bool> {
    check_bijection(h, rho)?;
    Ok(h.edges().all(|(u, v, s)| h.sign(rho.image(u), rho.image(v)) == Some(-s)))
}

/// Vertex indexing of Tr(SP_q): finite `u_i` and `∞_i`.
struct TrompIndex {
    q: usize,
}

impl TrompIndex {
    fn finite(&self, u: usize, i: usize) -> usize {
        u + i * (self.q + 1)
    }

    fn infinity(&self, i: usize) -> usize {
        self.q + i * (self.q + 1)
    }

    /// `(Some(u), i)` for finite vertices, `(None, i)` for ∞_i.
    fn split(&self, v: usize) -> (Option<usize>, usize) {
        let (i, u) = (v / (self.q + 1), v % (self.q + 1));
        ((u < self.q).then_some(u), i)
    }

    fn map(&self, f: impl Fn(Option<usize>, usize) -> usize) -> Mapping {
        Mapping(
            (0..2 * (self.q + 1))
                .map(|v| {
                    let (u, i) = self.split(v);
                    f(u, i)
                })
                .collect(),
        )
    }
}

fn tromp_parts(t: &LabelledTarget) -> Result<(&crate::gf::FieldSpec, TrompIndex)> {
    let Some(field) = t.field.as_ref() else {
        return arg("target carries no field labels");
    };
    let q = field.order() as usize;
    if t.n() != 2 * q + 2 {
        return arg(format!("expected Tr(SP_{q}) with {} vertices, got {}", 2 * q + 2, t.n()));
    }
    Ok((field, TrompIndex { q }))
}

/// Named generators of the automorphism group used for Tr(SP_q): γ₁, γ₃,
/// the translations u ↦ u + b, the square scalings u ↦ a·u and the
/// Frobenius map x ↦ x^p (omitted for prime q, where it is the identity).
pub fn tromp_generators(t: &LabelledTarget) -> Result<Vec<(String, Mapping)>> {
    let (field, ix) = tromp_parts(t)?;
    let mut gens = Vec::new();
    gens.push((
        "gamma1".to_string(),
        ix.map(|u, i| match u {
            Some(u) => ix.finite(u, 1 - i),
            None => ix.infinity(1 - i),
        }),
    ));
    let mut gamma3 = Vec::with_capacity(t.n());
    for v in 0..t.n() {
        gamma3.push(match ix.split(v) {
            (None, i) => ix.finite(0, i),
            (Some(0), i) => ix.infinity(i),
            (Some(u), i) => {
                let x = field.from_index(u);
                let inv = field.index(field.inv(x)?);
                if field.is_square(x) {
                    ix.finite(inv, i)
                } else {
                    ix.finite(inv, 1 - i)
                }
            }
        });
    }
    gens.push(("gamma3".to_string(), Mapping(gamma3)));
    for b in field.elements().filter(|b| !b.is_zero()) {
        gens.push((format!("translate({})", field.label(b)), affine(field, &ix, field.elem(1, 0)?, b)));
    }
    for a in field.elements().filter(|&a| !a.is_zero() && field.is_square(a) && a != field.elem(1, 0).expect("1")) {
        gens.push((format!("scale({})", field.label(a)), affine(field, &ix, a, field.elem(0, 0)?)));
    }
    if field.k() == 2 {
        gens.push((
            "frobenius".to_string(),
            ix.map(|u, i| match u {
                Some(u) => ix.finite(field.index(field.frobenius(field.from_index(u))), i),
                None => ix.infinity(i),
            }),
        ));
    }
    Ok(gens)
}

fn affine(field: &crate::gf::FieldSpec, ix: &TrompIndex, a: FieldElem, b: FieldElem) -> Mapping {
    ix.map(|u, i| match u {
        Some(u) => ix.finite(field.index(field.add(field.mul(a, field.from_index(u)), b)), i),
        None => ix.infinity(i),
    })
}

/// γ_n: u_i ↦ (n·u)_{1−i}, ∞_i fixed; an anti-automorphism when n is a non-square.
pub fn gamma_n(t: &LabelledTarget, n: FieldElem) -> Result<Mapping> {
    let (field, ix) = tromp_parts(t)?;
    if n.is_zero() {
        return Err(Error::Domain("γ_n needs n ≠ 0".into()));
    }
    Ok(ix.map(|u, i| match u {
        Some(u) => ix.finite(field.index(field.mul(n, field.from_index(u))), 1 - i),
        None => ix.infinity(i),
    }))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes<T>(&mut self, items: impl Iterator<Item = (usize, T)>) -> Vec<Vec<T>> {
        let mut by_root: std::collections::BTreeMap<usize, Vec<T>> = Default::default();
        for (key, item) in items {
            let r = self.find(key);
            by_root.entry(r).or_default().push(item);
        }
        by_root.into_values().collect()
    }
}

/// Orbits of the group generated by a set of automorphisms.
#[derive(Clone, Debug, Serialize)]
pub struct Orbits {
    pub vertices: Vec<Vec<usize>>,
    pub ordered_edges: Vec<Vec<(usize, usize)>>,
    pub ordered_triangles: Vec<Vec<[usize; 3]>>,
}

/// Orbits on vertices, ordered edges and ordered triangles. The orbits of a
/// generated group are the connected components of the Schreier graph, so
/// each element is joined to its image under every generator.
pub fn orbit_closure(h: &SignifiedGraph, generators: &[Mapping]) -> Result<Orbits> {
    for (i, g) in generators.iter().enumerate() {
        if !verify_automorphism(h, g)? {
            return arg(format!("generator {i} is not an automorphism"));
        }
    }
    let n = h.n();
    let mut uf = UnionFind::new(n);
    for g in generators {
        for v in 0..n {
            uf.union(v, g.image(v));
        }
    }
    let vertices = uf.classes((0..n).map(|v| (v, v)));

    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| h.adjacent(u, v)).map(move |v| (u, v))).collect();
    let mut uf = UnionFind::new(n * n);
    for g in generators {
        for &(u, v) in &edges {
            uf.union(u * n + v, g.image(u) * n + g.image(v));
        }
    }
    let ordered_edges = uf.classes(edges.iter().map(|&(u, v)| (u * n + v, (u, v))));

    let mut triangles = Vec::new();
    for &(u, v) in &edges {
        for w in 0..n {
            if h.adjacent(u, w) && h.adjacent(v, w) {
                triangles.push([u, v, w]);
            }
        }
    }
    let key = |t: [usize; 3]| (t[0] * n + t[1]) * n + t[2];
    let mut uf = UnionFind::new(n * n * n);
    for g in generators {
        for &t in &triangles {
            uf.union(key(t), key(t.map(|x| g.image(x))));
        }
    }
    let ordered_triangles = uf.classes(triangles.iter().map(|&t| (key(t), t)));
    Ok(Orbits { vertices, ordered_edges, ordered_triangles })
}

/// Sign pattern (uv, vw, uw) of an ordered triangle.
pub fn triangle_pattern(h: &SignifiedGraph, t: [usize; 3]) -> [Sign; 3] {
    let s = |a, b| h.sign(a, b).expect("triangle edge");
    [s(t[0], t[1]), s(t[1], t[2]), s(t[0], t[2])]
}

/// Searches for an automorphism with `σ(from[i]) = to[i]`, by plain
/// backtracking on sign-consistent partial bijections. Independent of the
/// generator machinery; used as a cross-check on small graphs.
pub fn find_automorphism(h: &SignifiedGraph, from: &[usize], to: &[usize]) -> Option<Mapping> {
    let n = h.n();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for (&a, &b) in from.iter().zip(to) {
        if img[a] != usize::MAX || used[b] {
            return None;
        }
        img[a] = b;
        used[b] = true;
    }
    let placed: Vec<usize> = from.to_vec();
    for (i, &a) in placed.iter().enumerate() {
        for &c in &placed[..i] {
            if h.sign(a, c) != h.sign(img[a], img[c]) {
                return None;
            }
        }
    }
    fn go(h: &SignifiedGraph, v: usize, img: &mut [usize], used: &mut [bool]) -> bool {
        let n = h.n();
        if v == n {
            return true;
        }
        if img[v] != usize::MAX {
            return go(h, v + 1, img, used);
        }
        for c in 0..n {
            if used[c] || h.degree(c) != h.degree(v) || h.pos_degree(c) != h.pos_degree(v) {
                continue;
            }
            let ok = (0..n).all(|u| img[u] == usize::MAX || u == v || h.sign(u, v) == h.sign(img[u], c));
            if ok {
                img[v] = c;
                used[c] = true;
                if go(h, v + 1, img, used) {
                    return true;
                }
                img[v] = usize::MAX;
                used[c] = false;
            }
        }
        false
    }
    go(h, 0, &mut img, &mut used).then_some(Mapping(img))
}

/// Parameters (n, k, λ, μ) of the graph formed by the edges of one sign, if
/// it is strongly regular.
pub fn srg_parameters(h: &SignifiedGraph, sign: Sign) -> Option<(usize, usize, usize, usize)> {
    let n = h.n();
    let k = (0..n).map(|v| bits::count(h.row(v, sign))).collect::<Vec<_>>();
    if n == 0 || k.iter().any(|&d| d != k[0]) {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    for u in 0..n {
        for v in (u + 1)..n {
            let common = h.row(u, sign).iter().zip(h.row(v, sign)).map(|(a, b)| (a & b).count_ones() as usize).sum::<usize>();
            let slot = if h.sign(u, v) == Some(sign) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(c) if c != common => return None,
                _ => {}
            }
        }
    }
    Some((n, k[0], lambda.unwrap_or(0), mu.unwrap_or(0)))
}

/// One row of the four-successor triple scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub triple: [usize; 3],
    pub successors: Vec<usize>,
}

/// Reference rendering of the scan; see [`table1_text`].
pub const TABLE1_GOLDEN: &str = include_str!("../data/table1.golden");

/// All x with (0₀, 1₀, x₀) a clique of AT(SP₂₅) whose (+1,+1,+1)-successor
/// set has exactly four elements, in vertex order.
pub fn table1_scan() -> Result<(LabelledTarget, Vec<Table1Row>)> {
    let at = build_sp(25)?.anti_twinned();
    let alpha = SignVector(vec![Sign::Pos; 3]);
    let mut rows = Vec::new();
    for x in 2..25 {
        let triple = [0, 1, x];
        if check_clique(&at, &triple).is_err() {
            continue;
        }
        let succ = alpha_successors(&at, &triple, &alpha)?;
        if succ.len() == 4 {
            rows.push(Table1Row { triple, successors: succ });
        }
    }
    Ok((at, rows))
}

/// Text form of the scan: `(0_0,1_0,x_0) : s1, s2, s3, s4` per row.
pub fn table1_text(at: &LabelledTarget, rows: &[Table1Row]) -> String {
    let mut out = String::new();
    for r in rows {
        let triple: Vec<String> = r.triple.iter().map(|&v| at.label_string(v)).collect();
        let succ: Vec<String> = r.successors.iter().map(|&v| at.label_string(v)).collect();
        out.push_str(&format!("({}) : {}\n", triple.join(","), succ.join(", ")));
    }
    out
}

/// A walk pattern that cannot be realised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathPatternGap {
    pub from: usize,
    pub to: usize,
    pub signs: SignVector,
}

/// First (x, s, y) with no walk x → y whose i-th edge has sign s_i.
pub fn path_pattern_gap(h: &SignifiedGraph, len: usize) -> Option<PathPatternGap> {
    let n = h.n();
    let w = h.words();
    for x in 0..n {
        for signs in SignVector::all(len) {
            let mut reach = vec![0u64; w];
            bits::set(&mut reach, x);
            for &s in &signs.0 {
                let mut next = vec![0u64; w];
                for r in bits::ones(&reach) {
                    for (a, b) in next.iter_mut().zip(h.row(r, s)) {
                        *a |= b;
                    }
                }
                reach = next;
            }
            if let Some(to) = (0..n).find(|&y| !bits::test(&reach, y)) {
                return Some(PathPatternGap { from: x, to, signs });
            }
        }
    }
    None
}

/// True iff every ordered pair (x, y), not necessarily distinct, is joined
/// by a walk of every sign pattern of length `len`.
pub fn path_pattern_check(h: &SignifiedGraph, len: usize) -> bool {
    path_pattern_gap(h, len).is_none()
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::oracle;
    use crate::targets::{build_at, build_k4star, build_plus, build_tromp, build_zs};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn sign_vector_parsing() {
        assert_eq!(sv("+-"), sv("(+1,-1)"));
        assert_eq!(sv("+,-,+").conjugate(), sv("-+-"));
        assert_eq!(sv("+-+").to_string(), "(+1,-1,+1)");
        assert!("".parse::<SignVector>().is_err());
        assert!("+x".parse::<SignVector>().is_err());
        assert_eq!(SignVector::all(3).count(), 8);
    }

    #[test]
    fn successors_in_sp5() {
        let sp5 = build_sp(5).unwrap();
        assert_eq!(alpha_successors(&sp5, &[0, 3], &sv("+-")).unwrap(), vec![1]);
        assert_eq!(alpha_successors(&sp5, &[0, 3], &sv("-+")).unwrap(), vec![2]);
        assert!(alpha_successors(&sp5, &[0], &sv("+-")).is_err());
        let c4 = build_at(&SignifiedGraph::from_edges(2, &[(0, 1, Sign::Pos)]).unwrap());
        assert!(alpha_successors(&c4, &[0, 2], &sv("++")).is_err());
    }

    #[test]
    fn conjugate_successors_are_anti_twins() {
        let targets = [build_sp(5).unwrap().anti_twinned(), build_tromp(5).unwrap(), build_zs(3).unwrap(), build_tromp(9).unwrap()];
        for t in &targets {
            let atw = t.anti_twin_pairing().expect("anti-twinned");
            for x in 0..t.n() {
                for y in t.neighbors(x).map(|(y, _)| y) {
                    for z in t.neighbors(y).map(|(z, _)| z).filter(|&z| t.adjacent(x, z)) {
                        for a in SignVector::all(3) {
                            let s = alpha_successors(t, &[x, y, z], &a).unwrap();
                            let mut mapped: Vec<usize> = s.iter().map(|&v| atw.image(v)).collect();
                            mapped.sort_unstable();
                            assert_eq!(alpha_successors(t, &[x, y, z], &a.conjugate()).unwrap(), mapped);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn property_matches_naive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let h = oracle::random_graph(&mut rng, 8, 0.7);
            for n in 1..=3 {
                let mut min: Option<usize> = None;
                let mut count = 0;
                let verts: Vec<usize> = (0..8).collect();
                for &a in &verts {
                    for &b in &verts {
                        for &c in &verts {
                            let x: Vec<usize> = [a, b, c][..n].to_vec();
                            let distinct = (0..n).all(|i| (0..i).all(|j| x[i] != x[j]));
                            if !distinct || check_clique(&h, &x).is_err() || (n < 3 && c != 0) || (n < 2 && b != 0) {
                                continue;
                            }
                            count += 1;
                            for al in SignVector::all(n) {
                                let s = alpha_successors(&h, &x, &al).unwrap().len();
                                min = Some(min.map_or(s, |m| m.min(s)));
                            }
                        }
                    }
                }
                for exec in [Exec::Sequential, Exec::Parallel] {
                    let r = check_property(&h, n, 2, exec);
                    assert_eq!(r.min_successors, min);
                    assert_eq!(r.sequences, count);
                    assert_eq!(r.holds, min.is_none_or(|m| m >= 2));
                    if let Some(w) = r.witness {
                        assert_eq!(alpha_successors(&h, &w.sequence, &w.alpha).unwrap(), w.successors);
                        assert!(w.successors.len() < 2);
                    }
                }
            }
        }
    }

    #[test]
    fn successor_counts_small_fields() {
        for q in [5u32, 9] {
            let sp = build_sp(q).unwrap();
            let tr = build_tromp(q).unwrap();
            let at = sp.anti_twinned();
            let qq = q as usize;
            assert!(check_property(&sp, 1, (qq - 1) / 2, Exec::Parallel).holds);
            assert!(check_property(&sp, 2, (qq - 5) / 4, Exec::Parallel).holds);
            assert!(check_property(&tr, 1, qq, Exec::Parallel).holds);
            assert!(check_property(&tr, 2, (qq - 1) / 2, Exec::Parallel).holds);
            assert!(check_property(&tr, 3, (qq - 5) / 4, Exec::Parallel).holds);
            assert!(check_property(&at, 1, qq - 1, Exec::Parallel).holds);
            assert!(check_property(&at, 2, (qq - 3) / 2, Exec::Parallel).holds);
            // tightness
            assert!(!check_property(&sp, 2, (qq - 5) / 4 + 1, Exec::Parallel).holds);
            assert!(!check_property(&tr, 1, qq + 1, Exec::Parallel).holds);
        }
    }

    #[test]
    fn successor_counts_chain() {
        for q in [5u32, 9] {
            let sp = build_sp(q).unwrap();
            let tr = build_tromp(q).unwrap();
            for n in 2..=3 {
                for k in 0..=q as usize {
                    if check_property(&sp, n - 1, k, Exec::Parallel).holds {
                        assert!(check_property(&tr, n, k, Exec::Parallel).holds, "q={q} n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn double_tromp_lemma() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let g = oracle::random_graph(&mut rng, 6, 0.8);
            let tr = build_at(&build_plus(&g));
            let at = build_at(&g);
            for n in 1..=3 {
                let Some(k) = check_property(&tr, n, 0, Exec::Sequential).min_successors else { continue };
                if k >= 1 {
                    assert!(check_property(&at, n, k - 1, Exec::Sequential).holds);
                }
            }
        }
    }

    #[test]
    fn strong_regularity() {
        for q in [5u32, 9, 13, 25] {
            let sp = build_sp(q).unwrap();
            let qq = q as usize;
            assert_eq!(srg_parameters(&sp, Sign::Pos), Some((qq, (qq - 1) / 2, (qq - 5) / 4, (qq - 1) / 4)));
        }
        assert_eq!(srg_parameters(&build_k4star(), Sign::Pos), None);
    }

    #[test]
    fn tromp_generators_are_automorphisms() {
        for q in [5u32, 9, 25] {
            let t = build_tromp(q).unwrap();
            let gens = tromp_generators(&t).unwrap();
            for (name, g) in &gens {
                assert!(verify_automorphism(&t, g).unwrap(), "{name} on Tr(SP_{q})");
            }
            let field = t.field.as_ref().unwrap();
            for n in field.elements().filter(|&x| !x.is_zero() && !field.is_square(x)) {
                let rho = gamma_n(&t, n).unwrap();
                assert!(verify_anti_automorphism(&t, &rho).unwrap());
                assert!(!verify_automorphism(&t, &rho).unwrap());
                assert!(verify_automorphism(&t, &rho.then(&rho)).unwrap());
            }
            let one = field.elem(1, 0).unwrap();
            assert!(!verify_anti_automorphism(&t, &gamma_n(&t, one).unwrap()).unwrap());
            assert!(!verify_anti_automorphism(&t, &Mapping::identity(t.n())).unwrap());
        }
    }

    #[test]
    fn bad_permutations_rejected() {
        let sp5 = build_sp(5).unwrap();
        assert!(verify_automorphism(&sp5, &Mapping(vec![0, 0, 1, 2, 3])).is_err());
        // 0 and 1 have different positive neighborhoods
        assert!(!verify_automorphism(&sp5, &Mapping(vec![1, 0, 2, 3, 4])).unwrap());
        assert!(orbit_closure(&sp5, &[Mapping(vec![1, 0, 2, 3, 4])]).is_err());
    }

    #[test]
    fn tromp_orbits() {
        for q in [5u32, 9] {
            let t = build_tromp(q).unwrap();
            let gens: Vec<Mapping> = tromp_generators(&t).unwrap().into_iter().map(|(_, g)| g).collect();
            let orbits = orbit_closure(&t, &gens).unwrap();
            assert_eq!(orbits.vertices.len(), 1);
            assert_eq!(orbits.vertices[0].len(), 2 * q as usize + 2);
            // one orbit per sign on ordered edges
            assert_eq!(orbits.ordered_edges.len(), 2);
            assert_eq!(orbits.ordered_triangles.len(), 8);
            for orbit in &orbits.ordered_triangles {
                let p = triangle_pattern(&t, orbit[0]);
                assert!(orbit.iter().all(|&tri| triangle_pattern(&t, tri) == p));
            }
        }
    }

    #[test]
    fn sp5_edge_orbits() {
        let sp = build_sp(5).unwrap();
        let f = sp.field.as_ref().unwrap();
        let mut gens = Vec::new();
        for b in 0..5 {
            gens.push(Mapping((0..5).map(|u| (u + b) % 5).collect()));
        }
        for a in f.elements().filter(|&a| !a.is_zero() && f.is_square(a)) {
            gens.push(Mapping((0..5).map(|u| f.index(f.mul(a, f.from_index(u)))).collect()));
        }
        let orbits = orbit_closure(&sp, &gens).unwrap();
        let pos_orbits: Vec<_> = orbits.ordered_edges.iter().filter(|o| sp.sign(o[0].0, o[0].1) == Some(Sign::Pos)).collect();
        assert_eq!(pos_orbits.len(), 1);
        assert_eq!(pos_orbits[0].len(), 10);
    }

    #[test]
    fn generic_search_agrees_on_orbits() {
        let t = build_tromp(5).unwrap();
        for v in 0..t.n() {
            let sigma = find_automorphism(&t, &[0], &[v]).expect("vertex-transitive");
            assert!(verify_automorphism(&t, &sigma).unwrap());
        }
        // a positive and a negative ordered edge are never exchanged
        assert!(find_automorphism(&t, &[0, 1], &[0, 7]).is_none());
        let sp5 = build_sp(5).unwrap();
        assert!(find_automorphism(&sp5, &[0, 1], &[0, 2]).is_none());
        assert!(find_automorphism(&sp5, &[0, 1], &[2, 3]).is_some());
    }

    #[test]
    fn table1_reproduction() {
        let (at, rows) = table1_scan().unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(table1_text(&at, &rows), TABLE1_GOLDEN);
        for (i, a) in rows.iter().enumerate() {
            for b in &rows[..i] {
                let shared = a.successors.iter().filter(|s| b.successors.contains(s)).count();
                assert!(shared < 3);
            }
        }
    }

    #[test]
    fn path_patterns() {
        let at = build_at(&build_k4star());
        assert!(path_pattern_check(&at, 3));
        assert!(!path_pattern_check(&at, 1));
        let e = SignifiedGraph::from_edges(2, &[(0, 1, Sign::Pos)]).unwrap();
        assert!(!path_pattern_check(&e, 1));
        let gap = path_pattern_gap(&e, 1).unwrap();
        assert_eq!((gap.from, gap.to), (0, 0));
    }
}
