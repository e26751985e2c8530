//! Brute-force reference implementations.
//!
//! Everything here enumerates naively and shares no code with the search
//! engine, so it can serve as an independent check of [`crate::homsearch`],
//! [`crate::campaign`] and the canonical-form machinery.

use std::collections::HashSet;

use rand::Rng;

use crate::sgraph::{is_valid_hom, Mapping, Sign, SignifiedGraph};

/// Random signified graph: each pair is an edge with probability `p`, sign uniform.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SignifiedGraph {
    let mut g = SignifiedGraph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                g.set_edge(u, v, Some(s)).expect("in range");
            }
        }
    }
    g
}

/// Random connected signified graph: a random tree plus extra edges with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> SignifiedGraph {
    let mut g = random_graph(rng, n, p);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        if !g.adjacent(u, v) {
            let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
            g.set_edge(u, v, Some(s)).expect("in range");
        }
    }
    g
}

/// Same underlying graph, fresh uniform signs.
pub fn random_signature<R: Rng>(rng: &mut R, g: &SignifiedGraph) -> SignifiedGraph {
    let mut out = SignifiedGraph::empty(g.n());
    for (u, v, _) in g.edges() {
        let s = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        out.set_edge(u, v, Some(s)).expect("in range");
    }
    out
}

/// Tries all |V(H)|^|V(G)| maps in lexicographic order.
pub fn brute_force_hom(g: &SignifiedGraph, h: &SignifiedGraph) -> Option<Mapping> {
    let (n, m) = (g.n(), h.n());
    if n == 0 {
        return Some(Mapping(Vec::new()));
    }
    if m == 0 {
        return None;
    }
    let mut map = vec![0usize; n];
    loop {
        let phi = Mapping(map.clone());
        if is_valid_hom(g, h, &phi) {
            return Some(phi);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
        }
    }
}

/// All 2^n resignings of `g`, indexed by the bitmask of the resigned set.
pub fn all_resignings(g: &SignifiedGraph) -> Vec<SignifiedGraph> {
    let n = g.n();
    assert!(n <= 20, "brute force over 2^{n} resign sets");
    (0u32..1 << n)
        .map(|mask| {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            g.resign(&set).expect("in range")
        })
        .collect()
}

/// Signed homomorphism by brute force: some resigning of `g` maps signified to `h`.
pub fn brute_force_signed_hom(g: &SignifiedGraph, h: &SignifiedGraph) -> bool {
    all_resignings(g).iter().any(|gx| brute_force_hom(gx, h).is_some())
}

/// Signified chromatic number by trying every target on k vertices implicitly:
/// enumerate all maps V → {0..k} and check the coloring conditions directly.
pub fn brute_force_chi2(g: &SignifiedGraph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    (1..=n).find(|&k| exists_coloring(g, k)).expect("n colors always suffice")
}

fn exists_coloring(g: &SignifiedGraph, k: usize) -> bool {
    let n = g.n();
    let mut col = vec![0usize; n];
    loop {
        if is_signified_coloring(g, &col) {
            return true;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            col[i] += 1;
            if col[i] < k {
                break;
            }
            col[i] = 0;
        }
    }
}

/// Proper coloring in which all edges between two color classes share a sign.
pub fn is_signified_coloring(g: &SignifiedGraph, col: &[usize]) -> bool {
    let mut seen: std::collections::HashMap<(usize, usize), Sign> = Default::default();
    for (u, v, s) in g.edges() {
        let (a, b) = (col[u], col[v]);
        if a == b {
            return false;
        }
        let key = (a.min(b), a.max(b));
        if *seen.entry(key).or_insert(s) != s {
            return false;
        }
    }
    true
}

/// Signed chromatic number: minimum brute-force χ₂ over all resignings.
pub fn brute_force_chis(g: &SignifiedGraph) -> usize {
    all_resignings(g).iter().map(brute_force_chi2).min().unwrap_or(0)
}

/// Every simple cycle of length `3..=max_len`, as vertex sequences (each cycle
/// once per starting point and direction).
pub fn simple_cycles(g: &SignifiedGraph, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(g: &SignifiedGraph, path: &mut Vec<usize>, max_len: usize, out: &mut Vec<Vec<usize>>) {
        let (start, last) = (path[0], *path.last().expect("nonempty"));
        if path.len() >= 3 && g.adjacent(last, start) {
            out.push(path.clone());
        }
        if path.len() == max_len {
            return;
        }
        for v in 0..g.n() {
            if g.adjacent(last, v) && !path.contains(&v) {
                path.push(v);
                extend(g, path, max_len, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        extend(g, &mut vec![s], max_len, &mut out);
    }
    out
}

/// Number of resigning classes among all 2^m signatures of the underlying
/// graph, by explicit orbit enumeration.
pub fn count_signature_classes(g: &SignifiedGraph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let m = edges.len();
    assert!(m <= 16, "brute force over 2^{m} signatures");
    let n = g.n();
    let mut seen: HashSet<u32> = HashSet::new();
    let mut classes = 0;
    for sig in 0u32..1 << m {
        if seen.contains(&sig) {
            continue;
        }
        classes += 1;
        for mask in 0u32..1 << n {
            let mut img = 0u32;
            for (i, &(u, v)) in edges.iter().enumerate() {
                let flip = (mask >> u & 1) ^ (mask >> v & 1);
                img |= ((sig >> i & 1) ^ flip) << i;
            }
            seen.insert(img);
        }
    }
    classes
}

/// Isomorphism by trying all n! permutations (for n ≤ 8).
pub fn brute_force_iso(g: &SignifiedGraph, h: &SignifiedGraph) -> Option<Mapping> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let n = g.n();
    assert!(n <= 9, "brute force over {n}! permutations");
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let phi = Mapping(perm.clone());
        if is_valid_hom(g, h, &phi) {
            return Some(phi);
        }
        // next lexicographic permutation
        let i = (1..n).rev().find(|&i| perm[i - 1] < perm[i])?;
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// All connected simple graphs on `n` vertices (labelled), as all-positive graphs.
pub fn all_connected_labelled(n: usize) -> Vec<SignifiedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() <= 21);
    (0u32..1 << pairs.len())
        .filter_map(|mask| {
            let mut g = SignifiedGraph::empty(n);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.set_edge(u, v, Some(Sign::Pos)).expect("in range");
                }
            }
            g.is_connected().then_some(g)
        })
        .collect()
}

/// All connected simple graphs on `n ≤ 5` vertices up to isomorphism.
pub fn all_connected_unlabelled(n: usize) -> Vec<SignifiedGraph> {
    let mut reps: Vec<SignifiedGraph> = Vec::new();
    for g in all_connected_labelled(n) {
        if !reps.iter().any(|r| brute_force_iso(r, &g).is_some()) {
            reps.push(g);
        }
    }
    reps
}
