//! Colour refinement, canonical forms and signified isomorphism for small graphs.

use std::collections::BTreeMap;

use crate::sgraph::{Mapping, SignifiedGraph};

/// Stable colouring refined from `init`. New colours are ranks of the
/// (old colour, sorted neighbour colour/sign list) signatures, so the result
/// is invariant under relabelling.
pub fn refine(g: &SignifiedGraph, init: &[u32]) -> Vec<u32> {
    let n = g.n();
    let mut colors = rank(init.iter().map(|&c| (c, Vec::<(u32, i8)>::new())).collect());
    let mut classes = count_distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<(u32, i8)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, i8)> = g.neighbors(v).map(|(u, s)| (colors[u], s.value())).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank(sigs);
        let c = count_distinct(&next);
        colors = next;
        if c == classes {
            return colors;
        }
        classes = c;
    }
}

fn rank<K: Ord + Clone>(keys: Vec<K>) -> Vec<u32> {
    let mut sorted = keys.clone();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present") as u32).collect()
}

fn count_distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Canonical form: the smallest sign-matrix certificate over all leaves of
/// the individualisation-refinement tree. Two graphs are isomorphic iff
/// their canonical forms are equal. Returns the form and the labelling
/// (`perm[v]` = position of v).
pub fn canonical_form(g: &SignifiedGraph) -> (Vec<i8>, Mapping) {
    let colors = refine(g, &vec![0; g.n()]);
    let mut best: Option<(Vec<i8>, Vec<u32>)> = None;
    search(g, colors, &mut best);
    let (cert, perm) = best.unwrap_or_default();
    (cert, Mapping(perm.into_iter().map(|c| c as usize).collect()))
}

fn search(g: &SignifiedGraph, colors: Vec<u32>, best: &mut Option<(Vec<i8>, Vec<u32>)>) {
    let n = g.n();
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &colors {
        *sizes.entry(c).or_default() += 1;
    }
    let Some((&target, _)) = sizes.iter().find(|(_, &s)| s > 1) else {
        // discrete: colors are positions 0..n
        let mut order = vec![0; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c as usize] = v;
        }
        let cert: Vec<i8> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| g.sign_value(order[i], order[j])).collect();
        if best.as_ref().is_none_or(|(b, _)| cert < *b) {
            *best = Some((cert, colors));
        }
        return;
    };
    for v in 0..n {
        if colors[v] != target {
            continue;
        }
        let indiv: Vec<u32> = colors.iter().enumerate().map(|(u, &c)| 2 * c + u32::from(u != v)).collect();
        search(g, refine(g, &indiv), best);
    }
}

/// Sign-preserving isomorphism G → H, if any. Colours are refined on the
/// disjoint union so they are comparable across the two graphs.
pub fn signified_iso(g: &SignifiedGraph, h: &SignifiedGraph) -> Option<Mapping> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() || g.negative_edge_count() != h.negative_edge_count() {
        return None;
    }
    let union = g.disjoint_union(h);
    let colors = refine(&union, &vec![0; 2 * n]);
    let (cg, ch) = colors.split_at(n);
    let mut a = cg.to_vec();
    let mut b = ch.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    // place rare colours first, then keep the order connected where possible
    let mut freq: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in cg {
        *freq.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let linked = order.iter().any(|&u| g.adjacent(u, v));
                (!linked, freq[&cg[v]], v)
            })
            .expect("vertices remain");
        placed[v] = true;
        order.push(v);
    }
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &SignifiedGraph,
        h: &SignifiedGraph,
        cg: &[u32],
        ch: &[u32],
        order: &[usize],
        d: usize,
        img: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if d == order.len() {
            return true;
        }
        let v = order[d];
        for c in 0..h.n() {
            if used[c] || ch[c] != cg[v] {
                continue;
            }
            if order[..d].iter().all(|&u| g.sign(u, v) == h.sign(img[u], c)) {
                img[v] = c;
                used[c] = true;
                if go(g, h, cg, ch, order, d + 1, img, used) {
                    return true;
                }
                used[c] = false;
            }
        }
        img[v] = usize::MAX;
        false
    }
    go(g, h, cg, ch, &order, 0, &mut img, &mut used).then_some(Mapping(img))
}
