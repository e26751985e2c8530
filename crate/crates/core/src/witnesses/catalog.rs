//! Connected 4-regular graphs on 9 vertices, as signified complete graphs,
//! and the matching filter that singles out SP₉.

use std::collections::BTreeMap;

use super::iso::canonical_form;
use crate::error::{arg, Result};
use crate::exec::Exec;
use crate::sgraph::{Sign, SignifiedGraph};

const N: usize = 9;
const D: usize = 4;

/// Every labelled 4-regular graph on 9 vertices with N(0) = {1, 2, 3, 4}.
/// Any 4-regular graph has such a labelling, so isomorph rejection over this
/// set still reaches every class.
fn labelled_with_fixed_root() -> Vec<[[bool; N]; N]> {
    let mut adj = [[false; N]; N];
    let mut deg = [0usize; N];
    for v in 1..=D {
        adj[0][v] = true;
        adj[v][0] = true;
        deg[v] += 1;
    }
    deg[0] = D;
    let mut out = Vec::new();
    fill(1, &mut adj, &mut deg, &mut out);
    out
}

/// Completes vertex `v` by choosing its missing neighbours among later vertices.
fn fill(v: usize, adj: &mut [[bool; N]; N], deg: &mut [usize; N], out: &mut Vec<[[bool; N]; N]>) {
    if v == N {
        out.push(*adj);
        return;
    }
    let need = D - deg[v];
    let free: Vec<usize> = ((v + 1)..N).filter(|&w| deg[w] < D && !adj[v][w]).collect();
    if free.len() < need {
        return;
    }
    choose(v, &free, 0, need, adj, deg, out);
}

fn choose(
    v: usize,
    free: &[usize],
    start: usize,
    need: usize,
    adj: &mut [[bool; N]; N],
    deg: &mut [usize; N],
    out: &mut Vec<[[bool; N]; N]>,
) {
    if need == 0 {
        fill(v + 1, adj, deg, out);
        return;
    }
    for i in start..free.len() {
        if free.len() - i < need {
            break;
        }
        let w = free[i];
        adj[v][w] = true;
        adj[w][v] = true;
        deg[v] += 1;
        deg[w] += 1;
        choose(v, free, i + 1, need - 1, adj, deg, out);
        adj[v][w] = false;
        adj[w][v] = false;
        deg[v] -= 1;
        deg[w] -= 1;
    }
}

fn complete_signified(adj: &[[bool; N]; N]) -> SignifiedGraph {
    let mut g = SignifiedGraph::empty(N);
    for (u, row) in adj.iter().enumerate() {
        for (v, &edge) in row.iter().enumerate().skip(u + 1) {
            g.set_edge(u, v, Some(if edge { Sign::Pos } else { Sign::Neg })).expect("in range");
        }
    }
    g
}

fn positive_part(g: &SignifiedGraph) -> SignifiedGraph {
    let mut p = SignifiedGraph::empty(g.n());
    for (u, v, s) in g.edges() {
        if s == Sign::Pos {
            p.set_edge(u, v, Some(Sign::Pos)).expect("in range");
        }
    }
    p
}

/// The connected 4-regular graphs on 9 vertices up to isomorphism, each as a
/// complete signified graph (edges positive, non-edges negative), ordered by
/// canonical form.
pub fn enumerate_4regular_9(exec: Exec) -> Vec<SignifiedGraph> {
    let labelled = labelled_with_fixed_root();
    let forms = exec.map(&labelled, |adj| {
        let g = complete_signified(adj);
        if !positive_part(&g).is_connected() {
            return None;
        }
        let (cert, perm) = canonical_form(&g);
        Some((cert, g, perm))
    });
    let mut classes: BTreeMap<Vec<i8>, SignifiedGraph> = BTreeMap::new();
    for (cert, g, perm) in forms.into_iter().flatten() {
        classes.entry(cert).or_insert_with(|| g.relabel(&perm).expect("permutation"));
    }
    classes.into_values().collect()
}

/// Whether the vertices of `set` (four of them) contain two disjoint edges of sign `s`.
fn has_perfect_matching(g: &SignifiedGraph, set: &[usize], s: Sign) -> bool {
    let [a, b, c, d] = [set[0], set[1], set[2], set[3]];
    [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]
        .iter()
        .any(|&((p, q), (r, t))| g.sign(p, q) == Some(s) && g.sign(r, t) == Some(s))
}

/// Keeps the candidates in which, at every vertex, the four positive
/// neighbours carry a positive perfect matching and the four negative
/// neighbours a negative one.
pub fn matching_filter(candidates: &[SignifiedGraph]) -> Result<Vec<SignifiedGraph>> {
    let mut out = Vec::new();
    for (i, g) in candidates.iter().enumerate() {
        if (0..g.n()).any(|v| g.pos_degree(v) != D || g.neg_degree(v) != D) {
            return arg(format!("candidate {i} is not 4-regular in both signs"));
        }
        let ok = (0..g.n())
            .all(|v| has_perfect_matching(g, &g.pos_neighbors(v), Sign::Pos) && has_perfect_matching(g, &g.neg_neighbors(v), Sign::Neg));
        if ok {
            out.push(g.clone());
        }
    }
    Ok(out)
}
