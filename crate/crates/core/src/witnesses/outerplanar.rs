//! Random outerplanar graphs of girth at least 4, grown from cycles by ears
//! on outer edges and by gluing new blocks at single vertices.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::sgraph::{Sign, SignifiedGraph};

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Builds an outerplanar graph on roughly `target` vertices.
///
/// Each step either adds an ear of 2 or 3 new vertices across an edge of the
/// outer face of some block (the edge becomes a chord, the new face has
/// length at least 4), or glues a fresh cycle of length 4 to 6 at one
/// existing vertex. Both operations preserve outerplanarity, and every new
/// cycle has length at least 4. Signs are uniform.
pub fn random_outerplanar_girth4<R: Rng>(rng: &mut R, target: usize) -> SignifiedGraph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // outer-face edges of each block, eligible for ears
    let mut outer: Vec<(usize, usize)> = Vec::new();
    let mut n = 0;
    let add_cycle = |n: &mut usize, edges: &mut Vec<(usize, usize)>, outer: &mut Vec<(usize, usize)>, at: Option<usize>, len: usize| {
        let mut cyc = Vec::with_capacity(len);
        if let Some(v) = at {
            cyc.push(v);
        }
        while cyc.len() < len {
            cyc.push(*n);
            *n += 1;
        }
        for i in 0..len {
            let e = (cyc[i], cyc[(i + 1) % len]);
            edges.push(e);
            outer.push(e);
        }
    };
    let first = rng.gen_range(4..=6);
    add_cycle(&mut n, &mut edges, &mut outer, None, first);
    while n < target {
        if rng.gen_bool(0.6) {
            let i = rng.gen_range(0..outer.len());
            let (a, b) = outer.swap_remove(i);
            let inner = rng.gen_range(2..=3);
            let mut path = vec![a];
            for _ in 0..inner {
                path.push(n);
                n += 1;
            }
            path.push(b);
            for w in path.windows(2) {
                edges.push((w[0], w[1]));
                outer.push((w[0], w[1]));
            }
        } else {
            let v = rng.gen_range(0..n);
            let len = rng.gen_range(4..=6);
            add_cycle(&mut n, &mut edges, &mut outer, Some(v), len);
        }
    }
    let mut g = SignifiedGraph::empty(n);
    edges.shuffle(rng);
    for (u, v) in edges {
        g.set_edge(u, v, Some(random_sign(rng))).expect("in range");
    }
    g
}
