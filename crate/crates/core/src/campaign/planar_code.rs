//! planar_code: `>>planar_code<<`, then per graph one byte n followed by each
//! vertex's 1-based neighbours in rotation order, each list 0-terminated.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::sgraph::{Sign, SignifiedGraph};

pub const HEADER: &[u8] = b">>planar_code<<";

/// A combinatorial embedding: the cyclic neighbour order at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    pub rotation: Vec<Vec<usize>>,
}

impl EmbeddedGraph {
    /// Checks simplicity and that the rotation lists are symmetric.
    pub fn new(rotation: Vec<Vec<usize>>) -> Result<Self> {
        let n = rotation.len();
        for (u, nb) in rotation.iter().enumerate() {
            let mut seen = HashSet::new();
            for &v in nb {
                if v >= n || v == u || !seen.insert(v) {
                    return Err(Error::Argument(format!("vertex {u}: bad neighbour {v}")));
                }
                if !rotation[v].contains(&u) {
                    return Err(Error::Argument(format!("dart {u}->{v} has no reverse")));
                }
            }
        }
        Ok(EmbeddedGraph { rotation })
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Underlying graph, all edges positive.
    pub fn graph(&self) -> SignifiedGraph {
        let mut g = SignifiedGraph::empty(self.n());
        for (u, nb) in self.rotation.iter().enumerate() {
            for &v in nb {
                if u < v {
                    g.set_edge(u, v, Some(Sign::Pos)).expect("validated");
                }
            }
        }
        g
    }

    /// Faces traced from the rotation system: after arriving at v from u,
    /// leave along the successor of u in v's rotation.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut used: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = Vec::new();
        for (u, nb) in self.rotation.iter().enumerate() {
            for &v in nb {
                if used.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while used.insert((a, b)) {
                    face.push(a);
                    let rot = &self.rotation[b];
                    let i = rot.iter().position(|&x| x == a).expect("reverse dart");
                    let c = rot[(i + 1) % rot.len()];
                    (a, b) = (b, c);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Triangulation without separating triangles: every face is a
    /// triangle, Euler's formula holds, and every triangle bounds a face.
    pub fn is_four_connected_triangulation(&self) -> bool {
        let (n, m) = (self.n() as i64, self.edge_count() as i64);
        let faces = self.faces();
        if faces.iter().any(|f| f.len() != 3) || n - m + faces.len() as i64 != 2 {
            return false;
        }
        let face_sets: HashSet<[usize; 3]> = faces
            .iter()
            .map(|f| {
                let mut t = [f[0], f[1], f[2]];
                t.sort_unstable();
                t
            })
            .collect();
        let g = self.graph();
        for u in 0..self.n() {
            for v in (u + 1)..self.n() {
                if !g.adjacent(u, v) {
                    continue;
                }
                for w in (v + 1)..self.n() {
                    if g.adjacent(u, w) && g.adjacent(v, w) && !face_sets.contains(&[u, v, w]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Parses a stream. Framing errors (bad header, truncation) end the stream;
/// a record whose contents are invalid yields an error for that graph only.
pub fn parse_records(bytes: &[u8]) -> Result<Vec<Result<EmbeddedGraph>>> {
    if !bytes.starts_with(HEADER) {
        return Err(Error::Parse { offset: 0, msg: "missing >>planar_code<< header".into() });
    }
    let mut pos = HEADER.len();
    let mut out = Vec::new();
    while pos < bytes.len() {
        let start = pos;
        let n = bytes[pos] as usize;
        pos += 1;
        if n == 0 {
            out.push(Err(Error::Parse { offset: start, msg: "graph with 0 vertices".into() }));
            continue;
        }
        let mut rotation = Vec::with_capacity(n);
        let mut bad: Option<Error> = None;
        for _ in 0..n {
            let mut nb = Vec::new();
            loop {
                let Some(&b) = bytes.get(pos) else {
                    out.push(Err(Error::Parse { offset: pos, msg: "truncated record".into() }));
                    return Ok(out);
                };
                pos += 1;
                if b == 0 {
                    break;
                }
                if b as usize > n && bad.is_none() {
                    bad = Some(Error::Parse { offset: pos - 1, msg: format!("neighbour {b} out of range 1..={n}") });
                }
                nb.push(b as usize - 1);
            }
            rotation.push(nb);
        }
        out.push(match bad {
            Some(e) => Err(e),
            None => EmbeddedGraph::new(rotation).map_err(|e| Error::Parse { offset: start, msg: e.to_string() }),
        });
    }
    Ok(out)
}

/// Strict parse: the first error of any kind aborts.
pub fn read_planar_code(bytes: &[u8]) -> Result<Vec<EmbeddedGraph>> {
    parse_records(bytes)?.into_iter().collect()
}

pub fn write_planar_code(graphs: &[EmbeddedGraph]) -> Result<Vec<u8>> {
    let mut out = HEADER.to_vec();
    for g in graphs {
        if g.n() == 0 || g.n() > 255 {
            return Err(Error::Argument(format!("planar_code needs 1..=255 vertices, got {}", g.n())));
        }
        out.push(g.n() as u8);
        for nb in &g.rotation {
            out.extend(nb.iter().map(|&v| (v + 1) as u8));
            out.push(0);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> EmbeddedGraph {
        EmbeddedGraph::new(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn k4_round_trip() {
        let bytes = write_planar_code(&[k4()]).unwrap();
        let gs = read_planar_code(&bytes).unwrap();
        assert_eq!(gs, vec![k4()]);
        assert_eq!(gs[0].edge_count(), 6);
        assert!(gs[0].is_four_connected_triangulation());
        assert_eq!(gs[0].faces().len(), 4);
    }

    #[test]
    fn empty_body_and_errors() {
        assert!(read_planar_code(HEADER).unwrap().is_empty());
        match read_planar_code(b">>planar_cod") {
            Err(Error::Parse { offset: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        let mut bytes = write_planar_code(&[k4()]).unwrap();
        bytes.pop();
        match read_planar_code(&bytes) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, bytes.len()),
            other => panic!("{other:?}"),
        }
        let mut bytes = write_planar_code(&[k4()]).unwrap();
        bytes[HEADER.len() + 1] = 9;
        match read_planar_code(&bytes) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, HEADER.len() + 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_record_does_not_break_framing() {
        let mut bytes = write_planar_code(&[k4(), k4()]).unwrap();
        // first neighbour of vertex 0 in graph 0 becomes a duplicate
        bytes[HEADER.len() + 1] = 3;
        let recs = parse_records(&bytes).unwrap();
        assert_eq!(recs.len(), 2);
        assert!(recs[0].is_err());
        assert!(recs[1].is_ok());
    }

    #[test]
    fn non_triangulations() {
        let c4 = EmbeddedGraph::new(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        assert!(!c4.is_four_connected_triangulation());
        assert!(EmbeddedGraph::new(vec![vec![1], vec![]]).is_err());
    }
}
