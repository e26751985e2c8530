//! JSON and DOT encodings of signified graphs.

use serde::{Deserialize, Serialize};

use super::{Sign, SignifiedGraph};
use crate::error::{Error, Result};

/// `{"n": 4, "edges": [[0, 1, 1], [1, 2, -1]]}` with 0-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl From<&SignifiedGraph> for GraphJson {
    fn from(g: &SignifiedGraph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().map(|(u, v, s)| (u, v, s.value() as i64)).collect() }
    }
}

impl TryFrom<GraphJson> for SignifiedGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let mut g = SignifiedGraph::empty(j.n);
        for (u, v, s) in j.edges {
            let s = Sign::from_value(s).ok_or_else(|| Error::Argument(format!("edge {u}-{v}: sign must be 1 or -1, got {s}")))?;
            g.add_edge(u, v, s)?;
        }
        Ok(g)
    }
}

impl SignifiedGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph json is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(text)?;
        j.try_into()
    }

    /// DOT rendering; negative edges are dashed.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("graph G {\n");
        if let Some(labels) = labels {
            for (v, l) in labels.iter().enumerate() {
                out.push_str(&format!("  {v} [label=\"{}\"];\n", l.replace('"', "\\\"")));
            }
        }
        for (u, v, s) in self.edges() {
            match s {
                Sign::Pos => out.push_str(&format!("  {u} -- {v};\n")),
                Sign::Neg => out.push_str(&format!("  {u} -- {v} [style=dashed];\n")),
            }
        }
        out.push_str("}\n");
        out
    }
}
