//! Exhaustive signature-class campaigns: for each input triangulation,
//! every resigning class is checked for a signified homomorphism into a
//! target, with a resumable plain-text checkpoint.
//!
//! Class `i` of a connected graph is the signature with its canonical
//! spanning tree positive and co-tree edge `j` negative iff bit `j` of `i`
//! is set. Work proceeds in chunks of consecutive class indices; after each
//! chunk the checkpoint records the cursor (the first class not yet done).

mod planar_code;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use planar_code::{parse_records, read_planar_code, write_planar_code, EmbeddedGraph, HEADER};

use crate::error::{arg, Error, Result};
use crate::exec::Exec;
use crate::homsearch::{find_hom_to_target, SearchConfig, SearchOutcome};
use crate::sgraph::{is_valid_hom, Sign, SignifiedGraph};
use crate::targets::LabelledTarget;

/// One representative per resigning class of a connected graph.
#[derive(Clone, Debug)]
pub struct SignatureClasses {
    base: SignifiedGraph,
    cotree: Vec<(usize, usize)>,
}

impl SignatureClasses {
    pub fn new(g: &SignifiedGraph) -> Result<Self> {
        if !g.is_connected() {
            return arg("signature classes need a connected graph");
        }
        let cotree = g.cotree_edges();
        if cotree.len() > 62 {
            return arg(format!("{} co-tree edges is beyond a 64-bit class counter", cotree.len()));
        }
        Ok(SignatureClasses { base: g.all_positive(), cotree })
    }

    pub fn cotree(&self) -> &[(usize, usize)] {
        &self.cotree
    }

    /// 2^(m − n + 1).
    pub fn count(&self) -> u64 {
        1 << self.cotree.len()
    }

    pub fn class(&self, index: u64) -> SignifiedGraph {
        let mut g = self.base.clone();
        for (j, &(u, v)) in self.cotree.iter().enumerate() {
            if index >> j & 1 == 1 {
                g.set_edge(u, v, Some(Sign::Neg)).expect("existing edge");
            }
        }
        g
    }

    /// Index of the class containing `g` (same underlying graph).
    pub fn index_of(&self, g: &SignifiedGraph) -> Result<u64> {
        if !g.same_underlying(&self.base) {
            return arg("different underlying graph");
        }
        let c = g.canonical_signature();
        Ok(self.cotree.iter().enumerate().filter(|&(_, &(u, v))| c.sign(u, v) == Some(Sign::Neg)).map(|(j, _)| 1u64 << j).sum())
    }

    pub fn iter(&self) -> impl Iterator<Item = SignifiedGraph> + '_ {
        (0..self.count()).map(|i| self.class(i))
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub search: SearchConfig,
    pub exec: Exec,
    /// Classes per chunk; the checkpoint is rewritten after every chunk.
    pub chunk: u64,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many classes in this run (across graphs), leaving a
    /// resumable checkpoint.
    pub max_classes: Option<u64>,
    /// Re-solve a resigned copy of every `sample_every`-th class.
    pub sample_every: Option<u64>,
    pub seed: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            search: SearchConfig::default(),
            exec: Exec::Parallel,
            chunk: 1 << 14,
            checkpoint: None,
            max_classes: None,
            sample_every: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub graph: usize,
    pub n: usize,
    pub m: usize,
    pub classes_total: u64,
    pub classes_done: u64,
    /// Classes refuted by a completed search.
    pub failures: Vec<u64>,
    /// Classes whose search hit the budget.
    pub indeterminate: Vec<u64>,
    pub consistency_checked: u64,
    /// Sampled classes where a resigned copy disagreed with the representative.
    pub consistency_failures: Vec<u64>,
    pub cursor: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl CampaignReport {
    pub fn complete(&self) -> bool {
        self.error.is_none() && self.classes_done == self.classes_total
    }

    pub fn clean(&self) -> bool {
        self.complete() && self.failures.is_empty() && self.indeterminate.is_empty() && self.consistency_failures.is_empty()
    }

    fn empty(graph: usize) -> Self {
        CampaignReport {
            graph,
            n: 0,
            m: 0,
            classes_total: 0,
            classes_done: 0,
            failures: vec![],
            indeterminate: vec![],
            consistency_checked: 0,
            consistency_failures: vec![],
            cursor: 0,
            error: None,
            elapsed_ms: 0,
        }
    }
}

/// Saved progress of one graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckpointEntry {
    pub cursor: u64,
    pub failures: Vec<u64>,
    pub indeterminate: Vec<u64>,
    pub consistency_checked: u64,
    pub consistency_failures: Vec<u64>,
}

fn list(xs: &[u64]) -> String {
    if xs.is_empty() {
        "-".into()
    } else {
        xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    }
}

fn parse_list(s: &str) -> Option<Vec<u64>> {
    if s == "-" {
        return Some(vec![]);
    }
    s.split(',').map(|x| x.parse().ok()).collect()
}

/// One line per graph: `graph cursor failures indeterminate checked consistency_failures`,
/// lists comma-separated or `-` when empty.
pub fn format_checkpoint(entries: &BTreeMap<usize, CheckpointEntry>) -> String {
    let mut out = String::new();
    for (g, e) in entries {
        out.push_str(&format!(
            "{g} {} {} {} {} {}\n",
            e.cursor,
            list(&e.failures),
            list(&e.indeterminate),
            e.consistency_checked,
            list(&e.consistency_failures)
        ));
    }
    out
}

pub fn parse_checkpoint(text: &str) -> Result<BTreeMap<usize, CheckpointEntry>> {
    let mut out = BTreeMap::new();
    let mut offset = 0;
    for line in text.lines() {
        let here = offset;
        let bad = || Error::Parse { offset: here, msg: format!("bad checkpoint line {line:?}") };
        offset += line.len() + 1;
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 6 {
            return Err(bad());
        }
        let entry = CheckpointEntry {
            cursor: f[1].parse().map_err(|_| bad())?,
            failures: parse_list(f[2]).ok_or_else(bad)?,
            indeterminate: parse_list(f[3]).ok_or_else(bad)?,
            consistency_checked: f[4].parse().map_err(|_| bad())?,
            consistency_failures: parse_list(f[5]).ok_or_else(bad)?,
        };
        out.insert(f[0].parse().map_err(|_| bad())?, entry);
    }
    Ok(out)
}

fn save_checkpoint(path: &Path, entries: &BTreeMap<usize, CheckpointEntry>) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(format_checkpoint(entries).as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)?;
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ClassResult {
    Ok,
    Failed,
    Indeterminate,
}

struct ClassCheck {
    result: ClassResult,
    sampled: bool,
    consistent: bool,
}

/// Runs the campaign over parsed records and calls `on_report` after each
/// graph. Records that failed to parse get a report carrying the error.
pub fn run_campaign_with(
    records: Vec<Result<EmbeddedGraph>>,
    target: &LabelledTarget,
    cfg: &CampaignConfig,
    mut on_report: impl FnMut(&CampaignReport) -> Result<()>,
) -> Result<Vec<CampaignReport>> {
    let mut saved = match &cfg.checkpoint {
        Some(p) if p.exists() => parse_checkpoint(&fs::read_to_string(p)?)?,
        _ => BTreeMap::new(),
    };
    let mut budget = cfg.max_classes;
    let mut reports = Vec::new();
    for (gi, rec) in records.into_iter().enumerate() {
        let start = Instant::now();
        let mut report = CampaignReport::empty(gi);
        let eg = match rec {
            Ok(eg) => eg,
            Err(e) => {
                report.error = Some(e.to_string());
                on_report(&report)?;
                reports.push(report);
                continue;
            }
        };
        report.n = eg.n();
        report.m = eg.edge_count();
        if !eg.is_four_connected_triangulation() {
            report.error = Some("not a triangulation without separating triangles".into());
            on_report(&report)?;
            reports.push(report);
            continue;
        }
        let classes = SignatureClasses::new(&eg.graph())?;
        report.classes_total = classes.count();
        let mut entry = saved.get(&gi).cloned().unwrap_or_default();
        if entry.cursor > report.classes_total {
            return arg(format!("checkpoint cursor {} exceeds {} classes for graph {gi}", entry.cursor, report.classes_total));
        }
        while entry.cursor < report.classes_total {
            let mut end = (entry.cursor + cfg.chunk.max(1)).min(report.classes_total);
            if let Some(b) = budget {
                if b == 0 {
                    break;
                }
                end = end.min(entry.cursor + b);
            }
            let results = cfg.exec.map_range(entry.cursor..end, |i| check_class(&classes, target, cfg, i));
            for (i, r) in (entry.cursor..end).zip(results) {
                match r.result {
                    ClassResult::Ok => {}
                    ClassResult::Failed => entry.failures.push(i),
                    ClassResult::Indeterminate => entry.indeterminate.push(i),
                }
                if r.sampled {
                    entry.consistency_checked += 1;
                    if !r.consistent {
                        entry.consistency_failures.push(i);
                    }
                }
            }
            if let Some(b) = budget.as_mut() {
                *b -= end - entry.cursor;
            }
            entry.cursor = end;
            saved.insert(gi, entry.clone());
            if let Some(p) = &cfg.checkpoint {
                save_checkpoint(p, &saved)?;
            }
        }
        report.classes_done = entry.cursor;
        report.cursor = entry.cursor;
        report.failures = entry.failures;
        report.indeterminate = entry.indeterminate;
        report.consistency_checked = entry.consistency_checked;
        report.consistency_failures = entry.consistency_failures;
        report.elapsed_ms = start.elapsed().as_millis();
        on_report(&report)?;
        reports.push(report);
    }
    Ok(reports)
}

pub fn run_campaign(bytes: &[u8], target: &LabelledTarget, cfg: &CampaignConfig) -> Result<Vec<CampaignReport>> {
    run_campaign_with(parse_records(bytes)?, target, cfg, |_| Ok(()))
}

fn solve(g: &SignifiedGraph, target: &LabelledTarget, cfg: &SearchConfig) -> ClassResult {
    match find_hom_to_target(g, target, cfg) {
        // the mapping is re-checked edge by edge, so a search bug cannot pass as success
        SearchOutcome::Found(phi) if is_valid_hom(g, target, &phi) => ClassResult::Ok,
        SearchOutcome::Found(_) | SearchOutcome::Absent => ClassResult::Failed,
        SearchOutcome::Indeterminate => ClassResult::Indeterminate,
    }
}

fn check_class(classes: &SignatureClasses, target: &LabelledTarget, cfg: &CampaignConfig, i: u64) -> ClassCheck {
    let g = classes.class(i);
    let result = solve(&g, target, &cfg.search);
    let sampled = cfg.sample_every.is_some_and(|k| k > 0 && i.is_multiple_of(k)) && result != ClassResult::Indeterminate;
    let mut consistent = true;
    if sampled {
        // an equivalent signature must agree when the target is anti-twinned
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let x: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
        let gx = g.resign(&x).expect("in range");
        let rx = solve(&gx, target, &cfg.search);
        consistent = rx == ClassResult::Indeterminate || rx == result;
    }
    ClassCheck { result, sampled, consistent }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::SeedableRng;

    use super::*;
    use crate::oracle;
    use crate::targets::build_tromp;

    fn octahedron() -> EmbeddedGraph {
        // vertices 0 and 5 are poles, 1..4 the equator in order
        EmbeddedGraph::new(vec![vec![1, 2, 3, 4], vec![0, 4, 5, 2], vec![0, 1, 5, 3], vec![0, 2, 5, 4], vec![0, 3, 5, 1], vec![1, 4, 3, 2]])
            .unwrap()
    }

    #[test]
    fn class_counts_match_orbit_enumeration() {
        for n in 1..=5 {
            for g in oracle::all_connected_unlabelled(n) {
                let c = SignatureClasses::new(&g).unwrap();
                assert_eq!(c.count() as usize, oracle::count_signature_classes(&g));
                let forms: HashSet<SignifiedGraph> = c.iter().map(|x| x.canonical_signature()).collect();
                assert_eq!(forms.len() as u64, c.count());
                for i in 0..c.count() {
                    assert_eq!(c.index_of(&c.class(i)).unwrap(), i);
                }
            }
        }
    }

    #[test]
    fn tree_and_cycle_classes() {
        let tree = SignifiedGraph::from_edges(3, &[(0, 1, Sign::Neg), (1, 2, Sign::Pos)]).unwrap();
        assert_eq!(SignatureClasses::new(&tree).unwrap().count(), 1);
        let c4 = SignifiedGraph::from_edges(4, &[(0, 1, Sign::Pos), (1, 2, Sign::Pos), (2, 3, Sign::Pos), (3, 0, Sign::Pos)]).unwrap();
        assert_eq!(SignatureClasses::new(&c4).unwrap().count(), 2);
        assert!(SignatureClasses::new(&SignifiedGraph::empty(2)).is_err());
    }

    #[test]
    fn index_of_random_resignings() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = octahedron().graph();
        let c = SignatureClasses::new(&g).unwrap();
        for _ in 0..50 {
            let s = oracle::random_signature(&mut rng, &g);
            let i = c.index_of(&s).unwrap();
            assert!(s.equivalent(&c.class(i)).unwrap().is_some());
        }
    }

    #[test]
    fn checkpoint_text_round_trip() {
        let mut m = BTreeMap::new();
        m.insert(
            0,
            CheckpointEntry {
                cursor: 12,
                failures: vec![1, 5],
                indeterminate: vec![],
                consistency_checked: 3,
                consistency_failures: vec![],
            },
        );
        m.insert(3, CheckpointEntry::default());
        let text = format_checkpoint(&m);
        assert_eq!(text, "0 12 1,5 - 3 -\n3 0 - - 0 -\n");
        assert_eq!(parse_checkpoint(&text).unwrap(), m);
        assert!(parse_checkpoint("0 x - - 0 -\n").is_err());
    }

    #[test]
    fn octahedron_campaign_with_resume() {
        let oct = octahedron();
        assert!(oct.is_four_connected_triangulation());
        let bytes = write_planar_code(&[oct]).unwrap();
        let tr9 = build_tromp(9).unwrap();
        let cfg = CampaignConfig { chunk: 1000, sample_every: Some(97), ..Default::default() };
        let full = run_campaign(&bytes, &tr9, &cfg).unwrap();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].classes_total, 1 << 7);
        assert!(full[0].clean());

        let dir = tempfile::tempdir().unwrap();
        let ck = dir.path().join("ck.txt");
        let partial_cfg = CampaignConfig { chunk: 10, checkpoint: Some(ck.clone()), max_classes: Some(35), ..cfg.clone() };
        let part = run_campaign(&bytes, &tr9, &partial_cfg).unwrap();
        assert_eq!(part[0].classes_done, 35);
        assert!(fs::read_to_string(&ck).unwrap().starts_with("0 35 "));
        let resumed_cfg = CampaignConfig { max_classes: None, ..partial_cfg };
        let mut resumed = run_campaign(&bytes, &tr9, &resumed_cfg).unwrap();
        resumed[0].elapsed_ms = full[0].elapsed_ms;
        assert_eq!(resumed, full);
    }

    #[test]
    fn too_small_target_fails_everything() {
        let bytes = write_planar_code(&[octahedron()]).unwrap();
        let k1 = LabelledTarget { graph: SignifiedGraph::empty(1), labels: vec![], field: None, symmetry: Default::default() };
        let r = run_campaign(&bytes, &k1, &CampaignConfig::default()).unwrap();
        assert_eq!(r[0].failures.len() as u64, r[0].classes_total);
    }

    #[test]
    fn invalid_records_are_reported() {
        let c4 = EmbeddedGraph::new(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        let mut bytes = write_planar_code(&[c4, octahedron()]).unwrap();
        bytes.extend([3, 2, 0]);
        let tr9 = build_tromp(9).unwrap();
        let r = run_campaign(&bytes, &tr9, &CampaignConfig { chunk: 64, ..Default::default() }).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r[0].error.is_some());
        assert!(r[1].clean());
        assert!(r[2].error.as_deref().unwrap().contains("truncated"));
    }
}
