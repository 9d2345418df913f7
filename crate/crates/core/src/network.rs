//! Network constructions over catalogs and sequences: threshold networks
//! on feature-vector or voice-leading distances, ego networks, operator
//! slices, score progression networks, and orchestration networks.
//!
//! Thresholds are strict on both sides (`thdw < d < thup`); edge weights
//! store the raw distance (invert downstream when a closeness weight is
//! needed). Probabilistic pruning draws one value per candidate pair
//! from a seeded PRNG in deterministic pair order, so a fixed seed
//! reproduces the same network regardless of worker count; only the
//! distance evaluation itself is parallelized.

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError, CatalogKind, CatalogRow};
use crate::graph::{detect_communities, Graph, GraphError};
use crate::metric::Metric;
use crate::pitch::{
    iv_distance, ops_name_distance, ops_name_vl, vl_distance, IntervalVector, PcSet,
    PitchError,
};
use crate::rhythm::{rhythm_distance, RhythmError, RhythmSeq};

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("thresholds must satisfy thdw < thup (got {thdw} .. {thup})")]
    BadThresholds { thdw: f64, thup: f64 },
    #[error("edge probability must lie in (0, 1], got {0}")]
    BadProbability(f64),
    #[error("no node labelled {0:?}")]
    NoSuchNode(String),
    #[error("chord sequence is empty")]
    EmptySequence,
    #[error("slice {start}..{end} is empty or out of range for length {len}")]
    BadSlice { start: usize, end: usize, len: usize },
    #[error("orchestration table is empty")]
    EmptyOrchestration,
    #[error("orchestration supports at most 64 instruments, got {0}")]
    TooManyInstruments(usize),
    #[error("malformed orchestration cell {0:?} (expected 0 or 1)")]
    BadOrchestraCell(String),
    #[error("malformed chord sequence: {0}")]
    BadChordSequence(String),
    #[error(transparent)]
    Pitch(#[from] PitchError),
    #[error(transparent)]
    Rhythm(#[from] RhythmError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, NetworkError>;

/// Threshold-network parameters. Both thresholds are strict; `prob`
/// accepts a candidate edge when the seeded draw falls below it.
#[derive(Clone, Copy, Debug)]
pub struct NetworkParams {
    pub thup: f64,
    pub thdw: f64,
    pub metric: Metric,
    pub prob: f64,
    pub seed: u64,
}

impl NetworkParams {
    pub fn new(thup: f64, thdw: f64, metric: Metric, prob: f64, seed: u64) -> Result<Self> {
        if !valid_thresholds(thdw, thup) {
            return Err(NetworkError::BadThresholds { thdw, thup });
        }
        if !(prob > 0.0 && prob <= 1.0) {
            return Err(NetworkError::BadProbability(prob));
        }
        Ok(NetworkParams { thup, thdw, metric, prob, seed })
    }
}

/// Strict ordering check that also rejects NaN thresholds.
fn valid_thresholds(thdw: f64, thup: f64) -> bool {
    matches!(thdw.partial_cmp(&thup), Some(std::cmp::Ordering::Less))
}

/// Builds the undirected threshold network for a node set with the given
/// pairwise weight function. Pairs are enumerated in ascending (i, j)
/// order; one acceptance draw is made per pair.
fn threshold_network<W, L>(
    rows: &[CatalogRow],
    params: &NetworkParams,
    weight: W,
    label: L,
) -> Result<Graph>
where
    W: Fn(usize, usize) -> Result<f64> + Sync,
    L: Fn(usize, usize) -> Result<Option<String>> + Sync,
{
    let n = rows.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let weights: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| weight(i, j))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut graph = Graph::new(false);
    for row in rows {
        graph.add_node(row.element.clone());
    }
    for (&(i, j), &w) in pairs.iter().zip(weights.iter()) {
        let draw: f64 = rng.random();
        if w > params.thdw && w < params.thup && draw < params.prob {
            graph.add_edge(i, j, w, label(i, j)?)?;
        }
    }
    Ok(graph)
}

/// Network of catalog rows weighted by the metric distance between their
/// feature vectors (interval vectors for pitch catalogs).
pub fn pcs_network(catalog: &Catalog, params: &NetworkParams) -> Result<Graph> {
    feature_network(catalog, params)
}

/// Rhythm analogue of `pcs_network`: distances between duration vectors.
pub fn rhythm_network(catalog: &Catalog, params: &NetworkParams) -> Result<Graph> {
    feature_network(catalog, params)
}

fn feature_network(catalog: &Catalog, params: &NetworkParams) -> Result<Graph> {
    let features: Vec<IntervalVector> = (0..catalog.rows.len())
        .map(|i| {
            Ok(IntervalVector::from_counts(
                catalog.feature_vector(i)?.iter().map(|&v| v as u32).collect(),
            ))
        })
        .collect::<Result<_>>()?;
    threshold_network(
        &catalog.rows,
        params,
        |i, j| Ok(iv_distance(&features[i], &features[j], params.metric)?),
        |_, _| Ok(None),
    )
}

/// Network of minimal voice leadings between catalog elements; edges are
/// labelled with the connecting voice-leading operator, computed from the
/// lower to the higher node id.
pub fn vl_network(catalog: &Catalog, params: &NetworkParams) -> Result<Graph> {
    let elements = parsed_elements(catalog)?;
    threshold_network(
        &catalog.rows,
        params,
        |i, j| Ok(pair_distance(&elements[i], &elements[j], params.metric)?),
        |i, j| Ok(Some(ops_name_vl(&elements[i], &elements[j], params.metric)?.to_string())),
    )
}

/// Voice-leading network sliced by operator name: an edge exists exactly
/// when the distance operator connecting the two elements renders equal
/// to `name`.
pub fn vl_network_by_name(
    catalog: &Catalog,
    name: &str,
    metric: Metric,
) -> Result<Graph> {
    let elements = parsed_elements(catalog)?;
    let rows = &catalog.rows;
    let n = rows.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let hits: Vec<Option<(f64, String)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let op = ops_name_distance(&elements[i], &elements[j], metric)?;
            if op.to_string() == name {
                let w = pair_distance(&elements[i], &elements[j], metric)?;
                let label = ops_name_vl(&elements[i], &elements[j], metric)?.to_string();
                Ok(Some((w, label)))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    let mut graph = Graph::new(false);
    for row in rows {
        graph.add_node(row.element.clone());
    }
    for (&(i, j), hit) in pairs.iter().zip(hits.iter()) {
        if let Some((w, label)) = hit {
            if *w > 0.0 {
                graph.add_edge(i, j, *w, Some(label.clone()))?;
            }
        }
    }
    Ok(graph)
}

/// Network of minimal rhythm leadings between catalog elements.
pub fn r_lead_network(catalog: &Catalog, params: &NetworkParams) -> Result<Graph> {
    let cells: Vec<RhythmSeq> =
        (0..catalog.rows.len()).map(|i| Ok(catalog.rhythm(i)?)).collect::<Result<_>>()?;
    threshold_network(
        &catalog.rows,
        params,
        |i, j| Ok(rhythm_distance(&cells[i], &cells[j], params.metric)?),
        |_, _| Ok(None),
    )
}

fn parsed_elements(catalog: &Catalog) -> Result<Vec<PcSet>> {
    (0..catalog.rows.len()).map(|i| Ok(catalog.pcset(i)?)).collect()
}

/// Voice-leading distance that falls back to the non-bijective extension
/// when cardinalities differ.
fn pair_distance(a: &PcSet, b: &PcSet, metric: Metric) -> std::result::Result<f64, PitchError> {
    if a.cardinality() == b.cardinality() {
        vl_distance(a, b, metric)
    } else {
        crate::pitch::nonbij_distance(a, b, metric).map(|(d, _)| d)
    }
}

/// Ego network of a focal catalog row: edges from the ego to alters
/// within the ego thresholds, and a second graph with the edges among the
/// alters within the alter thresholds. Both graphs reuse the catalog row
/// indices as node ids.
#[allow(clippy::too_many_arguments)]
pub fn ego_network(
    label: &str,
    catalog: &Catalog,
    thup_e: f64,
    thdw_e: f64,
    thup: f64,
    thdw: f64,
    metric: Metric,
) -> Result<(Graph, Graph)> {
    if !valid_thresholds(thdw_e, thup_e) {
        return Err(NetworkError::BadThresholds { thdw: thdw_e, thup: thup_e });
    }
    if !valid_thresholds(thdw, thup) {
        return Err(NetworkError::BadThresholds { thdw, thup });
    }
    let ego =
        catalog.find(label).ok_or_else(|| NetworkError::NoSuchNode(label.to_string()))?;
    let features: Vec<IntervalVector> = (0..catalog.rows.len())
        .map(|i| {
            Ok(IntervalVector::from_counts(
                catalog.feature_vector(i)?.iter().map(|&v| v as u32).collect(),
            ))
        })
        .collect::<Result<_>>()?;
    let mut ego_graph = Graph::new(false);
    let mut alters_graph = Graph::new(false);
    for row in &catalog.rows {
        ego_graph.add_node(row.element.clone());
        alters_graph.add_node(row.element.clone());
    }
    let mut alters = Vec::new();
    for i in 0..catalog.rows.len() {
        if i == ego {
            continue;
        }
        let d = iv_distance(&features[ego], &features[i], metric)?;
        if d > thdw_e && d < thup_e {
            let (a, b) = (ego.min(i), ego.max(i));
            ego_graph.add_edge(a, b, d, None)?;
            alters.push(i);
        }
    }
    for (k, &i) in alters.iter().enumerate() {
        for &j in &alters[k + 1..] {
            let d = iv_distance(&features[i], &features[j], metric)?;
            if d > thdw && d < thup {
                alters_graph.add_edge(i.min(j), i.max(j), d, None)?;
            }
        }
    }
    Ok((ego_graph, alters_graph))
}

/// An ordered chord sequence in a common temperament.
#[derive(Clone, Debug)]
pub struct ChordSequence {
    pub tet: u32,
    pub chords: Vec<PcSet>,
}

#[derive(Serialize, Deserialize)]
struct ChordSequenceFile {
    #[serde(default = "default_tet")]
    tet: u32,
    chords: Vec<Vec<i64>>,
}

fn default_tet() -> u32 {
    12
}

impl ChordSequence {
    pub fn new(tet: u32, chords: Vec<PcSet>) -> Result<Self> {
        if chords.is_empty() {
            return Err(NetworkError::EmptySequence);
        }
        Ok(ChordSequence { tet, chords })
    }

    /// Parses the JSON ingestion format
    /// `{"tet":12,"chords":[[0,4,7],[7,11,2],...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ChordSequenceFile = serde_json::from_str(text)
            .map_err(|e| NetworkError::BadChordSequence(e.to_string()))?;
        if file.chords.is_empty() {
            return Err(NetworkError::EmptySequence);
        }
        let chords = file
            .chords
            .iter()
            .map(|pitches| PcSet::new(pitches, file.tet))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(ChordSequence { tet: file.tet, chords })
    }

    pub fn to_json(&self) -> String {
        let file = ChordSequenceFile {
            tet: self.tet,
            chords: self
                .chords
                .iter()
                .map(|c| c.pitches().iter().map(|&p| p as i64).collect())
                .collect(),
        };
        serde_json::to_string(&file).expect("serializable")
    }
}

/// Reads a chord sequence from a JSON file.
pub fn read_chord_sequence<P: AsRef<Path>>(path: P) -> Result<ChordSequence> {
    ChordSequence::from_json(&std::fs::read_to_string(path)?)
}

/// Catalog of the distinct normal-order chords of a sequence, named
/// `<nc>-<k>` within each cardinality, with interval-vector features.
pub fn score_dictionary(seq: &ChordSequence) -> Result<Catalog> {
    let mut canon: Vec<Vec<u32>> = Vec::new();
    for chord in &seq.chords {
        let no = chord.normal_order().pitches().to_vec();
        if !canon.contains(&no) {
            canon.push(no);
        }
    }
    canon.sort_by_key(|p| (p.len(), p.clone()));
    let mut per_card: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rows = Vec::new();
    for pitches in canon {
        let set = PcSet::with_flags(
            &pitches.iter().map(|&p| p as i64).collect::<Vec<_>>(),
            seq.tet,
            false,
            false,
        )?;
        let index = per_card.entry(pitches.len()).or_insert(0);
        *index += 1;
        rows.push(CatalogRow {
            name: format!("{}-{}", pitches.len(), index),
            element: set.to_string(),
            features: set.interval_vector().to_string(),
        });
    }
    Ok(Catalog { kind: CatalogKind::Pcs, tet: seq.tet, rows })
}

/// Result of a score or orchestration progression network.
#[derive(Clone, Debug)]
pub struct ProgressionNetwork {
    pub graph: Graph,
    /// Occurrences of each node in the sequence, aligned with node ids.
    pub counts: Vec<usize>,
    pub avgdeg: f64,
    pub modularity: f64,
    /// Community id per node from the undirected projection.
    pub partition: Vec<usize>,
}

/// Directed network of chord progressions: one node per distinct
/// normal-order chord, one edge per observed transition weighted by its
/// count. Edges are labelled with the voice-leading operator
/// (`general = true`) or the distance operator (`general = false`),
/// through the non-bijective extension when cardinalities differ.
pub fn score_network(
    seq: &ChordSequence,
    general: bool,
    metric: Metric,
) -> Result<ProgressionNetwork> {
    if seq.chords.is_empty() {
        return Err(NetworkError::EmptySequence);
    }
    let mut graph = Graph::new(true);
    let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut node_sets: Vec<PcSet> = Vec::new();
    let mut ids = Vec::with_capacity(seq.chords.len());
    for chord in &seq.chords {
        let no = chord.normal_order();
        let id = match index.get(no.pitches()) {
            Some(&id) => id,
            None => {
                let id = graph.add_node(no.to_string());
                index.insert(no.pitches().to_vec(), id);
                counts.push(0);
                node_sets.push(no.clone());
                id
            }
        };
        counts[id] += 1;
        ids.push(id);
    }
    let mut transitions: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for w in ids.windows(2) {
        *transitions.entry((w[0], w[1])).or_insert(0.0) += 1.0;
    }
    for (&(a, b), &count) in &transitions {
        let label = if general {
            ops_name_vl(&node_sets[a], &node_sets[b], metric)?.to_string()
        } else {
            ops_name_distance(&node_sets[a], &node_sets[b], metric)?.to_string()
        };
        graph.add_edge(a, b, count, Some(label))?;
    }
    let avgdeg = graph.average_degree();
    let (partition, q) = detect_communities(&graph, 0);
    Ok(ProgressionNetwork { graph, counts, avgdeg, modularity: q, partition })
}

/// Score network of the slice `[start, end)` of the sequence.
pub fn score_subnetwork(
    seq: &ChordSequence,
    start: usize,
    end: usize,
    general: bool,
    metric: Metric,
) -> Result<ProgressionNetwork> {
    let len = seq.chords.len();
    if start >= end || end > len {
        return Err(NetworkError::BadSlice { start, end, len });
    }
    let slice = ChordSequence { tet: seq.tet, chords: seq.chords[start..end].to_vec() };
    score_network(&slice, general, metric)
}

/// Per-beat instrumentation bit vector; `num` encodes the bits with the
/// first instrument as the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrchVector {
    pub bits: Vec<bool>,
    pub num: u64,
}

impl OrchVector {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.len() > 64 {
            return Err(NetworkError::TooManyInstruments(bits.len()));
        }
        let num = bits.iter().fold(0u64, |acc, &b| (acc << 1) | (b as u64));
        Ok(OrchVector { bits, num })
    }
}

/// Reads an orchestration table: a header row of instrument names, then
/// one 0/1 row per beat.
pub fn read_orchestral_csv<P: AsRef<Path>>(path: P) -> Result<(Vec<String>, Vec<OrchVector>)> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let instruments: Vec<String> = r.headers()?.iter().map(|s| s.to_string()).collect();
    let mut beats = Vec::new();
    for record in r.records() {
        let record = record?;
        let bits = record
            .iter()
            .map(|cell| match cell.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(NetworkError::BadOrchestraCell(other.to_string())),
            })
            .collect::<Result<Vec<bool>>>()?;
        beats.push(OrchVector::new(bits)?);
    }
    if beats.is_empty() {
        return Err(NetworkError::EmptyOrchestration);
    }
    Ok((instruments, beats))
}

/// Directed network of orchestration-vector transitions; node labels are
/// the binary encodings.
pub fn orchestral_network(seq: &[OrchVector]) -> Result<ProgressionNetwork> {
    if seq.is_empty() {
        return Err(NetworkError::EmptyOrchestration);
    }
    let mut graph = Graph::new(true);
    let mut index: BTreeMap<u64, usize> = BTreeMap::new();
    let mut counts = Vec::new();
    let mut ids = Vec::with_capacity(seq.len());
    for v in seq {
        let id = match index.get(&v.num) {
            Some(&id) => id,
            None => {
                let id = graph.add_node(v.num.to_string());
                index.insert(v.num, id);
                counts.push(0);
                id
            }
        };
        counts[id] += 1;
        ids.push(id);
    }
    let mut transitions: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for w in ids.windows(2) {
        *transitions.entry((w[0], w[1])).or_insert(0.0) += 1.0;
    }
    for (&(a, b), &count) in &transitions {
        graph.add_edge(a, b, count, None)?;
    }
    let avgdeg = graph.average_degree();
    let (partition, q) = detect_communities(&graph, 0);
    Ok(ProgressionNetwork { graph, counts, avgdeg, modularity: q, partition })
}

/// Summary statistics written alongside network CSV exports.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NetworkStats {
    pub nodes: usize,
    pub edges: usize,
    pub avgdeg: f64,
    pub modularity: f64,
    pub communities: usize,
    pub seed: u64,
}

impl NetworkStats {
    pub fn from_graph(graph: &Graph, seed: u64) -> Self {
        let (partition, q) = detect_communities(graph, seed);
        let communities = partition.iter().copied().max().map_or(0, |m| m + 1);
        NetworkStats {
            nodes: graph.node_count(),
            edges: graph.edge_count(),
            avgdeg: graph.average_degree(),
            modularity: q,
            communities,
            seed,
        }
    }
}
