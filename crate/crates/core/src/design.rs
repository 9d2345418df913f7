//! Network-driven compositional design: optimal closed routes through a
//! harmony network (Chinese postman), scale-free scaffolds by
//! preferential attachment, and the assembly of pitch and rhythm design
//! sequences into a scored event list.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError};
use crate::graph::{Graph, GraphError};
use crate::metric::Metric;
use crate::network::{vl_network, vl_network_by_name, NetworkError, NetworkParams};
use crate::pitch::{parse_pcset, PitchError};
use crate::rhythm::{Duration, RhythmError, RhythmSeq};
use crate::sonify::{NoteEvent, ScoreEvents, SonifyError, DEFAULT_VELOCITY};

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("route start node {0} does not exist")]
    BadStart(usize),
    #[error("preferential attachment needs 1 <= edges-per-node < nodes (got m={m}, n={n})")]
    BadAttachment { n: usize, m: usize },
    #[error("scaffold of {scaffold} nodes exceeds the {reference} reference nodes")]
    ScaffoldTooLarge { scaffold: usize, reference: usize },
    #[error("design sequence is empty")]
    EmptyDesign,
    #[error("scale factor {0} is not a usable positive rational")]
    BadFactor(f64),
    #[error(transparent)]
    Pitch(#[from] PitchError),
    #[error(transparent)]
    Rhythm(#[from] RhythmError),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sonify(#[from] SonifyError),
}

type Result<T> = std::result::Result<T, DesignError>;

/// How the odd-node matching of a postman route was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchingMode {
    /// Exact minimum-weight perfect matching (up to 14 odd nodes).
    Exact,
    /// Greedy nearest-pair matching beyond that bound.
    Greedy,
    /// No augmentation was needed (Eulerian input).
    None,
}

/// A closed walk covering every edge at least once.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PostmanRoute {
    pub nodes: Vec<usize>,
    pub cost: f64,
    pub matching: MatchingMode,
}

const EXACT_MATCHING_LIMIT: usize = 14;

/// Solves the Chinese postman problem on a connected undirected graph
/// with positive weights: odd-degree nodes are paired by minimum-weight
/// matching over shortest-path distances, the matched paths are
/// duplicated, and an Eulerian circuit is extracted from `start`.
pub fn chinese_postman(graph: &Graph, start: usize) -> Result<PostmanRoute> {
    if start >= graph.node_count() {
        return Err(DesignError::BadStart(start));
    }
    let n = graph.node_count();
    let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for e in graph.edges() {
        adjacency[e.source].push((e.target, e.weight));
        adjacency[e.target].push((e.source, e.weight));
    }
    // connectivity over all nodes
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for &(w, _) in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(DesignError::Disconnected);
    }

    // multigraph edge list: original edges plus duplicated matching paths
    let mut multi: Vec<(usize, usize, f64)> =
        graph.edges().iter().map(|e| (e.source, e.target, e.weight)).collect();

    let mut degree = vec![0usize; n];
    for &(a, b, _) in &multi {
        degree[a] += 1;
        degree[b] += 1;
    }
    let odd: Vec<usize> = (0..n).filter(|&v| degree[v] % 2 == 1).collect();
    let matching = if odd.is_empty() {
        MatchingMode::None
    } else {
        let (dist, prev) = all_shortest_paths(&adjacency, &odd);
        let pairs = if odd.len() <= EXACT_MATCHING_LIMIT {
            exact_matching(&odd, &dist)
        } else {
            greedy_matching(&odd, &dist)
        };
        for &(i, j) in &pairs {
            // duplicate every edge along the shortest path between the
            // matched odd nodes
            let mut v = odd[j];
            while v != odd[i] {
                let (p, w) = prev[i][&v];
                multi.push((p, v, w));
                v = p;
            }
        }
        if odd.len() <= EXACT_MATCHING_LIMIT {
            MatchingMode::Exact
        } else {
            MatchingMode::Greedy
        }
    };

    let nodes = eulerian_circuit(n, &multi, start);
    let cost = multi.iter().map(|&(_, _, w)| w).sum();
    Ok(PostmanRoute { nodes, cost, matching })
}

/// Dijkstra from every odd node; returns the distance matrix between odd
/// nodes and per-source predecessor maps for path reconstruction.
#[allow(clippy::type_complexity)]
fn all_shortest_paths(
    adjacency: &[Vec<(usize, f64)>],
    sources: &[usize],
) -> (Vec<Vec<f64>>, Vec<BTreeMap<usize, (usize, f64)>>) {
    let n = adjacency.len();
    let mut dist_rows = Vec::with_capacity(sources.len());
    let mut prev_rows = Vec::with_capacity(sources.len());
    for &src in sources {
        let mut dist = vec![f64::INFINITY; n];
        let mut prev: BTreeMap<usize, (usize, f64)> = BTreeMap::new();
        let mut heap = std::collections::BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(HeapItem { cost: 0.0, node: src });
        while let Some(HeapItem { cost, node }) = heap.pop() {
            if cost > dist[node] {
                continue;
            }
            for &(next, w) in &adjacency[node] {
                let cand = cost + w;
                if cand < dist[next] {
                    dist[next] = cand;
                    prev.insert(next, (node, w));
                    heap.push(HeapItem { cost: cand, node: next });
                }
            }
        }
        dist_rows.push(sources.iter().map(|&t| dist[t]).collect());
        prev_rows.push(prev);
    }
    (dist_rows, prev_rows)
}

struct HeapItem {
    cost: f64,
    node: usize,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.cost == other.cost && self.node == other.node
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on cost, ties by node id
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// Exact minimum-weight perfect matching over the odd nodes by bitmask
/// dynamic programming.
fn exact_matching(odd: &[usize], dist: &[Vec<f64>]) -> Vec<(usize, usize)> {
    let k = odd.len();
    let full = 1usize << k;
    let mut dp = vec![f64::INFINITY; full];
    let mut choice: Vec<Option<(usize, usize)>> = vec![None; full];
    dp[0] = 0.0;
    for mask in 1..full {
        let i = mask.trailing_zeros() as usize;
        if mask & (1 << i) == 0 {
            continue;
        }
        let rest = mask & !(1 << i);
        let mut j_bits = rest;
        while j_bits != 0 {
            let j = j_bits.trailing_zeros() as usize;
            j_bits &= j_bits - 1;
            let prev_mask = rest & !(1 << j);
            let cand = dp[prev_mask] + dist[i][j];
            if cand < dp[mask] {
                dp[mask] = cand;
                choice[mask] = Some((i, j));
            }
        }
    }
    let mut pairs = Vec::with_capacity(k / 2);
    let mut mask = full - 1;
    while mask != 0 {
        let (i, j) = choice[mask].expect("matching exists");
        pairs.push((i, j));
        mask &= !(1 << i);
        mask &= !(1 << j);
    }
    pairs
}

/// Greedy 2-approximation: repeatedly match the closest unmatched pair.
fn greedy_matching(odd: &[usize], dist: &[Vec<f64>]) -> Vec<(usize, usize)> {
    let k = odd.len();
    let mut pairs_by_cost: Vec<(f64, usize, usize)> = Vec::new();
    for (i, row) in dist.iter().enumerate() {
        for (j, &d) in row.iter().enumerate().skip(i + 1) {
            pairs_by_cost.push((d, i, j));
        }
    }
    pairs_by_cost.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used = vec![false; k];
    let mut pairs = Vec::with_capacity(k / 2);
    for (_, i, j) in pairs_by_cost {
        if !used[i] && !used[j] {
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
        }
    }
    pairs
}

/// Hierholzer's algorithm on the multigraph; adjacency is visited in
/// ascending (neighbor, edge) order for determinism.
fn eulerian_circuit(n: usize, multi: &[(usize, usize, f64)], start: usize) -> Vec<usize> {
    let mut incidence: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (idx, &(a, b, _)) in multi.iter().enumerate() {
        incidence[a].push((b, idx));
        incidence[b].push((a, idx));
    }
    for list in &mut incidence {
        list.sort_unstable();
    }
    let mut used = vec![false; multi.len()];
    let mut cursor = vec![0usize; n];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(multi.len() + 1);
    while let Some(&v) = stack.last() {
        let mut advanced = false;
        while cursor[v] < incidence[v].len() {
            let (next, edge) = incidence[v][cursor[v]];
            cursor[v] += 1;
            if !used[edge] {
                used[edge] = true;
                stack.push(next);
                advanced = true;
                break;
            }
        }
        if !advanced {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    circuit
}

/// Scale-free graph by preferential attachment: a star on `nedges` seed
/// nodes, then each arriving node attaches `nedges` edges to distinct
/// existing nodes with probability proportional to degree.
pub fn barabasi_albert(nnodes: usize, nedges: usize, seed: u64) -> Result<Graph> {
    if nedges == 0 || nedges >= nnodes {
        return Err(DesignError::BadAttachment { n: nnodes, m: nedges });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = Graph::new(false);
    for i in 0..nnodes {
        graph.add_node(i.to_string());
    }
    // one entry per edge endpoint; sampling from it is degree-weighted
    let mut endpoints: Vec<usize> = Vec::new();
    for leaf in 1..nedges {
        graph.add_edge(0, leaf, 1.0, None)?;
        endpoints.push(0);
        endpoints.push(leaf);
    }
    for arrival in nedges..nnodes {
        let mut targets: Vec<usize> = Vec::with_capacity(nedges);
        while targets.len() < nedges {
            let pick = if endpoints.is_empty() {
                rng.random_range(0..arrival)
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            if !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        targets.sort_unstable();
        for &t in &targets {
            graph.add_edge(arrival, t, 1.0, None)?;
            endpoints.push(arrival);
            endpoints.push(t);
        }
    }
    Ok(graph)
}

/// Probability slice of a voice-leading network.
#[derive(Clone, Copy, Debug)]
pub struct ProbSlice {
    pub thdw: f64,
    pub thup: f64,
    pub prob: f64,
}

/// Selection mode for `network_harmony_gen`.
#[derive(Clone, Debug)]
pub enum HarmonyGenMode {
    /// Union of operator-name slices.
    ByName(Vec<String>),
    /// Union of seeded probabilistic threshold slices; slice `k` draws
    /// from `seed + k`.
    ByProb(Vec<ProbSlice>),
}

/// Builds a harmony network over a catalog as a union of voice-leading
/// slices, either by operator name or by probabilistic thresholds.
pub fn network_harmony_gen(
    catalog: &Catalog,
    mode: &HarmonyGenMode,
    metric: Metric,
    seed: u64,
) -> Result<Graph> {
    let mut union = Graph::new(false);
    for row in &catalog.rows {
        union.add_node(row.element.clone());
    }
    let mut present: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    let slices: Vec<Graph> = match mode {
        HarmonyGenMode::ByName(names) => names
            .iter()
            .map(|name| vl_network_by_name(catalog, name, metric))
            .collect::<std::result::Result<_, _>>()?,
        HarmonyGenMode::ByProb(slices) => slices
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let params = NetworkParams::new(
                    s.thup,
                    s.thdw,
                    metric,
                    s.prob,
                    seed.wrapping_add(k as u64),
                )?;
                vl_network(catalog, &params)
            })
            .collect::<std::result::Result<_, _>>()?,
    };
    for slice in slices {
        for e in slice.edges() {
            if present.insert((e.source, e.target), ()).is_none() {
                union.add_edge(e.source, e.target, e.weight, e.label.clone())?;
            }
        }
    }
    Ok(union)
}

/// An ordered sequence of element labels produced by a design run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignSequence {
    pub items: Vec<String>,
}

impl DesignSequence {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Output of a design run: the label sequence plus the postman route
/// metadata of the scaffold walk.
#[derive(Clone, Debug)]
pub struct DesignRun {
    pub sequence: DesignSequence,
    pub route: PostmanRoute,
}

/// Generates a Barabasi-Albert scaffold, maps its nodes onto the
/// reference network by degree rank (descending, ascending when
/// `reverse`; `nstart` rotates the reference ranking), and emits the
/// reference labels along the scaffold's Chinese-postman route.
pub fn harmonic_design(
    reference: &Graph,
    nnodes: usize,
    nedges: usize,
    nstart: usize,
    seed: u64,
    reverse: bool,
) -> Result<DesignRun> {
    design_from_network(reference, nnodes, nedges, nstart, seed, reverse)
}

/// `harmonic_design` over a rhythm-catalog network: identical mapping,
/// rhythm-cell labels.
pub fn rhythmic_design(
    reference: &Graph,
    nnodes: usize,
    nedges: usize,
    nstart: usize,
    seed: u64,
    reverse: bool,
) -> Result<DesignRun> {
    design_from_network(reference, nnodes, nedges, nstart, seed, reverse)
}

fn design_from_network(
    reference: &Graph,
    nnodes: usize,
    nedges: usize,
    nstart: usize,
    seed: u64,
    reverse: bool,
) -> Result<DesignRun> {
    let nref = reference.node_count();
    if nnodes > nref {
        return Err(DesignError::ScaffoldTooLarge { scaffold: nnodes, reference: nref });
    }
    if nnodes == 0 {
        return Err(DesignError::EmptyDesign);
    }
    let ref_ranked = rank_by_degree(reference, false);
    if nnodes == 1 {
        // degenerate scaffold: a single node, route of one stop
        let label = reference.nodes()[ref_ranked[nstart % nref]].label.clone();
        return Ok(DesignRun {
            sequence: DesignSequence { items: vec![label] },
            route: PostmanRoute { nodes: vec![0], cost: 0.0, matching: MatchingMode::None },
        });
    }
    let scaffold = barabasi_albert(nnodes, nedges, seed)?;
    let scaffold_ranked = rank_by_degree(&scaffold, reverse);
    // k-th ranked scaffold node -> (nstart + k)-th ranked reference node
    let mut assignment: Vec<usize> = vec![0; nnodes];
    for (k, &node) in scaffold_ranked.iter().enumerate() {
        assignment[node] = ref_ranked[(nstart + k) % nref];
    }
    let route = chinese_postman(&scaffold, scaffold_ranked[0])?;
    let items = route
        .nodes
        .iter()
        .map(|&v| reference.nodes()[assignment[v]].label.clone())
        .collect();
    Ok(DesignRun { sequence: DesignSequence { items }, route })
}

/// Node ids sorted by degree (descending unless `ascending`), ties by id.
fn rank_by_degree(graph: &Graph, ascending: bool) -> Vec<usize> {
    let degrees = graph.degrees();
    let mut ids: Vec<usize> = (0..graph.node_count()).collect();
    ids.sort_by_key(|&v| {
        let d = degrees[v] as i64;
        (if ascending { d } else { -d }, v)
    });
    ids
}

/// Zips a harmonic design with a rhythmic design into a scored event
/// list: chord `k` sounds for the `k`-th duration of the flattened,
/// cycled rhythm cells, scaled by `fac`. Pitch classes map to MIDI notes
/// from middle C upward.
pub fn score_design(
    pitches: &DesignSequence,
    durations: &DesignSequence,
    fac: f64,
    tet: u32,
) -> Result<ScoreEvents> {
    if pitches.items.is_empty() || durations.items.is_empty() {
        return Err(DesignError::EmptyDesign);
    }
    let factor: Ratio<i64> = Ratio::approximate_float(fac)
        .filter(|f| *f > Ratio::from_integer(0))
        .ok_or(DesignError::BadFactor(fac))?;
    let mut pool: Vec<Duration> = Vec::new();
    for cell in &durations.items {
        pool.extend(RhythmSeq::parse(cell)?.durations().iter().copied());
    }
    let mut events = Vec::with_capacity(pitches.items.len());
    for (k, chord_text) in pitches.items.iter().enumerate() {
        let chord = parse_pcset(chord_text, tet)?;
        let notes: Vec<u8> = chord
            .pitches()
            .iter()
            .map(|&p| {
                let note = 60 + p as i64;
                u8::try_from(note).map_err(|_| SonifyError::NoteRange(note))
            })
            .collect::<std::result::Result<_, _>>()
            .map_err(DesignError::Sonify)?;
        let base = pool[k % pool.len()];
        let scaled = Duration::from_rational(base.value() * factor)?;
        events.push(NoteEvent::new(notes, scaled, DEFAULT_VELOCITY).map_err(DesignError::Sonify)?);
    }
    Ok(ScoreEvents { events })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{pcs_dictionary, OrderMode};

    fn graph_from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Graph {
        let mut g = Graph::new(false);
        for i in 0..n {
            g.add_node(i.to_string());
        }
        for &(a, b, w) in edges {
            g.add_edge(a, b, w, None).unwrap();
        }
        g
    }

    fn check_route(g: &Graph, route: &PostmanRoute, start: usize) {
        assert_eq!(*route.nodes.first().unwrap(), start);
        assert_eq!(*route.nodes.last().unwrap(), start);
        // every original edge is traversed at least once
        let mut covered = vec![false; g.edge_count()];
        for w in route.nodes.windows(2) {
            for (idx, e) in g.edges().iter().enumerate() {
                if (e.source, e.target) == (w[0], w[1]) || (e.source, e.target) == (w[1], w[0]) {
                    covered[idx] = true;
                }
            }
        }
        assert!(covered.iter().all(|&c| c), "route misses an edge");
    }

    #[test]
    fn eulerian_cycle_costs_total_weight() {
        let c4 = graph_from_edges(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]);
        let route = chinese_postman(&c4, 0).unwrap();
        assert_eq!(route.cost, 4.0);
        assert_eq!(route.matching, MatchingMode::None);
        assert_eq!(route.nodes.len(), 5);
        check_route(&c4, &route, 0);
    }

    #[test]
    fn path_graph_repeats_an_edge() {
        let p3 = graph_from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        let route = chinese_postman(&p3, 0).unwrap();
        assert_eq!(route.cost, 4.0);
        assert_eq!(route.matching, MatchingMode::Exact);
        check_route(&p3, &route, 0);
        // from the middle node the cost is identical
        let route = chinese_postman(&p3, 1).unwrap();
        assert_eq!(route.cost, 4.0);
    }

    #[test]
    fn disconnected_rejected() {
        let g = graph_from_edges(4, &[(0, 1, 1.0), (2, 3, 1.0)]);
        assert!(matches!(chinese_postman(&g, 0), Err(DesignError::Disconnected)));
        assert!(matches!(chinese_postman(&g, 9), Err(DesignError::BadStart(9))));
    }

    /// Exact CPP oracle: every edge is traversed once or twice in an
    /// optimal route, so minimize over duplication subsets that make all
    /// degrees even.
    fn cpp_oracle(g: &Graph) -> f64 {
        let m = g.edge_count();
        let total: f64 = g.edges().iter().map(|e| e.weight).sum();
        let mut best = f64::INFINITY;
        'subset: for mask in 0..(1u32 << m) {
            let mut degree = vec![0usize; g.node_count()];
            let mut extra = 0.0;
            for (idx, e) in g.edges().iter().enumerate() {
                let copies = 1 + ((mask >> idx) & 1) as usize;
                degree[e.source] += copies;
                degree[e.target] += copies;
                if copies == 2 {
                    extra += e.weight;
                }
            }
            for d in degree {
                if d % 2 == 1 {
                    continue 'subset;
                }
            }
            best = best.min(total + extra);
        }
        best
    }

    #[test]
    fn postman_matches_oracle_on_small_corpus() {
        // all connected spanning graphs on 3..=5 nodes with <= 6 edges,
        // pseudo-random positive weights
        let mut checked = 0usize;
        for n in 3..=5usize {
            let mut all_pairs = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    all_pairs.push((i, j));
                }
            }
            let p = all_pairs.len();
            for mask in 0u32..(1 << p) {
                let count = mask.count_ones() as usize;
                if count < n - 1 || count > 6 {
                    continue;
                }
                let edges: Vec<(usize, usize, f64)> = all_pairs
                    .iter()
                    .enumerate()
                    .filter(|&(idx, _)| mask >> idx & 1 == 1)
                    .map(|(idx, &(a, b))| (a, b, 1.0 + ((idx * 7 + n) % 5) as f64 * 0.5))
                    .collect();
                let g = graph_from_edges(n, &edges);
                match chinese_postman(&g, 0) {
                    Ok(route) => {
                        let oracle = cpp_oracle(&g);
                        assert!(
                            (route.cost - oracle).abs() < 1e-9,
                            "n={n} mask={mask}: got {} want {oracle}",
                            route.cost
                        );
                        check_route(&g, &route, 0);
                        checked += 1;
                    }
                    Err(DesignError::Disconnected) => {}
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
        assert!(checked > 300, "corpus too small: {checked}");
    }

    #[test]
    fn ba_tree_for_single_attachment() {
        let g = barabasi_albert(5, 1, 3).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edge_count(), 4);
        assert!(chinese_postman(&g, 0).is_ok()); // connected
    }

    #[test]
    fn ba_edge_count_and_determinism() {
        for (n, m, seed) in [(10usize, 2usize, 0u64), (20, 3, 7), (12, 5, 99)] {
            let g = barabasi_albert(n, m, seed).unwrap();
            assert_eq!(g.node_count(), n);
            assert_eq!(g.edge_count(), m * (n - m) + (m - 1));
            // handshake
            let degree_sum: usize = g.degrees().iter().sum();
            assert_eq!(degree_sum, 2 * g.edge_count());
            // no duplicate edges
            let mut pairs: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|e| (e.source.min(e.target), e.source.max(e.target)))
                .collect();
            pairs.sort_unstable();
            let before = pairs.len();
            pairs.dedup();
            assert_eq!(pairs.len(), before);
            // determinism
            let again = barabasi_albert(n, m, seed).unwrap();
            assert_eq!(g.edges(), again.edges());
            // connectivity
            assert!(chinese_postman(&g, 0).is_ok());
        }
        assert!(matches!(
            barabasi_albert(5, 5, 0),
            Err(DesignError::BadAttachment { .. })
        ));
        assert!(matches!(
            barabasi_albert(5, 0, 0),
            Err(DesignError::BadAttachment { .. })
        ));
    }

    #[test]
    fn harmony_gen_modes() {
        let (catalog, _) = pcs_dictionary(3, 12, OrderMode::Prime, None).unwrap();
        let metric = Metric::Euclidean;
        let by_name = network_harmony_gen(
            &catalog,
            &HarmonyGenMode::ByName(vec!["O(1)".into()]),
            metric,
            0,
        )
        .unwrap();
        let direct = vl_network_by_name(&catalog, "O(1)", metric).unwrap();
        assert_eq!(by_name.edges(), direct.edges());

        // prob=1 slice reproduces the thresholded voice-leading network
        let by_prob = network_harmony_gen(
            &catalog,
            &HarmonyGenMode::ByProb(vec![ProbSlice { thdw: 0.0, thup: 1.5, prob: 1.0 }]),
            metric,
            5,
        )
        .unwrap();
        let params = NetworkParams::new(1.5, 0.0, metric, 1.0, 5).unwrap();
        let direct = vl_network(&catalog, &params).unwrap();
        assert_eq!(by_prob.edges(), direct.edges());

        // disjoint name slices form a disjoint union
        let two = network_harmony_gen(
            &catalog,
            &HarmonyGenMode::ByName(vec!["O(1)".into(), "O(2)".into()]),
            metric,
            0,
        )
        .unwrap();
        let o1 = vl_network_by_name(&catalog, "O(1)", metric).unwrap();
        let o2 = vl_network_by_name(&catalog, "O(2)", metric).unwrap();
        assert_eq!(two.edge_count(), o1.edge_count() + o2.edge_count());
    }

    #[test]
    fn design_determinism_and_labels() {
        let (catalog, _) = pcs_dictionary(3, 12, OrderMode::Prime, None).unwrap();
        let reference = network_harmony_gen(
            &catalog,
            &HarmonyGenMode::ByName(vec!["O(1)".into(), "O(2)".into()]),
            Metric::Euclidean,
            0,
        )
        .unwrap();
        let a = harmonic_design(&reference, 6, 2, 0, 11, false).unwrap();
        let b = harmonic_design(&reference, 6, 2, 0, 11, false).unwrap();
        assert_eq!(a.sequence, b.sequence);
        assert!(!a.sequence.items.is_empty());
        let labels: Vec<&str> =
            reference.nodes().iter().map(|n| n.label.as_str()).collect();
        for item in &a.sequence.items {
            assert!(labels.contains(&item.as_str()), "foreign label {item}");
        }
        // route is closed
        assert_eq!(a.route.nodes.first(), a.route.nodes.last());

        // reverse permutes the emitted label multiset structure
        let r = harmonic_design(&reference, 6, 2, 0, 11, true).unwrap();
        let mut fwd: Vec<usize> = a
            .sequence
            .items
            .iter()
            .map(|l| labels.iter().position(|x| x == l).unwrap())
            .collect();
        let mut rev: Vec<usize> = r
            .sequence
            .items
            .iter()
            .map(|l| labels.iter().position(|x| x == l).unwrap())
            .collect();
        assert_ne!(fwd, rev);
        fwd.sort_unstable();
        fwd.dedup();
        rev.sort_unstable();
        rev.dedup();
        assert_eq!(fwd.len(), rev.len());
    }

    #[test]
    fn design_degenerate_and_errors() {
        let (catalog, _) = pcs_dictionary(3, 12, OrderMode::Prime, None).unwrap();
        let reference = network_harmony_gen(
            &catalog,
            &HarmonyGenMode::ByName(vec!["O(1)".into()]),
            Metric::Euclidean,
            0,
        )
        .unwrap();
        let single = harmonic_design(&reference, 1, 1, 2, 0, false).unwrap();
        assert_eq!(single.sequence.items.len(), 1);
        assert!(matches!(
            harmonic_design(&reference, 100, 2, 0, 0, false),
            Err(DesignError::ScaffoldTooLarge { .. })
        ));
    }

    #[test]
    fn score_design_zips_and_scales() {
        let pitches = DesignSequence {
            items: vec!["[0,4,7]".into(), "[7,11,2]".into(), "[0,4,7]".into(), "[9,0,4]".into()],
        };
        let durations = DesignSequence { items: vec!["[1/4,1/8]".into()] };
        let events = score_design(&pitches, &durations, 1.0, 12).unwrap();
        assert_eq!(events.events.len(), 4);
        assert_eq!(events.events[0].notes, vec![60, 64, 67]);
        assert_eq!(events.events[0].duration, "1/4");
        assert_eq!(events.events[1].duration, "1/8");
        assert_eq!(events.events[2].duration, "1/4"); // cycled
        assert_eq!(events.events[3].duration, "1/8");

        let doubled = score_design(&pitches, &durations, 2.0, 12).unwrap();
        assert_eq!(doubled.events[0].duration, "1/2");
        assert_eq!(doubled.events[1].duration, "1/4");

        assert!(matches!(
            score_design(&pitches, &durations, 0.0, 12),
            Err(DesignError::BadFactor(_))
        ));
    }
}
