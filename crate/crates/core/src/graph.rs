//! Weighted, optionally directed graphs with labelled nodes and edges,
//! Gephi-style CSV export, and deterministic greedy modularity
//! maximization (Louvain scheme) for community detection.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge endpoint {0} does not reference an existing node")]
    BadEndpoint(usize),
    #[error("edge weight must be positive and finite, got {0}")]
    BadWeight(f64),
    #[error("no node labelled {0:?}")]
    NoSuchNode(String),
    #[error("graph file has unexpected header {0:?}")]
    BadHeader(String),
    #[error("malformed graph record {0:?}")]
    BadRecord(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, GraphError>;

#[derive(Clone, Debug, PartialEq)]
pub struct GraphNode {
    pub id: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
    pub label: Option<String>,
}

/// Node/edge list graph. Node ids are the positions in the node vector.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    pub directed: bool,
    nodes: Vec<GraphNode>,
    edges: Vec<GraphEdge>,
}

impl Graph {
    pub fn new(directed: bool) -> Self {
        Graph { directed, nodes: Vec::new(), edges: Vec::new() }
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> usize {
        let id = self.nodes.len();
        self.nodes.push(GraphNode { id, label: label.into() });
        id
    }

    pub fn add_edge(
        &mut self,
        source: usize,
        target: usize,
        weight: f64,
        label: Option<String>,
    ) -> Result<()> {
        if source >= self.nodes.len() {
            return Err(GraphError::BadEndpoint(source));
        }
        if target >= self.nodes.len() {
            return Err(GraphError::BadEndpoint(target));
        }
        if !(weight.is_finite() && weight > 0.0) {
            return Err(GraphError::BadWeight(weight));
        }
        self.edges.push(GraphEdge { source, target, weight, label });
        Ok(())
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.label == label)
    }

    /// Unweighted degree per node; in directed graphs both endpoints
    /// count, and a self-loop contributes 2.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.nodes.len()];
        for e in &self.edges {
            deg[e.source] += 1;
            deg[e.target] += 1;
        }
        deg
    }

    /// Merges parallel and reciprocal edges into an undirected weighted
    /// adjacency (self-loops kept at the diagonal).
    pub fn undirected_adjacency(&self) -> Vec<BTreeMap<usize, f64>> {
        let mut adj: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); self.nodes.len()];
        for e in &self.edges {
            if e.source == e.target {
                *adj[e.source].entry(e.source).or_insert(0.0) += e.weight;
            } else {
                *adj[e.source].entry(e.target).or_insert(0.0) += e.weight;
                *adj[e.target].entry(e.source).or_insert(0.0) += e.weight;
            }
        }
        adj
    }

    /// Average degree of the undirected projection: `2 |E| / |N|` with
    /// distinct unordered pairs (and self-loops) counted once.
    pub fn average_degree(&self) -> f64 {
        if self.nodes.is_empty() {
            return 0.0;
        }
        let adj = self.undirected_adjacency();
        let mut pairs = 0usize;
        for (i, row) in adj.iter().enumerate() {
            pairs += row.keys().filter(|&&j| j >= i).count();
        }
        2.0 * pairs as f64 / self.nodes.len() as f64
    }

    /// Writes `nodes.csv` (`Id,Label`) and `edges.csv`
    /// (`Source,Target,Weight[,Label]`).
    pub fn write_csv<P: AsRef<Path>, Q: AsRef<Path>>(
        &self,
        nodes_path: P,
        edges_path: Q,
    ) -> Result<()> {
        self.write_nodes_csv(nodes_path)?;
        self.write_edges_csv(edges_path)
    }

    pub fn write_nodes_csv<P: AsRef<Path>>(&self, nodes_path: P) -> Result<()> {
        let mut nw = csv::Writer::from_path(nodes_path)?;
        nw.write_record(["Id", "Label"])?;
        for n in &self.nodes {
            nw.write_record([n.id.to_string(), n.label.clone()])?;
        }
        nw.flush()?;
        Ok(())
    }

    pub fn write_edges_csv<P: AsRef<Path>>(&self, edges_path: P) -> Result<()> {
        let labelled = self.edges.iter().any(|e| e.label.is_some());
        let mut ew = csv::Writer::from_path(edges_path)?;
        if labelled {
            ew.write_record(["Source", "Target", "Weight", "Label"])?;
        } else {
            ew.write_record(["Source", "Target", "Weight"])?;
        }
        for e in &self.edges {
            let base =
                [e.source.to_string(), e.target.to_string(), e.weight.to_string()];
            if labelled {
                let mut rec = base.to_vec();
                rec.push(e.label.clone().unwrap_or_default());
                ew.write_record(&rec)?;
            } else {
                ew.write_record(&base)?;
            }
        }
        ew.flush()?;
        Ok(())
    }

    /// Reads a graph back from the CSV pair written by `write_csv`.
    pub fn read_csv<P: AsRef<Path>, Q: AsRef<Path>>(
        nodes_path: P,
        edges_path: Q,
        directed: bool,
    ) -> Result<Graph> {
        let mut graph = Graph::new(directed);
        let mut nr = csv::ReaderBuilder::new().has_headers(true).from_path(nodes_path)?;
        let header = nr.headers()?.clone();
        if header.iter().collect::<Vec<_>>() != ["Id", "Label"] {
            return Err(GraphError::BadHeader(format!("{header:?}")));
        }
        for record in nr.records() {
            let record = record?;
            let id: usize = record
                .get(0)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| GraphError::BadRecord(format!("{record:?}")))?;
            if id != graph.nodes.len() {
                return Err(GraphError::BadRecord(format!("non-contiguous id {id}")));
            }
            graph.add_node(record.get(1).unwrap_or_default());
        }
        let mut er = csv::ReaderBuilder::new().has_headers(true).from_path(edges_path)?;
        let eh = er.headers()?.clone();
        let cols: Vec<&str> = eh.iter().collect();
        let labelled = match cols.as_slice() {
            ["Source", "Target", "Weight"] => false,
            ["Source", "Target", "Weight", "Label"] => true,
            _ => return Err(GraphError::BadHeader(format!("{eh:?}"))),
        };
        for record in er.records() {
            let record = record?;
            let bad = || GraphError::BadRecord(format!("{record:?}"));
            let source: usize = record.get(0).and_then(|v| v.parse().ok()).ok_or_else(bad)?;
            let target: usize = record.get(1).and_then(|v| v.parse().ok()).ok_or_else(bad)?;
            let weight: f64 = record.get(2).and_then(|v| v.parse().ok()).ok_or_else(bad)?;
            let label = if labelled {
                record.get(3).filter(|s| !s.is_empty()).map(|s| s.to_string())
            } else {
                None
            };
            graph.add_edge(source, target, weight, label)?;
        }
        Ok(graph)
    }
}

/// Weighted modularity of a partition over the undirected projection.
/// Self-loops contribute twice to their node's degree, matching the
/// standard convention. Graphs without edges score 0.
pub fn modularity(graph: &Graph, partition: &[usize]) -> f64 {
    let adj = graph.undirected_adjacency();
    modularity_adj(&adj, partition)
}

fn modularity_adj(adj: &[BTreeMap<usize, f64>], partition: &[usize]) -> f64 {
    let strengths: Vec<f64> = adj
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter().map(|(&j, &w)| if j == i { 2.0 * w } else { w }).sum()
        })
        .collect();
    let two_m: f64 = strengths.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut intra = 0.0; // sum of A_ij over ordered same-community pairs
    for (i, row) in adj.iter().enumerate() {
        for (&j, &w) in row.iter() {
            if partition[i] == partition[j] {
                intra += if j == i { 2.0 * w } else { w };
            }
        }
    }
    let mut community_strength: BTreeMap<usize, f64> = BTreeMap::new();
    for (i, &c) in partition.iter().enumerate() {
        *community_strength.entry(c).or_insert(0.0) += strengths[i];
    }
    let penalty: f64 =
        community_strength.values().map(|&s| (s / two_m) * (s / two_m)).sum();
    intra / two_m - penalty
}

/// Louvain community detection on the undirected weighted projection.
/// Nodes are visited in ascending id order and ties broken by lowest
/// community id, so the result is deterministic; `_seed` is kept for
/// interface parity and recorded by callers. Returns the community id
/// per node (relabelled by first appearance) and the modularity.
pub fn detect_communities(graph: &Graph, _seed: u64) -> (Vec<usize>, f64) {
    let adj = graph.undirected_adjacency();
    let levels = louvain_levels(&adj);
    let partition = levels.last().cloned().unwrap_or_default();
    let q = modularity_adj(&adj, &partition);
    (normalize_partition(&partition), q)
}

/// One entry per completed Louvain level: the partition of the original
/// nodes after that level's local-moving and aggregation.
pub(crate) fn louvain_levels(adj: &[BTreeMap<usize, f64>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut node_to_original: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut current: Vec<BTreeMap<usize, f64>> = adj.to_vec();
    let mut mapping: Vec<usize> = (0..n).collect();
    loop {
        let (memberships, moved) = local_moving(&current);
        if !moved && !levels.is_empty() {
            break;
        }
        // compress community labels to a contiguous range
        let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &memberships {
            let next = relabel.len();
            relabel.entry(c).or_insert(next);
        }
        mapping = mapping.iter().map(|&c| relabel[&memberships[c]]).collect();
        levels.push(mapping.clone());
        if !moved {
            break;
        }
        // aggregate
        let k = relabel.len();
        let mut grouped: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (node, members) in node_to_original.iter().enumerate() {
            grouped[relabel[&memberships[node]]].extend(members.iter().copied());
        }
        node_to_original = grouped;
        let mut next_adj: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); k];
        for (i, row) in current.iter().enumerate() {
            let ci = relabel[&memberships[i]];
            for (&j, &w) in row {
                let cj = relabel[&memberships[j]];
                if i == j {
                    *next_adj[ci].entry(ci).or_insert(0.0) += w;
                } else if i < j {
                    if ci == cj {
                        *next_adj[ci].entry(ci).or_insert(0.0) += w;
                    } else {
                        *next_adj[ci].entry(cj).or_insert(0.0) += w;
                        *next_adj[cj].entry(ci).or_insert(0.0) += w;
                    }
                }
            }
        }
        current = next_adj;
        if k == 1 {
            break;
        }
    }
    levels
}

/// One local-moving phase: greedy modularity gain with ascending node
/// order, repeated until a full pass makes no move.
fn local_moving(adj: &[BTreeMap<usize, f64>]) -> (Vec<usize>, bool) {
    let n = adj.len();
    let strengths: Vec<f64> = adj
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter().map(|(&j, &w)| if j == i { 2.0 * w } else { w }).sum()
        })
        .collect();
    let two_m: f64 = strengths.iter().sum();
    let mut membership: Vec<usize> = (0..n).collect();
    if two_m == 0.0 {
        return (membership, false);
    }
    let mut sigma_tot = strengths.clone();
    let mut moved_any = false;
    loop {
        let mut moved_this_pass = false;
        for node in 0..n {
            let current = membership[node];
            sigma_tot[current] -= strengths[node];
            // weight from node to each neighboring community
            let mut k_in: BTreeMap<usize, f64> = BTreeMap::new();
            for (&nb, &w) in &adj[node] {
                if nb != node {
                    *k_in.entry(membership[nb]).or_insert(0.0) += w;
                }
            }
            let stay_gain = k_in.get(&current).copied().unwrap_or(0.0)
                - sigma_tot[current] * strengths[node] / two_m;
            // ascending community order plus strict improvement keeps the
            // lowest community id on ties
            let mut best_community = current;
            let mut best_delta = 1e-12;
            for (&community, &win) in &k_in {
                if community == current {
                    continue;
                }
                let gain = win - sigma_tot[community] * strengths[node] / two_m;
                let delta = gain - stay_gain;
                if delta > best_delta {
                    best_community = community;
                    best_delta = delta;
                }
            }
            sigma_tot[best_community] += strengths[node];
            if best_community != current {
                membership[node] = best_community;
                moved_this_pass = true;
                moved_any = true;
            }
        }
        if !moved_this_pass {
            break;
        }
    }
    (membership, moved_any)
}

/// Relabels community ids to 0..k-1 in order of first appearance by node
/// id.
fn normalize_partition(partition: &[usize]) -> Vec<usize> {
    let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
    partition
        .iter()
        .map(|&c| {
            let next = relabel.len();
            *relabel.entry(c).or_insert(next)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        let mut g = Graph::new(false);
        for i in 0..6 {
            g.add_node(i.to_string());
        }
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            g.add_edge(a, b, 1.0, None).unwrap();
        }
        g
    }

    #[test]
    fn invalid_edges_rejected() {
        let mut g = Graph::new(false);
        g.add_node("a");
        assert!(matches!(g.add_edge(0, 1, 1.0, None), Err(GraphError::BadEndpoint(1))));
        g.add_node("b");
        assert!(matches!(g.add_edge(0, 1, 0.0, None), Err(GraphError::BadWeight(_))));
        assert!(matches!(g.add_edge(0, 1, -2.0, None), Err(GraphError::BadWeight(_))));
    }

    #[test]
    fn disjoint_triangles_modularity() {
        let g = two_triangles();
        let (partition, q) = detect_communities(&g, 0);
        assert_eq!(partition, vec![0, 0, 0, 1, 1, 1]);
        assert!((q - 0.5).abs() < 1e-9, "q = {q}");
    }

    #[test]
    fn degenerate_graphs() {
        let mut g = Graph::new(false);
        g.add_node("only");
        let (partition, q) = detect_communities(&g, 0);
        assert_eq!(partition, vec![0]);
        assert_eq!(q, 0.0);

        let empty = Graph::new(false);
        let (partition, q) = detect_communities(&empty, 0);
        assert!(partition.is_empty());
        assert_eq!(q, 0.0);
    }

    #[test]
    fn complete_graph_single_community() {
        let mut g = Graph::new(false);
        for i in 0..4 {
            g.add_node(i.to_string());
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                g.add_edge(i, j, 1.0, None).unwrap();
            }
        }
        let (partition, q) = detect_communities(&g, 0);
        assert!(partition.iter().all(|&c| c == 0));
        assert!(q.abs() < 1e-12);

        // brute force over all 15 partitions of 4 nodes confirms the
        // single community maximizes Q
        let mut best = f64::NEG_INFINITY;
        let mut best_partition = vec![];
        for p in all_partitions(4) {
            let q = modularity(&g, &p);
            if q > best {
                best = q;
                best_partition = p;
            }
        }
        assert_eq!(best_partition, vec![0, 0, 0, 0]);
        assert!((best - q).abs() < 1e-12);
    }

    fn all_partitions(n: usize) -> Vec<Vec<usize>> {
        // restricted growth strings
        fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            let max = prefix.iter().copied().max().map_or(0, |m| m + 1);
            for c in 0..=max {
                prefix.push(c);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut vec![], n, &mut out);
        out
    }

    #[test]
    fn modularity_monotone_across_levels() {
        let mut g = two_triangles();
        // bridge the triangles weakly
        g.add_edge(2, 3, 0.1, None).unwrap();
        let adj = g.undirected_adjacency();
        let levels = louvain_levels(&adj);
        let mut prev = f64::NEG_INFINITY;
        for level in &levels {
            let q = modularity_adj(&adj, level);
            assert!(q >= prev - 1e-12, "level dropped from {prev} to {q}");
            prev = q;
        }
        assert!((-0.5..=1.0).contains(&prev));
    }

    #[test]
    fn csv_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let nodes = dir.path().join("nodes.csv");
        let edges = dir.path().join("edges.csv");
        let mut g = Graph::new(true);
        g.add_node("[0,4,7]");
        g.add_node("[7,11,2]");
        g.add_edge(0, 1, 2.0, Some("R(-1,-2,0)".into())).unwrap();
        g.write_csv(&nodes, &edges).unwrap();
        let text = std::fs::read_to_string(&edges).unwrap();
        assert!(text.starts_with("Source,Target,Weight,Label\n"));
        assert!(text.contains("\"R(-1,-2,0)\""));
        let back = Graph::read_csv(&nodes, &edges, true).unwrap();
        assert_eq!(back.nodes(), g.nodes());
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn average_degree_counts_pairs_once() {
        let g = two_triangles();
        assert!((g.average_degree() - 2.0).abs() < 1e-12);
    }
}
