//! Directed graphs, connectivity analysis, condensation, moral closure and
//! Erdős–Rényi sampling.
//!
//! Vertices are indices `0..n`. Arcs carry nonzero complex weights
//! (default 1); the adjacency matrix is indexed `A[target, source]` so that
//! it acts on kets as the hop `source → target`.

mod constructors;
mod edgelist;

pub use constructors::*;
pub use edgelist::{read_edge_list, write_edge_list};

use std::collections::BTreeMap;
use std::collections::VecDeque;

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::CMat;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for graph of size {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("arc ({0}, {1}) has zero weight")]
    ZeroWeight(usize, usize),
    #[error("invalid {what}: {value} (minimum {min})")]
    InvalidSize {
        what: &'static str,
        value: usize,
        min: usize,
    },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("no sink block reachable from vertex {0}")]
    NoSinkReachable(usize),
    #[error("arc set is not symmetric; cannot write as undirected")]
    NotSymmetric,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Immutable simple digraph without self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    n: usize,
    arcs: BTreeMap<(usize, usize), Complex64>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Digraph {
    /// Graph on `n` vertices with unit-weight arcs.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::from_weighted_arcs(
            n,
            arcs.into_iter().map(|(u, v)| (u, v, Complex64::new(1.0, 0.0))),
        )
    }

    pub fn from_weighted_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut map = BTreeMap::new();
        for (u, v, c) in arcs {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for &x in &[u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if c == Complex64::new(0.0, 0.0) {
                return Err(GraphError::ZeroWeight(u, v));
            }
            if map.insert((u, v), c).is_some() {
                return Err(GraphError::DuplicateArc(u, v));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in map.keys() {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        // BTreeMap iteration already yields ascending order per source; the
        // in-lists need an explicit sort.
        for l in &mut in_adj {
            l.sort_unstable();
        }
        Ok(Digraph {
            n,
            arcs: map,
            out_adj,
            in_adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in ascending `(source, target)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.arcs.iter().map(|(&(u, v), &c)| (u, v, c))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains_key(&(u, v))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Complex64> {
        self.arcs.get(&(u, v)).copied()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// `A[w, v] = c_(v,w)` for every arc `v → w`, zero elsewhere.
    pub fn adjacency_matrix(&self) -> CMat {
        let mut a = Array2::zeros((self.n, self.n));
        for (&(v, w), &c) in &self.arcs {
            a[[w, v]] = c;
        }
        a
    }

    /// 0-1 adjacency matrix of the underlying undirected graph.
    pub fn underlying_adjacency(&self) -> CMat {
        let one = Complex64::new(1.0, 0.0);
        let mut a = Array2::zeros((self.n, self.n));
        for &(v, w) in self.arcs.keys() {
            a[[w, v]] = one;
            a[[v, w]] = one;
        }
        a
    }

    /// Underlying undirected graph: each arc replaced by a pair of opposite
    /// unit-weight arcs.
    pub fn underlying_graph(&self) -> Digraph {
        let mut arcs = Vec::new();
        for &(u, v) in self.arcs.keys() {
            if !self.arcs.contains_key(&(v, u)) || u < v {
                arcs.push((u, v));
                arcs.push((v, u));
            }
        }
        Digraph::from_arcs(self.n, arcs).expect("underlying graph is valid")
    }

    /// True when every arc has its reverse with equal weight.
    pub fn is_symmetric(&self) -> bool {
        self.arcs
            .iter()
            .all(|(&(u, v), &c)| self.arcs.get(&(v, u)) == Some(&c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    StronglyConnected,
    WeaklyConnected,
    Disconnected,
}

/// Partition of a digraph into strongly connected components plus the block
/// DAG between them.
#[derive(Debug, Clone)]
pub struct Condensation {
    /// Blocks sorted by their minimum vertex; members ascending.
    pub blocks: Vec<Vec<usize>>,
    /// Vertex → block id.
    pub block_of: Vec<usize>,
    /// Arcs between distinct blocks.
    pub block_dag: Vec<(usize, usize)>,
    /// Blocks with no outgoing block arc.
    pub sink_blocks: Vec<usize>,
    /// Union of vertices in sink blocks, ascending.
    pub sink_vertices: Vec<usize>,
}

impl Condensation {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block DAG viewed as a digraph over block ids.
    pub fn block_digraph(&self) -> Digraph {
        Digraph::from_arcs(self.blocks.len(), self.block_dag.iter().copied())
            .expect("block DAG is a valid digraph")
    }
}

/// Strongly connected components by Tarjan's algorithm (iterative), then the
/// block DAG and its sinks.
pub fn condense(g: &Digraph) -> Condensation {
    let n = g.vertex_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();

    // Explicit DFS stack of (vertex, next out-neighbor position).
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < g.out_neighbors(v).len() {
                let w = g.out_neighbors(v)[*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }

    // Deterministic block ids: sort by minimum vertex.
    comps.sort_by_key(|c| c[0]);
    let mut block_of = vec![0usize; n];
    for (b, comp) in comps.iter().enumerate() {
        for &v in comp {
            block_of[v] = b;
        }
    }
    let mut dag: Vec<(usize, usize)> = g
        .arcs()
        .filter_map(|(u, v, _)| {
            let (bu, bv) = (block_of[u], block_of[v]);
            (bu != bv).then_some((bu, bv))
        })
        .collect();
    dag.sort_unstable();
    dag.dedup();

    let mut has_out = vec![false; comps.len()];
    for &(bu, _) in &dag {
        has_out[bu] = true;
    }
    let sink_blocks: Vec<usize> = (0..comps.len()).filter(|&b| !has_out[b]).collect();
    let mut sink_vertices: Vec<usize> = sink_blocks
        .iter()
        .flat_map(|&b| comps[b].iter().copied())
        .collect();
    sink_vertices.sort_unstable();

    Condensation {
        blocks: comps,
        block_of,
        block_dag: dag,
        sink_blocks,
        sink_vertices,
    }
}

pub fn connectivity(g: &Digraph) -> Connectivity {
    if condense(g).block_count() == 1 {
        return Connectivity::StronglyConnected;
    }
    if underlying_connected(g) {
        Connectivity::WeaklyConnected
    } else {
        Connectivity::Disconnected
    }
}

fn underlying_connected(g: &Digraph) -> bool {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in g.out_neighbors(v).iter().chain(g.in_neighbors(v)) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == n
}

/// Directed moral graph: adds the symmetric pair (v, v'), (v', v) for every
/// two distinct vertices sharing a child. Added arcs have unit weight;
/// existing arcs keep their weights.
pub fn moral_closure(g: &Digraph) -> Digraph {
    let n = g.vertex_count();
    let mut arcs: BTreeMap<(usize, usize), Complex64> =
        g.arcs().map(|(u, v, c)| ((u, v), c)).collect();
    let one = Complex64::new(1.0, 0.0);
    for w in 0..n {
        let parents = g.in_neighbors(w);
        for (i, &p) in parents.iter().enumerate() {
            for &q in &parents[i + 1..] {
                arcs.entry((p, q)).or_insert(one);
                arcs.entry((q, p)).or_insert(one);
            }
        }
    }
    Digraph::from_weighted_arcs(n, arcs.into_iter().map(|((u, v), c)| (u, v, c)))
        .expect("moral closure of a valid digraph is valid")
}

/// Length of the shortest directed path from `v` to any vertex lying in a
/// sink block of the condensation. Zero when `v` itself is in a sink block.
pub fn sink_distance(g: &Digraph, v: usize) -> Result<usize, GraphError> {
    let cond = condense(g);
    sink_distance_with(g, &cond, v)
}

/// As [`sink_distance`] with a precomputed condensation.
pub fn sink_distance_with(
    g: &Digraph,
    cond: &Condensation,
    v: usize,
) -> Result<usize, GraphError> {
    if v >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: g.vertex_count(),
        });
    }
    let mut is_sink = vec![false; g.vertex_count()];
    for &s in &cond.sink_vertices {
        is_sink[s] = true;
    }
    if is_sink[v] {
        return Ok(0);
    }
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &w in g.out_neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                if is_sink[w] {
                    return Ok(dist[w]);
                }
                queue.push_back(w);
            }
        }
    }
    Err(GraphError::NoSinkReachable(v))
}

/// Erdős–Rényi sample. Directed graphs draw every ordered pair independently;
/// undirected graphs draw unordered pairs and emit each kept edge as two
/// arcs. Deterministic for a fixed seed.
pub fn sample_erdos_renyi(
    n: usize,
    p: f64,
    directed: bool,
    seed: u64,
) -> Result<Digraph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_erdos_renyi_with(n, p, directed, &mut rng)
}

/// As [`sample_erdos_renyi`] drawing from a caller-provided generator, so a
/// rejection loop can keep consuming one stream.
pub fn sample_erdos_renyi_with(
    n: usize,
    p: f64,
    directed: bool,
    rng: &mut impl Rng,
) -> Result<Digraph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    let mut arcs = Vec::new();
    if directed {
        for v in 0..n {
            for w in 0..n {
                if v != w && rng.gen::<f64>() < p {
                    arcs.push((v, w));
                }
            }
        }
    } else {
        for v in 0..n {
            for w in v + 1..n {
                if rng.gen::<f64>() < p {
                    arcs.push((v, w));
                    arcs.push((w, v));
                }
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn condense_directed_chain() {
        let c = condense(&chain(3));
        assert_eq!(c.blocks, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(c.sink_blocks, vec![2]);
        assert_eq!(c.sink_vertices, vec![2]);
        assert_eq!(c.block_dag, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn condense_two_cycles_bridged() {
        // 0<->1 -> 2<->3: two blocks, one sink block {2,3}.
        let g = Digraph::from_arcs(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]).unwrap();
        let c = condense(&g);
        assert_eq!(c.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(c.block_dag, vec![(0, 1)]);
        assert_eq!(c.sink_vertices, vec![2, 3]);
    }

    #[test]
    fn condense_circulant_chord_graph_is_one_block() {
        let c = condense(&circulant_chord_graph(2).unwrap());
        assert_eq!(c.block_count(), 1);
    }

    #[test]
    fn condense_bidirected_path_has_two_sinks() {
        // Arcs point outward from the center, so every vertex is its own
        // block and the two endpoints are the sinks.
        let g = bidirected_path(2).unwrap();
        let c = condense(&g);
        assert_eq!(c.block_count(), 5);
        assert_eq!(c.sink_vertices, vec![0, 4]);
    }

    #[test]
    fn connectivity_classes() {
        assert_eq!(
            connectivity(&path(3).unwrap()),
            Connectivity::StronglyConnected
        );
        assert_eq!(connectivity(&star(4).unwrap()), Connectivity::WeaklyConnected);
        let isolated = Digraph::from_arcs(2, []).unwrap();
        assert_eq!(connectivity(&isolated), Connectivity::Disconnected);
        assert_eq!(
            connectivity(&Digraph::from_arcs(1, []).unwrap()),
            Connectivity::StronglyConnected
        );
    }

    #[test]
    fn moral_closure_adds_coparent_arcs_on_fig5() {
        let g = fig5_graph();
        let m = moral_closure(&g);
        assert!(m.has_arc(0, 1) && m.has_arc(1, 0));
        assert_eq!(m.arc_count(), g.arc_count() + 2);
    }

    #[test]
    fn moral_closure_without_shared_children_is_identity() {
        let g = chain(4);
        assert_eq!(moral_closure(&g), g);
    }

    #[test]
    fn moral_closure_matches_triple_loop_oracle() {
        for seed in 0..50 {
            let g = sample_erdos_renyi(6, 0.3, true, seed).unwrap();
            let m = moral_closure(&g);
            // Oracle: scan all (v, v', w) triples over the definition.
            let n = g.vertex_count();
            let mut expected: Vec<(usize, usize)> =
                g.arcs().map(|(u, v, _)| (u, v)).collect();
            for v in 0..n {
                for vp in 0..n {
                    if v == vp {
                        continue;
                    }
                    for w in 0..n {
                        if g.has_arc(v, w) && g.has_arc(vp, w) {
                            expected.push((v, vp));
                        }
                    }
                }
            }
            expected.sort_unstable();
            expected.dedup();
            let got: Vec<(usize, usize)> = m.arcs().map(|(u, v, _)| (u, v)).collect();
            assert_eq!(got, expected, "seed {}", seed);
        }
    }

    #[test]
    fn moral_closure_contains_input_and_added_arcs_are_symmetric() {
        for seed in 0..50 {
            let g = sample_erdos_renyi(7, 0.25, true, 1000 + seed).unwrap();
            let m = moral_closure(&g);
            for (u, v, _) in g.arcs() {
                assert!(m.has_arc(u, v));
            }
            for (u, v, _) in m.arcs() {
                if !g.has_arc(u, v) {
                    assert!(m.has_arc(v, u), "added arc ({u},{v}) not symmetric");
                }
            }
        }
    }

    #[test]
    fn sink_distance_examples() {
        let g = chain(3);
        assert_eq!(sink_distance(&g, 0).unwrap(), 2);
        assert_eq!(sink_distance(&g, 2).unwrap(), 0);
        // Vertex inside a sink cycle has distance zero.
        let g = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 1)]).unwrap();
        assert_eq!(sink_distance(&g, 1).unwrap(), 0);
        assert_eq!(sink_distance(&g, 0).unwrap(), 1);
    }

    #[test]
    fn sink_distance_matches_reverse_bfs_oracle() {
        let g = oriented_apollonian();
        let cond = condense(&g);
        // Oracle: multi-source BFS from all sink vertices on the reversed graph.
        let n = g.vertex_count();
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &s in &cond.sink_vertices {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for &u in g.in_neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        for v in 0..n {
            assert_eq!(sink_distance(&g, v).unwrap(), dist[v], "vertex {}", v);
        }
    }

    #[test]
    fn condensation_of_block_dag_is_all_singletons() {
        for seed in 0..40 {
            let g = sample_erdos_renyi(8, 0.3, true, 7000 + seed).unwrap();
            let c = condense(&g);
            let c2 = condense(&c.block_digraph());
            assert_eq!(c2.block_count(), c.block_count());
            assert!(c2.blocks.iter().all(|b| b.len() == 1));
        }
    }

    #[test]
    fn weakly_connected_graphs_have_finite_sink_distances() {
        let mut checked = 0;
        for seed in 0..200 {
            let g = sample_erdos_renyi(12, 0.15, true, 40_000 + seed).unwrap();
            if connectivity(&g) == Connectivity::Disconnected {
                continue;
            }
            checked += 1;
            for v in 0..g.vertex_count() {
                assert!(sink_distance(&g, v).is_ok());
            }
        }
        assert!(checked > 20, "too few connected samples: {}", checked);
    }

    #[test]
    fn erdos_renyi_edge_cases() {
        assert_eq!(sample_erdos_renyi(5, 0.0, true, 1).unwrap().arc_count(), 0);
        assert_eq!(sample_erdos_renyi(3, 1.0, true, 1).unwrap().arc_count(), 6);
        assert_eq!(
            sample_erdos_renyi(3, 1.0, false, 1).unwrap().arc_count(),
            6
        );
        assert!(sample_erdos_renyi(3, 1.5, true, 1).is_err());
    }

    #[test]
    fn erdos_renyi_is_seed_deterministic_and_undirected_is_symmetric() {
        for seed in 0..20 {
            let a = sample_erdos_renyi(10, 0.3, true, seed).unwrap();
            let b = sample_erdos_renyi(10, 0.3, true, seed).unwrap();
            assert_eq!(a, b);
            let u = sample_erdos_renyi(10, 0.3, false, seed).unwrap();
            assert!(u.is_symmetric());
        }
    }

    #[test]
    fn erdos_renyi_mean_arc_count_matches_binomial() {
        // n = 20, p = 0.1 directed: mean 380 * 0.1 = 38, sd of the sample
        // mean over 10000 draws = sqrt(380 * 0.1 * 0.9) / 100.
        let samples = 10_000u64;
        let total: usize = (0..samples)
            .map(|s| sample_erdos_renyi(20, 0.1, true, s).unwrap().arc_count())
            .sum();
        let mean = total as f64 / samples as f64;
        let three_sigma = 3.0 * (380.0f64 * 0.1 * 0.9).sqrt() / (samples as f64).sqrt();
        assert!(
            (mean - 38.0).abs() < three_sigma,
            "mean {} outside 38 ± {}",
            mean,
            three_sigma
        );
    }

    #[test]
    fn digraph_validation_errors() {
        assert!(matches!(
            Digraph::from_arcs(0, []),
            Err(GraphError::EmptyGraph)
        ));
        assert!(matches!(
            Digraph::from_arcs(2, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            Digraph::from_arcs(2, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 2 })
        ));
        assert!(matches!(
            Digraph::from_arcs(2, [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateArc(0, 1))
        ));
    }

    #[test]
    fn adjacency_is_target_row_source_column() {
        let g = Digraph::from_arcs(2, [(0, 1)]).unwrap();
        let a = g.adjacency_matrix();
        assert_eq!(a[[1, 0]], Complex64::new(1.0, 0.0));
        assert_eq!(a[[0, 1]], Complex64::new(0.0, 0.0));
        let u = g.underlying_adjacency();
        assert_eq!(u[[0, 1]], Complex64::new(1.0, 0.0));
        assert_eq!(u[[1, 0]], Complex64::new(1.0, 0.0));
    }
}
