//! Named graph constructors for the walks and experiments. Undirected graphs
//! are emitted with every edge as a pair of opposite arcs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Digraph, GraphError};

fn undirected(n: usize, edges: &[(usize, usize)]) -> Result<Digraph, GraphError> {
    let mut arcs = Vec::with_capacity(edges.len() * 2);
    for &(u, v) in edges {
        arcs.push((u, v));
        arcs.push((v, u));
    }
    Digraph::from_arcs(n, arcs)
}

/// Bidirected path on vertices −n..n (mapped to indices 0..2n, center at
/// index n): two directed rays leaving the center, so the endpoints are the
/// only sinks.
pub fn bidirected_path(n: usize) -> Result<Digraph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize {
            what: "bidirected path half-length",
            value: 0,
            min: 1,
        });
    }
    let center = n;
    let mut arcs = Vec::with_capacity(2 * n);
    for k in 1..=n {
        arcs.push((center - k + 1, center - k));
        arcs.push((center + k - 1, center + k));
    }
    Digraph::from_arcs(2 * n + 1, arcs)
}

/// Star with a single hub (vertex 0) and `k − 1` leaves, arcs out of the hub.
pub fn star(k: usize) -> Result<Digraph, GraphError> {
    if k < 2 {
        return Err(GraphError::InvalidSize {
            what: "star size",
            value: k,
            min: 2,
        });
    }
    Digraph::from_arcs(k, (1..k).map(|leaf| (0, leaf)))
}

/// Strongly connected circulant graph on 4k vertices: the ring is bidirected
/// and every vertex has an extra chord two steps backwards, so both the graph
/// and its underlying graph are circulant.
pub fn circulant_chord_graph(k: usize) -> Result<Digraph, GraphError> {
    if k < 2 {
        return Err(GraphError::InvalidSize {
            what: "circulant parameter",
            value: k,
            min: 2,
        });
    }
    let n = 4 * k;
    let mut arcs = Vec::with_capacity(3 * n);
    for v in 0..n {
        arcs.push((v, (v + 1) % n));
        arcs.push(((v + 1) % n, v));
        arcs.push((v, (v + n - 2) % n));
    }
    Digraph::from_arcs(n, arcs)
}

/// Undirected path graph 0 − 1 − … − n−1.
pub fn path(n: usize) -> Result<Digraph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize {
            what: "path length",
            value: 0,
            min: 1,
        });
    }
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    undirected(n, &edges)
}

/// Undirected cycle 0 − 1 − … − n−1 − 0.
pub fn cycle(n: usize) -> Result<Digraph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidSize {
            what: "cycle length",
            value: n,
            min: 3,
        });
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    undirected(n, &edges)
}

/// Directed path 0 → 1 → … → n−1 with the single sink n−1.
pub fn oriented_path(n: usize) -> Result<Digraph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize {
            what: "path length",
            value: 0,
            min: 1,
        });
    }
    Digraph::from_arcs(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))
}

/// Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9, spokes i — i+5.
pub fn petersen() -> Digraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    undirected(10, &edges).expect("petersen graph is valid")
}

/// Planar triangulation built from a triangle by inserting a vertex into one
/// face at a time, taking faces in breadth-first creation order. Nine
/// insertions give the 12-vertex instance used by the observance runs.
pub fn apollonian() -> Digraph {
    apollonian_with_insertions(9)
}

pub fn apollonian_with_insertions(insertions: usize) -> Digraph {
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut add = |edges: &mut BTreeSet<(usize, usize)>, u: usize, v: usize| {
        edges.insert((u.min(v), u.max(v)));
    };
    add(&mut edges, 0, 1);
    add(&mut edges, 0, 2);
    add(&mut edges, 1, 2);
    let mut faces: VecDeque<[usize; 3]> = VecDeque::from([[0, 1, 2]]);
    let mut next = 3usize;
    for _ in 0..insertions {
        let face = faces.pop_front().expect("face queue never empties");
        for &corner in &face {
            add(&mut edges, corner, next);
        }
        faces.push_back([face[0], face[1], next]);
        faces.push_back([face[0], face[2], next]);
        faces.push_back([face[1], face[2], next]);
        next += 1;
    }
    let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
    undirected(next, &edge_list).expect("apollonian graph is valid")
}

/// Sierpinski triangle (gasket) with two subdivision rounds: 15 vertices.
pub fn sierpinski_triangle() -> Digraph {
    sierpinski_with_depth(2)
}

pub fn sierpinski_with_depth(depth: u32) -> Digraph {
    fn recurse(
        depth: u32,
        p0: (i64, i64),
        p1: (i64, i64),
        p2: (i64, i64),
        edges: &mut BTreeSet<((i64, i64), (i64, i64))>,
    ) {
        if depth == 0 {
            for &(a, b) in &[(p0, p1), (p1, p2), (p0, p2)] {
                edges.insert((a.min(b), a.max(b)));
            }
            return;
        }
        let m01 = ((p0.0 + p1.0) / 2, (p0.1 + p1.1) / 2);
        let m12 = ((p1.0 + p2.0) / 2, (p1.1 + p2.1) / 2);
        let m02 = ((p0.0 + p2.0) / 2, (p0.1 + p2.1) / 2);
        recurse(depth - 1, p0, m01, m02, edges);
        recurse(depth - 1, m01, p1, m12, edges);
        recurse(depth - 1, m02, m12, p2, edges);
    }
    let side = 1i64 << depth;
    let mut edges = BTreeSet::new();
    recurse(depth, (0, 0), (side, 0), (0, side), &mut edges);
    let mut ids: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for &(a, b) in &edges {
        let next = ids.len();
        ids.entry(a).or_insert(next);
        let next = ids.len();
        ids.entry(b).or_insert(next);
    }
    let edge_list: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (ids[&a], ids[&b])).collect();
    undirected(ids.len(), &edge_list).expect("sierpinski graph is valid")
}

/// Two parents pointing at a common child: v1 → v3 ← v2 (indices 0, 1 → 2).
pub fn fig5_graph() -> Digraph {
    Digraph::from_arcs(3, [(0, 2), (1, 2)]).expect("fig5 graph is valid")
}

/// Undirected hub v0 joined to v1..v5 plus the extra edge v4 — v5.
pub fn fig6_graph() -> Digraph {
    undirected(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (4, 5)])
        .expect("fig6 graph is valid")
}

/// Undirected 7-vertex graph with two degree-5 hubs. Indices follow the
/// drawing's labels shifted down by one, so the hub measured in the
/// two-start-vertex experiment is index 0 and the start vertices are
/// [`FIG7_START_A`] and [`FIG7_START_B`].
pub fn fig7_graph() -> Digraph {
    undirected(
        7,
        &[
            (6, 1),
            (1, 3),
            (3, 0),
            (4, 0),
            (1, 5),
            (0, 2),
            (1, 0),
            (5, 0),
            (1, 2),
        ],
    )
    .expect("fig7 graph is valid")
}

/// First start vertex of the fig7 experiment (the drawing's v6).
pub const FIG7_START_A: usize = 5;
/// Second start vertex of the fig7 experiment (the drawing's v7).
pub const FIG7_START_B: usize = 6;
/// Vertex whose limiting measurement probability distinguishes the two runs.
pub const FIG7_HUB: usize = 0;

/// Orient an undirected graph so every edge points towards `sink` along
/// breadth-first layers; ties within a layer point from the higher index to
/// the lower. The result is a DAG whose unique sink is `sink`, and every
/// vertex has a directed path to it.
pub fn orient_toward_sink(g: &Digraph, sink: usize) -> Result<Digraph, GraphError> {
    let n = g.vertex_count();
    if sink >= n {
        return Err(GraphError::VertexOutOfRange { vertex: sink, n });
    }
    let mut dist = vec![usize::MAX; n];
    dist[sink] = 0;
    let mut queue = VecDeque::from([sink]);
    while let Some(v) = queue.pop_front() {
        for &w in g.out_neighbors(v).iter().chain(g.in_neighbors(v)) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut arcs = BTreeSet::new();
    for (u, v, _) in g.arcs() {
        if dist[u] == usize::MAX || dist[v] == usize::MAX {
            return Err(GraphError::NoSinkReachable(if dist[u] == usize::MAX {
                u
            } else {
                v
            }));
        }
        let (from, to) = if dist[u] > dist[v] {
            (u, v)
        } else if dist[v] > dist[u] {
            (v, u)
        } else {
            (u.max(v), u.min(v))
        };
        arcs.insert((from, to));
    }
    Digraph::from_arcs(n, arcs)
}

pub fn oriented_petersen() -> Digraph {
    orient_toward_sink(&petersen(), 0).expect("petersen orientation is valid")
}

pub fn oriented_apollonian() -> Digraph {
    orient_toward_sink(&apollonian(), 0).expect("apollonian orientation is valid")
}

pub fn oriented_sierpinski() -> Digraph {
    orient_toward_sink(&sierpinski_triangle(), 0).expect("sierpinski orientation is valid")
}
