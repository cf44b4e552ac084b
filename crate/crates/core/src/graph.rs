//! Immutable simple undirected graphs and their hop metrics.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A finite, simple, undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted and symmetric; the structure is immutable
/// after construction, so sharing across threads is safe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n >= 1` vertices from an edge list.
    ///
    /// Self-loops and out-of-range endpoints are rejected; duplicate
    /// edges collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adj })
    }

    /// Path on `n` vertices: `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("clique edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// True iff a single BFS from vertex 0 reaches all `n` vertices.
    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|&d| d != u32::MAX)
    }

    /// Hop distances from `start`; unreachable vertices get `u32::MAX`.
    pub(crate) fn bfs_distances(&self, start: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Adjacency rows as bitsets; only valid for `n <= 64`.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// All-pairs hop distances of a connected graph, with per-vertex
/// eccentricities and the diameter.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
    ecc: Vec<u32>,
    diameter: u32,
}

impl DistanceMatrix {
    /// Runs a BFS from every vertex. Disconnected input is rejected:
    /// eccentricities (and with them broadcast caps) are only finite on
    /// connected graphs.
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        let mut dist = Vec::with_capacity(n * n);
        let mut ecc = Vec::with_capacity(n);
        for v in 0..n {
            let row = g.bfs_distances(v);
            if let Some(unreached) = row.iter().position(|&d| d == u32::MAX) {
                return Err(Error::Disconnected { unreached });
            }
            ecc.push(*row.iter().max().expect("n >= 1"));
            dist.extend_from_slice(&row);
        }
        let diameter = *ecc.iter().max().expect("n >= 1");
        Ok(Self { n, dist, ecc, diameter })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn ecc(&self, v: usize) -> u32 {
        self.ecc[v]
    }

    pub fn eccentricities(&self) -> &[u32] {
        &self.ecc
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }
}
