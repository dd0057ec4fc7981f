//! k-uniform hypergraphs and the loose-path metric.
//!
//! Vertices are `0..n`. Every edge has exactly `k` distinct vertices. The
//! distance between vertices x and y is the smallest t such that there are
//! edges e_1, …, e_t with x ∈ e_1, y ∈ e_t and e_i ∩ e_{i+1} ≠ ∅ for all i
//! (so dist(x, x) = 0 and two vertices sharing an edge are at distance 1);
//! the distance from a set is the minimum over its members. All
//! neighborhoods here are closed:
//!
//! * `N_V^r(A)` — vertices at distance ≤ r from A ([`Hypergraph::vertex_neighborhood`]);
//! * `N_E^r(A)` — edges at distance ≤ r−1 from A ([`Hypergraph::edge_neighborhood`]);
//!   the index shift makes `V(N_E^r(A)) = N_V^r(A)` whenever every member of
//!   A lies in at least one edge.
//!
//! The text interchange format is a header line `n k m` followed by m lines
//! of k space-separated vertex ids. Edges are stored sorted internally
//! (within each edge, and the edge list lexicographically) and deduplicated,
//! so the written form is canonical regardless of input order.

use crate::{Error, Result};

pub type Vertex = u32;
pub type EdgeId = u32;

/// Distance value for unreachable vertices.
pub const INF: u32 = u32::MAX;

/// A k-uniform hypergraph on vertices `0..n` with an incidence index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    /// Flat edge membership, `m * k` vertex ids; edge `e` occupies
    /// `verts[e*k .. (e+1)*k]`, sorted ascending.
    verts: Vec<Vertex>,
    /// For each vertex, the ids of the edges containing it.
    incidence: Vec<Vec<EdgeId>>,
}

impl Hypergraph {
    /// Builds a hypergraph, validating uniformity and vertex ranges.
    /// Edges are sorted and duplicates removed.
    pub fn new(n: usize, k: usize, edges: Vec<Vec<Vertex>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("hypergraph needs at least one vertex"));
        }
        if k < 2 {
            return Err(Error::domain(format!("uniformity k must be ≥ 2, got {k}")));
        }
        let mut sorted: Vec<Vec<Vertex>> = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.len() != k {
                return Err(Error::format(format!(
                    "edge {i} has {} vertices, expected k = {k}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::format(format!("edge {i} repeats a vertex")));
            }
            if *e.last().unwrap() as usize >= n {
                return Err(Error::format(format!(
                    "edge {i} names vertex {} but n = {n}",
                    e.last().unwrap()
                )));
            }
            sorted.push(e);
        }
        sorted.sort_unstable();
        sorted.dedup();
        let m = sorted.len();
        if m > u32::MAX as usize {
            return Err(Error::resource("more than u32::MAX edges"));
        }
        let mut verts = Vec::with_capacity(m * k);
        let mut incidence = vec![Vec::new(); n];
        for (id, e) in sorted.iter().enumerate() {
            for &v in e {
                verts.push(v);
                incidence[v as usize].push(id as EdgeId);
            }
        }
        Ok(Hypergraph {
            n,
            k,
            verts,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.verts.len() / self.k
    }

    /// The sorted vertex list of edge `e`.
    pub fn edge(&self, e: EdgeId) -> &[Vertex] {
        let k = self.k;
        &self.verts[e as usize * k..(e as usize + 1) * k]
    }

    /// Iterator over `(edge id, members)`.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &[Vertex])> {
        self.verts
            .chunks_exact(self.k)
            .enumerate()
            .map(|(i, c)| (i as EdgeId, c))
    }

    /// Ids of the edges containing `v`.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.incidence[v as usize]
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v as usize].len()
    }

    /// True if the sorted vertex set `e` is an edge.
    pub fn contains_edge(&self, e: &[Vertex]) -> bool {
        if e.len() != self.k || e.is_empty() {
            return false;
        }
        self.incidence[e[0] as usize]
            .iter()
            .any(|&id| self.edge(id) == e)
    }

    fn check_vertices(&self, a: &[Vertex]) -> Result<()> {
        for &v in a {
            if v as usize >= self.n {
                return Err(Error::domain(format!(
                    "vertex {v} out of range (n = {})",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Breadth-first distances (and parents) from a nonempty vertex set,
    /// truncated at radius `r_cap`. Also reports, for every edge reached,
    /// the level at which it was expanded: that level equals the distance
    /// of the edge from the source set.
    pub(crate) fn bfs(&self, sources: &[Vertex], r_cap: u32) -> Result<BfsScan> {
        if sources.is_empty() {
            return Err(Error::domain("distance source set is empty"));
        }
        self.check_vertices(sources)?;
        let mut dist = vec![INF; self.n];
        let mut parent = vec![INF; self.n];
        let mut edge_level = vec![INF; self.m()];
        let mut frontier: Vec<Vertex> = Vec::new();
        for &s in sources {
            if dist[s as usize] == INF {
                dist[s as usize] = 0;
                frontier.push(s);
            }
        }
        let mut level = 0u32;
        while !frontier.is_empty() && level < r_cap {
            let mut next = Vec::new();
            for &u in &frontier {
                for &e in self.incident(u) {
                    if edge_level[e as usize] != INF {
                        continue;
                    }
                    edge_level[e as usize] = level;
                    for &w in self.edge(e) {
                        if dist[w as usize] == INF {
                            dist[w as usize] = level + 1;
                            parent[w as usize] = u;
                            next.push(w);
                        }
                    }
                }
            }
            frontier = next;
            level += 1;
        }
        Ok(BfsScan {
            dist,
            parent,
            edge_level,
        })
    }

    /// Distances from the vertex set `a` to every vertex ([`INF`] where
    /// unreachable). Errors if `a` is empty or names an out-of-range vertex.
    pub fn distances_from(&self, a: &[Vertex]) -> Result<DistanceTable> {
        let scan = self.bfs(a, u32::MAX)?;
        let mut source: Vec<Vertex> = a.to_vec();
        source.sort_unstable();
        source.dedup();
        Ok(DistanceTable {
            source,
            dist: scan.dist,
            parent: scan.parent,
        })
    }

    /// Distance between two vertex sets: min over pairs, [`INF`] if no
    /// connecting chain exists.
    pub fn set_distance(&self, a: &[Vertex], b: &[Vertex]) -> Result<u32> {
        if b.is_empty() {
            return Err(Error::domain("distance target set is empty"));
        }
        self.check_vertices(b)?;
        let t = self.distances_from(a)?;
        Ok(b.iter().map(|&v| t.dist(v)).min().unwrap())
    }

    /// Closed r-th vertex neighborhood of `a`: all vertices at distance ≤ r.
    /// `r = 0` returns `a` itself (sorted, deduplicated).
    pub fn vertex_neighborhood(&self, a: &[Vertex], r: u32) -> Result<Vec<Vertex>> {
        if a.is_empty() {
            return Err(Error::domain("neighborhood of an empty set"));
        }
        self.check_vertices(a)?;
        if r == 0 {
            let mut out = a.to_vec();
            out.sort_unstable();
            out.dedup();
            return Ok(out);
        }
        let scan = self.bfs(a, r)?;
        Ok((0..self.n as u32)
            .filter(|&v| scan.dist[v as usize] <= r)
            .collect())
    }

    /// Closed r-th edge neighborhood of `a`: all edges at distance ≤ r − 1
    /// from `a`. `r = 0` is a domain error (the operator is indexed from 1
    /// precisely so that the vertices covered by `N_E^r` equal `N_V^r`).
    pub fn edge_neighborhood(&self, a: &[Vertex], r: u32) -> Result<Vec<EdgeId>> {
        if r == 0 {
            return Err(Error::domain("edge neighborhood radius must be ≥ 1"));
        }
        if a.is_empty() {
            return Err(Error::domain("neighborhood of an empty set"));
        }
        self.check_vertices(a)?;
        let scan = self.bfs(a, r)?;
        Ok((0..self.m() as u32)
            .filter(|&e| scan.edge_level[e as usize] < r)
            .collect())
    }

    /// Union of the member vertices of the listed edges, sorted.
    pub fn vertices_of_edges(&self, b: &[EdgeId]) -> Result<Vec<Vertex>> {
        let m = self.m() as u32;
        let mut seen = vec![false; self.n];
        for &e in b {
            if e >= m {
                return Err(Error::domain(format!("edge id {e} out of range (m = {m})")));
            }
            for &v in self.edge(e) {
                seen[v as usize] = true;
            }
        }
        Ok((0..self.n as u32).filter(|&v| seen[v as usize]).collect())
    }

    /// The closed 1-neighborhood of a single vertex: `v` together with every
    /// vertex sharing an edge with it. This is exactly the set of legal
    /// one-move destinations for a piece standing on `v`.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = vec![v];
        for &e in self.incident(v) {
            out.extend_from_slice(self.edge(e));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Sum over vertices of the closed 1-neighborhood size. The average
    /// vertex degree is this sum divided by n.
    pub fn closed_neighborhood_size_sum(&self) -> u64 {
        let mut mark = vec![u32::MAX; self.n];
        let mut sum = 0u64;
        for v in 0..self.n as u32 {
            let mut count = 1u64; // v itself
            mark[v as usize] = v;
            for &e in self.incident(v) {
                for &w in self.edge(e) {
                    if mark[w as usize] != v {
                        mark[w as usize] = v;
                        count += 1;
                    }
                }
            }
            sum += count;
        }
        sum
    }

    /// Average vertex degree d(G): the mean closed 1-neighborhood size,
    /// `(1/n) Σ_v |N_V^1(v)|`. Edgeless hypergraphs have d = 1.
    pub fn average_vertex_degree(&self) -> f64 {
        self.closed_neighborhood_size_sum() as f64 / self.n as f64
    }

    /// True if every vertex is reachable from vertex 0. A single-vertex
    /// hypergraph is connected; any isolated vertex (n ≥ 2) disconnects.
    pub fn is_connected(&self) -> bool {
        match self.distances_from(&[0]) {
            Ok(t) => t.dist.iter().all(|&d| d != INF),
            Err(_) => false,
        }
    }

    /// Parses the text format: header `n k m`, then m lines of k vertex ids.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::format("empty input, expected `n k m` header"))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 3 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header must be `n k m`, got {head:?}"),
            });
        }
        let parse_num = |s: &str, what: &str, line: usize| -> Result<usize> {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("{what} is not a non-negative integer: {s:?}"),
            })
        };
        let n = parse_num(head[0], "n", 1)?;
        let k = parse_num(head[1], "k", 1)?;
        let m = parse_num(head[2], "m", 1)?;
        let mut edges = Vec::with_capacity(m);
        let mut read = 0usize;
        for (idx, line) in lines {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if read == m {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("more than the declared m = {m} edge lines"),
                });
            }
            let mut edge = Vec::with_capacity(k);
            for tok in line.split_whitespace() {
                let v = tok.parse::<Vertex>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad vertex id {tok:?}"),
                })?;
                edge.push(v);
            }
            if edge.len() != k {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("edge has {} vertices, expected k = {k}", edge.len()),
                });
            }
            edges.push(edge);
            read += 1;
        }
        if read != m {
            return Err(Error::format(format!(
                "declared m = {m} edges but found {read}"
            )));
        }
        Hypergraph::new(n, k, edges)
    }

    /// Canonical text form (round-trips through [`Hypergraph::parse`]).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.k, self.m());
        for (_, e) in self.edges() {
            let mut first = true;
            for v in e {
                if !first {
                    out.push(' ');
                }
                out.push_str(&v.to_string());
                first = false;
            }
            out.push('\n');
        }
        out
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self> {
        Hypergraph::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }
}

pub(crate) struct BfsScan {
    pub(crate) dist: Vec<u32>,
    pub(crate) parent: Vec<Vertex>,
    pub(crate) edge_level: Vec<u32>,
}

/// Distances from a fixed source set, with BFS parents for path recovery.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    /// The (sorted, deduplicated) source set.
    pub source: Vec<Vertex>,
    /// Distance per vertex; [`INF`] where unreachable.
    pub dist: Vec<u32>,
    /// BFS parent per vertex ([`INF`] for sources and unreachable vertices):
    /// a vertex one step closer to the source set and sharing an edge.
    pub parent: Vec<Vertex>,
}

impl DistanceTable {
    pub fn dist(&self, v: Vertex) -> u32 {
        self.dist[v as usize]
    }

    /// A shortest loose path from the source set to `v`, as a vertex
    /// sequence starting at a source and ending at `v` (consecutive entries
    /// share an edge). `None` if unreachable.
    pub fn path_to(&self, v: Vertex) -> Option<Vec<Vertex>> {
        if self.dist[v as usize] == INF {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while self.parent[cur as usize] != INF {
            cur = self.parent[cur as usize];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}
