//! Graphs and their cycle codes.
//!
//! The cycle code `C(G)` has the vertex-edge incidence matrix of `G` as a
//! parity-check matrix, so its codewords are the edge sets of Eulerian
//! subgraphs. Edge order is coordinate order.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::gf2core::{BitMatrix, BitVec, CodeError, LinearCode};
use crate::limits::Limits;

/// Edge subset of a graph, indexed by edge position.
pub type EdgeSet = BitVec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has no edges")]
    NoEdges,
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("negative weight {weight} on edge {edge}")]
    NegativeWeight { edge: usize, weight: f64 },
    #[error("T has odd size {0}")]
    OddTerminalSet(usize),
    #[error("no T-join exists: a component holds an odd number of T vertices")]
    NoTJoin,
    #[error("T has {size} vertices, above the matching bound of {bound}")]
    TooManyTerminals { size: usize, bound: usize },
    #[error("graph realization supports length at most {bound}, got {n}")]
    RealizationBound { n: usize, bound: usize },
}

/// An undirected multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    weights: Option<Vec<f64>>,
}

impl Graph {
    /// Builds a graph on vertices `0..vertices` with 0-based endpoints.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= vertices {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: x + 1,
                        count: vertices,
                    });
                }
            }
        }
        Ok(Self {
            vertices,
            edges,
            weights: None,
        })
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self, GraphError> {
        if weights.len() != self.edges.len() {
            return Err(GraphError::WeightCount {
                expected: self.edges.len(),
                got: weights.len(),
            });
        }
        self.weights = Some(weights);
        Ok(self)
    }

    #[must_use]
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    #[must_use]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[must_use]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[must_use]
    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Cycle graph `C_n` on `n >= 1` vertices.
    #[must_use]
    pub fn cycle(n: usize) -> Self {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, edges).expect("cycle endpoints are in range")
    }

    /// Complete graph `K_n` with edges in lexicographic order.
    #[must_use]
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n, edges).expect("complete graph endpoints are in range")
    }

    /// Complete bipartite graph `K_{a,b}`; the parts are `0..a` and `a..a+b`.
    #[must_use]
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Self::new(a + b, edges).expect("bipartite endpoints are in range")
    }

    /// Degree parity of every vertex in the subgraph `edges`; loops count twice.
    #[must_use]
    pub fn odd_vertices(&self, edges: &EdgeSet) -> Vec<usize> {
        let mut odd = vec![false; self.vertices];
        for e in edges.iter_ones() {
            let (u, v) = self.edges[e];
            if u != v {
                odd[u] ^= true;
                odd[v] ^= true;
            }
        }
        (0..self.vertices).filter(|&v| odd[v]).collect()
    }

    /// Number of connected components, counting isolated vertices.
    #[must_use]
    pub fn component_count(&self) -> usize {
        let labels = self.component_labels();
        labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    fn component_labels(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.vertices];
        let mut next = 0;
        for s in 0..self.vertices {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    #[must_use]
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Neighbour lists of `(vertex, edge index)`, in edge order.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u != v {
                adj[u].push((v, i));
                adj[v].push((u, i));
            }
        }
        adj
    }
}

/// Parses the graph format: a header `|V| |E|`, then one `u v [weight]`
/// line per edge with 1-based vertices. Text after `#` is ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let perr = |line: usize, message: String| GraphError::Parse { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut last = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(perr(line, "expected header `|V| |E|`".into()));
                }
                let v = fields[0].parse().map_err(|_| perr(line, "bad vertex count".into()))?;
                let e = fields[1].parse().map_err(|_| perr(line, "bad edge count".into()))?;
                header = Some((v, e));
            }
            Some((nv, ne)) => {
                if fields.len() != 2 && fields.len() != 3 {
                    return Err(perr(line, "expected `u v [weight]`".into()));
                }
                if edges.len() == ne {
                    return Err(perr(line, format!("more than {ne} edges")));
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields[..2]) {
                    let x: usize = f.parse().map_err(|_| perr(line, format!("bad vertex `{f}`")))?;
                    if x == 0 || x > nv {
                        return Err(perr(line, format!("vertex {x} outside 1..={nv}")));
                    }
                    *slot = x - 1;
                }
                edges.push((ends[0], ends[1]));
                if let Some(w) = fields.get(2) {
                    weights.push(w.parse::<f64>().map_err(|_| perr(line, format!("bad weight `{w}`")))?);
                }
            }
        }
    }
    let (nv, ne) = header.ok_or_else(|| perr(last, "missing header".into()))?;
    if edges.len() != ne {
        return Err(perr(last, format!("expected {ne} edges, found {}", edges.len())));
    }
    let g = Graph::new(nv, edges)?;
    match weights.len() {
        0 => Ok(g),
        k if k == ne => g.with_weights(weights),
        _ => Err(perr(last, "weights must be given for all edges or none".into())),
    }
}

/// Writes a graph in the format read by [`parse_graph`].
#[must_use]
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertices, g.edges.len());
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        let _ = write!(out, "{} {}", u + 1, v + 1);
        if let Some(w) = &g.weights {
            let _ = write!(out, " {}", w[i]);
        }
        out.push('\n');
    }
    out
}

/// Mod-2 vertex-edge incidence matrix; a loop gives a zero column.
#[must_use]
pub fn incidence_matrix(g: &Graph) -> BitMatrix {
    let mut m = BitMatrix::zeros(g.vertices, g.edges.len());
    for (j, &(u, v)) in g.edges.iter().enumerate() {
        if u != v {
            m.set(u, j, true);
            m.set(v, j, true);
        }
    }
    m
}

/// The cycle code `C(G)`, of dimension `|E| - |V| + t` for `t` components.
pub fn code_from_graph(g: &Graph) -> Result<LinearCode, GraphError> {
    if g.edges.is_empty() {
        return Err(GraphError::NoEdges);
    }
    Ok(LinearCode::from_parity_check(&incidence_matrix(g)))
}

/// Girth, average degree, and the two girth bounds evaluated on a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GirthStats {
    /// Length of a shortest cycle; `None` for a forest.
    pub girth: Option<usize>,
    pub avg_degree: f64,
    /// Rate of `C(G)`.
    pub rate: f64,
    /// `g <= 4 + ln|V| / ln(δ̄ - 1)`; vacuously true when `δ̄ <= 2` or acyclic.
    pub moore_bound_ok: bool,
    /// `d <= 4 ln n / ln(1 + r/2)` when the rate exceeds `r`; vacuously true
    /// for disconnected or acyclic graphs, rate at most `r`, or `n < 2`.
    pub rate_bound_ok: bool,
}

/// Length of a shortest cycle. Loops have length 1, parallel pairs length 2.
#[must_use]
pub fn girth(g: &Graph) -> Option<usize> {
    let adj = g.adjacency();
    let mut best: Option<usize> = None;
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        let len = if u == v {
            Some(1)
        } else {
            shortest_path_avoiding(&adj, u, v, i).map(|d| d + 1)
        };
        if let Some(l) = len {
            best = Some(best.map_or(l, |b| b.min(l)));
        }
    }
    best
}

fn shortest_path_avoiding(adj: &[Vec<(usize, usize)>], s: usize, t: usize, skip: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            return Some(dist[u]);
        }
        for &(w, e) in &adj[u] {
            if e != skip && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Evaluates the girth statistics, checking the rate bound against `r`.
pub fn girth_stats(g: &Graph, r: f64) -> Result<GirthStats, GraphError> {
    let code = code_from_graph(g)?;
    let n = g.edge_count();
    let gi = girth(g);
    let avg = 2.0 * n as f64 / g.vertices as f64;
    let rate = code.dim() as f64 / n as f64;
    let moore_bound_ok = match gi {
        Some(len) if avg > 2.0 => len as f64 <= 4.0 + (g.vertices as f64).ln() / (avg - 1.0).ln(),
        _ => true,
    };
    let rate_bound_ok = match gi {
        Some(d) if g.is_connected() && rate > r && n >= 2 => {
            d as f64 <= 4.0 * (n as f64).ln() / (1.0 + r / 2.0).ln()
        }
        _ => true,
    };
    Ok(GirthStats {
        girth: gi,
        avg_degree: avg,
        rate,
        moore_bound_ok,
        rate_bound_ok,
    })
}

/// Single-source shortest paths with predecessor edges. Edges are relaxed in
/// index order and only strict improvements replace a predecessor.
fn dijkstra(g: &Graph, adj: &[Vec<(usize, usize)>], w: &[f64], s: usize) -> (Vec<f64>, Vec<usize>) {
    let nv = g.vertices;
    let mut dist = vec![f64::INFINITY; nv];
    let mut pred = vec![usize::MAX; nv];
    let mut done = vec![false; nv];
    dist[s] = 0.0;
    for _ in 0..nv {
        let Some(u) = (0..nv)
            .filter(|&v| !done[v] && dist[v].is_finite())
            .min_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)))
        else {
            break;
        };
        done[u] = true;
        let mut nbrs = adj[u].clone();
        nbrs.sort_by_key(|&(_, e)| e);
        for (v, e) in nbrs {
            let nd = dist[u] + w[e];
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = e;
            }
        }
    }
    (dist, pred)
}

/// Minimum-weight `T`-join for nonnegative weights: an edge set whose
/// odd-degree vertices are exactly `terminals`.
///
/// Shortest paths between terminals are paired by an exact minimum-weight
/// perfect matching (subset dynamic programming), and the result is the
/// symmetric difference of the matched paths.
pub fn t_join(g: &Graph, weights: &[f64], terminals: &[usize]) -> Result<EdgeSet, GraphError> {
    if weights.len() != g.edge_count() {
        return Err(GraphError::WeightCount {
            expected: g.edge_count(),
            got: weights.len(),
        });
    }
    if let Some((edge, &weight)) = weights.iter().enumerate().find(|(_, &w)| w < 0.0) {
        return Err(GraphError::NegativeWeight { edge: edge + 1, weight });
    }
    let mut t: Vec<usize> = terminals.to_vec();
    t.sort_unstable();
    t.dedup();
    if let Some(&v) = t.iter().find(|&&v| v >= g.vertices) {
        return Err(GraphError::VertexOutOfRange {
            vertex: v + 1,
            count: g.vertices,
        });
    }
    if t.len() % 2 == 1 {
        return Err(GraphError::OddTerminalSet(t.len()));
    }
    let bound = Limits::global().tjoin_terminals;
    if t.len() > bound {
        return Err(GraphError::TooManyTerminals { size: t.len(), bound });
    }
    let mut join = EdgeSet::zeros(g.edge_count());
    if t.is_empty() {
        return Ok(join);
    }
    let labels = g.component_labels();
    let mut parity = vec![false; g.vertices];
    for &v in &t {
        parity[labels[v]] ^= true;
    }
    if parity.iter().any(|&p| p) {
        return Err(GraphError::NoTJoin);
    }

    let adj = g.adjacency();
    let paths: Vec<(Vec<f64>, Vec<usize>)> = t.iter().map(|&s| dijkstra(g, &adj, weights, s)).collect();
    let m = t.len();
    let full = (1usize << m) - 1;
    let mut best = vec![f64::INFINITY; 1 << m];
    let mut choice = vec![(0usize, 0usize); 1 << m];
    best[0] = 0.0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        for (j, &tj) in t.iter().enumerate().skip(i + 1) {
            if mask & (1 << j) == 0 {
                continue;
            }
            let rest = mask & !(1 << i) & !(1 << j);
            let cost = best[rest] + paths[i].0[tj];
            if cost < best[mask] {
                best[mask] = cost;
                choice[mask] = (i, j);
            }
        }
    }
    let mut mask = full;
    while mask != 0 {
        let (i, j) = choice[mask];
        let pred = &paths[i].1;
        let mut v = t[j];
        while v != t[i] {
            let e = pred[v];
            join.flip(e);
            let (a, b) = g.edges[e];
            v = if a == v { b } else { a };
        }
        mask &= !(1 << i) & !(1 << j);
    }
    Ok(join)
}

/// Minimum-weight Eulerian subgraph for arbitrary real weights: with `N` the
/// negative edges and `T` the odd vertices of `N`, the answer is
/// `t_join(|w|, T) Δ N`.
pub fn min_eulerian_subgraph(g: &Graph, weights: &[f64]) -> Result<EdgeSet, GraphError> {
    if weights.len() != g.edge_count() {
        return Err(GraphError::WeightCount {
            expected: g.edge_count(),
            got: weights.len(),
        });
    }
    let negative = EdgeSet::from_bools(&weights.iter().map(|&w| w < 0.0).collect::<Vec<_>>());
    let odd = g.odd_vertices(&negative);
    let abs: Vec<f64> = weights.iter().map(|w| w.abs()).collect();
    let mut join = t_join(g, &abs, &odd)?;
    join.xor_assign(&negative);
    Ok(join)
}

/// Minimizes `<γ, c>` over `c ∈ C(G)`.
pub fn graphic_linmin(g: &Graph, gamma: &[f64]) -> Result<(BitVec, f64), GraphError> {
    let word = min_eulerian_subgraph(g, gamma)?;
    let cost = word.iter_ones().map(|e| gamma[e]).sum();
    Ok((word, cost))
}

/// Searches for a graph whose cycle code equals `code` in the same
/// coordinate order.
///
/// Coordinates are processed in an order that brings short circuits
/// forward. An edge that raises the dimension of the processed part must
/// close a cycle, and its endpoints are forced by the boundary of the
/// earlier edges of the corresponding codeword. Every other edge joins two
/// components, possibly through new vertices; those choices are
/// backtracked. Returns `None` when no realization exists.
pub fn realize_graph(code: &LinearCode) -> Result<Option<Graph>, GraphError> {
    let n = code.len();
    let bound = Limits::global().realization_len;
    if n > bound {
        return Err(GraphError::RealizationBound { n, bound });
    }
    if n == 0 {
        return Ok(Some(Graph::new(1, Vec::new())?));
    }
    let order = processing_order(code)?;
    let reordered = code.restrict_in_order(&order);
    let (basis, lasts) = reordered
        .generator()
        .rref_in_order(&(0..n).rev().collect::<Vec<_>>());
    let mut closing: Vec<Option<BitVec>> = vec![None; n];
    for (row, &last) in basis.rows().iter().zip(&lasts) {
        closing[last] = Some(row.clone());
    }
    let mut search = Realizer {
        closing,
        ends: Vec::with_capacity(n),
        comp: Vec::new(),
    };
    if !search.extend(0) {
        return Ok(None);
    }
    let mut edges = vec![(0, 0); n];
    for (pos, &coord) in order.iter().enumerate() {
        edges[coord] = search.ends[pos];
    }
    let g = Graph::new(search.comp.len().max(1), edges)?;
    debug_assert_eq!(code_from_graph(&g).ok().as_ref(), Some(code));
    Ok(Some(g))
}

/// Coordinates of short minimal codewords first, then the rest.
fn processing_order(code: &LinearCode) -> Result<Vec<usize>, GraphError> {
    let n = code.len();
    let mut order = Vec::with_capacity(n);
    let mut taken = vec![false; n];
    let mut circuits = if Limits::global().allows_enumeration(code.dim()) {
        code.minimal_codewords()?
    } else {
        Vec::new()
    };
    circuits.sort_by_key(BitVec::weight);
    for c in &circuits {
        for j in c.iter_ones() {
            if !taken[j] {
                taken[j] = true;
                order.push(j);
            }
        }
    }
    order.extend((0..n).filter(|&j| !taken[j]));
    Ok(order)
}

struct Realizer {
    /// For each position, the codeword whose last one sits there, if any.
    closing: Vec<Option<BitVec>>,
    ends: Vec<(usize, usize)>,
    /// Component label of each vertex created so far.
    comp: Vec<usize>,
}

impl Realizer {
    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.closing.len() {
            return true;
        }
        if let Some(word) = self.closing[pos].clone() {
            let mut odd = vec![false; self.comp.len()];
            for e in word.iter_ones().filter(|&e| e < pos) {
                let (u, v) = self.ends[e];
                if u != v {
                    odd[u] ^= true;
                    odd[v] ^= true;
                }
            }
            let boundary: Vec<usize> = (0..odd.len()).filter(|&v| odd[v]).collect();
            let ends = match boundary.as_slice() {
                [] => {
                    if self.comp.is_empty() {
                        self.comp.push(0);
                    }
                    (0, 0)
                }
                &[u, v] => (u, v),
                _ => return false,
            };
            self.ends.push(ends);
            if self.extend(pos + 1) {
                return true;
            }
            self.ends.pop();
            return false;
        }
        let count = self.comp.len();
        let mut candidates = Vec::new();
        for u in 0..count {
            for v in u + 1..count {
                if self.comp[u] != self.comp[v] {
                    candidates.push((u, v));
                }
            }
        }
        candidates.extend((0..count).map(|u| (u, count)));
        candidates.push((count, count + 1));
        for (u, v) in candidates {
            let saved = self.comp.clone();
            while self.comp.len() <= v {
                let fresh = self.comp.len();
                self.comp.push(fresh);
            }
            let (keep, drop) = (self.comp[u], self.comp[v]);
            for c in &mut self.comp {
                if *c == drop {
                    *c = keep;
                }
            }
            self.ends.push((u, v));
            if self.extend(pos + 1) {
                return true;
            }
            self.ends.pop();
            self.comp = saved;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_gives_repetition_code() {
        let c = code_from_graph(&Graph::cycle(5)).unwrap();
        assert_eq!(c, LinearCode::from_rows(&["11111"]));
        assert_eq!(girth(&Graph::cycle(5)), Some(5));
    }

    #[test]
    fn path_t_join_uses_both_edges() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let j = t_join(&g, &[1.0, 1.0], &[0, 2]).unwrap();
        assert_eq!(j.to_string(), "11");
        assert!(t_join(&g, &[1.0, 1.0], &[]).unwrap().is_zero());
        assert!(matches!(t_join(&g, &[1.0, 1.0], &[0]), Err(GraphError::OddTerminalSet(1))));
    }

    #[test]
    fn triangle_eulerian_subgraphs() {
        let g = Graph::cycle(3);
        assert!(min_eulerian_subgraph(&g, &[1.0; 3]).unwrap().is_zero());
        let (w, cost) = graphic_linmin(&g, &[-1.0; 3]).unwrap();
        assert_eq!((w.weight(), cost), (3, -3.0));
    }

    #[test]
    fn hamming_is_not_graphic() {
        let h7 = LinearCode::from_rows(&["1000011", "0100101", "0010110", "0001111"]);
        assert!(realize_graph(&h7).unwrap().is_none());
        let k4 = code_from_graph(&Graph::complete(4)).unwrap();
        let g = realize_graph(&k4).unwrap().unwrap();
        assert_eq!(code_from_graph(&g).unwrap(), k4);
    }

    #[test]
    fn graph_format_round_trip() {
        let g = parse_graph("3 3\n1 2 0.5\n2 3 -1\n3 1 2\n").unwrap();
        assert_eq!(g.weights().unwrap(), &[0.5, -1.0, 2.0]);
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
        assert!(parse_graph("2 1\n1 3\n").is_err());
    }
}
