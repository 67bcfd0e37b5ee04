//! Regular graphs, orientations, ID labellings and cuts.
//!
//! Vertices are `0..n`. Distributed IDs live in a separate [`Labelling`] so a
//! single graph can be relabelled freely. All values are immutable once built.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Side of a cut. `Left` is the tail side of a directed cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn is_left(self) -> bool {
        self == Side::Left
    }
}

/// Structured families the generators know how to orient clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `C_n^d`: an `n`-cycle plus all odd jumps below `d`.
    Circulant { n: usize, d: usize },
    /// `D_{2n}^d`: two copies of `C_n^{d-1}` joined by the matching `i <-> n+i`.
    DoubleCirculant { n: usize, d: usize },
}

/// Simple undirected graph in which every vertex has degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGraph {
    d: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    family: Option<Family>,
}

/// True iff `adjacency` describes a simple, symmetric graph with all degrees `d`.
pub fn validate_regular(adjacency: &[Vec<usize>], d: usize) -> bool {
    let n = adjacency.len();
    for (v, nbrs) in adjacency.iter().enumerate() {
        if nbrs.len() != d {
            return false;
        }
        let mut sorted = nbrs.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        for &w in nbrs {
            if w == v || w >= n || !adjacency[w].contains(&v) {
                return false;
            }
        }
    }
    true
}

impl RegularGraph {
    /// Builds a graph on `n` vertices from an undirected edge list.
    ///
    /// The degree is taken from vertex 0 and must be uniform.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Self::from_adjacency(adj)
    }

    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Result<Self> {
        let d = adj.first().map_or(0, Vec::len);
        for nbrs in adj.iter_mut() {
            nbrs.sort_unstable();
        }
        if !validate_regular(&adj, d) {
            return Err(Error::InvalidInput(
                "adjacency is not a simple symmetric regular graph".into(),
            ));
        }
        let edges = adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        Ok(RegularGraph {
            d,
            adj,
            edges,
            family: None,
        })
    }

    pub(crate) fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbours of `v`; the index into this slice is the port number.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of the undirected edge `{u, v}` in [`edges`](Self::edges).
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn validate_regular(&self, d: usize) -> bool {
        validate_regular(&self.adj, d)
    }
}

/// BFS 2-colouring. Returns a proper colouring as a cut when one exists.
pub fn is_bipartite(g: &RegularGraph) -> Option<Cut> {
    let n = g.n();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(Side::Left);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].expect("queued vertices are coloured");
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(sv.flipped());
                        queue.push_back(w);
                    }
                    Some(sw) if sw == sv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(Cut::new(
        side.into_iter().map(|s| s.expect("all coloured")).collect(),
    ))
}

/// Direction for every edge of a [`RegularGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    graph: RegularGraph,
    /// `arcs[i]` is edge `i` of the graph written as `(tail, head)`.
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

/// Vertices split by the sign of their deficit.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DeficitPartition {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub zero: Vec<usize>,
}

impl Orientation {
    /// Orients edge `(u, v)` (with `u < v`) as `u -> v` iff `forward(u, v)`.
    pub fn from_fn(graph: RegularGraph, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let arcs = graph
            .edges()
            .iter()
            .map(|&(u, v)| if forward(u, v) { (u, v) } else { (v, u) })
            .collect();
        Self::build(graph, arcs)
    }

    /// Orients `graph` with an explicit arc list that must cover every edge exactly once.
    pub fn from_arcs(graph: RegularGraph, arcs: &[(usize, usize)]) -> Result<Self> {
        if arcs.len() != graph.m() {
            return Err(Error::InvalidInput(format!(
                "{} arcs given for {} edges",
                arcs.len(),
                graph.m()
            )));
        }
        let mut by_edge = vec![None; graph.m()];
        for &(t, h) in arcs {
            let idx = graph
                .edge_index(t, h)
                .filter(|_| t != h && t < graph.n() && h < graph.n())
                .ok_or_else(|| Error::InvalidInput(format!("arc {t}->{h} is not an edge")))?;
            if by_edge[idx].replace((t, h)).is_some() {
                return Err(Error::InvalidInput(format!("edge {t}-{h} oriented twice")));
            }
        }
        let arcs = by_edge
            .into_iter()
            .map(|a| a.expect("all edges covered"))
            .collect();
        Ok(Self::build(graph, arcs))
    }

    /// Builds the underlying graph from the arcs, then orients it.
    pub fn from_directed_edges(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let graph = RegularGraph::from_edges(n, arcs)?;
        Self::from_arcs(graph, arcs)
    }

    fn build(graph: RegularGraph, arcs: Vec<(usize, usize)>) -> Self {
        let n = graph.n();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(t, h) in &arcs {
            out_adj[t].push(h);
            in_adj[h].push(t);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }
        Orientation {
            graph,
            arcs,
            out_adj,
            in_adj,
        }
    }

    pub fn graph(&self) -> &RegularGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `(tail, head)` per edge, aligned with `graph().edges()`.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
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

    /// `d+(v) - d-(v)`.
    pub fn deficit(&self, v: usize) -> i64 {
        self.out_degree(v) as i64 - self.in_degree(v) as i64
    }

    /// True iff `u -> v` is an arc.
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn deficit_partition(&self) -> DeficitPartition {
        let mut part = DeficitPartition::default();
        for v in 0..self.n() {
            match self.deficit(v).signum() {
                1 => part.positive.push(v),
                -1 => part.negative.push(v),
                _ => part.zero.push(v),
            }
        }
        part
    }

    /// Kahn's algorithm.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &self.out_adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == n
    }
}

/// Injective vertex -> ID map with IDs in `1..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling {
    ids: Vec<u64>,
    bound: u64,
}

impl Labelling {
    /// Default ID bound `n^3`.
    pub fn default_bound(n: usize) -> u64 {
        (n as u64).saturating_pow(3).max(1)
    }

    pub fn new(ids: Vec<u64>) -> Result<Self> {
        let bound = Self::default_bound(ids.len());
        Self::with_bound(ids, bound)
    }

    pub fn with_bound(ids: Vec<u64>, bound: u64) -> Result<Self> {
        if let Some(&bad) = ids.iter().find(|&&id| id == 0 || id > bound) {
            return Err(Error::InvalidInput(format!("ID {bad} outside 1..={bound}")));
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("duplicate ID {}", w[0])));
        }
        Ok(Labelling { ids, bound })
    }

    /// IDs `1..=n` in vertex order.
    pub fn identity(n: usize) -> Self {
        Labelling {
            ids: (1..=n as u64).collect(),
            bound: Self::default_bound(n),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn max_id(&self) -> u64 {
        self.ids.iter().copied().max().unwrap_or(0)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Swaps the IDs of two vertices.
    pub fn swapped(&self, u: usize, v: usize) -> Self {
        let mut ids = self.ids.clone();
        ids.swap(u, v);
        Labelling {
            ids,
            bound: self.bound,
        }
    }
}

/// Total assignment of vertices to sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    sides: Vec<Side>,
}

impl Cut {
    pub fn new(sides: Vec<Side>) -> Self {
        Cut { sides }
    }

    pub fn uniform(n: usize, side: Side) -> Self {
        Cut {
            sides: vec![side; n],
        }
    }

    /// Vertices in `left` go Left, all others Right.
    pub fn from_left_set(n: usize, left: impl IntoIterator<Item = usize>) -> Self {
        let mut cut = Self::uniform(n, Side::Right);
        for v in left {
            cut.sides[v] = Side::Left;
        }
        cut
    }

    /// Bit `v` of `mask` set means vertex `v` is Left.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Cut {
            sides: (0..n)
                .map(|v| {
                    if mask >> v & 1 == 1 {
                        Side::Left
                    } else {
                        Side::Right
                    }
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn set(&mut self, v: usize, side: Side) {
        self.sides[v] = side;
    }

    pub fn flip(&mut self, v: usize) {
        self.sides[v] = self.sides[v].flipped();
    }

    /// Same partition with the sides swapped.
    pub fn mirror(&self) -> Cut {
        Cut {
            sides: self.sides.iter().map(|s| s.flipped()).collect(),
        }
    }

    pub fn left(&self) -> Vec<usize> {
        self.vertices_on(Side::Left)
    }

    pub fn right(&self) -> Vec<usize> {
        self.vertices_on(Side::Right)
    }

    fn vertices_on(&self, side: Side) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.sides[v] == side).collect()
    }
}

fn check_total(n: usize, c: &Cut) -> Result<()> {
    if c.len() != n {
        return Err(Error::InvalidInput(format!(
            "cut assigns {} vertices, graph has {n}",
            c.len()
        )));
    }
    Ok(())
}

/// Number of edges with endpoints on different sides.
pub fn cut_size(g: &RegularGraph, c: &Cut) -> Result<usize> {
    check_total(g.n(), c)?;
    Ok(g.edges()
        .iter()
        .filter(|&&(u, v)| c.side(u) != c.side(v))
        .count())
}

/// Number of arcs from a Left vertex to a Right vertex.
pub fn dicut_size(o: &Orientation, c: &Cut) -> Result<usize> {
    Ok(dicut_arcs(o, c)?.len())
}

/// Indices (into `o.arcs()`) of the arcs in the directed cut.
pub fn dicut_arcs(o: &Orientation, c: &Cut) -> Result<Vec<usize>> {
    check_total(o.n(), c)?;
    Ok(o.arcs()
        .iter()
        .enumerate()
        .filter(|(_, &(t, h))| c.side(t).is_left() && !c.side(h).is_left())
        .map(|(i, _)| i)
        .collect())
}
