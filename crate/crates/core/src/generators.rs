//! Graph families: circulants, double circulants, their clockwise
//! orientations, the tightness instances for the oriented median, extremal
//! labellings and seeded random regular graphs.

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::algorithms::{median_cut, oriented_median_cut, unstable_flip_step};
use crate::error::{Error, Result};
use crate::graph::{cut_size, dicut_size, Cut, Family, Labelling, Orientation, RegularGraph};
use crate::oracle::{self, SearchMode};
use crate::rng;

/// Restart cap for [`make_random_regular`].
pub const MAX_RESTARTS: usize = 1000;

fn odd_jumps(d: usize) -> impl Iterator<Item = usize> {
    (1..d).step_by(2)
}

fn circulant_edges(n: usize, d: usize, offset: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * d / 2);
    for i in 0..n {
        for k in odd_jumps(d) {
            edges.push((offset + i, offset + (i + k) % n));
        }
    }
    edges
}

/// `C_n^d`: vertex `i` adjacent to `i ± k (mod n)` for every odd `k < d`.
pub fn make_circulant(n: usize, d: usize) -> Result<RegularGraph> {
    if d < 2 || d % 2 == 1 || n % 2 == 1 || n < 2 * d {
        return Err(Error::InvalidParameter(format!(
            "C_n^d needs even d >= 2 and even n >= 2d (got n = {n}, d = {d})"
        )));
    }
    Ok(RegularGraph::from_edges(n, &circulant_edges(n, d, 0))?
        .with_family(Family::Circulant { n, d }))
}

/// `D_{2n}^d`: outer copy of `C_n^{d-1}` on `0..n`, inner copy on `n..2n`,
/// and the matching `i -- n+i`.
pub fn make_double_circulant(n: usize, d: usize) -> Result<RegularGraph> {
    if d < 3 || d.is_multiple_of(2) || n % 2 == 1 || n < 2 * (d - 1) {
        return Err(Error::InvalidParameter(format!(
            "D_2n^d needs odd d >= 3 and even n >= 2(d-1) (got n = {n}, d = {d})"
        )));
    }
    let mut edges = circulant_edges(n, d - 1, 0);
    edges.extend(circulant_edges(n, d - 1, n));
    edges.extend((0..n).map(|i| (i, n + i)));
    Ok(RegularGraph::from_edges(2 * n, &edges)?.with_family(Family::DoubleCirculant { n, d }))
}

/// Jump edges go `i -> i+k (mod n)` on every cycle; matching edges go outer -> inner.
pub fn orient_clockwise(g: &RegularGraph) -> Result<Orientation> {
    let forward_on_cycle =
        |n: usize, d: usize, u: usize, v: usize| odd_jumps(d).any(|k| (u + k) % n == v);
    match g.family() {
        Some(Family::Circulant { n, d }) => Ok(Orientation::from_fn(g.clone(), |u, v| {
            forward_on_cycle(n, d, u, v)
        })),
        Some(Family::DoubleCirculant { n, d }) => Ok(Orientation::from_fn(g.clone(), |u, v| {
            if u < n && v >= n {
                true
            } else {
                forward_on_cycle(n, d - 1, u % n, v % n)
            }
        })),
        None => Err(Error::InvalidInput(
            "clockwise orientation needs a circulant or double circulant".into(),
        )),
    }
}

/// Orients every edge from the lower ID to the higher ID.
pub fn make_id_orientation(g: &RegularGraph, lab: &Labelling) -> Orientation {
    Orientation::from_fn(g.clone(), |u, v| lab.id(u) < lab.id(v))
}

/// Orients each edge by an independent fair coin.
pub fn make_random_orientation(g: &RegularGraph, seed: u64) -> Orientation {
    let mut rng = rng::seeded(seed);
    Orientation::from_fn(g.clone(), |_, _| rng.gen_bool(0.5))
}

/// Uniformly random permutation of `1..=n` as a labelling.
pub fn make_random_labelling(n: usize, seed: u64) -> Labelling {
    let mut ids: Vec<u64> = (1..=n as u64).collect();
    ids.shuffle(&mut rng::seeded(seed));
    Labelling::new(ids).expect("a permutation of 1..=n is a valid labelling")
}

/// `n` distinct IDs drawn uniformly from `1..=bound`, in random order.
pub fn make_random_sparse_labelling(n: usize, bound: u64, seed: u64) -> Result<Labelling> {
    if (bound as u128) < n as u128 {
        return Err(Error::InvalidParameter(format!(
            "{n} distinct IDs do not fit in 1..={bound}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let mut seen = std::collections::HashSet::with_capacity(n);
    let mut ids = Vec::with_capacity(n);
    while ids.len() < n {
        let id = rng.gen_range(1..=bound);
        if seen.insert(id) {
            ids.push(id);
        }
    }
    Labelling::with_bound(ids, bound)
}

/// Random simple `d`-regular graph from the pairing model.
///
/// Stubs are paired one at a time, each to a uniformly chosen remaining stub
/// that keeps the graph simple; a dead end restarts the whole pairing.
pub fn make_random_regular(n: usize, d: usize, seed: u64) -> Result<RegularGraph> {
    if (n * d) % 2 == 1 || n <= d {
        return Err(Error::InvalidParameter(format!(
            "random regular graph needs n*d even and n > d (got n = {n}, d = {d})"
        )));
    }
    let mut rng = rng::seeded(seed);
    for _ in 0..MAX_RESTARTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return RegularGraph::from_edges(n, &edges);
        }
    }
    Err(Error::Generation {
        restarts: MAX_RESTARTS,
    })
}

fn try_pairing(n: usize, d: usize, rng: &mut rng::Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    let mut edges = Vec::with_capacity(n * d / 2);
    let mut candidates = Vec::new();
    while let Some(u) = stubs.pop() {
        candidates.clear();
        candidates.extend(
            stubs
                .iter()
                .enumerate()
                .filter(|(_, &w)| w != u && !adj[u].contains(&w))
                .map(|(i, _)| i),
        );
        let &pick = candidates.choose(rng)?;
        let w = stubs.swap_remove(pick);
        adj[u].push(w);
        adj[w].push(u);
        edges.push((u, w));
    }
    Some(edges)
}

/// Vertex blocks of an ABCD-type instance. `a` and `d` form the positive side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blocks {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

impl Blocks {
    /// The cut `(A ∪ D, B ∪ C)`, i.e. `(V+, V-)`.
    pub fn algorithm_cut(&self, n: usize) -> Cut {
        Cut::from_left_set(n, self.a.iter().chain(&self.d).copied())
    }

    /// The cut `(A ∪ C, B ∪ D)`.
    pub fn optimal_cut(&self, n: usize) -> Cut {
        Cut::from_left_set(n, self.a.iter().chain(&self.c).copied())
    }
}

#[derive(Clone, Debug)]
pub struct AbcdInstance {
    pub orientation: Orientation,
    pub blocks: Blocks,
}

/// Arcs between two vertex groups with prescribed per-vertex counts.
struct PairQuota {
    x: Vec<usize>,
    y: Vec<usize>,
    /// arcs x -> y leaving each x vertex
    x_out: Vec<usize>,
    /// arcs y -> x entering each x vertex
    x_in: Vec<usize>,
    /// arcs y -> x leaving each y vertex
    y_out: Vec<usize>,
    /// arcs x -> y entering each y vertex
    y_in: Vec<usize>,
}

/// `total` split over `len` slots as evenly as possible, larger shares first.
fn spread(total: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|i| total / len + usize::from(i < total % len))
        .collect()
}

/// Realizes a pair quota as a simple bipartite oriented graph.
///
/// The undirected part is built Havel-Hakimi style (each `x` takes the `y`s
/// with the largest remaining demand; `rotation` shifts the tie-break), then
/// directions are assigned by a b-matching flow.
fn realize_pair(q: &PairQuota, rotation: usize) -> Option<Vec<(usize, usize)>> {
    let nx = q.x.len();
    let ny = q.y.len();
    if q.x_out.iter().sum::<usize>() != q.y_in.iter().sum::<usize>()
        || q.x_in.iter().sum::<usize>() != q.y_out.iter().sum::<usize>()
    {
        return None;
    }
    let x_deg: Vec<usize> = (0..nx).map(|i| q.x_out[i] + q.x_in[i]).collect();
    let mut y_left: Vec<usize> = (0..ny).map(|j| q.y_out[j] + q.y_in[j]).collect();
    let mut x_order: Vec<usize> = (0..nx).collect();
    x_order.sort_by_key(|&i| (std::cmp::Reverse(x_deg[i]), (i + rotation) % nx.max(1)));
    let mut pairs = Vec::new();
    for &i in &x_order {
        let mut ys: Vec<usize> = (0..ny).filter(|&j| y_left[j] > 0).collect();
        if ys.len() < x_deg[i] {
            return None;
        }
        ys.sort_by_key(|&j| (std::cmp::Reverse(y_left[j]), (j + rotation) % ny.max(1)));
        for &j in &ys[..x_deg[i]] {
            y_left[j] -= 1;
            pairs.push((i, j));
        }
    }
    if y_left.iter().any(|&r| r > 0) {
        return None;
    }
    let forward = orient_by_flow(nx, ny, &pairs, &q.x_out, &q.y_in)?;
    Some(
        pairs
            .iter()
            .zip(forward)
            .map(|(&(i, j), fwd)| {
                if fwd {
                    (q.x[i], q.y[j])
                } else {
                    (q.y[j], q.x[i])
                }
            })
            .collect(),
    )
}

/// Chooses which of `pairs` point x -> y so that x vertex `i` has `x_out[i]`
/// such arcs and y vertex `j` receives `y_in[j]`.
fn orient_by_flow(
    nx: usize,
    ny: usize,
    pairs: &[(usize, usize)],
    x_out: &[usize],
    y_in: &[usize],
) -> Option<Vec<bool>> {
    let source = nx + ny;
    let sink = source + 1;
    let mut net = FlowNetwork::new(nx + ny + 2);
    for (i, &cap) in x_out.iter().enumerate() {
        net.add_edge(source, i, cap);
    }
    for (j, &cap) in y_in.iter().enumerate() {
        net.add_edge(nx + j, sink, cap);
    }
    let pair_edges: Vec<usize> = pairs
        .iter()
        .map(|&(i, j)| net.add_edge(i, nx + j, 1))
        .collect();
    let need: usize = x_out.iter().sum();
    if net.max_flow(source, sink) != need {
        return None;
    }
    Some(pair_edges.iter().map(|&e| net.flow(e) == 1).collect())
}

/// Edmonds-Karp on a small residual network.
struct FlowNetwork {
    /// (to, residual capacity); edge `e ^ 1` is the reverse of `e`.
    edges: Vec<(usize, usize)>,
    capacity: Vec<usize>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            edges: Vec::new(),
            capacity: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: usize) -> usize {
        let e = self.edges.len();
        self.edges.push((to, cap));
        self.capacity.push(cap);
        self.adj[from].push(e);
        self.edges.push((from, 0));
        self.capacity.push(0);
        self.adj[to].push(e + 1);
        e
    }

    fn flow(&self, e: usize) -> usize {
        self.capacity[e] - self.edges[e].1
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut total = 0;
        loop {
            let mut via: Vec<Option<usize>> = vec![None; self.adj.len()];
            let mut queue = std::collections::VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                for &e in &self.adj[u] {
                    let (to, res) = self.edges[e];
                    if res > 0 && to != source && via[to].is_none() {
                        via[to] = Some(e);
                        queue.push_back(to);
                    }
                }
            }
            if via[sink].is_none() {
                return total;
            }
            let mut push = usize::MAX;
            let mut v = sink;
            while let Some(e) = via[v] {
                push = push.min(self.edges[e].1);
                v = self.edges[e ^ 1].0;
            }
            let mut v = sink;
            while let Some(e) = via[v] {
                self.edges[e].1 -= push;
                self.edges[e ^ 1].1 += push;
                v = self.edges[e ^ 1].0;
            }
            total += push;
        }
    }
}

fn abcd_sizes(d: usize, n: usize) -> Result<(usize, usize)> {
    if d < 3 || d.is_multiple_of(2) || n == 0 || !n.is_multiple_of(4 * d) {
        return Err(Error::InvalidParameter(format!(
            "ABCD instance needs odd d >= 3 and n a positive multiple of 4d (got d = {d}, n = {n})"
        )));
    }
    let t = n / (4 * d);
    Ok(((d + 1) * t, (d - 1) * t))
}

/// Wires the four independent sets given how many arcs each `A` vertex
/// sends to `D` (`a_to_d`) and each `B` vertex receives from `C` (`c_to_b`).
///
/// Per vertex: `A` has out `(d+1)/2`, in `(d-1)/2` (all from `D`); `B` the
/// reverse (all out-arcs to `C`); `D` sends `(d+1)/2` to `A` and receives
/// `(d-1)/2`; `C` sends `(d-1)/2` to `B` and receives `(d+1)/2`.
fn wire_abcd(
    d: usize,
    sizes: (usize, usize),
    a_to_d: &[usize],
    c_to_b: &[usize],
) -> Result<AbcdInstance> {
    let (sa, sc) = sizes;
    let n = 2 * sa + 2 * sc;
    let (lo, hi) = ((d - 1) / 2, d.div_ceil(2));
    let blocks = Blocks {
        a: (0..sa).collect(),
        b: (sa..2 * sa).collect(),
        c: (2 * sa..2 * sa + sc).collect(),
        d: (2 * sa + sc..n).collect(),
    };
    if a_to_d.iter().chain(c_to_b).any(|&x| x > hi) {
        return Err(Error::Construction("per-vertex quota above (d+1)/2".into()));
    }
    let quotas = [
        PairQuota {
            x: blocks.a.clone(),
            y: blocks.b.clone(),
            x_out: a_to_d.iter().map(|&k| hi - k).collect(),
            x_in: vec![0; sa],
            y_out: vec![0; sa],
            y_in: c_to_b.iter().map(|&k| hi - k).collect(),
        },
        PairQuota {
            x: blocks.a.clone(),
            y: blocks.d.clone(),
            x_out: a_to_d.to_vec(),
            x_in: vec![lo; sa],
            y_out: vec![hi; sc],
            y_in: vec![lo; sc],
        },
        PairQuota {
            x: blocks.c.clone(),
            y: blocks.b.clone(),
            x_out: vec![lo; sc],
            x_in: vec![hi; sc],
            y_out: vec![lo; sa],
            y_in: c_to_b.to_vec(),
        },
    ];
    for rotation in 0..n {
        let arcs: Option<Vec<(usize, usize)>> = quotas
            .iter()
            .map(|q| realize_pair(q, rotation))
            .collect::<Option<Vec<_>>>()
            .map(|parts| parts.concat());
        let Some(arcs) = arcs else { continue };
        let orientation = Orientation::from_directed_edges(n, &arcs)?;
        if orientation.graph().degree() != d {
            continue;
        }
        return Ok(AbcdInstance {
            orientation,
            blocks,
        });
    }
    Err(Error::Construction(format!(
        "no simple realization of the ABCD quotas for d = {d}, n = {n}"
    )))
}

/// Tightness instance for the oriented median: independent sets `A, B, C, D`
/// with `|A| = |B| = (d+1)n/4d`, `|C| = |D| = (d-1)n/4d`, arcs `A->B` (n/2 of
/// them), `A<->D` and `B<->C`. The algorithm picks `(A ∪ D, B ∪ C)` with
/// `n/2` arcs; `(A ∪ C, B ∪ D)` has `(d²+1)n/4d`.
pub fn make_abcd_instance(d: usize, n: usize) -> Result<AbcdInstance> {
    let sizes = abcd_sizes(d, n)?;
    let cross = (d - 1) * (d - 1) * (n / (4 * d)) / 2;
    let a_to_d = spread(cross, sizes.0);
    let inst = wire_abcd(d, sizes, &a_to_d, &a_to_d)?;
    check_abcd(&inst, d, n)?;
    Ok(inst)
}

fn check_abcd(inst: &AbcdInstance, d: usize, n: usize) -> Result<()> {
    let o = &inst.orientation;
    let (lo, hi) = ((d - 1) / 2, d.div_ceil(2));
    let ok_a = inst
        .blocks
        .a
        .iter()
        .all(|&v| o.out_degree(v) == hi && o.in_degree(v) == lo);
    let ok_b = inst
        .blocks
        .b
        .iter()
        .all(|&v| o.out_degree(v) == lo && o.in_degree(v) == hi);
    let ok_c = inst.blocks.c.iter().all(|&v| o.deficit(v) < 0);
    let ok_d = inst.blocks.d.iter().all(|&v| o.deficit(v) > 0);
    let alg = dicut_size(o, &inst.blocks.algorithm_cut(n))?;
    let opt = dicut_size(o, &inst.blocks.optimal_cut(n))?;
    if !(ok_a && ok_b && ok_c && ok_d) || 2 * alg != n || 4 * d * opt != (d * d + 1) * n {
        return Err(Error::Construction(format!(
            "ABCD wiring check failed (algorithm cut {alg}, reference cut {opt})"
        )));
    }
    Ok(())
}

/// Vertex budget for [`make_single_flip_stuck_instance`]; instances must be
/// small enough for the exact MaxDiCut oracle.
pub const DEFAULT_STUCK_MAX_N: usize = oracle::MAX_DICUT_N;

/// An oriented graph on which the oriented median is exactly tight and one
/// round of unstable flips adds nothing.
#[derive(Clone, Debug)]
pub struct StuckInstance {
    pub instance: AbcdInstance,
    /// Number of `A` vertices with no `B` neighbour (likewise for `B`).
    pub unstable_per_side: usize,
    pub cut0: usize,
    pub cut1: usize,
    pub opt: usize,
}

/// Refines the ABCD instance: `A` splits into `A_s` (all out-arcs to `B`) and
/// `A_u` (all neighbours in `D`), and `B` likewise. Every arc touching an
/// unstable vertex then joins two vertices that flip together, so the first
/// flip creates no new cut arc. Tries `n = 4d, 8d, ...` up to `max_n` and
/// checks each candidate against the exact oracle.
pub fn make_single_flip_stuck_instance(d: usize, max_n: usize) -> Result<StuckInstance> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "d must be odd and >= 3 (got {d})"
        )));
    }
    let hi = d.div_ceil(2);
    for n in (1..).map(|t| 4 * d * t).take_while(|&n| n <= max_n) {
        let (sa, sc) = abcd_sizes(d, n)?;
        let cross = (d - 1) * (d - 1) * (n / (4 * d)) / 2;
        if !cross.is_multiple_of(hi) || sc < d {
            continue;
        }
        let unstable = cross / hi;
        let a_to_d: Vec<usize> = (0..sa).map(|i| if i < unstable { hi } else { 0 }).collect();
        let Ok(instance) = wire_abcd(d, (sa, sc), &a_to_d, &a_to_d) else {
            continue;
        };
        check_abcd(&instance, d, n)?;
        let o = &instance.orientation;
        let start = oriented_median_cut(o)?;
        let cut0 = dicut_size(o, &start)?;
        let cut1 = dicut_size(o, &unstable_flip_step(o.graph(), &start))?;
        let Ok((opt, _)) = oracle::max_dicut_exact(o) else {
            continue;
        };
        if cut1 == cut0 && cut0 * (d * d + 1) == 2 * d * opt {
            return Ok(StuckInstance {
                instance,
                unstable_per_side: unstable,
                cut0,
                cut1,
                opt,
            });
        }
    }
    Err(Error::NotFound { best: 0 })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum LabellingMethod {
    /// Outer cycle gets `1..=n` clockwise, inner cycle `n+1..=2n`.
    BlockPattern,
    Annealed {
        seed: u64,
        moves: usize,
    },
}

#[derive(Clone, Debug)]
pub struct ExtremalLabelling {
    pub labelling: Labelling,
    pub cut_size: usize,
    /// `N/2 + (d-2)^2 + 1` for `N` vertices.
    pub target: usize,
    pub method: LabellingMethod,
}

pub const EXTREMAL_SEED: u64 = 0x5eed;

/// Labelling of `D_{2n}^d` on which the median cut is at most
/// `N/2 + (d-2)^2 + 1`, `N = 2n`. The block pattern is tried first, then a
/// fixed-seed annealing run started from it.
pub fn make_extremal_labelling(g: &RegularGraph) -> Result<ExtremalLabelling> {
    let Some(Family::DoubleCirculant { n, d }) = g.family() else {
        return Err(Error::InvalidInput(
            "extremal labelling needs D_2n^d".into(),
        ));
    };
    let target = n + (d - 2) * (d - 2) + 1;
    let pattern = Labelling::identity(2 * n);
    let size = cut_size(g, &median_cut(g, &pattern)?)?;
    if size <= target {
        return Ok(ExtremalLabelling {
            labelling: pattern,
            cut_size: size,
            target,
            method: LabellingMethod::BlockPattern,
        });
    }
    let config = oracle::AnnealConfig {
        seed: EXTREMAL_SEED,
        ..oracle::AnnealConfig::default()
    };
    let moves = config.moves;
    let found = oracle::adversarial_labelling_search(
        g,
        median_cut,
        &SearchMode::Anneal {
            config,
            start: Some(pattern),
        },
    )?;
    if found.cut_size > target {
        return Err(Error::NotFound {
            best: found.cut_size,
        });
    }
    Ok(ExtremalLabelling {
        labelling: found.labelling,
        cut_size: found.cut_size,
        target,
        method: LabellingMethod::Annealed {
            seed: EXTREMAL_SEED,
            moves,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_bipartite;

    #[test]
    fn circulant_c12_4() {
        let g = make_circulant(12, 4).unwrap();
        assert_eq!(g.m(), 24);
        assert!(g.validate_regular(4));
        assert!(!g.validate_regular(3));
        assert_eq!(g.neighbors(0), &[1, 3, 9, 11]);
        assert!(is_bipartite(&g).is_some());
    }

    #[test]
    fn circulant_with_d2_is_a_cycle() {
        let g = make_circulant(8, 2).unwrap();
        assert_eq!(g.m(), 8);
        assert_eq!(g.neighbors(0), &[1, 7]);
    }

    #[test]
    fn circulant_parameter_errors() {
        assert!(make_circulant(13, 4).is_err());
        assert!(make_circulant(12, 3).is_err());
        assert!(make_circulant(6, 4).is_err());
        assert!(make_double_circulant(12, 4).is_err());
        assert!(make_double_circulant(7, 3).is_err());
        assert!(make_double_circulant(6, 5).is_err());
    }

    #[test]
    fn double_circulant_d24_5() {
        let g = make_double_circulant(12, 5).unwrap();
        assert_eq!((g.n(), g.m()), (24, 60));
        assert!(g.validate_regular(5));
        let w = is_bipartite(&g).unwrap();
        assert_eq!(cut_size(&g, &w).unwrap(), 60);
        assert!(g.is_adjacent(3, 15));
    }

    #[test]
    fn circular_ladder() {
        let g = make_double_circulant(6, 3).unwrap();
        assert_eq!((g.n(), g.m()), (12, 18));
        assert_eq!(g.neighbors(0), &[1, 5, 6]);
    }

    #[test]
    fn clockwise_orientations() {
        let c = orient_clockwise(&make_circulant(12, 4).unwrap()).unwrap();
        assert!((0..12).all(|v| c.out_degree(v) == 2 && c.in_degree(v) == 2));
        assert!(c.has_arc(0, 1) && c.has_arc(0, 3) && c.has_arc(11, 0));

        let dd = orient_clockwise(&make_double_circulant(12, 5).unwrap()).unwrap();
        let part = dd.deficit_partition();
        assert_eq!(part.positive, (0..12).collect::<Vec<_>>());
        assert_eq!(part.negative, (12..24).collect::<Vec<_>>());
        assert!(part.zero.is_empty());

        let plain = RegularGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(orient_clockwise(&plain).is_err());
    }

    #[test]
    fn random_regular_is_deterministic() {
        let a = make_random_regular(10, 3, 1).unwrap();
        assert_eq!(a, make_random_regular(10, 3, 1).unwrap());
        assert!(a.validate_regular(3));
        let k4 = make_random_regular(4, 3, 99).unwrap();
        assert_eq!(k4.m(), 6);
        assert!(make_random_regular(5, 3, 0).is_err());
        assert!(make_random_regular(3, 3, 0).is_err());
    }

    #[test]
    fn dense_random_regular_graphs_generate() {
        for seed in 0..5 {
            assert!(make_random_regular(100, 7, seed)
                .unwrap()
                .validate_regular(7));
            assert!(make_random_regular(8, 7, seed).unwrap().validate_regular(7));
        }
    }

    #[test]
    fn id_orientation_on_k4() {
        let g = make_random_regular(4, 3, 0).unwrap();
        let o = make_id_orientation(&g, &Labelling::identity(4));
        let deficits: Vec<i64> = (0..4).map(|v| o.deficit(v)).collect();
        assert_eq!(deficits, vec![3, 1, -1, -3]);
        assert!(o.is_acyclic());
    }

    #[test]
    fn random_orientation_is_reproducible() {
        let g = make_random_regular(20, 3, 2).unwrap();
        assert_eq!(
            make_random_orientation(&g, 5),
            make_random_orientation(&g, 5)
        );
    }

    #[test]
    fn abcd_3_12_arc_families() {
        let inst = make_abcd_instance(3, 12).unwrap();
        let o = &inst.orientation;
        let b = &inst.blocks;
        assert_eq!((b.a.len(), b.b.len(), b.c.len(), b.d.len()), (4, 4, 2, 2));
        assert!(o.graph().validate_regular(3));
        let count = |from: &[usize], to: &[usize]| {
            o.arcs()
                .iter()
                .filter(|(t, h)| from.contains(t) && to.contains(h))
                .count()
        };
        assert_eq!(count(&b.a, &b.b), 6);
        assert_eq!(count(&b.a, &b.d), 2);
        assert_eq!(count(&b.d, &b.a), 4);
        assert_eq!(count(&b.c, &b.b), 2);
        assert_eq!(count(&b.b, &b.c), 4);
        assert_eq!(count(&b.b, &b.a), 0);
        assert_eq!(count(&b.d, &b.c) + count(&b.c, &b.d), 0);
        assert_eq!(dicut_size(o, &b.algorithm_cut(12)).unwrap(), 6);
        assert_eq!(dicut_size(o, &b.optimal_cut(12)).unwrap(), 10);
        assert_eq!(oriented_median_cut(o).unwrap(), b.algorithm_cut(12));
    }

    #[test]
    fn abcd_larger_parameters() {
        for (d, n) in [(5, 20), (3, 24), (5, 40), (7, 28), (7, 56)] {
            let inst = make_abcd_instance(d, n).unwrap();
            assert!(inst.orientation.graph().validate_regular(d));
            assert_eq!(
                dicut_size(&inst.orientation, &inst.blocks.optimal_cut(n)).unwrap() * 4 * d,
                (d * d + 1) * n
            );
        }
        assert!(make_abcd_instance(3, 10).is_err());
        assert!(make_abcd_instance(4, 16).is_err());
    }

    #[test]
    fn stuck_instance_for_d3() {
        let s = make_single_flip_stuck_instance(3, DEFAULT_STUCK_MAX_N).unwrap();
        let o = &s.instance.orientation;
        assert_eq!(o.n(), 24);
        assert!(o.graph().validate_regular(3));
        assert_eq!((s.cut0, s.cut1, s.opt), (12, 12, 20));
        // every arc of the directed cut joins two stable vertices
        let start = oriented_median_cut(o).unwrap();
        for &(t, h) in o.arcs() {
            if start.side(t).is_left() && !start.side(h).is_left() {
                assert!(crate::algorithms::is_stable(o.graph(), &start, t));
                assert!(crate::algorithms::is_stable(o.graph(), &start, h));
            }
        }
    }

    #[test]
    fn stuck_instance_out_of_budget() {
        assert!(matches!(
            make_single_flip_stuck_instance(5, DEFAULT_STUCK_MAX_N),
            Err(Error::NotFound { .. })
        ));
        assert!(make_single_flip_stuck_instance(4, 100).is_err());
    }

    #[test]
    fn extremal_labellings() {
        let g = make_double_circulant(12, 5).unwrap();
        let ex = make_extremal_labelling(&g).unwrap();
        assert_eq!(ex.target, 22);
        assert!(ex.cut_size <= 22 && ex.cut_size >= 18);

        let g = make_double_circulant(6, 3).unwrap();
        let ex = make_extremal_labelling(&g).unwrap();
        assert_eq!(ex.target, 8);
        assert_eq!(ex.cut_size, 8);
        assert_eq!(ex.method, LabellingMethod::BlockPattern);

        assert!(make_extremal_labelling(&make_circulant(12, 4).unwrap()).is_err());
    }
}
