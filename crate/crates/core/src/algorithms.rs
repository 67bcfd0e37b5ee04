//! Cut algorithms as plain functions: median, oriented median, unstable-vertex
//! flips, distributed and sequential FLIP, random cut, maximality check.
//!
//! The distributed versions live in [`crate::congest::programs`] and must agree
//! with these exactly.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cut_size, dicut_size, Cut, Labelling, Orientation, RegularGraph, Side};
use crate::rng;

fn require_odd(d: usize, reason: &'static str) -> Result<()> {
    if d.is_multiple_of(2) {
        return Err(Error::UnsupportedDegree { degree: d, reason });
    }
    Ok(())
}

/// Side chosen by the median rule: Left iff the median neighbour ID exceeds
/// the own ID (equivalently, more neighbours with a higher ID than lower).
pub fn median_side(own: u64, neighbour_ids: &mut [u64]) -> Side {
    neighbour_ids.sort_unstable();
    let median = neighbour_ids[neighbour_ids.len() / 2];
    if median > own {
        Side::Left
    } else {
        Side::Right
    }
}

/// One-round median algorithm.
pub fn median_cut(g: &RegularGraph, lab: &Labelling) -> Result<Cut> {
    require_odd(g.degree(), "median of an even number of IDs is not defined")?;
    if lab.len() != g.n() {
        return Err(Error::InvalidInput(format!(
            "labelling covers {} vertices, graph has {}",
            lab.len(),
            g.n()
        )));
    }
    let mut buf = Vec::with_capacity(g.degree());
    let sides = (0..g.n())
        .map(|v| {
            buf.clear();
            buf.extend(g.neighbors(v).iter().map(|&w| lab.id(w)));
            median_side(lab.id(v), &mut buf)
        })
        .collect();
    Ok(Cut::new(sides))
}

/// Zero-round oriented median: `(V+, V-)`.
pub fn oriented_median_cut(o: &Orientation) -> Result<Cut> {
    require_odd(o.graph().degree(), "zero-deficit vertices have no side")?;
    Ok(Cut::new(
        (0..o.n())
            .map(|v| {
                if o.deficit(v) > 0 {
                    Side::Left
                } else {
                    Side::Right
                }
            })
            .collect(),
    ))
}

/// A vertex is stable iff some neighbour lies on the other side.
pub fn is_stable(g: &RegularGraph, c: &Cut, v: usize) -> bool {
    g.neighbors(v).iter().any(|&w| c.side(w) != c.side(v))
}

pub fn stable_vertices(g: &RegularGraph, c: &Cut) -> Vec<usize> {
    (0..g.n()).filter(|&v| is_stable(g, c, v)).collect()
}

pub fn unstable_vertices(g: &RegularGraph, c: &Cut) -> Vec<usize> {
    (0..g.n()).filter(|&v| !is_stable(g, c, v)).collect()
}

/// One flip: every unstable vertex changes side simultaneously.
pub fn unstable_flip_step(g: &RegularGraph, c: &Cut) -> Cut {
    let mut next = c.clone();
    for v in unstable_vertices(g, c) {
        next.flip(v);
    }
    next
}

/// Cuts `CUT_0..=CUT_k` produced by the oriented median followed by `k` flips.
#[derive(Clone, Debug)]
pub struct FlipRun {
    pub cuts: Vec<Cut>,
    pub sizes: Vec<usize>,
}

impl FlipRun {
    pub fn final_cut(&self) -> &Cut {
        self.cuts.last().expect("a flip run holds at least CUT_0")
    }
}

pub fn oriented_median_plus_flips(o: &Orientation, flips: usize) -> Result<FlipRun> {
    let mut cut = oriented_median_cut(o)?;
    let mut cuts = Vec::with_capacity(flips + 1);
    let mut sizes = Vec::with_capacity(flips + 1);
    for step in 0..=flips {
        if step > 0 {
            cut = unstable_flip_step(o.graph(), &cut);
        }
        sizes.push(dicut_size(o, &cut)?);
        cuts.push(cut.clone());
    }
    Ok(FlipRun { cuts, sizes })
}

/// `(same-side, other-side)` neighbour counts.
fn side_counts(g: &RegularGraph, c: &Cut, v: usize) -> (usize, usize) {
    let same = g
        .neighbors(v)
        .iter()
        .filter(|&&w| c.side(w) == c.side(v))
        .count();
    (same, g.degree() - same)
}

fn wants_to_move(g: &RegularGraph, c: &Cut, v: usize) -> bool {
    let (same, other) = side_counts(g, c, v);
    same > other
}

/// Distributed FLIP round: every vertex with a strict same-side majority moves.
pub fn distributed_flip_step(g: &RegularGraph, c: &Cut) -> Cut {
    let mut next = c.clone();
    for v in (0..g.n()).filter(|&v| wants_to_move(g, c, v)) {
        next.flip(v);
    }
    next
}

/// No vertex has strictly more same-side than other-side neighbours.
pub fn is_maximal_cut(g: &RegularGraph, c: &Cut) -> bool {
    (0..g.n()).all(|v| !wants_to_move(g, c, v))
}

/// Which improving vertex sequential FLIP moves next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum FlipOrder {
    #[default]
    LowestIndex,
    /// Largest `same - other`, ties to the lowest index.
    LargestGain,
    /// Uniform among improving vertices.
    Seeded(u64),
}

#[derive(Clone, Debug)]
pub struct SequentialFlipResult {
    pub cut: Cut,
    pub flips: usize,
}

/// Moves one improving vertex at a time until the cut is maximal.
pub fn sequential_flip_to_maximal(
    g: &RegularGraph,
    start: &Cut,
    order: FlipOrder,
) -> Result<SequentialFlipResult> {
    let mut cut = start.clone();
    let mut size = cut_size(g, &cut)?;
    let mut rng = match order {
        FlipOrder::Seeded(seed) => Some(rng::seeded(seed)),
        _ => None,
    };
    let mut flips = 0;
    loop {
        let improving: Vec<usize> = (0..g.n()).filter(|&v| wants_to_move(g, &cut, v)).collect();
        let Some(&first) = improving.first() else {
            break;
        };
        let v = match order {
            FlipOrder::LowestIndex => first,
            FlipOrder::LargestGain => *improving
                .iter()
                .max_by_key(|&&v| {
                    let (same, other) = side_counts(g, &cut, v);
                    (same - other, std::cmp::Reverse(v))
                })
                .expect("non-empty"),
            FlipOrder::Seeded(_) => {
                let rng = rng.as_mut().expect("seeded order carries an rng");
                improving[rng.gen_range(0..improving.len())]
            }
        };
        let (same, other) = side_counts(g, &cut, v);
        cut.flip(v);
        size += same - other;
        flips += 1;
        debug_assert!(flips <= g.m(), "each flip gains at least one edge");
    }
    debug_assert_eq!(size, cut_size(g, &cut)?);
    Ok(SequentialFlipResult { cut, flips })
}

/// Independent fair coin per vertex.
pub fn random_cut(n: usize, seed: u64) -> Cut {
    let mut rng = rng::seeded(seed);
    Cut::new(
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Side::Left
                } else {
                    Side::Right
                }
            })
            .collect(),
    )
}

/// Connected components of the subgraphs induced by each side.
pub fn monochromatic_components(g: &RegularGraph, c: &Cut) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut component = vec![root];
        let mut i = 0;
        while i < component.len() {
            let v = component[i];
            i += 1;
            for &w in g.neighbors(v) {
                if !seen[w] && c.side(w) == c.side(root) {
                    seen[w] = true;
                    component.push(w);
                }
            }
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

/// Edges with exactly one endpoint in `set`.
pub fn boundary_size(g: &RegularGraph, set: &[usize]) -> usize {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    set.iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| !inside[w]).count())
        .sum()
}
