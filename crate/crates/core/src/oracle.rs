//! Brute-force ground truth for small instances: exact MaxCut and MaxDiCut by
//! Gray-code enumeration, and an adversarial search over ID labellings.

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cut_size, is_bipartite, Cut, Labelling, Orientation, RegularGraph};
use crate::rng;

pub const MAX_CUT_N: usize = 30;
pub const MAX_DICUT_N: usize = 24;
/// `all_max_dicuts` keeps every optimal witness, so it stays smaller.
pub const MAX_ALL_WITNESSES_N: usize = 16;
pub const MAX_EXHAUSTIVE_LABEL_N: usize = 9;

/// Bits of the assignment fixed per parallel task.
const PREFIX_BITS: usize = 6;

/// Scans all assignments of bits `base..base + free` of `start`, moving one
/// vertex at a time. `value` scores the start mask and `delta(mask, v)` the
/// gain of toggling `v`. Returns the best (value, mask),
/// earliest on ties.
fn gray_scan(
    free: usize,
    base: usize,
    start: u64,
    value: impl Fn(u64) -> i64,
    delta: impl Fn(u64, usize) -> i64,
) -> (i64, u64) {
    let mut mask = start;
    let mut current = value(mask);
    let mut best = (current, mask);
    for step in 1u64..(1u64 << free) {
        let v = step.trailing_zeros() as usize + base;
        current += delta(mask, v);
        mask ^= 1 << v;
        if current > best.0 {
            best = (current, mask);
        }
    }
    best
}

fn masks(adj: impl Fn(usize) -> Vec<usize>, n: usize) -> Vec<u64> {
    (0..n)
        .map(|v| adj(v).into_iter().fold(0u64, |m, w| m | 1 << w))
        .collect()
}

/// Splits the enumeration over `bits` variable positions (starting at bit
/// `base`) into prefix tasks and merges deterministically.
fn enumerate_parallel(
    bits: usize,
    base: usize,
    value: impl Fn(u64) -> i64 + Sync,
    delta: impl Fn(u64, usize) -> i64 + Sync,
) -> (i64, u64) {
    let prefix = bits.min(PREFIX_BITS);
    let free = bits - prefix;
    (0u64..(1u64 << prefix))
        .into_par_iter()
        .map(|p| {
            let start = p << (free + base);
            gray_scan(free, base, start, &value, &delta)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            (i64::MIN, 0),
            |best, cand| if cand.0 > best.0 { cand } else { best },
        )
}

/// Maximum cut. Bipartite graphs short-cut to `m` with the 2-colouring.
pub fn max_cut_exact(g: &RegularGraph) -> Result<(usize, Cut)> {
    if let Some(witness) = is_bipartite(g) {
        return Ok((g.m(), witness));
    }
    max_cut_enumerate(g)
}

/// Maximum cut by enumeration only (vertex 0 pinned Left).
pub fn max_cut_enumerate(g: &RegularGraph) -> Result<(usize, Cut)> {
    let n = g.n();
    if n > MAX_CUT_N {
        return Err(Error::Budget {
            n,
            limit: MAX_CUT_N,
        });
    }
    if n <= 1 {
        return Ok((0, Cut::from_mask(n, 1)));
    }
    let nbr = masks(|v| g.neighbors(v).to_vec(), n);
    let value = |mask: u64| {
        g.edges()
            .iter()
            .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
            .count() as i64
    };
    let delta = |mask: u64, v: usize| {
        let same = if mask >> v & 1 == 1 {
            (nbr[v] & mask).count_ones()
        } else {
            (nbr[v] & !mask).count_ones()
        } as i64;
        2 * same - g.degree() as i64
    };
    // bit v set = Left; vertex 0 stays Left, vertices 1..n vary
    let (best, mask) = enumerate_parallel(n - 1, 1, |m| value(m | 1), |m, v| delta(m | 1, v));
    Ok((best as usize, Cut::from_mask(n, mask | 1)))
}

fn dicut_tables(o: &Orientation) -> (Vec<u64>, Vec<u64>) {
    let n = o.n();
    (
        masks(|v| o.out_neighbors(v).to_vec(), n),
        masks(|v| o.in_neighbors(v).to_vec(), n),
    )
}

fn dicut_of_mask(o: &Orientation, mask: u64) -> i64 {
    o.arcs()
        .iter()
        .filter(|&&(t, h)| mask >> t & 1 == 1 && mask >> h & 1 == 0)
        .count() as i64
}

fn dicut_delta(out: &[u64], inn: &[u64], mask: u64, v: usize) -> i64 {
    let gained_if_left = (out[v] & !mask).count_ones() as i64;
    let lost_if_left = (inn[v] & mask).count_ones() as i64;
    if mask >> v & 1 == 1 {
        lost_if_left - gained_if_left
    } else {
        gained_if_left - lost_if_left
    }
}

/// Maximum directed cut over all `2^n` assignments.
pub fn max_dicut_exact(o: &Orientation) -> Result<(usize, Cut)> {
    let n = o.n();
    if n > MAX_DICUT_N {
        return Err(Error::Budget {
            n,
            limit: MAX_DICUT_N,
        });
    }
    let (out, inn) = dicut_tables(o);
    let (best, mask) = enumerate_parallel(
        n,
        0,
        |m| dicut_of_mask(o, m),
        |m, v| dicut_delta(&out, &inn, m, v),
    );
    Ok((best as usize, Cut::from_mask(n, mask)))
}

/// Maximum directed cut together with every optimal assignment.
pub fn all_max_dicuts(o: &Orientation) -> Result<(usize, Vec<Cut>)> {
    let n = o.n();
    if n > MAX_ALL_WITNESSES_N {
        return Err(Error::Budget {
            n,
            limit: MAX_ALL_WITNESSES_N,
        });
    }
    let (out, inn) = dicut_tables(o);
    let mut mask = 0u64;
    let mut current = dicut_of_mask(o, mask);
    let mut best = current;
    let mut witnesses = vec![mask];
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        current += dicut_delta(&out, &inn, mask, v);
        mask ^= 1 << v;
        if current > best {
            best = current;
            witnesses.clear();
        }
        if current == best {
            witnesses.push(mask);
        }
    }
    witnesses.sort_unstable();
    Ok((
        best as usize,
        witnesses
            .into_iter()
            .map(|m| Cut::from_mask(n, m))
            .collect(),
    ))
}

/// Simulated annealing over ID permutations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    pub moves: usize,
    pub seed: u64,
    pub start_temperature: f64,
    pub end_temperature: f64,
}

pub const DEFAULT_ANNEAL_MOVES: usize = 1_000_000;

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            moves: DEFAULT_ANNEAL_MOVES,
            seed: 0,
            start_temperature: 2.0,
            end_temperature: 0.05,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchMode {
    /// Every permutation of `1..=n`; requires `n <= 9`.
    Exhaustive,
    /// Annealing from `start` (a random permutation when `None`).
    Anneal {
        config: AnnealConfig,
        start: Option<Labelling>,
    },
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub labelling: Labelling,
    pub cut_size: usize,
    pub evaluations: usize,
}

/// Minimises the size of the cut `algorithm` produces over ID labellings.
pub fn adversarial_labelling_search<F>(
    g: &RegularGraph,
    algorithm: F,
    mode: &SearchMode,
) -> Result<SearchResult>
where
    F: Fn(&RegularGraph, &Labelling) -> Result<Cut> + Sync,
{
    let score = |lab: &Labelling| -> Result<usize> { cut_size(g, &algorithm(g, lab)?) };
    match mode {
        SearchMode::Exhaustive => exhaustive(g.n(), score),
        SearchMode::Anneal { config, start } => anneal(g.n(), score, config, start.clone()),
    }
}

fn exhaustive(n: usize, score: impl Fn(&Labelling) -> Result<usize>) -> Result<SearchResult> {
    if n > MAX_EXHAUSTIVE_LABEL_N {
        return Err(Error::Budget {
            n,
            limit: MAX_EXHAUSTIVE_LABEL_N,
        });
    }
    let mut ids: Vec<u64> = (1..=n as u64).collect();
    let mut best: Option<(usize, Vec<u64>)> = None;
    let mut evaluations = 0;
    loop {
        let value = score(&Labelling::new(ids.clone())?)?;
        evaluations += 1;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, ids.clone()));
        }
        if !next_permutation(&mut ids) {
            break;
        }
    }
    let (cut_size, ids) = best.expect("at least one permutation");
    Ok(SearchResult {
        labelling: Labelling::new(ids)?,
        cut_size,
        evaluations,
    })
}

/// Lexicographic successor; false once `items` is the last permutation.
fn next_permutation(items: &mut [u64]) -> bool {
    let Some(i) = items.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = items
        .iter()
        .rposition(|&x| x > items[i])
        .expect("pivot has a successor");
    items.swap(i, j);
    items[i + 1..].reverse();
    true
}

fn anneal(
    n: usize,
    score: impl Fn(&Labelling) -> Result<usize>,
    config: &AnnealConfig,
    start: Option<Labelling>,
) -> Result<SearchResult> {
    let mut rng = rng::seeded(config.seed);
    let mut current = match start {
        Some(lab) => lab,
        None => crate::generators::make_random_labelling(n, rng::derive_seed(config.seed, 1)),
    };
    let mut current_value = score(&current)?;
    let mut best = (current_value, current.clone());
    let mut evaluations = 1;
    if n < 2 {
        return Ok(SearchResult {
            labelling: best.1,
            cut_size: best.0,
            evaluations,
        });
    }
    let cooling = if config.moves > 1 {
        (config.end_temperature / config.start_temperature).powf(1.0 / (config.moves - 1) as f64)
    } else {
        1.0
    };
    let mut temperature = config.start_temperature;
    for _ in 0..config.moves {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let candidate = current.swapped(u, v);
        let value = score(&candidate)?;
        evaluations += 1;
        let delta = value as f64 - current_value as f64;
        if delta <= 0.0 || rng.gen::<f64>() < (-delta / temperature).exp() {
            current = candidate;
            current_value = value;
            if value < best.0 {
                best = (value, current.clone());
            }
        }
        temperature *= cooling;
    }
    Ok(SearchResult {
        labelling: best.1,
        cut_size: best.0,
        evaluations,
    })
}
