//! Verification suites: seeded corpora, the checks run on them, and
//! structured reports. The CLI `verify` command and the acceptance test both
//! run these.

use std::collections::BTreeMap;
use std::fmt::Display;

use num_rational::Rational64;
use num_traits::Signed;
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{
    is_stable, median_cut, oriented_median_cut, oriented_median_plus_flips, random_cut,
    unstable_flip_step,
};
use crate::bounds::{
    self, check_inequalities, component_boundary_violations, decompose, low_degree_peeling_holds,
    median_floor, oriented_ratio, two_flip_floor, window_check, window_edge_count,
};
use crate::congest::bit_length;
use crate::congest::programs::{run_bit_serialized_median, run_distributed_flip, run_median};
use crate::congest::Bandwidth;
use crate::error::{Error, Result};
use crate::generators::{
    make_abcd_instance, make_circulant, make_double_circulant, make_random_labelling,
    make_random_orientation, make_random_regular, make_random_sparse_labelling,
    make_single_flip_stuck_instance, orient_clockwise, DEFAULT_STUCK_MAX_N,
};
use crate::graph::{
    cut_size, dicut_arcs, dicut_size, is_bipartite, Cut, Labelling, Orientation, RegularGraph,
};
use crate::oracle::{
    adversarial_labelling_search, all_max_dicuts, max_cut_enumerate, max_cut_exact,
    max_dicut_exact, AnnealConfig, SearchMode,
};
use crate::rng::{derive_seed, seeded};

pub const DEFAULT_SEED: u64 = 0x000c_a7c0;

/// Size of the small oriented corpus used for ratio checks.
pub const CORPUS_SIZE: usize = 200;
/// The inequality and two-flip suites use a longer prefix of the same corpus.
pub const INEQUALITY_CORPUS_SIZE: usize = 500;
/// Largest instance for which every optimal witness is decomposed.
pub const ALL_WITNESSES_MAX_N: usize = 12;

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checked: usize,
    pub violations: Vec<String>,
    pub skipped: Vec<String>,
    pub stats: BTreeMap<String, String>,
}

impl SuiteReport {
    fn new(suite: Suite, seed: u64) -> Self {
        SuiteReport {
            suite: suite.name().to_string(),
            seed,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(label());
        }
    }

    fn stat(&mut self, key: &str, value: impl Display) {
        self.stats.insert(key.to_string(), value.to_string());
    }

    fn skip(&mut self, label: String, err: &Error) {
        self.skipped.push(format!("{label}: {err}"));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    MedianFloor,
    MedianTightness,
    OrientedFloor,
    OrientedRatio,
    Sharpness,
    FlipMonotonicity,
    FlipInequalities,
    TwoFlipFloor,
    Constructions,
    Claim2,
    Claim1,
    Folklore,
    Simulation,
    Equivalence,
    Components,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::MedianFloor,
        Suite::MedianTightness,
        Suite::OrientedFloor,
        Suite::OrientedRatio,
        Suite::Sharpness,
        Suite::FlipMonotonicity,
        Suite::FlipInequalities,
        Suite::TwoFlipFloor,
        Suite::Constructions,
        Suite::Claim2,
        Suite::Claim1,
        Suite::Folklore,
        Suite::Simulation,
        Suite::Equivalence,
        Suite::Components,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MedianFloor => "median-floor",
            Suite::MedianTightness => "median-tightness",
            Suite::OrientedFloor => "oriented-floor",
            Suite::OrientedRatio => "oriented-ratio",
            Suite::Sharpness => "sharpness",
            Suite::FlipMonotonicity => "flip-monotonicity",
            Suite::FlipInequalities => "flip-inequalities",
            Suite::TwoFlipFloor => "two-flip-floor",
            Suite::Constructions => "constructions",
            Suite::Claim2 => "claim2",
            Suite::Claim1 => "claim1",
            Suite::Folklore => "folklore",
            Suite::Simulation => "simulation",
            Suite::Equivalence => "equivalence",
            Suite::Components => "components",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn run(self, seed: u64) -> Result<SuiteReport> {
        match self {
            Suite::MedianFloor => median_floor_suite(seed),
            Suite::MedianTightness => median_tightness_suite(seed),
            Suite::OrientedFloor => oriented_floor_suite(seed),
            Suite::OrientedRatio => oriented_ratio_suite(seed),
            Suite::Sharpness => sharpness_suite(seed),
            Suite::FlipMonotonicity => flip_monotonicity_suite(seed),
            Suite::FlipInequalities => flip_inequalities_suite(seed),
            Suite::TwoFlipFloor => two_flip_floor_suite(seed),
            Suite::Constructions => constructions_suite(seed),
            Suite::Claim2 => claim2_suite(seed),
            Suite::Claim1 => claim1_suite(seed),
            Suite::Folklore => folklore_suite(seed),
            Suite::Simulation => simulation_suite(seed),
            Suite::Equivalence => equivalence_suite(seed),
            Suite::Components => components_suite(seed),
        }
    }
}

/// Uniform even `n` in `lo..=hi` (after rounding `lo` up to even).
fn even_in(rng: &mut impl rand::Rng, lo: usize, hi: usize) -> usize {
    let lo = lo + lo % 2;
    lo + 2 * rng.gen_range(0..=(hi - lo) / 2)
}

/// Smallest `n >= requested` for which `D_{2n}^d` exists.
pub fn double_circulant_n(requested: usize, d: usize) -> usize {
    let n = requested.max(2 * (d - 1));
    n + n % 2
}

pub struct MedianCase {
    pub label: String,
    pub graph: RegularGraph,
    pub labellings: Vec<Labelling>,
}

/// Double circulants for `d` in {3, 5, 7} (identity and 10 random
/// labellings each), plus 50 random `d`-regular graphs per `d` with 10
/// random labellings each. IDs are drawn from `1..=N^3`.
pub fn median_corpus(seed: u64) -> Result<Vec<MedianCase>> {
    let mut cases = Vec::new();
    for (di, d) in [3usize, 5, 7].into_iter().enumerate() {
        let mut ns: Vec<usize> = [d, 2 * d, 12]
            .iter()
            .map(|&r| double_circulant_n(r, d))
            .collect();
        ns.sort_unstable();
        ns.dedup();
        for n in ns {
            let g = make_double_circulant(n, d)?;
            let total = g.n();
            let mut labellings = vec![Labelling::identity(total)];
            for j in 0..10 {
                let s = derive_seed(seed, (1000 * di + n * 16 + j) as u64);
                labellings.push(make_random_sparse_labelling(
                    total,
                    Labelling::default_bound(total),
                    s,
                )?);
            }
            cases.push(MedianCase {
                label: format!("D_{}^{d}", 2 * n),
                graph: g,
                labellings,
            });
        }
        let mut rng = seeded(derive_seed(seed, 10 + di as u64));
        for i in 0..50 {
            let n = even_in(&mut rng, d + 1, 100);
            let gs = rng.gen();
            let g = make_random_regular(n, d, gs)?;
            let labellings = (0..10)
                .map(|_| make_random_sparse_labelling(n, Labelling::default_bound(n), rng.gen()))
                .collect::<Result<Vec<_>>>()?;
            cases.push(MedianCase {
                label: format!("random d={d} n={n} #{i} seed={gs}"),
                graph: g,
                labellings,
            });
        }
    }
    Ok(cases)
}

fn median_floor_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::MedianFloor, seed);
    let mut slack_min: Option<Rational64> = None;
    for case in median_corpus(seed)? {
        let g = &case.graph;
        let floor = median_floor(g.n(), g.degree())?;
        for (j, lab) in case.labellings.iter().enumerate() {
            let size = cut_size(g, &median_cut(g, lab)?)?;
            let slack = Rational64::from_integer(size as i64) - floor;
            slack_min = Some(slack_min.map_or(slack, |s| s.min(slack)));
            report.check(slack >= 0.into(), || {
                format!("{} labelling {j}: cut {size} < floor {floor}", case.label)
            });
        }
    }
    if let Some(s) = slack_min {
        report.stat("min_slack", s);
    }
    Ok(report)
}

fn median_tightness_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::MedianTightness, seed);
    let k4 = RegularGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let k4_cut = cut_size(&k4, &median_cut(&k4, &Labelling::identity(4))?)?;
    report.check(
        Rational64::from_integer(k4_cut as i64) == median_floor(4, 3)?,
        || format!("K4 median cut {k4_cut} != 4"),
    );
    let exhaustive = adversarial_labelling_search(&k4, median_cut, &SearchMode::Exhaustive)?;
    report.check(exhaustive.cut_size == 4, || {
        format!("K4 exhaustive minimum {} != 4", exhaustive.cut_size)
    });
    report.stat("k4_cut", k4_cut);

    let g = make_double_circulant(12, 5)?;
    let target = 12 + 3 * 3 + 1;
    let pattern = cut_size(&g, &median_cut(&g, &Labelling::identity(24))?)?;
    let config = AnnealConfig {
        seed,
        ..AnnealConfig::default()
    };
    let found = adversarial_labelling_search(
        &g,
        median_cut,
        &SearchMode::Anneal {
            config,
            start: None,
        },
    )?;
    let floor = median_floor(24, 5)?;
    for (what, value) in [("block pattern", pattern), ("annealing", found.cut_size)] {
        report.check(Rational64::from_integer(value as i64) >= floor, || {
            format!("D_24^5 {what}: cut {value} below floor {floor}")
        });
    }
    report.stat("d24_5_block_pattern_cut", pattern);
    report.stat("d24_5_annealed_cut", found.cut_size);
    report.stat("d24_5_target", target);
    report.stat("d24_5_target_met", found.cut_size.min(pattern) <= target);
    Ok(report)
}

fn oriented_floor_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::OrientedFloor, seed);
    let mut rng = seeded(seed);
    for i in 0..500 {
        let d = [3, 5, 7][i % 3];
        let n = even_in(&mut rng, d + 1, 100);
        let (gs, os) = (rng.gen(), rng.gen());
        let o = make_random_orientation(&make_random_regular(n, d, gs)?, os);
        let size = dicut_size(&o, &oriented_median_cut(&o)?)?;
        report.check(2 * size >= n, || {
            format!(
                "case {i} d={d} n={n} graph seed {gs} orientation seed {os}: dicut {size} < n/2"
            )
        });
    }
    Ok(report)
}

pub struct OrientedCase {
    pub index: usize,
    pub d: usize,
    pub n: usize,
    pub orientation: Orientation,
}

/// Case `i` of the small oriented corpus: `d` alternates 3, 5; `n` is even
/// in `d+1..=20`; graph and orientation are seeded from `(seed, i)` alone, so
/// shorter corpora are prefixes of longer ones.
pub fn oriented_corpus(seed: u64, count: usize) -> Result<Vec<OrientedCase>> {
    (0..count)
        .map(|i| {
            let mut rng = seeded(derive_seed(seed, i as u64));
            let d = [3, 5][i % 2];
            let n = even_in(&mut rng, d + 1, 20);
            let g = make_random_regular(n, d, rng.gen())?;
            let orientation = make_random_orientation(&g, rng.gen());
            Ok(OrientedCase {
                index: i,
                d,
                n,
                orientation,
            })
        })
        .collect()
}

fn ratio(a: usize, b: usize) -> Rational64 {
    Rational64::new(a as i64, b.max(1) as i64)
}

fn min_by_degree(mins: &BTreeMap<usize, Rational64>, report: &mut SuiteReport, key: &str) {
    for (d, r) in mins {
        report.stat(&format!("{key}_d{d}"), r);
    }
}

fn oriented_ratio_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::OrientedRatio, seed);
    let results: Vec<Result<(usize, usize, usize)>> = oriented_corpus(seed, CORPUS_SIZE)?
        .par_iter()
        .map(|c| {
            let cut = dicut_size(&c.orientation, &oriented_median_cut(&c.orientation)?)?;
            let (opt, _) = max_dicut_exact(&c.orientation)?;
            Ok((c.d, cut, opt))
        })
        .collect();
    let mut mins = BTreeMap::new();
    for (i, res) in results.into_iter().enumerate() {
        let (d, cut, opt) = res?;
        let floor = oriented_ratio(d)?;
        let r = ratio(cut, opt);
        let e = mins.entry(d).or_insert(r);
        *e = (*e).min(r);
        report.check(r >= floor, || {
            format!("case {i} d={d}: {cut}/{opt} < {floor}")
        });
    }
    min_by_degree(&mins, &mut report, "min_ratio");
    Ok(report)
}

fn sharpness_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Sharpness, seed);
    for (d, n, cut_expected, opt_expected) in [(3, 12, 6, 10), (5, 20, 10, 26)] {
        let inst = make_abcd_instance(d, n)?;
        let o = &inst.orientation;
        let cut = dicut_size(o, &oriented_median_cut(o)?)?;
        let (opt, _) = max_dicut_exact(o)?;
        report.check(cut == cut_expected, || {
            format!("ABCD({d},{n}) dicut {cut} != {cut_expected}")
        });
        report.check(opt == opt_expected, || {
            format!("ABCD({d},{n}) OPT {opt} != {opt_expected}")
        });
        let r = ratio(cut, opt);
        let f = bounds::f_d(d, 0.into(), 0.into())?;
        report.check(r == f, || format!("ABCD({d},{n}) ratio {r} != {f}"));
        report.stat(&format!("abcd_{d}_{n}"), format!("{cut}/{opt}"));
    }
    match make_single_flip_stuck_instance(3, DEFAULT_STUCK_MAX_N) {
        Ok(stuck) => {
            report.check(stuck.cut1 == stuck.cut0, || {
                format!(
                    "stuck instance: CUT_1 {} != CUT_0 {}",
                    stuck.cut1, stuck.cut0
                )
            });
            report.stat(
                "stuck_d3",
                format!(
                    "n={} CUT_0={} CUT_1={} OPT={}",
                    stuck.instance.orientation.n(),
                    stuck.cut0,
                    stuck.cut1,
                    stuck.opt
                ),
            );
        }
        Err(e) => report.skip("single-flip stuck instance d=3".into(), &e),
    }
    Ok(report)
}

fn flip_monotonicity_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::FlipMonotonicity, seed);
    let mut rng = seeded(seed);
    for i in 0..1000 {
        let d = [3, 5, 7][i % 3];
        let n = even_in(&mut rng, d + 1, 60);
        let (gs, os, cs) = (rng.gen(), rng.gen(), rng.gen());
        let flips = rng.gen_range(0..=5);
        let o = make_random_orientation(&make_random_regular(n, d, gs)?, os);
        let g = o.graph();
        let mut cut = if i % 2 == 0 {
            oriented_median_cut(&o)?
        } else {
            random_cut(n, cs)
        };
        let label = format!("case {i} d={d} n={n} seeds ({gs}, {os}, {cs})");
        let mut history = vec![dicut_size(&o, &cut)?];
        for step in 1..=flips {
            let next = unstable_flip_step(g, &cut);
            let lost_stable = (0..n).any(|v| is_stable(g, &cut, v) && !is_stable(g, &next, v));
            report.check(!lost_stable, || {
                format!("{label} step {step}: stable set shrank")
            });
            let before = dicut_arcs(&o, &cut)?;
            let after = dicut_arcs(&o, &next)?;
            let kept = before.iter().all(|a| after.binary_search(a).is_ok());
            report.check(kept, || {
                format!("{label} step {step}: a cut arc left the cut")
            });
            history.push(after.len());
            cut = next;
        }
        let monotone = history.windows(2).all(|w| w[0] <= w[1]);
        report.check(monotone, || {
            format!("{label}: sizes {history:?} not monotone")
        });
    }
    Ok(report)
}

fn flip_inequalities_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::FlipInequalities, seed);
    let corpus = oriented_corpus(seed, INEQUALITY_CORPUS_SIZE)?;
    let outcomes: Vec<Result<Vec<(String, bool)>>> = corpus
        .par_iter()
        .map(|c| {
            let o = &c.orientation;
            let witnesses = if c.n <= ALL_WITNESSES_MAX_N {
                all_max_dicuts(o)?.1
            } else {
                vec![max_dicut_exact(o)?.1]
            };
            let mut checks = Vec::new();
            for (w, witness) in witnesses.iter().enumerate() {
                let dec = decompose(o, witness)?;
                let label = format!("case {} d={} n={} witness {w}", c.index, c.d, c.n);
                checks.push((format!("{label}: set structure"), dec.structure_holds()));
                for ineq in check_inequalities(&dec) {
                    checks.push((
                        format!("{label}: {} {:?}", ineq.kind.name(), ineq.terms),
                        ineq.holds(),
                    ));
                }
            }
            Ok(checks)
        })
        .collect();
    let mut witnesses = 0;
    for outcome in outcomes {
        for (label, ok) in outcome? {
            witnesses += usize::from(label.ends_with("set structure"));
            report.check(ok, || label);
        }
    }
    report.stat("decompositions", witnesses);

    let k4 = RegularGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let k4o = crate::generators::make_id_orientation(&k4, &Labelling::identity(4));
    let (_, k4_opt) = max_dicut_exact(&k4o)?;
    let ineqs = check_inequalities(&decompose(&k4o, &k4_opt)?);
    let floor = &ineqs[0];
    report.check(
        floor.holds() && floor.tight() && floor.terms[0] == 4.into(),
        || format!("K4 oriented floor not tight at 4: {:?}", floor.terms),
    );

    let abcd = make_abcd_instance(3, 12)?;
    let opt = abcd.blocks.optimal_cut(12);
    let ineqs = check_inequalities(&decompose(&abcd.orientation, &opt)?);
    report.check(ineqs.iter().all(|i| i.holds()), || {
        "ABCD(3,12): an inequality fails".into()
    });
    let loss = &ineqs[1];
    report.check(loss.tight() && loss.terms[0] == 6.into(), || {
        format!("ABCD(3,12) mismatch loss not tight at 6: {:?}", loss.terms)
    });
    Ok(report)
}

fn two_flip_floor_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::TwoFlipFloor, seed);
    let f3 = two_flip_floor(3)?;
    report.check(f3 == Rational64::new(71, 115), || {
        format!("two-flip floor for d=3 is {f3}")
    });
    let corpus = oriented_corpus(seed, INEQUALITY_CORPUS_SIZE)?;
    let results: Vec<Result<(usize, usize, usize)>> = corpus
        .par_iter()
        .map(|c| {
            let run = oriented_median_plus_flips(&c.orientation, 2)?;
            let (opt, _) = max_dicut_exact(&c.orientation)?;
            Ok((c.d, run.sizes[2], opt))
        })
        .collect();
    let mut mins = BTreeMap::new();
    for (i, res) in results.into_iter().enumerate() {
        let (d, cut2, opt) = res?;
        let floor = two_flip_floor(d)?;
        let r = ratio(cut2, opt);
        let e = mins.entry(d).or_insert(r);
        *e = (*e).min(r);
        report.check(r >= floor, || {
            format!("case {i} d={d}: CUT_2/OPT = {r} < {floor}")
        });
    }
    min_by_degree(&mins, &mut report, "min_cut2_ratio");
    Ok(report)
}

fn constructions_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Constructions, seed);
    for d in (2..=8).step_by(2) {
        for n in (2 * d..=40).step_by(2) {
            let g = make_circulant(n, d)?;
            report.check(g.validate_regular(d) && g.m() == n * d / 2, || {
                format!("C_{n}^{d} not {d}-regular")
            });
            report.check(is_bipartite(&g).is_some(), || {
                format!("C_{n}^{d} not bipartite")
            });
        }
    }
    for d in (3..=9).step_by(2) {
        for n in (2 * (d - 1)..=40).step_by(2) {
            let g = make_double_circulant(n, d)?;
            report.check(g.validate_regular(d), || {
                format!("D_{}^{d} not {d}-regular", 2 * n)
            });
            report.check(is_bipartite(&g).is_some(), || {
                format!("D_{}^{d} not bipartite", 2 * n)
            });
        }
    }
    let c12 = make_circulant(12, 4)?;
    let (shortcut, _) = max_cut_exact(&c12)?;
    let (enumerated, _) = max_cut_enumerate(&c12)?;
    report.check(shortcut == 24 && enumerated == 24, || {
        format!("maxcut(C_12^4): shortcut {shortcut}, enumeration {enumerated}")
    });
    let d12 = orient_clockwise(&make_double_circulant(6, 3)?)?;
    let (dicut, _) = max_dicut_exact(&d12)?;
    report.check(dicut == 9 && 2 * dicut == d12.graph().m(), || {
        format!("maxdicut(D_12^3) = {dicut}")
    });
    let median0 = dicut_size(&d12, &oriented_median_cut(&d12)?)?;
    report.check(median0 == 6, || {
        format!("oriented median on D_12^3 = {median0}, expected n/2")
    });
    report.stat("maxcut_c12_4", shortcut);
    report.stat("maxdicut_d12_3", dicut);
    Ok(report)
}

fn claim2_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Claim2, seed);
    let example = window_edge_count(&make_circulant(12, 4)?, 0, 6)?;
    report.check(example == 8, || {
        format!("C_12^4 window of 6 holds {example} edges")
    });
    let mut tight = 0;
    for d in [4, 6] {
        for n in (2 * d..=60).step_by(2) {
            let g = make_circulant(n, d)?;
            for start in [0, n / 2] {
                for ell in 0..=n {
                    for r in (1..=n).step_by(2) {
                        let c = window_check(&g, start, ell, r)?;
                        tight += usize::from(c.count as i64 == c.bound);
                        report.check(c.holds(), || {
                            format!(
                                "C_{n}^{d} start {start} ell {ell} r {r}: {} < {}",
                                c.count, c.bound
                            )
                        });
                    }
                }
            }
        }
    }
    report.stat("tight_cases", tight);
    Ok(report)
}

fn claim1_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Claim1, seed);
    for case in bounds::tower_identity_cases(5, 4) {
        match case.lhs {
            Some(lhs) => report.check(lhs == case.rhs, || {
                format!("log*(twr_{}({})) = {lhs} != {}", case.k, case.n, case.rhs)
            }),
            None => report.skip(
                format!("twr_{}({})", case.k, case.n),
                &Error::Overflow("tower too large to materialise".into()),
            ),
        }
    }
    Ok(report)
}

/// Folklore suite parameters.
pub const FOLKLORE_N: usize = 1000;
pub const FOLKLORE_TRIALS: usize = 10_000;

fn folklore_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Folklore, seed);
    let g = make_random_regular(FOLKLORE_N, 5, derive_seed(seed, 0))?;
    let m = g.m();
    let sizes: Vec<usize> = (0..FOLKLORE_TRIALS)
        .into_par_iter()
        .map(|t| cut_size(&g, &random_cut(g.n(), derive_seed(seed, 1 + t as u64))))
        .collect::<Result<_>>()?;
    let total: usize = sizes.iter().sum();
    let mean = Rational64::new(total as i64, FOLKLORE_TRIALS as i64);
    let half = Rational64::new(m as i64, 2);
    let deviation = (mean - half).abs() / half;
    report.check(deviation <= Rational64::new(1, 100), || {
        format!("mean {mean} deviates from m/2 = {half} by more than 1%")
    });
    // size < 0.45 m  <=>  100 size < 45 m
    let low = sizes.iter().filter(|&&s| 100 * s < 45 * m).count();
    report.check(100 * low <= FOLKLORE_TRIALS, || {
        format!("{low} of {FOLKLORE_TRIALS} trials below 0.45 m")
    });
    report.stat("m", m);
    report.stat(
        "mean",
        format!("{:.3}", total as f64 / FOLKLORE_TRIALS as f64),
    );
    report.stat("below_0.45m", low);
    report.stat("min", sizes.iter().min().expect("trials"));
    Ok(report)
}

fn simulation_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Simulation, seed);
    let mut graphs = Vec::new();
    for d in [3, 5, 7] {
        for n in [double_circulant_n(d, d), 12, 20] {
            graphs.push(make_double_circulant(n, d)?);
        }
    }
    for (i, g) in graphs.iter().enumerate() {
        let label = format!("D_{}^{}", g.n(), g.degree());
        let bound = (g.n() as u64).pow(3);
        let mut labs = vec![
            Labelling::identity(g.n()),
            make_random_sparse_labelling(g.n(), bound, derive_seed(seed, i as u64))?,
        ];
        // a labelling whose largest ID is exactly N^3
        let mut ids = labs[0].ids().to_vec();
        ids[g.n() / 3] = bound;
        labs.push(Labelling::new(ids)?);
        for (j, lab) in labs.iter().enumerate() {
            let width = bit_length(lab.max_id());
            let direct = median_cut(g, lab)?;
            let (cut, trace) = run_median(g, lab)?;
            report.check(
                trace.rounds_used == 1 && trace.max_message_bits == width,
                || {
                    format!(
                        "{label} labelling {j}: median used {} rounds, {} bits",
                        trace.rounds_used, trace.max_message_bits
                    )
                },
            );
            report.check(cut == direct, || {
                format!("{label} labelling {j}: simulated median differs")
            });
            let (serial, strace) = run_bit_serialized_median(g, lab, 1)?;
            report.check(
                strace.rounds_used == width as usize && strace.max_message_bits == 1,
                || {
                    format!(
                        "{label} labelling {j}: B=1 used {} rounds for width {width}",
                        strace.rounds_used
                    )
                },
            );
            report.check(serial == direct, || {
                format!("{label} labelling {j}: B=1 cut differs")
            });
        }

        let n = g.n() / 2;
        let start = Cut::from_left_set(g.n(), 0..n);
        let start_size = cut_size(g, &start)?;
        let lab = Labelling::identity(g.n());
        for rounds in 0..=10 {
            let (cut, trace) = run_distributed_flip(g, &lab, &start, rounds, Bandwidth::Bits(1))?;
            let size = cut_size(g, &cut)?;
            let expected = if rounds % 2 == 0 {
                start.clone()
            } else {
                start.mirror()
            };
            report.check(size == start_size && cut == expected && trace.rounds_used == rounds, || {
                format!("{label}: distributed FLIP after {rounds} rounds has size {size}, start {start_size}")
            });
        }
    }
    let g = make_double_circulant(12, 5)?;
    let mut ids: Vec<u64> = (1..=24).collect();
    ids[0] = 24 * 24 * 24;
    let (_, trace) = run_bit_serialized_median(&g, &Labelling::new(ids)?, 1)?;
    report.check(trace.rounds_used == 14, || {
        format!("B=1 with max ID 24^3 took {} rounds", trace.rounds_used)
    });
    Ok(report)
}

fn equivalence_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Equivalence, seed);
    let mut rng = seeded(seed);
    for i in 0..200 {
        let d = [3, 5, 7][i % 3];
        let n = even_in(&mut rng, d + 1, 60);
        let (gs, ls) = (rng.gen(), rng.gen());
        let g = make_random_regular(n, d, gs)?;
        let lab = if i % 4 == 0 {
            make_random_labelling(n, ls)
        } else {
            make_random_sparse_labelling(n, Labelling::default_bound(n), ls)?
        };
        let direct = median_cut(&g, &lab)?;
        let (simulated, _) = run_median(&g, &lab)?;
        let b = rng.gen_range(1..=bit_length(lab.max_id()));
        let (serial, _) = run_bit_serialized_median(&g, &lab, b)?;
        report.check(direct == simulated && direct == serial, || {
            format!("case {i} d={d} n={n} seeds ({gs}, {ls}) B={b}: simulation differs")
        });
    }
    Ok(report)
}

fn components_suite(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Components, seed);
    for case in median_corpus(seed)? {
        for (j, lab) in case.labellings.iter().enumerate() {
            let cut = median_cut(&case.graph, lab)?;
            report.check(low_degree_peeling_holds(&case.graph, &cut), || {
                format!(
                    "{} labelling {j}: a monochromatic subset has no low-degree vertex",
                    case.label
                )
            });
            let bad = component_boundary_violations(&case.graph, &cut);
            report.check(bad.is_empty(), || {
                format!("{} labelling {j}: {bad:?}", case.label)
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn substituted_sizes() {
        assert_eq!(double_circulant_n(3, 3), 4);
        assert_eq!(double_circulant_n(6, 3), 6);
        assert_eq!(double_circulant_n(5, 5), 8);
        assert_eq!(double_circulant_n(7, 7), 12);
        assert_eq!(double_circulant_n(14, 7), 14);
    }

    #[test]
    fn corpus_prefixes_agree() {
        let short = oriented_corpus(1, 5).unwrap();
        let long = oriented_corpus(1, 9).unwrap();
        for (a, b) in short.iter().zip(&long) {
            assert_eq!(a.orientation, b.orientation);
        }
    }

    #[test]
    fn quick_suites_pass() {
        for s in [Suite::Claim1, Suite::Sharpness, Suite::Simulation] {
            let report = s.run(DEFAULT_SEED).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }
}
