//! Vertex and edge sets comparing the oriented median cut, its two flip
//! refinements and a maximum dicut, and the inequalities relating their sizes.

use num_rational::Rational64;
use serde::Serialize;

use crate::algorithms::{is_stable, oriented_median_plus_flips, unstable_vertices};
use crate::error::{Error, Result};
use crate::graph::{dicut_size, Cut, Orientation, Side};
use crate::oracle::max_dicut_exact;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipDecomposition {
    pub n: usize,
    pub d: usize,
    /// `sum_{V+} d+(v) + sum_{V-} d-(v)`.
    pub degree_sum: usize,
    /// Vertices on different sides in the oriented median cut and the optimum.
    pub m: Vec<usize>,
    /// Vertices of `m` with `|deficit| >= 3`.
    pub m_heavy: Vec<usize>,
    /// Vertices of `m` with `|deficit| = 1` touching no edge of `e0` or `e1`.
    pub m_isolated: Vec<usize>,
    /// Edge indices (into the orientation's arc list).
    pub e0: Vec<usize>,
    pub e1: Vec<usize>,
    pub f0: Vec<usize>,
    pub unstable0: Vec<usize>,
    pub stable0: Vec<usize>,
    pub unstable1: Vec<usize>,
    /// `CUT_0, CUT_1, CUT_2`.
    pub cuts: [usize; 3],
    pub opt: usize,
}

impl FlipDecomposition {
    /// Containments the definitions force; `false` means a bookkeeping bug.
    pub fn structure_holds(&self) -> bool {
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        subset(&self.m_heavy, &self.m)
            && subset(&self.m_isolated, &self.m)
            && self
                .m_isolated
                .iter()
                .all(|v| self.m_heavy.binary_search(v).is_err())
            && subset(&self.unstable1, &self.unstable0)
            && self.unstable0.len() + self.stable0.len() == self.n
    }
}

/// Decomposition for the oriented median on `o` against the dicut `opt`
/// (Left = source side), which the caller asserts is maximum.
pub fn decompose(o: &Orientation, opt: &Cut) -> Result<FlipDecomposition> {
    let g = o.graph();
    let (n, d) = (g.n(), g.degree());
    if d % 2 == 0 {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "zero-deficit vertices have no side",
        });
    }
    if opt.len() != n {
        return Err(Error::InvalidInput(format!(
            "optimal cut covers {} vertices, graph has {n}",
            opt.len()
        )));
    }
    let run = oriented_median_plus_flips(o, 2)?;
    let cut0 = &run.cuts[0];
    let cut1 = &run.cuts[1];
    let plus = |v: usize| cut0.side(v) == Side::Left;

    let degree_sum = (0..n)
        .map(|v| {
            if plus(v) {
                o.out_degree(v)
            } else {
                o.in_degree(v)
            }
        })
        .sum();
    let in_m: Vec<bool> = (0..n).map(|v| cut0.side(v) != opt.side(v)).collect();
    let m: Vec<usize> = (0..n).filter(|&v| in_m[v]).collect();
    let m_heavy: Vec<usize> = m
        .iter()
        .copied()
        .filter(|&v| o.deficit(v).abs() >= 3)
        .collect();
    let stable: Vec<bool> = (0..n).map(|v| is_stable(g, cut0, v)).collect();

    let mut e0 = Vec::new();
    let mut e1 = Vec::new();
    let mut f0 = Vec::new();
    for (i, &(t, h)) in o.arcs().iter().enumerate() {
        let (pt, ph) = (plus(t), plus(h));
        let (mt, mh) = (in_m[t], in_m[h]);
        // across the classes with an end in M, or inside one class within M
        if (pt != ph && (mt || mh)) || (pt == ph && mt && mh) {
            e0.push(i);
        }
        let one_flip_gain =
            (pt && ph && stable[t] && !stable[h]) || (!pt && !ph && !stable[t] && stable[h]);
        if one_flip_gain {
            e1.push(i);
        }
        if pt == ph && !mt && !mh {
            f0.push(i);
        }
    }

    let mut touched = vec![false; n];
    for &i in e0.iter().chain(&e1) {
        let (t, h) = o.arcs()[i];
        touched[t] = true;
        touched[h] = true;
    }
    let m_isolated = m
        .iter()
        .copied()
        .filter(|&v| o.deficit(v).abs() == 1 && !touched[v])
        .collect();

    Ok(FlipDecomposition {
        n,
        d,
        degree_sum,
        m,
        m_heavy,
        m_isolated,
        e0,
        e1,
        f0,
        unstable0: (0..n).filter(|&v| !stable[v]).collect(),
        stable0: (0..n).filter(|&v| stable[v]).collect(),
        unstable1: unstable_vertices(g, cut1),
        cuts: [run.sizes[0], run.sizes[1], run.sizes[2]],
        opt: dicut_size(o, opt)?,
    })
}

/// [`decompose`] against the oracle's maximum dicut.
pub fn decompose_with_oracle(o: &Orientation) -> Result<FlipDecomposition> {
    let (_, witness) = max_dicut_exact(o)?;
    decompose(o, &witness)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InequalityKind {
    /// `CUT_0 >= D - dn/2 >= n/2`.
    OrientedFloor,
    /// `CUT_0 >= OPT - (d-1)/2 |M|`.
    MismatchLoss,
    /// `... + |E_0|`.
    MismatchLossE0,
    /// `CUT_1 >= OPT - (d-1)/2 |M| + |E_0| + |E_1|`.
    OneFlipGain,
    /// `CUT_2 >= ... + |E_1| + |U_1|`.
    TwoFlipGain,
    /// `2 OPT <= D - |M|`.
    DegreeSum,
    /// `2 OPT <= D - |M| - |F_0|`.
    DegreeSumF0,
    /// `2 OPT <= D - |M| - |F_0| - |M*|`.
    DegreeSumHeavy,
    /// `CUT_2 >= ... + |U_1| + |M*|`.
    TwoFlipHeavy,
}

impl InequalityKind {
    pub const ALL: [InequalityKind; 9] = [
        InequalityKind::OrientedFloor,
        InequalityKind::MismatchLoss,
        InequalityKind::MismatchLossE0,
        InequalityKind::OneFlipGain,
        InequalityKind::TwoFlipGain,
        InequalityKind::DegreeSum,
        InequalityKind::DegreeSumF0,
        InequalityKind::DegreeSumHeavy,
        InequalityKind::TwoFlipHeavy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityKind::OrientedFloor => "oriented-floor",
            InequalityKind::MismatchLoss => "mismatch-loss",
            InequalityKind::MismatchLossE0 => "mismatch-loss+E0",
            InequalityKind::OneFlipGain => "one-flip-gain",
            InequalityKind::TwoFlipGain => "two-flip-gain",
            InequalityKind::DegreeSum => "degree-sum",
            InequalityKind::DegreeSumF0 => "degree-sum-F0",
            InequalityKind::DegreeSumHeavy => "degree-sum-heavy",
            InequalityKind::TwoFlipHeavy => "two-flip-heavy",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// Each term is at least the next.
    Ge,
    /// Each term is at most the next.
    Le,
}

/// A chain `terms[0] R terms[1] R ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub kind: InequalityKind,
    pub relation: Relation,
    pub terms: Vec<Rational64>,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.terms.windows(2).all(|w| match self.relation {
            Relation::Ge => w[0] >= w[1],
            Relation::Le => w[0] <= w[1],
        })
    }

    /// Holds with equality between the first two terms.
    pub fn tight(&self) -> bool {
        self.terms[0] == self.terms[1]
    }
}

pub fn check_inequalities(dec: &FlipDecomposition) -> Vec<Inequality> {
    let z = |x: usize| Rational64::from_integer(x as i64);
    let (n, d) = (z(dec.n), z(dec.d));
    let [cut0, cut1, cut2] = dec.cuts.map(z);
    let opt = z(dec.opt);
    let big_d = z(dec.degree_sum);
    let (m, m_heavy) = (z(dec.m.len()), z(dec.m_heavy.len()));
    let (e0, e1, f0, u1) = (
        z(dec.e0.len()),
        z(dec.e1.len()),
        z(dec.f0.len()),
        z(dec.unstable1.len()),
    );

    let loss = opt - (d - 1) / 2 * m;
    let ge = |kind, terms| Inequality {
        kind,
        relation: Relation::Ge,
        terms,
    };
    let le = |kind, terms| Inequality {
        kind,
        relation: Relation::Le,
        terms,
    };
    vec![
        ge(
            InequalityKind::OrientedFloor,
            vec![cut0, big_d - d * n / 2, n / 2],
        ),
        ge(InequalityKind::MismatchLoss, vec![cut0, loss]),
        ge(InequalityKind::MismatchLossE0, vec![cut0, loss + e0]),
        ge(InequalityKind::OneFlipGain, vec![cut1, loss + e0 + e1]),
        ge(InequalityKind::TwoFlipGain, vec![cut2, loss + e0 + e1 + u1]),
        le(InequalityKind::DegreeSum, vec![opt * 2, big_d - m]),
        le(InequalityKind::DegreeSumF0, vec![opt * 2, big_d - m - f0]),
        le(
            InequalityKind::DegreeSumHeavy,
            vec![opt * 2, big_d - m - f0 - m_heavy],
        ),
        ge(
            InequalityKind::TwoFlipHeavy,
            vec![cut2, loss + e0 + e1 + u1 + m_heavy],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_abcd_instance;
    use crate::generators::make_id_orientation;
    use crate::graph::{Labelling, RegularGraph};

    fn k4_id() -> Orientation {
        let g =
            RegularGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        make_id_orientation(&g, &Labelling::identity(4))
    }

    #[test]
    fn k4_decomposition() {
        let o = k4_id();
        let dec = decompose(&o, &Cut::from_left_set(4, [0, 1])).unwrap();
        assert!(dec.m.is_empty());
        assert_eq!(dec.degree_sum, 10);
        assert_eq!(dec.cuts[0], 4);
        assert_eq!(dec.opt, 4);
        assert!(dec.structure_holds());
        let ineqs = check_inequalities(&dec);
        assert!(ineqs.iter().all(Inequality::holds));
        let floor = &ineqs[0];
        assert_eq!(floor.terms, vec![4.into(), 4.into(), 2.into()]);
        assert!(floor.tight());
        assert_eq!(ineqs[5].terms, vec![8.into(), 10.into()]);
    }

    #[test]
    fn abcd_decomposition() {
        let inst = make_abcd_instance(3, 12).unwrap();
        let opt = inst.blocks.optimal_cut(12);
        let dec = decompose(&inst.orientation, &opt).unwrap();
        let mut cd: Vec<usize> = inst
            .blocks
            .c
            .iter()
            .chain(&inst.blocks.d)
            .copied()
            .collect();
        cd.sort_unstable();
        assert_eq!(dec.m, cd);
        assert_eq!(dec.cuts[0], 6);
        assert_eq!(dec.opt, 10);
        let ineqs = check_inequalities(&dec);
        assert!(ineqs.iter().all(Inequality::holds));
        let loss = &ineqs[1];
        assert_eq!(loss.terms, vec![6.into(), 6.into()]);
        assert!(loss.tight());
    }

    #[test]
    fn optimal_start_has_empty_mismatch() {
        let o = k4_id();
        let cut0 = crate::algorithms::oriented_median_cut(&o).unwrap();
        let dec = decompose(&o, &cut0).unwrap();
        assert!(dec.m.is_empty());
        assert!(dec.e0.is_empty());
    }

    #[test]
    fn partial_cut_is_rejected() {
        assert!(matches!(
            decompose(&k4_id(), &Cut::uniform(3, Side::Left)),
            Err(Error::InvalidInput(_))
        ));
    }
}
