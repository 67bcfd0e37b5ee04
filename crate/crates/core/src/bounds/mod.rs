//! Closed-form bounds in exact rational arithmetic, the tower function and
//! iterated logarithm, window edge counts on circulants, and checks of the
//! component lemmas behind the median bound.

mod flip;

pub use flip::{
    check_inequalities, decompose, decompose_with_oracle, FlipDecomposition, Inequality,
    InequalityKind, Relation,
};

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algorithms::boundary_size;
use crate::algorithms::monochromatic_components;
use crate::error::{Error, Result};
use crate::graph::{Cut, Family, RegularGraph};

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn require_odd(d: usize) -> Result<()> {
    if d.is_multiple_of(2) {
        return Err(Error::UnsupportedDegree {
            degree: d,
            reason: "the bound is stated for odd degree",
        });
    }
    Ok(())
}

/// `n/2 + (d-1)(d+1)/4`, the guaranteed size of the median cut.
pub fn median_floor(n: usize, d: usize) -> Result<Rational64> {
    require_odd(d)?;
    let (n, d) = (n as i64, d as i64);
    Ok(Rational64::new(n, 2) + Rational64::new((d - 1) * (d + 1), 4))
}

/// `2d / (d^2 + 1)`, the oriented median approximation ratio.
pub fn oriented_ratio(d: usize) -> Result<Rational64> {
    require_odd(d)?;
    let d = d as i64;
    Ok(Rational64::new(2 * d, d * d + 1))
}

/// `f_d(a, b) = (d - 2a + b) / (d^2/2 - a(d+1) + b + 1/2)`.
pub fn f_d(d: usize, alpha: Rational64, beta: Rational64) -> Result<Rational64> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Domain(format!("f_d needs odd d >= 3, got {d}")));
    }
    let unit = |x: Rational64| x >= Rational64::zero() && x <= Rational64::one();
    if !unit(alpha) || !unit(beta) {
        return Err(Error::Domain(format!(
            "f_d needs alpha, beta in [0, 1], got ({alpha}, {beta})"
        )));
    }
    let d = d as i64;
    let half = Rational64::new(1, 2);
    let num = r(d) - alpha * 2 + beta;
    let den = r(d * d) * half - alpha * (d + 1) + beta + half;
    Ok(num / den)
}

/// Guaranteed `CUT_2 / OPT` after the oriented median and two flips.
///
/// With `y = (3d+1)/(2d^2+8d+2)` this is `f_3(0, y)` for `d = 3` and
/// `f_d(y, 0)` for larger `d`, where the infimum of `f_d` over
/// `alpha + beta >= y` is attained.
pub fn two_flip_floor(d: usize) -> Result<Rational64> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "two-flip floor needs odd d >= 3, got {d}"
        )));
    }
    let y = two_flip_y(d);
    if d == 3 {
        f_d(d, Rational64::zero(), y)
    } else {
        f_d(d, y, Rational64::zero())
    }
}

/// `(1 - x) / 2` with `x = (d^2 + d) / (d^2 + 4d + 1)`.
pub fn two_flip_y(d: usize) -> Rational64 {
    let d = d as i64;
    let x = Rational64::new(d * d + d, d * d + 4 * d + 1);
    (Rational64::one() - x) / 2
}

/// Largest exponent [`tower`] will materialise (`2^MAX_TOWER_EXPONENT`).
pub const MAX_TOWER_EXPONENT: u64 = 1 << 20;

/// `twr_1(x) = x`, `twr_k(x) = 2^twr_{k-1}(x)`.
pub fn tower(k: u32, x: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "tower height must be at least 1".into(),
        ));
    }
    let mut value = BigUint::from(x);
    for level in 2..=k {
        let exp = value
            .to_u64()
            .filter(|&e| e <= MAX_TOWER_EXPONENT)
            .ok_or_else(|| {
                Error::Overflow(format!(
                    "twr_{k}({x}) has more than 2^{MAX_TOWER_EXPONENT} bits at level {level}"
                ))
            })?;
        value = BigUint::one() << exp;
    }
    Ok(value)
}

/// Iterated base-2 logarithm of a positive integer: 0 if `x <= 1`, else
/// `1 + log*(log2 x)` with the real logarithm.
///
/// Exact: log* only changes value at integer (tower) thresholds, so for
/// `2^(b-1) < x < 2^b` the real `log2 x` may be replaced by `b`.
pub fn log_star(x: &BigUint) -> u32 {
    if *x <= BigUint::one() {
        return 0;
    }
    let bits = x.bits();
    let power_of_two = x.trailing_zeros() == Some(bits - 1);
    let next = if power_of_two { bits - 1 } else { bits };
    1 + log_star(&BigUint::from(next))
}

/// Iterated logarithm of a positive real.
pub fn log_star_real(x: f64) -> u32 {
    assert!(x > 0.0, "log* is defined for positive reals");
    let mut x = x;
    let mut count = 0;
    while x > 1.0 {
        x = x.log2();
        count += 1;
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerCase {
    pub k: u32,
    pub n: u64,
    /// `log*(twr_k(n))`, `None` when the tower is too large to build.
    pub lhs: Option<u32>,
    /// `k - 1 + log*(n)`.
    pub rhs: u32,
}

impl TowerCase {
    pub fn holds(&self) -> Option<bool> {
        self.lhs.map(|l| l == self.rhs)
    }
}

/// `log*(twr_k(n)) = k - 1 + log*(n)` for `1 <= k <= max_k`, `1 <= n <= max_n`.
pub fn tower_identity_cases(max_k: u32, max_n: u64) -> Vec<TowerCase> {
    let mut cases = Vec::new();
    for k in 1..=max_k {
        for n in 1..=max_n {
            let lhs = tower(k, n).ok().map(|t| log_star(&t));
            let rhs = k - 1 + log_star(&BigUint::from(n));
            cases.push(TowerCase { k, n, lhs, rhs });
        }
    }
    cases
}

fn circulant_params(g: &RegularGraph) -> Result<(usize, usize)> {
    match g.family() {
        Some(Family::Circulant { n, d }) => Ok((n, d)),
        _ => Err(Error::InvalidInput(
            "window counts need a circulant C_n^d".into(),
        )),
    }
}

/// Edges with both endpoints among the `len` consecutive cycle positions
/// starting at `start`, counted by enumeration.
pub fn window_edge_count(g: &RegularGraph, start: usize, len: usize) -> Result<usize> {
    let (n, _) = circulant_params(g)?;
    if len > n {
        return Err(Error::InvalidInput(format!(
            "window of {len} exceeds the {n}-cycle"
        )));
    }
    let mut inside = vec![false; n];
    for i in 0..len {
        inside[(start + i) % n] = true;
    }
    Ok(g.edges()
        .iter()
        .filter(|&&(u, v)| inside[u] && inside[v])
        .count())
}

/// `ell*d/2 - d(r-1)/2 - d^2/2`.
pub fn window_bound(d: usize, ell: usize, r: usize) -> i64 {
    let (d, ell, r) = (d as i64, ell as i64, r as i64);
    ell * d / 2 - d * (r - 1) / 2 - d * d / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowCheck {
    pub start: usize,
    pub ell: usize,
    pub r: usize,
    /// Size of the inner window (`ell` minus `(r-1)/2` on each side).
    pub inner_len: usize,
    pub count: usize,
    pub bound: i64,
}

impl WindowCheck {
    pub fn holds(&self) -> bool {
        self.count as i64 >= self.bound
    }
}

/// Counts edges inside the inner window of a window of `ell` positions,
/// dropping `(r-1)/2` positions at each end, and compares with
/// [`window_bound`].
pub fn window_check(g: &RegularGraph, start: usize, ell: usize, r: usize) -> Result<WindowCheck> {
    let (n, d) = circulant_params(g)?;
    if r.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("r must be odd, got {r}")));
    }
    if ell > n {
        return Err(Error::InvalidInput(format!(
            "window of {ell} exceeds the {n}-cycle"
        )));
    }
    let margin = (r - 1) / 2;
    let inner_len = ell.saturating_sub(2 * margin);
    let count = window_edge_count(g, (start + margin) % n, inner_len)?;
    Ok(WindowCheck {
        start,
        ell,
        r,
        inner_len,
        count,
        bound: window_bound(d, ell, r),
    })
}

/// Every subset of every monochromatic component holds a vertex with at most
/// `(d-1)/2` neighbours in the subset.
///
/// Checked exactly by peeling: a subset violating this survives any sequence
/// of removals of low-degree vertices, so the claim holds iff peeling
/// empties each component.
pub fn low_degree_peeling_holds(g: &RegularGraph, c: &Cut) -> bool {
    let limit = (g.degree().saturating_sub(1)) / 2;
    monochromatic_components(g, c).iter().all(|comp| {
        let mut alive = vec![false; g.n()];
        for &v in comp {
            alive[v] = true;
        }
        let mut inner: Vec<usize> = vec![0; g.n()];
        for &v in comp {
            inner[v] = g.neighbors(v).iter().filter(|&&w| alive[w]).count();
        }
        let mut stack: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&v| inner[v] <= limit)
            .collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            removed += 1;
            for &w in g.neighbors(v) {
                if alive[w] {
                    inner[w] -= 1;
                    if inner[w] == limit {
                        stack.push(w);
                    }
                }
            }
        }
        removed == comp.len()
    })
}

/// Minimum boundary of a monochromatic component of `k` vertices in a median
/// cut: `k + (d-1)(d+1)/4` if `k >= (d+1)/2`, else `k(d+1)/2`.
pub fn component_boundary_floor(k: usize, d: usize) -> Rational64 {
    let (k, d) = (k as i64, d as i64);
    if 2 * k > d {
        r(k) + Rational64::new((d - 1) * (d + 1), 4)
    } else {
        Rational64::new(k * (d + 1), 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentViolation {
    pub component: Vec<usize>,
    pub boundary: usize,
    pub floor: String,
}

/// Monochromatic components whose boundary is below [`component_boundary_floor`].
pub fn component_boundary_violations(g: &RegularGraph, c: &Cut) -> Vec<ComponentViolation> {
    monochromatic_components(g, c)
        .into_iter()
        .filter_map(|comp| {
            let boundary = boundary_size(g, &comp);
            let floor = component_boundary_floor(comp.len(), g.degree());
            (r(boundary as i64) < floor).then(|| ComponentViolation {
                component: comp,
                boundary,
                floor: floor.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_circulant;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(median_floor(24, 5).unwrap(), r(18));
        assert_eq!(median_floor(4, 3).unwrap(), r(4));
        assert_eq!(median_floor(12, 3).unwrap(), r(8));
        assert!(median_floor(12, 4).is_err());
        assert_eq!(oriented_ratio(3).unwrap(), q(3, 5));
        assert_eq!(oriented_ratio(5).unwrap(), q(5, 13));
        assert_eq!(oriented_ratio(1).unwrap(), r(1));
    }

    #[test]
    fn f_d_values() {
        assert_eq!(f_d(3, r(0), r(0)).unwrap(), q(3, 5));
        assert_eq!(f_d(3, r(0), r(1)).unwrap(), q(2, 3));
        assert_eq!(f_d(5, r(1), r(0)).unwrap(), q(3, 7));
        for d in [3, 5, 7, 9] {
            assert_eq!(f_d(d, r(0), r(0)).unwrap(), oriented_ratio(d).unwrap());
        }
        assert!(matches!(f_d(3, q(-1, 2), r(0)), Err(Error::Domain(_))));
        assert!(matches!(f_d(3, r(0), q(3, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn two_flip_floors() {
        assert_eq!(two_flip_y(3), q(5, 22));
        assert_eq!(two_flip_floor(3).unwrap(), q(71, 115));
        assert!(two_flip_floor(3).unwrap() > q(3, 5));
        assert_eq!(two_flip_y(5), q(4, 23));
        assert_eq!(two_flip_floor(5).unwrap(), q(107, 275));
        for d in [5, 7, 9, 11] {
            assert!(two_flip_floor(d).unwrap() > oriented_ratio(d).unwrap());
        }
    }

    #[test]
    fn towers_and_log_star() {
        assert_eq!(tower(3, 1).unwrap(), BigUint::from(4u32));
        assert_eq!(tower(2, 3).unwrap(), BigUint::from(8u32));
        assert_eq!(tower(5, 1).unwrap(), BigUint::from(65_536u32));
        assert_eq!(tower(4, 4).unwrap().bits(), 65_537);
        assert!(matches!(tower(5, 3), Err(Error::Overflow(_))));
        assert_eq!(log_star(&BigUint::from(1u32)), 0);
        assert_eq!(log_star(&BigUint::from(4u32)), 2);
        assert_eq!(log_star(&BigUint::from(3u32)), 2);
        assert_eq!(log_star(&BigUint::from(8u32)), 3);
        assert_eq!(log_star(&BigUint::from(65_536u32)), 4);
        assert_eq!(log_star(&BigUint::from(65_537u32)), 5);
    }

    #[test]
    fn integer_log_star_matches_real_version() {
        for x in 1u64..5000 {
            assert_eq!(
                log_star(&BigUint::from(x)),
                log_star_real(x as f64),
                "x = {x}"
            );
        }
    }

    #[test]
    fn tower_identity() {
        let cases = tower_identity_cases(5, 4);
        assert_eq!(cases.len(), 20);
        assert!(cases.iter().all(|c| c.holds() != Some(false)));
        let skipped: Vec<_> = cases
            .iter()
            .filter(|c| c.lhs.is_none())
            .map(|c| (c.k, c.n))
            .collect();
        assert_eq!(skipped, vec![(5, 3), (5, 4)]);
    }

    #[test]
    fn window_counts() {
        let g = make_circulant(12, 4).unwrap();
        assert_eq!(window_edge_count(&g, 0, 6).unwrap(), 8);
        assert_eq!(window_edge_count(&g, 9, 6).unwrap(), 8);
        assert_eq!(window_edge_count(&g, 0, 12).unwrap(), 24);
        assert!(window_edge_count(&g, 0, 13).is_err());
        let check = window_check(&g, 0, 12, 3).unwrap();
        assert_eq!(check.inner_len, 10);
        assert!(check.holds());
        assert!(window_check(&g, 0, 6, 2).is_err());
    }

    #[test]
    fn boundary_floor_values() {
        assert_eq!(component_boundary_floor(1, 3), r(2));
        assert_eq!(component_boundary_floor(2, 3), r(4));
        assert_eq!(component_boundary_floor(4, 5), r(10));
        assert_eq!(component_boundary_floor(2, 5), r(6));
    }
}
