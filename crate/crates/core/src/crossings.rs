//! Quadruple types, spherical arc drawings of `K_n` and their crossing numbers.

use itertools::Itertools;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::config::VectorConfiguration;
use crate::covectors::FStarMatrix;
use crate::error::{Error, Result};
use crate::gmatrix::{g1_bound, References};
use crate::linalg::{generalized_cross, transpose};
use crate::poly::binomial;
use crate::scalar::{Scalar, Sign};

/// Number of negative coefficients in the dependency of four vectors, up to
/// negating the dependency (so at most 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuadrupleType {
    /// the origin is inside the tetrahedron
    Type0,
    /// one vector lies inside the cone of the other three
    Type1,
    /// a pointed cone with four extremal rays
    Type2,
}

impl QuadrupleType {
    pub fn value(self) -> usize {
        match self {
            QuadrupleType::Type0 => 0,
            QuadrupleType::Type1 => 1,
            QuadrupleType::Type2 => 2,
        }
    }

    fn from_negatives(t: usize) -> Self {
        match t.min(4 - t) {
            0 => QuadrupleType::Type0,
            1 => QuadrupleType::Type1,
            _ => QuadrupleType::Type2,
        }
    }
}

fn require_rank3<T: Scalar>(v: &VectorConfiguration<T>) -> Result<()> {
    if v.rank() != 3 {
        return Err(Error::InvalidParameter(format!(
            "rank 3 required, got {}",
            v.rank()
        )));
    }
    Ok(())
}

/// Dependency coefficients of four columns: the cofactor vector of the 3x4 submatrix.
fn quadruple_dependency<T: Scalar>(
    v: &VectorConfiguration<T>,
    idx: [usize; 4],
) -> Result<Vec<Sign>> {
    let cols: Vec<Vec<T>> = idx.iter().map(|&i| v.column(i).to_vec()).collect();
    let lambda: Vec<Sign> = generalized_cross(&transpose(&cols))
        .iter()
        .map(Scalar::sign)
        .collect();
    if lambda.contains(&Sign::Zero) {
        return Err(Error::InternalInconsistency(format!(
            "degenerate quadruple {idx:?}"
        )));
    }
    Ok(lambda)
}

pub fn classify_quadruple<T: Scalar>(
    v: &VectorConfiguration<T>,
    idx: [usize; 4],
) -> Result<QuadrupleType> {
    require_rank3(v)?;
    if idx.iter().any(|&i| i >= v.n()) || idx.iter().tuple_combinations().any(|(a, b)| a == b) {
        return Err(Error::InvalidParameter(format!(
            "bad quadruple {idx:?} for n = {}",
            v.n()
        )));
    }
    let lambda = quadruple_dependency(v, idx)?;
    Ok(QuadrupleType::from_negatives(
        lambda.iter().filter(|&&s| s == Sign::Negative).count(),
    ))
}

/// Counts of Type 0, 1 and 2 quadruples.
pub fn type_tallies<T: Scalar>(v: &VectorConfiguration<T>) -> Result<[u64; 3]> {
    require_rank3(v)?;
    let mut tally = [0u64; 3];
    for q in (0..v.n()).combinations(4) {
        tally[classify_quadruple(v, [q[0], q[1], q[2], q[3]])?.value()] += 1;
    }
    Ok(tally)
}

/// Crossings of the spherical arc drawing: one per Type-2 quadruple.
pub fn crossing_count<T: Scalar>(v: &VectorConfiguration<T>) -> Result<u64> {
    Ok(type_tallies(v)?[2])
}

/// Half of `f*_{4,2}`.
pub fn crossing_count_from_fstar(fstar: &FStarMatrix) -> i64 {
    fstar.get(4, 2) / 2
}

const ARC_TOLERANCE: f64 = 1e-9;

fn cross3<F: Float>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3<F: Float>(a: &[F; 3], b: &[F; 3]) -> F {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn add3<F: Float>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn normalized<F: Float>(a: [F; 3]) -> [F; 3] {
    let len = dot3(&a, &a).sqrt();
    [a[0] / len, a[1] / len, a[2] / len]
}

/// Whether the minor great-circle arcs `ab` and `cd` cross properly, or
/// `None` when some predicate is within `tol` of zero.
pub fn arcs_cross<F: Float>(
    a: &[F; 3],
    b: &[F; 3],
    c: &[F; 3],
    d: &[F; 3],
    tol: F,
) -> Option<bool> {
    let nab = cross3(a, b);
    let ncd = cross3(c, d);
    let preds = [dot3(&nab, c), dot3(&nab, d), dot3(&ncd, a), dot3(&ncd, b)];
    if preds.iter().any(|p| p.abs() < tol) {
        return None;
    }
    if preds[0].signum() == preds[1].signum() || preds[2].signum() == preds[3].signum() {
        return Some(false);
    }
    // the point where the minor arc cd meets the great circle through a and b
    let mut q = cross3(&nab, &ncd);
    if dot3(&q, &add3(c, d)) < F::zero() {
        q = [-q[0], -q[1], -q[2]];
    }
    let on_ab = [dot3(&cross3(a, &q), &nab), dot3(&cross3(&q, b), &nab)];
    if on_ab.iter().any(|p| p.abs() < tol) {
        return None;
    }
    Some(on_ab.iter().all(|&p| p > F::zero()))
}

/// Crossing count of the drawing computed from arc geometry in floating point.
/// Near-degenerate arc pairs are decided exactly from the dependency signs.
pub fn crossing_count_geometric<T: Scalar>(v: &VectorConfiguration<T>) -> Result<u64> {
    require_rank3(v)?;
    let pts: Vec<[f64; 3]> = v
        .columns()
        .iter()
        .map(|c| normalized([c[0].to_f64(), c[1].to_f64(), c[2].to_f64()]))
        .collect();
    let n = v.n();
    let mut count = 0;
    for (a, b) in (0..n).tuple_combinations() {
        for (c, d) in (0..n).tuple_combinations() {
            if c <= a || [c, d].iter().any(|x| *x == a || *x == b) {
                continue;
            }
            let crosses = match arcs_cross(&pts[a], &pts[b], &pts[c], &pts[d], ARC_TOLERANCE) {
                Some(x) => x,
                None => {
                    // cone(a, b) meets cone(c, d) iff the dependency has signs (s, s, -s, -s)
                    let l = quadruple_dependency(v, [a, b, c, d])?;
                    l[0] == l[1] && l[2] == l[3] && l[0] != l[2]
                }
            };
            count += crosses as u64;
        }
    }
    Ok(count)
}

/// `X(n) = 1/4 floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2)`.
pub fn hill_x(n: u64) -> u64 {
    if n < 3 {
        return 0;
    }
    (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4
}

/// `Y(n) = sum_{k <= floor((n-4)/2)} (n-3-2k) ((k+1) n - 3 C(k+2,2))`.
pub fn hill_y(n: u64) -> i64 {
    if n < 4 {
        return 0;
    }
    (0..=(n as usize - 4) / 2)
        .map(|k| (n as i64 - 3 - 2 * k as i64) * g1_bound(n as usize, k))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormRow {
    pub n: u64,
    pub y: i64,
    pub binomial_minus_x: i64,
}

impl ClosedFormRow {
    pub fn holds(&self) -> bool {
        self.y == self.binomial_minus_x
    }
}

/// `Y(n)` against `C(n,4) - X(n)` over a range of `n`.
pub fn closed_form_rows(range: std::ops::RangeInclusive<u64>) -> Vec<ClosedFormRow> {
    range
        .map(|n| ClosedFormRow {
            n,
            y: hill_y(n),
            binomial_minus_x: binomial(n as i64, 4) - hill_x(n) as i64,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundRow {
    pub s: usize,
    pub level0: i64,
    pub level0_max: i64,
    pub sublevel1: i64,
    pub sublevel1_max: i64,
}

impl UpperBoundRow {
    pub fn holds(&self) -> bool {
        self.level0 <= self.level0_max && self.sublevel1 <= self.sublevel1_max
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundReport {
    pub n: usize,
    pub rows: Vec<UpperBoundRow>,
    pub s4_sublevel1: i64,
    pub y: i64,
}

impl UpperBoundReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(UpperBoundRow::holds) && self.s4_sublevel1 <= self.y
    }
}

/// `f*_{s,0}` and `f*_{s,<=1}` against the cocyclic configuration, and `f*_{4,<=1} <= Y(n)`.
pub fn check_upper_bounds(fstar: &FStarMatrix, refs: &References) -> Result<UpperBoundReport> {
    if fstar.rank != 3 {
        return Err(Error::InvalidParameter(format!(
            "rank 3 required, got {}",
            fstar.rank
        )));
    }
    let n = fstar.n;
    let reference = refs.cocyclic(n)?.fstar;
    let rows = (4..=n as i64)
        .map(|s| UpperBoundRow {
            s: s as usize,
            level0: fstar.get(s, 0),
            level0_max: reference.get(s, 0),
            sublevel1: fstar.sublevel(s, 1),
            sublevel1_max: reference.sublevel(s, 1),
        })
        .collect();
    Ok(UpperBoundReport {
        n,
        rows,
        s4_sublevel1: fstar.sublevel(4, 1),
        y: hill_y(n as u64),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WendelEstimate {
    pub n: usize,
    pub trials: usize,
    pub mean: f64,
    pub std_error: f64,
    /// `3/8 C(n,4)`
    pub expected: f64,
}

impl WendelEstimate {
    pub fn within(&self, standard_errors: f64) -> bool {
        (self.mean - self.expected).abs() <= standard_errors * self.std_error
    }
}

/// Coordinates are rounded to multiples of this, then the common denominator is dropped.
pub const WENDEL_DENOMINATOR: f64 = (1u64 << 20) as f64;

fn det3_i128(a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> i128 {
    let [a0, a1, a2] = a.map(i128::from);
    let [b0, b1, b2] = b.map(i128::from);
    let [c0, c1, c2] = c.map(i128::from);
    a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)
}

/// Crossing number of exact integer directions, or `None` if some triple is dependent.
pub fn crossing_count_integer(pts: &[[i64; 3]]) -> Option<u64> {
    let mut count = 0;
    for q in (0..pts.len()).combinations(4) {
        let p = |i: usize| &pts[q[i]];
        let lambda = [
            det3_i128(p(1), p(2), p(3)),
            -det3_i128(p(0), p(2), p(3)),
            det3_i128(p(0), p(1), p(3)),
            -det3_i128(p(0), p(1), p(2)),
        ];
        if lambda.contains(&0) {
            return None;
        }
        let neg = lambda.iter().filter(|&&x| x < 0).count();
        count += (QuadrupleType::from_negatives(neg) == QuadrupleType::Type2) as u64;
    }
    Some(count)
}

/// Sampling attempts per trial before giving up on general position.
pub const WENDEL_ATTEMPTS: usize = 100;

fn sample_directions(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<[i64; 3]>> {
    for _ in 0..WENDEL_ATTEMPTS {
        let pts: Vec<[i64; 3]> = (0..n)
            .map(|_| {
                let g: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
                normalized(g).map(|x| (x * WENDEL_DENOMINATOR).round() as i64)
            })
            .collect();
        let general = (0..n)
            .combinations(3)
            .all(|t| det3_i128(&pts[t[0]], &pts[t[1]], &pts[t[2]]) != 0);
        if general {
            return Ok(pts);
        }
    }
    Err(Error::GenerationFailure {
        attempts: WENDEL_ATTEMPTS,
        reason: "no general position sample".into(),
    })
}

/// Mean and standard error of the crossing number of `n` uniform random
/// directions. Trial `i` draws from stream `i` of a generator keyed by `seed`.
pub fn wendel_mc(n: usize, trials: usize, seed: u64) -> Result<WendelEstimate> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("need n >= 4, got {n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let pts = sample_directions(n, &mut rng)?;
        let c = crossing_count_integer(&pts).expect("sample is in general position") as f64;
        sum += c;
        sum_sq += c * c;
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = if trials > 1 {
        (sum_sq - t * mean * mean).max(0.0) / (t - 1.0)
    } else {
        0.0
    };
    Ok(WendelEstimate {
        n,
        trials,
        mean,
        std_error: (var / t).sqrt(),
        expected: 0.375 * binomial(n as i64, 4) as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{cocyclic, cyclic, make_random};
    use crate::covectors::fstar_matrix;
    use crate::Rational;

    fn cfg(cols: &[[i64; 3]]) -> VectorConfiguration<Rational> {
        VectorConfiguration::from_integer_columns(
            3,
            &cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn the_three_types() {
        let t0 = cfg(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]);
        let t1 = cfg(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        let t2 = cfg(&[[1, 0, 0], [0, 1, 0], [1, 1, 1], [1, 1, -1]]);
        assert_eq!(
            classify_quadruple(&t0, [0, 1, 2, 3]).unwrap(),
            QuadrupleType::Type0
        );
        assert_eq!(
            classify_quadruple(&t1, [0, 1, 2, 3]).unwrap(),
            QuadrupleType::Type1
        );
        assert_eq!(
            classify_quadruple(&t2, [0, 1, 2, 3]).unwrap(),
            QuadrupleType::Type2
        );
        assert_eq!(crossing_count(&t0).unwrap(), 0);
        assert_eq!(crossing_count_geometric(&t0).unwrap(), 0);
        assert_eq!(crossing_count_geometric(&t1).unwrap(), 0);
        assert_eq!(crossing_count_geometric(&t2).unwrap(), 1);
    }

    #[test]
    fn hill_values() {
        assert_eq!(hill_x(4), 0);
        assert_eq!(hill_x(5), 1);
        assert_eq!(hill_x(6), 3);
        assert_eq!(hill_x(7), 9);
        assert_eq!(hill_x(10), 60);
        assert_eq!(hill_x(12), 150);
        for n in 3..200u64 {
            let p = (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2);
            assert_eq!(p % 4, 0);
        }
    }

    #[test]
    fn closed_form_identity() {
        assert!(closed_form_rows(4..=200).iter().all(ClosedFormRow::holds));
    }

    #[test]
    fn cocyclic_attains_x_and_cyclic_is_convex() {
        for n in 4..=9 {
            assert_eq!(
                crossing_count(&cocyclic::<Rational>(n).unwrap()).unwrap(),
                hill_x(n as u64)
            );
            assert_eq!(
                crossing_count(&cyclic::<Rational>(n).unwrap()).unwrap() as i64,
                binomial(n as i64, 4)
            );
        }
    }

    #[test]
    fn combinatorial_geometric_and_fstar_agree() {
        for seed in 0..8 {
            let v: VectorConfiguration<Rational> = make_random(8, 3, 5, seed).unwrap();
            let c = crossing_count(&v).unwrap();
            assert_eq!(c, crossing_count_geometric(&v).unwrap());
            assert_eq!(
                c as i64,
                crossing_count_from_fstar(&fstar_matrix(&v).unwrap())
            );
            let tally = type_tallies(&v).unwrap();
            assert_eq!(tally.iter().sum::<u64>() as i64, binomial(8, 4));
            assert!(c >= hill_x(8));
        }
    }

    #[test]
    fn integer_path_matches_exact_path() {
        for seed in 0..5 {
            let v: VectorConfiguration<Rational> = make_random(7, 3, 9, seed).unwrap();
            let pts: Vec<[i64; 3]> = v
                .columns()
                .iter()
                .map(|c| std::array::from_fn(|i| c[i].to_integer().try_into().unwrap()))
                .collect();
            assert_eq!(
                crossing_count_integer(&pts),
                Some(crossing_count(&v).unwrap())
            );
        }
    }

    #[test]
    fn upper_bounds_small() {
        let refs = References::new();
        for seed in 0..5 {
            let v: VectorConfiguration<Rational> = make_random(8, 3, 6, seed).unwrap();
            assert!(check_upper_bounds(&fstar_matrix(&v).unwrap(), &refs)
                .unwrap()
                .passed());
        }
        let co = check_upper_bounds(&refs.cocyclic(8).unwrap().fstar, &refs).unwrap();
        assert_eq!(co.s4_sublevel1, co.y);
        assert_eq!(co.rows[0].level0, co.rows[0].level0_max);
        let cy = check_upper_bounds(&refs.cyclic(8).unwrap().fstar, &refs).unwrap();
        assert!(cy.rows.iter().all(|r| r.level0 == 0 && r.sublevel1 == 0));
    }

    #[test]
    fn wendel_small_and_errors() {
        let est = wendel_mc(4, 4000, 7).unwrap();
        assert!(est.within(4.0), "{est:?}");
        assert_eq!(wendel_mc(4, 50, 3).unwrap(), wendel_mc(4, 50, 3).unwrap());
        assert!(wendel_mc(4, 0, 1).is_err());
        assert!(wendel_mc(3, 10, 1).is_err());
    }

    #[test]
    fn rejects_other_ranks() {
        let v: VectorConfiguration<Rational> = make_random(6, 4, 5, 1).unwrap();
        assert!(crossing_count(&v).is_err());
    }
}
