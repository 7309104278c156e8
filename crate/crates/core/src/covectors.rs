//! Dissection patterns (covectors) and dependency patterns of a configuration,
//! and the f- and f*-matrices that count them.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::config::{gale_dual, VectorConfiguration};
use crate::error::{Error, Result};
use crate::feasibility::strict_feasible_point;
use crate::linalg::{dot, null_space};
use crate::poly::Poly2;
use crate::scalar::{Scalar, Sign};
use crate::sign::SignVector;

/// Whether `F` is realized as `(sgn <v_1, u>, ..., sgn <v_n, u>)` for some `u != 0`.
pub fn sign_vector_feasible<T: Scalar>(v: &VectorConfiguration<T>, f: &SignVector) -> bool {
    sign_vector_witness(v, f).is_some()
}

/// A direction `u` realizing `F`, if one exists.
pub fn sign_vector_witness<T: Scalar>(
    v: &VectorConfiguration<T>,
    f: &SignVector,
) -> Option<Vec<T>> {
    if f.len() != v.n() {
        return None;
    }
    let mut eq = Vec::new();
    let mut strict = Vec::new();
    for (i, s) in f.iter().enumerate() {
        let c = v.column(i);
        match s {
            Sign::Zero => eq.push(c.to_vec()),
            Sign::Positive => strict.push(c.to_vec()),
            Sign::Negative => strict.push(c.iter().map(|x| -x.clone()).collect()),
        }
    }
    strict_feasible_point(v.rank(), &eq, &strict)
}

/// Whether `F` is the sign pattern of a linear dependency `sum lambda_i v_i = 0`.
pub fn dependency_pattern_feasible<T: Scalar>(v: &VectorConfiguration<T>, f: &SignVector) -> bool {
    if f.len() != v.n() || f.is_all_zero() {
        return false;
    }
    let n = v.n();
    let unit = |i: usize, s: T| -> Vec<T> {
        (0..n)
            .map(|j| if i == j { s.clone() } else { T::zero() })
            .collect()
    };
    let mut eq = v.matrix_rows();
    let mut strict = Vec::new();
    for (i, s) in f.iter().enumerate() {
        match s {
            Sign::Zero => eq.push(unit(i, T::one())),
            Sign::Positive => strict.push(unit(i, T::one())),
            Sign::Negative => strict.push(unit(i, -T::one())),
        }
    }
    strict_feasible_point(n, &eq, &strict).is_some()
}

/// How [`enumerate_covectors_with`] treats the generated face candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Validation {
    /// Validate with the feasibility oracle when the rank is at most 3.
    #[default]
    Auto,
    Always,
    Never,
}

/// `F(V)`: every sign vector `(sgn <v_i, u>)_i` over nonzero `u`.
pub fn enumerate_covectors<T: Scalar>(v: &VectorConfiguration<T>) -> Result<BTreeSet<SignVector>> {
    enumerate_covectors_with(v, Validation::Auto)
}

pub fn enumerate_covectors_with<T: Scalar>(
    v: &VectorConfiguration<T>,
    validation: Validation,
) -> Result<BTreeSet<SignVector>> {
    Ok(covector_set(v, validation)?.into_iter().collect())
}

/// Face enumeration from the vertices of the simple arrangement.
///
/// Every face has a vertex (an `(r-1)`-subset `Z` and one of the two normals
/// `+-u_Z` of `span(Z)`) in its closure, and near a vertex the `r - 1`
/// hyperplanes through it are independent, so every completion of the zero
/// entries of the vertex by `{-, 0, +}` is a face.
pub(crate) fn covector_set<T: Scalar>(
    v: &VectorConfiguration<T>,
    validation: Validation,
) -> Result<HashSet<SignVector>> {
    v.require_general_position()?;
    let n = v.n();
    let r = v.rank();
    if n < r {
        return Err(Error::InvalidParameter(format!(
            "need at least rank = {r} vectors, got {n}"
        )));
    }
    let validate = match validation {
        Validation::Always => true,
        Validation::Never => false,
        Validation::Auto => r <= 3,
    };
    let completions = 3usize.pow((r - 1) as u32);
    let mut faces = HashSet::new();
    for zero_set in (0..n).combinations(r - 1) {
        let rows: Vec<Vec<T>> = zero_set.iter().map(|&i| v.column(i).to_vec()).collect();
        let mut normal = null_space(&rows, r);
        if normal.len() != 1 {
            return Err(Error::NotGeneralPosition { subset: zero_set });
        }
        let u = normal.remove(0);
        let base = v.sign_vector_of(&u);
        if base.zero_count() != r - 1 {
            let mut subset = zero_set.clone();
            subset.extend(
                base.zero_set()
                    .into_iter()
                    .filter(|i| !zero_set.contains(i)),
            );
            return Err(Error::NotGeneralPosition { subset });
        }
        for vertex in [base, base.negated()] {
            for code in 0..completions {
                let mut face = vertex;
                let mut c = code;
                for &i in &zero_set {
                    face.set(
                        i,
                        match c % 3 {
                            0 => Sign::Zero,
                            1 => Sign::Positive,
                            _ => Sign::Negative,
                        },
                    );
                    c /= 3;
                }
                if faces.insert(face) && validate && !sign_vector_feasible(v, &face) {
                    return Err(Error::InternalInconsistency(format!(
                        "generated face {face} is not realizable"
                    )));
                }
            }
        }
    }
    Ok(faces)
}

/// All nonzero sign vectors accepted by the feasibility oracle. Exponential in `n`.
pub fn enumerate_covectors_bruteforce<T: Scalar>(
    v: &VectorConfiguration<T>,
) -> BTreeSet<SignVector> {
    all_sign_vectors(v.n())
        .filter(|f| sign_vector_feasible(v, f))
        .collect()
}

/// All dependency sign patterns, by direct feasibility of `V lambda = 0`. Exponential in `n`.
pub fn enumerate_dependencies_bruteforce<T: Scalar>(
    v: &VectorConfiguration<T>,
) -> BTreeSet<SignVector> {
    all_sign_vectors(v.n())
        .filter(|f| dependency_pattern_feasible(v, f))
        .collect()
}

fn all_sign_vectors(n: usize) -> impl Iterator<Item = SignVector> {
    (1..3usize.pow(n as u32)).map(move |mut code| {
        let mut f = SignVector::zero(n);
        for i in 0..n {
            let s = match code % 3 {
                0 => Sign::Zero,
                1 => Sign::Positive,
                _ => Sign::Negative,
            };
            f.set(i, s);
            code /= 3;
        }
        f
    })
}

/// `f_{s,t}`: number of faces with `s` zeros and `t` negative entries.
/// Stored for `0 <= s < rank`, `0 <= t <= n`; other indices read as zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FMatrix {
    pub rank: usize,
    pub n: usize,
    pub values: Vec<Vec<i64>>,
}

impl FMatrix {
    pub fn zero(rank: usize, n: usize) -> Self {
        FMatrix {
            rank,
            n,
            values: vec![vec![0; n + 1]; rank],
        }
    }

    pub fn from_faces<'a>(
        rank: usize,
        n: usize,
        faces: impl IntoIterator<Item = &'a SignVector>,
    ) -> Self {
        let mut m = FMatrix::zero(rank, n);
        for f in faces {
            let s = f.zero_count();
            if s < rank {
                m.values[s][f.negative_count()] += 1;
            }
        }
        m
    }

    pub fn get(&self, s: i64, t: i64) -> i64 {
        if s < 0 || t < 0 {
            return 0;
        }
        self.values
            .get(s as usize)
            .and_then(|row| row.get(t as usize))
            .copied()
            .unwrap_or(0)
    }

    /// `f_{s, <=k}`.
    pub fn sublevel(&self, s: i64, k: i64) -> i64 {
        (0..=k).map(|t| self.get(s, t)).sum()
    }

    pub fn total(&self) -> i64 {
        self.values.iter().flatten().sum()
    }

    pub fn is_antipodal_symmetric(&self) -> bool {
        let n = self.n as i64;
        (0..self.rank as i64).all(|s| (0..=n).all(|t| self.get(s, t) == self.get(s, n - s - t)))
    }

    /// `f_V(x, y) = sum f_{s,t} x^s y^t`.
    pub fn polynomial(&self) -> Poly2 {
        let mut p = Poly2::zero();
        for (s, row) in self.values.iter().enumerate() {
            for (t, &c) in row.iter().enumerate() {
                p.add_term(c, s as u32, t as u32);
            }
        }
        p
    }

    pub fn to_text(&self) -> String {
        let title = format!("f-matrix (rank {}, n {})", self.rank, self.n);
        grid_text(&title, 0..self.rank, self.n, |s, t| {
            self.get(s as i64, t as i64)
        })
    }
}

/// `f*_{s,t}`: number of dependency patterns with `s` nonzero and `t` negative entries.
/// Stored for `0 <= s, t <= n`; only `rank < s` can be nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FStarMatrix {
    pub rank: usize,
    pub n: usize,
    pub values: Vec<Vec<i64>>,
}

impl FStarMatrix {
    pub fn zero(rank: usize, n: usize) -> Self {
        FStarMatrix {
            rank,
            n,
            values: vec![vec![0; n + 1]; n + 1],
        }
    }

    /// Reindexes the f-matrix of a Gale dual: `f*_{s,t}(V) = f_{n-s,t}(V*)`.
    pub fn from_dual_f(rank: usize, dual: &FMatrix) -> Self {
        let n = dual.n;
        let mut m = FStarMatrix::zero(rank, n);
        for s in 0..=n {
            for t in 0..=n {
                m.values[s][t] = dual.get((n - s) as i64, t as i64);
            }
        }
        m
    }

    pub fn from_patterns<'a>(
        rank: usize,
        n: usize,
        patterns: impl IntoIterator<Item = &'a SignVector>,
    ) -> Self {
        let mut m = FStarMatrix::zero(rank, n);
        for f in patterns {
            m.values[n - f.zero_count()][f.negative_count()] += 1;
        }
        m
    }

    pub fn get(&self, s: i64, t: i64) -> i64 {
        if s < 0 || t < 0 {
            return 0;
        }
        self.values
            .get(s as usize)
            .and_then(|row| row.get(t as usize))
            .copied()
            .unwrap_or(0)
    }

    /// `f*_{s, <=k}`.
    pub fn sublevel(&self, s: i64, k: i64) -> i64 {
        (0..=k).map(|t| self.get(s, t)).sum()
    }

    pub fn is_negation_symmetric(&self) -> bool {
        (0..=self.n as i64).all(|s| (0..=s).all(|t| self.get(s, t) == self.get(s, s - t)))
    }

    /// `f*_V(x, y) = sum f*_{s,t} x^{n-s} y^t`.
    pub fn polynomial(&self) -> Poly2 {
        let mut p = Poly2::zero();
        for (s, row) in self.values.iter().enumerate() {
            for (t, &c) in row.iter().enumerate() {
                p.add_term(c, (self.n - s) as u32, t as u32);
            }
        }
        p
    }

    pub fn to_text(&self) -> String {
        let title = format!("f*-matrix (rank {}, n {})", self.rank, self.n);
        grid_text(&title, self.rank + 1..self.n + 1, self.n, |s, t| {
            self.get(s as i64, t as i64)
        })
    }
}

pub(crate) fn grid_text(
    title: &str,
    rows: std::ops::Range<usize>,
    max_col: usize,
    get: impl Fn(usize, usize) -> i64,
) -> String {
    let cells: Vec<Vec<String>> = rows
        .clone()
        .map(|s| (0..=max_col).map(|t| get(s, t).to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain([max_col.to_string().len(), 3])
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = write!(out, "{:>4}", "s\\t");
    for t in 0..=max_col {
        let _ = write!(out, " {t:>width$}");
    }
    out.push('\n');
    for (s, row) in rows.zip(&cells) {
        let _ = write!(out, "{s:>4}");
        for c in row {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
    }
    out
}

pub fn f_matrix<T: Scalar>(v: &VectorConfiguration<T>) -> Result<FMatrix> {
    let faces = covector_set(v, Validation::Auto)?;
    Ok(FMatrix::from_faces(v.rank(), v.n(), &faces))
}

/// The f*-matrix, computed as the reindexed f-matrix of the Gale dual.
pub fn fstar_matrix<T: Scalar>(v: &VectorConfiguration<T>) -> Result<FStarMatrix> {
    v.require_general_position()?;
    if v.n() <= v.rank() {
        return Ok(FStarMatrix::zero(v.rank(), v.n()));
    }
    let dual = gale_dual(v)?;
    let faces = covector_set(&dual, Validation::Auto)?;
    Ok(FStarMatrix::from_dual_f(
        v.rank(),
        &FMatrix::from_faces(dual.rank(), dual.n(), &faces),
    ))
}

/// `F*(V)`, the dependency patterns, as the covectors of the Gale dual.
pub fn enumerate_dependencies<T: Scalar>(
    v: &VectorConfiguration<T>,
) -> Result<BTreeSet<SignVector>> {
    v.require_general_position()?;
    if v.n() <= v.rank() {
        return Ok(BTreeSet::new());
    }
    enumerate_covectors(&gale_dual(v)?)
}

/// Right-hand side of the f/f* conversion:
/// `(x+y+1)^n - (-1)^r x^n - (x+1)^n f_V(-x/(x+1), (x+y)/(x+1))`,
/// expanded as `sum f_{s,t} (-x)^s (x+y)^t (x+1)^{n-s-t}` (no denominators remain).
pub fn fstar_polynomial_from_f(f: &FMatrix) -> Poly2 {
    let n = f.n as u32;
    let x = Poly2::x();
    let xy = &Poly2::x() + &Poly2::y();
    let x1 = &Poly2::x() + &Poly2::one();
    let mut rhs = (&xy + &Poly2::one()).pow(n);
    let sign = if f.rank.is_multiple_of(2) { 1 } else { -1 };
    rhs = &rhs - &Poly2::monomial(sign, n, 0);
    for (s, row) in f.values.iter().enumerate() {
        for (t, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let rest = n as i64 - (s + t) as i64;
            if rest < 0 {
                continue;
            }
            let term = &(&x.scale(-1).pow(s as u32) * &xy.pow(t as u32)) * &x1.pow(rest as u32);
            rhs = &rhs - &term.scale(c);
        }
    }
    rhs
}

/// Compares the f*-polynomial with its expression through the f-polynomial.
pub fn check_fstar_from_f<T: Scalar>(v: &VectorConfiguration<T>) -> Result<bool> {
    let f = f_matrix(v)?;
    let fs = fstar_matrix(v)?;
    Ok(fs.polynomial() == fstar_polynomial_from_f(&f))
}

/// Sublevel counts `f_{s,<=k}(V) <= f_{s,<=k}(reference)` for `0 <= s < rank` and
/// `0 <= k <= floor((n - rank - 1) / 2)`; returns the violated `(s, k)` pairs.
pub fn sublevel_bound_violations(f: &FMatrix, reference: &FMatrix) -> Vec<(usize, usize)> {
    let kmax = (f.n as i64 - f.rank as i64 - 1).max(-1);
    let mut bad = Vec::new();
    if kmax < 0 {
        return bad;
    }
    for s in 0..f.rank {
        for k in 0..=(kmax / 2) {
            if f.sublevel(s as i64, k) > reference.sublevel(s as i64, k) {
                bad.push((s, k as usize));
            }
        }
    }
    bad
}

/// Inner product helper for callers that hold a face witness.
pub fn signs_at<T: Scalar>(v: &VectorConfiguration<T>, u: &[T]) -> Vec<Sign> {
    v.columns().iter().map(|c| dot(c, u).sign()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{cocyclic, cyclic, make_cyclic_rank, make_random, CyclicParams};
    use crate::Rational;

    fn cfg(rank: usize, cols: &[&[i64]]) -> VectorConfiguration<Rational> {
        VectorConfiguration::from_integer_columns(
            rank,
            &cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn basis3() -> VectorConfiguration<Rational> {
        cfg(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    #[test]
    fn three_coordinate_circles() {
        let faces = enumerate_covectors(&basis3()).unwrap();
        assert_eq!(faces.len(), 26);
        let by_zeros = |z| faces.iter().filter(|f| f.zero_count() == z).count();
        assert_eq!((by_zeros(2), by_zeros(1), by_zeros(0)), (6, 12, 8));
        let f = f_matrix(&basis3()).unwrap();
        assert_eq!(f.values[0][..4], [1, 3, 3, 1]);
        assert_eq!(f.values[1][..3], [3, 6, 3]);
        assert_eq!(f.values[2][..2], [3, 3]);
        assert!(f.is_antipodal_symmetric());
    }

    #[test]
    fn closed_under_negation() {
        let v: VectorConfiguration<Rational> = make_random(6, 3, 5, 3).unwrap();
        let faces = enumerate_covectors(&v).unwrap();
        assert!(faces.iter().all(|f| faces.contains(&f.negated())));
        assert!(faces.iter().all(|f| !f.is_all_zero()));
    }

    #[test]
    fn feasibility_examples() {
        let v = basis3();
        assert!(sign_vector_feasible(&v, &"+++".parse().unwrap()));
        assert!(!sign_vector_feasible(&v, &"000".parse().unwrap()));
        let w = cfg(2, &[&[1, 0], &[0, 1], &[-1, -1]]);
        assert!(!sign_vector_feasible(&w, &"+++".parse().unwrap()));
    }

    #[test]
    fn matches_bruteforce_across_ranks() {
        for (seed, (n, r)) in [(5, 1), (4, 2), (6, 2), (5, 3), (7, 3), (6, 4), (7, 5)]
            .into_iter()
            .enumerate()
        {
            let v: VectorConfiguration<Rational> = make_random(n, r, 4, seed as u64).unwrap();
            let fast = enumerate_covectors_with(&v, Validation::Always).unwrap();
            assert_eq!(fast, enumerate_covectors_bruteforce(&v), "n = {n}, r = {r}");
            let verts = fast.iter().filter(|f| f.zero_count() == r - 1).count();
            assert_eq!(
                verts as i64,
                2 * crate::poly::binomial(n as i64, r as i64 - 1)
            );
        }
    }

    #[test]
    fn euler_relation_in_rank_three() {
        for seed in 0..5 {
            let v: VectorConfiguration<Rational> = make_random(7, 3, 6, seed).unwrap();
            let f = f_matrix(&v).unwrap();
            let n = 7i64;
            let sum = |s: usize| f.values[s].iter().sum::<i64>();
            assert_eq!(sum(2), n * (n - 1));
            assert_eq!(sum(1), 2 * n * (n - 1));
            assert_eq!(sum(0), n * (n - 1) + 2);
        }
    }

    #[test]
    fn dependency_patterns_two_ways() {
        let v: VectorConfiguration<Rational> = make_random(6, 3, 5, 9).unwrap();
        let gale = enumerate_dependencies(&v).unwrap();
        assert_eq!(gale, enumerate_dependencies_bruteforce(&v));
        let fs = fstar_matrix(&v).unwrap();
        assert_eq!(fs, FStarMatrix::from_patterns(3, 6, &gale));
        assert!(fs.is_negation_symmetric());
    }

    #[test]
    fn cyclic_has_no_small_level_dependencies() {
        for n in 4..=9 {
            let fs = fstar_matrix(&cyclic::<Rational>(n).unwrap()).unwrap();
            for s in 0..=n as i64 {
                assert_eq!(fs.get(s, 0), 0);
                assert_eq!(fs.get(s, 1), 0);
            }
        }
    }

    #[test]
    fn single_dependency_of_a_tetrahedron() {
        let v = cfg(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]]);
        let fs = fstar_matrix(&v).unwrap();
        assert_eq!(fs.get(4, 0), 1);
        assert_eq!(fs.get(4, 4), 1);
        let total: i64 = fs.values.iter().flatten().sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn square_configuration_has_no_dependencies() {
        let fs = fstar_matrix(&basis3()).unwrap();
        assert!(fs.values.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn fstar_from_f_identity() {
        assert!(check_fstar_from_f(&cyclic::<Rational>(5).unwrap()).unwrap());
        assert!(check_fstar_from_f(&cocyclic::<Rational>(6).unwrap()).unwrap());
        for (seed, (n, r)) in [(6, 2), (7, 3), (7, 4), (5, 1)].into_iter().enumerate() {
            let v: VectorConfiguration<Rational> = make_random(n, r, 5, 100 + seed as u64).unwrap();
            assert!(check_fstar_from_f(&v).unwrap(), "n = {n}, r = {r}");
        }
        // n = r: both sides vanish
        assert!(check_fstar_from_f(&basis3()).unwrap());
    }

    #[test]
    fn quadruple_identity_on_quadruples() {
        for seed in 0..5 {
            let v: VectorConfiguration<Rational> = make_random(8, 3, 7, seed).unwrap();
            let fs = fstar_matrix(&v).unwrap();
            assert_eq!(2 * fs.get(4, 0) + 2 * fs.get(4, 1) + fs.get(4, 2), 2 * 70);
        }
    }

    #[test]
    fn sublevels_bounded_by_cyclic_at_small_n() {
        for n in 5..=8 {
            let reference =
                f_matrix(&make_cyclic_rank(&CyclicParams::<Rational>::canonical(n), 3).unwrap())
                    .unwrap();
            for seed in 0..4 {
                let v: VectorConfiguration<Rational> = make_random(n, 3, 6, seed).unwrap();
                assert!(sublevel_bound_violations(&f_matrix(&v).unwrap(), &reference).is_empty());
            }
        }
    }

    #[test]
    fn text_table_lists_rows() {
        let t = f_matrix(&basis3()).unwrap().to_text();
        assert!(t.starts_with("f-matrix (rank 3, n 3)"));
        assert_eq!(t.lines().count(), 5);
    }
}
