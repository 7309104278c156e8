//! Exact rational vector configurations, their standard constructors,
//! combinatorial predicates and Gale duals.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covectors::{f_matrix, sign_vector_feasible};
use crate::error::{Error, Result};
use crate::linalg::{determinant, null_space, rref_in_place};
use crate::scalar::{primitive_integer_vector, Scalar, Sign};
use crate::sign::{SignVector, MAX_LEN};

/// A labeled list of `n` column vectors in `T^rank`.
///
/// A configuration built through [`VectorConfiguration::new`] carries a
/// certificate that every `rank`-subset of columns is independent. One built
/// through [`VectorConfiguration::new_unchecked`] does not; operations that need
/// general position check it on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfiguration<T> {
    rank: usize,
    columns: Vec<Vec<T>>,
    certified: bool,
}

impl<T: Scalar> VectorConfiguration<T> {
    pub fn new(rank: usize, columns: Vec<Vec<T>>) -> Result<Self> {
        let v = Self::new_unchecked(rank, columns)?;
        if let Some(subset) = v.dependent_subset() {
            return Err(Error::NotGeneralPosition { subset });
        }
        Ok(VectorConfiguration {
            certified: true,
            ..v
        })
    }

    /// Builds a configuration without testing general position.
    pub fn new_unchecked(rank: usize, columns: Vec<Vec<T>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidParameter("rank must be at least 1".into()));
        }
        if columns.len() > MAX_LEN {
            return Err(Error::InvalidParameter(format!(
                "at most {MAX_LEN} vectors are supported"
            )));
        }
        if let Some(i) = columns.iter().position(|c| c.len() != rank) {
            return Err(Error::DimensionMismatch(format!(
                "column {} has {} entries, expected {rank}",
                i + 1,
                columns[i].len()
            )));
        }
        Ok(VectorConfiguration {
            rank,
            columns,
            certified: false,
        })
    }

    pub fn from_integer_columns(rank: usize, columns: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rank,
            columns
                .iter()
                .map(|c| c.iter().map(|&x| T::from_int(x)).collect())
                .collect(),
        )
    }

    pub(crate) fn certified_unchecked(rank: usize, columns: Vec<Vec<T>>) -> Self {
        VectorConfiguration {
            rank,
            columns,
            certified: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<T>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &[T] {
        &self.columns[i]
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// The `rank x n` matrix whose columns are the vectors.
    pub fn matrix_rows(&self) -> Vec<Vec<T>> {
        (0..self.rank)
            .map(|i| self.columns.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    /// First `rank`-subset (0-based, lexicographic) whose columns are dependent.
    pub fn dependent_subset(&self) -> Option<Vec<usize>> {
        if self.n() < self.rank {
            return None;
        }
        (0..self.n()).combinations(self.rank).find(|subset| {
            let m: Vec<Vec<T>> = subset.iter().map(|&i| self.columns[i].clone()).collect();
            determinant(&m).is_zero()
        })
    }

    pub fn is_general_position(&self) -> bool {
        self.certified || self.dependent_subset().is_none()
    }

    pub fn require_general_position(&self) -> Result<()> {
        if self.certified {
            return Ok(());
        }
        match self.dependent_subset() {
            Some(subset) => Err(Error::NotGeneralPosition { subset }),
            None => Ok(()),
        }
    }

    /// Reorders columns: column `i` of the result is column `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        VectorConfiguration {
            rank: self.rank,
            columns: perm.iter().map(|&p| self.columns[p].clone()).collect(),
            certified: self.certified,
        }
    }

    /// Multiplies column `i` by `factors[i]`.
    pub fn rescaled(&self, factors: &[T]) -> Self {
        let certified = self.certified && factors.iter().all(|f| !f.is_zero());
        VectorConfiguration {
            rank: self.rank,
            columns: self
                .columns
                .iter()
                .zip(factors)
                .map(|(c, f)| c.iter().map(|x| x.clone() * f.clone()).collect())
                .collect(),
            certified,
        }
    }

    /// Applies the square matrix `map` (row-major) to every column.
    pub fn transformed(&self, map: &[Vec<T>]) -> Result<Self> {
        if map.len() != self.rank || map.iter().any(|r| r.len() != self.rank) {
            return Err(Error::DimensionMismatch(
                "linear map must be rank x rank".into(),
            ));
        }
        let columns = self
            .columns
            .iter()
            .map(|c| map.iter().map(|row| crate::linalg::dot(row, c)).collect())
            .collect();
        let invertible = !determinant(map).is_zero();
        Ok(VectorConfiguration {
            rank: self.rank,
            columns,
            certified: self.certified && invertible,
        })
    }

    /// Sign vector `(sgn <v_1, u>, ..., sgn <v_n, u>)`.
    pub fn sign_vector_of(&self, u: &[T]) -> SignVector {
        let signs: Vec<Sign> = self
            .columns
            .iter()
            .map(|c| crate::linalg::dot(c, u).sign())
            .collect();
        SignVector::from_signs(&signs)
    }
}

/// Strictly increasing parameters of the moment curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicParams<T> {
    t_values: Vec<T>,
}

impl<T: Scalar> CyclicParams<T> {
    pub fn new(t_values: Vec<T>) -> Result<Self> {
        if let Some(w) = t_values.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "cyclic parameters must be strictly increasing ({} is followed by {})",
                w[0], w[1]
            )));
        }
        Ok(CyclicParams { t_values })
    }

    /// `t_i = i` for `i = 1..=n`.
    pub fn canonical(n: usize) -> Self {
        CyclicParams {
            t_values: (1..=n as i64).map(T::from_int).collect(),
        }
    }

    pub fn t_values(&self) -> &[T] {
        &self.t_values
    }
}

fn moment_columns<T: Scalar>(params: &CyclicParams<T>, rank: usize) -> Result<Vec<Vec<T>>> {
    if params.t_values.len() < rank {
        return Err(Error::InvalidParameter(format!(
            "need at least {rank} parameters, got {}",
            params.t_values.len()
        )));
    }
    Ok(params
        .t_values
        .iter()
        .map(|t| {
            let mut col = Vec::with_capacity(rank);
            let mut p = T::one();
            for _ in 0..rank {
                col.push(p.clone());
                p = p * t.clone();
            }
            col
        })
        .collect())
}

/// Columns `(1, t_i, t_i^2)`.
pub fn make_cyclic<T: Scalar>(params: &CyclicParams<T>) -> Result<VectorConfiguration<T>> {
    make_cyclic_rank(params, 3)
}

/// Columns `(-1)^i (1, t_i, t_i^2)` with 1-based `i`.
pub fn make_cocyclic<T: Scalar>(params: &CyclicParams<T>) -> Result<VectorConfiguration<T>> {
    make_cocyclic_rank(params, 3)
}

/// Moment-curve configuration `(1, t_i, ..., t_i^{rank-1})`; in general position
/// because every maximal minor is a Vandermonde determinant of distinct nodes.
pub fn make_cyclic_rank<T: Scalar>(
    params: &CyclicParams<T>,
    rank: usize,
) -> Result<VectorConfiguration<T>> {
    if rank == 0 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    Ok(VectorConfiguration::certified_unchecked(
        rank,
        moment_columns(params, rank)?,
    ))
}

pub fn make_cocyclic_rank<T: Scalar>(
    params: &CyclicParams<T>,
    rank: usize,
) -> Result<VectorConfiguration<T>> {
    if rank == 0 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    let columns = moment_columns(params, rank)?
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if i % 2 == 0 {
                c.into_iter().map(|x| -x).collect()
            } else {
                c
            }
        })
        .collect();
    Ok(VectorConfiguration::certified_unchecked(rank, columns))
}

/// `V_cyclic(n, 3)` with `t_i = i`.
pub fn cyclic<T: Scalar>(n: usize) -> Result<VectorConfiguration<T>> {
    make_cyclic(&CyclicParams::canonical(n))
}

/// `V_cocyclic(n, 3)` with `t_i = i`.
pub fn cocyclic<T: Scalar>(n: usize) -> Result<VectorConfiguration<T>> {
    make_cocyclic(&CyclicParams::canonical(n))
}

/// Per-column resampling budget of [`make_random`].
pub const RANDOM_ATTEMPTS_PER_COLUMN: usize = 2_000;

/// Integer configuration with entries in `[-bound, bound]`, built column by column;
/// a column that breaks general position with the earlier ones is redrawn.
pub fn make_random<T: Scalar>(
    n: usize,
    rank: usize,
    coordinate_bound: i64,
    seed: u64,
) -> Result<VectorConfiguration<T>> {
    if rank == 0 || n < rank {
        return Err(Error::InvalidParameter(format!(
            "need n >= rank >= 1, got n = {n}, rank = {rank}"
        )));
    }
    if coordinate_bound < 1 {
        return Err(Error::InvalidParameter(
            "coordinate bound must be at least 1".into(),
        ));
    }
    if n > MAX_LEN {
        return Err(Error::InvalidParameter(format!(
            "at most {MAX_LEN} vectors are supported"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut columns: Vec<Vec<T>> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while columns.len() < n {
        let mut placed = false;
        for _ in 0..RANDOM_ATTEMPTS_PER_COLUMN {
            attempts += 1;
            let candidate: Vec<T> = (0..rank)
                .map(|_| T::from_int(rng.random_range(-coordinate_bound..=coordinate_bound)))
                .collect();
            if keeps_general_position(&columns, &candidate, rank) {
                columns.push(candidate);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::GenerationFailure {
                attempts,
                reason: format!(
                    "could not place column {} of {n} with coordinates in [-{coordinate_bound}, {coordinate_bound}]",
                    columns.len() + 1
                ),
            });
        }
    }
    Ok(VectorConfiguration::certified_unchecked(rank, columns))
}

/// Whether adding `candidate` to `columns` (already in general position) keeps every
/// `rank`-subset that contains it independent.
pub(crate) fn keeps_general_position<T: Scalar>(
    columns: &[Vec<T>],
    candidate: &[T],
    rank: usize,
) -> bool {
    if candidate.iter().all(|x| x.is_zero()) {
        return false;
    }
    let k = (rank - 1).min(columns.len());
    if k < rank - 1 {
        // Fewer than rank - 1 earlier columns: only need independence of all of them.
        let mut rows: Vec<Vec<T>> = columns.to_vec();
        rows.push(candidate.to_vec());
        return crate::linalg::rank(&rows) == rows.len();
    }
    (0..columns.len()).combinations(rank - 1).all(|subset| {
        let mut m: Vec<Vec<T>> = subset.iter().map(|&i| columns[i].clone()).collect();
        m.push(candidate.to_vec());
        !determinant(&m).is_zero()
    })
}

/// A Gale dual: the `(n - rank)`-dimensional configuration whose row space is the
/// orthogonal complement of the row space of `v`.
///
/// The basis is canonical: the reduced row echelon form of the null space of the
/// column matrix, each row scaled to a primitive integer vector.
pub fn gale_dual<T: Scalar>(v: &VectorConfiguration<T>) -> Result<VectorConfiguration<T>> {
    v.require_general_position()?;
    let n = v.n();
    let r = v.rank();
    if n <= r {
        return Err(Error::InvalidParameter(format!(
            "the Gale dual of {n} vectors of rank {r} has rank {}; need n > rank",
            n as i64 - r as i64
        )));
    }
    let mut basis = null_space(&v.matrix_rows(), n);
    rref_in_place(&mut basis, n);
    let rows: Vec<Vec<T>> = basis
        .iter()
        .map(|row| primitive_integer_vector(row))
        .collect();
    let columns = (0..n)
        .map(|j| rows.iter().map(|row| row[j].clone()).collect())
        .collect();
    Ok(VectorConfiguration::certified_unchecked(n - r, columns))
}

/// Some open linear halfspace contains every vector.
pub fn is_pointed<T: Scalar>(v: &VectorConfiguration<T>) -> bool {
    let all_plus = SignVector::from_signs(&vec![Sign::Positive; v.n()]);
    sign_vector_feasible(v, &all_plus)
}

/// Every open linear halfspace contains at least `floor((n - rank + 1) / 2)` vectors.
pub fn is_coneighborly<T: Scalar>(v: &VectorConfiguration<T>) -> Result<bool> {
    let bound = (v.n() + 1).saturating_sub(v.rank()) / 2;
    let f = f_matrix(v)?;
    Ok((0..bound).all(|t| f.get(0, t as i64) == 0))
}

/// Every subset of at most `floor((rank - 1) / 2)` vectors (including the empty one) is extremal.
pub fn is_neighborly<T: Scalar>(v: &VectorConfiguration<T>) -> Result<bool> {
    v.require_general_position()?;
    let max_size = (v.rank() - 1) / 2;
    for size in 0..=max_size.min(v.n()) {
        for subset in (0..v.n()).combinations(size) {
            if !is_extremal(v, &subset) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Some oriented linear hyperplane contains the columns in `subset` and has all
/// other columns strictly on its positive side.
pub fn is_extremal<T: Scalar>(v: &VectorConfiguration<T>, subset: &[usize]) -> bool {
    let mut f = SignVector::from_signs(&vec![Sign::Positive; v.n()]);
    for &i in subset {
        f.set(i, Sign::Zero);
    }
    sign_vector_feasible(v, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covectors::enumerate_covectors;
    use crate::linalg::dot;
    use crate::Rational;
    use num_traits::Zero;

    fn q(x: i64) -> Rational {
        Rational::from_int(x)
    }

    fn cfg(rank: usize, cols: &[&[i64]]) -> VectorConfiguration<Rational> {
        VectorConfiguration::from_integer_columns(
            rank,
            &cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn cyclic_columns_by_substitution() {
        let p = CyclicParams::new(vec![q(0), q(1), q(2), q(3)]).unwrap();
        let v = make_cyclic(&p).unwrap();
        let expected: Vec<Vec<Rational>> = [[1, 0, 0], [1, 1, 1], [1, 2, 4], [1, 3, 9]]
            .iter()
            .map(|c| c.iter().map(|&x| q(x)).collect())
            .collect();
        assert_eq!(v.columns(), &expected[..]);
        let w = make_cocyclic(&p).unwrap();
        let expected: Vec<Vec<Rational>> = [[-1, 0, 0], [1, 1, 1], [-1, -2, -4], [1, 3, 9]]
            .iter()
            .map(|c| c.iter().map(|&x| q(x)).collect())
            .collect();
        assert_eq!(w.columns(), &expected[..]);
    }

    #[test]
    fn too_few_parameters_or_duplicates_are_rejected() {
        let p = CyclicParams::new(vec![q(0), q(1)]).unwrap();
        assert!(matches!(make_cyclic(&p), Err(Error::InvalidParameter(_))));
        assert!(matches!(
            CyclicParams::new(vec![q(0), q(1), q(1)]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn every_minor_of_cyclic_five_is_nonzero() {
        let p = CyclicParams::new((1..=5).map(q).collect()).unwrap();
        let v = make_cyclic(&p).unwrap();
        let mut count = 0;
        for s in (0..5).combinations(3) {
            let m: Vec<Vec<Rational>> = s.iter().map(|&i| v.column(i).to_vec()).collect();
            // Vandermonde: (t_b - t_a)(t_c - t_a)(t_c - t_b) > 0 for increasing nodes
            let (a, b, c) = (s[0] as i64 + 1, s[1] as i64 + 1, s[2] as i64 + 1);
            assert_eq!(determinant(&m), q((b - a) * (c - a) * (c - b)));
            count += 1;
        }
        assert_eq!(count, 10);
        let unchecked = VectorConfiguration::new_unchecked(3, v.columns().to_vec()).unwrap();
        assert!(unchecked.is_general_position());
    }

    #[test]
    fn general_position_detection() {
        let v = VectorConfiguration::<Rational>::new_unchecked(
            3,
            vec![
                vec![q(1), q(0), q(0)],
                vec![q(0), q(1), q(0)],
                vec![q(1), q(1), q(0)],
                vec![q(0), q(0), q(1)],
            ],
        )
        .unwrap();
        assert!(!v.is_general_position());
        assert_eq!(v.dependent_subset(), Some(vec![0, 1, 2]));
        let single = VectorConfiguration::new(1, vec![vec![q(5)]]).unwrap();
        assert!(single.is_general_position());
    }

    #[test]
    fn random_configurations() {
        let v: VectorConfiguration<Rational> = make_random(4, 3, 10, 7).unwrap();
        assert!(VectorConfiguration::new_unchecked(3, v.columns().to_vec())
            .unwrap()
            .is_general_position());
        let w: VectorConfiguration<Rational> = make_random(4, 3, 10, 7).unwrap();
        assert_eq!(v, w);
        let t: VectorConfiguration<Rational> = make_random(3, 3, 1, 0).unwrap();
        assert!(!determinant(t.columns()).is_zero());
        let err = make_random::<Rational>(20, 3, 1, 0).unwrap_err();
        assert!(matches!(err, Error::GenerationFailure { .. }));
    }

    #[test]
    fn gale_dual_of_four_cyclic_vectors_is_the_cofactor_row() {
        let v: VectorConfiguration<Rational> = cyclic(4).unwrap();
        let d = gale_dual(&v).unwrap();
        assert_eq!(d.rank(), 1);
        // signed 3x3 cofactors: lambda_i = (-1)^i det(V without column i)
        let cof: Vec<Rational> = (0..4)
            .map(|i| {
                let m: Vec<Vec<Rational>> = (0..4)
                    .filter(|&j| j != i)
                    .map(|j| v.column(j).to_vec())
                    .collect();
                let s = if i % 2 == 0 { q(1) } else { q(-1) };
                s * determinant(&m)
            })
            .collect();
        let row: Vec<Rational> = d.columns().iter().map(|c| c[0].clone()).collect();
        let ratio = row[0].clone() / cof[0].clone();
        for (a, b) in row.iter().zip(&cof) {
            assert_eq!(a.clone(), ratio.clone() * b.clone());
        }
        // the dependency itself
        for i in 0..3 {
            let s: Rational = (0..4)
                .map(|j| v.column(j)[i].clone() * row[j].clone())
                .sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn gale_dual_annihilates_and_round_trips() {
        let v: VectorConfiguration<Rational> = make_random(7, 3, 6, 11).unwrap();
        let d = gale_dual(&v).unwrap();
        for a in v.matrix_rows() {
            for b in d.matrix_rows() {
                assert!(dot(&a, &b).is_zero());
            }
        }
        assert!(VectorConfiguration::new_unchecked(4, d.columns().to_vec())
            .unwrap()
            .is_general_position());
        let dd = gale_dual(&d).unwrap();
        assert_eq!(
            enumerate_covectors(&v).unwrap(),
            enumerate_covectors(&dd).unwrap()
        );
        assert!(gale_dual(&cyclic::<Rational>(3).unwrap()).is_err());
    }

    #[test]
    fn predicates_on_named_configurations() {
        for n in 4..=8 {
            let c: VectorConfiguration<Rational> = cyclic(n).unwrap();
            assert!(is_pointed(&c));
            assert!(is_neighborly(&c).unwrap());
            let cc: VectorConfiguration<Rational> = cocyclic(n).unwrap();
            assert!(is_coneighborly(&cc).unwrap());
            if n >= 6 {
                assert!(!is_pointed(&cc));
            }
        }
        let v = cfg(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert!(is_pointed(&v));
        assert!(!is_coneighborly(&v).unwrap());
    }

    #[test]
    fn cocyclic_is_coneighborly_up_to_twelve() {
        for n in 4..=12 {
            assert!(
                is_coneighborly(&cocyclic::<Rational>(n).unwrap()).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn machine_rationals_work_too() {
        use num_rational::Rational64;
        let v: VectorConfiguration<Rational64> = cyclic(5).unwrap();
        assert!(is_pointed(&v));
        assert_eq!(gale_dual(&v).unwrap().rank(), 2);
    }
}
