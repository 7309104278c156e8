//! Exact feasibility of homogeneous systems `E u = 0, S u > 0`.
//!
//! Strict inequalities are homogenized to `S u >= 1`. After eliminating the
//! equalities and restricting to the row space of the remaining constraint
//! matrix the polyhedron is pointed, so it is nonempty iff one of its
//! candidate vertices (a full-rank set of tight rows) is feasible.

use itertools::Itertools;

use crate::linalg::{dot, null_space, rank, solve_square};
use crate::scalar::Scalar;

/// Returns some `u != 0` with `<e, u> = 0` for every row of `equalities` and
/// `<s, u> > 0` for every row of `strict`, or `None` if no such `u` exists.
pub fn strict_feasible_point<T: Scalar>(
    dim: usize,
    equalities: &[Vec<T>],
    strict: &[Vec<T>],
) -> Option<Vec<T>> {
    let basis = if equalities.is_empty() {
        identity(dim)
    } else {
        null_space(equalities, dim)
    };
    let d = basis.len();
    if d == 0 {
        return None;
    }
    if strict.is_empty() {
        return Some(basis[0].clone());
    }
    // constraint rows in basis coordinates
    let a: Vec<Vec<T>> = strict
        .iter()
        .map(|s| basis.iter().map(|b| dot(s, b)).collect())
        .collect();
    if a.iter().any(|row| row.iter().all(|x| x.is_zero())) {
        return None;
    }
    let rho = rank(&a);
    let lineality = null_space(&a, d);
    let one = T::one();
    for tight in (0..a.len()).combinations(rho) {
        let mut m: Vec<Vec<T>> = tight.iter().map(|&i| a[i].clone()).collect();
        let mut rhs = vec![one.clone(); rho];
        m.extend(lineality.iter().cloned());
        rhs.extend(std::iter::repeat_n(T::zero(), lineality.len()));
        let Some(y) = solve_square(&m, &rhs) else {
            continue;
        };
        if a.iter().all(|row| dot(row, &y) >= one) {
            let u = (0..dim)
                .map(|k| {
                    basis
                        .iter()
                        .zip(&y)
                        .fold(T::zero(), |acc, (b, c)| acc + b[k].clone() * c.clone())
                })
                .collect();
            return Some(u);
        }
    }
    None
}

fn identity<T: Scalar>(dim: usize) -> Vec<Vec<T>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;

    fn rows(r: &[&[i64]]) -> Vec<Vec<Rational>> {
        r.iter()
            .map(|x| x.iter().map(|&v| Rational::from_int(v)).collect())
            .collect()
    }

    #[test]
    fn positive_octant() {
        let s = rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let u = strict_feasible_point(3, &[], &s).unwrap();
        assert!(s.iter().all(|r| dot(r, &u) > Rational::from_int(0)));
    }

    #[test]
    fn opposite_halfspaces_are_infeasible() {
        let s = rows(&[&[1, 0], &[0, 1], &[-1, -1]]);
        assert!(strict_feasible_point(2, &[], &s).is_none());
    }

    #[test]
    fn equalities_cut_down_the_space() {
        let e = rows(&[&[1, 0, 0]]);
        let s = rows(&[&[1, 1, 0], &[0, -1, 1]]);
        let u = strict_feasible_point(3, &e, &s).unwrap();
        assert!(dot(&e[0], &u).is_zero());
        assert!(s.iter().all(|r| dot(r, &u) > Rational::from_int(0)));
        let e = rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(strict_feasible_point::<Rational>(3, &e, &[]).is_none());
    }

    #[test]
    fn rank_deficient_system() {
        // both constraints depend on the first coordinate only
        let s = rows(&[&[1, 0, 0], &[2, 0, 0]]);
        assert!(strict_feasible_point(3, &[], &s).is_some());
        let s = rows(&[&[1, 0, 0], &[-2, 0, 0]]);
        assert!(strict_feasible_point(3, &[], &s).is_none());
    }
}
