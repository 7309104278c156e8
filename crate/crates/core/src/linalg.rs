//! Dense exact linear algebra on row-major matrices.

use crate::scalar::Scalar;

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Brings `rows` (each of length `ncols`) into reduced row echelon form in place
/// and returns the pivot columns.
pub fn rref_in_place<T: Scalar>(rows: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    rref_in_place(&mut m, ncols).len()
}

/// Determinant of a square matrix by fraction-carrying Gaussian elimination.
pub fn determinant<T: Scalar>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det = det * pivot.clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone() / pivot.clone();
            for j in c..n {
                let v = m[c][j].clone();
                m[i][j] = m[i][j].clone() - factor.clone() * v;
            }
        }
    }
    det
}

/// Basis of `{x : rows · x = 0}`, one vector per free column of the reduced echelon form.
pub fn null_space<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut m = rows.to_vec();
    let pivots = rref_in_place(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); ncols];
        v[free] = T::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// The generalized cross product of `d-1` vectors in `T^d`: the vector of signed
/// maximal minors. It is orthogonal to every input and nonzero iff they are independent,
/// and `det[x, rows...] = <cross, x>` for all `x`.
pub fn generalized_cross<T: Scalar>(rows: &[Vec<T>]) -> Vec<T> {
    let d = rows.len() + 1;
    (0..d)
        .map(|i| {
            let minor: Vec<Vec<T>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let m = if minor.is_empty() {
                T::one()
            } else {
                determinant(&minor)
            };
            if i % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub fn solve_square<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(
        m.into_iter()
            .map(|mut r| r.pop().expect("augmented column"))
            .collect(),
    )
}

pub fn transpose<T: Clone>(rows: &[Vec<T>]) -> Vec<Vec<T>> {
    let ncols = rows.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_of_vandermonde() {
        // (1,t,t^2) for t = 1,2,4: product of differences = (2-1)(4-1)(4-2) = 6
        let m = q(&[&[1, 1, 1], &[1, 2, 4], &[1, 4, 16]]);
        assert_eq!(determinant(&m), Rational::from_int(6));
        assert_eq!(determinant(&q(&[&[0, 1], &[1, 0]])), Rational::from_int(-1));
    }

    #[test]
    fn null_space_is_orthogonal_to_rows() {
        let m = q(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let ns = null_space(&m, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &m {
                assert!(dot(r, v).is_zero());
            }
        }
    }

    #[test]
    fn cross_product_matches_determinant_expansion() {
        let rows = q(&[&[1, 2, 0], &[0, 1, 3]]);
        let c = generalized_cross(&rows);
        let x = q(&[&[5, -1, 2]]).remove(0);
        let mut full = vec![x.clone()];
        full.extend(rows.iter().cloned());
        assert_eq!(dot(&c, &x), determinant(&full));
    }

    #[test]
    fn singular_system_has_no_unique_solution() {
        let a = q(&[&[1, 2], &[2, 4]]);
        assert!(solve_square(&a, &[Rational::from_int(1), Rational::from_int(2)]).is_none());
        let a = q(&[&[2, 1], &[1, 3]]);
        let x = solve_square(&a, &[Rational::from_int(3), Rational::from_int(5)]).unwrap();
        assert_eq!(
            x,
            vec![Rational::from_fraction(4, 5), Rational::from_fraction(7, 5)]
        );
    }

    #[test]
    fn rank_counts_pivots() {
        assert_eq!(rank(&q(&[&[1, 1, 0], &[2, 2, 0], &[0, 0, 1]])), 2);
    }
}
