//! g-matrices of pairs of configurations, computed from f*-matrix
//! differences, and the bounds they satisfy in rank 3.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::config::{cocyclic, cyclic, gale_dual, is_coneighborly, VectorConfiguration};
use crate::covectors::{f_matrix, fstar_matrix, grid_text, FMatrix, FStarMatrix};
use crate::error::{Error, Result};
use crate::poly::{binomial, Poly2};
use crate::scalar::Scalar;

/// `g_{j,k}` for `0 <= j <= rank`, `0 <= k <= n - rank`; other indices read as zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GMatrix {
    pub rank: usize,
    pub n: usize,
    pub values: Vec<Vec<i64>>,
}

impl GMatrix {
    pub fn zero(rank: usize, n: usize) -> Self {
        assert!(n >= rank, "g-matrix needs n >= rank");
        GMatrix {
            rank,
            n,
            values: vec![vec![0; n - rank + 1]; rank + 1],
        }
    }

    /// Largest column index, `n - rank`.
    pub fn corank(&self) -> usize {
        self.n - self.rank
    }

    pub fn get(&self, j: i64, k: i64) -> i64 {
        if j < 0 || k < 0 {
            return 0;
        }
        self.values
            .get(j as usize)
            .and_then(|row| row.get(k as usize))
            .copied()
            .unwrap_or(0)
    }

    fn set(&mut self, j: usize, k: usize, value: i64) {
        self.values[j][k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|&x| x == 0)
    }

    pub fn negated(&self) -> Self {
        let mut g = self.clone();
        g.values.iter_mut().flatten().for_each(|x| *x = -*x);
        g
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if (self.rank, self.n) != (other.rank, other.n) {
            return Err(Error::DimensionMismatch(format!(
                "g-matrices of shape ({}, {}) and ({}, {})",
                self.rank, self.n, other.rank, other.n
            )));
        }
        let mut g = self.clone();
        for (a, b) in g
            .values
            .iter_mut()
            .flatten()
            .zip(other.values.iter().flatten())
        {
            *a += b;
        }
        Ok(g)
    }

    /// `h_{k,j} = g_{j,k}`, a g-matrix of rank `n - rank`.
    pub fn transposed(&self) -> Self {
        let mut t = GMatrix::zero(self.corank(), self.n);
        for j in 0..=self.rank {
            for k in 0..=self.corank() {
                t.values[k][j] = self.values[j][k];
            }
        }
        t
    }

    /// `g_{j,k} = -g_{r-j,k} = -g_{j,n-r-k}` for every index.
    pub fn is_skew_symmetric(&self) -> bool {
        let (r, c) = (self.rank, self.corank());
        (0..=r).all(|j| {
            (0..=c).all(|k| {
                let g = self.values[j][k];
                g == -self.values[r - j][k] && g == -self.values[j][c - k]
            })
        })
    }

    /// Rows `0..=floor((r-1)/2)`, columns `0..=floor((n-r-1)/2)`: the part
    /// that determines the rest by skew-symmetry.
    pub fn small(&self) -> Vec<Vec<i64>> {
        if self.rank == 0 || self.corank() == 0 {
            return Vec::new();
        }
        let rows = (self.rank - 1) / 2;
        let cols = (self.corank() - 1) / 2;
        (0..=rows)
            .map(|j| self.values[j][..=cols].to_vec())
            .collect()
    }

    /// `g(x, y) = sum g_{j,k} x^j y^k`.
    pub fn polynomial(&self) -> Poly2 {
        let mut p = Poly2::zero();
        for (j, row) in self.values.iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                p.add_term(c, j as u32, k as u32);
            }
        }
        p
    }

    pub fn to_text(&self) -> String {
        let title = format!("g-matrix (rank {}, n {})", self.rank, self.n);
        grid_text(&title, 0..self.rank + 1, self.corank(), |j, k| {
            self.get(j as i64, k as i64)
        })
    }

    pub fn small_text(&self) -> String {
        let small = self.small();
        let cols = small.first().map_or(0, Vec::len);
        if cols == 0 {
            return "small g-matrix: empty\n".to_string();
        }
        grid_text("small g-matrix", 0..small.len(), cols - 1, |j, k| {
            small[j][k]
        })
    }
}

/// `f_W - f_V = sum g_{j,k} (x+y)^j (1+x)^{r-j} y^k`.
pub fn reconstruct_f_diff(g: &GMatrix) -> Poly2 {
    let xy = &Poly2::x() + &Poly2::y();
    let x1 = &Poly2::x() + &Poly2::one();
    let mut p = Poly2::zero();
    for j in 0..=g.rank {
        let base = &xy.pow(j as u32) * &x1.pow((g.rank - j) as u32);
        for k in 0..=g.corank() {
            let c = g.values[j][k];
            if c != 0 {
                p = &p + &(&base * &Poly2::monomial(c, 0, k as u32));
            }
        }
    }
    p
}

/// `f*_W - f*_V = -sum g_{j,k} (x+y)^k (x+1)^{n-r-k} y^j`.
pub fn reconstruct_fstar_diff(g: &GMatrix) -> Poly2 {
    let xy = &Poly2::x() + &Poly2::y();
    let x1 = &Poly2::x() + &Poly2::one();
    let mut p = Poly2::zero();
    for k in 0..=g.corank() {
        let base = &xy.pow(k as u32) * &x1.pow((g.corank() - k) as u32);
        for j in 0..=g.rank {
            let c = g.values[j][k];
            if c != 0 {
                p = &p + &(&base * &Poly2::monomial(-c, 0, j as u32));
            }
        }
    }
    p
}

/// Coefficient of `g_{j,k}` in `f*_{s,t}(V) - f*_{s,t}(W)`.
fn fstar_coefficient(rank: usize, n: usize, s: i64, t: i64, j: i64, k: i64) -> i64 {
    let c = (n - rank) as i64;
    binomial(k, t - j) * binomial(c - k, s - t + j - rank as i64)
}

/// f- and f*-matrices of one configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub rank: usize,
    pub n: usize,
    pub f: FMatrix,
    pub fstar: FStarMatrix,
}

impl Profile {
    pub fn of<T: Scalar>(v: &VectorConfiguration<T>) -> Result<Self> {
        Ok(Profile {
            rank: v.rank(),
            n: v.n(),
            f: f_matrix(v)?,
            fstar: fstar_matrix(v)?,
        })
    }
}

/// Solves the triangular f*-difference system row by row and checks the result.
///
/// Row `j` is read off the `t = j` equations: the coefficient of `g_{j,k}` there
/// is `C(n-r-k, s-r)`, so `s = n, n-1, ..., r+1` yields `k = 0, 1, ..., n-r-1`
/// in turn; `g_{j,n-r} = -g_{j,0}` and the rows past the middle follow by
/// skew-symmetry.
pub fn g_between(v: &Profile, w: &Profile) -> Result<GMatrix> {
    if (v.rank, v.n) != (w.rank, w.n) {
        return Err(Error::DimensionMismatch(format!(
            "configurations of shape ({}, {}) and ({}, {})",
            v.rank, v.n, w.rank, w.n
        )));
    }
    let (r, n) = (v.rank, v.n);
    if n < r {
        return Err(Error::InvalidParameter(format!(
            "need n >= rank, got n = {n}, rank = {r}"
        )));
    }
    let c = n - r;
    let mut g = GMatrix::zero(r, n);
    if c == 0 {
        return Ok(g);
    }
    let diff =
        |s: usize, t: usize| v.fstar.get(s as i64, t as i64) - w.fstar.get(s as i64, t as i64);
    for j in 0..=r / 2 {
        let t = j;
        for k in 0..c {
            let s = n - k;
            let mut rhs = diff(s, t);
            for jj in 0..=j {
                for kk in 0..=c {
                    if jj == j && kk >= k {
                        continue;
                    }
                    rhs -= fstar_coefficient(r, n, s as i64, t as i64, jj as i64, kk as i64)
                        * g.values[jj][kk];
                }
            }
            // the pivot coefficient C(n-r-k, n-k-r) is 1
            g.set(j, k, rhs);
        }
        g.set(j, c, -g.values[j][0]);
        if r - j != j {
            for k in 0..=c {
                g.set(r - j, k, -g.values[j][k]);
            }
        }
    }
    verify_g(&g, v, w)?;
    Ok(g)
}

fn verify_g(g: &GMatrix, v: &Profile, w: &Profile) -> Result<()> {
    let (r, n) = (v.rank, v.n);
    if !g.is_skew_symmetric() {
        return Err(Error::InternalInconsistency(format!(
            "g-matrix is not skew-symmetric:\n{}",
            g.to_text()
        )));
    }
    for s in 0..=n as i64 {
        for t in 0..=s {
            let lhs = v.fstar.get(s, t) - w.fstar.get(s, t);
            let mut rhs = 0;
            for j in 0..=r as i64 {
                for k in 0..=(n - r) as i64 {
                    rhs += fstar_coefficient(r, n, s, t, j, k) * g.get(j, k);
                }
            }
            if lhs != rhs {
                return Err(Error::InternalInconsistency(format!(
                    "f*-difference at (s, t) = ({s}, {t}) is {lhs}, g predicts {rhs}"
                )));
            }
        }
    }
    let f_diff = &w.f.polynomial() - &v.f.polynomial();
    if f_diff != reconstruct_f_diff(g) {
        return Err(Error::InternalInconsistency(
            "f-difference does not match the g-matrix".into(),
        ));
    }
    Ok(())
}

/// `g(V -> W)`.
pub fn g_pair<T: Scalar>(
    v: &VectorConfiguration<T>,
    w: &VectorConfiguration<T>,
) -> Result<GMatrix> {
    if (v.rank(), v.n()) != (w.rank(), w.n()) {
        return Err(Error::DimensionMismatch(format!(
            "configurations of shape ({}, {}) and ({}, {})",
            v.rank(),
            v.n(),
            w.rank(),
            w.n()
        )));
    }
    g_between(&Profile::of(v)?, &Profile::of(w)?)
}

/// Profiles of the canonical cyclic and cocyclic configurations, computed once per `n`.
#[derive(Default)]
pub struct References {
    cache: Mutex<BTreeMap<usize, Arc<(Profile, Profile)>>>,
}

impl References {
    pub fn new() -> Self {
        Self::default()
    }

    fn get(&self, n: usize) -> Result<Arc<(Profile, Profile)>> {
        if let Some(p) = self.cache.lock().expect("reference cache poisoned").get(&n) {
            return Ok(p.clone());
        }
        let pair = Arc::new((
            Profile::of(&cocyclic::<crate::Rational>(n)?)?,
            Profile::of(&cyclic::<crate::Rational>(n)?)?,
        ));
        self.cache
            .lock()
            .expect("reference cache poisoned")
            .insert(n, pair.clone());
        Ok(pair)
    }

    pub fn cocyclic(&self, n: usize) -> Result<Profile> {
        Ok(self.get(n)?.0.clone())
    }

    pub fn cyclic(&self, n: usize) -> Result<Profile> {
        Ok(self.get(n)?.1.clone())
    }

    /// `(g(V), g*(V))` for a rank-3 profile.
    pub fn g_and_gstar(&self, v: &Profile) -> Result<(GMatrix, GMatrix)> {
        require_rank3(v.rank)?;
        let refs = self.get(v.n)?;
        Ok((g_between(&refs.0, v)?, g_between(v, &refs.1)?))
    }
}

fn require_rank3(rank: usize) -> Result<()> {
    if rank != 3 {
        return Err(Error::InvalidParameter(format!(
            "rank 3 required, got {rank}"
        )));
    }
    Ok(())
}

/// `g(V) = g(cocyclic(n) -> V)`.
pub fn g_of<T: Scalar>(v: &VectorConfiguration<T>) -> Result<GMatrix> {
    require_rank3(v.rank())?;
    g_between(
        &Profile::of(&cocyclic::<crate::Rational>(v.n())?)?,
        &Profile::of(v)?,
    )
}

/// `g*(V) = g(V -> cyclic(n))`.
pub fn gstar_of<T: Scalar>(v: &VectorConfiguration<T>) -> Result<GMatrix> {
    require_rank3(v.rank())?;
    g_between(
        &Profile::of(v)?,
        &Profile::of(&cyclic::<crate::Rational>(v.n())?)?,
    )
}

/// `f*_{s,0}`, `f*_{s,1}` and `f*_{s,<=1}` for `s = 4..=n`, assembled from the
/// small part of a rank-3 g*-matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FStarRows {
    pub n: usize,
    /// indexed by `s - 4`
    pub level0: Vec<i64>,
    pub level1: Vec<i64>,
    pub sublevel1: Vec<i64>,
}

impl FStarRows {
    pub fn level0_at(&self, s: usize) -> i64 {
        self.level0[s - 4]
    }

    pub fn level1_at(&self, s: usize) -> i64 {
        self.level1[s - 4]
    }

    pub fn sublevel1_at(&self, s: usize) -> i64 {
        self.sublevel1[s - 4]
    }
}

/// With `c0 = C(n-3-k, s-3) - C(k, s-3)` and `c1 = C(n-3-k, s-4) k - C(k, s-4) (n-3-k)`,
/// `f*_{s,0} = sum c0 g*_{0,k}` and `f*_{s,1} = sum c0 g*_{1,k} + c1 g*_{0,k}` over
/// `k <= floor((n-4)/2)`. `c1` can be negative (at `k = 0, s = 4`), but the
/// coefficients of `f*_{s,<=1}`, namely `c0` on `g*_{1,k}` and `c0 + c1` on
/// `g*_{0,k}`, are not; this is checked.
pub fn expand_fstar_rows(gstar: &GMatrix, n: usize) -> Result<FStarRows> {
    require_rank3(gstar.rank)?;
    if gstar.n != n || n < 4 {
        return Err(Error::InvalidParameter(format!(
            "g*-matrix for n = {} used with n = {n}",
            gstar.n
        )));
    }
    let n_i = n as i64;
    let kmax = (n_i - 4) / 2;
    let mut level0 = Vec::new();
    let mut level1 = Vec::new();
    let mut sublevel1 = Vec::new();
    for s in 4..=n_i {
        let (mut a, mut b) = (0, 0);
        for k in 0..=kmax {
            let c0 = binomial(n_i - 3 - k, s - 3) - binomial(k, s - 3);
            let c1 = binomial(n_i - 3 - k, s - 4) * k - binomial(k, s - 4) * (n_i - 3 - k);
            if c0 < 0 || c0 + c1 < 0 {
                return Err(Error::InternalInconsistency(format!(
                    "negative combination coefficient at s = {s}, k = {k}"
                )));
            }
            a += c0 * gstar.get(0, k);
            b += c0 * gstar.get(1, k) + c1 * gstar.get(0, k);
        }
        level0.push(a);
        level1.push(b);
        sublevel1.push(a + b);
    }
    Ok(FStarRows {
        n,
        level0,
        level1,
        sublevel1,
    })
}

/// `(k+1) n - 3 C(k+2, 2)`.
pub fn g1_bound(n: usize, k: usize) -> i64 {
    (k as i64 + 1) * n as i64 - 3 * binomial(k as i64 + 2, 2)
}

/// Largest `k` of the small g-matrix in rank 3, `floor((n-4)/2)`, or `None` for `n < 4`.
pub fn small_k_max(n: usize) -> Option<usize> {
    (n >= 4).then(|| (n - 4) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub k: usize,
    pub gstar0: i64,
    pub gstar0_bound: i64,
    pub g1: i64,
    pub gstar1: i64,
    pub g1_sum_target: i64,
    pub gstar0_ok: bool,
    pub g1_ok: bool,
    pub sum_ok: bool,
    /// `Some` when the configuration is coneighborly
    pub equality_ok: Option<bool>,
}

impl BoundRow {
    pub fn passed(&self) -> bool {
        self.gstar0_ok && self.g1_ok && self.sum_ok && self.equality_ok != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub coneighborly: bool,
    pub g: GMatrix,
    pub gstar: GMatrix,
    pub rows: Vec<BoundRow>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(BoundRow::passed)
    }
}

/// The rank-3 bounds `g*_{0,k} <= C(k+2,2)`, `g_{1,k} >= 0` and the identity
/// `g_{1,k} + g*_{1,k} = (k+1)n - 3C(k+2,2)`, with their equality cases for coneighborly input.
pub fn check_bounds<T: Scalar>(
    v: &VectorConfiguration<T>,
    refs: &References,
) -> Result<BoundsReport> {
    require_rank3(v.rank())?;
    let n = v.n();
    let profile = Profile::of(v)?;
    let (g, gstar) = refs.g_and_gstar(&profile)?;
    let coneighborly = is_coneighborly(v)?;
    let mut rows = Vec::new();
    if let Some(kmax) = small_k_max(n) {
        for k in 0..=kmax {
            let ki = k as i64;
            let gstar0 = gstar.get(0, ki);
            let gstar0_bound = binomial(ki + 2, 2);
            let g1 = g.get(1, ki);
            let gstar1 = gstar.get(1, ki);
            let target = g1_bound(n, k);
            rows.push(BoundRow {
                k,
                gstar0,
                gstar0_bound,
                g1,
                gstar1,
                g1_sum_target: target,
                gstar0_ok: gstar0 <= gstar0_bound,
                g1_ok: g1 >= 0,
                sum_ok: g1 + gstar1 == target,
                equality_ok: coneighborly
                    .then_some(gstar0 == gstar0_bound && gstar1 == target && g1 == 0),
            });
        }
    }
    Ok(BoundsReport {
        n,
        coneighborly,
        g,
        gstar,
        rows,
    })
}

/// `g_{j,k}(V -> W) = -g_{k,j}(V* -> W*)`, with the right side computed from actual Gale duals.
pub fn check_gale_antisymmetry<T: Scalar>(
    v: &VectorConfiguration<T>,
    w: &VectorConfiguration<T>,
) -> Result<bool> {
    let g = g_pair(v, w)?;
    let gd = g_pair(&gale_dual(v)?, &gale_dual(w)?)?;
    Ok(g == gd.transposed().negated())
}
