//! Points on a cylinder lifted to a rank-4 configuration, the k-arcs of its
//! arrangement of great 2-spheres in `S^3`, and how their count in a moving
//! hemisphere tracks the g-matrix of the rank-3 projections.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{is_neighborly, VectorConfiguration};
use crate::error::{Error, Result};
use crate::feasibility::strict_feasible_point;
use crate::gmatrix::{g1_bound, small_k_max, Profile, References};
use crate::linalg::{dot, generalized_cross, null_space};
use crate::poly::binomial;
use crate::scalar::{Scalar, Sign};

/// Points `p_i = ((1-s_i^2)/(1+s_i^2), 2 s_i/(1+s_i^2), z_i)` on the unit
/// cylinder around the z-axis, and the point `(0, 0, axis_point)` on the axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderInput<T> {
    pub circle_params: Vec<T>,
    pub heights: Vec<T>,
    pub axis_point: T,
}

impl<T: Scalar> CylinderInput<T> {
    pub fn new(circle_params: Vec<T>, heights: Vec<T>, axis_point: T) -> Result<Self> {
        if circle_params.len() != heights.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} circle parameters and {} heights",
                circle_params.len(),
                heights.len()
            )));
        }
        if let Some((i, j)) = (0..circle_params.len())
            .tuple_combinations()
            .find(|&(i, j)| circle_params[i] == circle_params[j])
        {
            return Err(Error::InvalidParameter(format!(
                "circle parameters {} and {} coincide",
                i + 1,
                j + 1
            )));
        }
        Ok(CylinderInput {
            circle_params,
            heights,
            axis_point,
        })
    }

    pub fn n(&self) -> usize {
        self.heights.len()
    }

    pub fn point(&self, i: usize) -> [T; 3] {
        let s = &self.circle_params[i];
        let d = T::one() + s.clone() * s.clone();
        [
            (T::one() - s.clone() * s.clone()) / d.clone(),
            T::from_int(2) * s.clone() / d,
            self.heights[i].clone(),
        ]
    }

    /// The vectors `p_i - p_0` in `R^3`.
    pub fn centered(&self) -> Result<VectorConfiguration<T>> {
        let cols = (0..self.n())
            .map(|i| {
                let [x, y, z] = self.point(i);
                vec![x, y, z - self.axis_point.clone()]
            })
            .collect();
        VectorConfiguration::new(3, cols)
    }
}

/// Attempts at drawing a random input before giving up.
pub const CYLINDER_ATTEMPTS: usize = 200;

/// Random input with `s_i` in `[-3, 3]` (quarters), `z_i` in `[-3, 3]` (thirds)
/// and the axis point in `[-1, 1]` (sevenths), such that the lift and the
/// projection along the axis point are in general position.
pub fn random_cylinder(n: usize, seed: u64) -> Result<CylinderInput<crate::Rational>> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("need n >= 4, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CYLINDER_ATTEMPTS {
        let mut s: Vec<i64> = Vec::new();
        while s.len() < n {
            let x = rng.random_range(-12..=12);
            if !s.contains(&x) {
                s.push(x);
            }
        }
        let input = CylinderInput::new(
            s.iter().map(|&x| Scalar::from_fraction(x, 4)).collect(),
            (0..n)
                .map(|_| Scalar::from_fraction(rng.random_range(-9..=9), 3))
                .collect(),
            Scalar::from_fraction(rng.random_range(-7..=7), 7),
        )?;
        if let Ok(pair) = lift(&input) {
            if pair.projection(&pair.u0).is_ok() {
                return Ok(input);
            }
        }
    }
    Err(Error::GenerationFailure {
        attempts: CYLINDER_ATTEMPTS,
        reason: "no generic cylinder input".into(),
    })
}

/// The lift `w_i = (1, p_i)`, `u_0 = (1, p_0)` and `u_inf = (0, 0, 0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPair<T> {
    pub u: VectorConfiguration<T>,
    pub u0: Vec<T>,
    pub u_inf: Vec<T>,
}

pub fn lift<T: Scalar>(input: &CylinderInput<T>) -> Result<LiftedPair<T>> {
    let cols = (0..input.n())
        .map(|i| {
            let [x, y, z] = input.point(i);
            vec![T::one(), x, y, z]
        })
        .collect();
    let u = VectorConfiguration::new(4, cols)?;
    Ok(LiftedPair {
        u,
        u0: axis_vector(&input.axis_point),
        u_inf: infinity(Sign::Positive),
    })
}

/// `(1, 0, 0, a)`.
pub fn axis_vector<T: Scalar>(a: &T) -> Vec<T> {
    vec![T::one(), T::zero(), T::zero(), a.clone()]
}

/// `(0, 0, 0, +-1)`.
pub fn infinity<T: Scalar>(side: Sign) -> Vec<T> {
    vec![
        T::zero(),
        T::zero(),
        T::zero(),
        T::from_int(side.to_i8() as i64),
    ]
}

impl<T: Scalar> LiftedPair<T> {
    pub fn n(&self) -> usize {
        self.u.n()
    }

    pub fn with_u0(&self, u0: Vec<T>) -> Self {
        LiftedPair { u0, ..self.clone() }
    }

    /// `U/x`: each column paired with an orthogonal (unnormalized) basis of `x^perp`.
    pub fn projection(&self, x: &[T]) -> Result<VectorConfiguration<T>> {
        let basis = orthogonal_complement(x);
        let cols = self
            .u
            .columns()
            .iter()
            .map(|w| basis.iter().map(|b| dot(w, b)).collect())
            .collect();
        VectorConfiguration::new(3, cols)
    }
}

/// Gram-Schmidt without normalization on the standard basis, after `x`.
fn orthogonal_complement<T: Scalar>(x: &[T]) -> Vec<Vec<T>> {
    let d = x.len();
    let mut done: Vec<Vec<T>> = vec![x.to_vec()];
    for e in 0..d {
        let mut v: Vec<T> = (0..d)
            .map(|i| if i == e { T::one() } else { T::zero() })
            .collect();
        for b in &done {
            let c = dot(&v, b) / dot(b, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = vi.clone() - c.clone() * bi.clone();
            }
        }
        if v.iter().any(|c| !c.is_zero()) {
            done.push(v);
        }
        if done.len() == d {
            break;
        }
    }
    done.remove(0);
    done
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialPairReport {
    pub neighborly: bool,
    pub slice_neighborly: bool,
    pub extremal_with_u0: bool,
}

impl SpecialPairReport {
    pub fn passed(&self) -> bool {
        self.neighborly && self.slice_neighborly && self.extremal_with_u0
    }
}

/// `U` neighborly, `U/u_inf` neighborly, and every `u_i` extremal in `U + {u_0}`.
pub fn verify_special_pair<T: Scalar>(pair: &LiftedPair<T>) -> Result<SpecialPairReport> {
    let neighborly = is_neighborly(&pair.u)?;
    let slice_neighborly = is_neighborly(&pair.projection(&pair.u_inf)?)?;
    let extremal_with_u0 = (0..pair.n()).all(|i| {
        let strict: Vec<Vec<T>> = (0..pair.n())
            .filter(|&s| s != i)
            .map(|s| pair.u.column(s).to_vec())
            .chain([pair.u0.clone()])
            .collect();
        strict_feasible_point(4, &[pair.u.column(i).to_vec()], &strict).is_some()
    });
    Ok(SpecialPairReport {
        neighborly,
        slice_neighborly,
        extremal_with_u0,
    })
}

/// Number of `s` with `<u_s, x> < 0`.
fn level_of<T: Scalar>(u: &VectorConfiguration<T>, x: &[T]) -> usize {
    u.columns()
        .iter()
        .filter(|c| dot(c, x).sign() == Sign::Negative)
        .count()
}

/// A vertex of the arrangement: one of the two unit directions orthogonal to three columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementVertex<T> {
    pub triple: [usize; 3],
    pub point: Vec<T>,
    pub level: usize,
}

pub fn arrangement_vertices<T: Scalar>(u: &VectorConfiguration<T>) -> Vec<ArrangementVertex<T>> {
    let mut out = Vec::new();
    for t in (0..u.n()).combinations(3) {
        let rows: Vec<Vec<T>> = t.iter().map(|&i| u.column(i).to_vec()).collect();
        let p = generalized_cross(&rows);
        let q: Vec<T> = p.iter().map(|x| -x.clone()).collect();
        for point in [p, q] {
            let level = level_of(u, &point);
            out.push(ArrangementVertex {
                triple: [t[0], t[1], t[2]],
                point,
                level,
            });
        }
    }
    out
}

/// Number of vertices at each level `0..=n-3`.
pub fn vertex_level_census<T: Scalar>(u: &VectorConfiguration<T>) -> Vec<i64> {
    let mut census = vec![0; u.n() - 2];
    for v in arrangement_vertices(u) {
        census[v.level] += 1;
    }
    census
}

/// `2(k+1)(n-k-2)`, the vertex count at level `k` of a neighborly rank-4 configuration.
pub fn neighborly_vertex_count(n: usize, k: usize) -> i64 {
    2 * (k as i64 + 1) * (n as i64 - k as i64 - 2)
}

/// `3(k+1)(n-k-2)`.
pub fn expected_arc_count(n: usize, k: usize) -> i64 {
    3 * (k as i64 + 1) * (n as i64 - k as i64 - 2)
}

/// Lower half-plane first, then counterclockwise.
fn angle_cmp<T: Scalar>(a: &[T; 2], b: &[T; 2]) -> std::cmp::Ordering {
    let half = |p: &[T; 2]| !(p[1].is_positive() || (p[1].is_zero() && p[0].is_positive()));
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
        T::zero().cmp(&cross)
    })
}

fn cross2<T: Scalar>(a: &[T; 2], b: &[T; 2]) -> T {
    a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleVertex<T> {
    /// the third sphere through the vertex
    pub other: usize,
    pub coords: [T; 2],
    pub point: Vec<T>,
    pub level: usize,
}

/// The circle `H_i cap H_j` with its vertices in angular order; edge `e` joins
/// vertex `e` to vertex `e + 1` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle<T> {
    pub pair: (usize, usize),
    pub basis: [Vec<T>; 2],
    pub vertices: Vec<CircleVertex<T>>,
    pub edge_levels: Vec<usize>,
}

impl<T: Scalar> Circle<T> {
    fn new(u: &VectorConfiguration<T>, i: usize, j: usize) -> Self {
        let mut basis = null_space(&[u.column(i).to_vec(), u.column(j).to_vec()], 4);
        let b2 = basis.pop().expect("two-dimensional");
        let b1 = basis.pop().expect("two-dimensional");
        let embed = |c: &[T; 2]| -> Vec<T> {
            b1.iter()
                .zip(&b2)
                .map(|(x, y)| c[0].clone() * x.clone() + c[1].clone() * y.clone())
                .collect()
        };
        let mut vertices = Vec::new();
        for m in (0..u.n()).filter(|&m| m != i && m != j) {
            let w = u.column(m);
            let c = [dot(w, &b2), -dot(w, &b1)];
            for coords in [c.clone(), [-c[0].clone(), -c[1].clone()]] {
                let point = embed(&coords);
                let level = level_of(u, &point);
                vertices.push(CircleVertex {
                    other: m,
                    coords,
                    point,
                    level,
                });
            }
        }
        vertices.sort_by(|a, b| angle_cmp(&a.coords, &b.coords));
        let len = vertices.len();
        let edge_levels = (0..len)
            .map(|e| {
                let (a, b) = (&vertices[e].coords, &vertices[(e + 1) % len].coords);
                level_of(
                    u,
                    &embed(&[a[0].clone() + b[0].clone(), a[1].clone() + b[1].clone()]),
                )
            })
            .collect();
        Circle {
            pair: (i, j),
            basis: [b1, b2],
            vertices,
            edge_levels,
        }
    }

    /// Whether the direction `x` (in circle coordinates) lies strictly inside edge `e`.
    fn edge_contains(&self, e: usize, x: &[T; 2]) -> bool {
        let a = &self.vertices[e].coords;
        let b = &self.vertices[(e + 1) % self.vertices.len()].coords;
        cross2(a, x).is_positive() && cross2(x, b).is_positive()
    }
}

/// A maximal run of edges at sublevel `<= k` on one circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KArc {
    pub pair: (usize, usize),
    /// index of the first edge in the circle's order
    pub first_edge: usize,
    pub edge_count: usize,
}

impl KArc {
    /// Vertex indices in order, endpoints included.
    pub fn vertex_indices(&self, circle_len: usize) -> Vec<usize> {
        (0..=self.edge_count)
            .map(|d| (self.first_edge + d) % circle_len)
            .collect()
    }
}

/// The arrangement of great 2-spheres dual to a rank-4 configuration, stored by circles.
#[derive(Clone, Debug)]
pub struct Arrangement<T> {
    pub n: usize,
    pub circles: Vec<Circle<T>>,
}

impl<T: Scalar> Arrangement<T> {
    pub fn new(u: &VectorConfiguration<T>) -> Result<Self> {
        if u.rank() != 4 {
            return Err(Error::InvalidParameter(format!(
                "rank 4 required, got {}",
                u.rank()
            )));
        }
        u.require_general_position()?;
        let circles = (0..u.n())
            .tuple_combinations()
            .map(|(i, j)| Circle::new(u, i, j))
            .collect();
        Ok(Arrangement { n: u.n(), circles })
    }

    fn circle(&self, pair: (usize, usize)) -> &Circle<T> {
        let pos = self
            .circles
            .iter()
            .position(|c| c.pair == pair)
            .expect("pair of labels");
        &self.circles[pos]
    }

    pub fn k_arcs(&self, k: usize) -> Result<Vec<KArc>> {
        let mut arcs = Vec::new();
        for c in &self.circles {
            let len = c.edge_levels.len();
            let low: Vec<bool> = c.edge_levels.iter().map(|&l| l <= k).collect();
            if low.iter().all(|&x| x) {
                return Err(Error::InternalInconsistency(format!(
                    "sublevel {k} covers the circle of {:?}",
                    c.pair
                )));
            }
            for e in 0..len {
                if low[e] && !low[(e + len - 1) % len] {
                    let edge_count = (0..len).take_while(|d| low[(e + d) % len]).count();
                    arcs.push(KArc {
                        pair: c.pair,
                        first_edge: e,
                        edge_count,
                    });
                }
            }
        }
        Ok(arcs)
    }

    /// Whether a k-arc lies in the open hemisphere `<x0, .> < 0`.
    pub fn arc_in_negative_hemisphere(&self, arc: &KArc, x0: &[T]) -> bool {
        let c = self.circle(arc.pair);
        let len = c.vertices.len();
        if !arc
            .vertex_indices(len)
            .iter()
            .all(|&v| dot(x0, &c.vertices[v].point).sign() == Sign::Negative)
        {
            return false;
        }
        let h = [dot(x0, &c.basis[1]), -dot(x0, &c.basis[0])];
        let minus_h = [-h[0].clone(), -h[1].clone()];
        (0..arc.edge_count).all(|d| {
            let e = (arc.first_edge + d) % len;
            !c.edge_contains(e, &h) && !c.edge_contains(e, &minus_h)
        })
    }

    /// k-arcs contained in `<x0, .> < 0`.
    pub fn lambda(&self, k: usize, x0: &[T]) -> Result<i64> {
        Ok(self
            .k_arcs(k)?
            .iter()
            .filter(|a| self.arc_in_negative_hemisphere(a, x0))
            .count() as i64)
    }

    /// The three edges at level `k` incident to a vertex `v` at level `k`, as
    /// (circle, edge index, index of the other endpoint).
    fn level_edges_at(&self, v: &ArrangementVertex<T>) -> Vec<(&Circle<T>, usize)> {
        let [a, b, c] = v.triple;
        let mut out = Vec::new();
        for (pair, other) in [((a, b), c), ((a, c), b), ((b, c), a)] {
            let circle = self.circle(pair);
            let len = circle.vertices.len();
            let idx = circle
                .vertices
                .iter()
                .position(|w| w.other == other && dot(&w.point, &v.point).is_positive())
                .expect("vertex lies on its circles");
            for (edge, far) in [
                (idx, (idx + 1) % len),
                ((idx + len - 1) % len, (idx + len - 1) % len),
            ] {
                if circle.edge_levels[edge] == v.level {
                    out.push((circle, far));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KArcRow {
    pub k: usize,
    pub arcs: i64,
    pub expected_arcs: i64,
    pub lambda: i64,
    pub g1: i64,
    pub gstar1: i64,
    pub prop_ok: bool,
}

/// `g_{1,k}(U/u_0) = lambda_k(U, u_0)` and `g*_{1,k}(U/u_0) = (k+1)n - 3C(k+2,2) - lambda_k`
/// for every small `k`.
pub fn karc_rows<T: Scalar>(
    arrangement: &Arrangement<T>,
    pair: &LiftedPair<T>,
    refs: &References,
) -> Result<Vec<KArcRow>> {
    let n = pair.n();
    let projected = pair.projection(&pair.u0)?;
    let (g, gstar) = refs.g_and_gstar(&Profile::of(&projected)?)?;
    let mut rows = Vec::new();
    for k in 0..=small_k_max(n).unwrap_or(0) {
        let arcs = arrangement.k_arcs(k)?.len() as i64;
        let lambda = arrangement.lambda(k, &pair.u0)?;
        let (g1, gstar1) = (g.get(1, k as i64), gstar.get(1, k as i64));
        rows.push(KArcRow {
            k,
            arcs,
            expected_arcs: expected_arc_count(n, k),
            lambda,
            g1,
            gstar1,
            prop_ok: g1 == lambda && gstar1 == g1_bound(n, k) - lambda,
        });
    }
    Ok(rows)
}

pub fn check_prop_lambda_g<T: Scalar>(
    arrangement: &Arrangement<T>,
    pair: &LiftedPair<T>,
    k: usize,
    refs: &References,
) -> Result<bool> {
    Ok(karc_rows(arrangement, pair, refs)?
        .get(k)
        .is_some_and(|r| r.prop_ok))
}

/// Which side of `H_0` a vertex ends up on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransitionSide {
    /// the vertex moves into the positive hemisphere
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition<T> {
    /// axis positions of the samples before and after
    pub before: T,
    pub after: T,
    pub at: T,
    pub triple: [usize; 3],
    /// level of the lower of the two antipodal vertices
    pub level: usize,
    /// `(j, side)` for vertices at a small level
    pub kind: Option<(usize, TransitionSide)>,
    pub delta_lambda: Vec<i64>,
    pub delta_g0: Vec<i64>,
    pub delta_g1: Vec<i64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample<T> {
    pub axis: T,
    pub rows: Vec<KArcRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionReport<T> {
    pub n: usize,
    pub samples: Vec<Sample<T>>,
    pub transitions: Vec<Transition<T>>,
    pub lambda_plus_inf: Vec<i64>,
    pub lambda_minus_inf: Vec<i64>,
    /// `Lambda_k - lambda_k(+inf) - lambda_k(-inf) = (k+1) n` for each k
    pub crossing_count_ok: bool,
    /// `lambda_k(+inf)` at the projection along the axis direction equals the sample beyond the last event
    pub ends_ok: bool,
    pub census_ok: bool,
}

impl<T> TransitionReport<T> {
    pub fn passed(&self) -> bool {
        self.crossing_count_ok
            && self.ends_ok
            && self.census_ok
            && self.transitions.iter().all(|t| t.ok)
            && self.samples.iter().all(|s| {
                s.rows
                    .iter()
                    .all(|r| r.prop_ok && r.arcs == r.expected_arcs)
            })
    }

    /// Whether `lambda_k(+-inf) = (k+1)n - 3C(k+2,2)` or `(k+1)n + 3C(k+2,2)` for all k.
    pub fn infinity_sign(&self) -> Option<Sign> {
        let matches = |sign: i64| {
            self.lambda_plus_inf
                .iter()
                .chain(&self.lambda_minus_inf)
                .enumerate()
                .all(|(i, &l)| {
                    let k = i % self.lambda_plus_inf.len();
                    l == (k as i64 + 1) * self.n as i64 + sign * 3 * binomial(k as i64 + 2, 2)
                })
        };
        match (matches(-1), matches(1)) {
            (true, false) => Some(Sign::Negative),
            (false, true) => Some(Sign::Positive),
            _ => None,
        }
    }
}

/// Moves the axis point over the whole axis and checks every transition.
pub fn transition_scan<T: Scalar>(
    pair: &LiftedPair<T>,
    refs: &References,
) -> Result<TransitionReport<T>> {
    let n = pair.n();
    let kmax = small_k_max(n).ok_or_else(|| Error::InvalidParameter("need n >= 4".into()))?;
    let arrangement = Arrangement::new(&pair.u)?;
    let census = vertex_level_census(&pair.u);
    let census_ok = census
        .iter()
        .enumerate()
        .all(|(k, &c)| c == neighborly_vertex_count(n, k));

    // H_0 passes over the vertex pair +-w when w_0 + a w_3 = 0
    let mut events: Vec<(T, ArrangementVertex<T>)> = Vec::new();
    for v in arrangement_vertices(&pair.u) {
        if v.point[3].is_zero() {
            return Err(Error::NotGeneralPosition {
                subset: v.triple.to_vec(),
            });
        }
        let a = -v.point[0].clone() / v.point[3].clone();
        let lower = v.level <= n - 3 - v.level;
        if lower && (v.level < n - 3 - v.level || v.point[3].is_positive()) {
            events.push((a, v));
        }
    }
    events.sort_by(|x, y| x.0.cmp(&y.0));
    if let Some(w) = events.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::PathDegenerate(format!(
            "vertices of {:?} and {:?} are crossed simultaneously",
            w[0].1.triple, w[1].1.triple
        )));
    }
    let two = T::from_int(2);
    let mut positions = Vec::new();
    let first = events.first().map_or(T::zero(), |e| e.0.clone());
    let last = events.last().map_or(T::zero(), |e| e.0.clone());
    positions.push(first - T::one());
    for w in events.windows(2) {
        positions.push((w[0].0.clone() + w[1].0.clone()) / two.clone());
    }
    positions.push(last + T::one());

    let mut samples = Vec::new();
    let mut gs = Vec::new();
    for a in &positions {
        let at = pair.with_u0(axis_vector(a));
        let projected = at.projection(&at.u0)?;
        let (g, _) = refs.g_and_gstar(&Profile::of(&projected)?)?;
        samples.push(Sample {
            axis: a.clone(),
            rows: karc_rows(&arrangement, &at, refs)?,
        });
        gs.push(g);
    }

    let mut transitions = Vec::new();
    for (e, (a, v)) in events.iter().enumerate() {
        let before = &samples[e];
        let after = &samples[e + 1];
        let delta = |f: &dyn Fn(&KArcRow) -> i64| -> Vec<i64> {
            before
                .rows
                .iter()
                .zip(&after.rows)
                .map(|(x, y)| f(y) - f(x))
                .collect()
        };
        let delta_lambda = delta(&|r| r.lambda);
        let delta_g1 = delta(&|r| r.g1);
        let delta_g0: Vec<i64> = (0..=kmax as i64)
            .map(|k| gs[e + 1].get(0, k) - gs[e].get(0, k))
            .collect();
        let mut kind = None;
        let mut ok = delta_lambda == delta_g1;
        if v.level <= kmax {
            // pick the moment when v is in the negative hemisphere
            let before_u0 = axis_vector(&positions[e]);
            let after_u0 = axis_vector(&positions[e + 1]);
            let neg_after = dot(&after_u0, &v.point).sign() == Sign::Negative;
            let (moment, side) = if neg_after {
                (after_u0, TransitionSide::Minus)
            } else {
                (before_u0, TransitionSide::Plus)
            };
            let edges = arrangement.level_edges_at(v);
            ok &= edges.len() == 3;
            let j = edges
                .iter()
                .filter(|(c, far)| dot(&moment, &c.vertices[*far].point).sign() == Sign::Negative)
                .count();
            kind = Some((j, side));
            let step = if side == TransitionSide::Plus { -1 } else { 1 };
            let unit = |value: i64| -> Vec<i64> {
                (0..=kmax)
                    .map(|l| if l == v.level { value } else { 0 })
                    .collect()
            };
            ok &= match j {
                0 => delta_g0 == unit(step) && delta_lambda == unit(0) && delta_g1 == unit(0),
                1 => delta_g0 == unit(0) && delta_lambda == unit(step) && delta_g1 == unit(step),
                _ => false,
            };
        } else {
            ok &= delta_lambda
                .iter()
                .chain(&delta_g0)
                .chain(&delta_g1)
                .all(|&d| d == 0);
        }
        transitions.push(Transition {
            before: positions[e].clone(),
            after: positions[e + 1].clone(),
            at: a.clone(),
            triple: v.triple,
            level: v.level,
            kind,
            delta_lambda,
            delta_g0,
            delta_g1,
            ok,
        });
    }

    let lambdas =
        |x: &[T]| -> Result<Vec<i64>> { (0..=kmax).map(|k| arrangement.lambda(k, x)).collect() };
    let lambda_plus_inf = lambdas(&infinity(Sign::Positive))?;
    let lambda_minus_inf = lambdas(&infinity(Sign::Negative))?;
    let crossing_count_ok = (0..=kmax).all(|k| {
        expected_arc_count(n, k) - lambda_plus_inf[k] - lambda_minus_inf[k]
            == (k as i64 + 1) * n as i64
    });
    let last_lambda: Vec<i64> = samples
        .last()
        .expect("samples")
        .rows
        .iter()
        .map(|r| r.lambda)
        .collect();
    let first_lambda: Vec<i64> = samples[0].rows.iter().map(|r| r.lambda).collect();
    let ends_ok = last_lambda == lambda_plus_inf && first_lambda == lambda_minus_inf;
    Ok(TransitionReport {
        n,
        samples,
        transitions,
        lambda_plus_inf,
        lambda_minus_inf,
        crossing_count_ok,
        ends_ok,
        census_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::is_coneighborly;
    use crate::covectors::f_matrix;
    use crate::Rational;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from_fraction(a, b)
    }

    fn example() -> CylinderInput<Rational> {
        CylinderInput::new(
            (0..5).map(|s| q(s, 1)).collect(),
            [1, -1, 2, -2, 3].iter().map(|&z| q(z, 1)).collect(),
            q(0, 1),
        )
        .unwrap()
    }

    #[test]
    fn example_lift_is_generic_and_special() {
        let pair = lift(&example()).unwrap();
        assert!(pair.u.is_general_position());
        for i in 0..5 {
            assert_eq!(dot(&pair.u_inf, pair.u.column(i)), example().heights[i]);
        }
        assert!(verify_special_pair(&pair).unwrap().passed());
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(
            CylinderInput::new(vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)], q(0, 1)).is_err()
        );
        let flat = CylinderInput::new((0..5).map(|s| q(s, 1)).collect(), vec![q(2, 1); 5], q(0, 1))
            .unwrap();
        assert!(matches!(lift(&flat), Err(Error::NotGeneralPosition { .. })));
    }

    #[test]
    fn projection_has_type_of_centered_points() {
        for seed in 0..4 {
            let input = random_cylinder(6, seed).unwrap();
            let pair = lift(&input).unwrap();
            let proj = pair.projection(&pair.u0).unwrap();
            assert_eq!(
                f_matrix(&proj).unwrap(),
                f_matrix(&input.centered().unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn census_and_arc_counts() {
        for n in 5..=7 {
            let pair = lift(&random_cylinder(n, n as u64).unwrap()).unwrap();
            let census = vertex_level_census(&pair.u);
            assert_eq!(census.iter().sum::<i64>(), 2 * binomial(n as i64, 3));
            for (k, &c) in census.iter().enumerate() {
                assert_eq!(c, neighborly_vertex_count(n, k));
            }
            let arr = Arrangement::new(&pair.u).unwrap();
            for k in 0..=small_k_max(n).unwrap() {
                assert_eq!(
                    arr.k_arcs(k).unwrap().len() as i64,
                    expected_arc_count(n, k)
                );
            }
        }
        assert_eq!(neighborly_vertex_count(5, 0), 6);
        assert_eq!(neighborly_vertex_count(6, 1), 12);
        assert_eq!(expected_arc_count(5, 0), 9);
        assert_eq!(expected_arc_count(6, 1), 18);
    }

    #[test]
    fn level_k_vertices_end_three_arcs() {
        let pair = lift(&random_cylinder(7, 3).unwrap()).unwrap();
        let arr = Arrangement::new(&pair.u).unwrap();
        for k in 0..=1 {
            let arcs = arr.k_arcs(k).unwrap();
            for v in arrangement_vertices(&pair.u)
                .iter()
                .filter(|v| v.level == k)
            {
                let ends = arcs
                    .iter()
                    .filter(|a| {
                        let c = arr.circle(a.pair);
                        let idx = a.vertex_indices(c.vertices.len());
                        [idx[0], *idx.last().unwrap()].iter().any(|&i| {
                            let w = &c.vertices[i];
                            v.triple.contains(&a.pair.0)
                                && v.triple.contains(&a.pair.1)
                                && v.triple.contains(&w.other)
                                && dot(&w.point, &v.point).sign() == Sign::Positive
                        })
                    })
                    .count();
                assert_eq!(ends, 3);
            }
        }
    }

    #[test]
    fn g1_equals_lambda_at_axis_point() {
        let refs = References::new();
        for seed in 0..4 {
            let pair = lift(&random_cylinder(6, 10 + seed).unwrap()).unwrap();
            let arr = Arrangement::new(&pair.u).unwrap();
            let rows = karc_rows(&arr, &pair, &refs).unwrap();
            assert!(
                rows.iter().all(|r| r.prop_ok && r.lambda <= r.arcs),
                "{rows:?}"
            );
        }
    }

    #[test]
    fn coneighborly_projection_has_no_arcs_inside() {
        let refs = References::new();
        let mut found = 0;
        for (n, seed) in [5usize, 7].into_iter().cartesian_product(0..12) {
            let input = random_cylinder(n, seed).unwrap();
            if !is_coneighborly(&input.centered().unwrap()).unwrap() {
                continue;
            }
            found += 1;
            let pair = lift(&input).unwrap();
            let arr = Arrangement::new(&pair.u).unwrap();
            for r in karc_rows(&arr, &pair, &refs).unwrap() {
                assert_eq!(r.lambda, 0);
                assert_eq!(r.gstar1, g1_bound(n, r.k));
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn transition_scan_small() {
        let refs = References::new();
        for seed in 0..3 {
            let pair = lift(&random_cylinder(6, 20 + seed).unwrap()).unwrap();
            let report = transition_scan(&pair, &refs).unwrap();
            assert!(
                report.passed(),
                "{:?}",
                report
                    .transitions
                    .iter()
                    .filter(|t| !t.ok)
                    .collect::<Vec<_>>()
            );
            assert!(report
                .transitions
                .iter()
                .all(|t| t.kind.is_none_or(|(j, _)| j <= 1)));
            assert_eq!(report.infinity_sign(), Some(Sign::Negative));
        }
    }
}
