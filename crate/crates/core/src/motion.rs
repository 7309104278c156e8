//! Straight-line motion between two rank-3 configurations: exact detection
//! and classification of mutations, and the g-matrix they accumulate.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::VectorConfiguration;
use crate::covectors::{covector_set, fstar_matrix, FMatrix, Validation};
use crate::error::{Error, Result};
use crate::gmatrix::{g_pair, GMatrix};
use crate::poly::Poly2;
use crate::roots::{isolate_roots, Interval, UniPoly};
use crate::scalar::{Scalar, Sign};
use crate::sign::SignVector;

/// `v_i(t) = (1 - t) v_i + t w_i` for `t` in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct MotionPath<T> {
    start: VectorConfiguration<T>,
    end: VectorConfiguration<T>,
}

type PolyVec<T> = [UniPoly<T>; 3];

impl<T: Scalar> MotionPath<T> {
    pub fn new(start: VectorConfiguration<T>, end: VectorConfiguration<T>) -> Result<Self> {
        if start.rank() != 3 || end.rank() != 3 {
            return Err(Error::InvalidParameter(
                "motion needs rank-3 configurations".into(),
            ));
        }
        if start.n() != end.n() {
            return Err(Error::DimensionMismatch(format!(
                "n = {} and n = {}",
                start.n(),
                end.n()
            )));
        }
        start.require_general_position()?;
        end.require_general_position()?;
        Ok(MotionPath { start, end })
    }

    pub fn start(&self) -> &VectorConfiguration<T> {
        &self.start
    }

    pub fn end(&self) -> &VectorConfiguration<T> {
        &self.end
    }

    pub fn n(&self) -> usize {
        self.start.n()
    }

    pub fn reversed(&self) -> Self {
        MotionPath {
            start: self.end.clone(),
            end: self.start.clone(),
        }
    }

    /// Column `i` as a vector of linear polynomials in `t`.
    fn column_poly(&self, i: usize) -> PolyVec<T> {
        let (a, b) = (self.start.column(i), self.end.column(i));
        std::array::from_fn(|r| UniPoly::new(vec![a[r].clone(), b[r].clone() - a[r].clone()]))
    }

    /// The configuration at time `t`, checked for general position.
    pub fn at(&self, t: &T) -> Result<VectorConfiguration<T>> {
        let one_minus = T::one() - t.clone();
        let cols = (0..self.n())
            .map(|i| {
                self.start
                    .column(i)
                    .iter()
                    .zip(self.end.column(i))
                    .map(|(a, b)| one_minus.clone() * a.clone() + t.clone() * b.clone())
                    .collect()
            })
            .collect();
        VectorConfiguration::new(3, cols)
    }

    /// `det[v_a(t) | v_b(t) | v_c(t)]`, a polynomial of degree at most 3.
    pub fn triple_polynomial(&self, triple: [usize; 3]) -> UniPoly<T> {
        let p = triple.map(|i| self.column_poly(i));
        det_poly(&p[0], &p[1], &p[2])
    }
}

fn cross_poly<T: Scalar>(a: &PolyVec<T>, b: &PolyVec<T>) -> PolyVec<T> {
    std::array::from_fn(|r| {
        let (i, j) = ((r + 1) % 3, (r + 2) % 3);
        a[i].mul(&b[j]).sub(&a[j].mul(&b[i]))
    })
}

fn dot_poly<T: Scalar>(a: &PolyVec<T>, b: &PolyVec<T>) -> UniPoly<T> {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

fn det_poly<T: Scalar>(a: &PolyVec<T>, b: &PolyVec<T>, c: &PolyVec<T>) -> UniPoly<T> {
    dot_poly(a, &cross_poly(b, c))
}

/// Mutation type `(j, k)`: negatives inside and outside the flipping triple in
/// the signature of the appearing triangle. `(j, k)` and `(3-j, n-3-k)` name the same type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationType {
    pub j: usize,
    pub k: usize,
}

impl MutationType {
    /// The representative with `j <= 1`.
    pub fn canonical(self, n: usize) -> Self {
        if self.j >= 2 {
            MutationType {
                j: 3 - self.j,
                k: n - 3 - self.k,
            }
        } else {
            self
        }
    }

    /// The g-matrix of a single mutation of this type.
    pub fn g_contribution(self, n: usize) -> GMatrix {
        let mut g = GMatrix::zero(3, n);
        let (i, l) = (self.j, self.k);
        if 2 * l != n - 3 {
            g.values[i][l] += 1;
            g.values[3 - i][n - 3 - l] += 1;
            g.values[3 - i][l] -= 1;
            g.values[i][n - 3 - l] -= 1;
        }
        g
    }

    /// `(y^k - y^{n-3-k}) [(x+1)^{3-j} (x+y)^j - (x+1)^j (x+y)^{3-j}]`.
    pub fn f_difference(self, n: usize) -> Poly2 {
        let (j, k) = (self.j as u32, self.k as u32);
        let x1 = &Poly2::x() + &Poly2::one();
        let xy = &Poly2::x() + &Poly2::y();
        let ys = &Poly2::monomial(1, 0, k) - &Poly2::monomial(1, 0, n as u32 - 3 - k);
        let bracket = &(&x1.pow(3 - j) * &xy.pow(j)) - &(&x1.pow(j) * &xy.pow(3 - j));
        &ys * &bracket
    }

    /// `(y^j - y^{3-j}) [(x+1)^k (x+y)^{n-3-k} - (x+1)^{n-3-k} (x+y)^k]`.
    pub fn fstar_difference(self, n: usize) -> Poly2 {
        let (j, k, c) = (self.j as u32, self.k as u32, n as u32 - 3);
        let x1 = &Poly2::x() + &Poly2::one();
        let xy = &Poly2::x() + &Poly2::y();
        let ys = &Poly2::monomial(1, 0, j) - &Poly2::monomial(1, 0, 3 - j);
        let bracket = &(&x1.pow(k) * &xy.pow(c - k)) - &(&x1.pow(c - k) * &xy.pow(k));
        &ys * &bracket
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationEvent<T> {
    /// sorted labels of the flipping triple
    pub triple: [usize; 3],
    /// contains the event time and no other root of any triple determinant
    pub interval: Interval<T>,
    /// sign of the triple determinant just after the event
    pub direction: Sign,
    pub kind: Option<MutationType>,
    /// sign vector of the interior of the appearing triangle
    pub signature: Option<SignVector>,
}

struct RootRecord<T> {
    triple: [usize; 3],
    factor: UniPoly<T>,
    interval: Interval<T>,
    changes_sign: bool,
}

/// Bound on bisection steps spent separating or refining isolating intervals.
pub const REFINEMENT_BUDGET: usize = 400;

/// All mutation events in `(0, 1)`, ordered by time, with pairwise disjoint intervals.
pub fn detect_events<T: Scalar>(path: &MotionPath<T>) -> Result<Vec<MutationEvent<T>>> {
    let (zero, one) = (T::zero(), T::one());
    let mut roots: Vec<RootRecord<T>> = Vec::new();
    for t in (0..path.n()).combinations(3) {
        let triple = [t[0], t[1], t[2]];
        let p = path.triple_polynomial(triple);
        for (i, factor) in p.square_free_decomposition().into_iter().enumerate() {
            let multiplicity = i + 1;
            for interval in isolate_roots(&factor, &zero, &one) {
                if multiplicity > 1 && multiplicity % 2 == 1 {
                    return Err(Error::PathDegenerate(format!(
                        "triple {triple:?} flips at a root of multiplicity {multiplicity}"
                    )));
                }
                roots.push(RootRecord {
                    triple,
                    factor: factor.clone(),
                    interval,
                    changes_sign: multiplicity % 2 == 1,
                });
            }
        }
    }
    separate(&mut roots)?;
    Ok(roots
        .into_iter()
        .filter(|r| r.changes_sign)
        .map(|r| {
            let direction = path.triple_polynomial(r.triple).sign_at(&r.interval.hi);
            MutationEvent {
                triple: r.triple,
                interval: r.interval,
                direction,
                kind: None,
                signature: None,
            }
        })
        .collect())
}

/// Refines overlapping intervals until they are disjoint; a root shared by two
/// triples is a degeneracy.
fn separate<T: Scalar>(roots: &mut [RootRecord<T>]) -> Result<()> {
    for _ in 0..REFINEMENT_BUDGET * roots.len().max(1) {
        roots.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
        let Some(i) = (0..roots.len().saturating_sub(1))
            .find(|&i| roots[i].interval.overlaps(&roots[i + 1].interval))
        else {
            return Ok(());
        };
        let common = roots[i].factor.gcd(&roots[i + 1].factor);
        if common.degree().unwrap_or(0) > 0 {
            let lo = roots[i]
                .interval
                .lo
                .clone()
                .max(roots[i + 1].interval.lo.clone());
            let hi = roots[i]
                .interval
                .hi
                .clone()
                .min(roots[i + 1].interval.hi.clone());
            if common.count_roots_open(&lo, &hi) > 0 {
                return Err(Error::PathDegenerate(format!(
                    "triples {:?} and {:?} degenerate simultaneously",
                    roots[i].triple,
                    roots[i + 1].triple
                )));
            }
        }
        for r in &mut roots[i..=i + 1] {
            r.interval.bisect(&r.factor);
        }
    }
    Err(Error::PathDegenerate(
        "could not separate event times".into(),
    ))
}

fn sign_constant_on<T: Scalar>(p: &UniPoly<T>, iv: &Interval<T>) -> bool {
    !p.is_zero()
        && p.count_roots_open(&iv.lo, &iv.hi) == 0
        && !p.eval(&iv.lo).is_zero()
        && !p.eval(&iv.hi).is_zero()
}

/// Fills in the type and signature of an event from [`detect_events`].
///
/// Shrinks the interval until the triangle of the flipping triple is small
/// enough that every other vector and every pairwise orientation of its
/// vertices has constant sign on it, then reads the signature at the right endpoint.
pub fn classify_event<T: Scalar>(
    path: &MotionPath<T>,
    event: &MutationEvent<T>,
) -> Result<MutationEvent<T>> {
    let n = path.n();
    let [a, b, c] = event.triple;
    let flip = path.triple_polynomial(event.triple);
    let factor = flip
        .square_free_decomposition()
        .into_iter()
        .next()
        .unwrap_or_else(|| flip.clone());
    let cols: Vec<PolyVec<T>> = (0..n).map(|i| path.column_poly(i)).collect();
    let verts = [
        cross_poly(&cols[a], &cols[b]),
        cross_poly(&cols[b], &cols[c]),
        cross_poly(&cols[c], &cols[a]),
    ];
    let mut watched = vec![
        dot_poly(&verts[0], &verts[1]),
        dot_poly(&verts[0], &verts[2]),
    ];
    let outside: Vec<usize> = (0..n).filter(|i| !event.triple.contains(i)).collect();
    for &i in &outside {
        for v in &verts {
            watched.push(dot_poly(&cols[i], v));
        }
    }
    let mut iv = event.interval.clone();
    let mut steps = 0;
    while !watched.iter().all(|p| sign_constant_on(p, &iv)) {
        if steps == REFINEMENT_BUDGET {
            return Err(Error::PathDegenerate(format!(
                "event of {:?} could not be isolated",
                event.triple
            )));
        }
        iv.bisect(&factor);
        steps += 1;
    }
    let t = iv.hi.clone();
    let eval = |p: &PolyVec<T>| -> Vec<T> { p.iter().map(|q| q.eval(&t)).collect() };
    let p_ab = eval(&verts[0]);
    let orient = [
        Sign::Positive,
        watched[0].sign_at(&t),
        watched[1].sign_at(&t),
    ];
    let vertex = |m: usize| -> Vec<T> {
        let p = eval(&verts[m]);
        if orient[m] == Sign::Negative {
            p.into_iter().map(|x| -x).collect()
        } else {
            p
        }
    };
    let oriented = [p_ab, vertex(1), vertex(2)];
    let dot = |i: usize, p: &[T]| crate::linalg::dot(&eval(&cols[i]), p).sign();
    let mut signature = SignVector::zero(n);
    // the vertex opposite to a is p_bc, and so on
    for (m, i) in [(1, a), (2, b), (0, c)] {
        signature.set(i, dot(i, &oriented[m]));
    }
    for &i in &outside {
        let s: Vec<Sign> = oriented.iter().map(|p| dot(i, p)).collect();
        if s[0] != s[1] || s[0] != s[2] || s[0] == Sign::Zero {
            return Err(Error::InternalInconsistency(format!(
                "vertices of the triangle of {:?} disagree on vector {i}",
                event.triple
            )));
        }
        signature.set(i, s[0]);
    }
    let j = event
        .triple
        .iter()
        .filter(|&&i| signature.get(i) == Sign::Negative)
        .count();
    let k = outside
        .iter()
        .filter(|&&i| signature.get(i) == Sign::Negative)
        .count();
    Ok(MutationEvent {
        interval: iv,
        kind: Some(MutationType { j, k }),
        signature: Some(signature),
        ..event.clone()
    })
}

/// Detects and classifies all events of a path.
pub fn run_motion<T: Scalar>(path: &MotionPath<T>) -> Result<Vec<MutationEvent<T>>> {
    detect_events(path)?
        .iter()
        .map(|e| classify_event(path, e))
        .collect()
}

/// Sum of the per-mutation g-matrices of classified events.
pub fn accumulate_g<T: Scalar>(n: usize, events: &[MutationEvent<T>]) -> Result<GMatrix> {
    let mut g = GMatrix::zero(3, n);
    for e in events {
        let kind = e
            .kind
            .ok_or_else(|| Error::InvalidParameter("unclassified event".into()))?;
        g = g.try_add(&kind.g_contribution(n))?;
    }
    Ok(g)
}

/// Perturbation attempts before a degenerate path is given up.
pub const JITTER_ATTEMPTS: usize = 16;

/// A small deterministic perturbation of `w`: each coordinate moves by a
/// multiple of `1/denominator` in `[-2, 2]/denominator`.
pub fn jitter<T: Scalar>(
    w: &VectorConfiguration<T>,
    seed: u64,
    denominator: i64,
) -> Result<VectorConfiguration<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols = w
        .columns()
        .iter()
        .map(|c| {
            c.iter()
                .map(|x| x.clone() + T::from_fraction(rng.random_range(-2..=2), denominator))
                .collect()
        })
        .collect();
    VectorConfiguration::new(w.rank(), cols)
}

#[derive(Clone, Debug)]
pub struct MotionOutcome<T> {
    pub g: GMatrix,
    /// the path whose events were counted
    pub path: MotionPath<T>,
    pub events: Vec<MutationEvent<T>>,
    /// `g(W' -> W)` when the end point had to be perturbed to `W'`
    pub correction: Option<GMatrix>,
}

/// `g(V -> W)` counted along the straight path, perturbing `W` when the path is not generic.
pub fn g_via_motion<T: Scalar>(
    v: &VectorConfiguration<T>,
    w: &VectorConfiguration<T>,
    seed: u64,
) -> Result<MotionOutcome<T>> {
    let direct = MotionPath::new(v.clone(), w.clone())?;
    let mut last = match run_motion(&direct) {
        Ok(events) => {
            let g = accumulate_g(v.n(), &events)?;
            return Ok(MotionOutcome {
                g,
                path: direct,
                events,
                correction: None,
            });
        }
        Err(e @ Error::PathDegenerate(_)) => e,
        Err(e) => return Err(e),
    };
    for attempt in 0..JITTER_ATTEMPTS {
        let Ok(w2) = jitter(w, seed.wrapping_add(attempt as u64), 1000) else {
            continue;
        };
        let path = MotionPath::new(v.clone(), w2.clone())?;
        match run_motion(&path) {
            Ok(events) => {
                let correction = g_pair(&w2, w)?;
                let g = accumulate_g(v.n(), &events)?.try_add(&correction)?;
                return Ok(MotionOutcome {
                    g,
                    path,
                    events,
                    correction: Some(correction),
                });
            }
            Err(e @ Error::PathDegenerate(_)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(Error::PathDegenerate(format!(
        "perturbation budget exhausted; last failure: {last}"
    )))
}

/// Outcome of checking one event against the mutation formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventCheck {
    pub triple: [usize; 3],
    pub kind: MutationType,
    pub f_ok: bool,
    pub fstar_ok: bool,
    /// the appearing triangle is a new cell and the vanishing one an old cell
    pub cells_ok: bool,
}

impl EventCheck {
    pub fn passed(&self) -> bool {
        self.f_ok && self.fstar_ok && self.cells_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationReport {
    pub events: Vec<EventCheck>,
    /// the set of faces is the same at both ends of every gap between events
    pub gaps_ok: bool,
}

impl MutationReport {
    pub fn passed(&self) -> bool {
        self.gaps_ok && self.events.iter().all(EventCheck::passed)
    }
}

/// Rebuilds f and f* just before and after every event and compares with the
/// mutation formulas; also compares face sets across each gap between events.
pub fn verify_mutation_formulas<T: Scalar>(
    path: &MotionPath<T>,
    events: &[MutationEvent<T>],
) -> Result<MutationReport> {
    let n = path.n();
    let faces = |v: &VectorConfiguration<T>| covector_set(v, Validation::Auto);
    let mut checks = Vec::new();
    let mut gaps_ok = true;
    let mut previous = faces(path.start())?;
    for e in events {
        let kind = e
            .kind
            .ok_or_else(|| Error::InvalidParameter("unclassified event".into()))?;
        let sig = e
            .signature
            .ok_or_else(|| Error::InvalidParameter("unclassified event".into()))?;
        let before = path.at(&e.interval.lo)?;
        let after = path.at(&e.interval.hi)?;
        let f_before = faces(&before)?;
        let f_after = faces(&after)?;
        gaps_ok &= f_before == previous;
        let df = &FMatrix::from_faces(3, n, &f_after).polynomial()
            - &FMatrix::from_faces(3, n, &f_before).polynomial();
        let dfs = &fstar_matrix(&after)?.polynomial() - &fstar_matrix(&before)?.polynomial();
        let mut old = sig;
        for &i in &e.triple {
            old.set(i, sig.get(i).negate());
        }
        let cells_ok = f_after.contains(&sig)
            && !f_before.contains(&sig)
            && f_before.contains(&old)
            && !f_after.contains(&old);
        checks.push(EventCheck {
            triple: e.triple,
            kind,
            f_ok: df == kind.f_difference(n),
            fstar_ok: dfs == kind.fstar_difference(n),
            cells_ok,
        });
        previous = f_after;
    }
    gaps_ok &= faces(path.end())? == previous;
    Ok(MutationReport {
        events: checks,
        gaps_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{cyclic, make_random};
    use crate::covectors::{enumerate_covectors, f_matrix};
    use crate::Rational;
    use num_traits::Zero;

    fn cfg(cols: &[[i64; 3]]) -> VectorConfiguration<Rational> {
        VectorConfiguration::from_integer_columns(
            3,
            &cols.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn constant_path_has_no_events() {
        let v = make_random::<Rational>(6, 3, 5, 1).unwrap();
        let path = MotionPath::new(v.clone(), v.clone()).unwrap();
        assert!(detect_events(&path).unwrap().is_empty());
        assert!(g_via_motion(&v, &v, 0).unwrap().g.is_zero());
    }

    #[test]
    fn small_rotation_has_no_events() {
        let v = cyclic::<Rational>(4).unwrap();
        // rotation about the first axis by the rational angle with tangent 1/20
        let (c, s) = (
            Rational::from_fraction(399, 401),
            Rational::from_fraction(40, 401),
        );
        let z = Rational::from_int(0);
        let o = Rational::from_int(1);
        let map = vec![
            vec![o, z.clone(), z.clone()],
            vec![z.clone(), c.clone(), -s.clone()],
            vec![z, s, c],
        ];
        let w = v.transformed(&map).unwrap();
        let path = MotionPath::new(v.clone(), w.clone()).unwrap();
        for t in (0..4).combinations(3) {
            let p = path.triple_polynomial([t[0], t[1], t[2]]);
            assert_eq!(
                p.count_roots_open(&Rational::from_int(0), &Rational::from_int(1)),
                0
            );
        }
        assert!(detect_events(&path).unwrap().is_empty());
        assert_eq!(f_matrix(&v).unwrap(), f_matrix(&w).unwrap());
    }

    #[test]
    fn type_one_to_type_zero_quadruple() {
        let v = cfg(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        // only det(v_1, v_2, v_3) changes sign along this path
        let w = cfg(&[[1, 0, 0], [0, 1, 0], [-2, -2, -1], [1, 1, 1]]);
        let path = MotionPath::new(v.clone(), w.clone()).unwrap();
        let events = run_motion(&path).unwrap();
        assert_eq!(events.len(), 1);
        let (fv, fw) = (fstar_matrix(&v).unwrap(), fstar_matrix(&w).unwrap());
        assert_eq!(fw.get(4, 1) - fv.get(4, 1), -1);
        assert_eq!(fw.get(4, 0) - fv.get(4, 0), 1);
        let report = verify_mutation_formulas(&path, &events).unwrap();
        assert!(report.passed(), "{report:?}");
        for e in &events {
            let kind = e.kind.unwrap().canonical(4);
            assert_eq!(kind.j, 0);
        }
        assert_eq!(g_via_motion(&v, &w, 0).unwrap().g, g_pair(&v, &w).unwrap());
    }

    #[test]
    fn random_paths_match_g_pair_and_formulas() {
        for seed in 0..6 {
            let n = 5 + (seed as usize % 3);
            let v = make_random::<Rational>(n, 3, 4, seed).unwrap();
            let w = make_random::<Rational>(n, 3, 4, seed + 40).unwrap();
            let out = g_via_motion(&v, &w, seed).unwrap();
            assert_eq!(out.g, g_pair(&v, &w).unwrap(), "seed {seed}");
            assert!(out.g.is_skew_symmetric());
            let report = verify_mutation_formulas(&out.path, &out.events).unwrap();
            assert!(report.passed(), "seed {seed}: {report:?}");
        }
    }

    #[test]
    fn intervals_are_disjoint_and_clean() {
        let v = make_random::<Rational>(6, 3, 5, 3).unwrap();
        let w = make_random::<Rational>(6, 3, 5, 4).unwrap();
        let path = MotionPath::new(v, w).unwrap();
        let events = detect_events(&path).unwrap();
        for pair in events.windows(2) {
            assert!(pair[0].interval.hi <= pair[1].interval.lo);
        }
        for e in &events {
            for t in (0..6).combinations(3) {
                let p = path.triple_polynomial([t[0], t[1], t[2]]);
                assert!(!p.eval(&e.interval.lo).is_zero());
                assert!(!p.eval(&e.interval.hi).is_zero());
            }
        }
    }

    #[test]
    fn antipodal_choice_gives_same_type() {
        for n in 5..=8 {
            for j in 0..=3 {
                for k in 0..=n - 3 {
                    let t = MutationType { j, k };
                    let u = MutationType {
                        j: 3 - j,
                        k: n - 3 - k,
                    };
                    assert_eq!(t.g_contribution(n), u.g_contribution(n));
                    assert_eq!(t.f_difference(n), u.f_difference(n).scale(1));
                }
            }
        }
    }

    #[test]
    fn reversed_path_negates_g() {
        let v = make_random::<Rational>(6, 3, 4, 8).unwrap();
        let w = make_random::<Rational>(6, 3, 4, 9).unwrap();
        let path = MotionPath::new(v, w).unwrap();
        let forward = accumulate_g(6, &run_motion(&path).unwrap()).unwrap();
        let backward = accumulate_g(6, &run_motion(&path.reversed()).unwrap()).unwrap();
        assert_eq!(forward, backward.negated());
    }

    #[test]
    fn middle_type_leaves_f_unchanged() {
        let t = MutationType { j: 1, k: 1 };
        assert!(t.f_difference(5).is_zero());
        assert!(t.g_contribution(5).is_zero());
    }

    #[test]
    fn type_zero_fstar_difference_has_factor() {
        let d = MutationType { j: 0, k: 1 }.fstar_difference(6);
        // (1 - y^3) divides it: substituting y = 1 kills every x-coefficient
        let mut at_one = std::collections::BTreeMap::new();
        for ((dx, _), c) in d.terms() {
            *at_one.entry(dx).or_insert(0) += c;
        }
        assert!(at_one.values().all(|&c| c == 0));
    }

    #[test]
    fn covers_enumeration_at_sample_points() {
        let v = make_random::<Rational>(5, 3, 4, 2).unwrap();
        let w = make_random::<Rational>(5, 3, 4, 5).unwrap();
        let path = MotionPath::new(v.clone(), w).unwrap();
        let at0 = path.at(&Rational::from_int(0)).unwrap();
        assert_eq!(
            enumerate_covectors(&at0).unwrap(),
            enumerate_covectors(&v).unwrap()
        );
    }
}
