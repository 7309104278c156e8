//! Univariate polynomials over an exact field and real root isolation by
//! Sturm sequences and bisection.

use crate::scalar::{Scalar, Sign};

/// Dense univariate polynomial, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn sign_at(&self, t: &T) -> Sign {
        self.eval(t).sign()
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        UniPoly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().cloned().expect("nonempty") / lead.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].clone() - factor.clone() * c.clone();
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(T::one() / self.leading()))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: entry `i` holds the product of the
    /// irreducible factors of multiplicity exactly `i + 1` (monic).
    pub fn square_free_decomposition(&self) -> Vec<Self> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            let c = d.div_rem(&a).0;
            d = c.sub(&nb.derivative());
            b = nb;
            out.push(a);
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Negated-remainder sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push(r.scale(&-T::one()));
        }
        seq.pop();
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &T, hi: &T) -> usize {
        let seq = self.sturm_sequence();
        let lo_changes = sign_changes(&seq, lo);
        let hi_changes = sign_changes(&seq, hi);
        lo_changes.saturating_sub(hi_changes)
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count_roots_open(&self, lo: &T, hi: &T) -> usize {
        let closed = self.count_roots(lo, hi);
        if self.eval(hi).is_zero() {
            closed - 1
        } else {
            closed
        }
    }
}

fn sign_changes<T: Scalar>(seq: &[UniPoly<T>], at: &T) -> usize {
    let signs: Vec<Sign> = seq
        .iter()
        .map(|p| p.sign_at(at))
        .filter(|&s| s != Sign::Zero)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// An open interval `(lo, hi)` with rational endpoints that contains exactly one
/// root of the polynomial it was isolated for; neither endpoint is a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn mid(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / T::from_int(2)
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    /// Halves the interval around the root of the square-free polynomial `p`.
    pub fn bisect(&mut self, p: &UniPoly<T>) {
        let m = self.mid();
        let sm = p.sign_at(&m);
        if sm == Sign::Zero {
            let q = self.width() / T::from_int(4);
            self.lo = m.clone() - q.clone();
            self.hi = m + q;
        } else if p.sign_at(&self.lo) != sm {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }
}

/// Isolates every root of `p` in the open interval `(lo, hi)`; the roots of a
/// square-free `p` are simple, so each interval brackets a sign change.
pub fn isolate_roots<T: Scalar>(p: &UniPoly<T>, lo: &T, hi: &T) -> Vec<Interval<T>> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = p.count_roots_open(&a, &b);
        if count == 0 {
            continue;
        }
        let endpoints_clear = !p.eval(&a).is_zero() && !p.eval(&b).is_zero();
        if count == 1 && endpoints_clear {
            out.push(Interval { lo: a, hi: b });
            continue;
        }
        let m = (a.clone() + b.clone()) / T::from_int(2);
        if p.eval(&m).is_zero() {
            // exact rational root: shrink a window around it until it is alone
            let mut delta = (b.clone() - a.clone()) / T::from_int(4);
            loop {
                let l = m.clone() - delta.clone();
                let h = m.clone() + delta.clone();
                if p.count_roots_open(&l, &h) == 1 && !p.eval(&l).is_zero() && !p.eval(&h).is_zero()
                {
                    stack.push((a.clone(), l.clone()));
                    stack.push((h.clone(), b.clone()));
                    out.push(Interval { lo: l, hi: h });
                    break;
                }
                delta = delta / T::from_int(2);
            }
        } else {
            stack.push((a, m.clone()));
            stack.push((m, b));
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn p(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::from_fraction(a, b)
    }

    #[test]
    fn sturm_counts_roots_of_cubic() {
        // (t - 1/4)(t - 1/2)(t - 3) * 32 = 32t^3 - 120t^2 + 76t - 12
        let f = p(&[-12, 76, -120, 32]);
        assert_eq!(f.count_roots(&q(0, 1), &q(1, 1)), 2);
        assert_eq!(f.count_roots(&q(-10, 1), &q(10, 1)), 3);
        let iv = isolate_roots(&f, &q(0, 1), &q(1, 1));
        assert_eq!(iv.len(), 2);
        assert!(iv[0].lo < q(1, 4) && q(1, 4) < iv[0].hi);
        assert!(iv[1].lo < q(1, 2) && q(1, 2) < iv[1].hi);
        assert!(iv[0].hi <= iv[1].lo);
    }

    #[test]
    fn square_free_parts() {
        // (t-1)^2 (t+2)
        let f = p(&[2, -3, 0, 1]);
        let parts = f.square_free_decomposition();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], p(&[2, 1]));
        assert_eq!(parts[1], p(&[-1, 1]));
    }

    #[test]
    fn bisection_keeps_the_root() {
        let f = p(&[-2, 0, 1]); // sqrt 2
        let mut iv = isolate_roots(&f, &q(0, 1), &q(2, 1)).remove(0);
        for _ in 0..20 {
            iv.bisect(&f);
        }
        assert!(iv.width() < q(1, 100_000));
        assert!(iv.lo.clone() * iv.lo.clone() < q(2, 1));
        assert!(iv.hi.clone() * iv.hi.clone() > q(2, 1));
    }

    #[test]
    fn gcd_detects_common_root() {
        let a = p(&[-1, 1]).mul(&p(&[-2, 0, 1]));
        let b = p(&[-1, 1]).mul(&p(&[5, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }
}
