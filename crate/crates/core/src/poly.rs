//! Sparse bivariate integer polynomials, used for f-, f*- and g-polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A polynomial in `Z[x, y]`, keyed by the exponent pair `(deg_x, deg_y)`.
#[derive(Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(u32, u32, i64)>", from = "Vec<(u32, u32, i64)>")]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), i64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: i64) -> Self {
        Poly2::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Poly2::constant(1)
    }

    pub fn x() -> Self {
        Poly2::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Poly2::monomial(1, 0, 1)
    }

    pub fn monomial(c: i64, dx: u32, dy: u32) -> Self {
        let mut p = Poly2::zero();
        p.add_term(c, dx, dy);
        p
    }

    pub fn add_term(&mut self, c: i64, dx: u32, dy: u32) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((dx, dy)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> i64 {
        self.terms.get(&(dx, dy)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Poly2::zero();
        for (&(dx, dy), &v) in &self.terms {
            out.add_term(c * v, dx, dy);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly2::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(dx, dy), &c) in &rhs.terms {
            out.add_term(c, dx, dy);
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&(dx, dy), &c) in &rhs.terms {
            out.add_term(-c, dx, dy);
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(ax, ay), &a) in &self.terms {
            for (&(bx, by), &b) in &rhs.terms {
                out.add_term(a * b, ax + bx, ay + by);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $m(self, rhs: Poly2) -> Poly2 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(dx, dy), &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let mut parts = Vec::new();
            if a != 1 || (dx == 0 && dy == 0) {
                parts.push(a.to_string());
            }
            match dx {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{dx}")),
            }
            match dy {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{dy}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

impl From<Poly2> for Vec<(u32, u32, i64)> {
    fn from(p: Poly2) -> Self {
        p.terms
            .into_iter()
            .map(|((dx, dy), c)| (dx, dy, c))
            .collect()
    }
}

impl From<Vec<(u32, u32, i64)>> for Poly2 {
    fn from(terms: Vec<(u32, u32, i64)>) -> Self {
        let mut p = Poly2::zero();
        for (dx, dy, c) in terms {
            p.add_term(c, dx, dy);
        }
        p
    }
}

/// `C(n, k)` extended by zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * i128::from(n - i) / i128::from(i + 1);
    }
    i64::try_from(acc).expect("binomial coefficient overflows i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn expansion_of_trinomial_power() {
        let p = (&Poly2::x() + &Poly2::y() + Poly2::one()).pow(3);
        assert_eq!(p.coeff(1, 1), 6);
        assert_eq!(p.coeff(0, 0), 1);
        assert_eq!(p.coeff(3, 0), 1);
        let total: i64 = p.terms().map(|(_, c)| c).sum();
        assert_eq!(total, 27);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &Poly2::x() - &Poly2::x();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
        assert_eq!(
            (&Poly2::x() - &Poly2::monomial(2, 0, 3)).to_string(),
            "x - 2*y^3"
        );
    }
}
