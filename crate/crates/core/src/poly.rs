//! Sparse bivariate polynomials in `x`, `y` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial in `x` and `y`. Terms are keyed by `(x exponent, y exponent)`
/// and zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TuttePolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl TuttePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c · x^i · y^j`
    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Terms in ascending `(x exponent, y exponent)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        TuttePolynomial {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    /// The polynomial with `x` and `y` exchanged.
    pub fn swap_variables(&self) -> Self {
        TuttePolynomial {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((*b, *a), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, ((i, j), c)| {
                acc + BigRational::from_integer(c.clone())
                    * num_traits::pow(x.clone(), *i as usize)
                    * num_traits::pow(y.clone(), *j as usize)
            })
    }

    pub fn evaluate_int(&self, x: i64, y: i64) -> BigInt {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        self.terms.iter().fold(BigInt::zero(), |acc, ((i, j), c)| {
            acc + c
                * num_traits::pow(x.clone(), *i as usize)
                * num_traits::pow(y.clone(), *j as usize)
        })
    }

    /// `(x - 1)^i (y - 1)^j`, expanded.
    pub fn shifted_power(i: u32, j: u32) -> Self {
        let xs = binomial_row(i);
        let ys = binomial_row(j);
        let mut p = Self::zero();
        for (a, ca) in xs.iter().enumerate() {
            for (b, cb) in ys.iter().enumerate() {
                let sign = if (i as usize - a + j as usize - b).is_multiple_of(2) {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                p.add_term(a as u32, b as u32, sign * ca * cb);
            }
        }
        p
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: PolyJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::parse("terms", e))?;
        let mut p = Self::zero();
        for t in raw.terms {
            let c: BigInt =
                t.c.parse()
                    .map_err(|e| Error::parse("terms.c", format!("`{}`: {e}", t.c)))?;
            p.add_term(t.x, t.y, c);
        }
        Ok(p)
    }
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n as usize {
        let next = &row[k] * BigInt::from(n as usize - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: u32,
    y: u32,
    c: String,
}

impl From<&TuttePolynomial> for PolyJson {
    fn from(p: &TuttePolynomial) -> Self {
        PolyJson {
            terms: p
                .terms()
                .map(|((x, y), c)| TermJson {
                    x,
                    y,
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl Add for &TuttePolynomial {
    type Output = TuttePolynomial;

    fn add(self, rhs: &TuttePolynomial) -> TuttePolynomial {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Add for TuttePolynomial {
    type Output = TuttePolynomial;

    fn add(mut self, rhs: TuttePolynomial) -> TuttePolynomial {
        for ((i, j), c) in rhs.terms {
            self.add_term(i, j, c);
        }
        self
    }
}

impl Mul for &TuttePolynomial {
    type Output = TuttePolynomial;

    fn mul(self, rhs: &TuttePolynomial) -> TuttePolynomial {
        let mut out = TuttePolynomial::zero();
        for ((a, b), c) in self.terms() {
            for ((i, j), d) in rhs.terms() {
                out.add_term(a + i, b + j, c * d);
            }
        }
        out
    }
}

impl Mul for TuttePolynomial {
    type Output = TuttePolynomial;

    fn mul(self, rhs: TuttePolynomial) -> TuttePolynomial {
        &self * &rhs
    }
}

impl Neg for TuttePolynomial {
    type Output = TuttePolynomial;

    fn neg(self) -> TuttePolynomial {
        TuttePolynomial {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

pub fn poly_add(p: &TuttePolynomial, q: &TuttePolynomial) -> TuttePolynomial {
    p + q
}

pub fn poly_mul(p: &TuttePolynomial, q: &TuttePolynomial) -> TuttePolynomial {
    p * q
}

impl fmt::Display for TuttePolynomial {
    /// Highest `x` power first, e.g. `x^2 + x*y + 3*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, ((i, j), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (*i == 0 && *j == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("x", *i), ("y", *j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TuttePolynomial({self})")
    }
}
