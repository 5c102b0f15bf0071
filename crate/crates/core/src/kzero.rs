//! The free abelian group on indecomposable classes `(loops, coloops)`, and
//! the class of a matroid in it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::dc::{indecomposable_covering_with, leaf_class_multiset, BranchOrder, ClassMultiset};
use crate::error::{Error, Result};
use crate::matroid::{IndecomposableClass, Matroid};
use crate::par::Execution;
use crate::poly::TuttePolynomial;
use crate::strategy::PivotStrategy;

/// A finitely supported integer combination of indecomposable classes.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KZeroElement {
    coeffs: BTreeMap<IndecomposableClass, BigInt>,
}

impl KZeroElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The generator `[class]`.
    pub fn generator(class: IndecomposableClass) -> Self {
        Self::term(class, BigInt::from(1))
    }

    pub fn term(class: IndecomposableClass, coeff: impl Into<BigInt>) -> Self {
        let mut k = Self::zero();
        k.add_term(class, coeff.into());
        k
    }

    pub fn from_multiset(ms: &ClassMultiset) -> Self {
        let mut k = Self::zero();
        for (class, n) in ms {
            k.add_term(*class, BigInt::from(*n));
        }
        k
    }

    fn add_term(&mut self, class: IndecomposableClass, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(class).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&class);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, class: IndecomposableClass) -> BigInt {
        self.coeffs.get(&class).cloned().unwrap_or_default()
    }

    /// Non-zero terms sorted by `(loops, coloops)`.
    pub fn terms(&self) -> impl Iterator<Item = (IndecomposableClass, &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Swaps the roles of loops and coloops on every generator.
    pub fn duality_involution(&self) -> Self {
        KZeroElement {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.dual(), c.clone()))
                .collect(),
        }
    }

    /// `Σ c(m,n) · x^n y^m`. Only defined when no coefficient is negative.
    pub fn tutte_polynomial(&self) -> Result<TuttePolynomial> {
        let mut t = TuttePolynomial::zero();
        for (k, c) in &self.coeffs {
            if c.is_negative() {
                return Err(Error::NegativeCoefficient {
                    loops: k.loops,
                    coloops: k.coloops,
                    coeff: c.to_string(),
                });
            }
            t.add_term(k.coloops as u32, k.loops as u32, c.clone());
        }
        Ok(t)
    }

    /// Bilinear extension of `(m,n) ⋆ (m',n') = (m+m', n+n')`.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.coeffs {
            for (b, d) in &other.coeffs {
                out.add_term(
                    IndecomposableClass::new(a.loops + b.loops, a.coloops + b.coloops),
                    c * d,
                );
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let coeff = c
                    .to_i64()
                    .map(Value::from)
                    .unwrap_or_else(|| Value::from(c.to_string()));
                json!({"loops": k.loops, "coloops": k.coloops, "coeff": coeff})
            })
            .collect();
        json!({ "classes": classes })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let classes = value
            .get("classes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("classes", "expected an array"))?;
        let mut k = Self::zero();
        for entry in classes {
            let field = |name: &str| {
                entry
                    .get(name)
                    .and_then(Value::as_u64)
                    .map(|v| v as usize)
                    .ok_or_else(|| Error::parse(name, "expected a natural number"))
            };
            let coeff = match entry.get("coeff") {
                Some(Value::Number(n)) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::parse("coeff", "expected an integer"))?,
                Some(Value::String(s)) => s.parse().map_err(|e| Error::parse("coeff", e))?,
                _ => return Err(Error::parse("coeff", "missing")),
            };
            k.add_term(
                IndecomposableClass::new(field("loops")?, field("coloops")?),
                coeff,
            );
        }
        Ok(k)
    }
}

impl Add for &KZeroElement {
    type Output = KZeroElement;

    fn add(self, rhs: &KZeroElement) -> KZeroElement {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Add for KZeroElement {
    type Output = KZeroElement;

    fn add(self, rhs: KZeroElement) -> KZeroElement {
        &self + &rhs
    }
}

impl Neg for &KZeroElement {
    type Output = KZeroElement;

    fn neg(self) -> KZeroElement {
        KZeroElement {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for KZeroElement {
    type Output = KZeroElement;

    fn neg(self) -> KZeroElement {
        -&self
    }
}

impl Sub for &KZeroElement {
    type Output = KZeroElement;

    fn sub(self, rhs: &KZeroElement) -> KZeroElement {
        self + &(-rhs)
    }
}

impl fmt::Display for KZeroElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mag = c.abs();
            if mag == BigInt::from(1) {
                write!(f, "{sep}[{k}]")?;
            } else {
                write!(f, "{sep}{mag}[{k}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KZeroElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KZeroElement({self})")
    }
}

pub fn k0_add(a: &KZeroElement, b: &KZeroElement) -> KZeroElement {
    a + b
}

pub fn k0_negate(a: &KZeroElement) -> KZeroElement {
    -a
}

pub fn duality_involution(a: &KZeroElement) -> KZeroElement {
    a.duality_involution()
}

pub fn tutte_from_class(a: &KZeroElement) -> Result<TuttePolynomial> {
    a.tutte_polynomial()
}

/// Class of `m`: the sources of an indecomposable covering, counted with
/// multiplicity.
pub fn k0_class(m: &Matroid) -> KZeroElement {
    k0_class_with(m, PivotStrategy::MinIndex, Execution::default())
}

pub fn k0_class_with(m: &Matroid, strategy: PivotStrategy, exec: Execution) -> KZeroElement {
    let c = indecomposable_covering_with(
        Arc::new(m.clone()),
        strategy,
        BranchOrder::DeleteFirst,
        exec,
    );
    KZeroElement::from_multiset(&leaf_class_multiset(&c).expect("covering is indecomposable"))
}
