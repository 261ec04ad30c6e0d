//! The nonnegative group algebra of permutations: finite formal sums
//! `Σ α_l λ(g_l)` with rational coefficients `α_l > 0`. Elements with every
//! coefficient equal to 1 are the boolean ones.

use crate::perm::Permutation;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Coeff = BigRational;

pub fn coeff(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A finite sum of permutation unitaries with nonnegative rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<Permutation, Coeff>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(perm: Permutation) -> Self {
        GroupAlgebraElement {
            terms: BTreeMap::from([(perm, Coeff::one())]),
        }
    }

    pub fn scaled_unit(perm: Permutation, c: Coeff) -> Self {
        assert!(c >= Coeff::zero(), "coefficients must be nonnegative");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(perm, c);
        }
        GroupAlgebraElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Coeff)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            let entry = terms.entry(p.clone()).or_insert_with(Coeff::zero);
            *entry += c;
        }
        GroupAlgebraElement { terms }
    }

    pub fn scale(&self, c: &Coeff) -> GroupAlgebraElement {
        assert!(*c >= Coeff::zero(), "coefficients must be nonnegative");
        if c.is_zero() {
            return Self::zero();
        }
        GroupAlgebraElement {
            terms: self.terms.iter().map(|(p, a)| (p.clone(), a * c)).collect(),
        }
    }

    /// Convolution product: `(Σ α λ(g)) (Σ β λ(h)) = Σ αβ λ(gh)`.
    pub fn product(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut terms: BTreeMap<Permutation, Coeff> = BTreeMap::new();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let entry = terms.entry(g.compose(h)).or_insert_with(Coeff::zero);
                *entry += a * b;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        GroupAlgebraElement { terms }
    }

    /// True when every coefficient is exactly 1 (a plain sum of unitaries).
    pub fn is_boolean(&self) -> bool {
        self.terms.values().all(|c| c.is_one())
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{c}·{p}")?;
            }
        }
        Ok(())
    }
}
