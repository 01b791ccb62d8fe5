//! Weight vectors and exact ratio arithmetic.
//!
//! Every weight in this crate is a nonnegative integer, and every ratio is an
//! exact rational. Comparisons of the form `a >= alpha * b` are evaluated by
//! cross-multiplication in 128-bit integers, so no tolerance is ever needed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Index};

use serde::Serialize;

use crate::error::{Error, Result};

/// Exact rational used for approximation ratios, thresholds and `epsilon`.
pub type Rational = num_rational::Ratio<i64>;

/// Builds the rational `numer / denom`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// Exact test of `lhs >= alpha * rhs`.
///
/// Nonpositive `alpha` makes the inequality hold trivially for nonnegative
/// weights.
pub fn ge_scaled(lhs: u64, alpha: Rational, rhs: u64) -> bool {
    let p = *alpha.numer() as i128;
    let q = *alpha.denom() as i128;
    q * lhs as i128 >= p * rhs as i128
}

/// Exact test of `lhs <= alpha * rhs`.
pub fn le_scaled(lhs: u64, alpha: Rational, rhs: u64) -> bool {
    let p = *alpha.numer() as i128;
    let q = *alpha.denom() as i128;
    q * lhs as i128 <= p * rhs as i128
}

/// Compares the fractions `a_num / a_den` and `b_num / b_den` (denominators
/// must be positive).
pub fn cmp_fraction(a_num: u64, a_den: u64, b_num: u64, b_den: u64) -> Ordering {
    (a_num as u128 * b_den as u128).cmp(&(b_num as u128 * a_den as u128))
}

/// A `k`-tuple of nonnegative integer weights, one per criterion.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(components: Vec<u64>) -> Self {
        WeightVector(components)
    }

    pub fn zeros(k: usize) -> Self {
        WeightVector(vec![0; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[u64] {
        &self.0
    }

    pub fn components_mut(&mut self) -> &mut [u64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u64> {
        self.0.iter()
    }

    fn check_dim(&self, other: &WeightVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::dimension(self.len(), other.len()));
        }
        Ok(())
    }

    /// `self >= other` in every component.
    pub fn ge_all(&self, other: &WeightVector) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a >= b))
    }

    /// Strict Pareto dominance: `>=` everywhere and `>` somewhere.
    pub fn dominates(&self, other: &WeightVector) -> Result<bool> {
        self.check_dim(other)?;
        let mut strict = false;
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Less => return Ok(false),
                Ordering::Greater => strict = true,
                Ordering::Equal => {}
            }
        }
        Ok(strict)
    }

    /// `self >= alpha * other` componentwise, evaluated exactly.
    pub fn covers(&self, other: &WeightVector, alpha: Rational) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| ge_scaled(a, alpha, b)))
    }

    /// Index of the first component with `self_i < alpha * other_i`.
    pub fn first_uncovered(&self, other: &WeightVector, alpha: Rational) -> Option<usize> {
        self.0
            .iter()
            .zip(&other.0)
            .position(|(&a, &b)| !ge_scaled(a, alpha, b))
    }

    /// `self <= alpha * other` componentwise, evaluated exactly.
    pub fn within(&self, other: &WeightVector, alpha: Rational) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| le_scaled(a, alpha, b))
    }

    pub fn scale(&self, factor: u64) -> WeightVector {
        WeightVector(self.0.iter().map(|w| w * factor).collect())
    }

    /// The vector with component `index` removed.
    pub fn without(&self, index: usize) -> WeightVector {
        let mut v = self.0.clone();
        v.remove(index);
        WeightVector(v)
    }
}

/// Strict Pareto dominance of `a` over `b`.
pub fn dominates(a: &WeightVector, b: &WeightVector) -> Result<bool> {
    a.dominates(b)
}

impl From<Vec<u64>> for WeightVector {
    fn from(v: Vec<u64>) -> Self {
        WeightVector(v)
    }
}

impl<const N: usize> From<[u64; N]> for WeightVector {
    fn from(v: [u64; N]) -> Self {
        WeightVector(v.to_vec())
    }
}

impl Index<usize> for WeightVector {
    type Output = u64;

    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl AddAssign<&WeightVector> for WeightVector {
    fn add_assign(&mut self, rhs: &WeightVector) {
        assert_eq!(self.len(), rhs.len(), "weight vector dimension mismatch");
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Add<&WeightVector> for &WeightVector {
    type Output = WeightVector;

    fn add(self, rhs: &WeightVector) -> WeightVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}
