use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Diagram;
use crate::algebra::{rat, Rational};

/// A finite rational combination of diagrams up to isomorphism, truncated
/// above a fixed degree (`None` keeps every term).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCombo<D: Diagram> {
    terms: BTreeMap<D, Rational>,
    truncation: Option<usize>,
}

impl<D: Diagram> DiagramCombo<D> {
    pub fn zero(truncation: Option<usize>) -> Self {
        Self {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    /// The empty diagram with coefficient 1.
    pub fn one(truncation: Option<usize>) -> Self {
        let mut c = Self::zero(truncation);
        c.add_term(Rational::one(), D::empty());
        c
    }

    pub fn single(d: D, truncation: Option<usize>) -> Self {
        let mut c = Self::zero(truncation);
        c.add_term(Rational::one(), d);
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (Rational, D)>>(terms: I, truncation: Option<usize>) -> Self {
        let mut c = Self::zero(truncation);
        for (coeff, d) in terms {
            c.add_term(coeff, d);
        }
        c
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn with_truncation(&self, truncation: Option<usize>) -> Self {
        Self::from_terms(self.terms.iter().map(|(d, c)| (c.clone(), d.clone())), truncation)
    }

    fn keeps(&self, degree: usize) -> bool {
        self.truncation.is_none_or(|n| degree <= n)
    }

    /// Adds `coeff * d`; terms above the truncation degree are dropped.
    pub fn add_term(&mut self, coeff: Rational, d: D) {
        if coeff.is_zero() {
            return;
        }
        let degree = d.degree();
        if !self.keeps(degree) {
            log::warn!("dropping a degree {degree} term above the truncation");
            return;
        }
        let key = d.canonical();
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&D, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &D) -> Rational {
        self.terms.get(&d.canonical()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Diagram::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Diagram::degree).min()
    }

    /// Homogeneous part of the given degree.
    pub fn degree_part(&self, degree: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| d.degree() == degree)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    fn combined_truncation(&self, other: &Self) -> Option<usize> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.with_truncation(self.combined_truncation(other));
        for (d, c) in &other.terms {
            out.add_term(c.clone(), d.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(d, x)| (x * c, d.clone())), self.truncation)
    }

    /// Disjoint-union product, bilinear.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.combined_truncation(other));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if out.keeps(a.degree() + b.degree()) {
                    out.add_term(x * y, a.disjoint_union(b));
                }
            }
        }
        out
    }

    /// Exponential of a combination without degree-zero terms; requires a
    /// finite truncation.
    pub fn exp(&self) -> Self {
        let n = self.truncation.expect("exp needs a truncation degree");
        assert!(self.min_degree().is_none_or(|m| m >= 1), "exp needs vanishing degree-zero part");
        let mut out = Self::one(self.truncation);
        let mut power = Self::one(self.truncation);
        for k in 1..=n {
            power = power.mul(self).scale(&(Rational::one() / rat(k as i64)));
            if power.is_empty() {
                break;
            }
            out = out.add(&power);
        }
        out
    }

    pub fn map_diagrams<F: FnMut(&D) -> D>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(d, c)| (c.clone(), f(d))), self.truncation)
    }
}

/// Disjoint union of combinations.
pub fn disjoint_union<D: Diagram>(a: &DiagramCombo<D>, b: &DiagramCombo<D>) -> DiagramCombo<D> {
    a.mul(b)
}
