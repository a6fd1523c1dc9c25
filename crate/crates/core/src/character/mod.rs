//! Characters of the maximal torus: finite rational combinations of
//! exponentials `e_μ` with `μ` in the weight lattice, the Weyl action, and
//! the two evaluations used by the invariants (value at the identity and
//! Haar average).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, rat, HSeries, Rational};
use crate::error::{Error, Result};
use crate::lie::{CartanVector, LieAlgebraData};

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightVectorLattice(pub Vec<i64>);

impl WeightVectorLattice {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| k * x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Add for &WeightVectorLattice {
    type Output = WeightVectorLattice;
    fn add(self, rhs: &WeightVectorLattice) -> WeightVectorLattice {
        WeightVectorLattice(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharacterCombo {
    terms: BTreeMap<WeightVectorLattice, Rational>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    weight: Vec<i64>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ComboJson {
    terms: Vec<TermJson>,
}

impl CharacterCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The trivial character `e_0`.
    pub fn one(rank: usize) -> Self {
        Self::monomial(WeightVectorLattice::zero(rank), Rational::one())
    }

    pub fn constant(c: Rational, rank: usize) -> Self {
        Self::monomial(WeightVectorLattice::zero(rank), c)
    }

    pub fn monomial(weight: WeightVectorLattice, coeff: Rational) -> Self {
        let mut c = Self::zero();
        c.add_term(weight, coeff);
        c
    }

    pub fn exp_of(weight: &[i64]) -> Self {
        Self::monomial(WeightVectorLattice(weight.to_vec()), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (WeightVectorLattice, Rational)>>(terms: I) -> Self {
        let mut c = Self::zero();
        for (w, x) in terms {
            c.add_term(w, x);
        }
        c
    }

    /// The irreducible `sl_2` character of dimension `m`.
    pub fn sl2_irreducible(m: usize) -> Self {
        let top = m as i64 - 1;
        Self::from_terms((0..m as i64).map(|k| (WeightVectorLattice(vec![top - 2 * k]), Rational::one())))
    }

    /// The adjoint character: `rank * e_0` plus `e_α` for every root.
    pub fn adjoint(l: &LieAlgebraData) -> Self {
        let mut c = Self::constant(rat(l.rank() as i64), l.rank());
        for r in l.roots() {
            c.add_term(WeightVectorLattice(r.values.clone()), Rational::one());
        }
        c
    }

    pub fn add_term(&mut self, weight: WeightVectorLattice, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(weight.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&weight);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightVectorLattice, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, weight: &WeightVectorLattice) -> Rational {
        self.terms.get(weight).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Product in the group ring: `e_μ e_ν = e_{μ+ν}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    /// Complex conjugate on the torus: `e_μ -> e_{-μ}`.
    pub fn conjugate(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (w.scale(-1), x.clone())))
    }

    pub fn map_weights<F: FnMut(&WeightVectorLattice) -> WeightVectorLattice>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (f(w), x.clone())))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|x| x.is_integer())
    }

    pub fn to_json(&self) -> String {
        let json = ComboJson {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| TermJson {
                    weight: w.0.clone(),
                    coeff: x.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&json).expect("character serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: ComboJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("character JSON: {e}")))?;
        let mut out = Self::zero();
        let rank = json.terms.first().map(|t| t.weight.len());
        for t in json.terms {
            if Some(t.weight.len()) != rank {
                return Err(Error::Parse("character JSON: weights of different lengths".into()));
            }
            out.add_term(WeightVectorLattice(t.weight), parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

impl fmt::Display for CharacterCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, x)| {
                let w: Vec<String> = w.0.iter().map(ToString::to_string).collect();
                format!("{x}*e[{}]", w.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn check_rank(f: &CharacterCombo, l: &LieAlgebraData) -> Result<()> {
    if f.terms().any(|(w, _)| w.0.len() != l.rank()) {
        return Err(Error::DimensionMismatch(format!(
            "weights must have {} coordinates for {}",
            l.rank(),
            l.name()
        )));
    }
    Ok(())
}

/// Average over the Weyl group: each `e_μ` becomes the mean of `e_ν` over
/// the orbit of `μ`.
pub fn weyl_symmetrize(f: &CharacterCombo, l: &LieAlgebraData) -> Result<CharacterCombo> {
    check_rank(f, l)?;
    let mut out = CharacterCombo::zero();
    for (w, x) in f.terms() {
        let orbit = l.weyl_orbit(&w.0);
        let share = x / rat(orbit.len() as i64);
        for nu in orbit {
            out.add_term(WeightVectorLattice(nu), share.clone());
        }
    }
    Ok(out)
}

/// Sum over orbits instead of the average: `e_μ` becomes `Σ_{ν ∈ Wμ} e_ν`.
pub fn weyl_orbit_sum(f: &CharacterCombo, l: &LieAlgebraData) -> Result<CharacterCombo> {
    check_rank(f, l)?;
    let mut out = CharacterCombo::zero();
    for (w, x) in f.terms() {
        for nu in l.weyl_orbit(&w.0) {
            out.add_term(WeightVectorLattice(nu), x.clone());
        }
    }
    Ok(out)
}

pub fn is_weyl_invariant(f: &CharacterCombo, l: &LieAlgebraData) -> bool {
    if check_rank(f, l).is_err() {
        return false;
    }
    (0..l.rank()).all(|i| f.map_weights(|w| WeightVectorLattice(l.reflect(i, &w.0))) == *f)
}

/// Value at the identity element: the sum of the coefficients.
pub fn evaluate_at_one(f: &CharacterCombo) -> Rational {
    f.terms().fold(Rational::zero(), |acc, (_, x)| acc + x)
}

/// Haar integral of a class function via the Weyl integration formula.
pub fn haar_average(f: &CharacterCombo, l: &LieAlgebraData) -> Result<Rational> {
    if !is_weyl_invariant(f, l) {
        return Err(Error::NotInvariant);
    }
    let mut density = CharacterCombo::one(l.rank());
    for r in l.roots() {
        let factor = CharacterCombo::one(l.rank()).sub(&CharacterCombo::exp_of(&r.values));
        density = density.mul(&factor);
    }
    let product = f.mul(&density);
    Ok(product.coeff(&WeightVectorLattice::zero(l.rank())) / rat(l.weyl_order() as i64))
}

/// `e_μ -> e^{h(λ, μ)}`.
pub fn substitute_series(f: &CharacterCombo, l: &LieAlgebraData, lambda: &CartanVector, order: usize) -> HSeries {
    crate::bridge::exp_star(f, l, lambda, order)
}
