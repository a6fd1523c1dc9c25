//! Maps between the beaded and the hairy world and from the group to the
//! algebra: hair, wheels, `ν`, `j^{1/2}`, quantum dimension, `exp*`, `Φ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::matrix::dense;
use crate::algebra::{inv_factorial, rat, HSeries, LaurentPoly, MatrixSeries, Rational};
use crate::character::CharacterCombo;
use crate::diagram::{make_wheel, BeadDiagram, Diagram, DiagramCombo, HermitianMatrixClass, LegDiagram};
use crate::error::{Error, Result};
use crate::lie::{CartanVector, LieAlgebraData};

/// Coefficients of wheels `w_n`, up to a truncation degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelSeries {
    coeffs: BTreeMap<usize, Rational>,
    truncation: usize,
}

impl WheelSeries {
    pub fn new(coeffs: BTreeMap<usize, Rational>, truncation: usize) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(n, c)| *n >= 1 && *n <= truncation && !c.is_zero())
            .collect();
        Self { coeffs, truncation }
    }

    /// Wheel coefficients read off an `h`-series: `c_n h^n -> c_n w_n`.
    pub fn from_series(s: &HSeries) -> Self {
        Self::new(
            s.coeffs().iter().cloned().enumerate().skip(1).collect(),
            s.order(),
        )
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    /// `Σ c_n w_n` as a diagram combination.
    pub fn to_combo(&self) -> DiagramCombo<LegDiagram> {
        DiagramCombo::from_terms(
            self.coeffs.iter().map(|(n, c)| (c.clone(), make_wheel(*n))),
            Some(self.truncation),
        )
    }

    /// `exp(scale · Σ c_n w_n)`.
    pub fn exponential(&self, scale: &Rational) -> DiagramCombo<LegDiagram> {
        self.to_combo().scale(scale).exp()
    }
}

fn normalized_det(a: &HermitianMatrixClass) -> Result<LaurentPoly> {
    let (p, _) = a.normalized_det();
    if p.eval_at_one() != Rational::one() {
        return Err(Error::NonUnitAtOne(p.eval_at_one().to_string()));
    }
    Ok(p)
}

/// The `a_n` with `log det(A)(e^h) = Σ a_n h^n`.
pub fn wheels_from_matrix(a: &HermitianMatrixClass, order: usize) -> Result<WheelSeries> {
    let p = normalized_det(a)?;
    Ok(WheelSeries::from_series(&p.subst_exponential(&rat(1), order).log()?))
}

/// `exp(-1/2 Σ a_n w_n)`.
pub fn matrix_hair(a: &HermitianMatrixClass, order: usize) -> Result<DiagramCombo<LegDiagram>> {
    Ok(wheels_from_matrix(a, order)?.exponential(&-Rational::new(1.into(), 2.into())))
}

/// The `b_n` with `Σ b_n x^n = 1/2 log(sinh(x/2) / (x/2))`.
pub fn nu_coefficients(order: usize) -> WheelSeries {
    let half = Rational::new(1.into(), 2.into());
    let s = HSeries::sinhc_linear(&half, order).log().expect("constant term 1");
    WheelSeries::from_series(&s.scale(&half))
}

/// `ν = exp(Σ b_n w_n)`.
pub fn nu_wheels(order: usize) -> DiagramCombo<LegDiagram> {
    nu_coefficients(order).exponential(&Rational::one())
}

/// All ways to place `total` legs on `slots` edges.
fn compositions(total: usize, slots: usize) -> Vec<Vec<usize>> {
    if slots == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, slots - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Replaces every bead `f` by `Σ_n [u^n] f(e^u)` times `n` legs inserted
/// along its edge, keeping degrees up to `order`.
pub fn hair(d: &DiagramCombo<BeadDiagram>, order: usize) -> DiagramCombo<LegDiagram> {
    let mut out = DiagramCombo::zero(Some(order));
    for (diagram, c) in d.terms() {
        let base = diagram.degree();
        if base > order {
            log::warn!("TruncationExceeded: dropping a degree {base} diagram at order {order}");
            continue;
        }
        let budget = order - base;
        let coeffs: Vec<Vec<Rational>> = diagram.edges().iter().map(|e| e.bead.hair_coefficients(budget)).collect();
        let skeleton: Vec<(usize, usize)> = diagram.edges().iter().map(|e| (e.tail, e.head)).collect();
        for legs in 0..=budget {
            for counts in compositions(legs, skeleton.len()) {
                let mut weight = c.clone();
                for (cs, &n) in coeffs.iter().zip(&counts) {
                    weight *= &cs[n];
                    if weight.is_zero() {
                        break;
                    }
                }
                if weight.is_zero() {
                    continue;
                }
                out.add_term(
                    weight,
                    LegDiagram::with_hair(diagram.vertices(), &skeleton, &counts, diagram.loops()),
                );
            }
        }
    }
    out
}

/// `ν · exp(-1/2 Σ a_n w_n) · hair(s)`.
pub fn hair_nu(
    a: &HermitianMatrixClass,
    s: &DiagramCombo<BeadDiagram>,
    order: usize,
) -> Result<DiagramCombo<LegDiagram>> {
    Ok(nu_wheels(order).mul(&matrix_hair(a, order)?).mul(&hair(s, order)))
}

/// `Π_{α>0} sinh(h(α,λ)/2) / (h(α,λ)/2)` from the roots.
pub fn jhalf(l: &LieAlgebraData, lambda: &CartanVector, order: usize) -> HSeries {
    let half = Rational::new(1.into(), 2.into());
    l.positive_roots().fold(HSeries::one(order), |acc, r| {
        acc.mul(&HSeries::sinhc_linear(&(l.root_pairing(r, lambda) * &half), order))
    })
}

/// `det(sinh(h ad/2) / (h ad/2))^{1/2}` from the adjoint matrix.
pub fn jhalf_det(l: &LieAlgebraData, lambda: &CartanVector, order: usize) -> Result<HSeries> {
    let half = Rational::new(1.into(), 2.into());
    let ad = l.ad_matrix(lambda);
    let ad = ad.iter().map(|row| row.iter().map(|x| x * &half).collect()).collect::<Vec<Vec<_>>>();
    let n = l.dim();
    let mut m = MatrixSeries::zero(n, order);
    let mut power = dense::identity(n);
    for k in (0..=order).step_by(2) {
        let c = inv_factorial(k + 1);
        for i in 0..n {
            for j in 0..n {
                let x = &power[i][j] * &c;
                if !x.is_zero() {
                    let mut entry = m.get(i, j).clone();
                    entry.add_assign_ref(&HSeries::monomial(x, k, order));
                    m.set(i, j, entry);
                }
            }
        }
        power = dense::mul(&dense::mul(&power, &ad), &ad);
    }
    m.det().sqrt()
}

/// Quantum dimension `Π_{α>0} sinh(h(α,λ)) / sinh(h(α,ρ))`.
pub fn qdim(l: &LieAlgebraData, lambda: &CartanVector, order: usize) -> Result<HSeries> {
    let rho = CartanVector::rho(l.rank());
    let mut acc = HSeries::one(order);
    for r in l.positive_roots() {
        let x = l.root_pairing(r, lambda);
        let y = l.root_pairing(r, &rho);
        if x.is_zero() {
            return Err(Error::SingularWeight);
        }
        let ratio = HSeries::sinhc_linear(&x, order)
            .scale(&(&x / &y))
            .div(&HSeries::sinhc_linear(&y, order))?;
        acc = acc.mul(&ratio);
    }
    Ok(acc)
}

/// `e_μ -> e^{h(λ, μ)}`.
pub fn exp_star(f: &CharacterCombo, l: &LieAlgebraData, lambda: &CartanVector, order: usize) -> HSeries {
    let mut out = HSeries::zero(order);
    for (w, c) in f.terms() {
        let x = l.int_weight_pairing(&w.0, lambda);
        out.add_assign_ref(&HSeries::exp_linear(&x, order).scale(c));
    }
    out
}

/// Input of `Φ`: a character, or a class function already evaluated on the
/// torus as a series.
#[derive(Clone, Debug)]
pub enum PhiInput {
    Character(CharacterCombo),
    Series(HSeries),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prefactor {
    /// `Π sinh h(α,λ) / sinh h(α,ρ)`.
    Qdim,
    /// `j^{1/2}(hλ) / j^{1/2}(hρ)`.
    JRatio,
}

pub fn prefactor(l: &LieAlgebraData, lambda: &CartanVector, order: usize, kind: Prefactor) -> Result<HSeries> {
    match kind {
        Prefactor::Qdim => qdim(l, lambda, order),
        Prefactor::JRatio => jhalf(l, lambda, order).div(&jhalf(l, &CartanVector::rho(l.rank()), order)),
    }
}

/// `Φ(f)(λ) = prefactor(λ) · exp*(f)(λ)`.
pub fn phi(f: &PhiInput, l: &LieAlgebraData, lambda: &CartanVector, order: usize, kind: Prefactor) -> Result<HSeries> {
    let value = match f {
        PhiInput::Character(c) => exp_star(c, l, lambda, order),
        PhiInput::Series(s) => s.truncate(order),
    };
    Ok(prefactor(l, lambda, order, kind)?.mul(&value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalBead;
    use crate::weight::{weight_group, weight_lie, weight_matrix_part};

    fn bead(s: &str) -> RationalBead {
        s.parse().unwrap()
    }

    fn trefoil() -> HermitianMatrixClass {
        HermitianMatrixClass::one_by_one("t - 1 + t^-1".parse().unwrap()).unwrap()
    }

    #[test]
    fn wheel_and_nu_coefficients() {
        let a = wheels_from_matrix(&trefoil(), 4).unwrap();
        assert_eq!(a.coeff(2), rat(1));
        assert_eq!(a.coeff(4), Rational::new((-5).into(), 12.into()));
        assert_eq!(a.coeff(1), rat(0));
        assert!(wheels_from_matrix(&HermitianMatrixClass::identity(2), 6).unwrap().terms().next().is_none());
        let b = nu_coefficients(6);
        assert_eq!(b.coeff(2), Rational::new(1.into(), 48.into()));
        assert_eq!(b.coeff(4), Rational::new((-1).into(), 5760.into()));
    }

    #[test]
    fn hair_nu_degree_two() {
        let h = hair_nu(&trefoil(), &DiagramCombo::one(None), 4).unwrap();
        let expected = Rational::new(1.into(), 48.into()) - Rational::new(1.into(), 2.into());
        assert_eq!(h.coeff(&make_wheel(2)), expected);
        assert_eq!(hair_nu(&HermitianMatrixClass::identity(1), &DiagramCombo::one(None), 4).unwrap(), nu_wheels(4));
    }

    #[test]
    fn hair_commutes_with_weights() {
        let rho = CartanVector::rho(1);
        let l = LieAlgebraData::sl(2).unwrap();
        for beads in [["t", "1", "1"], ["t^2 - t + 1", "t^-1", "2*t - 1"], ["(1)/(2 - t)", "t", "1"]] {
            let th = BeadDiagram::theta(beads.map(bead));
            let s = DiagramCombo::single(th, None);
            let lhs = weight_lie(&hair(&s, 6), &l, &rho, 6).unwrap();
            let rhs = weight_group(&s, &l, &rho, 6).unwrap();
            assert_eq!(lhs, rhs, "{beads:?}");
        }
        let h = hair(&DiagramCombo::single(BeadDiagram::theta(["t", "1", "1"].map(bead)), None), 3);
        let two = LegDiagram::with_hair(2, &[(0, 3), (1, 5), (2, 4)], &[2, 0, 0], 0);
        assert_eq!(h.coeff(&two), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn matrix_hair_matches_matrix_part() {
        let l = LieAlgebraData::sl(2).unwrap();
        let lambda = CartanVector::from_ints(&[3]);
        let a = trefoil();
        let lhs = weight_lie(&matrix_hair(&a, 6).unwrap(), &l, &lambda, 6).unwrap();
        assert_eq!(lhs, weight_matrix_part(&a, &l, &lambda, 6).unwrap());
    }

    #[test]
    fn jhalf_paths_and_nu() {
        let l = LieAlgebraData::sl(2).unwrap();
        let rho = CartanVector::rho(1);
        assert_eq!(jhalf(&l, &rho, 4).coeff_strings(), ["1", "0", "1/24", "0", "1/1920"]);
        assert_eq!(jhalf_det(&l, &rho, 4).unwrap(), jhalf(&l, &rho, 4));
        assert_eq!(weight_lie(&nu_wheels(6), &l, &rho, 6).unwrap(), jhalf(&l, &rho, 6));
        let l3 = LieAlgebraData::sl(3).unwrap();
        let x = CartanVector::from_ints(&[2, -1]);
        assert_eq!(jhalf_det(&l3, &x, 6).unwrap(), jhalf(&l3, &x, 6));
    }

    #[test]
    fn qdim_and_phi() {
        let l = LieAlgebraData::sl(2).unwrap();
        let two_rho = CartanVector::from_ints(&[2]);
        assert_eq!(qdim(&l, &two_rho, 4).unwrap().coeff_strings(), ["2", "0", "1", "0", "1/12"]);
        assert_eq!(qdim(&l, &CartanVector::rho(1), 4).unwrap(), HSeries::one(4));
        assert_eq!(qdim(&l, &CartanVector::zero(1), 4), Err(Error::SingularWeight));
        let e0 = PhiInput::Character(CharacterCombo::one(1));
        assert_eq!(phi(&e0, &l, &two_rho, 4, Prefactor::Qdim).unwrap(), qdim(&l, &two_rho, 4).unwrap());
        let adj = CharacterCombo::adjoint(&l);
        let v = exp_star(&adj, &l, &CartanVector::rho(1), 4);
        assert_eq!(v.coeff_strings(), ["3", "0", "1", "0", "1/12"]);
    }
}
