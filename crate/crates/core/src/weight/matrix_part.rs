use num_traits::One;

use super::{check_lambda, weight_group};
use crate::algebra::{matrix_det, HSeries, LaurentPoly, Rational};
use crate::diagram::{BeadDiagram, DiagramCombo, HermitianMatrixClass};
use crate::error::{Error, Result};
use crate::lie::{CartanVector, LieAlgebraData};

fn unit_normalized(p: &LaurentPoly) -> Result<LaurentPoly> {
    let at_one = p.eval_at_one();
    if at_one == Rational::one() {
        Ok(p.clone())
    } else if at_one == -Rational::one() {
        Ok(-p)
    } else {
        Err(Error::NonUnitAtOne(at_one.to_string()))
    }
}

/// `det(p(Ad e^{hλ}))^{-1/2}` for a Laurent polynomial with `p(1) = ±1`,
/// through the outer determinant of the substituted adjoint matrix.
pub fn weight_det_part(p: &LaurentPoly, l: &LieAlgebraData, lambda: &CartanVector, order: usize) -> Result<HSeries> {
    check_lambda(l, lambda)?;
    let p = unit_normalized(p)?;
    let m = l.torus_adjoint(lambda, order).laurent_eval(&p)?;
    let det = matrix_det(&m);
    det.sqrt()
        .map_err(|_| Error::SqrtObstruction(det.constant_term().to_string()))?
        .inverse()
}

/// Matrix part of `W_G`, outer-determinant path.
pub fn weight_matrix_part(
    a: &HermitianMatrixClass,
    l: &LieAlgebraData,
    lambda: &CartanVector,
    order: usize,
) -> Result<HSeries> {
    weight_det_part(&a.det(), l, lambda, order)
}

/// Matrix part of `W_G` as `Π_{α>0} 1/p(e^{h(α,λ)})` with `p = ±det A`.
pub fn weight_matrix_part_roots(
    a: &HermitianMatrixClass,
    l: &LieAlgebraData,
    lambda: &CartanVector,
    order: usize,
) -> Result<HSeries> {
    check_lambda(l, lambda)?;
    let p = unit_normalized(&a.det())?;
    let mut acc = HSeries::one(order);
    for r in l.positive_roots() {
        let x = l.root_pairing(r, lambda);
        acc = acc.mul(&p.subst_exponential(&x, order).inverse()?);
    }
    Ok(acc)
}

/// `W_G(A, s)`: matrix part times the diagram part.
pub fn weight_full(
    a: &HermitianMatrixClass,
    s: &DiagramCombo<BeadDiagram>,
    l: &LieAlgebraData,
    lambda: &CartanVector,
    order: usize,
) -> Result<HSeries> {
    Ok(weight_matrix_part(a, l, lambda, order)?.mul(&weight_group(s, l, lambda, order)?))
}
