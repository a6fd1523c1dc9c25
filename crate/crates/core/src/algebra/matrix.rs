//! Square matrices whose entries are truncated `h`-series.

use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::rational::{rat, Rational};
use super::series::HSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSeries {
    dim: usize,
    order: usize,
    entries: Vec<HSeries>,
}

impl MatrixSeries {
    pub fn zero(dim: usize, order: usize) -> Self {
        Self {
            dim,
            order,
            entries: vec![HSeries::zero(order); dim * dim],
        }
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut m = Self::zero(dim, order);
        for i in 0..dim {
            m.entries[i * dim + i] = HSeries::one(order);
        }
        m
    }

    pub fn from_diagonal(diag: Vec<HSeries>) -> Self {
        let dim = diag.len();
        let order = diag.iter().map(HSeries::order).min().unwrap_or(0);
        let mut m = Self::zero(dim, order);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * dim + i] = d.truncate(order);
        }
        m
    }

    /// Builds a matrix from rows; entries are truncated to the smallest order.
    pub fn from_rows(rows: Vec<Vec<HSeries>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("matrix series must be square".into()));
        }
        let order = rows
            .iter()
            .flatten()
            .map(HSeries::order)
            .min()
            .unwrap_or(0);
        let entries = rows.into_iter().flatten().map(|s| s.truncate(order)).collect();
        Ok(Self { dim, order, entries })
    }

    /// A constant rational matrix viewed as a series matrix.
    pub fn from_rational(m: &[Vec<Rational>], order: usize) -> Self {
        let dim = m.len();
        let mut out = Self::zero(dim, order);
        for i in 0..dim {
            for j in 0..dim {
                out.entries[i * dim + j] = HSeries::constant(m[i][j].clone(), order);
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &HSeries {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: HSeries) {
        self.entries[i * self.dim + j] = v.truncate(self.order);
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a + b).truncate(order))
            .collect();
        Self {
            dim: self.dim,
            order,
            entries,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            dim: self.dim,
            order: self.order,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let order = self.order.min(other.order);
        let mut out = Self::zero(n, order);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j].add_assign_ref(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> HSeries {
        let mut acc = HSeries::zero(self.order);
        for i in 0..self.dim {
            acc.add_assign_ref(self.get(i, i));
        }
        acc
    }

    /// Inverse by Gauss-Jordan elimination, pivoting on entries whose
    /// constant term is nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n, self.order);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).constant_term().is_zero())
                .ok_or(Error::SingularDenominator)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p_inv = a.get(col, col).inverse()?;
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.dim {
            self.entries.swap(r1 * self.dim + j, r2 * self.dim + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &HSeries) {
        for j in 0..self.dim {
            let idx = r * self.dim + j;
            self.entries[idx] = self.entries[idx].mul(s);
        }
    }

    /// `row[target] -= factor * row[source]`.
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &HSeries) {
        for j in 0..self.dim {
            let src = self.get(source, j);
            if src.is_zero() {
                continue;
            }
            let delta = factor.mul(src);
            let idx = target * self.dim + j;
            self.entries[idx] = &self.entries[idx] - &delta;
        }
    }

    /// Determinant. Uses elimination with unit pivots when possible and
    /// falls back to the division-free-by-series Faddeev-LeVerrier
    /// recursion otherwise.
    pub fn det(&self) -> HSeries {
        self.det_by_elimination()
            .unwrap_or_else(|| self.det_faddeev_leverrier())
    }

    fn det_by_elimination(&self) -> Option<HSeries> {
        let n = self.dim;
        let mut a = self.clone();
        let mut det = HSeries::one(self.order);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).constant_term().is_zero())?;
            if pivot != col {
                a.swap_rows(col, pivot);
                det = -&det;
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let p_inv = p.inverse().ok()?;
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).mul(&p_inv);
                a.sub_row_multiple(r, col, &factor);
            }
        }
        Some(det)
    }

    pub(crate) fn det_faddeev_leverrier(&self) -> HSeries {
        let n = self.dim;
        if n == 0 {
            return HSeries::one(self.order);
        }
        let id = Self::identity(n, self.order);
        let mut m = Self::zero(n, self.order);
        let mut c = HSeries::one(self.order);
        for k in 1..=n {
            m = self.mul(&m).add(&id.scale_series(&c));
            let am = self.mul(&m);
            c = am.trace().scale(&(-rat(k as i64)).recip());
        }
        if n.is_multiple_of(2) {
            c
        } else {
            -&c
        }
    }

    fn scale_series(&self, s: &HSeries) -> Self {
        Self {
            dim: self.dim,
            order: self.order,
            entries: self.entries.iter().map(|e| e.mul(s)).collect(),
        }
    }

    /// `sum_n M^n / n!` for a matrix with vanishing constant terms.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if self.entries.iter().any(|e| !e.constant_term().is_zero()) {
            return Err(Error::ConstantTermInvalid(
                "matrix exponential needs vanishing constant terms".into(),
            ));
        }
        let mut acc = Self::identity(self.dim, self.order);
        let mut term = acc.clone();
        for k in 1..=self.order {
            term = term.mul(self).scale(&rat(k as i64).recip());
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Evaluates a Laurent polynomial at this matrix. Negative powers need
    /// an invertible matrix.
    pub fn laurent_eval(&self, p: &LaurentPoly) -> Result<Self> {
        let n = self.dim;
        let mut out = Self::zero(n, self.order);
        if p.is_zero() {
            return Ok(out);
        }
        if self.is_diagonal() {
            for i in 0..n {
                let x = self.get(i, i);
                let x_inv = if p.min_exponent().unwrap() < 0 {
                    Some(x.inverse().map_err(|_| Error::SingularDenominator)?)
                } else {
                    None
                };
                let mut acc = HSeries::zero(self.order);
                for (k, c) in p.terms() {
                    let base = if k < 0 { x_inv.as_ref().unwrap() } else { x };
                    acc.add_assign_ref(&base.pow(k.unsigned_abs() as u32).scale(c));
                }
                out.entries[i * n + i] = acc;
            }
            return Ok(out);
        }
        let lo = p.min_exponent().unwrap();
        let hi = p.max_exponent().unwrap();
        let base_neg = if lo < 0 { Some(self.inverse()?) } else { None };
        let mut power = Self::identity(n, self.order);
        for _ in 0..lo.max(0) {
            power = power.mul(self);
        }
        if lo < 0 {
            for _ in 0..(-lo) {
                power = power.mul(base_neg.as_ref().unwrap());
            }
        }
        for k in lo..=hi {
            let c = p.coeff(k);
            if !c.is_zero() {
                out = out.add(&power.scale(&c));
            }
            power = power.mul(self);
        }
        Ok(out)
    }

    /// The constant-term matrix.
    pub fn constant_part(&self) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.get(i, j).constant_term().clone())
                    .collect()
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim, self.order)
    }
}

/// Determinant of a series matrix; see [`MatrixSeries::det`].
pub fn matrix_det(m: &MatrixSeries) -> HSeries {
    m.det()
}

/// Dense rational matrix helpers shared by the Lie data and engines.
pub mod dense {
    use super::*;

    pub type RMatrix = Vec<Vec<Rational>>;

    pub fn identity(n: usize) -> RMatrix {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    }

    pub fn mul(a: &RMatrix, b: &RMatrix) -> RMatrix {
        let n = a.len();
        let m = b.first().map_or(0, Vec::len);
        let mut out = vec![vec![Rational::zero(); m]; n];
        for i in 0..n {
            for (k, bk) in b.iter().enumerate() {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..m {
                    if !bk[j].is_zero() {
                        out[i][j] += &a[i][k] * &bk[j];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(a: &RMatrix) -> RMatrix {
        let n = a.len();
        let m = a.first().map_or(0, Vec::len);
        (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
    }

    pub fn mat_vec(a: &RMatrix, v: &[Rational]) -> Vec<Rational> {
        a.iter()
            .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
            .collect()
    }

    pub fn trace(a: &RMatrix) -> Rational {
        (0..a.len()).fold(Rational::zero(), |acc, i| acc + &a[i][i])
    }

    /// Gauss-Jordan inverse over the rationals.
    pub fn inverse(a: &RMatrix) -> Option<RMatrix> {
        let n = a.len();
        let mut m = a.clone();
        let mut inv = identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            inv.swap(col, pivot);
            let p = m[col][col].recip();
            for j in 0..n {
                m[col][j] *= &p;
                inv[col][j] *= &p;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for j in 0..n {
                    let dm = &f * &m[col][j];
                    m[r][j] -= dm;
                    let di = &f * &inv[col][j];
                    inv[r][j] -= di;
                }
            }
        }
        Some(inv)
    }

    pub fn det(a: &RMatrix) -> Rational {
        let n = a.len();
        let mut m = a.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                m.swap(col, pivot);
                det = -det;
            }
            det *= &m[col][col];
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &m[col][col];
                for j in col..n {
                    let d = &f * &m[col][j];
                    m[r][j] -= d;
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use proptest::prelude::*;

    #[test]
    fn determinant_examples() {
        assert_eq!(matrix_det(&MatrixSeries::identity(3, 5)), HSeries::one(5));
        let p: LaurentPoly = "t - 1 + t^-1".parse().unwrap();
        let diag = MatrixSeries::from_diagonal(vec![
            p.subst_exponential(&rat(1), 4),
            p.subst_exponential(&rat(0), 4),
            p.subst_exponential(&rat(-1), 4),
        ]);
        let base = p.subst_exponential(&rat(1), 4);
        assert_eq!(matrix_det(&diag), base.mul(&base));
    }

    #[test]
    fn faddeev_leverrier_handles_non_unit_pivots() {
        // [[h, 1], [1, h]] has det h^2 - 1 but no unit pivot in the first column's first row.
        let h = HSeries::monomial(rat(1), 1, 4);
        let one = HSeries::one(4);
        let m = MatrixSeries::from_rows(vec![vec![h.clone(), one.clone()], vec![one.clone(), h.clone()]]).unwrap();
        let expected = &h.mul(&h) - &one;
        assert_eq!(m.det(), expected);
        assert_eq!(m.det_faddeev_leverrier(), expected);
        // [[h, h^2], [h, 0]]: no unit pivot anywhere.
        let h2 = HSeries::monomial(rat(1), 2, 4);
        let z = HSeries::zero(4);
        let n = MatrixSeries::from_rows(vec![vec![h.clone(), h2.clone()], vec![h.clone(), z]]).unwrap();
        assert_eq!(n.det(), -&HSeries::monomial(rat(1), 3, 4));
    }

    #[test]
    fn inverse_and_laurent_evaluation() {
        let m = MatrixSeries::from_rows(vec![
            vec![HSeries::exp_linear(&rat(1), 5), HSeries::monomial(rat(2), 1, 5)],
            vec![HSeries::zero(5), HSeries::exp_linear(&rat(-1), 5)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let p: LaurentPoly = "t^2 - 3 + t^-1".parse().unwrap();
        let direct = m.mul(&m).add(&MatrixSeries::identity(2, 5).scale(&rat(-3))).add(&inv);
        assert_eq!(m.laurent_eval(&p).unwrap(), direct);
        let singular = MatrixSeries::zero(2, 3);
        assert_eq!(singular.inverse(), Err(Error::SingularDenominator));
    }

    #[test]
    fn exponential_of_nilpotent() {
        let h = HSeries::monomial(rat(1), 1, 6);
        let m = MatrixSeries::from_diagonal(vec![h.scale(&rat(2)), h.scale(&rat(-1))]);
        let e = m.exp_nilpotent().unwrap();
        assert_eq!(e.get(0, 0), &HSeries::exp_linear(&rat(2), 6));
        assert_eq!(e.get(1, 1), &HSeries::exp_linear(&rat(-1), 6));
    }

    fn arb_matrix() -> impl Strategy<Value = MatrixSeries> {
        prop::collection::vec(prop::collection::vec((-3i64..=3, 1i64..=3), 4), 4).prop_map(|v| {
            let series: Vec<HSeries> = v
                .into_iter()
                .map(|cs| HSeries::from_coeffs(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
                .collect();
            MatrixSeries::from_rows(vec![series[0..2].to_vec(), series[2..4].to_vec()]).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn determinant_is_multiplicative(a in arb_matrix(), b in arb_matrix()) {
            prop_assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
            prop_assert_eq!(a.det_faddeev_leverrier(), a.det());
        }
    }
}
