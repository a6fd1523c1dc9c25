use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{rat, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// A square Laurent matrix with `A(t)^T = A(t^-1)` and `det A(1) = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMatrixClass {
    size: usize,
    entries: Vec<LaurentPoly>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    size: usize,
    entries: Vec<Vec<String>>,
}

/// Conjugate transpose over the Laurent ring.
fn star(size: usize, m: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(); size * size];
    for i in 0..size {
        for j in 0..size {
            out[j * size + i] = m[i * size + j].bar();
        }
    }
    out
}

fn mat_mul(size: usize, a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(); size * size];
    for i in 0..size {
        for k in 0..size {
            let x = &a[i * size + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..size {
                let prod = x * &b[k * size + j];
                out[i * size + j] = &out[i * size + j] + &prod;
            }
        }
    }
    out
}

/// Fraction-free determinant of a square Laurent matrix.
pub fn laurent_det(size: usize, entries: &[LaurentPoly]) -> LaurentPoly {
    if size == 0 {
        return LaurentPoly::one();
    }
    let mut m: Vec<Vec<LaurentPoly>> = entries.chunks(size).map(<[LaurentPoly]>::to_vec).collect();
    let mut sign = false;
    let mut prev = LaurentPoly::one();
    for k in 0..size {
        let Some(p) = (k..size).find(|&r| !m[r][k].is_zero()) else {
            return LaurentPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

impl HermitianMatrixClass {
    pub fn new(size: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {size}x{size} matrix",
                entries.len()
            )));
        }
        if star(size, &entries) != entries {
            return Err(Error::NotHermitian);
        }
        let m = Self { size, entries };
        let at_one = m.det().eval_at_one();
        if at_one != Rational::one() && at_one != -Rational::one() {
            return Err(Error::NonUnitAtOne(at_one.to_string()));
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::DimensionMismatch("matrix rows must form a square".into()));
        }
        Self::new(size, rows.into_iter().flatten().collect())
    }

    pub fn identity(size: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = LaurentPoly::one();
        }
        Self { size, entries }
    }

    pub fn one_by_one(p: LaurentPoly) -> Result<Self> {
        Self::new(1, vec![p])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.size + j]
    }

    pub fn det(&self) -> LaurentPoly {
        laurent_det(self.size, &self.entries)
    }

    /// `det A` scaled by its sign at `t = 1`, so that it evaluates to 1 there.
    pub fn normalized_det(&self) -> (LaurentPoly, bool) {
        let d = self.det();
        if d.eval_at_one() < Rational::zero() {
            (-&d, true)
        } else {
            (d, false)
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.size + other.size;
        let mut entries = vec![LaurentPoly::zero(); n * n];
        for i in 0..self.size {
            for j in 0..self.size {
                entries[i * n + j] = self.entry(i, j).clone();
            }
        }
        for i in 0..other.size {
            for j in 0..other.size {
                entries[(i + self.size) * n + j + self.size] = other.entry(i, j).clone();
            }
        }
        Self { size: n, entries }
    }

    /// `P A P*` for a square Laurent matrix `P` given row-major; `det P`
    /// must be a unit `±t^k` so the class is preserved.
    pub fn congruence(&self, p: &[LaurentPoly]) -> Result<Self> {
        if p.len() != self.size * self.size {
            return Err(Error::DimensionMismatch("congruence matrix has the wrong size".into()));
        }
        let dp = laurent_det(self.size, p);
        if dp.terms().count() != 1 || !(dp.eval_at_one() == Rational::one() || dp.eval_at_one() == -Rational::one()) {
            return Err(Error::DimensionMismatch("congruence matrix is not invertible over the ring".into()));
        }
        let pa = mat_mul(self.size, p, &self.entries);
        Self::new(self.size, mat_mul(self.size, &pa, &star(self.size, p)))
    }

    /// A seeded random 2x2 class `P diag(q, 1) P*` with `q` symmetric,
    /// `q(1) = 1` and `det P = 1`.
    pub fn random_2x2(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=3);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let q = LaurentPoly::from_terms([(1, rat(sign * m)), (0, rat(1 - 2 * sign * m)), (-1, rat(sign * m))]);
        let small = |rng: &mut ChaCha8Rng| {
            LaurentPoly::from_terms((-1..=1).map(|k| (k, rat(rng.gen_range(-1..=1)))))
        };
        let a = small(&mut rng);
        let b = small(&mut rng);
        let upper = vec![LaurentPoly::one(), a, LaurentPoly::zero(), LaurentPoly::one()];
        let lower = vec![LaurentPoly::one(), LaurentPoly::zero(), b, LaurentPoly::one()];
        let p = mat_mul(2, &upper, &lower);
        let base = Self {
            size: 2,
            entries: vec![q, LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::one()],
        };
        base.congruence(&p).expect("unimodular congruence")
    }

    pub fn to_json(&self) -> String {
        let json = MatrixJson {
            size: self.size,
            entries: self
                .entries
                .chunks(self.size.max(1))
                .take(self.size)
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        };
        serde_json::to_string(&json).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
        if json.entries.len() != json.size || json.entries.iter().any(|r| r.len() != json.size) {
            return Err(Error::Parse(format!("matrix JSON: expected {0}x{0} entries", json.size)));
        }
        let mut entries = Vec::with_capacity(json.size * json.size);
        for row in &json.entries {
            for s in row {
                entries.push(s.parse::<LaurentPoly>()?);
            }
        }
        Self::new(json.size, entries)
    }
}
