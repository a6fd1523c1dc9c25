//! Semisimple Lie algebra data: structure constants, invariant form, roots,
//! Weyl vector and the adjoint action of the torus.
//!
//! The Cartan subalgebra is always presented by the simple coroots
//! `H_1..H_r`, so the values of a weight on the Cartan basis are its
//! coordinates in the fundamental-weight basis. For `sl_n` the form is the
//! trace form of the defining representation, which gives `(α, α) = 2`.
//! Changing that normalization rescales `h`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::matrix::dense::{self, RMatrix};
use crate::algebra::{parse_rational, rat, HSeries, MatrixSeries, Rational};
use crate::error::{Error, Result};

/// A point of `t*` in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanVector(pub Vec<Rational>);

impl CartanVector {
    pub fn zero(rank: usize) -> Self {
        Self(vec![Rational::zero(); rank])
    }

    /// The Weyl vector: half the sum of the positive roots.
    pub fn rho(rank: usize) -> Self {
        Self(vec![Rational::one(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| rat(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl FromStr for CartanVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(CartanVector)
    }
}

impl fmt::Display for CartanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    /// Values on the Cartan basis, i.e. fundamental-weight coordinates.
    pub values: Vec<i64>,
    /// Coordinates of a root vector in the stored basis.
    pub vector: Vec<Rational>,
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    name: String,
    dim: usize,
    labels: Vec<String>,
    /// `brackets[a][b]` is `[e_a, e_b]` as a sparse coordinate list.
    brackets: Vec<Vec<Vec<(usize, Rational)>>>,
    /// Nonzero entries of `f_abc = B([e_a, e_b], e_c)`.
    structure: Vec<([usize; 3], Rational)>,
    form: RMatrix,
    form_inv: RMatrix,
    cartan: Vec<Vec<Rational>>,
    roots: Vec<Root>,
    cartan_gram_inv: RMatrix,
    simple_roots: Vec<usize>,
    eigenbasis: RMatrix,
    eigenbasis_inv: RMatrix,
    weyl_order: usize,
}

impl LieAlgebraData {
    /// `sl_n` in the basis `H_1..H_{n-1}`, `E_ij` (i < j), `E_ji` (i < j).
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidAlgebra("sl_n needs n >= 2".into()));
        }
        let mut mats: Vec<RMatrix> = Vec::new();
        let mut labels = Vec::new();
        let unit = |i: usize, j: usize| {
            let mut m = vec![vec![Rational::zero(); n]; n];
            m[i][j] = Rational::one();
            m
        };
        for k in 0..n - 1 {
            let mut m = unit(k, k);
            m[k + 1][k + 1] = -Rational::one();
            mats.push(m);
            labels.push(format!("H{}", k + 1));
        }
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        for &(i, j) in &pairs {
            mats.push(unit(i, j));
            labels.push(format!("E{}{}", i + 1, j + 1));
        }
        for &(i, j) in &pairs {
            mats.push(unit(j, i));
            labels.push(format!("E{}{}", j + 1, i + 1));
        }
        let dim = mats.len();
        let coords = |z: &RMatrix| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); dim];
            let mut running = Rational::zero();
            for k in 0..n - 1 {
                running += &z[k][k];
                v[k] = running.clone();
            }
            for (idx, &(i, j)) in pairs.iter().enumerate() {
                v[n - 1 + idx] = z[i][j].clone();
                v[n - 1 + pairs.len() + idx] = z[j][i].clone();
            }
            v
        };
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let ab = dense::mul(&mats[a], &mats[b]);
                let ba = dense::mul(&mats[b], &mats[a]);
                let z: RMatrix = ab
                    .iter()
                    .zip(&ba)
                    .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - y).collect())
                    .collect();
                brackets[a][b] = sparse(&coords(&z));
            }
        }
        let form: RMatrix = (0..dim)
            .map(|a| (0..dim).map(|b| dense::trace(&dense::mul(&mats[a], &mats[b]))).collect())
            .collect();
        let cartan: Vec<Vec<Rational>> = (0..n - 1).map(|k| basis_vector(dim, k)).collect();
        let mut roots = Vec::new();
        for (positive, offset) in [(true, n - 1), (false, n - 1 + pairs.len())] {
            for (idx, &(i, j)) in pairs.iter().enumerate() {
                let (p, q) = if positive { (i, j) } else { (j, i) };
                let values = (0..n - 1)
                    .map(|k| {
                        let hk = |x: usize| -> i64 {
                            (x == k) as i64 - (x == k + 1) as i64
                        };
                        hk(p) - hk(q)
                    })
                    .collect();
                roots.push(Root {
                    values,
                    vector: basis_vector(dim, offset + idx),
                    positive,
                });
            }
        }
        Self::from_parts(format!("sl{n}"), labels, brackets, form, cartan, roots)
    }

    /// Assembles algebra data and derives the form inverse, simple roots,
    /// torus eigenbasis and Weyl group order. Validates the shapes but not
    /// the Lie identities; see [`LieAlgebraData::check_identities`].
    pub fn from_parts(
        name: String,
        labels: Vec<String>,
        brackets: Vec<Vec<Vec<(usize, Rational)>>>,
        form: RMatrix,
        cartan: Vec<Vec<Rational>>,
        roots: Vec<Root>,
    ) -> Result<Self> {
        let dim = labels.len();
        let bad = |m: &str| Error::InvalidAlgebra(m.to_string());
        if brackets.len() != dim || brackets.iter().any(|r| r.len() != dim) {
            return Err(bad("bracket table must be dim x dim"));
        }
        if form.len() != dim || form.iter().any(|r| r.len() != dim) {
            return Err(bad("form must be dim x dim"));
        }
        let rank = cartan.len();
        if cartan.iter().any(|v| v.len() != dim)
            || roots
                .iter()
                .any(|r| r.vector.len() != dim || r.values.len() != rank)
        {
            return Err(bad("Cartan and root vectors must have dim coordinates"));
        }
        if rank + roots.len() != dim {
            return Err(bad("Cartan basis plus root vectors must span the algebra"));
        }
        let form_inv = dense::inverse(&form).ok_or_else(|| bad("form is degenerate"))?;
        let gram: RMatrix = cartan
            .iter()
            .map(|u| cartan.iter().map(|v| bilinear(&form, u, v)).collect())
            .collect();
        let cartan_gram_inv =
            dense::inverse(&gram).ok_or_else(|| bad("form is degenerate on the Cartan subalgebra"))?;
        let mut structure = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                let mut row = vec![Rational::zero(); dim];
                for (d, coeff) in &brackets[a][b] {
                    for (c, slot) in row.iter_mut().enumerate() {
                        if !form[*d][c].is_zero() {
                            *slot += coeff * &form[*d][c];
                        }
                    }
                }
                for (c, v) in row.into_iter().enumerate() {
                    if !v.is_zero() {
                        structure.push(([a, b, c], v));
                    }
                }
            }
        }
        let mut columns: Vec<Vec<Rational>> = cartan.clone();
        columns.extend(roots.iter().map(|r| r.vector.clone()));
        let eigenbasis = dense::transpose(&columns);
        let eigenbasis_inv =
            dense::inverse(&eigenbasis).ok_or_else(|| bad("root vectors and Cartan basis are dependent"))?;

        let positive: Vec<&Root> = roots.iter().filter(|r| r.positive).collect();
        let pos_set: HashSet<&Vec<i64>> = positive.iter().map(|r| &r.values).collect();
        let mut simple_roots = Vec::with_capacity(rank);
        for i in 0..rank {
            let found = roots.iter().position(|r| {
                r.positive
                    && r.values[i] == 2
                    && !positive.iter().any(|p| {
                        let rest: Vec<i64> = r.values.iter().zip(&p.values).map(|(x, y)| x - y).collect();
                        p.values != r.values && pos_set.contains(&rest)
                    })
            });
            simple_roots.push(found.ok_or_else(|| bad("Cartan basis must consist of the simple coroots"))?);
        }
        let mut data = Self {
            name,
            dim,
            labels,
            brackets,
            structure,
            form,
            form_inv,
            cartan,
            roots,
            cartan_gram_inv,
            simple_roots,
            eigenbasis,
            eigenbasis_inv,
            weyl_order: 1,
        };
        let rho: Vec<i64> = vec![1; rank];
        data.weyl_order = data.weyl_orbit(&rho).len();
        Ok(data)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        let n = name
            .strip_prefix("sl")
            .and_then(|n| n.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown algebra `{name}`; expected sl2, sl3, ...")))?;
        Self::sl(n)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.brackets[a][b]
    }

    pub fn structure_entries(&self) -> &[([usize; 3], Rational)] {
        &self.structure
    }

    pub fn form(&self) -> &RMatrix {
        &self.form
    }

    /// The copairing `B^{ab}`.
    pub fn copairing(&self) -> &RMatrix {
        &self.form_inv
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.positive)
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.roots[self.simple_roots[i]]
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl_order
    }

    /// Columns are the Cartan basis followed by the root vectors.
    pub fn eigenbasis(&self) -> (&RMatrix, &RMatrix) {
        (&self.eigenbasis, &self.eigenbasis_inv)
    }

    /// The element `x_λ` of the Cartan subalgebra with `B(x_λ, H) = λ(H)`.
    pub fn cartan_element(&self, lambda: &CartanVector) -> Vec<Rational> {
        let y = dense::mat_vec(&self.cartan_gram_inv, &lambda.0);
        let mut x = vec![Rational::zero(); self.dim];
        for (coef, v) in y.iter().zip(&self.cartan) {
            for (slot, c) in x.iter_mut().zip(v) {
                *slot += coef * c;
            }
        }
        x
    }

    /// Lowered coordinates `λ(e_a) = B(x_λ, e_a)`: the vector a leg carries.
    pub fn leg_vector(&self, lambda: &CartanVector) -> Vec<Rational> {
        let x = self.cartan_element(lambda);
        dense::mat_vec(&self.form, &x)
    }

    /// `(μ, λ)` for weights given in fundamental-weight coordinates.
    pub fn weight_pairing(&self, mu: &[Rational], lambda: &CartanVector) -> Rational {
        let g = dense::mat_vec(&self.cartan_gram_inv, &lambda.0);
        mu.iter().zip(&g).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn int_weight_pairing(&self, mu: &[i64], lambda: &CartanVector) -> Rational {
        let mu: Vec<Rational> = mu.iter().map(|&m| rat(m)).collect();
        self.weight_pairing(&mu, lambda)
    }

    /// Matrix of `ad_{x_λ}` in the stored basis (column `b` is `[x, e_b]`).
    pub fn ad_matrix(&self, lambda: &CartanVector) -> RMatrix {
        let x = self.cartan_element(lambda);
        let mut m = vec![vec![Rational::zero(); self.dim]; self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for b in 0..self.dim {
                for (c, coeff) in &self.brackets[a][b] {
                    m[*c][b] += xa * coeff;
                }
            }
        }
        m
    }

    /// `Ad(e^{hλ})` from the root decomposition: `e^{h(α,λ)}` on each root
    /// space and 1 on the Cartan subalgebra.
    pub fn torus_adjoint(&self, lambda: &CartanVector, order: usize) -> MatrixSeries {
        let mut diag: Vec<HSeries> = vec![HSeries::one(order); self.rank()];
        diag.extend(
            self.roots
                .iter()
                .map(|r| HSeries::exp_linear(&self.int_weight_pairing(&r.values, lambda), order)),
        );
        self.conjugate_diagonal(&diag, order)
    }

    /// `S diag(d) S^{-1}` for the eigenbasis `S`.
    pub fn conjugate_diagonal(&self, diag: &[HSeries], order: usize) -> MatrixSeries {
        let n = self.dim;
        let mut out = MatrixSeries::zero(n, order);
        for i in 0..n {
            for j in 0..n {
                let mut acc = HSeries::zero(order);
                for (k, d) in diag.iter().enumerate() {
                    let c = &self.eigenbasis[i][k] * &self.eigenbasis_inv[k][j];
                    if !c.is_zero() {
                        acc.add_assign_ref(&d.scale(&c));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn root_pairing(&self, root: &Root, lambda: &CartanVector) -> Rational {
        self.int_weight_pairing(&root.values, lambda)
    }

    /// Simple reflection `s_i` on a weight in fundamental coordinates.
    pub fn reflect(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let alpha = &self.simple_root(i).values;
        mu.iter().zip(alpha).map(|(m, a)| m - mu[i] * a).collect()
    }

    pub fn weyl_orbit(&self, mu: &[i64]) -> BTreeSet<Vec<i64>> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(mu.to_vec());
        queue.push_back(mu.to_vec());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let r = self.reflect(i, &w);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// Checks antisymmetry, the Jacobi identity and ad-invariance of the
    /// form on all basis elements.
    pub fn check_identities(&self) -> Result<()> {
        let d = self.dim;
        let dense_bracket = |a: usize, b: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); d];
            for (c, x) in &self.brackets[a][b] {
                v[*c] += x;
            }
            v
        };
        let bracket_vec_basis = |v: &[(usize, Rational)], c: usize, out: &mut Vec<Rational>| {
            for (a, x) in v {
                for (e, y) in &self.brackets[*a][c] {
                    out[*e] += x * y;
                }
            }
        };
        for a in 0..d {
            for b in 0..d {
                let ab = dense_bracket(a, b);
                let ba = dense_bracket(b, a);
                if ab.iter().zip(&ba).any(|(x, y)| x + y != Rational::zero()) {
                    return Err(Error::InvalidAlgebra(format!("bracket not antisymmetric at ({a},{b})")));
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let mut j = vec![Rational::zero(); d];
                    bracket_vec_basis(&self.brackets[a][b], c, &mut j);
                    bracket_vec_basis(&self.brackets[b][c], a, &mut j);
                    bracket_vec_basis(&self.brackets[c][a], b, &mut j);
                    if j.iter().any(|x| !x.is_zero()) {
                        return Err(Error::InvalidAlgebra(format!("Jacobi fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        for a in 0..d {
            if (0..d).any(|b| self.form[a][b] != self.form[b][a]) {
                return Err(Error::InvalidAlgebra("form is not symmetric".into()));
            }
        }
        // B([x,y],z) = B(x,[y,z])
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let lhs = self.brackets[a][b]
                        .iter()
                        .fold(Rational::zero(), |acc, (e, x)| acc + x * &self.form[*e][c]);
                    let rhs = self.brackets[b][c]
                        .iter()
                        .fold(Rational::zero(), |acc, (e, x)| acc + x * &self.form[a][*e]);
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!("form not invariant at ({a},{b},{c})")));
                    }
                }
            }
        }
        for root in &self.roots {
            for (k, h) in self.cartan.iter().enumerate() {
                let mut v = vec![Rational::zero(); d];
                for (a, ha) in h.iter().enumerate() {
                    if ha.is_zero() {
                        continue;
                    }
                    for (b, rb) in root.vector.iter().enumerate() {
                        if rb.is_zero() {
                            continue;
                        }
                        for (e, x) in &self.brackets[a][b] {
                            v[*e] += ha * rb * x;
                        }
                    }
                }
                let expected: Vec<Rational> = root.vector.iter().map(|x| x * rat(root.values[k])).collect();
                if v != expected {
                    return Err(Error::InvalidAlgebra("root vector is not an ad-eigenvector".into()));
                }
            }
        }
        Ok(())
    }

    /// The same algebra in the basis `e'_a = sum_b p[b][a] e_b`.
    pub fn change_basis(&self, p: &RMatrix) -> Result<Self> {
        let d = self.dim;
        let p_inv = dense::inverse(p).ok_or_else(|| Error::InvalidAlgebra("change of basis is singular".into()))?;
        let to_new = |v: &[Rational]| dense::mat_vec(&p_inv, v);
        let mut brackets = vec![vec![Vec::new(); d]; d];
        for a in 0..d {
            for b in 0..d {
                let mut old = vec![Rational::zero(); d];
                for i in 0..d {
                    if p[i][a].is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        if p[j][b].is_zero() {
                            continue;
                        }
                        let w = &p[i][a] * &p[j][b];
                        for (c, x) in &self.brackets[i][j] {
                            old[*c] += &w * x;
                        }
                    }
                }
                brackets[a][b] = sparse(&to_new(&old));
            }
        }
        let form = dense::mul(&dense::transpose(p), &dense::mul(&self.form, p));
        let cartan = self.cartan.iter().map(|v| to_new(v)).collect();
        let roots = self
            .roots
            .iter()
            .map(|r| Root {
                values: r.values.clone(),
                vector: to_new(&r.vector),
                positive: r.positive,
            })
            .collect();
        let labels = (0..d).map(|i| format!("b{i}")).collect();
        Self::from_parts(format!("{}'", self.name), labels, brackets, form, cartan, roots)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let s = |x: &Rational| x.to_string();
        let mut brackets = Vec::new();
        for a in 0..self.dim {
            for b in 0..self.dim {
                for (c, x) in &self.brackets[a][b] {
                    brackets.push((a, b, *c, s(x)));
                }
            }
        }
        AlgebraJson {
            name: self.name.clone(),
            dim: self.dim,
            labels: self.labels.clone(),
            brackets,
            form: self.form.iter().map(|r| r.iter().map(s).collect()).collect(),
            cartan: self.cartan.iter().map(|r| r.iter().map(s).collect()).collect(),
            roots: self
                .roots
                .iter()
                .map(|r| RootJson {
                    values: r.values.clone(),
                    vector: r.vector.iter().map(s).collect(),
                    positive: r.positive,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        let p = |v: &[String]| -> Result<Vec<Rational>> { v.iter().map(|x| parse_rational(x)).collect() };
        if j.labels.len() != j.dim {
            return Err(Error::Parse("labels must have `dim` entries".into()));
        }
        let mut brackets = vec![vec![Vec::new(); j.dim]; j.dim];
        for (a, b, c, x) in &j.brackets {
            if *a >= j.dim || *b >= j.dim || *c >= j.dim {
                return Err(Error::Parse("bracket index out of range".into()));
            }
            let list: &mut Vec<(usize, Rational)> = &mut brackets[*a][*b];
            list.push((*c, parse_rational(x)?));
        }
        let form = j.form.iter().map(|r| p(r)).collect::<Result<_>>()?;
        let cartan = j.cartan.iter().map(|r| p(r)).collect::<Result<_>>()?;
        let roots = j
            .roots
            .iter()
            .map(|r| {
                Ok(Root {
                    values: r.values.clone(),
                    vector: p(&r.vector)?,
                    positive: r.positive,
                })
            })
            .collect::<Result<_>>()?;
        let data = Self::from_parts(j.name.clone(), j.labels.clone(), brackets, form, cartan, roots)?;
        data.check_identities()?;
        Ok(data)
    }
}

/// Interchange format for externally supplied algebras.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `(a, b, c, coeff)`: `[e_a, e_b]` has coefficient `coeff` on `e_c`.
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub form: Vec<Vec<String>>,
    pub cartan: Vec<Vec<String>>,
    pub roots: Vec<RootJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RootJson {
    pub values: Vec<i64>,
    pub vector: Vec<String>,
    pub positive: bool,
}

pub fn build_sl(n: usize) -> Result<LieAlgebraData> {
    LieAlgebraData::sl(n)
}

pub fn ad_matrix(l: &LieAlgebraData, lambda: &CartanVector) -> RMatrix {
    l.ad_matrix(lambda)
}

pub fn torus_adjoint(l: &LieAlgebraData, lambda: &CartanVector, order: usize) -> MatrixSeries {
    l.torus_adjoint(lambda, order)
}

pub fn root_pairing(l: &LieAlgebraData, root: &Root, lambda: &CartanVector) -> Rational {
    l.root_pairing(root, lambda)
}

fn basis_vector(dim: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[k] = Rational::one();
    v
}

fn sparse(v: &[Rational]) -> Vec<(usize, Rational)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn bilinear(form: &RMatrix, u: &[Rational], v: &[Rational]) -> Rational {
    let fv = dense::mat_vec(form, v);
    u.iter().zip(&fv).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}
