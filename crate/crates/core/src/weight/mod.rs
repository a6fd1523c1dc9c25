//! Weight systems: state sums of Lie-algebra structure tensors over
//! diagrams, evaluated as sparse tensor contractions.
//!
//! Conventions: a trivalent vertex with cyclic order `(a, b, c)` carries
//! `f_abc = B([e_a, e_b], e_c)`; a plain edge carries the copairing
//! `B^{ab}`; a leg carries `B(x_λ, e_a)`; a beaded edge from dart `a` to
//! dart `b` carries `Σ_c M^a_c B^{cb}` with `M = f(Ad g)` acting at the tail.

mod matrix_part;
mod tensor;

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

pub use matrix_part::{weight_det_part, weight_full, weight_matrix_part, weight_matrix_part_roots};
pub use tensor::{contract_network, Coeff, ContractionPlan, SparseTensor};

use crate::algebra::{rat, HSeries, MatrixSeries, RationalBead, Rational};
use crate::character::{CharacterCombo, WeightVectorLattice};
use crate::diagram::{BeadDiagram, Diagram, DiagramCombo, LegDiagram};
use crate::error::{Error, Result};
use crate::lie::{CartanVector, LieAlgebraData};

type Entries<C> = Vec<(Vec<u16>, C)>;

/// Where each tensor of a network comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorSource {
    Vertex(usize),
    Copairing(usize),
    Bead(usize),
    Leg(usize),
}

fn structure_entries<C, F: Fn(&Rational) -> C>(l: &LieAlgebraData, lift: &F) -> Entries<C> {
    l.structure_entries()
        .iter()
        .map(|(abc, x)| (abc.iter().map(|&i| i as u16).collect(), lift(x)))
        .collect()
}

fn matrix_entries<C, F: Fn(&Rational) -> C>(m: &[Vec<Rational>], lift: &F) -> Entries<C> {
    let mut out = Vec::new();
    for (a, row) in m.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            if !x.is_zero() {
                out.push((vec![a as u16, b as u16], lift(x)));
            }
        }
    }
    out
}

fn tensor<C: Coeff>(labels: Vec<u32>, entries: &Entries<C>) -> SparseTensor<C> {
    SparseTensor::from_entries(labels, entries.iter().cloned())
}

/// Tensor network of a leg diagram, with its sources.
pub fn leg_network<C: Coeff>(
    d: &LegDiagram,
    vertex: &Entries<C>,
    copairing: &Entries<C>,
    leg: &Entries<C>,
) -> (Vec<SparseTensor<C>>, Vec<TensorSource>) {
    let mut tensors = Vec::new();
    let mut sources = Vec::new();
    for v in 0..d.trivalent_count() {
        let base = 3 * v as u32;
        tensors.push(tensor(vec![base, base + 1, base + 2], vertex));
        sources.push(TensorSource::Vertex(v));
    }
    for (i, &[x, y]) in d.edges().iter().enumerate() {
        tensors.push(tensor(vec![x as u32, y as u32], copairing));
        sources.push(TensorSource::Copairing(i));
    }
    for k in 0..d.legs() {
        let dart = 3 * d.trivalent_count() + k;
        tensors.push(tensor(vec![dart as u32], leg));
        sources.push(TensorSource::Leg(k));
    }
    (tensors, sources)
}

/// Tensor network of a beaded diagram given one edge tensor per edge.
pub fn bead_network<C: Coeff>(
    d: &BeadDiagram,
    vertex: &Entries<C>,
    edge: &mut dyn FnMut(&RationalBead) -> Result<Entries<C>>,
) -> Result<(Vec<SparseTensor<C>>, Vec<TensorSource>)> {
    let mut tensors = Vec::new();
    let mut sources = Vec::new();
    for v in 0..d.vertices() {
        let base = 3 * v as u32;
        tensors.push(tensor(vec![base, base + 1, base + 2], vertex));
        sources.push(TensorSource::Vertex(v));
    }
    for (i, e) in d.edges().iter().enumerate() {
        tensors.push(tensor(vec![e.tail as u32, e.head as u32], &edge(&e.bead)?));
        sources.push(if e.bead.is_one() {
            TensorSource::Copairing(i)
        } else {
            TensorSource::Bead(i)
        });
    }
    Ok((tensors, sources))
}

/// Contraction of one leg diagram at `λ`, without the power of `h`.
pub fn weight_lie_diagram(d: &LegDiagram, l: &LieAlgebraData, lambda: &CartanVector) -> Rational {
    LieEvaluator::new(l, lambda).diagram(d)
}

struct LieEvaluator<'a> {
    l: &'a LieAlgebraData,
    vertex: Entries<Rational>,
    copairing: Entries<Rational>,
    leg: Entries<Rational>,
    memo: HashMap<LegDiagram, Rational>,
}

impl<'a> LieEvaluator<'a> {
    fn new(l: &'a LieAlgebraData, lambda: &CartanVector) -> Self {
        let id = |x: &Rational| x.clone();
        let leg = l
            .leg_vector(lambda)
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(a, x)| (vec![a as u16], x))
            .collect();
        Self {
            l,
            vertex: structure_entries(l, &id),
            copairing: matrix_entries(l.copairing(), &id),
            leg,
            memo: HashMap::new(),
        }
    }

    fn component(&mut self, c: &LegDiagram) -> Rational {
        if let Some(v) = self.memo.get(c) {
            return v.clone();
        }
        let value = if c.dart_count() == 0 {
            rat(self.l.dim() as i64).pow(c.loops() as i32)
        } else {
            let (tensors, _) = leg_network(c, &self.vertex, &self.copairing, &self.leg);
            contract_network(tensors, self.l.dim()).unwrap_or_else(Rational::zero)
        };
        self.memo.insert(c.clone(), value.clone());
        value
    }

    fn diagram(&mut self, d: &LegDiagram) -> Rational {
        let mut acc = Rational::one();
        for c in d.connected_components() {
            acc *= self.component(&c);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

/// `W_g`: each diagram of degree `k` contributes `h^k` times its contraction.
pub fn weight_lie(
    d: &DiagramCombo<LegDiagram>,
    l: &LieAlgebraData,
    lambda: &CartanVector,
    order: usize,
) -> Result<HSeries> {
    check_lambda(l, lambda)?;
    let mut eval = LieEvaluator::new(l, lambda);
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (diagram, c) in d.terms() {
        let k = diagram.degree();
        if k > order {
            log::warn!("TruncationExceeded: dropping a degree {k} diagram at order {order}");
            continue;
        }
        coeffs[k] += c * eval.diagram(diagram);
    }
    Ok(HSeries::from_coeffs(coeffs))
}

pub(crate) fn check_lambda(l: &LieAlgebraData, lambda: &CartanVector) -> Result<()> {
    if lambda.rank() != l.rank() {
        return Err(Error::DimensionMismatch(format!(
            "lambda has {} coordinates, {} needs {}",
            lambda.rank(),
            l.name(),
            l.rank()
        )));
    }
    Ok(())
}

/// Edge tensor `Σ_c M^a_c B^{cb}` from a bead matrix.
fn bead_edge_entries<C: Coeff>(m: &dyn Fn(usize, usize) -> Option<C>, l: &LieAlgebraData) -> Entries<C> {
    let dim = l.dim();
    let binv = l.copairing();
    let mut out: BTreeMap<(usize, usize), C> = BTreeMap::new();
    for a in 0..dim {
        for c in 0..dim {
            let Some(mac) = m(a, c) else { continue };
            for (b, x) in binv[c].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let term = mac.scale(x);
                match out.get_mut(&(a, b)) {
                    Some(slot) => slot.add_assign(&term),
                    None => {
                        out.insert((a, b), term);
                    }
                }
            }
        }
    }
    out.into_iter()
        .filter(|(_, v)| !v.vanishes())
        .map(|((a, b), v)| (vec![a as u16, b as u16], v))
        .collect()
}

struct GroupEvaluator<'a, C: Coeff> {
    dim: usize,
    vertex: Entries<C>,
    one: C,
    loop_value: C,
    edges: HashMap<RationalBead, Entries<C>>,
    bead_matrix: Box<dyn FnMut(&RationalBead) -> Result<Entries<C>> + 'a>,
    memo: HashMap<BeadDiagram, Option<C>>,
}

impl<'a, C: Coeff> GroupEvaluator<'a, C> {
    fn component(&mut self, c: &BeadDiagram) -> Result<Option<C>> {
        if let Some(v) = self.memo.get(c) {
            return Ok(v.clone());
        }
        let value = if c.vertices() == 0 {
            let mut acc = self.one.clone();
            for _ in 0..c.loops() {
                acc = acc.mul(&self.loop_value);
            }
            Some(acc)
        } else {
            let edges = &mut self.edges;
            let bead_matrix = &mut self.bead_matrix;
            let mut edge = |b: &RationalBead| -> Result<Entries<C>> {
                if let Some(e) = edges.get(b) {
                    return Ok(e.clone());
                }
                let e = bead_matrix(b)?;
                edges.insert(b.clone(), e.clone());
                Ok(e)
            };
            let (tensors, _) = bead_network(c, &self.vertex, &mut edge)?;
            contract_network(tensors, self.dim)
        };
        self.memo.insert(c.clone(), value.clone());
        Ok(value)
    }

    fn diagram(&mut self, d: &BeadDiagram) -> Result<Option<C>> {
        let mut acc = self.one.clone();
        for c in d.connected_components() {
            match self.component(&c)? {
                Some(v) => acc = acc.mul(&v),
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }
}

fn series_matrix_entries(m: &MatrixSeries, l: &LieAlgebraData) -> Entries<HSeries> {
    let get = |a: usize, c: usize| {
        let x = m.get(a, c);
        (!x.is_zero()).then(|| x.clone())
    };
    bead_edge_entries(&get, l)
}

/// `W_G` at the torus element `e^{hλ}`.
pub fn weight_group(
    d: &DiagramCombo<BeadDiagram>,
    l: &LieAlgebraData,
    lambda: &CartanVector,
    order: usize,
) -> Result<HSeries> {
    check_lambda(l, lambda)?;
    let torus = l.torus_adjoint(lambda, order);
    let lift = |x: &Rational| HSeries::constant(x.clone(), order);
    let mut eval = GroupEvaluator {
        dim: l.dim(),
        vertex: structure_entries(l, &lift),
        one: HSeries::one(order),
        loop_value: lift(&rat(l.dim() as i64)),
        edges: HashMap::new(),
        bead_matrix: Box::new(|b: &RationalBead| Ok(series_matrix_entries(&b.on_matrix(&torus)?, l))),
        memo: HashMap::new(),
    };
    let mut out = HSeries::zero(order);
    for (diagram, c) in d.terms() {
        let k = diagram.degree();
        if k > order {
            log::warn!("TruncationExceeded: dropping a degree {k} diagram at order {order}");
            continue;
        }
        if let Some(v) = eval.diagram(diagram)? {
            out.add_assign_ref(&v.shift(k).scale(c));
        }
    }
    Ok(out)
}

/// Exact character-valued `W_G` for polynomial beads, grouped by degree.
///
/// `Ad(g)` acts on the root space of `α` as `e_α` and trivially on the
/// Cartan subalgebra, so a bead `f` acts as `f(e_α)` and `f(1)`.
pub fn weight_group_exact(
    d: &DiagramCombo<BeadDiagram>,
    l: &LieAlgebraData,
) -> Result<BTreeMap<usize, CharacterCombo>> {
    for (diagram, _) in d.terms() {
        if let Some(e) = diagram.edges().iter().find(|e| !e.bead.is_polynomial()) {
            return Err(Error::BeadObstruction(format!(
                "exact mode needs polynomial beads, found {}",
                e.bead
            )));
        }
    }
    let rank = l.rank();
    let lift = |x: &Rational| CharacterCombo::constant(x.clone(), rank);
    let (p, pinv) = l.eigenbasis();
    let bead_matrix = |b: &RationalBead| -> Result<Entries<CharacterCombo>> {
        let poly = b.as_polynomial().expect("checked above");
        let mut diag: Vec<CharacterCombo> = vec![lift(&poly.eval_at_one()); rank];
        for r in l.roots() {
            diag.push(CharacterCombo::from_terms(
                poly.terms()
                    .map(|(k, c)| (WeightVectorLattice(r.values.iter().map(|v| k * v).collect()), c.clone())),
            ));
        }
        let dim = l.dim();
        let mut m = vec![vec![CharacterCombo::zero(); dim]; dim];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for (k, dk) in diag.iter().enumerate() {
                    let c = &p[i][k] * &pinv[k][j];
                    if !c.is_zero() {
                        slot.add_assign(&dk.scale(&c));
                    }
                }
            }
        }
        let get = |a: usize, c: usize| (!m[a][c].is_zero()).then(|| m[a][c].clone());
        Ok(bead_edge_entries(&get, l))
    };
    let mut eval = GroupEvaluator {
        dim: l.dim(),
        vertex: structure_entries(l, &lift),
        one: CharacterCombo::one(rank),
        loop_value: lift(&rat(l.dim() as i64)),
        edges: HashMap::new(),
        bead_matrix: Box::new(bead_matrix),
        memo: HashMap::new(),
    };
    let mut out: BTreeMap<usize, CharacterCombo> = BTreeMap::new();
    for (diagram, c) in d.terms() {
        if let Some(v) = eval.diagram(diagram)? {
            out.entry(diagram.degree()).or_default().add_assign(&v.scale(c));
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{as_flip, holonomy_push, ihx_triple, make_wheel, orientation_reverse};

    fn sl(n: usize) -> LieAlgebraData {
        LieAlgebraData::sl(n).unwrap()
    }

    fn combo<D: Diagram>(d: D) -> DiagramCombo<D> {
        DiagramCombo::single(d, None)
    }

    fn bead(s: &str) -> RationalBead {
        s.parse().unwrap()
    }

    /// Sum over colorings: each vertex picks a nonzero structure entry, each
    /// leg a nonzero coordinate, and edges multiply copairing entries.
    fn brute_force(d: &LegDiagram, l: &LieAlgebraData, lambda: &CartanVector) -> Rational {
        let leg = l.leg_vector(lambda);
        let binv = l.copairing();
        let n = d.dart_count();
        let t = d.trivalent_count();
        let mut color = vec![0usize; n];
        fn rec(
            v: usize,
            t: usize,
            acc: Rational,
            color: &mut Vec<usize>,
            d: &LegDiagram,
            l: &LieAlgebraData,
            leg: &[Rational],
            binv: &[Vec<Rational>],
        ) -> Rational {
            if v == t {
                return legs(0, acc, color, d, leg, binv);
            }
            let mut sum = Rational::zero();
            for (abc, x) in l.structure_entries() {
                for k in 0..3 {
                    color[3 * v + k] = abc[k];
                }
                sum += rec(v + 1, t, &acc * x, color, d, l, leg, binv);
            }
            sum
        }
        fn legs(
            k: usize,
            acc: Rational,
            color: &mut Vec<usize>,
            d: &LegDiagram,
            leg: &[Rational],
            binv: &[Vec<Rational>],
        ) -> Rational {
            if k == d.legs() {
                return d.edges().iter().fold(acc, |a, &[x, y]| a * &binv[color[x]][color[y]]);
            }
            let mut sum = Rational::zero();
            for (c, x) in leg.iter().enumerate() {
                if !x.is_zero() {
                    color[3 * d.trivalent_count() + k] = c;
                    sum += legs(k + 1, &acc * x, color, d, leg, binv);
                }
            }
            sum
        }
        let loops = rat(l.dim() as i64).pow(d.loops() as i32);
        rec(0, t, loops, &mut color, d, l, &leg, binv)
    }

    #[test]
    fn theta_and_wheels() {
        let l = sl(2);
        let rho = CartanVector::rho(1);
        let th = weight_lie(&combo(LegDiagram::theta()), &l, &rho, 4).unwrap();
        assert_eq!(th.coeff_strings(), ["0", "12", "0", "0", "0"]);
        let w2 = weight_lie(&combo(make_wheel(2)), &l, &rho, 4).unwrap();
        assert_eq!(w2.coeff_strings(), ["0", "0", "2", "0", "0"]);
        let empty = weight_lie(&DiagramCombo::one(None), &l, &rho, 2).unwrap();
        assert_eq!(empty, HSeries::one(2));
        assert_eq!(weight_lie_diagram(&make_wheel(1), &l, &rho), rat(0));
        for n in 1..=4 {
            let x = CartanVector::from_ints(&[2]);
            let ad = l.ad_matrix(&x);
            let mut power = crate::algebra::matrix::dense::identity(3);
            for _ in 0..n {
                power = crate::algebra::matrix::dense::mul(&power, &ad);
            }
            let tr = crate::algebra::matrix::dense::trace(&power);
            assert_eq!(weight_lie_diagram(&make_wheel(n), &l, &x), tr, "w_{n}");
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let l = sl(2);
        let lambda = CartanVector::from_ints(&[3]);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        for _ in 0..8 {
            let d = crate::diagram::random::random_leg_diagram(&mut rng, 3);
            assert_eq!(weight_lie_diagram(&d, &l, &lambda), brute_force(&d, &l, &lambda), "{d}");
        }
        assert_eq!(brute_force(&LegDiagram::theta(), &l, &lambda), rat(12));
    }

    #[test]
    fn relations_vanish() {
        let l = sl(3);
        let lambda = CartanVector::from_ints(&[1, 2]);
        let d = make_wheel(3);
        let flip = as_flip(&d, 1).unwrap();
        assert!(weight_lie(&flip, &l, &lambda, 6).unwrap().is_zero());
        let ihx = ihx_triple(&d, 0).unwrap();
        assert!(weight_lie(&ihx, &l, &lambda, 6).unwrap().is_zero());
        let th = BeadDiagram::theta([bead("t"), bead("1"), bead("(1)/(2 - t)")]);
        let ihx = ihx_triple(&th, 1).unwrap();
        assert!(weight_group(&ihx, &l, &lambda, 5).unwrap().is_zero());
        let flip = as_flip(&th, 0).unwrap();
        assert!(weight_group(&flip, &l, &lambda, 5).unwrap().is_zero());
    }

    #[test]
    fn group_weight_invariances() {
        let l = sl(2);
        let rho = CartanVector::rho(1);
        let plain = weight_group(&combo(BeadDiagram::plain_theta()), &l, &rho, 4).unwrap();
        assert_eq!(plain.coeff_strings(), ["0", "12", "0", "0", "0"]);
        let th = BeadDiagram::theta([bead("t"), bead("t^2 - t + 1"), bead("(t)/(2 - t)")]);
        let base = weight_group(&combo(th.clone()), &l, &rho, 6).unwrap();
        let pushed = holonomy_push(&th, 0).unwrap();
        assert_eq!(weight_group(&combo(pushed), &l, &rho, 6).unwrap(), base);
        let pushed = holonomy_push(&th, 1).unwrap();
        assert_eq!(weight_group(&combo(pushed), &l, &rho, 6).unwrap(), base);
        for e in 0..3 {
            let rev = orientation_reverse(&th, e).unwrap();
            assert_eq!(weight_group(&combo(rev), &l, &rho, 6).unwrap(), base);
        }
        let zero = weight_group(&combo(th), &l, &CartanVector::zero(1), 6).unwrap();
        let at_one = BeadDiagram::theta([bead("1"), bead("1"), bead("1")]);
        assert_eq!(zero, weight_group(&combo(at_one), &l, &rho, 6).unwrap());
    }

    #[test]
    fn exact_mode() {
        let l = sl(2);
        let ex = weight_group_exact(&combo(BeadDiagram::plain_theta()), &l).unwrap();
        assert_eq!(ex.len(), 1);
        assert_eq!(ex[&1], CharacterCombo::constant(rat(12), 1));
        let th = BeadDiagram::theta([bead("t^2"), bead("1"), bead("1")]);
        assert!(!weight_group_exact(&combo(th), &l).unwrap().is_empty());
        let rational = BeadDiagram::theta([bead("(1)/(2 - t)"), bead("1"), bead("1")]);
        assert!(matches!(weight_group_exact(&combo(rational), &l), Err(Error::BeadObstruction(_))));
    }

    #[test]
    fn matrix_part_paths() {
        let l = sl(2);
        let rho = CartanVector::rho(1);
        let a = HermitianMatrixClassExt::trefoil();
        let outer = weight_matrix_part(&a, &l, &rho, 4).unwrap();
        assert_eq!(outer.coeff_strings(), ["1", "0", "-1", "0", "11/12"]);
        assert_eq!(weight_matrix_part_roots(&a, &l, &rho, 4).unwrap(), outer);
        let zero = weight_matrix_part(&a, &l, &CartanVector::zero(1), 4).unwrap();
        assert_eq!(zero, HSeries::one(4));
    }

    struct HermitianMatrixClassExt;
    impl HermitianMatrixClassExt {
        fn trefoil() -> crate::diagram::HermitianMatrixClass {
            crate::diagram::HermitianMatrixClass::one_by_one("t - 1 + t^-1".parse().unwrap()).unwrap()
        }
    }
}
