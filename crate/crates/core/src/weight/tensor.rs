//! Sparse tensors over a coefficient ring and a greedy contraction planner.

use std::collections::HashMap;
use std::fmt::Debug;

use num_traits::Zero;

use crate::algebra::{HSeries, Rational};
use crate::character::CharacterCombo;

/// Coefficient ring of a tensor network.
pub trait Coeff: Clone + Debug {
    fn vanishes(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, x: &Rational) -> Self;
}

impl Coeff for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, x: &Rational) -> Self {
        self * x
    }
}

impl Coeff for HSeries {
    fn vanishes(&self) -> bool {
        HSeries::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_assign_ref(other);
    }
    fn mul(&self, other: &Self) -> Self {
        HSeries::mul(self, other)
    }
    fn scale(&self, x: &Rational) -> Self {
        HSeries::scale(self, x)
    }
}

impl Coeff for CharacterCombo {
    fn vanishes(&self) -> bool {
        CharacterCombo::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        CharacterCombo::add_assign(self, other);
    }
    fn mul(&self, other: &Self) -> Self {
        CharacterCombo::mul(self, other)
    }
    fn scale(&self, x: &Rational) -> Self {
        CharacterCombo::scale(self, x)
    }
}

pub type Index = Vec<u16>;

/// A tensor whose axes carry contraction labels; only nonzero entries are
/// stored.
#[derive(Clone, Debug)]
pub struct SparseTensor<C> {
    labels: Vec<u32>,
    entries: HashMap<Index, C>,
}

impl<C: Coeff> SparseTensor<C> {
    pub fn new(labels: Vec<u32>) -> Self {
        Self {
            labels,
            entries: HashMap::new(),
        }
    }

    pub fn from_entries<I: IntoIterator<Item = (Index, C)>>(labels: Vec<u32>, entries: I) -> Self {
        let mut t = Self::new(labels);
        for (k, v) in entries {
            t.add(k, v);
        }
        t
    }

    pub fn add(&mut self, index: Index, value: C) {
        debug_assert_eq!(index.len(), self.labels.len());
        if value.vanishes() {
            return;
        }
        match self.entries.get_mut(&index) {
            Some(slot) => {
                slot.add_assign(&value);
                if slot.vanishes() {
                    self.entries.remove(&index);
                }
            }
            None => {
                self.entries.insert(index, value);
            }
        }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// The value of a rank-zero tensor; `None` stands for zero.
    pub fn scalar(&self) -> Option<C> {
        assert!(self.labels.is_empty(), "scalar() on a tensor of rank {}", self.labels.len());
        self.entries.get(&Vec::new()).cloned()
    }

    /// Sums over all labels the two tensors share.
    pub fn contract(&self, other: &Self) -> Self {
        let shared: Vec<(usize, usize)> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| other.labels.iter().position(|m| m == l).map(|j| (i, j)))
            .collect();
        let a_free: Vec<usize> = (0..self.labels.len()).filter(|i| !shared.iter().any(|s| s.0 == *i)).collect();
        let b_free: Vec<usize> = (0..other.labels.len()).filter(|j| !shared.iter().any(|s| s.1 == *j)).collect();
        let labels: Vec<u32> = a_free
            .iter()
            .map(|&i| self.labels[i])
            .chain(b_free.iter().map(|&j| other.labels[j]))
            .collect();
        let mut grouped: HashMap<Index, Vec<(Index, &C)>> = HashMap::new();
        for (k, v) in &other.entries {
            let key: Index = shared.iter().map(|s| k[s.1]).collect();
            let free: Index = b_free.iter().map(|&j| k[j]).collect();
            grouped.entry(key).or_default().push((free, v));
        }
        let mut out = Self::new(labels);
        for (k, v) in &self.entries {
            let key: Index = shared.iter().map(|s| k[s.0]).collect();
            let Some(matches) = grouped.get(&key) else {
                continue;
            };
            let head: Index = a_free.iter().map(|&i| k[i]).collect();
            for (free, w) in matches {
                let mut idx = head.clone();
                idx.extend_from_slice(free);
                out.add(idx, v.mul(w));
            }
        }
        out
    }
}

/// Order in which tensors of a network are merged. Step `(i, j)` contracts
/// tensors `i` and `j` of the growing list; the result is appended.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionPlan {
    pub steps: Vec<(usize, usize)>,
    /// Estimated total number of entry products.
    pub cost: f64,
}

impl ContractionPlan {
    /// Greedy elimination: repeatedly merges the pair sharing a label whose
    /// result has the smallest rank, breaking ties by the estimated work.
    pub fn greedy(shapes: &[(Vec<u32>, usize)], dim: usize) -> Self {
        let mut live: Vec<Option<(Vec<u32>, f64)>> = shapes.iter().map(|(l, n)| Some((l.clone(), *n as f64))).collect();
        let mut steps = Vec::new();
        let mut cost = 0.0;
        let d = dim.max(1) as f64;
        loop {
            let alive: Vec<usize> = (0..live.len()).filter(|&i| live[i].is_some()).collect();
            if alive.len() <= 1 {
                break;
            }
            let mut best: Option<((usize, f64), usize, usize, Vec<u32>, f64)> = None;
            for (x, &i) in alive.iter().enumerate() {
                for &j in &alive[x + 1..] {
                    let (li, ni) = live[i].as_ref().unwrap();
                    let (lj, nj) = live[j].as_ref().unwrap();
                    let shared = li.iter().filter(|l| lj.contains(l)).count();
                    if shared == 0 {
                        continue;
                    }
                    let labels: Vec<u32> = li
                        .iter()
                        .filter(|l| !lj.contains(l))
                        .chain(lj.iter().filter(|l| !li.contains(l)))
                        .copied()
                        .collect();
                    let work = ni * nj / d.powi(shared as i32);
                    let size = work.min(d.powi(labels.len() as i32)).max(1.0);
                    let key = (labels.len(), work);
                    if best.as_ref().is_none_or(|b| key.0 < b.0 .0 || (key.0 == b.0 .0 && key.1 < b.0 .1)) {
                        best = Some((key, i, j, labels, size));
                    }
                }
            }
            let (i, j, labels, size, work) = match best {
                Some((key, i, j, labels, size)) => (i, j, labels, size, key.1),
                None => {
                    // disconnected network: outer product of the two smallest
                    let mut by_size = alive.clone();
                    by_size.sort_by(|a, b| live[*a].as_ref().unwrap().1.total_cmp(&live[*b].as_ref().unwrap().1));
                    let (i, j) = (by_size[0], by_size[1]);
                    let (li, ni) = live[i].clone().unwrap();
                    let (lj, nj) = live[j].clone().unwrap();
                    (i, j, li.into_iter().chain(lj).collect(), ni * nj, ni * nj)
                }
            };
            cost += work.max(1.0);
            live[i] = None;
            live[j] = None;
            live.push(Some((labels, size)));
            steps.push((i, j));
        }
        Self { steps, cost }
    }

    /// Runs the plan; returns the final tensor.
    pub fn execute<C: Coeff>(&self, tensors: Vec<SparseTensor<C>>) -> SparseTensor<C> {
        let mut slots: Vec<Option<SparseTensor<C>>> = tensors.into_iter().map(Some).collect();
        for &(i, j) in &self.steps {
            let a = slots[i].take().expect("plan uses each tensor once");
            let b = slots[j].take().expect("plan uses each tensor once");
            slots.push(Some(a.contract(&b)));
        }
        let mut rest = slots.into_iter().flatten();
        let out = rest.next().unwrap_or_else(|| SparseTensor::new(Vec::new()));
        debug_assert!(rest.next().is_none());
        out
    }
}

/// Plans and contracts a closed network to a scalar (`None` for zero).
pub fn contract_network<C: Coeff>(tensors: Vec<SparseTensor<C>>, dim: usize) -> Option<C> {
    if tensors.iter().any(|t| t.nnz() == 0) {
        return None;
    }
    let shapes: Vec<(Vec<u32>, usize)> = tensors.iter().map(|t| (t.labels.clone(), t.nnz())).collect();
    let plan = ContractionPlan::greedy(&shapes, dim);
    plan.execute(tensors).scalar()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn matrix_chain_trace() {
        // tr(A B) with A = [[1,2],[3,4]], B = [[0,1],[1,0]]
        let a = SparseTensor::from_entries(
            vec![0, 1],
            [(vec![0, 0], rat(1)), (vec![0, 1], rat(2)), (vec![1, 0], rat(3)), (vec![1, 1], rat(4))],
        );
        let b = SparseTensor::from_entries(vec![1, 0], [(vec![0, 1], rat(1)), (vec![1, 0], rat(1))]);
        assert_eq!(contract_network(vec![a, b], 2), Some(rat(5)));
    }

    #[test]
    fn plan_prefers_small_intermediates() {
        // a path x - M - M - M - y: the plan never builds a rank-3 tensor
        let shapes = vec![
            (vec![0], 2),
            (vec![0, 1], 4),
            (vec![1, 2], 4),
            (vec![2, 3], 4),
            (vec![3], 2),
        ];
        let plan = ContractionPlan::greedy(&shapes, 2);
        assert_eq!(plan.steps.len(), 4);
    }

    #[test]
    fn disconnected_product() {
        let a = SparseTensor::from_entries(vec![], [(vec![], rat(3))]);
        let b = SparseTensor::from_entries(vec![], [(vec![], rat(4))]);
        assert_eq!(contract_network(vec![a, b], 1), Some(rat(12)));
    }
}
