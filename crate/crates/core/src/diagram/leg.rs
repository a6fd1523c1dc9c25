use std::fmt;

use super::canonical::{canonical_order, components};
use super::{rotate, Diagram};
use crate::error::{Error, Result};

/// A unitrivalent graph. Edges are unoriented pairs of darts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LegDiagram {
    trivalent: usize,
    legs: usize,
    edges: Vec<[usize; 2]>,
    /// Closed circles without vertices.
    loops: usize,
}

impl LegDiagram {
    pub fn new(trivalent: usize, legs: usize, edges: Vec<[usize; 2]>, loops: usize) -> Result<Self> {
        let darts = 3 * trivalent + legs;
        let mut used = vec![false; darts];
        for e in &edges {
            for &d in e {
                if d >= darts || std::mem::replace(&mut used[d], true) {
                    return Err(Error::InvalidDiagram(format!("dart {d} is missing or used twice")));
                }
            }
        }
        if used.iter().any(|u| !u) {
            return Err(Error::InvalidDiagram("every dart must belong to an edge".into()));
        }
        if !(trivalent + legs).is_multiple_of(2) {
            return Err(Error::InvalidDiagram("odd vertex count".into()));
        }
        Ok(Self {
            trivalent,
            legs,
            edges,
            loops,
        })
    }

    /// The planar theta graph: opposite cyclic orders at its two vertices.
    pub fn theta() -> Self {
        Self::new(2, 0, vec![[0, 3], [1, 5], [2, 4]], 0).unwrap()
    }

    /// Two legs joined by an edge.
    pub fn strut() -> Self {
        Self::new(0, 2, vec![[0, 1]], 0).unwrap()
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn dart_count(&self) -> usize {
        3 * self.trivalent + self.legs
    }

    pub fn is_leg_dart(&self, d: usize) -> bool {
        d >= 3 * self.trivalent
    }

    pub(crate) fn sigma(&self) -> Vec<usize> {
        (0..self.dart_count())
            .map(|d| if self.is_leg_dart(d) { d } else { rotate(d) })
            .collect()
    }

    pub(crate) fn alpha(&self) -> Vec<usize> {
        let mut a = vec![0; self.dart_count()];
        for &[x, y] in &self.edges {
            a[x] = y;
            a[y] = x;
        }
        a
    }

    /// Connected components, each canonicalized; isolated loops become
    /// separate loop-only diagrams.
    pub fn connected_components(&self) -> Vec<LegDiagram> {
        let sigma = self.sigma();
        let alpha = self.alpha();
        let mut out = Vec::new();
        for comp in components(&sigma, &alpha) {
            let mut index = vec![usize::MAX; self.dart_count()];
            let mut tri = Vec::new();
            let mut legs = Vec::new();
            for &d in &comp {
                if self.is_leg_dart(d) {
                    legs.push(d);
                } else if d % 3 == 0 {
                    tri.push(d / 3);
                }
            }
            for (nv, &v) in tri.iter().enumerate() {
                for k in 0..3 {
                    index[3 * v + k] = 3 * nv + k;
                }
            }
            for (nl, &d) in legs.iter().enumerate() {
                index[d] = 3 * tri.len() + nl;
            }
            let edges = self
                .edges
                .iter()
                .filter(|e| index[e[0]] != usize::MAX)
                .map(|e| [index[e[0]], index[e[1]]])
                .collect();
            out.push(LegDiagram::new(tri.len(), legs.len(), edges, 0).unwrap().canonical());
        }
        for _ in 0..self.loops {
            out.push(LegDiagram {
                trivalent: 0,
                legs: 0,
                edges: Vec::new(),
                loops: 1,
            });
        }
        out
    }

    /// Builds a leg diagram from a trivalent skeleton by inserting
    /// `legs_per_edge[i]` legs along edge `i`, which runs from dart
    /// `skeleton[i].0` (tail) to dart `skeleton[i].1` (head). Each inserted
    /// vertex has cyclic order (towards head, towards tail, leg).
    pub fn with_hair(trivalent: usize, skeleton: &[(usize, usize)], legs_per_edge: &[usize], loops: usize) -> Self {
        let extra: usize = legs_per_edge.iter().sum();
        let total_tri = trivalent + extra;
        let leg_base = 3 * total_tri;
        let mut edges = Vec::with_capacity(skeleton.len() + 2 * extra);
        let mut next_vertex = trivalent;
        let mut next_leg = 0;
        for (&(tail, head), &n) in skeleton.iter().zip(legs_per_edge) {
            let mut prev = tail;
            for _ in 0..n {
                let v = next_vertex;
                next_vertex += 1;
                edges.push([prev, 3 * v + 1]);
                edges.push([3 * v + 2, leg_base + next_leg]);
                next_leg += 1;
                prev = 3 * v;
            }
            edges.push([prev, head]);
        }
        Self::new(total_tri, extra, edges, loops).expect("hair insertion keeps darts consistent")
    }
}

/// The wheel with `n` legs: an `n`-cycle of trivalent vertices, each with
/// one leg. `make_wheel(1)` is a single vertex with a self-loop.
pub fn make_wheel(n: usize) -> LegDiagram {
    assert!(n >= 1, "wheels need at least one leg");
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..n {
        let next = (i + 1) % n;
        edges.push([3 * i, 3 * next + 1]);
        edges.push([3 * i + 2, 3 * n + i]);
    }
    LegDiagram::new(n, n, edges, 0).unwrap()
}

impl Diagram for LegDiagram {
    fn empty() -> Self {
        Self {
            trivalent: 0,
            legs: 0,
            edges: Vec::new(),
            loops: 0,
        }
    }

    /// Half the total number of vertices, trivalent and univalent.
    fn degree(&self) -> usize {
        (self.trivalent + self.legs) / 2
    }

    fn trivalent_count(&self) -> usize {
        self.trivalent
    }

    fn canonical(&self) -> Self {
        let sigma = self.sigma();
        let alpha = self.alpha();
        let attr = vec![0; sigma.len()];
        let order = canonical_order(&sigma, &alpha, &attr);
        let mut map = vec![usize::MAX; sigma.len()];
        let mut nv = 0;
        let mut nl = 0;
        for &d in &order {
            if map[d] != usize::MAX {
                continue;
            }
            if self.is_leg_dart(d) {
                map[d] = 3 * self.trivalent + nl;
                nl += 1;
            } else {
                map[d] = 3 * nv;
                map[sigma[d]] = 3 * nv + 1;
                map[sigma[sigma[d]]] = 3 * nv + 2;
                nv += 1;
            }
        }
        let mut edges: Vec<[usize; 2]> = self
            .edges
            .iter()
            .map(|&[x, y]| {
                let (a, b) = (map[x], map[y]);
                [a.min(b), a.max(b)]
            })
            .collect();
        edges.sort_unstable();
        Self {
            trivalent: self.trivalent,
            legs: self.legs,
            edges,
            loops: self.loops,
        }
    }

    fn disjoint_union(&self, other: &Self) -> Self {
        let t = self.trivalent + other.trivalent;
        let remap_self = |d: usize| if d < 3 * self.trivalent { d } else { d - 3 * self.trivalent + 3 * t };
        let remap_other = |d: usize| {
            if d < 3 * other.trivalent {
                d + 3 * self.trivalent
            } else {
                d - 3 * other.trivalent + 3 * t + self.legs
            }
        };
        let mut edges: Vec<[usize; 2]> = self.edges.iter().map(|e| [remap_self(e[0]), remap_self(e[1])]).collect();
        edges.extend(other.edges.iter().map(|e| [remap_other(e[0]), remap_other(e[1])]));
        Self {
            trivalent: t,
            legs: self.legs + other.legs,
            edges,
            loops: self.loops + other.loops,
        }
    }

    fn flip_vertex(&self, v: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.dart_count()).collect();
        perm.swap(3 * v + 1, 3 * v + 2);
        self.permute_darts(&perm)
    }

    fn permute_darts(&self, perm: &[usize]) -> Self {
        Self {
            trivalent: self.trivalent,
            legs: self.legs,
            edges: self.edges.iter().map(|e| [perm[e[0]], perm[e[1]]]).collect(),
            loops: self.loops,
        }
    }

    fn dart_partner(&self, dart: usize) -> usize {
        self.alpha()[dart]
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn edge_darts(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    fn edge_is_plain(&self, _e: usize) -> bool {
        true
    }
}

impl fmt::Display for LegDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::dsl::print_leg("d", self, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_shapes() {
        let w2 = make_wheel(2);
        assert_eq!(w2.trivalent_count(), 2);
        assert_eq!(w2.legs(), 2);
        assert_eq!(w2.degree(), 2);
        let w1 = make_wheel(1);
        assert_eq!((w1.trivalent_count(), w1.legs(), w1.degree()), (1, 1, 1));
        assert!(w1.edges().contains(&[0, 1]));
        let w4 = make_wheel(4);
        assert_eq!((w4.trivalent_count(), w4.legs(), w4.degree()), (4, 4, 4));
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let w = make_wheel(3);
        // relabel the vertices cyclically
        let perm: Vec<usize> = (0..12)
            .map(|d| if d < 9 { (d + 3) % 9 } else { 9 + (d - 9 + 1) % 3 })
            .collect();
        let relabeled = w.permute_darts(&perm);
        assert_eq!(relabeled.canonical(), w.canonical());
        assert_ne!(w.canonical(), make_wheel(4).canonical());
    }

    #[test]
    fn components_split() {
        let two = make_wheel(2).disjoint_union(&LegDiagram::theta());
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(two.degree(), 3);
    }

    #[test]
    fn hair_on_a_loop_is_a_wheel() {
        // a single vertex-free loop has no darts; use theta's edge instead
        let d = LegDiagram::with_hair(2, &[(0, 3), (1, 5), (2, 4)], &[0, 0, 0], 0);
        assert_eq!(d.canonical(), LegDiagram::theta().canonical());
        let d = LegDiagram::with_hair(2, &[(0, 3), (1, 5), (2, 4)], &[2, 0, 1], 0);
        assert_eq!(d.degree(), 4);
        assert_eq!(d.legs(), 3);
    }

    #[test]
    fn rejects_bad_darts() {
        assert!(LegDiagram::new(1, 0, vec![[0, 1]], 0).is_err());
        assert!(LegDiagram::new(1, 1, vec![[0, 1], [1, 2]], 0).is_err());
    }
}
