use std::collections::BTreeMap;
use std::fmt;

use super::canonical::{canonical_order, components};
use super::{rotate, Diagram};
use crate::algebra::RationalBead;
use crate::error::{Error, Result};

/// An oriented edge from dart `tail` to dart `head` carrying a bead.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeadEdge {
    pub tail: usize,
    pub head: usize,
    pub bead: RationalBead,
}

impl BeadEdge {
    pub fn new(tail: usize, head: usize, bead: RationalBead) -> Self {
        Self { tail, head, bead }
    }

    pub fn plain(tail: usize, head: usize) -> Self {
        Self::new(tail, head, RationalBead::one())
    }
}

/// A trivalent graph with oriented beaded edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeadDiagram {
    vertices: usize,
    edges: Vec<BeadEdge>,
    loops: usize,
}

impl BeadDiagram {
    pub fn new(vertices: usize, edges: Vec<BeadEdge>, loops: usize) -> Result<Self> {
        let darts = 3 * vertices;
        let mut used = vec![false; darts];
        for e in &edges {
            for d in [e.tail, e.head] {
                if d >= darts || std::mem::replace(&mut used[d], true) {
                    return Err(Error::InvalidDiagram(format!("dart {d} is missing or used twice")));
                }
            }
        }
        if used.iter().any(|u| !u) {
            return Err(Error::InvalidDiagram("every half-edge must belong to an edge".into()));
        }
        Ok(Self { vertices, edges, loops })
    }

    /// Planar theta graph; edge `i` runs from slot `i` of the first vertex
    /// to the second vertex, whose cyclic order is reversed.
    pub fn theta(beads: [RationalBead; 3]) -> Self {
        let edges = beads
            .into_iter()
            .enumerate()
            .map(|(i, b)| BeadEdge::new(i, 3 + (3 - i) % 3, b))
            .collect();
        Self::new(2, edges, 0).unwrap()
    }

    pub fn plain_theta() -> Self {
        Self::theta([RationalBead::one(), RationalBead::one(), RationalBead::one()])
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[BeadEdge] {
        &self.edges
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn is_polynomial(&self) -> bool {
        self.edges.iter().all(|e| e.bead.is_polynomial())
    }

    pub(crate) fn with_edges(&self, edges: Vec<BeadEdge>) -> Self {
        Self {
            vertices: self.vertices,
            edges,
            loops: self.loops,
        }
    }

    /// Connected components, each canonicalized; isolated loops become
    /// separate loop-only diagrams.
    pub fn connected_components(&self) -> Vec<BeadDiagram> {
        let n = 3 * self.vertices;
        let sigma: Vec<usize> = (0..n).map(rotate).collect();
        let alpha = self.alpha();
        let mut out = Vec::new();
        for comp in components(&sigma, &alpha) {
            let mut index = vec![usize::MAX; n];
            let verts: Vec<usize> = comp.iter().filter(|&&d| d % 3 == 0).map(|&d| d / 3).collect();
            for (nv, &v) in verts.iter().enumerate() {
                for k in 0..3 {
                    index[3 * v + k] = 3 * nv + k;
                }
            }
            let edges = self
                .edges
                .iter()
                .filter(|e| index[e.tail] != usize::MAX)
                .map(|e| BeadEdge::new(index[e.tail], index[e.head], e.bead.clone()))
                .collect();
            out.push(BeadDiagram::new(verts.len(), edges, 0).unwrap().canonical());
        }
        for _ in 0..self.loops {
            out.push(BeadDiagram {
                vertices: 0,
                edges: Vec::new(),
                loops: 1,
            });
        }
        out
    }

    pub(crate) fn alpha(&self) -> Vec<usize> {
        let mut a = vec![0; 3 * self.vertices];
        for e in &self.edges {
            a[e.tail] = e.head;
            a[e.head] = e.tail;
        }
        a
    }
}

impl Diagram for BeadDiagram {
    fn empty() -> Self {
        Self {
            vertices: 0,
            edges: Vec::new(),
            loops: 0,
        }
    }

    /// Half the number of trivalent vertices.
    fn degree(&self) -> usize {
        self.vertices / 2
    }

    fn trivalent_count(&self) -> usize {
        self.vertices
    }

    fn canonical(&self) -> Self {
        let n = 3 * self.vertices;
        let sigma: Vec<usize> = (0..n).map(rotate).collect();
        let alpha = self.alpha();
        let mut table: BTreeMap<(bool, &RationalBead), u32> = BTreeMap::new();
        for e in &self.edges {
            table.insert((true, &e.bead), 0);
            table.insert((false, &e.bead), 0);
        }
        for (rank, v) in table.values_mut().enumerate() {
            *v = rank as u32;
        }
        let mut attr = vec![0; n];
        for e in &self.edges {
            attr[e.tail] = table[&(true, &e.bead)];
            attr[e.head] = table[&(false, &e.bead)];
        }
        let order = canonical_order(&sigma, &alpha, &attr);
        let mut map = vec![usize::MAX; n];
        let mut nv = 0;
        for &d in &order {
            if map[d] == usize::MAX {
                map[d] = 3 * nv;
                map[sigma[d]] = 3 * nv + 1;
                map[sigma[sigma[d]]] = 3 * nv + 2;
                nv += 1;
            }
        }
        let mut edges: Vec<BeadEdge> = self
            .edges
            .iter()
            .map(|e| BeadEdge::new(map[e.tail], map[e.head], e.bead.clone()))
            .collect();
        edges.sort();
        self.with_edges(edges)
    }

    fn disjoint_union(&self, other: &Self) -> Self {
        let shift = 3 * self.vertices;
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| BeadEdge::new(e.tail + shift, e.head + shift, e.bead.clone())),
        );
        Self {
            vertices: self.vertices + other.vertices,
            edges,
            loops: self.loops + other.loops,
        }
    }

    fn flip_vertex(&self, v: usize) -> Self {
        let mut perm: Vec<usize> = (0..3 * self.vertices).collect();
        perm.swap(3 * v + 1, 3 * v + 2);
        self.permute_darts(&perm)
    }

    fn permute_darts(&self, perm: &[usize]) -> Self {
        self.with_edges(
            self.edges
                .iter()
                .map(|e| BeadEdge::new(perm[e.tail], perm[e.head], e.bead.clone()))
                .collect(),
        )
    }

    fn dart_partner(&self, dart: usize) -> usize {
        self.alpha()[dart]
    }

    fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn edge_darts(&self, e: usize) -> [usize; 2] {
        [self.edges[e].tail, self.edges[e].head]
    }

    fn edge_is_plain(&self, e: usize) -> bool {
        self.edges[e].bead.is_one()
    }
}

impl fmt::Display for BeadDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::dsl::print_bead("d", self, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bead(s: &str) -> RationalBead {
        s.parse().unwrap()
    }

    #[test]
    fn beads_distinguish_canonical_forms() {
        let a = BeadDiagram::theta([bead("t"), bead("1"), bead("1")]);
        let b = BeadDiagram::theta([bead("1"), bead("1"), bead("t")]);
        let c = BeadDiagram::theta([bead("t^-1"), bead("1"), bead("1")]);
        assert_eq!(a.canonical(), b.canonical());
        assert_ne!(a.canonical(), c.canonical());
        assert_eq!(a.degree(), 1);
    }

    #[test]
    fn orientation_matters() {
        let a = BeadDiagram::theta([bead("t"), bead("1"), bead("1")]);
        let rev = a.with_edges(vec![
            BeadEdge::new(3, 0, bead("t")),
            BeadEdge::plain(1, 5),
            BeadEdge::plain(2, 4),
        ]);
        // the theta graph has a symmetry swapping its vertices, so reversing
        // all edges is an isomorphism but reversing one is not
        assert_ne!(a.canonical(), rev.canonical());
    }
}
