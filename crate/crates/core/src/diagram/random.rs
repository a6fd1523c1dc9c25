//! Seeded random diagrams for property tests and verification suites.
//!
//! Trivalent skeletons come from the configuration model: a uniformly random
//! perfect matching of `3V` darts, resampled until the graph is connected
//! (and, when requested, has no bridge). Beads are drawn uniformly from a
//! fixed list, edge orientations by a fair coin.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{make_wheel, BeadDiagram, BeadEdge, Diagram, LegDiagram};
use crate::algebra::RationalBead;

/// Polynomial beads used by the generators.
pub const POLY_BEADS: [&str; 6] = ["1", "t", "t^-1", "t - 1", "2*t - 1", "t^2 - t + 1"];

/// Beads with a non-trivial denominator, invertible at `t = 1`.
pub const RATIONAL_BEADS: [&str; 3] = ["(1)/(2 - t)", "(t)/(t^2 - t + 1)", "(t - 1 + t^-1)/(2*t - 1)"];

pub fn bead_set(names: &[&str]) -> Vec<RationalBead> {
    names.iter().map(|s| s.parse().expect("built-in bead")).collect()
}

fn connected(n: usize, edges: &[[usize; 2]], skip: Option<usize>) -> bool {
    if n == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for (i, &[a, b]) in edges.iter().enumerate() {
        if Some(i) != skip {
            adj[a / 3].push(b / 3);
            adj[b / 3].push(a / 3);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Dart pairing of a random connected trivalent multigraph on `vertices`
/// vertices (even, positive).
pub fn random_trivalent<R: Rng>(rng: &mut R, vertices: usize, bridgeless: bool) -> Vec<[usize; 2]> {
    assert!(vertices > 0 && vertices.is_multiple_of(2), "trivalent graphs need an even vertex count");
    loop {
        let mut darts: Vec<usize> = (0..3 * vertices).collect();
        darts.shuffle(rng);
        let edges: Vec<[usize; 2]> = darts.chunks(2).map(|c| [c[0], c[1]]).collect();
        if !connected(vertices, &edges, None) {
            continue;
        }
        if bridgeless && (0..edges.len()).any(|i| !connected(vertices, &edges, Some(i))) {
            continue;
        }
        return edges;
    }
}

/// A connected bridgeless beaded diagram of the given degree.
pub fn random_bead_diagram<R: Rng>(rng: &mut R, degree: usize, beads: &[RationalBead]) -> BeadDiagram {
    let edges = random_trivalent(rng, 2 * degree, true)
        .into_iter()
        .map(|[a, b]| {
            let (tail, head) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            BeadEdge::new(tail, head, beads.choose(rng).expect("non-empty bead set").clone())
        })
        .collect();
    BeadDiagram::new(2 * degree, edges, 0).expect("configuration model yields a valid diagram")
}

/// A connected leg diagram of degree between 1 and `max_degree`: either a
/// wheel, or a trivalent skeleton with legs inserted along its edges.
pub fn random_leg_diagram<R: Rng>(rng: &mut R, max_degree: usize) -> LegDiagram {
    assert!(max_degree >= 1);
    let degree = rng.gen_range(1..=max_degree);
    if rng.gen_bool(0.25) {
        return make_wheel(rng.gen_range(1..=degree));
    }
    let skeleton_degree = rng.gen_range(1..=degree);
    let skeleton = random_trivalent(rng, 2 * skeleton_degree, false);
    let mut counts = vec![0; skeleton.len()];
    for _ in 0..degree - skeleton_degree {
        counts[rng.gen_range(0..skeleton.len())] += 1;
    }
    let pairs: Vec<(usize, usize)> = skeleton
        .iter()
        .map(|&[a, b]| if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
        .collect();
    LegDiagram::with_hair(2 * skeleton_degree, &pairs, &counts, 0)
}

/// Dart permutation relabeling vertices and rotating each cyclic order.
fn random_dart_perm<R: Rng>(rng: &mut R, vertices: usize, legs: usize) -> Vec<usize> {
    let mut vperm: Vec<usize> = (0..vertices).collect();
    vperm.shuffle(rng);
    let mut lperm: Vec<usize> = (0..legs).collect();
    lperm.shuffle(rng);
    let mut perm = vec![0; 3 * vertices + legs];
    for v in 0..vertices {
        let r = rng.gen_range(0..3);
        for k in 0..3 {
            perm[3 * v + k] = 3 * vperm[v] + (k + r) % 3;
        }
    }
    for l in 0..legs {
        perm[3 * vertices + l] = 3 * vertices + lperm[l];
    }
    perm
}

/// An isomorphic copy with shuffled labels.
pub fn relabel_leg<R: Rng>(rng: &mut R, d: &LegDiagram) -> LegDiagram {
    let perm = random_dart_perm(rng, d.trivalent_count(), d.legs());
    let mut edges: Vec<[usize; 2]> = d
        .edges()
        .iter()
        .map(|&[a, b]| if rng.gen_bool(0.5) { [perm[a], perm[b]] } else { [perm[b], perm[a]] })
        .collect();
    edges.shuffle(rng);
    LegDiagram::new(d.trivalent_count(), d.legs(), edges, d.loops()).unwrap()
}

/// An isomorphic copy with shuffled labels.
pub fn relabel_bead<R: Rng>(rng: &mut R, d: &BeadDiagram) -> BeadDiagram {
    let perm = random_dart_perm(rng, d.vertices(), 0);
    let mut edges: Vec<BeadEdge> = d
        .edges()
        .iter()
        .map(|e| BeadEdge::new(perm[e.tail], perm[e.head], e.bead.clone()))
        .collect();
    edges.shuffle(rng);
    BeadDiagram::new(d.vertices(), edges, d.loops()).unwrap()
}
