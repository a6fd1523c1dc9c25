//! Canonical labeling of graphs with a rotation system.
//!
//! A diagram is encoded by darts (half-edges), the rotation `sigma` around
//! each vertex and the edge involution `alpha`. For a connected diagram an
//! isomorphism preserving rotations is fixed by the image of a single dart,
//! so the lexicographically smallest breadth-first code over all starting
//! darts is a complete invariant. Components are coded separately and
//! sorted.

/// Per-dart code entry: labels of `sigma(x)` and `alpha(x)`, then the dart
/// attribute.
type Code = Vec<(u32, u32, u32)>;

fn bfs_code(start: usize, sigma: &[usize], alpha: &[usize], attr: &[u32], labels: &mut [u32]) -> (Code, Vec<usize>) {
    const UNSET: u32 = u32::MAX;
    let mut order = vec![start];
    labels[start] = 0;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for y in [sigma[x], alpha[x]] {
            if labels[y] == UNSET {
                labels[y] = order.len() as u32;
                order.push(y);
            }
        }
        i += 1;
    }
    let code = order
        .iter()
        .map(|&x| (labels[sigma[x]], labels[alpha[x]], attr[x]))
        .collect();
    for &x in &order {
        labels[x] = UNSET;
    }
    (code, order)
}

/// Darts listed in canonical order. Isomorphic inputs (same attributes)
/// produce orders inducing identical relabeled structures.
pub(crate) fn canonical_order(sigma: &[usize], alpha: &[usize], attr: &[u32]) -> Vec<usize> {
    let n = sigma.len();
    let mut component = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        component[s] = id;
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in [sigma[x], alpha[x]] {
                if component[y] == usize::MAX {
                    component[y] = id;
                    stack.push(y);
                }
            }
        }
        comps.push(members);
    }
    let mut labels = vec![u32::MAX; n];
    let mut coded: Vec<(Code, Vec<usize>)> = comps
        .iter()
        .map(|members| {
            let mut best: Option<(Code, Vec<usize>)> = None;
            for &s in members {
                let cand = bfs_code(s, sigma, alpha, attr, &mut labels);
                if best.as_ref().is_none_or(|b| cand.0 < b.0) {
                    best = Some(cand);
                }
            }
            best.unwrap()
        })
        .collect();
    coded.sort_by(|a, b| a.0.cmp(&b.0));
    coded.into_iter().flat_map(|(_, order)| order).collect()
}

/// Connected components as lists of darts.
pub(crate) fn components(sigma: &[usize], alpha: &[usize]) -> Vec<Vec<usize>> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut members = Vec::new();
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in [sigma[x], alpha[x]] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}
