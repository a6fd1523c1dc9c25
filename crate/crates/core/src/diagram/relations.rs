use num_traits::One;

use super::{rotate, BeadDiagram, BeadEdge, Diagram, DiagramCombo};
use crate::algebra::{LaurentPoly, RationalBead, Rational};
use crate::error::{Error, Result};

fn check_vertex<D: Diagram>(d: &D, v: usize) -> Result<()> {
    if v >= d.trivalent_count() {
        return Err(Error::InvalidDiagram(format!("vertex {v} is not a trivalent vertex")));
    }
    Ok(())
}

/// `d + d'` where `d'` has the cyclic order at `v` reversed.
pub fn as_flip<D: Diagram>(d: &D, v: usize) -> Result<DiagramCombo<D>> {
    check_vertex(d, v)?;
    Ok(DiagramCombo::from_terms(
        [(Rational::one(), d.clone()), (Rational::one(), d.flip_vertex(v))],
        None,
    ))
}

/// The three-term Jacobi combination at internal edge `e`.
///
/// With cyclic orders `(e, a, b)` and `(e', c, d)` at the two ends, the
/// terms attach the outer half-edges as `(a, b; c, d)`, `(b, c; a, d)` and
/// `(c, a; b, d)`. This is `I - H + X` with the sign of `H` absorbed into
/// its vertex orientation.
pub fn ihx_triple<D: Diagram>(d: &D, e: usize) -> Result<DiagramCombo<D>> {
    if e >= d.edge_count() {
        return Err(Error::InvalidDiagram(format!("no edge {e}")));
    }
    let [x, y] = d.edge_darts(e);
    let tri = 3 * d.trivalent_count();
    if x >= tri || y >= tri || x / 3 == y / 3 {
        return Err(Error::InvalidDiagram(
            "IHX needs an edge joining two distinct trivalent vertices".into(),
        ));
    }
    if !d.edge_is_plain(e) {
        return Err(Error::BeadObstruction("IHX edge must carry the bead 1".into()));
    }
    let slots = [rotate(x), rotate(rotate(x)), rotate(y), rotate(rotate(y))];
    let mut combo = DiagramCombo::zero(None);
    for order in [[0, 1, 2, 3], [1, 2, 0, 3], [2, 0, 1, 3]] {
        let mut perm: Vec<usize> = (0..tri.max(dart_bound(d))).collect();
        for (slot, &source) in order.iter().enumerate() {
            perm[slots[source]] = slots[slot];
        }
        combo.add_term(Rational::one(), d.permute_darts(&perm));
    }
    Ok(combo)
}

fn dart_bound<D: Diagram>(d: &D) -> usize {
    (0..d.edge_count())
        .flat_map(|e| d.edge_darts(e))
        .max()
        .map_or(0, |m| m + 1)
}

fn push_by(d: &BeadDiagram, v: usize, k: i64) -> Result<BeadDiagram> {
    check_vertex(d, v)?;
    let edges = d
        .edges()
        .iter()
        .map(|e| {
            let mut power = 0;
            if e.tail / 3 == v {
                power += k;
            }
            if e.head / 3 == v {
                power -= k;
            }
            BeadEdge::new(e.tail, e.head, e.bead.mul_poly(&LaurentPoly::t_pow(power)))
        })
        .collect();
    Ok(d.with_edges(edges))
}

/// Multiplies beads at `v` by `t` on outgoing and `t^-1` on incoming edges.
pub fn holonomy_push(d: &BeadDiagram, v: usize) -> Result<BeadDiagram> {
    push_by(d, v, 1)
}

/// Inverse of [`holonomy_push`].
pub fn holonomy_pull(d: &BeadDiagram, v: usize) -> Result<BeadDiagram> {
    push_by(d, v, -1)
}

/// Reverses edge `e` and replaces its bead `f(t)` by `f(t^-1)`.
pub fn orientation_reverse(d: &BeadDiagram, e: usize) -> Result<BeadDiagram> {
    let old = d
        .edges()
        .get(e)
        .ok_or_else(|| Error::InvalidDiagram(format!("no edge {e}")))?;
    let mut edges = d.edges().to_vec();
    edges[e] = BeadEdge::new(old.head, old.tail, old.bead.bar());
    Ok(d.with_edges(edges))
}

/// Splits the polynomial bead on `e` into its monomials.
pub fn linearity_split(d: &BeadDiagram, e: usize) -> Result<DiagramCombo<BeadDiagram>> {
    let old = d
        .edges()
        .get(e)
        .ok_or_else(|| Error::InvalidDiagram(format!("no edge {e}")))?;
    let poly = old
        .bead
        .as_polynomial()
        .ok_or_else(|| Error::BeadObstruction(format!("bead {} has a non-trivial denominator", old.bead)))?;
    let mut combo = DiagramCombo::zero(None);
    for (k, c) in poly.terms() {
        let mut edges = d.edges().to_vec();
        edges[e] = BeadEdge::new(old.tail, old.head, RationalBead::from_poly(LaurentPoly::t_pow(k)));
        combo.add_term(c.clone(), d.with_edges(edges));
    }
    Ok(combo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{make_wheel, LegDiagram};

    fn bead(s: &str) -> RationalBead {
        s.parse().unwrap()
    }

    #[test]
    fn push_and_pull() {
        let th = BeadDiagram::plain_theta();
        let p = holonomy_push(&th, 0).unwrap();
        assert!(p.edges().iter().all(|e| e.bead == RationalBead::t()));
        assert_eq!(holonomy_pull(&p, 0).unwrap(), th);
        let p1 = holonomy_push(&th, 1).unwrap();
        assert!(p1.edges().iter().all(|e| e.bead == bead("t^-1")));
    }

    #[test]
    fn reversal_is_an_involution() {
        let th = BeadDiagram::theta([bead("t"), bead("t - 1 + t^-1"), bead("1")]);
        let r = orientation_reverse(&th, 0).unwrap();
        assert_eq!(r.edges()[0].bead, bead("t^-1"));
        assert_eq!((r.edges()[0].tail, r.edges()[0].head), (3, 0));
        let r1 = orientation_reverse(&th, 1).unwrap();
        assert_eq!(r1.edges()[1].bead, th.edges()[1].bead);
        assert_eq!(orientation_reverse(&r, 0).unwrap(), th);
    }

    #[test]
    fn linearity_terms() {
        let th = BeadDiagram::theta([bead("t - 1"), bead("1"), bead("1")]);
        let c = linearity_split(&th, 0).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.coeff(&BeadDiagram::plain_theta()), -Rational::one());
        let one = linearity_split(&BeadDiagram::plain_theta(), 0).unwrap();
        assert_eq!(one, DiagramCombo::single(BeadDiagram::plain_theta(), None));
        let rational = BeadDiagram::theta([bead("(1)/(2 - t)"), bead("1"), bead("1")]);
        assert!(matches!(linearity_split(&rational, 0), Err(Error::BeadObstruction(_))));
    }

    #[test]
    fn ihx_shapes() {
        let c = ihx_triple(&make_wheel(3), 0).unwrap();
        assert!(c.len() <= 3 && !c.is_empty());
        let th = BeadDiagram::theta([bead("t"), bead("1"), bead("1")]);
        assert!(matches!(ihx_triple(&th, 0), Err(Error::BeadObstruction(_))));
        assert!(ihx_triple(&th, 1).is_ok());
        assert!(ihx_triple(&make_wheel(1), 0).is_err());
        let f = as_flip(&LegDiagram::theta(), 0).unwrap();
        assert_eq!(f.len(), 2);
    }
}
