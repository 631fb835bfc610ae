//! Crossings between curves in the quotient, computed on lifts.

use std::collections::BTreeMap;

use num::{Signed, Zero};

use super::curve::{Edge, EdgeGeom, EdgeRef};
use super::{Curve, Deck, GeomError, Surface, Vec2};
use crate::rational::{ceil_i64, floor_i64, Rat};

/// How an edge and a translate of another edge meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeMeet {
    /// One common point at parameters `s` (first edge) and `t` (translated second edge).
    Point { point: Vec2, s: Rat, t: Rat },
    /// Collinear overlap of positive length.
    Overlap,
}

/// A transverse crossing between two curves, located on base lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCrossing {
    /// Canonical representative of the crossing in the quotient.
    pub point: Vec2,
    pub left_edge: EdgeRef,
    pub right_edge: EdgeRef,
    /// Oriented tangent of the left curve at the crossing.
    pub left_dir: Vec2,
    /// Oriented tangent of the right curve at the crossing.
    pub right_dir: Vec2,
}

/// Optional restriction of the search to a horizontal strip `lo ≤ y ≤ hi`.
pub type Strip = Option<(Rat, Rat)>;

fn meet_lines(e: &EdgeGeom, f: &EdgeGeom) -> Option<EdgeMeet> {
    let denom = e.dir.cross(&f.dir);
    let w = &f.origin - &e.origin;
    if denom.is_zero() {
        if !w.cross(&e.dir).is_zero() {
            return None;
        }
        // Collinear: express f's parameter range on e's parameter.
        let len = e.dir.dot(&e.dir);
        let off = w.dot(&e.dir) / &len;
        let ratio = f.dir.dot(&e.dir) / &len;
        let map = |t: &Option<Rat>| t.as_ref().map(|t| &off + &ratio * t);
        let (a, b) = (map(&f.lo), map(&f.hi));
        let (flo, fhi) = if ratio.is_positive() { (a, b) } else { (b, a) };
        let lo = max_opt(e.lo.clone(), flo);
        let hi = min_opt(e.hi.clone(), fhi);
        return match (&lo, &hi) {
            (Some(l), Some(h)) if l > h => None,
            (Some(l), Some(h)) if l == h => {
                let point = e.at(l);
                let t = (&point - &f.origin).dot(&f.dir) / f.dir.dot(&f.dir);
                Some(EdgeMeet::Point { point, s: l.clone(), t })
            }
            _ => Some(EdgeMeet::Overlap),
        };
    }
    let s = w.cross(&f.dir) / &denom;
    let t = w.cross(&e.dir) / &denom;
    if !e.contains_param(&s) || !f.contains_param(&t) {
        return None;
    }
    Some(EdgeMeet::Point { point: e.at(&s), s, t })
}

fn max_opt(a: Option<Rat>, b: Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x > y { x } else { y }),
        (x, None) | (None, x) => x,
    }
}

fn min_opt(a: Option<Rat>, b: Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x < y { x } else { y }),
        (x, None) | (None, x) => x,
    }
}

/// All deck translations `d` with `e ∩ (f + d) ≠ ∅`, with the meet.
pub fn edge_meets(surface: Surface, e: &EdgeGeom, f: &EdgeGeom) -> Result<Vec<(Deck, EdgeMeet)>, GeomError> {
    match surface {
        Surface::Plane => Ok(meet_lines(e, f).map(|m| (Deck::zero(), m)).into_iter().collect()),
        Surface::Torus => {
            let (exl, exh) = e.x_range();
            let (eyl, eyh) = e.y_range();
            let (fxl, fxh) = f.x_range();
            let (fyl, fyh) = f.y_range();
            let bounds = [exl, exh, eyl, eyh, fxl, fxh, fyl, fyh];
            if bounds.iter().any(Option::is_none) {
                return Err(GeomError::InvalidCurve("unbounded edge on a compact surface".into()));
            }
            let [exl, exh, eyl, eyh, fxl, fxh, fyl, fyh] = bounds.map(Option::unwrap);
            let decks = surface.decks_in(
                (ceil_i64(&(&exl - &fxh)), floor_i64(&(&exh - &fxl))),
                (ceil_i64(&(&eyl - &fyh)), floor_i64(&(&eyh - &fyl))),
            );
            Ok(decks.into_iter().filter_map(|d| meet_lines(e, &f.translated(d)).map(|m| (d, m))).collect())
        }
        Surface::Cylinder => {
            let (eyl, eyh) = e.y_range();
            let (fyl, fyh) = f.y_range();
            let lo = max_opt(eyl, fyl);
            let hi = min_opt(eyh, fyh);
            if let (Some(l), Some(h)) = (&lo, &hi) {
                if l > h {
                    return Ok(Vec::new());
                }
            }
            match (lo, hi) {
                (Some(l), Some(h)) => {
                    let y = |v: &Vec2| v.y.clone();
                    let (Some(ec), Some(fc)) = (e.clip(y, &l, &h), f.clip(y, &l, &h)) else {
                        return Ok(Vec::new());
                    };
                    let (Some(exl), Some(exh)) = ec.x_range() else { unreachable!() };
                    let (Some(fxl), Some(fxh)) = fc.x_range() else { unreachable!() };
                    let decks = surface.decks_in((ceil_i64(&(&exl - &fxh)), floor_i64(&(&exh - &fxl))), (0, 0));
                    Ok(decks.into_iter().filter_map(|d| meet_lines(e, &f.translated(d)).map(|m| (d, m))).collect())
                }
                _ => {
                    // Unbounded common height range: only parallel edges can meet finitely often.
                    if !e.dir.cross(&f.dir).is_zero() {
                        return Err(GeomError::InfiniteIntersection);
                    }
                    // Parallel: at most one translate is collinear.
                    let w = &f.origin - &e.origin;
                    let c = w.cross(&e.dir);
                    if e.dir.y.is_zero() {
                        return Ok(Vec::new());
                    }
                    // (w + (m, 0)) × dir = c + m·dir.y = 0
                    let m = -(&c / &e.dir.y);
                    if !m.is_integer() {
                        return Ok(Vec::new());
                    }
                    let d = Deck(i64::try_from(m.to_integer()).expect("deck in range"), 0);
                    Ok(meet_lines(e, &f.translated(d)).map(|x| (d, x)).into_iter().collect())
                }
            }
        }
    }
}

fn restrict(edge: &Edge, strip: &Strip) -> Option<EdgeGeom> {
    match strip {
        None => Some(edge.geom.clone()),
        Some((lo, hi)) => edge.geom.clip(|v| v.y.clone(), lo, hi),
    }
}

fn is_start(s: &Rat, original: &EdgeGeom) -> bool {
    original.lo.as_ref().is_some_and(|lo| s == lo)
}

/// Transverse crossings of `left` and `right` in the quotient, in canonical order.
///
/// Each edge is half-open (start included, end excluded), so a crossing at a
/// straight vertex is reported once; a crossing at a genuine corner is an error.
pub fn crossings(surface: Surface, left: &Curve, right: &Curve, strip: &Strip) -> Result<Vec<RawCrossing>, GeomError> {
    let le = left.edges();
    let re = right.edges();
    let mut found: BTreeMap<Vec2, RawCrossing> = BTreeMap::new();
    for e in &le {
        let Some(eg) = restrict(e, strip) else { continue };
        for f in &re {
            let Some(fg) = restrict(f, strip) else { continue };
            for (_, m) in edge_meets(surface, &eg, &fg)? {
                match m {
                    EdgeMeet::Overlap => {
                        return Err(GeomError::NonTransverse {
                            left: left.name.clone(),
                            right: right.name.clone(),
                            at: surface.canonical(&eg.origin).to_string(),
                        })
                    }
                    EdgeMeet::Point { point, s, t } => {
                        if is_end_param(&e.geom, &s) || is_end_param(&f.geom, &t) {
                            continue;
                        }
                        let canon = surface.canonical(&point);
                        if (is_start(&s, &e.geom) && e.start_is_corner) || (is_start(&t, &f.geom) && f.start_is_corner) {
                            return Err(GeomError::VertexIncidence {
                                left: left.name.clone(),
                                right: right.name.clone(),
                                at: canon.to_string(),
                            });
                        }
                        let ld = left.edge_dir(e.at);
                        let rd = right.edge_dir(f.at);
                        if ld.cross(&rd).is_zero() {
                            return Err(GeomError::NonTransverse {
                                left: left.name.clone(),
                                right: right.name.clone(),
                                at: canon.to_string(),
                            });
                        }
                        found.entry(canon.clone()).or_insert(RawCrossing {
                            point: canon,
                            left_edge: e.at,
                            right_edge: f.at,
                            left_dir: ld,
                            right_dir: rd,
                        });
                    }
                }
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Checks that a curve is embedded in the quotient.
pub fn check_embedded(surface: Surface, curve: &Curve) -> Result<(), GeomError> {
    let edges = curve.edges();
    let bad = |at: &Vec2| GeomError::NotEmbedded { curve: curve.name.clone(), at: surface.canonical(at).to_string() };
    for (i, e) in edges.iter().enumerate() {
        for f in edges.iter().skip(i) {
            for (d, m) in edge_meets(surface, &e.geom, &f.geom)? {
                let same_edge = e.at == f.at;
                match m {
                    EdgeMeet::Overlap => {
                        if same_edge && d.is_zero() {
                            continue;
                        }
                        return Err(bad(&e.geom.origin));
                    }
                    EdgeMeet::Point { point, s, t } => {
                        if same_edge && d.is_zero() {
                            continue;
                        }
                        if adjacent_touch(curve, e, f, d, &s, &t) {
                            continue;
                        }
                        return Err(bad(&point));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Whether the meet is the shared vertex of consecutive edges.
fn adjacent_touch(curve: &Curve, e: &Edge, f: &Edge, d: Deck, s: &Rat, t: &Rat) -> bool {
    if e.at.component != f.at.component {
        return false;
    }
    let comp = &curve.components[e.at.component];
    // e end meets f start, with f translated by d.
    if let Some((n, shift)) = comp.next_edge(e.at.edge) {
        if n == f.at.edge && shift == d && is_end_param(&e.geom, s) && is_start(t, &f.geom) {
            return true;
        }
    }
    // f end (translated) meets e start.
    if let Some((n, shift)) = comp.next_edge(f.at.edge) {
        if n == e.at.edge && shift == d.neg() && is_end_param(&f.geom, t) && is_start(s, &e.geom) {
            return true;
        }
    }
    false
}

fn is_end_param(g: &EdgeGeom, s: &Rat) -> bool {
    g.hi.as_ref().is_some_and(|hi| s == hi)
}

/// Deck translations that can bring the edge `g` over the point `p`.
fn candidate_decks(surface: Surface, g: &EdgeGeom, p: &Vec2) -> Vec<Deck> {
    if surface == Surface::Plane {
        return vec![Deck::zero()];
    }
    let clipped = match surface {
        Surface::Cylinder => g.clip(|v| v.y.clone(), &p.y, &p.y),
        _ => Some(g.clone()),
    };
    let Some(c) = clipped else { return Vec::new() };
    let (Some(xl), Some(xh)) = c.x_range() else { return Vec::new() };
    let (yl, yh) = c.y_range();
    let (yl, yh) = (yl.unwrap_or_else(|| p.y.clone()), yh.unwrap_or_else(|| p.y.clone()));
    surface.decks_in(
        (ceil_i64(&(&p.x - &xh)), floor_i64(&(&p.x - &xl))),
        (ceil_i64(&(&p.y - &yh)), floor_i64(&(&p.y - &yl))),
    )
}

/// Whether the quotient point `p` lies on `curve`.
pub fn curve_contains(surface: Surface, curve: &Curve, p: &Vec2) -> bool {
    curve.edges().iter().any(|e| candidate_decks(surface, &e.geom, p).into_iter().any(|d| on_edge(&e.geom.translated(d), p)))
}

/// The lifted edge of `curve` through the plane point `p`, as `(edge, deck, parameter)`.
///
/// Edges are half-open, so a point at a vertex is reported on the edge it starts.
pub fn lift_point(surface: Surface, curve: &Curve, p: &Vec2) -> Option<(EdgeRef, Deck, Rat)> {
    for e in curve.edges() {
        for d in candidate_decks(surface, &e.geom, p) {
            let g = e.geom.translated(d);
            let w = p - &g.origin;
            if !w.cross(&g.dir).is_zero() {
                continue;
            }
            let s = w.dot(&g.dir) / g.dir.dot(&g.dir);
            if g.contains_param(&s) && !is_end_param(&g, &s) {
                return Some((e.at, d, s));
            }
        }
    }
    None
}

fn on_edge(g: &EdgeGeom, p: &Vec2) -> bool {
    let w = p - &g.origin;
    if !w.cross(&g.dir).is_zero() {
        return false;
    }
    let s = w.dot(&g.dir) / g.dir.dot(&g.dir);
    g.contains_param(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::curve::Component;
    use crate::rational::rat;

    fn torus_line(name: &str, base: (i64, i64), class: (i64, i64)) -> Curve {
        Curve::line(name, Surface::Torus, Vec2::ints(base.0, base.1), Vec2::ints(class.0, class.1)).unwrap()
    }

    #[test]
    fn torus_lines_cross_det_many_times() {
        let a = torus_line("a", (0, 0), (1, 0));
        let b = Curve::line("b", Surface::Torus, Vec2::new(rat(1, 3), rat(1, 5)), Vec2::ints(1, 2)).unwrap();
        let x = crossings(Surface::Torus, &a, &b, &None).unwrap();
        assert_eq!(x.len(), 2);
        let c = Curve::line("c", Surface::Torus, Vec2::new(rat(1, 7), rat(1, 2)), Vec2::ints(1, 0)).unwrap();
        assert!(crossings(Surface::Torus, &a, &c, &None).unwrap().is_empty());
    }

    #[test]
    fn identical_lines_are_not_transverse() {
        let a = torus_line("a", (0, 0), (1, 0));
        let b = torus_line("b", (0, 0), (1, 0));
        assert!(matches!(crossings(Surface::Torus, &a, &b, &None), Err(GeomError::NonTransverse { .. })));
    }

    #[test]
    fn corner_on_curve_is_vertex_incidence() {
        let a = torus_line("a", (0, 0), (1, 0));
        let z = Curve::new(
            "z",
            vec![Component::Loop { vertices: vec![Vec2::ints(0, 0), Vec2::new(rat(1, 2), rat(1, 4))], monodromy: Deck(1, 0) }],
        )
        .unwrap();
        assert!(matches!(crossings(Surface::Torus, &a, &z, &None), Err(GeomError::VertexIncidence { .. })));
    }

    #[test]
    fn self_crossing_loop_is_rejected() {
        let bow = Curve::new(
            "bow",
            vec![Component::Loop {
                vertices: vec![Vec2::ints(0, 0), Vec2::ints(2, 2), Vec2::ints(2, 0), Vec2::ints(0, 2)],
                monodromy: Deck(0, 0),
            }],
        )
        .unwrap();
        assert!(check_embedded(Surface::Plane, &bow).is_err());
        let sq = Curve::new(
            "sq",
            vec![Component::Loop {
                vertices: vec![Vec2::ints(0, 0), Vec2::ints(2, 0), Vec2::ints(2, 2), Vec2::ints(0, 2)],
                monodromy: Deck(0, 0),
            }],
        )
        .unwrap();
        assert!(check_embedded(Surface::Plane, &sq).is_ok());
        assert!(check_embedded(Surface::Torus, &torus_line("l", (0, 0), (2, 3))).is_ok());
    }

    #[test]
    fn point_membership() {
        let l = Curve::line("l", Surface::Torus, Vec2::ints(0, 0), Vec2::ints(1, 1)).unwrap();
        assert!(curve_contains(Surface::Torus, &l, &Vec2::new(rat(1, 3), rat(1, 3))));
        assert!(!curve_contains(Surface::Torus, &l, &Vec2::new(rat(1, 3), rat(1, 2))));
        let v = Curve::line("v", Surface::Cylinder, Vec2::ints(0, 0), Vec2::ints(0, 1)).unwrap();
        assert!(curve_contains(Surface::Cylinder, &v, &Vec2::new(rat(0, 1), rat(7, 1))));
        let (e, d, s) = lift_point(Surface::Torus, &l, &Vec2::new(rat(7, 3), rat(4, 3))).unwrap();
        assert_eq!((e.edge, d, s), (0, Deck(2, 1), rat(1, 3)));
    }

    #[test]
    fn cylinder_sloped_lines_need_a_strip() {
        let l = Curve::line("l", Surface::Cylinder, Vec2::ints(0, 0), Vec2::ints(0, 1)).unwrap();
        let m = Curve::line("m", Surface::Cylinder, Vec2::ints(0, 0), Vec2::ints(-2, 1)).unwrap();
        assert_eq!(crossings(Surface::Cylinder, &l, &m, &None), Err(GeomError::InfiniteIntersection));
        let strip = Some((rat(-5, 4), rat(5, 4)));
        let x = crossings(Surface::Cylinder, &l, &m, &strip).unwrap();
        assert_eq!(x.len(), 5);
    }
}
