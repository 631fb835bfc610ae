//! Piecewise-linear Lagrangian surgery at a transverse crossing.
//!
//! Distances are measured in the max-norm, so all chord endpoints stay rational.

use num::{Signed, Zero};

use super::curve::{Component, EdgeRef};
use super::intersect::{check_embedded, edge_meets, EdgeMeet};
use super::{Curve, Deck, GeomError, Surface, Vec2};
use crate::rational::{fmt_rat, int, Rat};

/// Where a crossing sits on a curve.
struct Site {
    at: EdgeRef,
    param: Rat,
    /// Translation applied to the curve's base lift so that it passes through the crossing lift.
    shift: Deck,
}

fn max_norm(v: &Vec2) -> Rat {
    let (x, y) = (v.x.abs(), v.y.abs());
    if x > y {
        x
    } else {
        y
    }
}

fn unit(v: &Vec2) -> Vec2 {
    v.scale(&(int(1) / max_norm(v)))
}

/// Area of the corner triangle cut off by the surgery chord.
pub fn corner_area(u1: &Vec2, u2: &Vec2, eps: &Rat) -> Rat {
    eps * eps * unit(u1).cross(&unit(u2)).abs() / int(2)
}

/// Locates the lift `P` of the quotient point `p` on both curves.
fn locate(surface: Surface, l1: &Curve, l2: &Curve, p: &Vec2) -> Result<(Vec2, Site, Site), GeomError> {
    let target = surface.canonical(p);
    for e in l1.edges() {
        for f in l2.edges() {
            for (d, m) in edge_meets(surface, &e.geom, &f.geom)? {
                let EdgeMeet::Point { point, s, t } = m else { continue };
                if surface.canonical(&point) != target {
                    continue;
                }
                let at_end = |g: &super::curve::EdgeGeom, x: &Rat| g.hi.as_ref() == Some(x);
                if at_end(&e.geom, &s) || at_end(&f.geom, &t) {
                    continue;
                }
                if (s.is_zero() && e.start_is_corner) || (t.is_zero() && f.start_is_corner) {
                    return Err(GeomError::VertexIncidence {
                        left: l1.name.clone(),
                        right: l2.name.clone(),
                        at: target.to_string(),
                    });
                }
                if l1.edge_dir(e.at).cross(&l2.edge_dir(f.at)).is_zero() {
                    return Err(GeomError::NonTransverse {
                        left: l1.name.clone(),
                        right: l2.name.clone(),
                        at: target.to_string(),
                    });
                }
                return Ok((
                    point,
                    Site { at: e.at, param: s, shift: Deck::zero() },
                    Site { at: f.at, param: t, shift: d },
                ));
            }
        }
    }
    Err(GeomError::NotACrossing(target.to_string()))
}

/// Checks that the points at max-distance `eps` on either side stay on the edge.
fn check_room(curve: &Curve, site: &Site, eps: &Rat) -> Result<(), GeomError> {
    let comp = &curve.components[site.at.component];
    let edges = comp.edges(site.at.component);
    let e = &edges[site.at.edge];
    let step = eps / max_norm(&e.geom.dir);
    let next_is_corner = comp.next_edge(site.at.edge).is_some_and(|(n, _)| edges[n].start_is_corner);
    let back_ok = !e.start_is_corner || e.geom.lo.as_ref().is_none_or(|lo| &site.param - &step > *lo);
    let fwd_ok = !next_is_corner || e.geom.hi.as_ref().is_none_or(|hi| &site.param + &step < *hi);
    let periodic_ok = !matches!(comp, Component::Loop { vertices, .. } if vertices.len() == 1) || &step * int(2) < int(1);
    if back_ok && fwd_ok && periodic_ok {
        Ok(())
    } else {
        Err(GeomError::EpsTooLarge(format!("eps {} exceeds the room on `{}`", fmt_rat(eps), curve.name)))
    }
}

/// Vertices strictly between `P` and `P ± monodromy` when walking a loop in direction `sigma`.
fn loop_walk(vertices: &[Vec2], monodromy: Deck, edge: usize, sigma: i64, p: &Vec2, shift: Deck) -> (Vec<Vec2>, Deck) {
    let n = vertices.len();
    let lift = |v: &Vec2, d: Deck| Surface::translate(v, d.add(shift));
    let mut out = Vec::with_capacity(n);
    if sigma > 0 {
        for k in 1..=n {
            let idx = edge + k;
            out.push(if idx < n { lift(&vertices[idx], Deck::zero()) } else { lift(&vertices[idx - n], monodromy) });
        }
    } else {
        for k in 0..n {
            let idx = edge as i64 - k as i64;
            out.push(if idx >= 0 {
                lift(&vertices[idx as usize], Deck::zero())
            } else {
                lift(&vertices[(idx + n as i64) as usize], monodromy.neg())
            });
        }
    }
    let m = monodromy.scale(sigma);
    let end = Surface::translate(p, m);
    out.retain(|v| v != p && v != &end);
    (out, m)
}

/// A path cut at `P`, both halves oriented along the traversal direction `sigma`.
struct Halves {
    in_ray: Vec2,
    before: Vec<Vec2>,
    after: Vec<Vec2>,
    out_ray: Vec2,
}

fn path_halves(vertices: &[Vec2], incoming: &Vec2, outgoing: &Vec2, edge: usize, sigma: i64, p: &Vec2, shift: Deck) -> Halves {
    let lift = |v: &Vec2| Surface::translate(v, shift);
    let mut before: Vec<Vec2> = vertices[..edge].iter().map(lift).collect();
    let mut after: Vec<Vec2> = vertices[edge..].iter().map(lift).collect();
    before.retain(|v| v != p);
    after.retain(|v| v != p);
    if sigma > 0 {
        Halves { in_ray: incoming.clone(), before, after, out_ray: outgoing.clone() }
    } else {
        before.reverse();
        after.reverse();
        Halves { in_ray: -outgoing.clone(), before: after, after: before, out_ray: -incoming.clone() }
    }
}

/// Either a loop cut open at `P` or a path split at `P`.
enum Cut {
    Loop { walk: Vec<Vec2>, monodromy: Deck },
    Path(Halves),
}

fn cut(curve: &Curve, site: &Site, sigma: i64, p: &Vec2) -> Cut {
    match &curve.components[site.at.component] {
        Component::Loop { vertices, monodromy } => {
            let (walk, m) = loop_walk(vertices, *monodromy, site.at.edge, sigma, p, site.shift);
            Cut::Loop { walk, monodromy: m }
        }
        Component::Path { vertices, incoming, outgoing } => {
            Cut::Path(path_halves(vertices, incoming, outgoing, site.at.edge, sigma, p, site.shift))
        }
    }
}

fn shifted(vs: &[Vec2], d: Deck) -> Vec<Vec2> {
    vs.iter().map(|v| Surface::translate(v, d)).collect()
}

/// Resolves the crossing `p` of `l1` and `l2`, following `l1` into `l2`.
///
/// With `u1` the tangent of `l1` and `u2` the tangent line of `l2` oriented so
/// that `u1 × u2 > 0`, the chords join `P ± eps·u1` to `P ± eps·u2` and the
/// `l2` part is traversed along `-u2`. Components of `l1` and `l2` other than
/// the ones through `p` are carried over unchanged.
pub fn surgery(surface: Surface, l1: &Curve, l2: &Curve, p: &Vec2, eps: &Rat, name: impl Into<String>) -> Result<Curve, GeomError> {
    let name = name.into();
    if !eps.is_positive() {
        return Err(GeomError::EpsTooLarge("eps must be positive".into()));
    }
    let (pt, s1, s2) = locate(surface, l1, l2, p)?;
    check_room(l1, &s1, eps)?;
    check_room(l2, &s2, eps)?;
    let u1 = unit(&l1.edge_dir(s1.at));
    let raw2 = l2.edge_dir(s2.at);
    let sigma2: i64 = if u1.cross(&raw2).is_positive() { -1 } else { 1 };
    let u2 = unit(&raw2).scale(&int(-sigma2));
    let at = |base: &Vec2, d: Deck, v: &Vec2, k: i64| &Surface::translate(base, d) + &v.scale(&(eps * int(k)));
    let c1 = cut(l1, &s1, 1, &pt);
    let c2 = cut(l2, &s2, sigma2, &pt);
    let zero = Deck::zero();
    let mut comps: Vec<Component> = match (c1, c2) {
        (Cut::Loop { walk: w1, monodromy: m1 }, Cut::Loop { walk: w2, monodromy: m2 }) => {
            let mut v = vec![at(&pt, zero, &u1, 1)];
            v.extend(w1);
            v.push(at(&pt, m1, &u1, -1));
            v.push(at(&pt, m1, &u2, -1));
            v.extend(shifted(&w2, m1));
            v.push(at(&pt, m1.add(m2), &u2, 1));
            vec![Component::Loop { vertices: v, monodromy: m1.add(m2) }]
        }
        (Cut::Path(h1), Cut::Path(h2)) => {
            let mut a = h1.before.clone();
            a.push(at(&pt, zero, &u1, -1));
            a.push(at(&pt, zero, &u2, -1));
            a.extend(h2.after.iter().cloned());
            let mut b = h2.before.clone();
            b.push(at(&pt, zero, &u2, 1));
            b.push(at(&pt, zero, &u1, 1));
            b.extend(h1.after.iter().cloned());
            vec![
                Component::Path { vertices: a, incoming: h1.in_ray, outgoing: h2.out_ray },
                Component::Path { vertices: b, incoming: h2.in_ray, outgoing: h1.out_ray },
            ]
        }
        (Cut::Loop { walk: w1, monodromy: m1 }, Cut::Path(h2)) => {
            let mut v = h2.before.clone();
            v.push(at(&pt, zero, &u2, 1));
            v.push(at(&pt, zero, &u1, 1));
            v.extend(w1);
            v.push(at(&pt, m1, &u1, -1));
            v.push(at(&pt, m1, &u2, -1));
            v.extend(shifted(&h2.after, m1));
            vec![Component::Path { vertices: v, incoming: h2.in_ray, outgoing: h2.out_ray }]
        }
        (Cut::Path(h1), Cut::Loop { walk: w2, monodromy: m2 }) => {
            let mut v = h1.before.clone();
            v.push(at(&pt, zero, &u1, -1));
            v.push(at(&pt, zero, &u2, -1));
            v.extend(w2);
            v.push(at(&pt, m2, &u2, 1));
            v.push(at(&pt, m2, &u1, 1));
            v.extend(shifted(&h1.after, m2));
            vec![Component::Path { vertices: v, incoming: h1.in_ray, outgoing: h1.out_ray }]
        }
    };
    for (i, c) in l1.components.iter().enumerate() {
        if i != s1.at.component {
            comps.push(c.clone());
        }
    }
    for (i, c) in l2.components.iter().enumerate() {
        if i != s2.at.component {
            comps.push(c.clone());
        }
    }
    let out = Curve::new(name, comps).map_err(|e| GeomError::EpsTooLarge(e.to_string()))?;
    out.check_surface(surface)?;
    check_embedded(surface, &out).map_err(|e| GeomError::EpsTooLarge(e.to_string()))?;
    Ok(out.with_exact(l1.exact && l2.exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn torus_line(name: &str, class: (i64, i64)) -> Curve {
        Curve::line(name, Surface::Torus, Vec2::ints(0, 0), Vec2::ints(class.0, class.1)).unwrap()
    }

    #[test]
    fn torus_surgery_classes() {
        let a = torus_line("alpha", (1, 0));
        let b = torus_line("beta", (0, 1));
        let o = Vec2::ints(0, 0);
        let ab = surgery(Surface::Torus, &a, &b, &o, &rat(1, 4), "ab").unwrap();
        assert_eq!(ab.homology_class(), Deck(1, -1));
        let ba = surgery(Surface::Torus, &b, &a, &o, &rat(1, 4), "ba").unwrap();
        assert_eq!(ba.homology_class(), Deck(1, 1));
        assert_ne!(ab.components, ba.components);
    }

    #[test]
    fn plane_axes_give_two_bent_rays() {
        let x = Curve::line("x", Surface::Plane, Vec2::ints(0, 0), Vec2::ints(1, 0)).unwrap();
        let y = Curve::line("y", Surface::Plane, Vec2::ints(0, 0), Vec2::ints(0, 1)).unwrap();
        let e = rat(1, 2);
        let s = surgery(Surface::Plane, &x, &y, &Vec2::ints(0, 0), &e, "xy").unwrap();
        assert_eq!(s.components.len(), 2);
        let Component::Path { vertices, incoming, outgoing } = &s.components[0] else { panic!() };
        assert_eq!(incoming, &Vec2::ints(1, 0));
        assert_eq!(vertices, &vec![Vec2::new(rat(-1, 2), rat(0, 1)), Vec2::new(rat(0, 1), rat(-1, 2))]);
        assert_eq!(outgoing, &Vec2::ints(0, -1));
        assert_eq!(corner_area(&Vec2::ints(1, 0), &Vec2::ints(0, 1), &e), rat(1, 8));
    }

    #[test]
    fn oversized_eps_is_rejected() {
        let a = torus_line("alpha", (1, 0));
        let b = torus_line("beta", (0, 1));
        assert!(matches!(
            surgery(Surface::Torus, &a, &b, &Vec2::ints(0, 0), &rat(1, 2), "x"),
            Err(GeomError::EpsTooLarge(_))
        ));
    }

    #[test]
    fn surgery_needs_a_crossing() {
        let a = torus_line("alpha", (1, 0));
        let b = torus_line("beta", (0, 1));
        assert!(matches!(
            surgery(Surface::Torus, &a, &b, &Vec2::new(rat(1, 2), rat(0, 1)), &rat(1, 8), "x"),
            Err(GeomError::NotACrossing(_))
        ));
    }
}
