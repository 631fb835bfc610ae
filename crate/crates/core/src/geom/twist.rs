//! Dehn twists of straight torus lines about straight torus lines.

use num::integer::Integer;
use num::Zero;

use super::curve::primitive_direction;
use super::{Curve, Deck, GeomError, Surface};
use crate::rational::rat;

/// Integer vector `v` with `s × v = 1` for primitive `s`.
fn dual_vector(s: Deck) -> Deck {
    // a·x + b·y = 1 with s = (a, b); v = (-y, x) gives s × v = a·x + b·y.
    let g = s.0.extended_gcd(&s.1);
    let (x, y) = if g.gcd < 0 { (-g.x, -g.y) } else { (g.x, g.y) };
    Deck(-y, x)
}

/// Image of the straight line `c` under the Dehn twist about the straight line `axis`.
///
/// On classes this is `c ↦ c + (s × c)·s`. The image line passes through the
/// points where `c` meets the axis translated by half a period, which places it
/// symmetrically with respect to the twist region.
pub fn dehn_twist_torus(c: &Curve, axis: &Curve, name: impl Into<String>) -> Result<Curve, GeomError> {
    let (b, cdir) = c.as_straight_line().ok_or_else(|| GeomError::NotALine(c.name.clone()))?;
    let (a, sdir) = axis.as_straight_line().ok_or_else(|| GeomError::NotALine(axis.name.clone()))?;
    let (cc, s) = (primitive_direction(&cdir), primitive_direction(&sdir));
    let det = s.det(cc);
    if det == 0 {
        return Ok(c.clone().renamed(name));
    }
    let image = cc.add(s.scale(det));
    let half = dual_vector(s).vec().scale(&rat(1, 2));
    let a2 = &a + &half;
    // Solve b + t·c = a2 + u·s for the meeting point.
    let sv = s.vec();
    let denom = cdir.cross(&sv);
    debug_assert!(!denom.is_zero());
    let t = (&a2 - &b).cross(&sv) / denom;
    let base = &b + &cdir.scale(&t);
    Curve::line(name, Surface::Torus, Surface::Torus.canonical(&base), image.vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    fn line(name: &str, base: (i64, i64), class: (i64, i64)) -> Curve {
        Curve::line(name, Surface::Torus, Vec2::ints(base.0, base.1), Vec2::ints(class.0, class.1)).unwrap()
    }

    #[test]
    fn twist_acts_by_shear() {
        let alpha = line("alpha", (0, 0), (1, 0));
        let beta = line("beta", (0, 0), (0, 1));
        let tb = dehn_twist_torus(&beta, &alpha, "tb").unwrap();
        assert_eq!(tb.homology_class(), Deck(1, 1));
        let (p, _) = tb.as_straight_line().unwrap();
        assert_eq!(p, Vec2::new(rat(0, 1), rat(1, 2)));
        let tta = dehn_twist_torus(&alpha, &alpha, "ta").unwrap();
        assert_eq!(tta.homology_class(), Deck(1, 0));
        let t2 = dehn_twist_torus(&tb, &alpha, "t2").unwrap();
        assert_eq!(t2.homology_class(), Deck(2, 1));
    }

    #[test]
    fn twist_about_beta() {
        let alpha = line("alpha", (0, 0), (1, 0));
        let beta = line("beta", (0, 0), (0, 1));
        // s × c = (0,1) × (1,0) = -1, so (1,0) ↦ (1,0) - (0,1).
        assert_eq!(dehn_twist_torus(&alpha, &beta, "x").unwrap().homology_class(), Deck(1, -1));
    }

    #[test]
    fn dual_vectors() {
        for s in [Deck(1, 0), Deck(0, 1), Deck(2, 3), Deck(-3, 5), Deck(4, -1)] {
            assert_eq!(s.det(dual_vector(s)), 1);
        }
    }

    #[test]
    fn bent_curves_are_rejected() {
        use crate::geom::Component;
        let z = Curve::new(
            "z",
            vec![Component::Loop { vertices: vec![Vec2::ints(0, 0), Vec2::new(rat(1, 2), rat(1, 4))], monodromy: Deck(1, 0) }],
        )
        .unwrap();
        let alpha = line("alpha", (0, 0), (1, 0));
        assert!(matches!(dehn_twist_torus(&z, &alpha, "x"), Err(GeomError::NotALine(_))));
    }
}
