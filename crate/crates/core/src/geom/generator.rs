//! Intersection generators of an ordered pair of curves.

use serde::Serialize;

use super::curve::EdgeRef;
use super::grading::{crossing_degree, crossing_parity, GradedLift};
use super::intersect::{crossings, Strip};
use super::{Curve, GeomError, Surface, Vec2};

/// A transverse crossing of `left` and `right`, an element of the basis of `CF(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub left: String,
    pub right: String,
    pub index: usize,
    /// Canonical representative in the quotient.
    pub point: Vec2,
    #[serde(skip)]
    pub left_edge: EdgeRef,
    #[serde(skip)]
    pub right_edge: EdgeRef,
    #[serde(skip)]
    pub left_dir: Vec2,
    #[serde(skip)]
    pub right_dir: Vec2,
    pub degree: Option<i64>,
    /// Degree mod 2 from orientations alone.
    pub parity: u8,
}

impl Generator {
    /// Deterministic name `left|right:index`.
    pub fn name(&self) -> String {
        format!("{}|{}:{}", self.left, self.right, self.index)
    }

    /// Degree mod 2, from the grading when present.
    pub fn degree_mod2(&self) -> u8 {
        match self.degree {
            Some(d) => u8::from(d.rem_euclid(2) == 1),
            None => self.parity,
        }
    }
}

/// Generators of `CF(left, right)` in canonical order, graded when both lifts are given.
pub fn generators(
    surface: Surface,
    left: &Curve,
    right: &Curve,
    strip: &Strip,
    lifts: Option<(&GradedLift, &GradedLift)>,
) -> Result<Vec<Generator>, GeomError> {
    let raw = crossings(surface, left, right, strip)?;
    Ok(raw
        .into_iter()
        .enumerate()
        .map(|(index, c)| Generator {
            left: left.name.clone(),
            right: right.name.clone(),
            index,
            degree: lifts.map(|(l, r)| crossing_degree(l.at(c.left_edge), r.at(c.right_edge))),
            parity: crossing_parity(&c.left_dir, &c.right_dir),
            point: c.point,
            left_edge: c.left_edge,
            right_edge: c.right_edge,
            left_dir: c.left_dir,
            right_dir: c.right_dir,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn line(name: &str, base: (i64, i64), class: (i64, i64)) -> Curve {
        Curve::line(name, Surface::Torus, Vec2::ints(base.0, base.1), Vec2::ints(class.0, class.1)).unwrap()
    }

    #[test]
    fn torus_generator_counts_match_determinants() {
        let a = line("a", (0, 0), (1, 0));
        let b = line("b", (0, 0), (0, 1));
        let gs = generators(Surface::Torus, &a, &b, &None, None).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].name(), "a|b:0");
        let c = Curve::line("c", Surface::Torus, Vec2::new(rat(1, 3), rat(1, 7)), Vec2::ints(1, 2)).unwrap();
        assert_eq!(generators(Surface::Torus, &a, &c, &None, None).unwrap().len(), 2);
        let d = Curve::line("d", Surface::Torus, Vec2::new(rat(0, 1), rat(1, 2)), Vec2::ints(1, 0)).unwrap();
        assert!(generators(Surface::Torus, &a, &d, &None, None).unwrap().is_empty());
    }

    #[test]
    fn parity_follows_orientation() {
        let a = line("a", (0, 0), (1, 0));
        let b = line("b", (0, 0), (0, 1));
        let rb = line("rb", (0, 0), (0, -1));
        let p = generators(Surface::Torus, &a, &b, &None, None).unwrap()[0].parity;
        let q = generators(Surface::Torus, &a, &rb, &None, None).unwrap()[0].parity;
        assert_ne!(p, q);
    }

    #[test]
    fn graded_degree_parity_agrees() {
        let a = line("a", (0, 0), (1, 0));
        let b = Curve::line("b", Surface::Torus, Vec2::new(rat(1, 2), rat(0, 1)), Vec2::ints(-1, 3)).unwrap();
        for (sa, sb) in [(0, 0), (0, 1), (2, -1), (-2, 2)] {
            let la = GradedLift::new(&a, &[sa]).unwrap();
            let lb = GradedLift::new(&b, &[sb]).unwrap();
            for g in generators(Surface::Torus, &a, &b, &None, Some((&la, &lb))).unwrap() {
                if (sa + sb) % 2 == 0 {
                    assert_eq!(g.degree_mod2(), g.parity);
                }
            }
        }
    }
}
