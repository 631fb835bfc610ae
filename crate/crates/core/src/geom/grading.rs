//! Graded lifts of tangent-line angles and Maslov degrees of crossings.
//!
//! The lift on an edge is stored as `(u, n)` where `u` is the edge direction
//! normalized to angle `[0, π)` and the real lift of the line angle is
//! `angle(u) + n·π`. Everything is decided with exact orientation tests.

use num::{Signed, Zero};
use serde::Serialize;

use super::curve::{Component, EdgeRef};
use super::{Curve, GeomError, Vec2};

/// Lift of one edge's tangent-line angle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLift {
    pub line: Vec2,
    pub half_turns: i64,
}

/// Continuous lift of the tangent-line angle along every edge of a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLift {
    pub edges: Vec<Vec<EdgeLift>>,
}

/// Half-turn count of the line of `dir` when its oriented angle is taken in `(-π, π]`.
fn principal_half_turns(dir: &Vec2) -> i64 {
    if dir.is_upper() {
        0
    } else if dir.y.is_zero() {
        // Pointing exactly left: angle π.
        1
    } else {
        -1
    }
}

/// Lift on the edge reached after turning from `prev` (oriented `d`) to oriented `d_next`.
fn turn(prev: &EdgeLift, d: &Vec2, d_next: &Vec2) -> EdgeLift {
    let u_next = d_next.line_rep();
    let c = prev.line.cross(&u_next);
    let left = d.cross(d_next).is_positive();
    let n = if left {
        prev.half_turns + i64::from(c.is_negative())
    } else {
        prev.half_turns - i64::from(c.is_positive())
    };
    EdgeLift { line: u_next, half_turns: n }
}

impl GradedLift {
    /// Builds the lift with the first edge of component `i` at `principal angle + shifts[i]·π`.
    pub fn new(curve: &Curve, shifts: &[i64]) -> Result<Self, GeomError> {
        if shifts.len() != curve.components.len() {
            return Err(GeomError::InvalidCurve(format!(
                "curve `{}` has {} components but {} grading shifts",
                curve.name,
                curve.components.len(),
                shifts.len()
            )));
        }
        let mut edges = Vec::with_capacity(curve.components.len());
        for (comp, &shift) in curve.components.iter().zip(shifts) {
            let n = comp.edge_count();
            let dirs: Vec<Vec2> = (0..n).map(|i| comp.edge_dir(i)).collect();
            let mut lifts = Vec::with_capacity(n);
            lifts.push(EdgeLift { line: dirs[0].line_rep(), half_turns: principal_half_turns(&dirs[0]) + shift });
            for i in 1..n {
                let next = turn(&lifts[i - 1], &dirs[i - 1], &dirs[i]);
                lifts.push(next);
            }
            if let Component::Loop { .. } = comp {
                let back = turn(&lifts[n - 1], &dirs[n - 1], &dirs[0]);
                if back != lifts[0] {
                    return Err(GeomError::Ungradable { curve: curve.name.clone() });
                }
            }
            edges.push(lifts);
        }
        Ok(GradedLift { edges })
    }

    pub fn at(&self, e: EdgeRef) -> &EdgeLift {
        &self.edges[e.component][e.edge]
    }

    /// The same lift shifted by `k` half-turns.
    pub fn shifted(&self, k: i64) -> Self {
        GradedLift {
            edges: self
                .edges
                .iter()
                .map(|c| c.iter().map(|l| EdgeLift { line: l.line.clone(), half_turns: l.half_turns + k }).collect())
                .collect(),
        }
    }
}

/// Maslov degree of a crossing from the left lift to the right lift.
///
/// Equals `⌈(θ₁ − θ₀)/π⌉` for the lifted line angles, i.e. the winding of the
/// lift path closed up by the clockwise short path from the right line back.
pub fn crossing_degree(left: &EdgeLift, right: &EdgeLift) -> i64 {
    right.half_turns - left.half_turns + i64::from(left.line.cross(&right.line).is_positive())
}

/// Parity of the degree from orientations alone: 0 when the clockwise short
/// path from the left tangent to the right tangent respects orientations.
pub fn crossing_parity(left_dir: &Vec2, right_dir: &Vec2) -> u8 {
    u8::from(!left_dir.cross(right_dir).is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Deck, Surface};
    use crate::rational::rat;

    fn zigzag() -> Curve {
        Curve::new(
            "psi",
            vec![Component::Loop {
                vertices: vec![Vec2::new(rat(1, 4), rat(-1, 4)), Vec2::new(rat(3, 4), rat(1, 4))],
                monodromy: Deck(1, 0),
            }],
        )
        .unwrap()
    }

    #[test]
    fn zigzag_lift_closes_up() {
        let g = GradedLift::new(&zigzag(), &[0]).unwrap();
        assert_eq!(g.edges[0][0].half_turns, 0);
        assert_eq!(g.edges[0][1].half_turns, -1);
    }

    #[test]
    fn contractible_square_is_ungradable() {
        let sq = Curve::new(
            "sq",
            vec![Component::Loop {
                vertices: vec![Vec2::ints(0, 0), Vec2::ints(1, 0), Vec2::ints(1, 1), Vec2::ints(0, 1)],
                monodromy: Deck(0, 0),
            }],
        )
        .unwrap();
        assert!(matches!(GradedLift::new(&sq, &[0]), Err(GeomError::Ungradable { .. })));
    }

    #[test]
    fn morse_degrees_on_the_cotangent_circle() {
        // Zero section against the zigzag graph: the minimum has degree 1, the maximum 0.
        let l = Curve::line("l", Surface::Cylinder, Vec2::ints(0, 0), Vec2::ints(1, 0)).unwrap();
        let gl = GradedLift::new(&l, &[0]).unwrap();
        let gz = GradedLift::new(&zigzag(), &[0]).unwrap();
        let z = zigzag();
        let at = |e: usize| gz.at(EdgeRef { component: 0, edge: e });
        let base = gl.at(EdgeRef { component: 0, edge: 0 });
        assert_eq!(crossing_degree(base, at(0)), 1);
        assert_eq!(crossing_degree(base, at(1)), 0);
        assert_eq!(crossing_parity(&Vec2::ints(1, 0), &z.edge_dir(EdgeRef { component: 0, edge: 0 })), 1);
        assert_eq!(crossing_parity(&Vec2::ints(1, 0), &z.edge_dir(EdgeRef { component: 0, edge: 1 })), 0);
    }

    #[test]
    fn swapped_degrees_sum_to_one() {
        let a = EdgeLift { line: Vec2::ints(1, 0), half_turns: 0 };
        let b = EdgeLift { line: Vec2::ints(1, 2), half_turns: 3 };
        assert_eq!(crossing_degree(&a, &b) + crossing_degree(&b, &a), 1);
    }
}
