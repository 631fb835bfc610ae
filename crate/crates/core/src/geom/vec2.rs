//! Exact planar points and vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Signed, Zero};

use crate::rational::{fmt_rat, int, Rat};

/// A point or vector in the plane with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2 {
    pub x: Rat,
    pub y: Rat,
}

impl Vec2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Vec2 { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Vec2 { x: int(x), y: int(y) }
    }

    pub fn zero() -> Self {
        Vec2::ints(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, o: &Vec2) -> Rat {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &Vec2) -> Rat {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn scale(&self, s: &Rat) -> Vec2 {
        Vec2 { x: &self.x * s, y: &self.y * s }
    }

    /// True for directions with angle in `[0, π)`.
    pub fn is_upper(&self) -> bool {
        self.y.is_positive() || (self.y.is_zero() && self.x.is_positive())
    }

    /// The representative of the unoriented line `±self` with angle in `[0, π)`.
    pub fn line_rep(&self) -> Vec2 {
        if self.is_upper() {
            self.clone()
        } else {
            -self.clone()
        }
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, o: &Vec2) -> Vec2 {
        Vec2 { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, o: &Vec2) -> Vec2 {
        Vec2 { x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        &self + &o
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        &self - &o
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 { x: -self.x, y: -self.y }
    }
}

impl Mul<&Rat> for &Vec2 {
    type Output = Vec2;
    fn mul(self, s: &Rat) -> Vec2 {
        self.scale(s)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", fmt_rat(&self.x), fmt_rat(&self.y))
    }
}

impl serde::Serialize for Vec2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Twice the signed area of a closed polygon (positive when counterclockwise).
pub fn twice_signed_area(pts: &[Vec2]) -> Rat {
    let n = pts.len();
    let mut s = Rat::zero();
    for i in 0..n {
        s += pts[i].cross(&pts[(i + 1) % n]);
    }
    s
}

/// Intersection of closed segments `[a, b]` and `[c, d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentMeet {
    None,
    /// Single common point with the parameters along each segment in `[0, 1]`.
    Point { point: Vec2, s: Rat, t: Rat },
    /// Collinear overlap of positive length or a touch between collinear segments.
    Overlap,
}

/// Exact intersection of two closed segments.
pub fn segment_meet(a: &Vec2, b: &Vec2, c: &Vec2, d: &Vec2) -> SegmentMeet {
    let apart = |p: &Rat, q: &Rat, u: &Rat, v: &Rat| {
        let (lo1, hi1) = if p <= q { (p, q) } else { (q, p) };
        let (lo2, hi2) = if u <= v { (u, v) } else { (v, u) };
        hi1 < lo2 || hi2 < lo1
    };
    if apart(&a.x, &b.x, &c.x, &d.x) || apart(&a.y, &b.y, &c.y, &d.y) {
        return SegmentMeet::None;
    }
    let r = b - a;
    let q = d - c;
    let denom = r.cross(&q);
    let ac = c - a;
    if denom.is_zero() {
        if !ac.cross(&r).is_zero() {
            return SegmentMeet::None;
        }
        // Collinear: project onto r (or q if r degenerates).
        let axis = if r.is_zero() { q.clone() } else { r.clone() };
        let len = axis.dot(&axis);
        if len.is_zero() {
            return if a == c { SegmentMeet::Point { point: a.clone(), s: Rat::zero(), t: Rat::zero() } } else { SegmentMeet::None };
        }
        let p = |v: &Vec2| (v - a).dot(&axis) / &len;
        let (s0, s1) = (p(a), p(b));
        let (t0, t1) = (p(c), p(d));
        let (lo1, hi1) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
        let (lo2, hi2) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = if lo1 > lo2 { lo1 } else { lo2 };
        let hi = if hi1 < hi2 { hi1 } else { hi2 };
        if lo > hi {
            return SegmentMeet::None;
        }
        if lo == hi {
            let point = a + &axis.scale(&lo);
            let s = if r.is_zero() { Rat::zero() } else { (&point - a).dot(&r) / r.dot(&r) };
            let t = if q.is_zero() { Rat::zero() } else { (&point - c).dot(&q) / q.dot(&q) };
            return SegmentMeet::Point { point, s, t };
        }
        return SegmentMeet::Overlap;
    }
    let s = ac.cross(&q) / &denom;
    let t = ac.cross(&r) / &denom;
    let zero = Rat::zero();
    let one = int(1);
    if s < zero || s > one || t < zero || t > one {
        return SegmentMeet::None;
    }
    let point = a + &r.scale(&s);
    SegmentMeet::Point { point, s, t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn crossing_segments_meet_once() {
        let m = segment_meet(&Vec2::ints(0, 0), &Vec2::ints(2, 2), &Vec2::ints(0, 2), &Vec2::ints(2, 0));
        match m {
            SegmentMeet::Point { point, s, t } => {
                assert_eq!(point, Vec2::ints(1, 1));
                assert_eq!(s, rat(1, 2));
                assert_eq!(t, rat(1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn collinear_cases() {
        let o = Vec2::ints(0, 0);
        assert_eq!(segment_meet(&o, &Vec2::ints(2, 0), &Vec2::ints(1, 0), &Vec2::ints(3, 0)), SegmentMeet::Overlap);
        assert!(matches!(segment_meet(&o, &Vec2::ints(1, 0), &Vec2::ints(1, 0), &Vec2::ints(3, 0)), SegmentMeet::Point { .. }));
        assert_eq!(segment_meet(&o, &Vec2::ints(1, 0), &Vec2::ints(2, 0), &Vec2::ints(3, 0)), SegmentMeet::None);
    }

    #[test]
    fn shoelace_sign() {
        let tri = [Vec2::ints(0, 0), Vec2::ints(1, 0), Vec2::ints(0, 1)];
        assert_eq!(twice_signed_area(&tri), int(1));
        let rev: Vec<_> = tri.iter().rev().cloned().collect();
        assert_eq!(twice_signed_area(&rev), int(-1));
    }

    #[test]
    fn line_representative() {
        assert_eq!(Vec2::ints(-1, 0).line_rep(), Vec2::ints(1, 0));
        assert_eq!(Vec2::ints(1, -1).line_rep(), Vec2::ints(-1, 1));
        assert_eq!(Vec2::ints(0, 1).line_rep(), Vec2::ints(0, 1));
    }
}
