//! Flat model surfaces as quotients of the plane by a deck lattice.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Vec2;
use crate::rational::{frac, int};

/// Which flat surface the scene lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    /// The plane, trivial deck group.
    Plane,
    /// `S¹ × ℝ`: the first coordinate is periodic with period 1.
    Cylinder,
    /// `ℝ² / ℤ²`.
    Torus,
}

/// An element of the deck lattice, in integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Deck(pub i64, pub i64);

impl Deck {
    pub fn zero() -> Self {
        Deck(0, 0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    pub fn vec(self) -> Vec2 {
        Vec2::ints(self.0, self.1)
    }

    pub fn add(self, o: Deck) -> Deck {
        Deck(self.0 + o.0, self.1 + o.1)
    }

    pub fn sub(self, o: Deck) -> Deck {
        Deck(self.0 - o.0, self.1 - o.1)
    }

    pub fn neg(self) -> Deck {
        Deck(-self.0, -self.1)
    }

    pub fn scale(self, k: i64) -> Deck {
        Deck(self.0 * k, self.1 * k)
    }

    pub fn det(self, o: Deck) -> i64 {
        self.0 * o.1 - self.1 * o.0
    }
}

impl fmt::Display for Deck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

impl Surface {
    pub fn name(self) -> &'static str {
        match self {
            Surface::Plane => "plane",
            Surface::Cylinder => "cylinder",
            Surface::Torus => "torus",
        }
    }

    /// Whether `d` lies in the deck lattice.
    pub fn is_deck(self, d: Deck) -> bool {
        match self {
            Surface::Plane => d.is_zero(),
            Surface::Cylinder => d.1 == 0,
            Surface::Torus => true,
        }
    }

    /// Canonical representative of the orbit of `p` (coordinates reduced into `[0, 1)`).
    pub fn canonical(self, p: &Vec2) -> Vec2 {
        match self {
            Surface::Plane => p.clone(),
            Surface::Cylinder => Vec2::new(frac(&p.x), p.y.clone()),
            Surface::Torus => Vec2::new(frac(&p.x), frac(&p.y)),
        }
    }

    /// Deck element carrying the canonical representative of `p` to `p`.
    pub fn offset_of(self, p: &Vec2) -> Deck {
        let c = self.canonical(p);
        let d = p - &c;
        Deck(
            i64::try_from(d.x.to_integer()).expect("offset in range"),
            i64::try_from(d.y.to_integer()).expect("offset in range"),
        )
    }

    /// Whether two points project to the same point of the surface.
    pub fn same_point(self, a: &Vec2, b: &Vec2) -> bool {
        self.canonical(a) == self.canonical(b)
    }

    /// Number of periodic directions.
    pub fn rank(self) -> usize {
        match self {
            Surface::Plane => 0,
            Surface::Cylinder => 1,
            Surface::Torus => 2,
        }
    }

    /// Deck translations with coordinates in the given inclusive ranges, restricted to the lattice.
    pub fn decks_in(self, xs: (i64, i64), ys: (i64, i64)) -> Vec<Deck> {
        let xs = if self.rank() >= 1 { xs } else { (0, 0) };
        let ys = if self.rank() >= 2 { ys } else { (0, 0) };
        let mut out = Vec::new();
        for a in xs.0..=xs.1 {
            for b in ys.0..=ys.1 {
                out.push(Deck(a, b));
            }
        }
        out
    }

    /// Translates a point by a deck element.
    pub fn translate(p: &Vec2, d: Deck) -> Vec2 {
        Vec2::new(&p.x + int(d.0), &p.y + int(d.1))
    }
}

impl FromStr for Surface {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "plane" => Ok(Surface::Plane),
            "cylinder" => Ok(Surface::Cylinder),
            "torus" => Ok(Surface::Torus),
            other => Err(format!("unknown surface kind `{other}`")),
        }
    }
}
