//! Piecewise-linear curves given by a lift to the plane plus deck data.

use num::{Signed, Zero};
use serde::Serialize;

use super::{Deck, GeomError, Surface, Vec2};
use crate::rational::Rat;

/// One connected piece of a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    /// Closed in the quotient: the lift starting at `vertices[0]` returns at
    /// `vertices[0] + monodromy`. Zero monodromy means a closed polygon.
    Loop { vertices: Vec<Vec2>, monodromy: Deck },
    /// Proper path: a ray arriving at the first vertex along `incoming`, the
    /// polyline through `vertices`, then a ray leaving the last vertex along `outgoing`.
    Path { vertices: Vec<Vec2>, incoming: Vec2, outgoing: Vec2 },
}

/// Parametric description `origin + s·dir` for `s` in `[lo, hi]`; `None` bounds are infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGeom {
    pub origin: Vec2,
    pub dir: Vec2,
    pub lo: Option<Rat>,
    pub hi: Option<Rat>,
}

impl EdgeGeom {
    pub fn segment(a: &Vec2, b: &Vec2) -> Self {
        EdgeGeom { origin: a.clone(), dir: b - a, lo: Some(Rat::zero()), hi: Some(Rat::from_integer(1.into())) }
    }

    pub fn at(&self, s: &Rat) -> Vec2 {
        &self.origin + &self.dir.scale(s)
    }

    pub fn translated(&self, d: Deck) -> Self {
        EdgeGeom { origin: Surface::translate(&self.origin, d), ..self.clone() }
    }

    pub fn contains_param(&self, s: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|lo| s >= lo) && self.hi.as_ref().is_none_or(|hi| s <= hi)
    }

    /// Range of `y` over the edge; `None` entries are unbounded.
    pub fn y_range(&self) -> (Option<Rat>, Option<Rat>) {
        self.coord_range(|v| v.y.clone())
    }

    /// Range of `x` over the edge; `None` entries are unbounded.
    pub fn x_range(&self) -> (Option<Rat>, Option<Rat>) {
        self.coord_range(|v| v.x.clone())
    }

    fn coord_range(&self, c: impl Fn(&Vec2) -> Rat) -> (Option<Rat>, Option<Rat>) {
        let o = c(&self.origin);
        let d = c(&self.dir);
        let at = |s: &Option<Rat>| s.as_ref().map(|s| &o + &d * s);
        if d.is_zero() {
            return (Some(o.clone()), Some(o));
        }
        let (a, b) = (at(&self.lo), at(&self.hi));
        if d.is_positive() {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Restricts the parameter range so that the coordinate selected by `c` stays in `[lo, hi]`.
    /// Returns `None` when the restriction is empty.
    pub fn clip(&self, c: impl Fn(&Vec2) -> Rat, lo: &Rat, hi: &Rat) -> Option<EdgeGeom> {
        let o = c(&self.origin);
        let d = c(&self.dir);
        let (mut s_lo, mut s_hi) = (self.lo.clone(), self.hi.clone());
        if d.is_zero() {
            if &o < lo || &o > hi {
                return None;
            }
        } else {
            let a = (lo - &o) / &d;
            let b = (hi - &o) / &d;
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            s_lo = Some(match s_lo {
                Some(x) if x > a => x,
                _ => a,
            });
            s_hi = Some(match s_hi {
                Some(x) if x < b => x,
                _ => b,
            });
        }
        if let (Some(a), Some(b)) = (&s_lo, &s_hi) {
            if a > b {
                return None;
            }
        }
        Some(EdgeGeom { origin: self.origin.clone(), dir: self.dir.clone(), lo: s_lo, hi: s_hi })
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }
}

/// Position of an edge inside a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeRef {
    pub component: usize,
    pub edge: usize,
}

/// An edge of a component in its base lift.
#[derive(Clone, Debug)]
pub struct Edge {
    pub at: EdgeRef,
    pub geom: EdgeGeom,
    /// Whether the start point is a genuine corner (direction changes there).
    pub start_is_corner: bool,
}

/// A named curve on a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub components: Vec<Component>,
    /// User assertion that the curve is exact (see rescaling of generators).
    pub exact: bool,
}

impl Component {
    /// Number of edges (rays count as edges).
    pub fn edge_count(&self) -> usize {
        match self {
            Component::Loop { vertices, .. } => vertices.len(),
            Component::Path { vertices, .. } => vertices.len() + 1,
        }
    }

    /// Oriented direction of edge `i`.
    pub fn edge_dir(&self, i: usize) -> Vec2 {
        match self {
            Component::Loop { vertices, monodromy } => {
                let n = vertices.len();
                let next = if i + 1 < n { vertices[i + 1].clone() } else { Surface::translate(&vertices[0], *monodromy) };
                &next - &vertices[i]
            }
            Component::Path { vertices, incoming, outgoing } => {
                let n = vertices.len();
                if i == 0 {
                    incoming.clone()
                } else if i == n {
                    outgoing.clone()
                } else {
                    &vertices[i] - &vertices[i - 1]
                }
            }
        }
    }

    /// Edges in the base lift.
    pub fn edges(&self, component: usize) -> Vec<Edge> {
        let n = self.edge_count();
        let dirs: Vec<Vec2> = (0..n).map(|i| self.edge_dir(i)).collect();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let geom = match self {
                Component::Loop { vertices, .. } => EdgeGeom {
                    origin: vertices[i].clone(),
                    dir: dirs[i].clone(),
                    lo: Some(Rat::zero()),
                    hi: Some(Rat::from_integer(1.into())),
                },
                Component::Path { vertices, .. } => {
                    let m = vertices.len();
                    if i == 0 {
                        EdgeGeom { origin: vertices[0].clone(), dir: dirs[0].clone(), lo: None, hi: Some(Rat::zero()) }
                    } else if i == m {
                        EdgeGeom { origin: vertices[m - 1].clone(), dir: dirs[m].clone(), lo: Some(Rat::zero()), hi: None }
                    } else {
                        EdgeGeom {
                            origin: vertices[i - 1].clone(),
                            dir: dirs[i].clone(),
                            lo: Some(Rat::zero()),
                            hi: Some(Rat::from_integer(1.into())),
                        }
                    }
                }
            };
            let start_is_corner = match self {
                Component::Loop { .. } => {
                    let prev = &dirs[(i + n - 1) % n];
                    !prev.cross(&dirs[i]).is_zero()
                }
                Component::Path { .. } => i > 0 && !dirs[i - 1].cross(&dirs[i]).is_zero(),
            };
            out.push(Edge { at: EdgeRef { component, edge: i }, geom, start_is_corner });
        }
        out
    }

    /// Index of the edge following `i`, with the deck shift picked up on the way.
    pub fn next_edge(&self, i: usize) -> Option<(usize, Deck)> {
        match self {
            Component::Loop { vertices, monodromy } => {
                if i + 1 < vertices.len() {
                    Some((i + 1, Deck::zero()))
                } else {
                    Some((0, *monodromy))
                }
            }
            Component::Path { vertices, .. } => (i < vertices.len()).then_some((i + 1, Deck::zero())),
        }
    }

    /// Index of the edge preceding `i`, with the deck shift picked up on the way.
    pub fn prev_edge(&self, i: usize) -> Option<(usize, Deck)> {
        match self {
            Component::Loop { vertices, monodromy } => {
                if i > 0 {
                    Some((i - 1, Deck::zero()))
                } else {
                    Some((vertices.len() - 1, monodromy.neg()))
                }
            }
            Component::Path { .. } => (i > 0).then_some((i - 1, Deck::zero())),
        }
    }

    pub fn vertices(&self) -> &[Vec2] {
        match self {
            Component::Loop { vertices, .. } | Component::Path { vertices, .. } => vertices,
        }
    }

    pub fn monodromy(&self) -> Deck {
        match self {
            Component::Loop { monodromy, .. } => *monodromy,
            Component::Path { .. } => Deck::zero(),
        }
    }

    /// Closed polygon with trivial monodromy.
    pub fn is_contractible_loop(&self) -> bool {
        matches!(self, Component::Loop { monodromy, .. } if monodromy.is_zero())
    }

    /// Removes vertices where the curve goes straight on, keeping at least one.
    fn normalized(self) -> Result<Self, GeomError> {
        let n = self.edge_count();
        let dirs: Vec<Vec2> = (0..n).map(|i| self.edge_dir(i)).collect();
        if dirs.iter().any(Vec2::is_zero) {
            return Err(GeomError::InvalidCurve("repeated vertex or zero direction".into()));
        }
        for i in 0..n {
            let (a, b) = match &self {
                Component::Loop { .. } => (&dirs[(i + n - 1) % n], &dirs[i]),
                Component::Path { .. } if i > 0 => (&dirs[i - 1], &dirs[i]),
                _ => continue,
            };
            if a.cross(b).is_zero() && a.dot(b).is_negative() {
                return Err(GeomError::InvalidCurve("curve doubles back on itself".into()));
            }
        }
        match self {
            Component::Loop { vertices, monodromy } => {
                let n = vertices.len();
                let keep: Vec<Vec2> = (0..n)
                    .filter(|&i| !dirs[(i + n - 1) % n].cross(&dirs[i]).is_zero())
                    .map(|i| vertices[i].clone())
                    .collect();
                let vertices = if keep.is_empty() { vec![vertices[0].clone()] } else { keep };
                if monodromy.is_zero() && vertices.len() < 3 {
                    return Err(GeomError::InvalidCurve("closed polygon needs three corners".into()));
                }
                Ok(Component::Loop { vertices, monodromy })
            }
            Component::Path { vertices, incoming, outgoing } => {
                let m = vertices.len();
                let keep: Vec<Vec2> =
                    (0..m).filter(|&i| !dirs[i].cross(&dirs[i + 1]).is_zero()).map(|i| vertices[i].clone()).collect();
                let vertices = if keep.is_empty() { vec![vertices[0].clone()] } else { keep };
                Ok(Component::Path { vertices, incoming, outgoing })
            }
        }
    }
}

impl Curve {
    /// Builds a curve from raw components, normalizing away straight vertices.
    pub fn new(name: impl Into<String>, components: Vec<Component>) -> Result<Self, GeomError> {
        let mut comps = Vec::with_capacity(components.len());
        for c in components {
            if c.vertices().is_empty() {
                return Err(GeomError::InvalidCurve("component without vertices".into()));
            }
            comps.push(c.normalized()?);
        }
        if comps.is_empty() {
            return Err(GeomError::InvalidCurve("curve without components".into()));
        }
        Ok(Curve { name: name.into(), components: comps, exact: false })
    }

    /// Straight line through `base` with direction `dir`; closes up when `dir` is a lattice direction.
    pub fn line(name: impl Into<String>, surface: Surface, base: Vec2, dir: Vec2) -> Result<Self, GeomError> {
        if dir.is_zero() {
            return Err(GeomError::InvalidCurve("zero direction".into()));
        }
        let comp = match closing_period(surface, &dir) {
            Some(m) => Component::Loop { vertices: vec![base], monodromy: m },
            None => Component::Path { vertices: vec![base], incoming: dir.clone(), outgoing: dir },
        };
        Curve::new(name, vec![comp])
    }

    pub fn with_exact(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// All edges of all components in their base lifts.
    pub fn edges(&self) -> Vec<Edge> {
        self.components.iter().enumerate().flat_map(|(i, c)| c.edges(i)).collect()
    }

    pub fn edge_dir(&self, e: EdgeRef) -> Vec2 {
        self.components[e.component].edge_dir(e.edge)
    }

    /// Sum of component monodromies (the homology class for single loops).
    pub fn homology_class(&self) -> Deck {
        self.components.iter().fold(Deck::zero(), |acc, c| acc.add(c.monodromy()))
    }

    pub fn has_contractible_loop(&self) -> bool {
        self.components.iter().any(Component::is_contractible_loop)
    }

    /// Whether the curve is a single straight line (one vertex, no corners).
    pub fn as_straight_line(&self) -> Option<(Vec2, Vec2)> {
        match self.components.as_slice() {
            [Component::Loop { vertices, monodromy }] if vertices.len() == 1 && !monodromy.is_zero() => {
                Some((vertices[0].clone(), monodromy.vec()))
            }
            [Component::Path { vertices, incoming, outgoing }]
                if vertices.len() == 1 && incoming.cross(outgoing).is_zero() =>
            {
                Some((vertices[0].clone(), incoming.clone()))
            }
            _ => None,
        }
    }

    /// Checks that the curve's data is compatible with the surface.
    pub fn check_surface(&self, surface: Surface) -> Result<(), GeomError> {
        for c in &self.components {
            match c {
                Component::Loop { monodromy, .. } => {
                    if !surface.is_deck(*monodromy) {
                        return Err(GeomError::InvalidCurve(format!(
                            "curve `{}`: monodromy {monodromy} is not a deck translation of the {}",
                            self.name,
                            surface.name()
                        )));
                    }
                }
                Component::Path { incoming, outgoing, .. } => match surface {
                    Surface::Plane => {}
                    Surface::Cylinder => {
                        if incoming.y.is_zero() || outgoing.y.is_zero() {
                            return Err(GeomError::InvalidCurve(format!(
                                "curve `{}`: a proper path on the cylinder needs rays leaving along the fibre",
                                self.name
                            )));
                        }
                    }
                    Surface::Torus => {
                        return Err(GeomError::InvalidCurve(format!(
                            "curve `{}`: the torus is compact, use a closed loop",
                            self.name
                        )))
                    }
                },
            }
        }
        Ok(())
    }
}

/// Primitive deck vector parallel to `dir`, if the line closes up on `surface`.
pub fn closing_period(surface: Surface, dir: &Vec2) -> Option<Deck> {
    match surface {
        Surface::Plane => None,
        Surface::Cylinder => {
            if dir.y.is_zero() {
                Some(if dir.x.is_positive() { Deck(1, 0) } else { Deck(-1, 0) })
            } else {
                None
            }
        }
        Surface::Torus => Some(primitive_direction(dir)),
    }
}

/// Primitive integer vector positively proportional to a rational direction.
pub fn primitive_direction(dir: &Vec2) -> Deck {
    use num::integer::Integer;
    let l = dir.x.denom().lcm(dir.y.denom());
    let a = dir.x.numer() * (&l / dir.x.denom());
    let b = dir.y.numer() * (&l / dir.y.denom());
    let g = a.gcd(&b);
    let a = i64::try_from(&a / &g).expect("direction in range");
    let b = i64::try_from(&b / &g).expect("direction in range");
    Deck(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn lines_close_up_on_lattice_directions() {
        let l = Curve::line("a", Surface::Torus, Vec2::ints(0, 0), Vec2::new(rat(1, 2), rat(1, 1))).unwrap();
        assert_eq!(l.homology_class(), Deck(1, 2));
        let l = Curve::line("b", Surface::Cylinder, Vec2::ints(0, 0), Vec2::ints(-3, 0)).unwrap();
        assert_eq!(l.homology_class(), Deck(-1, 0));
        let l = Curve::line("c", Surface::Cylinder, Vec2::ints(0, 0), Vec2::ints(1, 1)).unwrap();
        assert!(matches!(l.components[0], Component::Path { .. }));
    }

    #[test]
    fn straight_vertices_are_removed() {
        let c = Curve::new(
            "z",
            vec![Component::Loop {
                vertices: vec![Vec2::ints(0, 0), Vec2::ints(1, 1), Vec2::ints(2, 0), Vec2::ints(3, 0)],
                monodromy: Deck(4, 0),
            }],
        )
        .unwrap();
        assert_eq!(c.components[0].vertices().len(), 3);
    }

    #[test]
    fn doubling_back_is_rejected() {
        let r = Curve::new(
            "z",
            vec![Component::Path { vertices: vec![Vec2::ints(0, 0)], incoming: Vec2::ints(1, 0), outgoing: Vec2::ints(-1, 0) }],
        );
        assert!(r.is_err());
    }

    #[test]
    fn clipping_a_ray_to_a_strip() {
        let ray = EdgeGeom { origin: Vec2::ints(0, 0), dir: Vec2::ints(1, 2), lo: Some(Rat::zero()), hi: None };
        let c = ray.clip(|v| v.y.clone(), &rat(1, 1), &rat(4, 1)).unwrap();
        assert_eq!(c.lo, Some(rat(1, 2)));
        assert_eq!(c.hi, Some(rat(2, 1)));
        assert!(ray.clip(|v| v.y.clone(), &rat(-3, 1), &rat(-1, 1)).is_none());
    }
}
