//! Embedded convex-cornered polygons in the universal cover.
//!
//! A `(k+1)`-gon has sides on lifts of `L_0, …, L_k` in counterclockwise
//! order, input corners `p_i ∈ X(L_{i-1}, L_i)` and output corner
//! `q ∈ X(L_0, L_k)`. The search fixes the canonical lift of `q`, walks along
//! `L_0` in both directions and turns left at lifts of the next corner's
//! generators, requiring the walk to close up at the start.

use std::collections::{BTreeMap, HashMap};

use num::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::geom::curve::{Edge, EdgeGeom};
use crate::geom::intersect::{edge_meets, EdgeMeet};
use crate::geom::{lift_point, segment_meet, twice_signed_area, Curve, Deck, Generator, GeomError, SegmentMeet, Strip, Surface, Vec2};
use crate::rational::{ceil_i64, floor_i64, fmt_rat, int, Rat};

/// Limits of a polygon search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// How many lattice periods away from the output corner lifted edges may start.
    pub deck_radius: u32,
    /// Maximum number of walk steps before giving up.
    pub branch_cap: u64,
    /// Drop polygons of area at least this; results are then known modulo `T^cutoff`.
    #[serde(serialize_with = "ser_opt_rat")]
    pub cutoff: Option<Rat>,
}

fn ser_opt_rat<S: serde::Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&fmt_rat(r)),
        None => s.serialize_none(),
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { deck_radius: 3, branch_cap: 2_000_000, cutoff: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("polygon search exceeded the branch cap of {0} steps")]
    BudgetExceeded(u64),
    #[error("the output corner does not lie on the curves")]
    CornerNotOnCurve,
    #[error("polygon index mismatch: expected {expected}, degrees give {found}")]
    GradingMismatch { expected: i64, found: i64 },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// An embedded polygon with its corners and area.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polygon {
    /// Indices of the input corners `p_1, …, p_k` in their generator lists.
    pub corners: Vec<usize>,
    /// Index of the output corner `q`.
    pub output: usize,
    #[serde(serialize_with = "ser_rat")]
    pub area: Rat,
    /// Counterclockwise boundary in the cover, starting at the output corner.
    pub boundary: Vec<Vec2>,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

impl Polygon {
    pub fn arity(&self) -> usize {
        self.corners.len()
    }
}

/// Index of a rigid polygon, `2 − k`, checked against generator degrees when they are known.
pub fn polygon_index(poly: &Polygon, input_degrees: &[Option<i64>], output_degree: Option<i64>) -> Result<i64, SearchError> {
    let expected = 2 - poly.arity() as i64;
    if let (Some(q), Some(ps)) = (output_degree, input_degrees.iter().copied().collect::<Option<Vec<i64>>>()) {
        let found = q - ps.iter().sum::<i64>();
        if found != expected {
            return Err(SearchError::GradingMismatch { expected, found });
        }
    }
    Ok(expected)
}

/// The curves and generator lists of one polygon count.
pub struct PolygonProblem<'a> {
    pub surface: Surface,
    /// `L_0, …, L_k`.
    pub curves: Vec<&'a Curve>,
    /// `X(L_{i}, L_{i+1})` for `i < k`.
    pub inputs: Vec<&'a [Generator]>,
    /// `X(L_0, L_k)`.
    pub outputs: &'a [Generator],
    /// The r-window the generators were taken from, if any.
    pub strip: Strip,
}

/// Where a walk along one edge meets a lift of the next curve at an admissible corner.
#[derive(Clone, Debug)]
struct Event {
    s: Rat,
    partner: usize,
    deck: Deck,
    t: Rat,
    gen: usize,
}

/// Walk parameter range of an edge inside the search window.
type Range = (Option<Rat>, Option<Rat>);

struct Context<'a> {
    problem: &'a PolygonProblem<'a>,
    k: usize,
    radius: i64,
    q: Vec2,
    edges: Vec<Vec<Edge>>,
    /// `(component, edge)` to flat edge index, per position.
    flat: Vec<HashMap<(usize, usize), usize>>,
    ranges: Vec<Vec<Option<Range>>>,
    events: Vec<Vec<Vec<Event>>>,
    close: (usize, Deck, Rat),
    close_chain: (usize, Deck),
    start: (usize, Deck, Rat),
    cutoff: Option<Rat>,
    cap: u64,
    /// No curve bends, so headings only turn left and an embedded boundary turns once.
    straight: bool,
}

/// The r-range a boundary walk may visit on the cylinder.
///
/// Boundary vertices are corners or curve vertices, so when corners are
/// confined to a generator strip the walk never needs to leave the hull of
/// that strip and the curve vertices.
fn strip_of(problem: &PolygonProblem<'_>, q: &Vec2, radius: i64) -> Option<(Rat, Rat)> {
    if problem.surface != Surface::Cylinder {
        return None;
    }
    let mut lo = q.y.clone();
    let mut hi = q.y.clone();
    let mut vlo = q.y.clone();
    let mut vhi = q.y.clone();
    for c in &problem.curves {
        for comp in &c.components {
            for v in comp.vertices() {
                if v.y < lo {
                    lo = v.y.clone();
                }
                if v.y > hi {
                    hi = v.y.clone();
                }
                if v.y < vlo {
                    vlo = v.y.clone();
                }
                if v.y > vhi {
                    vhi = v.y.clone();
                }
            }
        }
    }
    let (mut lo, mut hi) = (lo - int(radius), hi + int(radius));
    if let Some((slo, shi)) = &problem.strip {
        let floor = if slo < &vlo { slo.clone() } else { vlo };
        let ceil = if shi > &vhi { shi.clone() } else { vhi };
        if lo < floor {
            lo = floor;
        }
        if hi > ceil {
            hi = ceil;
        }
    }
    Some((lo, hi))
}

fn walk_range(g: &EdgeGeom, strip: &Option<(Rat, Rat)>) -> Option<Range> {
    match strip {
        None => Some((g.lo.clone(), g.hi.clone())),
        Some((lo, hi)) => g.clip(|v| v.y.clone(), lo, hi).map(|c| (c.lo, c.hi)),
    }
}

fn clipped(g: &EdgeGeom, r: &Range) -> EdgeGeom {
    EdgeGeom { origin: g.origin.clone(), dir: g.dir.clone(), lo: r.0.clone(), hi: r.1.clone() }
}

impl<'a> Context<'a> {
    fn new(problem: &'a PolygonProblem<'a>, corners: &[Option<usize>], q: usize, budget: &SearchBudget, radius: u32) -> Result<Self, SearchError> {
        let k = problem.curves.len() - 1;
        assert!(k >= 1 && corners.len() == k && problem.inputs.len() == k, "malformed polygon problem");
        let radius = i64::from(radius);
        let qp = problem.outputs[q].point.clone();
        let strip = strip_of(problem, &qp, radius);
        let mut edges = Vec::with_capacity(k + 1);
        let mut flat: Vec<HashMap<(usize, usize), usize>> = Vec::with_capacity(k + 1);
        let mut ranges: Vec<Vec<Option<Range>>> = Vec::with_capacity(k + 1);
        for c in &problem.curves {
            let es = c.edges();
            flat.push(es.iter().enumerate().map(|(i, e)| ((e.at.component, e.at.edge), i)).collect());
            ranges.push(es.iter().map(|e| walk_range(&e.geom, &strip)).collect());
            edges.push(es);
        }
        let mut events = Vec::with_capacity(k);
        for pos in 0..k {
            let lookup: BTreeMap<&Vec2, usize> = problem.inputs[pos].iter().map(|g| (&g.point, g.index)).collect();
            let mut per_edge = Vec::with_capacity(edges[pos].len());
            for (ei, e) in edges[pos].iter().enumerate() {
                let mut evs = Vec::new();
                let Some(er) = &ranges[pos][ei] else {
                    per_edge.push(evs);
                    continue;
                };
                let eg = clipped(&e.geom, er);
                for (fi, f) in edges[pos + 1].iter().enumerate() {
                    let Some(fr) = &ranges[pos + 1][fi] else { continue };
                    let fg = clipped(&f.geom, fr);
                    for (d, m) in edge_meets(problem.surface, &eg, &fg)? {
                        let EdgeMeet::Point { point, s, t } = m else {
                            return Err(GeomError::NonTransverse {
                                left: problem.curves[pos].name.clone(),
                                right: problem.curves[pos + 1].name.clone(),
                                at: problem.surface.canonical(&eg.origin).to_string(),
                            }
                            .into());
                        };
                        if e.geom.hi.as_ref() == Some(&s) || f.geom.hi.as_ref() == Some(&t) {
                            continue;
                        }
                        let Some(&gen) = lookup.get(&problem.surface.canonical(&point)) else { continue };
                        if corners[pos].is_some_and(|c| c != gen) {
                            continue;
                        }
                        evs.push(Event { s, partner: fi, deck: d, t, gen });
                    }
                }
                evs.sort_by(|a, b| a.s.cmp(&b.s));
                per_edge.push(evs);
            }
            events.push(per_edge);
        }
        let locate = |pos: usize| -> Result<(usize, Deck, Rat), SearchError> {
            let (at, d, s) = lift_point(problem.surface, problem.curves[pos], &qp).ok_or(SearchError::CornerNotOnCurve)?;
            Ok((flat[pos][&(at.component, at.edge)], d, s))
        };
        let start = locate(0)?;
        let close = locate(k)?;
        let mut ctx = Context {
            problem,
            k,
            radius,
            q: qp,
            edges,
            flat,
            ranges,
            events,
            close: close.clone(),
            close_chain: (0, Deck::zero()),
            start,
            cutoff: budget.cutoff.clone(),
            cap: budget.branch_cap,
            straight: problem.curves.iter().all(|c| c.components.iter().all(|comp| comp.vertices().len() == 1)),
        };
        ctx.close_chain = ctx.chain_key(k, close.0, close.1);
        Ok(ctx)
    }

    fn curve(&self, pos: usize) -> &Curve {
        self.problem.curves[pos]
    }

    /// Identifies the lifted component containing a lifted edge.
    fn chain_key(&self, pos: usize, edge: usize, d: Deck) -> (usize, Deck) {
        let comp = self.edges[pos][edge].at.component;
        let m = self.curve(pos).components[comp].monodromy();
        if m.is_zero() {
            return (comp, d);
        }
        let j = if m.0 != 0 { d.0.div_euclid(m.0) } else { d.1.div_euclid(m.1) };
        (comp, d.sub(m.scale(j)))
    }

    fn in_box(&self, pos: usize, edge: usize, d: Deck) -> bool {
        if self.ranges[pos][edge].is_none() {
            return false;
        }
        let o = &self.edges[pos][edge].geom.origin;
        let near = |oc: &Rat, dc: i64, qc: &Rat| {
            let lo = qc - oc - int(self.radius);
            let hi = qc - oc + int(self.radius);
            ceil_i64(&lo) <= dc && dc <= floor_i64(&hi)
        };
        match self.problem.surface {
            Surface::Plane => d.is_zero(),
            Surface::Cylinder => d.1 == 0 && near(&o.x, d.0, &self.q.x),
            Surface::Torus => near(&o.x, d.0, &self.q.x) && near(&o.y, d.1, &self.q.y),
        }
    }
}

enum Push {
    Rejected,
    Added(usize),
}

struct Walker<'c, 'a> {
    ctx: &'c Context<'a>,
    boundary: Vec<Vec2>,
    corners: Vec<usize>,
    start_dir: Vec2,
    steps: u64,
    found: BTreeMap<Vec<Vec2>, Polygon>,
    output: usize,
}

fn ahead(s: &Rat, entry: &Rat, sigma: i64, inclusive: bool) -> bool {
    match (sigma > 0, inclusive) {
        (true, true) => s >= entry,
        (true, false) => s > entry,
        (false, true) => s <= entry,
        (false, false) => s < entry,
    }
}

/// Whether `a` comes before `b` in angle measured counterclockwise from `from`.
fn angle_before(from: &Vec2, a: &Vec2, b: &Vec2) -> bool {
    let upper = |v: &Vec2| {
        let c = from.cross(v);
        c.is_positive() || (c.is_zero() && from.dot(v).is_positive())
    };
    match (upper(a), upper(b)) {
        (true, false) => true,
        (false, true) => false,
        _ => a.cross(b).is_positive(),
    }
}

fn within(s: &Rat, r: &Range) -> bool {
    r.0.as_ref().is_none_or(|lo| s >= lo) && r.1.as_ref().is_none_or(|hi| s <= hi)
}

/// Removes vertices where the boundary goes straight on.
fn normalized(pts: &[Vec2]) -> Vec<Vec2> {
    let n = pts.len();
    (0..n)
        .filter(|&i| {
            let a = &pts[(i + n - 1) % n];
            let b = &pts[i];
            let c = &pts[(i + 1) % n];
            !(b - a).cross(&(c - b)).is_zero()
        })
        .map(|i| pts[i].clone())
        .collect()
}

impl<'c, 'a> Walker<'c, 'a> {
    fn tick(&mut self) -> Result<(), SearchError> {
        self.steps += 1;
        if self.steps > self.ctx.cap {
            return Err(SearchError::BudgetExceeded(self.ctx.cap));
        }
        Ok(())
    }

    /// Appends a boundary vertex if the new segment keeps the boundary simple.
    fn push(&mut self, p: Vec2) -> Push {
        let n = self.boundary.len();
        let last = &self.boundary[n - 1];
        if last == &p {
            return Push::Added(0);
        }
        for j in 0..n.saturating_sub(1) {
            let m = segment_meet(&self.boundary[j], &self.boundary[j + 1], last, &p);
            let ok = match m {
                SegmentMeet::None => true,
                SegmentMeet::Point { .. } => j + 2 == n,
                SegmentMeet::Overlap => false,
            };
            if !ok {
                return Push::Rejected;
            }
        }
        self.boundary.push(p);
        Push::Added(1)
    }

    fn pop(&mut self, n: usize) {
        let len = self.boundary.len();
        self.boundary.truncate(len - n);
    }

    /// Whether the closing segment back to the start keeps the boundary simple.
    fn closes(&self) -> bool {
        let n = self.boundary.len();
        let first = &self.boundary[0];
        let last = &self.boundary[n - 1];
        for j in 0..n - 1 {
            let m = segment_meet(&self.boundary[j], &self.boundary[j + 1], last, first);
            let ok = match m {
                SegmentMeet::None => true,
                SegmentMeet::Point { point, .. } => (j == 0 && &point == first) || (j + 2 == n && &point == last),
                SegmentMeet::Overlap => false,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn record(&mut self) {
        let area = twice_signed_area(&self.boundary) / int(2);
        if !area.is_positive() {
            return;
        }
        if self.ctx.cutoff.as_ref().is_some_and(|c| &area >= c) {
            return;
        }
        let boundary = normalized(&self.boundary);
        self.found.entry(boundary.clone()).or_insert(Polygon { corners: self.corners.clone(), output: self.output, area, boundary });
    }

    #[allow(clippy::too_many_arguments)]
    fn side(&mut self, pos: usize, edge: usize, deck: Deck, sigma: i64, entry: Rat, inclusive: bool) -> Result<(), SearchError> {
        let ctx = self.ctx;
        let (mut edge, mut deck, mut entry, mut inclusive) = (edge, deck, entry, inclusive);
        let mut added = 0;
        loop {
            self.tick()?;
            let base = &ctx.edges[pos][edge];
            let range = ctx.ranges[pos][edge].clone().expect("edge in window");
            let geom = base.geom.translated(deck);
            let dir = geom.dir.scale(&int(sigma));
            if pos < ctx.k {
                let evs = &ctx.events[pos][edge];
                let order: Box<dyn Iterator<Item = &Event>> = if sigma > 0 { Box::new(evs.iter()) } else { Box::new(evs.iter().rev()) };
                for ev in order {
                    if !ahead(&ev.s, &entry, sigma, inclusive) || !within(&ev.s, &range) {
                        continue;
                    }
                    let pdeck = deck.add(ev.deck);
                    if !ctx.in_box(pos + 1, ev.partner, pdeck) {
                        continue;
                    }
                    if pos + 1 == ctx.k && ctx.chain_key(pos + 1, ev.partner, pdeck) != ctx.close_chain {
                        continue;
                    }
                    self.tick()?;
                    let fdir = &ctx.edges[pos + 1][ev.partner].geom.dir;
                    let tau = if dir.cross(fdir).is_positive() { 1 } else { -1 };
                    // Left turns only: a full turn before closing cannot bound an embedded polygon.
                    if ctx.straight && angle_before(&self.start_dir, &fdir.scale(&int(tau)), &dir) {
                        continue;
                    }
                    let Push::Added(n) = self.push(geom.at(&ev.s)) else { continue };
                    self.corners.push(ev.gen);
                    self.side(pos + 1, ev.partner, pdeck, tau, ev.t.clone(), false)?;
                    self.corners.pop();
                    self.pop(n);
                }
            } else {
                let (ce, cd, cs) = &ctx.close;
                if *ce == edge && *cd == deck && ahead(cs, &entry, sigma, inclusive) && within(cs, &range) {
                    if dir.cross(&self.start_dir).is_positive() && self.closes() {
                        self.record();
                    }
                    break;
                }
            }
            let (end, orig_end) = if sigma > 0 { (&range.1, &base.geom.hi) } else { (&range.0, &base.geom.lo) };
            let Some(end) = end else { break };
            if Some(end) != orig_end.as_ref() {
                break;
            }
            let comp = &ctx.curve(pos).components[base.at.component];
            let next = if sigma > 0 { comp.next_edge(base.at.edge) } else { comp.prev_edge(base.at.edge) };
            let Some((ne, shift)) = next else { break };
            let nflat = ctx.flat[pos][&(base.at.component, ne)];
            let ndeck = deck.add(shift);
            if !ctx.in_box(pos, nflat, ndeck) {
                break;
            }
            let Push::Added(n) = self.push(geom.at(end)) else { break };
            added += n;
            let ng = &ctx.edges[pos][nflat].geom;
            entry = if sigma > 0 { ng.lo.clone() } else { ng.hi.clone() }.expect("vertex between edges");
            edge = nflat;
            deck = ndeck;
            inclusive = true;
        }
        self.pop(added);
        Ok(())
    }
}

/// All embedded polygons with output corner `q` and input corners restricted by `corners`
/// (`None` admits any generator), at the given deck radius.
pub fn enumerate_at(problem: &PolygonProblem<'_>, corners: &[Option<usize>], q: usize, budget: &SearchBudget, radius: u32) -> Result<Vec<Polygon>, SearchError> {
    let ctx = Context::new(problem, corners, q, budget, radius)?;
    let mut walker = Walker {
        ctx: &ctx,
        boundary: Vec::new(),
        corners: Vec::new(),
        start_dir: Vec2::zero(),
        steps: 0,
        found: BTreeMap::new(),
        output: q,
    };
    let (e0, d0, s0) = ctx.start.clone();
    for sigma in [1, -1] {
        walker.boundary = vec![ctx.q.clone()];
        walker.start_dir = ctx.edges[0][e0].geom.dir.scale(&int(sigma));
        walker.side(0, e0, d0, sigma, s0.clone(), false)?;
    }
    let mut out: Vec<Polygon> = walker.found.into_values().collect();
    out.sort_by(|a, b| (&a.corners, &a.area, &a.boundary).cmp(&(&b.corners, &b.area, &b.boundary)));
    Ok(out)
}

/// Polygons at the budget's deck radius, with whether the count agrees with radius + 1.
pub fn enumerate_polygons(problem: &PolygonProblem<'_>, corners: &[Option<usize>], q: usize, budget: &SearchBudget) -> Result<(Vec<Polygon>, bool), SearchError> {
    let found = enumerate_at(problem, corners, q, budget, budget.deck_radius)?;
    if problem.surface == Surface::Plane {
        return Ok((found, true));
    }
    let wider = enumerate_at(problem, corners, q, budget, budget.deck_radius + 1)?;
    let key = |ps: &[Polygon]| {
        let mut v: Vec<(Vec<usize>, Rat)> = ps.iter().map(|p| (p.corners.clone(), p.area.clone())).collect();
        v.sort();
        v
    };
    let stable = key(&found) == key(&wider);
    Ok((found, stable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{generators, Component};
    use crate::rational::rat;

    fn zigzag() -> Curve {
        Curve::new(
            "psiL",
            vec![Component::Loop {
                vertices: vec![Vec2::new(rat(1, 4), rat(-1, 4)), Vec2::new(rat(3, 4), rat(1, 4))],
                monodromy: Deck(1, 0),
            }],
        )
        .unwrap()
    }

    fn bigons(surface: Surface, l0: &Curve, l1: &Curve) -> Vec<Polygon> {
        let gens = generators(surface, l0, l1, &None, None).unwrap();
        let problem = PolygonProblem { surface, curves: vec![l0, l1], inputs: vec![&gens], outputs: &gens, strip: None };
        let mut all = Vec::new();
        for q in 0..gens.len() {
            let (ps, stable) = enumerate_polygons(&problem, &[None], q, &SearchBudget::default()).unwrap();
            assert!(stable);
            all.extend(ps);
        }
        all
    }

    #[test]
    fn morse_perturbed_circle_has_two_equal_bigons() {
        let l = Curve::line("L", Surface::Cylinder, Vec2::zero(), Vec2::ints(1, 0)).unwrap();
        let b = bigons(Surface::Cylinder, &l, &zigzag());
        assert_eq!(b.len(), 2);
        for p in &b {
            assert_eq!(p.corners, vec![0]);
            assert_eq!(p.output, 1);
            assert_eq!(p.area, rat(1, 16));
        }
    }

    #[test]
    fn contractible_rectangle_gives_one_bigon_each_way() {
        let l0 = Curve::line("L0", Surface::Cylinder, Vec2::zero(), Vec2::ints(1, 0)).unwrap();
        let l1 = Curve::new(
            "L1",
            vec![Component::Loop {
                vertices: vec![
                    Vec2::new(rat(1, 4), rat(-1, 4)),
                    Vec2::new(rat(3, 4), rat(-1, 4)),
                    Vec2::new(rat(3, 4), rat(1, 2)),
                    Vec2::new(rat(1, 4), rat(1, 2)),
                ],
                monodromy: Deck(0, 0),
            }],
        )
        .unwrap();
        let b = bigons(Surface::Cylinder, &l0, &l1);
        assert_eq!(b.len(), 2);
        let areas: Vec<Rat> = b.iter().map(|p| p.area.clone()).collect();
        assert!(areas.contains(&rat(1, 4)) && areas.contains(&rat(1, 8)));
    }

    #[test]
    fn straight_torus_lines_bound_no_bigons() {
        let a = Curve::line("a", Surface::Torus, Vec2::zero(), Vec2::ints(1, 0)).unwrap();
        let b = Curve::line("b", Surface::Torus, Vec2::new(rat(1, 3), rat(1, 5)), Vec2::ints(1, 2)).unwrap();
        assert!(bigons(Surface::Torus, &a, &b).is_empty());
    }

    #[test]
    fn plane_triangle() {
        let l0 = Curve::line("x", Surface::Plane, Vec2::zero(), Vec2::ints(1, 0)).unwrap();
        let l1 = Curve::line("d", Surface::Plane, Vec2::ints(2, 0), Vec2::ints(-1, 1)).unwrap();
        let l2 = Curve::line("y", Surface::Plane, Vec2::zero(), Vec2::ints(0, 1)).unwrap();
        let g01 = generators(Surface::Plane, &l0, &l1, &None, None).unwrap();
        let g12 = generators(Surface::Plane, &l1, &l2, &None, None).unwrap();
        let g02 = generators(Surface::Plane, &l0, &l2, &None, None).unwrap();
        let problem = PolygonProblem { surface: Surface::Plane, curves: vec![&l0, &l1, &l2], inputs: vec![&g01, &g12], outputs: &g02, strip: None };
        let (ps, _) = enumerate_polygons(&problem, &[None, None], 0, &SearchBudget::default()).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].area, int(2));
        assert_eq!(polygon_index(&ps[0], &[Some(0), Some(0)], Some(0)).unwrap(), 0);
        assert!(polygon_index(&ps[0], &[Some(0), Some(1)], Some(0)).is_err());
    }
}
