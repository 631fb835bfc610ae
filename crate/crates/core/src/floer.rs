//! Floer complexes of curve pairs, their cohomology, and the Morse model on the circle.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{rank_with_precision, CoeffMode, NovMatrix, Novikov, RankInfo};
use crate::error::{Error, Result};
use crate::geom::{generators, Curve, Generator, GradedLift, Strip, Surface};
use crate::polygons::{enumerate_polygons, polygon_index, Polygon, PolygonProblem, SearchBudget};
use crate::rational::Rat;

/// Settings shared by every polygon count in a computation.
#[derive(Clone, Debug)]
pub struct Counting {
    pub budget: SearchBudget,
    pub mode: CoeffMode,
    pub strip: Strip,
}

impl Default for Counting {
    fn default() -> Self {
        Counting { budget: SearchBudget::default(), mode: CoeffMode::Novikov, strip: None }
    }
}

impl Counting {
    /// Weight of a polygon of the given area.
    pub fn weight(&self, area: &Rat) -> Novikov {
        match self.mode {
            CoeffMode::Novikov => Novikov::monomial(area.clone()),
            CoeffMode::Z2 => Novikov::one(),
        }
    }

    /// Marks a Novikov sum as known only below the cutoff.
    pub fn finish(&self, v: Novikov) -> Novikov {
        match (&self.budget.cutoff, self.mode) {
            (Some(c), CoeffMode::Novikov) => v.truncate(c),
            _ => v,
        }
    }

    /// Rejects Z2 mode unless every curve is flagged exact.
    pub fn admit(&self, curves: &[&Curve]) -> Result<()> {
        if self.mode == CoeffMode::Z2 {
            if let Some(c) = curves.iter().find(|c| !c.exact) {
                return Err(Error::NotExact(c.name.clone()));
            }
        }
        Ok(())
    }
}

/// A free complex over the Novikov field with optional gradings.
///
/// Column `j` of `d` is the image of basis element `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub labels: Vec<String>,
    pub degrees: Vec<Option<i64>>,
    pub parities: Vec<u8>,
    pub d: NovMatrix,
}

/// One nonzero entry of `d²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub source: String,
    pub target: String,
    pub coefficient: Novikov,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "entries", rename_all = "lowercase")]
pub enum DSquared {
    Zero,
    Obstructed(Vec<Obstruction>),
}

impl DSquared {
    pub fn is_zero(&self) -> bool {
        matches!(self, DSquared::Zero)
    }
}

/// Cohomology ranks of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub total: usize,
    /// Present when every basis element is graded and `d` has degree one.
    pub by_degree: Option<BTreeMap<i64, usize>>,
    /// `[even, odd]`, present when `d` flips parity.
    pub by_parity: Option<[usize; 2]>,
    /// False when truncated entries could hide pivots.
    pub certified: bool,
}

fn rank(m: &NovMatrix) -> RankInfo {
    if m.rows() == 0 || m.cols() == 0 {
        return RankInfo { rank: 0, certified: true };
    }
    rank_with_precision(m)
}

fn submatrix(m: &NovMatrix, rows: &[usize], cols: &[usize]) -> NovMatrix {
    NovMatrix::from_rows(rows.iter().map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect()).collect())
}

pub(crate) fn matmul(a: &NovMatrix, b: &NovMatrix) -> NovMatrix {
    let mut out = NovMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = a.get(i, k);
            if x.is_zero() && x.is_exact() {
                continue;
            }
            for j in 0..b.cols() {
                let y = b.get(k, j);
                if y.is_zero() && y.is_exact() {
                    continue;
                }
                out.add_at(i, j, &x.mul(y));
            }
        }
    }
    out
}

/// Rank of a map on cohomology, given the differentials of its source and target.
///
/// `phi` maps the source basis (columns) to the target basis (rows).
pub fn induced_rank(d_source: &NovMatrix, d_target: &NovMatrix, phi: &NovMatrix) -> RankInfo {
    let (n, m) = (d_source.cols(), d_target.cols());
    let mut block = NovMatrix::zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            block.set(i, j, d_source.get(i, j).clone());
        }
    }
    for i in 0..m {
        for j in 0..n {
            block.set(n + i, j, phi.get(i, j).clone());
        }
        for j in 0..m {
            block.set(n + i, n + j, d_target.get(i, j).clone());
        }
    }
    let (b, s, t) = (rank(&block), rank(d_source), rank(d_target));
    RankInfo { rank: b.rank - s.rank - t.rank, certified: b.certified && s.certified && t.certified }
}

impl ChainComplex {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn d_squared(&self) -> NovMatrix {
        matmul(&self.d, &self.d)
    }

    pub fn d_squared_check(&self) -> DSquared {
        let sq = self.d_squared();
        let mut entries = Vec::new();
        for p in 0..self.len() {
            for q in 0..self.len() {
                let c = sq.get(q, p);
                if !c.is_zero_to_precision() {
                    entries.push(Obstruction { source: self.labels[p].clone(), target: self.labels[q].clone(), coefficient: c.clone() });
                }
            }
        }
        if entries.is_empty() {
            DSquared::Zero
        } else {
            DSquared::Obstructed(entries)
        }
    }

    fn respects(&self, class: &[i64], step: impl Fn(i64) -> i64) -> bool {
        (0..self.len()).all(|p| (0..self.len()).all(|q| self.d.get(q, p).is_zero() || class[q] == step(class[p])))
    }

    fn split_ranks(&self, class: &[i64]) -> (BTreeMap<i64, usize>, bool) {
        let mut out = BTreeMap::new();
        let mut certified = true;
        let members = |c: i64| (0..self.len()).filter(|&i| class[i] == c).collect::<Vec<_>>();
        for &c in class {
            if out.contains_key(&c) {
                continue;
            }
            let here = members(c);
            let out_map = rank(&submatrix(&self.d, &members(c + 1), &here));
            let in_map = rank(&submatrix(&self.d, &here, &members(c - 1)));
            certified &= out_map.certified && in_map.certified;
            out.insert(c, here.len() - out_map.rank - in_map.rank);
        }
        (out, certified)
    }

    /// Ranks of `ker d / im d`; an obstructed complex is an error.
    pub fn ranks(&self) -> Result<Ranks> {
        if let DSquared::Obstructed(e) = self.d_squared_check() {
            return Err(Error::ObstructedComplex(e.len()));
        }
        let r = rank(&self.d);
        let mut certified = r.certified;
        let by_degree = match self.degrees.iter().copied().collect::<Option<Vec<i64>>>() {
            Some(deg) if self.respects(&deg, |d| d + 1) => {
                let (m, c) = self.split_ranks(&deg);
                certified &= c;
                Some(m)
            }
            _ => None,
        };
        let par: Vec<i64> = self.parities.iter().map(|&p| i64::from(p)).collect();
        let by_parity = if self.respects(&par, |p| 1 - p) {
            // Mod 2 the differential is a map between the two halves, so split directly.
            let even: Vec<usize> = (0..self.len()).filter(|&i| par[i] == 0).collect();
            let odd: Vec<usize> = (0..self.len()).filter(|&i| par[i] == 1).collect();
            let eo = rank(&submatrix(&self.d, &odd, &even));
            let oe = rank(&submatrix(&self.d, &even, &odd));
            certified &= eo.certified && oe.certified;
            Some([even.len() - eo.rank - oe.rank, odd.len() - eo.rank - oe.rank])
        } else {
            None
        };
        Ok(Ranks { total: self.len() - 2 * r.rank, by_degree, by_parity, certified })
    }
}

/// `CF(L_0, L_1)` with its bigon differential.
#[derive(Clone, Debug)]
pub struct FloerComplex {
    pub left: String,
    pub right: String,
    pub generators: Vec<Generator>,
    /// Entry `(q, p)` sums the weights of bigons from `p` to `q`.
    pub differential: NovMatrix,
    pub bigons: Vec<Polygon>,
    pub mode: CoeffMode,
    pub stabilized: bool,
    /// False when a contractible closed curve could bound discs the search does not see.
    pub complete: bool,
}

/// Builds `CF(left, right)` from the bigons between the two curves.
pub fn floer_complex(
    surface: Surface,
    left: &Curve,
    right: &Curve,
    lifts: Option<(&GradedLift, &GradedLift)>,
    counting: &Counting,
) -> Result<FloerComplex> {
    counting.admit(&[left, right])?;
    let gens = generators(surface, left, right, &counting.strip, lifts)?;
    let problem = PolygonProblem { surface, curves: vec![left, right], inputs: vec![&gens], outputs: &gens, strip: counting.strip.clone() };
    let per_q: Vec<(Vec<Polygon>, bool)> = (0..gens.len())
        .into_par_iter()
        .map(|q| enumerate_polygons(&problem, &[None], q, &counting.budget).map_err(Error::from))
        .collect::<Result<_>>()?;
    let n = gens.len();
    let mut d = NovMatrix::zeros(n, n);
    let mut bigons = Vec::new();
    let mut stabilized = true;
    for (q, (polys, stable)) in per_q.into_iter().enumerate() {
        stabilized &= stable;
        for poly in polys {
            let p = poly.corners[0];
            polygon_index(&poly, &[gens[p].degree], gens[q].degree)?;
            d.add_at(q, p, &counting.weight(&poly.area));
            bigons.push(poly);
        }
    }
    for q in 0..n {
        for p in 0..n {
            let v = counting.finish(d.get(q, p).clone());
            d.set(q, p, v);
        }
    }
    Ok(FloerComplex {
        left: left.name.clone(),
        right: right.name.clone(),
        generators: gens,
        differential: d,
        bigons,
        mode: counting.mode,
        stabilized,
        complete: !left.has_contractible_loop() && !right.has_contractible_loop(),
    })
}

impl FloerComplex {
    pub fn chain(&self) -> ChainComplex {
        ChainComplex {
            labels: self.generators.iter().map(Generator::name).collect(),
            degrees: self.generators.iter().map(|g| g.degree).collect(),
            parities: self.generators.iter().map(Generator::degree_mod2).collect(),
            d: self.differential.clone(),
        }
    }

    pub fn d_squared_check(&self) -> DSquared {
        self.chain().d_squared_check()
    }

    pub fn cohomology_ranks(&self) -> Result<Ranks> {
        self.chain().ranks()
    }
}

/// Comparison of the generator count with a reference Betti sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArnoldReport {
    pub generators: usize,
    pub betti_sum: usize,
    /// Total HF rank, absent when the complex is obstructed.
    pub hf_rank: Option<usize>,
    pub bound_holds: bool,
    pub tight: bool,
    pub note: String,
}

pub fn arnold_report(c: &FloerComplex, reference_betti: &[usize]) -> ArnoldReport {
    let generators = c.generators.len();
    let betti_sum: usize = reference_betti.iter().sum();
    let hf_rank = c.cohomology_ranks().ok().map(|r| r.total);
    let note = match hf_rank {
        Some(_) if c.complete => "HF is defined; the bound is claimed".to_string(),
        Some(_) => "HF computed from embedded polygons only; a contractible curve is present, the bound is not claimed".to_string(),
        None => "HF is undefined (d^2 != 0); the bound is not claimed".to_string(),
    };
    ArnoldReport { generators, betti_sum, hf_rank, bound_holds: generators >= betti_sum, tight: generators == betti_sum, note }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CritKind {
    Max,
    Min,
}

/// Morse complex over F2 of a function on the circle, critical points listed in cyclic order.
///
/// Maxima get degree 0 and minima degree 1; each maximum bounds its two neighbouring minima.
pub fn morse_complex_circle(points: &[(CritKind, Rat)]) -> Result<ChainComplex> {
    let n = points.len();
    if n < 2 || n % 2 == 1 {
        return Err(Error::NotAlternating(format!("need an even number of at least 2 critical points, got {n}")));
    }
    for i in 0..n {
        let (a, b) = (&points[i], &points[(i + 1) % n]);
        if a.0 == b.0 {
            return Err(Error::NotAlternating(format!("positions {i} and {} are both {:?}", (i + 1) % n, a.0)));
        }
        let (hi, lo) = if a.0 == CritKind::Max { (&a.1, &b.1) } else { (&b.1, &a.1) };
        if hi <= lo {
            return Err(Error::NotAlternating(format!("maximum value {hi} is not above its neighbour {lo}")));
        }
    }
    let mut d = NovMatrix::zeros(n, n);
    for (i, (kind, _)) in points.iter().enumerate() {
        if *kind == CritKind::Max {
            d.add_at((i + n - 1) % n, i, &Novikov::one());
            d.add_at((i + 1) % n, i, &Novikov::one());
        }
    }
    let degrees: Vec<Option<i64>> = points.iter().map(|(k, _)| Some(i64::from(*k == CritKind::Min))).collect();
    Ok(ChainComplex {
        labels: points.iter().enumerate().map(|(i, (k, _))| format!("{}{i}", if *k == CritKind::Max { "max" } else { "min" })).collect(),
        parities: degrees.iter().map(|d| d.expect("set above") as u8).collect(),
        degrees,
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Component, Deck, Vec2};
    use crate::rational::{int, rat};

    fn circle() -> Curve {
        Curve::line("L", Surface::Cylinder, Vec2::ints(0, 0), Vec2::ints(1, 0)).unwrap()
    }

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

    #[test]
    fn morse_pushoff_has_circle_cohomology() {
        let (l, z) = (circle(), zigzag());
        let (gl, gz) = (GradedLift::new(&l, &[0]).unwrap(), GradedLift::new(&z, &[0]).unwrap());
        let c = floer_complex(Surface::Cylinder, &l, &z, Some((&gl, &gz)), &Counting::default()).unwrap();
        assert_eq!(c.generators.len(), 2);
        assert_eq!(c.bigons.len(), 2);
        assert!(c.differential.get(1, 0).is_zero());
        assert!(c.d_squared_check().is_zero());
        let r = c.cohomology_ranks().unwrap();
        assert_eq!(r.total, 2);
        assert_eq!(r.by_degree.unwrap().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
        let a = arnold_report(&c, &[1, 1]);
        assert!(a.bound_holds && a.tight);
    }

    #[test]
    fn contractible_circle_is_obstructed() {
        let l0 = circle();
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
        let c = floer_complex(Surface::Cylinder, &l0, &l1, None, &Counting::default()).unwrap();
        assert!(!c.complete);
        let DSquared::Obstructed(entries) = c.d_squared_check() else { panic!("expected obstruction") };
        assert_eq!(entries.len(), 2);
        for e in &entries {
            assert_eq!(e.coefficient, Novikov::monomial(rat(3, 8)));
        }
        assert_eq!(c.cohomology_ranks(), Err(Error::ObstructedComplex(2)));
        assert_eq!(arnold_report(&c, &[1, 1]).hf_rank, None);
    }

    #[test]
    fn z2_mode_requires_exact_curves() {
        let counting = Counting { mode: CoeffMode::Z2, ..Counting::default() };
        let err = floer_complex(Surface::Cylinder, &circle(), &zigzag(), None, &counting).unwrap_err();
        assert!(matches!(err, Error::NotExact(_)));
    }

    #[test]
    fn morse_circle_examples() {
        let two = morse_complex_circle(&[(CritKind::Max, int(1)), (CritKind::Min, int(0))]).unwrap();
        assert!(two.d.get(1, 0).is_zero());
        assert_eq!(two.ranks().unwrap().by_degree.unwrap().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
        let four = morse_complex_circle(&[
            (CritKind::Max, int(2)),
            (CritKind::Min, int(0)),
            (CritKind::Max, int(3)),
            (CritKind::Min, int(1)),
        ])
        .unwrap();
        assert!(four.d.get(1, 0).specialize_at_one() && four.d.get(3, 0).specialize_at_one());
        assert_eq!(four.ranks().unwrap().total, 2);
        assert!(matches!(
            morse_complex_circle(&[(CritKind::Max, int(1)), (CritKind::Max, int(0))]),
            Err(Error::NotAlternating(_))
        ));
    }

    #[test]
    fn induced_rank_of_identity_and_zero() {
        let zero = NovMatrix::zeros(2, 2);
        assert_eq!(induced_rank(&zero, &zero, &NovMatrix::identity(2)).rank, 2);
        assert_eq!(induced_rank(&zero, &zero, &zero).rank, 0);
    }
}
