//! The A∞ operations of a scene: memoized μ^k tables, relation and Leibniz checks.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{NovMatrix, Novikov};
use crate::error::{Error, Result};
use crate::floer::{ChainComplex, Counting};
use crate::geom::{check_embedded, curve_contains, generators, Curve, GeomError, Generator, GradedLift, Surface};
use crate::polygons::{enumerate_polygons, polygon_index, Polygon, PolygonProblem};

/// A curve together with its optional graded lift.
#[derive(Clone, Debug)]
pub struct Object {
    pub curve: Curve,
    pub lift: Option<GradedLift>,
}

impl Object {
    pub fn new(curve: Curve, lift: Option<GradedLift>) -> Self {
        Object { curve, lift }
    }

    pub fn ungraded(curve: Curve) -> Self {
        Object { curve, lift: None }
    }

    pub fn name(&self) -> &str {
        &self.curve.name
    }
}

/// An element of `hom(source, target) = CF(source, target)` in the generator basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub coeffs: Vec<Novikov>,
}

impl Morphism {
    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!((self.source, self.target), (other.source, other.target), "adding morphisms of different hom spaces");
        Morphism { source: self.source, target: self.target, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Novikov) -> Morphism {
        Morphism { source: self.source, target: self.target, coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// Zero up to the truncation order of its coefficients.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Novikov::is_zero_to_precision)
    }

    /// Indices and coefficients of the terms that may be nonzero.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Novikov)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !(c.is_zero() && c.is_exact()))
    }
}

/// All counted polygons for one tuple of objects.
#[derive(Clone, Debug)]
pub struct MuTable {
    pub objects: Vec<usize>,
    /// Input corner tuple `(p_1, …, p_k)` to the nonzero output coefficients.
    pub entries: BTreeMap<Vec<usize>, BTreeMap<usize, Novikov>>,
    pub polygons: Vec<Polygon>,
    pub stabilized: bool,
}

/// One line of a printed μ table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuEntry {
    pub inputs: Vec<String>,
    pub output: String,
    pub coefficient: Novikov,
}

/// Objects, generators and lazily computed μ tables of a validated scene.
pub struct Category {
    surface: Surface,
    objects: Vec<Object>,
    counting: Counting,
    gens: HashMap<(usize, usize), Vec<Generator>>,
    tables: Mutex<HashMap<Vec<usize>, Arc<MuTable>>>,
}

impl Category {
    /// Validates embeddedness, pairwise transversality and the absence of triple points.
    pub fn new(surface: Surface, objects: Vec<Object>, counting: Counting) -> Result<Category> {
        for (i, o) in objects.iter().enumerate() {
            if objects[..i].iter().any(|p| p.name() == o.name()) {
                return Err(Error::RepeatedObject(o.name().to_string()));
            }
            o.curve.check_surface(surface)?;
            check_embedded(surface, &o.curve)?;
        }
        counting.admit(&objects.iter().map(|o| &o.curve).collect::<Vec<_>>())?;
        let n = objects.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let computed: Vec<((usize, usize), Vec<Generator>)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (a, b) = (&objects[i], &objects[j]);
                let lifts = a.lift.as_ref().zip(b.lift.as_ref());
                generators(surface, &a.curve, &b.curve, &counting.strip, lifts).map(|g| ((i, j), g))
            })
            .collect::<std::result::Result<_, GeomError>>()?;
        let gens: HashMap<(usize, usize), Vec<Generator>> = computed.into_iter().collect();
        for i in 0..n {
            for j in i + 1..n {
                for g in &gens[&(i, j)] {
                    if let Some(k) = (0..n).find(|&k| k != i && k != j && curve_contains(surface, &objects[k].curve, &g.point)) {
                        return Err(GeomError::TriplePoint {
                            first: objects[i].name().to_string(),
                            second: objects[j].name().to_string(),
                            third: objects[k].name().to_string(),
                            at: g.point.to_string(),
                        }
                        .into());
                    }
                }
            }
        }
        Ok(Category { surface, objects, counting, gens, tables: Mutex::new(HashMap::new()) })
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn counting(&self) -> &Counting {
        &self.counting
    }

    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.objects.iter().position(|o| o.name() == name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn name(&self, i: usize) -> &str {
        self.objects[i].name()
    }

    /// `X(a, b)`.
    pub fn gens(&self, a: usize, b: usize) -> Result<&[Generator]> {
        if a == b {
            return Err(Error::RepeatedObject(self.name(a).to_string()));
        }
        self.gens.get(&(a, b)).map(Vec::as_slice).ok_or_else(|| Error::UnknownObject(format!("#{a} or #{b}")))
    }

    pub fn zero(&self, a: usize, b: usize) -> Result<Morphism> {
        Ok(Morphism { source: a, target: b, coeffs: vec![Novikov::zero(); self.gens(a, b)?.len()] })
    }

    pub fn basis(&self, a: usize, b: usize, i: usize) -> Result<Morphism> {
        let mut m = self.zero(a, b)?;
        m.coeffs[i] = Novikov::one();
        Ok(m)
    }

    /// Morphism from `(generator index, coefficient)` pairs.
    pub fn morphism(&self, a: usize, b: usize, terms: &[(usize, Novikov)]) -> Result<Morphism> {
        let mut m = self.zero(a, b)?;
        for (i, c) in terms {
            let slot = m.coeffs.get_mut(*i).ok_or_else(|| Error::Invalid(format!("no generator {i} in CF({}, {})", self.name(a), self.name(b))))?;
            *slot = slot.add(c);
        }
        Ok(m)
    }

    /// Whether every polygon count so far agreed between the deck radius and the next.
    pub fn stabilized(&self) -> bool {
        self.tables.lock().expect("table lock").values().all(|t| t.stabilized)
    }

    /// False when some object has a contractible closed component.
    pub fn complete(&self) -> bool {
        self.objects.iter().all(|o| !o.curve.has_contractible_loop())
    }

    /// The μ table of an object tuple `(L_0, …, L_k)`, computed once.
    pub fn table(&self, objs: &[usize]) -> Result<Arc<MuTable>> {
        if objs.len() < 2 {
            return Err(Error::Invalid("μ^k needs k ≥ 1".into()));
        }
        if let Some(t) = self.tables.lock().expect("table lock").get(objs) {
            return Ok(t.clone());
        }
        let table = Arc::new(self.compute_table(objs)?);
        let mut tables = self.tables.lock().expect("table lock");
        Ok(tables.entry(objs.to_vec()).or_insert(table).clone())
    }

    fn compute_table(&self, objs: &[usize]) -> Result<MuTable> {
        let k = objs.len() - 1;
        let inputs: Vec<&[Generator]> = objs.windows(2).map(|w| self.gens(w[0], w[1])).collect::<Result<_>>()?;
        let outputs = self.gens(objs[0], objs[k])?;
        let problem = PolygonProblem {
            surface: self.surface,
            curves: objs.iter().map(|&i| &self.objects[i].curve).collect(),
            inputs: inputs.clone(),
            outputs,
            strip: self.counting.strip.clone(),
        };
        let free = vec![None; k];
        let per_q: Vec<(Vec<Polygon>, bool)> = (0..outputs.len())
            .into_par_iter()
            .map(|q| enumerate_polygons(&problem, &free, q, &self.counting.budget).map_err(Error::from))
            .collect::<Result<_>>()?;
        let mut entries: BTreeMap<Vec<usize>, BTreeMap<usize, Novikov>> = BTreeMap::new();
        let mut polygons = Vec::new();
        let mut stabilized = true;
        for (q, (polys, stable)) in per_q.into_iter().enumerate() {
            stabilized &= stable;
            for poly in polys {
                let degs: Vec<Option<i64>> = poly.corners.iter().zip(&inputs).map(|(&p, g)| g[p].degree).collect();
                polygon_index(&poly, &degs, outputs[q].degree)?;
                let slot = entries.entry(poly.corners.clone()).or_default().entry(q).or_insert_with(Novikov::zero);
                *slot = slot.add(&self.counting.weight(&poly.area));
                polygons.push(poly);
            }
        }
        for row in entries.values_mut() {
            for v in row.values_mut() {
                *v = self.counting.finish(v.clone());
            }
            row.retain(|_, v| !(v.is_zero() && v.is_exact()));
        }
        entries.retain(|_, row| !row.is_empty());
        Ok(MuTable { objects: objs.to_vec(), entries, polygons, stabilized })
    }

    /// `μ^k(a_k, …, a_1)` with `inputs = [a_1, …, a_k]`, extended multilinearly.
    pub fn mu(&self, inputs: &[&Morphism]) -> Result<Morphism> {
        let first = inputs.first().ok_or_else(|| Error::Invalid("μ^k needs k ≥ 1".into()))?;
        let mut objs = vec![first.source];
        for (i, a) in inputs.iter().enumerate() {
            if a.source != *objs.last().expect("nonempty") {
                return Err(Error::Invalid(format!("input {} does not compose", i + 1)));
            }
            objs.push(a.target);
        }
        let table = self.table(&objs)?;
        let mut out = self.zero(objs[0], *objs.last().expect("nonempty"))?;
        for (corners, row) in &table.entries {
            let mut c = Novikov::one();
            for (a, &p) in inputs.iter().zip(corners) {
                c = c.mul(&a.coeffs[p]);
                if c.is_zero() && c.is_exact() {
                    break;
                }
            }
            if c.is_zero() && c.is_exact() {
                continue;
            }
            for (&q, w) in row {
                out.coeffs[q] = out.coeffs[q].add(&c.mul(w));
            }
        }
        Ok(out)
    }

    /// `μ^k` on basis generators: the formal sum over outputs.
    pub fn mu_basis(&self, objs: &[usize], corners: &[usize]) -> Result<Morphism> {
        let ms: Vec<Morphism> = objs.windows(2).zip(corners).map(|(w, &p)| self.basis(w[0], w[1], p)).collect::<Result<_>>()?;
        self.mu(&ms.iter().collect::<Vec<_>>())
    }

    /// The Floer product `p_2 · p_1` for `p_1 ∈ X(a, b)`, `p_2 ∈ X(b, c)`.
    pub fn floer_product(&self, a: usize, b: usize, c: usize, p2: usize, p1: usize) -> Result<Morphism> {
        self.mu_basis(&[a, b, c], &[p1, p2])
    }

    /// Differential matrix of `CF(a, b)` from the μ¹ table.
    pub fn differential(&self, a: usize, b: usize) -> Result<NovMatrix> {
        let n = self.gens(a, b)?.len();
        let t = self.table(&[a, b])?;
        let mut d = NovMatrix::zeros(n, n);
        for (corners, row) in &t.entries {
            for (&q, w) in row {
                d.set(q, corners[0], w.clone());
            }
        }
        Ok(d)
    }

    pub fn complex(&self, a: usize, b: usize) -> Result<ChainComplex> {
        let g = self.gens(a, b)?;
        Ok(ChainComplex {
            labels: g.iter().map(Generator::name).collect(),
            degrees: g.iter().map(|x| x.degree).collect(),
            parities: g.iter().map(Generator::degree_mod2).collect(),
            d: self.differential(a, b)?,
        })
    }

    /// Printable rows of the μ table of an object tuple.
    pub fn entries(&self, objs: &[usize]) -> Result<Vec<MuEntry>> {
        let t = self.table(objs)?;
        let mut out = Vec::new();
        for (corners, row) in &t.entries {
            for (&q, w) in row {
                out.push(MuEntry {
                    inputs: objs.windows(2).zip(corners).map(|(win, &p)| self.gens[&(win[0], win[1])][p].name()).collect(),
                    output: self.gens[&(objs[0], objs[objs.len() - 1])][q].name(),
                    coefficient: w.clone(),
                });
            }
        }
        Ok(out)
    }

    /// Left-hand side of the A∞ relation for basis inputs along `objs`.
    pub fn relation(&self, objs: &[usize], corners: &[usize]) -> Result<Morphism> {
        let k = corners.len();
        let ms: Vec<Morphism> = objs.windows(2).zip(corners).map(|(w, &p)| self.basis(w[0], w[1], p)).collect::<Result<_>>()?;
        let mut sum = self.zero(objs[0], objs[k])?;
        for l in 1..=k {
            for j in 0..=k - l {
                let inner = self.mu(&ms[j..j + l].iter().collect::<Vec<_>>())?;
                if inner.is_zero() && inner.coeffs.iter().all(Novikov::is_exact) {
                    continue;
                }
                let mut outer: Vec<&Morphism> = ms[..j].iter().collect();
                outer.push(&inner);
                outer.extend(ms[j + l..].iter());
                sum = sum.add(&self.mu(&outer)?);
            }
        }
        Ok(sum)
    }

    /// Checks the A∞ relations on every tuple of distinct objects with `1 ≤ k ≤ k_max`.
    pub fn ainfty_check(&self, k_max: usize) -> Result<AinftyReport> {
        let n = self.len();
        let mut tuples = Vec::new();
        for k in 1..=k_max.min(n.saturating_sub(1)) {
            distinct_tuples(n, k + 1, &mut Vec::new(), &mut tuples);
        }
        let mut relations = 0;
        for objs in &tuples {
            let sizes: Vec<usize> = objs.windows(2).map(|w| self.gens[&(w[0], w[1])].len()).collect();
            for corners in product(&sizes) {
                relations += 1;
                let r = self.relation(objs, &corners)?;
                if !r.is_zero() {
                    let out = &self.gens[&(objs[0], objs[objs.len() - 1])];
                    return Ok(AinftyReport {
                        pass: false,
                        k_max,
                        tuples: tuples.len(),
                        relations,
                        witness: Some(Witness {
                            objects: objs.iter().map(|&i| self.name(i).to_string()).collect(),
                            inputs: objs.windows(2).zip(&corners).map(|(w, &p)| self.gens[&(w[0], w[1])][p].name()).collect(),
                            residue: r.terms().map(|(q, c)| (out[q].name(), c.clone())).collect(),
                        }),
                    });
                }
            }
        }
        Ok(AinftyReport { pass: true, k_max, tuples: tuples.len(), relations, witness: None })
    }

    /// `∂(p₂·p₁) = (∂p₂)·p₁ + p₂·(∂p₁)` for all generators, expanded through the tables directly.
    pub fn leibniz_check(&self, a: usize, b: usize, c: usize) -> Result<LeibnizReport> {
        let (dab, dbc, dac) = (self.differential(a, b)?, self.differential(b, c)?, self.differential(a, c)?);
        let prod = self.table(&[a, b, c])?;
        let (nab, nbc, nac) = (dab.rows(), dbc.rows(), dac.rows());
        let m = |p2: usize, p1: usize| -> Vec<Novikov> {
            let mut v = vec![Novikov::zero(); nac];
            if let Some(row) = prod.entries.get(&vec![p1, p2]) {
                for (&q, w) in row {
                    v[q] = w.clone();
                }
            }
            v
        };
        let mut checked = 0;
        let mut failures = Vec::new();
        for p1 in 0..nab {
            for p2 in 0..nbc {
                checked += 1;
                let direct = m(p2, p1);
                let mut diff = vec![Novikov::zero(); nac];
                for q in 0..nac {
                    for r in 0..nac {
                        diff[q] = diff[q].add(&dac.get(q, r).mul(&direct[r]));
                    }
                }
                for x in 0..nab {
                    let c1 = dab.get(x, p1);
                    if !c1.is_zero() {
                        for (q, v) in m(p2, x).iter().enumerate() {
                            diff[q] = diff[q].add(&c1.mul(v));
                        }
                    }
                }
                for y in 0..nbc {
                    let c2 = dbc.get(y, p2);
                    if !c2.is_zero() {
                        for (q, v) in m(y, p1).iter().enumerate() {
                            diff[q] = diff[q].add(&c2.mul(v));
                        }
                    }
                }
                if diff.iter().any(|v| !v.is_zero_to_precision()) {
                    failures.push((self.gens[&(b, c)][p2].name(), self.gens[&(a, b)][p1].name()));
                }
            }
        }
        Ok(LeibnizReport { pass: failures.is_empty(), checked, failures })
    }
}

fn distinct_tuples(n: usize, len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    for i in 0..n {
        if !prefix.contains(&i) {
            prefix.push(i);
            distinct_tuples(n, len, prefix, out);
            prefix.pop();
        }
    }
}

/// All index tuples below the given sizes, in lexicographic order.
pub(crate) fn product(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out.into_iter().flat_map(|p| (0..s).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

/// A violated A∞ relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub objects: Vec<String>,
    pub inputs: Vec<String>,
    pub residue: Vec<(String, Novikov)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AinftyReport {
    pub pass: bool,
    pub k_max: usize,
    pub tuples: usize,
    pub relations: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeibnizReport {
    pub pass: bool,
    pub checked: usize,
    /// `(p₂, p₁)` pairs where the rule fails.
    pub failures: Vec<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Component, Deck, Vec2};
    use crate::rational::{int, rat};

    fn plane_line(name: &str, base: (i64, i64), dir: (i64, i64)) -> Object {
        Object::ungraded(Curve::line(name, Surface::Plane, Vec2::ints(base.0, base.1), Vec2::ints(dir.0, dir.1)).unwrap())
    }

    #[test]
    fn plane_triangle_product() {
        // x-axis, the vertical line x = 2 and the diagonal through the origin bound one triangle.
        let cat = Category::new(
            Surface::Plane,
            vec![plane_line("a", (0, 0), (1, 0)), plane_line("b", (2, 0), (0, 1)), plane_line("c", (-1, 0), (1, 1))],
            Counting::default(),
        )
        .unwrap();
        let p = cat.floer_product(0, 1, 2, 0, 0).unwrap();
        assert_eq!(p.coeffs, vec![Novikov::monomial(rat(9, 2))]);
        let reverse = cat.floer_product(0, 2, 1, 0, 0).unwrap();
        assert!(reverse.is_zero());
    }

    #[test]
    fn triple_points_are_rejected() {
        let cat = Category::new(
            Surface::Plane,
            vec![plane_line("a", (0, 0), (1, 0)), plane_line("b", (0, 0), (0, 1)), plane_line("c", (0, 0), (1, 1))],
            Counting::default(),
        );
        assert!(matches!(cat, Err(Error::Geom(GeomError::TriplePoint { .. }))));
    }

    #[test]
    fn repeated_names_are_rejected() {
        let cat = Category::new(Surface::Plane, vec![plane_line("a", (0, 0), (1, 0)), plane_line("a", (0, 1), (0, 1))], Counting::default());
        assert!(matches!(cat, Err(Error::RepeatedObject(_))));
    }

    #[test]
    fn plane_relations_hold() {
        let cat = Category::new(
            Surface::Plane,
            vec![
                plane_line("h", (0, 0), (1, 0)),
                plane_line("v", (3, 0), (0, 1)),
                plane_line("d", (0, 1), (1, 1)),
                plane_line("e", (0, 5), (1, -1)),
            ],
            Counting::default(),
        )
        .unwrap();
        let r = cat.ainfty_check(4).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.tuples, 12 + 24 + 24);
    }

    #[test]
    fn leibniz_on_morse_pushoff() {
        let l = Curve::line("L", Surface::Cylinder, Vec2::ints(0, 0), Vec2::ints(1, 0)).unwrap();
        let z = Curve::new(
            "psiL",
            vec![Component::Loop {
                vertices: vec![Vec2::new(rat(1, 4), rat(-1, 4)), Vec2::new(rat(3, 4), rat(1, 4))],
                monodromy: Deck(1, 0),
            }],
        )
        .unwrap();
        let t = Curve::line("T", Surface::Cylinder, Vec2::new(rat(3, 8), int(0)), Vec2::ints(0, 1)).unwrap();
        let cat = Category::new(Surface::Cylinder, vec![Object::ungraded(l), Object::ungraded(z), Object::ungraded(t)], Counting::default()).unwrap();
        for (a, b, c) in [(0, 1, 2), (1, 0, 2), (2, 0, 1), (0, 2, 1)] {
            let r = cat.leibniz_check(a, b, c).unwrap();
            assert!(r.pass, "{a}{b}{c}: {r:?}");
        }
        assert!(cat.ainfty_check(2).unwrap().pass);
    }

    #[test]
    fn products_enumerate_lexicographically() {
        assert_eq!(product(&[2, 1, 2]), vec![vec![0, 0, 0], vec![0, 0, 1], vec![1, 0, 0], vec![1, 0, 1]]);
        assert_eq!(product(&[0, 3]).len(), 0);
    }
}
