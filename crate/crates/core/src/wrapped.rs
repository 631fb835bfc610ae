//! The wrapped Floer algebra of a cotangent fibre of the cylinder.
//!
//! In the cover `ℝ²` with coordinates `(θ, r)`, the fibre is `θ = θ₀` and its
//! image under the time-`m` flow of `H = r²` is the line `θ = θ₀ + τ_m − 2m·r`.
//! The offsets `τ_m` are zero for the fibre and its first image and small and
//! generic otherwise, which keeps every pair of images transverse without
//! triple points.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::ainfty::{Category, Object};
use crate::coeffs::{CoeffMode, NovMatrix};
use crate::error::{Error, Result};
use crate::floer::Counting;
use crate::geom::{Curve, GradedLift, Surface, Vec2};
use crate::polygons::SearchBudget;
use crate::rational::{fmt_rat, int, rat, Rat};

/// Offsets of the flow images `φ^0 L, …, φ^4 L`.
fn offset(m: usize) -> Rat {
    [rat(0, 1), rat(0, 1), rat(1, 4), rat(3, 7), rat(2, 11)][m].clone()
}

fn flow_image(m: usize, theta0: &Rat) -> Result<Object> {
    let name = if m == 0 { "L".to_string() } else { format!("phi{m}L") };
    let base = Vec2::new(theta0 + offset(m), int(0));
    let curve = Curve::line(name, Surface::Cylinder, base, Vec2::ints(-2 * m as i64, 1))?.with_exact(true);
    let lift = GradedLift::new(&curve, &[0])?;
    Ok(Object::new(curve, Some(lift)))
}

/// A wrapped generator `x_i` of `CW(L, L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WrappedGenerator {
    pub index: i64,
    pub r: String,
    pub degree: Option<i64>,
}

/// One product `x_j · x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductEntry {
    pub i: i64,
    pub j: i64,
    /// Indices `k` with `x_k` in the product, one per counted triangle.
    pub outputs: Vec<i64>,
    /// Areas of the counted triangles.
    pub areas: Vec<String>,
}

impl ProductEntry {
    pub fn output(&self) -> Option<i64> {
        match self.outputs.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }
}

/// Vanishing of `μ^k` for `k ≥ 3`, by enumeration and by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HigherReport {
    pub k: usize,
    pub input_tuples: usize,
    pub polygons: usize,
    pub nonzero_entries: usize,
    /// All generators sit in degree 0 while `μ^k` has degree `2 − k`.
    pub degree_forbids: bool,
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentReport {
    pub pass: bool,
    pub index_addition: bool,
    pub unique_triangles: bool,
    pub commutative: bool,
    pub associative: bool,
    pub unit: bool,
    pub inverse: bool,
}

/// Fibre, flow images and the counted tables on a window `|i| ≤ N`.
pub struct WrappedScene {
    pub window: i64,
    pub theta0: Rat,
    cat: Category,
    /// Generator positions of `X(φ¹L, L)`, `X(φ²L, φ¹L)`, `X(φ²L, L)` by label.
    x: HashMap<i64, usize>,
    y: HashMap<i64, usize>,
    z: HashMap<i64, usize>,
}

fn budget_for(window: i64) -> SearchBudget {
    SearchBudget { deck_radius: (2 * window + 3) as u32, ..SearchBudget::default() }
}

fn counting_for(window: i64) -> Counting {
    // The r-strip must hold every in-window corner of the steepest image.
    let reach = rat(window, 2) + rat(1, 2);
    Counting { budget: budget_for(window), mode: CoeffMode::Novikov, strip: Some((-reach.clone(), reach)) }
}

fn label(y: &Rat, scale: i64, shift: &Rat) -> Option<i64> {
    let v = y * int(scale) - shift;
    v.is_integer().then(|| i64::try_from(v.to_integer()).expect("small label"))
}

impl WrappedScene {
    pub fn new(window: i64) -> Result<WrappedScene> {
        Self::with_base(window, rat(1, 3))
    }

    pub fn with_base(window: i64, theta0: Rat) -> Result<WrappedScene> {
        if window < 1 {
            return Err(Error::Invalid("the window must be at least 1".into()));
        }
        let objects = vec![flow_image(2, &theta0)?, flow_image(1, &theta0)?, flow_image(0, &theta0)?];
        let cat = Category::new(Surface::Cylinder, objects, counting_for(window))?;
        let index = |a: usize, b: usize, scale: i64, shift: Rat| -> Result<HashMap<i64, usize>> {
            Ok(cat
                .gens(a, b)?
                .iter()
                .enumerate()
                .filter_map(|(n, g)| label(&g.point.y, scale, &shift).map(|l| (l, n)))
                .collect())
        };
        let x = index(1, 2, 2, rat(0, 1))?;
        let y = index(0, 1, 2, offset(2))?;
        let z = index(0, 2, 4, offset(2))?;
        Ok(WrappedScene { window, theta0, cat, x, y, z })
    }

    fn check(&self, i: i64) -> Result<()> {
        if i.abs() > self.window {
            Err(Error::OutOfWindow(i))
        } else {
            Ok(())
        }
    }

    pub fn category(&self) -> &Category {
        &self.cat
    }

    /// `x_i` for `|i| ≤ N`, in increasing `r`.
    pub fn generators(&self) -> Vec<WrappedGenerator> {
        let gens = self.cat.gens(1, 2).expect("distinct objects");
        (-self.window..=self.window)
            .map(|i| {
                let g = &gens[self.x[&i]];
                WrappedGenerator { index: i, r: fmt_rat(&g.point.y), degree: g.degree }
            })
            .collect()
    }

    /// The differential on the window and the number of bigons counted.
    pub fn differential(&self) -> Result<(NovMatrix, usize)> {
        let full = self.cat.differential(1, 2)?;
        let idx: Vec<usize> = (-self.window..=self.window).map(|i| self.x[&i]).collect();
        let rows = idx.iter().map(|&q| idx.iter().map(|&p| full.get(q, p).clone()).collect()).collect();
        Ok((NovMatrix::from_rows(rows), self.cat.table(&[1, 2])?.polygons.len()))
    }

    /// `x_j · x_i` counted by triangles with corners `φ¹(x_i)`, `x_j` and output `x̃_k`.
    pub fn product(&self, i: i64, j: i64) -> Result<ProductEntry> {
        self.check(i)?;
        self.check(j)?;
        self.check(i + j)?;
        let table = self.cat.table(&[0, 1, 2])?;
        let key = vec![self.y[&i], self.x[&j]];
        let back: BTreeMap<usize, i64> = self.z.iter().map(|(&l, &n)| (n, l)).collect();
        let mut outputs = Vec::new();
        let mut areas = Vec::new();
        for poly in table.polygons.iter().filter(|p| p.corners == key) {
            outputs.push(back[&poly.output]);
            areas.push(fmt_rat(&poly.area));
        }
        Ok(ProductEntry { i, j, outputs, areas })
    }

    pub fn product_table(&self) -> Result<Vec<ProductEntry>> {
        let n = self.window;
        let mut out = Vec::new();
        for i in -n..=n {
            for j in -n..=n {
                if (i + j).abs() <= n {
                    out.push(self.product(i, j)?);
                }
            }
        }
        Ok(out)
    }

    /// Counts `(k+1)`-gons among `φ^k L, …, φ¹L, L` for `k ∈ {3, 4}`.
    pub fn higher(&self, k: usize) -> Result<HigherReport> {
        if !(3..=4).contains(&k) {
            return Err(Error::Invalid(format!("higher products are checked for k = 3 and 4, not {k}")));
        }
        let objects = (0..=k).rev().map(|m| flow_image(m, &self.theta0)).collect::<Result<Vec<_>>>()?;
        let cat = Category::new(Surface::Cylinder, objects, counting_for(self.window))?;
        let objs: Vec<usize> = (0..=k).collect();
        let table = cat.table(&objs)?;
        let degrees_zero = (0..k).all(|a| cat.gens(a, a + 1).map(|g| g.iter().all(|x| x.degree == Some(0))).unwrap_or(false))
            && cat.gens(0, k).map(|g| g.iter().all(|x| x.degree == Some(0))).unwrap_or(false);
        let input_tuples = (0..k).map(|a| cat.gens(a, a + 1).map(<[_]>::len)).collect::<Result<Vec<_>>>()?.iter().product();
        Ok(HigherReport {
            k,
            input_tuples,
            polygons: table.polygons.len(),
            nonzero_entries: table.entries.len(),
            degree_forbids: degrees_zero && k != 2,
            stabilized: table.stabilized,
        })
    }

    /// Checks that the counted products realize truncated Laurent multiplication.
    pub fn laurent_isomorphism_check(&self) -> Result<LaurentReport> {
        let n = self.window;
        let table: HashMap<(i64, i64), ProductEntry> = self.product_table()?.into_iter().map(|e| ((e.i, e.j), e)).collect();
        let prod = |i: i64, j: i64| table.get(&(i, j)).and_then(ProductEntry::output);
        let unique_triangles = table.values().all(|e| e.outputs.len() == 1);
        let index_addition = table.values().all(|e| e.output() == Some(e.i + e.j));
        let commutative = table.keys().all(|&(i, j)| prod(i, j) == prod(j, i));
        let mut associative = true;
        for a in -n..=n {
            for b in -n..=n {
                for c in -n..=n {
                    if [a + b, b + c, a + b + c].iter().all(|s| s.abs() <= n) {
                        // x_c · (x_b · x_a) against (x_c · x_b) · x_a.
                        let left = prod(a, b).and_then(|ab| prod(ab, c));
                        let right = prod(b, c).and_then(|bc| prod(a, bc));
                        associative &= left.is_some() && left == right;
                    }
                }
            }
        }
        let unit = (-n..=n).all(|i| prod(i, 0) == Some(i) && prod(0, i) == Some(i));
        let inverse = prod(-1, 1) == Some(0) && prod(1, -1) == Some(0);
        Ok(LaurentReport {
            pass: unique_triangles && index_addition && commutative && associative && unit && inverse,
            index_addition,
            unique_triangles,
            commutative,
            associative,
            unit,
            inverse,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_sit_at_half_integers() {
        let w = WrappedScene::new(2).unwrap();
        let g = w.generators();
        assert_eq!(g.iter().map(|x| x.index).collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(g.iter().map(|x| x.r.as_str()).collect::<Vec<_>>(), vec!["-1", "-1/2", "0", "1/2", "1"]);
        assert!(g.iter().all(|x| x.degree == Some(0)));
    }

    #[test]
    fn differential_vanishes() {
        let w = WrappedScene::new(2).unwrap();
        let (d, bigons) = w.differential().unwrap();
        assert_eq!(bigons, 0);
        assert!((0..5).all(|i| (0..5).all(|j| d.get(i, j).is_zero())));
    }

    #[test]
    fn products_add_indices() {
        let w = WrappedScene::new(2).unwrap();
        assert_eq!(w.product(1, 0).unwrap().output(), Some(1));
        assert_eq!(w.product(1, 1).unwrap().output(), Some(2));
        assert_eq!(w.product(1, -1).unwrap().output(), Some(0));
        assert_eq!(w.product(2, 1), Err(Error::OutOfWindow(3)));
    }

    #[test]
    fn small_window_is_laurent() {
        let r = WrappedScene::new(2).unwrap().laurent_isomorphism_check().unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn higher_products_have_no_polygons() {
        let w = WrappedScene::new(1).unwrap();
        for k in [3, 4] {
            let r = w.higher(k).unwrap();
            assert_eq!(r.polygons, 0, "{r:?}");
            assert_eq!(r.nonzero_entries, 0);
            assert!(r.degree_forbids && r.input_tuples > 0);
        }
    }
}
