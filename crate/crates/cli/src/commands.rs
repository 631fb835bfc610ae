//! One function per subcommand, each returning an [`Outcome`].

use flatfloer::ainfty::{Category, MuEntry, Object};
use flatfloer::coeffs::NovMatrix;
use flatfloer::floer::{floer_complex, ChainComplex, Counting, DSquared, Ranks};
use flatfloer::geom::{curve_contains, dehn_twist_torus, surgery, Curve, Surface, Vec2};
use flatfloer::rational::{fmt_rat, Rat};
use flatfloer::scene::{curve_text, Scene};
use flatfloer::tw::{cone_of, cone_triangle_check, hom_cohomology, hom_complex, TwHom, TwistedComplex};
use flatfloer::wrapped::WrappedScene;
use serde_json::{json, Value};

use crate::report::{Failure, Outcome};

type Run = Result<Outcome, Failure>;

fn ranks_text(r: &Ranks) -> String {
    let mut s = format!("rank {}", r.total);
    if let Some(by) = &r.by_degree {
        let parts: Vec<String> = by.iter().map(|(d, n)| format!("H^{d} = {n}")).collect();
        s += &format!(" ({})", parts.join(", "));
    } else if let Some([even, odd]) = r.by_parity {
        s += &format!(" (even {even}, odd {odd})");
    }
    if !r.certified {
        s += " [not certified below the cutoff]";
    }
    s
}

fn entry_lines(entries: &[MuEntry]) -> Vec<String> {
    if entries.is_empty() {
        return vec!["  (no nonzero coefficients)".into()];
    }
    entries.iter().map(|e| format!("  mu({}) -> {} : {}", e.inputs.join(", "), e.output, e.coefficient)).collect()
}

fn differential_entries(c: &ChainComplex) -> (Vec<Value>, Vec<String>) {
    let (mut data, mut lines) = (Vec::new(), Vec::new());
    for p in 0..c.len() {
        for q in 0..c.len() {
            let v = c.d.get(q, p);
            if !(v.is_zero() && v.is_exact()) {
                data.push(json!({ "source": c.labels[p], "target": c.labels[q], "coefficient": v }));
                lines.push(format!("  d {} -> {} : {v}", c.labels[p], c.labels[q]));
            }
        }
    }
    (data, lines)
}

pub fn hf(scene: &Scene, counting: &Counting, l0: &str, l1: &str) -> Run {
    if l0 == l1 {
        return Err(Failure::Usage(format!(
            "hf needs two distinct curves; for HF({l0}, {l0}) add a transverse pushoff of {l0} to the scene and pass its name"
        )));
    }
    let (c0, c1) = (scene.curve(l0)?, scene.curve(l1)?);
    let (g0, g1) = (scene.lift(l0)?, scene.lift(l1)?);
    let fc = floer_complex(scene.surface, c0, c1, g0.as_ref().zip(g1.as_ref()), counting)?;
    let chain = fc.chain();
    let mut lines = vec![format!("CF({l0}, {l1}): {} generators, {} bigons", fc.generators.len(), fc.bigons.len())];
    for g in &fc.generators {
        let deg = g.degree.map(|d| d.to_string()).unwrap_or_else(|| format!("{} mod 2", g.parity));
        lines.push(format!("  {} at {} degree {deg}", g.name(), g.point));
    }
    let (diff, diff_lines) = differential_entries(&chain);
    lines.push(format!("differential: {} nonzero entries", diff.len()));
    lines.extend(diff_lines);
    if !fc.complete {
        lines.push("note: a contractible closed curve is present; only embedded polygons are counted".into());
    }
    let d2 = chain.d_squared_check();
    let (pass, ranks) = match &d2 {
        DSquared::Zero => {
            let r = chain.ranks()?;
            lines.push("d^2 = 0".into());
            lines.push(format!("HF({l0}, {l1}): {}", ranks_text(&r)));
            (true, Some(r))
        }
        DSquared::Obstructed(entries) => {
            lines.push(format!("d^2 != 0: obstructed at {} entries, HF is undefined", entries.len()));
            for o in entries {
                lines.push(format!("  d^2 {} -> {} : {}", o.source, o.target, o.coefficient));
            }
            (false, None)
        }
    };
    let data = json!({
        "left": l0,
        "right": l1,
        "generators": fc.generators,
        "differential": diff,
        "bigons": fc.bigons.len(),
        "complete": fc.complete,
        "d_squared": d2,
        "ranks": ranks,
    });
    Ok(Outcome { pass, stabilized: fc.stabilized, data, lines })
}

/// `μ^k` on a chain of `k + 1` named objects.
pub fn mu(scene: &Scene, counting: &Counting, names: &[String]) -> Run {
    if names.len() < 2 {
        return Err(Failure::Usage("mu needs at least two objects".into()));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let cat = scene.subcategory(&refs, counting)?;
    let objs: Vec<usize> = (0..names.len()).collect();
    let entries = cat.entries(&objs)?;
    let table = cat.table(&objs)?;
    let k = names.len() - 1;
    let mut lines = vec![format!("mu^{k} on ({}): {} polygons", names.join(", "), table.polygons.len())];
    lines.extend(entry_lines(&entries));
    let data = json!({ "k": k, "objects": names, "polygons": table.polygons.len(), "entries": entries });
    Ok(Outcome { pass: true, stabilized: table.stabilized, data, lines })
}

pub fn check_ainfty(scene: &Scene, counting: &Counting, k_max: usize) -> Run {
    if k_max == 0 {
        return Err(Failure::Usage("kmax must be at least 1".into()));
    }
    let cat = scene.category(counting)?;
    let report = cat.ainfty_check(k_max)?;
    let mut lines = vec![format!(
        "A-infinity relations up to k = {k_max}: {} tuples of distinct objects, {} relations",
        report.tuples, report.relations
    )];
    match &report.witness {
        None => lines.push("all relations hold".into()),
        Some(w) => {
            lines.push(format!("violated on ({}) with inputs ({})", w.objects.join(", "), w.inputs.join(", ")));
            for (g, c) in &w.residue {
                lines.push(format!("  residue at {g} : {c}"));
            }
        }
    }
    if !cat.complete() {
        lines.push("note: a contractible closed curve is present; only embedded polygons are counted".into());
    }
    Ok(Outcome { pass: report.pass, stabilized: cat.stabilized(), data: json!(report), lines })
}

/// Position of a generator of `hom(s, t)` given by index or by name.
fn generator_index(cat: &Category, s: usize, t: usize, spec: &str) -> Result<usize, Failure> {
    let gens = cat.gens(s, t)?;
    let found = match spec.parse::<usize>() {
        Ok(i) => (i < gens.len()).then_some(i),
        Err(_) => gens.iter().position(|g| g.name() == spec),
    };
    found.ok_or_else(|| {
        let names: Vec<String> = gens.iter().map(|g| g.name()).collect();
        Failure::Usage(format!("no generator `{spec}` in hom({}, {}); available: {}", cat.name(s), cat.name(t), names.join(" ")))
    })
}

fn test_indices(cat: &Category, tests: &[String], exclude: &[usize]) -> Result<Vec<usize>, Failure> {
    if tests.is_empty() {
        return Ok((0..cat.len()).filter(|i| !exclude.contains(i)).collect());
    }
    tests.iter().map(|t| cat.index(t).map_err(Failure::from)).collect()
}

fn twisted_text(cat: &Category, tw: &TwistedComplex) -> (Value, Vec<String>) {
    let summands: Vec<Value> = tw.summands.iter().map(|s| json!({ "object": cat.name(s.object), "shift": s.shift })).collect();
    let mut delta = Vec::new();
    let mut lines = vec![format!(
        "summands: {}",
        tw.summands.iter().map(|s| format!("{}[{}]", cat.name(s.object), s.shift)).collect::<Vec<_>>().join(" + ")
    )];
    for (&(i, j), m) in &tw.delta {
        let gens = cat.gens(m.source, m.target).expect("delta between distinct objects");
        for (g, c) in m.terms() {
            delta.push(json!({ "from": i, "to": j, "generator": gens[g].name(), "coefficient": c }));
            lines.push(format!("  delta {i} -> {j} : {} {}", c, gens[g].name()));
        }
    }
    (json!({ "summands": summands, "delta": delta }), lines)
}

pub struct MorphismArgs<'a> {
    pub source: &'a str,
    pub target: &'a str,
    pub generator: &'a str,
    pub tests: &'a [String],
}

pub fn cone(scene: &Scene, counting: &Counting, args: &MorphismArgs<'_>) -> Run {
    let cat = scene.category(counting)?;
    let (s, t) = (cat.index(args.source)?, cat.index(args.target)?);
    let g = generator_index(&cat, s, t, args.generator)?;
    let f = cat.basis(s, t, g)?;
    let c = cone_of(&cat, &f)?;
    let (shape, mut lines) = twisted_text(&cat, &c);
    lines.insert(0, format!("Cone({}: {} -> {})", cat.gens(s, t)?[g].name(), args.source, args.target));
    let mut tests = Vec::new();
    for t in test_indices(&cat, args.tests, &[s, t])? {
        let r = hom_cohomology(&cat, t, &c)?;
        lines.push(format!("hom({}, Cone): {}", cat.name(t), ranks_text(&r)));
        tests.push(json!({ "test": cat.name(t), "ranks": r }));
    }
    let data = json!({ "morphism": cat.gens(s, t)?[g].name(), "cone": shape, "tests": tests });
    Ok(Outcome { pass: true, stabilized: cat.stabilized(), data, lines })
}

pub fn triangle_check(scene: &Scene, counting: &Counting, args: &MorphismArgs<'_>) -> Run {
    let cat = scene.category(counting)?;
    let (s, t) = (cat.index(args.source)?, cat.index(args.target)?);
    let g = generator_index(&cat, s, t, args.generator)?;
    let f = cat.basis(s, t, g)?;
    let tests = test_indices(&cat, args.tests, &[s, t])?;
    let report = cone_triangle_check(&cat, &TwistedComplex::single(s), &TwistedComplex::single(t), &TwHom::single(f), &tests)?;
    let mut lines = vec![format!("triangle {} -> {} -> Cone -> {}[1] against {} test objects", args.source, args.target, args.source, tests.len())];
    for spot in &report.tests {
        lines.push(format!(
            "  {}: dims {:?} map ranks {:?} exact {:?} chain maps {}{}",
            spot.test,
            spot.dims,
            spot.ranks,
            spot.exact,
            spot.chain_maps,
            if spot.certified { "" } else { " [not certified]" }
        ));
    }
    Ok(Outcome { pass: report.pass, stabilized: cat.stabilized(), data: json!(report), lines })
}

fn same_line(surface: Surface, a: &Curve, b: &Curve) -> bool {
    match (a.as_straight_line(), b.as_straight_line()) {
        (Some((_, da)), Some((pb, db))) => da.cross(&db) == Rat::from_integer(0.into()) && curve_contains(surface, a, &pb),
        _ => false,
    }
}

pub fn dehn_twist(scene: &Scene, counting: &Counting, curve: &str, axis: &str, tests: &[String]) -> Run {
    if scene.surface != Surface::Torus {
        return Err(Failure::Usage("dehn-twist works on torus scenes".into()));
    }
    let image = dehn_twist_torus(scene.curve(curve)?, scene.curve(axis)?, format!("tau_{axis}_{curve}"))?;
    let existing = scene.curves.iter().find(|c| same_line(scene.surface, c, &image));
    let mut lines = Vec::new();
    let image_name = match existing {
        Some(c) => {
            lines.push(format!("image of {curve} under the twist about {axis} is the scene curve {}", c.name));
            c.name.clone()
        }
        None => {
            lines.push(format!("image of {curve} under the twist about {axis}:"));
            lines.extend(curve_text(&image).lines().map(str::to_string));
            image.name.clone()
        }
    };
    let class = image.homology_class();
    let mut data = json!({ "curve": curve, "axis": axis, "image": curve_text(&image), "class": [class.0, class.1], "scene_curve": existing.map(|c| c.name.clone()) });
    if tests.is_empty() {
        return Ok(Outcome { pass: true, stabilized: true, data, lines });
    }
    let mut objects: Vec<Object> = scene.curves.iter().map(|c| scene.object(&c.name)).collect::<Result<_, _>>()?;
    if existing.is_none() {
        objects.push(Object::ungraded(image.clone()));
    }
    let cat = Category::new(scene.surface, objects, counting.clone())?;
    let (a, c, img) = (cat.index(axis)?, cat.index(curve)?, cat.index(&image_name)?);
    let gens = cat.gens(a, c)?;
    if gens.len() != 1 {
        lines.push(format!("{axis} meets {curve} {} times; the cone comparison needs a single crossing", gens.len()));
        data["comparison"] = Value::Null;
        return Ok(Outcome { pass: true, stabilized: cat.stabilized(), data, lines });
    }
    let cone = cone_of(&cat, &cat.basis(a, c, 0)?)?;
    let mut pass = true;
    let mut rows = Vec::new();
    for t in test_indices(&cat, tests, &[])? {
        let rc = hom_cohomology(&cat, t, &cone)?;
        let ri = hom_cohomology(&cat, t, &TwistedComplex::single(img))?;
        let agree = rc.total == ri.total;
        pass &= agree;
        lines.push(format!("  {}: Cone({axis} -> {curve}) {} vs image {}{}", cat.name(t), rc.total, ri.total, if agree { "" } else { "  MISMATCH" }));
        rows.push(json!({ "test": cat.name(t), "cone": rc, "image": ri, "agree": agree }));
    }
    data["comparison"] = json!(rows);
    Ok(Outcome { pass, stabilized: cat.stabilized(), data, lines })
}

/// Parses `(x,y)` with rational coordinates.
pub fn parse_point(s: &str) -> Result<Vec2, String> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    match inner.split(',').map(|t| flatfloer::rational::parse_rat(t.trim())).collect::<Option<Vec<_>>>().as_deref() {
        Some([x, y]) => Ok(Vec2::new(x.clone(), y.clone())),
        _ => Err(format!("`{s}` is not a point (x,y)")),
    }
}

/// Matrix of `c` with rows and columns reordered to follow `points`, mod 2.
fn reordered_mod2(surface: Surface, points: &[Vec2], gens: &[Vec2], d: &NovMatrix) -> Option<Vec<Vec<bool>>> {
    if points.len() != gens.len() {
        return None;
    }
    let perm: Vec<usize> = points.iter().map(|p| gens.iter().position(|g| surface.same_point(g, p))).collect::<Option<_>>()?;
    let flat = d.specialize_at_one();
    Some(perm.iter().map(|&r| perm.iter().map(|&c| flat[r][c]).collect()).collect())
}

pub struct SurgeryArgs<'a> {
    pub l1: &'a str,
    pub l2: &'a str,
    pub point: &'a Vec2,
    pub eps: &'a Rat,
    pub tests: &'a [String],
}

pub fn surgery_cmd(scene: &Scene, counting: &Counting, args: &SurgeryArgs<'_>) -> Run {
    let (l1, l2) = (scene.curve(args.l1)?, scene.curve(args.l2)?);
    let name = format!("{}#{}", args.l1, args.l2);
    let resolved = surgery(scene.surface, l1, l2, args.point, args.eps, name.clone())?;
    let text = curve_text(&resolved);
    let mut lines = vec![format!("{name} resolves {} at {} with eps {}:", args.l1, args.point, fmt_rat(args.eps))];
    lines.extend(text.lines().map(str::to_string));
    let mut data = json!({ "curve": text, "point": args.point, "eps": fmt_rat(args.eps) });
    if args.tests.is_empty() {
        return Ok(Outcome { pass: true, stabilized: true, data, lines });
    }
    let mut names: Vec<&str> = args.tests.iter().map(String::as_str).collect();
    names.extend([args.l2, args.l1]);
    let cat = scene.subcategory(&names, counting)?;
    let (b2, b1) = (cat.index(args.l2)?, cat.index(args.l1)?);
    let p = cat
        .gens(b2, b1)?
        .iter()
        .position(|g| scene.surface.same_point(&g.point, args.point))
        .ok_or_else(|| Failure::Usage(format!("{} and {} do not cross at {}", args.l2, args.l1, args.point)))?;
    let cone = cone_of(&cat, &cat.basis(b2, b1, p)?)?;
    let mut pass = true;
    let mut stabilized = true;
    let mut rows = Vec::new();
    for test in args.tests {
        let t = cat.index(test)?;
        let hb = hom_complex(&cat, &TwistedComplex::single(t), &cone)?;
        let points: Vec<Vec2> = hb.entries.iter().map(|&(_, j, g)| cat.gens(t, cone.summands[j].object).map(|gs| gs[g].point.clone())).collect::<Result<_, _>>()?;
        let fc = floer_complex(scene.surface, scene.curve(test)?, &resolved, None, counting)?;
        stabilized &= fc.stabilized;
        let gen_points: Vec<Vec2> = fc.generators.iter().map(|g| g.point.clone()).collect();
        let ours = reordered_mod2(scene.surface, &points, &gen_points, &fc.differential);
        let theirs = hb.complex.d.specialize_at_one();
        let agree = ours.as_ref() == Some(&theirs);
        pass &= agree;
        let (rs, rc) = (fc.cohomology_ranks()?, hb.complex.ranks()?);
        lines.push(format!(
            "  {test}: CF({test}, {name}) {} generators, Cone block {}; differentials {} mod 2; ranks {} vs {}",
            fc.generators.len(),
            hb.entries.len(),
            if agree { "agree" } else { "DIFFER" },
            rs.total,
            rc.total
        ));
        rows.push(json!({ "test": test, "generators": fc.generators.len(), "cone_generators": hb.entries.len(), "agree_mod2": agree, "surgery_ranks": rs, "cone_ranks": rc }));
    }
    data["comparison"] = json!(rows);
    Ok(Outcome { pass, stabilized: stabilized && cat.stabilized(), data, lines })
}

pub fn wrapped(w: &WrappedScene) -> Run {
    let gens = w.generators();
    let (d, bigons) = w.differential()?;
    let products = w.product_table()?;
    let higher = [w.higher(3)?, w.higher(4)?];
    let laurent = w.laurent_isomorphism_check()?;
    let d_zero = d.is_zero();
    let mut lines = vec![format!("CW(L, L) on the window |i| <= {}: {} generators", w.window, gens.len())];
    for g in &gens {
        lines.push(format!("  x_{} at r = {} degree {}", g.index, g.r, g.degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into())));
    }
    lines.push(format!("differential: {} ({bigons} bigons)", if d_zero { "zero" } else { "nonzero" }));
    lines.push(format!("products: {}", products.len()));
    for p in &products {
        let out = match p.outputs.as_slice() {
            [k] => format!("x_{k}"),
            ks => format!("{ks:?}"),
        };
        lines.push(format!("  x_{} * x_{} = {out}  (area {})", p.j, p.i, p.areas.join(", ")));
    }
    for h in &higher {
        lines.push(format!(
            "mu^{}: {} input tuples, {} polygons, {} nonzero entries, degree forbids {}",
            h.k, h.input_tuples, h.polygons, h.nonzero_entries, h.degree_forbids
        ));
    }
    lines.push(format!(
        "Laurent k[x, x^-1]: {} (index addition {}, unique triangles {}, commutative {}, associative {}, unit {}, inverse {})",
        if laurent.pass { "pass" } else { "fail" },
        laurent.index_addition,
        laurent.unique_triangles,
        laurent.commutative,
        laurent.associative,
        laurent.unit,
        laurent.inverse
    ));
    let pass = d_zero && laurent.pass && higher.iter().all(|h| h.polygons == 0);
    let stabilized = w.category().stabilized() && higher.iter().all(|h| h.stabilized);
    let data = json!({
        "window": w.window,
        "theta0": fmt_rat(&w.theta0),
        "generators": gens,
        "differential": { "zero": d_zero, "bigons": bigons },
        "products": products,
        "higher": higher,
        "laurent": laurent,
    });
    Ok(Outcome { pass, stabilized, data, lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use flatfloer::rational::rat;

    #[test]
    fn points_parse_with_or_without_parentheses() {
        assert_eq!(parse_point("(1/2,-3)").unwrap(), Vec2::new(rat(1, 2), rat(-3, 1)));
        assert_eq!(parse_point(" 0 , 0 ").unwrap(), Vec2::ints(0, 0));
        assert!(parse_point("(1,2,3)").is_err());
        assert!(parse_point("(x,1)").is_err());
    }
}
