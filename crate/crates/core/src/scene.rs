//! Line-oriented scene files.
//!
//! ```text
//! [surface]
//! kind = torus            # plane | cylinder | torus
//! coeff = novikov         # novikov | z2
//! strip = -3 3            # optional r-window for infinitely crossing lines
//!
//! [budget]
//! deck_radius = 3
//! cutoff = 4
//!
//! [curve psiL]
//! loop (1/4,-1/4) (3/4,1/4) monodromy (1,0)
//! exact
//!
//! [grading psiL]
//! shift 0
//!
//! alpha: line (0,0) dir (1,0)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::ainfty::{Category, Object};
use crate::coeffs::CoeffMode;
use crate::error::Error;
use crate::floer::Counting;
use crate::geom::{Component, Curve, Deck, GradedLift, Strip, Surface, Vec2};
use crate::polygons::SearchBudget;
use crate::rational::{parse_rat, Rat};

/// A located problem in a scene file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SceneError {
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Parse(Vec<Diagnostic>),
    #[error("invalid scene: {0}")]
    Validation(#[from] Error),
}

/// A parsed scene: surface, curves, gradings and default budget.
#[derive(Clone, Debug)]
pub struct Scene {
    pub surface: Surface,
    pub mode: CoeffMode,
    pub budget: SearchBudget,
    pub strip: Strip,
    pub curves: Vec<Curve>,
    pub shifts: BTreeMap<String, Vec<i64>>,
    /// SHA-256 of the scene bytes, hex encoded.
    pub hash: String,
}

enum Section {
    None,
    Surface,
    Budget,
    Curve(usize),
    Grading(String),
}

struct Draft {
    name: String,
    line: usize,
    components: Vec<Component>,
    exact: bool,
    broken: bool,
}

fn tokens(s: &str) -> Vec<String> {
    s.replace(['(', ')', ','], " ").split_whitespace().map(str::to_string).collect()
}

fn point(t: &[String]) -> Result<Vec2, String> {
    match t {
        [x, y] => Ok(Vec2::new(num(x)?, num(y)?)),
        _ => Err("expected a point (x,y)".into()),
    }
}

fn num(s: &str) -> Result<Rat, String> {
    parse_rat(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn deck(t: &[String]) -> Result<Deck, String> {
    match t {
        [a, b] => Ok(Deck(a.parse().map_err(|_| format!("`{a}` is not an integer"))?, b.parse().map_err(|_| format!("`{b}` is not an integer"))?)),
        _ => Err("expected an integer vector (a,b)".into()),
    }
}

fn points(t: &[String]) -> Result<Vec<Vec2>, String> {
    if t.len() % 2 == 1 || t.is_empty() {
        return Err("expected a list of points".into());
    }
    t.chunks(2).map(point).collect()
}

fn component(surface: Surface, body: &str) -> Result<Component, String> {
    let t = tokens(body);
    let kw = t.first().map(String::as_str).unwrap_or("");
    let find = |key: &str| t.iter().position(|x| x == key).ok_or_else(|| format!("missing `{key}`"));
    match kw {
        "line" => {
            let d = find("dir")?;
            let base = point(&t[1..d])?;
            let dir = point(&t[d + 1..])?;
            let c = Curve::line("_", surface, base, dir).map_err(|e| e.to_string())?;
            Ok(c.components.into_iter().next().expect("one component"))
        }
        "loop" => {
            let m = find("monodromy")?;
            Ok(Component::Loop { vertices: points(&t[1..m])?, monodromy: deck(&t[m + 1..])? })
        }
        "path" => {
            let (i, o) = (find("in")?, find("out")?);
            if i != 1 || o < i + 3 {
                return Err("expected `path in (a,b) <points> out (c,d)`".into());
            }
            Ok(Component::Path { incoming: point(&t[2..4])?, vertices: points(&t[4..o])?, outgoing: point(&t[o + 1..])? })
        }
        _ => Err(format!("unknown curve component `{kw}`; expected line, loop or path")),
    }
}

fn key_value(line: &str) -> Option<(&str, &str)> {
    line.split_once('=').map(|(k, v)| (k.trim(), v.trim()))
}

/// SHA-256 of `text`, hex encoded.
pub fn text_hash(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

/// Parses and validates a scene; validation builds the category once.
pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let mut diags = Vec::new();
    let mut surface = None;
    let mut mode = CoeffMode::Novikov;
    let mut budget = SearchBudget::default();
    let mut strip: Strip = None;
    let mut drafts: Vec<Draft> = Vec::new();
    let mut shifts: BTreeMap<String, (usize, Vec<i64>)> = BTreeMap::new();
    let mut section = Section::None;
    let mut err = |line: usize, message: String| diags.push(Diagnostic { line, message });

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(head) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let mut parts = head.split_whitespace();
            section = match (parts.next(), parts.next(), parts.next()) {
                (Some("surface"), None, _) => Section::Surface,
                (Some("budget"), None, _) => Section::Budget,
                (Some("curve"), Some(name), None) => {
                    if drafts.iter().any(|d| d.name == name) {
                        err(line_no, format!("curve `{name}` is defined twice"));
                    }
                    drafts.push(Draft { name: name.to_string(), line: line_no, components: Vec::new(), exact: false, broken: false });
                    Section::Curve(drafts.len() - 1)
                }
                (Some("grading"), Some(name), None) => Section::Grading(name.to_string()),
                _ => {
                    err(line_no, format!("unknown section `[{head}]`"));
                    Section::None
                }
            };
            continue;
        }
        if let Some((name, body)) = line.split_once(':') {
            let name = name.trim();
            if !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                let Some(s) = surface else {
                    err(line_no, "curves need a [surface] section first".into());
                    continue;
                };
                match component(s, body) {
                    Ok(c) => drafts.push(Draft { name: name.to_string(), line: line_no, components: vec![c], exact: false, broken: false }),
                    Err(m) => err(line_no, m),
                }
                section = Section::None;
                continue;
            }
        }
        match &section {
            Section::None => err(line_no, format!("unexpected `{line}` outside a section")),
            Section::Surface => match key_value(line) {
                Some(("kind", v)) => match v.parse::<Surface>() {
                    Ok(s) => surface = Some(s),
                    Err(_) => err(line_no, format!("unknown surface `{v}`")),
                },
                Some(("coeff", "novikov")) => mode = CoeffMode::Novikov,
                Some(("coeff", "z2")) => mode = CoeffMode::Z2,
                Some(("strip", v)) => {
                    let t = tokens(v);
                    match (t.first().map(|x| num(x)), t.get(1).map(|x| num(x)), t.len()) {
                        (Some(Ok(lo)), Some(Ok(hi)), 2) if lo < hi => strip = Some((lo, hi)),
                        _ => err(line_no, "expected `strip = lo hi` with lo < hi".into()),
                    }
                }
                _ => err(line_no, format!("unknown surface setting `{line}`")),
            },
            Section::Budget => match key_value(line) {
                Some(("deck_radius", v)) => match v.parse() {
                    Ok(r) => budget.deck_radius = r,
                    Err(_) => err(line_no, format!("`{v}` is not a deck radius")),
                },
                Some(("branch_cap", v)) => match v.parse() {
                    Ok(c) => budget.branch_cap = c,
                    Err(_) => err(line_no, format!("`{v}` is not a branch cap")),
                },
                Some(("cutoff", v)) => match num(v) {
                    Ok(c) => budget.cutoff = Some(c),
                    Err(m) => err(line_no, m),
                },
                _ => err(line_no, format!("unknown budget setting `{line}`")),
            },
            Section::Curve(i) => {
                if line == "exact" {
                    drafts[*i].exact = true;
                    continue;
                }
                let Some(s) = surface else {
                    err(line_no, "curves need a [surface] section first".into());
                    continue;
                };
                match component(s, line) {
                    Ok(c) => drafts[*i].components.push(c),
                    Err(m) => {
                        drafts[*i].broken = true;
                        err(line_no, m)
                    }
                }
            }
            Section::Grading(name) => {
                let t = tokens(line);
                if t.first().map(String::as_str) != Some("shift") || t.len() < 2 {
                    err(line_no, "expected `shift s1 s2 …`".into());
                    continue;
                }
                match t[1..].iter().map(|x| x.parse::<i64>()).collect::<Result<Vec<_>, _>>() {
                    Ok(v) => {
                        shifts.insert(name.clone(), (line_no, v));
                    }
                    Err(_) => err(line_no, "grading shifts must be integers".into()),
                }
            }
        }
    }
    let Some(surface) = surface else {
        diags.push(Diagnostic { line: 1, message: "missing [surface] section with `kind`".into() });
        return Err(SceneError::Parse(diags));
    };
    let mut curves = Vec::new();
    for d in drafts.into_iter().filter(|d| !d.broken) {
        match Curve::new(d.name.clone(), d.components) {
            Ok(c) => curves.push(c.with_exact(d.exact)),
            Err(e) => diags.push(Diagnostic { line: d.line, message: format!("curve `{}`: {e}", d.name) }),
        }
    }
    for (name, (line, _)) in &shifts {
        if !curves.iter().any(|c| &c.name == name) {
            diags.push(Diagnostic { line: *line, message: format!("grading for unknown curve `{name}`") });
        }
    }
    if !diags.is_empty() {
        diags.sort_by_key(|d| d.line);
        return Err(SceneError::Parse(diags));
    }
    let hash = text_hash(text);
    let scene = Scene { surface, mode, budget, strip, curves, shifts: shifts.into_iter().map(|(k, (_, v))| (k, v)).collect(), hash };
    scene.category(&scene.counting())?;
    Ok(scene)
}

/// A `[curve name]` block that parses back to `curve`.
pub fn curve_text(curve: &Curve) -> String {
    let mut out = format!("[curve {}]\n", curve.name);
    for c in &curve.components {
        let line = match c {
            Component::Loop { vertices, monodromy } => {
                format!("loop {} monodromy {monodromy}", vertices.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            }
            Component::Path { vertices, incoming, outgoing } => {
                format!("path in {incoming} {} out {outgoing}", vertices.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    if curve.exact {
        out.push_str("exact\n");
    }
    out
}

impl Scene {
    pub fn counting(&self) -> Counting {
        Counting { budget: self.budget.clone(), mode: self.mode, strip: self.strip.clone() }
    }

    pub fn curve(&self, name: &str) -> Result<&Curve, Error> {
        self.curves.iter().find(|c| c.name == name).ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn lift(&self, name: &str) -> Result<Option<GradedLift>, Error> {
        let c = self.curve(name)?;
        self.shifts.get(name).map(|s| GradedLift::new(c, s)).transpose().map_err(Error::from)
    }

    pub fn object(&self, name: &str) -> Result<Object, Error> {
        Ok(Object::new(self.curve(name)?.clone(), self.lift(name)?))
    }

    /// The category on all curves, in file order.
    pub fn category(&self, counting: &Counting) -> Result<Category, Error> {
        let objects = self.curves.iter().map(|c| self.object(&c.name)).collect::<Result<Vec<_>, _>>()?;
        Category::new(self.surface, objects, counting.clone())
    }

    /// The category on the named curves, in the given order.
    pub fn subcategory(&self, names: &[&str], counting: &Counting) -> Result<Category, Error> {
        let objects = names.iter().map(|n| self.object(n)).collect::<Result<Vec<_>, _>>()?;
        Category::new(self.surface, objects, counting.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::GeomError;

    #[test]
    fn minimal_torus_scene() {
        let s = parse_scene("[surface]\nkind = torus\nalpha: line (0,0) dir (1,0)\nbeta: line (0,0) dir (0,1)\n").unwrap();
        assert_eq!(s.curves.len(), 2);
        assert_eq!(s.surface, Surface::Torus);
        assert_eq!(s.hash.len(), 64);
    }

    #[test]
    fn identical_lines_are_not_transverse() {
        let e = parse_scene("[surface]\nkind = torus\na: line (0,0) dir (1,0)\nb: line (0,0) dir (1,0)\n").unwrap_err();
        assert!(matches!(e, SceneError::Validation(Error::Geom(GeomError::NonTransverse { .. }))), "{e:?}");
    }

    #[test]
    fn sections_and_gradings() {
        let text = "[surface]\nkind = cylinder\n[budget]\ndeck_radius = 4\n[curve L]\nline (0,0) dir (1,0)\nexact\n[curve psiL]\nloop (1/4,-1/4) (3/4,1/4) monodromy (1,0)\n[grading psiL]\nshift 0\n[grading L]\nshift 0\n";
        let s = parse_scene(text).unwrap();
        assert_eq!(s.budget.deck_radius, 4);
        assert!(s.curve("L").unwrap().exact);
        assert!(s.lift("psiL").unwrap().is_some());
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let e = parse_scene("[surface]\nkind = torus\n[curve a]\nline (0,0) dir\nbogus\n").unwrap_err();
        let SceneError::Parse(d) = e else { panic!("expected parse errors") };
        assert_eq!(d.iter().map(|x| x.line).collect::<Vec<_>>(), vec![4, 5]);
    }

    #[test]
    fn curve_text_round_trips() {
        let text = "[surface]\nkind = cylinder\n[curve psiL]\nloop (1/4,-1/4) (3/4,1/4) monodromy (1,0)\nexact\n[curve P]\npath in (0,1) (1/2,1/2) (1/3,1) out (0,1)\n";
        let s = parse_scene(text).unwrap();
        let again = format!("[surface]\nkind = cylinder\n{}{}", curve_text(&s.curves[0]), curve_text(&s.curves[1]));
        assert_eq!(parse_scene(&again).unwrap().curves, s.curves);
    }

    #[test]
    fn z2_needs_exact_curves() {
        let e = parse_scene("[surface]\nkind = plane\ncoeff = z2\na: line (0,0) dir (1,0)\n").unwrap_err();
        assert!(matches!(e, SceneError::Validation(Error::NotExact(_))));
    }
}
