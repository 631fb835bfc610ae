//! The report document shared by every command, in text and JSON form.

use flatfloer::coeffs::CoeffMode;
use flatfloer::polygons::SearchBudget;
use flatfloer::rational::fmt_rat;
use flatfloer::scene::SceneError;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// What a command computed, before the common header is attached.
pub struct Outcome {
    pub pass: bool,
    pub stabilized: bool,
    pub data: Value,
    pub lines: Vec<String>,
}

/// Run settings echoed in every report.
#[derive(Clone, Debug, Serialize)]
pub struct Context {
    pub command: String,
    pub version: &'static str,
    pub scene_hash: Option<String>,
    pub coeff: Option<CoeffMode>,
    pub budget: Option<SearchBudget>,
}

#[derive(Serialize)]
pub struct Report {
    #[serde(flatten)]
    pub context: Context,
    pub stabilized: Option<bool>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
    #[serde(skip)]
    lines: Vec<String>,
}

impl Report {
    pub fn finished(context: Context, outcome: Outcome) -> Report {
        Report {
            context,
            stabilized: Some(outcome.stabilized),
            status: if outcome.pass { Status::Pass } else { Status::Fail },
            result: Some(outcome.data),
            error: None,
            lines: outcome.lines,
        }
    }

    pub fn failed(context: Context, failure: &Failure) -> Report {
        let (status, error, lines) = failure.describe();
        Report { context, stabilized: None, status, result: None, error: Some(error), lines }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            return serde_json::to_string_pretty(self).expect("report serializes") + "\n";
        }
        let c = &self.context;
        let budget = match &c.budget {
            Some(b) => format!(
                "deck_radius={} branch_cap={} cutoff={}",
                b.deck_radius,
                b.branch_cap,
                b.cutoff.as_ref().map(fmt_rat).unwrap_or_else(|| "none".into())
            ),
            None => "-".into(),
        };
        let mut out = vec![
            format!("command: {}", c.command),
            format!("version: {}", c.version),
            format!("scene: {}", c.scene_hash.as_deref().unwrap_or("-")),
            format!("coeff: {}", c.coeff.map(CoeffMode::as_str).unwrap_or("-")),
            format!("budget: {budget}"),
            format!("stabilized: {}", self.stabilized.map(|s| s.to_string()).unwrap_or_else(|| "-".into())),
            format!("status: {}", serde_json::to_value(self.status).expect("status").as_str().expect("string")),
        ];
        out.push(String::new());
        out.extend(self.lines.iter().cloned());
        out.join("\n") + "\n"
    }
}

/// Why a command stopped without a result.
pub enum Failure {
    Usage(String),
    Scene(SceneError),
    Engine(flatfloer::Error),
}

impl From<flatfloer::Error> for Failure {
    fn from(e: flatfloer::Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<flatfloer::geom::GeomError> for Failure {
    fn from(e: flatfloer::geom::GeomError) -> Self {
        Failure::Engine(e.into())
    }
}

impl From<SceneError> for Failure {
    fn from(e: SceneError) -> Self {
        Failure::Scene(e)
    }
}

impl Failure {
    fn describe(&self) -> (Status, Value, Vec<String>) {
        use flatfloer::Error as E;
        match self {
            Failure::Usage(m) => (Status::Error, json!({ "kind": "usage", "message": m }), vec![format!("error: {m}")]),
            Failure::Scene(SceneError::Parse(diags)) => {
                let items: Vec<Value> = diags.iter().map(|d| json!({ "line": d.line, "message": d.message })).collect();
                let lines = diags.iter().map(|d| format!("error: {d}")).collect();
                (Status::Error, json!({ "kind": "parse", "diagnostics": items }), lines)
            }
            Failure::Scene(SceneError::Validation(e)) => {
                (Status::Error, json!({ "kind": "validation", "message": e.to_string() }), vec![format!("error: invalid scene: {e}")])
            }
            Failure::Engine(e @ (E::ObstructedComplex(_) | E::NotClosed | E::NotMaurerCartan(..))) => {
                (Status::Fail, json!({ "kind": "math", "message": e.to_string() }), vec![format!("fail: {e}")])
            }
            Failure::Engine(e) => (Status::Error, json!({ "kind": "engine", "message": e.to_string() }), vec![format!("error: {e}")]),
        }
    }
}
