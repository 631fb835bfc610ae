//! `flatfloer`: Floer complexes, products, cones and surgeries from scene files.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flatfloer::coeffs::CoeffMode;
use flatfloer::floer::Counting;
use flatfloer::rational::{fmt_rat, parse_rat, Rat};
use flatfloer::scene::{parse_scene, text_hash, Scene};
use flatfloer::wrapped::WrappedScene;
use serde_json::json;

use commands::{MorphismArgs, SurgeryArgs};
use report::{Context, Failure, Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "flatfloer", version, about = "Exact Floer theory of piecewise-linear curves on flat surfaces")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Drop polygons of area at least this rational; overrides the scene budget.
    #[arg(long, global = true, value_parser = rational)]
    cutoff: Option<Rat>,
    /// Lattice periods searched around each output corner.
    #[arg(long, global = true)]
    deck_radius: Option<u32>,
    /// Coefficients; z2 needs every curve flagged exact.
    #[arg(long, global = true, value_enum)]
    coeff: Option<CoeffArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoeffArg {
    Novikov,
    Z2,
}

impl From<CoeffArg> for CoeffMode {
    fn from(c: CoeffArg) -> Self {
        match c {
            CoeffArg::Novikov => CoeffMode::Novikov,
            CoeffArg::Z2 => CoeffMode::Z2,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators, differential, d^2 report and cohomology of CF(L0, L1).
    Hf { scene: PathBuf, l0: String, l1: String },
    /// The product hom(L0, L1) x hom(L1, L2) -> hom(L0, L2).
    Product { scene: PathBuf, l0: String, l1: String, l2: String },
    /// The coefficients of mu^k on objects L0 ... Lk.
    Mu {
        scene: PathBuf,
        k: usize,
        #[arg(required = true)]
        objects: Vec<String>,
    },
    /// A-infinity relations on all tuples of distinct scene objects.
    CheckAinfty {
        scene: PathBuf,
        #[arg(default_value_t = 4)]
        kmax: usize,
    },
    /// Cone of a generator of hom(SOURCE, TARGET) and its hom ranks against test objects.
    Cone {
        scene: PathBuf,
        source: String,
        target: String,
        /// Generator index or name such as `L2|L1:0`.
        generator: String,
        /// Test objects; defaults to every other scene object.
        #[arg(long = "test")]
        tests: Vec<String>,
    },
    /// Exactness of SOURCE -> TARGET -> Cone -> SOURCE[1] against test objects.
    TriangleCheck {
        scene: PathBuf,
        source: String,
        target: String,
        generator: String,
        #[arg(long = "test")]
        tests: Vec<String>,
    },
    /// Dehn twist of a straight torus line about another; compares with the cone when tests are given.
    DehnTwist {
        scene: PathBuf,
        curve: String,
        axis: String,
        #[arg(long = "test")]
        tests: Vec<String>,
    },
    /// Resolves the crossing of L1 and L2 at POINT; compares CF(T, L1#L2) with the cone when tests are given.
    Surgery {
        scene: PathBuf,
        l1: String,
        l2: String,
        #[arg(value_parser = commands::parse_point)]
        point: flatfloer::geom::Vec2,
        #[arg(value_parser = rational)]
        eps: Rat,
        #[arg(long = "test")]
        tests: Vec<String>,
    },
    /// Wrapped Floer algebra of a cotangent fibre of the cylinder.
    Wrapped {
        #[arg(long, default_value_t = 5)]
        window: i64,
    },
}

fn rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).ok_or_else(|| format!("`{s}` is not a rational number"))
}

impl Command {
    fn scene(&self) -> Option<&PathBuf> {
        match self {
            Command::Hf { scene, .. }
            | Command::Product { scene, .. }
            | Command::Mu { scene, .. }
            | Command::CheckAinfty { scene, .. }
            | Command::Cone { scene, .. }
            | Command::TriangleCheck { scene, .. }
            | Command::DehnTwist { scene, .. }
            | Command::Surgery { scene, .. } => Some(scene),
            Command::Wrapped { .. } => None,
        }
    }

    /// The command line without the scene path and global flags.
    fn describe(&self) -> String {
        let tests = |t: &[String]| t.iter().map(|x| format!(" --test {x}")).collect::<String>();
        match self {
            Command::Hf { l0, l1, .. } => format!("hf {l0} {l1}"),
            Command::Product { l0, l1, l2, .. } => format!("product {l0} {l1} {l2}"),
            Command::Mu { k, objects, .. } => format!("mu {k} {}", objects.join(" ")),
            Command::CheckAinfty { kmax, .. } => format!("check-ainfty {kmax}"),
            Command::Cone { source, target, generator, tests: t, .. } => format!("cone {source} {target} {generator}{}", tests(t)),
            Command::TriangleCheck { source, target, generator, tests: t, .. } => {
                format!("triangle-check {source} {target} {generator}{}", tests(t))
            }
            Command::DehnTwist { curve, axis, tests: t, .. } => format!("dehn-twist {curve} {axis}{}", tests(t)),
            Command::Surgery { l1, l2, point, eps, tests: t, .. } => format!("surgery {l1} {l2} {point} {}{}", fmt_rat(eps), tests(t)),
            Command::Wrapped { window } => format!("wrapped --window {window}"),
        }
    }
}

fn counting_for(cli: &Cli, scene: &Scene) -> Counting {
    let mut c = scene.counting();
    if let Some(cut) = &cli.cutoff {
        c.budget.cutoff = Some(cut.clone());
    }
    if let Some(r) = cli.deck_radius {
        c.budget.deck_radius = r;
    }
    if let Some(m) = cli.coeff {
        c.mode = m.into();
    }
    c
}

fn run_wrapped(cli: &Cli, window: i64, ctx: &mut Context) -> Result<Outcome, Failure> {
    if cli.cutoff.is_some() || cli.deck_radius.is_some() || cli.coeff.is_some() {
        return Err(Failure::Usage("wrapped fixes its own budget and coefficients; drop --cutoff, --deck-radius and --coeff".into()));
    }
    let w = WrappedScene::new(window)?;
    ctx.scene_hash = Some(text_hash(&format!("wrapped window={window} theta0={}", fmt_rat(&w.theta0))));
    ctx.coeff = Some(w.category().counting().mode);
    ctx.budget = Some(w.category().counting().budget.clone());
    commands::wrapped(&w)
}

fn run(cli: &Cli, ctx: &mut Context) -> Result<Outcome, Failure> {
    let Some(path) = cli.command.scene() else {
        let Command::Wrapped { window } = cli.command else { unreachable!("only wrapped has no scene") };
        return run_wrapped(cli, window, ctx);
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    ctx.scene_hash = Some(text_hash(&text));
    let scene = parse_scene(&text)?;
    let counting = counting_for(cli, &scene);
    ctx.coeff = Some(counting.mode);
    ctx.budget = Some(counting.budget.clone());
    match &cli.command {
        Command::Hf { l0, l1, .. } => commands::hf(&scene, &counting, l0, l1),
        Command::Product { l0, l1, l2, .. } => commands::mu(&scene, &counting, &[l0.clone(), l1.clone(), l2.clone()]),
        Command::Mu { k, objects, .. } => {
            if objects.len() != k + 1 {
                return Err(Failure::Usage(format!("mu {k} needs {} objects, got {}", k + 1, objects.len())));
            }
            commands::mu(&scene, &counting, objects)
        }
        Command::CheckAinfty { kmax, .. } => commands::check_ainfty(&scene, &counting, *kmax),
        Command::Cone { source, target, generator, tests, .. } => {
            commands::cone(&scene, &counting, &MorphismArgs { source, target, generator, tests })
        }
        Command::TriangleCheck { source, target, generator, tests, .. } => {
            commands::triangle_check(&scene, &counting, &MorphismArgs { source, target, generator, tests })
        }
        Command::DehnTwist { curve, axis, tests, .. } => commands::dehn_twist(&scene, &counting, curve, axis, tests),
        Command::Surgery { l1, l2, point, eps, tests, .. } => {
            commands::surgery_cmd(&scene, &counting, &SurgeryArgs { l1, l2, point, eps, tests })
        }
        Command::Wrapped { .. } => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() && std::env::args().any(|a| a == "--json") {
                let doc = json!({
                    "command": null,
                    "version": env!("CARGO_PKG_VERSION"),
                    "status": "error",
                    "error": { "kind": "usage", "message": e.kind().to_string() },
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
                return ExitCode::from(2);
            }
            e.exit();
        }
    };
    let mut ctx = Context { command: cli.command.describe(), version: env!("CARGO_PKG_VERSION"), scene_hash: None, coeff: None, budget: None };
    let report = match run(&cli, &mut ctx) {
        Ok(outcome) => Report::finished(ctx, outcome),
        Err(failure) => Report::failed(ctx, &failure),
    };
    print!("{}", report.render(cli.json));
    ExitCode::from(report.status.exit_code())
}
