use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tiltwall_core::{
    heart_bounds, heart_interval_on_wall, parse_rational, q_wall, verify_class, wall_between,
    ChernVector, Conclusion, HeartInterval, Rational, Variety, VerifyOptions,
};

use crate::error::CliError;
use crate::svg::{PlotItem, PlotSpec};
use crate::{json, parse, preset, svg};

#[derive(Debug, Parser)]
#[command(name = "tiltwall", version, about = "Exact tilt-stability walls and the Q-form check")]
pub struct Cli {
    /// Shipped preset name (blowup-p3, p3) or path to a preset JSON file.
    #[arg(long, global = true, default_value = "blowup-p3")]
    pub variety: String,

    /// Pretty-print JSON with this many spaces; compact when omitted.
    #[arg(long, global = true)]
    pub json_indent: Option<usize>,

    /// Reject input classes outside the variety's Chern lattice (exit 5).
    #[arg(long, global = true)]
    pub strict: bool,

    /// Apply the line-bundle rank bound e0(F) >= e0(v). Defaults to on for
    /// --divisor inputs and off for --class inputs.
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "true")]
    pub line_bundle: Option<bool>,

    /// Upper end of the e0 search box (default 8*|e0(v)|).
    #[arg(long, global = true, value_parser = rational_arg)]
    pub e0_max: Option<Rational>,

    /// Threads used to evaluate candidates.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chern vector (e0..e3) of a line bundle.
    Chern {
        #[arg(long)]
        divisor: String,
    },
    /// The locus Q = 0 as a wall.
    QWall(ClassArgs),
    /// Numerical wall between two classes.
    Wall {
        #[arg(long = "v", allow_hyphen_values = true)]
        v: String,
        #[arg(long = "w", allow_hyphen_values = true)]
        w: String,
    },
    /// Lattice pairs (e0, e1) admissible on a beta interval.
    Scan {
        #[command(flatten)]
        class: ClassArgs,
        /// Defaults to the left end of the Q-wall, clipped to the heart.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        beta_lo: Option<Rational>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        beta_hi: Option<Rational>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        e0_min: Option<Rational>,
    },
    /// Run the counterexample pipeline.
    Verify {
        #[command(flatten)]
        class: ClassArgs,
        /// Witness depth inside the disc, s = r^2 * (1 - margin).
        #[arg(long, value_parser = rational_arg, default_value = "3/4")]
        region_margin: Rational,
    },
    /// Write an SVG diagram of the Q-wall and requested walls.
    Plot {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        out: PathBuf,
        /// `lo,hi` in beta.
        #[arg(long, allow_hyphen_values = true)]
        beta_range: Option<String>,
        /// `lo,hi` in alpha, lo >= 0.
        #[arg(long, allow_hyphen_values = true)]
        alpha_range: Option<String>,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 500)]
        height: u32,
        /// Comma list from q-wall, region, witness, walls; or `none`.
        #[arg(long, default_value = "q-wall,region,witness,walls")]
        draw: String,
        /// Add the numerical wall between the class and this one; repeatable.
        #[arg(long = "wall-with", allow_hyphen_values = true)]
        wall_with: Vec<String>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ClassArgs {
    /// Line bundle O(D), e.g. `L` or `2L-1E`.
    #[arg(long)]
    divisor: Option<String>,
    /// Raw class `e0,e1,e2,e3`.
    #[arg(long, allow_hyphen_values = true)]
    class: Option<String>,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// What a command produced: the stdout payload and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

struct Context {
    variety: Variety,
    indent: Option<usize>,
    strict: bool,
}

impl Context {
    /// The class plus whether it came from a divisor.
    fn class(&self, args: &ClassArgs) -> Result<(ChernVector, bool), CliError> {
        let (v, from_divisor) = match (&args.divisor, &args.class) {
            (Some(d), _) => {
                let d = parse::parse_divisor(d, self.variety.basis())?;
                (self.variety.chern_of_line_bundle(&d)?, true)
            }
            (None, Some(c)) => (parse::parse_class(c)?, false),
            (None, None) => return Err(CliError::Usage("need --divisor or --class".into())),
        };
        self.check_lattice(&v)?;
        Ok((v, from_divisor))
    }

    fn check_lattice(&self, v: &ChernVector) -> Result<(), CliError> {
        if self.strict && !self.variety.lattice_check(v) {
            return Err(CliError::Preset(format!(
                "class {} is not in the Chern lattice of {}",
                json::to_string(&json::class(v), None),
                self.variety.name()
            )));
        }
        Ok(())
    }

    fn emit(&self, value: &Value) -> String {
        let mut s = json::to_string(value, self.indent);
        s.push('\n');
        s
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                return Outcome { stdout: rendered, code };
            }
            eprint!("{rendered}");
            return Outcome { stdout: String::new(), code };
        }
    };
    match execute(cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("tiltwall: {e}");
            Outcome {
                stdout: String::new(),
                code: e.exit_code(),
            }
        }
    }
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let ctx = Context {
        variety: preset::load(&cli.variety)?,
        indent: cli.json_indent,
        strict: cli.strict,
    };
    let ok = |stdout: String| Ok(Outcome { stdout, code: 0 });
    match cli.command {
        Command::Chern { divisor } => {
            let d = parse::parse_divisor(&divisor, ctx.variety.basis())?;
            let v = ctx.variety.chern_of_line_bundle(&d)?;
            ok(ctx.emit(&json::class(&v)))
        }
        Command::QWall(args) => {
            let (v, _) = ctx.class(&args)?;
            ok(ctx.emit(&json::wall(&q_wall(&v))))
        }
        Command::Wall { v, w } => {
            let v = parse::parse_class(&v)?;
            let w = parse::parse_class(&w)?;
            ctx.check_lattice(&v)?;
            ctx.check_lattice(&w)?;
            let value = wall_between(&v, &w).map_or(Value::Null, |wall| json::wall(&wall));
            ok(ctx.emit(&value))
        }
        Command::Scan {
            class,
            beta_lo,
            beta_hi,
            e0_min,
        } => {
            let (v, from_divisor) = ctx.class(&class)?;
            let default = heart_interval_on_wall(&v, &q_wall(&v));
            let lo = match (beta_lo, &default) {
                (Some(b), _) => b.into(),
                (None, Some(i)) => i.lo().clone(),
                (None, None) => return Err(CliError::Usage("no Q-wall interval; pass --beta-lo/--beta-hi".into())),
            };
            let hi = match (beta_hi, &default) {
                (Some(b), _) => b.into(),
                (None, Some(i)) => i.hi().clone(),
                (None, None) => return Err(CliError::Usage("no Q-wall interval; pass --beta-lo/--beta-hi".into())),
            };
            let interval = HeartInterval::new(lo, hi)?;
            let e0_max = cli.e0_max.unwrap_or_else(|| Rational::from_integer(8.into()) * num_abs(&v.e0));
            let line_bundle = cli.line_bundle.unwrap_or(from_divisor);
            let e0_min = e0_min.unwrap_or_else(|| if line_bundle { v.e0.clone() } else { -e0_max.clone() });
            let pairs = heart_bounds(&v, &interval, &e0_min, &e0_max, ctx.variety.lattice())?;
            ok(ctx.emit(&json!({
                "class": json::class(&v),
                "interval": json::interval(&interval),
                "e0_range": [json::rational(&e0_min), json::rational(&e0_max)],
                "pairs": json::pairs(&pairs),
            })))
        }
        Command::Verify {
            class,
            region_margin,
        } => {
            let (v, from_divisor) = ctx.class(&class)?;
            let options = VerifyOptions {
                line_bundle: cli.line_bundle.unwrap_or(from_divisor),
                e0_max: cli.e0_max,
                region_margin,
                workers: cli.workers.max(1),
                ..VerifyOptions::default()
            };
            let report = verify_class(&ctx.variety, &v, &options)?;
            let code = match report.conclusion {
                Conclusion::CounterexampleConfirmed => 0,
                Conclusion::WallCandidateFound => 1,
                Conclusion::Inconclusive => 4,
            };
            Ok(Outcome {
                stdout: ctx.emit(&json::report(ctx.variety.name(), &report)),
                code,
            })
        }
        Command::Plot {
            class,
            out,
            beta_range,
            alpha_range,
            width,
            height,
            draw,
            wall_with,
        } => {
            let (v, _) = ctx.class(&class)?;
            let qw = q_wall(&v);
            let (default_beta, default_alpha) = PlotSpec::default_ranges(&qw);
            let beta_range = beta_range.as_deref().map(parse::parse_range).transpose()?.unwrap_or(default_beta);
            let alpha_range = alpha_range.as_deref().map(parse::parse_range).transpose()?.unwrap_or(default_alpha);

            let wanted: Vec<&str> = draw.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            for w in &wanted {
                if !["q-wall", "region", "witness", "walls", "none"].contains(w) {
                    return Err(CliError::Usage(format!("unknown --draw item {w:?}")));
                }
            }
            let has = |name: &str| wanted.contains(&name);
            let mut items = Vec::new();
            if has("region") {
                items.push(PlotItem::NegativeRegion(qw.clone()));
            }
            if has("walls") {
                for w in &wall_with {
                    let w = parse::parse_class(w)?;
                    if let Some(wall) = wall_between(&v, &w) {
                        items.push(PlotItem::Wall(wall));
                    }
                }
            }
            if has("q-wall") {
                items.push(PlotItem::QWall(qw.clone()));
            }
            if has("witness") {
                let options = VerifyOptions::default();
                if let Ok(report) = verify_class(&ctx.variety, &v, &options) {
                    if let Some(p) = report.witness_point {
                        items.push(PlotItem::Witness(p));
                    }
                }
            }
            let spec = PlotSpec {
                beta_range,
                alpha_range,
                width,
                height,
                items,
            };
            let svg = svg::render(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
            std::fs::write(&out, svg).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            ok(ctx.emit(&json!({ "out": out.display().to_string() })))
        }
    }
}

fn num_abs(r: &Rational) -> Rational {
    use num_traits::Signed;
    r.abs()
}
