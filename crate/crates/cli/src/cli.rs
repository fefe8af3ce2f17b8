//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 on success, 1 for malformed input or flags, 2 when the
//! mathematics does not apply (for example a non-rational function).

use std::io::Write;
use std::path::PathBuf;

use arrowfocal::render::{scene_to_json, scene_to_svg, RenderConfig};
use arrowfocal::selftest;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::ops::{self, Failure};

#[derive(Debug, Parser)]
#[command(name = "arrowfocal", version, about = "Arrow graphs of real functions and their focal curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct JsonFlag {
    /// Print machine-readable JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render the arrow graph and focal curve as SVG or scene JSON.
    Plot(PlotArgs),
    /// Focal point and focal-curve tangent at one parameter.
    Focal {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        at: f64,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Exact implicit equation of the focal curve of a rational function.
    Implicit {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Conic type of a polynomial given as Poly2 JSON.
    Classify {
        #[arg(long)]
        poly2: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Implicit equation after transforming g.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// add-constant, scale-output, shift-input or scale-input.
        #[arg(long)]
        kind: String,
        /// Exact parameter such as -1, 1/2 or 0.25.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Foci of linear f, g and g∘f in the juxtaposed layout.
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Each focus in its own unit-width chart instead.
        #[arg(long)]
        local: bool,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Local focus at x0 and the derivative read off from it.
    Probe {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[command(flatten)]
        out: JsonFlag,
    },
    /// Serve the HTTP JSON API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
    /// Run the acceptance checks; exits 0 exactly when all pass.
    Selftest {
        /// Run only the named check.
        #[arg(long)]
        only: Option<String>,
        #[command(flatten)]
        out: JsonFlag,
    },
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(allow_hyphen_values = true)]
    pub f: String,
    /// Write SVG here.
    #[arg(long, conflicts_with = "json")]
    pub svg: Option<PathBuf>,
    /// Scene JSON, to PATH or to standard output.
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Input range A:B of the arrows.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Parameter range of the focal curve; defaults to the arrow range.
    #[arg(long, allow_hyphen_values = true)]
    pub focal_range: Option<String>,
    #[arg(long, default_value_t = 41)]
    pub arrows: usize,
    #[arg(long, default_value_t = 401)]
    pub samples: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub probe: Option<f64>,
    /// Second function; draws the composition layout.
    #[arg(long, allow_hyphen_values = true)]
    pub compose: Option<String>,
    /// Hide the extended arrow lines.
    #[arg(long)]
    pub no_guides: bool,
}

/// What a subcommand produced.
enum Output {
    Text(String),
    Json(serde_json::Value),
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) -> Output {
    if json {
        Output::Json(serde_json::to_value(value).expect("reports serialize"))
    } else {
        Output::Text(text(value))
    }
}

fn coords(p: Option<[f64; 2]>) -> String {
    p.map_or("at infinity".to_string(), |[x, y]| format!("({x}, {y})"))
}

fn plot(args: &PlotArgs) -> Result<Output, Failure> {
    let f = ops::parse_function(&args.f)?;
    let g = args.compose.as_deref().map(ops::parse_function).transpose()?;
    let mut cfg = RenderConfig {
        delta: args.delta,
        arrow_count: args.arrows,
        focal_sample_count: args.samples,
        probe: args.probe,
        extended_lines: !args.no_guides,
        ..RenderConfig::default()
    };
    if let Some(r) = &args.range {
        cfg.arrow_range = ops::parse_range("--range", r)?;
    }
    if let Some(r) = &args.focal_range {
        cfg.focal_range = Some(ops::parse_range("--focal-range", r)?);
    }
    let scene = ops::scene(&f, &cfg, g.as_ref())?;
    let write = |path: &PathBuf, body: String| {
        std::fs::write(path, body)
            .map(|_| Output::Text(format!("wrote {}", path.display())))
            .map_err(|e| Failure::input("io_error", format!("{}: {e}", path.display())))
    };
    match (&args.svg, &args.json) {
        (Some(path), _) => write(path, scene_to_svg(&scene)),
        (None, Some(path)) if path.as_os_str() == "-" => {
            Ok(Output::Json(serde_json::from_str(&scene_to_json(&scene)).expect("scene JSON parses")))
        }
        (None, Some(path)) => write(path, scene_to_json(&scene)),
        (None, None) => Ok(Output::Text(scene_to_svg(&scene).trim_end().to_string())),
    }
}

fn selftest_output(only: Option<&str>, json: bool) -> Result<(Output, bool), Failure> {
    let reports = match only {
        Some(name) => vec![selftest::run_criterion(name).ok_or_else(|| {
            Failure::input(
                "invalid_parameter",
                format!("unknown check `{name}`; known: {}", selftest::criterion_names().join(", ")),
            )
        })?],
        None => selftest::run_all(),
    };
    let all = reports.iter().all(|r| r.passed);
    let out = if json {
        let items: Vec<_> = reports
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                    "seconds": r.elapsed.as_secs_f64(),
                    "budget_seconds": r.budget.as_secs_f64(),
                })
            })
            .collect();
        Output::Json(json!({ "passed": all, "criteria": items }))
    } else {
        let mut lines: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
        let passed = reports.iter().filter(|r| r.passed).count();
        lines.push(format!("{passed}/{} checks passed", reports.len()));
        Output::Text(lines.join("\n"))
    };
    Ok((out, all))
}

fn serve(host: &str, port: u16) -> Result<Output, Failure> {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::input("io_error", e.to_string()))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| Failure::input("io_error", format!("cannot bind {host}:{port}: {e}")))?;
        if let Ok(addr) = listener.local_addr() {
            eprintln!("listening on http://{addr}");
        }
        crate::api::serve(listener)
            .await
            .map_err(|e| Failure::input("io_error", e.to_string()))?;
        Ok(Output::Text(String::new()))
    })
}

fn execute(command: &Command) -> Result<(Output, bool), Failure> {
    let ok = |o| Ok((o, true));
    match command {
        Command::Plot(args) => ok(plot(args)?),
        Command::Focal { f, at, delta, out } => {
            let r = ops::focal(&ops::parse_function(f)?, *at, *delta)?;
            ok(emit(out.json, &r, |r| {
                let [x, y, z] = r.projective;
                let tangent = r.tangent.map_or("undefined".to_string(), |[dx, dy]| format!("({dx}, {dy})"));
                format!("focus {}\nprojective ({x} : {y} : {z})\ntangent {tangent}", coords(r.focus))
            }))
        }
        Command::Implicit { f, out } => {
            let r = ops::implicit(&ops::parse_function(f)?)?;
            ok(emit(out.json, &r, |r| r.line()))
        }
        Command::Classify { poly2, out } => {
            let class = ops::classify(poly2)?;
            ok(emit(out.json, &json!({ "class": class }), |_| class.clone()))
        }
        Command::Transform { g, kind, c, out } => {
            let kind = ops::parse_kind(kind, c)?;
            let r = ops::transform(&ops::parse_function(g)?, &kind)?;
            ok(emit(out.json, &r, |r| r.line()))
        }
        Command::Compose { f, g, local, out } => {
            let (a, b) = ops::linear_coefficients(&ops::parse_function(f)?)?;
            let (c, d) = ops::linear_coefficients(&ops::parse_function(g)?)?;
            let r = ops::compose(a, b, c, d, *local);
            ok(emit(out.json, &r, |r| r.lines().join("\n")))
        }
        Command::Probe { f, x0, delta, out } => {
            let r = ops::probe(&ops::parse_function(f)?, *x0, *delta)?;
            ok(emit(out.json, &r, |r| {
                format!("x0 = {}, f(x0) = {}\nlocal focus {}\nf'(x0) = {}", r.x0, r.fx0, coords(r.focus), r.fprime)
            }))
        }
        Command::Serve { host, port } => ok(serve(host, *port)?),
        Command::Selftest { only, out } => selftest_output(only.as_deref(), out.json),
    }
}

fn wants_json(command: &Command) -> bool {
    match command {
        Command::Plot(p) => p.json.is_some(),
        Command::Focal { out, .. }
        | Command::Implicit { out, .. }
        | Command::Classify { out, .. }
        | Command::Transform { out, .. }
        | Command::Compose { out, .. }
        | Command::Probe { out, .. }
        | Command::Selftest { out, .. } => out.json,
        Command::Serve { .. } => false,
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((output, passed)) => {
            let _ = match output {
                Output::Text(t) if t.is_empty() => Ok(()),
                Output::Text(t) => writeln!(stdout, "{t}"),
                Output::Json(v) => writeln!(stdout, "{v}"),
            };
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = if wants_json(&cli.command) {
                writeln!(stderr, "{}", crate::api::error_body(&e))
            } else {
                writeln!(stderr, "error: {e}")
            };
            e.exit_code()
        }
    }
}
