mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use stable_pairs::exactalg::QPoly;
use stable_pairs::pairclasses::{find_walls, is_verified_degree, VERIFIED_MAX_DEGREE};
use stable_pairs::wallcross::{
    check_sheaf_start, check_start, pair_moduli, quoted_discrepancy, sheaf_moduli, AlphaBound, ErrorKind, Euler,
    WallCrossError, Weight,
};

use crate::render::Format;

#[derive(Parser)]
#[command(name = "stable-pairs", version, about = "Wall-crossing for stable pairs on the projective plane")]
struct Cli {
    /// Output format; `trace` defaults to json, everything else to plain.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Highest degree accepted without complaint; larger values mark output unverified.
    #[arg(long, global = true, default_value_t = VERIFIED_MAX_DEGREE)]
    max_degree: i64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the walls of (1,(d,chi)) with their splitting types.
    Walls {
        d: i64,
        #[arg(allow_negative_numbers = true)]
        chi: i64,
    },
    /// Poincaré polynomial of M^alpha(d,chi), or of the sheaf moduli with `sheaf`.
    Poincare {
        d: i64,
        #[arg(allow_negative_numbers = true)]
        chi: i64,
        /// `inf`, `0+`, an exact fraction such as `3/2`, or `sheaf`.
        #[arg(default_value = "0+", value_parser = parse_target)]
        target: Target,
        /// Include the computation trace.
        #[arg(long)]
        trace: bool,
    },
    /// Euler characteristic of M^alpha(d,chi), or of the sheaf moduli with `sheaf`.
    Euler {
        d: i64,
        #[arg(allow_negative_numbers = true)]
        chi: i64,
        #[arg(default_value = "0+", value_parser = parse_target)]
        target: Target,
        #[arg(long)]
        trace: bool,
    },
    /// Full computation trace (JSON by default).
    Trace {
        d: i64,
        #[arg(allow_negative_numbers = true)]
        chi: i64,
        #[arg(default_value = "0+", value_parser = parse_target)]
        target: Target,
        #[arg(long, value_enum, default_value_t = ModeArg::Poincare)]
        mode: ModeArg,
    },
}

#[derive(Clone, Debug)]
pub enum Target {
    Sheaf,
    Alpha(AlphaBound),
}

fn parse_target(s: &str) -> Result<Target, String> {
    if s == "sheaf" {
        return Ok(Target::Sheaf);
    }
    s.parse().map(Target::Alpha).map_err(|e: WallCrossError| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Poincare,
    Euler,
}

enum Failure {
    Invalid(String),
    Unsupported(String),
}

impl From<WallCrossError> for Failure {
    fn from(e: WallCrossError) -> Self {
        match e.kind() {
            ErrorKind::InvalidInput => Failure::Invalid(e.to_string()),
            ErrorKind::Unsupported => Failure::Unsupported(e.to_string()),
        }
    }
}

/// Result of a pipeline run: the trace is either a single pipeline or a
/// sheaf assembly, kept as JSON for output.
struct Run<W> {
    value: W,
    trace: serde_json::Value,
    plain_trace: String,
    latex_trace: String,
}

fn run<W: Weight>(d: i64, chi: i64, target: &Target) -> Result<Run<W>, WallCrossError> {
    match target {
        Target::Alpha(alpha) => {
            let trace = pair_moduli::<W>(d, chi, alpha)?;
            Ok(Run {
                value: trace.result.clone(),
                plain_trace: render::trace_plain(&trace),
                latex_trace: render::trace_latex(&trace),
                trace: serde_json::to_value(&trace).expect("trace serializes"),
            })
        }
        Target::Sheaf => {
            let asm = sheaf_moduli::<W>(d, chi)?;
            Ok(Run {
                value: asm.result.clone(),
                plain_trace: render::assembly_plain(&asm),
                latex_trace: render::assembly_latex(&asm),
                trace: serde_json::to_value(&asm).expect("assembly serializes"),
            })
        }
    }
}

/// Refuses degrees above `--max-degree`, reporting regime errors first.
/// Returns whether the run is outside the verified range.
fn gate(cli: &Cli, d: i64, chi: i64, target: Option<&Target>) -> Result<bool, Failure> {
    match target {
        Some(Target::Sheaf) => check_sheaf_start(d)?,
        Some(Target::Alpha(_)) => check_start(d, chi)?,
        None => {}
    }
    if d > cli.max_degree {
        return Err(Failure::Unsupported(format!(
            "degree {d} exceeds --max-degree {}; raise it to run unverified degrees",
            cli.max_degree
        )));
    }
    let unverified = !is_verified_degree(d);
    if unverified {
        eprintln!("UNVERIFIED: degree {d} lies beyond the checked range (d <= {VERIFIED_MAX_DEGREE})");
    }
    Ok(unverified)
}

fn space_name(d: i64, chi: i64, target: &Target) -> String {
    match target {
        Target::Sheaf => format!("M({d},{chi})"),
        Target::Alpha(a) => format!("M^{a}({d},{chi})"),
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Trace { .. } => Format::Json,
        _ => Format::Plain,
    });
    match &cli.command {
        Command::Walls { d, chi } => {
            gate(cli, *d, *chi, None)?;
            let walls = find_walls(*d, *chi).map_err(|e| Failure::Invalid(e.to_string()))?;
            Ok(match format {
                Format::Plain => render::walls_plain(*d, *chi, &walls),
                Format::Json => render::json(&walls),
                Format::Latex => render::walls_latex(*d, *chi, &walls),
            })
        }
        Command::Poincare { d, chi, target, trace } => {
            let unverified = gate(cli, *d, *chi, Some(target))?;
            let out = run::<QPoly>(*d, *chi, target)?;
            let name = space_name(*d, *chi, target);
            Ok(match format {
                Format::Plain => {
                    let mut s = render::poincare_plain(&name, &out.value);
                    if *trace {
                        s.push('\n');
                        s.push_str(&out.plain_trace);
                    }
                    s
                }
                Format::Latex => {
                    let mut s = render::poincare_latex(*d, *chi, target, &out.value);
                    if *trace {
                        s.push('\n');
                        s.push_str(&out.latex_trace);
                    }
                    s
                }
                Format::Json => {
                    let mut v = json!({
                        "space": name,
                        "poincare": out.value,
                        "factored": render::factored_json(&out.value),
                        "euler": Euler(out.value.eval_at_one()),
                        "verified": !unverified,
                    });
                    if *trace {
                        v["trace"] = out.trace;
                    }
                    render::json(&v)
                }
            })
        }
        Command::Euler { d, chi, target, trace } => {
            let unverified = gate(cli, *d, *chi, Some(target))?;
            let out = run::<Euler>(*d, *chi, target)?;
            let warning = match target {
                Target::Sheaf => quoted_discrepancy(*d, *chi, &out.value.0),
                Target::Alpha(_) => None,
            };
            if let Some(w) = &warning {
                eprintln!("warning: {w}");
            }
            let name = space_name(*d, *chi, target);
            Ok(match format {
                Format::Plain | Format::Latex => {
                    let mut s = render::euler_value(format, &name, &out.value.0);
                    if *trace {
                        s.push('\n');
                        s.push_str(if format == Format::Plain { &out.plain_trace } else { &out.latex_trace });
                    }
                    s
                }
                Format::Json => {
                    let mut v = json!({
                        "space": name,
                        "euler": out.value,
                        "verified": !unverified,
                    });
                    if let Some(w) = warning {
                        v["warning"] = json!(w.to_string());
                    }
                    if *trace {
                        v["trace"] = out.trace;
                    }
                    render::json(&v)
                }
            })
        }
        Command::Trace { d, chi, target, mode } => {
            gate(cli, *d, *chi, Some(target))?;
            let (trace, plain, latex) = match mode {
                ModeArg::Poincare => {
                    let r = run::<QPoly>(*d, *chi, target)?;
                    (r.trace, r.plain_trace, r.latex_trace)
                }
                ModeArg::Euler => {
                    let r = run::<Euler>(*d, *chi, target)?;
                    (r.trace, r.plain_trace, r.latex_trace)
                }
            };
            Ok(match format {
                Format::Plain => plain,
                Format::Latex => latex,
                Format::Json => render::json(&trace),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Unsupported(msg)) => {
            eprintln!("unsupported: {msg}");
            ExitCode::from(3)
        }
    }
}
