mod input;
mod jobs;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use varieties::algebra::ParseOptions;
use varieties::wildness::WildConfig;
use varieties::{Error, Result};

use input::{
    load_algebra, load_module, parse_alphas, parse_field, parse_params, LoadedAlgebra, LoadedModule,
};
use jobs::{HSource, Outcome};

#[derive(Parser)]
#[command(
    name = "varieties",
    version,
    about = "Support varieties and wildness checks for finite-dimensional algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the algebra and print its basic invariants.
    Algebra(Common),
    /// Minimal projective resolutions and Betti numbers.
    Resolve(Common),
    /// Dimensions of Ext^n between all pairs of modules.
    Ext(Common),
    /// Injective and projective support varieties over H ⊆ Ext*(M, M).
    Variety(Common),
    /// Complexities, plexities and pair complexities.
    Complexity(Common),
    /// Check the wildness criterion for the first module.
    WildCheck(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Algebra presentation (.alg).
    #[arg(long)]
    algebra: PathBuf,
    /// Module files (.mod); the first one defines H.
    #[arg(long = "module")]
    modules: Vec<PathBuf>,
    /// Truncation degree D (default 20, or 10 for tensor algebras).
    #[arg(long)]
    trunc: Option<usize>,
    /// Ground field: Q or GF(p).
    #[arg(long)]
    field: Option<String>,
    /// Presentation parameter, name=value.
    #[arg(long = "param")]
    params: Vec<String>,
    /// Shorthand for --param q=VALUE.
    #[arg(long)]
    q: Option<String>,
    /// auto, auto-periodic, auto-central:d or explicit:deg:c1,c2;...
    #[arg(long, default_value = "auto")]
    hgen: String,
    /// Family parameters for wild-check.
    #[arg(long, default_value = "0,1,2")]
    alphas: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Noether normalization attempts.
    #[arg(long, default_value_t = 8)]
    trials: usize,
    /// Output file; .csv writes the table form where one exists.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::Syntax { .. }
            | Error::Input(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::InvalidModule(_)
            | Error::NotAdmissible { .. }
            | Error::NotFiniteDimensional(_)
            | Error::FieldMismatch(..)
            | Error::AlgebraMismatch
    )
}

fn threads() -> Result<usize> {
    match std::env::var("VARIETIES_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::Input(format!("VARIETIES_THREADS must be a positive integer, got `{v}`"))),
        },
    }
}

struct Context {
    name: &'static str,
    algebra: LoadedAlgebra,
    modules: Vec<LoadedModule>,
    truncation: usize,
    params: Vec<(String, String)>,
}

fn load(name: &'static str, c: &Common) -> Result<Context> {
    threads()?;
    let field = c.field.as_deref().map(parse_field).transpose()?;
    let params = parse_params(&c.params, c.q.as_deref())?;
    let opts = ParseOptions { field, params: params.clone() };
    let algebra = load_algebra(&c.algebra, &opts)?;
    let truncation = c.trunc.unwrap_or_else(|| jobs::default_truncation(&algebra));
    if truncation < 6 {
        return Err(Error::Input(format!("--trunc must be at least 6, got {truncation}")));
    }
    let modules = c.modules.iter().map(|p| load_module(p, &algebra)).collect::<Result<Vec<_>>>()?;
    Ok(Context { name, algebra, modules, truncation, params })
}

fn need_modules(ctx: &Context) -> Result<()> {
    if ctx.modules.is_empty() {
        return Err(Error::Input(format!("{} needs at least one --module", ctx.name)));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let (name, common) = match &cli.command {
        Command::Algebra(c) => ("algebra", c),
        Command::Resolve(c) => ("resolve", c),
        Command::Ext(c) => ("ext", c),
        Command::Variety(c) => ("variety", c),
        Command::Complexity(c) => ("complexity", c),
        Command::WildCheck(c) => ("wild-check", c),
    };
    let hsource = HSource::parse(&common.hgen)?;
    let ctx = load(name, common)?;
    let d = ctx.truncation;
    let outcome = match &cli.command {
        Command::Algebra(_) => jobs::algebra(&ctx.algebra)?,
        Command::Resolve(_) => {
            need_modules(&ctx)?;
            jobs::resolve(&ctx.modules, d)?
        }
        Command::Ext(_) => {
            need_modules(&ctx)?;
            jobs::ext(&ctx.modules, d)?
        }
        Command::Complexity(_) => {
            need_modules(&ctx)?;
            jobs::complexity_cmd(&ctx.modules, d)?
        }
        Command::Variety(_) => {
            need_modules(&ctx)?;
            let choice = jobs::choose_h(&ctx.modules[0], &ctx.algebra, &hsource, d)?;
            jobs::variety(&choice, &ctx.modules)?
        }
        Command::WildCheck(c) => {
            need_modules(&ctx)?;
            let choice = jobs::choose_h(&ctx.modules[0], &ctx.algebra, &hsource, d)?;
            let config = WildConfig {
                truncation: d,
                alphas: parse_alphas(ctx.algebra.algebra.field(), &c.alphas)?,
                seed: c.seed,
                trials: c.trials,
            };
            jobs::wild(&ctx.modules[0], &choice, &config)?
        }
    };
    if let Some(s) = &outcome.summary {
        eprint!("{s}");
    }
    emit(&ctx, common, outcome)
}

fn envelope(ctx: &Context, seed: u64, outcome: Outcome) -> Value {
    let params: serde_json::Map<String, Value> =
        ctx.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "tool": "varieties",
        "version": env!("CARGO_PKG_VERSION"),
        "command": ctx.name,
        "field": ctx.algebra.algebra.field().to_string(),
        "params": params,
        "truncation": ctx.truncation,
        "seed": seed,
        "caveats": outcome.caveats,
        "result": outcome.result,
    })
}

fn is_csv(p: &Path) -> bool {
    p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn emit(ctx: &Context, c: &Common, outcome: Outcome) -> Result<()> {
    match &c.out {
        Some(p) if is_csv(p) => {
            let (header, rows) = outcome
                .csv
                .ok_or_else(|| Error::Input(format!("{} has no table output; use a .json file", ctx.name)))?;
            let mut w = csv::Writer::from_path(p).map_err(|e| Error::Input(e.to_string()))?;
            w.write_record(&header).map_err(|e| Error::Input(e.to_string()))?;
            for r in rows {
                w.write_record(&r).map_err(|e| Error::Input(e.to_string()))?;
            }
            w.flush()?;
        }
        Some(p) => {
            let text = serde_json::to_string_pretty(&envelope(ctx, c.seed, outcome))?;
            std::fs::write(p, text + "\n")?;
        }
        None => {
            let text = serde_json::to_string_pretty(&envelope(ctx, c.seed, outcome))?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_input_error(&e) { 2 } else { 1 })
        }
    }
}
