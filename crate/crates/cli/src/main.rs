use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use opcalc::rb_operad::{census, rb_normalize, rb_parse, Strategy};
use opcalc::rf_operad::parse_fraction;
use opcalc::verify::{
    all_pass, emit_report, run_checks, CheckId, Format, Params, ThetaSpec, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(
    name = "opcalc",
    version,
    about = "Exact identity verification for rational-function and Rota-Baxter operads"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one registered check, or `all` of them.
    Verify(VerifyArgs),
    /// Rota-Baxter expressions.
    #[command(subcommand)]
    Rb(RbCommand),
    /// Rational-function operad.
    #[command(subcommand)]
    Rf(RfCommand),
}

#[derive(Args)]
struct VerifyArgs {
    /// Check id, or `all`.
    check: String,
    #[arg(long, default_value_t = 5)]
    max_arity: usize,
    #[arg(long, default_value_t = 5)]
    max_weight: u32,
    /// `symbolic` or a comma-separated list such as `0,1,1/2`.
    #[arg(long, default_value = "symbolic")]
    theta: String,
    /// Seed in hexadecimal, with or without `0x`.
    #[arg(long)]
    seed: Option<String>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Format printed on stdout: `text` or `json`.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum RbCommand {
    /// Reduce an expression to nested monomials. `@path` reads one expression per line.
    Normalize {
        expr: String,
        #[arg(long, default_value = "symbolic")]
        theta: String,
    },
    /// Count nested monomials of arity N by weight.
    Census {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        max_weight: u32,
    },
}

#[derive(Subcommand)]
enum RfCommand {
    /// Partial composition `f ∘_slot g`.
    Compose {
        f: String,
        g: String,
        #[arg(long)]
        slot: usize,
        #[arg(long, default_value = "symbolic")]
        theta: String,
    },
}

/// Failure kinds mapped to exit codes.
enum Outcome {
    Usage(String),
    Failed,
}

fn usage(e: impl std::fmt::Display) -> Outcome {
    Outcome::Usage(e.to_string())
}

fn parse_seed(s: &str) -> Result<u64, Outcome> {
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|_| usage(format!("invalid hex seed '{s}'")))
}

fn verify(a: VerifyArgs) -> Result<(), Outcome> {
    let ids: Vec<CheckId> = if a.check == "all" {
        CheckId::ALL.to_vec()
    } else {
        vec![a.check.parse().map_err(usage)?]
    };
    let params = Params {
        max_arity: a.max_arity,
        max_weight: a.max_weight,
        theta: a.theta.parse().map_err(usage)?,
        seed: a
            .seed
            .as_deref()
            .map(parse_seed)
            .transpose()?
            .unwrap_or(DEFAULT_SEED),
    };
    let format: Format = a.format.parse().map_err(usage)?;
    let reports = run_checks(&ids, &params).map_err(usage)?;
    print!("{}", emit_report(&reports, &params, format));
    if let Some(path) = a.json {
        fs::write(&path, emit_report(&reports, &params, Format::Json))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if all_pass(&reports) {
        Ok(())
    } else {
        Err(Outcome::Failed)
    }
}

fn read_exprs(arg: &str) -> Result<Vec<String>, Outcome> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
            Ok(text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from)
                .collect())
        }
        None => Ok(vec![arg.to_string()]),
    }
}

fn rb(cmd: RbCommand) -> Result<(), Outcome> {
    match cmd {
        RbCommand::Normalize { expr, theta } => {
            let spec: ThetaSpec = theta.parse().map_err(usage)?;
            let thetas = spec.scalars();
            for src in read_exprs(&expr)? {
                let e = rb_parse(&src).map_err(usage)?;
                for th in &thetas {
                    let normal =
                        rb_normalize(&e, th, Strategy::LeftmostInnermost).map_err(usage)?;
                    if thetas.len() > 1 || matches!(spec, ThetaSpec::List(_)) {
                        println!("{e} [θ = {th}] = {normal}");
                    } else {
                        println!("{e} = {normal}");
                    }
                }
            }
            Ok(())
        }
        RbCommand::Census { arity, max_weight } => {
            let counts = census(arity, max_weight).map_err(usage)?;
            for (d, c) in counts.iter().enumerate() {
                println!("{d}\t{c}");
            }
            Ok(())
        }
    }
}

fn rf(cmd: RfCommand) -> Result<(), Outcome> {
    match cmd {
        RfCommand::Compose { f, g, slot, theta } => {
            let th = match theta
                .parse::<ThetaSpec>()
                .map_err(usage)?
                .scalars()
                .as_slice()
            {
                [one] => one.clone(),
                _ => return Err(usage("rf compose takes a single θ value")),
            };
            let f = parse_fraction(&f, &th).map_err(|e| usage(format!("f: {e}")))?;
            let g = parse_fraction(&g, &th).map_err(|e| usage(format!("g: {e}")))?;
            println!("{}", f.compose(&g, slot).map_err(usage)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Rb(c) => rb(c),
        Command::Rf(c) => rf(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Outcome::Failed) => ExitCode::from(1),
        Err(Outcome::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
