//! Command-line interface over the tower pipeline.
//!
//! Exit codes: 0 on success, 1 when a computation or check fails,
//! 2 when the tower file or a divisor expression cannot be parsed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use chowtower::pipeline::Pipeline;
use chowtower::tower::{DivisorExpr, TowerSpec};
use chowtower::{report, Error};

#[derive(Parser)]
#[command(name = "chowtower", version, about = "Exact intersection theory on a tower of projective bundles")]
struct Cli {
    /// Tower description file (TOML). Defaults to the built-in tower.
    #[arg(long, global = true, value_name = "FILE")]
    tower: Option<PathBuf>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Chern classes, canonical class, and Euler number of every stage.
    Chern,
    /// Triple product of three divisor expressions on the final stage.
    Intersect {
        #[arg(allow_hyphen_values = true)]
        d1: String,
        #[arg(allow_hyphen_values = true)]
        d2: String,
        #[arg(allow_hyphen_values = true)]
        d3: String,
        /// Also evaluate the product at this value of n.
        #[arg(long)]
        at: Option<i64>,
    },
    /// Section count of a divisor on the bundle stage.
    H0 {
        /// Value of n at which to count sections.
        #[arg(long)]
        n: i64,
        #[arg(allow_hyphen_values = true)]
        divisor: String,
    },
    /// Base locus of the half-anticanonical system on the bundle stage.
    Baselocus,
    /// Dimension filtration of the half-anticanonical system.
    Filtration {
        /// Value of n at which to tabulate dimensions.
        #[arg(long)]
        n: i64,
    },
    /// Topological Euler number of a divisor class on the final stage.
    EulerDivisor {
        #[arg(allow_hyphen_values = true)]
        divisor: String,
        /// Also evaluate the Euler number at this value of n.
        #[arg(long)]
        at: Option<i64>,
    },
    /// Invariants of the branched double cover.
    Cover,
    /// Compare the computed tower against the bundled expectations.
    ReproducePaper {
        /// Inclusive range of n used to stabilize the section table.
        #[arg(long, default_value = "1..60", value_name = "LO..HI")]
        n_range: String,
    },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Tower(_) | Error::Stage { .. } => 2,
        _ => 1,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_for(e))
}

fn emit<T: Serialize + std::fmt::Display>(value: &T, json: bool) {
    if json {
        // reports hold only strings, integers, and bools; serialization
        // cannot fail
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else {
        print!("{value}");
    }
}

fn load_tower(path: &Option<PathBuf>) -> Result<TowerSpec, ExitCode> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                eprintln!("error: cannot read {}: {e}", p.display());
                ExitCode::from(2)
            })?;
            TowerSpec::parse(&text).map_err(|e| fail(&e))
        }
        None => TowerSpec::builtin().map_err(|e| fail(&e)),
    }
}

fn parse_expr(src: &str) -> Result<DivisorExpr, ExitCode> {
    DivisorExpr::parse(src).map_err(|e| fail(&e))
}

fn parse_range(src: &str) -> Result<(i64, i64), ExitCode> {
    let bad = || {
        eprintln!("error: expected a range like 1..60, got {src}");
        ExitCode::from(2)
    };
    let (lo, hi) = src.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo < 1 || hi <= lo {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = match load_tower(&cli.tower) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let pipeline = match Pipeline::build(spec) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };

    match &cli.cmd {
        Cmd::Chern => {
            emit(&report::chern_report(&pipeline), cli.json);
        }
        Cmd::Intersect { d1, d2, d3, at } => {
            let exprs = match (parse_expr(d1), parse_expr(d2), parse_expr(d3)) {
                (Ok(a), Ok(b), Ok(c)) => [a, b, c],
                (Err(code), _, _) | (_, Err(code), _) | (_, _, Err(code)) => return code,
            };
            match report::intersect_report(&pipeline, &exprs, *at) {
                Ok(r) => emit(&r, cli.json),
                Err(e) => return fail(&e),
            }
        }
        Cmd::H0 { n, divisor } => {
            let expr = match parse_expr(divisor) {
                Ok(e) => e,
                Err(code) => return code,
            };
            match report::h0_report(&pipeline, &expr, *n) {
                Ok(r) => emit(&r, cli.json),
                Err(e) => return fail(&e),
            }
        }
        Cmd::Baselocus => match report::base_locus_report(&pipeline) {
            Ok(r) => emit(&r, cli.json),
            Err(e) => return fail(&e),
        },
        Cmd::Filtration { n } => match report::filtration_report(&pipeline, *n) {
            Ok(r) => emit(&r, cli.json),
            Err(e) => return fail(&e),
        },
        Cmd::EulerDivisor { divisor, at } => {
            let expr = match parse_expr(divisor) {
                Ok(e) => e,
                Err(code) => return code,
            };
            match report::euler_divisor_report(&pipeline, &expr, *at) {
                Ok(r) => emit(&r, cli.json),
                Err(e) => return fail(&e),
            }
        }
        Cmd::Cover => match report::cover_report(&pipeline) {
            Ok(r) => emit(&r, cli.json),
            Err(e) => return fail(&e),
        },
        Cmd::ReproducePaper { n_range } => {
            let (lo, hi) = match parse_range(n_range) {
                Ok(r) => r,
                Err(code) => return code,
            };
            match report::reproduce(&pipeline, lo, hi) {
                Ok(r) => {
                    emit(&r, cli.json);
                    if !r.pass {
                        return ExitCode::from(1);
                    }
                }
                Err(e) => return fail(&e),
            }
        }
    }
    ExitCode::SUCCESS
}
