//! `efverify`: run the verification pipelines for the four rational
//! Enriques-Fano threefolds and report every check.
//!
//! Exit codes: 0 when all selected checks pass, 1 when any check fails,
//! 2 on engine errors or unusable arguments.

use anyhow::{Context, Result};
use clap::Parser;
use efverify_core::scenario::{self, CheckStatus, ScenarioConfig, ScenarioReport};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "efverify",
    about = "Exact verification of the four rational Enriques-Fano threefolds over Z/pZ"
)]
struct Args {
    /// Scenario to run: fano13, fano9, fano7, fano6, or all
    scenario: String,

    /// Prime modulus of the ground field
    #[arg(long)]
    prime: Option<u64>,

    /// Seed driving every random choice (construction, sampling, retries)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Image computation mode: `elim` or `degreewise:D`; default is exact
    /// elimination except for fano6, which uses degreewise:5
    #[arg(long)]
    mode: Option<String>,

    /// Bound on construction retries for degenerate random choices
    #[arg(long, default_value_t = 20)]
    retry_limit: u32,

    /// Substring filter on check ids; everything else is reported as skipped
    #[arg(long)]
    checks: Option<String>,

    /// Write the report as JSON (an array when running `all`)
    #[arg(long)]
    report: Option<PathBuf>,

    /// Export the constructed linear systems and image ideals as ideal files
    #[arg(long)]
    ideals_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("efverify: error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let args = Args::parse();

    if let Ok(threads) = std::env::var("EFVERIFY_THREADS") {
        let n: usize = threads
            .parse()
            .context("EFVERIFY_THREADS must be a positive integer")?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("building the thread pool")?;
    }

    let mut cfg = ScenarioConfig {
        seed: args.seed,
        retry_limit: args.retry_limit,
        checks: args.checks.clone(),
        ..Default::default()
    };
    if let Some(p) = args.prime {
        cfg.prime = p;
        efverify_core::Fp::new(p).context("validating --prime")?;
    }
    if let Some(m) = &args.mode {
        cfg.image_mode = Some(ScenarioConfig::parse_mode(m).context("parsing --mode")?);
    }

    let names: Vec<&str> = if args.scenario == "all" {
        scenario::SCENARIOS.to_vec()
    } else if scenario::SCENARIOS.contains(&args.scenario.as_str()) {
        vec![args.scenario.as_str()]
    } else {
        anyhow::bail!(
            "unknown scenario `{}`; expected one of fano13, fano9, fano7, fano6, all",
            args.scenario
        );
    };

    let mut reports: Vec<ScenarioReport> = Vec::new();
    for name in names {
        let t0 = std::time::Instant::now();
        let report = scenario::run_scenario(name, &cfg).expect("known scenario");
        print_report(&report, t0.elapsed());
        reports.push(report);
    }

    if let Some(dir) = &args.ideals_dir {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating --ideals-dir {}", dir.display()))?;
        for rep in &reports {
            for (name, text) in &rep.artifacts {
                let path = dir.join(format!("{}.{}.ideal", rep.scenario, name));
                std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }

    if let Some(path) = &args.report {
        let json = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])?
        } else {
            serde_json::to_string_pretty(&reports)?
        };
        std::fs::write(path, json)
            .with_context(|| format!("writing report to {}", path.display()))?;
    }

    let any_error = reports.iter().any(|r| r.any_engine_error());
    let all_pass = reports.iter().all(|r| r.passed());
    Ok(if any_error {
        ExitCode::from(2)
    } else if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_report(rep: &ScenarioReport, elapsed: std::time::Duration) {
    let (pass, fail, skipped, error) = rep.counts();
    println!(
        "== {} (prime {}, seed {}, mode {}) — {:.1}s",
        rep.scenario,
        rep.prime,
        rep.seed,
        rep.mode,
        elapsed.as_secs_f64()
    );
    for c in &rep.checks {
        match c.status {
            CheckStatus::Pass => {}
            CheckStatus::Skipped => {}
            CheckStatus::Fail => println!(
                "   FAIL {}: {} (expected {}, got {})",
                c.id, c.description, c.expected, c.actual
            ),
            CheckStatus::Error => println!("   ERROR {}: {} ({})", c.id, c.description, c.actual),
        }
    }
    for n in &rep.notes {
        println!("   note: {n}");
    }
    println!(
        "   {} checks: {pass} passed, {fail} failed, {skipped} skipped, {error} errors",
        rep.checks.len()
    );
}
