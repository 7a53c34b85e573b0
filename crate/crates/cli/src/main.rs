use std::path::PathBuf;
use std::process::ExitCode;

use alexmod::commands::{run, Command, RhoChoice, RunConfig};
use anyhow::{bail, Context};
use clap::Parser;

/// Alexander modules of free complexes and group presentations over Laurent
/// polynomial rings: jumping ideals, genericity, homology and finite
/// generation over Z of one-parameter covers.
#[derive(Parser, Debug)]
#[command(name = "alexmod", version)]
struct Cli {
    /// validate, jumping-ideals, jump-locus-sample, genericity, find-rho,
    /// specialize, homology, alexander, fg, novikov or crosscheck
    command: String,
    /// Input file (complex or presentation JSON), or builtin:<name>
    input: Option<String>,
    /// Degree window a:b
    #[arg(long, value_parser = parse_window)]
    window: Option<(i64, i64)>,
    /// Epimorphism coefficients a1,...,ar
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "find_generic")]
    rho: Option<Vec<i64>>,
    /// Search for a generic rho in [-B, B]^r
    #[arg(long, value_name = "B")]
    find_generic: Option<i64>,
    /// Primes for field and content checks
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
    primes: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on product-ideal generators
    #[arg(long, default_value_t = alexmod::pipeline::DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long)]
    threads: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Characteristic of the character fields
    #[arg(long)]
    char_prime: Option<u64>,
    /// Extension degrees of the character fields
    #[arg(long, value_delimiter = ',', default_value = "1")]
    ext_degrees: Vec<u32>,
    /// Characters to sample (0 = all), or random complexes for crosscheck
    #[arg(long, default_value_t = 0)]
    count: usize,
    /// Run fg on the dual complex
    #[arg(long)]
    dual: bool,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

fn config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let command: Command = cli.command.parse()?;
    let mut c = RunConfig::new(command);
    c.input = cli.input.clone();
    c.window = cli.window;
    c.rho = match (&cli.rho, cli.find_generic) {
        (Some(a), _) => Some(RhoChoice::Explicit(a.clone())),
        (None, Some(b)) => Some(RhoChoice::FindGeneric(b)),
        (None, None) => None,
    };
    c.primes = cli.primes.clone();
    c.seed = cli.seed;
    c.budget = cli.budget;
    c.threads = cli.threads;
    c.char_prime = cli.char_prime;
    c.ext_degrees = cli.ext_degrees.clone();
    c.count = cli.count;
    c.dual = cli.dual;
    if c.input.is_none() && command != Command::Crosscheck {
        bail!("{command} needs an input file or builtin:<name>");
    }
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let outcome = run(&cfg);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.report).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", outcome.report);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit_code as u8)
}
