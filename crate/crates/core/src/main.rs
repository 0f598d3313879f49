use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use phn_core::field::FieldSpec;
use phn_core::indices::Mode;
use phn_core::report::{check_moebius, explain, run, ExitStatus, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "phn", version, about = "PHN indices and Euler obstructions on determinantal singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a scenario and print the report.
    Compute(RunArgs),
    /// Verify the Möbius identity of the coefficient tables.
    CheckMoebius {
        /// Row count; with `--n` restricts the check to one size and prints its tables.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: RunArgs,
    },
    /// Print the constructed matrices and ideals without Gröbner computations.
    Explain(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Saturation,
    LocalCrosscheck,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file (TOML).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// `rationals` or `prime:<p>` with p > 2^30.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldSpec>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Genericity re-checks; 1 disables the stability check.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Wall-clock budget in seconds for the Gröbner computations.
    #[arg(long)]
    budget: Option<u64>,
    /// Exit 5 unless the determinantal Milnor number is defined.
    #[arg(long)]
    require_milnor: bool,
    /// Include per-stage durations in the report.
    #[arg(long)]
    timings: bool,
    /// Also compare the Jacobian singular locus with the rank t-1 locus.
    #[arg(long)]
    verify_smoothness: bool,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let f = FieldSpec::parse(s).map_err(|e| e.to_string())?;
    match f {
        FieldSpec::PrimeField(p) if p < phn_core::scenario::MIN_SCENARIO_PRIME => {
            Err(format!("prime {p} is below the minimum 2^30"))
        }
        _ => Ok(f),
    }
}

impl RunArgs {
    fn config(&self) -> Result<RunConfig, String> {
        let input = self.input.clone().ok_or("--input is required")?;
        let mut cfg = RunConfig::new(input);
        cfg.field_override = self.field;
        cfg.seed_override = self.seed;
        cfg.mode_override = self.mode.map(|m| match m {
            ModeArg::Saturation => Mode::Saturation,
            ModeArg::LocalCrosscheck => Mode::LocalCrosscheck,
        });
        cfg.output_format = match self.format {
            Format::Text => OutputFormat::Text,
            Format::Machine => OutputFormat::Machine,
        };
        cfg.trials = self.trials as usize;
        cfg.budget_seconds = self.budget;
        cfg.require_milnor = self.require_milnor;
        cfg.timings = self.timings;
        cfg.verify_smoothness = self.verify_smoothness;
        Ok(cfg)
    }
}

fn finish(stdout: &str, stderr: Option<&str>, status: ExitStatus) -> ExitCode {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(stdout.as_bytes());
    let _ = out.flush();
    if let Some(e) = stderr {
        eprintln!("error: {e}");
    }
    ExitCode::from(status.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ExitStatus::PARSE.code } else { 0 });
        }
    };
    match cli.command {
        Command::Compute(args) => {
            let cfg = match args.config() {
                Ok(c) => c,
                Err(e) => return finish("", Some(&e), ExitStatus::PARSE),
            };
            let outcome = run(&cfg);
            let text = outcome.render(cfg.output_format);
            let stderr = match cfg.output_format {
                OutputFormat::Text => outcome.error.as_deref(),
                OutputFormat::Machine => None,
            };
            finish(&text, stderr, outcome.status)
        }
        Command::Explain(args) => {
            let cfg = match args.config() {
                Ok(c) => c,
                Err(e) => return finish("", Some(&e), ExitStatus::PARSE),
            };
            match explain(&cfg) {
                Ok(text) => finish(&text, None, ExitStatus::SUCCESS),
                Err((status, msg)) => finish("", Some(&msg), status),
            }
        }
        Command::CheckMoebius { m, n, common: _ } => {
            let (sizes, print) = match (m, n) {
                (Some(m), Some(n)) if (1..=8).contains(&m) && (1..=8).contains(&n) => (vec![(m, n)], true),
                (None, None) => ((1..=8).flat_map(|m| (1..=8).map(move |n| (m, n))).collect(), false),
                _ => return finish("", Some("--m and --n go together, each in 1..=8"), ExitStatus::PARSE),
            };
            let (text, status) = check_moebius(&sizes, print);
            finish(&text, None, status)
        }
    }
}
