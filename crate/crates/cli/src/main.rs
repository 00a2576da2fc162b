use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ehall_cli::{execute, load_config_file, Command, Format, RunConfig, UsageError, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "ehall", version, about = "Run elliptic Hall algebra verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Flat `key = value` file; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// `a..b` for the u-range, or `n=3,u=a..b,th=k`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// May be repeated.
    #[arg(long = "prime", global = true)]
    prime: Vec<u64>,
    /// Comma-separated prime list.
    #[arg(long, global = true, conflicts_with = "prime")]
    primes: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// exact | modular
    #[arg(long, global = true)]
    mode: Option<String>,
    /// json | csv
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Record per-check and total elapsed times.
    #[arg(long, global = true)]
    timing: bool,

    /// `n,d`; may be repeated (rank, oracle).
    #[arg(long, global = true, allow_hyphen_values = true)]
    bidegree: Vec<String>,
    /// Level for a degree range (rank).
    #[arg(long, global = true)]
    level: Option<u32>,
    /// Degree range `a..b` (rank).
    #[arg(long, global = true, allow_hyphen_values = true)]
    degree: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    l: Option<String>,
    /// Comma-separated family names, e.g. `QUAD_TT,MIXED`.
    #[arg(long, global = true)]
    families: Option<String>,
    /// Evaluation points per prime (eq1, oracle).
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Highest probe level (oracle).
    #[arg(long = "probe-level", global = true)]
    probe_level: Option<u32>,
    /// Relator parameter range (oracle).
    #[arg(long, global = true, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long = "max-dim", global = true)]
    max_dim: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// List in-window relators.
    Relators,
    /// Quotient ranks of graded components.
    Rank,
    /// Cubic relator from residues against the nested commutator.
    CheckCubic,
    /// Ideal membership of R(m,n,l).
    #[command(name = "check-R", alias = "check-r")]
    CheckR,
    /// Coproduct compatibility of the relators.
    CheckDelta,
    /// Level decomposition of the coproduct of the cubic relator.
    Eq1,
    /// Relators in the shuffle representation, and rank bounds.
    Oracle,
    /// Kernel of a tensor square of surjections.
    LemmaTensor,
}

impl Cmd {
    fn command(self) -> Command {
        match self {
            Cmd::Relators => Command::Relators,
            Cmd::Rank => Command::Rank,
            Cmd::CheckCubic => Command::CheckCubic,
            Cmd::CheckR => Command::CheckR,
            Cmd::CheckDelta => Command::CheckDelta,
            Cmd::Eq1 => Command::Eq1,
            Cmd::Oracle => Command::Oracle,
            Cmd::LemmaTensor => Command::LemmaTensor,
        }
    }
}

impl Cli {
    fn flag_settings(&self) -> BTreeMap<String, String> {
        let mut s = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                s.insert(k.to_string(), v);
            }
        };
        put("window", self.window.clone());
        let primes = (!self.prime.is_empty()).then(|| {
            self.prime.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        });
        put("primes", primes.or(self.primes.clone()));
        put("seed", self.seed.map(|x| x.to_string()));
        put("mode", self.mode.clone());
        put("format", self.format.clone());
        put("output", self.output.as_ref().map(|p| p.display().to_string()));
        put("timing", self.timing.then(|| "true".into()));
        put("bidegree", (!self.bidegree.is_empty()).then(|| self.bidegree.join(";")));
        put("level", self.level.map(|x| x.to_string()));
        put("degree", self.degree.clone());
        put("m", self.m.clone());
        put("n", self.n.clone());
        put("l", self.l.clone());
        put("families", self.families.clone());
        put("points", self.points.map(|x| x.to_string()));
        put("probe-level", self.probe_level.map(|x| x.to_string()));
        put("range", self.range.clone());
        put("trials", self.trials.map(|x| x.to_string()));
        put("max-dim", self.max_dim.map(|x| x.to_string()));
        s
    }

    fn run_config(&self) -> Result<RunConfig, UsageError> {
        let mut settings = match &self.config {
            Some(path) => load_config_file(path)?,
            None => BTreeMap::new(),
        };
        settings.extend(self.flag_settings());
        RunConfig::from_settings(self.command.command(), &settings)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.run_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("ehall: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let mut report = execute(&cfg);
    if !cfg.timing {
        report.wall_time_ms = None;
    }
    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("ehall: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None => print!("{text}"),
    }
    eprintln!(
        "ehall {}: {} records, {} pass, {} inconclusive, {} fail",
        cfg.command, report.summary.total, report.summary.pass, report.summary.inconclusive, report.summary.fail
    );
    ExitCode::from(report.exit_code() as u8)
}
