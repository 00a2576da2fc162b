use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use ehall_core::coeff::DEFAULT_PRIMES;
use ehall_core::freealg::{Bidegree, Window};
use ehall_core::relations::Family;
use serde_json::{json, Value};
use thiserror::Error;

/// Bad flags, config file or values. Maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("usage error: {0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Relators,
    Rank,
    CheckCubic,
    CheckR,
    CheckDelta,
    Eq1,
    Oracle,
    LemmaTensor,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Relators,
        Command::Rank,
        Command::CheckCubic,
        Command::CheckR,
        Command::CheckDelta,
        Command::Eq1,
        Command::Oracle,
        Command::LemmaTensor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Relators => "relators",
            Command::Rank => "rank",
            Command::CheckCubic => "check-cubic",
            Command::CheckR => "check-R",
            Command::CheckDelta => "check-delta",
            Command::Eq1 => "eq1",
            Command::Oracle => "oracle",
            Command::LemmaTensor => "lemma-tensor",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
    }

    /// Window used when `--window` is absent.
    fn default_window(self) -> Window {
        let (n, lo, hi, th) = match self {
            Command::Relators => (3, -2, 2, 2),
            Command::Rank | Command::Oracle => (3, -1, 2, 0),
            Command::CheckCubic | Command::LemmaTensor => (3, -5, 5, 0),
            Command::CheckR => (3, -5, 5, 4),
            Command::CheckDelta => (3, -4, 4, 4),
            Command::Eq1 => (3, -6, 6, 6),
        };
        Window::new(n, lo, hi, th).expect("static window")
    }

    /// Command-specific keys accepted besides the common ones.
    fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Relators => &["families"],
            Command::Rank => &["bidegree", "level", "degree"],
            Command::CheckCubic => &["m"],
            Command::CheckR => &["m", "n", "l"],
            Command::CheckDelta => &["families"],
            Command::Eq1 => &["points"],
            Command::Oracle => &["range", "probe-level", "points", "bidegree"],
            Command::LemmaTensor => &["trials", "max-dim"],
        }
    }

    fn has_exact_mode(self) -> bool {
        matches!(self, Command::Relators | Command::Rank | Command::CheckCubic)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Modular,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Modular => "modular",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// Inclusive integer range written `a..b` (or a single `a`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i32,
    pub hi: i32,
}

impl IntRange {
    pub fn new(lo: i32, hi: i32) -> Self {
        Self { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }

    pub fn parse(s: &str) -> Result<Self, UsageError> {
        let s = s.trim();
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
            None => (s, s),
        };
        let lo = parse_int::<i32>(a, "range bound")?;
        let hi = parse_int::<i32>(b, "range bound")?;
        if lo > hi {
            return usage(format!("empty range {s}"));
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, UsageError> {
    s.trim()
        .parse()
        .map_err(|_| UsageError(format!("bad {what} '{}'", s.trim())))
}

/// `a..b` (the u-range) or comma-separated `n=3,u=a..b,th=k`.
pub fn parse_window(s: &str, base: Window) -> Result<Window, UsageError> {
    let s = s.trim();
    if !s.contains('=') {
        let r = IntRange::parse(s)?;
        return Ok(Window { u_min: r.lo, u_max: r.hi, ..base });
    }
    let mut w = base;
    for part in s.split(',') {
        let Some((k, v)) = part.split_once('=') else {
            return usage(format!("bad window part '{part}'"));
        };
        match k.trim() {
            "n" => w.n_max = parse_int(v, "window level")?,
            "u" => {
                let r = IntRange::parse(v)?;
                w.u_min = r.lo;
                w.u_max = r.hi;
            }
            "th" => w.th_max = parse_int(v, "window theta weight")?,
            other => return usage(format!("unknown window key '{other}'")),
        }
    }
    Ok(w)
}

fn parse_bidegree(s: &str) -> Result<Bidegree, UsageError> {
    let Some((n, d)) = s.split_once(',') else {
        return usage(format!("bidegree must be 'n,d', got '{s}'"));
    };
    Ok(Bidegree::new(parse_int(n, "level")?, parse_int(d, "degree")?))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Largest prime accepted on the command line.
pub const MAX_PRIME: u64 = u32::MAX as u64;
/// Smallest prime accepted; small fields make generic points scarce.
pub const MIN_PRIME: u64 = 1 << 16;

fn parse_primes(s: &str) -> Result<Vec<u64>, UsageError> {
    let mut out = Vec::new();
    for part in s.split(',').filter(|t| !t.trim().is_empty()) {
        let p: u64 = parse_int(part, "prime")?;
        if !(MIN_PRIME..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return usage(format!("{p} is not a prime in [2^16, 2^32)"));
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    if out.is_empty() {
        return usage("empty prime list");
    }
    Ok(out)
}

fn parse_bool(s: &str) -> Result<bool, UsageError> {
    match s.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => usage(format!("bad boolean '{other}'")),
    }
}

/// Command-specific settings, defaults filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub bidegrees: Vec<Bidegree>,
    pub m: IntRange,
    pub n: IntRange,
    pub l: IntRange,
    pub families: Vec<Family>,
    pub points: usize,
    pub probe_level: u32,
    pub range: IntRange,
    pub trials: usize,
    pub max_dim: usize,
}

impl Params {
    fn defaults(cmd: Command) -> Self {
        let (m, families) = match cmd {
            Command::CheckCubic => (IntRange::new(-5, 5), Family::ALL.to_vec()),
            _ => (IntRange::new(-1, 1), Family::ALL.to_vec()),
        };
        Self {
            bidegrees: vec![Bidegree::new(2, 1)],
            m,
            n: IntRange::new(-1, 1),
            l: IntRange::new(-1, 1),
            families,
            points: 20,
            probe_level: 2,
            range: IntRange::new(-3, 3),
            trials: 100,
            max_dim: 6,
        }
    }
}

/// A validated run configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub window: Window,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub mode: Mode,
    pub format: Format,
    pub output: Option<PathBuf>,
    /// Fill per-record `elapsed_ms`.
    pub timing: bool,
    pub params: Params,
}

impl RunConfig {
    /// Defaults for `command`.
    pub fn new(command: Command) -> Self {
        Self {
            command,
            window: command.default_window(),
            primes: DEFAULT_PRIMES.to_vec(),
            seed: 42,
            mode: Mode::Modular,
            format: Format::Json,
            output: None,
            timing: false,
            params: Params::defaults(command),
        }
    }

    /// Build from `key -> value` settings, as given by flags or a config
    /// file, and validate.
    pub fn from_settings(command: Command, settings: &BTreeMap<String, String>) -> Result<Self, UsageError> {
        let mut cfg = Self::new(command);
        let mut level = None;
        let mut degree = None;
        for (k, v) in settings {
            let p = &mut cfg.params;
            match k.as_str() {
                "window" => cfg.window = parse_window(v, cfg.window)?,
                "primes" => cfg.primes = parse_primes(v)?,
                "seed" => cfg.seed = parse_int(v, "seed")?,
                "mode" => {
                    cfg.mode = match v.trim() {
                        "exact" => Mode::Exact,
                        "modular" => Mode::Modular,
                        o => return usage(format!("mode must be exact or modular, got '{o}'")),
                    }
                }
                "format" => {
                    cfg.format = match v.trim() {
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        o => return usage(format!("format must be json or csv, got '{o}'")),
                    }
                }
                "output" => cfg.output = Some(PathBuf::from(v.trim())),
                "timing" => cfg.timing = parse_bool(v)?,
                _ if !command.keys().contains(&k.as_str()) => {
                    return usage(format!("'{k}' does not apply to {command}"));
                }
                "bidegree" => {
                    p.bidegrees = v
                        .split(';')
                        .filter(|t| !t.trim().is_empty())
                        .map(parse_bidegree)
                        .collect::<Result<_, _>>()?
                }
                "level" => level = Some(parse_int::<u32>(v, "level")?),
                "degree" => degree = Some(IntRange::parse(v)?),
                "m" => p.m = IntRange::parse(v)?,
                "n" => p.n = IntRange::parse(v)?,
                "l" => p.l = IntRange::parse(v)?,
                "families" => {
                    p.families = v
                        .split(',')
                        .map(|f| {
                            Family::from_name(f.trim())
                                .ok_or_else(|| UsageError(format!("unknown family '{}'", f.trim())))
                        })
                        .collect::<Result<_, _>>()?;
                    p.families.sort();
                    p.families.dedup();
                }
                "points" => p.points = parse_int(v, "point count")?,
                "probe-level" => p.probe_level = parse_int(v, "probe level")?,
                "range" => p.range = IntRange::parse(v)?,
                "trials" => p.trials = parse_int(v, "trial count")?,
                "max-dim" => p.max_dim = parse_int(v, "dimension")?,
                _ => return usage(format!("unknown key '{k}'")),
            }
        }
        match (level, degree) {
            (Some(n), Some(r)) => {
                if settings.contains_key("bidegree") {
                    return usage("give either --bidegree or --level/--degree");
                }
                cfg.params.bidegrees = r.iter().map(|d| Bidegree::new(n, d)).collect();
            }
            (None, None) => {}
            _ => return usage("--level and --degree go together"),
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), UsageError> {
        let w = &self.window;
        if w.u_min > w.u_max {
            return usage(format!("empty u-range in window {w}"));
        }
        if w.n_max == 0 || w.n_max > 3 {
            return usage("window level must be in 1..3");
        }
        if w.th_max > 8 || w.u_max - w.u_min > 16 {
            return usage(format!("window {w} is too large"));
        }
        if self.mode == Mode::Exact && !self.command.has_exact_mode() {
            return usage(format!("{} has no exact mode", self.command));
        }
        let p = &self.params;
        if p.bidegrees.is_empty() {
            return usage("no bidegree to compute");
        }
        if p.bidegrees.iter().any(|b| b.n > w.n_max) {
            return usage("bidegree level exceeds the window");
        }
        if p.families.is_empty() {
            return usage("no family selected");
        }
        if p.probe_level > 2 {
            return usage("probe level must be in 0..2");
        }
        if !(1..=200).contains(&p.points) {
            return usage("point count must be in 1..200");
        }
        if p.max_dim == 0 || p.max_dim > 12 {
            return usage("max-dim must be in 1..12");
        }
        if p.trials > 10_000 {
            return usage("at most 10000 trials");
        }
        for r in [p.m, p.n, p.l, p.range] {
            if r.hi - r.lo > 20 {
                return usage(format!("range {r} is too wide"));
            }
        }
        Ok(())
    }

    /// The resolved configuration as echoed into reports. Only settings the
    /// command reads appear.
    pub fn echo(&self) -> Value {
        let w = &self.window;
        let p = &self.params;
        let mut out = json!({
            "command": self.command.name(),
            "window": {"n_max": w.n_max, "u_min": w.u_min, "u_max": w.u_max, "th_max": w.th_max},
            "primes": self.primes,
            "seed": self.seed,
            "mode": self.mode.name(),
            "format": self.format.name(),
            "output": self.output.as_ref().map(|o| o.display().to_string()),
            "timing": self.timing,
        });
        let extra = out.as_object_mut().expect("object");
        let fams = || p.families.iter().map(|f| f.name()).collect::<Vec<_>>();
        let bids = || p.bidegrees.iter().map(|b| format!("{},{}", b.n, b.d)).collect::<Vec<_>>();
        for key in self.command.keys() {
            let v = match *key {
                "families" => json!(fams()),
                "bidegree" => json!(bids()),
                "level" | "degree" => continue,
                "m" => json!(p.m.to_string()),
                "n" => json!(p.n.to_string()),
                "l" => json!(p.l.to_string()),
                "points" => json!(p.points),
                "probe-level" => json!(p.probe_level),
                "range" => json!(p.range.to_string()),
                "trials" => json!(p.trials),
                "max-dim" => json!(p.max_dim),
                _ => continue,
            };
            extra.insert(key.to_string(), v);
        }
        out
    }
}

/// Read `key = value` lines. Blank lines and `#` comments are skipped; keys
/// are flag names without the dashes.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return usage(format!("config line {}: expected key = value", i + 1));
        };
        let k = k.trim().trim_start_matches("--").to_string();
        if k == "prime" {
            return usage(format!("config line {}: use 'primes' in config files", i + 1));
        }
        if out.insert(k.clone(), v.trim().to_string()).is_some() {
            return usage(format!("config line {}: duplicate key '{k}'", i + 1));
        }
    }
    Ok(out)
}

pub fn load_config_file(path: &Path) -> Result<BTreeMap<String, String>, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    parse_config_text(&text)
}
