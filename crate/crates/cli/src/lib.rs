//! Command-line front end: argument model, validation, dispatch and
//! rendering. Every report is a JSON envelope `{"header": …, "report": …}`
//! (or a CSV table where one makes sense); failures are rendered as
//! `{"header": …, "error": {"id": …, "message": …}}`.

use std::env;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use cantor_core::report::{
    sequence_report, DecayReportView, OmegaReport, PolarReport, ResonanceReport, SieveReportView,
    TargetReport, ThetaRow,
};
use cantor_core::{
    approximants, decay_check, omega_enclosure, parse_rational, resonance_point, sieve, targeted_omega,
    theta_table, to_polar, CoefficientPair, LacunarySequence, Ladder, SizeSequence, TargetSpec,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable naming the directory that relative `--out` paths
/// are resolved against.
pub const OUT_DIR_ENV: &str = "CANTOR_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Inclusive index range written `LO..HI`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for SRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad lower bound in {s:?}"))?;
        let hi = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad upper bound in {s:?}"))?;
        Ok(SRange { lo, hi })
    }
}

impl fmt::Display for SRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "cantor",
    version,
    about = "Exact resonance constructions for super-lacunary sequences"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report here instead of stdout. Relative paths are resolved
    /// against $CANTOR_OUT_DIR when it is set.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format; CSV is available for tabular reports only.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Significant digits in decimal approximations of exact rationals.
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Generate n_1 = seed, n_k = 2^k n_(k-1) + 1.
    GenSeq {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Odd chain, approximants and certified enclosure of Ω.
    Omega {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        seed: u64,
        /// Include the Θ residual table.
        #[arg(long)]
        theta_table: bool,
    },
    /// Steer Ω into [(mu-1)/nu, mu/nu].
    Target {
        #[arg(long)]
        mu: u64,
        #[arg(long)]
        nu: u64,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Deletion sieve with ladder 1/k over one positive rational per line.
    Sieve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        levels: usize,
    },
    /// Amplitude-phase form of a·sin(nx) + b·cos(nx).
    Polar {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
    /// Certified |cos(n_s·πΩ) + 1| bounds at the resonance point.
    Resonance {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        seed: u64,
        /// Inclusive range of s, e.g. 2..6; defaults to the certified range.
        #[arg(long)]
        s_range: Option<SRange>,
    },
    /// Compare coefficient amplitudes with grid sups of each term.
    DecayCheck {
        /// CSV with header n,a,b.
        #[arg(long)]
        series: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        grid: usize,
        #[arg(long, default_value_t = 1e-3)]
        eps_term: f64,
        #[arg(long, default_value_t = 1e-3)]
        eps_rho: f64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::GenSeq { .. } => "gen-seq",
            Command::Omega { .. } => "omega",
            Command::Target { .. } => "target",
            Command::Sieve { .. } => "sieve",
            Command::Polar { .. } => "polar",
            Command::Resonance { .. } => "resonance",
            Command::DecayCheck { .. } => "decay-check",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] cantor_core::Error),
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn id(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(e) => e.id(),
            CliError::Input { .. } => "input",
            CliError::Output { .. } => "output",
        }
    }

    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl RunConfig {
    /// Range checks that do not need any computation.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.digits == 0 {
            return Err(usage("--digits must be at least 1"));
        }
        let csv_ok = match &self.command {
            Command::GenSeq { depth, seed } | Command::Target { depth, seed, .. } => {
                check_depth_seed(*depth, *seed)?;
                matches!(self.command, Command::GenSeq { .. })
            }
            Command::Omega {
                depth,
                seed,
                theta_table,
            } => {
                check_depth_seed(*depth, *seed)?;
                *theta_table
            }
            Command::Resonance { depth, seed, s_range } => {
                check_depth_seed(*depth, *seed)?;
                if let Some(r) = s_range {
                    if r.lo > r.hi {
                        return Err(usage(format!("empty --s-range {r}")));
                    }
                }
                true
            }
            Command::Sieve { levels, .. } => {
                if *levels == 0 {
                    return Err(usage("--levels must be at least 1"));
                }
                true
            }
            Command::Polar { a, b } => {
                if !(a.is_finite() && b.is_finite()) {
                    return Err(usage("--a and --b must be finite"));
                }
                false
            }
            Command::DecayCheck {
                grid,
                eps_term,
                eps_rho,
                ..
            } => {
                if *grid == 0 {
                    return Err(usage("--grid must be at least 1"));
                }
                if !(*eps_term > 0.0 && *eps_rho > 0.0) {
                    return Err(usage("tolerances must be positive"));
                }
                true
            }
        };
        if self.format == OutputFormat::Csv && !csv_ok {
            return Err(usage(format!("{} has no CSV form", self.command.name())));
        }
        Ok(())
    }

    /// Where the report goes; `None` means stdout.
    pub fn output_path(&self) -> Option<PathBuf> {
        self.out
            .as_ref()
            .map(|p| resolve_out(p, env::var_os(OUT_DIR_ENV).map(PathBuf::from)))
    }
}

fn resolve_out(path: &Path, out_dir: Option<PathBuf>) -> PathBuf {
    match out_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

fn check_depth_seed(depth: usize, seed: u64) -> Result<(), CliError> {
    if depth == 0 {
        return Err(usage("--depth must be at least 1"));
    }
    if seed == 0 {
        return Err(usage("--seed must be at least 1"));
    }
    Ok(())
}

/// Run metadata, kept apart from the report body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub command: String,
}

impl Header {
    fn for_command(command: &Command) -> Self {
        Header {
            tool: "cantor".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.name().into(),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    header: &'a Header,
    report: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub id: String,
    pub message: String,
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    header: &'a Header,
    error: ErrorBody,
}

fn to_json<T: Serialize>(header: &Header, report: T) -> String {
    let mut text = serde_json::to_string_pretty(&Envelope { header, report }).expect("reports serialize");
    text.push('\n');
    text
}

/// Machine-readable error object for a failed run.
pub fn render_error(config: &RunConfig, err: &CliError) -> String {
    let header = Header::for_command(&config.command);
    let mut text = serde_json::to_string_pretty(&ErrorEnvelope {
        header: &header,
        error: ErrorBody {
            id: err.id().into(),
            message: err.to_string(),
        },
    })
    .expect("error serializes");
    text.push('\n');
    text
}

fn to_csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// One positive rational per line, as `p/q` or a decimal. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_sizes(text: &str, path: &Path) -> Result<SizeSequence, CliError> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = parse_rational(line).map_err(|e| CliError::Input {
            path: path.to_path_buf(),
            message: format!("line {}: {e}", lineno + 1),
        })?;
        values.push(v);
    }
    Ok(SizeSequence::new(values)?)
}

#[derive(Debug, Deserialize)]
struct SeriesRecord {
    n: u64,
    a: f64,
    b: f64,
}

/// CSV with header `n,a,b`.
pub fn parse_series(text: &str, path: &Path) -> Result<Vec<CoefficientPair>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let input_err = |message: String| CliError::Input {
        path: path.to_path_buf(),
        message,
    };
    let headers = reader.headers().map_err(|e| input_err(e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != ["n", "a", "b"] {
        return Err(input_err(format!(
            "expected header n,a,b, found {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    reader
        .deserialize::<SeriesRecord>()
        .map(|rec| {
            let rec = rec.map_err(|e| input_err(e.to_string()))?;
            Ok(CoefficientPair::new(rec.n, rec.a, rec.b)?)
        })
        .collect()
}

#[derive(Serialize)]
struct SeqRow<'a> {
    k: usize,
    n: &'a str,
}

#[derive(Serialize)]
struct ThetaCsvRow {
    s: usize,
    n_s: String,
    odd: String,
    theta_hi_num: String,
    theta_hi_den: String,
    theta_hi: String,
    two_pow_minus_s: String,
    pass: bool,
}

impl From<ThetaRow> for ThetaCsvRow {
    fn from(r: ThetaRow) -> Self {
        ThetaCsvRow {
            s: r.s,
            n_s: r.n_s,
            odd: r.odd,
            theta_hi_num: r.theta_hi.num,
            theta_hi_den: r.theta_hi.den,
            theta_hi: r.theta_hi.approx,
            two_pow_minus_s: r.two_pow_minus_s.approx,
            pass: r.pass,
        }
    }
}

#[derive(Serialize)]
struct SieveCsvRow {
    level: usize,
    delta: String,
    deleted: String,
    last_deleted: Option<usize>,
    residual_max: Option<String>,
    survivors: usize,
}

#[derive(Serialize)]
struct ResonanceCsvRow {
    s: usize,
    n_s: String,
    odd: String,
    theta_hi: f64,
    certified_bound: f64,
    midpoint_value: f64,
    theta_certified: bool,
}

fn sequence(depth: usize, seed: u64) -> Result<LacunarySequence, CliError> {
    Ok(LacunarySequence::generate(depth, seed)?)
}

/// Runs the configured subcommand and renders its report.
pub fn dispatch(config: &RunConfig) -> Result<String, CliError> {
    config.validate()?;
    let header = Header::for_command(&config.command);
    let digits = config.digits;
    let csv = config.format == OutputFormat::Csv;

    let text = match &config.command {
        Command::GenSeq { depth, seed } => {
            let seq = sequence(*depth, *seed)?;
            let terms = sequence_report(&seq);
            if csv {
                to_csv(terms.iter().enumerate().map(|(i, n)| SeqRow { k: i + 1, n }))
            } else {
                to_json(&header, terms)
            }
        }
        Command::Omega {
            depth,
            seed,
            theta_table: with_theta,
        } => {
            let seq = sequence(*depth, *seed)?;
            let omega = omega_enclosure(&seq)?;
            let (odds, q) = approximants(&seq);
            let table = if *with_theta {
                Some(theta_table(&seq)?)
            } else {
                None
            };
            let report = OmegaReport::new(&seq, &odds, &q, &omega, table.as_deref(), digits);
            if csv {
                to_csv(
                    report
                        .theta_table
                        .unwrap_or_default()
                        .into_iter()
                        .map(ThetaCsvRow::from),
                )
            } else {
                to_json(&header, report)
            }
        }
        Command::Target { mu, nu, depth, seed } => {
            let spec = TargetSpec::new(*mu, *nu)?;
            let seq = sequence(*depth, *seed)?;
            let t = targeted_omega(&seq, &spec)?;
            to_json(&header, TargetReport::new(&t, digits))
        }
        Command::Sieve { input, levels } => {
            let seq = parse_sizes(&read_input(input)?, input)?;
            let rep = sieve(&seq, &Ladder::harmonic(*levels), *levels)?;
            let view = SieveReportView::new(&rep, digits);
            if csv {
                to_csv(view.levels.into_iter().map(|l| {
                    SieveCsvRow {
                        level: l.level,
                        delta: format!("{}/{}", l.delta.num, l.delta.den),
                        deleted: l
                            .deleted
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" "),
                        last_deleted: l.last_deleted,
                        residual_max: l.residual_max.map(|m| format!("{}/{}", m.num, m.den)),
                        survivors: l.survivors,
                    }
                }))
            } else {
                to_json(&header, view)
            }
        }
        Command::Polar { a, b } => to_json(&header, PolarReport::new(*a, *b, &to_polar(*a, *b))),
        Command::Resonance { depth, seed, s_range } => {
            let seq = sequence(*depth, *seed)?;
            let omega = omega_enclosure(&seq)?;
            let range = s_range.unwrap_or(SRange {
                lo: 2,
                hi: cantor_core::omega::max_certified_s(*depth),
            });
            let points = (range.lo..=range.hi)
                .map(|s| resonance_point(&omega, &seq, s))
                .collect::<Result<Vec<_>, _>>()?;
            let report = ResonanceReport::new(&omega, &points, digits);
            if csv {
                to_csv(report.rows.into_iter().map(|r| ResonanceCsvRow {
                    s: r.s,
                    n_s: r.n_s,
                    odd: r.odd,
                    theta_hi: r.theta_hi_f64,
                    certified_bound: r.certified_bound,
                    midpoint_value: r.midpoint_value,
                    theta_certified: r.theta_certified,
                }))
            } else {
                to_json(&header, report)
            }
        }
        Command::DecayCheck {
            series,
            alpha,
            beta,
            grid,
            eps_term,
            eps_rho,
        } => {
            let pairs = parse_series(&read_input(series)?, series)?;
            let rep = decay_check(&pairs, *alpha, *beta, *grid, *eps_term, *eps_rho)?;
            let view = DecayReportView::from(&rep);
            if csv {
                to_csv(view.rows)
            } else {
                to_json(&header, view)
            }
        }
    };
    Ok(text)
}

/// Dispatches, writes the report (or error object) and returns the exit
/// code: 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run(config: &RunConfig) -> u8 {
    let result = dispatch(config).and_then(|text| emit(config, &text));
    match result {
        Ok(()) => 0,
        Err(err) => {
            let text = render_error(config, &err);
            // report the failure where the report would have gone, falling back to stdout
            if emit(config, &text).is_err() {
                print!("{text}");
            }
            eprintln!("cantor: {err}");
            err.exit_code()
        }
    }
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match config.output_path() {
        Some(path) => fs::write(&path, text).map_err(|source| CliError::Output { path, source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("cantor").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn s_range_parses() {
        assert_eq!("2..6".parse::<SRange>().unwrap(), SRange { lo: 2, hi: 6 });
        assert_eq!("2..=6".parse::<SRange>().unwrap(), SRange { lo: 2, hi: 6 });
        assert!("2-6".parse::<SRange>().is_err());
        assert!("a..6".parse::<SRange>().is_err());
    }

    #[test]
    fn relative_out_paths_follow_the_env_dir() {
        let dir = PathBuf::from("/tmp/reports");
        assert_eq!(
            resolve_out(Path::new("a.json"), Some(dir.clone())),
            dir.join("a.json")
        );
        assert_eq!(
            resolve_out(Path::new("/abs/a.json"), Some(dir)),
            PathBuf::from("/abs/a.json")
        );
        assert_eq!(resolve_out(Path::new("a.json"), None), PathBuf::from("a.json"));
    }

    #[test]
    fn validation_catches_usage_errors() {
        for args in [
            &["gen-seq", "--depth", "0", "--seed", "3"][..],
            &["omega", "--depth", "4", "--seed", "0"],
            &["omega", "--depth", "4", "--seed", "3", "--format", "csv"],
            &["polar", "--a", "1", "--b", "2", "--format", "csv"],
            &["resonance", "--depth", "8", "--seed", "3", "--s-range", "5..2"],
            &["gen-seq", "--depth", "3", "--seed", "3", "--digits", "0"],
        ] {
            let err = dispatch(&parse(args)).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{args:?}");
            assert_eq!(err.id(), "usage");
        }
    }

    #[test]
    fn negative_coefficients_parse() {
        let cfg = parse(&["polar", "--a", "-3", "--b", "-4"]);
        assert!(matches!(cfg.command, Command::Polar { a, b } if a == -3.0 && b == -4.0));
    }

    #[test]
    fn sizes_accept_fractions_decimals_and_comments() {
        let p = Path::new("mem");
        let seq = parse_sizes("# header\n1/2\n\n0.25\n 3/4 \n", p).unwrap();
        assert_eq!(seq.len(), 3);
        let err = parse_sizes("1/2\nxyz\n", p).unwrap_err();
        assert_eq!(err.id(), "input");
        assert!(err.to_string().contains("line 2"));
        assert_eq!(
            parse_sizes("1/2\n-1/2\n", p).unwrap_err().id(),
            "non-positive-size"
        );
    }

    #[test]
    fn series_requires_header_and_distinct_valid_rows() {
        let p = Path::new("mem");
        let s = parse_series("n,a,b\n1,0.5,0\n2, 0.25 ,1\n", p).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].a, 0.25);
        assert_eq!(parse_series("x,y,z\n1,2,3\n", p).unwrap_err().id(), "input");
        assert_eq!(
            parse_series("n,a,b\n0,1,1\n", p).unwrap_err().id(),
            "zero-frequency"
        );
        assert_eq!(parse_series("n,a,b\n1,foo,1\n", p).unwrap_err().id(), "input");
    }
}
