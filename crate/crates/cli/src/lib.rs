//! Command-line driver: argument parsing, configuration merging and the
//! pipelines behind `szf spectrum`, `szf eval`, `szf winding` and
//! `szf verify`.

mod complex;

pub use complex::parse_complex;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use szf_core::geodesics::{build_spectrum, load_group, load_spectrum, write_spectrum};
use szf_core::specfun::{big_f, gamma2, li2, x_factor, DEFAULT_GAMMA2_TERMS};
use szf_core::verify::{all_passed, run_checks, Check, VerifyConfig};
use szf_core::zeta::{ContourSpec, OrientationMode, ZetaEvaluator, DEFAULT_MARGIN};
use szf_core::{ComplexPoint, EvalResult, GroupPresentation, LengthSpectrum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

pub const DEFAULT_MAX_WORD_LEN: usize = 10;
const MAX_WORD_LEN_LIMIT: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "szf", version, about = "Selberg zeta-function laboratory")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Group presentation JSON [default: bundled Bolza surface]
    #[arg(long, global = true, env = "SZF_GROUP")]
    group: Option<PathBuf>,
    /// Precomputed spectrum CSV; skips enumeration
    #[arg(long, global = true)]
    spectrum: Option<PathBuf>,
    /// Word-length cutoff for the enumeration [default: 10]
    #[arg(long, global = true)]
    max_word_len: Option<usize>,
    /// Inner product truncation [default: from the minimal norm]
    #[arg(long, global = true)]
    k_cutoff: Option<usize>,
    /// Distance kept from the critical strip [default: 0.05]
    #[arg(long, global = true, allow_negative_numbers = true)]
    margin: Option<f64>,
    #[arg(long, global = true, value_enum)]
    orientation: Option<Orientation>,
    /// Output file, `-` for standard output [default: -]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON file with default values for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads [default: available parallelism]
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Enumerate the length spectrum and write it as CSV
    Spectrum,
    /// Evaluate a function at one or more points
    Eval {
        /// Point as `<a>+<b>i`; repeatable
        #[arg(long = "s", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        #[arg(long, value_enum, default_value_t = Function::Z)]
        function: Function,
    },
    /// Count zeros of Z inside a circle
    Winding {
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        #[arg(long, allow_negative_numbers = true)]
        radius: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Run numerical certificates
    Verify {
        #[arg(value_enum, default_value_t = CheckArg::All)]
        check: CheckArg,
        /// Grid size for the t1p check
        #[arg(long)]
        grid: Option<usize>,
        /// Genus used for the trivial-zero predictions
        #[arg(long)]
        genus: Option<u32>,
        /// Report runtime_ms as 0 for byte-identical output
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Orientation {
    Oriented,
    Unoriented,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Function {
    /// Selberg zeta function
    Z,
    /// Completed function Ξ (product region only)
    Xi,
    /// Functional-equation factor X(s)
    X,
    /// Antiderivative F(s)
    F,
    Li2,
    Gamma2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    All,
    T1p,
    Asymptotic,
    Growth,
    Zeros,
    Involution,
}

/// Values a `--config` file may provide. Flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    group: Option<PathBuf>,
    spectrum: Option<PathBuf>,
    max_word_len: Option<usize>,
    k_cutoff: Option<usize>,
    margin: Option<f64>,
    orientation: Option<Orientation>,
    out: Option<PathBuf>,
    threads: Option<usize>,
    grid: Option<usize>,
    genus: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupSource {
    File(PathBuf),
    Bundled,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Stdout,
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Spectrum,
    Eval {
        points: Vec<ComplexPoint>,
        function: Function,
    },
    Winding {
        contour: ContourSpec,
    },
    Verify {
        checks: Vec<Check>,
        all: bool,
        grid: Option<usize>,
        genus: Option<u32>,
        timing: bool,
    },
}

/// Fully validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub group: GroupSource,
    pub spectrum_path: Option<PathBuf>,
    pub max_word_length: usize,
    pub k_cutoff: Option<usize>,
    pub margin: f64,
    pub orientation: OrientationMode,
    pub output: Output,
    pub threads: Option<usize>,
    pub command: Command,
}

/// A usage error; `Display` lists every violated constraint.
#[derive(Debug)]
pub struct UsageError {
    pub problems: Vec<String>,
    /// Help or version text requested with `--help` / `--version`.
    pub informational: bool,
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.problems.join("\n"))
    }
}

impl std::error::Error for UsageError {}

impl UsageError {
    fn new(problems: Vec<String>) -> Self {
        UsageError {
            problems,
            informational: false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.informational {
            EXIT_OK
        } else {
            EXIT_ERROR
        }
    }
}

fn default_group() -> GroupSource {
    let beside_exe = std::env::current_exe()
        .ok()
        .and_then(|p| p.parent().map(|d| d.join("data").join("bolza.json")));
    match beside_exe {
        Some(p) if p.is_file() => GroupSource::File(p),
        _ => GroupSource::Bundled,
    }
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
        UsageError {
            problems: vec![e.render().to_string().trim_end().to_string()],
            informational,
        }
    })?;

    let mut problems = Vec::new();
    let file = match &cli.common.config {
        None => FileConfig::default(),
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text).unwrap_or_else(|e| {
                problems.push(format!("config {}: {e}", path.display()));
                FileConfig::default()
            }),
            Err(e) => {
                problems.push(format!("config {}: {e}", path.display()));
                FileConfig::default()
            }
        },
    };
    let c = cli.common;

    let group = match c.group.or(file.group) {
        Some(p) => {
            if !p.is_file() {
                problems.push(format!("group file {} does not exist", p.display()));
            }
            GroupSource::File(p)
        }
        None => default_group(),
    };
    let spectrum_path = c.spectrum.or(file.spectrum);
    if let Some(p) = &spectrum_path {
        if !p.is_file() {
            problems.push(format!("spectrum file {} does not exist", p.display()));
        }
    }
    let max_word_length = c.max_word_len.or(file.max_word_len).unwrap_or(DEFAULT_MAX_WORD_LEN);
    if !(1..=MAX_WORD_LEN_LIMIT).contains(&max_word_length) {
        problems.push(format!("--max-word-len must be in 1..={MAX_WORD_LEN_LIMIT}, got {max_word_length}"));
    }
    let k_cutoff = c.k_cutoff.or(file.k_cutoff);
    if k_cutoff == Some(0) {
        problems.push("--k-cutoff must be at least 1".into());
    }
    let margin = c.margin.or(file.margin).unwrap_or(DEFAULT_MARGIN);
    if !(margin > 0.0 && margin.is_finite()) {
        problems.push(format!("--margin must be positive, got {margin}"));
    }
    let orientation = match c.orientation.or(file.orientation) {
        Some(Orientation::Unoriented) => OrientationMode::Unoriented,
        _ => OrientationMode::Oriented,
    };
    let output = match c.out.or(file.out) {
        Some(p) if p.as_os_str() != "-" => {
            let parent = p.parent().filter(|d| !d.as_os_str().is_empty());
            if let Some(d) = parent {
                if !d.is_dir() {
                    problems.push(format!("output directory {} does not exist", d.display()));
                }
            }
            Output::File(p)
        }
        _ => Output::Stdout,
    };
    let threads = c.threads.or(file.threads);
    if threads == Some(0) {
        problems.push("--threads must be at least 1".into());
    }

    let command = match cli.command {
        CliCommand::Spectrum => Command::Spectrum,
        CliCommand::Eval { points, function } => {
            let mut parsed = Vec::new();
            for p in &points {
                match parse_complex(p) {
                    Ok(z) => parsed.push(z),
                    Err(e) => problems.push(e),
                }
            }
            Command::Eval {
                points: parsed,
                function,
            }
        }
        CliCommand::Winding {
            center,
            radius,
            samples,
        } => {
            let center = parse_complex(&center).unwrap_or_else(|e| {
                problems.push(e);
                ComplexPoint::real(0.0)
            });
            match ContourSpec::with_samples(center, radius, samples) {
                Ok(contour) => Command::Winding { contour },
                Err(e) => {
                    problems.push(e.to_string());
                    Command::Spectrum
                }
            }
        }
        CliCommand::Verify {
            check,
            grid,
            genus,
            no_timing,
        } => {
            let grid = grid.or(file.grid);
            if let Some(g) = grid {
                if g < 1000 {
                    problems.push(format!("--grid must be at least 1000, got {g}"));
                }
            }
            let genus = genus.or(file.genus);
            if let Some(g) = genus {
                if g < 2 {
                    problems.push(format!("--genus must be at least 2, got {g}"));
                }
            }
            let (checks, all) = match check {
                CheckArg::All => (Check::ALL.to_vec(), true),
                CheckArg::T1p => (vec![Check::T1p], false),
                CheckArg::Asymptotic => (vec![Check::Asymptotic], false),
                CheckArg::Growth => (vec![Check::Growth], false),
                CheckArg::Zeros => (vec![Check::Zeros], false),
                CheckArg::Involution => (vec![Check::Involution], false),
            };
            Command::Verify {
                checks,
                all,
                grid,
                genus,
                timing: !no_timing,
            }
        }
    };

    if !problems.is_empty() {
        return Err(UsageError::new(problems));
    }
    Ok(RunConfig {
        group,
        spectrum_path,
        max_word_length,
        k_cutoff,
        margin,
        orientation,
        output,
        threads,
        command,
    })
}

/// One line of `szf eval` output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalRecord {
    pub s: String,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub log_modulus: f64,
    pub error_bound: f64,
    /// When set, `error_bound` applies to the logarithm of the value.
    pub log_form: bool,
    pub method: String,
}

impl EvalRecord {
    fn new(s: ComplexPoint, r: &EvalResult) -> Self {
        let finite = |x: f64| Some(x).filter(|v| v.is_finite());
        EvalRecord {
            s: s.to_string(),
            value_re: if r.log_form { None } else { finite(r.value.re) },
            value_im: if r.log_form { None } else { finite(r.value.im) },
            log_modulus: r.log_modulus(),
            error_bound: r.abs_error_bound,
            log_form: r.log_form,
            method: r.method.to_string(),
        }
    }
}

#[derive(Serialize)]
struct WindingRecord<'a> {
    center: String,
    radius: f64,
    #[serde(flatten)]
    report: &'a szf_core::zeta::WindingReport,
}

fn load_group_source(cfg: &RunConfig) -> Result<GroupPresentation> {
    match &cfg.group {
        GroupSource::File(p) => load_group(p).with_context(|| format!("loading group {}", p.display())),
        GroupSource::Bundled => Ok(GroupPresentation::bolza()),
    }
}

fn spectrum_for(cfg: &RunConfig, group: &GroupPresentation) -> Result<LengthSpectrum> {
    match &cfg.spectrum_path {
        Some(p) => load_spectrum(p).with_context(|| format!("loading spectrum {}", p.display())),
        None => {
            log::info!("enumerating {} up to word length {}", group.name, cfg.max_word_length);
            Ok(build_spectrum(group, cfg.max_word_length)?)
        }
    }
}

fn evaluator_for(cfg: &RunConfig) -> Result<ZetaEvaluator> {
    let group = load_group_source(cfg)?;
    let spectrum = spectrum_for(cfg, &group)?;
    let mut z = ZetaEvaluator::new(spectrum, group.genus)?
        .with_margin(cfg.margin)?
        .with_orientation(cfg.orientation);
    if let Some(k) = cfg.k_cutoff {
        z = z.with_k_cutoff(k)?;
    }
    Ok(z)
}

fn eval_one(z: Option<&ZetaEvaluator>, genus: u32, f: Function, s: ComplexPoint) -> Result<EvalResult> {
    let r = match f {
        Function::Z => z.expect("evaluator").z_anywhere(s)?,
        Function::Xi => z.expect("evaluator").xi_completed(s)?,
        Function::X => x_factor(s, genus)?,
        Function::F => big_f(s, genus)?,
        Function::Li2 => li2(Complex64::new(s.sigma, s.t))?,
        Function::Gamma2 => gamma2(s, DEFAULT_GAMMA2_TERMS)?,
    };
    Ok(r)
}

fn open_output(output: &Output) -> Result<Box<dyn Write>> {
    Ok(match output {
        Output::Stdout => Box::new(io::stdout().lock()),
        Output::File(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
    })
}

fn install_threads(threads: Option<usize>) {
    let Some(n) = threads else { return };
    #[cfg(feature = "parallel")]
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
        log::warn!("could not size the thread pool: {e}");
    }
    #[cfg(not(feature = "parallel"))]
    if n > 1 {
        log::warn!("built without the parallel feature; --threads {n} ignored");
    }
}

/// Runs the configured pipeline, writing data to `out`. Returns the exit
/// code for a completed run; compute failures are errors.
pub fn run_to(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match &cfg.command {
        Command::Spectrum => {
            let group = load_group_source(cfg)?;
            let spectrum = spectrum_for(cfg, &group)?;
            write_spectrum(&spectrum, &mut *out)?;
        }
        Command::Eval { points, function } => {
            let needs_z = matches!(function, Function::Z | Function::Xi);
            let z = if needs_z { Some(evaluator_for(cfg)?) } else { None };
            let genus = match &z {
                Some(z) => z.genus(),
                None => load_group_source(cfg)?.genus,
            };
            for &s in points {
                let r = eval_one(z.as_ref(), genus, *function, s).with_context(|| format!("evaluating at {s}"))?;
                serde_json::to_writer(&mut *out, &EvalRecord::new(s, &r))?;
                writeln!(out)?;
            }
        }
        Command::Winding { contour } => {
            let z = evaluator_for(cfg)?;
            let report = z.winding_number(contour)?;
            let rec = WindingRecord {
                center: contour.center.to_string(),
                radius: contour.radius,
                report: &report,
            };
            serde_json::to_writer_pretty(&mut *out, &rec)?;
            writeln!(out)?;
        }
        Command::Verify {
            checks,
            all,
            grid,
            genus,
            timing,
        } => {
            let z = evaluator_for(cfg)?;
            let mut vc = VerifyConfig {
                genus_override: *genus,
                record_timing: *timing,
                ..VerifyConfig::default()
            };
            if let Some(g) = grid {
                vc.t1p_grid = *g;
            }
            let reports = run_checks(checks, &z, &vc)?;
            for r in &reports {
                log::info!("{}: {}", r.check_name, if r.passed { "pass" } else { "FAIL" });
            }
            if *all {
                serde_json::to_writer_pretty(&mut *out, &reports)?;
            } else {
                serde_json::to_writer_pretty(&mut *out, &reports[0])?;
            }
            writeln!(out)?;
            out.flush()?;
            return Ok(if all_passed(&reports) { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

/// Runs the configured pipeline and maps every outcome to an exit code.
/// Diagnostics go to standard error.
pub fn run(cfg: &RunConfig) -> i32 {
    install_threads(cfg.threads);
    let result = open_output(&cfg.output).and_then(|mut out| run_to(cfg, &mut *out));
    match result {
        Ok(code) => {
            if code == EXIT_VERIFY_FAILED {
                eprintln!("verification failed");
            }
            code
        }
        Err(e) if is_broken_pipe(&e) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Output::File(p) = &cfg.output {
                let _ = remove_partial(p);
            }
            EXIT_ERROR
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>()
            .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<serde_json::Error>()
                .is_some_and(|j| j.io_error_kind() == Some(io::ErrorKind::BrokenPipe))
    })
}

fn remove_partial(p: &Path) -> io::Result<()> {
    if p.is_file() && std::fs::metadata(p)?.len() == 0 {
        std::fs::remove_file(p)?;
    }
    Ok(())
}
