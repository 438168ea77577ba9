//! The `lrgb` command line.
//!
//! Exit codes: `0` success, `1` runtime failure (IO, decoding, degenerate
//! windows), `2` usage error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lrgb_core::enhance::{enhance, window_stats};
use lrgb_core::partition::{crisp_membership, membership_field};
use lrgb_core::{EnhanceConfig, FuzzyPartition, Mode, RasterImage, SupportRect, UnitValue, WindowId};

use crate::imageio::{load_image, save_image};
use crate::report::{to_json, ImageSummary, PartitionReport, RunReport, StatsReport, WindowStatsReport};

#[derive(Debug, Parser)]
#[command(
    name = "lrgb",
    version,
    about = "Logarithmic lrgb image enhancement over fuzzy partitions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enhance an image.
    Enhance(EnhanceArgs),
    /// Print global and per-window logarithmic statistics as JSON.
    Stats(StatsArgs),
    /// Export one membership plane as an 8-bit grayscale image.
    Membership(MembershipArgs),
}

#[derive(Debug, Args)]
pub struct EnhanceArgs {
    /// global-mono, global-color2, global-color3, fuzzy-mono, fuzzy-color, crisp-color or histeq.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Mode,
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: PathBuf,
    /// Window grid as COLSxROWS; 3x3 means Bernstein degrees m = n = 2.
    #[arg(long, default_value = "3x3", value_parser = parse_grid)]
    pub windows: (usize, usize),
    /// Partition tuning exponent.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Upper bound on the luminosity and chroma gains.
    #[arg(long, default_value_t = 10.0)]
    pub gain_cap: f64,
    /// Floor applied to the window deviations before dividing.
    #[arg(long, default_value_t = 1e-8)]
    pub variance_floor: f64,
    /// Write a JSON run report here.
    #[arg(long)]
    pub metrics: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, default_value = "1x1", value_parser = parse_grid)]
    pub windows: (usize, usize),
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Use crisp tiles instead of fuzzy windows.
    #[arg(long)]
    pub crisp: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MembershipArgs {
    #[arg(long, default_value = "3x3", value_parser = parse_grid)]
    pub windows: (usize, usize),
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Output size as WIDTHxHEIGHT.
    #[arg(long, default_value = "256x256", value_parser = parse_grid)]
    pub size: (usize, usize),
    /// Window index as I,J (I along x).
    #[arg(long, value_parser = parse_window)]
    pub window: WindowId,
    #[arg(long)]
    pub crisp: bool,
    #[arg(short, long)]
    pub output: PathBuf,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Mode::ALL.iter().map(|m| m.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AxB, got {s:?}"))?;
    let parse = |t: &str| match t.trim().parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got {t:?}")),
    };
    Ok((parse(a)?, parse(b)?))
}

fn parse_window(s: &str) -> Result<WindowId, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected I,J, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad window index {t:?}"));
    Ok(WindowId::new(parse(a)?, parse(b)?))
}

/// A failure with its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("lrgb: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Enhance(a) => cmd_enhance(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Membership(a) => cmd_membership(a),
    }
}

pub fn cmd_enhance(args: &EnhanceArgs) -> Result<(), CliError> {
    let cfg = EnhanceConfig {
        mode: args.mode,
        windows_x: args.windows.0,
        windows_y: args.windows.1,
        gamma: args.gamma,
        gain_cap: args.gain_cap,
        variance_floor: args.variance_floor,
        ..EnhanceConfig::default()
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let img = load_image(&args.input).map_err(failure)?;
    let wants_color = !cfg.mode.is_mono() && cfg.mode != Mode::HistEq;
    if cfg.mode.is_mono() && !img.is_mono() || wants_color && img.is_mono() {
        return Err(CliError::Usage(format!(
            "mode {} cannot run on a {}-plane image",
            cfg.mode,
            img.channels()
        )));
    }
    let start = Instant::now();
    let result = enhance(&img, &cfg).map_err(failure)?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    save_image(&result.image, &args.output).map_err(failure)?;
    if let Some(path) = &args.metrics {
        let report = RunReport::new(&cfg, &img, &result, elapsed_ms).map_err(failure)?;
        write_text(path, &to_json(&report).map_err(failure)?)?;
    }
    if result.capped() {
        eprintln!("lrgb: note: gain cap {} engaged in at least one window", cfg.gain_cap);
    }
    Ok(())
}

pub fn cmd_stats(args: &StatsArgs) -> Result<(), CliError> {
    let img = load_image(&args.input).map_err(failure)?;
    let cfg = EnhanceConfig {
        windows_x: args.windows.0,
        windows_y: args.windows.1,
        gamma: args.gamma,
        ..EnhanceConfig::default()
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let part = cfg.partition(&img).map_err(failure)?;
    let field = if args.crisp {
        crisp_membership(&part, img.width(), img.height())
    } else {
        membership_field(&part, img.width(), img.height())
    }
    .map_err(failure)?;
    let windows = window_stats(&img, &field).map_err(failure)?;
    let report = StatsReport {
        schema_version: crate::report::SCHEMA_VERSION,
        input: ImageSummary::of(&img).map_err(failure)?,
        partition: PartitionReport::new(if args.crisp { "crisp" } else { "fuzzy" }, &cfg),
        windows: windows.iter().map(|(id, st)| WindowStatsReport::new(*id, st)).collect(),
    };
    let json = to_json(&report).map_err(failure)?;
    match &args.json {
        Some(path) => write_text(path, &json),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

pub fn cmd_membership(args: &MembershipArgs) -> Result<(), CliError> {
    let (width, height) = args.size;
    let part = FuzzyPartition::with_windows(
        args.windows.0,
        args.windows.1,
        args.gamma,
        SupportRect::for_image(width, height),
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    part.check(args.window).map_err(|e| CliError::Usage(e.to_string()))?;
    let field = if args.crisp {
        crisp_membership(&part, width, height)
    } else {
        membership_field(&part, width, height)
    }
    .map_err(failure)?;
    let plane = field.plane(args.window).map_err(failure)?;
    let img = RasterImage::mono(width, height, plane.into_iter().map(UnitValue::new).collect()).map_err(failure)?;
    save_image(&img, &args.output).map_err(failure)
}
