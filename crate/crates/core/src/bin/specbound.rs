use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use specbound::harness::{self, config, Command, Config, Report};

#[derive(Parser)]
#[command(name = "specbound", version, about = "Verify spectral-distance bounds built from singular values")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the inequality suites over random pairs.
    Verify(Opts),
    /// Compare bounds on the weighted-shift family.
    Shift(Opts),
    /// Fit small-t asymptotics of H for the closed-form families.
    Asymptote(Opts),
    /// Schmidt truncation study on an exponential-class instance.
    Truncation(Opts),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Opts {
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Inclusive range such as `2..10`.
    #[arg(long, value_name = "a..b")]
    dims: Option<String>,
    /// Write `<command>.<format>` into this directory instead of stdout.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    threads: Option<usize>,
    /// Halve every bound; the run is expected to fail.
    #[arg(long)]
    self_test: bool,
}

fn load(opts: &Opts) -> Result<Config, config::ConfigError> {
    let mut cfg = match &opts.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    if let Some(s) = opts.seed {
        cfg.seed = s;
    }
    if let Some(t) = opts.trials {
        cfg.trials = t;
    }
    if let Some(d) = &opts.dims {
        cfg.dims = config::parse_dims(d)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(report: &Report, opts: &Opts) -> io::Result<()> {
    let write = |w: &mut dyn Write| match opts.format {
        Format::Csv => report.write_csv(w),
        Format::Json => report.write_json(w),
    };
    match &opts.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let ext = if opts.format == Format::Csv { "csv" } else { "json" };
            let mut file = io::BufWriter::new(fs::File::create(dir.join(format!("{}.{ext}", report.command)))?);
            write(&mut file)?;
            file.flush()
        }
        None => {
            let mut out = io::BufWriter::new(io::stdout().lock());
            write(&mut out)?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, opts) = match cli.command {
        Cmd::Verify(o) => (Command::Verify, o),
        Cmd::Shift(o) => (Command::Shift, o),
        Cmd::Asymptote(o) => (Command::Asymptote, o),
        Cmd::Truncation(o) => (Command::Truncation, o),
    };
    if opts.threads == Some(0) {
        eprintln!("specbound: --threads must be positive");
        return ExitCode::from(2);
    }
    let cfg = match load(&opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("specbound: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match harness::run(cmd, &cfg, opts.threads, opts.self_test) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("specbound: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&report, &opts) {
        eprintln!("specbound: cannot write report: {e}");
        return ExitCode::from(2);
    }
    let c = report.counts();
    eprintln!("{}: {} pass, {} fail, {} warn", report.command, c.pass, c.fail, c.warn);
    ExitCode::from(report.exit_code() as u8)
}
