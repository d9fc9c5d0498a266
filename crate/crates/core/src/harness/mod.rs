//! Verification suites and numerical experiments behind the `specbound` CLI.

pub mod asymptote;
pub mod config;
pub mod report;
pub mod shift;
pub mod truncation;
pub mod verify;

pub use config::{Config, ConfigError};
pub use report::{Report, Row, Status};

/// Least-squares `(slope, intercept)` of `ys` against `xs`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Shift,
    Asymptote,
    Truncation,
}

/// Run one command. `threads` only affects `verify`.
pub fn run(cmd: Command, cfg: &Config, threads: Option<usize>, self_test: bool) -> crate::Result<Report> {
    match cmd {
        Command::Verify => verify::run(cfg, threads, self_test),
        Command::Shift => shift::run(cfg),
        Command::Asymptote => asymptote::run(cfg),
        Command::Truncation => truncation::run(cfg),
    }
}
