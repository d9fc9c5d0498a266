//! Report rows and their CSV / JSON serialisation.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Mismatch against a quoted asymptotic value; never affects the exit code.
    Warn,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::Warn => "WARN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub suite: String,
    pub case_id: String,
    pub dim: usize,
    pub seed: u64,
    pub param: f64,
    pub measured: f64,
    pub bound: f64,
    pub slack: f64,
    pub status: Status,
}

pub const CSV_HEADER: &str = "suite,case_id,dim,seed,param,measured,bound,slack,status";

/// 17 significant digits, so values round-trip exactly.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

impl Row {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.suite,
            self.case_id,
            self.dim,
            self.seed,
            fmt_float(self.param),
            fmt_float(self.measured),
            fmt_float(self.bound),
            fmt_float(self.slack),
            self.status
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub warn: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    /// Named scalars (fitted slopes, reference values, timings excluded).
    pub summary: BTreeMap<String, f64>,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), summary: BTreeMap::new(), rows: Vec::new() }
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for r in &self.rows {
            match r.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Warn => c.warn += 1,
            }
        }
        c
    }

    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(|r| r.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    pub fn rows_of<'a>(&'a self, suite: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.suite == suite)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(w, "{}", r.csv_line())?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }

    pub fn write_json<W: Write>(&self, w: W) -> io::Result<()> {
        #[derive(Serialize)]
        struct Doc<'a> {
            command: &'a str,
            counts: Counts,
            summary: &'a BTreeMap<String, f64>,
            rows: &'a [Row],
        }
        let doc = Doc { command: &self.command, counts: self.counts(), summary: &self.summary, rows: &self.rows };
        serde_json::to_writer_pretty(w, &doc).map_err(io::Error::other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(status: Status) -> Row {
        Row {
            suite: "s".into(),
            case_id: "c".into(),
            dim: 2,
            seed: 1,
            param: 0.1,
            measured: 1.0 / 3.0,
            bound: f64::INFINITY,
            slack: f64::NAN,
            status,
        }
    }

    #[test]
    fn floats_round_trip() {
        for x in [1.0 / 3.0, 1e-300, -2.5e17, 0.1 + 0.2] {
            assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_float(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn csv_layout() {
        let mut r = Report::new("verify");
        r.rows.push(row(Status::Pass));
        let csv = r.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), 9);
        assert_eq!(fields[5], "3.3333333333333331e-1");
        assert_eq!((fields[6], fields[7], fields[8]), ("inf", "NaN", "PASS"));
    }

    #[test]
    fn exit_code_ignores_warnings() {
        let mut r = Report::new("x");
        assert_eq!(r.exit_code(), 0);
        r.rows.push(row(Status::Warn));
        assert_eq!(r.exit_code(), 0);
        r.rows.push(row(Status::Fail));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.counts(), Counts { pass: 0, fail: 1, warn: 1 });
    }

    #[test]
    fn json_has_rows_and_counts() {
        let mut r = Report::new("x");
        r.rows.push(row(Status::Pass));
        r.summary.insert("slope".into(), 0.5);
        let mut buf = Vec::new();
        r.write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["counts"]["pass"], 1);
        assert_eq!(v["rows"][0]["status"], "PASS");
        assert_eq!(v["summary"]["slope"], 0.5);
    }
}
