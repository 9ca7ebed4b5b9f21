//! Output emitters: fixed-header CSV, JSON mirroring the CSV fields, and
//! 6-decimal human tables. CSV floats carry 17 significant digits so a
//! fixed seed reproduces the file byte for byte.

use std::io::Write;

use entmono_core::monogamy::CounterexampleRow;
use serde::Serialize;

use crate::rational::sigma_row_fractions;
use crate::{CliError, CommonOpts, OutputFormat};

/// Sweep/reproduce-paper CSV header. Field order is part of the interface.
pub const ROW_HEADER: &str = "gamma,alpha,F_1_23,F_13,f_1_23,f_13,C_13,fef_violated,fid_violated,strictness_proxy,F_1_23_exact,F_13_exact,f_1_23_exact,f_13_exact,C_13_exact,error";

/// Full precision for CSV floats: 17 significant digits.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

/// One emitted table row: either a computed counterexample row or a
/// per-row failure with its message in the error column.
#[derive(Debug, Serialize)]
pub struct SweepRecord {
    pub gamma: f64,
    pub alpha: Option<f64>,
    #[serde(rename = "F_1_23")]
    pub fef_1_23: Option<f64>,
    #[serde(rename = "F_13")]
    pub fef_13: Option<f64>,
    #[serde(rename = "f_1_23")]
    pub fid_1_23: Option<f64>,
    #[serde(rename = "f_13")]
    pub fid_13: Option<f64>,
    #[serde(rename = "C_13")]
    pub c_13: Option<f64>,
    pub fef_violated: Option<bool>,
    pub fid_violated: Option<bool>,
    pub strictness_proxy: Option<bool>,
    #[serde(rename = "F_1_23_exact")]
    pub fef_1_23_exact: String,
    #[serde(rename = "F_13_exact")]
    pub fef_13_exact: String,
    #[serde(rename = "f_1_23_exact")]
    pub fid_1_23_exact: String,
    #[serde(rename = "f_13_exact")]
    pub fid_13_exact: String,
    #[serde(rename = "C_13_exact")]
    pub c_13_exact: String,
    pub error: String,
}

impl SweepRecord {
    pub fn from_result(gamma: f64, row: &Result<CounterexampleRow, entmono_core::Error>) -> Self {
        let [f123x, f13x, fid123x, fid13x, c13x] = sigma_row_fractions(gamma);
        match row {
            Ok(r) => SweepRecord {
                gamma: r.gamma,
                alpha: Some(r.alpha),
                fef_1_23: Some(r.fef_1_23),
                fef_13: Some(r.fef_13),
                fid_1_23: Some(r.fid_1_23),
                fid_13: Some(r.fid_13),
                c_13: Some(r.c_13),
                fef_violated: Some(r.fef_violated),
                fid_violated: Some(r.fid_violated),
                strictness_proxy: Some(r.strictness_proxy),
                fef_1_23_exact: f123x,
                fef_13_exact: f13x,
                fid_1_23_exact: fid123x,
                fid_13_exact: fid13x,
                c_13_exact: c13x,
                error: String::new(),
            },
            Err(e) => SweepRecord {
                gamma,
                alpha: None,
                fef_1_23: None,
                fef_13: None,
                fid_1_23: None,
                fid_13: None,
                c_13: None,
                fef_violated: None,
                fid_violated: None,
                strictness_proxy: None,
                fef_1_23_exact: f123x,
                fef_13_exact: f13x,
                fid_1_23_exact: fid123x,
                fid_13_exact: fid13x,
                c_13_exact: c13x,
                error: e.to_string(),
            },
        }
    }

    fn csv_line(&self) -> String {
        let opt = |x: &Option<f64>| x.map(full).unwrap_or_default();
        let flag = |x: &Option<bool>| x.map(|b| b.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            full(self.gamma),
            opt(&self.alpha),
            opt(&self.fef_1_23),
            opt(&self.fef_13),
            opt(&self.fid_1_23),
            opt(&self.fid_13),
            opt(&self.c_13),
            flag(&self.fef_violated),
            flag(&self.fid_violated),
            flag(&self.strictness_proxy),
            self.fef_1_23_exact,
            self.fef_13_exact,
            self.fid_1_23_exact,
            self.fid_13_exact,
            self.c_13_exact,
            escape_csv(&self.error),
        )
    }

    fn table_line(&self) -> String {
        let num = |x: &Option<f64>| x.map(|v| format!("{v:9.6}")).unwrap_or_else(|| format!("{:>9}", "-"));
        let flag = |x: &Option<bool>| x.map(|b| format!("{b:>5}")).unwrap_or_else(|| format!("{:>5}", "-"));
        let mut line = format!(
            "{:8.6}  {}  {}  {}  {}  {}  {}  {}  {}  {}",
            self.gamma,
            num(&self.alpha),
            num(&self.fef_1_23),
            num(&self.fef_13),
            num(&self.fid_1_23),
            num(&self.fid_13),
            num(&self.c_13),
            flag(&self.fef_violated),
            flag(&self.fid_violated),
            flag(&self.strictness_proxy),
        );
        if !self.error.is_empty() {
            line.push_str("  ! ");
            line.push_str(&self.error);
        }
        line
    }
}

fn escape_csv(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn sweep_table_header() -> String {
    format!(
        "{:>8}  {:>9}  {:>9}  {:>9}  {:>9}  {:>9}  {:>9}  {:>5}  {:>5}  {:>5}",
        "gamma", "alpha", "F_1(23)", "F_13", "f_1(23)", "f_13", "C_13", "Fviol", "fviol", "C>2F-1"
    )
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(ROW_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

pub fn sweep_json(records: &[SweepRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

pub fn sweep_table(records: &[SweepRecord]) -> String {
    let mut out = sweep_table_header();
    out.push('\n');
    for r in records {
        out.push_str(&r.table_line());
        out.push('\n');
    }
    out
}

/// Emit machine output per the common flags: to `--out` when given (the
/// human table stays on stdout), to stdout when `--format` alone is given,
/// otherwise the human table goes to stdout.
pub fn emit(
    common: &CommonOpts,
    human_table: &str,
    csv: impl FnOnce() -> String,
    json: impl FnOnce() -> String,
) -> Result<(), CliError> {
    let format = common.format.unwrap_or(OutputFormat::Csv);
    let machine = || match format {
        OutputFormat::Csv => csv(),
        OutputFormat::Json => json(),
    };
    match (&common.out, common.format) {
        (Some(path), _) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| CliError::data(format!("cannot create {}: {e}", path.display())))?;
            f.write_all(machine().as_bytes())?;
            print!("{human_table}");
        }
        (None, Some(_)) => {
            print!("{}", machine());
        }
        (None, None) => {
            print!("{human_table}");
        }
    }
    Ok(())
}

/// Generic single-record emitter for the check/fef/telesim summaries.
pub fn emit_named(
    common: &CommonOpts,
    human_table: &str,
    header: &str,
    csv_rows: &[String],
    json_value: &impl Serialize,
) -> Result<(), CliError> {
    let csv = || {
        let mut out = String::from(header);
        out.push('\n');
        for row in csv_rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    };
    let json = || {
        let mut s = serde_json::to_string_pretty(json_value).expect("summary serializes");
        s.push('\n');
        s
    };
    emit(common, human_table, csv, json)
}
