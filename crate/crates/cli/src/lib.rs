//! Batch driver: runs the verification suites and emits index-pairing tables.
//!
//! Reports are built in memory and rendered deterministically, so identical
//! configurations give byte-identical output.

use std::fmt;

use clap::ValueEnum;
use podles_core::bundles::{
    build_e, build_g, build_p1_matrix, build_q, verify_bundle_identities, BundleProjection,
};
use podles_core::index::{fredholm_index_direct, pair_eps, pair_rho, PairingReport};
use podles_core::podles::verify_operator_relations;
use podles_core::suq2::{
    verify_embedded_relations, verify_norm_sums, verify_weight_identities, IdentityCheck,
};
use podles_core::{Params, ParsedRational};
use serde::Serialize;

/// Smallest accepted truncation dimension.
pub const MIN_TRUNC: usize = 16;
/// Significant digits kept in every emitted float.
pub const SIG_DIGITS: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] podles_core::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Usage(_) => Status::Usage,
            _ => Status::Failed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Usage,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Usage => 2,
        }
    }
}

/// `Ok` iff every item passed.
pub fn aggregate(passes: impl IntoIterator<Item = bool>) -> Status {
    if passes.into_iter().all(|p| p) {
        Status::Ok
    } else {
        Status::Failed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Symbolic,
    Operator,
    Bundles,
    Index,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Symbolic,
        Suite::Operator,
        Suite::Bundles,
        Suite::Index,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(
            self.to_possible_value()
                .expect("no skipped variants")
                .get_name(),
        )
    }
}

/// A decimal flag value replaced by a rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conversion {
    pub flag: &'static str,
    pub input: String,
    pub value: String,
}

impl fmt::Display for Conversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "--{} {} read as {}", self.flag, self.input, self.value)
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: Params,
    pub n_max: i64,
    pub trunc: usize,
    pub tol: f64,
    pub format: Format,
    /// Sorted and deduplicated.
    pub suites: Vec<Suite>,
    pub conversions: Vec<Conversion>,
}

impl RunConfig {
    pub fn new(
        q: &str,
        s: &str,
        n_max: i64,
        trunc: usize,
        tol: f64,
        format: Format,
        suites: &[Suite],
    ) -> Result<Self, CliError> {
        let mut conversions = Vec::new();
        let mut read = |flag: &'static str, text: &str| -> Result<_, CliError> {
            let parsed: ParsedRational = text
                .parse()
                .map_err(|e| CliError::Usage(format!("--{flag}: {e}")))?;
            if let Some(input) = parsed.converted_from {
                conversions.push(Conversion {
                    flag,
                    input,
                    value: parsed.value.to_string(),
                });
            }
            Ok(parsed.value)
        };
        let (q, s) = (read("q", q)?, read("s", s)?);
        let params = Params::new(q, s).map_err(|e| CliError::Usage(e.to_string()))?;
        if n_max < 0 {
            return Err(CliError::Usage(format!(
                "--n-max {n_max} must be non-negative"
            )));
        }
        if trunc < MIN_TRUNC {
            return Err(CliError::Usage(format!(
                "--trunc {trunc} must be at least {MIN_TRUNC}"
            )));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Usage(format!("--tol {tol} must be positive")));
        }
        let mut suites = if suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            suites.to_vec()
        };
        suites.sort();
        suites.dedup();
        Ok(Self {
            params,
            n_max,
            trunc,
            tol,
            format,
            suites,
            conversions,
        })
    }
}

/// Rounds to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rendered report and the exit status it implies.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub output: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyLine {
    pub suite: Suite,
    #[serde(rename = "N")]
    pub n: Option<i64>,
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

impl VerifyLine {
    fn exact(suite: Suite, n: Option<i64>, c: IdentityCheck) -> Self {
        Self {
            suite,
            n,
            name: c.name,
            residual: if c.pass { 0.0 } else { 1.0 },
            pass: c.pass,
        }
    }
}

fn symbolic_lines(cfg: &RunConfig) -> Result<Vec<VerifyLine>, CliError> {
    let p = &cfg.params;
    let mut out = Vec::new();
    for n in 0..=cfg.n_max {
        let r = verify_weight_identities(n, p)?;
        out.extend(
            r.identities
                .into_iter()
                .map(|c| VerifyLine::exact(Suite::Symbolic, Some(n), c)),
        );
        if n >= 1 {
            out.extend(
                verify_norm_sums(n, p)?
                    .into_iter()
                    .map(|c| VerifyLine::exact(Suite::Symbolic, Some(n), c)),
            );
        }
    }
    out.extend(
        verify_embedded_relations(p)
            .into_iter()
            .map(|c| VerifyLine::exact(Suite::Symbolic, None, c)),
    );
    Ok(out)
}

fn index_lines(cfg: &RunConfig) -> Result<Vec<VerifyLine>, CliError> {
    let mut out = Vec::new();
    for row in pair_rows(cfg)? {
        out.push(VerifyLine {
            suite: Suite::Index,
            n: Some(row.n),
            name: format!("<rho, {}> = N and <eps, {}> = 1", row.form, row.form),
            residual: (row.pair_rho.value - row.n as f64)
                .abs()
                .max((row.pair_eps.value - 1.0).abs()),
            pass: row.pass(),
        });
    }
    let mut cases: Vec<_> = (-cfg.n_max..=cfg.n_max)
        .map(|n| build_e(n, &cfg.params))
        .collect();
    cases.push(build_g(&cfg.params));
    for b in &cases {
        let direct = fredholm_index_direct(&b.mat, cfg.trunc)?;
        let traced = pair_rho(&b.mat, cfg.tol)?.rounded;
        out.push(VerifyLine {
            suite: Suite::Index,
            n: Some(b.n),
            name: format!(
                "Fredholm index of {} at M = {} equals the trace pairing",
                b.form.as_str(),
                cfg.trunc
            ),
            residual: (direct - traced).abs() as f64,
            pass: direct == traced,
        });
    }
    Ok(out)
}

/// Runs the selected suites in a fixed order.
pub fn verify_lines(cfg: &RunConfig) -> Result<Vec<VerifyLine>, CliError> {
    let mut out = Vec::new();
    for suite in &cfg.suites {
        match suite {
            Suite::Symbolic => out.extend(symbolic_lines(cfg)?),
            Suite::Operator => {
                let r = verify_operator_relations(&cfg.params)?;
                out.extend(r.checks.into_iter().map(|c| VerifyLine {
                    suite: Suite::Operator,
                    n: None,
                    name: c.name,
                    residual: c.residual,
                    pass: c.pass,
                }));
            }
            Suite::Bundles => {
                for n in -cfg.n_max..=cfg.n_max {
                    let r = verify_bundle_identities(n, &cfg.params)?;
                    out.extend(r.checks.into_iter().map(|c| VerifyLine {
                        suite: Suite::Bundles,
                        n: Some(n),
                        name: c.name,
                        residual: c.residual,
                        pass: c.pass,
                    }));
                }
            }
            Suite::Index => out.extend(index_lines(cfg)?),
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Header<'a> {
    q: String,
    s: String,
    conversions: &'a [Conversion],
}

fn header(cfg: &RunConfig) -> Header<'_> {
    Header {
        q: cfg.params.q().to_string(),
        s: cfg.params.s().to_string(),
        conversions: &cfg.conversions,
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_text(
    write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<(), CliError>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Renders verification lines; the status fails iff some line fails.
pub fn render_verify(cfg: &RunConfig, lines: &[VerifyLine]) -> Result<Outcome, CliError> {
    let status = aggregate(lines.iter().map(|l| l.pass));
    let lines: Vec<_> = lines
        .iter()
        .map(|l| VerifyLine {
            residual: round_sig(l.residual),
            ..l.clone()
        })
        .collect();
    let output = match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                #[serde(flatten)]
                header: Header<'a>,
                suites: &'a [Suite],
                pass: bool,
                checks: &'a [VerifyLine],
            }
            to_json(&Doc {
                header: header(cfg),
                suites: &cfg.suites,
                pass: status == Status::Ok,
                checks: &lines,
            })
        }
        Format::Csv => csv_text(|w| {
            w.write_record(["suite", "N", "name", "residual", "pass"])?;
            for l in &lines {
                let n = l.n.map(|n| n.to_string()).unwrap_or_default();
                w.write_record([
                    l.suite.to_string(),
                    n,
                    l.name.clone(),
                    l.residual.to_string(),
                    l.pass.to_string(),
                ])?;
            }
            Ok(())
        })?,
    };
    Ok(Outcome { status, output })
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    render_verify(cfg, &verify_lines(cfg)?)
}

/// One pairing, floats rounded for emission.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PairingCell {
    pub value: f64,
    pub tail_bound: f64,
    pub rounded: i64,
    pub gap: f64,
    pub certified: bool,
}

impl From<&PairingReport> for PairingCell {
    fn from(r: &PairingReport) -> Self {
        Self {
            value: round_sig(r.value),
            tail_bound: round_sig(r.tail_bound),
            rounded: r.rounded,
            gap: round_sig(r.gap),
            certified: r.certified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairRow {
    #[serde(rename = "N")]
    pub n: i64,
    pub form: &'static str,
    pub q: String,
    pub s: String,
    pub pair_rho: PairingCell,
    pub pair_eps: PairingCell,
    /// Both pairings are certified.
    pub certified: bool,
}

impl PairRow {
    pub fn new(p: &BundleProjection, rho: &PairingReport, eps: &PairingReport) -> Self {
        Self {
            n: p.n,
            form: p.form.as_str(),
            q: p.params().q().to_string(),
            s: p.params().s().to_string(),
            pair_rho: rho.into(),
            pair_eps: eps.into(),
            certified: rho.certified && eps.certified,
        }
    }

    /// Certified, with `ρ` pairing `N` and `ε` pairing `1`.
    pub fn pass(&self) -> bool {
        self.certified && self.pair_rho.rounded == self.n && self.pair_eps.rounded == 1
    }
}

/// Rows for `N = −n_max..n_max`: `E_N`, then `Q_N` for `N ≠ 0`, then `P₁` at `N = 1`.
pub fn pair_rows(cfg: &RunConfig) -> Result<Vec<PairRow>, CliError> {
    let p = &cfg.params;
    let mut rows = Vec::new();
    for n in -cfg.n_max..=cfg.n_max {
        let mut projections = vec![build_e(n, p)];
        if n != 0 {
            projections.push(build_q(n, p)?);
        }
        if n == 1 {
            projections.push(build_p1_matrix(1, p)?);
        }
        for b in &projections {
            rows.push(PairRow::new(
                b,
                &pair_rho(&b.mat, cfg.tol)?,
                &pair_eps(&b.mat)?,
            ));
        }
    }
    Ok(rows)
}

pub const PAIR_CSV_HEADER: [&str; 8] = [
    "N",
    "form",
    "q",
    "s",
    "pair_rho",
    "pair_rho_tail",
    "pair_eps",
    "certified",
];

/// Renders pairing rows; rows failing [`PairRow::pass`] are flagged and fail the status.
pub fn render_pair(cfg: &RunConfig, rows: &[PairRow]) -> Result<Outcome, CliError> {
    let status = aggregate(rows.iter().map(PairRow::pass));
    let output = match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                #[serde(flatten)]
                row: &'a PairRow,
                flagged: bool,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                #[serde(flatten)]
                header: Header<'a>,
                pass: bool,
                rows: Vec<Row<'a>>,
            }
            let rows = rows
                .iter()
                .map(|row| Row {
                    row,
                    flagged: !row.pass(),
                })
                .collect();
            to_json(&Doc {
                header: header(cfg),
                pass: status == Status::Ok,
                rows,
            })
        }
        Format::Csv => csv_text(|w| {
            w.write_record(PAIR_CSV_HEADER)?;
            for r in rows {
                w.write_record([
                    r.n.to_string(),
                    r.form.to_string(),
                    r.q.clone(),
                    r.s.clone(),
                    r.pair_rho.value.to_string(),
                    r.pair_rho.tail_bound.to_string(),
                    r.pair_eps.value.to_string(),
                    r.certified.to_string(),
                ])?;
            }
            Ok(())
        })?,
    };
    Ok(Outcome { status, output })
}

pub fn cmd_pair(cfg: &RunConfig) -> Result<Outcome, CliError> {
    render_pair(cfg, &pair_rows(cfg)?)
}
