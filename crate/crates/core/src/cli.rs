// SPDX-License-Identifier: Apache-2.0

//! The `qhvar` command line.
//!
//! Exit status: 0 when every checked claim passes, 1 when a claim fails,
//! 2 on a configuration error, 3 when a run exceeds the supported size.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::bc;
use crate::ff::{FieldDescriptor, FiniteField, Fq2, PairLiteral};
use crate::hypersurfaces::{self, Hypersurface6, QuadricType};
use crate::varieties::{self, BmParams, BtParams, HermitianMatrix, VarietySpec};
use crate::verify::{
    self, build_field, IntersectionHistogram, Kernel, PipelineOptions, ReportParams, ScanMode, ScanOptions,
    VerificationReport, VerifyError,
};

#[derive(Debug, Parser)]
#[command(name = "qhvar", version, about = "Verify quasi-Hermitian varieties of PG(3,q²) and their models in PG(6,q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every BM check for one (a, b).
    VerifyBm {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        ab: AbArgs,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run every BT check for q = 2^e.
    VerifyBt {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Tally hyperplane intersection sizes of a variety of PG(3,q²).
    TwoCharacter {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = VarietyArg::Mab)]
        variety: VarietyArg,
        #[command(flatten)]
        ab: AbArgs,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print the base matrix of B', its determinant and its type.
    ClassifyQuadric {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        ab: AbArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Count the spread lines contained in a hypersurface of PG(6,q).
    CountSpreadLines {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = HypersurfaceArg::Bprime)]
        hypersurface: HypersurfaceArg,
        #[command(flatten)]
        ab: AbArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate the closed-form counting formulas.
    Counts {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check that the spread partitions the hyperplane at infinity.
    SpreadSelftest {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Order of the base field GF(q).
    #[arg(long)]
    pub q: Option<u32>,
    /// Characteristic, with --e (defaults to 2 when only --e is given).
    #[arg(long)]
    pub p: Option<u32>,
    /// Degree of GF(q) over its prime field.
    #[arg(long)]
    pub e: Option<u32>,
    /// Override δ (canonical encoding in GF(q)).
    #[arg(long)]
    pub delta: Option<u32>,
    /// Override the modulus of GF(q), coefficients from the constant term up, e.g. 1,1,0,1.
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Debug, Args)]
pub struct AbArgs {
    /// a as c0,c1.
    #[arg(long)]
    pub a: Option<PairLiteral>,
    /// b as c0,c1.
    #[arg(long)]
    pub b: Option<PairLiteral>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Scan every hyperplane.
    #[arg(long, conflicts_with = "sampled")]
    pub full: bool,
    /// Scan N hyperplanes drawn with --seed.
    #[arg(long, value_name = "N")]
    pub sampled: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "QHVAR_WORKERS", default_value_t = 0)]
    pub workers: usize,
    /// Shard checkpoint file; an interrupted scan resumes from it.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = KernelArg::Fibered)]
    pub kernel: KernelArg,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Zero the wall times so identical runs give identical reports.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Fibered,
    PointList,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VarietyArg {
    Hermitian,
    Bab,
    Mab,
    Veps,
    Heps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HypersurfaceArg {
    Bprime,
    C3eps,
    Fbar,
    InfinityQuadric,
    HermitianCone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    /// Inequivalent BM unitals of PG(2,q²).
    BmUnitals,
    /// Inequivalent BM quasi-Hermitian varieties of PG(3,q²), q odd.
    BmVarieties,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    ResourceLimit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::ResourceLimit(_) => 3,
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::ResourceLimit(m) => CliError::ResourceLimit(m),
            other => CliError::Config(other.to_string()),
        }
    }
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

impl FieldArgs {
    fn order(&self) -> Result<u32, CliError> {
        match (self.q, self.p, self.e) {
            (Some(q), None, None) => Ok(q),
            (None, p, Some(e)) => {
                let p = p.unwrap_or(2);
                p.checked_pow(e).ok_or_else(|| config("p^e overflows"))
            }
            (Some(q), p, Some(e)) if p.unwrap_or(2).checked_pow(e) == Some(q) => Ok(q),
            (None, _, None) => Err(config("give --q or --e")),
            _ => Err(config("--q disagrees with --p/--e")),
        }
    }

    pub fn build(&self) -> Result<Fq2, CliError> {
        let q = self.order()?;
        let modulus = self.modulus.as_deref().map(FieldDescriptor::parse_modulus).transpose().map_err(config)?;
        Ok(build_field(q, self.delta, modulus)?)
    }
}

impl AbArgs {
    fn params(&self, f: &Fq2) -> Result<BmParams, CliError> {
        let default = BmParams::default_for(f);
        let a = self.a.map(|l| l.encode(f)).transpose().map_err(config)?.unwrap_or(default.a);
        let b = self.b.map(|l| l.encode(f)).transpose().map_err(config)?.unwrap_or(default.b);
        BmParams::new(f, a, b).map_err(config)
    }
}

impl ScanArgs {
    /// `None` when no mode flag was given.
    fn explicit(&self) -> Option<ScanOptions> {
        let mode = if self.full {
            ScanMode::Full
        } else {
            ScanMode::Sampled { n: self.sampled?, seed: self.seed }
        };
        Some(self.with_mode(mode))
    }

    fn with_mode(&self, mode: ScanMode) -> ScanOptions {
        ScanOptions {
            mode,
            kernel: match self.kernel {
                KernelArg::Fibered => Kernel::Fibered,
                KernelArg::PointList => Kernel::PointList,
            },
            workers: self.workers,
            checkpoint: self.checkpoint.clone(),
            ..ScanOptions::default()
        }
    }

    /// The explicit mode, else a full scan when the field is small enough.
    fn or_default(&self, f: &Fq2) -> Option<ScanOptions> {
        self.explicit()
            .or_else(|| (f.order() <= verify::scan::MAX_SCAN_ORDER).then(|| self.with_mode(ScanMode::Full)))
    }

    fn or_full(&self) -> ScanOptions {
        self.explicit().unwrap_or_else(|| self.with_mode(ScanMode::Full))
    }
}

/// What a subcommand produced.
#[derive(Debug)]
pub struct Outcome {
    pub reports: Vec<VerificationReport>,
    /// A histogram to emit as the CSV table.
    pub histogram: Option<IntersectionHistogram>,
    /// A bare value printed in text mode.
    pub value: Option<String>,
}

impl Outcome {
    fn reports(reports: Vec<VerificationReport>) -> Self {
        Self { reports, histogram: None, value: None }
    }

    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(VerificationReport::failed) {
            1
        } else {
            0
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::VerifyBm { field, ab, scan, .. } => {
            let f = field.build()?;
            let bm = ab.params(&f)?;
            let opts = PipelineOptions { scan: scan.or_default(&f) };
            Ok(Outcome::reports(verify::verify_bm(&f, bm, &opts)?))
        }
        Command::VerifyBt { field, scan, .. } => {
            let f = field.build()?;
            let bt = BtParams::new(&f).map_err(config)?;
            let opts = PipelineOptions { scan: scan.or_default(&f) };
            Ok(Outcome::reports(verify::verify_bt(&f, bt, &opts)?))
        }
        Command::TwoCharacter { field, variety, ab, scan, .. } => {
            let f = field.build()?;
            let spec = match variety {
                VarietyArg::Hermitian => VarietySpec::Hermitian(HermitianMatrix::identity(&f, 4)),
                VarietyArg::Bab => VarietySpec::Bab(ab.params(&f)?),
                VarietyArg::Mab => VarietySpec::Mab(ab.params(&f)?),
                VarietyArg::Veps => VarietySpec::Veps(BtParams::new(&f).map_err(config)?),
                VarietyArg::Heps => VarietySpec::Heps(BtParams::new(&f).map_err(config)?),
            };
            let opts = scan.or_full();
            let mut params = ReportParams::for_field(&f);
            if let VarietySpec::Bab(bm) | VarietySpec::Mab(bm) = &spec {
                params = params.with_ab(&f, bm.a, bm.b);
            }
            if let ScanMode::Sampled { seed, .. } = opts.mode {
                params.seed = Some(seed);
            }
            let mut hist = None;
            let report = VerificationReport::run(&format!("two-character-{}", spec.tag()), &params, || {
                let t = verify::two_character_scan(&f, &spec, &opts)?;
                let pass = t.pass(f.order());
                hist = Some(t.histogram.clone());
                Ok((
                    pass,
                    json!({ "histogram": t.histogram.counts, "hyperplanes": t.histogram.total, "variety_size": t.variety_size }),
                    json!({ "sizes": t.expected_sizes }),
                ))
            })?;
            Ok(Outcome { reports: vec![report], histogram: hist, value: None })
        }
        Command::ClassifyQuadric { field, ab, .. } => {
            let f = field.build()?;
            let bm = ab.params(&f)?;
            let params = ReportParams::for_field(&f).with_ab(&f, bm.a, bm.b);
            let report = VerificationReport::run("base-quadric", &params, || {
                let m = hypersurfaces::base_matrix(&f, bm);
                let closed = hypersurfaces::det_closed_form(&f, bm);
                let c = hypersurfaces::classify_quadric(f.base(), &m.form);
                let plus = hypersurfaces::quadric_sizes(5, f.q() as u64).0;
                let pass = c.kind == QuadricType::Hyperbolic && c.points == plus && m.det_a == closed;
                Ok((
                    pass,
                    json!({ "matrix": m.a, "det": m.det_a, "kind": c.kind, "points": c.points, "cross_check": c.cross_check }),
                    json!({ "det": closed, "kind": QuadricType::Hyperbolic, "points": plus }),
                ))
            })?;
            Ok(Outcome::reports(vec![report]))
        }
        Command::CountSpreadLines { field, hypersurface, ab, .. } => {
            let f = field.build()?;
            let q = f.q() as u64;
            let mut params = ReportParams::for_field(&f);
            let (h, expected) = match hypersurface {
                HypersurfaceArg::Bprime | HypersurfaceArg::InfinityQuadric => {
                    let bm = ab.params(&f)?;
                    params = params.with_ab(&f, bm.a, bm.b);
                    let n = if !f.is_odd() {
                        q * q + 1
                    } else if q % 4 == 1 {
                        2 * q * q + 1
                    } else {
                        1
                    };
                    let h = match hypersurface {
                        HypersurfaceArg::Bprime => Hypersurface6::bprime(&f, bm),
                        _ => Hypersurface6::InfinityQuadric(bm),
                    };
                    (h, n)
                }
                HypersurfaceArg::C3eps => {
                    let bt = BtParams::new(&f).map_err(config)?;
                    params.e = Some(bt.e);
                    (Hypersurface6::C3eps(bt), q * q + 1)
                }
                HypersurfaceArg::Fbar => {
                    if !f.is_odd() {
                        return Err(config("F̄ is defined for q odd"));
                    }
                    (Hypersurface6::Fbar, q * q * q + q * q + 1)
                }
                HypersurfaceArg::HermitianCone => {
                    (Hypersurface6::hermitian_cone(&f, 1).map_err(config)?, q * q * q + q * q + 1)
                }
            };
            let report = VerificationReport::run(&format!("spread-lines-in-{}", h.tag()), &params, || {
                let c = verify::count_spread_lines_in(&f, &h);
                let labels: Vec<String> = c.labels.iter().map(|l| l.to_string()).collect();
                Ok((c.count == expected, json!({ "count": c.count, "labels": labels }), json!({ "count": expected })))
            })?;
            Ok(Outcome::reports(vec![report]))
        }
        Command::Counts { theorem, p, n, .. } => {
            let (claim, value) = match theorem {
                TheoremArg::BmUnitals => ("bm-unital-count", varieties::bm_unital_count(*p, *n)),
                TheoremArg::BmVarieties => ("bm-variety-count", varieties::bm_variety_count(*p, *n)),
            };
            let value = value.map_err(config)?;
            let params = ReportParams { q: (*p as u32).saturating_pow(*n as u32), ..ReportParams::default() };
            let report = VerificationReport::run(claim, &params, || {
                Ok((true, json!({ "p": p, "n": n, "count": value }), serde_json::Value::Null))
            })?;
            Ok(Outcome { reports: vec![report], histogram: None, value: Some(value.to_string()) })
        }
        Command::SpreadSelftest { field, .. } => {
            let f = field.build()?;
            let params = ReportParams::for_field(&f);
            let report = VerificationReport::run("spread-selftest", &params, || {
                let c = bc::spread_selftest(&f);
                let q = f.q() as u64;
                let pts: u64 = (0..6).map(|k| q.pow(k)).sum();
                Ok((
                    c.pass() && c.lines == bc::spread_size(q),
                    json!({ "lines": c.lines, "covered": c.points_covered, "disjoint": c.disjoint }),
                    json!({ "lines": bc::spread_size(q), "covered": pts }),
                ))
            })?;
            Ok(Outcome::reports(vec![report]))
        }
    }
}

fn out_args(command: &Command) -> &OutArgs {
    match command {
        Command::VerifyBm { out, .. }
        | Command::VerifyBt { out, .. }
        | Command::TwoCharacter { out, .. }
        | Command::ClassifyQuadric { out, .. }
        | Command::CountSpreadLines { out, .. }
        | Command::Counts { out, .. }
        | Command::SpreadSelftest { out, .. } => out,
    }
}

/// Renders an outcome in the requested format.
pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.reports).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => match &outcome.histogram {
            Some(h) => h.to_csv(),
            None => {
                let mut s = String::from("claim,q,pass,seconds,measured\n");
                for r in &outcome.reports {
                    let pass = r.pass.map_or("not-run".to_string(), |p| p.to_string());
                    let measured = r.measured.to_string().replace('"', "\"\"");
                    s.push_str(&format!("{},{},{},{:.6},\"{}\"\n", r.claim, r.params.q, pass, r.seconds, measured));
                }
                s
            }
        },
        Format::Text => match &outcome.value {
            Some(v) => format!("{v}\n"),
            None => outcome.reports.iter().map(|r| format!("{r}\n")).collect(),
        },
    }
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

/// Parses arguments, runs the subcommand, writes the report and returns
/// the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = out_args(&cli.command);
    match execute(&cli.command) {
        Ok(mut outcome) => {
            if out.no_timing {
                outcome.reports = outcome.reports.iter().map(VerificationReport::without_timing).collect();
            }
            let text = render(&outcome, out.format);
            let written = match &out.out {
                Some(path) => write_atomic(path, &text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("qhvar: cannot write report: {e}");
                return 2;
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("qhvar: {e}");
            e.exit_code()
        }
    }
}
