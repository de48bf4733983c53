//! Command-line front end: builds targets from flags, runs catalog queries and
//! campaigns, and writes a JSON or CSV report.
//!
//! Exit codes: 0 when every record passes, 1 when a ledger has failures,
//! 2 on usage, domain or output errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::algebra::FieldTag;
use crate::campaigns::{
    campaign_algebraic_identities, campaign_closed_form_match, campaign_fk, campaign_fk_sweep, campaign_inequalities,
    campaign_minimality, CampaignConfig, DiscrepancyLedger,
};
use crate::closed_forms::{product_geometry, projective_closed_forms, sigma_table, ClosedFormReport, InequalityRecord, Relation};
use crate::embedding::{EmbeddingSpec, ProductSphereSpec, ProjectiveSpec};
use crate::error::{GeometryError, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "minembed", version, about = "Minimal embeddings of product spheres and projective spaces")]
pub struct Cli {
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV, one record per row.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Leave the timestamp out of the envelope.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form values for one configuration.
    #[command(subcommand)]
    ClosedForm(ClosedFormCommand),
    /// Sigma values of all catalogued manifolds up to a dimension.
    SigmaTable {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Run a verification campaign.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand, Debug)]
pub enum ClosedFormCommand {
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Defaults to the minimal configuration sqrt(k/n).
        #[arg(long)]
        r1: Option<f64>,
    },
    Projective {
        #[arg(long)]
        field: FieldTag,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    /// Sample a product of spheres instead of a projective space.
    #[arg(long)]
    pub product: bool,
    #[arg(long, requires = "product")]
    pub n: Option<usize>,
    #[arg(long, requires = "product")]
    pub k: Option<usize>,
    #[arg(long, requires = "product")]
    pub r1: Option<f64>,
    #[arg(long, conflicts_with = "product")]
    pub field: Option<FieldTag>,
    #[arg(long, conflicts_with = "product")]
    pub dim: Option<usize>,
}

impl TargetArgs {
    fn spec(&self) -> Result<EmbeddingSpec> {
        if self.product {
            let (n, k) = match (self.n, self.k) {
                (Some(n), Some(k)) => (n, k),
                _ => return Err(GeometryError::Domain("--product needs --n and --k".into())),
            };
            let spec = match self.r1 {
                Some(r1) => ProductSphereSpec::new(n, k, r1)?,
                None => ProductSphereSpec::minimal(n, k)?,
            };
            return Ok(EmbeddingSpec::Product(spec));
        }
        match (self.field, self.dim) {
            (Some(f), Some(n)) => Ok(EmbeddingSpec::Projective(ProjectiveSpec::new(f, n)?)),
            _ => Err(GeometryError::Domain("give --field and --dim, or --product --n --k".into())),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override the campaign's primary tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCommand {
    /// Mean curvature at sampled points (tolerance: |H|).
    Minimality {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        sampling: SampleArgs,
    },
    /// Measured geometry against the catalog (tolerance: value match).
    Match {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        sampling: SampleArgs,
    },
    /// Algebraic identities of the embeddings (tolerance: norm identity).
    Identities {
        #[command(flatten)]
        sampling: SampleArgs,
    },
    /// Closed-form inequality sweeps.
    Inequalities {
        #[arg(long, default_value_t = 60)]
        max_n: usize,
    },
    /// Grid analysis of the normalized scalar curvature profile.
    Fk {
        #[arg(long, required_unless_present = "max_n")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "max_n")]
        k: Option<usize>,
        /// Sweep all admissible (n, k) up to this dimension.
        #[arg(long, conflicts_with_all = ["n", "k"])]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    Reports(Vec<ClosedFormReport>),
    Ledger(DiscrepancyLedger),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub command: String,
    pub seed: Option<u64>,
    pub timestamp: Option<String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Payload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportEnvelope {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => EXIT_OK,
            Status::Violation => EXIT_VIOLATION,
            Status::Error => EXIT_ERROR,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Writes floats with 17 significant digits.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

fn real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub const CSV_HEADER: [&str; 7] = ["name", "params", "lhs", "rhs", "relation", "margin", "pass"];

fn record_row(r: &InequalityRecord) -> [String; 7] {
    [
        r.name.clone(),
        r.params.clone(),
        real(r.lhs),
        real(r.rhs),
        r.relation.to_string(),
        real(r.margin),
        r.pass.to_string(),
    ]
}

/// Sigma tables compare against the Aubin value; other reports list entries.
fn report_rows(rep: &ClosedFormReport) -> Vec<[String; 7]> {
    if let (Some(sigma), Some(aubin), crate::closed_forms::ReportContext::Sigma) =
        (rep.get("sigma"), rep.get("aubin"), rep.context)
    {
        let r = InequalityRecord::new(rep.label.clone(), rep.params.clone(), sigma, aubin, Relation::Le);
        return vec![record_row(&r)];
    }
    rep.entries
        .iter()
        .map(|(name, v)| {
            [
                name.clone(),
                format!("{};{}", rep.label, rep.params),
                real(*v),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ]
        })
        .collect()
}

/// Serializes an envelope.
pub fn emit(report: &ReportEnvelope, format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut buf = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
            report.serialize(&mut ser).map_err(io::Error::other)?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            match &report.payload {
                Some(Payload::Ledger(l)) => {
                    for r in &l.records {
                        w.write_record(record_row(r))?;
                    }
                }
                Some(Payload::Reports(reps)) => {
                    for rep in reps {
                        for row in report_rows(rep) {
                            w.write_record(row)?;
                        }
                    }
                }
                None => {}
            }
            w.into_inner().map_err(|e| io::Error::other(e.to_string()))
        }
    }
}

fn ledger_status(l: &DiscrepancyLedger) -> Status {
    if l.all_pass() {
        Status::Ok
    } else {
        Status::Violation
    }
}

fn execute(command: &Command) -> Result<(Payload, Status, Option<u64>)> {
    match command {
        Command::ClosedForm(ClosedFormCommand::Product { n, k, r1 }) => {
            let spec = match r1 {
                Some(r1) => ProductSphereSpec::new(*n, *k, *r1)?,
                None => ProductSphereSpec::minimal(*n, *k)?,
            };
            Ok((Payload::Reports(vec![product_geometry(&spec)]), Status::Ok, None))
        }
        Command::ClosedForm(ClosedFormCommand::Projective { field, dim }) => {
            Ok((Payload::Reports(vec![projective_closed_forms(*field, *dim)?]), Status::Ok, None))
        }
        Command::SigmaTable { max_n } => {
            let table = sigma_table(*max_n);
            if table.is_empty() {
                return Err(GeometryError::Domain("--max-n must be at least 3".into()));
            }
            let status = if table.iter().all(|r| r.entries["sigma"] <= r.entries["aubin"] * (1.0 + 1e-12)) {
                Status::Ok
            } else {
                Status::Violation
            };
            Ok((Payload::Reports(table), status, None))
        }
        Command::Verify(v) => {
            let (ledger, seed) = run_verify(v)?;
            let status = ledger_status(&ledger);
            Ok((Payload::Ledger(ledger), status, seed))
        }
    }
}

fn config(target: Option<EmbeddingSpec>, s: &SampleArgs) -> CampaignConfig {
    CampaignConfig::new(target, s.samples, s.seed)
}

fn run_verify(v: &VerifyCommand) -> Result<(DiscrepancyLedger, Option<u64>)> {
    match v {
        VerifyCommand::Minimality { target, sampling } => {
            let mut c = config(Some(target.spec()?), sampling);
            if let Some(t) = sampling.tol {
                c.tolerances.mean_curvature = t;
            }
            Ok((campaign_minimality(&c)?, Some(sampling.seed)))
        }
        VerifyCommand::Match { target, sampling } => {
            let mut c = config(Some(target.spec()?), sampling);
            if let Some(t) = sampling.tol {
                c.tolerances.closed_form = t;
            }
            Ok((campaign_closed_form_match(&c)?, Some(sampling.seed)))
        }
        VerifyCommand::Identities { sampling } => {
            let mut c = config(None, sampling);
            if let Some(t) = sampling.tol {
                c.tolerances.norm_identity = t;
            }
            Ok((campaign_algebraic_identities(&c)?, Some(sampling.seed)))
        }
        VerifyCommand::Inequalities { max_n } => Ok((campaign_inequalities(*max_n)?, None)),
        VerifyCommand::Fk { n, k, max_n, grid } => match (max_n, n, k) {
            (Some(m), _, _) => Ok((campaign_fk_sweep(*m, *grid)?, None)),
            (None, Some(n), Some(k)) => Ok((campaign_fk(*n, *k, *grid)?, None)),
            _ => Err(GeometryError::Domain("give --n and --k, or --max-n".into())),
        },
    }
}

fn write_output(bytes: &[u8], out: Option<&PathBuf>, stdout: &mut dyn Write) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(bytes),
        None => stdout.write_all(bytes),
    }
}

/// Runs the CLI on `args` (including the program name), writing to the given streams.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_ERROR
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let command = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let format = if cli.csv { Format::Csv } else { Format::Json };
    let timestamp = (!cli.no_timestamp).then(|| chrono::Utc::now().to_rfc3339());

    let envelope = match execute(&cli.command) {
        Ok((payload, status, seed)) => ReportEnvelope {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed,
            timestamp,
            status,
            payload: Some(payload),
            error: None,
        },
        Err(e) => {
            let _ = writeln!(stderr, "minembed: {e}");
            return EXIT_ERROR;
        }
    };
    let bytes = match emit(&envelope, format) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "minembed: cannot serialize report: {e}");
            return EXIT_ERROR;
        }
    };
    if let Err(e) = write_output(&bytes, cli.out.as_ref(), stdout) {
        let _ = writeln!(stderr, "minembed: cannot write report: {e}");
        return EXIT_ERROR;
    }
    if let Payload::Ledger(l) = envelope.payload.as_ref().expect("set above") {
        let _ = writeln!(
            stderr,
            "{}: {} passed, {} failed, worst {}",
            l.campaign, l.summary.pass_count, l.summary.fail_count, l.summary.worst_case
        );
    }
    envelope.exit_code()
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}
