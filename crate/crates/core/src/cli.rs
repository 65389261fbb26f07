//! Command-line front end.
//!
//! Every subcommand is a thin wrapper over a library call. Output is JSON
//! (default) or CSV; both embed the resolved configuration as a header.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::numkit::{rat_string, to_f64, BigRat};
use crate::oracle::{run_oracles, OracleConfig};
use crate::refval::{self, RefReport};
use crate::sampler::{enumerate_outcomes, lxeb_experiment_with, SampleSource};
use crate::schur::{outcome_count, trace_s_fock, trace_s_uniform, OccPattern};
use crate::states::parse_state_spec;
use crate::swapexp::avg_purity_volume_exponent;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "LXEBKIT_THREADS";

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "lxebkit",
    version,
    about = "LXEB reference values and anticoncentration scores for boson sampling"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// Reference LXEB value for a model or a product state.
    Ref(RefArgs),
    /// Anticoncentration score with the applicable bounds.
    Ac(AcArgs),
    /// Monte Carlo LXEB fidelity experiment.
    Estimate(EstimateArgs),
    /// Brute-force consistency suite.
    Oracle(OracleArgs),
    /// Parameter sweep as one row per grid point.
    Scan(ScanArgs),
    /// Rényi-2 entropies of particle-reduced states.
    Entropy(EntropyArgs),
    /// Hunter-Jones ratios `E|per U|⁴ / (E|per U|²)²`.
    Hj(HjArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefModel {
    Bs,
    BsLossy,
    Sbs,
    GbsUniform,
    Product,
}

#[derive(Debug, Args, Serialize)]
pub struct RefArgs {
    #[arg(long, value_enum)]
    pub model: RefModel,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Post-selected photon number (bs-lossy).
    #[arg(long)]
    pub ell: Option<u32>,
    /// Number of sources (sbs, gbs-uniform); defaults to m.
    #[arg(long)]
    pub d: Option<u32>,
    /// Photon pairs N, so n = 2N (gbs-uniform).
    #[arg(long)]
    pub pairs: Option<u32>,
    /// JSON state file (product).
    #[arg(long)]
    pub state: Option<std::path::PathBuf>,
    /// Fock cutoff for states that do not set one; defaults to n.
    #[arg(long)]
    pub cutoff: Option<u32>,
    /// Use exact rationals.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AcModel {
    Bs,
    Sbs,
    Gbs,
}

#[derive(Debug, Args, Serialize)]
pub struct AcArgs {
    #[arg(long, value_enum)]
    pub model: AcModel,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullModel {
    Uniform,
}

#[derive(Debug, Args, Serialize)]
pub struct EstimateArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 10)]
    pub trials: u32,
    #[arg(long, default_value_t = 1000)]
    pub samples: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Score uniform samples instead of ideal ones.
    #[arg(long, value_enum)]
    pub null: Option<NullModel>,
}

#[derive(Debug, Args, Serialize)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 3)]
    pub m: u32,
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    /// Random product states per (m, n).
    #[arg(long, default_value_t = 5)]
    pub states: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanModel {
    Bs,
    Sbs,
    Gbs,
    GbsLossy,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub model: ScanModel,
    /// Mode-to-photon ratios m/n (bs, sbs, gbs).
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,6")]
    pub ratio: Vec<u32>,
    #[arg(long, default_value_t = 2)]
    pub n_min: u32,
    #[arg(long, default_value_t = 100)]
    pub n_max: u32,
    /// Mode counts (gbs-lossy).
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
    pub m: Vec<u32>,
    /// Transmissivities (gbs-lossy).
    #[arg(long, value_delimiter = ',', default_value = "1,0.9,0.8,0.7,0.6,0.5")]
    pub eta: Vec<f64>,
    /// Squeezing parameter (gbs-lossy); asinh(1) gives one photon per mode on average.
    #[arg(long, default_value_t = 1f64.asinh())]
    pub r: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct EntropyArgs {
    /// Occupation pattern such as "1,1,0".
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["m", "n"])]
    pub pattern: Option<Vec<u32>>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub q: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct HjArgs {
    #[arg(long, default_value_t = 1)]
    pub n_min: u32,
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
}

/// A command's result in both output shapes.
pub struct Output {
    pub json: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Exit code when the computation succeeded (4 for a failed check).
    pub status: i32,
}

impl Output {
    fn new(json: Value, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Output {
            json,
            headers,
            rows,
            status: 0,
        }
    }
}

/// Parses `args`, runs the command and writes to `out`/`err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = if e.use_stderr() {
                e.render().to_string()
            } else {
                e.to_string()
            };
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return e.kind().exit_code();
    }
    match execute(&cli) {
        Ok(output) => match emit(&cli, &output, out) {
            Ok(()) => output.status,
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.kind().exit_code()
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        Error::Domain(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    // A pool may already exist when run() is called repeatedly in-process.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// The resolved configuration embedded in every output.
pub fn config_value(cli: &Cli) -> Value {
    let mut cfg = serde_json::to_value(&cli.command).expect("config serializes");
    if let Value::Object(map) = &mut cfg {
        map.insert("format".into(), json!(resolved_format(cli)));
    }
    cfg
}

fn resolved_format(cli: &Cli) -> Format {
    cli.format.unwrap_or(match cli.command {
        Command::Scan(_) => Format::Csv,
        _ => Format::Json,
    })
}

fn emit(cli: &Cli, output: &Output, out: &mut dyn Write) -> std::io::Result<()> {
    let config = config_value(cli);
    match resolved_format(cli) {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("config".into(), config);
            if let Value::Object(body) = &output.json {
                doc.extend(body.clone());
            }
            serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
            out.write_all(b"\n")
        }
        Format::Csv => {
            writeln!(out, "# config: {}", serde_json::to_string(&config)?)?;
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut *out);
            w.write_record(&output.headers)?;
            for row in &output.rows {
                w.write_record(row)?;
            }
            w.flush()
        }
    }
}

/// Runs the parsed command.
pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Ref(a) => cmd_ref(a),
        Command::Ac(a) => cmd_ac(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Entropy(a) => cmd_entropy(a),
        Command::Hj(a) => cmd_hj(a),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, model: &str) -> Result<T> {
    v.ok_or_else(|| Error::Domain(format!("--{flag} is required for model {model}")))
}

fn fnum(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Shortest round-trip representation, matching the JSON output.
fn fcell(x: f64) -> String {
    serde_json::Number::from_f64(x).map_or_else(String::new, |n| n.to_string())
}

fn ocell<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

fn rat_value(x: Option<&BigRat>) -> Value {
    x.map_or(Value::Null, |r| Value::String(rat_string(r)))
}

const REF_HEADERS: [&str; 10] = [
    "model",
    "m",
    "n",
    "ell",
    "d",
    "pairs",
    "value",
    "value_float",
    "ac",
    "method",
];

fn ref_json(r: &RefReport) -> Value {
    json!({
        "model": r.model.as_str(),
        "m": r.m,
        "n": r.n,
        "ell": r.ell,
        "d": r.d,
        "pairs": r.pairs,
        "value": rat_value(r.value_exact.as_ref()),
        "value_float": fnum(r.value_float),
        "ac": fnum(r.ac_score),
        "method": r.method.as_str(),
    })
}

fn ref_row(r: &RefReport) -> Vec<String> {
    vec![
        r.model.as_str().into(),
        r.m.to_string(),
        r.n.to_string(),
        ocell(r.ell),
        ocell(r.d),
        ocell(r.pairs),
        r.value_exact.as_ref().map_or_else(String::new, rat_string),
        fcell(r.value_float),
        fcell(r.ac_score),
        r.method.as_str().into(),
    ]
}

/// Computes the reference report for `ref`.
pub fn ref_report(a: &RefArgs) -> Result<RefReport> {
    match a.model {
        RefModel::Bs => refval::lxe_ref_bs(need(a.m, "m", "bs")?, need(a.n, "n", "bs")?, a.exact),
        RefModel::BsLossy => refval::lxe_ref_bs_lossy(
            need(a.m, "m", "bs-lossy")?,
            need(a.n, "n", "bs-lossy")?,
            need(a.ell, "ell", "bs-lossy")?,
        ),
        RefModel::Sbs => {
            let m = need(a.m, "m", "sbs")?;
            refval::lxe_ref_sbs(m, need(a.n, "n", "sbs")?, a.d.unwrap_or(m))
        }
        RefModel::GbsUniform => {
            let m = need(a.m, "m", "gbs-uniform")?;
            let pairs = match (a.pairs, a.n) {
                (Some(p), _) => p,
                (None, Some(n)) if n % 2 == 0 => n / 2,
                (None, Some(n)) => {
                    return Err(Error::range(format!("GBS populates only even n, got {n}")))
                }
                (None, None) => {
                    return Err(Error::Domain(
                        "--pairs or --n is required for model gbs-uniform".into(),
                    ))
                }
            };
            refval::lxe_ref_gbs_uniform(m, pairs, a.d.unwrap_or(m))
        }
        RefModel::Product => {
            let path = a
                .state
                .as_ref()
                .ok_or_else(|| Error::Domain("--state is required for model product".into()))?;
            let n = need(a.n, "n", "product")?;
            let doc = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
            let rho = parse_state_spec(&doc, Some(a.cutoff.unwrap_or(n)))?;
            if let Some(m) = a.m {
                if m as usize != rho.mode_count() {
                    return Err(Error::Mismatch(format!(
                        "--m {m} but the state has {} modes",
                        rho.mode_count()
                    )));
                }
            }
            refval::lxe_ref_general(&rho, n)
        }
    }
}

fn cmd_ref(a: &RefArgs) -> Result<Output> {
    let r = ref_report(a)?;
    Ok(Output::new(
        json!({ "result": ref_json(&r) }),
        REF_HEADERS.to_vec(),
        vec![ref_row(&r)],
    ))
}

/// AC score plus applicable bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AcReport {
    pub model: &'static str,
    pub m: u32,
    pub n: u32,
    pub d: Option<u32>,
    pub ac: f64,
    pub general_bound: Option<f64>,
    pub envelope: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub verdict: &'static str,
}

pub fn ac_report(a: &AcArgs) -> Result<AcReport> {
    let (m, n) = (a.m, a.n);
    let mut rep = AcReport {
        model: "",
        m,
        n,
        d: None,
        ac: f64::NAN,
        general_bound: None,
        envelope: None,
        lower: None,
        upper: None,
        verdict: "no-bound",
    };
    match a.model {
        AcModel::Bs => {
            rep.model = "bs";
            rep.ac = refval::ac_bs(m, n)?;
            rep.general_bound = Some(refval::ac_general_bound(m, n));
            rep.envelope = Some(refval::ac_envelope(m, n));
        }
        AcModel::Sbs => {
            let d = a.d.unwrap_or(m);
            rep.model = "sbs";
            rep.d = Some(d);
            rep.ac = refval::ac_sbs(m, n, d)?;
            if d == m {
                (rep.lower, rep.upper) = refval::sbs_ac_bracket(m, n).unzip();
            }
        }
        AcModel::Gbs => {
            let d = a.d.unwrap_or(m);
            rep.model = "gbs";
            rep.d = Some(d);
            rep.ac = refval::ac_gbs(m, n, d)?;
            if d == m {
                (rep.lower, rep.upper) = refval::gbs_ac_bracket(m, n).unzip();
            }
        }
    }
    let mut within = None;
    if let Some(b) = rep.general_bound {
        within = Some(rep.ac <= b);
    }
    if let (Some(lo), Some(hi)) = (rep.lower, rep.upper) {
        within = Some(within.unwrap_or(true) && lo <= rep.ac && rep.ac <= hi);
    }
    rep.verdict = match within {
        Some(true) => "pass",
        Some(false) => "fail",
        None => "no-bound",
    };
    Ok(rep)
}

fn cmd_ac(a: &AcArgs) -> Result<Output> {
    let r = ac_report(a)?;
    let headers = vec![
        "model",
        "m",
        "n",
        "d",
        "ac",
        "general_bound",
        "envelope",
        "lower",
        "upper",
        "verdict",
    ];
    let row = vec![
        r.model.to_string(),
        r.m.to_string(),
        r.n.to_string(),
        ocell(r.d),
        fcell(r.ac),
        r.general_bound.map_or_else(String::new, fcell),
        r.envelope.map_or_else(String::new, fcell),
        r.lower.map_or_else(String::new, fcell),
        r.upper.map_or_else(String::new, fcell),
        r.verdict.to_string(),
    ];
    let mut out = Output::new(json!({ "result": r }), headers, vec![row]);
    if r.verdict == "fail" {
        out.status = crate::ErrorKind::Check.exit_code();
    }
    Ok(out)
}

fn cmd_estimate(a: &EstimateArgs) -> Result<Output> {
    let source = match a.null {
        Some(NullModel::Uniform) => SampleSource::Uniform,
        None => SampleSource::Exact,
    };
    let r = lxeb_experiment_with(a.m, a.n, a.trials, a.samples, a.seed, source)?;
    let headers = vec!["trial", "fidelity"];
    let rows = r
        .trial_fidelities
        .iter()
        .enumerate()
        .map(|(i, f)| vec![i.to_string(), fcell(*f)])
        .collect();
    Ok(Output::new(json!({ "result": r }), headers, rows))
}

fn cmd_oracle(a: &OracleArgs) -> Result<Output> {
    let cfg = OracleConfig {
        m_max: a.m,
        n_max: a.n,
        states_per_point: a.states,
        seed: a.seed,
        inject_fault: a.inject_fault,
    };
    let checks = run_oracles(&cfg)?;
    let all = checks.iter().all(|c| c.passed);
    let headers = vec!["name", "passed", "instances", "detail"];
    let rows = checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.passed.to_string(),
                c.instances.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    let mut out = Output::new(
        json!({ "checks": checks, "all_passed": all }),
        headers,
        rows,
    );
    if !all {
        out.status = crate::ErrorKind::Check.exit_code();
    }
    Ok(out)
}

/// One row of `scan`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub model: &'static str,
    pub m: u32,
    pub n: u32,
    pub d: Option<u32>,
    pub eta: Option<f64>,
    pub value: f64,
    pub ac: Option<f64>,
    pub general_bound: Option<f64>,
    pub envelope: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub fidelity: Option<f64>,
}

const SCAN_HEADERS: [&str; 12] = [
    "model",
    "m",
    "n",
    "d",
    "eta",
    "value",
    "ac",
    "general_bound",
    "envelope",
    "lower",
    "upper",
    "fidelity",
];

impl ScanRow {
    fn empty(model: &'static str, m: u32, n: u32) -> Self {
        ScanRow {
            model,
            m,
            n,
            d: None,
            eta: None,
            value: f64::NAN,
            ac: None,
            general_bound: None,
            envelope: None,
            lower: None,
            upper: None,
            fidelity: None,
        }
    }

    fn cells(&self) -> Vec<String> {
        let o = |x: Option<f64>| x.map_or_else(String::new, fcell);
        vec![
            self.model.into(),
            self.m.to_string(),
            self.n.to_string(),
            ocell(self.d),
            o(self.eta),
            fcell(self.value),
            o(self.ac),
            o(self.general_bound),
            o(self.envelope),
            o(self.lower),
            o(self.upper),
            o(self.fidelity),
        ]
    }
}

/// Computes the rows of `scan` in grid order.
pub fn scan_rows(a: &ScanArgs) -> Result<Vec<ScanRow>> {
    if a.model == ScanModel::GbsLossy {
        let r = a.r;
        let grid: Vec<(u32, f64)> =
            a.m.iter()
                .flat_map(|&m| a.eta.iter().map(move |&e| (m, e)))
                .collect();
        return grid
            .par_iter()
            .map(|&(m, eta)| {
                let n = if m % 2 == 0 { m } else { m - 1 };
                let p = refval::lossy_gbs_point(m, n, r, eta)?;
                let mut row = ScanRow::empty("gbs-lossy", m, n);
                row.d = Some(m);
                row.eta = Some(eta);
                row.value = p.ref_lossy;
                row.fidelity = Some(p.fidelity);
                Ok(row)
            })
            .collect();
    }
    if a.n_min < 1 || a.n_min > a.n_max {
        return Err(Error::range(format!(
            "need 1 <= n-min <= n-max, got {}..{}",
            a.n_min, a.n_max
        )));
    }
    let grid: Vec<(u32, u32)> = a
        .ratio
        .iter()
        .flat_map(|&k| (a.n_min..=a.n_max).map(move |n| (k * n, n)))
        .filter(|&(_, n)| a.model != ScanModel::Gbs || n % 2 == 0)
        .collect();
    grid.par_iter()
        .map(|&(m, n)| {
            let mut row;
            match a.model {
                ScanModel::Bs => {
                    row = ScanRow::empty("bs", m, n);
                    row.value = refval::lxe_ref_bs(m, n, false)?.value_float;
                    row.ac = Some(refval::ac_bs(m, n)?);
                    row.general_bound = Some(refval::ac_general_bound(m, n));
                    row.envelope = Some(refval::ac_envelope(m, n));
                }
                ScanModel::Sbs => {
                    row = ScanRow::empty("sbs", m, n);
                    row.d = Some(m);
                    row.value = refval::sbs_ln(m, n, m).exp();
                    row.ac = Some(refval::ac_sbs(m, n, m)?);
                    (row.lower, row.upper) = refval::sbs_ac_bracket(m, n).unzip();
                }
                ScanModel::Gbs => {
                    row = ScanRow::empty("gbs", m, n);
                    row.d = Some(m);
                    row.value = refval::gbs_ln(m, n / 2, m).exp();
                    row.ac = Some(refval::ac_gbs(m, n, m)?);
                    (row.lower, row.upper) = refval::gbs_ac_bracket(m, n).unzip();
                }
                ScanModel::GbsLossy => unreachable!(),
            }
            Ok(row)
        })
        .collect()
}

fn cmd_scan(a: &ScanArgs) -> Result<Output> {
    let rows = scan_rows(a)?;
    let cells = rows.iter().map(ScanRow::cells).collect();
    Ok(Output::new(
        json!({ "rows": rows }),
        SCAN_HEADERS.to_vec(),
        cells,
    ))
}

/// Largest outcome set enumerated for the mean entropy.
const ENTROPY_ENUM_LIMIT: f64 = 1e5;

fn cmd_entropy(a: &EntropyArgs) -> Result<Output> {
    let headers = vec![
        "kind",
        "m",
        "n",
        "q",
        "purity",
        "purity_float",
        "entropy",
        "mean_entropy",
        "volume_estimate",
    ];
    if let Some(counts) = &a.pattern {
        let p = OccPattern::new(counts.clone());
        let purity = trace_s_fock(&p, a.q)?;
        let s = -to_f64(&purity).ln();
        let row = vec![
            "pattern".into(),
            p.modes().to_string(),
            p.total().to_string(),
            a.q.to_string(),
            rat_string(&purity),
            fcell(to_f64(&purity)),
            fcell(s),
            String::new(),
            String::new(),
        ];
        let j = json!({ "result": {
            "kind": "pattern", "pattern": counts, "q": a.q,
            "purity": rat_string(&purity), "purity_float": fnum(to_f64(&purity)), "entropy": fnum(s),
        }});
        return Ok(Output::new(j, headers, vec![row]));
    }
    let m = need(a.m, "m", "entropy (uniform)")?;
    let n = need(a.n, "n", "entropy (uniform)")?;
    if m < 1 || a.q > n {
        return Err(Error::range(format!(
            "need m >= 1 and q <= n, got m={m}, n={n}, q={}",
            a.q
        )));
    }
    let purity = trace_s_uniform(m, n, a.q);
    let bound = -to_f64(&purity).ln();
    let mean = if crate::schur::outcome_count_f64(m, n) <= ENTROPY_ENUM_LIMIT {
        Some(mean_entropy(m, n, a.q)?)
    } else {
        None
    };
    let volume = if a.q > 0 && a.q < n {
        Some(n as f64 * avg_purity_volume_exponent(m as f64 / n as f64, a.q as f64 / n as f64)?)
    } else {
        None
    };
    let row = vec![
        "uniform".into(),
        m.to_string(),
        n.to_string(),
        a.q.to_string(),
        rat_string(&purity),
        fcell(to_f64(&purity)),
        fcell(bound),
        mean.map_or_else(String::new, fcell),
        volume.map_or_else(String::new, fcell),
    ];
    let j = json!({ "result": {
        "kind": "uniform", "m": m, "n": n, "q": a.q,
        "purity": rat_string(&purity), "purity_float": fnum(to_f64(&purity)),
        "entropy_lower_bound": fnum(bound),
        "mean_entropy": mean.map(fnum),
        "volume_estimate": volume.map(fnum),
    }});
    Ok(Output::new(j, headers, vec![row]))
}

/// Mean Rényi-2 entropy of the `q`-particle reduction over all of `S_{m,n}`.
pub fn mean_entropy(m: u32, n: u32, q: u32) -> Result<f64> {
    let outcomes = enumerate_outcomes(m as usize, n)?;
    let ents = outcomes
        .iter()
        .map(|p| trace_s_fock(p, q).map(|x| -to_f64(&x).ln()))
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::numkit::compensated_sum(ents) / to_f64(&BigRat::from_integer(outcome_count(m, n))))
}

fn cmd_hj(a: &HjArgs) -> Result<Output> {
    if a.n_min < 1 || a.n_min > a.n_max {
        return Err(Error::range(format!(
            "need 1 <= n-min <= n-max, got {}..{}",
            a.n_min, a.n_max
        )));
    }
    let values = (a.n_min..=a.n_max)
        .into_par_iter()
        .map(|n| refval::hunter_jones_ratio(n).map(|v| (n, v)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut list = Vec::new();
    for (n, v) in &values {
        let f = to_f64(v);
        rows.push(vec![
            n.to_string(),
            rat_string(v),
            fcell(f),
            fcell((f - 2.0).abs()),
        ]);
        list.push(json!({ "n": n, "value": rat_string(v), "value_float": fnum(f), "gap": fnum((f - 2.0).abs()) }));
    }
    Ok(Output::new(
        json!({ "rows": list }),
        vec!["n", "value", "value_float", "gap"],
        rows,
    ))
}
