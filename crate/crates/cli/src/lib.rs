//! Command-line front end: argument definitions, report types and the
//! subcommand implementations. Reports go to the supplied writer as JSON or
//! CSV; the binary maps errors to exit codes with [`exit_code`].

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use densitypack::machinery::{verify_k1_all, verify_m1_all};
use densitypack::profile::{
    check_main_inequality, haralambis_certify, verify_counting_identities, Certificate, Outcome, VerificationReport,
};
use densitypack::{
    build_m, density, mu_exact, CanonicalParams, CaseTag, DifferenceSet, Error, ExactRational, Limits, Method,
    RawParams, TheoremStatus,
};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "densitypack", version, about = "Exact packing densities of two-gap sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form density of S = {0, a, ..., ka, ka + b, ..., ka + mb}.
    Density {
        #[command(flatten)]
        params: ParamArgs,
        /// Also compute the exact density with the state-graph oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact maximum density of sets avoiding the given differences.
    Mu {
        #[arg(long, value_delimiter = ',', required = true)]
        distances: Vec<u32>,
    },
    /// Exhaustive checks of the upper-bound argument on every window.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Level::Full)]
        level: Level,
        /// Run the inequality checks outside k = 1 or m = 1.
        #[arg(long)]
        conjecture: bool,
    },
    /// Optimal periodic set for an instance or a distance list.
    Witness {
        #[command(flatten)]
        params: OptionalParams,
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["a", "b", "k", "m"])]
        distances: Option<Vec<u32>>,
    },
    /// Formula against oracle across a parameter box, as CSV.
    Sweep {
        #[arg(long)]
        a_max: u32,
        #[arg(long)]
        k_max: u32,
        #[arg(long)]
        m_max: u32,
        /// Skip instances with ka + mb above this.
        #[arg(long, default_value_t = 14)]
        weight_cap: u32,
        /// Write the table here instead of stdout.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub m: u32,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OptionalParams {
    #[arg(long, requires_all = ["b", "k", "m"])]
    pub a: Option<u32>,
    #[arg(long, requires = "a")]
    pub b: Option<u32>,
    #[arg(long, requires = "a")]
    pub k: Option<u32>,
    #[arg(long, requires = "a")]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Level {
    Identities,
    Inequality,
    Machinery,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub a: u32,
    pub b: u32,
    pub k: u32,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub value: ExactRational,
    pub period: u32,
    pub residues: Vec<u32>,
    pub states_explored: u64,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub window: Vec<u32>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFlags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub main_inequality: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub haralambis: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1_chains: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1_mapping: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_matches: Option<bool>,
    pub windows_checked: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationFlags {
    pub fn passed(&self) -> bool {
        [self.identities, self.main_inequality, self.haralambis, self.m1_chains, self.k1_mapping, self.oracle_matches]
            .iter()
            .all(|f| f.unwrap_or(true))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub raw: Params,
    pub canonical: Params,
    pub g: u32,
    pub swapped: bool,
    pub d: u32,
    pub r: u32,
    pub n1: u32,
    pub n2: u32,
    pub case_tag: CaseTag,
    pub delta: ExactRational,
    pub theorem_status: TheoremStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationFlags>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuReport {
    pub distances: Vec<u32>,
    #[serde(flatten)]
    pub oracle: OracleReport,
}

impl InstanceReport {
    pub fn new(raw: &RawParams) -> Self {
        let p = raw.canonicalize();
        let bd = density(raw);
        InstanceReport {
            raw: Params { a: raw.a, b: raw.b, k: raw.k, m: raw.m },
            canonical: Params { a: p.a, b: p.b, k: p.k, m: p.m },
            g: p.g,
            swapped: p.swapped,
            d: bd.d,
            r: bd.r,
            n1: bd.n1,
            n2: bd.n2,
            case_tag: bd.case_tag,
            delta: bd.delta,
            theorem_status: bd.theorem_status,
            oracle: None,
            verification: None,
        }
    }

    /// `oracle >= delta`, with equality outside the conjectured regime.
    pub fn oracle_consistent(&self) -> Option<bool> {
        let value = self.oracle.as_ref()?.value;
        Some(if self.theorem_status == TheoremStatus::Conjectured { value >= self.delta } else { value == self.delta })
    }
}

/// Outcome of a subcommand that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A check failed or a lower bound was violated; details are in the output.
    Failed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => EXIT_OK,
            Status::Failed => EXIT_FAILED,
        }
    }
}

/// Exit code for an error that stopped a subcommand.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        Error::Lemma(_) => EXIT_FAILED,
        Error::InvalidInput(_)
        | Error::WindowTooShort { .. }
        | Error::NotInT { .. }
        | Error::UnsupportedRegime { .. }
        | Error::WrongRegime(_) => EXIT_INVALID,
    }
}

fn raw_params(p: &ParamArgs) -> densitypack::Result<RawParams> {
    RawParams::new(p.a, p.b, p.k, p.m)
}

pub fn oracle_report(m: &DifferenceSet, limits: &Limits) -> densitypack::Result<OracleReport> {
    let r = mu_exact(m, limits)?;
    Ok(OracleReport {
        value: r.value,
        period: r.witness.period,
        residues: r.witness.residues,
        states_explored: r.states_explored,
        method: r.method,
    })
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> densitypack::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(io_error(e)),
        _ => Ok(()),
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidInput(format!("output: {e}"))
}

fn distance_set(distances: &[u32]) -> densitypack::Result<DifferenceSet> {
    DifferenceSet::new(distances.to_vec())
}

/// Runs one subcommand, writing its report to `out`.
pub fn execute(cli: &Cli, limits: &Limits, out: &mut dyn Write) -> densitypack::Result<Status> {
    match &cli.command {
        Command::Density { params, oracle } => {
            let raw = raw_params(params)?;
            let mut report = InstanceReport::new(&raw);
            if *oracle {
                report.oracle = Some(oracle_report(&build_m(&raw.canonicalize()), limits)?);
            }
            write_json(out, &report)?;
            Ok(if report.oracle_consistent() == Some(false) { Status::Failed } else { Status::Ok })
        }
        Command::Mu { distances } => {
            let m = distance_set(distances)?;
            let report = MuReport { distances: m.elements().to_vec(), oracle: oracle_report(&m, limits)? };
            write_json(out, &report)?;
            Ok(Status::Ok)
        }
        Command::Witness { params, distances } => {
            let m = match (params.a, distances) {
                (Some(a), None) => {
                    let raw = RawParams::new(a, params.b.unwrap_or(0), params.k.unwrap_or(0), params.m.unwrap_or(0))?;
                    let p = raw.canonicalize();
                    build_m(&p).scaled(p.g)
                }
                (None, Some(d)) => distance_set(d)?,
                _ => return Err(Error::InvalidInput("give either --a/--b/--k/--m or --distances".into())),
            };
            write_json(out, &MuReport { distances: m.elements().to_vec(), oracle: oracle_report(&m, limits)? })?;
            Ok(Status::Ok)
        }
        Command::Verify { params, level, conjecture } => {
            let report = verify(&raw_params(params)?, *level, *conjecture, limits)?;
            write_json(out, &report)?;
            let ok = report.verification.as_ref().is_none_or(VerificationFlags::passed);
            Ok(if ok { Status::Ok } else { Status::Failed })
        }
        Command::Sweep { a_max, k_max, m_max, weight_cap, output } => {
            let rows = sweep(*a_max, *k_max, *m_max, *weight_cap, limits);
            let violated = rows.iter().any(|r| r.mu.is_some_and(|mu| mu < r.report.delta));
            match output {
                Some(path) => {
                    let file = std::fs::File::create(path).map_err(io_error)?;
                    write_csv(file, &rows)?;
                }
                None => write_csv(&mut *out, &rows)?,
            }
            Ok(if violated { Status::Failed } else { Status::Ok })
        }
    }
}

fn record(flags: &mut VerificationFlags, check: &str, rep: &VerificationReport) -> bool {
    flags.windows_checked += rep.windows_checked;
    if let Outcome::Counterexample { window, detail } = &rep.outcome {
        flags.counterexamples.push(Counterexample {
            check: check.to_string(),
            window: window.elements(),
            detail: detail.clone(),
        });
    }
    rep.passed()
}

/// Runs the checks up to `level` on the canonical instance.
pub fn verify(raw: &RawParams, level: Level, conjecture: bool, limits: &Limits) -> densitypack::Result<InstanceReport> {
    let p = raw.canonicalize();
    let mut report = InstanceReport::new(raw);
    let mut flags = VerificationFlags::default();

    let rep = verify_counting_identities(&p, limits)?;
    flags.identities = Some(record(&mut flags, "identities", &rep));

    if level >= Level::Inequality {
        let rep = check_main_inequality(&p, limits, conjecture)?;
        flags.main_inequality = Some(record(&mut flags, "main_inequality", &rep));
        flags.haralambis = Some(certify(&p, report.delta, limits, &mut flags)?);
    }
    if level >= Level::Machinery {
        if !p.is_proved_regime() {
            return Err(Error::UnsupportedRegime { k: p.k, m: p.m });
        }
        if p.m == 1 {
            let rep = verify_m1_all(&p, limits)?;
            flags.m1_chains = Some(record(&mut flags, "m1_chains", &rep));
        }
        if p.k == 1 {
            let rep = verify_k1_all(&p, limits)?;
            flags.k1_mapping = Some(record(&mut flags, "k1_mapping", &rep));
        }
    }
    if level >= Level::Full {
        report.oracle = Some(oracle_report(&build_m(&p), limits)?);
        flags.oracle_matches = report.oracle_consistent();
    }
    report.verification = Some(flags);
    Ok(report)
}

fn certify(
    p: &CanonicalParams,
    delta: ExactRational,
    limits: &Limits,
    flags: &mut VerificationFlags,
) -> densitypack::Result<bool> {
    Ok(match haralambis_certify(&build_m(p), delta, &[p.n1(), p.n2()], limits)? {
        Certificate::Certified { windows_checked } => {
            flags.windows_checked += windows_checked;
            true
        }
        Certificate::Counterexample(w) => {
            flags.counterexamples.push(Counterexample {
                check: "haralambis".into(),
                window: w.elements(),
                detail: format!("density above {delta} at both n1 = {} and n2 = {}", p.n1(), p.n2()),
            });
            false
        }
    })
}

/// One sweep instance; `mu` is `None` when the oracle hit a resource limit.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub report: InstanceReport,
    pub mu: Option<ExactRational>,
}

/// Every `2 <= a <= a_max`, `1 <= b < a`, `k <= k_max`, `m <= m_max` with
/// `ka + mb <= weight_cap`, in lexicographic order, oracle run on the
/// unreduced difference set.
pub fn sweep(a_max: u32, k_max: u32, m_max: u32, weight_cap: u32, limits: &Limits) -> Vec<SweepRow> {
    let mut instances = Vec::new();
    for a in 2..=a_max {
        for b in 1..a {
            for k in 1..=k_max {
                for m in 1..=m_max {
                    if u64::from(k) * u64::from(a) + u64::from(m) * u64::from(b) <= u64::from(weight_cap) {
                        instances.push(RawParams::new(a, b, k, m).expect("positive parameters"));
                    }
                }
            }
        }
    }
    limits.exec.map(&instances, |raw| {
        let p = raw.canonicalize();
        let m = build_m(&p).scaled(p.g);
        let inner = Limits { exec: densitypack::Exec::Sequential, ..*limits };
        let mu = match mu_exact(&m, &inner) {
            Ok(r) => Some(r.value),
            Err(e) => {
                eprintln!("skipping ({}, {}, {}, {}): {e}", raw.a, raw.b, raw.k, raw.m);
                None
            }
        };
        SweepRow { report: InstanceReport::new(raw), mu }
    })
}

pub const SWEEP_HEADER: [&str; 14] =
    ["a", "b", "k", "m", "g", "d", "r", "case", "delta_num", "delta_den", "mu_num", "mu_den", "equal", "status"];

pub fn write_csv<W: Write>(out: W, rows: &[SweepRow]) -> densitypack::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let fail = |e: csv::Error| Error::InvalidInput(format!("output: {e}"));
    w.write_record(SWEEP_HEADER).map_err(fail)?;
    for row in rows {
        let r = &row.report;
        let (mu_num, mu_den, equal) = match row.mu {
            Some(mu) => (mu.num().to_string(), mu.den().to_string(), (mu == r.delta).to_string()),
            None => (String::new(), String::new(), "skipped".to_string()),
        };
        w.write_record([
            r.raw.a.to_string(),
            r.raw.b.to_string(),
            r.raw.k.to_string(),
            r.raw.m.to_string(),
            r.g.to_string(),
            r.d.to_string(),
            r.r.to_string(),
            format!("{:?}", r.case_tag),
            r.delta.num().to_string(),
            r.delta.den().to_string(),
            mu_num,
            mu_den,
            equal,
            format!("{:?}", r.theorem_status),
        ])
        .map_err(fail)?;
    }
    w.flush().map_err(|e| Error::InvalidInput(format!("output: {e}")))
}
