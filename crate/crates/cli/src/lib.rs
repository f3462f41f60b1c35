//! Command-line front end for `qbinsum`.
//!
//! [`run`] parses an argument vector, runs the requested sweep and returns the
//! process exit code: `0` when every case holds (or is not applicable), `1`
//! when some case fails, `2` on usage or configuration errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qbinsum::batch::{run_batch, Job};
use qbinsum::cyclo::cyclotomic;
use qbinsum::qcomb::{dset, qbinom, qbinom_factored};
use qbinsum::report::{ReportRecord, Status, VerificationReport};
use qbinsum::sums::{Mode, SumSpec, TripleFamily};
use qbinsum::verify::{Conj2Part, IdentityClaim, Thm1Variant, Thm2Claim, DEFAULT_EXPONENT_BUDGET};
use qbinsum::IntPoly;

pub const JOBS_ENV: &str = "QBINSUM_JOBS";

#[derive(Debug, Parser)]
#[command(
    name = "qbinsum",
    version,
    about = "Exact verification of alternating q-binomial sum congruences"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Pretty, global = true)]
    output: OutputFormat,
    /// Worker threads (defaults to the number of available cores).
    #[arg(long, env = JOBS_ENV, global = true)]
    jobs: Option<usize>,
    /// Largest exponent a full-modulus run may attempt.
    #[arg(long, default_value_t = DEFAULT_EXPONENT_BUDGET, global = true)]
    budget: u64,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run verification sweeps.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Print polynomials, carry sets and factorizations.
    #[command(subcommand)]
    Inspect(InspectCmd),
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// S(n,2) = (-1)^n C(2n,n).
    Eq1 {
        #[arg(long, default_value = "1..10")]
        n: Range,
    },
    /// S(n,3) = (-1)^n C(2n,n) C(3n,n).
    Eq2 {
        #[arg(long, default_value = "1..10")]
        n: Range,
    },
    /// C(2n,n) divides S(n,r).
    Calkin {
        #[arg(long)]
        n: Range,
        #[arg(long)]
        r: Range,
    },
    /// Integer cyclic-product congruence.
    Gjz(Compositions),
    /// Cyclic-product q-congruence.
    Gjzq(Compositions),
    /// Triple-product congruences.
    Conj2 {
        #[arg(long, value_enum, default_value_t = PartArg::All)]
        part: PartArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[command(flatten)]
        nrst: Nrst,
    },
    /// p-adic valuation of S(n,r) for the exponents r the argument needs.
    Thm1 {
        #[arg(long)]
        n: Range,
        #[arg(long, value_enum, default_value_t = VariantArg::PerPrime)]
        variant: VariantArg,
    },
    /// Refined q-congruences with extra [2] and [3] factors.
    Thm2 {
        #[arg(long, value_enum, default_value_t = ClaimArg::All)]
        claim: ClaimArg,
        #[command(flatten)]
        nrst: Nrst,
    },
    /// Valuation lemmas and the inclusion-exclusion decomposition.
    Lemmas {
        #[arg(long)]
        n: Range,
        #[arg(long, default_value = "2,3,5")]
        p: Range,
        #[arg(long)]
        r: Range,
    },
    /// gcd of S(n,r) over a window of exponents (finite evidence only).
    GcdWindow {
        #[arg(long)]
        n: Range,
        #[arg(long, default_value_t = 2)]
        m: u64,
        #[arg(long, default_value_t = 20)]
        w: u64,
    },
    /// q-Lucas congruence modulo Phi_d.
    Qlucas {
        #[arg(long)]
        d: Range,
        #[arg(long)]
        x1: Range,
        #[arg(long)]
        x2: Range,
        #[arg(long)]
        y1: Range,
        #[arg(long)]
        y2: Range,
    },
    /// Check that one polynomial divides another.
    Congruence {
        #[arg(long, allow_hyphen_values = true)]
        dividend: IntPoly,
        #[arg(long, allow_hyphen_values = true)]
        modulus: IntPoly,
    },
}

#[derive(Debug, Args)]
struct Compositions {
    /// A single composition such as "2,3,1" (repeatable).
    #[arg(long, conflicts_with_all = ["h", "parts"])]
    ns: Vec<NumList>,
    /// Sweep all compositions of these lengths...
    #[arg(long, requires = "parts")]
    h: Option<Range>,
    /// ...with each part drawn from this range.
    #[arg(long, requires = "h")]
    parts: Option<Range>,
}

#[derive(Debug, Args)]
struct Nrst {
    #[arg(long)]
    n: Range,
    #[arg(long)]
    r: Range,
    #[arg(long)]
    s: Range,
    #[arg(long)]
    t: Range,
}

#[derive(Debug, Subcommand)]
enum InspectCmd {
    /// Expanded q-binomial and its cyclotomic factorization.
    Qbinom { n: u64, k: i64 },
    /// The carry set D_{n,k}.
    Dset { n: u64, k: i64 },
    /// The cyclotomic polynomial Phi_d.
    Cyclotomic { d: u64 },
    /// Evaluate a sum.
    #[command(subcommand)]
    Sum(SumCmd),
}

#[derive(Debug, Subcommand)]
enum SumCmd {
    Power {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, value_enum, default_value_t = SingleMode::Integer)]
        mode: SingleMode,
    },
    Gjz {
        #[arg(long)]
        ns: NumList,
        #[arg(long, value_enum, default_value_t = SingleMode::Integer)]
        mode: SingleMode,
    },
    Triple {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value_t = SingleMode::Integer)]
        mode: SingleMode,
    },
    Pattern {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u64,
        /// Digit positions, e.g. "1,3".
        #[arg(long)]
        indices: NumList,
        #[arg(long, value_enum, default_value_t = SingleMode::Integer)]
        mode: SingleMode,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PartArg {
    C1,
    C2,
    C3,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Integer,
    Q,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SingleMode {
    Integer,
    Q,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    PerPrime,
    FullModulus,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClaimArg {
    T2c1,
    T2c2,
    T2c3,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    SixFourTwo,
    EightFourTwo,
}

/// Inclusive integer values: `"a..b"`, `"a"`, or a comma list of either.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range(Vec<u64>);

impl Range {
    pub fn values(&self) -> &[u64] {
        &self.0
    }
}

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            match part.split_once("..") {
                Some((lo, hi)) => {
                    let lo = parse_u64(lo)?;
                    let hi = parse_u64(hi.strip_prefix('=').unwrap_or(hi))?;
                    if lo > hi {
                        return Err(format!("empty range {part:?}: lower bound exceeds upper"));
                    }
                    out.extend(lo..=hi);
                }
                None => out.push(parse_u64(part)?),
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(Range(out))
    }
}

/// An ordered list such as a composition `"2,3,1"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumList(Vec<u64>);

impl std::str::FromStr for NumList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let vals = s
            .split(',')
            .map(|p| parse_u64(p.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NumList(vals))
    }
}

fn parse_u64(s: &str) -> Result<u64, String> {
    s.parse().map_err(|_| format!("{s:?} is not a nonnegative integer"))
}

/// Everything a sweep needs besides the command itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub output: OutputFormat,
    pub jobs: usize,
    pub exponent_budget: u64,
    pub report: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<qbinsum::Error> for Failure {
    fn from(e: qbinsum::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs the command line with the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut io::stdout().lock(), &mut io::stderr().lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let jobs = match cli.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, usize::from),
    };
    let config = RunConfig {
        output: cli.output,
        jobs,
        exponent_budget: cli.budget,
        report: cli.report,
    };
    match cli.command {
        Command::Verify(cmd) => {
            let cases = jobs_for(&cmd, &config)?;
            sweep(&cases, &config, out, err)
        }
        Command::Inspect(cmd) => {
            inspect(cmd, out)?;
            Ok(0)
        }
    }
}

fn sweep(cases: &[Job], config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let outcome = run_batch(cases, config.jobs)?;
    match &config.report {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            emit_report(&outcome.reports, config.output, &mut file)?;
            file.flush()?;
        }
        None => emit_report(&outcome.reports, config.output, out)?,
    }
    match outcome.first_failure {
        Some(i) => {
            write!(err, "{}", outcome.reports[i].counterexample_dump())?;
            Ok(1)
        }
        None => Ok(0),
    }
}

fn product(ranges: &[&Range]) -> Vec<Vec<u64>> {
    ranges.iter().fold(vec![Vec::new()], |acc, r| {
        acc.into_iter()
            .flat_map(|prefix| {
                r.values().iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect()
    })
}

fn modes(m: ModeArg) -> Vec<Mode> {
    match m {
        ModeArg::Integer => vec![Mode::Integer],
        ModeArg::Q => vec![Mode::Q],
        ModeArg::Both => vec![Mode::Integer, Mode::Q],
    }
}

fn compositions(c: &Compositions) -> Result<Vec<Vec<u64>>, Failure> {
    if !c.ns.is_empty() {
        return Ok(c.ns.iter().map(|l| l.0.clone()).collect());
    }
    let (Some(h), Some(parts)) = (&c.h, &c.parts) else {
        return Err(Failure::Usage("give --ns, or both --h and --parts".into()));
    };
    Ok(h.values()
        .iter()
        .flat_map(|&len| product(&vec![parts; len as usize]))
        .collect())
}

fn jobs_for(cmd: &VerifyCmd, config: &RunConfig) -> Result<Vec<Job>, Failure> {
    let jobs: Vec<Job> = match cmd {
        VerifyCmd::Eq1 { n } => n
            .values()
            .iter()
            .map(|&n| Job::Identity(IdentityClaim::Eq1 { n }))
            .collect(),
        VerifyCmd::Eq2 { n } => n
            .values()
            .iter()
            .map(|&n| Job::Identity(IdentityClaim::Eq2 { n }))
            .collect(),
        VerifyCmd::Calkin { n, r } => product(&[n, r])
            .into_iter()
            .map(|v| Job::Identity(IdentityClaim::Calkin { n: v[0], r: v[1] }))
            .collect(),
        VerifyCmd::Gjz(c) => compositions(c)?
            .into_iter()
            .map(|ns| Job::Identity(IdentityClaim::Gjz { ns }))
            .collect(),
        VerifyCmd::Gjzq(c) => compositions(c)?
            .into_iter()
            .map(|ns| Job::Identity(IdentityClaim::GjzQ { ns }))
            .collect(),
        VerifyCmd::Conj2 { part, mode, nrst } => {
            let parts = match part {
                PartArg::C1 => vec![Conj2Part::C1],
                PartArg::C2 => vec![Conj2Part::C2],
                PartArg::C3 => vec![Conj2Part::C3],
                PartArg::All => vec![Conj2Part::C1, Conj2Part::C2, Conj2Part::C3],
            };
            let mut jobs = Vec::new();
            for v in product(&[&nrst.n, &nrst.r, &nrst.s, &nrst.t]) {
                for &part in &parts {
                    for mode in modes(*mode) {
                        jobs.push(Job::Identity(IdentityClaim::Conj2 {
                            part,
                            mode,
                            n: v[0],
                            r: v[1],
                            s: v[2],
                            t: v[3],
                        }));
                    }
                }
            }
            jobs
        }
        VerifyCmd::Thm1 { n, variant } => {
            let variant = match variant {
                VariantArg::PerPrime => Thm1Variant::PerPrime,
                VariantArg::FullModulus => Thm1Variant::FullModulus,
            };
            n.values()
                .iter()
                .map(|&n| Job::Thm1 {
                    n,
                    variant,
                    budget: config.exponent_budget,
                })
                .collect()
        }
        VerifyCmd::Thm2 { claim, nrst } => {
            let claims = match claim {
                ClaimArg::T2c1 => vec![Thm2Claim::T2c1],
                ClaimArg::T2c2 => vec![Thm2Claim::T2c2],
                ClaimArg::T2c3 => vec![Thm2Claim::T2c3],
                ClaimArg::All => vec![Thm2Claim::T2c1, Thm2Claim::T2c2, Thm2Claim::T2c3],
            };
            let mut jobs = Vec::new();
            for v in product(&[&nrst.n, &nrst.r, &nrst.s, &nrst.t]) {
                for &claim in &claims {
                    jobs.push(Job::Thm2 {
                        n: v[0],
                        r: v[1],
                        s: v[2],
                        t: v[3],
                        claim,
                    });
                }
            }
            jobs
        }
        VerifyCmd::Lemmas { n, p, r } => product(&[n, p, r])
            .into_iter()
            .map(|v| Job::Lemmas {
                n: v[0],
                p: v[1],
                r: v[2],
            })
            .collect(),
        VerifyCmd::GcdWindow { n, m, w } => n.values().iter().map(|&n| Job::GcdWindow { n, m: *m, w: *w }).collect(),
        VerifyCmd::Qlucas { d, x1, x2, y1, y2 } => product(&[d, x1, x2, y1, y2])
            .into_iter()
            .filter(|v| v[2] < v[0] && v[4] < v[0])
            .map(|v| Job::QLucas {
                d: v[0],
                x1: v[1],
                x2: v[2],
                y1: v[3],
                y2: v[4],
            })
            .collect(),
        VerifyCmd::Congruence { dividend, modulus } => {
            if modulus.is_zero() {
                return Err(Failure::Usage("modulus must be nonzero".into()));
            }
            vec![Job::Congruence {
                dividend: dividend.clone(),
                modulus: modulus.clone(),
            }]
        }
    };
    if jobs.is_empty() {
        return Err(Failure::Usage("the parameter ranges select no cases".into()));
    }
    Ok(jobs)
}

fn single_mode(m: SingleMode) -> Mode {
    match m {
        SingleMode::Integer => Mode::Integer,
        SingleMode::Q => Mode::Q,
    }
}

fn inspect(cmd: InspectCmd, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        InspectCmd::Qbinom { n, k } => {
            writeln!(out, "{}", qbinom(n, k))?;
            writeln!(out, "{}", qbinom_factored(n, k)?)?;
        }
        InspectCmd::Dset { n, k } => writeln!(out, "{}", dset(n, k))?,
        InspectCmd::Cyclotomic { d } => writeln!(out, "{}", cyclotomic(d)?)?,
        InspectCmd::Sum(sum) => {
            let (spec, mode) = match sum {
                SumCmd::Power { n, r, mode } => (SumSpec::Power { n, r }, mode),
                SumCmd::Gjz { ns, mode } => (SumSpec::Gjz { ns: ns.0 }, mode),
                SumCmd::Triple {
                    family,
                    n,
                    r,
                    s,
                    t,
                    mode,
                } => {
                    let family = match family {
                        FamilyArg::SixFourTwo => TripleFamily::SixFourTwo,
                        FamilyArg::EightFourTwo => TripleFamily::EightFourTwo,
                    };
                    (SumSpec::Triple { family, n, r, s, t }, mode)
                }
                SumCmd::Pattern { n, r, p, indices, mode } => {
                    let indices = indices
                        .0
                        .iter()
                        .map(|&a| u32::try_from(a).map_err(|_| Failure::Usage(format!("index {a} too large"))))
                        .collect::<Result<_, _>>()?;
                    (SumSpec::Pattern { n, r, p, indices }, mode)
                }
            };
            writeln!(out, "{}", spec.evaluate(single_mode(mode))?)?;
        }
    }
    Ok(())
}

const CSV_HEADER: [&str; 9] = [
    "claim_id",
    "params",
    "modulus",
    "holds",
    "status",
    "quotient_degree",
    "branch_note",
    "elapsed_ms",
    "remainder",
];

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::NotApplicable => "not_applicable",
    }
}

/// Writes `reports` in the chosen format. Field order follows [`ReportRecord`].
pub fn emit_report(reports: &[VerificationReport], format: OutputFormat, sink: &mut dyn Write) -> io::Result<()> {
    let records: Vec<ReportRecord> = reports.iter().map(VerificationReport::to_record).collect();
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *sink, &records)?;
            writeln!(sink)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *sink);
            w.write_record(CSV_HEADER)?;
            for r in &records {
                w.write_record([
                    r.claim_id.as_str().to_string(),
                    serde_json::to_string(&r.params)?,
                    r.modulus.clone(),
                    r.holds.to_string(),
                    status_text(r.status).to_string(),
                    r.quotient_degree.map(|d| d.to_string()).unwrap_or_default(),
                    r.branch_note.clone(),
                    format!("{:.3}", r.elapsed_ms),
                    r.remainder.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()
        }
        OutputFormat::Pretty => {
            for r in &records {
                write!(
                    sink,
                    "{:<14} {:<20} {}",
                    status_text(r.status),
                    r.claim_id.as_str(),
                    r.params
                )?;
                if !r.modulus.is_empty() {
                    write!(sink, "  modulus: {}", r.modulus)?;
                }
                if let Some(d) = r.quotient_degree {
                    write!(sink, "  quotient degree: {d}")?;
                }
                writeln!(sink)?;
                if !r.branch_note.is_empty() {
                    writeln!(sink, "    note: {}", r.branch_note)?;
                }
                if let Some(rem) = &r.remainder {
                    writeln!(sink, "    remainder: {rem}")?;
                }
            }
            let count = |s: Status| records.iter().filter(|r| r.status == s).count();
            writeln!(
                sink,
                "{} cases: {} hold, {} not applicable, {} fail",
                records.len(),
                count(Status::Holds),
                count(Status::NotApplicable),
                count(Status::Fails)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_syntax() {
        assert_eq!("1..4".parse::<Range>().unwrap().values(), &[1, 2, 3, 4]);
        assert_eq!("3".parse::<Range>().unwrap().values(), &[3]);
        assert_eq!("5,1..2,2".parse::<Range>().unwrap().values(), &[1, 2, 5]);
        assert!("4..1".parse::<Range>().is_err());
        assert!("x".parse::<Range>().is_err());
        assert!("-1..2".parse::<Range>().is_err());
    }

    #[test]
    fn empty_report_is_empty_json_array() {
        let mut buf = Vec::new();
        emit_report(&[], OutputFormat::Json, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().trim(), "[]");
    }

    #[test]
    fn csv_has_header_and_row() {
        let report = qbinsum::verify::verify_identity(&IdentityClaim::Calkin { n: 2, r: 3 }).unwrap();
        let mut buf = Vec::new();
        emit_report(&[report], OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("calkin,"));
        assert!(lines[1].contains(",true,holds,"));
    }

    #[test]
    fn pretty_shows_remainder() {
        let report = qbinsum::verify::verify_congruence("1 + q^2".parse().unwrap(), "1 + q".parse().unwrap()).unwrap();
        let mut buf = Vec::new();
        emit_report(&[report], OutputFormat::Pretty, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("remainder: 2"), "{text}");
    }

    #[test]
    fn inspect_qbinom() {
        let mut out = Vec::new();
        let code = run_with(["qbinsum", "inspect", "qbinom", "4", "2"], &mut out, &mut Vec::new());
        assert_eq!(code, 0);
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "1 + q + 2*q^2 + q^3 + q^4\nPhi_3 * Phi_4\n"
        );
    }
}
