//! `knutson`: command-line front end for Gröbner bases, Knutson families and
//! the Hankel verification suites.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use knutson::combinatorics::hilbert_summary;
use knutson::field::{primes_between, FieldDescriptor};
use knutson::groebner::{ideal_contains, ideal_member, Ideal};
use knutson::ideal_ops::{ideal_colon, ideal_intersect, ideal_sum};
use knutson::knutson::{certify_family, closure, KnutsonError, KnutsonFamily, WitnessPolicy};
use knutson::modp::{prime_scan, BadReason, ReductionReport, ReductionStatus};
use knutson::poly::{parse_polynomial, Polynomial, Ring, TermOrder};
use knutson::report::{Check, FamilyReport};
use knutson::suite::{run_suite, SuiteError, SuiteName, SuiteParams, SuiteReport, DEFAULT_MAX_M};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Failure(String),
    /// Output was produced but at least one check failed.
    #[error("one or more checks failed")]
    CheckFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed | CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

fn from_knutson(e: KnutsonError) -> CliError {
    match e {
        KnutsonError::ClosureCapExceeded { reason, .. } => CliError::Cap(reason),
        KnutsonError::ZeroSeed | KnutsonError::SeedRejected(_) => usage(e),
        other => failure(other),
    }
}

fn from_suite(e: SuiteError) -> CliError {
    match e {
        SuiteError::CapExceeded(r) => CliError::Cap(r),
        SuiteError::UnknownSuite(_) | SuiteError::BadParams(_) => usage(e),
        other => failure(other),
    }
}

#[derive(Parser)]
#[command(name = "knutson", version, about = "Exact Gröbner bases, Knutson ideal families and Hankel determinantal checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RingArgs {
    /// Number of variables x1..xN.
    #[arg(long)]
    vars: usize,
    /// lex, grevlex, or matrix:<w11,w12,..;w21,..>
    #[arg(long, default_value = "lex")]
    order: String,
    /// 0 for the rationals, otherwise a prime.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Print JSON on stdout instead of the table.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, alias = "report")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of an ideal.
    Gb {
        #[command(flatten)]
        ring: RingArgs,
        /// Generators, comma separated, or @file.
        ideal: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Initial ideal of an ideal.
    Initial {
        #[command(flatten)]
        ring: RingArgs,
        ideal: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ideal membership of a polynomial; exits 1 when it is not a member.
    Member {
        #[command(flatten)]
        ring: RingArgs,
        ideal: String,
        poly: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Equality of two ideals; exits 1 when they differ.
    Equal {
        #[command(flatten)]
        ring: RingArgs,
        left: String,
        right: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sum of two ideals.
    Sum {
        #[command(flatten)]
        ring: RingArgs,
        left: String,
        right: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Intersection of two ideals.
    Intersect {
        #[command(flatten)]
        ring: RingArgs,
        left: String,
        right: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Colon ideal left : right.
    Colon {
        #[command(flatten)]
        ring: RingArgs,
        left: String,
        right: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// h-vector, dimension, height and multiplicity of S/lt(I).
    Hilbert {
        #[command(flatten)]
        ring: RingArgs,
        ideal: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Knutson family of a seed polynomial.
    KnutsonClosure {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        seed: String,
        /// Witness sources, comma separated: default, generators, variables, none.
        #[arg(long, default_value = "default")]
        witnesses: String,
        /// Extra witness polynomial; repeatable.
        #[arg(long = "witness")]
        extra: Vec<String>,
        #[arg(long)]
        max_members: Option<usize>,
        #[arg(long)]
        max_iterations: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hankel determinantal checks.
    Hankel {
        #[command(subcommand)]
        command: HankelCommand,
    },
    /// Initial ideals under reduction modulo primes.
    Modp {
        #[command(subcommand)]
        command: ModpCommand,
    },
    /// Scripted check suites: hankel-square, hankel-rect, modp, squarefree-monomial.
    Suite {
        name: String,
        #[command(flatten)]
        params: SuiteArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Clone)]
struct SuiteArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Primes for the modp suite, comma separated (default: all up to 101).
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Largest m accepted before the run is refused.
    #[arg(long, default_value_t = DEFAULT_MAX_M)]
    max_m: usize,
}

#[derive(Copy, Clone, ValueEnum)]
enum ShapeArg {
    Square,
    Rect,
}

#[derive(Subcommand)]
enum HankelCommand {
    /// Run every check for one Hankel seed.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "square")]
        shape: ShapeArg,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_M)]
        max_m: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Clone)]
struct ModpInput {
    /// File with one generator per line (or comma separated).
    #[arg(long)]
    ideal: PathBuf,
    #[arg(long)]
    vars: usize,
    #[arg(long, default_value = "lex")]
    order: String,
}

#[derive(Subcommand)]
enum ModpCommand {
    /// Compare lt(I mod p) with lt(I) for the listed primes.
    Compare {
        #[command(flatten)]
        input: ModpInput,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare for every prime up to a bound.
    Scan {
        #[command(flatten)]
        input: ModpInput,
        #[arg(long, default_value_t = 100)]
        upto: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

struct Context {
    ring: Ring,
    order: TermOrder,
}

impl Context {
    fn new(vars: usize, order: &str, characteristic: u64) -> Result<Self, CliError> {
        let field = FieldDescriptor::from_characteristic(characteristic).map_err(usage)?;
        let order: TermOrder = order.parse().map_err(usage)?;
        order.check_arity(vars).map_err(usage)?;
        Ok(Context { ring: Ring::new(field, vars), order })
    }

    fn from_ring(args: &RingArgs) -> Result<Self, CliError> {
        Context::new(args.vars, &args.order, args.characteristic)
    }

    fn poly(&self, text: &str) -> Result<Polynomial, CliError> {
        parse_polynomial(text, self.ring, &self.order).map_err(|e| usage(format!("`{text}`: {e}")))
    }

    fn ideal(&self, list: &str) -> Result<Ideal, CliError> {
        let text = match list.strip_prefix('@') {
            Some(path) => read_file(Path::new(path))?,
            None => list.to_string(),
        };
        let gens = split_generators(&text).map(|s| self.poly(s)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(self.ring, gens).map_err(failure)
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn split_generators(text: &str) -> impl Iterator<Item = &str> {
    text.split([',', '\n', ';']).map(str::trim).filter(|s| !s.is_empty() && !s.starts_with('#'))
}

fn emit<T: Serialize>(value: &T, table: &str, output: &OutputArgs) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value).map_err(failure)?;
    if output.json {
        println!("{json}");
    } else {
        print!("{table}");
    }
    if let Some(path) = &output.out {
        fs::write(path, json + "\n").map_err(|e| failure(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct BasisOutput {
    order: String,
    field: String,
    key: String,
    basis: Vec<String>,
}

fn basis_output(ctx: &Context, ideal: &Ideal) -> Result<(BasisOutput, String), CliError> {
    let gb = ideal.groebner(&ctx.order).map_err(failure)?;
    let basis: Vec<String> = gb.basis().iter().map(ToString::to_string).collect();
    let table = basis.iter().map(|g| format!("{g}\n")).collect();
    let out = BasisOutput { order: ctx.order.to_string(), field: ctx.ring.field().to_string(), key: gb.key(), basis };
    Ok((out, table))
}

fn binary_op(
    ring: &RingArgs,
    left: &str,
    right: &str,
    output: &OutputArgs,
    op: impl Fn(&Ideal, &Ideal, &TermOrder) -> Result<Ideal, knutson::ideal_ops::IdealOpError>,
) -> Result<(), CliError> {
    let ctx = Context::from_ring(ring)?;
    let result = op(&ctx.ideal(left)?, &ctx.ideal(right)?, &ctx.order).map_err(failure)?;
    let (out, table) = basis_output(&ctx, &result)?;
    emit(&out, &table, output)
}

fn checks_table(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("[{mark}] {}\n", c.name));
        if !c.passed {
            s.push_str(&format!("       expected: {}\n       actual:   {}\n", c.expected, c.actual));
        }
    }
    s
}

fn suite_table(report: &SuiteReport) -> String {
    let passed = report.checks.iter().filter(|c| c.passed).count();
    format!(
        "suite {}\n{}{} of {} checks passed\n",
        report.suite,
        checks_table(&report.checks),
        passed,
        report.checks.len()
    )
}

fn family_table(report: &FamilyReport) -> String {
    let mut s = format!("{} members\n", report.members.len());
    for m in &report.members {
        s.push_str(&format!("#{:<3} {}  [{}]\n", m.index, m.key, m.provenance));
    }
    let c = &report.checks;
    s.push_str(&format!(
        "squarefree initial ideals: {}/{}\nunion Gröbner pairs: {}/{}\n",
        c.squarefree_initial, c.members, c.union_groebner, c.pairs
    ));
    s
}

fn witness_policy(ctx: &Context, spec: &str, extra: &[String]) -> Result<WitnessPolicy, CliError> {
    let mut policy = WitnessPolicy::empty();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part {
            "default" => {
                policy.member_generators = true;
                policy.single_variables = true;
            }
            "generators" => policy.member_generators = true,
            "variables" => policy.single_variables = true,
            "none" => {}
            other => return Err(usage(format!("unknown witness source `{other}`"))),
        }
    }
    let user = extra.iter().map(|w| ctx.poly(w)).collect::<Result<Vec<_>, _>>()?;
    Ok(policy.with_witnesses(user))
}

fn report_family(family: &KnutsonFamily, output: &OutputArgs) -> Result<bool, CliError> {
    let cert = certify_family(family).map_err(from_knutson)?;
    let passed = cert.passed();
    let report = FamilyReport::new(family, cert);
    emit(&report, &family_table(&report), output)?;
    Ok(passed)
}

fn suite(name: SuiteName, params: SuiteParams, output: &OutputArgs) -> Result<(), CliError> {
    let report = run_suite(name, &params).map_err(from_suite)?;
    emit(&report, &suite_table(&report), output)?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}

fn scan_table(reports: &[ReductionReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let verdict = match r.status {
            ReductionStatus::Good => "good",
            ReductionStatus::Bad(BadReason::NotPrime) => "bad: not prime",
            ReductionStatus::Bad(BadReason::ZeroReduction) => "bad: ideal vanishes",
            ReductionStatus::Bad(BadReason::InitialMismatch) => "bad: initial ideal changes",
        };
        let lt_p = r.lt_of_reduction.as_ref().map_or_else(|| "-".to_string(), ToString::to_string);
        s.push_str(&format!("p = {:<6} {verdict}  lt(I mod p) = {lt_p}\n", r.prime));
    }
    s
}

fn modp(input: &ModpInput, primes: &[u64], output: &OutputArgs) -> Result<(), CliError> {
    let ctx = Context::new(input.vars, &input.order, 0)?;
    let ideal = ctx.ideal(&read_file(&input.ideal)?)?;
    let reports = prime_scan(&ideal, primes, &ctx.order).map_err(failure)?;
    emit(&reports, &scan_table(&reports), output)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gb { ring, ideal, output } => {
            let ctx = Context::from_ring(&ring)?;
            let (out, table) = basis_output(&ctx, &ctx.ideal(&ideal)?)?;
            emit(&out, &table, &output)
        }
        Command::Initial { ring, ideal, output } => {
            let ctx = Context::from_ring(&ring)?;
            let lt = ctx.ideal(&ideal)?.initial_ideal(&ctx.order).map_err(failure)?;
            emit(&lt, &format!("{lt}\n"), &output)
        }
        Command::Member { ring, ideal, poly, output } => {
            let ctx = Context::from_ring(&ring)?;
            let member = ideal_member(&ctx.poly(&poly)?, &ctx.ideal(&ideal)?, &ctx.order).map_err(failure)?;
            emit(&serde_json::json!({ "member": member }), &format!("{member}\n"), &output)?;
            if member {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        Command::Equal { ring, left, right, output } => {
            let ctx = Context::from_ring(&ring)?;
            let (a, b) = (ctx.ideal(&left)?, ctx.ideal(&right)?);
            let left_in_right = ideal_contains(&b, &a, &ctx.order).map_err(failure)?;
            let right_in_left = ideal_contains(&a, &b, &ctx.order).map_err(failure)?;
            let equal = left_in_right && right_in_left;
            let value = serde_json::json!({
                "equal": equal,
                "left_in_right": left_in_right,
                "right_in_left": right_in_left,
            });
            emit(&value, &format!("{equal}\n"), &output)?;
            if equal {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        Command::Sum { ring, left, right, output } => binary_op(&ring, &left, &right, &output, |a, b, _| ideal_sum(a, b)),
        Command::Intersect { ring, left, right, output } => binary_op(&ring, &left, &right, &output, ideal_intersect),
        Command::Colon { ring, left, right, output } => binary_op(&ring, &left, &right, &output, ideal_colon),
        Command::Hilbert { ring, ideal, output } => {
            let ctx = Context::from_ring(&ring)?;
            let lt = ctx.ideal(&ideal)?.initial_ideal(&ctx.order).map_err(failure)?;
            let h = hilbert_summary(&lt);
            let show = |o: Option<usize>| o.map_or_else(|| "-".to_string(), |v| v.to_string());
            let table = format!(
                "h-vector:     {}\ndimension:    {}\nheight:       {}\nmultiplicity: {}\n",
                h.h_vector,
                show(h.dimension),
                show(h.height),
                h.multiplicity
            );
            emit(&h, &table, &output)
        }
        Command::KnutsonClosure { ring, seed, witnesses, extra, max_members, max_iterations, output } => {
            let ctx = Context::from_ring(&ring)?;
            let f = ctx.poly(&seed)?;
            let mut policy = witness_policy(&ctx, &witnesses, &extra)?;
            if let Some(n) = max_members {
                policy.max_members = n;
            }
            if let Some(n) = max_iterations {
                policy.max_iterations = n;
            }
            match closure(&f, &policy, &ctx.order) {
                Ok(family) => {
                    if report_family(&family, &output)? {
                        Ok(())
                    } else {
                        Err(CliError::CheckFailed)
                    }
                }
                Err(KnutsonError::ClosureCapExceeded { reason, partial }) => {
                    report_family(&partial, &output)?;
                    Err(CliError::Cap(reason))
                }
                Err(e) => Err(from_knutson(e)),
            }
        }
        Command::Hankel { command: HankelCommand::Verify { m, shape, characteristic, max_m, output } } => {
            let name = match shape {
                ShapeArg::Square => SuiteName::HankelSquare,
                ShapeArg::Rect => SuiteName::HankelRect,
            };
            let params = SuiteParams { m, characteristic, max_m, ..SuiteParams::default() };
            suite(name, params, &output)
        }
        Command::Modp { command: ModpCommand::Compare { input, primes, output } } => modp(&input, &primes, &output),
        Command::Modp { command: ModpCommand::Scan { input, upto, output } } => {
            modp(&input, &primes_between(2, upto), &output)
        }
        Command::Suite { name, params, output } => {
            let name: SuiteName = name.parse().map_err(from_suite)?;
            let defaults = SuiteParams::default();
            let params = SuiteParams {
                m: params.m,
                n: params.n,
                characteristic: params.characteristic,
                primes: params.primes.unwrap_or(defaults.primes),
                max_m: params.max_m,
            };
            suite(name, params, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::CheckFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

