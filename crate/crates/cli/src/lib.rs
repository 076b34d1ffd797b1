//! Command-line front end: the algebra file format, reports, and the consistency suite.

pub mod format;
pub mod replay;
pub mod report;
pub mod suite;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use liealg::algebra::{killing, killing_gram, series, simplicity_status};
use liealg::arith::Vector;
use liealg::families::{
    aff1, case_i_ii, case_iii, case_iv, case_v, depth2_status, heisenberg, mna_status, prototype_instance, sl2,
    FamilyInstance, FamilyTag, DEFAULT_SAMPLES,
};
use liealg::oracle::{depth_bruteforce, property_bruteforce, reduce_mod_p, Property};
use liealg::quat::{certified_report, pure_lie_algebra};
use liealg::spectral::{anisotropy_status, element_report, rank, regularity_status, DEFAULT_RANK_DIM_BOUND};
use liealg::{FieldSpec, LieAlgebra, LieError, Mat, SearchBudget};
use serde_json::Value;

use format::{emit_algebra, parse_algebra, FormatError};
use report::{sha256_hex, to_value, Report, Verdict};
use suite::{verify_suite, SuiteOptions, Zoo};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "liealg", version, about = "Exact structure checks for Lie algebras given by structure constants")]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Algebra file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Candidate budget for searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Height bound for searches.
    #[arg(long, global = true)]
    height: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckProperty {
    Anisotropic,
    Regular,
    Mna,
    Depth2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Sl2,
    Heisenberg,
    Aff1,
    CaseI,
    CaseIi,
    CaseIii,
    CaseIv,
    CaseV,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide one property.
    Check {
        #[arg(value_enum)]
        property: CheckProperty,
    },
    /// Series, Killing form, rank and simplicity.
    Analyze,
    /// Spectral data of one element.
    Element {
        /// Comma-separated canonical scalars.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Generic rank with its coefficient certificate.
    Rank,
    /// Write a family instance as an algebra file.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// JSON object of parameters.
        #[arg(long, default_value = "{}")]
        params: String,
    },
    /// Exhaustive depth over F_p.
    DepthFp {
        #[arg(long)]
        p: u64,
    },
    /// Quaternion algebra (a, b) over Q.
    Quat {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Cross-check the deciders against each other and the F_p oracle.
    VerifySuite {
        #[arg(long, value_enum, default_value = "all")]
        zoo: Zoo,
        /// Add a fixture violating Jacobi.
        #[arg(long)]
        include_corrupted: bool,
    },
}

/// Failure before a report exists.
enum Abort {
    Usage(String),
    Input(String),
    /// Output already written.
    Exit(i32),
}

impl From<FormatError> for Abort {
    fn from(e: FormatError) -> Self {
        Abort::Input(e.to_string())
    }
}

impl From<LieError> for Abort {
    fn from(e: LieError) -> Self {
        Abort::Input(e.to_string())
    }
}

struct Ctx {
    input: Option<PathBuf>,
    budget: SearchBudget,
    digest: Option<String>,
}

impl Ctx {
    fn algebra(&mut self) -> Result<LieAlgebra, Abort> {
        let path = self.input.as_ref().ok_or_else(|| Abort::Usage("this command needs --input FILE".into()))?;
        let bytes = std::fs::read(path).map_err(|e| Abort::Input(format!("{}: {e}", path.display())))?;
        self.digest = Some(sha256_hex(&bytes));
        Ok(parse_algebra(&bytes)?)
    }
}

fn budget_unknown(e: LieError) -> Result<Verdict, Abort> {
    match e {
        LieError::BudgetGuardExceeded { .. } | LieError::DimensionBudgetExceeded { .. } => {
            Ok(Verdict::unknown("guard", e.to_string()))
        }
        e => Err(e.into()),
    }
}

fn brute(l: &LieAlgebra, name: &str, which: Property) -> Result<Verdict, Abort> {
    match property_bruteforce(l, which) {
        Ok(v) => Ok(Verdict::check(name, v.holds, to_value(&v))),
        Err(e) => budget_unknown(e).map(|v| Verdict { name: name.into(), ..v }),
    }
}

fn check(l: &LieAlgebra, prop: CheckProperty, budget: &SearchBudget) -> Result<Verdict, Abort> {
    if !l.field().is_rationals() {
        return match prop {
            CheckProperty::Anisotropic => brute(l, "anisotropic", Property::Anisotropic),
            CheckProperty::Regular => brute(l, "regular", Property::Regular),
            CheckProperty::Mna => brute(l, "mna", Property::Mna),
            CheckProperty::Depth2 => match depth_bruteforce(l) {
                Ok(d) => Ok(Verdict::check("depth2", d.depth == 2, to_value(&d))),
                Err(e) => budget_unknown(e).map(|v| Verdict { name: "depth2".into(), ..v }),
            },
        };
    }
    Ok(match prop {
        CheckProperty::Anisotropic => {
            let t = anisotropy_status(l, budget)?;
            let r = t.witness().map(|w| replay::anisotropy(l, w)).transpose()?;
            Verdict::tri("anisotropic", &t, r)
        }
        CheckProperty::Regular => {
            let t = match regularity_status(l, budget) {
                Ok(t) => t,
                Err(e) => return budget_unknown(e).map(|v| Verdict { name: "regular".into(), ..v }),
            };
            let r = t.witness().map(|w| replay::regularity(l, w)).transpose()?;
            Verdict::tri("regular", &t, r)
        }
        CheckProperty::Mna => {
            let t = mna_status(l, budget)?;
            let r = t.witness().map(|w| replay::mna(l, w));
            Verdict::tri("mna", &t, r)
        }
        CheckProperty::Depth2 => {
            let t = depth2_status(l, budget)?;
            let r = t.witness().map(|w| replay::depth2(l, w, budget)).transpose()?;
            Verdict::tri("depth2", &t, r)
        }
    })
}

fn analyze(l: &LieAlgebra) -> Result<Vec<Verdict>, Abort> {
    let mut out = vec![Verdict::info("field", to_value(&l.field())), Verdict::info("dim", l.dim().into())];
    out.push(Verdict::info("series", to_value(&series(l))));
    if l.field().is_rationals() {
        out.push(Verdict::info("killing", to_value(&killing(l)?)));
        out.push(Verdict::info("simple", to_value(&simplicity_status(l)?)));
    } else {
        out.push(Verdict::info("killing_gram", to_value(&killing_gram(l))));
    }
    out.push(if l.dim() <= DEFAULT_RANK_DIM_BOUND {
        Verdict::info("rank", to_value(&rank(l)?))
    } else {
        Verdict::info("rank", format!("not computed above dimension {DEFAULT_RANK_DIM_BOUND}").into())
    });
    Ok(out)
}

fn parse_scalars(field: FieldSpec, s: &str) -> Result<Vector, Abort> {
    s.split(',')
        .map(|t| field.parse_canonical(t.trim()).map_err(Abort::Usage))
        .collect()
}

fn param_field(p: &Value) -> Result<FieldSpec, Abort> {
    match p.get("field") {
        None => Ok(FieldSpec::Rationals),
        Some(Value::String(s)) if s == "Q" => Ok(FieldSpec::Rationals),
        Some(v) => match v.get("Fp").and_then(Value::as_u64) {
            Some(p) => FieldSpec::prime(p).map_err(|e| Abort::Usage(e.to_string())),
            None => Err(Abort::Usage(format!("bad field {v}"))),
        },
    }
}

fn param_matrix(field: FieldSpec, v: &Value) -> Result<Mat, Abort> {
    let bad = || Abort::Usage(format!("expected a square matrix of scalar strings, got {v}"));
    let rows = v.as_array().ok_or_else(bad)?;
    let mut out = Vec::new();
    for r in rows {
        let r = r.as_array().filter(|r| r.len() == rows.len()).ok_or_else(bad)?;
        let row: Result<Vector, Abort> = r
            .iter()
            .map(|c| {
                let s = c.as_str().ok_or_else(bad)?;
                field.parse_canonical(s).map_err(Abort::Usage)
            })
            .collect();
        out.push(row?);
    }
    Ok(Mat::from_rows(field, rows.len(), out))
}

fn param_matrices(field: FieldSpec, p: &Value) -> Result<Vec<Mat>, Abort> {
    let rho = p.get("rho").and_then(Value::as_array).ok_or_else(|| Abort::Usage("params need \"rho\"".into()))?;
    rho.iter().map(|m| param_matrix(field, m)).collect()
}

fn param_quaternion(v: &Value) -> Result<LieAlgebra, Abort> {
    let get = |k: &str| -> Result<num_rational::BigRational, Abort> {
        let s = v.get(k).and_then(Value::as_str).ok_or_else(|| Abort::Usage(format!("params need \"{k}\"")))?;
        let q = FieldSpec::Rationals.parse_canonical(s).map_err(Abort::Usage)?;
        Ok(q.as_rational().expect("rational").clone())
    };
    pure_lie_algebra(&get("a")?, &get("b")?).map_err(|e| Abort::Usage(e.to_string()))
}

fn construct(family: Family, params: &str, budget: &SearchBudget) -> Result<FamilyInstance, Abort> {
    let p: Value = serde_json::from_str(params).map_err(|e| Abort::Usage(format!("--params: {e}")))?;
    let field = param_field(&p)?;
    let usage = |e: LieError| Abort::Usage(e.to_string());
    let tag_of = |f: Family| match f {
        Family::Sl2 => FamilyTag::Sl2,
        Family::Heisenberg => FamilyTag::Heisenberg,
        _ => FamilyTag::Aff1,
    };
    Ok(match family {
        Family::Sl2 | Family::Heisenberg | Family::Aff1 => {
            prototype_instance(tag_of(family), field).expect("prototype tag")
        }
        Family::CaseI | Family::CaseIi => {
            let m = param_matrix(field, p.get("m").ok_or_else(|| Abort::Usage("params need \"m\"".into()))?)?;
            let inst = case_i_ii(&m).map_err(usage)?;
            let want = if matches!(family, Family::CaseI) { FamilyTag::CaseI } else { FamilyTag::CaseII };
            if inst.tag != want {
                return Err(Abort::Usage(format!("trace of m selects {:?}", inst.tag)));
            }
            inst
        }
        Family::CaseIii => case_iii(&param_quaternion(&p)?, budget).map_err(usage)?,
        Family::CaseIv => {
            let s = match p.get("s") {
                Some(Value::String(n)) if n == "aff1" => aff1(field),
                Some(Value::String(n)) if n == "sl2" => sl2(field),
                Some(Value::String(n)) if n == "heisenberg" => heisenberg(field),
                Some(q @ Value::Object(_)) => param_quaternion(q)?,
                _ => return Err(Abort::Usage("params need \"s\": aff1, sl2, or {\"a\", \"b\"}".into())),
            };
            case_iv(&s, &param_matrices(s.field(), &p)?, DEFAULT_SAMPLES, budget).map_err(usage)?
        }
        Family::CaseV => case_v(&param_matrices(field, &p)?, DEFAULT_SAMPLES, budget).map_err(usage)?,
    })
}

fn depth_fp(l: &LieAlgebra, p: u64) -> Result<Verdict, Abort> {
    let lp = match l.field() {
        FieldSpec::Rationals => reduce_mod_p(l, p)?,
        f if f.characteristic() == p => l.clone(),
        f => return Err(Abort::Usage(format!("input is over {f}, not F_{p}"))),
    };
    match depth_bruteforce(&lp) {
        Ok(d) => Ok(Verdict::info("depth", to_value(&d))),
        Err(e) => budget_unknown(e).map(|v| Verdict { name: "depth".into(), ..v }),
    }
}

fn quat(a: &str, b: &str, budget: &SearchBudget) -> Result<Vec<Verdict>, Abort> {
    let parse = |s: &str| -> Result<num_rational::BigRational, Abort> {
        let q = FieldSpec::Rationals.parse_canonical(s).map_err(Abort::Usage)?;
        Ok(q.as_rational().expect("rational").clone())
    };
    let (a, b) = (parse(a)?, parse(b)?);
    let rep = certified_report(&a, &b).map_err(|e| Abort::Usage(e.to_string()))?;
    let l = pure_lie_algebra(&a, &b)?;
    Ok(vec![
        Verdict::info("quaternion", to_value(&rep)),
        Verdict::info("anisotropic", to_value(&anisotropy_status(&l, budget)?)),
    ])
}

fn execute(cli: &Cli, ctx: &mut Ctx, out: &mut dyn Write, err: &mut dyn Write) -> Result<Vec<Verdict>, Abort> {
    let budget = ctx.budget;
    Ok(match &cli.cmd {
        Cmd::Check { property } => {
            let l = ctx.algebra()?;
            vec![check(&l, *property, &budget)?]
        }
        Cmd::Analyze => analyze(&ctx.algebra()?)?,
        Cmd::Element { vector } => {
            let l = ctx.algebra()?;
            let x = parse_scalars(l.field(), vector)?;
            if x.len() != l.dim() {
                return Err(Abort::Usage(format!("vector has {} entries, algebra has dimension {}", x.len(), l.dim())));
            }
            vec![Verdict::info("element", to_value(&element_report(&l, &x)?))]
        }
        Cmd::Rank => vec![Verdict::info("rank", to_value(&rank(&ctx.algebra()?)?))],
        Cmd::Construct { family, params } => {
            let inst = construct(*family, params, &budget)?;
            out.write_all(emit_algebra(&inst.algebra).as_bytes()).ok();
            let code = match inst.validation {
                liealg::TriState::True(_) => 0,
                liealg::TriState::False(_) => 1,
                liealg::TriState::Unknown(_) => 2,
            };
            let line = if cli.json { to_value(&inst).to_string() } else { format!("{:?}: {}", inst.tag, inst.validation.label()) };
            writeln!(err, "{line}").ok();
            return Err(Abort::Exit(code));
        }
        Cmd::DepthFp { p } => vec![depth_fp(&ctx.algebra()?, *p)?],
        Cmd::Quat { a, b } => quat(a, b, &budget)?,
        Cmd::VerifySuite { zoo, include_corrupted } => {
            let rep = verify_suite(&SuiteOptions {
                zoo: *zoo,
                seed: cli.seed,
                include_corrupted: *include_corrupted,
                budget,
            });
            let status = if rep.failed() {
                report::Status::False
            } else if rep.has_unknown() {
                report::Status::Unknown
            } else {
                report::Status::True
            };
            vec![Verdict { name: "suite".into(), status, checked: true, replayed: None, detail: to_value(&rep) }]
        }
    })
}

/// Runs one command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == 0 {
                write!(out, "{text}").ok();
            } else {
                write!(err, "{text}").ok();
            }
            return code;
        }
    };
    let started = Instant::now();
    let mut ctx = Ctx {
        input: cli.input.clone(),
        budget: SearchBudget::new(cli.height.unwrap_or(10), cli.budget.unwrap_or(10_000)),
        digest: None,
    };
    let verdicts = match execute(&cli, &mut ctx, out, err) {
        Ok(v) => v,
        Err(Abort::Exit(code)) => return code,
        Err(Abort::Usage(m)) => {
            writeln!(err, "usage error: {m}").ok();
            return EXIT_USAGE;
        }
        Err(Abort::Input(m)) => {
            writeln!(err, "input error: {m}").ok();
            return EXIT_INPUT;
        }
    };
    let report = Report {
        command: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        input_digest: ctx.digest,
        seed: cli.seed,
        budget: ctx.budget,
        verdicts,
    };
    if cli.json {
        write!(out, "{}", report.to_json()).ok();
    } else {
        write!(out, "{}", report.to_text()).ok();
        writeln!(out, "elapsed: {} ms", started.elapsed().as_millis()).ok();
    }
    report.exit_code()
}
