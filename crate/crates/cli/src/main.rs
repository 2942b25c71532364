use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncch::exprparse::{format_element, format_matrix, parse_source, ParseError, RingDecl, TextRing};
use ncch::freealg::FreeAlgebra;
use ncch::grassmann::Grassmann;
use ncch::matrix::{commutator_parts, sadj, sdet, RingMatrix};
use ncch::perm;
use ncch::ring::Rationals;
use ncch::theorems::{default_suite, run_suite, suite_for, Check, CheckConfig, RingKind, Status, VerificationReport};
use ncch::tpoly::{poly_commutator_parts, PolyRing, TPoly};
use ncch::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ncch",
    version,
    about = "Symmetric determinants and Cayley-Hamilton identities over noncommutative rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an object for the matrix in a source file.
    Compute {
        #[arg(value_enum)]
        kind: ComputeKind,
        /// Source file, or `-` for standard input.
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run verification checks and report the outcome.
    Verify {
        /// A check name, or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        /// free, grassmann:K, rational or u2. Without it, `all` runs the default suite.
        #[arg(long)]
        ring: Option<RingKind>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Exponent tried by `power_probe`.
        #[arg(long, default_value_t = 2)]
        power: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComputeKind {
    Sdet,
    Sadj,
    Cparts,
    Charpoly,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::usage(format!("parse error: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionCap { .. } => EXIT_CAP,
            Error::Parse(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute { kind, input, format } => compute(kind, &input, format),
        Command::Verify {
            check,
            ring,
            n,
            seed,
            trials,
            power,
            format,
        } => verify(&check, ring, n, seed, trials, power, format),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn compute(kind: ComputeKind, input: &str, format: Format) -> Result<u8, Failure> {
    let doc = parse_source(&read_input(input)?)?;
    let header = doc.ring.to_string();
    let out = match &doc.ring {
        RingDecl::Free(names) => {
            let ring = FreeAlgebra::new(names.clone())?;
            render(kind, &ring, &doc.matrix(&ring)?, &header, format)?
        }
        RingDecl::Grassmann(k) => {
            let ring = Grassmann::new(*k)?;
            render(kind, &ring, &doc.matrix(&ring)?, &header, format)?
        }
        RingDecl::Rational => render(kind, &Rationals, &doc.matrix(&Rationals)?, &header, format)?,
    };
    print!("{out}");
    Ok(0)
}

fn matrix_json<R: TextRing>(ring: &R, m: &RingMatrix<R::Elem>) -> Value {
    Value::Array(
        m.rows()
            .map(|row| Value::Array(row.iter().map(|e| Value::String(format_element(ring, e))).collect()))
            .collect(),
    )
}

fn labelled_matrix<R: TextRing>(label: &str, ring: &R, m: &RingMatrix<R::Elem>) -> String {
    let body: String = format_matrix(ring, m).lines().map(|l| format!("  {l}\n")).collect();
    format!("{label} =\n{body}")
}

fn render<R: TextRing>(
    kind: ComputeKind,
    ring: &R,
    a: &RingMatrix<R::Elem>,
    header: &str,
    format: Format,
) -> Result<String, Failure> {
    perm::check_dimension(a.n())?;
    let n = a.n();
    let mut obj = json!({ "ring": header, "n": n });
    let text = match kind {
        ComputeKind::Sdet => {
            let v = sdet(ring, a)?;
            obj["kind"] = json!("sdet");
            obj["sdet"] = json!(format_element(ring, &v));
            format!("{}\n", format_element(ring, &v))
        }
        ComputeKind::Sadj => {
            let m = sadj(ring, a)?;
            obj["kind"] = json!("sadj");
            obj["sadj"] = matrix_json(ring, &m);
            format!("{}\n", format_matrix(ring, &m))
        }
        ComputeKind::Cparts => {
            let p = commutator_parts(ring, a)?;
            obj["kind"] = json!("cparts");
            obj["sdet"] = json!(format_element(ring, &p.lambda));
            obj["sadj"] = matrix_json(ring, &p.adjoint);
            obj["c"] = matrix_json(ring, &p.c);
            obj["d"] = matrix_json(ring, &p.d);
            format!(
                "sdet = {}\n{}{}{}",
                format_element(ring, &p.lambda),
                labelled_matrix("A*", ring, &p.adjoint),
                labelled_matrix("C", ring, &p.c),
                labelled_matrix("D", ring, &p.d)
            )
        }
        ComputeKind::Charpoly => {
            let data = poly_commutator_parts(ring, a)?;
            let pr = PolyRing::new(ring);
            let p: TPoly<R::Elem> = pr.from_coeffs(data.mu.clone());
            obj["kind"] = json!("charpoly");
            obj["p"] = json!(format_element(&pr, &p));
            obj["mu"] = Value::Array(data.mu.iter().map(|m| json!(format_element(ring, m))).collect());
            obj["c"] = Value::Array(data.c.iter().map(|m| matrix_json(ring, m)).collect());
            obj["d"] = Value::Array(data.d.iter().map(|m| matrix_json(ring, m)).collect());
            let mut s = format!("p(t) = {}\n", format_element(&pr, &p));
            for (i, mu) in data.mu.iter().enumerate() {
                s.push_str(&format!("mu_{i} = {}\n", format_element(ring, mu)));
            }
            for i in 0..=n {
                s.push_str(&labelled_matrix(&format!("C({i})"), ring, &data.c[i]));
                s.push_str(&labelled_matrix(&format!("D({i})"), ring, &data.d[i]));
            }
            s
        }
    };
    Ok(match format {
        Format::Text => text,
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&obj).expect("json values serialize")
        ),
    })
}

fn default_ring(check: Check, n: usize) -> RingKind {
    if check.supports(RingKind::Free) {
        RingKind::Free
    } else {
        RingKind::Grassmann(2 * n as u32)
    }
}

fn verify(
    check: &str,
    ring: Option<RingKind>,
    n: usize,
    seed: u64,
    trials: usize,
    power: usize,
    format: Format,
) -> Result<u8, Failure> {
    perm::check_dimension(n)?;
    let configure = |ring: RingKind| {
        let mut cfg = CheckConfig::new(ring, n).with_seed(seed).with_trials(trials);
        cfg.probe_power = power;
        cfg
    };
    let items = if check == "all" {
        match ring {
            Some(r) => suite_for(&configure(r)),
            None => default_suite(seed),
        }
    } else {
        let c = Check::from_name(check).ok_or_else(|| {
            let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
            Failure::usage(format!(
                "unknown check `{check}`; valid checks: all, {}",
                names.join(", ")
            ))
        })?;
        vec![(c, configure(ring.unwrap_or_else(|| default_ring(c, n))))]
    };
    let reports = run_suite(&items);
    print!("{}", render_reports(&reports, format));
    Ok(if reports.iter().all(VerificationReport::passed) {
        0
    } else {
        EXIT_FAIL
    })
}

fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(reports).expect("reports serialize")
        ),
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&format!("{r}\n"));
            }
            let count = |st| reports.iter().filter(|r| r.status == st).count();
            s.push_str(&format!(
                "{} passed, {} failed, {} errors\n",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Error)
            ));
            s
        }
    }
}
