//! Command-line front end for the boundary-divisor calculus.
//!
//! Every subcommand wraps one core operation, emits a [`CommandResult`] as
//! either aligned text or JSON, and exits 0 on success, 2 when a search is
//! infeasible, and 1 on any error.

use std::collections::BTreeSet;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use m0n_core::parse::{parse_curve, parse_divisor, parse_forbidden_list, parse_tree, ParsedCurve};
use m0n_core::rational::{format_q, parse_q, Q};
use m0n_core::{
    builtin_certificates, chamber_lookup, enumerate_strata, find_certificate, hassett_reduce,
    intersection_table, nef_check, normal_form, pair_curve, pair_fcurve, relation_basis,
    render_text, run_all_checks, verify_certificate, veronese_reduce, Certificate,
    CertificateProblem, Error, SearchOutcome, SymmetricDivisor, WeightData,
};

/// Exact intersection calculus for boundary divisors and vital curves on the
/// moduli of marked rational trees.
#[derive(Parser)]
#[command(name = "m0n", version, disable_help_subcommand = true)]
struct Cli {
    /// Number of marked points.
    #[arg(long, global = true, default_value_t = 7)]
    n: u8,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the sampled portions of verify-paper.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Pair a curve with a divisor expression.
    Pair {
        /// Curve: explicit `F{1}{2}{3}{4,5,6,7}`, or a class `F1,1,2,3`,
        /// `C4`..`C6`, `A` (classes pair with symmetric divisors only).
        #[arg(long)]
        curve: String,
        /// Divisor expression, e.g. `B3 - 1/2*psi` or `B{1,2} + psi_3`.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Decide whether two divisor expressions are numerically equal.
    Eq {
        /// Left-hand expression.
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        /// Right-hand expression.
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Reduce a divisor expression to its boundary-relation normal form.
    Nf {
        /// Divisor expression.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Summarize the boundary relation lattice for the chosen n.
    Relations,
    /// Print the curve-against-divisor intersection table (n = 7).
    Table,
    /// Locate a symmetric divisor in the effective-cone decomposition (n = 7).
    Chamber {
        /// Symmetric divisor expression, e.g. `psi - 4*K` or `3*B2 + 2*B3`.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Decide whether a symmetric divisor is nef (n = 7).
    Nef {
        /// Symmetric divisor expression.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Find or check nonnegative boundary certificates.
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
    /// Contract a marked tree under a weight assignment.
    Reduce {
        /// Tree file in the tree grammar (`-` reads standard input).
        #[arg(long)]
        tree: PathBuf,
        /// Contraction rule.
        #[arg(long, value_enum)]
        mode: Mode,
        /// Comma-separated mark weights; a single value applies to all marks.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Degree-interpolation parameter (veronese mode).
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        gamma: String,
        /// Ambient degree (veronese mode).
        #[arg(long, default_value_t = 3)]
        d: u32,
    },
    /// Enumerate the self-intersection strata of the 2-mark boundary.
    Strata {
        /// Number of pairwise-disjoint components intersected.
        #[arg(long)]
        codim: u8,
    },
    /// Run the built-in verification suite against its frozen expectations.
    VerifyPaper,
}

#[derive(Subcommand)]
enum CertAction {
    /// Search for a nonnegative boundary expression avoiding forbidden classes.
    Find {
        /// Target divisor expression (boundary-supported).
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Comma-separated forbidden classes, e.g. `B{1,2},B{3,4,5}`.
        #[arg(long, default_value = "")]
        forbid: String,
        /// Demand integer coefficients (scales through the multiple).
        #[arg(long)]
        integral: bool,
        /// Largest multiple of the target to try.
        #[arg(long)]
        mmax: Option<u32>,
    },
    /// Check a certificate against its problem.
    Verify {
        /// Use built-in problem K (1-based) with its stored certificate.
        #[arg(long, conflicts_with_all = ["problem", "certificate"])]
        builtin: Option<usize>,
        /// Problem JSON file (with --certificate).
        #[arg(long, requires = "certificate")]
        problem: Option<PathBuf>,
        /// Certificate JSON file (with --problem).
        #[arg(long, requires = "problem")]
        certificate: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Hassett,
    Veronese,
}

/// Outcome of one command, ready for either output format.
struct CommandResult {
    status: Status,
    payload: serde_json::Value,
    human_text: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Infeasible,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
            Status::Error => "error",
        }
    }

    fn exit_code(self) -> ExitCode {
        match self {
            Status::Ok => ExitCode::SUCCESS,
            Status::Infeasible => ExitCode::from(2),
            Status::Error => ExitCode::FAILURE,
        }
    }
}

impl CommandResult {
    fn ok(payload: serde_json::Value, human_text: impl Into<String>) -> Self {
        CommandResult {
            status: Status::Ok,
            payload,
            human_text: human_text.into(),
        }
    }

    fn infeasible(payload: serde_json::Value, human_text: impl Into<String>) -> Self {
        CommandResult {
            status: Status::Infeasible,
            payload,
            human_text: human_text.into(),
        }
    }

    fn from_error(error: &Error) -> Self {
        let code = error.code();
        CommandResult {
            status: Status::Error,
            payload: serde_json::json!({ "error": { "code": code, "message": error.to_string() } }),
            human_text: format!("error: {error}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match run(&cli) {
        Ok(result) => result,
        Err(error) => CommandResult::from_error(&error),
    };
    match cli.format {
        Format::Text => {
            if result.status == Status::Error {
                eprintln!("{}", result.human_text);
            } else {
                emit(&result.human_text);
            }
        }
        Format::Json => {
            let mut body = serde_json::Map::new();
            body.insert("status".into(), result.status.as_str().into());
            if let serde_json::Value::Object(fields) = result.payload {
                body.extend(fields);
            } else {
                body.insert("result".into(), result.payload);
            }
            emit(
                &serde_json::to_string_pretty(&serde_json::Value::Object(body))
                    .expect("payloads are built from valid JSON"),
            );
        }
    }
    result.status.exit_code()
}

/// Prints one line to stdout; a closed pipe ends the program quietly instead
/// of panicking.
fn emit(text: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    if let Err(error) = writeln!(out, "{text}").and_then(|()| out.flush()) {
        if error.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {error}");
        std::process::exit(1);
    }
}

fn run(cli: &Cli) -> Result<CommandResult, Error> {
    let n = cli.n;
    match &cli.command {
        Command::Pair { curve, divisor } => cmd_pair(n, curve, divisor),
        Command::Eq { lhs, rhs } => cmd_eq(n, lhs, rhs),
        Command::Nf { divisor } => cmd_nf(n, divisor),
        Command::Relations => cmd_relations(n),
        Command::Table => cmd_table(n),
        Command::Chamber { divisor } => cmd_chamber(n, divisor),
        Command::Nef { divisor } => cmd_nef(n, divisor),
        Command::Cert { action } => match action {
            CertAction::Find {
                target,
                forbid,
                integral,
                mmax,
            } => cmd_cert_find(n, target, forbid, *integral, *mmax),
            CertAction::Verify {
                builtin,
                problem,
                certificate,
            } => cmd_cert_verify(*builtin, problem.as_deref(), certificate.as_deref()),
        },
        Command::Reduce {
            tree,
            mode,
            weights,
            gamma,
            d,
        } => cmd_reduce(tree, *mode, weights, gamma, *d),
        Command::Strata { codim } => cmd_strata(n, *codim),
        Command::VerifyPaper => Ok(cmd_verify_paper(cli.seed)),
    }
}

fn cmd_pair(n: u8, curve: &str, divisor: &str) -> Result<CommandResult, Error> {
    let class = parse_divisor(n, divisor)?;
    let value = match parse_curve(n, curve)? {
        ParsedCurve::Explicit(fcurve) => pair_fcurve(&fcurve, &class)?,
        ParsedCurve::Class(curve_class) => {
            let symmetric = SymmetricDivisor::from_class(&class).map_err(|e| {
                Error::InvalidArgument(format!(
                    "{e}; curve classes pair with symmetric divisors only — \
                     use an explicit partition like F{{1}}{{2}}{{3}}{{4,5,6,7}}"
                ))
            })?;
            pair_curve(&curve_class, &symmetric)?
        }
    };
    let rendered = format_q(&value);
    Ok(CommandResult::ok(
        serde_json::json!({ "curve": curve, "divisor": divisor, "value": rendered }),
        rendered.clone(),
    ))
}

fn cmd_eq(n: u8, lhs: &str, rhs: &str) -> Result<CommandResult, Error> {
    let left = parse_divisor(n, lhs)?;
    let right = parse_divisor(n, rhs)?;
    let equal = m0n_core::class_equal(&left, &right)?;
    let difference = normal_form(&left.checked_sub(&right)?)?;
    Ok(CommandResult::ok(
        serde_json::json!({
            "equal": equal,
            "difference_normal_form": difference.to_string(),
        }),
        if equal { "true" } else { "false" },
    ))
}

fn cmd_nf(n: u8, divisor: &str) -> Result<CommandResult, Error> {
    let class = parse_divisor(n, divisor)?;
    let reduced = normal_form(&class)?;
    Ok(CommandResult::ok(
        serde_json::json!({
            "input": divisor,
            "normal_form": reduced.to_string(),
            "class": reduced.to_json(),
        }),
        reduced.to_string(),
    ))
}

fn cmd_relations(n: u8) -> Result<CommandResult, Error> {
    let basis = relation_basis(n)?;
    let classes = basis.classes().len();
    let generators = basis.relations().len();
    let rank = basis.rank();
    let quotient = basis.quotient_dim();
    Ok(CommandResult::ok(
        serde_json::json!({
            "n": n,
            "boundary_classes": classes,
            "relation_generators": generators,
            "rank": rank,
            "quotient_dimension": quotient,
        }),
        format!(
            "n = {n}: {classes} boundary classes, {generators} relation generators, \
             rank {rank}, quotient dimension {quotient}"
        ),
    ))
}

fn cmd_table(n: u8) -> Result<CommandResult, Error> {
    let table = intersection_table(n)?;
    let mut text = String::new();
    let label_width = table
        .rows
        .iter()
        .map(|row| row.label.chars().count())
        .max()
        .unwrap_or(0);
    text.push_str(&format!("{:label_width$}", ""));
    for column in table.columns {
        text.push_str(&format!(" {column:>6}"));
    }
    for row in &table.rows {
        text.push('\n');
        text.push_str(&format!("{:label_width$}", row.label));
        for value in &row.values {
            text.push_str(&format!(" {:>6}", format_q(value)));
        }
    }
    Ok(CommandResult::ok(table.to_json(), text))
}

fn cmd_chamber(n: u8, divisor: &str) -> Result<CommandResult, Error> {
    let symmetric = parse_symmetric(n, divisor)?;
    let report = chamber_lookup(&symmetric)?;
    let mut text = if report.on_wall {
        format!("{} (wall)", report.model_label)
    } else {
        report.model_label.clone()
    };
    text.push_str(&format!("\nchamber: {}", report.chamber_id));
    text.push_str(&format!("\nregion: {}", report.region_label));
    text.push_str(&format!("\nstable base locus: {}", report.stable_base_locus));
    if report.on_wall {
        text.push_str(&format!("\nwalls: {}", report.wall_names.join(", ")));
        text.push_str(&format!(
            "\nadjacent models: {}",
            report.adjacent_models.join(", ")
        ));
    }
    Ok(CommandResult::ok(report.to_json(), text))
}

fn cmd_nef(n: u8, divisor: &str) -> Result<CommandResult, Error> {
    let symmetric = parse_symmetric(n, divisor)?;
    let nef = nef_check(&symmetric)?;
    Ok(CommandResult::ok(
        serde_json::json!({ "divisor": divisor, "nef": nef }),
        if nef { "true" } else { "false" },
    ))
}

/// Parses an expression and projects it onto symmetric coordinates.
fn parse_symmetric(n: u8, divisor: &str) -> Result<SymmetricDivisor, Error> {
    SymmetricDivisor::from_class(&parse_divisor(n, divisor)?)
}

fn cmd_cert_find(
    n: u8,
    target: &str,
    forbid: &str,
    integral: bool,
    mmax: Option<u32>,
) -> Result<CommandResult, Error> {
    let target_class = parse_divisor(n, target)?;
    let forbidden: BTreeSet<_> = if forbid.trim().is_empty() {
        BTreeSet::new()
    } else {
        parse_forbidden_list(n, forbid)?
    };
    let mut problem = CertificateProblem::new(n, target_class, forbidden)?;
    problem.require_integral = integral;
    if let Some(m) = mmax {
        problem.m_max = m;
    }
    match find_certificate(&problem)? {
        SearchOutcome::Feasible(certificate) => {
            let lines: Vec<String> = certificate
                .coeffs
                .iter()
                .map(|(index, coeff)| format!("  {} * {index}", format_q(coeff)))
                .collect();
            let text = format!(
                "feasible: {} * target = nonnegative sum of {} classes\n{}",
                certificate.multiple,
                certificate.coeffs.len(),
                lines.join("\n")
            );
            Ok(CommandResult::ok(
                serde_json::json!({
                    "outcome": "feasible",
                    "problem": problem.to_json(),
                    "certificate": certificate.to_json(),
                }),
                text,
            ))
        }
        SearchOutcome::Infeasible { reason } => Ok(CommandResult::infeasible(
            serde_json::json!({
                "outcome": "infeasible",
                "problem": problem.to_json(),
                "reason": reason.clone(),
            }),
            format!("infeasible: {reason}"),
        )),
    }
}

fn cmd_cert_verify(
    builtin: Option<usize>,
    problem_path: Option<&std::path::Path>,
    certificate_path: Option<&std::path::Path>,
) -> Result<CommandResult, Error> {
    let (problem, certificate, source) = match (builtin, problem_path, certificate_path) {
        (Some(k), None, None) => {
            let mut builtins = builtin_certificates()?;
            if k == 0 || k > builtins.len() {
                return Err(Error::InvalidArgument(format!(
                    "--builtin must be between 1 and {}",
                    builtins.len()
                )));
            }
            let (problem, certificate) = builtins.swap_remove(k - 1);
            (problem, certificate, format!("builtin {k}"))
        }
        (None, Some(problem_path), Some(certificate_path)) => {
            let problem = CertificateProblem::from_json(&read_json(problem_path)?)?;
            let certificate = Certificate::from_json(problem.n, &read_json(certificate_path)?)?;
            (problem, certificate, problem_path.display().to_string())
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give either --builtin K or --problem FILE --certificate FILE".into(),
            ));
        }
    };
    let report = verify_certificate(&problem, &certificate)?;
    let mut text = format!(
        "verdict: {}\nsupport ok: {}\nnonnegative: {}\nclass matches: {}",
        report.verdict, report.support_ok, report.nonnegative, report.class_matches
    );
    for failing in &report.failing_fcurves {
        text.push_str(&format!(
            "\n  mismatch on {}: certificate {} vs target {}",
            failing.curve,
            format_q(&failing.certificate_value),
            format_q(&failing.target_value)
        ));
    }
    Ok(CommandResult::ok(
        serde_json::json!({
            "source": source,
            "problem": problem.to_json(),
            "report": report.to_json(),
        }),
        text,
    ))
}

fn read_json(path: &std::path::Path) -> Result<serde_json::Value, Error> {
    let body = std::fs::read_to_string(path)?;
    serde_json::from_str(&body).map_err(|e| Error::Json(format!("{}: {e}", path.display())))
}

fn cmd_reduce(
    tree_path: &std::path::Path,
    mode: Mode,
    weights: &str,
    gamma: &str,
    d: u32,
) -> Result<CommandResult, Error> {
    let body = if tree_path.as_os_str() == "-" {
        let mut buffer = String::new();
        std::io::stdin().read_to_string(&mut buffer)?;
        buffer
    } else {
        std::fs::read_to_string(tree_path)?
    };
    let tree = parse_tree(body.trim())?;
    let marks = tree.n() as usize;
    let parsed: Vec<Q> = weights
        .split(',')
        .map(|piece| parse_q(piece.trim()))
        .collect::<Result<_, _>>()?;
    let weight_vec = if parsed.len() == 1 {
        vec![parsed[0].clone(); marks]
    } else if parsed.len() == marks {
        parsed
    } else {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {marks} marks (give one value or one per mark)",
            parsed.len()
        )));
    };
    let report = match mode {
        Mode::Hassett => hassett_reduce(&tree, &WeightData::hassett(weight_vec)?)?,
        Mode::Veronese => {
            let data = WeightData::veronese(weight_vec, parse_q(gamma)?, d)?;
            veronese_reduce(&tree, &data)?
        }
    };
    Ok(CommandResult::ok(report.to_json(), report.to_string()))
}

fn cmd_strata(n: u8, codim: u8) -> Result<CommandResult, Error> {
    let strata = enumerate_strata(n, codim)?;
    let mut text = format!("({n}, {codim}): {} strata", strata.len());
    for stratum in &strata {
        text.push_str(&format!("\n  {stratum}"));
    }
    Ok(CommandResult::ok(
        serde_json::json!({
            "n": n,
            "codim": codim,
            "count": strata.len(),
            "strata": strata.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn cmd_verify_paper(seed: u64) -> CommandResult {
    let checks = run_all_checks(seed);
    let failed = checks.iter().filter(|check| !check.passed).count();
    let payload = serde_json::json!({
        "checks": checks.iter().map(|check| check.to_json()).collect::<Vec<_>>(),
        "passed": checks.len() - failed,
        "failed": failed,
    });
    let text = render_text(&checks);
    if failed == 0 {
        CommandResult::ok(payload, text)
    } else {
        CommandResult {
            status: Status::Error,
            payload,
            human_text: text,
        }
    }
}
