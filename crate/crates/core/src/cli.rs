//! Command-line front end. [`run`] turns argv into the text destined for
//! stdout/stderr plus an exit code: 0 when every check passes, 1 when a
//! verification fails, 2 on usage or precondition errors.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::divdiff;
use crate::expr::{self, parse_expr};
use crate::function::TestFunction;
use crate::hadamard::{self, InequalityChain};
use crate::numfmt;
use crate::orthopoly::WeightFunction;
use crate::poly::Interval;
use crate::quadrature::{self, Family, FixedOperator};
use crate::support::{self, AttachMethod, NodeSpec, SupportError, SupportResult};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Points of the interval on which a user expression must evaluate cleanly.
const DOMAIN_CHECK_POINTS: usize = 257;

#[derive(Debug, Parser)]
#[command(name = "hoconv", version, about = "Higher-order convexity numerics")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quadrature rule synthesis.
    Rules {
        #[command(subcommand)]
        action: RulesCommand,
    },
    /// Check an inequality chain of quadrature operators for f.
    Verify(VerifyArgs),
    /// Build a support polynomial by attaching nodes.
    Support(SupportArgs),
    /// Grid test for n-convexity.
    Convexity(ConvexityArgs),
    /// Error bound for a fixed operator from a derivative bound M.
    Bound(BoundArgs),
    /// CSV samples x,f,p of a support construction.
    Plotdata(PlotArgs),
}

#[derive(Debug, Subcommand)]
pub enum RulesCommand {
    Build(BuildArgs),
}

#[derive(Debug, Args)]
pub struct IntervalArg {
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true,
          default_values_t = [-1.0, 1.0])]
    pub interval: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// gauss, lobatto, radau-l, radau-r, or fixed:<G2|Lob4|Cheb3|Simpson|Blend|Midpoint|Trapezoid>.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub points: Option<usize>,
    /// `legendre` or `poly:c0,c1,...`.
    #[arg(long, default_value = "legendre")]
    pub weight: String,
    #[command(flatten)]
    pub interval: IntervalArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// gauss-lobatto, radau, cheb, fiveconv or hh.
    #[arg(long)]
    pub chain: String,
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[command(flatten)]
    pub interval: IntervalArg,
    #[arg(long, default_value = "legendre")]
    pub weight: String,
    /// Rule size for gauss-lobatto and radau.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comparison tolerance; default 1e-9 (1 + max |value|).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Skip the n-convexity declaration check on f.
    #[arg(long)]
    pub unchecked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Eps,
    Confluent,
}

impl From<MethodArg> for AttachMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Eps => AttachMethod::EpsilonLimit,
            MethodArg::Confluent => AttachMethod::Confluent,
        }
    }
}

#[derive(Debug, Args)]
pub struct SupportArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long)]
    pub order: usize,
    /// Comma-separated, increasing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub nodes: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub mults: Vec<usize>,
    #[command(flatten)]
    pub interval: IntervalArg,
    /// Defaults to confluent when derivatives are available.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
}

#[derive(Debug, Args)]
pub struct ConvexityArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long)]
    pub order: usize,
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[command(flatten)]
    pub interval: IntervalArg,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub op: String,
    #[arg(long)]
    pub k: usize,
    /// Bound on |f^(k)|.
    #[arg(long = "M", alias = "m")]
    pub m: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub support: SupportArgs,
    /// Number of sample points.
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
}

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    body: String,
    pass: bool,
}

type CmdResult = Result<Report, String>;

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = match &cli.command {
        Command::Rules { action: RulesCommand::Build(a) } => rules_build(a, cli.format),
        Command::Verify(a) => verify(a, cli.format),
        Command::Support(a) => support_cmd(a, cli.format),
        Command::Convexity(a) => convexity(a, cli.format),
        Command::Bound(a) => bound(a, cli.format),
        Command::Plotdata(a) => plotdata(a),
    };
    let report = match result {
        Ok(r) => r,
        Err(msg) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    let code = if report.pass { EXIT_PASS } else { EXIT_FAIL };
    match &cli.out {
        Some(path) => match std::fs::write(path, &report.body) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome { code, stdout: report.body, stderr: String::new() },
    }
}

fn interval(arg: &IntervalArg) -> Result<Interval, String> {
    match arg.interval.as_slice() {
        [a, b] => Interval::new(*a, *b).map_err(|e| e.to_string()),
        _ => Err("--interval takes two values".to_string()),
    }
}

/// Parse `src` and require it to evaluate cleanly across `iv`.
fn load_function(src: &str, iv: Interval) -> Result<TestFunction, String> {
    let e = parse_expr(src).map_err(|e| format!("cannot parse f = {src:?}: {e}"))?;
    for x in iv.linspace(DOMAIN_CHECK_POINTS) {
        e.try_eval(x)
            .map_err(|err| format!("f = {src} is not usable on {iv}: {err}"))?;
    }
    Ok(expr::test_function(&e, src.trim(), iv))
}

fn no_csv(command: &str) -> String {
    format!("{command} has no csv output")
}

fn rules_build(a: &BuildArgs, format: Format) -> CmdResult {
    let rule = if let Some(op) = a.family.strip_prefix("fixed:") {
        let op = FixedOperator::from_str(op).map_err(|e| e.to_string())?;
        quadrature::fixed_operator(op).map_err(|e| e.to_string())?
    } else {
        let family = Family::from_str(&a.family).map_err(|e| e.to_string())?;
        let points = a.points.ok_or("--points is required for this family")?;
        let iv = interval(&a.interval)?;
        let w = WeightFunction::from_spec(&a.weight, iv).map_err(|e| e.to_string())?;
        quadrature::build_rule(family, &w, points).map_err(|e| e.to_string())?
    };
    let body = match format {
        Format::Text => rule.to_text_table(),
        Format::Json => rule.to_json(),
        Format::Csv => rule.to_csv(),
    };
    Ok(Report { body, pass: true })
}

fn verify(a: &VerifyArgs, format: Format) -> CmdResult {
    if format == Format::Csv {
        return Err(no_csv("verify"));
    }
    let iv = interval(&a.interval)?;
    let w = WeightFunction::from_spec(&a.weight, iv).map_err(|e| e.to_string())?;
    let chain = InequalityChain::by_name(&a.chain, &w, a.n).map_err(|e| e.to_string())?;
    let f = load_function(&a.f, iv)?;
    let report = if a.unchecked {
        hadamard::evaluate_chain(&chain, &f, a.tol)
    } else {
        let f = f
            .declare_orders(&[chain.order()])
            .map_err(|e| format!("precondition failed: {e}"))?;
        hadamard::verify_chain(&chain, &f, a.tol)
    }
    .map_err(|e| e.to_string())?;
    let body = match format {
        Format::Json => report.to_json(),
        _ => report.to_text(),
    };
    Ok(Report { body, pass: report.pass })
}

#[derive(Serialize)]
struct CertificateDoc {
    pass: bool,
    worst_margin: f64,
    worst_at: Option<f64>,
    samples: usize,
    tol: f64,
}

#[derive(Serialize)]
struct SupportDoc<'a> {
    function: &'a str,
    interval: [f64; 2],
    order: usize,
    nodes: &'a [f64],
    mults: &'a [usize],
    method: &'a str,
    /// Ascending powers.
    coefficients: Vec<f64>,
    node_residual: f64,
    iterations: usize,
    certificate: CertificateDoc,
}

#[derive(Serialize)]
struct SupportFailureDoc<'a> {
    function: &'a str,
    method: &'a str,
    error: String,
    pass: bool,
}

fn support_text(f: &str, r: &SupportResult) -> String {
    let spec = &r.spec;
    let coeffs: Vec<String> = r.polynomial.coeffs().iter().map(|&c| numfmt::text(c)).collect();
    let c = &r.certificate;
    format!(
        "support f={f} {spec} method={}\ncoefficients {}\np(x) = {}\nnode_residual={} iterations={}\ncertificate samples={} worst_margin={} worst_at={} tol={} {}\n",
        r.method.name(),
        coeffs.join(" "),
        r.polynomial,
        numfmt::text(r.node_residual),
        r.iterations,
        c.samples,
        numfmt::text(c.worst_margin),
        c.worst_at.map_or("none".to_string(), numfmt::text),
        numfmt::text(c.tol),
        if c.pass { "PASS" } else { "FAIL" },
    )
}

fn support_json(f: &str, r: &SupportResult) -> String {
    let spec = &r.spec;
    let iv = spec.interval();
    let c = &r.certificate;
    numfmt::to_json(&SupportDoc {
        function: f,
        interval: [iv.a(), iv.b()],
        order: spec.order(),
        nodes: spec.nodes(),
        mults: spec.mults(),
        method: r.method.name(),
        coefficients: r.polynomial.coeffs().to_vec(),
        node_residual: r.node_residual,
        iterations: r.iterations,
        certificate: CertificateDoc {
            pass: c.pass,
            worst_margin: c.worst_margin,
            worst_at: c.worst_at,
            samples: c.samples,
            tol: c.tol,
        },
    })
}

/// Construction outcome: `Ok(Err(..))` carries a numerical failure that is
/// reported with exit code 1.
fn build_support(a: &SupportArgs) -> Result<(TestFunction, AttachMethod, Result<SupportResult, SupportError>), String> {
    let iv = interval(&a.interval)?;
    let spec = NodeSpec::new(iv, a.order, a.nodes.clone(), a.mults.clone()).map_err(|e| e.to_string())?;
    let f = load_function(&a.f, iv)?;
    let method = a.method.map_or_else(|| AttachMethod::preferred(&f, &spec), AttachMethod::from);
    match support::attach(&f, &spec, method) {
        Ok(r) => Ok((f, method, Ok(r))),
        Err(e @ (SupportError::NonConvergence { .. } | SupportError::NodeMismatch { .. })) => {
            Ok((f, method, Err(e)))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn support_cmd(a: &SupportArgs, format: Format) -> CmdResult {
    if format == Format::Csv {
        return Err(no_csv("support"));
    }
    let (f, method, result) = build_support(a)?;
    Ok(match result {
        Ok(r) => Report {
            body: match format {
                Format::Json => support_json(f.name(), &r),
                _ => support_text(f.name(), &r),
            },
            pass: r.certificate.pass,
        },
        Err(e) => Report {
            body: match format {
                Format::Json => numfmt::to_json(&SupportFailureDoc {
                    function: f.name(),
                    method: method.name(),
                    error: e.to_string(),
                    pass: false,
                }),
                _ => format!("support f={} method={} FAIL: {e}\n", f.name(), method.name()),
            },
            pass: false,
        },
    })
}

#[derive(Serialize)]
struct ConvexityDoc<'a> {
    function: &'a str,
    order: usize,
    grid: usize,
    tuples_tested: usize,
    convex: bool,
    witness: Option<WitnessDoc>,
}

#[derive(Serialize)]
struct WitnessDoc {
    tuple: Vec<f64>,
    divided_difference: f64,
    determinant: f64,
}

fn convexity(a: &ConvexityArgs, format: Format) -> CmdResult {
    if format == Format::Csv {
        return Err(no_csv("convexity"));
    }
    let iv = interval(&a.interval)?;
    let f = load_function(&a.f, iv)?;
    let grid = iv.linspace(a.grid);
    let v = divdiff::is_n_convex_on_grid(&f, a.order, &grid).map_err(|e| e.to_string())?;
    let body = match format {
        Format::Json => numfmt::to_json(&ConvexityDoc {
            function: f.name(),
            order: v.order,
            grid: grid.len(),
            tuples_tested: v.tuples_tested,
            convex: v.convex,
            witness: v.witness.as_ref().map(|w| WitnessDoc {
                tuple: w.tuple.clone(),
                divided_difference: w.divided_difference,
                determinant: w.determinant,
            }),
        }),
        _ => {
            let mut out = format!(
                "convexity f={} order={} grid={} tuples={} {}\n",
                f.name(),
                v.order,
                grid.len(),
                v.tuples_tested,
                if v.convex { "CONVEX" } else { "NOT CONVEX" }
            );
            if let Some(w) = &v.witness {
                let tuple: Vec<String> = w.tuple.iter().map(|&x| numfmt::text(x)).collect();
                out.push_str(&format!(
                    "witness tuple=[{}] divided_difference={}\n",
                    tuple.join(", "),
                    numfmt::text(w.divided_difference)
                ));
            }
            out
        }
    };
    Ok(Report { body, pass: v.convex })
}

fn bound(a: &BoundArgs, format: Format) -> CmdResult {
    if format == Format::Csv {
        return Err(no_csv("bound"));
    }
    let op = FixedOperator::from_str(&a.op).map_err(|e| e.to_string())?;
    let rule = quadrature::fixed_operator(op).map_err(|e| e.to_string())?;
    let f = match &a.f {
        Some(src) => Some(load_function(src, rule.interval())?),
        None => None,
    };
    let r = hadamard::error_bound(&rule, a.k, a.m, f.as_ref()).map_err(|e| e.to_string())?;
    let body = match format {
        Format::Json => r.to_json(),
        _ => r.to_text(),
    };
    Ok(Report { body, pass: r.dominated().unwrap_or(true) })
}

fn plotdata(a: &PlotArgs) -> CmdResult {
    if a.samples < 2 {
        return Err("--samples must be at least 2".to_string());
    }
    let (f, _, result) = build_support(&a.support)?;
    let r = result.map_err(|e| e.to_string())?;
    let mut body = String::from("x,f,p\n");
    for x in f.interval().linspace(a.samples) {
        body.push_str(&format!(
            "{},{},{}\n",
            numfmt::sig(x, numfmt::JSON_DIGITS),
            numfmt::sig(f.eval(x), numfmt::JSON_DIGITS),
            numfmt::sig(r.polynomial.eval(x), numfmt::JSON_DIGITS)
        ));
    }
    Ok(Report { body, pass: r.certificate.pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("hoconv").chain(args.iter().copied()))
    }

    #[test]
    fn gauss_two_points() {
        let o = go(&["rules", "build", "--family", "gauss", "--points", "2", "--weight", "legendre", "--interval", "-1", "1"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("-0.577350269190 1.00000000000"), "{}", o.stdout);
    }

    #[test]
    fn fiveconv_sextic() {
        let o = go(&["verify", "--chain", "fiveconv", "--f", "x^6", "--interval", "-1", "1"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("values=[0.285714285714, 0.311111111111, 0.346666666667]"), "{}", o.stdout);
    }

    #[test]
    fn blend_bound() {
        let o = go(&["bound", "--op", "blend", "--k", "6", "--M", "720"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("bound=0.0253968253968"), "{}", o.stdout);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["verify", "--chain", "hh", "--f", "-x^2"]).code, EXIT_USAGE);
        assert_eq!(go(&["verify", "--chain", "hh", "--f", "-x^2", "--unchecked"]).code, EXIT_FAIL);
        assert_eq!(go(&["convexity", "--f", "x^3", "--order", "1"]).code, EXIT_FAIL);
        assert_eq!(go(&["convexity", "--f", "2*+x", "--order", "1"]).code, EXIT_USAGE);
        assert_eq!(go(&["convexity", "--f", "1/x", "--order", "1"]).code, EXIT_USAGE);
        assert_eq!(go(&["rules", "build", "--family", "simpsons", "--points", "2"]).code, EXIT_USAGE);
        assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(go(&["--help"]).code, EXIT_PASS);
    }

    #[test]
    fn support_json_document() {
        let o = go(&["--format", "json", "support", "--f", "exp(x)", "--order", "3", "--nodes", "-0.5,0.5", "--mults", "2,2"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["method"], "confluent");
        assert_eq!(v["certificate"]["pass"], true);
        assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
    }
}
