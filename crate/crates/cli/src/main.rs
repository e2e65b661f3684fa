use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use oddclass::decomposition::decompose;
use oddclass::functionals::{canonical_trace, cutoff_integral, leading_trace, residue, FunctionalValue, RhoSpec};
use oddclass::gen::{gen_random_symbol, GenParams};
use oddclass::group::{determinant, exp_symbol, log_symbol, path_determinant, PolynomialPath, TraceFunctional};
use oddclass::io::{parse_rho, parse_symbol, parse_symbols, symbol_to_json, symbol_to_line};
use oddclass::oracle::{
    eval_symbol, geometric_radii, mode_matrix, numeric_commutator_trace, radial_fp, QuadratureGrid,
};
use oddclass::suites::{run_suite, SUITES};
use oddclass::{Error, ExactScalar, FormalSymbol, GroupElement, TrigPoly};

/// `println!` that exits quietly when stdout is closed.
macro_rules! say {
    ($($t:tt)*) => {
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    };
}

macro_rules! say_inline {
    ($($t:tt)*) => {
        if write!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    };
}

/// Exact odd-class symbol calculus: functionals, products, determinants and checks.
///
/// Symbols are read from line-oriented JSON files. Group elements I + B are
/// stored by their order <= -1 part B.
#[derive(Parser)]
#[command(name = "oddclass", version)]
struct Cli {
    /// Significant digits for floating output.
    #[arg(long, global = true, env = "ODDCLASS_DIGITS", default_value_t = 15)]
    digits: u32,
    /// Also write a JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Functional {
    Res,
    Tr,
    Cutoff,
    Leading,
}

#[derive(Args)]
struct FloorArg {
    /// Truncation floor of the result.
    #[arg(long, allow_hyphen_values = true)]
    floor: Option<i32>,
}

#[derive(Args)]
struct LambdaArgs {
    /// Weight of the leading-symbol trace.
    #[arg(long, default_value = "1")]
    c1: String,
    /// Weight of the canonical trace.
    #[arg(long, default_value = "0")]
    c2: String,
    /// ρ-spec file; defaults to the mean of the leading coefficients.
    #[arg(long)]
    rho: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a functional on a symbol.
    Eval {
        functional: Functional,
        file: PathBuf,
        #[arg(long)]
        rho: Option<PathBuf>,
        #[command(flatten)]
        floor: FloorArg,
    },
    Star {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        floor: FloorArg,
    },
    Commutator {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        floor: FloorArg,
    },
    Parametrix {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        floor: i32,
    },
    /// Write σ = Σ ∂_{x_i} τ_i; prints one τ_i per line.
    Decompose {
        file: PathBuf,
    },
    Exp {
        file: PathBuf,
    },
    Log {
        file: PathBuf,
    },
    /// Determinant exp(λ(Log g)) with λ = c1·ρ∘π_a + c2·TR.
    Det {
        file: PathBuf,
        #[command(flatten)]
        lambda: LambdaArgs,
        #[command(flatten)]
        floor: FloorArg,
    },
    /// Determinant along γ(t) = I + Σ A_k t^k; one A_k per line, A_0 = 0.
    PathDet {
        file: PathBuf,
        #[command(flatten)]
        lambda: LambdaArgs,
    },
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Run a property suite, or `all`.
    Check {
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Print a seeded random symbol.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        order: i32,
        #[arg(long, allow_hyphen_values = true, default_value_t = -3)]
        floor: i32,
        #[arg(long, default_value_t = 2)]
        max_freq: i64,
        #[arg(long, default_value_t = 2)]
        max_layer: u32,
        /// Sample without the parity constraint.
        #[arg(long)]
        even: bool,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// σ(x, ξ) in floating point.
    Eval {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Vec<f64>,
    },
    /// Fit ∫_{1≤|ξ|≤R} σ(x, ξ) dξ over geometric radii.
    RadialFit {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 1.5)]
        lo: f64,
        #[arg(long, default_value_t = 8.0)]
        hi: f64,
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
    /// Trace of [A_K, B_K] for mode-truncated operators on T¹.
    ModeTrace {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
        k: Vec<usize>,
    },
}

enum Failure {
    Core(Error),
    Io(String),
    Suite(usize, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = std::result::Result<Value, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Io(format!("stdin: {e}")));
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn symbol(path: &Path) -> std::result::Result<FormalSymbol, Failure> {
    Ok(parse_symbol(&read(path)?)?)
}

fn scalar_json(v: &ExactScalar, digits: u32) -> Value {
    let z = v.eval(digits);
    json!({ "exact": v.to_string(), "float": [z.re, z.im] })
}

fn print_scalar(v: &ExactScalar, digits: u32) {
    let text = v.to_string();
    if v.is_zero() || text.parse::<f64>().is_ok() {
        say!("{text}");
    } else {
        say!("{text} ≈ {}", v.eval_string(digits));
    }
}

fn value_json(v: &FunctionalValue, digits: u32) -> Value {
    json!({ "value": scalar_json(&v.value, digits), "floor_used": v.floor_used, "exact": v.exact })
}

fn print_value(v: &FunctionalValue, digits: u32) -> Value {
    print_scalar(&v.value, digits);
    if !v.exact {
        say!("(not determined by the tracked components; floor {})", v.floor_used);
    }
    value_json(v, digits)
}

fn density_json(d: &TrigPoly, digits: u32) -> Value {
    let n = d.dim();
    Value::Array(d.coeffs().iter().map(|(k, v)| json!({ "freq": k[..n], "scalar": scalar_json(v, digits) })).collect())
}

fn emit(s: &FormalSymbol) -> Value {
    say!("{}", symbol_to_line(s));
    symbol_to_json(s)
}

fn floored(s: FormalSymbol, floor: &FloorArg) -> FormalSymbol {
    match floor.floor {
        Some(f) => s.truncate(f),
        None => s,
    }
}

fn lambda(args: &LambdaArgs, order: i32) -> std::result::Result<TraceFunctional, Failure> {
    let rho = match &args.rho {
        Some(p) => parse_rho(&read(p)?)?,
        None => RhoSpec::default_mean(order),
    };
    Ok(TraceFunctional::new(args.c1.parse()?, args.c2.parse()?, rho))
}

fn eval(f: Functional, s: &FormalSymbol, rho: Option<&PathBuf>, digits: u32) -> Out {
    Ok(match f {
        Functional::Res => print_value(&residue(s)?, digits),
        Functional::Tr => print_value(&canonical_trace(s), digits),
        Functional::Cutoff => {
            let d = cutoff_integral(s);
            for (k, v) in d.density.coeffs() {
                say_inline!("{:?}: ", &k[..s.dim()]);
                print_scalar(v, digits);
            }
            if d.density.is_zero() {
                say!("0");
            }
            json!({ "density": density_json(&d.density, digits), "floor_used": d.floor_used, "exact": d.exact })
        }
        Functional::Leading => {
            let rho = match rho {
                Some(p) => parse_rho(&read(p)?)?,
                None => RhoSpec::default_mean(s.order()),
            };
            print_value(&leading_trace(s, &rho)?, digits)
        }
    })
}

fn check(suite: &str, seed: u64, cases: Option<usize>) -> Out {
    let names: Vec<(&str, usize)> = if suite == "all" {
        SUITES.to_vec()
    } else {
        let default = SUITES.iter().find(|(n, _)| *n == suite).map(|(_, c)| *c);
        let Some(default) = default else {
            let known: Vec<_> = SUITES.iter().map(|(n, _)| *n).collect();
            return Err(
                Error::InvalidParameter(format!("unknown suite {suite}; known: all, {}", known.join(", "))).into()
            );
        };
        vec![(suite, default)]
    };
    let mut reports = Vec::new();
    let mut failed = 0;
    for (name, default) in names {
        let r = run_suite(name, seed, cases.unwrap_or(default))?;
        say!(
            "{:<18} {} cases={} failures={} time={:.2}s",
            r.suite,
            if r.passed() { "PASS" } else { "FAIL" },
            r.cases,
            r.failures.len(),
            r.wall_time_s
        );
        for f in &r.failures {
            say!("  case {}: {}\n    {}", f.case, f.message, f.counterexample);
        }
        failed += r.failures.len();
        reports.push(serde_json::to_value(&r).expect("serializable"));
    }
    let report = Value::Array(reports);
    if failed > 0 {
        return Err(Failure::Suite(failed, report));
    }
    Ok(report)
}

fn oracle(cmd: &OracleCmd, digits: u32) -> Out {
    match cmd {
        OracleCmd::Eval { file, x, xi } => {
            let s = symbol(file)?;
            let z = eval_symbol(&s, x, xi, digits)?;
            say!("{} {:+}i", z.re, z.im);
            Ok(json!([z.re, z.im]))
        }
        OracleCmd::RadialFit { file, x, lo, hi, count } => {
            let s = symbol(file)?;
            let grid = QuadratureGrid::standard(s.dim())?;
            let fit = radial_fp(&s, x, &geometric_radii(*lo, *hi, *count), &grid)?;
            for (p, c) in &fit.powers {
                say!("R^{p}: {} {:+}i", c.re, c.im);
            }
            say!("log R: {} {:+}i", fit.log_coeff.re, fit.log_coeff.im);
            say!("finite part: {} {:+}i", fit.finite_part.re, fit.finite_part.im);
            say!("condition: {:.3e}", fit.condition);
            Ok(json!({
                "powers": fit.powers.iter().map(|(p, c)| json!({ "power": p, "coeff": [c.re, c.im] })).collect::<Vec<_>>(),
                "log_coeff": [fit.log_coeff.re, fit.log_coeff.im],
                "finite_part": [fit.finite_part.re, fit.finite_part.im],
                "condition": fit.condition,
            }))
        }
        OracleCmd::ModeTrace { a, b, k } => {
            let (a, b) = (symbol(a)?, symbol(b)?);
            let mut rows = Vec::new();
            for &k in k {
                let t = numeric_commutator_trace(&mode_matrix(&a, k)?, &mode_matrix(&b, k)?)?;
                say!("K={k:<5} trace={} {:+}i |trace|={:.6e}", t.re, t.im, t.norm());
                rows.push(json!({ "K": k, "trace": [t.re, t.im] }));
            }
            Ok(Value::Array(rows))
        }
    }
}

fn run(cli: &Cli) -> Out {
    let digits = cli.digits;
    match &cli.cmd {
        Cmd::Eval { functional, file, rho, floor } => {
            eval(*functional, &floored(symbol(file)?, floor), rho.as_ref(), digits)
        }
        Cmd::Star { a, b, floor } => {
            let (a, b) = (symbol(a)?, symbol(b)?);
            let p = match floor.floor {
                Some(f) => a.star_truncated(&b, f)?,
                None => a.star(&b)?,
            };
            Ok(emit(&p))
        }
        Cmd::Commutator { a, b, floor } => Ok(emit(&floored(symbol(a)?.commutator(&symbol(b)?)?, floor))),
        Cmd::Parametrix { file, floor } => Ok(emit(&symbol(file)?.parametrix(*floor)?)),
        Cmd::Decompose { file } => {
            let d = decompose(&symbol(file)?)?;
            Ok(json!({ "tau": d.tau.iter().map(emit).collect::<Vec<_>>(), "residual_floor": d.residual_floor }))
        }
        Cmd::Exp { file } => Ok(emit(exp_symbol(&symbol(file)?)?.base())),
        Cmd::Log { file } => Ok(emit(&log_symbol(&GroupElement::new(symbol(file)?)?)?)),
        Cmd::Det { file, lambda: l, floor } => {
            let g = GroupElement::new(floored(symbol(file)?, floor))?;
            let lam = lambda(l, g.base().order())?;
            let d = determinant(&g, &lam, digits)?;
            say_inline!("log Det = ");
            let exp = print_value(&d.exponent, digits);
            say!("Det ≈ {} {:+}i", d.value.re, d.value.im);
            Ok(json!({ "exponent": exp, "value": [d.value.re, d.value.im] }))
        }
        Cmd::PathDet { file, lambda: l } => {
            let path = PolynomialPath::new(parse_symbols(&read(file)?)?)?;
            let lam = lambda(l, path.order())?;
            let d = path_determinant(&path, &lam, digits)?;
            say_inline!("log Det = ");
            let exp = print_value(&d.result.exponent, digits);
            say!("Det ≈ {} {:+}i", d.result.value.re, d.result.value.im);
            let poly: Vec<_> = d.exponent_poly.iter().map(|c| c.to_string()).collect();
            say!("E(t) coefficients: [{}]", poly.join(", "));
            Ok(json!({ "exponent": exp, "value": [d.result.value.re, d.result.value.im], "exponent_poly": poly }))
        }
        Cmd::Oracle(o) => oracle(o, digits),
        Cmd::Check { suite, seed, cases } => check(suite, *seed, *cases),
        Cmd::Gen { seed, n, order, floor, max_freq, max_layer, even } => {
            let p = GenParams::new(*n, *order, *floor).max_freq(*max_freq).max_layer(*max_layer).odd(!even);
            Ok(emit(&gen_random_symbol(*seed, &p)?))
        }
    }
}

fn write_out(out: Option<&PathBuf>, report: &Value) -> std::result::Result<(), Failure> {
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(report).expect("serializable");
        std::fs::write(path, text + "\n").map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.as_ref();
    let result = run(&cli).and_then(|report| write_out(out, &report));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suite(k, report)) => {
            eprintln!("error: {k} suite failure(s)");
            if let Err(Failure::Io(e)) = write_out(out, &report) {
                eprintln!("error: {e}");
            }
            ExitCode::from(4)
        }
        Err(Failure::Core(e @ Error::Parse(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
