//! Command-line front end: argument parsing, dispatch and output rendering.
//!
//! [`run`] is the whole program minus process plumbing, so it can be driven
//! from tests. Every command builds a [`CommandResult`]; `--json` prints it
//! with sorted keys, otherwise an aligned text rendering is printed.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use cjac_core::acceptance::{run_suite, Criterion};
use cjac_core::error::{Error, Result};
use cjac_core::exec::Exec;
use cjac_core::fourier::{catalog_run, evaluate_goal, goal, AxiomSet, Axioms, DEFAULT_DEPTH};
use cjac_core::graphs::make_vine;
use cjac_core::obstruct::obstruction_report;
use cjac_core::rational::render;
use cjac_core::stability::{delta_g1, phi_value, stable_multidegrees, StabilityFamily};
use cjac_core::tautalg::{pushforward_traced, Monomial, PushContext, TautExpr};
use cjac_core::wittencalc::{pairing_matrix, psi_kappa_integral, rank, witten_correlator, Correlator};
use cjac_core::VERSION;

/// Successful determination (including UNSAT and unverified goals).
pub const EXIT_OK: i32 = 0;
/// Malformed command line.
pub const EXIT_USAGE: i32 = 1;
/// The computation itself failed.
pub const EXIT_INTERNAL: i32 = 2;
/// `selftest` ran but at least one criterion failed.
pub const EXIT_SELFTEST_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cjac", version = VERSION, about = "Exact computations on universal compactified Jacobians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Print the full JSON result instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stability values, δ and stable multidegrees on the two-edge vines.
    Stability {
        #[arg(long)]
        g: u32,
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Pushforward of Θ^a κ^b to the base.
    Push {
        #[arg(long)]
        g: u32,
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
        /// A monomial such as "T^3 K^1" (T = Θ, K = κ).
        #[arg(long)]
        monomial: String,
        /// Include the justification log.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Output,
    },
    /// A ψ-correlator, optionally with one κ class.
    Witten {
        #[arg(long)]
        g: u32,
        /// Comma-separated ψ exponents.
        #[arg(long, value_delimiter = ',')]
        taus: Vec<u32>,
        #[arg(long)]
        kappa: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// The vine pairing matrix, its diagonal and rank.
    Pairing {
        #[arg(long)]
        g: u32,
        #[command(flatten)]
        out: Output,
    },
    /// The Fourier goal catalog under an axiom set.
    Fourier {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        axioms: Axioms,
        #[arg(long)]
        goal: Option<String>,
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The rational obstruction system for a pair of stability parameters.
    Obstruction {
        #[arg(long)]
        g: u32,
        #[arg(long, allow_hyphen_values = true)]
        z: i64,
        #[arg(long, allow_hyphen_values = true)]
        zprime: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Runs every acceptance criterion.
    Selftest {
        #[command(flatten)]
        out: Output,
    },
}

/// The uniform output envelope.
#[derive(Debug, Clone)]
pub struct CommandResult {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub trace: Option<Value>,
    /// Human-readable rendering for non-JSON output.
    pub text: String,
}

impl CommandResult {
    /// Deterministic JSON: object keys are sorted and rationals are `"p/q"`.
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "version": VERSION,
        });
        if let Some(t) = &self.trace {
            v["trace"] = t.clone();
        }
        v
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            format!("{}\n", serde_json::to_string_pretty(&self.to_json()).expect("json renders"))
        } else {
            self.text.clone()
        }
    }
}

fn inputs(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Parses `"T^a K^b"`; either factor may be omitted, and a bare letter means
/// exponent 1.
pub fn parse_monomial(s: &str) -> Result<Monomial> {
    let (mut theta, mut kappa) = (0, 0);
    for factor in s.split(|c: char| c.is_whitespace() || c == '*').filter(|f| !f.is_empty()) {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
            None => (factor, 1),
        };
        match name {
            "T" => theta += exp,
            "K" => kappa += exp,
            _ => return Err(Error::Parse(format!("unknown factor {name:?}; expected T or K"))),
        }
    }
    Ok(Monomial::theta_kappa(theta, kappa))
}

fn stability(g: u32, z: i64) -> Result<CommandResult> {
    let fam = StabilityFamily::phi(g, z);
    let mut rows = Vec::new();
    let mut text = format!("{:>3}  {:<16} {:>5}  stable degrees at v\n", "g1", "phi_v", "delta");
    for g1 in 1..g {
        let graph = make_vine(g, g1, 2)?;
        let phi = phi_value(&fam, &graph, 0)?;
        let delta = delta_g1(&fam, g1)?;
        let degrees: Vec<i64> = stable_multidegrees(&fam, &graph, 0)?.iter().map(|d| d.at(0)).collect();
        text.push_str(&format!("{g1:>3}  {:<16} {delta:>5}  {degrees:?}\n", phi.to_string()));
        rows.push(json!({"g1": g1, "phi_v": phi.to_string(), "delta": delta, "stable_multidegrees": degrees}));
    }
    Ok(CommandResult {
        command: "stability",
        inputs: inputs(&[("g", json!(g)), ("z", json!(z))]),
        result: Value::Array(rows),
        trace: None,
        text,
    })
}

fn push(g: u32, z: i64, monomial: &str, trace: bool) -> Result<CommandResult> {
    let m = parse_monomial(monomial)?;
    let ctx = PushContext::new(StabilityFamily::phi(g, z));
    let (value, log) = pushforward_traced(&TautExpr::monomial(cjac_core::rational::qi(1), m), &ctx)?;
    let result = value.to_json();
    Ok(CommandResult {
        command: "push",
        inputs: inputs(&[("g", json!(g)), ("z", json!(z)), ("monomial", json!(monomial))]),
        text: format!("{}\n", serde_json::to_string_pretty(&result).expect("json renders")),
        result,
        trace: trace.then(|| log.to_json()),
    })
}

fn witten(g: u32, taus: &[u32], kappa: Option<u32>) -> Result<CommandResult> {
    if taus.is_empty() {
        return Err(Error::InvalidInput("--taus needs at least one exponent".into()));
    }
    let value = match kappa {
        None => witten_correlator(&Correlator::new(g, taus.to_vec()))?,
        Some(b) => psi_kappa_integral(g, taus.len(), taus, Some(b))?,
    };
    let mut ins = inputs(&[("g", json!(g)), ("taus", json!(taus))]);
    if let Some(b) = kappa {
        ins.insert("kappa".into(), json!(b));
    }
    Ok(CommandResult {
        command: "witten",
        inputs: ins,
        result: json!(render(&value)),
        trace: None,
        text: format!("{}\n", render(&value)),
    })
}

fn pairing(g: u32) -> Result<CommandResult> {
    let m = pairing_matrix(g, false)?;
    let r = rank(&m);
    let rendered: Vec<Vec<String>> = m.iter().map(|row| row.iter().map(render).collect()).collect();
    let diagonal: Vec<String> = (0..m.len()).map(|i| render(&m[i][i])).collect();
    let width = rendered.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut text = String::new();
    for row in &rendered {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        text.push_str(&cells.join("  "));
        text.push('\n');
    }
    text.push_str(&format!("rank {r}\n"));
    Ok(CommandResult {
        command: "pairing",
        inputs: inputs(&[("g", json!(g))]),
        result: json!({"matrix": rendered, "diagonal": diagonal, "rank": r}),
        trace: None,
        text,
    })
}

fn fourier(g: u32, axioms: Axioms, name: Option<&str>, trace: bool) -> Result<CommandResult> {
    let ax = AxiomSet::new(axioms, g);
    let outcomes = match name {
        Some(n) => vec![evaluate_goal(&goal(g, n)?, ax, DEFAULT_DEPTH, trace)?],
        None if trace => cjac_core::fourier::catalog(g)?
            .iter()
            .map(|goal| evaluate_goal(goal, ax, DEFAULT_DEPTH, true))
            .collect::<Result<Vec<_>>>()?,
        None => catalog_run(ax, DEFAULT_DEPTH, Exec::Parallel)?.goals,
    };
    let mut text = String::new();
    let mut goals = Vec::new();
    for o in &outcomes {
        text.push_str(&format!("{:<28} {:<6} {:<16} {} steps\n", o.goal, o.theory.name(), o.verdict, o.steps));
        goals.push(serde_json::to_value(o).expect("outcome serialises"));
    }
    let mut ins = inputs(&[("g", json!(g)), ("axioms", json!(axioms.name()))]);
    if let Some(n) = name {
        ins.insert("goal".into(), json!(n));
    }
    Ok(CommandResult { command: "fourier", inputs: ins, result: Value::Array(goals), trace: None, text })
}

fn obstruction(g: u32, z: i64, zprime: i64) -> Result<CommandResult> {
    let report = obstruction_report(g, z, zprime)?;
    let mut text = String::new();
    for e in &report.system.equations {
        text.push_str(&format!("g1 = {:>2}:  {e}\n", e.g1));
    }
    text.push_str(&format!("result: {}\n", report.result.to_json()));
    text.push_str(if report.distinguished() { "rings distinguished\n" } else { "not distinguished\n" });
    Ok(CommandResult {
        command: "obstruction",
        inputs: inputs(&[("g", json!(g)), ("z", json!(z)), ("zprime", json!(zprime))]),
        result: report.to_json(),
        trace: None,
        text,
    })
}

/// Criteria 1–8 plus the determinism check (9): the suite is run twice and
/// the two serialisations compared.
pub fn selftest_criteria() -> Vec<Criterion> {
    let first = run_suite(Exec::Parallel);
    let second = run_suite(Exec::Parallel);
    let a = serde_json::to_string(&first.to_json()).expect("json renders");
    let b = serde_json::to_string(&second.to_json()).expect("json renders");
    let mut criteria = first.criteria;
    criteria.push(Criterion {
        id: 9,
        name: "determinism",
        pass: a == b,
        detail: format!(
            "two runs, {} and {} bytes, {}",
            a.len(),
            b.len(),
            if a == b { "identical" } else { "different" }
        ),
        elapsed: std::time::Duration::ZERO,
        budget: None,
    });
    criteria
}

fn selftest() -> (CommandResult, bool) {
    let criteria = selftest_criteria();
    let passed = criteria.iter().filter(|c| c.pass).count();
    let failed = criteria.len() - passed;
    let mut text = String::new();
    for c in &criteria {
        text.push_str(&format!("{} {:>2} {:<30} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.id, c.name, c.detail));
    }
    text.push_str(&format!("{passed} passed, {failed} failed\n"));
    let result = json!({
        "criteria": criteria.iter().map(Criterion::to_json).collect::<Vec<_>>(),
        "passed": passed,
        "failed": failed,
    });
    (CommandResult { command: "selftest", inputs: Map::new(), result, trace: None, text }, failed == 0)
}

/// Runs the program on `argv` (including the program name) and returns the
/// exit code and everything that would be printed.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let (outcome, as_json) = match cli.command {
        Command::Stability { g, z, out } => (stability(g, z), out.json),
        Command::Push { g, z, monomial, trace, out } => (push(g, z, &monomial, trace), out.json),
        Command::Witten { g, taus, kappa, out } => (witten(g, &taus, kappa), out.json),
        Command::Pairing { g, out } => (pairing(g), out.json),
        Command::Fourier { g, axioms, goal, trace, out } => (fourier(g, axioms, goal.as_deref(), trace), out.json),
        Command::Obstruction { g, z, zprime, out } => (obstruction(g, z, zprime), out.json),
        Command::Selftest { out } => {
            let (result, ok) = selftest();
            let code = if ok { EXIT_OK } else { EXIT_SELFTEST_FAILED };
            return (code, result.render(out.json));
        }
    };
    match outcome {
        Ok(result) => (EXIT_OK, result.render(as_json)),
        Err(e @ (Error::Parse(_) | Error::InvalidInput(_) | Error::OutOfRange(_) | Error::DimensionMismatch(_))) => {
            (EXIT_USAGE, format!("error: {e}\n\n{}", usage()))
        }
        Err(e) => (EXIT_INTERNAL, format!("error: {e}\n")),
    }
}

/// The grammar summary printed on usage errors.
pub fn usage() -> String {
    "usage:\n  cjac stability --g G --z Z [--json]\n  cjac push --g G --z Z --monomial \"T^a K^b\" [--trace] [--json]\n  \
     cjac witten --g G --taus a1,a2,... [--kappa b] [--json]\n  cjac pairing --g G [--json]\n  \
     cjac fourier --g G --axioms {full|half|none} [--goal NAME] [--trace] [--json]\n  \
     cjac obstruction --g G --z Z --zprime Z2 [--json]\n  cjac selftest [--json]\n"
        .to_string()
}
