//! Command-line front end. `run` parses arguments, dispatches and writes the
//! report; it returns the process exit status (0 success/PASS, 1 FAIL,
//! 2 usage, parse or evaluation error).
//!
//! Word and expression grammars are documented in [`parse`]. All JSON output
//! has sorted keys, and the same command with the same seed prints the same
//! bytes (`verify` zeroes `elapsed_ms` unless `--timing` is given).

pub mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::{run_suite, Suite, SuiteConfig, DEFAULT_SEED};
use crate::loops::formal::{display_wbasis, display_wedges};
use crate::loops::{FormalSum, LoopAlgebra, WBasis, WedgeSum};
use crate::modulispace::{eval, quasi_bv_delta, GroupSpec, ModuliPoint};
use crate::superalgebra::Rational;
use crate::surface::{parse_skeleton, standard, Skeleton};

pub use parse::{parse_cyclic, parse_function, parse_loop_sum, parse_path, parse_wedge_sum};

#[derive(Parser, Debug)]
#[command(name = "gtbv", version, about = "Goldman–Turaev structures and quasi-BV operators, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Built-in skeleton (torus, pants, genus2, path, theta) or a skeleton JSON file.
    #[arg(long, global = true)]
    pub surface: Option<String>,
    /// Structure group family.
    #[arg(long, global = true, value_enum)]
    pub group: Option<GroupArg>,
    /// Matrix size for gl and q.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Seed for realizations, sample points and suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Trials per (surface, group) case for `verify`.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupArg {
    Gl,
    Q,
    /// the odd double of aff(1) (ignores --n)
    Aff,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Create or inspect skeleton files.
    Surface {
        #[command(subcommand)]
        action: SurfaceCmd,
    },
    /// Goldman bracket of two loop combinations (H₁ vectors allowed).
    Bracket {
        x: String,
        y: String,
        /// Set the trivial loop ◯ to zero instead of keeping it.
        #[arg(long)]
        drop_trivial: bool,
    },
    /// Turaev cobracket of a loop combination.
    Cobracket { x: String },
    /// BV operator: on a wedge combination (`∧(…)`), or the quasi-BV operator on a
    /// function expression evaluated at a seeded random point.
    Bvdelta {
        input: String,
        /// Weight of the cobracket term in the exterior-algebra operator.
        #[arg(long, default_value = "2")]
        cobracket_scale: String,
    },
    /// Evaluate a function expression at a seeded random point.
    Eval { expr: String },
    /// Run a theorem suite and print its report.
    Verify {
        suite: String,
        /// Maximal word length for sampled loops.
        #[arg(long)]
        max_len: Option<usize>,
        /// Keep the measured wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCmd {
    /// Write the skeleton JSON of `--surface` (optionally with rotation numbers).
    New {
        /// Twice the rotation number per edge, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        rot2: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Topological summary of `--surface`.
    Info,
}

/// Outcome of a dispatched command: the text to print and the exit status.
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if status == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return status;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = writeln!(out, "{}", o.text);
            o.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Resolves `--surface`: a built-in name or a path to a skeleton file.
pub fn load_surface(spec: Option<&str>) -> Result<Skeleton> {
    let spec = spec.unwrap_or("torus");
    if let Some(sk) = standard::by_name(spec) {
        return Ok(sk);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::InvalidConfig(format!("`{spec}` is neither a built-in surface nor a readable file: {e}")))?;
    parse_skeleton(&text)
}

fn group_of(c: &Common, default: GroupArg) -> GroupSpec {
    match c.group.unwrap_or(default) {
        GroupArg::Gl => GroupSpec::Gl(c.n),
        GroupArg::Q => GroupSpec::Q(c.n),
        GroupArg::Aff => GroupSpec::Aff1Double,
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub fn display_loop_sum(sk: &Skeleton, s: &FormalSum<WBasis>) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (g, c)) in s.iter().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&format!("{} · ({})", c.abs(), display_wbasis(sk, g)));
    }
    out
}

fn loop_terms(sk: &Skeleton, s: &FormalSum<WBasis>) -> Value {
    s.iter().map(|(g, c)| json!({ "coeff": c.to_string(), "generator": display_wbasis(sk, g) })).collect()
}

fn wedge_terms(sk: &Skeleton, s: &WedgeSum) -> Value {
    s.iter()
        .map(|(m, c)| json!({ "coeff": c.to_string(), "factors": m.iter().map(|g| display_wbasis(sk, g)).collect::<Vec<_>>() }))
        .collect()
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    match &cli.command {
        Command::Surface { action } => surface(c, action),
        Command::Bracket { x, y, drop_trivial } => {
            let sk = load_surface(c.surface.as_deref())?;
            let (xs, ys) = (parse_loop_sum(&sk, x)?, parse_loop_sum(&sk, y)?);
            let alg = LoopAlgebra::new(&sk, c.seed, !drop_trivial)?;
            let b = alg.bracket(&xs, &ys)?;
            let text = display_loop_sum(&sk, &b);
            Ok(Outcome::ok(if c.json {
                pretty(&json!({ "x": display_loop_sum(&sk, &xs), "y": display_loop_sum(&sk, &ys), "result": text, "terms": loop_terms(&sk, &b) }))
            } else {
                text
            }))
        }
        Command::Cobracket { x } => {
            let sk = load_surface(c.surface.as_deref())?;
            let xs = parse_loop_sum(&sk, x)?;
            let alg = LoopAlgebra::new(&sk, c.seed, false)?;
            let mut d = WedgeSum::zero();
            for (g, coeff) in xs.iter() {
                d.add_scaled(&alg.cobracket_gen(g)?, coeff);
            }
            let text = display_wedges(&sk, &d);
            Ok(Outcome::ok(if c.json {
                pretty(&json!({ "x": display_loop_sum(&sk, &xs), "result": text, "terms": wedge_terms(&sk, &d) }))
            } else {
                text
            }))
        }
        Command::Bvdelta { input, cobracket_scale } => {
            let sk = load_surface(c.surface.as_deref())?;
            let trimmed = input.trim_start();
            if trimmed.starts_with('∧') || trimmed.starts_with("wedge") || trimmed.contains('∧') || trimmed.contains("wedge(") {
                let scale: Rational = cobracket_scale
                    .parse()
                    .map_err(|e: crate::superalgebra::rational::ParseRationalError| Error::parse(0, e.to_string()))?;
                let x = parse_wedge_sum(&sk, input)?;
                let alg = LoopAlgebra::new(&sk, c.seed, false)?;
                let d = alg.bv_delta_wedge(&x, &scale)?;
                let text = display_wedges(&sk, &d);
                return Ok(Outcome::ok(if c.json {
                    pretty(&json!({ "input": display_wedges(&sk, &x), "cobracket_scale": scale.to_string(), "result": text, "terms": wedge_terms(&sk, &d) }))
                } else {
                    text
                }));
            }
            let g = group_of(c, GroupArg::Q);
            let lie = g
                .odd_data()
                .ok_or_else(|| Error::UnsupportedFunction(format!("the quasi-BV operator needs an odd pairing; {} has none", g.name())))?;
            let f = parse_function(&sk, input)?;
            let pt = ModuliPoint::random(&sk, g, c.seed)?;
            let v = eval(&quasi_bv_delta(&sk, g, &lie, &f.clone().into()), &pt)?;
            Ok(Outcome::ok(scalar_report(c, &sk, g, &f.display(&sk), &pt, &v)))
        }
        Command::Eval { expr } => {
            let sk = load_surface(c.surface.as_deref())?;
            let g = group_of(c, GroupArg::Gl);
            let f = parse_function(&sk, expr)?;
            let pt = ModuliPoint::random(&sk, g, c.seed)?;
            let v = eval(&f.clone().into(), &pt)?;
            Ok(Outcome::ok(scalar_report(c, &sk, g, &f.display(&sk), &pt, &v)))
        }
        Command::Verify { suite, max_len, timing } => {
            let suite: Suite = suite.parse()?;
            let mut cfg = SuiteConfig::new(suite).seed(c.seed);
            if let Some(t) = c.trials {
                cfg = cfg.trials(t);
            }
            if let Some(l) = max_len {
                cfg = cfg.max_len(*l);
            }
            if let Some(name) = &c.surface {
                cfg = cfg.surface(name, load_surface(Some(name))?);
            }
            if c.group.is_some() {
                cfg = cfg.group(group_of(c, GroupArg::Gl));
            }
            let report = run_suite(&cfg)?;
            Ok(Outcome { text: pretty(&report.to_json_value(*timing)), status: if report.passed() { 0 } else { 1 } })
        }
    }
}

fn scalar_report(c: &Common, sk: &Skeleton, g: GroupSpec, f: &str, pt: &ModuliPoint, v: &crate::superalgebra::Grassmann) -> String {
    if c.json {
        pretty(&json!({
            "function": f,
            "group": g.name(),
            "point": pt.to_json(),
            "seed": c.seed,
            "surface": sk.info().ok(),
            "value": v,
            "value_text": v.to_string(),
        }))
    } else {
        v.to_string()
    }
}

fn surface(c: &Common, action: &SurfaceCmd) -> Result<Outcome> {
    let sk = load_surface(c.surface.as_deref())?;
    match action {
        SurfaceCmd::New { rot2, output } => {
            let sk = match rot2 {
                None => sk,
                Some(list) => {
                    let vals: Vec<i64> = list
                        .split(',')
                        .map(|s| s.trim().parse::<i64>().map_err(|_| Error::parse(0, format!("bad rot2 entry `{s}`"))))
                        .collect::<Result<_>>()?;
                    if vals.len() != sk.num_edges() {
                        return Err(Error::InvalidConfig(format!("{} rot2 values for {} edges", vals.len(), sk.num_edges())));
                    }
                    sk.with_rot2(&vals)
                }
            };
            let text = sk.to_json();
            match output {
                Some(path) => {
                    std::fs::write(path, format!("{text}\n"))
                        .map_err(|e| Error::InvalidConfig(format!("cannot write {}: {e}", path.display())))?;
                    Ok(Outcome::ok(format!("wrote {}", path.display())))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        SurfaceCmd::Info => {
            let info = sk.info()?;
            let cycles: Vec<Vec<String>> = sk
                .boundary_cycles()
                .iter()
                .map(|cyc| cyc.iter().map(|h| sk.halfedge_name(*h).to_string()).collect())
                .collect();
            let rot2: Vec<i64> = (0..sk.num_edges()).map(|e| sk.rot2(e)).collect();
            let h1: Vec<String> = sk.h1_basis_edges().iter().map(|&e| sk.edge_name(e).to_string()).collect();
            if c.json {
                return Ok(Outcome::ok(pretty(&json!({
                    "boundary_cycles": cycles,
                    "h1_basis_edges": h1,
                    "info": info,
                    "rot2": rot2,
                }))));
            }
            let mut s = String::new();
            s.push_str(&format!(
                "vertices {}, edges {}, boundary components {}, genus {}, rank H1 {}\n",
                info.vertices, info.edges, info.boundary_components, info.genus, info.rank_h1
            ));
            s.push_str(&format!("H1 basis edges: {}\n", h1.join(" ")));
            s.push_str(&format!("rot2: {}\n", rot2.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")));
            for (i, cyc) in cycles.iter().enumerate() {
                s.push_str(&format!("boundary {}: {}\n", i + 1, cyc.join(" ")));
            }
            Ok(Outcome::ok(s.trim_end().to_string()))
        }
    }
}
