//! `kummer`: JSON reports for μ₂/α₂ Kummer surface computations.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input. Reports go to
//! stdout; diagnostics and timing go to stderr so stdout stays byte-stable.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use kummer_core::curveconfig::{
    ade_string, ade_type, builtin_figure1, builtin_figure2, contraction_check_sec6, figure1_cycle16, figure1_cycle8,
    figure1_fibers_f, figure1_fibers_g, gram_from_graph, intersection_number, intersection_vector, is_fiber,
    lattice_generated_by, sec6_fiber_bound, trivial_lattice, CurveGraph, Divisor, FiberType,
};
use kummer_core::f2quad::{
    arf_invariant, count_zeros, overlattice_count, standard_form, totally_singular_subspaces, zeros_closed_form,
    F2QuadForm,
};
use kummer_core::gf2k::FieldSpec;
use kummer_core::kummer::{
    classify_singularities, point_count_formula, rational_points, surface_report, verify_substitution, DeltaField,
    Singularities,
};
use kummer_core::lattice::{
    artin_sigma, direct_sum, discriminant_form_f2, discriminant_group, hyperbolic_u, root_lattice, Lattice, RootKind,
    Sign,
};
use kummer_core::liealg::{bracket, classify_line, is_p_closed, p_map, LieElement, ProductLieElement};
use kummer_core::selftest;

const SCHEMA: &str = "kummer-report/1";

#[derive(Parser)]
#[command(name = "kummer", version, about = "Exact checks for Kummer surfaces of the cuspidal curve in characteristic 2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse the quotient of C×C by the action given by seven coefficients.
    Surface {
        /// Field spec, e.g. gf16:0x13.
        #[arg(long)]
        field: String,
        /// λ₄,λ₂,λ₀,μ₄,μ₂,μ₀,τ as hex literals.
        #[arg(long)]
        coeffs: String,
    },
    /// Curve-configuration check suites.
    Graph {
        #[command(subcommand)]
        which: GraphCommand,
    },
    /// Invariants of a lattice.
    Lattice {
        #[command(subcommand)]
        which: LatticeCommand,
    },
    /// Quadratic forms over F₂ and overlattice counts.
    Quadform {
        #[command(subcommand)]
        which: QuadCommand,
    },
    /// Bracket, 2-map and p-closedness in the restricted Lie algebra.
    Lie {
        #[arg(long)]
        field: String,
        /// λ₄,λ₂,λ₀,τ as hex literals.
        #[arg(long)]
        x: String,
        /// Second element: bracket with x, and the pair (x, y) in the product algebra.
        #[arg(long)]
        y: Option<String>,
    },
    /// Run the numbered reproduction checks.
    Selftest,
}

#[derive(Subcommand)]
enum GraphCommand {
    Figure1,
    Figure2,
    Sec4,
    Sec6,
    /// Print a built-in configuration in the text format.
    Export { name: Builtin },
    /// Span lattice of a graph file, and fiber types of the given divisors.
    File {
        path: PathBuf,
        #[arg(long = "fiber")]
        fibers: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Figure1,
    Figure2,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Direct sum of U, A<n>, D<n>, E<n> summands.
    Sum {
        #[arg(required = true)]
        parts: Vec<String>,
        #[arg(long, value_enum, default_value = "negative")]
        sign: SignArg,
    },
    /// A JSON file {"labels": [...] | null, "gram": [[...]]}.
    File { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Positive,
    Negative,
}

#[derive(Args)]
struct FormArgs {
    /// Rank r of the lattice (selects the standard form by r mod 8).
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    sigma: Option<u32>,
    /// Explicit form as comma-separated hex bit rows.
    #[arg(long, conflicts_with_all = ["r", "sigma"])]
    rows: Option<String>,
}

#[derive(Subcommand)]
enum QuadCommand {
    /// Overlattice count n(r, σ) against enumerated singular lines.
    Count {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        sigma: u32,
    },
    /// Totally singular planes and line-plane flags.
    Planes {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        sigma: u32,
    },
    Zeros(FormArgs),
    Arf(FormArgs),
    /// List totally singular subspaces of a given dimension.
    Enumerate {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Serialize)]
struct CheckLine {
    name: String,
    pass: bool,
}

#[derive(Serialize)]
struct RunReport {
    schema: &'static str,
    command: Vec<String>,
    inputs: Value,
    outputs: Value,
    checks: Vec<CheckLine>,
    pass: bool,
}

struct Outcome {
    inputs: Value,
    outputs: Value,
    checks: Vec<CheckLine>,
}

impl Outcome {
    fn new(inputs: Value, outputs: Value) -> Self {
        Self { inputs, outputs, checks: Vec::new() }
    }

    fn check(mut self, name: &str, pass: bool) -> Self {
        self.checks.push(CheckLine { name: name.to_string(), pass });
        self
    }
}

/// Bad user input, reported with exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| anyhow::Error::new(InputError(e.into())))
}

fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn lattice_summary(l: &Lattice) -> Value {
    let divisors: Vec<Value> = l.elementary_divisors().iter().map(int).collect();
    let nondeg = l.is_nondegenerate();
    let alternating = if nondeg && l.is_even() { discriminant_group(l).ok().map(|d| d.is_alternating()) } else { None };
    json!({
        "rank": l.rank(),
        "det": int(&l.det()),
        "signature": l.signature().ok(),
        "even": l.is_even(),
        "elementary_divisors": divisors,
        "two_elementary": l.is_2_elementary(),
        "sigma": artin_sigma(l).ok(),
        "alternating": alternating,
    })
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    input(s.parse::<FieldSpec>())
}

fn cmd_surface(field: &str, coeffs: &str) -> Result<Outcome> {
    let f = parse_field(field)?;
    let d = input(DeltaField::parse(f, coeffs))?;
    let report = surface_report(&d)?;
    let inputs = json!({ "field": f.to_string(), "coeffs": d.coeffs().map(|c| c.to_hex()) });
    let mut outputs = serde_json::to_value(&report)?;
    let mut out = Outcome::new(inputs, Value::Null);
    if report.normal {
        let pts = rational_points(&d)?;
        let sing: Singularities = classify_singularities(&d)?;
        let verified = pts.points.iter().map(|p| verify_substitution(&d, p)).collect::<Result<Vec<_>, _>>()?;
        outputs["singularity_summary"] = json!(sing.summary());
        outputs["solution_field"] = json!(pts.field.to_string());
        let formula = point_count_formula(d.group_type(), d.lam2.is_zero(), pts.m);
        out = out
            .check("fixed scheme has length 16", report.fixed_length == Some(16))
            .check("point count matches formula", report.point_count == Some(formula))
            .check("every point satisfies the substitution identity", verified.iter().all(|&v| v));
        if let Some(s) = report.artin_sigma {
            out = out.check("artin invariant equals 3 - m", Some(s) == report.m.map(|m| 3 - m));
        }
    }
    out.outputs = outputs;
    Ok(out)
}

fn fiber_list(g: &CurveGraph, ds: &[Divisor]) -> Result<Vec<Value>> {
    ds.iter().map(|d| Ok(json!({ "divisor": d.to_string(), "type": is_fiber(g, d)?.to_string() }))).collect()
}

fn cmd_graph(which: &GraphCommand) -> Result<Outcome> {
    match which {
        GraphCommand::Figure1 => {
            let g = builtin_figure1();
            let span = lattice_generated_by(&g);
            let q = discriminant_form_f2(&span)?;
            let lines = totally_singular_subspaces(&q, 1).len();
            let outputs = json!({
                "vertices": g.len(),
                "edges": g.num_edges(),
                "gram_rank": gram_from_graph(&g).gram().rank(),
                "span": lattice_summary(&span),
                "discriminant_form": q,
                "singular_lines": lines,
            });
            Ok(Outcome::new(json!({ "graph": "figure1" }), outputs)
                .check("30 curves", g.len() == 30)
                .check("45 edges", g.num_edges() == 45)
                .check("rank 22", span.rank() == 22)
                .check("det -2^6", span.det() == BigInt::from(-64))
                .check("sigma 3", artin_sigma(&span).ok() == Some(3))
                .check("27 singular lines", lines == 27))
        }
        GraphCommand::Figure2 => {
            let g = builtin_figure2();
            let span = lattice_generated_by(&g);
            let mut star = g.neighbors("E0")?;
            star.sort();
            let outputs = json!({
                "vertices": g.len(),
                "edges": g.num_edges(),
                "gram_rank": gram_from_graph(&g).gram().rank(),
                "span": lattice_summary(&span),
                "e0_neighbors": star,
            });
            Ok(Outcome::new(json!({ "graph": "figure2" }), outputs)
                .check("26 curves", g.len() == 26)
                .check("E0 meets E1, E2, E3, C0, C'0", star == ["C'0", "C0", "E1", "E2", "E3"]))
        }
        GraphCommand::Sec4 => {
            let g = builtin_figure1();
            let (ff, gf) = (figure1_fibers_f(), figure1_fibers_g());
            let n = intersection_number(&g, &ff[1], &gf[1])?;
            let a: Divisor = "2C0-C1-C2-C3-C4".parse()?;
            let b: Divisor = "2C'0-C'1-C'2-C'3-C'4".parse()?;
            let same = intersection_vector(&g, &a)? == intersection_vector(&g, &b)?;
            let f_types = fiber_list(&g, &ff)?;
            let g_types = fiber_list(&g, &gf)?;
            let all_i0 = ff.iter().chain(&gf).map(|d| is_fiber(&g, d)).collect::<Result<Vec<_>, _>>()?;
            let sections_ok = (1..=4).all(|j| {
                let s = Divisor::from_terms(&[(&format!("C'{j}"), 1)]);
                ff.iter().all(|f| intersection_number(&g, &s, f).ok() == Some(1))
            });
            let t = trivial_lattice(&g, &ff, "C'1")?;
            let outputs = json!({
                "intersection": n,
                "intersection_vectors_equal": same,
                "fibers_f": f_types,
                "fibers_g": g_types,
                "trivial_lattice": { "rank": t.rank(), "det": int(&t.det()) },
            });
            Ok(Outcome::new(json!({ "graph": "figure1" }), outputs)
                .check("fiber intersection is 2", n == 2)
                .check("intersection vectors agree", same)
                .check("all ten fibers are I0*", all_i0.iter().all(|t| *t == FiberType::IStar(0)))
                .check("each C'j is a section", sections_ok)
                .check("trivial lattice rank 22, det -2^10", t.rank() == 22 && t.det() == BigInt::from(-1024)))
        }
        GraphCommand::Sec6 => {
            let g = builtin_figure1();
            let r = contraction_check_sec6(&g)?;
            let c16 = figure1_cycle16();
            let c8 = figure1_cycle8();
            let (t16, t8) = (is_fiber(&g, &c16)?, is_fiber(&g, &c8)?);
            let star_apart = ["E0", "E1", "E2", "E3"].iter().all(|e| c16.get(e) == 0)
                && ["E0", "E1", "E2", "E3"].iter().all(|e| {
                    intersection_number(&g, &c16, &Divisor::from_terms(&[(e, 1)])).ok() == Some(0)
                });
            let mut white: Vec<String> = (1..=4).flat_map(|i| (1..=4).map(move |j| format!("E{i}{j}"))).collect();
            white.extend((0..=3).map(|k| format!("E{k}")));
            let refs: Vec<&str> = white.iter().map(String::as_str).collect();
            let white_ade = ade_string(&ade_type(&g, &refs)?);
            let bound = sec6_fiber_bound(22);
            let outputs = json!({
                "contraction": r,
                "cycle16": t16.to_string(),
                "cycle8": t8.to_string(),
                "cycle16_avoids_e0_e3": star_apart,
                "white_vertices": white_ade,
                "max_components": bound.map(|b| b.0),
                "max_n": bound.map(|b| b.1),
            });
            Ok(Outcome::new(json!({ "graph": "figure1" }), outputs)
                .check("eight curves pairwise disjoint", r.eight_disjoint)
                .check("12 curves contracted", r.contracted == 12)
                .check("tjurina total 24", r.tjurina_total == 24)
                .check("16-cycle is I16", t16 == FiberType::I(16))
                .check("8-cycle is I8", t8 == FiberType::I(8))
                .check("16-cycle avoids E0..E3", star_apart)
                .check("fiber through E0..E3 is I_n* with n <= 1", bound == Some((6, 1))))
        }
        GraphCommand::Export { .. } => unreachable!("handled before dispatch"),
        GraphCommand::File { path, fibers } => {
            let text = input(std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))?;
            let g: CurveGraph = input(text.parse())?;
            let span = lattice_generated_by(&g);
            let ds: Vec<Divisor> = fibers.iter().map(|s| input(s.parse())).collect::<Result<_>>()?;
            let types = ds.iter().map(|d| input(is_fiber(&g, d))).collect::<Result<Vec<_>>>()?;
            let outputs = json!({
                "vertices": g.len(),
                "edges": g.num_edges(),
                "gram_rank": gram_from_graph(&g).gram().rank(),
                "span": lattice_summary(&span),
                "fibers": ds.iter().zip(&types).map(|(d, t)| json!({ "divisor": d.to_string(), "type": t.to_string() })).collect::<Vec<_>>(),
            });
            Ok(Outcome::new(json!({ "file": path.display().to_string(), "fibers": fibers }), outputs))
        }
    }
}

fn cmd_lattice(which: &LatticeCommand) -> Result<Outcome> {
    match which {
        LatticeCommand::Sum { parts, sign } => {
            let sign = match sign {
                SignArg::Positive => Sign::Positive,
                SignArg::Negative => Sign::Negative,
            };
            let mut ls = Vec::new();
            for p in parts {
                if p.eq_ignore_ascii_case("U") {
                    ls.push(hyperbolic_u());
                } else {
                    let kind: RootKind = input(p.parse())?;
                    ls.push(root_lattice(kind, sign)?);
                }
            }
            let l = direct_sum(&ls);
            let sign_name = if sign == Sign::Negative { "negative" } else { "positive" };
            Ok(Outcome::new(json!({ "parts": parts, "sign": sign_name }), lattice_summary(&l)))
        }
        LatticeCommand::File { path } => {
            let text = input(std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())))?;
            let l: Lattice = input(serde_json::from_str(&text))?;
            Ok(Outcome::new(json!({ "file": path.display().to_string() }), lattice_summary(&l)))
        }
    }
}

fn form_from(args: &FormArgs) -> Result<(F2QuadForm, Value)> {
    match (&args.rows, args.r, args.sigma) {
        (Some(rows), _, _) => {
            let rs: Vec<&str> = rows.split(',').collect();
            Ok((input(F2QuadForm::from_hex_rows(&rs))?, json!({ "rows": rs })))
        }
        (None, Some(r), Some(sigma)) => {
            if r % 4 != 2 {
                return Err(anyhow::Error::new(InputError(anyhow!("r must be 2 mod 4, got {r}"))));
            }
            Ok((input(standard_form(sigma, r % 8))?, json!({ "r": r, "sigma": sigma })))
        }
        _ => Err(anyhow::Error::new(InputError(anyhow!("give --rows, or both --r and --sigma")))),
    }
}

fn cmd_quadform(which: &QuadCommand) -> Result<Outcome> {
    match which {
        QuadCommand::Count { r, sigma } => {
            let n = input(overlattice_count(*r, *sigma))?;
            let q = standard_form(*sigma, r % 8)?;
            let lines = totally_singular_subspaces(&q, 1).len() as u64;
            Ok(Outcome::new(json!({ "r": r, "sigma": sigma }), json!({ "count": n, "enumerated": lines }))
                .check("closed form equals enumeration", n == lines))
        }
        QuadCommand::Planes { r, sigma } => {
            input(overlattice_count(*r, *sigma))?;
            let q = standard_form(*sigma, r % 8)?;
            let lines = totally_singular_subspaces(&q, 1);
            let planes = totally_singular_subspaces(&q, 2);
            let flags = 3 * planes.len();
            Ok(Outcome::new(
                json!({ "r": r, "sigma": sigma }),
                json!({ "lines": lines.len(), "planes": planes.len(), "flags": flags }),
            )
            .check("every plane has 3 singular lines", planes.iter().all(|p| p.len() == 2)))
        }
        QuadCommand::Zeros(args) => {
            let (q, inputs) = form_from(args)?;
            let z = input(count_zeros(&q))?;
            let arf = arf_invariant(&q)?;
            let mut outputs = json!({ "dim": q.dim(), "zeros": z, "arf": arf });
            let mut out = Outcome::new(inputs, Value::Null);
            if q.dim() > 0 {
                let expected = zeros_closed_form(q.dim() as u32 / 2, arf);
                outputs["closed_form"] = json!(expected);
                out = out.check("zero count matches closed form", z == expected);
            }
            out.outputs = outputs;
            Ok(out)
        }
        QuadCommand::Arf(args) => {
            let (q, inputs) = form_from(args)?;
            let arf = input(arf_invariant(&q))?;
            Ok(Outcome::new(inputs, json!({ "dim": q.dim(), "form": q.to_string(), "arf": arf })))
        }
        QuadCommand::Enumerate { form, dim } => {
            let (q, mut inputs) = form_from(form)?;
            inputs["dim"] = json!(dim);
            let subs = totally_singular_subspaces(&q, *dim);
            let hex: Vec<Vec<String>> = subs.iter().map(|b| b.iter().map(|v| format!("{v:#x}")).collect()).collect();
            Ok(Outcome::new(inputs, json!({ "count": subs.len(), "subspaces": hex })))
        }
    }
}

fn parse_lie(f: FieldSpec, s: &str) -> Result<LieElement> {
    let items: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
    input(LieElement::parse_hex(f, &items))
}

fn eigen_json(c: Option<kummer_core::gf2k::FieldElement>) -> Value {
    c.map_or(Value::Null, |c| json!(c.to_hex()))
}

fn cmd_lie(field: &str, x: &str, y: Option<&str>) -> Result<Outcome> {
    let f = parse_field(field)?;
    let xe = parse_lie(f, x)?;
    let mut outputs = json!({ "p_map": p_map(&xe).to_hex() });
    let mut inputs = json!({ "field": f.to_string(), "x": xe.to_hex() });
    if !xe.is_zero() {
        outputs["eigenvalue"] = eigen_json(is_p_closed(&xe)?);
        outputs["group_type"] = json!(classify_line(&xe)?.to_string());
    }
    if let Some(y) = y {
        let ye = parse_lie(f, y)?;
        inputs["y"] = json!(ye.to_hex());
        outputs["bracket"] = json!(bracket(&xe, &ye).to_hex());
        let pair = ProductLieElement::new(xe, ye);
        if !pair.is_zero() {
            let c = is_p_closed(&pair)?;
            outputs["pair_eigenvalue"] = eigen_json(c);
            outputs["pair_p_closed"] = json!(c.is_some());
            outputs["pair_group_type"] = c.map_or(Value::Null, |_| json!(classify_line(&pair).expect("closed").to_string()));
        }
    }
    Ok(Outcome::new(inputs, outputs))
}

fn cmd_selftest() -> Outcome {
    let checks = selftest::run();
    let outputs = serde_json::to_value(&checks).expect("serializable");
    let mut out = Outcome::new(json!({}), json!({ "checks": outputs }));
    for c in &checks {
        out = out.check(&format!("{}. {}", c.id, c.name), c.pass);
    }
    out
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Surface { field, coeffs } => cmd_surface(field, coeffs),
        Command::Graph { which } => cmd_graph(which),
        Command::Lattice { which } => cmd_lattice(which),
        Command::Quadform { which } => cmd_quadform(which),
        Command::Lie { field, x, y } => cmd_lie(field, x, y.as_deref()),
        Command::Selftest => Ok(cmd_selftest()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Graph { which: GraphCommand::Export { name } } = &cli.command {
        let g = match name {
            Builtin::Figure1 => builtin_figure1(),
            Builtin::Figure2 => builtin_figure2(),
        };
        if matches!(name, Builtin::Figure2) {
            let _ = writeln!(std::io::stdout().lock(), "# E<i><j>: row i from the top, column j from the left of the drawing");
        }
        let _ = write!(std::io::stdout().lock(), "{}", g.to_text());
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let command: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli) {
        Ok(out) => {
            let pass = out.checks.iter().all(|c| c.pass);
            let report = RunReport { schema: SCHEMA, command, inputs: out.inputs, outputs: out.outputs, checks: out.checks, pass };
            // a closed pipe on stdout is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&report).expect("serializable"));
            eprintln!("kummer: finished in {} ms", start.elapsed().as_millis());
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("kummer: check failed: {}", c.name);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("kummer: error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
