use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use harmonica::algebra_core::expr::ParseError;
use harmonica::betti_matrix::{delta_ob, delta_wb, wb_membership};
use harmonica::braid_betti::{self as bb, Projection};
use harmonica::braid_derham as bd;
use harmonica::cli_report::{matrix_strings, parse, parse_any, run_suite, AlgebraId, Config, Element, Suite};
use harmonica::derham_matrix::{self, delta_odr, delta_wdr_element};
use harmonica::magnus_gr::magnus;

#[derive(Parser)]
#[command(
    name = "harmonica",
    version,
    about = "Exact checks for harmonic coproducts and braid-group bimodules"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Magnus truncation degree N.
    #[arg(long = "trunc", global = true, env = "HARMONICA_TRUNC", default_value_t = 4)]
    trunc: usize,
    /// RNG seed for sampled checks.
    #[arg(long, global = true, env = "HARMONICA_SEED", default_value_t = 0)]
    seed: u64,
    /// Sample count for randomized checks.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Machine-readable output.
    #[arg(long, global = true, conflicts_with = "human")]
    json: bool,
    /// Plain-text output (the default).
    #[arg(long, global = true)]
    human: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize an expression.
    Eval {
        expr: String,
        /// Algebra to read the expression in; guessed from the generators when omitted.
        #[arg(long, value_enum)]
        algebra: Option<AlgebraId>,
    },
    /// Δ_{O^B_mat}(b), and Δ^{W,B} when b lies in W^B.
    DeltaBetti { expr: String },
    /// Δ_{O^DR_mat}(x), and Δ^{W,DR} when x lies in W^DR.
    DeltaDerham { expr: String },
    /// Filtration degree and Magnus components through N.
    Gr {
        expr: String,
        #[arg(long, value_enum)]
        algebra: Option<AlgebraId>,
    },
    /// Compare the Betti and de Rham objects and coproducts on gr through N.
    GrCompare,
    /// Normal form in kP5*.
    P5Eval { expr: String },
    /// Fox coordinates of an element of ker(k pr5).
    Fox {
        expr: String,
        /// Decompose as Σ a_i (x_i5 - 1) instead.
        #[arg(long)]
        right: bool,
    },
    /// The matrix rvarpi of a kP5* element and its pr12 image.
    Rvarpi { expr: String },
    /// Normal form in U(p5).
    Up5Eval { expr: String },
    /// The matrix rvarpi of a U(p5) element and its U(pr12) image.
    LieRvarpi { expr: String },
    /// Membership in W^B = K + V^B (X1 - 1).
    WbMember { expr: String },
    /// Run verification suites.
    Verify {
        #[arg(long = "suite", value_enum, default_value = "all")]
        suites: Vec<Suite>,
    },
}

enum Failure {
    Usage(String),
    Check(Value),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn parse_in(text: &str, algebra: Option<AlgebraId>) -> Result<(AlgebraId, Element), Failure> {
    match algebra {
        Some(a) => parse(text, a).map(|e| (a, e)),
        None => parse_any(text),
    }
    .map_err(|e: ParseError| usage(e))
}

fn group(text: &str, algebra: AlgebraId) -> Result<harmonica::algebra_core::GroupAlgebraElement, Failure> {
    match parse(text, algebra).map_err(usage)? {
        Element::Group(g) => Ok(g),
        _ => unreachable!("group algebra"),
    }
}

fn tensor(text: &str, algebra: AlgebraId) -> Result<harmonica::algebra_core::TensorElement, Failure> {
    match parse(text, algebra).map_err(usage)? {
        Element::Tensor(t) => Ok(t),
        _ => unreachable!("tensor algebra"),
    }
}

fn p5(text: &str) -> Result<bb::P5Element, Failure> {
    bb::parse_p5(text).map_err(usage)
}

fn up5(text: &str) -> Result<bd::UP5Element, Failure> {
    bd::parse_up5(text).map_err(usage)
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let o = &cli.opts;
    match &cli.command {
        Command::Eval { expr, algebra } => {
            let (a, e) = parse_in(expr, *algebra)?;
            Ok(json!({"algebra": a.to_string(), "value": e.to_string()}))
        }
        Command::DeltaBetti { expr } => {
            let b = group(expr, AlgebraId::Vb)?;
            let d = delta_ob(&b).map_err(usage)?;
            let w = wb_membership(&b)
                .map(|_| delta_wb(&b).map(|x| x.to_string()))
                .transpose()
                .map_err(usage)?;
            Ok(json!({"input": b.to_string(), "delta_ob": d.to_string(), "delta_wb": w}))
        }
        Command::DeltaDerham { expr } => {
            let x = tensor(expr, AlgebraId::Vdr)?;
            let d = delta_odr(&x).map_err(usage)?;
            let w = derham_matrix::wdr_membership(&x)
                .map(|_| delta_wdr_element(&x).map(|y| y.to_string()))
                .transpose()
                .map_err(usage)?;
            Ok(json!({"input": x.to_string(), "delta_odr": d.to_string(), "delta_wdr": w}))
        }
        Command::Gr { expr, algebra } => {
            let (a, e) = parse_in(expr, *algebra)?;
            let Element::Group(g) = e else {
                return Err(Failure::Usage(format!("gr needs a group algebra, got {}", a)));
            };
            let series = magnus(&g, o.trunc).map_err(usage)?;
            let components: Vec<String> = (0..=o.trunc).map(|d| series.component(d).to_string()).collect();
            Ok(json!({
                "input": g.to_string(),
                "truncation": o.trunc,
                "filtration_degree": series.lowest_degree().to_string(),
                "components": components,
            }))
        }
        Command::GrCompare => {
            let objects = derham_matrix::gr_compare_betti(o.trunc);
            let delta = derham_matrix::gr_delta_compare(o.trunc);
            let out = json!({
                "truncation": o.trunc,
                "objects": {"passed": objects.passed, "witness": objects.witness},
                "delta": {"passed": delta.passed, "witness": delta.witness},
            });
            if objects.passed && delta.passed {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
        Command::P5Eval { expr } => {
            let p = p5(expr)?;
            Ok(json!({"value": p.to_string(), "augmentation": p.augmentation().to_string()}))
        }
        Command::Fox { expr, right } => {
            let k = p5(expr)?;
            let q = if *right {
                bb::right_fox_decompose(&k)
            } else {
                bb::fox_decompose(&k)
            }
            .map_err(usage)?;
            let pr12: Vec<String> = q.iter().map(|x| bb::project(Projection::Pr12, x).to_string()).collect();
            Ok(json!({
                "input": k.to_string(),
                "side": if *right { "right" } else { "left" },
                "coordinates": q.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "pr12": pr12,
            }))
        }
        Command::Rvarpi { expr } => {
            let p = p5(expr)?;
            let m = bb::rvarpi(&p);
            let projected = m.map(|x| bb::project(Projection::Pr12, x));
            Ok(json!({"input": p.to_string(), "rvarpi": matrix_strings(&m), "pr12": matrix_strings(&projected)}))
        }
        Command::Up5Eval { expr } => {
            let x = up5(expr)?;
            Ok(json!({"value": x.to_string(), "pr5": bd::u_project(Projection::Pr5, &x).to_string()}))
        }
        Command::LieRvarpi { expr } => {
            let x = up5(expr)?;
            let m = bd::lie_rvarpi(&x);
            let projected = m.map(|y| bd::u_project(Projection::Pr12, y));
            Ok(json!({"input": x.to_string(), "rvarpi": matrix_strings(&m), "pr12": matrix_strings(&projected)}))
        }
        Command::WbMember { expr } => {
            let b = group(expr, AlgebraId::Vb)?;
            match wb_membership(&b) {
                Some(d) => Ok(json!({
                    "input": b.to_string(),
                    "member": true,
                    "constant": d.constant.to_string(),
                    "quotient": d.quotient.to_string(),
                })),
                None => Err(Failure::Check(json!({"input": b.to_string(), "member": false}))),
            }
        }
        Command::Verify { suites } => {
            let config = Config {
                truncation: o.trunc,
                samples: o.samples,
                seed: o.seed,
            };
            let report = run_suite(suites, &config);
            if o.json {
                println!("{}", report.to_json());
            } else {
                println!("{}", report);
            }
            if report.passed {
                Ok(Value::Null)
            } else {
                Err(Failure::Check(Value::Null))
            }
        }
    }
}

fn print_human(v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::String(s) => println!("{}: {}", k, s),
                    Value::Array(rows) if rows.iter().all(Value::is_array) => {
                        println!("{}:", k);
                        for r in rows {
                            let cells: Vec<String> = r
                                .as_array()
                                .expect("row")
                                .iter()
                                .map(|c| c.as_str().map_or(c.to_string(), str::to_string))
                                .collect();
                            println!("  [{}]", cells.join(" | "));
                        }
                    }
                    Value::Array(items) => {
                        println!("{}:", k);
                        for (i, x) in items.iter().enumerate() {
                            println!("  {}: {}", i, x.as_str().map_or(x.to_string(), str::to_string));
                        }
                    }
                    other => println!("{}: {}", k, other),
                }
            }
        }
        Value::Null => {}
        other => println!("{}", other),
    }
}

fn emit(cli: &Cli, v: &Value) {
    if cli.opts.json {
        if !v.is_null() {
            println!("{}", serde_json::to_string_pretty(v).expect("plain data"));
        }
    } else {
        print_human(v);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&cli, &v);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            emit(&cli, &v);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
