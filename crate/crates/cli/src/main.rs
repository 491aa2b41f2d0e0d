//! `cogbalance`: plan and check balanced loading and unloading sequences.
//!
//! Exit codes: 0 ok, 1 window violated, 2 input error, 3 precondition or
//! size cap not met.

mod formats;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use cogbalance::exact::{optimal_span, DEFAULT_EXACT_LIMIT};
use cogbalance::instances::{
    gen_3partition_instance, gen_random, verify_window, worked_example, Family, Instance,
    RandomParams, ThreePartitionSpec,
};
use cogbalance::load::{
    connected_optimum, exponential_lower_bound, plan_connected, plan_exponential, plan_stacked,
    stacked_optimum, ExpSystem, StackPlanParams,
};
use cogbalance::rational::{to_decimal_string, to_fraction_string};
use cogbalance::unload::{evaluate_order, h_lower_bound, h_permutation, naive_lower_bound};
use cogbalance::{deviation, parse_rational, DiscreteInstance, Error, Placement, Rational};
use serde::Serialize;
use serde_json::json;

use formats::{nums, parse_u64_list, parse_window, InstanceFile, Num, OrderFile, DECIMAL_DIGITS};

#[derive(Parser)]
#[command(
    name = "cogbalance",
    version,
    about = "Balanced loading and unloading plans with exact centers of gravity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order fixed points to keep the span of prefix centers small.
    UnloadPlan {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::H)]
        method: Method,
        /// Largest instance the exact solver accepts.
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        max_exact_n: usize,
    },
    /// Place items of given lengths with a certified optimal deviation.
    LoadPlan {
        lengths: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Maximum stack height for stacked mode.
        #[arg(long, default_value_t = 1)]
        mu: u32,
    },
    /// Write an instance file.
    Gen {
        #[arg(long, value_enum)]
        family: GenFamily,
        /// Number of triples (3partition).
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated multiset Y (3partition).
        #[arg(long)]
        y: Option<String>,
        /// Origin point count; defaults to 4mB + 1 (3partition).
        #[arg(long)]
        origin_points: Option<u64>,
        /// Spread coincident points apart and rescale (3partition).
        #[arg(long)]
        perturb: bool,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        range: i64,
        #[arg(long, default_value = "1")]
        ell: String,
        #[arg(long, default_value = "2")]
        x: String,
        #[arg(long, env = "COGBALANCE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the prefix centers of an order as CSV and check a window.
    Evaluate {
        instance: PathBuf,
        order: PathBuf,
        /// `lo,hi`, both ends included.
        #[arg(long)]
        window: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    H,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Stacked,
    Connected,
    Exponential,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    #[value(name = "3partition")]
    ThreePartition,
    #[value(alias = "paper-example")]
    WorkedExample,
    Uniform,
    TwoSided,
    ExponentialLengths,
}

struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn input(msg: impl ToString) -> Self {
        Fail {
            code: 2,
            msg: msg.to_string(),
        }
    }

    fn precondition(msg: impl ToString) -> Self {
        Fail {
            code: 3,
            msg: msg.to_string(),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } | Error::InvalidParameter(_) | Error::Unsupported(_) => {
                Fail::precondition(e)
            }
            _ => Fail::input(e),
        }
    }
}

type Outcome = Result<ExitCode, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(|e| Fail::input(format!("{e:#}")))
}

fn read_instance(path: &Path) -> Result<InstanceFile, Fail> {
    InstanceFile::parse(&read(path)?).map_err(Fail::input)
}

fn read_points(path: &Path) -> Result<DiscreteInstance, Fail> {
    let points = read_instance(path)?.points().map_err(Fail::input)?;
    Ok(DiscreteInstance::new(points)?)
}

fn print_json(value: &impl Serialize) -> Result<(), Fail> {
    let text = serde_json::to_string_pretty(value).map_err(Fail::input)?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct UnloadReport {
    method: &'static str,
    n: usize,
    order: Vec<usize>,
    trajectory: Vec<Num>,
    left: Num,
    right: Num,
    span: Num,
    naive_bound: Num,
    h_bound: Num,
    /// `span / h_bound`, absent when the bound is zero.
    ratio: Option<Num>,
}

fn unload_plan(path: &Path, method: Method, max_exact_n: usize) -> Outcome {
    let x = read_points(path)?;
    let (name, report) = match method {
        Method::H => ("h", h_permutation(&x)),
        Method::Exact => ("exact", optimal_span(&x, max_exact_n)?),
    };
    let h_bound = h_lower_bound(&x);
    let ratio = (h_bound != Rational::from_integer(0.into()))
        .then(|| Num::from(&(&report.span / &h_bound)));
    print_json(&UnloadReport {
        method: name,
        n: x.len(),
        order: report.order.clone(),
        trajectory: nums(&report.trajectory.centers),
        left: Num::from(&report.left),
        right: Num::from(&report.right),
        span: Num::from(&report.span),
        naive_bound: Num::from(&naive_lower_bound(&x)),
        h_bound: Num::from(&h_bound),
        ratio,
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct StepOut {
    step: usize,
    item: usize,
    length: Num,
    midpoint: Num,
    left: Num,
    right: Num,
    layer: u32,
    center: Num,
}

#[derive(Serialize)]
struct LoadReport {
    mode: &'static str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<u32>,
    steps: Vec<StepOut>,
    /// Centers of all states, the empty one first.
    centers: Vec<Num>,
    deviation: Num,
    optimum: Num,
    optimal: bool,
}

fn load_plan(path: &Path, mode: Mode, mu: u32) -> Outcome {
    let lengths = read_instance(path)?.lengths().map_err(Fail::input)?;
    if lengths.is_empty() {
        return Err(Fail::input("length list is empty"));
    }
    if let Some(bad) = lengths
        .iter()
        .find(|l| **l <= Rational::from_integer(0.into()))
    {
        return Err(Fail::input(format!("lengths must be positive, got {bad}")));
    }
    let (name, plan, optimum, mu): (_, Placement, Rational, _) = match mode {
        Mode::Stacked => {
            if lengths.iter().any(|l| *l != lengths[0]) {
                return Err(Fail::precondition(
                    "stacked planning needs all lengths equal",
                ));
            }
            let params = StackPlanParams::new(lengths.len(), mu, lengths[0].clone())?;
            (
                "stacked",
                plan_stacked(&params),
                stacked_optimum(&params),
                Some(mu),
            )
        }
        Mode::Connected => (
            "connected",
            plan_connected(&lengths)?,
            connected_optimum(&lengths)?,
            None,
        ),
        Mode::Exponential => {
            let sys = ExpSystem::from_lengths(&lengths)?;
            (
                "exponential",
                plan_exponential(&sys),
                exponential_lower_bound(&sys),
                None,
            )
        }
    };
    let centers = plan.centers().centers;
    let steps = plan
        .steps
        .iter()
        .zip(&plan.items)
        .enumerate()
        .map(|(k, (iv, &item))| StepOut {
            step: k + 1,
            item,
            length: Num::from(&iv.length),
            midpoint: Num::from(&iv.midpoint),
            left: Num::from(&iv.left()),
            right: Num::from(&iv.right()),
            layer: iv.layer,
            center: Num::from(&centers[k + 1]),
        })
        .collect();
    let dev = deviation(&plan);
    print_json(&LoadReport {
        mode: name,
        n: lengths.len(),
        mu,
        steps,
        centers: nums(&centers),
        optimal: dev == optimum,
        deviation: Num::from(&dev),
        optimum: Num::from(&optimum),
    })?;
    Ok(ExitCode::SUCCESS)
}

struct GenArgs {
    family: GenFamily,
    m: Option<usize>,
    y: Option<String>,
    origin_points: Option<u64>,
    perturb: bool,
    n: usize,
    range: i64,
    ell: String,
    x: String,
    seed: u64,
}

fn generate(a: &GenArgs) -> Result<InstanceFile, Fail> {
    let random = |family: Family| -> Result<InstanceFile, Fail> {
        let params = RandomParams {
            n: a.n,
            range: a.range,
            ell: parse_rational(&a.ell).map_err(Fail::input)?,
            x: parse_rational(&a.x).map_err(Fail::input)?,
        };
        let meta = json!({"family": family.name(), "seed": a.seed, "n": a.n});
        Ok(match gen_random(family, &params, a.seed)? {
            Instance::Unload(x) => InstanceFile::unload(&x.points, meta),
            Instance::Load(l) => InstanceFile::load(&l, meta),
        })
    };
    match a.family {
        GenFamily::ThreePartition => {
            let m = a.m.ok_or_else(|| Fail::input("3partition needs --m"))?;
            let y = parse_u64_list(
                a.y.as_deref()
                    .ok_or_else(|| Fail::input("3partition needs --y"))?,
            )
            .map_err(Fail::input)?;
            let spec = ThreePartitionSpec {
                y: y.clone(),
                m,
                origin_points: a.origin_points,
            };
            let c = gen_3partition_instance(&spec)?;
            let (points, window, scale) = if a.perturb {
                let p = c.perturbed();
                (p.instance.points, p.window, Some(p.scale))
            } else {
                (c.instance.points.clone(), c.window.clone(), None)
            };
            let mut meta = json!({
                "family": "3partition",
                "m": m,
                "y": y,
                "b": c.b,
                "origin_points": c.origin_points,
                "window": format!("{},{}", to_fraction_string(&window.0), to_fraction_string(&window.1)),
            });
            if let Some(s) = scale {
                meta["scale"] = json!(to_fraction_string(&s));
            }
            Ok(InstanceFile::unload(&points, meta))
        }
        GenFamily::WorkedExample => Ok(InstanceFile::unload(
            &worked_example().points,
            json!({"family": "worked-example"}),
        )),
        GenFamily::Uniform => random(Family::Uniform),
        GenFamily::TwoSided => random(Family::TwoSided),
        GenFamily::ExponentialLengths => random(Family::ExponentialLengths),
    }
}

fn gen(a: &GenArgs, output: Option<&Path>) -> Outcome {
    let file = generate(a)?;
    let text = serde_json::to_string_pretty(&file).map_err(Fail::input)? + "\n";
    match output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(|e| Fail::input(format!("{e:#}")))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn evaluate(instance: &Path, order: &Path, window: Option<&str>) -> Outcome {
    let x = read_points(instance)?;
    let order = OrderFile::parse(&read(order)?).map_err(Fail::input)?.order;
    let window = window.map(parse_window).transpose().map_err(Fail::input)?;
    let report = evaluate_order(&x, &order)?;
    println!("step,center_exact,center_decimal");
    for (k, c) in report.trajectory.centers.iter().enumerate() {
        println!(
            "{},{},{}",
            k + 1,
            to_fraction_string(c),
            to_decimal_string(c, DECIMAL_DIGITS)
        );
    }
    println!(
        "# span {} ({})",
        to_fraction_string(&report.span),
        to_decimal_string(&report.span, DECIMAL_DIGITS)
    );
    let Some((lo, hi)) = window else {
        return Ok(ExitCode::SUCCESS);
    };
    let verdict = verify_window(&x, &order, &lo, &hi)?;
    let range = format!("[{}, {}]", to_fraction_string(&lo), to_fraction_string(&hi));
    match verdict.first_violation {
        None => {
            println!(
                "# window {range}: inside, min slack {}",
                to_fraction_string(&verdict.min_slack)
            );
            Ok(ExitCode::SUCCESS)
        }
        Some(step) => {
            println!("# window {range}: violated at step {step}");
            Ok(ExitCode::from(1))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::UnloadPlan {
            instance,
            method,
            max_exact_n,
        } => unload_plan(&instance, method, max_exact_n),
        Command::LoadPlan { lengths, mode, mu } => load_plan(&lengths, mode, mu),
        Command::Gen {
            family,
            m,
            y,
            origin_points,
            perturb,
            n,
            range,
            ell,
            x,
            seed,
            output,
        } => {
            let args = GenArgs {
                family,
                m,
                y,
                origin_points,
                perturb,
                n,
                range,
                ell,
                x,
                seed,
            };
            gen(&args, output.as_deref())
        }
        Command::Evaluate {
            instance,
            order,
            window,
        } => evaluate(&instance, &order, window.as_deref()),
    };
    outcome.unwrap_or_else(|f| {
        eprintln!("error: {}", f.msg);
        ExitCode::from(f.code)
    })
}
