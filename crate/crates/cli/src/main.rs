//! Command-line front end for `difcat`.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use difcat::cdc::{nth_derivative, partial_derivative, CartesianDifferentialCategory, LeftLinearCategory};
use difcat::faa::{Faa, FaaFault};
use difcat::qmodality::laws::{check_modality, LawConfig};
use difcat::qmodality::{Modality, QFault};
use difcat::poly::{parse_poly_map, PolyCat, PolyMap};
use difcat::report::Report;
use difcat::suites::{self, KleisliConfig, DEFAULT_SEED};
use difcat::{Int, Nat, Rat, Rig, RigSpec, Zm};

const NAMING: &str = "\
Variable naming: a map of arity a reads x1..xa. In derivative output the
argument slots of f^(n) : A × A^n → B are printed x (slot 0), v (slot 1),
w (slot 2) and y3_, y4_, ... beyond, so `diff` prints x1..xa, v1..va and
`nderiv --n 2` prints x, v and w. `partial --i k` names the new direction
v<k>.";

#[derive(Parser)]
#[command(name = "difcat", version, about = "Exact cartesian differential calculus", after_help = NAMING)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct MapArgs {
    /// Scalars: nat, int, rat or zmod:<m>.
    #[arg(long, default_value = "int")]
    rig: String,
    /// Number of input variables.
    #[arg(long, default_value_t = 1)]
    arity: usize,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct CheckArgs {
    /// Scalars for `cdc` (all of nat, int, rat, zmod:5 when omitted).
    #[arg(long)]
    rig: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random cases per law (`cdc`) or per dimension triple (`kleisli-iso`).
    #[arg(long)]
    samples: Option<usize>,
    /// Maximum polynomial degree (`cdc`).
    #[arg(long, default_value_t = 3)]
    maxdeg: u32,
    /// Maximum arity (`cdc`).
    #[arg(long, default_value_t = 3)]
    arity: usize,
    /// Degree bound for Q-generators.
    #[arg(long)]
    degree: Option<usize>,
    /// Maximum module or object dimension.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Modulus for finite suites (both 2 and 3 for `modality` when omitted).
    #[arg(long = "mod")]
    modulus: Option<u64>,
    #[arg(long)]
    json: bool,
    /// Record elapsed time in the report.
    #[arg(long)]
    timing: bool,
    /// Inject a deliberate defect into `modality` or `kleisli-iso`.
    #[arg(long, value_enum, hide = true)]
    fault: Option<Fault>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Fault {
    DropPartitionTerm,
    OmitDerivativeSum,
    UnsortedTail,
    SwapCounitCases,
    DropCoproductTerm,
}

impl Fault {
    fn faa(self) -> Option<FaaFault> {
        match self {
            Fault::DropPartitionTerm => Some(FaaFault::DropPartitionTerm),
            Fault::OmitDerivativeSum => Some(FaaFault::OmitDerivativeSum),
            _ => None,
        }
    }

    fn q(self) -> Option<QFault> {
        match self {
            Fault::UnsortedTail => Some(QFault::UnsortedTail),
            Fault::SwapCounitCases => Some(QFault::SwapCounitCases),
            Fault::DropCoproductTerm => Some(QFault::DropCoproductTerm),
            _ => None,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Cdc,
    Modality,
    KleisliIso,
    Yoneda,
    Presheaf,
}

#[derive(Subcommand)]
enum Command {
    /// Total derivative Df(x, v).
    Diff {
        #[command(flatten)]
        args: MapArgs,
        map: String,
    },
    /// The nth derivative f^(n)(x, v, w, ...).
    Nderiv {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        args: MapArgs,
        map: String,
    },
    /// Partial derivative in variable k.
    Partial {
        #[arg(long)]
        i: usize,
        #[command(flatten)]
        args: MapArgs,
        map: String,
    },
    /// Components of the Faà di Bruno composite of the coalgebras of g and f.
    FaaCompose {
        /// Highest component to print (all nonzero components by default).
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        args: MapArgs,
        /// Outer map g, whose arity is the number of components of f.
        g: String,
        /// Inner map f, of arity `--arity`.
        f: String,
    },
    /// Run a verification suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        args: CheckArgs,
    },
}

enum Failure {
    Usage(String),
    Check,
}

fn slot_name(a: usize) -> impl Fn(usize) -> String {
    move |j| {
        let (slot, i) = (j / a, j % a + 1);
        match slot {
            0 => format!("x{i}"),
            1 => format!("v{i}"),
            2 => format!("w{i}"),
            s => format!("y{s}_{i}"),
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn emit(json: bool, verb: &str, lines: Vec<String>) {
    if json {
        let v = serde_json::json!({ "verb": verb, "result": lines });
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        for l in lines {
            println!("{l}");
        }
    }
}

fn run_map<R: Rig>(cmd: &Command) -> Result<(), Failure> {
    let cat = PolyCat::<R>::default();
    match cmd {
        Command::Diff { args, map } => {
            let f: PolyMap<R> = parse_poly_map(map, args.arity).map_err(usage)?;
            let df = cat.derivative(&f).map_err(usage)?;
            emit(args.json, "diff", vec![df.render(&slot_name(args.arity))]);
        }
        Command::Nderiv { n, args, map } => {
            let f: PolyMap<R> = parse_poly_map(map, args.arity).map_err(usage)?;
            let fy = nth_derivative(&cat, &f, *n).map_err(usage)?;
            emit(args.json, "nderiv", vec![fy.render(&slot_name(args.arity))]);
        }
        Command::Partial { i, args, map } => {
            let f: PolyMap<R> = parse_poly_map(map, args.arity).map_err(usage)?;
            let d = partial_derivative(&cat, &f, &vec![1; args.arity], *i).map_err(usage)?;
            let a = args.arity;
            let name = move |j: usize| if j < a { format!("x{}", j + 1) } else { format!("v{i}") };
            emit(args.json, "partial", vec![d.render(&name)]);
        }
        Command::FaaCompose { n, args, g, f } => {
            let f: PolyMap<R> = parse_poly_map(f, args.arity).map_err(usage)?;
            let g: PolyMap<R> = parse_poly_map(g, f.cod()).map_err(usage)?;
            let faa = Faa::new(cat);
            let (cf, cg) = match n {
                Some(n) => (faa.coalgebra_upto(&f, *n), faa.coalgebra_upto(&g, *n)),
                None => (faa.coalgebra(&f, 16), faa.coalgebra(&g, 16)),
            };
            let (cf, cg) = (cf.map_err(usage)?, cg.map_err(usage)?);
            let gf = match n {
                Some(n) => faa.compose_upto(&cg, &cf, *n),
                None => faa.compose(&cg, &cf),
            }
            .map_err(usage)?;
            let lines = gf
                .family
                .iter()
                .enumerate()
                .map(|(k, c)| format!("(g∘f)^({k}) = {}", c.render(&slot_name(args.arity))))
                .collect();
            emit(args.json, "faa-compose", lines);
        }
        Command::Check { .. } => unreachable!("dispatched separately"),
    }
    Ok(())
}

macro_rules! with_zmod {
    ($m:expr, $f:ident, $($arg:expr),*) => {
        match $m {
            2 => $f::<Zm<2>>($($arg),*),
            3 => $f::<Zm<3>>($($arg),*),
            5 => $f::<Zm<5>>($($arg),*),
            7 => $f::<Zm<7>>($($arg),*),
            11 => $f::<Zm<11>>($($arg),*),
            13 => $f::<Zm<13>>($($arg),*),
            m => Err(Failure::Usage(format!("modulus {m} is not available (choose 2, 3, 5, 7, 11 or 13)"))),
        }
    };
}

fn map_args(cmd: &Command) -> &MapArgs {
    match cmd {
        Command::Diff { args, .. }
        | Command::Nderiv { args, .. }
        | Command::Partial { args, .. }
        | Command::FaaCompose { args, .. } => args,
        Command::Check { .. } => unreachable!("dispatched separately"),
    }
}

fn dispatch_map(cmd: &Command) -> Result<(), Failure> {
    let spec: RigSpec = map_args(cmd).rig.parse().map_err(usage)?;
    match spec {
        RigSpec::Nat => run_map::<Nat>(cmd),
        RigSpec::Int => run_map::<Int>(cmd),
        RigSpec::Rat => run_map::<Rat>(cmd),
        RigSpec::ZMod(m) => with_zmod!(m, run_map, cmd),
    }
}

fn cdc_for<R: Rig>(args: &CheckArgs) -> Result<Report, Failure> {
    let sampler = difcat::poly::PolySampler { max_arity: args.arity, max_degree: args.maxdeg, max_terms: 4 };
    let samples = args.samples.unwrap_or(200);
    Ok(difcat::cdc::check_axioms(&PolyCat::<R>::default(), &sampler, samples, args.seed))
}

fn kleisli_for<R: difcat::FiniteRig>(args: &CheckArgs) -> Result<Report, Failure> {
    let mut cfg = KleisliConfig {
        max_dim: args.dim,
        seed: args.seed,
        faa_fault: args.fault.and_then(Fault::faa),
        modality: Modality::new(args.fault.and_then(Fault::q)),
        ..Default::default()
    };
    if let Some(d) = args.degree {
        cfg.bound = d;
    }
    if let Some(s) = args.samples {
        cfg.samples = s;
    }
    suites::kleisli_suite::<R>(&cfg).map_err(usage)
}

fn run_check(suite: Suite, args: &CheckArgs) -> Result<Report, Failure> {
    match suite {
        Suite::Cdc => match &args.rig {
            None if args.arity == 3 && args.maxdeg == 3 => Ok(suites::cdc_suite(args.samples.unwrap_or(200), args.seed)),
            None => {
                let mut r = Report::new("cdc").with_config("seed", args.seed);
                r.absorb("nat", cdc_for::<Nat>(args)?);
                r.absorb("int", cdc_for::<Int>(args)?);
                r.absorb("rat", cdc_for::<Rat>(args)?);
                r.absorb("zmod:5", cdc_for::<Zm<5>>(args)?);
                Ok(r)
            }
            Some(rig) => match rig.parse::<RigSpec>().map_err(usage)? {
                RigSpec::Nat => cdc_for::<Nat>(args),
                RigSpec::Int => cdc_for::<Int>(args),
                RigSpec::Rat => cdc_for::<Rat>(args),
                RigSpec::ZMod(m) => with_zmod!(m, cdc_for, args),
            },
        },
        Suite::Modality => {
            let degree = args.degree.unwrap_or(3);
            let fault = args.fault.and_then(Fault::q);
            let cfg = LawConfig { max_dim: args.dim, max_degree: degree, modality: Modality::new(fault) };
            match args.modulus {
                None => Ok(suites::modality_suite(args.dim, degree, fault)),
                Some(2) => Ok(check_modality::<Zm<2>>(&cfg)),
                Some(3) => Ok(check_modality::<Zm<3>>(&cfg)),
                Some(m) => Err(Failure::Usage(format!("modality suite supports --mod 2 or 3, not {m}"))),
            }
        }
        Suite::KleisliIso => match args.modulus.unwrap_or(2) {
            2 => kleisli_for::<Zm<2>>(args),
            3 => kleisli_for::<Zm<3>>(args),
            m => Err(Failure::Usage(format!("kleisli-iso supports --mod 2 or 3, not {m}"))),
        },
        Suite::Yoneda => suites::yoneda_suite(args.dim).map_err(usage),
        Suite::Presheaf => Ok(suites::presheaf_suite(args.dim, args.degree.unwrap_or(2))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Check { suite, args } => {
            let start = Instant::now();
            let mut report = run_check(*suite, args)?;
            if args.timing {
                report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                print!("{report}");
            }
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        cmd => dispatch_map(cmd),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `difcat --help` for the grammar.");
            ExitCode::from(2)
        }
    }
}
