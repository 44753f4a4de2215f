use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use zonocube::checks::{
    check_barrel_criteria_divergence, check_chain_lifts, check_class_counts, check_example_fixtures,
    check_morphism_conjectures, check_oracle, check_unique_extremes, CheckReport, Suite,
};
use zonocube::digraph::{class_digraph, DEFAULT_CHAIN_LIMIT};
use zonocube::enumerate::{enumerate, Budget, Class, BUDGET_ENV};
use zonocube::flips::{arrows, Direction, Generator};
use zonocube::geometry::{core, frame_default, render_svg};
use zonocube::io::{
    counts_csv, emit_cubillage, emit_cubillage_list, emit_digraph, parse_cubillage, parse_digraph, to_dot, CountRow,
    LabelMode,
};
use zonocube::morphisms::{chain_lift, reduce_middle};
use zonocube::{build_digraph, Error};

#[derive(Parser)]
#[command(name = "zonocube", version, about = "Cubillages of cyclic zonotopes and their flip digraphs")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Search budget; overrides the ZONOCUBE_BUDGET environment variable.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every cubillage of a class.
    Enumerate {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value = "all")]
        class: ClassArg,
        #[arg(long, default_value = "json")]
        format: ListFormat,
        #[arg(long, default_value = "natural")]
        labels: LabelArg,
    },
    /// Build the flip digraph of a class.
    Digraph {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value = "symmetric")]
        class: ClassArg,
        #[arg(long, default_value = "json")]
        format: GraphFormat,
    },
    /// List the flips applicable to a cubillage document.
    Flips {
        /// Cubillage document, or `-` for standard input.
        input: PathBuf,
        #[arg(long, default_value = "raise")]
        direction: DirectionArg,
        #[arg(long, default_value = "symmetric")]
        generator: GeneratorArg,
        /// Accept barrels on bi-convexity alone.
        #[arg(long)]
        no_fragment_check: bool,
    },
    /// Apply the middle-color reduction or the core map to a cubillage.
    Map {
        map: MapArg,
        input: PathBuf,
        #[arg(long, default_value = "natural")]
        labels: LabelArg,
    },
    /// Lift maximal chains of a symmetric digraph one dimension up.
    Lift {
        #[command(flatten)]
        size: Size,
        /// Index of the chain to lift; all chains when omitted.
        #[arg(long)]
        chain: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CHAIN_LIMIT)]
        limit: usize,
    },
    /// Run a named verification suite, or `all` for the standard set.
    Check {
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Render a digraph document as DOT or a d = 2 cubillage as SVG.
    Export {
        input: PathBuf,
        #[arg(long)]
        format: ExportFormat,
    },
}

#[derive(Args)]
struct Size {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Symmetric,
    Skew,
}

impl From<ClassArg> for Class {
    fn from(c: ClassArg) -> Class {
        match c {
            ClassArg::All => Class::All,
            ClassArg::Symmetric => Class::Symmetric,
            ClassArg::Skew => Class::Skew,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelArg {
    Natural,
    Symmetric,
}

impl From<LabelArg> for LabelMode {
    fn from(l: LabelArg) -> LabelMode {
        match l {
            LabelArg::Natural => LabelMode::Natural,
            LabelArg::Symmetric => LabelMode::Symmetric,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Raise,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorArg {
    #[value(name = "typeA")]
    TypeA,
    Symmetric,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Red,
    Cor,
}

/// Exit status: assertive check failure.
const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    let budget = cli.budget.map(Budget).unwrap_or_else(Budget::from_env);
    match run(&cli, budget) {
        Ok((text, failed)) => {
            if let Err(e) = write_output(cli.output.as_ref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_INVALID);
            }
            if failed {
                ExitCode::from(EXIT_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => {
                    eprintln!("hint: raise --budget or {BUDGET_ENV}");
                    EXIT_BUDGET
                }
                Error::Internal(_) | Error::LiftInconsistency { .. } => EXIT_FAILED,
                _ => EXIT_INVALID,
            })
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok(text)
}

/// Output text and whether an assertive check failed.
fn run(cli: &Cli, budget: Budget) -> Result<(String, bool), Error> {
    match &cli.command {
        Command::Enumerate { size, class, format, labels } => {
            let class = Class::from(*class);
            let list = enumerate(size.n, size.d, class, budget)?;
            Ok((
                match format {
                    ListFormat::Json => emit_cubillage_list(&list, (*labels).into()),
                    ListFormat::Csv => counts_csv(&[CountRow { n: size.n, d: size.d, class, count: list.len() }]),
                },
                false,
            ))
        }
        Command::Digraph { size, class, format } => {
            let class = Class::from(*class);
            let g = class_digraph(size.n, size.d, class, budget)?;
            Ok((
                match format {
                    GraphFormat::Json => emit_digraph(&g, class),
                    GraphFormat::Dot => to_dot(&g, &graph_title(class, size.n, size.d)),
                },
                false,
            ))
        }
        Command::Flips { input, direction, generator, no_fragment_check } => {
            let q = parse_cubillage(&read_input(input)?)?;
            let generator = match generator {
                GeneratorArg::TypeA => Generator::TypeA,
                GeneratorArg::Symmetric => Generator::Symmetric { fragment_check: !no_fragment_check },
            };
            let dir = match direction {
                DirectionArg::Raise => Direction::Raise,
                DirectionArg::Lower => Direction::Lower,
            };
            let mut out = String::new();
            for (flip, result) in arrows(&q, generator, dir)? {
                let packets: Vec<Vec<usize>> = flip.packets().into_iter().map(|p| p.to_vec()).collect();
                let head = json!({ "kind": flip.kind(), "packets": packets }).to_string();
                let result = emit_cubillage(&result, LabelMode::Natural);
                write!(out, "{},\"result\":{result}}}", &head[..head.len() - 1]).expect("writing to a string");
                out.push('\n');
            }
            Ok((out, false))
        }
        Command::Map { map, input, labels } => {
            let q = parse_cubillage(&read_input(input)?)?;
            let image = match map {
                MapArg::Red => reduce_middle(&q)?,
                MapArg::Cor => core(&q)?,
            };
            Ok((emit_cubillage(&image, (*labels).into()) + "\n", false))
        }
        Command::Lift { size, chain, limit } => {
            let g = class_digraph(size.n, size.d, Class::Symmetric, budget)?;
            let chains = g.maximal_chains(*limit);
            if chains.truncated {
                eprintln!("warning: stopped after {limit} chains");
            }
            let picked: Vec<_> = match chain {
                Some(k) => vec![chains
                    .chains
                    .get(*k)
                    .ok_or_else(|| Error::InvalidInput(format!("there are only {} chains", chains.chains.len())))?],
                None => chains.chains.iter().collect(),
            };
            let lifts = picked.into_iter().map(|c| chain_lift(&g, c)).collect::<Result<Vec<_>, _>>()?;
            Ok((emit_cubillage_list(&lifts, LabelMode::Natural), false))
        }
        Command::Check { suite, n, d, m } => {
            let reports = run_checks(suite, *n, *d, *m, budget)?;
            let failed = reports.iter().any(CheckReport::is_failure);
            let text: String =
                reports.iter().map(|r| serde_json::to_string(r).expect("reports serialize") + "\n").collect();
            Ok((text, failed))
        }
        Command::Export { input, format } => {
            let text = read_input(input)?;
            match format {
                ExportFormat::Dot => {
                    let doc = parse_digraph(&text)?;
                    let p = &doc.parameters;
                    let generator = match p.class {
                        Class::All => Generator::TypeA,
                        _ => Generator::SYMMETRIC,
                    };
                    let g = build_digraph(doc.cubillages()?, generator)?;
                    Ok((to_dot(&g, &graph_title(p.class, p.n, p.d)), false))
                }
                ExportFormat::Svg => {
                    let q = parse_cubillage(&text)?;
                    Ok((render_svg(&q, &frame_default(q.n(), q.d())?)?, false))
                }
            }
        }
    }
}

fn graph_title(class: Class, n: usize, d: usize) -> String {
    match class {
        Class::All => format!("Q({n},{d})"),
        _ => format!("SQ({n},{d})"),
    }
}

fn need(value: Option<usize>, flag: &str, suite: &str) -> Result<usize, Error> {
    value.ok_or_else(|| Error::InvalidInput(format!("check {suite} needs --{flag}")))
}

fn run_checks(
    suite: &str,
    n: Option<usize>,
    d: Option<usize>,
    m: Option<usize>,
    budget: Budget,
) -> Result<Vec<CheckReport>, Error> {
    if suite == "all" {
        return standard_checks(budget);
    }
    let s: Suite = suite.parse()?;
    let report = match s {
        Suite::Fixtures => check_example_fixtures(budget)?,
        Suite::Morphisms => check_morphism_conjectures(need(m, "m", suite)?, need(d, "d", suite)?, budget)?,
        _ => {
            let (n, d) = (need(n, "n", suite)?, need(d, "d", suite)?);
            match s {
                Suite::UniqueExtremes => check_unique_extremes(n, d, budget)?,
                Suite::BarrelDivergence => check_barrel_criteria_divergence(n, d, budget)?,
                Suite::Lift => check_chain_lifts(n, d, budget, DEFAULT_CHAIN_LIMIT)?,
                Suite::Counts => check_class_counts(n, d, budget)?,
                Suite::Oracle => check_oracle(n, d, budget)?,
                Suite::Fixtures | Suite::Morphisms => unreachable!("handled above"),
            }
        }
    };
    Ok(vec![report])
}

/// Every proved instance the suites cover at desk scale.
fn standard_checks(budget: Budget) -> Result<Vec<CheckReport>, Error> {
    let mut out = vec![check_example_fixtures(budget)?];
    for (n, d) in [(6, 3), (6, 5), (8, 3), (5, 2), (7, 4), (6, 2), (7, 2)] {
        out.push(check_unique_extremes(n, d, budget)?);
    }
    for (n, d) in [(4, 1), (5, 1), (4, 2), (5, 2), (6, 2), (6, 3), (7, 2)] {
        out.push(check_oracle(n, d, budget)?);
    }
    for (m, d) in [(2, 2), (3, 2), (2, 1), (3, 3)] {
        out.push(check_morphism_conjectures(m, d, budget)?);
    }
    for (n, d) in [(4, 1), (6, 3)] {
        out.push(check_chain_lifts(n, d, budget, DEFAULT_CHAIN_LIMIT)?);
    }
    for (n, d) in [(4, 2), (6, 2), (5, 1), (5, 2), (5, 3), (7, 2)] {
        out.push(check_class_counts(n, d, budget)?);
    }
    for (n, d) in [(4, 2), (5, 2), (6, 2)] {
        out.push(check_barrel_criteria_divergence(n, d, budget)?);
    }
    Ok(out)
}
