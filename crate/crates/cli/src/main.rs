use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use slicings::enumerate::{enumerate, rule_counts, Family, FAMILY_NAMES};
use slicings::nilp::{is_schroeder_triple, nilp_to_slicing, slicing_to_nilp};
use slicings::polyomino::is_member;
use slicings::series::{solve_system, SystemId};
use slicings::verify::{run_suite, Mode, Suite};
use slicings::RuleId;

const OBJECT_CAP: usize = 9;
const SERIES_CAP: usize = 30;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

/// Exact enumeration of slicings, lattice-path triples, permutations and
/// packed floorplans, plus the series solvers and the verification suite.
///
/// Exit codes: 0 success, 1 a check failed, 2 usage error, 3 size cap hit.
/// Object enumeration is capped at size 9 and series at order 30; pass
/// --unsafe-no-cap to lift both.
#[derive(Parser)]
#[command(name = "slicings", version)]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Lift the size caps.
    #[arg(long, global = true)]
    unsafe_no_cap: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print `n<TAB>count` for n = 1..max-size.
    Count {
        /// cat|sch|bax|skinny:m|rowres:m|perm-s|perm-bax|pfp|sch-pfp|cat-pfp|nilp|sch-nilp
        #[arg(long)]
        family: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = Method::Rule)]
        method: Method,
    },
    /// Print every object of one size as a JSON line, in generating-tree order.
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
        /// `svg-none` prints no objects, only `count<TAB>N`.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the coefficients of x^1..x^order of a family's generating function.
    ///
    /// Systems: 0sk (0-skinny), sk:m (m-skinny, m >= 2), rr:m (m-row-restricted, m >= 2).
    Series {
        #[arg(long)]
        system: String,
        #[arg(long)]
        order: usize,
    },
    /// Run the named checks, printing `CHECK <name> PASS|FAIL`.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Feed every check a corrupted input; each should then FAIL.
        #[arg(long)]
        corrupt: bool,
    },
    /// Round-trip every Baxter slicing through its lattice-path triple and
    /// compare the Schröder conditions on both sides; prints
    /// `n<TAB>objects<TAB>PASS|FAIL`.
    BijectionCheck {
        #[arg(long, default_value_t = 7)]
        max_size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Rule,
    Objects,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    SvgNone,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Rules,
    Bijections,
    Series,
    Kernel,
}

impl SuiteArg {
    fn suite(self) -> Option<Suite> {
        match self {
            SuiteArg::All => None,
            SuiteArg::Rules => Some(Suite::Rules),
            SuiteArg::Bijections => Some(Suite::Bijections),
            SuiteArg::Series => Some(Suite::Series),
            SuiteArg::Kernel => Some(Suite::Kernel),
        }
    }
}

enum Failure {
    Usage(String),
    Cap(String),
    Check,
    Internal(String),
}

impl From<slicings::Error> for Failure {
    fn from(e: slicings::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn parse_family(s: &str) -> Result<Family, Failure> {
    s.parse().map_err(|_| Failure::Usage(format!("unknown family {s:?}; expected one of {FAMILY_NAMES}")))
}

fn check_cap(value: usize, cap: usize, what: &str, lifted: bool) -> Result<(), Failure> {
    if value > cap && !lifted {
        return Err(Failure::Cap(format!("{what} {value} exceeds the cap of {cap}; use --unsafe-no-cap to override")));
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let lifted = cli.unsafe_no_cap;
    match cli.command {
        Command::Count { family, max_size, method } => {
            let family = parse_family(&family)?;
            if max_size == 0 {
                return Err(Failure::Usage("--max-size must be at least 1".into()));
            }
            let counts: Vec<String> = match method {
                Method::Rule => rule_counts(family, max_size)?.iter().map(|c| c.to_string()).collect(),
                Method::Objects => {
                    check_cap(max_size, OBJECT_CAP, "--max-size", lifted)?;
                    (1..=max_size)
                        .map(|n| enumerate(family, n).map(|v| v.len().to_string()))
                        .collect::<Result<_, _>>()?
                }
            };
            for (i, c) in counts.iter().enumerate() {
                writeln!(out, "{}\t{c}", i + 1)?;
            }
        }
        Command::Enumerate { family, size, format } => {
            let family = parse_family(&family)?;
            check_cap(size, OBJECT_CAP, "--size", lifted)?;
            let objects = enumerate(family, size)?;
            match format {
                Format::Json => {
                    let lines: Vec<String> = objects.par_iter().map(|o| o.to_json()).collect();
                    for line in lines {
                        writeln!(out, "{line}")?;
                    }
                }
                Format::SvgNone => writeln!(out, "count\t{}", objects.len())?,
            }
        }
        Command::Series { system, order } => {
            let sys: SystemId = system.parse().map_err(|_| {
                Failure::Usage(format!("malformed system {system:?}; expected 0sk, sk:m or rr:m with m >= 2"))
            })?;
            if order == 0 {
                return Err(Failure::Usage("--order must be at least 1".into()));
            }
            check_cap(order, SERIES_CAP, "--order", lifted)?;
            let s = solve_system(sys, order)?;
            let coeffs: Vec<String> = s.coeffs()[1..].iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", coeffs.join(" "))?;
        }
        Command::Verify { suite, corrupt } => {
            let mode = if corrupt { Mode::Corrupt } else { Mode::Honest };
            let outcomes = run_suite(suite.suite(), mode);
            for o in &outcomes {
                writeln!(out, "{o}")?;
            }
            if outcomes.iter().any(|o| !o.pass) {
                return Err(Failure::Check);
            }
        }
        Command::BijectionCheck { max_size } => {
            check_cap(max_size, OBJECT_CAP, "--max-size", lifted)?;
            let mut all_ok = true;
            for n in 1..=max_size {
                let level = slicings::enumerate::slicings(RuleId::Bax, n)?;
                let ok = level.par_iter().all(|s| {
                    let t = slicing_to_nilp(s);
                    nilp_to_slicing(&t).is_ok_and(|back| &back == s)
                        && is_schroeder_triple(&t).is_ok_and(|b| b == is_member(s, RuleId::NewSch))
                });
                all_ok &= ok;
                writeln!(out, "{n}\t{}\t{}", level.len(), if ok { "PASS" } else { "FAIL" })?;
            }
            if !all_ok {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 || rayon::ThreadPoolBuilder::new().num_threads(t).build_global().is_err() {
            eprintln!("error: invalid --threads {t}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::FAILURE,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CAP)
        }
        Err(Failure::Check) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
