//! Command-line front end. Exit codes: 0 yes / witness, 1 no, 2 error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::format::{
    apply_weights, parse_document, parse_matching, parse_roommates, parse_weight_lines, parse_x3c,
    serialize_instance, serialize_matching,
};
use crate::gadgets::{max_weight_lq2, solve_lq2, Problem};
use crate::generators::{
    gen_condorcet, gen_perpo_x3c, gen_pop_from_roommates, gen_pop_x3c, gen_popv_x3c, gen_random,
    CondorcetVariant,
};
use crate::instance::{ensure_feasible, Instance, Matching};
use crate::open_set::{
    dominating_with_open_set, max_weight_fpt_counted, max_weight_with_open_set, solve_fpt_guarded,
    solve_open_sweep, OpenSet, MQUOTA_GUARD, OPEN_SWEEP_GUARD,
};
use crate::oracle::{oracle_exists, oracle_max_weight, oracle_verify, ExistsMode, Guard};
use crate::weighted::{reduce_perpo, reduce_verify, VerifyMode, WeightedInstance};

#[derive(Debug, Parser)]
#[command(
    name = "quota-alloc",
    version,
    about = "House allocation with lower and upper project quotas"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Oracle,
    Lq2,
    Fpt,
    Flow,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Instance file (`-` for stdin).
    #[arg(short, long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Tuning parameter, e.g. `--param oracle-guard 12` or `--param mquota-guard 20`.
    #[arg(long, num_args = 2, value_names = ["KEY", "VALUE"], action = clap::ArgAction::Append)]
    param: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an instance file.
    Validate {
        #[arg(short, long)]
        instance: PathBuf,
    },
    /// Compute a perfect Pareto optimal matching, or a maximum-cardinality Pareto optimal one.
    Solve {
        #[arg(value_enum)]
        problem: SolveKind,
        #[command(flatten)]
        common: Common,
    },
    /// Look for a matching more popular than / dominating the given one.
    Verify {
        #[arg(value_enum)]
        mode: VerifyKind,
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        matching: PathBuf,
        /// Only consider matchings opening exactly these projects.
        #[arg(long, value_delimiter = ',')]
        open: Option<Vec<String>>,
    },
    /// Exhaustive existence check.
    Exists {
        #[arg(value_enum)]
        mode: ExistsKind,
        #[command(flatten)]
        common: Common,
    },
    /// Maximum-weight matching; weights from `weight` lines.
    Maxweight {
        #[command(flatten)]
        common: Common,
        /// Extra file with `weight` lines.
        #[arg(short, long)]
        weights: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        open: Option<Vec<String>>,
    },
    /// Print a generated instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveKind {
    Perpo,
    Pareto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Popular,
    Pareto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExistsKind {
    Popular,
    PerfectPareto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Unit,
    Lq3,
}

#[derive(Debug, Subcommand)]
enum GenKind {
    Condorcet {
        #[arg(long, value_enum, default_value_t = VariantArg::Unit)]
        variant: VariantArg,
    },
    /// Instance whose listed matching is unpopular iff the X3C input has a cover.
    X3cPopv {
        #[arg(short = 'x', long)]
        x3c: PathBuf,
        /// Write the distinguished matching here.
        #[arg(long)]
        matching_out: Option<PathBuf>,
    },
    X3cPerpo {
        #[arg(short = 'x', long)]
        x3c: PathBuf,
    },
    X3cPop {
        #[arg(short = 'x', long)]
        x3c: PathBuf,
    },
    Roommates {
        #[arg(short, long)]
        roommates: PathBuf,
    },
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        quota_max: u32,
        #[arg(long, default_value_t = 0)]
        min_len: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
}

struct Params {
    guard: Guard,
    mquota_guard: usize,
    sweep_guard: usize,
}

impl Params {
    fn parse(raw: &[String]) -> Result<Self> {
        let mut p = Params {
            guard: Guard::default(),
            mquota_guard: MQUOTA_GUARD,
            sweep_guard: OPEN_SWEEP_GUARD,
        };
        for kv in raw.chunks(2) {
            let value: usize = kv[1].parse().map_err(|_| {
                Error::Parameters(format!("`{}` needs a nonnegative integer", kv[0]))
            })?;
            match kv[0].as_str() {
                "oracle-guard" => {
                    p.guard = Guard {
                        max_applicants: value,
                        max_projects: value.max(p.guard.max_projects),
                    }
                }
                "mquota-guard" => p.mquota_guard = value,
                "sweep-guard" => p.sweep_guard = value,
                other => return Err(Error::Parameters(format!("unknown parameter `{other}`"))),
            }
        }
        Ok(p)
    }
}

/// What a command printed and how it ended.
enum Outcome {
    Yes(String),
    No,
}

fn read(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Format(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn open_set(inst: &Instance, names: &[String]) -> Result<OpenSet> {
    let names: Vec<&str> = names
        .iter()
        .map(String::as_str)
        .filter(|s| !s.is_empty())
        .collect();
    OpenSet::from_names(inst, &names)
}

fn auto(inst: &Instance, method: Method) -> Method {
    match method {
        Method::Auto if inst.lower_max() <= 2 => Method::Lq2,
        Method::Auto => Method::Fpt,
        m => m,
    }
}

fn matching_answer(inst: &Instance, m: Option<Matching>) -> Outcome {
    match m {
        Some(m) => Outcome::Yes(serialize_matching(inst, &m)),
        None => Outcome::No,
    }
}

fn max_weight(
    winst: &WeightedInstance,
    method: Method,
    params: &Params,
) -> Result<(i64, Matching)> {
    let inst = winst.base();
    match auto(inst, method) {
        Method::Oracle => oracle_max_weight(winst, params.guard),
        Method::Lq2 => max_weight_lq2(winst),
        Method::Fpt => {
            max_weight_fpt_counted(winst, params.mquota_guard).map(|o| (o.weight, o.matching))
        }
        Method::Flow => {
            if inst.m() > params.sweep_guard || inst.m() >= 63 {
                return Err(Error::GuardExceeded {
                    what: "open set sweep",
                    value: inst.m(),
                    limit: params.sweep_guard.min(62),
                });
            }
            let mut best: Option<(i64, Matching)> = None;
            for mask in 0..1u64 << inst.m() {
                if let Some((w, m)) =
                    max_weight_with_open_set(winst, &OpenSet::from_mask(inst, mask))?
                {
                    if best.as_ref().is_none_or(|(b, _)| w > *b) {
                        best = Some((w, m));
                    }
                }
            }
            Ok(best.expect("the empty open set is always feasible"))
        }
        Method::Auto => unreachable!(),
    }
}

fn execute(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Validate { instance } => {
            let inst = parse_document(&read(&instance)?)?.instance;
            Ok(Outcome::Yes(format!(
                "ok: {} applicants, {} projects, {} edges\n",
                inst.n(),
                inst.m(),
                inst.edge_count()
            )))
        }
        Command::Solve { problem, common } => {
            let inst = parse_document(&read(&common.instance)?)?.instance;
            let params = Params::parse(&common.param)?;
            match problem {
                SolveKind::Perpo => {
                    let found = match auto(&inst, common.method) {
                        Method::Oracle => {
                            oracle_exists(&inst, ExistsMode::PerfectPareto, params.guard)?
                        }
                        Method::Lq2 => solve_lq2(&inst, Problem::Perpo, None)?,
                        Method::Fpt => {
                            solve_fpt_guarded(&inst, Problem::Perpo, None, params.mquota_guard)?
                        }
                        Method::Flow => {
                            solve_open_sweep(&inst, Problem::Perpo, None, params.sweep_guard)?
                        }
                        Method::Auto => unreachable!(),
                    };
                    Ok(matching_answer(&inst, found))
                }
                SolveKind::Pareto => {
                    let (_, m) = max_weight(&reduce_perpo(&inst), common.method, &params)?;
                    Ok(Outcome::Yes(serialize_matching(&inst, &m)))
                }
            }
        }
        Command::Verify {
            mode,
            common,
            matching,
            open,
        } => {
            let inst = parse_document(&read(&common.instance)?)?.instance;
            let m = parse_matching(&inst, &read(&matching)?)?;
            ensure_feasible(&inst, &m)?;
            let params = Params::parse(&common.param)?;
            let (vm, problem) = match mode {
                VerifyKind::Popular => (VerifyMode::Popular, Problem::Popv),
                VerifyKind::Pareto => (VerifyMode::Pareto, Problem::Pov),
            };
            if let Some(names) = open {
                if !matches!(common.method, Method::Auto | Method::Flow) {
                    return Err(Error::Parameters(
                        "--open works with --method flow only".into(),
                    ));
                }
                let open = open_set(&inst, &names)?;
                let found = match vm {
                    VerifyMode::Pareto => dominating_with_open_set(&inst, &m, &open)?,
                    VerifyMode::Popular => {
                        let red = reduce_verify(&inst, &m, vm)?;
                        max_weight_with_open_set(&red.winst, &open)?
                            .filter(|(w, _)| *w > red.threshold)
                            .map(|(_, m)| m)
                    }
                };
                return Ok(matching_answer(&inst, found));
            }
            let found = match auto(&inst, common.method) {
                Method::Oracle => oracle_verify(&inst, &m, vm, params.guard)?,
                Method::Lq2 => solve_lq2(&inst, problem, Some(&m))?,
                Method::Fpt => solve_fpt_guarded(&inst, problem, Some(&m), params.mquota_guard)?,
                Method::Flow => solve_open_sweep(&inst, problem, Some(&m), params.sweep_guard)?,
                Method::Auto => unreachable!(),
            };
            Ok(matching_answer(&inst, found))
        }
        Command::Exists { mode, common } => {
            if !matches!(common.method, Method::Auto | Method::Oracle) {
                return Err(Error::Parameters(
                    "`exists` is answered by the oracle only".into(),
                ));
            }
            let inst = parse_document(&read(&common.instance)?)?.instance;
            let params = Params::parse(&common.param)?;
            let mode = match mode {
                ExistsKind::Popular => ExistsMode::Popular,
                ExistsKind::PerfectPareto => ExistsMode::PerfectPareto,
            };
            Ok(matching_answer(
                &inst,
                oracle_exists(&inst, mode, params.guard)?,
            ))
        }
        Command::Maxweight {
            common,
            weights,
            open,
        } => {
            let doc = parse_document(&read(&common.instance)?)?;
            let mut entries = doc.weights;
            if let Some(path) = weights {
                entries.extend(parse_weight_lines(&read(&path)?)?);
            }
            let winst = apply_weights(&doc.instance, &entries)?;
            let params = Params::parse(&common.param)?;
            let result = match open {
                Some(names) => {
                    if !matches!(common.method, Method::Auto | Method::Flow) {
                        return Err(Error::Parameters(
                            "--open works with --method flow only".into(),
                        ));
                    }
                    max_weight_with_open_set(&winst, &open_set(&doc.instance, &names)?)?
                }
                None => Some(max_weight(&winst, common.method, &params)?),
            };
            Ok(match result {
                Some((w, m)) => Outcome::Yes(format!(
                    "weight {w}\n{}",
                    serialize_matching(&doc.instance, &m)
                )),
                None => Outcome::No,
            })
        }
        Command::Gen { kind } => generate(kind),
    }
}

fn generate(kind: GenKind) -> Result<Outcome> {
    let inst = match kind {
        GenKind::Condorcet { variant } => gen_condorcet(match variant {
            VariantArg::Unit => CondorcetVariant::Unit,
            VariantArg::Lq3 => CondorcetVariant::Lq3,
        }),
        GenKind::X3cPopv { x3c, matching_out } => {
            let (inst, m) = gen_popv_x3c(&parse_x3c(&read(&x3c)?)?)?;
            if let Some(path) = matching_out {
                std::fs::write(&path, serialize_matching(&inst, &m))
                    .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
            }
            inst
        }
        GenKind::X3cPerpo { x3c } => gen_perpo_x3c(&parse_x3c(&read(&x3c)?)?)?,
        GenKind::X3cPop { x3c } => gen_pop_x3c(&parse_x3c(&read(&x3c)?)?)?,
        GenKind::Roommates { roommates } => {
            gen_pop_from_roommates(&parse_roommates(&read(&roommates)?)?)
        }
        GenKind::Random {
            seed,
            n,
            m,
            quota_max,
            min_len,
            max_len,
        } => gen_random(seed, n, m, quota_max, min_len..=max_len)?,
    };
    Ok(Outcome::Yes(serialize_instance(&inst)))
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(cli) {
        Ok(Outcome::Yes(text)) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Ok(Outcome::No) => {
            let _ = writeln!(out, "NONE");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
