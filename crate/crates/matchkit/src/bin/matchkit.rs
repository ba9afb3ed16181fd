//! Command-line front end. Exit codes are part of the contract:
//! 0 = yes/found, 1 = definite no, 2 = rank budget exceeded, 64 = error,
//! 70 = oracle disagreement, 71 = verification failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use matchkit::cycles::{
    ecs_bruteforce, ecs_solve, soc_bruteforce, soc_solve, CycleCertificate, CycleSolveOutcome,
    DEFAULT_CYCLE_BUDGET,
};
use matchkit::generate::{gen_random_instance, gen_tightness_family, TightnessSide};
use matchkit::graph::CycleSet;
use matchkit::instance::{
    parse_instance, parse_solution, serialize_instance, serialize_solution, ProblemKind,
    Solution, Status, WeightedInstance,
};
use matchkit::pm::verify_perfect_matching;
use matchkit::reductions::{
    build_gadget, lift_cycles_to_matching, project_matching_to_cycles, reduce_bcpm_to_soc,
    reduce_ecs_to_ewpm, reduce_ewpm_to_ecs, reduce_soc_to_bcpm, MatchingReduction, RawContext,
};
use matchkit::spm::{
    bcpm_solve_with, ewpm_solve_with, spm_decide_with, spm_ranks_bruteforce, spm_ranks_with,
    BipartiteBound, SolveOutcome,
};
use matchkit::Weight;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_ERROR: u8 = 64;
const EXIT_ORACLE_DISAGREES: u8 = 70;
const EXIT_VERIFY_FAILED: u8 = 71;

#[derive(Parser)]
#[command(
    name = "matchkit",
    about = "Exact-weight perfect matching and conservative-cycle toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum BoundArg {
    #[default]
    Auto,
    On,
    Off,
}

impl From<BoundArg> for BipartiteBound {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Auto => BipartiteBound::Auto,
            BoundArg::On => BipartiteBound::On,
            BoundArg::Off => BipartiteBound::Off,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Bipartite,
    General,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an instance and write a solution file.
    Solve {
        file: PathBuf,
        /// Rank budget for the ladder solvers.
        #[arg(long, default_value_t = DEFAULT_CYCLE_BUDGET)]
        budget: u32,
        /// Cross-check against the brute-force oracle (small instances).
        #[arg(long)]
        oracle: bool,
        /// Forced-set size bound: detect bipartiteness, or force it on/off.
        #[arg(long, value_enum, default_value_t)]
        bipartite_bound: BoundArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduce an instance to its counterpart kind; writes the reduced
    /// instance and a context sidecar.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        to: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        context: PathBuf,
    },
    /// Translate a reduced-instance solution back to the original instance.
    Lift {
        #[arg(long)]
        context: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        /// The original (pre-reduction) instance file.
        #[arg(long)]
        instance: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a solution file against an instance.
    Verify {
        file: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Generate an instance file.
    Gen {
        /// n edge_prob wmin wmax kind seed
        #[arg(long, num_args = 6, value_names = ["N", "P", "WMIN", "WMAX", "KIND", "SEED"])]
        random: Option<Vec<String>>,
        /// Tightness family rank (>= 2); needs --side.
        #[arg(long)]
        tightness: Option<u32>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Brute-force answer with certificate (small instances).
    Oracle {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(EXIT_ERROR);
            }
            print!("{e}");
            return ExitCode::from(EXIT_YES);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> matchkit::error::Result<u8> {
    match cli.cmd {
        Cmd::Solve {
            file,
            budget,
            oracle,
            bipartite_bound,
            output,
        } => cmd_solve(&file, budget, oracle, bipartite_bound.into(), output.as_deref()),
        Cmd::Reduce {
            file,
            to,
            output,
            context,
        } => cmd_reduce(&file, &to, &output, &context),
        Cmd::Lift {
            context,
            solution,
            instance,
            output,
        } => cmd_lift(&context, &solution, &instance, &output),
        Cmd::Verify { file, solution } => cmd_verify(&file, &solution),
        Cmd::Gen {
            random,
            tightness,
            side,
            output,
        } => cmd_gen(random.as_deref(), tightness, side, &output),
        Cmd::Oracle { file, output } => cmd_oracle(&file, output.as_deref()),
    }
}

fn read_instance(path: &Path) -> matchkit::error::Result<WeightedInstance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

fn emit_solution(sol: &Solution, output: Option<&Path>) -> matchkit::error::Result<()> {
    let text = serialize_solution(sol);
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_solve(
    file: &Path,
    budget: u32,
    oracle: bool,
    bound: BipartiteBound,
    output: Option<&Path>,
) -> matchkit::error::Result<u8> {
    if budget < 1 {
        return Err(matchkit::error::Error::Malformed {
            line: 0,
            msg: "budget must be at least 1".into(),
        });
    }
    let inst = read_instance(file)?;
    let (solution, code) = solve_instance(&inst, budget, bound)?;
    emit_solution(&solution, output)?;
    if oracle && solution.status != Status::Unknown {
        let want = oracle_answer(&inst)?.is_some();
        let got = solution.status == Status::Yes;
        if want != got {
            eprintln!("oracle disagrees: solver says {}, oracle says {}",
                solution.status.as_str(),
                if want { "yes" } else { "no" });
            return Ok(EXIT_ORACLE_DISAGREES);
        }
    }
    Ok(code)
}

fn solve_instance(
    inst: &WeightedInstance,
    budget: u32,
    bound: BipartiteBound,
) -> matchkit::error::Result<(Solution, u8)> {
    let out = match inst.kind {
        ProblemKind::Ewpm => matching_outcome(inst, ewpm_solve_with(inst, budget, bound)),
        ProblemKind::Bcpm => matching_outcome(inst, bcpm_solve_with(inst, budget, bound)),
        ProblemKind::Spm => {
            if spm_decide_with(inst, bound)? {
                let l = inst.rank_l.expect("validated SPM instance");
                let table = spm_ranks_with(inst, l, bound);
                let entry = &table.entries[l as usize - 1];
                (
                    Solution::yes_matching(&inst.graph, &entry.witness, entry.weight),
                    EXIT_YES,
                )
            } else {
                (Solution::no(), EXIT_NO)
            }
        }
        ProblemKind::Ecs => cycle_outcome(inst, ecs_solve(inst, budget)?)?,
        ProblemKind::Soc => cycle_outcome(inst, soc_solve(inst, budget)?)?,
    };
    Ok(out)
}

fn matching_outcome(inst: &WeightedInstance, out: SolveOutcome) -> (Solution, u8) {
    match out {
        SolveOutcome::Found(r) => (
            Solution::yes_matching(&inst.graph, &r.matching, r.weight),
            EXIT_YES,
        ),
        SolveOutcome::DefiniteNo => (Solution::no(), EXIT_NO),
        SolveOutcome::BudgetExceeded { .. } => (Solution::unknown(), EXIT_BUDGET),
    }
}

fn cycle_outcome(
    inst: &WeightedInstance,
    out: CycleSolveOutcome,
) -> matchkit::error::Result<(Solution, u8)> {
    Ok(match out {
        CycleSolveOutcome::Found { certificate, weight } => {
            let set = match certificate {
                CycleCertificate::Set(set) => set,
                CycleCertificate::Single(c) => CycleSet::new(&inst.graph, vec![c])?,
            };
            (Solution::yes_cycles(&inst.graph, &set, weight)?, EXIT_YES)
        }
        CycleSolveOutcome::DefiniteNo => (Solution::no(), EXIT_NO),
        CycleSolveOutcome::BudgetExceeded { .. } => (Solution::unknown(), EXIT_BUDGET),
    })
}

/// Brute-force decision with certificate; Some(solution) means YES.
fn oracle_answer(inst: &WeightedInstance) -> matchkit::error::Result<Option<Solution>> {
    use matchkit::pm::enumerate_perfect_matchings;
    let limit = matchkit::brute_limit();
    if inst.graph.vertex_count() > limit {
        return Err(matchkit::error::Error::TooLargeForBruteForce(
            inst.graph.vertex_count(),
            limit,
        ));
    }
    Ok(match inst.kind {
        ProblemKind::Ewpm => enumerate_perfect_matchings(&inst.graph)
            .find(|m| m.weight(&inst.weights) == inst.target_k)
            .map(|m| Solution::yes_matching(&inst.graph, &m, inst.target_k)),
        ProblemKind::Bcpm => enumerate_perfect_matchings(&inst.graph)
            .filter(|m| {
                let w = m.weight(&inst.weights);
                w <= inst.target_k && (w - inst.target_k) % 2 == 0
            })
            .min_by_key(|m| m.weight(&inst.weights))
            .map(|m| {
                let w = m.weight(&inst.weights);
                Solution::yes_matching(&inst.graph, &m, w)
            }),
        ProblemKind::Spm => {
            let l = inst.rank_l.ok_or(matchkit::error::Error::MissingRank)?;
            let table = spm_ranks_bruteforce(inst, l)?;
            table
                .entries
                .get(l as usize - 1)
                .filter(|e| e.weight == inst.target_k)
                .map(|e| Solution::yes_matching(&inst.graph, &e.witness, e.weight))
        }
        ProblemKind::Ecs => match ecs_bruteforce(inst)? {
            Some(set) => {
                let w = set.weight(&inst.weights);
                Some(Solution::yes_cycles(&inst.graph, &set, w)?)
            }
            None => None,
        },
        ProblemKind::Soc => match soc_bruteforce(inst)? {
            Some(c) => {
                let w = c.weight(&inst.weights);
                let set = CycleSet::new(&inst.graph, vec![c])?;
                Some(Solution::yes_cycles(&inst.graph, &set, w)?)
            }
            None => None,
        },
    })
}

fn cmd_reduce(
    file: &Path,
    to: &str,
    output: &Path,
    context: &Path,
) -> matchkit::error::Result<u8> {
    let inst = read_instance(file)?;
    let to_kind = ProblemKind::parse(to).ok_or_else(|| {
        matchkit::error::Error::UnsupportedReduction(inst.kind.as_str().into(), to.into())
    })?;
    let unsupported = || {
        matchkit::error::Error::UnsupportedReduction(
            inst.kind.as_str().into(),
            to_kind.as_str().into(),
        )
    };
    match (inst.kind, to_kind) {
        (ProblemKind::Ewpm, ProblemKind::Ecs) | (ProblemKind::Bcpm, ProblemKind::Soc) => {
            let reduction = if inst.kind == ProblemKind::Ewpm {
                reduce_ewpm_to_ecs(&inst)?
            } else {
                reduce_bcpm_to_soc(&inst)?
            };
            match reduction {
                MatchingReduction::Reduced { inst: out, ctx } => {
                    std::fs::write(output, serialize_instance(&out))?;
                    std::fs::write(context, ctx.serialize(&inst.graph))?;
                }
                MatchingReduction::ResolvedYes { canonical } => {
                    write_resolved(output, context, &canonical, true)?;
                }
                MatchingReduction::ResolvedNo { canonical } => {
                    write_resolved(output, context, &canonical, false)?;
                }
            }
        }
        (ProblemKind::Ecs, ProblemKind::Ewpm) | (ProblemKind::Soc, ProblemKind::Bcpm) => {
            let (out, ctx) = if inst.kind == ProblemKind::Ecs {
                reduce_ecs_to_ewpm(&inst)?
            } else {
                reduce_soc_to_bcpm(&inst)?
            };
            std::fs::write(output, serialize_instance(&out))?;
            std::fs::write(context, ctx.serialize(&inst.graph, &out.graph))?;
        }
        _ => return Err(unsupported()),
    }
    Ok(EXIT_YES)
}

fn write_resolved(
    output: &Path,
    context: &Path,
    canonical: &WeightedInstance,
    yes: bool,
) -> matchkit::error::Result<()> {
    let tag = if yes { "yes" } else { "no" };
    let text = format!("c resolved {tag}\n{}", serialize_instance(canonical));
    std::fs::write(output, text)?;
    std::fs::write(context, format!("c resolved {tag}\n"))?;
    Ok(())
}

fn cmd_lift(
    context: &Path,
    solution: &Path,
    instance: &Path,
    output: &Path,
) -> matchkit::error::Result<u8> {
    let source = read_instance(instance)?;
    let raw = RawContext::parse(&std::fs::read_to_string(context)?)?;
    let sol = parse_solution(&std::fs::read_to_string(solution)?)?;
    if sol.status != Status::Yes {
        // Nothing to translate; the answer passes through.
        emit_solution(&sol, Some(output))?;
        return Ok(if sol.status == Status::No { EXIT_NO } else { EXIT_BUDGET });
    }
    let lifted = match source.kind {
        ProblemKind::Ewpm | ProblemKind::Bcpm => {
            let ctx = raw.resolve_alternating(&source.graph)?;
            let cycles = sol.cycle_set(&source.graph)?;
            match lift_cycles_to_matching(&source, &cycles, &ctx) {
                Ok(r) => {
                    // The reduced weight plus the base must account for the
                    // lifted weight, modulo the normalization shift.
                    let pairs = (source.graph.vertex_count() / 2) as Weight;
                    let shifted = r.weight + ctx.shift * pairs;
                    if sol.weight.is_some_and(|w| ctx.base_weight + w != shifted) {
                        return verify_failed("declared weight does not match the lift");
                    }
                    Solution::yes_matching(&source.graph, &r.matching, r.weight)
                }
                Err(e) => return verify_failed(&e.to_string()),
            }
        }
        ProblemKind::Ecs | ProblemKind::Soc => {
            let (gadget_graph, _, built) = build_gadget(&source.graph, &source.weights);
            let ctx = raw.resolve_gadget(&source.graph, &gadget_graph)?;
            if ctx != built {
                return verify_failed("context does not match the instance's reduction");
            }
            let m_star = sol.matching(&gadget_graph)?;
            match project_matching_to_cycles(&source, &gadget_graph, &m_star, &ctx) {
                Ok(set) => {
                    let w = set.weight(&source.weights);
                    if sol.weight.is_some_and(|sw| sw != w) {
                        return verify_failed("declared weight does not match the projection");
                    }
                    if source.kind == ProblemKind::Soc {
                        let Some(odd) = set
                            .cycles()
                            .iter()
                            .find(|c| c.weight(&source.weights).rem_euclid(2) == 1)
                        else {
                            return verify_failed("no odd cycle in the projected set");
                        };
                        let ow = odd.weight(&source.weights);
                        if ow > source.target_k {
                            return verify_failed("projected odd cycle exceeds the target");
                        }
                        let single = CycleSet::new(&source.graph, vec![odd.clone()])?;
                        Solution::yes_cycles(&source.graph, &single, ow)?
                    } else {
                        Solution::yes_cycles(&source.graph, &set, w)?
                    }
                }
                Err(e) => return verify_failed(&e.to_string()),
            }
        }
        ProblemKind::Spm => {
            return Err(matchkit::error::Error::UnsupportedReduction(
                "spm".into(),
                "lift".into(),
            ))
        }
    };
    emit_solution(&lifted, Some(output))?;
    Ok(EXIT_YES)
}

fn verify_failed(msg: &str) -> matchkit::error::Result<u8> {
    eprintln!("verification failed: {msg}");
    Ok(EXIT_VERIFY_FAILED)
}

fn cmd_verify(file: &Path, solution: &Path) -> matchkit::error::Result<u8> {
    let inst = read_instance(file)?;
    let sol = parse_solution(&std::fs::read_to_string(solution)?)?;
    if sol.status != Status::Yes {
        return Ok(EXIT_YES);
    }
    match check_certificate(&inst, &sol) {
        Ok(()) => Ok(EXIT_YES),
        Err(e) => verify_failed(&e.to_string()),
    }
}

fn check_certificate(inst: &WeightedInstance, sol: &Solution) -> matchkit::error::Result<()> {
    use matchkit::error::Error;
    let mismatch = |msg: &str| Error::SolutionMismatch(msg.into());
    match inst.kind {
        ProblemKind::Ewpm | ProblemKind::Bcpm | ProblemKind::Spm => {
            let m = sol.matching(&inst.graph)?;
            let Some(w) = verify_perfect_matching(&inst.graph, &inst.weights, m.edges())? else {
                return Err(mismatch("matching is not perfect"));
            };
            if sol.weight.is_some_and(|sw| sw != w) {
                return Err(mismatch("declared weight differs from the matching weight"));
            }
            match inst.kind {
                ProblemKind::Ewpm if w != inst.target_k => {
                    Err(mismatch("matching weight is not the target"))
                }
                ProblemKind::Bcpm
                    if w > inst.target_k || (w - inst.target_k) % 2 != 0 =>
                {
                    Err(mismatch("matching weight violates the parity bound"))
                }
                _ => Ok(()),
            }
        }
        ProblemKind::Ecs | ProblemKind::Soc => {
            let set = sol.cycle_set(&inst.graph)?;
            let w = set.weight(&inst.weights);
            if sol.weight.is_some_and(|sw| sw != w) {
                return Err(mismatch("declared weight differs from the cycle weight"));
            }
            if inst.kind == ProblemKind::Ecs {
                if w != inst.target_k {
                    return Err(mismatch("cycle-set weight is not the target"));
                }
            } else {
                if set.len() != 1 {
                    return Err(mismatch("a single odd cycle is required"));
                }
                if w.rem_euclid(2) != 1 || w > inst.target_k {
                    return Err(mismatch("cycle is not odd with weight within the target"));
                }
            }
            Ok(())
        }
    }
}

fn cmd_gen(
    random: Option<&[String]>,
    tightness: Option<u32>,
    side: Option<SideArg>,
    output: &Path,
) -> matchkit::error::Result<u8> {
    let arg_error = |msg: &str| matchkit::error::Error::Malformed {
        line: 0,
        msg: msg.into(),
    };
    let inst = match (random, tightness) {
        (Some(args), None) => {
            let n: usize = args[0].parse().map_err(|_| arg_error("bad vertex count"))?;
            let p: f64 = args[1].parse().map_err(|_| arg_error("bad edge probability"))?;
            let lo: Weight = args[2].parse().map_err(|_| arg_error("bad minimum weight"))?;
            let hi: Weight = args[3].parse().map_err(|_| arg_error("bad maximum weight"))?;
            let kind = ProblemKind::parse(&args[4]).ok_or_else(|| arg_error("bad kind"))?;
            let seed: u64 = args[5].parse().map_err(|_| arg_error("bad seed"))?;
            gen_random_instance(n, p, (lo, hi), kind, seed)?
        }
        (None, Some(l)) => {
            if l < 2 {
                return Err(arg_error("tightness rank must be at least 2"));
            }
            let side = match side.ok_or_else(|| arg_error("--tightness needs --side"))? {
                SideArg::Bipartite => TightnessSide::Bipartite,
                SideArg::General => TightnessSide::General,
            };
            gen_tightness_family(l, side)
        }
        _ => return Err(arg_error("use exactly one of --random or --tightness")),
    };
    std::fs::write(output, serialize_instance(&inst))?;
    Ok(EXIT_YES)
}

fn cmd_oracle(file: &Path, output: Option<&Path>) -> matchkit::error::Result<u8> {
    let inst = read_instance(file)?;
    match oracle_answer(&inst)? {
        Some(sol) => {
            emit_solution(&sol, output)?;
            Ok(EXIT_YES)
        }
        None => {
            emit_solution(&Solution::no(), output)?;
            Ok(EXIT_NO)
        }
    }
}
