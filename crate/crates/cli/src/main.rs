use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};

use metaeq_core::decide::{
    build_root, decide_with, verify_report, Budget, Decision, Proof, ProcedureRegistry, Report, Structure, Verdict,
    VerdictKind,
};
use metaeq_core::frontend::{parse_input, EquationSystem};
use metaeq_core::groups::{GroupElement, GroupSpec};
use metaeq_core::reduce::{reduce_bs, reduce_wreath};

const EXIT_SAT: u8 = 0;
const EXIT_UNSAT: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Stage {
    Reduce,
    Tri,
    Exp,
    Decide,
}

/// Decide systems of equations in BS(1,k) and in wreath products A wr Z.
///
/// Exit status: 0 sat, 1 unsat, 2 unknown, 64 usage error, 65 malformed
/// input or report, 66 unreadable file. With --verify-only the status is 0
/// when the report checks out and 1 when it does not.
#[derive(Parser, Debug)]
#[command(name = "metaeq", version)]
struct Cli {
    /// Input file (`-` for standard input): a `group ...` header, then one equation per line
    #[arg(required_unless_present_any = ["verify_only", "list_procedures"])]
    input: Option<PathBuf>,

    /// Steps each procedure may spend
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_steps: u64,

    /// Largest prime power q (BS) or prime coefficient modulus (wreath over Z)
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(2..))]
    max_prime_power: u64,

    /// Largest degree of the monic moduli h(t)
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    max_monic_degree: u64,

    /// Largest enumeration shell
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    radius: u32,

    /// Wall-clock cap in seconds
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    time_limit: Option<u64>,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Print an intermediate stage to standard error (repeatable)
    #[arg(long, value_enum)]
    debug_stage: Vec<Stage>,

    /// Replay the witness or certificate of a JSON report instead of solving
    #[arg(long, value_name = "REPORT", conflicts_with = "input")]
    verify_only: Option<PathBuf>,

    /// Comma-separated procedure names to run (default: all applicable)
    #[arg(long, value_delimiter = ',')]
    procedures: Option<Vec<String>>,

    /// List registered procedures and exit
    #[arg(long)]
    list_procedures: bool,
}

fn read_source(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_SAT });
        }
    };
    ExitCode::from(run(&cli))
}

fn run(cli: &Cli) -> u8 {
    let registry = ProcedureRegistry::default();
    if cli.list_procedures {
        for p in registry.entries() {
            println!("{:<10} {}", p.name(), p.description());
        }
        return EXIT_SAT;
    }
    if let Some(path) = &cli.verify_only {
        return verify_only(path, cli.format);
    }
    let path = cli.input.as_ref().expect("clap enforces an input");
    let text = match read_source(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NO_INPUT;
        }
    };
    let system = match parse_input(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_DATA;
        }
    };
    let budget = Budget {
        max_steps: cli.budget_steps,
        max_prime_power: cli.max_prime_power,
        max_monic_degree: cli.max_monic_degree as usize,
        max_radius: cli.radius,
        time_limit: cli.time_limit.map(Duration::from_secs),
        ..Budget::default()
    };
    debug_pipeline(&system, &cli.debug_stage);
    let start = Instant::now();
    let decision = match decide_with(&system, &budget, &registry, cli.procedures.as_deref()) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    if cli.debug_stage.contains(&Stage::Decide) {
        eprintln!("== decide\n{:#?}", decision.stats);
    }
    let report = Report::new(&system, &decision, elapsed);
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Human => print_human(&system, &decision, elapsed),
    }
    match decision.verdict {
        Verdict::Sat(_) => EXIT_SAT,
        Verdict::Unsat(_) => EXIT_UNSAT,
        Verdict::Unknown(_) => EXIT_UNKNOWN,
    }
}

fn verify_only(path: &PathBuf, format: Format) -> u8 {
    let text = match read_source(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_NO_INPUT;
        }
    };
    let report = match Report::from_json(&text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DATA;
        }
    };
    let outcome = verify_report(&report);
    let verdict = match report.verdict {
        VerdictKind::Sat => "sat",
        VerdictKind::Unsat => "unsat",
        VerdictKind::Unknown => "unknown",
    };
    match format {
        Format::Json => {
            let ok = outcome.is_ok();
            let reason = outcome.as_ref().err().map(|e| e.to_string());
            println!(
                "{{\"verified\": {ok}, \"verdict\": \"{verdict}\", \"reason\": {}}}",
                reason.map_or("null".to_string(), |r| format!("{r:?}"))
            );
        }
        Format::Human => match &outcome {
            Ok(_) => println!("verified: {verdict}"),
            Err(e) => println!("rejected: {e}"),
        },
    }
    if outcome.is_ok() {
        EXIT_SAT
    } else {
        EXIT_UNSAT
    }
}

fn debug_pipeline(system: &EquationSystem, stages: &[Stage]) {
    if stages.contains(&Stage::Reduce) {
        eprintln!("== reduce");
        match &system.spec {
            GroupSpec::Bs { .. } => eprint!("{}", reduce_bs(system).render()),
            GroupSpec::Wreath { .. } => {
                for (c, part) in reduce_wreath(system).iter().enumerate() {
                    eprintln!("component {c}:");
                    eprint!("{}", part.render());
                }
            }
        }
    }
    if !stages.contains(&Stage::Tri) && !stages.contains(&Stage::Exp) {
        return;
    }
    let root = match build_root(system) {
        Ok(r) => r,
        Err(row) => {
            eprintln!("== linear stage infeasible: multiplier {:?} modulo {}", row.multiplier, row.modulus);
            return;
        }
    };
    if stages.contains(&Stage::Tri) {
        eprintln!("== tri\n{}{}", root.render(), root.render_triangular());
    }
    if stages.contains(&Stage::Exp) {
        eprintln!("== exp");
        match root.structure() {
            Structure::Exact { leaves, pruned } => {
                for l in &leaves {
                    eprintln!("  branch {l}");
                }
                eprintln!("  ({pruned} pruned)");
            }
            other => eprintln!("  {other:?}"),
        }
    }
}

fn describe(proof: &Proof) -> String {
    match proof {
        Proof::LinearInfeasible { row } => {
            format!("shift equations infeasible (combination {:?} modulo {})", row.multiplier, row.modulus)
        }
        Proof::EmptyDisjunction { stage } => format!("every branch is empty ({stage:?} stage)"),
        Proof::ModulusObstruction { branch, chain } => {
            let moduli: Vec<String> = chain.iter().map(|r| r.modulus.render()).collect();
            format!("residue obstruction on {branch} via {}", moduli.join(", "))
        }
        Proof::ComponentObstruction { component, inner } => format!("component {component}: {}", describe(inner)),
        Proof::BranchCover { branches } => {
            let parts: Vec<String> = branches.iter().map(|b| format!("\n  - {}", describe(b))).collect();
            format!("{} branches refuted:{}", branches.len(), parts.concat())
        }
    }
}

fn print_human(system: &EquationSystem, decision: &Decision, elapsed_ms: u64) {
    println!("system {}", &system.hash()[..16]);
    match &decision.verdict {
        Verdict::Sat(asg) => {
            println!("sat");
            for (v, g) in asg {
                match g {
                    GroupElement::Bs(e) => println!("  {v} = {}   ({g})", e.word()),
                    GroupElement::Wreath(_) => println!("  {v} = {g}"),
                }
            }
        }
        Verdict::Unsat(cert) => {
            println!("unsat");
            println!("  {}", describe(&cert.proof));
        }
        Verdict::Unknown(u) => {
            println!("unknown: {}", u.reason);
            for f in &u.frontier {
                println!("  branch {}", f.branch);
                for (p, s) in &f.procedures {
                    println!("    {p}: {s}");
                }
            }
        }
    }
    let steps: Vec<String> = decision.stats.steps.iter().map(|(k, v)| format!("{k} {v}")).collect();
    println!("steps: {}; {} ms", steps.join(", "), elapsed_ms);
}
