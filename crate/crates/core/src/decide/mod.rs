//! Top-level decision: the linear stage, the branch structure, then the
//! witness search and the residue obstruction search interleaved on every
//! leaf under a step budget.

mod certificate;
mod enumerate;
mod modular;
mod pipeline;
mod registry;
mod report;

pub use certificate::{obstruction, verify_certificate, CertError, Certificate, EmptyStage, Proof, CERTIFICATE_FORMAT};
pub use enumerate::{l1_shell, solve_zk, try_point};
pub use modular::{
    bs_schedule, check_chain, survivor_table, wreath_classes, ModRecord, ModulusDesc, RefinementNode, TableError,
    WreathSchedule,
};
pub use pipeline::{build_root, AnyLeaf, AnyRoot, Leaf, Root, Structure, EXP_BUDGET, TRI_BRANCHES};
pub use registry::{Enumerate, Event, MonicModuli, PrimePowerModuli, Procedure, ProcedureRegistry, ProcedureRun};
pub use report::{verify_report, Report, ReportError, SystemInfo, ToolInfo, VerdictKind, WitnessEntry, REPORT_FORMAT};

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::frontend::EquationSystem;
use crate::groups::Assignment;
use crate::intlinalg::AffineLattice;

/// Steps a refuting procedure may spend on the whole parameter lattice
/// before the branch structure is computed.
pub const PRELUDE_STEPS: u64 = 4096;
/// Steps per procedure per scheduling turn.
pub const QUANTUM: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Steps each procedure may spend in total.
    pub max_steps: u64,
    /// Largest prime power (BS) or coefficient modulus of `h` (wreath over `Z`).
    pub max_prime_power: u64,
    pub max_monic_degree: usize,
    /// Largest enumeration shell.
    pub max_radius: u32,
    /// Largest residue table `period^dim` computed for one modulus.
    pub residue_cap: u64,
    /// Largest surviving residue set before the obstruction search gives up on a leaf.
    pub survivor_cap: usize,
    #[serde(skip)]
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 100_000,
            max_prime_power: 64,
            max_monic_degree: 3,
            max_radius: 12,
            residue_cap: 1 << 14,
            survivor_cap: 1 << 14,
            time_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontierEntry {
    pub branch: AffineLattice,
    pub procedures: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownReport {
    pub reason: String,
    pub frontier: Vec<FrontierEntry>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Sat(Assignment),
    Unsat(Certificate),
    Unknown(UnknownReport),
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Sat(_) => VerdictKind::Sat,
            Verdict::Unsat(_) => VerdictKind::Unsat,
            Verdict::Unknown(_) => VerdictKind::Unknown,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideStats {
    /// `linear`, `exact`, `empty` or `fallback`.
    pub structure: String,
    pub branches: usize,
    pub pruned: usize,
    pub refuted_branches: usize,
    pub steps: BTreeMap<String, u64>,
    pub rounds: u64,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub stats: DecideStats,
}

/// Decide with every applicable registered procedure.
pub fn decide(system: &EquationSystem, budget: &Budget) -> Decision {
    decide_with(system, budget, &ProcedureRegistry::default(), None).expect("default selection is valid")
}

struct LeafState {
    leaf: AnyLeaf,
    runs: Vec<Option<Box<dyn ProcedureRun>>>,
    statuses: Vec<String>,
    refuted: Option<Proof>,
}

/// Decide with the procedures named in `names` (all applicable ones when `None`).
pub fn decide_with(
    system: &EquationSystem,
    budget: &Budget,
    registry: &ProcedureRegistry,
    names: Option<&[String]>,
) -> Result<Decision, String> {
    let start = Instant::now();
    let procs = registry.select(&system.spec, names)?;
    let mut stats = DecideStats::default();
    for p in &procs {
        stats.steps.insert(p.name().to_string(), 0);
    }
    let root = match build_root(system) {
        Ok(r) => r,
        Err(row) => {
            stats.structure = "linear".into();
            let cert = Certificate::new(system, Proof::LinearInfeasible { row });
            return Ok(Decision { verdict: Verdict::Unsat(cert), stats });
        }
    };

    let full = root.full_lattice();
    let full_leaf = root.leaf(&full);
    for p in procs.iter().filter(|p| p.refutes()) {
        let cap = PRELUDE_STEPS.min(budget.max_steps);
        let mut run = p.start(&system.spec, &full_leaf, budget);
        let mut used = 0;
        while used < cap {
            let (u, ev) = run.step(system, &full_leaf, cap - used);
            used += u;
            match ev {
                Event::Refuted(chain) => {
                    *stats.steps.get_mut(p.name()).unwrap() += used;
                    stats.structure = "root".into();
                    let cert = Certificate::new(system, obstruction(&system.spec, full, chain));
                    return Ok(Decision { verdict: Verdict::Unsat(cert), stats });
                }
                Event::Exhausted | Event::Witness(_) => break,
                Event::Continue => {}
            }
        }
        *stats.steps.get_mut(p.name()).unwrap() += used;
    }

    let (lattices, exact) = match root.structure() {
        Structure::EmptyTriangular | Structure::EmptyResidual => {
            let stage = match root.structure() {
                Structure::EmptyTriangular => EmptyStage::Triangular,
                _ => EmptyStage::Residual,
            };
            stats.structure = "empty".into();
            let cert = Certificate::new(system, Proof::EmptyDisjunction { stage });
            return Ok(Decision { verdict: Verdict::Unsat(cert), stats });
        }
        Structure::Exact { leaves, pruned } => {
            stats.structure = "exact".into();
            stats.pruned = pruned;
            (leaves, true)
        }
        Structure::Fallback => {
            stats.structure = "fallback".into();
            (vec![full.clone()], false)
        }
    };
    stats.branches = lattices.len();

    let mut states: Vec<LeafState> = lattices
        .iter()
        .map(|lat| {
            let leaf = root.leaf(lat);
            let runs = procs.iter().map(|p| Some(p.start(&system.spec, &leaf, budget))).collect();
            LeafState { leaf, runs, statuses: vec![String::new(); procs.len()], refuted: None }
        })
        .collect();

    let timed_out = |start: &Instant| budget.time_limit.is_some_and(|t| start.elapsed() >= t);
    let mut reason = "all procedures exhausted their search space".to_string();
    'outer: loop {
        stats.rounds += 1;
        let mut progress = false;
        let mut budget_hit = false;
        for st in states.iter_mut() {
            if st.refuted.is_some() {
                continue;
            }
            for (pi, p) in procs.iter().enumerate() {
                let spent = stats.steps[p.name()];
                let Some(run) = st.runs[pi].as_mut() else { continue };
                if spent >= budget.max_steps {
                    budget_hit = true;
                    continue;
                }
                let (used, ev) = run.step(system, &st.leaf, QUANTUM.min(budget.max_steps - spent));
                *stats.steps.get_mut(p.name()).unwrap() += used;
                progress = true;
                st.statuses[pi] = run.status();
                match ev {
                    Event::Continue => {}
                    Event::Exhausted => st.runs[pi] = None,
                    Event::Witness(asg) => return Ok(Decision { verdict: Verdict::Sat(asg), stats }),
                    Event::Refuted(chain) => {
                        st.refuted = Some(obstruction(&system.spec, st.leaf.lattice().clone(), chain));
                        stats.refuted_branches += 1;
                        break;
                    }
                }
                if timed_out(&start) {
                    reason = "time limit reached".into();
                    break 'outer;
                }
            }
        }
        if states.iter().all(|s| s.refuted.is_some()) {
            let mut proofs: Vec<Proof> = states.into_iter().map(|s| s.refuted.unwrap()).collect();
            let proof = if exact { Proof::BranchCover { branches: proofs } } else { proofs.remove(0) };
            let cert = Certificate::new(system, proof);
            return Ok(Decision { verdict: Verdict::Unsat(cert), stats });
        }
        if !progress {
            if budget_hit {
                reason = "step budget exhausted".into();
            }
            break;
        }
    }
    let frontier = states
        .iter()
        .filter(|s| s.refuted.is_none())
        .map(|s| FrontierEntry {
            branch: s.leaf.lattice().clone(),
            procedures: procs
                .iter()
                .zip(&s.statuses)
                .zip(&s.runs)
                .map(|((p, st), run)| {
                    let state = if run.is_none() { format!("done; {st}") } else { st.clone() };
                    (p.name().to_string(), state)
                })
                .collect(),
        })
        .collect();
    Ok(Decision { verdict: Verdict::Unknown(UnknownReport { reason, frontier }), stats })
}

/// Procedures known to the default registry, for `--list-procedures`.
pub fn default_procedures() -> Vec<Arc<dyn Procedure>> {
    ProcedureRegistry::default().entries().to_vec()
}
