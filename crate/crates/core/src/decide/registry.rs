//! Named procedures run by the scheduler on every leaf.

use std::sync::Arc;

use super::enumerate::{EnumStep, EnumerationState};
use super::modular::{bs_schedule, refine_with, ModRecord, ModulusDesc, Refinement, RefinementNode, WreathSchedule};
use super::pipeline::AnyLeaf;
use super::Budget;
use crate::frontend::EquationSystem;
use crate::groups::{Assignment, GroupSpec};

/// What one scheduling turn produced.
pub enum Event {
    Continue,
    /// Nothing left to try within the budget on this leaf.
    Exhausted,
    Witness(Assignment),
    Refuted(Vec<ModRecord>),
}

/// A semi-decision procedure, instantiated once per leaf.
pub trait Procedure: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Whether the procedure can produce refutations (as opposed to witnesses).
    fn refutes(&self) -> bool;
    fn applies(&self, spec: &GroupSpec) -> bool;
    fn start(&self, spec: &GroupSpec, leaf: &AnyLeaf, budget: &Budget) -> Box<dyn ProcedureRun>;
}

/// Resumable state of a procedure on one leaf.
pub trait ProcedureRun {
    /// Advance by roughly `max_steps`; returns the steps used.
    fn step(&mut self, system: &EquationSystem, leaf: &AnyLeaf, max_steps: u64) -> (u64, Event);
    /// Short progress summary for budget reports.
    fn status(&self) -> String;
}

pub struct Enumerate;

struct EnumerateRun(EnumerationState);

impl Procedure for Enumerate {
    fn name(&self) -> &'static str {
        "enumerate"
    }
    fn description(&self) -> &'static str {
        "dovetailed search for a witness over growing exponent shells"
    }
    fn refutes(&self) -> bool {
        false
    }
    fn applies(&self, _spec: &GroupSpec) -> bool {
        true
    }
    fn start(&self, _spec: &GroupSpec, _leaf: &AnyLeaf, budget: &Budget) -> Box<dyn ProcedureRun> {
        Box::new(EnumerateRun(EnumerationState::new(budget.max_radius)))
    }
}

impl ProcedureRun for EnumerateRun {
    fn step(&mut self, system: &EquationSystem, leaf: &AnyLeaf, max_steps: u64) -> (u64, Event) {
        let (used, ev) = self.0.advance(system, leaf, max_steps);
        let ev = match ev {
            EnumStep::Continue => Event::Continue,
            EnumStep::Exhausted => Event::Exhausted,
            EnumStep::Witness(a) => Event::Witness(a),
        };
        (used, ev)
    }
    fn status(&self) -> String {
        format!("shell {}", self.0.shell)
    }
}

/// Refinement over a stream of moduli, shared by both families.
struct ModularRun {
    schedule: Box<dyn Iterator<Item = ModulusDesc> + Send>,
    node: RefinementNode,
    chain: Vec<ModRecord>,
    residue_cap: u64,
    survivor_cap: usize,
    examined: u64,
    saturated: bool,
    last: Option<ModulusDesc>,
}

impl ModularRun {
    fn new(schedule: Box<dyn Iterator<Item = ModulusDesc> + Send>, leaf: &AnyLeaf, budget: &Budget) -> Self {
        ModularRun {
            schedule,
            node: RefinementNode::root(leaf.dim()),
            chain: Vec::new(),
            residue_cap: budget.residue_cap,
            survivor_cap: budget.survivor_cap,
            examined: 0,
            saturated: false,
            last: None,
        }
    }
}

impl ProcedureRun for ModularRun {
    fn step(&mut self, _system: &EquationSystem, leaf: &AnyLeaf, max_steps: u64) -> (u64, Event) {
        let mut used = 0;
        while used < max_steps {
            let Some(desc) = self.schedule.next() else {
                return (used, Event::Exhausted);
            };
            self.examined += 1;
            let (cost, outcome) = refine_with(leaf, &self.node, &desc, self.residue_cap, self.survivor_cap);
            used += cost.max(1);
            self.last = Some(desc);
            match outcome {
                Refinement::Skipped => {}
                Refinement::Saturated => {
                    self.saturated = true;
                    return (used, Event::Exhausted);
                }
                Refinement::Refined(node, rec) => {
                    self.chain.push(rec);
                    self.node = node;
                    if self.node.residues.is_empty() {
                        return (used, Event::Refuted(self.chain.clone()));
                    }
                }
            }
        }
        (used, Event::Continue)
    }
    fn status(&self) -> String {
        let last = self.last.as_ref().map_or("none".to_string(), ModulusDesc::render);
        format!(
            "{} moduli examined, last {last}, {} residues mod {} alive{}",
            self.examined,
            self.node.residues.len(),
            self.node.period,
            if self.saturated { ", saturated" } else { "" }
        )
    }
}

pub struct PrimePowerModuli;

impl Procedure for PrimePowerModuli {
    fn name(&self) -> &'static str {
        "modular"
    }
    fn description(&self) -> &'static str {
        "residue tables modulo prime powers coprime to k"
    }
    fn refutes(&self) -> bool {
        true
    }
    fn applies(&self, spec: &GroupSpec) -> bool {
        matches!(spec, GroupSpec::Bs { .. })
    }
    fn start(&self, spec: &GroupSpec, leaf: &AnyLeaf, budget: &Budget) -> Box<dyn ProcedureRun> {
        let GroupSpec::Bs { k } = spec else { unreachable!("applies to BS only") };
        let schedule = bs_schedule(*k, budget.max_prime_power);
        Box::new(ModularRun::new(Box::new(schedule.into_iter()), leaf, budget))
    }
}

pub struct MonicModuli;

impl Procedure for MonicModuli {
    fn name(&self) -> &'static str {
        "monic"
    }
    fn description(&self) -> &'static str {
        "residue tables modulo monic polynomials over Z_n"
    }
    fn refutes(&self) -> bool {
        true
    }
    fn applies(&self, spec: &GroupSpec) -> bool {
        matches!(spec, GroupSpec::Wreath { .. })
    }
    fn start(&self, spec: &GroupSpec, leaf: &AnyLeaf, budget: &Budget) -> Box<dyn ProcedureRun> {
        let GroupSpec::Wreath { shape } = spec else { unreachable!("applies to wreath only") };
        let moduli: Vec<u64> = (0..shape.components()).map(|c| shape.modulus(c)).collect();
        let schedule = WreathSchedule::new(&moduli, budget.max_prime_power, budget.max_monic_degree);
        Box::new(ModularRun::new(Box::new(schedule), leaf, budget))
    }
}

/// Procedures by name, in registration order.
#[derive(Clone)]
pub struct ProcedureRegistry {
    entries: Vec<Arc<dyn Procedure>>,
}

impl Default for ProcedureRegistry {
    fn default() -> Self {
        let mut r = ProcedureRegistry::empty();
        r.register(Arc::new(Enumerate));
        r.register(Arc::new(PrimePowerModuli));
        r.register(Arc::new(MonicModuli));
        r
    }
}

impl ProcedureRegistry {
    pub fn empty() -> Self {
        ProcedureRegistry { entries: Vec::new() }
    }

    /// Adds or replaces the procedure with the same name.
    pub fn register(&mut self, p: Arc<dyn Procedure>) {
        match self.entries.iter().position(|e| e.name() == p.name()) {
            Some(i) => self.entries[i] = p,
            None => self.entries.push(p),
        }
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Procedure>> {
        self.entries.iter().find(|e| e.name() == name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn entries(&self) -> &[Arc<dyn Procedure>] {
        &self.entries
    }

    /// Applicable procedures, restricted to `names` when given.
    pub fn select(&self, spec: &GroupSpec, names: Option<&[String]>) -> Result<Vec<Arc<dyn Procedure>>, String> {
        match names {
            None => Ok(self.entries.iter().filter(|e| e.applies(spec)).cloned().collect()),
            Some(list) => {
                let mut out = Vec::new();
                for n in list {
                    let p = self.get(n).ok_or_else(|| format!("unknown procedure `{n}`"))?;
                    if p.applies(spec) {
                        out.push(p);
                    }
                }
                Ok(out)
            }
        }
    }
}
