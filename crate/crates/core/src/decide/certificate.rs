//! Refutation certificates and their replay.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::modular::{check_chain, ModRecord, ModulusDesc};
use super::pipeline::{build_root, shift_equations, AnyRoot, Structure};
use crate::frontend::EquationSystem;
use crate::groups::GroupSpec;
use crate::intlinalg::{system_matrix, AffineLattice, LinearInfeasibility};

pub const CERTIFICATE_FORMAT: &str = "metaeq-certificate/v1";

/// Residue tables larger than this are not replayed.
const VERIFY_RESIDUE_CAP: u64 = 1 << 20;
const VERIFY_SURVIVOR_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmptyStage {
    /// No consistent triangular branch.
    Triangular,
    /// All residual exponential systems are unsolvable.
    Residual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Proof {
    /// The shift equations have no integer solution; `row` combines them.
    LinearInfeasible { row: LinearInfeasibility },
    EmptyDisjunction { stage: EmptyStage },
    /// `branch` is a lattice of shift parameters covering every solution of
    /// the branch; `chain` lists residue tables whose intersection is empty.
    ModulusObstruction { branch: AffineLattice, chain: Vec<ModRecord> },
    /// A modulus obstruction using a single component of `A`.
    ComponentObstruction { component: usize, inner: Box<Proof> },
    /// One obstruction per leaf of the branch structure, in order.
    BranchCover { branches: Vec<Proof> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub system_hash: String,
    pub proof: Proof,
}

impl Certificate {
    pub fn new(system: &EquationSystem, proof: Proof) -> Self {
        Certificate { format: CERTIFICATE_FORMAT.into(), system_hash: system.hash(), proof }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error("unsupported certificate format `{0}`")]
    Format(String),
    #[error("certificate is for system {found}, not {expected}")]
    HashMismatch { expected: String, found: String },
    #[error("certificate does not match the recomputed {0}")]
    Mismatch(&'static str),
    #[error("residue chain does not replay to an empty set")]
    Chain,
}

/// Obstruction proof for `chain` on `branch`, tagged by component when
/// only one component of a wreath product is involved.
pub fn obstruction(spec: &GroupSpec, branch: AffineLattice, chain: Vec<ModRecord>) -> Proof {
    let comps: Vec<usize> = chain
        .iter()
        .filter_map(|r| match r.modulus {
            ModulusDesc::Monic { component, .. } => Some(component),
            ModulusDesc::PrimePower { .. } => None,
        })
        .collect();
    let inner = Proof::ModulusObstruction { branch, chain };
    match (spec, comps.first()) {
        (GroupSpec::Wreath { .. }, Some(&c)) if comps.iter().all(|&x| x == c) => {
            Proof::ComponentObstruction { component: c, inner: Box::new(inner) }
        }
        _ => inner,
    }
}

/// Replays `cert` against `system`.
pub fn verify_certificate(cert: &Certificate, system: &EquationSystem) -> Result<(), CertError> {
    if cert.format != CERTIFICATE_FORMAT {
        return Err(CertError::Format(cert.format.clone()));
    }
    let expected = system.hash();
    if cert.system_hash != expected {
        return Err(CertError::HashMismatch { expected, found: cert.system_hash.clone() });
    }
    if let Proof::LinearInfeasible { row } = &cert.proof {
        let recomputed = match build_root(system) {
            Err(inf) => inf,
            Ok(_) => return Err(CertError::Mismatch("shift equations")),
        };
        let (forms, vars) = shift_equations(system);
        let (a, b) = system_matrix(&forms, &vars);
        if *row != recomputed || !row.check(&a, &b) {
            return Err(CertError::Mismatch("linear obstruction"));
        }
        return Ok(());
    }
    let root = build_root(system).map_err(|_| CertError::Mismatch("shift equations"))?;
    match &cert.proof {
        Proof::LinearInfeasible { .. } => unreachable!("handled above"),
        Proof::EmptyDisjunction { stage } => {
            let want = match stage {
                EmptyStage::Triangular => Structure::EmptyTriangular,
                EmptyStage::Residual => Structure::EmptyResidual,
            };
            if root.structure() != want {
                return Err(CertError::Mismatch("branch structure"));
            }
            Ok(())
        }
        Proof::BranchCover { branches } => {
            let Structure::Exact { leaves, .. } = root.structure() else {
                return Err(CertError::Mismatch("branch structure"));
            };
            if leaves.len() != branches.len() {
                return Err(CertError::Mismatch("branch structure"));
            }
            for (lat, proof) in leaves.iter().zip(branches) {
                verify_leaf(&root, &system.spec, lat, proof)?;
            }
            Ok(())
        }
        leaf_proof => verify_leaf(&root, &system.spec, &root.full_lattice(), leaf_proof),
    }
}

fn verify_leaf(root: &AnyRoot, spec: &GroupSpec, lattice: &AffineLattice, proof: &Proof) -> Result<(), CertError> {
    match proof {
        Proof::ModulusObstruction { branch, chain } => {
            if branch != lattice {
                return Err(CertError::Mismatch("branch lattice"));
            }
            let leaf = root.leaf(lattice);
            if !check_chain(&leaf, chain, VERIFY_RESIDUE_CAP, VERIFY_SURVIVOR_CAP) {
                return Err(CertError::Chain);
            }
            Ok(())
        }
        Proof::ComponentObstruction { component, inner } => {
            let GroupSpec::Wreath { .. } = spec else {
                return Err(CertError::Mismatch("group family"));
            };
            let Proof::ModulusObstruction { chain, .. } = inner.as_ref() else {
                return Err(CertError::Mismatch("component obstruction"));
            };
            let same = chain
                .iter()
                .all(|r| matches!(r.modulus, ModulusDesc::Monic { component: c, .. } if c == *component));
            if !same {
                return Err(CertError::Mismatch("component obstruction"));
            }
            verify_leaf(root, spec, lattice, inner)
        }
        _ => Err(CertError::Mismatch("branch proof")),
    }
}
