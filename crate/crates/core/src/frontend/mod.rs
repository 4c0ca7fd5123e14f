//! Text input: group headers and equation systems.
//!
//! ```text
//! # comment
//! group BS 2
//! X^-1 a X = a^4
//! ```
//!
//! Identifiers starting with an uppercase letter are variables, lowercase
//! ones are generators. `1` is the empty word.

mod parse;

pub use parse::{parse_input, parse_spec, parse_system};

use std::fmt;

use thiserror::Error;

use crate::groups::GroupSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct FrontendError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Gen(String),
    Var(String),
}

impl Symbol {
    pub fn name(&self) -> &str {
        match self {
            Symbol::Gen(n) | Symbol::Var(n) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: Symbol,
    pub exp: i64,
}

/// A word over generators and variables. Adjacent letters are not merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn gen(name: &str, exp: i64) -> Letter {
        Letter { symbol: Symbol::Gen(name.to_string()), exp }
    }

    pub fn var(name: &str, exp: i64) -> Letter {
        Letter { symbol: Symbol::Var(name.to_string()), exp }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| Letter { symbol: l.symbol.clone(), exp: -l.exp }).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().filter_map(|l| match &l.symbol {
            Symbol::Var(v) => Some(v.as_str()),
            Symbol::Gen(_) => None,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.symbol.name())?;
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Equation {
    /// `lhs * rhs^-1`, the word that must evaluate to the identity.
    pub fn relator(&self) -> Word {
        self.lhs.concat(&self.rhs.inverse())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquationSystem {
    pub spec: GroupSpec,
    pub equations: Vec<Equation>,
    /// Variables in order of first appearance.
    pub variables: Vec<String>,
}

impl EquationSystem {
    pub fn new(spec: GroupSpec, equations: Vec<Equation>) -> Self {
        let mut variables: Vec<String> = Vec::new();
        for eq in &equations {
            for v in eq.lhs.variables().chain(eq.rhs.variables()) {
                if !variables.iter().any(|x| x == v) {
                    variables.push(v.to_string());
                }
            }
        }
        EquationSystem { spec, equations, variables }
    }

    pub fn relators(&self) -> Vec<Word> {
        self.equations.iter().map(Equation::relator).collect()
    }

    /// Canonical text; parsing it yields an identical system.
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.spec);
        for eq in &self.equations {
            out.push_str(&format!("{} = {}\n", eq.lhs, eq.rhs));
        }
        out
    }

    /// SHA-256 of the canonical rendering, hex encoded.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.render().as_bytes()))
    }
}
