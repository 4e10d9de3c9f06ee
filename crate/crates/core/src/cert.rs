use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::anchors;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub anchor: &'static str,
    pub ok: bool,
    pub witness: Option<String>,
}

impl Condition {
    pub fn new(name: &'static str, ok: bool) -> Self {
        Self { name, anchor: anchors::statement(name), ok, witness: None }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        self.witness = witness;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// How a certificate was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Only closed-form predicates were evaluated.
    Predicate,
    /// Every pair of elements was tested.
    Exhaustive { pairs: u64 },
    /// Every pair of prime-field basis elements was tested; complete because
    /// both sides are biadditive.
    BasisPairs { pairs: u64 },
    Sampled { count: u64, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Predicate => write!(f, "predicate"),
            Mode::Exhaustive { pairs } => write!(f, "exhaustive ({pairs} pairs)"),
            Mode::BasisPairs { pairs } => write!(f, "basis-pairs ({pairs} pairs)"),
            Mode::Sampled { count, seed } => write!(f, "sampled ({count} pairs, seed {seed:#x})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub conditions: Vec<Condition>,
    pub verdict: Verdict,
    pub mode: Mode,
    /// First violating input found by a direct check, if any.
    pub witness: Option<String>,
    /// Recorded facts that do not enter the verdict.
    pub flags: Vec<(&'static str, bool)>,
}

impl Certificate {
    pub fn from_conditions(conditions: Vec<Condition>, mode: Mode) -> Self {
        let witness = conditions.iter().find(|c| !c.ok).and_then(|c| c.witness.clone());
        let verdict = match conditions.iter().find(|c| !c.ok) {
            None => Verdict::Valid,
            Some(c) => Verdict::Invalid(String::from(c.name)),
        };
        Self { conditions, verdict, mode, witness, flags: Vec::new() }
    }

    pub fn is_valid(&self) -> bool {
        self.verdict.is_valid()
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// Combine two certificates; the mode of `other` wins unless it is a
    /// pure predicate.
    pub fn merge(mut self, other: Certificate) -> Self {
        self.conditions.extend(other.conditions);
        self.flags.extend(other.flags);
        let mode = if other.mode == Mode::Predicate { self.mode } else { other.mode };
        let flags = self.flags;
        let mut out = Self::from_conditions(self.conditions, mode);
        out.flags = flags;
        out
    }
}
