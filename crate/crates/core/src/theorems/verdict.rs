use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::Which;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "L2.4")]
    L2_4,
    #[serde(rename = "C2.2")]
    C2_2,
    #[serde(rename = "C2.3")]
    C2_3,
    #[serde(rename = "T3.1")]
    T3_1,
    #[serde(rename = "C3.2")]
    C3_2,
    #[serde(rename = "T3.3")]
    T3_3,
    #[serde(rename = "C3.4")]
    C3_4,
    #[serde(rename = "C3.5")]
    C3_5,
    #[serde(rename = "T3.6")]
    T3_6,
    #[serde(rename = "T4.1")]
    T4_1,
    #[serde(rename = "T4.2")]
    T4_2,
    #[serde(rename = "T4.3")]
    T4_3,
}

/// The graph operation a theorem is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operation {
    /// Edge subdivision.
    I,
    /// Vertex identification.
    II,
    /// Edge transfer.
    III,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::L2_4,
        TheoremId::C2_2,
        TheoremId::C2_3,
        TheoremId::T3_1,
        TheoremId::C3_2,
        TheoremId::T3_3,
        TheoremId::C3_4,
        TheoremId::C3_5,
        TheoremId::T3_6,
        TheoremId::T4_1,
        TheoremId::T4_2,
        TheoremId::T4_3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::L2_4 => "L2.4",
            TheoremId::C2_2 => "C2.2",
            TheoremId::C2_3 => "C2.3",
            TheoremId::T3_1 => "T3.1",
            TheoremId::C3_2 => "C3.2",
            TheoremId::T3_3 => "T3.3",
            TheoremId::C3_4 => "C3.4",
            TheoremId::C3_5 => "C3.5",
            TheoremId::T3_6 => "T3.6",
            TheoremId::T4_1 => "T4.1",
            TheoremId::T4_2 => "T4.2",
            TheoremId::T4_3 => "T4.3",
        }
    }

    pub fn operation(self) -> Option<Operation> {
        match self {
            TheoremId::T3_1 | TheoremId::C3_2 | TheoremId::T4_1 => Some(Operation::I),
            TheoremId::T3_3 | TheoremId::C3_4 | TheoremId::C3_5 | TheoremId::T4_2 => Some(Operation::II),
            TheoremId::T3_6 | TheoremId::T4_3 => Some(Operation::III),
            TheoremId::L2_4 | TheoremId::C2_2 | TheoremId::C2_3 => None,
        }
    }

    /// Which end of the spectrum the theorem speaks about.
    pub fn target(self) -> Which {
        match self {
            TheoremId::T4_1 | TheoremId::T4_2 | TheoremId::T4_3 => Which::Largest,
            _ => Which::SecondSmallest,
        }
    }

    /// Theorems whose conclusion is asserted only under an eigenfunction
    /// hypothesis.
    pub fn is_conditional(self) -> bool {
        matches!(
            self,
            TheoremId::C2_2 | TheoremId::T3_6 | TheoremId::T4_1 | TheoremId::T4_2 | TheoremId::T4_3
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == t)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PreconditionState {
    Holds,
    Fails,
    /// The eigenspace has dimension > 1 and its basis functions disagree.
    Ambiguous,
    Unconditional,
}

impl PreconditionState {
    /// Folds per-basis-function predicate outcomes.
    pub fn from_basis(satisfied: impl IntoIterator<Item = bool>) -> Self {
        let (mut any, mut all) = (false, true);
        for s in satisfied {
            any |= s;
            all &= s;
        }
        match (any, all) {
            (true, true) => PreconditionState::Holds,
            (false, _) => PreconditionState::Fails,
            (true, false) => PreconditionState::Ambiguous,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PreconditionState::Holds => "holds",
            PreconditionState::Fails => "fails",
            PreconditionState::Ambiguous => "ambiguous",
            PreconditionState::Unconditional => "unconditional",
        }
    }
}

impl FromStr for PreconditionState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "holds" => Ok(PreconditionState::Holds),
            "fails" => Ok(PreconditionState::Fails),
            "ambiguous" => Ok(PreconditionState::Ambiguous),
            "unconditional" => Ok(PreconditionState::Unconditional),
            _ => Err(Error::InvalidConfig(format!("unknown precondition state {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }

    /// Whether `lhs REL rhs` holds up to `tol`.
    pub fn holds(self, lhs: f64, rhs: f64, tol: f64) -> bool {
        match self {
            Relation::Le => lhs <= rhs + tol,
            Relation::Ge => lhs + tol >= rhs,
            Relation::Eq => (lhs - rhs).abs() <= tol,
        }
    }

    /// Margin by which the strict form of the relation holds.
    pub fn gap(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Relation::Le => rhs - lhs,
            Relation::Ge => lhs - rhs,
            Relation::Eq => -(lhs - rhs).abs(),
        }
    }
}

/// Observed order of `lhs` against `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Less,
    Equal,
    Greater,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Less, Direction::Equal, Direction::Greater];

    pub fn classify(lhs: f64, rhs: f64, eq_tol: f64) -> Self {
        if (lhs - rhs).abs() <= eq_tol {
            Direction::Equal
        } else if lhs < rhs {
            Direction::Less
        } else {
            Direction::Greater
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Less => "less",
            Direction::Equal => "equal",
            Direction::Greater => "greater",
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "less" | "lt" | "<" => Ok(Direction::Less),
            "equal" | "eq" | "=" => Ok(Direction::Equal),
            "greater" | "gt" | ">" => Ok(Direction::Greater),
            _ => Err(Error::InvalidConfig(format!("unknown direction {s:?}"))),
        }
    }
}

/// Numeric thresholds shared by every checker.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute slack on eigenvalue inequalities.
    pub eigen: f64,
    /// A strict inequality needs a gap larger than this; also the width of
    /// the "equal" bucket in case tallies.
    pub strict_gap: f64,
    /// `|f(x)|` at or below this counts as zero.
    pub vertex_zero: f64,
    /// `|f(u) − f(v)| ≤ equal_values · ‖f‖∞` counts as `f(u) = f(v)`.
    pub equal_values: f64,
    /// `f(u) f(v) ≥ −sign_product` counts as non-negative.
    pub sign_product: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eigen: 1e-8,
            strict_gap: 1e-6,
            vertex_zero: 1e-7,
            equal_values: 1e-7,
            sign_product: 1e-14,
        }
    }
}

/// Predicate outcome for one basis function of the relevant eigenspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub index: usize,
    /// The eigenfunction values the predicate looked at, in parameter order.
    pub values: Vec<f64>,
    pub satisfied: bool,
}

/// Outcome of checking one theorem on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: TheoremId,
    pub precondition: PreconditionState,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub strict_expected: bool,
    pub pass: bool,
    pub tolerance: f64,
    pub graph6: String,
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<BasisReport>,
}

impl Verdict {
    pub fn direction(&self, eq_tol: f64) -> Direction {
        Direction::classify(self.lhs, self.rhs, eq_tol)
    }

    /// The conclusion was not asserted because the hypothesis failed.
    pub fn is_vacuous(&self) -> bool {
        self.precondition == PreconditionState::Fails
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("verdicts always serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::InvalidConfig(format!("bad verdict JSON: {e}")))
    }
}

/// The decision part of a verdict, without the instance bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Judgement {
    pub precondition: PreconditionState,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub strict_expected: bool,
    pub pass: bool,
}

impl Judgement {
    pub fn new(
        precondition: PreconditionState,
        lhs: f64,
        rhs: f64,
        relation: Relation,
        strict_expected: bool,
        tol: &Tolerances,
    ) -> Self {
        let asserted = precondition != PreconditionState::Fails;
        let holds = relation.holds(lhs, rhs, tol.eigen);
        let strict_ok = !strict_expected || relation.gap(lhs, rhs) > tol.strict_gap;
        Judgement {
            precondition,
            lhs,
            rhs,
            relation,
            strict_expected,
            pass: !asserted || (holds && strict_ok),
        }
    }

    pub fn direction(&self, eq_tol: f64) -> Direction {
        Direction::classify(self.lhs, self.rhs, eq_tol)
    }
}
