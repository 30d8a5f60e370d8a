use serde::Serialize;

use super::model::ModelKind;
use super::program::NodeOutput;

/// How much per-round detail a run keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceLevel {
    #[default]
    Summary,
    /// State digests per node and round.
    States,
    /// State digests plus sent and received messages.
    Full,
}

/// One node in one round; round 0 is the state after `init`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub node: usize,
    pub halted: bool,
    /// Hex SHA-256 of the canonical state; absent for nodes that halted in
    /// `init`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sent: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sent_bits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub received: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetViolation {
    pub round: usize,
    pub node: usize,
    pub bits: u64,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transcript<O> {
    pub model: ModelKind,
    pub n: usize,
    /// Largest halting round.
    pub rounds: usize,
    pub max_message_bits: u64,
    pub messages_sent: u64,
    /// `None` for nodes still running when the run stopped.
    pub outputs: Vec<Option<NodeOutput<O>>>,
    pub halt_rounds: Vec<Option<usize>>,
    pub timed_out: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_violation: Option<BudgetViolation>,
    /// Ordered by round, then node; empty at `TraceLevel::Summary`.
    pub per_round: Vec<RoundRecord>,
}

/// Terminal classification of a run. Validity of a solved labeling is the
/// caller's business.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome<O> {
    Solved(Vec<O>),
    AllFailed,
    Invalid(String),
}

impl<O> Outcome<O> {
    pub fn is_solved(&self) -> bool {
        matches!(self, Outcome::Solved(_))
    }

    pub fn is_all_failed(&self) -> bool {
        matches!(self, Outcome::AllFailed)
    }

    pub fn solved(&self) -> Option<&[O]> {
        match self {
            Outcome::Solved(v) => Some(v),
            _ => None,
        }
    }
}

/// `Solved` when every node halted with a label, `AllFailed` when every
/// node failed, `Invalid` otherwise.
pub fn outcome_from_outputs<O: Clone>(outputs: &[Option<NodeOutput<O>>]) -> Outcome<O> {
    if outputs.iter().any(Option::is_none) {
        return Outcome::Invalid("unhalted nodes".into());
    }
    let failed = outputs.iter().filter(|o| matches!(o, Some(NodeOutput::Failed))).count();
    if failed == 0 {
        Outcome::Solved(outputs.iter().map(|o| o.as_ref().unwrap().label().unwrap().clone()).collect())
    } else if failed == outputs.len() {
        Outcome::AllFailed
    } else {
        Outcome::Invalid("partial failure".into())
    }
}

impl<O: Clone> Transcript<O> {
    pub fn outcome(&self) -> Outcome<O> {
        if self.timed_out {
            return Outcome::Invalid("timeout".into());
        }
        if self.budget_violation.is_some() {
            return Outcome::Invalid("message budget exceeded".into());
        }
        outcome_from_outputs(&self.outputs)
    }

    pub fn completed(&self) -> bool {
        self.outputs.iter().all(Option::is_some)
    }

    /// Digest of `node`'s state after `round`, if recorded.
    pub fn state_digest(&self, round: usize, node: usize) -> Option<&str> {
        self.per_round.get(round * self.n + node).and_then(|r| r.state_digest.as_deref())
    }

    /// Number of rounds for which states were recorded, counting round 0.
    pub fn recorded_rounds(&self) -> usize {
        self.per_round.len().checked_div(self.n).unwrap_or(0)
    }
}

impl<O: Serialize> Transcript<O> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("transcript serializes")
    }
}

pub fn check_message_budget<O>(t: &Transcript<O>, bits_per_message: u64) -> bool {
    t.max_message_bits <= bits_per_message
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_shapes() {
        let f = || Some(NodeOutput::<&str>::Failed);
        let l = |s| Some(NodeOutput::Label(s));
        assert_eq!(outcome_from_outputs(&[f(), f()]), Outcome::AllFailed);
        assert_eq!(outcome_from_outputs(&[l("yes"), l("no")]), Outcome::Solved(vec!["yes", "no"]));
        assert_eq!(outcome_from_outputs(&[l("yes"), f()]), Outcome::Invalid("partial failure".into()));
        assert!(matches!(outcome_from_outputs(&[l("yes"), None]), Outcome::Invalid(_)));
    }
}
