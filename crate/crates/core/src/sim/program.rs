use std::fmt::Debug;

use serde::{Serialize, Serializer};

use super::wire::Wire;

/// Local input available to a node at start-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalInput {
    pub degree: usize,
    /// Node count, when the run makes it known.
    pub n: Option<usize>,
    /// Unique identifier in `1..=n` under identifier models.
    pub id: Option<u32>,
}

/// Final label of a node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeOutput<O> {
    Label(O),
    Failed,
}

impl<O> NodeOutput<O> {
    pub fn label(&self) -> Option<&O> {
        match self {
            NodeOutput::Label(o) => Some(o),
            NodeOutput::Failed => None,
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, NodeOutput::Failed)
    }

    pub fn map<T>(self, f: impl FnOnce(O) -> T) -> NodeOutput<T> {
        match self {
            NodeOutput::Label(o) => NodeOutput::Label(f(o)),
            NodeOutput::Failed => NodeOutput::Failed,
        }
    }
}

impl<O: Serialize> Serialize for NodeOutput<O> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            NodeOutput::Label(o) => o.serialize(s),
            NodeOutput::Failed => s.serialize_str("failed"),
        }
    }
}

/// Result of initialization.
pub enum Init<S, O> {
    Run(S),
    Halt(NodeOutput<O>),
}

/// Per-round behavior of a node. A round is: every running node calls
/// `send`, inboxes are formed from neighbors' messages, then every running
/// node calls `receive`. Returning `Some` from `receive` halts the node;
/// it sends nothing afterwards. Round counting, if needed, lives in the
/// state.
pub trait Protocol {
    type State: Wire;
    type Msg: Wire;
    type Output: Clone + Debug + PartialEq + Serialize;

    fn send(&self, state: &Self::State) -> Option<Self::Msg>;

    /// `inbox` is sorted by canonical encoding; under set models equal
    /// messages appear once.
    fn receive(&self, state: &mut Self::State, inbox: &[&Self::Msg]) -> Option<NodeOutput<Self::Output>>;
}

/// A protocol that starts from the engine-supplied local input.
pub trait NodeProgram: Protocol {
    fn init(&self, input: &LocalInput) -> Init<Self::State, Self::Output>;
}
