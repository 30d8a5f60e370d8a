//! One-round labels: the largest distinct neighbor degrees, descending.

use super::ac::{distinct_neighbor_degrees, AcProgram, DegreeMsg, OneRoundState};
use crate::error::{input, Result};
use crate::graph::Graph;
use crate::sim::{Init, LocalInput, NodeOutput, NodeProgram, Protocol};

pub type BesLabel = Vec<u64>;

/// `ceil(3 log2 n)`.
pub fn bes_m(n: usize) -> usize {
    (3.0 * (n as f64).log2()).ceil() as usize
}

fn top(mut ascending: Vec<u64>, m: usize) -> BesLabel {
    ascending.reverse();
    ascending.truncate(m);
    ascending
}

pub fn bes_one_round(g: &Graph) -> Result<Vec<BesLabel>> {
    if g.n() < 2 {
        return input("one-round labels need n >= 2");
    }
    let m = bes_m(g.n());
    Ok((0..g.n()).map(|v| top(distinct_neighbor_degrees(g, v), m)).collect())
}

/// The same labels as a one-round program; nodes must be told `n` and fail
/// otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct BesProgram;

impl Protocol for BesProgram {
    type State = OneRoundState;
    type Msg = DegreeMsg;
    type Output = BesLabel;

    fn send(&self, s: &OneRoundState) -> Option<DegreeMsg> {
        Some(DegreeMsg(s.degree))
    }

    fn receive(&self, s: &mut OneRoundState, inbox: &[&DegreeMsg]) -> Option<NodeOutput<BesLabel>> {
        let m = bes_m(s.n.expect("checked in init"));
        Some(NodeOutput::Label(top(AcProgram::degrees(inbox).collect(), m)))
    }
}

impl NodeProgram for BesProgram {
    fn init(&self, input: &LocalInput) -> Init<OneRoundState, BesLabel> {
        match input.n {
            Some(n) if n >= 2 => Init::Run(OneRoundState { degree: input.degree as u64, n: Some(n) }),
            _ => Init::Halt(NodeOutput::Failed),
        }
    }
}
