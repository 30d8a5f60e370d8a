//! Unique MaxDegree in exactly nine B-CONGEST rounds.
//!
//! 1. Send `(deg, id)`; compute the largest degree `D` in the closed
//!    neighborhood and its multiplicity `M`.
//! 2. Send `(D, M)`, plus the holder's id when `M = 1`. A node is
//!    ambitious when every neighbor reports it as the unique holder of `D`,
//!    i.e. it is the unique maximum of its 2-neighborhood.
//! 3. Ambitious nodes send a claim with their id (and hear it themselves).
//! 4. Claims heard in round 3 are forwarded. Nodes that have heard no
//!    claim, or two different ones, become concerned.
//! 5. Concerned nodes send an alarm, others forward round-4 claims. Two
//!    different claims in rounds 3-5 make a node concerned.
//! 6. to 9. Concerned nodes send alarms; hearing one makes a node concerned.
//!
//! Final state: failed if concerned, else yes iff ambitious.

use std::marker::PhantomData;

use serde::Serialize;

use super::ids::{EngineIds, IdProtocol};
use crate::error::Result;
use crate::graph::Graph;
use crate::labeling::NodeId;
use crate::sim::{run, Engine, Init, LocalInput, ModelKind, NodeOutput, Protocol, RunOptions, Transcript, Wire, WireWriter};

pub const MAXDEGREE_ROUNDS: u32 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UmdMsg<Id> {
    Hello { degree: u32, id: Id },
    Summary { max: u32, count: u32, holder: Option<Id> },
    Claim(Id),
    Alarm,
}

impl<Id: Wire> Wire for UmdMsg<Id> {
    fn encode(&self, w: &mut WireWriter) {
        match self {
            UmdMsg::Hello { degree, id } => {
                w.tag(0);
                w.node_int(*degree as u64);
                id.encode(w);
            }
            UmdMsg::Summary { max, count, holder } => {
                w.tag(1);
                w.node_int(*max as u64);
                w.node_int(*count as u64);
                w.flag(holder.is_some());
                if let Some(h) = holder {
                    h.encode(w);
                }
            }
            UmdMsg::Claim(id) => {
                w.tag(2);
                id.encode(w);
            }
            UmdMsg::Alarm => w.tag(3),
        }
    }
}

#[derive(Debug, Clone)]
pub struct UmdState<Id> {
    round: u32,
    me: Id,
    degree: u32,
    max: u32,
    count: u32,
    holder: Option<Id>,
    ambitious: bool,
    claims: Vec<Id>,
    forward: Option<Id>,
    concerned: bool,
}

impl<Id: Wire> Wire for UmdState<Id> {
    fn encode(&self, w: &mut WireWriter) {
        w.uint(self.round as u64);
        self.me.encode(w);
        w.node_int(self.degree as u64);
        w.node_int(self.max as u64);
        w.node_int(self.count as u64);
        w.flag(self.holder.is_some());
        if let Some(h) = &self.holder {
            h.encode(w);
        }
        w.flag(self.ambitious);
        w.uint(self.claims.len() as u64);
        for c in &self.claims {
            c.encode(w);
        }
        w.flag(self.forward.is_some());
        if let Some(f) = &self.forward {
            f.encode(w);
        }
        w.flag(self.concerned);
    }
}

impl<Id: Ord + Clone> UmdState<Id> {
    fn hear_claims<'a>(&mut self, claims: impl Iterator<Item = &'a Id>)
    where
        Id: 'a,
    {
        let mut heard: Vec<Id> = claims.cloned().collect();
        heard.sort();
        heard.dedup();
        self.forward = heard.first().cloned();
        self.claims.extend(heard);
        self.claims.sort();
        self.claims.dedup();
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct UniqueMaxDegree<Id>(PhantomData<Id>);

impl<Id> UniqueMaxDegree<Id> {
    pub fn new() -> Self {
        UniqueMaxDegree(PhantomData)
    }
}

impl<Id: NodeId> Protocol for UniqueMaxDegree<Id> {
    type State = UmdState<Id>;
    type Msg = UmdMsg<Id>;
    type Output = Verdict;

    fn send(&self, s: &UmdState<Id>) -> Option<UmdMsg<Id>> {
        match s.round + 1 {
            1 => Some(UmdMsg::Hello { degree: s.degree, id: s.me.clone() }),
            2 => Some(UmdMsg::Summary { max: s.max, count: s.count, holder: s.holder.clone() }),
            3 => s.ambitious.then(|| UmdMsg::Claim(s.me.clone())),
            4 => s.forward.clone().map(UmdMsg::Claim),
            5 if s.concerned => Some(UmdMsg::Alarm),
            5 => s.forward.clone().map(UmdMsg::Claim),
            _ => s.concerned.then_some(UmdMsg::Alarm),
        }
    }

    fn receive(&self, s: &mut UmdState<Id>, inbox: &[&UmdMsg<Id>]) -> Option<NodeOutput<Verdict>> {
        s.round += 1;
        let claims = inbox.iter().filter_map(|m| match m {
            UmdMsg::Claim(id) => Some(id),
            _ => None,
        });
        let alarmed = inbox.iter().any(|m| matches!(m, UmdMsg::Alarm));
        match s.round {
            1 => {
                let mut best = (s.degree, 1u32, Some(s.me.clone()));
                for m in inbox {
                    if let UmdMsg::Hello { degree, id } = m {
                        if *degree > best.0 {
                            best = (*degree, 1, Some(id.clone()));
                        } else if *degree == best.0 {
                            best.1 += 1;
                        }
                    }
                }
                s.max = best.0;
                s.count = best.1;
                s.holder = if best.1 == 1 { best.2 } else { None };
            }
            2 => {
                s.ambitious = inbox.iter().all(|m| match m {
                    UmdMsg::Summary { max, count, holder } => {
                        s.degree > *max || (s.degree == *max && *count == 1 && holder.as_ref() == Some(&s.me))
                    }
                    _ => true,
                });
            }
            3 => {
                let own = s.ambitious.then(|| s.me.clone());
                s.hear_claims(claims.chain(own.as_ref()));
            }
            4 => {
                s.hear_claims(claims);
                s.concerned = s.claims.len() != 1;
            }
            5 => {
                s.hear_claims(claims);
                s.concerned |= alarmed || s.claims.len() >= 2;
            }
            _ => s.concerned |= alarmed,
        }
        (s.round == MAXDEGREE_ROUNDS).then_some(match (s.concerned, s.ambitious) {
            (true, _) => NodeOutput::Failed,
            (false, true) => NodeOutput::Label(Verdict::Yes),
            (false, false) => NodeOutput::Label(Verdict::No),
        })
    }
}

impl<Id: NodeId> IdProtocol for UniqueMaxDegree<Id> {
    type Id = Id;

    fn start(&self, input: &LocalInput, id: Id) -> Init<UmdState<Id>, Verdict> {
        Init::Run(UmdState {
            round: 0,
            me: id,
            degree: input.degree as u32,
            max: 0,
            count: 0,
            holder: None,
            ambitious: false,
            claims: Vec::new(),
            forward: None,
            concerned: false,
        })
    }
}

fn options(ids: &[u32]) -> RunOptions {
    RunOptions::default().with_ids(ids.to_vec()).with_max_rounds(MAXDEGREE_ROUNDS as usize)
}

pub fn unique_maxdegree(g: &Graph, ids: &[u32]) -> Result<Transcript<Verdict>> {
    run(g, &EngineIds(UniqueMaxDegree::new()), ModelKind::BCongest, &options(ids))
}

/// Same as [`unique_maxdegree`], reusing `engine` scratch space.
pub fn unique_maxdegree_with(engine: &mut Engine, g: &Graph, ids: &[u32]) -> Result<Transcript<Verdict>> {
    engine.run(g, &EngineIds(UniqueMaxDegree::new()), ModelKind::BCongest, &options(ids))
}

/// The correct labeling: yes at the unique maximum-degree node, if any.
pub fn maxdegree_truth(g: &Graph) -> Vec<Verdict> {
    let d = g.max_degree();
    let holders: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == d).collect();
    (0..g.n()).map(|v| if holders == [v] { Verdict::Yes } else { Verdict::No }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{appc_paths, random_ids};
    use crate::sim::{check_message_budget, Outcome};

    #[test]
    fn star_center_says_yes() {
        let g = Graph::star(4);
        for seed in 0..5 {
            let t = unique_maxdegree(&g, &random_ids(5, seed)).unwrap();
            assert_eq!(t.rounds, 9);
            assert_eq!(t.outcome(), Outcome::Solved(maxdegree_truth(&g)));
            assert!(check_message_budget(&t, t.budget.unwrap()));
        }
    }

    #[test]
    fn long_tailed_graph_fails_everywhere() {
        let (g, _) = appc_paths(20);
        let t = unique_maxdegree(&g, &random_ids(20, 1)).unwrap();
        assert_eq!(t.outcome(), Outcome::AllFailed);
        assert_eq!(t.rounds, 9);
    }

    #[test]
    fn five_cycle_fails() {
        let t = unique_maxdegree(&Graph::cycle(5), &[3, 1, 4, 5, 2]).unwrap();
        assert_eq!(t.outcome(), Outcome::AllFailed);
    }

    #[test]
    fn single_node_says_yes() {
        let t = unique_maxdegree(&Graph::empty(1), &[1]).unwrap();
        assert_eq!(t.outcome(), Outcome::Solved(vec![Verdict::Yes]));
        assert_eq!(t.rounds, 9);
    }
}
