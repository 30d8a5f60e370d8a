//! The three-round triangle heuristic: every node asks its two
//! smallest-identifier neighbors whether they are adjacent.
//!
//! Round 1 sends identifiers. Round 2 sends `(y, z, x)` from `x` with `y < z`
//! its two smallest neighbors; `y` finds the triangle if it knows `z` as a
//! neighbor. Round 3 tells the other two corners. Each node outputs the
//! least triangle it lies on, if any.

use std::marker::PhantomData;

use super::ids::{EngineIds, IdProtocol};
use super::triangle::TriangleLabel;
use crate::error::Result;
use crate::graph::Graph;
use crate::labeling::NodeId;
use crate::sim::{run, Init, LocalInput, ModelKind, NodeOutput, Protocol, RunOptions, Transcript, Wire, WireWriter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NaiveMsg<Id> {
    Hello(Id),
    Ask(Id, Id, Id),
    Found([Id; 3]),
}

impl<Id: Wire> Wire for NaiveMsg<Id> {
    fn encode(&self, w: &mut WireWriter) {
        match self {
            NaiveMsg::Hello(x) => {
                w.tag(0);
                x.encode(w);
            }
            NaiveMsg::Ask(y, z, x) => {
                w.tag(1);
                y.encode(w);
                z.encode(w);
                x.encode(w);
            }
            NaiveMsg::Found(t) => {
                w.tag(2);
                for x in t {
                    x.encode(w);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct NaiveState<Id> {
    round: u32,
    me: Id,
    neighbors: Vec<Id>,
    found: Option<[Id; 3]>,
}

impl<Id: Wire> Wire for NaiveState<Id> {
    fn encode(&self, w: &mut WireWriter) {
        w.uint(self.round as u64);
        self.me.encode(w);
        w.uint(self.neighbors.len() as u64);
        for x in &self.neighbors {
            x.encode(w);
        }
        w.flag(self.found.is_some());
        if let Some(t) = &self.found {
            for x in t {
                x.encode(w);
            }
        }
    }
}

impl<Id: Ord + Clone> NaiveState<Id> {
    fn offer(&mut self, t: [Id; 3]) {
        if self.found.as_ref().is_none_or(|f| t < *f) {
            self.found = Some(t);
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NaiveTriangle<Id>(PhantomData<Id>);

impl<Id> NaiveTriangle<Id> {
    pub fn new() -> Self {
        NaiveTriangle(PhantomData)
    }
}

impl<Id: NodeId> Protocol for NaiveTriangle<Id> {
    type State = NaiveState<Id>;
    type Msg = NaiveMsg<Id>;
    type Output = TriangleLabel<Id>;

    fn send(&self, s: &NaiveState<Id>) -> Option<NaiveMsg<Id>> {
        match s.round {
            0 => Some(NaiveMsg::Hello(s.me.clone())),
            1 if s.neighbors.len() >= 2 => {
                Some(NaiveMsg::Ask(s.neighbors[0].clone(), s.neighbors[1].clone(), s.me.clone()))
            }
            2 => s.found.clone().map(NaiveMsg::Found),
            _ => None,
        }
    }

    fn receive(&self, s: &mut NaiveState<Id>, inbox: &[&NaiveMsg<Id>]) -> Option<NodeOutput<TriangleLabel<Id>>> {
        s.round += 1;
        for m in inbox {
            match m {
                NaiveMsg::Hello(x) if s.round == 1 => s.neighbors.push(x.clone()),
                NaiveMsg::Ask(y, z, x) if s.round == 2 && *y == s.me && s.neighbors.binary_search(z).is_ok() => {
                    let mut t = [x.clone(), y.clone(), z.clone()];
                    t.sort();
                    s.offer(t);
                }
                NaiveMsg::Found(t) if s.round == 3 && t.contains(&s.me) => s.offer(t.clone()),
                _ => {}
            }
        }
        if s.round == 1 {
            s.neighbors.sort();
        }
        (s.round == 3).then(|| {
            NodeOutput::Label(s.found.clone().map_or(TriangleLabel::Silent, TriangleLabel::Witness))
        })
    }
}

impl<Id: NodeId> IdProtocol for NaiveTriangle<Id> {
    type Id = Id;

    fn start(&self, _: &LocalInput, id: Id) -> Init<NaiveState<Id>, TriangleLabel<Id>> {
        Init::Run(NaiveState { round: 0, me: id, neighbors: Vec::new(), found: None })
    }
}

pub fn naive_triangle(g: &Graph, ids: &[u32]) -> Result<Transcript<TriangleLabel<u32>>> {
    let opts = RunOptions::default().with_ids(ids.to_vec()).with_max_rounds(3);
    run(g, &EngineIds(NaiveTriangle::new()), ModelKind::BCongest, &opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::naive_counterexample_fixture;
    use crate::graph::enumerate_triangles;
    use crate::protocols::{check_witnesses, WitnessCheck};

    fn labels(t: &Transcript<TriangleLabel<u32>>) -> Vec<Option<&TriangleLabel<u32>>> {
        t.outputs.iter().map(|o| o.as_ref().and_then(|o| o.label())).collect()
    }

    #[test]
    fn k3_found() {
        let g = Graph::complete(3);
        let ids = vec![2, 3, 1];
        let t = naive_triangle(&g, &ids).unwrap();
        assert_eq!(t.rounds, 3);
        assert_eq!(check_witnesses(&g, &ids, &labels(&t)), WitnessCheck::Exact([0, 1, 2]));
    }

    #[test]
    fn k4_identity() {
        let g = Graph::complete(4);
        let ids = vec![1, 2, 3, 4];
        let t = naive_triangle(&g, &ids).unwrap();
        let l = labels(&t);
        assert_eq!(l[2], Some(&TriangleLabel::Witness([1, 2, 3])));
        assert!(!matches!(check_witnesses(&g, &ids, &l), WitnessCheck::Empty | WitnessCheck::False));
    }

    #[test]
    fn counterexample_reports_nothing() {
        let (g, ids) = naive_counterexample_fixture();
        assert!(enumerate_triangles(&g).contains(&[3, 4, 5]));
        let t = naive_triangle(&g, &ids).unwrap();
        assert!(labels(&t).iter().all(|l| *l == Some(&TriangleLabel::Silent)));
        assert_eq!(check_witnesses(&g, &ids, &labels(&t)), WitnessCheck::Empty);
    }

    #[test]
    fn low_degree_nodes_skip_round_two() {
        let g = Graph::path(2);
        let t = naive_triangle(&g, &[1, 2]).unwrap();
        assert_eq!(t.messages_sent, 2);
        assert!(t.outcome().is_solved());
    }
}
