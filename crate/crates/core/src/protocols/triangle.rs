//! Sound triangle finding on top of leader election.
//!
//! With `e` the leader's eccentricity and `P` the agreed start round:
//!
//! | round            | action                                                      |
//! |------------------|-------------------------------------------------------------|
//! | `P`, `P+2`       | nodes at distance `e-3`, then `e-2`, send their id          |
//! | `P+1`, `P+3`     | a node that heard exactly one id `x` sends `(x, own id)`    |
//! | end of `P+1/P+3` | a node that heard `x` and then `(x, y)` has triangle xyz    |
//! | `P+4..=P+3+e`    | least triangle found is flooded                             |
//! | `P+4+e`          | leader sends the decision: the least triangle, or alarm     |
//! | after            | decision relayed once per node, then halt                   |
//!
//! Total rounds: `5e + 5` with `P = 3e + 2`.

use std::marker::PhantomData;

use serde::Serialize;

use super::ids::{IdProtocol, Minted};
use super::leader::{LeaderCore, LeaderMsg};
use crate::error::Result;
use crate::graph::Graph;
use crate::labeling::{choose_modulus, AcProgram, IdVector, NodeId};
use crate::sim::wire::ceil_log2;
use crate::sim::{run, Init, LocalInput, ModelKind, NodeOutput, Protocol, RunOptions, Transcript, Wire, WireWriter};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TriangleLabel<Id> {
    Witness([Id; 3]),
    Silent,
}

impl<Id> TriangleLabel<Id> {
    pub fn witness(&self) -> Option<&[Id; 3]> {
        match self {
            TriangleLabel::Witness(t) => Some(t),
            TriangleLabel::Silent => None,
        }
    }
}

fn triple<Id: Ord>(a: Id, b: Id, c: Id) -> [Id; 3] {
    let mut t = [a, b, c];
    t.sort();
    t
}

fn encode_triple<Id: Wire>(t: &[Id; 3], w: &mut WireWriter) {
    for x in t {
        x.encode(w);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangleMsg<Id> {
    Leader(LeaderMsg<Id>),
    Probe(Id),
    Pair(Id, Id),
    Best([Id; 3]),
    /// `None` is the alarm.
    Decision(Option<[Id; 3]>),
}

impl<Id: Wire> Wire for TriangleMsg<Id> {
    fn encode(&self, w: &mut WireWriter) {
        match self {
            TriangleMsg::Leader(m) => m.encode(w),
            TriangleMsg::Probe(x) => {
                w.tag(2);
                x.encode(w);
            }
            TriangleMsg::Pair(x, y) => {
                w.tag(3);
                x.encode(w);
                y.encode(w);
            }
            TriangleMsg::Best(t) => {
                w.tag(4);
                encode_triple(t, w);
            }
            TriangleMsg::Decision(d) => {
                w.tag(5);
                w.flag(d.is_some());
                if let Some(t) = d {
                    encode_triple(t, w);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct TriangleState<Id> {
    round: u32,
    core: LeaderCore<Id>,
    heard: Vec<Id>,
    pair: Option<Id>,
    best: Option<[Id; 3]>,
    decision: Option<(Option<[Id; 3]>, u32)>,
}

impl<Id: Wire> Wire for TriangleState<Id> {
    fn encode(&self, w: &mut WireWriter) {
        w.uint(self.round as u64);
        self.core.encode(w);
        w.uint(self.heard.len() as u64);
        for x in &self.heard {
            x.encode(w);
        }
        w.flag(self.pair.is_some());
        if let Some(x) = &self.pair {
            x.encode(w);
        }
        w.flag(self.best.is_some());
        if let Some(t) = &self.best {
            encode_triple(t, w);
        }
        w.flag(self.decision.is_some());
        if let Some((d, r)) = &self.decision {
            w.flag(d.is_some());
            if let Some(t) = d {
                encode_triple(t, w);
            }
            w.uint(*r as u64);
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SoundTriangle<Id>(PhantomData<Id>);

impl<Id> SoundTriangle<Id> {
    pub fn new() -> Self {
        SoundTriangle(PhantomData)
    }
}

impl<Id: NodeId> TriangleState<Id> {
    fn probe_distance(&self, e: u32, k: u32) -> Option<u32> {
        match k {
            0 => e.checked_sub(3),
            2 => e.checked_sub(2),
            _ => None,
        }
    }

    fn output(&self, d: &Option<[Id; 3]>) -> NodeOutput<TriangleLabel<Id>> {
        match d {
            Some(t) if t.contains(&self.core.me) => NodeOutput::Label(TriangleLabel::Witness(t.clone())),
            Some(_) => NodeOutput::Label(TriangleLabel::Silent),
            None => NodeOutput::Failed,
        }
    }
}

impl<Id: NodeId> Protocol for SoundTriangle<Id> {
    type State = TriangleState<Id>;
    type Msg = TriangleMsg<Id>;
    type Output = TriangleLabel<Id>;

    fn send(&self, s: &TriangleState<Id>) -> Option<TriangleMsg<Id>> {
        let r = s.round + 1;
        let a = match s.core.announcement {
            Some(a) if r >= a.start => a,
            _ => return s.core.message(r).map(TriangleMsg::Leader),
        };
        let (e, k) = (a.ecc, r - a.start);
        match k {
            0 | 2 => (s.probe_distance(e, k) == Some(s.core.dist)).then(|| TriangleMsg::Probe(s.core.me.clone())),
            1 | 3 => s.pair.clone().map(|x| TriangleMsg::Pair(x, s.core.me.clone())),
            k if k <= 3 + e => s.best.clone().map(TriangleMsg::Best),
            k if k == 4 + e && s.core.is_leader() => Some(TriangleMsg::Decision(s.best.clone())),
            _ => match &s.decision {
                Some((d, at)) if r == at + 1 && s.core.dist < e => Some(TriangleMsg::Decision(d.clone())),
                _ => None,
            },
        }
    }

    fn receive(&self, s: &mut TriangleState<Id>, inbox: &[&TriangleMsg<Id>]) -> Option<NodeOutput<TriangleLabel<Id>>> {
        s.round += 1;
        let r = s.round;
        let a = match s.core.announcement {
            Some(a) if r >= a.start => a,
            _ => {
                s.core.absorb(
                    r,
                    inbox.iter().filter_map(|m| match m {
                        TriangleMsg::Leader(l) => Some(l),
                        _ => None,
                    }),
                );
                return None;
            }
        };
        let (e, k) = (a.ecc, r - a.start);
        match k {
            0 | 2 => {
                s.heard = inbox
                    .iter()
                    .filter_map(|m| match m {
                        TriangleMsg::Probe(x) => Some(x.clone()),
                        _ => None,
                    })
                    .collect();
                s.heard.sort();
                s.heard.dedup();
                s.pair = (s.heard.len() == 1).then(|| s.heard[0].clone());
            }
            1 | 3 => {
                s.pair = None;
                for m in inbox {
                    if let TriangleMsg::Pair(x, y) = m {
                        if s.heard.binary_search(x).is_ok() {
                            let t = triple(x.clone(), y.clone(), s.core.me.clone());
                            if s.best.as_ref().is_none_or(|b| t < *b) {
                                s.best = Some(t);
                            }
                        }
                    }
                }
                s.heard.clear();
            }
            k if k <= 3 + e => {
                for m in inbox {
                    if let TriangleMsg::Best(t) = m {
                        if s.best.as_ref().is_none_or(|b| t < b) {
                            s.best = Some(t.clone());
                        }
                    }
                }
            }
            k if k == 4 + e && s.core.is_leader() => return Some(s.output(&s.best.clone())),
            _ => {
                if s.decision.is_none() {
                    let d = inbox.iter().find_map(|m| match m {
                        TriangleMsg::Decision(d) => Some(d.clone()),
                        _ => None,
                    });
                    if let Some(d) = d {
                        s.decision = Some((d, r));
                    }
                }
                if let Some((d, at)) = &s.decision {
                    if s.core.dist >= e || r == at + 1 {
                        return Some(s.output(d));
                    }
                }
            }
        }
        None
    }
}

impl<Id: NodeId> IdProtocol for SoundTriangle<Id> {
    type Id = Id;

    fn start(&self, _: &LocalInput, id: Id) -> Init<TriangleState<Id>, TriangleLabel<Id>> {
        Init::Run(TriangleState {
            round: 0,
            core: LeaderCore::new(id),
            heard: Vec::new(),
            pair: None,
            best: None,
            decision: None,
        })
    }
}

/// How the triangle labels of a run relate to the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCheck {
    /// No node carries a witness.
    Empty,
    /// Exactly three nodes carry the same triple, which is their own ids and
    /// a triangle of the host.
    Exact([usize; 3]),
    /// Every labeled node lies on a host triangle matching its triple, but
    /// not in the exact form.
    Scattered,
    /// Some labeled triple is not a triangle through the labeling node.
    False,
}

/// Checks witness labels against the host graph. `ids[v]` is the
/// identifier node `v` used.
pub fn check_witnesses<Id: NodeId>(g: &Graph, ids: &[Id], labels: &[Option<&TriangleLabel<Id>>]) -> WitnessCheck {
    let labeled: Vec<(usize, &[Id; 3])> =
        labels.iter().enumerate().filter_map(|(v, l)| l.and_then(|l| l.witness()).map(|t| (v, t))).collect();
    if labeled.is_empty() {
        return WitnessCheck::Empty;
    }
    let genuine = |v: usize, t: &[Id; 3]| {
        let others: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| t.contains(&ids[u])).collect();
        t.contains(&ids[v])
            && others.iter().any(|&a| {
                others.iter().any(|&b| a != b && ids[a] != ids[b] && ids[a] != ids[v] && ids[b] != ids[v] && g.has_edge(a, b))
            })
    };
    if !labeled.iter().all(|&(v, t)| genuine(v, t)) {
        return WitnessCheck::False;
    }
    if labeled.len() == 3 && labeled.iter().all(|(_, t)| *t == labeled[0].1) {
        let nodes = [labeled[0].0, labeled[1].0, labeled[2].0];
        let mut own: Vec<&Id> = nodes.iter().map(|&v| &ids[v]).collect();
        own.sort();
        let t = labeled[0].1;
        let pairwise = g.has_edge(nodes[0], nodes[1]) && g.has_edge(nodes[0], nodes[2]) && g.has_edge(nodes[1], nodes[2]);
        if own == t.iter().collect::<Vec<_>>() && pairwise {
            return WitnessCheck::Exact(nodes);
        }
    }
    WitnessCheck::Scattered
}

/// Round cap for the sound protocol on `n` nodes: `5(n - 1) + 5` plus slack.
pub fn triangle_round_cap(n: usize) -> usize {
    5 * n + 10
}

pub fn triangle_find_sound(g: &Graph, ids: &[u32]) -> Result<Transcript<TriangleLabel<u32>>> {
    let opts = RunOptions::default().with_ids(ids.to_vec()).with_max_rounds(triangle_round_cap(g.n()));
    run(g, &super::EngineIds(SoundTriangle::new()), ModelKind::BCongest, &opts)
}

/// Per-message budget of the anonymous pipeline: three identifiers plus
/// `8 ceil(log2 n) + 32` bits.
pub fn anonymous_budget(n: usize, c: u32) -> u64 {
    3 * IdVector::nominal_bits(c, n as u64) + 8 * ceil_log2(n as u64) as u64 + 32
}

pub type AnonymousTriangle = Minted<AcProgram, SoundTriangle<IdVector>>;

pub fn anonymous_triangle(c: u32) -> AnonymousTriangle {
    Minted { minter: AcProgram { c }, protocol: SoundTriangle::new() }
}

/// One round of `A_C` with `C = choose_modulus(eps)`, then the sound
/// protocol on the minted identifiers, under SB*.
pub fn triangle_find_anonymous(g: &Graph, eps: f64) -> Result<Transcript<TriangleLabel<IdVector>>> {
    let c = choose_modulus(eps)?;
    let opts = RunOptions::default()
        .with_max_rounds(triangle_round_cap(g.n()) + 1)
        .with_budget(anonymous_budget(g.n(), c));
    run(g, &anonymous_triangle(c), ModelKind::Sbstar, &opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_ids, sample_gnp};
    use crate::graph::{eccentricities_and_diameter, enumerate_triangles, has_triangle};
    use crate::sim::{check_message_budget, Outcome};

    fn labels<Id>(t: &Transcript<TriangleLabel<Id>>) -> Vec<Option<&TriangleLabel<Id>>> {
        t.outputs.iter().map(|o| o.as_ref().and_then(|o| o.label())).collect()
    }

    #[test]
    fn cycle_alarms() {
        let g = Graph::cycle(6);
        let t = triangle_find_sound(&g, &random_ids(6, 3)).unwrap();
        assert_eq!(t.outcome(), Outcome::AllFailed);
        let e = 3;
        assert_eq!(t.rounds, 5 * e + 5);
    }

    #[test]
    fn tiny_graphs_fail() {
        for g in [Graph::empty(1), Graph::path(2)] {
            let ids: Vec<u32> = (1..=g.n() as u32).collect();
            assert_eq!(triangle_find_sound(&g, &ids).unwrap().outcome(), Outcome::AllFailed);
        }
    }

    /// Leader 0 (id 1) has ecc 5. Node 2, at distance `5 - 3`, is the only
    /// distance-2 neighbor of node 3, and node 4 is adjacent to both.
    #[test]
    fn hand_built_seven_nodes() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 4), (3, 5), (5, 6)]).unwrap();
        assert_eq!(enumerate_triangles(&g), vec![[2, 3, 4]]);
        let ids: Vec<u32> = (1..=7).collect();
        let t = triangle_find_sound(&g, &ids).unwrap();
        assert_eq!(check_witnesses(&g, &ids, &labels(&t)), WitnessCheck::Exact([2, 3, 4]));
        assert_eq!(t.rounds, 5 * 5 + 5);
        assert!(check_message_budget(&t, t.budget.unwrap()));
    }

    #[test]
    fn random_graphs_find_verified_witnesses() {
        for seed in 0..10 {
            let g = sample_gnp(120, 0.3, seed).unwrap();
            let ids = random_ids(120, seed);
            let t = triangle_find_sound(&g, &ids).unwrap();
            assert!(t.outcome().is_solved());
            assert!(matches!(check_witnesses(&g, &ids, &labels(&t)), WitnessCheck::Exact(_)));
            let diam = eccentricities_and_diameter(&g).diameter.unwrap();
            assert!(t.rounds <= 4 * diam + 12);
        }
    }

    #[test]
    fn anonymous_pipeline_with_distinct_ids_matches_sound_run() {
        let mut distinct = 0;
        for seed in 0..10 {
            let g = sample_gnp(150, 0.3, seed).unwrap();
            let t = triangle_find_anonymous(&g, 0.5).unwrap();
            assert!(t.budget_violation.is_none());
            let ids = crate::labeling::alg_ac(&g, choose_modulus(0.5).unwrap());
            if crate::labeling::ids_all_distinct(&ids) {
                distinct += 1;
                assert!(matches!(check_witnesses(&g, &ids, &labels(&t)), WitnessCheck::Exact(_)));
            }
        }
        assert!(distinct > 0);
    }

    #[test]
    fn regular_graph_ids_collide() {
        let g = Graph::complete(3);
        let c = choose_modulus(0.5).unwrap();
        let ids = crate::labeling::alg_ac(&g, c);
        assert!(!crate::labeling::ids_all_distinct(&ids));
        let t = triangle_find_anonymous(&g, 0.5).unwrap();
        assert_ne!(check_witnesses(&g, &ids, &labels(&t)), WitnessCheck::False);
    }

    #[test]
    fn false_witnesses_are_detected() {
        let g = Graph::path(3);
        let ids = vec![1u32, 2, 3];
        let w = TriangleLabel::Witness([1, 2, 3]);
        let l = vec![Some(&w), Some(&w), Some(&w)];
        assert_eq!(check_witnesses(&g, &ids, &l), WitnessCheck::False);
        assert!(!has_triangle(&g));
    }
}
