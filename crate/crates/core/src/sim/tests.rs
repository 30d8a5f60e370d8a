use proptest::prelude::*;

use super::*;
use crate::gen::{random_ids, sample_gnp};
use crate::graph::Graph;

/// Mixes a value with the inbox each round; halts after `rounds` rounds.
struct Mixer {
    rounds: u32,
    dedup: bool,
}

#[derive(Clone)]
struct MixState {
    round: u32,
    value: u64,
    sizes: Vec<usize>,
}

impl Wire for MixState {
    fn encode(&self, w: &mut WireWriter) {
        w.uint(self.round as u64);
        w.uint(self.value);
    }
}

struct Val(u64);

impl Wire for Val {
    fn encode(&self, w: &mut WireWriter) {
        w.tag(0);
        w.uint(self.0);
    }
}

fn mix(a: u64, b: u64) -> u64 {
    (a ^ b.rotate_left(17)).wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(29)
}

impl Protocol for Mixer {
    type State = MixState;
    type Msg = Val;
    type Output = u64;

    fn send(&self, s: &MixState) -> Option<Val> {
        Some(Val(s.value))
    }

    fn receive(&self, s: &mut MixState, inbox: &[&Val]) -> Option<NodeOutput<u64>> {
        s.round += 1;
        s.sizes.push(inbox.len());
        let mut vals: Vec<u64> = inbox.iter().map(|m| m.0).collect();
        if self.dedup {
            vals.dedup();
        }
        s.value = vals.iter().fold(mix(s.value, s.round as u64), |a, &b| mix(a, b));
        (s.round == self.rounds).then_some(NodeOutput::Label(s.value))
    }
}

impl NodeProgram for Mixer {
    fn init(&self, input: &LocalInput) -> Init<MixState, u64> {
        let value = input.degree as u64 * 1000 + input.id.unwrap_or(0) as u64;
        Init::Run(MixState { round: 0, value, sizes: Vec::new() })
    }
}

struct HaltAtInit;

impl Protocol for HaltAtInit {
    type State = ();
    type Msg = ();
    type Output = String;
    fn send(&self, _: &()) -> Option<()> {
        None
    }
    fn receive(&self, _: &mut (), _: &[&()]) -> Option<NodeOutput<String>> {
        None
    }
}

impl NodeProgram for HaltAtInit {
    fn init(&self, _: &LocalInput) -> Init<(), String> {
        Init::Halt(NodeOutput::Label("x".into()))
    }
}

/// Sends a constant; records inbox sizes; node of degree `quit` halts in
/// round 1, the others after 2 rounds.
struct Sizes {
    quit: usize,
}

impl Protocol for Sizes {
    type State = (u32, usize, Vec<usize>);
    type Msg = Val;
    type Output = Vec<usize>;
    fn send(&self, _: &Self::State) -> Option<Val> {
        Some(Val(7))
    }
    fn receive(&self, s: &mut Self::State, inbox: &[&Val]) -> Option<NodeOutput<Vec<usize>>> {
        s.0 += 1;
        s.2.push(inbox.len());
        (s.0 == 2 || s.1 == self.quit).then(|| NodeOutput::Label(s.2.clone()))
    }
}

impl NodeProgram for Sizes {
    fn init(&self, i: &LocalInput) -> Init<Self::State, Vec<usize>> {
        Init::Run((0, i.degree, Vec::new()))
    }
}

impl Wire for (u32, usize, Vec<usize>) {
    fn encode(&self, w: &mut WireWriter) {
        w.uint(self.0 as u64);
    }
}

#[test]
fn single_node_sees_empty_inboxes() {
    let t = run(&Graph::empty(1), &Sizes { quit: 99 }, ModelKind::Mb, &RunOptions::default()).unwrap();
    assert_eq!(t.outcome(), Outcome::Solved(vec![vec![0, 0]]));
    assert_eq!(t.rounds, 2);
}

#[test]
fn halt_in_init() {
    let t = run(&Graph::cycle(5), &HaltAtInit, ModelKind::Sb, &RunOptions::default()).unwrap();
    assert_eq!(t.rounds, 0);
    assert_eq!(t.outcome(), Outcome::Solved(vec!["x".to_string(); 5]));
    assert!(check_message_budget(&t, 0));
}

#[test]
fn set_versus_multiset() {
    let star = Graph::star(3);
    let sb = run(&star, &Sizes { quit: 99 }, ModelKind::Sb, &RunOptions::default()).unwrap();
    let mb = run(&star, &Sizes { quit: 99 }, ModelKind::Mb, &RunOptions::default()).unwrap();
    assert_eq!(sb.outputs[0], Some(NodeOutput::Label(vec![1, 1])));
    assert_eq!(mb.outputs[0], Some(NodeOutput::Label(vec![3, 3])));
}

#[test]
fn halted_nodes_are_silent() {
    // leaves have degree 1 and halt in round 1; the center then hears nothing
    let t = run(&Graph::star(3), &Sizes { quit: 1 }, ModelKind::Mb, &RunOptions::default()).unwrap();
    assert_eq!(t.outputs[0], Some(NodeOutput::Label(vec![3, 0])));
    assert_eq!(t.halt_rounds, vec![Some(2), Some(1), Some(1), Some(1)]);
    assert_eq!(t.rounds, 2);
}

#[test]
fn timeout_is_invalid() {
    let t = run(&Graph::cycle(4), &Mixer { rounds: 50, dedup: false }, ModelKind::Mb, &RunOptions::default().with_max_rounds(10))
        .unwrap();
    assert!(t.timed_out);
    assert_eq!(t.outcome(), Outcome::Invalid("timeout".into()));
    // default budget is 4n rounds
    let t = run(&Graph::cycle(4), &Mixer { rounds: 16, dedup: false }, ModelKind::Mb, &RunOptions::default()).unwrap();
    assert!(t.outcome().is_solved());
    let t = run(&Graph::cycle(4), &Mixer { rounds: 17, dedup: false }, ModelKind::Mb, &RunOptions::default()).unwrap();
    assert!(t.timed_out);
}

#[test]
fn identifier_validation() {
    let g = Graph::path(3);
    let p = Mixer { rounds: 1, dedup: false };
    assert!(run(&g, &p, ModelKind::BCongest, &RunOptions::default()).is_err());
    assert!(run(&g, &p, ModelKind::Local, &RunOptions::default().with_ids(vec![1, 1, 2])).is_err());
    assert!(run(&g, &p, ModelKind::Local, &RunOptions::default().with_ids(vec![1, 2, 4])).is_err());
    assert!(run(&g, &p, ModelKind::Mb, &RunOptions::default().with_ids(vec![1, 2, 3])).is_err());
    assert!(run(&g, &p, ModelKind::Local, &RunOptions::default().with_ids(vec![3, 1, 2])).is_ok());
    assert!(run(&g, &p, ModelKind::Mb, &RunOptions::default().with_max_rounds(0)).is_err());
}

#[test]
fn budget_enforced_only_in_bounded_models() {
    let g = Graph::complete(4);
    let p = Mixer { rounds: 2, dedup: false };
    let t = run(&g, &p, ModelKind::Mbstar, &RunOptions::default().with_budget(8)).unwrap();
    assert!(t.budget_violation.is_some());
    assert_eq!(t.outcome(), Outcome::Invalid("message budget exceeded".into()));
    let t = run(&g, &p, ModelKind::Mb, &RunOptions::default().with_budget(8)).unwrap();
    assert!(t.outcome().is_solved());
    assert!(!check_message_budget(&t, 8));
}

#[test]
fn full_trace_json() {
    let t = run(&Graph::path(3), &Sizes { quit: 99 }, ModelKind::Sb, &RunOptions::default().traced(TraceLevel::Full)).unwrap();
    assert_eq!(t.per_round.len(), 3 * 3);
    assert_eq!(t.recorded_rounds(), 3);
    let j = t.to_json();
    for k in ["model", "n", "rounds", "max_message_bits", "outputs", "per_round"] {
        assert!(j.get(k).is_some(), "{k}");
    }
    assert_eq!(j["model"], "SB");
    let r1 = &t.per_round[3 + 1];
    assert_eq!((r1.round, r1.node), (1, 1));
    assert_eq!(r1.received.as_ref().unwrap().len(), 1);
    assert_eq!(r1.sent_bits, Some(4 + 7));
}

fn strip<O: Clone>(t: &Transcript<O>) -> (Vec<Option<NodeOutput<O>>>, Vec<RoundRecord>, usize) {
    (t.outputs.clone(), t.per_round.clone(), t.rounds)
}

proptest! {
    #[test]
    fn deterministic(seed in 0u64..1000) {
        let g = sample_gnp(12, 0.4, seed).unwrap();
        let opts = RunOptions::default().traced(TraceLevel::Full);
        let p = Mixer { rounds: 4, dedup: false };
        prop_assert_eq!(run(&g, &p, ModelKind::Mb, &opts).unwrap(), run(&g, &p, ModelKind::Mb, &opts).unwrap());
    }

    #[test]
    fn relabeling_commutes(seed in 0u64..1000, n in 1usize..=8) {
        let g = sample_gnp(n, 0.5, seed).unwrap();
        let ids = random_ids(n, seed);
        let pi = crate::gen::Rng::new(seed, crate::gen::Stream::Search).permutation(n);
        let h = g.relabel(&pi);
        let mut ids_h = vec![0; n];
        for v in 0..n {
            ids_h[pi[v]] = ids[v];
        }
        let p = Mixer { rounds: 3, dedup: false };
        let opts = |ids: Vec<u32>| RunOptions::default().with_ids(ids).traced(TraceLevel::States);
        let a = run(&g, &p, ModelKind::Local, &opts(ids.clone())).unwrap();
        let b = run(&h, &p, ModelKind::Local, &opts(ids_h)).unwrap();
        for v in 0..n {
            prop_assert_eq!(&a.outputs[v], &b.outputs[pi[v]]);
            for r in 0..a.recorded_rounds() {
                prop_assert_eq!(a.state_digest(r, v), b.state_digest(r, pi[v]));
            }
        }
        let c = run(&g, &p, ModelKind::Mb, &RunOptions::default()).unwrap();
        let d = run(&h, &p, ModelKind::Mb, &RunOptions::default()).unwrap();
        for v in 0..n {
            prop_assert_eq!(&c.outputs[v], &d.outputs[pi[v]]);
        }
    }

    #[test]
    fn multiplicity_blind_programs_agree_across_sb_and_mb(seed in 0u64..1000) {
        let g = sample_gnp(10, 0.5, seed).unwrap();
        let p = Mixer { rounds: 3, dedup: true };
        let opts = RunOptions::default().traced(TraceLevel::States);
        let sb = run(&g, &p, ModelKind::Sb, &opts).unwrap();
        let mb = run(&g, &p, ModelKind::Mb, &opts).unwrap();
        prop_assert_eq!(strip(&sb), strip(&mb));
    }
}
