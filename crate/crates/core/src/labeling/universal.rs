//! Full-information program. A node's round-`r` state is its view tree:
//! its degree plus the collection of its neighbors' round-`(r-1)` views,
//! a set under SB and a multiset under MB. Under MB the view determines
//! and is determined by `C_r`.
//!
//! Views are shared through `Arc` and identified by a Merkle digest, which
//! is also their canonical wire encoding; the logical message length is
//! the number of degree entries in the tree times the node-integer width.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use sha2::{Digest as _, Sha256};

use crate::sim::{Init, LocalInput, NodeOutput, NodeProgram, Protocol, Wire, WireWriter};

/// A SHA-256 value, ordered as a big-endian byte string.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digest(pub [u8; 32]);

impl Digest {
    fn words(&self) -> [u64; 4] {
        std::array::from_fn(|i| u64::from_be_bytes(self.0[8 * i..8 * i + 8].try_into().unwrap()))
    }

    pub fn hex(&self) -> String {
        hex::encode(self.0)
    }
}

impl Ord for Digest {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.words().cmp(&other.words())
    }
}

impl PartialOrd for Digest {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", &self.hex()[..12])
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

impl Serialize for Digest {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.hex())
    }
}

impl Wire for Digest {
    fn encode(&self, w: &mut WireWriter) {
        w.raw(&self.0, 256);
    }
}

#[derive(PartialEq, Eq)]
pub struct ViewTree {
    degree: u32,
    depth: u32,
    children: Vec<Arc<ViewTree>>,
    digest: Digest,
    units: u64,
}

impl ViewTree {
    pub fn leaf(degree: u32) -> Arc<ViewTree> {
        ViewTree::node(degree, 0, Vec::new())
    }

    /// `children` must be sorted by digest.
    pub fn node(degree: u32, depth: u32, children: Vec<Arc<ViewTree>>) -> Arc<ViewTree> {
        debug_assert!(children.windows(2).all(|w| w[0].digest <= w[1].digest));
        let mut h = Sha256::new();
        h.update(degree.to_be_bytes());
        h.update(depth.to_be_bytes());
        h.update((children.len() as u64).to_be_bytes());
        for c in &children {
            h.update(c.digest.0);
        }
        let units = children.iter().fold(1u64, |a, c| a.saturating_add(c.units));
        Arc::new(ViewTree { degree, depth, children, digest: Digest(h.finalize().into()), units })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Neighbors' views one round earlier, sorted by digest.
    pub fn children(&self) -> &[Arc<ViewTree>] {
        &self.children
    }

    pub fn digest(&self) -> Digest {
        self.digest
    }

    /// Degree entries in the fully expanded tree (saturating).
    pub fn units(&self) -> u64 {
        self.units
    }
}

impl fmt::Debug for ViewTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "View(deg={}, depth={}, {:?})", self.degree, self.depth, self.digest)
    }
}

/// A view on the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewMsg(pub Arc<ViewTree>);

impl Wire for ViewMsg {
    fn encode(&self, w: &mut WireWriter) {
        w.tag(1);
        let bits = self.0.units().saturating_mul(w.node_bits() as u64);
        w.raw(&self.0.digest.0, bits);
    }
}

#[derive(Debug, Clone)]
pub struct UniversalState {
    pub round: u32,
    pub view: Arc<ViewTree>,
}

impl Wire for UniversalState {
    fn encode(&self, w: &mut WireWriter) {
        w.uint(self.round as u64);
        self.view.digest.encode(w);
    }
}

impl UniversalState {
    pub fn start(degree: usize) -> UniversalState {
        UniversalState { round: 0, view: ViewTree::leaf(degree as u32) }
    }

    pub fn message(&self) -> ViewMsg {
        ViewMsg(self.view.clone())
    }

    /// Advances one round from a digest-sorted inbox.
    pub fn absorb(&mut self, inbox: &[&ViewMsg]) {
        self.round += 1;
        let children = inbox.iter().map(|m| m.0.clone()).collect();
        self.view = ViewTree::node(self.view.degree, self.round, children);
    }
}

/// Runs the full-information exchange for `rounds` rounds and outputs the
/// digest of the final view.
#[derive(Debug, Clone, Copy)]
pub struct UniversalProgram {
    pub rounds: u32,
}

impl Protocol for UniversalProgram {
    type State = UniversalState;
    type Msg = ViewMsg;
    type Output = Digest;

    fn send(&self, s: &UniversalState) -> Option<ViewMsg> {
        Some(s.message())
    }

    fn receive(&self, s: &mut UniversalState, inbox: &[&ViewMsg]) -> Option<NodeOutput<Digest>> {
        s.absorb(inbox);
        (s.round >= self.rounds).then(|| NodeOutput::Label(s.view.digest))
    }
}

impl NodeProgram for UniversalProgram {
    fn init(&self, input: &LocalInput) -> Init<UniversalState, Digest> {
        let s = UniversalState::start(input.degree);
        if self.rounds == 0 {
            Init::Halt(NodeOutput::Label(s.view.digest))
        } else {
            Init::Run(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{bipartite_double_cover, sample_gnp};
    use crate::graph::Graph;
    use crate::labeling::{color_refinement_with, CrInterner};
    use crate::sim::{check_message_budget, run, ModelKind, RunOptions, TraceLevel, Transcript};
    use proptest::prelude::*;

    fn traced(g: &Graph, model: ModelKind, rounds: u32) -> Transcript<Digest> {
        run(g, &UniversalProgram { rounds }, model, &RunOptions::default().traced(TraceLevel::States)).unwrap()
    }

    #[test]
    fn budget_example() {
        let g = sample_gnp(50, 0.3, 1).unwrap();
        let t = run(&g, &UniversalProgram { rounds: 4 }, ModelKind::Mb, &RunOptions::default()).unwrap();
        assert!(!check_message_budget(&t, 6));
        assert_eq!(t.rounds, 4);
    }

    #[test]
    fn cover_states_match() {
        let g = sample_gnp(30, 0.4, 8).unwrap();
        let cm = bipartite_double_cover(&g);
        let a = traced(&g, ModelKind::Mb, 5);
        let b = traced(&cm.source, ModelKind::Mb, 5);
        for r in 0..=5 {
            for x in 0..cm.source.n() {
                assert_eq!(b.state_digest(r, x), a.state_digest(r, cm.map[x]));
            }
        }
    }

    /// Every inbox duplicate-free: the set collapse never fires.
    #[test]
    fn sb_equals_mb_without_repeated_messages() {
        // in P4 every node's neighbors have distinct degrees, hence distinct views
        let g = Graph::path(4);
        let sb = traced(&g, ModelKind::Sb, 4);
        let mb = traced(&g, ModelKind::Mb, 4);
        assert_eq!(sb.per_round, mb.per_round);
        // with repeated degrees the two models diverge at round 1
        let star = Graph::star(3);
        assert_ne!(traced(&star, ModelKind::Sb, 1).per_round, traced(&star, ModelKind::Mb, 1).per_round);
    }

    proptest! {
        /// Equal MB states at round `r` exactly when `C_r` colors agree,
        /// across two graphs at once.
        #[test]
        fn mb_states_track_color_refinement(seed in 0u64..10_000, n in 1usize..=40, p in 0.05f64..0.95) {
            let g = sample_gnp(n, p, seed).unwrap();
            let h = sample_gnp(n, p, seed + 1).unwrap();
            let u = g.disjoint_union(&h);
            let t = traced(&u, ModelKind::Mb, 4);
            let mut i = CrInterner::new();
            let cg = color_refinement_with(&g, 4, &mut i);
            let ch = color_refinement_with(&h, 4, &mut i);
            for r in 0..=4 {
                let colors: Vec<u32> = cg[r].colors.iter().chain(&ch[r].colors).copied().collect();
                for a in 0..2 * n {
                    for b in a..2 * n {
                        prop_assert_eq!(t.state_digest(r, a) == t.state_digest(r, b), colors[a] == colors[b]);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn digest_order_is_byte_order(a in any::<[u8; 32]>(), b in any::<[u8; 32]>(), k in 0usize..32) {
            let mut c = a;
            c[k..].copy_from_slice(&b[k..]);
            for (x, y) in [(a, b), (a, c), (c, a), (a, a)] {
                prop_assert_eq!(Digest(x).cmp(&Digest(y)), x.cmp(&y));
            }
        }
    }
}
