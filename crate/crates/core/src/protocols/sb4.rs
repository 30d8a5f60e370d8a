//! Four-round sound solver under SB with `n` known.
//!
//! After four rounds of the full-information exchange, a node's view holds
//! the round-2 view of every node within distance 2 and the round-1 view of
//! every node within distance 3. A round-1 view is read as the pair
//! `(degree, set of neighbor degrees)`; a round-2 view additionally gives
//! the set of neighbors' pairs. When the `n` pairs are distinct and all
//! present with neighbor sets, they spell out the graph. A node fails when
//! it sees fewer than `n` pairs, a pair without neighbor set, conflicting
//! neighbor sets, or a rebuilt graph of diameter above 2.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::plugins::ProblemPlugin;
use crate::error::Result;
use crate::graph::{eccentricities_and_diameter, Graph};
use crate::labeling::{Digest, UniversalState, ViewMsg, ViewTree};
use crate::sim::{run, Init, LocalInput, ModelKind, NodeOutput, NodeProgram, Protocol, RunOptions, Transcript, Wire, WireWriter};

pub const SB4_ROUNDS: u32 = 4;

/// `(degree, sorted distinct neighbor degrees)`.
type Profile = (u32, Vec<u32>);

#[derive(Debug, Clone)]
pub struct Sb4State {
    n: Option<usize>,
    views: UniversalState,
}

impl Wire for Sb4State {
    fn encode(&self, w: &mut WireWriter) {
        self.views.encode(w);
    }
}

struct Interned {
    depth: u32,
    profile: Option<u32>,
    children: Vec<u32>,
}

/// Views and profiles numbered in order of first sight.
#[derive(Default)]
struct Interner {
    views: HashMap<Digest, u32>,
    nodes: Vec<Interned>,
    profiles: HashMap<Profile, u32>,
    profile_values: Vec<Profile>,
}

const INTERNER_LIMIT: usize = 1 << 20;

impl Interner {
    fn intern(&mut self, v: &ViewTree) -> u32 {
        if let Some(&i) = self.views.get(&v.digest()) {
            return i;
        }
        let children: Vec<u32> = v.children().iter().map(|c| self.intern(c)).collect();
        let profile = (v.depth() >= 1).then(|| {
            let mut d: Vec<u32> = v.children().iter().map(|c| c.degree()).collect();
            d.sort_unstable();
            d.dedup();
            let p = (v.degree(), d);
            let next = self.profile_values.len() as u32;
            *self.profiles.entry(p.clone()).or_insert_with(|| {
                self.profile_values.push(p);
                next
            })
        });
        let i = self.nodes.len() as u32;
        self.nodes.push(Interned { depth: v.depth(), profile, children });
        self.views.insert(v.digest(), i);
        i
    }
}

struct Solution<L> {
    /// Profile ids sorted by profile value; node `i` of the rebuilt graph.
    order: Vec<u32>,
    adjacency: Vec<Vec<u32>>,
    labels: Option<Vec<L>>,
}

pub struct SoundSolverSb4<P: ProblemPlugin> {
    pub plugin: P,
    interner: RefCell<Interner>,
    cache: RefCell<Option<Rc<Solution<P::Label>>>>,
}

impl<P: ProblemPlugin + std::fmt::Debug> std::fmt::Debug for SoundSolverSb4<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SoundSolverSb4").field("plugin", &self.plugin).finish()
    }
}

impl<P: ProblemPlugin> SoundSolverSb4<P> {
    pub fn new(plugin: P) -> Self {
        SoundSolverSb4 { plugin, interner: RefCell::new(Interner::default()), cache: RefCell::new(None) }
    }

    fn decide(&self, n: usize, view: &ViewTree) -> NodeOutput<P::Label> {
        let mut it = self.interner.borrow_mut();
        if it.nodes.len() > INTERNER_LIMIT {
            *it = Interner::default();
            *self.cache.borrow_mut() = None;
        }
        let root = it.intern(view);
        let mut seen = vec![false; it.nodes.len()];
        let mut stack = vec![root];
        seen[root as usize] = true;
        let mut present: Vec<u32> = Vec::new();
        let mut lists: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        while let Some(i) = stack.pop() {
            let node = &it.nodes[i as usize];
            if let Some(p) = node.profile {
                present.push(p);
            }
            if node.depth >= 2 {
                let mut l: Vec<u32> = node.children.iter().map(|&c| it.nodes[c as usize].profile.unwrap()).collect();
                l.sort_unstable();
                l.dedup();
                match lists.get(&node.profile.unwrap()) {
                    Some(old) if *old != l => return NodeOutput::Failed,
                    Some(_) => {}
                    None => {
                        lists.insert(node.profile.unwrap(), l);
                    }
                }
            }
            for &c in &node.children {
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    stack.push(c);
                }
            }
        }
        present.sort_unstable();
        present.dedup();
        if present.len() != n || lists.len() != n {
            return NodeOutput::Failed;
        }
        let own = it.nodes[root as usize].profile.unwrap();
        let mut order = present;
        order.sort_by(|a, b| it.profile_values[*a as usize].cmp(&it.profile_values[*b as usize]));
        let adjacency: Vec<Vec<u32>> = order.iter().map(|p| lists[p].clone()).collect();
        drop(it);

        let sol = self.solve(order, adjacency);
        match (&sol.labels, sol.order.iter().position(|&p| p == own)) {
            (Some(l), Some(me)) => NodeOutput::Label(l[me].clone()),
            _ => NodeOutput::Failed,
        }
    }

    fn solve(&self, order: Vec<u32>, adjacency: Vec<Vec<u32>>) -> Rc<Solution<P::Label>> {
        if let Some(s) = self.cache.borrow().as_ref() {
            if s.order == order && s.adjacency == adjacency {
                return s.clone();
            }
        }
        let labels = rebuild(&order, &adjacency).and_then(|g| {
            let diam = eccentricities_and_diameter(&g).diameter;
            if diam.is_some_and(|d| d <= 2) {
                self.plugin.least_solution(&g)
            } else {
                None
            }
        });
        let s = Rc::new(Solution { order, adjacency, labels });
        *self.cache.borrow_mut() = Some(s.clone());
        s
    }
}

/// The graph on `order` with the given neighbor lists, if symmetric.
fn rebuild(order: &[u32], adjacency: &[Vec<u32>]) -> Option<Graph> {
    let index: HashMap<u32, usize> = order.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (i, list) in adjacency.iter().enumerate() {
        for p in list {
            let j = *index.get(p)?;
            if !adjacency[j].contains(&order[i]) || i == j {
                return None;
            }
            if i < j {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(order.len(), edges).ok()
}

impl<P: ProblemPlugin> Protocol for SoundSolverSb4<P> {
    type State = Sb4State;
    type Msg = ViewMsg;
    type Output = P::Label;

    fn send(&self, s: &Sb4State) -> Option<ViewMsg> {
        Some(s.views.message())
    }

    fn receive(&self, s: &mut Sb4State, inbox: &[&ViewMsg]) -> Option<NodeOutput<P::Label>> {
        s.views.absorb(inbox);
        if s.views.round < SB4_ROUNDS {
            return None;
        }
        Some(match s.n {
            Some(n) => self.decide(n, &s.views.view),
            None => NodeOutput::Failed,
        })
    }
}

impl<P: ProblemPlugin> NodeProgram for SoundSolverSb4<P> {
    fn init(&self, input: &LocalInput) -> Init<Sb4State, P::Label> {
        Init::Run(Sb4State { n: input.n, views: UniversalState::start(input.degree) })
    }
}

pub fn sound_solver_sb4<P: ProblemPlugin>(g: &Graph, plugin: P) -> Result<Transcript<P::Label>> {
    let opts = RunOptions::default().knowing_n().with_max_rounds(SB4_ROUNDS as usize);
    run(g, &SoundSolverSb4::new(plugin), ModelKind::Sb, &opts)
}
