//! Graph reconstruction by flooding neighborhood lists keyed by
//! identifier. A node's knowledge is complete when every identifier
//! mentioned in a known list has a list of its own; conflicting lists for
//! one identifier, self-references or repeated neighbors mark the
//! knowledge inconsistent.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use sha2::{Digest as _, Sha256};

use super::NodeId;
use crate::error::{input, Result};
use crate::graph::Graph;
use crate::sim::{Wire, WireWriter};

/// One node's neighborhood list.
#[derive(Debug, PartialEq, Eq)]
pub struct Entry<Id> {
    pub id: Id,
    /// Sorted; may contain repeats when identifiers collide.
    pub list: Vec<Id>,
    digest: [u8; 32],
    bits: u64,
}

impl<Id: NodeId> Entry<Id> {
    /// `n` sizes the logical encoding.
    pub fn new(id: Id, mut list: Vec<Id>, n: usize) -> Arc<Entry<Id>> {
        list.sort();
        let mut w = WireWriter::new(n);
        id.encode(&mut w);
        w.uint(list.len() as u64);
        for x in &list {
            x.encode(&mut w);
        }
        let digest = Sha256::digest(w.bytes()).into();
        Arc::new(Entry { id, list, digest, bits: w.bit_len() })
    }
}

/// A batch of entries on the wire, sorted by entry digest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entries<Id>(pub Vec<Arc<Entry<Id>>>);

impl<Id> Entries<Id> {
    pub fn sorted(mut v: Vec<Arc<Entry<Id>>>) -> Entries<Id> {
        v.sort_by_key(|e| e.digest);
        Entries(v)
    }
}

impl<Id> Wire for Entries<Id> {
    fn encode(&self, w: &mut WireWriter) {
        w.uint(self.0.len() as u64);
        for e in &self.0 {
            w.raw(&e.digest, e.bits);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GatherCore<Id> {
    own: Id,
    entries: BTreeMap<Id, Arc<Entry<Id>>>,
    missing: BTreeSet<Id>,
    fresh: Vec<Arc<Entry<Id>>>,
    inconsistent: bool,
}

impl<Id: NodeId> GatherCore<Id> {
    pub fn new(own: Id) -> Self {
        let missing = BTreeSet::from([own.clone()]);
        GatherCore { own, entries: BTreeMap::new(), missing, fresh: Vec::new(), inconsistent: false }
    }

    pub fn own(&self) -> &Id {
        &self.own
    }

    pub fn learn(&mut self, e: &Arc<Entry<Id>>) {
        if let Some(old) = self.entries.get(&e.id) {
            if !Arc::ptr_eq(old, e) && old.digest != e.digest {
                self.inconsistent = true;
            }
            return;
        }
        if e.list.windows(2).any(|w| w[0] == w[1]) || e.list.contains(&e.id) {
            self.inconsistent = true;
        }
        self.missing.remove(&e.id);
        for y in &e.list {
            if !self.entries.contains_key(y) {
                self.missing.insert(y.clone());
            }
        }
        self.entries.insert(e.id.clone(), e.clone());
        self.fresh.push(e.clone());
    }

    /// Entries learned since the last call.
    pub fn take_fresh(&mut self) -> Vec<Arc<Entry<Id>>> {
        std::mem::take(&mut self.fresh)
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Every mentioned identifier has a list, consistent or not.
    pub fn is_closed(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        !self.inconsistent && self.missing.is_empty()
    }

    pub fn known(&self) -> usize {
        self.entries.len()
    }

    /// Known entries in identifier order.
    pub fn entries(&self) -> impl ExactSizeIterator<Item = &Arc<Entry<Id>>> {
        self.entries.values()
    }

    pub fn entry(&self, id: &Id) -> Option<&Arc<Entry<Id>>> {
        self.entries.get(id)
    }

    /// The known graph, if complete and symmetric.
    pub fn reconstruct(&self) -> Option<ReconstructedGraph<Id>> {
        if !self.is_complete() {
            return None;
        }
        let ids: Vec<Id> = self.entries.keys().cloned().collect();
        let index = |x: &Id| ids.binary_search(x).expect("complete");
        let mut edges = Vec::new();
        for (i, e) in self.entries.values().enumerate() {
            for y in &e.list {
                let j = index(y);
                if self.entries[y].list.binary_search(&e.id).is_err() {
                    return None;
                }
                if i < j {
                    edges.push((i, j));
                }
            }
        }
        let graph = Graph::from_edges(ids.len(), edges).ok()?;
        let me = index(&self.own);
        Some(ReconstructedGraph { ids, graph, me })
    }
}

impl<Id: NodeId> Wire for GatherCore<Id> {
    fn encode(&self, w: &mut WireWriter) {
        self.own.encode(w);
        w.flag(self.inconsistent);
        w.uint(self.entries.len() as u64);
        for e in self.entries.values() {
            w.raw(&e.digest, e.bits);
        }
        w.uint(self.missing.len() as u64);
    }
}

/// Node `i` of `graph` carries identifier `ids[i]`; `ids` is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructedGraph<Id> {
    pub ids: Vec<Id>,
    pub graph: Graph,
    pub me: usize,
}

impl<Id: NodeId> ReconstructedGraph<Id> {
    /// Whether `host` with identifiers `host_ids` maps onto this graph
    /// edge for edge.
    pub fn matches(&self, host: &Graph, host_ids: &[Id]) -> bool {
        if host.n() != self.graph.n() || host.m() != self.graph.m() {
            return false;
        }
        let pos: Option<Vec<usize>> = host_ids.iter().map(|x| self.ids.binary_search(x).ok()).collect();
        match pos {
            Some(pos) => host.edges().all(|(u, v)| self.graph.has_edge(pos[u], pos[v])),
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GatherResult<Id> {
    Reconstructed(ReconstructedGraph<Id>),
    Incomplete,
}

/// Round 1 exchanges identifiers, round 2 neighborhood lists, and later
/// rounds forward lists learned in the previous round. Each node then
/// reports what it can reconstruct.
pub fn gather_all<Id: NodeId>(g: &Graph, ids: &[Id], rounds: usize) -> Result<Vec<GatherResult<Id>>> {
    let n = g.n();
    if ids.len() != n {
        return input(format!("{} identifiers for {n} nodes", ids.len()));
    }
    let mut sorted: Vec<&Id> = ids.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return input("identifiers must be pairwise distinct");
    }
    let mut cores: Vec<GatherCore<Id>> = ids.iter().cloned().map(GatherCore::new).collect();
    if rounds >= 1 {
        for v in 0..n {
            let list = g.neighbors(v).iter().map(|&u| ids[u].clone()).collect();
            let e = Entry::new(ids[v].clone(), list, n);
            cores[v].learn(&e);
        }
    }
    for _ in 2..=rounds {
        let outgoing: Vec<Vec<Arc<Entry<Id>>>> = cores.iter_mut().map(GatherCore::take_fresh).collect();
        for v in 0..n {
            for &u in g.neighbors(v) {
                for e in &outgoing[u] {
                    cores[v].learn(e);
                }
            }
        }
    }
    Ok(cores
        .iter()
        .map(|c| c.reconstruct().map_or(GatherResult::Incomplete, GatherResult::Reconstructed))
        .collect())
}
