//! Leader election with distances and eccentricity.
//!
//! Every node floods the least `(leader, distance)` pair it has seen,
//! together with its BFS parent and a completion flag. A node is complete
//! when its pair did not change this round, all neighbors report its
//! leader, and every neighbor naming it as parent reports complete. Every
//! neighbor floods until the broadcast starts, so no count of senders is
//! needed and set delivery works as well as multiset delivery. Its
//! depth is the largest distance below it. A complete root knows its
//! eccentricity `e`, and broadcasts it with the absolute round
//! `start = R + e + 1`, by which every node has heard it.
//!
//! The root completes in round `2e + 1`, so `start = 3e + 2`.

use std::marker::PhantomData;

use serde::Serialize;

use super::ids::IdProtocol;
use crate::labeling::NodeId;
use crate::sim::{Init, LocalInput, NodeOutput, Protocol, Wire, WireWriter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeaderMsg<Id> {
    Flood { leader: Id, dist: u32, sender: Id, parent: Option<Id>, complete: bool, depth: u32 },
    Announce { leader: Id, ecc: u32, start: u32 },
}

impl<Id: Wire> Wire for LeaderMsg<Id> {
    fn encode(&self, w: &mut WireWriter) {
        match self {
            LeaderMsg::Flood { leader, dist, sender, parent, complete, depth } => {
                w.tag(0);
                leader.encode(w);
                w.node_int(*dist as u64);
                sender.encode(w);
                w.flag(parent.is_some());
                if let Some(p) = parent {
                    p.encode(w);
                }
                w.flag(*complete);
                w.node_int(*depth as u64);
            }
            LeaderMsg::Announce { leader, ecc, start } => {
                w.tag(1);
                leader.encode(w);
                w.node_int(*ecc as u64);
                w.uint(*start as u64);
            }
        }
    }
}

/// What every node knows once the root's broadcast reached it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Announcement {
    pub ecc: u32,
    /// First round after the broadcast has reached every node.
    pub start: u32,
    /// Round in which this node learned it.
    pub learned: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaderCore<Id> {
    pub me: Id,
    pub leader: Id,
    pub dist: u32,
    pub parent: Option<Id>,
    complete: bool,
    depth: u32,
    pub announcement: Option<Announcement>,
}

impl<Id: NodeId> LeaderCore<Id> {
    pub fn new(me: Id) -> Self {
        LeaderCore {
            leader: me.clone(),
            me,
            dist: 0,
            parent: None,
            complete: false,
            depth: 0,
            announcement: None,
        }
    }

    pub fn is_leader(&self) -> bool {
        self.leader == self.me
    }

    /// Message for `round`; the broadcast is relayed once, except by nodes
    /// at maximum distance.
    pub fn message(&self, round: u32) -> Option<LeaderMsg<Id>> {
        match self.announcement {
            None => Some(LeaderMsg::Flood {
                leader: self.leader.clone(),
                dist: self.dist,
                sender: self.me.clone(),
                parent: self.parent.clone(),
                complete: self.complete,
                depth: self.depth,
            }),
            Some(a) if round == a.learned + 1 && self.dist < a.ecc => {
                Some(LeaderMsg::Announce { leader: self.leader.clone(), ecc: a.ecc, start: a.start })
            }
            Some(_) => None,
        }
    }

    pub fn absorb<'a>(&mut self, round: u32, inbox: impl Iterator<Item = &'a LeaderMsg<Id>> + Clone)
    where
        Id: 'a,
    {
        if self.announcement.is_some() {
            return;
        }
        let heard = inbox
            .clone()
            .filter_map(|m| match m {
                LeaderMsg::Announce { leader, ecc, start } if *leader == self.leader => Some((*ecc, *start)),
                _ => None,
            })
            .min();
        if let Some((ecc, start)) = heard {
            self.announcement = Some(Announcement { ecc, start, learned: round });
            return;
        }

        let floods = || {
            inbox.clone().filter_map(|m| match m {
                LeaderMsg::Flood { leader, dist, sender, parent, complete, depth } => {
                    Some((leader, *dist, sender, parent, *complete, *depth))
                }
                LeaderMsg::Announce { .. } => None,
            })
        };
        let mut best = (self.leader.clone(), self.dist);
        for (leader, dist, ..) in floods() {
            if (leader, dist + 1) < (&best.0, best.1) {
                best = (leader.clone(), dist + 1);
            }
        }
        let changed = best != (self.leader.clone(), self.dist);
        (self.leader, self.dist) = best;
        self.parent = if self.is_leader() {
            None
        } else {
            floods()
                .filter(|(l, d, ..)| **l == self.leader && d + 1 == self.dist)
                .map(|(_, _, s, ..)| s.clone())
                .min()
        };
        let mut agree = true;
        let mut depth = self.dist;
        for (leader, _, _, parent, complete, d) in floods() {
            agree &= *leader == self.leader;
            if parent.as_ref() == Some(&self.me) && *leader == self.leader {
                agree &= complete;
                depth = depth.max(d);
            }
        }
        self.complete = !changed && agree;
        self.depth = depth;
        if self.complete && self.is_leader() {
            self.announcement = Some(Announcement { ecc: depth, start: round + depth + 1, learned: round });
        }
    }
}

impl<Id: Wire> Wire for LeaderCore<Id> {
    fn encode(&self, w: &mut WireWriter) {
        self.me.encode(w);
        self.leader.encode(w);
        w.node_int(self.dist as u64);
        w.flag(self.parent.is_some());
        if let Some(p) = &self.parent {
            p.encode(w);
        }
        w.flag(self.complete);
        w.node_int(self.depth as u64);
        w.flag(self.announcement.is_some());
        if let Some(a) = &self.announcement {
            w.uint(a.ecc as u64);
            w.uint(a.start as u64);
            w.uint(a.learned as u64);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeaderInfo<Id> {
    pub leader: Id,
    pub dist: u32,
    pub ecc: u32,
}

#[derive(Debug, Clone)]
pub struct LeaderState<Id> {
    pub round: u32,
    pub core: LeaderCore<Id>,
}

impl<Id: Wire> Wire for LeaderState<Id> {
    fn encode(&self, w: &mut WireWriter) {
        w.uint(self.round as u64);
        self.core.encode(w);
    }
}

/// Standalone election: a node halts once it has relayed the broadcast.
#[derive(Debug, Clone, Copy, Default)]
pub struct LeaderElection<Id>(PhantomData<Id>);

impl<Id> LeaderElection<Id> {
    pub fn new() -> Self {
        LeaderElection(PhantomData)
    }
}

impl<Id: NodeId> Protocol for LeaderElection<Id> {
    type State = LeaderState<Id>;
    type Msg = LeaderMsg<Id>;
    type Output = LeaderInfo<Id>;

    fn send(&self, s: &LeaderState<Id>) -> Option<LeaderMsg<Id>> {
        s.core.message(s.round + 1)
    }

    fn receive(&self, s: &mut LeaderState<Id>, inbox: &[&LeaderMsg<Id>]) -> Option<NodeOutput<LeaderInfo<Id>>> {
        s.round += 1;
        s.core.absorb(s.round, inbox.iter().copied());
        let a = s.core.announcement?;
        let done = if s.core.dist < a.ecc { s.round == a.learned + 1 } else { true };
        done.then(|| NodeOutput::Label(LeaderInfo { leader: s.core.leader.clone(), dist: s.core.dist, ecc: a.ecc }))
    }
}

impl<Id: NodeId> IdProtocol for LeaderElection<Id> {
    type Id = Id;

    fn start(&self, _: &LocalInput, id: Id) -> Init<LeaderState<Id>, LeaderInfo<Id>> {
        Init::Run(LeaderState { round: 0, core: LeaderCore::new(id) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_ids, sample_gnp, Rng, Stream};
    use crate::graph::{bfs_distances, enumerate_connected_graphs, Graph};
    use crate::protocols::EngineIds;
    use crate::sim::{check_message_budget, Engine, ModelKind, RunOptions};

    fn elect(engine: &mut Engine, g: &Graph, ids: &[u32]) -> Vec<LeaderInfo<u32>> {
        let opts = RunOptions::default().with_ids(ids.to_vec());
        let t = engine.run(g, &EngineIds(LeaderElection::new()), ModelKind::BCongest, &opts).unwrap();
        assert!(check_message_budget(&t, t.budget.unwrap()));
        let e = expected(g, ids);
        assert!(t.rounds as u32 <= 3 * e[0].ecc + 2, "rounds {} ecc {}", t.rounds, e[0].ecc);
        t.outcome().solved().expect("solved").to_vec()
    }

    fn expected(g: &Graph, ids: &[u32]) -> Vec<LeaderInfo<u32>> {
        let root = (0..g.n()).min_by_key(|&v| ids[v]).unwrap();
        let d: Vec<u32> = bfs_distances(g, root).into_iter().map(|d| d.unwrap() as u32).collect();
        let ecc = *d.iter().max().unwrap();
        d.into_iter().map(|dist| LeaderInfo { leader: ids[root], dist, ecc }).collect()
    }

    #[test]
    fn triangle_and_path() {
        let mut e = Engine::default();
        let k3 = elect(&mut e, &Graph::complete(3), &[3, 1, 2]);
        assert!(k3.iter().all(|i| i.leader == 1 && i.ecc == 1));
        let p4 = elect(&mut e, &Graph::path(4), &[1, 2, 3, 4]);
        assert_eq!(p4.iter().map(|i| i.dist).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert!(p4.iter().all(|i| i.leader == 1 && i.ecc == 3));
    }

    #[test]
    fn exhaustive_small_graphs() {
        let mut e = Engine::default();
        let mut rng = Rng::new(7, Stream::Ids);
        for n in 1..=6 {
            for g in enumerate_connected_graphs(n).unwrap() {
                for _ in 0..2 {
                    let ids: Vec<u32> = rng.permutation(n).into_iter().map(|x| x as u32 + 1).collect();
                    assert_eq!(elect(&mut e, &g, &ids), expected(&g, &ids), "{g:?} {ids:?}");
                }
            }
        }
    }

    #[test]
    fn random_graphs() {
        let mut e = Engine::default();
        for seed in 0..20 {
            for (n, p) in [(60, 0.05), (120, 0.03), (200, 0.3)] {
                let g = sample_gnp(n, p, seed).unwrap();
                if !g.is_connected() {
                    continue;
                }
                let ids = random_ids(n, seed);
                assert_eq!(elect(&mut e, &g, &ids), expected(&g, &ids));
            }
        }
    }

    #[test]
    fn long_paths_and_cycles() {
        let mut e = Engine::default();
        for n in [10, 25, 40] {
            for seed in 0..5 {
                let ids = random_ids(n, seed);
                for g in [Graph::path(n), Graph::cycle(n)] {
                    assert_eq!(elect(&mut e, &g, &ids), expected(&g, &ids));
                }
            }
        }
    }
}
