//! Search for independent sets `I` of a given size in which every node
//! outside `I` has at least two neighbors inside `I`.
//!
//! Each restart shuffles the node order and runs a depth-first search for
//! independent `k`-sets with a greedy-coloring bound (independent sets of
//! `g` are cliques of its complement), testing 2-domination at every leaf.
//! Restarts stop at an expansion budget, so the search may miss sets that
//! exist.

use super::rng::{Rng, Stream};
use crate::graph::{Graph, Node};

pub const DEFAULT_RESTARTS: usize = 200;
pub const DEFAULT_EXPANSIONS_PER_RESTART: u64 = 20_000;

#[derive(Debug, Clone, Copy)]
pub struct DomSetBudget {
    pub restarts: usize,
    pub expansions_per_restart: u64,
}

impl Default for DomSetBudget {
    fn default() -> Self {
        DomSetBudget { restarts: DEFAULT_RESTARTS, expansions_per_restart: DEFAULT_EXPANSIONS_PER_RESTART }
    }
}

pub fn is_2dominating_independent(g: &Graph, set: &[Node]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    set.iter().all(|&a| set.iter().all(|&b| !g.has_edge(a, b)))
        && (0..g.n())
            .filter(|&v| !inside[v])
            .all(|v| g.neighbors(v).iter().filter(|&&w| inside[w]).count() >= 2)
}

pub fn find_2dominating_independent_set(g: &Graph, k: usize, seed: u64) -> Option<Vec<Node>> {
    find_2dominating_independent_set_with(g, k, seed, DomSetBudget::default())
}

pub fn find_2dominating_independent_set_with(
    g: &Graph,
    k: usize,
    seed: u64,
    budget: DomSetBudget,
) -> Option<Vec<Node>> {
    let n = g.n();
    if k < 2 || k > n {
        return None;
    }
    let mut rng = Rng::new(seed, Stream::Search);
    for _ in 0..budget.restarts {
        let order = rng.permutation(n);
        let mut s = Search::new(g, &order, k, budget.expansions_per_restart);
        let all = Bits::full(n);
        if s.expand(all) {
            let mut out: Vec<Node> = s.chosen.iter().map(|&i| order[i]).collect();
            out.sort_unstable();
            return Some(out);
        }
        if s.exhaustive {
            return None;
        }
    }
    None
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn full(n: usize) -> Bits {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn first(&self) -> Option<usize> {
        self.0.iter().position(|&w| w != 0).map(|i| i * 64 + self.0[i].trailing_zeros() as usize)
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn and_not(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a &= !b;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    order: &'a [Node],
    /// non-adjacency rows in permuted index space
    free: Vec<Bits>,
    k: usize,
    chosen: Vec<usize>,
    left: u64,
    exhaustive: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, order: &'a [Node], k: usize, budget: u64) -> Search<'a> {
        let n = g.n();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let free = (0..n)
            .map(|i| {
                let mut b = Bits::full(n);
                b.clear(i);
                for &w in g.neighbors(order[i]) {
                    b.clear(pos[w]);
                }
                b
            })
            .collect();
        Search { g, order, free, k, chosen: Vec::new(), left: budget, exhaustive: true }
    }

    /// Greedy coloring of the complement restricted to `p`; returns
    /// vertices with their color bounds in nondecreasing color order.
    fn color(&self, p: &Bits) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.clear(v);
                // a color class of the complement is a clique of g
                q.and_not(&self.free[v]);
                uncolored.clear(v);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Bits) -> bool {
        let colored = self.color(&p);
        for &(v, c) in colored.iter().rev() {
            if self.chosen.len() + c < self.k {
                return false;
            }
            if self.left == 0 {
                self.exhaustive = false;
                return false;
            }
            self.left -= 1;
            self.chosen.push(v);
            if self.chosen.len() == self.k {
                let set: Vec<Node> = self.chosen.iter().map(|&i| self.order[i]).collect();
                if is_2dominating_independent(self.g, &set) {
                    return true;
                }
            } else {
                let np = p.and(&self.free[v]);
                if self.expand(np) {
                    return true;
                }
            }
            self.chosen.pop();
            p.clear(v);
        }
        false
    }
}
