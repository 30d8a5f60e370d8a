//! Color refinement: `C_0(x) = deg x`, `C_r(x)` = multiset of `C_{r-1}`
//! over the neighbors of `x`.
//!
//! Colors are dense integers handed out per round by a [`CrInterner`]; the
//! key for a round-`r` color is its sorted list of round-`(r-1)` colors, so
//! equal integers mean equal multisets. Sharing one interner across graphs
//! makes their colors comparable.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub round: usize,
    pub colors: Vec<u32>,
}

impl Coloring {
    pub fn num_classes(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }
}

#[derive(Debug, Default, Clone)]
pub struct CrInterner {
    rounds: Vec<HashMap<Vec<u32>, u32>>,
    keys: Vec<Vec<Vec<u32>>>,
}

impl CrInterner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, round: usize, key: Vec<u32>) -> u32 {
        while self.rounds.len() <= round {
            self.rounds.push(HashMap::new());
            self.keys.push(Vec::new());
        }
        let next = self.rounds[round].len() as u32;
        let keys = &mut self.keys[round];
        *self.rounds[round].entry(key).or_insert_with_key(|k| {
            keys.push(k.clone());
            next
        })
    }

    /// The key behind a color: `[degree]` at round 0, otherwise the sorted
    /// previous-round colors.
    pub fn key(&self, round: usize, color: u32) -> Option<&[u32]> {
        self.keys.get(round)?.get(color as usize).map(Vec::as_slice)
    }

    /// Fully expanded nested encoding of a color, for display and
    /// cross-checks. Exponential in `round`.
    pub fn expand(&self, round: usize, color: u32) -> String {
        let key = self.key(round, color).expect("known color");
        if round == 0 {
            return key[0].to_string();
        }
        let parts: Vec<String> = key.iter().map(|&c| self.expand(round - 1, c)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

pub fn color_refinement(g: &Graph, r_max: usize) -> Vec<Coloring> {
    color_refinement_with(g, r_max, &mut CrInterner::new())
}

pub fn color_refinement_with(g: &Graph, r_max: usize, interner: &mut CrInterner) -> Vec<Coloring> {
    let mut out = Vec::with_capacity(r_max + 1);
    let c0 = (0..g.n()).map(|v| interner.intern(0, vec![g.degree(v) as u32])).collect();
    out.push(Coloring { round: 0, colors: c0 });
    let mut key = Vec::new();
    for r in 1..=r_max {
        let prev = &out[r - 1].colors;
        let colors = (0..g.n())
            .map(|v| {
                key.clear();
                key.extend(g.neighbors(v).iter().map(|&u| prev[u]));
                key.sort_unstable();
                interner.intern(r, key.clone())
            })
            .collect();
        out.push(Coloring { round: r, colors });
    }
    out
}

/// `S_r(G)`, the set of round-`r` colors.
pub fn color_set(g: &Graph, r: usize, interner: &mut CrInterner) -> BTreeSet<u32> {
    color_refinement_with(g, r, interner).pop().unwrap().colors.into_iter().collect()
}

/// Whether equal colors in `finer` imply equal colors in `coarser`.
pub fn partition_refines(finer: &[u32], coarser: &[u32]) -> bool {
    let mut seen: HashMap<u32, u32> = HashMap::new();
    finer.iter().zip(coarser).all(|(&f, &c)| *seen.entry(f).or_insert(c) == c)
}
