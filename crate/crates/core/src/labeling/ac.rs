//! Identifiers from the set of neighbor degrees, bucketed by residue.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{input, Result};
use crate::graph::Graph;
use crate::sim::wire::{bits_for, ceil_log2};
use crate::sim::{Init, LocalInput, NodeOutput, NodeProgram, Protocol, Wire, WireWriter};

/// `s_r` = sum of the distinct neighbor degrees `d` with `d ≡ r (mod C)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdVector {
    s: Arc<[u64]>,
}

impl IdVector {
    /// Builds the vector from distinct degrees.
    pub fn from_distinct_degrees(degrees: impl IntoIterator<Item = u64>, c: u32) -> IdVector {
        let mut s = vec![0u64; c as usize];
        for d in degrees {
            s[(d % c as u64) as usize] += d;
        }
        IdVector { s: s.into() }
    }

    pub fn from_entries(s: Vec<u64>) -> IdVector {
        IdVector { s: s.into() }
    }

    pub fn modulus(&self) -> u32 {
        self.s.len() as u32
    }

    pub fn entries(&self) -> &[u64] {
        &self.s
    }

    /// Per-entry width on an `n`-node host: `ceil(log2 n) + ceil(log2 C) + 2`,
    /// widened if some entry does not fit.
    pub fn entry_width(&self, n: u64) -> u32 {
        let nominal = ceil_log2(n) + ceil_log2(self.modulus() as u64) + 2;
        let needed = self.s.iter().map(|&x| bits_for(x)).max().unwrap_or(0);
        nominal.max(needed)
    }

    pub fn bit_len(&self, n: u64) -> u64 {
        self.modulus() as u64 * self.entry_width(n) as u64
    }

    /// Upper bound `C * (ceil(log2 n) + ceil(log2 C) + 2)`.
    pub fn nominal_bits(c: u32, n: u64) -> u64 {
        c as u64 * (ceil_log2(n) + ceil_log2(c as u64) + 2) as u64
    }
}

impl Wire for IdVector {
    fn encode(&self, w: &mut WireWriter) {
        let width = self.entry_width(w.host_n());
        for &x in self.s.iter() {
            w.fixed(x, width);
        }
    }
}

impl fmt::Debug for IdVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `s_0,s_1,...` as in the identifier dump format.
impl fmt::Display for IdVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.s.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl Serialize for IdVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.s.iter())
    }
}

/// `ceil(max(22 / (eps (1 - eps)), 100 / eps)) + 1`.
pub fn choose_modulus(eps: f64) -> Result<u32> {
    if !(eps > 0.0 && eps < 1.0) {
        return input(format!("epsilon {eps} outside (0, 1)"));
    }
    let bound = (22.0 / (eps * (1.0 - eps))).max(100.0 / eps);
    // absorb rounding noise so exact integers stay put
    Ok((bound - 1e-9).ceil() as u32 + 1)
}

/// `1 + ln p / ln n`, the exponent with `p = n^(eps - 1)`.
pub fn epsilon_from(n: usize, p: f64) -> Result<f64> {
    if n < 2 || !(p > 0.0 && p <= 1.0) {
        return input(format!("epsilon undefined for n = {n}, p = {p}"));
    }
    Ok(1.0 + p.ln() / (n as f64).ln())
}

/// Sorted distinct neighbor degrees of `v`.
pub fn distinct_neighbor_degrees(g: &Graph, v: usize) -> Vec<u64> {
    let mut d: Vec<u64> = g.neighbors(v).iter().map(|&u| g.degree(u) as u64).collect();
    d.sort_unstable();
    d.dedup();
    d
}

pub fn alg_ac(g: &Graph, c: u32) -> Vec<IdVector> {
    assert!(c >= 1);
    (0..g.n()).map(|v| IdVector::from_distinct_degrees(distinct_neighbor_degrees(g, v), c)).collect()
}

pub fn ids_all_distinct<T: Ord>(ids: &[T]) -> bool {
    let mut refs: Vec<&T> = ids.iter().collect();
    refs.sort_unstable();
    refs.windows(2).all(|w| w[0] != w[1])
}

/// A node's degree as a one-field message.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeMsg(pub u64);

impl Wire for DegreeMsg {
    fn encode(&self, w: &mut WireWriter) {
        w.tag(0);
        w.node_int(self.0);
    }
}

/// Degree exchange followed by a local function of the set of received
/// degrees. Runs exactly one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneRoundState {
    pub degree: u64,
    pub n: Option<usize>,
}

impl Wire for OneRoundState {
    fn encode(&self, w: &mut WireWriter) {
        w.node_int(self.degree);
    }
}

/// `A_C` as a one-round program.
#[derive(Debug, Clone, Copy)]
pub struct AcProgram {
    pub c: u32,
}

impl AcProgram {
    /// Distinct degrees in a sorted inbox.
    pub(crate) fn degrees<'a>(inbox: &'a [&'a DegreeMsg]) -> impl Iterator<Item = u64> + 'a {
        let mut last = None;
        inbox.iter().filter_map(move |m| (last.replace(m.0) != Some(m.0)).then_some(m.0))
    }
}

impl Protocol for AcProgram {
    type State = OneRoundState;
    type Msg = DegreeMsg;
    type Output = IdVector;

    fn send(&self, s: &OneRoundState) -> Option<DegreeMsg> {
        Some(DegreeMsg(s.degree))
    }

    fn receive(&self, _: &mut OneRoundState, inbox: &[&DegreeMsg]) -> Option<NodeOutput<IdVector>> {
        Some(NodeOutput::Label(IdVector::from_distinct_degrees(Self::degrees(inbox), self.c)))
    }
}

impl NodeProgram for AcProgram {
    fn init(&self, input: &LocalInput) -> Init<OneRoundState, IdVector> {
        Init::Run(OneRoundState { degree: input.degree as u64, n: input.n })
    }
}
