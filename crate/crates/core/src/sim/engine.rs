use sha2::{Digest as _, Sha256};

use super::model::{default_budget, ModelKind};
use super::program::{Init, LocalInput, NodeOutput, NodeProgram};
use super::transcript::{BudgetViolation, RoundRecord, TraceLevel, Transcript};
use super::wire::{Wire, WireWriter};
use crate::error::{input, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Defaults to `4 * n` (at least 1).
    pub max_rounds: Option<usize>,
    /// Required by identifier models: a permutation of `1..=n`, indexed by node.
    pub ids: Option<Vec<u32>>,
    pub n_known: bool,
    pub trace: TraceLevel,
    /// Overrides the default budget of bounded models.
    pub bit_budget: Option<u64>,
}

impl RunOptions {
    pub fn with_ids(mut self, ids: Vec<u32>) -> Self {
        self.ids = Some(ids);
        self
    }

    pub fn with_max_rounds(mut self, r: usize) -> Self {
        self.max_rounds = Some(r);
        self
    }

    pub fn knowing_n(mut self) -> Self {
        self.n_known = true;
        self
    }

    pub fn traced(mut self, level: TraceLevel) -> Self {
        self.trace = level;
        self
    }

    pub fn with_budget(mut self, bits: u64) -> Self {
        self.bit_budget = Some(bits);
        self
    }
}

/// Runs `program` on every node of `g` under `model`.
pub fn run<P: NodeProgram>(g: &Graph, program: &P, model: ModelKind, opts: &RunOptions) -> Result<Transcript<P::Output>> {
    Engine::default().run(g, program, model, opts)
}

/// Reusable scratch space for repeated runs.
#[derive(Default)]
pub struct Engine {
    arena: Vec<u8>,
    spans: Vec<(usize, usize)>,
    senders: Vec<usize>,
    rank: Vec<u32>,
    rep: Vec<usize>,
    buf: Vec<u32>,
    writer: WireWriter,
}

fn validate_ids(ids: &[u32], n: usize) -> Result<()> {
    if ids.len() != n {
        return input(format!("{} identifiers for {n} nodes", ids.len()));
    }
    let mut seen = vec![false; n + 1];
    for &i in ids {
        let i = i as usize;
        if i == 0 || i > n || seen[i] {
            return input("identifiers must be a permutation of 1..=n");
        }
        seen[i] = true;
    }
    Ok(())
}

fn state_digest<S: Wire>(s: &S, w: &mut WireWriter, n: usize) -> String {
    w.reset(n);
    s.encode(w);
    hex::encode(Sha256::digest(w.bytes()))
}

impl Engine {
    pub fn run<P: NodeProgram>(
        &mut self,
        g: &Graph,
        program: &P,
        model: ModelKind,
        opts: &RunOptions,
    ) -> Result<Transcript<P::Output>> {
        let n = g.n();
        let max_rounds = opts.max_rounds.unwrap_or(4 * n).max(1);
        if opts.max_rounds == Some(0) {
            return input("max_rounds must be at least 1");
        }
        match (&opts.ids, model.has_ids()) {
            (None, true) => return input(format!("model {model} requires identifiers")),
            (Some(_), false) => return input(format!("model {model} is anonymous; identifiers not accepted")),
            (Some(ids), true) => validate_ids(ids, n)?,
            (None, false) => {}
        }
        let budget = model.has_budget().then(|| opts.bit_budget.unwrap_or_else(|| default_budget(n)));
        let trace = opts.trace;

        let mut states: Vec<Option<P::State>> = Vec::with_capacity(n);
        let mut outputs: Vec<Option<NodeOutput<P::Output>>> = vec![None; n];
        let mut halt_rounds = vec![None; n];
        let mut running = vec![false; n];
        let mut active = 0usize;
        for v in 0..n {
            let input = LocalInput {
                degree: g.degree(v),
                n: opts.n_known.then_some(n),
                id: opts.ids.as_ref().map(|ids| ids[v]),
            };
            match program.init(&input) {
                Init::Run(s) => {
                    states.push(Some(s));
                    running[v] = true;
                    active += 1;
                }
                Init::Halt(o) => {
                    states.push(None);
                    outputs[v] = Some(o);
                    halt_rounds[v] = Some(0);
                }
            }
        }

        let mut per_round = Vec::new();
        if trace >= TraceLevel::States {
            for v in 0..n {
                per_round.push(RoundRecord {
                    round: 0,
                    node: v,
                    halted: !running[v],
                    state_digest: states[v].as_ref().map(|s| state_digest(s, &mut self.writer, n)),
                    sent: None,
                    sent_bits: None,
                    received: None,
                });
            }
        }

        let mut msgs: Vec<Option<P::Msg>> = (0..n).map(|_| None).collect();
        let mut bits_of = vec![0u64; n];
        let mut max_bits = 0u64;
        let mut sent_total = 0u64;
        let mut violation = None;
        let mut timed_out = false;
        let mut round = 0usize;
        self.rank.resize(n, 0);

        'rounds: while active > 0 {
            if round == max_rounds {
                timed_out = true;
                break;
            }
            round += 1;

            self.arena.clear();
            self.spans.clear();
            self.spans.resize(n, (0, 0));
            self.senders.clear();
            for v in 0..n {
                msgs[v] = if running[v] { program.send(states[v].as_ref().unwrap()) } else { None };
                if let Some(m) = &msgs[v] {
                    self.writer.reset(n);
                    m.encode(&mut self.writer);
                    let start = self.arena.len();
                    self.arena.extend_from_slice(self.writer.bytes());
                    self.spans[v] = (start, self.arena.len());
                    let bits = self.writer.bit_len();
                    bits_of[v] = bits;
                    max_bits = max_bits.max(bits);
                    sent_total += 1;
                    self.senders.push(v);
                    if let Some(b) = budget {
                        if bits > b && violation.is_none() {
                            violation = Some(BudgetViolation { round, node: v, bits, budget: b });
                        }
                    }
                }
            }
            if violation.is_some() {
                break 'rounds;
            }

            let (arena, spans) = (&self.arena, &self.spans);
            let key = |v: usize| &arena[spans[v].0..spans[v].1];
            self.senders.sort_unstable_by(|&a, &b| key(a).cmp(key(b)));
            self.rep.clear();
            for (i, &v) in self.senders.iter().enumerate() {
                if i == 0 || key(self.senders[i - 1]) != key(v) {
                    self.rep.push(v);
                }
                self.rank[v] = (self.rep.len() - 1) as u32;
            }

            let mut inbox: Vec<&P::Msg> = Vec::with_capacity(g.max_degree());
            let mut traffic: Vec<(Option<String>, Option<u64>, Option<Vec<String>>)> = Vec::new();
            if trace == TraceLevel::Full {
                traffic.resize(n, (None, None, None));
            }
            for v in 0..n {
                if !running[v] {
                    continue;
                }
                self.buf.clear();
                for &u in g.neighbors(v) {
                    if msgs[u].is_some() {
                        self.buf.push(self.rank[u]);
                    }
                }
                self.buf.sort_unstable();
                if model.delivers_sets() {
                    self.buf.dedup();
                }
                if trace == TraceLevel::Full {
                    let received = self.buf.iter().map(|&r| hex::encode(key(self.rep[r as usize]))).collect();
                    let sent = msgs[v].as_ref().map(|_| hex::encode(key(v)));
                    traffic[v] = (sent, msgs[v].as_ref().map(|_| bits_of[v]), Some(received));
                }
                inbox.clear();
                inbox.extend(self.buf.iter().map(|&r| msgs[self.rep[r as usize]].as_ref().unwrap()));
                if let Some(out) = program.receive(states[v].as_mut().unwrap(), &inbox) {
                    outputs[v] = Some(out);
                    halt_rounds[v] = Some(round);
                    running[v] = false;
                    active -= 1;
                }
            }
            drop(inbox);

            if trace >= TraceLevel::States {
                let mut traffic = traffic.into_iter();
                for v in 0..n {
                    let (sent, sent_bits, received) = traffic.next().unwrap_or_default();
                    per_round.push(RoundRecord {
                        round,
                        node: v,
                        halted: halt_rounds[v].is_some(),
                        state_digest: states[v].as_ref().map(|s| state_digest(s, &mut self.writer, n)),
                        sent,
                        sent_bits,
                        received,
                    });
                }
            }
        }

        let rounds = halt_rounds.iter().flatten().copied().max().unwrap_or(0);
        Ok(Transcript {
            model,
            n,
            rounds,
            max_message_bits: max_bits,
            messages_sent: sent_total,
            outputs,
            halt_rounds,
            timed_out,
            budget,
            budget_violation: violation,
            per_round,
        })
    }
}
