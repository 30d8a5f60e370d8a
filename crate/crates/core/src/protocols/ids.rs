//! Where identifiers come from: the engine, or an anonymous minting phase.

use crate::labeling::NodeId;
use crate::sim::{Init, LocalInput, NodeOutput, NodeProgram, Protocol, Wire, WireWriter};

/// A protocol that starts once it holds an identifier.
pub trait IdProtocol: Protocol {
    type Id: NodeId;

    fn start(&self, input: &LocalInput, id: Self::Id) -> Init<Self::State, Self::Output>;
}

/// Runs an identifier protocol on the engine-supplied `1..=n` identifiers.
#[derive(Debug, Clone, Copy, Default)]
pub struct EngineIds<P>(pub P);

impl<P: IdProtocol> Protocol for EngineIds<P> {
    type State = P::State;
    type Msg = P::Msg;
    type Output = P::Output;

    fn send(&self, s: &P::State) -> Option<P::Msg> {
        self.0.send(s)
    }

    fn receive(&self, s: &mut P::State, inbox: &[&P::Msg]) -> Option<NodeOutput<P::Output>> {
        self.0.receive(s, inbox)
    }
}

impl<P: IdProtocol<Id = u32>> NodeProgram for EngineIds<P> {
    fn init(&self, input: &LocalInput) -> Init<P::State, P::Output> {
        match input.id {
            Some(id) => self.0.start(input, id),
            None => Init::Halt(NodeOutput::Failed),
        }
    }
}

/// Runs the anonymous program `M` until it outputs, then starts `P` with
/// that output as identifier.
#[derive(Debug, Clone, Copy)]
pub struct Minted<M, P> {
    pub minter: M,
    pub protocol: P,
}

#[derive(Debug, Clone)]
pub enum MintState<A, B> {
    Mint(A, LocalInput),
    Run(B),
}

impl<A: Wire, B: Wire> Wire for MintState<A, B> {
    fn encode(&self, w: &mut WireWriter) {
        match self {
            MintState::Mint(a, _) => {
                w.tag(0);
                a.encode(w);
            }
            MintState::Run(b) => {
                w.tag(1);
                b.encode(w);
            }
        }
    }
}

/// All nodes switch phase in the same round, so the inner encodings are
/// sent untagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MintMsg<A, B> {
    Mint(A),
    Run(B),
}

impl<A: Wire, B: Wire> Wire for MintMsg<A, B> {
    fn encode(&self, w: &mut WireWriter) {
        match self {
            MintMsg::Mint(a) => a.encode(w),
            MintMsg::Run(b) => b.encode(w),
        }
    }
}

impl<M, P> Minted<M, P>
where
    M: NodeProgram,
    P: IdProtocol<Id = M::Output>,
{
    fn begin(&self, input: &LocalInput, out: NodeOutput<M::Output>) -> Init<MintState<M::State, P::State>, P::Output> {
        match out {
            NodeOutput::Label(id) => match self.protocol.start(input, id) {
                Init::Run(b) => Init::Run(MintState::Run(b)),
                Init::Halt(o) => Init::Halt(o),
            },
            NodeOutput::Failed => Init::Halt(NodeOutput::Failed),
        }
    }
}

impl<M, P> Protocol for Minted<M, P>
where
    M: NodeProgram,
    P: IdProtocol<Id = M::Output>,
{
    type State = MintState<M::State, P::State>;
    type Msg = MintMsg<M::Msg, P::Msg>;
    type Output = P::Output;

    fn send(&self, s: &Self::State) -> Option<Self::Msg> {
        match s {
            MintState::Mint(a, _) => self.minter.send(a).map(MintMsg::Mint),
            MintState::Run(b) => self.protocol.send(b).map(MintMsg::Run),
        }
    }

    fn receive(&self, s: &mut Self::State, inbox: &[&Self::Msg]) -> Option<NodeOutput<P::Output>> {
        match s {
            MintState::Mint(a, input) => {
                let msgs: Vec<&M::Msg> = inbox
                    .iter()
                    .filter_map(|m| match m {
                        MintMsg::Mint(x) => Some(x),
                        MintMsg::Run(_) => None,
                    })
                    .collect();
                let input = *input;
                let out = self.minter.receive(a, &msgs)?;
                match self.begin(&input, out) {
                    Init::Run(next) => {
                        *s = next;
                        None
                    }
                    Init::Halt(o) => Some(o),
                }
            }
            MintState::Run(b) => {
                let msgs: Vec<&P::Msg> = inbox
                    .iter()
                    .filter_map(|m| match m {
                        MintMsg::Run(x) => Some(x),
                        MintMsg::Mint(_) => None,
                    })
                    .collect();
                self.protocol.receive(b, &msgs)
            }
        }
    }
}

impl<M, P> NodeProgram for Minted<M, P>
where
    M: NodeProgram,
    P: IdProtocol<Id = M::Output>,
{
    fn init(&self, input: &LocalInput) -> Init<Self::State, P::Output> {
        match self.minter.init(input) {
            Init::Run(a) => Init::Run(MintState::Mint(a, *input)),
            Init::Halt(out) => self.begin(input, out),
        }
    }
}
