//! Synchronous round engine for anonymous and identifier-based broadcast
//! models.

mod engine;
mod model;
mod program;
mod transcript;
pub mod wire;

pub use engine::{run, Engine, RunOptions};
pub use model::{default_budget, ModelKind};
pub use program::{Init, LocalInput, NodeOutput, NodeProgram, Protocol};
pub use transcript::{
    check_message_budget, outcome_from_outputs, BudgetViolation, Outcome, RoundRecord, TraceLevel, Transcript,
};
pub use wire::{Wire, WireWriter};

#[cfg(test)]
mod tests;
