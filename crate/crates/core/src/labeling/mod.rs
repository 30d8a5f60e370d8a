//! Identifier generation and canonical labeling.

mod ac;
mod bes;
mod gather;
mod refine;
mod universal;

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::sim::Wire;

pub use ac::{
    alg_ac, choose_modulus, distinct_neighbor_degrees, epsilon_from, ids_all_distinct, AcProgram, DegreeMsg, IdVector,
    OneRoundState,
};
pub use bes::{bes_m, bes_one_round, BesLabel, BesProgram};
pub use gather::{gather_all, Entries, Entry, GatherCore, GatherResult, ReconstructedGraph};
pub use refine::{color_refinement, color_refinement_with, color_set, partition_refines, Coloring, CrInterner};
pub use universal::{Digest, UniversalProgram, UniversalState, ViewMsg, ViewTree};

/// Values usable as node identifiers.
pub trait NodeId: Clone + Ord + Hash + Debug + Wire + Serialize {}

impl<T: Clone + Ord + Hash + Debug + Wire + Serialize> NodeId for T {}
