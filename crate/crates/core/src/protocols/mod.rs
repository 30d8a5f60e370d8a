//! End-to-end distributed protocols.

mod collapse;
mod ids;
mod leader;
mod maxdegree;
mod naive;
mod plugins;
mod sb4;
mod triangle;

pub use ids::{EngineIds, IdProtocol, MintMsg, MintState, Minted};
pub use leader::{Announcement, LeaderCore, LeaderElection, LeaderInfo, LeaderMsg, LeaderState};
pub use plugins::{
    brute_force_least, Answer, ColoringPlugin, DegreePlugin, HasTrianglePlugin, LeaderPlugin, ProblemPlugin, Role,
};
pub use triangle::{
    anonymous_budget, anonymous_triangle, check_witnesses, triangle_find_anonymous, triangle_find_sound,
    triangle_round_cap, AnonymousTriangle, SoundTriangle, TriangleLabel, TriangleMsg, TriangleState, WitnessCheck,
};
pub use collapse::{collapse_solver_mb, CollapseMsg, CollapsePhase, CollapseSolver, CollapseState};
pub use naive::{naive_triangle, NaiveMsg, NaiveState, NaiveTriangle};
pub use sb4::{sound_solver_sb4, Sb4State, SoundSolverSb4, SB4_ROUNDS};
pub use maxdegree::{maxdegree_truth, unique_maxdegree, unique_maxdegree_with, UmdMsg, UmdState, UniqueMaxDegree, Verdict, MAXDEGREE_ROUNDS};
