//! Random graphs and constructed instances.

mod cover;
mod domset;
mod fixtures;
mod gnp;
pub mod rng;
mod switch;

pub use cover::{bipartite_double_cover, twisted_triangle_lift, verify_covering_map, CoveringMap};
pub use domset::{
    find_2dominating_independent_set, find_2dominating_independent_set_with, is_2dominating_independent,
    DomSetBudget,
};
pub use fixtures::{appc_paths, diameter3_fixture, fig1, k4_lift, naive_counterexample_fixture, Fig1};
pub use gnp::sample_gnp;
pub use rng::{identity_ids, random_ids, Rng, Stream};
pub use switch::{variable_quadruple_switch, Switch};
