//! Graph problems as plugins for the reconstruct-then-solve protocols.
//!
//! A labeling is a vector indexed by node; the solvers index nodes by
//! sorted identifier, so "lexicographically least" is well defined across
//! nodes that reconstructed the same graph.

use std::fmt::Debug;

use serde::Serialize;

use crate::graph::{components, enumerate_triangles, Graph};

pub trait ProblemPlugin {
    type Label: Clone + Ord + Debug + Serialize;

    fn name(&self) -> &'static str;

    /// Membership of `labels` in the solution set of `g`.
    fn is_valid(&self, g: &Graph, labels: &[Self::Label]) -> bool;

    /// The lexicographically least valid labeling, if any.
    fn least_solution(&self, g: &Graph) -> Option<Vec<Self::Label>>;

    /// Labels worth trying per node in brute-force checks.
    fn alphabet(&self, g: &Graph) -> Vec<Self::Label>;
}

/// Least valid labeling by exhaustive search over `alphabet^n`.
pub fn brute_force_least<P: ProblemPlugin>(plugin: &P, g: &Graph) -> Option<Vec<P::Label>> {
    let mut alphabet = plugin.alphabet(g);
    alphabet.sort();
    alphabet.dedup();
    let n = g.n();
    if n == 0 {
        return plugin.is_valid(g, &[]).then(Vec::new);
    }
    if alphabet.is_empty() {
        return None;
    }
    let mut idx = vec![0usize; n];
    loop {
        let labels: Vec<P::Label> = idx.iter().map(|&i| alphabet[i].clone()).collect();
        if plugin.is_valid(g, &labels) {
            return Some(labels);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < alphabet.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn component_of(g: &Graph) -> Vec<usize> {
    let mut comp = vec![0; g.n()];
    for (c, nodes) in components(g).iter().enumerate() {
        for &v in nodes {
            comp[v] = c;
        }
    }
    comp
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Leader,
    Follower,
}

/// One leader per connected component.
#[derive(Debug, Clone, Copy, Default)]
pub struct LeaderPlugin;

impl ProblemPlugin for LeaderPlugin {
    type Label = Role;

    fn name(&self) -> &'static str {
        "leader"
    }

    fn is_valid(&self, g: &Graph, labels: &[Role]) -> bool {
        labels.len() == g.n()
            && components(g).iter().all(|c| c.iter().filter(|&&v| labels[v] == Role::Leader).count() == 1)
    }

    fn least_solution(&self, g: &Graph) -> Option<Vec<Role>> {
        let mut labels = vec![Role::Follower; g.n()];
        for c in components(g) {
            labels[*c.iter().min()?] = Role::Leader;
        }
        Some(labels)
    }

    fn alphabet(&self, _: &Graph) -> Vec<Role> {
        vec![Role::Leader, Role::Follower]
    }
}

/// Proper vertex coloring with colors `0, 1, ...`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ColoringPlugin;

impl ProblemPlugin for ColoringPlugin {
    type Label = u32;

    fn name(&self) -> &'static str {
        "coloring"
    }

    fn is_valid(&self, g: &Graph, labels: &[u32]) -> bool {
        labels.len() == g.n() && g.edges().all(|(u, v)| labels[u] != labels[v])
    }

    /// First-fit in node order.
    fn least_solution(&self, g: &Graph) -> Option<Vec<u32>> {
        let mut labels: Vec<u32> = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let mut used: Vec<u32> = g.neighbors(v).iter().filter(|&&u| u < v).map(|&u| labels[u]).collect();
            used.sort_unstable();
            used.dedup();
            let c = used.iter().enumerate().find(|&(i, &c)| i as u32 != c).map_or(used.len() as u32, |(i, _)| i as u32);
            labels.push(c);
        }
        Some(labels)
    }

    fn alphabet(&self, g: &Graph) -> Vec<u32> {
        (0..g.n().max(1) as u32).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    No,
    Yes,
}

/// Per component: some node answers yes iff the component has a triangle.
#[derive(Debug, Clone, Copy, Default)]
pub struct HasTrianglePlugin;

impl HasTrianglePlugin {
    fn triangle_components(g: &Graph) -> Vec<bool> {
        let comp = component_of(g);
        let mut has = vec![false; components(g).len()];
        for t in enumerate_triangles(g) {
            has[comp[t[0]]] = true;
        }
        has
    }
}

impl ProblemPlugin for HasTrianglePlugin {
    type Label = Answer;

    fn name(&self) -> &'static str {
        "has-triangle"
    }

    fn is_valid(&self, g: &Graph, labels: &[Answer]) -> bool {
        if labels.len() != g.n() {
            return false;
        }
        let comp = component_of(g);
        let has = Self::triangle_components(g);
        let mut yes = vec![false; has.len()];
        for (v, l) in labels.iter().enumerate() {
            yes[comp[v]] |= *l == Answer::Yes;
        }
        yes == has
    }

    /// All `No`, except the last node of each component with a triangle.
    fn least_solution(&self, g: &Graph) -> Option<Vec<Answer>> {
        let has = Self::triangle_components(g);
        let mut labels = vec![Answer::No; g.n()];
        for (c, nodes) in components(g).iter().enumerate() {
            if has[c] {
                labels[*nodes.iter().max()?] = Answer::Yes;
            }
        }
        Some(labels)
    }

    fn alphabet(&self, _: &Graph) -> Vec<Answer> {
        vec![Answer::No, Answer::Yes]
    }
}

/// Each node outputs its own degree; a sanity plugin with a unique solution.
#[derive(Debug, Clone, Copy, Default)]
pub struct DegreePlugin;

impl ProblemPlugin for DegreePlugin {
    type Label = u32;

    fn name(&self) -> &'static str {
        "degree"
    }

    fn is_valid(&self, g: &Graph, labels: &[u32]) -> bool {
        labels.len() == g.n() && labels.iter().enumerate().all(|(v, &d)| d as usize == g.degree(v))
    }

    fn least_solution(&self, g: &Graph) -> Option<Vec<u32>> {
        Some(g.degrees().into_iter().map(|d| d as u32).collect())
    }

    fn alphabet(&self, g: &Graph) -> Vec<u32> {
        (0..g.n().max(1) as u32).collect()
    }
}
