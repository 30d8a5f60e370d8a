use crate::graph::{Graph, Node};

/// A degree-preserving switch: edges `{x1,x2}`, `{x3,x4}` replaced by
/// `{x1,x4}`, `{x2,x3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Switch {
    pub graph: Graph,
    pub quadruple: [Node; 4],
}

/// Scans `u` in the given order for a variable quadruple and applies the
/// first one found.
pub fn variable_quadruple_switch(g: &Graph, u: &[Node]) -> Option<Switch> {
    for &x1 in u {
        for &x2 in u {
            if !g.has_edge(x1, x2) {
                continue;
            }
            for &x3 in u {
                if x3 == x1 || x3 == x2 || g.has_edge(x2, x3) {
                    continue;
                }
                for &x4 in u {
                    if x4 == x1 || x4 == x2 || !g.has_edge(x3, x4) || g.has_edge(x1, x4) {
                        continue;
                    }
                    return Some(Switch { graph: apply(g, [x1, x2, x3, x4]), quadruple: [x1, x2, x3, x4] });
                }
            }
        }
    }
    None
}

fn apply(g: &Graph, [x1, x2, x3, x4]: [Node; 4]) -> Graph {
    let key = |a: Node, b: Node| (a.min(b), a.max(b));
    let removed = [key(x1, x2), key(x3, x4)];
    let edges = g
        .edges()
        .filter(|e| !removed.contains(e))
        .chain([key(x1, x4), key(x2, x3)]);
    Graph::from_edges(g.n(), edges).expect("switch keeps the graph simple")
}
