use super::{Graph, GraphError, Node};

pub const MAX_HAMILTONIAN_N: usize = 18;
pub const MAX_ISOMORPHISM_N: usize = 8;

/// All triangles `(a, b, c)` with `a < b < c`, in lexicographic order.
pub fn enumerate_triangles(g: &Graph) -> Vec<[Node; 3]> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.has_edge(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

pub fn has_triangle(g: &Graph) -> bool {
    (0..g.n()).any(|a| g.neighbors(a).iter().any(|&b| b > a && g.common_neighbor_count(a, b) > 0))
}

/// Hamiltonian cycle test by subset DP. Graphs on fewer than 3 nodes have
/// no Hamiltonian cycle.
pub fn is_hamiltonian(g: &Graph) -> Result<bool, GraphError> {
    let n = g.n();
    if n > MAX_HAMILTONIAN_N {
        return Err(GraphError::Capacity { what: "is_hamiltonian", limit: MAX_HAMILTONIAN_N, n });
    }
    if n < 3 {
        return Ok(false);
    }
    let nbr: Vec<u32> =
        (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    // reach[mask] = endpoints v such that a path from 0 covers exactly mask and ends at v
    let full = (1u32 << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || reach[mask as usize] == 0 {
            continue;
        }
        let mut ends = reach[mask as usize];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = nbr[v] & !mask;
            while next != 0 {
                let u = next.trailing_zeros();
                next &= next - 1;
                reach[(mask | 1 << u) as usize] |= 1 << u;
            }
        }
    }
    Ok(reach[full as usize] & nbr[0] != 0)
}

/// Brute-force isomorphism test over all bijections.
pub fn are_isomorphic_small(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    let n = g.n();
    if n != h.n() {
        return Err(GraphError::SizeMismatch(n, h.n()));
    }
    if n > MAX_ISOMORPHISM_N {
        return Err(GraphError::Capacity { what: "are_isomorphic_small", limit: MAX_ISOMORPHISM_N, n });
    }
    if g.m() != h.m() {
        return Ok(false);
    }
    let (mut dg, mut dh) = (g.degrees(), h.degrees());
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(g, h, 0, &mut map, &mut used))
}

fn extend(g: &Graph, h: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == g.n() {
        return true;
    }
    for t in 0..h.n() {
        if used[t] || g.degree(v) != h.degree(t) {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != h.has_edge(map[u], t)) {
            continue;
        }
        map[v] = t;
        used[t] = true;
        if extend(g, h, v + 1, map, used) {
            return true;
        }
        used[t] = false;
    }
    false
}
