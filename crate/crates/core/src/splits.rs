//! Per-edge side counts via leaf stripping, and the Wiener index.
//!
//! Deleting a tree edge `uv` splits the vertex set into the side closer
//! to `u` and the side closer to `v`. One linear pass that repeatedly
//! strips degree-1 vertices yields both counts for every edge, and the
//! Wiener index follows as the sum of `side_u * side_v` over edges: each
//! edge is crossed by exactly that many vertex pairs.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tree::{DistanceSum, EdgeId, Tree, VertexId};

/// For every tree edge, the number of vertices strictly closer to each
/// endpoint. Indexed like [`Tree::edges`].
#[derive(Debug, Clone)]
pub struct SplitTable {
    /// `sides[e] = (closer to edges[e].0, closer to edges[e].1)`.
    sides: Vec<(DistanceSum, DistanceSum)>,
}

impl SplitTable {
    /// Side counts `(toward u, toward v)` for edge `e = (u, v)`.
    pub fn sides(&self, e: EdgeId) -> (DistanceSum, DistanceSum) {
        self.sides[e as usize]
    }

    /// Count of vertices strictly closer to endpoint `w` of edge `e`.
    pub fn side_toward(&self, tree: &Tree, e: EdgeId, w: VertexId) -> DistanceSum {
        let (u, _) = tree.endpoints(e);
        let (su, sv) = self.sides[e as usize];
        if u == w {
            su
        } else {
            sv
        }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }
}

/// Computes the [`SplitTable`] by stripping leaves with a degree-decrement
/// queue, accumulating subtree weights, in time linear in `n`.
pub fn edge_splits(tree: &Tree) -> SplitTable {
    edge_splits_counted(tree).0
}

/// [`edge_splits`] plus a count of elementary steps, used to check the
/// linear-time claim empirically.
pub fn edge_splits_counted(tree: &Tree) -> (SplitTable, u64) {
    let n = tree.vertex_count();
    let mut ops: u64 = 0;
    // Every vertex starts with weight 1 (itself); stripping leaf v across
    // its last edge uv folds v's accumulated subtree into u, so w[v] is
    // exactly the vertex count on v's side of uv.
    let mut weight: Vec<DistanceSum> = vec![1; n];
    let mut degree: Vec<u32> = (0..n).map(|v| tree.degree(v as VertexId) as u32).collect();
    let mut sides: Vec<(DistanceSum, DistanceSum)> = vec![(0, 0); tree.edge_count()];
    let mut queue: Vec<VertexId> = (0..n as VertexId).filter(|&v| degree[v as usize] == 1).collect();

    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        ops += 1;
        if degree[v as usize] != 1 {
            // The far endpoint of the final edge; nothing left to strip.
            continue;
        }
        // The unique not-yet-stripped neighbor. Each vertex scans its own
        // list once, so the total scan cost is the degree sum, 2(n-1).
        let (u, e) = {
            let mut found = None;
            for &(u, e) in tree.neighbors(v) {
                ops += 1;
                if degree[u as usize] > 0 {
                    found = Some((u, e));
                    break;
                }
            }
            found.expect("a degree-1 vertex has a live neighbor")
        };

        let w = weight[v as usize];
        let (a, _) = tree.endpoints(e);
        sides[e as usize] = if a == v {
            (w, n as DistanceSum - w)
        } else {
            (n as DistanceSum - w, w)
        };
        weight[u as usize] += w;
        degree[v as usize] = 0;
        degree[u as usize] -= 1;
        ops += 3;
        if degree[u as usize] == 1 {
            queue.push(u);
        }
    }

    (SplitTable { sides }, ops)
}

/// Wiener index from side counts: `sum over edges of side_u * side_v`.
pub fn wiener_from_splits(splits: &SplitTable) -> DistanceSum {
    splits.sides.iter().map(|&(a, b)| a * b).sum()
}

/// Wiener index by breadth-first search from every vertex. Quadratic;
/// the reference the linear route is checked against.
pub fn wiener_bfs(tree: &Tree) -> DistanceSum {
    let mut total: DistanceSum = 0;
    for src in 0..tree.vertex_count() as VertexId {
        let dist = tree.bfs_distances(src);
        total += dist.iter().map(|&d| d as DistanceSum).sum::<DistanceSum>();
    }
    total / 2
}

/// Exact average pairwise distance `d / C(n,2)`.
pub fn average_distance(d: DistanceSum, n: u64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    let pairs = n as i128 * (n as i128 - 1) / 2;
    Ok(Ratio::new(d as i128, pairs))
}

/// Smallest Wiener index over trees on `n` vertices, attained by stars.
pub fn wiener_lower_bound(n: u64) -> DistanceSum {
    ((n - 1) * (n - 1)) as DistanceSum
}

/// Largest Wiener index over trees on `n` vertices, attained by paths:
/// `C(n+1, 3)`.
pub fn wiener_upper_bound(n: u64) -> DistanceSum {
    let n = n as i128;
    ((n + 1) * n * (n - 1) / 6) as DistanceSum
}
