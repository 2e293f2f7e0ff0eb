//! Direct evaluation of the Wiener-index drop caused by one inset edge.
//!
//! Adding a non-tree edge `xy` to a tree creates a single cycle through
//! the tree path from `x` to `y`. Only pairs of vertices hanging off
//! opposite halves of that cycle get closer, and their total saving has
//! a closed bilinear form: with `vx[i]`/`vy[j]` the sizes of the subtrees
//! hanging off the i-th vertex from `x` and the j-th from `y`, the drop is
//!
//! ```text
//! D'(xy) = sum over i,j of max(k + 2 - 2(i+j), 0) * vx[i] * vy[j]
//! ```
//!
//! where `k = d(x,y) + 1` is the cycle length. This module computes the
//! drop three independent ways (the bilinear form above, a pairwise sum
//! over cycle vertices, and a brute-force all-pairs shortcut count) so
//! the sweep in [`crate::sweep`] can be cross-validated against all of
//! them.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::splits::SplitTable;
use crate::tree::{DistanceSum, Tree, VertexId};

/// The cycle a candidate inset edge `xy` would create, split into the
/// half closer to `x`, the half closer to `y`, and (odd cycles only) the
/// single vertex equidistant from both.
#[derive(Debug, Clone)]
pub struct CyclePartition {
    pub x: VertexId,
    pub y: VertexId,
    /// Cycle length, `d(x,y) + 1`.
    pub k: u32,
    /// Path vertices closer to `x`, ordered from `x` inward: `cx[0] = x`,
    /// `cx[i]` at distance `i` from `x`.
    pub cx: Vec<VertexId>,
    /// Path vertices closer to `y`, ordered from `y` inward.
    pub cy: Vec<VertexId>,
    /// The equidistant middle vertex, present iff `k` is odd.
    pub cm: Option<VertexId>,
}

impl CyclePartition {
    pub fn half_len(&self) -> usize {
        (self.k / 2) as usize
    }
}

/// Splits the would-be cycle of inset edge `xy` per the rule above.
pub fn cycle_partition(tree: &Tree, x: VertexId, y: VertexId) -> Result<CyclePartition> {
    let (path, _) = tree.path_with_edges(x, y)?;
    if path.len() == 2 {
        return Err(Error::NotInsetEdge(x, y));
    }
    let k = path.len() as u32;
    let half = (k / 2) as usize;
    let cx = path[..half].to_vec();
    let cy = path[path.len() - half..].iter().rev().copied().collect();
    let cm = if k % 2 == 1 { Some(path[half]) } else { None };
    Ok(CyclePartition { x, y, k, cx, cy, cm })
}

/// Sizes of the subtrees hanging off each cycle vertex, one vector per
/// half, ordered like [`CyclePartition::cx`]/[`cy`]. Entry 0 is the
/// endpoint's own subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVectors {
    pub k: u32,
    pub vx: Vec<DistanceSum>,
    pub vy: Vec<DistanceSum>,
    /// Subtree weight of the equidistant middle vertex (odd `k` only).
    pub middle_weight: Option<DistanceSum>,
}

/// Computes the hanging-subtree weights for one inset edge in time linear
/// in the cycle length, from the per-edge side counts: a path endpoint
/// keeps everything on its side of its single path edge, and an interior
/// path vertex keeps what neither path edge takes away.
pub fn weight_vectors(tree: &Tree, splits: &SplitTable, part: &CyclePartition) -> WeightVectors {
    let (path, path_edges) = tree
        .path_with_edges(part.x, part.y)
        .expect("partition came from a valid inset edge");
    let n = tree.vertex_count() as DistanceSum;
    let d = path_edges.len();
    let weight_at = |i: usize| -> DistanceSum {
        if i == 0 {
            splits.side_toward(tree, path_edges[0], path[0])
        } else if i == d {
            splits.side_toward(tree, path_edges[d - 1], path[d])
        } else {
            let toward_prev = splits.side_toward(tree, path_edges[i - 1], path[i - 1]);
            let toward_next = splits.side_toward(tree, path_edges[i], path[i + 1]);
            n - toward_prev - toward_next
        }
    };
    let half = part.half_len();
    let vx = (0..half).map(weight_at).collect();
    let vy = (0..half).map(|j| weight_at(d - j)).collect();
    let middle_weight = part.cm.map(|_| weight_at(half));
    WeightVectors {
        k: part.k,
        vx,
        vy,
        middle_weight,
    }
}

/// The coefficient `max(k + 2 - 2(i+j), 0)` with 1-based `i`, `j`.
#[inline]
pub fn coefficient(k: u32, i: usize, j: usize) -> DistanceSum {
    let v = k as i64 + 2 - 2 * (i as i64 + j as i64);
    v.max(0)
}

/// The dense `k' x k'` coefficient matrix, constant on anti-diagonals:
/// `2k'-1, 2k'-3, ..., 1, 0, ...` for odd `k` and
/// `2k'-2, 2k'-4, ..., 2, 0, ...` for even `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMatrix {
    pub k: u32,
    half: usize,
    entries: Vec<DistanceSum>,
}

impl CoefficientMatrix {
    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> DistanceSum {
        self.entries[(i - 1) * self.half + (j - 1)]
    }

    pub fn half_len(&self) -> usize {
        self.half
    }
}

/// Builds the coefficient matrix twice, by the anti-diagonal closed form
/// and by the piecewise even/odd construction (an even ramp plus, for odd
/// cycles, a 0/1 band), and insists the two agree.
pub fn coefficient_matrix(k: u32) -> Result<CoefficientMatrix> {
    if k < 3 {
        return Err(Error::CycleTooShort(k));
    }
    let half = (k / 2) as usize;
    let mut entries = Vec::with_capacity(half * half);
    for i in 1..=half {
        for j in 1..=half {
            // Piecewise: d_ij = 2(k' - i - j + 1) inside i+j <= k', else 0;
            // odd cycles add o_ij = 1 on i+j-1 <= k'.
            let ramp = if i + j <= half {
                2 * (half as i64 - i as i64 - j as i64 + 1)
            } else {
                0
            };
            let band = if k % 2 == 1 && i + j - 1 <= half { 1 } else { 0 };
            let piecewise = ramp + band;
            let closed = coefficient(k, i, j);
            assert_eq!(
                piecewise, closed,
                "coefficient constructions disagree at k={k}, ({i},{j})"
            );
            entries.push(closed);
        }
    }
    Ok(CoefficientMatrix { k, half, entries })
}

/// Route 1: the bilinear form over the weight vectors, quadratic in the
/// half-cycle length.
pub fn dprime_from_weights(w: &WeightVectors) -> DistanceSum {
    let half = w.vx.len();
    // Coefficients vanish once i + j exceeds ceil(k/2); stop rows there.
    let cutoff = (w.k as usize).div_ceil(2);
    let mut total = 0;
    for i in 1..=half {
        for j in 1..=half.min(cutoff - i) {
            total += coefficient(w.k, i, j) * w.vx[i - 1] * w.vy[j - 1];
        }
    }
    total
}

/// Route 2: pairwise over opposite cycle halves, using breadth-first
/// distances rather than path positions; pairs farther than half the
/// cycle apart save `2 d(u,v) - k` per hanging vertex pair.
pub fn dprime_pairwise(tree: &Tree, splits: &SplitTable, x: VertexId, y: VertexId) -> Result<DistanceSum> {
    let part = cycle_partition(tree, x, y)?;
    let w = weight_vectors(tree, splits, &part);
    let k = part.k as i64;
    let mut total = 0;
    for (i, &u) in part.cx.iter().enumerate() {
        let dist = tree.bfs_distances(u);
        for (j, &v) in part.cy.iter().enumerate() {
            let duv = dist[v as usize] as i64;
            if 2 * duv > k {
                total += (2 * duv - k) * w.vx[i] * w.vy[j];
            }
        }
    }
    Ok(total)
}

/// All-pairs tree distances, kept for the brute-force shortcut oracle.
/// Quadratic memory; intended for verification sizes.
pub struct Apsp {
    n: usize,
    dist: Vec<u32>,
}

impl Apsp {
    pub fn new(tree: &Tree) -> Apsp {
        let n = tree.vertex_count();
        let mut dist = Vec::with_capacity(n * n);
        for src in 0..n as VertexId {
            dist.extend(tree.bfs_distances(src));
        }
        Apsp { n, dist }
    }

    #[inline]
    pub fn distance(&self, a: VertexId, b: VertexId) -> u32 {
        self.dist[a as usize * self.n + b as usize]
    }

    /// Wiener index of the tree plus edge `xy`, counting every pair's
    /// best of the direct route and the two routes through the new edge.
    pub fn wiener_with_edge(&self, x: VertexId, y: VertexId) -> DistanceSum {
        let n = self.n;
        let mut total: DistanceSum = 0;
        for a in 0..n {
            let da = &self.dist[a * n..(a + 1) * n];
            let dax = da[x as usize];
            let day = da[y as usize];
            for (b, &direct) in da.iter().enumerate().skip(a + 1) {
                let via_x = dax + 1 + self.distance(y, b as VertexId);
                let via_y = day + 1 + self.distance(x, b as VertexId);
                total += direct.min(via_x).min(via_y) as DistanceSum;
            }
        }
        total
    }

    /// Route 3: drop of the Wiener index when `xy` is added, summed pair
    /// by pair.
    pub fn dprime(&self, x: VertexId, y: VertexId) -> DistanceSum {
        let n = self.n;
        let mut total: DistanceSum = 0;
        for a in 0..n {
            let da = &self.dist[a * n..(a + 1) * n];
            let dax = da[x as usize];
            let day = da[y as usize];
            for (b, &direct) in da.iter().enumerate().skip(a + 1) {
                let via_x = dax + 1 + self.distance(y, b as VertexId);
                let via_y = day + 1 + self.distance(x, b as VertexId);
                let best = direct.min(via_x).min(via_y);
                total += (direct - best) as DistanceSum;
            }
        }
        total
    }
}

/// Standalone form of route 3. Builds the full distance table each call;
/// prefer [`Apsp`] when checking many inset edges of one tree.
pub fn dprime_shortcut(tree: &Tree, x: VertexId, y: VertexId) -> Result<DistanceSum> {
    if x == y {
        return Err(Error::SameVertex(x, y));
    }
    if !tree.contains(x) {
        return Err(Error::UnknownVertex(x));
    }
    if !tree.contains(y) {
        return Err(Error::UnknownVertex(y));
    }
    if tree.has_edge(x, y) {
        return Err(Error::NotInsetEdge(x, y));
    }
    Ok(Apsp::new(tree).dprime(x, y))
}

/// Exact drop of the average distance: `dp / C(n,2)`.
pub fn adprime(dp: DistanceSum, n: u64) -> Result<Rational> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    let pairs = n as i128 * (n as i128 - 1) / 2;
    Ok(Ratio::new(dp as i128, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splits::{edge_splits, wiener_bfs};
    use crate::tree::{generate, TreeKind};

    fn parse(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn by_label(tree: &Tree, label: &str) -> VertexId {
        (0..tree.vertex_count() as VertexId)
            .find(|&v| tree.label(v) == label)
            .unwrap()
    }

    fn labels(tree: &Tree, vs: &[VertexId]) -> Vec<String> {
        vs.iter().map(|&v| tree.label(v).to_owned()).collect()
    }

    /// Independent weight oracle: delete all path edges, flood-fill the
    /// component of each cycle vertex.
    fn brute_weight(tree: &Tree, x: VertexId, y: VertexId, v: VertexId) -> DistanceSum {
        let (path, _) = tree.path_with_edges(x, y).unwrap();
        let on_path: std::collections::HashSet<VertexId> = path.iter().copied().collect();
        let mut seen = vec![false; tree.vertex_count()];
        seen[v as usize] = true;
        let mut stack = vec![v];
        let mut count = 0;
        while let Some(w) = stack.pop() {
            count += 1;
            for &(u, _) in tree.neighbors(w) {
                // Path edges are deleted: both endpoints on the path.
                if on_path.contains(&u) && on_path.contains(&w) {
                    continue;
                }
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        count
    }

    #[test]
    fn partitions_p5_end_to_end() {
        let tree = generate(TreeKind::Path, 5, 0).unwrap();
        let part = cycle_partition(&tree, by_label(&tree, "1"), by_label(&tree, "5")).unwrap();
        assert_eq!(part.k, 5);
        assert_eq!(labels(&tree, &part.cx), vec!["1", "2"]);
        assert_eq!(labels(&tree, &part.cy), vec!["5", "4"]);
        assert_eq!(part.cm.map(|m| tree.label(m).to_owned()), Some("3".to_owned()));
    }

    #[test]
    fn partitions_p4_both_cases() {
        let tree = parse("1 2\n2 3\n3 4");
        let even = cycle_partition(&tree, 0, 3).unwrap();
        assert_eq!(even.k, 4);
        assert_eq!(labels(&tree, &even.cx), vec!["1", "2"]);
        assert_eq!(labels(&tree, &even.cy), vec!["4", "3"]);
        assert!(even.cm.is_none());

        let odd = cycle_partition(&tree, 0, 2).unwrap();
        assert_eq!(odd.k, 3);
        assert_eq!(labels(&tree, &odd.cx), vec!["1"]);
        assert_eq!(labels(&tree, &odd.cy), vec!["3"]);
        assert_eq!(odd.cm, Some(1));
    }

    #[test]
    fn partition_rejects_adjacent_and_equal() {
        let tree = parse("1 2\n2 3");
        assert!(matches!(cycle_partition(&tree, 0, 1), Err(Error::NotInsetEdge(..))));
        assert!(matches!(cycle_partition(&tree, 0, 0), Err(Error::SameVertex(..))));
    }

    #[test]
    fn weights_p4_and_p5_and_star() {
        let p4 = parse("1 2\n2 3\n3 4");
        let splits = edge_splits(&p4);
        let w = weight_vectors(&p4, &splits, &cycle_partition(&p4, 0, 2).unwrap());
        assert_eq!(w.vx, vec![1]);
        assert_eq!(w.vy, vec![2]);

        let p5 = generate(TreeKind::Path, 5, 0).unwrap();
        let splits = edge_splits(&p5);
        let w = weight_vectors(&p5, &splits, &cycle_partition(&p5, 0, 4).unwrap());
        assert_eq!(w.vx, vec![1, 1]);
        assert_eq!(w.vy, vec![1, 1]);
        assert_eq!(w.middle_weight, Some(1));

        let star = parse("1 2\n1 3\n1 4");
        let splits = edge_splits(&star);
        let w = weight_vectors(&star, &splits, &cycle_partition(&star, 1, 2).unwrap());
        assert_eq!(w.vx, vec![1]);
        assert_eq!(w.vy, vec![1]);
        assert_eq!(w.middle_weight, Some(2));
    }

    #[test]
    fn weights_match_component_oracle() {
        for seed in 0..12 {
            let n = 4 + (seed * 5) % 26;
            let tree = generate(TreeKind::Random, n, 50 + seed).unwrap();
            let splits = edge_splits(&tree);
            for x in 0..tree.vertex_count() as VertexId {
                for y in x + 1..tree.vertex_count() as VertexId {
                    if tree.has_edge(x, y) {
                        continue;
                    }
                    let part = cycle_partition(&tree, x, y).unwrap();
                    let w = weight_vectors(&tree, &splits, &part);
                    for (i, &v) in part.cx.iter().enumerate() {
                        assert_eq!(w.vx[i], brute_weight(&tree, x, y, v));
                    }
                    for (j, &v) in part.cy.iter().enumerate() {
                        assert_eq!(w.vy[j], brute_weight(&tree, x, y, v));
                    }
                    let total: DistanceSum =
                        w.vx.iter().sum::<DistanceSum>()
                            + w.vy.iter().sum::<DistanceSum>()
                            + w.middle_weight.unwrap_or(0);
                    assert_eq!(total, tree.vertex_count() as DistanceSum);
                }
            }
        }
    }

    #[test]
    fn coefficient_matrix_small_cases() {
        let f3 = coefficient_matrix(3).unwrap();
        assert_eq!(f3.get(1, 1), 1);

        let f5 = coefficient_matrix(5).unwrap();
        assert_eq!(
            [[f5.get(1, 1), f5.get(1, 2)], [f5.get(2, 1), f5.get(2, 2)]],
            [[3, 1], [1, 0]]
        );

        let f4 = coefficient_matrix(4).unwrap();
        assert_eq!(
            [[f4.get(1, 1), f4.get(1, 2)], [f4.get(2, 1), f4.get(2, 2)]],
            [[2, 0], [0, 0]]
        );

        assert!(matches!(coefficient_matrix(2), Err(Error::CycleTooShort(2))));
    }

    #[test]
    fn coefficient_constructions_agree_up_to_64() {
        // `coefficient_matrix` itself asserts closed form == piecewise.
        for k in 3..=64 {
            let m = coefficient_matrix(k).unwrap();
            assert_eq!(m.half_len(), (k / 2) as usize);
        }
    }

    #[test]
    fn coefficients_match_path_position_distances() {
        // Entries equal max(2*d(x_i, y_j) - k, 0) with d = k+1-i-j.
        for k in 3..=64u32 {
            let m = coefficient_matrix(k).unwrap();
            let half = m.half_len();
            for i in 1..=half {
                for j in 1..=half {
                    let d = k as i64 + 1 - i as i64 - j as i64;
                    assert_eq!(m.get(i, j), (2 * d - k as i64).max(0));
                }
            }
        }
    }

    #[test]
    fn dprime_fixed_points() {
        let p4 = parse("1 2\n2 3\n3 4");
        let splits = edge_splits(&p4);
        let w13 = weight_vectors(&p4, &splits, &cycle_partition(&p4, 0, 2).unwrap());
        assert_eq!(dprime_from_weights(&w13), 2);
        let w14 = weight_vectors(&p4, &splits, &cycle_partition(&p4, 0, 3).unwrap());
        assert_eq!(dprime_from_weights(&w14), 2);
        assert_eq!(dprime_pairwise(&p4, &splits, 0, 2).unwrap(), 2);
        assert_eq!(dprime_shortcut(&p4, 0, 2).unwrap(), 2);
        assert_eq!(dprime_shortcut(&p4, 0, 3).unwrap(), 2);

        let p5 = generate(TreeKind::Path, 5, 0).unwrap();
        let splits = edge_splits(&p5);
        let w15 = weight_vectors(&p5, &splits, &cycle_partition(&p5, 0, 4).unwrap());
        assert_eq!(dprime_from_weights(&w15), 5);
        assert_eq!(dprime_pairwise(&p5, &splits, 0, 4).unwrap(), 5);
        assert_eq!(dprime_shortcut(&p5, 0, 4).unwrap(), 5);

        let star = parse("1 2\n1 3\n1 4");
        let splits = edge_splits(&star);
        assert_eq!(dprime_pairwise(&star, &splits, 1, 2).unwrap(), 1);
    }

    #[test]
    fn shortcut_rejects_non_inset_pairs() {
        let p4 = parse("1 2\n2 3\n3 4");
        assert!(matches!(dprime_shortcut(&p4, 0, 1), Err(Error::NotInsetEdge(..))));
        assert!(matches!(dprime_shortcut(&p4, 2, 2), Err(Error::SameVertex(..))));
        assert!(matches!(dprime_shortcut(&p4, 0, 11), Err(Error::UnknownVertex(11))));
    }

    #[test]
    fn three_routes_agree_on_random_trees() {
        for seed in 0..10 {
            let n = 4 + (seed * 7) % 30;
            let tree = generate(TreeKind::Random, n, 200 + seed).unwrap();
            let splits = edge_splits(&tree);
            let apsp = Apsp::new(&tree);
            let base = wiener_bfs(&tree);
            for x in 0..tree.vertex_count() as VertexId {
                for y in x + 1..tree.vertex_count() as VertexId {
                    if tree.has_edge(x, y) {
                        continue;
                    }
                    let part = cycle_partition(&tree, x, y).unwrap();
                    let w = weight_vectors(&tree, &splits, &part);
                    let a = dprime_from_weights(&w);
                    let b = dprime_pairwise(&tree, &splits, x, y).unwrap();
                    let c = apsp.dprime(x, y);
                    assert_eq!(a, b, "seed {seed} pair ({x},{y})");
                    assert_eq!(b, c, "seed {seed} pair ({x},{y})");
                    assert!(a >= 1);
                    assert_eq!(base - apsp.wiener_with_edge(x, y), a);
                }
            }
        }
    }

    #[test]
    fn triangle_drop_is_weight_product() {
        for seed in 0..8 {
            let tree = generate(TreeKind::Random, 20, 300 + seed).unwrap();
            let splits = edge_splits(&tree);
            for x in 0..20 as VertexId {
                for y in x + 1..20 as VertexId {
                    if tree.has_edge(x, y) || tree.distance(x, y) != 2 {
                        continue;
                    }
                    let part = cycle_partition(&tree, x, y).unwrap();
                    let w = weight_vectors(&tree, &splits, &part);
                    assert_eq!(dprime_from_weights(&w), w.vx[0] * w.vy[0]);
                }
            }
        }
    }

    #[test]
    fn adprime_examples() {
        assert_eq!(adprime(2, 4).unwrap(), Ratio::new(1, 3));
        assert_eq!(adprime(5, 5).unwrap(), Ratio::new(1, 2));
        assert_eq!(adprime(0, 9).unwrap(), Ratio::new(0, 1));
        assert!(adprime(1, 2).is_err());
    }
}
