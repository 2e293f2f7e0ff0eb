//! Radial tree layout for the demo page.
//!
//! The tree is rooted at a centroid; each subtree receives an angular
//! span proportional to its leaf count and vertices sit at a radius
//! proportional to their depth. Output coordinates are normalized to
//! the unit square.

use treedelta::{Tree, VertexId};

/// Normalized `(x, y)` positions indexed by vertex id.
pub fn radial(tree: &Tree) -> Vec<(f64, f64)> {
    let n = tree.vertex_count();
    let root = centroid(tree);

    // Iterative DFS assigning each vertex (depth, angular interval).
    let mut pos = vec![(0.5, 0.5); n];
    let mut max_depth = 1u32;
    let leaves = subtree_leaves(tree, root);
    let mut depth_of = vec![0u32; n];

    struct Item {
        v: VertexId,
        parent: VertexId,
        lo: f64,
        hi: f64,
    }
    let mut stack: Vec<Item> = Vec::new();
    let total: f64 = tree
        .neighbors(root)
        .iter()
        .map(|&(c, _)| leaves[c as usize] as f64)
        .sum();
    let mut angle = 0.0;
    for &(c, _) in tree.neighbors(root) {
        let span = std::f64::consts::TAU * leaves[c as usize] as f64 / total;
        stack.push(Item {
            v: c,
            parent: root,
            lo: angle,
            hi: angle + span,
        });
        angle += span;
    }
    while let Some(item) = stack.pop() {
        let depth = depth_of[item.parent as usize] + 1;
        depth_of[item.v as usize] = depth;
        max_depth = max_depth.max(depth);
        let mid = (item.lo + item.hi) / 2.0;
        pos[item.v as usize] = (depth as f64, mid);

        let child_total: f64 = tree
            .neighbors(item.v)
            .iter()
            .filter(|&&(c, _)| c != item.parent)
            .map(|&(c, _)| leaves[c as usize] as f64)
            .sum();
        let mut lo = item.lo;
        for &(c, _) in tree.neighbors(item.v) {
            if c == item.parent {
                continue;
            }
            let span = (item.hi - item.lo) * leaves[c as usize] as f64 / child_total;
            stack.push(Item {
                v: c,
                parent: item.v,
                lo,
                hi: lo + span,
            });
            lo += span;
        }
    }

    // Polar to normalized cartesian; margin keeps labels on-canvas.
    for v in 0..n {
        if v as VertexId == root {
            pos[v] = (0.5, 0.5);
            continue;
        }
        let (depth, theta) = pos[v];
        let r = 0.46 * depth / max_depth as f64;
        pos[v] = (0.5 + r * theta.cos(), 0.5 + r * theta.sin());
    }
    pos
}

/// Leaf counts per rooted subtree (a childless vertex counts as one).
/// Children precede parents in reverse pre-order, so one backward pass
/// accumulates bottom-up.
fn subtree_leaves(tree: &Tree, root: VertexId) -> Vec<u32> {
    let order = dfs_order(tree, root);
    let mut leaves = vec![0u32; tree.vertex_count()];
    for &(v, parent) in order.iter().rev() {
        if leaves[v as usize] == 0 {
            leaves[v as usize] = 1;
        }
        if v != root {
            leaves[parent as usize] += leaves[v as usize];
        }
    }
    leaves
}

fn dfs_order(tree: &Tree, root: VertexId) -> Vec<(VertexId, VertexId)> {
    let mut order = Vec::with_capacity(tree.vertex_count());
    let mut stack = vec![(root, root)];
    while let Some((v, parent)) = stack.pop() {
        order.push((v, parent));
        for &(c, _) in tree.neighbors(v) {
            if c != parent {
                stack.push((c, v));
            }
        }
    }
    order
}

/// A vertex whose removal leaves no component larger than half the tree.
fn centroid(tree: &Tree) -> VertexId {
    let n = tree.vertex_count() as u32;
    let order = dfs_order(tree, 0);
    let mut size = vec![1u32; n as usize];
    for &(v, parent) in order.iter().rev() {
        if v != 0 {
            size[parent as usize] += size[v as usize];
        }
    }
    let mut v = 0 as VertexId;
    let mut parent = v;
    loop {
        let heavy = tree
            .neighbors(v)
            .iter()
            .filter(|&&(c, _)| c != parent)
            .map(|&(c, _)| (c, size[c as usize]))
            .max_by_key(|&(_, s)| s);
        match heavy {
            Some((c, s)) if 2 * s > n => {
                // Sizes were computed toward root 0; moving into the
                // heavy child flips the complement size.
                size[v as usize] = n - s;
                parent = v;
                v = c;
            }
            _ => return v,
        }
    }
}
