//! Incremental sweep producing the Wiener drop of every inset edge.
//!
//! Inset edges partition by the middle of the tree path joining their
//! endpoints: a vertex for even-length paths, an edge for odd. Starting a
//! cycle frame at each middle and repeatedly stepping both endpoints one
//! branch outward visits every inset edge exactly once, and each step
//! updates the drop in time linear in the current cycle length instead of
//! recomputing the quadratic bilinear form. Carried per frame: the weight
//! vectors, their (invariant) totals, the current drop, and the band norm
//! `sum of vx[i]*vy[j] over i+j <= k'+1`, which is exactly the state the
//! next step consumes.
//!
//! With cycle length `k`, weight vectors `vx`/`vy` (entry 1 = endpoint),
//! totals `sx`/`sy`, band norm `B`, anti-diagonal sum
//! `A = sum over i+j = k'+1 of vx[i]*vy[j]`, and new branch weights
//! `wu`/`wv`, the step to `k+2` is:
//!
//! ```text
//! vx' = [wu, vx[1]-wu, vx[2..]]          (and symmetrically vy')
//! odd k:  D'' = D' - 2B + A + wu*(2sy - vy[k']) + wv*(2sx - vx[k'])
//!               + (k == 3 ? wu*wv : 0)
//! even k: D'' = D' - 2B + 2A + 2wu*(sy - vy[k']) + 2wv*(sx - vx[k'])
//! B'  = B - A + wu*vy[k'] + wv*vx[k'] - (k == 3 ? wu*wv : 0)
//! ```
//!
//! Both updates follow from expanding the bilinear form on the shifted
//! vectors; the unit tests re-verify them against the direct quadratic
//! evaluation on randomized frames.

use crate::error::{Error, Result};
use crate::splits::SplitTable;
use crate::tree::{DistanceSum, EdgeId, Tree, VertexId};

/// The middle of an inset edge's cycle: the central vertex of an
/// even-length path or the central edge of an odd-length one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Middle {
    Vertex(VertexId),
    /// Canonical orientation: smaller id first.
    Edge(VertexId, VertexId),
}

/// The middle of inset edge `xy`.
pub fn middle_of(tree: &Tree, x: VertexId, y: VertexId) -> Result<Middle> {
    let (path, _) = tree.path_with_edges(x, y)?;
    if path.len() == 2 {
        return Err(Error::NotInsetEdge(x, y));
    }
    let d = path.len() - 1;
    if d % 2 == 0 {
        Ok(Middle::Vertex(path[d / 2]))
    } else {
        let (a, b) = (path[d / 2], path[d / 2 + 1]);
        Ok(Middle::Edge(a.min(b), a.max(b)))
    }
}

/// All middles that own at least one inset edge: vertices of degree >= 2
/// followed by edges with both endpoint degrees >= 2, each set ascending.
pub fn enumerate_middles(tree: &Tree) -> Vec<Middle> {
    let mut middles: Vec<Middle> = (0..tree.vertex_count() as VertexId)
        .filter(|&v| tree.degree(v) >= 2)
        .map(Middle::Vertex)
        .collect();
    let mut edge_middles: Vec<Middle> = tree
        .edges()
        .iter()
        .filter(|&&(u, v)| tree.degree(u) >= 2 && tree.degree(v) >= 2)
        .map(|&(u, v)| Middle::Edge(u.min(v), u.max(v)))
        .collect();
    edge_middles.sort_unstable();
    middles.append(&mut edge_middles);
    middles
}

/// One growing cycle in the sweep. The vectors hold the hanging-subtree
/// weights of each half, entry 0 being the current endpoint; `band_norm`
/// and `dprime` are always exact for the current `k`.
#[derive(Debug, Clone)]
pub struct SweepFrame {
    pub k: u32,
    pub x: VertexId,
    pub y: VertexId,
    /// Cycle-path neighbor of `x`; the one branch not available for
    /// further extension.
    pub toward_x: VertexId,
    pub toward_y: VertexId,
    pub vx: Vec<DistanceSum>,
    pub vy: Vec<DistanceSum>,
    /// Totals of `vx`/`vy`; invariant under extension.
    pub sum_x: DistanceSum,
    pub sum_y: DistanceSum,
    /// `sum of vx[i]*vy[j] over i+j <= k'+1` (1-based).
    pub band_norm: DistanceSum,
    pub dprime: DistanceSum,
}

/// One result row: an inset edge, its cycle length, and its Wiener drop.
/// `x < y` canonically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InsetRecord {
    pub x: VertexId,
    pub y: VertexId,
    pub k: u32,
    pub dprime: DistanceSum,
}

impl SweepFrame {
    fn record(&self) -> InsetRecord {
        InsetRecord {
            x: self.x.min(self.y),
            y: self.x.max(self.y),
            k: self.k,
            dprime: self.dprime,
        }
    }
}

/// Sweep tuning knobs.
#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    /// Charge one unit per 64-bit arithmetic operation inside frame
    /// initialization and extension. Off for pure timing runs.
    pub count_ops: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { count_ops: true }
    }
}

/// Totals reported by a sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub records: u64,
    pub basic_ops: u64,
}

impl SweepStats {
    fn absorb(&mut self, other: SweepStats) {
        self.records += other.records;
        self.basic_ops += other.basic_ops;
    }
}

const OPS_VERTEX_INIT: u64 = 1;
const OPS_EDGE_INIT: u64 = 8;
const OPS_EXTEND_FIXED: u64 = 16;

/// Frame for the inset edge joining two distinct neighbors `a`, `b` of
/// middle vertex `v` (cycle length 3).
fn vertex_frame(
    tree: &Tree,
    splits: &SplitTable,
    v: VertexId,
    (a, ea): (VertexId, EdgeId),
    (b, eb): (VertexId, EdgeId),
) -> SweepFrame {
    let wa = splits.side_toward(tree, ea, a);
    let wb = splits.side_toward(tree, eb, b);
    let p = wa * wb;
    SweepFrame {
        k: 3,
        x: a,
        y: b,
        toward_x: v,
        toward_y: v,
        vx: vec![wa],
        vy: vec![wb],
        sum_x: wa,
        sum_y: wb,
        band_norm: p,
        dprime: p,
    }
}

/// Frame for the inset edge joining `a` (a non-`v` neighbor of `u`) to
/// `b` (a non-`u` neighbor of `v`) across middle edge `uv` (cycle
/// length 4). The endpoint halves of the middle edge keep whatever their
/// side holds minus the branch that became the new endpoint.
fn edge_frame(
    tree: &Tree,
    splits: &SplitTable,
    (u, v, euv): (VertexId, VertexId, EdgeId),
    (a, ea): (VertexId, EdgeId),
    (b, eb): (VertexId, EdgeId),
) -> SweepFrame {
    let wa = splits.side_toward(tree, ea, a);
    let wb = splits.side_toward(tree, eb, b);
    let su = splits.side_toward(tree, euv, u);
    let sv = splits.side_toward(tree, euv, v);
    let (ru, rv) = (su - wa, sv - wb);
    let p = wa * wb;
    SweepFrame {
        k: 4,
        x: a,
        y: b,
        toward_x: u,
        toward_y: v,
        vx: vec![wa, ru],
        vy: vec![wb, rv],
        sum_x: su,
        sum_y: sv,
        band_norm: p + wa * rv + ru * wb,
        dprime: 2 * p,
    }
}

/// Steps a frame two cycle vertices outward, to new endpoints `u`
/// (weight `wu`) and `v` (weight `wv`). Linear in the half-cycle length.
fn extend_core(
    frame: &SweepFrame,
    u: VertexId,
    v: VertexId,
    wu: DistanceSum,
    wv: DistanceSum,
    ops: &mut u64,
    count_ops: bool,
) -> SweepFrame {
    let half = frame.vx.len();
    let anti: DistanceSum = (0..half)
        .map(|i| frame.vx[i] * frame.vy[half - 1 - i])
        .sum();
    let vxl = frame.vx[half - 1];
    let vyl = frame.vy[half - 1];
    let triangle = if frame.k == 3 { wu * wv } else { 0 };

    let dprime = if frame.k % 2 == 1 {
        frame.dprime - 2 * frame.band_norm
            + anti
            + wu * (2 * frame.sum_y - vyl)
            + wv * (2 * frame.sum_x - vxl)
            + triangle
    } else {
        frame.dprime - 2 * frame.band_norm
            + 2 * anti
            + 2 * wu * (frame.sum_y - vyl)
            + 2 * wv * (frame.sum_x - vxl)
    };
    let band_norm = frame.band_norm - anti + wu * vyl + wv * vxl - triangle;

    let mut vx = Vec::with_capacity(half + 1);
    vx.push(wu);
    vx.push(frame.vx[0] - wu);
    vx.extend_from_slice(&frame.vx[1..]);
    let mut vy = Vec::with_capacity(half + 1);
    vy.push(wv);
    vy.push(frame.vy[0] - wv);
    vy.extend_from_slice(&frame.vy[1..]);

    if count_ops {
        *ops += 2 * half as u64 + OPS_EXTEND_FIXED;
    }

    SweepFrame {
        k: frame.k + 2,
        x: u,
        y: v,
        toward_x: frame.x,
        toward_y: frame.y,
        vx,
        vy,
        sum_x: frame.sum_x,
        sum_y: frame.sum_y,
        band_norm,
        dprime,
    }
}

/// All cycle-length-3 frames rooted at middle vertex `v`: one per
/// unordered pair of its neighbors.
pub fn init_vertex_frames(tree: &Tree, splits: &SplitTable, v: VertexId) -> Result<Vec<SweepFrame>> {
    if !tree.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    let nbrs = tree.neighbors(v);
    if nbrs.len() < 2 {
        return Err(Error::DegreeTooSmall {
            vertex: v,
            degree: nbrs.len(),
            min: 2,
        });
    }
    let mut frames = Vec::with_capacity(nbrs.len() * (nbrs.len() - 1) / 2);
    for i in 0..nbrs.len() {
        for j in i + 1..nbrs.len() {
            frames.push(vertex_frame(tree, splits, v, nbrs[i], nbrs[j]));
        }
    }
    Ok(frames)
}

/// All cycle-length-4 frames rooted at middle edge `uv`: one per pair of
/// outside branches, one from each endpoint.
pub fn init_edge_frames(
    tree: &Tree,
    splits: &SplitTable,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<SweepFrame>> {
    if !tree.contains(u) {
        return Err(Error::UnknownVertex(u));
    }
    if !tree.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    let euv = tree
        .neighbors(u)
        .iter()
        .find(|&&(w, _)| w == v)
        .map(|&(_, e)| e)
        .ok_or(Error::NotTreeEdge(u, v))?;
    for &(w, d_min) in &[(u, tree.degree(u)), (v, tree.degree(v))] {
        if d_min < 2 {
            return Err(Error::DegreeTooSmall {
                vertex: w,
                degree: d_min,
                min: 2,
            });
        }
    }
    let mut frames = Vec::new();
    for &(a, ea) in tree.neighbors(u).iter().filter(|&&(w, _)| w != v) {
        for &(b, eb) in tree.neighbors(v).iter().filter(|&&(w, _)| w != u) {
            frames.push(edge_frame(tree, splits, (u, v, euv), (a, ea), (b, eb)));
        }
    }
    Ok(frames)
}

/// Steps `frame` outward to endpoints `u` and `v`, which must be
/// off-cycle neighbors of the current endpoints. The result satisfies
/// the same exactness contract as every frame.
pub fn extend_frame(
    tree: &Tree,
    splits: &SplitTable,
    frame: &SweepFrame,
    u: VertexId,
    v: VertexId,
) -> Result<SweepFrame> {
    let branch = |from: VertexId, to: VertexId, blocked: VertexId| -> Result<EdgeId> {
        if to == blocked {
            return Err(Error::NotABranch(to, from));
        }
        tree.neighbors(from)
            .iter()
            .find(|&&(w, _)| w == to)
            .map(|&(_, e)| e)
            .ok_or(Error::NotABranch(to, from))
    };
    let eu = branch(frame.x, u, frame.toward_x)?;
    let ev = branch(frame.y, v, frame.toward_y)?;
    let wu = splits.side_toward(tree, eu, u);
    let wv = splits.side_toward(tree, ev, v);
    let mut ops = 0;
    Ok(extend_core(frame, u, v, wu, wv, &mut ops, false))
}

struct DfsEntry {
    frame: SweepFrame,
    ix: usize,
    iy: usize,
}

/// Depth-first walk of one root frame's extension tree, generating one
/// child at a time so memory stays proportional to the recursion depth
/// times the cycle length, never to the branching factor.
fn walk<F: FnMut(InsetRecord, u64)>(
    tree: &Tree,
    splits: &SplitTable,
    root: SweepFrame,
    root_ops: u64,
    count_ops: bool,
    stats: &mut SweepStats,
    sink: &mut F,
) {
    let ops_base = if count_ops { root_ops } else { 0 };
    stats.basic_ops += ops_base;
    stats.records += 1;
    sink(root.record(), ops_base);

    let mut stack = vec![DfsEntry {
        frame: root,
        ix: 0,
        iy: 0,
    }];
    while let Some(top) = stack.last_mut() {
        let xadj = tree.neighbors(top.frame.x);
        let yadj = tree.neighbors(top.frame.y);
        let mut next = None;
        while top.ix < xadj.len() {
            if xadj[top.ix].0 == top.frame.toward_x {
                top.ix += 1;
                continue;
            }
            while top.iy < yadj.len() && yadj[top.iy].0 == top.frame.toward_y {
                top.iy += 1;
            }
            if top.iy < yadj.len() {
                next = Some((xadj[top.ix], yadj[top.iy]));
                top.iy += 1;
                break;
            }
            top.ix += 1;
            top.iy = 0;
        }
        match next {
            None => {
                stack.pop();
            }
            Some(((u, eu), (v, ev))) => {
                let wu = splits.side_toward(tree, eu, u);
                let wv = splits.side_toward(tree, ev, v);
                let mut ops = 0;
                let child = extend_core(&top.frame, u, v, wu, wv, &mut ops, count_ops);
                stats.basic_ops += ops;
                stats.records += 1;
                sink(child.record(), ops);
                stack.push(DfsEntry {
                    frame: child,
                    ix: 0,
                    iy: 0,
                });
            }
        }
    }
}

/// Emits every inset edge owned by one middle, with per-record operation
/// charges.
pub fn sweep_middle_traced<F: FnMut(InsetRecord, u64)>(
    tree: &Tree,
    splits: &SplitTable,
    middle: &Middle,
    options: SweepOptions,
    mut sink: F,
) -> SweepStats {
    let mut stats = SweepStats::default();
    let count = options.count_ops;
    match *middle {
        Middle::Vertex(v) => {
            let nbrs = tree.neighbors(v);
            for i in 0..nbrs.len() {
                for j in i + 1..nbrs.len() {
                    let frame = vertex_frame(tree, splits, v, nbrs[i], nbrs[j]);
                    walk(tree, splits, frame, OPS_VERTEX_INIT, count, &mut stats, &mut sink);
                }
            }
        }
        Middle::Edge(u, v) => {
            let euv = tree
                .neighbors(u)
                .iter()
                .find(|&&(w, _)| w == v)
                .map(|&(_, e)| e)
                .expect("middle edge is a tree edge");
            for &(a, ea) in tree.neighbors(u).iter().filter(|&&(w, _)| w != v) {
                for &(b, eb) in tree.neighbors(v).iter().filter(|&&(w, _)| w != u) {
                    let frame = edge_frame(tree, splits, (u, v, euv), (a, ea), (b, eb));
                    walk(tree, splits, frame, OPS_EDGE_INIT, count, &mut stats, &mut sink);
                }
            }
        }
    }
    stats
}

/// Emits every inset edge owned by one middle.
pub fn sweep_middle<F: FnMut(InsetRecord)>(
    tree: &Tree,
    splits: &SplitTable,
    middle: &Middle,
    options: SweepOptions,
    mut sink: F,
) -> SweepStats {
    sweep_middle_traced(tree, splits, middle, options, |record, _| sink(record))
}

/// Emits exactly one record per inset edge of the tree, middle by middle,
/// with per-record operation charges.
pub fn sweep_traced<F: FnMut(InsetRecord, u64)>(
    tree: &Tree,
    splits: &SplitTable,
    options: SweepOptions,
    mut sink: F,
) -> SweepStats {
    let mut stats = SweepStats::default();
    for middle in enumerate_middles(tree) {
        stats.absorb(sweep_middle_traced(tree, splits, &middle, options, &mut sink));
    }
    stats
}

/// Emits exactly one record per inset edge of the tree. Trees with no
/// inset edges produce no records.
pub fn sweep_all<F: FnMut(InsetRecord)>(tree: &Tree, splits: &SplitTable, sink: F) -> SweepStats {
    sweep_all_with(tree, splits, SweepOptions::default(), sink)
}

/// [`sweep_all`] with explicit options.
pub fn sweep_all_with<F: FnMut(InsetRecord)>(
    tree: &Tree,
    splits: &SplitTable,
    options: SweepOptions,
    mut sink: F,
) -> SweepStats {
    sweep_traced(tree, splits, options, |record, _| sink(record))
}

/// Sweeps middles across `workers` threads and returns the records
/// sorted by `(x, y)`. The output is identical for any worker count.
pub fn sweep_parallel(
    tree: &Tree,
    splits: &SplitTable,
    options: SweepOptions,
    workers: usize,
) -> (Vec<InsetRecord>, SweepStats) {
    let workers = workers.max(1);
    let middles = enumerate_middles(tree);
    let mut records: Vec<InsetRecord>;
    let mut stats = SweepStats::default();
    if workers == 1 || middles.len() <= 1 {
        records = Vec::new();
        for middle in &middles {
            stats.absorb(sweep_middle(tree, splits, middle, options, |r| records.push(r)));
        }
    } else {
        let shards: Vec<(Vec<InsetRecord>, SweepStats)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let middles = &middles;
                    scope.spawn(move || {
                        let mut local = Vec::new();
                        let mut local_stats = SweepStats::default();
                        for middle in middles.iter().skip(w).step_by(workers) {
                            local_stats.absorb(sweep_middle(tree, splits, middle, options, |r| {
                                local.push(r)
                            }));
                        }
                        (local, local_stats)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        records = Vec::new();
        for (shard, shard_stats) in shards {
            records.extend(shard);
            stats.absorb(shard_stats);
        }
    }
    records.sort_unstable();
    (records, stats)
}
