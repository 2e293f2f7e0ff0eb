//! Labeled tree representation, edge-list parsing, generators, and the
//! basic traversals everything else builds on.
//!
//! Vertices carry arbitrary string labels from the input; internally they
//! are remapped to dense ids `0..n-1` in first-appearance order. All
//! results are reported with the original labels.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Dense vertex id, `0..n-1`.
pub type VertexId = u32;
/// Index into [`Tree::edges`].
pub type EdgeId = u32;
/// A sum of pairwise hop counts. With the [`MAX_VERTICES`] guard the
/// largest possible value is `C(n+1, 3) < 2^63`, so `i64` never overflows.
pub type DistanceSum = i64;

/// Largest supported vertex count. Keeps every distance sum, weight
/// product, and partial term of the sweep inside `i64`.
pub const MAX_VERTICES: u64 = 2_000_000;

/// An immutable labeled tree.
#[derive(Debug, Clone)]
pub struct Tree {
    labels: Vec<String>,
    /// Per-vertex list of `(neighbor, edge id)` pairs, in input order.
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    /// Unordered edges in input order.
    edges: Vec<(VertexId, VertexId)>,
}

impl Tree {
    /// Builds a tree from labeled edges, assigning dense ids in
    /// first-appearance order. Rejects self-loops, duplicate edges,
    /// cycles, and disconnected inputs.
    pub fn from_labeled_edges<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Tree> {
        if pairs.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut ids: HashMap<String, VertexId> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(pairs.len());
        let mut intern = |token: &str, labels: &mut Vec<String>| -> VertexId {
            *ids.entry(token.to_owned()).or_insert_with(|| {
                labels.push(token.to_owned());
                (labels.len() - 1) as VertexId
            })
        };

        let mut dsu = DisjointSets::new();
        let mut seen = std::collections::HashSet::new();
        for (line, (a, b)) in pairs.iter().enumerate() {
            let (a, b) = (a.as_ref(), b.as_ref());
            let line = line + 1;
            if a == b {
                return Err(Error::SelfLoop {
                    line,
                    label: a.to_owned(),
                });
            }
            let u = intern(a, &mut labels);
            let v = intern(b, &mut labels);
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge {
                    line,
                    a: a.to_owned(),
                    b: b.to_owned(),
                });
            }
            dsu.ensure(labels.len());
            if !dsu.union(u as usize, v as usize) {
                return Err(Error::CycleDetected {
                    line,
                    a: a.to_owned(),
                    b: b.to_owned(),
                });
            }
            edges.push((u, v));
        }

        let n = labels.len();
        if n as u64 > MAX_VERTICES {
            return Err(Error::TooManyVertices { n: n as u64 });
        }
        if edges.len() + 1 != n {
            // No cycles and no duplicates, so fewer edges means several components.
            return Err(Error::Disconnected);
        }

        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for (eid, &(u, v)) in edges.iter().enumerate() {
            adj[u as usize].push((v, eid as EdgeId));
            adj[v as usize].push((u, eid as EdgeId));
        }
        Ok(Tree { labels, adj, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of candidate inset edges, `C(n,2) - (n-1)`.
    pub fn inset_edge_count(&self) -> u64 {
        let n = self.vertex_count() as u64;
        n * (n - 1) / 2 - (n - 1)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    /// `(neighbor, edge id)` pairs of `v`, in input order.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v as usize]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e as usize]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (v as usize) < self.labels.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u as usize].iter().any(|&(w, _)| w == v)
    }

    /// Hop distances from `src` to every vertex.
    pub fn bfs_distances(&self, src: VertexId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize] + 1;
            for &(w, _) in self.neighbors(v) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Hop distance between two vertices.
    pub fn distance(&self, x: VertexId, y: VertexId) -> u32 {
        self.bfs_distances(x)[y as usize]
    }

    /// The unique path `x = p_0, ..., p_d = y` together with the edge ids
    /// joining consecutive vertices.
    pub fn path_with_edges(&self, x: VertexId, y: VertexId) -> Result<(Vec<VertexId>, Vec<EdgeId>)> {
        if !self.contains(x) {
            return Err(Error::UnknownVertex(x));
        }
        if !self.contains(y) {
            return Err(Error::UnknownVertex(y));
        }
        if x == y {
            return Err(Error::SameVertex(x, y));
        }
        // BFS from y so the parent chain walks x -> y in order.
        let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        seen[y as usize] = true;
        queue.push_back(y);
        while let Some(v) = queue.pop_front() {
            if v == x {
                break;
            }
            for &(w, e) in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = Some((v, e));
                    queue.push_back(w);
                }
            }
        }
        let mut vertices = vec![x];
        let mut path_edges = Vec::new();
        let mut cur = x;
        while cur != y {
            let (next, e) = parent[cur as usize].expect("tree is connected");
            vertices.push(next);
            path_edges.push(e);
            cur = next;
        }
        Ok((vertices, path_edges))
    }

    /// Writes the tree in the edge-list format: a `# n=<count>` header
    /// followed by one edge per line, in input order.
    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# n={}", self.vertex_count())?;
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", self.label(u), self.label(v))?;
        }
        Ok(())
    }

    /// The edge-list text produced by [`Tree::write_to`].
    pub fn to_edge_list(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("labels are valid UTF-8")
    }
}

/// The unique path between two distinct vertices.
pub fn tree_path(tree: &Tree, x: VertexId, y: VertexId) -> Result<Vec<VertexId>> {
    tree.path_with_edges(x, y).map(|(vs, _)| vs)
}

/// Parses the edge-list format: one edge per line as two whitespace
/// separated tokens; blank lines and lines starting with `#` are ignored.
pub fn parse_tree<R: BufRead>(reader: R) -> Result<Tree> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::MalformedLine {
                line: idx + 1,
                found: tokens.len(),
            });
        }
        pairs.push((tokens[0].to_owned(), tokens[1].to_owned()));
        lines.push(idx + 1);
    }
    Tree::from_labeled_edges(&pairs).map_err(|e| relocate_line(e, &lines))
}

/// `from_labeled_edges` numbers errors by pair index; map them back to the
/// source line the pair came from.
fn relocate_line(err: Error, lines: &[usize]) -> Error {
    let fix = |line: usize| lines.get(line - 1).copied().unwrap_or(line);
    match err {
        Error::MalformedLine { line, found } => Error::MalformedLine {
            line: fix(line),
            found,
        },
        Error::SelfLoop { line, label } => Error::SelfLoop {
            line: fix(line),
            label,
        },
        Error::DuplicateEdge { line, a, b } => Error::DuplicateEdge { line: fix(line), a, b },
        Error::CycleDetected { line, a, b } => Error::CycleDetected { line: fix(line), a, b },
        other => other,
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        parse_tree(s.as_bytes())
    }
}

/// Families available from [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    Path,
    Star,
    Caterpillar,
    Random,
}

impl FromStr for TreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<TreeKind> {
        match s {
            "path" => Ok(TreeKind::Path),
            "star" => Ok(TreeKind::Star),
            "caterpillar" => Ok(TreeKind::Caterpillar),
            "random" => Ok(TreeKind::Random),
            other => Err(Error::UnknownTreeKind(other.to_owned())),
        }
    }
}

impl std::fmt::Display for TreeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            TreeKind::Path => "path",
            TreeKind::Star => "star",
            TreeKind::Caterpillar => "caterpillar",
            TreeKind::Random => "random",
        };
        f.write_str(name)
    }
}

/// Generates a tree with vertices labeled `1..=n`. Deterministic for a
/// fixed `(kind, n, seed)`; the `random` kind samples uniformly over all
/// `n^(n-2)` labeled trees via a bijective sequence encoding.
pub fn generate(kind: TreeKind, n: u64, seed: u64) -> Result<Tree> {
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n });
    }
    let pairs = match kind {
        TreeKind::Path => (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect(),
        TreeKind::Star => (2..=n).map(|i| ("1".to_string(), i.to_string())).collect(),
        TreeKind::Caterpillar => caterpillar_edges(n, seed),
        TreeKind::Random => random_tree_edges(n, seed),
    };
    Tree::from_labeled_edges(&pairs)
}

/// A spine path with the remaining vertices attached as legs at seeded
/// random spine positions.
fn caterpillar_edges(n: u64, seed: u64) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spine = if n == 2 { 2 } else { rng.gen_range(2..=n) };
    let mut pairs: Vec<(String, String)> = (1..spine)
        .map(|i| (i.to_string(), (i + 1).to_string()))
        .collect();
    for leg in spine + 1..=n {
        let anchor = rng.gen_range(1..=spine);
        pairs.push((anchor.to_string(), leg.to_string()));
    }
    pairs
}

/// Decodes a uniformly random length-(n-2) sequence over the vertex set
/// into its labeled tree, which makes the tree uniform as well. Linear
/// time via the moving-pointer decoder.
fn random_tree_edges(n: u64, seed: u64) -> Vec<(String, String)> {
    let n = n as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 2 {
        return vec![("1".to_string(), "2".to_string())];
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();

    let mut degree = vec![1u32; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut pairs = Vec::with_capacity(n - 1);
    let label = |v: usize| (v + 1).to_string();
    // `ptr` scans for leaves in increasing order; `leaf` may drop below it
    // when stripping a sequence vertex turns it into a leaf.
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &v in &seq {
        pairs.push((label(leaf), label(v)));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    pairs.push((label(leaf), label(n - 1)));
    pairs
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new() -> Self {
        DisjointSets { parent: Vec::new() }
    }

    fn ensure(&mut self, n: usize) {
        while self.parent.len() < n {
            self.parent.push(self.parent.len());
        }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    /// Returns false when both vertices are already in one component.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
