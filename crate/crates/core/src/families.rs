//! Named graph families, recognizers, and seeded random generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet, MAX_VERTICES};

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn labeled(n: usize, edges: &[(Vertex, Vertex)], labels: Vec<String>) -> Result<Graph> {
    Graph::from_edges(n, edges)?.with_labels(labels)
}

/// The `n x m` grid. Vertex `x_{i,j}` (1-based) has index `(i-1)*m + (j-1)`.
pub fn grid(n: usize, m: usize) -> Result<Graph> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!("grid({n},{m}) has a zero dimension")));
    }
    let idx = |i: usize, j: usize| i * m + j;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..m {
            if j + 1 < m {
                edges.push((idx(i, j), idx(i, j + 1)));
            }
            if i + 1 < n {
                edges.push((idx(i, j), idx(i + 1, j)));
            }
        }
    }
    let labels = (0..n * m)
        .map(|v| format!("x_{{{},{}}}", v / m + 1, v % m + 1))
        .collect();
    labeled(n * m, &edges, labels)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("complete needs n >= 1".into()));
    }
    Ok(Graph::empty(n)?.complement())
}

/// `K_{n_1,...,n_p}` with the parts laid out consecutively.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("no parts given".into()));
    }
    if parts.contains(&0) {
        return Err(Error::InvalidParameter("parts must be nonempty".into()));
    }
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Cliques on a common core `x_1..x_p`, the i-th adding its own `m_i`
/// peripheral vertices. Core vertices come first, then `y_{1,1}..y_{1,m_1}`,
/// `y_{2,1}`, and so on.
pub fn gamma_graph(p: usize, ms: &[usize]) -> Result<Graph> {
    if p == 0 {
        return Err(Error::InvalidParameter("core must be nonempty".into()));
    }
    if ms.is_empty() {
        return Err(Error::InvalidParameter("no cliques given".into()));
    }
    if ms.contains(&0) {
        return Err(Error::InvalidParameter("every clique needs a peripheral vertex".into()));
    }
    let n = p + ms.iter().sum::<usize>();
    let mut edges = Vec::new();
    let mut labels: Vec<String> = (1..=p).map(|i| format!("x{i}")).collect();
    for u in 0..p {
        for v in u + 1..p {
            edges.push((u, v));
        }
    }
    let mut next = p;
    for (i, &m) in ms.iter().enumerate() {
        let block: Vec<usize> = (next..next + m).collect();
        for (j, &y) in block.iter().enumerate() {
            labels.push(format!("y{},{}", i + 1, j + 1));
            for x in 0..p {
                edges.push((x, y));
            }
            for &z in &block[j + 1..] {
                edges.push((y, z));
            }
        }
        next += m;
    }
    labeled(n, &edges, labels)
}

/// Clique `K` on `k` vertices, independent set `S` on `s` vertices, and every
/// edge between the first `kprime` clique vertices and `S`. Vertex order is
/// `K'`, then `K \ K'`, then `S`.
pub fn partially_split(k: usize, s: usize, kprime: usize) -> Result<Graph> {
    if kprime == 0 || kprime > k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k' <= k, got k'={kprime}, k={k}"
        )));
    }
    let n = k + s;
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    for u in 0..kprime {
        for y in k..n {
            edges.push((u, y));
        }
    }
    let labels = (0..n)
        .map(|v| {
            if v < kprime {
                format!("k'{}", v + 1)
            } else if v < k {
                format!("k{}", v + 1)
            } else {
                format!("s{}", v - k + 1)
            }
        })
        .collect();
    labeled(n, &edges, labels)
}

/// A K_4 on {0,1,2,6} and a triangle {3,4,5} with 4 and 5 joined to 6.
/// Its edge ideal has regularity 3 while `I_2` has regularity 5.
pub fn regularity_jump_graph() -> Graph {
    let e = [(0, 1), (0, 2), (0, 6), (1, 2), (1, 6), (2, 6), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)];
    Graph::from_edges(7, &e).expect("fixed edge list")
}

/// Decodes a Prüfer sequence over `0..n`.
pub fn tree_from_prufer(n: usize, seq: &[usize]) -> Result<Graph> {
    if n < 2 || seq.len() != n - 2 {
        return Err(Error::InvalidParameter(format!(
            "Prüfer sequence for n={n} must have length n-2"
        )));
    }
    let mut degree = vec![1usize; n];
    for &a in seq {
        if a >= n {
            return Err(Error::VertexOutOfRange { vertex: a, n });
        }
        degree[a] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, a));
        degree[leaf] -= 1;
        degree[a] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges)
}

/// A random tree with maximum degree at most `maxdeg`.
///
/// The Prüfer sequence is drawn position by position from the labels that
/// still have room (a label appearing `k` times ends with degree `k+1`), so
/// the bound holds by construction and no rejection loop is needed.
pub fn random_tree_max_degree(n: usize, maxdeg: usize, seed: u64) -> Result<Graph> {
    match n {
        0 => return Err(Error::InvalidParameter("tree needs n >= 1".into())),
        1 => return Graph::empty(1),
        2 => return Graph::from_edges(2, &[(0, 1)]),
        _ => {}
    }
    if maxdeg < 2 {
        return Err(Error::InvalidParameter(format!(
            "no tree on {n} vertices has maximum degree {maxdeg}"
        )));
    }
    let mut rng = rng_for(seed);
    let mut count = vec![0usize; n];
    let mut seq = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let open: Vec<usize> = (0..n).filter(|&v| count[v] + 1 < maxdeg).collect();
        let a = *open.choose(&mut rng).expect("capacity n*(maxdeg-1) exceeds n-2");
        count[a] += 1;
        seq.push(a);
    }
    tree_from_prufer(n, &seq)
}

/// Whether every block is a clique.
pub fn is_block_graph(g: &Graph) -> bool {
    g.blocks().into_iter().all(|b| g.is_clique(b))
}

/// Whether every edge lies on at most one cycle, i.e. every block is a
/// vertex, an edge, or a chordless cycle.
pub fn is_cactus(g: &Graph) -> bool {
    g.blocks().into_iter().all(|b| {
        let k = b.len();
        if k <= 2 {
            return true;
        }
        let edges: usize = b.iter().map(|v| (g.neighbors(v) & b).len()).sum::<usize>() / 2;
        edges == k
    })
}

/// Union of cliques on the given vertex sets. The blocks must meet pairwise
/// in at most one vertex and their incidence structure must be a forest.
pub fn block_graph(n: usize, blocks: &[VertexSet]) -> Result<Graph> {
    let g = Graph::empty(n)?;
    for (i, &a) in blocks.iter().enumerate() {
        g.check_set(a)?;
        if a.is_empty() {
            return Err(Error::InvalidPartition(format!("block {i} is empty")));
        }
        for (j, &b) in blocks.iter().enumerate().skip(i + 1) {
            if (a & b).len() > 1 {
                return Err(Error::InvalidPartition(format!(
                    "blocks {i} and {j} share {} vertices",
                    (a & b).len()
                )));
            }
        }
    }
    // Vertex-block incidence graph must be acyclic.
    let nodes = n + blocks.len();
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, &b) in blocks.iter().enumerate() {
        for v in b.iter() {
            let (x, y) = (find(&mut parent, v), find(&mut parent, n + i));
            if x == y {
                return Err(Error::InvalidPartition(
                    "blocks close a cycle; the result would not be a block graph".into(),
                ));
            }
            parent[x] = y;
        }
    }
    let mut edges = Vec::new();
    for &b in blocks {
        let vs = b.to_vec();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, &edges)
}

/// A connected random block graph on at most `max_n` vertices (at least 2).
pub fn random_block_graph(max_n: usize, seed: u64) -> Result<Graph> {
    if !(2..=MAX_VERTICES).contains(&max_n) {
        return Err(Error::InvalidParameter(format!("max_n={max_n} out of range")));
    }
    let mut rng = rng_for(seed);
    let target = rng.gen_range(2.max(max_n / 2)..=max_n);
    let first = rng.gen_range(2..=4.min(target));
    let mut blocks = vec![VertexSet::full(first)];
    let mut n = first;
    while n < target {
        let size = rng.gen_range(2..=4.min(target - n + 1));
        let at = rng.gen_range(0..n);
        let b: VertexSet = std::iter::once(at).chain(n..n + size - 1).collect();
        blocks.push(b);
        n += size - 1;
    }
    block_graph(n, &blocks)
}

/// Whether no four vertices induce `2K_2` or `C_4`.
pub fn is_2k2_c4_free(g: &Graph) -> bool {
    find_2k2_or_c4(g).is_none()
}

/// A 4-set inducing `2K_2` or `C_4`, if any.
pub fn find_2k2_or_c4(g: &Graph) -> Option<VertexSet> {
    g.vertices().subsets_of_size(4).find(|&s| {
        let degs: Vec<usize> = s.iter().map(|v| (g.neighbors(v) & s).len()).collect();
        let edges: usize = degs.iter().sum::<usize>() / 2;
        (edges == 2 && degs.iter().all(|&d| d == 1)) || (edges == 4 && degs.iter().all(|&d| d == 2))
    })
}

/// A `(2K_2, C_4)`-free graph: `V_1` independent (`n1` vertices), `V_2` a
/// clique (`n2` vertices), and optionally a five-cycle `V_3` joined to all of
/// `V_2` and to nothing in `V_1`. Edges between `V_1` and `V_2` are drawn at
/// random and redrawn until the result is free; after a fixed number of
/// misses a nested (threshold) pattern is drawn instead, which always works.
pub fn generate_2k2c4_free(n1: usize, n2: usize, with_c5: bool, seed: u64) -> Result<Graph> {
    let n3 = if with_c5 { 5 } else { 0 };
    let n = n1 + n2 + n3;
    if n == 0 {
        return Err(Error::InvalidParameter("graph would have no vertices".into()));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    let v2: Vec<usize> = (n1..n1 + n2).collect();
    let mut base = Vec::new();
    for (i, &a) in v2.iter().enumerate() {
        for &b in &v2[i + 1..] {
            base.push((a, b));
        }
    }
    if with_c5 {
        let c0 = n1 + n2;
        for i in 0..5 {
            base.push((c0 + i, c0 + (i + 1) % 5));
            for &b in &v2 {
                base.push((b, c0 + i));
            }
        }
    }
    let mut labels: Vec<String> = (0..n1).map(|i| format!("a{}", i + 1)).collect();
    labels.extend((0..n2).map(|i| format!("b{}", i + 1)));
    labels.extend((0..n3).map(|i| format!("c{}", i + 1)));

    let mut rng = rng_for(seed);
    for attempt in 0.. {
        let mut edges = base.clone();
        if attempt < 64 {
            for a in 0..n1 {
                for &b in &v2 {
                    if rng.gen_bool(0.5) {
                        edges.push((a, b));
                    }
                }
            }
        } else {
            let mut order = v2.clone();
            order.shuffle(&mut rng);
            for a in 0..n1 {
                let k = rng.gen_range(0..=n2);
                edges.extend(order[..k].iter().map(|&b| (a, b)));
            }
        }
        let g = labeled(n, &edges, labels.clone())?;
        if is_2k2_c4_free(&g) {
            return Ok(g);
        }
    }
    unreachable!("nested neighborhoods are always (2K2, C4)-free")
}

/// A random connected chordal graph on `vertices` (edges in original
/// indices), built by repeatedly attaching a new vertex to a clique.
pub fn random_chordal_edges(vertices: &[Vertex], rng: &mut impl Rng) -> Vec<(Vertex, Vertex)> {
    let mut order = vertices.to_vec();
    order.shuffle(rng);
    let mut adj: Vec<VertexSet> = vec![VertexSet::EMPTY; MAX_VERTICES];
    let mut edges = Vec::new();
    for i in 1..order.len() {
        let v = order[i];
        let u = order[rng.gen_range(0..i)];
        let mut clique = VertexSet::singleton(u);
        let mut nbrs = adj[u].to_vec();
        nbrs.shuffle(rng);
        for w in nbrs {
            if clique.is_subset(adj[w]) && rng.gen_bool(0.5) {
                clique.insert(w);
            }
        }
        for w in clique.iter() {
            adj[w].insert(v);
            adj[v].insert(w);
            edges.push((w.min(v), w.max(v)));
        }
    }
    edges.sort_unstable();
    edges
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceKind {
    Chordal,
    Cycle,
}

impl PieceKind {
    pub fn name(self) -> &'static str {
        match self {
            PieceKind::Chordal => "chordal",
            PieceKind::Cycle => "cycle",
        }
    }
}

/// One constituent component: the host vertices attached to a skeleton edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub edge: (Vertex, Vertex),
    pub kind: PieceKind,
    pub vertices: VertexSet,
    /// Explicit piece edges. When absent, [`build_co_chordal_cactus`] fills
    /// in a cycle in vertex order or a random chordal graph.
    pub edges: Option<Vec<(Vertex, Vertex)>>,
}

/// A cactus skeleton together with one piece per skeleton edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CactusDecomposition {
    pub skeleton: Graph,
    pub pieces: Vec<Piece>,
}

impl CactusDecomposition {
    /// Union of the piece vertex sets.
    pub fn vertex_union(&self) -> VertexSet {
        self.pieces.iter().fold(VertexSet::EMPTY, |acc, p| acc | p.vertices)
    }

    /// Vertices in at least two pieces.
    pub fn connectors(&self) -> VertexSet {
        let mut seen = VertexSet::EMPTY;
        let mut twice = VertexSet::EMPTY;
        for p in &self.pieces {
            twice |= seen & p.vertices;
            seen |= p.vertices;
        }
        twice
    }

    /// For a connector `x`, the neighbors of `x` in `gbar` inside each piece
    /// containing it, in piece order. This is the partition consumed by
    /// [`Graph::split_vertex`].
    pub fn splitting_parts(&self, gbar: &Graph, x: Vertex) -> Vec<VertexSet> {
        self.pieces
            .iter()
            .filter(|p| p.vertices.contains(x))
            .map(|p| gbar.neighbors(x) & p.vertices)
            .collect()
    }
}

/// The first violated clause of the decomposition conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionViolation {
    /// 1: skeleton not a cactus; 2: piece map or piece shape; 3: coverage;
    /// 4: intersection property.
    pub clause: u8,
    pub message: String,
    pub pieces: Vec<usize>,
    pub vertices: Vec<Vertex>,
}

impl std::fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "clause ({}): {}", self.clause, self.message)
    }
}

fn violation(clause: u8, message: String, pieces: Vec<usize>, vertices: Vec<Vertex>) -> DecompositionViolation {
    DecompositionViolation {
        clause,
        message,
        pieces,
        vertices,
    }
}

fn is_cycle_graph(g: &Graph, s: VertexSet) -> bool {
    s.len() >= 3 && s.iter().all(|v| (g.neighbors(v) & s).len() == 2) && g.connected_unchecked(s)
}

/// Checks `d` against `gbar` clause by clause and reports the first failure.
pub fn validate_decomposition(gbar: &Graph, d: &CactusDecomposition) -> std::result::Result<(), DecompositionViolation> {
    let t = &d.skeleton;
    if !is_cactus(t) {
        let bad = t
            .blocks()
            .into_iter()
            .find(|&b| {
                b.len() > 2 && b.iter().map(|v| (t.neighbors(v) & b).len()).sum::<usize>() / 2 != b.len()
            })
            .unwrap_or_default();
        return Err(violation(
            1,
            format!("skeleton block {bad} has an edge on two cycles"),
            vec![],
            bad.to_vec(),
        ));
    }

    // One piece per skeleton edge.
    let mut seen = std::collections::HashSet::new();
    for (i, p) in d.pieces.iter().enumerate() {
        let (a, b) = p.edge;
        if a >= t.n() || b >= t.n() || !t.has_edge(a, b) {
            return Err(violation(2, format!("piece {i} sits on ({a},{b}), not a skeleton edge"), vec![i], vec![]));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(violation(2, format!("skeleton edge ({a},{b}) carries two pieces"), vec![i], vec![]));
        }
    }
    if let Some((a, b)) = t.edges().into_iter().find(|e| !seen.contains(e)) {
        return Err(violation(2, format!("skeleton edge ({a},{b}) carries no piece"), vec![], vec![]));
    }

    for (i, p) in d.pieces.iter().enumerate() {
        if let Err(e) = gbar.check_set(p.vertices) {
            return Err(violation(3, format!("piece {i}: {e}"), vec![i], vec![]));
        }
        if p.vertices.is_empty() {
            return Err(violation(2, format!("piece {i} is empty"), vec![i], vec![]));
        }
        if let Some(edges) = &p.edges {
            let mut given: Vec<_> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            given.sort_unstable();
            let induced: Vec<_> = gbar
                .edges()
                .into_iter()
                .filter(|&(u, v)| p.vertices.contains(u) && p.vertices.contains(v))
                .collect();
            if given != induced {
                return Err(violation(2, format!("piece {i} is not an induced subgraph"), vec![i], p.vertices.to_vec()));
            }
        }
        let ok = match p.kind {
            PieceKind::Cycle => is_cycle_graph(gbar, p.vertices),
            PieceKind::Chordal => gbar.induced_subgraph(p.vertices).map(|h| h.is_chordal()).unwrap_or(false),
        };
        if !ok {
            return Err(violation(
                2,
                format!("piece {i} does not induce a {} graph", p.kind.name()),
                vec![i],
                p.vertices.to_vec(),
            ));
        }
    }

    let union = d.vertex_union();
    if union != gbar.vertices() {
        let missing = gbar.vertices() - union;
        return Err(violation(3, format!("vertices {missing} lie in no piece"), vec![], missing.to_vec()));
    }
    for (u, v) in gbar.edges() {
        if !d.pieces.iter().any(|p| p.vertices.contains(u) && p.vertices.contains(v)) {
            return Err(violation(3, format!("edge ({u},{v}) lies in no piece"), vec![], vec![u, v]));
        }
    }

    for (i, p) in d.pieces.iter().enumerate() {
        for (j, q) in d.pieces.iter().enumerate().skip(i + 1) {
            let common = p.vertices & q.vertices;
            if common.len() > 1 {
                return Err(violation(4, format!("pieces {i} and {j} share {common}"), vec![i, j], common.to_vec()));
            }
            let adjacent = [p.edge.0, p.edge.1].iter().any(|&a| a == q.edge.0 || a == q.edge.1);
            if !common.is_empty() && !adjacent {
                return Err(violation(
                    4,
                    format!("pieces {i} and {j} meet but their skeleton edges are disjoint"),
                    vec![i, j],
                    common.to_vec(),
                ));
            }
        }
    }
    Ok(())
}

/// Assembles the complement graph from the pieces, filling in unspecified
/// piece edges, validates it, and returns the HOST graph (its complement)
/// together with the fully specified decomposition.
pub fn assemble_co_chordal_cactus(d: &CactusDecomposition, seed: u64) -> Result<(Graph, CactusDecomposition)> {
    let union = d.vertex_union();
    let n = union.span();
    let mut rng = rng_for(seed);
    let mut filled = d.clone();
    let mut edges = Vec::new();
    for p in &mut filled.pieces {
        let vs = p.vertices.to_vec();
        let es = match (&p.edges, p.kind) {
            (Some(es), _) => es.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect(),
            (None, PieceKind::Cycle) => {
                let k = vs.len();
                if k < 3 {
                    return Err(Error::Precondition(format!("cycle piece {} has fewer than 3 vertices", p.vertices)));
                }
                let mut es: Vec<_> = (0..k).map(|i| (vs[i].min(vs[(i + 1) % k]), vs[i].max(vs[(i + 1) % k]))).collect();
                es.sort_unstable();
                es
            }
            (None, PieceKind::Chordal) => random_chordal_edges(&vs, &mut rng),
        };
        edges.extend(es.iter().copied());
        p.edges = Some(es);
    }
    edges.sort_unstable();
    edges.dedup();
    let gbar = Graph::from_edges(n, &edges)?;
    validate_decomposition(&gbar, &filled).map_err(|v| Error::Precondition(format!("decomposition invalid: {v}")))?;
    Ok((gbar.complement(), filled))
}

/// The host graph `G` whose complement is assembled from `d`.
pub fn build_co_chordal_cactus(d: &CactusDecomposition, seed: u64) -> Result<Graph> {
    assemble_co_chordal_cactus(d, seed).map(|(g, _)| g)
}

/// Skeleton shapes used by the random generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkeletonShape {
    Edge,
    Path3,
    Path4,
    Cycle3,
    Cycle4,
    Cycle5,
}

impl SkeletonShape {
    pub const ALL: [SkeletonShape; 6] = [
        SkeletonShape::Edge,
        SkeletonShape::Path3,
        SkeletonShape::Path4,
        SkeletonShape::Cycle3,
        SkeletonShape::Cycle4,
        SkeletonShape::Cycle5,
    ];

    pub fn graph(self) -> Graph {
        match self {
            SkeletonShape::Edge => path(2),
            SkeletonShape::Path3 => path(3),
            SkeletonShape::Path4 => path(4),
            SkeletonShape::Cycle3 => cycle(3),
            SkeletonShape::Cycle4 => cycle(4),
            SkeletonShape::Cycle5 => cycle(5),
        }
        .expect("fixed small sizes")
    }

    pub fn name(self) -> &'static str {
        match self {
            SkeletonShape::Edge => "K2",
            SkeletonShape::Path3 => "P3",
            SkeletonShape::Path4 => "P4",
            SkeletonShape::Cycle3 => "C3",
            SkeletonShape::Cycle4 => "C4",
            SkeletonShape::Cycle5 => "C5",
        }
    }
}

/// A random decomposition on the given skeleton with at most `max_n` host
/// vertices. Each skeleton vertex of degree at least two becomes, with
/// probability 3/4, a connector shared by every piece at that vertex. Piece
/// kinds are mixed and piece sizes scale with `max_n` per skeleton edge;
/// piece contents are left unspecified.
pub fn random_cactus_decomposition(shape: SkeletonShape, max_n: usize, seed: u64) -> Result<CactusDecomposition> {
    let skeleton = shape.graph();
    let t_edges = skeleton.edges();
    let mut rng = rng_for(seed);
    // Few skeleton edges leave room for larger pieces.
    let spread = max_n / t_edges.len().max(1) + 1;
    for _ in 0..10_000 {
        let mut next = 0usize;
        let mut connector = vec![None; skeleton.n()];
        for (v, slot) in connector.iter_mut().enumerate() {
            if skeleton.degree(v) >= 2 && rng.gen_bool(0.75) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut pieces = Vec::new();
        for &(a, b) in &t_edges {
            let kind = if rng.gen_bool(0.5) { PieceKind::Chordal } else { PieceKind::Cycle };
            let shared: Vec<usize> = [connector[a], connector[b]].into_iter().flatten().collect();
            let lo = match kind {
                PieceKind::Chordal => 2,
                PieceKind::Cycle => 3,
            };
            let size = rng.gen_range(lo..=spread.max(lo + 2)).max(shared.len());
            let mut vs: VertexSet = shared.iter().copied().collect();
            while vs.len() < size {
                vs.insert(next);
                next += 1;
            }
            pieces.push(Piece {
                edge: (a, b),
                kind,
                vertices: vs,
                edges: None,
            });
        }
        if next <= max_n {
            return Ok(CactusDecomposition { skeleton, pieces });
        }
    }
    Err(Error::InvalidParameter(format!(
        "could not fit a {} skeleton into {max_n} vertices",
        shape.name()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_chordal(g: &Graph) -> bool {
        // No induced cycle of length >= 4: check every subset of size >= 4
        // that induces a 2-regular connected graph.
        g.vertices()
            .subsets()
            .filter(|s| s.len() >= 4)
            .all(|s| !is_cycle_graph(g, s))
    }

    #[test]
    fn small_constructions() {
        assert_eq!(cycle(3).unwrap(), complete(3).unwrap());
        assert_eq!(path(2).unwrap(), complete(2).unwrap());
        assert_eq!(cycle(4).unwrap(), grid(2, 2).unwrap().permuted(&[0, 1, 3, 2]).unwrap());
        assert_eq!(grid(1, 5).unwrap(), path(5).unwrap());
        assert!(cycle(2).is_err());
        assert!(grid(0, 3).is_err());
        assert_eq!(complete_multipartite(&[1, 1, 1]).unwrap(), complete(3).unwrap());
        assert_eq!(complete_multipartite(&[2, 2]).unwrap().edge_count(), 4);
        assert_eq!(complete_multipartite(&[1, 3]).unwrap().degree(0), 3);
    }

    #[test]
    fn grid_shape() {
        for n in 1..=4 {
            for m in 1..=4 {
                let g = grid(n, m).unwrap();
                assert_eq!(g.n(), n * m);
                assert_eq!(g.edge_count(), n * (m - 1) + m * (n - 1));
            }
        }
        let g = grid(3, 4).unwrap();
        assert_eq!(g.label(5), "x_{2,2}");
        // x11, x12, x22 induce a path.
        let p = g.induced_subgraph(VertexSet::from([0, 1, 5])).unwrap();
        assert_eq!(p.edge_count(), 2);
        assert!(!grid(2, 3).unwrap().is_chordal());
        assert!(!grid(2, 2).unwrap().is_connected_subset(VertexSet::from([0, 3])).unwrap());
    }

    #[test]
    fn gamma_graphs() {
        let g = gamma_graph(1, &[1, 1]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(gamma_graph(2, &[1]).unwrap(), complete(3).unwrap());
        let bowtie = gamma_graph(1, &[2, 2]).unwrap();
        assert_eq!(bowtie.edge_count(), 6);
        assert!(bowtie.is_cut_vertex(0).unwrap());
        let g = gamma_graph(2, &[2, 1, 3]).unwrap();
        let periph = g.vertices() - VertexSet::full(2);
        let comps = g.components_within(periph);
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|&c| g.is_clique(c)));
    }

    #[test]
    fn partially_split_graphs() {
        let g = partially_split(3, 2, 1).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]);
        assert_eq!(partially_split(1, 4, 1).unwrap(), complete_multipartite(&[1, 4]).unwrap());
        let full = partially_split(3, 2, 3).unwrap();
        assert!((3..5).all(|s| full.neighbors(s) == VertexSet::full(3)));
        assert!(partially_split(2, 2, 3).is_err());
        assert!(partially_split(2, 2, 0).is_err());
    }

    #[test]
    fn random_trees() {
        for seed in 0..20 {
            let t = random_tree_max_degree(8, 2, seed).unwrap();
            assert!(t.is_connected());
            assert_eq!(t.edge_count(), 7);
            assert!(t.max_degree() <= 2);
            let t = random_tree_max_degree(9, 3, seed).unwrap();
            assert!(t.is_connected() && t.max_degree() <= 3 && t.edge_count() == 8);
        }
        assert_eq!(random_tree_max_degree(2, 7, 1).unwrap(), complete(2).unwrap());
        assert!(random_tree_max_degree(4, 1, 0).is_err());
        assert_eq!(random_tree_max_degree(6, 3, 42).unwrap(), random_tree_max_degree(6, 3, 42).unwrap());
    }

    #[test]
    fn star_is_reachable() {
        // Prüfer sequences of length 3 over 5 labels: the constant ones give
        // stars, so some seed must hit a star when maxdeg = 4.
        assert_eq!(tree_from_prufer(5, &[2, 2, 2]).unwrap().degree(2), 4);
        assert!((0..500).any(|s| random_tree_max_degree(5, 4, s).unwrap().max_degree() == 4));
    }

    #[test]
    fn block_graphs() {
        assert!(is_block_graph(&complete(5).unwrap()));
        assert!(is_block_graph(&path(5).unwrap()));
        assert!(!is_block_graph(&cycle(4).unwrap()));
        let g = block_graph(5, &[VertexSet::from([0, 1, 2]), VertexSet::from([2, 3, 4])]).unwrap();
        assert!(is_block_graph(&g));
        assert!(block_graph(4, &[VertexSet::from([0, 1, 2]), VertexSet::from([1, 2, 3])]).is_err());
        assert!(block_graph(
            3,
            &[VertexSet::from([0, 1]), VertexSet::from([1, 2]), VertexSet::from([0, 2])]
        )
        .is_err());
        for seed in 0..30 {
            let g = random_block_graph(9, seed).unwrap();
            assert!(g.n() <= 9 && g.is_connected() && is_block_graph(&g));
        }
    }

    #[test]
    fn cactus_recognition() {
        assert!(is_cactus(&cycle(5).unwrap()));
        assert!(!is_cactus(&complete(4).unwrap()));
        let two_triangles = block_graph(5, &[VertexSet::from([0, 1, 2]), VertexSet::from([2, 3, 4])]).unwrap();
        assert!(is_cactus(&two_triangles));
    }

    #[test]
    fn free_of_2k2_and_c4() {
        assert!(is_2k2_c4_free(&cycle(5).unwrap()));
        assert!(!is_2k2_c4_free(&cycle(4).unwrap()));
        assert!(!is_2k2_c4_free(&path(5).unwrap()));
        assert_eq!(generate_2k2c4_free(0, 0, true, 0).unwrap(), cycle(5).unwrap());
        assert_eq!(generate_2k2c4_free(0, 4, false, 0).unwrap(), complete(4).unwrap());
        for seed in 0..10 {
            let g = generate_2k2c4_free(2, 2, true, seed).unwrap();
            assert_eq!(g.n(), 9);
            assert!(is_2k2_c4_free(&g));
        }
    }

    #[test]
    fn random_chordal_pieces_are_chordal() {
        let mut rng = rng_for(3);
        for _ in 0..50 {
            let vs = [1, 4, 5, 7, 8, 9];
            let es = random_chordal_edges(&vs, &mut rng);
            let g = Graph::from_edges(10, &es).unwrap();
            let h = g.induced_subgraph(vs.iter().copied().collect()).unwrap();
            assert!(h.is_chordal() && brute_chordal(&h) && h.is_connected());
        }
    }

    #[test]
    fn chordality_matches_brute_force() {
        let mut rng = rng_for(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            assert_eq!(g.is_chordal(), brute_chordal(&g), "{g:?}");
        }
    }

    fn piece(edge: (usize, usize), kind: PieceKind, vs: &[usize]) -> Piece {
        Piece {
            edge,
            kind,
            vertices: vs.iter().copied().collect(),
            edges: None,
        }
    }

    #[test]
    fn decompositions() {
        // Single cycle piece: the host is the complement of C_n.
        let d = CactusDecomposition {
            skeleton: path(2).unwrap(),
            pieces: vec![piece((0, 1), PieceKind::Cycle, &[0, 1, 2, 3, 4])],
        };
        assert_eq!(build_co_chordal_cactus(&d, 0).unwrap(), cycle(5).unwrap().complement());

        // Triangle and four-cycle glued at vertex 2.
        let d = CactusDecomposition {
            skeleton: path(3).unwrap(),
            pieces: vec![
                piece((0, 1), PieceKind::Chordal, &[0, 1, 2]),
                piece((1, 2), PieceKind::Cycle, &[2, 3, 4, 5]),
            ],
        };
        let (g, filled) = assemble_co_chordal_cactus(
            &CactusDecomposition {
                pieces: vec![
                    Piece {
                        edges: Some(vec![(0, 1), (0, 2), (1, 2)]),
                        ..d.pieces[0].clone()
                    },
                    d.pieces[1].clone(),
                ],
                ..d.clone()
            },
            0,
        )
        .unwrap();
        assert_eq!(g.n(), 6);
        let gbar = g.complement();
        assert_eq!(gbar.edge_count(), 7);
        assert!(validate_decomposition(&gbar, &filled).is_ok());
        assert_eq!(filled.connectors(), VertexSet::from([2]));
        assert_eq!(
            filled.splitting_parts(&gbar, 2),
            vec![VertexSet::from([0, 1]), VertexSet::from([3, 5])]
        );

        // Two pieces sharing two vertices.
        let bad = CactusDecomposition {
            skeleton: path(3).unwrap(),
            pieces: vec![
                piece((0, 1), PieceKind::Chordal, &[0, 1, 2]),
                piece((1, 2), PieceKind::Chordal, &[1, 2, 3]),
            ],
        };
        let gbar = complete(4).unwrap();
        assert_eq!(validate_decomposition(&gbar, &bad).unwrap_err().clause, 3);
        let gbar = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(validate_decomposition(&gbar, &bad).unwrap_err().clause, 4);

        // K4 skeleton is not a cactus.
        let k4 = complete(4).unwrap();
        let pieces = k4
            .edges()
            .into_iter()
            .enumerate()
            .map(|(i, e)| piece(e, PieceKind::Chordal, &[2 * i, 2 * i + 1]))
            .collect();
        let d = CactusDecomposition { skeleton: k4, pieces };
        let gbar = Graph::from_edges(12, &(0..6).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>()).unwrap();
        assert_eq!(validate_decomposition(&gbar, &d).unwrap_err().clause, 1);
    }

    #[test]
    fn random_decompositions_validate() {
        for shape in SkeletonShape::ALL {
            for seed in 0..10 {
                let d = random_cactus_decomposition(shape, 11, seed).unwrap();
                let (g, filled) = assemble_co_chordal_cactus(&d, seed).unwrap();
                assert!(g.n() <= 11);
                assert!(validate_decomposition(&g.complement(), &filled).is_ok());
            }
        }
    }
}
