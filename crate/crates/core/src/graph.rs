//! Simple undirected graphs on at most 64 vertices.
//!
//! Vertices are dense indices `0..n`; neighborhoods and vertex subsets are
//! single-word bitmasks ([`VertexSet`]). Every algorithm that consumes a graph
//! is exponential in `n` somewhere, so the one-word representation is the only
//! one worth having.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: Vertex) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        v < MAX_VERTICES && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn min(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn max(self) -> Option<Vertex> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    #[inline]
    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Largest member index plus one (0 for the empty set).
    #[inline]
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<Vertex> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted member lists.
    ///
    /// For sets of equal size this is the order in which `{0,1,2}` precedes
    /// `{0,1,3}` precedes `{0,2,3}`.
    pub fn lex_cmp(self, other: VertexSet) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let (mine, theirs) = (self.0 & low != 0, other.0 & low != 0);
        match (mine, theirs) {
            // The first differing element belongs to self: self is smaller,
            // unless other has already run out of elements (a proper prefix).
            (true, false) => {
                if other.0 & !(low - 1) == 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            _ => {
                if self.0 & !(low - 1) == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// All subsets of `self` with exactly `k` members, in lexicographic order.
    pub fn subsets_of_size(self, k: usize) -> KSubsets {
        KSubsets::new(self.to_vec(), k)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Submasks {
        Submasks {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(vs: [Vertex; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitOrAssign for VertexSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    fn bitxor(self, rhs: Self) -> Self {
        VertexSet(self.0 ^ rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

/// Iterator over the members of a [`VertexSet`] in increasing order.
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = Vertex;

    #[inline]
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Fixed-size subsets of a ground list, lexicographic in list position.
pub struct KSubsets {
    items: Vec<Vertex>,
    idx: Vec<usize>,
    done: bool,
}

impl KSubsets {
    fn new(items: Vec<Vertex>, k: usize) -> Self {
        let done = k > items.len();
        KSubsets {
            items,
            idx: (0..k).collect(),
            done,
        }
    }
}

impl Iterator for KSubsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out: VertexSet = self.idx.iter().map(|&i| self.items[i]).collect();
        let k = self.idx.len();
        let n = self.items.len();
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All submasks of a mask, from the empty set upward.
pub struct Submasks {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(VertexSet(cur))
    }
}

/// A finite simple graph.
///
/// Equality compares vertex count and adjacency only; labels are display data.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            labels: None,
        })
    }

    /// Builds a graph from an edge list. Loops and repeated edges (in either
    /// orientation) are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.adj[u].contains(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from symmetric, irreflexive adjacency rows.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self> {
        let n = adj.len();
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n);
        for (u, &row) in adj.iter().enumerate() {
            if !row.is_subset(full) {
                return Err(Error::VertexOutOfRange {
                    vertex: (row - full).min().unwrap(),
                    n,
                });
            }
            if row.contains(u) {
                return Err(Error::SelfLoop(u));
            }
            for v in row.iter() {
                if !adj[v].contains(u) {
                    return Err(Error::Precondition(format!(
                        "adjacency is not symmetric at ({u},{v})"
                    )));
                }
            }
        }
        g.adj = adj;
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelLength {
                got: labels.len(),
                n: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    fn link(&mut self, u: Vertex, v: Vertex) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label if present, else its index.
    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match (s - self.vertices()).min() {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    /// The complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let full = self.vertices();
        let adj = (0..self.n)
            .map(|v| (full - self.adj[v]).without(v))
            .collect();
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    /// The subgraph induced on `s`, relabeled to `0..|s|` in increasing order
    /// of the original indices. Labels record the original names.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        let members = s.to_vec();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in members.iter().enumerate() {
            pos[v] = i;
        }
        let adj = members
            .iter()
            .map(|&v| (self.adj[v] & s).iter().map(|w| pos[w]).collect())
            .collect();
        let labels = members.iter().map(|&v| self.label(v)).collect();
        Ok(Graph {
            n: members.len(),
            adj,
            labels: Some(labels),
        })
    }

    /// Vertices of `s` reachable from `start` inside `g[s]`.
    #[inline]
    pub fn reach_within(&self, start: Vertex, s: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier.iter() {
                next |= self.adj[u];
            }
            frontier = (next & s) - seen;
            seen |= frontier;
        }
        seen
    }

    /// Whether `g[s]` is connected. Singletons are connected.
    pub fn is_connected_subset(&self, s: VertexSet) -> Result<bool> {
        self.check_set(s)?;
        match s.min() {
            None => Err(Error::EmptyVertexSet),
            Some(v) => Ok(self.reach_within(v, s) == s),
        }
    }

    /// Unchecked connectivity test for hot loops; `s` must be nonempty and in range.
    #[inline]
    pub fn connected_unchecked(&self, s: VertexSet) -> bool {
        match s.min() {
            None => false,
            Some(v) => self.reach_within(v, s) == s,
        }
    }

    /// Connected components of `g[s]`, ordered by smallest member.
    pub fn components_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let c = self.reach_within(v, s);
            out.push(c);
            rest = rest - c;
        }
        out
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Shortest-path length, `None` when `v` is unreachable from `u`.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut seen = VertexSet::singleton(u);
        let mut frontier = seen;
        let mut d = 0;
        while !frontier.is_empty() {
            if frontier.contains(v) {
                return Ok(Some(d));
            }
            let mut next = VertexSet::EMPTY;
            for w in frontier.iter() {
                next |= self.adj[w];
            }
            frontier = next - seen;
            seen |= frontier;
            d += 1;
        }
        Ok(None)
    }

    /// Whether `s` is a clique of `g`.
    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s.without(v)).is_subset(self.adj[v]))
    }

    pub fn is_simplicial_vertex(&self, v: Vertex) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(self.is_clique(self.adj[v]))
    }

    /// Maximum-cardinality search visiting order (ties broken by smallest index).
    pub fn mcs_order(&self) -> Vec<Vertex> {
        let mut weight = vec![0usize; self.n];
        let mut visited = VertexSet::EMPTY;
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (self.vertices() - visited)
                .iter()
                .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .expect("unvisited vertex remains");
            order.push(v);
            visited.insert(v);
            for w in (self.adj[v] - visited).iter() {
                weight[w] += 1;
            }
        }
        order
    }

    /// A perfect elimination ordering, if one exists.
    ///
    /// The reverse maximum-cardinality-search order is checked directly: for
    /// each vertex, its earlier-visited neighbors other than the latest one
    /// must all be adjacent to that latest one.
    pub fn perfect_elimination_ordering(&self) -> Option<Vec<Vertex>> {
        let order = self.mcs_order();
        let mut pos = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut before = VertexSet::EMPTY;
        for &v in &order {
            let earlier = self.adj[v] & before;
            if let Some(p) = earlier.iter().max_by_key(|&w| pos[w]) {
                if !earlier.without(p).is_subset(self.adj[p]) {
                    return None;
                }
            }
            before.insert(v);
        }
        let mut peo = order;
        peo.reverse();
        Some(peo)
    }

    pub fn is_chordal(&self) -> bool {
        self.perfect_elimination_ordering().is_some()
    }

    /// Parts of a join decomposition: the connected components of the
    /// complement. One part means `g` is not a nontrivial join.
    pub fn join_decomposition(&self) -> Vec<VertexSet> {
        self.complement().connected_components()
    }

    /// Join decomposition of `g[s]`, with parts given in original indices.
    pub fn join_parts_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            // BFS in the complement restricted to s.
            let mut seen = VertexSet::singleton(v);
            let mut frontier = seen;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for u in frontier.iter() {
                    next |= (s - self.adj[u]).without(u);
                }
                frontier = next - seen;
                seen |= frontier;
            }
            out.push(seen);
            rest = rest - seen;
        }
        out
    }

    pub fn is_cut_vertex(&self, v: Vertex) -> Result<bool> {
        self.check_vertex(v)?;
        let before = self.connected_components().len();
        let after = self.components_within(self.vertices().without(v)).len();
        Ok(after > before)
    }

    /// Deletes the vertices of `s`, relabeling the survivors in order.
    pub fn delete_vertices(&self, s: VertexSet) -> Result<Graph> {
        self.induced_subgraph(self.vertices() - s)
    }

    /// Replaces `x` by one new vertex per part, each adjacent to exactly its
    /// part. Survivors keep their relative order; the new vertices are
    /// appended at the end in part order.
    pub fn split_vertex(&self, x: Vertex, parts: &[VertexSet]) -> Result<Graph> {
        self.check_vertex(x)?;
        let mut union = VertexSet::EMPTY;
        for (i, &p) in parts.iter().enumerate() {
            self.check_set(p)?;
            if p.intersects(union) {
                return Err(Error::InvalidPartition(format!(
                    "part {i} overlaps an earlier part"
                )));
            }
            union |= p;
        }
        if union != self.adj[x] {
            return Err(Error::InvalidPartition(format!(
                "parts cover {union} but N({x}) = {}",
                self.adj[x]
            )));
        }
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts given".into()));
        }
        let new_n = self.n - 1 + parts.len();
        if new_n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n: new_n,
                max: MAX_VERTICES,
            });
        }
        let keep = self.vertices().without(x);
        let relabel = |v: Vertex| if v > x { v - 1 } else { v };
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            if u != x && v != x {
                edges.push((relabel(u), relabel(v)));
            }
        }
        for (j, &p) in parts.iter().enumerate() {
            let y = self.n - 1 + j;
            for v in p.iter() {
                edges.push((relabel(v), y));
            }
        }
        let mut labels: Vec<String> = keep.iter().map(|v| self.label(v)).collect();
        for j in 0..parts.len() {
            labels.push(format!("{}#{}", self.label(x), j + 1));
        }
        Graph::from_edges(new_n, &edges)?.with_labels(labels)
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(u, v)| (u + self.n, v + self.n)));
        Graph::from_edges(n, &edges)
    }

    /// Join: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        for u in 0..self.n {
            for v in 0..other.n {
                g.link(u, self.n + v);
            }
        }
        Ok(g)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length".into()));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Blocks (maximal 2-connected subgraphs, bridges, and isolated vertices),
    /// each as a vertex set.
    pub fn blocks(&self) -> Vec<VertexSet> {
        struct State<'a> {
            g: &'a Graph,
            disc: Vec<usize>,
            low: Vec<usize>,
            time: usize,
            stack: Vec<(Vertex, Vertex)>,
            blocks: Vec<VertexSet>,
        }
        fn dfs(st: &mut State<'_>, u: Vertex, parent: Option<Vertex>) {
            st.time += 1;
            st.disc[u] = st.time;
            st.low[u] = st.time;
            for v in st.g.adj[u].iter() {
                if st.disc[v] == 0 {
                    st.stack.push((u, v));
                    dfs(st, v, Some(u));
                    st.low[u] = st.low[u].min(st.low[v]);
                    if st.low[v] >= st.disc[u] {
                        let mut b = VertexSet::EMPTY;
                        while let Some((a, c)) = st.stack.pop() {
                            b.insert(a);
                            b.insert(c);
                            if (a, c) == (u, v) {
                                break;
                            }
                        }
                        st.blocks.push(b);
                    }
                } else if Some(v) != parent && st.disc[v] < st.disc[u] {
                    st.stack.push((u, v));
                    st.low[u] = st.low[u].min(st.disc[v]);
                }
            }
        }
        let mut st = State {
            g: self,
            disc: vec![0; self.n],
            low: vec![0; self.n],
            time: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
        };
        for v in 0..self.n {
            if st.disc[v] == 0 {
                if self.adj[v].is_empty() {
                    st.disc[v] = usize::MAX;
                    st.blocks.push(VertexSet::singleton(v));
                } else {
                    dfs(&mut st, v, None);
                }
            }
        }
        st.blocks.sort_by(|a, b| a.lex_cmp(*b));
        st.blocks
    }
}
