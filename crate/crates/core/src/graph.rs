//! Graph algorithms on the adjacency graphs of digital images: connectivity,
//! regularity, structure recognition, automorphisms, isomorphism and
//! transitivity.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Finite simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![false; n * n],
            neighbors: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = SimpleGraph::empty(n);
        for (i, j) in edges {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, len: n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            g.adj[i * n + j] = true;
            g.adj[j * n + i] = true;
        }
        for i in 0..n {
            g.neighbors[i] = (0..n).filter(|&j| g.adj[i * n + j]).collect();
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        SimpleGraph::from_edges(n, edges).expect("valid edges")
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid edges")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    /// Adjacent or equal.
    #[inline]
    pub fn adjacent_or_equal(&self, i: usize, j: usize) -> bool {
        i == j || self.adjacent(i, j)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// `i` together with its neighbors, in increasing order.
    pub fn closed_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let nb = &self.neighbors[i];
        let split = nb.partition_point(|&j| j < i);
        nb[..split]
            .iter()
            .copied()
            .chain(std::iter::once(i))
            .chain(nb[split..].iter().copied())
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors[i]
                .iter()
                .copied()
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Induced subgraph; vertex `k` of the result is `vertices[k]`.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let edges = (0..vertices.len()).flat_map(|a| {
            (a + 1..vertices.len())
                .filter(move |&b| self.adjacent(vertices[a], vertices[b]))
                .map(move |b| (a, b))
        });
        SimpleGraph::from_edges(vertices.len(), edges.collect::<Vec<_>>()).expect("valid edges")
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &Permutation) -> SimpleGraph {
        let edges: Vec<_> = self
            .edges()
            .map(|(i, j)| (perm.apply(i), perm.apply(j)))
            .collect();
        SimpleGraph::from_edges(self.n, edges).expect("valid edges")
    }

    /// Graphviz DOT rendering of the edge set.
    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut out = String::from("graph G {\n");
        for (i, label) in labels.iter().enumerate().take(self.n) {
            out.push_str(&format!("  {i} [label=\"{label}\"];\n"));
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Anything carrying an adjacency graph.
pub trait AsGraph {
    fn as_graph(&self) -> &SimpleGraph;
}

impl AsGraph for SimpleGraph {
    fn as_graph(&self) -> &SimpleGraph {
        self
    }
}

/// A bijection of `{0, ..., m-1}`; `mapping[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_vec(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &v in &mapping {
            if v >= n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "{mapping:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(mapping))
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.0.iter().enumerate().any(|(i, &v)| i == v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Connected-component partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Component label of each vertex; labels follow the order of first appearance.
    pub component_id: Vec<usize>,
    /// Vertices of each component in increasing order.
    pub components: Vec<Vec<usize>>,
}

impl ComponentDecomposition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

pub fn components(g: &SimpleGraph) -> ComponentDecomposition {
    let n = g.order();
    let mut component_id = vec![usize::MAX; n];
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if component_id[start] != usize::MAX {
            continue;
        }
        let label = comps.len();
        let mut members = vec![start];
        component_id[start] = label;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if component_id[w] == usize::MAX {
                    component_id[w] = label;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    ComponentDecomposition {
        component_id,
        components: comps,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub is_regular: bool,
    pub is_complete: bool,
}

pub fn degree_profile(g: &SimpleGraph) -> DegreeProfile {
    let degrees: Vec<usize> = (0..g.order()).map(|i| g.degree(i)).collect();
    let is_regular = degrees.windows(2).all(|w| w[0] == w[1]);
    let is_complete = degrees.iter().all(|&d| d + 1 == g.order());
    DegreeProfile {
        degrees,
        is_regular,
        is_complete,
    }
}

/// Connected, 2-regular, at least 3 vertices.
pub fn is_simple_closed_curve(g: &SimpleGraph) -> bool {
    g.order() >= 3 && (0..g.order()).all(|i| g.degree(i) == 2) && components(g).is_connected()
}

/// Every component is a complete graph.
pub fn is_cluster_graph(g: &SimpleGraph) -> bool {
    let decomposition = components(g);
    decomposition
        .components
        .iter()
        .all(|c| c.iter().all(|&v| g.degree(v) + 1 == c.len()))
}

/// Bounds for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_vertices: usize,
    pub max_automorphisms: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_vertices: 16,
            max_automorphisms: 500_000,
        }
    }
}

impl SearchLimits {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        SearchLimits {
            max_vertices,
            ..SearchLimits::default()
        }
    }

    fn check(&self, g: &SimpleGraph) -> Result<()> {
        if g.order() > self.max_vertices {
            return Err(Error::SizeBound {
                size: g.order(),
                bound: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// Per-vertex refinement invariant: degree plus sorted neighbor degrees.
fn vertex_invariants(g: &SimpleGraph) -> Vec<(usize, Vec<usize>)> {
    (0..g.order())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

/// Visiting order that keeps every vertex after a neighbor when possible.
fn search_order(g: &SimpleGraph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.order());
    let mut seen = vec![false; g.order()];
    let mut starts: Vec<usize> = (0..g.order()).collect();
    starts.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Backtracking over adjacency-preserving bijections `source -> target`.
/// `visit` receives each complete map and returns `false` to stop.
struct Matcher<'a> {
    source: &'a SimpleGraph,
    target: &'a SimpleGraph,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(source: &'a SimpleGraph, target: &'a SimpleGraph) -> Option<Self> {
        if source.order() != target.order() || source.edge_count() != target.edge_count() {
            return None;
        }
        let si = vertex_invariants(source);
        let ti = vertex_invariants(target);
        let mut ss = si.clone();
        let mut ts = ti.clone();
        ss.sort();
        ts.sort();
        if ss != ts {
            return None;
        }
        let candidates = si
            .iter()
            .map(|inv| (0..target.order()).filter(|&w| &ti[w] == inv).collect())
            .collect();
        Some(Matcher {
            source,
            target,
            order: search_order(source),
            candidates,
            map: vec![usize::MAX; source.order()],
            used: vec![false; target.order()],
        })
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        self.extend(0, visit)
    }

    fn extend(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let v = self.order[depth];
        for ci in 0..self.candidates[v].len() {
            let w = self.candidates[v][ci];
            if self.used[w] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                self.source.adjacent(u, v) == self.target.adjacent(self.map[u], w)
            });
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            let keep_going = self.extend(depth + 1, visit);
            self.used[w] = false;
            self.map[v] = usize::MAX;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// All automorphisms, identity first.
pub fn automorphisms(g: &SimpleGraph, limits: &SearchLimits) -> Result<Vec<Permutation>> {
    limits.check(g)?;
    let mut found = Vec::new();
    let mut overflow = false;
    if let Some(mut matcher) = Matcher::new(g, g) {
        matcher.run(&mut |map| {
            if found.len() >= limits.max_automorphisms {
                overflow = true;
                return false;
            }
            found.push(Permutation(map.to_vec()));
            true
        });
    }
    if overflow {
        return Err(Error::AutomorphismLimit {
            limit: limits.max_automorphisms,
        });
    }
    found.sort();
    Ok(found)
}

/// A graph isomorphism `source -> target`, if one exists.
pub fn find_isomorphism(
    source: &SimpleGraph,
    target: &SimpleGraph,
    limits: &SearchLimits,
) -> Result<Option<Permutation>> {
    limits.check(source)?;
    limits.check(target)?;
    let mut result = None;
    if let Some(mut matcher) = Matcher::new(source, target) {
        matcher.run(&mut |map| {
            result = Some(Permutation(map.to_vec()));
            false
        });
    }
    Ok(result)
}

/// `f` is a bijection with `x ~ y  <=>  f(x) ~ f(y)`.
pub fn is_isomorphism(source: &SimpleGraph, target: &SimpleGraph, f: &[usize]) -> bool {
    if source.order() != target.order() || f.len() != source.order() {
        return false;
    }
    if Permutation::from_vec(f.to_vec()).is_err() {
        return false;
    }
    (0..source.order()).all(|i| {
        (i + 1..source.order()).all(|j| source.adjacent(i, j) == target.adjacent(f[i], f[j]))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transitivity {
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
}

/// Vertex and (unordered) edge transitivity from the full automorphism group.
pub fn transitivity(g: &SimpleGraph, limits: &SearchLimits) -> Result<Transitivity> {
    let auts = automorphisms(g, limits)?;
    Ok(transitivity_from(g, &auts))
}

pub(crate) fn transitivity_from(g: &SimpleGraph, auts: &[Permutation]) -> Transitivity {
    let vertex_orbit: BTreeSet<usize> = auts.iter().map(|a| a.apply(0)).collect();
    let vertex_transitive = g.order() == 0 || vertex_orbit.len() == g.order();
    let edge_transitive = match g.edges().next() {
        None => true,
        Some((i, j)) => {
            let orbit: BTreeSet<(usize, usize)> = auts
                .iter()
                .map(|a| {
                    let (x, y) = (a.apply(i), a.apply(j));
                    (x.min(y), x.max(y))
                })
                .collect();
            orbit.len() == g.edge_count()
        }
    };
    Transitivity {
        vertex_transitive,
        edge_transitive,
    }
}
