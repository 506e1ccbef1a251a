//! k-uniform hypergraphs over dense integer vertices.
//!
//! Edges are stored sorted and in lexicographic order, so every iteration
//! over a [`Hypergraph`] is deterministic.

mod walk;

use std::collections::{HashMap, HashSet, VecDeque};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::Vertex;

pub use walk::{covering_tight_walk, greedy_covering_walk, lift_walk_to_path, TightWalk};

/// Anything that can answer "is this k-set an edge?".
///
/// Implemented by explicit hypergraphs as well as by implicit hosts such as
/// blow-ups, whose edge sets are far too large to materialise.
pub trait EdgeOracle {
    fn uniformity(&self) -> usize;

    /// Sorted vertex set of the host.
    fn vertex_set(&self) -> Vec<Vertex>;

    /// `edge` must be sorted.
    fn has_edge(&self, edge: &[Vertex]) -> bool;

    /// Fast answer for "are all transversals of `parts` edges?", when the host
    /// knows it structurally. `None` means the caller has to enumerate.
    fn has_complete_partite(&self, _parts: &[Vec<Vertex>]) -> Option<bool> {
        None
    }
}

#[derive(Debug, Clone)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
    index: HashMap<Vec<Vertex>, usize>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

/// Minimum supported d-degree together with the minimum (unsupported) d-degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub d: usize,
    pub delta_star_d: usize,
    pub delta_d: usize,
    /// The supported d-sets, sorted.
    pub supported_sets: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightComponents {
    /// Edge indices of each component, components ordered by least edge index.
    pub components: Vec<Vec<usize>>,
    pub isolated: Vec<Vertex>,
}

impl Hypergraph {
    /// Builds a k-graph on `0..n`. Edges may come unsorted and with
    /// duplicates; both are canonicalised away.
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if k < 2 {
            return Err(Error::BadParams(format!("uniformity must be at least 2, got {k}")));
        }
        let mut list = Vec::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            if e.len() != k {
                return Err(Error::InvalidEdge { edge: e, reason: format!("expected {k} vertices") });
            }
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge { edge: e, reason: "repeated vertex".into() });
            }
            list.push(e);
        }
        Ok(Self::from_canonical(k, n, list))
    }

    /// `edges` must be sorted k-sets with vertices below `n`.
    fn from_canonical(k: usize, n: usize, mut edges: Vec<Vec<Vertex>>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut index = HashMap::with_capacity(edges.len());
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            index.insert(e.clone(), i);
            for &v in e {
                incidence[v].push(i);
            }
        }
        Hypergraph { k, n, edges, index, incidence }
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        Self::new::<_, Vec<Vertex>>(k, n, Vec::new())
    }

    /// The complete k-graph on n vertices.
    pub fn complete(k: usize, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::BadParams(format!("uniformity must be at least 2, got {k}")));
        }
        Ok(Self::from_canonical(k, n, (0..n).combinations(k).collect()))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Index of `edge` in canonical order. The input need not be sorted.
    pub fn edge_index(&self, edge: &[Vertex]) -> Option<usize> {
        if edge.windows(2).all(|w| w[0] < w[1]) {
            self.index.get(edge).copied()
        } else {
            let mut e = edge.to_vec();
            e.sort_unstable();
            self.index.get(&e).copied()
        }
    }

    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        self.edge_index(edge).is_some()
    }

    /// Indices of the edges through `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.incidence[v]
    }

    pub fn vertex_degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.incidence[v].is_empty()).collect()
    }

    pub fn has_isolated_vertices(&self) -> bool {
        self.incidence.iter().any(|inc| inc.is_empty())
    }

    /// The sub-hypergraph induced on `vertices`, relabelled to `0..len` in the
    /// order given.
    pub fn induced(&self, vertices: &[Vertex]) -> Hypergraph {
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            relabel[v] = i;
        }
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for &v in vertices {
            for &ei in &self.incidence[v] {
                if !seen.insert(ei) {
                    continue;
                }
                let e = &self.edges[ei];
                if e.iter().all(|&u| relabel[u] != usize::MAX) {
                    let mut mapped: Vec<Vertex> = e.iter().map(|&u| relabel[u]).collect();
                    mapped.sort_unstable();
                    edges.push(mapped);
                }
            }
        }
        Self::from_canonical(self.k, vertices.len(), edges)
    }

    /// Deletes vertex `x` with all its edges and closes the gap in the
    /// numbering. The second value maps new labels to old ones.
    pub fn delete_vertex(&self, x: Vertex) -> (Hypergraph, Vec<Vertex>) {
        let keep: Vec<Vertex> = (0..self.n).filter(|&v| v != x).collect();
        (self.induced(&keep), keep)
    }

    /// Same vertex set, without the edges that contain every vertex of `set`.
    pub fn without_edges_containing(&self, set: &[Vertex]) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .filter(|e| !set.iter().all(|v| e.binary_search(v).is_ok()))
            .cloned()
            .collect();
        Self::from_canonical(self.k, self.n, edges)
    }

    fn check_set(&self, set: &[Vertex]) -> Result<Vec<Vertex>> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&v) = s.iter().find(|&&v| v >= self.n) {
            return Err(Error::InvalidVertex { vertex: v, n: self.n });
        }
        Ok(s)
    }

    /// Number of edges containing `set`.
    pub fn degree(&self, set: &[Vertex]) -> Result<usize> {
        let s = self.check_set(set)?;
        if s.len() > self.k {
            return Ok(0);
        }
        let Some(&first) = s.first() else {
            return Ok(self.edges.len());
        };
        Ok(self.incidence[first]
            .iter()
            .filter(|&&ei| {
                let e = &self.edges[ei];
                s.iter().all(|v| e.binary_search(v).is_ok())
            })
            .count())
    }

    /// Degree of every supported d-set.
    fn supported_degrees(&self, d: usize) -> HashMap<Vec<Vertex>, usize> {
        let mut counts = HashMap::new();
        for e in &self.edges {
            for sub in e.iter().copied().combinations(d) {
                *counts.entry(sub).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Minimum supported codegree; 0 for the empty hypergraph.
    pub fn min_supported_codegree(&self) -> usize {
        self.supported_degrees(self.k - 1).into_values().min().unwrap_or(0)
    }

    pub fn min_supported_d_degree(&self, d: usize) -> Result<DegreeProfile> {
        if d == 0 || d >= self.k {
            return Err(Error::BadArity { d, k: self.k });
        }
        let counts = self.supported_degrees(d);
        let delta_star_d = counts.values().copied().min().unwrap_or(0);
        let all_sets = crate::combinatorics::binomial(self.n as u64, d as u64);
        let delta_d = if counts.len() as u128 == all_sets && all_sets > 0 { delta_star_d } else { 0 };
        let mut supported_sets: Vec<Vec<Vertex>> = counts.into_keys().collect();
        supported_sets.sort_unstable();
        Ok(DegreeProfile { d, delta_star_d, delta_d, supported_sets })
    }

    /// Adjacency lists of the line graph: edges `i` and `j` are adjacent when
    /// they share exactly k-1 vertices. Lists are ascending.
    pub fn line_adjacency(&self) -> Vec<Vec<usize>> {
        let mut buckets: HashMap<Vec<Vertex>, Vec<usize>> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            for skip in 0..self.k {
                let ridge: Vec<Vertex> =
                    e.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                buckets.entry(ridge).or_default().push(i);
            }
        }
        let mut adj = vec![Vec::new(); self.edges.len()];
        for group in buckets.values() {
            for (a, &i) in group.iter().enumerate() {
                for &j in &group[a + 1..] {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The line graph as a 2-graph whose vertices are edge indices.
    pub fn line_graph(&self) -> Hypergraph {
        let adj = self.line_adjacency();
        let edges = adj
            .iter()
            .enumerate()
            .flat_map(|(i, nb)| nb.iter().filter(move |&&j| j > i).map(move |&j| vec![i, j]))
            .collect();
        Self::from_canonical(2, self.edges.len(), edges)
    }

    pub fn tight_components(&self) -> TightComponents {
        let adj = self.line_adjacency();
        let mut comp = vec![usize::MAX; self.edges.len()];
        let mut components = Vec::new();
        for start in 0..self.edges.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for &j in &adj[i] {
                    if comp[j] == usize::MAX {
                        comp[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        TightComponents { components, isolated: self.isolated_vertices() }
    }

    /// No isolated vertices and a connected line graph. The empty hypergraph
    /// is not tightly connected.
    pub fn is_tightly_connected(&self) -> bool {
        if self.edges.is_empty() || self.has_isolated_vertices() {
            return false;
        }
        self.tight_components().components.len() == 1
    }

    /// Vertices x with `set ∪ {x}` an edge. `set` must be a sorted (k-1)-set.
    fn extensions(&self, set: &[Vertex]) -> Vec<Vertex> {
        let Some(&first) = set.first() else { return Vec::new() };
        let mut out: Vec<Vertex> = self.incidence[first]
            .iter()
            .map(|&ei| &self.edges[ei])
            .filter(|e| set.iter().all(|v| e.binary_search(v).is_ok()))
            .map(|e| *e.iter().find(|v| set.binary_search(v).is_err()).expect("k-set minus (k-1)-subset"))
            .collect();
        out.sort_unstable();
        out
    }
}

impl EdgeOracle for Hypergraph {
    fn uniformity(&self) -> usize {
        self.k
    }

    fn vertex_set(&self) -> Vec<Vertex> {
        (0..self.n).collect()
    }

    fn has_edge(&self, edge: &[Vertex]) -> bool {
        self.index.contains_key(edge)
    }
}

fn sorted_union(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A sequence of edges from `e` to `f` in which consecutive edges share at
/// least k-1 vertices, built by repeatedly growing `|e ∩ f|`.
///
/// Needs `δ*(H) ≥ ⌊(n-k+1)/2⌋` and no isolated vertices; under that bound each
/// step finds an extension vertex, so the witness has at most 2k-1 edges.
pub fn dirac_connectivity_witness(h: &Hypergraph, e: &[Vertex], f: &[Vertex]) -> Result<Vec<Vec<Vertex>>> {
    let k = h.k();
    let bound = (h.n() + 1).saturating_sub(k) / 2;
    let codeg = h.min_supported_codegree();
    if codeg < bound {
        return Err(Error::PreconditionFailed(format!("min supported codegree {codeg} below {bound}")));
    }
    if h.has_isolated_vertices() {
        return Err(Error::PreconditionFailed("hypergraph has isolated vertices".into()));
    }
    let mut cur_e = h.check_set(e)?;
    let mut cur_f = h.check_set(f)?;
    for x in [&cur_e, &cur_f] {
        if !h.contains_edge(x) {
            return Err(Error::PreconditionFailed(format!("{x:?} is not an edge")));
        }
    }
    let mut left = vec![cur_e.clone()];
    let mut right = vec![cur_f.clone()];
    while cur_e != cur_f {
        let common: Vec<Vertex> = cur_e.iter().filter(|v| cur_f.binary_search(v).is_ok()).copied().collect();
        let only_e: Vec<Vertex> = cur_e.iter().filter(|v| cur_f.binary_search(v).is_err()).copied().collect();
        let only_f: Vec<Vertex> = cur_f.iter().filter(|v| cur_e.binary_search(v).is_err()).copied().collect();
        // S and T drop the last private vertex of e and f respectively.
        let s = sorted_union(&common, &only_e[..only_e.len() - 1]);
        let t = sorted_union(&common, &only_f[..only_f.len() - 1]);
        let gamma_s = h.extensions(&s);
        let gamma_t = h.extensions(&t);
        if let Some(&w) = gamma_s.iter().find(|w| only_f.contains(w)) {
            cur_e = sorted_union(&s, &[w]);
            left.push(cur_e.clone());
        } else if let Some(&v) = gamma_t.iter().find(|v| only_e.contains(v)) {
            cur_f = sorted_union(&t, &[v]);
            right.push(cur_f.clone());
        } else if let Some(&x) = gamma_s.iter().find(|x| gamma_t.binary_search(x).is_ok()) {
            cur_e = sorted_union(&s, &[x]);
            cur_f = sorted_union(&t, &[x]);
            left.push(cur_e.clone());
            right.push(cur_f.clone());
        } else {
            return Err(Error::WitnessNotFound { e: e.to_vec(), f: f.to_vec() });
        }
    }
    right.pop();
    left.extend(right.into_iter().rev());
    Ok(left)
}
