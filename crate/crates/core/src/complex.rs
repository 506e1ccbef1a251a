//! Pure simplicial complexes given by their facets, the operations used to
//! build spheres (suspension, gluing along a facet, subdividing a triangle)
//! and a graded combinatorial sphere check.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::combinatorics::for_each_nonempty_subset;
use crate::error::{Error, Result};
use crate::hypergraph::EdgeOracle;
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    dim: usize,
    facets: Vec<Vec<Vertex>>,
    vertices: Vec<Vertex>,
}

impl SimplicialComplex {
    /// Pure `dim`-complex on the given facets (any order, duplicates dropped).
    pub fn new<I, F>(dim: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[Vertex]>,
    {
        let mut out = Vec::new();
        for f in facets {
            let mut f = f.as_ref().to_vec();
            if f.len() != dim + 1 {
                return Err(Error::DimMismatch { expected: dim + 1, found: f.len() });
            }
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge { edge: f, reason: "repeated vertex".into() });
            }
            out.push(f);
        }
        Ok(Self::from_sorted_facets(dim, out))
    }

    /// Facets must already be individually sorted.
    pub(crate) fn from_sorted_facets(dim: usize, mut facets: Vec<Vec<Vertex>>) -> Self {
        facets.sort_unstable();
        facets.dedup();
        let vertices: BTreeSet<Vertex> = facets.iter().flatten().copied().collect();
        SimplicialComplex { dim, facets, vertices: vertices.into_iter().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Vec<Vertex>] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// The 0-skeleton, sorted.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// `f` need not be sorted.
    pub fn contains_facet(&self, f: &[Vertex]) -> bool {
        let mut f = f.to_vec();
        f.sort_unstable();
        self.facets.binary_search(&f).is_ok()
    }

    fn fresh(&self) -> Vertex {
        self.vertices.last().map_or(0, |&v| v + 1)
    }

    /// Applies a vertex map, which must be injective on the vertex set.
    pub fn relabel(&self, mut map: impl FnMut(Vertex) -> Vertex) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<Vertex> = f.iter().map(|&v| map(v)).collect();
                g.sort_unstable();
                g
            })
            .collect();
        Self::from_sorted_facets(self.dim, facets)
    }

    /// Cone over every facet with two new apexes, `max + 1` and `max + 2`.
    pub fn suspension(&self) -> Result<SimplicialComplex> {
        if self.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let u = self.fresh();
        Ok(self.suspension_with(u, u + 1))
    }

    /// Suspension with caller-chosen apexes, which must be new.
    pub(crate) fn suspension_with(&self, u: Vertex, v: Vertex) -> SimplicialComplex {
        let mut facets = Vec::with_capacity(2 * self.facets.len());
        for f in &self.facets {
            for apex in [u, v] {
                let mut g = f.clone();
                let pos = g.partition_point(|&x| x < apex);
                g.insert(pos, apex);
                facets.push(g);
            }
        }
        Self::from_sorted_facets(self.dim + 1, facets)
    }

    /// Glues `other` onto `self` along the common facet `f`: the union of
    /// both facet sets with `f` removed. The two vertex sets must meet in
    /// exactly `f`.
    pub fn glue(&self, other: &SimplicialComplex, f: &[Vertex]) -> Result<SimplicialComplex> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: other.dim });
        }
        let mut f = f.to_vec();
        f.sort_unstable();
        if f.len() != self.dim + 1 || !self.contains_facet(&f) || !other.contains_facet(&f) {
            return Err(Error::MissingFacet(f));
        }
        let (small, large) =
            if self.vertices.len() <= other.vertices.len() { (self, other) } else { (other, self) };
        let common: Vec<Vertex> =
            small.vertices.iter().copied().filter(|v| large.vertices.binary_search(v).is_ok()).collect();
        if common != f {
            return Err(Error::BadOverlap { expected: f, found: common });
        }
        let facets = self.facets.iter().chain(&other.facets).filter(|g| **g != f).cloned().collect();
        Ok(Self::from_sorted_facets(self.dim, facets))
    }

    /// Replaces the triangle `f` by the seven triangles of the subdivision
    /// with an inner triangle on three new vertices `max + 1..=max + 3`.
    pub fn subdivide_facet(&self, f: &[Vertex]) -> Result<SimplicialComplex> {
        let mut f = f.to_vec();
        f.sort_unstable();
        let v = self.fresh();
        self.subdivide_facet_with(&f, [v, v + 1, v + 2])
    }

    /// `u[i]` is paired with the new vertex `v[i]`.
    pub(crate) fn subdivide_facet_with(&self, u: &[Vertex], v: [Vertex; 3]) -> Result<SimplicialComplex> {
        if self.dim != 2 {
            return Err(Error::WrongDim { expected: 2, found: self.dim });
        }
        if u.len() != 3 || !self.contains_facet(u) {
            return Err(Error::MissingFacet(u.to_vec()));
        }
        let mut sorted_u = u.to_vec();
        sorted_u.sort_unstable();
        let mut facets: Vec<Vec<Vertex>> = self.facets.iter().filter(|g| **g != sorted_u).cloned().collect();
        // Every choice of u_i or v_i per position except all-u.
        for mask in 1u8..8 {
            let mut g: Vec<Vertex> = (0..3).map(|i| if mask >> i & 1 == 1 { v[i] } else { u[i] }).collect();
            g.sort_unstable();
            facets.push(g);
        }
        Ok(Self::from_sorted_facets(2, facets))
    }

    /// Number of faces of each size 1..=dim+1 in the downward closure.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut faces: Vec<HashSet<Vec<Vertex>>> = vec![HashSet::new(); self.dim + 1];
        for f in &self.facets {
            for_each_nonempty_subset(f, |s| {
                faces[s.len() - 1].insert(s.to_vec());
            });
        }
        faces.iter().map(HashSet::len).collect()
    }

    /// Alternating face count over all non-empty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Codimension-one faces mapped to the facets containing them.
    fn ridges(&self) -> HashMap<Vec<Vertex>, Vec<usize>> {
        let mut map: HashMap<Vec<Vertex>, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for skip in 0..f.len() {
                let mut r = f.clone();
                r.remove(skip);
                map.entry(r).or_default().push(i);
            }
        }
        map
    }

    /// `(every ridge in exactly two facets, facets connected through ridges)`.
    pub fn is_pseudomanifold(&self) -> (bool, bool) {
        let ridges = self.ridges();
        let closed = ridges.values().all(|fs| fs.len() == 2);
        let mut adj = vec![Vec::new(); self.facets.len()];
        for fs in ridges.values() {
            for &a in fs {
                for &b in fs {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
        (closed, connected(&adj))
    }

    /// Facets through `v` with `v` deleted.
    pub fn link(&self, v: Vertex) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .filter(|f| f.binary_search(&v).is_ok())
            .map(|f| f.iter().copied().filter(|&x| x != v).collect())
            .collect();
        Self::from_sorted_facets(self.dim.saturating_sub(1), facets)
    }

    pub fn verify_sphere(&self) -> SphereCertificate {
        self.verify_sphere_with(&VerifyOptions::default())
    }

    pub fn verify_sphere_with(&self, opts: &VerifyOptions) -> SphereCertificate {
        let euler = if self.is_empty() { 0 } else { self.euler_characteristic() };
        let (pseudo, strong) = self.is_pseudomanifold();
        let mut cert = SphereCertificate {
            level: CertificateLevel::Rejected,
            euler,
            pseudomanifold: pseudo,
            strongly_connected: strong,
            shelling_order: None,
            failure_reason: None,
        };
        let target = if self.dim % 2 == 0 { 2 } else { 0 };
        let reject = |mut cert: SphereCertificate, why: String| {
            cert.failure_reason = Some(why);
            cert
        };
        if self.is_empty() {
            return reject(cert, "no facets".into());
        }
        if self.dim == 0 {
            if self.facets.len() != 2 {
                return reject(cert, format!("{} points, a 0-sphere has 2", self.facets.len()));
            }
            cert.level = CertificateLevel::FullDim1;
            return cert;
        }
        if !pseudo {
            return reject(cert, "some ridge does not lie in exactly two facets".into());
        }
        if !strong {
            return reject(cert, "facets are not connected through ridges".into());
        }
        if euler != target {
            return reject(cert, format!("euler characteristic {euler}, expected {target}"));
        }
        match self.dim {
            1 => {
                cert.level = CertificateLevel::FullDim1;
                cert
            }
            2 => {
                for &v in &self.vertices {
                    let (p, c) = self.link(v).is_pseudomanifold();
                    if !(p && c) {
                        return reject(cert, format!("link of vertex {v} is not a single cycle"));
                    }
                }
                cert.level = CertificateLevel::FullDim2;
                cert
            }
            _ => {
                let link_opts = VerifyOptions { shelling_budget: 0, ..opts.clone() };
                let mut links_ok = true;
                for &v in &self.vertices {
                    let lc = self.link(v).verify_sphere_with(&link_opts);
                    match lc.level {
                        CertificateLevel::Rejected => {
                            let why = lc.failure_reason.unwrap_or_default();
                            return reject(cert, format!("link of vertex {v} rejected: {why}"));
                        }
                        CertificateLevel::PartialOnly => links_ok = false,
                        _ => {}
                    }
                }
                if opts.shelling_budget > 0 && self.facets.len() <= opts.shelling_facet_cap {
                    if let Some(order) = find_shelling(self, opts.shelling_budget) {
                        if check_shelling(self, &order) {
                            cert.level = CertificateLevel::Shelled;
                            cert.shelling_order = Some(order);
                            return cert;
                        }
                    }
                }
                cert.level = if links_ok { CertificateLevel::LinkVerified } else { CertificateLevel::PartialOnly };
                cert
            }
        }
    }

    /// Every facet is an edge of `host` and the 0-skeleton is the whole
    /// vertex set of `host`.
    pub fn is_spanning_copy(&self, host: &impl EdgeOracle) -> Result<bool> {
        if self.dim + 1 != host.uniformity() {
            return Err(Error::DimMismatch { expected: host.uniformity(), found: self.dim + 1 });
        }
        if !self.facets.iter().all(|f| host.has_edge(f)) {
            return Ok(false);
        }
        Ok(self.vertices == host.vertex_set())
    }
}

fn connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                count += 1;
                queue.push_back(b);
            }
        }
    }
    count == adj.len()
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-complex on {} vertices with {} facets", self.dim, self.vertices.len(), self.facets.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateLevel {
    FullDim1,
    FullDim2,
    LinkVerified,
    Shelled,
    PartialOnly,
    Rejected,
}

impl CertificateLevel {
    /// Full recognition, a shelling, or verified links.
    pub fn at_least_link_verified(self) -> bool {
        !matches!(self, CertificateLevel::PartialOnly | CertificateLevel::Rejected)
    }
}

impl fmt::Display for CertificateLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertificateLevel::FullDim1 => "FullDim1",
            CertificateLevel::FullDim2 => "FullDim2",
            CertificateLevel::LinkVerified => "LinkVerified",
            CertificateLevel::Shelled => "Shelled",
            CertificateLevel::PartialOnly => "PartialOnly",
            CertificateLevel::Rejected => "Rejected",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereCertificate {
    pub level: CertificateLevel,
    pub euler: i64,
    pub pseudomanifold: bool,
    pub strongly_connected: bool,
    /// Facet indices into the sorted facet list.
    pub shelling_order: Option<Vec<usize>>,
    pub failure_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Backtracking nodes for the shelling search; 0 disables it.
    pub shelling_budget: u64,
    /// Complexes with more facets skip the shelling search.
    pub shelling_facet_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { shelling_budget: 1_000_000, shelling_facet_cap: 2_000 }
    }
}

/// Backtracking search for a shelling order starting at facet 0.
///
/// A facet F can follow the shelled set when the ridges of F already shared
/// with shelled facets (the set of "opposite" vertices `V`) generate its
/// whole intersection with the shelled part: every shelled facet P meeting
/// F misses some vertex of `V` lying in F.
fn find_shelling(k: &SimplicialComplex, budget: u64) -> Option<Vec<usize>> {
    let m = k.facets.len();
    let ridges = k.ridges();
    // across[i][j]: facet sharing the ridge of facet i opposite its j-th vertex.
    let across: Vec<Vec<Option<usize>>> = k
        .facets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            (0..f.len())
                .map(|j| {
                    let mut r = f.clone();
                    r.remove(j);
                    ridges[&r].iter().copied().find(|&o| o != i)
                })
                .collect()
        })
        .collect();
    let mut incident: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for (i, f) in k.facets.iter().enumerate() {
        for &v in f {
            incident.entry(v).or_default().push(i);
        }
    }
    let mut shelled = vec![false; m];
    let valid = |i: usize, shelled: &[bool]| -> bool {
        let f = &k.facets[i];
        let vset: Vec<Vertex> =
            (0..f.len()).filter(|&j| across[i][j].is_some_and(|o| shelled[o])).map(|j| f[j]).collect();
        if vset.is_empty() {
            return false;
        }
        let mut checked = HashSet::new();
        for &v in f {
            for &p in &incident[&v] {
                if !shelled[p] || !checked.insert(p) {
                    continue;
                }
                let other = &k.facets[p];
                if !vset.iter().any(|x| other.binary_search(x).is_err()) {
                    return false;
                }
            }
        }
        true
    };
    let candidates = |shelled: &[bool], order: &[usize]| -> Vec<usize> {
        let mut frontier = BTreeSet::new();
        for &i in order {
            for o in across[i].iter().flatten() {
                if !shelled[*o] {
                    frontier.insert(*o);
                }
            }
        }
        frontier.into_iter().filter(|&c| valid(c, shelled)).collect()
    };
    let mut order = vec![0usize];
    shelled[0] = true;
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(candidates(&shelled, &order), 0)];
    let mut nodes = 0u64;
    while order.len() < m {
        let (cands, next) = stack.last_mut()?;
        if *next < cands.len() {
            let c = cands[*next];
            *next += 1;
            nodes += 1;
            if nodes > budget {
                return None;
            }
            shelled[c] = true;
            order.push(c);
            if order.len() < m {
                let cs = candidates(&shelled, &order);
                stack.push((cs, 0));
            }
        } else {
            stack.pop();
            if stack.is_empty() {
                return None;
            }
            let last = order.pop().expect("order tracks the stack");
            shelled[last] = false;
        }
    }
    Some(order)
}

/// Checks a shelling order directly: each facet after the first meets the
/// union of the earlier ones in a non-empty pure complex of codimension one.
pub fn check_shelling(k: &SimplicialComplex, order: &[usize]) -> bool {
    let m = k.facets.len();
    let mut seen = vec![false; m];
    if order.len() != m || !order.iter().all(|&i| i < m && !std::mem::replace(&mut seen[i], true)) {
        return false;
    }
    for j in 1..m {
        let fj = &k.facets[order[j]];
        let mut parts: Vec<Vec<Vertex>> = order[..j]
            .iter()
            .map(|&i| k.facets[i].iter().copied().filter(|v| fj.binary_search(v).is_ok()).collect::<Vec<_>>())
            .filter(|s| !s.is_empty())
            .collect();
        parts.sort();
        parts.dedup();
        if parts.is_empty() {
            return false;
        }
        for a in &parts {
            let maximal = !parts.iter().any(|b| b.len() > a.len() && a.iter().all(|x| b.binary_search(x).is_ok()));
            if maximal && a.len() != k.dim {
                return false;
            }
        }
    }
    true
}
