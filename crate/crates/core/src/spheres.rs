//! Explicit spheres: spanning spheres of complete partite k-graphs of the
//! shapes (2,…,2,ℓ,ℓ) and (2,…,2,3,ℓ,ℓ), and doubly edge-covering spheres in
//! blow-ups of tight paths.

use std::collections::HashMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hypergraph::EdgeOracle;
use crate::Vertex;

/// Complete k-partite k-graph on explicit parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiteHost {
    pub k: usize,
    pub parts: Vec<Vec<Vertex>>,
    /// One marked vertex per part, in part order.
    pub designated: Option<Vec<Vertex>>,
}

impl PartiteHost {
    /// Parts numbered consecutively from 0 in the given order.
    pub fn with_sizes(sizes: &[usize]) -> Self {
        let mut next = 0;
        let parts = sizes
            .iter()
            .map(|&s| {
                let p: Vec<Vertex> = (next..next + s).collect();
                next += s;
                p
            })
            .collect();
        PartiteHost { k: sizes.len(), parts, designated: None }
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }
}

impl EdgeOracle for PartiteHost {
    fn uniformity(&self) -> usize {
        self.k
    }

    fn vertex_set(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.parts.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    fn has_edge(&self, edge: &[Vertex]) -> bool {
        edge.len() == self.k && self.parts.iter().all(|p| edge.iter().filter(|v| p.contains(v)).count() == 1)
    }
}

/// Spanning sphere of the complete partite graph on `parts`, whose sizes
/// must be (2,…,2,ℓ,ℓ) with ℓ ≥ 2 or (2,…,2,3,ℓ,ℓ) with ℓ ≥ 3 in some
/// order. With `designated` (one vertex per part, in part order) that
/// transversal is a facet.
pub fn partite_sphere(parts: &[Vec<Vertex>], designated: Option<&[Vertex]>) -> Result<SimplicialComplex> {
    let k = parts.len();
    if k < 2 {
        return Err(Error::BadParams(format!("need at least 2 parts, got {k}")));
    }
    // Part indices sorted by size; ties keep the given order.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| parts[i].len());
    let size = |j: usize| parts[order[j]].len();
    let l = size(k - 1);
    let case_a = l >= 2 && size(k - 2) == l && (0..k - 2).all(|j| size(j) == 2);
    let case_b = k >= 3 && l >= 3 && size(k - 2) == l && size(k - 3) == 3 && (0..k - 3).all(|j| size(j) == 2);
    let (mut sphere, mut tracked, twos) = if case_a {
        let (x, y) = (&parts[order[k - 2]], &parts[order[k - 1]]);
        let mut facets = Vec::with_capacity(2 * l);
        for i in 0..l {
            facets.push(vec![x[i], y[i]]);
            facets.push(vec![y[i], x[(i + 1) % l]]);
        }
        for f in &mut facets {
            f.sort_unstable();
        }
        let cycle = SimplicialComplex::from_sorted_facets(1, facets);
        let mut tracked = HashMap::from([(order[k - 2], x[0]), (order[k - 1], y[0])]);
        tracked.reserve(k);
        (cycle, tracked, &order[..k - 2])
    } else if case_b {
        let (t, x, y) = (&parts[order[k - 3]], &parts[order[k - 2]], &parts[order[k - 1]]);
        let inner = [t[..2].to_vec(), x[..l - 1].to_vec(), y[..l - 1].to_vec()];
        let base = partite_sphere(&inner, None)?;
        // Case (a) on (2, ℓ-1, ℓ-1) tracks the transversal of first vertices.
        let u = [t[0], x[0], y[0]];
        let v = [t[2], x[l - 1], y[l - 1]];
        let sub = base.subdivide_facet_with(&u, v)?;
        let tracked = HashMap::from([(order[k - 3], v[0]), (order[k - 2], v[1]), (order[k - 1], v[2])]);
        (sub, tracked, &order[..k - 3])
    } else {
        return Err(Error::BadParams(format!("part sizes {:?} match neither sphere shape", parts.iter().map(Vec::len).collect::<Vec<_>>())));
    };
    for &i in twos {
        let (a, b) = (parts[i][0], parts[i][1]);
        sphere = sphere.suspension_with(a, b);
        tracked.insert(i, a);
    }
    if let Some(d) = designated {
        if d.len() != k || (0..k).any(|i| !parts[i].contains(&d[i])) {
            return Err(Error::BadParams(format!("designated set {d:?} is not a transversal in part order")));
        }
        let mut swap: HashMap<Vertex, Vertex> = HashMap::new();
        for i in 0..k {
            let t = tracked[&i];
            if t != d[i] {
                swap.insert(t, d[i]);
                swap.insert(d[i], t);
            }
        }
        sphere = sphere.relabel(|v| swap.get(&v).copied().unwrap_or(v));
    }
    Ok(sphere)
}

/// Spanning sphere of K_k(2,…,2,ℓ,ℓ), built as a 2ℓ-cycle suspended k−2
/// times. Parts are numbered consecutively: the 2-parts first.
pub fn partite_sphere_a(k: usize, l: usize, designated: Option<&[Vertex]>) -> Result<(PartiteHost, SimplicialComplex)> {
    if k < 2 || l < 2 {
        return Err(Error::BadParams(format!("case (a) needs k >= 2 and l >= 2, got k = {k}, l = {l}")));
    }
    let mut sizes = vec![2; k - 2];
    sizes.extend([l, l]);
    partite_case(&sizes, designated)
}

/// Spanning sphere of K_k(2,…,2,3,ℓ,ℓ): case (a) for (2, ℓ−1, ℓ−1), one
/// triangle subdivided, then k−3 suspensions.
pub fn partite_sphere_b(k: usize, l: usize, designated: Option<&[Vertex]>) -> Result<(PartiteHost, SimplicialComplex)> {
    if k < 3 || l < 3 {
        return Err(Error::BadParams(format!("case (b) needs k >= 3 and l >= 3, got k = {k}, l = {l}")));
    }
    let mut sizes = vec![2; k - 3];
    sizes.extend([3, l, l]);
    partite_case(&sizes, designated)
}

fn partite_case(sizes: &[usize], designated: Option<&[Vertex]>) -> Result<(PartiteHost, SimplicialComplex)> {
    let mut host = PartiteHost::with_sizes(sizes);
    let sphere = partite_sphere(&host.parts, designated)?;
    host.designated = designated.map(<[Vertex]>::to_vec);
    Ok((host, sphere))
}

/// Blow-up of the tight path b_0 … b_{ℓ−1}: `parts[i]` replaces b_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathBlowup {
    pub k: usize,
    pub parts: Vec<Vec<Vertex>>,
    position: HashMap<Vertex, usize>,
}

impl PathBlowup {
    pub fn new(k: usize, parts: Vec<Vec<Vertex>>) -> Result<Self> {
        if parts.len() < k {
            return Err(Error::BadParams(format!("path on {} vertices is shorter than k = {k}", parts.len())));
        }
        let mut position = HashMap::new();
        for (i, p) in parts.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::BadParams(format!("path part {i} is empty")));
            }
            for &v in p {
                if position.insert(v, i).is_some() {
                    return Err(Error::BadParams(format!("vertex {v} lies in two path parts")));
                }
            }
        }
        Ok(PathBlowup { k, parts, position })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn profile(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.parts.len() + 1 - self.k
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.position.get(&v).copied()
    }

    /// Path positions of a vertex set, sorted.
    pub fn project(&self, set: &[Vertex]) -> Option<Vec<usize>> {
        let mut p: Vec<usize> = set.iter().map(|&v| self.position(v)).collect::<Option<_>>()?;
        p.sort_unstable();
        Some(p)
    }
}

impl EdgeOracle for PathBlowup {
    fn uniformity(&self) -> usize {
        self.k
    }

    fn vertex_set(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.position.keys().copied().collect();
        all.sort_unstable();
        all
    }

    fn has_edge(&self, edge: &[Vertex]) -> bool {
        match self.project(edge) {
            Some(p) => p.len() == self.k && p.windows(2).all(|w| w[1] == w[0] + 1),
            None => false,
        }
    }
}

/// A sphere in a tight-path blow-up with two facet families indexed by the
/// path edges; entry `j` of each family projects onto b_j … b_{j+k−1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublyCoveringSphere {
    pub sphere: SimplicialComplex,
    pub path: PathBlowup,
    pub family_f: Vec<Vec<Vertex>>,
    pub family_fp: Vec<Vec<Vertex>>,
}

impl DoublyCoveringSphere {
    /// Mechanical check of the doubly edge-covering property, plus that
    /// every facet is an edge of the path blow-up. With `spanning`, also
    /// that the sphere uses every blow-up vertex.
    pub fn check(&self, spanning: bool) -> std::result::Result<(), String> {
        let k = self.path.k;
        let m = self.path.edge_count();
        if self.family_f.len() != m || self.family_fp.len() != m {
            return Err(format!("families have {} and {} facets for {m} path edges", self.family_f.len(), self.family_fp.len()));
        }
        for (name, fam) in [("F", &self.family_f), ("F'", &self.family_fp)] {
            let mut used = std::collections::HashSet::new();
            for (j, f) in fam.iter().enumerate() {
                if !self.sphere.contains_facet(f) {
                    return Err(format!("{name}[{j}] = {f:?} is not a facet"));
                }
                let expected: Vec<usize> = (j..j + k).collect();
                if self.path.project(f).as_ref() != Some(&expected) {
                    return Err(format!("{name}[{j}] = {f:?} does not project onto path edge {j}"));
                }
                if f.iter().any(|v| !used.insert(*v)) {
                    return Err(format!("{name}[{j}] = {f:?} meets an earlier facet of {name}"));
                }
            }
        }
        for j in 0..m {
            let (mut a, mut b) = (self.family_f[j].clone(), self.family_fp[j].clone());
            a.sort_unstable();
            b.sort_unstable();
            if a == b {
                return Err(format!("both families use {a:?} for path edge {j}"));
            }
        }
        if let Some(f) = self.sphere.facets().iter().find(|f| !self.path.has_edge(f)) {
            return Err(format!("facet {f:?} is not an edge of the path blow-up"));
        }
        if spanning && self.sphere.vertices() != self.path.vertex_set().as_slice() {
            return Err("sphere does not span the path blow-up".into());
        }
        Ok(())
    }

    /// Renames every vertex; `map` must be injective.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Result<DoublyCoveringSphere> {
        let fam = |fam: &[Vec<Vertex>]| fam.iter().map(|f| f.iter().map(|&v| map(v)).collect()).collect();
        Ok(DoublyCoveringSphere {
            sphere: self.sphere.relabel(&map),
            path: PathBlowup::new(self.path.k, fam(&self.path.parts))?,
            family_f: fam(&self.family_f),
            family_fp: fam(&self.family_fp),
        })
    }
}

/// Vertex ids of the thin path sphere: u_0 = 0, u_i = 2i−1 and v_i = 2i for
/// 1 ≤ i ≤ k−1, u_k = 2k−1.
fn thin_ids(k: usize) -> (impl Fn(usize) -> Vertex, impl Fn(usize) -> Vertex) {
    let u = move |i: usize| if i == 0 { 0 } else if i == k { 2 * k - 1 } else { 2 * i - 1 };
    let v = |i: usize| 2 * i;
    (u, v)
}

/// Spanning doubly edge-covering sphere of P_{k+1}(1,2,…,2,1): the
/// suspension, with apexes u_0 and u_k, of the cross-polytope on the pairs
/// {u_i, v_i}.
pub fn thin_path_sphere(k: usize) -> Result<DoublyCoveringSphere> {
    if k < 2 {
        return Err(Error::BadParams(format!("thin path sphere needs k >= 2, got {k}")));
    }
    let (u, v) = thin_ids(k);
    let mut facets = Vec::with_capacity(1 << k);
    for mask in 0u32..(1 << (k - 1)) {
        let t: Vec<Vertex> = (1..k).map(|i| if mask >> (i - 1) & 1 == 1 { v(i) } else { u(i) }).collect();
        for apex in [u(0), u(k)] {
            let mut f = t.clone();
            f.push(apex);
            f.sort_unstable();
            facets.push(f);
        }
    }
    let sphere = SimplicialComplex::from_sorted_facets(k - 1, facets);
    let mut parts = vec![vec![u(0)]];
    parts.extend((1..k).map(|i| vec![u(i), v(i)]));
    parts.push(vec![u(k)]);
    let path = PathBlowup::new(k, parts)?;
    let family_f = vec![(0..k).map(&u).collect(), (1..k).map(&v).chain([u(k)]).collect()];
    let family_fp = vec![[u(0)].into_iter().chain((1..k).map(&v)).collect(), (1..=k).map(&u).collect()];
    Ok(DoublyCoveringSphere { sphere, path, family_f, family_fp })
}

/// Extends the path by one vertex at the front: a thin path sphere is glued
/// onto `s` along F'[0], and its facets g_0, g'_0, g'_1 join the families.
pub fn grow_path_sphere(s: &DoublyCoveringSphere) -> Result<DoublyCoveringSphere> {
    let k = s.path.k;
    let fp0 = s.family_fp.first().ok_or(Error::MissingFamilyFacet(0))?;
    if s.family_f.is_empty() {
        return Err(Error::MissingFamilyFacet(0));
    }
    // fp0 ordered by path position 0..k-1.
    let mut at = vec![0; k];
    for &w in fp0 {
        let pos = s.path.position(w).ok_or(Error::MissingFamilyFacet(0))?;
        if pos >= k {
            return Err(Error::MissingFamilyFacet(0));
        }
        at[pos] = w;
    }
    let t = thin_path_sphere(k)?;
    let (u, v) = thin_ids(k);
    let fresh = s.sphere.vertices().last().map_or(0, |&x| x + 1);
    let new_u: Vec<Vertex> = (0..k).map(|i| fresh + i).collect();
    let mut map: HashMap<Vertex, Vertex> = HashMap::new();
    for i in 1..k {
        map.insert(v(i), at[i - 1]);
        map.insert(u(i), new_u[i]);
    }
    map.insert(u(k), at[k - 1]);
    map.insert(u(0), new_u[0]);
    let t = t.relabel(|x| map[&x])?;
    let sphere = s.sphere.glue(&t.sphere, fp0)?;

    let mut parts = vec![vec![new_u[0]]];
    for i in 1..=s.path.len() {
        let mut p = s.path.parts[i - 1].clone();
        if i < k {
            p.push(new_u[i]);
        }
        parts.push(p);
    }
    let path = PathBlowup::new(k, parts)?;
    let mut family_f = vec![t.family_f[0].clone()];
    family_f.extend(s.family_f.iter().cloned());
    let mut family_fp = t.family_fp.clone();
    family_fp.extend(s.family_fp[1..].iter().cloned());
    Ok(DoublyCoveringSphere { sphere, path, family_f, family_fp })
}

/// Doubly edge-covering sphere in P_ℓ(k,…,k) with profile
/// (1,2,…,k−1,k,…,k,k−1,…,2,1), by growing the thin path sphere.
pub fn tight_path_blowup_sphere(k: usize, l: usize) -> Result<DoublyCoveringSphere> {
    if k < 2 || l < k + 1 {
        return Err(Error::BadParams(format!("need k >= 2 and l >= k + 1, got k = {k}, l = {l}")));
    }
    let mut s = thin_path_sphere(k)?;
    for _ in 0..l - k - 1 {
        s = grow_path_sphere(&s)?;
    }
    Ok(s)
}

/// Number of vertices at position `i` of [`tight_path_blowup_sphere`]`(k, l)`.
pub fn path_profile(k: usize, l: usize, i: usize) -> usize {
    (i + 1).min(l - i).min(k).min(l + 1 - k)
}
