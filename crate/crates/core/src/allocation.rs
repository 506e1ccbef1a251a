//! Filling a blow-up with vertex-disjoint spheres on prescribed entry
//! facets, and assembling a spanning sphere of a nearly-regular blow-up
//! that contains two prescribed facets.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::blowup::Blowup;
use crate::complex::{CertificateLevel, SimplicialComplex, VerifyOptions};
use crate::error::{Error, Result};
use crate::hypergraph::{greedy_covering_walk, EdgeOracle, Hypergraph, TightWalk};
use crate::matching::{hall_matching, matching_from_adjacency, BipartiteInstance, MatchingKind};
use crate::spheres::{partite_sphere, path_profile, tight_path_blowup_sphere};
use crate::Vertex;

/// The pairs of base vertices lying in a common edge, sorted.
pub fn shadow_pairs(r: &Hypergraph) -> Vec<(Vertex, Vertex)> {
    let mut pairs: Vec<(Vertex, Vertex)> = r
        .edges()
        .iter()
        .flat_map(|e| (0..e.len()).flat_map(move |i| (i + 1..e.len()).map(move |j| (e[i], e[j]))))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Injective map from supported pairs to edges containing them, as sorted
/// `(pair, edge index)` entries.
pub fn assign_edges_to_pairs(r: &Hypergraph) -> Result<Vec<((Vertex, Vertex), usize)>> {
    let pairs = shadow_pairs(r);
    let adjacency = pairs
        .iter()
        .map(|&(a, b)| {
            let inc = r.incident(a);
            inc.iter().copied().filter(|&i| r.edge(i).binary_search(&b).is_ok()).collect()
        })
        .collect();
    let inst = BipartiteInstance { left: pairs.len(), right: r.edge_count(), adjacency };
    let res = hall_matching(&inst);
    if res.kind == MatchingKind::HallViolator {
        let violator = res.violator.unwrap_or_default();
        return Err(Error::HallFailure { violator_size: violator.len(), neighbourhood: inst.neighbourhood(&violator).len() });
    }
    Ok(res.pairs.into_iter().map(|(l, e)| (pairs[l], e)).collect())
}

/// Degree hypothesis of the filling and allocation steps: no isolated
/// vertices and 2·δ*(R) > |V(R)|.
pub fn check_degree_hypothesis(r: &Hypergraph) -> std::result::Result<(), String> {
    if r.has_isolated_vertices() {
        return Err(format!("base graph has isolated vertices {:?}", r.isolated_vertices()));
    }
    let d = r.min_supported_codegree();
    if 2 * d <= r.n() {
        return Err(format!("2·δ* = {} does not exceed s = {}", 2 * d, r.n()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillResult {
    /// Indexed like the edges of the base graph.
    pub spheres: Vec<SimplicialComplex>,
    pub entry_facets: Vec<Vec<Vertex>>,
    /// Vertex set B_e of each sphere, sorted.
    pub blocks: Vec<Vec<Vertex>>,
    /// Part sizes of B_e, in the order of the base vertices of e.
    pub shapes: Vec<Vec<usize>>,
    /// Number of matching edges routed into B_e.
    pub routed: Vec<usize>,
    /// Edge that absorbed the parity fix, if one was needed.
    pub e_star: Option<usize>,
    pub assignment: Vec<((Vertex, Vertex), usize)>,
}

impl FillResult {
    /// Partition, entry facets, host edges and the shape table.
    pub fn check(&self, b: &Blowup) -> std::result::Result<(), String> {
        let r = b.base();
        let mut seen = HashSet::new();
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                if !seen.insert(v) {
                    return Err(format!("vertex {v} lies in two blocks"));
                }
            }
            let s = &self.spheres[i];
            if s.vertices() != block.as_slice() {
                return Err(format!("sphere {i} does not span its block"));
            }
            if !s.contains_facet(&self.entry_facets[i]) {
                return Err(format!("entry facet {:?} missing from sphere {i}", self.entry_facets[i]));
            }
            if let Some(f) = s.facets().iter().find(|f| b.project_set(f) != r.edge(i)) {
                return Err(format!("facet {f:?} of sphere {i} does not project onto its edge"));
            }
            let mut shape = self.shapes[i].clone();
            shape.sort_unstable();
            let k = shape.len();
            let ok = if Some(i) == self.e_star {
                shape[..k - 3].iter().all(|&x| x == 2) && shape[k - 3..] == [3, 3, 3]
            } else {
                let l = 2 + self.routed[i];
                shape[..k - 2].iter().all(|&x| x == 2) && shape[k - 2..] == [l, l]
            };
            if !ok {
                return Err(format!("block {i} has shape {:?} with {} routed pairs", self.shapes[i], self.routed[i]));
            }
        }
        if seen.len() != b.vertex_count() {
            return Err(format!("blocks cover {} of {} vertices", seen.len(), b.vertex_count()));
        }
        Ok(())
    }
}

/// Covers every vertex of `b` with spheres S_e, one per base edge, where
/// `entry[e]` is a facet of S_e.
///
/// Each S_e starts as A_e (the entry facet plus one more vertex per part);
/// an odd remainder is fixed by giving one edge outside the pair assignment
/// an extra vertex in its first three parts; the remainder is perfectly
/// matched along supported pairs and each matching edge is routed to the
/// block of the edge assigned to its pair.
pub fn fill_blowup(r: &Hypergraph, b: &Blowup, entry: &[Vec<Vertex>]) -> Result<FillResult> {
    if b.base() != r {
        return Err(Error::BadParams("blow-up is not over the given base graph".into()));
    }
    check_degree_hypothesis(r).map_err(Error::PreconditionFailed)?;
    let k = r.k();
    if entry.len() != r.edge_count() {
        return Err(Error::PreconditionFailed(format!("{} entry facets for {} edges", entry.len(), r.edge_count())));
    }
    let mut used: HashSet<Vertex> = HashSet::new();
    let mut entry_sorted = Vec::with_capacity(entry.len());
    for (i, f) in entry.iter().enumerate() {
        let mut f = f.clone();
        f.sort_unstable();
        if !b.has_edge(&f) || b.project_set(&f) != r.edge(i) {
            return Err(Error::PreconditionFailed(format!("entry facet {f:?} does not project onto edge {:?}", r.edge(i))));
        }
        if f.iter().any(|v| !used.insert(*v)) {
            return Err(Error::PreconditionFailed(format!("entry facet {f:?} meets another entry facet")));
        }
        entry_sorted.push(f);
    }
    for x in 0..r.n() {
        let needed = 2 * r.vertex_degree(x);
        if b.part(x).len() < needed {
            return Err(Error::PartTooSmall { base_vertex: x, needed, available: b.part(x).len() });
        }
    }
    let assignment = assign_edges_to_pairs(r)?;

    // blocks[e][j]: vertices of B_e in the part of the j-th vertex of e.
    let mut blocks: Vec<Vec<Vec<Vertex>>> = vec![vec![Vec::new(); k]; r.edge_count()];
    let mut cursor = vec![0usize; r.n()];
    let mut take = |x: usize, used: &mut HashSet<Vertex>| -> Result<Vertex> {
        let part = b.part(x);
        while cursor[x] < part.len() && used.contains(&part[cursor[x]]) {
            cursor[x] += 1;
        }
        let v = *part.get(cursor[x]).ok_or(Error::PartTooSmall { base_vertex: x, needed: cursor[x] + 1, available: part.len() })?;
        used.insert(v);
        Ok(v)
    };
    for (i, e) in r.edges().iter().enumerate() {
        for (j, &x) in e.iter().enumerate() {
            let fv = *entry_sorted[i].iter().find(|&&v| b.project(v) == x).expect("entry facet is a transversal");
            blocks[i][j].push(fv);
        }
    }
    for (i, e) in r.edges().iter().enumerate() {
        for (j, &x) in e.iter().enumerate() {
            let v = take(x, &mut used)?;
            blocks[i][j].push(v);
        }
    }
    let mut e_star = None;
    if (b.vertex_count() - used.len()) % 2 == 1 {
        let image: HashSet<usize> = assignment.iter().map(|&(_, e)| e).collect();
        let star = (0..r.edge_count()).find(|i| !image.contains(i));
        let star = match star {
            Some(s) if k >= 3 => s,
            _ => return Err(Error::ParityFixImpossible),
        };
        for j in 0..3 {
            let v = take(r.edge(star)[j], &mut used)?;
            blocks[star][j].push(v);
        }
        e_star = Some(star);
    }

    // Auxiliary graph on the uncovered vertices.
    let pairs: HashSet<(Vertex, Vertex)> = assignment.iter().map(|&(p, _)| p).collect();
    let uncovered: Vec<Vertex> = b.vertices().into_iter().filter(|v| !used.contains(v)).collect();
    let by_part: BTreeMap<usize, Vec<usize>> = uncovered.iter().enumerate().fold(BTreeMap::new(), |mut m, (i, &v)| {
        m.entry(b.project(v)).or_insert_with(Vec::new).push(i);
        m
    });
    let mut adj = vec![Vec::new(); uncovered.len()];
    for (&x, xs) in &by_part {
        for (&y, ys) in by_part.range(x + 1..) {
            if pairs.contains(&(x, y)) {
                for &a in xs {
                    for &c in ys {
                        adj[a].push(c);
                        adj[c].push(a);
                    }
                }
            }
        }
    }
    let matching = matching_from_adjacency(adj);
    if 2 * matching.len() != uncovered.len() {
        return Err(Error::NoPerfectMatching { vertices: uncovered.len() });
    }
    let edge_of: HashMap<(Vertex, Vertex), usize> = assignment.iter().copied().collect();
    let mut routed = vec![0usize; r.edge_count()];
    for (a, c) in matching {
        let (mut va, mut vc) = (uncovered[a], uncovered[c]);
        if b.project(va) > b.project(vc) {
            std::mem::swap(&mut va, &mut vc);
        }
        let (x, y) = (b.project(va), b.project(vc));
        let e = edge_of[&(x, y)];
        routed[e] += 1;
        let edge = r.edge(e);
        blocks[e][edge.binary_search(&x).expect("pair inside its edge")].push(va);
        blocks[e][edge.binary_search(&y).expect("pair inside its edge")].push(vc);
    }

    let mut spheres = Vec::with_capacity(r.edge_count());
    let mut flat = Vec::with_capacity(r.edge_count());
    let mut shapes = Vec::with_capacity(r.edge_count());
    for parts in blocks {
        // Designated transversal in part order: the entry facet vertex is first.
        let designated: Vec<Vertex> = parts.iter().map(|p| p[0]).collect();
        let parts: Vec<Vec<Vertex>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        spheres.push(partite_sphere(&parts, Some(&designated))?);
        shapes.push(parts.iter().map(Vec::len).collect());
        let mut all: Vec<Vertex> = parts.into_iter().flatten().collect();
        all.sort_unstable();
        flat.push(all);
    }
    Ok(FillResult { spheres, entry_facets: entry_sorted, blocks: flat, shapes, routed, e_star, assignment })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocateOptions {
    /// Require φ(f1), φ(f2) and the singleton to be pairwise disjoint.
    /// Otherwise f1 and f2 only need to be disjoint with distinct
    /// projections, and the singleton must avoid both projections.
    pub require_disjoint_projections: bool,
    /// Run the sphere check and spanning check on the result.
    pub verify: bool,
    pub verify_options: VerifyOptions,
}

impl Default for AllocateOptions {
    fn default() -> Self {
        AllocateOptions { require_disjoint_projections: true, verify: true, verify_options: VerifyOptions::default() }
    }
}

impl AllocateOptions {
    pub fn relaxed() -> Self {
        AllocateOptions { require_disjoint_projections: false, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationReport {
    pub walk: Vec<Vertex>,
    /// Vertices appended to the walk to reach k+1 vertices or to fix parity.
    pub walk_padding: usize,
    /// Singleton base vertex, the rerouted edge e' and the facet f3.
    pub singleton: Option<(usize, Vec<usize>, Vec<Vertex>)>,
    pub backbone_vertices: usize,
    pub e_star: Option<Vec<usize>>,
    pub facets: usize,
    pub vertices: usize,
    pub spanning: Option<bool>,
    pub level: Option<CertificateLevel>,
}

impl fmt::Display for AllocationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "walk_order: {}", self.walk.len())?;
        writeln!(f, "walk_padding: {}", self.walk_padding)?;
        match &self.singleton {
            Some((x, e, f3)) => writeln!(f, "singleton: {x} rerouted_edge: {e:?} f3: {f3:?}")?,
            None => writeln!(f, "singleton: none")?,
        }
        writeln!(f, "backbone_vertices: {}", self.backbone_vertices)?;
        match &self.e_star {
            Some(e) => writeln!(f, "parity_edge: {e:?}")?,
            None => writeln!(f, "parity_edge: none")?,
        }
        writeln!(f, "vertices: {}", self.vertices)?;
        writeln!(f, "facets: {}", self.facets)?;
        if let Some(s) = self.spanning {
            writeln!(f, "spanning: {s}")?;
        }
        if let Some(l) = self.level {
            writeln!(f, "certificate: {l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationResult {
    pub sphere: SimplicialComplex,
    pub f1: Vec<Vertex>,
    pub f2: Vec<Vertex>,
    pub report: AllocationReport,
}

/// Covering walk used for embedding: greedy, padded to at least k+1
/// vertices by repeating the vertex k places back (which re-reads the last
/// edge in rotated order).
pub fn allocation_walk(r: &Hypergraph) -> Result<TightWalk> {
    let mut w = greedy_covering_walk(r)?;
    while w.order() < r.k() + 1 {
        pad_walk(&mut w);
    }
    Ok(w)
}

fn pad_walk(w: &mut TightWalk) {
    let v = w.vertices[w.vertices.len() - w.k];
    w.vertices.push(v);
}

/// Vertices of part `x` used by the backbone sphere over `walk`.
fn backbone_usage(walk: &TightWalk, n: usize) -> Vec<usize> {
    let t = walk.order();
    let mut usage = vec![0; n];
    for (i, &w) in walk.vertices.iter().enumerate() {
        usage[w] += path_profile(walk.k, t, i);
    }
    usage
}

/// Smallest part size for which [`allocate`] has room on base `r`: per
/// base vertex, the backbone sphere's usage plus its degree (the entry
/// facets are counted once), one vertex for the parity fix and k for walk
/// padding; with a singleton, the same on the reduced base plus two more
/// for the singleton's sphere.
pub fn minimum_part_size(r: &Hypergraph, singleton: Option<usize>) -> Result<usize> {
    let need = |g: &Hypergraph, extra: usize| -> Result<usize> {
        let walk = allocation_walk(g)?;
        let usage = backbone_usage(&walk, g.n());
        Ok((0..g.n()).map(|x| usage[x] + g.vertex_degree(x) + 1 + g.k() + extra).max().unwrap_or(0))
    };
    let mut best = need(r, 0)?;
    if let Some(x) = singleton {
        let (reduced, _) = r.delete_vertex(x);
        best = best.max(need(&reduced, 2)?);
    }
    Ok(best)
}

/// Whether the vertices left for the matching step of [`allocate`] on `b`
/// are odd in number, so that the fill needs its parity fix.
pub fn leftover_is_odd(b: &Blowup) -> Result<bool> {
    let k = b.k();
    let (r, total) = match b.singleton() {
        Some(x) => (b.base().delete_vertex(x).0, b.vertex_count() - k),
        None => (b.base().clone(), b.vertex_count()),
    };
    let walk = allocation_walk(&r)?;
    let backbone: usize = backbone_usage(&walk, r.n()).iter().sum();
    Ok((total + backbone + k * r.edge_count()) % 2 == 1)
}

fn sorted(f: &[Vertex]) -> Vec<Vertex> {
    let mut f = f.to_vec();
    f.sort_unstable();
    f
}

/// Spanning sphere of the blow-up `b` in which `f1` and `f2` are facets.
///
/// A singleton part is first absorbed into a small sphere S' hanging off a
/// facet f3. A greedy covering walk of the base is lifted into a doubly
/// edge-covering backbone sphere whose second family is relabelled within
/// parts to hit f1, f2 and f3; everything else is filled by
/// [`fill_blowup`] on the first family and glued on.
pub fn allocate(b: &Blowup, f1: &[Vertex], f2: &[Vertex], opts: &AllocateOptions) -> Result<AllocationResult> {
    let r = b.base();
    let k = r.k();
    check_degree_hypothesis(r).map_err(Error::PreconditionFailed)?;
    if !b.is_nearly_regular() {
        return Err(Error::PreconditionFailed("blow-up is not nearly regular".into()));
    }
    let (f1, f2) = (sorted(f1), sorted(f2));
    for f in [&f1, &f2] {
        if !b.has_edge(f) {
            return Err(Error::PreconditionFailed(format!("{f:?} is not an edge of the blow-up")));
        }
    }
    let (p1, p2) = (b.project_set(&f1), b.project_set(&f2));
    let singleton = b.singleton();
    if opts.require_disjoint_projections {
        if p1.iter().any(|x| p2.contains(x)) {
            return Err(Error::PreconditionFailed(format!("projections {p1:?} and {p2:?} intersect")));
        }
    } else if p1 == p2 || f1.iter().any(|v| f2.contains(v)) {
        return Err(Error::PreconditionFailed("f1 and f2 must be disjoint with distinct projections".into()));
    }
    if let Some(x) = singleton {
        if p1.contains(&x) || p2.contains(&x) {
            return Err(Error::PreconditionFailed(format!("singleton part {x} meets a prescribed facet")));
        }
    }

    // Singleton: S' on {u, v} plus two vertices in each other part of e.
    let mut side = None;
    let (work, base_of) = match singleton {
        None => (b.clone(), (0..r.n()).collect::<Vec<usize>>()),
        Some(x) => {
            let v = b.part(x)[0];
            let blocked: HashSet<usize> =
                if opts.require_disjoint_projections { p1.iter().chain(&p2).copied().collect() } else { HashSet::new() };
            let avoid: HashSet<Vertex> = f1.iter().chain(&f2).copied().collect();
            let pick = |part: &[Vertex], count: usize| -> Option<Vec<Vertex>> {
                let got: Vec<Vertex> = part.iter().copied().filter(|w| !avoid.contains(w)).take(count).collect();
                (got.len() == count).then_some(got)
            };
            let mut found = None;
            'search: for &ei in r.incident(x) {
                let e = r.edge(ei);
                if e.iter().any(|z| blocked.contains(z)) {
                    continue;
                }
                for y in 0..r.n() {
                    if e.contains(&y) || blocked.contains(&y) {
                        continue;
                    }
                    let mut e2: Vec<usize> = e.iter().copied().filter(|&z| z != x).chain([y]).collect();
                    e2.sort_unstable();
                    if !r.contains_edge(&e2) || e2 == p1 || e2 == p2 {
                        continue;
                    }
                    let Some(u) = pick(b.part(y), 1) else { continue };
                    let mut parts = vec![vec![u[0], v]];
                    for &z in e.iter().filter(|&&z| z != x) {
                        match pick(b.part(z), 2) {
                            Some(p) => parts.push(p),
                            None => continue 'search,
                        }
                    }
                    found = Some((e2, parts));
                    break 'search;
                }
            }
            let (e2, parts) = found.ok_or(Error::SingletonUnresolvable)?;
            let designated: Vec<Vertex> = parts.iter().map(|p| p[0]).collect();
            let s_prime = partite_sphere(&parts, Some(&designated))?;
            let f3 = sorted(&designated);
            let removed: HashSet<Vertex> =
                parts.iter().flatten().copied().filter(|w| !f3.contains(w) && *w != v).collect();
            let (reduced, map) = b.without_base_vertex(x)?;
            let reduced = reduced.without_vertices(&removed)?;
            check_degree_hypothesis(reduced.base()).map_err(Error::ReducedDegreeFailure)?;
            side = Some((x, e2, f3, s_prime));
            (reduced, map)
        }
    };
    let rr = work.base().clone();
    let f3 = side.as_ref().map(|(_, _, f3, _)| f3.clone());

    let mut walk = allocation_walk(&rr)?;
    let mut padding = walk.order() - greedy_covering_walk(&rr)?.order();
    let mut retried = false;
    let (backbone, fill, entries) = loop {
        match backbone_and_fill(&work, &walk, &[&f1, &f2], f3.as_deref()) {
            Err(Error::ParityFixImpossible) if k % 2 == 1 && !retried => {
                pad_walk(&mut walk);
                padding += 1;
                retried = true;
            }
            other => break other?,
        }
    };

    let mut sphere = backbone.clone();
    for (s_e, f_e) in fill.spheres.iter().zip(&entries) {
        sphere = sphere.glue(s_e, f_e)?;
    }
    if let Some((_, _, f3, s_prime)) = &side {
        sphere = sphere.glue(s_prime, f3)?;
    }
    let (spanning, level) = if opts.verify {
        (Some(sphere.is_spanning_copy(b)?), Some(sphere.verify_sphere_with(&opts.verify_options).level))
    } else {
        (None, None)
    };
    let report = AllocationReport {
        walk: walk.vertices.iter().map(|&w| base_of[w]).collect(),
        walk_padding: padding,
        singleton: side.as_ref().map(|(x, e2, f3, _)| (*x, e2.clone(), f3.clone())),
        backbone_vertices: backbone.vertex_count(),
        e_star: fill.e_star.map(|i| rr.edge(i).iter().map(|&w| base_of[w]).collect()),
        facets: sphere.facet_count(),
        vertices: sphere.vertex_count(),
        spanning,
        level,
    };
    Ok(AllocationResult { sphere, f1, f2, report })
}

/// Embeds the backbone sphere along `walk`, relabels it so that the second
/// family hits `targets` (and `f3`), and fills the rest.
fn backbone_and_fill(
    b: &Blowup,
    walk: &TightWalk,
    targets: &[&Vec<Vertex>],
    f3: Option<&[Vertex]>,
) -> Result<(SimplicialComplex, FillResult, Vec<Vec<Vertex>>)> {
    let r = b.base();
    let k = r.k();
    let t = walk.order();
    let dcs = tight_path_blowup_sphere(k, t)?;
    let mut cursor = vec![0usize; r.n()];
    let mut embed: HashMap<Vertex, Vertex> = HashMap::new();
    for (i, ids) in dcs.path.parts.iter().enumerate() {
        let x = walk.vertices[i];
        let part = b.part(x);
        for &id in ids {
            let host = *part.get(cursor[x]).ok_or_else(|| Error::PartTooSmall {
                base_vertex: x,
                needed: backbone_usage(walk, r.n())[x],
                available: part.len(),
            })?;
            cursor[x] += 1;
            embed.insert(id, host);
        }
    }
    // First window of each base edge.
    let mut window_of = vec![None; r.edge_count()];
    for j in 0..=t - k {
        let idx = r.edge_index(&walk.window_set(j)).expect("walk windows are edges");
        window_of[idx].get_or_insert(j);
    }
    let mapped = |f: &[Vertex]| -> Vec<Vertex> { f.iter().map(|v| embed[v]).collect() };
    let fam_f: Vec<Vec<Vertex>> =
        window_of.iter().map(|j| mapped(&dcs.family_f[j.expect("walk covers every edge")])).collect();
    let fam_fp: Vec<Vec<Vertex>> = window_of.iter().map(|j| mapped(&dcs.family_fp[j.expect("covered")])).collect();

    // Part-preserving permutation sending F'-members onto the targets.
    let mut partial: HashMap<Vertex, Vertex> = HashMap::new();
    for target in targets.iter().map(|t| t.as_slice()).chain(f3) {
        let e = b.project_set(target);
        let idx = r.edge_index(&e).ok_or_else(|| Error::PreconditionFailed(format!("{target:?} projects onto a non-edge")))?;
        for &src in &fam_fp[idx] {
            let x = b.project(src);
            let dst = *target.iter().find(|&&d| b.project(d) == x).expect("target is a transversal");
            partial.insert(src, dst);
        }
    }
    let mut sigma: HashMap<Vertex, Vertex> = HashMap::new();
    for x in 0..r.n() {
        let part = b.part(x);
        let dom: HashSet<Vertex> = part.iter().copied().filter(|v| partial.contains_key(v)).collect();
        let img: HashSet<Vertex> = dom.iter().map(|v| partial[v]).collect();
        let rest_src = part.iter().copied().filter(|v| !dom.contains(v));
        let rest_dst = part.iter().copied().filter(|v| !img.contains(v));
        for (s, d) in rest_src.zip(rest_dst) {
            sigma.insert(s, d);
        }
        for v in dom {
            sigma.insert(v, partial[&v]);
        }
    }
    let backbone = dcs.sphere.relabel(|id| sigma[&embed[&id]]);
    let entries: Vec<Vec<Vertex>> = fam_f.iter().map(|f| sorted(&f.iter().map(|v| sigma[v]).collect::<Vec<_>>())).collect();
    for target in targets.iter().map(|t| t.as_slice()).chain(f3) {
        debug_assert!(backbone.contains_facet(target));
    }
    let keep: HashSet<Vertex> = entries.iter().flatten().copied().collect();
    let removed: HashSet<Vertex> = backbone.vertices().iter().copied().filter(|v| !keep.contains(v)).collect();
    let rest = b.without_vertices(&removed)?;
    let fill = fill_blowup(r, &rest, &entries)?;
    Ok((backbone, fill, entries))
}
