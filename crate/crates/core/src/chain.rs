//! Chains of nearly-regular blow-ups covering a host, their verification,
//! synthetic chain hosts, the lower-bound constructions, and the assembly
//! of a spanning sphere along a chain.

use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::allocation::{allocate, leftover_is_odd, minimum_part_size, shadow_pairs, AllocateOptions, AllocationReport};
use crate::blowup::Blowup;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeOracle, Hypergraph};
use crate::{Rational, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLink {
    pub base: Hypergraph,
    /// `parts[x]`: sorted host vertices of base vertex `x`.
    pub parts: Vec<Vec<Vertex>>,
}

impl ChainLink {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.parts.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCertificate {
    pub links: Vec<ChainLink>,
    /// `shared_edges[i]` is the sorted k-set shared by links i and i+1.
    pub shared_edges: Vec<Vec<Vertex>>,
    pub epsilon: Rational,
    pub gamma: Rational,
    pub m1: Rational,
    pub m2: Rational,
}

impl ChainCertificate {
    pub fn k(&self) -> usize {
        self.links.first().map_or(0, |l| l.base.k())
    }
}

/// The union of the blow-ups of all links, answered link by link.
#[derive(Debug, Clone)]
pub struct ChainHost {
    k: usize,
    vertices: Vec<Vertex>,
    links: Vec<(Hypergraph, Vec<Vec<Vertex>>, HashMap<Vertex, usize>)>,
}

impl ChainHost {
    pub fn new(c: &ChainCertificate) -> Self {
        let mut vertices: Vec<Vertex> = c.links.iter().flat_map(|l| l.parts.iter().flatten().copied()).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let links = c
            .links
            .iter()
            .map(|l| {
                let proj = l.parts.iter().enumerate().flat_map(|(x, p)| p.iter().map(move |&v| (v, x))).collect();
                (l.base.clone(), l.parts.clone(), proj)
            })
            .collect();
        ChainHost { k: c.k(), vertices, links }
    }

    /// Number of vertex labels `0..n` the host spans.
    pub fn n(&self) -> usize {
        self.vertices.last().map_or(0, |v| v + 1)
    }

    /// Link blow-up edges counted with multiplicity (shared edges twice).
    pub fn edge_count_upper(&self) -> u128 {
        self.links
            .iter()
            .map(|(base, parts, _)| {
                base.edges().iter().map(|e| e.iter().map(|&x| parts[x].len() as u128).product::<u128>()).sum::<u128>()
            })
            .sum()
    }

    /// The host as an explicit hypergraph, refusing above `budget` edges.
    pub fn materialize(&self, budget: u64) -> Result<Hypergraph> {
        if self.edge_count_upper() > budget as u128 {
            return Err(Error::BudgetExceeded { budget });
        }
        let mut edges = Vec::new();
        for (base, parts, _) in &self.links {
            for e in base.edges() {
                for t in e.iter().map(|&x| parts[x].iter().copied()).multi_cartesian_product() {
                    edges.push(t);
                }
            }
        }
        Hypergraph::new(self.k, self.n(), edges)
    }
}

impl EdgeOracle for ChainHost {
    fn uniformity(&self) -> usize {
        self.k
    }

    fn vertex_set(&self) -> Vec<Vertex> {
        self.vertices.clone()
    }

    fn has_edge(&self, edge: &[Vertex]) -> bool {
        self.links.iter().any(|(base, _, proj)| {
            let img: Option<Vec<usize>> = edge.iter().map(|v| proj.get(v).copied()).collect();
            img.is_some_and(|mut img| {
                img.sort_unstable();
                base.contains_edge(&img)
            })
        })
    }

    fn has_complete_partite(&self, parts: &[Vec<Vertex>]) -> Option<bool> {
        let found = self.links.iter().any(|(base, _, proj)| {
            let mut img = Vec::with_capacity(parts.len());
            for p in parts {
                let Some(&x) = p.first().and_then(|v| proj.get(v)) else { return false };
                if !p.iter().all(|v| proj.get(v) == Some(&x)) {
                    return false;
                }
                img.push(x);
            }
            img.sort_unstable();
            img.windows(2).all(|w| w[0] != w[1]) && base.contains_edge(&img)
        });
        found.then_some(true)
    }
}

/// A host given explicitly or as the union of a chain's links.
#[derive(Debug, Clone)]
pub enum Host {
    Explicit(Hypergraph),
    Chain(ChainHost),
}

impl Host {
    pub fn n(&self) -> usize {
        match self {
            Host::Explicit(h) => h.n(),
            Host::Chain(c) => c.n(),
        }
    }
}

impl EdgeOracle for Host {
    fn uniformity(&self) -> usize {
        match self {
            Host::Explicit(h) => h.uniformity(),
            Host::Chain(c) => c.uniformity(),
        }
    }

    fn vertex_set(&self) -> Vec<Vertex> {
        match self {
            Host::Explicit(h) => h.vertex_set(),
            Host::Chain(c) => c.vertex_set(),
        }
    }

    fn has_edge(&self, edge: &[Vertex]) -> bool {
        match self {
            Host::Explicit(h) => h.has_edge(edge),
            Host::Chain(c) => c.has_edge(edge),
        }
    }

    fn has_complete_partite(&self, parts: &[Vec<Vertex>]) -> Option<bool> {
        match self {
            Host::Explicit(h) => h.has_complete_partite(parts),
            Host::Chain(c) => c.has_complete_partite(parts),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub generator: String,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct HostInstance {
    pub host: Host,
    pub certificate: Option<ChainCertificate>,
    pub provenance: Provenance,
}

impl HostInstance {
    fn explicit(h: Hypergraph, generator: &str) -> Self {
        HostInstance { host: Host::Explicit(h), certificate: None, provenance: Provenance { generator: generator.into(), seed: None } }
    }

    /// The explicit host, for generators that build one.
    pub fn hypergraph(&self) -> Option<&Hypergraph> {
        match &self.host {
            Host::Explicit(h) => Some(h),
            Host::Chain(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCheck {
    pub name: &'static str,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    /// Structure, properties 1 to 5, then the subgraph check.
    pub checks: Vec<ChainCheck>,
    /// A regularity centre per link, when property 2 holds for it.
    pub m_star: Vec<Option<Rational>>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }

    pub fn check(&self, name: &str) -> Option<&ChainCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Whether property `i` (1 to 5) holds.
    pub fn property_holds(&self, i: usize) -> bool {
        self.check(PROPERTY_NAMES[i - 1]).is_some_and(|c| c.violations.is_empty())
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match c.violations.first() {
                None => writeln!(f, "{}: PASS", c.name)?,
                Some(v) => writeln!(f, "{}: FAIL ({} violations; first: {v})", c.name, c.violations.len())?,
            }
        }
        Ok(())
    }
}

const PROPERTY_NAMES: [&str; 5] = ["property 1", "property 2", "property 3", "property 4", "property 5"];

/// Smallest m in `[m1, m2]` putting every part size in `[(1-γ)m, (1+γ)m]`,
/// allowing one part of size 1 to stay outside.
pub fn regularity_centre(sizes: &[usize], gamma: Rational, m1: Rational, m2: Rational) -> Option<Rational> {
    let one = Rational::from_integer(1);
    let solve = |sizes: &[usize]| -> Option<Rational> {
        let (Some(&lo_size), Some(&hi_size)) = (sizes.iter().min(), sizes.iter().max()) else { return Some(m1) };
        let lo = m1.max(Rational::from_integer(hi_size as i64) / (one + gamma));
        let hi = if gamma < one { m2.min(Rational::from_integer(lo_size as i64) / (one - gamma)) } else { m2 };
        (lo <= hi).then_some(lo)
    };
    if gamma < Rational::from_integer(0) || m1 > m2 {
        return None;
    }
    solve(sizes).or_else(|| {
        let i = sizes.iter().position(|&s| s == 1)?;
        let rest: Vec<usize> = sizes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &s)| s).collect();
        solve(&rest)
    })
}

fn singleton_of(sizes: &[usize], gamma: Rational, m: Rational) -> Option<usize> {
    let one = Rational::from_integer(1);
    let inside = |s: usize| {
        let s = Rational::from_integer(s as i64);
        (one - gamma) * m <= s && s <= (one + gamma) * m
    };
    let singles: Vec<usize> = (0..sizes.len()).filter(|&x| sizes[x] == 1 && !inside(1)).collect();
    (singles.len() == 1).then(|| singles[0])
}

/// Checks the chain properties literally:
/// 1. each base has no isolated vertices and 2·δ* ≥ (1+ε)·|V(F_i)|;
/// 2. each link is (γ, m*)-nearly-regular for some m* in `[m1, m2]`;
/// 3. the links cover the host's vertex set;
/// 4. non-consecutive links are vertex-disjoint;
/// 5. consecutive links meet in exactly their shared k-set, which is a
///    transversal of a base edge in both and avoids both singleton parts;
///
/// plus internal structure and that every link blow-up edge is a host edge.
pub fn verify_chain(h: &impl EdgeOracle, c: &ChainCertificate) -> ChainReport {
    let k = h.uniformity();
    let mut structure = Vec::new();
    let mut props: [Vec<String>; 5] = Default::default();
    let mut subgraph = Vec::new();
    let mut m_star = Vec::with_capacity(c.links.len());
    if c.links.is_empty() {
        structure.push("chain has no links".to_string());
    }
    if c.shared_edges.len() + 1 != c.links.len().max(1) {
        structure.push(format!("{} shared edges for {} links", c.shared_edges.len(), c.links.len()));
    }
    let mut vsets = Vec::with_capacity(c.links.len());
    let mut projs: Vec<HashMap<Vertex, usize>> = Vec::with_capacity(c.links.len());
    for (i, link) in c.links.iter().enumerate() {
        if link.base.k() != k {
            structure.push(format!("link {i}: base is {}-uniform, host {k}-uniform", link.base.k()));
        }
        if link.parts.len() != link.base.n() {
            structure.push(format!("link {i}: {} parts for {} base vertices", link.parts.len(), link.base.n()));
        }
        let mut proj = HashMap::new();
        for (x, p) in link.parts.iter().enumerate() {
            if p.is_empty() {
                structure.push(format!("link {i}: part {x} is empty"));
            }
            for &v in p {
                if proj.insert(v, x).is_some() {
                    structure.push(format!("link {i}: vertex {v} lies in two parts"));
                }
            }
        }
        vsets.push(proj.keys().copied().collect::<HashSet<Vertex>>());
        projs.push(proj);

        let n = Rational::from_integer(link.base.n() as i64);
        let d = Rational::from_integer(2 * link.base.min_supported_codegree() as i64);
        if link.base.has_isolated_vertices() {
            props[0].push(format!("link {i}: base has isolated vertices {:?}", link.base.isolated_vertices()));
        }
        if d < (Rational::from_integer(1) + c.epsilon) * n {
            props[0].push(format!("link {i}: 2·δ* = {d} < (1+ε)·{n}"));
        }
        let sizes: Vec<usize> = link.parts.iter().map(Vec::len).collect();
        let m = regularity_centre(&sizes, c.gamma, c.m1, c.m2);
        if m.is_none() {
            props[1].push(format!("link {i}: part sizes {sizes:?} fit no centre in [{}, {}]", c.m1, c.m2));
        }
        m_star.push(m);

        let mut blocked = false;
        for e in link.base.edges() {
            if blocked || e.iter().any(|&x| x >= link.parts.len()) {
                continue;
            }
            let parts: Vec<Vec<Vertex>> = e.iter().map(|&x| link.parts[x].clone()).collect();
            if h.has_complete_partite(&parts) == Some(true) {
                continue;
            }
            let missing = parts.iter().map(|p| p.iter().copied()).multi_cartesian_product().find(|t| {
                let mut t = t.clone();
                t.sort_unstable();
                !h.has_edge(&t)
            });
            if let Some(t) = missing {
                subgraph.push(format!("link {i}: transversal {t:?} of base edge {e:?} is not a host edge"));
                blocked = true;
            }
        }
    }

    let host: HashSet<Vertex> = h.vertex_set().into_iter().collect();
    let union: HashSet<Vertex> = vsets.iter().flatten().copied().collect();
    if union != host {
        let mut outside: Vec<Vertex> = host.symmetric_difference(&union).copied().collect();
        outside.sort_unstable();
        props[2].push(format!("link union and host differ on {} vertices, first {:?}", outside.len(), outside.first()));
    }
    for i in 0..vsets.len() {
        for j in i + 2..vsets.len() {
            if let Some(v) = vsets[i].intersection(&vsets[j]).min() {
                props[3].push(format!("links {i} and {j} share vertex {v}"));
            }
        }
    }
    for (i, shared) in c.shared_edges.iter().enumerate() {
        if i + 1 >= vsets.len() {
            break;
        }
        let mut meet: Vec<Vertex> = vsets[i].intersection(&vsets[i + 1]).copied().collect();
        meet.sort_unstable();
        let mut shared = shared.clone();
        shared.sort_unstable();
        if shared.len() != k {
            props[4].push(format!("shared set {i} has {} vertices", shared.len()));
        }
        if meet != shared {
            props[4].push(format!("links {i} and {} meet in {meet:?}, declared {shared:?}", i + 1));
        }
        for j in [i, i + 1] {
            let img: Option<Vec<usize>> = shared.iter().map(|v| projs[j].get(v).copied()).collect();
            let Some(mut img) = img else {
                props[4].push(format!("shared set {i} is not inside link {j}"));
                continue;
            };
            img.sort_unstable();
            if img.windows(2).any(|w| w[0] == w[1]) || !c.links[j].base.contains_edge(&img) {
                props[4].push(format!("shared set {i} is not a transversal of a base edge of link {j}"));
            }
            let sizes: Vec<usize> = c.links[j].parts.iter().map(Vec::len).collect();
            if let Some(x) = m_star[j].and_then(|m| singleton_of(&sizes, c.gamma, m)) {
                if img.contains(&x) {
                    props[4].push(format!("shared set {i} meets the singleton part of link {j}"));
                }
            }
        }
    }

    let mut checks = vec![ChainCheck { name: "structure", violations: structure }];
    checks.extend(PROPERTY_NAMES.iter().zip(props).map(|(&name, violations)| ChainCheck { name, violations }));
    checks.push(ChainCheck { name: "subgraph", violations: subgraph });
    ChainReport { checks, m_star }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainParams {
    pub k: usize,
    pub s: usize,
    pub links: usize,
    pub part_size: usize,
    pub seed: u64,
    /// Give every link a singleton part on its last base vertex.
    pub singletons: bool,
}

impl ChainParams {
    pub fn new(k: usize, s: usize, links: usize, part_size: usize, seed: u64) -> Self {
        ChainParams { k, s, links, part_size, seed, singletons: false }
    }
}

/// Least base edge avoiding `avoid` vertices and not equal to any of
/// `not`, preferring edges disjoint from all of `prefer_disjoint`.
fn pick_edge(base: &Hypergraph, avoid: Option<usize>, not: &[&[usize]], prefer_disjoint: &[usize]) -> Option<Vec<usize>> {
    let ok = |e: &&Vec<usize>| avoid.is_none_or(|x| !e.contains(&x)) && !not.contains(&e.as_slice());
    let eligible: Vec<&Vec<usize>> = base.edges().iter().filter(ok).collect();
    eligible.iter().find(|e| e.iter().all(|x| !prefer_disjoint.contains(x))).or(eligible.first()).map(|e| e.to_vec())
}

/// Synthetic chain host: `links` blow-ups of K_s^(k) with part sizes drawn
/// from `[m, (1+γ)m]`, γ = 1/10, consecutive links sharing one transversal
/// edge. The host is the union of the link blow-ups.
pub fn generate_chain_host(p: &ChainParams) -> Result<HostInstance> {
    let (k, s) = (p.k, p.s);
    if k < 2 || s < k + 2 {
        return Err(Error::BadParams(format!("need k ≥ 2 and s ≥ k+2, got k = {k}, s = {s}")));
    }
    if p.links == 0 {
        return Err(Error::BadParams("a chain needs at least one link".into()));
    }
    let base = Hypergraph::complete(k, s)?;
    let codeg = base.min_supported_codegree();
    if 2 * codeg < s {
        return Err(Error::BadParams(format!("K_{s}^({k}) has 2·δ* = {} < {s}", 2 * codeg)));
    }
    let singleton = p.singletons.then_some(s - 1);
    let needed = minimum_part_size(&base, singleton)?;
    if p.part_size < needed {
        return Err(Error::BadParams(format!("part size {} is below the minimum {needed}", p.part_size)));
    }
    let m = p.part_size;
    let spread = m / 10;
    let gamma = Rational::new(1, 10);
    let epsilon = Rational::new(2 * codeg as i64 - s as i64, s as i64);
    // Without a parity edge the leftover of every link must be even.
    let reduced = match singleton {
        Some(x) => base.delete_vertex(x).0,
        None => base.clone(),
    };
    let parity_edge = k >= 3 && reduced.edge_count() > shadow_pairs(&reduced).len();

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut next: Vertex = 0;
    let mut links = Vec::with_capacity(p.links);
    let mut shared_edges: Vec<Vec<Vertex>> = Vec::new();
    let mut left: Option<(Vec<usize>, Vec<Vertex>)> = None;
    for i in 0..p.links {
        let mut sizes: Vec<usize> = (0..s).map(|_| m + rng.gen_range(0..=spread)).collect();
        if let Some(x) = singleton {
            sizes[x] = 1;
        }
        let right = (i + 1 < p.links).then(|| {
            let not: Vec<&[usize]> = left.iter().map(|(e, _)| e.as_slice()).collect();
            let disjoint = left.as_ref().map_or(&[][..], |(e, _)| e.as_slice());
            pick_edge(&base, singleton, &not, disjoint)
        });
        let right = match right {
            Some(None) => return Err(Error::BadParams("no eligible shared edge".into())),
            Some(Some(e)) => Some(e),
            None => None,
        };
        let build = |sizes: &[usize], next: &mut Vertex| -> Vec<Vec<Vertex>> {
            (0..s)
                .map(|x| {
                    let inherited = left.as_ref().and_then(|(e, vs)| e.iter().position(|&y| y == x).map(|j| vs[j]));
                    let fresh = sizes[x] - usize::from(inherited.is_some());
                    let part: Vec<Vertex> = inherited.into_iter().chain(*next..*next + fresh).collect();
                    *next += fresh;
                    part
                })
                .collect()
        };
        let mut scratch = next;
        let mut parts = build(&sizes, &mut scratch);
        let mr = Rational::from_integer(m as i64);
        let probe = Blowup::new(base.clone(), parts.clone(), gamma, mr)?;
        if !parity_edge && leftover_is_odd(&probe)? {
            let x = (0..s).rev().find(|&x| Some(x) != singleton).expect("s ≥ 2");
            if sizes[x] < m + spread {
                sizes[x] += 1;
            } else {
                sizes[x] -= 1;
            }
            scratch = next;
            parts = build(&sizes, &mut scratch);
        }
        next = scratch;
        if let Some(e) = right {
            let vs: Vec<Vertex> = e.iter().map(|&x| *parts[x].last().expect("nonempty part")).collect();
            shared_edges.push(vs.clone());
            let l_edge = pick_edge(&base, singleton, &[], &[]).expect("some edge avoids the singleton");
            left = Some((l_edge, vs));
        } else {
            left = None;
        }
        links.push(ChainLink { base: base.clone(), parts });
    }
    let m1 = Rational::from_integer(m as i64);
    let certificate =
        ChainCertificate { links, shared_edges, epsilon, gamma, m1, m2: m1 * (Rational::from_integer(1) + gamma) };
    Ok(HostInstance {
        host: Host::Chain(ChainHost::new(&certificate)),
        certificate: Some(certificate),
        provenance: Provenance { generator: format!("chain k={k} s={s} links={} part_size={m}", p.links), seed: Some(p.seed) },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSolution {
    pub sphere: SimplicialComplex,
    /// Facets prescribed in each link, in allocation order.
    pub link_facets: Vec<(Vec<Vertex>, Vec<Vertex>)>,
    pub link_reports: Vec<AllocationReport>,
}

/// Least host edge of `b`, disjoint from `other`, on a base edge avoiding
/// the singleton and different from φ(other); base edges disjoint from
/// φ(other) are preferred.
fn free_facet(b: &Blowup, other: Option<&[Vertex]>) -> Result<Vec<Vertex>> {
    let other = other.unwrap_or(&[]);
    let po = b.project_set(other);
    let single = b.singleton();
    let host_edge = |e: &Vec<usize>| -> Option<Vec<Vertex>> {
        let f: Option<Vec<Vertex>> = e.iter().map(|&x| b.part(x).iter().copied().find(|v| !other.contains(v))).collect();
        f.map(|mut f| {
            f.sort_unstable();
            f
        })
    };
    let candidates = |strict: bool| -> Option<Vec<Vertex>> {
        b.base()
            .edges()
            .iter()
            .filter(|e| single.is_none_or(|x| !e.contains(&x)) && **e != po)
            .filter(|e| !strict || e.iter().all(|x| !po.contains(x)))
            .filter_map(host_edge)
            .min()
    };
    candidates(true).or_else(|| candidates(false)).ok_or_else(|| Error::PreconditionFailed("no free facet".into()))
}

/// Spanning sphere of the host along a verified chain: one allocation per
/// link with the shared edges as prescribed facets (free ends take the
/// least eligible facet), glued in link order on the shared facets.
/// `jobs` bounds the worker threads; the result does not depend on it.
pub fn spanning_sphere_with(h: &(impl EdgeOracle + Sync), c: &ChainCertificate, jobs: Option<usize>) -> Result<ChainSolution> {
    let report = verify_chain(h, c);
    if !report.passed() {
        return Err(Error::PreconditionFailed(format!("chain does not verify:\n{report}")));
    }
    let l = c.links.len();
    let blowups: Vec<Blowup> = c
        .links
        .iter()
        .zip(&report.m_star)
        .map(|(link, m)| Blowup::new(link.base.clone(), link.parts.clone(), c.gamma, m.expect("property 2 holds")))
        .collect::<Result<_>>()?;
    let mut facets = Vec::with_capacity(l);
    for (i, b) in blowups.iter().enumerate() {
        let f1 = match i {
            0 => None,
            _ => Some(c.shared_edges[i - 1].clone()),
        };
        let f2 = (i + 1 < l).then(|| c.shared_edges[i].clone());
        let pair = match (f1, f2) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => {
                let f = free_facet(b, Some(&a)).map_err(|e| e.in_link(i))?;
                (a, f)
            }
            (None, Some(b2)) => (free_facet(b, Some(&b2)).map_err(|e| e.in_link(i))?, b2),
            (None, None) => {
                let a = free_facet(b, None).map_err(|e| e.in_link(i))?;
                let f = free_facet(b, Some(&a)).map_err(|e| e.in_link(i))?;
                (a, f)
            }
        };
        facets.push(pair);
    }
    let run = |i: usize| -> Result<_> {
        let b = &blowups[i];
        let (f1, f2) = &facets[i];
        let disjoint = b.project_set(f1).iter().all(|x| !b.project_set(f2).contains(x));
        let relaxed = AllocateOptions { verify: false, ..AllocateOptions::relaxed() };
        let strict = AllocateOptions { verify: false, ..AllocateOptions::default() };
        // Small bases leave no room for the singleton's edge away from both facets.
        let out = match disjoint {
            true => match allocate(b, f1, f2, &strict) {
                Err(Error::SingletonUnresolvable) => allocate(b, f1, f2, &relaxed),
                other => other,
            },
            false => allocate(b, f1, f2, &relaxed),
        };
        out.map_err(|e| e.in_link(i))
    };
    let results: Vec<Result<_>> = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::BadParams(e.to_string()))?
            .install(|| (0..l).into_par_iter().map(run).collect()),
        None => (0..l).into_par_iter().map(run).collect(),
    };
    let mut sphere: Option<SimplicialComplex> = None;
    let mut link_reports = Vec::with_capacity(l);
    for (i, r) in results.into_iter().enumerate() {
        let r = r?;
        sphere = Some(match sphere {
            None => r.sphere,
            Some(s) => s.glue(&r.sphere, &c.shared_edges[i - 1]).map_err(|e| e.in_link(i))?,
        });
        link_reports.push(r.report);
    }
    Ok(ChainSolution { sphere: sphere.expect("at least one link"), link_facets: facets, link_reports })
}

pub fn spanning_sphere(h: &(impl EdgeOracle + Sync), c: &ChainCertificate) -> Result<SimplicialComplex> {
    spanning_sphere_with(h, c, None).map(|s| s.sphere)
}

/// All k-sets on T ∪ X ∪ Y (|T| = k-1, |X| ≥ |Y| differing by at most one)
/// except those meeting both X and Y.
pub fn lower_bound_codegree(k: usize, n: usize) -> Result<HostInstance> {
    if k < 2 || n < 2 * k {
        return Err(Error::BadParams(format!("need k ≥ 2 and n ≥ 2k, got k = {k}, n = {n}")));
    }
    let rest = n - (k - 1);
    let x_end = k - 1 + rest.div_ceil(2);
    let side = |v: usize| (v >= k - 1).then_some(v < x_end);
    let edges = (0..n).combinations(k).filter(|e| {
        let sides: HashSet<bool> = e.iter().filter_map(|&v| side(v)).collect();
        sides.len() < 2
    });
    Ok(HostInstance::explicit(Hypergraph::new(k, n, edges)?, &format!("lower-bound codegree k={k} n={n}")))
}

/// The k-sets of X ∪ Y with at least k-1 vertices in X, |Y| = n/k + 1.
pub fn lower_bound_tight_cycle(k: usize, n: usize) -> Result<HostInstance> {
    if k < 2 || n == 0 || n % k != 0 {
        return Err(Error::BadParams(format!("need k ≥ 2 dividing n, got k = {k}, n = {n}")));
    }
    let y = n / k + 1;
    if y > n {
        return Err(Error::BadParams(format!("n = {n} too small")));
    }
    let x = n - y;
    let edges = (0..n).combinations(k).filter(|e| e.iter().filter(|&&v| v < x).count() + 1 >= k);
    Ok(HostInstance::explicit(Hypergraph::new(k, n, edges)?, &format!("lower-bound tight-cycle k={k} n={n}")))
}

/// The 3-graph on X ∪ Y ∪ Z (equal thirds) with all edges of type XXY, YYZ
/// and ZZX and all edges inside each third.
pub fn lower_bound_vertex_degree(n: usize) -> Result<HostInstance> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::BadParams(format!("n = {n} is not a positive multiple of 3")));
    }
    let t = n / 3;
    let edges = (0..n).combinations(3).filter(|e| {
        let mut c = [0usize; 3];
        e.iter().for_each(|&v| c[v / t] += 1);
        matches!(c, [3, 0, 0] | [0, 3, 0] | [0, 0, 3] | [2, 1, 0] | [0, 2, 1] | [1, 0, 2])
    });
    Ok(HostInstance::explicit(Hypergraph::new(3, n, edges)?, &format!("lower-bound vertex-degree n={n}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CertificateLevel;
    use crate::matching::exhaustive_perfect_matching;
    use proptest::prelude::*;

    fn chain(k: usize, s: usize, links: usize, part: usize, seed: u64) -> (ChainHost, ChainCertificate) {
        let inst = generate_chain_host(&ChainParams::new(k, s, links, part, seed)).unwrap();
        let Host::Chain(h) = inst.host else { panic!() };
        (h, inst.certificate.unwrap())
    }

    #[test]
    fn generated_chain_verifies() {
        let (h, c) = chain(3, 6, 3, 40, 7);
        let r = verify_chain(&h, &c);
        assert!(r.passed(), "{r}");
        assert_eq!(c.shared_edges.len(), 2);
    }

    #[test]
    fn single_link_is_degenerate() {
        let (h, c) = chain(3, 6, 1, 40, 0);
        assert!(verify_chain(&h, &c).passed());
        assert!(c.shared_edges.is_empty());
    }

    #[test]
    fn small_parts_rejected() {
        assert!(matches!(generate_chain_host(&ChainParams::new(3, 6, 2, 10, 0)), Err(Error::BadParams(_))));
    }

    #[test]
    fn violations_are_attributed() {
        let (_, mut c) = chain(2, 4, 3, 30, 1);
        let stolen = *c.links[0].parts[3].last().unwrap();
        c.links[2].parts[3].push(stolen);
        c.links[2].parts[3].sort_unstable();
        let h = ChainHost::new(&c);
        let r = verify_chain(&h, &c);
        assert!(!r.property_holds(4));

        let (h, mut c) = chain(3, 6, 2, 40, 1);
        c.shared_edges[0][0] = c.links[0].parts[0][1];
        c.shared_edges[0].sort_unstable();
        assert!(!verify_chain(&h, &c).property_holds(5));
    }

    #[test]
    fn explicit_host_subgraph_check() {
        let (h, c) = chain(2, 4, 2, 12, 3);
        let explicit = h.materialize(1_000_000).unwrap();
        assert!(verify_chain(&explicit, &c).passed());
        let mut edges = explicit.edges().to_vec();
        edges.remove(0);
        let thinner = Hypergraph::new(2, explicit.n(), edges).unwrap();
        let r = verify_chain(&thinner, &c);
        assert!(!r.check("subgraph").unwrap().violations.is_empty());
    }

    #[test]
    fn dirac_sanity_gives_hamilton_cycle() {
        let (h, c) = chain(2, 4, 3, 12, 5);
        let s = spanning_sphere(&h, &c).unwrap();
        assert!(s.is_spanning_copy(&h).unwrap());
        assert_eq!(s.verify_sphere().level, CertificateLevel::FullDim1);
        assert_eq!(s.facet_count(), s.vertex_count());
    }

    #[test]
    fn three_link_k3_sphere() {
        let (h, c) = chain(3, 6, 3, 40, 7);
        let a = spanning_sphere_with(&h, &c, Some(1)).unwrap();
        let b = spanning_sphere_with(&h, &c, Some(4)).unwrap();
        assert_eq!(a, b);
        assert!(a.sphere.is_spanning_copy(&h).unwrap());
        assert_eq!(a.sphere.verify_sphere().level, CertificateLevel::FullDim2);
        for shared in &c.shared_edges {
            assert!(!a.sphere.contains_facet(shared));
        }
    }

    #[test]
    fn singleton_chain() {
        let mut p = ChainParams::new(3, 7, 2, 60, 2);
        p.singletons = true;
        let inst = generate_chain_host(&p).unwrap();
        let c = inst.certificate.as_ref().unwrap();
        let r = verify_chain(&inst.host, c);
        assert!(r.passed(), "{r}");
        let s = spanning_sphere(&inst.host, c).unwrap();
        assert!(s.is_spanning_copy(&inst.host).unwrap());
        assert_eq!(s.verify_sphere().level, CertificateLevel::FullDim2);
    }

    fn brute_codegree(h: &Hypergraph) -> usize {
        (0..h.n())
            .combinations(h.k() - 1)
            .map(|t| (0..h.n()).filter(|v| !t.contains(v)).filter(|&v| {
                let mut e = t.clone();
                e.push(v);
                e.sort_unstable();
                h.contains_edge(&e)
            }).count())
            .filter(|&d| d > 0)
            .min()
            .unwrap_or(0)
    }

    #[test]
    fn codegree_construction() {
        for n in [10, 12, 14] {
            let h = lower_bound_codegree(3, n).unwrap().hypergraph().unwrap().clone();
            assert_eq!(brute_codegree(&h), n / 2 - 1);
            assert!(h.is_tightly_connected());
            assert_eq!(h.without_edges_containing(&[0, 1]).tight_components().components.len(), 2);
        }
        let h = lower_bound_codegree(4, 13).unwrap().hypergraph().unwrap().clone();
        let d = brute_codegree(&h);
        assert!((13 / 2 - 4..=13 / 2).contains(&d), "{d}");
        assert!(lower_bound_codegree(3, 5).is_err());
    }

    #[test]
    fn tight_cycle_construction() {
        let h = lower_bound_tight_cycle(3, 9).unwrap().hypergraph().unwrap().clone();
        assert_eq!(brute_codegree(&h), 4);
        assert_eq!(exhaustive_perfect_matching(&h), None);
        let g = lower_bound_tight_cycle(2, 8).unwrap().hypergraph().unwrap().clone();
        assert_eq!(exhaustive_perfect_matching(&g), None);
        assert!(lower_bound_tight_cycle(3, 10).is_err());
    }

    #[test]
    fn vertex_degree_construction() {
        let h = lower_bound_vertex_degree(9).unwrap().hypergraph().unwrap().clone();
        let comps = h.tight_components();
        assert!(comps.components.len() >= 2);
        for c in &comps.components {
            let vs: HashSet<Vertex> = c.iter().flat_map(|&i| h.edge(i).iter().copied()).collect();
            assert!(vs.len() < 9);
        }
        let h = lower_bound_vertex_degree(12).unwrap().hypergraph().unwrap().clone();
        let min = (0..12).map(|v| h.vertex_degree(v)).min().unwrap() as f64;
        assert!(min / 55.0 >= 4.0 / 9.0 - 0.1);
        assert_eq!(lower_bound_vertex_degree(6).unwrap().hypergraph().unwrap().n(), 6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn generated_chains_verify(k in 2usize..=4, ds in 0usize..=2, links in 1usize..=4, seed in any::<u64>()) {
            let s = k + 2 + ds;
            prop_assume!(2 * (s - k + 1) >= s);
            let part = minimum_part_size(&Hypergraph::complete(k, s).unwrap(), None).unwrap();
            let inst = generate_chain_host(&ChainParams::new(k, s, links, part, seed)).unwrap();
            let r = verify_chain(&inst.host, inst.certificate.as_ref().unwrap());
            prop_assert!(r.passed(), "{}", r);
        }
    }
}
