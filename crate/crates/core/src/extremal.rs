//! Toy-scale density tools: property graphs, complete partite sub-blow-ups
//! of s-graphs, and the pigeonhole step that extracts a consistent blow-up
//! of a single family member.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::{Rational, Vertex};

/// Default cap on enumerated subsets or search nodes.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

type Evaluator = Arc<dyn Fn(&Hypergraph) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct PropertyPredicate {
    pub name: String,
    pub epsilon: Rational,
    pub k: usize,
    evaluator: Evaluator,
}

impl fmt::Debug for PropertyPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PropertyPredicate").field("name", &self.name).field("epsilon", &self.epsilon).field("k", &self.k).finish()
    }
}

/// No isolated vertices and 2·δ* ≥ (1+2ε)·order, in exact arithmetic.
pub fn dirac_property(h: &Hypergraph, epsilon: Rational) -> bool {
    let two = Rational::from_integer(2);
    !h.has_isolated_vertices()
        && two * Rational::from_integer(h.min_supported_codegree() as i64)
            >= (Rational::from_integer(1) + two * epsilon) * Rational::from_integer(h.n() as i64)
}

impl PropertyPredicate {
    /// The family P(ε, k) of k-graphs with [`dirac_property`].
    pub fn dirac(epsilon: Rational, k: usize) -> Self {
        PropertyPredicate {
            name: format!("P({epsilon},{k})"),
            epsilon,
            k,
            evaluator: Arc::new(move |h| dirac_property(h, epsilon)),
        }
    }

    pub fn custom(name: &str, k: usize, f: impl Fn(&Hypergraph) -> bool + Send + Sync + 'static) -> Self {
        PropertyPredicate { name: name.into(), epsilon: Rational::from_integer(0), k, evaluator: Arc::new(f) }
    }

    pub fn holds(&self, h: &Hypergraph) -> bool {
        (self.evaluator)(h)
    }
}

/// The s-graph on V(H) whose edges are the s-sets S with H[S] in P.
pub fn property_graph(h: &Hypergraph, p: &PropertyPredicate, s: usize, budget: u64) -> Result<Hypergraph> {
    let n = h.n();
    if s < h.k() || s > n {
        return Err(Error::BadParams(format!("need k ≤ s ≤ n, got k = {}, s = {s}, n = {n}", h.k())));
    }
    if binomial(n as u64, s as u64) > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    let sets: Vec<Vec<Vertex>> = (0..n).combinations(s).collect();
    let edges: Vec<Vec<Vertex>> = sets.into_par_iter().filter(|set| p.holds(&h.induced(set))).collect();
    Hypergraph::new(s, n, edges)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateEstimate {
    pub successes: u64,
    pub trials: u64,
    pub rate: Rational,
    /// Wilson 95% interval.
    pub ci: (f64, f64),
}

impl fmt::Display for RateEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} (95% CI {:.4}..{:.4})", self.successes, self.trials, self.ci.0, self.ci.1)
    }
}

fn wilson(successes: u64, trials: u64) -> (f64, f64) {
    let (x, n, z) = (successes as f64, trials as f64, 1.96f64);
    let p = x / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Fraction of uniform s-subsets (each containing `fixed`, if given) that
/// induce a member of P(ε/2, k).
pub fn sample_property_rate(
    h: &Hypergraph,
    epsilon: Rational,
    s: usize,
    trials: u64,
    seed: u64,
    fixed: Option<&[Vertex]>,
) -> Result<RateEstimate> {
    let fixed = fixed.unwrap_or(&[]);
    if trials == 0 {
        return Err(Error::BadParams("at least one trial is needed".into()));
    }
    if s > h.n() || fixed.len() > s || fixed.iter().any(|&v| v >= h.n()) {
        return Err(Error::BadParams(format!("cannot sample {s}-sets containing {fixed:?} from {} vertices", h.n())));
    }
    let rest: Vec<Vertex> = (0..h.n()).filter(|v| !fixed.contains(v)).collect();
    let half = epsilon / Rational::from_integer(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut successes = 0;
    for _ in 0..trials {
        let mut set: Vec<Vertex> = sample(&mut rng, rest.len(), s - fixed.len()).into_iter().map(|i| rest[i]).collect();
        set.extend_from_slice(fixed);
        set.sort_unstable();
        if dirac_property(&h.induced(&set), half) {
            successes += 1;
        }
    }
    Ok(RateEstimate {
        successes,
        trials,
        rate: Rational::new(successes as i64, trials as i64),
        ci: wilson(successes, trials),
    })
}

/// All subsets of all edges, for pruning partial transversals.
fn shadow(p: &Hypergraph) -> HashSet<Vec<Vertex>> {
    let mut out = HashSet::new();
    for e in p.edges() {
        for mask in 1u32..(1 << e.len()) {
            out.insert(e.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect());
        }
    }
    out
}

/// s pairwise disjoint b-sets of an s-graph all of whose transversals are
/// edges: the lexicographically least such list, with parts ordered by
/// their least vertex. Exhaustive search with shadow pruning.
pub fn find_partite_blowup(p: &Hypergraph, b: usize, budget: u64) -> Result<Option<Vec<Vec<Vertex>>>> {
    if b == 0 {
        return Err(Error::BadParams("part size must be positive".into()));
    }
    let shadow = shadow(p);
    let mut search = BlowupSearch { p, b, shadow: &shadow, nodes: 0, budget };
    let mut parts = Vec::new();
    let found = search.extend(&mut parts, &HashSet::new())?;
    Ok(found.then_some(parts))
}

struct BlowupSearch<'a> {
    p: &'a Hypergraph,
    b: usize,
    shadow: &'a HashSet<Vec<Vertex>>,
    nodes: u64,
    budget: u64,
}

impl BlowupSearch<'_> {
    /// Every transversal of `parts` plus `extra` lies in an edge.
    fn extendable(&self, parts: &[Vec<Vertex>], extra: &[Vertex]) -> bool {
        parts
            .iter()
            .map(|q| q.iter().copied())
            .multi_cartesian_product()
            .chain(parts.is_empty().then(Vec::new))
            .all(|t| {
                extra.iter().all(|&v| {
                    let mut t = t.clone();
                    t.push(v);
                    t.sort_unstable();
                    self.shadow.contains(&t)
                })
            })
    }

    fn extend(&mut self, parts: &mut Vec<Vec<Vertex>>, used: &HashSet<Vertex>) -> Result<bool> {
        if parts.len() == self.p.k() {
            return Ok(true);
        }
        let floor = parts.last().map_or(0, |q| q[0] + 1);
        let candidates: Vec<Vertex> =
            (0..self.p.n()).filter(|v| !used.contains(v) && self.extendable(parts, &[*v])).collect();
        for set in candidates.iter().copied().combinations(self.b) {
            if set[0] < floor {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            // Members of one part never share an edge, so only transversal checks remain.
            if !self.extendable(parts, &set) {
                continue;
            }
            let mut used = used.clone();
            used.extend(set.iter().copied());
            parts.push(set);
            if self.extend(parts, &used)? {
                return Ok(true);
            }
            parts.pop();
        }
        Ok(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PigeonholeResult {
    /// Index of the family member induced by every transversal.
    pub member: usize,
    /// The common induced graph, labelled by part index.
    pub labelled: Vec<Vec<usize>>,
    /// `blowup[i]` is a b-subset of host part i.
    pub blowup: Vec<Vec<Vertex>>,
    /// Number of transversals of each colour, keyed by (member, labelled graph).
    pub colour_count: usize,
}

fn isomorphic(a: &[Vec<usize>], b: &Hypergraph) -> bool {
    if a.len() != b.edge_count() {
        return false;
    }
    (0..b.n()).permutations(b.n()).any(|perm| {
        a.iter().all(|e| {
            let mut m: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
            m.sort_unstable();
            b.contains_edge(&m)
        })
    })
}

/// Colours every transversal of `parts` by the family member it induces
/// together with its labelling, takes the most frequent colour (ties go to
/// the least colour), and searches that colour class for a K(b, ..., b).
pub fn pigeonhole_blowup(
    host: &Hypergraph,
    parts: &[Vec<Vertex>],
    family: &[Hypergraph],
    b: usize,
    budget: u64,
) -> Result<Option<PigeonholeResult>> {
    let s = parts.len();
    if let Some(m) = family.iter().find(|m| m.n() != s || m.k() != host.k()) {
        return Err(Error::BadParams(format!("family member on {} vertices is not a {}-graph on {s} vertices", m.n(), host.k())));
    }
    let mut part_of = vec![usize::MAX; host.n()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            if v >= host.n() || part_of[v] != usize::MAX {
                return Err(Error::BadParams(format!("vertex {v} is out of range or in two parts")));
            }
            part_of[v] = i;
        }
    }
    let total: u128 = parts.iter().map(|p| p.len() as u128).product();
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut classes: BTreeMap<(usize, Vec<Vec<usize>>), Vec<Vec<Vertex>>> = BTreeMap::new();
    for t in parts.iter().map(|p| p.iter().copied()).multi_cartesian_product() {
        let labelled = host.induced(&t).edges().to_vec();
        let member = family
            .iter()
            .position(|m| isomorphic(&labelled, m))
            .ok_or_else(|| Error::HypothesisFailed(format!("transversal {t:?} induces no family member")))?;
        let mut sorted = t;
        sorted.sort_unstable();
        classes.entry((member, labelled)).or_default().push(sorted);
    }
    let Some(best) = classes.values().map(Vec::len).max() else { return Ok(None) };
    let ((member, labelled), edges) = classes.into_iter().find(|(_, v)| v.len() == best).expect("a class has the maximum");
    let coloured = Hypergraph::new(s, host.n(), &edges)?;
    let Some(found) = find_partite_blowup(&coloured, b, budget)? else { return Ok(None) };
    let mut blowup = vec![Vec::new(); s];
    for q in found {
        let i = part_of[q[0]];
        blowup[i] = q;
    }
    Ok(Some(PigeonholeResult { member, labelled, blowup, colour_count: best }))
}
