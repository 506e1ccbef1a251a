//! Exact matchings: left-saturating bipartite matchings with a Hall
//! violator on failure, and maximum matchings in general graphs.

use std::collections::VecDeque;

use crate::hypergraph::Hypergraph;

const NONE: usize = usize::MAX;

/// Bipartite graph with left vertices `0..left` and right vertices
/// `0..right`; `adjacency[l]` lists the right neighbours of `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteInstance {
    pub left: usize,
    pub right: usize,
    pub adjacency: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingKind {
    Saturating,
    PerfectMatching,
    HallViolator,
    NoPerfectMatching,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub kind: MatchingKind,
    /// For bipartite instances `(left, right)`, otherwise `(u, v)` with `u < v`.
    pub pairs: Vec<(usize, usize)>,
    /// Left vertices with fewer neighbours than members.
    pub violator: Option<Vec<usize>>,
}

impl BipartiteInstance {
    /// Union of the neighbourhoods of `set`, sorted.
    pub fn neighbourhood(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().flat_map(|&l| self.adjacency[l].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Augmenting-path matching saturating the left side, or a Hall violator:
/// the left vertices reachable by alternating paths from an unmatched one.
/// Left vertices and neighbours are scanned in increasing order.
pub fn hall_matching(b: &BipartiteInstance) -> MatchingResult {
    let adj: Vec<Vec<usize>> = b
        .adjacency
        .iter()
        .map(|a| {
            let mut a = a.clone();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    let mut match_r = vec![NONE; b.right];
    let mut match_l = vec![NONE; b.left];
    let mut unmatched = None;
    for l in 0..b.left {
        let mut seen = vec![false; b.right];
        if augment(l, &adj, &mut seen, &mut match_l, &mut match_r) {
            continue;
        }
        unmatched.get_or_insert(l);
    }
    if let Some(root) = unmatched {
        // Alternating tree from root: its left side has one more vertex than
        // its right side, and it contains every neighbour of its left side.
        let mut in_tree = vec![false; b.left];
        let mut seen_r = vec![false; b.right];
        in_tree[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                if !seen_r[r] {
                    seen_r[r] = true;
                    let next = match_r[r];
                    if next != NONE && !in_tree[next] {
                        in_tree[next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        let violator: Vec<usize> = (0..b.left).filter(|&l| in_tree[l]).collect();
        return MatchingResult { kind: MatchingKind::HallViolator, pairs: pairs_of(&match_l), violator: Some(violator) };
    }
    MatchingResult { kind: MatchingKind::Saturating, pairs: pairs_of(&match_l), violator: None }
}

fn pairs_of(match_l: &[usize]) -> Vec<(usize, usize)> {
    match_l.iter().enumerate().filter(|(_, &r)| r != NONE).map(|(l, &r)| (l, r)).collect()
}

fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], match_l: &mut [usize], match_r: &mut [usize]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if match_r[r] == NONE || augment(match_r[r], adj, seen, match_l, match_r) {
            match_r[r] = l;
            match_l[l] = r;
            return true;
        }
    }
    false
}

/// Perfect matching of a 2-graph if one exists.
pub fn perfect_matching(g: &Hypergraph) -> MatchingResult {
    let pairs = maximum_matching(g);
    let kind =
        if 2 * pairs.len() == g.n() { MatchingKind::PerfectMatching } else { MatchingKind::NoPerfectMatching };
    MatchingResult { kind, pairs, violator: None }
}

/// Maximum matching of a 2-graph by Edmonds' blossom algorithm, O(n³),
/// started from a greedy matching in vertex order. Pairs come sorted.
pub fn maximum_matching(g: &Hypergraph) -> Vec<(usize, usize)> {
    assert_eq!(g.k(), 2, "matching needs a 2-graph");
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        adj[e[0]].push(e[1]);
        adj[e[1]].push(e[0]);
    }
    matching_from_adjacency(adj)
}

/// [`maximum_matching`] on a symmetric adjacency list.
pub(crate) fn matching_from_adjacency(mut adj: Vec<Vec<usize>>) -> Vec<(usize, usize)> {
    let n = adj.len();
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut b = Blossom { adj, mate: vec![NONE; n], parent: vec![NONE; n], base: (0..n).collect(), used: vec![false; n] };
    for v in 0..n {
        if b.mate[v] == NONE {
            if let Some(&w) = b.adj[v].iter().find(|&&w| b.mate[w] == NONE) {
                b.mate[v] = w;
                b.mate[w] = v;
            }
        }
    }
    for v in 0..n {
        if b.mate[v] == NONE {
            if let Some(end) = b.find_path(v) {
                b.augment(end);
            }
        }
    }
    (0..n).filter(|&v| b.mate[v] != NONE && v < b.mate[v]).map(|v| (v, b.mate[v])).collect()
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
}

impl Blossom {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, blossom: &mut [bool]) {
        while self.base[v] != b {
            blossom[self.base[v]] = true;
            blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    let mut blossom = vec![false; n];
                    self.mark_path(v, cur, to, &mut blossom);
                    self.mark_path(to, cur, v, &mut blossom);
                    for i in 0..n {
                        if blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Perfect matching of a k-graph by exhaustive search: the least
/// uncovered vertex is matched by each of its edges in turn. Exponential;
/// meant for small instances. Returns edge indices.
pub fn exhaustive_perfect_matching(h: &Hypergraph) -> Option<Vec<usize>> {
    fn go(h: &Hypergraph, covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        let Some(v) = covered.iter().position(|c| !c) else { return true };
        for &i in h.incident(v) {
            let e = h.edge(i);
            if e.iter().any(|&w| covered[w]) {
                continue;
            }
            e.iter().for_each(|&w| covered[w] = true);
            chosen.push(i);
            if go(h, covered, chosen) {
                return true;
            }
            chosen.pop();
            e.iter().for_each(|&w| covered[w] = false);
        }
        false
    }
    if h.n() % h.k() != 0 {
        return None;
    }
    let mut covered = vec![false; h.n()];
    let mut chosen = Vec::new();
    go(h, &mut covered, &mut chosen).then_some(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Hypergraph {
        Hypergraph::new(2, n, edges.iter().map(|&(a, b)| [a, b])).unwrap()
    }

    fn cycle(n: usize) -> Hypergraph {
        graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn brute_max(g: &Hypergraph) -> usize {
        fn go(edges: &[Vec<usize>], used: &mut Vec<bool>, from: usize) -> usize {
            let mut best = 0;
            for i in from..edges.len() {
                let (a, b) = (edges[i][0], edges[i][1]);
                if !used[a] && !used[b] {
                    used[a] = true;
                    used[b] = true;
                    best = best.max(1 + go(edges, used, i + 1));
                    used[a] = false;
                    used[b] = false;
                }
            }
            best
        }
        go(g.edges(), &mut vec![false; g.n()], 0)
    }

    fn check_pairs(g: &Hypergraph, pairs: &[(usize, usize)]) {
        let mut seen = vec![false; g.n()];
        for &(a, b) in pairs {
            assert!(g.contains_edge(&[a, b]));
            assert!(!std::mem::replace(&mut seen[a], true));
            assert!(!std::mem::replace(&mut seen[b], true));
        }
    }

    #[test]
    fn hall_examples() {
        let one = BipartiteInstance { left: 1, right: 2, adjacency: vec![vec![0, 1]] };
        let r = hall_matching(&one);
        assert_eq!((r.kind, r.pairs.len()), (MatchingKind::Saturating, 1));
        let tight = BipartiteInstance { left: 2, right: 1, adjacency: vec![vec![0], vec![0]] };
        let r = hall_matching(&tight);
        assert_eq!(r.kind, MatchingKind::HallViolator);
        assert_eq!(r.violator, Some(vec![0, 1]));
    }

    #[test]
    fn hall_on_pairs_of_k5() {
        let h = Hypergraph::complete(3, 5).unwrap();
        let pairs: Vec<Vec<usize>> = (0..5).combinations(2).collect();
        let adjacency: Vec<Vec<usize>> = pairs
            .iter()
            .map(|p| (0..h.edge_count()).filter(|&i| p.iter().all(|v| h.edge(i).contains(v))).collect())
            .collect();
        assert!(adjacency.iter().all(|a| a.len() == 3));
        let b = BipartiteInstance { left: 10, right: 10, adjacency };
        let r = hall_matching(&b);
        assert_eq!(r.kind, MatchingKind::Saturating);
        assert_eq!(r.pairs.len(), 10);
        // Independent check: some permutation of the edges is a perfect matching.
        let exists = (0..10).permutations(10).any(|perm| (0..10).all(|l| b.adjacency[l].contains(&perm[l])));
        assert!(exists);
    }

    #[test]
    fn general_examples() {
        let r = perfect_matching(&cycle(4));
        assert_eq!((r.kind, r.pairs.len()), (MatchingKind::PerfectMatching, 2));
        assert_eq!(perfect_matching(&cycle(5)).kind, MatchingKind::NoPerfectMatching);
        let petersen = graph(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        );
        let r = perfect_matching(&petersen);
        assert_eq!(r.kind, MatchingKind::PerfectMatching);
        check_pairs(&petersen, &r.pairs);
        assert_eq!(brute_max(&petersen), 5);
    }

    #[test]
    fn blossom_needed() {
        // Triangle with a pendant path: greedy picks (0,1) and must re-route.
        let g = graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (0, 5)]);
        let r = perfect_matching(&g);
        assert_eq!(r.kind, MatchingKind::PerfectMatching);
        check_pairs(&g, &r.pairs);
    }

    fn random_bipartite() -> impl Strategy<Value = BipartiteInstance> {
        (1usize..7, 1usize..7).prop_flat_map(|(l, r)| {
            prop::collection::vec(prop::collection::vec(0..r, 0..r + 1), l)
                .prop_map(move |adjacency| BipartiteInstance { left: l, right: r, adjacency })
        })
    }

    proptest! {
        #[test]
        fn hall_result_is_exclusive(b in random_bipartite()) {
            let r = hall_matching(&b);
            let mut used = std::collections::HashSet::new();
            for &(l, x) in &r.pairs {
                prop_assert!(b.adjacency[l].contains(&x));
                prop_assert!(used.insert(x));
            }
            match r.kind {
                MatchingKind::Saturating => {
                    prop_assert_eq!(r.pairs.len(), b.left);
                    prop_assert!(r.violator.is_none());
                }
                MatchingKind::HallViolator => {
                    let v = r.violator.unwrap();
                    prop_assert!(b.neighbourhood(&v).len() < v.len());
                }
                _ => prop_assert!(false),
            }
        }

        #[test]
        fn matching_size_matches_brute_force(n in 2usize..=12, p in 0.1f64..0.9, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges: Vec<[usize; 2]> = (0..n).tuple_combinations().filter(|_| rng.gen_bool(p)).map(|(a, b)| [a, b]).collect();
            let g = Hypergraph::new(2, n, edges).unwrap();
            let m = maximum_matching(&g);
            check_pairs(&g, &m);
            prop_assert_eq!(m.len(), brute_max(&g));
        }

        #[test]
        fn dirac_graphs_have_perfect_matchings(half in 1usize..=20, seed in any::<u64>()) {
            let n = 2 * half;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // Random graph, then top up every vertex to degree n/2.
            let mut adj = vec![vec![false; n]; n];
            for (a, b) in (0..n).tuple_combinations() {
                if rng.gen_bool(0.3) {
                    adj[a][b] = true;
                    adj[b][a] = true;
                }
            }
            for v in 0..n {
                let mut others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
                while adj[v].iter().filter(|&&x| x).count() < half {
                    let w = others.remove(rng.gen_range(0..others.len()));
                    adj[v][w] = true;
                    adj[w][v] = true;
                }
            }
            let edges: Vec<[usize; 2]> = (0..n).tuple_combinations().filter(|&(a, b)| adj[a][b]).map(|(a, b)| [a, b]).collect();
            let g = Hypergraph::new(2, n, edges).unwrap();
            prop_assert_eq!(perfect_matching(&g).kind, MatchingKind::PerfectMatching);
        }
    }
}
