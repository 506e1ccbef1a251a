use std::collections::{HashMap, HashSet, VecDeque};

use super::{EdgeOracle, Hypergraph};
use crate::blowup::Blowup;
use crate::error::{Error, Result};
use crate::Vertex;

/// A vertex sequence read through a window of width k.
///
/// Validity is not enforced on construction; see [`TightWalk::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightWalk {
    pub k: usize,
    pub vertices: Vec<Vertex>,
}

impl TightWalk {
    pub fn new(k: usize, vertices: Vec<Vertex>) -> Self {
        TightWalk { k, vertices }
    }

    /// Number of vertices, counted with multiplicity.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Windows of k consecutive vertices, in walk order.
    pub fn windows(&self) -> impl Iterator<Item = &[Vertex]> {
        self.vertices.windows(self.k)
    }

    /// Sorted vertex set of window `i`.
    pub fn window_set(&self, i: usize) -> Vec<Vertex> {
        let mut w = self.vertices[i..i + self.k].to_vec();
        w.sort_unstable();
        w
    }

    /// Checks length, distinctness inside each window and that every window
    /// is an edge of `host`.
    pub fn validate(&self, host: &impl EdgeOracle) -> Result<(), String> {
        if self.vertices.len() < self.k {
            return Err(format!("order {} below uniformity {}", self.vertices.len(), self.k));
        }
        for i in 0..=self.vertices.len() - self.k {
            let w = self.window_set(i);
            if w.windows(2).any(|p| p[0] == p[1]) {
                return Err(format!("window {i} repeats a vertex"));
            }
            if !host.has_edge(&w) {
                return Err(format!("window {i} = {w:?} is not an edge"));
            }
        }
        Ok(())
    }

    pub fn is_path(&self) -> bool {
        let mut seen = HashSet::new();
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    /// True when every edge of `h` occurs as some window.
    pub fn covers(&self, h: &Hypergraph) -> bool {
        if self.vertices.len() < self.k {
            return h.is_empty();
        }
        let seen: HashSet<Vec<Vertex>> = (0..=self.vertices.len() - self.k).map(|i| self.window_set(i)).collect();
        h.edges().iter().all(|e| seen.contains(e))
    }
}

/// A tight walk in `h` whose windows include every edge.
///
/// Starts at the least edge and walks the line graph breadth-first by edge
/// index. Each newly discovered edge `f` adjacent to a covered edge
/// `e = (x1..xk)` is visited by splicing `x1..xk, x1..y..xk, x1..xk` (with
/// `y` replacing the vertex of `e` outside `f`) over an occurrence of `e`.
/// The result is then pruned: inside each stretch between first visits, a
/// repeated ordered k-tuple lets the walk skip the loop between the repeats.
pub fn covering_tight_walk(h: &Hypergraph) -> Result<TightWalk> {
    if !h.is_tightly_connected() {
        return Err(Error::NotTightlyConnected);
    }
    let k = h.k();
    let adj = h.line_adjacency();
    let mut walk: Vec<Vertex> = h.edge(0).to_vec();
    let mut discovered = vec![false; h.edge_count()];
    discovered[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(ei) = queue.pop_front() {
        for &fi in &adj[ei] {
            if discovered[fi] {
                continue;
            }
            discovered[fi] = true;
            queue.push_back(fi);
            splice(&mut walk, k, h.edge(ei), h.edge(fi));
        }
    }
    prune_segments(&mut walk, k);
    let w = TightWalk::new(k, walk);
    debug_assert!(w.covers(h));
    Ok(w)
}

/// A shorter covering walk for embedding purposes.
///
/// Greedy: from the current ordered (k-1)-suffix, append the least vertex
/// that closes an uncovered edge; when none does, follow a shortest route
/// through ordered (k-1)-tuples to a suffix that has one. Falls back to
/// [`covering_tight_walk`] if the route search gets stuck.
pub fn greedy_covering_walk(h: &Hypergraph) -> Result<TightWalk> {
    if !h.is_tightly_connected() {
        return Err(Error::NotTightlyConnected);
    }
    match greedy_walk(h) {
        Some(w) => Ok(TightWalk::new(h.k(), w)),
        None => covering_tight_walk(h),
    }
}

fn greedy_walk(h: &Hypergraph) -> Option<Vec<Vertex>> {
    let k = h.k();
    let mut covered = vec![false; h.edge_count()];
    let mut left = h.edge_count() - 1;
    covered[0] = true;
    let mut walk: Vec<Vertex> = h.edge(0).to_vec();
    let closing = |suffix: &[Vertex], y: Vertex| -> Option<usize> {
        if suffix.contains(&y) {
            return None;
        }
        let mut e = suffix.to_vec();
        e.push(y);
        e.sort_unstable();
        h.edge_index(&e)
    };
    let uncovered_step = |suffix: &[Vertex], covered: &[bool]| -> Option<Vertex> {
        (0..h.n()).find(|&y| closing(suffix, y).is_some_and(|i| !covered[i]))
    };
    while left > 0 {
        let suffix = walk[walk.len() - (k - 1)..].to_vec();
        if let Some(y) = uncovered_step(&suffix, &covered) {
            walk.push(y);
        } else {
            // Breadth-first over ordered suffixes to the nearest useful one.
            let mut parent: HashMap<Vec<Vertex>, (Vec<Vertex>, Vertex)> = HashMap::new();
            let mut queue = VecDeque::from([suffix.clone()]);
            parent.insert(suffix.clone(), (Vec::new(), 0));
            let mut target = None;
            while let Some(state) = queue.pop_front() {
                if uncovered_step(&state, &covered).is_some() {
                    target = Some(state);
                    break;
                }
                for y in 0..h.n() {
                    if closing(&state, y).is_some() {
                        let mut next = state[1..].to_vec();
                        next.push(y);
                        if !parent.contains_key(&next) {
                            parent.insert(next.clone(), (state.clone(), y));
                            queue.push_back(next);
                        }
                    }
                }
            }
            let mut state = target?;
            let mut route = Vec::new();
            while state != suffix {
                let (prev, y) = parent[&state].clone();
                route.push(y);
                state = prev;
            }
            route.reverse();
            walk.extend(route);
            continue;
        }
        let i = closing(&walk[walk.len() - k..walk.len() - 1], walk[walk.len() - 1]).expect("step closes an edge");
        covered[i] = true;
        left -= 1;
    }
    Some(walk)
}

fn splice(walk: &mut Vec<Vertex>, k: usize, e: &[Vertex], f: &[Vertex]) {
    let pos = (0..=walk.len() - k)
        .find(|&i| {
            let mut w = walk[i..i + k].to_vec();
            w.sort_unstable();
            w == e
        })
        .expect("parent edge already lies on the walk");
    let x = walk[pos..pos + k].to_vec();
    let j = x.iter().position(|v| f.binary_search(v).is_err()).expect("adjacent edges differ");
    let y = *f.iter().find(|v| e.binary_search(v).is_err()).expect("adjacent edges differ");
    let mut detour = x.clone();
    detour[j] = y;
    detour.extend_from_slice(&x);
    let tail = walk.split_off(pos + k);
    walk.extend(detour);
    walk.extend(tail);
}

/// Start positions of the first visit of each edge, ascending.
fn first_visits(walk: &[Vertex], k: usize) -> Vec<usize> {
    let mut seen = HashSet::new();
    let mut starts = Vec::new();
    for i in 0..=walk.len() - k {
        let mut w = walk[i..i + k].to_vec();
        w.sort_unstable();
        if seen.insert(w) {
            starts.push(i);
        }
    }
    starts
}

fn prune_segments(walk: &mut Vec<Vertex>, k: usize) {
    while let Some((a, b)) = first_segment_repeat(walk, k) {
        walk.drain(a..b);
    }
}

/// Leftmost pair of occurrences of one ordered k-tuple within a segment.
fn first_segment_repeat(walk: &[Vertex], k: usize) -> Option<(usize, usize)> {
    let starts = first_visits(walk, k);
    let last = walk.len() - k;
    for (s, &begin) in starts.iter().enumerate() {
        let end = starts.get(s + 1).copied().unwrap_or(last + 1);
        let mut firsts: HashMap<&[Vertex], usize> = HashMap::new();
        for i in begin..end {
            if let Some(&a) = firsts.get(&walk[i..i + k]) {
                return Some((a, i));
            }
            firsts.insert(&walk[i..i + k], i);
        }
    }
    None
}

/// Lifts a walk in the base of `blowup` to a tight path in the blow-up,
/// picking the least unused vertex of each part.
pub fn lift_walk_to_path(walk: &TightWalk, blowup: &Blowup) -> Result<TightWalk> {
    lift_avoiding(walk, blowup, &HashSet::new())
}

pub(crate) fn lift_avoiding(walk: &TightWalk, blowup: &Blowup, avoid: &HashSet<Vertex>) -> Result<TightWalk> {
    let mut cursor = vec![0usize; blowup.base().n()];
    let mut path = Vec::with_capacity(walk.order());
    for &w in &walk.vertices {
        let part = blowup.part(w);
        while cursor[w] < part.len() && avoid.contains(&part[cursor[w]]) {
            cursor[w] += 1;
        }
        let Some(&u) = part.get(cursor[w]) else {
            let needed = walk.vertices.iter().filter(|&&x| x == w).count();
            let available = part.iter().filter(|v| !avoid.contains(v)).count();
            return Err(Error::PartTooSmall { base_vertex: w, needed, available });
        };
        cursor[w] += 1;
        path.push(u);
    }
    Ok(TightWalk::new(walk.k, path))
}
