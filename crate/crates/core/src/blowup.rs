//! Blow-ups of a base k-graph: every base vertex becomes a part, every base
//! edge the complete k-partite k-graph on its parts.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeOracle, Hypergraph};
use crate::{Rational, Vertex};

#[derive(Debug, Clone, PartialEq)]
pub struct Blowup {
    base: Hypergraph,
    parts: Vec<Vec<Vertex>>,
    projection: HashMap<Vertex, usize>,
    gamma: Rational,
    m: Rational,
}

impl Blowup {
    /// `parts[x]` holds the host vertices of base vertex `x`. `gamma` and `m`
    /// are the declared regularity parameters; they are metadata only.
    pub fn new(base: Hypergraph, parts: Vec<Vec<Vertex>>, gamma: Rational, m: Rational) -> Result<Self> {
        if parts.len() != base.n() {
            return Err(Error::BadParams(format!("{} parts for {} base vertices", parts.len(), base.n())));
        }
        let mut projection = HashMap::new();
        let mut sorted = Vec::with_capacity(parts.len());
        for (x, part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                return Err(Error::BadParams(format!("part of base vertex {x} is empty")));
            }
            for &v in &part {
                if projection.insert(v, x).is_some() {
                    return Err(Error::BadParams(format!("host vertex {v} lies in two parts")));
                }
            }
            let mut part = part;
            part.sort_unstable();
            sorted.push(part);
        }
        Ok(Blowup { base, parts: sorted, projection, gamma, m })
    }

    /// Parts of equal size `size`, numbered consecutively from 0.
    pub fn regular(base: Hypergraph, size: usize) -> Result<Self> {
        let sizes = vec![size; base.n()];
        Self::with_sizes(base, &sizes)
    }

    /// Parts numbered consecutively from 0 with the given sizes; declares
    /// `m` as the largest size and `gamma = 0`.
    pub fn with_sizes(base: Hypergraph, sizes: &[usize]) -> Result<Self> {
        let mut next = 0;
        let parts = sizes
            .iter()
            .map(|&s| {
                let part: Vec<Vertex> = (next..next + s).collect();
                next += s;
                part
            })
            .collect();
        let m = sizes.iter().copied().max().unwrap_or(0) as i64;
        Self::new(base, parts, Rational::from_integer(0), Rational::from_integer(m))
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.base.k()
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn part(&self, x: usize) -> &[Vertex] {
        &self.parts[x]
    }

    pub fn gamma(&self) -> Rational {
        self.gamma
    }

    pub fn m(&self) -> Rational {
        self.m
    }

    pub fn try_project(&self, v: Vertex) -> Option<usize> {
        self.projection.get(&v).copied()
    }

    /// Base vertex of `v`. Panics if `v` is not a host vertex.
    pub fn project(&self, v: Vertex) -> usize {
        self.projection[&v]
    }

    /// Sorted projection of a vertex set.
    pub fn project_set(&self, set: &[Vertex]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&v| self.project(v)).collect();
        out.sort_unstable();
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.projection.len()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut all: Vec<Vertex> = self.projection.keys().copied().collect();
        all.sort_unstable();
        all
    }

    fn interval_contains(&self, size: usize) -> bool {
        let size = Rational::from_integer(size as i64);
        let one = Rational::from_integer(1);
        (one - self.gamma) * self.m <= size && size <= (one + self.gamma) * self.m
    }

    /// The base vertex whose part is a single vertex outside the declared
    /// regularity interval, if there is exactly one such part.
    pub fn singleton(&self) -> Option<usize> {
        let singles: Vec<usize> =
            (0..self.parts.len()).filter(|&x| self.parts[x].len() == 1 && !self.interval_contains(1)).collect();
        match singles.as_slice() {
            [x] => Some(*x),
            _ => None,
        }
    }

    /// All parts within `[(1-γ)m, (1+γ)m]` except at most one part of size 1.
    pub fn is_nearly_regular(&self) -> bool {
        let outside: Vec<usize> = self.parts.iter().map(Vec::len).filter(|&s| !self.interval_contains(s)).collect();
        outside.is_empty() || (outside.len() == 1 && outside[0] == 1)
    }

    /// Same base, with `removed` host vertices taken out of their parts.
    pub fn without_vertices(&self, removed: &HashSet<Vertex>) -> Result<Blowup> {
        let parts = self.parts.iter().map(|p| p.iter().copied().filter(|v| !removed.contains(v)).collect()).collect();
        Blowup::new(self.base.clone(), parts, self.gamma, self.m)
    }

    /// Deletes base vertex `x` together with its whole part. Also returns
    /// the new-to-old base label map.
    pub fn without_base_vertex(&self, x: usize) -> Result<(Blowup, Vec<usize>)> {
        let (base, map) = self.base.delete_vertex(x);
        let parts = map.iter().map(|&old| self.parts[old].clone()).collect();
        Ok((Blowup::new(base, parts, self.gamma, self.m)?, map))
    }
}

impl EdgeOracle for Blowup {
    fn uniformity(&self) -> usize {
        self.base.k()
    }

    fn vertex_set(&self) -> Vec<Vertex> {
        self.vertices()
    }

    fn has_edge(&self, edge: &[Vertex]) -> bool {
        if edge.len() != self.k() {
            return false;
        }
        let mut proj = Vec::with_capacity(edge.len());
        for &v in edge {
            match self.try_project(v) {
                Some(x) => proj.push(x),
                None => return false,
            }
        }
        proj.sort_unstable();
        proj.windows(2).all(|w| w[0] < w[1]) && self.base.contains_edge(&proj)
    }

    fn has_complete_partite(&self, parts: &[Vec<Vertex>]) -> Option<bool> {
        let mut proj = Vec::with_capacity(parts.len());
        for part in parts {
            let first = self.try_project(*part.first()?)?;
            if part.iter().any(|&v| self.try_project(v) != Some(first)) {
                return Some(false);
            }
            proj.push(first);
        }
        proj.sort_unstable();
        Some(proj.len() == self.k() && proj.windows(2).all(|w| w[0] < w[1]) && self.base.contains_edge(&proj))
    }
}
