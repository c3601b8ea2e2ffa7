use std::fmt;

use crate::graph::{is_connected, VertexSet, WeightedGraph};

/// Ordered sequence of disjoint vertex sets. A connected packing when every
/// part is connected; a connected vertex partition (CVP) when it also covers
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partition {
    parts: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionDefect {
    EmptyPart(usize),
    Disconnected(usize),
    Overlap(usize),
    Uncovered(usize),
    OutOfRange(usize),
    WrongCount { expected: usize, got: usize },
    WeightOutOfBounds { part: usize, weight: u64 },
}

impl fmt::Display for PartitionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionDefect::EmptyPart(i) => write!(f, "part {i} is empty"),
            PartitionDefect::Disconnected(i) => write!(f, "part {i} is not connected"),
            PartitionDefect::Overlap(v) => write!(f, "vertex {v} is in two parts"),
            PartitionDefect::Uncovered(v) => write!(f, "vertex {v} is in no part"),
            PartitionDefect::OutOfRange(v) => write!(f, "vertex {v} does not exist"),
            PartitionDefect::WrongCount { expected, got } => {
                write!(f, "expected {expected} parts, got {got}")
            }
            PartitionDefect::WeightOutOfBounds { part, weight } => {
                write!(f, "part {part} has weight {weight} outside its bounds")
            }
        }
    }
}

impl std::error::Error for PartitionDefect {}

impl Partition {
    pub fn new(parts: Vec<VertexSet>) -> Self {
        Partition { parts }
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<VertexSet> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weights(&self) -> Vec<u64> {
        self.parts.iter().map(VertexSet::weight).collect()
    }

    pub fn max_weight(&self) -> u64 {
        self.parts.iter().map(VertexSet::weight).max().unwrap_or(0)
    }

    pub fn min_weight(&self) -> u64 {
        self.parts.iter().map(VertexSet::weight).min().unwrap_or(0)
    }

    /// Part index of every vertex, `None` if uncovered.
    pub fn owners(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, part) in self.parts.iter().enumerate() {
            for v in part.iter() {
                if v < n {
                    owner[v] = Some(i);
                }
            }
        }
        owner
    }

    /// Parts are non-empty, in range, pairwise disjoint, and connected.
    pub fn check_packing(&self, g: &WeightedGraph) -> Result<(), PartitionDefect> {
        let mut seen = vec![false; g.n()];
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(PartitionDefect::EmptyPart(i));
            }
            for v in part.iter() {
                if v >= g.n() {
                    return Err(PartitionDefect::OutOfRange(v));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(PartitionDefect::Overlap(v));
                }
            }
            if !is_connected(g, part) {
                return Err(PartitionDefect::Disconnected(i));
            }
        }
        Ok(())
    }

    /// A connected packing that also covers every vertex of `g`.
    pub fn check_cvp(&self, g: &WeightedGraph) -> Result<(), PartitionDefect> {
        self.check_packing(g)?;
        let owner = self.owners(g.n());
        match owner.iter().position(Option::is_none) {
            Some(v) => Err(PartitionDefect::Uncovered(v)),
            None => Ok(()),
        }
    }

    /// A CVP with exactly `k` parts whose weights satisfy `in_bounds(i, w)`.
    pub fn check_bounded_cvp(
        &self,
        g: &WeightedGraph,
        k: usize,
        in_bounds: impl Fn(usize, u64) -> bool,
    ) -> Result<(), PartitionDefect> {
        if self.len() != k {
            return Err(PartitionDefect::WrongCount { expected: k, got: self.len() });
        }
        self.check_cvp(g)?;
        for (i, part) in self.parts.iter().enumerate() {
            if !in_bounds(i, part.weight()) {
                return Err(PartitionDefect::WeightOutOfBounds { part: i, weight: part.weight() });
            }
        }
        Ok(())
    }
}
