//! Ground-truth distances by breadth-first search.

use std::collections::VecDeque;
use std::fmt;

use crate::graph::{is_adjacent, PointSet};

/// A graph distance, with an explicit value for vertices in different
/// components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => write!(f, "unreachable"),
        }
    }
}

/// Pulls unvisited neighbors out of a point set in `O(log n)` each.
///
/// Two segment trees over x positions hold the y of every unvisited point
/// (max tree for top-left queries, min tree for bottom-right ones), so a
/// full BFS costs `O(n log n)` even on dense graphs.
pub(crate) struct NeighborSearch<'a> {
    set: &'a PointSet,
    size: usize,
    max_tree: Vec<u32>,
    min_tree: Vec<u32>,
}

const NONE_MIN: u32 = u32::MAX;
const NONE_MAX: u32 = 0;

impl<'a> NeighborSearch<'a> {
    pub(crate) fn new(set: &'a PointSet) -> Self {
        let size = set.len().next_power_of_two().max(1);
        let mut max_tree = vec![NONE_MAX; 2 * size];
        let mut min_tree = vec![NONE_MIN; 2 * size];
        for (k, &y) in set.ys().iter().enumerate() {
            max_tree[size + k] = y;
            min_tree[size + k] = y;
        }
        for i in (1..size).rev() {
            max_tree[i] = max_tree[2 * i].max(max_tree[2 * i + 1]);
            min_tree[i] = min_tree[2 * i].min(min_tree[2 * i + 1]);
        }
        Self { set, size, max_tree, min_tree }
    }

    pub(crate) fn remove(&mut self, idx: usize) {
        let mut i = self.size + idx;
        self.max_tree[i] = NONE_MAX;
        self.min_tree[i] = NONE_MIN;
        while i > 1 {
            i /= 2;
            self.max_tree[i] = self.max_tree[2 * i].max(self.max_tree[2 * i + 1]);
            self.min_tree[i] = self.min_tree[2 * i].min(self.min_tree[2 * i + 1]);
        }
    }

    /// Leftmost index in `lo..hi` whose value in the max tree exceeds `y`.
    fn find_above(&self, node: usize, node_lo: usize, node_hi: usize, lo: usize, hi: usize, y: u32) -> Option<usize> {
        if node_hi <= lo || hi <= node_lo || self.max_tree[node] <= y {
            return None;
        }
        if node_hi - node_lo == 1 {
            return Some(node_lo);
        }
        let mid = (node_lo + node_hi) / 2;
        self.find_above(2 * node, node_lo, mid, lo, hi, y)
            .or_else(|| self.find_above(2 * node + 1, mid, node_hi, lo, hi, y))
    }

    fn find_below(&self, node: usize, node_lo: usize, node_hi: usize, lo: usize, hi: usize, y: u32) -> Option<usize> {
        if node_hi <= lo || hi <= node_lo || self.min_tree[node] >= y {
            return None;
        }
        if node_hi - node_lo == 1 {
            return Some(node_lo);
        }
        let mid = (node_lo + node_hi) / 2;
        self.find_below(2 * node, node_lo, mid, lo, hi, y)
            .or_else(|| self.find_below(2 * node + 1, mid, node_hi, lo, hi, y))
    }

    /// Removes every still-present neighbor of `idx`, reporting each once.
    pub(crate) fn drain_neighbors(&mut self, idx: usize, mut visit: impl FnMut(usize)) {
        let y = self.set.ys()[idx];
        let n = self.set.len();
        while let Some(w) = self.find_above(1, 0, self.size, 0, idx, y) {
            self.remove(w);
            visit(w);
        }
        while let Some(w) = self.find_below(1, 0, self.size, idx + 1, n, y) {
            self.remove(w);
            visit(w);
        }
    }
}

/// Single-source BFS distances, indexed by point index (`x - 1`).
pub fn bfs(set: &PointSet, source: usize) -> Vec<Distance> {
    let mut dist = vec![Distance::Unreachable; set.len()];
    let mut search = NeighborSearch::new(set);
    dist[source] = Distance::Finite(0);
    search.remove(source);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = Distance::Finite(dist[u].finite().expect("visited") + 1);
        search.drain_neighbors(u, |w| {
            dist[w] = next;
            queue.push_back(w);
        });
    }
    dist
}

/// BFS scanning every point for adjacency at each step, `O(n^2)`.
/// Kept as an independent cross-check of [`bfs`].
pub fn bfs_naive(set: &PointSet, source: usize) -> Vec<Distance> {
    let points: Vec<_> = set.points().collect();
    let mut dist = vec![Distance::Unreachable; points.len()];
    dist[source] = Distance::Finite(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].finite().expect("visited");
        for w in 0..points.len() {
            if dist[w] == Distance::Unreachable && is_adjacent(points[u], points[w]) {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs distances of a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOracle {
    n: usize,
    dist: Vec<Distance>,
}

impl DistanceOracle {
    pub fn new(set: &PointSet) -> Self {
        let n = set.len();
        let mut dist = Vec::with_capacity(n * n);
        for s in 0..n {
            dist.extend(bfs(set, s));
        }
        Self { n, dist }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distance between point indices.
    pub fn get(&self, a: usize, b: usize) -> Distance {
        self.dist[a * self.n + b]
    }

    /// Distance between vertex ids (x coordinates, 1-based).
    pub fn between(&self, u: u32, v: u32) -> Distance {
        self.get(u as usize - 1, v as usize - 1)
    }

    pub fn row(&self, a: usize) -> &[Distance] {
        &self.dist[a * self.n..(a + 1) * self.n]
    }
}
