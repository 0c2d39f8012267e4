//! Top and bottom boundaries, distance layers from the leftmost point, and
//! the greedy quick-path ordering of boundary points.
//!
//! A boundary point is identified by its point index (`x - 1`). Every
//! boundary point gets a layer number (its distance from the leftmost
//! point) and a rank `lambda`. For boundary points `u`, `v` with
//! `layer(u) < layer(v)` the distance is `layer(v) - layer(u)` exactly when
//! `lambda(u) > lambda(v)`, and `layer(v) - layer(u) + 2` otherwise.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{is_adjacent, Point, PointSet};
use crate::oracle::{bfs, Distance};

const NOT_ON: u32 = u32::MAX;

/// Which boundary a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Top,
    Bottom,
}

/// Points with empty top-left quadrant (`top`) and empty bottom-right
/// quadrant (`bottom`), each sorted by x (equivalently by y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundaries {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    top_pos: Vec<u32>,
    bottom_pos: Vec<u32>,
}

impl Boundaries {
    pub fn compute(set: &PointSet) -> Self {
        let ys = set.ys();
        let n = ys.len();
        let mut top = Vec::new();
        let mut best = 0;
        for (k, &y) in ys.iter().enumerate() {
            if y > best {
                top.push(k);
                best = y;
            }
        }
        let mut bottom = Vec::new();
        let mut best = u32::MAX;
        for (k, &y) in ys.iter().enumerate().rev() {
            if y < best {
                bottom.push(k);
                best = y;
            }
        }
        bottom.reverse();
        let mut top_pos = vec![NOT_ON; n];
        let mut bottom_pos = vec![NOT_ON; n];
        for (i, &k) in top.iter().enumerate() {
            top_pos[k] = i as u32;
        }
        for (i, &k) in bottom.iter().enumerate() {
            bottom_pos[k] = i as u32;
        }
        Self { top, bottom, top_pos, bottom_pos }
    }

    pub fn on_top(&self, idx: usize) -> bool {
        self.top_pos[idx] != NOT_ON
    }

    pub fn on_bottom(&self, idx: usize) -> bool {
        self.bottom_pos[idx] != NOT_ON
    }

    pub fn on_boundary(&self, idx: usize) -> bool {
        self.on_top(idx) || self.on_bottom(idx)
    }

    /// Rank along the given boundary.
    pub fn position(&self, idx: usize, side: Side) -> Option<usize> {
        let p = match side {
            Side::Top => self.top_pos[idx],
            Side::Bottom => self.bottom_pos[idx],
        };
        (p != NOT_ON).then_some(p as usize)
    }

    /// All boundary point indices, sorted by x.
    pub fn all(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.top.iter().chain(&self.bottom).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// Layer numbers of the boundary points of a connected set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    /// Layer of each point index, `u32::MAX` off the boundary.
    layer: Vec<u32>,
    /// Members of each layer in boundary order.
    pub members: Vec<Vec<usize>>,
}

impl Layering {
    pub fn compute(set: &PointSet, b: &Boundaries) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::TooSmall(0));
        }
        let dist = bfs(set, 0);
        if dist.contains(&Distance::Unreachable) {
            return Err(Error::Disconnected);
        }
        let mut layer = vec![NOT_ON; set.len()];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for idx in b.all() {
            let d = dist[idx].finite().expect("connected");
            layer[idx] = d;
            if members.len() <= d as usize {
                members.resize(d as usize + 1, Vec::new());
            }
            members[d as usize].push(idx);
        }
        if members.iter().any(Vec::is_empty) {
            return Err(Error::Internal("empty boundary layer".into()));
        }
        Ok(Self { layer, members })
    }

    pub fn of(&self, idx: usize) -> Option<u32> {
        let l = self.layer[idx];
        (l != NOT_ON).then_some(l)
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// The point with the largest coordinates in layer `q`.
    pub fn last(&self, q: u32) -> usize {
        *self.members[q as usize].last().expect("layers are non-empty")
    }

    pub fn is_last(&self, idx: usize) -> bool {
        self.of(idx).is_some_and(|q| self.last(q) == idx)
    }
}

/// Greedy quick-path ranks. Repeatedly picks, in the lowest layer that has
/// one, the lowest unranked point all of whose neighbors in the next layer
/// are already ranked, and gives it the next value starting from 1.
pub fn compute_lambda(set: &PointSet, layers: &Layering) -> Vec<u32> {
    let count = layers.count();
    let members = &layers.members;
    // need[k][i]: how many points of layer k+1 the i-th point of layer k
    // sees. They form a prefix of layer k+1 whose length grows with i.
    let need: Vec<Vec<usize>> = (0..count)
        .map(|k| {
            let Some(next) = members.get(k + 1) else {
                return vec![0; members[k].len()];
            };
            members[k]
                .iter()
                .map(|&t| {
                    let p = set.point(t);
                    next.partition_point(|&w| is_adjacent(p, set.point(w)))
                })
                .collect()
        })
        .collect();

    let mut ranked = vec![0usize; count];
    let eligible = |k: usize, ranked: &[usize]| -> bool {
        ranked[k] < members[k].len() && (k + 1 == count || need[k][ranked[k]] <= ranked[k + 1])
    };
    let mut ready: BTreeSet<usize> = (0..count).filter(|&k| eligible(k, &ranked)).collect();
    let mut lambda = vec![NOT_ON; set.len()];
    let mut value = 1u32;
    while let Some(k) = ready.pop_first() {
        lambda[members[k][ranked[k]]] = value;
        value += 1;
        ranked[k] += 1;
        for j in [Some(k), k.checked_sub(1)].into_iter().flatten() {
            if eligible(j, &ranked) {
                ready.insert(j);
            } else {
                ready.remove(&j);
            }
        }
    }
    debug_assert!((0..count).all(|k| ranked[k] == members[k].len()), "greedy ranking got stuck");
    lambda
}

/// A rank that may be replaced by "larger than every rank in this and all
/// later layers", used for points known to be last in their layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtLambda {
    Finite(u64),
    Infinity,
}

/// A boundary point as seen by a decoder: layer and (possibly extended) rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Anchor {
    pub layer: u32,
    pub lambda: ExtLambda,
}

impl Anchor {
    pub fn new(layer: u32, lambda: ExtLambda) -> Self {
        Self { layer, lambda }
    }

    /// Position along a boundary: lexicographic on (layer, rank).
    pub fn boundary_cmp(&self, other: &Self) -> Ordering {
        (self.layer, self.lambda).cmp(&(other.layer, other.lambda))
    }
}

/// Distance between two boundary points from their layers and ranks.
pub fn anchor_distance(a: Anchor, b: Anchor) -> u32 {
    let (lo, hi) = if a.layer <= b.layer { (a, b) } else { (b, a) };
    let gap = hi.layer - lo.layer;
    if gap == 0 {
        return if lo.lambda == hi.lambda { 0 } else { 2 };
    }
    // Two infinite ranks: the lower layer's last point outranks everything
    // in later layers.
    let quick = match (lo.lambda, hi.lambda) {
        (ExtLambda::Infinity, _) => true,
        (ExtLambda::Finite(_), ExtLambda::Infinity) => false,
        (ExtLambda::Finite(x), ExtLambda::Finite(y)) => x > y,
    };
    if quick {
        gap
    } else {
        gap + 2
    }
}

/// The first and last neighbors of a point on each boundary, as point
/// indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtremeNeighbors {
    pub bfirst: usize,
    pub blast: usize,
    pub tfirst: usize,
    pub tlast: usize,
}

/// Boundaries, layers and ranks of a connected point set, plus the lookup
/// tables for extreme neighbors.
#[derive(Debug, Clone)]
pub struct BoundaryStructure {
    pub boundaries: Boundaries,
    pub layers: Layering,
    lambda: Vec<u32>,
    /// Index of the lowest point strictly right of each column.
    suffix_min: Vec<usize>,
    /// Index of the highest point strictly left of each column.
    prefix_max: Vec<usize>,
}

impl BoundaryStructure {
    pub fn build(set: &PointSet) -> Result<Self> {
        let boundaries = Boundaries::compute(set);
        let layers = Layering::compute(set, &boundaries)?;
        let lambda = compute_lambda(set, &layers);
        let ys = set.ys();
        let n = ys.len();
        let mut suffix_min = vec![usize::MAX; n];
        let mut best: Option<usize> = None;
        for k in (0..n).rev() {
            if let Some(b) = best {
                suffix_min[k] = b;
            }
            if best.is_none_or(|b| ys[k] < ys[b]) {
                best = Some(k);
            }
        }
        let mut prefix_max = vec![usize::MAX; n];
        let mut best: Option<usize> = None;
        for k in 0..n {
            if let Some(b) = best {
                prefix_max[k] = b;
            }
            if best.is_none_or(|b| ys[k] > ys[b]) {
                best = Some(k);
            }
        }
        Ok(Self { boundaries, layers, lambda, suffix_min, prefix_max })
    }

    pub fn p0(&self) -> usize {
        0
    }

    pub fn layer(&self, idx: usize) -> Option<u32> {
        self.layers.of(idx)
    }

    pub fn lambda(&self, idx: usize) -> Option<u32> {
        let l = self.lambda[idx];
        (l != NOT_ON).then_some(l)
    }

    pub fn boundary_count(&self) -> usize {
        self.lambda.iter().filter(|&&l| l != NOT_ON).count()
    }

    pub fn layer_last(&self, q: u32) -> usize {
        self.layers.last(q)
    }

    pub fn anchor(&self, idx: usize) -> Anchor {
        Anchor::new(
            self.layer(idx).expect("boundary point"),
            ExtLambda::Finite(self.lambda(idx).expect("boundary point") as u64),
        )
    }

    /// Extreme boundary neighbors of `idx`. Fails when a boundary holds no
    /// neighbor of the point.
    pub fn extreme_neighbors(&self, set: &PointSet, idx: usize) -> Result<ExtremeNeighbors> {
        let v = set.point(idx);
        let vertex = v.x;
        let missing = |side| Error::MissingBoundaryNeighbor(vertex, side);
        let ys = set.ys();

        // Lowest point of the bottom-right quadrant; it is the first bottom
        // neighbor.
        let bfirst = self.suffix_min[idx];
        if bfirst == usize::MAX || ys[bfirst] >= v.y {
            return Err(missing("bottom"));
        }
        // Last bottom boundary point below v.
        let bottom = &self.boundaries.bottom;
        let blast = bottom[bottom.partition_point(|&k| ys[k] < v.y) - 1];

        let tlast = self.prefix_max[idx];
        if tlast == usize::MAX || ys[tlast] <= v.y {
            return Err(missing("top"));
        }
        let top = &self.boundaries.top;
        let tfirst = top[top.partition_point(|&k| ys[k] <= v.y)];
        Ok(ExtremeNeighbors { bfirst, blast, tfirst, tlast })
    }
}

/// Points of a set relevant to rendering and debugging.
pub fn boundary_points(set: &PointSet, b: &Boundaries, side: Side) -> Vec<Point> {
    let list = match side {
        Side::Top => &b.top,
        Side::Bottom => &b.bottom,
    };
    list.iter().map(|&k| set.point(k)).collect()
}
