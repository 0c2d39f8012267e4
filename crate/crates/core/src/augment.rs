//! Auxiliary boundary points.
//!
//! For every original vertex `v`, in increasing x order, four points are
//! added against the current set:
//!
//! * `v_b  = (v_x - e, Bfirst(v)_y - e)` and `v_b' = (Blast(v)_x + e, v_y + e)`
//!   on the bottom boundary,
//! * `v_t  = (Tfirst(v)_x - e, v_y - e)` and `v_t' = (v_x + e, Tlast(v)_y + e)`
//!   on the top boundary.
//!
//! A vertex sitting on a boundary first gets a clearing point
//! (`(v_x + e, v_y - e)` for the bottom, `(v_x - e, v_y + e)` for the top)
//! which moves it off that boundary and becomes its only neighbor there.
//!
//! "`c + e`" means directly after coordinate `c` in the current order, and
//! closer to `c` than anything inserted before, which is what doubling the
//! grid and using an odd coordinate amounts to. Coordinates live in
//! [`OrderList`]s and a treap over x answers the quadrant extreme queries,
//! so the whole pass is `O(n log n)`.
//!
//! Added points never change the boundary status of existing points
//! (except the cleared vertex), and never change distances between
//! existing points.

use std::fmt;

use crate::boundaries::{Boundaries, ExtremeNeighbors};
use crate::error::{Error, Result};
use crate::graph::{Point, PointSet};
use crate::order::OrderList;

/// Why a point of an augmented set exists. Payload is the input vertex
/// (x coordinate in the input set) the point was added for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Original(u32),
    BoundaryClear(u32),
    AuxB(u32),
    AuxBPrime(u32),
    AuxT(u32),
    AuxTPrime(u32),
}

impl Origin {
    pub fn is_original(&self) -> bool {
        matches!(self, Origin::Original(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Origin::Original(_) => "original",
            Origin::BoundaryClear(_) => "clear",
            Origin::AuxB(_) => "aux-b",
            Origin::AuxBPrime(_) => "aux-b'",
            Origin::AuxT(_) => "aux-t",
            Origin::AuxTPrime(_) => "aux-t'",
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Original(v)
            | Origin::BoundaryClear(v)
            | Origin::AuxB(v)
            | Origin::AuxBPrime(v)
            | Origin::AuxT(v)
            | Origin::AuxTPrime(v) => write!(f, "{}({v})", self.tag()),
        }
    }
}

/// The input points plus their auxiliary points, renumbered to a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedSet {
    pub points: PointSet,
    /// Origin of each point index.
    pub origin: Vec<Origin>,
    /// `back_map[v - 1]` is the point index of input vertex `v`.
    pub back_map: Vec<usize>,
}

impl AugmentedSet {
    pub fn original_count(&self) -> usize {
        self.back_map.len()
    }

    pub fn point_of(&self, vertex: u32) -> Point {
        self.points.point(self.back_map[vertex as usize - 1])
    }
}

const NIL: usize = usize::MAX;

/// Treap over x order. Node ids are point ids; subtree aggregates keep the
/// lowest and highest point by y. Re-spreading tags keeps order, so the
/// tree stays valid across it.
struct Treap {
    left: Vec<usize>,
    right: Vec<usize>,
    prio: Vec<u64>,
    min_y: Vec<usize>,
    max_y: Vec<usize>,
    root: usize,
    rng: u64,
}

struct Coords {
    xs: OrderList,
    ys: OrderList,
    /// (x handle, y handle) of each point id.
    at: Vec<(usize, usize)>,
}

impl Coords {
    fn x(&self, id: usize) -> u64 {
        self.xs.tag(self.at[id].0)
    }

    fn y(&self, id: usize) -> u64 {
        self.ys.tag(self.at[id].1)
    }

    fn lower(&self, a: usize, b: usize) -> usize {
        if self.y(a) <= self.y(b) {
            a
        } else {
            b
        }
    }

    fn higher(&self, a: usize, b: usize) -> usize {
        if self.y(a) >= self.y(b) {
            a
        } else {
            b
        }
    }
}

impl Treap {
    fn new() -> Self {
        Self {
            left: Vec::new(),
            right: Vec::new(),
            prio: Vec::new(),
            min_y: Vec::new(),
            max_y: Vec::new(),
            root: NIL,
            rng: 0x2545_F491_4F6C_DD1D,
        }
    }

    fn pull(&mut self, c: &Coords, t: usize) {
        let (mut lo, mut hi) = (t, t);
        for child in [self.left[t], self.right[t]] {
            if child != NIL {
                lo = c.lower(lo, self.min_y[child]);
                hi = c.higher(hi, self.max_y[child]);
            }
        }
        self.min_y[t] = lo;
        self.max_y[t] = hi;
    }

    fn insert(&mut self, c: &Coords, id: usize) {
        debug_assert_eq!(id, self.left.len());
        // xorshift64 for priorities; any fixed sequence works.
        self.rng ^= self.rng << 13;
        self.rng ^= self.rng >> 7;
        self.rng ^= self.rng << 17;
        self.left.push(NIL);
        self.right.push(NIL);
        self.prio.push(self.rng);
        self.min_y.push(id);
        self.max_y.push(id);
        self.root = self.insert_at(c, self.root, id);
    }

    fn insert_at(&mut self, c: &Coords, t: usize, id: usize) -> usize {
        if t == NIL {
            return id;
        }
        if c.x(id) < c.x(t) {
            let sub = self.insert_at(c, self.left[t], id);
            self.left[t] = sub;
            if self.prio[sub] > self.prio[t] {
                self.left[t] = self.right[sub];
                self.right[sub] = t;
                self.pull(c, t);
                self.pull(c, sub);
                return sub;
            }
        } else {
            let sub = self.insert_at(c, self.right[t], id);
            self.right[t] = sub;
            if self.prio[sub] > self.prio[t] {
                self.right[t] = self.left[sub];
                self.left[sub] = t;
                self.pull(c, t);
                self.pull(c, sub);
                return sub;
            }
        }
        self.pull(c, t);
        t
    }

    /// Lowest point with x tag greater than `x`.
    fn lowest_right_of(&self, c: &Coords, x: u64) -> Option<usize> {
        let mut t = self.root;
        let mut best: Option<usize> = None;
        while t != NIL {
            if c.x(t) > x {
                let mut here = t;
                if self.right[t] != NIL {
                    here = c.lower(here, self.min_y[self.right[t]]);
                }
                best = Some(best.map_or(here, |b| c.lower(b, here)));
                t = self.left[t];
            } else {
                t = self.right[t];
            }
        }
        best
    }

    /// Highest point with x tag less than `x`.
    fn highest_left_of(&self, c: &Coords, x: u64) -> Option<usize> {
        let mut t = self.root;
        let mut best: Option<usize> = None;
        while t != NIL {
            if c.x(t) < x {
                let mut here = t;
                if self.left[t] != NIL {
                    here = c.higher(here, self.max_y[self.left[t]]);
                }
                best = Some(best.map_or(here, |b| c.higher(b, here)));
                t = self.right[t];
            } else {
                t = self.left[t];
            }
        }
        best
    }

    /// Rightmost point of a subtree with y tag below `y`.
    fn rightmost_below(&self, c: &Coords, t: usize, y: u64) -> Option<usize> {
        if t == NIL || c.y(self.min_y[t]) >= y {
            return None;
        }
        self.rightmost_below(c, self.right[t], y)
            .or_else(|| (c.y(t) < y).then_some(t))
            .or_else(|| self.rightmost_below(c, self.left[t], y))
    }

    /// Leftmost point of a subtree with y tag above `y`.
    fn leftmost_above(&self, c: &Coords, t: usize, y: u64) -> Option<usize> {
        if t == NIL || c.y(self.max_y[t]) <= y {
            return None;
        }
        self.leftmost_above(c, self.left[t], y)
            .or_else(|| (c.y(t) > y).then_some(t))
            .or_else(|| self.leftmost_above(c, self.right[t], y))
    }

    /// Rightmost point with x tag greater than `x` and y tag below `y`.
    fn rightmost_below_right_of(&self, c: &Coords, t: usize, x: u64, y: u64) -> Option<usize> {
        if t == NIL {
            return None;
        }
        if c.x(t) > x {
            self.rightmost_below(c, self.right[t], y)
                .or_else(|| (c.y(t) < y).then_some(t))
                .or_else(|| self.rightmost_below_right_of(c, self.left[t], x, y))
        } else {
            self.rightmost_below_right_of(c, self.right[t], x, y)
        }
    }

    /// Leftmost point with x tag less than `x` and y tag above `y`.
    fn leftmost_above_left_of(&self, c: &Coords, t: usize, x: u64, y: u64) -> Option<usize> {
        if t == NIL {
            return None;
        }
        if c.x(t) < x {
            self.leftmost_above(c, self.left[t], y)
                .or_else(|| (c.y(t) > y).then_some(t))
                .or_else(|| self.leftmost_above_left_of(c, self.right[t], x, y))
        } else {
            self.leftmost_above_left_of(c, self.left[t], x, y)
        }
    }
}

/// Where a new coordinate goes relative to an existing one.
#[derive(Clone, Copy)]
enum Place {
    Before(usize),
    After(usize),
}

struct Builder {
    coords: Coords,
    treap: Treap,
    origin: Vec<Origin>,
}

impl Builder {
    fn new(set: &PointSet) -> Self {
        let n = set.len();
        let xs = OrderList::with_len(n);
        let ys = OrderList::with_len(n);
        let at = set.points().map(|p| (p.x as usize - 1, p.y as usize - 1)).collect();
        let mut b = Self { coords: Coords { xs, ys, at }, treap: Treap::new(), origin: Vec::with_capacity(7 * n) };
        for id in 0..n {
            b.origin.push(Origin::Original(id as u32 + 1));
            b.treap.insert(&b.coords, id);
        }
        b
    }

    fn add(&mut self, x: Place, y: Place, origin: Origin) -> usize {
        let xh = match x {
            Place::Before(h) => self.coords.xs.insert_before(h),
            Place::After(h) => self.coords.xs.insert_after(h),
        };
        let yh = match y {
            Place::Before(h) => self.coords.ys.insert_before(h),
            Place::After(h) => self.coords.ys.insert_after(h),
        };
        let id = self.coords.at.len();
        self.coords.at.push((xh, yh));
        self.origin.push(origin);
        self.treap.insert(&self.coords, id);
        id
    }

    fn xh(&self, id: usize) -> usize {
        self.coords.at[id].0
    }

    fn yh(&self, id: usize) -> usize {
        self.coords.at[id].1
    }

    fn bfirst(&self, v: usize) -> Option<usize> {
        let c = &self.coords;
        self.treap.lowest_right_of(c, c.x(v)).filter(|&w| c.y(w) < c.y(v))
    }

    fn blast(&self, v: usize) -> Option<usize> {
        let c = &self.coords;
        self.treap.rightmost_below_right_of(c, self.treap.root, c.x(v), c.y(v))
    }

    fn tlast(&self, v: usize) -> Option<usize> {
        let c = &self.coords;
        self.treap.highest_left_of(c, c.x(v)).filter(|&w| c.y(w) > c.y(v))
    }

    fn tfirst(&self, v: usize) -> Option<usize> {
        let c = &self.coords;
        self.treap.leftmost_above_left_of(c, self.treap.root, c.x(v), c.y(v))
    }

    fn clear_bottom(&mut self, v: usize, vertex: u32) {
        let (xv, yv) = (self.xh(v), self.yh(v));
        self.add(Place::After(xv), Place::Before(yv), Origin::BoundaryClear(vertex));
    }

    fn clear_top(&mut self, v: usize, vertex: u32) {
        let (xv, yv) = (self.xh(v), self.yh(v));
        self.add(Place::Before(xv), Place::After(yv), Origin::BoundaryClear(vertex));
    }

    fn process(&mut self, v: usize) -> Result<()> {
        let vertex = v as u32 + 1;
        let missing = |side| Error::MissingBoundaryNeighbor(vertex, side);

        if self.bfirst(v).is_none() {
            self.clear_bottom(v, vertex);
        }
        let bf = self.bfirst(v).ok_or(missing("bottom"))?;
        let bl = self.blast(v).ok_or(missing("bottom"))?;
        let (xv, yv) = (self.xh(v), self.yh(v));
        let (bf_y, bl_x) = (self.yh(bf), self.xh(bl));
        self.add(Place::Before(xv), Place::Before(bf_y), Origin::AuxB(vertex));
        self.add(Place::After(bl_x), Place::After(yv), Origin::AuxBPrime(vertex));

        if self.tlast(v).is_none() {
            self.clear_top(v, vertex);
        }
        let tf = self.tfirst(v).ok_or(missing("top"))?;
        let tl = self.tlast(v).ok_or(missing("top"))?;
        let (tf_x, tl_y) = (self.xh(tf), self.yh(tl));
        self.add(Place::Before(tf_x), Place::Before(yv), Origin::AuxT(vertex));
        self.add(Place::After(xv), Place::After(tl_y), Origin::AuxTPrime(vertex));

        // Final clearing step of the encoder loop. Unreachable after the
        // clearing above; kept as a guard.
        if self.bfirst(v).is_none() {
            self.clear_bottom(v, vertex);
        }
        if self.tlast(v).is_none() {
            self.clear_top(v, vertex);
        }
        Ok(())
    }

    fn finish(self, n: usize) -> AugmentedSet {
        let xr = self.coords.xs.ranks();
        let yr = self.coords.ys.ranks();
        let count = self.coords.at.len();
        let mut ys = vec![0u32; count];
        let mut origin = vec![Origin::Original(0); count];
        let mut back_map = vec![0usize; n];
        for (id, &(xh, yh)) in self.coords.at.iter().enumerate() {
            let idx = xr[xh] as usize - 1;
            ys[idx] = yr[yh];
            origin[idx] = self.origin[id];
            if id < n {
                back_map[id] = idx;
            }
        }
        let full = PointSet::from_ys(ys).expect("ranks form a permutation");

        // An auxiliary point can end up with no neighbor at all (v_b for a
        // vertex with nothing above-left of Bfirst(v), for example). Such a
        // point is in no other point's quadrants, so dropping it changes no
        // boundary, extreme neighbor or distance, and keeps the set
        // connected.
        let b = Boundaries::compute(&full);
        let isolated = |idx: usize| b.on_top(idx) && b.on_bottom(idx);
        if !(0..full.len()).any(isolated) {
            return AugmentedSet { points: full, origin, back_map };
        }
        let mut new_index = vec![usize::MAX; full.len()];
        let mut kept = Vec::with_capacity(full.len());
        for idx in 0..full.len() {
            if isolated(idx) {
                debug_assert!(!origin[idx].is_original());
                continue;
            }
            new_index[idx] = kept.len();
            kept.push(full.point(idx));
        }
        AugmentedSet {
            points: PointSet::from_points(&kept).expect("subset of a valid set"),
            origin: kept.iter().map(|p| origin[p.x as usize - 1]).collect(),
            back_map: back_map.iter().map(|&i| new_index[i]).collect(),
        }
    }
}

/// Adds auxiliary points so that no input point is on a boundary and
/// adjacency between input points reduces to nesting of their extreme
/// neighbor ranges. The input must be connected with at least two points.
pub fn augment(set: &PointSet) -> Result<AugmentedSet> {
    let n = set.len();
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    if set.component_indices().len() != 1 {
        return Err(Error::Disconnected);
    }
    let mut b = Builder::new(set);
    for v in 0..n {
        b.process(v)?;
    }
    Ok(b.finish(n))
}

/// Strict nesting of extreme-neighbor ranges in boundary order:
/// `w` lies bottom-right of `v` iff `Bfirst(v) < Bfirst(w) <= Blast(w) < Blast(v)`,
/// and top-left iff the same holds for the top extremes.
///
/// `order` gives each boundary point's rank along its boundary.
pub fn check_containment(v: &ExtremeNeighbors, w: &ExtremeNeighbors, order: impl Fn(usize) -> usize) -> bool {
    let bottom =
        order(v.bfirst) < order(w.bfirst) && order(w.bfirst) <= order(w.blast) && order(w.blast) < order(v.blast);
    let top = order(v.tfirst) < order(w.tfirst) && order(w.tfirst) <= order(w.tlast) && order(w.tlast) < order(v.tlast);
    bottom || top
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundaries::{BoundaryStructure, Side};
    use crate::graph::{random_permutation, Permutation};
    use crate::oracle::DistanceOracle;

    fn set_of(values: &[u32]) -> PointSet {
        PointSet::from_permutation(&Permutation::new(values.to_vec()).unwrap())
    }

    #[test]
    fn single_inversion() {
        let s = set_of(&[2, 1]);
        assert_eq!(s.points().collect::<Vec<_>>(), vec![Point::new(1, 2), Point::new(2, 1)]);
        let aug = augment(&s).unwrap();
        let b = Boundaries::compute(&aug.points);
        for &idx in &aug.back_map {
            assert!(!b.on_boundary(idx));
        }
        let o = DistanceOracle::new(&aug.points);
        assert_eq!(o.get(aug.back_map[0], aug.back_map[1]).finite(), Some(1));
        assert!(aug.points.len() <= 7 * 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(augment(&set_of(&[1])), Err(Error::TooSmall(1)));
        assert_eq!(augment(&set_of(&[1, 2])), Err(Error::Disconnected));
    }

    #[test]
    fn aux_points_land_on_their_boundary() {
        for seed in 0..40 {
            let perm = random_permutation(30, seed).unwrap();
            let set = PointSet::from_permutation(&perm);
            let Some(comp) = set.components().into_iter().find(|c| c.set.len() > 1) else {
                continue;
            };
            let aug = augment(&comp.set).unwrap();
            let b = Boundaries::compute(&aug.points);
            for (idx, origin) in aug.origin.iter().enumerate() {
                match origin {
                    Origin::AuxB(_) | Origin::AuxBPrime(_) => assert!(b.on_bottom(idx)),
                    Origin::AuxT(_) | Origin::AuxTPrime(_) => assert!(b.on_top(idx)),
                    Origin::Original(_) => assert!(!b.on_boundary(idx)),
                    Origin::BoundaryClear(_) => assert!(b.on_boundary(idx)),
                }
            }
            assert!(aug.points.len() <= 7 * comp.set.len());
        }
    }

    #[test]
    fn containment_matches_adjacency_small() {
        let s = set_of(&[3, 1, 4, 2]);
        let aug = augment(&s).unwrap();
        let bs = BoundaryStructure::build(&aug.points).unwrap();
        let order = |k: usize| {
            bs.boundaries.position(k, Side::Bottom).or_else(|| bs.boundaries.position(k, Side::Top)).unwrap()
        };
        let ext: Vec<_> = aug.back_map.iter().map(|&i| bs.extreme_neighbors(&aug.points, i).unwrap()).collect();
        for v in 0..4 {
            assert!(!check_containment(&ext[v], &ext[v], order));
            for w in 0..4 {
                if v != w {
                    let adjacent =
                        crate::graph::is_adjacent(aug.points.point(aug.back_map[v]), aug.points.point(aug.back_map[w]));
                    assert_eq!(
                        check_containment(&ext[v], &ext[w], order) || check_containment(&ext[w], &ext[v], order),
                        adjacent
                    );
                }
            }
        }
    }
}
