//! Structural checks shared by the property suite and the acceptance run.
//! Each check returns a description of every violation it finds.

#![allow(dead_code)]

use std::collections::VecDeque;

use permlabel::augment::check_containment;
use permlabel::boundaries::{BoundaryStructure, ExtremeNeighbors, Side};
use permlabel::graph::is_adjacent;
use permlabel::layout::PreparedComponent;
use permlabel::rng::SplitMix64;
use permlabel::{random_permutation, Distance, DistanceOracle, Permutation, PointSet};

/// A connected point set with everything the checks look at.
pub struct Fixture {
    pub label: String,
    pub set: PointSet,
    pub structure: BoundaryStructure,
    pub oracle: DistanceOracle,
    pub prep: PreparedComponent,
    pub aug_oracle: DistanceOracle,
}

impl Fixture {
    /// Built on the largest component of `perm`.
    pub fn new(label: String, perm: &Permutation) -> Option<Self> {
        let set = PointSet::from_permutation(perm).components().swap_remove(0).set;
        if set.len() < 2 {
            return None;
        }
        let structure = BoundaryStructure::build(&set).unwrap();
        let oracle = DistanceOracle::new(&set);
        let prep = PreparedComponent::new(&set).unwrap();
        let aug_oracle = DistanceOracle::new(&prep.aug.points);
        Some(Self { label, set, structure, oracle, prep, aug_oracle })
    }
}

/// The 200 random size-100 instances.
pub fn random_fixtures() -> impl Iterator<Item = Fixture> {
    (0..200u64)
        .filter_map(|seed| Fixture::new(format!("random n=100 seed={seed}"), &random_permutation(100, seed).unwrap()))
}

/// Near-sorted permutations: long, thin graphs with many layers, which
/// uniform permutations almost never produce.
pub fn banded(n: usize, seed: u64) -> Permutation {
    let mut rng = SplitMix64::new(seed);
    let mut values: Vec<u32> = (1..=n as u32).collect();
    for _ in 0..n {
        let i = rng.below(n as u64 - 1) as usize;
        let j = (i + 1 + rng.below(3) as usize).min(n - 1);
        values.swap(i, j);
    }
    Permutation::new(values).unwrap()
}

pub fn banded_fixtures() -> impl Iterator<Item = Fixture> {
    (0..60u64).filter_map(|seed| Fixture::new(format!("banded n=100 seed={seed}"), &banded(100, seed)))
}

fn d(o: &DistanceOracle, a: usize, b: usize) -> u32 {
    match o.get(a, b) {
        Distance::Finite(k) => k,
        Distance::Unreachable => panic!("fixture sets are connected"),
    }
}

fn boundary_indices(bs: &BoundaryStructure) -> Vec<usize> {
    bs.boundaries.all()
}

/// Even layers on the top boundary, odd on the bottom.
pub fn layer_parity(set: &PointSet, bs: &BoundaryStructure) -> Vec<String> {
    boundary_indices(bs)
        .into_iter()
        .filter_map(|k| {
            let l = bs.layer(k).unwrap();
            let ok = if l.is_multiple_of(2) { bs.boundaries.on_top(k) } else { bs.boundaries.on_bottom(k) };
            (!ok).then(|| format!("{} in layer {l} on the wrong boundary", set.point(k)))
        })
        .collect()
}

/// The last point of each layer is adjacent to every point of the next.
pub fn last_adjacent(set: &PointSet, bs: &BoundaryStructure) -> Vec<String> {
    let mut bad = Vec::new();
    for q in 0..bs.layers.count() as u32 - 1 {
        let last = set.point(bs.layer_last(q));
        for &k in &bs.layers.members[q as usize + 1] {
            if !is_adjacent(last, set.point(k)) {
                bad.push(format!("last({q}) = {last} not adjacent to {}", set.point(k)));
            }
        }
    }
    bad
}

/// Ranks are exactly 1..=boundary size.
pub fn lambda_bijection(bs: &BoundaryStructure) -> Vec<String> {
    let mut ranks: Vec<u32> = boundary_indices(bs).into_iter().map(|k| bs.lambda(k).unwrap()).collect();
    ranks.sort_unstable();
    if ranks.iter().copied().eq(1..=ranks.len() as u32) {
        Vec::new()
    } else {
        vec![format!("ranks are not 1..={}", ranks.len())]
    }
}

/// For boundary points in different layers: distance equals the layer gap
/// exactly when the lower one has the larger rank.
pub fn quick_paths(set: &PointSet, bs: &BoundaryStructure, o: &DistanceOracle) -> Vec<String> {
    let all = boundary_indices(bs);
    let mut bad = Vec::new();
    for &u in &all {
        for &v in &all {
            let (lu, lv) = (bs.layer(u).unwrap(), bs.layer(v).unwrap());
            if lu >= lv {
                continue;
            }
            let quick = d(o, u, v) == lv - lu;
            if quick != (bs.lambda(u) > bs.lambda(v)) {
                bad.push(format!("{} / {}: quick={quick}", set.point(u), set.point(v)));
            }
        }
    }
    bad
}

/// Boundary distances are the layer gap or the gap plus two.
pub fn distance_gap(set: &PointSet, bs: &BoundaryStructure, o: &DistanceOracle) -> Vec<String> {
    let all = boundary_indices(bs);
    let mut bad = Vec::new();
    for &u in &all {
        for &v in &all {
            let gap = bs.layer(u).unwrap().abs_diff(bs.layer(v).unwrap());
            let dist = d(o, u, v);
            let ok = dist == gap + 2 || (dist == gap && (gap > 0 || u == v));
            if !ok {
                bad.push(format!("{} / {}: d={dist} gap={gap}", set.point(u), set.point(v)));
            }
        }
    }
    bad
}

/// Shortest paths exist whose interior points all lie on the boundaries
/// (necessarily alternating, since points of one boundary are pairwise
/// non-adjacent).
pub fn alternating_paths(set: &PointSet, bs: &BoundaryStructure, o: &DistanceOracle) -> Vec<String> {
    let n = set.len();
    let pts: Vec<_> = set.points().collect();
    let on = |k: usize| bs.boundaries.on_boundary(k);
    let mut bad = Vec::new();
    for u in 0..n {
        // BFS from u where only boundary points may be expanded.
        let mut dist = vec![u32::MAX; n];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(a) = queue.pop_front() {
            if a != u && !on(a) {
                continue;
            }
            for b in 0..n {
                if dist[b] == u32::MAX && is_adjacent(pts[a], pts[b]) {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        for v in 0..n {
            if dist[v] != d(o, u, v) {
                bad.push(format!("{} / {}: constrained {} vs {}", pts[u], pts[v], dist[v], d(o, u, v)));
            }
        }
    }
    bad
}

fn boundary_order(bs: &BoundaryStructure) -> impl Fn(usize) -> usize + '_ {
    move |k| {
        let side = if bs.boundaries.on_bottom(k) { Side::Bottom } else { Side::Top };
        bs.boundaries.position(k, side).expect("extreme neighbors lie on a boundary")
    }
}

/// Boundary neighbors of every original vertex span at most three
/// consecutive layers.
pub fn three_layers(f: &Fixture) -> Vec<String> {
    let aug = &f.prep.aug;
    let bs = &f.prep.structure;
    let mut bad = Vec::new();
    for &v in &aug.back_map {
        let p = aug.points.point(v);
        let layers: Vec<u32> = boundary_indices(bs)
            .into_iter()
            .filter(|&k| is_adjacent(p, aug.points.point(k)))
            .map(|k| bs.layer(k).unwrap())
            .collect();
        let (lo, hi) = (layers.iter().min().unwrap(), layers.iter().max().unwrap());
        if hi - lo > 2 {
            bad.push(format!("{p} sees layers {lo}..={hi}"));
        }
    }
    bad
}

/// Augmented sets keep every original distance, hold no original point on
/// a boundary and stay within seven points per vertex.
pub fn augmentation_sound(f: &Fixture) -> Vec<String> {
    let aug = &f.prep.aug;
    let bs = &f.prep.structure;
    let mut bad = Vec::new();
    if aug.points.len() > 7 * f.set.len() {
        bad.push(format!("{} points for {} vertices", aug.points.len(), f.set.len()));
    }
    for (u, &au) in aug.back_map.iter().enumerate() {
        if bs.boundaries.on_boundary(au) {
            bad.push(format!("original {} on a boundary", u + 1));
        }
        for (v, &av) in aug.back_map.iter().enumerate() {
            if f.oracle.get(u, v) != f.aug_oracle.get(au, av) {
                bad.push(format!("d({}, {}) changed", u + 1, v + 1));
            }
        }
    }
    bad
}

/// Adjacency of original vertices is strict containment of their extreme
/// neighbor ranges.
pub fn containment(f: &Fixture) -> Vec<String> {
    let aug = &f.prep.aug;
    let order = boundary_order(&f.prep.structure);
    let mut bad = Vec::new();
    for (i, (&a, ea)) in aug.back_map.iter().zip(&f.prep.extremes).enumerate() {
        for (j, (&b, eb)) in aug.back_map.iter().zip(&f.prep.extremes).enumerate() {
            let adjacent = is_adjacent(aug.points.point(a), aug.points.point(b));
            if check_containment(ea, eb, &order) != adjacent {
                bad.push(format!("vertices {} / {}: adjacent={adjacent}", i + 1, j + 1));
            }
        }
    }
    bad
}

fn ranges_meet(e: &ExtremeNeighbors, g: &ExtremeNeighbors, order: &impl Fn(usize) -> usize) -> bool {
    let meet = |a0, a1, b0, b1| order(a0) <= order(b1) && order(b0) <= order(a1);
    meet(e.bfirst, e.blast, g.bfirst, g.blast) || meet(e.tfirst, e.tlast, g.tfirst, g.tlast)
}

/// Distance at most two exactly when a bottom or a top range is shared.
pub fn distance_two(f: &Fixture) -> Vec<String> {
    let aug = &f.prep.aug;
    let order = boundary_order(&f.prep.structure);
    let mut bad = Vec::new();
    for (i, (&a, ea)) in aug.back_map.iter().zip(&f.prep.extremes).enumerate() {
        for (j, (&b, eb)) in aug.back_map.iter().zip(&f.prep.extremes).enumerate() {
            let close = d(&f.aug_oracle, a, b) <= 2;
            if close != ranges_meet(ea, eb, &order) {
                bad.push(format!("vertices {} / {}: close={close}", i + 1, j + 1));
            }
        }
    }
    bad
}

/// Pairs further than two apart are joined through one of the left
/// vertex's last neighbors and one of the right vertex's first neighbors.
pub fn anchor_decomposition(f: &Fixture) -> Vec<String> {
    let aug = &f.prep.aug;
    let o = &f.aug_oracle;
    let mut bad = Vec::new();
    for (i, (&a, ea)) in aug.back_map.iter().zip(&f.prep.extremes).enumerate() {
        for (j, (&b, eb)) in aug.back_map.iter().zip(&f.prep.extremes).enumerate() {
            // back_map is increasing in x, so i < j means a is left of b.
            if i >= j || d(o, a, b) <= 2 {
                continue;
            }
            let via = [ea.blast, ea.tlast]
                .into_iter()
                .flat_map(|s| [eb.bfirst, eb.tfirst].map(|t| d(o, s, t)))
                .min()
                .unwrap();
            if d(o, a, b) != 2 + via {
                bad.push(format!("vertices {} / {}: d={} via anchors {}", i + 1, j + 1, d(o, a, b), 2 + via));
            }
        }
    }
    bad
}

/// Runs `check` over fixtures and returns (instances, violations), with
/// the first few violations prefixed by their instance.
pub fn tally(fixtures: impl Iterator<Item = Fixture>, check: impl Fn(&Fixture) -> Vec<String>) -> (usize, Vec<String>) {
    let mut count = 0;
    let mut bad = Vec::new();
    for f in fixtures {
        count += 1;
        bad.extend(check(&f).into_iter().map(|m| format!("{}: {m}", f.label)));
    }
    (count, bad)
}
