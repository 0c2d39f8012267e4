//! Permutations, their grid representation, and connected components.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// A permutation of `1..=n`, stored in one-line notation: `values()[k]` is
/// the value at position `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        let mut seen = vec![false; n];
        for &v in &values {
            let idx = v as usize;
            if idx == 0 || idx > n {
                return Err(Error::InvalidPermutation { n, reason: format!("value {v} out of range") });
            }
            if std::mem::replace(&mut seen[idx - 1], true) {
                return Err(Error::InvalidPermutation { n, reason: format!("value {v} repeated") });
            }
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self { values: (1..=n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Position (1-based) of every value: `result[i - 1]` is where `i` sits.
    pub fn inverse(&self) -> Vec<u32> {
        let mut inv = vec![0; self.values.len()];
        for (pos, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = pos as u32 + 1;
        }
        inv
    }

    /// Drops the entry at `pos` (0-based) and renumbers the remaining
    /// values to `1..n-1`, preserving relative order.
    pub fn without_position(&self, pos: usize) -> Option<Self> {
        if self.values.len() < 2 || pos >= self.values.len() {
            return None;
        }
        let removed = self.values[pos];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != pos)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Some(Self { values })
    }

    /// Text form: `n` on the first line, the values on the second.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.values.iter().map(u32::to_string).collect();
        format!("{}\n{}\n", self.values.len(), body.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing size line".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad size: {e}")))?;
        let values = tokens
            .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("bad value {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if values.len() != n {
            return Err(Error::Parse(format!("header says {n} values, found {}", values.len())));
        }
        Permutation::new(values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: u32,
    pub y: u32,
}

impl Point {
    pub fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrant {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

/// Adjacency in the grid representation: one point lies strictly
/// top-left or bottom-right of the other.
pub fn is_adjacent(p: Point, q: Point) -> bool {
    (q.x < p.x && q.y > p.y) || (q.x > p.x && q.y < p.y)
}

pub fn in_quadrant(p: Point, q: Point, which: Quadrant) -> bool {
    match which {
        Quadrant::TopLeft => q.x < p.x && q.y > p.y,
        Quadrant::TopRight => q.x > p.x && q.y > p.y,
        Quadrant::BottomLeft => q.x < p.x && q.y < p.y,
        Quadrant::BottomRight => q.x > p.x && q.y < p.y,
    }
}

/// `n` points whose x and y coordinates are both exactly `1..=n`.
///
/// Stored by column: the point with x coordinate `x` has y coordinate
/// `ys[x - 1]`, so point indices are `x - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    ys: Vec<u32>,
}

impl PointSet {
    /// Builds a set from column heights, validating that they form a
    /// permutation of `1..=n`.
    pub fn from_ys(ys: Vec<u32>) -> Result<Self> {
        Permutation::new(ys.clone())?;
        Ok(Self { ys })
    }

    /// Arbitrary distinct points, renumbered to consecutive coordinates
    /// preserving both orders.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        let mut by_x: Vec<Point> = points.to_vec();
        by_x.sort_unstable_by_key(|p| p.x);
        let mut ys: Vec<u32> = by_x.iter().map(|p| p.y).collect();
        let mut sorted = ys.clone();
        sorted.sort_unstable();
        if by_x.windows(2).any(|w| w[0].x == w[1].x) || sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPermutation { n: points.len(), reason: "coordinates are not distinct".into() });
        }
        for y in ys.iter_mut() {
            *y = sorted.binary_search(y).expect("present") as u32 + 1;
        }
        Self::from_ys(ys)
    }

    /// Value `i` becomes the point `(i, position of i in the permutation)`.
    pub fn from_permutation(perm: &Permutation) -> Self {
        Self { ys: perm.inverse() }
    }

    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn y_of(&self, x: u32) -> u32 {
        self.ys[x as usize - 1]
    }

    pub fn point(&self, idx: usize) -> Point {
        Point::new(idx as u32 + 1, self.ys[idx])
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = Point> + '_ {
        self.ys.iter().enumerate().map(|(k, &y)| Point::new(k as u32 + 1, y))
    }

    pub fn ys(&self) -> &[u32] {
        &self.ys
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= 1 && (p.x as usize) <= self.ys.len() && self.ys[p.x as usize - 1] == p.y
    }

    pub fn quadrant(&self, p: Point, which: Quadrant) -> Vec<Point> {
        self.points().filter(|&q| in_quadrant(p, q, which)).collect()
    }

    /// Index lists of connected components, largest first, ties broken by
    /// smallest member x. Members of each component are sorted by x.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        let mut search = crate::oracle::NeighborSearch::new(self);
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            search.remove(start);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                search.drain_neighbors(u, |w| {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                });
            }
            members.sort_unstable();
            out.push(members);
        }
        // Components are discovered in order of their smallest x, so a stable
        // sort by size keeps the tie-break.
        out.sort_by_key(|c| std::cmp::Reverse(c.len()));
        out
    }

    /// Connected components as renumbered point sets, with the original
    /// x coordinates of their members.
    pub fn components(&self) -> Vec<Component> {
        self.component_indices()
            .into_iter()
            .map(|members| {
                let points: Vec<Point> = members.iter().map(|&k| self.point(k)).collect();
                Component {
                    set: PointSet::from_points(&points).expect("subset of a valid set"),
                    original_x: members.iter().map(|&k| k as u32 + 1).collect(),
                }
            })
            .collect()
    }
}

/// A connected component renumbered to its own grid; `original_x[k]` is
/// the x coordinate (vertex id) that local point `k` had in the full set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub set: PointSet,
    pub original_x: Vec<u32>,
}

pub fn random_permutation(n: usize, seed: u64) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::EmptyPermutation);
    }
    let mut values: Vec<u32> = (1..=n as u32).collect();
    SplitMix64::new(seed).shuffle(&mut values);
    Ok(Permutation { values })
}

pub const MAX_ENUMERATION: usize = 9;

/// All permutations of `1..=n` in lexicographic order.
pub fn enumerate_permutations(n: usize) -> Result<Lexicographic> {
    if n > MAX_ENUMERATION {
        return Err(Error::EnumerationTooLarge { n, max: MAX_ENUMERATION });
    }
    if n == 0 {
        return Err(Error::EmptyPermutation);
    }
    Ok(Lexicographic { next: Some((1..=n as u32).collect()) })
}

#[derive(Debug, Clone)]
pub struct Lexicographic {
    next: Option<Vec<u32>>,
}

impl Iterator for Lexicographic {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Standard next-permutation step.
        if let Some(i) = (0..succ.len().saturating_sub(1)).rev().find(|&i| succ[i] < succ[i + 1]) {
            let j = (i + 1..succ.len()).rev().find(|&j| succ[j] > succ[i]).expect("exists");
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { values: current })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> PointSet {
        PointSet::from_permutation(&Permutation::new(vec![1, 8, 3, 2, 6, 4, 7, 5]).unwrap())
    }

    fn pts(list: &[(u32, u32)]) -> Vec<Point> {
        list.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn grid_of_sample() {
        let got: Vec<Point> = fig3().points().collect();
        assert_eq!(got, pts(&[(1, 1), (2, 4), (3, 3), (4, 6), (5, 8), (6, 5), (7, 7), (8, 2)]));
    }

    #[test]
    fn grid_small_cases() {
        let single = PointSet::from_permutation(&Permutation::new(vec![1]).unwrap());
        assert_eq!(single.points().collect::<Vec<_>>(), pts(&[(1, 1)]));
        let rev = PointSet::from_permutation(&Permutation::new(vec![3, 2, 1]).unwrap());
        assert_eq!(rev.points().collect::<Vec<_>>(), pts(&[(1, 3), (2, 2), (3, 1)]));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 4, 2]).is_err());
        assert_eq!(Permutation::new(vec![]), Err(Error::EmptyPermutation));
    }

    #[test]
    fn adjacency_examples() {
        let p = Point::new(4, 6);
        assert!(is_adjacent(p, Point::new(6, 5)));
        assert!(is_adjacent(p, Point::new(8, 2)));
        assert!(!is_adjacent(p, Point::new(2, 4)));
        assert!(!is_adjacent(Point::new(1, 1), Point::new(2, 4)));
    }

    #[test]
    fn quadrant_examples() {
        let s = fig3();
        assert_eq!(s.quadrant(Point::new(4, 6), Quadrant::BottomRight), pts(&[(6, 5), (8, 2)]));
        assert!(s.quadrant(Point::new(4, 6), Quadrant::TopLeft).is_empty());
        assert!(s.quadrant(Point::new(1, 1), Quadrant::TopLeft).is_empty());
        assert_eq!(s.quadrant(Point::new(8, 2), Quadrant::BottomLeft), pts(&[(1, 1)]));
    }

    #[test]
    fn components_examples() {
        let comps = fig3().components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].original_x, vec![2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(comps[1].original_x, vec![1]);

        let id = PointSet::from_permutation(&Permutation::identity(4)).components();
        assert_eq!(id.len(), 4);
        assert!(id.iter().all(|c| c.set.len() == 1));
        assert_eq!(id.iter().map(|c| c.original_x[0]).collect::<Vec<_>>(), vec![1, 2, 3, 4]);

        let rev = PointSet::from_permutation(&Permutation::new(vec![3, 2, 1]).unwrap());
        assert_eq!(rev.components().len(), 1);
    }

    #[test]
    fn random_permutation_contract() {
        assert_eq!(random_permutation(1, 42).unwrap().values(), &[1]);
        assert_eq!(random_permutation(5, 7).unwrap(), random_permutation(5, 7).unwrap());
        let big = random_permutation(10_000, 1).unwrap();
        assert!(Permutation::new(big.values().to_vec()).is_ok());
        assert_eq!(random_permutation(0, 1), Err(Error::EmptyPermutation));
    }

    #[test]
    fn enumeration_contract() {
        let one: Vec<_> = enumerate_permutations(1).unwrap().collect();
        assert_eq!(one, vec![Permutation::identity(1)]);
        let three: Vec<_> = enumerate_permutations(3).unwrap().collect();
        assert_eq!(three.len(), 6);
        assert_eq!(three[0].values(), &[1, 2, 3]);
        assert_eq!(three[5].values(), &[3, 2, 1]);
        assert!(three.windows(2).all(|w| w[0].values() < w[1].values()));
        assert_eq!(enumerate_permutations(7).unwrap().count(), 5040);
        assert!(enumerate_permutations(10).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = Permutation::new(vec![1, 8, 3, 2, 6, 4, 7, 5]).unwrap();
        assert_eq!(p.to_text(), "8\n1 8 3 2 6 4 7 5\n");
        assert_eq!(p.to_text().parse::<Permutation>().unwrap(), p);
        assert!("3\n1 2".parse::<Permutation>().is_err());
    }

    #[test]
    fn removal_renumbers() {
        let p = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        assert_eq!(p.without_position(0).unwrap().values(), &[1, 3, 2]);
        assert_eq!(p.without_position(2).unwrap().values(), &[3, 1, 2]);
    }
}
