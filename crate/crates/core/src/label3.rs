//! The 3 log n scheme.
//!
//! Each vertex `v` stores the four layer numbers of its extreme neighbors
//! (packed), and just two ranks:
//!
//! * `y_val` stands for both `lambda(Blast(v))` and `lambda(Tfirst(v))`.
//!   If `Blast(v)` is last in its layer the flag `binf` is set, `Blast`
//!   is read as infinity and `y_val` is the exact `lambda(Tfirst(v))`.
//!   Otherwise `y_val` is a fresh value just below `lambda(w)`, where `w`
//!   is the boundary point above `v` with the smallest rank exceeding
//!   `lambda(Blast(v))`.
//! * `x_val` does the same for `Tlast(v)` (flag `tinf`) and `Bfirst(v)`,
//!   with the anchor taken among boundary points right of `v`.
//!
//! All stored values of a component are then renumbered to consecutive
//! integers, keeping their order, so they fit in about `log n` bits.
//!
//! Label layout, most significant bit first:
//!
//! ```text
//! gamma(component + 1) | width_L:6 | width_V:6 | l_bfirst:width_L
//! | offsets:2+2+2 | binf:1 | y_val:width_V | tinf:1 | x_val:width_V
//! ```

use std::collections::BTreeSet;

use crate::bits::{width_for, BitString};
use crate::boundaries::{Anchor, BoundaryStructure, ExtLambda, ExtremeNeighbors};
use crate::error::{Error, Result};
use crate::graph::PointSet;
use crate::layout::{read_component, write_component, PackedLayers, PreparedComponent, View, OFFSET_BITS};
use crate::oracle::Distance;

/// Which pair of ranks a fresh value replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreshKind {
    /// Replaces `lambda(Blast)` and `lambda(Tfirst)`.
    Y,
    /// Replaces `lambda(Tlast)` and `lambda(Bfirst)`.
    X,
}

/// A stored rank before renumbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CollapsedValue {
    Real(u32),
    /// Just below `anchor`, above every real rank smaller than `anchor`.
    /// Fresh values sharing an anchor are ordered by kind (`Y` first), then
    /// by the owner's coordinate (y for `Y`, x for `X`).
    Fresh {
        anchor: u32,
        kind: FreshKind,
        coord: u32,
    },
}

impl CollapsedValue {
    fn sort_key(&self) -> (u32, u8, FreshKind, u32) {
        match *self {
            CollapsedValue::Real(r) => (r, 1, FreshKind::Y, 0),
            CollapsedValue::Fresh { anchor, kind, coord } => (anchor, 0, kind, coord),
        }
    }
}

impl PartialOrd for CollapsedValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CollapsedValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// The encoder's choice for one vertex before renumbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collapsed {
    pub binf: bool,
    pub y_val: CollapsedValue,
    pub tinf: bool,
    pub x_val: CollapsedValue,
}

/// Collapses the four ranks of one vertex (point index `v` of the
/// augmented set). Scans all boundary points; [`collapse_all`] is the
/// batched equivalent used by the encoder.
pub fn collapse(set: &PointSet, bs: &BoundaryStructure, v: usize, e: &ExtremeNeighbors) -> Result<Collapsed> {
    let p = set.point(v);
    let lam = |k| bs.lambda(k).expect("boundary point");
    let boundary = bs.boundaries.all();
    let anchor = |above: bool, floor: u32| -> Result<u32> {
        boundary
            .iter()
            .filter(|&&k| {
                let q = set.point(k);
                if above {
                    q.y > p.y
                } else {
                    q.x > p.x
                }
            })
            .map(|&k| lam(k))
            .filter(|&l| l > floor)
            .min()
            .ok_or_else(|| Error::Internal(format!("no anchor for vertex at {p}")))
    };

    let binf = bs.layers.is_last(e.blast);
    let y_val = if binf {
        CollapsedValue::Real(lam(e.tfirst))
    } else {
        CollapsedValue::Fresh { anchor: anchor(true, lam(e.blast))?, kind: FreshKind::Y, coord: p.y }
    };
    let tinf = bs.layers.is_last(e.tlast);
    let x_val = if tinf {
        CollapsedValue::Real(lam(e.bfirst))
    } else {
        CollapsedValue::Fresh { anchor: anchor(false, lam(e.tlast))?, kind: FreshKind::X, coord: p.x }
    };
    Ok(Collapsed { binf, y_val, tinf, x_val })
}

/// For each query `(key, floor)`, the smallest rank above `floor` among
/// boundary points whose key exceeds the query key. `points` holds
/// `(key, rank)`.
fn min_rank_above(points: &mut [(u32, u32)], queries: &[(u32, u32)]) -> Vec<Option<u32>> {
    points.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
    let mut order: Vec<usize> = (0..queries.len()).collect();
    order.sort_unstable_by(|&a, &b| queries[b].0.cmp(&queries[a].0));
    let mut ranks = BTreeSet::new();
    let mut next = 0;
    let mut out = vec![None; queries.len()];
    for q in order {
        let (key, floor) = queries[q];
        while next < points.len() && points[next].0 > key {
            ranks.insert(points[next].1);
            next += 1;
        }
        out[q] = ranks.range(floor + 1..).next().copied();
    }
    out
}

/// [`collapse`] for every input vertex of a prepared component, in
/// `O(n log n)`.
pub fn collapse_all(prep: &PreparedComponent) -> Result<Vec<Collapsed>> {
    let set = &prep.aug.points;
    let bs = &prep.structure;
    let lam = |k| bs.lambda(k).expect("boundary point");
    let boundary = bs.boundaries.all();
    let mut by_y: Vec<(u32, u32)> = boundary.iter().map(|&k| (set.point(k).y, lam(k))).collect();
    let mut by_x: Vec<(u32, u32)> = boundary.iter().map(|&k| (set.point(k).x, lam(k))).collect();

    let y_queries: Vec<(u32, u32)> =
        prep.aug.back_map.iter().zip(&prep.extremes).map(|(&v, e)| (set.point(v).y, lam(e.blast))).collect();
    let x_queries: Vec<(u32, u32)> =
        prep.aug.back_map.iter().zip(&prep.extremes).map(|(&v, e)| (set.point(v).x, lam(e.tlast))).collect();
    let y_anchor = min_rank_above(&mut by_y, &y_queries);
    let x_anchor = min_rank_above(&mut by_x, &x_queries);

    prep.aug
        .back_map
        .iter()
        .zip(&prep.extremes)
        .enumerate()
        .map(|(i, (&v, e))| {
            let p = set.point(v);
            let missing = || Error::Internal(format!("no anchor for vertex at {p}"));
            let binf = bs.layers.is_last(e.blast);
            let y_val = if binf {
                CollapsedValue::Real(lam(e.tfirst))
            } else {
                CollapsedValue::Fresh { anchor: y_anchor[i].ok_or_else(missing)?, kind: FreshKind::Y, coord: p.y }
            };
            let tinf = bs.layers.is_last(e.tlast);
            let x_val = if tinf {
                CollapsedValue::Real(lam(e.bfirst))
            } else {
                CollapsedValue::Fresh { anchor: x_anchor[i].ok_or_else(missing)?, kind: FreshKind::X, coord: p.x }
            };
            Ok(Collapsed { binf, y_val, tinf, x_val })
        })
        .collect()
}

/// Decoded fields of a 3 log n label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    pub component: u64,
    pub layers: PackedLayers,
    pub binf: bool,
    pub y_val: u64,
    pub tinf: bool,
    pub x_val: u64,
}

/// Field widths, written into every label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelCodec {
    pub width_l: u32,
    pub width_v: u32,
}

/// Bits of the two width fields.
pub const HEADER_BITS: u32 = 12;

impl LabelCodec {
    /// Exact length of a serialized label for the given component index.
    pub fn label_len(&self, component: u64) -> usize {
        crate::bits::gamma_len(component + 1)
            + HEADER_BITS as usize
            + self.width_l as usize
            + OFFSET_BITS as usize
            + 2
            + 2 * self.width_v as usize
    }
}

pub fn serialize_label(label: &VertexLabel, codec: LabelCodec) -> Result<BitString> {
    for w in [codec.width_l, codec.width_v] {
        if w > 63 {
            return Err(Error::WidthOverflow { value: w as u64, width: 6 });
        }
    }
    let mut out = BitString::new();
    write_component(&mut out, label.component);
    out.push(codec.width_l as u64, 6)?;
    out.push(codec.width_v as u64, 6)?;
    label.layers.write(&mut out, codec.width_l)?;
    out.push_bit(label.binf);
    out.push(label.y_val, codec.width_v)?;
    out.push_bit(label.tinf);
    out.push(label.x_val, codec.width_v)?;
    Ok(out)
}

pub fn deserialize_label(bits: &BitString) -> Result<(VertexLabel, LabelCodec)> {
    let mut r = bits.reader();
    let component = read_component(&mut r)?;
    let codec = LabelCodec { width_l: r.read(6)? as u32, width_v: r.read(6)? as u32 };
    let layers = PackedLayers::read(&mut r, codec.width_l)?;
    let binf = r.bit()?;
    let y_val = r.read(codec.width_v)?;
    let tinf = r.bit()?;
    let x_val = r.read(codec.width_v)?;
    r.finish()?;
    Ok((VertexLabel { component, layers, binf, y_val, tinf, x_val }, codec))
}

/// Dense order-preserving renumbering of every stored value.
fn renumber(collapsed: &[Collapsed]) -> Vec<(u64, u64)> {
    let mut all: Vec<CollapsedValue> = collapsed.iter().flat_map(|c| [c.y_val, c.x_val]).collect();
    all.sort_unstable();
    all.dedup();
    let rank = |v: &CollapsedValue| all.binary_search(v).expect("present") as u64;
    collapsed.iter().map(|c| (rank(&c.y_val), rank(&c.x_val))).collect()
}

/// Labels of a connected component, one per point in x order.
pub fn encode_component(set: &PointSet, index: u64) -> Result<Vec<BitString>> {
    if set.len() == 1 {
        return Ok(vec![singleton_label(index)]);
    }
    let prep = PreparedComponent::new(set)?;
    encode_prepared(&prep, index)
}

pub(crate) fn singleton_label(index: u64) -> BitString {
    let label =
        VertexLabel { component: index, layers: PackedLayers::zero(), binf: false, y_val: 0, tinf: false, x_val: 0 };
    serialize_label(&label, LabelCodec { width_l: 0, width_v: 0 }).expect("zero fields fit")
}

pub fn encode_prepared(prep: &PreparedComponent, index: u64) -> Result<Vec<BitString>> {
    vertex_labels(prep, index)?.into_iter().map(|(label, codec)| serialize_label(&label, codec)).collect()
}

/// Unserialized labels of a prepared component, with the shared codec.
pub fn vertex_labels(prep: &PreparedComponent, index: u64) -> Result<Vec<(VertexLabel, LabelCodec)>> {
    let collapsed = collapse_all(prep)?;
    let values = renumber(&collapsed);
    let max_value = values.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
    let codec =
        LabelCodec { width_l: width_for(u64::from(prep.max_layer())).max(1), width_v: width_for(max_value).max(1) };
    prep.extremes
        .iter()
        .zip(collapsed.iter().zip(values))
        .map(|(e, (c, (y_val, x_val)))| {
            Ok((
                VertexLabel { component: index, layers: prep.layers_of(e)?, binf: c.binf, y_val, tinf: c.tinf, x_val },
                codec,
            ))
        })
        .collect()
}

/// The (layer, rank) view a decoder reconstructs from a label. Collapsed
/// values stand in for real ranks; flagged extremes read as infinity.
pub fn view_of(label: &VertexLabel) -> View {
    let l = &label.layers;
    let y = ExtLambda::Finite(label.y_val);
    let x = ExtLambda::Finite(label.x_val);
    View {
        tfirst: Anchor::new(l.tfirst(), y),
        blast: Anchor::new(l.blast(), if label.binf { ExtLambda::Infinity } else { y }),
        bfirst: Anchor::new(l.bfirst, x),
        tlast: Anchor::new(l.tlast(), if label.tinf { ExtLambda::Infinity } else { x }),
    }
}

/// Distance between two vertices from their labels alone.
pub fn decode_distance(a: &BitString, b: &BitString) -> Result<Distance> {
    let (la, ca) = deserialize_label(a)?;
    let (lb, cb) = deserialize_label(b)?;
    if la.component != lb.component {
        return Ok(Distance::Unreachable);
    }
    if a == b {
        return Ok(Distance::Finite(0));
    }
    if ca.width_l == 0 || cb.width_l == 0 {
        return Err(Error::MalformedLabel("two distinct labels in a one-vertex component".into()));
    }
    Ok(Distance::Finite(distance_between(&view_of(&la), &view_of(&lb))))
}

pub(crate) fn distance_between(u: &View, v: &View) -> u32 {
    if u.nested(v) {
        1
    } else if u.overlapping(v) {
        2
    } else {
        u.far_distance(v)
    }
}
