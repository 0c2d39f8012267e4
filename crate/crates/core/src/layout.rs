//! Pieces shared by all three labeling schemes: the augmented component
//! with its boundary structure, packed layer numbers, and the range and
//! anchor logic decoders run on (layer, rank) views of extreme neighbors.

use crate::augment::{augment, AugmentedSet};
use crate::bits::{BitReader, BitString};
use crate::boundaries::{anchor_distance, Anchor, BoundaryStructure, ExtremeNeighbors};
use crate::error::{Error, Result};
use crate::graph::PointSet;

/// A connected component after augmentation, with everything the encoders
/// read from it.
#[derive(Debug, Clone)]
pub struct PreparedComponent {
    pub aug: AugmentedSet,
    pub structure: BoundaryStructure,
    /// Extreme neighbors of each input vertex, by input point index.
    pub extremes: Vec<ExtremeNeighbors>,
}

impl PreparedComponent {
    pub fn new(set: &PointSet) -> Result<Self> {
        let aug = augment(set)?;
        let structure = BoundaryStructure::build(&aug.points)?;
        let extremes = aug
            .back_map
            .iter()
            .map(|&idx| structure.extreme_neighbors(&aug.points, idx))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { aug, structure, extremes })
    }

    pub fn layers_of(&self, e: &ExtremeNeighbors) -> Result<PackedLayers> {
        let l = |idx| self.structure.layer(idx).expect("boundary point");
        PackedLayers::new(l(e.bfirst), l(e.blast), l(e.tfirst), l(e.tlast))
    }

    pub fn max_layer(&self) -> u32 {
        self.structure.layers.count() as u32 - 1
    }
}

/// The four layer numbers of a vertex's extreme neighbors, stored as the
/// layer of `Bfirst` plus three small offsets.
///
/// Offsets are 2-bit codes: `00` = +1, `01` = -1, `10` = +2, `11` = 0.
/// A vertex sees at most three consecutive layers, so `Blast` is at offset
/// 0 or +2 and both top extremes at -1 or +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PackedLayers {
    pub bfirst: u32,
    /// Offsets of `Blast`, `Tfirst`, `Tlast` relative to `bfirst`.
    pub offsets: [i8; 3],
}

pub const OFFSET_BITS: u32 = 6;

impl PackedLayers {
    pub fn new(bfirst: u32, blast: u32, tfirst: u32, tlast: u32) -> Result<Self> {
        let off = |l: u32| -> Result<i8> {
            let d = i64::from(l) - i64::from(bfirst);
            if (-1..=2).contains(&d) {
                Ok(d as i8)
            } else {
                Err(Error::Internal(format!(
                    "layer offset {d} out of range (layers {bfirst},{blast},{tfirst},{tlast})"
                )))
            }
        };
        Ok(Self { bfirst, offsets: [off(blast)?, off(tfirst)?, off(tlast)?] })
    }

    pub fn zero() -> Self {
        Self { bfirst: 0, offsets: [0; 3] }
    }

    fn layer(&self, k: usize) -> u32 {
        (i64::from(self.bfirst) + i64::from(self.offsets[k])) as u32
    }

    pub fn blast(&self) -> u32 {
        self.layer(0)
    }

    pub fn tfirst(&self) -> u32 {
        self.layer(1)
    }

    pub fn tlast(&self) -> u32 {
        self.layer(2)
    }

    pub fn write(&self, out: &mut BitString, width: u32) -> Result<()> {
        out.push(u64::from(self.bfirst), width)?;
        for &d in &self.offsets {
            let code = match d {
                1 => 0b00,
                -1 => 0b01,
                2 => 0b10,
                0 => 0b11,
                _ => unreachable!("checked in new"),
            };
            out.push(code, 2)?;
        }
        Ok(())
    }

    pub fn read(r: &mut BitReader<'_>, width: u32) -> Result<Self> {
        let bfirst = r.read(width)? as u32;
        let mut offsets = [0i8; 3];
        for slot in &mut offsets {
            *slot = match r.read(2)? {
                0b00 => 1,
                0b01 => -1,
                0b10 => 2,
                _ => 0,
            };
        }
        if offsets.iter().any(|&d| d < 0) && bfirst == 0 {
            return Err(Error::MalformedLabel("negative layer".into()));
        }
        Ok(Self { bfirst, offsets })
    }
}

/// What a decoder knows about one vertex: (layer, rank) of its four
/// extreme neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct View {
    pub bfirst: Anchor,
    pub blast: Anchor,
    pub tfirst: Anchor,
    pub tlast: Anchor,
}

impl View {
    fn bottom_inside(&self, outer: &View) -> bool {
        outer.bfirst.boundary_cmp(&self.bfirst).is_lt() && self.blast.boundary_cmp(&outer.blast).is_lt()
    }

    fn top_inside(&self, outer: &View) -> bool {
        outer.tfirst.boundary_cmp(&self.tfirst).is_lt() && self.tlast.boundary_cmp(&outer.tlast).is_lt()
    }

    /// Strict nesting of either vertex's range inside the other's, on
    /// either boundary.
    pub fn nested(&self, other: &View) -> bool {
        self.bottom_inside(other) || other.bottom_inside(self) || self.top_inside(other) || other.top_inside(self)
    }

    /// Closed ranges share a point on some boundary.
    pub fn overlapping(&self, other: &View) -> bool {
        let meet = |a0: &Anchor, a1: &Anchor, b0: &Anchor, b1: &Anchor| {
            a0.boundary_cmp(b1).is_le() && b0.boundary_cmp(a1).is_le()
        };
        meet(&self.bfirst, &self.blast, &other.bfirst, &other.blast)
            || meet(&self.tfirst, &self.tlast, &other.tfirst, &other.tlast)
    }

    /// Two edges to reach the anchors plus the best anchor-to-anchor
    /// distance, trying both vertices as the left one.
    pub fn far_distance(&self, other: &View) -> u32 {
        let one_way = |left: &View, right: &View| {
            [left.blast, left.tlast]
                .into_iter()
                .flat_map(|s| [right.bfirst, right.tfirst].map(move |t| anchor_distance(s, t)))
                .min()
                .expect("non-empty")
        };
        2 + one_way(self, other).min(one_way(other, self))
    }
}

/// Encoded component index: Elias gamma of `index + 1`.
pub fn write_component(out: &mut BitString, index: u64) {
    out.push_gamma(index + 1);
}

pub fn read_component(r: &mut BitReader<'_>) -> Result<u64> {
    Ok(r.gamma()? - 1)
}
