//! The two intermediate schemes: real ranks of all four extreme neighbors,
//! with (7 log n) or without (5 log n) the vertex's own coordinates in the
//! augmented grid.
//!
//! Layout, most significant bit first:
//!
//! ```text
//! L7: gamma(component + 1) | width_C:6 | width_L:6 | width_R:6 | x:width_C | y:width_C
//!     | l_bfirst:width_L | offsets:6 | 4 x rank:width_R (Bfirst, Blast, Tfirst, Tlast)
//! L5: the same without width_C, x and y.
//! ```
//!
//! With coordinates, adjacency is a quadrant test. Without them it is the
//! strict nesting of extreme-neighbor ranges.

use crate::bits::{width_for, BitString};
use crate::boundaries::{Anchor, ExtLambda};
use crate::error::{Error, Result};
use crate::graph::{is_adjacent, Point};
use crate::label3::distance_between;
use crate::layout::{read_component, write_component, PackedLayers, PreparedComponent, View};
use crate::oracle::Distance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Label5 {
    pub component: u64,
    pub layers: PackedLayers,
    /// Ranks of Bfirst, Blast, Tfirst, Tlast.
    pub ranks: [u64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Label7 {
    pub base: Label5,
    pub x: u64,
    pub y: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaselineWidths {
    pub coord: u32,
    pub layer: u32,
    pub rank: u32,
}

fn base_labels(prep: &PreparedComponent, index: u64) -> Result<(Vec<Label5>, BaselineWidths)> {
    let bs = &prep.structure;
    let lam = |k| u64::from(bs.lambda(k).expect("boundary point"));
    let labels = prep
        .extremes
        .iter()
        .map(|e| {
            Ok(Label5 {
                component: index,
                layers: prep.layers_of(e)?,
                ranks: [lam(e.bfirst), lam(e.blast), lam(e.tfirst), lam(e.tlast)],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let widths = BaselineWidths {
        coord: width_for(prep.aug.points.len() as u64),
        layer: width_for(u64::from(prep.max_layer())).max(1),
        rank: width_for(bs.boundary_count() as u64),
    };
    Ok((labels, widths))
}

fn check_width(w: u32) -> Result<()> {
    if w > 63 {
        return Err(Error::WidthOverflow { value: u64::from(w), width: 6 });
    }
    Ok(())
}

fn write_base(out: &mut BitString, l: &Label5, w: &BaselineWidths) -> Result<()> {
    l.layers.write(out, w.layer)?;
    for &r in &l.ranks {
        out.push(r, w.rank)?;
    }
    Ok(())
}

pub fn serialize5(l: &Label5, w: &BaselineWidths) -> Result<BitString> {
    check_width(w.layer)?;
    check_width(w.rank)?;
    let mut out = BitString::new();
    write_component(&mut out, l.component);
    out.push(u64::from(w.layer), 6)?;
    out.push(u64::from(w.rank), 6)?;
    write_base(&mut out, l, w)?;
    Ok(out)
}

pub fn serialize7(l: &Label7, w: &BaselineWidths) -> Result<BitString> {
    check_width(w.coord)?;
    check_width(w.layer)?;
    check_width(w.rank)?;
    let mut out = BitString::new();
    write_component(&mut out, l.base.component);
    out.push(u64::from(w.coord), 6)?;
    out.push(u64::from(w.layer), 6)?;
    out.push(u64::from(w.rank), 6)?;
    out.push(l.x, w.coord)?;
    out.push(l.y, w.coord)?;
    write_base(&mut out, &l.base, w)?;
    Ok(out)
}

fn read_base(r: &mut crate::bits::BitReader<'_>, component: u64, w: &BaselineWidths) -> Result<Label5> {
    let layers = PackedLayers::read(r, w.layer)?;
    let mut ranks = [0u64; 4];
    for slot in &mut ranks {
        *slot = r.read(w.rank)?;
    }
    Ok(Label5 { component, layers, ranks })
}

pub fn deserialize5(bits: &BitString) -> Result<(Label5, BaselineWidths)> {
    let mut r = bits.reader();
    let component = read_component(&mut r)?;
    let w = BaselineWidths { coord: 0, layer: r.read(6)? as u32, rank: r.read(6)? as u32 };
    let l = read_base(&mut r, component, &w)?;
    r.finish()?;
    Ok((l, w))
}

pub fn deserialize7(bits: &BitString) -> Result<(Label7, BaselineWidths)> {
    let mut r = bits.reader();
    let component = read_component(&mut r)?;
    let w = BaselineWidths { coord: r.read(6)? as u32, layer: r.read(6)? as u32, rank: r.read(6)? as u32 };
    let x = r.read(w.coord)?;
    let y = r.read(w.coord)?;
    let base = read_base(&mut r, component, &w)?;
    r.finish()?;
    Ok((Label7 { base, x, y }, w))
}

pub fn encode5_prepared(prep: &PreparedComponent, index: u64) -> Result<Vec<BitString>> {
    let (labels, w) = base_labels(prep, index)?;
    labels.iter().map(|l| serialize5(l, &w)).collect()
}

pub fn encode7_prepared(prep: &PreparedComponent, index: u64) -> Result<Vec<BitString>> {
    let (labels, w) = base_labels(prep, index)?;
    labels
        .into_iter()
        .zip(&prep.aug.back_map)
        .map(|(base, &idx)| {
            let p = prep.aug.points.point(idx);
            serialize7(&Label7 { base, x: u64::from(p.x), y: u64::from(p.y) }, &w)
        })
        .collect()
}

pub(crate) fn singleton5(index: u64) -> BitString {
    let l = Label5 { component: index, layers: PackedLayers::zero(), ranks: [0; 4] };
    serialize5(&l, &BaselineWidths { coord: 0, layer: 0, rank: 0 }).expect("zero fields fit")
}

pub(crate) fn singleton7(index: u64) -> BitString {
    let l = Label7 { base: Label5 { component: index, layers: PackedLayers::zero(), ranks: [0; 4] }, x: 0, y: 0 };
    serialize7(&l, &BaselineWidths { coord: 0, layer: 0, rank: 0 }).expect("zero fields fit")
}

fn view(l: &Label5) -> View {
    let f = |r: u64| ExtLambda::Finite(r);
    View {
        bfirst: Anchor::new(l.layers.bfirst, f(l.ranks[0])),
        blast: Anchor::new(l.layers.blast(), f(l.ranks[1])),
        tfirst: Anchor::new(l.layers.tfirst(), f(l.ranks[2])),
        tlast: Anchor::new(l.layers.tlast(), f(l.ranks[3])),
    }
}

pub fn decode5(a: &BitString, b: &BitString) -> Result<Distance> {
    let (la, wa) = deserialize5(a)?;
    let (lb, wb) = deserialize5(b)?;
    if la.component != lb.component {
        return Ok(Distance::Unreachable);
    }
    if a == b {
        return Ok(Distance::Finite(0));
    }
    if wa.layer == 0 || wb.layer == 0 {
        return Err(Error::MalformedLabel("two distinct labels in a one-vertex component".into()));
    }
    Ok(Distance::Finite(distance_between(&view(&la), &view(&lb))))
}

pub fn decode7(a: &BitString, b: &BitString) -> Result<Distance> {
    let (la, wa) = deserialize7(a)?;
    let (lb, wb) = deserialize7(b)?;
    if la.base.component != lb.base.component {
        return Ok(Distance::Unreachable);
    }
    if a == b {
        return Ok(Distance::Finite(0));
    }
    if wa.layer == 0 || wb.layer == 0 {
        return Err(Error::MalformedLabel("two distinct labels in a one-vertex component".into()));
    }
    let pa = Point::new(la.x as u32, la.y as u32);
    let pb = Point::new(lb.x as u32, lb.y as u32);
    if is_adjacent(pa, pb) {
        return Ok(Distance::Finite(1));
    }
    let (va, vb) = (view(&la.base), view(&lb.base));
    Ok(Distance::Finite(if va.overlapping(&vb) { 2 } else { va.far_distance(&vb) }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Permutation, PointSet};

    #[test]
    fn round_trips() {
        let l5 = Label5 { component: 2, layers: PackedLayers::new(3, 5, 4, 4).unwrap(), ranks: [1, 7, 15, 0] };
        let w = BaselineWidths { coord: 6, layer: 3, rank: 4 };
        assert_eq!(deserialize5(&serialize5(&l5, &w).unwrap()).unwrap(), (l5, BaselineWidths { coord: 0, ..w }));
        let l7 = Label7 { base: l5, x: 63, y: 1 };
        assert_eq!(deserialize7(&serialize7(&l7, &w).unwrap()).unwrap(), (l7, w));
    }

    #[test]
    fn adjacent_pair_via_coordinates() {
        let set = PointSet::from_permutation(&Permutation::new(vec![2, 1]).unwrap());
        let prep = PreparedComponent::new(&set).unwrap();
        let l7 = encode7_prepared(&prep, 0).unwrap();
        let l5 = encode5_prepared(&prep, 0).unwrap();
        assert_eq!(decode7(&l7[0], &l7[1]).unwrap(), Distance::Finite(1));
        assert_eq!(decode5(&l5[0], &l5[1]).unwrap(), Distance::Finite(1));
    }
}
