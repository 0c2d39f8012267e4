//! Static SVG drawing of a grid representation.
//!
//! Boundary points of each component are drawn in red (top) or green
//! (bottom) and tagged with their layer. Points of an augmented set can be
//! outlined by origin instead.

use std::fmt::Write;

use crate::augment::{augment, AugmentedSet, Origin};
use crate::boundaries::{Boundaries, Layering};
use crate::error::Result;
use crate::graph::{Permutation, PointSet};

const CELL: u32 = 28;
const MARGIN: u32 = 30;

const TOP: &str = "#d62728";
const BOTTOM: &str = "#2ca02c";
const INTERIOR: &str = "#444444";

fn origin_color(o: &Origin) -> &'static str {
    match o {
        Origin::Original(_) => "#000000",
        Origin::BoundaryClear(_) => "#9467bd",
        Origin::AuxB(_) | Origin::AuxBPrime(_) => "#17becf",
        Origin::AuxT(_) | Origin::AuxTPrime(_) => "#ff7f0e",
    }
}

/// Per point: fill color and optional layer tag.
fn boundary_style(set: &PointSet) -> Vec<(&'static str, Option<u32>)> {
    let mut style = vec![(INTERIOR, None); set.len()];
    for comp in set.components() {
        if comp.set.len() < 2 {
            continue;
        }
        let b = Boundaries::compute(&comp.set);
        let layers = Layering::compute(&comp.set, &b).ok();
        for local in b.all() {
            let color = if b.on_top(local) { TOP } else { BOTTOM };
            let layer = layers.as_ref().and_then(|l| l.of(local));
            style[comp.original_x[local] as usize - 1] = (color, layer);
        }
    }
    style
}

pub fn render_set(set: &PointSet, origin: Option<&[Origin]>) -> String {
    let n = set.len() as u32;
    let size = 2 * MARGIN + n.saturating_sub(1) * CELL;
    let px = |c: u32| MARGIN + (c - 1) * CELL;
    let py = |c: u32| size - MARGIN - (c - 1) * CELL;
    let style = boundary_style(set);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    for k in 1..=n {
        let _ = writeln!(
            out,
            r##"<line x1="{x}" y1="{MARGIN}" x2="{x}" y2="{b}" stroke="#eeeeee"/><line x1="{MARGIN}" y1="{x2}" x2="{b}" y2="{x2}" stroke="#eeeeee"/>"##,
            x = px(k),
            b = size - MARGIN,
            x2 = py(k),
        );
    }
    for (idx, p) in set.points().enumerate() {
        let (fill, layer) = style[idx];
        let stroke = origin.map_or(fill, |o| origin_color(&o[idx]));
        let title = origin.map_or_else(|| format!("({}, {})", p.x, p.y), |o| format!("({}, {}) {}", p.x, p.y, o[idx]));
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="6" fill="{fill}" stroke="{stroke}" stroke-width="3"><title>{title}</title></circle>"#,
            px(p.x),
            py(p.y)
        );
        if let Some(l) = layer {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="10" font-family="monospace">L{l}</text>"#,
                px(p.x) + 8,
                py(p.y) - 8
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Drawing of the permutation's grid, or of its augmented set when
/// `augmented` is set (connected inputs of size two or more only).
pub fn render_svg(perm: &Permutation, augmented: bool) -> Result<String> {
    let set = PointSet::from_permutation(perm);
    if !augmented {
        return Ok(render_set(&set, None));
    }
    let AugmentedSet { points, origin, .. } = augment(&set)?;
    Ok(render_set(&points, Some(&origin)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn draws_every_point() {
        let perm = Permutation::new(vec![1, 8, 3, 2, 6, 4, 7, 5]).unwrap();
        let svg = render_svg(&perm, false).unwrap();
        assert_eq!(svg.matches("<circle").count(), 8);
        assert!(svg.contains(">L0<"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn augmented_needs_connected_input() {
        let perm = Permutation::new(vec![1, 8, 3, 2, 6, 4, 7, 5]).unwrap();
        assert_eq!(render_svg(&perm, true), Err(Error::Disconnected));
        let svg = render_svg(&Permutation::new(vec![2, 1]).unwrap(), true).unwrap();
        assert!(svg.contains("aux-b"));
    }
}
