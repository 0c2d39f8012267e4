//! Whole-permutation encoding for the three schemes, and the labels file.
//!
//! Components are sorted by decreasing size and each is labeled on its own;
//! every label starts with the gamma code of its component index plus one.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::baselines::{
    decode5, decode7, deserialize5, deserialize7, encode5_prepared, encode7_prepared, serialize5, serialize7,
    singleton5, singleton7,
};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::{Permutation, PointSet};
use crate::label3::{decode_distance, deserialize_label, encode_prepared, serialize_label, singleton_label};
use crate::layout::PreparedComponent;
use crate::oracle::Distance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    L3,
    L5,
    L7,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::L3, Scheme::L5, Scheme::L7];

    pub fn decode(self, a: &BitString, b: &BitString) -> Result<Distance> {
        match self {
            Scheme::L3 => decode_distance(a, b),
            Scheme::L5 => decode5(a, b),
            Scheme::L7 => decode7(a, b),
        }
    }

    /// Parses a label into its fields and writes it back out.
    pub fn reserialize(self, bits: &BitString) -> Result<BitString> {
        match self {
            Scheme::L3 => {
                let (l, codec) = deserialize_label(bits)?;
                serialize_label(&l, codec)
            }
            Scheme::L5 => {
                let (l, w) = deserialize5(bits)?;
                serialize5(&l, &w)
            }
            Scheme::L7 => {
                let (l, w) = deserialize7(bits)?;
                serialize7(&l, &w)
            }
        }
    }

    fn encode_prepared(self, prep: &PreparedComponent, index: u64) -> Result<Vec<BitString>> {
        match self {
            Scheme::L3 => encode_prepared(prep, index),
            Scheme::L5 => encode5_prepared(prep, index),
            Scheme::L7 => encode7_prepared(prep, index),
        }
    }

    fn singleton(self, index: u64) -> BitString {
        match self {
            Scheme::L3 => singleton_label(index),
            Scheme::L5 => singleton5(index),
            Scheme::L7 => singleton7(index),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::L3 => "L3",
            Scheme::L5 => "L5",
            Scheme::L7 => "L7",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L3" | "l3" => Ok(Scheme::L3),
            "L5" | "l5" => Ok(Scheme::L5),
            "L7" | "l7" => Ok(Scheme::L7),
            other => Err(Error::Parse(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Labels of every vertex of a permutation graph; `labels[i - 1]` belongs
/// to vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub scheme: Scheme,
    pub labels: Vec<BitString>,
}

impl Labeling {
    pub fn label(&self, vertex: u32) -> &BitString {
        &self.labels[vertex as usize - 1]
    }

    pub fn distance(&self, u: u32, v: u32) -> Result<Distance> {
        self.scheme.decode(self.label(u), self.label(v))
    }

    pub fn max_bits(&self) -> usize {
        self.labels.iter().map(BitString::len).max().unwrap_or(0)
    }

    pub fn mean_bits(&self) -> f64 {
        let total: usize = self.labels.iter().map(BitString::len).sum();
        total as f64 / self.labels.len().max(1) as f64
    }

    /// Header line `<scheme> <n>`, then `vertex hex bitlength` per vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.scheme, self.labels.len());
        for (k, bits) in self.labels.iter().enumerate() {
            out.push_str(&format!("{} {} {}\n", k + 1, bits.to_hex(), bits.len()));
        }
        out
    }
}

impl FromStr for Labeling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty labels file".into()))?;
        let mut head = header.split_whitespace();
        let scheme: Scheme = head.next().ok_or_else(|| Error::Parse("missing scheme tag".into()))?.parse()?;
        let n: usize = head
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
        let mut labels = vec![None; n];
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [id, hex, len] = fields[..] else {
                return Err(Error::Parse(format!("bad label line {line:?}")));
            };
            let id: usize = id.parse().map_err(|e| Error::Parse(format!("bad vertex id: {e}")))?;
            let len: usize = len.parse().map_err(|e| Error::Parse(format!("bad bit length: {e}")))?;
            if id == 0 || id > n {
                return Err(Error::Parse(format!("vertex id {id} out of range")));
            }
            labels[id - 1] = Some(BitString::from_hex(hex, len)?);
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(k, l)| l.ok_or_else(|| Error::Parse(format!("no label for vertex {}", k + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Labeling { scheme, labels })
    }
}

/// Components of a permutation graph, augmented and analyzed once so all
/// schemes can be produced from them.
#[derive(Debug, Clone)]
pub struct PreparedGraph {
    n: usize,
    /// (vertex ids, prepared component or `None` for singletons)
    components: Vec<(Vec<u32>, Option<PreparedComponent>)>,
}

impl PreparedGraph {
    pub fn new(perm: &Permutation) -> Result<Self> {
        let set = PointSet::from_permutation(perm);
        let components = set
            .components()
            .into_par_iter()
            .map(|c| {
                let prep = if c.set.len() > 1 { Some(PreparedComponent::new(&c.set)?) } else { None };
                Ok((c.original_x, prep))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: perm.len(), components })
    }

    pub fn components(&self) -> impl Iterator<Item = (&[u32], Option<&PreparedComponent>)> {
        self.components.iter().map(|(ids, p)| (ids.as_slice(), p.as_ref()))
    }

    pub fn labeling(&self, scheme: Scheme) -> Result<Labeling> {
        let mut labels = vec![BitString::new(); self.n];
        for (index, (ids, prep)) in self.components.iter().enumerate() {
            let index = index as u64;
            let part = match prep {
                Some(p) => scheme.encode_prepared(p, index)?,
                None => vec![scheme.singleton(index)],
            };
            for (&v, bits) in ids.iter().zip(part) {
                labels[v as usize - 1] = bits;
            }
        }
        Ok(Labeling { scheme, labels })
    }
}

pub fn encode(perm: &Permutation, scheme: Scheme) -> Result<Labeling> {
    PreparedGraph::new(perm)?.labeling(scheme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::gamma_len;

    #[test]
    fn split_sample_components() {
        let perm = Permutation::new(vec![1, 8, 3, 2, 6, 4, 7, 5]).unwrap();
        let l = encode(&perm, Scheme::L3).unwrap();
        assert_eq!(deserialize_label(l.label(1)).unwrap().0.component, 1);
        for v in 2..=8 {
            assert_eq!(deserialize_label(l.label(v)).unwrap().0.component, 0);
        }
        assert_eq!(l.distance(1, 2).unwrap(), Distance::Unreachable);
        assert_eq!(l.distance(3, 7).unwrap(), Distance::Finite(2));
    }

    #[test]
    fn connected_input_uses_index_zero() {
        let perm = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let l = encode(&perm, Scheme::L3).unwrap();
        for bits in &l.labels {
            assert!(bits.reader().bit().unwrap(), "gamma(1) is a single 1 bit");
            assert_eq!(deserialize_label(bits).unwrap().0.component, 0);
        }
        assert_eq!(gamma_len(1), 1);
    }

    #[test]
    fn identity_is_all_unreachable() {
        let perm = Permutation::identity(4);
        for scheme in Scheme::ALL {
            let l = encode(&perm, scheme).unwrap();
            for u in 1..=4 {
                for v in 1..=4 {
                    let expect = if u == v { Distance::Finite(0) } else { Distance::Unreachable };
                    assert_eq!(l.distance(u, v).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn labels_file_round_trip() {
        let perm = Permutation::new(vec![1, 8, 3, 2, 6, 4, 7, 5]).unwrap();
        for scheme in Scheme::ALL {
            let l = encode(&perm, scheme).unwrap();
            let text = l.to_text();
            assert!(text.starts_with(&format!("{scheme} 8\n")));
            assert_eq!(text.parse::<Labeling>().unwrap(), l);
        }
        assert!("L9 2\n".parse::<Labeling>().is_err());
        assert!("L3 2\n1 8 1\n".parse::<Labeling>().is_err());
    }
}
