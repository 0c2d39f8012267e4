//! Exact distance labeling for permutation graphs.
//!
//! A permutation graph on `1..=n` joins `u < v` when `pi(u) > pi(v)`. The
//! encoder gives every vertex a bit label of `3 log n + O(log log n)` bits;
//! the decoder returns the exact distance between two vertices from their
//! two labels alone, in constant time.
//!
//! Two larger schemes (about `7 log n` and `5 log n` bits) share the same
//! machinery and serve as cross-checks. Every scheme is verified against
//! breadth-first search.

pub mod augment;
pub mod baselines;
pub mod bits;
pub mod boundaries;
pub mod error;
pub mod graph;
pub mod harness;
pub mod label3;
pub mod layout;
pub mod oracle;
mod order;
pub mod render;
pub mod rng;
pub mod scheme;

pub use error::{Error, Result};
pub use graph::{enumerate_permutations, random_permutation, Permutation, Point, PointSet};
pub use oracle::{Distance, DistanceOracle};
pub use scheme::{encode, Labeling, Scheme};
