//! Verification against breadth-first search, label size sweeps and decode
//! timing.
//!
//! Instances are checked in parallel; each instance runs sequentially and
//! reports are merged in instance order, so results do not depend on
//! scheduling.

use std::fmt;
use std::hint::black_box;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{enumerate_permutations, random_permutation, Permutation, PointSet};
use crate::oracle::{Distance, DistanceOracle};
use crate::rng::SplitMix64;
use crate::scheme::{PreparedGraph, Scheme};

/// Which permutations a run covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instances {
    Given(Vec<Permutation>),
    /// `count` permutations of size `n`; instance `k` uses seed `seed + k`.
    Random {
        n: usize,
        count: usize,
        seed: u64,
    },
    /// Every permutation of size `n`.
    Exhaustive(usize),
}

impl Instances {
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        match self {
            Instances::Given(perms) => Ok(perms.clone()),
            Instances::Random { n, count, seed } => {
                (0..*count as u64).map(|k| random_permutation(*n, seed.wrapping_add(k))).collect()
            }
            Instances::Exhaustive(n) => Ok(enumerate_permutations(*n)?.collect()),
        }
    }
}

impl fmt::Display for Instances {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instances::Given(perms) if perms.len() == 1 => write!(f, "n={} given", perms[0].len()),
            Instances::Given(perms) => write!(f, "{} given permutations", perms.len()),
            Instances::Random { n, count, seed } => write!(f, "n={n} seeds {seed}..{}", seed + *count as u64),
            Instances::Exhaustive(n) => write!(f, "n={n} exhaustive"),
        }
    }
}

/// A pair on which a decoder disagrees with the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub perm: Permutation,
    pub u: u32,
    pub v: u32,
    pub expected: Distance,
    pub actual: Distance,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi={} pair ({}, {}): expected {}, decoded {}", self.perm, self.u, self.v, self.expected, self.actual)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub instances: String,
    pub scheme: Scheme,
    pub instance_count: usize,
    pub pairs: u64,
    /// First failing pair of every failing instance, in instance order.
    pub mismatches: Vec<Mismatch>,
    pub labels_round_tripped: u64,
    pub max_bits: usize,
    pub mean_bits: f64,
    pub queries_per_second: f64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} instances, {} pairs, {} mismatches, max {} bits, mean {:.1} bits, {:.0} queries/s",
            self.scheme,
            self.instances,
            self.instance_count,
            self.pairs,
            self.mismatches.len(),
            self.max_bits,
            self.mean_bits,
            self.queries_per_second
        )
    }
}

/// Outcome of one scheme on one permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceCheck {
    pub pairs: u64,
    pub mismatch: Option<Mismatch>,
    pub max_bits: usize,
    pub total_bits: usize,
    pub labels: usize,
    pub decode_seconds: f64,
}

/// Encodes `perm` with each scheme and compares every ordered pair
/// (diagonal included) with BFS. Every label is also parsed and written
/// back, and must come out bit-identical.
pub fn check_permutation(perm: &Permutation, schemes: &[Scheme]) -> Result<Vec<InstanceCheck>> {
    let oracle = DistanceOracle::new(&PointSet::from_permutation(perm));
    let prepared = PreparedGraph::new(perm)?;
    let n = perm.len() as u32;
    schemes
        .iter()
        .map(|&scheme| {
            let labeling = prepared.labeling(scheme)?;
            for (k, bits) in labeling.labels.iter().enumerate() {
                if &scheme.reserialize(bits)? != bits {
                    return Err(Error::Internal(format!(
                        "{scheme} label of vertex {} in {perm} does not round-trip",
                        k + 1
                    )));
                }
            }
            let mut mismatch = None;
            let start = Instant::now();
            for u in 1..=n {
                for v in 1..=n {
                    let actual = labeling.distance(u, v)?;
                    let expected = oracle.between(u, v);
                    if actual != expected && mismatch.is_none() {
                        mismatch = Some(Mismatch { perm: perm.clone(), u, v, expected, actual });
                    }
                }
            }
            let decode_seconds = start.elapsed().as_secs_f64();
            Ok(InstanceCheck {
                pairs: u64::from(n) * u64::from(n),
                mismatch,
                max_bits: labeling.max_bits(),
                total_bits: labeling.labels.iter().map(|l| l.len()).sum(),
                labels: labeling.labels.len(),
                decode_seconds,
            })
        })
        .collect()
}

/// Runs every instance against every scheme; one report per scheme, in the
/// order given.
pub fn verify(instances: &Instances, schemes: &[Scheme]) -> Result<Vec<RunReport>> {
    let perms = instances.permutations()?;
    let checks = perms.par_iter().map(|p| check_permutation(p, schemes)).collect::<Result<Vec<_>>>()?;
    Ok(schemes
        .iter()
        .enumerate()
        .map(|(s, &scheme)| {
            let mut report = RunReport {
                instances: instances.to_string(),
                scheme,
                instance_count: perms.len(),
                pairs: 0,
                mismatches: Vec::new(),
                labels_round_tripped: 0,
                max_bits: 0,
                mean_bits: 0.0,
                queries_per_second: 0.0,
            };
            let (mut total_bits, mut seconds) = (0usize, 0.0f64);
            for per_instance in &checks {
                let c = &per_instance[s];
                report.pairs += c.pairs;
                report.mismatches.extend(c.mismatch.clone());
                report.labels_round_tripped += c.labels as u64;
                report.max_bits = report.max_bits.max(c.max_bits);
                total_bits += c.total_bits;
                seconds += c.decode_seconds;
            }
            report.mean_bits = total_bits as f64 / report.labels_round_tripped.max(1) as f64;
            report.queries_per_second = if seconds > 0.0 { report.pairs as f64 / seconds } else { 0.0 };
            report
        })
        .collect())
}

/// Shrinks a failing instance by deleting one element at a time (and
/// renumbering) for as long as some deletion still fails. Returns `None`
/// if `perm` passes.
pub fn shrink(perm: &Permutation, scheme: Scheme) -> Result<Option<Mismatch>> {
    let first_failure = |p: &Permutation| -> Result<Option<Mismatch>> {
        Ok(check_permutation(p, &[scheme])?.pop().and_then(|c| c.mismatch))
    };
    let Some(mut best) = first_failure(perm)? else {
        return Ok(None);
    };
    'outer: loop {
        for pos in 0..best.perm.len() {
            let Some(sub) = best.perm.without_position(pos) else {
                continue;
            };
            if let Some(m) = first_failure(&sub)? {
                best = m;
                continue 'outer;
            }
        }
        return Ok(Some(best));
    }
}

/// One CSV row of a size sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub n: usize,
    pub seed: u64,
    pub scheme: Scheme,
    pub max_bits: usize,
    pub mean_bits: f64,
}

impl StatsRow {
    pub const CSV_HEADER: &'static str = "n,seed,scheme,max_bits,mean_bits,three_log_n,slack";

    pub fn three_log_n(&self) -> f64 {
        3.0 * (self.n as f64).log2()
    }

    pub fn slack(&self) -> f64 {
        self.max_bits as f64 - self.three_log_n()
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{:.3},{:.3},{:.3}",
            self.n,
            self.seed,
            self.scheme,
            self.max_bits,
            self.mean_bits,
            self.three_log_n(),
            self.slack()
        )
    }
}

/// Label sizes of all three schemes on seeds `0..seeds` of each size.
/// Rows come out by n, then seed, then scheme.
pub fn stats_sweep(sizes: &[usize], seeds: u64) -> Result<Vec<StatsRow>> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    let jobs: Vec<(usize, u64)> = sizes.iter().flat_map(|&n| (0..seeds).map(move |s| (n, s))).collect();
    let rows = jobs
        .par_iter()
        .map(|&(n, seed)| {
            let prepared = PreparedGraph::new(&random_permutation(n, seed)?)?;
            Scheme::ALL
                .iter()
                .map(|&scheme| {
                    let l = prepared.labeling(scheme)?;
                    Ok(StatsRow { n, seed, scheme, max_bits: l.max_bits(), mean_bits: l.mean_bits() })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn stats_csv(rows: &[StatsRow]) -> String {
    let mut out = String::from(StatsRow::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub n: usize,
    pub scheme: Scheme,
    pub queries: u64,
    pub max_bits: usize,
    pub mean_ns: f64,
    pub queries_per_second: f64,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} queries={} max_bits={} mean_latency={:.1}ns throughput={:.0}/s",
            self.scheme, self.n, self.queries, self.max_bits, self.mean_ns, self.queries_per_second
        )
    }
}

/// Times `queries` decodes of uniformly random vertex pairs on a random
/// permutation of size `n`. Pairs are drawn before the clock starts.
pub fn bench(n: usize, queries: u64, seed: u64, scheme: Scheme) -> Result<BenchReport> {
    let labeling = PreparedGraph::new(&random_permutation(n, seed)?)?.labeling(scheme)?;
    let mut rng = SplitMix64::new(seed ^ 0x9E37_79B9_7F4A_7C15);
    let pairs: Vec<(usize, usize)> =
        (0..queries).map(|_| (rng.below(n as u64) as usize, rng.below(n as u64) as usize)).collect();
    let labels = &labeling.labels;
    for &(u, v) in pairs.iter().take(1000) {
        black_box(scheme.decode(&labels[u], &labels[v])?);
    }
    let start = Instant::now();
    for &(u, v) in &pairs {
        black_box(scheme.decode(black_box(&labels[u]), black_box(&labels[v]))?);
    }
    let seconds = start.elapsed().as_secs_f64().max(f64::MIN_POSITIVE);
    Ok(BenchReport {
        n,
        scheme,
        queries,
        max_bits: labeling.max_bits(),
        mean_ns: seconds * 1e9 / queries.max(1) as f64,
        queries_per_second: queries as f64 / seconds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass_and_are_deterministic() {
        let inst = Instances::Random { n: 12, count: 20, seed: 7 };
        let a = verify(&inst, &Scheme::ALL).unwrap();
        let b = verify(&inst, &Scheme::ALL).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.passed(), "{x}");
            assert_eq!((x.pairs, x.max_bits, &x.mismatches), (y.pairs, y.max_bits, &y.mismatches));
            assert_eq!(x.pairs, 20 * 144);
        }
    }

    #[test]
    fn shrink_of_passing_instance_is_none() {
        let p = Permutation::new(vec![3, 1, 4, 2]).unwrap();
        assert_eq!(shrink(&p, Scheme::L3).unwrap(), None);
    }

    #[test]
    fn sweep_order_and_columns() {
        let rows = stats_sweep(&[16, 8], 2).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.n, r.seed, r.scheme)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[0].three_log_n(), 9.0);
        assert!(stats_csv(&rows).starts_with("n,seed,scheme,max_bits,mean_bits,three_log_n,slack\n8,0,L3,"));
    }

    #[test]
    fn bench_runs() {
        let r = bench(64, 1000, 1, Scheme::L3).unwrap();
        assert_eq!(r.queries, 1000);
        assert!(r.mean_ns > 0.0);
    }
}
