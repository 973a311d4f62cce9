// SPDX-License-Identifier: Apache-2.0

//! Hyperplane intersection scans over PG(3,q²).
//!
//! The default kernel stores the affine part of the point set as one bitset
//! over `z` per `(x, y)` fibre. A hyperplane with `h3 ≠ 0` then meets each
//! fibre in at most the single point `z = -(h0 + h1x + h2y)/h3`, so a scan
//! costs `q⁴` bit tests per hyperplane. The point-list kernel tests every
//! point against every hyperplane and serves as a cross-check.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::ff::{FiniteField, Fq2};
use crate::pg::{self, PointSet, Space};

/// Largest `q²` for which the fibered kernel (one `u64` per fibre) applies.
pub const MAX_SCAN_ORDER: u32 = 64;

/// Hyperplane counts by intersection size.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionHistogram {
    pub counts: BTreeMap<u64, u64>,
    pub total: u64,
}

impl IntersectionHistogram {
    pub fn record(&mut self, size: u64) {
        *self.counts.entry(size).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn merge(&mut self, other: &IntersectionHistogram) {
        for (&k, &v) in &other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.total += other.total;
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.counts.keys().copied().collect()
    }

    /// `Σ size · count`.
    pub fn incidences(&self) -> u128 {
        self.counts.iter().map(|(&k, &v)| k as u128 * v as u128).sum()
    }

    /// True iff every observed size is one of `allowed`.
    pub fn sizes_within(&self, allowed: &[u64]) -> bool {
        self.counts.keys().all(|k| allowed.contains(k))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,hyperplanes\n");
        for (k, v) in &self.counts {
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    Full,
    Sampled { n: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kernel {
    Fibered,
    PointList,
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub mode: ScanMode,
    pub kernel: Kernel,
    /// 0 means the rayon default.
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub shard_size: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { mode: ScanMode::Full, kernel: Kernel::Fibered, workers: 0, checkpoint: None, shard_size: 4096 }
    }
}

impl ScanOptions {
    pub fn full() -> Self {
        Self::default()
    }

    pub fn sampled(n: u64, seed: u64) -> Self {
        Self { mode: ScanMode::Sampled { n, seed }, ..Self::default() }
    }
}

/// Number of hyperplanes of PG(3,N), `N³ + N² + N + 1`.
pub fn hyperplane_count(order: u32) -> u64 {
    let n = order as u64;
    n * n * n + n * n + n + 1
}

/// Per-hyperplane intersection counter.
trait Counter: Sync {
    fn count(&self, h: &[u32; 4]) -> u64;
}

/// Tests each point of the set against the hyperplane.
struct PointList<'a> {
    f: &'a Fq2,
    points: Vec<[u32; 4]>,
}

impl Counter for PointList<'_> {
    fn count(&self, h: &[u32; 4]) -> u64 {
        self.points.iter().filter(|p| pg::dot(self.f, h, &p[..]) == 0).count() as u64
    }
}

struct Fibered {
    n: usize,
    /// Bit `z` of `fibres[x·N + y]` is set iff `(1, x, y, z)` is in the set.
    fibres: Vec<u64>,
    popcounts: Vec<u32>,
    /// Infinity points on each line `h1X + h2Y + h3Z = 0` of `J = 0`,
    /// indexed by the normalized `(h1, h2, h3)` in PG(2,N) order.
    inf_by_line: Vec<u32>,
    inf_total: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl Fibered {
    fn new(f: &Fq2, set: &PointSet) -> Self {
        let n = f.order() as usize;
        assert!(n <= MAX_SCAN_ORDER as usize);
        let mut fibres = vec![0u64; n * n];
        let mut infinity = Vec::new();
        for p in set.iter() {
            if p[0] == 0 {
                infinity.push([p[1], p[2], p[3]]);
            } else {
                fibres[p[1] as usize * n + p[2] as usize] |= 1u64 << p[3];
            }
        }
        let plane = Space::new(2, f).expect("dimension 2");
        let inf_by_line = plane
            .points()
            .map(|l| infinity.iter().filter(|p| pg::dot(f, l.coords(), &p[..]) == 0).count() as u32)
            .collect();
        let table = |op: &dyn Fn(u32, u32) -> u32| -> Vec<u32> {
            (0..n as u32).flat_map(|a| (0..n as u32).map(move |b| (a, b))).map(|(a, b)| op(a, b)).collect()
        };
        Self {
            n,
            popcounts: fibres.iter().map(|w| w.count_ones()).collect(),
            fibres,
            inf_by_line,
            inf_total: infinity.len() as u32,
            add: table(&|a, b| f.add(a, b)),
            mul: table(&|a, b| f.mul(a, b)),
            neg: (0..n as u32).map(|a| f.neg(a)).collect(),
            inv: (0..n as u32).map(|a| if a == 0 { 0 } else { f.inv(a) }).collect(),
        }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    fn line_index(&self, h: &[u32; 4]) -> usize {
        let mut t = [h[1], h[2], h[3]];
        let lead = t.iter().copied().find(|&c| c != 0).expect("non-zero triple");
        let s = self.inv[lead as usize];
        for c in t.iter_mut() {
            *c = self.mul(*c, s);
        }
        // Index in PG(2,N) enumeration order: blocks of size N^k by leading position.
        let n = self.n as u64;
        let idx = match t {
            [0, 0, _] => 0,
            [0, 1, z] => 1 + z as u64,
            [1, y, z] => 1 + n + y as u64 * n + z as u64,
            _ => unreachable!(),
        };
        idx as usize
    }
}

impl Counter for Fibered {
    fn count(&self, h: &[u32; 4]) -> u64 {
        let [h0, h1, h2, h3] = *h;
        if h1 == 0 && h2 == 0 && h3 == 0 {
            return self.inf_total as u64;
        }
        let inf = self.inf_by_line[self.line_index(h)] as u64;
        let n = self.n;
        let mut affine = 0u64;
        if h3 != 0 {
            let m = self.neg[self.inv[h3 as usize] as usize];
            let u: Vec<u32> = (0..n as u32).map(|y| self.mul(self.mul(h2, y), m)).collect();
            for x in 0..n {
                let t = self.mul(self.add(h0, self.mul(h1, x as u32)), m) as usize;
                let row = &self.add[t * n..(t + 1) * n];
                let fib = &self.fibres[x * n..(x + 1) * n];
                for (w, &uy) in fib.iter().zip(&u) {
                    affine += (w >> row[uy as usize]) & 1;
                }
            }
        } else if h2 != 0 {
            let m = self.neg[self.inv[h2 as usize] as usize];
            for x in 0..n {
                let y = self.mul(self.add(h0, self.mul(h1, x as u32)), m) as usize;
                affine += self.popcounts[x * n + y] as u64;
            }
        } else {
            let x = self.mul(h0, self.neg[self.inv[h1 as usize] as usize]) as usize;
            affine = self.popcounts[x * n..(x + 1) * n].iter().map(|&c| c as u64).sum();
        }
        affine + inf
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Checkpoint {
    fingerprint: String,
    shard_size: u64,
    done: BTreeMap<u64, IntersectionHistogram>,
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(tmp, path)
}

/// Tallies `|set ∩ H|` over the hyperplanes of PG(3,q²) selected by `opts.mode`.
///
/// `fingerprint` identifies the point set in checkpoint files; a checkpoint
/// written for a different fingerprint is rejected.
pub fn scan(
    f: &Fq2,
    set: &PointSet,
    opts: &ScanOptions,
    fingerprint: &str,
) -> Result<IntersectionHistogram, VerifyError> {
    if set.dim() != 3 || set.order() != f.order() {
        return Err(VerifyError::Config("point set is not in PG(3,q²)".into()));
    }
    let total = hyperplane_count(f.order());
    let indices: Option<Vec<u64>> = match opts.mode {
        ScanMode::Full => None,
        ScanMode::Sampled { n, seed } => {
            if n > total {
                return Err(VerifyError::Config(format!("sample of {n} exceeds {total} hyperplanes")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v: Vec<u64> =
                rand::seq::index::sample(&mut rng, total as usize, n as usize).into_iter().map(|i| i as u64).collect();
            v.sort_unstable();
            Some(v)
        }
    };
    let counter: Box<dyn Counter> = match opts.kernel {
        Kernel::Fibered => {
            if f.order() > MAX_SCAN_ORDER {
                return Err(VerifyError::ResourceLimit(format!(
                    "hyperplane scans need q² ≤ {MAX_SCAN_ORDER}, got {}",
                    f.order()
                )));
            }
            Box::new(Fibered::new(f, set))
        }
        Kernel::PointList => {
            let points = set.iter().map(|p| [p[0], p[1], p[2], p[3]]).collect();
            Box::new(PointList { f, points })
        }
    };
    let work = indices.as_ref().map_or(total, |v| v.len() as u64);
    let shard_size = opts.shard_size.max(1);
    let shards = work.div_ceil(shard_size);
    let fingerprint = format!("{fingerprint};mode={:?};shard={shard_size}", opts.mode);

    let mut state = Checkpoint { fingerprint: fingerprint.clone(), shard_size, done: BTreeMap::new() };
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let text = fs::read_to_string(path).map_err(|e| VerifyError::Io(e.to_string()))?;
            let saved: Checkpoint =
                serde_json::from_str(&text).map_err(|e| VerifyError::Config(format!("bad checkpoint: {e}")))?;
            if saved.fingerprint != fingerprint {
                return Err(VerifyError::Config("checkpoint belongs to a different run".into()));
            }
            state = saved;
        }
    }
    let pending: Vec<u64> = (0..shards).filter(|s| !state.done.contains_key(s)).collect();
    let state = Mutex::new(state);
    let space = Space::new(3, f).expect("dimension 3");

    let run_shard = |s: u64| -> Result<(), VerifyError> {
        let mut hist = IntersectionHistogram::default();
        let mut h = [0u32; 4];
        let lo = s * shard_size;
        let hi = (lo + shard_size).min(work);
        for k in lo..hi {
            let idx = indices.as_ref().map_or(k, |v| v[k as usize]);
            space.write_point(idx, &mut h);
            hist.record(counter.count(&h));
        }
        let mut st = state.lock().expect("checkpoint lock");
        st.done.insert(s, hist);
        if let Some(path) = &opts.checkpoint {
            let bytes = serde_json::to_vec(&*st).expect("serializable");
            write_atomic(path, &bytes).map_err(|e| VerifyError::Io(e.to_string()))?;
        }
        Ok(())
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| VerifyError::Config(e.to_string()))?;
    pool.install(|| pending.par_iter().try_for_each(|&s| run_shard(s)))?;

    let st = state.into_inner().expect("checkpoint lock");
    let mut out = IntersectionHistogram::default();
    for h in st.done.values() {
        out.merge(h);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::{BmParams, VarietySpec};

    #[test]
    fn kernels_agree_on_every_hyperplane_at_q3() {
        let f = Fq2::for_q(3).unwrap();
        let set = VarietySpec::Mab(BmParams::default_for(&f)).points(&f);
        let fib = Fibered::new(&f, &set);
        let list = PointList { f: &f, points: set.iter().map(|p| [p[0], p[1], p[2], p[3]]).collect() };
        let space = Space::new(3, &f).unwrap();
        let mut h = [0u32; 4];
        for idx in 0..hyperplane_count(9) {
            space.write_point(idx, &mut h);
            assert_eq!(fib.count(&h), list.count(&h), "hyperplane {h:?}");
        }
    }

    #[test]
    fn line_index_matches_enumeration() {
        let f = Fq2::for_q(3).unwrap();
        let fib = Fibered::new(&f, &PointSet::new(3, 9));
        let plane = Space::new(2, &f).unwrap();
        for (i, p) in plane.points().enumerate() {
            let c = p.coords();
            assert_eq!(fib.line_index(&[0, c[0], c[1], c[2]]), i);
            let s = f.epsilon();
            assert_eq!(fib.line_index(&[1, f.mul(s, c[0]), f.mul(s, c[1]), f.mul(s, c[2])]), i);
        }
    }

    #[test]
    fn histogram_csv_and_merge() {
        let mut a = IntersectionHistogram::default();
        a.record(28);
        a.record(37);
        let mut b = IntersectionHistogram::default();
        b.record(28);
        a.merge(&b);
        assert_eq!(a.total, 3);
        assert_eq!(a.to_csv(), "size,hyperplanes\n28,2\n37,1\n");
        assert_eq!(a.incidences(), 28 * 2 + 37);
    }

    #[test]
    fn checkpoint_resume_gives_the_same_histogram() {
        let f = Fq2::for_q(3).unwrap();
        let set = VarietySpec::Mab(BmParams::default_for(&f)).points(&f);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let opts = ScanOptions { checkpoint: Some(path.clone()), shard_size: 100, ..ScanOptions::full() };
        let first = scan(&f, &set, &opts, "mab").unwrap();
        assert!(path.exists());
        // A complete checkpoint is reused without rescanning.
        let second = scan(&f, &set, &opts, "mab").unwrap();
        assert_eq!(first, second);
        assert!(matches!(scan(&f, &set, &opts, "other"), Err(VerifyError::Config(_))));
    }

    #[test]
    fn sampled_scan_is_deterministic() {
        let f = Fq2::for_q(3).unwrap();
        let set = VarietySpec::Mab(BmParams::default_for(&f)).points(&f);
        let a = scan(&f, &set, &ScanOptions::sampled(100, 7), "m").unwrap();
        let b = scan(&f, &set, &ScanOptions::sampled(100, 7), "m").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total, 100);
    }
}
