// SPDX-License-Identifier: Apache-2.0

//! Verification procedures: hyperplane scans, spread-line containment,
//! infinity sections, partitions, and the Q1–Q3 audit of a cone.

mod pipeline;
mod report;
pub mod scan;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::bc::{self, BcError};
use crate::ff::{FiniteField, Fq2};
use crate::hypersurfaces::{self, Classification, Hypersurface6, HypersurfaceError, QuadricType};
use crate::pg::{PointSet, ProjPoint, Space};
use crate::varieties::{self, VarietyError, VarietySpec};

pub use pipeline::{build_field, verify_bm, verify_bt, PipelineOptions};
pub use report::{ReportParams, VerificationReport};
pub use scan::{IntersectionHistogram, Kernel, ScanMode, ScanOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("unsupported variety: {0}")]
    UnsupportedVariety(String),
    #[error("e must be odd and greater than 1")]
    EvenE,
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<VarietyError> for VerifyError {
    fn from(e: VarietyError) -> Self {
        VerifyError::Config(e.to_string())
    }
}

impl From<BcError> for VerifyError {
    fn from(e: BcError) -> Self {
        VerifyError::Config(e.to_string())
    }
}

impl From<HypersurfaceError> for VerifyError {
    fn from(e: HypersurfaceError) -> Self {
        VerifyError::Config(e.to_string())
    }
}

impl From<crate::ff::FieldError> for VerifyError {
    fn from(e: crate::ff::FieldError) -> Self {
        VerifyError::Config(e.to_string())
    }
}

/// Outcome of a two-character scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCharacter {
    pub histogram: IntersectionHistogram,
    pub expected_sizes: [u64; 2],
    pub variety_size: u64,
    pub full: bool,
}

impl TwoCharacter {
    /// Sizes are within the expected pair; a full scan must also satisfy
    /// both double-counting identities.
    pub fn pass(&self, order: u32) -> bool {
        let h = &self.histogram;
        if !h.sizes_within(&self.expected_sizes) {
            return false;
        }
        if !self.full {
            return true;
        }
        let n = order as u128;
        h.total == scan::hyperplane_count(order) && h.incidences() == self.variety_size as u128 * (n * n + n + 1)
    }
}

/// Scans the hyperplanes of PG(3,q²) against a variety and compares with
/// the quasi-Hermitian intersection sizes.
pub fn two_character_scan(f: &Fq2, spec: &VarietySpec, opts: &ScanOptions) -> Result<TwoCharacter, VerifyError> {
    if f.order() > scan::MAX_SCAN_ORDER && opts.kernel == Kernel::Fibered {
        return Err(VerifyError::ResourceLimit(format!(
            "hyperplane scans of PG(3,{}) exceed the supported size",
            f.order()
        )));
    }
    let set = spec.points(f);
    let fp = format!("{}:q={}:delta={}:{:?}", spec.tag(), f.q(), f.delta(), spec);
    let histogram = scan::scan(f, &set, opts, &fp)?;
    let (s, t) = varieties::expected_intersection_sizes(3, f.q() as u64);
    Ok(TwoCharacter {
        histogram,
        expected_sizes: [s, t],
        variety_size: set.len() as u64,
        full: opts.mode == ScanMode::Full,
    })
}

/// Spread lines fully contained in a hypersurface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpreadCount {
    pub count: u64,
    pub labels: Vec<ProjPoint>,
}

pub fn count_spread_lines_in(f: &Fq2, h: &Hypersurface6) -> SpreadCount {
    let labels: Vec<ProjPoint> = bc::spread_labels(f).filter(|l| line_contained(f, h, l)).collect();
    SpreadCount { count: labels.len() as u64, labels }
}

fn line_contained(f: &Fq2, h: &Hypersurface6, label: &ProjPoint) -> bool {
    let line = bc::spread_line(f, label.coords()).expect("infinity point");
    line.points().iter().all(|p| h.member(f, p))
}

/// The section of a variety by `J = 0`, as spread-line labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinitySection {
    pub case: String,
    pub labels: Vec<ProjPoint>,
    pub expected_count: u64,
    /// The computed section equals the predicted union of lines through `P∞`.
    pub matches_prediction: bool,
}

impl InfinitySection {
    pub fn pass(&self) -> bool {
        self.matches_prediction && self.labels.len() as u64 == self.expected_count
    }
}

/// An element `μ` of GF(q²) with `μ² = -1`, least in canonical order.
pub fn sqrt_minus_one(f: &Fq2) -> Option<u32> {
    let m1 = f.neg(1);
    f.elements().find(|&m| f.mul(m, m) == m1)
}

/// Points `(0, 1, c, t)` for the given slopes `c`, plus `P∞`.
fn pencil(f: &Fq2, slopes: &[u32]) -> BTreeSet<ProjPoint> {
    let mut out = BTreeSet::new();
    out.insert(ProjPoint::from_normalized(vec![0, 0, 0, 1]));
    for &c in slopes {
        for t in f.elements() {
            out.insert(ProjPoint::from_normalized(vec![0, 1, c, t]));
        }
    }
    out
}

pub fn infinity_section(f: &Fq2, spec: &VarietySpec) -> Result<InfinitySection, VerifyError> {
    let q = f.q() as u64;
    let (case, slopes, expected) = match spec {
        VarietySpec::Bab(_) if f.is_odd() => {
            let mu = sqrt_minus_one(f).expect("-1 is a square in GF(q²)");
            ("B odd: Y = ±μX".to_string(), vec![mu, f.neg(mu)], 2 * q * q + 1)
        }
        VarietySpec::Bab(_) => ("B even: Y = X".to_string(), vec![1], q * q + 1),
        VarietySpec::Mab(_) | VarietySpec::Heps(_) => {
            let m1 = f.base().neg(1);
            let alphas: Vec<u32> = f.elements().filter(|&a| f.norm(a) == m1).collect();
            ("F: X^(q+1) + Y^(q+1) = 0".to_string(), alphas, q * q * q + q * q + 1)
        }
        VarietySpec::Veps(bt) => {
            let e = bt.e;
            if e % 4 == 3 {
                let k = (1u64 << ((e - 1) / 2)) + 1;
                let roots: Vec<u32> = f.elements().filter(|&c| c != 0 && f.pow(c, k) == 1).collect();
                (format!("V e={e} ≡ 3 mod 4: l0 ∪ l1 ∪ l2"), roots, 3 * q * q + 1)
            } else {
                (format!("V e={e} ≡ 1 mod 4: l0"), vec![1], q * q + 1)
            }
        }
        other => return Err(VerifyError::UnsupportedVariety(other.tag().into())),
    };
    let space = Space::new(3, f).expect("dimension 3");
    let mut x = [0u32; 4];
    let mut labels = Vec::new();
    for idx in 0..space.num_points_at_infinity() {
        space.write_point(idx, &mut x);
        if spec.member(f, &x) {
            labels.push(ProjPoint::from_normalized(x.to_vec()));
        }
    }
    let predicted = pencil(f, &slopes);
    let matches_prediction = labels.len() == predicted.len() && labels.iter().all(|l| predicted.contains(l));
    Ok(InfinitySection { case, labels, expected_count: expected, matches_prediction })
}

/// Infinity labels partitioned by full containment of their spread line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentSplit {
    pub contained: Vec<ProjPoint>,
    pub not_contained: Vec<ProjPoint>,
}

pub fn containment_split(f: &Fq2, labels: &[ProjPoint], h: &Hypersurface6) -> ContainmentSplit {
    let (contained, not_contained) = labels.iter().cloned().partition(|l| line_contained(f, h, l));
    ContainmentSplit { contained, not_contained }
}

/// Whether a family of spread lines partitions a point set of Π∞.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    pub lines: u64,
    pub disjoint: bool,
    pub contained: bool,
    pub union_size: u64,
    pub target_size: u64,
}

impl PartitionCheck {
    pub fn pass(&self) -> bool {
        self.disjoint && self.contained && self.union_size == self.target_size
    }
}

pub fn partition_check(f: &Fq2, labels: &[ProjPoint], target: &PointSet) -> PartitionCheck {
    let mut seen = BTreeSet::new();
    let mut disjoint = true;
    let mut contained = true;
    for l in labels {
        let line = bc::spread_line(f, l.coords()).expect("infinity point");
        for p in line.points() {
            disjoint &= seen.insert(*p);
            contained &= target.contains(p);
        }
    }
    PartitionCheck {
        lines: labels.len() as u64,
        disjoint,
        contained,
        union_size: seen.len() as u64,
        target_size: target.len() as u64,
    }
}

/// The Q1–Q3 properties of a cone of PG(6,q) relative to the spread.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Audit {
    /// A point of `r_P∞` is a vertex: every line through it and a point of
    /// the hypersurface lies in the hypersurface.
    pub q1: bool,
    /// The base (the section `x5 = 0`) is a non-degenerate hyperbolic quadric.
    /// `None` when the hypersurface is not quadratic.
    pub q2: Option<bool>,
    /// Every point of the section by `Π∞` lies on a spread line contained in it.
    pub q3: bool,
    pub vertices: Vec<ProjPoint>,
    pub base: Option<Classification>,
}

impl Audit {
    pub fn triple(&self) -> (bool, Option<bool>, bool) {
        (self.q1, self.q2, self.q3)
    }
}

pub fn q1q2q3_audit(f: &Fq2, h: &Hypersurface6) -> Audit {
    let g = f.base();
    let points = h.points(f);
    let p_inf = bc::spread_line(f, &[0, 0, 0, 1]).expect("P∞");
    let vertices: Vec<ProjPoint> = p_inf
        .points()
        .iter()
        .filter(|v| is_vertex(f, h, &points, &v[..]))
        .map(|v| ProjPoint::from_normalized(v.to_vec()))
        .collect();

    let base = h.quadratic_form(f).map(|qf| hypersurfaces::classify_quadric(g, &qf.restrict(&hypersurfaces::BASE_COORDS)));
    let q2 = base.as_ref().map(|c| c.kind == QuadricType::Hyperbolic);

    let mut cache: BTreeMap<ProjPoint, bool> = BTreeMap::new();
    let q3 = points.iter().filter(|x| x[0] == 0).all(|x| {
        let label = bc::label_of(f, &x).expect("point at infinity");
        *cache.entry(label.clone()).or_insert_with(|| line_contained(f, h, &label))
    });
    Audit { q1: !vertices.is_empty(), q2, q3, vertices, base }
}

fn is_vertex(f: &Fq2, h: &Hypersurface6, points: &PointSet, v: &[u32]) -> bool {
    let g = f.base();
    if !h.member(f, v) {
        return false;
    }
    points.iter().all(|p| {
        (1..g.order()).all(|lambda| {
            let mut r: Vec<u32> = p.iter().zip(v).map(|(&a, &b)| g.add(a, g.mul(lambda, b))).collect();
            match crate::pg::normalize_in_place(g, &mut r) {
                Ok(()) => h.member(f, &r),
                Err(_) => true,
            }
        })
    })
}

/// `gcd(2^((e+1)/2) + 2, 2^e - 1)`.
pub fn gcd_check(e: u32) -> Result<u64, VerifyError> {
    if e < 3 || e.is_multiple_of(2) || e > 63 {
        return Err(VerifyError::EvenE);
    }
    let (mut a, mut b) = ((1u64 << e.div_ceil(2)) + 2, (1u64 << e) - 1);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    Ok(a)
}
