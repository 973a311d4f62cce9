// SPDX-License-Identifier: Apache-2.0

//! Points and hyperplanes of PG(n, F) in normalized homogeneous coordinates.
//!
//! A normalized vector has its first non-zero coordinate equal to 1. The
//! enumeration order is plain lexicographic order on normalized vectors under
//! the canonical element order, so the points with the most leading zeros come
//! first. In particular the points of the hyperplane `x0 = 0` occupy the first
//! `(q^n - 1)/(q - 1)` indices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::FiniteField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PgError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("a line needs two distinct points")]
    EqualPoints,
    #[error("coordinate {0} is not a field element")]
    BadCoordinate(u32),
    #[error("cannot parse point {0:?}")]
    Parse(String),
    #[error("projective dimension must be at least 1")]
    BadDimension,
}

/// A normalized coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ProjPoint(Vec<u32>);

/// A hyperplane, stored as a normalized dual vector.
pub type Hyperplane = ProjPoint;

impl ProjPoint {
    /// Wraps a vector that the caller knows to be normalized.
    pub fn from_normalized(coords: Vec<u32>) -> Self {
        debug_assert!(coords.iter().find(|&&c| c != 0) == Some(&1));
        Self(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl From<ProjPoint> for String {
    fn from(p: ProjPoint) -> String {
        p.to_string()
    }
}

impl FromStr for ProjPoint {
    type Err = PgError;

    /// Parses `"0:1:2:0"`. The result is not normalized against a field;
    /// run it through [`normalize`] when the input is untrusted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coords = s
            .split(':')
            .map(|t| t.trim().parse::<u32>().map_err(|_| PgError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() < 2 {
            return Err(PgError::Parse(s.to_string()));
        }
        if coords.iter().all(|&c| c == 0) {
            return Err(PgError::ZeroVector);
        }
        Ok(Self(coords))
    }
}

impl TryFrom<String> for ProjPoint {
    type Error = PgError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Scales `raw` so that its first non-zero entry is 1.
pub fn normalize<F: FiniteField + ?Sized>(f: &F, raw: &[u32]) -> Result<ProjPoint, PgError> {
    let mut v = raw.to_vec();
    normalize_in_place(f, &mut v)?;
    Ok(ProjPoint(v))
}

pub fn normalize_in_place<F: FiniteField + ?Sized>(f: &F, v: &mut [u32]) -> Result<(), PgError> {
    if let Some(&bad) = v.iter().find(|&&c| c >= f.order()) {
        return Err(PgError::BadCoordinate(bad));
    }
    let lead = v.iter().copied().find(|&c| c != 0).ok_or(PgError::ZeroVector)?;
    if lead != 1 {
        let inv = f.inv(lead);
        for c in v.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    Ok(())
}

/// `Σ P_i H_i == 0`.
pub fn incident<F: FiniteField + ?Sized>(f: &F, p: &ProjPoint, h: &Hyperplane) -> Result<bool, PgError> {
    if p.0.len() != h.0.len() {
        return Err(PgError::DimensionMismatch(p.dim(), h.dim()));
    }
    Ok(dot(f, &p.0, &h.0) == 0)
}

#[inline]
pub fn dot<F: FiniteField + ?Sized>(f: &F, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// The q + 1 points `λP + μQ`, sorted in enumeration order.
pub fn line_through<F: FiniteField + ?Sized>(
    f: &F,
    p: &ProjPoint,
    q: &ProjPoint,
) -> Result<Vec<ProjPoint>, PgError> {
    if p.0.len() != q.0.len() {
        return Err(PgError::DimensionMismatch(p.dim(), q.dim()));
    }
    let p = normalize(f, &p.0)?;
    let q = normalize(f, &q.0)?;
    if p == q {
        return Err(PgError::EqualPoints);
    }
    let mut out = vec![p.clone()];
    for lambda in f.elements() {
        let raw: Vec<u32> = p.0.iter().zip(&q.0).map(|(&x, &y)| f.add(f.mul(lambda, x), y)).collect();
        out.push(normalize(f, &raw)?);
    }
    out.sort();
    Ok(out)
}

/// Packs a coordinate vector into a `u64` whose integer order is the
/// lexicographic order of the vectors.
#[inline]
pub fn pack(coords: &[u32], order: u32) -> u64 {
    coords.iter().fold(0u64, |acc, &c| acc * order as u64 + c as u64)
}

#[inline]
pub fn unpack(mut key: u64, order: u32, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (key % order as u64) as u32;
        key /= order as u64;
    }
}

/// PG(n, F) with an indexable, restartable point stream.
#[derive(Clone, Copy)]
pub struct Space<'a, F: FiniteField + ?Sized> {
    dim: usize,
    field: &'a F,
}

impl<'a, F: FiniteField + ?Sized> Space<'a, F> {
    pub fn new(dim: usize, field: &'a F) -> Result<Self, PgError> {
        if dim == 0 {
            return Err(PgError::BadDimension);
        }
        Ok(Self { dim, field })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    /// (q^(n+1) - 1)/(q - 1).
    pub fn num_points(&self) -> u64 {
        let q = self.field.order() as u64;
        (0..=self.dim as u32).map(|k| q.pow(k)).sum()
    }

    /// Number of points with `x0 = 0`, which are exactly the first indices.
    pub fn num_points_at_infinity(&self) -> u64 {
        let q = self.field.order() as u64;
        (0..self.dim as u32).map(|k| q.pow(k)).sum()
    }

    /// Writes the coordinates of point number `idx` into `out` (length n+1).
    pub fn write_point(&self, mut idx: u64, out: &mut [u32]) {
        let q = self.field.order() as u64;
        let n = self.dim;
        // Block k holds the q^k vectors whose leading 1 sits at position n - k.
        let mut k = 0usize;
        let mut block = 1u64;
        while idx >= block {
            idx -= block;
            k += 1;
            block *= q;
        }
        assert!(k <= n, "point index out of range");
        let lead = n - k;
        out[..lead].fill(0);
        out[lead] = 1;
        for pos in (lead + 1..=n).rev() {
            out[pos] = (idx % q) as u32;
            idx /= q;
        }
    }

    pub fn point_at(&self, idx: u64) -> ProjPoint {
        let mut v = vec![0u32; self.dim + 1];
        self.write_point(idx, &mut v);
        ProjPoint(v)
    }

    /// Inverse of [`Space::point_at`] for a normalized vector.
    pub fn index_of(&self, coords: &[u32]) -> u64 {
        let q = self.field.order() as u64;
        let n = self.dim;
        let lead = coords.iter().position(|&c| c != 0).expect("non-zero vector");
        let k = n - lead;
        let offset: u64 = (0..k as u32).map(|j| q.pow(j)).sum();
        offset + coords[lead + 1..].iter().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    /// All points from index `start` on.
    pub fn points_from(&self, start: u64) -> impl Iterator<Item = ProjPoint> + '_ {
        (start..self.num_points()).map(move |i| self.point_at(i))
    }

    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        self.points_from(0)
    }

    /// The hyperplane stream is the point stream read as dual vectors.
    pub fn hyperplanes(&self) -> impl Iterator<Item = Hyperplane> + '_ {
        self.points()
    }
}

/// A duplicate-free point set stored as sorted packed keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    order: u32,
    keys: Vec<u64>,
}

impl PointSet {
    pub fn new(dim: usize, order: u32) -> Self {
        assert!(
            (order as f64).powi(dim as i32 + 1) < u64::MAX as f64,
            "PG({dim},{order}) does not fit packed keys"
        );
        Self { dim, order, keys: Vec::new() }
    }

    pub fn from_keys(dim: usize, order: u32, mut keys: Vec<u64>) -> Self {
        let mut s = Self::new(dim, order);
        keys.sort_unstable();
        keys.dedup();
        s.keys = keys;
        s
    }

    /// Collects normalized coordinate vectors.
    pub fn from_coords<I, V>(dim: usize, order: u32, it: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let keys = it.into_iter().map(|v| pack(v.as_ref(), order)).collect();
        Self::from_keys(dim, order, keys)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn contains(&self, coords: &[u32]) -> bool {
        self.keys.binary_search(&pack(coords, self.order)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.keys.iter().map(move |&k| {
            let mut v = vec![0u32; self.dim + 1];
            unpack(k, self.order, &mut v);
            v
        })
    }

    pub fn points(&self) -> impl Iterator<Item = ProjPoint> + '_ {
        self.iter().map(ProjPoint)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        assert_eq!((self.dim, self.order), (other.dim, other.order));
        let mut keys = self.keys.clone();
        keys.extend_from_slice(&other.keys);
        PointSet::from_keys(self.dim, self.order, keys)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.keys.iter().all(|k| other.keys.binary_search(k).is_ok())
    }

    pub fn filter(&self, mut keep: impl FnMut(&[u32]) -> bool) -> PointSet {
        let mut v = vec![0u32; self.dim + 1];
        let keys = self
            .keys
            .iter()
            .copied()
            .filter(|&k| {
                unpack(k, self.order, &mut v);
                keep(&v)
            })
            .collect();
        PointSet { dim: self.dim, order: self.order, keys }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{Fq, Fq2};
    use std::collections::HashSet;

    #[test]
    fn normalize_examples() {
        let f5 = Fq::with_order(5).unwrap();
        assert_eq!(normalize(&f5, &[2, 4, 0]).unwrap().coords(), &[1, 2, 0]);
        assert_eq!(normalize(&f5, &[1, 3, 2, 4]).unwrap().coords(), &[1, 3, 2, 4]);
        assert_eq!(normalize(&f5, &[0, 0, 3]).unwrap().coords(), &[0, 0, 1]);
        assert_eq!(normalize(&f5, &[0, 0, 0]), Err(PgError::ZeroVector));
        assert_eq!(normalize(&f5, &[0, 7]), Err(PgError::BadCoordinate(7)));
    }

    #[test]
    fn enumeration_examples() {
        let f2 = Fq::with_order(2).unwrap();
        let pg12 = Space::new(1, &f2).unwrap();
        let pts: Vec<String> = pg12.points().map(|p| p.to_string()).collect();
        assert_eq!(pts, ["0:1", "1:0", "1:1"]);
        let f9 = Fq2::for_q(3).unwrap();
        assert_eq!(Space::new(3, &f9).unwrap().num_points(), 820);
        let f3 = Fq::with_order(3).unwrap();
        let pg63 = Space::new(6, &f3).unwrap();
        assert_eq!(pg63.points().count(), 1093);
        assert_eq!(pg63.num_points_at_infinity(), 364);
    }

    #[test]
    fn enumeration_is_sorted_normalized_and_indexable() {
        let f4 = Fq::with_order(4).unwrap();
        let s = Space::new(3, &f4).unwrap();
        let pts: Vec<ProjPoint> = s.points().collect();
        assert_eq!(pts.len() as u64, s.num_points());
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(normalize(&f4, p.coords()).unwrap(), *p);
            assert_eq!(s.index_of(p.coords()), i as u64);
            assert_eq!((i as u64) < s.num_points_at_infinity(), p.coords()[0] == 0);
        }
        let restarted: Vec<ProjPoint> = s.points_from(40).collect();
        assert_eq!(restarted, pts[40..]);
    }

    #[test]
    fn incidence_examples() {
        let f5 = Fq::with_order(5).unwrap();
        let p = |v: &[u32]| ProjPoint::from_normalized(v.to_vec());
        assert!(incident(&f5, &p(&[1, 0, 0, 0]), &p(&[0, 0, 0, 1])).unwrap());
        assert!(incident(&f5, &p(&[1, 1, 0, 0]), &p(&[1, 4, 0, 0])).unwrap());
        assert!(!incident(&f5, &p(&[1, 0, 0, 0]), &p(&[1, 0, 0, 0])).unwrap());
        assert_eq!(
            incident(&f5, &p(&[1, 0, 0]), &p(&[1, 0, 0, 0])),
            Err(PgError::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn line_examples() {
        let f2 = Fq::with_order(2).unwrap();
        let p = |v: &[u32]| ProjPoint::from_normalized(v.to_vec());
        let l = line_through(&f2, &p(&[1, 0, 0]), &p(&[0, 1, 0])).unwrap();
        let s: HashSet<String> = l.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, HashSet::from(["1:0:0".into(), "0:1:0".into(), "1:1:0".into()]));
        let f3 = Fq::with_order(3).unwrap();
        assert_eq!(line_through(&f3, &p(&[1, 0, 0]), &p(&[0, 0, 1])).unwrap().len(), 4);
        assert_eq!(line_through(&f3, &p(&[1, 2, 0]), &p(&[1, 2, 0])), Err(PgError::EqualPoints));
        let v = p(&[0, 0, 0, 0, 0, 1, 0]);
        let o = p(&[1, 0, 0, 0, 0, 0, 0]);
        let mut expect = vec![v.clone()];
        expect.extend((0..3).map(|c| p(&[1, 0, 0, 0, 0, c, 0])));
        expect.sort();
        assert_eq!(line_through(&f3, &v, &o).unwrap(), expect);
    }

    #[test]
    fn every_point_of_pg3_9_lies_on_the_same_number_of_hyperplanes() {
        let f9 = Fq2::for_q(3).unwrap();
        let s = Space::new(3, &f9).unwrap();
        let hyps: Vec<ProjPoint> = s.hyperplanes().collect();
        // (9^3 - 1)/(9 - 1) = 91 hyperplanes through each point
        for idx in [0u64, 17, 400, 819] {
            let pt = s.point_at(idx);
            let n = hyps.iter().filter(|h| incident(&f9, &pt, h).unwrap()).count();
            assert_eq!(n, 91);
        }
    }

    #[test]
    fn point_string_round_trip() {
        let p: ProjPoint = "0:1:2:0".parse().unwrap();
        assert_eq!(p.coords(), &[0, 1, 2, 0]);
        assert_eq!(p.to_string(), "0:1:2:0");
        assert_eq!("0:0".parse::<ProjPoint>(), Err(PgError::ZeroVector));
        assert!("1:x".parse::<ProjPoint>().is_err());
    }

    #[test]
    fn point_set_keys_follow_enumeration_order() {
        let f3 = Fq::with_order(3).unwrap();
        let s = Space::new(2, &f3).unwrap();
        let pts: Vec<Vec<u32>> = s.points().map(|p| p.into_coords()).collect();
        let set = PointSet::from_coords(2, 3, pts.iter().rev());
        assert_eq!(set.iter().collect::<Vec<_>>(), pts);
        assert!(set.contains(&[0, 1, 2]));
        let half = set.filter(|c| c[0] == 0);
        assert_eq!(half.len(), 4);
        assert!(half.is_subset(&set));
    }
}
