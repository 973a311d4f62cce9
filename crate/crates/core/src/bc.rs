// SPDX-License-Identifier: Apache-2.0

//! The Barlotti–Cofman model of PG(3,q²) inside PG(6,q).
//!
//! Affine points go through `ψ: (1, X, Y, Z) ↦ (1, X0, X1, Y0, Y1, Z0, Z1)`,
//! where each coordinate is split over the basis {1, ε}. The point at
//! infinity `P = (0, X, Y, Z)` becomes the spread line `r_P` of the
//! hyperplane `Π∞ = {x0 = 0}`, given by five linear equations that depend
//! on the parity of q.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ff::{FiniteField, Fq2};
use crate::linalg;
use crate::pg::{self, PgError, PointSet, ProjPoint, Space};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BcError {
    #[error("point lies at infinity")]
    PointAtInfinity,
    #[error("point is not at infinity")]
    NotAtInfinity,
    #[error("degenerate line")]
    DegenerateLine,
    #[error("expected a point of PG({expected},q), got PG({got},q)")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Pg(#[from] PgError),
}

fn check_len(p: &[u32], len: usize) -> Result<(), BcError> {
    if p.len() != len {
        return Err(BcError::Dimension { expected: len - 1, got: p.len().saturating_sub(1) });
    }
    Ok(())
}

/// `ψ` on a normalized affine point of PG(3,q²).
pub fn psi(f: &Fq2, p: &[u32]) -> Result<[u32; 7], BcError> {
    check_len(p, 4)?;
    if p[0] == 0 {
        return Err(BcError::PointAtInfinity);
    }
    let p = pg::normalize(f, p)?;
    let c = p.coords();
    let (x0, x1) = f.split(c[1]);
    let (y0, y1) = f.split(c[2]);
    let (z0, z1) = f.split(c[3]);
    Ok([1, x0, x1, y0, y1, z0, z1])
}

/// Inverse of [`psi`] on a point of PG(6,q) with `x0 ≠ 0`.
pub fn psi_inverse(f: &Fq2, x: &[u32]) -> Result<[u32; 4], BcError> {
    check_len(x, 7)?;
    if x[0] == 0 {
        return Err(BcError::PointAtInfinity);
    }
    let x = pg::normalize(f.base(), x)?;
    let c = x.coords();
    Ok([1, f.join(c[1], c[2]), f.join(c[3], c[4]), f.join(c[5], c[6])])
}

/// The three canonical forms of a point at infinity of PG(3,q²).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LineType {
    /// `(0, 1, k, h)`
    A,
    /// `(0, 0, 1, h)`
    B,
    /// `P∞ = (0, 0, 0, 1)`
    C,
}

/// A line of the Desarguesian spread of Π∞, labelled by its point of PG(3,q²).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadLine {
    label: ProjPoint,
    kind: LineType,
    points: Vec<[u32; 7]>,
    span: [[u32; 7]; 2],
}

impl SpreadLine {
    pub fn label(&self) -> &ProjPoint {
        &self.label
    }

    pub fn kind(&self) -> LineType {
        self.kind
    }

    /// The q + 1 points, normalized and sorted.
    pub fn points(&self) -> &[[u32; 7]] {
        &self.points
    }

    /// The points with `(u, v) = (1, 0)` and `(0, 1)`, which span the line.
    pub fn span(&self) -> [[u32; 7]; 2] {
        self.span
    }
}

struct Coords<'a>(&'a [u32]);

impl fmt::Display for Coords<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                out.write_str(":")?;
            }
            write!(out, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for SpreadLine {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let [p, q] = self.span();
        let mut st = s.serialize_struct("SpreadLine", 2)?;
        st.serialize_field("label", &self.label.to_string())?;
        st.serialize_field("span", &[Coords(&p).to_string(), Coords(&q).to_string()])?;
        st.end()
    }
}

/// Multiplies `(u, v) ↦ k·(u + εv)` in components, using the published
/// linear systems: `(k0u + δk1v, k1u + k0v)` for q odd and
/// `(k0u + δk1v, k1u + (k0 + k1)v)` for q even.
#[inline]
fn scale(f: &Fq2, k: u32, u: u32, v: u32) -> (u32, u32) {
    let g = f.base();
    let (k0, k1) = f.split(k);
    let d = f.delta();
    let first = g.add(g.mul(k0, u), g.mul(d, g.mul(k1, v)));
    let second = if f.is_odd() {
        g.add(g.mul(k1, u), g.mul(k0, v))
    } else {
        g.add(g.mul(k1, u), g.mul(g.add(k0, k1), v))
    };
    (first, second)
}

/// Parameters `(u, v)` of PG(1,q) in the order `(0,1), (1,0), (1,1), …`.
fn pg1(q: u32) -> impl Iterator<Item = (u32, u32)> {
    std::iter::once((0, 1)).chain((0..q).map(|t| (1, t)))
}

/// Reduces a point at infinity to canonical form.
pub fn canonical_label(f: &Fq2, p: &[u32]) -> Result<(ProjPoint, LineType), BcError> {
    check_len(p, 4)?;
    if p[0] != 0 {
        return Err(BcError::NotAtInfinity);
    }
    let p = pg::normalize(f, p)?;
    let kind = match p.coords() {
        [_, 1, _, _] => LineType::A,
        [_, 0, 1, _] => LineType::B,
        _ => LineType::C,
    };
    Ok((p, kind))
}

/// The spread line `r_P` of an infinity point of PG(3,q²).
pub fn spread_line(f: &Fq2, p: &[u32]) -> Result<SpreadLine, BcError> {
    let (label, kind) = canonical_label(f, p)?;
    let c = label.coords();
    let g = f.base();
    let mut points: Vec<[u32; 7]> = pg1(f.q())
        .map(|(u, v)| {
            let raw = match kind {
                LineType::A => {
                    let (x3, x4) = scale(f, c[2], u, v);
                    let (x5, x6) = scale(f, c[3], u, v);
                    [0, u, v, x3, x4, x5, x6]
                }
                LineType::B => {
                    let (x5, x6) = scale(f, c[3], u, v);
                    [0, 0, 0, u, v, x5, x6]
                }
                LineType::C => [0, 0, 0, 0, 0, u, v],
            };
            let mut out = raw;
            pg::normalize_in_place(g, &mut out).expect("non-zero");
            out
        })
        .collect();
    // pg1 yields (0,1) then (1,0).
    let span = [points[1], points[0]];
    points.sort_unstable();
    Ok(SpreadLine { label, kind, points, span })
}

/// The label of the spread line through a point of Π∞.
pub fn label_of(f: &Fq2, x: &[u32]) -> Result<ProjPoint, BcError> {
    check_len(x, 7)?;
    if x[0] != 0 {
        return Err(BcError::NotAtInfinity);
    }
    let raw = [0, f.join(x[1], x[2]), f.join(x[3], x[4]), f.join(x[5], x[6])];
    Ok(pg::normalize(f, &raw)?)
}

/// Number of spread lines, `q⁴ + q² + 1`.
pub fn spread_size(q: u64) -> u64 {
    q.pow(4) + q * q + 1
}

/// The labels of the spread: the points at infinity of PG(3,q²) in
/// enumeration order.
pub fn spread_labels(f: &Fq2) -> impl Iterator<Item = ProjPoint> + '_ {
    let space = Space::new(3, f).expect("dimension 3");
    let inf = space.num_points_at_infinity();
    (0..inf).map(move |i| space.point_at(i))
}

/// The `idx`-th spread line.
pub fn spread_line_at(f: &Fq2, idx: u64) -> SpreadLine {
    let space = Space::new(3, f).expect("dimension 3");
    spread_line(f, space.point_at(idx).coords()).expect("infinity point")
}

/// All `q⁴ + q² + 1` spread lines.
pub fn enum_spread(f: &Fq2) -> Vec<SpreadLine> {
    spread_labels(f).map(|l| spread_line(f, l.coords()).expect("infinity point")).collect()
}

/// Outcome of a disjointness and covering check of the spread.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpreadCheck {
    pub lines: u64,
    pub points_covered: u64,
    pub points_at_infinity: u64,
    pub disjoint: bool,
    pub covering: bool,
}

impl SpreadCheck {
    pub fn pass(&self) -> bool {
        self.disjoint && self.covering
    }
}

/// Checks that the spread lines partition Π∞ ≅ PG(5,q).
pub fn spread_selftest(f: &Fq2) -> SpreadCheck {
    let g = f.base();
    let pi_inf = Space::new(5, g).expect("dimension 5").num_points();
    let mut seen = vec![false; pi_inf as usize];
    let inner = Space::new(5, g).expect("dimension 5");
    let mut lines = 0;
    let mut covered = 0;
    let mut disjoint = true;
    for l in spread_labels(f) {
        let line = spread_line(f, l.coords()).expect("infinity point");
        lines += 1;
        for p in line.points() {
            let idx = inner.index_of(&p[1..]) as usize;
            if seen[idx] {
                disjoint = false;
            } else {
                seen[idx] = true;
                covered += 1;
            }
        }
    }
    SpreadCheck {
        lines,
        points_covered: covered,
        points_at_infinity: pi_inf,
        disjoint,
        covering: covered == pi_inf,
    }
}

/// Checks that the ψ-image of the affine line `{A + tP}` together with
/// `r_P` is a plane of PG(6,q) meeting Π∞ exactly in `r_P`.
pub fn incidence_oracle(f: &Fq2, a: &[u32], p: &[u32]) -> Result<bool, BcError> {
    check_len(a, 4)?;
    check_len(p, 4)?;
    if a[0] == 0 || p[0] != 0 || p.iter().all(|&c| c == 0) {
        return Err(BcError::DegenerateLine);
    }
    let a = pg::normalize(f, a)?;
    let a = a.coords();
    let g = f.base();
    let line = spread_line(f, p)?;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for t in f.elements() {
        let pt: Vec<u32> = a.iter().zip(p).map(|(&x, &y)| f.add(x, f.mul(t, y))).collect();
        rows.push(psi(f, &pt)?.to_vec());
    }
    let affine = rows.len();
    rows.extend(line.points().iter().map(|p| p.to_vec()));
    if linalg::rank(g, &rows) != 3 {
        return Ok(false);
    }
    // A plane has q² + q + 1 points; ours has q² affine ones plus r_P, all distinct.
    let set = PointSet::from_coords(6, g.order(), rows.iter());
    let q = g.order() as usize;
    Ok(affine == q * q && set.len() == q * q + q + 1)
}
