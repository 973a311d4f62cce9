// SPDX-License-Identifier: Apache-2.0

//! Hypersurfaces of PG(6,q) in the Barlotti–Cofman model: the quadratic cone
//! `B'` of a BM surface, the BT hypersurface `C³_ε`, the quadric `Q` cut on
//! `Π∞` by `B'`, the set `F̄`, and the Hermitian tangent cone. Also the base
//! matrix of `B'` and quadric classification in odd-dimensional PG(n,q).

use serde::Serialize;
use thiserror::Error;

use crate::ff::{FiniteField, Fq, Fq2};
use crate::linalg;
use crate::pg::{PointSet, Space};
use crate::varieties::{BmParams, BtParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypersurfaceError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("only defined for q odd")]
    EvenCharacteristic,
    #[error("quadric is degenerate")]
    DegenerateQuadric,
}

/// The vertex `V = (0,0,0,0,0,1,0)` of `B'` and of `C³_ε`.
pub const VERTEX: [u32; 7] = [0, 0, 0, 0, 0, 1, 0];

/// Coordinates of the base of the cone: `[x0, x1, x2, x3, x4, x6]`.
pub const BASE_COORDS: [usize; 6] = [0, 1, 2, 3, 4, 6];

/// A quadratic form `Σ_{i≤j} c_ij x_i x_j` over GF(q).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticForm {
    vars: usize,
    /// Upper-triangular coefficients, row-major.
    coeffs: Vec<Vec<u32>>,
}

impl QuadraticForm {
    pub fn zero(vars: usize) -> Self {
        Self { vars, coeffs: vec![vec![0; vars]; vars] }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Adds `c · x_i x_j`.
    pub fn add_term(&mut self, g: &Fq, i: usize, j: usize, c: u32) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.coeffs[i][j] = g.add(self.coeffs[i][j], c);
    }

    pub fn coeff(&self, i: usize, j: usize) -> u32 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.coeffs[i][j]
    }

    pub fn eval(&self, g: &Fq, x: &[u32]) -> u32 {
        let mut acc = 0;
        for i in 0..self.vars {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0;
            for j in i..self.vars {
                let c = self.coeffs[i][j];
                if c != 0 && x[j] != 0 {
                    row = g.add(row, g.mul(c, x[j]));
                }
            }
            acc = g.add(acc, g.mul(x[i], row));
        }
        acc
    }

    /// The polar form `B(u, v) = Q(u + v) - Q(u) - Q(v)`.
    pub fn polar(&self, g: &Fq, u: &[u32], v: &[u32]) -> u32 {
        let m = self.gram(g);
        let mut acc = 0;
        for i in 0..self.vars {
            for j in 0..self.vars {
                acc = g.add(acc, g.mul(u[i], g.mul(m[i][j], v[j])));
            }
        }
        acc
    }

    /// The Gram matrix of the polar form: `a_ii = 2c_ii`, `a_ij = a_ji = c_ij`.
    pub fn gram(&self, g: &Fq) -> Vec<Vec<u32>> {
        let mut a = vec![vec![0; self.vars]; self.vars];
        for i in 0..self.vars {
            a[i][i] = g.add(self.coeffs[i][i], self.coeffs[i][i]);
            for j in i + 1..self.vars {
                a[i][j] = self.coeffs[i][j];
                a[j][i] = self.coeffs[i][j];
            }
        }
        a
    }

    /// Restriction to the listed coordinates (the others set to zero).
    pub fn restrict(&self, keep: &[usize]) -> QuadraticForm {
        let coeffs = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| if i <= j { self.coeffs[i][j] } else { 0 }).collect())
            .collect();
        QuadraticForm { vars: keep.len(), coeffs }
    }
}

/// The quadratic form of `B'`, built from the coefficients of its printed
/// equation for the parity of q.
pub fn bprime_form(f: &Fq2, bm: BmParams) -> QuadraticForm {
    let g = f.base();
    let d = f.delta();
    let (a0, a1) = f.split(bm.a);
    let (_, b1) = f.split(bm.b);
    let mut qf = QuadraticForm::zero(7);
    qf.add_term(g, 0, 6, 1);
    if f.is_odd() {
        let two_a0 = g.add(a0, a0);
        let d1 = g.sub(a1, b1);
        let d2 = g.mul(d, g.add(a1, b1));
        for (i, j) in [(1, 2), (3, 4)] {
            qf.add_term(g, i, j, two_a0);
            qf.add_term(g, i, i, d1);
            qf.add_term(g, j, j, d2);
        }
    } else {
        let c1 = g.add(a1, b1);
        let c2 = g.add(g.add(a0, a1), g.mul(d, g.add(a1, b1)));
        for (i, j) in [(1, 2), (3, 4)] {
            qf.add_term(g, i, i, c1);
            qf.add_term(g, j, j, c2);
            qf.add_term(g, i, j, b1);
        }
    }
    qf
}

/// `B'` as printed, odd q:
/// `x0x6 + a0(2(x1x2 + x3x4)) + a1(x1² + x3² + δ(x2² + x4²)) - b1(x1² - δx2² + x3² - δx4²)`.
fn bprime_odd(g: &Fq, d: u32, a0: u32, a1: u32, b1: u32, x: &[u32]) -> u32 {
    let sq = |v: u32| g.mul(v, v);
    let t0 = g.mul(x[0], x[6]);
    let t1 = g.mul(a0, g.mul(g.add(1, 1), g.add(g.mul(x[1], x[2]), g.mul(x[3], x[4]))));
    let t2 = g.mul(a1, g.add(g.add(sq(x[1]), sq(x[3])), g.mul(d, g.add(sq(x[2]), sq(x[4])))));
    let n = g.sub(g.add(g.sub(sq(x[1]), g.mul(d, sq(x[2]))), sq(x[3])), g.mul(d, sq(x[4])));
    let t3 = g.mul(b1, n);
    g.sub(g.add(g.add(t0, t1), t2), t3)
}

/// `B'` as printed, even q:
/// `x0x6 + a0(x2² + x4²) + a1(x1² + x2² + δx2² + x3² + x4² + δx4²)
///  + b1(x1² + δx2² + x1x2 + x3² + δx4² + x3x4)`.
fn bprime_even(g: &Fq, d: u32, a0: u32, a1: u32, b1: u32, x: &[u32]) -> u32 {
    let sq = |v: u32| g.mul(v, v);
    let sum = |vs: &[u32]| vs.iter().fold(0, |acc, &v| g.add(acc, v));
    let t0 = g.mul(x[0], x[6]);
    let t1 = g.mul(a0, g.add(sq(x[2]), sq(x[4])));
    let t2 = g.mul(
        a1,
        sum(&[sq(x[1]), sq(x[2]), g.mul(d, sq(x[2])), sq(x[3]), sq(x[4]), g.mul(d, sq(x[4]))]),
    );
    let t3 = g.mul(
        b1,
        sum(&[
            sq(x[1]),
            g.mul(d, sq(x[2])),
            g.mul(x[1], x[2]),
            sq(x[3]),
            g.mul(d, sq(x[4])),
            g.mul(x[3], x[4]),
        ]),
    );
    sum(&[t0, t1, t2, t3])
}

/// Exact evaluation of the printed `B'` equation for the parity of q.
pub fn bprime_member(f: &Fq2, bm: BmParams, x: &[u32]) -> bool {
    let g = f.base();
    let (a0, a1) = f.split(bm.a);
    let (_, b1) = f.split(bm.b);
    let v = if f.is_odd() {
        bprime_odd(g, f.delta(), a0, a1, b1, x)
    } else {
        bprime_even(g, f.delta(), a0, a1, b1, x)
    };
    v == 0
}

/// `x0^{σ+1} x6 = x1^{σ+2} + x0^σ x1x2 + x0² x2^σ + x3^{σ+2} + x0^σ x3x4 + x0² x4^σ`.
pub fn c3eps_member(g: &Fq, bt: BtParams, x: &[u32]) -> bool {
    let s = bt.sigma;
    let x0s = g.pow(x[0], s);
    let x02 = g.mul(x[0], x[0]);
    let lhs = g.mul(g.mul(x0s, x[0]), x[6]);
    let half = |u: u32, v: u32| {
        g.add(g.add(g.pow(u, s + 2), g.mul(x0s, g.mul(u, v))), g.mul(x02, g.pow(v, s)))
    };
    lhs == g.add(half(x[1], x[2]), half(x[3], x[4]))
}

/// `x0 = 0` and `x1² - δx2² + x3² - δx4² = 0`, for q odd.
pub fn fbar_member(f: &Fq2, x: &[u32]) -> Result<bool, HypersurfaceError> {
    if !f.is_odd() {
        return Err(HypersurfaceError::EvenCharacteristic);
    }
    Ok(x[0] == 0 && norm_form(f, x) == 0)
}

/// `x1² - δx2² + x3² - δx4²`, the split form of `X^{q+1} + Y^{q+1}`.
fn norm_form(f: &Fq2, x: &[u32]) -> u32 {
    let g = f.base();
    let d = f.delta();
    let sq = |v: u32| g.mul(v, v);
    g.sub(g.add(g.sub(sq(x[1]), g.mul(d, sq(x[2]))), sq(x[3])), g.mul(d, sq(x[4])))
}

/// The quadric `B' ∩ Π∞` as printed: for q odd
/// `(a1 - b1)(x1² + x3²) + δ(a1 + b1)(x2² + x4²) + 2a0(x1x2 + x3x4)`, for q even
/// `(a0 + a1)(x2² + x4²) + (a1 + b1)(x1² + δx2² + x3² + δx4²) + b1(x1x2 + x3x4)`.
pub fn infinity_quadric_member(f: &Fq2, bm: BmParams, x: &[u32]) -> bool {
    if x[0] != 0 {
        return false;
    }
    let g = f.base();
    let d = f.delta();
    let (a0, a1) = f.split(bm.a);
    let (_, b1) = f.split(bm.b);
    let sq = |v: u32| g.mul(v, v);
    let cross = g.add(g.mul(x[1], x[2]), g.mul(x[3], x[4]));
    let v = if f.is_odd() {
        let t1 = g.mul(g.sub(a1, b1), g.add(sq(x[1]), sq(x[3])));
        let t2 = g.mul(g.mul(d, g.add(a1, b1)), g.add(sq(x[2]), sq(x[4])));
        let t3 = g.mul(g.add(a0, a0), cross);
        g.add(g.add(t1, t2), t3)
    } else {
        let t1 = g.mul(g.add(a0, a1), g.add(sq(x[2]), sq(x[4])));
        let inner = g.add(g.add(sq(x[1]), g.mul(d, sq(x[2]))), g.add(sq(x[3]), g.mul(d, sq(x[4]))));
        let t2 = g.mul(g.add(a1, b1), inner);
        let t3 = g.mul(b1, cross);
        g.add(g.add(t1, t2), t3)
    };
    v == 0
}

/// The ψ-image of the Hermitian surface `B_{0,b}`,
/// `2δb1(X^{q+1} + Y^{q+1}) + εZ^qJ - εZJ^q = 0`, q odd, `b1 ≠ 0`:
/// the cone `x0x6 - b1(x1² - δx2² + x3² - δx4²) = 0`.
pub fn hermitian_cone_form(f: &Fq2, b1: u32) -> QuadraticForm {
    let g = f.base();
    let d = f.delta();
    let mut qf = QuadraticForm::zero(7);
    qf.add_term(g, 0, 6, 1);
    let nb = g.neg(b1);
    for (i, j) in [(1, 2), (3, 4)] {
        qf.add_term(g, i, i, nb);
        qf.add_term(g, j, j, g.mul(b1, d));
    }
    qf
}

/// A hypersurface of PG(6,q) with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypersurface6 {
    BprimeOdd(BmParams),
    BprimeEven(BmParams),
    C3eps(BtParams),
    Fbar,
    InfinityQuadric(BmParams),
    HermitianCone { b1: u32 },
}

impl Hypersurface6 {
    /// `B'` for the parity of the field.
    pub fn bprime(f: &Fq2, bm: BmParams) -> Self {
        if f.is_odd() {
            Hypersurface6::BprimeOdd(bm)
        } else {
            Hypersurface6::BprimeEven(bm)
        }
    }

    pub fn hermitian_cone(f: &Fq2, b1: u32) -> Result<Self, HypersurfaceError> {
        if !f.is_odd() {
            return Err(HypersurfaceError::EvenCharacteristic);
        }
        if b1 == 0 || b1 >= f.q() {
            return Err(HypersurfaceError::InvalidParams("b1 must be a non-zero element of GF(q)".into()));
        }
        Ok(Hypersurface6::HermitianCone { b1 })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Hypersurface6::BprimeOdd(_) => "bprime-odd",
            Hypersurface6::BprimeEven(_) => "bprime-even",
            Hypersurface6::C3eps(_) => "c3eps",
            Hypersurface6::Fbar => "fbar",
            Hypersurface6::InfinityQuadric(_) => "infinity-quadric",
            Hypersurface6::HermitianCone { .. } => "hermitian-cone",
        }
    }

    /// Total membership predicate over PG(6,q). Panics if the variant does
    /// not match the parity of the field.
    pub fn member(&self, f: &Fq2, x: &[u32]) -> bool {
        match self {
            Hypersurface6::BprimeOdd(bm) => {
                assert!(f.is_odd(), "odd B' over an even field");
                bprime_member(f, *bm, x)
            }
            Hypersurface6::BprimeEven(bm) => {
                assert!(!f.is_odd(), "even B' over an odd field");
                bprime_member(f, *bm, x)
            }
            Hypersurface6::C3eps(bt) => c3eps_member(f.base(), *bt, x),
            Hypersurface6::Fbar => fbar_member(f, x).expect("F̄ needs q odd"),
            Hypersurface6::InfinityQuadric(bm) => infinity_quadric_member(f, *bm, x),
            Hypersurface6::HermitianCone { b1 } => hermitian_cone_form(f, *b1).eval(f.base(), x) == 0,
        }
    }

    /// The quadratic form, for the quadratic variants defined on all of PG(6,q).
    pub fn quadratic_form(&self, f: &Fq2) -> Option<QuadraticForm> {
        match self {
            Hypersurface6::BprimeOdd(bm) | Hypersurface6::BprimeEven(bm) => Some(bprime_form(f, *bm)),
            Hypersurface6::HermitianCone { b1 } => Some(hermitian_cone_form(f, *b1)),
            _ => None,
        }
    }

    /// Materializes the point set by filtering PG(6,q).
    pub fn points(&self, f: &Fq2) -> PointSet {
        let g = f.base();
        let space = Space::new(6, g).expect("dimension 6");
        let mut x = [0u32; 7];
        let mut keys = Vec::new();
        for idx in 0..space.num_points() {
            space.write_point(idx, &mut x);
            if self.member(f, &x) {
                keys.push(crate::pg::pack(&x, g.order()));
            }
        }
        PointSet::from_keys(6, g.order(), keys)
    }
}

/// The base of the cone `B'` in coordinates `[x0, x1, x2, x3, x4, x6]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadricMatrix {
    /// Gram array `a_ii = 2c_ii`, `a_ij = c_ij`.
    pub a: Vec<Vec<u32>>,
    /// Alternating companion `b_ii = 0`, `b_ij = a_ij`, `b_ji = -a_ij` (i < j).
    pub b: Vec<Vec<u32>>,
    pub det_a: u32,
    pub det_b: u32,
    #[serde(skip)]
    pub form: QuadraticForm,
}

pub fn base_matrix(f: &Fq2, bm: BmParams) -> QuadricMatrix {
    quadric_matrix(f.base(), bprime_form(f, bm).restrict(&BASE_COORDS))
}

pub fn quadric_matrix(g: &Fq, form: QuadraticForm) -> QuadricMatrix {
    let a = form.gram(g);
    let n = a.len();
    let mut b = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            b[i][j] = a[i][j];
            b[j][i] = g.neg(a[i][j]);
        }
    }
    let det_a = linalg::det(g, &a);
    let det_b = linalg::det(g, &b);
    QuadricMatrix { a, b, det_a, det_b, form }
}

/// Closed form of `det(A)`: `-16(δa1² - δb1² - a0²)²` for q odd, `b1⁴` for q even.
pub fn det_closed_form(f: &Fq2, bm: BmParams) -> u32 {
    let g = f.base();
    let (a0, a1) = f.split(bm.a);
    let (_, b1) = f.split(bm.b);
    if f.is_odd() {
        let d = f.delta();
        let inner = g.sub(g.sub(g.mul(d, g.mul(a1, a1)), g.mul(d, g.mul(b1, b1))), g.mul(a0, a0));
        let sixteen = (0..16).fold(0, |acc, _| g.add(acc, 1));
        g.neg(g.mul(sixteen, g.mul(inner, inner)))
    } else {
        g.pow(b1, 4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadricType {
    Hyperbolic,
    Elliptic,
    Parabolic,
    Degenerate,
}

/// Result of [`classify_quadric`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: QuadricType,
    pub points: u64,
    /// Projective dimension of the singular radical, `-1` when trivial.
    pub radical_dim: i64,
    /// Independent verdict: discriminant squareness for q odd, Arf invariant for q even.
    pub cross_check: Option<QuadricType>,
}

/// Point counts of the non-degenerate quadrics of PG(n,q):
/// `(Q+, Q-)` for n odd, `(Q, Q)` for n even.
pub fn quadric_sizes(n: u32, q: u64) -> (u64, u64) {
    let q = q as u128;
    let size = if n % 2 == 1 {
        let m = n.div_ceil(2);
        let plus = (q.pow(m - 1) + 1) * (q.pow(m) - 1) / (q - 1);
        let minus = (q.pow(m - 1) - 1) * (q.pow(m) + 1) / (q - 1);
        (plus, minus)
    } else {
        let p = (q.pow(n) - 1) / (q - 1);
        (p, p)
    };
    (size.0 as u64, size.1 as u64)
}

/// Classifies the quadric `Q(x) = 0` of PG(n,q) by counting its points, and
/// cross-checks a non-degenerate verdict algebraically when n is odd.
pub fn classify_quadric(g: &Fq, form: &QuadraticForm) -> Classification {
    let n = form.vars() - 1;
    let space = Space::new(n, g).expect("dimension ≥ 1");
    let mut x = vec![0u32; n + 1];
    let mut points = 0;
    for idx in 0..space.num_points() {
        space.write_point(idx, &mut x);
        if form.eval(g, &x) == 0 {
            points += 1;
        }
    }
    let radical_dim = radical_dimension(g, form);
    let (plus, minus) = quadric_sizes(n as u32, g.order() as u64);
    let kind = if radical_dim >= 0 {
        QuadricType::Degenerate
    } else if n.is_multiple_of(2) && points == plus {
        QuadricType::Parabolic
    } else if points == plus {
        QuadricType::Hyperbolic
    } else if points == minus {
        QuadricType::Elliptic
    } else {
        QuadricType::Degenerate
    };
    let cross_check = if n % 2 == 1 && radical_dim < 0 {
        if g.is_odd() {
            discriminant_type(g, form)
        } else {
            arf_type(g, form)
        }
    } else {
        None
    };
    Classification { kind, points, radical_dim, cross_check }
}

/// Singular vectors: the kernel of the polar form on which `Q` also vanishes.
fn radical_dimension(g: &Fq, form: &QuadraticForm) -> i64 {
    let ker = linalg::kernel(g, &form.gram(g));
    if ker.is_empty() {
        return -1;
    }
    if g.is_odd() {
        return ker.len() as i64 - 1;
    }
    // In characteristic 2, Q is semilinear on the polar kernel; count its zeros there.
    let k = ker.len() as u32;
    let total = (g.order() as u64).pow(k);
    let mut zeros = 0u64;
    let mut v = vec![0u32; form.vars()];
    for code in 1..total {
        v.iter_mut().for_each(|c| *c = 0);
        let mut c = code;
        for row in &ker {
            let s = (c % g.order() as u64) as u32;
            c /= g.order() as u64;
            for (slot, &r) in v.iter_mut().zip(row) {
                *slot = g.add(*slot, g.mul(s, r));
            }
        }
        if form.eval(g, &v) == 0 {
            zeros += 1;
        }
    }
    // zeros + 1 = q^(dim+1) for a subspace of dimension dim+1.
    let mut dim = -1i64;
    let mut size = 1u64;
    while size < zeros + 1 {
        size *= g.order() as u64;
        dim += 1;
    }
    dim
}

/// q odd, 2m variables: hyperbolic iff `(-1)^m det(A)` is a square.
fn discriminant_type(g: &Fq, form: &QuadraticForm) -> Option<QuadricType> {
    let a = form.gram(g);
    let m = a.len() / 2;
    let mut d = linalg::det(g, &a);
    if m % 2 == 1 {
        d = g.neg(d);
    }
    match g.is_square(d).ok()? {
        true if d != 0 => Some(QuadricType::Hyperbolic),
        false => Some(QuadricType::Elliptic),
        _ => None,
    }
}

/// q even: the Arf invariant from a symplectic basis of the polar form;
/// hyperbolic iff its absolute trace is 0.
fn arf_type(g: &Fq, form: &QuadraticForm) -> Option<QuadricType> {
    arf_invariant(g, form).map(|arf| {
        if g.abs_trace(arf) == 0 {
            QuadricType::Hyperbolic
        } else {
            QuadricType::Elliptic
        }
    })
}

/// `Σ Q(e_i) Q(f_i)` over a symplectic basis, or `None` if the polar form
/// is degenerate.
pub fn arf_invariant(g: &Fq, form: &QuadraticForm) -> Option<u32> {
    let n = form.vars();
    let mut pool: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    let mut arf = 0;
    while let Some(e) = pool.pop() {
        if e.iter().all(|&c| c == 0) {
            continue;
        }
        let pos = pool.iter().position(|w| form.polar(g, &e, w) != 0)?;
        let w = pool.swap_remove(pos);
        let s = g.inv(form.polar(g, &e, &w));
        let fv: Vec<u32> = w.iter().map(|&c| g.mul(c, s)).collect();
        arf = g.add(arf, g.mul(form.eval(g, &e), form.eval(g, &fv)));
        for w in pool.iter_mut() {
            let bf = form.polar(g, w, &fv);
            let be = form.polar(g, w, &e);
            for k in 0..n {
                w[k] = g.add(g.sub(w[k], g.mul(bf, e[k])), g.mul(be, fv[k]));
            }
        }
    }
    Some(arf)
}

/// Outcome of [`union_of_lines_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionOfLines {
    pub c3_size: u64,
    pub base_size: u64,
    pub union_size: u64,
    pub equal: bool,
    pub expected_c3_size: u64,
    pub expected_base_size: u64,
}

impl UnionOfLines {
    pub fn pass(&self) -> bool {
        self.equal
            && self.c3_size == self.expected_c3_size
            && self.base_size == self.expected_base_size
            && self.c3_size == self.union_size
    }
}

/// Checks that `C³_ε` is the union of the lines joining `V` to the points of
/// `C'³_ε = C³_ε ∩ {x5 = 0}`.
pub fn union_of_lines_check(f: &Fq2, bt: BtParams) -> UnionOfLines {
    let g = f.base();
    let c3 = Hypersurface6::C3eps(bt).points(f);
    let base = c3.filter(|x| x[5] == 0);
    let mut keys = vec![crate::pg::pack(&VERTEX, g.order())];
    for p in base.iter() {
        keys.push(crate::pg::pack(&p, g.order()));
        for lambda in 1..g.order() {
            let mut r = p.clone();
            r[5] = lambda;
            crate::pg::normalize_in_place(g, &mut r).expect("non-zero");
            keys.push(crate::pg::pack(&r, g.order()));
        }
    }
    let union = PointSet::from_keys(6, g.order(), keys);
    let q = g.order() as u64;
    UnionOfLines {
        c3_size: c3.len() as u64,
        base_size: base.len() as u64,
        union_size: union.len() as u64,
        equal: union == c3,
        expected_c3_size: (0..=5).map(|k| q.pow(k)).sum(),
        expected_base_size: (0..=4).map(|k| q.pow(k)).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Fq2 {
        Fq2::for_q(3).unwrap()
    }

    #[test]
    fn bprime_examples() {
        let f = f9();
        let bm = BmParams::default_for(&f);
        assert!(bprime_member(&f, bm, &VERTEX));
        assert!(bprime_member(&f, bm, &[1, 0, 0, 0, 0, 0, 0]));
        let h = Hypersurface6::bprime(&f, bm);
        let affine = h.points(&f).iter().filter(|x| x[0] == 1).count();
        assert_eq!(affine, 243);
    }

    #[test]
    fn vertex_is_singular() {
        for q in [3u32, 4, 5] {
            let f = Fq2::for_q(q).unwrap();
            let qf = bprime_form(&f, BmParams::default_for(&f));
            let g = f.base();
            let gram = qf.gram(g);
            assert!(gram.iter().all(|row| row[5] == 0));
            assert_eq!(qf.eval(g, &VERTEX), 0);
        }
    }

    #[test]
    fn printed_equation_agrees_with_stored_form() {
        for q in [3u32, 4] {
            let f = Fq2::for_q(q).unwrap();
            let g = f.base();
            let space = Space::new(6, g).unwrap();
            for bm in BmParams::all_valid(&f).step_by(7).take(8) {
                let qf = bprime_form(&f, bm);
                for p in space.points() {
                    assert_eq!(bprime_member(&f, bm, p.coords()), qf.eval(g, p.coords()) == 0);
                }
            }
        }
    }

    #[test]
    fn infinity_quadric_is_the_section_of_bprime() {
        for q in [3u32, 4, 5] {
            let f = Fq2::for_q(q).unwrap();
            let bm = BmParams::default_for(&f);
            let g = f.base();
            for p in Space::new(6, g).unwrap().points().filter(|p| p.coords()[0] == 0) {
                let x = p.coords();
                assert_eq!(infinity_quadric_member(&f, bm, x), bprime_member(&f, bm, x), "q={q} {p}");
            }
        }
    }

    #[test]
    fn c3eps_examples() {
        let f = Fq2::for_q(8).unwrap();
        let g = f.base();
        let bt = BtParams::new(&f).unwrap();
        for c in 0..8 {
            assert!(c3eps_member(g, bt, &[1, 0, 0, 0, 0, c, 0]));
            assert!(!c3eps_member(g, bt, &[1, 0, 0, 0, 0, c, 1]));
        }
        for v in 0..8u32.pow(4) {
            let (c, d, e, h) = (v % 8, v / 8 % 8, v / 64 % 8, v / 512);
            assert!(c3eps_member(g, bt, &[0, 1, c, 1, d, e, h]));
        }
    }

    #[test]
    fn c3eps_at_infinity_is_x1_eq_x3() {
        let f = Fq2::for_q(8).unwrap();
        let g = f.base();
        let bt = BtParams::new(&f).unwrap();
        for p in Space::new(6, g).unwrap().points().filter(|p| p.coords()[0] == 0) {
            let x = p.coords();
            assert_eq!(c3eps_member(g, bt, x), x[1] == x[3]);
        }
    }

    #[test]
    fn fbar_examples() {
        let f = f9();
        assert!(fbar_member(&f, &[0, 0, 0, 0, 0, 1, 2]).unwrap());
        assert!(!fbar_member(&f, &[0, 1, 0, 0, 0, 0, 0]).unwrap());
        assert_eq!(Hypersurface6::Fbar.points(&f).len(), 148);
        assert_eq!(fbar_member(&Fq2::for_q(4).unwrap(), &VERTEX), Err(HypersurfaceError::EvenCharacteristic));
    }

    #[test]
    fn base_matrix_example_q3() {
        let f = f9();
        let bm = BmParams::default_for(&f);
        let m = base_matrix(&f, bm);
        assert_eq!(m.det_a, 2);
        assert_eq!(m.det_a, det_closed_form(&f, bm));
        // a = 1+ε, b = ε, δ = 2: 2(a1-b1) = 0, 2a0 = 2, 2δ(a1+b1) = 8 = 2.
        let expect = vec![
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 0, 2, 0, 0, 0],
            vec![0, 2, 2, 0, 0, 0],
            vec![0, 0, 0, 0, 2, 0],
            vec![0, 0, 0, 2, 2, 0],
            vec![1, 0, 0, 0, 0, 0],
        ];
        assert_eq!(m.a, expect);
    }

    #[test]
    fn base_matrix_odd_matches_printed_block() {
        for q in [3u32, 5] {
            let f = Fq2::for_q(q).unwrap();
            let g = f.base();
            let d = f.delta();
            let two = |v: u32| g.add(v, v);
            for bm in BmParams::all_valid(&f) {
                let (a0, a1) = f.split(bm.a);
                let (_, b1) = f.split(bm.b);
                let (p, r, s) = (two(g.sub(a1, b1)), two(a0), two(g.mul(d, g.add(a1, b1))));
                let mut expect = vec![vec![0u32; 6]; 6];
                expect[0][5] = 1;
                expect[5][0] = 1;
                for k in [1, 3] {
                    expect[k][k] = p;
                    expect[k][k + 1] = r;
                    expect[k + 1][k] = r;
                    expect[k + 1][k + 1] = s;
                }
                let m = base_matrix(&f, bm);
                assert_eq!(m.a, expect);
                assert_eq!(m.det_a, det_closed_form(&f, bm));
            }
        }
    }

    #[test]
    fn base_matrix_even_matches_printed_block() {
        let f = Fq2::for_q(4).unwrap();
        let g = f.base();
        for bm in BmParams::all_valid(&f) {
            let m = base_matrix(&f, bm);
            let (_, b1) = f.split(bm.b);
            assert_eq!(m.a[1][2], b1);
            assert_eq!(m.a[3][4], b1);
            assert!((0..6).all(|i| m.a[i][i] == 0));
            assert_eq!(m.det_a, g.pow(b1, 4));
            assert_eq!(m.det_b, m.det_a);
        }
    }

    #[test]
    fn quadric_sizes_examples() {
        assert_eq!(quadric_sizes(5, 3), (130, 112));
        assert_eq!(quadric_sizes(5, 4).0, 357);
        assert_eq!(quadric_sizes(5, 5).0, 806);
        assert_eq!(quadric_sizes(3, 3), (16, 10));
        assert_eq!(quadric_sizes(4, 3).0, 40);
    }

    #[test]
    fn classify_small_quadrics() {
        let g = Fq::with_order(3).unwrap();
        // x0x1 + x2x3: hyperbolic in PG(3,3).
        let mut h = QuadraticForm::zero(4);
        h.add_term(&g, 0, 1, 1);
        h.add_term(&g, 2, 3, 1);
        let c = classify_quadric(&g, &h);
        assert_eq!((c.kind, c.points, c.cross_check), (QuadricType::Hyperbolic, 16, Some(QuadricType::Hyperbolic)));
        // x0x1 + x2² + x3²: elliptic over GF(3) since -1 is a non-square.
        let mut e = QuadraticForm::zero(4);
        e.add_term(&g, 0, 1, 1);
        e.add_term(&g, 2, 2, 1);
        e.add_term(&g, 3, 3, 1);
        let c = classify_quadric(&g, &e);
        assert_eq!((c.kind, c.points, c.cross_check), (QuadricType::Elliptic, 10, Some(QuadricType::Elliptic)));
        // x0x1 alone is a degenerate pair of planes.
        let mut d = QuadraticForm::zero(4);
        d.add_term(&g, 0, 1, 1);
        let c = classify_quadric(&g, &d);
        assert_eq!((c.kind, c.radical_dim), (QuadricType::Degenerate, 1));
    }

    #[test]
    fn classify_even_quadrics() {
        let g = Fq::with_order(4).unwrap();
        // x0x1 + x2² + x2x3 + t x3², t of trace 1: elliptic.
        let t = (1..4).find(|&t| g.abs_trace(t) == 1).unwrap();
        let mut e = QuadraticForm::zero(4);
        e.add_term(&g, 0, 1, 1);
        e.add_term(&g, 2, 2, 1);
        e.add_term(&g, 2, 3, 1);
        e.add_term(&g, 3, 3, t);
        let c = classify_quadric(&g, &e);
        assert_eq!((c.kind, c.cross_check), (QuadricType::Elliptic, Some(QuadricType::Elliptic)));
        assert_eq!(c.points, 17);
        // x0² + x1x2 in PG(2,4): a conic.
        let mut p = QuadraticForm::zero(3);
        p.add_term(&g, 0, 0, 1);
        p.add_term(&g, 1, 2, 1);
        let c = classify_quadric(&g, &p);
        assert_eq!((c.kind, c.points, c.radical_dim), (QuadricType::Parabolic, 5, -1));
    }

    #[test]
    fn union_of_lines_at_q8() {
        let f = Fq2::for_q(8).unwrap();
        let u = union_of_lines_check(&f, BtParams::new(&f).unwrap());
        assert!(u.pass(), "{u:?}");
        assert_eq!((u.c3_size, u.base_size), (37449, 4681));
    }

    #[test]
    fn hermitian_cone_requires_odd_q_and_nonzero_b1() {
        assert!(Hypersurface6::hermitian_cone(&f9(), 1).is_ok());
        assert!(Hypersurface6::hermitian_cone(&f9(), 0).is_err());
        assert!(Hypersurface6::hermitian_cone(&Fq2::for_q(4).unwrap(), 1).is_err());
    }
}
