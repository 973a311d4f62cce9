// SPDX-License-Identifier: Apache-2.0

//! Point sets of PG(3,q²) with coordinates (J, X, Y, Z): the Hermitian
//! surface, the Buekenhout–Metz surfaces `B_{a,b}` and `M_{a,b}`, the cone
//! `F` at infinity, and the Buekenhout–Tits varieties `V³_ε` and `H³_ε`.
//!
//! Every variety exposes an exact membership predicate that is total on
//! PG(3,q²) and a materialization into a sorted [`PointSet`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ff::{FiniteField, Fq2};
use crate::linalg;
use crate::pg::{PointSet, Space};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("matrix is not Hermitian")]
    NotHermitianMatrix,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("outside the domain of the formula: {0}")]
    DomainError(String),
}

/// The two hyperplane intersection sizes of a quasi-Hermitian variety of
/// PG(r,q²): `|H(r-1,q²)|` and `|P0 H(r-2,q²)|`.
pub fn expected_intersection_sizes(r: u32, q: u64) -> (u64, u64) {
    assert!(r >= 2, "r must be at least 2");
    let q = q as i128;
    let sign: i128 = if r % 2 == 1 { 1 } else { -1 }; // (-1)^(r-1)
    let secant = (q.pow(r) + sign) * (q.pow(r - 1) - sign) / (q * q - 1);
    let tangent = secant + sign * q.pow(r - 1);
    (secant as u64, tangent as u64)
}

/// `(q² + 1)(q³ + 1)`, the size of H(3,q²) and of every quasi-Hermitian surface.
pub fn hermitian_surface_size(q: u64) -> u64 {
    (q * q + 1) * (q * q * q + 1)
}

/// Parameters `a ∈ GF(q²)*`, `b ∈ GF(q²) \ GF(q)` of a Buekenhout–Metz surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmParams {
    pub a: u32,
    pub b: u32,
}

impl BmParams {
    /// Checks the standing assumptions and the r = 3 condition for the parity of q.
    pub fn new(f: &Fq2, a: u32, b: u32) -> Result<Self, VarietyError> {
        if a >= f.order() || b >= f.order() {
            return Err(VarietyError::InvalidParams("coordinates out of range".into()));
        }
        if a == 0 {
            return Err(VarietyError::InvalidParams("a must be non-zero".into()));
        }
        if f.in_base(b) {
            return Err(VarietyError::InvalidParams("b must not lie in GF(q)".into()));
        }
        let params = Self { a, b };
        if !bm_validate(f, params) {
            return Err(VarietyError::InvalidParams("4a^(q+1) + (b^q - b)^2 = 0".into()));
        }
        Ok(params)
    }

    /// All valid pairs in canonical order (by `a`, then `b`).
    pub fn all_valid(f: &Fq2) -> impl Iterator<Item = BmParams> + '_ {
        (1..f.order()).flat_map(move |a| (f.q()..f.order()).filter_map(move |b| BmParams::new(f, a, b).ok()))
    }

    /// The least valid pair in canonical order.
    pub fn default_for(f: &Fq2) -> BmParams {
        Self::all_valid(f).next().expect("valid BM parameters exist for every q > 2")
    }
}

/// The BM condition for r = 3: `4a^(q+1) + (b^q - b)^2 ≠ 0` when q is odd, no
/// condition when q is even. Assumes `a ≠ 0` and `b ∉ GF(q)`.
///
/// The r-even branches (non-square test for q odd, trace test for q even)
/// never apply in PG(3,q²) and are not implemented.
pub fn bm_validate(f: &Fq2, params: BmParams) -> bool {
    if !f.is_odd() {
        return true;
    }
    let four = f.add(f.add(1, 1), f.add(1, 1));
    let d = f.sub(f.frobenius(params.b), params.b);
    let v = f.add(f.mul(four, f.norm(params.a)), f.mul(d, d));
    v != 0
}

/// Buekenhout–Tits data: `q = 2^e`, `e > 1` odd, and `σ: x ↦ x^(2^((e+1)/2))`.
/// δ and ε come from the field, which already guarantees `tr(δ) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BtParams {
    pub e: u32,
    pub sigma: u64,
}

impl BtParams {
    pub fn new(f: &Fq2) -> Result<Self, VarietyError> {
        let base = f.base();
        let e = base.degree();
        if f.is_odd() {
            return Err(VarietyError::InvalidParams("BT varieties need q even".into()));
        }
        if e < 3 || e.is_multiple_of(2) {
            return Err(VarietyError::InvalidParams(format!("e = {e} must be odd and > 1")));
        }
        let sigma = 1u64 << e.div_ceil(2);
        // σ² is the Frobenius x ↦ x² on GF(q).
        if base.elements().any(|x| base.pow(base.pow(x, sigma), sigma) != base.mul(x, x)) {
            return Err(VarietyError::InvalidParams("σ² is not x ↦ x²".into()));
        }
        Ok(Self { e, sigma })
    }
}

/// Δ_ε(x) = ε x^{q(σ+2)} + (ε^σ + ε^{σ+2}) x^{qσ+2} + x^σ + (1+ε) x².
pub fn delta_eps(f: &Fq2, bt: BtParams, x: u32) -> u32 {
    let q = f.q() as u64;
    let s = bt.sigma;
    let eps = f.epsilon();
    let t1 = f.mul(eps, f.pow(x, q * (s + 2)));
    let c = f.add(f.pow(eps, s), f.pow(eps, s + 2));
    let t2 = f.mul(c, f.pow(x, q * s + 2));
    let t3 = f.pow(x, s);
    let t4 = f.mul(f.add(1, eps), f.mul(x, x));
    f.add(f.add(t1, t2), f.add(t3, t4))
}

/// Γ_ε(x) = [x + (x^q + x)ε]^{σ+2} + (x^q + x)^σ + (x^{2q} + x²)ε + x^{q+1} + x².
pub fn gamma_eps(f: &Fq2, bt: BtParams, x: u32) -> u32 {
    let q = f.q() as u64;
    let s = bt.sigma;
    let eps = f.epsilon();
    let tr = f.add(f.frobenius(x), x);
    let t1 = f.pow(f.add(x, f.mul(tr, eps)), s + 2);
    let t2 = f.pow(tr, s);
    let x2 = f.mul(x, x);
    let t3 = f.mul(f.add(f.pow(x, 2 * q), x2), eps);
    let t4 = f.pow(x, q + 1);
    f.add(f.add(f.add(t1, t2), f.add(t3, t4)), x2)
}

/// A non-singular Hermitian matrix over GF(q²): `H_ji = H_ij^q`, `det H ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianMatrix(Vec<Vec<u32>>);

impl HermitianMatrix {
    pub fn new(f: &Fq2, m: Vec<Vec<u32>>) -> Result<Self, VarietyError> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(VarietyError::NotHermitianMatrix);
        }
        for i in 0..n {
            for j in 0..n {
                if m[j][i] != f.frobenius(m[i][j]) {
                    return Err(VarietyError::NotHermitianMatrix);
                }
            }
        }
        if linalg::det(f, &m) == 0 {
            return Err(VarietyError::SingularMatrix);
        }
        Ok(Self(m))
    }

    pub fn identity(f: &Fq2, n: usize) -> Self {
        let m = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        Self::new(f, m).expect("identity is Hermitian")
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.0
    }

    /// (X^q) H X^T.
    pub fn form(&self, f: &Fq2, p: &[u32]) -> u32 {
        let mut acc = 0;
        for (i, row) in self.0.iter().enumerate() {
            let xi = f.frobenius(p[i]);
            for (j, &h) in row.iter().enumerate() {
                if h != 0 {
                    acc = f.add(acc, f.mul(xi, f.mul(h, p[j])));
                }
            }
        }
        acc
    }
}

pub fn hermitian_member(f: &Fq2, h: &HermitianMatrix, p: &[u32]) -> bool {
    h.form(f, p) == 0
}

/// `J = 0` and `X^{q+1} + Y^{q+1} = 0`.
#[inline]
pub fn fcone_member(f: &Fq2, p: &[u32]) -> bool {
    p[0] == 0 && f.add(f.norm(p[1]), f.norm(p[2])) == 0
}

/// Affine condition `z + a(x² + y²) - b(x^{q+1} + y^{q+1}) ∈ GF(q)`.
fn bab_affine(f: &Fq2, bm: BmParams, x: u32, y: u32, z: u32) -> bool {
    let sq = f.add(f.mul(x, x), f.mul(y, y));
    let nrm = f.add(f.norm(x), f.norm(y));
    let w = f.sub(f.add(z, f.mul(bm.a, sq)), f.mul(bm.b, nrm));
    f.in_base(w)
}

/// The homogeneous equation of `B_{a,b}`:
/// `Z^q J^q - Z J^{2q-1} + a^q(X^{2q}+Y^{2q}) - a(X²+Y²)J^{2q-2} - (b^q-b)(X^{q+1}+Y^{q+1})J^{q-1}`.
pub fn bab_homogeneous(f: &Fq2, bm: BmParams, p: &[u32]) -> u32 {
    let q = f.q() as u64;
    let (j, x, y, z) = (p[0], p[1], p[2], p[3]);
    let t1 = f.mul(f.pow(z, q), f.pow(j, q));
    let t2 = f.mul(z, f.pow(j, 2 * q - 1));
    let t3 = f.mul(f.frobenius(bm.a), f.add(f.pow(x, 2 * q), f.pow(y, 2 * q)));
    let t4 = f.mul(bm.a, f.mul(f.add(f.mul(x, x), f.mul(y, y)), f.pow(j, 2 * q - 2)));
    let bqb = f.sub(f.frobenius(bm.b), bm.b);
    let t5 = f.mul(bqb, f.mul(f.add(f.pow(x, q + 1), f.pow(y, q + 1)), f.pow(j, q - 1)));
    f.sub(f.sub(f.add(f.sub(t1, t2), t3), t4), t5)
}

/// Membership in `B_{a,b}`: the affine trace condition for `J = 1`, the
/// homogeneous equation at infinity.
pub fn bab_member(f: &Fq2, bm: BmParams, p: &[u32]) -> bool {
    if p[0] == 0 {
        bab_homogeneous(f, bm, p) == 0
    } else {
        bab_affine(f, bm, p[1], p[2], p[3])
    }
}

/// Affine condition of `V³_ε`: `z^q + z = Γ_ε(x) + Γ_ε(y)`.
fn veps_affine(f: &Fq2, bt: BtParams, x: u32, y: u32, z: u32) -> bool {
    f.add(f.frobenius(z), z) == f.add(gamma_eps(f, bt, x), gamma_eps(f, bt, y))
}

/// Membership in `V³_ε`. At infinity the leading form of the affine equation,
/// `ε^{σ+2}(X^{q(σ+2)} + Y^{q(σ+2)})`, must vanish.
pub fn veps_member(f: &Fq2, bt: BtParams, p: &[u32]) -> bool {
    if p[0] == 0 {
        let d = f.q() as u64 * (bt.sigma + 2);
        f.add(f.pow(p[1], d), f.pow(p[2], d)) == 0
    } else {
        veps_affine(f, bt, p[1], p[2], p[3])
    }
}

/// Which variety, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietySpec {
    Hermitian(HermitianMatrix),
    Bab(BmParams),
    Fcone,
    Mab(BmParams),
    Veps(BtParams),
    Heps(BtParams),
}

impl VarietySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            VarietySpec::Hermitian(_) => "hermitian",
            VarietySpec::Bab(_) => "bab",
            VarietySpec::Fcone => "fcone",
            VarietySpec::Mab(_) => "mab",
            VarietySpec::Veps(_) => "veps",
            VarietySpec::Heps(_) => "heps",
        }
    }

    /// Exact membership of a normalized point of PG(3,q²).
    pub fn member(&self, f: &Fq2, p: &[u32]) -> bool {
        match self {
            VarietySpec::Hermitian(h) => hermitian_member(f, h, p),
            VarietySpec::Bab(bm) => bab_member(f, *bm, p),
            VarietySpec::Fcone => fcone_member(f, p),
            VarietySpec::Mab(bm) => {
                if p[0] == 0 {
                    fcone_member(f, p)
                } else {
                    bab_affine(f, *bm, p[1], p[2], p[3])
                }
            }
            VarietySpec::Veps(bt) => veps_member(f, *bt, p),
            VarietySpec::Heps(bt) => {
                if p[0] == 0 {
                    fcone_member(f, p)
                } else {
                    veps_affine(f, *bt, p[1], p[2], p[3])
                }
            }
        }
    }

    /// Materializes the point set. Affine parts of the BM and BT varieties
    /// are solved for `z` fibre by fibre; everything else is filtered from
    /// the full point stream.
    pub fn points(&self, f: &Fq2) -> PointSet {
        let n = f.order();
        let space = Space::new(3, f).expect("dimension 3");
        let inf = space.num_points_at_infinity();
        let mut coords = [0u32; 4];
        let mut keys = Vec::new();
        let push = |c: [u32; 4], keys: &mut Vec<u64>| keys.push(crate::pg::pack(&c, n));
        let affine_solved = matches!(
            self,
            VarietySpec::Bab(_) | VarietySpec::Mab(_) | VarietySpec::Veps(_) | VarietySpec::Heps(_)
        );
        let stop = if affine_solved { inf } else { space.num_points() };
        for idx in 0..stop {
            space.write_point(idx, &mut coords);
            if self.member(f, &coords) {
                push(coords, &mut keys);
            }
        }
        if affine_solved {
            let zs_by_shift = AffineSolver::new(f);
            match self {
                VarietySpec::Bab(bm) | VarietySpec::Mab(bm) => {
                    for x in 0..n {
                        for y in 0..n {
                            // z ∈ -a(x²+y²) + b(x^{q+1}+y^{q+1}) + GF(q)
                            let sq = f.add(f.mul(x, x), f.mul(y, y));
                            let nrm = f.add(f.norm(x), f.norm(y));
                            let base = f.sub(f.mul(bm.b, nrm), f.mul(bm.a, sq));
                            for c in 0..f.q() {
                                push([1, x, y, f.add(base, c)], &mut keys);
                            }
                        }
                    }
                }
                VarietySpec::Veps(bt) | VarietySpec::Heps(bt) => {
                    let gamma: Vec<u32> = (0..n).map(|x| gamma_eps(f, *bt, x)).collect();
                    for x in 0..n {
                        for y in 0..n {
                            let rhs = f.add(gamma[x as usize], gamma[y as usize]);
                            for &z in zs_by_shift.with_trace(rhs) {
                                push([1, x, y, z], &mut keys);
                            }
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        PointSet::from_keys(3, n, keys)
    }
}

/// Groups GF(q²) by relative trace z^q + z.
struct AffineSolver {
    by_trace: Vec<Vec<u32>>,
}

impl AffineSolver {
    fn new(f: &Fq2) -> Self {
        let mut by_trace = vec![Vec::new(); f.order() as usize];
        for z in f.elements() {
            by_trace[f.trace(z) as usize].push(z);
        }
        Self { by_trace }
    }

    fn with_trace(&self, t: u32) -> &[u32] {
        &self.by_trace[t as usize]
    }
}

pub fn mab_points(f: &Fq2, bm: BmParams) -> PointSet {
    VarietySpec::Mab(bm).points(f)
}

pub fn heps_points(f: &Fq2, bt: BtParams) -> PointSet {
    VarietySpec::Heps(bt).points(f)
}

fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |k| n.is_multiple_of(*k))
}

/// Number of projectively inequivalent BM unitals in PG(2,q²), q = p^n ≥ 4:
/// `(1/2n)[n0 + Σ_{k|n} Φ(2n/k) p^k]`.
pub fn bm_unital_count(p: u64, n: u64) -> Result<u128, VarietyError> {
    if !crate::ff::is_prime(p as u32) || n == 0 {
        return Err(VarietyError::DomainError("p must be prime and n ≥ 1".into()));
    }
    if (p as u128).pow(n as u32) < 4 {
        return Err(VarietyError::DomainError("q must be at least 4".into()));
    }
    let n0 = if p > 2 {
        let mut m = n;
        while m.is_multiple_of(2) {
            m /= 2;
        }
        m as u128
    } else {
        0
    };
    let sum: u128 = divisors(n).map(|k| totient(2 * n / k) as u128 * (p as u128).pow(k as u32)).sum();
    let num = n0 + sum;
    debug_assert_eq!(num % (2 * n as u128), 0);
    Ok(num / (2 * n as u128))
}

/// Number of projectively inequivalent BM quasi-Hermitian varieties
/// `M_{a,b}` of PG(3,q²), q = p^n with p odd: `(1/n) Σ_{k|n} Φ(n/k) p^k - 2`.
pub fn bm_variety_count(p: u64, n: u64) -> Result<u128, VarietyError> {
    if !crate::ff::is_prime(p as u32) || n == 0 {
        return Err(VarietyError::DomainError("p must be prime and n ≥ 1".into()));
    }
    if p == 2 {
        return Err(VarietyError::DomainError("p must be odd".into()));
    }
    let sum: u128 = divisors(n).map(|k| totient(n / k) as u128 * (p as u128).pow(k as u32)).sum();
    debug_assert_eq!(sum % n as u128, 0);
    Ok(sum / n as u128 - 2)
}
