// SPDX-License-Identifier: Apache-2.0

//! Exact arithmetic in GF(p), GF(q) = GF(p^e) and GF(q^2) = GF(q)[ε].
//!
//! Field elements are plain `u32` values in canonical encoding: the
//! coefficient vector over GF(p) read as a base-p integer with the constant
//! coefficient least significant. The same encoding fixes the canonical
//! element order used for every enumeration in the crate.
//!
//! GF(q^2) is always the explicit quadratic extension of GF(q) with basis
//! (1, ε), and the element c0 + ε·c1 is encoded as `c0 + q * c1`:
//!
//! * q odd: ε² = δ with δ a non-square of GF(q);
//! * q even: ε² + ε + δ = 0 with tr(δ) = 1.

mod poly;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use thiserror::Error;

/// Largest field handled with log/antilog tables.
pub const TABLE_LIMIT: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is reducible over GF({1})")]
    ReducibleModulus(String, u32),
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} does not belong to a field of order {1}")]
    FieldMismatch(u32, u32),
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("field of order {0} is too large")]
    FieldTooLarge(u64),
    #[error("delta {0} is not admissible: {1}")]
    InvalidDelta(u32, &'static str),
}

/// Common interface of GF(q) and GF(q^2) over canonical `u32` encodings.
pub trait FiniteField: Send + Sync {
    fn order(&self) -> u32;
    fn characteristic(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    /// Multiplicative inverse. Panics on zero; use [`arith`] for a checked path.
    fn inv(&self, a: u32) -> u32;
    fn pow(&self, a: u32, n: u64) -> u32;

    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    fn elements(&self) -> Range<u32> {
        0..self.order()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `x^y` where `y` is read as a non-negative integer, not a field element.
    Pow,
}

/// Checked arithmetic: both operands must be encodings of elements of `f`.
pub fn arith<F: FiniteField + ?Sized>(f: &F, x: u32, y: u32, op: ArithOp) -> Result<u32, FieldError> {
    let order = f.order();
    if x >= order {
        return Err(FieldError::FieldMismatch(x, order));
    }
    if op != ArithOp::Pow && y >= order {
        return Err(FieldError::FieldMismatch(y, order));
    }
    Ok(match op {
        ArithOp::Add => f.add(x, y),
        ArithOp::Sub => f.sub(x, y),
        ArithOp::Mul => f.mul(x, y),
        ArithOp::Div => {
            if y == 0 {
                return Err(FieldError::DivisionByZero);
            }
            f.div(x, y)
        }
        ArithOp::Pow => f.pow(x, y as u64),
    })
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d as u64 * d as u64 <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits_of(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % p);
        x /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// A finite field GF(p^e) with its defining modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub p: u32,
    pub e: u32,
    /// Monic, constant term first, length `e + 1`.
    pub modulus: Vec<u32>,
}

impl FieldDescriptor {
    /// Validates `p` and the modulus; without a modulus the least monic
    /// irreducible of degree `e` in canonical order is chosen.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::BadModulus("degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if order > TABLE_LIMIT as u64 {
            return Err(FieldError::FieldTooLarge(order));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus(format!(
                        "expected monic degree-{e} coefficients below {p}, got {}",
                        format_coeffs(&m)
                    )));
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(format_coeffs(&m), p));
                }
                m
            }
            None => least_irreducible(p, e),
        };
        Ok(Self { p, e, modulus })
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.e)
    }

    /// Parses `"1,1,0,1"` (constant term first).
    pub fn parse_modulus(s: &str) -> Result<Vec<u32>, FieldError> {
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| FieldError::BadModulus(s.to_string())))
            .collect()
    }

    pub fn modulus_string(&self) -> String {
        format_coeffs(&self.modulus)
    }
}

fn format_coeffs(c: &[u32]) -> String {
    c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let total = p.pow(e);
    (0..total)
        .map(|v| {
            let mut f = digits_of(v, p, e as usize);
            f.push(1);
            f
        })
        .find(|f| poly::is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

#[derive(Debug, Clone)]
enum AddRule {
    Xor,
    Modular(u32),
    Table(Vec<u32>),
    Digits { p: u32, len: usize },
}

/// Table machinery shared by both field types.
#[derive(Debug, Clone)]
struct Core {
    order: u32,
    p: u32,
    add: AddRule,
    neg: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(order - 1)`; empty when the field is too large.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Core {
    fn new(p: u32, digits: usize, slow_mul: impl Fn(u32, u32) -> u32) -> Self {
        let order = p.pow(digits as u32);
        let neg = (0..order)
            .map(|x| {
                let d: Vec<u32> = digits_of(x, p, digits).into_iter().map(|c| (p - c) % p).collect();
                from_digits(&d, p)
            })
            .collect();
        let add = if p == 2 {
            AddRule::Xor
        } else if digits == 1 {
            AddRule::Modular(p)
        } else if order <= 1024 {
            let mut t = vec![0u32; (order * order) as usize];
            for x in 0..order {
                for y in 0..order {
                    t[(x * order + y) as usize] = digit_add(x, y, p, digits);
                }
            }
            AddRule::Table(t)
        } else {
            AddRule::Digits { p, len: digits }
        };
        let (exp, log) = if order <= TABLE_LIMIT {
            log_tables(order, &slow_mul)
        } else {
            (Vec::new(), Vec::new())
        };
        Self { order, p, add, neg, exp, log }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add {
            AddRule::Xor => a ^ b,
            AddRule::Modular(p) => {
                let s = a + b;
                if s >= *p {
                    s - p
                } else {
                    s
                }
            }
            AddRule::Table(t) => t[(a * self.order + b) as usize],
            AddRule::Digits { p, len } => digit_add(a, b, *p, *len),
        }
    }

    #[inline]
    fn has_tables(&self) -> bool {
        !self.exp.is_empty()
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let m = self.order - 1;
        self.exp[((m - self.log[a as usize]) % m) as usize]
    }

    fn pow(&self, a: u32, n: u64) -> u32 {
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let m = (self.order - 1) as u64;
        let l = self.log[a as usize] as u64 * (n % m) % m;
        self.exp[l as usize]
    }
}

fn digit_add(a: u32, b: u32, p: u32, len: usize) -> u32 {
    let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
    for _ in 0..len {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn log_tables(order: u32, slow_mul: &impl Fn(u32, u32) -> u32) -> (Vec<u32>, Vec<u32>) {
    let m = order - 1;
    if m == 1 {
        // GF(2): the multiplicative group is trivial.
        return (vec![1, 1], vec![0, 0]);
    }
    for g in 2..order.max(3) {
        let mut exp = Vec::with_capacity(2 * m as usize);
        let mut x = 1u32;
        let mut ok = true;
        for i in 0..m {
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            exp.push(x);
            x = slow_mul(x, g);
        }
        if !ok || x != 1 {
            continue;
        }
        let mut log = vec![0u32; order as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let again = exp.clone();
        exp.extend(again);
        return (exp, log);
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// GF(q) = GF(p^e).
#[derive(Debug, Clone)]
pub struct Fq {
    desc: FieldDescriptor,
    core: Core,
}

impl Fq {
    pub fn new(desc: FieldDescriptor) -> Self {
        let (p, e) = (desc.p, desc.e as usize);
        let m = desc.modulus.clone();
        let core = Core::new(p, e, |a, b| {
            let r = poly::mul_mod(&digits_of(a, p, e), &digits_of(b, p, e), &m, p);
            let mut d = r;
            d.resize(e, 0);
            from_digits(&d, p)
        });
        Self { desc, core }
    }

    /// Prime power `q` given as `p^e` with the default modulus.
    pub fn with_order(q: u32) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Ok(Self::new(FieldDescriptor::new(p, e, None)?))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn degree(&self) -> u32 {
        self.desc.e
    }

    pub fn is_odd(&self) -> bool {
        self.desc.p != 2
    }

    /// Absolute trace GF(q) -> GF(p).
    pub fn abs_trace(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.desc.e {
            acc = self.add(acc, y);
            y = self.pow(y, self.desc.p as u64);
        }
        acc
    }

    /// Square test for odd q via Euler's criterion; zero counts as a square.
    pub fn is_square(&self, x: u32) -> Result<bool, FieldError> {
        if !self.is_odd() {
            return Err(FieldError::EvenCharacteristic);
        }
        let r = self.pow(x, ((self.order() - 1) / 2) as u64);
        Ok(r == 0 || r == 1)
    }

    /// The δ of the canonical quadratic extension: least non-square (q odd),
    /// least element of absolute trace 1 (q even).
    pub fn choose_delta(&self) -> u32 {
        self.elements()
            .find(|&d| self.delta_ok(d).is_ok())
            .expect("a non-square / trace-one element always exists")
    }

    fn delta_ok(&self, d: u32) -> Result<(), FieldError> {
        if d >= self.order() {
            return Err(FieldError::FieldMismatch(d, self.order()));
        }
        if self.is_odd() {
            if self.is_square(d)? {
                return Err(FieldError::InvalidDelta(d, "must be a non-square of GF(q)"));
            }
        } else if self.abs_trace(d) != 1 {
            return Err(FieldError::InvalidDelta(d, "must have absolute trace 1"));
        }
        Ok(())
    }
}

impl FiniteField for Fq {
    #[inline]
    fn order(&self) -> u32 {
        self.core.order
    }
    fn characteristic(&self) -> u32 {
        self.core.p
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.core.add(a, b)
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.core.neg[a as usize]
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.core.mul(a, b)
    }
    #[inline]
    fn inv(&self, a: u32) -> u32 {
        self.core.inv(a)
    }
    fn pow(&self, a: u32, n: u64) -> u32 {
        self.core.pow(a, n)
    }
}

/// Returns `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// GF(q^2) = GF(q)[ε] with the distinguished basis (1, ε).
#[derive(Debug, Clone)]
pub struct Fq2 {
    base: Fq,
    delta: u32,
    q: u32,
    core: Core,
}

/// Relative trace and norm to GF(q), plus the absolute trace GF(q) -> GF(p)
/// when the argument already lies in GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceNorm {
    pub trace: u32,
    pub norm: u32,
    pub abs_trace: Option<u32>,
}

impl Fq2 {
    /// Builds the extension with the canonical δ of [`Fq::choose_delta`].
    pub fn new(base: Fq) -> Self {
        let delta = base.choose_delta();
        Self::with_delta(base, delta).expect("canonical delta is admissible")
    }

    pub fn with_delta(base: Fq, delta: u32) -> Result<Self, FieldError> {
        base.delta_ok(delta)?;
        let q = base.order();
        if q as u64 * q as u64 > u32::MAX as u64 {
            return Err(FieldError::FieldTooLarge(q as u64 * q as u64));
        }
        let (p, e) = (base.desc.p, base.desc.e as usize);
        let odd = base.is_odd();
        let core = {
            let b = &base;
            Core::new(p, 2 * e, |x, y| tower_mul(b, odd, delta, q, x, y))
        };
        Ok(Self { base, delta, q, core })
    }

    /// Shorthand for the extension of GF(q) with default modulus and δ.
    pub fn for_q(q: u32) -> Result<Self, FieldError> {
        Ok(Self::new(Fq::with_order(q)?))
    }

    pub fn base(&self) -> &Fq {
        &self.base
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn is_odd(&self) -> bool {
        self.base.is_odd()
    }

    /// ε, encoded as `0 + q * 1`.
    pub fn epsilon(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn split(&self, x: u32) -> (u32, u32) {
        (x % self.q, x / self.q)
    }

    #[inline]
    pub fn join(&self, c0: u32, c1: u32) -> u32 {
        c0 + self.q * c1
    }

    #[inline]
    pub fn in_base(&self, x: u32) -> bool {
        x < self.q
    }

    /// x ↦ x^q, using ε^q = -ε (q odd) or ε^q = ε + 1 (q even).
    #[inline]
    pub fn frobenius(&self, x: u32) -> u32 {
        let (c0, c1) = self.split(x);
        if self.is_odd() {
            self.join(c0, self.base.neg(c1))
        } else {
            self.join(self.base.add(c0, c1), c1)
        }
    }

    pub fn trace_norm(&self, x: u32) -> TraceNorm {
        let xq = self.frobenius(x);
        TraceNorm {
            trace: self.add(x, xq),
            norm: self.mul(x, xq),
            abs_trace: self.in_base(x).then(|| self.base.abs_trace(x)),
        }
    }

    /// Relative trace x + x^q as a GF(q) encoding.
    #[inline]
    pub fn trace(&self, x: u32) -> u32 {
        self.add(x, self.frobenius(x))
    }

    /// Relative norm x^(q+1) as a GF(q) encoding.
    #[inline]
    pub fn norm(&self, x: u32) -> u32 {
        self.mul(x, self.frobenius(x))
    }
}

fn tower_mul(base: &Fq, odd: bool, delta: u32, q: u32, x: u32, y: u32) -> u32 {
    let (a0, a1) = (x % q, x / q);
    let (b0, b1) = (y % q, y / q);
    let c0 = base.add(base.mul(a0, b0), base.mul(delta, base.mul(a1, b1)));
    let mut c1 = base.add(base.mul(a0, b1), base.mul(a1, b0));
    if !odd {
        // ε² = ε + δ in characteristic 2.
        c1 = base.add(c1, base.mul(a1, b1));
    }
    c0 + q * c1
}

impl FiniteField for Fq2 {
    #[inline]
    fn order(&self) -> u32 {
        self.core.order
    }
    fn characteristic(&self) -> u32 {
        self.core.p
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.core.add(a, b)
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.core.neg[a as usize]
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.core.has_tables() {
            self.core.mul(a, b)
        } else {
            tower_mul(&self.base, self.is_odd(), self.delta, self.q, a, b)
        }
    }
    fn inv(&self, a: u32) -> u32 {
        if self.core.has_tables() {
            return self.core.inv(a);
        }
        // a^{-1} = a^q / N(a)
        assert!(a != 0, "inverse of zero");
        let aq = self.frobenius(a);
        let n = self.norm(a);
        self.mul(aq, self.base.inv(n))
    }
    fn pow(&self, a: u32, n: u64) -> u32 {
        if self.core.has_tables() {
            return self.core.pow(a, n);
        }
        let (mut base, mut n, mut acc) = (a, n, 1u32);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
}

/// Formats a GF(q^2) element as its `c0,c1` pair.
pub struct Pair<'a>(pub &'a Fq2, pub u32);

impl fmt::Display for Pair<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c0, c1) = self.0.split(self.1);
        write!(f, "{c0},{c1}")
    }
}

/// A `c0,c1` pair of canonical GF(q) encodings, as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairLiteral(pub u32, pub u32);

impl FromStr for PairLiteral {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(',').ok_or_else(|| format!("expected c0,c1, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
        Ok(Self(parse(a)?, parse(b)?))
    }
}

impl PairLiteral {
    pub fn encode(self, f: &Fq2) -> Result<u32, FieldError> {
        let q = f.q();
        for c in [self.0, self.1] {
            if c >= q {
                return Err(FieldError::FieldMismatch(c, q));
            }
        }
        Ok(f.join(self.0, self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, e: u32, m: Option<Vec<u32>>) -> Fq {
        Fq::new(FieldDescriptor::new(p, e, m).unwrap())
    }

    #[test]
    fn descriptor_examples() {
        let f3 = FieldDescriptor::new(3, 1, None).unwrap();
        assert_eq!(f3.order(), 3);
        let f8 = FieldDescriptor::new(2, 3, Some(vec![1, 1, 0, 1])).unwrap();
        assert_eq!(f8.order(), 8);
        // least monic irreducible cubic over GF(2) in canonical order
        assert_eq!(FieldDescriptor::new(2, 3, None).unwrap().modulus, vec![1, 1, 0, 1]);
        let f9 = FieldDescriptor::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_eq!(f9.modulus_string(), "1,0,1");
        assert_eq!(FieldDescriptor::new(3, 2, None).unwrap().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn descriptor_errors() {
        assert_eq!(FieldDescriptor::new(4, 1, None), Err(FieldError::NotPrime(4)));
        // t^2 + 2 = t^2 - 1 = (t-1)(t+1) over GF(3)
        assert!(matches!(
            FieldDescriptor::new(3, 2, Some(vec![2, 0, 1])),
            Err(FieldError::ReducibleModulus(..))
        ));
        assert!(matches!(
            FieldDescriptor::new(2, 3, Some(vec![1, 1, 1])),
            Err(FieldError::BadModulus(_))
        ));
        assert_eq!(FieldDescriptor::parse_modulus("1,1,0,1").unwrap(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn arith_examples() {
        let f9 = Fq2::for_q(3).unwrap();
        let eps = f9.epsilon();
        assert_eq!(f9.mul(eps, eps), 2);
        for x in f9.elements() {
            assert_eq!(f9.mul(x, 1), x);
        }
        let f8 = gf(2, 3, Some(vec![1, 1, 0, 1]));
        // t = 2, t^2 = 4, t^3 = t + 1 = 3
        assert_eq!(f8.mul(2, 4), 3);
        assert_eq!(arith(&f8, 5, 0, ArithOp::Div), Err(FieldError::DivisionByZero));
        assert_eq!(arith(&f8, 8, 1, ArithOp::Add), Err(FieldError::FieldMismatch(8, 8)));
        assert_eq!(arith(&f8, 2, 3, ArithOp::Pow), Ok(3));
    }

    #[test]
    fn frobenius_examples() {
        let f9 = Fq2::for_q(3).unwrap();
        assert_eq!(f9.frobenius(f9.epsilon()), f9.join(0, 2));
        for x in 0..3 {
            assert_eq!(f9.frobenius(x), x);
        }
        let f64 = Fq2::for_q(8).unwrap();
        assert_eq!(f64.delta(), 1);
        assert_eq!(f64.frobenius(f64.epsilon()), f64.join(1, 1));
        // ε^8 computed by repeated squaring agrees
        assert_eq!(f64.pow(f64.epsilon(), 8), f64.join(1, 1));
    }

    #[test]
    fn trace_norm_examples() {
        let f9 = Fq2::for_q(3).unwrap();
        assert_eq!(f9.trace_norm(0), TraceNorm { trace: 0, norm: 0, abs_trace: Some(0) });
        let tn = f9.trace_norm(f9.epsilon());
        assert_eq!((tn.trace, tn.norm, tn.abs_trace), (0, 1, None));
        let f64 = Fq2::for_q(8).unwrap();
        assert_eq!(f64.trace_norm(1).abs_trace, Some(1));
    }

    #[test]
    fn choose_epsilon_examples() {
        assert_eq!(Fq::with_order(3).unwrap().choose_delta(), 2);
        assert_eq!(Fq::with_order(5).unwrap().choose_delta(), 2);
        assert_eq!(Fq::with_order(8).unwrap().choose_delta(), 1);
        // GF(4): tr(1) = 0, tr(t) = t + t^2 = 1
        assert_eq!(Fq::with_order(4).unwrap().choose_delta(), 2);
        let f64 = Fq2::for_q(8).unwrap();
        let e = f64.epsilon();
        assert_eq!(f64.mul(e, e), f64.add(e, 1));
        assert!(matches!(
            Fq2::with_delta(Fq::with_order(5).unwrap(), 4),
            Err(FieldError::InvalidDelta(4, _))
        ));
    }

    #[test]
    fn is_square_examples() {
        let f3 = Fq::with_order(3).unwrap();
        let f5 = Fq::with_order(5).unwrap();
        assert_eq!(f3.is_square(0), Ok(true));
        assert_eq!(f3.is_square(2), Ok(false));
        assert_eq!(f5.is_square(4), Ok(true));
        assert_eq!(Fq::with_order(4).unwrap().is_square(1), Err(FieldError::EvenCharacteristic));
    }

    #[test]
    fn slow_path_matches_tables() {
        // q = 257 is past the table limit for GF(q^2) and exercises the tower fallback.
        let big = Fq2::for_q(257).unwrap();
        assert!(!big.core.has_tables());
        let x = big.join(3, 5);
        let y = big.join(100, 7);
        let xy = big.mul(x, y);
        assert_eq!(big.mul(xy, big.inv(y)), x);
        assert_eq!(big.pow(x, 257u64 * 257), x);
        assert_eq!(big.pow(x, 257), big.frobenius(x));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
