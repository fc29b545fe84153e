//! Table-driven arithmetic in GF(q²) = GF(p^m), m = 2e, q = p^e.
//!
//! Elements are stored as packed coefficient indices: the element
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` has index `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
//! Multiplication, inversion, powers and the Frobenius map go through full
//! exp/log tables built once at construction time. The subfield GF(q) is not
//! a separate type; it is the set of elements fixed by `x ↦ x^q`.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension exponent must be at least 1")]
    ZeroExponent,
    #[error("field order {p}^{m} exceeds the table guard of 2^20 elements")]
    TooLarge { p: u64, m: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("zero has no discrete logarithm")]
    ZeroLog,
    #[error("zero raised to a negative power")]
    ZeroNegativePower,
    #[error("element is zero or lies outside the subfield GF({q})")]
    NotInBaseSubfield { q: u64 },
    #[error("element index {index} is out of range for a field of order {order}")]
    OutOfRange { index: u64, order: u64 },
    #[error("coefficient vector has length {got}, expected {expected}")]
    CoefficientLength { got: usize, expected: usize },
}

/// A field element as a packed coefficient index. Cheap to copy; the
/// arithmetic lives on [`FieldSpec`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field GF(q²) with its modulus, primitive element and log tables.
pub struct FieldSpec {
    p: u64,
    e: u32,
    m: u32,
    q: u64,
    order: u64,
    modulus: Vec<u32>,
    xi: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Shared handle to a [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl Deref for Field {
    type Target = FieldSpec;

    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

impl PartialEq for Field {
    // Construction is deterministic in (p, e).
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p == other.p && self.e == other.e)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` with `n = p^e` when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let (mut rest, mut e) = (n, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over GF(p), coefficients low-degree-first.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn poly_rem_monic(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let t = (lead as u64 * bc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn monic_polys_of_degree(p: u32, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        coeffs.push(1);
        coeffs
    })
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = poly_trim(poly.to_vec());
    let deg = match poly.len() {
        0 | 1 => return false,
        len => len - 1,
    };
    if poly[deg] != 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        for divisor in monic_polys_of_degree(p, d) {
            if poly_rem_monic(&poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Coefficient sequences of length `m` in lexicographic order, comparing
/// the constant term first.
fn lex_sequences(p: u32, m: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(m as u32);
    (0..count).map(move |mut r| {
        let mut digits = vec![0u32; m];
        for slot in digits.iter_mut().rev() {
            *slot = (r % p as u64) as u32;
            r /= p as u64;
        }
        digits
    })
}

struct PolyRing {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
}

impl PolyRing {
    fn unpack(&self, mut idx: u64) -> Vec<u32> {
        let mut out = vec![0; self.m];
        for c in out.iter_mut() {
            *c = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        out
    }

    fn pack(&self, coeffs: &[u32]) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    fn mul(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.unpack(x), self.unpack(y));
        let mut prod = vec![0u32; 2 * self.m - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                let t = ai as u64 * bj as u64 % self.p as u64;
                prod[i + j] = ((prod[i + j] as u64 + t) % self.p as u64) as u32;
            }
        }
        let mut r = poly_rem_monic(&prod, &self.modulus, self.p);
        r.resize(self.m, 0);
        self.pack(&r)
    }

    fn pow(&self, x: u64, mut n: u64) -> u64 {
        let (mut base, mut acc) = (x, 1u64);
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

/// Builds GF(q²) for q = p^e.
///
/// The modulus is the lexicographically smallest monic irreducible of degree
/// 2e (constant term compared first) and ξ is the lexicographically smallest
/// element of multiplicative order q² − 1, so the result depends only on
/// `(p, e)`.
pub fn make_field(p: u64, e: u32) -> Result<Field, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if e == 0 {
        return Err(FieldError::ZeroExponent);
    }
    let m = 2 * e;
    let order = p
        .checked_pow(m)
        .filter(|&o| o <= MAX_FIELD_ORDER)
        .ok_or(FieldError::TooLarge { p, m })?;
    let q = p.pow(e);
    let pp = p as u32;
    let mu = m as usize;

    let modulus = lex_sequences(pp, mu)
        .map(|mut c| {
            c.push(1);
            c
        })
        .find(|c| is_irreducible(c, pp))
        .expect("an irreducible polynomial of every degree exists");

    let ring = PolyRing {
        p: pp,
        m: mu,
        modulus: modulus.clone(),
    };
    let group = order - 1;
    let factors = distinct_prime_factors(group);
    let xi = lex_sequences(pp, mu)
        .map(|c| ring.pack(&c))
        .find(|&x| x != 0 && factors.iter().all(|&r| ring.pow(x, group / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic");

    let mut exp = vec![0u32; group as usize];
    let mut log = vec![u32::MAX; order as usize];
    let mut cur = 1u64;
    for (k, slot) in exp.iter_mut().enumerate() {
        *slot = cur as u32;
        log[cur as usize] = k as u32;
        cur = ring.mul(cur, xi);
    }
    debug_assert_eq!(cur, 1);

    Ok(Field(Arc::new(FieldSpec {
        p,
        e,
        m,
        q,
        order,
        modulus,
        xi: FieldElement(xi as u32),
        exp,
        log,
    })))
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree m over the prime field.
    pub fn degree(&self) -> u32 {
        self.m
    }

    /// The base prime power q.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// q², the number of elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus, coefficients low-degree-first (length m + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element ξ.
    pub fn xi(&self) -> FieldElement {
        self.xi
    }

    fn group_order(&self) -> u64 {
        self.order - 1
    }

    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index < self.order {
            Ok(FieldElement(index as u32))
        } else {
            Err(FieldError::OutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.m as usize {
            return Err(FieldError::CoefficientLength {
                got: coeffs.len(),
                expected: self.m as usize,
            });
        }
        let idx = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + (c as u64 % self.p));
        Ok(FieldElement(idx as u32))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut idx = x.0 as u64;
        (0..self.m)
            .map(|_| {
                let c = (idx % self.p) as u32;
                idx /= self.p;
                c
            })
            .collect()
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order as u32).map(FieldElement)
    }

    /// ξ^k for any integer k.
    pub fn xi_pow(&self, k: i64) -> FieldElement {
        let n = self.group_order() as i64;
        FieldElement(self.exp[k.rem_euclid(n) as usize])
    }

    /// The j-th nonzero element of GF(q): ξ^((q+1)j).
    pub fn base_subfield_nonzero(&self, j: u64) -> FieldElement {
        self.xi_pow(((self.q + 1) * (j % (self.q - 1))) as i64)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        let p = self.p as u32;
        let (mut a, mut b) = (x.0, y.0);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.p == 2 {
            return x;
        }
        let p = self.p as u32;
        let mut a = x.0;
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64;
        FieldElement(self.exp[(s % self.group_order()) as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let n = self.group_order();
        let l = self.log[x.0 as usize] as u64;
        Ok(FieldElement(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// x^n; negative exponents invert first.
    pub fn pow(&self, x: FieldElement, n: i64) -> Result<FieldElement, FieldError> {
        if x.is_zero() {
            return match n {
                0 => Ok(FieldElement::ONE),
                n if n > 0 => Ok(FieldElement::ZERO),
                _ => Err(FieldError::ZeroNegativePower),
            };
        }
        let g = self.group_order() as i128;
        let k = (self.log[x.0 as usize] as i128 * n as i128).rem_euclid(g);
        Ok(FieldElement(self.exp[k as usize]))
    }

    /// x^n for non-negative n; never fails.
    pub fn pow_u(&self, x: FieldElement, n: u64) -> FieldElement {
        if x.is_zero() {
            return if n == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let g = self.group_order() as u128;
        let k = (self.log[x.0 as usize] as u128 * n as u128) % g;
        FieldElement(self.exp[k as usize])
    }

    /// The conjugate x^q.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow_u(x, self.q)
    }

    /// Membership in GF(q) ⊂ GF(q²).
    pub fn is_in_base_subfield(&self, x: FieldElement) -> bool {
        self.frobenius(x) == x
    }

    pub fn dlog(&self, x: FieldElement) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroLog);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    /// Smallest-exponent v = ξ^s with v^(q+1) = ρ, for ρ ∈ GF(q)*.
    pub fn norm_root(&self, rho: FieldElement) -> Result<FieldElement, FieldError> {
        if rho.is_zero() || !self.is_in_base_subfield(rho) {
            return Err(FieldError::NotInBaseSubfield { q: self.q });
        }
        let l = self.dlog(rho)?;
        // GF(q)* = <ξ^(q+1)>, so q+1 divides dlog(ρ) and s = l/(q+1) < q-1.
        debug_assert_eq!(l % (self.q + 1), 0);
        let v = self.xi_pow((l / (self.q + 1)) as i64);
        debug_assert_eq!(self.pow_u(v, self.q + 1), rho);
        Ok(v)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: FieldElement) -> Result<u64, FieldError> {
        let l = self.dlog(x)?;
        let g = self.group_order();
        Ok(g / gcd(g, l))
    }

    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, items: I) -> FieldElement {
        items
            .into_iter()
            .fold(FieldElement::ZERO, |acc, x| self.add(acc, x))
    }

    /// Text dump: characteristic, degree, modulus low-to-high, ξ and a
    /// SHA-256 prefix over the log table.
    pub fn debug_dump(&self) -> String {
        let mut hasher = Sha256::new();
        for &l in &self.log {
            hasher.update(l.to_le_bytes());
        }
        let digest = hasher.finalize();
        let checksum: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
        let join = |v: &[u32]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "characteristic: {}\ndegree: {}\nq: {}\nmodulus: {}\nxi: {}\ndlog_checksum: {}\n",
            self.p,
            self.m,
            self.q,
            join(&self.modulus),
            join(&self.coeffs(self.xi)),
            checksum
        )
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
