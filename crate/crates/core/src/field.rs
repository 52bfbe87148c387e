//! Arithmetic in the tower F_p ⊆ F_q ⊆ F_{q^m}.
//!
//! The top field is stored as a single degree-`s·m` extension of F_p in the
//! polynomial basis. An element is encoded as the integer whose base-`p`
//! digits are its coordinates, least significant digit first, so the
//! canonical enumeration order is simply `0, 1, ..., p^{sm} - 1`.
//!
//! Multiplication goes through discrete log / antilog tables built once per
//! field; addition in odd characteristic uses Zech logarithms. Subfield F_q
//! is never materialised: `a` lies in F_q iff `a^q = a`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order, as a power of two.
pub const MAX_ORDER_LOG2: u32 = 22;

/// An element of F_{q^m}, encoded by its base-p coordinate digits.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Integer encoding (coordinates read as base-p digits).
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field F_{p^{s m}} together with its subfield parameters.
///
/// Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    s: u32,
    m: u32,
    degree: usize,
    modulus: Vec<u32>,
    q: u64,
    order: u64,
    /// `exp[k] = g^k`, doubled so that sums of two logs need no reduction.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `NO_LOG` when `1 + g^k = 0`. Odd p only.
    zech: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("s", &self.inner.s)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.s == other.inner.s
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

fn check_params(p: u32, s: u32, m: u32) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= 256 {
        return Err(Error::CharacteristicTooLarge(p));
    }
    if s < 1 || m < 2 {
        return Err(Error::InvalidExtension { s, m });
    }
    let degree = s.checked_mul(m).ok_or(Error::InvalidExtension { s, m })?;
    let too_large = Error::OrderTooLarge { p, degree, max_log2: MAX_ORDER_LOG2 };
    let mut order: u64 = 1;
    for _ in 0..degree {
        order *= p as u64;
        if order > 1u64 << MAX_ORDER_LOG2 {
            return Err(too_large);
        }
    }
    Ok(degree as usize)
}

impl FieldSpec {
    /// Builds F_{p^{sm}} with the default modulus: the monic irreducible
    /// polynomial of degree `s·m` with the smallest integer encoding.
    pub fn new(p: u32, s: u32, m: u32) -> Result<Self> {
        let degree = check_params(p, s, m)?;
        let modulus = fp_poly::smallest_irreducible(degree, p);
        Self::build(p, s, m, degree, modulus)
    }

    /// Builds the field with an explicit modulus, given low-degree-first
    /// with the leading 1 included (`s·m + 1` coefficients).
    pub fn with_modulus(p: u32, s: u32, m: u32, modulus: &[u32]) -> Result<Self> {
        let degree = check_params(p, s, m)?;
        if modulus.len() != degree + 1 || modulus[degree] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus { expected: degree });
        }
        if !fp_poly::is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        Self::build(p, s, m, degree, modulus.to_vec())
    }

    fn build(p: u32, s: u32, m: u32, degree: usize, modulus: Vec<u32>) -> Result<Self> {
        let q = (p as u64).pow(s);
        let order = (p as u64).pow(degree as u32);
        let group = (order - 1) as usize;

        let gen = fp_poly::primitive_element(&modulus, p, order);
        let mut exp = vec![0u32; 2 * group];
        let mut log = vec![0u32; order as usize];
        let mut cur = vec![0u32; degree];
        cur[0] = 1;
        for k in 0..group {
            let v = fp_poly::encode(&cur, p);
            exp[k] = v;
            exp[k + group] = v;
            log[v as usize] = k as u32;
            cur = fp_poly::mul_mod(&cur, &gen, &modulus, p);
        }

        let zech = if p == 2 {
            Vec::new()
        } else {
            (0..group)
                .map(|k| {
                    let mut digits = fp_poly::decode(exp[k], p, degree);
                    digits[0] = (digits[0] + 1) % p;
                    let v = fp_poly::encode(&digits, p);
                    if v == 0 {
                        NO_LOG
                    } else {
                        log[v as usize]
                    }
                })
                .collect()
        };

        Ok(FieldSpec { inner: Arc::new(Inner { p, s, m, degree, modulus, q, order, exp, log, zech }) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn s(&self) -> u32 {
        self.inner.s
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// `q = p^s`.
    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// `q^m = p^{sm}`.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// Extension degree `s·m` over F_p.
    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// Modulus coefficients, low degree first, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The generator used for the log tables.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.inner.exp[1 % self.inner.exp.len().max(1)])
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.inner.order {
            return Err(Error::ElementOutOfRange { value, order: self.inner.order });
        }
        Ok(FieldElement(value as u32))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.inner.degree {
            return Err(Error::LengthMismatch { expected: self.inner.degree, got: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.inner.p) {
            return Err(Error::ElementOutOfRange { value: c as u64, order: self.inner.p as u64 });
        }
        Ok(FieldElement(fp_poly::encode(coeffs, self.inner.p)))
    }

    /// Polynomial-basis coordinates, lowest power first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        fp_poly::decode(a.0, self.inner.p, self.inner.degree)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.order as u32).map(FieldElement)
    }

    #[inline]
    fn group(&self) -> u64 {
        self.inner.order - 1
    }

    #[inline]
    fn log_of(&self, a: FieldElement) -> u32 {
        self.inner.log[a.0 as usize]
    }

    #[inline]
    fn exp_of(&self, k: u64) -> FieldElement {
        FieldElement(self.inner.exp[(k % self.group()) as usize])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.inner.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let (la, lb) = (self.log_of(a) as u64, self.log_of(b) as u64);
        let group = self.group();
        let diff = (lb + group - la) % group;
        let z = self.inner.zech[diff as usize];
        if z == NO_LOG {
            FieldElement::ZERO
        } else {
            self.exp_of(la + z as u64)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.inner.p == 2 || a.0 == 0 {
            return a;
        }
        // -1 = g^{(order-1)/2}
        self.exp_of(self.log_of(a) as u64 + self.group() / 2)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.inner.exp[(self.log_of(a) + self.log_of(b)) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log_of(a) as u64;
        Ok(self.exp_of(self.group() - l))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents are defined for nonzero `a`, and `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let group = self.group() as i128;
        let k = ((self.log_of(a) as i128) * (e as i128)).rem_euclid(group);
        Ok(self.exp_of(k as u64))
    }

    /// `a^(q^k)`.
    pub fn frobenius_q(&self, a: FieldElement, k: u32) -> FieldElement {
        self.power_of_char(a, self.inner.q, k)
    }

    /// `a^(p^k)`.
    pub fn frobenius_p(&self, a: FieldElement, k: u32) -> FieldElement {
        self.power_of_char(a, self.inner.p as u64, k)
    }

    fn power_of_char(&self, a: FieldElement, base: u64, k: u32) -> FieldElement {
        if a.0 == 0 {
            return a;
        }
        let group = self.group();
        let mut e = 1u64 % group.max(1);
        for _ in 0..k {
            e = e * base % group;
        }
        if group == 1 {
            return a;
        }
        self.exp_of(self.log_of(a) as u64 * e)
    }

    /// Relative trace to F_q: `a + a^q + ... + a^{q^{m-1}}`.
    pub fn trace_rel(&self, a: FieldElement) -> FieldElement {
        (0..self.inner.m).fold(FieldElement::ZERO, |acc, i| self.add(acc, self.frobenius_q(a, i)))
    }

    pub fn in_subfield_q(&self, a: FieldElement) -> bool {
        self.frobenius_q(a, 1) == a
    }

    /// `c·a` for an integer scalar `c` from the prime field.
    #[inline]
    pub fn scale(&self, c: u32, a: FieldElement) -> FieldElement {
        match c % self.inner.p {
            0 => FieldElement::ZERO,
            1 => a,
            c => self.mul(FieldElement(c), a),
        }
    }

    /// Mixed-field guard for values built outside this field.
    pub fn check(&self, a: FieldElement) -> Result<FieldElement> {
        self.element(a.0 as u64)
    }
}

/// Dense polynomials over F_p as digit vectors (lowest degree first).
/// Only used to pick a modulus and a generator.
pub(crate) mod fp_poly {
    use super::prime_factors;

    pub fn encode(digits: &[u32], p: u32) -> u32 {
        digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
    }

    pub fn decode(mut v: u32, p: u32, len: usize) -> Vec<u32> {
        let mut out = vec![0u32; len];
        for d in out.iter_mut() {
            *d = v % p;
            v /= p;
        }
        out
    }

    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Remainder of `a` modulo `f` (any nonzero `f`), trimmed.
    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let f = trim(f.to_vec());
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p) as u64;
        let mut r = trim(a.to_vec());
        while r.len() > df {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            let shift = top - df;
            for (i, &fi) in f.iter().enumerate() {
                let sub = c * fi as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|v| v as u32).collect())
    }

    /// Product modulo the monic `modulus`, padded to `deg(modulus)` digits.
    pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let mut r = rem(&mul(a, b, p), modulus, p);
        r.resize(modulus.len() - 1, 0);
        r
    }

    fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), f, p);
            }
            b = rem(&mul(&b, &b, p), f, p);
            e >>= 1;
        }
        trim(result)
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    /// Rabin's irreducibility test for a monic polynomial.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = vec![0u32, 1];
        // frob[k] = x^{p^k} mod f
        let mut frob = vec![rem(&x, &f, p)];
        for _ in 0..n {
            let next = pow_mod(frob.last().unwrap(), p as u64, &f, p);
            frob.push(next);
        }
        if frob[n] != rem(&x, &f, p) {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|r| {
            let k = n / r as usize;
            let d = gcd(&sub(&frob[k], &x, p), &f, p);
            d.len() == 1
        })
    }

    /// Monic irreducible of the given degree with the smallest integer
    /// encoding (coefficient of x^0 least significant).
    pub fn smallest_irreducible(degree: usize, p: u32) -> Vec<u32> {
        let span = (p as u64).pow(degree as u32);
        for low in 0..span {
            let mut f = decode(low as u32, p, degree);
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// First element (in canonical order) generating the multiplicative group.
    pub fn primitive_element(modulus: &[u32], p: u32, order: u64) -> Vec<u32> {
        let degree = modulus.len() - 1;
        let group = order - 1;
        let factors = prime_factors(group);
        for v in 1..order as u32 {
            let cand = decode(v, p, degree);
            let ok = factors.iter().all(|&r| pow_mod(&cand, group / r, modulus, p) != vec![1]);
            if ok {
                return cand;
            }
        }
        unreachable!("finite fields have cyclic multiplicative groups")
    }
}
