//! Univariate polynomials over F_{q^m}.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    /// Index = degree; no trailing zero coefficients.
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match (i, c.value()) {
                (0, v) => format!("{v}"),
                (i, 1) => format!("x^{i}"),
                (i, v) => format!("{v}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Polynomial {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &FieldSpec, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self::constant(field, FieldElement::ONE)
    }

    /// `c·x^k`.
    pub fn monomial(field: &FieldSpec, k: usize, c: FieldElement) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// `x - a`.
    pub fn linear(field: &FieldSpec, a: FieldElement) -> Self {
        Self::new(field, vec![field.neg(a), FieldElement::ONE])
    }

    /// Densifies a sparse list of `(exponent, coefficient)` terms; repeated
    /// exponents are summed.
    pub fn from_terms(field: &FieldSpec, terms: &[(usize, FieldElement)]) -> Self {
        let top = terms.iter().map(|&(e, _)| e).max().unwrap_or(0);
        let mut coeffs = vec![FieldElement::ZERO; top + 1];
        for &(e, c) in terms {
            coeffs[e] = field.add(coeffs[e], c);
        }
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn support_exponents(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    fn same_field(&self, other: &Polynomial) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.same_field(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::new(f, coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Self::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|&x| self.field.mul(c, x)).collect();
        Self::new(&self.field, coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(divisor);
        let d = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - d;
            quot[shift] = c;
            for (i, &g) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(c, g));
            }
        }
        rem.truncate(d);
        Ok((Self::new(f, quot), Self::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Extended Euclid: returns `(d, u, v)` with `u·self + v·other = d` and
    /// `d` monic (or zero when both inputs are zero).
    pub fn ext_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        self.same_field(other);
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Self::one(f), Self::zero(f));
        let (mut v0, mut v1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (quot, rem) = r0.div_rem(&r1).expect("nonzero divisor");
            let u2 = u0.sub(&quot.mul(&u1));
            let v2 = v0.sub(&quot.mul(&v1));
            r0 = std::mem::replace(&mut r1, rem);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let inv = f.inv(r0.leading()).expect("nonzero");
        (r0.scale(inv), u0.scale(inv), v0.scale(inv))
    }

    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        self.ext_gcd(other).0
    }

    /// Inverse of `self` modulo `modulus`, if they are coprime.
    pub fn inverse_mod(&self, modulus: &Polynomial) -> Result<Polynomial> {
        if modulus.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (d, u, _) = self.rem(modulus)?.ext_gcd(modulus);
        if d.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        u.rem(modulus)
    }

    pub fn derivative(&self) -> Polynomial {
        let f = &self.field;
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.scale((i % f.p() as usize) as u32, c)).collect();
        Self::new(f, coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, a: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Whether `self` has no repeated factor: `gcd(f, f')` is constant.
    /// A vanishing derivative means `f` is a p-th power.
    pub fn is_squarefree(&self) -> Result<bool> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d).degree() == Some(0))
    }
}

/// `x + x^q + ... + x^{q^{m-1}}`.
pub fn build_trace_poly(field: &FieldSpec) -> Polynomial {
    let terms: Vec<_> = trace_exponents(field).into_iter().map(|e| (e as usize, FieldElement::ONE)).collect();
    Polynomial::from_terms(field, &terms)
}

/// `q^0, ..., q^{m-1}`.
pub fn trace_exponents(field: &FieldSpec) -> Vec<u64> {
    (0..field.m()).map(|i| field.q().pow(i)).collect()
}

/// `a = 1 + q + ... + q^{m-2}`.
pub fn param_a(field: &FieldSpec) -> u64 {
    (0..field.m() - 1).map(|i| field.q().pow(i)).sum()
}

/// `b = 1 + q + ... + q^{m-1}`.
pub fn param_b(field: &FieldSpec) -> u64 {
    (0..field.m()).map(|i| field.q().pow(i)).sum()
}

/// Exponents of the companion polynomial `h`: `b - q^i` for `0 <= i < m`.
pub fn h_exponents(field: &FieldSpec) -> Vec<u64> {
    let b = param_b(field);
    trace_exponents(field).into_iter().map(|qi| b - qi).collect()
}

/// `h(y) = y^{b-1} + y^{b-q} + ... + y^{b-q^{m-1}}`.
pub fn build_h_poly(field: &FieldSpec) -> Polynomial {
    let terms: Vec<_> = h_exponents(field).into_iter().map(|e| (e as usize, FieldElement::ONE)).collect();
    Polynomial::from_terms(field, &terms)
}

/// Reduces an exponent modulo `y^{Q} - y` (`Q` = field order) while keeping
/// the induced function on the whole field: `0 ↦ 0`, `e ↦ ((e-1) mod (Q-1)) + 1`.
pub fn reduce_exponent(e: u64, order: u64) -> u64 {
    if e == 0 {
        0
    } else {
        (e - 1) % (order - 1) + 1
    }
}

/// `Tr(y^a)` reduced modulo `y^{q^m} - y`, built term by term. Agrees with
/// [`build_h_poly`].
pub fn h_poly_from_trace(field: &FieldSpec) -> Polynomial {
    let a = param_a(field);
    let order = field.order();
    let terms: Vec<_> = trace_exponents(field)
        .into_iter()
        .map(|qi| {
            let e = reduce_exponent(a * qi, order);
            (e as usize, FieldElement::ONE)
        })
        .collect();
    Polynomial::from_terms(field, &terms)
}
