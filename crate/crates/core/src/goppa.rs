//! Goppa codes `C(L, g)` over F_p with support in F_{q^m}.
//!
//! A code is built from the evaluation vectors `ev_L(X^j / g)`,
//! `0 <= j < deg g`, expanded to F_p coordinates; its kernel is the code.
//! [`SyndromeOracle`] decides membership straight from the congruence
//! `Σ c_i / (x - α_i) ≡ 0 mod g` and shares no code with that path.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{expand_to_fp, Echelon, MatrixFp, VectorQm};
use crate::poly::Polynomial;

/// Ordered, duplicate-free evaluation points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    elements: Vec<FieldElement>,
}

impl Support {
    pub fn new(field: &FieldSpec, elements: Vec<FieldElement>) -> Result<Self> {
        let mut seen = vec![false; field.order() as usize];
        for (i, &a) in elements.iter().enumerate() {
            field.check(a)?;
            if std::mem::replace(&mut seen[a.value() as usize], true) {
                return Err(Error::DuplicateSupport(i));
            }
        }
        Ok(Support { elements })
    }

    /// Elements where `poly` does not vanish, in canonical order.
    pub fn non_roots(field: &FieldSpec, poly: &Polynomial) -> Self {
        Support { elements: field.elements().filter(|&a| !poly.eval(a).is_zero()).collect() }
    }

    /// Elementwise inverses, in the same order.
    pub fn inverted(&self, field: &FieldSpec) -> Result<Self> {
        let elements = self.elements.iter().map(|&a| field.inv(a)).collect::<Result<_>>()?;
        Ok(Support { elements })
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.elements.contains(&FieldElement::ZERO)
    }
}

/// `ev_S(X^j / g^e)`: entry `i` is `α_i^j / g(α_i)^e`.
pub fn eval_vector(field: &FieldSpec, support: &Support, j: i64, g: &Polynomial, e: u32) -> Result<VectorQm> {
    if j < 0 && support.contains_zero() {
        return Err(Error::ZeroInSupport);
    }
    let entries = support
        .elements()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let num = field.pow(a, j)?;
            if e == 0 {
                return Ok(num);
            }
            let ga = g.eval(a);
            if ga.is_zero() {
                return Err(Error::RootInSupport { index: i, element: a.value() });
            }
            field.div(num, field.pow(ga, e as i64)?)
        })
        .collect::<Result<_>>()?;
    Ok(VectorQm::new(field, entries))
}

/// Componentwise `p^k` power.
pub fn pth_power_vector(v: &VectorQm, k: u32) -> VectorQm {
    v.pth_power(k)
}

#[derive(Clone, Debug)]
pub struct GoppaCode {
    field: FieldSpec,
    support: Support,
    gpoly: Polynomial,
    t: usize,
    parity: MatrixFp,
    parity_echelon: Echelon,
    kernel: MatrixFp,
    dim: usize,
    oracle: OnceLock<SyndromeOracle>,
}

impl GoppaCode {
    /// Builds `C(support, gpoly)`.
    pub fn build(field: &FieldSpec, support: &Support, gpoly: &Polynomial) -> Result<Self> {
        if gpoly.field() != field {
            return Err(Error::MixedFields);
        }
        let t = match gpoly.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::Precondition("Goppa polynomial must have positive degree".into())),
            Some(t) => t,
        };
        let n = support.len();
        if n == 0 {
            return Err(Error::Precondition("empty support".into()));
        }
        let mut weights = Vec::with_capacity(n);
        for (i, &a) in support.elements().iter().enumerate() {
            let ga = gpoly.eval(a);
            if ga.is_zero() {
                return Err(Error::RootInSupport { index: i, element: a.value() });
            }
            weights.push(field.inv(ga)?);
        }
        // rows α_i^j / g(α_i), j = 0..t-1
        let mut rows = Vec::with_capacity(t);
        let mut cur = weights;
        for _ in 0..t {
            rows.push(VectorQm::new(field, cur.clone()));
            for (c, &a) in cur.iter_mut().zip(support.elements()) {
                *c = field.mul(*c, a);
            }
        }
        let parity = expand_to_fp(&rows)?;
        let parity_echelon = parity.rref();
        let kernel = parity_echelon.kernel_basis();
        let dim = kernel.rows();
        assert_eq!(dim + parity_echelon.rank, n, "rank-nullity");
        assert!(dim + field.degree() * t >= n, "dimension below n - s·m·t");
        Ok(GoppaCode {
            field: field.clone(),
            support: support.clone(),
            gpoly: gpoly.clone(),
            t,
            parity,
            parity_echelon,
            kernel,
            dim,
            oracle: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn support(&self) -> &Support {
        &self.support
    }

    pub fn gpoly(&self) -> &Polynomial {
        &self.gpoly
    }

    /// Degree of the Goppa polynomial.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.support.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// F_p expansion of the defining rows; its row space is the dual code.
    pub fn parity(&self) -> &MatrixFp {
        &self.parity
    }

    pub fn parity_rank(&self) -> usize {
        self.parity_echelon.rank
    }

    /// Kernel basis, one codeword per row.
    pub fn kernel(&self) -> &MatrixFp {
        &self.kernel
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim == 0
    }

    /// Membership by the parity checks.
    pub fn contains(&self, word: &[u32]) -> Result<bool> {
        self.parity.annihilates(word)
    }

    /// Lazily built congruence oracle.
    pub fn syndrome_oracle(&self) -> Result<&SyndromeOracle> {
        if let Some(o) = self.oracle.get() {
            return Ok(o);
        }
        let o = SyndromeOracle::new(&self.field, &self.support, &self.gpoly)?;
        Ok(self.oracle.get_or_init(|| o))
    }

    /// Whether `v` is orthogonal (over F_{q^m}) to every kernel row.
    /// Vacuously true for a zero-dimensional code.
    pub fn dual_contains(&self, v: &VectorQm) -> Result<bool> {
        if v.field != self.field {
            return Err(Error::MixedFields);
        }
        if v.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: v.len() });
        }
        for r in 0..self.kernel.rows() {
            let dot = match self.kernel.row_words(r) {
                // binary: addition is XOR on encodings
                Some(words) => {
                    let mut acc = 0u32;
                    for (w, &word) in words.iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let b = bits.trailing_zeros() as usize;
                            acc ^= v.entries[w * 64 + b].value();
                            bits &= bits - 1;
                        }
                    }
                    acc != 0
                }
                None => !v.dot_fp(&self.kernel.row(r))?.is_zero(),
            };
            if dot {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same question as [`dual_contains`](Self::dual_contains), answered by
    /// row-space membership of each coordinate row in the parity matrix.
    pub fn dual_contains_rowspace(&self, v: &VectorQm) -> Result<bool> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: v.len() });
        }
        for row in v.coordinate_rows() {
            if !self.parity_echelon.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Decides `Σ c_i (x - α_i)^{-1} ≡ 0 mod g` with inverses from the extended
/// Euclidean algorithm.
#[derive(Clone, Debug)]
pub struct SyndromeOracle {
    field: FieldSpec,
    gpoly: Polynomial,
    inverses: Vec<Polynomial>,
}

impl SyndromeOracle {
    pub fn new(field: &FieldSpec, support: &Support, gpoly: &Polynomial) -> Result<Self> {
        let inverses = support
            .elements()
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                Polynomial::linear(field, a)
                    .inverse_mod(gpoly)
                    .map_err(|_| Error::RootInSupport { index: i, element: a.value() })
            })
            .collect::<Result<_>>()?;
        Ok(SyndromeOracle { field: field.clone(), gpoly: gpoly.clone(), inverses })
    }

    /// The reduced syndrome polynomial of `word`.
    pub fn syndrome(&self, word: &[u32]) -> Result<Polynomial> {
        if word.len() != self.inverses.len() {
            return Err(Error::LengthMismatch { expected: self.inverses.len(), got: word.len() });
        }
        let f = &self.field;
        let t = self.gpoly.degree().unwrap_or(0);
        let mut acc = vec![FieldElement::ZERO; t];
        for (&c, inv) in word.iter().zip(&self.inverses) {
            if c % f.p() == 0 {
                continue;
            }
            for (k, &coef) in inv.coeffs().iter().enumerate() {
                acc[k] = f.add(acc[k], f.scale(c, coef));
            }
        }
        Ok(Polynomial::new(f, acc))
    }

    pub fn is_zero(&self, word: &[u32]) -> Result<bool> {
        Ok(self.syndrome(word)?.is_zero())
    }
}

/// Congruence test for a single word against a built code.
pub fn syndrome_is_zero(code: &GoppaCode, word: &[u32]) -> Result<bool> {
    code.syndrome_oracle()?.is_zero(word)
}

pub fn dual_contains(code: &GoppaCode, v: &VectorQm) -> Result<bool> {
    code.dual_contains(v)
}

fn require_squarefree_on_support(support: &Support, g: &Polynomial) -> Result<()> {
    if !g.is_squarefree()? {
        return Err(Error::Precondition("Goppa polynomial is not squarefree".into()));
    }
    if let Some((i, &a)) = support.elements().iter().enumerate().find(|(_, &a)| g.eval(a).is_zero()) {
        return Err(Error::RootInSupport { index: i, element: a.value() });
    }
    Ok(())
}

/// Binary case: `C(L, g) = C(L, g^2)` for squarefree `g`.
pub fn verify_square_identity(field: &FieldSpec, support: &Support, g: &Polynomial) -> Result<bool> {
    if field.p() != 2 {
        return Err(Error::Precondition("square identity needs characteristic 2".into()));
    }
    require_squarefree_on_support(support, g)?;
    let c1 = GoppaCode::build(field, support, g)?;
    let c2 = GoppaCode::build(field, support, &g.pow(2))?;
    c1.parity().same_kernel(c2.parity())
}

/// `C(L, g^{p-1}) = C(L, g^p)` for squarefree `g`, codes over F_p.
pub fn verify_skhn_identity(field: &FieldSpec, support: &Support, g: &Polynomial) -> Result<bool> {
    require_squarefree_on_support(support, g)?;
    let p = field.p();
    let c1 = GoppaCode::build(field, support, &g.pow(p - 1))?;
    let c2 = GoppaCode::build(field, support, &g.pow(p))?;
    c1.parity().same_kernel(c2.parity())
}

/// Random monic squarefree polynomial of the given degree.
pub fn random_squarefree<R: Rng + ?Sized>(field: &FieldSpec, degree: usize, rng: &mut R) -> Polynomial {
    loop {
        let mut coeffs: Vec<FieldElement> =
            (0..degree).map(|_| field.element(rng.random_range(0..field.order())).expect("in range")).collect();
        coeffs.push(FieldElement::ONE);
        let g = Polynomial::new(field, coeffs);
        if g.is_squarefree().unwrap_or(false) {
            return g;
        }
    }
}

/// Random support of `size` non-roots of `g`, shuffled.
pub fn random_support<R: Rng + ?Sized>(field: &FieldSpec, g: &Polynomial, size: usize, rng: &mut R) -> Result<Support> {
    let mut pool = Support::non_roots(field, g).elements;
    if pool.len() < size {
        return Err(Error::Precondition(format!("only {} non-roots available", pool.len())));
    }
    pool.shuffle(rng);
    pool.truncate(size);
    Support::new(field, pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::build_trace_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trace_code(p: u32, s: u32, m: u32) -> (FieldSpec, GoppaCode) {
        let f = FieldSpec::new(p, s, m).unwrap();
        let g = build_trace_poly(&f);
        let l = Support::non_roots(&f, &g);
        let code = GoppaCode::build(&f, &l, &g).unwrap();
        (f, code)
    }

    #[test]
    fn degenerate_dimensions() {
        let (_, c) = trace_code(2, 1, 3);
        assert_eq!((c.n(), c.dim()), (4, 0));
        let (_, c) = trace_code(2, 2, 3);
        assert_eq!((c.n(), c.dim()), (48, 1));
    }

    #[test]
    fn full_rank_forces_zero_dimension() {
        let f = FieldSpec::new(2, 1, 4).unwrap();
        let g = Polynomial::new(&f, vec![FieldElement::ONE, FieldElement::ZERO, FieldElement::ONE, FieldElement::ONE]);
        let support = Support::new(&f, Support::non_roots(&f, &g).elements()[..3].to_vec()).unwrap();
        let c = GoppaCode::build(&f, &support, &g).unwrap();
        assert_eq!(c.dim(), 0);
    }

    #[test]
    fn root_in_support_is_reported() {
        let f = FieldSpec::new(2, 1, 3).unwrap();
        let g = build_trace_poly(&f);
        let support = Support::new(&f, vec![FieldElement::ONE, FieldElement::ZERO]).unwrap();
        assert_eq!(GoppaCode::build(&f, &support, &g).unwrap_err(), Error::RootInSupport { index: 1, element: 0 });
        assert_eq!(
            Support::new(&f, vec![FieldElement::ONE, FieldElement::ONE]).unwrap_err(),
            Error::DuplicateSupport(1)
        );
    }

    #[test]
    fn syndrome_oracle_agrees_with_kernel() {
        let (_, c) = trace_code(2, 2, 3);
        let oracle = c.syndrome_oracle().unwrap();
        assert!(oracle.is_zero(&vec![0; c.n()]).unwrap());
        for r in 0..c.kernel().rows() {
            assert!(oracle.is_zero(&c.kernel().row(r)).unwrap());
        }
        let mut unit = vec![0; c.n()];
        unit[5] = 1;
        assert!(!oracle.is_zero(&unit).unwrap());
    }

    #[test]
    fn eval_vector_examples() {
        let f = FieldSpec::new(2, 1, 3).unwrap();
        let g = build_trace_poly(&f);
        let l = Support::non_roots(&f, &g);
        let ones = eval_vector(&f, &l, 0, &g, 0).unwrap();
        assert!(ones.entries.iter().all(|&e| e == FieldElement::ONE));
        assert_eq!(eval_vector(&f, &l, 0, &g, 1).unwrap(), ones);
        assert_eq!(eval_vector(&f, &l, 1, &g, 0).unwrap().entries, l.elements());
        let with_zero = Support::new(&f, vec![FieldElement::ZERO, FieldElement::ONE]).unwrap();
        assert_eq!(eval_vector(&f, &with_zero, -1, &g, 0).unwrap_err(), Error::ZeroInSupport);
        assert!(matches!(eval_vector(&f, &with_zero, 1, &g, 1), Err(Error::RootInSupport { index: 0, .. })));
    }

    #[test]
    fn dual_membership_defining_rows_and_frobenius() {
        let (f, c) = trace_code(2, 2, 3);
        let g = c.gpoly().clone();
        for j in 0..c.t() as i64 {
            let v = eval_vector(&f, c.support(), j, &g, 1).unwrap();
            assert!(c.dual_contains(&v).unwrap());
            assert!(c.dual_contains_rowspace(&v).unwrap());
        }
        assert!(c.dual_contains(&VectorQm::new(&f, vec![FieldElement::ZERO; c.n()])).unwrap());
        // q-th power of ev(X^j/g) is ev(X^{qj}/g) since g is F_q-valued on L
        let v = eval_vector(&f, c.support(), 3, &g, 1).unwrap();
        assert_eq!(pth_power_vector(&v, f.s()), eval_vector(&f, c.support(), 3 * f.q() as i64, &g, 1).unwrap());
        assert_eq!(pth_power_vector(&v, 0), v);
    }

    #[test]
    fn square_identity_guards() {
        let f = FieldSpec::new(2, 1, 4).unwrap();
        let x2 = Polynomial::monomial(&f, 2, FieldElement::ONE);
        let l = Support::non_roots(&f, &x2);
        assert!(matches!(verify_square_identity(&f, &l, &x2), Err(Error::Precondition(_))));
        let g = build_trace_poly(&f);
        assert!(verify_square_identity(&f, &Support::non_roots(&f, &g), &g).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = f.element(5).unwrap();
        let lin = Polynomial::linear(&f, c);
        let l = random_support(&f, &lin, 12, &mut rng).unwrap();
        assert!(verify_square_identity(&f, &l, &lin).unwrap());
    }

    #[test]
    fn skhn_identity_ternary() {
        let f = FieldSpec::new(3, 1, 3).unwrap();
        let g = build_trace_poly(&f);
        assert!(verify_skhn_identity(&f, &Support::non_roots(&f, &g), &g).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let lin = Polynomial::linear(&f, f.element(11).unwrap());
        let l = random_support(&f, &lin, 20, &mut rng).unwrap();
        assert!(verify_skhn_identity(&f, &l, &lin).unwrap());
    }
}
