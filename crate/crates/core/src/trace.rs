//! Paired trace Goppa instances `C(L, g)` and `C(M, h)` and executable checks
//! of the identities between them.
//!
//! `g = Tr(x)`, `L` its non-roots, `h(y) = Σ y^{b - q^i}` and `M = L^{-1}`
//! ordered elementwise, so coordinate `i` of every code refers to the same
//! position. Each check returns a [`CheckReport`]; a check on a
//! zero-dimensional code passes vacuously and says so.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::goppa::{eval_vector, GoppaCode, Support};
use crate::linalg::VectorQm;
use crate::poly::{build_h_poly, build_trace_poly, param_a, param_b, Polynomial};

/// Which of the four codes of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CodeKind {
    /// `C(L, g)`
    L,
    /// `C(M, h)`
    M,
    /// `C(L, g^2)`
    L2,
    /// `C(M, h^2)`
    M2,
}

impl CodeKind {
    pub const ALL: [CodeKind; 4] = [CodeKind::L, CodeKind::M, CodeKind::L2, CodeKind::M2];

    pub fn label(self) -> &'static str {
        match self {
            CodeKind::L => "C(L,g)",
            CodeKind::M => "C(M,h)",
            CodeKind::L2 => "C(L,g^2)",
            CodeKind::M2 => "C(M,h^2)",
        }
    }

    /// Power of the base polynomial.
    pub fn power(self) -> u32 {
        match self {
            CodeKind::L | CodeKind::M => 1,
            CodeKind::L2 | CodeKind::M2 => 2,
        }
    }

    pub fn is_inverted_frame(self) -> bool {
        matches!(self, CodeKind::M | CodeKind::M2)
    }
}

impl std::str::FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(CodeKind::L),
            "M" | "m" => Ok(CodeKind::M),
            "L2" | "l2" => Ok(CodeKind::L2),
            "M2" | "m2" => Ok(CodeKind::M2),
            _ => Err(Error::Parse(format!("unknown code {s:?} (expected L, M, L2 or M2)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TraceGoppaInstance {
    pub field: FieldSpec,
    /// `1 + q + ... + q^{m-2}`
    pub a: u64,
    /// `1 + q + ... + q^{m-1}`
    pub b: u64,
    pub g: Polynomial,
    pub h: Polynomial,
    pub support_l: Support,
    pub support_m: Support,
    pub code_l: GoppaCode,
    pub code_m: GoppaCode,
    pub code_l2: GoppaCode,
    pub code_m2: GoppaCode,
}

impl TraceGoppaInstance {
    pub fn build(p: u32, s: u32, m: u32) -> Result<Self> {
        Self::from_field(&FieldSpec::new(p, s, m)?)
    }

    pub fn from_field(field: &FieldSpec) -> Result<Self> {
        let g = build_trace_poly(field);
        let h = build_h_poly(field);
        let support_l = Support::non_roots(field, &g);
        let support_m = support_l.inverted(field)?;
        let code_l = GoppaCode::build(field, &support_l, &g)?;
        let code_m = GoppaCode::build(field, &support_m, &h)?;
        let code_l2 = GoppaCode::build(field, &support_l, &g.pow(2))?;
        let code_m2 = GoppaCode::build(field, &support_m, &h.pow(2))?;
        Ok(TraceGoppaInstance {
            field: field.clone(),
            a: param_a(field),
            b: param_b(field),
            g,
            h,
            support_l,
            support_m,
            code_l,
            code_m,
            code_l2,
            code_m2,
        })
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn m(&self) -> u32 {
        self.field.m()
    }

    pub fn n(&self) -> usize {
        self.support_l.len()
    }

    pub fn code(&self, kind: CodeKind) -> &GoppaCode {
        match kind {
            CodeKind::L => &self.code_l,
            CodeKind::M => &self.code_m,
            CodeKind::L2 => &self.code_l2,
            CodeKind::M2 => &self.code_m2,
        }
    }

    pub fn support(&self, kind: CodeKind) -> &Support {
        if kind.is_inverted_frame() {
            &self.support_m
        } else {
            &self.support_l
        }
    }

    /// `g` or `h`, before squaring.
    pub fn base_poly(&self, kind: CodeKind) -> &Polynomial {
        if kind.is_inverted_frame() {
            &self.h
        } else {
            &self.g
        }
    }

    /// `ev_S(X^j / P)` where `P` is the Goppa polynomial of `kind`.
    pub fn eval(&self, kind: CodeKind, j: i64) -> Result<VectorQm> {
        eval_vector(&self.field, self.support(kind), j, self.base_poly(kind), kind.power())
    }

    /// `ev_S(X^j)`.
    pub fn eval_monomial(&self, kind: CodeKind, j: i64) -> Result<VectorQm> {
        eval_vector(&self.field, self.support(kind), j, self.base_poly(kind), 0)
    }

    pub fn dual_contains(&self, kind: CodeKind, j: i64) -> Result<bool> {
        self.code(kind).dual_contains(&self.eval(kind, j)?)
    }

    pub fn window(&self, kind: CodeKind, jmin: i64, jmax: i64) -> Result<Window> {
        max_consecutive_window(self.code(kind), self.base_poly(kind), kind.power(), jmin, jmax)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub exponent: i64,
    pub contained: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckDetails {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    pub tested: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub memberships: Vec<Membership>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub applicable: bool,
    pub vacuous: bool,
    pub pass: bool,
    pub details: CheckDetails,
}

impl CheckReport {
    fn not_applicable(name: &str, reason: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            applicable: false,
            vacuous: false,
            pass: false,
            details: CheckDetails { notes: vec![reason.into()], ..Default::default() },
        }
    }

    fn finish(name: &str, vacuous: bool, details: CheckDetails) -> Self {
        let pass = vacuous || details.counterexamples.is_empty() && details.memberships.iter().all(|m| m.contained);
        CheckReport { name: name.into(), applicable: true, vacuous, pass, details }
    }

    /// True when the check ran and held.
    pub fn ok(&self) -> bool {
        !self.applicable || self.pass
    }
}

fn membership_scan(
    inst: &TraceGoppaInstance,
    kind: CodeKind,
    exps: impl IntoIterator<Item = i64>,
) -> Result<CheckDetails> {
    let mut details = CheckDetails { code: Some(kind.label().into()), ..Default::default() };
    for j in exps {
        let contained = inst.dual_contains(kind, j)?;
        details.memberships.push(Membership { exponent: j, contained });
        details.tested += 1;
    }
    Ok(details)
}

pub const SUPPORT_INVERSION: &str = "support_inversion";
pub const DIGIT_ROTATION: &str = "digit_rotation";
pub const HIGH_POWER: &str = "high_power";
pub const AQ_POWER: &str = "aq_power";
pub const CODE_EQUALITY: &str = "code_equality";
pub const SQUARED_EQUALITY: &str = "squared_equality";
pub const FRAME_CHANGE: &str = "frame_change";
pub const XPOW: &str = "xpow";
pub const MORE_HIGH_POWERS: &str = "more_high_powers";
pub const NEGATIVE_POWERS: &str = "negative_powers";
pub const Q3_POWER: &str = "q3_power";
pub const Q5_POWER: &str = "q5_power";

/// Every check name, in report order.
pub const ALL_CHECKS: [&str; 12] = [
    SUPPORT_INVERSION,
    DIGIT_ROTATION,
    HIGH_POWER,
    AQ_POWER,
    CODE_EQUALITY,
    SQUARED_EQUALITY,
    FRAME_CHANGE,
    XPOW,
    MORE_HIGH_POWERS,
    NEGATIVE_POWERS,
    Q3_POWER,
    Q5_POWER,
];

/// `Tr(α) ≠ 0 ⟺ h(α^{-1}) ≠ 0` over every nonzero α, and `M` is exactly the
/// non-root set of `h`.
pub fn check_support_inversion(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    let f = &inst.field;
    let mut details = CheckDetails::default();
    for a in f.elements().skip(1) {
        details.tested += 1;
        let in_l = !f.trace_rel(a).is_zero();
        let in_m = !inst.h.eval(f.inv(a)?).is_zero();
        if in_l != in_m {
            details.counterexamples.push(format!("alpha={a}: Tr!=0 is {in_l}, h(1/alpha)!=0 is {in_m}"));
        }
    }
    let mut m_sorted = inst.support_m.elements().to_vec();
    m_sorted.sort();
    if m_sorted != Support::non_roots(f, &inst.h).elements() {
        details.counterexamples.push("M differs from the non-roots of h".into());
    }
    let back = inst.support_m.inverted(f)?;
    if back != inst.support_l {
        details.counterexamples.push("inverting M does not return L".into());
    }
    details.notes.push(format!("|L| = |M| = {}", inst.n()));
    Ok(CheckReport::finish(SUPPORT_INVERSION, false, details))
}

/// Multiplying by `q` modulo `q^m - 1` rotates base-q digits one place up.
pub fn check_digit_rotation(q: u64, m: u32) -> CheckReport {
    let modulus = q.pow(m) - 1;
    let digits = |mut v: u64| -> Vec<u64> {
        (0..m)
            .map(|_| {
                let d = v % q;
                v /= q;
                d
            })
            .collect()
    };
    let mut details = CheckDetails::default();
    for i in 0..modulus {
        details.tested += 1;
        let d = digits(i);
        let rotated: Vec<u64> = (0..m as usize).map(|r| d[(r + m as usize - 1) % m as usize]).collect();
        if digits(q * i % modulus) != rotated {
            details.counterexamples.push(format!("i={i}"));
        }
    }
    CheckReport::finish(DIGIT_ROTATION, false, details)
}

/// `ev_L(X^i/g)` and its q-th power lie in `C(L,g)^⊥` for
/// `q^{m-1} <= i <= aq`.
pub fn check_high_power_lemma(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    let lo = inst.q().pow(inst.m() - 1) as i64;
    let hi = (inst.a * inst.q()) as i64;
    let mut details = CheckDetails { code: Some(CodeKind::L.label().into()), ..Default::default() };
    for i in lo..=hi {
        let v = inst.eval(CodeKind::L, i)?;
        let plain = inst.code_l.dual_contains(&v)?;
        let powered = inst.code_l.dual_contains(&v.pth_power(inst.field.s()))?;
        details.tested += 1;
        details.memberships.push(Membership { exponent: i, contained: plain && powered });
    }
    Ok(CheckReport::finish(HIGH_POWER, inst.code_l.is_degenerate(), details))
}

/// `ev_M(X^{aq}/h)` (and the intermediate `ev_M(X^a/h)`) lie in `C(M,h)^⊥`.
pub fn check_aq_lemma(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    let exps = [inst.a as i64, (inst.a * inst.q()) as i64];
    let details = membership_scan(inst, CodeKind::M, exps)?;
    Ok(CheckReport::finish(AQ_POWER, inst.code_m.is_degenerate(), details))
}

fn equality_report(name: &str, left: &GoppaCode, right: &GoppaCode, labels: (&str, &str)) -> Result<CheckReport> {
    let mut details = CheckDetails { tested: left.kernel().rows() + right.kernel().rows(), ..Default::default() };
    details.notes.push(format!("dim {} = {}, dim {} = {}", labels.0, left.dim(), labels.1, right.dim()));
    if !left.parity().same_kernel(right.parity())? {
        details.counterexamples.push(format!("kernels of {} and {} differ", labels.0, labels.1));
    }
    let vacuous = left.is_degenerate() && right.is_degenerate();
    let mut report = CheckReport::finish(name, false, details);
    report.vacuous = vacuous && report.pass;
    Ok(report)
}

/// `C(L, g) = C(M, h)` as sets of vectors under `M_i = L_i^{-1}`.
pub fn check_code_equality(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    equality_report(CODE_EQUALITY, &inst.code_l, &inst.code_m, (CodeKind::L.label(), CodeKind::M.label()))
}

/// `C(L, g^2) = C(M, h^2)`.
pub fn check_squared_equality(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    equality_report(SQUARED_EQUALITY, &inst.code_l2, &inst.code_m2, (CodeKind::L2.label(), CodeKind::M2.label()))
}

/// Entrywise `ev_L(X^i/g^e) = ev_M(Y^{e·b - i}/h^e)` under `α ↦ α^{-1}`,
/// for `e = 1` over `0 <= i <= aq` and `e = 2` over `0 <= i <= 2aq + 2`.
pub fn check_frame_change(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    let mut details = CheckDetails::default();
    let aq = (inst.a * inst.q()) as i64;
    let b = inst.b as i64;
    for (l, m, e, top) in [(CodeKind::L, CodeKind::M, 1, aq), (CodeKind::L2, CodeKind::M2, 2, 2 * aq + 2)] {
        for i in 0..=top {
            details.tested += 1;
            if inst.eval(l, i)? != inst.eval(m, e * b - i)? {
                details.counterexamples.push(format!("{}: i={i}", l.label()));
            }
        }
    }
    Ok(CheckReport::finish(FRAME_CHANGE, false, details))
}

/// For each `i`: given `ev(X^{i'}/P)` in the dual for all `i' < i + t`
/// (`t = deg P`), `ev(X^{i+t}/P)` is in the dual iff `ev(X^i)` is.
/// Exponents whose hypothesis fails are skipped and noted.
pub fn check_xpow_lemma(inst: &TraceGoppaInstance, kind: CodeKind, exponents: &[i64]) -> Result<CheckReport> {
    let code = inst.code(kind);
    if !code.gpoly().is_monic() {
        return Ok(CheckReport::not_applicable(XPOW, "Goppa polynomial is not monic"));
    }
    let t = code.t() as i64;
    let mut details = CheckDetails { code: Some(kind.label().into()), ..Default::default() };
    let mut prefix_ok = 0i64; // every j < prefix_ok is known to be in the dual
    let mut any = false;
    for &i in exponents {
        if i < 0 {
            details.notes.push(format!("i={i}: negative exponent skipped"));
            continue;
        }
        while prefix_ok < i + t && inst.dual_contains(kind, prefix_ok)? {
            prefix_ok += 1;
        }
        if prefix_ok < i + t {
            details.notes.push(format!("i={i}: hypothesis fails at exponent {prefix_ok}"));
            continue;
        }
        any = true;
        details.tested += 1;
        let lhs = inst.dual_contains(kind, i + t)?;
        let rhs = code.dual_contains(&inst.eval_monomial(kind, i)?)?;
        details.notes.push(format!("i={i}: ev(X^{}/P) in dual = {lhs}, ev(X^{i}) in dual = {rhs}", i + t));
        if lhs != rhs {
            details.counterexamples.push(format!("i={i}"));
        }
    }
    if !any {
        let mut r = CheckReport::not_applicable(XPOW, "no exponent satisfies the hypothesis");
        r.details.notes.extend(details.notes);
        return Ok(r);
    }
    Ok(CheckReport::finish(XPOW, code.is_degenerate(), details))
}

/// Default exponents for the xpow check: `0`, and `q+1, q+2, q+3, 2q+1`.
pub fn default_xpow_exponents(q: u64) -> Vec<i64> {
    let q = q as i64;
    let mut out = vec![0, q + 1, q + 2, q + 3, 2 * q + 1];
    out.sort_unstable();
    out.dedup();
    out
}

/// Binary only: `ev_M(Y^j/h^2) ∈ C(M,h^2)^⊥` for `0 <= j <= 2aq + 2`.
pub fn check_more_high_powers(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    if inst.p() != 2 {
        return Ok(CheckReport::not_applicable(MORE_HIGH_POWERS, "requires p = 2"));
    }
    let top = (2 * inst.a * inst.q() + 2) as i64;
    let details = membership_scan(inst, CodeKind::M2, 0..=top)?;
    Ok(CheckReport::finish(MORE_HIGH_POWERS, inst.code_m2.is_degenerate(), details))
}

/// Number of integers `i` with `0 < i < a / (q/2 - 1)`; `None` when `q < 4`.
pub fn strict_negative_count(a: u64, q: u64) -> Option<u64> {
    let denom = (q / 2).checked_sub(1).filter(|&d| d > 0)?;
    // i·denom < a
    Some((a - 1) / denom)
}

/// Binary, `q >= 4`: `ev_M(Y^{-i}/h^2) ∈ C(M,h^2)^⊥` for
/// `0 < i < a / (q/2 - 1)`. Also records how far the run of contained
/// negative exponents actually extends.
pub fn check_negative_powers(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    if inst.p() != 2 {
        return Ok(CheckReport::not_applicable(NEGATIVE_POWERS, "requires p = 2"));
    }
    let Some(k) = strict_negative_count(inst.a, inst.q()) else {
        return Ok(CheckReport::not_applicable(NEGATIVE_POWERS, "requires q >= 4"));
    };
    let mut details = membership_scan(inst, CodeKind::M2, (1..=k as i64).map(|i| -i))?;
    let period = (inst.field.order() - 1) as i64;
    let mut edge = 0i64;
    while edge < period && inst.dual_contains(CodeKind::M2, -(edge + 1))? {
        edge += 1;
    }
    details.notes.push(format!("largest consecutive negative exponent contained: -{edge}"));
    Ok(CheckReport::finish(NEGATIVE_POWERS, inst.code_m2.is_degenerate(), details))
}

fn m3_gate(inst: &TraceGoppaInstance, name: &str) -> Option<CheckReport> {
    if inst.p() != 2 || inst.m() != 3 || inst.q() < 8 {
        Some(CheckReport::not_applicable(name, "requires p = 2, m = 3, q >= 8"))
    } else {
        None
    }
}

/// `m = 3`, binary, `q >= 8`: `ev_L(X^{2q^2+2q+3}/g^2) ∈ C(L,g^2)^⊥`.
pub fn check_q3_lemma(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    if let Some(r) = m3_gate(inst, Q3_POWER) {
        return Ok(r);
    }
    let q = inst.q() as i64;
    let details = membership_scan(inst, CodeKind::L2, [2 * q * q + 2 * q + 3])?;
    Ok(CheckReport::finish(Q3_POWER, inst.code_l2.is_degenerate(), details))
}

/// `m = 3`, binary, `q >= 8`: `ev_L(X^{2q+5}) ∈ C(L,g^2)^⊥`, and then
/// `ev_L(X^{2q+6})` by squaring `ev_L(X^{q+3})`.
pub fn check_q5_lemma(inst: &TraceGoppaInstance) -> Result<CheckReport> {
    if let Some(r) = m3_gate(inst, Q5_POWER) {
        return Ok(r);
    }
    let q = inst.q() as i64;
    let mut details = CheckDetails { code: Some(CodeKind::L2.label().into()), ..Default::default() };
    for j in [2 * q + 5, 2 * q + 6] {
        let contained = inst.code_l2.dual_contains(&inst.eval_monomial(CodeKind::L2, j)?)?;
        details.tested += 1;
        details.memberships.push(Membership { exponent: j, contained });
    }
    details.notes.push("memberships are of ev_L(X^j), no denominator".into());
    Ok(CheckReport::finish(Q5_POWER, inst.code_l2.is_degenerate(), details))
}

/// Runs one named check.
pub fn run_check(inst: &TraceGoppaInstance, name: &str) -> Result<CheckReport> {
    match name {
        SUPPORT_INVERSION => check_support_inversion(inst),
        DIGIT_ROTATION => Ok(check_digit_rotation(inst.q(), inst.m())),
        HIGH_POWER => check_high_power_lemma(inst),
        AQ_POWER => check_aq_lemma(inst),
        CODE_EQUALITY => check_code_equality(inst),
        SQUARED_EQUALITY => check_squared_equality(inst),
        FRAME_CHANGE => check_frame_change(inst),
        XPOW => check_xpow_lemma(inst, CodeKind::L2, &default_xpow_exponents(inst.q())),
        MORE_HIGH_POWERS => check_more_high_powers(inst),
        NEGATIVE_POWERS => check_negative_powers(inst),
        Q3_POWER => check_q3_lemma(inst),
        Q5_POWER => check_q5_lemma(inst),
        other => Err(Error::Parse(format!("unknown check {other:?}"))),
    }
}

/// Maximal run of consecutive dual memberships.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    /// `(hi - lo + 1) + 1`: the alternant bound from the run.
    pub certified: u64,
    /// The code has dimension zero; the run says nothing about distance.
    pub degenerate: bool,
}

/// Largest `[lo, hi] ⊆ [jmin, jmax]` containing 0 such that
/// `ev(X^j / gpoly^e)` is in the dual of `code` for every `j` in it.
/// An empty run (`0` itself fails) is reported as `lo = 0, hi = -1`.
pub fn max_consecutive_window(code: &GoppaCode, gpoly: &Polynomial, e: u32, jmin: i64, jmax: i64) -> Result<Window> {
    if jmin > 0 || jmax < 0 {
        return Err(Error::Precondition("window range must contain 0".into()));
    }
    if jmin < 0 && code.support().contains_zero() {
        return Err(Error::ZeroInSupport);
    }
    let f = code.field();
    let member = |j: i64| -> Result<bool> { code.dual_contains(&eval_vector(f, code.support(), j, gpoly, e)?) };
    let mut hi = -1;
    while hi < jmax && member(hi + 1)? {
        hi += 1;
    }
    let mut lo = 0;
    if hi >= 0 {
        while lo > jmin && member(lo - 1)? {
            lo -= 1;
        }
    }
    Ok(Window { lo, hi, certified: (hi - lo + 2) as u64, degenerate: code.is_degenerate() })
}

/// Distance bounds for `C(L, Tr)` at `(p, s, m)`, as closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSummary {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    /// `deg g + 1 = q^{m-1} + 1`.
    pub classical: u64,
    /// `2 deg g + 1`, binary only.
    pub classical_binary: Option<u64>,
    /// `q^{m-1} + ... + q + 1` (any p).
    pub trace_pary: u64,
    /// `2(q^{m-1} + ... + q) + 1`, binary only.
    pub trace_binary_squared: Option<u64>,
    /// `2(q^{m-1} + ... + 1) + ⌊a / (q/2 - 1)⌋`, binary with `q >= 4`.
    pub trace_binary_floor: Option<u64>,
    /// `#{i : 0 < i < a/(q/2 - 1)}`.
    pub negative_count: Option<u64>,
    /// `2aq + 4 + negative_count`: the window `[-k, 2aq + 2]` plus one.
    pub trace_binary_strict: Option<u64>,
    /// `2q^2 + 2q + 8`, binary with `m = 3`, `q >= 8`.
    pub m3_binary: Option<u64>,
}

pub fn bound_calculators(p: u32, s: u32, m: u32) -> Result<BoundSummary> {
    if !crate::field::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if s < 1 || m < 2 {
        return Err(Error::InvalidExtension { s, m });
    }
    let q = (p as u64).pow(s);
    let a: u64 = (0..m - 1).map(|i| q.pow(i)).sum();
    let b = a + q.pow(m - 1);
    let t = q.pow(m - 1);
    let binary = p == 2;
    let k = if binary { strict_negative_count(a, q) } else { None };
    let floor = if binary && q >= 4 { Some(2 * b + a / (q / 2 - 1)) } else { None };
    Ok(BoundSummary {
        q,
        a,
        b,
        classical: t + 1,
        classical_binary: binary.then_some(2 * t + 1),
        trace_pary: b,
        trace_binary_squared: binary.then_some(2 * a * q + 1),
        trace_binary_floor: floor,
        negative_count: k,
        trace_binary_strict: k.map(|k| 2 * a * q + 4 + k),
        m3_binary: (binary && m == 3 && q >= 8).then_some(2 * q * q + 2 * q + 8),
    })
}

impl BoundSummary {
    /// `(name, value)` for every applicable bound, ascending by value.
    pub fn ordered(&self) -> Vec<(&'static str, u64)> {
        let mut out: Vec<(&'static str, u64)> = [
            ("classical", Some(self.classical)),
            ("classical_binary", self.classical_binary),
            ("trace_pary", Some(self.trace_pary)),
            ("trace_binary_squared", self.trace_binary_squared),
            ("trace_binary_floor", self.trace_binary_floor),
            ("trace_binary_strict", self.trace_binary_strict),
            ("m3_binary", self.m3_binary),
        ]
        .into_iter()
        .filter_map(|(n, v)| v.map(|v| (n, v)))
        .collect();
        out.sort_by_key(|&(_, v)| v);
        out
    }
}
