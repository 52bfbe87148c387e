//! Minimum distance: exhaustive enumeration for small dimensions, a
//! randomized information-set search for an upper bound otherwise, and a
//! comparison of both against the closed-form bounds.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::goppa::GoppaCode;
use crate::linalg::MatrixFp;
use crate::trace::BoundSummary;

pub const DEFAULT_EXACT_LIMIT: u32 = 24;
pub const DEFAULT_ITERATIONS: u64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumeration,
    Search,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub exact: Option<u64>,
    pub upper: Option<u64>,
    pub certified_lower: u64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// A codeword of weight `exact` (or `upper`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
}

impl DistanceResult {
    fn degenerate(code: &GoppaCode) -> Self {
        DistanceResult {
            exact: None,
            upper: None,
            certified_lower: code.t() as u64 + 1,
            method: Method::Degenerate,
            trials: None,
            seed: None,
            witness: None,
        }
    }

    /// Best known weight: exact if present, otherwise the search bound.
    pub fn best(&self) -> Option<u64> {
        self.exact.or(self.upper)
    }

    /// Raises the certified lower bound; fails with the witness if a found
    /// codeword is lighter than the bound. A search hit that meets the bound
    /// is the exact distance.
    pub fn with_certified_lower(mut self, bound: u64) -> Result<Self> {
        self.certified_lower = self.certified_lower.max(bound);
        self.check()?;
        if self.exact.is_none() && self.upper == Some(self.certified_lower) {
            self.exact = self.upper;
        }
        Ok(self)
    }

    fn check(&self) -> Result<()> {
        if let Some(w) = self.best() {
            if w < self.certified_lower {
                return Err(Error::Inconsistent {
                    weight: w as usize,
                    bound: self.certified_lower,
                    witness: self.witness.clone().unwrap_or_default(),
                });
            }
        }
        Ok(())
    }
}

fn validate_witness(code: &GoppaCode, w: &[u32]) -> Result<()> {
    if !code.syndrome_oracle()?.is_zero(w)? {
        return Err(Error::Precondition("reported codeword fails the syndrome check".into()));
    }
    Ok(())
}

fn weight(v: &[u32]) -> u64 {
    v.iter().filter(|&&x| x != 0).count() as u64
}

/// Enumerates all `p^dim - 1` nonzero codewords. Refuses when
/// `p^dim > 2^limit`.
pub fn exact_min_distance(code: &GoppaCode, limit: u32) -> Result<DistanceResult> {
    let dim = code.dim();
    if dim == 0 {
        return Ok(DistanceResult::degenerate(code));
    }
    let p = code.field().p();
    let too_large = Error::DimensionTooLarge { dim, p, limit };
    let total = (p as u64).checked_pow(dim as u32).ok_or(too_large.clone())?;
    if total > 1u64 << limit.min(63) {
        return Err(too_large);
    }
    let basis = code.kernel();
    let (best, witness) = if p == 2 { enumerate_binary(basis, total) } else { enumerate_odometer(basis) };
    validate_witness(code, &witness)?;
    let result = DistanceResult {
        exact: Some(best),
        upper: None,
        certified_lower: code.t() as u64 + 1,
        method: Method::Enumeration,
        trials: None,
        seed: None,
        witness: Some(witness),
    };
    result.check()?;
    Ok(result)
}

/// Gray-code walk: one row XOR per codeword.
fn enumerate_binary(basis: &MatrixFp, total: u64) -> (u64, Vec<u32>) {
    let rows: Vec<&[u64]> = (0..basis.rows()).map(|r| basis.row_words(r).expect("binary")).collect();
    let mut cur = vec![0u64; rows[0].len()];
    let mut best = u64::MAX;
    let mut best_words = cur.clone();
    for step in 1..total {
        let flip = step.trailing_zeros() as usize;
        for (c, &w) in cur.iter_mut().zip(rows[flip]) {
            *c ^= w;
        }
        let wt: u64 = cur.iter().map(|w| w.count_ones() as u64).sum();
        if wt < best {
            best = wt;
            best_words.copy_from_slice(&cur);
        }
    }
    let witness = (0..basis.cols()).map(|c| ((best_words[c / 64] >> (c % 64)) & 1) as u32).collect();
    (best, witness)
}

/// Odometer over coefficient digits; bumping digit `d` adds row `d`.
fn enumerate_odometer(basis: &MatrixFp) -> (u64, Vec<u32>) {
    let p = basis.p();
    let rows = basis.to_rows();
    let mut digits = vec![0u32; rows.len()];
    let mut cur = vec![0u32; basis.cols()];
    let mut best = u64::MAX;
    let mut best_vec = cur.clone();
    loop {
        let mut d = 0;
        loop {
            if d == digits.len() {
                return (best, best_vec);
            }
            for (c, &x) in cur.iter_mut().zip(&rows[d]) {
                *c = (*c + x) % p;
            }
            digits[d] = (digits[d] + 1) % p;
            if digits[d] != 0 {
                break;
            }
            d += 1;
        }
        let wt = weight(&cur);
        if wt < best {
            best = wt;
            best_vec.clone_from(&cur);
        }
    }
}

/// Random information-set search: permute columns, bring the kernel basis
/// to systematic form, and inspect single rows and pairwise combinations.
pub fn low_weight_search(code: &GoppaCode, iterations: u64, seed: u64) -> Result<DistanceResult> {
    let dim = code.dim();
    if dim == 0 {
        return Ok(DistanceResult::degenerate(code));
    }
    let n = code.n();
    let p = code.field().p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(u64, Vec<u32>)> = None;
    let consider = |v: Vec<u32>, perm: &[usize], best: &mut Option<(u64, Vec<u32>)>| {
        let w = weight(&v);
        if w > 0 && best.as_ref().is_none_or(|(b, _)| w < *b) {
            let mut orig = vec![0u32; n];
            for (c, &x) in v.iter().enumerate() {
                orig[perm[c]] = x;
            }
            *best = Some((w, orig));
        }
    };
    for _ in 0..iterations.max(1) {
        perm.shuffle(&mut rng);
        let ech = code.kernel().permute_columns(&perm).rref();
        let rows: Vec<Vec<u32>> = (0..ech.rank).map(|r| ech.matrix.row(r)).collect();
        for r in &rows {
            consider(r.clone(), &perm, &mut best);
        }
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                for c in 1..p {
                    let v: Vec<u32> = rows[i].iter().zip(&rows[j]).map(|(&x, &y)| (x + c * y) % p).collect();
                    consider(v, &perm, &mut best);
                }
            }
        }
        if dim == 1 {
            break;
        }
    }
    let (w, witness) = best.expect("nonzero kernel rows exist");
    validate_witness(code, &witness)?;
    let result = DistanceResult {
        // a one-dimensional code has a single nonzero weight
        exact: (dim == 1).then_some(w),
        upper: Some(w),
        certified_lower: code.t() as u64 + 1,
        method: Method::Search,
        trials: Some(iterations),
        seed: Some(seed),
        witness: Some(witness),
    };
    result.check()?;
    Ok(result)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Bound equals the exact distance.
    Sharp,
    Consistent,
    Violated,
    /// No distance evidence to compare with.
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub bound: u64,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconciliation {
    pub exact: Option<u64>,
    pub upper: Option<u64>,
    /// Ascending by bound value.
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation_witness: Option<Vec<u32>>,
}

impl Reconciliation {
    pub fn any_violation(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Violated)
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.verdicts.iter().find(|v| v.name == name).map(|v| v.status)
    }
}

/// Compares every applicable closed-form bound, plus the certified lower
/// bound carried by `dist`, against the distance evidence.
pub fn reconcile(bounds: &BoundSummary, dist: &DistanceResult) -> Reconciliation {
    let mut named: Vec<(&str, u64)> = bounds.ordered();
    named.push(("certified_window", dist.certified_lower));
    named.sort_by_key(|&(_, v)| v);
    let verdicts: Vec<Verdict> = named
        .into_iter()
        .map(|(name, bound)| {
            let status = match (dist.exact, dist.upper) {
                (Some(d), _) if bound == d => Status::Sharp,
                (Some(d), _) if bound < d => Status::Consistent,
                (Some(_), _) => Status::Violated,
                (None, Some(u)) if bound <= u => Status::Consistent,
                (None, Some(_)) => Status::Violated,
                (None, None) => Status::Unchecked,
            };
            Verdict { name: name.into(), bound, status }
        })
        .collect();
    let violated = verdicts.iter().any(|v| v.status == Status::Violated);
    Reconciliation {
        exact: dist.exact,
        upper: dist.upper,
        verdicts,
        violation_witness: if violated { dist.witness.clone() } else { None },
    }
}
