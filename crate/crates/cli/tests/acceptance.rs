//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Runtime limits are part of each criterion.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trace_goppa::distance::{exact_min_distance, low_weight_search, Status};
use trace_goppa::goppa::{
    random_squarefree, random_support, syndrome_is_zero, verify_skhn_identity, verify_square_identity,
};
use trace_goppa::trace::{self, bound_calculators};
use trace_goppa::{CheckReport, CodeKind, FieldSpec, GoppaCode, Support, TraceGoppaInstance};
use trace_goppa_cli::{cmd_verify, RunConfig};

const INSTANCES: [(u32, u32, u32); 6] = [(2, 1, 3), (2, 2, 3), (2, 1, 4), (2, 3, 3), (3, 1, 3), (3, 1, 4)];
const RANDOM_SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// A pair of constructions that must define the same code on the same coordinates.
struct Pair {
    label: String,
    left: GoppaCode,
    right: GoppaCode,
}

fn build(p: u32, s: u32, m: u32) -> TraceGoppaInstance {
    TraceGoppaInstance::build(p, s, m).expect("instance builds")
}

fn non_vacuous(r: &CheckReport) -> bool {
    r.applicable && r.pass && !r.vacuous
}

fn criterion_1() -> Outcome {
    let d0 = build(2, 1, 3).code_l.dim();
    let d1 = build(2, 2, 3).code_l.dim();
    outcome(d0 == 0 && d1 == 1, format!("dim at (2,1,3) = {d0} (want 0), at (2,2,3) = {d1} (want 1)"))
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    for (p, s, m) in INSTANCES {
        let inst = build(p, s, m);
        for r in [trace::check_code_equality(&inst).unwrap(), trace::check_squared_equality(&inst).unwrap()] {
            if !(r.applicable && r.pass) {
                failures.push(format!("{} at {:?}", r.name, (p, s, m)));
            }
        }
    }
    outcome(failures.is_empty(), format!("6 instances x 2 equalities; failures: {failures:?}"))
}

fn criterion_3() -> Outcome {
    let inst = build(2, 3, 3);
    let missing: Vec<i64> = (0..=150).filter(|&i| !inst.dual_contains(CodeKind::L2, i).unwrap()).collect();
    let w = inst.window(CodeKind::L2, 0, 400).unwrap();
    outcome(
        missing.is_empty() && w.certified >= 152,
        format!(
            "151 exponents checked, missing {missing:?}; window [{}, {}] certifies {} (want >= 152)",
            w.lo, w.hi, w.certified
        ),
    )
}

fn criterion_4() -> Outcome {
    let suite = [
        trace::SUPPORT_INVERSION,
        trace::DIGIT_ROTATION,
        trace::HIGH_POWER,
        trace::AQ_POWER,
        trace::MORE_HIGH_POWERS,
        trace::NEGATIVE_POWERS,
    ];
    let mut failures = Vec::new();
    let mut ran = 0;
    for (p, s, m) in [(2, 2, 3), (2, 3, 3)] {
        let inst = build(p, s, m);
        for name in suite {
            ran += 1;
            let r = trace::run_check(&inst, name).unwrap();
            if !non_vacuous(&r) {
                failures.push(format!("{name} at {:?}", (p, s, m)));
            }
        }
    }
    for (p, s, m) in [(2, 1, 4), (3, 1, 3)] {
        ran += 1;
        let r = trace::check_digit_rotation((p as u64).pow(s), m);
        if !non_vacuous(&r) {
            failures.push(format!("digit_rotation at {:?}", (p, s, m)));
        }
    }
    outcome(failures.is_empty(), format!("{ran} non-vacuous checks; failures: {failures:?}"))
}

/// Random squarefree `g` and support; returns the field, support and `g`.
fn random_instance(
    rng: &mut ChaCha8Rng,
    p: u32,
    exps: std::ops::RangeInclusive<u32>,
    deg: std::ops::RangeInclusive<usize>,
) -> (FieldSpec, Support, trace_goppa::Polynomial) {
    loop {
        let k = rng.random_range(exps.clone());
        let field = FieldSpec::new(p, 1, k).unwrap();
        let d = rng.random_range(deg.clone());
        let size = rng.random_range(10..=30usize);
        let g = random_squarefree(&field, d, rng);
        if let Ok(l) = random_support(&field, &g, size, rng) {
            return (field, l, g);
        }
    }
}

fn criterion_5(pairs: &mut Vec<Pair>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut binary_ok = 0;
    for i in 0..20 {
        let (f, l, g) = random_instance(&mut rng, 2, 4..=8, 2..=6);
        if verify_square_identity(&f, &l, &g).unwrap() {
            binary_ok += 1;
        }
        pairs.push(Pair {
            label: format!("binary#{i}"),
            left: GoppaCode::build(&f, &l, &g).unwrap(),
            right: GoppaCode::build(&f, &l, &g.pow(2)).unwrap(),
        });
    }
    let mut ternary_ok = 0;
    for i in 0..10 {
        let (f, l, g) = random_instance(&mut rng, 3, 3..=5, 2..=4);
        if verify_skhn_identity(&f, &l, &g).unwrap() {
            ternary_ok += 1;
        }
        pairs.push(Pair {
            label: format!("ternary#{i}"),
            left: GoppaCode::build(&f, &l, &g.pow(2)).unwrap(),
            right: GoppaCode::build(&f, &l, &g.pow(3)).unwrap(),
        });
    }
    outcome(
        binary_ok == 20 && ternary_ok == 10,
        format!("square identity {binary_ok}/20, p=3 identity {ternary_ok}/10"),
    )
}

fn criterion_6(pairs: &[Pair]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED + 1);
    let mut failures = Vec::new();
    let mut rejected = 0u64;
    let mut kernel_rows = 0u64;
    for pair in pairs {
        for code in [&pair.left, &pair.right] {
            for r in 0..code.dim() {
                kernel_rows += 1;
                if !syndrome_is_zero(code, &code.kernel().row(r)).unwrap() {
                    failures.push(format!("{}: kernel row {r}", pair.label));
                }
            }
        }
        let (n, p) = (pair.left.n(), pair.left.field().p());
        let mut drawn = 0;
        while drawn < 100 {
            let v: Vec<u32> = (0..n).map(|_| rng.random_range(0..p)).collect();
            if pair.left.contains(&v).unwrap() {
                continue;
            }
            drawn += 1;
            let verdicts = [
                pair.right.contains(&v).unwrap(),
                syndrome_is_zero(&pair.left, &v).unwrap(),
                syndrome_is_zero(&pair.right, &v).unwrap(),
            ];
            if verdicts.iter().any(|&x| x) {
                failures.push(format!("{}: non-codeword accepted {verdicts:?}", pair.label));
            } else {
                rejected += 1;
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} pairs, {kernel_rows} kernel rows, {rejected} non-codewords rejected by both; failures: {:?}",
            pairs.len(),
            &failures[..failures.len().min(5)]
        ),
    )
}

fn trace_pairs() -> Vec<Pair> {
    let mut pairs = Vec::new();
    for (p, s, m) in INSTANCES {
        let inst = build(p, s, m);
        for (a, b) in [(CodeKind::L, CodeKind::M), (CodeKind::L2, CodeKind::M2)] {
            pairs.push(Pair {
                label: format!("{:?} {}/{}", (p, s, m), a.label(), b.label()),
                left: inst.code(a).clone(),
                right: inst.code(b).clone(),
            });
        }
    }
    pairs
}

fn criterion_7() -> Outcome {
    let inst = build(2, 2, 3);
    let d = exact_min_distance(&inst.code_l, 24).unwrap();
    let Some(w) = d.exact else { return outcome(false, "no exact distance") };
    let bounds = bound_calculators(2, 2, 3).unwrap();
    let rec = trace_goppa::distance::reconcile(&bounds, &d);
    let met = |name: &str| matches!(rec.status_of(name), Some(Status::Sharp | Status::Consistent));
    outcome(
        w >= 43,
        format!(
            "exact d = {w} (want >= 43); floor formula 47 {}; strict-count formula 48 {}",
            if met("trace_binary_floor") { "met" } else { "NOT met" },
            if met("trace_binary_strict") { "met" } else { "NOT met" },
        ),
    )
}

fn criterion_8() -> Outcome {
    let inst = build(2, 3, 3);
    match low_weight_search(&inst.code_l, 200, 0) {
        Ok(r) => {
            let w = r.upper.unwrap_or(u64::MAX);
            if w < 152 {
                outcome(false, format!("counterexample of weight {w}: {:?}", r.witness.unwrap_or_default()))
            } else {
                outcome(true, format!("200 iterations, seed 0: lightest codeword found has weight {w} (want >= 152)"))
            }
        }
        Err(e) => outcome(false, format!("search failed: {e}")),
    }
}

fn criterion_9() -> Outcome {
    let inst = build(3, 1, 3);
    let w = inst.window(CodeKind::M, -(inst.b as i64), 4 * inst.b as i64).unwrap();
    let d = exact_min_distance(&inst.code_m, 24).unwrap();
    let exact = d.exact.unwrap_or(0);
    outcome(
        !w.degenerate && w.certified >= 13 && exact >= w.certified,
        format!("C(M,h) window [{}, {}] certifies {} (want >= 13); exact d = {exact}", w.lo, w.hi, w.certified),
    )
}

fn criterion_10() -> Outcome {
    let config = RunConfig::new(2, 3, 3);
    let a = cmd_verify(&config).unwrap();
    let b = cmd_verify(&config).unwrap();
    outcome(
        a.body == b.body && a.exit == 0,
        format!(
            "two verify runs at (2,3,3): {} bytes, identical = {}, exit {}",
            a.body.len(),
            a.body == b.body,
            a.exit
        ),
    )
}

fn main() {
    let mut pairs = trace_pairs();
    let mut results: Vec<(usize, Duration, Duration, Outcome)> = Vec::new();
    let mut timed = |id: usize, limit: u64, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        results.push((id, t.elapsed(), Duration::from_secs(limit), o));
    };
    timed(1, 1, &mut criterion_1);
    timed(2, 60, &mut criterion_2);
    timed(3, 30, &mut criterion_3);
    timed(4, 60, &mut criterion_4);
    timed(5, 60, &mut || criterion_5(&mut pairs));
    timed(6, 60, &mut || criterion_6(&pairs));
    timed(7, 1, &mut criterion_7);
    timed(8, 120, &mut criterion_8);
    timed(9, 30, &mut criterion_9);
    timed(10, 60, &mut criterion_10);

    let mut failed = 0;
    for (id, took, limit, o) in &results {
        let in_time = took <= limit;
        let pass = o.pass && in_time;
        failed += usize::from(!pass);
        println!(
            "{} criterion {id:>2}: {} [{:.3}s, limit {}s{}]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", over time" },
        );
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
