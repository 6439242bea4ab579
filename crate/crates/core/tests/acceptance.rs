//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any criterion fails.
//!
//! Every comparison is exact (integer or big-integer equality); there are no
//! floating-point tolerances anywhere in this file.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use niho_core::arith::gcd;
use niho_core::distribution::WeightDistribution;
use niho_core::enumerator::{CodeContext, EnumOptions, RootFormKind};
use niho_core::fields::FieldTower;
use niho_core::fixtures::{table_rows, EXAMPLES, TABLE_FAMILY_TWO};
use niho_core::params::{
    derive, dimension, closed_form_minpoly_degree, minpoly_degrees, random_admissible_spec, same_minpoly, CodeSpec,
    DerivedParams, Family, SweepBounds,
};
use niho_core::theory::{
    corollary_tables, n_k, solve_distribution, theoretical_weights, MomentSystem,
};

const SEED: u64 = 20240917;
/// Specs per prime in the property sweep (4 primes).
const SWEEP_PER_PRIME: usize = 30;
/// Random tuples per spec for fast-vs-direct weights.
const FAST_SAMPLES: usize = 10_000;
/// Enumerate exhaustively only below this many tuples in the sweep.
const SWEEP_ENUM_LIMIT: u64 = 1 << 16;
/// Specs per tabulated formula.
const TABLE_SPECS: usize = 20;
/// Multiplier exponents `s` per spec for representation independence.
const GAMMA_POWERS: usize = 5;

struct Outcome {
    pass: bool,
    detail: String,
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn setup(spec: &CodeSpec) -> Result<(DerivedParams, FieldTower), String> {
    let d = derive(spec).map_err(|e| format!("{spec}: {e}"))?;
    let t = FieldTower::new(spec.p, spec.l, spec.m).map_err(|e| format!("{spec}: {e}"))?;
    Ok((d, t))
}

fn golden(ex_enum: &str, n: u64, k: u32, q: u64) -> WeightDistribution {
    WeightDistribution::from_enumerator(n, k, q, ex_enum).expect("fixture parses")
}

fn compare(label: &str, got: &WeightDistribution, want: &WeightDistribution) -> Result<(), String> {
    match got.first_difference(want) {
        None => Ok(()),
        Some(d) => Err(format!("{label}: {d} (got {})", got.enumerator())),
    }
}

/// Golden enumerators, brute force and closed form.
fn criterion_1() -> Outcome {
    let mut checked = 0;
    for ex in EXAMPLES.iter().filter(|e| !e.long_run) {
        let spec = ex.spec();
        let (d, tower) = match setup(&spec) {
            Ok(x) => x,
            Err(e) => return fail(e),
        };
        let want = golden(ex.enumerator, ex.nkd.0, ex.nkd.1, d.q);
        let closed = match solve_distribution(&spec, &d) {
            Ok(x) => x,
            Err(e) => return fail(format!("{}: {e}", ex.id)),
        };
        let ctx = CodeContext::new(&spec, &d, &tower).expect("context");
        let brute = match ctx.brute_force_distribution(&EnumOptions::default()) {
            Ok(x) => x,
            Err(e) => return fail(format!("{}: {e}", ex.id)),
        };
        for (label, dist) in [("closed form", &closed), ("brute force", &brute)] {
            if let Err(e) = compare(&format!("{} {label}", ex.id), dist, &want) {
                return fail(e);
            }
        }
        checked += 1;
    }
    ok(format!("{checked} enumerators reproduced exactly by brute force and closed form"))
}

/// Long-run examples via the accelerated path.
fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    for ex in EXAMPLES.iter().filter(|e| e.long_run) {
        let spec = ex.spec();
        let (d, tower) = match setup(&spec) {
            Ok(x) => x,
            Err(e) => return fail(e),
        };
        let want = golden(ex.enumerator, ex.nkd.0, ex.nkd.1, d.q);
        match solve_distribution(&spec, &d) {
            Ok(c) => {
                if let Err(e) = compare(&format!("{} closed form", ex.id), &c, &want) {
                    return fail(e);
                }
            }
            Err(e) => return fail(format!("{}: {e}", ex.id)),
        }
        let ctx = CodeContext::new(&spec, &d, &tower).expect("context");
        let start = Instant::now();
        let opts = EnumOptions { long_run: true, ..EnumOptions::default() };
        let acc = match ctx.accelerated_distribution(&opts) {
            Ok(x) => x,
            Err(e) => return fail(format!("{}: {e}", ex.id)),
        };
        if let Err(e) = compare(&format!("{} accelerated", ex.id), &acc, &want) {
            return fail(e);
        }
        notes.push(format!("{} ({} tuples, {:.1}s)", ex.id, ctx.tuple_count().unwrap(), start.elapsed().as_secs_f64()));
    }
    ok(format!("accelerated and closed form exact: {}", notes.join(", ")))
}

/// Table rows: [n, k, d] from the closed form, plus one brute-force check.
fn criterion_3() -> Outcome {
    let mut rows = 0;
    for row in table_rows() {
        let spec = row.spec();
        let d = match derive(&spec) {
            Ok(d) => d,
            Err(e) => return fail(format!("{}: {e}", row.id())),
        };
        let dist = match solve_distribution(&spec, &d) {
            Ok(x) => x,
            Err(e) => return fail(format!("{}: {e}", row.id())),
        };
        let got = (d.n, d.dimension, dist.min_distance().unwrap_or(0));
        if got != row.nkd {
            return fail(format!("{}: got {:?}, expected {:?}", row.id(), got, row.nkd));
        }
        rows += 1;
    }
    let row = &TABLE_FAMILY_TWO[0];
    let spec = row.spec();
    let (d, tower) = match setup(&spec) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let brute = CodeContext::new(&spec, &d, &tower)
        .and_then(|c| c.brute_force_distribution(&EnumOptions::default()))
        .map_err(|e| e.to_string());
    let closed = solve_distribution(&spec, &d).map_err(|e| e.to_string());
    match (brute, closed) {
        (Ok(b), Ok(c)) if b.same_as(&c) && b.min_distance() == Some(row.nkd.2) => {
            ok(format!("{rows} rows match [n,k,d]; {} brute-force verified: {}", row.id(), b.enumerator()))
        }
        (Ok(b), Ok(c)) => fail(format!("{}: brute {} vs closed {}", row.id(), b.enumerator(), c.enumerator())),
        (Err(e), _) | (_, Err(e)) => fail(format!("{}: {e}", row.id())),
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Tabulated formulas vs moment solve, and the N_k closed forms.
fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 4);
    let bounds = SweepBounds { max_field: 1 << 32, max_t: 2, max_tuples: None };
    let mut counts = [0usize; 3];
    let mut guard = 0;
    while counts.iter().any(|&c| c < TABLE_SPECS) {
        guard += 1;
        if guard > 100_000 {
            return fail(format!("could not draw enough specs: {counts:?}"));
        }
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let Some(spec) = random_admissible_spec(&mut rng, p, bounds, 1000) else { continue };
        let slot = match (spec.family, spec.t) {
            (Family::One, 1) => 0,
            (Family::Two, 1) => 1,
            (Family::Two, 2) => 2,
            _ => continue,
        };
        if counts[slot] >= TABLE_SPECS {
            continue;
        }
        let d = match derive(&spec) {
            Ok(d) => d,
            Err(e) => return fail(format!("{spec}: {e}")),
        };
        let a = solve_distribution(&spec, &d).map_err(|e| e.to_string());
        let b = corollary_tables(&spec, &d).map_err(|e| e.to_string());
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => counts[slot] += 1,
            (Ok(a), Ok(b)) => return fail(format!("{spec}: {} vs {}", a.enumerator(), b.enumerator())),
            (Err(e), _) | (_, Err(e)) => return fail(format!("{spec}: {e}")),
        }
    }
    let mut grid = 0;
    for r in [4u64, 8, 9, 16, 25, 27] {
        for e in divisors(r + 1) {
            let (ri, ei) = (BigInt::from(r), BigInt::from(e));
            let r2m1 = &ri * &ri - 1;
            let want = [
                &ei * &r2m1,
                &ei * &ei * (&ri - 2) * &r2m1,
                &ei * &ei * &r2m1 * ((&ei + 3) * &ri * &ri - 6 * &ei * &ri + 6 * &ei - 3),
            ];
            for (k, w) in (2u32..=4).zip(want) {
                match n_k(r, e, k) {
                    Ok(v) if BigInt::from(v.clone()) == w => grid += 1,
                    Ok(v) => return fail(format!("N_{k}(r={r}, e={e}) = {v}, closed form {w}")),
                    Err(err) => return fail(err.to_string()),
                }
            }
        }
    }
    ok(format!(
        "tabulated formulas (f1 t=1, f2 t=1, f2 t=2) equal the moment solve on {}/{}/{} random specs; {grid} N_k grid identities",
        counts[0], counts[1], counts[2]
    ))
}

fn sweep_specs() -> Result<Vec<CodeSpec>, String> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 5);
    let bounds = SweepBounds { max_field: 1 << 12, max_t: 3, max_tuples: None };
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for _ in 0..SWEEP_PER_PRIME {
            out.push(random_admissible_spec(&mut rng, p, bounds, 10_000).ok_or(format!("no admissible spec for p={p}"))?);
        }
    }
    Ok(out)
}

/// Property sweep over random admissible specs.
fn criterion_5(specs: &[CodeSpec]) -> Outcome {
    let mut enumerated = 0;
    let mut omega = 0;
    let mut ptwo = 0;
    for (idx, spec) in specs.iter().enumerate() {
        let (d, tower) = match setup(spec) {
            Ok(x) => x,
            Err(e) => return fail(e),
        };
        let sys = match MomentSystem::new(d.family, d.r, d.e, d.t()) {
            Ok(s) => s,
            Err(e) => return fail(format!("{spec}: {e}")),
        };
        let mu = sys.solve();
        if !sys.residual_is_zero(&mu) {
            return fail(format!("{spec}: residual M·mu - b nonzero"));
        }
        if mu.iter().any(|v| !v.is_integer() || v < &BigRational::zero()) {
            return fail(format!("{spec}: mu not nonnegative integers"));
        }
        let total: BigRational = mu.iter().sum();
        let qk = BigUint::from(d.q).pow(d.dimension);
        if total != BigRational::from_integer(BigInt::from(qk.clone()) - 1) {
            return fail(format!("{spec}: sum mu = {total} != q^k - 1"));
        }
        let weights = match theoretical_weights(&d) {
            Ok(w) => w,
            Err(e) => return fail(format!("{spec}: {e}")),
        };
        let ctx = match CodeContext::new(spec, &d, &tower) {
            Ok(c) => c,
            Err(e) => return fail(format!("{spec}: {e}")),
        };
        if ctx.tuple_count().is_some_and(|n| n <= SWEEP_ENUM_LIMIT) {
            let dist = match ctx.brute_force_distribution(&EnumOptions::default()) {
                Ok(x) => x,
                Err(e) => return fail(format!("{spec}: {e}")),
            };
            if let Some(w) = dist.nonzero_weights().into_iter().find(|w| !weights.contains(w)) {
                return fail(format!("{spec}: observed weight {w} not in {weights:?}"));
            }
            let moment = BigUint::from(d.n * (d.q - 1)) * BigUint::from(d.q).pow(d.dimension - 1);
            if dist.first_moment() != moment {
                return fail(format!("{spec}: first moment {} != {moment}", dist.first_moment()));
            }
            enumerated += 1;
        }
        match ctx.form().kind {
            RootFormKind::Omega => omega += 1,
            RootFormKind::Unit if spec.p == 2 => ptwo += 1,
            RootFormKind::Unit => {}
        }
        if let Err(e) = ctx.cross_check(FAST_SAMPLES, SEED + idx as u64) {
            return fail(format!("{spec} ({:?} form): {e}", ctx.form().kind));
        }
    }
    ok(format!(
        "{} specs (p in 2,3,5,7): moment residual zero, mu nonnegative integers summing to q^k-1; \
         {enumerated} enumerated with support and first moment exact; fast = direct on {FAST_SAMPLES} tuples each \
         (root forms: {ptwo} unit p=2, {} unit p odd, {omega} omega)",
        specs.len(),
        specs.len() - ptwo - omega
    ))
}

/// Minimal-polynomial degrees: m for d0, 2m for the others, all distinct.
fn criterion_6(specs: &[CodeSpec]) -> Outcome {
    for spec in specs {
        let d = match derive(spec) {
            Ok(d) => d,
            Err(e) => return fail(format!("{spec}: {e}")),
        };
        let degs = minpoly_degrees(&d);
        let m = spec.m;
        let want: Vec<u32> = (0..degs.len())
            .map(|i| if d.family == Family::One && i == 0 { m } else { 2 * m })
            .collect();
        if degs != want {
            return fail(format!("{spec}: degrees {degs:?}, expected {want:?}"));
        }
        for (&(s, dd), &deg) in d.decompositions.iter().zip(&degs) {
            if closed_form_minpoly_degree(s, dd, d.q, m) != Some(deg) {
                return fail(format!("{spec}: closed-form degree disagrees for s={s}"));
            }
        }
        for (i, &a) in d.exponents.iter().enumerate() {
            for &b in &d.exponents[i + 1..] {
                if same_minpoly(a, b, d.q, d.r) {
                    return fail(format!("{spec}: {a} and {b} share a minimal polynomial"));
                }
            }
        }
        if let Err(e) = dimension(&d) {
            return fail(format!("{spec}: {e}"));
        }
    }
    ok(format!("{} specs: degrees (m, 2m, ..., 2m) and pairwise distinct minimal polynomials", specs.len()))
}

/// Distributions do not depend on the choice of primitive element.
fn criterion_7(specs: &[CodeSpec]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED ^ 7);
    let mut checked = 0;
    for spec in specs.iter().filter(|s| s.code_size().is_some_and(|n| n <= 1 << 12)) {
        let (d, tower) = match setup(spec) {
            Ok(x) => x,
            Err(e) => return fail(e),
        };
        let base = match CodeContext::new(spec, &d, &tower).and_then(|c| c.brute_force_distribution(&EnumOptions::default())) {
            Ok(x) => x,
            Err(e) => return fail(format!("{spec}: {e}")),
        };
        let order = tower.size() - 1;
        for _ in 0..GAMMA_POWERS {
            let s = loop {
                let s = rng.gen_range(1..order.max(2));
                if gcd(s, order) == 1 {
                    break s;
                }
            };
            let other = match tower.with_gamma_power(s) {
                Ok(t) => t,
                Err(e) => return fail(format!("{spec} s={s}: {e}")),
            };
            let dist = match CodeContext::new(spec, &d, &other).and_then(|c| c.brute_force_distribution(&EnumOptions::default())) {
                Ok(x) => x,
                Err(e) => return fail(format!("{spec} s={s}: {e}")),
            };
            if !dist.same_as(&base) {
                return fail(format!("{spec} s={s}: {} vs {}", dist.enumerator(), base.enumerator()));
            }
        }
        checked += 1;
    }
    if checked == 0 {
        return fail("no small specs in the sweep");
    }
    ok(format!("{checked} specs x {GAMMA_POWERS} values of s: distributions unchanged"))
}

fn main() {
    // Accept and ignore libtest arguments (e.g. --nocapture, filters).
    let specs = match sweep_specs() {
        Ok(s) => s,
        Err(e) => {
            println!("sweep generation failed: {e}");
            std::process::exit(1);
        }
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("golden enumerators", Box::new(criterion_1)),
        ("long-run golden", Box::new(criterion_2)),
        ("table rows", Box::new(criterion_3)),
        ("closed-form cross-checks", Box::new(criterion_4)),
        ("property sweep", Box::new(|| criterion_5(&specs))),
        ("dimension oracle", Box::new(|| criterion_6(&specs))),
        ("representation independence", Box::new(|| criterion_7(&specs))),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        if !out.pass {
            failures += 1;
        }
        println!(
            "criterion {} [{}] {} (tolerance: exact, {:.1}s): {}",
            i + 1,
            name,
            if out.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            out.detail
        );
    }
    if failures > 0 {
        println!("acceptance: {failures} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all {} criteria passed", criteria.len());
}
