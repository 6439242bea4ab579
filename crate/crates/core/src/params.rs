//! Code parameters: exponents, length, dimension and the admissibility
//! conditions for both families.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, gcd, gcd_signed, reduce};

/// Upper bound on `r²` for parameter arithmetic. Closed-form work never
/// touches the field, so this is looser than the tower budget.
pub const MAX_R_SQUARED: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("condition (c') violated: p is odd and h = {h}, f = {f} have different parity, so (f - h)/2 is undefined")]
    ParityViolation { h: i64, f: i64 },
    #[error("gcd of exponents with r^2 - 1 is {got}, expected delta = {expected}")]
    DeltaMismatch { expected: u64, got: u64 },
    #[error("dimension from minimal polynomials is {got}, expected {expected}")]
    DimensionMismatch { expected: u32, got: u32 },
    #[error("exponents {0} and {1} share a minimal polynomial")]
    SharedMinpoly(u64, u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Family {
    /// `C_(d0,…,dt)`: `a0 ∈ GF(r)`, `a1..at ∈ GF(r²)`.
    One,
    /// `C_(d̃1,…,d̃t)`: `a1..at ∈ GF(r²)`.
    Two,
}

impl TryFrom<u8> for Family {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            1 => Ok(Family::One),
            2 => Ok(Family::Two),
            _ => Err(format!("family must be 1 or 2, got {v}")),
        }
    }
}

impl From<Family> for u8 {
    fn from(f: Family) -> u8 {
        match f {
            Family::One => 1,
            Family::Two => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

/// Raw inputs for one code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeSpec {
    pub family: Family,
    pub p: u64,
    pub l: u32,
    pub m: u32,
    pub h: i64,
    pub f: i64,
    pub t: u32,
}

impl CodeSpec {
    pub fn new(family: Family, p: u64, l: u32, m: u32, h: i64, f: i64, t: u32) -> Self {
        CodeSpec { family, p, l, m, h, f, t }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !arith::is_prime(self.p) {
            return Err(ParamError::InvalidSpec(format!("p = {} is not prime", self.p)));
        }
        if self.l == 0 || self.m == 0 || self.t == 0 {
            return Err(ParamError::InvalidSpec("l, m and t must be at least 1".into()));
        }
        let size = (2 * self.l as u64)
            .checked_mul(self.m as u64)
            .and_then(|d| u32::try_from(d).ok())
            .and_then(|d| self.p.checked_pow(d));
        match size {
            Some(s) if s <= MAX_R_SQUARED => Ok(()),
            _ => Err(ParamError::InvalidSpec(format!(
                "r^2 = {}^{} is too large",
                self.p,
                2 * self.l as u64 * self.m as u64
            ))),
        }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.l)
    }

    pub fn r(&self) -> u64 {
        self.q().pow(self.m)
    }

    /// `e = gcd(h, r + 1)`.
    pub fn e(&self) -> u64 {
        let r = self.r();
        gcd_signed(self.h as i128, r + 1)
    }

    /// `(q^m - 1)/(q - 1)`.
    fn norm_index(&self) -> u64 {
        (self.r() - 1) / (self.q() - 1)
    }

    /// Number of codewords `q^k` if it fits in a u64.
    pub fn code_size(&self) -> Option<u64> {
        self.q().checked_pow(self.dimension_formula())
    }

    /// `(2t+1)m` or `2tm`.
    pub fn dimension_formula(&self) -> u32 {
        match self.family {
            Family::One => (2 * self.t + 1) * self.m,
            Family::Two => 2 * self.t * self.m,
        }
    }

    /// Number of candidate nonzero weights: `2t + 1` or `2t`.
    pub fn weight_count(&self) -> usize {
        match self.family {
            Family::One => 2 * self.t as usize + 1,
            Family::Two => 2 * self.t as usize,
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "family {} p={} l={} m={} h={} f={} t={}",
            self.family, self.p, self.l, self.m, self.h, self.f, self.t
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub family: Family,
    pub q: u64,
    pub r: u64,
    pub e: u64,
    pub delta: u64,
    pub n: u64,
    /// `[d0..dt]` or `[d̃1..d̃t]`, reduced into `[0, r² − 1)`.
    pub exponents: Vec<u64>,
    /// The same exponents as the unreduced values `s·(r−1) + Δ`, which is
    /// how they are usually quoted (e.g. `(63, 70)` for `r² = 64`).
    pub literal_exponents: Vec<i128>,
    /// `(2t+1)m` or `2tm`.
    pub dimension: u32,
    /// Each exponent as `s·(r−1) + Δ`, as `(s, Δ)`.
    pub decompositions: Vec<(i128, i128)>,
    /// Family 2 only: whether the `t = 1` and `t ≥ 2` delta formulas agree for this `(h, f)`.
    pub delta_formulas_agree: Option<bool>,
}

impl DerivedParams {
    pub fn r_squared_minus_one(&self) -> u64 {
        self.r * self.r - 1
    }

    pub fn t(&self) -> u32 {
        match self.family {
            Family::One => self.exponents.len() as u32 - 1,
            Family::Two => self.exponents.len() as u32,
        }
    }

    /// Size of the moment system: `2t + 1` or `2t`.
    pub fn weight_count(&self) -> usize {
        match self.family {
            Family::One => 2 * self.t() as usize + 1,
            Family::Two => 2 * self.t() as usize,
        }
    }
}

/// The integer standing in for `(f − h)/2` in the family-2 exponents.
///
/// For odd `p` this is exact integer halving (parity is required by (c')).
/// For `p = 2`, `r² − 1` is odd and `1/2` is taken modulo `r² − 1`; the result
/// is then also an inverse of 2 modulo `r − 1`, and it keeps the exponents
/// consistent modulo `r + 1`.
fn family2_half(spec: &CodeSpec, r2m1: u64) -> Result<i128, ParamError> {
    let diff = spec.f as i128 - spec.h as i128;
    if spec.p == 2 {
        let inv2 = arith::inv_mod(2, r2m1).expect("r^2 - 1 is odd for p = 2");
        Ok(arith::mul_mod(reduce(diff, r2m1), inv2, r2m1) as i128)
    } else if diff % 2 != 0 {
        Err(ParamError::ParityViolation { h: spec.h, f: spec.f })
    } else {
        Ok(diff / 2)
    }
}

pub fn derive(spec: &CodeSpec) -> Result<DerivedParams, ParamError> {
    spec.validate()?;
    let q = spec.q();
    let r = spec.r();
    let r2m1 = r * r - 1;
    let e = spec.e();
    let (h, f) = (spec.h as i128, spec.f as i128);
    let rm1 = (r - 1) as i128;

    let (decompositions, delta, agree): (Vec<(i128, i128)>, u64, Option<bool>) = match spec.family {
        Family::One => {
            let dec = (0..=spec.t as i128).map(|j| (j * h + f, 2 * f)).collect();
            let delta = gcd(
                gcd_signed(f * (r as i128 + 1), r2m1),
                (r - 1) * e,
            );
            (dec, delta, None)
        }
        Family::Two => {
            let half = family2_half(spec, r2m1)?;
            let dec: Vec<(i128, i128)> = (1..=spec.t as i128).map(|j| (j * h + half, f)).collect();
            let d1 = reduce(dec[0].0 * rm1 + f, r2m1);
            let single = gcd(d1, r2m1);
            let multi = gcd(d1, (r - 1) * e);
            let delta = if spec.t == 1 { single } else { multi };
            (dec, delta, Some(single == multi))
        }
    };
    let literal_exponents: Vec<i128> = decompositions.iter().map(|&(s, d)| s * rm1 + d).collect();
    let exponents: Vec<u64> = literal_exponents.iter().map(|&d| reduce(d, r2m1)).collect();

    let got = exponents.iter().fold(r2m1, |g, &d| gcd(g, d));
    if got != delta {
        return Err(ParamError::DeltaMismatch { expected: delta, got });
    }

    Ok(DerivedParams {
        family: spec.family,
        q,
        r,
        e,
        delta,
        n: r2m1 / delta,
        exponents,
        literal_exponents,
        dimension: spec.dimension_formula(),
        decompositions,
        delta_formulas_agree: agree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionOutcome {
    /// Literal label: `a`, `b`, `c`, `a'`, `b'`, `c1'`, `c2'`.
    pub label: String,
    pub applicable: bool,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub family: Family,
    pub conditions: Vec<ConditionOutcome>,
    pub pass: bool,
    /// Family 2: `Some(false)` flags an `(h, f)` where the two delta formulas
    /// (for `t = 1` and `t ≥ 2`) would give different lengths.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta_formulas_agree: Option<bool>,
}

impl ConditionReport {
    pub fn get(&self, label: &str) -> Option<&ConditionOutcome> {
        self.conditions.iter().find(|c| c.label == label)
    }

    /// Labels of applicable conditions that failed.
    pub fn failures(&self) -> Vec<&str> {
        self.conditions
            .iter()
            .filter(|c| c.applicable && !c.pass)
            .map(|c| c.label.as_str())
            .collect()
    }
}

fn outcome(label: &str, applicable: bool, pass: bool, detail: String) -> ConditionOutcome {
    ConditionOutcome { label: label.into(), applicable, pass: pass || !applicable, detail }
}

/// Evaluate the admissibility conditions of the spec's family.
///
/// Only `q`, `r` and `e` enter the conditions, so this works even when the
/// exponents cannot be formed (family 2 with a parity violation).
pub fn check_conditions(spec: &CodeSpec) -> Result<ConditionReport, ParamError> {
    spec.validate()?;
    let r = spec.r();
    let e = spec.e();
    let t = spec.t as u64;
    let idx = spec.norm_index();
    let odd_p = spec.p != 2;
    let gcd_f = gcd_signed(spec.f as i128, idx);

    let (conditions, pass) = match spec.family {
        Family::One => {
            let a = outcome(
                "a",
                true,
                2 * e * t < r + 1,
                format!("1 <= t = {t} < (r+1)/(2e) = {}/{}", r + 1, 2 * e),
            );
            let b = outcome("b", true, gcd_f == 1, format!("gcd(f, (r-1)/(q-1)) = gcd({}, {idx}) = {gcd_f}", spec.f));
            let m_odd = spec.m % 2 == 1;
            let both_even = spec.m % 2 == 0 && spec.h % 2 == 0;
            let c = outcome(
                "c",
                odd_p,
                m_odd || both_even,
                format!("p = {}: m = {} odd, or m and h = {} both even", spec.p, spec.m, spec.h),
            );
            let pass = a.pass && b.pass && c.pass;
            (vec![a, b, c], pass)
        }
        Family::Two => {
            let a = outcome(
                "a'",
                true,
                2 * e * t <= r + 1,
                format!("1 <= t = {t} <= (r+1)/(2e) = {}/{}", r + 1, 2 * e),
            );
            let b = outcome(
                "b'",
                !odd_p,
                gcd_f == 1,
                format!("p = 2: gcd(f, (r-1)/(q-1)) = gcd({}, {idx}) = {gcd_f}", spec.f),
            );
            let same_parity = (spec.h - spec.f) % 2 == 0;
            let c1 = outcome(
                "c1'",
                odd_p,
                same_parity && gcd_f == 1,
                format!("h = {} = f = {} (mod 2) and gcd(f, {idx}) = {gcd_f}", spec.h, spec.f),
            );
            let both_even = spec.h % 2 == 0 && spec.f % 2 == 0;
            let gcd_half = if both_even { gcd_signed((spec.f / 2) as i128, idx) } else { 0 };
            let c2 = outcome(
                "c2'",
                odd_p,
                both_even && gcd_half == 1,
                format!("h = f = 0 (mod 2) and gcd(f/2, {idx}) = {gcd_half}"),
            );
            let pass = a.pass && if odd_p { c1.pass || c2.pass } else { b.pass };
            // c1'/c2' are alternatives: only report the failing one when both fail.
            let (c1, c2) = if odd_p && (c1.pass || c2.pass) {
                (
                    ConditionOutcome { applicable: c1.pass, ..c1 },
                    ConditionOutcome { applicable: c2.pass, ..c2 },
                )
            } else {
                (c1, c2)
            };
            (vec![a, b, c1, c2], pass)
        }
    };
    let delta_formulas_agree = match spec.family {
        Family::Two => derive(spec).ok().and_then(|d| d.delta_formulas_agree),
        Family::One => None,
    };
    Ok(ConditionReport { family: spec.family, conditions, pass, delta_formulas_agree })
}

/// Degree of the minimal polynomial of `gamma^(-d)` over GF(q): the size of
/// the q-cyclotomic orbit of `d` modulo `r² − 1`.
pub fn minpoly_degree(d: u64, q: u64, r: u64) -> u32 {
    arith::cyclotomic_orbit_size(d, q, r * r - 1)
}

/// Whether `gamma^(-d)` and `gamma^(-d')` share a minimal polynomial.
pub fn same_minpoly(d: u64, d2: u64, q: u64, r: u64) -> bool {
    let modulus = r * r - 1;
    arith::cyclotomic_orbit(d, q, modulus).contains(&(d2 % modulus))
}

fn closed_form_applies(delta_exp: i128, q: u64, m: u32) -> bool {
    let idx = (q.pow(m) - 1) / (q - 1);
    gcd_signed(delta_exp, idx) == 1 || (delta_exp % 2 == 0 && gcd_signed(delta_exp / 2, idx) == 1)
}

/// Closed-form minimal polynomial degree for `d = s(r−1) + Δ`: `m` if
/// `Δ ≡ 2s (mod r+1)`, else `2m`. `None` when the gcd hypothesis on `Δ` fails.
pub fn closed_form_minpoly_degree(s: i128, delta_exp: i128, q: u64, m: u32) -> Option<u32> {
    if !closed_form_applies(delta_exp, q, m) {
        return None;
    }
    let r1 = q.pow(m) + 1;
    Some(if reduce(delta_exp - 2 * s, r1) == 0 { m } else { 2 * m })
}

/// Closed-form test for `s(r−1)+Δ` and `s'(r−1)+Δ` sharing a minimal
/// polynomial: `s ≡ s'` or `s + s' ≡ Δ (mod r+1)`.
pub fn closed_form_same_minpoly(s: i128, s2: i128, delta_exp: i128, q: u64, m: u32) -> Option<bool> {
    if !closed_form_applies(delta_exp, q, m) {
        return None;
    }
    let r1 = q.pow(m) + 1;
    Some(reduce(s - s2, r1) == 0 || reduce(s + s2 - delta_exp, r1) == 0)
}

/// Minimal polynomial degrees of the exponents, in order.
pub fn minpoly_degrees(derived: &DerivedParams) -> Vec<u32> {
    derived
        .exponents
        .iter()
        .map(|&d| minpoly_degree(d, derived.q, derived.r))
        .collect()
}

/// Code dimension as the total degree of the parity-check polynomial,
/// checked against the closed formula and for pairwise distinct factors.
pub fn dimension(derived: &DerivedParams) -> Result<u32, ParamError> {
    let (q, r) = (derived.q, derived.r);
    for (i, &a) in derived.exponents.iter().enumerate() {
        for &b in &derived.exponents[i + 1..] {
            if same_minpoly(a, b, q, r) {
                return Err(ParamError::SharedMinpoly(a, b));
            }
        }
    }
    let got: u32 = minpoly_degrees(derived).iter().sum();
    if got != derived.dimension {
        return Err(ParamError::DimensionMismatch { expected: derived.dimension, got });
    }
    Ok(got)
}

/// Bounds for [`random_admissible_spec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepBounds {
    /// Largest `r²`.
    pub max_field: u64,
    pub max_t: u32,
    /// Largest `q^k`; `None` for no limit.
    pub max_tuples: Option<u64>,
}

/// Draw `(family, l, m, h, f, t)` uniformly within `bounds` for the prime `p`
/// until the conditions hold. Gives up after `attempts` draws.
pub fn random_admissible_spec<R: Rng + ?Sized>(
    rng: &mut R,
    p: u64,
    bounds: SweepBounds,
    attempts: usize,
) -> Option<CodeSpec> {
    let mut shapes = Vec::new();
    for l in 1..=32u32 {
        for m in 1..=32u32 {
            match p.checked_pow(2 * l * m) {
                Some(size) if size <= bounds.max_field => shapes.push((l, m)),
                _ => {}
            }
        }
    }
    if shapes.is_empty() {
        return None;
    }
    for _ in 0..attempts {
        let (l, m) = shapes[rng.gen_range(0..shapes.len())];
        let r = p.pow(l * m);
        let family = if rng.gen_bool(0.5) { Family::One } else { Family::Two };
        let t = rng.gen_range(1..=bounds.max_t);
        let h = rng.gen_range(1..=r as i64 + 1);
        let f = rng.gen_range(1..=(r * r) as i64 - 2);
        let spec = CodeSpec::new(family, p, l, m, h, f, t);
        if let Some(limit) = bounds.max_tuples {
            if spec.code_size().is_none_or(|n| n > limit) {
                continue;
            }
        }
        if check_conditions(&spec).is_ok_and(|c| c.pass) {
            return Some(spec);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: u8, p: u64, l: u32, m: u32, h: i64, f: i64, t: u32) -> CodeSpec {
        CodeSpec::new(Family::try_from(family).unwrap(), p, l, m, h, f, t)
    }

    #[test]
    fn example_1_1_t1() {
        let d = derive(&spec(1, 2, 2, 2, 1, 3, 1)).unwrap();
        assert_eq!((d.q, d.r, d.e, d.delta, d.n, d.dimension), (4, 16, 1, 3, 85, 6));
        assert_eq!(d.exponents, vec![51, 66]);
        assert_eq!(dimension(&d).unwrap(), 6);
    }

    #[test]
    fn example_2_1_t2() {
        let d = derive(&spec(2, 2, 2, 2, 2, 6, 2)).unwrap();
        assert_eq!(d.exponents, vec![66, 96]);
        assert_eq!((d.delta, d.n, d.dimension), (3, 85, 8));
        assert_eq!(dimension(&d).unwrap(), 8);
    }

    #[test]
    fn gf27_family_1() {
        let d = derive(&spec(1, 3, 1, 3, 2, 1, 1)).unwrap();
        // e = gcd(2, 28), delta = gcd(28, 52)
        assert_eq!((d.e, d.delta, d.n, d.dimension), (2, 4, 182, 9));
        assert_eq!(dimension(&d).unwrap(), 9);
    }

    #[test]
    fn reference_exponents() {
        assert_eq!(derive(&spec(1, 2, 2, 2, 1, 3, 3)).unwrap().exponents, vec![51, 66, 81, 96]);
        let d = derive(&spec(1, 2, 3, 1, 1, 7, 3)).unwrap();
        assert_eq!(d.literal_exponents, vec![63, 70, 77, 84]);
        assert_eq!(d.exponents, vec![0, 7, 14, 21]);
        assert_eq!(derive(&spec(2, 2, 2, 2, 2, 6, 3)).unwrap().literal_exponents, vec![66, 96, 126]);
        assert_eq!(derive(&spec(2, 2, 3, 1, 2, 14, 3)).unwrap().literal_exponents, vec![70, 84, 98]);
        let d = derive(&spec(2, 2, 3, 1, 2, 14, 1)).unwrap();
        assert_eq!((d.literal_exponents.clone(), d.n, d.dimension), (vec![70], 9, 2));
        assert_eq!(d.exponents, vec![7]);
    }

    #[test]
    fn reference_dimensions() {
        assert_eq!(dimension(&derive(&spec(1, 2, 2, 2, 1, 3, 3)).unwrap()).unwrap(), 14);
        assert_eq!(dimension(&derive(&spec(2, 2, 3, 1, 2, 14, 2)).unwrap()).unwrap(), 4);
        assert_eq!(dimension(&derive(&spec(1, 2, 3, 1, 1, 7, 1)).unwrap()).unwrap(), 3);
    }

    #[test]
    fn conditions_family_1() {
        let ok = check_conditions(&spec(1, 2, 3, 1, 1, 7, 3)).unwrap();
        assert!(ok.pass, "{ok:?}");
        let bad = check_conditions(&spec(1, 2, 2, 2, 1, 3, 9)).unwrap();
        assert!(!bad.pass);
        assert_eq!(bad.failures(), vec!["a"]);
        // t = 8 is the last admissible value for r = 16, e = 1.
        assert!(check_conditions(&spec(1, 2, 2, 2, 1, 3, 8)).unwrap().pass);
        // (c): p odd, m even, h odd.
        let c = check_conditions(&spec(1, 3, 1, 2, 1, 1, 1)).unwrap();
        assert_eq!(c.failures(), vec!["c"]);
        // (b): gcd(f, (r-1)/(q-1)) = gcd(5, 5) for q = 4, m = 2.
        let b = check_conditions(&spec(1, 2, 2, 2, 1, 5, 1)).unwrap();
        assert_eq!(b.failures(), vec!["b"]);
    }

    #[test]
    fn conditions_family_2() {
        let bad = check_conditions(&spec(2, 3, 1, 1, 1, 2, 1)).unwrap();
        assert!(!bad.pass);
        assert_eq!(bad.failures(), vec!["c1'", "c2'"]);
        assert_eq!(
            derive(&spec(2, 3, 1, 1, 1, 2, 1)),
            Err(ParamError::ParityViolation { h: 1, f: 2 })
        );
        // (a') allows equality: r = 16, e = 1 gives t <= 8.5.
        assert!(check_conditions(&spec(2, 2, 2, 2, 2, 6, 8)).unwrap().pass);
        assert!(!check_conditions(&spec(2, 2, 2, 2, 2, 6, 9)).unwrap().pass);
        // r = 7, e = 2: t = 2 = (r+1)/(2e) is admissible.
        assert!(check_conditions(&spec(2, 7, 1, 1, 2, 4, 2)).unwrap().pass);
        // c2' with m odd: q = 3, r = 27, h = 4, f = 2.
        let r = check_conditions(&spec(2, 3, 1, 3, 4, 2, 1)).unwrap();
        assert!(r.pass);
        assert_eq!(r.failures(), Vec::<&str>::new());
    }

    #[test]
    fn condition_report_json_labels() {
        let r = check_conditions(&spec(2, 3, 1, 1, 1, 2, 1)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let labels: Vec<&str> = v["conditions"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
        assert_eq!(labels, vec!["a'", "b'", "c1'", "c2'"]);
        assert_eq!(v["family"], 2);
        let back: ConditionReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn minpoly_examples() {
        assert_eq!(minpoly_degree(51, 4, 16), 2);
        assert_eq!(minpoly_degree(66, 4, 16), 4);
        assert_eq!(minpoly_degree(0, 4, 16), 1);
        assert!(same_minpoly(66, 9, 4, 16));
        assert!(!same_minpoly(51, 66, 4, 16));
        // closed form: d0 = (0 + 3) * 15 + 6 -> s = 3, Δ = 6
        assert_eq!(closed_form_minpoly_degree(3, 6, 4, 2), Some(2));
        assert_eq!(closed_form_minpoly_degree(4, 6, 4, 2), Some(4));
    }

    #[test]
    fn negative_and_large_h_f_are_reduced() {
        let base = derive(&spec(1, 2, 2, 2, 1, 3, 2)).unwrap();
        let shifted = derive(&spec(1, 2, 2, 2, 1 + 17, 3 + 255, 2)).unwrap();
        assert_eq!(base.exponents, shifted.exponents);
        assert_eq!((base.e, base.delta), (shifted.e, shifted.delta));
        let neg = derive(&spec(1, 2, 2, 2, -16, 3, 1)).unwrap();
        assert_eq!(neg.exponents, vec![51, 66]);
    }

    #[test]
    fn family_2_p2_odd_difference_uses_modular_half() {
        // q = 4, r = 16, h = 1, f = 2: f - h = 1 is odd.
        let s = spec(2, 2, 2, 2, 1, 2, 2);
        let d = derive(&s).unwrap();
        let half = d.decompositions[0].0 - 1;
        assert_eq!((2 * half).rem_euclid(255), 1);
        assert_eq!((2 * half).rem_euclid(15), 1);
        for &x in &d.exponents {
            assert_eq!(x % 15, 2);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(derive(&spec(1, 4, 1, 1, 1, 1, 1)), Err(ParamError::InvalidSpec(_))));
        assert!(matches!(derive(&spec(1, 2, 1, 1, 1, 1, 0)), Err(ParamError::InvalidSpec(_))));
        assert!(matches!(derive(&spec(1, 2, 40, 1, 1, 1, 1)), Err(ParamError::InvalidSpec(_))));
    }

    #[test]
    fn delta_agreement_flag() {
        let d = derive(&spec(2, 2, 2, 2, 2, 6, 1)).unwrap();
        assert_eq!(d.delta_formulas_agree, Some(true));
        // q = 3, r = 27, h = 4, f = 2: t = 1 gives delta = gcd(80, 728) = 8,
        // the t >= 2 formula gives gcd(80, 26 * 4) = 8 as well.
        let d = derive(&spec(2, 3, 1, 3, 4, 2, 1)).unwrap();
        assert_eq!((d.delta, d.n), (8, 91));
        // q = 7, h = 1, f = 3: d̃1 = 2*6 + 3 = 15, gcd(15, 48) = 3, gcd(15, 6) = 3.
        let d = derive(&spec(2, 7, 1, 1, 1, 3, 1)).unwrap();
        assert_eq!((d.delta, d.n), (3, 16));
    }
}
