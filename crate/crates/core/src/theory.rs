//! Closed-form weight distributions.
//!
//! The frequencies `μ_j` of the candidate weights `w_j` solve a Vandermonde
//! system built from the power moments `N_k`. The tabulated formulas give the
//! same numbers as explicit polynomials in `e` and `r` for the smallest `t`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::distribution::WeightDistribution;
use crate::params::{check_conditions, CodeSpec, DerivedParams, Family, ParamError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("inadmissible parameters: conditions {0:?} fail")]
    Inadmissible(Vec<String>),
    #[error("e = {e} does not divide r + 1 = {r1}")]
    BadE { e: u64, r1: u64 },
    #[error("{0} is not an integer")]
    NonIntegral(String),
    #[error("frequency mu_{j} = {value} is negative")]
    Negative { j: usize, value: String },
    #[error("moment system residual is nonzero")]
    Residual,
    #[error("no tabulated formula for family {family} with t = {t}")]
    NoTable { family: Family, t: u32 },
}

/// A partition of `k` into parts `≥ 2`, as `(part, multiplicity)` pairs with
/// increasing parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTerm {
    pub parts: Vec<(u32, u32)>,
}

impl PartitionTerm {
    pub fn total(&self) -> u32 {
        self.parts.iter().map(|&(j, c)| j * c).sum()
    }

    /// `Σ λ_j`.
    pub fn length(&self) -> u32 {
        self.parts.iter().map(|&(_, c)| c).sum()
    }
}

/// All partitions of `k` into parts `≥ 2`.
pub fn partitions(k: u32) -> Vec<PartitionTerm> {
    fn go(k: u32, min: u32, acc: &mut Vec<u32>, out: &mut Vec<PartitionTerm>) {
        if k == 0 {
            let mut parts: Vec<(u32, u32)> = Vec::new();
            for &p in acc.iter() {
                match parts.last_mut() {
                    Some((q, c)) if *q == p => *c += 1,
                    _ => parts.push((p, 1)),
                }
            }
            out.push(PartitionTerm { parts });
            return;
        }
        for p in min..=k {
            acc.push(p);
            go(k - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(k, 2, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// `N_k` for the unit circle of `GF(r²)` with spacing `e`.
pub fn n_k(r: u64, e: u64, k: u32) -> Result<BigUint, TheoryError> {
    if e == 0 || (r + 1) % e != 0 {
        return Err(TheoryError::BadE { e, r1: r + 1 });
    }
    match k {
        0 => return Ok(BigUint::one()),
        1 => return Ok(BigUint::zero()),
        _ => {}
    }
    let rr = rat(big(r));
    let inv_r = BigRational::one() / &rr;
    let b = |j: u32| -> BigRational {
        let lead = rat(big(r - 1).pow(j)) * &inv_r;
        let tail = BigRational::one() - &inv_r;
        if j % 2 == 0 {
            lead + tail
        } else {
            lead - tail
        }
    };
    let big_r = big((r + 1) / e);
    let mut sum = BigRational::zero();
    for part in partitions(k) {
        let len = part.length();
        let mut term = rat(binomial(big_r.clone(), big(len as u64)) * factorial(len));
        for &(j, c) in &part.parts {
            let base = b(j) / rat(factorial(j));
            term = term * num_traits::pow(base, c as usize) / rat(factorial(c));
        }
        sum += term;
    }
    let v = sum * rat(factorial(k) * big(e).pow(k));
    if !v.is_integer() {
        return Err(TheoryError::NonIntegral(format!("N_{k} = {v}")));
    }
    Ok(v.to_integer().to_biguint().expect("N_k is a count"))
}

/// `w_j = (q−1)(r² − (je−1)r)/(qδ)`, or an error if it is not a nonnegative
/// integer.
pub fn weight_at(q: u64, r: u64, e: u64, delta: u64, j: u64) -> Result<u64, TheoryError> {
    let num = (q as i128 - 1) * ((r as i128) * (r as i128) - (j as i128 * e as i128 - 1) * r as i128);
    let den = q as i128 * delta as i128;
    if num < 0 || num % den != 0 {
        return Err(TheoryError::NonIntegral(format!("w_{j} = {num}/{den}")));
    }
    Ok((num / den) as u64)
}

/// Candidate nonzero weights `w_0 > w_1 > … > w_(s−1)`.
pub fn theoretical_weights(derived: &DerivedParams) -> Result<Vec<u64>, TheoryError> {
    (0..derived.weight_count() as u64)
        .map(|j| weight_at(derived.q, derived.r, derived.e, derived.delta, j))
        .collect()
}

/// The power-moment system `Σ_j x_j^i μ_j = b_i`, `0 ≤ i < s`.
#[derive(Clone, Debug)]
pub struct MomentSystem {
    pub family: Family,
    pub t: u32,
    pub r: u64,
    pub e: u64,
    /// `x_j = jer − r − 1`.
    pub nodes: Vec<BigInt>,
    /// `b_i = r^(2t+1) N_i − (r²−1)^i` (family 1) or with `r^(2t)` (family 2).
    pub rhs: Vec<BigInt>,
}

impl MomentSystem {
    pub fn new(family: Family, r: u64, e: u64, t: u32) -> Result<Self, TheoryError> {
        let (s, scale) = match family {
            Family::One => (2 * t + 1, 2 * t + 1),
            Family::Two => (2 * t, 2 * t),
        };
        let rpow = big(r).pow(scale);
        let r2m1: BigInt = big(r) * big(r) - 1;
        let nodes = (0..s as u64)
            .map(|j| big(j) * big(e) * big(r) - big(r) - 1)
            .collect();
        let rhs = (0..s)
            .map(|i| Ok(&rpow * BigInt::from(n_k(r, e, i)?) - r2m1.pow(i)))
            .collect::<Result<_, TheoryError>>()?;
        Ok(MomentSystem { family, t, r, e, nodes, rhs })
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// `m_ij = x_j^i`.
    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        self.nodes[j].pow(i as u32)
    }

    /// Exact solve of `V μ = b` by the Björck–Pereyra recurrences
    /// (Newton divided differences run in reverse).
    pub fn solve(&self) -> Vec<BigRational> {
        let n = self.size();
        let x: Vec<BigRational> = self.nodes.iter().cloned().map(rat).collect();
        let mut z: Vec<BigRational> = self.rhs.iter().cloned().map(rat).collect();
        if n == 0 {
            return z;
        }
        let last = n - 1;
        for k in 0..last {
            for i in (k + 1..=last).rev() {
                let d = &x[k] * &z[i - 1];
                z[i] -= d;
            }
        }
        for k in (0..last).rev() {
            for i in k + 1..=last {
                z[i] = &z[i] / (&x[i] - &x[i - k - 1]);
            }
            for i in k..last {
                let d = z[i + 1].clone();
                z[i] -= d;
            }
        }
        z
    }

    /// Whether `Σ_j x_j^i μ_j = b_i` holds exactly for every row.
    pub fn residual_is_zero(&self, mu: &[BigRational]) -> bool {
        mu.len() == self.size()
            && (0..self.size()).all(|i| {
                let lhs: BigRational = (0..self.size()).map(|j| rat(self.entry(i, j)) * &mu[j]).sum();
                lhs == rat(self.rhs[i].clone())
            })
    }

    /// Solve, verify the residual, and require nonnegative integers.
    pub fn integer_solution(&self) -> Result<Vec<BigUint>, TheoryError> {
        let mu = self.solve();
        if !self.residual_is_zero(&mu) {
            return Err(TheoryError::Residual);
        }
        to_counts(&mu)
    }
}

fn to_counts(mu: &[BigRational]) -> Result<Vec<BigUint>, TheoryError> {
    mu.iter()
        .enumerate()
        .map(|(j, v)| {
            if !v.is_integer() {
                return Err(TheoryError::NonIntegral(format!("mu_{j} = {v}")));
            }
            let i = v.to_integer();
            if i.sign() == Sign::Minus {
                return Err(TheoryError::Negative { j, value: i.to_string() });
            }
            Ok(i.to_biguint().unwrap())
        })
        .collect()
}

fn require_admissible(spec: &CodeSpec) -> Result<(), TheoryError> {
    let report = check_conditions(spec)?;
    if report.pass {
        Ok(())
    } else {
        Err(TheoryError::Inadmissible(report.failures().into_iter().map(String::from).collect()))
    }
}

/// Pair weights with frequencies; zero frequencies go to the diagnostic list.
fn assemble(derived: &DerivedParams, counts: &[BigUint]) -> Result<WeightDistribution, TheoryError> {
    let weights = theoretical_weights(derived)?;
    let mut dist = WeightDistribution::new(derived.n, derived.dimension, derived.q);
    dist.add(0, BigUint::one());
    for (&w, c) in weights.iter().zip(counts) {
        if c.is_zero() {
            dist.zero_frequency_weights.push(w);
        } else {
            dist.add(w, c.clone());
        }
    }
    dist.zero_frequency_weights.sort_unstable();
    Ok(dist)
}

/// Weight distribution from the moment system.
pub fn solve_distribution(spec: &CodeSpec, derived: &DerivedParams) -> Result<WeightDistribution, TheoryError> {
    require_admissible(spec)?;
    let sys = MomentSystem::new(derived.family, derived.r, derived.e, derived.t())?;
    let counts = sys.integer_solution()?;
    assemble(derived, &counts)
}

/// Tabulated frequencies `μ_0, μ_1, …` as exact rationals in
/// `(e, r)`. Available for family 1 with `t = 1` and family 2 with `t ≤ 2`.
pub fn corollary_frequencies(family: Family, t: u32, e: u64, r: u64) -> Result<Vec<BigRational>, TheoryError> {
    let e = big(e);
    let r = big(r);
    let (e2, e3) = (&e * &e, &e * &e * &e);
    let (r2, r3) = (&r * &r, &r * &r * &r);
    let r4 = &r2 * &r2;
    let one = BigInt::one();
    let frac = |num: BigInt, den: BigInt| BigRational::new(num, den);
    match (family, t) {
        (Family::One, 1) => Ok(vec![
            frac(
                -&one + 3 * &e - 2 * &e2 - &r + 2 * &e * &r + &r2 - 3 * &e * &r2 + &r3 - 2 * &e * &r3
                    + 2 * &e2 * &r3,
                2 * &e2,
            ),
            frac(
                &one - 2 * &e + &r - &e * &r - &r2 + 2 * &e * &r2 - &r3 + &e * &r3,
                e2.clone(),
            ),
            frac(-&one + &e - &r + &r2 - &e * &r2 + &r3, 2 * &e2),
        ]),
        (Family::Two, 1) => Ok(vec![frac((&e - 1) * (&r2 - 1), e.clone()), frac(&r2 - 1, e.clone())]),
        (Family::Two, 2) => Ok(vec![
            frac(
                &one - 6 * &e + 11 * &e2 - 6 * &e3 + 2 * &r - 9 * &e * &r + 9 * &e2 * &r + 3 * &e * &r2
                    - 5 * &e2 * &r2
                    - 2 * &r3
                    + 9 * &e * &r3
                    - 9 * &e2 * &r3
                    - &r4
                    + 3 * &e * &r4
                    - 6 * &e2 * &r4
                    + 6 * &e3 * &r4,
                6 * &e3,
            ),
            frac(
                -&one + 5 * &e - 6 * &e2 - 2 * &r + 7 * &e * &r - 4 * &e2 * &r - 3 * &e * &r2
                    + 4 * &e2 * &r2
                    + 2 * &r3
                    - 7 * &e * &r3
                    + 4 * &e2 * &r3
                    + &r4
                    - 2 * &e * &r4
                    + 2 * &e2 * &r4,
                2 * &e3,
            ),
            frac(
                &one - 4 * &e + 3 * &e2 + 2 * &r - 5 * &e * &r + &e2 * &r + 3 * &e * &r2 - 3 * &e2 * &r2
                    - 2 * &r3
                    + 5 * &e * &r3
                    - &e2 * &r3
                    - &r4
                    + &e * &r4,
                2 * &e3,
            ),
            frac(
                -&one + 3 * &e - 2 * &e2 - 2 * &r + 3 * &e * &r - 3 * &e * &r2 + 2 * &e2 * &r2 + 2 * &r3
                    - 3 * &e * &r3
                    + &r4,
                6 * &e3,
            ),
        ]),
        (family, t) => Err(TheoryError::NoTable { family, t }),
    }
}

/// Weight distribution from the tabulated frequency formulas.
pub fn corollary_tables(spec: &CodeSpec, derived: &DerivedParams) -> Result<WeightDistribution, TheoryError> {
    let mu = corollary_frequencies(derived.family, derived.t(), derived.e, derived.r)?;
    require_admissible(spec)?;
    let counts = to_counts(&mu)?;
    assemble(derived, &counts)
}

/// Griesmer sum `Σ_{i<k} ceil(d / q^i)`: the least length of any `[·, k, d]_q`
/// linear code.
pub fn griesmer_bound(k: u32, d: u64, q: u64) -> u64 {
    let mut sum = 0u64;
    let mut qi = 1u64;
    for _ in 0..k {
        sum += d.div_ceil(qi);
        qi = qi.saturating_mul(q);
    }
    sum
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GriesmerReport {
    pub n: u64,
    pub k: u32,
    pub d: u64,
    pub bound: u64,
    /// `n ≥ bound`: necessary for the code to exist at all.
    pub consistent: bool,
    /// `n == bound`.
    pub meets: bool,
}

pub fn griesmer_check(n: u64, k: u32, d: u64, q: u64) -> GriesmerReport {
    let bound = griesmer_bound(k, d, q);
    GriesmerReport { n, k, d, bound, consistent: n >= bound, meets: n == bound }
}

/// `μ_j` values as `u64` when small, for display.
pub fn small_counts(mu: &[BigRational]) -> Option<Vec<u64>> {
    mu.iter()
        .map(|v| if v.is_integer() && !v.is_negative() { v.to_integer().to_u64() } else { None })
        .collect()
}
