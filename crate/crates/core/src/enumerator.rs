//! Codeword generation and exhaustive weight distributions.
//!
//! Both the codeword map and the root-count vector `(F(z))_{z ∈ U}` are
//! GF(p)-linear in the coefficient tuple. The enumeration engine walks all
//! `p^D` tuples (`D = l·k`) in a p-ary Gray order, so each step adds one
//! precomputed basis image to a packed accumulator and counts nonzero lanes.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{gcd_signed, reduce};
use crate::distribution::WeightDistribution;
use crate::fields::{Elem, FieldError, FieldTower, Subfield, TABLE_FIELD_SIZE};
use crate::params::{check_conditions, CodeSpec, DerivedParams, Family, ParamError};
use crate::theory::weight_at;

/// Tuple spaces at or above this size need `long_run`.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// High digits fixed per parallel chunk are chosen so that at least this many
/// chunks exist (when the space is large enough).
const MIN_CHUNKS: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("{tuples} tuples exceed the enumeration budget of {budget}; use the long-run override")]
    BudgetExceeded { tuples: String, budget: u64 },
    #[error("field of size {0} is too large for enumeration tables")]
    FieldTooLarge(u64),
    #[error("tower GF({tower}) does not match spec GF({spec})")]
    TowerMismatch { tower: u64, spec: u64 },
    #[error("malformed coefficient tuple: {0}")]
    BadTuple(String),
    #[error("inadmissible parameters: conditions {0:?} fail")]
    Inadmissible(Vec<String>),
    #[error("root count N = {n} is not admissible (allowed: {allowed:?})")]
    InadmissibleRootCount { n: u64, allowed: Vec<u64> },
    #[error("fast weight {fast} != direct weight {direct} for tuple {tuple}")]
    FastMismatch { tuple: String, fast: u64, direct: u64 },
    #[error("{0} nonzero tuples have F identically zero on U")]
    DegenerateForm(u64),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Run-time knobs for the exhaustive paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub long_run: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    /// Random tuples cross-checked (fast vs direct weight) by the accelerated path.
    pub samples: usize,
    pub seed: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { long_run: false, workers: None, samples: 256, seed: 0x5eed }
    }
}

/// Family 1: `[a0, a1, …, at]` with `a0 ∈ GF(r)`; family 2: `[a1, …, at]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientTuple {
    pub components: Vec<Elem>,
}

impl CoefficientTuple {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|a| a.is_zero())
    }
}

impl std::fmt::Display for CoefficientTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|a| a.index().to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Which polynomial on `U` the root count uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootFormKind {
    /// Exponents `d_j mod (r+1)` and `−d_j mod (r+1)`.
    Unit,
    /// Exponents `(d_j − d_ref)/(r−1)` and `(r·d_j − d_ref)/(r−1)` mod `r+1`.
    Omega,
}

/// One monomial `c·z^exponent` of `F`, where `c` is component `component`
/// of the tuple or its conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootTerm {
    pub component: usize,
    pub conjugate: bool,
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootForm {
    pub kind: RootFormKind,
    pub terms: Vec<RootTerm>,
}

impl RootForm {
    pub fn for_params(spec: &CodeSpec, derived: &DerivedParams) -> RootForm {
        let r = derived.r;
        let idx = (r - 1) / (derived.q - 1);
        let big_delta = derived.decompositions[0].1;
        let kind = if spec.p != 2 && gcd_signed(big_delta, idx) == 1 {
            RootFormKind::Omega
        } else {
            RootFormKind::Unit
        };
        let r1 = r + 1;
        let d_ref = derived.exponents[0] as i128;
        let rm1 = (r - 1) as i128;
        let mut terms = Vec::new();
        for (c, &d) in derived.exponents.iter().enumerate() {
            let d = d as i128;
            let (plain, conj) = match kind {
                RootFormKind::Unit => (reduce(d, r1), reduce(-d, r1)),
                RootFormKind::Omega => {
                    ((reduce((d - d_ref) / rm1, r1)), reduce((r as i128 * d - d_ref) / rm1, r1))
                }
            };
            terms.push(RootTerm { component: c, conjugate: false, exponent: plain });
            let single = derived.family == Family::One && c == 0;
            if !single {
                terms.push(RootTerm { component: c, conjugate: true, exponent: conj });
            }
        }
        RootForm { kind, terms }
    }
}

/// Everything precomputed for one spec over one tower.
pub struct CodeContext<'a> {
    pub spec: CodeSpec,
    pub derived: DerivedParams,
    tower: &'a FieldTower,
    /// `pw[i*c + j] = γ^(d_j i)`, with `λ` folded into the `a0` column so that
    /// every symbol is a single `Tr_{r²/q}`.
    pw: Vec<Elem>,
    /// `Tr_{r²/q}` of every element, by encoding.
    tr2: Vec<u32>,
    form: RootForm,
    unit: Vec<Elem>,
    /// `upow[z*terms + t] = z^(exponent_t)`.
    upow: Vec<Elem>,
    /// Weight for each root count `N ∈ [0, r+1]`, if admissible.
    weight_by_n: Vec<Option<u64>>,
    /// `(component, basis element)`, one per GF(p) digit of the tuple.
    basis: Vec<(usize, Elem)>,
    /// GF(q) element encoding → its `l` coordinates over GF(p).
    q_coords: HashMap<u32, Vec<u32>>,
}

impl<'a> CodeContext<'a> {
    pub fn new(spec: &CodeSpec, derived: &DerivedParams, tower: &'a FieldTower) -> Result<Self, EnumError> {
        if (tower.p(), tower.l(), tower.m()) != (spec.p, spec.l, spec.m) {
            return Err(EnumError::TowerMismatch { tower: tower.size(), spec: derived.r * derived.r });
        }
        if tower.size() > TABLE_FIELD_SIZE {
            return Err(EnumError::FieldTooLarge(tower.size()));
        }
        let c = derived.exponents.len();
        let n = derived.n as usize;
        let has_a0 = derived.family == Family::One;

        // λ with Tr_{r²/r}(λ) = 1 turns Tr_{r/q}(y) into Tr_{r²/q}(λy) on GF(r).
        let lambda = (1..tower.size())
            .map(|i| Elem(i as u32))
            .find_map(|x| {
                let t = tower.trace_r2_r(x);
                tower.inv(t).map(|ti| tower.mul(x, ti))
            })
            .expect("trace onto GF(r) is surjective");

        let gens: Vec<Elem> = derived.exponents.iter().map(|&d| tower.gamma_pow(d)).collect();
        let mut pw = Vec::with_capacity(n * c);
        let mut cur: Vec<Elem> = vec![tower.one(); c];
        cur[0] = if has_a0 { lambda } else { tower.one() };
        for _ in 0..n {
            pw.extend_from_slice(&cur);
            for (x, g) in cur.iter_mut().zip(&gens) {
                *x = tower.mul(*x, *g);
            }
        }

        // Tr is additive: tr[x] = tr[x − p^k] + tr[p^k] for the lowest nonzero digit k.
        let size = tower.size() as usize;
        let p = tower.p() as usize;
        let mut tr2 = vec![0u32; size];
        let unit_traces: Vec<Elem> = tower.r2_basis().iter().map(|&b| tower.trace_r2_q(b)).collect();
        for x in 1..size {
            let (mut k, mut place, mut v) = (0usize, 1usize, x);
            while v % p == 0 {
                v /= p;
                place *= p;
                k += 1;
            }
            tr2[x] = tower.add(Elem(tr2[x - place]), unit_traces[k]).0;
        }

        let form = RootForm::for_params(spec, derived);
        let unit = tower.unit_circle().elements;
        let mut upow = Vec::with_capacity(unit.len() * form.terms.len());
        for &z in &unit {
            for term in &form.terms {
                upow.push(tower.pow(z, term.exponent));
            }
        }

        let r = derived.r;
        let s = derived.weight_count() as u64;
        let weight_by_n = (0..=r + 1)
            .map(|nn| {
                if nn == r + 1 {
                    Some(0)
                } else if nn % derived.e == 0 && nn / derived.e < s {
                    weight_at(derived.q, r, derived.e, derived.delta, nn / derived.e).ok()
                } else {
                    None
                }
            })
            .collect();

        let mut basis = Vec::new();
        for comp in 0..c {
            let elems = if has_a0 && comp == 0 { tower.r_basis() } else { tower.r2_basis() };
            basis.extend(elems.into_iter().map(|b| (comp, b)));
        }

        let alpha = tower.gamma_pow((tower.size() - 1) / (derived.q - 1));
        let l = spec.l as usize;
        let q_basis: Vec<Elem> = (0..l).map(|i| tower.pow(alpha, i as u64)).collect();
        let mut q_coords = HashMap::with_capacity(derived.q as usize);
        for idx in 0..derived.q {
            let mut digits = Vec::with_capacity(l);
            let mut v = idx;
            let mut x = tower.zero();
            for b in &q_basis {
                let d = (v % spec.p) as u32;
                v /= spec.p;
                digits.push(d);
                x = tower.add(x, tower.scale(*b, d as u64));
            }
            q_coords.insert(x.0, digits);
        }

        Ok(CodeContext {
            spec: *spec,
            derived: derived.clone(),
            tower,
            pw,
            tr2,
            form,
            unit,
            upow,
            weight_by_n,
            basis,
            q_coords,
        })
    }

    pub fn tower(&self) -> &FieldTower {
        self.tower
    }

    pub fn form(&self) -> &RootForm {
        &self.form
    }

    /// Number of GF(p) digits in a tuple (`l·k`).
    pub fn digit_count(&self) -> usize {
        self.basis.len()
    }

    /// `q^k`, if it fits.
    pub fn tuple_count(&self) -> Option<u64> {
        self.spec.p.checked_pow(self.basis.len() as u32)
    }

    fn components(&self) -> usize {
        self.derived.exponents.len()
    }

    pub fn zero_tuple(&self) -> CoefficientTuple {
        CoefficientTuple { components: vec![Elem::ZERO; self.components()] }
    }

    pub fn check_tuple(&self, a: &CoefficientTuple) -> Result<(), EnumError> {
        if a.components.len() != self.components() {
            return Err(EnumError::BadTuple(format!(
                "expected {} components, got {}",
                self.components(),
                a.components.len()
            )));
        }
        if a.components.iter().any(|x| x.index() as u64 >= self.tower.size()) {
            return Err(EnumError::BadTuple("component outside GF(r^2)".into()));
        }
        if self.derived.family == Family::One && !self.tower.contains(Subfield::R, a.components[0]) {
            return Err(EnumError::BadTuple("a0 is not in GF(r)".into()));
        }
        Ok(())
    }

    /// Tuple `Σ digits[i]·basis[i]`.
    pub fn tuple_from_digits(&self, digits: &[u32]) -> CoefficientTuple {
        let mut a = self.zero_tuple();
        for (&d, &(comp, b)) in digits.iter().zip(&self.basis) {
            let x = &mut a.components[comp];
            *x = self.tower.add(*x, self.tower.scale(b, d as u64));
        }
        a
    }

    pub fn random_tuple<R: Rng + ?Sized>(&self, rng: &mut R) -> CoefficientTuple {
        let digits: Vec<u32> = (0..self.basis.len()).map(|_| rng.gen_range(0..self.spec.p as u32)).collect();
        self.tuple_from_digits(&digits)
    }

    /// `λ·a` for `λ ∈ GF(q)`.
    pub fn scale_tuple(&self, a: &CoefficientTuple, lambda: Elem) -> CoefficientTuple {
        CoefficientTuple { components: a.components.iter().map(|&x| self.tower.mul(x, lambda)).collect() }
    }

    /// Symbol `i` of the codeword.
    pub fn symbol(&self, a: &CoefficientTuple, i: usize) -> Elem {
        let c = self.components();
        let row = &self.pw[i * c..(i + 1) * c];
        let mut acc = Elem::ZERO;
        for (&x, &g) in a.components.iter().zip(row) {
            acc = self.tower.add(acc, self.tower.mul(x, g));
        }
        Elem(self.tr2[acc.index() as usize])
    }

    pub fn codeword(&self, a: &CoefficientTuple) -> Vec<Elem> {
        (0..self.derived.n as usize).map(|i| self.symbol(a, i)).collect()
    }

    /// Hamming weight by direct symbol count.
    pub fn weight(&self, a: &CoefficientTuple) -> u64 {
        (0..self.derived.n as usize).filter(|&i| !self.symbol(a, i).is_zero()).count() as u64
    }

    /// `F(z)` for every `z ∈ U`.
    pub fn root_form_values(&self, a: &CoefficientTuple) -> Vec<Elem> {
        let coef: Vec<Elem> = self
            .form
            .terms
            .iter()
            .map(|t| {
                let x = a.components[t.component];
                if t.conjugate {
                    self.tower.conj(x)
                } else {
                    x
                }
            })
            .collect();
        let nt = coef.len();
        (0..self.unit.len())
            .map(|zi| {
                let row = &self.upow[zi * nt..(zi + 1) * nt];
                coef.iter().zip(row).fold(Elem::ZERO, |acc, (&c, &u)| self.tower.add(acc, self.tower.mul(c, u)))
            })
            .collect()
    }

    /// `N = #{z ∈ U : F(z) = 0}`.
    pub fn root_count_n(&self, a: &CoefficientTuple) -> u64 {
        self.root_form_values(a).iter().filter(|x| x.is_zero()).count() as u64
    }

    pub fn allowed_root_counts(&self) -> Vec<u64> {
        (0..self.weight_by_n.len() as u64).filter(|&nn| self.weight_by_n[nn as usize].is_some()).collect()
    }

    /// Weight `(q−1)(r² − (N−1)r)/(qδ)` for an admissible root count.
    pub fn weight_for_root_count(&self, nn: u64, zero_tuple: bool) -> Result<u64, EnumError> {
        let r1 = self.derived.r + 1;
        match self.weight_by_n.get(nn as usize).copied().flatten() {
            Some(w) if (nn == r1) == zero_tuple => Ok(w),
            _ => Err(EnumError::InadmissibleRootCount { n: nn, allowed: self.allowed_root_counts() }),
        }
    }

    pub fn fast_weight(&self, a: &CoefficientTuple) -> Result<u64, EnumError> {
        self.weight_for_root_count(self.root_count_n(a), a.is_zero())
    }

    fn budget(&self, opts: &EnumOptions) -> Result<(), EnumError> {
        match self.tuple_count() {
            Some(n) if n < DEFAULT_BUDGET || opts.long_run => Ok(()),
            Some(n) => Err(EnumError::BudgetExceeded { tuples: n.to_string(), budget: DEFAULT_BUDGET }),
            None => Err(EnumError::BudgetExceeded {
                tuples: format!("{}^{}", self.spec.p, self.basis.len()),
                budget: DEFAULT_BUDGET,
            }),
        }
    }

    /// Packed images of the basis tuples under a lane-valued linear map,
    /// then a Gray-code histogram of nonzero-lane counts.
    fn lane_histogram(&self, lane_values: &dyn Fn(&CoefficientTuple) -> Vec<Vec<u32>>, lanes: usize, width: usize, opts: &EnumOptions) -> Result<Vec<u64>, EnumError> {
        let images: Vec<Vec<Vec<u32>>> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let mut digits = vec![0u32; self.basis.len()];
                digits[i] = 1;
                lane_values(&self.tuple_from_digits(&digits))
            })
            .collect();
        let p = self.spec.p;
        if p == 2 {
            let space = BitLanes::new(lanes, width);
            let basis: Vec<Vec<u64>> = images.iter().map(|img| space.pack(img)).collect();
            gray_histogram(&space, &basis, 2, lanes + 1, opts.workers)
        } else {
            let space = DigitLanes { p: p as u32, lanes, width };
            let basis: Vec<Vec<u32>> = images.iter().map(|img| img.concat()).collect();
            gray_histogram(&space, &basis, p, lanes + 1, opts.workers)
        }
    }

    /// Weight distribution over all `q^k` tuples by direct codeword weights.
    pub fn brute_force_distribution(&self, opts: &EnumOptions) -> Result<WeightDistribution, EnumError> {
        self.budget(opts)?;
        let n = self.derived.n as usize;
        let to_lanes = |a: &CoefficientTuple| -> Vec<Vec<u32>> {
            self.codeword(a).iter().map(|s| self.q_coords[&s.index()].clone()).collect()
        };
        let hist = self.lane_histogram(&to_lanes, n, self.spec.l as usize, opts)?;
        Ok(WeightDistribution::from_histogram(self.derived.n, self.derived.dimension, self.derived.q, &hist))
    }

    /// Weight distribution from root counts on `U`, after a sampled
    /// fast-vs-direct cross-check.
    pub fn accelerated_distribution(&self, opts: &EnumOptions) -> Result<WeightDistribution, EnumError> {
        self.budget(opts)?;
        let report = check_conditions(&self.spec)?;
        if !report.pass {
            return Err(EnumError::Inadmissible(report.failures().into_iter().map(String::from).collect()));
        }
        self.cross_check(opts.samples, opts.seed)?;

        let lanes = self.unit.len();
        let degree = self.tower.degree();
        let to_lanes = |a: &CoefficientTuple| -> Vec<Vec<u32>> {
            self.root_form_values(a).iter().map(|&x| self.tower.coeffs(x)).collect()
        };
        let hist = self.lane_histogram(&to_lanes, lanes, degree, opts)?;

        // hist[k] counts tuples with k nonzero values of F, so N = |U| − k.
        let r1 = self.derived.r + 1;
        let mut dist = WeightDistribution::new(self.derived.n, self.derived.dimension, self.derived.q);
        for (nonzero, &count) in hist.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let nn = lanes as u64 - nonzero as u64;
            if nn == r1 {
                if count != 1 {
                    return Err(EnumError::DegenerateForm(count - 1));
                }
                dist.add(0, 1u32.into());
                continue;
            }
            let w = self.weight_for_root_count(nn, false)?;
            dist.add(w, count.into());
        }
        Ok(dist)
    }

    /// Compare fast and direct weights on `samples` seeded random tuples.
    pub fn cross_check(&self, samples: usize, seed: u64) -> Result<(), EnumError> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = self.random_tuple(&mut rng);
            let direct = self.weight(&a);
            let fast = self.fast_weight(&a)?;
            if fast != direct {
                return Err(EnumError::FastMismatch { tuple: a.to_string(), fast, direct });
            }
        }
        Ok(())
    }
}

pub fn brute_force_distribution(
    spec: &CodeSpec,
    derived: &DerivedParams,
    tower: &FieldTower,
    opts: &EnumOptions,
) -> Result<WeightDistribution, EnumError> {
    CodeContext::new(spec, derived, tower)?.brute_force_distribution(opts)
}

pub fn accelerated_distribution(
    spec: &CodeSpec,
    derived: &DerivedParams,
    tower: &FieldTower,
    opts: &EnumOptions,
) -> Result<WeightDistribution, EnumError> {
    CodeContext::new(spec, derived, tower)?.accelerated_distribution(opts)
}

/// GF(p)-vectors made of equal-width lanes, with lane-wise zero testing.
trait Lanes: Sync {
    type V: Clone + Send + Sync;
    fn zero(&self) -> Self::V;
    fn add(&self, acc: &mut Self::V, b: &Self::V);
    fn nonzero_lanes(&self, v: &Self::V) -> usize;
}

/// p = 2: each lane is a power-of-two bit field inside u64 words.
struct BitLanes {
    words: usize,
    lane_bits: u32,
    per_word: usize,
    low: u64,
}

impl BitLanes {
    fn new(lanes: usize, width: usize) -> Self {
        let lane_bits = (width as u32).next_power_of_two();
        let per_word = (64 / lane_bits) as usize;
        let mut low = 0u64;
        for i in 0..per_word {
            low |= 1 << (i as u32 * lane_bits);
        }
        BitLanes { words: lanes.div_ceil(per_word), lane_bits, per_word, low }
    }

    fn pack(&self, lanes: &[Vec<u32>]) -> Vec<u64> {
        let mut out = vec![0u64; self.words];
        for (i, digits) in lanes.iter().enumerate() {
            let v = digits.iter().enumerate().fold(0u64, |acc, (b, &d)| acc | ((d as u64) << b));
            out[i / self.per_word] |= v << ((i % self.per_word) as u32 * self.lane_bits);
        }
        out
    }
}

impl Lanes for BitLanes {
    type V = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.words]
    }
    #[inline]
    fn add(&self, acc: &mut Vec<u64>, b: &Vec<u64>) {
        for (x, y) in acc.iter_mut().zip(b) {
            *x ^= *y;
        }
    }
    #[inline]
    fn nonzero_lanes(&self, v: &Vec<u64>) -> usize {
        let mut count = 0;
        for &w in v {
            let mut y = w;
            let mut s = 1;
            while s < self.lane_bits {
                y |= y >> s;
                s <<= 1;
            }
            count += (y & self.low).count_ones() as usize;
        }
        count
    }
}

/// Odd p: one u32 per digit, `width` digits per lane.
struct DigitLanes {
    p: u32,
    lanes: usize,
    width: usize,
}

impl Lanes for DigitLanes {
    type V = Vec<u32>;
    fn zero(&self) -> Vec<u32> {
        vec![0; self.lanes * self.width]
    }
    #[inline]
    fn add(&self, acc: &mut Vec<u32>, b: &Vec<u32>) {
        let p = self.p;
        for (x, &y) in acc.iter_mut().zip(b) {
            let s = *x + y;
            *x = if s >= p { s - p } else { s };
        }
    }
    #[inline]
    fn nonzero_lanes(&self, v: &Vec<u32>) -> usize {
        v.chunks_exact(self.width).filter(|c| c.iter().any(|&d| d != 0)).count()
    }
}

/// Histogram of `nonzero_lanes` over all `p^D` combinations of `basis`.
fn gray_histogram<L: Lanes>(
    space: &L,
    basis: &[L::V],
    p: u64,
    hist_len: usize,
    workers: Option<usize>,
) -> Result<Vec<u64>, EnumError> {
    let d = basis.len();
    let mut high = 0usize;
    while high < d && p.pow(high as u32) < MIN_CHUNKS {
        high += 1;
    }
    let low = d - high;
    let chunks = p.pow(high as u32);
    let inner = p.pow(low as u32);

    let run_chunk = |chunk: u64, hist: &mut Vec<u64>| {
        let mut acc = space.zero();
        let mut c = chunk;
        for b in &basis[low..] {
            for _ in 0..c % p {
                space.add(&mut acc, b);
            }
            c /= p;
        }
        hist[space.nonzero_lanes(&acc)] += 1;
        for step in 1..inner {
            let idx = if p == 2 {
                step.trailing_zeros() as usize
            } else {
                let (mut s, mut v) = (step, 0usize);
                while s % p == 0 {
                    s /= p;
                    v += 1;
                }
                v
            };
            space.add(&mut acc, &basis[idx]);
            hist[space.nonzero_lanes(&acc)] += 1;
        }
    };

    let run = || {
        (0..chunks)
            .into_par_iter()
            .fold(
                || vec![0u64; hist_len],
                |mut hist, chunk| {
                    run_chunk(chunk, &mut hist);
                    hist
                },
            )
            .reduce(
                || vec![0u64; hist_len],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    };
    match workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| EnumError::Pool(e.to_string()))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}
