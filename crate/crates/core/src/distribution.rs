//! Weight distributions, their enumerator strings, and the JSON report shared
//! by every computation method.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{CodeSpec, DerivedParams, Family};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed enumerator term {0:?}")]
    BadTerm(String),
    #[error("weight {0} appears twice")]
    Duplicate(u64),
    #[error("bad frequency {0:?}")]
    BadFrequency(String),
    #[error("distribution violates an invariant: {0}")]
    Invariant(String),
}

/// Exact map weight → number of codewords, always including weight 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub n: u64,
    pub k: u32,
    pub q: u64,
    freqs: BTreeMap<u64, BigUint>,
    /// Candidate weights whose frequency came out as zero. Diagnostic only;
    /// they never appear in `freqs` or the enumerator string.
    pub zero_frequency_weights: Vec<u64>,
}

/// First weight at which two distributions disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub weight: u64,
    pub left: BigUint,
    pub right: BigUint,
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weight {}: {} vs {}", self.weight, self.left, self.right)
    }
}

impl WeightDistribution {
    /// Empty distribution (no codewords counted yet).
    pub fn new(n: u64, k: u32, q: u64) -> Self {
        WeightDistribution { n, k, q, freqs: BTreeMap::new(), zero_frequency_weights: Vec::new() }
    }

    /// From a histogram indexed by weight.
    pub fn from_histogram(n: u64, k: u32, q: u64, hist: &[u64]) -> Self {
        let mut d = Self::new(n, k, q);
        for (w, &c) in hist.iter().enumerate() {
            d.add(w as u64, BigUint::from(c));
        }
        d
    }

    pub fn add(&mut self, weight: u64, freq: BigUint) {
        if freq.is_zero() {
            return;
        }
        *self.freqs.entry(weight).or_default() += freq;
    }

    pub fn frequency(&self, weight: u64) -> BigUint {
        self.freqs.get(&weight).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.freqs.iter().map(|(&w, f)| (w, f))
    }

    /// Weights with nonzero frequency, excluding 0.
    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.freqs.keys().copied().filter(|&w| w != 0).collect()
    }

    pub fn total(&self) -> BigUint {
        self.freqs.values().sum()
    }

    /// Minimum distance, or `None` for the zero code.
    pub fn min_distance(&self) -> Option<u64> {
        self.freqs.keys().copied().find(|&w| w != 0)
    }

    /// `Σ w·A_w`.
    pub fn first_moment(&self) -> BigUint {
        self.freqs.iter().map(|(&w, f)| f * w).sum()
    }

    /// Same support and frequencies (diagnostics ignored).
    pub fn same_as(&self, other: &Self) -> bool {
        self.n == other.n && self.freqs == other.freqs
    }

    pub fn first_difference(&self, other: &Self) -> Option<Difference> {
        let weights: std::collections::BTreeSet<u64> =
            self.freqs.keys().chain(other.freqs.keys()).copied().collect();
        weights.into_iter().find_map(|w| {
            let (a, b) = (self.frequency(w), other.frequency(w));
            (a != b).then_some(Difference { weight: w, left: a, right: b })
        })
    }

    /// Total `q^k`, `A_0 = 1`, and all weights within `[0, n]`.
    pub fn check_invariants(&self) -> Result<(), ParseError> {
        let expected = BigUint::from(self.q).pow(self.k);
        if self.total() != expected {
            return Err(ParseError::Invariant(format!("total {} != q^k = {}", self.total(), expected)));
        }
        if !self.frequency(0).is_one() {
            return Err(ParseError::Invariant(format!("A_0 = {}", self.frequency(0))));
        }
        if let Some(&w) = self.freqs.keys().next_back() {
            if w > self.n {
                return Err(ParseError::Invariant(format!("weight {w} exceeds n = {}", self.n)));
            }
        }
        Ok(())
    }

    /// `1+2040Y^60+255Y^64+1800Y^68`, ascending in weight.
    pub fn enumerator(&self) -> String {
        self.render(false)
    }

    /// `1+2040Y^{60}+255Y^{64}+1800Y^{68}`.
    pub fn enumerator_braced(&self) -> String {
        self.render(true)
    }

    fn render(&self, braced: bool) -> String {
        let mut out = String::new();
        for (&w, f) in &self.freqs {
            if !out.is_empty() {
                out.push('+');
            }
            if w == 0 {
                write!(out, "{f}").unwrap();
            } else if braced {
                write!(out, "{f}Y^{{{w}}}").unwrap();
            } else {
                write!(out, "{f}Y^{w}").unwrap();
            }
        }
        out
    }

    /// Build from an enumerator string such as `1+2040Y^{60}+255Y^64`.
    pub fn from_enumerator(n: u64, k: u32, q: u64, s: &str) -> Result<Self, ParseError> {
        let mut d = Self::new(n, k, q);
        for (w, f) in parse_enumerator(s)? {
            d.add(w, f);
        }
        Ok(d)
    }

    /// Aligned two-column text table.
    pub fn to_table(&self) -> String {
        let rows: Vec<(String, String)> = self.iter().map(|(w, f)| (w.to_string(), f.to_string())).collect();
        let ww = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max("weight".len());
        let fw = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max("frequency".len());
        let mut out = format!("{:>ww$}  {:>fw$}\n", "weight", "frequency");
        for (w, f) in rows {
            writeln!(out, "{w:>ww$}  {f:>fw$}").unwrap();
        }
        out
    }
}

/// Parse `1+A1Y+A2Y^2+…` into `(weight, frequency)` pairs. Accepts `Y^{w}`,
/// `Y^w`, bare `Y`, and omitted coefficients; whitespace is ignored.
pub fn parse_enumerator(s: &str) -> Result<BTreeMap<u64, BigUint>, ParseError> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = BTreeMap::new();
    for term in cleaned.split('+') {
        let bad = || ParseError::BadTerm(term.to_string());
        let (coef, weight) = match term.split_once('Y') {
            None => (term, 0),
            Some((c, rest)) => {
                let w = if rest.is_empty() {
                    1
                } else {
                    let e = rest.strip_prefix('^').ok_or_else(bad)?;
                    let e = e.strip_prefix('{').and_then(|e| e.strip_suffix('}')).unwrap_or(e);
                    e.parse::<u64>().map_err(|_| bad())?
                };
                (c, w)
            }
        };
        let freq = if coef.is_empty() {
            if weight == 0 {
                return Err(bad());
            }
            BigUint::one()
        } else {
            coef.parse::<BigUint>().map_err(|_| bad())?
        };
        if out.insert(weight, freq).is_some() {
            return Err(ParseError::Duplicate(weight));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Vandermonde,
    CorollaryTable,
    BruteForce,
    Accelerated,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Vandermonde => "vandermonde",
            Method::CorollaryTable => "corollary-table",
            Method::BruteForce => "brute-force",
            Method::Accelerated => "accelerated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub w: u64,
    /// Decimal string; frequencies can exceed 64 bits.
    pub freq: String,
}

/// JSON form of a computed distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionReport {
    pub family: Family,
    pub p: u64,
    pub l: u32,
    pub m: u32,
    pub h: i64,
    pub f: i64,
    pub t: u32,
    pub n: u64,
    pub k: u32,
    pub d: Option<u64>,
    pub delta: u64,
    pub e: u64,
    pub method: Method,
    pub weights: Vec<WeightEntry>,
    pub enumerator: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zero_frequency_weights: Vec<u64>,
}

impl DistributionReport {
    pub fn new(spec: &CodeSpec, derived: &DerivedParams, method: Method, dist: &WeightDistribution) -> Self {
        DistributionReport {
            family: spec.family,
            p: spec.p,
            l: spec.l,
            m: spec.m,
            h: spec.h,
            f: spec.f,
            t: spec.t,
            n: derived.n,
            k: derived.dimension,
            d: dist.min_distance(),
            delta: derived.delta,
            e: derived.e,
            method,
            weights: dist.iter().map(|(w, f)| WeightEntry { w, freq: f.to_string() }).collect(),
            enumerator: dist.enumerator(),
            zero_frequency_weights: dist.zero_frequency_weights.clone(),
        }
    }

    pub fn spec(&self) -> CodeSpec {
        CodeSpec::new(self.family, self.p, self.l, self.m, self.h, self.f, self.t)
    }

    pub fn distribution(&self) -> Result<WeightDistribution, ParseError> {
        let mut d = WeightDistribution::new(self.n, self.k, self.spec().q());
        for e in &self.weights {
            let f = e.freq.parse::<BigUint>().map_err(|_| ParseError::BadFrequency(e.freq.clone()))?;
            if !d.frequency(e.w).is_zero() {
                return Err(ParseError::Duplicate(e.w));
            }
            d.add(e.w, f);
        }
        d.zero_frequency_weights = self.zero_frequency_weights.clone();
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "family {} over GF({}): p={} l={} m={} h={} f={} t={}",
            self.family,
            self.spec().q(),
            self.p,
            self.l,
            self.m,
            self.h,
            self.f,
            self.t
        )
        .unwrap();
        let d = self.d.map_or("-".to_string(), |d| d.to_string());
        writeln!(out, "[n, k, d] = [{}, {}, {}]  delta={} e={}  method={}", self.n, self.k, d, self.delta, self.e, self.method)
            .unwrap();
        if let Ok(dist) = self.distribution() {
            out.push_str(&dist.to_table());
        }
        if !self.zero_frequency_weights.is_empty() {
            writeln!(out, "zero-frequency weights: {:?}", self.zero_frequency_weights).unwrap();
        }
        match self.distribution() {
            Ok(d) => writeln!(out, "enumerator: {}", d.enumerator_braced()).unwrap(),
            Err(_) => writeln!(out, "enumerator: {}", self.enumerator).unwrap(),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive;

    #[test]
    fn parse_braced_and_bare_exponents() {
        let a = parse_enumerator("1+2040Y^{60}+255Y^{64}+1800Y^{68}").unwrap();
        let b = parse_enumerator("1 + 2040Y^60 + 255Y^64 + 1800Y^68").unwrap();
        assert_eq!(a, b);
        assert_eq!(a[&60], BigUint::from(2040u32));
        let c = parse_enumerator("1+Y+3Y^2").unwrap();
        assert_eq!(c[&1], BigUint::one());
        assert_eq!(c[&2], BigUint::from(3u32));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_enumerator("1+2X^3"), Err(ParseError::BadTerm(_))));
        assert!(matches!(parse_enumerator("1+2Y^3+4Y^{3}"), Err(ParseError::Duplicate(3))));
        assert!(matches!(parse_enumerator("1+2Y^"), Err(ParseError::BadTerm(_))));
        assert!(matches!(parse_enumerator(""), Err(ParseError::BadTerm(_))));
    }

    #[test]
    fn format_and_invariants() {
        let d = WeightDistribution::from_enumerator(85, 6, 4, "1+2040Y^{60}+255Y^{64}+1800Y^{68}").unwrap();
        assert_eq!(d.enumerator(), "1+2040Y^60+255Y^64+1800Y^68");
        assert_eq!(d.enumerator_braced(), "1+2040Y^{60}+255Y^{64}+1800Y^{68}");
        assert_eq!(d.min_distance(), Some(60));
        d.check_invariants().unwrap();
        // Σ w A_w = n (q-1) q^(k-1)
        assert_eq!(d.first_moment(), BigUint::from(85u32 * 3 * 1024));
        let mut bad = d.clone();
        bad.add(64, BigUint::one());
        assert!(bad.check_invariants().is_err());
        let diff = d.first_difference(&bad).unwrap();
        assert_eq!(diff.weight, 64);
    }

    #[test]
    fn histogram_drops_zero_entries() {
        let d = WeightDistribution::from_histogram(3, 1, 2, &[1, 0, 0, 1]);
        assert_eq!(d.enumerator(), "1+1Y^3");
        assert_eq!(d.nonzero_weights(), vec![3]);
    }

    #[test]
    fn report_json_round_trip() {
        let spec = CodeSpec::new(Family::One, 2, 2, 2, 1, 3, 1);
        let derived = derive(&spec).unwrap();
        let dist = WeightDistribution::from_enumerator(85, 6, 4, "1+2040Y^60+255Y^64+1800Y^68").unwrap();
        let rep = DistributionReport::new(&spec, &derived, Method::BruteForce, &dist);
        let s = serde_json::to_string(&rep).unwrap();
        assert!(s.contains("\"method\":\"brute-force\""));
        assert!(s.contains("\"freq\":\"2040\""));
        let back: DistributionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
        assert!(back.distribution().unwrap().same_as(&dist));
        assert!(rep.to_text().contains("[n, k, d] = [85, 6, 60]"));
    }
}
