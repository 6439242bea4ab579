//! The tower GF(p) ⊂ GF(q) ⊂ GF(r) ⊂ GF(r²).
//!
//! Everything lives in one flat representation of GF(r²) as GF(p)[x]/(f) with
//! `deg f = 2lm`. An element is encoded as the integer `Σ cᵢ pⁱ` of its
//! coefficient vector, so encodings of GF(r²) are exactly `0..r²`. The
//! subfields are the Frobenius-fixed subsets: `y ∈ GF(r)` iff `y^r = y`, and
//! `x ∈ GF(q)` iff `x^q = x`.
//!
//! The modulus is the monic irreducible polynomial of degree `2lm` whose lower
//! coefficients have the smallest encoding, and `gamma` is the element of
//! smallest encoding with multiplicative order `r² − 1`. Both searches are
//! deterministic, so two runs (or two implementations following the same
//! rule) agree on the representation.
//!
//! Fields with `r² ≤ 2²⁰` get exp/log tables; larger fields (up to the hard
//! budget of `2³²`) fall back to schoolbook multiplication.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

/// Hard cap on `r²`.
pub const MAX_FIELD_SIZE: u64 = 1 << 32;
/// Fields up to this size carry exp/log tables.
pub const TABLE_FIELD_SIZE: u64 = 1 << 20;

const MAX_DEGREE: usize = 32;

type Digits = [u32; MAX_DEGREE];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("extension degrees must be positive (l = {l}, m = {m})")]
    ZeroDegree { l: u32, m: u32 },
    #[error("r^2 = {p}^{degree} exceeds the field budget of 2^32")]
    TooLarge { p: u64, degree: u64 },
    #[error("element {0} is not in GF(r)")]
    NotInR(u32),
    #[error("encoding {0} is outside GF(r^2)")]
    BadEncoding(u64),
    #[error("element does not have order r^2 - 1")]
    NotPrimitive,
    #[error("exponent {s} is not coprime to r^2 - 1 = {order}")]
    NotCoprime { s: u64, order: u64 },
    #[error("operation needs exp/log tables, which are only built for r^2 <= 2^20")]
    NoTables,
}

/// An element of GF(r²), identified by its coefficient encoding.
///
/// Arithmetic goes through the owning [`FieldTower`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subfield {
    Q,
    R,
    R2,
}

/// The subgroup `U = {z : z^(r+1) = 1}` of GF(r²)*.
#[derive(Clone, Debug)]
pub struct UnitCircle {
    pub generator: Elem,
    pub order: u64,
    /// `generator^0, …, generator^r`.
    pub elements: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDump {
    pub p: u64,
    pub l: u32,
    pub m: u32,
    /// Coefficients `c0..c_{2lm}` of the monic modulus.
    pub modulus: Vec<u32>,
    /// Coefficients of gamma, length `2lm`.
    pub gamma: Vec<u32>,
}

#[derive(Clone, Debug)]
struct LogTables {
    /// `exp[i] = gamma^i`, doubled in length so sums of two logs need no reduction.
    exp: Vec<u32>,
    /// `log[x]` for `x != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FieldTower {
    p: u64,
    l: u32,
    m: u32,
    q: u64,
    r: u64,
    size: u64,
    degree: usize,
    modulus: Vec<u32>,
    gamma: Elem,
    order_factors: Vec<u64>,
    tables: Option<LogTables>,
}

/// Arithmetic on raw digit vectors modulo a monic polynomial. Used both for
/// the field itself and for candidate moduli during the irreducibility search.
struct PolyMod<'a> {
    p: u64,
    modulus: &'a [u32],
}

impl PolyMod<'_> {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn mul(&self, a: &Digits, b: &Digits) -> Digits {
        let d = self.degree();
        let p = self.p;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k] % p;
            if c == 0 {
                continue;
            }
            // x^d = -(m_0 + … + m_{d-1} x^{d-1})
            for i in 0..d {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - d + i] = (prod[k - d + i] + p - sub) % p;
            }
            prod[k] = 0;
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..d {
            out[i] = (prod[i] % p) as u32;
        }
        out
    }

    fn pow(&self, base: &Digits, mut e: u64) -> Digits {
        let mut acc = [0u32; MAX_DEGREE];
        acc[0] = 1;
        let mut b = *base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// gcd of two polynomials over GF(p) (coefficient vectors, low degree first).
fn poly_gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u64) -> Vec<u32> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let lead_inv = arith::inv_mod(*b.last().unwrap() as u64, p).unwrap();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = *a.last().unwrap() as u64 * lead_inv % p;
            for (i, &bi) in b.iter().enumerate() {
                let sub = c * bi as u64 % p;
                a[shift + i] = ((a[shift + i] as u64 + p - sub) % p) as u32;
            }
            poly_trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Rabin's irreducibility test for a monic `f` of degree `d` over GF(p).
fn is_irreducible(modulus: &[u32], p: u64) -> bool {
    let d = modulus.len() - 1;
    if d == 1 {
        return true;
    }
    if modulus[0] == 0 {
        return false;
    }
    let ring = PolyMod { p, modulus };
    let mut x = [0u32; MAX_DEGREE];
    x[1] = 1;
    // x^(p^k) mod f for k = 0..=d
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(x);
    for k in 1..=d {
        let next = ring.pow(&frob[k - 1], p);
        frob.push(next);
    }
    if frob[d] != x {
        return false;
    }
    for s in arith::prime_factors(d as u64) {
        let k = d / s as usize;
        let mut diff: Vec<u32> = frob[k][..d].to_vec();
        diff[1] = ((diff[1] as u64 + p - 1) % p) as u32;
        let g = poly_gcd(diff, modulus.to_vec(), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldTower {
    pub fn new(p: u64, l: u32, m: u32) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if l == 0 || m == 0 {
            return Err(FieldError::ZeroDegree { l, m });
        }
        let degree = 2 * l as u64 * m as u64;
        let size = match u32::try_from(degree).ok().and_then(|d| p.checked_pow(d)) {
            Some(s) if s <= MAX_FIELD_SIZE => s,
            _ => return Err(FieldError::TooLarge { p, degree }),
        };
        let degree = degree as usize;
        let q = p.pow(l);
        let r = q.pow(m);

        let modulus = Self::find_modulus(p, degree);
        let order_factors = arith::prime_factors(size - 1);
        let mut tower = FieldTower {
            p,
            l,
            m,
            q,
            r,
            size,
            degree,
            modulus,
            gamma: Elem(0),
            order_factors,
            tables: None,
        };
        tower.gamma = (1..size)
            .map(|i| Elem(i as u32))
            .find(|&g| tower.has_full_order(g))
            .expect("GF(r^2)* is cyclic");
        tower.build_tables();
        Ok(tower)
    }

    fn find_modulus(p: u64, degree: usize) -> Vec<u32> {
        let mut coeffs = vec![0u32; degree + 1];
        coeffs[degree] = 1;
        // Lower coefficients enumerated in increasing encoding order.
        let mut low: u64 = 0;
        loop {
            let mut v = low;
            for c in coeffs.iter_mut().take(degree) {
                *c = (v % p) as u32;
                v /= p;
            }
            if is_irreducible(&coeffs, p) {
                return coeffs;
            }
            low += 1;
        }
    }

    fn build_tables(&mut self) {
        self.tables = None;
        if self.size > TABLE_FIELD_SIZE {
            return;
        }
        let n = (self.size - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![u32::MAX; self.size as usize];
        let mut cur = self.one();
        for i in 0..n {
            exp.push(cur.0);
            log[cur.0 as usize] = i as u32;
            cur = self.mul_slow(cur, self.gamma);
        }
        debug_assert_eq!(cur, self.one());
        exp.extend_from_within(..);
        self.tables = Some(LogTables { exp, log });
    }

    /// A copy of this tower with `gamma` replaced by `gamma^s`.
    pub fn with_gamma_power(&self, s: u64) -> Result<Self, FieldError> {
        let order = self.size - 1;
        if arith::gcd(s % order, order) != 1 {
            return Err(FieldError::NotCoprime { s, order });
        }
        let mut t = self.clone();
        t.gamma = self.pow(self.gamma, s);
        debug_assert!(t.has_full_order(t.gamma));
        t.build_tables();
        Ok(t)
    }

    fn has_full_order(&self, g: Elem) -> bool {
        if g.is_zero() {
            return false;
        }
        let n = self.size - 1;
        self.order_factors
            .iter()
            .all(|&s| self.pow_slow(g, n / s) != self.one())
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    /// `r²`, the number of elements of the top field.
    pub fn size(&self) -> u64 {
        self.size
    }
    /// Degree `2lm` of the top field over GF(p).
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn gamma(&self) -> Elem {
        self.gamma
    }
    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }
    pub fn one(&self) -> Elem {
        Elem(1)
    }

    pub fn from_index(&self, idx: u64) -> Result<Elem, FieldError> {
        if idx >= self.size {
            return Err(FieldError::BadEncoding(idx));
        }
        Ok(Elem(idx as u32))
    }

    /// Element from its coefficients `c0, c1, …` (missing ones are zero).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, FieldError> {
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            if c as u64 >= self.p {
                return Err(FieldError::BadEncoding(c as u64));
            }
            idx = idx * self.p + c as u64;
        }
        self.from_index(idx)
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        self.digits(x)[..self.degree].to_vec()
    }

    fn digits(&self, x: Elem) -> Digits {
        let mut out = [0u32; MAX_DEGREE];
        let mut v = x.0 as u64;
        for d in out.iter_mut().take(self.degree) {
            *d = (v % self.p) as u32;
            v /= self.p;
        }
        out
    }

    fn encode_digits(&self, d: &Digits) -> Elem {
        let mut idx = 0u64;
        for &c in d[..self.degree].iter().rev() {
            idx = idx * self.p + c as u64;
        }
        Elem(idx as u32)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let (mut out, mut place) = (0u64, 1u64);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out as u32)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut x = a.0 as u64;
        let (mut out, mut place) = (0u64, 1u64);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Elem(out as u32)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `c · a` for an integer scalar `c` (an element of the prime field).
    pub fn scale(&self, a: Elem, c: u64) -> Elem {
        let c = c % self.p;
        let mut acc = Elem(0);
        for _ in 0..c {
            acc = self.add(acc, a);
        }
        acc
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            let d = self.degree as u32;
            let red = self.modulus[..self.degree]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i));
            let (x, mut y) = (a.0 as u64, b.0 as u64);
            let mut acc = 0u64;
            let mut shifted = x;
            while y != 0 {
                if y & 1 == 1 {
                    acc ^= shifted;
                }
                y >>= 1;
                shifted <<= 1;
                if shifted >> d & 1 == 1 {
                    shifted = (shifted ^ (1u64 << d)) ^ red;
                }
            }
            return Elem(acc as u32);
        }
        let ring = PolyMod { p: self.p, modulus: &self.modulus };
        self.encode_digits(&ring.mul(&self.digits(a), &self.digits(b)))
    }

    fn pow_slow(&self, x: Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem(0);
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return self.one();
        }
        if x.is_zero() {
            return x;
        }
        match &self.tables {
            Some(t) => {
                let n = self.size - 1;
                let l = arith::mul_mod(t.log[x.0 as usize] as u64, e % n, n);
                Elem(t.exp[l as usize])
            }
            None => self.pow_slow(x, e % (self.size - 1)),
        }
    }

    /// `x^e` for a signed exponent; `x` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, x: Elem, e: i64) -> Elem {
        let n = self.size - 1;
        self.pow(x, arith::reduce(e as i128, n))
    }

    pub fn inv(&self, x: Elem) -> Option<Elem> {
        (!x.is_zero()).then(|| self.pow(x, self.size - 2))
    }

    /// Discrete log base gamma (table-backed fields only).
    pub fn log(&self, x: Elem) -> Result<Option<u64>, FieldError> {
        let t = self.tables.as_ref().ok_or(FieldError::NoTables)?;
        Ok((!x.is_zero()).then(|| t.log[x.0 as usize] as u64))
    }

    /// `gamma^k`.
    pub fn gamma_pow(&self, k: u64) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.exp[(k % (self.size - 1)) as usize]),
            None => self.pow(self.gamma, k),
        }
    }

    /// `x ↦ x^(q^k)`.
    pub fn frobenius(&self, x: Elem, k: u32) -> Elem {
        self.pow(x, arith::pow_mod(self.q, k as u64, self.size - 1))
    }

    /// The involution `x ↦ x^r` of GF(r²) over GF(r).
    pub fn conj(&self, x: Elem) -> Elem {
        self.pow(x, self.r)
    }

    pub fn contains(&self, sub: Subfield, x: Elem) -> bool {
        match sub {
            Subfield::Q => self.pow(x, self.q) == x,
            Subfield::R => self.conj(x) == x,
            Subfield::R2 => (x.0 as u64) < self.size,
        }
    }

    /// `Tr_{r/q}(y) = Σ_{i<m} y^(q^i)` for `y ∈ GF(r)`.
    pub fn trace_r_q(&self, y: Elem) -> Result<Elem, FieldError> {
        if !self.contains(Subfield::R, y) {
            return Err(FieldError::NotInR(y.0));
        }
        Ok(self.frobenius_sum(y, self.m))
    }

    /// `Tr_{r²/q}(x) = Σ_{i<2m} x^(q^i)`.
    pub fn trace_r2_q(&self, x: Elem) -> Elem {
        self.frobenius_sum(x, 2 * self.m)
    }

    /// `Tr_{r²/r}(x) = x + x^r`.
    pub fn trace_r2_r(&self, x: Elem) -> Elem {
        self.add(x, self.conj(x))
    }

    /// Trace from the given source subfield down to GF(q).
    pub fn trace(&self, x: Elem, source: Subfield) -> Result<Elem, FieldError> {
        match source {
            Subfield::R => self.trace_r_q(x),
            Subfield::R2 => Ok(self.trace_r2_q(x)),
            Subfield::Q => Ok(x),
        }
    }

    fn frobenius_sum(&self, x: Elem, count: u32) -> Elem {
        let mut acc = Elem(0);
        let mut cur = x;
        for _ in 0..count {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.q);
        }
        acc
    }

    /// The unit circle `U`, generated by `gamma^(r-1)`.
    pub fn unit_circle(&self) -> UnitCircle {
        let generator = self.gamma_pow(self.r - 1);
        let mut elements = Vec::with_capacity(self.r as usize + 1);
        let mut cur = self.one();
        for _ in 0..=self.r {
            elements.push(cur);
            cur = self.mul(cur, generator);
        }
        UnitCircle { generator, order: self.r + 1, elements }
    }

    /// `gamma^(r+1)`, a generator of GF(r)*.
    pub fn r_generator(&self) -> Elem {
        self.gamma_pow(self.r + 1)
    }

    /// A GF(p)-basis `1, β, …, β^(lm-1)` of GF(r), with `β = gamma^(r+1)`.
    pub fn r_basis(&self) -> Vec<Elem> {
        let beta = self.r_generator();
        let mut out = Vec::with_capacity((self.l * self.m) as usize);
        let mut cur = self.one();
        for _ in 0..self.l * self.m {
            out.push(cur);
            cur = self.mul(cur, beta);
        }
        out
    }

    /// The standard GF(p)-basis `1, x, …, x^(2lm-1)` of GF(r²).
    pub fn r2_basis(&self) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.degree);
        let mut place = 1u64;
        for _ in 0..self.degree {
            out.push(Elem(place as u32));
            place *= self.p;
        }
        out
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Elem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut n = self.size - 1;
        for &s in &self.order_factors {
            while n % s == 0 && self.pow(x, n / s) == self.one() {
                n /= s;
            }
        }
        Some(n)
    }

    pub fn dump(&self) -> TowerDump {
        TowerDump {
            p: self.p,
            l: self.l,
            m: self.m,
            modulus: self.modulus.clone(),
            gamma: self.coeffs(self.gamma),
        }
    }
}
