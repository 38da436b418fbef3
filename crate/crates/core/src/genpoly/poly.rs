use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    P,
    Q,
    X,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::T, Var::P, Var::Q, Var::X];

    fn slot(self) -> usize {
        self as usize
    }

    fn name(self) -> char {
        match self {
            Var::T => 't',
            Var::P => 'p',
            Var::Q => 'q',
            Var::X => 'x',
        }
    }
}

/// Exponents of `(t, p, q, x)`.
pub type Exponents = [u32; 4];

pub fn exponents(pairs: &[(Var, u32)]) -> Exponents {
    let mut e = [0; 4];
    for &(v, k) in pairs {
        e[v.slot()] += k;
    }
    e
}

/// A polynomial in `t, p, q, x` with arbitrary-precision integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::monomial([0; 4], c)
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(exponents(&[(v, 1)]), 1)
    }

    pub fn monomial(e: Exponents, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponents) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    /// The constant coefficient if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Substitutes `v = 1`.
    pub fn at_one(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut e = *e;
            e[v.slot()] = 0;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.slot()]).max().unwrap_or(0)
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: Exponents) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(f, c)| ([f[0] + e[0], f[1] + e[1], f[2] + e[2], f[3] + e[3]], c.clone()))
            .collect();
        MultiPoly { terms }
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl<'a> Add<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;

    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &'a MultiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl<'a> Sub<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3]], c * d);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), std::cmp::Reverse(**e)));
        for (k, (e, c)) in order.into_iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || e.iter().all(|&d| d == 0) {
                factors.push(mag.to_string());
            }
            for v in Var::ALL {
                match e[v.slot()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    d => factors.push(format!("{}^{d}", v.name())),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exponents: Exponents,
    coeff: String,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> =
            self.terms.iter().map(|(e, c)| TermRecord { exponents: *e, coeff: c.to_string() }).collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut p = MultiPoly::zero();
        for r in records {
            let c: BigInt = r.coeff.parse().map_err(serde::de::Error::custom)?;
            p.add_term(r.exponents, c);
        }
        Ok(p)
    }
}

/// Signed monomial counts accumulated during an enumeration, kept in
/// machine integers until the final conversion.
#[derive(Debug, Clone, Default)]
pub struct TermCounter {
    counts: HashMap<Exponents, i64>,
}

impl TermCounter {
    pub fn new() -> Self {
        TermCounter::default()
    }

    pub fn add(&mut self, e: Exponents, c: i64) {
        *self.counts.entry(e).or_insert(0) += c;
    }

    pub fn merge(mut self, other: TermCounter) -> TermCounter {
        let (mut big, small) = if self.counts.len() >= other.counts.len() {
            (std::mem::take(&mut self.counts), other.counts)
        } else {
            (other.counts, std::mem::take(&mut self.counts))
        };
        for (e, c) in small {
            *big.entry(e).or_insert(0) += c;
        }
        TermCounter { counts: big }
    }

    pub fn into_poly(self) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (e, c) in self.counts {
            p.add_term(e, BigInt::from(c));
        }
        p
    }
}

/// `[k]_q = 1 + q + ... + q^{k-1}`, with `[0]_q = 0`.
pub fn q_integer(k: u32) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for j in 0..k {
        p.add_term(exponents(&[(Var::Q, j)]), BigInt::one());
    }
    p
}

/// Parses the pretty form produced by `Display`, e.g. `1 - t*p*q + 3*q^2`.
pub fn parse_poly(text: &str) -> Result<MultiPoly> {
    let bad = || Error::Domain(format!("cannot parse polynomial {text:?}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut out = MultiPoly::zero();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (term, tail) = body.split_at(end);
        let mut c = BigInt::from(sign);
        let mut e = [0u32; 4];
        for factor in term.split('*') {
            if let Ok(k) = factor.parse::<BigInt>() {
                c *= k;
                continue;
            }
            let (name, power) = match factor.split_once('^') {
                Some((v, d)) => (v, d.parse::<u32>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            let v = Var::ALL.into_iter().find(|v| name.len() == 1 && name.starts_with(v.name())).ok_or_else(bad)?;
            e[v.slot()] += power;
        }
        out.add_term(e, c);
        rest = tail;
    }
    Ok(out)
}
