//! Symbolic products and quotients of factorials and linear factors in `n`.
//!
//! A [`FactorialRatio`] is an immutable description such as
//! `(15n-1)! (2)! (4n)! / (12n+2)! (2n)! (5n-1)!`. Evaluating it at a
//! concrete `n` never builds the factorials: each prime's exponent is
//! obtained from Legendre's formula, and the value itself is only
//! materialized on request from the resulting [`ValuationProfile`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::primes::{factorize, primes_up_to, require_prime};
use crate::valuation::{legendre, nu_int};
use crate::{Error, Result};

/// `coeff * n + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeff: i64,
    pub offset: i64,
}

impl LinearForm {
    pub const fn new(coeff: i64, offset: i64) -> Self {
        LinearForm { coeff, offset }
    }

    pub const fn constant(c: i64) -> Self {
        LinearForm { coeff: 0, offset: c }
    }

    pub fn eval(&self, n: u64) -> Result<i64> {
        i64::try_from(n)
            .ok()
            .and_then(|n| self.coeff.checked_mul(n))
            .and_then(|v| v.checked_add(self.offset))
            .ok_or_else(|| Error::overflow(format!("{self} at n = {n}")))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let LinearForm { coeff, offset } = *self;
        match coeff {
            0 => return write!(f, "{offset}"),
            1 => write!(f, "n")?,
            -1 => write!(f, "-n")?,
            c => write!(f, "{c}n")?,
        }
        match offset {
            0 => Ok(()),
            o if o > 0 => write!(f, "+{o}"),
            o => write!(f, "{o}"),
        }
    }
}

/// Whether a term sits in the numerator or the denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Num,
    Den,
}

impl Sign {
    fn factor(self) -> i64 {
        match self {
            Sign::Num => 1,
            Sign::Den => -1,
        }
    }
}

/// `prod (a_i n + b_i)!^(+-1) * prod (c_j n + d_j)^(+-1)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorialRatio {
    factorial_terms: Vec<(LinearForm, Sign)>,
    linear_terms: Vec<(LinearForm, Sign)>,
}

/// Sparse prime factorization of a rational value; exponents may be negative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationProfile {
    entries: Vec<(u64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrality {
    Integral,
    /// The least prime whose exponent is negative.
    NotIntegral {
        prime: u64,
        exponent: i64,
    },
}

impl Integrality {
    pub fn is_integral(&self) -> bool {
        matches!(self, Integrality::Integral)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Term arguments of a ratio at one `n`, already range-checked.
struct Evaluated {
    factorials: Vec<(u64, i64)>,
    linears: Vec<(u64, i64)>,
    max_arg: u64,
}

impl FactorialRatio {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiplies by `(coeff n + offset)!`.
    pub fn fact(mut self, coeff: i64, offset: i64) -> Self {
        self.factorial_terms.push((LinearForm::new(coeff, offset), Sign::Num));
        self
    }

    /// Divides by `(coeff n + offset)!`.
    pub fn over_fact(mut self, coeff: i64, offset: i64) -> Self {
        self.factorial_terms.push((LinearForm::new(coeff, offset), Sign::Den));
        self
    }

    /// Multiplies by the linear factor `coeff n + offset`.
    pub fn lin(mut self, coeff: i64, offset: i64) -> Self {
        self.linear_terms.push((LinearForm::new(coeff, offset), Sign::Num));
        self
    }

    /// Divides by the linear factor `coeff n + offset`.
    pub fn over_lin(mut self, coeff: i64, offset: i64) -> Self {
        self.linear_terms.push((LinearForm::new(coeff, offset), Sign::Den));
        self
    }

    /// Multiplies by `C(top, bottom)` written as three factorials.
    pub fn binom(self, top: (i64, i64), bottom: (i64, i64)) -> Self {
        self.fact(top.0, top.1)
            .over_fact(bottom.0, bottom.1)
            .over_fact(top.0 - bottom.0, top.1 - bottom.1)
    }

    /// Divides by `C(top, bottom)`.
    pub fn over_binom(self, top: (i64, i64), bottom: (i64, i64)) -> Self {
        self.over_fact(top.0, top.1)
            .fact(bottom.0, bottom.1)
            .fact(top.0 - bottom.0, top.1 - bottom.1)
    }

    /// Product of two ratios (term lists concatenated).
    pub fn times(mut self, other: &FactorialRatio) -> Self {
        self.factorial_terms.extend_from_slice(&other.factorial_terms);
        self.linear_terms.extend_from_slice(&other.linear_terms);
        self
    }

    /// Reciprocal.
    pub fn inverse(&self) -> Self {
        let flip = |v: &Vec<(LinearForm, Sign)>| {
            v.iter()
                .map(|&(f, s)| (f, if s == Sign::Num { Sign::Den } else { Sign::Num }))
                .collect()
        };
        FactorialRatio {
            factorial_terms: flip(&self.factorial_terms),
            linear_terms: flip(&self.linear_terms),
        }
    }

    pub fn factorial_terms(&self) -> &[(LinearForm, Sign)] {
        &self.factorial_terms
    }

    pub fn linear_terms(&self) -> &[(LinearForm, Sign)] {
        &self.linear_terms
    }

    fn evaluate(&self, n: u64) -> Result<Evaluated> {
        let mut max_arg = 0;
        let mut factorials = Vec::with_capacity(self.factorial_terms.len());
        for &(form, sign) in &self.factorial_terms {
            let v = form.eval(n)?;
            if v < 0 {
                return Err(Error::Domain {
                    term: format!("({form})!"),
                    n,
                    value: v,
                });
            }
            max_arg = max_arg.max(v as u64);
            factorials.push((v as u64, sign.factor()));
        }
        let mut linears = Vec::with_capacity(self.linear_terms.len());
        for &(form, sign) in &self.linear_terms {
            let v = form.eval(n)?;
            if v < 1 {
                return Err(Error::Domain {
                    term: format!("[{form}]"),
                    n,
                    value: v,
                });
            }
            linears.push((v as u64, sign.factor()));
        }
        Ok(Evaluated {
            factorials,
            linears,
            max_arg,
        })
    }

    /// Largest factorial argument at `n`; also validates every term.
    pub fn max_factorial_arg(&self, n: u64) -> Result<u64> {
        Ok(self.evaluate(n)?.max_arg)
    }

    /// Exponent of the prime `p` in the value of the ratio at `n`.
    pub fn nu_at(&self, n: u64, p: u64) -> Result<i64> {
        require_prime(p)?;
        Ok(self.evaluate(n)?.nu(p))
    }

    /// Exponent of every prime with a nonzero net contribution.
    pub fn profile(&self, n: u64) -> Result<ValuationProfile> {
        let ev = self.evaluate(n)?;
        let lin = ev.linear_factorization();
        let mut entries = Vec::new();
        for &p in primes_up_to(ev.max_arg).iter() {
            let e = ev.nu_factorials(p) + lin.get(&p).copied().unwrap_or(0);
            if e != 0 {
                entries.push((p, e));
            }
        }
        entries.extend(
            lin.range(ev.max_arg + 1..)
                .filter(|(_, &e)| e != 0)
                .map(|(&p, &e)| (p, e)),
        );
        Ok(ValuationProfile { entries })
    }

    /// Decides integrality at `n`, reporting the least prime with a
    /// negative exponent. Stops at the first such prime.
    pub fn is_integer_at(&self, n: u64) -> Result<Integrality> {
        let ev = self.evaluate(n)?;
        let lin = ev.linear_factorization();
        for &p in primes_up_to(ev.max_arg).iter() {
            let e = ev.nu_factorials(p) + lin.get(&p).copied().unwrap_or(0);
            if e < 0 {
                return Ok(Integrality::NotIntegral { prime: p, exponent: e });
            }
        }
        for (&p, &e) in lin.range(ev.max_arg + 1..) {
            if e < 0 {
                return Ok(Integrality::NotIntegral { prime: p, exponent: e });
            }
        }
        Ok(Integrality::Integral)
    }

    fn integral_profile(&self, n: u64) -> Result<ValuationProfile> {
        let profile = self.profile(n)?;
        if let Some((prime, exponent)) = profile.first_negative() {
            return Err(Error::NotIntegral { prime, exponent });
        }
        Ok(profile)
    }

    /// The value of the ratio at `n` as an exact integer.
    pub fn reconstruct(&self, n: u64) -> Result<BigUint> {
        Ok(self.integral_profile(n)?.to_biguint())
    }

    /// The value of the ratio at `n` reduced modulo `m`, without forming it.
    pub fn reconstruct_mod(&self, n: u64, m: u64) -> Result<u64> {
        if m < 2 {
            return Err(Error::invalid(format!("modulus must be at least 2, got {m}")));
        }
        let profile = self.integral_profile(n)?;
        let m128 = m as u128;
        let r = profile
            .entries
            .iter()
            .fold(1u128, |acc, &(p, e)| acc * pow_mod(p, e as u64, m) as u128 % m128);
        Ok(r as u64)
    }

    pub fn parity(&self, n: u64) -> Result<Parity> {
        match self.is_integer_at(n)? {
            Integrality::NotIntegral { prime, exponent } => Err(Error::NotIntegral { prime, exponent }),
            Integrality::Integral => {
                let ev = self.evaluate(n)?;
                Ok(if ev.nu(2) == 0 { Parity::Odd } else { Parity::Even })
            }
        }
    }
}

impl Evaluated {
    fn nu_factorials(&self, p: u64) -> i64 {
        self.factorials
            .iter()
            .filter(|&&(a, _)| a >= p)
            .map(|&(a, s)| s * legendre(a, p) as i64)
            .sum()
    }

    fn nu(&self, p: u64) -> i64 {
        self.nu_factorials(p) + self.linears.iter().map(|&(v, s)| s * nu_int(v, p) as i64).sum::<i64>()
    }

    fn linear_factorization(&self) -> BTreeMap<u64, i64> {
        let mut out = BTreeMap::new();
        for &(v, s) in &self.linears {
            for (p, e) in factorize(v) {
                *out.entry(p).or_insert(0) += s * e as i64;
            }
        }
        out
    }
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl ValuationProfile {
    /// Builds a profile from arbitrary pairs, merging repeated primes and
    /// dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (p, e) in pairs {
            *m.entry(p).or_insert(0i64) += e;
        }
        ValuationProfile {
            entries: m.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn entries(&self) -> &[(u64, i64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn exponent(&self, p: u64) -> i64 {
        self.entries
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn first_negative(&self) -> Option<(u64, i64)> {
        self.entries.iter().copied().find(|&(_, e)| e < 0)
    }

    pub fn is_integral(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Profile of the product of the two represented values.
    pub fn product(&self, other: &ValuationProfile) -> ValuationProfile {
        Self::from_pairs(self.entries.iter().chain(&other.entries).copied())
    }

    /// The represented value. Panics if any exponent is negative.
    pub fn to_biguint(&self) -> BigUint {
        assert!(self.is_integral(), "profile {self} is not an integer");
        let mut chunks: Vec<u64> = Vec::new();
        let mut acc = 1u64;
        for &(p, e) in &self.entries {
            for _ in 0..e {
                match acc.checked_mul(p) {
                    Some(v) => acc = v,
                    None => {
                        chunks.push(acc);
                        acc = p;
                    }
                }
            }
        }
        chunks.push(acc);
        product_tree(&chunks)
    }
}

fn product_tree(xs: &[u64]) -> BigUint {
    match xs.len() {
        0 => BigUint::from(1u8),
        1 => BigUint::from(xs[0]),
        len => {
            let (a, b) = xs.split_at(len / 2);
            product_tree(a) * product_tree(b)
        }
    }
}

impl fmt::Display for ValuationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for FactorialRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |sign: Sign| -> Vec<String> {
            let facts = self
                .factorial_terms
                .iter()
                .filter(|t| t.1 == sign)
                .map(|(form, _)| format!("({form})!"));
            let lins = self
                .linear_terms
                .iter()
                .filter(|t| t.1 == sign)
                .map(|(form, _)| format!("[{form}]"));
            facts.chain(lins).collect()
        };
        let num = side(Sign::Num);
        let den = side(Sign::Den);
        if num.is_empty() {
            write!(f, "1")?;
        } else {
            write!(f, "{}", num.join(" "))?;
        }
        if !den.is_empty() {
            write!(f, " / {}", den.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for FactorialRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .ratio()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ratio(mut self) -> Result<FactorialRatio> {
        let mut out = FactorialRatio::new();
        self.side(&mut out, Sign::Num)?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.side(&mut out, Sign::Den)?;
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(out)
    }

    fn side(&mut self, out: &mut FactorialRatio, sign: Sign) -> Result<()> {
        if self.peek() == Some(b'1') {
            let start = self.pos;
            self.pos += 1;
            if matches!(self.peek(), None | Some(b'/')) {
                return Ok(());
            }
            self.pos = start;
            return self.err("bare constants must be written as (c)! or [c]");
        }
        let mut any = false;
        loop {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let form = self.form()?;
                    self.expect(b')')?;
                    self.expect(b'!')?;
                    out.factorial_terms.push((form, sign));
                }
                Some(b'[') => {
                    self.pos += 1;
                    let form = self.form()?;
                    self.expect(b']')?;
                    out.linear_terms.push((form, sign));
                }
                _ => break,
            }
            any = true;
        }
        if !any {
            return self.err("expected a term: (form)!, [form] or 1");
        }
        Ok(())
    }

    fn form(&mut self) -> Result<LinearForm> {
        let mut coeff = 0i64;
        let mut offset = 0i64;
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let mag: Option<i64> = if digits.is_empty() {
                None
            } else {
                match digits.parse() {
                    Ok(v) => Some(v),
                    Err(_) => return self.err("integer literal out of range"),
                }
            };
            let has_n = self.src.get(self.pos) == Some(&b'n');
            if has_n {
                self.pos += 1;
            }
            let overflow = || Error::Parse {
                pos: start,
                msg: "coefficient overflow".into(),
            };
            match (mag, has_n) {
                (None, false) => return self.err("expected integer or n"),
                (m, true) => {
                    let c = m.unwrap_or(1);
                    let c = if neg { -c } else { c };
                    coeff = coeff.checked_add(c).ok_or_else(overflow)?;
                }
                (Some(m), false) => {
                    let m = if neg { -m } else { m };
                    offset = offset.checked_add(m).ok_or_else(overflow)?;
                }
            }
        }
        Ok(LinearForm { coeff, offset })
    }
}
