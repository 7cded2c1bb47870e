//! Named sequences built on [`FactorialRatio`]: Catalan numbers of every
//! order, `Q(m, n)`, the two sequences `s_n` and `t_n`, and `S_n^(k)`.
//!
//! Every value is produced by reconstructing a valuation profile; the
//! arithmetic identities tying the sequences together are asserted along
//! the way.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::factorial_ratio::FactorialRatio;
use crate::primes::primes_up_to;
use crate::{Error, Result};

/// Largest `k` accepted for `S:k`; keeps `(2^k - 1) n` comfortably in range.
pub const MAX_BIG_S_ORDER: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceId {
    /// `C_n = C(2n, n) / (n + 1)`
    Catalan,
    /// `C_n^(h) = C((h+1)n, n) / (hn + 1)`
    CatalanOrder(u64),
    /// `Q(m, n) = C(2n, n) C(2m+2n, 2n) / (2 C(m+n, n))`
    Q(u64),
    /// `s_n = C(3n-1, n-1) C(15n, 3n) / ((6n+1)(12n+1) C(5n, n))`
    S,
    /// `t_n = C(5n-1, n-1) C(15n, 5n) / ((10n+1) C(3n, n))`
    T,
    /// `S_n^(k) = C(2qn, qn) C(qn, n) / (2^(k-1) ((q-1)n + 1) C(2n, n))`, `q = 2^k - 1`
    BigS(u32),
}

impl SequenceId {
    /// The defining ratio, with `n` as the free variable.
    pub fn ratio(&self) -> FactorialRatio {
        let r = FactorialRatio::new();
        match *self {
            SequenceId::Catalan => r.binom((2, 0), (1, 0)).over_lin(1, 1),
            SequenceId::CatalanOrder(h) => {
                let h = h as i64;
                r.binom((h + 1, 0), (1, 0)).over_lin(h, 1)
            }
            SequenceId::Q(m) => {
                let m = m as i64;
                r.binom((2, 0), (1, 0))
                    .binom((2, 2 * m), (2, 0))
                    .over_lin(0, 2)
                    .over_binom((1, m), (1, 0))
            }
            SequenceId::S => r
                .binom((3, -1), (1, -1))
                .binom((15, 0), (3, 0))
                .over_lin(6, 1)
                .over_lin(12, 1)
                .over_binom((5, 0), (1, 0)),
            SequenceId::T => r
                .binom((5, -1), (1, -1))
                .binom((15, 0), (5, 0))
                .over_lin(10, 1)
                .over_binom((3, 0), (1, 0)),
            SequenceId::BigS(k) => {
                let q = (1i64 << k) - 1;
                r.binom((2 * q, 0), (q, 0))
                    .binom((q, 0), (1, 0))
                    .over_lin(0, 1i64 << (k - 1))
                    .over_lin(q - 1, 1)
                    .over_binom((2, 0), (1, 0))
            }
        }
    }

    /// Smallest index at which the sequence is defined.
    pub fn first_index(&self) -> u64 {
        match self {
            SequenceId::Catalan | SequenceId::CatalanOrder(_) => 0,
            _ => 1,
        }
    }

    /// The `n`-th term.
    pub fn value(&self, n: u64) -> Result<BigUint> {
        if n < self.first_index() {
            return Err(Error::invalid(format!(
                "{self} is defined for n >= {}",
                self.first_index()
            )));
        }
        match self.ratio().reconstruct(n) {
            Err(Error::NotIntegral { prime, exponent }) => panic!(
                "{self} at n = {n} is not an integer (prime {prime}, exponent {exponent}); \
                 integrality is a theorem, so this is a bug"
            ),
            other => other,
        }
    }

    /// Terms for every `n` in `range`, sharing one sieve extension.
    pub fn stream(&self, range: RangeInclusive<u64>) -> SequenceStream {
        let start = (*range.start()).max(self.first_index());
        let end = *range.end();
        let ratio = self.ratio();
        if start <= end {
            if let Ok(max) = ratio.max_factorial_arg(end) {
                primes_up_to(max);
            }
        }
        SequenceStream {
            id: *self,
            ratio,
            next: start,
            end,
        }
    }
}

/// Iterator over `(n, value)` pairs.
pub struct SequenceStream {
    id: SequenceId,
    ratio: FactorialRatio,
    next: u64,
    end: u64,
}

impl Iterator for SequenceStream {
    type Item = Result<(u64, BigUint)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next > self.end {
            return None;
        }
        let n = self.next;
        self.next += 1;
        let v = match self.ratio.reconstruct(n) {
            Err(Error::NotIntegral { prime, .. }) => {
                panic!("{} at n = {n} is not an integer (prime {prime})", self.id)
            }
            other => other,
        };
        Some(v.map(|v| (n, v)))
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceId::Catalan => write!(f, "catalan"),
            SequenceId::CatalanOrder(h) => write!(f, "catalan:{h}"),
            SequenceId::Q(m) => write!(f, "Q:{m}"),
            SequenceId::S => write!(f, "s"),
            SequenceId::T => write!(f, "t"),
            SequenceId::BigS(k) => write!(f, "S:{k}"),
        }
    }
}

impl FromStr for SequenceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::invalid(format!("sequence {s:?}: {why}"));
        let param = |p: &str| {
            p.parse::<u64>()
                .map_err(|_| bad("parameter must be a nonnegative integer"))
        };
        match s.split_once(':') {
            None => match s {
                "catalan" => Ok(SequenceId::Catalan),
                "s" => Ok(SequenceId::S),
                "t" => Ok(SequenceId::T),
                _ => Err(bad("expected catalan, catalan:h, s, t, S:k or Q:m")),
            },
            Some(("catalan", h)) => Ok(SequenceId::CatalanOrder(param(h)?)),
            Some(("Q", m)) => Ok(SequenceId::Q(param(m)?)),
            Some(("S", k)) => {
                let k = param(k)?;
                if !(1..=MAX_BIG_S_ORDER as u64).contains(&k) {
                    return Err(bad("k must be in 1..=30"));
                }
                Ok(SequenceId::BigS(k as u32))
            }
            Some(_) => Err(bad("expected catalan, catalan:h, s, t, S:k or Q:m")),
        }
    }
}

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    FactorialRatio::new()
        .fact(0, a as i64)
        .over_fact(0, b as i64)
        .over_fact(0, (a - b) as i64)
        .reconstruct(0)
        .expect("binomial coefficients are integers")
}

pub fn catalan(n: u64) -> BigUint {
    let c = SequenceId::Catalan.value(n).expect("catalan is defined for all n");
    if n >= 1 {
        assert_eq!(
            c,
            binomial(2 * n, n) - binomial(2 * n, n - 1),
            "C_n difference form, n = {n}"
        );
    }
    c
}

/// Catalan number of order `h`.
pub fn catalan_order(h: u64, n: u64) -> BigUint {
    let c = SequenceId::CatalanOrder(h).value(n).expect("defined for all n");
    if n >= 1 {
        let top = (h + 1) * n;
        let below = binomial(top, n - 1);
        assert_eq!(&c * n, below, "n C_n^(h) = C((h+1)n, n-1), h = {h}, n = {n}");
        assert_eq!(
            c,
            binomial(top, n) - below * h,
            "difference form of C_n^(h), h = {h}, n = {n}"
        );
    }
    c
}

pub fn seq_s(n: u64) -> Result<BigUint> {
    SequenceId::S.value(n)
}

pub fn seq_t(n: u64) -> Result<BigUint> {
    SequenceId::T.value(n)
}

/// `S_n^(k)`.
pub fn seq_big_s(k: u32, n: u64) -> Result<BigUint> {
    if !(1..=MAX_BIG_S_ORDER).contains(&k) {
        return Err(Error::invalid(format!(
            "S:k needs 1 <= k <= {MAX_BIG_S_ORDER}, got {k}"
        )));
    }
    SequenceId::BigS(k).value(n)
}

/// `Q(m, n)`, checked against `2^(n-1) / n! * prod_{j=1..n} (2m + 2j - 1)`.
pub fn seq_q(m: u64, n: u64) -> Result<BigUint> {
    let q = SequenceId::Q(m).value(n)?;
    let odd_product = (1..=n).fold(BigUint::one(), |acc, j| acc * (2 * m + 2 * j - 1));
    let n_fact = (1..=n).fold(BigUint::one(), |acc, j| acc * j);
    let closed = (odd_product << (n - 1) as usize) / n_fact;
    assert_eq!(q, closed, "closed form of Q({m}, {n})");
    Ok(q)
}

/// Both sides of the two product identities relating `C(2n, n) C(2m+2n, 2n) / C(m+n, n)`
/// to central binomials, cross-multiplied so that every side is an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductIdentities {
    pub first: (BigUint, BigUint),
    pub second: Option<(BigUint, BigUint)>,
}

impl ProductIdentities {
    pub fn hold(&self) -> bool {
        self.first.0 == self.first.1 && self.second.as_ref().is_none_or(|(a, b)| a == b)
    }
}

/// Evaluates
/// `C(2n,n) C(2m+2n,2n) / C(m+n,n) = C(2m+2n,m+n) C(m+n,n) / C(2m,m)` and, for `n >= 1`,
/// `C(2n,n) C(2m+2n,2n-1) / C(m+n,n) = 2 C(2m+2n,m+n) C(m+n,n-1) / C(2m+1,m)`.
pub fn product_identities(m: u64, n: u64) -> ProductIdentities {
    let b = binomial;
    let first = (
        b(2 * n, n) * b(2 * m + 2 * n, 2 * n) * b(2 * m, m),
        b(2 * m + 2 * n, m + n) * b(m + n, n) * b(m + n, n),
    );
    let second = (n >= 1).then(|| {
        (
            b(2 * n, n) * b(2 * m + 2 * n, 2 * n - 1) * b(2 * m + 1, m),
            b(2 * m + 2 * n, m + n) * b(m + n, n - 1) * b(m + n, n) * 2u8,
        )
    });
    ProductIdentities { first, second }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigUint::one());
        assert_eq!(catalan(3), BigUint::from(5u8));
        assert_eq!(catalan(10), BigUint::from(16796u32));
    }

    #[test]
    fn catalan_recurrence() {
        let c: Vec<BigUint> = (0..=16).map(catalan).collect();
        for n in 0..=15 {
            let conv: BigUint = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
            assert_eq!(c[n + 1], conv);
        }
    }

    #[test]
    fn catalan_order_examples() {
        for n in 0..30 {
            assert_eq!(catalan_order(1, n), catalan(n));
            assert_eq!(catalan_order(0, n), BigUint::one());
        }
        for h in 0..10 {
            assert_eq!(catalan_order(h, 0), BigUint::one());
        }
        assert_eq!(catalan_order(4, 3), BigUint::from(35u8));
    }

    #[test]
    fn s_and_t_tables() {
        let s = [
            "1",
            "203",
            "77572",
            "38903007",
            "22716425576",
            "14621862696188",
            "10071456400611060",
            "7291908546474763815",
        ];
        for (i, v) in s.iter().enumerate() {
            assert_eq!(seq_s(i as u64 + 1).unwrap(), big(v));
        }
        let t = ["91", "858429", "12051818636", "200142760587609", "3648677478873075576"];
        for (i, v) in t.iter().enumerate() {
            assert_eq!(seq_t(i as u64 + 1).unwrap(), big(v));
        }
        assert!(matches!(seq_s(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn big_s_values() {
        // brute-force big-integer oracle values
        for n in 1..10 {
            assert_eq!(seq_big_s(1, n).unwrap(), BigUint::one());
        }
        let s2: Vec<BigUint> = (1..=4).map(|n| seq_big_s(2, n).unwrap()).collect();
        assert_eq!(s2, [5u32, 231, 14586, 1062347].map(BigUint::from));
        let s3: Vec<BigUint> = (1..=3).map(|n| seq_big_s(3, n).unwrap()).collect();
        assert_eq!(s3, [429u64, 11700675, 470975640135].map(BigUint::from));
        assert!(seq_big_s(0, 1).is_err());
    }

    #[test]
    fn q_values() {
        for m in 0..20u64 {
            assert_eq!(seq_q(m, 1).unwrap(), BigUint::from(2 * m + 1));
        }
        assert_eq!(seq_q(0, 2).unwrap(), BigUint::from(3u8));
        assert_eq!(seq_q(1, 4).unwrap(), BigUint::from(315u16));
    }

    #[test]
    fn identities() {
        for m in 0..=12 {
            for n in 0..=12 {
                assert!(product_identities(m, n).hold(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn names_roundtrip() {
        for s in ["catalan", "catalan:3", "s", "t", "S:2", "Q:7"] {
            let id: SequenceId = s.parse().unwrap();
            assert_eq!(id.to_string(), s);
        }
        for s in ["catalans", "S:0", "S:31", "Q:-1", "T", "catalan:x", ""] {
            assert!(s.parse::<SequenceId>().is_err(), "{s}");
        }
    }

    #[test]
    fn stream_matches_value() {
        let streamed: Vec<_> = SequenceId::T.stream(1..=5).map(|r| r.unwrap()).collect();
        assert_eq!(streamed.len(), 5);
        for (n, v) in streamed {
            assert_eq!(v, seq_t(n).unwrap());
        }
        assert_eq!(SequenceId::Catalan.stream(0..=3).count(), 4);
        assert_eq!(SequenceId::S.stream(0..=2).count(), 2);
    }
}
