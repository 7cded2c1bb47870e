//! Digit expansions and p-adic valuations of factorials and binomials.
//!
//! Everything here works on machine integers. Legendre's formula is
//! evaluated two ways on every call (floor sum and digit sum) and the
//! binomial valuation two ways (carry count and Legendre difference); a
//! disagreement panics.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::primes::require_prime;
use crate::{Error, Result};

/// Little-endian base-`base` digits of a nonnegative integer. Zero has no digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitExpansion {
    pub base: u64,
    pub digits: Vec<u64>,
}

impl DigitExpansion {
    /// Rebuilds the represented integer.
    pub fn value(&self) -> u128 {
        self.digits
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * self.base as u128 + d as u128)
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    pub fn nonzero_count(&self) -> usize {
        self.digits.iter().filter(|&&d| d != 0).count()
    }
}

/// A prime together with the exponent it carries in some integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valuation {
    pub prime: u64,
    pub exponent: u64,
}

fn check_base(base: u64) -> Result<()> {
    if base < 2 {
        return Err(Error::invalid(format!("base must be at least 2, got {base}")));
    }
    Ok(())
}

pub fn digits(mut n: u64, base: u64) -> Result<DigitExpansion> {
    check_base(base)?;
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % base);
        n /= base;
    }
    Ok(DigitExpansion { base, digits })
}

pub fn digit_sum(n: u64, base: u64) -> Result<u64> {
    check_base(base)?;
    Ok(digit_sum_unchecked(n, base))
}

pub(crate) fn digit_sum_unchecked(mut n: u64, base: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % base;
        n /= base;
    }
    s
}

/// Number of nonzero base-`base` digits of `n`.
pub fn nonzero_digits(mut n: u64, base: u64) -> Result<usize> {
    check_base(base)?;
    let mut c = 0;
    while n > 0 {
        c += usize::from(!n.is_multiple_of(base));
        n /= base;
    }
    Ok(c)
}

/// Exponent of `p` in `n!`.
pub fn nu_factorial(n: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    Ok(legendre(n, p))
}

/// Legendre's formula without the primality check. Both forms are computed
/// and compared.
pub(crate) fn legendre(n: u64, p: u64) -> u64 {
    let mut floor_sum = 0u64;
    let mut q = n;
    while q >= p {
        q /= p;
        floor_sum += q;
    }
    let by_digits = (n - digit_sum_unchecked(n, p)) / (p - 1);
    assert_eq!(
        floor_sum, by_digits,
        "Legendre floor sum and digit-sum forms disagree for n = {n}, p = {p}"
    );
    floor_sum
}

/// Exponent of `p` in `C(a, b)`.
pub fn nu_binomial(a: u64, b: u64, p: u64) -> Result<u64> {
    if b > a {
        return Err(Error::invalid(format!("binomial C({a}, {b}) needs b <= a")));
    }
    require_prime(p)?;
    Ok(kummer(a, b, p))
}

/// Carry count of `b + (a - b)` in base `p`, checked against the Legendre
/// difference. Caller guarantees `b <= a` and `p` prime.
pub(crate) fn kummer(a: u64, b: u64, p: u64) -> u64 {
    let mut x = b;
    let mut y = a - b;
    let mut carry = 0u64;
    let mut carries = 0u64;
    while x > 0 || y > 0 || carry > 0 {
        let s = x % p + y % p + carry;
        carry = u64::from(s >= p);
        carries += carry;
        x /= p;
        y /= p;
    }
    let diff = legendre(a, p) - legendre(b, p) - legendre(a - b, p);
    assert_eq!(
        carries, diff,
        "carry count and Legendre difference disagree for C({a}, {b}), p = {p}"
    );
    carries
}

/// Exponent of `p` in a positive integer.
pub(crate) fn nu_int(mut v: u64, p: u64) -> u64 {
    debug_assert!(v > 0);
    let mut e = 0;
    while v.is_multiple_of(p) {
        v /= p;
        e += 1;
    }
    e
}

pub fn is_power_of_two(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::invalid("is_power_of_two needs n >= 1"));
    }
    Ok(n.is_power_of_two())
}

/// Largest odd divisor of `n`.
pub fn odd_part(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("odd_part needs n >= 1"));
    }
    Ok(n >> n.trailing_zeros())
}

/// Returns `(digit_sum(n, p) / (p - 1), sum_{j >= 1} {n / p^j})`.
///
/// The series is split at the first `J` with `p^J > n`: below it the terms are
/// `(n mod p^j) / p^j`, from `J` on they are `n / p^j` exactly and sum to
/// `n / (p^(J-1) (p - 1))`.
pub fn fractional_part_sum_identity(n: u64, p: u64) -> Result<(Ratio<i128>, Ratio<i128>)> {
    if n == 0 {
        return Err(Error::invalid("fractional_part_sum_identity needs n >= 1"));
    }
    require_prime(p)?;
    let n = n as i128;
    let p = p as i128;
    let lhs = Ratio::new(digit_sum_unchecked(n as u64, p as u64) as i128, p - 1);

    let mut rhs = Ratio::from_integer(0i128);
    let mut pj: i128 = p;
    while pj <= n {
        rhs += Ratio::new(n % pj, pj);
        pj = pj
            .checked_mul(p)
            .ok_or_else(|| Error::overflow("p^j exceeds 128 bits"))?;
    }
    let tail_den = (pj / p)
        .checked_mul(p - 1)
        .ok_or_else(|| Error::overflow("geometric tail denominator"))?;
    rhs += Ratio::new(n, tail_den);

    assert_eq!(
        lhs, rhs,
        "digit-sum / fractional-part identity failed for n = {n}, p = {p}"
    );
    Ok((lhs, rhs))
}
