//! Primality, trial-division factoring and a process-wide prime table.
//!
//! The prime table is a grow-only segmented sieve. Readers share an
//! immutable snapshot behind an `Arc`; growth takes the write lock and
//! publishes a new snapshot, so a slice handed out earlier stays valid.

use std::ops::Deref;
use std::sync::{Arc, OnceLock, RwLock};

const SEGMENT: u64 = 1 << 16;

/// Deterministic trial division up to `sqrt(n)`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d <= n / d {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Rejects composites (and 0, 1) with an invalid-argument error.
pub fn require_prime(p: u64) -> crate::Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(crate::Error::invalid(format!("{p} is not prime")))
    }
}

/// Factors `n >= 1` by trial division. Returns `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut d = 5u64;
    let mut step = 2;
    while d <= n / d {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primes `<= limit` as a cheap shared view of the global table.
#[derive(Clone, Debug)]
pub struct PrimeSlice {
    table: Arc<Vec<u64>>,
    len: usize,
}

impl Deref for PrimeSlice {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.table[..self.len]
    }
}

struct Table {
    limit: u64,
    primes: Arc<Vec<u64>>,
}

fn table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| {
        RwLock::new(Table {
            limit: 1,
            primes: Arc::new(Vec::new()),
        })
    })
}

/// All primes `<= limit`, extending the shared table if needed.
pub fn primes_up_to(limit: u64) -> PrimeSlice {
    {
        let t = table().read().expect("prime table poisoned");
        if t.limit >= limit {
            return slice_of(&t.primes, limit);
        }
    }
    let mut t = table().write().expect("prime table poisoned");
    if t.limit < limit {
        let target = limit.max(t.limit.saturating_mul(2)).max(1024);
        let mut grown = Vec::clone(&t.primes);
        extend_sieve(&mut grown, t.limit + 1, target);
        t.primes = Arc::new(grown);
        t.limit = target;
    }
    slice_of(&t.primes, limit)
}

/// Current extent of the shared table (for tests and diagnostics).
pub fn sieved_limit() -> u64 {
    table().read().expect("prime table poisoned").limit
}

fn slice_of(primes: &Arc<Vec<u64>>, limit: u64) -> PrimeSlice {
    PrimeSlice {
        table: Arc::clone(primes),
        len: primes.partition_point(|&p| p <= limit),
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Appends the primes in `[lo, hi]` to `out`, one segment at a time.
fn extend_sieve(out: &mut Vec<u64>, lo: u64, hi: u64) {
    let lo = lo.max(2);
    if lo > hi {
        return;
    }
    let base = simple_sieve(isqrt(hi));
    let mut seg_lo = lo;
    let mut composite = vec![false; SEGMENT as usize];
    while seg_lo <= hi {
        let seg_hi = (seg_lo + SEGMENT - 1).min(hi);
        let width = (seg_hi - seg_lo + 1) as usize;
        composite[..width].fill(false);
        for &p in &base {
            if p * p > seg_hi {
                break;
            }
            let first = (p * p).max(seg_lo.div_ceil(p) * p);
            let mut j = first;
            while j <= seg_hi {
                composite[(j - seg_lo) as usize] = true;
                j += p;
            }
        }
        out.extend((0..width).filter(|&i| !composite[i]).map(|i| seg_lo + i as u64));
        seg_lo = seg_hi + 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primality() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_297)); // 641 * 6700417
        assert!(require_prime(9).is_err());
    }

    #[test]
    fn factorize_roundtrip() {
        for n in 1..5000u64 {
            let f = factorize(n);
            let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn segmented_sieve_matches_trial_division() {
        let ps = primes_up_to(200_000);
        let expected: Vec<u64> = (0..=200_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(&ps[..], &expected[..]);
        assert_eq!(primes_up_to(10).to_vec(), vec![2, 3, 5, 7]);
        assert!(sieved_limit() >= 200_000);
    }

    #[test]
    fn concurrent_growth() {
        let handles: Vec<_> = (1..8u64)
            .map(|i| std::thread::spawn(move || primes_up_to(i * 37_000).len()))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            let limit = (i as u64 + 1) * 37_000;
            let expected = (0..=limit).filter(|&n| is_prime(n)).count();
            assert_eq!(h.join().unwrap(), expected);
        }
    }
}
