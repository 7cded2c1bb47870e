//! Falsification scans for the open conjectures and the search for
//! `f(k, l)`, the least `n` with `(ln + 1) ∤ C(kn + ln, kn)`.
//!
//! A scan can only ever refute a conjecture. Every report states the
//! ranges it covered; surviving a scan says nothing beyond them.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::factorial_ratio::FactorialRatio;
use crate::primes::{factorize, is_prime};
use crate::scan::ordered_par_map;
use crate::sequences::SequenceId;
use crate::theorems::{Check, Verdict};
use crate::valuation::{digit_sum_unchecked, kummer};
use crate::{Error, Result};

/// Default search cap for `f(k, l)`.
pub const DEFAULT_F_CAP: u64 = 5000;

/// Cap used by [`f_table`]; the largest published value is 6462.
pub const F_TABLE_CAP: u64 = 10_000;

/// Published values `(k, l, f(k, l))`.
pub const PUBLISHED_F_VALUES: [(u64, u64, u64); 12] = [
    (7, 36, 279),
    (10, 192, 362),
    (11, 100, 1187),
    (13, 144, 2001),
    (22, 200, 6462),
    (31, 171, 1765),
    (43, 26, 640),
    (53, 32, 790),
    (67, 56, 2004),
    (73, 61, 2184),
    (74, 62, 885),
    (97, 81, 2904),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConjectureId {
    /// Digit sums of `(m^k - 1) n` and nonzero digits of `n (m^k - 1)/(m - 1)` in base `m`.
    #[serde(rename = "1.1")]
    C1_1,
    /// `21 t_n ≡ 0 (mod 10n + 3)` and its two refinements.
    #[serde(rename = "1.2")]
    C1_2,
    /// Which `(k, l)` give `C(kn,n) | C(ln,n) C(kln,ln-1)` (or `C(ln,n-1) C(kln,ln)`) for all `n`.
    #[serde(rename = "1.3")]
    C1_3,
}

impl ConjectureId {
    pub fn name(&self) -> &'static str {
        match self {
            ConjectureId::C1_1 => "1.1",
            ConjectureId::C1_2 => "1.2",
            ConjectureId::C1_3 => "1.3",
        }
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConjectureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1.1" => Ok(ConjectureId::C1_1),
            "1.2" => Ok(ConjectureId::C1_2),
            "1.3" => Ok(ConjectureId::C1_3),
            _ => Err(Error::invalid(format!("unknown conjecture {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: Vec<(String, u64)>,
    pub detail: String,
}

impl Counterexample {
    fn new(params: &[(&str, u64)], detail: String) -> Self {
        Counterexample {
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            detail,
        }
    }
}

/// A scanned parameter and its inclusive range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRange {
    pub name: String,
    pub min: u64,
    pub max: u64,
}

fn range(name: &str, min: u64, max: u64) -> ParamRange {
    ParamRange {
        name: name.to_string(),
        min,
        max,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub conjecture: ConjectureId,
    pub ranges: Vec<ParamRange>,
    pub cases: u64,
    /// Refutations of the conjecture.
    pub counterexamples: Vec<Counterexample>,
    /// Failures of something that is proven (or expected by construction);
    /// these point at a bug, not at the conjecture.
    pub alarms: Vec<Counterexample>,
    /// `C1_3` scans only: `(family, k, l)` triples that survived.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub survivors: Vec<(u8, u64, u64)>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    fn new(conjecture: ConjectureId, ranges: Vec<ParamRange>) -> Self {
        ScanReport {
            conjecture,
            ranges,
            cases: 0,
            counterexamples: Vec::new(),
            alarms: Vec::new(),
            survivors: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// No counterexample and no alarm.
    pub fn survived(&self) -> bool {
        self.counterexamples.is_empty() && self.alarms.is_empty()
    }
}

/// What a streaming scan hands to its observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finding<'a> {
    Counterexample(&'a Counterexample),
    Alarm(&'a Counterexample),
}

fn need_at_least(name: &str, v: u64, min: u64) -> Result<()> {
    if v < min {
        return Err(Error::invalid(format!("{name} must be >= {min}, got {v}")));
    }
    Ok(())
}

pub fn conj_1_1_scan(m_max: u64, k_max: u64, n_max: u64) -> Result<ScanReport> {
    conj_1_1_scan_with(m_max, k_max, n_max, |_| {})
}

/// Scans `2 <= m <= m_max`, `1 <= k <= k_max`, `1 <= n <= n_max`. For prime
/// `m` both claims are proven, so a violation there is reported as an alarm.
pub fn conj_1_1_scan_with(
    m_max: u64,
    k_max: u64,
    n_max: u64,
    mut on_finding: impl FnMut(Finding<'_>),
) -> Result<ScanReport> {
    need_at_least("m_max", m_max, 2)?;
    need_at_least("k_max", k_max, 1)?;
    need_at_least("n_max", n_max, 1)?;
    let too_big = || {
        Error::Range(format!(
            "(m^k - 1) n overflows 64 bits for m = {m_max}, k = {k_max}, n = {n_max}; choose smaller bounds"
        ))
    };
    u32::try_from(k_max)
        .ok()
        .and_then(|k| m_max.checked_pow(k))
        .and_then(|p| (p - 1).checked_mul(n_max))
        .ok_or_else(too_big)?;

    let start = Instant::now();
    let mut report = ScanReport::new(
        ConjectureId::C1_1,
        vec![range("m", 2, m_max), range("k", 1, k_max), range("n", 1, n_max)],
    );
    let moduli: Vec<u64> = (2..=m_max).collect();
    let per_base = |&m: &u64| -> (u64, Vec<Counterexample>) {
        let mut found = Vec::new();
        let mut cases = 0;
        let mut mk = 1u64;
        for k in 1..=k_max {
            mk *= m;
            let rep = (mk - 1) / (m - 1);
            for n in 1..=n_max {
                cases += 1;
                let x = (mk - 1) * n;
                let sum = digit_sum_unchecked(x, m);
                if sum < k * (m - 1) {
                    found.push(Counterexample::new(
                        &[("m", m), ("k", k), ("n", n)],
                        format!("digit sum of {x} in base {m} is {sum} < {}", k * (m - 1)),
                    ));
                }
                let y = rep * n;
                let nz = nonzero_digit_count(y, m);
                if nz < k {
                    found.push(Counterexample::new(
                        &[("m", m), ("k", k), ("n", n)],
                        format!("{y} has {nz} nonzero digits in base {m}, fewer than {k}"),
                    ));
                }
            }
        }
        (cases, found)
    };
    ordered_par_map(&moduli, per_base, |&m, (cases, found)| {
        report.cases += cases;
        for c in found {
            if is_prime(m) {
                on_finding(Finding::Alarm(&c));
                report.alarms.push(c);
            } else {
                on_finding(Finding::Counterexample(&c));
                report.counterexamples.push(c);
            }
        }
    });
    report.elapsed = start.elapsed();
    Ok(report)
}

fn nonzero_digit_count(mut x: u64, base: u64) -> u64 {
    let mut c = 0;
    while x > 0 {
        c += u64::from(!x.is_multiple_of(base));
        x /= base;
    }
    c
}

/// `t_n mod (10n + 3)`, from the valuation profile of `t_n`.
pub fn t_residue(n: u64) -> Result<u64> {
    need_at_least("n", n, 1)?;
    SequenceId::T.ratio().reconstruct_mod(n, 10 * n + 3)
}

/// `21 t_n ≡ 0 (mod 10n+3)`; `(10n+3) | 7 t_n` when `3 ∤ n`; `(10n+3) | 3 t_n` when `7 ∤ n+1`.
/// `t_n` is only ever reduced mod `10n+3`.
pub fn conj_1_2_check(n: u64) -> Result<Verdict> {
    need_at_least("n", n, 1)?;
    let modulus = 10 * n + 3;
    let residue = t_residue(n)?;
    let mut checks = Vec::new();
    let mut clause = |name: &str, factor: u64| {
        let r = (factor as u128 * residue as u128 % modulus as u128) as u64;
        checks.push(Check {
            clause: name.to_string(),
            ratio: format!("{factor} t_n mod {modulus}"),
            holds: r == 0,
            detail: format!("t_n ≡ {residue}, {factor} t_n ≡ {r} (mod {modulus})"),
            quotient_odd: None,
        });
    };
    clause("21 t_n ≡ 0 (mod 10n+3)", 21);
    if !n.is_multiple_of(3) {
        clause("3 ∤ n ⇒ (10n+3) | 7 t_n", 7);
    }
    if !(n + 1).is_multiple_of(7) {
        clause("7 ∤ n+1 ⇒ (10n+3) | 3 t_n", 3);
    }
    Ok(Verdict::from_checks(ConjectureId::C1_2, &[("n", n)], checks))
}

pub fn conj_1_2_scan(n_max: u64) -> Result<ScanReport> {
    conj_1_2_scan_with(n_max, |_| {})
}

pub fn conj_1_2_scan_with(n_max: u64, mut on_finding: impl FnMut(Finding<'_>)) -> Result<ScanReport> {
    need_at_least("n_max", n_max, 1)?;
    let start = Instant::now();
    let mut report = ScanReport::new(ConjectureId::C1_2, vec![range("n", 1, n_max)]);
    let ns: Vec<u64> = (1..=n_max).collect();
    let mut first_err = None;
    ordered_par_map(
        &ns,
        |&n| conj_1_2_check(n),
        |&n, v| match v {
            Err(e) => {
                first_err.get_or_insert(e);
            }
            Ok(v) => {
                report.cases += 1;
                if let Some(w) = &v.witness {
                    let c = Counterexample::new(&[("n", n)], format!("{}: {}", w.clause, w.detail));
                    on_finding(Finding::Counterexample(&c));
                    report.counterexamples.push(c);
                }
            }
        },
    );
    if let Some(e) = first_err {
        return Err(e);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `C(ln,n) C(kln,ln-1) / C(kn,n)` (family 1) or `C(ln,n-1) C(kln,ln) / C(kn,n)` (family 2).
pub fn conj_1_3_ratio(family: u8, k: u64, l: u64) -> FactorialRatio {
    let (k, l) = (k as i64, l as i64);
    let r = match family {
        1 => FactorialRatio::new().binom((l, 0), (1, 0)).binom((k * l, 0), (l, -1)),
        2 => FactorialRatio::new().binom((l, 0), (1, -1)).binom((k * l, 0), (l, 0)),
        _ => panic!("family must be 1 or 2"),
    };
    r.over_binom((k, 0), (1, 0))
}

/// Pairs the conjecture allows to divide for every `n`.
pub fn conj_1_3_family(family: u8, k: u64, l: u64) -> bool {
    match family {
        1 => k == l || l == 2 || (k.min(l), k.max(l)) == (3, 5),
        2 => k == 2 && (l + 1).is_power_of_two(),
        _ => false,
    }
}

pub fn conj_1_3_scan(k_max: u64, l_max: u64, n_max: u64) -> Result<ScanReport> {
    conj_1_3_scan_with(k_max, l_max, n_max, |_| {})
}

/// For each `2 <= k <= k_max`, `2 <= l <= l_max` and each family, tests the
/// divisibility for `1 <= n <= n_max`. Survivors outside the conjectured
/// family are counterexamples; members that fail are alarms.
pub fn conj_1_3_scan_with(
    k_max: u64,
    l_max: u64,
    n_max: u64,
    mut on_finding: impl FnMut(Finding<'_>),
) -> Result<ScanReport> {
    need_at_least("k_max", k_max, 2)?;
    need_at_least("l_max", l_max, 2)?;
    need_at_least("n_max", n_max, 2)?;
    let start = Instant::now();
    let mut report = ScanReport::new(
        ConjectureId::C1_3,
        vec![range("k", 2, k_max), range("l", 2, l_max), range("n", 1, n_max)],
    );
    let cells: Vec<(u8, u64, u64)> = [1u8, 2]
        .into_iter()
        .flat_map(|f| (2..=k_max).flat_map(move |k| (2..=l_max).map(move |l| (f, k, l))))
        .collect();
    let first_failure = |&(f, k, l): &(u8, u64, u64)| -> Result<Option<(u64, u64)>> {
        let ratio = conj_1_3_ratio(f, k, l);
        for n in 1..=n_max {
            if let crate::Integrality::NotIntegral { prime, .. } = ratio.is_integer_at(n)? {
                return Ok(Some((n, prime)));
            }
        }
        Ok(None)
    };
    let mut first_err = None;
    ordered_par_map(&cells, first_failure, |&(f, k, l), res| {
        let failure = match res {
            Ok(x) => x,
            Err(e) => {
                first_err.get_or_insert(e);
                return;
            }
        };
        report.cases += 1;
        let member = conj_1_3_family(f, k, l);
        let params = [("family", f as u64), ("k", k), ("l", l)];
        match (failure, member) {
            (None, true) => report.survivors.push((f, k, l)),
            (None, false) => {
                report.survivors.push((f, k, l));
                let c = Counterexample::new(
                    &params,
                    format!("divides for all n <= {n_max} but lies outside the conjectured family"),
                );
                on_finding(Finding::Counterexample(&c));
                report.counterexamples.push(c);
            }
            (Some((n, p)), true) => {
                let c = Counterexample::new(&params, format!("family member fails at n = {n} (prime {p})"));
                on_finding(Finding::Alarm(&c));
                report.alarms.push(c);
            }
            (Some(_), false) => {}
        }
    });
    if let Some(e) = first_err {
        return Err(e);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FStatus {
    /// Every prime factor of `k` divides `l`, so the divisibility holds for all `n`.
    Zero,
    Found(u64),
    UnknownUpTo(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FSearchResult {
    pub k: u64,
    pub l: u64,
    pub status: FStatus,
}

impl fmt::Display for FSearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            FStatus::Zero => write!(f, "f({},{}) = 0", self.k, self.l),
            FStatus::Found(n) => write!(f, "f({},{}) = {n}", self.k, self.l),
            FStatus::UnknownUpTo(cap) => write!(f, "f({},{}) > {cap} (unknown)", self.k, self.l),
        }
    }
}

/// Every prime factor of `k` divides `l`.
pub fn prime_factors_divide(k: u64, l: u64) -> bool {
    factorize(k).iter().all(|&(p, _)| l.is_multiple_of(p))
}

/// Whether `(ln + 1) | C(kn + ln, kn)`, decided prime by prime.
pub fn ln1_divides(k: u64, l: u64, n: u64) -> Result<bool> {
    let overflow = || Error::overflow(format!("kn + ln at k = {k}, l = {l}, n = {n}"));
    let ln = l.checked_mul(n).ok_or_else(overflow)?;
    let kn = k.checked_mul(n).ok_or_else(overflow)?;
    let top = kn.checked_add(ln).ok_or_else(overflow)?;
    let d = ln.checked_add(1).ok_or_else(overflow)?;
    Ok(factorize(d).into_iter().all(|(p, e)| kummer(top, kn, p) >= e as u64))
}

pub fn f_search(k: u64, l: u64, cap: u64) -> Result<FSearchResult> {
    if k == 0 || l == 0 {
        return Err(Error::invalid("k and l must be >= 1"));
    }
    if cap == 0 {
        return Err(Error::invalid("cap must be >= 1"));
    }
    let status = if prime_factors_divide(k, l) {
        FStatus::Zero
    } else {
        let mut status = FStatus::UnknownUpTo(cap);
        for n in 1..=cap {
            if !ln1_divides(k, l, n)? {
                status = FStatus::Found(n);
                break;
            }
        }
        status
    };
    Ok(FSearchResult { k, l, status })
}

/// Searches several pairs in parallel; results come back in input order.
pub fn f_search_many(pairs: &[(u64, u64)], cap: u64) -> Result<Vec<FSearchResult>> {
    pairs.par_iter().map(|&(k, l)| f_search(k, l, cap)).collect()
}

/// Recomputes the twelve published values and fails on any difference.
pub fn f_table() -> Result<Vec<FSearchResult>> {
    let pairs: Vec<(u64, u64)> = PUBLISHED_F_VALUES.iter().map(|&(k, l, _)| (k, l)).collect();
    let results = f_search_many(&pairs, F_TABLE_CAP)?;
    for (r, &(k, l, f)) in results.iter().zip(&PUBLISHED_F_VALUES) {
        if r.status != FStatus::Found(f) {
            return Err(Error::Mismatch(format!("f({k},{l}): published {f}, computed {r}")));
        }
    }
    Ok(results)
}
