//! Exact defects (left side minus right side) of five floor-function
//! inequalities, and exhaustive scans over residue classes.
//!
//! Each defect depends on `k`, `l`, `n` only through their residues mod
//! `m`: every floor term is `floor((c x + d) / m)`, and replacing `x` by
//! `x + m` shifts the terms by integers that cancel across each inequality
//! because the linear parts of the two sides agree. Scanning
//! `0 <= k, l, n < m` therefore covers all integers.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::scan::ordered_par_map;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InequalityTheorem {
    #[serde(rename = "2.1")]
    T2_1,
    #[serde(rename = "2.2")]
    T2_2,
    #[serde(rename = "2.3i")]
    T2_3i,
    #[serde(rename = "2.3ii")]
    T2_3ii,
    #[serde(rename = "3.3")]
    L3_3,
    /// The fractional-part lemma; checked by [`check_lemma_2_1`], not by residue scans.
    #[serde(rename = "L2.1")]
    L2_1,
}

impl InequalityTheorem {
    pub const ALL: [InequalityTheorem; 6] = [
        InequalityTheorem::T2_1,
        InequalityTheorem::T2_2,
        InequalityTheorem::T2_3i,
        InequalityTheorem::T2_3ii,
        InequalityTheorem::L3_3,
        InequalityTheorem::L2_1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InequalityTheorem::T2_1 => "2.1",
            InequalityTheorem::T2_2 => "2.2",
            InequalityTheorem::T2_3i => "2.3i",
            InequalityTheorem::T2_3ii => "2.3ii",
            InequalityTheorem::L3_3 => "3.3",
            InequalityTheorem::L2_1 => "L2.1",
        }
    }

    /// Smallest modulus the statement covers.
    pub fn min_modulus(&self) -> i64 {
        match self {
            InequalityTheorem::T2_2 => 3,
            InequalityTheorem::T2_3i | InequalityTheorem::T2_3ii => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for InequalityTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityTheorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityTheorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown inequality {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub theorem: InequalityTheorem,
    pub modulus: i64,
    /// Residues of the arguments mod `modulus` (`k`, `l` only where the inequality has them).
    pub k: Option<i64>,
    pub l: Option<i64>,
    pub n: i64,
    pub defect: i64,
    pub exception_expected: bool,
}

impl DefectReport {
    /// Defect agrees with the classification: `-1` on exceptions, `>= 0` elsewhere.
    pub fn consistent(&self) -> bool {
        if self.exception_expected {
            self.defect == -1
        } else {
            self.defect >= 0
        }
    }
}

fn fl(a: i128, m: i64) -> i64 {
    a.div_euclid(m as i128) as i64
}

fn check_modulus(theorem: InequalityTheorem, m: i64) -> Result<()> {
    if m < theorem.min_modulus() {
        return Err(Error::invalid(format!(
            "inequality {theorem} needs m >= {}, got {m}",
            theorem.min_modulus()
        )));
    }
    Ok(())
}

pub fn defect_2_1(m: i64, k: i64, n: i64) -> Result<DefectReport> {
    check_modulus(InequalityTheorem::T2_1, m)?;
    let (k, n) = (k as i128, n as i128);
    let defect = fl(2 * k * n, m) - fl(k * n, m) + fl((k - 1) * n, m) - fl(2 * (k - 1) * n, m) - fl(n + 1, m)
        + fl(2 * k - 1, m)
        - fl(2 * k - 2, m);
    let (kr, nr) = (k.rem_euclid(m as i128) as i64, n.rem_euclid(m as i128) as i64);
    let exception = m % 2 == 0 && kr == (m / 2 + 1) % m && nr == m - 1;
    Ok(DefectReport {
        theorem: InequalityTheorem::T2_1,
        modulus: m,
        k: Some(kr),
        l: None,
        n: nr,
        defect,
        exception_expected: exception,
    })
}

pub fn defect_2_2(m: i64, k: i64, n: i64) -> Result<DefectReport> {
    check_modulus(InequalityTheorem::T2_2, m)?;
    let (k, n) = (k as i128, n as i128);
    let defect =
        fl(2 * k * n, m) + fl(n, m) + fl(k + 1, m) - fl(k, m) - fl(2 * n, m) - fl(k * n, m) - fl((k - 1) * n + 1, m);
    Ok(DefectReport {
        theorem: InequalityTheorem::T2_2,
        modulus: m,
        k: Some(k.rem_euclid(m as i128) as i64),
        l: None,
        n: n.rem_euclid(m as i128) as i64,
        defect,
        exception_expected: false,
    })
}

pub fn defect_2_3_i(m: i64, n: i64) -> Result<DefectReport> {
    check_modulus(InequalityTheorem::T2_3i, m)?;
    let n = n as i128;
    let defect = fl(15 * n - 1, m) + fl(2, m) + fl(4 * n, m) - fl(12 * n + 2, m) - fl(2 * n, m) - fl(5 * n - 1, m);
    let nr = n.rem_euclid(m as i128) as i64;
    Ok(DefectReport {
        theorem: InequalityTheorem::T2_3i,
        modulus: m,
        k: None,
        l: None,
        n: nr,
        defect,
        exception_expected: m % 3 == 0 && nr == 2 * m / 3,
    })
}

pub fn defect_2_3_ii(m: i64, n: i64) -> Result<DefectReport> {
    check_modulus(InequalityTheorem::T2_3ii, m)?;
    let n = n as i128;
    let defect = fl(15 * n - 1, m) + fl(2 * n, m) - fl(10 * n + 1, m) - fl(4 * n, m) - fl(3 * n - 1, m);
    let nr = n.rem_euclid(m as i128) as i64;
    Ok(DefectReport {
        theorem: InequalityTheorem::T2_3ii,
        modulus: m,
        k: None,
        l: None,
        n: nr,
        defect,
        exception_expected: m % 5 == 0 && (nr == 2 * m / 5 || nr == 4 * m / 5),
    })
}

pub fn defect_3_3(m: i64, k: i64, l: i64, n: i64) -> Result<DefectReport> {
    check_modulus(InequalityTheorem::L3_3, m)?;
    let (k, l, n) = (k as i128, l as i128, n as i128);
    let defect = fl(k * n + l * n, m) - fl(k * n, m) - fl(l * n + 1, m) + fl(k, m) - fl(k - 1, m);
    let r = |x: i128| x.rem_euclid(m as i128) as i64;
    Ok(DefectReport {
        theorem: InequalityTheorem::L3_3,
        modulus: m,
        k: Some(r(k)),
        l: Some(r(l)),
        n: r(n),
        defect,
        exception_expected: false,
    })
}

/// Defect of `theorem` at `(m, k, l, n)`; unused arguments are ignored.
pub fn defect(theorem: InequalityTheorem, m: i64, k: i64, l: i64, n: i64) -> Result<DefectReport> {
    match theorem {
        InequalityTheorem::T2_1 => defect_2_1(m, k, n),
        InequalityTheorem::T2_2 => defect_2_2(m, k, n),
        InequalityTheorem::T2_3i => defect_2_3_i(m, n),
        InequalityTheorem::T2_3ii => defect_2_3_ii(m, n),
        InequalityTheorem::L3_3 => defect_3_3(m, k, l, n),
        InequalityTheorem::L2_1 => Err(Error::invalid("L2.1 has no residue defect; use check_lemma_2_1")),
    }
}

/// Outcome of an exhaustive residue scan for one inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueScan {
    pub theorem: InequalityTheorem,
    pub m_min: i64,
    pub m_max: i64,
    pub cases: u64,
    /// Residue classes where the defect was `-1` as classified.
    pub exceptions: u64,
    /// Moduli at which at least one exception class occurred.
    pub exception_moduli: Vec<i64>,
    pub defect_min: i64,
    pub defect_max: i64,
    /// First residue tuple (in `(m, k, l, n)` lexicographic order) whose
    /// defect contradicts the classification.
    pub mismatch: Option<DefectReport>,
}

impl ResidueScan {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

#[derive(Default)]
struct ModulusTally {
    cases: u64,
    exceptions: u64,
    min: i64,
    max: i64,
    mismatch: Option<DefectReport>,
}

fn scan_modulus(theorem: InequalityTheorem, m: i64) -> ModulusTally {
    let mut t = ModulusTally {
        min: i64::MAX,
        max: i64::MIN,
        ..Default::default()
    };
    let has_k = matches!(
        theorem,
        InequalityTheorem::T2_1 | InequalityTheorem::T2_2 | InequalityTheorem::L3_3
    );
    let has_l = theorem == InequalityTheorem::L3_3;
    for k in 0..if has_k { m } else { 1 } {
        for l in 0..if has_l { m } else { 1 } {
            for n in 0..m {
                let r = defect(theorem, m, k, l, n).expect("modulus validated");
                t.cases += 1;
                t.min = t.min.min(r.defect);
                t.max = t.max.max(r.defect);
                if r.exception_expected && r.defect == -1 {
                    t.exceptions += 1;
                }
                if !r.consistent() && t.mismatch.is_none() {
                    t.mismatch = Some(r);
                }
            }
        }
    }
    t
}

/// Checks every residue tuple for every modulus up to `m_max`.
pub fn exhaustive_scan(theorem: InequalityTheorem, m_max: i64) -> Result<ResidueScan> {
    if theorem == InequalityTheorem::L2_1 {
        return Err(Error::invalid("L2.1 is checked by check_lemma_2_1"));
    }
    let m_min = theorem.min_modulus();
    check_modulus(theorem, m_max)?;
    let moduli: Vec<i64> = (m_min..=m_max).collect();
    let mut scan = ResidueScan {
        theorem,
        m_min,
        m_max,
        cases: 0,
        exceptions: 0,
        exception_moduli: Vec::new(),
        defect_min: i64::MAX,
        defect_max: i64::MIN,
        mismatch: None,
    };
    ordered_par_map(
        &moduli,
        |&m| scan_modulus(theorem, m),
        |&m, t| {
            scan.cases += t.cases;
            scan.exceptions += t.exceptions;
            if t.exceptions > 0 {
                scan.exception_moduli.push(m);
            }
            scan.defect_min = scan.defect_min.min(t.min);
            scan.defect_max = scan.defect_max.max(t.max);
            if scan.mismatch.is_none() {
                scan.mismatch = t.mismatch;
            }
        },
    );
    Ok(scan)
}

type Q = Ratio<i64>;

fn frac(x: Q) -> Q {
    x - x.floor()
}

/// `{12x} + {5x} + {2x} - {4x} - {15x}`.
pub fn lemma_2_1_defect(x: Q) -> Q {
    let s = |c: i64| frac(x * c);
    s(12) + s(5) + s(2) - s(4) - s(15)
}

/// `None` when `{5x} >= {2x} >= 1/2` fails, else whether `{5x} >= 2/3`.
pub fn lemma_2_1_second(x: Q) -> Option<bool> {
    let f5 = frac(x * 5);
    let f2 = frac(x * 2);
    (f5 >= f2 && f2 >= Q::new(1, 2)).then(|| f5 >= Q::new(2, 3))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub den_max: i64,
    /// Grid points `j/60` and midpoints `(2j+1)/120` evaluated for part (i).
    pub first_points: u64,
    /// Rationals `j/m` with `m <= den_max` examined for part (ii).
    pub second_points: u64,
    /// How many of them satisfied the hypothesis of part (ii).
    pub second_hypotheses: u64,
    pub violation: Option<String>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Part (i) on the sixtieths grid, where the left side is constant on each
/// `[j/60, (j+1)/60)` since all breakpoints are multiples of 1/60 and the
/// slopes cancel; confirmed by comparing each cell with its midpoint.
/// Part (ii) at every `j/m` with `m <= den_max`.
pub fn check_lemma_2_1(den_max: i64) -> Result<LemmaReport> {
    if den_max < 1 {
        return Err(Error::invalid("den_max must be >= 1"));
    }
    let mut report = LemmaReport {
        den_max,
        first_points: 0,
        second_points: 0,
        second_hypotheses: 0,
        violation: None,
    };
    for j in 0..60 {
        let at = lemma_2_1_defect(Q::new(j, 60));
        let mid = lemma_2_1_defect(Q::new(2 * j + 1, 120));
        report.first_points += 2;
        if at < Q::from_integer(0) {
            report
                .violation
                .get_or_insert(format!("(i) fails at x = {j}/60: defect {at}"));
        }
        if at != mid {
            report
                .violation
                .get_or_insert(format!("(i) not constant on [{j}/60, {}/60): {at} vs {mid}", j + 1));
        }
    }
    for m in 1..=den_max {
        for j in 0..m {
            report.second_points += 1;
            let x = Q::new(j, m);
            match lemma_2_1_second(x) {
                None => {}
                Some(ok) => {
                    report.second_hypotheses += 1;
                    if !ok {
                        report
                            .violation
                            .get_or_insert(format!("(ii) fails at x = {j}/{m}: {{5x}} = {}", frac(x * 5)));
                    }
                }
            }
        }
    }
    Ok(report)
}
