//! Cross-checks of the valuation path against naive big-integer arithmetic.

use binomdiv_core::conjectures::{conj_1_2_check, ln1_divides, t_residue, PUBLISHED_F_VALUES};
use binomdiv_core::sequences::{self, SequenceId};
use binomdiv_core::theorems::{bober_ratio, verify_1_4};
use binomdiv_core::{FactorialRatio, Sign};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};

fn fact(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn choose(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    fact(a) / (fact(b) * fact(a - b))
}

/// Exact quotient of the ratio, evaluated from factorials; asserts divisibility.
fn naive(r: &FactorialRatio, n: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for &(f, s) in r.factorial_terms() {
        let v = fact(f.eval(n).unwrap() as u64);
        match s {
            Sign::Num => num *= v,
            Sign::Den => den *= v,
        }
    }
    for &(f, s) in r.linear_terms() {
        let v = BigUint::from(f.eval(n).unwrap() as u64);
        match s {
            Sign::Num => num *= v,
            Sign::Den => den *= v,
        }
    }
    assert!((&num % &den).is_zero());
    num / den
}

fn named() -> Vec<SequenceId> {
    vec![
        SequenceId::Catalan,
        SequenceId::CatalanOrder(0),
        SequenceId::CatalanOrder(2),
        SequenceId::CatalanOrder(5),
        SequenceId::S,
        SequenceId::T,
        SequenceId::BigS(1),
        SequenceId::BigS(2),
        SequenceId::BigS(3),
        SequenceId::Q(0),
        SequenceId::Q(3),
        SequenceId::Q(11),
    ]
}

#[test]
fn sequences_match_naive_formulas() {
    for n in 1..=12u64 {
        // formulas written directly from binomials, independent of the ratio builders
        let s = choose(3 * n - 1, n - 1) * choose(15 * n, 3 * n) / ((6 * n + 1) * (12 * n + 1) * choose(5 * n, n));
        assert_eq!(sequences::seq_s(n).unwrap(), s);
        let t = choose(5 * n - 1, n - 1) * choose(15 * n, 5 * n) / ((10 * n + 1) * choose(3 * n, n));
        assert_eq!(sequences::seq_t(n).unwrap(), t);
        assert_eq!(sequences::catalan(n), choose(2 * n, n) / (n + 1));
        for k in 1..=3u32 {
            let q = (1u64 << k) - 1;
            let num = choose(2 * q * n, q * n) * choose(q * n, n);
            let den = BigUint::from(1u64 << (k - 1)) * ((q - 1) * n + 1) * choose(2 * n, n);
            assert!((&num % &den).is_zero());
            assert_eq!(sequences::seq_big_s(k, n).unwrap(), num / den);
        }
        for m in [0u64, 1, 4, 9] {
            let num = choose(2 * n, n) * choose(2 * m + 2 * n, 2 * n);
            let den = choose(m + n, n) * 2u8;
            assert_eq!(sequences::seq_q(m, n).unwrap(), num / den);
        }
    }
}

#[test]
fn reconstruct_matches_naive_ratio() {
    for id in named() {
        let r = id.ratio();
        for n in 1..=12 {
            assert_eq!(r.reconstruct(n).unwrap(), naive(&r, n), "{id} n={n}");
        }
    }
}

#[test]
fn reconstruct_mod_matches_reduction() {
    for id in named() {
        let r = id.ratio();
        for n in 1..=40 {
            let v = r.reconstruct(n).unwrap();
            for m in [2u64, 3, 10, 97, 10 * n + 3] {
                let expect = (&v % m).to_u64_digits().first().copied().unwrap_or(0);
                assert_eq!(r.reconstruct_mod(n, m).unwrap(), expect, "{id} n={n} m={m}");
            }
        }
    }
}

#[test]
fn profiles_stay_below_largest_argument() {
    let mut ratios: Vec<FactorialRatio> = named().iter().map(|id| id.ratio()).collect();
    ratios.push(bober_ratio(3, 5));
    ratios.push(bober_ratio(4, 7));
    for r in &ratios {
        for n in 1..=40 {
            let max = r.max_factorial_arg(n).unwrap();
            let prof = r.profile(n).unwrap();
            assert!(prof.entries().iter().all(|&(p, _)| p <= max));
        }
    }
}

#[test]
fn factorial_forms_of_s_and_t() {
    // the ratios written with single factorials must agree with the binomial forms
    let a: FactorialRatio = "(15n-1)! (2)! (4n)! / (12n+2)! (2n)! (5n-1)!".parse().unwrap();
    let b: FactorialRatio = "(15n-1)! (2n)! / (10n+1)! (4n)! (3n-1)!".parse().unwrap();
    for n in 1..=60 {
        assert_eq!(a.profile(n).unwrap(), SequenceId::S.ratio().profile(n).unwrap());
        assert_eq!(b.profile(n).unwrap(), SequenceId::T.ratio().profile(n).unwrap());
    }
}

#[test]
fn conjecture_1_2_modular_path_matches_direct() {
    for n in 1..=40u64 {
        let t = sequences::seq_t(n).unwrap();
        let m = 10 * n + 3;
        let r = (&t % m).to_u64_digits().first().copied().unwrap_or(0);
        assert_eq!(t_residue(n).unwrap(), r, "n={n}");
        let v = conj_1_2_check(n).unwrap();
        assert_eq!(v.holds(), (21 * r) % m == 0);
    }
}

#[test]
fn f_values_against_direct_division() {
    // direct big-integer check for the first witness of the smallest entry
    let (k, l, f) = PUBLISHED_F_VALUES[0];
    for n in [1, 2, 50, f - 1, f] {
        let direct = (choose(k * n + l * n, k * n) % (l * n + 1)).is_zero();
        assert_eq!(ln1_divides(k, l, n).unwrap(), direct, "n={n}");
    }
    assert!(!ln1_divides(k, l, f).unwrap());
}

#[test]
fn theorem_1_4_depends_on_k_mod_ln1() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(14);
    for _ in 0..50 {
        let (k, l, n) = (
            rng.gen_range(1..40u64),
            rng.gen_range(1..40u64),
            rng.gen_range(1..60u64),
        );
        let a = verify_1_4(k, l, n).unwrap();
        let b = verify_1_4(k + l * n + 1, l, n).unwrap();
        assert!(a.holds() && b.holds());
        let divisor = |v: &binomdiv_core::Verdict| v.checks[0].detail.clone();
        assert_eq!(divisor(&a), divisor(&b), "k={k} l={l} n={n}");
    }
}

#[test]
fn theorem_1_4_against_direct_division() {
    for k in 1..=6u64 {
        for l in 1..=6u64 {
            for n in 1..=12u64 {
                let d = (l * n + 1) / num_integer::gcd(k, l * n + 1);
                assert!((choose(k * n + l * n, k * n) % d).is_zero());
                assert!(verify_1_4(k, l, n).unwrap().holds());
            }
        }
    }
}
