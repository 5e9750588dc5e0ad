//! Exponent bounds for `M(G,N)` and their arithmetic side conditions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ser_bigint;

/// `floor(log_b k)` for `k >= 1`; `0` for `k = 0` by convention.
pub fn floor_log(b: u64, k: u64) -> u32 {
    assert!(b >= 2);
    let mut m = 0;
    let mut acc = b;
    while acc <= k {
        m += 1;
        match acc.checked_mul(b) {
            Some(x) => acc = x,
            None => break,
        }
    }
    m
}

fn big_pow(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSet {
    /// `floor(log_p k)`
    pub m: u32,
    /// `p^(e + m(k-1))`
    #[serde(serialize_with = "ser_bigint")]
    pub thm27: BigInt,
    /// `p^(e(c-1))`, only when the class of `G` is known
    #[serde(serialize_with = "ser_opt_bigint")]
    pub jones: Option<BigInt>,
    /// `p^(e ceil(k/2))`
    #[serde(serialize_with = "ser_bigint")]
    pub ellis: BigInt,
    /// `p^(2e floor(log_2 k))`
    #[serde(serialize_with = "ser_bigint")]
    pub moravec: BigInt,
}

fn ser_opt_bigint<S: serde::Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_bigint(v, s),
        None => s.serialize_none(),
    }
}

/// The four bounds for `exp N = p^e`, pair class `k` and class `c` of `G`.
/// `k = 0` (trivial `N`) is read as `m = 0` with every bound equal to `p^e`
/// or less.
pub fn bound_formulas(p: u64, e: u64, k: u64, c: Option<u64>) -> BoundSet {
    let m = if k == 0 { 0 } else { floor_log(p, k) };
    let km1 = k.saturating_sub(1);
    BoundSet {
        m,
        thm27: big_pow(p, e + m as u64 * km1),
        jones: c.map(|c| big_pow(p, e * c.saturating_sub(1))),
        ellis: big_pow(p, e * k.div_ceil(2)),
        moravec: big_pow(p, 2 * e * if k == 0 { 0 } else { floor_log(2, k) as u64 }),
    }
}

/// Binomial coefficient with exact arithmetic.
pub fn binomial(n: &BigInt, s: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..s {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialViolation {
    pub p: u64,
    pub t: u64,
    pub k: u64,
    pub s: u64,
}

/// Checks `p^t | C(p^(t+m), s)` for `1 <= t <= t_max`, `1 <= k <= k_max`,
/// `m = floor(log_p k)` and `1 <= s <= k`.
pub fn binomial_divisibility_check(p: u64, t_max: u64, k_max: u64) -> Vec<BinomialViolation> {
    let mut out = Vec::new();
    for t in 1..=t_max {
        let pt = big_pow(p, t);
        for k in 1..=k_max {
            let m = floor_log(p, k) as u64;
            let n = big_pow(p, t + m);
            // C(n, s) for consecutive s
            let mut c = BigInt::one();
            for s in 1..=k {
                c = c * (&n - BigInt::from(s - 1)) / BigInt::from(s);
                if !c.is_multiple_of(&pt) {
                    out.push(BinomialViolation { p, t, k, s });
                }
            }
        }
    }
    out
}

/// Triples `(p, e, k)` with `2 <= k <= p - 1` where
/// `p^(e + m(k-1)) > p^(2e floor(log_2 k))`.
pub fn bound_improvement_check(primes: &[u64], e_max: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for &p in primes {
        for e in 1..=e_max {
            for k in 2..p {
                let b = bound_formulas(p, e, k, None);
                if b.thm27 > b.moravec {
                    out.push((p, e, k));
                }
            }
        }
    }
    out
}

/// `a | b` for nonzero `a`.
pub fn divides(a: &BigInt, b: &BigInt) -> bool {
    !a.is_zero() && b.is_multiple_of(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_examples() {
        let b = bound_formulas(2, 2, 6, None);
        assert_eq!(b.m, 2);
        assert_eq!(b.thm27, BigInt::from(4096));
        let b = bound_formulas(3, 1, 2, None);
        assert_eq!((b.m, b.thm27.clone()), (0, BigInt::from(3)));
        let b = bound_formulas(2, 1, 4, Some(3));
        assert_eq!(b.thm27, BigInt::from(128));
        assert_eq!(b.moravec, BigInt::from(16));
        assert_eq!(b.ellis, BigInt::from(4));
        assert_eq!(b.jones, Some(BigInt::from(4)));
    }

    #[test]
    fn logs() {
        assert_eq!(floor_log(2, 1), 0);
        assert_eq!(floor_log(2, 8), 3);
        assert_eq!(floor_log(3, 8), 1);
        assert_eq!(floor_log(3, 9), 2);
        assert_eq!(floor_log(2, u64::MAX), 63);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&BigInt::from(27), 3), BigInt::from(2925));
        assert_eq!(binomial(&BigInt::from(4), 2), BigInt::from(6));
        assert!(binomial_divisibility_check(2, 1, 2).is_empty());
        assert!(binomial_divisibility_check(3, 2, 3).is_empty());
    }

    #[test]
    fn the_check_detects_failures() {
        // without the extra p^m the divisibility fails: 2 does not divide C(2,2)
        let c = binomial(&BigInt::from(2), 2);
        assert!(!divides(&BigInt::from(2), &c));
    }

    #[test]
    fn improvement_inequality() {
        assert!(bound_improvement_check(&[2, 3, 5, 7, 11, 13], 6).is_empty());
    }
}
