//! Exact integer and rational arithmetic plus the elementary
//! number-theoretic functions used throughout the crate.
//!
//! - [`sigma_k`], [`sigma_k_ratio`]: divisor power sums with the
//!   "zero outside the naturals" convention
//! - [`divisors`], [`euler_phi`]: trial-division based (inputs stay small)
//! - [`kronecker`], [`KroneckerChar`]: the full Kronecker symbol and the
//!   quadratic Dirichlet characters built from it

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The coefficient field of every series and solved formula in this crate.
pub type Rat = BigRational;

/// Rational from a machine integer.
pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q from machine integers. Panics if `q == 0`.
pub fn rat_frac(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Serialize a rational as `p/q` with q > 0, including a unit denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `p/q` or a bare integer `p`.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// All positive divisors of `n` in increasing order.
///
/// Panics if `n < 1`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors requires n >= 1, got {n}");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Sum of the k-th powers of the positive divisors of `n`.
///
/// Returns 0 for `n <= 0`; the same convention makes expressions like
/// `sigma(n/d)` vanish when `d` does not divide `n`.
pub fn sigma_k(n: i64, k: u32) -> BigInt {
    if n <= 0 {
        return BigInt::zero();
    }
    let mut sum = BigInt::zero();
    for d in divisors(n as u64) {
        sum += BigInt::from(d).pow(k);
    }
    sum
}

/// `sigma_k(n/d)` when `d | n`, else 0. Panics if `d < 1`.
pub fn sigma_k_ratio(n: i64, d: u64, k: u32) -> BigInt {
    assert!(d >= 1, "sigma_k_ratio requires d >= 1");
    if n <= 0 || n % d as i64 != 0 {
        return BigInt::zero();
    }
    sigma_k(n / d as i64, k)
}

/// Euler's totient. Panics if `n < 1`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1, got {n}");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Distinct prime factors of `n` in increasing order.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// p-adic valuation of `n`. Panics if `p < 2` or `n == 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    assert!(p >= 2 && n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// The Kronecker symbol (a|n), the full extension of the Jacobi symbol to
/// all integer pairs, including n <= 0, even n, and the (a|0) rule.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1i64;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Split off the even part of n: (a|2) depends on a mod 8.
    if n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        let a8 = a.rem_euclid(8);
        let sym2 = if a8 == 1 || a8 == 7 { 1 } else { -1 };
        while n % 2 == 0 {
            n /= 2;
            result *= sym2;
        }
    }
    // Jacobi symbol (a|n) for odd positive n via reciprocity.
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let n8 = n % 8;
            if n8 == 3 || n8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// A quadratic Dirichlet character given by a Kronecker symbol (d|.).
///
/// The discriminant must be congruent to 0 or 1 mod 4 and have absolute
/// value at least 3, so the induced character is periodic with period
/// equal to its conductor `|d|` and has conductor greater than one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KroneckerChar {
    discriminant: i64,
}

impl KroneckerChar {
    pub fn new(discriminant: i64) -> Self {
        assert!(
            discriminant.rem_euclid(4) <= 1,
            "discriminant must be 0 or 1 mod 4, got {discriminant}"
        );
        assert!(
            discriminant.abs() >= 3,
            "conductor must exceed 1, got discriminant {discriminant}"
        );
        KroneckerChar { discriminant }
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn conductor(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    /// Character value at `n`, in {-1, 0, 1}.
    pub fn eval(&self, n: i64) -> i64 {
        kronecker(self.discriminant, n)
    }
}

/// Exact rational is stored reduced with a positive denominator.
pub fn assert_normalized(r: &Rat) {
    assert!(r.denom().is_positive(), "denominator must be positive");
    let g = num_integer::gcd(r.numer().abs(), r.denom().clone());
    assert!(g.is_one(), "fraction must be in lowest terms");
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_k(1, 3), BigInt::from(1));
        assert_eq!(sigma_k(0, 1), BigInt::from(0));
        assert_eq!(sigma_k(-7, 2), BigInt::from(0));
        assert_eq!(sigma_k(6, 1), BigInt::from(12));
        // direct enumeration oracle
        for n in 1..=120i64 {
            let mut s = BigInt::zero();
            for d in 1..=n {
                if n % d == 0 {
                    s += BigInt::from(d) * BigInt::from(d) * BigInt::from(d);
                }
            }
            assert_eq!(sigma_k(n, 3), s, "sigma_3({n})");
        }
    }

    #[test]
    fn sigma_ratio_examples() {
        assert_eq!(sigma_k_ratio(10, 9, 3), BigInt::from(0));
        assert_eq!(sigma_k_ratio(18, 9, 3), BigInt::from(9));
        assert_eq!(sigma_k_ratio(45, 45, 1), BigInt::from(1));
    }

    #[test]
    fn sigma_is_multiplicative() {
        for a in 1..=200i64 {
            for b in 1..=200i64 {
                if num_integer::gcd(a, b) == 1 && a * b <= 200 {
                    for k in [1u32, 3] {
                        assert_eq!(sigma_k(a * b, k), sigma_k(a, k) * sigma_k(b, k));
                    }
                }
            }
        }
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(45), vec![1, 3, 5, 9, 15, 45]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(64), vec![1, 2, 4, 8, 16, 32, 64]);
    }

    #[test]
    #[should_panic]
    fn divisors_rejects_zero() {
        divisors(0);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(12), 4);
        // direct count oracle
        for n in 1..=300u64 {
            let count = (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), count, "phi({n})");
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 7), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-3, 4), 1);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        // classical table values
        assert_eq!(kronecker(2, 7), 1);
        assert_eq!(kronecker(2, 3), -1);
        assert_eq!(kronecker(-1, -1), -1);
        assert_eq!(kronecker(3, -5), kronecker(3, 5));
    }

    #[test]
    fn kronecker_char_tables() {
        // (-4|n): 1 if n = 1 mod 4, -1 if n = 3 mod 4, 0 on evens.
        let chi4 = KroneckerChar::new(-4);
        for n in 0..=10_000i64 {
            let expected = match n.rem_euclid(4) {
                1 => 1,
                3 => -1,
                _ => 0,
            };
            assert_eq!(chi4.eval(n), expected, "(-4|{n})");
        }
        // (-3|n): 1 if n = 1 mod 3, -1 if n = 2 mod 3, 0 on multiples of 3.
        let chi3 = KroneckerChar::new(-3);
        for n in 0..=10_000i64 {
            let expected = match n.rem_euclid(3) {
                1 => 1,
                2 => -1,
                _ => 0,
            };
            assert_eq!(chi3.eval(n), expected, "(-3|{n})");
        }
    }

    #[test]
    fn kronecker_multiplicative_bottom() {
        for m in [-4i64, -3] {
            for a in 1..=100i64 {
                for b in 1..=100i64 {
                    assert_eq!(kronecker(m, a * b), kronecker(m, a) * kronecker(m, b));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rational_field_properties(
            an in -50i64..50, ad in 1i64..20,
            bn in -50i64..50, bd in 1i64..20,
            cn in -50i64..50, cd in 1i64..20,
        ) {
            let a = rat_frac(an, ad);
            let b = rat_frac(bn, bd);
            let c = rat_frac(cn, cd);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            assert_normalized(&(&a * &b));
            assert_normalized(&(&a - &b));
            if !b.is_zero() {
                prop_assert_eq!(&a / &b * &b, a.clone());
            }
        }

        #[test]
        fn rat_string_round_trip(p in -1000i64..1000, q in 1i64..1000) {
            let r = rat_frac(p, q);
            prop_assert_eq!(rat_from_str(&rat_to_string(&r)).unwrap(), r);
        }
    }
}
