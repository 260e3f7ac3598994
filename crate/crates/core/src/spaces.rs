//! Weight-4 spaces on Gamma_0(N): dimension bookkeeping, the
//! Newman-Ligozat membership test for eta quotients, and the Eisenstein
//! generators (the weight-2 quasi-modular series, the weight-4 series, and
//! its character twists).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{
    divisors, euler_phi, prime_factors, rat_i64, sigma_k, valuation, KroneckerChar, Rat,
};
use crate::qseries::{EtaQuotient, QSeries};

/// Dimension data for weight 4 on Gamma_0(N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceDims {
    pub level: u64,
    /// dim of the Eisenstein subspace; equals the cusp count at weight 4.
    pub dim_eisenstein: usize,
    pub dim_cusp: usize,
    /// Index of Gamma_0(N) in the full modular group.
    pub index: u64,
    pub cusp_count: usize,
    pub elliptic2: u64,
    pub elliptic3: u64,
    pub genus: u64,
}

/// Index, elliptic point counts, cusp count, and genus by the classical
/// Gamma_0(N) formulas; the cusp dimension by the weight-4 valence formula
/// dim S_4 = 3(g - 1) + e2 + e3 + cusps.
pub fn dims(n: u64) -> SpaceDims {
    assert!(n >= 1, "dims requires a positive level");
    let primes = prime_factors(n);

    let mut index = n;
    for &p in &primes {
        index = index / p * (p + 1);
    }

    let elliptic2 = if n % 4 == 0 {
        0
    } else {
        primes
            .iter()
            .map(|&p| match p % 4 {
                1 => 2,
                3 => 0,
                _ => 1, // p = 2
            })
            .product()
    };
    let elliptic3 = if n % 9 == 0 {
        0
    } else {
        primes
            .iter()
            .map(|&p| match p % 3 {
                1 => 2,
                2 => 0,
                _ => 1, // p = 3
            })
            .product()
    };

    let cusp_count: u64 = divisors(n)
        .iter()
        .map(|&d| euler_phi(num_integer::gcd(d, n / d)))
        .sum();

    let twelve_g_minus_12 =
        index as i64 - 3 * elliptic2 as i64 - 4 * elliptic3 as i64 - 6 * cusp_count as i64;
    assert!(
        twelve_g_minus_12 % 12 == 0,
        "genus formula must give an integer at level {n}"
    );
    let genus = 1 + twelve_g_minus_12 / 12;
    assert!(genus >= 0);

    let dim_cusp = 3 * (genus - 1) + elliptic2 as i64 + elliptic3 as i64 + cusp_count as i64;
    assert!(dim_cusp >= 0, "weight-4 cusp dimension must be non-negative");

    SpaceDims {
        level: n,
        dim_eisenstein: cusp_count as usize,
        dim_cusp: dim_cusp as usize,
        index,
        cusp_count: cusp_count as usize,
        elliptic2,
        elliptic3,
        genus: genus as u64,
    }
}

/// Outcome of the Newman-Ligozat conditions for one eta quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LigozatReport {
    /// Conditions (i)-(v) hold: the quotient is a holomorphic modular form.
    pub modular: bool,
    /// Conditions (i)-(iv) plus the strict order condition (v') hold.
    pub cuspidal: bool,
    /// Half the exponent sum.
    pub weight: BigRational,
    /// Order at infinity: the order sum at d = N divided by 24.
    pub leading_exponent: BigRational,
}

/// Order sum at the cusp class of d: sum over delta of
/// gcd(delta, d)^2 / delta * r_delta, scaled by N to stay integral.
fn order_sum_scaled(e: &EtaQuotient, d: u64) -> i64 {
    let n = e.level();
    e.exponents()
        .iter()
        .map(|(&delta, &r)| {
            let g = num_integer::gcd(delta, d);
            (n / delta * g * g) as i64 * r
        })
        .sum()
}

/// Evaluate the Newman-Ligozat conditions at the quotient's level.
pub fn ligozat_check(e: &EtaQuotient) -> LigozatReport {
    let n = e.level();
    let sum_r = e.exponent_sum();
    let weighted = e.weighted_sum();
    let dual_weighted: i64 = e
        .exponents()
        .iter()
        .map(|(&d, &r)| (n / d) as i64 * r)
        .sum();

    // (i), (ii): both weighted sums divisible by 24
    let c1 = weighted % 24 == 0;
    let c2 = dual_weighted % 24 == 0;
    // (iii): prod delta^{r_delta} is a rational square
    let c3 = prime_factors(n).iter().all(|&p| {
        let v: i64 = e
            .exponents()
            .iter()
            .map(|(&d, &r)| valuation(d, p) as i64 * r)
            .sum();
        v % 2 == 0
    });
    // (iv): positive exponent sum divisible by 4
    let c4 = sum_r > 0 && sum_r % 4 == 0;
    // (v) / (v'): order sums at every divisor
    let mut all_nonneg = true;
    let mut all_positive = true;
    for d in divisors(n) {
        let s = order_sum_scaled(e, d);
        if s < 0 {
            all_nonneg = false;
        }
        if s <= 0 {
            all_positive = false;
        }
    }

    let base = c1 && c2 && c3 && c4;
    LigozatReport {
        modular: base && all_nonneg,
        cuspidal: base && all_positive,
        weight: Rat::new(BigInt::from(sum_r), BigInt::from(2)),
        leading_exponent: Rat::new(BigInt::from(weighted), BigInt::from(24)),
    }
}

/// How the dilation of a character-twisted series is read.
///
/// `Product` dilates the twisted series itself, so the character argument
/// scales along with the divisor sum. `Plain` keeps the character at the
/// outer index, which yields the zero series whenever the dilation shares
/// a factor with the conductor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CharReading {
    #[default]
    Product,
    Plain,
}

impl CharReading {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "product" => Some(CharReading::Product),
            "plain" => Some(CharReading::Plain),
            _ => None,
        }
    }
}

impl std::fmt::Display for CharReading {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharReading::Product => write!(f, "product"),
            CharReading::Plain => write!(f, "plain"),
        }
    }
}

/// One Eisenstein-side generator, before dilation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Weight-2 quasi-modular series 1 - 24 sum sigma(n) q^n. Used only to
    /// assemble the left-hand side, never inside a basis.
    WeightTwo,
    /// Weight-4 series 1 + 240 sum sigma_3(n) q^n.
    WeightFour,
    /// Character twist with zero constant term (conductor exceeds one).
    WeightFourChi(KroneckerChar),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisensteinGen {
    pub kind: GenKind,
    pub dilation: u64,
}

impl EisensteinGen {
    pub fn weight_two(dilation: u64) -> Self {
        EisensteinGen { kind: GenKind::WeightTwo, dilation }
    }

    pub fn weight_four(dilation: u64) -> Self {
        EisensteinGen { kind: GenKind::WeightFour, dilation }
    }

    pub fn twisted(chi: KroneckerChar, dilation: u64) -> Self {
        EisensteinGen { kind: GenKind::WeightFourChi(chi), dilation }
    }
}

/// Coefficient of q^n in the undilated character twist under the product
/// reading: sum over d | n of chi(d) chi(n/d) d^3.
fn twisted_coefficient(chi: &KroneckerChar, n: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for d in divisors(n) {
        let c = chi.eval(d as i64) * chi.eval((n / d) as i64);
        if c != 0 {
            acc += BigInt::from(c) * BigInt::from(d).pow(3);
        }
    }
    acc
}

/// Expand one Eisenstein generator to the requested truncation.
pub fn eisenstein_series(gen: &EisensteinGen, truncation: usize, reading: CharReading) -> QSeries {
    assert!(gen.dilation >= 1);
    match &gen.kind {
        GenKind::WeightTwo => QSeries::from_fn(rat_i64(1), truncation, |n| {
            Rat::from_integer(BigInt::from(-24) * sigma_k(n as i64, 1))
        })
        .dilate(gen.dilation),
        GenKind::WeightFour => QSeries::from_fn(rat_i64(1), truncation, |n| {
            Rat::from_integer(BigInt::from(240) * sigma_k(n as i64, 3))
        })
        .dilate(gen.dilation),
        GenKind::WeightFourChi(chi) => match reading {
            CharReading::Product => QSeries::from_fn(Rat::zero(), truncation, |n| {
                Rat::from_integer(twisted_coefficient(chi, n as u64))
            })
            .dilate(gen.dilation),
            CharReading::Plain => {
                let s = gen.dilation;
                QSeries::from_fn(Rat::zero(), truncation, |n| {
                    if n as u64 % s == 0 {
                        Rat::from_integer(
                            BigInt::from(chi.eval(n as i64)) * sigma_k((n as u64 / s) as i64, 3),
                        )
                    } else {
                        Rat::zero()
                    }
                })
            }
        },
    }
}
