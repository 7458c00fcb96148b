//! Maclaurin expansion of `num(t) / den(t)` over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Truncated expansion of a rational function; polynomials are stored
/// constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
    pub coefficients: Vec<BigInt>,
}

impl RationalSeries {
    /// Expands up to and including `t^order`. The pair is rescaled by `-1`
    /// when needed so the denominator has a positive constant term.
    pub fn new(num: &[BigInt], den: &[BigInt], order: usize) -> Result<Self> {
        let (mut num, mut den) = (num.to_vec(), den.to_vec());
        let d0 = den.first().cloned().unwrap_or_default();
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        if d0.is_negative() {
            num.iter_mut().for_each(|c| *c = -&*c);
            den.iter_mut().for_each(|c| *c = -&*c);
        }
        let mut coefficients: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = num.get(n).cloned().unwrap_or_default();
            for (j, d) in den.iter().enumerate().skip(1).take_while(|(j, _)| *j <= n) {
                acc -= d * &coefficients[n - j];
            }
            let (q, r) = acc.div_rem(&den[0]);
            if !r.is_zero() {
                return Err(Error::NonIntegral(n));
            }
            coefficients.push(q);
        }
        Ok(Self { numerator: num, denominator: den, coefficients })
    }
}

pub fn expand_rational_series(num: &[BigInt], den: &[BigInt], order: usize) -> Result<Vec<BigInt>> {
    Ok(RationalSeries::new(num, den, order)?.coefficients)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// `t^3 (6t^2 - 15t + 10) / (t - 1)^4`, the Hilbert series of the ideal
/// cutting out the nodes of a general quartic symmetroid.
pub fn symmetroid_hilbert_series(order: usize) -> Result<Vec<BigInt>> {
    expand_rational_series(&ints(&[0, 0, 0, 10, -15, 6]), &ints(&[1, -4, 6, -4, 1]), order)
}

/// True iff the expansion starts `10t^3 + 25t^4 + 46t^5` with nothing below `t^3`.
pub fn symmetroid_hilbert_check() -> bool {
    match symmetroid_hilbert_series(5) {
        Ok(c) => c == ints(&[0, 0, 0, 10, 25, 46]),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// Long division of `num` by a denominator with unit constant term,
    /// peeling one leading term per step.
    fn long_division(num: &[BigInt], den: &[BigInt], order: usize) -> Vec<BigInt> {
        let mut rem = num.to_vec();
        rem.resize(order + den.len() + 1, BigInt::zero());
        let mut out = Vec::new();
        for n in 0..=order {
            let q = &rem[n] * &den[0];
            for (j, d) in den.iter().enumerate() {
                let t = &q * d;
                rem[n + j] -= t;
            }
            out.push(q);
        }
        out
    }

    #[test]
    fn geometric_and_zero() {
        assert_eq!(expand_rational_series(&ints(&[1]), &ints(&[1, -1]), 5).unwrap(), ints(&[1; 6]));
        assert_eq!(expand_rational_series(&ints(&[]), &ints(&[1, -1]), 4).unwrap(), ints(&[0; 5]));
        assert_eq!(expand_rational_series(&ints(&[2]), &ints(&[-1, 1]), 2).unwrap(), ints(&[-2; 3]));
    }

    #[test]
    fn errors() {
        assert!(matches!(expand_rational_series(&ints(&[1]), &ints(&[0, 1]), 3), Err(Error::PoleAtOrigin)));
        assert!(matches!(expand_rational_series(&ints(&[1]), &ints(&[]), 3), Err(Error::PoleAtOrigin)));
        assert!(matches!(expand_rational_series(&ints(&[1]), &ints(&[2, 1]), 3), Err(Error::NonIntegral(0))));
        assert!(matches!(expand_rational_series(&ints(&[2]), &ints(&[2, 1]), 3), Err(Error::NonIntegral(1))));
    }

    #[test]
    fn hilbert_series() {
        assert!(symmetroid_hilbert_check());
        let c = symmetroid_hilbert_series(11).unwrap();
        assert_eq!(c[2], BigInt::zero());
        // sum_j num_j * C(n - j + 3, 3)
        let binom3 = |m: i64| if m < 3 { 0 } else { m * (m - 1) * (m - 2) / 6 };
        for (n, cn) in c.iter().enumerate() {
            let n = n as i64;
            let expected = 10 * binom3(n - 3 + 3) - 15 * binom3(n - 4 + 3) + 6 * binom3(n - 5 + 3);
            assert_eq!(*cn, BigInt::from(expected), "t^{n}");
        }
        let num = ints(&[0, 0, 0, 10, -15, 6]);
        let den = ints(&[1, -4, 6, -4, 1]);
        assert_eq!(long_division(&num, &den, 11), c);
    }

    #[test]
    fn sign_of_the_fourth_power_is_irrelevant() {
        let num = ints(&[0, 0, 0, 10, -15, 6]);
        let a = expand_rational_series(&num, &ints(&[1, -4, 6, -4, 1]), 20).unwrap();
        let neg_num: Vec<BigInt> = num.iter().map(|c| -c).collect();
        let b = expand_rational_series(&neg_num, &ints(&[-1, 4, -6, 4, -1]), 20).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn recurrence_matches_long_division(
            num in prop::collection::vec(-50i64..50, 0..8),
            tail in prop::collection::vec(-5i64..5, 0..6),
            unit in prop::bool::ANY,
        ) {
            let mut den = vec![if unit { 1 } else { -1 }];
            den.extend(tail);
            let (num, den) = (ints(&num), ints(&den));
            let series = expand_rational_series(&num, &den, 20).unwrap();
            prop_assert_eq!(&series, &long_division(&num, &den, 20));
            let prod = mul(&den, &series);
            for n in 0..=20 {
                prop_assert_eq!(&prod[n], &num.get(n).cloned().unwrap_or_default());
            }
        }
    }
}
