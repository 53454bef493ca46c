//! Exact Dedekind sums.
//!
//! `s(h, k) = sum_{j=1}^{k-1} ((hj/k)) ((j/k))` where `((x))` is the
//! sawtooth function. [`dedekind_sum`] evaluates it in `O(log k)` rational
//! operations by reducing `h` modulo `k` and applying reciprocity
//! repeatedly, following the Euclidean algorithm on `(h, k)`.
//! [`dedekind_sum_direct`] is the `O(k)` definition kept as an oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact reduced fraction. `BigRational` keeps the denominator positive and
/// the fraction in lowest terms after every operation.
pub type Rational = BigRational;

/// `((x))`: `x - floor(x) - 1/2` for non-integers, `0` on integers.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - x.floor() - Rational::new(BigInt::one(), BigInt::from(2))
}

fn check_args(h: &BigInt, k: &BigInt) -> Result<()> {
    if !k.is_positive() {
        return Err(Error::Precondition(format!("k must be at least 1, got {k}")));
    }
    if !h.gcd(k).is_one() {
        return Err(Error::NotCoprime {
            h: h.clone(),
            k: k.clone(),
        });
    }
    Ok(())
}

/// `s(h, k)` by direct summation. Linear in `k`; only for testing.
///
/// For `0 < j < k` neither `j/k` nor `hj/k` is an integer, so each term is
/// `(2(hj mod k) - k)(2j - k) / (4k^2)`; the numerators are summed as
/// integers and the total reduced once.
pub fn dedekind_sum_direct(h: &BigInt, k: &BigInt) -> Result<Rational> {
    check_args(h, k)?;
    let step = h.mod_floor(k);
    let mut hj = BigInt::zero();
    let mut j = BigInt::one();
    let mut numerator = BigInt::zero();
    // ((k/k)) = 0, so the last term of the sum is dropped
    while &j < k {
        hj += &step;
        if &hj >= k {
            hj -= k;
        }
        numerator += (BigInt::from(2) * &hj - k) * (BigInt::from(2) * &j - k);
        j += 1u32;
    }
    Ok(Rational::new(numerator, BigInt::from(4) * k * k))
}

/// `s(h, k)` via reciprocity. `h` may be negative or exceed `k`.
pub fn dedekind_sum(h: &BigInt, k: &BigInt) -> Result<Rational> {
    check_args(h, k)?;
    if h.is_negative() {
        return dedekind_sum(&-h, k).map(|s| -s);
    }
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    let mut h = h.mod_floor(k);
    let mut k = k.clone();
    let mut acc = Rational::zero();
    let mut positive = true;
    // s(h,k) = -1/4 + (h^2 + k^2 + 1)/(12hk) - s(k mod h, h); s(0, 1) = 0
    while !k.is_one() {
        let term = Rational::new(&h * &h + &k * &k + 1u32, BigInt::from(12) * &h * &k) - &quarter;
        if positive {
            acc += term;
        } else {
            acc -= term;
        }
        positive = !positive;
        let next_h = k.mod_floor(&h);
        k = std::mem::replace(&mut h, next_h);
    }
    Ok(acc)
}

/// `s(h, k) mod 2` for `k = 1 (mod 4)`.
///
/// The reduced denominator is odd under that hypothesis, so the value modulo
/// 2 is the parity of the numerator.
pub fn dedekind_parity(h: &BigInt, k: &BigInt) -> Result<u8> {
    if k.mod_floor(&BigInt::from(4)) != BigInt::one() {
        return Err(Error::Precondition(format!(
            "Dedekind parity needs k = 1 mod 4, got k = {k}"
        )));
    }
    let s = dedekind_sum(h, k)?;
    if s.denom().is_even() {
        return Err(Error::Integrity("Dedekind sum has an even denominator"));
    }
    Ok(if s.numer().is_odd() { 1 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&r(5, 1)), r(0, 1));
        assert_eq!(sawtooth(&r(1, 3)), r(-1, 6));
        assert_eq!(sawtooth(&r(-1, 3)), r(1, 6));
        assert_eq!(sawtooth(&r(7, 2)), r(0, 1));
    }

    #[test]
    fn direct_matches_sawtooth_definition() {
        for k in 1i64..40 {
            for h in (0..k).filter(|h| h.gcd(&k) == 1) {
                let mut sum = Rational::zero();
                for j in 1..=k {
                    sum += sawtooth(&r(h * j, k)) * sawtooth(&r(j, k));
                }
                assert_eq!(dedekind_sum_direct(&b(h), &b(k)).unwrap(), sum, "s({h}, {k})");
            }
        }
    }

    #[test]
    fn direct_examples() {
        assert_eq!(dedekind_sum_direct(&b(1), &b(1)).unwrap(), r(0, 1));
        assert_eq!(dedekind_sum_direct(&b(1), &b(3)).unwrap(), r(1, 18));
        assert_eq!(dedekind_sum_direct(&b(2), &b(5)).unwrap(), r(0, 1));
        assert!(matches!(
            dedekind_sum_direct(&b(3), &b(21)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn fast_examples() {
        assert_eq!(dedekind_sum(&b(10), &b(21)).unwrap(), r(-40, 63));
        assert_eq!(dedekind_sum(&b(4), &b(21)).unwrap(), r(5, 63));
        assert_eq!(dedekind_sum(&b(-10), &b(21)).unwrap(), r(40, 63));
        assert_eq!(dedekind_sum(&b(1), &b(21)).unwrap(), r(95, 63));
        assert_eq!(dedekind_sum(&b(31), &b(21)).unwrap(), r(-40, 63));
        assert_eq!(dedekind_sum(&b(0), &b(1)).unwrap(), r(0, 1));
        assert!(dedekind_sum(&b(7), &b(21)).is_err());
        assert!(dedekind_sum(&b(1), &b(0)).is_err());
    }

    #[test]
    fn parity_examples() {
        assert_eq!(dedekind_parity(&b(10), &b(21)).unwrap(), 0);
        assert_eq!(dedekind_parity(&b(4), &b(21)).unwrap(), 1);
        // s(1, 5) = 1/5
        assert_eq!(dedekind_parity(&b(1), &b(5)).unwrap(), 1);
        assert!(matches!(dedekind_parity(&b(1), &b(7)), Err(Error::Precondition(_))));
    }

    #[test]
    fn fast_matches_direct_small() {
        for k in 1i64..=120 {
            for h in -k..2 * k {
                if h.gcd(&k) != 1 {
                    continue;
                }
                assert_eq!(
                    dedekind_sum(&b(h), &b(k)).unwrap(),
                    dedekind_sum_direct(&b(h.rem_euclid(k)), &b(k)).unwrap(),
                    "s({h}, {k})"
                );
            }
        }
    }

    #[test]
    fn large_arguments_stay_exact() {
        // k = 2^521 - 1 has a long Euclidean chain with 2^300 + 1
        let k = (BigInt::one() << 521) - 1;
        let h = (BigInt::one() << 300) + 1;
        let s1 = dedekind_sum(&h, &k).unwrap();
        let s2 = dedekind_sum(&h, &k).unwrap();
        assert_eq!(s1, s2);
        // reciprocity closes the loop
        let sk = dedekind_sum(&k, &h).unwrap();
        let rhs = Rational::new(BigInt::from(-1), BigInt::from(4))
            + (Rational::new(h.clone(), k.clone())
                + Rational::new(BigInt::one(), &h * &k)
                + Rational::new(k.clone(), h.clone()))
                / Rational::from_integer(BigInt::from(12));
        assert_eq!(s1 + sk, rhs);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
            (1i64..500, -2000i64..2000).prop_filter("coprime", |(k, h)| h.gcd(k) == 1)
        }

        proptest! {
            #[test]
            fn periodic_in_h((k, h) in coprime_pair(), shift in -20i64..20) {
                prop_assert_eq!(
                    dedekind_sum(&b(h), &b(k)).unwrap(),
                    dedekind_sum(&b(h + shift * k), &b(k)).unwrap()
                );
            }

            #[test]
            fn odd_in_h((k, h) in coprime_pair()) {
                prop_assert_eq!(
                    dedekind_sum(&b(-h), &b(k)).unwrap(),
                    -dedekind_sum(&b(h), &b(k)).unwrap()
                );
            }

            #[test]
            fn reciprocity(h in 1i64..1_000_000, k in 1i64..1_000_000) {
                prop_assume!(h.gcd(&k) == 1);
                let lhs = dedekind_sum(&b(h), &b(k)).unwrap() + dedekind_sum(&b(k), &b(h)).unwrap();
                let rhs = r(-1, 4) + (r(h, k) + r(1, h * k) + r(k, h)) / r(12, 1);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
