//! Attacks and toy-scale constructions.
//!
//! Two distinct square roots of the same value that are not negatives of
//! each other factor `N`. This module shows how that leaks in practice:
//! through a published nontrivial root of unity, or through a decryptor that
//! honestly decrypts an envelope whose identification bit was flipped. It
//! also builds the exponential-size parity list and its interpolation
//! polynomial, which identify roots for any primes but only at desk scale.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::keys::PrivateKey;
use crate::numtheory::{is_prime, mod_pow, modulo, next_prime_above, to_u64};
use crate::schemes::jacobi1;
use crate::{Error, Result};

/// Largest modulus accepted by [`toy_parity_list`].
pub const PARITY_LIST_LIMIT: u64 = 1 << 20;
/// Largest modulus accepted by [`toy_parity_polynomial`].
pub const PARITY_POLYNOMIAL_LIMIT: u64 = 1 << 10;

/// `N = p q` with `1 < p < N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorResult {
    pub p: BigInt,
    pub q: BigInt,
}

impl FactorResult {
    fn from_divisor(d: BigInt, n: &BigInt) -> Result<Self> {
        if d.is_one() || d == *n {
            return Err(Error::TrivialPair);
        }
        Ok(Self { q: n / &d, p: d })
    }

    /// The two factors in ascending order.
    pub fn sorted(&self) -> (BigInt, BigInt) {
        if self.p <= self.q {
            (self.p.clone(), self.q.clone())
        } else {
            (self.q.clone(), self.p.clone())
        }
    }
}

/// `gcd(x - z, N)` for `x^2 = z^2 (mod N)` with `z != ±x`.
pub fn factor_from_roots(x: &BigInt, z: &BigInt, n: &BigInt) -> Result<FactorResult> {
    if modulo(&(x * x), n) != modulo(&(z * z), n) {
        return Err(Error::Precondition(format!(
            "{x} and {z} do not square to the same residue modulo {n}"
        )));
    }
    FactorResult::from_divisor((x - z).gcd(n), n)
}

/// `gcd(K + 1, N)` for a square root of unity `K` other than `±1`.
pub fn factor_from_unity_root(k: &BigInt, n: &BigInt) -> Result<FactorResult> {
    if !modulo(&(k * k), n).is_one() {
        return Err(Error::Precondition(format!("{k} is not a square root of 1 modulo {n}")));
    }
    FactorResult::from_divisor((k + 1u32).gcd(n), n)
}

/// The active attack against Variant I with a chosen message `m`: flip the
/// Jacobi bit, let the key holder decrypt, and combine the returned root
/// with `m`.
pub fn bitflip_attack_with_message(sk: &PrivateKey, m: &BigInt) -> Result<FactorResult> {
    let n = sk.n();
    let mut ct = jacobi1::encrypt(m, n)?;
    ct.b1 ^= 1;
    let z = jacobi1::decrypt(&ct, sk)?;
    factor_from_roots(m, &z, n)
}

/// [`bitflip_attack_with_message`] with a uniformly drawn unit `m`.
pub fn bitflip_attack_demo<R: Rng + ?Sized>(sk: &PrivateKey, rng: &mut R) -> Result<FactorResult> {
    sk.require_blum()?;
    let n = sk.n();
    let m = loop {
        let m = rng.gen_bigint_range(&BigInt::one(), n);
        if m.gcd(n).is_one() {
            break m;
        }
    };
    bitflip_attack_with_message(sk, &m)
}

fn small_modulus(sk: &PrivateKey, limit: u64) -> Result<u64> {
    match to_u64(sk.n()) {
        Some(n) if n <= limit => Ok(n),
        _ => Err(Error::ScaleLimit {
            n: sk.n().clone(),
            limit,
        }),
    }
}

fn label_bit(i: u64, p: u64, q: u64) -> u8 {
    ((i % p + i % q) % 2) as u8
}

/// Position `i` holds `(i mod p + i mod q) mod 2`, for `i` in `[0, N)`.
pub fn toy_parity_list(sk: &PrivateKey) -> Result<Vec<u8>> {
    let n = small_modulus(sk, PARITY_LIST_LIMIT)?;
    let (p, q) = (to_u64(sk.p()).unwrap_or(0), to_u64(sk.q()).unwrap_or(0));
    Ok((0..n).map(|i| label_bit(i, p, q)).collect())
}

/// `L(x) = sum_{j=1}^{N-1} (1 - (x - j)^(P-1)) b_j  (mod P)` by direct
/// summation, `b_j` being the parity-list entry. `P` must be a prime above
/// `N`.
pub fn toy_parity_polynomial(x: &BigInt, sk: &PrivateKey, big_p: &BigInt) -> Result<u8> {
    let n = small_modulus(sk, PARITY_POLYNOMIAL_LIMIT)?;
    if big_p <= sk.n() || !is_prime(big_p) {
        return Err(Error::Precondition(format!(
            "{big_p} is not a prime greater than {}",
            sk.n()
        )));
    }
    let (p, q) = (to_u64(sk.p()).unwrap_or(0), to_u64(sk.q()).unwrap_or(0));
    let exp = big_p - 1u32;
    let mut acc = BigInt::zero();
    for j in 1..n {
        let bit = label_bit(j, p, q);
        if bit == 0 {
            continue;
        }
        let term = BigInt::one() - mod_pow(&(x - j), &exp, big_p)?;
        acc += term;
    }
    let value = modulo(&acc, big_p);
    to_u64(&value)
        .filter(|&v| v <= 1)
        .map(|v| v as u8)
        .ok_or(Error::Integrity("interpolation polynomial left {0, 1}"))
}

/// The default interpolation prime: the smallest prime above `N`.
pub fn default_interpolation_prime(sk: &PrivateKey) -> BigInt {
    next_prime_above(sk.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keys::keygen;
    use crate::roots::square_roots;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rng() -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(99)
    }

    #[test]
    fn factor_from_roots_examples() {
        let n = b(21);
        assert_eq!(factor_from_roots(&b(11), &b(17), &n).unwrap(), FactorResult { p: b(3), q: b(7) });
        assert_eq!(factor_from_roots(&b(11), &b(10), &n), Err(Error::TrivialPair));
        assert_eq!(factor_from_roots(&b(11), &b(11), &n), Err(Error::TrivialPair));
        assert_eq!(factor_from_roots(&b(11), &b(4), &n).unwrap(), FactorResult { p: b(7), q: b(3) });
        assert!(matches!(factor_from_roots(&b(11), &b(5), &n), Err(Error::Precondition(_))));
    }

    #[test]
    fn factor_from_unity_root_examples() {
        let n = b(21);
        assert_eq!(factor_from_unity_root(&b(13), &n).unwrap(), FactorResult { p: b(7), q: b(3) });
        assert_eq!(factor_from_unity_root(&b(8), &n).unwrap(), FactorResult { p: b(3), q: b(7) });
        assert_eq!(factor_from_unity_root(&b(20), &n), Err(Error::TrivialPair));
        assert_eq!(factor_from_unity_root(&b(1), &n), Err(Error::TrivialPair));
        assert!(factor_from_unity_root(&b(2), &n).is_err());
    }

    #[test]
    fn every_nontrivial_root_pair_factors() {
        let mut r = rng();
        for (p, q) in [(3, 7), (3, 11), (5, 13)] {
            let sk = PrivateKey::from_primes(b(p), b(q)).unwrap();
            let n = sk.n().clone();
            for m in (1..p * q).filter(|m| m.gcd(&(p * q)) == 1) {
                let quad = square_roots(&b(m * m), &sk, &mut r).unwrap();
                let roots = quad.roots();
                for x in roots {
                    for z in roots {
                        let res = factor_from_roots(x, z, &n);
                        if x == z || *z == &n - x {
                            assert_eq!(res, Err(Error::TrivialPair));
                        } else {
                            let f = res.unwrap();
                            assert_eq!(f.sorted(), (b(p), b(q)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bitflip_on_toy_key() {
        let sk = PrivateKey::from_primes(b(3), b(7)).unwrap();
        let f = bitflip_attack_with_message(&sk, &b(10)).unwrap();
        assert_eq!(f, FactorResult { p: b(3), q: b(7) });
        let mut r = rng();
        for _ in 0..20 {
            assert_eq!(bitflip_attack_demo(&sk, &mut r).unwrap().sorted(), (b(3), b(7)));
        }
    }

    #[test]
    fn bitflip_on_random_keys() {
        let mut r = rng();
        for _ in 0..5 {
            let (sk, _) = keygen(128, true, &mut r).unwrap();
            let f = bitflip_attack_demo(&sk, &mut r).unwrap();
            assert_eq!(&f.p * &f.q, *sk.n());
            assert!(f.p == *sk.p() || f.p == *sk.q());
        }
        let (sk, _) = keygen(32, false, &mut r).unwrap();
        assert_eq!(bitflip_attack_demo(&sk, &mut r), Err(Error::WrongKeyClass));
    }

    #[test]
    fn parity_list_examples() {
        let sk = PrivateKey::from_primes(b(3), b(5)).unwrap();
        let list = toy_parity_list(&sk).unwrap();
        assert_eq!(list.len(), 15);
        assert_eq!(list[0], 0);
        assert_eq!(list[2], 0);
        assert_eq!(list[7], 1);
        let big = PrivateKey::from_primes(b(1031), b(1033)).unwrap();
        assert!(matches!(toy_parity_list(&big), Err(Error::ScaleLimit { .. })));
    }

    #[test]
    fn parity_polynomial_examples() {
        let sk = PrivateKey::from_primes(b(3), b(5)).unwrap();
        let big_p = default_interpolation_prime(&sk);
        assert_eq!(big_p, b(17));
        assert_eq!(toy_parity_polynomial(&b(2), &sk, &big_p).unwrap(), 0);
        assert_eq!(toy_parity_polynomial(&b(7), &sk, &big_p).unwrap(), 1);
        let list = toy_parity_list(&sk).unwrap();
        for x in 1..15 {
            assert_eq!(toy_parity_polynomial(&b(x), &sk, &big_p).unwrap(), list[x as usize]);
        }
        assert!(toy_parity_polynomial(&b(2), &sk, &b(13)).is_err());
        assert!(toy_parity_polynomial(&b(2), &sk, &b(21)).is_err());
        let big = PrivateKey::from_primes(b(37), b(41)).unwrap();
        assert!(matches!(
            toy_parity_polynomial(&b(2), &big, &b(1523)),
            Err(Error::ScaleLimit { .. })
        ));
    }
}
