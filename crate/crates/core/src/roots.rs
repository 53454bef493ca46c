//! The four square roots of a residue modulo `N = pq` and their labels.
//!
//! With `u1, u2 = p - u1` the roots modulo `p` and `v1, v2 = q - v1` the
//! roots modulo `q`, the roots modulo `N` are
//!
//! ```text
//! x1 = u1 psi1 + v1 psi2     x2 = u1 psi1 + v2 psi2
//! x3 = u2 psi1 + v1 psi2     x4 = u2 psi1 + v2 psi2
//! ```
//!
//! `u1` and `v1` are always the even roots, so `x1` has two even residues,
//! `x4` two odd ones and `x2`, `x3` one of each. Since `x4 = N - x1` and
//! `x3 = N - x2` with `N` odd, each pair splits by parity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::rngs::mock::StepRng;
use rand::Rng;

use crate::keys::PrivateKey;
use crate::numtheory::{modulo, sqrt_mod_blum, tonelli_shanks};
use crate::{Error, Result};

/// The four canonically labeled roots of `x^2 = C (mod N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootQuad {
    pub x1: BigInt,
    pub x2: BigInt,
    pub x3: BigInt,
    pub x4: BigInt,
    /// Even root modulo `p`.
    pub u1: BigInt,
    pub u2: BigInt,
    /// Even root modulo `q`.
    pub v1: BigInt,
    pub v2: BigInt,
}

impl RootQuad {
    pub fn roots(&self) -> [&BigInt; 4] {
        [&self.x1, &self.x2, &self.x3, &self.x4]
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        self.roots().contains(&x)
    }

    /// The two roots with parity `bit`: one from `{x1, x4}`, one from `{x2, x3}`.
    pub fn with_parity(&self, bit: u8) -> [&BigInt; 2] {
        let first = if parity(&self.x1) == bit { &self.x1 } else { &self.x4 };
        let second = if parity(&self.x2) == bit { &self.x2 } else { &self.x3 };
        [first, second]
    }
}

/// The square roots of unity `{1, a, -a, -1}` with `a = psi1 - psi2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitRoots {
    pub one: BigInt,
    pub a: BigInt,
    pub minus_a: BigInt,
    pub minus_one: BigInt,
}

impl UnitRoots {
    pub fn elements(&self) -> [&BigInt; 4] {
        [&self.one, &self.a, &self.minus_a, &self.minus_one]
    }
}

/// `x mod 2` as a bit.
pub(crate) fn parity(x: &BigInt) -> u8 {
    if x.is_odd() {
        1
    } else {
        0
    }
}

fn prime_root<R: Rng + ?Sized>(c: &BigInt, prime: &BigInt, rng: &mut R) -> Result<BigInt> {
    let r = if modulo(prime, &BigInt::from(4)) == BigInt::from(3) {
        sqrt_mod_blum(c, prime)?
    } else {
        tonelli_shanks(c, prime, rng)?
    };
    Ok(if r.is_even() { r } else { prime - r })
}

/// All four roots of `x^2 = c (mod N)`.
///
/// The generator is consumed only for primes congruent to 1 mod 4.
pub fn square_roots<R: Rng + ?Sized>(c: &BigInt, sk: &PrivateKey, rng: &mut R) -> Result<RootQuad> {
    let n = sk.n();
    let c = modulo(c, n);
    let g = c.gcd(n);
    if !g.is_one() {
        return Err(Error::SharedFactor { gcd: g });
    }
    let (p, q) = (sk.p(), sk.q());
    let u1 = prime_root(&c, p, rng)?;
    let v1 = prime_root(&c, q, rng)?;
    let u2 = p - &u1;
    let v2 = q - &v1;
    Ok(RootQuad {
        x1: sk.crt_combine(&u1, &v1),
        x2: sk.crt_combine(&u1, &v2),
        x3: sk.crt_combine(&u2, &v1),
        x4: sk.crt_combine(&u2, &v2),
        u1,
        u2,
        v1,
        v2,
    })
}

/// [`square_roots`] for Blum keys, where root extraction is deterministic.
pub fn square_roots_blum(c: &BigInt, sk: &PrivateKey) -> Result<RootQuad> {
    sk.require_blum()?;
    square_roots(c, sk, &mut StepRng::new(0, 1))
}

/// Root extraction inside a decryption: a ciphertext without roots was
/// tampered with.
pub(crate) fn decryption_roots<R: Rng + ?Sized>(c: &BigInt, sk: &PrivateKey, rng: &mut R) -> Result<RootQuad> {
    square_roots(c, sk, rng).map_err(|e| match e {
        Error::NonResidue { .. } | Error::SharedFactor { .. } => {
            Error::Integrity("ciphertext is not a square modulo N")
        }
        other => other,
    })
}

/// `(x mod p mod 2, x mod q mod 2)` for each of `x1..x4`.
pub fn root_labels(rq: &RootQuad, sk: &PrivateKey) -> [(u8, u8); 4] {
    rq.roots()
        .map(|x| (parity(&modulo(x, sk.p())), parity(&modulo(x, sk.q()))))
}

pub fn unit_roots(sk: &PrivateKey) -> UnitRoots {
    let n = sk.n();
    let a = sk.unity_root();
    UnitRoots {
        one: BigInt::one(),
        minus_a: n - &a,
        minus_one: n - 1u32,
        a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keys::keygen;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;
    use std::collections::BTreeSet;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rng() -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(11)
    }

    fn toy() -> PrivateKey {
        PrivateKey::from_primes(b(3), b(7)).unwrap()
    }

    #[test]
    fn quad_of_16_mod_21() {
        let rq = square_roots(&b(16), &toy(), &mut rng()).unwrap();
        assert_eq!([&rq.x1, &rq.x2, &rq.x3, &rq.x4], [&b(11), &b(17), &b(4), &b(10)]);
        assert_eq!([&rq.u1, &rq.u2, &rq.v1, &rq.v2], [&b(2), &b(1), &b(4), &b(3)]);
        // brute force
        let brute: BTreeSet<i64> = (0..21).filter(|x| x * x % 21 == 16).collect();
        let got: BTreeSet<i64> = rq.roots().iter().map(|x| i64::try_from(*x).unwrap()).collect();
        assert_eq!(brute, got);
    }

    #[test]
    fn quad_of_unity() {
        let sk = toy();
        let rq = square_roots(&b(1), &sk, &mut rng()).unwrap();
        let got: BTreeSet<BigInt> = rq.roots().iter().map(|x| (*x).clone()).collect();
        let expected: BTreeSet<BigInt> = [1, 13, 8, 20].into_iter().map(b).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn quad_errors() {
        let sk = toy();
        assert!(matches!(
            square_roots(&b(5), &sk, &mut rng()),
            Err(Error::NonResidue { .. })
        ));
        assert_eq!(
            square_roots(&b(9), &sk, &mut rng()),
            Err(Error::SharedFactor { gcd: b(3) })
        );
    }

    #[test]
    fn labels_of_16_mod_21() {
        let sk = toy();
        let rq = square_roots(&b(16), &sk, &mut rng()).unwrap();
        assert_eq!(root_labels(&rq, &sk), [(0, 0), (0, 1), (1, 0), (1, 1)]);
        let rq = square_roots(&b(1), &sk, &mut rng()).unwrap();
        assert_eq!(root_labels(&rq, &sk), [(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn unit_roots_examples() {
        let u = unit_roots(&toy());
        assert_eq!(u.elements(), [&b(1), &b(13), &b(8), &b(20)]);
        let u = unit_roots(&PrivateKey::from_primes(b(5), b(13)).unwrap());
        assert_eq!(u.elements(), [&b(1), &b(51), &b(14), &b(64)]);
        for x in u.elements() {
            assert_eq!(x * x % 65, b(1));
        }
    }

    #[test]
    fn with_parity_picks_same_parity_pair() {
        let rq = square_roots(&b(16), &toy(), &mut rng()).unwrap();
        assert_eq!(rq.with_parity(0), [&b(10), &b(4)]);
        assert_eq!(rq.with_parity(1), [&b(11), &b(17)]);
    }

    #[test]
    fn random_quads_contain_message_and_form_coset() {
        let mut r = rng();
        for i in 0..200u64 {
            let (sk, _) = keygen(32 + (i % 97), i % 3 != 0, &mut r).unwrap();
            let n = sk.n().clone();
            let m = loop {
                let m = num_bigint::RandBigInt::gen_bigint_range(&mut r, &b(1), &n);
                if m.gcd(&n).is_one() {
                    break m;
                }
            };
            let rq = square_roots(&(&m * &m), &sk, &mut r).unwrap();
            assert!(rq.contains(&m));
            let a = sk.unity_root();
            let coset: BTreeSet<BigInt> = [
                m.clone(),
                modulo(&(&a * &m), &n),
                modulo(&-(&a * &m), &n),
                &n - &m,
            ]
            .into_iter()
            .collect();
            let quad: BTreeSet<BigInt> = rq.roots().iter().map(|x| (*x).clone()).collect();
            assert_eq!(coset, quad);
            assert_eq!(rq.x4, &n - &rq.x1);
            assert_eq!(rq.x3, &n - &rq.x2);
            assert_ne!(parity(&rq.x1), parity(&rq.x4));
            assert_ne!(parity(&rq.x2), parity(&rq.x3));
            assert_eq!(root_labels(&rq, &sk), [(0, 0), (0, 1), (1, 0), (1, 1)]);
        }
    }
}
