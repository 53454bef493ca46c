//! Rabin key material.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use crate::numtheory::{crt_basis, gen_prime, is_prime, modulo};
use crate::{Error, Result};

/// Private key: the two primes of `N` and the CRT idempotents `psi1`, `psi2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    p: BigInt,
    q: BigInt,
    n: BigInt,
    psi1: BigInt,
    psi2: BigInt,
}

/// Public key: the modulus alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub n: BigInt,
}

impl PrivateKey {
    /// Builds a key from explicit primes. Used for toy keys and for keys read
    /// back from disk.
    pub fn from_primes(p: BigInt, q: BigInt) -> Result<Self> {
        for f in [&p, &q] {
            if f.is_even() || *f < BigInt::from(3) {
                return Err(Error::Precondition(format!("{f} is not an odd prime")));
            }
            if !is_prime(f) {
                return Err(Error::Precondition(format!("{f} is not prime")));
            }
        }
        let (psi1, psi2) = crt_basis(&p, &q)?;
        let n = &p * &q;
        Ok(Self { p, q, n, psi1, psi2 })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn psi1(&self) -> &BigInt {
        &self.psi1
    }

    pub fn psi2(&self) -> &BigInt {
        &self.psi2
    }

    /// True when both primes are congruent to 3 mod 4.
    pub fn is_blum(&self) -> bool {
        let four = BigInt::from(4);
        let three = BigInt::from(3);
        modulo(&self.p, &four) == three && modulo(&self.q, &four) == three
    }

    pub fn public_key(&self) -> PublicKey {
        PublicKey { n: self.n.clone() }
    }

    /// Reassembles `a1 (mod p)`, `a2 (mod q)` into a residue modulo `N`.
    pub fn crt_combine(&self, a1: &BigInt, a2: &BigInt) -> BigInt {
        modulo(&(a1 * &self.psi1 + a2 * &self.psi2), &self.n)
    }

    /// `psi1 - psi2 mod N`, the nontrivial square root of unity `a`.
    pub fn unity_root(&self) -> BigInt {
        modulo(&(&self.psi1 - &self.psi2), &self.n)
    }

    /// Fails with [`Error::WrongKeyClass`] unless the key is Blum.
    pub fn require_blum(&self) -> Result<()> {
        if self.is_blum() {
            Ok(())
        } else {
            Err(Error::WrongKeyClass)
        }
    }

    /// Checks that `m` is a unit in `[1, N)`.
    pub fn check_message(&self, m: &BigInt) -> Result<()> {
        check_unit(m, &self.n)
    }
}

impl PublicKey {
    pub fn new(n: BigInt) -> Self {
        Self { n }
    }
}

/// Messages must lie in `[1, N)` and be coprime to `N`.
pub(crate) fn check_unit(m: &BigInt, n: &BigInt) -> Result<()> {
    if *m < BigInt::one() || m >= n {
        return Err(Error::OutOfRange(m.clone()));
    }
    let g = m.gcd(n);
    if !g.is_one() {
        return Err(Error::SharedFactor { gcd: g });
    }
    Ok(())
}

/// Two distinct random primes of `bits` bits each.
///
/// Blum keys use `p = q = 3 (mod 4)`. Non-Blum keys take `p = 1 (mod 4)` and
/// draw the class of `q` at random, so at least one prime is `1 mod 4`.
pub fn keygen<R: Rng + ?Sized>(bits: u64, blum: bool, rng: &mut R) -> Result<(PrivateKey, PublicKey)> {
    if bits < 4 {
        return Err(Error::Precondition(format!(
            "primes must have at least 4 bits, got {bits}"
        )));
    }
    if blum && bits == 4 {
        // 11 is the only 4-bit prime congruent to 3 mod 4
        return Err(Error::Precondition(
            "no two distinct 4-bit primes are congruent to 3 mod 4".into(),
        ));
    }
    let p = gen_prime(bits, if blum { 3 } else { 1 }, rng)?;
    let q = loop {
        let class = if blum || rng.gen::<bool>() { 3 } else { 1 };
        let q = gen_prime(bits, class, rng)?;
        if q != p {
            break q;
        }
    };
    let sk = PrivateKey::from_primes(p, q)?;
    let pk = sk.public_key();
    Ok((sk, pk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn toy_keys() {
        let sk = PrivateKey::from_primes(b(3), b(7)).unwrap();
        assert_eq!((sk.n(), sk.psi1(), sk.psi2()), (&b(21), &b(7), &b(15)));
        assert!(sk.is_blum());
        let sk = PrivateKey::from_primes(b(5), b(13)).unwrap();
        assert_eq!((sk.n(), sk.psi1(), sk.psi2()), (&b(65), &b(26), &b(40)));
        assert!(!sk.is_blum());
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(PrivateKey::from_primes(b(3), b(3)).is_err());
        assert!(PrivateKey::from_primes(b(2), b(7)).is_err());
        assert!(PrivateKey::from_primes(b(9), b(7)).is_err());
        assert!(PrivateKey::from_primes(b(-3), b(7)).is_err());
    }

    #[test]
    fn keygen_classes() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let (sk, pk) = keygen(128, true, &mut rng).unwrap();
        assert!(sk.is_blum());
        assert_eq!(pk.n, sk.p() * sk.q());
        assert_eq!(sk.p().bits(), 128);
        assert_eq!(sk.q().bits(), 128);
        for _ in 0..10 {
            let (sk, _) = keygen(32, false, &mut rng).unwrap();
            assert!(!sk.is_blum());
            assert_ne!(sk.p(), sk.q());
        }
        let (sk, _) = keygen(4, false, &mut rng).unwrap();
        assert_eq!(sk.n(), &b(143));
        assert!(keygen(4, true, &mut rng).is_err());
        assert!(keygen(3, false, &mut rng).is_err());
    }

    #[test]
    fn idempotent_identities_hold_for_generated_keys() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for i in 0..20 {
            let (sk, _) = keygen(24 + i, i % 2 == 0, &mut rng).unwrap();
            let n = sk.n();
            assert_eq!(sk.psi1() * sk.psi2() % n, b(0));
            assert_eq!(sk.psi1() * sk.psi1() % n, *sk.psi1());
            assert_eq!(sk.psi2() * sk.psi2() % n, *sk.psi2());
            assert_eq!((sk.psi1() + sk.psi2()) % n, b(1));
        }
    }

    #[test]
    fn message_checks() {
        let sk = PrivateKey::from_primes(b(3), b(7)).unwrap();
        assert!(sk.check_message(&b(10)).is_ok());
        assert_eq!(sk.check_message(&b(7)), Err(Error::SharedFactor { gcd: b(7) }));
        assert_eq!(sk.check_message(&b(0)), Err(Error::OutOfRange(b(0))));
        assert_eq!(sk.check_message(&b(21)), Err(Error::OutOfRange(b(21))));
    }
}
