//! Root identification by the parity of a Dedekind sum.
//!
//! For `N = pq` with Blum primes, `N = 1 (mod 4)`, so `s(h, N)` has an odd
//! denominator and `s(h, N) mod 2` is well defined. The two roots of equal
//! parity, `z` and `z (psi1 - psi2)`, always have opposite Dedekind parity.

use num_bigint::BigInt;
use rand::rngs::mock::StepRng;

use crate::dedekind::dedekind_parity;
use crate::keys::{check_unit, PrivateKey};
use crate::numtheory::modulo;
use crate::roots::{decryption_roots, parity};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub c: BigInt,
    pub b0: u8,
    pub b1: u8,
}

pub fn encrypt(m: &BigInt, n: &BigInt) -> Result<Ciphertext> {
    check_unit(m, n)?;
    Ok(Ciphertext {
        c: modulo(&(m * m), n),
        b0: parity(m),
        b1: dedekind_parity(m, n)?,
    })
}

pub fn decrypt(ct: &Ciphertext, sk: &PrivateKey) -> Result<BigInt> {
    sk.require_blum()?;
    if ct.b0 > 1 || ct.b1 > 1 {
        return Err(Error::Integrity("identification bits must be 0 or 1"));
    }
    let n = sk.n();
    let quad = decryption_roots(&ct.c, sk, &mut StepRng::new(0, 1))?;
    let mut found = None;
    for z in quad.with_parity(ct.b0) {
        if dedekind_parity(z, n)? == ct.b1 {
            if found.is_some() {
                return Err(Error::Integrity("both roots have the requested Dedekind parity"));
            }
            found = Some(z.clone());
        }
    }
    let m = found.ok_or(Error::Integrity("no root has the requested Dedekind parity"))?;
    match encrypt(&m, n) {
        Ok(check) if check == *ct => Ok(m),
        _ => Err(Error::Integrity("recovered message does not re-encrypt to the ciphertext")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::square_roots_blum;
    use num_integer::Integer;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn encrypt_examples() {
        let n = b(21);
        assert_eq!(encrypt(&b(10), &n).unwrap(), Ciphertext { c: b(16), b0: 0, b1: 0 });
        assert_eq!(encrypt(&b(4), &n).unwrap(), Ciphertext { c: b(16), b0: 0, b1: 1 });
        // s(1, 21) = 95/63
        assert_eq!(encrypt(&b(1), &n).unwrap(), Ciphertext { c: b(1), b0: 1, b1: 1 });
        assert!(matches!(encrypt(&b(2), &b(15)), Err(Error::Precondition(_))));
        assert_eq!(encrypt(&b(3), &n), Err(Error::SharedFactor { gcd: b(3) }));
    }

    #[test]
    fn decrypt_examples() {
        let sk = PrivateKey::from_primes(b(3), b(7)).unwrap();
        assert_eq!(decrypt(&Ciphertext { c: b(16), b0: 0, b1: 0 }, &sk).unwrap(), b(10));
        assert_eq!(decrypt(&Ciphertext { c: b(16), b0: 0, b1: 1 }, &sk).unwrap(), b(4));
    }

    #[test]
    fn exhaustive_round_trip() {
        for (p, q) in [(3, 7), (3, 11), (3, 19), (3, 23), (7, 11)] {
            let sk = PrivateKey::from_primes(b(p), b(q)).unwrap();
            let n = sk.n().clone();
            for m in (1..p * q).filter(|m| m.gcd(&(p * q)) == 1) {
                let ct = encrypt(&b(m), &n).unwrap();
                assert_eq!(decrypt(&ct, &sk).unwrap(), b(m));
            }
        }
    }

    #[test]
    fn same_parity_roots_have_opposite_dedekind_parity() {
        for (p, q) in [(3, 7), (3, 11), (3, 19), (3, 23), (7, 11)] {
            let sk = PrivateKey::from_primes(b(p), b(q)).unwrap();
            let n = sk.n().clone();
            for m in (1..p * q).filter(|m| m.gcd(&(p * q)) == 1) {
                let quad = square_roots_blum(&b(m * m), &sk).unwrap();
                for bit in [0, 1] {
                    let [z1, z2] = quad.with_parity(bit);
                    assert_eq!(
                        dedekind_parity(z1, &n).unwrap() ^ dedekind_parity(z2, &n).unwrap(),
                        1
                    );
                }
            }
        }
    }
}
