//! Variant I: the parity of `m` and `(1 + (m/N)) / 2` travel with `C = m^2`.
//!
//! The two roots of equal parity have opposite Jacobi symbols modulo `N`
//! when both primes are Blum, so the two bits single out `m`.

use num_bigint::BigInt;
use rand::rngs::mock::StepRng;

use super::plus_bit;
use crate::keys::{check_unit, PrivateKey};
use crate::numtheory::{jacobi, modulo};
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
        b1: plus_bit(jacobi(m, n)?),
    })
}

pub fn decrypt(ct: &Ciphertext, sk: &PrivateKey) -> Result<BigInt> {
    sk.require_blum()?;
    if ct.b0 > 1 || ct.b1 > 1 {
        return Err(Error::Integrity("identification bits must be 0 or 1"));
    }
    let n = sk.n();
    let quad = decryption_roots(&ct.c, sk, &mut StepRng::new(0, 1))?;
    let mut matches = Vec::with_capacity(1);
    for z in quad.with_parity(ct.b0) {
        if plus_bit(jacobi(z, n)?) == ct.b1 {
            matches.push(z.clone());
        }
    }
    match matches.as_slice() {
        [m] if encrypt(m, n).as_ref() == Ok(ct) => Ok(m.clone()),
        [_] => Err(Error::Integrity("recovered message does not re-encrypt to the ciphertext")),
        _ => Err(Error::Integrity("identification bits match no unique root")),
    }
}
