//! Williams' scheme: a parity bit plus a Jacobi-symbol bit, with the
//! message first multiplied by a public non-residue `S` when `(m/N) = -1`.
//!
//! Decryption uses `D = ((p-1)(q-1)/4 + 1) / 2`: for `(a/N) = 1`,
//! `(a^2)^D = ±a (mod N)`.

use num_bigint::BigInt;

use super::minus_bit;
use crate::keys::{check_unit, PrivateKey};
use crate::numtheory::{jacobi, mod_inverse, mod_pow, modulo};
use crate::roots::parity;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub n: BigInt,
    /// Smallest `S >= 2` with `(S/N) = -1`.
    pub s: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub c: BigInt,
    pub c1: u8,
    pub c2: u8,
}

pub fn setup(sk: &PrivateKey) -> Result<PublicKey> {
    sk.require_blum()?;
    let n = sk.n();
    let mut s = BigInt::from(2);
    while jacobi(&s, n)? != -1 {
        s += 1u32;
    }
    Ok(PublicKey { n: n.clone(), s })
}

/// `D = ((p-1)(q-1)/4 + 1) / 2`.
pub fn decryption_exponent(sk: &PrivateKey) -> BigInt {
    ((sk.p() - 1u32) * (sk.q() - 1u32) / 4u32 + 1u32) / 2u32
}

pub fn encrypt(m: &BigInt, pk: &PublicKey) -> Result<Ciphertext> {
    check_unit(m, &pk.n)?;
    let c1 = minus_bit(jacobi(m, &pk.n)?);
    let m_bar = if c1 == 1 { modulo(&(&pk.s * m), &pk.n) } else { m.clone() };
    Ok(Ciphertext {
        c: modulo(&(&m_bar * &m_bar), &pk.n),
        c2: parity(&m_bar),
        c1,
    })
}

pub fn decrypt(ct: &Ciphertext, sk: &PrivateKey, pk: &PublicKey) -> Result<BigInt> {
    sk.require_blum()?;
    if ct.c1 > 1 || ct.c2 > 1 {
        return Err(Error::Integrity("identification bits must be 0 or 1"));
    }
    let n = sk.n();
    let m1 = mod_pow(&ct.c, &decryption_exponent(sk), n)?;
    let m2 = modulo(&-&m1, n);
    let chosen = if parity(&m1) == ct.c2 {
        m1
    } else if parity(&m2) == ct.c2 {
        m2
    } else {
        return Err(Error::Integrity("no candidate has the requested parity"));
    };
    let m = if ct.c1 == 1 {
        modulo(&(mod_inverse(&pk.s, n)? * chosen), n)
    } else {
        chosen
    };
    match encrypt(&m, pk) {
        Ok(check) if check == *ct => Ok(m),
        _ => Err(Error::Integrity("recovered message does not re-encrypt to the ciphertext")),
    }
}

/// `(a^2)^D` equals `a` or `N - a` for every `a` with `(a/N) = 1`.
pub fn identity_holds(a: &BigInt, sk: &PrivateKey) -> Result<bool> {
    let n = sk.n();
    let r = mod_pow(&(a * a), &decryption_exponent(sk), n)?;
    let a = modulo(a, n);
    Ok(r == a || r == modulo(&-a, n))
}
