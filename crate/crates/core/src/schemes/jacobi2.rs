//! Variant II: no side bits. The parity and Jacobi bit of `m` are folded
//! into the ciphertext itself through a public `xi` with `(xi/p) = 1` and
//! `(xi/q) = -1`:
//!
//! ```text
//! C = m^2 * (-1)^b1 * xi^b0 (mod N),  b0 = m mod 2,  b1 = (1 - (m/N)) / 2
//! ```
//!
//! Since `(C/N) = (-1)^b0` and `(C/q) = (-1)^(b0 + b1)`, the decryptor reads
//! `b0` from `(C/N)`, then `b1` from `(C/q)`, and only then strips both
//! factors. (Stripping `xi` first with the bit read from `(C/q)` does not
//! invert the encryption.)

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::rngs::mock::StepRng;

use super::minus_bit;
use crate::keys::{check_unit, PrivateKey};
use crate::numtheory::{jacobi, mod_inverse, modulo};
use crate::roots::{decryption_roots, parity};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub n: BigInt,
    pub xi: BigInt,
}

/// A single residue; nothing else travels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub c: BigInt,
}

/// `xi = alpha^2 psi1 - psi2 (mod N)`; the default is `alpha = 1`.
pub fn setup(sk: &PrivateKey, alpha: &BigInt) -> Result<PublicKey> {
    sk.require_blum()?;
    let n = sk.n();
    let g = alpha.gcd(n);
    if !g.is_one() {
        return Err(Error::SharedFactor { gcd: g });
    }
    let xi = modulo(&(alpha * alpha * sk.psi1() - sk.psi2()), n);
    if jacobi(&xi, sk.p())? != 1 || jacobi(&xi, sk.q())? != -1 {
        return Err(Error::Integrity("xi has the wrong quadratic characters"));
    }
    Ok(PublicKey { n: n.clone(), xi })
}

pub fn encrypt(m: &BigInt, pk: &PublicKey) -> Result<Ciphertext> {
    check_unit(m, &pk.n)?;
    let n = &pk.n;
    let mut c = modulo(&(m * m), n);
    if minus_bit(jacobi(m, n)?) == 1 {
        c = n - c;
    }
    if parity(m) == 1 {
        c = modulo(&(c * &pk.xi), n);
    }
    Ok(Ciphertext { c })
}

pub fn decrypt(ct: &Ciphertext, sk: &PrivateKey, pk: &PublicKey) -> Result<BigInt> {
    sk.require_blum()?;
    let n = sk.n();
    let j_n = jacobi(&ct.c, n)?;
    if j_n == 0 {
        return Err(Error::Integrity("ciphertext shares a factor with N"));
    }
    let b0 = minus_bit(j_n);
    let b1 = minus_bit(jacobi(&ct.c, sk.q())?) ^ b0;

    let mut c = modulo(&ct.c, n);
    if b1 == 1 {
        c = n - c;
    }
    if b0 == 1 {
        c = modulo(&(c * mod_inverse(&pk.xi, n)?), n);
    }
    let quad = decryption_roots(&c, sk, &mut StepRng::new(0, 1))?;
    let wanted = if b1 == 1 { -1 } else { 1 };
    let mut found = None;
    for z in quad.with_parity(b0) {
        if jacobi(z, n)? == wanted {
            if found.is_some() {
                return Err(Error::Integrity("two roots match the recovered bits"));
            }
            found = Some(z.clone());
        }
    }
    let m = found.ok_or(Error::Integrity("no root matches the recovered bits"))?;
    match encrypt(&m, pk) {
        Ok(check) if check == *ct => Ok(m),
        _ => Err(Error::Integrity("recovered message does not re-encrypt to the ciphertext")),
    }
}
