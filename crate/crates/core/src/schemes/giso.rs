//! Root identification for any pair of primes through the isomorphism
//! between `Z_N` (additive) and the order-`N` subgroup of `Z_P^*`, where
//! `P = mu N + 1` is prime.
//!
//! With `g` a primitive root of `P`, the public key carries `g1 = g^mu` and
//! `g2 = g1^(psi1 - psi2)`. The four roots of `m^2` map to
//! `g1^(±m)` and `g2^(±m)`. The sender publishes one bit position where
//! `g1^m` differs from `g2^m` and one where it differs from `g2^-m`, plus
//! the bits of `g1^m` at those positions. Positions count from the least
//! significant bit, starting at 0, and are the lowest differing bit.

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::keys::{check_unit, PrivateKey};
use crate::numtheory::{is_prime, mod_inverse, mod_pow, modulo, small_prime_factors, to_u64};
use crate::roots::{decryption_roots, parity};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub n: BigInt,
    /// The prime `P = mu N + 1`.
    pub big_p: BigInt,
    pub g1: BigInt,
    pub g2: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub c: BigInt,
    pub b0: u8,
    pub d1: u8,
    pub d2: u8,
    pub p1: u64,
    pub p2: u64,
}

/// Derives `P`, `g1` and `g2` from the private key.
///
/// `mu` runs over even values from 2 until `mu N + 1` is prime. `g` is the
/// smallest primitive root of `P`, checked against every prime factor of
/// `P - 1 = mu p q`.
pub fn setup(sk: &PrivateKey) -> Result<PublicKey> {
    let n = sk.n();
    let mut mu = 2u64;
    let big_p = loop {
        let candidate = n * mu + 1u32;
        if is_prime(&candidate) {
            break candidate;
        }
        mu += 2;
    };
    let p_minus_1 = &big_p - 1u32;

    let mut factors: Vec<BigInt> = small_prime_factors(mu).into_iter().map(BigInt::from).collect();
    for f in [sk.p(), sk.q()] {
        if !factors.contains(f) {
            factors.push(f.clone());
        }
    }
    let cofactors: Vec<BigInt> = factors.iter().map(|r| &p_minus_1 / r).collect();

    let mut g = BigInt::from(2);
    loop {
        let mut primitive = true;
        for e in &cofactors {
            if mod_pow(&g, e, &big_p)?.is_one() {
                primitive = false;
                break;
            }
        }
        if primitive {
            break;
        }
        g += 1u32;
    }
    let g1 = mod_pow(&g, &BigInt::from(mu), &big_p)?;
    let g2 = mod_pow(&g1, &sk.unity_root(), &big_p)?;
    Ok(PublicKey {
        n: n.clone(),
        big_p,
        g1,
        g2,
    })
}

/// `mu = (P - 1) / N`.
pub fn multiplier(pk: &PublicKey) -> BigInt {
    (&pk.big_p - 1u32) / &pk.n
}

/// True when `g1` has multiplicative order exactly `N` modulo `P`.
pub fn generator_has_order_n(pk: &PublicKey, sk: &PrivateKey) -> Result<bool> {
    let n = sk.n();
    Ok(mod_pow(&pk.g1, n, &pk.big_p)?.is_one()
        && !mod_pow(&pk.g1, &(n / sk.p()), &pk.big_p)?.is_one()
        && !mod_pow(&pk.g1, &(n / sk.q()), &pk.big_p)?.is_one())
}

fn lowest_differing_bit(a: &BigInt, b: &BigInt) -> Option<u64> {
    (a ^ b).trailing_zeros()
}

fn bit(x: &BigInt, pos: u64) -> u8 {
    u8::from(x.bit(pos))
}

pub fn encrypt(m: &BigInt, pk: &PublicKey) -> Result<Ciphertext> {
    check_unit(m, &pk.n)?;
    let a = mod_pow(&pk.g1, m, &pk.big_p)?;
    let b = mod_pow(&pk.g2, m, &pk.big_p)?;
    let b_inv = mod_inverse(&b, &pk.big_p)?;
    let p1 = lowest_differing_bit(&a, &b).ok_or(Error::Integrity("g1^m equals g2^m"))?;
    let p2 = lowest_differing_bit(&a, &b_inv).ok_or(Error::Integrity("g1^m equals g2^-m"))?;
    Ok(Ciphertext {
        c: modulo(&(m * m), &pk.n),
        b0: parity(m),
        d1: bit(&a, p1),
        d2: bit(&a, p2),
        p1,
        p2,
    })
}

/// The generator is used for square roots modulo primes `1 mod 4`.
pub fn decrypt<R: Rng + ?Sized>(ct: &Ciphertext, sk: &PrivateKey, pk: &PublicKey, rng: &mut R) -> Result<BigInt> {
    if pk.n != *sk.n() {
        return Err(Error::Precondition("public parameters belong to another modulus".into()));
    }
    if ct.b0 > 1 || ct.d1 > 1 || ct.d2 > 1 {
        return Err(Error::Integrity("identification bits must be 0 or 1"));
    }
    let width = pk.big_p.bits();
    if ct.p1 >= width || ct.p2 >= width {
        return Err(Error::Integrity("bit position outside the binary expansion of P"));
    }
    let quad = decryption_roots(&ct.c, sk, rng)?;
    let mut found = None;
    for z in quad.with_parity(ct.b0) {
        let power = mod_pow(&pk.g1, z, &pk.big_p)?;
        if bit(&power, ct.p1) == ct.d1 && bit(&power, ct.p2) == ct.d2 {
            if found.is_some() {
                return Err(Error::Integrity("both roots match the identification bits"));
            }
            found = Some(z.clone());
        }
    }
    let m = found.ok_or(Error::Integrity("no root matches the identification bits"))?;
    match encrypt(&m, pk) {
        Ok(check) if check == *ct => Ok(m),
        _ => Err(Error::Integrity("recovered message does not re-encrypt to the ciphertext")),
    }
}

/// `P` as a machine word when it fits, for small-key diagnostics.
pub fn prime_as_u64(pk: &PublicKey) -> Option<u64> {
    to_u64(&pk.big_p)
}
