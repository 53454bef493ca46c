//! Rabin signatures with a deterministically built pad.
//!
//! Write `m = m1 psi1 + m2 psi2` with `m1 = m mod p`, `m2 = m mod q`. Taking
//! `f1 = 1` when `m1` is a square modulo `p` and `f1 = m1` otherwise (and
//! `f2` likewise modulo `q`) makes `m * (f1 psi1 + f2 psi2)` a square modulo
//! `N`. The pad is `U = R^2 (f1 psi1 + f2 psi2)` for a random unit `R`, and
//! the signature is `(U, S)` with `S^2 = m U (mod N)`.
//!
//! For Blum keys the Legendre symbols themselves can serve as `f1`, `f2`,
//! because `-1` is a non-residue modulo both primes.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use crate::keys::{check_unit, PrivateKey, PublicKey};
use crate::numtheory::{jacobi, modulo};
use crate::roots::square_roots;
use crate::{Error, Result};

/// How the pad factors `f1`, `f2` are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Padding {
    /// `f = 1` on residues, `f = m mod p` on non-residues. Any key.
    #[default]
    General,
    /// `f` is the Legendre symbol. Blum keys only.
    Blum,
}

/// A signature on `m`: `S^2 = m U (mod N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub u: BigInt,
    pub s: BigInt,
}

fn pad_component(m: &BigInt, prime: &BigInt, padding: Padding) -> Result<BigInt> {
    let mi = modulo(m, prime);
    let l = jacobi(&mi, prime)?;
    Ok(match (padding, l) {
        (_, 1) => BigInt::one(),
        (Padding::General, _) => mi,
        (Padding::Blum, _) => BigInt::from(-1),
    })
}

/// The pad `U` for an explicit multiplier `r`.
pub fn pad_factor_with(m: &BigInt, sk: &PrivateKey, padding: Padding, r: &BigInt) -> Result<BigInt> {
    check_unit(m, sk.n())?;
    if padding == Padding::Blum {
        sk.require_blum()?;
    }
    let n = sk.n();
    let g = r.gcd(n);
    if !g.is_one() {
        return Err(Error::SharedFactor { gcd: g });
    }
    let f1 = pad_component(m, sk.p(), padding)?;
    let f2 = pad_component(m, sk.q(), padding)?;
    let f = sk.crt_combine(&f1, &f2);
    Ok(modulo(&(r * r % n * f), n))
}

/// A uniform unit of `Z_N`; draws with a common factor are discarded.
fn random_unit<R: Rng + ?Sized>(n: &BigInt, rng: &mut R) -> BigInt {
    loop {
        let r = rng.gen_bigint_range(&BigInt::one(), n);
        if r.gcd(n).is_one() {
            return r;
        }
    }
}

pub fn pad_factor<R: Rng + ?Sized>(m: &BigInt, sk: &PrivateKey, rng: &mut R) -> Result<BigInt> {
    let r = random_unit(sk.n(), rng);
    pad_factor_with(m, sk, Padding::General, &r)
}

pub fn blum_pad_factor<R: Rng + ?Sized>(m: &BigInt, sk: &PrivateKey, rng: &mut R) -> Result<BigInt> {
    sk.require_blum()?;
    let r = random_unit(sk.n(), rng);
    pad_factor_with(m, sk, Padding::Blum, &r)
}

/// Signs with an explicit pad multiplier `r`. `S` is the canonical root
/// `x1` of `m U`; `rng` is only used for square roots modulo primes
/// `1 mod 4`.
pub fn sign_with_r<R: Rng + ?Sized>(
    m: &BigInt,
    sk: &PrivateKey,
    padding: Padding,
    r: &BigInt,
    rng: &mut R,
) -> Result<Signature> {
    let u = pad_factor_with(m, sk, padding, r)?;
    let target = modulo(&(m * &u), sk.n());
    let quad = square_roots(&target, sk, rng)?;
    Ok(Signature { u, s: quad.x1 })
}

pub fn sign<R: Rng + ?Sized>(m: &BigInt, sk: &PrivateKey, padding: Padding, rng: &mut R) -> Result<Signature> {
    if padding == Padding::Blum {
        sk.require_blum()?;
    }
    check_unit(m, sk.n())?;
    let r = random_unit(sk.n(), rng);
    sign_with_r(m, sk, padding, &r, rng)
}

/// `S^2 mod N == m U mod N`, with every field required to lie in `[1, N)`.
pub fn verify(m: &BigInt, sig: &Signature, pk: &PublicKey) -> bool {
    let n = &pk.n;
    let in_range = |x: &BigInt| *x >= BigInt::one() && x < n;
    if !(in_range(m) && in_range(&sig.u) && in_range(&sig.s)) {
        return false;
    }
    &sig.s * &sig.s % n == m * &sig.u % n
}
