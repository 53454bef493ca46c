//! Root-identification schemes.
//!
//! Blum keys (`p = q = 3 mod 4`) support [`williams`], [`jacobi1`],
//! [`jacobi2`] and [`dedekind`]. [`giso`] works for any pair of primes.
//! Each submodule exposes `setup` (where the scheme publishes extra values),
//! `encrypt` and `decrypt`. Every decryption re-encrypts its result and
//! compares with the received envelope before returning.

pub mod dedekind;
pub mod giso;
pub mod jacobi1;
pub mod jacobi2;
pub mod williams;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;

use crate::keys::PrivateKey;
use crate::{Error, Result};

/// Identifies a scheme by its file-format tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Williams,
    Jacobi1,
    Jacobi2,
    Dedekind,
    Giso,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Williams,
        Scheme::Jacobi1,
        Scheme::Jacobi2,
        Scheme::Dedekind,
        Scheme::Giso,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Scheme::Williams => "williams",
            Scheme::Jacobi1 => "jacobi1",
            Scheme::Jacobi2 => "jacobi2",
            Scheme::Dedekind => "dedekind",
            Scheme::Giso => "giso",
        }
    }

    pub fn requires_blum(self) -> bool {
        !matches!(self, Scheme::Giso)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.tag() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown scheme `{s}`")))
    }
}

/// Public parameters of any scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeKey {
    Williams(williams::PublicKey),
    Jacobi1(BigInt),
    Jacobi2(jacobi2::PublicKey),
    Dedekind(BigInt),
    Giso(giso::PublicKey),
}

/// A ciphertext envelope of any scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ciphertext {
    Williams(williams::Ciphertext),
    Jacobi1(jacobi1::Ciphertext),
    Jacobi2(jacobi2::Ciphertext),
    Dedekind(dedekind::Ciphertext),
    Giso(giso::Ciphertext),
}

impl Ciphertext {
    pub fn scheme(&self) -> Scheme {
        match self {
            Ciphertext::Williams(_) => Scheme::Williams,
            Ciphertext::Jacobi1(_) => Scheme::Jacobi1,
            Ciphertext::Jacobi2(_) => Scheme::Jacobi2,
            Ciphertext::Dedekind(_) => Scheme::Dedekind,
            Ciphertext::Giso(_) => Scheme::Giso,
        }
    }
}

impl SchemeKey {
    /// Derives the public parameters of `scheme` from a private key. Every
    /// setup is deterministic, so a decryptor can rebuild them at will.
    pub fn setup(scheme: Scheme, sk: &PrivateKey) -> Result<Self> {
        Ok(match scheme {
            Scheme::Williams => SchemeKey::Williams(williams::setup(sk)?),
            Scheme::Jacobi1 => {
                sk.require_blum()?;
                SchemeKey::Jacobi1(sk.n().clone())
            }
            Scheme::Jacobi2 => SchemeKey::Jacobi2(jacobi2::setup(sk, &BigInt::from(1))?),
            Scheme::Dedekind => {
                sk.require_blum()?;
                SchemeKey::Dedekind(sk.n().clone())
            }
            Scheme::Giso => SchemeKey::Giso(giso::setup(sk)?),
        })
    }

    pub fn scheme(&self) -> Scheme {
        match self {
            SchemeKey::Williams(_) => Scheme::Williams,
            SchemeKey::Jacobi1(_) => Scheme::Jacobi1,
            SchemeKey::Jacobi2(_) => Scheme::Jacobi2,
            SchemeKey::Dedekind(_) => Scheme::Dedekind,
            SchemeKey::Giso(_) => Scheme::Giso,
        }
    }

    pub fn modulus(&self) -> &BigInt {
        match self {
            SchemeKey::Williams(pk) => &pk.n,
            SchemeKey::Jacobi1(n) | SchemeKey::Dedekind(n) => n,
            SchemeKey::Jacobi2(pk) => &pk.n,
            SchemeKey::Giso(pk) => &pk.n,
        }
    }

    pub fn encrypt(&self, m: &BigInt) -> Result<Ciphertext> {
        Ok(match self {
            SchemeKey::Williams(pk) => Ciphertext::Williams(williams::encrypt(m, pk)?),
            SchemeKey::Jacobi1(n) => Ciphertext::Jacobi1(jacobi1::encrypt(m, n)?),
            SchemeKey::Jacobi2(pk) => Ciphertext::Jacobi2(jacobi2::encrypt(m, pk)?),
            SchemeKey::Dedekind(n) => Ciphertext::Dedekind(dedekind::encrypt(m, n)?),
            SchemeKey::Giso(pk) => Ciphertext::Giso(giso::encrypt(m, pk)?),
        })
    }

    /// Decrypts an envelope of the same scheme.
    pub fn decrypt<R: Rng + ?Sized>(&self, ct: &Ciphertext, sk: &PrivateKey, rng: &mut R) -> Result<BigInt> {
        match (self, ct) {
            (SchemeKey::Williams(pk), Ciphertext::Williams(ct)) => williams::decrypt(ct, sk, pk),
            (SchemeKey::Jacobi1(_), Ciphertext::Jacobi1(ct)) => jacobi1::decrypt(ct, sk),
            (SchemeKey::Jacobi2(pk), Ciphertext::Jacobi2(ct)) => jacobi2::decrypt(ct, sk, pk),
            (SchemeKey::Dedekind(_), Ciphertext::Dedekind(ct)) => dedekind::decrypt(ct, sk),
            (SchemeKey::Giso(pk), Ciphertext::Giso(ct)) => giso::decrypt(ct, sk, pk, rng),
            (key, ct) => Err(Error::Precondition(format!(
                "{} ciphertext given to a {} key",
                ct.scheme(),
                key.scheme()
            ))),
        }
    }
}

/// `(1 + j) / 2` for a Jacobi symbol `j` in `{-1, 1}`.
pub(crate) fn plus_bit(j: i8) -> u8 {
    u8::from(j == 1)
}

/// `(1 - j) / 2` for a Jacobi symbol `j` in `{-1, 1}`.
pub(crate) fn minus_bit(j: i8) -> u8 {
    u8::from(j == -1)
}
