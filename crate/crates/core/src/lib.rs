//! The Rabin public-key cryptosystem with unambiguous root identification.
//!
//! Encryption squares the message modulo `N = pq`; decryption recovers four
//! candidate roots and needs a little extra information to pick the right
//! one. This crate provides:
//!
//! * [`numtheory`]: Jacobi symbols, modular roots, CRT idempotents, primes.
//! * [`dedekind`]: exact Dedekind sums and their parity.
//! * [`keys`] / [`roots`]: key material, the four roots and their labels.
//! * [`schemes`]: Williams, two Jacobi-symbol variants, a Dedekind-sum
//!   scheme and a group-isomorphism scheme for arbitrary primes.
//! * [`signature`]: Rabin signatures with a deterministically built pad.
//! * [`analysis`]: factoring attacks and toy-scale identification tables.
//! * [`sweep`]: batch checks that run on rayon when the `parallel`
//!   feature is enabled (the default) and sequentially otherwise.

pub mod analysis;
pub mod dedekind;
mod error;
pub mod keys;
pub mod numtheory;
pub mod roots;
pub mod schemes;
pub mod signature;
pub mod sweep;

pub use error::{Error, Result};
pub use keys::{keygen, PrivateKey, PublicKey};
pub use roots::{root_labels, square_roots, unit_roots, RootQuad, UnitRoots};

pub use num_bigint::BigInt;
