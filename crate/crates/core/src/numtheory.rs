//! Arbitrary-precision number theory: gcd, modular powers and inverses,
//! Jacobi symbols, primality, prime generation, square roots modulo a prime
//! and the CRT idempotents of a two-prime modulus.
//!
//! Every function that returns a residue returns the canonical
//! representative in `[0, modulus)`.

use num_bigint::{BigInt, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::{Error, Result};

/// Miller–Rabin rounds used when no explicit count is given.
pub const DEFAULT_MR_ROUNDS: usize = 32;

/// Witness set that makes Miller–Rabin deterministic below 2^64.
const WITNESSES_U64: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// `a mod n` in `[0, n)` for positive `n`.
pub fn modulo(a: &BigInt, n: &BigInt) -> BigInt {
    a.mod_floor(n)
}

/// Extended Euclid: returns `(g, l1, l2)` with `g = gcd(a, b) >= 1` and
/// `l1*a + l2*b = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Degenerate("gcd(0, 0) is undefined"));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((-r0, -s0, -t0))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Inverse of `a` modulo `n`, in `[1, n)`.
///
/// On failure the error carries `gcd(a, n)`; for a Rabin modulus that is a
/// prime factor.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Result<BigInt> {
    if *n < BigInt::from(2) {
        return Err(Error::Precondition(format!("inverse modulo {n} requested")));
    }
    let reduced = modulo(a, n);
    let (g, l1, _) = ext_gcd(&reduced, n)?;
    if !g.is_one() {
        return Err(Error::NotInvertible {
            value: a.clone(),
            modulus: n.clone(),
            gcd: g,
        });
    }
    Ok(modulo(&l1, n))
}

/// `base^exp mod modulus`; a negative exponent goes through the inverse.
pub fn mod_pow(base: &BigInt, exp: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    if !modulus.is_positive() {
        return Err(Error::Precondition(format!(
            "modulus must be at least 1, got {modulus}"
        )));
    }
    if modulus.is_one() {
        return Ok(BigInt::zero());
    }
    let b = modulo(base, modulus);
    if exp.is_negative() {
        let inv = mod_inverse(&b, modulus)?;
        Ok(inv.modpow(&-exp, modulus))
    } else {
        Ok(b.modpow(exp, modulus))
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`, by quadratic reciprocity.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i8> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::InvalidModulus(n.clone()));
    }
    let mut a = modulo(a, n);
    let mut n = n.clone();
    let mut result = 1i8;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            // (2/n) = -1 iff n = 3, 5 mod 8
            let n8 = low_bits(&n, 8);
            if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if low_bits(&a, 4) == 3 && low_bits(&n, 4) == 3 {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { result } else { 0 })
}

fn low_bits(n: &BigInt, m: u32) -> u32 {
    let (_, digits) = n.to_u32_digits();
    digits.first().copied().unwrap_or(0) % m
}

/// Miller–Rabin. `false` is always right; `true` is wrong with probability at
/// most `4^-rounds`. Inputs below 2^64 use a deterministic witness set.
pub fn is_probable_prime<R: Rng + ?Sized>(n: &BigInt, rounds: usize, rng: &mut R) -> bool {
    if *n <= BigInt::one() {
        return false;
    }
    for &sp in SMALL_PRIMES.iter() {
        let sp = BigInt::from(sp);
        if *n == sp {
            return true;
        }
        if n.is_multiple_of(&sp) {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let is_witness = |a: &BigInt| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            return false;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                return false;
            }
        }
        true
    };

    if n.bits() <= 64 {
        return WITNESSES_U64
            .iter()
            .all(|&w| !is_witness(&BigInt::from(w)));
    }
    let low = BigInt::from(2);
    let high = n - 1u32;
    (0..rounds.max(1)).all(|_| !is_witness(&rng.gen_bigint_range(&low, &high)))
}

/// Primality check with a fixed internal randomness source; used where the
/// caller holds no generator (key validation, parameter search).
pub fn is_prime(n: &BigInt) -> bool {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5241_4249_4e00_0001);
    is_probable_prime(n, DEFAULT_MR_ROUNDS, &mut rng)
}

/// A random probable prime with exactly `bits` bits and `p = residue (mod 4)`.
///
/// The top bit and the two low bits are forced on every candidate; rejected
/// candidates are discarded and redrawn.
pub fn gen_prime<R: Rng + ?Sized>(bits: u64, residue_mod_4: u8, rng: &mut R) -> Result<BigInt> {
    if bits < 4 {
        return Err(Error::Precondition(format!(
            "prime size must be at least 4 bits, got {bits}"
        )));
    }
    if residue_mod_4 != 1 && residue_mod_4 != 3 {
        return Err(Error::Precondition(format!(
            "residue mod 4 must be 1 or 3, got {residue_mod_4}"
        )));
    }
    loop {
        let mut candidate = BigInt::from_biguint(Sign::Plus, rng.gen_biguint(bits));
        candidate.set_bit(bits - 1, true);
        candidate.set_bit(0, true);
        candidate.set_bit(1, residue_mod_4 == 3);
        if is_probable_prime(&candidate, DEFAULT_MR_ROUNDS, rng) {
            return Ok(candidate);
        }
    }
}

/// Square root modulo a prime `p = 3 (mod 4)`: `c^((p+1)/4) mod p`.
pub fn sqrt_mod_blum(c: &BigInt, p: &BigInt) -> Result<BigInt> {
    if low_bits(p, 4) != 3 || p.is_negative() {
        return Err(Error::Precondition(format!("{p} is not congruent to 3 mod 4")));
    }
    let c = modulo(c, p);
    let exp: BigInt = (p + 1u32) >> 2;
    let r = c.modpow(&exp, p);
    if &r * &r % p != c {
        return Err(Error::NonResidue {
            value: c,
            modulus: p.clone(),
        });
    }
    Ok(r)
}

/// Tonelli–Shanks square root modulo an odd prime `p`.
///
/// The only random step is the search for a quadratic non-residue, drawn
/// uniformly from `[2, p-1)`.
pub fn tonelli_shanks<R: Rng + ?Sized>(c: &BigInt, p: &BigInt, rng: &mut R) -> Result<BigInt> {
    let c = modulo(c, p);
    if c.is_zero() {
        return Err(Error::Precondition(format!("{p} divides the radicand")));
    }
    match jacobi(&c, p)? {
        1 => {}
        _ => {
            return Err(Error::NonResidue {
                value: c,
                modulus: p.clone(),
            })
        }
    }
    let p_minus_1 = p - 1u32;
    let s = p_minus_1.trailing_zeros().unwrap_or(0);
    let q = &p_minus_1 >> s;
    if s == 1 {
        return sqrt_mod_blum(&c, p);
    }

    let low = BigInt::from(2);
    let z = loop {
        let z = rng.gen_bigint_range(&low, &p_minus_1);
        if jacobi(&z, p)? == -1 {
            break z;
        }
    };

    let mut m = s;
    let mut cc = z.modpow(&q, p);
    let mut t = c.modpow(&q, p);
    let mut r = c.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        // least i with t^(2^i) = 1
        let mut i = 0u64;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = &t2 * &t2 % p;
            i += 1;
            if i == m {
                return Err(Error::NonResidue {
                    value: c,
                    modulus: p.clone(),
                });
            }
        }
        let b = cc.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        cc = &b * &b % p;
        t = &t * &cc % p;
        r = &r * &b % p;
    }
    Ok(r)
}

/// CRT idempotents `(psi1, psi2)` of `N = pq`: `psi1 = 1 (mod p)`,
/// `psi1 = 0 (mod q)` and the reverse for `psi2`.
pub fn crt_basis(p: &BigInt, q: &BigInt) -> Result<(BigInt, BigInt)> {
    if p == q {
        return Err(Error::Degenerate("p and q must be distinct"));
    }
    let (g, l1, l2) = ext_gcd(p, q)?;
    if !g.is_one() {
        return Err(Error::Degenerate("p and q must be coprime"));
    }
    let n = p * q;
    Ok((modulo(&(l2 * q), &n), modulo(&(l1 * p), &n)))
}

/// Bit length of a non-negative value (0 has length 0).
pub fn bit_length(n: &BigInt) -> u64 {
    n.bits()
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: &BigInt) -> BigInt {
    let mut c = n + 1u32;
    while !is_prime(&c) {
        c += 1u32;
    }
    c
}

/// Distinct prime factors of a small value by trial division.
pub(crate) fn small_prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Converts to `u64` when the value fits.
pub(crate) fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}
