//! Batch checks over many messages, keys or Dedekind-sum arguments.
//!
//! Each sweep takes an [`Execution`] mode. With the `parallel` feature
//! (on by default) [`Execution::Parallel`] fans the work out over rayon's
//! global pool; without it every sweep runs sequentially. Randomized sweeps
//! derive one ChaCha stream per work item from a base seed, so results do
//! not depend on the execution mode or thread count.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::dedekind::{dedekind_sum, dedekind_sum_direct};
use crate::keys::{keygen, PrivateKey};
use crate::numtheory::{jacobi, to_u64};
use crate::roots::{parity, root_labels, square_roots};
use crate::schemes::{Scheme, SchemeKey};
use crate::{dedekind, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Outcome of a sweep: how many cases ran and a description of each failure.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }

    fn single(failure: Option<String>) -> SweepReport {
        SweepReport {
            checked: 1,
            failures: failure.into_iter().collect(),
        }
    }
}

/// Applies `f` to every index in `0..count`, keeping index order.
pub fn map_indices<T, F>(exec: Execution, count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..count).into_par_iter().map(f).collect(),
        _ => (0..count).map(f).collect(),
    }
}

fn sweep<F>(exec: Execution, count: u64, f: F) -> SweepReport
where
    F: Fn(u64) -> SweepReport + Sync + Send,
{
    map_indices(exec, count, f)
        .into_iter()
        .fold(SweepReport::default(), SweepReport::merge)
}

/// Independent stream `index` of the generator seeded with `seed`.
pub fn seeded_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The units of `Z_n`, ascending.
pub fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|m| m.gcd(&n) == 1).collect()
}

/// Encrypts and decrypts every `m` in `Z_N^*` under `scheme`.
pub fn exhaustive_round_trip(scheme: Scheme, sk: &PrivateKey, exec: Execution) -> Result<SweepReport> {
    let key = SchemeKey::setup(scheme, sk)?;
    let n = to_u64(sk.n()).ok_or_else(|| {
        crate::Error::ScaleLimit {
            n: sk.n().clone(),
            limit: u64::MAX,
        }
    })?;
    let messages = units(n);
    Ok(sweep(exec, messages.len() as u64, |i| {
        let m = BigInt::from(messages[i as usize]);
        let mut rng = seeded_rng(n, i);
        let outcome = key
            .encrypt(&m)
            .and_then(|ct| key.decrypt(&ct, sk, &mut rng));
        SweepReport::single(match outcome {
            Ok(d) if d == m => None,
            Ok(d) => Some(format!("{scheme} N={n}: m={m} decrypted to {d}")),
            Err(e) => Some(format!("{scheme} N={n}: m={m} failed: {e}")),
        })
    }))
}

fn random_unit(n: &BigInt, rng: &mut ChaCha20Rng) -> BigInt {
    loop {
        let m = rng.gen_bigint_range(&BigInt::one(), n);
        if m.gcd(n).is_one() {
            return m;
        }
    }
}

/// `count` random messages under one key.
pub fn random_round_trip(
    scheme: Scheme,
    sk: &PrivateKey,
    count: u64,
    seed: u64,
    exec: Execution,
) -> Result<SweepReport> {
    let key = SchemeKey::setup(scheme, sk)?;
    Ok(sweep(exec, count, |i| {
        let mut rng = seeded_rng(seed, i);
        let m = random_unit(sk.n(), &mut rng);
        let outcome = key
            .encrypt(&m)
            .and_then(|ct| key.decrypt(&ct, sk, &mut rng));
        SweepReport::single(match outcome {
            Ok(d) if d == m => None,
            Ok(d) => Some(format!("{scheme}: m={m} decrypted to {d}")),
            Err(e) => Some(format!("{scheme}: m={m} failed: {e}")),
        })
    }))
}

/// Fast and direct Dedekind sums agree for every coprime `(h, k)` with
/// `0 <= h < k <= max_k`.
pub fn dedekind_oracle(max_k: u64, exec: Execution) -> SweepReport {
    sweep(exec, max_k, |i| {
        let k = i + 1;
        let kb = BigInt::from(k);
        let mut report = SweepReport::default();
        for h in (0..k).filter(|h| h.gcd(&k) == 1) {
            let hb = BigInt::from(h);
            let fast = dedekind_sum(&hb, &kb);
            let direct = dedekind_sum_direct(&hb, &kb);
            report.checked += 1;
            if fast != direct || fast.is_err() {
                report.failures.push(format!("s({h}, {k}): fast {fast:?} direct {direct:?}"));
            }
        }
        report
    })
}

/// `12 k s(h, k)` is an integer congruent to `k + 1 - 2 (h/k)` modulo 8 for
/// odd `k <= max_k` and coprime `h < k`.
pub fn dedekind_jacobi_congruence(max_k: u64, exec: Execution) -> SweepReport {
    let ks: Vec<u64> = (1..=max_k).step_by(2).collect();
    sweep(exec, ks.len() as u64, |i| {
        let k = ks[i as usize];
        let kb = BigInt::from(k);
        let mut report = SweepReport::default();
        for h in (0..k).filter(|h| h.gcd(&k) == 1) {
            let hb = BigInt::from(h);
            report.checked += 1;
            let outcome = dedekind_sum(&hb, &kb).and_then(|s| {
                let scaled = s * dedekind::Rational::from_integer(BigInt::from(12 * k));
                let j = jacobi(&hb, &kb)?;
                Ok((scaled, j))
            });
            match outcome {
                Ok((scaled, j)) if scaled.is_integer() => {
                    let lhs = scaled.to_integer().mod_floor(&BigInt::from(8));
                    let rhs = (BigInt::from(k + 1) - 2 * i64::from(j)).mod_floor(&BigInt::from(8));
                    if lhs != rhs {
                        report.failures.push(format!("k={k} h={h}: {lhs} != {rhs} mod 8"));
                    }
                }
                Ok((scaled, _)) => report.failures.push(format!("k={k} h={h}: 12ks = {scaled}")),
                Err(e) => report.failures.push(format!("k={k} h={h}: {e}")),
            }
        }
        report
    })
}

/// Every reduced `s(h, k)` with `gcd(h, k) = 1` has an odd denominator, for
/// each `k` in `moduli`.
pub fn odd_denominators(moduli: &[u64], exec: Execution) -> SweepReport {
    sweep(exec, moduli.len() as u64, |i| {
        let k = moduli[i as usize];
        let kb = BigInt::from(k);
        let mut report = SweepReport::default();
        for h in (0..k).filter(|h| h.gcd(&k) == 1) {
            report.checked += 1;
            match dedekind_sum(&BigInt::from(h), &kb) {
                Ok(s) if s.denom().is_odd() => {}
                Ok(s) => report.failures.push(format!("s({h}, {k}) = {s}")),
                Err(e) => report.failures.push(format!("s({h}, {k}): {e}")),
            }
        }
        report
    })
}

/// For every message of a Blum key, the two same-parity roots of `m^2` have
/// opposite Dedekind parity.
pub fn opposite_dedekind_parity(sk: &PrivateKey, exec: Execution) -> Result<SweepReport> {
    sk.require_blum()?;
    let n = sk.n();
    let nu = to_u64(n).unwrap_or(u64::MAX);
    let messages = units(nu);
    Ok(sweep(exec, messages.len() as u64, |i| {
        let m = BigInt::from(messages[i as usize]);
        let mut report = SweepReport::default();
        let quad = match crate::roots::square_roots_blum(&(&m * &m), sk) {
            Ok(q) => q,
            Err(e) => return SweepReport::single(Some(format!("m={m}: {e}"))),
        };
        for bit in [0u8, 1] {
            let [z1, z2] = quad.with_parity(bit);
            report.checked += 1;
            match (dedekind::dedekind_parity(z1, n), dedekind::dedekind_parity(z2, n)) {
                (Ok(a), Ok(b)) if a ^ b == 1 => {}
                other => report.failures.push(format!("N={n} roots {z1}, {z2}: {other:?}")),
            }
        }
        report
    }))
}

/// Random keys with primes of `min_bits..=max_bits` bits and a random
/// residue each: checks the coset structure of the root quad and its parity
/// labels.
pub fn root_labeling(count: u64, min_bits: u64, max_bits: u64, seed: u64, exec: Execution) -> SweepReport {
    sweep(exec, count, |i| {
        let mut rng = seeded_rng(seed, i);
        let bits = min_bits + i % (max_bits - min_bits + 1);
        let blum = i % 2 == 0;
        let (sk, _) = match keygen(bits, blum, &mut rng) {
            Ok(k) => k,
            Err(e) => return SweepReport::single(Some(format!("keygen: {e}"))),
        };
        let n = sk.n();
        let m = random_unit(n, &mut rng);
        let c = &m * &m % n;
        let quad = match square_roots(&c, &sk, &mut rng) {
            Ok(q) => q,
            Err(e) => return SweepReport::single(Some(format!("C={c} N={n}: {e}"))),
        };
        let ok = quad.contains(&m)
            && quad.roots().iter().all(|x| *x * *x % n == c)
            && quad.x4 == n - &quad.x1
            && quad.x3 == n - &quad.x2
            && parity(&quad.x1) != parity(&quad.x4)
            && parity(&quad.x2) != parity(&quad.x3)
            && root_labels(&quad, &sk) == [(0, 0), (0, 1), (1, 0), (1, 1)];
        SweepReport::single((!ok).then(|| format!("C={c} N={n}: {quad:?}")))
    })
}
