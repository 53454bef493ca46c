//! Command-line front end for the `rabin` crate.
//!
//! [`run`] takes the full argument list (program name first) and returns
//! the exit status together with everything destined for stdout and
//! stderr, so the binary is a thin wrapper and tests can drive commands
//! in-process. Exit status is 0 on success, 1 on validation errors
//! (bad arguments, malformed files, wrong key class) and 2 on integrity
//! errors (tampered ciphertexts, rejected signatures).

pub mod format;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use rabin::analysis::{factor_from_roots, factor_from_unity_root, FactorResult};
use rabin::dedekind::{dedekind_parity, dedekind_sum};
use rabin::schemes::{jacobi1, Scheme, SchemeKey};
use rabin::signature::{sign, verify, Padding, Signature};
use rabin::{keygen, PrivateKey, PublicKey};

use format::PublicFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_INTEGRITY: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] rabin::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_integrity() => EXIT_INTEGRITY,
            _ => EXIT_VALIDATION,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rabin", version, about = "Rabin encryption with root identification, signatures and attack demos")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair with two primes of BITS bits each.
    Keygen {
        #[arg(long)]
        bits: u64,
        /// Both primes 3 mod 4 (the default).
        #[arg(long, conflicts_with = "non_blum")]
        blum: bool,
        /// At least one prime 1 mod 4.
        #[arg(long)]
        non_blum: bool,
        /// Private key output file.
        #[arg(short = 'o', value_name = "PRIV")]
        private: PathBuf,
        /// Public key output file.
        #[arg(short = 'p', value_name = "PUB")]
        public: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write the public parameters of a scheme.
    Setup {
        #[arg(long)]
        scheme: String,
        #[arg(long = "priv", value_name = "PRIV")]
        private: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(short = 'o', value_name = "PUB")]
        out: Option<PathBuf>,
    },
    /// Encrypt a message.
    Encrypt {
        #[arg(long)]
        scheme: String,
        #[arg(long = "pub", value_name = "PUB")]
        public: PathBuf,
        #[arg(short = 'm', value_name = "INT")]
        message: String,
        /// Read the message as UTF-8 text, bytes taken big-endian.
        #[arg(long)]
        text: bool,
        /// Output file; stdout when omitted.
        #[arg(short = 'o', value_name = "CT")]
        out: Option<PathBuf>,
    },
    /// Decrypt a ciphertext file and print the message.
    Decrypt {
        #[arg(long = "ct", value_name = "CT")]
        ciphertext: PathBuf,
        #[arg(long = "priv", value_name = "PRIV")]
        private: PathBuf,
    },
    /// Sign a message and print `U` and `S`.
    Sign {
        #[arg(long = "priv", value_name = "PRIV")]
        private: PathBuf,
        #[arg(short = 'm', value_name = "INT")]
        message: String,
        /// Read the message as UTF-8 text, reduced modulo N.
        #[arg(long)]
        text: bool,
        /// Use the sign-only pad (Blum keys only).
        #[arg(long)]
        blum_pad: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a signature; exits 2 when it does not verify.
    Verify {
        #[arg(long = "pub", value_name = "PUB")]
        public: PathBuf,
        #[arg(short = 'm', value_name = "INT")]
        message: String,
        #[arg(long)]
        text: bool,
        #[arg(short = 'U', value_name = "INT")]
        u: String,
        #[arg(short = 'S', value_name = "INT")]
        s: String,
    },
    /// Print the Dedekind sum s(H, K), and its parity when K = 1 mod 4.
    #[command(allow_negative_numbers = true)]
    Dedekind { h: String, k: String },
    /// Factor N from leaked square roots.
    #[command(subcommand)]
    AttackDemo(Attack),
}

#[derive(Debug, Subcommand)]
enum Attack {
    /// Flip the Jacobi bit of a jacobi1 ciphertext and factor N from the
    /// honest decryption.
    Bitflip(KeySource),
    /// Factor N from the nontrivial square root of unity psi1 - psi2.
    UnityRoot {
        #[command(flatten)]
        key: KeySource,
        /// Generate a non-Blum key when --bits is given.
        #[arg(long)]
        non_blum: bool,
    },
    /// Factor N from two square roots of the same value.
    RootPair {
        #[arg(long, value_name = "INT")]
        n: String,
        #[arg(short = 'x', value_name = "INT")]
        x: String,
        #[arg(short = 'z', value_name = "INT")]
        z: String,
    },
}

#[derive(Debug, Args)]
struct KeySource {
    /// Attack an existing private key.
    #[arg(long = "priv", value_name = "PRIV", required_unless_present = "bits", conflicts_with = "bits")]
    private: Option<PathBuf>,
    /// Attack a fresh key with primes of this size.
    #[arg(long)]
    bits: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

/// Runs one command. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_VALIDATION,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Keygen {
            bits,
            blum: _,
            non_blum,
            private,
            public,
            seed,
        } => {
            let (sk, pk) = keygen(bits, !non_blum, &mut rng(seed))?;
            write(&private, &format::write_private(&sk))?;
            write(&public, &format::write_public(&PublicFile::bare(pk.n)))?;
            Ok(Outcome::ok(String::new()))
        }
        Command::Setup { scheme, private, out } => {
            let sk = load_private(&private)?;
            let key = SchemeKey::setup(parse_scheme(&scheme)?, &sk)?;
            emit(out.as_deref(), format::write_public(&PublicFile::from_scheme_key(&key)))
        }
        Command::Encrypt {
            scheme,
            public,
            message,
            text,
            out,
        } => {
            let pk = load_public(&public)?;
            let key = pk.scheme_key(parse_scheme(&scheme)?)?;
            let m = if text {
                text_to_int(&message)
            } else {
                parse_int("-m", &message)?
            };
            let ct = key.encrypt(&m)?;
            emit(out.as_deref(), format::write_ciphertext(&ct))
        }
        Command::Decrypt { ciphertext, private } => {
            let ct = format::parse_ciphertext(&display(&ciphertext), &read(&ciphertext)?)?;
            let sk = load_private(&private)?;
            let key = SchemeKey::setup(ct.scheme(), &sk)?;
            // the generator only feeds square roots modulo primes 1 mod 4,
            // whose output does not depend on it
            let m = key.decrypt(&ct, &sk, &mut rng(Some(0)))?;
            Ok(Outcome::ok(format!("{m}\n")))
        }
        Command::Sign {
            private,
            message,
            text,
            blum_pad,
            seed,
        } => {
            let sk = load_private(&private)?;
            let m = message_mod_n(&message, text, sk.n())?;
            let padding = if blum_pad { Padding::Blum } else { Padding::General };
            let sig = sign(&m, &sk, padding, &mut rng(seed))?;
            Ok(Outcome::ok(format!("U={}\nS={}\n", sig.u, sig.s)))
        }
        Command::Verify {
            public,
            message,
            text,
            u,
            s,
        } => {
            let pk = PublicKey::new(load_public(&public)?.n);
            let m = message_mod_n(&message, text, &pk.n)?;
            let sig = Signature {
                u: parse_int("-U", &u)?,
                s: parse_int("-S", &s)?,
            };
            Ok(if verify(&m, &sig, &pk) {
                Outcome::ok("valid\n".into())
            } else {
                Outcome {
                    code: EXIT_INTEGRITY,
                    stdout: "invalid\n".into(),
                    stderr: String::new(),
                }
            })
        }
        Command::Dedekind { h, k } => {
            let h = parse_signed("H", &h)?;
            let k = parse_signed("K", &k)?;
            let s = dedekind_sum(&h, &k)?;
            let mut line = s.to_string();
            if k.mod_floor(&BigInt::from(4)).is_one() {
                line += &format!(" parity={}", dedekind_parity(&h, &k)?);
            }
            Ok(Outcome::ok(line + "\n"))
        }
        Command::AttackDemo(attack) => attack_demo(attack),
    }
}

fn attack_demo(attack: Attack) -> Result<Outcome, CliError> {
    match attack {
        Attack::Bitflip(source) => {
            let mut rng = rng(source.seed);
            let sk = source.load(true, &mut rng)?;
            sk.require_blum()?;
            let n = sk.n();
            let m = loop {
                let m = rng.gen_bigint_range(&BigInt::one(), n);
                if m.gcd(n).is_one() {
                    break m;
                }
            };
            let mut ct = jacobi1::encrypt(&m, n)?;
            ct.b1 ^= 1;
            let z = jacobi1::decrypt(&ct, &sk)?;
            let f = factor_from_roots(&m, &z, n)?;
            Ok(Outcome::ok(format!("n={n}\nm={m}\nz={z}\n{}", factors(&f))))
        }
        Attack::UnityRoot { key, non_blum } => {
            let mut rng = rng(key.seed);
            let sk = key.load(!non_blum, &mut rng)?;
            let k = sk.unity_root();
            let f = factor_from_unity_root(&k, sk.n())?;
            Ok(Outcome::ok(format!("n={}\nk={k}\n{}", sk.n(), factors(&f))))
        }
        Attack::RootPair { n, x, z } => {
            let n = parse_int("--n", &n)?;
            let f = factor_from_roots(&parse_int("-x", &x)?, &parse_int("-z", &z)?, &n)?;
            Ok(Outcome::ok(factors(&f)))
        }
    }
}

impl KeySource {
    fn load(&self, blum: bool, rng: &mut ChaCha20Rng) -> Result<PrivateKey, CliError> {
        match (&self.private, self.bits) {
            (Some(path), _) => load_private(path),
            (None, Some(bits)) => Ok(keygen(bits, blum, rng)?.0),
            (None, None) => Err(CliError::Usage("give --priv or --bits".into())),
        }
    }
}

fn factors(f: &FactorResult) -> String {
    let (p, q) = f.sorted();
    format!("p={p}\nq={q}\n")
}

fn rng(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

fn parse_scheme(tag: &str) -> Result<Scheme, CliError> {
    tag.parse::<Scheme>().map_err(|_| {
        let known: Vec<&str> = Scheme::ALL.iter().map(|s| s.tag()).collect();
        CliError::Usage(format!("unknown scheme `{tag}` (expected one of {})", known.join(", ")))
    })
}

fn parse_int(flag: &str, value: &str) -> Result<BigInt, CliError> {
    format::parse_decimal(value)
        .ok_or_else(|| CliError::Usage(format!("{flag}: `{value}` is not a non-negative decimal integer")))
}

fn parse_signed(name: &str, value: &str) -> Result<BigInt, CliError> {
    match value.strip_prefix('-') {
        Some(rest) if rest != "0" => parse_int(name, rest).map(|v| -v),
        _ => parse_int(name, value),
    }
}

fn text_to_int(text: &str) -> BigInt {
    BigInt::from_bytes_be(Sign::Plus, text.as_bytes())
}

fn message_mod_n(message: &str, text: bool, n: &BigInt) -> Result<BigInt, CliError> {
    if text {
        Ok(text_to_int(message).mod_floor(n))
    } else {
        parse_int("-m", message)
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: display(path),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: display(path),
        source,
    })
}

fn emit(out: Option<&Path>, contents: String) -> Result<Outcome, CliError> {
    match out {
        Some(path) => {
            write(path, &contents)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(contents)),
    }
}

fn load_private(path: &Path) -> Result<PrivateKey, CliError> {
    let (p, q) = format::parse_private(&display(path), &read(path)?)?;
    Ok(PrivateKey::from_primes(p, q)?)
}

fn load_public(path: &Path) -> Result<PublicFile, CliError> {
    format::parse_public(&display(path), &read(path)?)
}
