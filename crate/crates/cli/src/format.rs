//! Text formats for key and ciphertext files.
//!
//! Every line is `name=value` terminated by a single `\n`, values are
//! decimal with no sign and no leading zeros, and fields appear in a fixed
//! order. Key files start with a header line; ciphertext files start with
//! the `scheme=` tag.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rabin::schemes::{dedekind, giso, jacobi1, jacobi2, williams, Ciphertext, Scheme, SchemeKey};
use rabin::PrivateKey;

use crate::CliError;

pub const PRIVATE_HEADER: &str = "rabin-private-key v1";
pub const PUBLIC_HEADER: &str = "rabin-public-key v1";

/// Contents of a public key file: `n` plus whichever scheme extras were
/// published by `setup`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PublicFile {
    pub n: BigInt,
    pub s: Option<BigInt>,
    pub xi: Option<BigInt>,
    pub bigp: Option<BigInt>,
    pub g1: Option<BigInt>,
    pub g2: Option<BigInt>,
}

impl PublicFile {
    pub fn bare(n: BigInt) -> Self {
        PublicFile {
            n,
            ..Default::default()
        }
    }

    pub fn from_scheme_key(key: &SchemeKey) -> Self {
        let mut out = PublicFile::bare(key.modulus().clone());
        match key {
            SchemeKey::Williams(pk) => out.s = Some(pk.s.clone()),
            SchemeKey::Jacobi2(pk) => out.xi = Some(pk.xi.clone()),
            SchemeKey::Giso(pk) => {
                out.bigp = Some(pk.big_p.clone());
                out.g1 = Some(pk.g1.clone());
                out.g2 = Some(pk.g2.clone());
            }
            SchemeKey::Jacobi1(_) | SchemeKey::Dedekind(_) => {}
        }
        out
    }

    /// Public parameters for `scheme`, or a validation error naming the
    /// missing field.
    pub fn scheme_key(&self, scheme: Scheme) -> Result<SchemeKey, CliError> {
        let need = |field: &Option<BigInt>, name: &str| {
            field.clone().ok_or_else(|| {
                CliError::Usage(format!(
                    "public key has no `{name}` field; run `setup --scheme {scheme}` first"
                ))
            })
        };
        let n = self.n.clone();
        Ok(match scheme {
            Scheme::Williams => SchemeKey::Williams(williams::PublicKey { n, s: need(&self.s, "s")? }),
            Scheme::Jacobi1 => SchemeKey::Jacobi1(n),
            Scheme::Jacobi2 => SchemeKey::Jacobi2(jacobi2::PublicKey { n, xi: need(&self.xi, "xi")? }),
            Scheme::Dedekind => SchemeKey::Dedekind(n),
            Scheme::Giso => SchemeKey::Giso(giso::PublicKey {
                n,
                big_p: need(&self.bigp, "bigp")?,
                g1: need(&self.g1, "g1")?,
                g2: need(&self.g2, "g2")?,
            }),
        })
    }
}

pub fn write_private(sk: &PrivateKey) -> String {
    format!("{PRIVATE_HEADER}\np={}\nq={}\n", sk.p(), sk.q())
}

pub fn write_public(pk: &PublicFile) -> String {
    let mut out = format!("{PUBLIC_HEADER}\nn={}\n", pk.n);
    let extras = [("s", &pk.s), ("xi", &pk.xi), ("bigp", &pk.bigp), ("g1", &pk.g1), ("g2", &pk.g2)];
    for (name, value) in extras {
        if let Some(v) = value {
            let _ = writeln!(out, "{name}={v}");
        }
    }
    out
}

pub fn write_ciphertext(ct: &Ciphertext) -> String {
    let mut out = format!("scheme={}\n", ct.scheme());
    let mut field = |name: &str, value: &dyn std::fmt::Display| {
        let _ = writeln!(out, "{name}={value}");
    };
    match ct {
        Ciphertext::Williams(ct) => {
            field("c", &ct.c);
            field("c1", &ct.c1);
            field("c2", &ct.c2);
        }
        Ciphertext::Jacobi1(jacobi1::Ciphertext { c, b0, b1 })
        | Ciphertext::Dedekind(dedekind::Ciphertext { c, b0, b1 }) => {
            field("c", c);
            field("b0", b0);
            field("b1", b1);
        }
        Ciphertext::Jacobi2(ct) => field("c", &ct.c),
        Ciphertext::Giso(ct) => {
            field("c", &ct.c);
            field("b0", &ct.b0);
            field("d1", &ct.d1);
            field("d2", &ct.d2);
            field("p1", &ct.p1);
            field("p2", &ct.p2);
        }
    }
    out
}

/// Strict decimal: ASCII digits only, no leading zeros except `0` itself.
pub fn parse_decimal(s: &str) -> Option<BigInt> {
    let canonical = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'));
    canonical.then(|| s.parse().ok()).flatten()
}

/// Line-oriented reader that reports errors as `path:line: message`.
struct Lines<'a> {
    path: &'a str,
    lines: Vec<&'a str>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(path: &'a str, text: &'a str) -> Result<Self, CliError> {
        let body = text.strip_suffix('\n').ok_or_else(|| CliError::Parse {
            path: path.to_owned(),
            line: text.lines().count().max(1),
            message: "file must end with a single newline".into(),
        })?;
        Ok(Lines {
            path,
            lines: body.split('\n').collect(),
            next: 0,
        })
    }

    fn error(&self, line: usize, message: String) -> CliError {
        CliError::Parse {
            path: self.path.to_owned(),
            line,
            message,
        }
    }

    fn header(&mut self, expected: &str) -> Result<(), CliError> {
        match self.lines.first() {
            Some(&h) if h == expected => {
                self.next = 1;
                Ok(())
            }
            Some(h) => Err(self.error(1, format!("expected header `{expected}`, found `{h}`"))),
            None => Err(self.error(1, format!("expected header `{expected}`"))),
        }
    }

    fn peek_name(&self) -> Option<&'a str> {
        self.lines.get(self.next).map(|l| l.split_once('=').map_or(*l, |(name, _)| name))
    }

    fn raw(&mut self, name: &str) -> Result<(usize, &'a str), CliError> {
        let line = self.next + 1;
        let text = *self
            .lines
            .get(self.next)
            .ok_or_else(|| self.error(line, format!("missing field `{name}`")))?;
        let value = text
            .strip_prefix(name)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| self.error(line, format!("expected `{name}=<value>`, found `{text}`")))?;
        self.next += 1;
        Ok((line, value))
    }

    fn int(&mut self, name: &str) -> Result<BigInt, CliError> {
        let (line, value) = self.raw(name)?;
        parse_decimal(value)
            .ok_or_else(|| self.error(line, format!("`{name}` is not a canonical decimal: `{value}`")))
    }

    fn optional_int(&mut self, name: &str) -> Result<Option<BigInt>, CliError> {
        if self.peek_name() == Some(name) {
            self.int(name).map(Some)
        } else {
            Ok(None)
        }
    }

    fn bit(&mut self, name: &str) -> Result<u8, CliError> {
        let (line, value) = self.raw(name)?;
        match value {
            "0" => Ok(0),
            "1" => Ok(1),
            _ => Err(self.error(line, format!("`{name}` must be 0 or 1, found `{value}`"))),
        }
    }

    fn position(&mut self, name: &str) -> Result<u64, CliError> {
        let (line, value) = self.raw(name)?;
        parse_decimal(value)
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(|| self.error(line, format!("`{name}` is not a bit position: `{value}`")))
    }

    fn finish(&self) -> Result<(), CliError> {
        match self.lines.get(self.next) {
            None => Ok(()),
            Some(extra) => Err(self.error(self.next + 1, format!("unexpected line `{extra}`"))),
        }
    }
}

pub fn parse_private(path: &str, text: &str) -> Result<(BigInt, BigInt), CliError> {
    let mut lines = Lines::new(path, text)?;
    lines.header(PRIVATE_HEADER)?;
    let p = lines.int("p")?;
    let q = lines.int("q")?;
    lines.finish()?;
    Ok((p, q))
}

pub fn parse_public(path: &str, text: &str) -> Result<PublicFile, CliError> {
    let mut lines = Lines::new(path, text)?;
    lines.header(PUBLIC_HEADER)?;
    let out = PublicFile {
        n: lines.int("n")?,
        s: lines.optional_int("s")?,
        xi: lines.optional_int("xi")?,
        bigp: lines.optional_int("bigp")?,
        g1: lines.optional_int("g1")?,
        g2: lines.optional_int("g2")?,
    };
    lines.finish()?;
    Ok(out)
}

pub fn parse_ciphertext(path: &str, text: &str) -> Result<Ciphertext, CliError> {
    let mut lines = Lines::new(path, text)?;
    let (line, tag) = lines.raw("scheme")?;
    let scheme: Scheme = tag
        .parse()
        .map_err(|_| lines.error(line, format!("unknown scheme `{tag}`")))?;
    let c = lines.int("c")?;
    let ct = match scheme {
        Scheme::Williams => Ciphertext::Williams(williams::Ciphertext {
            c,
            c1: lines.bit("c1")?,
            c2: lines.bit("c2")?,
        }),
        Scheme::Jacobi1 => Ciphertext::Jacobi1(jacobi1::Ciphertext {
            c,
            b0: lines.bit("b0")?,
            b1: lines.bit("b1")?,
        }),
        Scheme::Jacobi2 => Ciphertext::Jacobi2(jacobi2::Ciphertext { c }),
        Scheme::Dedekind => Ciphertext::Dedekind(dedekind::Ciphertext {
            c,
            b0: lines.bit("b0")?,
            b1: lines.bit("b1")?,
        }),
        Scheme::Giso => Ciphertext::Giso(giso::Ciphertext {
            c,
            b0: lines.bit("b0")?,
            d1: lines.bit("d1")?,
            d2: lines.bit("d2")?,
            p1: lines.position("p1")?,
            p2: lines.position("p2")?,
        }),
    };
    lines.finish()?;
    Ok(ct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn decimal_is_strict() {
        assert_eq!(parse_decimal("0"), Some(b(0)));
        assert_eq!(parse_decimal("120"), Some(b(120)));
        for bad in ["", "012", "-1", "+1", " 1", "1 ", "1e3", "0x10"] {
            assert_eq!(parse_decimal(bad), None, "{bad:?}");
        }
    }

    #[test]
    fn private_file_layout() {
        let sk = PrivateKey::from_primes(b(3), b(7)).unwrap();
        let text = write_private(&sk);
        assert_eq!(text, "rabin-private-key v1\np=3\nq=7\n");
        assert_eq!(parse_private("k", &text).unwrap(), (b(3), b(7)));
    }

    #[test]
    fn public_file_field_order() {
        let pk = PublicFile {
            n: b(65),
            bigp: Some(b(131)),
            g1: Some(b(4)),
            g2: Some(b(55)),
            ..Default::default()
        };
        let text = write_public(&pk);
        assert_eq!(text, "rabin-public-key v1\nn=65\nbigp=131\ng1=4\ng2=55\n");
        assert_eq!(parse_public("k", &text).unwrap(), pk);
        // out-of-order extras are rejected
        let swapped = "rabin-public-key v1\nn=65\ng1=4\nbigp=131\ng2=55\n";
        assert!(parse_public("k", swapped).is_err());
    }

    #[test]
    fn ciphertext_layouts() {
        let cases = [
            (
                Ciphertext::Williams(williams::Ciphertext { c: b(16), c1: 0, c2: 1 }),
                "scheme=williams\nc=16\nc1=0\nc2=1\n",
            ),
            (
                Ciphertext::Jacobi1(jacobi1::Ciphertext { c: b(16), b0: 1, b1: 0 }),
                "scheme=jacobi1\nc=16\nb0=1\nb1=0\n",
            ),
            (Ciphertext::Jacobi2(jacobi2::Ciphertext { c: b(5) }), "scheme=jacobi2\nc=5\n"),
            (
                Ciphertext::Dedekind(dedekind::Ciphertext { c: b(1), b0: 1, b1: 1 }),
                "scheme=dedekind\nc=1\nb0=1\nb1=1\n",
            ),
            (
                Ciphertext::Giso(giso::Ciphertext { c: b(4), b0: 0, d1: 0, d2: 0, p1: 2, p2: 0 }),
                "scheme=giso\nc=4\nb0=0\nd1=0\nd2=0\np1=2\np2=0\n",
            ),
        ];
        for (ct, text) in cases {
            assert_eq!(write_ciphertext(&ct), text);
            assert_eq!(parse_ciphertext("ct", text).unwrap(), ct);
        }
    }

    fn line_of(err: CliError) -> usize {
        match err {
            CliError::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert_eq!(line_of(parse_private("k", "rabin-private-key v1\np=3\nq=07\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_private("k", "bogus\np=3\nq=7\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_private("k", "rabin-private-key v1\np=3\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_private("k", "rabin-private-key v1\np=3\nq=7\nr=1\n").unwrap_err()), 4);
        assert_eq!(line_of(parse_private("k", "rabin-private-key v1\np=3\nq=7").unwrap_err()), 3);
        assert_eq!(line_of(parse_ciphertext("ct", "scheme=rsa\nc=1\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_ciphertext("ct", "scheme=jacobi1\nc=16\nb0=2\nb1=0\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_ciphertext("ct", "scheme=jacobi2\nc=5\nb0=1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_ciphertext("ct", "scheme=jacobi1\nc=16\r\nb0=1\nb1=0\n").unwrap_err()), 2);
        let err = parse_public("pub.key", "rabin-public-key v1\nn=-21\n").unwrap_err();
        assert!(err.to_string().starts_with("pub.key:2:"), "{err}");
    }
}
