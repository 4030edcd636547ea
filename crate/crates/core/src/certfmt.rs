//! Certificate serialization.
//!
//! Two syntaxes are read:
//!
//! * the compact list form
//!   `[Arep [:-2, 0, 1:] (-2) (-1/3), Rat 1, Arep [:-2, 0, 1:] (7/6) (19/12), Rat 2]`,
//!   which carries no kind and is interpreted by the quantifier of the
//!   formula being checked;
//! * JSON, `{"kind": "universal", "points": [{"type": "rat", "value": "2"}, …]}`,
//!   with every number written as an exact `n`, `n/d` or decimal string.
//!
//! JSON is what gets emitted.

use serde::{Deserialize, Serialize};

use crate::decide::Certificate;
use crate::error::{Error, Result};
use crate::formula::Quantifier;
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::realalg::RealAlg;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Existential,
    Universal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum PointJson {
    Rat {
        value: String,
    },
    Arep {
        poly: Vec<String>,
        lb: String,
        ub: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertJson {
    pub kind: CertKind,
    pub points: Vec<PointJson>,
}

impl From<&RealAlg> for PointJson {
    fn from(a: &RealAlg) -> PointJson {
        match a {
            RealAlg::Rat(q) => PointJson::Rat {
                value: format_rational(q),
            },
            RealAlg::Alg { poly, lb, ub } => PointJson::Arep {
                poly: poly.coeffs().iter().map(format_rational).collect(),
                lb: format_rational(lb),
                ub: format_rational(ub),
            },
        }
    }
}

impl TryFrom<&PointJson> for RealAlg {
    type Error = Error;

    fn try_from(p: &PointJson) -> Result<RealAlg> {
        Ok(match p {
            PointJson::Rat { value } => RealAlg::Rat(parse_rational(value)?),
            PointJson::Arep { poly, lb, ub } => RealAlg::Alg {
                poly: Poly::new(
                    poly.iter()
                        .map(|c| parse_rational(c))
                        .collect::<Result<_>>()?,
                ),
                lb: parse_rational(lb)?,
                ub: parse_rational(ub)?,
            },
        })
    }
}

impl From<&Certificate> for CertJson {
    fn from(c: &Certificate) -> CertJson {
        let kind = match c {
            Certificate::Existential(_) => CertKind::Existential,
            Certificate::Universal(_) => CertKind::Universal,
        };
        CertJson {
            kind,
            points: c.points().iter().map(PointJson::from).collect(),
        }
    }
}

impl TryFrom<&CertJson> for Certificate {
    type Error = Error;

    fn try_from(c: &CertJson) -> Result<Certificate> {
        let points: Vec<RealAlg> = c
            .points
            .iter()
            .map(RealAlg::try_from)
            .collect::<Result<_>>()?;
        match c.kind {
            CertKind::Universal => Ok(Certificate::Universal(points)),
            CertKind::Existential => match <[RealAlg; 1]>::try_from(points) {
                Ok([w]) => Ok(Certificate::Existential(w)),
                Err(ps) => Err(Error::Certificate(format!(
                    "an existential certificate has exactly one point, found {}",
                    ps.len()
                ))),
            },
        }
    }
}

pub fn point_to_json(a: &RealAlg) -> serde_json::Value {
    serde_json::to_value(PointJson::from(a)).expect("point serializes")
}

pub fn certificate_to_json(c: &Certificate) -> serde_json::Value {
    serde_json::to_value(CertJson::from(c)).expect("certificate serializes")
}

pub fn certificate_from_json(text: &str) -> Result<Certificate> {
    let raw: CertJson =
        serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))?;
    Certificate::try_from(&raw)
}

/// Compact list form of the points.
pub fn format_points(points: &[RealAlg]) -> String {
    let entries: Vec<String> = points.iter().map(RealAlg::to_cert_entry).collect();
    format!("[{}]", entries.join(", "))
}

/// Reads a certificate in either syntax. A kind-less list is read as a
/// certificate for `quantifier`.
pub fn parse_certificate(text: &str, quantifier: Quantifier) -> Result<Certificate> {
    if text.trim_start().starts_with('{') {
        return certificate_from_json(text);
    }
    let points = parse_points(text)?;
    match quantifier {
        Quantifier::Forall => Ok(Certificate::Universal(points)),
        Quantifier::Exists => match <[RealAlg; 1]>::try_from(points) {
            Ok([w]) => Ok(Certificate::Existential(w)),
            Err(ps) => Err(Error::Certificate(format!(
                "an existential certificate has exactly one point, found {}",
                ps.len()
            ))),
        },
    }
}

/// Parses `[entry, entry, …]` in the compact list form.
pub fn parse_points(text: &str) -> Result<Vec<RealAlg>> {
    let mut cur = Cursor::new(text);
    cur.expect('[')?;
    let mut out = Vec::new();
    if cur.eat(']') {
        cur.finish()?;
        return Ok(out);
    }
    loop {
        out.push(cur.entry()?);
        if cur.eat(']') {
            break;
        }
        cur.expect(',')?;
    }
    cur.finish()?;
    Ok(out)
}

/// Parses a single entry such as `Rat -3` or `Arep [:-2,0,1:] 0 2`.
pub fn parse_point(text: &str) -> Result<RealAlg> {
    let mut cur = Cursor::new(text);
    let p = cur.entry()?;
    cur.finish()?;
    Ok(p)
}

struct Cursor<'a> {
    text: &'a str,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, at: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.at..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.at = self.text.len() - trimmed.len();
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Certificate(format!(
            "at position {}: {}",
            self.at,
            msg.into()
        )))
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.at += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        self.at += len;
        &rest[..len]
    }

    fn entry(&mut self) -> Result<RealAlg> {
        match self.word() {
            "Rat" => Ok(RealAlg::Rat(self.rational()?)),
            "Arep" => {
                let poly = self.coeff_list()?;
                let lb = self.rational()?;
                let ub = self.rational()?;
                Ok(RealAlg::Alg { poly, lb, ub })
            }
            other => self.err(format!("expected `Rat` or `Arep`, found `{other}`")),
        }
    }

    /// A rational argument: bare (`-2`, `7/6`, `2.5`) or parenthesized
    /// (`(-1/3)`, `(- 1/3)`).
    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let rest = self.rest();
        let (lit, len) = if let Some(inner) = rest.strip_prefix('(') {
            match inner.find(')') {
                Some(close) => (&inner[..close], close + 2),
                None => return self.err("unclosed `(`"),
            }
        } else {
            let len = rest
                .find(|c: char| c.is_whitespace() || c == ',' || c == ']' || c == ':')
                .unwrap_or(rest.len());
            (&rest[..len], len)
        };
        if lit.trim().is_empty() {
            return self.err("expected a rational number");
        }
        let q = parse_rational(lit).or_else(|_| self.err(format!("malformed rational `{lit}`")))?;
        self.at += len;
        Ok(q)
    }

    fn coeff_list(&mut self) -> Result<Poly> {
        self.skip_ws();
        if !self.rest().starts_with("[:") {
            return self.err("expected a coefficient list `[: … :]`");
        }
        self.at += 2;
        let mut coeffs = Vec::new();
        loop {
            coeffs.push(self.rational()?);
            self.skip_ws();
            if self.rest().starts_with(":]") {
                self.at += 2;
                break;
            }
            self.expect(',')?;
        }
        Ok(Poly::new(coeffs))
    }
}
