//! Recursive-descent parser for formulas and polynomial expressions.
//!
//! ```text
//! formula := ("forall" | "exists") ident "." disj
//! disj    := conj { ("\/" | "∨" | "|") conj }
//! conj    := neg { ("/\" | "∧" | "&") neg }
//! neg     := { "~" | "¬" } primary
//! primary := "(" disj ")" | "true" | "false" | atom
//! atom    := expr rel expr
//! expr    := term { ("+" | "-") term }
//! term    := unary { ("*" | "/") unary }
//! unary   := ("-" | "+") unary | power
//! power   := base [ "^" natural ]
//! base    := number | ident | "(" expr ")" | "[:" expr { "," expr } ":]"
//! ```
//!
//! A parenthesis at `primary` is first tried as the start of an atom such as
//! `(x + 1)^2 > 0`, and re-read as a grouped formula when that fails.

use num_traits::ToPrimitive;

use super::{Formula, QfFormula, Quantifier, Rel};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{parse_rational, Rational};

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(Rational),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Dot,
    Comma,
    ListOpen,
    ListClose,
    And,
    Or,
    Not,
    Forall,
    Exists,
    Rel(Rel),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<(Vec<Token>, usize)> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        let mut width = 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '.' => Tok::Dot,
            ',' => Tok::Comma,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '~' | '¬' => Tok::Not,
            '∀' => Tok::Forall,
            '∃' => Tok::Exists,
            '≤' => Tok::Rel(Rel::Le),
            '≥' => Tok::Rel(Rel::Ge),
            '≠' => Tok::Rel(Rel::Ne),
            '/' if next == Some('\\') => {
                width = 2;
                Tok::And
            }
            '/' => Tok::Slash,
            '\\' if next == Some('/') => {
                width = 2;
                Tok::Or
            }
            '[' if next == Some(':') => {
                width = 2;
                Tok::ListOpen
            }
            ':' if next == Some(']') => {
                width = 2;
                Tok::ListClose
            }
            '<' if next == Some('=') => {
                width = 2;
                Tok::Rel(Rel::Le)
            }
            '<' if next == Some('>') => {
                width = 2;
                Tok::Rel(Rel::Ne)
            }
            '<' => Tok::Rel(Rel::Lt),
            '>' if next == Some('=') => {
                width = 2;
                Tok::Rel(Rel::Ge)
            }
            '>' => Tok::Rel(Rel::Gt),
            '=' if next == Some('=') => {
                width = 2;
                Tok::Rel(Rel::Eq)
            }
            '=' => Tok::Rel(Rel::Eq),
            '!' if next == Some('=') => {
                width = 2;
                Tok::Rel(Rel::Ne)
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j].1 == '.' && chars[j + 1].1.is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].1.is_ascii_digit() {
                        j += 1;
                    }
                }
                let end = chars.get(j).map_or(text.len(), |&(p, _)| p);
                width = j - i;
                Tok::Num(parse_rational(&text[pos..end]).map_err(|_| err(pos, "malformed number"))?)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                let end = chars.get(j).map_or(text.len(), |&(p, _)| p);
                width = j - i;
                match &text[pos..end] {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    word => Tok::Ident(word.to_string()),
                }
            }
            _ => return Err(err(pos, &format!("unexpected character `{c}`"))),
        };
        out.push(Token { tok, pos });
        i += width;
    }
    Ok((out, text.len()))
}

struct Parser {
    toks: Vec<Token>,
    end: usize,
    at: usize,
    /// The variable every atom must be written in; fixed by the quantifier or
    /// by the first identifier seen.
    var: Option<String>,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        let (toks, end) = lex(text)?;
        Ok(Parser {
            toks,
            end,
            at: 0,
            var: None,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at < self.toks.len() {
            self.error("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let quantifier = match self.peek() {
            Some(Tok::Forall) => Quantifier::Forall,
            Some(Tok::Exists) => Quantifier::Exists,
            _ => return self.error("expected `forall` or `exists`"),
        };
        self.at += 1;
        let var = match self.peek() {
            Some(Tok::Ident(name)) if !is_keyword(name) => name.clone(),
            _ => return self.error("expected a variable name"),
        };
        self.at += 1;
        self.expect(&Tok::Dot, "`.` after the quantified variable")?;
        self.var = Some(var.clone());
        let body = self.disj()?;
        self.finish()?;
        Ok(Formula {
            quantifier,
            var,
            body,
        })
    }

    fn disj(&mut self) -> Result<QfFormula> {
        let mut f = self.conj()?;
        while self.eat(&Tok::Or) {
            f = QfFormula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<QfFormula> {
        let mut f = self.neg()?;
        while self.eat(&Tok::And) {
            f = QfFormula::and(f, self.neg()?);
        }
        Ok(f)
    }

    fn neg(&mut self) -> Result<QfFormula> {
        if self.eat(&Tok::Not) {
            return Ok(QfFormula::negation(self.neg()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<QfFormula> {
        match self.peek() {
            Some(Tok::Ident(w)) if w == "true" => {
                self.at += 1;
                Ok(QfFormula::True)
            }
            Some(Tok::Ident(w)) if w == "false" => {
                self.at += 1;
                Ok(QfFormula::False)
            }
            Some(Tok::LParen) => {
                let start = self.at;
                let saved_var = self.var.clone();
                match self.atom() {
                    Ok(a) => Ok(a),
                    Err(atom_err) => {
                        self.at = start;
                        self.var = saved_var;
                        self.at += 1;
                        let inner = self.disj();
                        let grouped =
                            inner.and_then(|f| self.expect(&Tok::RParen, "`)`").map(|_| f));
                        // report whichever reading got further
                        grouped.map_err(|e| furthest(e, atom_err))
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<QfFormula> {
        let lhs = self.expr()?;
        let rel = match self.peek() {
            Some(Tok::Rel(r)) => *r,
            _ => return self.error("expected a relation (<, <=, =, !=, >=, >)"),
        };
        self.at += 1;
        let rhs = self.expr()?;
        Ok(QfFormula::atom(lhs - rhs, rel))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc + self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc * self.unary()?;
            } else if self.peek() == Some(&Tok::Slash) {
                let pos = self.pos();
                self.at += 1;
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Parse {
                        pos,
                        msg: "division is only allowed by a nonzero constant".into(),
                    });
                }
                acc = acc.scale(&d.lcoef().recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.unary()?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let e = match self.peek() {
            Some(Tok::Num(q)) if q.is_integer() => {
                q.to_integer().to_u32().filter(|&e| e <= MAX_EXPONENT)
            }
            _ => None,
        };
        match e {
            Some(e) => {
                self.at += 1;
                Ok(base.pow(e))
            }
            None => self.error(format!(
                "exponent must be a natural number at most {MAX_EXPONENT}"
            )),
        }
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.at += 1;
                Ok(Poly::constant(q))
            }
            Some(Tok::Ident(name)) if !is_keyword(&name) => {
                match &self.var {
                    Some(v) if *v != name => {
                        return self.error(format!(
                            "only one variable is supported, found `{name}` besides `{v}`"
                        ))
                    }
                    Some(_) => {}
                    None => self.var = Some(name),
                }
                self.at += 1;
                Ok(Poly::x())
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::ListOpen) => {
                self.at += 1;
                let mut coeffs = Vec::new();
                loop {
                    let pos = self.pos();
                    let c = self.expr()?;
                    if !c.is_constant() {
                        return Err(Error::Parse {
                            pos,
                            msg: "coefficient must be a constant".into(),
                        });
                    }
                    coeffs.push(c.lcoef());
                    if self.eat(&Tok::ListClose) {
                        break;
                    }
                    self.expect(&Tok::Comma, "`,` or `:]`")?;
                }
                Ok(Poly::new(coeffs))
            }
            _ => self.error("expected a number, variable or `(`"),
        }
    }
}

fn is_keyword(word: &str) -> bool {
    matches!(word, "true" | "false" | "forall" | "exists")
}

fn furthest(a: Error, b: Error) -> Error {
    match (&a, &b) {
        (Error::Parse { pos: pa, .. }, Error::Parse { pos: pb, .. }) if pb > pa => b,
        _ => a,
    }
}

/// Parses `forall x. body` or `exists x. body`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    Parser::new(text)?.formula()
}

/// Parses a polynomial in expression form (`x^2 - 2`) or coefficient-list
/// form (`[:-2, 0, 1:]`, ascending).
pub fn parse_poly(text: &str) -> Result<Poly> {
    let mut p = Parser::new(text)?;
    if p.toks.is_empty() {
        return p.error("empty polynomial");
    }
    let poly = p.expr()?;
    p.finish()?;
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn universal_example_formula() {
        let f = parse_formula("forall x. (x^2 > 2 /\\ x^10 - 2*x^5 + 1 >= 0) \\/ x < 2").unwrap();
        let want = QfFormula::or(
            QfFormula::and(
                QfFormula::atom(p(&[-2, 0, 1]), Rel::Gt),
                QfFormula::atom(p(&[1, 0, 0, 0, 0, -2, 0, 0, 0, 0, 1]), Rel::Ge),
            ),
            QfFormula::atom(p(&[-2, 1]), Rel::Lt),
        );
        assert_eq!(f, Formula::new(Quantifier::Forall, "x", want));
    }

    #[test]
    fn existential_example_formula() {
        let f = parse_formula("exists x. x*x = 2 /\\ x*x*x > 2.5").unwrap();
        let cubic = Poly::new(vec![frac(-5, 2), rat(0), rat(0), rat(1)]);
        let want = QfFormula::and(
            QfFormula::atom(p(&[-2, 0, 1]), Rel::Eq),
            QfFormula::atom(cubic, Rel::Gt),
        );
        assert_eq!(f, Formula::new(Quantifier::Exists, "x", want));
    }

    #[test]
    fn trivial_body() {
        assert_eq!(
            parse_formula("forall x. true").unwrap(),
            Formula::new(Quantifier::Forall, "x", QfFormula::True)
        );
    }

    #[test]
    fn unicode_connectives() {
        let a = parse_formula("∀ y. ¬(y ≤ 1) ∨ y ≥ 0 ∧ y ≠ 3").unwrap();
        let b = parse_formula("forall y. ~(y <= 1) \\/ y >= 0 /\\ y != 3").unwrap();
        assert_eq!(a, b);
        let c = parse_formula("forall y. ~(y <= 1) | y >= 0 & y != 3").unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn parenthesized_expressions_and_groups() {
        let f = parse_formula("exists x. (x + 1)^2 > (x - 1) * 3").unwrap();
        assert_eq!(f.body, QfFormula::atom(p(&[4, -1, 1]), Rel::Gt));
        let g = parse_formula("exists x. ((x > 0))").unwrap();
        assert_eq!(g.body, QfFormula::atom(p(&[0, 1]), Rel::Gt));
        let h = parse_formula("exists x. ~~(x > 0)").unwrap();
        assert_eq!(
            h.body,
            QfFormula::negation(QfFormula::negation(QfFormula::atom(p(&[0, 1]), Rel::Gt)))
        );
    }

    #[test]
    fn precedence() {
        // and binds tighter than or
        let f = parse_formula("forall x. x > 0 \\/ x < 0 /\\ x = 1").unwrap();
        assert!(matches!(f.body, QfFormula::Or(_, _)));
        assert_eq!(parse_poly("-x^2").unwrap(), p(&[0, 0, -1]));
        assert_eq!(parse_poly("2^3*x").unwrap(), p(&[0, 8]));
        assert_eq!(
            parse_poly("1/3*x - 1/2").unwrap(),
            Poly::new(vec![frac(-1, 2), frac(1, 3)])
        );
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_poly("[:-2, 0, 1:]").unwrap(), p(&[-2, 0, 1]));
        assert_eq!(
            parse_poly("[:-2.5,0,0,1:]").unwrap(),
            Poly::new(vec![frac(-5, 2), rat(0), rat(0), rat(1)])
        );
        assert_eq!(
            parse_poly("[:(-1/3), 1:]").unwrap(),
            Poly::new(vec![frac(-1, 3), rat(1)])
        );
        assert!(parse_poly("[:0, 0:]").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("forall x. x + y > 0").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                pos: 14,
                msg: "only one variable is supported, found `y` besides `x`".into()
            }
        );
        assert!(matches!(
            parse_formula("forall x x > 0"),
            Err(Error::Parse { pos: 9, .. })
        ));
        assert!(matches!(
            parse_formula("forall x. x >"),
            Err(Error::Parse { pos: 13, .. })
        ));
        assert!(matches!(
            parse_formula("forall x. x > 0)"),
            Err(Error::Parse { pos: 15, .. })
        ));
        assert!(matches!(
            parse_formula("exists x. x^y > 0"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_formula("exists x. 1/x > 0"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_formula("exists x. x # 0"),
            Err(Error::Parse { pos: 12, .. })
        ));
        assert!(matches!(
            parse_formula("x > 0"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse_formula("exists true. 1 > 0"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x y").is_err());
    }
}
