//! Single-quantifier formulas over one real variable.
//!
//! A [`Formula`] is parsed from text, its quantifier-free body is turned into
//! a negation-free [`SignCondFormula`] whose atoms ask whether the sign of a
//! polynomial belongs to an allowed set, and that form is what the checkers
//! evaluate.

mod parser;

use std::fmt;

use crate::error::Result;
use crate::poly::{Poly, Sign};
use crate::rational::Rational;
use crate::realalg::{sign_at_unchecked, RealAlg};

pub use parser::{parse_formula, parse_poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        }
    }
}

/// Relation of an atom `poly rel 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Rel {
    pub const ALL: [Rel; 6] = [Rel::Lt, Rel::Le, Rel::Eq, Rel::Ne, Rel::Ge, Rel::Gt];

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }

    /// Signs of the left-hand side for which `lhs rel 0` holds.
    pub fn allowed_signs(self) -> SignSet {
        match self {
            Rel::Lt => SignSet::NEG,
            Rel::Le => SignSet::NEG.union(SignSet::ZERO),
            Rel::Eq => SignSet::ZERO,
            Rel::Ne => SignSet::NEG.union(SignSet::POS),
            Rel::Ge => SignSet::ZERO.union(SignSet::POS),
            Rel::Gt => SignSet::POS,
        }
    }
}

/// `poly rel 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub poly: Poly,
    pub rel: Rel,
}

impl Atom {
    pub fn new(poly: Poly, rel: Rel) -> Atom {
        Atom { poly, rel }
    }

    pub fn holds_at(&self, x: &Rational) -> bool {
        self.rel
            .allowed_signs()
            .contains(self.poly.sign_at_rational(x))
    }
}

/// Quantifier-free body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QfFormula {
    True,
    False,
    Atom(Atom),
    Not(Box<QfFormula>),
    And(Box<QfFormula>, Box<QfFormula>),
    Or(Box<QfFormula>, Box<QfFormula>),
}

impl QfFormula {
    pub fn atom(poly: Poly, rel: Rel) -> QfFormula {
        QfFormula::Atom(Atom::new(poly, rel))
    }

    pub fn negation(f: QfFormula) -> QfFormula {
        QfFormula::Not(Box::new(f))
    }

    pub fn and(a: QfFormula, b: QfFormula) -> QfFormula {
        QfFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: QfFormula, b: QfFormula) -> QfFormula {
        QfFormula::Or(Box::new(a), Box::new(b))
    }

    /// Direct relational evaluation at a rational point.
    pub fn eval_rational(&self, x: &Rational) -> bool {
        match self {
            QfFormula::True => true,
            QfFormula::False => false,
            QfFormula::Atom(a) => a.holds_at(x),
            QfFormula::Not(f) => !f.eval_rational(x),
            QfFormula::And(a, b) => a.eval_rational(x) && b.eval_rational(x),
            QfFormula::Or(a, b) => a.eval_rational(x) || b.eval_rational(x),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        match self {
            QfFormula::True => f.write_str("true"),
            QfFormula::False => f.write_str("false"),
            QfFormula::Atom(a) => write!(f, "{} {} 0", a.poly.to_expr(var), a.rel.symbol()),
            QfFormula::Not(inner) => {
                f.write_str("~")?;
                inner.write_operand(f, var, true)
            }
            QfFormula::And(a, b) | QfFormula::Or(a, b) => {
                a.write_operand(f, var, false)?;
                f.write_str(if matches!(self, QfFormula::And(..)) {
                    " /\\ "
                } else {
                    " \\/ "
                })?;
                b.write_operand(f, var, false)
            }
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>, var: &str, under_not: bool) -> fmt::Result {
        let wrap = match self {
            QfFormula::And(..) | QfFormula::Or(..) => true,
            QfFormula::Atom(_) => under_not,
            _ => false,
        };
        if wrap {
            f.write_str("(")?;
            self.write(f, var)?;
            f.write_str(")")
        } else {
            self.write(f, var)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    pub quantifier: Quantifier,
    pub var: String,
    pub body: QfFormula,
}

impl Formula {
    pub fn new(quantifier: Quantifier, var: impl Into<String>, body: QfFormula) -> Formula {
        Formula {
            quantifier,
            var: var.into(),
            body,
        }
    }

    /// `¬(Q x. φ)` rewritten as `Q' x. ¬φ`.
    pub fn negate(&self) -> Formula {
        Formula {
            quantifier: self.quantifier.dual(),
            var: self.var.clone(),
            body: QfFormula::negation(self.body.clone()),
        }
    }

    pub fn sign_conditions(&self) -> SignCondFormula {
        to_sign_conditions(&self.body)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}. ", self.quantifier.keyword(), self.var)?;
        self.body.write(f, &self.var)
    }
}

/// Subset of `{-1, 0, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignSet(u8);

impl SignSet {
    pub const EMPTY: SignSet = SignSet(0);
    pub const NEG: SignSet = SignSet(1);
    pub const ZERO: SignSet = SignSet(2);
    pub const POS: SignSet = SignSet(4);
    pub const ALL: SignSet = SignSet(7);

    pub const fn union(self, other: SignSet) -> SignSet {
        SignSet(self.0 | other.0)
    }

    pub fn complement(self) -> SignSet {
        SignSet(!self.0 & 7)
    }

    pub fn single(s: Sign) -> SignSet {
        match s {
            Sign::Neg => SignSet::NEG,
            Sign::Zero => SignSet::ZERO,
            Sign::Pos => SignSet::POS,
        }
    }

    pub fn contains(self, s: Sign) -> bool {
        self.0 & SignSet::single(s).0 != 0
    }

    pub fn signs(self) -> impl Iterator<Item = Sign> {
        [Sign::Neg, Sign::Zero, Sign::Pos]
            .into_iter()
            .filter(move |&s| self.contains(s))
    }
}

impl fmt::Display for SignSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signs().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Negation-free body whose atoms test `sgn(poly) ∈ allowed`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SignCondFormula {
    True,
    False,
    Cond { poly: Poly, allowed: SignSet },
    And(Box<SignCondFormula>, Box<SignCondFormula>),
    Or(Box<SignCondFormula>, Box<SignCondFormula>),
}

/// Pushes negations to the atoms by complementing sign sets, and folds atoms
/// over constant polynomials to `True`/`False`.
pub fn to_sign_conditions(f: &QfFormula) -> SignCondFormula {
    convert(f, false)
}

fn convert(f: &QfFormula, negated: bool) -> SignCondFormula {
    match f {
        QfFormula::True if negated => SignCondFormula::False,
        QfFormula::True => SignCondFormula::True,
        QfFormula::False if negated => SignCondFormula::True,
        QfFormula::False => SignCondFormula::False,
        QfFormula::Not(inner) => convert(inner, !negated),
        QfFormula::And(a, b) | QfFormula::Or(a, b) => {
            let (ca, cb) = (Box::new(convert(a, negated)), Box::new(convert(b, negated)));
            if matches!(f, QfFormula::And(..)) != negated {
                SignCondFormula::And(ca, cb)
            } else {
                SignCondFormula::Or(ca, cb)
            }
        }
        QfFormula::Atom(Atom { poly, rel }) => {
            let mut allowed = rel.allowed_signs();
            if negated {
                allowed = allowed.complement();
            }
            if poly.is_constant() {
                if allowed.contains(Sign::of(&poly.lcoef())) {
                    SignCondFormula::True
                } else {
                    SignCondFormula::False
                }
            } else {
                SignCondFormula::Cond {
                    poly: poly.clone(),
                    allowed,
                }
            }
        }
    }
}

impl SignCondFormula {
    /// Evaluates the body at `a`, using exact signs; `a` is assumed to be a
    /// well-formed encoding.
    pub(crate) fn eval_unchecked(&self, a: &RealAlg) -> Result<bool> {
        Ok(match self {
            SignCondFormula::True => true,
            SignCondFormula::False => false,
            SignCondFormula::Cond { poly, allowed } => {
                allowed.contains(sign_at_unchecked(poly, a)?)
            }
            SignCondFormula::And(l, r) => l.eval_unchecked(a)? && r.eval_unchecked(a)?,
            SignCondFormula::Or(l, r) => l.eval_unchecked(a)? || r.eval_unchecked(a)?,
        })
    }

    pub fn eval_rational(&self, x: &Rational) -> bool {
        match self {
            SignCondFormula::True => true,
            SignCondFormula::False => false,
            SignCondFormula::Cond { poly, allowed } => allowed.contains(poly.sign_at_rational(x)),
            SignCondFormula::And(l, r) => l.eval_rational(x) && r.eval_rational(x),
            SignCondFormula::Or(l, r) => l.eval_rational(x) || r.eval_rational(x),
        }
    }

    /// Distinct polynomials of the atoms, in first-occurrence order.
    pub fn polys(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        self.collect_into(&mut out);
        out
    }

    fn collect_into(&self, out: &mut Vec<Poly>) {
        match self {
            SignCondFormula::True | SignCondFormula::False => {}
            SignCondFormula::Cond { poly, .. } => {
                if !poly.is_constant() && !out.contains(poly) {
                    out.push(poly.clone());
                }
            }
            SignCondFormula::And(l, r) | SignCondFormula::Or(l, r) => {
                l.collect_into(out);
                r.collect_into(out);
            }
        }
    }
}

impl fmt::Display for SignCondFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignCondFormula::True => f.write_str("true"),
            SignCondFormula::False => f.write_str("false"),
            SignCondFormula::Cond { poly, allowed } => write!(f, "sgn({poly}) in {allowed}"),
            SignCondFormula::And(l, r) => write!(f, "({l} /\\ {r})"),
            SignCondFormula::Or(l, r) => write!(f, "({l} \\/ {r})"),
        }
    }
}

/// `true` iff the body holds at `a`. Fails on an ill-formed encoding.
pub fn eval_qf_at(f: &SignCondFormula, a: &RealAlg) -> Result<bool> {
    a.validate()?;
    f.eval_unchecked(a)
}

pub fn collect_polys(f: &SignCondFormula) -> Vec<Poly> {
    f.polys()
}
