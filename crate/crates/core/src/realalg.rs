//! Real algebraic numbers encoded as a defining polynomial together with an
//! isolating interval, or as an exact rational.
//!
//! Every query is answered exactly: signs of other polynomials at an encoded
//! root come from a Tarski query on the isolating interval, and comparisons
//! fall back to bisection only to separate numbers already known to differ.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, Sign};
use crate::rational::{format_rational, simplest_between, Rational};
use crate::sturm::{changes_itv_smods, count_roots, ExtRat};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RealAlg {
    /// An exact rational value.
    Rat(Rational),
    /// The unique root of `poly` in the open interval `(lb, ub)`.
    Alg {
        poly: Poly,
        lb: Rational,
        ub: Rational,
    },
}

/// True iff `p(lb)·p(ub) < 0` and `p` has exactly one real root in
/// `(lb, ub)`.
pub fn valid_alg(p: &Poly, lb: &Rational, ub: &Rational) -> bool {
    if p.is_zero() || lb >= ub {
        return false;
    }
    if Sign::of(&(p.eval(lb) * p.eval(ub))) != Sign::Neg {
        return false;
    }
    matches!(
        count_roots(p, &ExtRat::Fin(lb.clone()), &ExtRat::Fin(ub.clone())),
        Ok(1)
    )
}

impl RealAlg {
    pub fn rat(q: Rational) -> RealAlg {
        RealAlg::Rat(q)
    }

    /// Checked constructor for an isolating-interval encoding.
    pub fn alg(poly: Poly, lb: Rational, ub: Rational) -> Result<RealAlg> {
        let a = RealAlg::Alg { poly, lb, ub };
        a.validate()?;
        Ok(a)
    }

    pub fn is_rat(&self) -> bool {
        matches!(self, RealAlg::Rat(_))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RealAlg::Rat(_) => Ok(()),
            RealAlg::Alg { poly, lb, ub } if valid_alg(poly, lb, ub) => Ok(()),
            RealAlg::Alg { poly, lb, ub } => Err(Error::InvalidRealAlg(format!(
                "{} does not isolate exactly one sign-changing root in ({}, {})",
                poly.to_coeff_list(),
                format_rational(lb),
                format_rational(ub)
            ))),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Lower and upper ends of the enclosing interval; both equal the value
    /// for a rational.
    pub fn bounds(&self) -> (&Rational, &Rational) {
        match self {
            RealAlg::Rat(q) => (q, q),
            RealAlg::Alg { lb, ub, .. } => (lb, ub),
        }
    }

    /// One bisection step, halving the isolating interval. A midpoint that
    /// is itself the root collapses the encoding to a rational.
    pub fn refine(&self) -> Result<RealAlg> {
        self.validate()?;
        Ok(self.bisect())
    }

    pub(crate) fn bisect(&self) -> RealAlg {
        match self {
            RealAlg::Rat(_) => self.clone(),
            RealAlg::Alg { poly, lb, ub } => {
                let c = (lb + ub) / Rational::from_integer(2.into());
                let pc = poly.eval(&c);
                if pc.is_zero() {
                    return RealAlg::Rat(c);
                }
                if (poly.eval(lb) * pc).is_negative() {
                    RealAlg::Alg {
                        poly: poly.clone(),
                        lb: lb.clone(),
                        ub: c,
                    }
                } else {
                    RealAlg::Alg {
                        poly: poly.clone(),
                        lb: c,
                        ub: ub.clone(),
                    }
                }
            }
        }
    }

    fn width(&self) -> Rational {
        let (lo, hi) = self.bounds();
        hi - lo
    }

    /// A rational within `eps` of the denoted number.
    pub fn approx(&self, eps: &Rational) -> Result<Rational> {
        if !eps.is_positive() {
            return Err(Error::InvalidRealAlg(
                "approximation tolerance must be positive".into(),
            ));
        }
        self.validate()?;
        let mut a = self.clone();
        while let RealAlg::Alg { lb, ub, .. } = &a {
            if &(ub - lb) < eps {
                return Ok((lb + ub) / Rational::from_integer(2.into()));
            }
            a = a.bisect();
        }
        match a {
            RealAlg::Rat(q) => Ok(q),
            RealAlg::Alg { .. } => unreachable!(),
        }
    }

    /// Compact certificate entry: `Rat 1` or `Arep [:-2, 0, 1:] 0 2`.
    pub fn to_cert_entry(&self) -> String {
        fn arg(q: &Rational) -> String {
            if q.is_negative() || !q.is_integer() {
                format!("({})", format_rational(q))
            } else {
                format_rational(q)
            }
        }
        match self {
            RealAlg::Rat(q) => format!("Rat {}", arg(q)),
            RealAlg::Alg { poly, lb, ub } => {
                format!("Arep {} {} {}", poly.to_coeff_list(), arg(lb), arg(ub))
            }
        }
    }
}

impl fmt::Display for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cert_entry())
    }
}

/// Exact sign of `q` at `a`.
pub fn sign_at(q: &Poly, a: &RealAlg) -> Result<Sign> {
    a.validate()?;
    sign_at_unchecked(q, a)
}

pub(crate) fn sign_at_unchecked(q: &Poly, a: &RealAlg) -> Result<Sign> {
    match a {
        RealAlg::Rat(x) => Ok(q.sign_at_rational(x)),
        RealAlg::Alg { poly, lb, ub } => {
            let v = changes_itv_smods(
                &ExtRat::Fin(lb.clone()),
                &ExtRat::Fin(ub.clone()),
                poly,
                &(poly.pderiv() * q),
            )?;
            Sign::from_i64(v).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "Tarski query over an isolating interval returned {v}"
                ))
            })
        }
    }
}

/// Position of the root of `poly` in `(lb, ub)` relative to the rational `r`.
fn cmp_alg_rat(poly: &Poly, lb: &Rational, ub: &Rational, r: &Rational) -> Ordering {
    if r <= lb {
        return Ordering::Greater;
    }
    if r >= ub {
        return Ordering::Less;
    }
    let pr = poly.eval(r);
    if pr.is_zero() {
        Ordering::Equal
    } else if (poly.eval(lb) * pr).is_negative() {
        // sign change in (lb, r)
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Total order on the denoted real numbers.
pub fn compare(a: &RealAlg, b: &RealAlg) -> Result<Ordering> {
    a.validate()?;
    b.validate()?;
    compare_unchecked(a, b)
}

pub(crate) fn compare_unchecked(a: &RealAlg, b: &RealAlg) -> Result<Ordering> {
    match (a, b) {
        (RealAlg::Rat(x), RealAlg::Rat(y)) => return Ok(x.cmp(y)),
        (RealAlg::Alg { poly, lb, ub }, RealAlg::Rat(r)) => {
            return Ok(cmp_alg_rat(poly, lb, ub, r))
        }
        (RealAlg::Rat(r), RealAlg::Alg { poly, lb, ub }) => {
            return Ok(cmp_alg_rat(poly, lb, ub, r).reverse())
        }
        _ => {}
    }
    if let Some(ord) = disjoint_order(a, b) {
        return Ok(ord);
    }
    if denote_same(a, b)? {
        return Ok(Ordering::Equal);
    }
    // Distinct numbers: bisect until the intervals separate.
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        if a.width() >= b.width() {
            a = a.bisect();
        } else {
            b = b.bisect();
        }
        if a.is_rat() || b.is_rat() {
            return compare_unchecked(&a, &b);
        }
        if let Some(ord) = disjoint_order(&a, &b) {
            return Ok(ord);
        }
    }
}

fn disjoint_order(a: &RealAlg, b: &RealAlg) -> Option<Ordering> {
    let (alo, ahi) = a.bounds();
    let (blo, bhi) = b.bounds();
    if ahi <= blo {
        Some(Ordering::Less)
    } else if bhi <= alo {
        Some(Ordering::Greater)
    } else {
        None
    }
}

/// Equality of two overlapping interval encodings. With `g = gcd(p_a, p_b)`,
/// `a = b` iff `g(a) = 0` and `a` lies in the intersection of the two
/// intervals: `a` is then a root of `p_b` inside `b`'s isolating interval,
/// where `b` is the only one.
fn denote_same(a: &RealAlg, b: &RealAlg) -> Result<bool> {
    let (
        RealAlg::Alg {
            poly: pa,
            lb: alb,
            ub: aub,
        },
        RealAlg::Alg {
            poly: pb,
            lb: blb,
            ub: bub,
        },
    ) = (a, b)
    else {
        return Ok(compare_unchecked(a, b)? == Ordering::Equal);
    };
    let g = pa.gcd(pb)?;
    if g.is_constant() || sign_at_unchecked(&g, a)? != Sign::Zero {
        return Ok(false);
    }
    let lo = alb.max(blb);
    let hi = aub.min(bub);
    let inside = cmp_alg_rat(pa, alb, aub, lo) == Ordering::Greater
        && cmp_alg_rat(pa, alb, aub, hi) == Ordering::Less;
    Ok(inside)
}

/// A rational strictly between `a` and `b`; requires `a < b`.
pub fn mid_between(a: &RealAlg, b: &RealAlg) -> Result<Rational> {
    if compare(a, b)? != Ordering::Less {
        return Err(Error::NotIncreasing);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        let (_, ahi) = a.bounds();
        let (blo, _) = b.bounds();
        if ahi < blo {
            return Ok(simplest_between(ahi, Some(blo)));
        }
        if ahi == blo && !a.is_rat() && !b.is_rat() {
            return Ok(ahi.clone());
        }
        if a.width() >= b.width() {
            a = a.bisect();
        } else {
            b = b.bisect();
        }
    }
}

/// A rational strictly below `a`.
pub fn rational_below(a: &RealAlg) -> Rational {
    a.bounds().0.floor() - Rational::one()
}

/// A rational strictly above `a`.
pub fn rational_above(a: &RealAlg) -> Rational {
    a.bounds().1.ceil() + Rational::one()
}
