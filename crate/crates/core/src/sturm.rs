//! Signed remainder sequences, sign variations and Tarski queries.
//!
//! `taq(q, p, a, b)` computes `Σ sgn q(x)` over the roots `x` of `p` in the
//! open interval `(a, b)` as `Var(SRemS(p, p'·q); a) - Var(SRemS(p, p'·q); b)`.
//! With `q = 1` this is Sturm's root count.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Poly, Sign};
use crate::rational::{format_rational, Rational};

/// Endpoint on the extended real line. The derived order is
/// `NegInf < Fin(_) < PosInf`, with finite values ordered as rationals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRat {
    NegInf,
    Fin(Rational),
    PosInf,
}

impl From<Rational> for ExtRat {
    fn from(q: Rational) -> Self {
        ExtRat::Fin(q)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => f.write_str("-inf"),
            ExtRat::Fin(q) => f.write_str(&format_rational(q)),
            ExtRat::PosInf => f.write_str("+inf"),
        }
    }
}

/// Sign of `p` at an extended-rational point. At `±∞` the sign comes from
/// the leading coefficient and, for `-∞`, the parity of the degree.
pub fn sign_ext(p: &Poly, e: &ExtRat) -> Sign {
    match e {
        ExtRat::Fin(x) => p.sign_at_rational(x),
        ExtRat::PosInf => Sign::of(&p.lcoef()),
        ExtRat::NegInf => {
            let s = Sign::of(&p.lcoef());
            match p.degree() {
                Some(d) if d % 2 == 1 => -s,
                _ => s,
            }
        }
    }
}

/// A nonempty sequence of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySeq(Vec<Poly>);

impl PolySeq {
    pub fn new(polys: Vec<Poly>) -> Option<PolySeq> {
        (!polys.is_empty()).then_some(PolySeq(polys))
    }

    pub fn polys(&self) -> &[Poly] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of sign variations at `e`.
    pub fn variations(&self, e: &ExtRat) -> usize {
        variations_of_signs(self.0.iter().map(|p| sign_ext(p, e)))
    }
}

/// Sign variations of a sign sequence, following the three-case recurrence:
/// a product of `-1` counts one and drops the head; a product of `+1` or a
/// zero head drops the head; otherwise the second element is zero and is
/// dropped. The cases are tested in that order.
pub fn variations_of_signs(signs: impl IntoIterator<Item = Sign>) -> usize {
    let mut it = signs.into_iter();
    let Some(mut head) = it.next() else {
        return 0;
    };
    let mut count = 0;
    for s in it {
        match head * s {
            Sign::Neg => {
                count += 1;
                head = s;
            }
            Sign::Pos => head = s,
            Sign::Zero if head == Sign::Zero => head = s,
            // second element is zero: delete it and keep the head
            Sign::Zero => {}
        }
    }
    count
}

/// Signed remainder sequence `[p, q, -(p mod q), …]`, stopping before the
/// first zero remainder. Remainders from the third element on are rescaled
/// to a positive multiple with coprime integer coefficients, which leaves
/// every sign variation count unchanged.
pub fn srems(p: &Poly, q: &Poly) -> Result<PolySeq> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut seq = vec![p.clone()];
    if q.is_zero() {
        return Ok(PolySeq(seq));
    }
    seq.push(q.clone());
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1])?;
        if r.is_zero() {
            break;
        }
        seq.push((-r).primitive_part());
    }
    Ok(PolySeq(seq))
}

/// Sequence without the positive rescaling, exactly as the recurrence
/// defines it.
pub fn srems_unscaled(p: &Poly, q: &Poly) -> Result<PolySeq> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut seq = vec![p.clone()];
    if !q.is_zero() {
        seq.push(q.clone());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1])?;
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
    }
    Ok(PolySeq(seq))
}

pub fn variations(s: &PolySeq, e: &ExtRat) -> usize {
    s.variations(e)
}

/// `Var(SRemS(p, q); a) - Var(SRemS(p, q); b)`.
pub fn changes_itv_smods(a: &ExtRat, b: &ExtRat, p: &Poly, q: &Poly) -> Result<i64> {
    let seq = srems(p, q)?;
    Ok(seq.variations(a) as i64 - seq.variations(b) as i64)
}

/// Sign of the jump of `p` across `[a, b]`: zero unless `p(a)·p(b) < 0`,
/// then `+1` for an upward crossing and `-1` for a downward one.
pub fn cross(p: &Poly, a: &Rational, b: &Rational) -> Sign {
    let (pa, pb) = (p.eval(a), p.eval(b));
    if Sign::of(&(&pa * &pb)) != Sign::Neg {
        Sign::Zero
    } else if pa < pb {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

fn check_interval(p: &Poly, a: &ExtRat, b: &ExtRat) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a >= b {
        return Err(Error::EmptyInterval);
    }
    for e in [a, b] {
        if let ExtRat::Fin(x) = e {
            if p.eval(x).is_zero() {
                return Err(Error::EndpointIsRoot(format_rational(x)));
            }
        }
    }
    Ok(())
}

/// Tarski query of `q` over the roots of `p` in `(a, b)`. Finite endpoints
/// must not be roots of `p`.
pub fn taq(q: &Poly, p: &Poly, a: &ExtRat, b: &ExtRat) -> Result<i64> {
    check_interval(p, a, b)?;
    changes_itv_smods(a, b, p, &(p.pderiv() * q))
}

/// Number of distinct real roots of `p` in `(a, b)`.
pub fn count_roots(p: &Poly, a: &ExtRat, b: &ExtRat) -> Result<usize> {
    check_interval(p, a, b)?;
    Ok(SturmChain::new(p)?.count_between(a, b))
}

/// Precomputed Sturm chain `SRemS(p, p')` for repeated root counts on the
/// same polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: PolySeq,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<SturmChain> {
        Ok(SturmChain {
            seq: srems(p, &p.pderiv())?,
        })
    }

    pub fn poly(&self) -> &Poly {
        &self.seq.0[0]
    }

    /// Distinct roots in `(a, b)`; endpoints are assumed not to be roots.
    pub fn count_between(&self, a: &ExtRat, b: &ExtRat) -> usize {
        let (va, vb) = (self.seq.variations(a), self.seq.variations(b));
        va.saturating_sub(vb)
    }
}
