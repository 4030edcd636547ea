//! Complete real root isolation by Sturm-guided bisection.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::realalg::{compare_unchecked, RealAlg};
use crate::sturm::{ExtRat, SturmChain};

/// All distinct real roots of `p` in increasing order. Rational roots are
/// returned as [`RealAlg::Rat`]; irrational ones are isolated against the
/// monic square-free part of `p`.
pub fn isolate_roots(p: &Poly) -> Result<Vec<RealAlg>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.square_free_part()?;
    if sf.is_constant() {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&sf)?;
    let mut bound = sf.root_bound()?;
    while sf.eval(&bound).is_zero() || sf.eval(&-&bound).is_zero() {
        bound += Rational::one();
    }
    let count = |lo: &Rational, hi: &Rational| {
        chain.count_between(&ExtRat::Fin(lo.clone()), &ExtRat::Fin(hi.clone()))
    };
    // a rational root n/d of the primitive integer form has d | lead
    let lead = sf.primitive_part().lcoef();

    let mut out = Vec::new();
    let roots = count(&-&bound, &bound);
    // right halves are pushed first so roots come out in increasing order
    let mut stack = vec![(-bound.clone(), bound, roots)];
    while let Some((lo, hi, roots)) = stack.pop() {
        match roots {
            0 => {}
            1 => out.push(single_root(&sf, lo, hi, &lead)),
            _ => {
                let c = split_point(&sf, &lo, &hi);
                let left = count(&lo, &c);
                stack.push((c.clone(), hi, roots - left));
                stack.push((lo, c, left));
            }
        }
    }
    Ok(out)
}

/// A point of `(lo, hi)` that is not a root of `sf`: the midpoint unless
/// that is a root, then the first non-root among `lo + k/d·(hi - lo)`.
fn split_point(sf: &Poly, lo: &Rational, hi: &Rational) -> Rational {
    let width = hi - lo;
    (2i64..)
        .flat_map(|d| (1..d).map(move |k| Rational::new(k.into(), d.into())))
        .map(|t| lo + &width * t)
        .find(|c| !sf.eval(c).is_zero())
        .expect("a nonzero polynomial has finitely many roots")
}

/// Encodes the single root of the square-free `sf` in `(lo, hi)`, detecting
/// the case where it is rational.
fn single_root(sf: &Poly, lo: Rational, hi: Rational, lead: &Rational) -> RealAlg {
    let iso = RealAlg::Alg {
        poly: sf.clone(),
        lb: lo,
        ub: hi,
    };
    let mut narrow = iso.clone();
    loop {
        match &narrow {
            RealAlg::Rat(_) => return narrow,
            RealAlg::Alg { lb, ub, .. } => {
                let (slo, shi) = (lb * lead, ub * lead);
                if &shi - &slo < Rational::one() {
                    // at most one integer m in (slo, shi); test m / lead
                    let m = slo.floor() + Rational::one();
                    if m < shi {
                        let r = m / lead;
                        if sf.eval(&r).is_zero() {
                            return RealAlg::Rat(r);
                        }
                    }
                    return iso;
                }
            }
        }
        narrow = narrow.bisect();
    }
}

/// Sorted, deduplicated union of the real roots of every polynomial in `ps`.
pub fn isolate_all(ps: &[Poly]) -> Result<Vec<RealAlg>> {
    let mut merged: Vec<RealAlg> = Vec::new();
    for p in ps {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if p.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        for root in isolate_roots(p)? {
            insert_sorted(&mut merged, root)?;
        }
    }
    Ok(merged)
}

/// Inserts `root` into the strictly increasing `points`, skipping it when an
/// equal point is already present (a rational encoding replaces an interval
/// one).
pub(crate) fn insert_sorted(points: &mut Vec<RealAlg>, root: RealAlg) -> Result<()> {
    let (mut lo, mut hi) = (0, points.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        match compare_unchecked(&points[mid], &root)? {
            Ordering::Less => lo = mid + 1,
            Ordering::Greater => hi = mid,
            Ordering::Equal => {
                if root.is_rat() && !points[mid].is_rat() {
                    points[mid] = root;
                }
                return Ok(());
            }
        }
    }
    points.insert(lo, root);
    Ok(())
}
