//! Certificate search and certificate checking.
//!
//! Search and verification are deliberately separate: [`generate_certificate`]
//! may use any strategy, while [`check_certificate`] trusts nothing but exact
//! sign computations and Sturm root counts.
//!
//! * An existential claim `∃x. φ` is certified by a single point at which `φ`
//!   holds.
//! * A universal claim `∀x. φ` is certified by a list of points that contains
//!   every real root of every polynomial in `φ`. Those roots cut the line into
//!   finitely many cells on which every polynomial keeps its sign, so checking
//!   `φ` at the roots and at one rational inside each open cell covers all of
//!   ℝ.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, Quantifier, SignCondFormula};
use crate::isolate::{insert_sorted, isolate_all};
use crate::poly::Sign;
use crate::rational::Rational;
use crate::realalg::{
    compare_unchecked, mid_between, rational_above, rational_below, sign_at_unchecked, RealAlg,
};
use crate::sturm::{count_roots, ExtRat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A witness point for an existential formula.
    Existential(RealAlg),
    /// A complete list of roots for a universal formula.
    Universal(Vec<RealAlg>),
}

impl Certificate {
    pub fn kind(&self) -> Quantifier {
        match self {
            Certificate::Existential(_) => Quantifier::Exists,
            Certificate::Universal(_) => Quantifier::Forall,
        }
    }

    pub fn points(&self) -> &[RealAlg] {
        match self {
            Certificate::Existential(w) => std::slice::from_ref(w),
            Certificate::Universal(ps) => ps,
        }
    }
}

/// One performed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// Ordered log of the checks performed on a certificate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    fn push(&mut self, check: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        self.entries.push(CheckEntry {
            check: check.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn passed(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "[{}] {}: {}",
                if e.passed { "ok" } else { "FAIL" },
                e.check,
                e.detail
            )?;
        }
        Ok(())
    }
}

/// Outcome of [`decide`]: the truth value of the input together with a
/// checked certificate for the input (when true) or for its negation (when
/// false).
#[derive(Debug, Clone)]
pub struct Verdict {
    pub truth: bool,
    /// The formula the certificate proves: the input, or its negation.
    pub certified: Formula,
    pub certificate: Certificate,
    pub report: CheckReport,
}

/// Checks that `w` is a well-formed point at which `body` holds.
pub fn check_existential(body: &SignCondFormula, w: &RealAlg) -> CheckReport {
    let mut report = CheckReport::default();
    if let Err(e) = w.validate() {
        report.push("well_formed", false, e.to_string());
        return report;
    }
    report.push("well_formed", true, format!("witness {w}"));
    match body.eval_unchecked(w) {
        Ok(true) => report.push("witness_satisfies", true, format!("body holds at {w}")),
        Ok(false) => report.push("witness_satisfies", false, format!("body is false at {w}")),
        Err(e) => report.push("witness_satisfies", false, e.to_string()),
    };
    report
}

/// Sample set of the decomposition induced by the strictly increasing
/// `points`: the points themselves interleaved with one rational in each open
/// cell. With no points the single sample is `0`.
pub fn sample_points(points: &[RealAlg]) -> Result<Vec<RealAlg>> {
    let (Some(first), Some(last)) = (points.first(), points.last()) else {
        return Ok(vec![RealAlg::Rat(Rational::from_integer(0.into()))]);
    };
    let mut out = Vec::with_capacity(2 * points.len() + 1);
    out.push(RealAlg::Rat(rational_below(first)));
    for (i, p) in points.iter().enumerate() {
        out.push(p.clone());
        if let Some(next) = points.get(i + 1) {
            out.push(RealAlg::Rat(mid_between(p, next)?));
        }
    }
    out.push(RealAlg::Rat(rational_above(last)));
    Ok(out)
}

/// Checks a universal certificate: well-formed points, a complete root list
/// for every polynomial of `body`, and `body` true at every sample of the
/// induced decomposition. Points are sorted and deduplicated first; extra
/// points that are not roots are allowed.
pub fn check_universal(body: &SignCondFormula, points: &[RealAlg]) -> CheckReport {
    let mut report = CheckReport::default();
    for (i, p) in points.iter().enumerate() {
        if let Err(e) = p.validate() {
            report.push("well_formed", false, format!("point {i}: {e}"));
            return report;
        }
    }
    report.push("well_formed", true, format!("{} points", points.len()));

    let mut sorted: Vec<RealAlg> = Vec::with_capacity(points.len());
    for p in points {
        if let Err(e) = insert_sorted(&mut sorted, p.clone()) {
            report.push("sorted", false, e.to_string());
            return report;
        }
    }
    let already = points.len() == sorted.len()
        && points
            .windows(2)
            .all(|w| matches!(compare_unchecked(&w[0], &w[1]), Ok(Ordering::Less)));
    let detail = if already {
        "strictly increasing".to_string()
    } else {
        format!("reordered into {} distinct increasing points", sorted.len())
    };
    report.push("sorted", true, detail);

    for poly in body.polys() {
        let expected = match count_roots(&poly, &ExtRat::NegInf, &ExtRat::PosInf) {
            Ok(n) => n,
            Err(e) => {
                report.push(format!("complete[{poly}]"), false, e.to_string());
                return report;
            }
        };
        let mut found = 0;
        for p in &sorted {
            match sign_at_unchecked(&poly, p) {
                Ok(Sign::Zero) => found += 1,
                Ok(_) => {}
                Err(e) => {
                    report.push(format!("complete[{poly}]"), false, e.to_string());
                    return report;
                }
            }
        }
        let ok = found == expected;
        report.push(
            format!("complete[{poly}]"),
            ok,
            format!("{found} of {expected} real roots listed"),
        );
        if !ok {
            return report;
        }
    }

    let samples = match sample_points(&sorted) {
        Ok(s) => s,
        Err(e) => {
            report.push("samples", false, e.to_string());
            return report;
        }
    };
    for s in &samples {
        match body.eval_unchecked(s) {
            Ok(true) => {}
            Ok(false) => {
                report.push("samples", false, format!("body is false at sample {s}"));
                return report;
            }
            Err(e) => {
                report.push("samples", false, e.to_string());
                return report;
            }
        }
    }
    report.push(
        "samples",
        true,
        format!("body holds at all {} samples", samples.len()),
    );
    report
}

/// Checks `cert` against the normalized body of `f`.
pub fn check_certificate(f: &Formula, cert: &Certificate) -> CheckReport {
    let body = f.sign_conditions();
    match (f.quantifier, cert) {
        (Quantifier::Exists, Certificate::Existential(w)) => check_existential(&body, w),
        (Quantifier::Forall, Certificate::Universal(ps)) => check_universal(&body, ps),
        (q, c) => {
            let mut report = CheckReport::default();
            report.push(
                "kind",
                false,
                format!(
                    "a `{}` formula needs a {} certificate, got a {} one",
                    q.keyword(),
                    kind_name(q),
                    kind_name(c.kind())
                ),
            );
            report
        }
    }
}

fn kind_name(q: Quantifier) -> &'static str {
    match q {
        Quantifier::Exists => "existential",
        Quantifier::Forall => "universal",
    }
}

/// Searches for a certificate of `f`. Universal formulas always get their
/// root list (which fails checking when `f` is false); existential formulas
/// get the first satisfying sample, or `None` when no sample satisfies the
/// body, i.e. when `f` is false.
pub fn generate_certificate(f: &Formula) -> Result<Option<Certificate>> {
    let body = f.sign_conditions();
    let roots = isolate_all(&body.polys())?;
    match f.quantifier {
        Quantifier::Forall => Ok(Some(Certificate::Universal(roots))),
        Quantifier::Exists => {
            let samples = sample_points(&roots)?;
            // roots first, then the rationals between them, each ascending
            let (at_roots, between): (Vec<_>, Vec<_>) = samples
                .into_iter()
                .enumerate()
                .partition(|(i, _)| i % 2 == 1);
            for (_, s) in at_roots.into_iter().chain(between) {
                if body.eval_unchecked(&s)? {
                    return Ok(Some(Certificate::Existential(s)));
                }
            }
            Ok(None)
        }
    }
}

/// Decides `f`, returning a checked certificate for `f` or for its negation.
pub fn decide(f: &Formula) -> Result<Verdict> {
    if let Some(cert) = generate_certificate(f)? {
        let report = check_certificate(f, &cert);
        if report.passed() {
            return Ok(Verdict {
                truth: true,
                certified: f.clone(),
                certificate: cert,
                report,
            });
        }
    }
    let neg = f.negate();
    if let Some(cert) = generate_certificate(&neg)? {
        let report = check_certificate(&neg, &cert);
        if report.passed() {
            return Ok(Verdict {
                truth: false,
                certified: neg,
                certificate: cert,
                report,
            });
        }
    }
    Err(Error::Inconsistent(format!(
        "no checked certificate for `{f}` or its negation"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::poly::Poly;
    use crate::rational::{frac, rat};
    use crate::realalg::compare;

    fn sqrt2(lb: Rational, ub: Rational) -> RealAlg {
        RealAlg::Alg {
            poly: Poly::from_ints(&[-2, 0, 1]),
            lb,
            ub,
        }
    }

    fn exist_body() -> SignCondFormula {
        parse_formula("exists x. x*x = 2 /\\ x*x*x > 2.5")
            .unwrap()
            .sign_conditions()
    }

    fn univ_body() -> SignCondFormula {
        parse_formula("forall x. x*x - 2 > 0 \\/ x < 2")
            .unwrap()
            .sign_conditions()
    }

    fn univ_roots() -> Vec<RealAlg> {
        vec![
            sqrt2(rat(-2), frac(-1, 3)),
            sqrt2(frac(7, 6), frac(19, 12)),
            RealAlg::Rat(rat(2)),
        ]
    }

    #[test]
    fn existential_checks() {
        assert!(check_existential(&exist_body(), &sqrt2(rat(0), rat(2))).passed());
        let r = check_existential(&exist_body(), &RealAlg::Rat(rat(0)));
        assert!(!r.passed());
        assert_eq!(r.failures().next().unwrap().check, "witness_satisfies");
        let r = check_existential(&exist_body(), &sqrt2(rat(-2), rat(2)));
        assert!(!r.passed());
        assert_eq!(r.failures().next().unwrap().check, "well_formed");
    }

    #[test]
    fn universal_checks() {
        let r = check_universal(&univ_body(), &univ_roots());
        assert!(r.passed(), "{r}");
        assert_eq!(sample_points(&univ_roots()).unwrap().len(), 7);
        assert!(r.entries.last().unwrap().detail.contains("7 samples"));

        let missing = &univ_roots()[1..];
        let r = check_universal(&univ_body(), missing);
        assert!(!r.passed());
        let fail = r.failures().next().unwrap();
        assert_eq!(fail.detail, "1 of 2 real roots listed");

        let r = check_universal(&SignCondFormula::True, &[]);
        assert!(r.passed());
        assert!(r.entries.last().unwrap().detail.contains("1 samples"));
    }

    #[test]
    fn universal_sample_regions() {
        let samples = sample_points(&univ_roots()).unwrap();
        // alternate cell / root / cell ...
        for (i, w) in samples.windows(2).enumerate() {
            assert_eq!(compare(&w[0], &w[1]).unwrap(), Ordering::Less, "pair {i}");
        }
        for (i, s) in samples.iter().enumerate() {
            assert!(s.is_rat() || i % 2 == 1);
        }
    }

    #[test]
    fn unsorted_and_duplicated_points_are_canonicalized() {
        let mut pts = univ_roots();
        pts.reverse();
        pts.push(sqrt2(rat(1), rat(2)));
        let r = check_universal(&univ_body(), &pts);
        assert!(r.passed(), "{r}");
        assert!(r.entries[1].detail.starts_with("reordered"));
    }

    #[test]
    fn generation() {
        let f = parse_formula("exists x. x*x = 2 /\\ x*x*x > 2.5").unwrap();
        let Some(Certificate::Existential(w)) = generate_certificate(&f).unwrap() else {
            panic!("expected a witness")
        };
        assert_eq!(
            compare(&w, &sqrt2(rat(0), rat(2))).unwrap(),
            Ordering::Equal
        );

        let f = parse_formula("forall x. (x^2 > 2 /\\ x^10 - 2*x^5 + 1 >= 0) \\/ x < 2").unwrap();
        let Some(Certificate::Universal(pts)) = generate_certificate(&f).unwrap() else {
            panic!("expected roots")
        };
        let want = [
            sqrt2(rat(-2), rat(0)),
            RealAlg::Rat(rat(1)),
            sqrt2(rat(0), rat(2)),
            RealAlg::Rat(rat(2)),
        ];
        assert_eq!(pts.len(), 4);
        for (g, w) in pts.iter().zip(&want) {
            assert_eq!(compare(g, w).unwrap(), Ordering::Equal);
        }

        let f = parse_formula("exists x. x^2 < 0").unwrap();
        assert_eq!(generate_certificate(&f).unwrap(), None);
        assert_eq!(
            generate_certificate(&f.negate()).unwrap(),
            Some(Certificate::Universal(vec![RealAlg::Rat(rat(0))]))
        );
    }

    #[test]
    fn decisions() {
        let v = decide(
            &parse_formula("forall x. (x^2 > 2 /\\ x^10 - 2*x^5 + 1 >= 0) \\/ x < 2").unwrap(),
        )
        .unwrap();
        assert!(v.truth);
        let v = decide(&parse_formula("exists x. x*x = 2 /\\ x*x*x > 2.5").unwrap()).unwrap();
        assert!(v.truth);
        let v = decide(&parse_formula("forall x. x^2 > 0").unwrap()).unwrap();
        assert!(!v.truth);
        assert_eq!(
            v.certificate,
            Certificate::Existential(RealAlg::Rat(rat(0)))
        );
        assert_eq!(v.certified.quantifier, Quantifier::Exists);
        let v = decide(&parse_formula("forall x. true").unwrap()).unwrap();
        assert!(v.truth);
        let v = decide(&parse_formula("exists x. false").unwrap()).unwrap();
        assert!(!v.truth);
    }

    #[test]
    fn kind_mismatch() {
        let f = parse_formula("exists x. x*x = 2 /\\ x*x*x > 2.5").unwrap();
        let r = check_certificate(&f, &Certificate::Universal(univ_roots()));
        assert!(!r.passed());
        assert_eq!(r.entries[0].check, "kind");
    }
}
