#![allow(dead_code)]

use rand::Rng;
use rcfcert::formula::{Formula, QfFormula, Quantifier, Rel};
use rcfcert::rational::{frac, rat};
use rcfcert::{Poly, Rational};

/// Nonzero polynomial with degree at most `max_degree` and integer
/// coefficients in `[-bound, bound]`.
pub fn random_poly<R: Rng>(rng: &mut R, max_degree: usize, bound: i64) -> Poly {
    loop {
        let degree = rng.gen_range(0..=max_degree);
        let coeffs: Vec<i64> = (0..=degree)
            .map(|_| rng.gen_range(-bound..=bound))
            .collect();
        let p = Poly::from_ints(&coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Rational in roughly `[-span, span]` with denominator at most `max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    frac(rng.gen_range(-span * d..=span * d), d)
}

/// Random rational that is not a root of any of `ps`.
pub fn random_non_root<R: Rng>(rng: &mut R, ps: &[&Poly], span: i64, max_den: i64) -> Rational {
    loop {
        let x = random_rational(rng, span, max_den);
        if ps
            .iter()
            .all(|p| p.sign_at_rational(&x) != rcfcert::Sign::Zero)
        {
            return x;
        }
    }
}

/// Product of linear factors at distinct random rationals, each repeated up
/// to three times, times a nonzero integer. Returns the polynomial and its
/// sorted distinct roots.
pub fn planted_poly<R: Rng>(rng: &mut R, max_roots: usize) -> (Poly, Vec<Rational>) {
    let n = rng.gen_range(1..=max_roots);
    let mut roots: Vec<Rational> = Vec::new();
    while roots.len() < n {
        let r = frac(rng.gen_range(-10..=10), rng.gen_range(1..=5));
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let mut scale = 0;
    while scale == 0 {
        scale = rng.gen_range(-3..=3);
    }
    let mut p = Poly::constant(rat(scale));
    for r in &roots {
        p = p * Poly::linear_root(r).pow(rng.gen_range(1..=3));
    }
    roots.sort();
    (p, roots)
}

pub fn random_rel<R: Rng>(rng: &mut R) -> Rel {
    Rel::ALL[rng.gen_range(0..Rel::ALL.len())]
}

fn maybe_not<R: Rng>(rng: &mut R, f: QfFormula) -> QfFormula {
    if rng.gen_bool(0.25) {
        QfFormula::negation(f)
    } else {
        f
    }
}

/// Random body with up to `max_atoms` atoms of degree at most `max_degree`.
pub fn random_body<R: Rng>(rng: &mut R, max_atoms: usize, max_degree: usize) -> QfFormula {
    let n = rng.gen_range(1..=max_atoms);
    let mut acc = None;
    for _ in 0..n {
        let atom = QfFormula::atom(random_poly(rng, max_degree, 5), random_rel(rng));
        let atom = maybe_not(rng, atom);
        acc = Some(match acc {
            None => atom,
            Some(prev) if rng.gen_bool(0.5) => QfFormula::and(prev, atom),
            Some(prev) => QfFormula::or(prev, atom),
        });
    }
    maybe_not(rng, acc.expect("at least one atom"))
}

pub fn random_formula<R: Rng>(rng: &mut R, max_atoms: usize, max_degree: usize) -> Formula {
    let q = if rng.gen_bool(0.5) {
        Quantifier::Exists
    } else {
        Quantifier::Forall
    };
    Formula::new(q, "x", random_body(rng, max_atoms, max_degree))
}
