//! Shared helpers: random homogeneous ideals and brute-force degreewise
//! linear algebra over Q.
#![allow(dead_code)]

use std::sync::Arc;

use hyperkirwan::exactalg::{Monomial, MonomialOrder, PolyRing, Polynomial, Rational, VariableTable};
use hyperkirwan::linalg;
use proptest::prelude::*;

/// A homogeneous polynomial as (factor list, coefficient) terms; each factor
/// list names the variables whose product is the monomial.
pub type RawPoly = Vec<(Vec<usize>, i64)>;

pub fn raw_poly(nvars: usize, deg: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0..nvars, deg), -3i64..=3), 1..=4)
}

pub fn raw_poly_any_degree(nvars: usize, max_deg: usize) -> impl Strategy<Value = RawPoly> {
    (1..=max_deg).prop_flat_map(move |d| raw_poly(nvars, d))
}

/// `(number of variables, order, generators)` with at most three variables
/// and generators of degree at most four.
pub fn small_ideal() -> impl Strategy<Value = (usize, MonomialOrder, Vec<RawPoly>)> {
    (1usize..=3, 0usize..3).prop_flat_map(|(n, o)| {
        let order = match o {
            0 => MonomialOrder::GrevLex,
            1 => MonomialOrder::Lex,
            _ => MonomialOrder::Block(1),
        };
        (Just(n), Just(order), prop::collection::vec(raw_poly_any_degree(n, 4), 1..=3))
    })
}

pub fn ring(n: usize, order: MonomialOrder) -> Arc<PolyRing> {
    let names: Vec<String> = (0..n).map(|i| format!("y{i}")).collect();
    PolyRing::new(VariableTable::uniform(&names).unwrap(), order)
}

pub fn build(ring: &Arc<PolyRing>, raw: &RawPoly) -> Polynomial {
    let n = ring.vars.len();
    let terms = raw
        .iter()
        .map(|(factors, c)| {
            let mut e = vec![0u16; n];
            for &f in factors {
                e[f] += 1;
            }
            (Monomial::from_exponents(&e), Rational::from_int(*c))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Exponent vectors of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<u16>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

fn total(p: &Polynomial) -> Option<usize> {
    p.terms().first().map(|(m, _)| m.total_exponent() as usize)
}

fn coords(p: &Polynomial, basis: &[Vec<u16>]) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); basis.len()];
    for (m, c) in p.terms() {
        let k = basis.iter().position(|b| b.as_slice() == m.exponents()).expect("homogeneous of the right degree");
        row[k] = c.clone();
    }
    row
}

/// Rows spanning the degree-`d` part of the ideal generated by `gens`.
pub fn ideal_rows(ring: &Arc<PolyRing>, gens: &[Polynomial], d: usize) -> Vec<Vec<Rational>> {
    let n = ring.vars.len();
    let basis = monomials(n, d);
    let mut rows = Vec::new();
    for g in gens {
        let Some(k) = total(g) else { continue };
        if k > d {
            continue;
        }
        for m in monomials(n, d - k) {
            let shifted = g.mul_term(&Monomial::from_exponents(&m), &Rational::one());
            rows.push(coords(&shifted, &basis));
        }
    }
    rows
}

pub fn ideal_dim(ring: &Arc<PolyRing>, gens: &[Polynomial], d: usize) -> usize {
    linalg::rank(&ideal_rows(ring, gens, d))
}

/// Degreewise membership of a homogeneous `f`.
pub fn brute_contains(ring: &Arc<PolyRing>, gens: &[Polynomial], f: &Polynomial) -> bool {
    let Some(d) = total(f) else { return true };
    let mut rows = ideal_rows(ring, gens, d);
    let r = linalg::rank(&rows);
    rows.push(coords(f, &monomials(ring.vars.len(), d)));
    linalg::rank(&rows) == r
}

/// `dim (I : f)_d` for homogeneous `f`.
pub fn brute_colon_dim(ring: &Arc<PolyRing>, gens: &[Polynomial], f: &Polynomial, d: usize) -> usize {
    let n = ring.vars.len();
    let k = total(f).expect("nonzero");
    let mut rows = ideal_rows(ring, gens, d + k);
    let r = linalg::rank(&rows);
    let target = monomials(n, d + k);
    let sources = monomials(n, d);
    for m in &sources {
        rows.push(coords(&f.mul_term(&Monomial::from_exponents(m), &Rational::one()), &target));
    }
    sources.len() - (linalg::rank(&rows) - r)
}
