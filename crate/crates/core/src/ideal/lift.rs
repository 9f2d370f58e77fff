use crate::error::{Error, Result};
use crate::exactalg::{same_ring, Monomial, Polynomial, Rational};

use super::groebner::{s_polynomial, Budget};
use super::ideal::Ideal;

/// A polynomial together with its expression in the original generators.
struct Traced {
    poly: Polynomial,
    trace: Vec<Polynomial>,
}

struct Lifter<'a> {
    modulus: &'a Ideal,
    entries: Vec<Traced>,
}

impl Lifter<'_> {
    fn normalize(&self, trace: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
        trace.iter().map(|t| self.modulus.normal_form(t)).collect()
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| e.poly.leading_monomial().unwrap().divides(m))
    }

    /// Fully reduces `poly`, returning the remainder and the accumulated
    /// multiple `Σ q_j trace_j` of the reducers used.
    fn reduce(&self, poly: &Polynomial, ngens: usize) -> Result<(Polynomial, Vec<Polynomial>)> {
        let ring = poly.ring();
        let mut acc = vec![Polynomial::zero(ring); ngens];
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        let mut cur = poly.clone();
        while let Some((m, c)) = cur.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            match self.find(&m) {
                None => {
                    rem.push((m.clone(), c.clone()));
                    cur = &cur - &Polynomial::monomial(ring, m, c);
                }
                Some(j) => {
                    let e = &self.entries[j];
                    let (em, ec) = e.poly.leading_term().unwrap();
                    let q = em.divide_into(&m).unwrap();
                    let coef = &c / ec;
                    cur = cur.sub_scaled_shift(&coef, &q, &e.poly);
                    for (a, t) in acc.iter_mut().zip(&e.trace) {
                        if !t.is_zero() {
                            *a = &*a + &t.mul_term(&q, &coef);
                        }
                    }
                }
            }
        }
        Ok((Polynomial::from_terms(ring, rem), self.normalize(acc)?))
    }
}

/// Expresses `f` as `Σ cofactor_i · gens_i` modulo `modulus`, with each
/// cofactor in normal form with respect to `modulus`.
///
/// Runs a traced Buchberger completion of `gens ∪ modulus`; returns `None`
/// when `f` is not in the sum ideal.
pub fn lift_modulo(
    gens: &[Polynomial],
    modulus: &Ideal,
    f: &Polynomial,
    budget: Budget,
) -> Result<Option<Vec<Polynomial>>> {
    let ring = modulus.ring();
    if gens.iter().chain([f]).any(|g| !same_ring(g.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    let k = gens.len();
    let mut lifter = Lifter {
        modulus,
        entries: Vec::new(),
    };
    let unit = |i: usize| -> Vec<Polynomial> {
        (0..k)
            .map(|j| {
                if i == j {
                    Polynomial::one(ring)
                } else {
                    Polynomial::zero(ring)
                }
            })
            .collect()
    };
    for b in modulus.groebner()? {
        lifter.entries.push(Traced {
            poly: b.clone(),
            trace: vec![Polynomial::zero(ring); k],
        });
    }
    let mut queue: Vec<(usize, usize)> = Vec::new();
    let admit = |lifter: &mut Lifter,
                 poly: Polynomial,
                 trace: Vec<Polynomial>,
                 queue: &mut Vec<(usize, usize)>|
     -> Result<()> {
        let (r, acc) = lifter.reduce(&poly, k)?;
        if r.is_zero() {
            return Ok(());
        }
        if lifter.entries.len() >= budget.max_basis {
            return Err(Error::BudgetExceeded(format!(
                "traced basis grew past {} elements",
                budget.max_basis
            )));
        }
        let trace: Vec<Polynomial> = trace.iter().zip(&acc).map(|(t, a)| t - a).collect();
        let lc = r.leading_coefficient().unwrap().inv()?;
        let trace = lifter.normalize(trace.iter().map(|t| t.scale(&lc)).collect())?;
        let idx = lifter.entries.len();
        queue.extend((0..idx).map(|j| (j, idx)));
        lifter.entries.push(Traced {
            poly: r.scale(&lc),
            trace,
        });
        Ok(())
    };
    for (i, g) in gens.iter().enumerate() {
        admit(&mut lifter, g.clone(), unit(i), &mut queue)?;
    }
    while let Some((i, j)) = queue.pop() {
        let (a, b) = (&lifter.entries[i], &lifter.entries[j]);
        let (la, lb) = (
            a.poly.leading_monomial().unwrap(),
            b.poly.leading_monomial().unwrap(),
        );
        if la.is_coprime(lb) {
            continue;
        }
        let l = la.lcm(lb);
        let (qa, qb) = (la.divide_into(&l).unwrap(), lb.divide_into(&l).unwrap());
        let one = Rational::one();
        let s = s_polynomial(&a.poly, &b.poly);
        let trace: Vec<Polynomial> = a
            .trace
            .iter()
            .zip(&b.trace)
            .map(|(ta, tb)| &ta.mul_term(&qa, &one) - &tb.mul_term(&qb, &one))
            .collect();
        admit(&mut lifter, s, trace, &mut queue)?;
    }
    let (r, acc) = lifter.reduce(f, k)?;
    Ok(r.is_zero().then_some(acc))
}
