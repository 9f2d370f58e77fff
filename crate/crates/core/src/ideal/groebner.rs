//! Buchberger completion with the Gebauer-Moeller pair criteria and the normal
//! selection strategy (smallest lcm weight first).

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{Monomial, PolyRing, Polynomial, Rational};

/// Hard resource limits for a completion. Exceeding either is an error, never
/// a silently truncated basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Budget {
    /// Maximum number of polynomials ever admitted to the basis.
    pub max_basis: usize,
    /// Maximum cohomological degree of an admitted basis element.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis: 100_000,
            max_degree: 400,
        }
    }
}

impl Budget {
    pub const ENV_MAX_BASIS: &'static str = "HYPERKIRWAN_MAX_BASIS";
    pub const ENV_MAX_DEGREE: &'static str = "HYPERKIRWAN_MAX_DEGREE";

    /// Defaults overridden by the budget environment variables when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = std::env::var(Self::ENV_MAX_BASIS)
            .ok()
            .and_then(|s| s.parse().ok())
        {
            b.max_basis = v;
        }
        if let Some(v) = std::env::var(Self::ENV_MAX_DEGREE)
            .ok()
            .and_then(|s| s.parse().ok())
        {
            b.max_degree = v;
        }
        b
    }
}

fn divmask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (i, _)| acc | (1 << (i % 64)))
}

/// Reducer set with cached leading data for fast divisor lookup.
pub(crate) struct Reducers<'a> {
    polys: Vec<&'a Polynomial>,
    masks: Vec<u64>,
}

impl<'a> Reducers<'a> {
    pub(crate) fn new(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let polys: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let masks = polys
            .iter()
            .map(|p| divmask(p.leading_monomial().unwrap()))
            .collect();
        Reducers { polys, masks }
    }

    fn find(&self, m: &Monomial) -> Option<&'a Polynomial> {
        let mask = divmask(m);
        self.polys
            .iter()
            .zip(&self.masks)
            .find(|(p, &pm)| pm & !mask == 0 && p.leading_monomial().unwrap().divides(m))
            .map(|(p, _)| *p)
    }

    /// Full reduction: no term of the result is divisible by a leading monomial.
    pub(crate) fn reduce(&self, f: &Polynomial) -> Polynomial {
        let ring = f.ring().clone();
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        let mut cur = f.clone();
        loop {
            let next = {
                let mut found = None;
                for (k, (m, _)) in cur.terms().iter().enumerate() {
                    if let Some(g) = self.find(m) {
                        found = Some((k, g));
                        break;
                    }
                }
                found
            };
            match next {
                None => {
                    rem.extend(cur.into_terms());
                    break;
                }
                Some((k, g)) => {
                    let mut terms = cur.into_terms();
                    let tail = terms.split_off(k);
                    rem.extend(terms);
                    let tail = Polynomial::from_sorted_unchecked(&ring, tail);
                    let (m, c) = tail.leading_term().unwrap();
                    let (gm, gc) = g.leading_term().unwrap();
                    let q = gm.divide_into(m).unwrap();
                    let coef = c / gc;
                    cur = tail.sub_scaled_shift(&coef, &q, g);
                }
            }
        }
        Polynomial::from_sorted_unchecked(&ring, rem)
    }
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.divide_into(&l).unwrap(), &gc.clone());
    let b = g.mul_term(&gm.divide_into(&l).unwrap(), &fc.clone());
    &a - &b
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    weight: u32,
}

struct Completion<'r> {
    ring: &'r Arc<PolyRing>,
    basis: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    budget: Budget,
}

impl Completion<'_> {
    fn lm(&self, i: usize) -> &Monomial {
        self.basis[i].leading_monomial().unwrap()
    }

    fn weight(&self, m: &Monomial) -> u32 {
        m.weight(self.ring.vars.weights())
    }

    fn reducers(&self) -> Reducers<'_> {
        Reducers::new(
            self.basis
                .iter()
                .zip(&self.active)
                .filter(|(_, &a)| a)
                .map(|(p, _)| p),
        )
    }

    /// Gebauer-Moeller update for a new monic element `h`.
    fn insert(&mut self, h: Polynomial) -> Result<()> {
        if self.basis.len() >= self.budget.max_basis {
            return Err(Error::BudgetExceeded(format!(
                "basis grew past {} elements",
                self.budget.max_basis
            )));
        }
        if let Some(d) = h.degree() {
            if d > self.budget.max_degree {
                return Err(Error::BudgetExceeded(format!(
                    "basis element of degree {d} exceeds max degree {}",
                    self.budget.max_degree
                )));
            }
        }
        let t = self.basis.len();
        let ht = h.leading_monomial().unwrap().clone();
        self.basis.push(h);
        self.active.push(true);

        let cands: Vec<(usize, Monomial, bool)> = (0..t)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lg = self.lm(g);
                (g, ht.lcm(lg), ht.is_coprime(lg))
            })
            .collect();

        // Chain criterion among the new pairs: keep (h, g) only if no other new
        // pair has an lcm properly dividing it (coprime pairs survive this
        // step so they can shadow others, then get dropped).
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, (g, l, coprime)) in cands.iter().enumerate() {
            let shadowed = !coprime
                && cands
                    .iter()
                    .enumerate()
                    .any(|(k2, (_, l2, _))| k2 != k && l2.divides(l) && (l2 != l || (k2 < k)));
            if !shadowed {
                kept.push((*g, l.clone(), *coprime));
            }
        }
        // Equal lcms: keep a single representative, preferring a coprime one so
        // the whole class is discarded by the product criterion.
        let mut reps: Vec<(usize, Monomial, bool)> = Vec::new();
        for (g, l, coprime) in kept {
            if let Some(r) = reps.iter_mut().find(|r| r.1 == l) {
                r.2 |= coprime;
                continue;
            }
            reps.push((g, l, coprime));
        }

        // Old pairs made redundant by the new leading monomial.
        let basis = &self.basis;
        self.pairs.retain(|p| {
            let li = basis[p.i].leading_monomial().unwrap();
            let lj = basis[p.j].leading_monomial().unwrap();
            !(ht.divides(&p.lcm) && li.lcm(&ht) != p.lcm && lj.lcm(&ht) != p.lcm)
        });

        for (g, l, coprime) in reps {
            if coprime {
                continue;
            }
            let weight = self.weight(&l);
            self.pairs.push(Pair {
                i: g,
                j: t,
                lcm: l,
                weight,
            });
        }

        for g in 0..t {
            if self.active[g] && ht.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        Ok(())
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ring = self.ring;
        let idx = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.weight
                    .cmp(&b.weight)
                    .then_with(|| ring.cmp(&a.lcm, &b.lcm))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(idx))
    }
}

/// Computes the reduced Groebner basis of `gens` (monic, inter-reduced, sorted
/// by ascending leading monomial).
pub fn reduced_groebner_basis(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    budget: Budget,
) -> Result<Vec<Polynomial>> {
    let mut work = Completion {
        ring,
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        budget,
    };
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in input {
        let h = work.reducers().reduce(&g);
        if !h.is_zero() {
            if h.is_constant() {
                return Ok(vec![Polynomial::one(ring)]);
            }
            work.insert(h.monic())?;
        }
    }
    while let Some(p) = work.next_pair() {
        let s = s_polynomial(&work.basis[p.i], &work.basis[p.j]);
        let h = work.reducers().reduce(&s);
        if !h.is_zero() {
            if h.is_constant() {
                return Ok(vec![Polynomial::one(ring)]);
            }
            work.insert(h.monic())?;
        }
    }
    let minimal: Vec<Polynomial> = work
        .basis
        .into_iter()
        .zip(work.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    Ok(interreduce(ring, minimal))
}

/// Turns a minimal basis into the reduced one.
fn interreduce(ring: &Arc<PolyRing>, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut out: Vec<Polynomial> = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others = Reducers::new(
            basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p),
        );
        let p = &basis[k];
        let (lm, lc) = p.leading_term().unwrap();
        let tail = Polynomial::from_sorted_unchecked(ring, p.terms()[1..].to_vec());
        let tail = others.reduce(&tail);
        let mut terms = vec![(lm.clone(), lc.clone())];
        terms.extend(tail.into_terms());
        out.push(Polynomial::from_sorted_unchecked(ring, terms).monic());
    }
    out
}

/// Checks Buchberger's criterion (every non-coprime S-polynomial reduces to zero)
/// and that each of `gens` reduces to zero.
pub fn verify_groebner(basis: &[Polynomial], gens: &[Polynomial]) -> Result<()> {
    let red = Reducers::new(basis.iter());
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let bad = pairs.par_iter().find_any(|&&(i, j)| {
        let (li, lj) = (
            basis[i].leading_monomial().unwrap(),
            basis[j].leading_monomial().unwrap(),
        );
        !li.is_coprime(lj) && !red.reduce(&s_polynomial(&basis[i], &basis[j])).is_zero()
    });
    if let Some((i, j)) = bad {
        return Err(Error::CheckFailed(format!(
            "S-polynomial of basis elements {i} and {j} does not reduce to zero"
        )));
    }
    if let Some(g) = gens.par_iter().find_any(|g| !red.reduce(g).is_zero()) {
        return Err(Error::CheckFailed(format!(
            "generator `{g}` is not reduced to zero by the basis"
        )));
    }
    Ok(())
}
