use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::monomial::{Monomial, MonomialOrder, PolyRing, VariableTable};
use super::rational::Rational;

/// A multivariate polynomial with exact rational coefficients.
///
/// Terms are kept strictly descending in the ring's monomial order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.len(), ring.nvars());
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var_index(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), Rational::one())
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring
            .vars
            .index_of(name)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))?;
        Ok(Self::var_index(ring, i))
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Trusts the caller that `terms` are already canonical.
    pub(crate) fn from_sorted_unchecked(
        ring: &Arc<PolyRing>,
        terms: Vec<(Monomial, Rational)>,
    ) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn table(&self) -> &VariableTable {
        &self.ring.vars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| self.ring.cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Largest cohomological degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(m, _)| m.degree(&self.ring.vars))
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.vars.weights();
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.weight(w);
                self.terms.iter().all(|(m, _)| m.weight(w) == d)
            }
        }
    }

    /// The homogeneous part of cohomological degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> Polynomial {
        let t = &self.ring.vars;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree(t) == deg)
            .cloned()
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, &Rational::one(), None))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, &-Rational::one(), None))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_impl(other))
    }

    /// `self + c * m * other` in a single merge pass.
    fn merge(&self, other: &Polynomial, c: &Rational, m: Option<&Monomial>) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(bm, bc)| {
            let bm = match m {
                Some(m) => bm.mul(m),
                None => bm.clone(),
            };
            (bm, bc * c)
        });
        let mut next_b = b.next();
        loop {
            match (a.peek(), next_b.as_ref()) {
                (None, None) => break,
                (Some(_), None) => {
                    out.push(a.next().unwrap().clone());
                }
                (None, Some(_)) => {
                    out.push(next_b.take().unwrap());
                    next_b = b.next();
                }
                (Some((am, ac)), Some((bm, bc))) => match ring.cmp(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push(next_b.take().unwrap());
                        next_b = b.next();
                    }
                    Ordering::Equal => {
                        let s = ac + bc;
                        if !s.is_zero() {
                            out.push((am.clone(), s));
                        }
                        a.next();
                        next_b = b.next();
                    }
                },
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// `self - c * m * other`; both polynomials must share a ring.
    pub(crate) fn sub_scaled_shift(
        &self,
        c: &Rational,
        m: &Monomial,
        other: &Polynomial,
    ) -> Polynomial {
        self.merge(other, &-c, Some(m))
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut parts: Vec<Polynomial> = small
            .terms
            .iter()
            .map(|(m, c)| big.mul_term(m, c))
            .collect();
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.merge(&b, &Rational::one(), None)),
                    None => next.push(a),
                }
            }
            parts = next;
        }
        parts.pop().unwrap()
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| (tm.mul(m), tc * c))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Re-expresses the polynomial under a different order on the same variables.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        let ring = self.ring.with_order(order);
        self.reinterpret(&ring)
    }

    /// Same variable table, possibly a different order.
    pub fn reinterpret(&self, ring: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(
            ring.vars, self.ring.vars,
            "reinterpret needs an identical variable table"
        );
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Maps every variable to the same-named variable of `target`.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        let map: Vec<usize> = (0..self.ring.nvars())
            .map(|i| {
                let name = self.ring.vars.name(i);
                target
                    .vars
                    .index_of(name)
                    .ok_or_else(|| Error::UnboundVariable(name.to_string()))
            })
            .collect::<Result<_>>()?;
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut t = Monomial::one(n);
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        t.set_exponent(map[i], e);
                    }
                }
                (t, c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Ring homomorphism sending each bound variable to its image and every
    /// other variable to the same-named variable of `target`.
    pub fn substitute(
        &self,
        bindings: &HashMap<String, Polynomial>,
        target: &Arc<PolyRing>,
    ) -> Result<Polynomial> {
        for img in bindings.values() {
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
        }
        let n = self.ring.nvars();
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                let name = self.ring.vars.name(i);
                match bindings.get(name) {
                    Some(p) => Ok(p.clone()),
                    None => Polynomial::var(target, name),
                }
            })
            .collect::<Result<_>>()?;
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; n];
        let mut acc = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for i in m.support() {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul_impl(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_impl(&powers[i][e]);
            }
            acc.push(t);
        }
        Ok(sum(target, acc))
    }

    /// Splits into the parts of even and odd degree in variable `i`.
    pub fn parity_split(&self, i: usize) -> (Polynomial, Polynomial) {
        let (even, odd): (Vec<_>, Vec<_>) = self
            .terms
            .iter()
            .cloned()
            .partition(|(m, _)| m.exponent(i) % 2 == 0);
        (
            Polynomial {
                ring: self.ring.clone(),
                terms: even,
            },
            Polynomial {
                ring: self.ring.clone(),
                terms: odd,
            },
        )
    }

    /// Replaces `var^(2k)` by `target_var^k`; every exponent of `var` must be even.
    pub fn halve_exponent(
        &self,
        var: usize,
        target: &Arc<PolyRing>,
        target_var: usize,
    ) -> Result<Polynomial> {
        let name = self.ring.vars.name(var).to_string();
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e % 2 != 0 {
                return Err(Error::CheckFailed(format!(
                    "odd power of `{name}` survived"
                )));
            }
            let mut t = Monomial::one(n);
            for i in m.support() {
                if i == var {
                    continue;
                }
                let j = target
                    .vars
                    .index_of(self.ring.vars.name(i))
                    .ok_or_else(|| Error::UnboundVariable(self.ring.vars.name(i).to_string()))?;
                t.set_exponent(j, m.exponent(i));
            }
            t.set_exponent(target_var, t.exponent(target_var) + e / 2);
            terms.push((t, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Exact division; fails with [`Error::InexactDivision`] when a remainder is left.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let Some(q) = lm.divide_into(m) else {
                return Err(Error::InexactDivision(format!("({self}) / ({divisor})")));
            };
            let qc = c * &lc_inv;
            rem = rem.sub_scaled_shift(&qc, &q, divisor);
            quotient.push((q, qc));
        }
        Ok(Polynomial::from_sorted_unchecked(&self.ring, quotient))
    }

    /// Total degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(i))
            .max()
            .unwrap_or(0)
    }

    pub fn uses_only(&self, vars: &[usize]) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.support().all(|i| vars.contains(&i)))
    }
}

/// Sums many polynomials by pairwise merging.
pub fn sum(ring: &Arc<PolyRing>, mut parts: Vec<Polynomial>) -> Polynomial {
    if parts.is_empty() {
        return Polynomial::zero(ring);
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.merge(&b, &Rational::one(), None)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().unwrap()
}

/// Product of a list of polynomials (one for the empty list).
pub fn product(ring: &Arc<PolyRing>, parts: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    parts
        .into_iter()
        .fold(Polynomial::one(ring), |acc, p| acc.mul_impl(&p))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics when the rings differ; see [`Polynomial::checked_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("ring mismatch in multiplication")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
