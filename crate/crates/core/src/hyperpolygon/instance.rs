use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactalg::{product, sum, PolyRing, Polynomial, Rational, VariableTable};
use crate::ideal::{Budget, Ideal, QuotientRing};

use super::shorts::{shorts, EdgeLengths, ShortSubsetTable, Subset};

/// Name of the degree-2 root variable in the abelian ring.
pub const ALPHA: &str = "alpha";
/// Name of the degree-4 variable standing for the square of the root in the invariant ring.
pub const ALPHA2: &str = "alpha2";
/// Name of the equivariant parameter.
pub const X: &str = "x";

/// The rings, generators and ideals attached to one generic length vector.
///
/// The abelian ring is `Q[c_1..c_n, alpha, x]` modulo `c_i^2 - alpha^2`; the
/// invariant ring is `Q[c_1..c_n, alpha2, x]` modulo `c_i^2 - alpha2`. Ideals
/// are built once and shared, so per-subset work can run in parallel.
#[derive(Debug)]
pub struct HyperpolygonInstance {
    lengths: EdgeLengths,
    table: ShortSubsetTable,
    ring_p: Arc<PolyRing>,
    ring_q: Arc<PolyRing>,
    budget: Budget,
    ideal_i: OnceLock<Ideal>,
    ideal_j: OnceLock<Ideal>,
    ideal_d: OnceLock<Ideal>,
    annihilator: OnceLock<Ideal>,
}

fn c_name(i: usize) -> String {
    format!("c{i}")
}

impl HyperpolygonInstance {
    pub fn new(lengths: EdgeLengths) -> Result<Self> {
        Self::with_budget(lengths, Budget::from_env())
    }

    pub fn with_budget(lengths: EdgeLengths, budget: Budget) -> Result<Self> {
        let table = shorts(&lengths)?;
        let n = lengths.n();
        let mut p_vars: Vec<(String, u32)> = (1..=n).map(|i| (c_name(i), 2)).collect();
        let mut q_vars = p_vars.clone();
        p_vars.push((ALPHA.into(), 2));
        p_vars.push((X.into(), 2));
        q_vars.push((ALPHA2.into(), 4));
        q_vars.push((X.into(), 2));
        let ring_p = PolyRing::grevlex(VariableTable::new(&p_vars)?);
        let ring_q = PolyRing::grevlex(VariableTable::new(&q_vars)?);
        Ok(HyperpolygonInstance {
            lengths,
            table,
            ring_p,
            ring_q,
            budget,
            ideal_i: OnceLock::new(),
            ideal_j: OnceLock::new(),
            ideal_d: OnceLock::new(),
            annihilator: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.lengths.n()
    }

    pub fn lengths(&self) -> &EdgeLengths {
        &self.lengths
    }

    pub fn table(&self) -> &ShortSubsetTable {
        &self.table
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Ambient ring of the abelian presentation.
    pub fn ring_p(&self) -> &Arc<PolyRing> {
        &self.ring_p
    }

    /// Ambient ring of the invariant presentation.
    pub fn ring_q(&self) -> &Arc<PolyRing> {
        &self.ring_q
    }

    pub(crate) fn c_index(&self, i: usize) -> usize {
        i - 1
    }

    fn alpha_index(&self) -> usize {
        self.n()
    }

    fn x_index(&self) -> usize {
        self.n() + 1
    }

    pub fn c_q(&self, i: usize) -> Polynomial {
        Polynomial::var_index(&self.ring_q, self.c_index(i))
    }

    pub fn x_q(&self) -> Polynomial {
        Polynomial::var_index(&self.ring_q, self.x_index())
    }

    pub fn alpha2(&self) -> Polynomial {
        Polynomial::var_index(&self.ring_q, self.alpha_index())
    }

    pub fn alpha(&self) -> Polynomial {
        Polynomial::var_index(&self.ring_p, self.alpha_index())
    }

    fn x_p(&self) -> Polynomial {
        Polynomial::var_index(&self.ring_p, self.x_index())
    }

    /// `c_i^2 - alpha^2` in the abelian ring.
    pub fn relations_p(&self) -> Vec<Polynomial> {
        let a2 = self.alpha().pow(2);
        (1..=self.n())
            .map(|i| &Polynomial::var_index(&self.ring_p, self.c_index(i)).pow(2) - &a2)
            .collect()
    }

    /// `c_i^2 - alpha2` in the invariant ring.
    pub fn relations_q(&self) -> Vec<Polynomial> {
        let a2 = self.alpha2();
        (1..=self.n()).map(|i| &self.c_q(i).pow(2) - &a2).collect()
    }

    /// `alpha2 (x^2 - alpha2)`.
    pub fn euler_e(&self) -> Polynomial {
        let a2 = self.alpha2();
        &a2 * &(&self.x_q().pow(2) - &a2)
    }

    /// `alpha (x^2 - alpha^2)`.
    pub fn euler_eprime(&self) -> Polynomial {
        let a = self.alpha();
        &a * &(&self.x_p().pow(2) - &a.pow(2))
    }

    /// The Weyl involution `alpha -> -alpha` on the abelian ring.
    pub fn weyl(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut b = HashMap::new();
        b.insert(ALPHA.to_string(), -&self.alpha());
        f.substitute(&b, &self.ring_p)
    }

    /// The inclusion of the invariant ring, `alpha2 -> alpha^2`.
    pub fn include(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut b = HashMap::new();
        b.insert(ALPHA2.to_string(), self.alpha().pow(2));
        f.substitute(&b, &self.ring_p)
    }

    fn check_short(&self, s: Subset) -> Result<()> {
        if s.largest().is_some_and(|m| m > self.n()) || !self.table.is_short(s) {
            return Err(Error::NotShort(s.elements()));
        }
        Ok(())
    }

    /// `(c_i + alpha)/2` and `(c_i - alpha)/2`.
    fn ab_roots(&self, i: usize) -> (Polynomial, Polynomial) {
        let c = Polynomial::var_index(&self.ring_p, self.c_index(i));
        let half = Rational::new(1, 2).unwrap();
        let a = self.alpha();
        ((&c + &a).scale(&half), (&c - &a).scale(&half))
    }

    /// `A_S` and `B_S` over the edges in `edges` (a subset of `1..=n`, with `s` inside it).
    pub(crate) fn ab_over(&self, edges: &[usize], s: Subset) -> (Polynomial, Polynomial) {
        let x = self.x_p();
        let mut a_factors = Vec::with_capacity(edges.len());
        let mut b_factors = Vec::with_capacity(edges.len());
        for &i in edges {
            let (ai, bi) = self.ab_roots(i);
            if s.contains(i) {
                a_factors.push(&x - &ai);
                b_factors.push(&x - &bi);
            } else {
                a_factors.push(bi);
                b_factors.push(ai);
            }
        }
        (
            product(&self.ring_p, a_factors),
            product(&self.ring_p, b_factors),
        )
    }

    /// `A_S + B_S` over `edges`, rewritten in the invariant ring.
    pub(crate) fn c_over(&self, edges: &[usize], s: Subset) -> Result<Polynomial> {
        let (a, b) = self.ab_over(edges, s);
        let (even, odd) = (&a + &b).parity_split(self.alpha_index());
        if !odd.is_zero() {
            return Err(Error::CheckFailed(format!(
                "odd part in alpha of C_{s} is nonzero: {odd}"
            )));
        }
        even.halve_exponent(self.alpha_index(), &self.ring_q, self.alpha_index())
    }

    fn all_edges(&self) -> Vec<usize> {
        (1..=self.n()).collect()
    }

    pub fn gens_ab(&self, s: Subset) -> Result<(Polynomial, Polynomial)> {
        self.check_short(s)?;
        Ok(self.ab_over(&self.all_edges(), s))
    }

    pub fn gens_c(&self, s: Subset) -> Result<Polynomial> {
        self.check_short(s)?;
        self.c_over(&self.all_edges(), s)
    }

    /// `∏_{i∈S, i≠m_S} (c_i - x) · ∏_{j∉S, j≠n_S} (c_{n_S} + c_j)`.
    pub fn gens_d(&self, s: Subset) -> Result<Polynomial> {
        if s.is_empty() {
            return Err(Error::InvalidInput(
                "D_S needs a nonempty short subset".into(),
            ));
        }
        self.check_short(s)?;
        let m = self.table.m_s(s).unwrap();
        let ns = self.table.n_s(s).unwrap();
        let x = self.x_q();
        let mut factors = Vec::new();
        for i in s.elements() {
            if i != m {
                factors.push(&self.c_q(i) - &x);
            }
        }
        for j in s.complement(self.n()).elements() {
            if j != ns {
                factors.push(&self.c_q(ns) + &self.c_q(j));
            }
        }
        Ok(product(&self.ring_q, factors))
    }

    /// `⟨A_S, B_S | S short⟩ + ⟨c_i^2 - alpha^2⟩`.
    pub fn ideal_i(&self) -> Result<&Ideal> {
        if let Some(i) = self.ideal_i.get() {
            return Ok(i);
        }
        let mut gens = Vec::new();
        for &s in self.table.shorts() {
            let (a, b) = self.gens_ab(s)?;
            gens.push(a);
            gens.push(b);
        }
        gens.extend(self.relations_p());
        let ideal = Ideal::new(&self.ring_p, gens)?.with_budget(self.budget);
        Ok(self.ideal_i.get_or_init(|| ideal))
    }

    /// `⟨C_S | S short⟩ + ⟨c_i^2 - alpha2⟩`.
    pub fn ideal_j(&self) -> Result<&Ideal> {
        if let Some(j) = self.ideal_j.get() {
            return Ok(j);
        }
        let mut gens = self
            .table
            .shorts()
            .iter()
            .map(|&s| self.gens_c(s))
            .collect::<Result<Vec<_>>>()?;
        gens.extend(self.relations_q());
        let ideal = Ideal::new(&self.ring_q, gens)?.with_budget(self.budget);
        Ok(self.ideal_j.get_or_init(|| ideal))
    }

    /// `⟨D_S | ∅ ≠ S short⟩ + ⟨c_i^2 - alpha2⟩`.
    pub fn ideal_d(&self) -> Result<&Ideal> {
        if let Some(d) = self.ideal_d.get() {
            return Ok(d);
        }
        let mut gens = self
            .table
            .nonempty()
            .map(|s| self.gens_d(s))
            .collect::<Result<Vec<_>>>()?;
        gens.extend(self.relations_q());
        let ideal = Ideal::new(&self.ring_q, gens)?.with_budget(self.budget);
        Ok(self.ideal_d.get_or_init(|| ideal))
    }

    /// The annihilator of `e` in the invariant quotient, as the colon ideal `(J : e)`.
    pub fn annihilator(&self) -> Result<&Ideal> {
        if let Some(a) = self.annihilator.get() {
            return Ok(a);
        }
        let colon = self.ideal_j()?.colon(&self.euler_e())?;
        colon.groebner()?;
        Ok(self.annihilator.get_or_init(|| colon))
    }

    /// The annihilator of `e'` in the abelian quotient.
    pub fn annihilator_prime(&self) -> Result<Ideal> {
        self.ideal_i()?.colon(&self.euler_eprime())
    }

    /// Checks `(J : e) = ⟨D_S⟩ + relations` by containment both ways and returns
    /// the quotient by the annihilator.
    pub fn prop_hp(&self) -> Result<QuotientRing> {
        let colon = self.annihilator()?;
        let d = self.ideal_d()?;
        if !colon.contains_ideal(d)? {
            return Err(Error::CheckFailed(
                "some D_S is not in the annihilator of e".into(),
            ));
        }
        if !d.contains_ideal(colon)? {
            return Err(Error::CheckFailed(
                "the annihilator of e is larger than the D_S ideal".into(),
            ));
        }
        Ok(QuotientRing::new(colon.clone()))
    }

    /// The invariant quotient by `J`.
    pub fn quotient_j(&self) -> Result<QuotientRing> {
        Ok(QuotientRing::new(self.ideal_j()?.clone()))
    }

    /// Adds `x` to an ideal of the invariant ring.
    pub fn mod_x(&self, ideal: &Ideal) -> Result<QuotientRing> {
        Ok(QuotientRing::new(ideal.extend([self.x_q()])?))
    }

    /// `Q[x]` as a quotient of the invariant ring, used as the base of freeness checks.
    pub fn base_ring(&self) -> Result<QuotientRing> {
        let gens: Vec<Polynomial> = (0..self.n() + 1)
            .map(|i| Polynomial::var_index(&self.ring_q, i))
            .collect();
        Ok(QuotientRing::new(Ideal::new(&self.ring_q, gens)?))
    }

    pub(crate) fn sum_q(&self, parts: Vec<Polynomial>) -> Polynomial {
        sum(&self.ring_q, parts)
    }
}
