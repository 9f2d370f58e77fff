use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactalg::{same_ring, Monomial, MonomialOrder, PolyRing, Polynomial, Rational};

use super::groebner::{reduced_groebner_basis, verify_groebner, Budget, Reducers};

/// An ideal given by generators, with a lazily filled reduced Groebner basis.
///
/// The cache is written at most once and only with a complete, verified basis,
/// so concurrent readers see either nothing or the whole basis.
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    budget: Budget,
    basis: OnceLock<Arc<Vec<Polynomial>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            budget: self.budget,
            basis,
        }
    }
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal")
            .field("order", &self.ring.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            generators,
            budget: Budget::default(),
            basis: OnceLock::new(),
        })
    }

    /// Parses each generator in the textual polynomial format.
    pub fn parse(ring: &Arc<PolyRing>, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<_>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_cached(&self) -> bool {
        self.basis.get().is_some()
    }

    /// The reduced Groebner basis, computing and verifying it on first use.
    pub fn groebner(&self) -> Result<&[Polynomial]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let gb = reduced_groebner_basis(&self.ring, &self.generators, self.budget)?;
        verify_groebner(&gb, &self.generators)?;
        let _ = self.basis.set(Arc::new(gb));
        Ok(self.basis.get().unwrap())
    }

    /// Installs an already reduced basis (still subject to the Buchberger check).
    pub(crate) fn with_basis(
        ring: &Arc<PolyRing>,
        basis: Vec<Polynomial>,
        budget: Budget,
    ) -> Result<Self> {
        verify_groebner(&basis, &[])?;
        let ideal = Ideal {
            ring: ring.clone(),
            generators: basis.clone(),
            budget,
            basis: OnceLock::new(),
        };
        let _ = ideal.basis.set(Arc::new(basis));
        Ok(ideal)
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self
            .groebner()?
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.first().is_some_and(|g| g.is_constant()))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let gb = self.groebner()?;
        Ok(Reducers::new(gb.iter()).reduce(f))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        let gens = match other.basis.get() {
            Some(b) => b.as_slice(),
            None => other.generators(),
        };
        for g in gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner()? == other.groebner()?)
    }

    /// The sum `self + ⟨extra⟩`.
    pub fn extend(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ok(Ideal::new(&self.ring, gens)?.with_budget(self.budget))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        self.extend(other.generators.iter().cloned())
    }

    /// Intersection by eliminating a tag variable `t` from `t*I + (1-t)*J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let budget = self.budget;
        let mut tag = String::from("t");
        while self.ring.vars.index_of(&tag).is_some() {
            tag.push('_');
        }
        let tagged = PolyRing::new(self.ring.vars.with_tag(&tag)?, MonomialOrder::Block(1));
        let t = Polynomial::var_index(&tagged, 0);
        let one_minus_t = &Polynomial::one(&tagged) - &t;
        let mut gens = Vec::with_capacity(self.generators.len() + other.generators.len());
        for g in &self.generators {
            gens.push(&t * &g.embed(&tagged)?);
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.embed(&tagged)?);
        }
        let gb = reduced_groebner_basis(&tagged, &gens, budget)?;
        let eliminated: Vec<Polynomial> = gb
            .into_iter()
            .filter(|g| g.degree_in(0) == 0)
            .map(|g| drop_tag(&g, &self.ring))
            .collect();
        // the elimination order restricts to grevlex on the original variables
        if self.ring.order == MonomialOrder::GrevLex {
            Ideal::with_basis(&self.ring, eliminated, budget)
        } else {
            Ok(Ideal::new(&self.ring, eliminated)?.with_budget(budget))
        }
    }

    /// The colon ideal `(self : f) = {g : g f ∈ self}`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("colon by the zero polynomial".into()));
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?.with_budget(self.budget);
        let meet = self.intersect(&principal)?;
        let gens = meet
            .groebner()?
            .iter()
            .map(|g| g.exact_div(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens)?.with_budget(self.budget))
    }

    /// Image under a ring map given by variable bindings (see [`Polynomial::substitute`]).
    pub fn map(
        &self,
        bindings: &HashMap<String, Polynomial>,
        target: &Arc<PolyRing>,
    ) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.substitute(bindings, target))
            .collect::<Result<_>>()?;
        Ok(Ideal::new(target, gens)?.with_budget(self.budget))
    }
}

fn drop_tag(g: &Polynomial, ring: &Arc<PolyRing>) -> Polynomial {
    let terms = g
        .terms()
        .iter()
        .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[1..]), c.clone()))
        .collect::<Vec<(Monomial, Rational)>>();
    Polynomial::from_terms(ring, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::VariableTable;

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::grevlex(VariableTable::uniform(names).unwrap())
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn principal_and_unit_bases() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x"]).unwrap();
        assert_eq!(i.groebner().unwrap(), &[p(&r, "x")]);
        let u = Ideal::parse(&r, &["x^2 + y", "1"]).unwrap();
        assert_eq!(u.groebner().unwrap(), &[p(&r, "1")]);
        assert!(u.is_unit().unwrap());
    }

    #[test]
    fn normal_form_single_step() {
        let r = PolyRing::grevlex(VariableTable::uniform(&["c1", "alpha"]).unwrap());
        let i = Ideal::parse(&r, &["c1^2 - alpha^2"]).unwrap();
        assert_eq!(i.normal_form(&p(&r, "c1^2")).unwrap(), p(&r, "alpha^2"));
        let j = Ideal::parse(&r, &["c1*alpha"]).unwrap();
        assert!(j.normal_form(&p(&r, "c1*alpha")).unwrap().is_zero());
    }

    #[test]
    fn membership() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x"]).unwrap();
        assert!(i.contains(&p(&r, "x^2 + x")).unwrap());
        assert!(!i.contains(&p(&r, "x + y")).unwrap());
        let other = ring(&["x"]);
        assert_eq!(i.contains(&p(&other, "x")), Err(Error::RingMismatch));
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        assert_eq!(
            x.intersect(&y).unwrap().groebner().unwrap(),
            &[p(&r, "x*y")]
        );
        let x2 = Ideal::parse(&r, &["x^2"]).unwrap();
        assert_eq!(
            x2.intersect(&x).unwrap().groebner().unwrap(),
            &[p(&r, "x^2")]
        );
        let i = Ideal::parse(&r, &["x^2 - y^2", "x*y"]).unwrap();
        assert!(i
            .intersect(&Ideal::unit(&r))
            .unwrap()
            .same_ideal(&i)
            .unwrap());
    }

    #[test]
    fn colons() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x*y"]).unwrap();
        assert!(i
            .colon(&p(&r, "x"))
            .unwrap()
            .same_ideal(&Ideal::parse(&r, &["y"]).unwrap())
            .unwrap());
        assert!(i.colon(&p(&r, "1")).unwrap().same_ideal(&i).unwrap());
        assert!(i.colon(&Polynomial::zero(&r)).is_err());
        let z = Ideal::parse(&r, &["y^2"]).unwrap();
        assert!(z
            .colon(&p(&r, "y"))
            .unwrap()
            .same_ideal(&Ideal::parse(&r, &["y"]).unwrap())
            .unwrap());
    }

    #[test]
    fn budget_is_a_hard_error() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^3 - y*z^2", "y^3 - x*z^2", "x*y - z^2"])
            .unwrap()
            .with_budget(Budget {
                max_basis: 2,
                max_degree: 400,
            });
        assert!(matches!(i.groebner(), Err(Error::BudgetExceeded(_))));
        assert!(!i.is_cached());
    }
}
