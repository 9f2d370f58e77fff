use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{
    Monomial, PolyRing, Polynomial, Rational, RationalFunction, UniPoly, VariableTable,
};
use crate::ideal::{Ideal, QuotientRing};

/// Name of the equivariant parameter in every component ring.
pub const PARAM: &str = "x";

/// A vector of coordinates over `K = Q(x)` in a component's basis.
pub type Coords = Vec<RationalFunction>;

/// One connected component of the fixed locus.
///
/// The ring holds the component's own generators followed by the parameter
/// `x`; the relations must not involve `x`. Classes are coordinate vectors
/// over `Q(x)` in the standard-monomial basis of the algebra.
#[derive(Clone, Debug)]
pub struct FixedComponent {
    ring: Arc<PolyRing>,
    algebra: QuotientRing,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `table[i][j]`: coordinates of `basis[i] * basis[j]` over Q.
    table: Vec<Vec<Vec<Rational>>>,
    euler: Polynomial,
    fundamental: Polynomial,
    /// Integral of each basis element (nonzero only in top degree).
    top: Vec<Rational>,
}

fn x_index(ring: &PolyRing) -> usize {
    ring.nvars() - 1
}

impl FixedComponent {
    /// `vars` are the component's generators (the parameter `x` is appended).
    pub fn new(
        vars: &[(&str, u32)],
        relations: &[&str],
        euler: &str,
        fundamental: &str,
    ) -> Result<Self> {
        let mut all: Vec<(&str, u32)> = vars.to_vec();
        all.push((PARAM, 2));
        let ring = PolyRing::grevlex(VariableTable::new(&all)?);
        let rels = relations
            .iter()
            .map(|r| Polynomial::parse(&ring, r))
            .collect::<Result<Vec<_>>>()?;
        let euler = Polynomial::parse(&ring, euler)?;
        let fundamental = Polynomial::parse(&ring, fundamental)?;
        Self::from_parts(&ring, rels, euler, fundamental)
    }

    pub fn from_parts(
        ring: &Arc<PolyRing>,
        relations: Vec<Polynomial>,
        euler: Polynomial,
        fundamental: Polynomial,
    ) -> Result<Self> {
        if ring.vars.name(x_index(ring)) != PARAM {
            return Err(Error::InvalidInput(format!(
                "the last ring variable must be `{PARAM}`"
            )));
        }
        let xi = x_index(ring);
        if relations
            .iter()
            .chain([&fundamental])
            .any(|r| r.degree_in(xi) > 0)
        {
            return Err(Error::InvalidInput(
                "relations and fundamental class must not involve x".into(),
            ));
        }
        // the parameter is killed so that standard monomials are those of the algebra
        let mut gens = relations.clone();
        gens.push(Polynomial::var_index(ring, xi));
        let algebra = QuotientRing::new(Ideal::new(ring, gens)?);
        if !algebra.is_finite_dimensional()? {
            return Err(Error::InvalidInput(
                "component algebra is not finite-dimensional".into(),
            ));
        }
        let series = algebra.full_hilbert_series()?;
        let mut basis = Vec::new();
        for w in 0..series.coefficients().len() as u32 {
            let mut part = algebra.graded_basis(2 * w)?;
            part.reverse();
            basis.extend(part);
        }
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let mut comp = FixedComponent {
            ring: ring.clone(),
            algebra,
            basis,
            index,
            table: Vec::new(),
            euler,
            fundamental,
            top: Vec::new(),
        };
        comp.table = (0..comp.basis.len())
            .map(|i| {
                (0..comp.basis.len())
                    .map(|j| {
                        comp.rational_coords(&Polynomial::monomial(
                            ring,
                            comp.basis[i].mul(&comp.basis[j]),
                            Rational::one(),
                        ))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        comp.top = comp.top_functional()?;
        comp.invert_euler()?;
        Ok(comp)
    }

    fn rational_coords(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        let nf = self.algebra.normal_form(p)?;
        let mut out = vec![Rational::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            out[self.index[m]] += c;
        }
        Ok(out)
    }

    /// Reads the top-degree functional off the fundamental class: the top
    /// degree must be one-dimensional and the class nonzero there.
    fn top_functional(&self) -> Result<Vec<Rational>> {
        let deg = self.top_degree();
        let top_basis: Vec<usize> = (0..self.basis.len())
            .filter(|&k| self.basis[k].degree(&self.ring.vars) == deg)
            .collect();
        if top_basis.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "top degree {deg} of a component algebra must be one-dimensional"
            )));
        }
        if !self.fundamental.is_homogeneous() || self.fundamental.degree().unwrap_or(0) != deg {
            return Err(Error::InvalidInput(format!(
                "fundamental class must be homogeneous of degree {deg}"
            )));
        }
        let c = self.rational_coords(&self.fundamental)?[top_basis[0]].clone();
        let mut top = vec![Rational::zero(); self.basis.len()];
        top[top_basis[0]] = c
            .inv()
            .map_err(|_| Error::InvalidInput("fundamental class vanishes".into()))?;
        Ok(top)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn algebra(&self) -> &QuotientRing {
        &self.algebra
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Real dimension of the component.
    pub fn top_degree(&self) -> u32 {
        self.basis
            .iter()
            .map(|m| m.degree(&self.ring.vars))
            .max()
            .unwrap_or(0)
    }

    pub fn euler(&self) -> &Polynomial {
        &self.euler
    }

    pub fn fundamental(&self) -> &Polynomial {
        &self.fundamental
    }

    /// The same component with the opposite orientation: fundamental class
    /// and Euler class both negated.
    pub fn reversed(&self) -> Result<Self> {
        Self::from_parts(
            &self.ring,
            self.relations(),
            -&self.euler,
            -&self.fundamental,
        )
    }

    /// The relations of the algebra (without the parameter).
    pub fn relations(&self) -> Vec<Polynomial> {
        let xi = x_index(&self.ring);
        self.algebra
            .ideal()
            .generators()
            .iter()
            .filter(|g| g.degree_in(xi) == 0)
            .cloned()
            .collect()
    }

    /// Coordinates of a polynomial in the component ring (the parameter becomes `x ∈ K`).
    pub fn coords(&self, p: &Polynomial) -> Result<Coords> {
        if !crate::exactalg::same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let xi = x_index(&self.ring);
        let mut by_power: Vec<Vec<(Monomial, Rational)>> = Vec::new();
        for (m, c) in p.terms() {
            let k = m.exponent(xi) as usize;
            if by_power.len() <= k {
                by_power.resize(k + 1, Vec::new());
            }
            let mut m0 = m.clone();
            m0.set_exponent(xi, 0);
            by_power[k].push((m0, c.clone()));
        }
        let mut coeffs: Vec<Vec<Rational>> = vec![Vec::new(); self.basis.len()];
        for (k, terms) in by_power.into_iter().enumerate() {
            let part = self.rational_coords(&Polynomial::from_terms(&self.ring, terms))?;
            for (slot, c) in coeffs.iter_mut().zip(part) {
                if slot.len() <= k {
                    slot.resize(k + 1, Rational::zero());
                }
                slot[k] = c;
            }
        }
        Ok(coeffs
            .into_iter()
            .map(|c| RationalFunction::from_poly(UniPoly::new(c)))
            .collect())
    }

    pub fn zero(&self) -> Coords {
        vec![RationalFunction::zero(); self.basis.len()]
    }

    pub fn one(&self) -> Coords {
        let mut v = self.zero();
        v[0] = RationalFunction::one();
        v
    }

    pub fn mul(&self, a: &Coords, b: &Coords) -> Coords {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let ab = ai * bj;
                for (k, c) in self.table[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                {
                    out[k] = &out[k] + &ab.scale(c);
                }
            }
        }
        out
    }

    /// `∫_F a`: the top-degree coefficient against the fundamental class.
    pub fn integrate_top(&self, a: &Coords) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (c, t) in a.iter().zip(&self.top) {
            if !t.is_zero() {
                acc = &acc + &c.scale(t);
            }
        }
        acc
    }

    /// The inverse of the Euler class in `algebra ⊗ K`, by the finite geometric
    /// series around its degree-zero part. The result is checked against the
    /// Euler class before returning.
    pub fn invert_euler(&self) -> Result<Coords> {
        let e = self.coords(&self.euler)?;
        let lead = e[0].clone();
        if lead.is_zero() {
            return Err(Error::DegenerateEuler(0));
        }
        let lead_inv = lead.inv()?;
        // e = lead (1 + n) with n nilpotent
        let mut n = e.iter().map(|c| c * &lead_inv).collect::<Coords>();
        n[0] = RationalFunction::zero();
        let minus_n: Coords = n.iter().map(|c| -c).collect();
        let mut term = self.one();
        let mut sum = self.one();
        for _ in 0..self.basis.len() {
            term = self.mul(&term, &minus_n);
            if term.iter().all(|c| c.is_zero()) {
                break;
            }
            sum = sum.iter().zip(&term).map(|(a, b)| a + b).collect();
        }
        let u: Coords = sum.iter().map(|c| c * &lead_inv).collect();
        if self.mul(&u, &e) != self.one() {
            return Err(Error::CheckFailed(
                "Euler inverse does not multiply to 1".into(),
            ));
        }
        Ok(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        let p = |c: &[i64]| UniPoly::new(c.iter().map(|&v| Rational::from_int(v)).collect());
        RationalFunction::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn point_with_euler_x() {
        let c = FixedComponent::new(&[("eta", 2)], &["eta"], "x", "1").unwrap();
        assert_eq!(c.invert_euler().unwrap(), vec![rf(&[1], &[0, 1])]);
    }

    #[test]
    fn nilpotent_correction() {
        let c = FixedComponent::new(&[("h", 2)], &["h^2"], "x + h", "h").unwrap();
        assert_eq!(
            c.invert_euler().unwrap(),
            vec![rf(&[1], &[0, 1]), rf(&[-1], &[0, 0, 1])]
        );
        let c = FixedComponent::new(&[("h", 2)], &["h^2"], "-x + h", "h").unwrap();
        assert_eq!(
            c.invert_euler().unwrap(),
            vec![rf(&[-1], &[0, 1]), rf(&[-1], &[0, 0, 1])]
        );
        let one = c.one();
        let c = FixedComponent::new(&[("h", 2)], &["h^2"], "x + h", "h").unwrap();
        let u = c.invert_euler().unwrap();
        assert_eq!(c.integrate_top(&c.mul(&one, &u)), rf(&[-1], &[0, 0, 1]));
    }

    #[test]
    fn degenerate_euler_is_rejected() {
        assert_eq!(
            FixedComponent::new(&[("h", 2)], &["h^2"], "h", "h").unwrap_err(),
            Error::DegenerateEuler(0)
        );
    }

    #[test]
    fn top_degree_must_be_one_dimensional() {
        assert!(
            FixedComponent::new(&[("u", 2), ("v", 2)], &["u^2", "v^2", "u*v"], "x", "u").is_err()
        );
    }
}
