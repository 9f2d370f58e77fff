use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{same_ring, Polynomial, Rational};
use crate::ideal::{Ideal, QuotientRing};
use crate::linalg::{self, Matrix};

/// The abelian side of a presentation: the torus quotient's ring with its
/// Weyl involution, the class `e'`, the inclusion of the invariant ring and
/// the class `b` with `e = b·e'`.
#[derive(Clone, Debug)]
pub struct AbelianSide {
    pub ring: QuotientRing,
    pub euler_prime: Polynomial,
    pub involution: HashMap<String, Polynomial>,
    pub inclusion: HashMap<String, Polynomial>,
    pub b: Polynomial,
}

/// Data for computing the image of the Kirwan map as a quotient by `ann(e)`.
#[derive(Clone, Debug)]
pub struct KirwanPresentation {
    invariant: QuotientRing,
    euler: Polynomial,
    abelian: Option<AbelianSide>,
}

impl KirwanPresentation {
    pub fn new(invariant: QuotientRing, euler: Polynomial) -> Result<Self> {
        if !invariant.same_ring_as(&euler) {
            return Err(Error::RingMismatch);
        }
        if euler.is_zero() {
            return Err(Error::InvalidInput(
                "the Euler class must be nonzero".into(),
            ));
        }
        Ok(KirwanPresentation {
            invariant,
            euler,
            abelian: None,
        })
    }

    /// Attaches the abelian side after checking `e = b·e'` through the inclusion
    /// and that the involution fixes `e'` up to sign and preserves the ideal.
    pub fn with_abelian(mut self, side: AbelianSide) -> Result<Self> {
        let ring = side.ring.ring().clone();
        if !side.ring.same_ring_as(&side.euler_prime) || !same_ring(side.b.ring(), &ring) {
            return Err(Error::RingMismatch);
        }
        let included = self.euler.substitute(&side.inclusion, &ring)?;
        if included != &side.b * &side.euler_prime {
            return Err(Error::CheckFailed(
                "e differs from b·e' on the abelian side".into(),
            ));
        }
        if included.exact_div(&side.euler_prime)? != side.b {
            return Err(Error::CheckFailed(
                "e' does not divide e with quotient b".into(),
            ));
        }
        let ideal = side.ring.ideal();
        for g in ideal.groebner()? {
            if !ideal.contains(&g.substitute(&side.involution, &ring)?)? {
                return Err(Error::ActionNotInvariant);
            }
        }
        self.abelian = Some(side);
        Ok(self)
    }

    pub fn invariant_ring(&self) -> &QuotientRing {
        &self.invariant
    }

    pub fn euler(&self) -> &Polynomial {
        &self.euler
    }

    pub fn abelian(&self) -> Option<&AbelianSide> {
        self.abelian.as_ref()
    }
}

/// `R/(I : e)`, the quotient of the invariant ring by the annihilator of `e`.
pub fn kirwan_image(k: &KirwanPresentation) -> Result<QuotientRing> {
    let ideal = k.invariant.ideal();
    if k.euler.is_constant() {
        return Ok(k.invariant.clone());
    }
    let ann = ideal.colon(&k.euler)?;
    if !certify_annihilator(ideal, &k.euler, &ann)? {
        return Err(Error::CheckFailed(
            "colon ideal failed its certificate".into(),
        ));
    }
    Ok(QuotientRing::new(ann))
}

/// Checks `ann ⊇ ideal` and `g·f ∈ ideal` for every generator `g` of `ann`.
pub fn certify_annihilator(ideal: &Ideal, f: &Polynomial, ann: &Ideal) -> Result<bool> {
    if !ann.contains_ideal(ideal)? {
        return Ok(false);
    }
    for g in ann.groebner()? {
        if !ideal.contains(&(g * f))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree-by-degree dimensions of both sides of the second isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecondIsoComparison {
    /// Largest cohomological degree compared.
    pub max_degree: u32,
    /// Dimensions of `R^W / ann(e)` by algebraic weight.
    pub invariant: Vec<u64>,
    /// Dimensions of `(R_T / ann(e'))^W` by algebraic weight.
    pub abelian_invariant: Vec<u64>,
}

impl SecondIsoComparison {
    pub fn agrees(&self) -> bool {
        self.invariant == self.abelian_invariant
    }
}

/// Dimension of the fixed subspace of the involution in each degree up to `max_degree`.
pub fn invariant_dimensions(
    q: &QuotientRing,
    involution: &HashMap<String, Polynomial>,
    max_degree: u32,
) -> Result<Vec<u64>> {
    let ring = q.ring().clone();
    let mut out = Vec::new();
    for w in 0..=max_degree / 2 {
        let basis = q.graded_basis(2 * w)?;
        if basis.is_empty() {
            out.push(0);
            continue;
        }
        // rows: image of each basis monomial minus itself
        let mut m: Matrix<Rational> = Vec::with_capacity(basis.len());
        for (k, mono) in basis.iter().enumerate() {
            let p = Polynomial::monomial(&ring, mono.clone(), Rational::one());
            let image = p.substitute(involution, &ring)?;
            let mut row = q.coordinates(&image, &basis)?;
            row[k] -= &Rational::one();
            m.push(row);
        }
        out.push((basis.len() - linalg::rank(&m)) as u64);
    }
    Ok(out)
}

fn max_basis_degree(ideal: &Ideal) -> Result<u32> {
    Ok(ideal
        .groebner()?
        .iter()
        .filter_map(|g| g.degree())
        .max()
        .unwrap_or(0))
}

/// Compares graded dimensions of `R^W/ann(e)` and `(R_T/ann(e'))^W` up to `max_degree`.
pub fn second_iso_dimensions(
    k: &KirwanPresentation,
    max_degree: u32,
) -> Result<SecondIsoComparison> {
    let side = k.abelian.as_ref().ok_or_else(|| {
        Error::InvalidInput("the second isomorphism needs the abelian side".into())
    })?;
    let left = kirwan_image(k)?;
    let invariant = left.hilbert_series(max_degree)?.coefficients().to_vec();
    let ann_prime = side.ring.ideal().colon(&side.euler_prime)?;
    let right = QuotientRing::new(ann_prime);
    let abelian_invariant = invariant_dimensions(&right, &side.involution, max_degree)?;
    Ok(SecondIsoComparison {
        max_degree,
        invariant,
        abelian_invariant,
    })
}

/// Default comparison range: two degrees past the largest reduced-basis
/// element on either side, and at least the degree of `e`.
pub fn second_iso_bound(k: &KirwanPresentation) -> Result<u32> {
    let side = k.abelian.as_ref().ok_or_else(|| {
        Error::InvalidInput("the second isomorphism needs the abelian side".into())
    })?;
    let left = kirwan_image(k)?;
    let right = side.ring.ideal().colon(&side.euler_prime)?;
    let top = max_basis_degree(left.ideal())?.max(max_basis_degree(&right)?);
    Ok(top.max(k.euler.degree().unwrap_or(0)) + 4)
}

/// True when the two sides of the second isomorphism have equal graded
/// dimensions up to [`second_iso_bound`]. With trivial Weyl group (no
/// abelian side) the statement is vacuous.
pub fn verify_second_iso(k: &KirwanPresentation) -> Result<bool> {
    if k.abelian.is_none() {
        return Ok(true);
    }
    let bound = second_iso_bound(k)?;
    Ok(second_iso_dimensions(k, bound)?.agrees())
}
