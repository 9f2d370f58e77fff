use std::collections::HashMap;

use crate::abelianization::{AbelianSide, KirwanPresentation};
use crate::error::{Error, Result};
use crate::exactalg::{PolyRing, Polynomial, Rational, VariableTable};
use crate::ideal::{Ideal, QuotientRing};

use super::instance::{HyperpolygonInstance, ALPHA, ALPHA2};

/// `Q[c_1..c_n] / (⟨c_i^2 - c_j^2⟩ + ⟨all monomials of degree n - 2⟩)`, with
/// degree counted in the degree-2 generators.
pub fn konno_ring(n: usize) -> Result<QuotientRing> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n >= 3, got {n}")));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("c{i}")).collect();
    let ring = PolyRing::grevlex(VariableTable::uniform(&names)?);
    let c = |i: usize| Polynomial::var_index(&ring, i);
    let mut gens: Vec<Polynomial> = (1..n).map(|i| &c(i).pow(2) - &c(0).pow(2)).collect();
    let top = (n - 2) as u32;
    gens.extend(
        ring.monomials_of_weight(top)
            .into_iter()
            .map(|m| Polynomial::monomial(&ring, m, Rational::one())),
    );
    Ok(QuotientRing::new(Ideal::new(&ring, gens)?))
}

impl HyperpolygonInstance {
    /// Invariant ring `Q/J` with `e`, plus the abelian ring `P/I` with `e'`,
    /// the involution `alpha -> -alpha`, the inclusion `alpha2 -> alpha^2`
    /// and `b = alpha`.
    pub fn kirwan_presentation(&self) -> Result<KirwanPresentation> {
        let mut involution = HashMap::new();
        involution.insert(ALPHA.to_string(), -&self.alpha());
        let mut inclusion = HashMap::new();
        inclusion.insert(ALPHA2.to_string(), self.alpha().pow(2));
        let side = AbelianSide {
            ring: QuotientRing::new(self.ideal_i()?.clone()),
            euler_prime: self.euler_eprime(),
            involution,
            inclusion,
            b: self.alpha(),
        };
        KirwanPresentation::new(self.quotient_j()?, self.euler_e())?.with_abelian(side)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_konno_rings() {
        assert_eq!(
            konno_ring(3)
                .unwrap()
                .full_hilbert_series()
                .unwrap()
                .trimmed(),
            vec![1]
        );
        assert_eq!(
            konno_ring(4)
                .unwrap()
                .full_hilbert_series()
                .unwrap()
                .trimmed(),
            vec![1, 4]
        );
        assert!(konno_ring(2).is_err());
    }
}
