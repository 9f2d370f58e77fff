use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{same_ring, Monomial, PolyRing, Polynomial, Rational};
use crate::linalg::{self, Matrix};

use super::ideal::Ideal;

/// Dimensions of a graded quotient by algebraic weight (cohomological degree
/// `2k` sits at index `k`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    dims: Vec<u64>,
    /// Set when the quotient is finite-dimensional and every nonzero degree
    /// lies inside the computed range.
    exact: bool,
}

impl HilbertSeries {
    pub fn new(dims: Vec<u64>, exact: bool) -> Self {
        HilbertSeries { dims, exact }
    }

    /// Coefficients indexed by algebraic weight.
    pub fn coefficients(&self) -> &[u64] {
        &self.dims
    }

    /// Dimension in cohomological degree `deg` (zero in odd degrees).
    pub fn dim(&self, deg: u32) -> u64 {
        if deg % 2 == 1 {
            return 0;
        }
        self.dims.get((deg / 2) as usize).copied().unwrap_or(0)
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Largest cohomological degree covered.
    pub fn max_degree(&self) -> u32 {
        2 * (self.dims.len() as u32).saturating_sub(1)
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Coefficients with trailing zeros removed; meaningful for exact series.
    pub fn trimmed(&self) -> Vec<u64> {
        let mut d = self.dims.clone();
        while d.len() > 1 && d.last() == Some(&0) {
            d.pop();
        }
        d
    }

    /// Checks `self = base / (1 - t^deg)` on the common range, i.e. that a ring
    /// with series `self` is free over a polynomial ring in one variable of
    /// cohomological degree `deg` with fibre series `base`.
    pub fn is_free_extension_of(&self, base: &HilbertSeries, deg: u32) -> bool {
        let w = (deg / 2) as usize;
        assert!(w > 0, "free-extension check needs a positive degree");
        let n = self.dims.len().min(base.dims.len());
        (0..n).all(|k| {
            let expected: u64 = (0..=k / w).map(|m| base.dims[k - m * w]).sum();
            self.dims[k] == expected
        })
    }

    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (k, &d) in self.dims.iter().enumerate() {
            if d == 0 {
                continue;
            }
            parts.push(match k {
                0 => format!("{d}"),
                _ => format!("{d}*t^{}", 2 * k),
            });
        }
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        if self.exact {
            body
        } else {
            format!("{body} + O(t^{})", 2 * self.dims.len())
        }
    }
}

/// The quotient of a polynomial ring by an ideal.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ideal: Ideal,
}

impl QuotientRing {
    pub fn new(ideal: Ideal) -> Self {
        QuotientRing { ideal }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    fn weights(&self) -> Result<&[u32]> {
        let w = self.ring().vars.weights();
        if w.contains(&0) {
            return Err(Error::InvalidInput(
                "graded dimensions need positive variable degrees".into(),
            ));
        }
        Ok(w)
    }

    /// Standard monomials of weight at most `max_weight`, grouped by weight.
    pub(crate) fn standard_monomials(&self, max_weight: u32) -> Result<Vec<Vec<Monomial>>> {
        let lms = self.ideal.leading_monomials()?;
        let weights = self.weights()?;
        let mut out = vec![Vec::new(); max_weight as usize + 1];
        let n = weights.len();
        let mut cur = Monomial::one(n);
        fn rec(
            i: usize,
            w: u32,
            max: u32,
            weights: &[u32],
            lms: &[Monomial],
            cur: &mut Monomial,
            out: &mut [Vec<Monomial>],
        ) {
            if i == weights.len() {
                out[w as usize].push(cur.clone());
                return;
            }
            let mut e: u32 = 0;
            while w + e * weights[i] <= max {
                cur.set_exponent(i, e as u16);
                if lms.iter().any(|l| l.divides(cur)) {
                    break;
                }
                rec(i + 1, w + e * weights[i], max, weights, lms, cur, out);
                e += 1;
            }
            cur.set_exponent(i, 0);
        }
        rec(0, 0, max_weight, weights, &lms, &mut cur, &mut out);
        let ring = self.ring().clone();
        for v in &mut out {
            v.sort_by(|a, b| ring.cmp(b, a));
        }
        Ok(out)
    }

    /// True when every variable has a pure power among the leading monomials.
    pub fn is_finite_dimensional(&self) -> Result<bool> {
        let lms = self.ideal.leading_monomials()?;
        let n = self.ring().nvars();
        Ok((0..n).all(|i| {
            lms.iter()
                .any(|m| m.support().all(|j| j == i) && m.exponent(i) > 0)
        }))
    }

    /// Upper bound on the weight of a standard monomial of a finite quotient.
    fn top_weight_bound(&self) -> Result<Option<u32>> {
        if !self.is_finite_dimensional()? {
            return Ok(None);
        }
        let lms = self.ideal.leading_monomials()?;
        let weights = self.weights()?;
        let n = weights.len();
        let bound = (0..n)
            .map(|i| {
                let pure = lms
                    .iter()
                    .filter(|m| m.support().all(|j| j == i))
                    .map(|m| m.exponent(i) as u32)
                    .min()
                    .unwrap();
                (pure - 1) * weights[i]
            })
            .sum();
        Ok(Some(bound))
    }

    /// Graded dimensions up to cohomological degree `max_degree`.
    pub fn hilbert_series(&self, max_degree: u32) -> Result<HilbertSeries> {
        let max_w = max_degree / 2;
        let top = self.top_weight_bound()?;
        let reach = match top {
            Some(t) => max_w.max(t),
            None => max_w,
        };
        let std = self.standard_monomials(reach)?;
        let mut dims: Vec<u64> = std.iter().map(|v| v.len() as u64).collect();
        let exact = match top {
            Some(_) => {
                let last = dims.iter().rposition(|&d| d > 0).unwrap_or(0) as u32;
                if last <= max_w {
                    dims.truncate(max_w as usize + 1);
                    true
                } else {
                    dims.truncate(max_w as usize + 1);
                    false
                }
            }
            None => false,
        };
        Ok(HilbertSeries::new(dims, exact))
    }

    /// The complete series of a finite-dimensional quotient.
    pub fn full_hilbert_series(&self) -> Result<HilbertSeries> {
        let top = self
            .top_weight_bound()?
            .ok_or_else(|| Error::InvalidInput("quotient is not finite-dimensional".into()))?;
        let mut s = self.hilbert_series(2 * top)?;
        let trimmed = s.trimmed();
        s = HilbertSeries::new(trimmed, true);
        Ok(s)
    }

    pub fn total_dimension(&self) -> Result<u64> {
        Ok(self.full_hilbert_series()?.total())
    }

    /// Standard monomials of cohomological degree `deg`.
    pub fn graded_basis(&self, deg: u32) -> Result<Vec<Monomial>> {
        if deg % 2 == 1 {
            return Ok(Vec::new());
        }
        let w = deg / 2;
        Ok(self.standard_monomials(w)?.swap_remove(w as usize))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ideal.normal_form(f)
    }

    /// Coordinates of a homogeneous class of degree `deg` in [`Self::graded_basis`].
    pub fn coordinates(&self, f: &Polynomial, basis: &[Monomial]) -> Result<Vec<Rational>> {
        let nf = self.normal_form(f)?;
        let mut out = vec![Rational::zero(); basis.len()];
        for (m, c) in nf.terms() {
            let k = basis.iter().position(|b| b == m).ok_or_else(|| {
                Error::InvalidInput(format!("`{f}` has a term outside the given degree"))
            })?;
            out[k] = c.clone();
        }
        Ok(out)
    }

    /// Rank of the images of `polys` in the degree-`deg` part.
    pub fn rank_of(&self, polys: &[Polynomial], deg: u32) -> Result<usize> {
        let basis = self.graded_basis(deg)?;
        let rows: Matrix<Rational> = polys
            .iter()
            .map(|p| self.coordinates(p, &basis))
            .collect::<Result<_>>()?;
        Ok(linalg::rank(&rows))
    }

    /// `dim_Q R/(v - 1)R`, which for a graded ring finite over `Q[v]` is its rank
    /// after inverting `v`.
    pub fn localized_rank(&self, var: &str) -> Result<u64> {
        let ring = self.ring();
        let v = Polynomial::var(ring, var)?;
        let dehom = self.ideal.extend([&v - &Polynomial::one(ring)])?;
        let q = QuotientRing::new(dehom);
        if !q.is_finite_dimensional()? {
            return Err(Error::InvalidInput(format!(
                "quotient is not finite over Q[{var}]"
            )));
        }
        Ok(q.standard_basis()?.len() as u64)
    }

    /// All standard monomials of a finite-dimensional quotient.
    pub fn standard_basis(&self) -> Result<Vec<Monomial>> {
        let top = self
            .top_weight_bound()?
            .ok_or_else(|| Error::InvalidInput("quotient is not finite-dimensional".into()))?;
        Ok(self
            .standard_monomials(top)?
            .into_iter()
            .flatten()
            .collect())
    }

    /// Quotient by the ideal plus extra generators.
    pub fn quotient_by(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<QuotientRing> {
        Ok(QuotientRing::new(self.ideal.extend(extra)?))
    }

    pub fn same_ring_as(&self, p: &Polynomial) -> bool {
        same_ring(p.ring(), self.ring())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::VariableTable;

    fn quotient(vars: &[(&str, u32)], gens: &[&str]) -> QuotientRing {
        let r = PolyRing::grevlex(VariableTable::new(vars).unwrap());
        QuotientRing::new(Ideal::parse(&r, gens).unwrap())
    }

    #[test]
    fn truncated_polynomial_ring() {
        let q = quotient(&[("c1", 2)], &["c1^2"]);
        let h = q.hilbert_series(10).unwrap();
        assert_eq!(h.trimmed(), vec![1, 1]);
        assert!(h.is_exact());
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(2), 1);
        assert!(q.graded_basis(4).unwrap().is_empty());
        assert_eq!(q.graded_basis(0).unwrap().len(), 1);
    }

    #[test]
    fn two_quadrics() {
        // c1^2 = c2^2 = alpha^2 in three degree-2 variables
        let q = quotient(
            &[("c1", 2), ("c2", 2), ("alpha", 2)],
            &["c1^2 - alpha^2", "c2^2 - alpha^2"],
        );
        let h = q.hilbert_series(8).unwrap();
        assert_eq!(h.coefficients(), &[1, 3, 4, 4, 4]);
        assert!(!h.is_exact());
    }

    #[test]
    fn free_extension_check() {
        // Q[c, x]/(c^2) is free over Q[x] with fibre 1 + t^2
        let q = quotient(&[("c", 2), ("x", 2)], &["c^2"]);
        let base = quotient(&[("c", 2), ("x", 2)], &["c^2", "x"])
            .hilbert_series(12)
            .unwrap();
        assert!(q.hilbert_series(12).unwrap().is_free_extension_of(&base, 2));
        // Q[c, x]/(c x) is not
        let q2 = quotient(&[("c", 2), ("x", 2)], &["c*x"]);
        let base2 = quotient(&[("c", 2), ("x", 2)], &["c*x", "x"])
            .hilbert_series(12)
            .unwrap();
        assert!(!q2
            .hilbert_series(12)
            .unwrap()
            .is_free_extension_of(&base2, 2));
    }

    #[test]
    fn localized_rank_ignores_torsion() {
        // Q[c, x]/(c^2, c x): torsion c, free part Q[x]
        let q = quotient(&[("c", 2), ("x", 2)], &["c^2", "c*x"]);
        assert_eq!(q.localized_rank("x").unwrap(), 1);
        let p3 = quotient(&[("h", 2), ("x", 2)], &["h^2*(h - x)^2"]);
        assert_eq!(p3.localized_rank("x").unwrap(), 4);
    }
}
