use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational, RationalFunction};
use crate::linalg::{self, Matrix};

use super::component::{Coords, FixedComponent};

/// A circle-compact space presented by its fixed components.
#[derive(Debug)]
pub struct CircleCompactModel {
    components: Vec<FixedComponent>,
    inverse_euler: Vec<Coords>,
    gram: OnceLock<Matrix<RationalFunction>>,
}

/// An element of `Ĥ(M) = ⊕_F H(F) ⊗ K`, stored per component.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantClass {
    parts: Vec<Coords>,
}

impl EquivariantClass {
    pub fn parts(&self) -> &[Coords] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().flatten().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        EquivariantClass {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    /// All coordinates in one vector, components in order.
    pub fn flatten(&self) -> Vec<RationalFunction> {
        self.parts.iter().flatten().cloned().collect()
    }

    fn zip_with(
        &self,
        o: &Self,
        f: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction,
    ) -> Self {
        assert_eq!(
            self.parts.len(),
            o.parts.len(),
            "classes of different models"
        );
        EquivariantClass {
            parts: self
                .parts
                .iter()
                .zip(&o.parts)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }
}

impl Add for &EquivariantClass {
    type Output = EquivariantClass;
    fn add(self, o: &EquivariantClass) -> EquivariantClass {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &EquivariantClass {
    type Output = EquivariantClass;
    fn sub(self, o: &EquivariantClass) -> EquivariantClass {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Neg for &EquivariantClass {
    type Output = EquivariantClass;
    fn neg(self) -> EquivariantClass {
        EquivariantClass {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|c| -c).collect())
                .collect(),
        }
    }
}

impl CircleCompactModel {
    pub fn new(components: Vec<FixedComponent>) -> Result<Arc<Self>> {
        if components.is_empty() {
            return Err(Error::InvalidInput(
                "a model needs at least one fixed component".into(),
            ));
        }
        let inverse_euler = components
            .iter()
            .enumerate()
            .map(|(k, c)| {
                c.invert_euler().map_err(|e| match e {
                    Error::DegenerateEuler(_) => Error::DegenerateEuler(k),
                    e => e,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(CircleCompactModel {
            components,
            inverse_euler,
            gram: OnceLock::new(),
        }))
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    /// `Σ_F dim H(F)`, the rank of `Ĥ(M)` over `K`.
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.dim()).sum()
    }

    pub fn inverse_euler(&self, k: usize) -> &Coords {
        &self.inverse_euler[k]
    }

    pub fn zero(&self) -> EquivariantClass {
        EquivariantClass {
            parts: self.components.iter().map(|c| c.zero()).collect(),
        }
    }

    pub fn one(&self) -> EquivariantClass {
        EquivariantClass {
            parts: self.components.iter().map(|c| c.one()).collect(),
        }
    }

    /// The class restricting to the given polynomial on each component.
    pub fn class(&self, restrictions: &[Polynomial]) -> Result<EquivariantClass> {
        if restrictions.len() != self.components.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} restrictions, got {}",
                self.components.len(),
                restrictions.len()
            )));
        }
        let parts = self
            .components
            .iter()
            .zip(restrictions)
            .map(|(c, p)| c.coords(p))
            .collect::<Result<_>>()?;
        Ok(EquivariantClass { parts })
    }

    /// Parses one restriction per component in that component's ring.
    pub fn parse_class(&self, restrictions: &[&str]) -> Result<EquivariantClass> {
        let polys = self
            .components
            .iter()
            .zip(restrictions)
            .map(|(c, s)| Polynomial::parse(c.ring(), s))
            .collect::<Result<Vec<_>>>()?;
        self.class(&polys)
    }

    pub fn from_coords(&self, parts: Vec<Coords>) -> Result<EquivariantClass> {
        if parts.len() != self.components.len()
            || parts
                .iter()
                .zip(&self.components)
                .any(|(p, c)| p.len() != c.dim())
        {
            return Err(Error::InvalidInput(
                "coordinate shape does not match the model".into(),
            ));
        }
        Ok(EquivariantClass { parts })
    }

    pub fn from_flat(&self, flat: &[RationalFunction]) -> Result<EquivariantClass> {
        if flat.len() != self.rank() {
            return Err(Error::BasisCardinality {
                expected: self.rank(),
                got: flat.len(),
            });
        }
        let mut parts = Vec::with_capacity(self.components.len());
        let mut at = 0;
        for c in &self.components {
            parts.push(flat[at..at + c.dim()].to_vec());
            at += c.dim();
        }
        Ok(EquivariantClass { parts })
    }

    /// The standard basis: one class per (component, basis monomial).
    pub fn standard_basis(&self) -> Vec<EquivariantClass> {
        let mut out = Vec::with_capacity(self.rank());
        for (k, c) in self.components.iter().enumerate() {
            for i in 0..c.dim() {
                let mut z = self.zero();
                z.parts[k][i] = RationalFunction::one();
                out.push(z);
            }
        }
        out
    }

    pub fn mul(&self, a: &EquivariantClass, b: &EquivariantClass) -> EquivariantClass {
        EquivariantClass {
            parts: self
                .components
                .iter()
                .zip(a.parts.iter().zip(&b.parts))
                .map(|(c, (x, y))| c.mul(x, y))
                .collect(),
        }
    }

    /// `∫_M a = Σ_F ∫_F a|_F / e(F)`.
    pub fn integrate(&self, a: &EquivariantClass) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for ((c, part), inv) in self
            .components
            .iter()
            .zip(&a.parts)
            .zip(&self.inverse_euler)
        {
            acc = &acc + &c.integrate_top(&c.mul(part, inv));
        }
        acc
    }

    pub fn pairing(&self, a: &EquivariantClass, b: &EquivariantClass) -> RationalFunction {
        self.integrate(&self.mul(a, b))
    }

    pub fn gram_matrix(&self, basis: &[EquivariantClass]) -> Matrix<RationalFunction> {
        basis
            .iter()
            .map(|a| basis.iter().map(|b| self.pairing(a, b)).collect())
            .collect()
    }

    /// Gram matrix of the standard basis, computed once.
    pub fn standard_gram(&self) -> &Matrix<RationalFunction> {
        self.gram
            .get_or_init(|| self.gram_matrix(&self.standard_basis()))
    }

    /// True iff the pairing is nondegenerate on the span of `basis`, which must
    /// have one class per unit of rank.
    pub fn is_nondegenerate(&self, basis: &[EquivariantClass]) -> Result<bool> {
        if basis.len() != self.rank() {
            return Err(Error::BasisCardinality {
                expected: self.rank(),
                got: basis.len(),
            });
        }
        Ok(!linalg::determinant(&self.gram_matrix(basis)).is_zero())
    }

    /// Rank over `K` of a family of classes.
    pub fn span_rank(&self, classes: &[EquivariantClass]) -> usize {
        linalg::rank(&classes.iter().map(|c| c.flatten()).collect::<Matrix<_>>())
    }

    /// The class `c` with `⟨c, e_b⟩ = values[b]` for each standard basis class.
    pub fn dual_solve(&self, values: &[RationalFunction]) -> Result<EquivariantClass> {
        let gram = self.standard_gram();
        let y = linalg::solve(gram, values).ok_or(Error::SingularGram)?;
        if linalg::determinant(gram).is_zero() {
            return Err(Error::SingularGram);
        }
        self.from_flat(&y)
    }

    /// Random class with small integer polynomial coordinates, for property checks.
    pub fn sample(&self, rng: &mut impl rand::Rng) -> EquivariantClass {
        let parts = self
            .components
            .iter()
            .map(|c| {
                (0..c.dim())
                    .map(|_| {
                        let coeffs: Vec<Rational> = (0..3)
                            .map(|_| Rational::from_int(rng.gen_range(-3..=3)))
                            .collect();
                        RationalFunction::from_poly(crate::exactalg::UniPoly::new(coeffs))
                    })
                    .collect()
            })
            .collect();
        EquivariantClass { parts }
    }
}
