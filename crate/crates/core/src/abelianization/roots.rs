use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{product, PolyRing, Polynomial, Rational, VariableTable};

/// Roots of a compact group as linear forms on its maximal torus.
///
/// The ambient ring holds the torus coordinates and the equivariant
/// parameter `x`; the negative roots are the negatives of the positive ones.
#[derive(Clone, Debug)]
pub struct RootDatum {
    ring: Arc<PolyRing>,
    x: Polynomial,
    positive: Vec<Polynomial>,
    weyl_order: u64,
}

impl RootDatum {
    /// `x_name` names the equivariant parameter; every other variable of
    /// degree 2 counts as a torus coordinate.
    pub fn new(
        ring: &Arc<PolyRing>,
        x_name: &str,
        positive: Vec<Polynomial>,
        weyl_order: u64,
    ) -> Result<Self> {
        let x = Polynomial::var(ring, x_name)?;
        let xi = ring.vars.index_of(x_name).unwrap();
        if weyl_order == 0 {
            return Err(Error::InvalidInput(
                "Weyl group order must be positive".into(),
            ));
        }
        for r in &positive {
            if r.ring() != ring {
                return Err(Error::RingMismatch);
            }
            let linear = r.terms().iter().all(|(m, _)| {
                m.total_exponent() == 1 && ring.vars.degree(m.support().next().unwrap()) == 2
            });
            if r.is_zero() || !linear || r.degree_in(xi) > 0 {
                return Err(Error::InvalidInput(format!(
                    "root `{r}` is not a nonzero linear form in the torus coordinates"
                )));
            }
        }
        Ok(RootDatum {
            ring: ring.clone(),
            x,
            positive,
            weyl_order,
        })
    }

    /// Parses the declarative format
    ///
    /// ```text
    /// torus: a1, a2
    /// positive: a1; a2; a1 + a2
    /// weyl_order: 6
    /// ```
    ///
    /// The parameter is always called `x`. Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once(':').ok_or_else(|| Error::Parse {
                pos: lineno,
                msg: format!("expected `key: value`, got `{line}`"),
            })?;
            fields.insert(k.trim(), v.trim());
        }
        let get = |k: &str| {
            fields.get(k).copied().ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("missing `{k}`"),
            })
        };
        let torus: Vec<&str> = get("torus")?
            .split([',', ' '])
            .filter(|s| !s.is_empty())
            .collect();
        let mut vars: Vec<(&str, u32)> = torus.iter().map(|t| (*t, 2)).collect();
        vars.push(("x", 2));
        let ring = PolyRing::grevlex(VariableTable::new(&vars)?);
        let roots_text = get("positive")?;
        let positive = roots_text
            .split([';', ','])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Polynomial::parse(&ring, s))
            .collect::<Result<Vec<_>>>()?;
        let weyl_order = match fields.get("weyl_order") {
            Some(w) => w.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad Weyl order `{w}`"),
            })?,
            None => 1,
        };
        Self::new(&ring, "x", positive, weyl_order)
    }

    /// `SU(2)` on the torus coordinate `alpha`.
    pub fn su2() -> Self {
        Self::parse("torus: alpha\npositive: alpha\nweyl_order: 2").unwrap()
    }

    /// `SU(3)` with simple roots `a1`, `a2`.
    pub fn su3() -> Self {
        Self::parse("torus: a1, a2\npositive: a1; a2; a1 + a2\nweyl_order: 6").unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn x(&self) -> &Polynomial {
        &self.x
    }

    pub fn torus_rank(&self) -> usize {
        self.ring.nvars() - 1
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    pub fn positive_roots(&self) -> &[Polynomial] {
        &self.positive
    }

    pub fn negative_roots(&self) -> Vec<Polynomial> {
        self.positive.iter().map(|r| -r).collect()
    }

    /// Positive roots followed by negative ones.
    pub fn roots(&self) -> Vec<Polynomial> {
        let mut all = self.positive.clone();
        all.extend(self.negative_roots());
        all
    }
}

/// `∏_{α∈Δ} α (x - α)`.
pub fn class_e(r: &RootDatum) -> Polynomial {
    product(r.ring(), r.roots().into_iter().map(|a| &a * &(r.x() - &a)))
}

/// `∏_{α∈Δ-} α · ∏_{α∈Δ} (x - α)`.
pub fn class_eprime(r: &RootDatum) -> Polynomial {
    let neg = product(r.ring(), r.negative_roots());
    let lin = product(r.ring(), r.roots().into_iter().map(|a| r.x() - &a));
    &neg * &lin
}

/// `∏_{α∈Δ+} α`.
pub fn class_b(r: &RootDatum) -> Polynomial {
    product(r.ring(), r.positive_roots().iter().cloned())
}

/// A Weyl group given by generating substitutions of ring variables.
#[derive(Clone, Debug)]
pub struct WeylAction {
    ring: Arc<PolyRing>,
    generators: Vec<HashMap<String, Polynomial>>,
}

impl WeylAction {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<HashMap<String, Polynomial>>) -> Result<Self> {
        for g in &generators {
            for (k, v) in g {
                if ring.vars.index_of(k).is_none() {
                    return Err(Error::UnboundVariable(k.clone()));
                }
                if v.ring() != ring {
                    return Err(Error::RingMismatch);
                }
            }
        }
        Ok(WeylAction {
            ring: ring.clone(),
            generators,
        })
    }

    /// Parses each generator from `var -> image` pairs, e.g. `a1 -> -a1, a2 -> a1 + a2`.
    pub fn parse(ring: &Arc<PolyRing>, generators: &[&str]) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            let mut map = HashMap::new();
            for part in g.split(',') {
                let (k, v) = part.split_once("->").ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("expected `var -> image` in `{part}`"),
                })?;
                map.insert(k.trim().to_string(), Polynomial::parse(ring, v.trim())?);
            }
            gens.push(map);
        }
        Self::new(ring, gens)
    }

    /// The simple reflections of `SU(2)` or `SU(3)` acting on the datum's ring.
    pub fn for_datum(r: &RootDatum) -> Result<Self> {
        match r.torus_rank() {
            1 => {
                let t = r.ring().vars.name(0).to_string();
                Self::parse(r.ring(), &[&format!("{t} -> -{t}")])
            }
            2 => {
                let (a, b) = (
                    r.ring().vars.name(0).to_string(),
                    r.ring().vars.name(1).to_string(),
                );
                Self::parse(
                    r.ring(),
                    &[
                        &format!("{a} -> -{a}, {b} -> {a} + {b}"),
                        &format!("{b} -> -{b}, {a} -> {a} + {b}"),
                    ],
                )
            }
            k => Err(Error::InvalidInput(format!(
                "no built-in Weyl action for torus rank {k}"
            ))),
        }
    }

    pub fn generators(&self) -> &[HashMap<String, Polynomial>] {
        &self.generators
    }

    pub fn apply(&self, k: usize, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.generators[k], &self.ring)
    }

    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool> {
        for k in 0..self.generators.len() {
            if &self.apply(k, f)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Sign with `a = sign · b`, if any.
pub fn sign_relation(a: &Polynomial, b: &Polynomial) -> Option<Rational> {
    if a == b {
        Some(Rational::one())
    } else if a == &-b {
        Some(-Rational::one())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_classes() {
        let r = RootDatum::su2();
        let p = |s: &str| Polynomial::parse(r.ring(), s).unwrap();
        assert_eq!(class_e(&r), p("alpha^4 - alpha^2*x^2"));
        assert_eq!(class_eprime(&r), p("alpha^3 - alpha*x^2"));
        assert_eq!(&class_b(&r) * &class_eprime(&r), class_e(&r));
        assert_eq!(
            class_e(&r).exact_div(&class_eprime(&r)).unwrap(),
            class_b(&r)
        );
        // the hyperpolygon normalization differs by a global sign
        assert_eq!(
            sign_relation(&class_e(&r), &p("alpha^2*(x^2 - alpha^2)")),
            Some(-Rational::one())
        );
    }

    #[test]
    fn empty_root_system() {
        let r = RootDatum::parse("torus: t\npositive:").unwrap();
        assert!(class_e(&r).is_one());
        assert!(class_eprime(&r).is_one());
        assert!(class_b(&r).is_one());
    }

    #[test]
    fn su3_class_is_weyl_invariant() {
        let r = RootDatum::su3();
        let e = class_e(&r);
        assert_eq!(e.degree(), Some(24));
        assert!(e.is_homogeneous());
        let w = WeylAction::for_datum(&r).unwrap();
        assert!(w.is_invariant(&e).unwrap());
        assert!(!w.is_invariant(&class_b(&r)).unwrap());
        assert_eq!(&class_b(&r) * &class_eprime(&r), e);
    }

    #[test]
    fn rejects_non_linear_roots() {
        assert!(RootDatum::parse("torus: a\npositive: a^2").is_err());
        assert!(RootDatum::parse("torus: a\npositive: a + x").is_err());
        assert!(RootDatum::parse("torus: a\npositive: a\nweyl_order: 0").is_err());
    }
}
