use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational};
use crate::ideal::{IdealSpec, QuotientRing, VariableSpec};
use crate::linalg::{self, Matrix};

use super::component::{FixedComponent, PARAM};
use super::maps::ModelMap;
use super::model::{CircleCompactModel, EquivariantClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub variables: Vec<VariableSpec>,
    pub relations: Vec<String>,
    pub euler: String,
    pub fundamental: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub components: Vec<ComponentSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    pub assignment: Vec<usize>,
    pub pullback: Vec<BTreeMap<String, String>>,
}

/// A global presentation of a map between two equivariant cohomology rings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalSpec {
    pub map: String,
    pub source: IdealSpec,
    pub target: IdealSpec,
    pub pullback: BTreeMap<String, String>,
}

/// Declarative description of models, maps between them and named classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub name: String,
    pub models: BTreeMap<String, ModelSpec>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
    #[serde(default)]
    pub classes: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    pub global: Option<GlobalSpec>,
}

/// The loaded form of a [`FixtureSpec`].
#[derive(Debug)]
pub struct Fixture {
    pub name: String,
    pub models: BTreeMap<String, Arc<CircleCompactModel>>,
    pub maps: BTreeMap<String, ModelMap>,
    pub classes: BTreeMap<String, BTreeMap<String, EquivariantClass>>,
    pub global: Option<GlobalMap>,
}

const BUILTIN: [(&str, &str); 3] = [
    (
        "projective-line",
        include_str!("../../fixtures/projective_line.json"),
    ),
    ("product", include_str!("../../fixtures/product.json")),
    ("segre", include_str!("../../fixtures/segre.json")),
];

fn build_component(spec: &ComponentSpec) -> Result<FixedComponent> {
    let vars: Vec<(&str, u32)> = spec
        .variables
        .iter()
        .map(|v| (v.name.as_str(), v.degree))
        .collect();
    let rels: Vec<&str> = spec.relations.iter().map(String::as_str).collect();
    FixedComponent::new(&vars, &rels, &spec.euler, &spec.fundamental)
}

impl Fixture {
    pub fn builtin_names() -> Vec<&'static str> {
        BUILTIN.iter().map(|(n, _)| *n).collect()
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let (_, text) = BUILTIN.iter().find(|(n, _)| *n == name).ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown fixture `{name}`; known: {}",
                Self::builtin_names().join(", ")
            ))
        })?;
        Self::from_json(text)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// A built-in fixture by name, or else a JSON file path.
    pub fn resolve(name_or_path: &str) -> Result<Self> {
        if Self::builtin_names().contains(&name_or_path) {
            Self::builtin(name_or_path)
        } else if Path::new(name_or_path).exists() {
            Self::load(Path::new(name_or_path))
        } else {
            Self::builtin(name_or_path)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: FixtureSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })?;
        Self::from_spec(&spec)
    }

    pub fn from_spec(spec: &FixtureSpec) -> Result<Self> {
        let mut models = BTreeMap::new();
        for (name, m) in &spec.models {
            let comps = m
                .components
                .iter()
                .map(build_component)
                .collect::<Result<Vec<_>>>()?;
            models.insert(name.clone(), CircleCompactModel::new(comps)?);
        }
        let model = |n: &str| {
            models
                .get(n)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("unknown model `{n}`")))
        };
        let mut maps = BTreeMap::new();
        for m in &spec.maps {
            let (src, tgt) = (model(&m.source)?, model(&m.target)?);
            if m.pullback.len() != src.components().len() {
                return Err(Error::InvalidInput(format!(
                    "map `{}` needs one pullback per source component",
                    m.name
                )));
            }
            let bindings = m
                .pullback
                .iter()
                .zip(src.components())
                .map(|(b, c)| {
                    b.iter()
                        .map(|(k, v)| Ok((k.clone(), Polynomial::parse(c.ring(), v)?)))
                        .collect::<Result<HashMap<_, _>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            maps.insert(
                m.name.clone(),
                ModelMap::new(&src, &tgt, m.assignment.clone(), bindings)?,
            );
        }
        let mut classes = BTreeMap::new();
        for (mname, named) in &spec.classes {
            let md = model(mname)?;
            let mut out = BTreeMap::new();
            for (cname, restr) in named {
                let refs: Vec<&str> = restr.iter().map(String::as_str).collect();
                out.insert(cname.clone(), md.parse_class(&refs)?);
            }
            classes.insert(mname.clone(), out);
        }
        let global = spec.global.as_ref().map(GlobalMap::from_spec).transpose()?;
        Ok(Fixture {
            name: spec.name.clone(),
            models,
            maps,
            classes,
            global,
        })
    }

    pub fn model(&self, name: &str) -> Result<&Arc<CircleCompactModel>> {
        self.models
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("fixture has no model `{name}`")))
    }

    pub fn map(&self, name: &str) -> Result<&ModelMap> {
        self.maps
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("fixture has no map `{name}`")))
    }

    pub fn class(&self, model: &str, name: &str) -> Result<&EquivariantClass> {
        self.classes
            .get(model)
            .and_then(|m| m.get(name))
            .ok_or_else(|| {
                Error::InvalidInput(format!("fixture has no class `{name}` on `{model}`"))
            })
    }
}

/// A ring map `target → source` between global presentations.
#[derive(Clone, Debug)]
pub struct GlobalMap {
    pub map: String,
    pub source: QuotientRing,
    pub target: QuotientRing,
    pub bindings: HashMap<String, Polynomial>,
}

impl GlobalMap {
    pub fn from_spec(spec: &GlobalSpec) -> Result<Self> {
        let source = QuotientRing::new(spec.source.to_ideal()?);
        let target = QuotientRing::new(spec.target.to_ideal()?);
        let mut bindings = HashMap::new();
        for (k, v) in &spec.pullback {
            bindings.insert(k.clone(), Polynomial::parse(source.ring(), v)?);
        }
        let g = GlobalMap {
            map: spec.map.clone(),
            source,
            target,
            bindings,
        };
        for r in g.target.ideal().generators() {
            if !g.source.normal_form(&g.apply(r)?)?.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "relation `{r}` does not pull back to zero"
                )));
            }
        }
        Ok(g)
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        p.substitute(&self.bindings, self.source.ring())
    }

    /// `(rank of the image, dimension of the source)` in cohomological degree `deg`.
    pub fn graded_image(&self, deg: u32) -> Result<(usize, usize)> {
        let ring = self.target.ring();
        let images = self
            .target
            .graded_basis(deg)?
            .into_iter()
            .map(|m| self.apply(&Polynomial::monomial(ring, m, Rational::one())))
            .collect::<Result<Vec<_>>>()?;
        Ok((
            self.source.rank_of(&images, deg)?,
            self.source.graded_basis(deg)?.len(),
        ))
    }

    /// Ranks over `Q(x)` of target, source, and the map, by specializing `x = 1`.
    pub fn localized_ranks(&self) -> Result<(u64, u64, usize)> {
        let t = self.target.localized_rank(PARAM)?;
        let s = self.source.localized_rank(PARAM)?;
        let one = |q: &QuotientRing| -> Result<QuotientRing> {
            let r = q.ring();
            q.quotient_by([&Polynomial::var(r, PARAM)? - &Polynomial::one(r)])
        };
        let (ts, ss) = (one(&self.target)?, one(&self.source)?);
        let s_basis = ss.standard_basis()?;
        let rows: Matrix<Rational> = ts
            .standard_basis()?
            .into_iter()
            .map(|m| {
                let img = ss.normal_form(&self.apply(&Polynomial::monomial(
                    ts.ring(),
                    m,
                    Rational::one(),
                ))?)?;
                let mut row = vec![Rational::zero(); s_basis.len()];
                for (mm, c) in img.terms() {
                    let k = s_basis
                        .iter()
                        .position(|b| b == mm)
                        .expect("normal form uses standard monomials");
                    row[k] = c.clone();
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        Ok((t, s, linalg::rank(&rows)))
    }
}

/// The two rank statements for a map of models: an isomorphism over `K`, and
/// (possibly) failure of surjectivity before localizing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct RationalizationReport {
    pub source_rank: usize,
    pub target_rank: usize,
    pub fixed_point_map_rank: usize,
    pub global_ranks: (u64, u64, usize),
    /// `(degree, image rank, source dimension)` per cohomological degree.
    pub graded: Vec<(u32, usize, usize)>,
    pub rationalized_iso: bool,
    pub integral_surjective: bool,
}

/// Compares a fixture map over `K` (through fixed points and the global
/// presentation) with the same map before localization, up to `max_degree`.
pub fn rationalization_report(fixture: &Fixture, max_degree: u32) -> Result<RationalizationReport> {
    let global = fixture.global.as_ref().ok_or_else(|| {
        Error::InvalidInput(format!(
            "fixture `{}` has no global presentation",
            fixture.name
        ))
    })?;
    let map = fixture.map(&global.map)?;
    let pulled: Vec<Vec<_>> = map
        .target()
        .standard_basis()
        .iter()
        .map(|b| map.pullback(b).flatten())
        .collect();
    let fixed_point_map_rank = linalg::rank(&pulled);
    let (source_rank, target_rank) = (map.source().rank(), map.target().rank());
    let global_ranks = global.localized_ranks()?;
    let mut graded = Vec::new();
    for deg in (0..=max_degree).step_by(2) {
        let (img, dim) = global.graded_image(deg)?;
        graded.push((deg, img, dim));
    }
    let rationalized_iso = source_rank == target_rank
        && fixed_point_map_rank == source_rank
        && global_ranks.0 == global_ranks.1
        && global_ranks.2 as u64 == global_ranks.0
        && global_ranks.0 as usize == source_rank;
    let integral_surjective = graded.iter().all(|&(_, i, d)| i == d);
    Ok(RationalizationReport {
        source_rank,
        target_rank,
        fixed_point_map_rank,
        global_ranks,
        graded,
        rationalized_iso,
        integral_surjective,
    })
}

#[cfg(test)]
mod tests {
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    use super::*;
    use crate::localization::{
        diagonal_basis, hyperplane_class, projective_space, standard_diagonal_decomposition,
    };

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        let p = |c: &[i64]| {
            crate::exactalg::UniPoly::new(c.iter().map(|&k| Rational::from_int(k)).collect())
        };
        RationalFunction::new(p(num), p(den)).unwrap()
    }

    use crate::exactalg::RationalFunction;

    #[test]
    fn builtins_load() {
        for name in Fixture::builtin_names() {
            let f = Fixture::builtin(name).unwrap();
            for m in f.models.values() {
                assert!(m.is_nondegenerate(&m.standard_basis()).unwrap(), "{name}");
            }
        }
        assert!(Fixture::builtin("nope").is_err());
    }

    #[test]
    fn line_integrals_and_gram() {
        let f = Fixture::builtin("projective-line").unwrap();
        let line = f.model("line").unwrap();
        let h = f.class("line", "hyperplane").unwrap();
        assert!(line.integrate(&line.one()).is_zero());
        assert!(line.integrate(h).is_one());
        let g = line.gram_matrix(&[line.one(), h.clone()]);
        assert_eq!(
            g,
            vec![
                vec![RationalFunction::zero(), RationalFunction::one()],
                vec![RationalFunction::one(), RationalFunction::x()]
            ]
        );
        assert_eq!(linalg::determinant(&g), rf(&[-1], &[1]));
    }

    #[test]
    fn point_pushforward_is_hyperplane() {
        let f = Fixture::builtin("projective-line").unwrap();
        let inc = f.map("inclusion").unwrap();
        let point = f.model("point").unwrap();
        assert_eq!(
            &inc.pushforward(&point.one()).unwrap(),
            f.class("line", "hyperplane").unwrap()
        );
    }

    #[test]
    fn degenerate_basis_is_detected() {
        let f = Fixture::builtin("projective-line").unwrap();
        let line = f.model("line").unwrap();
        let h = f.class("line", "hyperplane").unwrap();
        assert!(!line
            .is_nondegenerate(&[h.clone(), h.scale(&RationalFunction::x())])
            .unwrap());
    }

    #[test]
    fn orientation_flip_preserves_integrals() {
        let f = Fixture::builtin("segre").unwrap();
        let m = f.model("p3").unwrap();
        let flipped = CircleCompactModel::new(
            m.components()
                .iter()
                .map(|c| c.reversed().unwrap())
                .collect(),
        )
        .unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let a = m.sample(&mut rng);
            let b = flipped.from_coords(a.parts().to_vec()).unwrap();
            assert_eq!(m.integrate(&a), flipped.integrate(&b));
        }
    }

    #[test]
    fn projective_space_top_power() {
        for weights in [
            vec![0, 1],
            vec![0, 1, 2],
            vec![0, 0, 1, 1],
            vec![-1, 0, 3, 3, 5],
        ] {
            let m = projective_space(&weights).unwrap();
            let h = hyperplane_class(&m, &weights).unwrap();
            let mut p = m.one();
            for _ in 1..weights.len() {
                p = m.mul(&p, &h);
            }
            assert!(m.integrate(&p).is_one(), "{weights:?}");
            assert!(m.integrate(&m.mul(&p, &h)).is_polynomial());
        }
    }

    #[test]
    fn diagonal_decomposition() {
        let f = Fixture::builtin("projective-line").unwrap();
        let mut rng = StdRng::seed_from_u64(1);
        for name in ["point", "line"] {
            let m = f.model(name).unwrap();
            let d = standard_diagonal_decomposition(m).unwrap();
            assert!(diagonal_basis(m, &d, &mut rng).unwrap());
        }
        let line = f.model("line").unwrap();
        let mut d = standard_diagonal_decomposition(line).unwrap();
        d.pop();
        assert!(matches!(
            diagonal_basis(line, &d, &mut rng),
            Err(Error::DiagonalMismatch)
        ));
    }

    #[test]
    fn product_fixture_crosses() {
        let f = Fixture::builtin("product").unwrap();
        let sq = f.model("square").unwrap();
        let (a, b) = (
            f.class("square", "first").unwrap(),
            f.class("square", "second").unwrap(),
        );
        assert!(sq.integrate(&sq.mul(a, b)).is_one());
        assert!(sq.integrate(&sq.mul(a, a)).is_zero());
        let diag = f.map("diagonal").unwrap();
        let h = f.class("line", "hyperplane").unwrap();
        assert_eq!(&diag.pullback(a), h);
    }

    #[test]
    fn segre_is_only_rationally_surjective() {
        let r = rationalization_report(&Fixture::builtin("segre").unwrap(), 4).unwrap();
        assert_eq!(
            (r.source_rank, r.target_rank, r.fixed_point_map_rank),
            (4, 4, 4)
        );
        assert_eq!(r.global_ranks, (4, 4, 4));
        assert!(r.graded.contains(&(2, 2, 3)));
        assert!(r.rationalized_iso);
        assert!(!r.integral_surjective);
        assert!(rationalization_report(&Fixture::builtin("product").unwrap(), 4).is_err());
    }
}
