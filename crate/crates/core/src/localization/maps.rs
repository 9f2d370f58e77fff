use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{Monomial, PolyRing, Polynomial, Rational, RationalFunction, VariableTable};

use super::component::{Coords, FixedComponent, PARAM};
use super::model::{CircleCompactModel, EquivariantClass};

/// An equivariant map restricted to fixed loci: each source component lands
/// in a target component, and pulls back along a ring map given by images of
/// the target component's generators (the parameter maps to itself).
#[derive(Clone, Debug)]
pub struct ModelMap {
    source: Arc<CircleCompactModel>,
    target: Arc<CircleCompactModel>,
    assignment: Vec<usize>,
    bindings: Vec<HashMap<String, Polynomial>>,
    /// `matrices[s][k]`: pullback of target basis element `k` of component
    /// `assignment[s]`, in source component `s` coordinates.
    matrices: Vec<Vec<Coords>>,
}

impl ModelMap {
    pub fn new(
        source: &Arc<CircleCompactModel>,
        target: &Arc<CircleCompactModel>,
        assignment: Vec<usize>,
        bindings: Vec<HashMap<String, Polynomial>>,
    ) -> Result<Self> {
        let ns = source.components().len();
        if assignment.len() != ns || bindings.len() != ns {
            return Err(Error::InvalidInput(format!(
                "a map needs an assignment and bindings for each of {ns} components"
            )));
        }
        let mut matrices = Vec::with_capacity(ns);
        for (s, (&t, b)) in assignment.iter().zip(&bindings).enumerate() {
            let tc = target.components().get(t).ok_or_else(|| {
                Error::InvalidInput(format!("component {s} maps to missing component {t}"))
            })?;
            let sc = &source.components()[s];
            let mut b = b.clone();
            b.entry(PARAM.to_string())
                .or_insert_with(|| Polynomial::var(sc.ring(), PARAM).unwrap());
            for (name, image) in &b {
                let i = tc
                    .ring()
                    .vars
                    .index_of(name)
                    .ok_or_else(|| Error::UnboundVariable(name.clone()))?;
                if !image.is_homogeneous()
                    || (!image.is_zero() && image.degree() != Some(tc.ring().vars.degree(i)))
                {
                    return Err(Error::InvalidInput(format!(
                        "image of `{name}` is not homogeneous of the same degree"
                    )));
                }
            }
            // well defined: relations of the target algebra vanish in the source algebra
            for r in tc.relations() {
                let img = r.substitute(&b, sc.ring())?;
                if !sc.algebra().normal_form(&img)?.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "relation `{r}` does not pull back to zero on component {s}"
                    )));
                }
            }
            let rows = tc
                .basis()
                .iter()
                .map(|m| {
                    sc.coords(
                        &Polynomial::monomial(tc.ring(), m.clone(), Rational::one())
                            .substitute(&b, sc.ring())?,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            matrices.push(rows);
        }
        Ok(ModelMap {
            source: source.clone(),
            target: target.clone(),
            assignment,
            bindings,
            matrices,
        })
    }

    /// The identity of a model.
    pub fn identity(model: &Arc<CircleCompactModel>) -> Result<Self> {
        let n = model.components().len();
        Self::new(model, model, (0..n).collect(), vec![HashMap::new(); n])
    }

    pub fn source(&self) -> &Arc<CircleCompactModel> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CircleCompactModel> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `f^* a`.
    pub fn pullback(&self, a: &EquivariantClass) -> EquivariantClass {
        let parts = self
            .matrices
            .iter()
            .enumerate()
            .map(|(s, rows)| {
                let src = &a.parts()[self.assignment[s]];
                let mut out = self.source.components()[s].zero();
                for (coef, row) in src.iter().zip(rows) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (o, r) in out.iter_mut().zip(row) {
                        *o = &*o + &(coef * r);
                    }
                }
                out
            })
            .collect();
        self.source
            .from_coords(parts)
            .expect("pullback keeps the source shape")
    }

    /// `f_* g`: the unique class with `⟨f_* g, a⟩ = ⟨g, f^* a⟩` for every `a`.
    pub fn pushforward(&self, g: &EquivariantClass) -> Result<EquivariantClass> {
        let values: Vec<RationalFunction> = self
            .target
            .standard_basis()
            .iter()
            .map(|a| self.source.pairing(g, &self.pullback(a)))
            .collect();
        self.target.dual_solve(&values)
    }

    /// `∫_M a · f_* g = ∫_N f^* a · g`, checked exactly.
    pub fn verify_integration_adjunction(
        &self,
        a: &EquivariantClass,
        g: &EquivariantClass,
    ) -> Result<bool> {
        let lhs = self.target.pairing(a, &self.pushforward(g)?);
        let rhs = self.source.pairing(&self.pullback(a), g);
        Ok(lhs == rhs)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModelMap) -> Result<ModelMap> {
        if !Arc::ptr_eq(inner.target(), &self.source) {
            return Err(Error::InvalidInput("maps are not composable".into()));
        }
        let mut assignment = Vec::new();
        let mut bindings = Vec::new();
        for (s, &mid) in inner.assignment.iter().enumerate() {
            let t = self.assignment[mid];
            let sc = &inner.source.components()[s];
            let mut b = HashMap::new();
            for name in self.target.components()[t].ring().vars.names() {
                if name == PARAM {
                    continue;
                }
                let mid_img = match self.bindings[mid].get(name) {
                    Some(p) => p.clone(),
                    None => Polynomial::var(self.source.components()[mid].ring(), name)?,
                };
                b.insert(
                    name.clone(),
                    mid_img.substitute(&inner.bindings[s], sc.ring())?,
                );
            }
            assignment.push(t);
            bindings.push(b);
        }
        ModelMap::new(&inner.source, &self.target, assignment, bindings)
    }
}

fn renamed(comp: &FixedComponent, suffix: &str) -> Vec<(String, u32)> {
    let vars = &comp.ring().vars;
    (0..vars.len() - 1)
        .map(|i| (format!("{}{suffix}", vars.name(i)), vars.degree(i)))
        .collect()
}

fn rename_into(p: &Polynomial, suffix: &str, target: &Arc<PolyRing>) -> Result<Polynomial> {
    let vars = &p.ring().vars;
    let mut b = HashMap::new();
    for i in 0..vars.len() - 1 {
        b.insert(
            vars.name(i).to_string(),
            Polynomial::var(target, &format!("{}{suffix}", vars.name(i)))?,
        );
    }
    p.substitute(&b, target)
}

/// `M × N` with projections; component `(i, j)` sits at index `i · |N| + j`.
#[derive(Debug)]
pub struct ProductModel {
    pub model: Arc<CircleCompactModel>,
    pub first: ModelMap,
    pub second: ModelMap,
    left: Arc<CircleCompactModel>,
    right: Arc<CircleCompactModel>,
}

pub const LEFT: &str = "_l";
pub const RIGHT: &str = "_r";

impl ProductModel {
    pub fn new(left: &Arc<CircleCompactModel>, right: &Arc<CircleCompactModel>) -> Result<Self> {
        let mut comps = Vec::new();
        let mut assign = (Vec::new(), Vec::new());
        let mut binds = (Vec::new(), Vec::new());
        for (i, a) in left.components().iter().enumerate() {
            for (j, b) in right.components().iter().enumerate() {
                let mut vars = renamed(a, LEFT);
                vars.extend(renamed(b, RIGHT));
                vars.push((PARAM.into(), 2));
                let ring = PolyRing::grevlex(VariableTable::new(&vars)?);
                let mut rels = Vec::new();
                for r in a.relations() {
                    rels.push(rename_into(&r, LEFT, &ring)?);
                }
                for r in b.relations() {
                    rels.push(rename_into(&r, RIGHT, &ring)?);
                }
                let euler =
                    &rename_into(a.euler(), LEFT, &ring)? * &rename_into(b.euler(), RIGHT, &ring)?;
                let fundamental = &rename_into(a.fundamental(), LEFT, &ring)?
                    * &rename_into(b.fundamental(), RIGHT, &ring)?;
                let comp = FixedComponent::from_parts(&ring, rels, euler, fundamental)?;
                let bind =
                    |src: &FixedComponent, suffix: &str| -> Result<HashMap<String, Polynomial>> {
                        let v = &src.ring().vars;
                        (0..v.len() - 1)
                            .map(|k| {
                                Ok((
                                    v.name(k).to_string(),
                                    Polynomial::var(&ring, &format!("{}{suffix}", v.name(k)))?,
                                ))
                            })
                            .collect()
                    };
                binds.0.push(bind(a, LEFT)?);
                binds.1.push(bind(b, RIGHT)?);
                assign.0.push(i);
                assign.1.push(j);
                comps.push(comp);
            }
        }
        let model = CircleCompactModel::new(comps)?;
        let first = ModelMap::new(&model, left, assign.0, binds.0)?;
        let second = ModelMap::new(&model, right, assign.1, binds.1)?;
        Ok(ProductModel {
            model,
            first,
            second,
            left: left.clone(),
            right: right.clone(),
        })
    }

    /// `π_1^* a · π_2^* b`.
    pub fn cross(&self, a: &EquivariantClass, b: &EquivariantClass) -> EquivariantClass {
        self.model
            .mul(&self.first.pullback(a), &self.second.pullback(b))
    }

    /// Splits a product-basis monomial of component `(i, j)` into factor indices.
    fn split(&self, comp: usize, m: &Monomial) -> (usize, usize, usize, usize) {
        let nr = self.right.components().len();
        let (i, j) = (comp / nr, comp % nr);
        let (a, b) = (&self.left.components()[i], &self.right.components()[j]);
        let na = a.ring().nvars() - 1;
        let nb = b.ring().nvars() - 1;
        let e = m.exponents();
        let mut ea = e[..na].to_vec();
        ea.push(0);
        let mut eb = e[na..na + nb].to_vec();
        eb.push(0);
        let ka = a
            .basis()
            .iter()
            .position(|x| x.exponents() == ea.as_slice())
            .expect("left factor monomial");
        let kb = b
            .basis()
            .iter()
            .position(|x| x.exponents() == eb.as_slice())
            .expect("right factor monomial");
        (i, ka, j, kb)
    }
}

/// The diagonal `M → M × M`.
pub fn diagonal(model: &Arc<CircleCompactModel>, product: &ProductModel) -> Result<ModelMap> {
    let n = model.components().len();
    let mut assignment = Vec::new();
    let mut bindings = Vec::new();
    for (i, c) in model.components().iter().enumerate() {
        assignment.push(i * n + i);
        let v = &c.ring().vars;
        let mut b = HashMap::new();
        for k in 0..v.len() - 1 {
            let own = Polynomial::var(c.ring(), v.name(k))?;
            b.insert(format!("{}{LEFT}", v.name(k)), own.clone());
            b.insert(format!("{}{RIGHT}", v.name(k)), own);
        }
        bindings.push(b);
    }
    ModelMap::new(model, &product.model, assignment, bindings)
}

/// Decomposition of `Δ_*(1)` in the tensor basis, grouped by the right factor:
/// pairs `(a_k, e_k)` with `e_k` running over the standard basis.
pub fn standard_diagonal_decomposition(
    model: &Arc<CircleCompactModel>,
) -> Result<Vec<(EquivariantClass, EquivariantClass)>> {
    let product = ProductModel::new(model, model)?;
    let delta = diagonal(model, &product)?;
    let d = delta.pushforward(&model.one())?;
    let basis = model.standard_basis();
    let offsets: Vec<usize> = model
        .components()
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.dim();
            Some(o)
        })
        .collect();
    let mut lefts: Vec<Vec<RationalFunction>> =
        vec![vec![RationalFunction::zero(); model.rank()]; model.rank()];
    for (comp, part) in d.parts().iter().enumerate() {
        let pc = &product.model.components()[comp];
        for (k, c) in part.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, ka, j, kb) = product.split(comp, &pc.basis()[k]);
            let right = offsets[j] + kb;
            lefts[right][offsets[i] + ka] = &lefts[right][offsets[i] + ka] + c;
        }
    }
    lefts
        .into_iter()
        .zip(basis)
        .map(|(l, b)| Ok((model.from_flat(&l)?, b)))
        .collect()
}

/// Checks that `decomposition` reproduces `Δ_*(1)` (else [`Error::DiagonalMismatch`]),
/// replays `a = Σ ⟨a_k, a⟩ b_k` on a sample class, and returns whether the `b_k` span.
pub fn diagonal_basis(
    model: &Arc<CircleCompactModel>,
    decomposition: &[(EquivariantClass, EquivariantClass)],
    rng: &mut impl rand::Rng,
) -> Result<bool> {
    let product = ProductModel::new(model, model)?;
    let delta = diagonal(model, &product)?;
    let d = delta.pushforward(&model.one())?;
    let mut sum = product.model.zero();
    for (a, b) in decomposition {
        sum = &sum + &product.cross(a, b);
    }
    if sum != d {
        return Err(Error::DiagonalMismatch);
    }
    let a = model.sample(rng);
    let mut replay = model.zero();
    for (ak, bk) in decomposition {
        replay = &replay + &bk.scale(&model.pairing(ak, &a));
    }
    if replay != a {
        return Err(Error::CheckFailed(
            "a class is not recovered from the diagonal decomposition".into(),
        ));
    }
    let bs: Vec<EquivariantClass> = decomposition.iter().map(|(_, b)| b.clone()).collect();
    Ok(model.span_rank(&bs) == model.rank())
}

/// Weighted projective space `P(C_{w_0} ⊕ ... ⊕ C_{w_n})`: one component per
/// distinct weight `w` of multiplicity `m`, with algebra `Q[eta]/eta^m`,
/// Euler class `∏_{w' ≠ w} (eta + (w - w') x)^{m'}` and fundamental class `eta^(m-1)`.
/// Components are ordered by increasing weight.
pub fn projective_space(weights: &[i64]) -> Result<Arc<CircleCompactModel>> {
    let mut distinct: Vec<(i64, u32)> = Vec::new();
    for &w in weights {
        match distinct.iter_mut().find(|(v, _)| *v == w) {
            Some(d) => d.1 += 1,
            None => distinct.push((w, 1)),
        }
    }
    distinct.sort();
    let mut comps = Vec::new();
    for &(w, m) in &distinct {
        let mut factors = Vec::new();
        for &(v, mv) in &distinct {
            if v != w {
                factors.push(format!("(eta + {}*x)^{mv}", w - v));
            }
        }
        let euler = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        };
        comps.push(FixedComponent::new(
            &[("eta", 2)],
            &[&format!("eta^{m}")],
            &euler,
            &format!("eta^{}", m - 1),
        )?);
    }
    CircleCompactModel::new(comps)
}

/// The hyperplane class `h|_F = w x + eta` of [`projective_space`].
pub fn hyperplane_class(model: &CircleCompactModel, weights: &[i64]) -> Result<EquivariantClass> {
    let mut distinct: Vec<i64> = weights.to_vec();
    distinct.sort();
    distinct.dedup();
    let restr: Vec<String> = distinct.iter().map(|w| format!("{w}*x + eta")).collect();
    let refs: Vec<&str> = restr.iter().map(String::as_str).collect();
    model.parse_class(&refs)
}
