use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Ordered variable names with their cohomological degrees.
///
/// Degrees are positive even integers; internally every variable carries the
/// algebraic weight `degree / 2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VariableTable {
    names: Vec<String>,
    degrees: Vec<u32>,
    weights: Vec<u32>,
    index: HashMap<String, usize>,
}

impl std::hash::Hash for VariableTable {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
        self.degrees.hash(state);
    }
}

impl VariableTable {
    pub fn new<S: AsRef<str>>(vars: &[(S, u32)]) -> Result<Self> {
        for (name, deg) in vars {
            if *deg == 0 || deg % 2 != 0 {
                return Err(Error::InvalidTable(format!(
                    "variable `{}` has degree {deg}; degrees must be positive and even",
                    name.as_ref()
                )));
            }
        }
        Self::build(vars)
    }

    /// All variables in cohomological degree 2.
    pub fn uniform<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let vars: Vec<(&str, u32)> = names.iter().map(|n| (n.as_ref(), 2)).collect();
        Self::new(&vars)
    }

    fn build<S: AsRef<str>>(vars: &[(S, u32)]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, (name, _)) in vars.iter().enumerate() {
            let name = name.as_ref();
            if name.is_empty()
                || !name.chars().next().unwrap().is_ascii_alphabetic()
                || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::InvalidTable(format!("bad variable name `{name}`")));
            }
            if index.insert(name.to_string(), i).is_some() {
                return Err(Error::InvalidTable(format!("duplicate variable `{name}`")));
            }
        }
        Ok(VariableTable {
            names: vars.iter().map(|(n, _)| n.as_ref().to_string()).collect(),
            degrees: vars.iter().map(|(_, d)| *d).collect(),
            weights: vars.iter().map(|(_, d)| d / 2).collect(),
            index,
        })
    }

    /// Prepends an elimination tag of degree zero. Only used internally by the
    /// tag-variable intersection.
    pub(crate) fn with_tag(&self, tag: &str) -> Result<Self> {
        let mut vars: Vec<(String, u32)> = vec![(tag.to_string(), 0)];
        vars.extend(self.names.iter().cloned().zip(self.degrees.iter().copied()));
        Self::build(&vars)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub(crate) fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// Exponent vector indexed by a [`VariableTable`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub(crate) fn set_exponent(&mut self, i: usize, e: u16) {
        self.0[i] = e;
    }

    /// Algebraic weight: the sum of exponent times `degree / 2`.
    pub fn weight(&self, weights: &[u32]) -> u32 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    /// Cohomological degree with respect to `table`.
    pub fn degree(&self, table: &VariableTable) -> u32 {
        2 * self.weight(table.weights())
    }

    pub fn total_exponent(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| b - a)
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn display<'a>(&'a self, table: &'a VariableTable) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, table }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    table: &'a VariableTable,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.m.support() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.table.name(i))?;
            if self.m.exponent(i) > 1 {
                write!(f, "^{}", self.m.exponent(i))?;
            }
        }
        Ok(())
    }
}

/// Admissible monomial orders.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "block")]
pub enum MonomialOrder {
    /// Weighted degree first, ties broken by reverse lexicographic comparison.
    GrevLex,
    Lex,
    /// The first `k` variables form an elimination block: any monomial touching
    /// the block beats every monomial that does not.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a.exponents(), b.exponents(), weights),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Block(k) => {
                let (ah, at) = a.exponents().split_at(k);
                let (bh, bt) = b.exponents().split_at(k);
                let da: u32 = ah.iter().map(|&e| e as u32).sum();
                let db: u32 = bh.iter().map(|&e| e as u32).sum();
                da.cmp(&db)
                    .then_with(|| revlex(ah, bh))
                    .then_with(|| grevlex(at, bt, &weights[k..]))
            }
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block(k) => format!("block:{k}"),
        }
    }

    pub fn from_descriptor(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::GrevLex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => s
                .strip_prefix("block:")
                .and_then(|k| k.parse().ok())
                .map(MonomialOrder::Block)
                .ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("unknown order `{s}`"),
                }),
        }
    }
}

fn grevlex(a: &[u16], b: &[u16], weights: &[u32]) -> Ordering {
    let wa: u32 = a.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
    let wb: u32 = b.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
    wa.cmp(&wb).then_with(|| revlex(a, b))
}

fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// A variable table together with the active monomial order. Shared by every
/// polynomial of the ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyRing {
    pub vars: VariableTable,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: VariableTable, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { vars, order })
    }

    pub fn grevlex(vars: VariableTable) -> Arc<Self> {
        Self::new(vars, MonomialOrder::GrevLex)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.vars.weights())
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            vars: self.vars.clone(),
            order,
        })
    }

    /// All monomials of algebraic weight `w`, in descending order.
    pub fn monomials_of_weight(&self, w: u32) -> Vec<Monomial> {
        let weights = self.vars.weights();
        let n = weights.len();
        let mut out = Vec::new();
        let mut cur = Monomial::one(n);
        fn rec(i: usize, left: u32, weights: &[u32], cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if i == weights.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            if weights[i] == 0 {
                // zero-weight variables would give infinitely many monomials
                rec(i + 1, left, weights, cur, out);
                return;
            }
            let mut e = 0u32;
            while e * weights[i] <= left {
                cur.set_exponent(i, e as u16);
                rec(i + 1, left - e * weights[i], weights, cur, out);
                e += 1;
            }
            cur.set_exponent(i, 0);
        }
        if n > 0 {
            rec(0, w, weights, &mut cur, &mut out);
        } else if w == 0 {
            out.push(cur);
        }
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> VariableTable {
        VariableTable::new(&[("c1", 2), ("c2", 2), ("a2", 4), ("x", 2)]).unwrap()
    }

    #[test]
    fn rejects_odd_or_duplicate() {
        assert!(VariableTable::new(&[("x", 3)]).is_err());
        assert!(VariableTable::new(&[("x", 2), ("x", 2)]).is_err());
        assert!(VariableTable::new(&[("2x", 2)]).is_err());
    }

    #[test]
    fn grevlex_prefers_squares_of_early_variables() {
        let t = table();
        let w = t.weights();
        let c1sq = Monomial::from_exponents(&[2, 0, 0, 0]);
        let a2 = Monomial::from_exponents(&[0, 0, 1, 0]);
        let c1x = Monomial::from_exponents(&[1, 0, 0, 1]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&c1sq, &a2, w), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&a2, &c1x, w), Ordering::Greater);
        assert_eq!(c1sq.degree(&t), 4);
        assert_eq!(a2.degree(&t), 4);
    }

    #[test]
    fn block_order_eliminates() {
        let t = table();
        let w = t.weights();
        let ord = MonomialOrder::Block(1);
        let c1 = Monomial::from_exponents(&[1, 0, 0, 0]);
        let big = Monomial::from_exponents(&[0, 5, 3, 2]);
        assert_eq!(ord.cmp(&c1, &big, w), Ordering::Greater);
    }

    #[test]
    fn monomials_by_weight() {
        let ring = PolyRing::grevlex(table());
        assert_eq!(ring.monomials_of_weight(0).len(), 1);
        // c1, c2, x
        assert_eq!(ring.monomials_of_weight(1).len(), 3);
        // six quadratics in c1,c2,x plus a2
        assert_eq!(ring.monomials_of_weight(2).len(), 7);
    }

    #[test]
    fn order_descriptor_round_trip() {
        for o in [
            MonomialOrder::GrevLex,
            MonomialOrder::Lex,
            MonomialOrder::Block(3),
        ] {
            assert_eq!(MonomialOrder::from_descriptor(&o.descriptor()).unwrap(), o);
        }
    }
}
