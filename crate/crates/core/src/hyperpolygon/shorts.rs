use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// A subset of `{1, ..., n}` stored as a bitmask (bit `i - 1` for element `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u64) -> Self {
        Subset(mask)
    }

    /// From 1-based elements.
    pub fn from_elements(elems: &[usize]) -> Self {
        Subset(elems.iter().fold(0, |acc, &i| acc | (1 << (i - 1))))
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// 1-based elements in increasing order.
    pub fn elements(&self) -> Vec<usize> {
        (0..64)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    pub fn complement(&self, n: usize) -> Subset {
        Subset(!self.0 & ((1u64 << n) - 1))
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(&self, i: usize) -> Subset {
        Subset(self.0 | (1 << (i - 1)))
    }

    pub fn remove(&self, i: usize) -> Subset {
        Subset(self.0 & !(1 << (i - 1)))
    }

    pub fn smallest(&self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn largest(&self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// All subsets, ordered by size and then lexicographically by elements.
    pub fn subsets_of(&self) -> Vec<Subset> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = self.0;
        loop {
            out.push(Subset(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.0;
        }
        out.sort_by_key(|s| (s.len(), s.elements()));
        out
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(d)?;
        if elems.iter().any(|&e| e == 0 || e > 64) {
            return Err(serde::de::Error::custom(
                "subset elements must lie in 1..=64",
            ));
        }
        Ok(Subset::from_elements(&elems))
    }
}

/// Positive edge lengths `ξ_1, ..., ξ_n` with `n ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLengths(Vec<Rational>);

impl EdgeLengths {
    pub fn new(xi: Vec<Rational>) -> Result<Self> {
        if xi.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "need at least 3 edge lengths, got {}",
                xi.len()
            )));
        }
        if xi.len() > 20 {
            return Err(Error::InvalidInput(
                "at most 20 edge lengths are supported".into(),
            ));
        }
        if let Some(bad) = xi.iter().find(|r| r.is_negative() || r.is_zero()) {
            return Err(Error::InvalidInput(format!(
                "edge length {bad} is not positive"
            )));
        }
        Ok(EdgeLengths(xi))
    }

    pub fn from_ints(xi: &[i64]) -> Result<Self> {
        Self::new(xi.iter().map(|&v| Rational::from_int(v)).collect())
    }

    /// `(1, 2, 4, ..., 2^(n-1))`: all subset sums are distinct, so generic.
    pub fn powers_of_two(n: usize) -> Self {
        Self::new((0..n).map(|k| Rational::from_int(1 << k)).collect()).unwrap()
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    fn subset_sum(&self, s: Subset) -> Rational {
        s.elements().iter().map(|&i| self.0[i - 1].clone()).sum()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().cloned().sum()
    }

    /// `Σ_S ξ < Σ_{S^c} ξ`.
    pub fn is_short(&self, s: Subset) -> bool {
        let inside = self.subset_sum(s);
        let outside = self.subset_sum(s.complement(self.n()));
        inside < outside
    }
}

impl FromStr for EdgeLengths {
    type Err = Error;

    /// Comma-separated exact rationals such as `1,1,1,2` or `1/2,3,3`.
    fn from_str(s: &str) -> Result<Self> {
        let xi = s
            .split(',')
            .map(|t| t.trim().parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        EdgeLengths::new(xi)
    }
}

impl fmt::Display for EdgeLengths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The short subsets of a generic length vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortSubsetTable {
    n: usize,
    shorts: Vec<Subset>,
}

impl ShortSubsetTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Every short subset, the empty set first, then by size and elements.
    pub fn shorts(&self) -> &[Subset] {
        &self.shorts
    }

    pub fn nonempty(&self) -> impl Iterator<Item = Subset> + '_ {
        self.shorts.iter().copied().filter(|s| !s.is_empty())
    }

    pub fn is_short(&self, s: Subset) -> bool {
        self.shorts
            .binary_search_by_key(&(s.len(), s.elements()), |t| (t.len(), t.elements()))
            .is_ok()
    }

    /// Smallest element of a nonempty `S`.
    pub fn m_s(&self, s: Subset) -> Option<usize> {
        s.smallest()
    }

    /// Smallest element of the complement of `S`.
    pub fn n_s(&self, s: Subset) -> Option<usize> {
        s.complement(self.n).smallest()
    }
}

/// Enumerates short subsets, failing with a witness when `ξ` is not generic.
pub fn shorts(xi: &EdgeLengths) -> Result<ShortSubsetTable> {
    let n = xi.n();
    let full = Subset::from_mask((1u64 << n) - 1);
    let mut out = Vec::with_capacity(1 << (n - 1));
    for s in full.subsets_of() {
        let inside = xi.subset_sum(s);
        let outside = xi.subset_sum(s.complement(n));
        match inside.cmp(&outside) {
            std::cmp::Ordering::Less => out.push(s),
            std::cmp::Ordering::Equal => {
                // report the half containing 1 for a canonical witness
                let w = if s.contains(1) { s } else { s.complement(n) };
                return Err(Error::NonGeneric {
                    witness: w.elements(),
                });
            }
            std::cmp::Ordering::Greater => {}
        }
    }
    debug_assert_eq!(out.len(), 1 << (n - 1));
    Ok(ShortSubsetTable { n, shorts: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_triangle() {
        let t = shorts(&EdgeLengths::from_ints(&[1, 1, 1]).unwrap()).unwrap();
        let got: Vec<Vec<usize>> = t.shorts().iter().map(|s| s.elements()).collect();
        assert_eq!(got, vec![vec![], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn hand_fixture_has_eight_shorts() {
        let t = shorts(&EdgeLengths::from_ints(&[1, 1, 1, 2]).unwrap()).unwrap();
        let got: Vec<Vec<usize>> = t.shorts().iter().map(|s| s.elements()).collect();
        assert_eq!(
            got,
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![3],
                vec![4],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let s4 = Subset::from_elements(&[4]);
        assert_eq!((t.m_s(s4), t.n_s(s4)), (Some(4), Some(1)));
        let s12 = Subset::from_elements(&[1, 2]);
        assert_eq!((t.m_s(s12), t.n_s(s12)), (Some(1), Some(3)));
    }

    #[test]
    fn equal_split_is_rejected_with_witness() {
        let err = shorts(&EdgeLengths::from_ints(&[1, 1, 1, 1]).unwrap()).unwrap_err();
        assert_eq!(
            err,
            Error::NonGeneric {
                witness: vec![1, 2]
            }
        );
    }

    #[test]
    fn exactly_one_of_s_and_complement_is_short() {
        for n in 3..=12 {
            let xi = EdgeLengths::powers_of_two(n);
            let t = shorts(&xi).unwrap();
            assert_eq!(t.shorts().len(), 1 << (n - 1));
            for mask in 0..(1u64 << n) {
                let s = Subset::from_mask(mask);
                assert_ne!(t.is_short(s), t.is_short(s.complement(n)), "n={n} S={s}");
                assert_eq!(t.is_short(s), xi.is_short(s));
            }
        }
    }

    #[test]
    fn parses_rational_lengths() {
        let xi: EdgeLengths = "1/2, 3,3".parse().unwrap();
        assert_eq!(xi.to_string(), "1/2,3,3");
        assert!("1,2".parse::<EdgeLengths>().is_err());
        assert!("1,-2,3".parse::<EdgeLengths>().is_err());
        assert!("1,0.5,3".parse::<EdgeLengths>().is_err());
    }
}
