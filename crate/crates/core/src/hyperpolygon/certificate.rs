use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Polynomial, Rational};
use crate::ideal::{lift_modulo, Ideal};

use super::instance::HyperpolygonInstance;
use super::shorts::Subset;

/// How a certificate was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMethod {
    /// Peeling the largest element of `S` down to a singleton.
    Recursion,
    /// Cofactors read off a traced Groebner completion.
    GroebnerTrace,
}

/// An expression `e·D_S = Σ_T coefficient_T · C_T` modulo the ring relations,
/// with every `T ⊆ S`.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipCertificate {
    pub subset: Subset,
    pub target: Polynomial,
    pub combination: Vec<(Subset, Polynomial)>,
    pub method: CertificateMethod,
}

/// Text form of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub subset: Subset,
    pub method: CertificateMethod,
    pub combination: Vec<(Subset, String)>,
}

impl MembershipCertificate {
    /// Expands the combination and compares it with `e·D_S` modulo the relations.
    pub fn verify(&self, inst: &HyperpolygonInstance) -> Result<bool> {
        if self.target != &inst.euler_e() * &inst.gens_d(self.subset)? {
            return Ok(false);
        }
        let mut parts = Vec::with_capacity(self.combination.len());
        for (t, q) in &self.combination {
            if !t.is_subset_of(&self.subset) || !inst.table().is_short(*t) {
                return Ok(false);
            }
            parts.push(q * &inst.gens_c(*t)?);
        }
        let diff = &inst.sum_q(parts) - &self.target;
        relations_ideal(inst)?.contains(&diff)
    }

    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            subset: self.subset,
            method: self.method,
            combination: self
                .combination
                .iter()
                .map(|(t, q)| (*t, q.to_string()))
                .collect(),
        }
    }

    /// Parses a record and re-verifies it; a certificate that does not expand
    /// correctly is rejected.
    pub fn from_record(inst: &HyperpolygonInstance, rec: &CertificateRecord) -> Result<Self> {
        let combination = rec
            .combination
            .iter()
            .map(|(t, q)| Ok((*t, Polynomial::parse(inst.ring_q(), q)?)))
            .collect::<Result<Vec<_>>>()?;
        let cert = MembershipCertificate {
            subset: rec.subset,
            target: &inst.euler_e() * &inst.gens_d(rec.subset)?,
            combination,
            method: rec.method,
        };
        if !cert.verify(inst)? {
            return Err(Error::CheckFailed(format!(
                "certificate for {} does not expand to e·D_S",
                rec.subset
            )));
        }
        Ok(cert)
    }
}

fn relations_ideal(inst: &HyperpolygonInstance) -> Result<Ideal> {
    Ok(Ideal::new(inst.ring_q(), inst.relations_q())?.with_budget(inst.budget()))
}

fn add_term(acc: &mut BTreeMap<Subset, Polynomial>, t: Subset, q: Polynomial) {
    match acc.remove(&t) {
        Some(old) => {
            let s = &old + &q;
            if !s.is_zero() {
                acc.insert(t, s);
            }
        }
        None if !q.is_zero() => {
            acc.insert(t, q);
        }
        None => {}
    }
}

/// Coefficients over the edges in `edges` (with `s` inside them).
///
/// For `s = {k}`: `e·D = 2^(m-2) (x + c_k) ((2x - c_k) C_∅ - c_k C_{k})` where
/// `m = |edges|`. Otherwise with `k = max(s)`, `(c_k - x) C'_T = C_T - C_{T∪{k}}`
/// lifts the certificate for `s \ {k}` over `edges \ {k}`.
fn recurse(
    inst: &HyperpolygonInstance,
    edges: &[usize],
    s: Subset,
) -> Result<BTreeMap<Subset, Polynomial>> {
    let k = s
        .largest()
        .ok_or_else(|| Error::InvalidInput("empty subset in certificate recursion".into()))?;
    if s.len() == 1 {
        if edges.len() < 2 {
            return Err(Error::CheckFailed(format!(
                "certificate recursion ran out of edges at {s}"
            )));
        }
        let x = inst.x_q();
        let ck = inst.c_q(k);
        let scale = Rational::from_int(2).pow(edges.len() as i32 - 2);
        let lead = (&x + &ck).scale(&scale);
        let two_x = x.scale(&Rational::from_int(2));
        let mut out = BTreeMap::new();
        add_term(&mut out, Subset::EMPTY, &lead * &(&two_x - &ck));
        add_term(&mut out, s, -&(&lead * &ck));
        return Ok(out);
    }
    let rest: Vec<usize> = edges.iter().copied().filter(|&i| i != k).collect();
    let inner = recurse(inst, &rest, s.remove(k))?;
    let mut out = BTreeMap::new();
    for (t, q) in inner {
        add_term(&mut out, t.insert(k), -&q);
        add_term(&mut out, t, q);
    }
    Ok(out)
}

impl HyperpolygonInstance {
    /// Certificate built by the size recursion on `S`, verified by expansion.
    pub fn certify_by_recursion(&self, s: Subset) -> Result<MembershipCertificate> {
        let target = &self.euler_e() * &self.gens_d(s)?;
        let edges: Vec<usize> = (1..=self.n()).collect();
        let combination = recurse(self, &edges, s)?.into_iter().collect();
        let cert = MembershipCertificate {
            subset: s,
            target,
            combination,
            method: CertificateMethod::Recursion,
        };
        if !cert.verify(self)? {
            return Err(Error::CheckFailed(format!(
                "recursive certificate for {s} does not expand to e·D_S"
            )));
        }
        Ok(cert)
    }

    /// Certificate read off a traced Groebner completion of `⟨C_T | T ⊆ S⟩`.
    pub fn certify_by_groebner(&self, s: Subset) -> Result<MembershipCertificate> {
        let target = &self.euler_e() * &self.gens_d(s)?;
        let subsets = s.subsets_of();
        let gens = subsets
            .iter()
            .map(|&t| self.gens_c(t))
            .collect::<Result<Vec<_>>>()?;
        let modulus = relations_ideal(self)?;
        let cof = lift_modulo(&gens, &modulus, &target, self.budget())?.ok_or_else(|| {
            Error::CheckFailed(format!("e·D_{s} is not in the ideal of C_T, T ⊆ S"))
        })?;
        let combination = subsets
            .into_iter()
            .zip(cof)
            .filter(|(_, q)| !q.is_zero())
            .collect();
        let cert = MembershipCertificate {
            subset: s,
            target,
            combination,
            method: CertificateMethod::GroebnerTrace,
        };
        if !cert.verify(self)? {
            return Err(Error::CheckFailed(format!(
                "traced certificate for {s} does not expand to e·D_S"
            )));
        }
        Ok(cert)
    }

    /// Tries the recursion and falls back to the traced completion.
    pub fn certify_membership(&self, s: Subset) -> Result<MembershipCertificate> {
        match self.certify_by_recursion(s) {
            Ok(c) => Ok(c),
            Err(Error::CheckFailed(_)) => self.certify_by_groebner(s),
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperpolygon::EdgeLengths;

    fn hand() -> HyperpolygonInstance {
        HyperpolygonInstance::new(EdgeLengths::from_ints(&[1, 1, 1, 2]).unwrap()).unwrap()
    }

    #[test]
    fn singleton_uses_empty_and_itself() {
        let inst = hand();
        let s = Subset::from_elements(&[4]);
        let cert = inst.certify_membership(s).unwrap();
        assert_eq!(cert.method, CertificateMethod::Recursion);
        let ts: Vec<Subset> = cert.combination.iter().map(|(t, _)| *t).collect();
        assert_eq!(ts, vec![Subset::EMPTY, s]);
    }

    #[test]
    fn both_paths_verify_for_a_pair() {
        let inst = hand();
        let s = Subset::from_elements(&[1, 2]);
        assert!(inst.certify_by_recursion(s).unwrap().verify(&inst).unwrap());
        let g = inst.certify_by_groebner(s).unwrap();
        assert_eq!(g.method, CertificateMethod::GroebnerTrace);
        assert!(g.verify(&inst).unwrap());
    }

    #[test]
    fn records_round_trip_and_tampering_is_caught() {
        let inst = hand();
        let s = Subset::from_elements(&[2, 3]);
        let cert = inst.certify_membership(s).unwrap();
        let rec = cert.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: CertificateRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(
            MembershipCertificate::from_record(&inst, &back).unwrap(),
            cert
        );
        let mut bad = back.clone();
        bad.combination[0].1 = format!("2*({})", bad.combination[0].1);
        assert!(MembershipCertificate::from_record(&inst, &bad).is_err());
    }

    #[test]
    fn non_short_subset_is_rejected() {
        let inst = hand();
        let err = inst
            .certify_membership(Subset::from_elements(&[1, 4]))
            .unwrap_err();
        assert_eq!(err, Error::NotShort(vec![1, 4]));
    }
}
