use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abelianization::{certify_annihilator, second_iso_bound, second_iso_dimensions};
use crate::error::{Error, ErrorKind, Result};
use crate::exactalg::Polynomial;
use crate::ideal::{Budget, Ideal, QuotientRing};

use super::certificate::{CertificateMethod, CertificateRecord};
use super::instance::HyperpolygonInstance;
use super::konno::konno_ring;
use super::shorts::{EdgeLengths, Subset};

/// Machine-readable reason attached to a failed stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub kind: ErrorKind,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl From<&Error> for Failure {
    fn from(e: &Error) -> Self {
        let witness = match e {
            Error::NonGeneric { witness } => Some(witness.clone()),
            _ => None,
        };
        Failure {
            kind: e.kind(),
            message: e.to_string(),
            witness,
        }
    }
}

/// One named step of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub data: Value,
    pub elapsed_ms: f64,
}

impl StageResult {
    /// Runs `f`, timing it. `Ok((true, data))` passes; `Ok((false, data))` is a
    /// failed check; `Err` is recorded with its kind.
    pub fn run(name: &str, f: impl FnOnce() -> Result<(bool, Value)>) -> StageResult {
        let start = Instant::now();
        let outcome = f();
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok((passed, data)) => StageResult {
                name: name.into(),
                passed,
                failure: (!passed).then(|| Failure {
                    kind: ErrorKind::CheckFailed,
                    message: format!("stage `{name}` check failed"),
                    witness: None,
                }),
                data,
                elapsed_ms,
            },
            Err(e) => StageResult {
                name: name.into(),
                passed: false,
                failure: Some((&e).into()),
                data: Value::Null,
                elapsed_ms,
            },
        }
    }
}

/// The checks [`run_stages`] knows, in pipeline order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Shorts,
    Presentations,
    Annihilator,
    PropHp,
    Membership,
    Certificates,
    Konno,
    BasisCount,
    LowDegree,
    Formality,
    LocalizedRank,
    AbelianBridge,
    SecondIso,
}

impl Stage {
    pub const ALL: [Stage; 13] = [
        Stage::Shorts,
        Stage::Presentations,
        Stage::Annihilator,
        Stage::PropHp,
        Stage::Membership,
        Stage::Certificates,
        Stage::Konno,
        Stage::BasisCount,
        Stage::LowDegree,
        Stage::Formality,
        Stage::LocalizedRank,
        Stage::AbelianBridge,
        Stage::SecondIso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Shorts => "shorts",
            Stage::Presentations => "presentations",
            Stage::Annihilator => "annihilator",
            Stage::PropHp => "prop-hp",
            Stage::Membership => "membership",
            Stage::Certificates => "certificates",
            Stage::Konno => "konno",
            Stage::BasisCount => "basis-count",
            Stage::LowDegree => "low-degree",
            Stage::Formality => "formality",
            Stage::LocalizedRank => "localized-rank",
            Stage::AbelianBridge => "abelian-bridge",
            Stage::SecondIso => "second-iso",
        }
    }
}

/// Everything computed for one length vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperpolygonReport {
    pub n: usize,
    pub xi: Vec<String>,
    pub shorts: Vec<Subset>,
    /// Ordinary Betti numbers by algebraic degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<u64>>,
    /// Graded dimensions of the equivariant ring up to `series_bound`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivariant_series: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<CertificateRecord>>,
    pub stages: Vec<StageResult>,
}

impl HyperpolygonReport {
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.passed)
    }

    pub fn stage(&self, name: &str) -> Option<&StageResult> {
        self.stages.iter().find(|s| s.name == name)
    }

    /// The first failure, in stage order.
    pub fn first_failure(&self) -> Option<&Failure> {
        self.stages.iter().find_map(|s| s.failure.as_ref())
    }
}

fn top_degree(q: &QuotientRing) -> Result<u32> {
    Ok(q.full_hilbert_series()?.max_degree())
}

impl HyperpolygonInstance {
    /// Cohomological degree up to which graded comparisons run: four past the
    /// top degree of the fibres over `Q[x]` of both `Q/J` and `Q/(J:e)`.
    pub fn series_bound(&self) -> Result<u32> {
        let ann = self.mod_x(self.annihilator()?)?;
        let j = self.mod_x(self.ideal_j()?)?;
        Ok(top_degree(&ann)?.max(top_degree(&j)?) + 4)
    }

    /// `Q/⟨x⟩`: the invariant ring with only the relations and `x`.
    pub fn relations_mod_x(&self) -> Result<QuotientRing> {
        let mut gens = self.relations_q();
        gens.push(self.x_q());
        Ok(QuotientRing::new(Ideal::new(self.ring_q(), gens)?))
    }
}

/// Runs the whole pipeline for `xi`.
pub fn full_report(xi: &EdgeLengths, budget: Budget) -> Result<HyperpolygonReport> {
    run_stages(xi, budget, &Stage::ALL)
}

/// Runs the selected stages for `xi`, in pipeline order. Non-generic lengths
/// are an error; any other problem is recorded in the failing stage.
pub fn run_stages(
    xi: &EdgeLengths,
    budget: Budget,
    selected: &[Stage],
) -> Result<HyperpolygonReport> {
    let inst = HyperpolygonInstance::with_budget(xi.clone(), budget)?;
    let n = inst.n();
    let nonempty: Vec<Subset> = inst.table().nonempty().collect();
    let mut stages = Vec::new();
    let mut certificates = None;
    let mut betti = None;
    let mut series = None;
    let mut bound = None;
    let want = |s: Stage| selected.contains(&s);

    if want(Stage::Shorts) {
        stages.push(StageResult::run(Stage::Shorts.name(), || {
            Ok((
                inst.table().shorts().len() == 1 << (n - 1),
                json!({ "count": inst.table().shorts().len(), "nonempty": nonempty.len() }),
            ))
        }));
    }

    if want(Stage::Presentations) {
        stages.push(StageResult::run(Stage::Presentations.name(), || {
        let mut swaps = true;
        for &s in inst.table().shorts() {
            let (a, b) = inst.gens_ab(s)?;
            swaps &= inst.weyl(&a)? == b;
            inst.gens_c(s)?;
        }
        let i = inst.ideal_i()?.generators().len();
        let j = inst.ideal_j()?.generators().len();
        let jb = inst.ideal_j()?.groebner()?.len();
        Ok((swaps, json!({ "i_generators": i, "j_generators": j, "j_basis": jb, "weyl_swaps_generators": swaps })))
    }));
    }

    if want(Stage::Annihilator) {
        stages.push(StageResult::run(Stage::Annihilator.name(), || {
            let ann = inst.annihilator()?;
            let ok = certify_annihilator(inst.ideal_j()?, &inst.euler_e(), ann)?;
            Ok((ok, json!({ "basis_size": ann.groebner()?.len() })))
        }));
    }

    if want(Stage::PropHp) {
        stages.push(StageResult::run(Stage::PropHp.name(), || {
        let q = inst.prop_hp()?;
        Ok((true, json!({ "d_generators": nonempty.len(), "basis_size": q.ideal().groebner()?.len() })))
    }));
    }

    if want(Stage::Membership) {
        stages.push(StageResult::run(Stage::Membership.name(), || {
            let j = inst.ideal_j()?;
            j.groebner()?;
            let e = inst.euler_e();
            let missing: Vec<Subset> = nonempty
                .par_iter()
                .map(|&s| Ok((s, j.contains(&(&e * &inst.gens_d(s)?))?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|(_, inside)| !inside)
                .map(|(s, _)| s)
                .collect();
            Ok((
                missing.is_empty(),
                json!({ "checked": nonempty.len(), "missing": missing }),
            ))
        }));
    }

    if want(Stage::Certificates) {
        stages.push(StageResult::run(Stage::Certificates.name(), || {
        let certs = nonempty.par_iter().map(|&s| inst.certify_membership(s)).collect::<Result<Vec<_>>>()?;
        let by_recursion = certs.iter().filter(|c| c.method == CertificateMethod::Recursion).count();
        certificates = Some(certs.iter().map(|c| c.to_record()).collect());
        Ok((
            certs.len() == nonempty.len(),
            json!({ "count": certs.len(), "recursion": by_recursion, "groebner_trace": certs.len() - by_recursion }),
        ))
    }));
    }

    if want(Stage::Konno) {
        stages.push(StageResult::run(Stage::Konno.name(), || {
            let fibre = inst
                .mod_x(inst.annihilator()?)?
                .full_hilbert_series()?
                .trimmed();
            let expected = konno_ring(n)?.full_hilbert_series()?.trimmed();
            betti = Some(fibre.clone());
            Ok((
                fibre == expected,
                json!({ "betti": fibre, "konno": expected }),
            ))
        }));
    }

    if want(Stage::BasisCount) {
        stages.push(StageResult::run(Stage::BasisCount.name(), || {
        let q = inst.relations_mod_x()?;
        let deg = 2 * (n as u32 - 2);
        let dim = q.graded_basis(deg)?.len();
        let ds = nonempty.iter().map(|&s| inst.gens_d(s)).collect::<Result<Vec<Polynomial>>>()?;
        let rank = q.rank_of(&ds, deg)?;
        Ok((
            dim == nonempty.len() && rank == nonempty.len(),
            json!({ "degree": deg, "dimension": dim, "nonempty_shorts": nonempty.len(), "d_rank": rank }),
        ))
    }));
    }

    if want(Stage::LowDegree) {
        stages.push(StageResult::run(Stage::LowDegree.name(), || {
            let below = 2 * (n as u32 - 2);
            let a = QuotientRing::new(inst.annihilator()?.clone()).hilbert_series(below)?;
            let j = inst.quotient_j()?.hilbert_series(below)?;
            let k = (below / 2) as usize;
            let (a, j) = (&a.coefficients()[..k], &j.coefficients()[..k]);
            Ok((
                a == j,
                json!({ "below_degree": below, "annihilator": a, "j": j }),
            ))
        }));
    }

    if want(Stage::Formality) {
        stages.push(StageResult::run(Stage::Formality.name(), || {
            let b = inst.series_bound()?;
            bound = Some(b);
            let ann = QuotientRing::new(inst.annihilator()?.clone());
            let full_a = ann.hilbert_series(b)?;
            let fibre_a = inst.mod_x(inst.annihilator()?)?.hilbert_series(b)?;
            let full_j = inst.quotient_j()?.hilbert_series(b)?;
            let fibre_j = inst.mod_x(inst.ideal_j()?)?.hilbert_series(b)?;
            let free_a = full_a.is_free_extension_of(&fibre_a, 2);
            let free_j = full_j.is_free_extension_of(&fibre_j, 2);
            series = Some(full_a.coefficients().to_vec());
            Ok((
                free_a && free_j,
                json!({ "bound": b, "annihilator_free": free_a, "j_free": free_j }),
            ))
        }));
    }

    if want(Stage::LocalizedRank) {
        stages.push(StageResult::run(Stage::LocalizedRank.name(), || {
            let rank = QuotientRing::new(inst.annihilator()?.clone()).localized_rank(super::X)?;
            let total = konno_ring(n)?.total_dimension()?;
            Ok((rank == total, json!({ "rank": rank, "konno_total": total })))
        }));
    }

    if want(Stage::AbelianBridge) {
        stages.push(StageResult::run(Stage::AbelianBridge.name(), || {
            let i = inst.ideal_i()?;
            let ep = inst.euler_eprime();
            let mut ok = true;
            for f in inst.annihilator()?.groebner()? {
                ok &= i.contains(&(&inst.include(f)? * &ep))?;
            }
            Ok((
                ok,
                json!({ "lifted_generators": inst.annihilator()?.groebner()?.len() }),
            ))
        }));
    }

    if want(Stage::SecondIso) {
        stages.push(StageResult::run(Stage::SecondIso.name(), || {
            let k = inst.kirwan_presentation()?;
            let cmp = second_iso_dimensions(&k, second_iso_bound(&k)?)?;
            Ok((
                cmp.agrees(),
                serde_json::to_value(&cmp).expect("comparison serializes"),
            ))
        }));
    }

    Ok(HyperpolygonReport {
        n,
        xi: xi.values().iter().map(|r| r.to_string()).collect(),
        shorts: inst.table().shorts().to_vec(),
        betti,
        equivariant_series: series,
        series_bound: bound,
        certificates,
        stages,
    })
}
