use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hyperpolygon::{
    run_stages, shorts, EdgeLengths, HyperpolygonInstance, HyperpolygonReport, Stage, StageResult,
};
use crate::ideal::IdealSpec;
use crate::localization::{rationalization_report, Fixture};

use super::report::{InstanceEcho, Report};
use super::{Command, RunConfig};

fn stages_for(command: Command) -> Vec<Stage> {
    use Stage::*;
    match command {
        Command::Shorts => vec![Shorts],
        Command::Present => vec![Shorts, Presentations],
        Command::Verify => vec![
            Shorts,
            Presentations,
            Annihilator,
            PropHp,
            Membership,
            LowDegree,
            Formality,
            LocalizedRank,
            AbelianBridge,
            SecondIso,
        ],
        Command::Certify => vec![Shorts, Certificates],
        Command::Betti => vec![Shorts, Konno, BasisCount, LocalizedRank],
        Command::Report => Stage::ALL.to_vec(),
        Command::LocalizeDemo => Vec::new(),
    }
}

/// Executes one configured run. Errors never escape: they become the
/// report's `failure`, whose kind fixes the exit status.
pub fn run(config: &RunConfig) -> Report {
    let start = Instant::now();
    let mut report = Report::new(config.command, config.budget);
    if let Err(e) = config.validate() {
        report.failure = Some((&e).into());
    } else if config.command == Command::LocalizeDemo {
        localize_demo(config, &mut report);
    } else {
        hyperpolygon(config, config.xi.as_ref().expect("validated"), &mut report);
    }
    report.settle();
    report.total_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

fn hyperpolygon(config: &RunConfig, xi: &EdgeLengths, report: &mut Report) {
    let table = shorts(xi);
    report.instance = Some(InstanceEcho {
        n: xi.n(),
        xi: xi.values().iter().map(|r| r.to_string()).collect(),
        shorts: table.as_ref().ok().map(|t| t.shorts().len()),
    });
    let hp = match run_stages(xi, config.budget, &stages_for(config.command)) {
        Ok(hp) => hp,
        Err(e) => {
            report.stages.push(StageResult::run(Stage::Shorts.name(), || Err(e)));
            return;
        }
    };
    let mut result = hp_result(&hp);
    if config.command == Command::Present {
        let present = StageResult::run("presentation-data", || Ok((true, presentation(xi, config)?)));
        if let Value::Object(m) = &mut result {
            m.insert("presentation".into(), present.data.clone());
        }
        report.stages.extend(hp.stages);
        report.stages.push(StageResult { data: Value::Null, ..present });
    } else {
        report.stages.extend(hp.stages);
    }
    report.result = result;
}

fn hp_result(hp: &HyperpolygonReport) -> Value {
    let mut m = Map::new();
    m.insert("shorts".into(), json!(hp.shorts));
    if let Some(b) = &hp.betti {
        m.insert("betti".into(), json!(b));
    }
    if let Some(s) = &hp.equivariant_series {
        m.insert("equivariant_series".into(), json!(s));
    }
    if let Some(b) = hp.series_bound {
        m.insert("series_bound".into(), json!(b));
    }
    if let Some(c) = &hp.certificates {
        m.insert("certificates".into(), json!(c));
    }
    Value::Object(m)
}

fn presentation(xi: &EdgeLengths, config: &RunConfig) -> Result<Value> {
    let inst = HyperpolygonInstance::with_budget(xi.clone(), config.budget)?;
    let d: Vec<Value> = inst
        .table()
        .nonempty()
        .map(|s| Ok(json!({ "subset": s, "d": inst.gens_d(s)?.to_string() })))
        .collect::<Result<_>>()?;
    Ok(json!({
        "abelian": IdealSpec::from_ideal(inst.ideal_i()?),
        "invariant": IdealSpec::from_ideal(inst.ideal_j()?),
        "euler": inst.euler_e().to_string(),
        "euler_prime": inst.euler_eprime().to_string(),
        "d": d,
    }))
}

fn localize_demo(config: &RunConfig, report: &mut Report) {
    let name = config.fixture.clone().expect("validated");
    report.fixture = Some(name.clone());
    let fixture = match Fixture::resolve(&name) {
        Ok(f) => f,
        Err(e) => {
            report.stages.push(StageResult::run("fixture", || Err(e)));
            return;
        }
    };
    report.stages.push(StageResult::run("euler-inverse", || {
        let mut ok = true;
        let mut counts = Map::new();
        for (name, model) in &fixture.models {
            for (k, c) in model.components().iter().enumerate() {
                let e = c.coords(c.euler())?;
                ok &= c.mul(&e, model.inverse_euler(k)) == c.one();
            }
            counts.insert(name.clone(), json!(model.components().len()));
        }
        Ok((ok, json!({ "components": counts })))
    }));
    report.stages.push(StageResult::run("nondegenerate", || {
        let mut ok = true;
        let mut ranks = Map::new();
        for (name, model) in &fixture.models {
            ok &= model.is_nondegenerate(&model.standard_basis())?;
            ranks.insert(name.clone(), json!(model.rank()));
        }
        Ok((ok, json!({ "ranks": ranks })))
    }));
    report.stages.push(StageResult::run("adjunction", || {
        let mut ok = true;
        for map in fixture.maps.values() {
            for a in map.target().standard_basis() {
                for g in map.source().standard_basis() {
                    ok &= map.verify_integration_adjunction(&a, &g)?;
                }
            }
        }
        Ok((ok, json!({ "maps": fixture.maps.keys().collect::<Vec<_>>() })))
    }));
    let mut result = Map::new();
    if fixture.global.is_some() {
        let stage = StageResult::run("rationalization", || {
            let r = rationalization_report(&fixture, 4)?;
            let value = serde_json::to_value(&r).map_err(|e| Error::CheckFailed(e.to_string()))?;
            Ok((r.rationalized_iso, value))
        });
        if let Value::Object(m) = &stage.data {
            result.extend(m.clone());
        }
        report.stages.push(stage);
    }
    let mut ranks = Map::new();
    for (name, model) in &fixture.models {
        ranks.insert(name.clone(), json!(model.rank()));
    }
    result.insert("ranks".into(), Value::Object(ranks));
    report.result = Value::Object(result);
}
