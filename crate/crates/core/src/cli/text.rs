use std::fmt::Write;

use serde_json::Value;

use super::report::Report;

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Human-readable rendering of the same data as the JSON form.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hyperkirwan {} :: {}", report.version, report.command.name());
    if let Some(i) = &report.instance {
        let _ = write!(out, "n = {}, xi = ({})", i.n, i.xi.join(", "));
        match i.shorts {
            Some(s) => {
                let _ = writeln!(out, ", {s} short subsets");
            }
            None => out.push('\n'),
        }
    }
    if let Some(f) = &report.fixture {
        let _ = writeln!(out, "fixture: {f}");
    }
    for s in &report.stages {
        let mark = if s.passed { "pass" } else { "FAIL" };
        let _ = write!(out, "  [{mark}] {:<16} {:>9.1} ms", s.name, s.elapsed_ms);
        if let Value::Object(m) = &s.data {
            let fields: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", inline(v))).collect();
            let _ = write!(out, "  {}", fields.join(" "));
        }
        out.push('\n');
    }
    if let Value::Object(m) = &report.result {
        for (k, v) in m {
            match v {
                Value::Array(items) if items.len() > 8 || items.iter().any(Value::is_object) => {
                    let _ = writeln!(out, "{k}: {} entries", items.len());
                }
                Value::Object(_) if k == "presentation" => {
                    let _ = writeln!(out, "{k}: (see JSON output)");
                }
                _ => {
                    let _ = writeln!(out, "{k}: {}", inline(v));
                }
            }
        }
    }
    match &report.failure {
        None if report.passed => out.push_str("all checks passed\n"),
        None => out.push_str("some checks failed\n"),
        Some(f) => {
            let _ = write!(out, "error ({}): {}", serde_json::to_value(f.kind).unwrap().as_str().unwrap_or(""), f.message);
            if let Some(w) = &f.witness {
                let items: Vec<String> = w.iter().map(|k| k.to_string()).collect();
                let _ = write!(out, " [witness {{{}}}]", items.join(","));
            }
            out.push('\n');
        }
    }
    out
}
