//! JSON certificates. Every document carries `"kind"` and `"version"`; keys
//! are emitted in sorted order so output is byte-stable.

use std::collections::BTreeMap;

use nonrep_core::containment::ContainmentWitness;
use nonrep_core::graph::DegreeProfile;
use nonrep_core::nonrep::{Colouring, RepetitionWitness, VerifyMode};
use nonrep_core::strategies::{BoundedDegreeColouring, PaletteArithmetic, Route};
use nonrep_core::transform::TransformReport;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{Error, VERSION};

/// Adds `kind` and `version` to an object.
pub fn envelope(kind: &str, body: Value) -> Value {
    let mut doc = match body {
        Value::Object(map) => map,
        other => {
            let mut map = serde_json::Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    doc.insert("kind".into(), kind.into());
    doc.insert("version".into(), VERSION.into());
    Value::Object(doc)
}

/// `{"palette_size", "colours", "mode", "t_max", "witness"}`
pub fn colouring_certificate(col: &Colouring, mode: VerifyMode, witness: Option<&RepetitionWitness>) -> Value {
    json!({
        "palette_size": col.palette_size(),
        "colours": col.colours(),
        "mode": match mode {
            VerifyMode::Exact => "exact",
            VerifyMode::Bounded { .. } => "bounded",
        },
        "t_max": mode.t_max(),
        "witness": witness.map(RepetitionWitness::path),
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawColouring {
    Bare(Vec<usize>),
    Object {
        colours: Vec<usize>,
        palette_size: Option<usize>,
    },
}

/// Reads `{"colours": [...], "palette_size": k}` (palette optional) or a
/// bare array of colours.
pub fn colouring_from_value(v: Value) -> Result<Colouring, Error> {
    match serde_json::from_value(v).map_err(|e| Error::ColouringFile(e.to_string()))? {
        RawColouring::Bare(colours) | RawColouring::Object { colours, palette_size: None } => {
            Ok(Colouring::from_colours(colours))
        }
        RawColouring::Object {
            colours,
            palette_size: Some(k),
        } => Ok(Colouring::new(colours, k)?),
    }
}

pub fn parse_colouring(text: &str) -> Result<Colouring, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::ColouringFile(e.to_string()))?;
    colouring_from_value(v)
}

pub fn route_name(route: Route) -> Value {
    match route {
        Route::Trivial => json!({"route": "trivial"}),
        Route::Resampled { rounds } => json!({"route": "resampled", "rounds": rounds}),
        Route::Exhaustive => json!({"route": "exhaustive"}),
        Route::Heuristic => json!({"route": "heuristic"}),
    }
}

pub fn profile_json(p: &DegreeProfile) -> Value {
    json!({"c": p.c, "d": p.d, "max_degree": p.max_degree})
}

/// `{"input_adhesion", "output_adhesion", "hypothesis_met", "t",
/// "torso_profiles": {node: {"c", "d", "max_degree"}}, ...}`
pub fn transform_report_json(report: &TransformReport, names: &[String]) -> Value {
    let profiles: BTreeMap<&str, Value> = names
        .iter()
        .map(String::as_str)
        .zip(report.torso_profiles.iter().map(profile_json))
        .collect();
    let edges: Vec<Value> = report
        .edge_checks
        .iter()
        .map(|e| {
            json!({
                "x": names[e.x], "y": names[e.y],
                "intersection": e.intersection, "cross_edges": e.cross_edges,
            })
        })
        .collect();
    json!({
        "t": report.t,
        "root": names[report.root],
        "input_adhesion": report.input_adhesion,
        "output_adhesion": report.output_adhesion,
        "hypothesis_met": report.hypothesis_met,
        "torso_profiles": profiles,
        "edge_checks": edges,
        "holds": report.holds(),
        "violations": report.violations.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>(),
    })
}

pub fn bounded_degree_json(b: &BoundedDegreeColouring, mode: VerifyMode) -> Value {
    let mut v = colouring_certificate(&b.colouring, mode, None);
    v["private"] = json!(b.private);
    v["palette_bound"] = json!(b.palette_bound);
    v["route"] = route_name(b.route);
    v
}

pub fn arithmetic_json(a: &PaletteArithmetic, claimed: Option<usize>) -> Value {
    json!({
        "t": a.t,
        "d": a.d,
        "d_formula": "t^4 + 2t^2",
        "palette_factor": a.palette_factor,
        "torso_palette": a.torso_palette,
        "torso_palette_formula": "t + palette_factor * d^2",
        "adhesion": a.adhesion,
        "adhesion_formula": "t^2",
        "total": a.total,
        "total_formula": "torso_palette * 4^adhesion",
        "claimed_bound": claimed,
    })
}

/// `{"mode", "branch_map": {h: g}, "paths": {"u-v": [...]}}`
pub fn witness_json(w: &ContainmentWitness) -> Value {
    let branch: BTreeMap<String, usize> = w.branch_map.iter().enumerate().map(|(h, &g)| (h.to_string(), g)).collect();
    let paths: BTreeMap<String, &[usize]> =
        w.paths.iter().map(|((u, v), p)| (format!("{u}-{v}"), p.as_slice())).collect();
    json!({"mode": w.mode.name(), "branch_map": branch, "paths": paths})
}
