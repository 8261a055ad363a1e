//! JSON encodings. Rationals are strings (`"p/q"` or `"n"`) throughout.

use serde::Serialize;
use serde_json::{json, Value};
use tiltwall_core::{
    CandidateReport, ChernVector, E2Solutions, HeartInterval, Rational, TiltPoint,
    VerificationReport, VerticalRayResult, WallLocus, WallShape,
};

pub const REPORT_VERSION: u32 = 1;

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn opt_rational(r: Option<&Rational>) -> Value {
    r.map_or(Value::Null, rational)
}

pub fn class(v: &ChernVector) -> Value {
    Value::Array(v.components().iter().map(|c| rational(c)).collect())
}

pub fn point(p: &TiltPoint) -> Value {
    json!({ "s": rational(&p.s), "beta": rational(&p.beta) })
}

/// Coefficients plus the derived shape; keys absent for a shape are `null`.
pub fn wall(w: &WallLocus) -> Value {
    let (shape, center, radius_sq, beta) = match w.shape() {
        WallShape::Semicircle { center, radius_sq } => {
            ("semicircle", Some(center), Some(radius_sq), None)
        }
        WallShape::VerticalLine { beta } => ("vertical", None, None, Some(beta)),
        WallShape::Empty => ("empty", None, None, None),
    };
    json!({
        "x": rational(&w.x),
        "y": rational(&w.y),
        "z": rational(&w.z),
        "shape": shape,
        "center": opt_rational(center.as_ref()),
        "radius_sq": opt_rational(radius_sq.as_ref()),
        "beta": opt_rational(beta.as_ref()),
    })
}

pub fn interval(i: &HeartInterval) -> Value {
    json!({ "lo": i.lo().to_string(), "hi": i.hi().to_string() })
}

pub fn pairs(pairs: &[(Rational, Rational)]) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|(e0, e1)| json!({ "e0": rational(e0), "e1": rational(e1) }))
            .collect(),
    )
}

fn vertical(r: &VerticalRayResult) -> Value {
    json!({
        "beta0": rational(&r.beta0),
        "twisted_e1": rational(&r.twisted_e1),
        "step": rational(&r.step),
        "admissible": r.admissible.iter().map(rational).collect::<Vec<_>>(),
        "admissible_count": r.admissible_count.to_string(),
        "stable": r.stable,
        "degenerate": r.degenerate,
    })
}

fn candidate(c: &CandidateReport) -> Value {
    let e2 = match &c.e2_solutions {
        E2Solutions::Finite(list) => Value::Array(list.iter().map(rational).collect()),
        E2Solutions::All => Value::String("all".into()),
    };
    json!({
        "e0": rational(&c.e0),
        "e1": rational(&c.e1),
        "e2_solutions": e2,
        "constraints_log": c.constraints_log.iter().map(|r| json!({
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
        "induced_wall": c.induced_wall.as_ref().map_or(Value::Null, wall),
        "matches_target": c.matches_target,
    })
}

pub fn report(variety: &str, r: &VerificationReport) -> Value {
    json!({
        "report_version": REPORT_VERSION,
        "variety": variety,
        "class": class(&r.class),
        "q_wall": wall(&r.q_wall),
        "vertical_line_result": r.vertical_line_result.as_ref().map_or(Value::Null, vertical),
        "heart_interval": r.heart_interval.as_ref().map_or(Value::Null, interval),
        "e0_range": r.e0_range.as_ref().map_or(Value::Null, |(a, b)| json!([rational(a), rational(b)])),
        "enumeration_result": r.enumeration_result.iter().map(candidate).collect::<Vec<_>>(),
        "conclusion": r.conclusion.as_str(),
        "witness_point": r.witness_point.as_ref().map_or(Value::Null, point),
        "witness_q": opt_rational(r.witness_q.as_ref()),
        "notes": r.notes,
    })
}

/// Compact when `indent` is `None`, otherwise pretty with that many spaces.
pub fn to_string(value: &Value, indent: Option<usize>) -> String {
    match indent {
        None => serde_json::to_string(value).expect("Value always serializes"),
        Some(n) => {
            let pad = vec![b' '; n];
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
            let mut out = Vec::new();
            let mut ser = serde_json::Serializer::with_formatter(&mut out, fmt);
            value.serialize(&mut ser).expect("Value always serializes");
            String::from_utf8(out).expect("serde_json emits UTF-8")
        }
    }
}
