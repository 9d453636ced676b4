//! Invariant reports and the table view of JSON values.

use serde_json::{json, Map, Value};

use super::CliError;
use crate::curve::{type3_integer, CurveError, ReducedCurve};
use crate::logdist::ExtRational;
use crate::semigroup::BranchSemigroup;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn branch_report(s: &BranchSemigroup) -> Value {
    let g = s.genus();
    let d_k: Vec<ExtRational> = (1..=g).map(|k| s.higher_contact(k).expect("k <= g")).collect();
    json!({
        "semigroup": s,
        "multiplicity": s.multiplicity(),
        "zariski_pairs": s.zariski_pairs(),
        "conductor": s.conductor(),
        "milnor": s.milnor(),
        "contact_exponent": s.contact_exponent(),
        "higher_contact": d_k,
    })
}

/// Every invariant of a curve in one JSON object.
pub fn invariants(c: &ReducedCurve) -> Result<Value, CliError> {
    let g = c.max_genus().max(1);
    let d_k = (1..=g)
        .map(|k| c.higher_contact_exponent(k))
        .collect::<Result<Vec<_>, CurveError>>()?;
    let m = c.multiplicity();
    let polar: Vec<ExtRational> = d_k.iter().map(|d| d.scale(m)).collect();
    let mut out = Map::new();
    out.insert("branches".into(), json!(c.branch_count()));
    out.insert("multiplicity".into(), json!(m));
    out.insert("tangents".into(), json!(c.tangent_count()));
    out.insert("tangent_classes".into(), json!(c.tangent_classes()));
    out.insert("branch_data".into(), Value::Array(c.branches().iter().map(branch_report).collect()));
    out.insert("conductor".into(), json!(c.conductor_degree()));
    out.insert("milnor".into(), json!(c.milnor()));
    out.insert("contact_exponent".into(), to_value(&c.contact_exponent()));
    out.insert("higher_contact".into(), to_value(&d_k));
    if c.is_smooth_branch() {
        out.insert("polar_invariants".into(), Value::Null);
        out.insert("minimal_polar_invariant".into(), Value::Null);
        out.insert("milnor_bound".into(), Value::Null);
    } else {
        out.insert("polar_invariants".into(), to_value(&polar));
        out.insert("minimal_polar_invariant".into(), to_value(&c.minimal_polar_invariant()?));
        out.insert("milnor_bound".into(), to_value(&c.milnor_bound_report()?));
    }
    let eggers = c.eggers_classify()?;
    out.insert("eggers".into(), to_value(&eggers));
    if let Some(k) = type3_integer(c) {
        out.insert("type3_integer".into(), json!(k));
    }
    Ok(Value::Object(out))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            let parts = parts?;
            let flat = items.iter().all(|x| !x.is_array() && !x.is_object());
            flat.then(|| format!("[{}]", parts.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    if let Some(s) = scalar(v) {
        rows.push((prefix.to_string(), s));
        return;
    }
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, rows);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// Two aligned columns, one row per leaf of the JSON value.
pub fn render_table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_flattens_nested_values() {
        let v = json!({"a": 1, "b": {"c": "3/2", "d": [1, 2]}, "e": [{"f": true}]});
        assert_eq!(render_table(&v), "a       1\nb.c     3/2\nb.d     [1, 2]\ne[0].f  true");
    }

    #[test]
    fn semigroup_report() {
        let c = ReducedCurve::branch(BranchSemigroup::new(vec![4, 6, 13]).unwrap());
        let v = invariants(&c).unwrap();
        assert_eq!(v["conductor"], json!(16));
        assert_eq!(v["milnor"], json!(16));
        assert_eq!(v["contact_exponent"], json!("3/2"));
        assert_eq!(v["higher_contact"], json!(["3/2", "13/8"]));
        assert_eq!(v["polar_invariants"], json!(["6", "13/2"]));
    }
}
