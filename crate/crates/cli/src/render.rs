//! Human-readable rendering of a JSON report: one `key = value` line per
//! scalar, nested sections indented.

use serde_json::Value;

fn group_string(v: &Value) -> Option<String> {
    let m = v.as_object()?;
    if m.len() != 2 {
        return None;
    }
    let r = m.get("free_rank")?.as_u64()?;
    let torsion = m.get("torsion")?.as_array()?;
    let mut parts: Vec<String> = torsion.iter().map(|d| format!("ℤ/{}", scalar(d))).collect();
    match r {
        0 => {}
        1 => parts.push("ℤ".into()),
        r => parts.push(format!("ℤ^{r}")),
    }
    Some(if parts.is_empty() {
        "0 (trivial)".into()
    } else {
        parts.join(" ⊕ ")
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.is_empty() => "none".into(),
        Value::Array(xs) => xs.iter().map(scalar).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => group_string(v).is_some(),
        // sentences get a line each
        Value::Array(xs) => xs
            .iter()
            .all(|x| !x.is_object() && !x.is_array() && !x.as_str().is_some_and(|s| s.contains(' '))),
        _ => true,
    }
}

fn flat(v: &Value) -> String {
    group_string(v).unwrap_or_else(|| scalar(v))
}

fn block(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k} = {}\n", flat(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    block(out, x, indent + 2);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", flat(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    block(out, x, indent + 2);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", flat(other))),
    }
}

pub fn human(v: &Value) -> String {
    let mut out = String::new();
    block(&mut out, v, 0);
    out
}
