use serde_json::Value;

use crate::commands::Outcome;

const SHOWN_DIGITS: usize = 12;

/// Rounds a decimal string to `SHOWN_DIGITS` significant digits.
fn short_center(s: &str) -> String {
    match s.parse::<f64>() {
        Ok(0.0) => "0".into(),
        Ok(v) => {
            let mag = v.abs().log10().floor() as i32;
            if (-4..=6).contains(&mag) {
                let decimals = (SHOWN_DIGITS as i32 - 1 - mag).max(0) as usize;
                format!("{v:.decimals$}")
            } else {
                format!("{v:.prec$e}", prec = SHOWN_DIGITS - 1)
            }
        }
        Err(_) => s.into(),
    }
}

fn is_enclosure(map: &serde_json::Map<String, Value>) -> bool {
    map.len() == 3 && map.contains_key("center") && map.contains_key("radius") && map.contains_key("digits")
}

fn walk(out: &mut String, path: &str, v: &Value) {
    match v {
        Value::Object(map) if is_enclosure(map) => {
            let c = map["center"].as_str().unwrap_or_default();
            let r = map["radius"].as_str().unwrap_or_default();
            out.push_str(&format!("{path}: {} ± {r}\n", short_center(c)));
        }
        Value::Object(map) => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(out, &p, v);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                walk(out, &format!("{path}[{i}]"), v);
            }
        }
        Value::Null => {}
        Value::String(s) => out.push_str(&format!("{path}: {s}\n")),
        other => out.push_str(&format!("{path}: {other}\n")),
    }
}

pub fn render(command: &str, outcome: &Outcome) -> String {
    let mut out = format!("command: {command}\n");
    walk(&mut out, "", &outcome.report);
    if outcome.failures.is_empty() {
        out.push_str("passed: true\n");
    } else {
        out.push_str(&format!("passed: false\nfailures: {}\n", outcome.failures.join(", ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(short_center("-1.83787706640934548356065947281"), "-1.83787706641");
        assert_eq!(short_center("0.000414755944471057021787718828977"), "0.000414755944471");
        assert_eq!(short_center("0"), "0");
    }
}
