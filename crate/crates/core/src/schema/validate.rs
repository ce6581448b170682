//! A small draft-04 validator covering the keywords the miner emits. Unknown
//! keywords are ignored, as draft-04 prescribes.

use serde_json::Value;

use crate::cnl::types::json_equal;

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "null" => v.is_null(),
        "boolean" => v.is_boolean(),
        "string" => v.is_string(),
        "object" => v.is_object(),
        "array" => v.is_array(),
        "number" => v.is_number(),
        "integer" => match v {
            Value::Number(n) => {
                n.is_i64() || n.is_u64() || n.as_f64().is_some_and(|f| f.fract() == 0.0)
            }
            _ => false,
        },
        _ => true,
    }
}

/// True when `instance` satisfies `schema`.
pub fn is_valid(instance: &Value, schema: &Value) -> bool {
    let Value::Object(s) = schema else {
        return true;
    };

    match s.get("type") {
        Some(Value::String(t)) if !type_matches(t, instance) => return false,
        Some(Value::Array(ts))
            if !ts
                .iter()
                .any(|t| t.as_str().is_some_and(|t| type_matches(t, instance))) =>
        {
            return false
        }
        _ => {}
    }
    if let Some(Value::Array(e)) = s.get("enum") {
        if !e.iter().any(|x| json_equal(x, instance)) {
            return false;
        }
    }
    if let Some(Value::Array(members)) = s.get("anyOf") {
        if !members.iter().any(|m| is_valid(instance, m)) {
            return false;
        }
    }
    if let Some(Value::Array(members)) = s.get("oneOf") {
        if members.iter().filter(|m| is_valid(instance, m)).count() != 1 {
            return false;
        }
    }
    if let Some(Value::Array(members)) = s.get("allOf") {
        if !members.iter().all(|m| is_valid(instance, m)) {
            return false;
        }
    }
    if let Some(n) = s.get("not") {
        if is_valid(instance, n) {
            return false;
        }
    }
    if let Some(x) = instance.as_f64() {
        let excl = |k: &str| s.get(k).and_then(Value::as_bool).unwrap_or(false);
        if let Some(min) = s.get("minimum").and_then(Value::as_f64) {
            if x < min || (excl("exclusiveMinimum") && x == min) {
                return false;
            }
        }
        if let Some(max) = s.get("maximum").and_then(Value::as_f64) {
            if x > max || (excl("exclusiveMaximum") && x == max) {
                return false;
            }
        }
    }
    if let Value::Object(obj) = instance {
        if let Some(Value::Array(req)) = s.get("required") {
            if !req
                .iter()
                .all(|r| r.as_str().is_some_and(|r| obj.contains_key(r)))
            {
                return false;
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        for (k, v) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(ps) => {
                    if !is_valid(v, ps) {
                        return false;
                    }
                }
                None => match s.get("additionalProperties") {
                    Some(Value::Bool(false)) => return false,
                    Some(extra @ Value::Object(_)) if !is_valid(v, extra) => return false,
                    _ => {}
                },
            }
        }
    }
    if let Value::Array(items) = instance {
        match s.get("items") {
            Some(Value::Array(tuple)) => {
                if !items.iter().zip(tuple).all(|(v, t)| is_valid(v, t)) {
                    return false;
                }
            }
            Some(one @ Value::Object(_)) if !items.iter().all(|v| is_valid(v, one)) => {
                return false;
            }
            _ => {}
        }
    }
    true
}
