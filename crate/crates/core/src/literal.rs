//! Decoding of Python literal tokens without evaluating them.

use std::fmt;

use serde_json::{Number, Value};

/// Decoded value of a literal token.
#[derive(Debug, Clone, PartialEq)]
pub enum LiteralValue {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
    None,
    /// Anything that is not a plain literal: calls, tuples, names, bytes, f-strings.
    Other,
}

/// Coarse classification of a [`Literal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiteralKind {
    Number,
    String,
    Boolean,
    None,
    Other,
}

/// A literal together with its verbatim source text.
#[derive(Debug, Clone, PartialEq)]
pub struct Literal {
    pub value: LiteralValue,
    pub raw: String,
}

impl Literal {
    pub fn new(value: LiteralValue) -> Self {
        let raw = render(&value);
        Literal { value, raw }
    }

    pub fn str(s: impl Into<String>) -> Self {
        Literal::new(LiteralValue::Str(s.into()))
    }

    pub fn other(raw: impl Into<String>) -> Self {
        Literal {
            value: LiteralValue::Other,
            raw: raw.into(),
        }
    }

    /// Decodes a Python expression if it is a literal; otherwise returns an
    /// `Other` literal carrying the source text.
    pub fn decode(raw: &str) -> Self {
        let trimmed = raw.trim();
        let value = decode_value(trimmed).unwrap_or(LiteralValue::Other);
        Literal {
            value,
            raw: trimmed.to_string(),
        }
    }

    pub fn kind(&self) -> LiteralKind {
        match self.value {
            LiteralValue::Int(_) | LiteralValue::Float(_) => LiteralKind::Number,
            LiteralValue::Str(_) => LiteralKind::String,
            LiteralValue::Bool(_) => LiteralKind::Boolean,
            LiteralValue::None => LiteralKind::None,
            LiteralValue::Other => LiteralKind::Other,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match &self.value {
            LiteralValue::Str(s) => Some(s),
            _ => None,
        }
    }

    /// Python source text for the decoded value.
    pub fn render(&self) -> String {
        match self.value {
            LiteralValue::Other => self.raw.clone(),
            ref v => render(v),
        }
    }

    /// True for NaN and infinities, which JSON cannot carry.
    pub fn is_non_representable(&self) -> bool {
        matches!(self.value, LiteralValue::Float(f) if !f.is_finite())
    }

    /// JSON form of the value. `None` for `Other`; non-finite floats map to
    /// `null`, callers are expected to report that substitution.
    pub fn to_json(&self) -> Option<Value> {
        Some(match &self.value {
            LiteralValue::Int(i) => Value::from(*i),
            LiteralValue::Float(f) => Number::from_f64(*f)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            LiteralValue::Str(s) => Value::String(s.clone()),
            LiteralValue::Bool(b) => Value::Bool(*b),
            LiteralValue::None => Value::Null,
            LiteralValue::Other => return None,
        })
    }

    pub fn from_json(v: &Value) -> Self {
        let value = match v {
            Value::Null => LiteralValue::None,
            Value::Bool(b) => LiteralValue::Bool(*b),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    LiteralValue::Int(i)
                } else {
                    LiteralValue::Float(n.as_f64().unwrap_or(f64::NAN))
                }
            }
            Value::String(s) => LiteralValue::Str(s.clone()),
            other => return Literal::other(other.to_string()),
        };
        Literal::new(value)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render(v: &LiteralValue) -> String {
    match v {
        LiteralValue::Int(i) => i.to_string(),
        LiteralValue::Float(f) => render_float(*f),
        LiteralValue::Str(s) => {
            let mut out = String::with_capacity(s.len() + 2);
            out.push('\'');
            for c in s.chars() {
                match c {
                    '\\' => out.push_str("\\\\"),
                    '\'' => out.push_str("\\'"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    '\r' => out.push_str("\\r"),
                    c if (c as u32) < 0x20 || c as u32 == 0x7f => {
                        out.push_str(&format!("\\x{:02x}", c as u32))
                    }
                    c => out.push(c),
                }
            }
            out.push('\'');
            out
        }
        LiteralValue::Bool(true) => "True".into(),
        LiteralValue::Bool(false) => "False".into(),
        LiteralValue::None => "None".into(),
        LiteralValue::Other => String::new(),
    }
}

fn render_float(f: f64) -> String {
    if f.is_nan() {
        "float('nan')".into()
    } else if f.is_infinite() {
        if f > 0.0 {
            "float('inf')".into()
        } else {
            "-float('inf')".into()
        }
    } else {
        // Debug keeps a decimal point or exponent, so the token stays a float.
        format!("{f:?}")
    }
}

fn decode_value(s: &str) -> Option<LiteralValue> {
    match s {
        "None" => return Some(LiteralValue::None),
        "True" => return Some(LiteralValue::Bool(true)),
        "False" => return Some(LiteralValue::Bool(false)),
        _ => {}
    }
    if let Some(f) = decode_special_float(s) {
        return Some(LiteralValue::Float(f));
    }
    if let Some(n) = decode_number(s) {
        return Some(n);
    }
    decode_string(s).map(LiteralValue::Str)
}

fn decode_special_float(s: &str) -> Option<f64> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let v = match compact.as_str() {
        "np.nan" | "numpy.nan" | "np.NaN" | "np.NAN" | "float('nan')" | "float(\"nan\")"
        | "math.nan" => f64::NAN,
        "np.inf" | "numpy.inf" | "np.Inf" | "np.infty" | "float('inf')" | "float(\"inf\")"
        | "math.inf" => f64::INFINITY,
        _ => return None,
    };
    Some(if neg { -v } else { v })
}

/// Python int/float literal with optional sign and digit separators.
pub(crate) fn decode_number(s: &str) -> Option<LiteralValue> {
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, s[1..].trim_start()),
        b'+' => (false, s[1..].trim_start()),
        _ => (false, s),
    };
    if body.is_empty() || body.contains("__") || body.starts_with('_') || body.ends_with('_') {
        return None;
    }
    let lower = body.to_ascii_lowercase();
    for (prefix, radix) in [("0x", 16), ("0o", 8), ("0b", 2)] {
        if let Some(digits) = lower.strip_prefix(prefix) {
            let digits = digits.replace('_', "");
            let v = i64::from_str_radix(&digits, radix).ok()?;
            return Some(LiteralValue::Int(if neg { -v } else { v }));
        }
    }
    let clean = body.replace('_', "");
    let bytes = clean.as_bytes();
    if !bytes[0].is_ascii_digit() && bytes[0] != b'.' {
        return None;
    }
    if !clean
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
    {
        return None;
    }
    let is_float = clean.contains(['.', 'e', 'E']);
    if is_float {
        if clean == "." {
            return None;
        }
        let v: f64 = clean.parse().ok()?;
        Some(LiteralValue::Float(if neg { -v } else { v }))
    } else {
        if clean.len() > 1 && clean.starts_with('0') && clean.bytes().any(|b| b != b'0') {
            return None;
        }
        match clean.parse::<i64>() {
            Ok(v) => Some(LiteralValue::Int(if neg { -v } else { v })),
            Err(_) => None,
        }
    }
}

/// Decodes a single (possibly prefixed) Python string token.
fn decode_string(s: &str) -> Option<String> {
    let quote_at = s.find(['\'', '"'])?;
    let prefix = s[..quote_at].to_ascii_lowercase();
    let raw = match prefix.as_str() {
        "" | "u" => false,
        "r" => true,
        _ => return None,
    };
    let rest = &s[quote_at..];
    let q = rest.as_bytes()[0] as char;
    let triple: String = std::iter::repeat_n(q, 3).collect();
    let delim: &str = if rest.starts_with(&triple) && rest.len() >= 6 {
        &triple
    } else {
        &rest[..1]
    };
    if rest.len() < 2 * delim.len() || !rest.ends_with(delim) {
        return None;
    }
    let body = &rest[delim.len()..rest.len() - delim.len()];
    // Reject implicit concatenation and stray delimiters inside the body.
    let mut chars = body.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '\\' {
            chars.next();
        } else if delim.len() == 1 && (c == q || c == '\n') {
            return None;
        }
    }
    if delim.len() == 3 && body.contains(delim) {
        return None;
    }
    if body.ends_with('\\') && !body.ends_with("\\\\") {
        return None;
    }
    Some(if raw {
        body.to_string()
    } else {
        unescape(body)
    })
}

fn unescape(body: &str) -> String {
    let mut out = String::with_capacity(body.len());
    let mut chars = body.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('\'') => out.push('\''),
            Some('"') => out.push('"'),
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('r') => out.push('\r'),
            Some('0') => out.push('\0'),
            Some('\n') => {}
            Some('x') => {
                let hex: String = chars.by_ref().take(2).collect();
                match u32::from_str_radix(&hex, 16).ok().and_then(char::from_u32) {
                    Some(ch) if hex.len() == 2 => out.push(ch),
                    _ => {
                        out.push_str("\\x");
                        out.push_str(&hex);
                    }
                }
            }
            Some('u') => {
                let hex: String = chars.by_ref().take(4).collect();
                match u32::from_str_radix(&hex, 16).ok().and_then(char::from_u32) {
                    Some(ch) if hex.len() == 4 => out.push(ch),
                    _ => {
                        out.push_str("\\u");
                        out.push_str(&hex);
                    }
                }
            }
            Some(other) => {
                out.push('\\');
                out.push(other);
            }
            None => out.push('\\'),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decodes_plain_literals() {
        assert_eq!(
            Literal::decode("'warn'").value,
            LiteralValue::Str("warn".into())
        );
        assert_eq!(Literal::decode("1.0").value, LiteralValue::Float(1.0));
        assert_eq!(Literal::decode("1").value, LiteralValue::Int(1));
        assert_eq!(Literal::decode("-3").value, LiteralValue::Int(-3));
        assert_eq!(Literal::decode("1e-4").value, LiteralValue::Float(1e-4));
        assert_eq!(Literal::decode(".5").value, LiteralValue::Float(0.5));
        assert_eq!(Literal::decode("1_000").value, LiteralValue::Int(1000));
        assert_eq!(Literal::decode("None").value, LiteralValue::None);
        assert_eq!(Literal::decode("True").value, LiteralValue::Bool(true));
        assert_eq!(
            Literal::decode("\"x,y\"").value,
            LiteralValue::Str("x,y".into())
        );
        assert_eq!(
            Literal::decode("r'a\\b'").value,
            LiteralValue::Str("a\\b".into())
        );
    }

    #[test]
    fn non_literals_are_other() {
        for raw in [
            "f(3)",
            "(1,2)",
            "[1]",
            "np.float32",
            "b'x'",
            "f'{x}'",
            "'a' 'b'",
            "1 + 2",
            "abc",
        ] {
            assert_eq!(Literal::decode(raw).kind(), LiteralKind::Other, "{raw}");
            assert_eq!(Literal::decode(raw).raw, raw);
        }
    }

    #[test]
    fn nan_is_flagged_and_serialized_as_null() {
        let lit = Literal::decode("np.nan");
        assert!(lit.is_non_representable());
        assert_eq!(lit.to_json(), Some(Value::Null));
        assert!(Literal::decode("-np.inf").is_non_representable());
    }

    #[test]
    fn int_and_float_stay_distinct() {
        assert_eq!(Literal::decode("1").to_json().unwrap().to_string(), "1");
        assert_eq!(Literal::decode("1.0").to_json().unwrap().to_string(), "1.0");
    }

    fn arb_value() -> impl Strategy<Value = LiteralValue> {
        prop_oneof![
            any::<i64>()
                .prop_filter("i64::MIN has no literal", |i| *i != i64::MIN)
                .prop_map(LiteralValue::Int),
            any::<f64>()
                .prop_filter("finite", |f| f.is_finite())
                .prop_map(LiteralValue::Float),
            ".{0,12}".prop_map(LiteralValue::Str),
            any::<bool>().prop_map(LiteralValue::Bool),
            Just(LiteralValue::None),
        ]
    }

    proptest! {
        #[test]
        fn render_then_decode_round_trips(v in arb_value()) {
            let lit = Literal::new(v.clone());
            let back = Literal::decode(&lit.render());
            prop_assert_eq!(back.value, v);
        }

        #[test]
        fn decode_never_panics(s in "\\PC{0,20}") {
            let _ = Literal::decode(&s);
        }
    }
}
