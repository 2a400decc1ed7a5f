//! JSON emission: fixed key order, 15 significant digits.

use serde::Serialize;
use serde_json::{json, Number, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            kind: "parse",
            message: message.into(),
        }
    }

    pub fn validation(e: equisect::Error) -> Self {
        Self {
            code: EXIT_INPUT,
            kind: "validation",
            message: e.to_string(),
        }
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VERIFY,
            kind: "verification",
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            kind: "io",
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "code": self.code, "message": self.message } })
    }
}

/// Rounds to 15 significant digits, ties to even. The decimal is parsed
/// back, so the printed shortest form has at most 15 digits.
pub fn round15(x: f64) -> f64 {
    if x == 0.0 {
        // Folds -0 into 0.
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round15).and_then(Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_numbers),
        Value::Object(o) => o.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// Prints a line, ignoring a closed pipe.
pub fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

pub fn render<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("output types serialize");
    round_numbers(&mut v);
    serde_json::to_string_pretty(&v).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round15(1.0 / 3.0).to_string(), "0.333333333333333");
        assert_eq!(round15(2.0 / 3.0).to_string(), "0.666666666666667");
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert!(round15(-0.0).is_sign_positive());
        // Exact ties (16-digit integers below 2^53) go to the even digit.
        assert_eq!(round15(1_234_567_890_123_445.0), 1_234_567_890_123_440.0);
        assert_eq!(round15(1_234_567_890_123_455.0), 1_234_567_890_123_460.0);
    }

    #[test]
    fn key_order_follows_struct_order() {
        #[derive(Serialize)]
        struct S {
            zeta: f64,
            alpha: i32,
        }
        let out = render(&S { zeta: 0.1, alpha: 2 });
        assert!(out.find("zeta") < out.find("alpha"));
    }
}
